use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wahp::algebra::{
    inequality_check, is_failure_configuration, random_unit_vector, wahp_decay_probe, wahp_witness, GroupAlgebraElement,
};
use wahp::cert::{Certificate, Context, IneqDoc, SweepDoc};
use wahp::coset::{h_orbit, OrbitStatus, DEFAULT_BUDGET};
use wahp::group::{enumerate_ball, split_top_level, GroupElement, GroupSpec};
use wahp::harmonic::{check_condition4, check_condition5};
use wahp::qn::{check_condition3, cond6_search, decide_condition6_finite, Scope, Search, Truth};
use wahp::specfile::{load_triple, TripleSpec};
use wahp::sweep::{catalogue, equivalence_sweep, SWEEP_SAMPLES};
use wahp::Error;

/// Quasi-normalizer and relative WAHP checks for group triples H < K < G.
///
/// Exit codes: 0 holds or certificate found, 1 falsified, 2 unknown within
/// budget or radius, 3 input error.
#[derive(Parser)]
#[command(name = "wahp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Triple file with [group], [H] and optional [K] sections.
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// H-orbit of gH in G/H.
    Orbit {
        #[command(flatten)]
        spec: SpecArg,
        word: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Whether g lies in the one-sided quasi-normalizer of H.
    Qn {
        #[command(flatten)]
        spec: SpecArg,
        word: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// qN(H) ⊂ K over a ball, or over all of a finite G.
    Cond3 {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, conflicts_with = "all")]
        radius: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Search h ∈ H with F h F ∩ H = ∅. Without --set on a finite group,
    /// decides the condition with F = G \ K.
    Cond6 {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Invariant vectors of l2(G/H) lie in l2(K/H) (finite G).
    Cond5 {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// H-compact vectors of l2(G/H) lie in l2(K/H) (finite G).
    Cond4 {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Witness h with E_H(x lam(h) y) = 0; repeated --x/--y run the probe
    /// over all pairs.
    Wahp {
        #[command(flatten)]
        spec: SpecArg,
        /// JSON list of [word, re, im] triples.
        #[arg(long, required = true)]
        x: Vec<String>,
        #[arg(long, required = true)]
        y: Vec<String>,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Samples sum_{g' in F} ||E_H(lam(g') u lam(g))||^2 for random unit u on H.
    Ineq {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        g: String,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Radius of the H-ball carrying u when H is infinite.
        #[arg(long, default_value_t = 2)]
        support_radius: usize,
    },
    /// Equivalence sweep over the catalogue groups of order at most N.
    Sweep {
        #[arg(long)]
        order_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SWEEP_SAMPLES)]
        samples: usize,
    },
}

fn element(group: &GroupSpec, word: &str) -> Result<GroupElement, Error> {
    Ok(group.parse_word(word)?)
}

fn element_list(group: &GroupSpec, list: &str) -> Result<Vec<GroupElement>, Error> {
    split_top_level(list).into_iter().filter(|w| !w.is_empty()).map(|w| element(group, w)).collect()
}

fn algebra_literal(group: &GroupSpec, text: &str) -> Result<GroupAlgebraElement, Error> {
    let terms: Vec<(String, f64, f64)> = serde_json::from_str(text)?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (w, re, im) in terms {
        parsed.push((element(group, &w)?, Complex64::new(re, im)));
    }
    GroupAlgebraElement::from_terms(group, parsed)
}

fn truth_code(t: Truth) -> u8 {
    match t {
        Truth::True => 0,
        Truth::False => 1,
        Truth::Unknown => 2,
    }
}

fn search_code<T>(s: &Search<T>) -> u8 {
    match s {
        Search::Found(_) => 0,
        Search::Falsified { .. } => 1,
        Search::NotFoundWithinRadius { .. } => 2,
    }
}

fn run(command: Command) -> Result<(Certificate, u8), Error> {
    let load = |s: &SpecArg| -> Result<TripleSpec, Error> { load_triple(&s.spec) };
    Ok(match command {
        Command::Orbit { spec, word, budget } => {
            let t = load(&spec)?;
            let g = element(&t.group, &word)?;
            let result = h_orbit(&g, &t.h, budget);
            let code = match result.status {
                OrbitStatus::Finite => 0,
                OrbitStatus::InfiniteCertified => 1,
                OrbitStatus::BudgetExhausted => 2,
            };
            (Certificate::orbit(&t.h, &g, &result, budget), code)
        }
        Command::Qn { spec, word, budget } => {
            let t = load(&spec)?;
            let g = element(&t.group, &word)?;
            let result = h_orbit(&g, &t.h, budget);
            let code = match result.status {
                OrbitStatus::Finite => 0,
                OrbitStatus::InfiniteCertified => 1,
                OrbitStatus::BudgetExhausted => 2,
            };
            (Certificate::qn(&t.h, &g, &result), code)
        }
        Command::Cond3 { spec, radius, all, budget } => {
            let t = load(&spec)?;
            let scope = match (all, radius) {
                (true, _) => Scope::All,
                (false, Some(r)) => Scope::Ball(r),
                (false, None) if t.group.is_finite() => Scope::All,
                (false, None) => Scope::Ball(3),
            };
            let v = check_condition3(&t.h, &t.k, scope, budget)?;
            (Certificate::cond3(&t.h, &t.k, &v), truth_code(v.holds))
        }
        Command::Cond6 { spec, set, radius } => {
            let t = load(&spec)?;
            match set {
                Some(list) => {
                    let set = element_list(&t.group, &list)?;
                    let search = cond6_search(&set, &t.h, &t.k, radius)?;
                    (Certificate::cond6(&t.h, &t.k, &set, &search), search_code(&search))
                }
                None => {
                    let (_, search) = decide_condition6_finite(&t.h, &t.k)?;
                    let set: Vec<GroupElement> =
                        t.group.elements().expect("finite").into_iter().filter(|x| !t.k.contains(x)).collect();
                    let code = if set.is_empty() { 0 } else { search_code(&search) };
                    (Certificate::cond6(&t.h, &t.k, &set, &search), code)
                }
            }
        }
        Command::Cond5 { spec } => {
            let t = load(&spec)?;
            let v = check_condition5(&t.h, &t.k)?;
            (Certificate::cond5(&t.h, &t.k, &v), if v.holds { 0 } else { 1 })
        }
        Command::Cond4 { spec } => {
            let t = load(&spec)?;
            let v = check_condition4(&t.h, &t.k)?;
            (Certificate::cond4(&t.h, &t.k, &v), if v.holds { 0 } else { 1 })
        }
        Command::Wahp { spec, x, y, radius } => {
            let t = load(&spec)?;
            let xs = x.iter().map(|s| algebra_literal(&t.group, s)).collect::<Result<Vec<_>, _>>()?;
            let ys = y.iter().map(|s| algebra_literal(&t.group, s)).collect::<Result<Vec<_>, _>>()?;
            let exhaustive = |tested: usize| t.h.order() == Some(tested);
            if xs.len() == 1 && ys.len() == 1 {
                let search = wahp_witness(&xs[0], &ys[0], &t.h, &t.k, radius)?;
                let code = match &search {
                    Search::Found(_) => 0,
                    Search::NotFoundWithinRadius { tested, .. } | Search::Falsified { tested } => {
                        if exhaustive(*tested) {
                            1
                        } else {
                            2
                        }
                    }
                };
                (Certificate::wahp(&t.h, &t.k, &xs[0], &ys[0], radius, &search), code)
            } else {
                let report = wahp_decay_probe(&xs, &ys, &t.h, &t.k, radius)?;
                let code = if report.common_witness.is_some() {
                    0
                } else if exhaustive(report.tested) {
                    1
                } else {
                    2
                };
                (Certificate::probe(&t.h, &t.k, &xs, &ys, radius, &report), code)
            }
        }
        Command::Ineq { spec, g, set, samples, seed, support_radius } => {
            let t = load(&spec)?;
            let g = element(&t.group, &g)?;
            let set = element_list(&t.group, &set)?;
            if samples == 0 {
                return Err(Error::Precondition("--samples must be positive".into()));
            }
            let support = match t.h.elements() {
                Some(all) => all.to_vec(),
                None => enumerate_ball(&t.group, t.h.generators(), support_radius),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut min, mut max, mut configured) = (f64::INFINITY, f64::NEG_INFINITY, true);
            for _ in 0..samples {
                let u = random_unit_vector(&t.group, &support, &mut rng)?;
                configured &= is_failure_configuration(&set, &g, &t.h, &u);
                let value = inequality_check(&set, &g, &t.h, &u)?;
                min = min.min(value);
                max = max.max(value);
            }
            let bound_holds = min >= 1.0 - 1e-9;
            let doc = IneqDoc {
                context: Context::new(&t.h, &t.k),
                g: g.to_string(),
                set: set.iter().map(|x| x.to_string()).collect(),
                seed,
                samples,
                failure_configuration: configured,
                min,
                max,
                bound_holds,
            };
            (Certificate::Ineq(doc), if bound_holds { 0 } else { 1 })
        }
        Command::Sweep { order_max, seed, samples } => {
            let mut reports = Vec::new();
            for (name, group) in catalogue() {
                if group.order().expect("finite") <= order_max {
                    reports.push(equivalence_sweep(name, &group, seed, samples)?);
                }
            }
            let passed = reports.iter().all(|r| r.passed());
            (Certificate::Sweep(SweepDoc { order_max, seed, passed, reports }), if passed { 0 } else { 1 })
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Error::EXIT_CODE as u8);
        }
    };
    match run(cli.command) {
        Ok((certificate, code)) => {
            println!("{}", certificate.to_json());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Error::EXIT_CODE as u8)
        }
    }
}
