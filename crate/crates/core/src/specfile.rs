//! Triple files:
//!
//! ```text
//! # S3 with H = K = <(1 2)>
//! [group]
//! family = perm
//! degree = 3
//! generators = (1 2), (1 2 3)
//!
//! [H]
//! generators = (1 2)
//!
//! [K]
//! generators = (1 2)
//! ```
//!
//! `family` is `free`, `perm` or `abelian`; free and abelian groups take
//! `rank = n`. A missing `[K]` section means `K = H`. Line and column numbers
//! in errors are 1-based.

use std::path::Path;

use crate::group::{split_top_level, GroupError, GroupSpec, Perm, Subgroup};
use crate::Error;

#[derive(Clone, Debug)]
pub struct TripleSpec {
    pub group: GroupSpec,
    pub h_words: Vec<String>,
    pub k_words: Vec<String>,
    pub h: Subgroup,
    pub k: Subgroup,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Group,
    H,
    K,
}

/// A `key = value` line with the 1-based column where the value starts.
struct Entry<'a> {
    line: usize,
    key: &'a str,
    key_column: usize,
    value: &'a str,
    value_column: usize,
}

struct Parser<'a> {
    path: String,
    entries: Vec<(Section, Entry<'a>)>,
    seen: Vec<Section>,
}

impl<'a> Parser<'a> {
    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::SpecFile { path: self.path.clone(), line, column, message: message.into() }
    }

    fn scan(path: &str, text: &'a str) -> Result<Self, Error> {
        let mut parser = Parser { path: path.to_string(), entries: Vec::new(), seen: Vec::new() };
        let mut current: Option<Section> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            if trimmed.starts_with('[') {
                let section = match trimmed {
                    "[group]" => Section::Group,
                    "[H]" => Section::H,
                    "[K]" => Section::K,
                    other => return Err(parser.error(line, indent + 1, format!("unknown section {other}"))),
                };
                if parser.seen.contains(&section) {
                    return Err(parser.error(line, indent + 1, format!("duplicate section {trimmed}")));
                }
                parser.seen.push(section);
                current = Some(section);
                continue;
            }
            let Some(section) = current else {
                return Err(parser.error(line, indent + 1, "entry before any section"));
            };
            let Some(eq) = content.find('=') else {
                return Err(parser.error(line, indent + 1, "expected 'key = value'"));
            };
            let key = content[..eq].trim();
            let after = &content[eq + 1..];
            let value = after.trim();
            let value_column = eq + 2 + (after.len() - after.trim_start().len());
            if key.is_empty() {
                return Err(parser.error(line, indent + 1, "missing key"));
            }
            parser.entries.push((section, Entry { line, key, key_column: indent + 1, value, value_column }));
        }
        Ok(parser)
    }

    fn get(&self, section: Section, key: &str) -> Option<&Entry<'a>> {
        self.entries.iter().find(|(s, e)| *s == section && e.key == key).map(|(_, e)| e)
    }

    fn check_keys(&self) -> Result<(), Error> {
        for (section, e) in &self.entries {
            let allowed: &[&str] = match section {
                Section::Group => &["family", "rank", "degree", "generators"],
                Section::H | Section::K => &["generators"],
            };
            if !allowed.contains(&e.key) {
                return Err(self.error(e.line, e.key_column, format!("unknown key '{}'", e.key)));
            }
            if self.entries.iter().filter(|(s, f)| s == section && f.key == e.key).count() > 1 {
                return Err(self.error(e.line, e.key_column, format!("duplicate key '{}'", e.key)));
            }
        }
        Ok(())
    }

    fn number(&self, e: &Entry<'_>) -> Result<usize, Error> {
        e.value.parse().map_err(|_| self.error(e.line, e.value_column, format!("expected a nonnegative integer, found '{}'", e.value)))
    }

    /// Splits a generator list, returning each item with its column.
    fn items(&self, e: &Entry<'a>) -> Vec<(&'a str, usize)> {
        if e.value.is_empty() {
            return Vec::new();
        }
        let base = e.value.as_ptr() as usize;
        split_top_level(e.value)
            .into_iter()
            .map(|item| (item, e.value_column + (item.as_ptr() as usize - base)))
            .collect()
    }

    fn group(&self) -> Result<GroupSpec, Error> {
        if !self.seen.contains(&Section::Group) {
            return Err(self.error(1, 1, "missing [group] section"));
        }
        let family = self.get(Section::Group, "family").ok_or_else(|| self.error(1, 1, "[group] needs 'family'"))?;
        let spec_error = |e: &Entry<'_>, err: GroupError| self.error(e.line, e.value_column, err.to_string());
        match family.value {
            "free" | "abelian" => {
                let rank = self.get(Section::Group, "rank").ok_or_else(|| self.error(family.line, 1, "[group] needs 'rank'"))?;
                if let Some(e) = self.get(Section::Group, "degree").or(self.get(Section::Group, "generators")) {
                    return Err(self.error(e.line, e.key_column, format!("'{}' is not allowed for family {}", e.key, family.value)));
                }
                let n = self.number(rank)?;
                let spec = if family.value == "free" { GroupSpec::free(n) } else { GroupSpec::abelian(n) };
                spec.map_err(|err| spec_error(rank, err))
            }
            "perm" => {
                let degree = self.get(Section::Group, "degree").ok_or_else(|| self.error(family.line, 1, "[group] needs 'degree'"))?;
                if let Some(e) = self.get(Section::Group, "rank") {
                    return Err(self.error(e.line, e.key_column, "'rank' is not allowed for family perm"));
                }
                let n = self.number(degree)?;
                let symmetric = GroupSpec::perm(n, Vec::new()).map_err(|err| spec_error(degree, err))?;
                let mut generators = Vec::new();
                if let Some(e) = self.get(Section::Group, "generators") {
                    for (item, column) in self.items(e) {
                        generators.push(self.cycles(&symmetric, item, e.line, column)?);
                    }
                }
                GroupSpec::perm(n, generators).map_err(|err| spec_error(degree, err))
            }
            other => Err(self.error(family.line, family.value_column, format!("unknown family '{other}'"))),
        }
    }

    /// Ambient generators are given in cycle notation.
    fn cycles(&self, symmetric: &GroupSpec, item: &str, line: usize, column: usize) -> Result<Perm, Error> {
        match symmetric.parse_word(item) {
            Ok(g) => Ok(g.as_perm().expect("permutation backend").clone()),
            Err(GroupError::Parse(p)) => Err(self.error(line, column + p.position, p.message)),
            Err(err) => Err(self.error(line, column, err.to_string())),
        }
    }

    fn words(&self, group: &GroupSpec, section: Section) -> Result<Option<(Vec<String>, Subgroup)>, Error> {
        if !self.seen.contains(&section) {
            return Ok(None);
        }
        let mut words = Vec::new();
        let mut elements = Vec::new();
        if let Some(e) = self.get(section, "generators") {
            for (item, column) in self.items(e) {
                let g = group.parse_word(item).map_err(|err| match err {
                    GroupError::Parse(p) => self.error(e.line, column + p.position, p.message),
                    other => self.error(e.line, column, other.to_string()),
                })?;
                words.push(item.to_string());
                elements.push(g);
            }
        }
        let subgroup = Subgroup::new(group, elements)?;
        Ok(Some((words, subgroup)))
    }
}

pub fn parse_triple(text: &str) -> Result<TripleSpec, Error> {
    parse_named("<input>", text)
}

pub fn load_triple(path: impl AsRef<Path>) -> Result<TripleSpec, Error> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_named(&path.display().to_string(), &text)
}

fn parse_named(path: &str, text: &str) -> Result<TripleSpec, Error> {
    let parser = Parser::scan(path, text)?;
    parser.check_keys()?;
    let group = parser.group()?;
    let (h_words, h) = parser.words(&group, Section::H)?.ok_or_else(|| parser.error(1, 1, "missing [H] section"))?;
    let (k_words, k) = match parser.words(&group, Section::K)? {
        Some(found) => found,
        None => (h_words.clone(), h.clone()),
    };
    if let Some(i) = h.generators().iter().position(|g| !k.contains(g)) {
        let e = parser.get(Section::H, "generators").expect("a generator exists");
        return Err(parser.error(e.line, e.value_column, format!("H is not contained in K: {} is not in K", h_words[i])));
    }
    Ok(TripleSpec { group, h_words, k_words, h, k })
}
