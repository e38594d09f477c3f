/// Subgroup of `Z^n` held as a row-style Hermite normal form: each row has a
/// positive pivot strictly right of the previous row's pivot, and the entries
/// above every pivot are reduced into `[0, pivot)`. The form is unique per
/// lattice, so derived equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    rank: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators(rank: usize, generators: &[Vec<i64>]) -> Self {
        let mut pool: Vec<Vec<i64>> = generators.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..rank {
            // Euclid on column `col` across the pool until one row remains nonzero there.
            loop {
                let mut nonzero: Vec<usize> = (0..pool.len()).filter(|&i| pool[i][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                nonzero.sort_by_key(|&i| pool[i][col].abs());
                let p = nonzero[0];
                let pivot_row = pool[p].clone();
                for &i in &nonzero[1..] {
                    let q = pool[i][col].div_euclid(pivot_row[col]);
                    for (x, y) in pool[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
            }
            if let Some(i) = (0..pool.len()).find(|&i| pool[i][col] != 0) {
                let mut row = pool.swap_remove(i);
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                rows.push(row);
                pivots.push(col);
            }
            pool.retain(|v| v.iter().any(|&x| x != 0));
        }
        let mut lattice = Lattice { rank, rows, pivots };
        lattice.reduce_above_pivots();
        lattice
    }

    fn reduce_above_pivots(&mut self) {
        for r in 0..self.rows.len() {
            let col = self.pivots[r];
            let pivot_row = self.rows[r].clone();
            for above in 0..r {
                let q = self.rows[above][col].div_euclid(pivot_row[col]);
                for (x, y) in self.rows[above].iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Canonical residue of `v` modulo the lattice: pivot coordinates land in
    /// `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let q = v[col].div_euclid(row[col]);
            if q != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}
