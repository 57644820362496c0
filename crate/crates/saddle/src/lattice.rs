//! Integer lattices in `Z^3` spanned by finitely many generators.

use num_integer::Integer;

/// A lattice kept as rows in echelon form: each row has a positive pivot in
/// a column strictly to the right of the previous row's pivot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntLattice {
    rows: Vec<([i128; 3], usize)>,
}

impl IntLattice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_generators<I: IntoIterator<Item = [i128; 3]>>(gens: I) -> Self {
        let mut lat = Self::new();
        for g in gens {
            lat.insert(g);
        }
        lat
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis vectors, one per row.
    pub fn basis(&self) -> Vec<[i128; 3]> {
        self.rows.iter().map(|(r, _)| *r).collect()
    }

    /// Adds a generator, keeping the basis unimodularly equivalent to the
    /// full generator set.
    pub fn insert(&mut self, mut v: [i128; 3]) {
        for col in 0..3 {
            if v[col] == 0 {
                continue;
            }
            match self.rows.iter().position(|&(_, p)| p == col) {
                Some(idx) => {
                    let b = self.rows[idx].0;
                    let eg = b[col].extended_gcd(&v[col]);
                    let (bg, vg) = (b[col] / eg.gcd, v[col] / eg.gcd);
                    let mut merged = [0i128; 3];
                    let mut rest = [0i128; 3];
                    for i in 0..3 {
                        merged[i] = eg.x * b[i] + eg.y * v[i];
                        rest[i] = bg * v[i] - vg * b[i];
                    }
                    if merged[col] < 0 {
                        merged.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[idx].0 = merged;
                    v = rest;
                }
                None => {
                    if v[col] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows.push((v, col));
                    self.rows.sort_by_key(|&(_, p)| p);
                    self.reduce();
                    return;
                }
            }
        }
        self.reduce();
    }

    /// Reduces entries above each pivot to keep numbers small.
    fn reduce(&mut self) {
        for i in 0..self.rows.len() {
            let (pivot_row, col) = self.rows[i];
            for j in 0..i {
                let q = self.rows[j].0[col].div_euclid(pivot_row[col]);
                if q != 0 {
                    for c in 0..3 {
                        self.rows[j].0[c] -= q * pivot_row[c];
                    }
                }
            }
        }
    }

    /// Whether `v` lies in the lattice.
    pub fn contains(&self, mut v: [i128; 3]) -> bool {
        for col in 0..3 {
            match self.rows.iter().find(|&&(_, p)| p == col) {
                Some(&(b, _)) => {
                    if v[col] % b[col] != 0 {
                        return false;
                    }
                    let q = v[col] / b[col];
                    for i in 0..3 {
                        v[i] -= q * b[i];
                    }
                }
                None => {
                    if v[col] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}
