//! Orders of row modules and kernels over `Z/m` for large systems, without materializing bases.

use crate::arith::{factor, mod_inv};
use num_bigint::BigUint;
use num_traits::One;

/// Accumulates rows over `Z/q^a` and reports `log_q` of the order of their span.
#[derive(Debug, Clone)]
struct ChainRowSpace {
    q: u64,
    level: u32,
    modulus: u64,
    n: usize,
    pivots: Vec<(usize, Vec<u64>)>,
    stash: Vec<Vec<u64>>,
}

impl ChainRowSpace {
    fn new(q: u64, level: u32, n: usize) -> Self {
        ChainRowSpace { q, level, modulus: q.pow(level), n, pivots: Vec::new(), stash: Vec::new() }
    }

    fn reduce(&self, r: &mut [u64]) {
        let m = self.modulus;
        for (c, p) in &self.pivots {
            let f = r[*c];
            if f != 0 {
                let neg = m - f;
                for k in 0..self.n {
                    if p[k] != 0 {
                        r[k] = ((r[k] as u128 + neg as u128 * p[k] as u128) % m as u128) as u64;
                    }
                }
            }
        }
    }

    fn insert(&mut self, mut r: Vec<u64>) {
        let m = self.modulus;
        for x in r.iter_mut() {
            *x %= m;
        }
        self.reduce(&mut r);
        match r.iter().position(|&x| x % self.q != 0) {
            Some(c) => {
                let inv = mod_inv(r[c], m).expect("unit");
                for x in r.iter_mut() {
                    *x = ((*x as u128 * inv as u128) % m as u128) as u64;
                }
                self.pivots.push((c, r));
            }
            None => {
                if r.iter().any(|&x| x != 0) {
                    self.stash.push(r);
                }
            }
        }
    }

    fn finish(mut self) -> u64 {
        let own = self.level as u64 * self.pivots.len() as u64;
        if self.level == 1 || self.stash.is_empty() {
            return own;
        }
        let mut pivot_cols = vec![false; self.n];
        for (c, _) in &self.pivots {
            pivot_cols[*c] = true;
        }
        let free: Vec<usize> = (0..self.n).filter(|&c| !pivot_cols[c]).collect();
        let mut next = ChainRowSpace::new(self.q, self.level - 1, free.len());
        let stash = std::mem::take(&mut self.stash);
        for mut r in stash {
            self.reduce(&mut r);
            let projected: Vec<u64> = free.iter().map(|&c| r[c] / self.q).collect();
            next.insert(projected);
        }
        own + next.finish()
    }
}

/// Streaming row-span order over `Z/m`, split into prime-power components.
#[derive(Debug, Clone)]
pub struct RowSpanOrder {
    parts: Vec<ChainRowSpace>,
    n: usize,
}

impl RowSpanOrder {
    pub fn new(m: u64, n: usize) -> Self {
        let parts = factor(m).into_iter().map(|(q, a)| ChainRowSpace::new(q, a, n)).collect();
        RowSpanOrder { parts, n }
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    /// Adds a row whose entries are residues modulo `m`.
    pub fn push(&mut self, row: &[u64]) {
        for part in self.parts.iter_mut() {
            part.insert(row.to_vec());
        }
    }

    pub fn push_signed(&mut self, row: &[i64]) {
        for part in self.parts.iter_mut() {
            let m = part.modulus as i64;
            part.insert(row.iter().map(|&x| x.rem_euclid(m) as u64).collect());
        }
    }

    /// Order of the span.
    pub fn order(self) -> BigUint {
        let mut r = BigUint::one();
        for part in self.parts {
            let q = part.q;
            let e = part.finish();
            r *= BigUint::from(q).pow(e as u32);
        }
        r
    }

    /// Order of the solution set `{x in (Z/m)^n : row . x = 0 for all pushed rows}`.
    pub fn kernel_order(self) -> BigUint {
        let mut total = BigUint::one();
        for part in self.parts {
            let q = part.q;
            let full = part.level as u64 * part.n as u64;
            let e = part.finish();
            total *= BigUint::from(q).pow((full - e) as u32);
        }
        total
    }
}
