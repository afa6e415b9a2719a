//! Exact arithmetic with roots of unity: single scalars as exponents and sums in `Z[zeta_m]`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Either zero or `zeta_m^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicScalar {
    pub modulus: u64,
    pub exp: Option<u64>,
}

impl CyclotomicScalar {
    pub fn root(modulus: u64, exp: u64) -> Self {
        CyclotomicScalar { modulus, exp: Some(exp % modulus) }
    }

    pub fn one(modulus: u64) -> Self {
        Self::root(modulus, 0)
    }

    pub fn zero(modulus: u64) -> Self {
        CyclotomicScalar { modulus, exp: None }
    }

    pub fn is_zero(&self) -> bool {
        self.exp.is_none()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        match (self.exp, other.exp) {
            (Some(a), Some(b)) => Self::root(self.modulus, a + b),
            _ => Self::zero(self.modulus),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        self.exp.map(|a| Self::root(self.modulus, self.modulus - a))
    }
}

/// Integer coefficients (low degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    let mut q = vec![0i64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] / lead;
        q[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Element of `Z[zeta_m]` stored as a sparse sum `sum_e c_e zeta^e`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycloSum {
    pub modulus: u64,
    pub terms: BTreeMap<u64, i64>,
}

impl CycloSum {
    pub fn new(modulus: u64) -> Self {
        CycloSum { modulus, terms: BTreeMap::new() }
    }

    pub fn from_root(modulus: u64, exp: u64) -> Self {
        let mut s = Self::new(modulus);
        s.add_root(exp, 1);
        s
    }

    pub fn add_root(&mut self, exp: u64, coeff: i64) {
        let e = exp % self.modulus;
        let c = self.terms.entry(e).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&mut self, other: &CycloSum) {
        for (&e, &c) in &other.terms {
            self.add_root(e, c);
        }
    }

    pub fn scale_root(&self, exp: u64) -> CycloSum {
        let mut s = Self::new(self.modulus);
        for (&e, &c) in &self.terms {
            s.add_root(e + exp, c);
        }
        s
    }

    pub fn mul(&self, other: &CycloSum) -> CycloSum {
        let mut s = Self::new(self.modulus);
        for (&e, &c) in &self.terms {
            for (&f, &d) in &other.terms {
                s.add_root(e + f, c * d);
            }
        }
        s
    }

    /// Coefficients in the power basis `1, zeta, ..., zeta^(phi(m)-1)`.
    pub fn canonical(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.modulus);
        let deg = phi.len() - 1;
        let mut v = vec![0i64; self.modulus as usize];
        for (&e, &c) in &self.terms {
            v[e as usize] += c;
        }
        for k in (deg..v.len()).rev() {
            let c = v[k];
            if c != 0 {
                for (i, &pi) in phi.iter().enumerate() {
                    v[k - deg + i] -= c * pi;
                }
            }
        }
        v.truncate(deg);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.canonical().iter().all(|&x| x == 0)
    }

    /// Equality as elements of `Z[zeta_m]`.
    pub fn equals(&self, other: &CycloSum) -> bool {
        if self.terms == other.terms {
            return true;
        }
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for m in [2u64, 3, 4, 6, 9, 12] {
            let mut s = CycloSum::new(m);
            for e in 0..m {
                s.add_root(e, 1);
            }
            assert!(s.is_zero());
        }
        let mut s = CycloSum::new(4);
        s.add_root(0, 1);
        s.add_root(2, 1);
        assert!(s.is_zero());
        assert!(!CycloSum::from_root(4, 1).is_zero());
    }

    #[test]
    fn scalars() {
        let a = CyclotomicScalar::root(9, 5);
        assert_eq!(a.mul(&a.inv().unwrap()), CyclotomicScalar::one(9));
        assert!(a.mul(&CyclotomicScalar::zero(9)).is_zero());
    }
}
