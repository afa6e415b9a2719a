//! Normalized cochains on a finite abelian group with values in `Z/m` (additive exponents of roots of unity).

use crate::group::{AbelianGroup, Endomorphism};

/// Index tables for fast cochain arithmetic on a fixed group.
#[derive(Debug, Clone)]
pub struct GroupTables {
    pub group: AbelianGroup,
    pub n: usize,
    pub add: Vec<u32>,
    pub neg: Vec<u32>,
    /// Indices of the standard generators.
    pub gens: Vec<usize>,
}

impl GroupTables {
    pub fn new(group: &AbelianGroup) -> Self {
        let n = group.order() as usize;
        let add = group.add_table();
        let neg = (0..n).map(|a| group.index(&group.neg(&group.element(a))) as u32).collect();
        let gens = (0..group.rank()).map(|i| group.index(&group.generator(i))).collect();
        GroupTables { group: group.clone(), n, add, neg, gens }
    }

    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    /// Index permutation `a -> e(a)` of an endomorphism.
    pub fn permutation(&self, e: &Endomorphism) -> Vec<usize> {
        (0..self.n).map(|a| self.group.index(&e.apply(&self.group.element(a)))).collect()
    }

    /// `(delta f)(a, b) = f(a) + f(b) - f(a + b)`.
    pub fn delta1(&self, f: &[u64], m: u64) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = (f[a] + f[b] + m - f[self.sum(a, b)]) % m;
            }
        }
        out
    }

    /// `(delta s)(a, b, c)`.
    #[inline]
    pub fn delta2_at(&self, s: &[u64], m: u64, a: usize, b: usize, c: usize) -> u64 {
        let n = self.n;
        let bc = self.sum(b, c);
        let ab = self.sum(a, b);
        (s[b * n + c] + s[a * n + bc] + 2 * m - s[ab * n + c] - s[a * n + b]) % m
    }

    /// Full cocycle test over all triples.
    pub fn is_cocycle(&self, s: &[u64], m: u64) -> bool {
        let n = self.n;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.delta2_at(s, m, a, b, c) == 0)))
    }

    /// Cocycle test on triples whose last entry is `0` or a generator.
    pub fn is_cocycle_reduced(&self, s: &[u64], m: u64) -> bool {
        let n = self.n;
        let mut cs = vec![0usize];
        cs.extend(&self.gens);
        (0..n).all(|a| (0..n).all(|b| cs.iter().all(|&c| self.delta2_at(s, m, a, b, c) == 0)))
    }

    pub fn is_normalized(&self, s: &[u64]) -> bool {
        (0..self.n).all(|a| s[a] == 0 && s[a * self.n] == 0)
    }

    /// `s'(a, b) = s(perm(a), perm(b))`.
    pub fn pull(&self, s: &[u64], perm: &[usize]) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = s[perm[a] * n + perm[b]];
            }
        }
        out
    }

    /// `sum_{r < i} s(T^r a, T^r b)`.
    pub fn phi_table(&self, s: &[u64], m: u64, perm_t: &[usize], i: u64) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        let mut cur: Vec<usize> = (0..n).collect();
        for _ in 0..i {
            for a in 0..n {
                for b in 0..n {
                    out[a * n + b] = (out[a * n + b] + s[cur[a] * n + cur[b]]) % m;
                }
            }
            for x in cur.iter_mut() {
                *x = perm_t[*x];
            }
        }
        out
    }

    /// `sum_{r < i} f(T^r a)` for a one-cochain.
    pub fn phi_fn(&self, f: &[u64], m: u64, perm_t: &[usize], i: u64) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n];
        let mut cur: Vec<usize> = (0..n).collect();
        for _ in 0..i {
            for a in 0..n {
                out[a] = (out[a] + f[cur[a]]) % m;
            }
            for x in cur.iter_mut() {
                *x = perm_t[*x];
            }
        }
        out
    }

    /// Some `f` with `delta f = b` over `Z/m`, with `f(0) = 0`; `None` when `b` is not a coboundary.
    pub fn solve_coboundary(&self, b: &[u64], m: u64) -> Option<Vec<u64>> {
        let n = self.n;
        let g = &self.group;
        let mut f = vec![0u64; n];
        let mut known = vec![false; n];
        known[0] = true;
        let mut fg = Vec::new();
        for (i, &gi) in self.gens.iter().enumerate() {
            let d = g.cyclic_orders()[i];
            let mut s = 0u64;
            let mut x = 0usize;
            for _ in 0..d {
                s = (s + b[x * n + gi]) % m;
                x = self.sum(x, gi);
            }
            fg.push(solve_linear(d, s, m)?);
        }
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (i, &gi) in self.gens.iter().enumerate() {
                let c = self.sum(a, gi);
                if !known[c] {
                    f[c] = (f[a] + fg[i] + m - b[a * n + gi]) % m;
                    known[c] = true;
                    queue.push_back(c);
                }
            }
        }
        if self.delta1(&f, m) == b {
            Some(f)
        } else {
            None
        }
    }

    /// `s(a, b) - s(b, a)`.
    pub fn antisymmetrize(&self, s: &[u64], m: u64) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = (s[a * n + b] + m - s[b * n + a]) % m;
            }
        }
        out
    }
}

/// Some solution `y` of `d y = s (mod m)`.
pub fn solve_linear(d: u64, s: u64, m: u64) -> Option<u64> {
    let g = crate::arith::gcd(d % m, m);
    let g = if g == 0 { m } else { g };
    if s % g != 0 {
        return None;
    }
    let mg = m / g;
    if mg == 1 {
        return Some(0);
    }
    let inv = crate::arith::mod_inv((d / g) % mg, mg)?;
    Some(((s / g) as u128 * inv as u128 % mg as u128) as u64)
}

pub fn add_tables(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % m).collect()
}

pub fn sub_tables(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + m - y % m) % m).collect()
}

pub fn scale_table(a: &[u64], k: u64, m: u64) -> Vec<u64> {
    a.iter().map(|&x| ((x as u128 * k as u128) % m as u128) as u64).collect()
}

/// Re-expresses values modulo `m` as values modulo a multiple `big` of `m`.
pub fn embed(a: &[u64], m: u64, big: u64) -> Vec<u64> {
    a.iter().map(|&x| x * (big / m)).collect()
}
