//! Alternating bimultiplicative forms on a finite abelian group, in coordinates over generator pairs.

use crate::arith::gcd;
use crate::cochain::GroupTables;
use crate::group::{AbelianGroup, Endomorphism};

/// `Alt(G) = sum_{i<j} Z/gcd(d_i, d_j) (g_i* ∧ g_j*)`; only pairs with a nontrivial gcd are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltSpace {
    group: AbelianGroup,
    pairs: Vec<(usize, usize)>,
    moduli: Vec<u64>,
}

impl AltSpace {
    pub fn new(group: &AbelianGroup) -> Self {
        let d = group.cyclic_orders();
        let mut pairs = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = gcd(d[i], d[j]);
                if g > 1 {
                    pairs.push((i, j));
                    moduli.push(g);
                }
            }
        }
        AltSpace { group: group.clone(), pairs, moduli }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&x| x as u128).product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    /// Coordinates of `g_i* ∧ g_j*`.
    pub fn basis_form(&self, i: usize, j: usize) -> Vec<u64> {
        let mut v = self.zero();
        let (k, sign) = match self.pairs.iter().position(|&p| p == (i.min(j), i.max(j))) {
            Some(k) => (k, i < j),
            None => return v,
        };
        v[k] = if sign { 1 } else { self.moduli[k] - 1 };
        v
    }

    /// Exponent of `beta(a, b)` as a power of `zeta_m`; needs `exp(G) | m`.
    pub fn eval(&self, beta: &[u64], a: &[u64], b: &[u64], m: u64) -> u64 {
        let mut s: i128 = 0;
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            let g = self.moduli[k] as i128;
            let c = (a[i] as i128 * b[j] as i128 - a[j] as i128 * b[i] as i128).rem_euclid(g);
            s += (beta[k] as i128 * c % g) * (m as i128 / g);
        }
        s.rem_euclid(m as i128) as u64
    }

    /// Coordinates of a bimultiplicative alternating form from its values on generator pairs.
    pub fn from_generator_values(&self, value: impl Fn(usize, usize) -> u64, m: u64) -> Vec<u64> {
        self.pairs
            .iter()
            .zip(&self.moduli)
            .map(|(&(i, j), &g)| {
                let v = value(i, j);
                debug_assert_eq!(v % (m / g), 0);
                (v / (m / g)) % g
            })
            .collect()
    }

    /// `a(s)`, for a cocycle table `s` modulo `m`.
    pub fn antisymmetrization(&self, tables: &GroupTables, s: &[u64], m: u64) -> Vec<u64> {
        let n = tables.n;
        let gens = &tables.gens;
        self.from_generator_values(|i, j| (s[gens[i] * n + gens[j]] + m - s[gens[j] * n + gens[i]]) % m, m)
    }

    /// The form itself as a table modulo `m`.
    pub fn as_table(&self, beta: &[u64], m: u64) -> Vec<u64> {
        let els = self.group.elements();
        let n = els.len();
        let mut out = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                out[a * n + b] = self.eval(beta, &els[a], &els[b], m);
            }
        }
        out
    }

    /// The bimultiplicative cocycle `s_beta` with `s(g_i, g_j) = beta(g_i, g_j)` for `i < j` and `1` otherwise.
    pub fn upper_table(&self, beta: &[u64], m: u64) -> Vec<u64> {
        let els = self.group.elements();
        let n = els.len();
        let mut out = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut s: u128 = 0;
                for (k, &(i, j)) in self.pairs.iter().enumerate() {
                    let g = self.moduli[k];
                    let c = (els[a][i] % g) * (els[b][j] % g) % g * beta[k] % g;
                    s += c as u128 * (m / g) as u128;
                }
                out[a * n + b] = (s % m as u128) as u64;
            }
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.moduli).map(|((&a, &b), &g)| (a + b) % g).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.moduli).map(|(&a, &g)| (a * (k % g)) % g).collect()
    }

    /// `beta ∘ (e x e)`.
    pub fn pullback(&self, beta: &[u64], e: &Endomorphism) -> Vec<u64> {
        let m = self.group.exponent();
        let imgs: Vec<Vec<u64>> = (0..self.group.rank()).map(|i| e.apply(&self.group.generator(i))).collect();
        self.from_generator_values(|i, j| self.eval(beta, &imgs[i], &imgs[j], m), m)
    }

    /// Matrix (columns are images of basis forms) of `beta -> beta ∘ (e x e)`.
    pub fn pullback_matrix(&self, e: &Endomorphism) -> Vec<Vec<i64>> {
        let k = self.dim();
        let cols: Vec<Vec<u64>> = (0..k)
            .map(|c| {
                let mut b = self.zero();
                b[c] = 1;
                self.pullback(&b, e)
            })
            .collect();
        (0..k).map(|r| (0..k).map(|c| cols[c][r] as i64).collect()).collect()
    }

    /// `chi ∧ psi` for characters in coordinates.
    pub fn wedge(&self, chi: &[u64], psi: &[u64]) -> Vec<u64> {
        self.pairs
            .iter()
            .zip(&self.moduli)
            .map(|(&(i, j), &g)| {
                let v = (chi[i] % g) * (psi[j] % g) % g + g * g - (chi[j] % g) * (psi[i] % g) % g;
                v % g
            })
            .collect()
    }

    /// All forms in mixed-radix order.
    pub fn all(&self) -> Vec<Vec<u64>> {
        let total = self.order() as usize;
        (0..total)
            .map(|mut x| {
                let mut v = self.zero();
                for k in (0..self.dim()).rev() {
                    v[k] = (x % self.moduli[k] as usize) as u64;
                    x /= self.moduli[k] as usize;
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_are_alternating_cocycles() {
        for s in ["Z3xZ3", "Z9xZ3", "Z2^3", "Z4xZ2"] {
            let g = AbelianGroup::parse(s).unwrap();
            let alt = AltSpace::new(&g);
            let t = GroupTables::new(&g);
            let m = 2 * g.exponent();
            for beta in alt.all() {
                let tab = alt.as_table(&beta, m);
                assert!(t.is_cocycle_reduced(&tab, m));
                assert!((0..t.n).all(|a| tab[a * t.n + a] == 0));
                let up = alt.upper_table(&beta, m);
                assert!(t.is_cocycle_reduced(&up, m));
                assert_eq!(alt.antisymmetrization(&t, &up, m), beta);
                assert_eq!(alt.antisymmetrization(&t, &tab, m), alt.scale(2, &beta));
            }
        }
    }

    #[test]
    fn alt_orders() {
        assert_eq!(AltSpace::new(&AbelianGroup::parse("Z9xZ3").unwrap()).order(), 3);
        assert_eq!(AltSpace::new(&AbelianGroup::parse("Z2^3").unwrap()).order(), 8);
        assert_eq!(AltSpace::new(&AbelianGroup::parse("Z3xZ5").unwrap()).order(), 1);
        assert_eq!(AltSpace::new(&AbelianGroup::parse("Z15xZ15").unwrap()).order(), 15);
    }

    #[test]
    fn pullback_by_matrix() {
        let g = AbelianGroup::parse("Z3xZ3").unwrap();
        let alt = AltSpace::new(&g);
        let e = Endomorphism::new(&g, vec![vec![1, 1], vec![2, 0]]).unwrap();
        assert_eq!(alt.pullback(&[1], &e), vec![1]);
        let w = alt.wedge(&[1, 0], &[0, 1]);
        assert_eq!(w, vec![1]);
    }
}
