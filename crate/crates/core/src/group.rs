//! Primary-decomposed finite abelian groups, their elements, characters and endomorphisms.

use crate::arith::{factor, gcd, lcm};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Residue vector of a group element; `coords[i]` lives in `Z/d_i`.
pub type GroupElement = Vec<u64>;

/// Residue vector of a character; `coords[i]` is the exponent of `zeta_{d_i}` at `g_i`.
pub type Character = Vec<u64>;

/// `Z/d_1 x ... x Z/d_n` with every `d_i` a prime power, sorted by prime then by decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    cyclic_orders: Vec<u64>,
    primes: Vec<u64>,
    exponent: u64,
    order: u64,
}

impl AbelianGroup {
    /// Builds the group from arbitrary cyclic orders; composite orders are split into primary parts.
    pub fn new(orders: &[u64]) -> Result<Self> {
        let mut parts: Vec<(u64, u64)> = Vec::new();
        for &n in orders {
            if n == 0 {
                return Err(Error::Parse("cyclic factor of order 0".into()));
            }
            for (q, e) in factor(n) {
                parts.push((q, q.pow(e)));
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let cyclic_orders: Vec<u64> = parts.iter().map(|x| x.1).collect();
        let primes = parts.iter().map(|x| x.0).collect();
        let exponent = cyclic_orders.iter().fold(1, |a, &d| lcm(a, d));
        let order = cyclic_orders.iter().product();
        Ok(AbelianGroup { cyclic_orders, primes, exponent, order })
    }

    pub fn trivial() -> Self {
        AbelianGroup::new(&[]).expect("empty group")
    }

    /// Elementary abelian group `Z_p^r`.
    pub fn elementary(p: u64, r: usize) -> Self {
        AbelianGroup::new(&vec![p; r]).expect("valid orders")
    }

    /// Parses descriptors such as `Z9xZ3`, `Z3^2`, `Z5 x Z5 x Z5`, `C2xC2` or `1`.
    pub fn parse(s: &str) -> Result<Self> {
        let clean: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if clean.is_empty() || clean == "1" || clean == "Z1" || clean == "C1" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for part in clean.split(['x', 'X', '*']) {
            let body = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('C'))
                .ok_or_else(|| Error::Parse(s.into()))?;
            let (base, rep) = match body.split_once('^') {
                Some((b, r)) => (b, r.parse::<usize>().map_err(|_| Error::Parse(s.into()))?),
                None => (body, 1),
            };
            let n: u64 = base.parse().map_err(|_| Error::Parse(s.into()))?;
            if n == 0 || rep == 0 {
                return Err(Error::Parse(s.into()));
            }
            orders.extend(std::iter::repeat_n(n, rep));
        }
        Self::new(&orders)
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    /// Prime of the `i`-th cyclic factor.
    pub fn prime_of(&self, i: usize) -> u64 {
        self.primes[i]
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Distinct prime divisors of the order, increasing.
    pub fn prime_divisors(&self) -> Vec<u64> {
        let mut v = self.primes.clone();
        v.dedup();
        v
    }

    /// Smallest prime divisor of `|G|`, `None` for the trivial group.
    pub fn smallest_prime(&self) -> Option<u64> {
        self.primes.first().copied()
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.primes.iter().all(|&q| q == p)
    }

    pub fn is_elementary(&self) -> bool {
        self.rank() > 0 && self.is_p_group(self.primes[0]) && self.cyclic_orders.iter().all(|&d| d == self.primes[0])
    }

    pub fn descriptor(&self) -> String {
        if self.rank() == 0 {
            return "1".into();
        }
        self.cyclic_orders.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    /// Standard generator `g_i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut v = self.zero();
        if self.cyclic_orders[i] > 1 {
            v[i] = 1;
        }
        v
    }

    pub fn check(&self, g: &[u64]) -> Result<()> {
        if g.len() != self.rank() {
            return Err(Error::Shape { expected: self.rank(), found: g.len() });
        }
        Ok(())
    }

    pub fn reduce(&self, g: &[i64]) -> GroupElement {
        g.iter().zip(&self.cyclic_orders).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElement {
        a.iter().zip(b).zip(&self.cyclic_orders).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> GroupElement {
        a.iter().zip(b).zip(&self.cyclic_orders).map(|((&x, &y), &d)| (x + d - y % d) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> GroupElement {
        a.iter().zip(&self.cyclic_orders).map(|(&x, &d)| (d - x % d) % d).collect()
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> GroupElement {
        a.iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &d)| ((k as u128 * x as u128) % d as u128) as u64)
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Order of an element.
    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter().zip(&self.cyclic_orders).fold(1, |acc, (&x, &d)| lcm(acc, d / gcd(x, d)))
    }

    /// Mixed-radix index with the first coordinate most significant.
    pub fn index(&self, a: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&x, &d) in a.iter().zip(&self.cyclic_orders) {
            idx = idx * d as usize + x as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.cyclic_orders[i] as usize;
            v[i] = (idx % d) as u64;
            idx /= d;
        }
        v
    }

    /// All elements in index order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order as usize).map(|i| self.element(i)).collect()
    }

    /// Table `add_table[i * n + j] = index(element(i) + element(j))`.
    pub fn add_table(&self) -> Vec<u32> {
        let n = self.order as usize;
        let els = self.elements();
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = self.index(&self.add(&els[i], &els[j])) as u32;
            }
        }
        t
    }

    /// Default scalar modulus `p * exp(G)`.
    pub fn default_modulus(&self, p: u64) -> u64 {
        p * self.exponent
    }

    /// Exponent of `chi(g)` as a power of `zeta_m`; requires `exp(G) | m`.
    pub fn pair(&self, chi: &[u64], g: &[u64], m: u64) -> Result<u64> {
        self.check(chi)?;
        self.check(g)?;
        if m % self.exponent != 0 {
            return Err(Error::Precondition(format!("modulus {m} is not a multiple of exp(G) = {}", self.exponent)));
        }
        Ok(self.pair_unchecked(chi, g, m))
    }

    pub(crate) fn pair_unchecked(&self, chi: &[u64], g: &[u64], m: u64) -> u64 {
        let mut s: u128 = 0;
        for i in 0..self.rank() {
            let d = self.cyclic_orders[i];
            s += (chi[i] as u128 * g[i] as u128 % d as u128) * (m / d) as u128;
        }
        (s % m as u128) as u64
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

/// Endomorphism in column convention: `g_j -> sum_i matrix[i][j] g_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endomorphism {
    orders: Vec<u64>,
    matrix: Vec<Vec<u64>>,
}

impl Endomorphism {
    /// Validates the congruence constraints and reduces entries.
    pub fn new(g: &AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = g.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Shape { expected: n, found: matrix.len() });
        }
        let d = g.cyclic_orders();
        let mut m = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = matrix[i][j].rem_euclid(d[i] as i64) as u64;
                let step = d[i] / gcd(d[i], d[j]);
                if v % step != 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) = {v} must be divisible by {step}"
                    )));
                }
                m[i][j] = v;
            }
        }
        Ok(Endomorphism { orders: d.to_vec(), matrix: m })
    }

    /// Builds the map from the images of the generators (row convention: `images[j]` is the image of `g_j`).
    pub fn from_images(g: &AbelianGroup, images: &[Vec<i64>]) -> Result<Self> {
        let n = g.rank();
        if images.len() != n {
            return Err(Error::Shape { expected: n, found: images.len() });
        }
        let cols: Vec<Vec<i64>> = (0..n).map(|i| images.iter().map(|r| r.get(i).copied().unwrap_or(0)).collect()).collect();
        Self::new(g, cols)
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        let n = g.rank();
        let matrix = (0..n).map(|i| (0..n).map(|j| u64::from(i == j && g.cyclic_orders()[i] > 1)).collect()).collect();
        Endomorphism { orders: g.cyclic_orders().to_vec(), matrix }
    }

    /// Multiplication by an integer.
    pub fn scalar(g: &AbelianGroup, k: i64) -> Self {
        let n = g.rank();
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { k } else { 0 }).collect()).collect();
        Self::new(g, m).expect("scalars are endomorphisms")
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[i][j]
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Images of the generators as rows.
    pub fn images(&self) -> Vec<Vec<u64>> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| self.matrix[i][j]).collect()).collect()
    }

    pub fn apply(&self, a: &[u64]) -> GroupElement {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let d = self.orders[i] as u128;
                let s: u128 = (0..n).map(|j| self.matrix[i][j] as u128 * a[j] as u128 % d).sum();
                (s % d) as u64
            })
            .collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        let n = self.rank();
        let mut m = vec![vec![0u64; n]; n];
        for i in 0..n {
            let d = self.orders[i] as u128;
            for k in 0..n {
                let mut s = 0u128;
                for j in 0..n {
                    s += self.matrix[i][j] as u128 * other.matrix[j][k] as u128 % d;
                }
                m[i][k] = (s % d) as u64;
            }
        }
        Endomorphism { orders: self.orders.clone(), matrix: m }
    }

    pub fn add(&self, other: &Endomorphism) -> Endomorphism {
        let n = self.rank();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (self.matrix[i][j] + other.matrix[i][j]) % self.orders[i]).collect())
            .collect();
        Endomorphism { orders: self.orders.clone(), matrix: m }
    }

    pub fn sub(&self, other: &Endomorphism) -> Endomorphism {
        let n = self.rank();
        let m = (0..n)
            .map(|i| {
                (0..n).map(|j| (self.matrix[i][j] + self.orders[i] - other.matrix[i][j]) % self.orders[i]).collect()
            })
            .collect();
        Endomorphism { orders: self.orders.clone(), matrix: m }
    }

    pub fn pow(&self, mut e: u64) -> Endomorphism {
        let mut r = Endomorphism { orders: self.orders.clone(), matrix: identity_matrix(&self.orders) };
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_matrix(&self.orders)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Invertibility test: each primary block must be invertible modulo its prime.
    pub fn is_automorphism(&self) -> bool {
        let n = self.rank();
        let mut i = 0;
        while i < n {
            let (q, _) = factor(self.orders[i])[0];
            let mut j = i;
            while j < n && self.orders[j] % q == 0 {
                j += 1;
            }
            let block: Vec<Vec<u64>> = (i..j).map(|r| (i..j).map(|c| self.matrix[r][c] % q).collect()).collect();
            if rank_mod_prime(block, q) != j - i {
                return false;
            }
            i = j;
        }
        true
    }

    /// Multiplicative order; `None` if not an automorphism or if the order exceeds `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        if !self.is_automorphism() {
            return None;
        }
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            if k >= limit {
                return None;
            }
            x = x.compose(self);
            k += 1;
        }
        Some(k)
    }

    pub fn inverse(&self) -> Result<Endomorphism> {
        let k = self
            .order(1 << 24)
            .ok_or_else(|| Error::InvalidMatrix("not an automorphism".into()))?;
        Ok(self.pow(k - 1))
    }

    /// Matrix on the character group of `chi -> chi ∘ self`, in the same column convention.
    pub fn dual(&self) -> Endomorphism {
        let n = self.rank();
        let d = &self.orders;
        let mut m = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let g = gcd(d[i], d[j]);
                m[j][i] = (self.matrix[i][j] / (d[i] / g)) * (d[j] / g) % d[j];
            }
        }
        Endomorphism { orders: d.clone(), matrix: m }
    }

    pub fn to_signed(&self) -> Vec<Vec<i64>> {
        self.matrix.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }
}

fn identity_matrix(orders: &[u64]) -> Vec<Vec<u64>> {
    let n = orders.len();
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j && orders[i] > 1)).collect()).collect()
}

/// Rank of a matrix over `F_q`.
pub fn rank_mod_prime(mut a: Vec<Vec<u64>>, q: u64) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] % q != 0) else { continue };
        a.swap(r, piv);
        let inv = crate::arith::mod_inv(a[r][c] % q, q).expect("prime modulus");
        for x in a[r].iter_mut() {
            *x = *x % q * inv % q;
        }
        for i in 0..rows {
            if i != r && a[i][c] % q != 0 {
                let f = a[i][c] % q;
                for k in 0..cols {
                    a[i][k] = (a[i][k] % q + q * q - f * a[r][k] % q) % q;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_decompose() {
        let g = AbelianGroup::parse("Z9xZ3").unwrap();
        assert_eq!(g.cyclic_orders(), &[9, 3]);
        let h = AbelianGroup::parse("Z3 x Z15").unwrap();
        assert_eq!(h.cyclic_orders(), &[3, 3, 5]);
        assert_eq!(h.order(), 45);
        assert_eq!(h.exponent(), 15);
        assert_eq!(AbelianGroup::parse("Z5^3").unwrap().cyclic_orders(), &[5, 5, 5]);
        assert_eq!(AbelianGroup::parse("1").unwrap().order(), 1);
        assert!(AbelianGroup::parse("Q8").is_err());
        assert_eq!(g.descriptor(), "Z9xZ3");
    }

    #[test]
    fn index_roundtrip() {
        let g = AbelianGroup::parse("Z4xZ2xZ3").unwrap();
        for i in 0..g.order() as usize {
            assert_eq!(g.index(&g.element(i)), i);
        }
    }

    #[test]
    fn pair_examples() {
        let g = AbelianGroup::parse("Z3xZ3").unwrap();
        assert_eq!(g.pair(&[0, 0], &[1, 2], 9).unwrap(), 0);
        assert_eq!(g.pair(&[1, 0], &[1, 0], 9).unwrap(), 3);
        let h = AbelianGroup::parse("Z4xZ2").unwrap();
        let m = 8;
        assert_eq!(h.pair(&[1, 1], &[2, 1], m).unwrap(), (2 * (m / 4) + m / 2) % m);
        assert!(h.pair(&[1], &[2, 1], m).is_err());
    }

    #[test]
    fn endomorphism_constraints() {
        let g = AbelianGroup::parse("Z9xZ3").unwrap();
        assert!(Endomorphism::new(&g, vec![vec![1, 1], vec![0, 1]]).is_err());
        let t = Endomorphism::new(&g, vec![vec![1, 3], vec![1, 1]]).unwrap();
        assert!(t.is_automorphism());
        assert_eq!(t.order(100), Some(3));
        let inv = t.inverse().unwrap();
        assert!(inv.compose(&t).is_identity());
    }

    #[test]
    fn dual_is_precomposition() {
        let g = AbelianGroup::parse("Z9xZ3").unwrap();
        let m = 27;
        let t = Endomorphism::new(&g, vec![vec![1, 3], vec![1, 1]]).unwrap();
        let d = t.dual();
        for chi in g.elements() {
            for a in g.elements() {
                assert_eq!(g.pair_unchecked(&d.apply(&chi), &a, m), g.pair_unchecked(&chi, &t.apply(&a), m));
            }
        }
    }
}
