//! Linear algebra over residue rings: Howell forms, Smith normal form, kernels and subquotients.

use crate::arith::{ext_gcd, gcd, lcm};
use crate::error::{Error, Result};
use std::collections::HashMap;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn unit_normalizer(v: u64, m: u64) -> u64 {
    let g = gcd(v, m);
    let mg = m / g;
    let vp = (v / g) % mg;
    let u0 = if mg == 1 { 1 } else { crate::arith::mod_inv(vp, mg).expect("coprime") };
    let mut u = u0;
    while gcd(u, m) != 1 {
        u += mg;
    }
    u % m.max(1)
}

/// Howell form of the row module spanned by `rows` in `(Z/m)^n`: echelon rows whose leading
/// entries divide `m`, saturated so that rows with zeros in the first `c` columns span every
/// module element with that property.
pub fn howell_form(rows: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    if rows.is_empty() || m == 1 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut pool: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
    pool.retain(|r| r.iter().any(|&x| x != 0));
    let mut result: Vec<(usize, Vec<u64>)> = Vec::new();
    for c in 0..n {
        let mut pivot: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(pool.len());
        for r in pool.drain(..) {
            if r[c] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(a) => {
                    let (x, y) = (a[c], r[c]);
                    let (g, s, t) = ext_gcd(x as i128, y as i128);
                    let mm = m as i128;
                    let (xg, yg) = ((x as i128) / g, (y as i128) / g);
                    let mut na = vec![0u64; n];
                    let mut nb = vec![0u64; n];
                    for k in c..n {
                        let (ak, bk) = (a[k] as i128, r[k] as i128);
                        na[k] = (s * ak + t * bk).rem_euclid(mm) as u64;
                        nb[k] = (yg * ak - xg * bk).rem_euclid(mm) as u64;
                    }
                    debug_assert_eq!(nb[c], 0);
                    if nb.iter().any(|&v| v != 0) {
                        rest.push(nb);
                    }
                    pivot = Some(na);
                }
            }
        }
        pool = rest;
        if let Some(mut pr) = pivot {
            let u = unit_normalizer(pr[c], m);
            for v in pr.iter_mut() {
                *v = mulmod(*v, u, m);
            }
            let g = pr[c];
            let sat: Vec<u64> = pr.iter().map(|&v| mulmod(v, m / g, m)).collect();
            if sat.iter().any(|&v| v != 0) {
                pool.push(sat);
            }
            for (_, q) in result.iter_mut() {
                let f = q[c] / g;
                if f != 0 {
                    for k in c..n {
                        q[k] = (q[k] + m - mulmod(f, pr[k], m)) % m;
                    }
                }
            }
            result.push((c, pr));
        }
    }
    result.into_iter().map(|(_, r)| r).collect()
}

/// Integer Smith normal form `U A V = D` with unimodular `U`, `V`; returns `(D diagonal, V, V^-1)`.
pub fn smith_normal_form(a: &[Vec<i128>]) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut v: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let mut vi = v.clone();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut v, t, pj);
        vi.swap(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if m[i][t] != 0 && m[i][t] % m[t][t] == 0 {
                    let f = m[i][t] / m[t][t];
                    for k in t..cols {
                        m[i][k] -= f * m[t][k];
                    }
                } else if m[i][t] != 0 {
                    let (g, s, u) = ext_gcd(m[t][t], m[i][t]);
                    let (a0, b0) = (m[t][t] / g, m[i][t] / g);
                    for k in t..cols {
                        let (x, y) = (m[t][k], m[i][k]);
                        m[t][k] = s * x + u * y;
                        m[i][k] = -b0 * x + a0 * y;
                    }
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 && m[t][j] % m[t][t] == 0 {
                    let f = m[t][j] / m[t][t];
                    col_combine(&mut m, t, j, 1, 0, -f, 1);
                    col_combine(&mut v, t, j, 1, 0, -f, 1);
                    for k in 0..cols {
                        vi[t][k] += f * vi[j][k];
                    }
                } else if m[t][j] != 0 {
                    let (g, s, u) = ext_gcd(m[t][t], m[t][j]);
                    let (a0, b0) = (m[t][t] / g, m[t][j] / g);
                    col_combine(&mut m, t, j, s, u, -b0, a0);
                    col_combine(&mut v, t, j, s, u, -b0, a0);
                    // inverse of [[s, -b0],[u, a0]] acting on columns is [[a0, b0],[-u, s]] on rows
                    for k in 0..cols {
                        let (x, y) = (vi[t][k], vi[j][k]);
                        vi[t][k] = a0 * x + b0 * y;
                        vi[j][k] = -u * x + s * y;
                    }
                    changed = true;
                }
            }
            if !changed {
                let d = m[t][t];
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % d != 0);
                match bad {
                    Some((i, _)) => {
                        for k in t..cols {
                            m[t][k] += m[i][k];
                        }
                    }
                    None => break,
                }
            }
        }
        if m[t][t] < 0 {
            for k in t..cols {
                m[t][k] = -m[t][k];
            }
        }
        diag.push(m[t][t]);
        t += 1;
    }
    (diag, v, vi)
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for r in m.iter_mut() {
        r.swap(a, b);
    }
}

/// Columns `(a, b) <- (s a + u b, p a + q b)` where the new column `b` is `p a + q b`.
fn col_combine(m: &mut [Vec<i128>], a: usize, b: usize, s: i128, u: i128, p: i128, q: i128) {
    for r in m.iter_mut() {
        let (x, y) = (r[a], r[b]);
        r[a] = s * x + u * y;
        r[b] = p * x + q * y;
    }
}

/// A finite submodule of `prod_j Z/moduli[j]` in direct-sum form: `gens[k]` has order `orders[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    pub moduli: Vec<u64>,
    pub gens: Vec<Vec<u64>>,
    pub orders: Vec<u64>,
}

impl FiniteModule {
    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn combine(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.moduli.len()];
        for (k, g) in self.gens.iter().enumerate() {
            for j in 0..v.len() {
                v[j] = (v[j] + mulmod(coeffs[k], g[j], self.moduli[j])) % self.moduli[j];
            }
        }
        v
    }

    /// All elements with their coordinates; coordinates in mixed radix over `orders`.
    pub fn elements(&self) -> Vec<(Vec<u64>, Vec<u64>)> {
        let total = self.order() as usize;
        let mut out = Vec::with_capacity(total);
        let mut c = vec![0u64; self.orders.len()];
        for _ in 0..total {
            out.push((c.clone(), self.combine(&c)));
            for k in (0..c.len()).rev() {
                c[k] += 1;
                if c[k] < self.orders[k] {
                    break;
                }
                c[k] = 0;
            }
        }
        out
    }

    pub fn coordinate_map(&self) -> HashMap<Vec<u64>, Vec<u64>> {
        self.elements().into_iter().map(|(c, v)| (v, c)).collect()
    }
}

/// Decomposes the submodule of `(Z/m)^n` spanned by `rows` into a direct sum of cyclic groups.
pub fn span_decompose(rows: &[Vec<u64>], m: u64, n: usize) -> FiniteModule {
    let h = howell_form(rows, m);
    decompose_howell(&h, m, n)
}

fn decompose_howell(h: &[Vec<u64>], m: u64, n: usize) -> FiniteModule {
    let r = h.len();
    let piv: Vec<usize> = h.iter().map(|row| row.iter().position(|&x| x != 0).expect("nonzero")).collect();
    let mut rel = vec![vec![0i128; r]; r];
    for i in 0..r {
        let pv = h[i][piv[i]];
        rel[i][i] = (m / pv) as i128;
        let mut w: Vec<u64> = h[i].iter().map(|&x| mulmod(x, m / pv, m)).collect();
        for j in i + 1..r {
            let x = w[piv[j]];
            if x == 0 {
                continue;
            }
            let pj = h[j][piv[j]];
            assert!(x % pj == 0, "Howell property violated");
            let c = x / pj;
            rel[i][j] = -(c as i128);
            for k in 0..n {
                w[k] = (w[k] + m - mulmod(c, h[j][k], m)) % m;
            }
        }
        debug_assert!(w.iter().all(|&x| x == 0));
    }
    let (d, _v, vi) = smith_normal_form(&rel);
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (k, &dk) in d.iter().enumerate() {
        if dk == 1 {
            continue;
        }
        let mut g = vec![0u64; n];
        for i in 0..r {
            let c = vi[k][i].rem_euclid(m as i128) as u64;
            for j in 0..n {
                g[j] = (g[j] + mulmod(c, h[i][j], m)) % m;
            }
        }
        gens.push(g);
        orders.push(dk as u64);
    }
    FiniteModule { moduli: vec![m; n], gens, orders }
}

/// Solutions `x in prod_j Z/col_moduli[j]` of `sum_j a[i][j] x_j = 0 mod row_moduli[i]`.
pub fn kernel_mod_general(a: &[Vec<i64>], row_moduli: &[u64], col_moduli: &[u64]) -> Result<FiniteModule> {
    let k = a.len();
    let n = col_moduli.len();
    if row_moduli.len() != k || a.iter().any(|r| r.len() != n) {
        return Err(Error::Shape { expected: k, found: row_moduli.len() });
    }
    for i in 0..k {
        for j in 0..n {
            if ((a[i][j].rem_euclid(row_moduli[i] as i64) as u128 * col_moduli[j] as u128) % row_moduli[i] as u128) != 0 {
                return Err(Error::Precondition(format!("entry ({i},{j}) is not well defined modulo {}", col_moduli[j])));
            }
        }
    }
    let m = row_moduli.iter().chain(col_moduli).fold(1u64, |x, &y| lcm(x, y));
    if n == 0 {
        return Ok(FiniteModule { moduli: vec![], gens: vec![], orders: vec![] });
    }
    let mut aug = vec![vec![0u64; k + n]; n];
    for j in 0..n {
        for i in 0..k {
            let s = m / row_moduli[i];
            aug[j][i] = mulmod(a[i][j].rem_euclid(m as i64) as u64, s, m);
        }
        aug[j][k + j] = 1;
    }
    let h = howell_form(&aug, m);
    let kernel_rows: Vec<Vec<u64>> = h
        .iter()
        .filter(|r| r[..k].iter().all(|&x| x == 0))
        .map(|r| (0..n).map(|j| mulmod(r[k + j], m / col_moduli[j], m)).collect())
        .collect();
    let dec = span_decompose(&kernel_rows, m, n);
    let gens = dec
        .gens
        .iter()
        .map(|g| g.iter().enumerate().map(|(j, &x)| x / (m / col_moduli[j])).collect())
        .collect();
    Ok(FiniteModule { moduli: col_moduli.to_vec(), gens, orders: dec.orders })
}

/// Solutions of `A x = 0` with row `i` taken modulo `moduli[i]`, over `x in (Z/M)^n`, `M = lcm(moduli)`.
pub fn kernel_mod(a: &[Vec<i64>], moduli: &[u64], ncols: usize) -> FiniteModule {
    let m = moduli.iter().fold(1u64, |x, &y| lcm(x, y));
    kernel_mod_general(a, moduli, &vec![m; ncols]).expect("uniform column modulus is always well defined")
}

/// `F / N` for subgroups `N <= F` of some finite module; `n_gens` must lie in `F`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub ambient: FiniteModule,
    pub orders: Vec<u64>,
    /// Lifts in the ambient coordinates of the quotient generators.
    pub lifts: Vec<Vec<u64>>,
    f_coords: HashMap<Vec<u64>, Vec<u64>>,
    v: Vec<Vec<i128>>,
}

impl Subquotient {
    pub fn new(f: &FiniteModule, n_gens: &[Vec<u64>]) -> Result<Self> {
        let coords = f.coordinate_map();
        let r = f.gens.len();
        let mut rel: Vec<Vec<i128>> = Vec::new();
        for k in 0..r {
            let mut row = vec![0i128; r];
            row[k] = f.orders[k] as i128;
            rel.push(row);
        }
        for x in n_gens {
            let c = coords.get(x).ok_or_else(|| Error::Precondition("subgroup generator outside F".into()))?;
            rel.push(c.iter().map(|&y| y as i128).collect());
        }
        let (d, v, vi) = if r == 0 { (vec![], vec![], vec![]) } else { smith_normal_form(&rel) };
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut keep = Vec::new();
        for (k, &dk) in d.iter().enumerate() {
            if dk == 1 {
                continue;
            }
            let c: Vec<u64> = (0..r).map(|i| vi[k][i].rem_euclid(f.orders[i] as i128) as u64).collect();
            lifts.push(f.combine(&c));
            orders.push(dk as u64);
            keep.push(k);
        }
        let v = (0..r).map(|i| keep.iter().map(|&k| v[i][k]).collect()).collect();
        Ok(Subquotient { ambient: f.clone(), orders, lifts, f_coords: coords, v })
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Quotient coordinates of an element of `F`.
    pub fn coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.f_coords.get(x)?;
        Some(
            (0..self.orders.len())
                .map(|k| {
                    let s: i128 = c.iter().enumerate().map(|(i, &ci)| ci as i128 * self.v[i][k]).sum();
                    s.rem_euclid(self.orders[k] as i128) as u64
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_kernel(a: &[Vec<i64>], moduli: &[u64], cols: &[u64]) -> usize {
        let total: u64 = cols.iter().product();
        let mut count = 0;
        for idx in 0..total {
            let mut x = vec![0u64; cols.len()];
            let mut r = idx;
            for j in (0..cols.len()).rev() {
                x[j] = r % cols[j];
                r /= cols[j];
            }
            if a.iter().zip(moduli).all(|(row, &mo)| {
                row.iter().zip(&x).map(|(&c, &v)| c * v as i64).sum::<i64>().rem_euclid(mo as i64) == 0
            }) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn spec_examples() {
        let k = kernel_mod(&[vec![1, 0], vec![0, 1]], &[5, 5], 2);
        assert_eq!(k.order(), 1);
        let k = kernel_mod(&[vec![0]], &[6], 1);
        assert_eq!(k.order(), 6);
        let k = kernel_mod(&[vec![2]], &[4], 1);
        assert_eq!(k.order(), 2);
        assert_eq!(k.gens, vec![vec![2]]);
    }

    #[test]
    fn snf_small() {
        let (d, v, vi) = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(d, vec![2, 6, 12]);
        let n = v.len();
        for i in 0..n {
            for j in 0..n {
                let s: i128 = (0..n).map(|k| v[i][k] * vi[k][j]).sum();
                assert_eq!(s, i128::from(i == j));
            }
        }
    }

    #[test]
    fn snf_divisible_pivot() {
        let (d, _, _) = smith_normal_form(&[vec![12, -12], vec![-36, 48]]);
        assert_eq!(d, vec![12, 12]);
        let a = vec![vec![10, 11, 0, 6], vec![1, 1, 2, 0]];
        let k = kernel_mod(&a, &[12, 12], 4);
        assert_eq!(k.order() as usize, brute_kernel(&a, &[12, 12], &[12; 4]));
    }

    #[test]
    fn mixed_moduli() {
        let a = vec![vec![1, 2, 0], vec![0, 3, 1]];
        let k = kernel_mod_general(&a, &[2, 3], &[4, 6, 3]).unwrap();
        assert_eq!(k.order() as usize, brute_kernel(&a, &[2, 3], &[4, 6, 3]));
        for (_, x) in k.elements() {
            assert_eq!(((x[0] + 2 * x[1]) % 2), 0);
        }
        assert!(kernel_mod_general(&[vec![1]], &[4], &[3]).is_err());
    }

    #[test]
    fn subquotient_basic() {
        let f = kernel_mod(&[vec![0, 0]], &[9], 2);
        let q = Subquotient::new(&f, &[vec![3, 0], vec![0, 3]]).unwrap();
        assert_eq!(q.order(), 9);
        assert_eq!(q.coords(&[3, 6]).unwrap(), vec![0, 0]);
        let c = q.coords(&[1, 0]).unwrap();
        assert!(c.iter().any(|&x| x != 0));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn kernel_matches_exhaustive(m in prop::sample::select(vec![2u64, 3, 4, 6, 8, 9, 12]),
                                     rows in 1usize..4, cols in 1usize..4,
                                     seed in prop::collection::vec(-20i64..20, 16)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let moduli = vec![m; rows];
            let k = kernel_mod(&a, &moduli, cols);
            prop_assert_eq!(k.order() as usize, brute_kernel(&a, &moduli, &vec![m; cols]));
            let els = k.elements();
            let set: std::collections::HashSet<_> = els.iter().map(|e| e.1.clone()).collect();
            prop_assert_eq!(set.len(), els.len());
            for (_, x) in els {
                for row in &a {
                    let s: i64 = row.iter().zip(&x).map(|(&c, &v)| c * v as i64).sum();
                    prop_assert_eq!(s.rem_euclid(m as i64), 0);
                }
            }
        }

        #[test]
        fn kernel_mixed_moduli(seed in prop::collection::vec(0i64..12, 6)) {
            let rows_m = [4u64, 6];
            let cols_m = [12u64, 4, 6];
            let a: Vec<Vec<i64>> = (0..2).map(|i| (0..3).map(|j| {
                let step = (rows_m[i] / gcd(rows_m[i], cols_m[j])) as i64;
                seed[i * 3 + j] * step
            }).collect()).collect();
            let k = kernel_mod_general(&a, &rows_m, &cols_m).unwrap();
            prop_assert_eq!(k.order() as usize, brute_kernel(&a, &rows_m, &cols_m));
        }
    }
}
