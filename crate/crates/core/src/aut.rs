//! Automorphism groups of finite abelian groups: counting, generators and enumeration.

use crate::arith::{factor, gcd, mult_order};
use crate::error::{Error, Result};
use crate::group::{rank_mod_prime, AbelianGroup, Endomorphism};
use std::collections::{HashSet, VecDeque};

/// Limits for brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_group_order: u64,
    pub max_candidates: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_group_order: 625, max_candidates: 2_000_000 }
    }
}

/// Order of `Aut(G)` from the primary decomposition.
pub fn aut_order(g: &AbelianGroup) -> u128 {
    let mut total: u128 = 1;
    for q in g.prime_divisors() {
        let mut es: Vec<u32> = g
            .cyclic_orders()
            .iter()
            .filter(|&&d| d % q == 0)
            .map(|&d| factor(d)[0].1)
            .collect();
        es.sort();
        let n = es.len();
        let qq = q as u128;
        let pw = |k: u32| qq.pow(k);
        for k in 1..=n {
            let ek = es[k - 1];
            let dk = (1..=n).filter(|&l| es[l - 1] <= ek).max().unwrap() as u32;
            let ck = (1..=n).filter(|&l| es[l - 1] >= ek).min().unwrap() as u32;
            total *= pw(dk) - pw(k as u32 - 1);
            total *= pw(ek * (n as u32 - dk));
            total *= pw((ek - 1) * (n as u32 - ck + 1));
        }
    }
    total
}

/// Generators of `(Z/d)^x` for a prime power `d`.
pub fn unit_generators(d: u64) -> Vec<u64> {
    let (q, a) = factor(d)[0];
    if q == 2 {
        return match a {
            1 => vec![],
            2 => vec![3],
            _ => vec![d - 1, 5],
        };
    }
    let phi = d / q * (q - 1);
    let g = (2..d).find(|&x| gcd(x, d) == 1 && mult_order(x, d) == phi).expect("cyclic unit group");
    vec![g]
}

/// Unit scalings on each factor and elementary transvections between factors of the same prime.
pub fn aut_generators(g: &AbelianGroup) -> Vec<Endomorphism> {
    let n = g.rank();
    let d = g.cyclic_orders();
    let mut out = Vec::new();
    for i in 0..n {
        for u in unit_generators(d[i]) {
            let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
            m[i][i] = u as i64;
            out.push(Endomorphism::new(g, m).expect("unit scaling"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && g.prime_of(i) == g.prime_of(j) {
                let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
                m[i][j] = (d[i] / gcd(d[i], d[j])) as i64;
                out.push(Endomorphism::new(g, m).expect("transvection"));
            }
        }
    }
    out
}

/// Closure of a generating set under composition; fails past `limit` elements.
pub fn closure(g: &AbelianGroup, gens: &[Endomorphism], limit: usize) -> Result<Vec<Endomorphism>> {
    let id = Endomorphism::identity(g);
    let mut seen: HashSet<Endomorphism> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = s.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= limit {
                    return Err(Error::Budget { what: "group closure".into(), needed: (limit + 1) as u128, limit: limit as u128 });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out.sort();
    Ok(out)
}

fn candidate_columns(g: &AbelianGroup, j: usize) -> Vec<Vec<u64>> {
    let dj = g.cyclic_orders()[j];
    g.elements().into_iter().filter(|v| dj % g.element_order(v) == 0).collect()
}

/// Brute-force enumeration: every column choice respecting orders, filtered by invertibility.
pub fn enumerate_automorphisms_brute(g: &AbelianGroup, budget: Budget) -> Result<Vec<Endomorphism>> {
    if g.order() > budget.max_group_order {
        return Err(Error::Budget { what: "automorphism enumeration (|G|)".into(), needed: g.order() as u128, limit: budget.max_group_order as u128 });
    }
    let n = g.rank();
    let cands: Vec<Vec<Vec<u64>>> = (0..n).map(|j| candidate_columns(g, j)).collect();
    let total: u128 = cands.iter().map(|c| c.len() as u128).product();
    if total > budget.max_candidates {
        return Err(Error::Budget { what: "automorphism enumeration (candidates)".into(), needed: total, limit: budget.max_candidates });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let cols: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cands[j][idx[j]][i] as i64).collect()).collect();
        let e = Endomorphism::new(g, cols).expect("columns respect orders");
        if e.is_automorphism() {
            out.push(e);
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `GL_n(F_p)` for an elementary group, built column by column.
pub fn enumerate_general_linear(g: &AbelianGroup, budget: Budget) -> Result<Vec<Endomorphism>> {
    if !g.is_elementary() {
        return Err(Error::Precondition(format!("{g} is not elementary")));
    }
    let count = aut_order(g);
    if count > budget.max_candidates {
        return Err(Error::Budget { what: "GL_n enumeration".into(), needed: count, limit: budget.max_candidates });
    }
    let p = g.prime_of(0);
    let n = g.rank();
    let vectors = g.elements();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<u64>> = Vec::new();
    fn rec(g: &AbelianGroup, p: u64, n: usize, vectors: &[Vec<u64>], cols: &mut Vec<Vec<u64>>, out: &mut Vec<Endomorphism>) {
        if cols.len() == n {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i] as i64).collect()).collect();
            out.push(Endomorphism::new(g, m).expect("valid"));
            return;
        }
        for v in vectors {
            cols.push(v.clone());
            if rank_mod_prime(cols.clone(), p) == cols.len() {
                rec(g, p, n, vectors, cols, out);
            }
            cols.pop();
        }
    }
    rec(g, p, n, &vectors, &mut cols, &mut out);
    out.sort();
    Ok(out)
}

/// The family `[[a, c p^(e-1)], [b, d]]` (columns are images) for `Z_{p^e} + Z_p`, `e >= 2`.
pub fn enumerate_gamma(g: &AbelianGroup) -> Result<Vec<Endomorphism>> {
    let d = g.cyclic_orders();
    if d.len() != 2 || g.prime_of(0) != g.prime_of(1) || d[1] != g.prime_of(1) || d[0] == d[1] {
        return Err(Error::Precondition(format!("{g} is not of the form Z_p^e + Z_p with e >= 2")));
    }
    let p = d[1];
    let pe = d[0];
    let mut out = Vec::new();
    for a in 0..pe {
        if a % p == 0 {
            continue;
        }
        for b in 0..p {
            for c in 0..p {
                for dd in 1..p {
                    let m = vec![vec![a as i64, (c * pe / p) as i64], vec![b as i64, dd as i64]];
                    out.push(Endomorphism::new(g, m).expect("valid"));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All automorphisms, using a closed-form path when one applies.
pub fn enumerate_automorphisms(g: &AbelianGroup, budget: Budget) -> Result<Vec<Endomorphism>> {
    if g.order() > budget.max_group_order {
        return Err(Error::Budget { what: "automorphism enumeration (|G|)".into(), needed: g.order() as u128, limit: budget.max_group_order as u128 });
    }
    if g.rank() == 0 {
        return Ok(vec![Endomorphism::identity(g)]);
    }
    if g.is_elementary() {
        return enumerate_general_linear(g, budget);
    }
    if let Ok(v) = enumerate_gamma(g) {
        return Ok(v);
    }
    let count = aut_order(g);
    if count > budget.max_candidates {
        return Err(Error::Budget { what: "automorphism enumeration".into(), needed: count, limit: budget.max_candidates });
    }
    closure(g, &aut_generators(g), budget.max_candidates as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> AbelianGroup {
        AbelianGroup::parse(s).unwrap()
    }

    #[test]
    fn small_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_automorphisms(&grp("Z2"), b).unwrap().len(), 1);
        assert_eq!(enumerate_automorphisms_brute(&grp("Z3xZ3"), b).unwrap().len(), 48);
        assert_eq!(enumerate_automorphisms(&grp("Z3xZ3"), b).unwrap().len(), 48);
    }

    #[test]
    fn formula_matches_brute_force() {
        for s in ["Z2", "Z4", "Z8", "Z9", "Z2xZ2", "Z4xZ2", "Z8xZ2", "Z4xZ4", "Z2^3", "Z4xZ2xZ2", "Z9xZ3", "Z3xZ3", "Z6", "Z12xZ2", "Z5xZ5", "Z27xZ3"] {
            let g = grp(s);
            let brute = enumerate_automorphisms_brute(&g, Budget::default()).unwrap();
            assert_eq!(brute.len() as u128, aut_order(&g), "{s}");
        }
    }

    #[test]
    fn generators_generate() {
        for s in ["Z4xZ2", "Z8xZ2", "Z4xZ4", "Z2^3", "Z4xZ2xZ2", "Z9xZ3", "Z3^3", "Z8", "Z16xZ2", "Z6xZ2"] {
            let g = grp(s);
            let c = closure(&g, &aut_generators(&g), 1_000_000).unwrap();
            assert_eq!(c.len() as u128, aut_order(&g), "{s}");
        }
    }

    #[test]
    fn fast_paths_match_brute_force() {
        let b = Budget::default();
        for s in ["Z2^3", "Z3^2", "Z5^2", "Z2^2"] {
            let g = grp(s);
            assert_eq!(enumerate_general_linear(&g, b).unwrap(), enumerate_automorphisms_brute(&g, b).unwrap());
        }
        for s in ["Z9xZ3", "Z4xZ2", "Z8xZ2", "Z25xZ5"] {
            let g = grp(s);
            assert_eq!(enumerate_gamma(&g).unwrap(), enumerate_automorphisms_brute(&g, b).unwrap());
        }
    }

    #[test]
    fn order_p_elements_of_gamma() {
        let g = grp("Z9xZ3");
        let auts = enumerate_automorphisms(&g, Budget::default()).unwrap();
        assert_eq!(auts.iter().filter(|a| a.pow(3).is_identity()).count(), 27);
        let g = grp("Z25xZ5");
        let auts = enumerate_gamma(&g).unwrap();
        assert_eq!(auts.iter().filter(|a| a.pow(5).is_identity()).count(), 125);
    }

    #[test]
    fn budget_is_enforced() {
        let g = grp("Z5^4");
        assert!(matches!(enumerate_automorphisms(&g, Budget::default()), Err(Error::Budget { .. })));
        assert!(enumerate_automorphisms(&grp("Z2^10"), Budget::default()).is_err());
    }
}
