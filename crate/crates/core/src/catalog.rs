//! Classes of `C_p`-actions, their equivariant automorphisms, stabilizers and intertwiners.

use crate::action::{check_prime, CpAction};
use crate::arith::{binomial, factor, gcd, is_quadratic_residue, mod_inv};
use crate::aut::{aut_generators, aut_order, closure, Budget};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Endomorphism};
use crate::linalg::{kernel_mod_general, FiniteModule};
use serde::Serialize;
use std::collections::HashSet;

/// Family of a cataloged action class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Trivial,
    /// Nontrivial action on a cyclic group.
    Cyclic,
    /// `Z_p^2` as the regular module.
    ElementaryRegular,
    /// `Z_p^3` as the regular module plus a trivial summand.
    ElementaryDecomposable,
    /// `Z_p^3` as a cyclic module of length three.
    ElementaryR3,
    GammaCentral,
    GammaLowerTriangular,
    /// `Z_{p^e} + Z_p` as a cyclic module with invariant class `0`, `1` or a non-residue.
    GammaCyclic(u64),
    /// Elementary 2-group with `swaps` transposed basis pairs.
    TwoElementary { swaps: usize },
    /// `Z_n x Z_n`, `p = 2`: per prime power factor `0` (identity), `1` (`-1`) or `2` (split).
    TwoNSplit { blocks: Vec<(u64, u8)> },
}

impl Family {
    pub fn tag(&self) -> String {
        match self {
            Family::Trivial => "trivial".into(),
            Family::Cyclic => "cyclic".into(),
            Family::ElementaryRegular => "elementary-regular".into(),
            Family::ElementaryDecomposable => "elementary-decomposable".into(),
            Family::ElementaryR3 => "elementary-R3".into(),
            Family::GammaCentral => "gamma-central".into(),
            Family::GammaLowerTriangular => "gamma-lower-triangular".into(),
            Family::GammaCyclic(q) => format!("gamma-cyclic({q})"),
            Family::TwoElementary { swaps } => format!("two-elementary({swaps})"),
            Family::TwoNSplit { blocks } => {
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|(q, k)| format!("{q}:{}", ["id", "-id", "split"][*k as usize]))
                    .collect();
                format!("two-n-split({})", parts.join(","))
            }
        }
    }
}

/// Generators of `G(⊳)`: `A(⊳)` together with intertwiners `λ_k` for `k` in `C(⊳)`.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryGroup {
    pub a_generators: Vec<Endomorphism>,
    pub a_order: u128,
    /// `(k, λ_k)` with `λ_k ∘ t = t^k ∘ λ_k`, for every `k` in `C(⊳)` other than `1`.
    pub omega: Vec<(u64, Endomorphism)>,
    /// `C(⊳)` as a sorted list of exponents.
    pub stabilizer: Vec<u64>,
}

/// A class `[⊳]` with its canonical representative and symmetry data.
#[derive(Debug, Clone, Serialize)]
pub struct ActionClass {
    pub family: Family,
    pub action: CpAction,
    pub symmetry: SymmetryGroup,
}

/// The module of homomorphisms `λ` with `λ ∘ t1 = t2 ∘ λ`, in coordinates `M[i][j] = (d_i / g_ij) u_ij`.
fn intertwiner_module(a1: &CpAction, a2: &CpAction) -> Result<FiniteModule> {
    let g = a1.group();
    let d = g.cyclic_orders();
    let n = d.len();
    let t1 = a1.t().matrix();
    let t2 = a2.t().matrix();
    let var = |i: usize, j: usize| i * n + j;
    let step = |i: usize, j: usize| (d[i] / gcd(d[i], d[j])) as i64;
    let mut rows = Vec::new();
    let mut row_mod = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![0i64; n * n];
            for b in 0..n {
                r[var(i, b)] += step(i, b) * t1[b][j] as i64;
            }
            for a in 0..n {
                r[var(a, j)] -= t2[i][a] as i64 * step(a, j);
            }
            let di = d[i] as i64;
            rows.push(r.into_iter().map(|x| x.rem_euclid(di)).collect());
            row_mod.push(d[i]);
        }
    }
    let col_mod: Vec<u64> = (0..n * n).map(|v| gcd(d[v / n], d[v % n])).collect();
    kernel_mod_general(&rows, &row_mod, &col_mod)
}

fn module_to_endo(g: &AbelianGroup, u: &[u64]) -> Endomorphism {
    let d = g.cyclic_orders();
    let n = d.len();
    let m = (0..n)
        .map(|i| (0..n).map(|j| ((d[i] / gcd(d[i], d[j])) * u[i * n + j]) as i64).collect())
        .collect();
    Endomorphism::new(g, m).expect("module coordinates respect orders")
}

fn check_same(a1: &CpAction, a2: &CpAction) -> Result<()> {
    if a1.group() != a2.group() || a1.p() != a2.p() {
        return Err(Error::Precondition("actions on different groups or primes".into()));
    }
    Ok(())
}

/// All automorphisms `λ` with `λ ∘ t1 = t2 ∘ λ`.
pub fn intertwiners(a1: &CpAction, a2: &CpAction, budget: Budget) -> Result<Vec<Endomorphism>> {
    check_same(a1, a2)?;
    let module = intertwiner_module(a1, a2)?;
    if module.order() > budget.max_candidates {
        return Err(Error::Budget { what: "intertwiner enumeration".into(), needed: module.order(), limit: budget.max_candidates });
    }
    let g = a1.group();
    let mut out: Vec<Endomorphism> = module
        .elements()
        .into_iter()
        .map(|(_, u)| module_to_endo(g, &u))
        .filter(|e| e.is_automorphism())
        .collect();
    out.sort();
    Ok(out)
}

/// Some intertwiner, if the actions are equivalent.
pub fn first_intertwiner(a1: &CpAction, a2: &CpAction, budget: Budget) -> Result<Option<Endomorphism>> {
    check_same(a1, a2)?;
    let module = intertwiner_module(a1, a2)?;
    if module.order() > budget.max_candidates {
        return Err(Error::Budget { what: "intertwiner search".into(), needed: module.order(), limit: budget.max_candidates });
    }
    let g = a1.group();
    Ok(module.elements().into_iter().map(|(_, u)| module_to_endo(g, &u)).find(|e| e.is_automorphism()))
}

/// Whether `a2` lies in `[a1]`, i.e. is equivalent to some twist of `a1`; returns the twist exponent.
pub fn same_class(a1: &CpAction, a2: &CpAction, budget: Budget) -> Result<Option<u64>> {
    for k in 1..a1.p() {
        if first_intertwiner(&a1.twist(k)?, a2, budget)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `A(⊳)` as generators and order.
pub fn centralizer_a(act: &CpAction, budget: Budget) -> Result<(Vec<Endomorphism>, u128)> {
    let g = act.group();
    let gens = aut_generators(g);
    let t = act.t();
    if gens.iter().all(|a| a.compose(t) == t.compose(a)) {
        return Ok((gens, aut_order(g)));
    }
    let all = intertwiners(act, act, budget)?;
    let limit = budget.max_candidates.min(usize::MAX as u128) as usize;
    let mut chosen: Vec<Endomorphism> = Vec::new();
    let mut span: HashSet<Endomorphism> = HashSet::from([Endomorphism::identity(g)]);
    for x in &all {
        if !span.contains(x) {
            chosen.push(x.clone());
            span = closure(g, &chosen, limit)?.into_iter().collect();
            if span.len() == all.len() {
                break;
            }
        }
    }
    debug_assert_eq!(span.len(), all.len());
    Ok((chosen, all.len() as u128))
}

/// `C(⊳)` with one intertwiner per nontrivial element; preferred intertwiners are tried first.
pub fn stabilizer(
    act: &CpAction,
    preferred: &dyn Fn(u64) -> Option<Endomorphism>,
    budget: Budget,
) -> Result<(Vec<u64>, Vec<(u64, Endomorphism)>)> {
    let p = act.p();
    let t = act.t();
    let mut ks = vec![1];
    let mut omega = Vec::new();
    for k in 2..p {
        let tk = t.pow(k);
        let lam = match preferred(k) {
            Some(l) if l.is_automorphism() && l.compose(t) == tk.compose(&l) => Some(l),
            _ => first_intertwiner(act, &act.twist(k)?, budget)?,
        };
        if let Some(l) = lam {
            ks.push(k);
            omega.push((k, l));
        }
    }
    Ok((ks, omega))
}

fn class_from(family: Family, act: CpAction, preferred: &dyn Fn(u64) -> Option<Endomorphism>, budget: Budget) -> Result<ActionClass> {
    let (a_generators, a_order) = if act.is_trivial() {
        (aut_generators(act.group()), aut_order(act.group()))
    } else {
        centralizer_a(&act, budget)?
    };
    let (stabilizer, omega) = if act.is_trivial() {
        let id = Endomorphism::identity(act.group());
        ((1..act.p()).collect(), (2..act.p()).map(|k| (k, id.clone())).collect())
    } else {
        stabilizer(&act, preferred, budget)?
    };
    Ok(ActionClass { family, action: act, symmetry: SymmetryGroup { a_generators, a_order, omega, stabilizer } })
}

fn images(g: &AbelianGroup, rows: Vec<Vec<i64>>) -> Result<Endomorphism> {
    Endomorphism::from_images(g, &rows)
}

fn unit_residue(p: u64, k: u64) -> i64 {
    (k % p) as i64
}

/// The trivial class alone.
pub fn trivial_class(g: &AbelianGroup, p: u64) -> Result<ActionClass> {
    class_from(Family::Trivial, CpAction::trivial(g, p)?, &|_| None, Budget::default())
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn non_residue(p: u64) -> u64 {
    (2..p).find(|&z| !is_quadratic_residue(z, p)).expect("odd prime has non-residues")
}

fn is_cyclic(g: &AbelianGroup) -> bool {
    let ps: Vec<u64> = (0..g.rank()).map(|i| g.prime_of(i)).collect();
    let mut q = ps.clone();
    q.dedup();
    q.len() == ps.len()
}

fn cyclic_classes(g: &AbelianGroup, p: u64, budget: Budget) -> Result<Vec<ActionClass>> {
    let d = g.cyclic_orders().to_vec();
    let mut per: Vec<Vec<u64>> = Vec::new();
    for &di in &d {
        per.push((1..di).filter(|&u| gcd(u, di) == 1 && crate::arith::mod_pow(u, p, di) == 1 % di).collect());
    }
    let mut combos: Vec<Vec<u64>> = vec![vec![]];
    for opts in &per {
        combos = combos
            .into_iter()
            .flat_map(|c| opts.iter().map(move |&u| {
                let mut c2 = c.clone();
                c2.push(u);
                c2
            }))
            .collect();
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for u in combos {
        if u.iter().zip(&d).all(|(&x, &di)| x % di == 1 % di) || seen.contains(&u) {
            continue;
        }
        for k in 1..p {
            seen.insert(u.iter().zip(&d).map(|(&x, &di)| crate::arith::mod_pow(x, k, di)).collect());
        }
        let m: Vec<Vec<i64>> = (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { u[i] as i64 } else { 0 }).collect()).collect();
        let act = CpAction::new(g, p, Endomorphism::new(g, m)?)?;
        let id = Endomorphism::identity(g);
        out.push(class_from(Family::Cyclic, act, &|_| Some(id.clone()), budget)?);
    }
    Ok(out)
}

/// Complete list of classes `[⊳]` for the supported families, trivial class first.
pub fn catalog_actions(g: &AbelianGroup, p: u64) -> Result<Vec<ActionClass>> {
    catalog_actions_with(g, p, Budget::default())
}

pub fn catalog_actions_with(g: &AbelianGroup, p: u64, budget: Budget) -> Result<Vec<ActionClass>> {
    check_prime(g, p)?;
    let mut out = vec![class_from(Family::Trivial, CpAction::trivial(g, p)?, &|_| None, budget)?];
    let d = g.cyclic_orders().to_vec();
    let unsupported = || {
        Error::Unsupported(format!(
            "actions of C_{p} on {} are outside the cataloged families (elementary groups of rank <= 3, Z_(p^e)+Z_p, Z_n x Z_n with p = 2, elementary 2-groups, cyclic groups)",
            g.descriptor()
        ))
    };
    if g.order() == 1 {
        return Ok(out);
    }
    if is_cyclic(g) {
        out.extend(cyclic_classes(g, p, budget)?);
        return Ok(out);
    }
    let p_group = g.is_p_group(p);
    if p == 2 && p_group && g.is_elementary() {
        let n = g.rank();
        for m in 1..=n / 2 {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    let target = if i < 2 * m { i ^ 1 } else { i };
                    (0..n).map(|j| i64::from(j == target)).collect()
                })
                .collect();
            let act = CpAction::new(g, p, images(g, rows)?)?;
            out.push(class_from(Family::TwoElementary { swaps: m }, act, &|_| None, budget)?);
        }
        return Ok(out);
    }
    if p == 2 && g.order() % 2 == 1 {
        let qs = g.prime_divisors();
        let square = qs.iter().all(|&q| {
            let ix: Vec<usize> = (0..d.len()).filter(|&i| g.prime_of(i) == q).collect();
            ix.len() == 2 && d[ix[0]] == d[ix[1]]
        });
        if !square {
            return Err(unsupported());
        }
        let blocks_per: Vec<(u64, usize)> = qs.iter().map(|&q| (q, (0..d.len()).find(|&i| g.prime_of(i) == q).unwrap())).collect();
        let total = 3usize.pow(qs.len() as u32);
        for code in 1..total {
            let mut c = code;
            let mut diag = vec![1i64; d.len()];
            let mut blocks = Vec::new();
            for &(_, i0) in &blocks_per {
                let kind = (c % 3) as u8;
                c /= 3;
                match kind {
                    1 => {
                        diag[i0] = -1;
                        diag[i0 + 1] = -1;
                    }
                    2 => diag[i0 + 1] = -1,
                    _ => {}
                }
                blocks.push((d[i0], kind));
            }
            let m: Vec<Vec<i64>> = (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
            let act = CpAction::new(g, p, Endomorphism::new(g, m)?)?;
            out.push(class_from(Family::TwoNSplit { blocks }, act, &|_| None, budget)?);
        }
        return Ok(out);
    }
    if !p_group || p == 2 {
        return Err(unsupported());
    }
    if g.is_elementary() && d.len() == 2 {
        let t = images(g, vec![vec![1, 1], vec![0, 1]])?;
        let act = CpAction::new(g, p, t)?;
        let gg = g.clone();
        let pref = move |k: u64| images(&gg, vec![vec![1, 0], vec![0, unit_residue(p, k)]]).ok();
        out.push(class_from(Family::ElementaryRegular, act, &pref, budget)?);
        return Ok(out);
    }
    if g.is_elementary() && d.len() == 3 {
        let t = images(g, vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]])?;
        let act = CpAction::new(g, p, t)?;
        let gg = g.clone();
        let pref = move |k: u64| images(&gg, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, unit_residue(p, k)]]).ok();
        out.push(class_from(Family::ElementaryDecomposable, act, &pref, budget)?);
        let t = images(g, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]])?;
        let act = CpAction::new(g, p, t)?;
        let gg = g.clone();
        let pref = move |k: u64| {
            let c = binomial(k, 2) % p;
            images(&gg, vec![vec![1, 0, 0], vec![0, k as i64, c as i64], vec![0, 0, (k * k % p) as i64]]).ok()
        };
        out.push(class_from(Family::ElementaryR3, act, &pref, budget)?);
        return Ok(out);
    }
    if d.len() == 2 && d[1] == p && d[0] > p {
        let pe1 = (d[0] / p) as i64;
        let gg = g.clone();
        let t = images(g, vec![vec![1 + pe1, 0], vec![0, 1]])?;
        out.push(class_from(Family::GammaCentral, CpAction::new(g, p, t)?, &|_| None, budget)?);
        let t = images(g, vec![vec![1, 0], vec![pe1, 1]])?;
        let g1 = gg.clone();
        let pref = move |k: u64| images(&g1, vec![vec![1, 0], vec![0, mod_inv(k, p).unwrap() as i64]]).ok();
        out.push(class_from(Family::GammaLowerTriangular, CpAction::new(g, p, t)?, &pref, budget)?);
        let t = images(g, vec![vec![1, 1], vec![0, 1]])?;
        let g1 = gg.clone();
        let pref = move |k: u64| images(&g1, vec![vec![1, 0], vec![0, unit_residue(p, k)]]).ok();
        out.push(class_from(Family::GammaCyclic(0), CpAction::new(g, p, t)?, &pref, budget)?);
        for q in [1, non_residue(p)] {
            let t = images(g, vec![vec![1, q as i64], vec![pe1, 1]])?;
            let g1 = gg.clone();
            let pref = move |k: u64| {
                if k == p - 1 {
                    images(&g1, vec![vec![1, 0], vec![q as i64 * pe1, -1]]).ok()
                } else {
                    None
                }
            };
            out.push(class_from(Family::GammaCyclic(q), CpAction::new(g, p, t)?, &pref, budget)?);
        }
        return Ok(out);
    }
    Err(unsupported())
}

/// Odd part of `n` made of prime powers on which a `Z_n x Z_n` action is not `±1`.
pub fn n_of_action(act: &CpAction) -> u64 {
    let g = act.group();
    let d = g.cyclic_orders();
    let t = act.t();
    let mut out = 1;
    for (q, _) in factor(g.order()) {
        let ix: Vec<usize> = (0..d.len()).filter(|&i| g.prime_of(i) == q).collect();
        let restricted_is = |s: i64| {
            ix.iter().all(|&i| ix.iter().all(|&j| {
                let want = if i == j { s.rem_euclid(d[i] as i64) as u64 } else { 0 };
                t.entry(i, j) == want
            }))
        };
        if !restricted_is(1) && !restricted_is(-1) {
            out *= ix.iter().map(|&i| d[i]).max().unwrap_or(1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::enumerate_automorphisms;

    fn class_oracle(gs: &str, p: u64) {
        let g = AbelianGroup::parse(gs).unwrap();
        let classes = catalog_actions(&g, p).unwrap();
        let auts = enumerate_automorphisms(&g, Budget::default()).unwrap();
        let budget = Budget::default();
        for a in auts.iter().filter(|a| a.pow(p).is_identity()) {
            let act = CpAction::new(&g, p, a.clone()).unwrap();
            let hits: Vec<usize> = (0..classes.len())
                .filter(|&c| same_class(&classes[c].action, &act, budget).unwrap().is_some())
                .collect();
            assert_eq!(hits.len(), 1, "{gs}: action {:?} in classes {hits:?}", a.images());
        }
    }

    #[test]
    fn catalog_is_complete_and_duplicate_free() {
        for (g, p) in [("Z3", 3), ("Z3^2", 3), ("Z2^2", 2), ("Z2^3", 2), ("Z9xZ3", 3), ("Z3^2", 2), ("Z5^2", 2), ("Z9", 3), ("Z4", 2), ("Z8", 2), ("Z15", 2)] {
            class_oracle(g, p);
        }
    }

    #[test]
    fn catalog_is_complete_rank_three() {
        class_oracle("Z3^3", 3);
    }

    #[test]
    fn class_counts() {
        let cases = [("Z5", 5, 1), ("Z5^2", 5, 2), ("Z25xZ5", 5, 6), ("Z9xZ3", 3, 6), ("Z7^3", 7, 3), ("Z15^2", 2, 9)];
        for (g, p, n) in cases {
            let c = catalog_actions(&AbelianGroup::parse(g).unwrap(), p).unwrap();
            assert_eq!(c.len(), n, "{g}");
        }
    }

    #[test]
    fn symmetry_data_matches_closed_forms() {
        for p in [3u64, 5] {
            let g = AbelianGroup::elementary(p, 2);
            let c = &catalog_actions(&g, p).unwrap()[1];
            assert_eq!(c.symmetry.a_order, (p * (p - 1)) as u128);
            assert_eq!(c.symmetry.stabilizer, (1..p).collect::<Vec<_>>());
            let k = 2;
            let lam = &c.symmetry.omega.iter().find(|(j, _)| *j == k).unwrap().1;
            assert_eq!(lam.images(), vec![vec![1, 0], vec![0, k]]);
        }
        let g = AbelianGroup::elementary(3, 3);
        let c = catalog_actions(&g, 3).unwrap();
        assert_eq!(c[1].symmetry.a_order, 3u128.pow(3) * 4);
        let g = AbelianGroup::parse("Z25xZ5").unwrap();
        let c = catalog_actions(&g, 5).unwrap();
        let orders: Vec<u128> = c.iter().map(|x| x.symmetry.a_order).collect();
        assert_eq!(orders[1], aut_order(&g));
        assert_eq!(orders[2], 20 * 5);
        let stabs: Vec<usize> = c.iter().map(|x| x.symmetry.stabilizer.len()).collect();
        assert_eq!(stabs, vec![4, 1, 4, 4, 2, 2]);
        let lt = &c[2].symmetry.omega[0];
        assert_eq!(lt.1.images(), vec![vec![1, 0], vec![0, mod_inv(lt.0, 5).unwrap()]]);
    }

    #[test]
    fn intertwiners_equal_coset() {
        let g = AbelianGroup::parse("Z3^2").unwrap();
        let c = &catalog_actions(&g, 3).unwrap()[1];
        let a_all = intertwiners(&c.action, &c.action, Budget::default()).unwrap();
        let (k, lam) = &c.symmetry.omega[0];
        let tw = intertwiners(&c.action, &c.action.twist(*k).unwrap(), Budget::default()).unwrap();
        let mut coset: Vec<Endomorphism> = a_all.iter().map(|a| lam.compose(a)).collect();
        coset.sort();
        assert_eq!(coset, tw);
        let triv = CpAction::trivial(&g, 3).unwrap();
        assert_eq!(intertwiners(&triv, &triv, Budget::default()).unwrap().len(), 48);
    }

    #[test]
    fn unsupported_is_reported() {
        let g = AbelianGroup::parse("Z3^4").unwrap();
        assert!(matches!(catalog_actions(&g, 3), Err(Error::Unsupported(_))));
        assert!(catalog_actions(&AbelianGroup::parse("Z9xZ3").unwrap(), 5).is_err());
    }

    #[test]
    fn n_of_action_values() {
        let g = AbelianGroup::parse("Z15^2").unwrap();
        let c = catalog_actions(&g, 2).unwrap();
        let mut ns: Vec<u64> = c.iter().map(|x| n_of_action(&x.action)).collect();
        ns.sort();
        assert_eq!(ns, vec![1, 1, 1, 1, 3, 3, 5, 5, 15]);
    }
}
