//! Orbits of the symmetry group on the classifying group, and the resulting isotype counts.

use crate::arith::num_divisors;
use crate::carrier::{build_x, ClassifyingGroup, SymElement};
use crate::catalog::{catalog_actions, n_of_action, trivial_class, ActionClass};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use serde::Serialize;

/// One orbit of `G(⊳)` on `X(⊳)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Lexicographically least element.
    pub representative: Vec<u64>,
    pub size: u64,
    /// Size of the `A(⊳)`-orbit of the representative.
    pub a_orbit_size: u64,
    pub cocommutative: bool,
}

/// Orbit partition of one classifying group.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub x_order: u64,
    pub x_orders: Vec<u64>,
    pub orbits: Vec<Orbit>,
    pub total: usize,
    pub noncocommutative: usize,
    pub cocommutative: usize,
}

fn bfs(x: &ClassifyingGroup, mats: &[&Vec<Vec<u64>>], start: usize, seen: &mut [bool], mark: bool) -> u64 {
    let mut stack = vec![start];
    let mut local: Vec<usize> = vec![start];
    seen[start] = true;
    let mut size = 1u64;
    while let Some(i) = stack.pop() {
        let e = x.element(i);
        for m in mats {
            let j = x.index(&x.apply_matrix(m, &e));
            if !seen[j] {
                seen[j] = true;
                size += 1;
                stack.push(j);
                local.push(j);
            }
        }
    }
    if !mark {
        for i in local {
            seen[i] = false;
        }
    }
    size
}

/// `true` when `a` and `b` lie in one orbit of the symmetry group on `X`.
pub fn same_orbit(x: &ClassifyingGroup, a: &[u64], b: &[u64]) -> bool {
    let all: Vec<&Vec<Vec<u64>>> = x.symmetries.iter().map(|s| &s.images).collect();
    let mut seen = vec![false; x.order() as usize];
    bfs(x, &all, x.index(&x.reduce(a)), &mut seen, true);
    seen[x.index(&x.reduce(b))]
}

/// Orbits of all symmetry generators on `X`.
pub fn orbits(x: &ClassifyingGroup) -> OrbitReport {
    let n = x.order() as usize;
    let all: Vec<&Vec<Vec<u64>>> = x.symmetries.iter().map(|s| &s.images).collect();
    let a_only: Vec<&Vec<Vec<u64>>> = x
        .symmetries
        .iter()
        .filter(|s| matches!(s.element, SymElement::Aut(_)))
        .map(|s| &s.images)
        .collect();
    let mut seen = vec![false; n];
    let mut scratch = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let size = bfs(x, &all, i, &mut seen, true);
        let a_orbit_size = bfs(x, &a_only, i, &mut scratch, false);
        let rep = x.element(i);
        out.push(Orbit { cocommutative: x.is_cocommutative(&rep), representative: rep, size, a_orbit_size });
    }
    let nonco = out.iter().filter(|o| !o.cocommutative).count();
    OrbitReport {
        x_order: n as u64,
        x_orders: x.orders.clone(),
        total: out.len(),
        noncocommutative: nonco,
        cocommutative: out.len() - nonco,
        orbits: out,
    }
}

/// Orbits of `A(⊳)` alone on the cocommutative part.
pub fn cocommutative_count(x: &ClassifyingGroup) -> Result<usize> {
    if !x.group().is_elementary() {
        return Err(Error::Precondition(format!("cocommutative count needs an elementary group, got {}", x.group().descriptor())));
    }
    let n = x.order() as usize;
    let a_only: Vec<&Vec<Vec<u64>>> = x
        .symmetries
        .iter()
        .filter(|s| matches!(s.element, SymElement::Aut(_)))
        .map(|s| &s.images)
        .collect();
    let mut seen = vec![false; n];
    let mut count = 0;
    for i in 0..n {
        if !seen[i] && x.is_cocommutative(&x.element(i)) {
            bfs(x, &a_only, i, &mut seen, true);
            count += 1;
        }
    }
    Ok(count)
}

/// Orbits of `G(triv)` on `X(triv)` for `Z_p^n`.
pub fn commutative_count(n: usize, p: u64) -> Result<usize> {
    let g = AbelianGroup::elementary(p, n);
    let x = build_x(&trivial_class(&g, p)?)?;
    Ok(orbits(&x).total)
}

/// Isotype count for `Z_n x Z_n`, `p = 2`, in one action class.
pub fn dim_2n2_count(n: u64, class: &ActionClass) -> Result<usize> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("n = {n} must be odd")));
    }
    let g = class.action.group();
    let expect = AbelianGroup::new(&[n, n])?;
    if g != &expect || class.action.p() != 2 {
        return Err(Error::Precondition(format!("class is not a C_2-action on Z_{n} x Z_{n}")));
    }
    Ok(orbits(&build_x(class)?).total)
}

/// Number of divisors of `n(⊳)` for a class on `Z_n x Z_n`.
pub fn expected_2n2_count(class: &ActionClass) -> u64 {
    num_divisors(n_of_action(&class.action))
}

/// One action class with its classifying group and orbits.
#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub family: String,
    pub t_images: Vec<Vec<u64>>,
    pub trivial_action: bool,
    pub a_order: u128,
    pub stabilizer: Vec<u64>,
    pub x: crate::carrier::CarrierSummary,
    pub orbits: OrbitReport,
}

impl ClassReport {
    /// Noncocommutative orbits of a nontrivial action: the nontrivial Hopf algebras.
    pub fn nontrivial(&self) -> usize {
        if self.trivial_action {
            0
        } else {
            self.orbits.noncocommutative
        }
    }
}

/// Full classification of `Ext(kC_p, k^G)` for one group.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub group: String,
    pub p: u64,
    pub order: u64,
    pub classes: Vec<ClassReport>,
    pub total: usize,
    pub nontrivial: usize,
    pub commutative: usize,
    pub cocommutative: usize,
}

pub fn report_class(class: &ActionClass) -> Result<ClassReport> {
    let x = build_x(class)?;
    let orbits = orbits(&x);
    Ok(ClassReport {
        family: class.family.tag(),
        t_images: class.action.t().images(),
        trivial_action: class.action.is_trivial(),
        a_order: class.symmetry.a_order,
        stabilizer: class.symmetry.stabilizer.clone(),
        x: x.summary(),
        orbits,
    })
}

/// Classifies all extensions for the cataloged classes of `(G, p)`.
pub fn classify(g: &AbelianGroup, p: u64) -> Result<Classification> {
    let classes = catalog_actions(g, p)?;
    classify_classes(g, p, &classes)
}

pub fn classify_classes(g: &AbelianGroup, p: u64, classes: &[ActionClass]) -> Result<Classification> {
    let reports: Vec<ClassReport> = classes.iter().map(report_class).collect::<Result<_>>()?;
    let total = reports.iter().map(|r| r.orbits.total).sum();
    let nontrivial = reports.iter().map(|r| r.nontrivial()).sum();
    let commutative = reports.iter().filter(|r| r.trivial_action).map(|r| r.orbits.total).sum();
    let cocommutative = reports.iter().map(|r| r.orbits.cocommutative).sum();
    Ok(Classification { group: g.descriptor(), p, order: g.order(), classes: reports, total, nontrivial, commutative, cocommutative })
}

impl Classification {
    pub fn class(&self, family: &str) -> Option<&ClassReport> {
        self.classes.iter().find(|c| c.family == family)
    }

    /// Nontrivial isotypes in classes whose tag starts with `prefix`.
    pub fn nontrivial_in(&self, prefix: &str) -> usize {
        self.classes.iter().filter(|c| c.family.starts_with(prefix)).map(|c| c.nontrivial()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{closure, Budget};
    use crate::carrier::SymAction;
    use crate::catalog::catalog_actions;
    use std::collections::HashSet;

    #[test]
    fn plane_counts() {
        for (p, tot, non) in [(3u64, 10usize, 4usize), (5, 12, 6)] {
            let c = classify(&AbelianGroup::elementary(p, 2), p).unwrap();
            assert_eq!((c.total, c.nontrivial), (tot, non));
            assert_eq!(c.commutative, 4);
        }
    }

    #[test]
    fn trivial_x_has_one_orbit() {
        let g = AbelianGroup::parse("Z3").unwrap();
        let c = classify(&g, 3).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.total, 2);
        let g = AbelianGroup::parse("Z2").unwrap();
        let x = build_x(&catalog_actions(&g, 2).unwrap()[0]).unwrap();
        assert_eq!(orbits(&x).total, 2);
        let g = AbelianGroup::trivial();
        let x = build_x(&trivial_class(&g, 2).unwrap()).unwrap();
        assert_eq!(orbits(&x).total, 1);
    }

    #[test]
    fn orbit_sizes_partition_and_obey_bounds() {
        for (g, p) in [("Z3^2", 3), ("Z9xZ3", 3), ("Z3^3", 3), ("Z2^3", 2), ("Z15^2", 2)] {
            let c = classify(&AbelianGroup::parse(g).unwrap(), p).unwrap();
            for r in &c.classes {
                let s: u64 = r.orbits.orbits.iter().map(|o| o.size).sum();
                assert_eq!(s, r.orbits.x_order);
                for o in &r.orbits.orbits {
                    assert!(o.a_orbit_size <= o.size);
                    assert!(o.size <= r.stabilizer.len() as u64 * o.a_orbit_size);
                }
            }
        }
    }

    fn brute_orbits(x: &ClassifyingGroup, mats: &[&SymAction]) -> usize {
        let n = x.order() as usize;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for i in 0..n {
            for m in mats {
                let j = x.index(&x.apply_matrix(&m.images, &x.element(i)));
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    #[test]
    fn cocommutative_counts_match_exhaustive_aut_orbits() {
        let g = AbelianGroup::parse("Z3^2").unwrap();
        let x = build_x(&catalog_actions(&g, 3).unwrap()[0]).unwrap();
        let auts = closure(&g, &crate::aut::aut_generators(&g), 100).unwrap();
        assert_eq!(auts.len(), 48);
        let mut orbs: HashSet<Vec<Vec<u64>>> = HashSet::new();
        for chi in g.elements() {
            let mut o: Vec<Vec<u64>> = auts.iter().map(|a| a.dual().apply(&chi)).collect();
            o.sort();
            o.dedup();
            orbs.insert(o);
        }
        assert_eq!(cocommutative_count(&x).unwrap(), orbs.len());
        assert_eq!(orbs.len(), 2);
        let g = AbelianGroup::parse("Z2^2").unwrap();
        let x = build_x(&catalog_actions(&g, 2).unwrap()[1]).unwrap();
        assert_eq!(cocommutative_count(&x).unwrap(), 1);
        let g = AbelianGroup::parse("Z5").unwrap();
        let x = build_x(&catalog_actions(&g, 5).unwrap()[0]).unwrap();
        assert_eq!(cocommutative_count(&x).unwrap(), 2);
        assert!(cocommutative_count(&build_x(&catalog_actions(&AbelianGroup::parse("Z9").unwrap(), 3).unwrap()[0]).unwrap()).is_err());
    }

    #[test]
    fn bfs_agrees_with_union_find() {
        for (g, p) in [("Z3^2", 3), ("Z9xZ3", 3), ("Z2^4", 2)] {
            for cl in catalog_actions(&AbelianGroup::parse(g).unwrap(), p).unwrap() {
                let x = build_x(&cl).unwrap();
                let all: Vec<&SymAction> = x.symmetries.iter().collect();
                assert_eq!(orbits(&x).total, brute_orbits(&x, &all));
            }
        }
    }

    #[test]
    fn counts_do_not_depend_on_the_intertwiner_choice() {
        let g = AbelianGroup::elementary(3, 2);
        let mut cl = catalog_actions(&g, 3).unwrap().remove(1);
        let base = orbits(&build_x(&cl).unwrap()).total;
        let all_a = crate::catalog::intertwiners(&cl.action, &cl.action, Budget::default()).unwrap();
        for phi in all_a.iter().take(6) {
            let mut c2 = cl.clone();
            for (_, lam) in c2.symmetry.omega.iter_mut() {
                *lam = lam.compose(phi);
            }
            assert_eq!(orbits(&build_x(&c2).unwrap()).total, base);
        }
        cl.symmetry.omega.clear();
        assert_eq!(orbits(&build_x(&cl).unwrap()).total, base);
    }

    #[test]
    fn commutative_small() {
        assert_eq!(commutative_count(1, 3).unwrap(), 2);
        assert_eq!(commutative_count(2, 3).unwrap(), 4);
    }

    #[test]
    fn two_n_squared() {
        for n in [3u64, 5] {
            for cl in catalog_actions(&AbelianGroup::new(&[n, n]).unwrap(), 2).unwrap() {
                assert_eq!(dim_2n2_count(n, &cl).unwrap() as u64, expected_2n2_count(&cl));
            }
        }
    }
}
