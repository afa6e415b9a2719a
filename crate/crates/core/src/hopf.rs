//! Structure constants of `H(τ, ⊳) = k^G # kC_p`, verification of the Hopf axioms, presentations and exports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::action::CpAction;
use crate::carrier::{ClassifyingGroup, CarrierKind};
use crate::catalog::{ActionClass, Family};
use crate::cochain::GroupTables;
use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::oracle::{theta_expand, CocycleTable};

/// Largest dimension for which tensor-cube comparisons use a dense scratch table.
const DENSE_LIMIT: usize = 2048;

/// Exact structure constants; basis element `i * |G| + a` stands for `p_a t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfStructure {
    pub group: AbelianGroup,
    pub p: u64,
    /// Matrix of `t` acting on `G` (columns are images of the generators).
    pub t_matrix: Vec<Vec<u64>>,
    /// Scalars are powers of `ζ_m`.
    pub modulus: u64,
    pub n: usize,
    pub dim: usize,
    /// Product of two basis elements: another basis element or zero.
    pub mult: Vec<Option<u32>>,
    /// `Δ(b) = Σ ζ^e l ⊗ r`, stored as `(e, l, r)`.
    pub comult: Vec<Vec<(u64, u32, u32)>>,
    /// `S(b) = ζ^e r`, stored as `(e, r)`.
    pub antipode: Vec<(u64, u32)>,
    pub counit: Vec<bool>,
}

/// First violated axiom with the basis elements exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: Vec<String>,
}

/// Result of [`HopfStructure::verify_axioms`].
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub dimension: usize,
    pub checks: Vec<(String, u64)>,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Sort-and-compare of formal sums of roots of unity; falls back to exact cyclotomic arithmetic on disagreement.
fn first_mismatch(mut lhs: Vec<(u64, u64)>, mut rhs: Vec<(u64, u64)>, m: u64) -> Option<u64> {
    for v in [&mut lhs, &mut rhs] {
        for t in v.iter_mut() {
            t.1 %= m;
        }
        v.sort_unstable();
    }
    if lhs == rhs {
        return None;
    }
    let collect = |v: &[(u64, u64)]| {
        let mut map: BTreeMap<u64, CycloSum> = BTreeMap::new();
        for &(k, e) in v {
            map.entry(k).or_insert_with(|| CycloSum::new(m)).add_root(e, 1);
        }
        map
    };
    let (a, b) = (collect(&lhs), collect(&rhs));
    let zero = CycloSum::new(m);
    for k in a.keys().chain(b.keys()) {
        if !a.get(k).unwrap_or(&zero).equals(b.get(k).unwrap_or(&zero)) {
            return Some(*k);
        }
    }
    None
}

impl HopfStructure {
    /// `H(τ, ⊳)` for the Hopf cocycle generated by `τ(t)`.
    pub fn from_cocycle(act: &CpAction, tau_t: &CocycleTable) -> Result<Self> {
        let comps = theta_expand(tau_t, act)?;
        let g = act.group();
        let tables = GroupTables::new(g);
        let n = tables.n;
        let p = act.p() as usize;
        let m = tau_t.modulus;
        let dim = n * p;
        let mut powers = vec![(0..n).collect::<Vec<usize>>()];
        let perm_t = tables.permutation(act.t());
        for i in 1..p {
            powers.push(powers[i - 1].iter().map(|&x| perm_t[x]).collect());
        }
        let mut mult = vec![None; dim * dim];
        for i in 0..p {
            for a in 0..n {
                for j in 0..p {
                    let b = powers[i][a];
                    mult[(i * n + a) * dim + j * n + b] = Some((((i + j) % p) * n + a) as u32);
                }
            }
        }
        let mut comult = Vec::with_capacity(dim);
        let mut antipode = Vec::with_capacity(dim);
        for i in 0..p {
            for c in 0..n {
                let terms = (0..n)
                    .map(|a| {
                        let b = tables.sum(c, tables.neg[a] as usize);
                        (comps[i].get(a, b), (i * n + a) as u32, (i * n + b) as u32)
                    })
                    .collect();
                comult.push(terms);
                let na = tables.neg[c] as usize;
                let e = (m - comps[i].get(na, c)) % m;
                antipode.push((e, ((((p - i) % p) * n) + powers[i][na]) as u32));
            }
        }
        let counit = (0..dim).map(|b| b % n == 0).collect();
        Ok(HopfStructure {
            group: g.clone(),
            p: act.p(),
            t_matrix: act.t().matrix().to_vec(),
            modulus: m,
            n,
            dim,
            mult,
            comult,
            antipode,
            counit,
        })
    }

    /// `H(τ, ⊳)` with `τ(t)` the representative cocycle of `x ∈ X(⊳)`.
    pub fn build(x: &ClassifyingGroup, coords: &[u64]) -> Result<Self> {
        if coords.len() != x.dim() {
            return Err(Error::Shape { expected: x.dim(), found: coords.len() });
        }
        let s = x.representative(&x.reduce(coords));
        Self::from_cocycle(&x.action, &CocycleTable::new(x.tables.n, x.modulus, s)?)
    }

    /// Like [`HopfStructure::build`] with the representative shifted by `δ(f - f∘t)`, which keeps the class.
    pub fn build_perturbed(x: &ClassifyingGroup, coords: &[u64], f: &[u64]) -> Result<Self> {
        let n = x.tables.n;
        if f.len() != n {
            return Err(Error::Shape { expected: n, found: f.len() });
        }
        let m = x.modulus;
        let perm_t = x.tables.permutation(x.action.t());
        let g: Vec<u64> = (0..n).map(|a| (f[a] % m + m - f[perm_t[a]] % m) % m).collect();
        let base = x.representative(&x.reduce(coords));
        let s = crate::cochain::add_tables(&base, &x.tables.delta1(&g, m), m);
        if !x.in_z2n(&s) || x.decompose(&s)? != x.decompose(&base)? {
            return Err(Error::Precondition("perturbation changed the class".into()));
        }
        Self::from_cocycle(&x.action, &CocycleTable::new(n, m, s)?)
    }

    pub fn action(&self) -> Result<CpAction> {
        let images: Vec<Vec<i64>> = (0..self.group.rank()).map(|j| self.t_matrix.iter().map(|r| r[j] as i64).collect()).collect();
        CpAction::from_images(&self.group, self.p, &images)
    }

    #[inline]
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<usize> {
        self.mult[x * self.dim + y].map(|r| r as usize)
    }

    pub fn label(&self, b: usize) -> String {
        let a = self.group.element(b % self.n);
        let coords: Vec<String> = a.iter().map(|v| v.to_string()).collect();
        format!("p_({}) t^{}", coords.join(","), b / self.n)
    }

    /// Component `τ(t^i)` read back from the comultiplication table.
    pub fn tau_component(&self, i: usize) -> CocycleTable {
        let n = self.n;
        let mut values = vec![0u64; n * n];
        for c in 0..n {
            for &(e, l, r) in &self.comult[i * n + c] {
                values[(l as usize - i * n) * n + (r as usize - i * n)] = e;
            }
        }
        CocycleTable { n, modulus: self.modulus, values }
    }

    fn pair_key(&self, a: usize, b: usize) -> u64 {
        (a * self.dim + b) as u64
    }

    fn fail(&self, axiom: &str, basis: &[usize]) -> AxiomFailure {
        AxiomFailure { axiom: axiom.into(), witness: basis.iter().map(|&b| self.label(b)).collect() }
    }

    /// Checks algebra, coalgebra, bialgebra and antipode axioms exactly.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut checks = Vec::new();
        let failure = self.run_checks(&mut checks).err();
        AxiomReport { dimension: self.dim, checks, failure }
    }

    fn run_checks(&self, checks: &mut Vec<(String, u64)>) -> std::result::Result<(), AxiomFailure> {
        let dim = self.dim;
        let n = self.n;
        let m = self.modulus;
        if self.mult.len() != dim * dim || self.comult.len() != dim || self.antipode.len() != dim || self.counit.len() != dim {
            return Err(AxiomFailure { axiom: "table shapes".into(), witness: vec![] });
        }

        let partners: Vec<Vec<usize>> = (0..dim).map(|b| (0..dim).filter(|&c| self.mul_basis(b, c).is_some()).collect()).collect();
        let mut left_partners: Vec<Vec<usize>> = vec![Vec::new(); dim];
        for (b, list) in partners.iter().enumerate() {
            for &c in list {
                left_partners[c].push(b);
            }
        }
        let mut nonzero_left = 0u64;
        for x in 0..dim {
            for &y in &partners[x] {
                let xy = self.mul_basis(x, y).expect("partner");
                for &z in &partners[xy] {
                    let l = self.mul_basis(xy, z);
                    let r = self.mul_basis(y, z).and_then(|q| self.mul_basis(x, q));
                    if l != r {
                        return Err(self.fail("associativity", &[x, y, z]));
                    }
                    nonzero_left += 1;
                }
            }
        }
        let nonzero_right: u64 = (0..dim).flat_map(|y| partners[y].iter().map(move |&z| (y, z))).map(|(y, z)| left_partners[self.mul_basis(y, z).expect("partner")].len() as u64).sum();
        if nonzero_left != nonzero_right {
            for y in 0..dim {
                for &z in &partners[y] {
                    let yz = self.mul_basis(y, z).expect("partner");
                    for &x in &left_partners[yz] {
                        if self.mul_basis(x, y).and_then(|r| self.mul_basis(r, z)).is_none() {
                            return Err(self.fail("associativity", &[x, y, z]));
                        }
                    }
                }
            }
        }
        checks.push(("associativity".into(), (dim * dim * dim) as u64));

        let unit: Vec<usize> = (0..n).collect();
        for x in 0..dim {
            let left: Vec<usize> = unit.iter().filter_map(|&u| self.mul_basis(u, x)).collect();
            let right: Vec<usize> = unit.iter().filter_map(|&u| self.mul_basis(x, u)).collect();
            if left != [x] || right != [x] {
                return Err(self.fail("unit", &[x]));
            }
        }
        checks.push(("unit".into(), dim as u64));

        let mut occurrences: Vec<Vec<(u32, u32, u64)>> = vec![Vec::new(); dim];
        for (y, terms) in self.comult.iter().enumerate() {
            for &(e, l, r) in terms {
                occurrences[l as usize].push((y as u32, r, e));
            }
        }
        let mut buckets: Vec<Vec<(u32, u32, u64)>> = vec![Vec::new(); dim];
        let mut slot: Vec<(u32, u64)> = vec![(0, 0); dim];
        let mut stamp: Vec<u64> = vec![u64::MAX; dim];
        let mut pairs = 0u64;
        for x in 0..dim {
            for b in buckets.iter_mut() {
                b.clear();
            }
            for &(e1, b1, b2) in &self.comult[x] {
                for &c1 in &partners[b1 as usize] {
                    let r1 = self.mul_basis(b1 as usize, c1).expect("partner") as u32;
                    for &(y, c2, e2) in &occurrences[c1] {
                        if let Some(r2) = self.mul_basis(b2 as usize, c2 as usize) {
                            buckets[y as usize].push((r1, r2 as u32, (e1 + e2) % m));
                        }
                    }
                }
            }
            for y in 0..dim {
                let xy = self.mul_basis(x, y);
                let lhs: &[(u64, u32, u32)] = xy.map_or(&[], |r| &self.comult[r]);
                let rhs = &buckets[y];
                let key = (x * dim + y) as u64;
                let mut fast = lhs.len() == rhs.len();
                for &(e, l, r) in lhs {
                    if !fast {
                        break;
                    }
                    if stamp[l as usize] == key {
                        fast = false;
                    }
                    stamp[l as usize] = key;
                    slot[l as usize] = (r, e % m);
                }
                if fast {
                    for &(r1, r2, e) in rhs {
                        if stamp[r1 as usize] != key || slot[r1 as usize] != (r2, e) {
                            fast = false;
                            break;
                        }
                        stamp[r1 as usize] = u64::MAX;
                    }
                }
                for &(_, l, _) in lhs {
                    stamp[l as usize] = u64::MAX;
                }
                if !fast {
                    let l: Vec<(u64, u64)> = lhs.iter().map(|&(e, l, r)| (self.pair_key(l as usize, r as usize), e)).collect();
                    let r: Vec<(u64, u64)> = rhs.iter().map(|&(r1, r2, e)| (self.pair_key(r1 as usize, r2 as usize), e)).collect();
                    if first_mismatch(l, r, m).is_some() {
                        return Err(self.fail("comultiplicativity", &[x, y]));
                    }
                }
                let eps = |b: Option<usize>| b.is_some_and(|r| self.counit[r]);
                if eps(xy) != (self.counit[x] && self.counit[y]) {
                    return Err(self.fail("counit multiplicativity", &[x, y]));
                }
                pairs += 1;
            }
        }
        let lhs: Vec<(u64, u64)> = unit.iter().flat_map(|&u| self.comult[u].iter().map(|&(e, l, r)| (self.pair_key(l as usize, r as usize), e))).collect();
        let rhs: Vec<(u64, u64)> = unit.iter().flat_map(|&a| unit.iter().map(move |&b| ((a * dim + b) as u64, 0))).collect();
        if first_mismatch(lhs, rhs, m).is_some() {
            return Err(self.fail("comultiplicativity of the unit", &[0]));
        }
        checks.push(("comultiplicativity".into(), pairs));

        let dense = dim <= DENSE_LIMIT;
        let mut slot3: Vec<(u32, u64)> = if dense { vec![(0, 0); dim * dim] } else { Vec::new() };
        let mut stamp3: Vec<u32> = if dense { vec![0; dim * dim] } else { Vec::new() };
        for x in 0..dim {
            let mark = x as u32 + 1;
            let mut fast = dense;
            let mut count = 0usize;
            if fast {
                'lhs: for &(e, l, r) in &self.comult[x] {
                    for &(f, l2, r2) in &self.comult[l as usize] {
                        let i = l2 as usize * dim + r2 as usize;
                        if stamp3[i] == mark {
                            fast = false;
                            break 'lhs;
                        }
                        stamp3[i] = mark;
                        slot3[i] = (r, (e + f) % m);
                        count += 1;
                    }
                }
            }
            if fast {
                'rhs: for &(e, l, r) in &self.comult[x] {
                    for &(f, l2, r2) in &self.comult[r as usize] {
                        let i = l as usize * dim + l2 as usize;
                        if stamp3[i] != mark || slot3[i] != (r2, (e + f) % m) || count == 0 {
                            fast = false;
                            break 'rhs;
                        }
                        stamp3[i] = 0;
                        count -= 1;
                    }
                }
                fast &= count == 0;
            }
            if !fast {
                let key = |a: usize, b: usize, c: usize| ((a * dim + b) * dim + c) as u64;
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for &(e, l, r) in &self.comult[x] {
                    for &(f, l2, r2) in &self.comult[l as usize] {
                        lhs.push((key(l2 as usize, r2 as usize, r as usize), e + f));
                    }
                    for &(f, l2, r2) in &self.comult[r as usize] {
                        rhs.push((key(l as usize, l2 as usize, r2 as usize), e + f));
                    }
                }
                if first_mismatch(lhs, rhs, m).is_some() {
                    return Err(self.fail("coassociativity", &[x]));
                }
            }
        }
        checks.push(("coassociativity".into(), dim as u64));

        for x in 0..dim {
            let left: Vec<(u64, u64)> = self.comult[x].iter().filter(|t| self.counit[t.1 as usize]).map(|&(e, _, r)| (r as u64, e)).collect();
            let right: Vec<(u64, u64)> = self.comult[x].iter().filter(|t| self.counit[t.2 as usize]).map(|&(e, l, _)| (l as u64, e)).collect();
            if first_mismatch(left, vec![(x as u64, 0)], m).is_some() || first_mismatch(right, vec![(x as u64, 0)], m).is_some() {
                return Err(self.fail("counit", &[x]));
            }
        }
        checks.push(("counit".into(), dim as u64));

        for x in 0..dim {
            let expect: Vec<(u64, u64)> = if self.counit[x] { unit.iter().map(|&u| (u as u64, 0)).collect() } else { vec![] };
            let mut left = Vec::new();
            let mut right = Vec::new();
            for &(e, l, r) in &self.comult[x] {
                let (es, sl) = self.antipode[l as usize];
                if let Some(v) = self.mul_basis(sl as usize, r as usize) {
                    left.push((v as u64, e + es));
                }
                let (es, sr) = self.antipode[r as usize];
                if let Some(v) = self.mul_basis(l as usize, sr as usize) {
                    right.push((v as u64, e + es));
                }
            }
            if first_mismatch(left, expect.clone(), m).is_some() || first_mismatch(right, expect, m).is_some() {
                return Err(self.fail("antipode", &[x]));
            }
        }
        checks.push(("antipode".into(), dim as u64));
        Ok(())
    }

    /// Multiplies the coefficient of one comultiplication term by `ζ^shift`.
    pub fn corrupt_comult(&mut self, basis: usize, term: usize, shift: u64) {
        let t = &mut self.comult[basis][term];
        t.0 = (t.0 + shift) % self.modulus;
    }

    /// `S²` is the identity on every basis element.
    pub fn antipode_is_involutive(&self) -> bool {
        (0..self.dim).all(|b| {
            let (e1, r1) = self.antipode[b];
            let (e2, r2) = self.antipode[r1 as usize];
            r2 as usize == b && (e1 + e2) % self.modulus == 0
        })
    }

    /// Number of grouplike elements, per power of `t` carrying them.
    pub fn grouplike_census(&self) -> Vec<(u64, u64)> {
        let big = self.modulus * self.group.exponent();
        let tables = GroupTables::new(&self.group);
        let scale = big / self.modulus;
        (0..self.p as usize)
            .filter_map(|i| {
                let tau = self.tau_component(i);
                let lifted: Vec<u64> = tau.values.iter().map(|v| v * scale).collect();
                tables.solve_coboundary(&lifted, big).map(|_| (i as u64, self.n as u64))
            })
            .collect()
    }

    pub fn grouplike_count(&self) -> u64 {
        self.grouplike_census().iter().map(|c| c.1).sum()
    }
}

/// A linear combination of basis elements with coefficients in `Z[ζ_m]`.
#[derive(Debug, Clone)]
pub struct Element {
    pub terms: BTreeMap<usize, CycloSum>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, b: usize, c: &CycloSum) {
        let e = self.terms.entry(b).or_insert_with(|| CycloSum::new(c.modulus));
        e.add(c);
        if e.terms.is_empty() {
            self.terms.remove(&b);
        }
    }

    pub fn equals(&self, other: &Element) -> bool {
        let keys: std::collections::BTreeSet<&usize> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| match (self.terms.get(k), other.terms.get(k)) {
            (Some(a), Some(b)) => a.equals(b),
            (Some(a), None) | (None, Some(a)) => a.is_zero(),
            (None, None) => true,
        })
    }
}

impl HopfStructure {
    pub fn one(&self) -> Element {
        self.from_fn(0, |_| Some(0))
    }

    /// `Σ_a ζ^{f(a)} p_a t^i`, skipping `a` with `f(a) = None`.
    pub fn from_fn(&self, i: usize, f: impl Fn(usize) -> Option<u64>) -> Element {
        let mut e = Element::zero();
        for a in 0..self.n {
            if let Some(v) = f(a) {
                e.add_term(i * self.n + a, &CycloSum::from_root(self.modulus, v));
            }
        }
        e
    }

    /// The character `χ` as the element `Σ_a χ(a) p_a`.
    pub fn character(&self, chi: &[u64]) -> Element {
        let els = self.group.elements();
        let m = self.modulus;
        self.from_fn(0, |a| Some(self.group.pair(chi, &els[a], m).expect("modulus is a multiple of the exponent")))
    }

    /// `t = Σ_a p_a t`.
    pub fn t(&self) -> Element {
        self.from_fn(1 % self.p as usize, |_| Some(0))
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (&bx, cx) in &x.terms {
            for (&by, cy) in &y.terms {
                if let Some(r) = self.mul_basis(bx, by) {
                    out.add_term(r, &cx.mul(cy));
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &Element, k: u64) -> Element {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn antipode_of(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (&b, c) in &x.terms {
            let (e, r) = self.antipode[b];
            out.add_term(r as usize, &c.scale_root(e));
        }
        out
    }

    pub fn counit_of(&self, x: &Element) -> CycloSum {
        let mut s = CycloSum::new(self.modulus);
        for (&b, c) in &x.terms {
            if self.counit[b] {
                s.add(c);
            }
        }
        s
    }

    /// `Δ(x)` as a map on basis pairs.
    pub fn coproduct_of(&self, x: &Element) -> BTreeMap<(usize, usize), CycloSum> {
        let mut out: BTreeMap<(usize, usize), CycloSum> = BTreeMap::new();
        for (&b, c) in &x.terms {
            for &(e, l, r) in &self.comult[b] {
                out.entry((l as usize, r as usize)).or_insert_with(|| CycloSum::new(self.modulus)).add(&c.scale_root(e));
            }
        }
        out
    }

    pub fn is_grouplike(&self, x: &Element) -> bool {
        let d = self.coproduct_of(x);
        let mut sq: BTreeMap<(usize, usize), CycloSum> = BTreeMap::new();
        for (&a, ca) in &x.terms {
            for (&b, cb) in &x.terms {
                sq.insert((a, b), ca.mul(cb));
            }
        }
        let zero = CycloSum::new(self.modulus);
        d.keys().chain(sq.keys()).all(|k| d.get(k).unwrap_or(&zero).equals(sq.get(k).unwrap_or(&zero)))
    }

    /// Character whose element equals `x`, if any.
    fn as_character(&self, x: &Element) -> Option<Vec<u64>> {
        let g = &self.group;
        let m = self.modulus;
        let mut chi = vec![0u64; g.rank()];
        for (j, &d) in g.cyclic_orders().iter().enumerate() {
            let b = g.index(&g.generator(j));
            let c = x.terms.get(&b)?;
            let (&e, &k) = c.terms.iter().next()?;
            if c.terms.len() != 1 || k != 1 || e % (m / d) != 0 {
                return None;
            }
            chi[j] = e / (m / d);
        }
        self.character(&chi).equals(x).then_some(chi)
    }
}

/// Generators-and-relations description of a built algebra.
#[derive(Debug, Clone, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub coproduct: Vec<String>,
    /// `(a, b, e)` with `τ(t, a, b) = ζ_m^e`.
    pub delta_t: Vec<(Vec<u64>, Vec<u64>, u64)>,
    pub antipode: Vec<String>,
    pub counit: Vec<String>,
    pub modulus: u64,
}

fn render_character(chi: &[u64]) -> String {
    let parts: Vec<String> = chi
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| if c == 1 { format!("x{}*", k + 1) } else { format!("x{}*^{c}", k + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl HopfStructure {
    /// Relations among the character generators and `t`, each verified in the algebra before it is listed.
    pub fn presentation(&self) -> Result<Presentation> {
        let g = &self.group;
        let r = g.rank();
        let p = self.p;
        let m = self.modulus;
        let unit_chars: Vec<Vec<u64>> = (0..r).map(|k| (0..r).map(|j| u64::from(j == k)).collect()).collect();
        let gens: Vec<Element> = unit_chars.iter().map(|c| self.character(c)).collect();
        let t = self.t();
        let t_inv = self.pow(&t, p - 1);
        let one = self.one();
        let mut generators: Vec<String> = (0..r).map(|k| format!("x{}*", k + 1)).collect();
        generators.push("t".into());
        let mut relations = Vec::new();
        for (k, x) in gens.iter().enumerate() {
            let d = g.cyclic_orders()[k];
            if !self.pow(x, d).equals(&one) {
                return Err(Error::Precondition(format!("x{}* does not have order {d}", k + 1)));
            }
            relations.push(format!("x{}*^{d} = 1", k + 1));
        }
        if !self.pow(&t, p).equals(&one) {
            return Err(Error::Precondition(format!("t^{p} is not the unit")));
        }
        relations.push(format!("t^{p} = 1"));
        for (k, x) in gens.iter().enumerate() {
            let conj = self.mul(&self.mul(&t, x), &t_inv);
            let chi = self.as_character(&conj).ok_or_else(|| Error::Precondition("conjugate of a character is not a character".into()))?;
            relations.push(format!("t x{}* t^-1 = {}", k + 1, render_character(&chi)));
        }

        let mut coproduct = Vec::new();
        for (k, x) in gens.iter().enumerate() {
            if !self.is_grouplike(x) {
                return Err(Error::Precondition(format!("x{}* is not grouplike", k + 1)));
            }
            coproduct.push(format!("Δ(x{0}*) = x{0}* ⊗ x{0}*", k + 1));
        }
        let tau = self.tau_component(1 % p as usize);
        let els = g.elements();
        let delta_t: Vec<(Vec<u64>, Vec<u64>, u64)> =
            (0..self.n).flat_map(|a| (0..self.n).map(move |b| (a, b))).map(|(a, b)| (els[a].clone(), els[b].clone(), tau.get(a, b))).collect();
        if tau.is_zero() {
            coproduct.push("Δ(t) = t ⊗ t".into());
        } else {
            coproduct.push(format!("Δ(t) = (Σ_{{a,b}} ζ_{m}^{{τ(t,a,b)}} p_a ⊗ p_b) t ⊗ t"));
        }

        let mut antipode = Vec::new();
        for (k, x) in gens.iter().enumerate() {
            let s = self.antipode_of(x);
            let chi = self.as_character(&s).ok_or_else(|| Error::Precondition("antipode of a character is not a character".into()))?;
            antipode.push(format!("S(x{}*) = {}", k + 1, render_character(&chi)));
        }
        let st = self.antipode_of(&t);
        if st.equals(&t_inv) {
            antipode.push(if p == 2 { "S(t) = t".into() } else { "S(t) = t^-1".into() });
        } else {
            let lead = self.mul(&st, &t);
            let exps: Vec<String> = (0..self.n)
                .map(|a| lead.terms.get(&a).and_then(|c| c.terms.keys().next().copied()).map_or("-".into(), |e| e.to_string()))
                .collect();
            antipode.push(format!("S(t) = (Σ_a ζ_{m}^{{u(a)}} p_a) t^-1 with u = [{}]", exps.join(",")));
        }
        let mut counit = Vec::new();
        for (k, x) in gens.iter().enumerate() {
            if !self.counit_of(x).equals(&CycloSum::from_root(m, 0)) {
                return Err(Error::Precondition("counit of a character is not 1".into()));
            }
            counit.push(format!("ε(x{}*) = 1", k + 1));
        }
        if !self.counit_of(&t).equals(&CycloSum::from_root(m, 0)) {
            return Err(Error::Precondition("counit of t is not 1".into()));
        }
        counit.push("ε(t) = 1".into());
        Ok(Presentation { generators, relations, coproduct, delta_t, antipode, counit, modulus: m })
    }
}

impl Presentation {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "generators: {}", self.generators.join(", "));
        let _ = writeln!(s, "relations:");
        for r in &self.relations {
            let _ = writeln!(s, "  {r}");
        }
        let _ = writeln!(s, "coproduct:");
        for r in &self.coproduct {
            let _ = writeln!(s, "  {r}");
        }
        if self.delta_t.iter().any(|t| t.2 != 0) {
            let _ = writeln!(s, "  τ(t,a,b) exponents of ζ_{}:", self.modulus);
            for (a, b, e) in &self.delta_t {
                let _ = writeln!(s, "    {a:?} {b:?} {e}");
            }
        }
        let _ = writeln!(s, "antipode:");
        for r in &self.antipode {
            let _ = writeln!(s, "  {r}");
        }
        let _ = writeln!(s, "counit:");
        for r in &self.counit {
            let _ = writeln!(s, "  {r}");
        }
        s
    }
}

/// Version tag of the structure-constants format.
pub const FORMAT_HEADER: &str = "almost-abelian-hopf v1";

impl HopfStructure {
    /// Text serialization of the complete tables.
    pub fn to_structure_file(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{FORMAT_HEADER}");
        let _ = writeln!(s, "dimension {}", self.dim);
        let _ = writeln!(s, "modulus {}", self.modulus);
        let _ = writeln!(s, "group {}", self.group.descriptor());
        let _ = writeln!(s, "prime {}", self.p);
        let rows: Vec<String> = self.t_matrix.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
        let _ = writeln!(s, "action {}", rows.join(";"));
        let _ = writeln!(s, "[twist]");
        let tau = self.tau_component(1 % self.p as usize);
        for a in 0..self.n {
            for b in 0..self.n {
                let e = tau.get(a, b);
                if e != 0 {
                    let _ = writeln!(s, "{a} {b} {e}");
                }
            }
        }
        let _ = writeln!(s, "[mult]");
        for x in 0..self.dim {
            for y in 0..self.dim {
                if let Some(r) = self.mul_basis(x, y) {
                    let _ = writeln!(s, "{x} {y} {r} 0");
                }
            }
        }
        let _ = writeln!(s, "[comult]");
        for (x, terms) in self.comult.iter().enumerate() {
            for &(e, l, r) in terms {
                let _ = writeln!(s, "{x} {l} {r} {e}");
            }
        }
        let _ = writeln!(s, "[antipode]");
        for (x, &(e, r)) in self.antipode.iter().enumerate() {
            let _ = writeln!(s, "{x} {r} {e}");
        }
        let _ = writeln!(s, "[counit]");
        for (x, &c) in self.counit.iter().enumerate() {
            if c {
                let _ = writeln!(s, "{x} 1");
            }
        }
        let _ = writeln!(s, "[end]");
        s
    }

    /// Parses the output of [`HopfStructure::to_structure_file`].
    pub fn parse_structure_file(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Format(msg.to_string());
        let mut lines = text.lines();
        if lines.next() != Some(FORMAT_HEADER) {
            return Err(bad("missing version header"));
        }
        let mut field = |name: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad("truncated header"))?;
            line.strip_prefix(name).map(|v| v.trim().to_string()).ok_or_else(|| bad(&format!("expected `{name}`")))
        };
        let num = |v: String| v.parse::<u64>().map_err(|_| Error::Format(format!("bad number `{v}`")));
        let dim = num(field("dimension")?)? as usize;
        let modulus = num(field("modulus")?)?;
        let group = AbelianGroup::parse(&field("group")?)?;
        let p = num(field("prime")?)?;
        let action = field("action")?;
        let t_matrix: Vec<Vec<u64>> = if action.is_empty() {
            vec![]
        } else {
            action
                .split(';')
                .map(|r| r.split_whitespace().map(|v| num(v.to_string())).collect::<Result<Vec<u64>>>())
                .collect::<Result<_>>()?
        };
        let n = group.order() as usize;
        if dim != n * p as usize {
            return Err(bad("dimension is not |G| p"));
        }
        let mut mult = vec![None; dim * dim];
        let mut comult = vec![Vec::new(); dim];
        let mut antipode = vec![(0u64, u32::MAX); dim];
        let mut counit = vec![false; dim];
        let mut section = String::new();
        let mut ended = false;
        for line in text.lines().skip(6) {
            if line.starts_with('[') {
                section = line.to_string();
                if line == "[end]" {
                    ended = true;
                    break;
                }
                continue;
            }
            let v: Vec<u64> = line.split_whitespace().map(|x| num(x.to_string())).collect::<Result<_>>()?;
            let idx = |k: usize| -> Result<usize> {
                let x = *v.get(k).ok_or_else(|| bad("short line"))? as usize;
                if x >= dim {
                    return Err(bad("basis index out of range"));
                }
                Ok(x)
            };
            match section.as_str() {
                "[twist]" => {}
                "[mult]" => mult[idx(0)? * dim + idx(1)?] = Some(idx(2)? as u32),
                "[comult]" => comult[idx(0)?].push((*v.get(3).ok_or_else(|| bad("short line"))?, idx(1)? as u32, idx(2)? as u32)),
                "[antipode]" => antipode[idx(0)?] = (*v.get(2).ok_or_else(|| bad("short line"))?, idx(1)? as u32),
                "[counit]" => counit[idx(0)?] = true,
                _ => return Err(bad(&format!("line outside a section: {line}"))),
            }
        }
        if !ended {
            return Err(bad("missing [end]"));
        }
        if antipode.iter().any(|a| a.1 == u32::MAX) {
            return Err(bad("antipode table incomplete"));
        }
        Ok(HopfStructure { group, p, t_matrix, modulus, n, dim, mult, comult, antipode, counit })
    }
}

/// Outcome of the dual computation in the regular plane.
#[derive(Debug, Clone, Serialize)]
pub struct DualReport {
    pub p: u64,
    /// Coordinates in `X` of the class of `e* ∧ f*`.
    pub input: Vec<u64>,
    /// Coordinates in `X` of the dual's class.
    pub dual: Vec<u64>,
    /// `((p - 1) / 2)` times the input.
    pub expected: Vec<u64>,
    pub same_orbit: bool,
    pub half_is_square: bool,
}

/// Coordinates in `X` of the form `e* ∧ f*` for the regular plane, where `f` spans the fixed line and `e ⊳ t = e + f`.
pub fn wedge_class(x: &ClassifyingGroup) -> Result<Vec<u64>> {
    let (e_star, f_star) = (vec![1u64, 0], vec![0u64, 1]);
    let form = x.alt.wedge(&e_star, &f_star);
    x.decompose(&x.alt.as_table(&form, x.modulus))
}

/// Executes the section construction `T = u t`, `γ(x^i y^j) = f*^i T^j` on `H(τ, ⊳)` for `τ` representing `e* ∧ f*` and classifies the dual cocycle.
pub fn dual_cocycle_p3(class: &ActionClass, x: &ClassifyingGroup) -> Result<DualReport> {
    let g = x.group();
    let p = x.action.p();
    if class.family != Family::ElementaryRegular || g.rank() != 2 || p % 2 == 0 || x.kind != CarrierKind::OddForms {
        return Err(Error::Precondition("dual construction needs the regular action on Z_p x Z_p with p odd".into()));
    }
    if x.action.t().matrix() != [vec![1, 0], vec![1, 1]] {
        return Err(Error::Precondition("expected the action g0 -> g0 + g1, g1 -> g1".into()));
    }
    let input = wedge_class(x)?;
    let h = HopfStructure::build(x, &input)?;
    let m = h.modulus;
    let zp = m / p;
    let idx = |e_coord: u64, f_coord: u64| g.index(&[e_coord % p, f_coord % p]);
    let u_inv = h.from_fn(0, |a| {
        let el = g.element(a);
        Some((el[1] * el[0] % p) * zp)
    });
    let u = h.from_fn(0, |a| {
        let el = g.element(a);
        Some(((p - el[1] * el[0] % p) % p) * zp)
    });
    let t = h.t();
    let t_inv = h.pow(&t, p - 1);
    let big_t = h.mul(&u, &t);
    let big_t_inv = h.mul(&t_inv, &u_inv);
    let f_star = h.character(&[0, 1]);
    let f_star_inv = h.character(&[0, p - 1]);
    let gamma = |i: u64, j: u64| h.mul(&h.pow(&f_star, i % p), &h.pow(&big_t, j % p));
    let gamma_inv = |i: u64, j: u64| h.mul(&h.pow(&big_t_inv, j % p), &h.pow(&f_star_inv, i % p));
    let e_powers: Vec<Element> = (0..p).map(|c| h.character(&[c, 0])).collect();
    let n = g.order() as usize;
    let mut values = vec![0u64; n * n];
    for i in 0..p {
        for j in 0..p {
            let ga = gamma(i, j);
            for k in 0..p {
                for l in 0..p {
                    let prod = h.mul(&h.mul(&ga, &gamma(k, l)), &gamma_inv(i + k, j + l));
                    let c = (0..p)
                        .find(|&c| e_powers[c as usize].equals(&prod))
                        .ok_or_else(|| Error::Precondition(format!("γ(a)γ(b)γ(ab)^-1 is not a power of e* at ({i},{j}),({k},{l})")))?;
                    values[idx(i, j) * n + idx(k, l)] = c * zp;
                }
            }
        }
    }
    let tau_prime = values;
    if !x.in_z2n(&tau_prime) {
        return Err(Error::Precondition("dual cocycle is not admissible".into()));
    }
    let dual = x.decompose(&tau_prime)?;
    let half = (p - 1) / 2;
    let expected = x.reduce(&input.iter().map(|v| v * half).collect::<Vec<_>>());
    let same_orbit = crate::orbits::same_orbit(x, &input, &dual);
    Ok(DualReport { p, input, dual, expected, same_orbit, half_is_square: crate::arith::is_quadratic_residue(half, p) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::build_x;
    use crate::catalog::catalog_actions;
    use crate::orbits::orbits;

    fn class_of(g: &[u64], p: u64, tag: &str) -> ActionClass {
        let g = AbelianGroup::new(g).unwrap();
        catalog_actions(&g, p).unwrap().into_iter().find(|c| c.family.tag() == tag).unwrap()
    }

    #[test]
    fn group_algebra_passes_and_is_cocommutative() {
        let class = class_of(&[3, 3], 3, "elementary-regular");
        let x = build_x(&class).unwrap();
        let h = HopfStructure::build(&x, &vec![0; x.dim()]).unwrap();
        assert!(h.verify_axioms().passed());
        assert!(h.comult.iter().all(|ts| ts.iter().all(|t| t.0 == 0)));
        assert!(h.antipode_is_involutive());
        let pres = h.presentation().unwrap();
        assert!(pres.coproduct.contains(&"Δ(t) = t ⊗ t".to_string()));
    }

    #[test]
    fn every_element_of_small_carriers_builds() {
        for (g, p, tag) in [(vec![3u64, 3], 3u64, "elementary-regular"), (vec![2, 2], 2, "two-elementary(1)"), (vec![2, 2], 2, "trivial"), (vec![3, 3], 2, "two-n-split(3:split)")] {
            let class = class_of(&g, p, tag);
            let x = build_x(&class).unwrap();
            for i in 0..x.order() as usize {
                let h = HopfStructure::build(&x, &x.element(i)).unwrap();
                let r = h.verify_axioms();
                assert!(r.passed(), "{tag} {:?} {:?}", x.element(i), r.failure);
            }
        }
    }

    #[test]
    fn corrupted_coefficient_is_caught_with_a_witness() {
        let class = class_of(&[3, 3], 3, "elementary-regular");
        let x = build_x(&class).unwrap();
        let mut h = HopfStructure::build(&x, &wedge_class(&x).unwrap()).unwrap();
        h.corrupt_comult(9 + 4, 1, 1);
        let r = h.verify_axioms();
        let f = r.failure.expect("must fail");
        assert_eq!(f.axiom, "comultiplicativity");
        assert_eq!(f.witness.len(), 2);
    }

    #[test]
    fn each_table_is_checked() {
        let class = class_of(&[3, 3], 3, "elementary-regular");
        let x = build_x(&class).unwrap();
        let h = HopfStructure::build(&x, &wedge_class(&x).unwrap()).unwrap();
        let mut bad = h.clone();
        bad.antipode[10].0 = (bad.antipode[10].0 + 1) % bad.modulus;
        assert_eq!(bad.verify_axioms().failure.unwrap().axiom, "antipode");
        let mut bad = h.clone();
        bad.mult[3 * bad.dim + 3] = None;
        assert!(["associativity", "unit"].contains(&bad.verify_axioms().failure.unwrap().axiom.as_str()));
        let mut bad = h.clone();
        bad.counit[1] = true;
        assert!(!bad.verify_axioms().passed());
        let mut bad = h.clone();
        bad.modulus *= 2;
        for ts in bad.comult.iter_mut() {
            for t in ts.iter_mut() {
                t.0 *= 2;
            }
        }
        assert!(bad.verify_axioms().passed());
        bad.corrupt_comult(20, 2, bad.modulus / 2);
        assert!(!bad.verify_axioms().passed());
    }

    #[test]
    fn structure_file_round_trips() {
        let class = class_of(&[3, 3], 3, "elementary-regular");
        let x = build_x(&class).unwrap();
        for coords in [vec![0, 1], vec![1, 2], vec![0, 0]] {
            let h = HopfStructure::build(&x, &coords).unwrap();
            assert_eq!(h.dim, 27);
            let text = h.to_structure_file();
            assert_eq!(HopfStructure::parse_structure_file(&text).unwrap(), h);
            if coords == vec![0, 0] {
                let twist: Vec<&str> = text.lines().skip_while(|l| *l != "[twist]").skip(1).take_while(|l| !l.starts_with('[')).collect();
                assert!(twist.is_empty());
            }
        }
        assert!(HopfStructure::parse_structure_file("nonsense").is_err());
    }

    #[test]
    fn kac_paljutkin_presentation() {
        let class = class_of(&[2, 2], 2, "two-elementary(1)");
        let x = build_x(&class).unwrap();
        let nonzero: Vec<u64> = (0..x.order() as usize).map(|i| x.element(i)).find(|e| !x.is_cocommutative(e)).unwrap();
        let h = HopfStructure::build(&x, &nonzero).unwrap();
        assert!(h.verify_axioms().passed());
        let pres = h.presentation().unwrap();
        let mut rel = pres.relations.clone();
        rel.sort();
        let mut expected = vec!["x1*^2 = 1", "x2*^2 = 1", "t^2 = 1", "t x1* t^-1 = x2*", "t x2* t^-1 = x1*"];
        expected.sort();
        assert_eq!(rel, expected);
        assert!(pres.antipode.contains(&"S(x1*) = x1*".to_string()) && pres.antipode.contains(&"S(t) = t".to_string()));
        assert_eq!(pres.counit, vec!["ε(x1*) = 1", "ε(x2*) = 1", "ε(t) = 1"]);
        assert!(h.antipode_is_involutive());
        assert_eq!(h.grouplike_count(), 4);
    }

    #[test]
    fn literal_h8_coefficients_fail_and_the_construction_succeeds() {
        let class = class_of(&[2, 2], 2, "two-elementary(1)");
        let x = build_x(&class).unwrap();
        let els = x.group().elements();
        let m = x.modulus;
        let q = m / 4;
        let literal: Vec<u64> = els.iter().flat_map(|a| els.iter().map(move |b| (4 + a[1] * b[0] - a[0] * b[1]) % 4 * q)).collect();
        assert!(!x.tables.is_cocycle(&literal, m));
        let rep: Vec<u64> = (0..x.order() as usize).map(|i| x.element(i)).find(|e| !x.is_cocommutative(e)).unwrap();
        let mut h = HopfStructure::build(&x, &rep).unwrap();
        for c in 0..4 {
            for term in h.comult[4 + c].iter_mut() {
                term.0 = literal[(term.1 as usize - 4) * 4 + term.2 as usize - 4];
            }
        }
        assert_eq!(h.verify_axioms().failure.unwrap().axiom, "coassociativity");

        let s12 = x.alt.upper_table(&x.alt.basis_form(0, 1), m);
        let g: Vec<u64> = els.iter().map(|a| (a[0] + a[1] + a[0] * a[1]) * q % m).collect();
        let tau = crate::cochain::add_tables(&s12, &x.tables.delta1(&g, m), m);
        assert!(x.in_z2n(&tau));
        assert_eq!(x.decompose(&tau).unwrap(), x.reduce(&rep));
        let h = HopfStructure::from_cocycle(&x.action, &CocycleTable::new(4, m, tau).unwrap()).unwrap();
        assert!(h.verify_axioms().passed());
        let mut rel = h.presentation().unwrap().relations;
        rel.sort();
        assert!(rel.contains(&"t x1* t^-1 = x2*".to_string()));
    }

    #[test]
    fn grouplikes_brute_force_on_h8() {
        let class = class_of(&[2, 2], 2, "two-elementary(1)");
        let x = build_x(&class).unwrap();
        for idx in 0..x.order() as usize {
            let h = HopfStructure::build(&x, &x.element(idx)).unwrap();
            let big = h.modulus * 2;
            let mut lifted = h.clone();
            lifted.modulus = big;
            for ts in lifted.comult.iter_mut() {
                for t in ts.iter_mut() {
                    t.0 *= 2;
                }
            }
            let mut count = 0;
            for i in 0..2usize {
                for code in 0..big.pow(4) {
                    let vals: Vec<u64> = (0..4).map(|k| (code / big.pow(k)) % big).collect();
                    let e = lifted.from_fn(i, |a| Some(vals[a]));
                    if lifted.is_grouplike(&e) {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, h.grouplike_count());
            let expect = if x.is_cocommutative(&x.element(idx)) { 8 } else { 4 };
            assert_eq!(count, expect);
        }
    }

    #[test]
    fn axioms_do_not_depend_on_the_representative() {
        let class = class_of(&[3, 3], 3, "elementary-regular");
        let x = build_x(&class).unwrap();
        let m = x.modulus;
        let w = wedge_class(&x).unwrap();
        for seed in 0..5u64 {
            let f: Vec<u64> = (0..9u64).map(|a| (a * 7 + seed * 3 + a * a * seed) % m).collect();
            let h = HopfStructure::build_perturbed(&x, &w, &f).unwrap();
            assert!(h.verify_axioms().passed());
            assert_ne!(h, HopfStructure::build(&x, &w).unwrap(), "seed {seed}");
        }
        assert!(HopfStructure::build_perturbed(&x, &w, &[0; 3]).is_err());
    }

    #[test]
    fn dual_class_in_the_regular_plane() {
        for p in [3u64, 5, 7] {
            let class = class_of(&[p, p], p, "elementary-regular");
            let x = crate::carrier::ClassifyingGroup::build(&class).unwrap();
            let w = wedge_class(&x).unwrap();
            let r = dual_cocycle_p3(&class, &x).unwrap();
            assert_eq!(r.input, w);
            assert_eq!(r.dual, r.expected, "p = {p}");
            assert_eq!(r.same_orbit, r.half_is_square, "p = {p}");
            assert_eq!(r.same_orbit, p == 3);
            assert!(!x.is_cocommutative(&r.dual));
            let twice = x.reduce(&r.dual.iter().map(|v| v * ((p - 1) / 2)).collect::<Vec<_>>());
            assert!(crate::orbits::same_orbit(&x, &twice, &w));
        }
    }

    #[test]
    fn grouplikes_of_noncocommutative_classes() {
        let class = class_of(&[3, 3], 3, "elementary-regular");
        let x = crate::carrier::ClassifyingGroup::build(&class).unwrap();
        for o in orbits(&x).orbits {
            let h = HopfStructure::build(&x, &o.representative).unwrap();
            let expect = if o.cocommutative { 27 } else { 9 };
            assert_eq!(h.grouplike_count(), expect);
        }
    }
}
