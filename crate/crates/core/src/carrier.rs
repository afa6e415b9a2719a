//! The classifying group `X(⊳)`: a model of `Z²_N / ker Φ` as characters modulo norms times a
//! transversal of `Alt_N`, with the action of the symmetry generators.

use crate::action::CpAction;
use crate::arith::mod_inv;
use crate::catalog::ActionClass;
use crate::cochain::{add_tables, embed, scale_table, sub_tables, GroupTables};
use crate::error::{Error, Result};
use crate::forms::AltSpace;
use crate::group::{AbelianGroup, Endomorphism};
use crate::linalg::{kernel_mod_general, FiniteModule, Subquotient};
use serde::Serialize;
use std::collections::HashMap;

/// How cocycles with a prescribed antisymmetrization are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CarrierKind {
    /// `Alt(G)` is trivial; `X` is the character quotient.
    NoForms,
    /// `|G|` odd: forms themselves are cocycles and `a(β) = 2β`.
    OddForms,
    /// `p = 2`, trivial action: upper-triangular cocycles `s_α`.
    TwoTrivial,
    /// `p = 2`, elementary group, nontrivial action in swap normal form.
    TwoElementary,
}

/// `Ĝ^{C_p} / N(Ĝ)` with lifts to characters.
#[derive(Debug, Clone)]
pub struct CharQuotient {
    pub fixed: FiniteModule,
    pub norm_gens: Vec<Vec<u64>>,
    pub quotient: Subquotient,
}

impl CharQuotient {
    pub fn new(act: &CpAction) -> Result<Self> {
        let g = act.group();
        let d = g.cyclic_orders();
        let n = d.len();
        let dt = act.dual_t().matrix();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (dt[i][j] as i64 - i64::from(i == j)).rem_euclid(d[i] as i64)).collect())
            .collect();
        let fixed = kernel_mod_general(&rows, d, d)?;
        let norm = act.dual_norm();
        let norm_gens: Vec<Vec<u64>> = (0..n).map(|j| norm.apply(&g.generator(j))).collect();
        let quotient = Subquotient::new(&fixed, &norm_gens)?;
        Ok(CharQuotient { fixed, norm_gens, quotient })
    }

    pub fn order(&self) -> u128 {
        self.quotient.order()
    }

    pub fn is_norm(&self, chi: &[u64]) -> bool {
        self.quotient.coords(chi).is_some_and(|c| c.iter().all(|&x| x == 0))
    }
}

/// One generator of `G(⊳)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SymElement {
    /// `s -> s ∘ (φ^{-1} × φ^{-1})`.
    Aut(Endomorphism),
    /// `s -> (φ_l • s) ∘ (λ^{-1} × λ^{-1})` with `l = k^{-1} mod p`.
    Omega { k: u64, lambda: Endomorphism },
}

/// A symmetry generator together with its matrix on `X` (column `j` is the image of generator `j`).
#[derive(Debug, Clone, Serialize)]
pub struct SymAction {
    pub element: SymElement,
    pub images: Vec<Vec<u64>>,
}

/// `X(⊳)` with generator orders, transversal cocycles and action tables.
#[derive(Debug, Clone)]
pub struct ClassifyingGroup {
    pub action: CpAction,
    pub kind: CarrierKind,
    pub modulus: u64,
    pub tables: GroupTables,
    pub chars: CharQuotient,
    pub alt: AltSpace,
    /// `Alt_N(G)` (or the label group) in `Alt` coordinates.
    pub alt_n: FiniteModule,
    alt_n_coords: HashMap<Vec<u64>, Vec<u64>>,
    /// Transversal cocycle for each generator of `alt_n`, modulo `modulus`.
    pub transversal: Vec<Vec<u64>>,
    perm_t: Vec<usize>,
    /// Orders of the generators of `X`: character part first, then the form part.
    pub orders: Vec<u64>,
    pub char_dim: usize,
    pub symmetries: Vec<SymAction>,
}

fn swap_normal_form(act: &CpAction) -> Option<usize> {
    let g = act.group();
    let n = g.rank();
    let imgs = act.t().images();
    let mut m = 0;
    while 2 * m + 1 < n && imgs[2 * m] == unit(n, 2 * m + 1) && imgs[2 * m + 1] == unit(n, 2 * m) {
        m += 1;
    }
    (2 * m..n).all(|i| imgs[i] == unit(n, i)).then_some(m)
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    (0..n).map(|j| u64::from(i == j)).collect()
}

fn module_from_gens(moduli: &[u64], gens: Vec<Vec<u64>>, orders: Vec<u64>) -> FiniteModule {
    FiniteModule { moduli: moduli.to_vec(), gens, orders }
}

impl ClassifyingGroup {
    /// Builds `X(⊳)` and the action of every symmetry generator of the class.
    pub fn build(class: &ActionClass) -> Result<Self> {
        let mut x = Self::bare(&class.action)?;
        let mut elems: Vec<SymElement> = class.symmetry.a_generators.iter().cloned().map(SymElement::Aut).collect();
        elems.extend(class.symmetry.omega.iter().map(|(k, l)| SymElement::Omega { k: *k, lambda: l.clone() }));
        let mut syms = Vec::new();
        for e in elems {
            let images = x.matrix_of(&e)?;
            syms.push(SymAction { element: e, images });
        }
        x.symmetries = syms;
        Ok(x)
    }

    /// `X(⊳)` without symmetry tables.
    pub fn bare(act: &CpAction) -> Result<Self> {
        let g = act.group().clone();
        let p = act.p();
        let tables = GroupTables::new(&g);
        let alt = AltSpace::new(&g);
        let m = g.default_modulus(p);
        let perm_t = tables.permutation(act.t());
        let kind = if alt.dim() == 0 {
            CarrierKind::NoForms
        } else if g.order() % 2 == 1 {
            CarrierKind::OddForms
        } else if p == 2 && act.is_trivial() {
            CarrierKind::TwoTrivial
        } else if p == 2 && g.is_elementary() && swap_normal_form(act).is_some() {
            CarrierKind::TwoElementary
        } else {
            return Err(Error::Unsupported(format!(
                "classifying group for p = {p} on {} needs an odd group, a trivial action or an elementary 2-group in swap normal form",
                g.descriptor()
            )));
        };
        let chars = CharQuotient::new(act)?;
        let (alt_n, transversal) = match kind {
            CarrierKind::NoForms => (module_from_gens(&[], vec![], vec![]), vec![]),
            CarrierKind::OddForms | CarrierKind::TwoTrivial => {
                let k = alt.dim();
                let mut norm = vec![vec![0i64; k]; k];
                let mut pw = Endomorphism::identity(&g);
                for _ in 0..p {
                    let pm = alt.pullback_matrix(&pw);
                    for r in 0..k {
                        for c in 0..k {
                            norm[r][c] += pm[r][c];
                        }
                    }
                    pw = pw.compose(act.t());
                }
                let mods = alt.moduli().to_vec();
                for (r, row) in norm.iter_mut().enumerate() {
                    for v in row.iter_mut() {
                        *v = v.rem_euclid(mods[r] as i64);
                    }
                }
                let ker = kernel_mod_general(&norm, &mods, &mods)?;
                let trans = ker
                    .gens
                    .iter()
                    .map(|b| if kind == CarrierKind::OddForms { alt.as_table(b, m) } else { alt.upper_table(b, m) })
                    .collect();
                (ker, trans)
            }
            CarrierKind::TwoElementary => Self::two_elementary_basis(act, &alt, &tables, m)?,
        };
        let alt_n_coords = alt_n.coordinate_map();
        let mut orders = chars.quotient.orders.clone();
        let char_dim = orders.len();
        orders.extend(&alt_n.orders);
        let x = ClassifyingGroup {
            action: act.clone(),
            kind,
            modulus: m,
            tables,
            chars,
            alt,
            alt_n,
            alt_n_coords,
            transversal,
            perm_t,
            orders,
            char_dim,
            symmetries: vec![],
        };
        for s in &x.transversal {
            if !x.in_z2n(s) {
                return Err(Error::Precondition("transversal cocycle outside Z²_N".into()));
            }
        }
        Ok(x)
    }

    fn two_elementary_basis(act: &CpAction, alt: &AltSpace, tables: &GroupTables, m: u64) -> Result<(FiniteModule, Vec<Vec<u64>>)> {
        let g = act.group();
        let swaps = swap_normal_form(act).expect("checked by caller");
        let perm = |i: usize| if i < 2 * swaps { i ^ 1 } else { i };
        let perm_t = tables.permutation(act.t());
        let mut gens = Vec::new();
        let mut trans = Vec::new();
        for (k, &(i, j)) in alt.pairs().iter().enumerate() {
            let (a, b) = (perm(i).min(perm(j)), perm(i).max(perm(j)));
            let s_ij = alt.upper_table(&alt.basis_form(i, j), m);
            let mut v = alt.zero();
            v[k] = 1;
            if (a, b) == (i, j) {
                if i < 2 * swaps {
                    let r = i / 2;
                    let corr: Vec<u64> = (0..tables.n)
                        .map(|x| {
                            let e = g.element(x);
                            e[2 * r] * e[2 * r + 1] * (m / 4)
                        })
                        .collect();
                    trans.push(add_tables(&s_ij, &tables.delta1(&corr, m), m));
                } else {
                    trans.push(s_ij);
                }
            } else if i < a {
                trans.push(add_tables(&s_ij, &tables.pull(&s_ij, &perm_t), m));
                let k2 = alt.pairs().iter().position(|&q| q == (a, b)).expect("pair present");
                v[k2] = 1;
            } else {
                continue;
            }
            gens.push(v);
        }
        let orders = vec![2; gens.len()];
        Ok((module_from_gens(alt.moduli(), gens, orders), trans))
    }

    pub fn group(&self) -> &AbelianGroup {
        self.action.group()
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Whether `s` is a normalized cocycle with `φ_p • s = 0`.
    pub fn in_z2n(&self, s: &[u64]) -> bool {
        let m = self.modulus;
        self.tables.is_normalized(s)
            && self.tables.is_cocycle_reduced(s, m)
            && self.tables.phi_table(s, m, &self.perm_t, self.action.p()).iter().all(|&v| v == 0)
    }

    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&v, &o)| v % o).collect()
    }

    pub fn is_cocommutative(&self, x: &[u64]) -> bool {
        x[self.char_dim..].iter().all(|&v| v == 0)
    }

    /// All elements in mixed-radix order (last coordinate fastest).
    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        for k in (0..self.dim()).rev() {
            v[k] = (idx % self.orders[k] as usize) as u64;
            idx /= self.orders[k] as usize;
        }
        v
    }

    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.orders).fold(0usize, |acc, (&v, &o)| acc * o as usize + v as usize)
    }

    /// Character corresponding to the character coordinates of `x`.
    pub fn char_lift(&self, x: &[u64]) -> Vec<u64> {
        let d = self.group().cyclic_orders();
        let mut chi = vec![0u64; d.len()];
        for (k, lift) in self.chars.quotient.lifts.iter().enumerate() {
            for i in 0..d.len() {
                chi[i] = (chi[i] + x[k] * lift[i]) % d[i];
            }
        }
        chi
    }

    /// A one-cochain `f` modulo `modulus` with `φ_p • f = χ`.
    pub fn norm_preimage(&self, chi: &[u64]) -> Vec<u64> {
        let g = self.group();
        let m = self.modulus;
        let p = self.action.p();
        let n = self.tables.n;
        let mut f = vec![0u64; n];
        let mut done = vec![false; n];
        for a in 0..n {
            if done[a] {
                continue;
            }
            let val = g.pair(chi, &g.element(a), m).expect("modulus divisible by the exponent");
            if self.perm_t[a] == a {
                debug_assert_eq!(val % p, 0);
                f[a] = val / p;
                done[a] = true;
            } else {
                f[a] = val;
                let mut b = a;
                loop {
                    done[b] = true;
                    b = self.perm_t[b];
                    if b == a {
                        break;
                    }
                }
            }
        }
        f
    }

    /// Representative cocycle of `x`, modulo `modulus`.
    pub fn representative(&self, x: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let chi = self.char_lift(x);
        let f = self.norm_preimage(&chi);
        let mut s = self.tables.delta1(&f, m);
        for (k, c) in self.transversal.iter().enumerate() {
            let coeff = x[self.char_dim + k];
            if coeff != 0 {
                s = add_tables(&s, &scale_table(c, coeff, m), m);
            }
        }
        s
    }

    /// Coordinates of the form part of a cocycle.
    pub fn label(&self, s: &[u64]) -> Result<Vec<u64>> {
        let m = self.modulus;
        let mut a = self.alt.antisymmetrization(&self.tables, s, m);
        if self.kind == CarrierKind::OddForms {
            let e = self.group().exponent();
            let h = mod_inv(2, e).expect("odd exponent");
            a = self.alt.scale(h, &a);
        }
        if self.kind == CarrierKind::NoForms {
            return Ok(vec![]);
        }
        self.alt_n_coords
            .get(&a)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("antisymmetrization {a:?} outside the label group")))
    }

    /// Coordinates in `X` of a cocycle in `Z²_N`.
    pub fn decompose(&self, s: &[u64]) -> Result<Vec<u64>> {
        let m = self.modulus;
        let g = self.group();
        let d = g.cyclic_orders();
        let ell = self.label(s)?;
        let mut b = s.to_vec();
        for (k, c) in self.transversal.iter().enumerate() {
            if ell[k] != 0 {
                b = sub_tables(&b, &scale_table(c, ell[k], m), m);
            }
        }
        let big = m * g.exponent();
        let bb = embed(&b, m, big);
        let f = self
            .tables
            .solve_coboundary(&bb, big)
            .ok_or_else(|| Error::Precondition("cocycle minus transversal is not a coboundary".into()))?;
        let chi_fn = self.tables.phi_fn(&f, big, &self.perm_t, self.action.p());
        let mut chi = vec![0u64; d.len()];
        for (i, &gi) in self.tables.gens.iter().enumerate() {
            let step = big / d[i];
            if chi_fn[gi] % step != 0 {
                return Err(Error::Precondition("norm of the coboundary preimage is not a character".into()));
            }
            chi[i] = chi_fn[gi] / step;
        }
        let q = self
            .chars
            .quotient
            .coords(&chi)
            .ok_or_else(|| Error::Precondition(format!("norm character {chi:?} is not fixed")))?;
        let mut out = q;
        out.extend(ell);
        Ok(out)
    }

    /// Image of a cocycle under a symmetry generator.
    pub fn act_on_cocycle(&self, e: &SymElement, s: &[u64]) -> Result<Vec<u64>> {
        match e {
            SymElement::Aut(phi) => Ok(self.tables.pull(s, &self.tables.permutation(&phi.inverse()?))),
            SymElement::Omega { k, lambda } => {
                let p = self.action.p();
                let l = mod_inv(k % p, p).ok_or_else(|| Error::Precondition("k not a unit mod p".into()))?;
                let phi = self.tables.phi_table(s, self.modulus, &self.perm_t, l);
                Ok(self.tables.pull(&phi, &self.tables.permutation(&lambda.inverse()?)))
            }
        }
    }

    /// Matrix of a symmetry generator on `X`.
    pub fn matrix_of(&self, e: &SymElement) -> Result<Vec<Vec<u64>>> {
        (0..self.dim())
            .map(|j| {
                let mut x = vec![0u64; self.dim()];
                x[j] = 1;
                let s = self.act_on_cocycle(e, &self.representative(&x))?;
                self.decompose(&s)
            })
            .collect()
    }

    /// Applies a matrix (list of generator images) to `x`.
    pub fn apply_matrix(&self, images: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (j, col) in images.iter().enumerate() {
            if x[j] == 0 {
                continue;
            }
            for i in 0..out.len() {
                out[i] = (out[i] + x[j] * col[i]) % self.orders[i];
            }
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &o)| (a + b) % o).collect()
    }

    /// Checks that representatives add up to the sum in `X` on generator pairs.
    pub fn check_transversal_homomorphism(&self) -> Result<()> {
        let m = self.modulus;
        let k = self.dim();
        let unitv = |j: usize| {
            let mut x = vec![0u64; k];
            x[j] = 1;
            x
        };
        for i in 0..k {
            if self.decompose(&self.representative(&unitv(i)))? != unitv(i) {
                return Err(Error::Precondition(format!("generator {i} does not round-trip")));
            }
            let o = self.orders[i];
            let mut acc = vec![0u64; self.tables.n * self.tables.n];
            for _ in 0..o {
                acc = add_tables(&acc, &self.representative(&unitv(i)), m);
            }
            if self.decompose(&acc)?.iter().any(|&v| v != 0) {
                return Err(Error::Precondition(format!("generator {i} has the wrong order")));
            }
            for j in i + 1..k {
                let s = add_tables(&self.representative(&unitv(i)), &self.representative(&unitv(j)), m);
                if self.decompose(&s)? != self.add(&unitv(i), &unitv(j)) {
                    return Err(Error::Precondition(format!("generators {i}, {j} do not add")));
                }
            }
        }
        Ok(())
    }

    /// Human-readable names of the generators of `X`.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out: Vec<String> = self.chars.quotient.lifts.iter().map(|l| format!("chi{l:?}")).collect();
        for b in &self.alt_n.gens {
            let terms: Vec<String> = b
                .iter()
                .zip(self.alt.pairs())
                .filter(|(&c, _)| c != 0)
                .map(|(&c, &(i, j))| if c == 1 { format!("g{}*^g{}*", i + 1, j + 1) } else { format!("{c}g{}*^g{}*", i + 1, j + 1) })
                .collect();
            out.push(terms.join("+"));
        }
        out
    }

    /// JSON-ready description.
    pub fn summary(&self) -> CarrierSummary {
        CarrierSummary {
            kind: self.kind,
            modulus: self.modulus,
            orders: self.orders.clone(),
            char_part: self.char_dim,
            generators: self.generator_names(),
            char_quotient_order: self.chars.order() as u64,
            alt_n_order: self.alt_n.order() as u64,
            nonsplit_cocycle_extension: self.kind == CarrierKind::TwoElementary,
            symmetries: self.symmetries.clone(),
        }
    }
}

/// Serializable view of a classifying group.
#[derive(Debug, Clone, Serialize)]
pub struct CarrierSummary {
    pub kind: CarrierKind,
    pub modulus: u64,
    pub orders: Vec<u64>,
    pub char_part: usize,
    pub generators: Vec<String>,
    pub char_quotient_order: u64,
    pub alt_n_order: u64,
    pub nonsplit_cocycle_extension: bool,
    pub symmetries: Vec<SymAction>,
}

/// `(Ĝ^{C_p}, N(Ĝ), quotient)`.
pub fn fixed_and_norm(act: &CpAction) -> Result<CharQuotient> {
    CharQuotient::new(act)
}

/// `Alt_N(G)` for odd `p`, or the label group used by the carrier.
pub fn alt_n(act: &CpAction) -> Result<FiniteModule> {
    Ok(ClassifyingGroup::bare(act)?.alt_n)
}

/// `X(⊳)` with action tables.
pub fn build_x(class: &ActionClass) -> Result<ClassifyingGroup> {
    ClassifyingGroup::build(class)
}

/// The carrier for an elementary 2-group.
pub fn p2_carrier(class: &ActionClass) -> Result<ClassifyingGroup> {
    let g = class.action.group();
    if class.action.p() != 2 || !g.is_elementary() || !g.is_p_group(2) {
        return Err(Error::Unsupported(format!("p2_carrier needs an elementary 2-group, got {}", g.descriptor())));
    }
    ClassifyingGroup::build(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_actions;

    fn classes(g: &str, p: u64) -> Vec<ActionClass> {
        catalog_actions(&AbelianGroup::parse(g).unwrap(), p).unwrap()
    }

    #[test]
    fn char_quotient_examples() {
        let c = classes("Z3^3", 3);
        let q = fixed_and_norm(&c[0].action).unwrap();
        assert_eq!(q.order(), 27);
        let q = fixed_and_norm(&c[1].action).unwrap();
        assert_eq!(q.order(), 9);
        let c = classes("Z2^2", 2);
        let q = fixed_and_norm(&c[1].action).unwrap();
        assert_eq!(q.fixed.order(), 2);
        assert_eq!(q.order(), 1);
        assert!(q.is_norm(&[1, 1]));
    }

    #[test]
    fn alt_n_examples() {
        let c = classes("Z5^2", 5);
        assert_eq!(alt_n(&c[1].action).unwrap().order(), 5);
        for cl in classes("Z9xZ3", 3) {
            assert_eq!(alt_n(&cl.action).unwrap().order(), 3);
        }
        let c = classes("Z2^3", 2);
        assert_eq!(alt_n(&c[0].action).unwrap().order(), 8);
    }

    #[test]
    fn x_orders() {
        let c = classes("Z3^2", 3);
        assert_eq!(build_x(&c[1]).unwrap().order(), 9);
        let c = classes("Z3^3", 3);
        let x = build_x(&c[2]).unwrap();
        assert_eq!(x.char_dim, 0);
        assert_eq!(x.order(), 9);
        let c = classes("Z2^3", 2);
        assert_eq!(build_x(&c[0]).unwrap().order(), 64);
        let c = classes("Z2", 2);
        assert_eq!(build_x(&c[0]).unwrap().order(), 2);
        let c = classes("Z2^2", 2);
        let x = p2_carrier(&c[1]).unwrap();
        assert_eq!(x.order(), 2);
        assert_eq!(x.char_dim, 0);
        for q in [3u64, 5] {
            let c = classes(&format!("Z{}xZ{q}", q * q), q);
            let x = build_x(&c[4]).unwrap();
            assert_eq!(x.order(), q as u128);
            assert_eq!(x.char_dim, 0);
        }
    }

    #[test]
    fn transversal_is_homomorphism_and_tables_are_automorphisms() {
        for (g, p) in [("Z3^2", 3), ("Z2^2", 2), ("Z2^3", 2), ("Z2^4", 2), ("Z9xZ3", 3), ("Z3^3", 3), ("Z3^2", 2), ("Z4", 2), ("Z4xZ2", 2)] {
            let Ok(cl) = catalog_actions(&AbelianGroup::parse(g).unwrap(), p) else {
                let tc = crate::catalog::trivial_class(&AbelianGroup::parse(g).unwrap(), p).unwrap();
                let x = build_x(&tc).unwrap();
                x.check_transversal_homomorphism().unwrap();
                continue;
            };
            for c in cl {
                let x = build_x(&c).unwrap();
                x.check_transversal_homomorphism().unwrap();
                for s in &x.symmetries {
                    let mut seen = std::collections::HashSet::new();
                    for i in 0..x.order() as usize {
                        seen.insert(x.apply_matrix(&s.images, &x.element(i)));
                    }
                    assert_eq!(seen.len() as u128, x.order(), "{g} {}", c.family.tag());
                }
            }
        }
    }

    #[test]
    fn tables_compose_as_a_representation() {
        let c = classes("Z9xZ3", 3);
        for cl in &c[1..] {
            let x = build_x(cl).unwrap();
            let gens = &cl.symmetry.a_generators;
            for a in gens {
                for b in gens {
                    let ab = x.matrix_of(&SymElement::Aut(a.compose(b))).unwrap();
                    let ma = x.matrix_of(&SymElement::Aut(a.clone())).unwrap();
                    let mb = x.matrix_of(&SymElement::Aut(b.clone())).unwrap();
                    for j in 0..x.dim() {
                        let mut e = vec![0; x.dim()];
                        e[j] = 1;
                        let lhs = x.apply_matrix(&ab, &e);
                        let rhs1 = x.apply_matrix(&mb, &x.apply_matrix(&ma, &e));
                        assert_eq!(lhs, rhs1);
                    }
                }
            }
        }
    }

    #[test]
    fn the_regular_plane_scales_as_expected() {
        for p in [3u64, 5] {
            let c = classes(&format!("Z{p}^2"), p);
            let x = build_x(&c[1]).unwrap();
            assert_eq!(x.orders, vec![p, p]);
            for s in &x.symmetries {
                if let SymElement::Aut(phi) = &s.element {
                    let cc = mod_inv(phi.entry(0, 0), p).unwrap();
                    assert_eq!(s.images[0], vec![cc % p, 0]);
                    assert_eq!(s.images[1], vec![0, cc * cc % p]);
                }
            }
        }
    }

    #[test]
    fn omega_on_fixed_points() {
        for (g, p) in [("Z5^2", 5), ("Z25xZ5", 5), ("Z3^3", 3)] {
            for cl in classes(g, p) {
                let x = build_x(&cl).unwrap();
                for s in &x.symmetries {
                    let SymElement::Omega { k, lambda } = &s.element else { continue };
                    let l = mod_inv(*k, p).unwrap();
                    for j in 0..x.dim() {
                        let mut e = vec![0; x.dim()];
                        e[j] = 1;
                        let rep = x.representative(&e);
                        let tr = x.tables.pull(&rep, &x.perm_t);
                        if x.decompose(&tr).unwrap() != e {
                            continue;
                        }
                        let scaled = x.reduce(&e.iter().map(|v| v * l).collect::<Vec<_>>());
                        let expect = x.decompose(&x.act_on_cocycle(&SymElement::Aut(lambda.clone()), &x.representative(&scaled)).unwrap()).unwrap();
                        assert_eq!(x.apply_matrix(&s.images, &e), expect);
                    }
                }
            }
        }
    }
}
