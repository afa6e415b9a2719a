//! Independent lattice computation of `Z²_N`, `B²_N`, `ker Φ` and `|H²_c|` over `Z/m`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::CpAction;
use crate::arith::gcd;
use crate::cochain::{add_tables, GroupTables};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::linalg::{kernel_mod, FiniteModule};
use crate::module_order::RowSpanOrder;

/// Largest group order accepted by the lattice computations.
pub const ORACLE_MAX_ORDER: u64 = 64;

/// A function `G × G -> Z/m`, stored row-major by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTable {
    pub n: usize,
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl CocycleTable {
    pub fn new(n: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Shape { expected: n * n, found: values.len() });
        }
        Ok(CocycleTable { n, modulus, values: values.into_iter().map(|v| v % modulus).collect() })
    }

    pub fn zero(n: usize, modulus: u64) -> Self {
        CocycleTable { n, modulus, values: vec![0; n * n] }
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.values[a * self.n + b]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

fn check_budget(g: &AbelianGroup) -> Result<()> {
    if g.order() > ORACLE_MAX_ORDER {
        let n = g.order() as u128;
        return Err(Error::Budget { what: format!("cocycle lattice for {}", g.descriptor()), needed: n * n * n, limit: (ORACLE_MAX_ORDER as u128).pow(3) });
    }
    Ok(())
}

/// Expresses every value of a cocycle through its values at `(x, 0)` and `(x, s)` for generators `s`.
struct TreeBasis {
    n: usize,
    width: usize,
    gens: Vec<usize>,
    exprs: Vec<Vec<i64>>,
}

impl TreeBasis {
    fn new(tables: &GroupTables) -> Self {
        let n = tables.n;
        let mut gens: Vec<usize> = tables.gens.iter().copied().filter(|&s| s != 0).collect();
        gens.dedup();
        let width = gens.len() + 1;
        let nb = n * width;
        let col = |x: usize, k: usize| x * width + k;
        let mut exprs = vec![Vec::new(); n * n];
        let unit = |c: usize| {
            let mut v = vec![0i64; nb];
            v[c] = 1;
            v
        };
        for a in 0..n {
            exprs[a * n] = unit(col(a, 0));
            for (k, &s) in gens.iter().enumerate() {
                exprs[a * n + s] = unit(col(a, k + 1));
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        for &s in &gens {
            seen[s] = true;
        }
        let mut queue = std::collections::VecDeque::from(vec![0usize]);
        let mut visited = vec![false; n];
        visited[0] = true;
        while let Some(b0) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let b = tables.sum(b0, s);
                if visited[b] {
                    continue;
                }
                visited[b] = true;
                queue.push_back(b);
                if seen[b] {
                    continue;
                }
                seen[b] = true;
                for a in 0..n {
                    let mut v = exprs[a * n + b0].clone();
                    v[col(tables.sum(a, b0), k + 1)] += 1;
                    v[col(b0, k + 1)] -= 1;
                    exprs[a * n + b] = v;
                }
            }
        }
        TreeBasis { n, width, gens, exprs }
    }

    fn ncols(&self) -> usize {
        self.n * self.width
    }

    fn expr(&self, a: usize, b: usize) -> &[i64] {
        &self.exprs[a * self.n + b]
    }

    /// Rows of `δτ(a, b, c) = 0` for `c` zero or a generator.
    fn cocycle_rows(&self, tables: &GroupTables) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut cs = vec![0usize];
        cs.extend(&self.gens);
        let mut rows = Vec::with_capacity(n * n * cs.len());
        for a in 0..n {
            for b in 0..n {
                for &c in &cs {
                    let mut r = vec![0i64; self.ncols()];
                    let terms = [
                        (self.expr(b, c), 1),
                        (self.expr(a, tables.sum(b, c)), 1),
                        (self.expr(tables.sum(a, b), c), -1),
                        (self.expr(a, b), -1),
                    ];
                    for (e, sign) in terms {
                        for (x, &y) in r.iter_mut().zip(e) {
                            *x += sign * y;
                        }
                    }
                    if r.iter().any(|&x| x != 0) {
                        rows.push(r);
                    }
                }
            }
        }
        rows
    }

    fn normalization_rows(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        (0..n).flat_map(|x| [self.expr(x, 0).to_vec(), self.expr(0, x).to_vec()]).collect()
    }

    fn norm_rows(&self, perm_t: &[usize], p: u64) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut r = vec![0i64; self.ncols()];
                let (mut x, mut y) = (a, b);
                for _ in 0..p {
                    for (u, &v) in r.iter_mut().zip(self.expr(x, y)) {
                        *u += v;
                    }
                    x = perm_t[x];
                    y = perm_t[y];
                }
                rows.push(r);
            }
        }
        rows
    }

    fn expand(&self, basic: &[u64], m: u64) -> Vec<u64> {
        self.exprs
            .iter()
            .map(|e| {
                let s: i128 = e.iter().zip(basic).map(|(&c, &x)| c as i128 * x as i128).sum();
                s.rem_euclid(m as i128) as u64
            })
            .collect()
    }
}

fn kernel_order(rows: &[Vec<i64>], m: u64, ncols: usize) -> BigUint {
    let mut span = RowSpanOrder::new(m, ncols);
    for r in rows {
        span.push_signed(r);
    }
    span.kernel_order()
}

/// The group `Z²(G, μ_m)` of all (not necessarily normalized) two-cocycles.
#[derive(Debug, Clone)]
pub struct Z2Lattice {
    pub modulus: u64,
    pub order: BigUint,
    pub generators: Vec<CocycleTable>,
    pub generator_orders: Vec<u64>,
}

/// Generators and order of `Z²(G, μ_m)`.
pub fn z2_group(g: &AbelianGroup, m: u64) -> Result<Z2Lattice> {
    check_budget(g)?;
    if m == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let tables = GroupTables::new(g);
    let tree = TreeBasis::new(&tables);
    let rows = tree.cocycle_rows(&tables);
    let order = kernel_order(&rows, m, tree.ncols());
    let module: FiniteModule = kernel_mod(&rows, &vec![m; rows.len()], tree.ncols());
    let generators = module
        .gens
        .iter()
        .map(|basic| CocycleTable { n: tables.n, modulus: m, values: tree.expand(basic, m) })
        .collect();
    Ok(Z2Lattice { modulus: m, order, generators, generator_orders: module.orders })
}

/// Order of the subgroup of normalized cocycles in `Z²(G, μ_m)`.
pub fn z2_normalized_order(g: &AbelianGroup, m: u64) -> Result<BigUint> {
    check_budget(g)?;
    let tables = GroupTables::new(g);
    let tree = TreeBasis::new(&tables);
    let mut rows = tree.cocycle_rows(&tables);
    rows.extend(tree.normalization_rows());
    Ok(kernel_order(&rows, m, tree.ncols()))
}

/// `|B²(G, μ_m)| = m^{|G|} / |Hom(G, Z/m)|` for unnormalized cochains.
pub fn b2_order(g: &AbelianGroup, m: u64) -> BigUint {
    let homs: u64 = g.cyclic_orders().iter().map(|&d| gcd(d, m)).product();
    BigUint::from(m).pow(g.order() as u32) / BigUint::from(homs)
}

/// The four lattice orders attached to an action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOrders {
    pub modulus: u64,
    pub z2n: BigUint,
    pub b2n: BigUint,
    pub ker_phi: BigUint,
    pub h2c: BigUint,
}

/// Decimal rendering of [`OracleOrders`] for reports.
#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub modulus: u64,
    pub z2n: String,
    pub b2n: String,
    pub ker_phi: String,
    pub h2c: String,
}

impl OracleOrders {
    pub fn summary(&self) -> OracleSummary {
        OracleSummary {
            modulus: self.modulus,
            z2n: self.z2n.to_string(),
            b2n: self.b2n.to_string(),
            ker_phi: self.ker_phi.to_string(),
            h2c: self.h2c.to_string(),
        }
    }
}

fn exact_div(a: &BigUint, b: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = a.div_rem(b);
    if b.is_zero() || !r.is_zero() {
        return Err(Error::Precondition(format!("{what}: {a} is not divisible by {b}")));
    }
    Ok(q)
}

/// `|Z²_N|`, `|B²_N|`, `|ker Φ|` and `|H²_c| = |Z²_N| / |ker Φ|` with cocycle values in `μ_m`.
pub fn z2n_and_ker_phi(act: &CpAction, m: u64) -> Result<OracleOrders> {
    let g = act.group();
    check_budget(g)?;
    let e = g.exponent();
    if m % (act.p() * e) != 0 {
        return Err(Error::Precondition(format!("modulus {m} must be a multiple of p * exp(G) = {}", act.p() * e)));
    }
    let tables = GroupTables::new(g);
    let n = tables.n;
    let p = act.p();
    let perm_t = tables.permutation(act.t());
    let tree = TreeBasis::new(&tables);

    let mut rows = tree.cocycle_rows(&tables);
    rows.extend(tree.normalization_rows());
    rows.extend(tree.norm_rows(&perm_t, p));
    let z2n = kernel_order(&rows, m, tree.ncols());

    // One-cochains live in Z/M with M = m * exp, so that every coboundary with values in μ_m has a preimage.
    let big = m * e;
    let scale = (big / e) as i64;
    let unit = |a: usize| {
        let mut r = vec![0i64; n];
        r[a] = 1;
        r
    };
    let delta_row = |a: usize, b: usize, s: i64| {
        let mut r = vec![0i64; n];
        r[a] += s;
        r[b] += s;
        r[tables.sum(a, b)] -= s;
        r
    };
    let orbit_sum = |a: usize| {
        let mut r = vec![0i64; n];
        let mut x = a;
        for _ in 0..p {
            r[x] += 1;
            x = perm_t[x];
        }
        r
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();

    let in_mu_m: Vec<Vec<i64>> = pairs.iter().map(|&(a, b)| delta_row(a, b, scale)).collect();
    let closed: Vec<Vec<i64>> = pairs.iter().map(|&(a, b)| delta_row(a, b, 1)).collect();
    let norm_zero: Vec<Vec<i64>> = (0..n).map(orbit_sum).collect();
    let norm_closed: Vec<Vec<i64>> = pairs
        .iter()
        .map(|&(a, b)| {
            let (ra, rb, rab) = (orbit_sum(a), orbit_sum(b), orbit_sum(tables.sum(a, b)));
            (0..n).map(|i| ra[i] + rb[i] - rab[i]).collect()
        })
        .collect();

    let with = |parts: &[&[Vec<i64>]]| {
        let mut r = vec![unit(0)];
        for part in parts {
            r.extend(part.iter().cloned());
        }
        kernel_order(&r, big, n)
    };
    let characters = with(&[&closed]);
    let b_source = with(&[&in_mu_m, &norm_closed]);
    let k1 = with(&[&in_mu_m, &norm_zero]);
    let k1_closed = with(&[&closed, &norm_zero]);

    let b2n = exact_div(&b_source, &characters, "B²_N")?;
    let ker_phi = exact_div(&k1, &k1_closed, "ker Φ")?;
    let h2c = exact_div(&z2n, &ker_phi, "H²_c")?;
    if !(&z2n % &b2n).is_zero() || !(&b2n % &ker_phi).is_zero() {
        return Err(Error::Precondition("lattice orders are not nested".into()));
    }
    Ok(OracleOrders { modulus: m, z2n, b2n, ker_phi, h2c })
}

/// [`z2n_and_ker_phi`] at the default modulus `p * exp(G)`.
pub fn oracle_orders(act: &CpAction) -> Result<OracleOrders> {
    z2n_and_ker_phi(act, act.group().default_modulus(act.p()))
}

/// Components `τ(t^i) = φ_i • τ(t)` of the Hopf cocycle determined by `τ(t)`, for `i = 0..p`.
pub fn theta_expand(tau_t: &CocycleTable, act: &CpAction) -> Result<Vec<CocycleTable>> {
    let tables = GroupTables::new(act.group());
    if tau_t.n != tables.n {
        return Err(Error::Shape { expected: tables.n, found: tau_t.n });
    }
    let m = tau_t.modulus;
    let p = act.p();
    let perm_t = tables.permutation(act.t());
    if !tables.phi_table(&tau_t.values, m, &perm_t, p).iter().all(|&v| v == 0) {
        return Err(Error::Precondition("φ_p • τ(t) is not trivial".into()));
    }
    let comps: Vec<CocycleTable> = (0..p)
        .map(|i| CocycleTable { n: tables.n, modulus: m, values: tables.phi_table(&tau_t.values, m, &perm_t, i) })
        .collect();
    let mut powers = vec![(0..tables.n).collect::<Vec<usize>>()];
    for i in 1..p as usize {
        powers.push(powers[i - 1].iter().map(|&x| perm_t[x]).collect());
    }
    for i in 0..p as usize {
        for j in 0..p as usize {
            let lhs = &comps[(i + j) % p as usize].values;
            let rhs = add_tables(&comps[i].values, &tables.pull(&comps[j].values, &powers[i]), m);
            if *lhs != rhs {
                return Err(Error::Precondition(format!("crossed-homomorphism identity fails at (t^{i}, t^{j})")));
            }
        }
    }
    Ok(comps)
}

/// Inverse of [`theta_expand`]: the component at `t`.
pub fn theta_restrict(tau: &[CocycleTable]) -> Result<CocycleTable> {
    tau.get(1).cloned().ok_or_else(|| Error::Precondition("at least two components are required".into()))
}

/// The functions `f_i` and `g_i` attached to the pair of generators `(2i, 2i+1)` of an elementary 2-group, modulo `m`.
///
/// With `a = x^{j1} y^{j2} a'` they are `f_i(a) = (m/2)(j1 + j2 + j1 j2)` and `g_i(a) = (m/4)(j1 + j2 + j1 j2)`.
pub fn special_functions(g: &AbelianGroup, i: usize, m: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    if !g.is_elementary() || g.prime_of(0) != 2 || 2 * i + 1 >= g.rank() || m % 4 != 0 {
        return Err(Error::Precondition("needs an elementary 2-group of rank > 2i+1 and 4 | m".into()));
    }
    let (f, h): (Vec<u64>, Vec<u64>) = g
        .elements()
        .iter()
        .map(|a| {
            let (j1, j2) = (a[2 * i], a[2 * i + 1]);
            let w = j1 + j2 + j1 * j2;
            ((w * (m / 2)) % m, (w * (m / 4)) % m)
        })
        .unzip();
    Ok((f, h))
}

/// Every abelian group of order at most `max_order`, as lists of primary cyclic orders.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<AbelianGroup> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut groups = Vec::new();
    for order in 1..=max_order {
        let mut choices: Vec<Vec<u64>> = vec![vec![]];
        for (q, e) in crate::arith::factor(order) {
            let mut next = Vec::new();
            for c in &choices {
                for part in partitions(e, e) {
                    let mut d = c.clone();
                    d.extend(part.iter().map(|&k| q.pow(k)));
                    next.push(d);
                }
            }
            choices = next;
        }
        for c in choices {
            groups.push(AbelianGroup::new(&c).expect("valid cyclic orders"));
        }
    }
    groups
}

/// One line of the oracle cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub group: String,
    pub p: u64,
    pub family: String,
    pub orders: OracleSummary,
    pub x_order: String,
    pub matches: bool,
}

/// Compares `|H²_c|` with `|X(⊳)|` for every cataloged action on groups of order `<= max_order` and the given primes.
pub fn cross_check(max_order: u64, primes: &[u64]) -> Result<Vec<OracleCheck>> {
    let mut out = Vec::new();
    for g in abelian_groups_up_to(max_order) {
        for &p in primes {
            let classes = match crate::catalog::catalog_actions(&g, p) {
                Ok(c) => c,
                Err(Error::Unsupported(_)) | Err(Error::InvalidPrime { .. }) => continue,
                Err(e) => return Err(e),
            };
            for class in classes {
                let x = crate::carrier::build_x(&class)?;
                let orders = oracle_orders(&class.action)?;
                let x_order = BigUint::from(x.order());
                out.push(OracleCheck {
                    group: g.descriptor(),
                    p,
                    family: class.family.tag(),
                    matches: orders.h2c == x_order,
                    orders: orders.summary(),
                    x_order: x_order.to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// `true` when `x` lies in the subgroup of `(Z/m)^k` generated by `gens`; brute force for small spans.
pub fn in_span(gens: &[Vec<u64>], x: &[u64], m: u64) -> bool {
    let mut seen = std::collections::HashSet::new();
    let zero = vec![0u64; x.len()];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        if v == x {
            return true;
        }
        for gen in gens {
            let w: Vec<u64> = v.iter().zip(gen).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    false
}

/// `|Z²|` divided by `|B²|`, i.e. `|H²(G, μ_m)|`.
pub fn h2_order(g: &AbelianGroup, m: u64) -> Result<BigUint> {
    let z = z2_group(g, m)?;
    let b = b2_order(g, m);
    if b.is_one() {
        return Ok(z.order);
    }
    exact_div(&z.order, &b, "H²")
}
