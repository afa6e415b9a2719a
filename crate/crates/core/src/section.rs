//! Search for an equivariant splitting of `Ĝ ↣ X ↠ Alt(G)` for elementary 2-groups with the trivial action.

use serde::Serialize;

use crate::action::CpAction;
use crate::carrier::{ClassifyingGroup, SymElement};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Endomorphism};

/// Largest rank accepted by [`section_search`].
pub const SECTION_MAX_RANK: usize = 4;

/// Outcome of the exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct SectionOutcome {
    pub rank: usize,
    /// Pairs `(i, j)`, `i < j`, indexing the standard basis of `Alt(G)`.
    pub pairs: Vec<(usize, usize)>,
    /// `χ_ij` for every pair when a section exists.
    pub section: Option<Vec<Vec<u64>>>,
    /// Size of the full search space `2^{n C(n,2)}`.
    pub candidates: u128,
    /// Partial assignments visited by the backtracking search.
    pub nodes: u64,
    /// Equivariance conditions checked, one per basis form and transvection.
    pub conditions: usize,
}

impl SectionOutcome {
    pub fn splits(&self) -> bool {
        self.section.is_some()
    }
}

/// The transvection `x_p -> x_p + x_q` of `Z_2^n`.
pub fn transvection(g: &AbelianGroup, p: usize, q: usize) -> Endomorphism {
    let n = g.rank();
    let images: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            let mut v = vec![0i64; n];
            v[k] = 1;
            if k == p {
                v[q] += 1;
            }
            v
        })
        .collect();
    Endomorphism::from_images(g, &images).expect("transvection is well defined")
}

/// `X` of the trivial action on `Z_2^n`, encoded as bit vectors.
pub struct SplittingProblem {
    pub x: ClassifyingGroup,
    pub pairs: Vec<(usize, usize)>,
    /// Class of `χ` for each basis character `x_k*`.
    char_bits: Vec<u64>,
    /// Class of `s⟨i,j⟩` for each pair.
    form_bits: Vec<u64>,
    /// Transvections with their matrices on `X` (images of the coordinate vectors).
    moves: Vec<((usize, usize), Vec<u64>)>,
    /// `α.φ` in the pair basis, per transvection and pair.
    form_moves: Vec<Vec<u64>>,
}

fn to_bits(v: &[u64]) -> u64 {
    v.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b & 1) << i))
}

fn apply_bits(images: &[u64], x: u64) -> u64 {
    images.iter().enumerate().filter(|(j, _)| (x >> j) & 1 == 1).fold(0u64, |acc, (_, &c)| acc ^ c)
}

impl SplittingProblem {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > SECTION_MAX_RANK {
            return Err(Error::Budget {
                what: format!("section search on Z_2^{rank}"),
                needed: 1u128 << (rank * rank.saturating_sub(1) / 2 * rank).min(127),
                limit: 1u128 << (SECTION_MAX_RANK * (SECTION_MAX_RANK - 1) / 2 * SECTION_MAX_RANK),
            });
        }
        let g = AbelianGroup::elementary(2, rank);
        let act = CpAction::trivial(&g, 2)?;
        let x = ClassifyingGroup::bare(&act)?;
        let pairs = x.alt.pairs().to_vec();
        let m = x.modulus;
        let char_bits = (0..rank)
            .map(|k| {
                let chi: Vec<u64> = (0..rank).map(|i| u64::from(i == k)).collect();
                let f = x.norm_preimage(&chi);
                x.decompose(&x.tables.delta1(&f, m)).map(|v| to_bits(&v))
            })
            .collect::<Result<Vec<_>>>()?;
        let form_bits = pairs
            .iter()
            .map(|&(i, j)| {
                let s = x.alt.upper_table(&x.alt.basis_form(i, j), m);
                x.decompose(&s).map(|v| to_bits(&v))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut moves = Vec::new();
        let mut form_moves = Vec::new();
        for p in 0..rank {
            for q in 0..rank {
                if p == q {
                    continue;
                }
                let phi = transvection(&g, p, q);
                let images: Vec<u64> = x.matrix_of(&SymElement::Aut(phi.clone()))?.iter().map(|c| to_bits(c)).collect();
                let on_forms = pairs
                    .iter()
                    .map(|&(i, j)| {
                        let beta = x.alt.basis_form(i, j);
                        let moved = x.alt.pullback(&beta, &phi.inverse()?);
                        Ok(to_bits(&moved))
                    })
                    .collect::<Result<Vec<_>>>()?;
                moves.push(((p, q), images));
                form_moves.push(on_forms);
            }
        }
        Ok(SplittingProblem { x, pairs, char_bits, form_bits, moves, form_moves })
    }

    fn char_class(&self, chi: u64) -> u64 {
        apply_bits(&self.char_bits, chi)
    }

    /// `ζ(e_k) = χ_k + s_k` as a bit vector of `X`.
    fn zeta(&self, chis: &[u64], k: usize) -> u64 {
        self.char_class(chis[k]) ^ self.form_bits[k]
    }

    fn holds(&self, chis: &[u64], k: usize, mv: usize) -> bool {
        let lhs_support = self.form_moves[mv][k];
        let lhs = (0..self.pairs.len()).filter(|&l| (lhs_support >> l) & 1 == 1).fold(0u64, |acc, l| acc ^ self.zeta(chis, l));
        let rhs = apply_bits(&self.moves[mv].1, self.zeta(chis, k));
        lhs == rhs
    }

    fn last_index(&self, k: usize, mv: usize) -> usize {
        let support = self.form_moves[mv][k];
        (0..self.pairs.len()).filter(|&l| (support >> l) & 1 == 1).chain([k]).max().unwrap_or(k)
    }

    /// `true` when `χ` (one character per pair, as bit masks) defines an equivariant section.
    pub fn is_section(&self, chis: &[u64]) -> bool {
        (0..self.pairs.len()).all(|k| (0..self.moves.len()).all(|mv| self.holds(chis, k, mv)))
    }

    /// Class in `X` of `χ + s⟨i,j⟩` for the pair with index `k`, in coordinates of `X`.
    pub fn class_of(&self, chi: &[u64], k: usize) -> Vec<u64> {
        let bits = self.char_class(to_bits(chi)) ^ self.form_bits[k];
        (0..self.x.dim()).map(|i| (bits >> i) & 1).collect()
    }

    /// Image of a class under the transvection `x_p -> x_p + x_q`.
    pub fn transvect(&self, x: &[u64], p: usize, q: usize) -> Vec<u64> {
        let mv = self.moves.iter().position(|(pq, _)| *pq == (p, q)).expect("transvection present");
        let bits = apply_bits(&self.moves[mv].1, to_bits(x));
        (0..self.x.dim()).map(|i| (bits >> i) & 1).collect()
    }

    /// Class of the character `χ` in `X`.
    pub fn char_class_of(&self, chi: &[u64]) -> Vec<u64> {
        let bits = self.char_class(to_bits(chi));
        (0..self.x.dim()).map(|i| (bits >> i) & 1).collect()
    }

    pub fn conditions(&self) -> usize {
        self.pairs.len() * self.moves.len()
    }
}

/// Exhaustive search for `ζ(x_i* ∧ x_j*) = χ_ij + s⟨i,j⟩` commuting with every transvection.
pub fn section_search(rank: usize) -> Result<SectionOutcome> {
    if rank == 1 {
        return Ok(SectionOutcome { rank, pairs: vec![], section: Some(vec![]), candidates: 1, nodes: 0, conditions: 0 });
    }
    let prob = SplittingProblem::new(rank)?;
    let c = prob.pairs.len();
    let mut due: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c];
    for k in 0..c {
        for mv in 0..prob.moves.len() {
            due[prob.last_index(k, mv)].push((k, mv));
        }
    }
    let mut chis = vec![0u64; c];
    let mut nodes = 0u64;
    let found = backtrack(&prob, &due, &mut chis, 0, rank, &mut nodes);
    let section = found.then(|| chis.iter().map(|&b| (0..rank).map(|i| (b >> i) & 1).collect()).collect());
    Ok(SectionOutcome {
        rank,
        pairs: prob.pairs.clone(),
        section,
        candidates: 1u128 << (rank * c),
        nodes,
        conditions: prob.conditions(),
    })
}

fn backtrack(prob: &SplittingProblem, due: &[Vec<(usize, usize)>], chis: &mut [u64], depth: usize, rank: usize, nodes: &mut u64) -> bool {
    if depth == chis.len() {
        return true;
    }
    for chi in 0..(1u64 << rank) {
        *nodes += 1;
        chis[depth] = chi;
        if due[depth].iter().all(|&(k, mv)| prob.holds(chis, k, mv)) && backtrack(prob, due, chis, depth + 1, rank, nodes) {
            return true;
        }
    }
    chis[depth] = 0;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, i: usize) -> Vec<u64> {
        (0..n).map(|j| u64::from(i == j)).collect()
    }

    #[test]
    fn rank_two_splits_with_the_sum_of_dual_basis() {
        let out = section_search(2).unwrap();
        assert_eq!(out.section, Some(vec![vec![1, 1]]));
    }

    #[test]
    fn rank_three_and_four_do_not_split() {
        for n in [3, 4] {
            let out = section_search(n).unwrap();
            assert!(!out.splits());
            assert!(out.nodes > 0 && (out.nodes as u128) < out.candidates);
        }
    }

    #[test]
    fn rank_one_is_vacuous() {
        assert!(section_search(1).unwrap().splits());
        assert!(matches!(section_search(5), Err(Error::Budget { .. })));
    }

    #[test]
    fn naive_enumeration_agrees() {
        for n in [2usize, 3] {
            let prob = SplittingProblem::new(n).unwrap();
            let c = prob.pairs.len();
            let witnesses = (0..1u64 << (n * c))
                .filter(|code| {
                    let chis: Vec<u64> = (0..c).map(|k| (code >> (k * n)) & ((1 << n) - 1)).collect();
                    prob.is_section(&chis)
                })
                .count();
            assert_eq!(witnesses, if n == 2 { 1 } else { 0 });
        }
    }

    #[test]
    fn transvections_act_on_forms_as_stated() {
        for n in [2usize, 3, 4] {
            let prob = SplittingProblem::new(n).unwrap();
            let zero = vec![0u64; n];
            let form = |i: usize, j: usize| {
                let k = prob.pairs.iter().position(|&q| q == (i.min(j), i.max(j))).unwrap();
                prob.class_of(&zero, k)
            };
            let add = |a: &[u64], b: &[u64]| prob.x.add(a, b);
            for &(i, j) in &prob.pairs {
                let s = form(i, j);
                for p in 0..n {
                    for q in 0..n {
                        if p == q {
                            continue;
                        }
                        let expected = if q != i && q != j {
                            s.clone()
                        } else if (p, q) == (i, j) {
                            add(&s, &prob.char_class_of(&unit(n, i)))
                        } else if (p, q) == (j, i) {
                            add(&s, &prob.char_class_of(&unit(n, j)))
                        } else if q == i {
                            add(&s, &form(p, j))
                        } else {
                            add(&s, &form(i, p))
                        };
                        assert_eq!(prob.transvect(&s, p, q), expected, "n={n} s<{i},{j}> t_{p}{q}");
                    }
                }
            }
        }
    }
}
