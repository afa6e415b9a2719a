//! Actions of `C_p` on a finite abelian group by automorphisms.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Endomorphism};
use serde::Serialize;

/// `t` of order dividing `p`, together with its dual `chi -> chi ∘ t` on characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CpAction {
    group: AbelianGroup,
    p: u64,
    t: Endomorphism,
    dual_t: Endomorphism,
}

/// Checks that `p` is prime and does not exceed any prime divisor of `|G|`.
pub fn check_prime(g: &AbelianGroup, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime { p, group: g.descriptor(), reason: "not prime".into() });
    }
    if let Some(q) = g.smallest_prime() {
        if p > q {
            return Err(Error::InvalidPrime {
                p,
                group: g.descriptor(),
                reason: format!("larger than the prime divisor {q} of |G|"),
            });
        }
    }
    Ok(())
}

impl CpAction {
    pub fn new(group: &AbelianGroup, p: u64, t: Endomorphism) -> Result<Self> {
        check_prime(group, p)?;
        if t.rank() != group.rank() {
            return Err(Error::Shape { expected: group.rank(), found: t.rank() });
        }
        if !t.is_automorphism() || !t.pow(p).is_identity() {
            return Err(Error::InvalidMatrix(format!("t does not satisfy t^{p} = 1")));
        }
        let dual_t = t.dual();
        Ok(CpAction { group: group.clone(), p, t, dual_t })
    }

    /// Action given by the images of the generators (row convention).
    pub fn from_images(group: &AbelianGroup, p: u64, images: &[Vec<i64>]) -> Result<Self> {
        Self::new(group, p, Endomorphism::from_images(group, images)?)
    }

    pub fn trivial(group: &AbelianGroup, p: u64) -> Result<Self> {
        Self::new(group, p, Endomorphism::identity(group))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> &Endomorphism {
        &self.t
    }

    pub fn dual_t(&self) -> &Endomorphism {
        &self.dual_t
    }

    pub fn is_trivial(&self) -> bool {
        self.t.is_identity()
    }

    /// `a ⊳ t^i`.
    pub fn act(&self, a: &[u64], i: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        for _ in 0..i % self.p {
            x = self.t.apply(&x);
        }
        x
    }

    /// Action with generator `t^k`.
    pub fn twist(&self, k: u64) -> Result<CpAction> {
        if k % self.p == 0 {
            return Err(Error::Precondition(format!("twist exponent {k} is divisible by {}", self.p)));
        }
        CpAction::new(&self.group, self.p, self.t.pow(k % self.p))
    }

    /// `phi_i = 1 + t + ... + t^(i-1)` acting on characters.
    pub fn dual_phi(&self, i: u64) -> Endomorphism {
        let mut acc = Endomorphism::scalar(&self.group, 0);
        let mut pw = Endomorphism::identity(&self.group);
        for _ in 0..i {
            acc = acc.add(&pw);
            pw = pw.compose(&self.dual_t);
        }
        acc
    }

    /// Norm `phi_p` on characters.
    pub fn dual_norm(&self) -> Endomorphism {
        self.dual_phi(self.p)
    }

    /// Dual action matrix on the character group.
    pub fn dual_action(&self) -> Endomorphism {
        self.dual_t.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_action_examples() {
        let g = AbelianGroup::parse("Z3xZ3").unwrap();
        let triv = CpAction::trivial(&g, 3).unwrap();
        assert!(triv.dual_action().is_identity());
        let a = CpAction::from_images(&g, 3, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.dual_action().images(), vec![vec![1, 0], vec![1, 1]]);
        let h = AbelianGroup::parse("Z9xZ3").unwrap();
        let b = CpAction::from_images(&h, 3, &[vec![1, 2], vec![3, 1]]).unwrap();
        assert_eq!(b.dual_action().images(), vec![vec![1, 1], vec![6, 1]]);
    }

    #[test]
    fn validation() {
        let g = AbelianGroup::parse("Z3xZ3").unwrap();
        assert!(CpAction::trivial(&g, 5).is_err());
        assert!(CpAction::trivial(&g, 4).is_err());
        assert!(CpAction::from_images(&g, 3, &[vec![0, 1], vec![1, 0]]).is_err());
        let n = AbelianGroup::parse("Z3xZ3").unwrap();
        assert!(CpAction::from_images(&n, 2, &[vec![2, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn twist_powers() {
        let g = AbelianGroup::parse("Z3xZ3").unwrap();
        let a = CpAction::from_images(&g, 3, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.twist(1).unwrap(), a);
        assert_eq!(a.twist(2).unwrap().t(), &a.t().pow(2));
        assert!(a.twist(3).is_err());
    }
}
