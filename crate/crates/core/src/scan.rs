//! Polynomial fits of nontrivial isotype counts across primes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::catalog::catalog_actions;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::orbits::classify_classes;

/// A family `p ↦ (G(p), classes)` whose nontrivial count is scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanFamily {
    /// `Z_p`, all actions.
    Cyclic,
    /// `Z_p x Z_p`, all actions.
    Plane,
    /// `Z_p^3` restricted to the decomposable action.
    CubeDecomposable,
    /// `Z_p^3`, all actions.
    Cube,
    /// `Z_{p^2} x Z_p`, all actions.
    GammaTwo,
}

impl ScanFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "Zp" => Ok(ScanFamily::Cyclic),
            "Zp^2" | "ZpxZp" => Ok(ScanFamily::Plane),
            "Zp^3:decomposable" => Ok(ScanFamily::CubeDecomposable),
            "Zp^3" => Ok(ScanFamily::Cube),
            "Zp^2xZp" => Ok(ScanFamily::GammaTwo),
            other => Err(Error::Parse(format!("{other} (families: Zp, Zp^2, Zp^3, Zp^3:decomposable, Zp^2xZp)"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScanFamily::Cyclic => "Zp",
            ScanFamily::Plane => "Zp^2",
            ScanFamily::CubeDecomposable => "Zp^3:decomposable",
            ScanFamily::Cube => "Zp^3",
            ScanFamily::GammaTwo => "Zp^2xZp",
        }
    }

    pub fn group(&self, p: u64) -> AbelianGroup {
        match self {
            ScanFamily::Cyclic => AbelianGroup::elementary(p, 1),
            ScanFamily::Plane => AbelianGroup::elementary(p, 2),
            ScanFamily::CubeDecomposable | ScanFamily::Cube => AbelianGroup::elementary(p, 3),
            ScanFamily::GammaTwo => AbelianGroup::new(&[p * p, p]).expect("prime powers"),
        }
    }

    /// Number of nontrivial isotypes for the prime `p`.
    pub fn count(&self, p: u64) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let g = self.group(p);
        let mut classes = catalog_actions(&g, p)?;
        if *self == ScanFamily::CubeDecomposable {
            classes.retain(|c| c.family.tag() == "elementary-decomposable");
        }
        Ok(classify_classes(&g, p, &classes)?.nontrivial as u64)
    }
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    pub coefficients: Vec<BigRational>,
}

impl RationalPoly {
    /// Lagrange interpolation through the given points.
    pub fn interpolate(points: &[(u64, u64)]) -> Self {
        let mut coefficients = vec![BigRational::zero(); points.len()];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, &(xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let xj = BigRational::from_integer(BigInt::from(xj));
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c.clone();
                    next[k] -= c * &xj;
                }
                basis = next;
                denom *= BigRational::from_integer(BigInt::from(xi)) - xj;
            }
            let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
            for (k, c) in basis.into_iter().enumerate() {
                coefficients[k] += c * &scale;
            }
        }
        let mut p = RationalPoly { coefficients };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(|c| c.is_zero()) {
            self.coefficients.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(x));
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// `true` when the polynomial equals `Σ c_k p^k` for the given integers.
    pub fn equals_integers(&self, coeffs: &[i64]) -> bool {
        let mut other = RationalPoly { coefficients: coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect() };
        other.trim();
        *self == other
    }

    /// Rendering in the variable `p`, highest degree first.
    pub fn render(&self) -> String {
        if self.coefficients.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "p".into(),
                _ => format!("p^{k}"),
            };
            if abs.is_one() && k > 0 {
                out.push_str(&mono);
            } else if abs.is_integer() {
                out.push_str(&format!("{}{mono}", abs.numer()));
            } else {
                out.push_str(&format!("({}/{}){mono}", abs.numer(), abs.denom()));
            }
        }
        out
    }
}

/// Value at a held-out prime compared against the fit.
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub p: u64,
    pub observed: u64,
    pub predicted: String,
    pub residual: String,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.residual == "0"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub points: Vec<(u64, u64)>,
    pub polynomial: String,
    pub degree: Option<usize>,
    pub integer_coefficients: bool,
    pub residuals: Vec<Residual>,
    #[serde(skip)]
    pub fit: RationalPoly,
}

/// Fits the counts on `fit_primes` and evaluates the fit on `held_out` primes.
pub fn conjecture_scan(family: ScanFamily, fit_primes: &[u64], held_out: &[u64], degree_bound: usize) -> Result<ScanReport> {
    let mut primes = fit_primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() < degree_bound + 1 {
        return Err(Error::Precondition(format!(
            "a fit of degree <= {degree_bound} needs {} distinct primes, got {}",
            degree_bound + 1,
            primes.len()
        )));
    }
    let points: Vec<(u64, u64)> = primes.iter().map(|&p| family.count(p).map(|n| (p, n))).collect::<Result<_>>()?;
    let fit = RationalPoly::interpolate(&points);
    let residuals = held_out
        .iter()
        .map(|&p| {
            let observed = family.count(p)?;
            let predicted = fit.eval(p);
            let residual = BigRational::from_integer(BigInt::from(observed)) - &predicted;
            Ok(Residual { p, observed, predicted: predicted.to_string(), residual: residual.to_string() })
        })
        .collect::<Result<_>>()?;
    Ok(ScanReport {
        family: family.name().into(),
        points,
        polynomial: fit.render(),
        degree: fit.degree(),
        integer_coefficients: fit.has_integer_coefficients(),
        residuals,
        fit,
    })
}
