use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial with nonnegative integer coefficients, lowest degree first,
/// without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coefficients: Vec<u64>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `x^power`.
    pub fn monomial(power: usize) -> Self {
        let mut c = vec![0; power + 1];
        c[power] = 1;
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// Coefficientwise `self <= other`, shorter sequences padded with zeros.
    pub fn le_coefficientwise(&self, other: &Self) -> bool {
        let len = self.coefficients.len().max(other.coefficients.len());
        (0..len).all(|i| self.coefficient(i) <= other.coefficient(i))
    }

    /// `x^width * p(1/x)`; requires `width >= degree`.
    pub fn reversed(&self, width: usize) -> Self {
        assert!(self.coefficients.len() <= width + 1, "reversal width below degree");
        Self::new((0..=width).rev().map(|i| self.coefficient(i)).collect())
    }

    /// Coefficients sorted ascending, zeros included up to `len` entries.
    pub fn coefficient_multiset(&self, len: usize) -> Vec<u64> {
        let mut c: Vec<u64> = (0..len.max(self.coefficients.len())).map(|i| self.coefficient(i)).collect();
        c.sort_unstable();
        c
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        Polynomial::new((0..len).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::default();
        }
        let mut out = vec![0u64; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// The h*-polynomial of a nonempty lattice polytope: constant term 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HStarPolynomial(Polynomial);

impl HStarPolynomial {
    pub fn from_coefficients(coefficients: Vec<u64>) -> Result<Self> {
        Self::try_from(Polynomial::new(coefficients))
    }

    pub fn one() -> Self {
        Self(Polynomial::one())
    }

    /// Generating function of a histogram: `counts[i]` is the coefficient of `x^i`.
    pub(crate) fn from_histogram(counts: Vec<u64>) -> Result<Self> {
        Self::from_coefficients(counts)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn coefficients(&self) -> &[u64] {
        self.0.coefficients()
    }

    /// Normalized volume of the polytope.
    pub fn volume(&self) -> u64 {
        self.0.eval_at_one()
    }

    pub fn le_coefficientwise(&self, other: &Self) -> bool {
        self.0.le_coefficientwise(&other.0)
    }

    pub fn product(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }
}

impl TryFrom<Polynomial> for HStarPolynomial {
    type Error = Error;

    fn try_from(p: Polynomial) -> Result<Self> {
        if p.coefficient(0) != 1 {
            return Err(Error::Structural(format!("h* has constant term {}, expected 1", p.coefficient(0))));
        }
        Ok(Self(p))
    }
}

impl fmt::Display for HStarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
