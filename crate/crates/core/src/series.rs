//! Truncated univariate formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores exactly the coefficients
//! `c_0..=c_N`; everything of degree above `N` is discarded. Binary operations
//! on series of different orders truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, fmt_rational};

/// Power series `c_0 + c_1 t + ... + c_N t^N`, truncated at order `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

/// The named series used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardSeries {
    /// `(1 - e^{-t}) / t = Σ (-1)^n t^n / (n+1)!`
    ExpDeficit,
    /// `t / (1 - e^{-t})`, the inverse of [`StandardSeries::ExpDeficit`].
    Todd,
    /// `e^t`
    Exponential,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_N`. An empty list is the zero series of order 0.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            return Self::zero(0);
        }
        Self { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        let mut out = Self::zero(order);
        for (i, c) in coeffs.iter().take(order + 1).enumerate() {
            out.coeffs[i] = BigRational::from_integer(BigInt::from(*c));
        }
        out
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = c;
        out
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// The series `t` (zero when `order == 0`).
    pub fn variable(order: usize) -> Self {
        let mut out = Self::zero(order);
        if order >= 1 {
            out.coeffs[1] = BigRational::one();
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^n`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Same series viewed at a different order: truncates or zero-pads.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplies by `t`, dropping the top coefficient.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Self { coeffs }
    }

    /// Multiplicative inverse. Requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `self ∘ inner`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.with_order(order);
        // Horner: ((c_N g + c_{N-1}) g + ...) g + c_0
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse: the series `g` with `self ∘ g = g ∘ self = t`.
    ///
    /// Coefficients are solved one degree at a time: the degree-`k` coefficient
    /// of `self ∘ g` is `c_1 g_k` plus terms in `g_1..g_{k-1}` only.
    pub fn reversion(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::NotReversible);
        }
        let c1 = &self.coeffs[1];
        if !self.coeffs[0].is_zero() || c1.is_zero() {
            return Err(Error::NotReversible);
        }
        let n = self.order();
        let inv1 = c1.recip();
        let mut g = Self::zero(n);
        g.coeffs[1] = inv1.clone();
        for k in 2..=n {
            let err = self.compose(&g)?.coeffs[k].clone();
            g.coeffs[k] = -(err * &inv1);
        }
        Ok(g)
    }

    /// `log(self)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        // log f = ∫ f'/f
        let n = self.order();
        let quotient = &self.derivative() * &self.inverse()?;
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = quotient.coeff(k - 1) / BigRational::from_integer(BigInt::from(k));
        }
        Ok(out)
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let e = make_standard_series(StandardSeries::Exponential, self.order());
        e.compose(self)
    }

    /// Formal derivative, keeping the order (top coefficient becomes 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k - 1] = &self.coeffs[k] * BigRational::from_integer(BigInt::from(k));
        }
        out
    }
}

fn zip_min<'a>(
    a: &'a TruncatedSeries,
    b: &'a TruncatedSeries,
) -> impl Iterator<Item = (&'a BigRational, &'a BigRational)> {
    a.coeffs.iter().zip(b.coeffs.iter())
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: zip_min(self, rhs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: zip_min(self, rhs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for TruncatedSeries {
    /// Coefficient list, e.g. `[1, 1/2, 1/12, 0, -1/720]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&fmt_rational(c))?;
        }
        f.write_str("]")
    }
}

/// The named series truncated at `order`.
pub fn make_standard_series(name: StandardSeries, order: usize) -> TruncatedSeries {
    match name {
        StandardSeries::Exponential => TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| BigRational::new(BigInt::one(), factorial(n)))
                .collect(),
        },
        StandardSeries::ExpDeficit => TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| {
                    let c = BigRational::new(BigInt::one(), factorial(n + 1));
                    if n % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect(),
        },
        StandardSeries::Todd => make_standard_series(StandardSeries::ExpDeficit, order)
            .inverse()
            .expect("exp_deficit has constant term 1"),
    }
}
