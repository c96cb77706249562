//! Symmetric-function calculus on virtual bundles.
//!
//! A bundle is stored as `(rank, total Chern class)`. Chern roots are never
//! materialised: every quantity that would be written as a symmetric
//! expression in the roots (power sums, `Σ F(α_i)`, `Π F(α_i)`) is computed
//! from the elementary symmetric functions `c_i` through Newton's identities.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, is_signed_unit, qi};
use crate::ring::{RingElement, RingSpec, ScalarDomain};
use crate::series::{make_standard_series, StandardSeries, TruncatedSeries};

/// Virtual bundle: integer rank (possibly negative) and total Chern class
/// with constant term exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleClass {
    rank: i64,
    total_chern: RingElement,
}

impl BundleClass {
    pub fn new(rank: i64, total_chern: RingElement) -> Result<Self> {
        let c0 = total_chern.constant_term();
        if !c0.is_one() {
            return Err(Error::InvalidInput(format!(
                "total Chern class must have constant term 1, found {c0}"
            )));
        }
        Ok(Self { rank, total_chern })
    }

    /// Trivial bundle of the given rank.
    pub fn trivial(spec: &RingSpec, rank: i64) -> Self {
        Self {
            rank,
            total_chern: RingElement::one(spec),
        }
    }

    /// Line bundle with first Chern class `c1` (which must be nilpotent).
    pub fn line(c1: &RingElement) -> Result<Self> {
        if !c1.constant_term().is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        Self::new(1, &RingElement::one(c1.spec()) + c1)
    }

    /// `(rank, 1 + c_1 + c_2 + ...)` from individual classes; `classes[i]`
    /// is `c_{i+1}` and should be homogeneous of degree `i+1`.
    pub fn from_chern_classes(spec: &RingSpec, rank: i64, classes: &[RingElement]) -> Result<Self> {
        let mut total = RingElement::one(spec);
        for c in classes {
            total = total.try_add(c)?;
        }
        Self::new(rank, total)
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total_chern(&self) -> &RingElement {
        &self.total_chern
    }

    pub fn spec(&self) -> &RingSpec {
        self.total_chern.spec()
    }

    /// `c_i` as the degree-`i` component of the total class.
    pub fn chern_class(&self, i: u32) -> RingElement {
        self.total_chern.graded_component(i)
    }

    /// `[c_1, ..., c_m]`.
    pub fn chern_classes(&self, m: u32) -> Vec<RingElement> {
        (1..=m).map(|i| self.chern_class(i)).collect()
    }

    /// The virtual bundle `-E`: negated rank, inverted total class.
    pub fn negate(&self) -> Self {
        Self {
            rank: -self.rank,
            total_chern: self
                .total_chern
                .invert()
                .expect("total Chern class has constant term 1"),
        }
    }

    /// `k E` for any integer `k`.
    pub fn multiple(&self, k: i64) -> Self {
        let base = if k < 0 { self.negate() } else { self.clone() };
        Self {
            rank: self.rank * k,
            total_chern: base.total_chern.pow(k.unsigned_abs() as u32),
        }
    }

    /// Dual bundle under the additive group law: `c_i ↦ (-1)^i c_i`.
    ///
    /// Only meaningful where roots negate under duality (Chow-type models);
    /// K-theory duals are formed from line classes directly.
    pub fn dual_additive(&self) -> Self {
        let mut total = RingElement::zero(self.spec());
        for i in 0..=self.spec().total_degree() {
            let c = self.chern_class(i);
            total = if i % 2 == 0 { &total + &c } else { &total - &c };
        }
        Self {
            rank: self.rank,
            total_chern: total,
        }
    }

    pub fn widen(&self) -> Self {
        Self {
            rank: self.rank,
            total_chern: self.total_chern.widen(),
        }
    }

    /// Moves the bundle into another ring with the same shape (see
    /// [`RingElement::cast`]).
    pub fn cast(&self, spec: &RingSpec) -> Result<Self> {
        Ok(Self {
            rank: self.rank,
            total_chern: self.total_chern.cast(spec)?,
        })
    }
}

/// `E ⊕ F`: ranks add, total Chern classes multiply.
pub fn whitney_sum(e: &BundleClass, f: &BundleClass) -> Result<BundleClass> {
    Ok(BundleClass {
        rank: e.rank + f.rank,
        total_chern: e.total_chern.try_mul(&f.total_chern)?,
    })
}

fn check_spec(spec: &RingSpec, xs: &[RingElement]) -> Result<()> {
    match xs.iter().find(|x| x.spec() != spec) {
        Some(_) => Err(Error::SpecMismatch("Newton identity inputs".into())),
        None => Ok(()),
    }
}

/// Power sums `p_1..p_m` of the roots from elementary symmetric functions
/// `e_1..e_r` (zero beyond `r`):
/// `p_k = Σ_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k`.
pub fn newton_e_to_p(spec: &RingSpec, e: &[RingElement], m: usize) -> Result<Vec<RingElement>> {
    check_spec(spec, e)?;
    let zero = RingElement::zero(spec);
    let ei = |i: usize| e.get(i - 1).unwrap_or(&zero);
    let mut p: Vec<RingElement> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = ei(k).times(k as i64);
        if k % 2 == 0 {
            acc = -acc;
        }
        for i in 1..k {
            let term = ei(i) * &p[k - i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        p.push(acc);
    }
    Ok(p)
}

/// Inverse of [`newton_e_to_p`]: `k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`.
/// Needs division by `1..m`, so the ring must have rational scalars.
pub fn newton_p_to_e(spec: &RingSpec, p: &[RingElement], m: usize) -> Result<Vec<RingElement>> {
    if spec.scalars() == ScalarDomain::Integers {
        return Err(Error::IntegerDomain);
    }
    check_spec(spec, p)?;
    let zero = RingElement::zero(spec);
    let pi = |i: usize| p.get(i - 1).unwrap_or(&zero);
    let mut e: Vec<RingElement> = vec![RingElement::one(spec)];
    for k in 1..=m {
        let mut acc = RingElement::zero(spec);
        for i in 1..=k {
            let term = &e[k - i] * pi(i);
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))?);
    }
    e.remove(0);
    Ok(e)
}

fn check_order(series: &TruncatedSeries, spec: &RingSpec) -> Result<usize> {
    let needed = spec.total_degree() as usize;
    if series.order() < needed {
        return Err(Error::InsufficientOrder {
            order: series.order(),
            needed,
        });
    }
    Ok(needed)
}

/// `F_+(E) = Σ F(α_i) = F_0 rank + Σ_{n≥1} F_n p_n`.
///
/// The series must reach the ring's total degree. Fails with
/// [`Error::IntegerDomain`] if `F` is fractional and the ring integral.
pub fn additive_extension(series: &TruncatedSeries, e: &BundleClass) -> Result<RingElement> {
    let spec = e.spec();
    let n = check_order(series, spec)?;
    let p = newton_e_to_p(spec, &e.chern_classes(n as u32), n)?;
    let mut acc = RingElement::constant(spec, series.coeff(0) * qi(e.rank))?;
    for (k, pk) in p.iter().enumerate() {
        let c = series.coeff(k + 1);
        if !c.is_zero() && !pk.is_zero() {
            acc = &acc + &pk.scale(&c)?;
        }
    }
    Ok(acc)
}

/// `F_×(E) = Π F(α_i)`, a unit of the ring.
///
/// Computed as `F_0^rank · exp((log F/F_0)_+(E))` over the rationals and
/// narrowed back when the ring is integral. Negative ranks give
/// `F_×(-E) = F_×(E)^{-1}`.
pub fn multiplicative_extension(series: &TruncatedSeries, e: &BundleClass) -> Result<RingElement> {
    let spec = e.spec();
    let f0 = series.coeff(0);
    let unit = match spec.scalars() {
        ScalarDomain::Integers => is_signed_unit(&f0),
        ScalarDomain::Rationals => !f0.is_zero(),
    };
    if !unit {
        return Err(Error::NonUnitConstant);
    }
    let n = check_order(series, spec)?;
    let normalized = series.with_order(n).scale(&f0.recip());
    let log = normalized.log()?;
    let wide = e.widen();
    let exponent = additive_extension(&log, &wide)?;
    let exp = make_standard_series(StandardSeries::Exponential, n);
    let body = RingElement::eval_series(&exp, &exponent)?;
    let scale = pow_signed(&f0, e.rank);
    body.scale(&scale)?.cast(spec)
}

fn pow_signed(base: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// `ch(E)`: the additive extension of `e^t`, over the rationals.
pub fn chern_character(e: &BundleClass) -> Result<RingElement> {
    let wide = e.widen();
    let order = wide.spec().total_degree() as usize;
    additive_extension(&make_standard_series(StandardSeries::Exponential, order), &wide)
}

/// `Td(E)`: the multiplicative extension of `t / (1 - e^{-t})`, over the rationals.
pub fn todd_class(e: &BundleClass) -> Result<RingElement> {
    let wide = e.widen();
    let order = wide.spec().total_degree() as usize;
    multiplicative_extension(&make_standard_series(StandardSeries::Todd, order), &wide)
}

/// Recovers `(rank, c(E))` from `ch(E)`: `p_n = n! ch_n`, then Newton.
pub fn chern_from_character(character: &RingElement, rank: i64) -> Result<BundleClass> {
    let spec = character.spec();
    if spec.scalars() == ScalarDomain::Integers {
        return Err(Error::IntegerDomain);
    }
    let degree0 = character.graded_component(0).constant_term();
    if degree0 != qi(rank) {
        return Err(Error::RankMismatch {
            rank,
            found: crate::rational::fmt_rational(&degree0),
        });
    }
    let n = spec.total_degree() as usize;
    let p: Vec<RingElement> = (1..=n)
        .map(|k| {
            character
                .graded_component(k as u32)
                .scale(&BigRational::from_integer(factorial(k)))
        })
        .collect::<Result<_>>()?;
    let e = newton_p_to_e(spec, &p, n)?;
    BundleClass::from_chern_classes(spec, rank, &e)
}

/// Ring of abstract Chern-class symbols `c1..ck` (with `c_i` of degree `i`),
/// truncated above degree `order`, over the rationals.
pub fn chern_symbol_ring(names: &[String], order: u32) -> Result<RingSpec> {
    let weights: Vec<u32> = (1..=names.len() as u32).collect();
    let bounds: Vec<u32> = weights.iter().map(|w| order / w).collect();
    RingSpec::weighted(names, &bounds, &weights, Some(order), ScalarDomain::Rationals)
}

/// `(rank, 1 + c1 + ... + ck)` in [`chern_symbol_ring`] with the default
/// names `c1..ck`.
pub fn symbolic_bundle(rank: i64, num_classes: usize, order: u32) -> Result<BundleClass> {
    let names: Vec<String> = (1..=num_classes).map(|i| format!("c{i}")).collect();
    let spec = chern_symbol_ring(&names, order)?;
    let classes: Vec<RingElement> = (0..num_classes).map(|i| RingElement::var(&spec, i)).collect();
    BundleClass::from_chern_classes(&spec, rank, &classes)
}
