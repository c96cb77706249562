//! Truncated multivariate polynomial rings `S[x_1..x_k] / (x_i^{d_i+1})`.
//!
//! This is the carrier of every cohomology and K-theory computation in the
//! crate: the ring of `P^{d_1} x ... x P^{d_k}` is exactly such a quotient.
//! Scalars `S` are either the integers or the rationals; both are stored as
//! [`BigRational`], with the integer domain enforced as an invariant.
//!
//! Generators carry a positive weight (cohomological degree). Hyperplane
//! generators have weight 1; abstract Chern-class symbols `c_i` have weight
//! `i`. A ring may additionally cap the total weighted degree, which is how
//! symbolic rings of "characteristic classes up to degree N" are modeled.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, is_signed_unit};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarDomain {
    Integers,
    Rationals,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct SpecInner {
    names: Vec<String>,
    bounds: Vec<u32>,
    weights: Vec<u32>,
    degree_cap: Option<u32>,
    scalars: ScalarDomain,
}

/// Shape of a truncated polynomial ring. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec(Arc<SpecInner>);

impl RingSpec {
    /// Ring with weight-1 generators `names[i]` satisfying `x_i^{bounds[i]+1} = 0`.
    pub fn new<S: AsRef<str>>(names: &[S], bounds: &[u32], scalars: ScalarDomain) -> Result<Self> {
        Self::weighted(names, bounds, &vec![1; names.len()], None, scalars)
    }

    /// General constructor: per-generator weights and an optional cap on the
    /// total weighted degree.
    pub fn weighted<S: AsRef<str>>(
        names: &[S],
        bounds: &[u32],
        weights: &[u32],
        degree_cap: Option<u32>,
        scalars: ScalarDomain,
    ) -> Result<Self> {
        if names.len() != bounds.len() || names.len() != weights.len() {
            return Err(Error::InvalidInput(
                "names, bounds and weights must have equal length".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidInput("generator weights must be positive".into()));
        }
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidInput(format!("bad generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate generator name {n:?}")));
            }
        }
        Ok(Self(Arc::new(SpecInner {
            names,
            bounds: bounds.to_vec(),
            weights: weights.to_vec(),
            degree_cap,
            scalars,
        })))
    }

    /// The coefficient ring itself (no generators).
    pub fn scalars_only(scalars: ScalarDomain) -> Self {
        Self::new::<&str>(&[], &[], scalars).expect("empty spec is valid")
    }

    pub fn num_vars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn bounds(&self) -> &[u32] {
        &self.0.bounds
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn degree_cap(&self) -> Option<u32> {
        self.0.degree_cap
    }

    pub fn scalars(&self) -> ScalarDomain {
        self.0.scalars
    }

    /// Same ring with a different scalar domain.
    pub fn with_scalars(&self, scalars: ScalarDomain) -> Self {
        if scalars == self.scalars() {
            return self.clone();
        }
        Self(Arc::new(SpecInner {
            scalars,
            ..clone_inner(&self.0)
        }))
    }

    /// Largest weighted degree a nonzero monomial can have.
    pub fn total_degree(&self) -> u32 {
        let full: u32 = self
            .0
            .bounds
            .iter()
            .zip(&self.0.weights)
            .map(|(d, w)| d * w)
            .sum();
        self.0.degree_cap.map_or(full, |cap| cap.min(full))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.0.weights).map(|(e, w)| e * w).sum()
    }

    /// Whether a monomial with these exponents survives the relations.
    fn admits(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.0.bounds).all(|(e, d)| e <= d)
            && self
                .0
                .degree_cap
                .is_none_or(|cap| self.weighted_degree(exps) <= cap)
    }

    fn monomial(&self, exps: Vec<u32>) -> Monomial {
        Monomial {
            degree: self.weighted_degree(&exps),
            exps: Reverse(exps),
        }
    }

    fn check_scalar(&self, c: &BigRational) -> Result<()> {
        if self.scalars() == ScalarDomain::Integers && !c.is_integer() {
            return Err(Error::IntegerDomain);
        }
        Ok(())
    }
}

fn clone_inner(s: &SpecInner) -> SpecInner {
    SpecInner {
        names: s.names.clone(),
        bounds: s.bounds.clone(),
        weights: s.weights.clone(),
        degree_cap: s.degree_cap,
        scalars: s.scalars,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, ordered graded-lexicographically: by weighted degree,
/// then with larger exponents on earlier generators first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Reverse<Vec<u32>>,
}

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.exps.0
    }

    /// Weighted degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.exps.0.iter().all(|&e| e == 0)
    }
}

/// Element of a [`RingSpec`] ring: a sparse table of nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    spec: RingSpec,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RingElement {
    pub fn zero(spec: &RingSpec) -> Self {
        Self {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &RingSpec) -> Self {
        Self::from_int(spec, 1)
    }

    pub fn from_int(spec: &RingSpec, c: i64) -> Self {
        Self::constant(spec, BigRational::from_integer(BigInt::from(c)))
            .expect("integers lie in every scalar domain")
    }

    pub fn constant(spec: &RingSpec, c: BigRational) -> Result<Self> {
        Self::monomial(spec, &vec![0; spec.num_vars()], c)
    }

    /// The generator `x_i` (zero when its bound is 0).
    pub fn var(spec: &RingSpec, i: usize) -> Self {
        if spec.bounds()[i] == 0 {
            return Self::zero(spec);
        }
        let mut exps = vec![0; spec.num_vars()];
        exps[i] = 1;
        Self::monomial(spec, &exps, BigRational::one()).expect("generator index in range")
    }

    /// `c * x^exps`. Monomials killed by a degree cap yield zero; exponents
    /// above a nilpotency bound are an error.
    pub fn monomial(spec: &RingSpec, exps: &[u32], c: BigRational) -> Result<Self> {
        check_exponents(spec, exps)?;
        spec.check_scalar(&c)?;
        let mut out = Self::zero(spec);
        if !c.is_zero() && spec.admits(exps) {
            out.terms.insert(spec.monomial(exps.to_vec()), c);
        }
        Ok(out)
    }

    /// Builds an element from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(spec: &RingSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = Self::zero(spec);
        for (exps, c) in terms {
            check_exponents(spec, &exps)?;
            spec.check_scalar(&c)?;
            if spec.admits(&exps) {
                out.accumulate(spec.monomial(exps), c);
            }
        }
        Ok(out)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Terms in canonical (graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .iter()
            .next()
            .filter(|(m, _)| m.is_constant())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// The stored coefficient of `x^exps`, zero if absent.
    pub fn coefficient_of(&self, exps: &[u32]) -> Result<BigRational> {
        check_exponents(&self.spec, exps)?;
        Ok(self
            .terms
            .get(&self.spec.monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    /// Sum of the terms of weighted degree `n`.
    pub fn graded_component(&self, n: u32) -> Self {
        self.filter_terms(|m| m.degree == n)
    }

    /// Sum of the terms of weighted degree at most `n`.
    pub fn truncate_degree(&self, n: u32) -> Self {
        self.filter_terms(|m| m.degree <= n)
    }

    /// Lowest weighted degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree)
    }

    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|m| m.degree == n)
    }

    fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn accumulate(&mut self, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(format!(
                "{} vs {}",
                describe(&self.spec),
                describe(&other.spec)
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), -c);
        }
        Ok(out)
    }

    /// Product, dropping every monomial killed by the nilpotency relations.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let spec = &self.spec;
        let cap = spec.degree_cap();
        let mut out = Self::zero(spec);
        let mut exps = vec![0u32; spec.num_vars()];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let degree = ma.degree + mb.degree;
                if cap.is_some_and(|cap| degree > cap) {
                    // terms are sorted by degree
                    break;
                }
                let mut ok = true;
                for (i, e) in exps.iter_mut().enumerate() {
                    *e = ma.exps.0[i] + mb.exps.0[i];
                    if *e > spec.0.bounds[i] {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    out.accumulate(
                        Monomial {
                            degree,
                            exps: Reverse(exps.clone()),
                        },
                        ca * cb,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `k`; fails if that leaves the integers
    /// in an integer-domain ring.
    pub fn scale(&self, k: &BigRational) -> Result<Self> {
        let out = self.map_coeffs(|c| c * k);
        out.terms.values().try_for_each(|c| self.spec.check_scalar(c))?;
        Ok(out)
    }

    pub fn times(&self, k: i64) -> Self {
        self.map_coeffs(|c| c * BigRational::from_integer(BigInt::from(k)))
    }

    fn map_coeffs(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), f(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit `c + n` with `n` nilpotent: `c^{-1} Σ (-n/c)^k`.
    pub fn invert(&self) -> Result<Self> {
        let c = self.constant_term();
        let unit = match self.spec.scalars() {
            ScalarDomain::Integers => is_signed_unit(&c),
            ScalarDomain::Rationals => !c.is_zero(),
        };
        if !unit {
            return Err(Error::NonUnitConstant);
        }
        let inv_c = c.recip();
        let nilpotent = self.try_sub(&Self::constant(&self.spec, c)?)?;
        let step = nilpotent.map_coeffs(|x| -(x * &inv_c));
        let mut acc = Self::one(&self.spec);
        let mut power = Self::one(&self.spec);
        loop {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.map_coeffs(|x| x * &inv_c))
    }

    /// `Σ_n F_n a^n` for nilpotent `a`: a finite sum.
    ///
    /// Fails with [`Error::InsufficientOrder`] if `a^{N+1} ≠ 0` where `N` is
    /// the order of `F`, and with [`Error::IntegerDomain`] if the result is
    /// not integral in an integer-domain ring.
    pub fn eval_series(series: &TruncatedSeries, a: &RingElement) -> Result<Self> {
        if !a.constant_term().is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        let spec = a.spec();
        let mut acc = Self::zero(spec);
        let mut power = Self::one(spec);
        let mut n = 0usize;
        while !power.is_zero() {
            if n > series.order() {
                return Err(Error::InsufficientOrder {
                    order: series.order(),
                    needed: n,
                });
            }
            let c = series.coeff(n);
            if !c.is_zero() {
                acc = &acc + &power.map_coeffs(|x| x * &c);
            }
            power = &power * a;
            n += 1;
        }
        acc.terms.values().try_for_each(|c| spec.check_scalar(c))?;
        Ok(acc)
    }

    /// Same element over rational scalars.
    pub fn widen(&self) -> Self {
        self.with_spec_unchecked(self.spec.with_scalars(ScalarDomain::Rationals))
    }

    /// Same element over integer scalars; fails if a coefficient is fractional.
    pub fn narrow(&self) -> Result<Self> {
        if self.terms.values().any(|c| !c.is_integer()) {
            return Err(Error::IntegerDomain);
        }
        Ok(self.with_spec_unchecked(self.spec.with_scalars(ScalarDomain::Integers)))
    }

    /// Moves the element into `spec`, which must have the same generators,
    /// bounds and weights (the scalar domain may differ).
    pub fn cast(&self, spec: &RingSpec) -> Result<Self> {
        let (a, b) = (&self.spec.0, &spec.0);
        if a.names != b.names || a.bounds != b.bounds || a.weights != b.weights || a.degree_cap != b.degree_cap {
            return Err(Error::SpecMismatch(format!(
                "{} vs {}",
                describe(&self.spec),
                describe(spec)
            )));
        }
        match spec.scalars() {
            ScalarDomain::Rationals => Ok(self.with_spec_unchecked(spec.clone())),
            ScalarDomain::Integers => self.narrow().map(|e| e.with_spec_unchecked(spec.clone())),
        }
    }

    fn with_spec_unchecked(&self, spec: RingSpec) -> Self {
        Self {
            spec,
            terms: self.terms.clone(),
        }
    }

    /// Evaluates the polynomial representative at `images[i]` for each
    /// generator `x_i`: the ring map sending `x_i ↦ images[i]`.
    ///
    /// Well-definedness (each image satisfying the source's nilpotency
    /// relation) is the caller's responsibility.
    pub fn substitute(&self, target: &RingSpec, images: &[RingElement]) -> Result<Self> {
        if images.len() != self.spec.num_vars() {
            return Err(Error::InvalidInput(format!(
                "expected {} images, got {}",
                self.spec.num_vars(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|im| im.spec() != target) {
            return Err(Error::SpecMismatch(format!(
                "{} vs {}",
                describe(bad.spec()),
                describe(target)
            )));
        }
        let powers: Vec<Vec<RingElement>> = images
            .iter()
            .zip(self.spec.bounds())
            .map(|(im, &d)| {
                let mut ps = vec![RingElement::one(target)];
                for k in 1..=d as usize {
                    let next = &ps[k - 1] * im;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc = RingElement::zero(target);
        for (m, c) in &self.terms {
            let mut term = RingElement::constant(target, c.clone())?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Parses the text produced by [`fmt::Display`], e.g. `1 + 3*x - 1/2*x^2*y`.
    ///
    /// Exponents beyond a nilpotency bound give zero, as in the ring.
    pub fn parse(spec: &RingSpec, text: &str) -> Result<Self> {
        crate::ring_parse::parse_element(spec, text)
    }
}

fn check_exponents(spec: &RingSpec, exps: &[u32]) -> Result<()> {
    if exps.len() != spec.num_vars() || exps.iter().zip(spec.bounds()).any(|(e, d)| e > d) {
        return Err(Error::OutOfBounds);
    }
    Ok(())
}

fn describe(spec: &RingSpec) -> String {
    let vars: Vec<String> = spec
        .names()
        .iter()
        .zip(spec.bounds())
        .map(|(n, d)| format!("{n}^{}", d + 1))
        .collect();
    let base = match spec.scalars() {
        ScalarDomain::Integers => "Z",
        ScalarDomain::Rationals => "Q",
    };
    format!("{base}[{}]", vars.join(","))
}

fn expect_same(a: &RingElement, b: &RingElement) {
    if a.spec != b.spec {
        panic!(
            "ring spec mismatch: {} vs {}",
            describe(&a.spec),
            describe(&b.spec)
        );
    }
}

// Operator forms panic on mismatched specs; the `try_*` methods report it.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        expect_same(self, rhs);
        self.try_add(rhs).expect("specs checked")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        expect_same(self, rhs);
        self.try_sub(rhs).expect("specs checked")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        expect_same(self, rhs);
        self.try_mul(rhs).expect("specs checked")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RingElement {
            type Output = RingElement;
            fn $m(self, rhs: RingElement) -> RingElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    /// Terms in graded-lex order: `1 + 3*x + 3*x^2`, `x1*x2 - 1/2*x2^2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = render_monomial(&self.spec, m);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => f.write_str(&fmt_rational(&abs))?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{}", fmt_rational(&abs), mono)?,
            }
        }
        Ok(())
    }
}

fn render_monomial(spec: &RingSpec, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in spec.names().iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use crate::series::{make_standard_series, StandardSeries};
    use proptest::prelude::*;

    fn zx(d: u32) -> RingSpec {
        RingSpec::new(&["x"], &[d], ScalarDomain::Integers).unwrap()
    }

    fn qx(d: u32) -> RingSpec {
        RingSpec::new(&["x"], &[d], ScalarDomain::Rationals).unwrap()
    }

    fn poly(spec: &RingSpec, coeffs: &[BigRational]) -> RingElement {
        RingElement::from_terms(
            spec,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
        .unwrap()
    }

    fn ipoly(spec: &RingSpec, coeffs: &[i64]) -> RingElement {
        poly(spec, &coeffs.iter().map(|&c| qi(c)).collect::<Vec<_>>())
    }

    #[test]
    fn mul_examples() {
        let r = zx(2);
        let a = ipoly(&r, &[1, 1]);
        assert_eq!(&a * &a, ipoly(&r, &[1, 2, 1]));
        let r1 = zx(1);
        let x = RingElement::var(&r1, 0);
        assert!((&x * &x).is_zero());
        // binomial oracle: (1+x)^3 = 1 + 3x + 3x^2 + x^3, truncated
        assert_eq!(a.pow(3), ipoly(&r, &[1, 3, 3]));
        assert_eq!(a.pow(3).to_string(), "1 + 3*x + 3*x^2");
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let a = RingElement::one(&zx(2));
        let b = RingElement::one(&zx(3));
        assert!(matches!(a.try_add(&b), Err(Error::SpecMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::SpecMismatch(_))));
        let c = RingElement::one(&qx(2));
        assert!(matches!(a.try_mul(&c), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn invert_examples() {
        let r = zx(2);
        assert_eq!(ipoly(&r, &[1, -1]).invert().unwrap(), ipoly(&r, &[1, 1, 1]));
        let r1 = qx(1);
        assert_eq!(
            RingElement::from_int(&r1, 2).invert().unwrap(),
            RingElement::constant(&r1, q(1, 2)).unwrap()
        );
        let rq = qx(2);
        let a = ipoly(&rq, &[1, 3, 3]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, ipoly(&rq, &[1, -3, 6]));
        assert!((&inv * &a).is_one());
        assert_eq!(RingElement::from_int(&r, 2).invert(), Err(Error::NonUnitConstant));
        assert_eq!(RingElement::var(&rq, 0).invert(), Err(Error::NonUnitConstant));
        assert_eq!(
            ipoly(&r, &[-1, 1]).invert().unwrap(),
            ipoly(&r, &[-1, -1, -1])
        );
    }

    #[test]
    fn eval_series_examples() {
        let r = qx(2);
        let x = RingElement::var(&r, 0);
        let e = make_standard_series(StandardSeries::Exponential, 2);
        assert_eq!(
            RingElement::eval_series(&e, &x).unwrap(),
            poly(&r, &[qi(1), qi(1), q(1, 2)])
        );
        // t F(t) with F = (1 - e^{-t}) / t gives 1 - e^{-x}
        let f = make_standard_series(StandardSeries::ExpDeficit, 2);
        let tf = f.shift_up();
        assert_eq!(
            RingElement::eval_series(&tf, &x).unwrap(),
            poly(&r, &[qi(0), qi(1), q(-1, 2)])
        );
        let zero = RingElement::zero(&r);
        let td = make_standard_series(StandardSeries::Todd, 4);
        assert_eq!(RingElement::eval_series(&td, &zero).unwrap(), RingElement::one(&r));
        assert_eq!(
            RingElement::eval_series(&e, &RingElement::one(&r)),
            Err(Error::NonNilpotentArgument)
        );
        let short = make_standard_series(StandardSeries::Exponential, 1);
        assert!(matches!(
            RingElement::eval_series(&short, &x),
            Err(Error::InsufficientOrder { .. })
        ));
        let xz = RingElement::var(&zx(2), 0);
        assert_eq!(RingElement::eval_series(&e, &xz), Err(Error::IntegerDomain));
    }

    #[test]
    fn graded_components() {
        let r = zx(2);
        assert_eq!(ipoly(&r, &[1, 3, 3]).graded_component(1), ipoly(&r, &[0, 3]));
        let r2 = RingSpec::new(&["x1", "x2"], &[1, 1], ScalarDomain::Integers).unwrap();
        let m = RingElement::var(&r2, 0) * RingElement::var(&r2, 1);
        let a = &m + &RingElement::var(&r2, 0);
        assert_eq!(a.graded_component(2), m);
        let r3 = qx(3);
        let e = make_standard_series(StandardSeries::Exponential, 3);
        let ex = RingElement::eval_series(&e, &RingElement::var(&r3, 0)).unwrap();
        assert_eq!(
            ex.graded_component(3),
            RingElement::monomial(&r3, &[3], q(1, 6)).unwrap()
        );
    }

    #[test]
    fn coefficient_lookup() {
        let r = zx(2);
        let a = ipoly(&r, &[1, 1]).pow(3);
        assert_eq!(a.coefficient_of(&[2]).unwrap(), qi(3));
        assert_eq!(ipoly(&r, &[1]).coefficient_of(&[1]).unwrap(), qi(0));
        assert_eq!(a.coefficient_of(&[3]), Err(Error::OutOfBounds));
        assert_eq!(a.coefficient_of(&[0, 0]), Err(Error::OutOfBounds));
    }

    #[test]
    fn integer_domain_rejects_fractions() {
        let r = zx(2);
        assert_eq!(RingElement::constant(&r, q(1, 2)), Err(Error::IntegerDomain));
        assert_eq!(RingElement::one(&r).scale(&q(1, 3)), Err(Error::IntegerDomain));
        let half = RingElement::constant(&qx(2), q(1, 2)).unwrap();
        assert_eq!(half.narrow(), Err(Error::IntegerDomain));
        assert_eq!(ipoly(&r, &[1, 2]).widen().narrow().unwrap(), ipoly(&r, &[1, 2]));
    }

    #[test]
    fn weighted_degree_cap() {
        // c1 (weight 1), c2 (weight 2), everything above degree 3 vanishes
        let s = RingSpec::weighted(&["c1", "c2"], &[3, 1], &[1, 2], Some(3), ScalarDomain::Rationals)
            .unwrap();
        let c1 = RingElement::var(&s, 0);
        let c2 = RingElement::var(&s, 1);
        assert_eq!((&c1 * &c2).to_string(), "c1*c2");
        assert!((&c2 * &(&c1 * &c1)).is_zero());
        assert!(c1.pow(4).is_zero());
        assert_eq!(s.total_degree(), 3);
        let sum = &c2 + &(&c1 * &c1);
        assert_eq!(sum.to_string(), "c1^2 + c2");
        assert!(sum.is_homogeneous(2));
    }

    #[test]
    fn display_canonical_order() {
        let r = RingSpec::new(&["x1", "x2"], &[2, 2], ScalarDomain::Rationals).unwrap();
        let a = RingElement::from_terms(
            &r,
            vec![
                (vec![0, 1], qi(1)),
                (vec![1, 0], qi(1)),
                (vec![1, 1], qi(-1)),
                (vec![0, 2], q(1, 2)),
                (vec![0, 0], qi(-2)),
            ],
        )
        .unwrap();
        assert_eq!(a.to_string(), "-2 + x1 + x2 - x1*x2 + 1/2*x2^2");
        assert_eq!(RingElement::zero(&r).to_string(), "0");
    }

    #[test]
    fn substitute_is_ring_map() {
        let src = zx(2);
        let dst = RingSpec::new(&["y"], &[4], ScalarDomain::Integers).unwrap();
        let y = RingElement::var(&dst, 0);
        let image = &y * &y;
        let a = ipoly(&src, &[1, 2, 3]);
        let out = a.substitute(&dst, &[image]).unwrap();
        assert_eq!(out.to_string(), "1 + 2*y^2 + 3*y^4");
    }

    #[test]
    fn spec_validation() {
        assert!(RingSpec::new(&["x", "x"], &[1, 1], ScalarDomain::Integers).is_err());
        assert!(RingSpec::new(&["1x"], &[1], ScalarDomain::Integers).is_err());
        assert!(RingSpec::new(&["x"], &[1, 2], ScalarDomain::Integers).is_err());
        let pt = RingSpec::scalars_only(ScalarDomain::Integers);
        assert_eq!(RingElement::from_int(&pt, 5).to_string(), "5");
        assert_eq!(pt.total_degree(), 0);
    }

    fn arb_element(spec: RingSpec) -> impl Strategy<Value = RingElement> {
        let n = spec.num_vars();
        let bounds = spec.bounds().to_vec();
        let exps = bounds
            .iter()
            .map(|&d| 0..=d)
            .collect::<Vec<_>>();
        prop::collection::vec((exps, -5i64..=5, 1i64..=3), 0..6).prop_map(move |terms| {
            let _ = n;
            RingElement::from_terms(
                &spec,
                terms.into_iter().map(|(e, a, b)| (e, q(a, b))),
            )
            .unwrap()
        })
    }

    fn two_var() -> RingSpec {
        RingSpec::new(&["x", "y"], &[3, 2], ScalarDomain::Rationals).unwrap()
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_element(two_var()), b in arb_element(two_var()), c in arb_element(two_var())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            let x = RingElement::var(&two_var(), 0);
            prop_assert!((&x.pow(4) * &a).is_zero());
        }

        #[test]
        fn truncation_coherence(a in arb_element(two_var()), b in arb_element(two_var())) {
            let big = RingSpec::new(&["x", "y"], &[6, 4], ScalarDomain::Rationals).unwrap();
            let lift = |e: &RingElement| RingElement::from_terms(
                &big,
                e.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())),
            ).unwrap();
            let prod_big = &lift(&a) * &lift(&b);
            let projected = RingElement::from_terms(
                &two_var(),
                prod_big
                    .terms()
                    .filter(|(m, _)| m.exponents()[0] <= 3 && m.exponents()[1] <= 2)
                    .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
            ).unwrap();
            prop_assert_eq!(projected, &a * &b);
        }

        #[test]
        fn exp_is_multiplicative(a in arb_element(two_var()), b in arb_element(two_var())) {
            let strip = |e: RingElement| {
                let c = e.constant_term();
                &e - &RingElement::constant(e.spec(), c).unwrap()
            };
            let (a, b) = (strip(a), strip(b));
            let e = make_standard_series(StandardSeries::Exponential, 5);
            let lhs = &RingElement::eval_series(&e, &a).unwrap() * &RingElement::eval_series(&e, &b).unwrap();
            let rhs = RingElement::eval_series(&e, &(&a + &b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn invert_round_trip(a in arb_element(two_var()), c in 1i64..5) {
            let unit = &a.graded_component(1) + &RingElement::from_int(&two_var(), c);
            let unit = &unit + &a.graded_component(3);
            prop_assert!((&unit.invert().unwrap() * &unit).is_one());
        }

        #[test]
        fn display_parse_round_trip(a in arb_element(two_var())) {
            let text = a.to_string();
            prop_assert_eq!(RingElement::parse(&two_var(), &text).unwrap(), a);
        }
    }
}
