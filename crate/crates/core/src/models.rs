//! Concrete cohomology theories on products of projective spaces.
//!
//! Two base models are provided:
//!
//! * **chow**: additive group law `x + y`. The generator `h_i` of factor `i`
//!   is `c_1(O(1))`, the class of a hyperplane.
//! * **ktheory**: multiplicative group law `x + y - xy`. The generator
//!   `t_i = 1 - [O(-1)]` is the K-theoretic class of a hyperplane, which is
//!   also `c_1^K(O(1))`.
//!
//! In both, the ring of `P^{d_1} x ... x P^{d_k}` is
//! `S[x_1..x_k]/(x_i^{d_i+1})` and morphisms act one factor at a time. A
//! base model can be twisted by an invertible series `F`, which keeps rings
//! and pullbacks and replaces every pushforward by
//! `f_*^new(a) = f_*(F_×(T_f)^{-1} a)`.

use num::{BigRational, One, Zero};

use crate::chern::{multiplicative_extension, whitney_sum, BundleClass};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, is_signed_unit};
use crate::ring::{RingElement, RingSpec, ScalarDomain};
use crate::series::{make_standard_series, StandardSeries, TruncatedSeries};

/// `P^{d_1} x ... x P^{d_k}`; no factors is the point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    factors: Vec<u32>,
}

impl SpaceDescriptor {
    pub fn point() -> Self {
        Self { factors: vec![] }
    }

    pub fn projective(n: u32) -> Self {
        Self { factors: vec![n] }
    }

    pub fn product(factors: &[u32]) -> Self {
        Self {
            factors: factors.to_vec(),
        }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().sum()
    }

    fn without(&self, factor: usize) -> Self {
        let mut factors = self.factors.clone();
        factors.remove(factor);
        Self { factors }
    }

    fn replace(&self, factor: usize, d: u32) -> Self {
        let mut factors = self.factors.clone();
        factors[factor] = d;
        Self { factors }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseTheory {
    Chow,
    KTheory,
}

/// A cohomology theory instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TheoryModel {
    base: BaseTheory,
    scalars: ScalarDomain,
    twist: Option<TruncatedSeries>,
}

impl TheoryModel {
    /// Integral Chow model.
    pub fn chow() -> Self {
        Self {
            base: BaseTheory::Chow,
            scalars: ScalarDomain::Integers,
            twist: None,
        }
    }

    /// Chow model tensored with the rationals.
    pub fn chow_rational() -> Self {
        Self {
            scalars: ScalarDomain::Rationals,
            ..Self::chow()
        }
    }

    pub fn ktheory() -> Self {
        Self {
            base: BaseTheory::KTheory,
            scalars: ScalarDomain::Integers,
            twist: None,
        }
    }

    /// The Chow model twisted by `(1 - e^{-t})/t`, whose group law is the
    /// multiplicative one. `order` bounds the dimensions it can handle.
    pub fn exp_twisted_chow(order: usize) -> Self {
        twist_theory(
            &Self::chow(),
            &make_standard_series(StandardSeries::ExpDeficit, order),
        )
        .expect("constant term 1 is a unit")
    }

    pub fn base(&self) -> BaseTheory {
        self.base
    }

    pub fn scalars(&self) -> ScalarDomain {
        self.scalars
    }

    pub fn twist(&self) -> Option<&TruncatedSeries> {
        self.twist.as_ref()
    }

    /// The same model without its twist (and with the same scalars).
    pub fn untwisted(&self) -> Self {
        Self {
            twist: None,
            ..self.clone()
        }
    }

    pub fn name(&self) -> String {
        let base = match self.base {
            BaseTheory::Chow => "chow",
            BaseTheory::KTheory => "ktheory",
        };
        match &self.twist {
            Some(_) => format!("twisted({base})"),
            None => base.to_string(),
        }
    }

    fn generator_prefix(&self) -> &'static str {
        match self.base {
            BaseTheory::Chow => "h",
            BaseTheory::KTheory => "t",
        }
    }

    /// Formal group law `G(x, y)` in `S[x,y]` truncated above total degree `order`.
    pub fn group_law(&self, order: u32) -> Result<RingElement> {
        let spec = RingSpec::weighted(
            &["x", "y"],
            &[order, order],
            &[1, 1],
            Some(order),
            ScalarDomain::Rationals,
        )?;
        let x = RingElement::var(&spec, 0);
        let y = RingElement::var(&spec, 1);
        let base = match self.base {
            BaseTheory::Chow => &x + &y,
            BaseTheory::KTheory => &(&x + &y) - &(&x * &y),
        };
        let Some(f) = &self.twist else {
            return Ok(base);
        };
        // conjugate by e(x) = x F(x): G_new(u, v) = e(G(e^{-1}(u), e^{-1}(v)))
        let order = order as usize;
        let e = f.with_order(order.saturating_sub(1)).with_order(order).shift_up();
        if f.order() + 1 < order {
            return Err(Error::InsufficientOrder {
                order: f.order(),
                needed: order - 1,
            });
        }
        let e_inv = e.reversion()?;
        let u = RingElement::eval_series(&e_inv, &x)?;
        let v = RingElement::eval_series(&e_inv, &y)?;
        let inner = base.substitute(&spec, &[u, v])?;
        RingElement::eval_series(&e, &inner)
    }
}

/// Twists `base` by the invertible series `F`. Twisting an already twisted
/// model multiplies the series. Twisting by the constant series 1 returns
/// `base` unchanged.
pub fn twist_theory(base: &TheoryModel, series: &TruncatedSeries) -> Result<TheoryModel> {
    if series.coeff(0).is_zero() {
        return Err(Error::NonUnitConstant);
    }
    if series.coeffs().iter().skip(1).all(Zero::is_zero) && series.coeff(0).is_one() {
        return Ok(base.clone());
    }
    let combined = match &base.twist {
        Some(old) => {
            let order = old.order().min(series.order());
            &old.with_order(order) * &series.with_order(order)
        }
        None => series.clone(),
    };
    Ok(TheoryModel {
        base: base.base,
        scalars: ScalarDomain::Rationals,
        twist: Some(combined),
    })
}

/// The ring of `space` in `theory`: one generator per factor.
pub fn ring_of(theory: &TheoryModel, space: &SpaceDescriptor) -> RingSpec {
    let prefix = theory.generator_prefix();
    let names: Vec<String> = match space.factors.len() {
        1 => vec![prefix.to_string()],
        k => (1..=k).map(|i| format!("{prefix}{i}")).collect(),
    };
    RingSpec::new(&names, &space.factors, theory.scalars).expect("generated names are valid")
}

/// Class of `O(m)` on `P^n` in K-theory: `(1 - t)^{-m}`.
pub fn k_line_class(n: u32, m: i64) -> RingElement {
    k_line_class_on(&SpaceDescriptor::projective(n), 0, m)
}

/// Class of `O(m)` pulled back from factor `factor` of `space`.
pub fn k_line_class_on(space: &SpaceDescriptor, factor: usize, m: i64) -> RingElement {
    let spec = ring_of(&TheoryModel::ktheory(), space);
    let t = RingElement::var(&spec, factor);
    let one_minus_t = &RingElement::one(&spec) - &t;
    let base = if m > 0 {
        one_minus_t.invert().expect("1 - t is a unit")
    } else {
        one_minus_t
    };
    base.pow(m.unsigned_abs() as u32)
}

/// First Chern class of `O(m)` on factor `factor`, in the theory's own
/// group law: `m h` in chow, `1 - (1 - t)^m` in ktheory.
pub fn line_chern_class(theory: &TheoryModel, space: &SpaceDescriptor, factor: usize, m: i64) -> Result<RingElement> {
    let spec = ring_of(theory, space);
    match theory.base {
        BaseTheory::Chow => Ok(RingElement::var(&spec, factor).times(m)),
        BaseTheory::KTheory => {
            let dual = k_line_class_on(space, factor, -m);
            (&RingElement::one(&dual.spec().clone()) - &dual).cast(&spec)
        }
    }
}

/// Tangent bundle of `P^n` via the Euler sequence: rank `n`, total Chern
/// class `(1 + x)^{n+1}` with `x = c_1(O(1))` the generator.
pub fn tangent_class(theory: &TheoryModel, n: u32) -> BundleClass {
    let spec = ring_of(theory, &SpaceDescriptor::projective(n));
    factor_tangent(&spec, 0, n)
}

/// Tangent bundle of a product: the sum of the factors' tangent bundles.
pub fn space_tangent(theory: &TheoryModel, space: &SpaceDescriptor) -> BundleClass {
    let spec = ring_of(theory, space);
    space
        .factors
        .iter()
        .enumerate()
        .fold(BundleClass::trivial(&spec, 0), |acc, (i, &d)| {
            whitney_sum(&acc, &factor_tangent(&spec, i, d)).expect("same ring")
        })
}

fn factor_tangent(spec: &RingSpec, factor: usize, d: u32) -> BundleClass {
    let x = RingElement::var(spec, factor);
    let total = (&RingElement::one(spec) + &x).pow(d + 1);
    BundleClass::new(d as i64, total).expect("constant term 1")
}

/// K-theory class of `T_{P^n}`: `(n+1) [O(1)] - 1`.
pub fn k_tangent_element(n: u32) -> RingElement {
    let o1 = k_line_class(n, 1);
    &o1.times(n as i64 + 1) - &RingElement::one(o1.spec())
}

/// A morphism between products of projective spaces, acting on one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MorphismDescriptor {
    /// `P^n → pt`.
    PointProjection { n: u32 },
    /// `space → space` with factor `factor` removed.
    FactorProjection { space: SpaceDescriptor, factor: usize },
    /// `P^m ⊂ P^n` linearly embedded in factor `factor` of `target`, whose
    /// dimension in that factor is `n`.
    LinearImmersion {
        target: SpaceDescriptor,
        factor: usize,
        m: u32,
    },
}

impl MorphismDescriptor {
    pub fn point_projection(n: u32) -> Self {
        Self::PointProjection { n }
    }

    /// `P^m ⊂ P^n`.
    pub fn linear_immersion(m: u32, n: u32) -> Result<Self> {
        Self::immersion_in(SpaceDescriptor::projective(n), 0, m)
    }

    pub fn immersion_in(target: SpaceDescriptor, factor: usize, m: u32) -> Result<Self> {
        match target.factors.get(factor) {
            Some(&n) if m <= n => Ok(Self::LinearImmersion { target, factor, m }),
            Some(&n) => Err(Error::InvalidInput(format!(
                "cannot embed P^{m} linearly in P^{n}"
            ))),
            None => Err(Error::InvalidInput(format!("no factor {factor}"))),
        }
    }

    pub fn factor_projection(space: SpaceDescriptor, factor: usize) -> Result<Self> {
        if factor >= space.factors.len() {
            return Err(Error::InvalidInput(format!("no factor {factor}")));
        }
        Ok(Self::FactorProjection { space, factor })
    }

    pub fn source(&self) -> SpaceDescriptor {
        match self {
            Self::PointProjection { n } => SpaceDescriptor::projective(*n),
            Self::FactorProjection { space, .. } => space.clone(),
            Self::LinearImmersion { target, factor, m } => target.replace(*factor, *m),
        }
    }

    pub fn target(&self) -> SpaceDescriptor {
        match self {
            Self::PointProjection { .. } => SpaceDescriptor::point(),
            Self::FactorProjection { space, factor } => space.without(*factor),
            Self::LinearImmersion { target, .. } => target.clone(),
        }
    }

    /// `(space, factor)` for the two projection variants.
    fn as_projection(&self) -> Option<(SpaceDescriptor, usize)> {
        match self {
            Self::PointProjection { n } => Some((SpaceDescriptor::projective(*n), 0)),
            Self::FactorProjection { space, factor } => Some((space.clone(), *factor)),
            Self::LinearImmersion { .. } => None,
        }
    }

    /// `T_f = T_Y - f^* T_X` in the source ring of `theory`.
    ///
    /// For a projection this is the tangent bundle of the fibre factor; for
    /// `P^m ⊂ P^n` it is minus the normal bundle, `-(n-m) O(1)`.
    pub fn virtual_tangent(&self, theory: &TheoryModel) -> BundleClass {
        let spec = ring_of(theory, &self.source());
        match self {
            Self::LinearImmersion { target, factor, m } => {
                let codim = target.factors[*factor] - m;
                let x = RingElement::var(&spec, *factor);
                BundleClass::line(&x)
                    .expect("generator is nilpotent")
                    .multiple(-(codim as i64))
            }
            _ => {
                let (space, factor) = self.as_projection().expect("projection");
                factor_tangent(&spec, factor, space.factors[factor])
            }
        }
    }
}

fn expect_ring(a: &RingElement, spec: &RingSpec, what: &str) -> Result<()> {
    if a.spec() != spec {
        return Err(Error::SpecMismatch(format!("{what} expects an element of the {} ring", spec_label(spec))));
    }
    Ok(())
}

fn spec_label(spec: &RingSpec) -> String {
    format!("{:?}/{:?}", spec.names(), spec.bounds())
}

/// `f^*`: substitution on generators.
pub fn pullback(theory: &TheoryModel, f: &MorphismDescriptor, a: &RingElement) -> Result<RingElement> {
    let src = ring_of(theory, &f.source());
    expect_ring(a, &ring_of(theory, &f.target()), "pullback")?;
    let terms = a.terms().filter_map(|(mono, c)| {
        let exps = mono.exponents();
        let mapped = match f {
            MorphismDescriptor::LinearImmersion { factor, m, .. } => {
                (exps[*factor] <= *m).then(|| exps.to_vec())
            }
            _ => {
                let (_, factor) = f.as_projection().expect("projection");
                let mut e = exps.to_vec();
                e.insert(factor, 0);
                Some(e)
            }
        };
        mapped.map(|e| (e, c.clone()))
    });
    RingElement::from_terms(&src, terms)
}

/// `f_*` in the untwisted model, as a linear map on monomials.
fn base_pushforward(
    base: BaseTheory,
    f: &MorphismDescriptor,
    a: &RingElement,
    target: &RingSpec,
) -> Result<RingElement> {
    let mut terms = Vec::with_capacity(a.num_terms());
    for (mono, c) in a.terms() {
        let exps = mono.exponents();
        match f {
            MorphismDescriptor::LinearImmersion { target: t, factor, m } => {
                // i_*(x^r) = x^{r + codim}
                let mut e = exps.to_vec();
                e[*factor] += t.factors[*factor] - m;
                terms.push((e, c.clone()));
            }
            _ => {
                let (space, factor) = f.as_projection().expect("projection");
                let n = space.factors[factor];
                let r = exps[factor];
                let survives = match base {
                    BaseTheory::Chow => r == n,
                    BaseTheory::KTheory => true,
                };
                if survives {
                    let mut e = exps.to_vec();
                    e.remove(factor);
                    terms.push((e, c.clone()));
                }
            }
        }
    }
    RingElement::from_terms(target, terms)
}

/// `f_*`. In a twisted model this is `f_*(F_×(T_f)^{-1} a)`.
pub fn pushforward(theory: &TheoryModel, f: &MorphismDescriptor, a: &RingElement) -> Result<RingElement> {
    let src = ring_of(theory, &f.source());
    let tgt = ring_of(theory, &f.target());
    expect_ring(a, &src, "pushforward")?;
    match &theory.twist {
        None => base_pushforward(theory.base, f, a, &tgt),
        Some(series) => {
            let tangent = f.virtual_tangent(&theory.untwisted()).cast(&src)?;
            let correction = multiplicative_extension(series, &tangent)?.invert()?;
            base_pushforward(theory.base, f, &(&correction * a), &tgt)
        }
    }
}

/// The Chern character `K(X) → A(X) ⊗ Q` as the ring map `t_i ↦ 1 - e^{-h_i}`.
pub fn universal_morphism(a: &RingElement, space: &SpaceDescriptor) -> Result<RingElement> {
    expect_ring(a, &ring_of(&TheoryModel::ktheory(), space), "universal_morphism")?;
    let target = ring_of(&TheoryModel::chow_rational(), space);
    let order = target.total_degree() as usize;
    let one_minus_exp_neg = make_standard_series(StandardSeries::ExpDeficit, order.saturating_sub(1))
        .with_order(order)
        .shift_up();
    let images = (0..space.factors.len())
        .map(|i| RingElement::eval_series(&one_minus_exp_neg, &RingElement::var(&target, i)))
        .collect::<Result<Vec<_>>>()?;
    a.substitute(&target, &images)
}

/// The fundamental class of the diagonal in `P^n x P^n`.
///
/// Solved recursively from `Δ_0 = 1`: restricting the first factor to a
/// hyperplane determines every coefficient `a_rs` with `r < n` from
/// `Δ_{n-1}`; symmetry gives `s < n`; the normalisation
/// `(p_* ⊗ 1)(Δ_n) = 1` gives `a_nn` and must hold exactly.
pub fn diagonal_class(theory: &TheoryModel, n: u32) -> Result<RingElement> {
    let spec = ring_of(theory, &SpaceDescriptor::product(&[n, n]));
    let mut known: Vec<(Vec<u32>, BigRational)> = Vec::new();
    if n > 0 {
        let previous = diagonal_class(theory, n - 1)?;
        let push = MorphismDescriptor::immersion_in(SpaceDescriptor::product(&[n - 1, n]), 1, n - 1)?;
        let restricted = pushforward(theory, &push, &previous)?;
        for r in 0..n {
            for s in 0..=n {
                let c = restricted.coefficient_of(&[r, s])?;
                if s < n {
                    let mirror = restricted.coefficient_of(&[s, r])?;
                    if c != mirror {
                        return Err(Error::SolverInconsistent(format!(
                            "a_{r}{s} = {} but a_{s}{r} = {}",
                            fmt_rational(&c),
                            fmt_rational(&mirror)
                        )));
                    }
                }
                if !c.is_zero() {
                    known.push((vec![r, s], c.clone()));
                    if s == n {
                        known.push((vec![s, r], c));
                    }
                }
            }
        }
    }
    let partial = RingElement::from_terms(&spec, known)?;
    let proj = MorphismDescriptor::factor_projection(SpaceDescriptor::product(&[n, n]), 0)?;
    let n0 = pushforward(theory, &proj, &partial)?;
    let corner = RingElement::monomial(&spec, &[n, n], BigRational::one())?;
    let n1 = pushforward(theory, &proj, &corner)?;
    let Some((mono, lead)) = n1.terms().next() else {
        return Err(Error::SolverInconsistent(format!(
            "normalisation does not determine a_{n}{n}"
        )));
    };
    let wanted = if mono.is_constant() { BigRational::one() } else { BigRational::zero() };
    let z = (wanted - n0.coefficient_of(mono.exponents())?) / lead;
    if theory.scalars == ScalarDomain::Integers && !z.is_integer() {
        return Err(Error::SolverInconsistent(format!(
            "a_{n}{n} = {} is not integral",
            fmt_rational(&z)
        )));
    }
    let delta = partial.try_add(&corner.scale(&z)?)?;
    let check = pushforward(theory, &proj, &delta)?;
    if !check.is_one() {
        return Err(Error::SolverInconsistent(format!(
            "(p_* ⊗ 1)(Δ_{n}) = {check}, expected 1"
        )));
    }
    Ok(delta)
}

/// Coefficient matrix of the diagonal and whether it is invertible over the
/// model's scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricReport {
    pub matrix: Vec<Vec<BigRational>>,
    pub determinant: BigRational,
    pub unit: bool,
}

pub fn metric_check(theory: &TheoryModel, n: u32) -> Result<MetricReport> {
    let delta = diagonal_class(theory, n)?;
    let matrix = (0..=n)
        .map(|r| (0..=n).map(|s| delta.coefficient_of(&[r, s])).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let determinant = determinant(&matrix);
    let unit = match theory.scalars {
        ScalarDomain::Integers => is_signed_unit(&determinant),
        ScalarDomain::Rationals => !determinant.is_zero(),
    };
    Ok(MetricReport {
        matrix,
        determinant,
        unit,
    })
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant(matrix: &[Vec<BigRational>]) -> BigRational {
    let mut m: Vec<Vec<BigRational>> = matrix.to_vec();
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pivot_row = m[col].clone();
        det *= &pivot_row[col];
        for row in m.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Class in `F^d / F^{d+1}` mapped into `A^d ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKClass {
    pub level: u32,
    pub representative: RingElement,
}

/// Leading term of the Chern character of a class in filtration level `d`:
/// the degree-`d` component of `ch(a)`, after checking that every lower
/// component vanishes.
pub fn gk_leading_morphism(a: &RingElement, space: &SpaceDescriptor, level: u32) -> Result<GKClass> {
    let ch = universal_morphism(a, space)?;
    if let Some(low) = ch.min_degree().filter(|&d| d < level) {
        return Err(Error::FiltrationViolation { level, degree: low });
    }
    Ok(GKClass {
        level,
        representative: ch.graded_component(level),
    })
}

/// Unit, symmetry and associativity of a group law `G(x, y)` produced by
/// [`TheoryModel::group_law`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupLawAxioms {
    pub unit: bool,
    pub symmetric: bool,
    pub associative: bool,
}

impl GroupLawAxioms {
    pub fn all(&self) -> bool {
        self.unit && self.symmetric && self.associative
    }
}

pub fn check_group_law(law: &RingElement) -> Result<GroupLawAxioms> {
    let spec = law.spec();
    let order = spec.degree_cap().unwrap_or_else(|| spec.total_degree());
    let x = RingElement::var(spec, 0);
    let y = RingElement::var(spec, 1);
    let zero = RingElement::zero(spec);
    let unit = law.substitute(spec, &[x.clone(), zero.clone()])? == x
        && law.substitute(spec, &[zero, y.clone()])? == y;
    let symmetric = law.substitute(spec, &[y.clone(), x.clone()])? == *law;

    let tri = RingSpec::weighted(
        &["x", "y", "z"],
        &[order; 3],
        &[1; 3],
        Some(order),
        spec.scalars(),
    )?;
    let (a, b, c) = (
        RingElement::var(&tri, 0),
        RingElement::var(&tri, 1),
        RingElement::var(&tri, 2),
    );
    let ab = law.substitute(&tri, &[a.clone(), b.clone()])?;
    let bc = law.substitute(&tri, &[b, c.clone()])?;
    let associative = law.substitute(&tri, &[ab, c])? == law.substitute(&tri, &[a, bc])?;
    Ok(GroupLawAxioms {
        unit,
        symmetric,
        associative,
    })
}

/// Degree of a zero-cycle: the pushforward to the point of a chow class.
pub fn degree(theory: &TheoryModel, space: &SpaceDescriptor, a: &RingElement) -> Result<BigRational> {
    let mut current = a.clone();
    let mut sp = space.clone();
    while !sp.factors.is_empty() {
        let last = sp.factors.len() - 1;
        let f = if last == 0 {
            MorphismDescriptor::point_projection(sp.factors[0])
        } else {
            MorphismDescriptor::factor_projection(sp.clone(), last)?
        };
        current = pushforward(theory, &f, &current)?;
        sp = f.target();
    }
    Ok(current.constant_term())
}
