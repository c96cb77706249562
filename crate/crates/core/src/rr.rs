//! Riemann-Roch on projective spaces and the closed formulas it yields for
//! curves and surfaces.

use num::{BigInt, BigRational};

use crate::chern::{chern_from_character, todd_class, BundleClass};
use crate::error::{Error, Result};
use crate::models::{
    k_line_class, pushforward, ring_of, space_tangent, universal_morphism, MorphismDescriptor,
    SpaceDescriptor, TheoryModel,
};
use crate::rational::{fmt_rational, qi};
use crate::ring::{RingElement, RingSpec, ScalarDomain};
use crate::series::{make_standard_series, StandardSeries};

/// Todd class of the tangent bundle of `space`, in chow ⊗ Q.
pub fn todd_of_space(space: &SpaceDescriptor) -> Result<RingElement> {
    let tangent = space_tangent(&TheoryModel::chow_rational(), space);
    todd_class(&tangent)
}

/// Both sides of the Riemann-Roch square for `a` along `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrrSides {
    /// `ch(f_!(a))`.
    pub lhs: RingElement,
    /// `Td(T_X)^{-1} f_*(Td(T_Y) ch(a))`.
    pub rhs: RingElement,
}

pub fn grr_sides(f: &MorphismDescriptor, a: &RingElement) -> Result<GrrSides> {
    let k = TheoryModel::ktheory();
    let chow = TheoryModel::chow_rational();
    let (source, target) = (f.source(), f.target());
    let lhs = universal_morphism(&pushforward(&k, f, a)?, &target)?;
    let inner = todd_of_space(&source)?.try_mul(&universal_morphism(a, &source)?)?;
    let rhs = todd_of_space(&target)?
        .invert()?
        .try_mul(&pushforward(&chow, f, &inner)?)?;
    Ok(GrrSides { lhs, rhs })
}

/// `ch(f_!(a)) - Td(T_X)^{-1} f_*(Td(T_Y) ch(a))` in chow ⊗ Q of the target.
pub fn verify_grr(f: &MorphismDescriptor, a: &RingElement) -> Result<RingElement> {
    let sides = grr_sides(f, a)?;
    sides.lhs.try_sub(&sides.rhs)
}

/// `χ(P^n, O(d))` computed by the K-theory pushforward and by
/// `deg(ch(O(d)) Td(T))`; the two must agree.
pub fn euler_characteristic_pn(n: u32, d: i64) -> Result<BigInt> {
    let space = SpaceDescriptor::projective(n);
    let p = MorphismDescriptor::point_projection(n);
    let line = k_line_class(n, d);
    let k_side = pushforward(&TheoryModel::ktheory(), &p, &line)?.constant_term();
    let ch = universal_morphism(&line, &space)?;
    let integrand = ch.try_mul(&todd_of_space(&space)?)?;
    let chow_side = pushforward(&TheoryModel::chow_rational(), &p, &integrand)?.constant_term();
    if k_side != chow_side {
        return Err(Error::GrrMismatch {
            k: fmt_rational(&k_side),
            chow: fmt_rational(&chow_side),
        });
    }
    if !k_side.is_integer() {
        return Err(Error::NonIntegerChi(fmt_rational(&k_side)));
    }
    Ok(k_side.to_integer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbstractCurve {
    pub genus: i64,
}

impl AbstractCurve {
    pub fn new(genus: i64) -> Result<Self> {
        if genus < 0 {
            return Err(Error::InvalidInput(format!("genus {genus} is negative")));
        }
        Ok(Self { genus })
    }

    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus - 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveBundle {
    pub rank: i64,
    pub deg_c1: i64,
}

/// `χ(C, E) = deg c_1(E) - (r/2) deg K`.
pub fn chi_curve(c: &AbstractCurve, e: &CurveBundle) -> Result<BigInt> {
    let value = qi(e.deg_c1) - qi(e.rank) * qi(c.canonical_degree()) / qi(2);
    integral(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbstractSurface {
    pub k2: i64,
    pub chi_top: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceBundle {
    pub rank: i64,
    pub c1_dot_k: i64,
    pub c1_sq: i64,
    pub deg_c2: i64,
}

impl SurfaceBundle {
    pub fn trivial() -> Self {
        Self {
            rank: 1,
            c1_dot_k: 0,
            c1_sq: 0,
            deg_c2: 0,
        }
    }
}

/// `χ(S, E) = r(K² + χ_top)/12 - K·c_1/2 + c_1²/2 - c_2`.
pub fn chi_surface(s: &AbstractSurface, e: &SurfaceBundle) -> Result<BigInt> {
    let value = qi(e.rank) * qi(s.k2 + s.chi_top) / qi(12) - qi(e.c1_dot_k) / qi(2)
        + qi(e.c1_sq) / qi(2)
        - qi(e.deg_c2);
    integral(value)
}

fn integral(value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegerChi(fmt_rational(&value)))
    }
}

fn hypersurface_ring(n: u32) -> RingSpec {
    ring_of(&TheoryModel::chow_rational(), &SpaceDescriptor::projective(n))
}

/// Degree of `K_Y` against `h^{n-2}` for a degree-`q` hypersurface `Y` in
/// `P^n`, read off `i_*(K_Y) = Y(K_X + Y)`. For plane curves this is
/// `deg K_Y = 2g - 2`.
pub fn canonical_degree_hypersurface(n: u32, q: i64) -> Result<BigInt> {
    if n < 2 || q < 1 {
        return Err(Error::InvalidInput(format!(
            "need n >= 2 and q >= 1, got n = {n}, q = {q}"
        )));
    }
    let spec = hypersurface_ring(n);
    let h = RingElement::var(&spec, 0);
    let y = h.times(q);
    let k = h.times(-(n as i64 + 1));
    let cycle = &(&y * &(&k + &y)) * &h.pow(n - 2);
    let p = MorphismDescriptor::point_projection(n);
    let deg = pushforward(&TheoryModel::chow_rational(), &p, &cycle)?.constant_term();
    Ok(deg.to_integer())
}

/// Difference between the degree ≤ 2 part of `(1 - e^{-Y}) Td(T_{P^n})`
/// and `Y - Y(K + Y)/2`, with `Y = q h`. Zero when adjunction holds.
pub fn hypersurface_grr_identity(n: u32, q: i64) -> Result<RingElement> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2, got {n}")));
    }
    let spec = hypersurface_ring(n);
    let h = RingElement::var(&spec, 0);
    let y = h.times(q);
    let k = h.times(-(n as i64 + 1));
    let one_minus_exp_neg = make_standard_series(StandardSeries::ExpDeficit, n as usize)
        .shift_up();
    let structure = RingElement::eval_series(&one_minus_exp_neg, &y)?;
    let lhs = (&structure * &todd_of_space(&SpaceDescriptor::projective(n))?).truncate_degree(2);
    let half = BigRational::new(1.into(), 2.into());
    let rhs = &y - &(&y * &(&k + &y)).scale(&half)?;
    Ok(&lhs - &rhs)
}

/// Chern classes of `O_Y` for `Y` of codimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSheafChern {
    pub codim: u32,
    /// `c_1 .. c_d`.
    pub classes: Vec<RingElement>,
    /// `c_d / Y`.
    pub top_multiple: BigRational,
}

/// Ring with one generator `Y` of weight `d`, truncated above degree `d`.
pub fn codim_marker_ring(d: u32) -> Result<RingSpec> {
    RingSpec::weighted(&["Y"], &[1], &[d], Some(d), ScalarDomain::Rationals)
}

/// Chern classes of a rank-0 class with `ch = Y`, `Y` of degree `d`.
/// The result is `c_i = 0` for `i < d` and `c_d = (-1)^{d-1} (d-1)! Y`.
pub fn structure_sheaf_chern(d: u32) -> Result<StructureSheafChern> {
    if d == 0 {
        return Err(Error::InvalidInput("codimension must be positive".into()));
    }
    let spec = codim_marker_ring(d)?;
    let y = RingElement::var(&spec, 0);
    let bundle: BundleClass = chern_from_character(&y, 0)?;
    let classes = bundle.chern_classes(d);
    let top_multiple = classes[d as usize - 1].coefficient_of(&[1])?;
    Ok(StructureSheafChern {
        codim: d,
        classes,
        top_multiple,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSingularityData {
    pub d_dot_k: i64,
    pub d_sq: i64,
    pub total_length: i64,
}

impl FormSingularityData {
    pub fn new(d_dot_k: i64, d_sq: i64, lengths: &[i64]) -> Result<Self> {
        if let Some(l) = lengths.iter().find(|&&l| l < 0) {
            return Err(Error::InvalidInput(format!("length {l} is negative")));
        }
        Ok(Self {
            d_dot_k,
            d_sq,
            total_length: lengths.iter().sum(),
        })
    }
}

/// `deg c_2(T_S) = D·K - D² + Σ l(C_p)` for the divisor `D` and singular
/// points of a rational 1-form.
pub fn zeuthen_segre(data: &FormSingularityData) -> Result<BigInt> {
    if data.total_length < 0 {
        return Err(Error::InvalidInput("total length is negative".into()));
    }
    Ok(BigInt::from(data.d_dot_k) - data.d_sq + data.total_length)
}

/// `deg c_2(T_{P^2})` via the tangent class and the point pushforward.
pub fn top_chern_number_p2() -> Result<BigInt> {
    let chow = TheoryModel::chow();
    let tangent = crate::models::tangent_class(&chow, 2);
    let c2 = tangent.chern_class(2);
    let deg = pushforward(&chow, &MorphismDescriptor::point_projection(2), &c2)?;
    Ok(deg.constant_term().to_integer())
}
