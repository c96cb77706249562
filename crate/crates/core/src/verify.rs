//! Verification grids. Each criterion runs a fixed grid or a seeded batch
//! of random cases and reports how many cases ran and which failed.

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chern::{
    additive_extension, chern_character, multiplicative_extension, newton_e_to_p, newton_p_to_e,
    symbolic_bundle, todd_class, whitney_sum, BundleClass,
};
use crate::models::{
    check_group_law, diagonal_class, k_line_class, metric_check, pullback, pushforward, ring_of,
    tangent_class, twist_theory, universal_morphism, MorphismDescriptor, SpaceDescriptor,
    TheoryModel,
};
use crate::rational::{binomial, factorial, fmt_rational, is_signed_unit, q, qi};
use crate::ring::{RingElement, RingSpec, ScalarDomain};
use crate::rr::{
    canonical_degree_hypersurface, chi_curve, chi_surface, euler_characteristic_pn,
    structure_sheaf_chern, top_chern_number_p2, verify_grr, zeuthen_segre, AbstractCurve,
    AbstractSurface, CurveBundle, FormSingularityData, SurfaceBundle,
};
use crate::series::{make_standard_series, StandardSeries, TruncatedSeries};
use crate::Result;

/// Random cases per property in criterion 10.
pub const RANDOM_CASES: usize = 200;

/// Seed used by [`run_all`].
pub const DEFAULT_SEED: u64 = 0x005e_ed0f_c4e2;

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "series constants"),
    (2, "expansion formulas"),
    (3, "grr grid"),
    (4, "euler characteristics"),
    (5, "twist law"),
    (6, "diagonal"),
    (7, "curve and surface formulas"),
    (8, "structure sheaf chern classes"),
    (9, "zeuthen-segre"),
    (10, "algebraic property suites"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub cases: usize,
    /// First few failing cases.
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.failure_count == 0 && self.cases > 0
    }
}

const MAX_LISTED: usize = 8;

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failure_count: usize,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
    }

    /// Record an `Err` as a failed case.
    fn run<T>(&mut self, label: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", label()));
                None
            }
        }
    }

    fn finish(self, id: u32) -> CriterionReport {
        CriterionReport {
            id,
            title: CRITERIA[id as usize - 1].1,
            cases: self.cases,
            failures: self.failures,
            failure_count: self.failure_count,
            notes: self.notes,
        }
    }
}

pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionReport> {
    let mut t = Tally::new();
    match id {
        1 => series_constants(&mut t),
        2 => expansion_formulas(&mut t),
        3 => grr_grid(&mut t),
        4 => euler_grid(&mut t),
        5 => twist_law(&mut t),
        6 => diagonal(&mut t),
        7 => curves_and_surfaces(&mut t),
        8 => structure_sheaf(&mut t),
        9 => zeuthen(&mut t),
        10 => property_suites(&mut t, seed),
        _ => return None,
    }
    Some(t.finish(id))
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, seed).expect("known criterion"))
        .collect()
}

fn series_constants(t: &mut Tally) {
    let todd = make_standard_series(StandardSeries::Todd, 4);
    let want = [qi(1), q(1, 2), q(1, 12), qi(0), q(-1, 720)];
    t.check(todd.coeffs() == want, || format!("todd = {todd}"));
    let deficit = make_standard_series(StandardSeries::ExpDeficit, 8);
    for (n, c) in deficit.coeffs().iter().enumerate() {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let want = BigRational::new(BigInt::from(sign), factorial(n + 1));
        t.check(*c == want, || format!("exp_deficit[{n}] = {}", fmt_rational(c)));
    }
    let product = &deficit * &make_standard_series(StandardSeries::Todd, 8);
    t.check(product == TruncatedSeries::one(8), || format!("product = {product}"));
}

fn expansion_formulas(t: &mut Tally) {
    for rank in 0..=4i64 {
        let Some(e) = t.run(|| "symbolic bundle".into(), symbolic_bundle(rank, 3, 3)) else {
            return;
        };
        let spec = e.spec().clone();
        let ch_text = format!("{rank} + c1 + 1/2*c1^2 - c2 + 1/6*c1^3 - 1/2*c1*c2 + 1/2*c3");
        let td_text = "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2 + 1/24*c1*c2";
        for (label, got, text) in [
            ("ch", chern_character(&e), ch_text.as_str()),
            ("td", todd_class(&e), td_text),
        ] {
            let want = RingElement::parse(&spec, text);
            match (got, want) {
                (Ok(g), Ok(w)) => t.check(g == w, || format!("{label} rank {rank}: {g}")),
                (Err(err), _) | (_, Err(err)) => t.check(false, || format!("{label}: {err}")),
            }
        }
    }
}

fn grr_cases() -> Vec<(MorphismDescriptor, RingElement, String)> {
    let mut cases = Vec::new();
    for n in 0..=6u32 {
        let p = MorphismDescriptor::point_projection(n);
        let spec = ring_of(&TheoryModel::ktheory(), &SpaceDescriptor::projective(n));
        for r in 0..=n {
            let a = RingElement::var(&spec, 0).pow(r);
            let a = if r == 0 { RingElement::one(&spec) } else { a };
            cases.push((p.clone(), a, format!("P^{n} -> pt, t^{r}")));
        }
        for d in -6..=6 {
            cases.push((p.clone(), k_line_class(n, d), format!("P^{n} -> pt, O({d})")));
        }
    }
    for n in 1..=5u32 {
        for m in 0..n {
            let i = MorphismDescriptor::linear_immersion(m, n).expect("m < n");
            for d in -4..=4 {
                cases.push((i.clone(), k_line_class(m, d), format!("P^{m} in P^{n}, O({d})")));
            }
        }
    }
    cases
}

fn grr_grid(t: &mut Tally) {
    for (f, a, label) in grr_cases() {
        if let Some(r) = t.run(|| label.clone(), verify_grr(&f, &a)) {
            t.check(r.is_zero(), || format!("{label}: residual {r}"));
        }
    }
}

fn euler_grid(t: &mut Tally) {
    for n in 0..=6u32 {
        for d in -6..=6 {
            if let Some(chi) = t.run(|| format!("chi(P^{n}, O({d}))"), euler_characteristic_pn(n, d)) {
                let want = binomial(n as i64 + d, n as usize);
                t.check(chi == want, || format!("chi(P^{n}, O({d})) = {chi}, expected {want}"));
                if d == 0 {
                    t.check(chi.is_one(), || format!("chi(P^{n}, O) = {chi}"));
                }
            }
        }
    }
}

fn twist_law(t: &mut Tally) {
    let twisted = TheoryModel::exp_twisted_chow(12);
    for order in 1..=12u32 {
        let law = t.run(|| format!("order {order}"), twisted.group_law(order));
        let Some(law) = law else { continue };
        let spec = law.spec().clone();
        if let Some(want) = t.run(|| "parse".into(), RingElement::parse(&spec, "x + y - x*y")) {
            t.check(law == want, || format!("order {order}: {law}"));
        }
    }
    if let Some(law) = t.run(|| "order 12".into(), twisted.group_law(12)) {
        if let Some(ax) = t.run(|| "axioms".into(), check_group_law(&law)) {
            t.check(ax.all(), || format!("group law axioms: {ax:?}"));
        }
    }
    for base in [TheoryModel::chow(), TheoryModel::ktheory()] {
        if let Some(same) = t.run(|| "identity twist".into(), twist_theory(&base, &TruncatedSeries::one(12))) {
            t.check(same == base, || format!("identity twist of {} changed the model", base.name()));
        }
    }
}

fn diagonal(t: &mut Tally) {
    for theory in [TheoryModel::chow(), TheoryModel::ktheory()] {
        let name = theory.name();
        for n in 0..=6u32 {
            let Some(report) = t.run(|| format!("{name} n={n}"), metric_check(&theory, n)) else {
                continue;
            };
            let mut shape_ok = true;
            for (r, row) in report.matrix.iter().enumerate() {
                for (s, a) in row.iter().enumerate() {
                    shape_ok &= match (r + s).cmp(&(n as usize)) {
                        std::cmp::Ordering::Less => a.is_zero(),
                        std::cmp::Ordering::Equal => a.is_one(),
                        std::cmp::Ordering::Greater => true,
                    };
                }
            }
            t.check(shape_ok, || format!("{name} n={n}: matrix shape"));
            t.check(is_signed_unit(&report.determinant), || {
                format!("{name} n={n}: det {}", fmt_rational(&report.determinant))
            });
            let normalised = diagonal_class(&theory, n).and_then(|delta| {
                let p = MorphismDescriptor::factor_projection(SpaceDescriptor::product(&[n, n]), 0)?;
                pushforward(&theory, &p, &delta)
            });
            if let Some(v) = t.run(|| format!("{name} n={n} normalisation"), normalised) {
                t.check(v.is_one(), || format!("{name} n={n}: (p_* x 1)(diagonal) = {v}"));
            }
        }
    }
    if let Some(k1) = t.run(|| "k n=1".into(), diagonal_class(&TheoryModel::ktheory(), 1)) {
        t.check(k1.to_string() == "t1 + t2 - t1*t2", || format!("k diagonal n=1 = {k1}"));
    }
}

fn curves_and_surfaces(t: &mut Tally) {
    for g in 0..=10i64 {
        let c = AbstractCurve { genus: g };
        if let Some(chi) = t.run(|| format!("g={g}"), chi_curve(&c, &CurveBundle { rank: 1, deg_c1: 0 })) {
            t.check(chi == BigInt::from(1 - g), || format!("chi(O) genus {g} = {chi}"));
        }
        for d in -6..=6 {
            if let Some(chi) = t.run(|| format!("g={g} d={d}"), chi_curve(&c, &CurveBundle { rank: 1, deg_c1: d })) {
                t.check(chi == BigInt::from(d + 1 - g), || format!("chi genus {g} degree {d} = {chi}"));
            }
        }
    }
    let p2 = AbstractSurface { k2: 9, chi_top: 3 };
    if let Some(chi) = t.run(|| "noether".into(), chi_surface(&p2, &SurfaceBundle::trivial())) {
        t.check(chi.is_one(), || format!("noether on P^2 gives {chi}"));
    }
    for d in -6..=6i64 {
        let o_d = SurfaceBundle {
            rank: 1,
            c1_dot_k: -3 * d,
            c1_sq: d * d,
            deg_c2: 0,
        };
        if let Some(chi) = t.run(|| format!("surface d={d}"), chi_surface(&p2, &o_d)) {
            let want = binomial(d + 2, 2);
            t.check(chi == want, || format!("chi(P^2, O({d})) = {chi}, expected {want}"));
        }
    }
    for q in 1..=10i64 {
        if let Some(k) = t.run(|| format!("q={q}"), canonical_degree_hypersurface(2, q)) {
            let want = BigInt::from((q - 1) * (q - 2) / 2);
            let even = (&k % 2i32).is_zero();
            let genus = k / 2 + 1;
            t.check(even && genus == want, || format!("plane curve degree {q}: genus {genus}"));
        }
    }
}

fn structure_sheaf(t: &mut Tally) {
    for d in 1..=6u32 {
        let Some(s) = t.run(|| format!("d={d}"), structure_sheaf_chern(d)) else {
            continue;
        };
        let lower_zero = s.classes[..d as usize - 1].iter().all(RingElement::is_zero);
        t.check(lower_zero, || format!("d={d}: lower classes nonzero"));
        let sign = if d % 2 == 1 { 1 } else { -1 };
        let want = BigRational::from_integer(factorial(d as usize - 1) * sign);
        t.check(s.top_multiple == want, || {
            format!("d={d}: c_d = {} Y", fmt_rational(&s.top_multiple))
        });
    }
    t.notes.push(
        "sign of c_d is (-1)^(d-1) as forced by Newton's identity; the form (-1)^d differs by a global sign"
            .into(),
    );
}

fn zeuthen(t: &mut Tally) {
    let three = BigInt::from(3);
    let data = FormSingularityData::new(6, 4, &[1]);
    if let Some(v) = t.run(|| "zeuthen-segre".into(), data.and_then(|d| zeuthen_segre(&d))) {
        t.check(v == three, || format!("zeuthen-segre on P^2 = {v}"));
    }
    if let Some(c2) = t.run(|| "c2(T_P2)".into(), top_chern_number_p2()) {
        t.check(c2 == three, || format!("deg c2(T_P2) = {c2}"));
    }
    let tangent = tangent_class(&TheoryModel::chow(), 2);
    t.check(tangent.total_chern().to_string() == "1 + 3*h + 3*h^2", || {
        format!("c(T_P2) = {}", tangent.total_chern())
    });
}

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_element<R: Rng>(rng: &mut R, spec: &RingSpec, constant: Option<BigRational>) -> RingElement {
    let mut terms: Vec<(Vec<u32>, BigRational)> = Vec::new();
    let bounds = spec.bounds().to_vec();
    for _ in 0..rng.gen_range(0..=5) {
        let exps: Vec<u32> = bounds.iter().map(|&b| rng.gen_range(0..=b)).collect();
        let c = match spec.scalars() {
            ScalarDomain::Integers => qi(rng.gen_range(-6..=6)),
            ScalarDomain::Rationals => random_rational(rng),
        };
        terms.push((exps, c));
    }
    let mut e = RingElement::from_terms(spec, terms).expect("in bounds");
    if let Some(c0) = constant {
        let current = e.constant_term();
        let fix = RingElement::constant(spec, c0 - current).expect("scalar");
        e = &e + &fix;
    }
    e
}

fn random_bundle<R: Rng>(rng: &mut R, spec: &RingSpec) -> BundleClass {
    let total = random_element(rng, spec, Some(BigRational::one()));
    BundleClass::new(rng.gen_range(-3..=4), total).expect("constant term 1")
}

fn random_series<R: Rng>(rng: &mut R, order: usize, c0: Option<BigRational>) -> TruncatedSeries {
    let mut coeffs: Vec<BigRational> = (0..=order).map(|_| random_rational(rng)).collect();
    if let Some(c) = c0 {
        coeffs[0] = c;
    }
    TruncatedSeries::new(coeffs)
}

fn property_suites(t: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = RingSpec::new(&["x", "y"], &[3, 2], ScalarDomain::Rationals).expect("valid");
    let order = spec.total_degree() as usize;

    for case in 0..RANDOM_CASES {
        let m = rng.gen_range(1..=5);
        let e: Vec<RingElement> = (0..m).map(|_| random_element(&mut rng, &spec, None)).collect();
        let back = newton_e_to_p(&spec, &e, m).and_then(|p| newton_p_to_e(&spec, &p, m));
        if let Some(back) = t.run(|| format!("newton case {case}"), back) {
            t.check(back == e, || format!("newton round trip case {case}"));
        }
    }

    for case in 0..RANDOM_CASES {
        let (e, f) = (random_bundle(&mut rng, &spec), random_bundle(&mut rng, &spec));
        let series = random_series(&mut rng, order, Some(qi(1)));
        let sum = match whitney_sum(&e, &f) {
            Ok(s) => s,
            Err(err) => {
                t.check(false, || format!("whitney case {case}: {err}"));
                continue;
            }
        };
        let add = (|| {
            let lhs = additive_extension(&series, &sum)?;
            let rhs = additive_extension(&series, &e)?.try_add(&additive_extension(&series, &f)?)?;
            Ok(lhs == rhs)
        })();
        if let Some(ok) = t.run(|| format!("additive case {case}"), add) {
            t.check(ok, || format!("additive extension not additive, case {case}"));
        }
        let mul = (|| {
            let lhs = multiplicative_extension(&series, &sum)?;
            let rhs = multiplicative_extension(&series, &e)?
                .try_mul(&multiplicative_extension(&series, &f)?)?;
            Ok(lhs == rhs)
        })();
        if let Some(ok) = t.run(|| format!("multiplicative case {case}"), mul) {
            t.check(ok, || format!("multiplicative extension not multiplicative, case {case}"));
        }
    }

    let theories = [TheoryModel::chow(), TheoryModel::ktheory(), TheoryModel::exp_twisted_chow(8)];
    for case in 0..RANDOM_CASES {
        let theory = &theories[rng.gen_range(0..theories.len())];
        let f = random_morphism(&mut rng);
        let x = random_element(&mut rng, &ring_of(theory, &f.target()), None);
        let y = random_element(&mut rng, &ring_of(theory, &f.source()), None);
        let holds = (|| {
            let lhs = pushforward(theory, &f, &pullback(theory, &f, &x)?.try_mul(&y)?)?;
            let rhs = x.try_mul(&pushforward(theory, &f, &y)?)?;
            Ok(lhs == rhs)
        })();
        if let Some(ok) = t.run(|| format!("projection formula case {case}"), holds) {
            t.check(ok, || format!("projection formula fails for {} {f:?}", theory.name()));
        }
    }

    for case in 0..RANDOM_CASES {
        let factors: Vec<u32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..=4)).collect();
        let space = SpaceDescriptor::product(&factors);
        let k = ring_of(&TheoryModel::ktheory(), &space);
        let (a, b) = (random_element(&mut rng, &k, None), random_element(&mut rng, &k, None));
        let holds = (|| {
            let ab = universal_morphism(&(&a * &b), &space)?;
            let sum = universal_morphism(&(&a + &b), &space)?;
            let (ua, ub) = (universal_morphism(&a, &space)?, universal_morphism(&b, &space)?);
            Ok(ab == &ua * &ub && sum == &ua + &ub)
        })();
        if let Some(ok) = t.run(|| format!("ring morphism case {case}"), holds) {
            t.check(ok, || format!("universal morphism not a ring map on {factors:?}"));
        }
    }

    for case in 0..RANDOM_CASES {
        let order = rng.gen_range(1..=10);
        let mut f = random_series(&mut rng, order, Some(BigRational::zero()));
        if f.coeff(1).is_zero() {
            f = &f + &TruncatedSeries::variable(order);
        }
        let id = TruncatedSeries::variable(order);
        let holds = f.reversion().and_then(|g| Ok(f.compose(&g)? == id && g.compose(&f)? == id));
        if let Some(ok) = t.run(|| format!("reversion case {case}"), holds) {
            t.check(ok, || format!("reversion round trip fails for {f}"));
        }
    }
}

fn random_morphism<R: Rng>(rng: &mut R) -> MorphismDescriptor {
    match rng.gen_range(0..3) {
        0 => MorphismDescriptor::point_projection(rng.gen_range(0..=6)),
        1 => {
            let n = rng.gen_range(1..=6);
            MorphismDescriptor::linear_immersion(rng.gen_range(0..n), n).expect("m < n")
        }
        _ => {
            let space = SpaceDescriptor::product(&[rng.gen_range(0..=3), rng.gen_range(0..=3)]);
            if rng.gen_bool(0.5) {
                MorphismDescriptor::factor_projection(space, rng.gen_range(0..2)).expect("factor exists")
            } else {
                let which = rng.gen_range(0..2);
                let n = space.factors()[which];
                MorphismDescriptor::immersion_in(space, which, rng.gen_range(0..=n)).expect("m <= n")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        for id in [1, 2, 5, 7, 8, 9] {
            let r = run_criterion(id, DEFAULT_SEED).unwrap();
            assert!(r.pass(), "{r:?}");
        }
        assert!(run_criterion(11, 0).is_none());
    }

    #[test]
    fn failures_are_counted() {
        let mut t = Tally::new();
        t.check(true, || unreachable!());
        for i in 0..20 {
            t.check(false, || format!("case {i}"));
        }
        let r = t.finish(1);
        assert_eq!((r.cases, r.failure_count, r.failures.len()), (21, 20, MAX_LISTED));
        assert!(!r.pass());
    }
}
