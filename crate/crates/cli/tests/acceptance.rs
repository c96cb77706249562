//! Acceptance checks, one line per criterion. Expected values come from
//! closed forms and small brute-force computations written here, not from
//! the library's own verification grids.

use std::process::Command;
use std::time::{Duration, Instant};

use rrcalc::chern::{chern_character, symbolic_bundle, todd_class};
use rrcalc::models::{
    diagonal_class, k_line_class, metric_check, pushforward, ring_of, tangent_class, twist_theory,
    MorphismDescriptor, SpaceDescriptor, TheoryModel,
};
use rrcalc::rational::{q, qi};
use rrcalc::rr::{
    canonical_degree_hypersurface, chi_curve, chi_surface, euler_characteristic_pn, grr_sides,
    structure_sheaf_chern, zeuthen_segre, AbstractCurve, AbstractSurface, CurveBundle,
    FormSingularityData, SurfaceBundle,
};
use rrcalc::verify::{run_criterion, DEFAULT_SEED, RANDOM_CASES};
use rrcalc::{
    make_standard_series, BigInt, BigRational, RingElement, RingSpec, ScalarDomain, StandardSeries,
    TruncatedSeries,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Number of monomials of degree `d` in `k` variables.
fn monomial_count(k: i64, d: i64) -> BigInt {
    if d < 0 {
        return BigInt::from(0);
    }
    // C(d + k - 1, k - 1) by direct product
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for i in 1..k {
        num *= d + i;
        den *= i;
    }
    num / den
}

/// χ(P^n, O(d)): sections for d ≥ 0, Serre duality for d ≤ -n-1, zero between.
fn chi_oracle(n: i64, d: i64) -> BigInt {
    if d >= 0 {
        monomial_count(n + 1, d)
    } else if d < -n {
        let top = monomial_count(n + 1, -d - n - 1);
        if n % 2 == 0 {
            top
        } else {
            -top
        }
    } else {
        BigInt::from(0)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * i)
}

fn series_product(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    (0..=order)
        .map(|n| (0..=n).map(|i| &a[i] * &b[n - i]).sum())
        .collect()
}

fn criterion_1() -> Check {
    let todd = make_standard_series(StandardSeries::Todd, 4);
    let want = vec![qi(1), q(1, 2), q(1, 12), qi(0), q(-1, 720)];
    ensure(todd.coeffs() == want.as_slice(), || format!("todd {todd}"))?;
    let deficit = make_standard_series(StandardSeries::ExpDeficit, 8);
    let want: Vec<BigRational> = (0..=8u32)
        .map(|n| BigRational::new(BigInt::from(if n % 2 == 0 { 1 } else { -1 }), factorial(n + 1)))
        .collect();
    ensure(deficit.coeffs() == want.as_slice(), || format!("exp_deficit {deficit}"))?;
    ensure(deficit.coeffs()[..3] == [qi(1), q(-1, 2), q(1, 6)], || "leading terms".into())?;
    let todd8 = make_standard_series(StandardSeries::Todd, 8);
    let prod = series_product(deficit.coeffs(), todd8.coeffs(), 8);
    let one: Vec<BigRational> = (0..=8).map(|i| qi((i == 0) as i64)).collect();
    ensure(prod == one, || "product is not 1".into())?;
    Ok("todd 1, 1/2, 1/12, 0, -1/720; product with exp_deficit is 1 through order 8".into())
}

/// Elementary symmetric polynomials in the three variables of `spec`.
fn elementary(spec: &RingSpec) -> [RingElement; 3] {
    let v: Vec<RingElement> = (0..3).map(|i| RingElement::var(spec, i)).collect();
    [
        &(&v[0] + &v[1]) + &v[2],
        &(&(&v[0] * &v[1]) + &(&v[0] * &v[2])) + &(&v[1] * &v[2]),
        &(&v[0] * &v[1]) * &v[2],
    ]
}

fn criterion_2() -> Check {
    let roots = RingSpec::weighted(&["a", "b", "c"], &[3, 3, 3], &[1, 1, 1], Some(3), ScalarDomain::Rationals)
        .map_err(err)?;
    let [e1, e2, e3] = elementary(&roots);
    let exp = make_standard_series(StandardSeries::Exponential, 3);
    let todd = TruncatedSeries::new(vec![qi(1), q(1, 2), q(1, 12), qi(0)]);
    for rank in [3i64, 4] {
        let e = symbolic_bundle(rank, 3, 3).map_err(err)?;
        let spec = e.spec().clone();
        let ch = chern_character(&e).map_err(err)?;
        let td = todd_class(&e).map_err(err)?;
        let ch_text = format!("{rank} + c1 + 1/2*c1^2 - c2 + 1/6*c1^3 - 1/2*c1*c2 + 1/2*c3");
        let td_text = "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2 + 1/24*c1*c2";
        ensure(ch == RingElement::parse(&spec, &ch_text).map_err(err)?, || format!("ch = {ch}"))?;
        ensure(td == RingElement::parse(&spec, td_text).map_err(err)?, || format!("td = {td}"))?;

        // explicit roots a, b, c plus rank - 3 trivial ones
        let images = [e1.clone(), e2.clone(), e3.clone()];
        let ch_roots = ch.substitute(&roots, &images).map_err(err)?;
        let td_roots = td.substitute(&roots, &images).map_err(err)?;
        let mut ch_direct = RingElement::from_int(&roots, rank - 3);
        let mut td_direct = RingElement::one(&roots);
        for i in 0..3 {
            let x = RingElement::var(&roots, i);
            ch_direct = &ch_direct + &RingElement::eval_series(&exp, &x).map_err(err)?;
            td_direct = &td_direct * &RingElement::eval_series(&todd, &x).map_err(err)?;
        }
        ensure(ch_roots == ch_direct, || format!("ch via roots, rank {rank}"))?;
        ensure(td_roots == td_direct, || format!("td via roots, rank {rank}"))?;
    }
    Ok("ch and td match the closed forms and explicit Chern roots".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for n in 0..=6u32 {
        let p = MorphismDescriptor::point_projection(n);
        let k = ring_of(&TheoryModel::ktheory(), &SpaceDescriptor::projective(n));
        let mut classes: Vec<(RingElement, Option<BigInt>)> = (0..=n)
            .map(|r| (RingElement::var(&k, 0).pow(r), None))
            .collect();
        classes[0].0 = RingElement::one(&k);
        for d in -6..=6 {
            classes.push((k_line_class(n, d), Some(chi_oracle(n as i64, d))));
        }
        for (a, chi) in classes {
            let sides = grr_sides(&p, &a).map_err(err)?;
            ensure(sides.lhs == sides.rhs, || format!("P^{n} -> pt, {a}: {} vs {}", sides.lhs, sides.rhs))?;
            if let Some(chi) = chi {
                let want = BigRational::from_integer(chi);
                ensure(sides.lhs.constant_term() == want, || format!("P^{n} -> pt, {a}: chi"))?;
            }
            cases += 1;
        }
    }
    for n in 1..=5u32 {
        for m in 0..n {
            let i = MorphismDescriptor::linear_immersion(m, n).map_err(err)?;
            for d in -4..=4 {
                let sides = grr_sides(&i, &k_line_class(m, d)).map_err(err)?;
                ensure(sides.lhs == sides.rhs, || format!("P^{m} in P^{n}, O({d})"))?;
                // rank 0 class supported in codimension n - m
                let low = sides.lhs.min_degree();
                ensure(low == Some(n - m), || format!("P^{m} in P^{n}, O({d}): lowest degree {low:?}"))?;
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} residuals exactly zero in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_4() -> Check {
    let mut cases = 0;
    for n in 0..=6u32 {
        for d in -6..=6 {
            let chi = euler_characteristic_pn(n, d).map_err(err)?;
            let want = chi_oracle(n as i64, d);
            ensure(chi == want, || format!("chi(P^{n}, O({d})) = {chi}, expected {want}"))?;
            let k_side = pushforward(
                &TheoryModel::ktheory(),
                &MorphismDescriptor::point_projection(n),
                &k_line_class(n, d),
            )
            .map_err(err)?;
            ensure(k_side.constant_term() == BigRational::from_integer(want), || "k path".into())?;
            cases += 1;
        }
        ensure(euler_characteristic_pn(n, 0).map_err(err)? == BigInt::from(1), || format!("chi(P^{n}, O)"))?;
    }
    Ok(format!("{cases} values match section counts and Serre duality"))
}

fn criterion_5() -> Check {
    let twisted = TheoryModel::exp_twisted_chow(12);
    for order in 1..=12u32 {
        let law = twisted.group_law(order).map_err(err)?;
        let spec = law.spec().clone();
        let (x, y) = (RingElement::var(&spec, 0), RingElement::var(&spec, 1));
        // e(x) = 1 - e^{-x}: 1 - e^{-(a+b)} = 1 - (1 - u)(1 - v)
        let one = RingElement::one(&spec);
        let want = &one - &(&(&one - &x) * &(&one - &y));
        ensure(law == want, || format!("order {order}: {law}"))?;
    }
    for base in [TheoryModel::chow(), TheoryModel::ktheory()] {
        let same = twist_theory(&base, &TruncatedSeries::one(12)).map_err(err)?;
        ensure(same == base, || format!("identity twist of {}", base.name()))?;
    }
    Ok("group law is u + v - uv at orders 1..12; constant twist 1 is the identity".into())
}

/// Leibniz expansion.
fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
    fn go(m: &[Vec<BigRational>], row: usize, used: &mut Vec<bool>, sign: i64, acc: BigRational, out: &mut BigRational) {
        if row == m.len() {
            *out += acc * qi(sign);
            return;
        }
        let mut inversions_sign = sign;
        for col in 0..m.len() {
            if used[col] {
                continue;
            }
            if m[row][col] != qi(0) {
                used[col] = true;
                go(m, row + 1, used, inversions_sign, &acc * &m[row][col], out);
                used[col] = false;
            }
            inversions_sign = -inversions_sign;
        }
    }
    let mut out = qi(0);
    go(m, 0, &mut vec![false; m.len()], 1, qi(1), &mut out);
    out
}

fn criterion_6() -> Check {
    for theory in [TheoryModel::chow(), TheoryModel::ktheory()] {
        let name = theory.name();
        for n in 0..=6u32 {
            let delta = diagonal_class(&theory, n).map_err(err)?;
            for r in 0..=n {
                for s in 0..=n {
                    let a = delta.coefficient_of(&[r, s]).map_err(err)?;
                    if r + s < n {
                        ensure(a == qi(0), || format!("{name} n={n}: a_{r}{s} = {a}"))?;
                    } else if r + s == n {
                        ensure(a == qi(1), || format!("{name} n={n}: a_{r}{s} = {a}"))?;
                    }
                    ensure(a == delta.coefficient_of(&[s, r]).map_err(err)?, || "symmetry".into())?;
                }
            }
            let matrix = metric_check(&theory, n).map_err(err)?.matrix;
            let det = leibniz(&matrix);
            ensure(det == qi(1) || det == qi(-1), || format!("{name} n={n}: det {det}"))?;
            let p = MorphismDescriptor::factor_projection(SpaceDescriptor::product(&[n, n]), 0).map_err(err)?;
            let normal = pushforward(&theory, &p, &delta).map_err(err)?;
            ensure(normal.is_one(), || format!("{name} n={n}: normalisation {normal}"))?;
        }
    }
    // Koszul: O_Δ = 1 - O(-1,-1) = 1 - (1 - t1)(1 - t2)
    let k1 = diagonal_class(&TheoryModel::ktheory(), 1).map_err(err)?;
    let spec = k1.spec().clone();
    let one = RingElement::one(&spec);
    let koszul = &one - &(&(&one - &RingElement::var(&spec, 0)) * &(&one - &RingElement::var(&spec, 1)));
    ensure(k1 == koszul, || format!("k diagonal n=1 = {k1}"))?;
    Ok(format!("n <= 6 in chow and ktheory; k diagonal n=1 is {k1}"))
}

fn criterion_7() -> Check {
    for g in 0..=10 {
        let c = AbstractCurve::new(g).map_err(err)?;
        let chi = chi_curve(&c, &CurveBundle { rank: 1, deg_c1: 0 }).map_err(err)?;
        ensure(chi == BigInt::from(1 - g), || format!("chi(O) genus {g}"))?;
        for d in -6..=6 {
            let chi = chi_curve(&c, &CurveBundle { rank: 1, deg_c1: d }).map_err(err)?;
            ensure(chi == BigInt::from(d + 1 - g), || format!("genus {g}, degree {d}"))?;
        }
    }
    let p2 = AbstractSurface { k2: 9, chi_top: 3 };
    ensure(chi_surface(&p2, &SurfaceBundle::trivial()).map_err(err)? == BigInt::from(1), || "noether".into())?;
    for d in -6..=6i64 {
        let e = SurfaceBundle {
            rank: 1,
            c1_dot_k: -3 * d,
            c1_sq: d * d,
            deg_c2: 0,
        };
        let chi = chi_surface(&p2, &e).map_err(err)?;
        ensure(chi == chi_oracle(2, d), || format!("chi(P^2, O({d})) = {chi}"))?;
    }
    for deg in 1..=10i64 {
        let k = canonical_degree_hypersurface(2, deg).map_err(err)?;
        let genus = (deg - 1) * (deg - 2) / 2;
        ensure(k == BigInt::from(2 * genus - 2), || format!("plane curve of degree {deg}: deg K = {k}"))?;
    }
    Ok("curve, Noether, P^2 surface and plane-curve genus values all match".into())
}

/// `e_d` for power sums `p_i = 0 (i < d)`, `p_d = d!`, via `k e_k = Σ (-1)^{i-1} e_{k-i} p_i`.
fn newton_top(d: u32) -> Vec<BigRational> {
    let p: Vec<BigRational> = (0..=d)
        .map(|i| if i == d { BigRational::from_integer(factorial(d)) } else { qi(0) })
        .collect();
    let mut e = vec![qi(1)];
    for k in 1..=d as usize {
        let mut s = qi(0);
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            s += if i % 2 == 1 { term } else { -term };
        }
        e.push(s / qi(k as i64));
    }
    e
}

fn criterion_8() -> Check {
    for d in 1..=6u32 {
        let s = structure_sheaf_chern(d).map_err(err)?;
        let oracle = newton_top(d);
        for i in 1..d {
            ensure(s.classes[i as usize - 1].is_zero(), || format!("d={d}: c_{i} nonzero"))?;
        }
        ensure(s.top_multiple == oracle[d as usize], || format!("d={d}: c_d = {} Y", s.top_multiple))?;
        let magnitude = BigRational::from_integer(factorial(d - 1));
        let sign = if d % 2 == 1 { qi(1) } else { qi(-1) };
        ensure(s.top_multiple == &magnitude * &sign, || format!("d={d}: sign"))?;
    }
    let out = Command::new(env!("CARGO_BIN_EXE_rrcalc"))
        .args(["sheaf-chern", "--codim", "2", "--format", "json"])
        .output()
        .map_err(err)?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(text.contains("sign_note") && text.contains("(-1)^d"), || "sign note missing from output".into())?;
    Ok("c_i = 0 below d and c_d = (-1)^(d-1) (d-1)! Y for d <= 6; sign note printed".into())
}

fn criterion_9() -> Check {
    // ω = d(x1/x0): divisor D = -2L, one reduced singular point
    let (l_dot_k, l_sq) = (-3i64, 1i64);
    let (dk, d2) = (-2 * l_dot_k, 4 * l_sq);
    ensure((dk, d2) == (6, 4), || "divisor data".into())?;
    let data = FormSingularityData::new(dk, d2, &[1]).map_err(err)?;
    let zs = zeuthen_segre(&data).map_err(err)?;
    ensure(zs == BigInt::from(3), || format!("zeuthen-segre {zs}"))?;
    let chow = TheoryModel::chow();
    let c2 = tangent_class(&chow, 2).chern_class(2);
    let deg = pushforward(&chow, &MorphismDescriptor::point_projection(2), &c2).map_err(err)?;
    // c(T_P2) = (1 + h)^3, so c_2 = C(3, 2) h^2
    ensure(deg.constant_term() == qi(3), || format!("deg c2 = {deg}"))?;
    Ok("D.K - D^2 + 1 = 3 = deg c2(T_P2)".into())
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let report = run_criterion(10, DEFAULT_SEED).ok_or("missing criterion")?;
    ensure(report.pass(), || format!("{:?}", report.failures))?;
    ensure(report.cases >= 6 * RANDOM_CASES, || format!("only {} cases", report.cases))?;
    ensure(RANDOM_CASES >= 200, || "too few random cases".into())?;
    let suite_start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_rrcalc"))
        .args(["suite", "--format", "json"])
        .output()
        .map_err(err)?;
    let suite_time = suite_start.elapsed();
    ensure(status.status.code() == Some(0), || {
        format!("suite exited {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stdout))
    })?;
    ensure(suite_time < Duration::from_secs(60), || format!("suite took {suite_time:?}"))?;
    Ok(format!(
        "{} random cases in {:.2}s; full suite exit 0 in {:.2}s",
        report.cases,
        start.elapsed().as_secs_f64() - suite_time.as_secs_f64(),
        suite_time.as_secs_f64()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("series constants", criterion_1),
        ("expansion formulas", criterion_2),
        ("grr grid", criterion_3),
        ("euler characteristics", criterion_4),
        ("twist law", criterion_5),
        ("diagonal", criterion_6),
        ("curve and surface formulas", criterion_7),
        ("structure sheaf chern classes", criterion_8),
        ("zeuthen-segre", criterion_9),
        ("algebraic property suites", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
