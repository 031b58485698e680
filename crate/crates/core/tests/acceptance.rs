//! End-to-end acceptance suite. Each test prints one `criterion N: PASS` or
//! `criterion N: FAIL` line (written straight to stderr so it survives
//! output capture) and then asserts both correctness and the time budget.

use std::io::Write;
use std::time::{Duration, Instant};

use bcice::arith::{self, int, MonomialWeight, QLaurent, Rational};
use bcice::braket::{
    braket_partition_function, f_matrices, slot_params, top_half, twisted_grid_closed_form, twisted_grid_direct,
    BraketMethod, SparseVec,
};
use bcice::classify::{
    build_instance, check_scenario, classify_bend_weights, negative_probe, perturb, ClassifyOutcome, ScenarioSpec,
};
use bcice::cli::{hall_littlewood_instance, rank_one_row, rank_two_instances};
use bcice::lattice::{partition_function_a, partition_function_bc, BendRow, BendWeights, Partition, PointSampler, SpectralPoint};
use bcice::relations::{
    caduceus_c_ratio, check_caduceus, check_fish_numeric, check_solvable, check_unitarity, fish_classify, uniform_regime,
    unitarity_witness, weyl_symmetry_failures, ybe_witness, FishConstantKind, RegimeTag, SolveMode, Verdict,
};
use bcice::special::{c_lambda, hall_littlewood_sum, macdonald_p, rank_closed_form, wzj_rhs, ClosedForm, RootSystemSpec};
use num_traits::Zero;

const SEED: u64 = 20;

fn report(n: u32, what: &str, start: Instant, limit: Duration, failures: &[String]) {
    let took = start.elapsed();
    let ok = failures.is_empty() && took <= limit;
    let line = format!(
        "criterion {n}: {} {what} ({:.2}s, limit {}s){}\n",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs(),
        failures.first().map(|f| format!(" first failure: {f}")).unwrap_or_default(),
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(failures.is_empty(), "criterion {n}: {} failures, first: {}", failures.len(), failures[0]);
    assert!(took <= limit, "criterion {n}: took {took:?}, limit {limit:?}");
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn k(n: i64) -> QLaurent {
    QLaurent::constant(int(n))
}

fn q(e: i32) -> QLaurent {
    QLaurent::q_pow(e)
}

fn compare(fails: &mut Vec<String>, label: &str, lambda: &Partition, pt: &SpectralPoint, lhs: Rational, rhs: Rational) {
    if lhs != rhs {
        fails.push(format!("{label} lambda={lambda:?} q={} lhs={lhs} rhs={rhs}", pt.q));
    }
}

#[test]
fn criterion_01_yang_baxter() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for pt in PointSampler::new(SEED).points(2, 5) {
        if let Some(w) = ybe_witness(pt.x(1), pt.x(2), &pt.q, 4, None).unwrap() {
            fails.push(format!("{w:?}"));
        }
    }
    report(1, "Yang-Baxter, 5 points, multiplicities <= 4", start, secs(5), &fails);
}

#[test]
fn criterion_02_unitarity() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for pt in PointSampler::new(SEED).points(2, 5) {
        if let Some(w) = unitarity_witness(pt.x(1), pt.x(2), &pt.q).unwrap() {
            fails.push(format!("{w:?}"));
        }
        assert!(check_unitarity(pt.x(1), pt.x(2), &pt.q).unwrap());
    }
    report(2, "unitarity, 5 points", start, secs(1), &fails);
}

#[test]
fn criterion_03_type_a() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for r in 1..=3 {
        let spec = RootSystemSpec::type_a(r);
        let points = PointSampler::new(SEED).points(r, 5);
        for l in Partition::all_in_box(r, 4) {
            for pt in &points {
                let rhs = pt.xs.iter().product::<Rational>() * macdonald_p(&spec, &l, pt).unwrap();
                compare(&mut fails, "type A", &l, pt, partition_function_a(&l, pt).unwrap(), rhs);
            }
        }
    }
    report(3, "type A = x1..xr P_lambda, r <= 3, lambda_1 <= 4", start, secs(120), &fails);
}

fn fish_rows() -> Vec<(RegimeTag, BendRow)> {
    let w = |c: i64, d: i32| MonomialWeight::new(k(c), d);
    vec![
        (RegimeTag::R1a, BendRow::equal_bc(k(3), k(2), k(-5))),
        (RegimeTag::R1b, BendRow::new(MonomialWeight::zero(), MonomialWeight::new(k(-3) * q(1), 0), w(3, 0), MonomialWeight::zero())),
        (RegimeTag::R2a, BendRow::new(MonomialWeight::zero(), w(-2, 1), w(2, -1), MonomialWeight::zero())),
        (RegimeTag::R2b, BendRow::shifted_bc(k(4), k(-2), q(2))),
        (RegimeTag::Degenerate, BendRow::new(MonomialWeight::int(7), MonomialWeight::zero(), MonomialWeight::zero(), MonomialWeight::int(-1))),
    ]
}

#[test]
fn criterion_04_fish() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let points = PointSampler::new(SEED).points(1, 5);
    for (tag, row) in fish_rows() {
        let bw = BendWeights::uniform(row, 1);
        let regime = fish_classify(&bw, 1);
        if regime.tag != tag {
            fails.push(format!("{tag:?} classified as {:?}", regime.tag));
            continue;
        }
        for pt in &points {
            let c = check_fish_numeric(&bw, 1, pt.x(1), &pt.q).unwrap();
            let want = regime.predicted_constant(pt.x(1), &pt.q).unwrap();
            if !c.holds || want.as_ref() != Some(&c.f) {
                fails.push(format!("{tag:?}: F={} predicted {want:?}", c.f));
            }
        }
    }
    let bad = BendWeights::uniform(BendRow::new(MonomialWeight::one(), MonomialWeight::int(2), MonomialWeight::one(), MonomialWeight::one()), 1);
    if fish_classify(&bad, 1).tag != RegimeTag::None {
        fails.push("B = 2C row was classified".into());
    }
    let witnessed = points.iter().any(|pt| {
        let c = check_fish_numeric(&bad, 1, pt.x(1), &pt.q).unwrap();
        !c.holds && c.witness.is_some()
    });
    if !witnessed {
        fails.push("no fish witness for a row fitting no regime".into());
    }
    report(4, "fish regimes 1a/1b/2a/2b/degenerate, witness for unclassified row", start, secs(5), &fails);
}

/// The symbolic condition for the `p`-particle caduceus relation between
/// two constant-coefficient rows, in regime 1a (`shifted = false`, `c` is
/// `C_j`) or 2b (`shifted = true`, `c` is `m_j`).
fn caduceus_condition(p: u32, shifted: bool, a: &[QLaurent; 2], c: &[QLaurent; 2], d: &[QLaurent; 2]) -> bool {
    let lhs = match (p, shifted) {
        (2, false) => q(2) * (a[0].clone() * d[1].clone() - c[0].clone() * c[1].clone())
            - (a[1].clone() * d[0].clone() - c[0].clone() * c[1].clone()),
        (2, true) => (q(3) - q(1)) * c[0].clone() * c[1].clone() + q(2) * d[1].clone() * a[0].clone()
            - a[1].clone() * d[0].clone(),
        (3, false) => c[1].clone() * d[0].clone() - c[0].clone() * d[1].clone(),
        (3, true) => c[1].clone() * d[0].clone() - q(2) * c[0].clone() * d[1].clone(),
        (1, false) => c[1].clone() * a[0].clone() - c[0].clone() * a[1].clone(),
        (1, true) => c[0].clone() * a[1].clone() - q(2) * c[1].clone() * a[0].clone(),
        _ => unreachable!(),
    };
    lhs.is_zero()
}

fn rows(shifted: bool, a: &[QLaurent; 2], c: &[QLaurent; 2], d: &[QLaurent; 2]) -> BendWeights {
    let row = |j: usize| {
        if shifted {
            BendRow::shifted_bc(a[j].clone(), c[j].clone(), d[j].clone())
        } else {
            BendRow::equal_bc(a[j].clone(), c[j].clone(), d[j].clone())
        }
    };
    BendWeights::new(vec![row(0), row(1)])
}

/// A weight set on which the `p`-particle condition holds (`satisfy`) or
/// fails: all weights random, then one weight solved for (and shifted by
/// a unit when a violation is wanted).
fn caduceus_case(p: u32, shifted: bool, satisfy: bool, s: &mut PointSampler) -> BendWeights {
    let mut small = || loop {
        let v = int((s.index(9) as i64) - 4);
        if !v.is_zero() {
            return QLaurent::constant(v) * q(s.index(3) as i32 - 1);
        }
    };
    let mut a = [small(), small()];
    let c = [small(), small()];
    let mut d = [small(), small()];
    let inv = |x: &QLaurent| {
        let (coef, e) = x.as_monomial().unwrap();
        QLaurent::monomial(coef.recip(), -e)
    };
    match (p, shifted) {
        (2, false) => {
            // A2 D1 = q^2 (A1 D2 - C1 C2) + C1 C2
            let cc = c[0].clone() * c[1].clone();
            a[1] = (q(2) * (a[0].clone() * d[1].clone() - cc.clone()) + cc) * inv(&d[0]);
        }
        (2, true) => {
            let mm = c[0].clone() * c[1].clone();
            a[1] = ((q(3) - q(1)) * mm + q(2) * d[1].clone() * a[0].clone()) * inv(&d[0]);
        }
        (3, false) => d[1] = c[1].clone() * d[0].clone() * inv(&c[0]),
        (3, true) => d[1] = c[1].clone() * d[0].clone() * inv(&(q(2) * c[0].clone())),
        (1, false) => a[1] = c[1].clone() * a[0].clone() * inv(&c[0]),
        (1, true) => a[1] = q(2) * c[1].clone() * a[0].clone() * inv(&c[0]),
        _ => unreachable!(),
    }
    if !satisfy {
        let bump = k(s.index(3) as i64 + 1);
        if p == 3 {
            d[1] = d[1].clone() + bump;
        } else {
            a[1] = a[1].clone() + bump;
        }
    }
    assert_eq!(caduceus_condition(p, shifted, &a, &c, &d), satisfy);
    rows(shifted, &a, &c, &d)
}

#[test]
fn criterion_05_caduceus() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let points = PointSampler::new(SEED).points(2, 3);
    let mut s = PointSampler::new(SEED + 1);
    for p in 1..=3 {
        for shifted in [false, true] {
            for satisfy in [true, false] {
                for i in 0..10 {
                    let bw = caduceus_case(p, shifted, satisfy, &mut s);
                    let regime = uniform_regime(&bw, 2).map(|r| r.tag);
                    let want = if shifted { RegimeTag::R2b } else { RegimeTag::R1a };
                    if regime != Ok(want) {
                        fails.push(format!("p={p} case {i}: regime {regime:?}"));
                        continue;
                    }
                    let results: Vec<_> = points.iter().map(|pt| check_caduceus(&bw, 1, 2, p, pt).unwrap()).collect();
                    let holds = results.iter().all(|c| c.holds);
                    if holds != satisfy {
                        fails.push(format!("p={p} {want:?} case {i}: expected holds={satisfy}, got {holds}"));
                    }
                    if satisfy && results.iter().any(|c| c.f != int(1)) {
                        fails.push(format!("p={p} {want:?} case {i}: F != 1"));
                    }
                }
            }
        }
    }
    let w = |c: QLaurent, d: i32| MonomialWeight::new(c, d);
    let twisted = [
        BendWeights::new(vec![
            BendRow::new(MonomialWeight::zero(), w(k(-2) * q(1), 0), w(k(2), 0), MonomialWeight::zero()),
            BendRow::new(MonomialWeight::zero(), w(k(5) * q(2), 0), w(k(-5) * q(1), 0), MonomialWeight::zero()),
        ]),
        BendWeights::new(vec![
            BendRow::new(MonomialWeight::zero(), w(k(-3), 1), w(k(3), -1), MonomialWeight::zero()),
            BendRow::new(MonomialWeight::zero(), w(k(-1) * q(1), 1), w(q(1), -1), MonomialWeight::zero()),
        ]),
    ];
    for bw in &twisted {
        let regime = uniform_regime(bw, 2).map(|r| r.fish_constant_kind);
        if regime != Ok(Some(FishConstantKind::XqRatio)) {
            fails.push(format!("twisted set classified {regime:?}"));
        }
        for pt in &points {
            let want = caduceus_c_ratio(bw, 1, 2, pt).unwrap();
            for p in 1..=3 {
                let c = check_caduceus(bw, 1, 2, p, pt).unwrap();
                if !c.holds || (!c.vacuous && c.f != want) {
                    fails.push(format!("twisted p={p}: F={} want {want}", c.f));
                }
            }
        }
    }
    report(5, "caduceus 1/2/3 particles iff symbolic condition, 10+10 sets each", start, secs(30), &fails);
}

#[test]
fn criterion_06_rank_one() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let points = PointSampler::new(SEED).points(1, 5);
    for form in [ClosedForm::R1a, ClosedForm::R1b, ClosedForm::R2a, ClosedForm::R2b] {
        let bw = BendWeights::uniform(rank_one_row(form), 1);
        for l in Partition::all_in_box(1, 5) {
            for pt in &points {
                let z = partition_function_bc(&l, &bw, pt).unwrap();
                compare(&mut fails, &format!("{form:?}"), &l, pt, z, rank_closed_form(form, &l, pt, &bw).unwrap());
            }
        }
    }
    let c1 = int(3);
    let bw = BendWeights::uniform(BendRow::equal_bc(k(2), QLaurent::constant(c1.clone()), k(-1)), 1);
    for pt in &points {
        let (x, xb) = (pt.x(1).clone(), pt.x(1).recip());
        let l0 = Partition::new(vec![0]).unwrap();
        let l1 = Partition::new(vec![1]).unwrap();
        let a0 = &c1 * (&x + &xb);
        let a1 = &c1 * (&x * &x + int(1) - &pt.q + &xb * &xb);
        compare(&mut fails, "anchor (0)", &l0, pt, partition_function_bc(&l0, &bw, pt).unwrap(), a0);
        compare(&mut fails, "anchor (1)", &l1, pt, partition_function_bc(&l1, &bw, pt).unwrap(), a1);
    }
    report(6, "rank one closed forms, lambda_1 <= 5, plus anchors", start, secs(5), &fails);
}

#[test]
fn criterion_07_rank_two() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let points = PointSampler::new(SEED).points(2, 5);
    let lambdas = Partition::all_in_box(2, 3);
    for (label, bw) in rank_two_instances() {
        assert_eq!(check_solvable(&bw, 2, SolveMode::RankTwo).verdict, Verdict::RankTwoSolvable, "{label}");
        for l in &lambdas {
            for pt in &points {
                let z = partition_function_bc(l, &bw, pt).unwrap();
                compare(&mut fails, label, l, pt, z, rank_closed_form(ClosedForm::Rank2, l, pt, &bw).unwrap());
            }
        }
    }
    let bw = hall_littlewood_instance();
    let c = RootSystemSpec::type_c(2);
    for l in &lambdas {
        for pt in &points {
            let rhs = arith::div(&hall_littlewood_sum(&c, l, 0, pt).unwrap(), &c_lambda(l, &pt.q).unwrap(), "c").unwrap();
            compare(&mut fails, "hall-littlewood", l, pt, partition_function_bc(l, &bw, pt).unwrap(), rhs);
        }
    }
    report(7, "rank two closed form (1a, 1a with A1D2 = 0, 2b) and the Hall-Littlewood weights, lambda in (3,3)", start, secs(120), &fails);
}

#[test]
fn criterion_08_rank_three() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let points = PointSampler::new(SEED).points(3, 3);
    for (case, form) in [(4, ClosedForm::Rank3Case4), (7, ClosedForm::Rank3Case7)] {
        let bw = build_instance(&ScenarioSpec::rank3(case), 0).unwrap();
        for l in Partition::all_in_box(3, 2) {
            for pt in &points {
                let z = partition_function_bc(&l, &bw, pt).unwrap();
                compare(&mut fails, &format!("case {case}"), &l, pt, z, rank_closed_form(form, &l, pt, &bw).unwrap());
            }
        }
    }
    report(8, "rank three cases 4 and 7, lambda in (2,2,2)", start, secs(600), &fails);
}

#[test]
fn criterion_09_wzj() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for r in 1..=3 {
        let bw = BendWeights::uniform(BendRow::wzj(), r);
        let points = PointSampler::new(SEED).points(r, 3);
        for l in Partition::all_in_box(r, 3) {
            for pt in &points {
                compare(&mut fails, "wzj", &l, pt, partition_function_bc(&l, &bw, pt).unwrap(), wzj_rhs(&l, pt).unwrap());
            }
        }
    }
    report(9, "C = 1, B = -q closed form, r <= 3, lambda_1 <= 3", start, secs(300), &fails);
}

fn solvable_suites() -> Vec<(String, BendWeights)> {
    let mut out = Vec::new();
    for form in [ClosedForm::R1a, ClosedForm::R1b, ClosedForm::R2a, ClosedForm::R2b] {
        out.push((format!("{form:?}"), BendWeights::uniform(rank_one_row(form), 1)));
    }
    for (label, bw) in rank_two_instances() {
        out.push((label.to_string(), bw));
    }
    out.push(("hall-littlewood".into(), hall_littlewood_instance()));
    for s in ScenarioSpec::catalog(3) {
        out.push((s.name(), build_instance(&s, 0).unwrap()));
    }
    out
}

#[test]
fn criterion_10_transfer_matrices() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for r in 1..=3 {
        let pt = PointSampler::new(SEED).point(r);
        let fm = f_matrices(&pt).unwrap();
        if fm.f.mul(&fm.fstar) != fm.delta {
            fails.push(format!("F F* != Delta at r={r}"));
        }
        let empty = SparseVec::from([(0, int(1))]);
        if fm.f_inverse().unwrap().apply(&empty) != empty {
            fails.push(format!("F^-1 moves the empty state at r={r}"));
        }
        let params = slot_params(&pt);
        for l in Partition::all_in_box(r, 3) {
            let direct = twisted_grid_direct(&l, &params, &pt.q, top_half(r)).unwrap();
            let closed = twisted_grid_closed_form(&l, &params[..r], &pt.q).unwrap();
            compare(&mut fails, "twisted grid", &l, &pt, direct, closed);
        }
    }
    for (label, bw) in solvable_suites() {
        let r = bw.rank();
        let pt = PointSampler::new(SEED).point(r);
        for l in Partition::all_in_box(r, if r == 3 { 2 } else { 3 }) {
            let z = partition_function_bc(&l, &bw, &pt).unwrap();
            for m in [BraketMethod::Braket, BraketMethod::Twisted] {
                let b = braket_partition_function(&l, &bw, &pt, m).unwrap();
                compare(&mut fails, &format!("{label} {m:?}"), &l, &pt, b, z.clone());
            }
        }
    }
    report(10, "F F* = Delta, F^-1 fixes the empty state, twisted grid, braket = enumeration", start, secs(300), &fails);
}

#[test]
fn criterion_11_symmetry() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for (label, bw) in solvable_suites() {
        let r = bw.rank();
        let pt = PointSampler::new(SEED).point(r);
        for l in Partition::all_in_box(r, 3) {
            for f in weyl_symmetry_failures(&l, &bw, &pt).unwrap() {
                fails.push(format!("{label} lambda={l:?} {f:?}"));
            }
        }
    }
    report(11, "hyperoctahedral symmetry of every solvable suite, lambda_1 <= 3", start, secs(120), &fails);
}

#[test]
fn criterion_12_classification() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut instances = Vec::new();
    for r in [3, 4] {
        for s in ScenarioSpec::catalog(r) {
            let bw = build_instance(&s, 1).unwrap();
            if !check_scenario(&bw, &s) {
                fails.push(format!("{} instance misses its constraints", s.name()));
            }
            let v = check_solvable(&bw, r, SolveMode::Full).verdict;
            if v != Verdict::Solvable {
                fails.push(format!("{} instance is {v:?}", s.name()));
            }
            match classify_bend_weights(&bw, r).unwrap().outcome {
                ClassifyOutcome::Scenario { .. } => {}
                o => fails.push(format!("{} classified as {o:?}", s.name())),
            }
            instances.push((r, bw));
        }
    }
    let mut rng = PointSampler::new(SEED);
    for t in 0..20 {
        let (r, bw) = &instances[t % instances.len()];
        let (bad, j, which) = perturb(bw, &mut rng);
        let v = check_solvable(&bad, *r, SolveMode::Full).verdict;
        if v != Verdict::NotSolvable {
            fails.push(format!("perturbation {t} ({which}{j}) is {v:?}"));
        }
    }
    for r in [3, 5] {
        let s = ScenarioSpec::rank_r(5, r);
        if !matches!(build_instance(&s, 0), Err(bcice::Error::NoSolutionFound(_))) {
            fails.push(format!("scenario 5 accepted odd rank {r}"));
        }
    }
    report(12, "catalog instances solvable, 20 perturbations not, odd rank rejected", start, secs(120), &fails);
}

#[test]
fn criterion_13_negative_probe() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let specs: Vec<_> = (1..=4).map(|id| ScenarioSpec::rank_r(id, 4)).collect();
    let lambdas: Vec<_> = ["0,0,0,0", "1,0,0,0", "1,1,0,0"].iter().map(|s| Partition::parse(s).unwrap()).collect();
    let rep = negative_probe(4, &specs, &lambdas, SEED);
    fails.extend(rep.errors.iter().cloned());
    for s in &rep.scenarios {
        if !s.witness_found {
            fails.push(format!("{} has no witness", s.scenario.name()));
        }
    }
    if rep.scenarios.len() != specs.len() {
        fails.push(format!("{} of {} scenarios probed", rep.scenarios.len(), specs.len()));
    }
    report(13, "rank four scenarios 1-4 each give an exact witness", start, secs(600), &fails);
}
