//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every criterion is attempted and reported even when an earlier one fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use distinction_core::coset::{
    anti_diagonal, block_involution, build_us_odd, build_ws_even, coarsen, enumerate_coset_matrices,
    extract_odd_involution, is_open, root_action, ws_from_index_formulas, CaseTag, CosetMatrix, Partition,
    Permutation, WsSource,
};
use distinction_core::engine::{steinberg_decision, Status};
use distinction_core::lfactor::{eval_at, eval_nonvanishing_at_s0, i2_ratio, RamificationTag};
use distinction_core::oracle::{
    flag_profile, is_frobenius_fixed, quaternion_model_check_int, reduce_to_representative,
    representative_flag, visit_flags, FieldSpec, DEFAULT_BUDGET,
};
use distinction_core::solver::{orbit_supports, ChiToken};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_matrices(n: usize, case: CaseTag) -> Vec<CosetMatrix> {
    Partition::all_of(n)
        .iter()
        .flat_map(|p| enumerate_coset_matrices(p, case).unwrap())
        .collect()
}

fn chi_tokens() -> [ChiToken; 2] {
    [ChiToken::Triv, ChiToken::Eta]
}

// η^{md−1}: trivial exactly when md − 1 is even.
fn expected_token(m: usize, d: usize) -> ChiToken {
    if (m * d - 1).is_multiple_of(2) {
        ChiToken::Triv
    } else {
        ChiToken::Eta
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for m in 1..=4 {
        for d in 1..=4 {
            let case = CaseTag::for_index(d);
            for chi in chi_tokens() {
                let v = steinberg_decision(case, m, d, chi).map_err(|e| e.to_string())?;
                runs += 1;
                ensure(v.status != Status::Inconclusive, || {
                    format!("INCONCLUSIVE at m={m} d={d} chi={chi}")
                })?;
                let want = if chi == expected_token(m, d) {
                    (Status::Distinguished, 1)
                } else {
                    (Status::NotDistinguished, 0)
                };
                ensure((v.status, v.multiplicity) == want, || {
                    format!(
                        "m={m} d={d} chi={chi}: got {} x{}, want {} x{}",
                        v.status, v.multiplicity, want.0, want.1
                    )
                })?;
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || {
        format!("took {took:?}, limit 10 s")
    })?;
    Ok(format!(
        "{runs} decisions match eta^(md-1), no INCONCLUSIVE, {took:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let kappa = Rational64::one();
    let mut checked = 0;
    for n in [2, 4, 6] {
        let open = anti_diagonal(CaseTag::Even, n);
        let orbits = enumerate_coset_matrices(&Partition::minimal(n).unwrap(), CaseTag::Even).unwrap();
        for chi in chi_tokens() {
            let supporting: Vec<&CosetMatrix> = orbits
                .iter()
                .filter(|s| orbit_supports(s, chi, kappa).unwrap().feasible)
                .collect();
            checked += orbits.len();
            ensure(supporting == vec![&open], || {
                format!("n={n} chi={chi}: {} supporting orbits", supporting.len())
            })?;
        }
    }
    Ok(format!(
        "{checked} minimal-partition orbits, support is exactly the anti-diagonal"
    ))
}

fn criterion_3() -> Outcome {
    let kappa = Rational64::one();
    let mut checked = 0;
    for n in [2, 4, 6] {
        let open = anti_diagonal(CaseTag::Even, n);
        let middle = coarsen(&open, n / 2).unwrap();
        for chi in chi_tokens() {
            let mut feasible = BTreeSet::new();
            for at in 0..n - 1 {
                let p = Partition::next_to_minimal(n, at).unwrap();
                for s in enumerate_coset_matrices(&p, CaseTag::Even).unwrap() {
                    checked += 1;
                    if orbit_supports(&s, chi, kappa).unwrap().feasible {
                        feasible.insert(s.row_major().into_iter().chain([at]).collect::<Vec<_>>());
                    }
                }
            }
            let want: BTreeSet<Vec<usize>> = match chi {
                ChiToken::Eta => BTreeSet::new(),
                ChiToken::Triv => [middle.row_major().into_iter().chain([n / 2 - 1]).collect()].into(),
            };
            ensure(feasible == want, || {
                format!("n={n} chi={chi}: feasible set {feasible:?}, want {want:?}")
            })?;
        }
    }
    Ok(format!(
        "{checked} next-to-minimal orbits; eta: none feasible, triv: only the middle merge"
    ))
}

fn criterion_4() -> Outcome {
    let (mut orbits, mut roots, mut flips, mut crossing) = (0, 0, 0, 0);
    let mut first = None;
    for n in 1..=6 {
        for s in all_matrices(n, CaseTag::Even) {
            let action = root_action(&s);
            orbits += 1;
            roots += action.table.len();
            flips += action.fine_block_flips().len();
            crossing += action.crossing_violations().len();
            if first.is_none() && !action.holds() {
                first = Some((s.clone(), action.violations()[0]));
            }
        }
    }
    let summary = format!(
        "{orbits} orbits, {roots} roots of Phi_M; sign changes: {flips} inside fine blocks, \
         {crossing} on roots crossing fine blocks"
    );
    match first {
        None => Ok(summary),
        Some((s, r)) => Err(format!(
            "{summary}; first: s={:?} root {:?} -> {:?}. tau_s reverses each diagonal interval, \
             so roots inside a fine block of size >= 2 change sign; the inclusion holds on \
             Phi_M minus Phi_(M_s)",
            s.entries(),
            r.root,
            r.image
        )),
    }
}

fn conjugate_reversal(ws: &Permutation) -> Permutation {
    ws.compose(&Permutation::reversal(ws.len()))
        .compose(&ws.inverse())
}

fn criterion_5() -> Outcome {
    let cs: Vec<BigRational> = [2, 3, -1]
        .iter()
        .map(|&c| BigRational::from_integer(c.into()))
        .collect();
    let (mut odd, mut even, mut from_formulas, mut diagnosed) = (0, 0, 0, 0);
    for n in 1..=6 {
        for s in all_matrices(n, CaseTag::Odd) {
            let tau = block_involution(&s).position_map;
            let u = build_us_odd(&s).map_err(|e| e.to_string())?;
            for c in &cs {
                let p = extract_odd_involution(&u, c).map_err(|e| e.to_string())?;
                ensure(p == tau, || {
                    format!("odd s={:?} c={c}: {p:?} vs {tau:?}", s.entries())
                })?;
            }
            odd += 1;
        }
        for s in all_matrices(n, CaseTag::Even) {
            let tau = block_involution(&s).position_map;
            let built = build_ws_even(&s).map_err(|e| e.to_string())?;
            ensure(conjugate_reversal(&built.permutation) == tau, || {
                format!("even s={:?}: w_s w w_s^-1 differs from tau_s", s.entries())
            })?;
            match (ws_from_index_formulas(&s), built.source) {
                (Ok(p), WsSource::IndexFormulas) => {
                    ensure(
                        conjugate_reversal(&p) == tau && built.diagnostic.is_none(),
                        || format!("even s={:?}: formula result not consistent", s.entries()),
                    )?;
                    from_formulas += 1;
                }
                (Err(_), WsSource::Intervals) => {
                    ensure(built.diagnostic.is_some(), || {
                        format!("even s={:?}: silent fallback", s.entries())
                    })?;
                    diagnosed += 1;
                }
                _ => {
                    return Err(format!(
                        "even s={:?}: source disagrees with formulas",
                        s.entries()
                    ))
                }
            }
            even += 1;
        }
    }
    Ok(format!(
        "{odd} odd orbits via u_s u_s^-theta (3 values of lambda^2); {even} even orbits: \
         {from_formulas} from index formulas, {diagnosed} via intervals with a logged diagnostic"
    ))
}

fn q_pow(q: u64, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b, (-e) as usize).recip()
    }
}

// Tate factor `1/(1 - a q^{-z})` with `z` an integer exponent.
fn geom(a: i64, q: u64, z: i64) -> BigRational {
    (BigRational::one() - BigRational::from_integer(a.into()) * q_pow(q, -z)).recip()
}

fn criterion_6() -> Outcome {
    let qs = [2u64, 3, 4, 5, 7, 9];
    let mut samples = 0;
    for ram in RamificationTag::ALL {
        for d in 1..=5i64 {
            let r = i2_ratio(d as usize, ram).map_err(|e| e.to_string())?;
            ensure(r.chain_holds, || format!("d={d} {ram}: chain identity fails"))?;
            let report = eval_nonvanishing_at_s0(&r.ratio, &qs).map_err(|e| e.to_string())?;
            ensure(report.nonvanishing, || format!("d={d} {ram}: vanishes at s=0"))?;
            // Independent values from the Tate factors written out by hand,
            // at s = 0, 1, 2 (t = q^{-s}).
            for &q in &qs {
                for s in 0..=2i64 {
                    let t = q_pow(q, -s);
                    let l_eta = match ram {
                        RamificationTag::Unramified => geom(-1, q, 2 * d * s),
                        RamificationTag::Ramified => BigRational::one(),
                    };
                    let l_e = || match ram {
                        RamificationTag::Unramified => geom(1, q, 4 * d * s),
                        RamificationTag::Ramified => geom(1, q, 2 * d * s),
                    };
                    let ratio = geom(1, q, d * (2 * s - 1)) / &l_eta;
                    // At s = 0 both ζ(2ds) and L(1_E, 2ds) have poles.
                    if s > 0 {
                        let chain = geom(1, q, d * (2 * s - 1)) * geom(1, q, 2 * d * s) / l_e();
                        ensure(ratio == chain, || {
                            format!("hand oracle inconsistent at d={d} q={q}")
                        })?;
                    }
                    let got = eval_at(&r.ratio, q, &t).ok_or("unexpected pole")?;
                    let via = eval_at(&r.via_chain, q, &t).ok_or("unexpected pole")?;
                    ensure(got.is_rational() && got.a == ratio && via.a == ratio, || {
                        format!("d={d} {ram} q={q} s={s}: {got} vs {ratio}")
                    })?;
                    ensure(s != 0 || !ratio.is_zero(), || format!("zero at s=0, q={q}"))?;
                    samples += 1;
                }
            }
        }
    }
    Ok(format!(
        "chain identity for d<=5 in both ramifications; {samples} exact evaluations agree; nonzero at s=0"
    ))
}

fn census(f: &FieldSpec, p: &Partition, reduce: bool) -> Result<Vec<(CosetMatrix, u64)>, String> {
    let mut counts: Vec<(CosetMatrix, u64)> = Vec::new();
    let mut bad = None;
    visit_flags(f, p, DEFAULT_BUDGET, &mut |flag| {
        if bad.is_some() {
            return;
        }
        let prof = flag_profile(flag, f);
        if reduce {
            match reduce_to_representative(flag, f) {
                Ok(r) => {
                    let target = representative_flag(&prof, f).unwrap();
                    let moved = flag.transform(f, &r.h).unwrap();
                    if r.profile != prof || !is_frobenius_fixed(f, &r.h) || !moved.same_as(f, &target) {
                        bad = Some(format!("{p}: reduction does not reach the representative"));
                    }
                }
                Err(e) => bad = Some(format!("{p}: {e}")),
            }
        }
        match counts.iter_mut().find(|(s, _)| *s == prof) {
            Some(e) => e.1 += 1,
            None => counts.push((prof, 1)),
        }
    })
    .map_err(|e| e.to_string())?;
    bad.map_or(Ok(counts), Err)
}

fn check_census(f: &FieldSpec, p: &Partition, reduce: bool) -> Result<u64, String> {
    let counts = census(f, p, reduce)?;
    let found: BTreeSet<Vec<usize>> = counts.iter().map(|(s, _)| s.row_major()).collect();
    let want: BTreeSet<Vec<usize>> = enumerate_coset_matrices(p, CaseTag::Odd)
        .unwrap()
        .iter()
        .map(CosetMatrix::row_major)
        .collect();
    ensure(found == want, || {
        format!("{p}: profiles {found:?}, classes {want:?}")
    })?;
    let max = counts.iter().map(|c| c.1).max().unwrap_or(0);
    let top: Vec<&CosetMatrix> = counts.iter().filter(|c| c.1 == max).map(|c| &c.0).collect();
    ensure(top.len() == 1 && is_open(top[0]).unwrap(), || {
        format!("{p}: largest count {max} not attained by the open orbit alone")
    })?;
    if p.parts().iter().all(|&x| x == 1) {
        let anti = anti_diagonal(CaseTag::Odd, p.total());
        ensure(top[0] == &anti, || {
            format!("{p}: anti-diagonal is not the largest class")
        })?;
    }
    Ok(counts.iter().map(|c| c.1).sum())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let f = FieldSpec::for_q(3).map_err(|e| e.to_string())?;
    let mut flags = 0;
    let mut partitions = 0;
    for n in 1..=3 {
        for p in Partition::all_of(n) {
            flags += check_census(&f, &p, true)?;
            partitions += 1;
        }
    }
    let small = start.elapsed();
    let p4 = Partition::minimal(4).unwrap();
    let n4 = check_census(&f, &p4, false)?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || {
        format!("took {took:?}, limit 60 s")
    })?;
    Ok(format!(
        "q=3: {partitions} partitions of n<=3, {flags} flags all reduced ({small:.2?}); \
         n=4 minimal: {n4} flags; profiles = classes, open orbit strictly largest, {took:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    for (a, b) in [(-1, -1), (-1, 2), (-1, 3), (2, 3), (-2, -5)] {
        let r = quaternion_model_check_int(a, b).map_err(|e| e.to_string())?;
        let failed: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        ensure(r.passed && failed.is_empty(), || format!("({a},{b}): {failed:?}"))?;
    }
    Ok("sigma = theta^-1 o int(s_eps) for 5 quaternion algebras, exact".into())
}

fn criterion_9() -> Outcome {
    let kappas = [
        Rational64::one(),
        Rational64::new(1, 2),
        Rational64::from_integer(3),
    ];
    let mut checked = 0;
    for n in 1..=6 {
        for case in [CaseTag::Even, CaseTag::Odd] {
            for s in all_matrices(n, case) {
                for chi in chi_tokens() {
                    let base = orbit_supports(&s, chi, kappas[0]).unwrap().feasible;
                    for &k in &kappas[1..] {
                        let other = orbit_supports(&s, chi, k).unwrap().feasible;
                        ensure(other == base, || {
                            format!("s={:?} chi={chi} kappa={k}: verdict changes", s.entries())
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} (orbit, chi) pairs give the same verdict for kappa in {{1, 1/2, 3}}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {k}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {k}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
