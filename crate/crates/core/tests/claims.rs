use waring_core::coprime_sums::{enumerate_coprime_sums, r_max_star};
use waring_core::monomials::{enumerate_monomials, r_max};
use waring_core::rank_tables::{generic_rank, upper_bounds, RecordKind};
use waring_core::verify::{
    evaluate, gaps_nonincreasing, ratio_growth_fixed_n, verify_slope_step, Claim, GridRange,
    RatioSubject, Status, Verifier,
};
use waring_core::{binomial, Mode, Monomial, Natural, Ratio};

fn range(a: u32, b: u32) -> GridRange {
    GridRange::new(a, b).unwrap()
}

/// Rank by the product formula, computed in u128 from the raw exponent list.
fn naive_rank(exps: &[u32]) -> u128 {
    let mut sorted = exps.to_vec();
    sorted.sort_unstable();
    sorted.iter().skip(1).map(|&a| a as u128 + 1).product()
}

#[test]
fn monomial_ranks_match_naive_product() {
    for n in 1..=5 {
        for d in 1..=12 {
            for m in enumerate_monomials(n, d) {
                let want = naive_rank(m.exponents());
                assert_eq!(m.rank(), Natural::from(want as u64), "{m}");
            }
        }
    }
}

#[test]
fn reverse_ordered_input_gives_same_rank() {
    let a = Monomial::parse("3,1,2", None).unwrap();
    let b = Monomial::parse("1,2,3", None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.rank(), Natural::from(12u32));
}

#[test]
fn max_rank_never_exceeds_any_bound() {
    for n in 2..=7 {
        for d in 2..=14 {
            let m = r_max(n, d, Mode::ClosedForm).unwrap();
            for record in upper_bounds(n, d) {
                assert!(m <= record.value, "({n},{d}) {:?}", record.kind);
            }
        }
    }
}

#[test]
fn span_bound_counts_monomials() {
    for n in 1..=5 {
        for d in 1..=8 {
            let span = upper_bounds(n, d)
                .into_iter()
                .find(|r| r.kind == RecordKind::SpanBound)
                .unwrap();
            let count = enumerate_monomials(n, d).count() as u64;
            assert!(count <= span.value.to_u64().unwrap());
            assert_eq!(
                span.value,
                binomial((d + n - 1) as u64, (n - 1) as u64)
            );
        }
    }
}

#[test]
fn coprime_maximum_dominates_monomial_maximum() {
    for n in 1..=7 {
        for d in 1..=8 {
            let star = r_max_star(n, d, Mode::Oracle).unwrap();
            assert!(star >= r_max(n, d, Mode::ClosedForm).unwrap(), "({n},{d})");
        }
    }
}

#[test]
fn every_enumerated_sum_is_below_the_maximum() {
    let best = r_max_star(6, 6, Mode::ClosedForm).unwrap();
    for s in enumerate_coprime_sums(6, 6, false) {
        assert!(s.rank() <= best, "{s}");
        assert_eq!(s.degree(), 6);
        assert!(s.vars_used() <= 6);
    }
}

#[test]
fn slope_step_holds_on_grid() {
    let report = verify_slope_step(range(4, 29), range(5, 30)).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert!(report.checked_count > 300);
}

#[test]
fn reported_cases_recompute() {
    let report = Verifier::new(1)
        .run(Claim::TheoremCoprime, range(4, 5), range(3, 4))
        .unwrap();
    assert_eq!(report.violations.len(), 3);
    for case in &report.violations {
        let (lhs, rhs) = evaluate(Claim::TheoremCoprime, case.n, case.d, case.witness.as_ref()).unwrap();
        assert_eq!((lhs, rhs), (case.lhs.clone(), case.rhs.clone()));
        assert_eq!(case.rhs, generic_rank(4, 3));
    }
}

#[test]
fn thread_count_does_not_change_results() {
    for claim in [Claim::TheoremMonomial, Claim::TheoremCoprime] {
        let a = Verifier::new(1).run(claim, range(4, 6), range(3, 9)).unwrap();
        let b = Verifier::new(4).run(claim, range(4, 6), range(3, 9)).unwrap();
        assert_eq!(a.checked_count, b.checked_count);
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.status, b.status);
    }
}

#[test]
fn ratio_converges_monotonically_for_large_degree() {
    // The gap oscillates with (d - 1) mod (n - 1), so sample one residue class.
    for n in 3..=6 {
        let samples: Vec<u32> = (32..=512).step_by(32).map(|k| 1 + k * (n - 1)).collect();
        let pts = ratio_growth_fixed_n(n, &samples, RatioSubject::Monomial).unwrap();
        assert!(gaps_nonincreasing(&pts), "n = {n}");
        assert!(pts.last().unwrap().gap < Ratio::from_i64(1, 100).unwrap());
    }
    let pts = ratio_growth_fixed_n(4, &[2048], RatioSubject::Monomial).unwrap();
    assert!(pts[0].gap < Ratio::from_i64(1, 50).unwrap());
}
