//! Edge-of-contract checks: scaling that genuinely needs a pre-multiplier,
//! reducible squares polynomials, enumeration truncation, and time-limit
//! budgets.

use arboreal_core::analyze::{analyze_squares, scale_to_a2, Verdict};
use arboreal_core::certify::{verify_certificate, SearchBudget};
use arboreal_core::poly::{parse_polynomial, IntPolynomial};
use arboreal_core::spectrum::{squares_min_poly, EnumBudget, Side, SquaresSpectrum};
use num_bigint::BigInt;
use num_traits::One;
use std::time::Duration;

fn p(s: &str) -> IntPolynomial {
    parse_polynomial(s).unwrap()
}

#[test]
fn scaling_with_required_premultiplier() {
    // 2cos(2pi/11): five squared conjugates in (0, 4), no interlacing set at
    // d = 1, so the scale search must grow d before saturating denominators.
    let psi = p("x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1");
    let f = squares_min_poly(&psi).unwrap();
    let spec = SquaresSpectrum::new(&f).unwrap();
    assert!(spec.find_interlacing(Side::Left).is_none());

    let (d, scaled, cert) = scale_to_a2(&f, &SearchBudget::default()).unwrap();
    assert!(d > BigInt::one(), "a premultiplier is required here");
    assert!(cert.verified);
    assert!(verify_certificate(&scaled, &cert.a).unwrap());
    // the scaled polynomial really is the squares polynomial of d*lambda
    let d_sq = &d * &d;
    assert_eq!(scaled, f.scale_roots(&d_sq));
}

#[test]
fn reducible_squares_poly_obstructed() {
    // A product of two quadratics whose root sets interleave too tightly:
    // roots ~0.17, 0.38, 2.62, 5.83 leave no integer in the first gap.
    let f = &p("x^2 - 3x + 1") * &p("x^2 - 6x + 1");
    let report = analyze_squares(&f, &SearchBudget::default()).unwrap();
    match report.verdict {
        Verdict::NotInA2(arboreal_core::Obstruction::NoInterlacing { gap, .. }) => {
            assert_eq!(gap, 1)
        }
        v => panic!("expected a gap obstruction, got {}", v.tag()),
    }
}

#[test]
fn reducible_squares_poly_with_interlacing_runs_clean() {
    // Roots ~0.38, 2.62, 3.38, 5.62: interlacing exists and no mod-p
    // obstruction; whatever the engine concludes must be self-consistent.
    let f = &p("x^2 - 3x + 1") * &p("x^2 - 9x + 19");
    let report = analyze_squares(&f, &SearchBudget::default()).unwrap();
    match report.verdict {
        Verdict::InA2(cert) => {
            assert!(cert.verified);
            assert!(verify_certificate(&f, &cert.a).unwrap());
        }
        Verdict::Unknown { .. } => {}
        v => panic!("unexpected verdict {}", v.tag()),
    }
}

#[test]
fn enumeration_truncates_at_max_sets() {
    let f = p("x^4 - 44x^3 + 567x^2 - 2660x + 3564");
    let spec = SquaresSpectrum::new(&f).unwrap();
    let n = spec
        .enumerate_interlacing(
            Side::Right,
            EnumBudget {
                max_k: 100,
                max_sets: 7,
            },
        )
        .count();
    assert_eq!(n, 7);
}

#[test]
fn zero_time_limit_reports_unknown_for_slow_input() {
    // The trapped quartic cannot finish its delta phase instantly; a zero
    // time limit must surface as budget exhaustion, not a wrong verdict.
    let f = p("x^4 - 49x^3 + 632x^2 - 777x + 1");
    let budget = SearchBudget {
        time_limit: Some(Duration::ZERO),
        ..SearchBudget::default()
    };
    let report = analyze_squares(&f, &budget).unwrap();
    assert!(matches!(report.verdict, Verdict::Unknown { .. }));
}

#[test]
fn immediate_success_beats_zero_time_limit() {
    // The octic certifies from the very first left/right pair, before the
    // time check can fire; determinism over scheduling.
    let f = p("x^4 - 44x^3 + 567x^2 - 2660x + 3564");
    let budget = SearchBudget {
        time_limit: Some(Duration::ZERO),
        ..SearchBudget::default()
    };
    let report = analyze_squares(&f, &budget).unwrap();
    assert!(matches!(report.verdict, Verdict::InA2(_)));
}

#[test]
fn max_sets_one_still_certifies_easy_inputs() {
    let f = p("x^4 - 44x^3 + 567x^2 - 2660x + 3564");
    let budget = SearchBudget {
        max_sets: 1,
        ..SearchBudget::default()
    };
    let report = analyze_squares(&f, &budget).unwrap();
    assert!(matches!(report.verdict, Verdict::InA2(_)));
}
