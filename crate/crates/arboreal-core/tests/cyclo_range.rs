//! Range checks for the cyclotomic classification: the squares-degree
//! formula across m = 5..200 and the guaranteed interlacing failure above
//! the quartic window.

use arboreal_core::analyze::Verdict;
use arboreal_core::certify::SearchBudget;
use arboreal_core::cyclo::{
    classify_cyclotomic, euler_phi, predicted_squares_degree, real_cyclotomic_min_poly,
};
use arboreal_core::obstruct::Obstruction;
use arboreal_core::spectrum::squares_min_poly;

#[test]
fn squares_degree_formula_to_200() {
    let t0 = std::time::Instant::now();
    for m in 5..=200u64 {
        let psi = real_cyclotomic_min_poly(m);
        let squares = squares_min_poly(&psi).unwrap();
        assert_eq!(
            squares.deg() as u64,
            predicted_squares_degree(m),
            "degree formula fails at m = {} (phi = {})",
            m,
            euler_phi(m)
        );
    }
    println!("degree formula sweep: {:?}", t0.elapsed());
}

#[test]
fn no_interlacing_above_quartic_window() {
    // Beyond n = 4 every squared conjugate lies in (0, 4], so some gap has
    // no integer; spot-check the range just past the classified table.
    let budget = SearchBudget::default();
    for m in 61..=80u64 {
        if predicted_squares_degree(m) <= 4 {
            continue;
        }
        let r = classify_cyclotomic(m, &budget).unwrap();
        assert!(
            matches!(
                r.verdict(),
                Verdict::NotInA2(Obstruction::NoInterlacing { .. })
            ),
            "m = {} (n = {}) not refuted by interlacing",
            m,
            r.n
        );
    }
}
