//! Decision procedures layered over the monoid engine: the quadratic
//! theorem, the cubic classification, integer scaling, and the top-level
//! three-valued analyzer.

use crate::certify::{
    assemble_certificate, monoid_search, signed_delta, verify_certificate, weight_vector, Assembly,
    Certificate, MonoidState, SearchBudget, SearchDiagnostics,
};
use crate::error::{Error, Result};
use crate::modp::{irreducible_mod_p, is_prime};
use crate::obstruct::{
    modp_obstruction_for, no_interlacing_obstruction, zeta48_poly, zeta48_three_adic_report,
    Obstruction,
};
use crate::poly::IntPolynomial;
use crate::spectrum::{squares_min_poly, InterlacingSet, Side, SquaresSpectrum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::str::FromStr;

/// Which polynomial the caller is handing over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InputKind {
    /// Minimal polynomial of lambda; the squares polynomial is derived.
    Lambda,
    /// The squares polynomial F (minimal polynomial of lambda^2) directly.
    LambdaSquared,
}

/// Three-valued outcome. `Unknown` is explicit: for degree >= 4 no complete
/// decision procedure is known, and the engine never claims refutation
/// without a checkable obstruction.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// `[Q(lambda^2):Q] = 1`: already realized by a star (or lambda = 0).
    HeightAtMostOne,
    InA2(Certificate),
    NotInA2(Obstruction),
    Unknown {
        budget_summary: String,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::HeightAtMostOne => "height_at_most_1",
            Verdict::InA2(_) => "in_a2",
            Verdict::NotInA2(_) => "not_in_a2",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

/// How the irreducibility of the working polynomial was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Irreducible modulo the given prime.
    CertifiedModP(u64),
    /// Degree <= 3 with no rational root.
    CertifiedRationalRoots,
    /// Degree 1.
    Trivial,
    /// No cheap certificate found; treated as if irreducible.
    Assumed,
}

impl Irreducibility {
    pub fn describe(&self) -> String {
        match self {
            Irreducibility::CertifiedModP(p) => {
                format!("irreducibility certified (irreducible mod {})", p)
            }
            Irreducibility::CertifiedRationalRoots => {
                "irreducibility certified (rational root test)".into()
            }
            Irreducibility::Trivial => "irreducibility trivial (degree 1)".into(),
            Irreducibility::Assumed => "irreducibility assumed (no cheap certificate)".into(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    pub sets_tried: usize,
    pub combination_tests: usize,
    pub gcd_trajectory: Vec<BigInt>,
    pub delta_phase_gcd: Option<BigInt>,
    pub irreducibility: Option<Irreducibility>,
    pub assembly: Option<Assembly>,
    pub elapsed: std::time::Duration,
}

impl Diagnostics {
    fn absorb_search(&mut self, d: &SearchDiagnostics) {
        self.sets_tried += d.sets_tried;
        self.combination_tests += d.combination_tests;
        self.gcd_trajectory.extend(d.gcd_trajectory.iter().cloned());
        if self.delta_phase_gcd.is_none() {
            self.delta_phase_gcd = d.delta_phase_gcd.clone();
        }
    }
}

/// Analysis result: verdict, a summary of the squared spectrum, and
/// diagnostics of the search.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub f: IntPolynomial,
    pub verdict: Verdict,
    pub n: usize,
    pub diagnostics: Diagnostics,
}

impl AnalysisReport {
    /// JSON rendering. Timings are deliberately excluded so identical
    /// invocations stay byte-identical; callers wanting wall-clock numbers
    /// read `diagnostics.elapsed` directly.
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "verdict": self.verdict.tag(),
            "F": self.f.to_string(),
            "n": self.n,
            "diagnostics": {
                "sets_tried": self.diagnostics.sets_tried,
                "combination_tests": self.diagnostics.combination_tests,
                "gcd_trajectory": self.diagnostics.gcd_trajectory.iter()
                    .map(json_int).collect::<Vec<Value>>(),
                "irreducibility": self.diagnostics.irreducibility.as_ref()
                    .map(|i| i.describe()),
            },
        });
        match &self.verdict {
            Verdict::InA2(cert) => {
                obj["certificate"] = cert.to_json();
                match &self.diagnostics.assembly {
                    Some(Assembly::Pair {
                        positive,
                        negative,
                        c_pos,
                        c_neg,
                    }) => {
                        obj["assembly"] = json!({
                            "positive": json_int(positive),
                            "negative": json_int(negative),
                            "c_pos": json_int(c_pos),
                            "c_neg": json_int(c_neg),
                        });
                    }
                    Some(Assembly::Subset { combination }) => {
                        obj["assembly"] = json!({
                            "combination": combination
                                .iter()
                                .map(|(v, c)| json!([json_int(v), json_int(c)]))
                                .collect::<Vec<Value>>(),
                        });
                    }
                    None => {}
                }
            }
            Verdict::NotInA2(ob) => {
                obj["obstruction"] = ob.to_json();
            }
            Verdict::Unknown { budget_summary } => {
                obj["budget_summary"] = json!(budget_summary);
            }
            Verdict::HeightAtMostOne => {}
        }
        obj
    }
}

pub(crate) fn json_int(v: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("integer literal"))
}

/// Validates the input polynomial and produces the squares polynomial.
pub fn prepare_squares_poly(input: &IntPolynomial, kind: InputKind) -> Result<IntPolynomial> {
    if !input.is_monic() {
        return Err(Error::NotMonic);
    }
    match kind {
        InputKind::Lambda => squares_min_poly(input),
        InputKind::LambdaSquared => {
            if !input.is_squarefree() {
                return Err(Error::NotSquarefree);
            }
            Ok(input.clone())
        }
    }
}

/// Cheap irreducibility certificate: rational-root test for degree <= 3,
/// otherwise a scan for a prime p <= 100 modulo which F stays irreducible.
pub fn irreducibility_certificate(f: &IntPolynomial) -> Irreducibility {
    let n = f.deg();
    if n == 1 {
        return Irreducibility::Trivial;
    }
    if n <= 3 && integer_root(f).is_none() {
        return Irreducibility::CertifiedRationalRoots;
    }
    let mut p = 2u64;
    while p <= 100 {
        if is_prime(p) && irreducible_mod_p(f, p).unwrap_or(false) {
            return Irreducibility::CertifiedModP(p);
        }
        p += 1;
    }
    Irreducibility::Assumed
}

/// An integer root of a monic polynomial, if any (divisors of the constant
/// term are the only candidates).
pub fn integer_root(f: &IntPolynomial) -> Option<BigInt> {
    debug_assert!(f.is_monic());
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let c0 = c0.abs();
    let mut d = BigInt::one();
    while &d * &d <= c0 {
        if (&c0 % &d).is_zero() {
            for cand in [d.clone(), -d.clone(), &c0 / &d, -(&c0 / &d)] {
                if f.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        d += 1;
    }
    None
}

/// The quadratic theorem: every F = x^2 - Px + Q with two positive real
/// roots and no rational root certifies with `{k-1: F(k-1), k: -F(k)}` where
/// k is the least integer between the roots.
pub fn quadratic_certificate(f: &IntPolynomial) -> Result<Certificate> {
    if f.degree() != Some(2) {
        return Err(Error::WrongDegree {
            expected: 2,
            got: f.degree().unwrap_or(0),
        });
    }
    if let Some(r) = integer_root(f) {
        return Err(Error::IntegerRoot(r.to_i64().unwrap_or(0)));
    }
    let spec = SquaresSpectrum::new(f)?;
    // The root gap sqrt(P^2 - 4Q) exceeds 1 for an irreducible quadratic
    // with integer coefficients, so the gap integer exists.
    let k = spec
        .least_integer_in_gap(1)
        .expect("irreducible positive quadratic has a gap integer");
    assert!(k >= 1);
    let a_lo = f.eval(&BigInt::from(k - 1));
    let a_hi = -f.eval(&BigInt::from(k));
    assert!(a_lo.is_positive() && a_hi.is_positive());
    let mut a = BTreeMap::new();
    a.insert(k - 1, a_lo);
    a.insert(k, a_hi);
    let ok = verify_certificate(f, &a)?;
    assert!(ok, "quadratic certificate must verify");
    Ok(Certificate {
        f: f.clone(),
        a,
        verified: true,
    })
}

/// Smallest integer t > the i-th squared root (0-based) congruent to
/// `residue` mod `modulus`.
fn least_above_in_class(spec: &SquaresSpectrum, i: usize, residue: u64, modulus: u64) -> u64 {
    let iv = &spec.roots()[i];
    let mut k = iv
        .lo
        .floor()
        .to_integer()
        .max(BigInt::zero())
        .to_u64()
        .unwrap();
    loop {
        if k % modulus == residue % modulus
            && spec.cmp_root_to_int(i, &BigInt::from(k)) == std::cmp::Ordering::Less
        {
            return k;
        }
        k += 1;
    }
}

/// The cubic classification: lambda has height <= 2 exactly when an
/// interlacing set exists and F has a root mod 2. Membership is constructed
/// by the congruence recipe: right sets {k1, k2, k3} with k1 = floor of the
/// middle root, k2 = k1 + 1, and k3 > the top root chosen so that
/// k3 = k2 + 1 mod d for d = 3, 4, 5, ...; plus one set with
/// k - k3' = 2 mod 4 (k the even-valued one of k1, k2) to force an odd delta.
pub fn cubic_analyze(f: &IntPolynomial) -> Result<AnalysisReport> {
    if f.degree() != Some(3) {
        return Err(Error::WrongDegree {
            expected: 3,
            got: f.degree().unwrap_or(0),
        });
    }
    if let Some(r) = integer_root(f) {
        return Err(Error::IntegerRoot(r.to_i64().unwrap_or(0)));
    }
    let spec = SquaresSpectrum::new(f)?;
    let mut diagnostics = Diagnostics {
        irreducibility: Some(Irreducibility::CertifiedRationalRoots),
        ..Diagnostics::default()
    };
    let start = std::time::Instant::now();

    if let Some(ob) = no_interlacing_obstruction(&spec) {
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::NotInA2(ob),
            n: 3,
            diagnostics,
        });
    }
    // A cubic without a root mod 2 is irreducible mod 2.
    let f0_odd = f.eval(&BigInt::zero()).is_odd();
    let f1_odd = f.eval(&BigInt::one()).is_odd();
    if f0_odd && f1_odd {
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::NotInA2(Obstruction::ModP {
                p: 2,
                degree: 3,
                detail: "F has no root mod 2, hence is irreducible mod 2".into(),
            }),
            n: 3,
            diagnostics,
        });
    }

    // Constructive phase. Positives come from the canonical left set;
    // negatives from the congruence-guided right families.
    let mut state = MonoidState::default();
    let left = spec
        .find_interlacing(Side::Left)
        .expect("interlacing checked above");
    let lw = weight_vector(f, &left)?;
    state.insert(signed_delta(&lw));
    diagnostics.sets_tried += 1;
    diagnostics.gcd_trajectory.push(state.gcd_all.clone());

    // k1 = floor(middle root), k2 = k1 + 1; both lie strictly between the
    // outer roots once an interlacing set exists.
    let k1 = {
        let iv = &spec.roots()[1];
        let mut c = iv.lo.floor().to_integer().to_u64().unwrap();
        while spec.cmp_root_to_int(1, &BigInt::from(c + 1)) == std::cmp::Ordering::Greater {
            c += 1;
        }
        c
    };
    let k2 = k1 + 1;
    debug_assert!(spec.cmp_root_to_int(0, &BigInt::from(k1)) == std::cmp::Ordering::Less);
    debug_assert!(spec.cmp_root_to_int(2, &BigInt::from(k2)) == std::cmp::Ordering::Greater);

    // Odd-delta set: pick whichever of k1, k2 has even F-value and choose
    // k3' = that value - 2 mod 4 above the top root.
    let anchor = if f.eval(&BigInt::from(k1)).is_even() {
        k1
    } else {
        k2
    };
    let k3p = least_above_in_class(&spec, 2, (anchor + 4 - 2) % 4, 4);
    let set = InterlacingSet::new(vec![k1, k2, k3p], Side::Right);
    let wv = weight_vector(f, &set)?;
    assert!(wv.delta.is_odd(), "mod-4 recipe must give an odd delta");
    state.insert(signed_delta(&wv));
    diagnostics.sets_tried += 1;
    diagnostics.gcd_trajectory.push(state.gcd_all.clone());

    let mut d = 3u64;
    while !state.one_reachable() {
        assert!(d < 10_000, "cubic recipe must terminate");
        let k3 = least_above_in_class(&spec, 2, (k2 + 1) % d, d);
        if k3 != k2 {
            let set = InterlacingSet::new(vec![k1, k2, k3], Side::Right);
            let wv = weight_vector(f, &set)?;
            state.insert(signed_delta(&wv));
            diagnostics.sets_tried += 1;
            diagnostics.gcd_trajectory.push(state.gcd_all.clone());
        }
        d += 1;
    }
    let (cert, assembly) = assemble_certificate(f, &state)?;
    diagnostics.assembly = Some(assembly);
    diagnostics.elapsed = start.elapsed();
    Ok(AnalysisReport {
        f: f.clone(),
        verdict: Verdict::InA2(cert),
        n: 3,
        diagnostics,
    })
}

/// Finds a positive integer D with a verified certificate for D*lambda.
///
/// Tries the full engine at D = 1 first; when lambda itself resists, scales
/// by the least d making an interlacing set exist and then saturates the
/// weight-vector denominators of the canonical left set into a square. The
/// returned D is minimal for the construction, not provably minimal overall.
pub fn scale_to_a2(
    f: &IntPolynomial,
    budget: &SearchBudget,
) -> Result<(BigInt, IntPolynomial, Certificate)> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if f.deg() == 1 {
        // lambda^2 = c: 1/(c - (c-1)) = 1.
        let c = -f.coeff(0);
        if !c.is_positive() {
            return Err(Error::NonPositiveRoots);
        }
        let k = (&c - BigInt::one()).to_u64().expect("key fits u64");
        let mut a = BTreeMap::new();
        a.insert(k, BigInt::one());
        let ok = verify_certificate(f, &a)?;
        assert!(ok);
        return Ok((
            BigInt::one(),
            f.clone(),
            Certificate {
                f: f.clone(),
                a,
                verified: true,
            },
        ));
    }

    // Engine at D = 1.
    let report = analyze_squares(f, budget)?;
    if let Verdict::InA2(cert) = report.verdict {
        return Ok((BigInt::one(), f.clone(), cert));
    }

    // Least d >= 1 for which (d lambda)^2 has an interlacing set.
    let mut d = BigInt::one();
    let (scaled, left) = loop {
        let scaled = f.scale_roots(&(&d * &d));
        let spec = SquaresSpectrum::new(&scaled)?;
        if let Some(left) = spec.find_interlacing(Side::Left) {
            break (scaled, left);
        }
        d += 1;
    };

    // Least D2 whose square clears every reduced weight denominator.
    let wv = weight_vector(&scaled, &left)?;
    let mut lcm_denoms = BigInt::one();
    for v in &wv.v {
        lcm_denoms = lcm_denoms.lcm(v.denom());
    }
    let d2 = square_saturate(&lcm_denoms);
    let d2_sq = &d2 * &d2;
    let final_f = scaled.scale_roots(&d2_sq);
    let mut a = BTreeMap::new();
    for (i, &k) in left.ks.iter().enumerate() {
        let coeff = &wv.v[i] * num_rational::BigRational::from(d2_sq.clone());
        assert!(coeff.is_integer(), "D^2 clears the denominators");
        let coeff = coeff.to_integer();
        assert!(coeff.is_positive());
        let key = (BigInt::from(k) * &d2_sq).to_u64().expect("key fits u64");
        a.insert(key, coeff);
    }
    let ok = verify_certificate(&final_f, &a)?;
    assert!(ok, "scaled certificate must verify");
    let cert = Certificate {
        f: final_f.clone(),
        a,
        verified: true,
    };
    Ok((d * d2, final_f, cert))
}

/// Least D with n | D^2: for each prime power p^e in n, D picks up
/// p^ceil(e/2).
fn square_saturate(n: &BigInt) -> BigInt {
    let mut d = BigInt::one();
    let mut rest = n.abs();
    let mut p = BigInt::from(2);
    while (&p * &p) <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest = &rest / &p;
            e += 1;
        }
        if e > 0 {
            d *= p.pow(e.div_ceil(2));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        d *= rest;
    }
    d
}

/// Full pipeline on a validated squares polynomial.
pub fn analyze_squares(f: &IntPolynomial, budget: &SearchBudget) -> Result<AnalysisReport> {
    let start = std::time::Instant::now();
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = f.deg();
    let mut diagnostics = Diagnostics {
        irreducibility: Some(irreducibility_certificate(f)),
        ..Diagnostics::default()
    };

    // Degree 1: lambda^2 is an integer, so the height is at most 1 (star
    // graphs); the root must still be nonnegative to be a square.
    if n == 1 {
        let c = -f.coeff(0);
        if c.is_negative() {
            return Err(Error::NonPositiveRoots);
        }
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::HeightAtMostOne,
            n,
            diagnostics,
        });
    }

    let spec = SquaresSpectrum::new(f)?;

    // Obstruction scan: interlacing first, then mod p.
    if let Some(ob) = no_interlacing_obstruction(&spec) {
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::NotInA2(ob),
            n,
            diagnostics,
        });
    }
    if let Some(ob) = modp_obstruction_for(f) {
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::NotInA2(ob),
            n,
            diagnostics,
        });
    }

    // Degree-specific decision procedures.
    if n == 2 {
        let cert = quadratic_certificate(f)?;
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::InA2(cert),
            n,
            diagnostics,
        });
    }
    if n == 3 {
        let mut report = cubic_analyze(f)?;
        report.diagnostics.irreducibility = diagnostics.irreducibility;
        return Ok(report);
    }

    // The one quartic with its own refutation: the 48th real cyclotomic
    // unit. Checked before the general engine, which could only exhaust its
    // budget here.
    if *f == zeta48_poly() {
        let report = zeta48_three_adic_report(100)?;
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::NotInA2(Obstruction::ThreeAdicZeta48(report)),
            n,
            diagnostics,
        });
    }

    // General engine.
    let outcome = monoid_search(&spec, budget);
    diagnostics.absorb_search(&outcome.diagnostics);
    if outcome.state.one_reachable() {
        let (cert, assembly) = assemble_certificate(f, &outcome.state)?;
        diagnostics.assembly = Some(assembly);
        diagnostics.elapsed = start.elapsed();
        return Ok(AnalysisReport {
            f: f.clone(),
            verdict: Verdict::InA2(cert),
            n,
            diagnostics,
        });
    }
    let budget_summary = format!(
        "no verdict within budget: {} sets per side (max_k {}), {} combination tests, residual gcd {}",
        budget.max_sets,
        budget
            .max_k
            .map(|k| k.to_string())
            .unwrap_or_else(|| "auto".into()),
        diagnostics.combination_tests,
        outcome.state.gcd_all,
    );
    diagnostics.elapsed = start.elapsed();
    Ok(AnalysisReport {
        f: f.clone(),
        verdict: Verdict::Unknown { budget_summary },
        n,
        diagnostics,
    })
}

/// Top-level analyzer: validates, derives the squares polynomial when the
/// input is the minimal polynomial of lambda itself, and runs the pipeline.
pub fn analyze(
    input: &IntPolynomial,
    kind: InputKind,
    budget: &SearchBudget,
) -> Result<AnalysisReport> {
    let f = prepare_squares_poly(input, kind)?;
    analyze_squares(&f, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn map(pairs: &[(u64, i64)]) -> BTreeMap<u64, BigInt> {
        pairs.iter().map(|&(k, v)| (k, BigInt::from(v))).collect()
    }

    #[test]
    fn quadratic_golden() {
        let cert = quadratic_certificate(&p("x^2 - 3x + 1")).unwrap();
        assert_eq!(cert.a, map(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn quadratic_one_plus_sqrt2() {
        let cert = quadratic_certificate(&p("x^2 - 6x + 1")).unwrap();
        assert_eq!(cert.a, map(&[(0, 1), (1, 4)]));
    }

    #[test]
    fn quadratic_zeta20() {
        let cert = quadratic_certificate(&p("x^2 - 5x + 5")).unwrap();
        assert_eq!(cert.a, map(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn quadratic_rejects_integer_roots() {
        assert!(matches!(
            quadratic_certificate(&p("x^2 - 3x + 2")),
            Err(Error::IntegerRoot(_))
        ));
    }

    #[test]
    fn cubic_mod2_obstruction() {
        let report = cubic_analyze(&p("x^3 - 5x^2 + 6x - 1")).unwrap();
        match report.verdict {
            Verdict::NotInA2(Obstruction::ModP { p, degree, .. }) => {
                assert_eq!((p, degree), (2, 3));
            }
            v => panic!("expected mod-2 obstruction, got {:?}", v.tag()),
        }
    }

    #[test]
    fn cubic_scaled_cos_two_pi_seventh_in_a2() {
        let f = p("x^3 - 20x^2 + 96x - 64");
        let report = cubic_analyze(&f).unwrap();
        match report.verdict {
            Verdict::InA2(cert) => {
                assert!(cert.verified);
                assert!(verify_certificate(&f, &cert.a).unwrap());
            }
            v => panic!("expected membership, got {:?}", v.tag()),
        }
        // The paper's witness also verifies.
        assert!(verify_certificate(&f, &map(&[(0, 2), (4, 4), (8, 2)])).unwrap());
    }

    #[test]
    fn scale_cos_two_pi_seventh() {
        let (d, scaled, cert) =
            scale_to_a2(&p("x^3 - 5x^2 + 6x - 1"), &SearchBudget::default()).unwrap();
        assert_eq!(d, BigInt::from(2));
        assert_eq!(scaled, p("x^3 - 20x^2 + 96x - 64"));
        assert_eq!(cert.a, map(&[(0, 2), (4, 4), (8, 2)]));
        assert_eq!(cert.vertex_count(), BigInt::from(41));
    }

    #[test]
    fn scale_noop_for_golden() {
        let (d, scaled, cert) = scale_to_a2(&p("x^2 - 3x + 1"), &SearchBudget::default()).unwrap();
        assert!(d.is_one());
        assert_eq!(scaled, p("x^2 - 3x + 1"));
        assert_eq!(cert.a, map(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn scale_noop_for_octic_squares() {
        let (d, _, cert) = scale_to_a2(
            &p("x^4 - 44x^3 + 567x^2 - 2660x + 3564"),
            &SearchBudget::default(),
        )
        .unwrap();
        assert!(d.is_one());
        assert_eq!(
            cert.a,
            map(&[(0, 14850), (3, 4945), (7, 513), (10, 2274), (26, 166)])
        );
    }

    #[test]
    fn analyze_octic_from_lambda() {
        let f = p("x^8 - 44x^6 + 567x^4 - 2660x^2 + 3564");
        let report = analyze(&f, InputKind::Lambda, &SearchBudget::default()).unwrap();
        match report.verdict {
            Verdict::InA2(cert) => {
                assert_eq!(
                    cert.a,
                    map(&[(0, 14850), (3, 4945), (7, 513), (10, 2274), (26, 166)])
                );
            }
            v => panic!("expected membership, got {:?}", v.tag()),
        }
    }

    #[test]
    fn analyze_cubic_obstructed() {
        let report = analyze(
            &p("x^3 - 5x^2 + 6x - 1"),
            InputKind::LambdaSquared,
            &SearchBudget::default(),
        )
        .unwrap();
        assert!(matches!(
            report.verdict,
            Verdict::NotInA2(Obstruction::ModP {
                p: 2,
                degree: 3,
                ..
            })
        ));
    }

    #[test]
    fn analyze_zeta48_quartic() {
        let report = analyze(
            &p("x^4 - 8x^3 + 20x^2 - 16x + 1"),
            InputKind::LambdaSquared,
            &SearchBudget::default(),
        )
        .unwrap();
        match report.verdict {
            Verdict::NotInA2(Obstruction::ThreeAdicZeta48(r)) => {
                assert_eq!(r.det_m, BigInt::from(3));
            }
            v => panic!("expected 3-adic obstruction, got {:?}", v.tag()),
        }
    }

    #[test]
    fn analyze_degree_one() {
        let report = analyze(
            &p("x - 4"),
            InputKind::LambdaSquared,
            &SearchBudget::default(),
        )
        .unwrap();
        assert!(matches!(report.verdict, Verdict::HeightAtMostOne));
        // lambda = sqrt(2) via its own minimal polynomial
        let report = analyze(&p("x^2 - 2"), InputKind::Lambda, &SearchBudget::default()).unwrap();
        assert!(matches!(report.verdict, Verdict::HeightAtMostOne));
    }

    #[test]
    fn analyze_validates_input() {
        assert!(matches!(
            analyze(&p("2x^2 - 1"), InputKind::Lambda, &SearchBudget::default()),
            Err(Error::NotMonic)
        ));
        assert!(matches!(
            analyze(
                &p("x^2 - 2x + 1"),
                InputKind::LambdaSquared,
                &SearchBudget::default()
            ),
            Err(Error::NotSquarefree)
        ));
    }

    #[test]
    fn scale_invariance_of_certificates() {
        // If a verifies against F, then {d^2 k: d^2 a_k} verifies against
        // the root-scaled polynomial, for d = 2, 3 (each summand
        // a_k/(x - k) = d^2 a_k/(d^2 x - d^2 k) is unchanged).
        let cases = [
            ("x^3 - 20x^2 + 96x - 64", map(&[(0, 2), (4, 4), (8, 2)])),
            ("x^2 - 3x + 1", map(&[(0, 1), (1, 1)])),
        ];
        for (f_text, a) in cases {
            let f = p(f_text);
            assert!(verify_certificate(&f, &a).unwrap());
            for d in [2u64, 3] {
                let d2 = BigInt::from(d * d);
                let scaled = f.scale_roots(&d2);
                let scaled_a: BTreeMap<u64, BigInt> =
                    a.iter().map(|(k, v)| (k * d * d, v * &d2)).collect();
                assert!(verify_certificate(&scaled, &scaled_a).unwrap());
            }
        }
    }
}
