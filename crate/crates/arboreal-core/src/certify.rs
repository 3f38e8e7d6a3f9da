//! The integer-monoid certification engine.
//!
//! For a monic squarefree F with positive real roots, the additive monoid of
//! values `sum_k a_k / (lambda^2 - k)` (nonnegative integer a_k) meets the
//! integers in `m Z` once both signs occur; height 2 holds exactly when
//! m = 1. Weight vectors of interlacing sets supply signed integer elements
//! (their least common denominators), cross-set combinations cancel stubborn
//! primes from those denominators, and a coprime opposite-sign pair is then
//! assembled into an explicit, exactly verified certificate.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::spectrum::{check_alternation, EnumBudget, InterlacingSet, Side, SquaresSpectrum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// The unique rational solution of the interpolation system for an
/// interlacing set: `v_i = -F(k_i) / prod_{j != i} (k_i - k_j)`.
///
/// All coordinates are positive for a left set and negative for a right set;
/// `delta` is the least common denominator of the coordinates.
#[derive(Clone, Debug)]
pub struct WeightVector {
    pub f: IntPolynomial,
    pub ks: InterlacingSet,
    pub v: Vec<BigRational>,
    pub delta: BigInt,
}

impl WeightVector {
    pub fn side(&self) -> Side {
        self.ks.side
    }

    pub fn sign(&self) -> i8 {
        self.ks.side.sign()
    }
}

/// Computes the weight vector of an interlacing set, validating the sign
/// alternation of `F(k_i)` first.
pub fn weight_vector(f: &IntPolynomial, ks: &InterlacingSet) -> Result<WeightVector> {
    if !check_alternation(f, ks) {
        return Err(Error::SignAlternation);
    }
    let n = ks.ks.len();
    let mut v = Vec::with_capacity(n);
    let mut delta = BigInt::one();
    for i in 0..n {
        let ki = BigInt::from(ks.ks[i]);
        let mut denom = BigInt::one();
        for (j, &kj) in ks.ks.iter().enumerate() {
            if j != i {
                denom *= &ki - BigInt::from(kj);
            }
        }
        let vi = BigRational::new(-f.eval(&ki), denom);
        delta = delta.lcm(vi.denom());
        v.push(vi);
    }
    debug_assert!(v
        .iter()
        .all(|vi| (vi.is_positive()) == (ks.side == Side::Left)));
    Ok(WeightVector {
        f: f.clone(),
        ks: ks.clone(),
        v,
        delta,
    })
}

/// A certified element of the monoid intersected with the integers: an exact
/// identity `sum_k coeffs[k] / (lambda^2 - k) = value` with nonnegative
/// integer coefficients.
#[derive(Clone, Debug)]
pub struct GammaElement {
    pub value: BigInt,
    pub coeffs: BTreeMap<u64, BigInt>,
    /// The weight vectors and multipliers this element was combined from.
    pub provenance: Vec<(WeightVector, BigInt)>,
}

impl GammaElement {
    /// Weighted vertex count `sum coeffs[k] * (k+1)` of the branch material
    /// this element would contribute to a witness tree.
    fn branch_weight(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(k, a)| a * BigInt::from(k + 1))
            .sum()
    }
}

/// Checks the defining identity of a monoid element as an exact polynomial
/// congruence: `sum_k c_k prod_{j != k} (x - j) == value * prod_j (x - j)
/// (mod F)`, products over the support.
pub fn gamma_identity_holds(
    f: &IntPolynomial,
    coeffs: &BTreeMap<u64, BigInt>,
    value: &BigInt,
) -> bool {
    let keys: Vec<u64> = coeffs.keys().copied().collect();
    let mut lhs = IntPolynomial::zero();
    for (&k, a) in coeffs {
        if a.is_zero() {
            continue;
        }
        let mut term = IntPolynomial::constant(a.clone());
        for &j in &keys {
            if j != k {
                term = &term * &IntPolynomial::x_minus(j);
            }
        }
        lhs = &lhs + &term;
    }
    let mut rhs = IntPolynomial::constant(value.clone());
    for &j in &keys {
        rhs = &rhs * &IntPolynomial::x_minus(j);
    }
    (&lhs - &rhs).rem_monic(f).is_zero()
}

/// Clears the least common denominator of a weight vector: the signed delta
/// element `sign * delta` with coefficients `|delta * v_i|` at the keys.
pub fn signed_delta(wv: &WeightVector) -> GammaElement {
    let mut coeffs = BTreeMap::new();
    for (i, &k) in wv.ks.ks.iter().enumerate() {
        let scaled = &wv.v[i] * BigRational::from(wv.delta.clone());
        assert!(scaled.is_integer(), "delta clears every denominator");
        coeffs.insert(k, scaled.to_integer().abs());
    }
    let value = if wv.sign() > 0 {
        wv.delta.clone()
    } else {
        -wv.delta.clone()
    };
    let elem = GammaElement {
        value,
        coeffs,
        provenance: vec![(wv.clone(), BigInt::one())],
    };
    assert!(
        gamma_identity_holds(&wv.f, &elem.coeffs, &elem.value),
        "signed delta identity failed"
    );
    elem
}

/// Combines same-side weight vectors with positive integer multipliers:
/// coefficients of matching keys are summed, the least common denominator of
/// the sums is cleared, and the element value is
/// `sign * LCD * (sum of multipliers)`.
pub fn combine_vectors(wvs: &[WeightVector], multipliers: &[BigInt]) -> Result<GammaElement> {
    assert!(!wvs.is_empty(), "empty combination");
    if multipliers.len() != wvs.len() {
        return Err(Error::MultiplierCount {
            expected: wvs.len(),
            got: multipliers.len(),
        });
    }
    let side = wvs[0].side();
    if wvs.iter().any(|w| w.side() != side) {
        return Err(Error::MixedSides);
    }
    if wvs.iter().any(|w| w.f != wvs[0].f) {
        return Err(Error::MixedPolynomials);
    }
    assert!(multipliers.iter().all(|m| m.is_positive()));

    let mut summed: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (wv, m) in wvs.iter().zip(multipliers) {
        let mq = BigRational::from(m.clone());
        for (i, &k) in wv.ks.ks.iter().enumerate() {
            let term = &wv.v[i] * &mq;
            summed.entry(k).and_modify(|c| *c += &term).or_insert(term);
        }
    }
    let mut lcd = BigInt::one();
    for c in summed.values() {
        lcd = lcd.lcm(c.denom());
    }
    let coeffs: BTreeMap<u64, BigInt> = summed
        .iter()
        .map(|(&k, c)| {
            let scaled = c * BigRational::from(lcd.clone());
            debug_assert!(scaled.is_integer());
            (k, scaled.to_integer().abs())
        })
        .collect();
    let total: BigInt = multipliers.iter().sum();
    let value = if side == Side::Left {
        &lcd * &total
    } else {
        -(&lcd * &total)
    };
    let elem = GammaElement {
        value,
        coeffs,
        provenance: wvs
            .iter()
            .cloned()
            .zip(multipliers.iter().cloned())
            .collect(),
    };
    assert!(
        gamma_identity_holds(&wvs[0].f, &elem.coeffs, &elem.value),
        "combined identity failed"
    );
    Ok(elem)
}

/// Running state of the monoid search.
#[derive(Clone, Debug, Default)]
pub struct MonoidState {
    pub elements: Vec<GammaElement>,
    /// gcd of the absolute values of all elements (zero while empty).
    pub gcd_all: BigInt,
    pub has_positive: bool,
    pub has_negative: bool,
}

impl MonoidState {
    pub fn insert(&mut self, elem: GammaElement) {
        self.gcd_all = self.gcd_all.gcd(&elem.value);
        if elem.value.is_positive() {
            self.has_positive = true;
        } else {
            self.has_negative = true;
        }
        self.elements.push(elem);
    }

    /// One is reachable exactly when both signs occur and the gcd is 1.
    pub fn one_reachable(&self) -> bool {
        self.has_positive && self.has_negative && self.gcd_all.is_one()
    }
}

/// Budgets for the monoid search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Cap on k_n in right-interlacing sets; defaults to
    /// `ceil(largest squared root) + 200`.
    pub max_k: Option<u64>,
    /// Sets enumerated per side.
    pub max_sets: usize,
    /// Largest multiplier tried in the combination phase.
    pub max_multiplier: u64,
    /// Work cap for the combination phase: pair examinations plus exact
    /// candidate builds.
    pub max_combination_tests: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_k: None,
            max_sets: 5000,
            max_multiplier: 50,
            max_combination_tests: 2_000_000,
            time_limit: None,
        }
    }
}

/// Diagnostics accumulated by the search; serialized into analysis reports.
#[derive(Clone, Debug, Default)]
pub struct SearchDiagnostics {
    pub sets_tried: usize,
    pub combination_tests: usize,
    /// gcd_all after each change, in order.
    pub gcd_trajectory: Vec<BigInt>,
    /// gcd_all at the end of the delta-only phase (None if the search ended
    /// inside it).
    pub delta_phase_gcd: Option<BigInt>,
    pub elapsed: Duration,
}

pub struct MonoidSearchOutcome {
    pub state: MonoidState,
    pub diagnostics: SearchDiagnostics,
}

fn default_max_k(spec: &SquaresSpectrum) -> u64 {
    let top = spec.roots().last().expect("nonempty spectrum");
    let ceil = top.hi.ceil().to_integer();
    ceil.to_u64().unwrap_or(u64::MAX - 200) + 200
}

/// Collects signed delta elements over both enumeration sides, then tries
/// same-side combinations to cancel primes stuck in the common gcd.
/// Terminates as soon as 1 is reachable, or when budgets run out.
pub fn monoid_search(spec: &SquaresSpectrum, budget: &SearchBudget) -> MonoidSearchOutcome {
    let start = Instant::now();
    let max_k = budget.max_k.unwrap_or_else(|| default_max_k(spec));
    let enum_budget = EnumBudget {
        max_k,
        max_sets: budget.max_sets,
    };
    let mut state = MonoidState::default();
    let mut diag = SearchDiagnostics::default();
    let mut left_vectors: Vec<WeightVector> = Vec::new();
    let mut right_vectors: Vec<WeightVector> = Vec::new();

    let push = |state: &mut MonoidState, diag: &mut SearchDiagnostics, elem: GammaElement| {
        let before = state.gcd_all.clone();
        state.insert(elem);
        if state.gcd_all != before {
            diag.gcd_trajectory.push(state.gcd_all.clone());
        }
    };

    // Delta phase: alternate sides, left first, in canonical enumeration
    // order.
    let mut left = spec.enumerate_interlacing(Side::Left, enum_budget);
    let mut right = spec.enumerate_interlacing(Side::Right, enum_budget);
    let out_of_time = |start: Instant| {
        budget
            .time_limit
            .is_some_and(|limit| start.elapsed() >= limit)
    };
    loop {
        let mut progressed = false;
        for iter in [&mut left, &mut right] {
            if let Some(ks) = iter.next() {
                progressed = true;
                diag.sets_tried += 1;
                let wv = weight_vector(spec.poly(), &ks).expect("enumerated sets alternate");
                let elem = signed_delta(&wv);
                match wv.side() {
                    Side::Left => left_vectors.push(wv),
                    Side::Right => right_vectors.push(wv),
                }
                push(&mut state, &mut diag, elem);
                if state.one_reachable() {
                    diag.elapsed = start.elapsed();
                    return MonoidSearchOutcome {
                        state,
                        diagnostics: diag,
                    };
                }
            }
        }
        if !progressed || out_of_time(start) {
            break;
        }
    }
    diag.delta_phase_gcd = Some(state.gcd_all.clone());

    // Combination phase: for each prime q dividing the common gcd, walk
    // same-side pairs in collection order and look for multiplier pairs whose
    // combined element drops q. Accepting any q-free element shrinks the gcd,
    // so this loops until 1 is reachable or nothing new appears.
    loop {
        if state.one_reachable()
            || state.gcd_all.is_zero()
            || !state.has_positive
            || !state.has_negative
        {
            break;
        }
        let primes = small_prime_factors(&state.gcd_all);
        let mut produced = false;
        'prime: for q in &primes {
            for vectors in [&left_vectors, &right_vectors] {
                for i in 0..vectors.len() {
                    for j in i + 1..vectors.len() {
                        if out_of_time(start)
                            || diag.combination_tests >= budget.max_combination_tests
                        {
                            break 'prime;
                        }
                        diag.combination_tests += 1; // one per pair examined
                        if let Some(elem) = try_cancel_prime(
                            &vectors[i],
                            &vectors[j],
                            q,
                            budget.max_multiplier,
                            &mut diag.combination_tests,
                        ) {
                            push(&mut state, &mut diag, elem);
                            produced = true;
                            if state.one_reachable() {
                                diag.elapsed = start.elapsed();
                                return MonoidSearchOutcome {
                                    state,
                                    diagnostics: diag,
                                };
                            }
                            // q no longer divides the gcd; rescan with
                            // fresh factors.
                            break 'prime;
                        }
                    }
                }
            }
        }
        if !produced || out_of_time(start) || diag.combination_tests >= budget.max_combination_tests
        {
            break;
        }
    }
    diag.elapsed = start.elapsed();
    MonoidSearchOutcome {
        state,
        diagnostics: diag,
    }
}

/// Prime factors by bounded trial division; any cofactor surviving the
/// bound is kept whole (the cancellation test stays sound for composite q).
fn small_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut n = n.abs();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while (&d * &d) <= n && d <= bound {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n = &n / &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// q-adic valuation of a rational (negative when q divides the denominator).
fn q_valuation(x: &BigRational, q: &BigInt) -> i64 {
    if x.is_zero() {
        return i64::MAX;
    }
    let mut val = 0i64;
    let mut num = x.numer().abs();
    while (&num % q).is_zero() {
        num /= q;
        val += 1;
    }
    let mut den = x.denom().clone();
    while (&den % q).is_zero() {
        den /= q;
        val -= 1;
    }
    val
}

/// Searches multiplier pairs (m1, m2), ordered by m1+m2 then m1, for a
/// combination of two same-side vectors whose value is not divisible by q.
fn try_cancel_prime(
    w1: &WeightVector,
    w2: &WeightVector,
    q: &BigInt,
    max_multiplier: u64,
    tests: &mut usize,
) -> Option<GammaElement> {
    // Quick feasibility: every key where either vector has q in a denominator
    // must be shared with equal q-valuation, otherwise one multiplier is
    // forced to a multiple of q, which in turn forces the other, and then q
    // divides the combined value anyway.
    let mut deficient: BTreeMap<u64, (i64, i64)> = BTreeMap::new();
    for (w, pos) in [(w1, 0usize), (w2, 1usize)] {
        for (i, &k) in w.ks.ks.iter().enumerate() {
            let val = q_valuation(&w.v[i], q);
            if val < 0 {
                let entry = deficient.entry(k).or_insert((i64::MAX, i64::MAX));
                if pos == 0 {
                    entry.0 = val;
                } else {
                    entry.1 = val;
                }
            }
        }
    }
    if deficient.is_empty() {
        return None; // both deltas already q-free; nothing to cancel here
    }
    if deficient.values().any(|&(a, b)| a != b) {
        return None;
    }

    // Each shared deficient key of depth e pins m2 = r_k * m1 (mod q^e)
    // through the unit parts of the coordinates. Inconsistent ratios kill
    // the pair; a ratio congruent to -1 mod q forces q | m1 + m2, which
    // divides the combined value, so it is dead too. Candidates violating
    // the congruences would leave q in the denominator and fail anyway, so
    // they are filtered without exact arithmetic.
    let mut conditions: Vec<(BigInt, BigInt)> = Vec::new(); // (modulus q^e, ratio)
    for (&k, &(depth, _)) in &deficient {
        let e = (-depth) as u32;
        let qe = q.pow(e);
        let unit = |w: &WeightVector| -> Option<BigInt> {
            let i = w.ks.ks.iter().position(|&kk| kk == k)?;
            let v = &w.v[i];
            let cofactor = v.denom() / q.pow(e);
            let inv = mod_inverse(&cofactor.mod_floor(&qe), &qe)?;
            Some((v.numer().mod_floor(&qe) * inv).mod_floor(&qe))
        };
        let ratio = (|| {
            let u1 = unit(w1)?;
            let u2_inv = mod_inverse(&unit(w2)?, &qe)?;
            Some((-(u1 * u2_inv)).mod_floor(&qe))
        })();
        match ratio {
            Some(r) => conditions.push((qe, r)),
            // q composite enough to break inversion: no shortcut, scan cold.
            None => {
                conditions.clear();
                break;
            }
        }
    }
    // pairwise compatibility modulo the smaller power
    for (i, (qa, ra)) in conditions.iter().enumerate() {
        for (qb, rb) in conditions.iter().skip(i + 1) {
            let m = if qa <= qb { qa } else { qb };
            if (ra - rb).mod_floor(m) != BigInt::zero() {
                return None;
            }
        }
    }
    if let Some((_, r)) = conditions.first() {
        if (r + BigInt::one()).mod_floor(q).is_zero() {
            return None; // forces q | m1 + m2, hence q | value
        }
    }

    let total_cap = 2 * max_multiplier;
    for total in 2..=total_cap {
        for m1 in 1..total.min(max_multiplier + 1) {
            let m2 = total - m1;
            if m2 < 1 || m2 > max_multiplier {
                continue;
            }
            let m1b = BigInt::from(m1);
            let m2b = BigInt::from(m2);
            // value = LCD * (m1 + m2), so q | m1 + m2 can never work
            if ((&m1b + &m2b) % q).is_zero() {
                continue;
            }
            if !conditions.is_empty() {
                if (&m1b % q).is_zero() {
                    continue;
                }
                if conditions
                    .iter()
                    .any(|(qe, r)| (&m2b - r * &m1b).mod_floor(qe) != BigInt::zero())
                {
                    continue;
                }
            }
            *tests += 1;
            let elem = combine_vectors(&[w1.clone(), w2.clone()], &[m1b, m2b]).expect("same side");
            if !(&elem.value % q).is_zero() {
                return Some(elem);
            }
        }
    }
    None
}

/// Inverse of a mod q when it exists.
fn mod_inverse(a: &BigInt, q: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(q);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(q))
    } else {
        None
    }
}

/// A finite map `k -> a_k` of positive integers claimed to satisfy the
/// height-2 identity, together with the polynomial it was verified against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub f: IntPolynomial,
    pub a: BTreeMap<u64, BigInt>,
    pub verified: bool,
}

impl Certificate {
    /// `1 + sum a_k (k+1)`: vertices of the witness tree this names.
    pub fn vertex_count(&self) -> BigInt {
        BigInt::one()
            + self
                .a
                .iter()
                .map(|(k, a)| a * BigInt::from(k + 1))
                .sum::<BigInt>()
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .a
            .iter()
            .map(|(k, v)| {
                (
                    k.to_string(),
                    Value::Number(
                        serde_json::Number::from_str(&v.to_string()).expect("integer literal"),
                    ),
                )
            })
            .collect();
        json!({
            "F": self.f.to_string(),
            "a": map,
            "verified": self.verified,
        })
    }

    pub fn from_json(v: &Value) -> Result<Certificate> {
        let bad = |msg: &str| Error::BadCertificate(msg.into());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let f_text = obj
            .get("F")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing F"))?;
        let f = crate::poly::parse_polynomial(f_text)?;
        let a_obj = obj
            .get("a")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing a"))?;
        let mut a = BTreeMap::new();
        for (k, val) in a_obj {
            let key: u64 = k.parse().map_err(|_| bad("key is not an integer"))?;
            let s = match val {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(bad("coefficient is not a number")),
            };
            let coeff = BigInt::from_str(&s).map_err(|_| bad("coefficient is not an integer"))?;
            if coeff.is_negative() {
                return Err(bad("coefficient is negative"));
            }
            if !coeff.is_zero() {
                a.insert(key, coeff);
            }
        }
        Ok(Certificate {
            f,
            a,
            verified: false,
        })
    }
}

/// Exact verification of the height-2 identity `sum_k a_k/(lambda^2-k) = 1`
/// as a polynomial congruence mod F. Keys colliding with roots of F are
/// rejected.
pub fn verify_certificate(f: &IntPolynomial, a: &BTreeMap<u64, BigInt>) -> Result<bool> {
    for &k in a.keys() {
        if f.eval(&BigInt::from(k)).is_zero() {
            return Err(Error::KeyIsRoot(k));
        }
    }
    Ok(gamma_identity_holds(f, a, &BigInt::one()))
}

/// How a certificate was assembled from the monoid state.
#[derive(Clone, Debug)]
pub enum Assembly {
    /// `c_pos * positive + c_neg * negative = 1` from a coprime pair.
    Pair {
        positive: BigInt,
        negative: BigInt,
        c_pos: BigInt,
        c_neg: BigInt,
    },
    /// No coprime pair existed; a finite subset with gcd 1 was combined with
    /// nonnegative coefficients instead. Pairs (element value, coefficient).
    Subset { combination: Vec<(BigInt, BigInt)> },
}

/// Picks a coprime opposite-sign pair from the state, minimizing the witness
/// vertex count (ties broken by lexicographic coefficient maps), and solves
/// `c_pos * g_pos + c_neg * g_neg = 1` in nonnegative integers with the
/// smallest c_pos.
type PairChoice = (BigInt, Vec<(u64, BigInt)>, Certificate, Assembly);

pub fn assemble_certificate(
    f: &IntPolynomial,
    state: &MonoidState,
) -> Result<(Certificate, Assembly)> {
    let mut best: Option<PairChoice> = None;
    let positives: Vec<&GammaElement> = state
        .elements
        .iter()
        .filter(|e| e.value.is_positive())
        .collect();
    let negatives: Vec<&GammaElement> = state
        .elements
        .iter()
        .filter(|e| e.value.is_negative())
        .collect();
    for gp in &positives {
        for gn in &negatives {
            let np = &gp.value;
            let nn = gn.value.abs();
            if np.gcd(&nn) != BigInt::one() {
                continue;
            }
            let (c_pos, c_neg) = smallest_nonnegative_pair(np, &nn);
            // Vertex count without materializing the merged map.
            let vc = BigInt::one() + &c_pos * gp.branch_weight() + &c_neg * gn.branch_weight();
            let better = match &best {
                None => true,
                Some((best_vc, _, _, _)) => vc < *best_vc,
            };
            let tie = best
                .as_ref()
                .is_some_and(|(best_vc, _, _, _)| vc == *best_vc);
            if better || tie {
                let mut a: BTreeMap<u64, BigInt> = BTreeMap::new();
                for (k, c) in &gp.coeffs {
                    let t = &c_pos * c;
                    if !t.is_zero() {
                        a.entry(*k).and_modify(|x| *x += &t).or_insert(t);
                    }
                }
                for (k, c) in &gn.coeffs {
                    let t = &c_neg * c;
                    if !t.is_zero() {
                        a.entry(*k).and_modify(|x| *x += &t).or_insert(t);
                    }
                }
                let lex: Vec<(u64, BigInt)> = a.iter().map(|(k, v)| (*k, v.clone())).collect();
                let replace = better
                    || best
                        .as_ref()
                        .is_some_and(|(_, best_lex, _, _)| lex < *best_lex);
                if replace {
                    let cert = Certificate {
                        f: f.clone(),
                        a,
                        verified: false,
                    };
                    let assembly = Assembly::Pair {
                        positive: gp.value.clone(),
                        negative: gn.value.clone(),
                        c_pos: c_pos.clone(),
                        c_neg: c_neg.clone(),
                    };
                    best = Some((vc, lex, cert, assembly));
                }
            }
        }
    }
    let (mut cert, assembly) = match best {
        Some((_, _, cert, assembly)) => (cert, assembly),
        None => assemble_from_subset(f, state)?,
    };
    let ok = verify_certificate(f, &cert.a)?;
    assert!(ok, "assembled certificate failed verification");
    cert.verified = true;
    Ok((cert, assembly))
}

/// Fallback when no coprime opposite-sign pair exists: pick a small subset
/// with both signs whose values have gcd 1, write 1 as an integer
/// combination, and shift the coefficients into the nonnegative cone (adding
/// `k(|v_N| , v_i)` to the coefficients of a positive-valued element i and a
/// negative-valued element N leaves the sum unchanged, and symmetrically via
/// a positive-valued element for negative-valued ones).
fn assemble_from_subset(f: &IntPolynomial, state: &MonoidState) -> Result<(Certificate, Assembly)> {
    if !(state.has_positive && state.has_negative && state.gcd_all.is_one()) {
        return Err(Error::NoCoprimePair);
    }
    // Greedy gcd-reducing subset, in collection order.
    let mut subset: Vec<&GammaElement> = Vec::new();
    let mut g = BigInt::zero();
    for e in &state.elements {
        let g2 = g.gcd(&e.value);
        if g2 != g {
            subset.push(e);
            g = g2;
        }
        if g.is_one() {
            break;
        }
    }
    debug_assert!(g.is_one());
    if !subset.iter().any(|e| e.value.is_positive()) {
        subset.push(
            state
                .elements
                .iter()
                .find(|e| e.value.is_positive())
                .expect("has_positive"),
        );
    }
    if !subset.iter().any(|e| e.value.is_negative()) {
        subset.push(
            state
                .elements
                .iter()
                .find(|e| e.value.is_negative())
                .expect("has_negative"),
        );
    }

    // Integer combination summing to 1, by iterated extended gcd.
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); subset.len()];
    let mut g = subset[0].value.clone();
    coeffs[0] = BigInt::one();
    for i in 1..subset.len() {
        let e = g.extended_gcd(&subset[i].value);
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
        g = -g;
    }
    assert!(g.is_one());

    let pos_idx = subset
        .iter()
        .position(|e| e.value.is_positive())
        .expect("positive present");
    let neg_idx = subset
        .iter()
        .position(|e| e.value.is_negative())
        .expect("negative present");
    let v_pos = subset[pos_idx].value.clone();
    let v_neg_abs = subset[neg_idx].value.abs();
    // Negative-valued elements first (bumps the positive anchor), then
    // positive-valued ones (bumps the negative anchor).
    for i in 0..subset.len() {
        if subset[i].value.is_negative() && coeffs[i].is_negative() {
            let k = (-&coeffs[i] + &v_pos - BigInt::one()).div_floor(&v_pos);
            coeffs[i] += &k * &v_pos;
            let bump = &k * subset[i].value.abs();
            coeffs[pos_idx] += bump;
        }
    }
    for i in 0..subset.len() {
        if subset[i].value.is_positive() && coeffs[i].is_negative() {
            let k = (-&coeffs[i] + &v_neg_abs - BigInt::one()).div_floor(&v_neg_abs);
            coeffs[i] += &k * &v_neg_abs;
            let bump = &k * &subset[i].value;
            coeffs[neg_idx] += bump;
        }
    }
    assert!(coeffs.iter().all(|c| !c.is_negative()));

    let mut a: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (e, c) in subset.iter().zip(&coeffs) {
        if c.is_zero() {
            continue;
        }
        for (k, ek) in &e.coeffs {
            let t = c * ek;
            if !t.is_zero() {
                a.entry(*k).and_modify(|x| *x += &t).or_insert(t);
            }
        }
    }
    let cert = Certificate {
        f: f.clone(),
        a,
        verified: false,
    };
    let combination = subset
        .iter()
        .zip(&coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e.value.clone(), c.clone()))
        .collect();
    Ok((cert, Assembly::Subset { combination }))
}

/// Smallest nonnegative (c_pos, c_neg) with `c_pos * p - c_neg * n = 1` for
/// coprime positive p, n.
fn smallest_nonnegative_pair(p: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    if p.is_one() {
        return (BigInt::one(), BigInt::zero());
    }
    if n.is_one() {
        // 1 = 1*p - (p-1)*1
        return (BigInt::one(), p - BigInt::one());
    }
    let e = p.extended_gcd(n);
    debug_assert!(e.gcd.is_one());
    // e.x * p + e.y * n = 1; reduce e.x into [1, n)
    let c_pos = e.x.mod_floor(n);
    let c_pos = if c_pos.is_zero() { n.clone() } else { c_pos };
    let c_neg = (&c_pos * p - BigInt::one()) / n;
    debug_assert!(!c_neg.is_negative());
    (c_pos, c_neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn octic_f() -> IntPolynomial {
        p("x^4 - 44x^3 + 567x^2 - 2660x + 3564")
    }

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn set(ks: &[u64], side: Side) -> InterlacingSet {
        InterlacingSet::new(ks.to_vec(), side)
    }

    fn map(pairs: &[(u64, i64)]) -> BTreeMap<u64, BigInt> {
        pairs.iter().map(|&(k, v)| (k, BigInt::from(v))).collect()
    }

    #[test]
    fn octic_left_weight_vector() {
        let wv = weight_vector(&octic_f(), &set(&[0, 3, 7, 10], Side::Left)).unwrap();
        assert_eq!(wv.v, vec![rq(594, 35), rq(5, 1), rq(3, 7), rq(8, 5)]);
        assert_eq!(wv.delta, BigInt::from(35));
    }

    #[test]
    fn octic_right_weight_vector() {
        let wv = weight_vector(&octic_f(), &set(&[3, 7, 10, 26], Side::Right)).unwrap();
        assert_eq!(wv.v, vec![rq(-15, 23), rq(-3, 19), rq(-1, 1), rq(-83, 437)]);
        assert_eq!(wv.delta, BigInt::from(437));
    }

    #[test]
    fn golden_weight_vector() {
        let wv = weight_vector(&p("x^2 - 3x + 1"), &set(&[0, 1], Side::Left)).unwrap();
        assert_eq!(wv.v, vec![rq(1, 1), rq(1, 1)]);
        assert_eq!(wv.delta, BigInt::one());
    }

    #[test]
    fn alternation_failure_rejected() {
        assert!(matches!(
            weight_vector(&octic_f(), &set(&[0, 1, 2, 3], Side::Left)),
            Err(Error::SignAlternation)
        ));
    }

    #[test]
    fn octic_signed_deltas() {
        let left =
            signed_delta(&weight_vector(&octic_f(), &set(&[0, 3, 7, 10], Side::Left)).unwrap());
        assert_eq!(left.value, BigInt::from(35));
        assert_eq!(left.coeffs, map(&[(0, 594), (3, 175), (7, 15), (10, 56)]));
        let right =
            signed_delta(&weight_vector(&octic_f(), &set(&[3, 7, 10, 26], Side::Right)).unwrap());
        assert_eq!(right.value, BigInt::from(-437));
        assert_eq!(right.coeffs, map(&[(3, 285), (7, 69), (10, 437), (26, 83)]));
    }

    #[test]
    fn golden_delta_is_one() {
        let wv = weight_vector(&p("x^2 - 3x + 1"), &set(&[0, 1], Side::Left)).unwrap();
        let elem = signed_delta(&wv);
        assert_eq!(elem.value, BigInt::one());
        assert_eq!(elem.coeffs, map(&[(0, 1), (1, 1)]));
    }

    fn trapped_quartic() -> IntPolynomial {
        p("x^4 - 49x^3 + 632x^2 - 777x + 1")
    }

    #[test]
    fn trapped_quartic_combination() {
        let f = trapped_quartic();
        let w1 = weight_vector(&f, &set(&[0, 1, 2, 24], Side::Left)).unwrap();
        let w2 = weight_vector(&f, &set(&[0, 1, 3, 24], Side::Left)).unwrap();
        let elem = combine_vectors(&[w1, w2], &[BigInt::from(11), BigInt::from(1)]).unwrap();
        assert_eq!(elem.value, BigInt::from(12096));
        assert_eq!(
            elem.coeffs,
            map(&[(0, 245), (1, 96768), (2, 150948), (3, 16928), (24, 215)])
        );
    }

    #[test]
    fn single_combination_is_signed_delta() {
        let f = octic_f();
        let wv = weight_vector(&f, &set(&[0, 3, 7, 10], Side::Left)).unwrap();
        let a = signed_delta(&wv);
        let b = combine_vectors(&[wv], &[BigInt::one()]).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn mixed_sides_rejected() {
        let f = octic_f();
        let l = weight_vector(&f, &set(&[0, 3, 7, 10], Side::Left)).unwrap();
        let r = weight_vector(&f, &set(&[3, 7, 10, 26], Side::Right)).unwrap();
        assert!(matches!(
            combine_vectors(&[l, r], &[BigInt::one(), BigInt::one()]),
            Err(Error::MixedSides)
        ));
    }

    #[test]
    fn octic_monoid_terminates_immediately() {
        let spec = SquaresSpectrum::new(&octic_f()).unwrap();
        let out = monoid_search(&spec, &SearchBudget::default());
        assert!(out.state.one_reachable());
        let values: Vec<BigInt> = out.state.elements.iter().map(|e| e.value.clone()).collect();
        assert_eq!(values, vec![BigInt::from(35), BigInt::from(-437)]);
    }

    #[test]
    fn golden_monoid_immediate() {
        let spec = SquaresSpectrum::new(&p("x^2 - 3x + 1")).unwrap();
        let out = monoid_search(&spec, &SearchBudget::default());
        assert!(out.state.one_reachable());
        assert!(out.state.elements.iter().any(|e| e.value.is_one()));
    }

    #[test]
    fn octic_assembly() {
        let f = octic_f();
        let spec = SquaresSpectrum::new(&f).unwrap();
        let out = monoid_search(&spec, &SearchBudget::default());
        let (cert, asm) = assemble_certificate(&f, &out.state).unwrap();
        match asm {
            Assembly::Pair { c_pos, c_neg, .. } => {
                assert_eq!(c_pos, BigInt::from(25));
                assert_eq!(c_neg, BigInt::from(2));
            }
            Assembly::Subset { .. } => panic!("expected a coprime pair"),
        }
        assert_eq!(
            cert.a,
            map(&[(0, 14850), (3, 4945), (7, 513), (10, 2274), (26, 166)])
        );
        assert!(cert.verified);
        assert_eq!(cert.vertex_count(), BigInt::from(68231));
    }

    #[test]
    fn golden_assembly_passthrough() {
        let f = p("x^2 - 3x + 1");
        let spec = SquaresSpectrum::new(&f).unwrap();
        let out = monoid_search(&spec, &SearchBudget::default());
        let (cert, _) = assemble_certificate(&f, &out.state).unwrap();
        assert_eq!(cert.a, map(&[(0, 1), (1, 1)]));
        assert_eq!(cert.vertex_count(), BigInt::from(4));
    }

    #[test]
    fn verify_examples() {
        let f = p("x^3 - 20x^2 + 96x - 64");
        assert!(verify_certificate(&f, &map(&[(0, 2), (4, 4), (8, 2)])).unwrap());
        assert!(!verify_certificate(&f, &BTreeMap::new()).unwrap());
        let octic = octic_f();
        assert!(
            verify_certificate(&octic, &map(&[(1, 8), (3, 4), (8, 1), (10, 1), (18, 3)])).unwrap()
        );
        // key collision with a root
        assert!(matches!(
            verify_certificate(&p("x - 2"), &map(&[(2, 1)])),
            Err(Error::KeyIsRoot(2))
        ));
    }

    #[test]
    fn certificate_json_keeps_big_coefficients_exact() {
        let mut a = BTreeMap::new();
        a.insert(
            0u64,
            BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap(),
        );
        let cert = Certificate {
            f: p("x - 2"),
            a: a.clone(),
            verified: false,
        };
        let v = cert.to_json();
        assert_eq!(v["a"]["0"].to_string(), "123456789012345678901234567890");
        assert_eq!(Certificate::from_json(&v).unwrap().a, a);
    }

    #[test]
    fn certificate_json_round_trip() {
        let f = octic_f();
        let spec = SquaresSpectrum::new(&f).unwrap();
        let out = monoid_search(&spec, &SearchBudget::default());
        let (cert, _) = assemble_certificate(&f, &out.state).unwrap();
        let v = cert.to_json();
        let back = Certificate::from_json(&v).unwrap();
        assert_eq!(back.f, cert.f);
        assert_eq!(back.a, cert.a);
        assert!(verify_certificate(&back.f, &back.a).unwrap());
    }
}
