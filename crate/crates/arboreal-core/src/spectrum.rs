//! The squared spectrum: the minimal polynomial of lambda^2 together with
//! isolating intervals for its roots, plus interlacing-set queries.
//!
//! An interlacing set weaves integers strictly between the ordered roots
//! `lambda_1^2 < ... < lambda_n^2`; the left variant starts below the
//! smallest root, the right variant ends above the largest. Without an
//! interlacing set, height 2 is refuted outright.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::{cmp_root_to_int, isolate_positive_roots, refine_interval, RationalInterval};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// +1 for left, -1 for right: the common sign of the weight coordinates.
    pub fn sign(self) -> i8 {
        match self {
            Side::Left => 1,
            Side::Right => -1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// A strictly increasing list of nonnegative integers interlacing the roots
/// of the squares polynomial, tagged with its side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InterlacingSet {
    pub ks: Vec<u64>,
    pub side: Side,
}

impl InterlacingSet {
    pub fn new(ks: Vec<u64>, side: Side) -> Self {
        debug_assert!(ks.windows(2).all(|w| w[0] < w[1]));
        InterlacingSet { ks, side }
    }
}

impl fmt::Display for InterlacingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.ks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", k)?;
        }
        write!(f, "}}")
    }
}

/// The minimal polynomial of lambda^2 with ordered isolating intervals for
/// its roots, all of which are real and strictly positive.
#[derive(Clone, Debug)]
pub struct SquaresSpectrum {
    poly: IntPolynomial,
    roots: Vec<RationalInterval>,
}

/// Builds the squares polynomial: the monic polynomial whose roots are the
/// distinct squares of the roots of `f`. For irreducible `f` this is the
/// minimal polynomial of lambda^2.
///
/// Construction: `G(x^2) = (-1)^(deg f) f(x) f(-x)`, then the squarefree part.
pub fn squares_min_poly(f: &IntPolynomial) -> Result<IntPolynomial> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let prod = f * &f.flip_sign();
    let n = f.deg();
    let prod = if n % 2 == 1 { -&prod } else { prod };
    // prod is a polynomial in x^2; fold out the even coefficients.
    let mut coeffs = Vec::with_capacity(n + 1);
    for (i, c) in prod.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            coeffs.push(c.clone());
        } else {
            assert!(c.is_zero(), "f(x)*f(-x) must be even");
        }
    }
    let g = IntPolynomial::from_coeffs(coeffs);
    debug_assert!(g.is_monic());
    Ok(g.squarefree_part())
}

impl SquaresSpectrum {
    /// Validates and isolates: `f` must be monic, squarefree, with every root
    /// real and strictly positive.
    pub fn new(f: &IntPolynomial) -> Result<SquaresSpectrum> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut roots = isolate_positive_roots(f)?;
        if roots.len() != f.deg() {
            return Err(Error::NonPositiveRoots);
        }
        // Tighten so no interval spans more than one integer; gap queries then
        // scan a minimal candidate range (membership itself is sign-exact).
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for iv in roots.iter_mut() {
            *iv = refine_interval(f, iv, &half)?;
        }
        Ok(SquaresSpectrum {
            poly: f.clone(),
            roots,
        })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    /// Degree of the squares polynomial (number of roots).
    pub fn n(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[RationalInterval] {
        &self.roots
    }

    /// Exact position of integer `k` relative to root `i` (0-based).
    pub fn cmp_root_to_int(&self, i: usize, k: &BigInt) -> Ordering {
        cmp_root_to_int(&self.poly, &self.roots[i], k)
    }

    /// Strictly positive integers cannot exceed this bound and still lie
    /// below the largest root.
    fn root_upper_int(&self, i: usize) -> u64 {
        self.roots[i]
            .hi
            .ceil()
            .to_integer()
            .to_u64()
            .expect("root bound fits u64")
    }

    fn root_lower_int(&self, i: usize) -> u64 {
        let lo = self.roots[i].lo.floor().to_integer();
        if lo.is_negative() {
            0
        } else {
            lo.to_u64().expect("root bound fits u64")
        }
    }

    /// The least integer k with `root_i < k < root_{i+1}` (1-based gap index
    /// per the usual indexing of gaps between consecutive roots), if any.
    pub fn least_integer_in_gap(&self, gap: usize) -> Option<u64> {
        assert!(gap >= 1 && gap < self.n().max(1), "gap index out of range");
        let (lo_root, hi_root) = (gap - 1, gap);
        let mut k = self.root_lower_int(lo_root);
        let stop = self.root_upper_int(hi_root);
        while k <= stop {
            let kb = BigInt::from(k);
            if self.cmp_root_to_int(lo_root, &kb) == Ordering::Less
                && self.cmp_root_to_int(hi_root, &kb) == Ordering::Greater
            {
                return Some(k);
            }
            k += 1;
        }
        None
    }

    /// All integers strictly inside gap `gap` (1-based), ascending, capped at
    /// `max_k`.
    fn integers_in_gap(&self, gap: usize, max_k: u64) -> Vec<u64> {
        let (lo_root, hi_root) = (gap - 1, gap);
        let mut out = Vec::new();
        let mut k = self.root_lower_int(lo_root);
        let stop = self.root_upper_int(hi_root).min(max_k);
        while k <= stop {
            let kb = BigInt::from(k);
            if self.cmp_root_to_int(lo_root, &kb) == Ordering::Less
                && self.cmp_root_to_int(hi_root, &kb) == Ordering::Greater
            {
                out.push(k);
            }
            k += 1;
        }
        out
    }

    /// Integers in `[0, root_1)`, the candidates for the first left slot.
    fn integers_below_first(&self, max_k: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut k = 0u64;
        let stop = self.root_upper_int(0).min(max_k);
        while k <= stop {
            if self.cmp_root_to_int(0, &BigInt::from(k)) == Ordering::Greater {
                out.push(k);
            } else {
                break;
            }
            k += 1;
        }
        out
    }

    /// First integers above the last root: `(root_n, root_n + count]`-ish,
    /// ascending, capped at `max_k`.
    fn integers_above_last(&self, max_k: u64) -> Vec<u64> {
        let last = self.n() - 1;
        let mut k = self.root_lower_int(last);
        let mut out = Vec::new();
        while k <= max_k {
            if self.cmp_root_to_int(last, &BigInt::from(k)) == Ordering::Less {
                out.push(k);
            }
            k += 1;
        }
        out
    }

    /// The canonical interlacing set (smallest admissible integers), if one
    /// exists. Left and right existence are equivalent.
    pub fn find_interlacing(&self, side: Side) -> Option<InterlacingSet> {
        let n = self.n();
        let mut ks = Vec::with_capacity(n);
        match side {
            Side::Left => {
                ks.push(0);
                for gap in 1..n {
                    ks.push(self.least_integer_in_gap(gap)?);
                }
            }
            Side::Right => {
                for gap in 1..n {
                    ks.push(self.least_integer_in_gap(gap)?);
                }
                // least integer strictly above the last root
                let last = self.n() - 1;
                let mut k = self.root_lower_int(last);
                while self.cmp_root_to_int(last, &BigInt::from(k)) != Ordering::Less {
                    k += 1;
                }
                ks.push(k);
            }
        }
        Some(InterlacingSet::new(ks, side))
    }

    /// Deterministic enumeration of all interlacing sets with every k at most
    /// `max_k`, in ascending lexicographic order of `(k_n, ..., k_1)`,
    /// truncated at `max_sets`.
    pub fn enumerate_interlacing(&self, side: Side, budget: EnumBudget) -> InterlacingEnum {
        let n = self.n();
        let mut slots: Vec<Vec<u64>> = Vec::with_capacity(n);
        match side {
            Side::Left => {
                slots.push(self.integers_below_first(budget.max_k));
                for gap in 1..n {
                    slots.push(self.integers_in_gap(gap, budget.max_k));
                }
            }
            Side::Right => {
                for gap in 1..n {
                    slots.push(self.integers_in_gap(gap, budget.max_k));
                }
                slots.push(self.integers_above_last(budget.max_k));
            }
        }
        let empty = slots.iter().any(|s| s.is_empty());
        InterlacingEnum {
            slots,
            side,
            indices: vec![0; n],
            done: empty,
            emitted: 0,
            max_sets: budget.max_sets,
        }
    }

    /// Validates the defining sign alternation of an interlacing set without
    /// consulting root intervals: the signs of F(k_i) must strictly
    /// alternate, starting positive for left, negative for right.
    pub fn check_alternation(&self, set: &InterlacingSet) -> bool {
        check_alternation(&self.poly, set)
    }
}

/// Sign-alternation test usable with just the polynomial.
///
/// With k_1 < ... < k_n, the denominator products alternate sign as
/// (-1)^(n-i), so the weight coordinates all carry the side's sign exactly
/// when sign F(k_i) = side_sign * (-1)^(n-i+1). For monic F of even degree
/// that means a left chain starts positive; for odd degree it starts
/// negative (below every root a monic odd polynomial is negative).
pub fn check_alternation(f: &IntPolynomial, set: &InterlacingSet) -> bool {
    let n = f.deg();
    if set.ks.len() != n {
        return false;
    }
    let s = set.side.sign();
    let mut expect = if n.is_multiple_of(2) { s } else { -s };
    for k in &set.ks {
        if f.sign_at(&BigInt::from(*k)) != expect {
            return false;
        }
        expect = -expect;
    }
    true
}

/// Budget for interlacing-set enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumBudget {
    /// Cap on every k (in particular on k_n for right sets).
    pub max_k: u64,
    /// Maximum number of sets to emit.
    pub max_sets: usize,
}

/// Odometer over the per-gap candidate lists; the first slot turns fastest,
/// so sets come out in ascending `(k_n, ..., k_1)` order.
pub struct InterlacingEnum {
    slots: Vec<Vec<u64>>,
    side: Side,
    indices: Vec<usize>,
    done: bool,
    emitted: usize,
    max_sets: usize,
}

impl Iterator for InterlacingEnum {
    type Item = InterlacingSet;

    fn next(&mut self) -> Option<InterlacingSet> {
        if self.done || self.emitted >= self.max_sets {
            return None;
        }
        let ks: Vec<u64> = self
            .indices
            .iter()
            .zip(&self.slots)
            .map(|(&i, slot)| slot[i])
            .collect();
        self.emitted += 1;
        // advance, least-significant slot first
        let mut pos = 0;
        loop {
            if pos == self.slots.len() {
                self.done = true;
                break;
            }
            self.indices[pos] += 1;
            if self.indices[pos] < self.slots[pos].len() {
                break;
            }
            self.indices[pos] = 0;
            pos += 1;
        }
        Some(InterlacingSet::new(ks, self.side))
    }
}
