//! Real root isolation by Sturm sequences over exact rationals.
//!
//! Roots are returned as open isolating intervals with rational endpoints;
//! after refinement the endpoints are dyadic. Everything below is exact, so
//! "which integers separate two roots" is always decidable.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Open interval with exact rational endpoints, `lo < hi`.
///
/// When produced by isolation, the target polynomial has exactly one root in
/// `(lo, hi)` and is nonzero at both endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo < hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo < *x && *x < self.hi
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Sturm chain with primitive integer entries (signs preserved at every
/// evaluation point).
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(f: &IntPolynomial) -> Self {
        assert!(!f.is_zero(), "Sturm chain of zero polynomial");
        let mut chain = vec![f.clone()];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if b.deg() == 0 {
                break;
            }
            // next = -(positive multiple of a mod b); correct for the sign of
            // the pseudo-remainder scaling lead(b)^(delta+1).
            let delta = a.deg().saturating_sub(b.deg());
            let scale_negative = b.leading().unwrap().is_negative() && (delta + 1) % 2 == 1;
            let mut r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            r = r.divide_content().scale(&BigInt::from(-1));
            if scale_negative {
                r = r.scale(&BigInt::from(-1));
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    /// Sign variations in the chain at `x`.
    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = p.sign_at_rat(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    /// Requires `f(a) != 0` and `f(b) != 0`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a < b);
        debug_assert!(self.chain[0].sign_at_rat(a) != 0);
        debug_assert!(self.chain[0].sign_at_rat(b) != 0);
        self.variations_at(a) - self.variations_at(b)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// A point in `(a, b)` where `f` does not vanish, found by trying the
/// midpoint and then nudging toward either end.
fn split_point(f: &IntPolynomial, a: &BigRational, b: &BigRational) -> BigRational {
    let two = rat(2);
    let lo = a.clone();
    let mut hi = b.clone();
    loop {
        let mid = (&lo + &hi) / &two;
        if f.sign_at_rat(&mid) != 0 {
            return mid;
        }
        // mid is a root; a polynomial has finitely many, so shrinking toward
        // `a` terminates.
        hi = mid;
    }
}

/// Isolates the strictly positive real roots of a squarefree polynomial.
///
/// Returns pairwise-disjoint open intervals with positive lower endpoints,
/// sorted ascending, one per positive real root. The interval count equals
/// the Sturm root count on `(0, CauchyBound]`.
pub fn isolate_positive_roots(f: &IntPolynomial) -> Result<Vec<RationalInterval>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    // Strip a root at the origin so Sturm endpoints are clean; the remaining
    // positive roots (and endpoint signs on the positive axis) are unchanged.
    let mut g = f.clone();
    if g.coeff(0).is_zero() {
        let (q, r) = g.div_rem_exact(&IntPolynomial::monomial(1, 1))?;
        debug_assert!(r.is_zero());
        g = q;
        if g.deg() == 0 {
            return Ok(Vec::new());
        }
    }

    let chain = SturmChain::new(&g);
    let mut bound = BigRational::from(g.cauchy_bound());
    while g.sign_at_rat(&bound) == 0 {
        bound += BigRational::one();
    }
    let zero = rat(0);
    let total = chain.count_roots(&zero, &bound);
    let mut out = Vec::new();
    if total == 0 {
        return Ok(out);
    }

    // Depth-first bisection, left half first, so intervals come out sorted.
    let mut stack = vec![(zero, bound, total)];
    while let Some((a, b, count)) = stack.pop() {
        if count == 1 {
            out.push(shrink_to_positive(&g, a, b));
            continue;
        }
        let mid = split_point(&g, &a, &b);
        let left = chain.count_roots(&a, &mid);
        let right = count - left;
        // Push right first; the left half is processed (and emitted) first.
        if right > 0 {
            stack.push((mid.clone(), b, right));
        }
        if left > 0 {
            stack.push((a, mid, left));
        }
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

/// Bisects until the lower endpoint is strictly positive (the enclosed root
/// is known to be > 0).
fn shrink_to_positive(f: &IntPolynomial, a: BigRational, b: BigRational) -> RationalInterval {
    let mut lo = a;
    let mut hi = b;
    let sign_hi = f.sign_at_rat(&hi);
    while !lo.is_positive() {
        let mid = split_point(f, &lo, &hi);
        if f.sign_at_rat(&mid) == sign_hi {
            // root in (lo, mid)
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RationalInterval::new(lo, hi)
}

/// Bisects an isolating interval down to the requested width.
///
/// No-op when the requested width is at least the current one; otherwise
/// bisects while the width is >= the request, so the result ends strictly
/// below it. Endpoints stay dyadic when the inputs are.
pub fn refine_interval(
    f: &IntPolynomial,
    iv: &RationalInterval,
    width: &BigRational,
) -> Result<RationalInterval> {
    let s_lo = f.sign_at_rat(&iv.lo);
    let s_hi = f.sign_at_rat(&iv.hi);
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(Error::BadInterval);
    }
    if *width >= iv.width() {
        return Ok(iv.clone());
    }
    let two = rat(2);
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    while &hi - &lo >= *width {
        let mid = (&lo + &hi) / &two;
        match f.sign_at_rat(&mid) {
            0 => {
                // The root is exactly the midpoint; box it tightly.
                let quarter_width = width / rat(4);
                let new_lo = &mid - &quarter_width;
                let new_hi = &mid + &quarter_width;
                debug_assert!(f.sign_at_rat(&new_lo) != 0 && f.sign_at_rat(&new_hi) != 0);
                return Ok(RationalInterval::new(new_lo, new_hi));
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RationalInterval::new(lo, hi))
}

/// Exact comparison of the root enclosed by `iv` against the integer `k`.
///
/// `iv` must isolate a single root of `f` with sign changes at the endpoints.
pub fn cmp_root_to_int(f: &IntPolynomial, iv: &RationalInterval, k: &BigInt) -> Ordering {
    let kq = BigRational::from(k.clone());
    if kq <= iv.lo {
        return Ordering::Greater; // root > k
    }
    if kq >= iv.hi {
        return Ordering::Less;
    }
    match f.sign_at(k) {
        0 => Ordering::Equal,
        // Same sign as at `lo`: the sign change (the root) is above k.
        s if s == f.sign_at_rat(&iv.lo) => Ordering::Greater,
        _ => Ordering::Less,
    }
}
