//! Dense integer-coefficient polynomials with exact arithmetic.
//!
//! Coefficients are stored in ascending degree order with the leading
//! coefficient nonzero; the zero polynomial is the empty coefficient vector.
//! This type carries every polynomial in the crate: minimal polynomials of
//! lambda and lambda^2, reductions mod p are derived from it, and
//! characteristic polynomials of witness trees land here too.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::from_coeffs(vec![c.into()])
    }

    /// `c * x^e`.
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        IntPolynomial { coeffs }
    }

    /// `x - k` for an integer `k`.
    pub fn x_minus(k: impl Into<BigInt>) -> Self {
        IntPolynomial::from_coeffs(vec![-k.into(), BigInt::one()])
    }

    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Exact sign of `self(k)`: -1, 0, or +1.
    pub fn sign_at(&self, k: &BigInt) -> i8 {
        let v = self.eval(k);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn sign_at_rat(&self, x: &BigRational) -> i8 {
        let v = self.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `s^n * self(x/s)`: multiplies every root by `s`, preserving monicity.
    pub fn scale_roots(&self, s: &BigInt) -> IntPolynomial {
        assert!(!s.is_zero(), "root scale factor must be nonzero");
        let n = match self.degree() {
            Some(n) => n,
            None => return IntPolynomial::zero(),
        };
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut pow = BigInt::one();
        // coefficient of x^i picks up s^(n-i); iterate from the top down.
        for i in (0..=n).rev() {
            coeffs.push((&self.coeffs[i]) * &pow);
            pow *= s;
        }
        coeffs.reverse();
        IntPolynomial::from_coeffs(coeffs)
    }

    /// `self(-x)`.
    pub fn flip_sign(&self) -> IntPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Substitutes `x^2` for `x`: returns `self(x^2)`.
    pub fn compose_square(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); 2 * self.deg() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Content: gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the (positive) content, keeping the sign.
    pub fn divide_content(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let g = self.content();
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Divides out the content and forces a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division with remainder. Internally runs over the rationals;
    /// fails unless both quotient and remainder come out integral (always the
    /// case for a monic divisor).
    pub fn div_rem_exact(&self, d: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() || self.deg() < d.deg() {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let dd = d.deg();
        let lead = d.leading().unwrap().clone();
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let mut quot = vec![BigRational::zero(); self.deg() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / BigRational::from(lead.clone());
            quot[i - dd] = q.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * BigRational::from(dc.clone());
                rem[i - dd + j] -= t;
            }
        }
        rem.truncate(dd);
        let to_int = |v: Vec<BigRational>| -> Result<IntPolynomial> {
            let mut out = Vec::with_capacity(v.len());
            for r in v {
                if !r.is_integer() {
                    return Err(Error::InexactDivision);
                }
                out.push(r.to_integer());
            }
            Ok(IntPolynomial::from_coeffs(out))
        };
        Ok((to_int(quot)?, to_int(rem)?))
    }

    /// Remainder modulo a monic divisor (integral by construction).
    pub fn rem_monic(&self, d: &IntPolynomial) -> IntPolynomial {
        debug_assert!(d.is_monic());
        if self.is_zero() || self.deg() < d.deg() {
            return self.clone();
        }
        let dd = d.deg();
        let mut rem = self.coeffs.clone();
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
        }
        rem.truncate(dd);
        IntPolynomial::from_coeffs(rem)
    }

    /// Pseudo-remainder: `lead(d)^(deg self - deg d + 1) * self mod d`,
    /// computed entirely over the integers.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        assert!(!d.is_zero(), "pseudo_rem by zero");
        if self.is_zero() || self.deg() < d.deg() {
            return self.clone();
        }
        let lead = d.leading().unwrap().clone();
        let mut scale_left = self.deg() - d.deg() + 1;
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let top = r.leading().unwrap().clone();
            // r <- lead * r - top * x^shift * d
            let mut next = r.scale(&lead);
            let sub = d.scale(&top);
            for (j, c) in sub.coeffs.iter().enumerate() {
                next.coeffs[j + shift] -= c;
            }
            next.normalize();
            r = next;
            scale_left -= 1;
        }
        for _ in 0..scale_left {
            r = r.scale(&lead);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient, via the primitive
    /// pseudo-remainder sequence (coefficients stay bounded).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// `self / gcd(self, self')`: same roots, multiplicity one, primitive,
    /// positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPolynomial {
        assert!(!self.is_zero(), "squarefree part of zero");
        if self.deg() == 0 {
            return IntPolynomial::one();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self
            .div_rem_exact(&g)
            .or_else(|_| {
                // gcd is primitive but self may not be; divide the primitive part.
                self.primitive_part().div_rem_exact(&g)
            })
            .expect("gcd divides");
        debug_assert!(r.is_zero());
        q.primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && (self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0)
    }

    /// Cauchy root bound `1 + max |c_i| / |c_lead|`, rounded up to an integer.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.leading().expect("root bound of zero polynomial");
        let mut max = BigInt::zero();
        for c in self.coeffs.iter().take(self.coeffs.len() - 1) {
            let a = c.abs();
            if a > max {
                max = a;
            }
        }
        let lead = lead.abs();
        // ceil(max / lead) + 1
        let q = (&max + &lead - BigInt::one()).div_floor(&lead);
        q + BigInt::one()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders in the shared text format, e.g. `x^4 - 44x^3 + 567x^2 - 2660x + 3564`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && e > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}

/// Parses the shared polynomial text format: either an ASCII expression
/// (`x^8 - 44x^6 + 567x^4 - 2660x^2 + 3564`) or a comma-separated ascending
/// coefficient list (`3564,0,-2660,0,567,0,-44,0,1`). Exact; rejects
/// non-integer coefficients.
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    if text.contains(',') {
        parse_coeff_list(text)
    } else {
        parse_expression(text)
    }
}

fn parse_coeff_list(text: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut pos = 0usize;
    for piece in text.split(',') {
        let t = piece.trim();
        if t.is_empty() {
            return Err(Error::Parse {
                pos,
                msg: "empty coefficient".into(),
            });
        }
        let c: BigInt = t.parse().map_err(|_| Error::Parse {
            pos,
            msg: format!("`{}` is not an integer", t),
        })?;
        coeffs.push(c);
        pos += piece.len() + 1;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        if self.peek() == Some(b'.') {
            return Err(self.err("non-integer coefficient"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// One term: `c`, `x`, `c x^e`, `c*x^e`, ...
    fn parse_term(&mut self) -> Result<(BigInt, usize)> {
        let mut coeff = BigInt::one();
        let mut saw_number = false;
        self.skip_ws();
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            coeff = self.parse_uint()?;
            saw_number = true;
        }
        self.skip_ws();
        if self.peek() == Some(b'*') {
            if !saw_number {
                return Err(self.err("unexpected `*`"));
            }
            self.pos += 1;
            self.skip_ws();
        }
        let mut exp = 0usize;
        if self.peek() == Some(b'x') || self.peek() == Some(b'X') {
            self.pos += 1;
            exp = 1;
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let e = self.parse_uint()?;
                exp = e
                    .try_into()
                    .map_err(|_| self.err("exponent out of range"))?;
            }
        } else if !saw_number {
            return Err(self.err("expected a coefficient or `x`"));
        }
        Ok((coeff, exp))
    }
}

fn parse_expression(text: &str) -> Result<IntPolynomial> {
    let mut p = ExprParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.err("empty input"));
    }
    let mut sign = BigInt::one();
    if p.peek() == Some(b'+') {
        p.pos += 1;
    } else if p.peek() == Some(b'-') {
        sign = -sign;
        p.pos += 1;
    }
    loop {
        let (c, e) = p.parse_term()?;
        terms.push((sign * c, e));
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => {
                sign = BigInt::one();
                p.pos += 1;
            }
            Some(b'-') => {
                sign = -BigInt::one();
                p.pos += 1;
            }
            Some(b'.') => return Err(p.err("non-integer coefficient")),
            Some(b) => return Err(p.err(format!("unexpected `{}`", b as char))),
        }
    }
    let deg = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}
