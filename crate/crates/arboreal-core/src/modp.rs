//! Factor-degree analysis of integer polynomials modulo small primes.
//!
//! A reduction with an irreducible factor of degree greater than p rules out
//! a height-2 witness, so all that is ever needed here is the multiset of
//! irreducible-factor degrees, found by distinct-degree factorization.

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Dense polynomial over F_p, ascending coefficients, normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl ModPoly {
    fn reduce(f: &IntPolynomial, p: u64) -> ModPoly {
        let pb = num_bigint::BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        let mut g = ModPoly { p, coeffs };
        g.normalize();
        g
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn one(p: u64) -> ModPoly {
        ModPoly { p, coeffs: vec![1] }
    }

    fn x(p: u64) -> ModPoly {
        ModPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    fn make_monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = *self.coeffs.last().unwrap();
        if lead == 1 {
            return self.clone();
        }
        let inv = inv_mod(lead, self.p);
        ModPoly {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| mul_mod(c, inv, self.p))
                .collect(),
        }
    }

    fn mul(&self, rhs: &ModPoly) -> ModPoly {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly {
                p: self.p,
                coeffs: vec![],
            };
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        let mut out = ModPoly { p: self.p, coeffs };
        out.normalize();
        out
    }

    fn sub(&self, rhs: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![0u64; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *c = (a + self.p - b) % self.p;
        }
        let mut out = ModPoly { p: self.p, coeffs };
        out.normalize();
        out
    }

    /// Remainder modulo a (monic-normalized) divisor.
    fn rem(&self, d: &ModPoly) -> ModPoly {
        assert!(!d.is_zero());
        let d = d.make_monic();
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        while rem.len() > dd {
            let q = rem.pop().unwrap();
            if q != 0 {
                let top = rem.len();
                for (j, &dc) in d.coeffs.iter().enumerate().take(dd) {
                    let t = mul_mod(q, dc, self.p);
                    rem[top - dd + j] = (rem[top - dd + j] + self.p - t) % self.p;
                }
            }
            while rem.last() == Some(&0) && rem.len() > dd {
                rem.pop();
            }
        }
        let mut out = ModPoly {
            p: self.p,
            coeffs: rem,
        };
        out.normalize();
        out
    }

    fn div_exact(&self, d: &ModPoly) -> ModPoly {
        assert!(!d.is_zero());
        let lead_inv = inv_mod(*d.coeffs.last().unwrap(), self.p);
        let mut rem = self.coeffs.clone();
        let dd = d.deg();
        if rem.len() <= dd {
            assert!(self.is_zero(), "inexact division");
            return ModPoly {
                p: self.p,
                coeffs: vec![],
            };
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = mul_mod(rem[i], lead_inv, self.p);
            quot[i - dd] = q;
            if q != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    let t = mul_mod(q, dc, self.p);
                    rem[i - dd + j] = (rem[i - dd + j] + self.p - t) % self.p;
                }
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "inexact division");
        let mut out = ModPoly {
            p: self.p,
            coeffs: quot,
        };
        out.normalize();
        out
    }

    fn gcd(&self, rhs: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly {
                p: self.p,
                coeffs: vec![],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % self.p, self.p))
            .collect();
        let mut out = ModPoly { p: self.p, coeffs };
        out.normalize();
        out
    }

    /// self^(p) mod m via square-and-multiply on the exponent.
    fn frobenius_mod(&self, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        let mut base = self.rem(m);
        let mut e = self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// p-th root of a polynomial with vanishing derivative: coefficients of
    /// x^(ip) become coefficients of x^i (Frobenius fixes F_p pointwise).
    fn pth_root(&self) -> ModPoly {
        let p = self.p as usize;
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        let mut out = ModPoly { p: self.p, coeffs };
        out.normalize();
        out
    }
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct-degree factorization on a squarefree monic input: returns
/// (degree, count) implicitly as a flat sorted list of degrees.
fn ddf_squarefree(mut w: ModPoly) -> Vec<usize> {
    let p = w.p;
    let mut degs = Vec::new();
    let mut h = ModPoly::x(p);
    let mut d = 0usize;
    while !w.is_zero() && w.deg() >= 1 {
        d += 1;
        if 2 * d > w.deg() {
            // remainder is a single irreducible factor
            degs.push(w.deg());
            break;
        }
        h = h.frobenius_mod(&w);
        let g = h.sub(&ModPoly::x(p)).gcd(&w);
        if !g.is_zero() && g.deg() > 0 {
            for _ in 0..g.deg() / d {
                degs.push(d);
            }
            w = w.div_exact(&g);
            h = h.rem(&w);
        }
    }
    degs
}

fn factor_degrees_modpoly(f: ModPoly) -> Vec<usize> {
    if f.is_zero() || f.deg() == 0 {
        return Vec::new();
    }
    let der = f.derivative();
    if der.is_zero() {
        // f = g(x^p) = (p-th root)^p
        let root = f.pth_root();
        let inner = factor_degrees_modpoly(root);
        let mut out = Vec::new();
        for _ in 0..f.p {
            out.extend_from_slice(&inner);
        }
        return out;
    }
    let g = f.gcd(&der);
    let w = f.div_exact(&g).make_monic();
    let mut degs = ddf_squarefree(w.clone());
    // Divide out one copy of each distinct factor and recurse on the rest.
    let rest = f.div_exact(&w);
    degs.extend(factor_degrees_modpoly(rest));
    degs
}

/// Multiset of irreducible-factor degrees of `f` mod `p`, sorted ascending.
/// Repeated factors contribute their degree with multiplicity.
pub fn modp_factor_degrees(f: &IntPolynomial, p: u64) -> Result<Vec<usize>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = ModPoly::reduce(f, p);
    let mut degs = factor_degrees_modpoly(g);
    degs.sort_unstable();
    Ok(degs)
}

/// True when `f` stays irreducible modulo `p` (degree preserved and a single
/// irreducible factor).
pub fn irreducible_mod_p(f: &IntPolynomial, p: u64) -> Result<bool> {
    let n = f.deg();
    let reduced = ModPoly::reduce(f, p);
    if reduced.is_zero() || reduced.deg() != n {
        return Ok(false);
    }
    Ok(modp_factor_degrees(f, p)? == vec![n])
}

/// Scans primes p < deg f in ascending order; reports the first prime whose
/// reduction has an irreducible factor of degree > p (the largest such
/// degree), which refutes any height-2 witness.
pub fn modp_obstruction(f: &IntPolynomial) -> Option<(u64, usize)> {
    let n = f.degree()?;
    let mut p = 2u64;
    while (p as usize) < n {
        if is_prime(p) {
            let degs = modp_factor_degrees(f, p).expect("p is prime");
            if let Some(&d) = degs.iter().rev().find(|&&d| d > p as usize) {
                return Some((p, d));
            }
        }
        p += 1;
    }
    None
}
