//! Deterministic instance generators for the test suites: random totally
//! real inputs built from symmetric integer matrices, random trees, and
//! coefficient sampling. Seeded, so every run sees the same corpus.

use crate::analyze::integer_root;
use crate::poly::IntPolynomial;
use crate::roots::SturmChain;
use crate::spectrum::squares_min_poly;
use crate::startree::bareiss_det;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Characteristic polynomial of an integer symmetric matrix, by exact
/// fraction-free expansion of det(xI - A).
pub fn charpoly_symmetric(a: &[Vec<i64>]) -> IntPolynomial {
    let n = a.len();
    let m: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        &IntPolynomial::monomial(1, 1) - &IntPolynomial::constant(a[i][j])
                    } else {
                        IntPolynomial::constant(-a[i][j])
                    }
                })
                .collect()
        })
        .collect();
    bareiss_det(m)
}

/// Counts real roots of a squarefree polynomial exactly.
pub fn count_real_roots(f: &IntPolynomial) -> usize {
    let chain = SturmChain::new(f);
    let mut bound = BigRational::from(f.cauchy_bound());
    while f.sign_at_rat(&bound) == 0 || f.sign_at_rat(&(-bound.clone())) == 0 {
        bound += BigRational::from(BigInt::from(1));
    }
    chain.count_roots(&(-bound.clone()), &bound)
}

/// True when every root of the squarefree `f` is real.
pub fn is_totally_real(f: &IntPolynomial) -> bool {
    count_real_roots(f) == f.deg()
}

/// Irreducible quadratics `x^2 - P x + Q` with two positive real roots:
/// P in 1..=40, Q sampled in 1..P^2/4, perfect-square discriminants
/// discarded. Deterministic for a fixed seed.
pub fn quadratic_instances(count: usize, seed: u64) -> Vec<IntPolynomial> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: i64 = rng.gen_range(1..=40);
        let q_max = (p * p - 1) / 4;
        if q_max < 1 {
            continue;
        }
        let q: i64 = rng.gen_range(1..=q_max);
        let disc = p * p - 4 * q;
        debug_assert!(disc > 0);
        let s = (disc as f64).sqrt() as i64;
        if (s - 1..=s + 1).any(|r| r * r == disc) {
            continue; // rational roots
        }
        out.push(IntPolynomial::from_i64_coeffs(&[q, -p, 1]));
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn random_symmetric_charpoly(rng: &mut StdRng) -> IntPolynomial {
    let n = rng.gen_range(3..=5);
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v: i64 = rng.gen_range(-2..=2);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    charpoly_symmetric(&a)
}

#[allow(clippy::needless_range_loop)]
fn random_tree_charpoly(rng: &mut StdRng) -> IntPolynomial {
    let n = rng.gen_range(4..=9);
    let mut a = vec![vec![0i64; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        a[u][v] = 1;
        a[v][u] = 1;
    }
    charpoly_symmetric(&a)
}

/// Cubic squares polynomials harvested from characteristic polynomials of
/// random symmetric matrices and random trees: squarefree part, squares
/// polynomial, then filtered to degree 3 with positive real roots and no
/// integer root.
pub fn cubic_squares_instances(count: usize, seed: u64) -> Vec<IntPolynomial> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<IntPolynomial> = Vec::with_capacity(count);
    let mut tick = 0u64;
    while out.len() < count {
        tick += 1;
        let chi = if tick.is_multiple_of(2) {
            random_symmetric_charpoly(&mut rng)
        } else {
            random_tree_charpoly(&mut rng)
        };
        let f = chi.squarefree_part();
        if !f.is_monic() {
            continue;
        }
        let squares = match squares_min_poly(&f) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if squares.degree() != Some(3) {
            continue;
        }
        if integer_root(&squares).is_some() {
            continue;
        }
        if crate::spectrum::SquaresSpectrum::new(&squares).is_err() {
            continue;
        }
        if out.contains(&squares) {
            continue;
        }
        out.push(squares);
    }
    out
}

/// Totally real monic cubics and quartics with constant term +-1, no root
/// at +-1, squarefree, and with distinct squared roots (algebraic unit
/// samples for the reciprocal-obstruction property).
pub fn unit_instances(count: usize, seed: u64) -> Vec<IntPolynomial> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<IntPolynomial> = Vec::with_capacity(count);
    while out.len() < count {
        let deg = if rng.gen_bool(0.5) { 3 } else { 4 };
        let c0: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut coeffs: Vec<i64> = vec![c0];
        for _ in 1..deg {
            coeffs.push(rng.gen_range(-6..=6));
        }
        coeffs.push(1);
        let f = IntPolynomial::from_i64_coeffs(&coeffs);
        if !f.is_squarefree() || !is_totally_real(&f) {
            continue;
        }
        if f.eval(&BigInt::from(1)).is_zero() || f.eval(&BigInt::from(-1)).is_zero() {
            continue;
        }
        let squares = match squares_min_poly(&f) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if squares.deg() != deg {
            continue; // squared roots collide; the norm argument needs n = deg
        }
        if out.contains(&f) {
            continue;
        }
        out.push(f);
    }
    out
}

/// Reciprocal polynomial `x^n f(1/x)`, normalized monic. Requires
/// `f(0) = +-1`.
pub fn reciprocal(f: &IntPolynomial) -> IntPolynomial {
    let mut coeffs: Vec<BigInt> = f.coeffs().to_vec();
    coeffs.reverse();
    let g = IntPolynomial::from_coeffs(coeffs);
    if g.is_monic() {
        g
    } else {
        -&g
    }
}
