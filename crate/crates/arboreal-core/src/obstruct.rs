//! Refutation evidence: interlacing failures, mod-p factor-degree
//! violations, and the fixed 3-adic computation for the 48th real
//! cyclotomic unit.

use crate::error::{Error, Result};
use crate::modp::{modp_factor_degrees, modp_obstruction};
use crate::poly::{parse_polynomial, IntPolynomial};
use crate::spectrum::SquaresSpectrum;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// Why a given lambda cannot have arboreal height <= 2. Every variant is
/// re-checkable from the data it carries.
#[derive(Clone, Debug)]
pub enum Obstruction {
    /// Gap `gap` (1-based, between consecutive squared roots) contains no
    /// integer.
    NoInterlacing { gap: usize, detail: String },
    /// `F` mod p has an irreducible factor of degree > p.
    ModP {
        p: u64,
        degree: usize,
        detail: String,
    },
    /// The dedicated 3-adic argument for the 48th real cyclotomic unit.
    ThreeAdicZeta48(Zeta48Report),
}

impl Obstruction {
    pub fn to_json(&self) -> Value {
        match self {
            Obstruction::NoInterlacing { gap, detail } => json!({
                "kind": "no_interlacing",
                "gap": gap,
                "detail": detail,
            }),
            Obstruction::ModP { p, degree, detail } => json!({
                "kind": "mod_p",
                "p": p,
                "degree": degree,
                "detail": detail,
            }),
            Obstruction::ThreeAdicZeta48(report) => {
                let mut v = report.to_json();
                v["kind"] = json!("zeta48_three_adic");
                v
            }
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NoInterlacing { gap, detail } => {
                write!(f, "no interlacing set (gap {}): {}", gap, detail)
            }
            Obstruction::ModP { p, degree, detail } => {
                write!(f, "mod-{} obstruction (degree {}): {}", p, degree, detail)
            }
            Obstruction::ThreeAdicZeta48(r) => write!(
                f,
                "3-adic obstruction for the zeta_48 quartic: y0 = {}, det(M) = {}",
                r.y0, r.det_m
            ),
        }
    }
}

/// Scans the gaps between consecutive squared roots and reports the first one
/// with no interior integer.
pub fn no_interlacing_obstruction(spec: &SquaresSpectrum) -> Option<Obstruction> {
    for gap in 1..spec.n() {
        if spec.least_integer_in_gap(gap).is_none() {
            return Some(Obstruction::NoInterlacing {
                gap,
                detail: format!(
                    "no integer lies strictly between squared roots {} and {}",
                    gap,
                    gap + 1
                ),
            });
        }
    }
    None
}

/// Wraps the ascending-prime factor-degree scan as an obstruction.
pub fn modp_obstruction_for(f: &IntPolynomial) -> Option<Obstruction> {
    modp_obstruction(f).map(|(p, degree)| {
        let degs = modp_factor_degrees(f, p).expect("prime");
        Obstruction::ModP {
            p,
            degree,
            detail: format!(
                "factor degrees of F mod {} are {:?}; {} exceeds p = {}",
                p, degs, degree, p
            ),
        }
    })
}

/// The fixed quartic of the 48th real cyclotomic unit.
pub fn zeta48_poly() -> IntPolynomial {
    parse_polynomial("x^4 - 8x^3 + 20x^2 - 16x + 1").unwrap()
}

/// Output of the 3-adic computation: the unique solution of
/// `y0/t + y1/(t-1) + y2/(t-2) + y3/(t-3) = 1` has y0 = 1/6, and every
/// 1/(t-k) for k >= 4 decomposes over the same basis with a 3-integral
/// leading coordinate, so no certificate with nonnegative integers can reach
/// the 3-adically non-integral 1/6.
#[derive(Clone, Debug)]
pub struct Zeta48Report {
    pub y0: BigRational,
    pub det_m: BigInt,
    /// b_k^(0) for k = 4..=k_max.
    pub bk0_values: BTreeMap<u64, BigRational>,
    pub all_three_integral: bool,
}

impl Zeta48Report {
    pub fn to_json(&self) -> Value {
        let bk0: BTreeMap<String, String> = self
            .bk0_values
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        json!({
            "y0": self.y0.to_string(),
            "detM": self.det_m.to_string().parse::<i64>().map(Value::from)
                .unwrap_or_else(|_| Value::from(self.det_m.to_string())),
            "bk0_values": bk0,
            "all_three_integral": self.all_three_integral,
        })
    }
}

/// Power-basis coordinates of 1/(t - k) modulo F, where t is a root of F:
/// from F(x) - F(k) = (x - k) Q_k(x) one gets 1/(t-k) = Q_k(t) / (-F(k)).
fn inverse_coords(f: &IntPolynomial, k: &BigInt) -> Vec<BigRational> {
    let fk = f.eval(k);
    assert!(!fk.is_zero(), "F(k) = 0");
    let shifted = f - &IntPolynomial::constant(fk.clone());
    let (q, r) = shifted
        .div_rem_exact(&IntPolynomial::x_minus(k.clone()))
        .expect("x - k divides F(x) - F(k)");
    debug_assert!(r.is_zero());
    let denom = -fk;
    (0..f.deg())
        .map(|i| BigRational::new(q.coeff(i), denom.clone()))
        .collect()
}

#[allow(clippy::needless_range_loop)]
fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    // Gaussian elimination with exact rationals; fine at 4x4.
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Runs the 3-adic computation for the zeta_48 quartic on k = 4..=k_max.
pub fn zeta48_three_adic_report(k_max: u64) -> Result<Zeta48Report> {
    if k_max < 4 {
        return Err(Error::KMaxTooSmall(k_max));
    }
    let f = zeta48_poly();
    let n = f.deg();
    // Columns of M: coordinates of 1/t, 1/(t-1), 1/(t-2), 1/(t-3) in the
    // power basis {1, t, t^2, t^3}.
    let cols: Vec<Vec<BigRational>> = (0..4)
        .map(|j| inverse_coords(&f, &BigInt::from(j)))
        .collect();
    let m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| (0..4).map(|c| cols[c][r].clone()).collect())
        .collect();
    let det_m_rat = det_rational(&m);
    assert!(det_m_rat.is_integer(), "det(M) must be an integer");
    let det_m = det_m_rat.to_integer();

    let cramer_first_coord = |target: &[BigRational]| -> BigRational {
        let mut m_prime = m.clone();
        for r in 0..n {
            m_prime[r][0] = target[r].clone();
        }
        det_rational(&m_prime) / &det_m_rat
    };

    // Coordinates of 1 are (1, 0, 0, 0).
    let mut e0 = vec![BigRational::zero(); n];
    e0[0] = BigRational::one();
    let y0 = cramer_first_coord(&e0);

    let three = BigInt::from(3);
    let mut bk0_values = BTreeMap::new();
    let mut all_three_integral = true;
    for k in 4..=k_max {
        let coords = inverse_coords(&f, &BigInt::from(k));
        let b0 = cramer_first_coord(&coords);
        if b0.denom().gcd(&three) != BigInt::one() {
            all_three_integral = false;
        }
        bk0_values.insert(k, b0);
    }
    Ok(Zeta48Report {
        y0,
        det_m,
        bk0_values,
        all_three_integral,
    })
}
