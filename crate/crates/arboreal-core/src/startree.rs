//! Height-2 witness trees: a root joined to the centers of `a_k` copies of
//! the star S_k, for each branch size k.
//!
//! The characteristic polynomial factors through the branch multiset, so
//! eigenvalue claims are verified without ever materializing the tree; the
//! brute-force determinant over the explicit adjacency matrix exists as an
//! independent oracle for small trees.

use crate::certify::{verify_certificate, Certificate};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::spectrum::SquaresSpectrum;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Branch map `k -> a_k` with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootedStarTree {
    branches: BTreeMap<u64, BigInt>,
}

impl RootedStarTree {
    /// Builds from a coefficient map; zero entries are dropped, an empty map
    /// is rejected.
    pub fn new(branches: BTreeMap<u64, BigInt>) -> Result<RootedStarTree> {
        let branches: BTreeMap<u64, BigInt> =
            branches.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        if branches.is_empty() {
            return Err(Error::EmptyTree);
        }
        assert!(branches.values().all(|a| a.is_positive()));
        Ok(RootedStarTree { branches })
    }

    pub fn from_certificate(cert: &Certificate) -> Result<RootedStarTree> {
        RootedStarTree::new(cert.a.clone())
    }

    pub fn branches(&self) -> &BTreeMap<u64, BigInt> {
        &self.branches
    }

    /// `1 + sum a_k (k + 1)`.
    pub fn vertex_count(&self) -> BigInt {
        BigInt::one()
            + self
                .branches
                .iter()
                .map(|(k, a)| a * BigInt::from(k + 1))
                .sum::<BigInt>()
    }

    /// Degree of the root: `sum a_k`.
    pub fn root_degree(&self) -> BigInt {
        self.branches.values().sum()
    }

    /// Height is 2 exactly when some branch is a genuine star (k >= 1);
    /// an all-S_0 tree is itself a star of height 1.
    pub fn height(&self) -> u32 {
        if self.branches.keys().any(|&k| k >= 1) {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for RootedStarTree {
    /// `<0^2 . 4^4 . 8^2>` style notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, (k, a)) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, " . ")?;
            }
            write!(f, "{}^{}", k, a)?;
        }
        write!(f, ">")
    }
}

/// Closed-form characteristic polynomial.
///
/// With y = x^2 the bracket factors as
/// `prod (y-k)^(a_k - 1) * [prod (y-k) - sum a_k prod_{j != k} (y-j)]`
/// and the whole polynomial is `x^E * bracket(x^2)` with
/// `E = 1 + sum (k-1) a_k`. For k = 0 branches E can go negative; the
/// bracket always carries enough powers of x^2 to compensate, so the power
/// is tracked symbolically and cancelled at the end.
pub fn char_poly_closed_form(t: &RootedStarTree) -> IntPolynomial {
    let mut bracket_common = IntPolynomial::one();
    for (&k, a) in t.branches() {
        let lin = IntPolynomial::x_minus(k);
        let mut e = a - BigInt::one();
        while e.is_positive() {
            bracket_common = &bracket_common * &lin;
            e -= 1;
        }
    }
    let keys: Vec<u64> = t.branches().keys().copied().collect();
    let mut prod_all = IntPolynomial::one();
    for &k in &keys {
        prod_all = &prod_all * &IntPolynomial::x_minus(k);
    }
    let mut sum_part = IntPolynomial::zero();
    for &k in &keys {
        let mut term = IntPolynomial::constant(t.branches()[&k].clone());
        for &j in &keys {
            if j != k {
                term = &term * &IntPolynomial::x_minus(j);
            }
        }
        sum_part = &sum_part + &term;
    }
    let bracket = &bracket_common * &(&prod_all - &sum_part);

    // substitute y = x^2 and apply the symbolic power of x
    let in_x = bracket.compose_square();
    let exponent: BigInt = BigInt::one()
        + t.branches()
            .iter()
            .map(|(k, a)| a * (BigInt::from(*k) - BigInt::one()))
            .sum::<BigInt>();
    if exponent.is_negative() {
        let shift = (-&exponent).to_usize().expect("shift fits usize");
        let coeffs = in_x.coeffs();
        assert!(coeffs.iter().take(shift).all(|c| c.is_zero()));
        IntPolynomial::from_coeffs(coeffs[shift..].to_vec())
    } else {
        let shift = exponent.to_usize().expect("shift fits usize");
        &IntPolynomial::monomial(1, shift) * &in_x
    }
}

/// Vertex numbering shared by the brute-force oracle and the exporters:
/// root is 0; branches ordered by (k, copy index); each copy lists its
/// center first, then its leaves.
fn edges(t: &RootedStarTree) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    let mut next: u64 = 1;
    for (&k, a) in t.branches() {
        let copies = a.to_u64().expect("tree small enough to materialize");
        for _ in 0..copies {
            let center = next;
            next += 1;
            edges.push((0, center));
            for _ in 0..k {
                let leaf = next;
                next += 1;
                edges.push((center, leaf));
            }
        }
    }
    edges
}

/// Characteristic polynomial by fraction-free (Bareiss) expansion of
/// `det(xI - A)` over the explicit adjacency matrix; independent of the
/// closed form. Default cap 64 vertices.
pub fn char_poly_bruteforce(t: &RootedStarTree, max_vertices: usize) -> Result<IntPolynomial> {
    let vc = t.vertex_count();
    let n = vc
        .to_usize()
        .filter(|&n| n <= max_vertices)
        .ok_or_else(|| Error::SizeExceeded {
            what: "tree",
            size: vc.to_string(),
            cap: max_vertices.to_string(),
        })?;
    let mut m: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        IntPolynomial::monomial(1, 1)
                    } else {
                        IntPolynomial::zero()
                    }
                })
                .collect()
        })
        .collect();
    for (u, v) in edges(t) {
        let (u, v) = (u as usize, v as usize);
        m[u][v] = IntPolynomial::constant(-1);
        m[v][u] = IntPolynomial::constant(-1);
    }
    Ok(bareiss_det(m))
}

/// Fraction-free determinant of a polynomial matrix (Bareiss); every
/// division along the way is exact.
#[allow(clippy::needless_range_loop)]
pub(crate) fn bareiss_det(mut m: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut sign = 1i64;
    let mut prev = IntPolynomial::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.div_rem_exact(&prev).expect("Bareiss division is exact");
                assert!(r.is_zero());
                m[i][j] = q;
            }
        }
        for i in k + 1..n {
            m[i][k] = IntPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

/// True when every root of `F(x^2)` is an eigenvalue of the tree, i.e. when
/// the branch map is a certificate for F.
pub fn verify_tree_eigenvalue(t: &RootedStarTree, f: &IntPolynomial) -> Result<bool> {
    verify_certificate(f, t.branches())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    EdgeList,
    Dot,
}

pub const EXPORT_CAP: u64 = 10_000_000;

/// Deterministic text export; trees above the cap are refused (a summary is
/// always available through `Display`/`vertex_count`).
pub fn export_tree(t: &RootedStarTree, format: ExportFormat) -> Result<String> {
    let vc = t.vertex_count();
    if vc > BigInt::from(EXPORT_CAP) {
        return Err(Error::SizeExceeded {
            what: "tree export",
            size: vc.to_string(),
            cap: EXPORT_CAP.to_string(),
        });
    }
    let mut edges = edges(t);
    edges.sort_unstable();
    let mut out = String::new();
    match format {
        ExportFormat::EdgeList => {
            for (u, v) in edges {
                out.push_str(&format!("{} {}\n", u, v));
            }
        }
        ExportFormat::Dot => {
            out.push_str("graph tree {\n");
            for (u, v) in edges {
                out.push_str(&format!("  {} -- {};\n", u, v));
            }
            out.push_str("}\n");
        }
    }
    Ok(out)
}

/// Bounds for the small-witness search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBounds {
    pub max_vertices: u64,
    pub max_k: u64,
    /// How many keys beyond `n` a support may use.
    pub max_support_excess: usize,
}

/// Searches supports `K` of size n..n+excess inside `{0..max_k}` for
/// certificates within the vertex bound, returning the verified certificate
/// with the fewest vertices (ties broken lexicographically on the
/// coefficient map). Supports are enumerated by max(K), then
/// lexicographically; the reduction is order-independent.
pub fn search_min_tree(
    f: &IntPolynomial,
    bounds: SearchBounds,
) -> Result<Option<(Certificate, RootedStarTree)>> {
    let spec = SquaresSpectrum::new(f)?;
    let n = spec.n();
    let _ = spec;
    let usable: Vec<u64> = (0..=bounds.max_k)
        .filter(|&k| !f.eval(&BigInt::from(k)).is_zero())
        .collect();
    if usable.len() < n {
        return Ok(None);
    }

    const SUPPORT_CAP: u64 = 10_000_000;
    let mut total = BigInt::zero();
    for s in n..=n + bounds.max_support_excess {
        total += binomial(usable.len() as u64, s as u64);
    }
    if total > BigInt::from(SUPPORT_CAP) {
        return Err(Error::SizeExceeded {
            what: "support enumeration",
            size: total.to_string(),
            cap: SUPPORT_CAP.to_string(),
        });
    }

    let mut supports: Vec<Vec<u64>> = Vec::new();
    for s in n..=n + bounds.max_support_excess {
        collect_supports(&usable, s, &mut supports);
    }
    // by max(K), then lexicographic
    supports.sort_by(|a, b| a.last().cmp(&b.last()).then_with(|| a.cmp(b)));

    let best = supports
        .par_iter()
        .map(|support| best_on_support(f, n, support, &bounds))
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) => x,
                (x, None) => x,
                (Some(x), Some(y)) => Some(min_candidate(x, y)),
            },
        );

    match best {
        None => Ok(None),
        Some((_, _, a)) => {
            let map: BTreeMap<u64, BigInt> = a.into_iter().collect();
            let ok = verify_certificate(f, &map)?;
            assert!(ok, "search result must verify");
            let cert = Certificate {
                f: f.clone(),
                a: map,
                verified: true,
            };
            let tree = RootedStarTree::from_certificate(&cert)?;
            Ok(Some((cert, tree)))
        }
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

type Candidate = (BigInt, Vec<(u64, BigInt)>, Vec<(u64, BigInt)>);

fn min_candidate(a: Candidate, b: Candidate) -> Candidate {
    if (&a.0, &a.1) <= (&b.0, &b.1) {
        a
    } else {
        b
    }
}

fn collect_supports(usable: &[u64], size: usize, out: &mut Vec<Vec<u64>>) {
    if usable.len() < size {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| usable[i]).collect());
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + usable.len() - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Best certificate on one support: exact solve of the interpolation system
/// restricted to the support, then enumeration of the nonnegative integer
/// fiber within the vertex bound.
fn best_on_support(
    f: &IntPolynomial,
    n: usize,
    support: &[u64],
    bounds: &SearchBounds,
) -> Option<Candidate> {
    let s = support.len();
    if s == n {
        // Unique rational solution via the closed interpolation formula.
        let mut coeffs: Vec<(u64, BigInt)> = Vec::with_capacity(n);
        let mut weight = BigInt::zero();
        for (i, &ki) in support.iter().enumerate() {
            let kib = BigInt::from(ki);
            let mut denom = BigInt::one();
            for (j, &kj) in support.iter().enumerate() {
                if j != i {
                    denom *= &kib - BigInt::from(kj);
                }
            }
            let v = BigRational::new(-f.eval(&kib), denom);
            if v.is_negative() || !v.is_integer() {
                return None;
            }
            let v = v.to_integer();
            weight += &v * BigInt::from(ki + 1);
            if !v.is_zero() {
                coeffs.push((ki, v));
            }
        }
        if coeffs.is_empty() || BigInt::one() + &weight > BigInt::from(bounds.max_vertices) {
            return None;
        }
        let vc = BigInt::one() + weight;
        return Some((vc, coeffs.clone(), coeffs));
    }

    // Overdetermined support: integer solutions of the linear system.
    let (mat, rhs) = interpolation_system(f, n, support);
    let (particular, kernel) = solve_integer_system(mat, rhs, s)?;
    debug_assert_eq!(kernel.len(), s - n);

    let weights: Vec<BigInt> = support.iter().map(|&k| BigInt::from(k + 1)).collect();
    let budget = BigInt::from(bounds.max_vertices) - BigInt::one();
    // Constraints: x >= 0 coordinatewise and sum x_i (k_i + 1) <= budget.
    let mut constraints: Vec<Vec<BigInt>> = Vec::new();
    // each row: c_0 + sum_j c_j t_j >= 0
    for i in 0..s {
        let mut row = Vec::with_capacity(kernel.len() + 1);
        row.push(particular[i].clone());
        for z in &kernel {
            row.push(z[i].clone());
        }
        constraints.push(row);
    }
    {
        let mut row = Vec::with_capacity(kernel.len() + 1);
        let base: BigInt = particular.iter().zip(&weights).map(|(x, w)| x * w).sum();
        row.push(&budget - base);
        for z in &kernel {
            let zw: BigInt = z.iter().zip(&weights).map(|(x, w)| x * w).sum();
            row.push(-zw);
        }
        constraints.push(row);
    }

    let mut best: Option<Candidate> = None;
    enumerate_lattice(
        &constraints,
        kernel.len(),
        &mut vec![],
        &mut |t: &mut Vec<BigInt>| {
            let mut coeffs: Vec<(u64, BigInt)> = Vec::new();
            let mut weight = BigInt::zero();
            for i in 0..s {
                let mut x = particular[i].clone();
                for (j, z) in kernel.iter().enumerate() {
                    x += &t[j] * &z[i];
                }
                debug_assert!(!x.is_negative());
                if !x.is_zero() {
                    weight += &x * &weights[i];
                    coeffs.push((support[i], x));
                }
            }
            if coeffs.is_empty() {
                return;
            }
            let vc = BigInt::one() + weight;
            if vc > BigInt::from(bounds.max_vertices) {
                return;
            }
            let cand = (vc, coeffs.clone(), coeffs);
            best = Some(match best.take() {
                None => cand,
                Some(b) => min_candidate(b, cand),
            });
        },
    );
    best
}

/// Integer matrix and right-hand side for `sum_k x_k / (t - k) = 1` over the
/// power basis mod F, scaled by the lcm of the F(k).
#[allow(clippy::needless_range_loop)]
fn interpolation_system(
    f: &IntPolynomial,
    n: usize,
    support: &[u64],
) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut lcm = BigInt::one();
    let fvals: Vec<BigInt> = support
        .iter()
        .map(|&k| {
            let v = f.eval(&BigInt::from(k));
            lcm = lcm.lcm(&v);
            v
        })
        .collect();
    let lcm = lcm.abs();
    let mut mat = vec![vec![BigInt::zero(); support.len()]; n];
    for (col, (&k, fk)) in support.iter().zip(&fvals).enumerate() {
        // 1/(t-k) = Q_k(t)/(-F(k)) with Q_k = (F - F(k))/(x - k)
        let shifted = f - &IntPolynomial::constant(fk.clone());
        let (q, _) = shifted
            .div_rem_exact(&IntPolynomial::x_minus(k))
            .expect("exact");
        let scale = &lcm / -fk;
        for row in 0..n {
            mat[row][col] = q.coeff(row) * &scale;
        }
    }
    let mut rhs = vec![BigInt::zero(); n];
    rhs[0] = lcm;
    (mat, rhs)
}

/// Solves `A x = b` over the integers by column echelon reduction with a
/// unimodular transform. Returns a particular solution and a basis of the
/// integer kernel, or None when no integer solution exists.
#[allow(clippy::needless_range_loop)]
fn solve_integer_system(
    mut a: Vec<Vec<BigInt>>,
    b: Vec<BigInt>,
    s: usize,
) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let n = a.len();
    // u: s x s unimodular accumulator, column-operated alongside a.
    let mut u: Vec<Vec<BigInt>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let col_op_swap = |m: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize| {
        for row in m.iter_mut() {
            row.swap(c1, c2);
        }
    };
    let col_op_addmul = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut col = 0usize;
    for row in 0..n {
        if col >= s {
            break;
        }
        // Euclidean reduction across columns col..s in this row.
        loop {
            let mut min_col = None;
            for c in col..s {
                if !a[row][c].is_zero() {
                    min_col = match min_col {
                        None => Some(c),
                        Some(mc) if a[row][c].abs() < a[row][mc].abs() => Some(c),
                        keep => keep,
                    };
                }
            }
            let mc = match min_col {
                None => break,
                Some(mc) => mc,
            };
            if mc != col {
                col_op_swap(&mut a, col, mc);
                col_op_swap(&mut u, col, mc);
            }
            let mut done = true;
            let pivot = a[row][col].clone();
            for c in col + 1..s {
                if a[row][c].is_zero() {
                    continue;
                }
                let q = div_round(&a[row][c], &pivot);
                if !q.is_zero() {
                    col_op_addmul(&mut a, c, col, &q);
                    col_op_addmul(&mut u, c, col, &q);
                }
                if !a[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[row][col].is_zero() {
            pivots.push((row, col));
            col += 1;
        }
    }
    // Triangular solve over the pivot columns; divisions must be exact.
    let mut y = vec![BigInt::zero(); s];
    let mut residual = b;
    for &(row, c) in &pivots {
        let (q, r) = residual[row].div_rem(&a[row][c]);
        if !r.is_zero() {
            return None;
        }
        y[c] = q;
        for rr in 0..n {
            let t = &a[rr][c] * &y[c];
            residual[rr] -= t;
        }
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    // x = U y; kernel basis = columns of U past the last pivot column.
    let x: Vec<BigInt> = (0..s)
        .map(|i| (0..s).map(|j| &u[i][j] * &y[j]).sum())
        .collect();
    let rank = pivots.len();
    let kernel: Vec<Vec<BigInt>> = (rank..s)
        .map(|c| (0..s).map(|i| u[i][c].clone()).collect())
        .collect();
    Some((x, kernel))
}

/// Round-to-nearest integer division (keeps Euclidean reduction shrinking).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let twice = BigInt::from(2) * r.abs();
    if twice > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

/// Recursive enumeration of integer points of a rational polyhedron given by
/// rows `c_0 + sum c_j t_j >= 0`, via Fourier-Motzkin elimination of the last
/// variable; bounds for the eliminated variable are recovered per prefix.
fn enumerate_lattice(
    constraints: &[Vec<BigInt>],
    vars: usize,
    prefix: &mut Vec<BigInt>,
    visit: &mut dyn FnMut(&mut Vec<BigInt>),
) {
    if vars == 0 {
        if constraints.iter().all(|c| !c[0].is_negative()) {
            visit(prefix);
        }
        return;
    }
    let var = vars - 1;
    let mut projected: Vec<Vec<BigInt>> = Vec::new();
    let mut pos_rows: Vec<&Vec<BigInt>> = Vec::new();
    let mut neg_rows: Vec<&Vec<BigInt>> = Vec::new();
    for c in constraints {
        let coef = &c[1 + var];
        if coef.is_zero() {
            projected.push(c[..1 + var].to_vec());
        } else if coef.is_positive() {
            pos_rows.push(c);
        } else {
            neg_rows.push(c);
        }
    }
    // Pair each lower-bounding row with each upper-bounding row so the
    // projection stays sound for the remaining variables.
    for pr in &pos_rows {
        for nr in &neg_rows {
            let pc = &pr[1 + var];
            let nc = nr[1 + var].abs();
            let mut row = Vec::with_capacity(1 + var);
            for i in 0..1 + var {
                row.push(&pr[i] * &nc + &nr[i] * pc);
            }
            projected.push(row);
        }
    }
    enumerate_lattice(&projected, var, prefix, &mut |pref: &mut Vec<BigInt>| {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in constraints {
            let coef = &c[1 + var];
            if coef.is_zero() {
                continue;
            }
            let mut cst = BigRational::from(c[0].clone());
            for (j, p) in pref.iter().enumerate().take(var) {
                cst += BigRational::from(&c[1 + j] * p);
            }
            let bound = -cst / BigRational::from(coef.clone());
            if coef.is_positive() {
                lo = Some(match lo {
                    None => bound,
                    Some(l) => l.max(bound),
                });
            } else {
                hi = Some(match hi {
                    None => bound,
                    Some(h) => h.min(bound),
                });
            }
        }
        let (lo, hi) = match (lo, hi) {
            (Some(l), Some(h)) => (l.ceil().to_integer(), h.floor().to_integer()),
            _ => return, // unbounded: excluded by the vertex cap
        };
        let mut t = lo;
        while t <= hi {
            pref.push(t.clone());
            let full_ok = constraints.iter().all(|c| {
                let mut v = c[0].clone();
                for (j, p) in pref.iter().enumerate() {
                    v += &c[1 + j] * p;
                }
                !v.is_negative()
            });
            if full_ok {
                visit(pref);
            }
            pref.pop();
            t += 1;
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn tree(pairs: &[(u64, i64)]) -> RootedStarTree {
        RootedStarTree::new(pairs.iter().map(|&(k, a)| (k, BigInt::from(a))).collect()).unwrap()
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(
            tree(&[(0, 2), (4, 4), (8, 2)]).vertex_count(),
            BigInt::from(41)
        );
        assert_eq!(
            tree(&[(0, 14850), (3, 4945), (7, 513), (10, 2274), (26, 166)]).vertex_count(),
            BigInt::from(68231)
        );
        assert_eq!(tree(&[(0, 5)]).vertex_count(), BigInt::from(6));
        assert_eq!(tree(&[(0, 5)]).height(), 1);
        assert_eq!(tree(&[(1, 1)]).height(), 2);
    }

    #[test]
    fn empty_tree_rejected() {
        assert!(matches!(
            RootedStarTree::new(BTreeMap::new()),
            Err(Error::EmptyTree)
        ));
    }

    #[test]
    fn star_char_polys() {
        // <0^k> is the star S_k: x^(k-1) (x^2 - k).
        for k in 1..=10i64 {
            let t = tree(&[(0, k)]);
            let expected =
                &IntPolynomial::monomial(1, (k - 1) as usize) * &p(&format!("x^2 - {}", k));
            assert_eq!(char_poly_closed_form(&t), expected, "k = {}", k);
        }
    }

    #[test]
    fn path_four_vertices() {
        // <0^1 . 1^1> is the path on 4 vertices.
        let t = tree(&[(0, 1), (1, 1)]);
        assert_eq!(char_poly_closed_form(&t), p("x^4 - 3x^2 + 1"));
        assert_eq!(char_poly_bruteforce(&t, 64).unwrap(), p("x^4 - 3x^2 + 1"));
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(
            char_poly_bruteforce(&tree(&[(0, 1)]), 64).unwrap(),
            p("x^2 - 1")
        );
        let s3 = char_poly_bruteforce(&tree(&[(0, 3)]), 64).unwrap();
        assert_eq!(s3, &p("x^2") * &p("x^2 - 3"));
        let t = tree(&[(1, 1), (2, 1)]);
        assert_eq!(
            char_poly_bruteforce(&t, 64).unwrap(),
            char_poly_closed_form(&t)
        );
    }

    #[test]
    fn brute_force_cap() {
        assert!(matches!(
            char_poly_bruteforce(&tree(&[(0, 100)]), 64),
            Err(Error::SizeExceeded { .. })
        ));
    }

    #[test]
    fn witness_divisibility() {
        // <0^2 . 4^4 . 8^2> carries the eigenvalues of x^3 - 20x^2 + 96x - 64
        // under x -> x^2.
        let t = tree(&[(0, 2), (4, 4), (8, 2)]);
        let phi = char_poly_closed_form(&t);
        assert_eq!(phi.deg(), 41);
        let f = p("x^3 - 20x^2 + 96x - 64");
        let (_, r) = phi.div_rem_exact(&f.compose_square()).unwrap();
        assert!(r.is_zero());
        assert!(verify_tree_eigenvalue(&t, &f).unwrap());
    }

    #[test]
    fn tree_check_agrees_with_certificate_check() {
        let cases: [(&str, &[(u64, i64)]); 3] = [
            ("x^3 - 20x^2 + 96x - 64", &[(0, 2), (4, 4), (8, 2)]),
            ("x^2 - 3x + 1", &[(0, 1), (1, 1)]),
            ("x - 2", &[(0, 1)]),
        ];
        for (f_text, pairs) in cases {
            let f = p(f_text);
            let t = tree(pairs);
            assert_eq!(
                verify_tree_eigenvalue(&t, &f).unwrap(),
                verify_certificate(&f, t.branches()).unwrap()
            );
        }
    }

    #[test]
    fn eigenvalue_checks() {
        let octic = p("x^4 - 44x^3 + 567x^2 - 2660x + 3564");
        assert!(
            verify_tree_eigenvalue(&tree(&[(1, 8), (3, 4), (8, 1), (10, 1), (18, 3)]), &octic)
                .unwrap()
        );
        assert!(!verify_tree_eigenvalue(&tree(&[(0, 1)]), &p("x - 2")).unwrap());
    }

    #[test]
    fn exports() {
        assert_eq!(
            export_tree(&tree(&[(0, 1)]), ExportFormat::EdgeList).unwrap(),
            "0 1\n"
        );
        assert_eq!(
            export_tree(&tree(&[(0, 2)]), ExportFormat::EdgeList).unwrap(),
            "0 1\n0 2\n"
        );
        // S_1 hangs off the root by its center: a path 0-1-2.
        assert_eq!(
            export_tree(&tree(&[(1, 1)]), ExportFormat::EdgeList).unwrap(),
            "0 1\n1 2\n"
        );
        let dot = export_tree(&tree(&[(1, 1)]), ExportFormat::Dot).unwrap();
        assert!(dot.starts_with("graph tree {"));
        assert!(dot.contains("0 -- 1;"));
    }

    #[test]
    fn search_golden() {
        let f = p("x^2 - 3x + 1");
        let (cert, t) = search_min_tree(
            &f,
            SearchBounds {
                max_vertices: 10,
                max_k: 5,
                max_support_excess: 0,
            },
        )
        .unwrap()
        .unwrap();
        let expected: BTreeMap<u64, BigInt> = [(0u64, BigInt::one()), (1, BigInt::one())]
            .into_iter()
            .collect();
        assert_eq!(cert.a, expected);
        assert_eq!(t.vertex_count(), BigInt::from(4));
    }

    #[test]
    fn search_refuses_oversized_support_spaces() {
        let f = p("x^4 - 44x^3 + 567x^2 - 2660x + 3564");
        assert!(matches!(
            search_min_tree(
                &f,
                SearchBounds {
                    max_vertices: 100,
                    max_k: 10_000,
                    max_support_excess: 2,
                },
            ),
            Err(Error::SizeExceeded { .. })
        ));
    }

    #[test]
    fn search_obstructed_cubic_finds_nothing() {
        let f = p("x^3 - 5x^2 + 6x - 1");
        assert!(search_min_tree(
            &f,
            SearchBounds {
                max_vertices: 60,
                max_k: 12,
                max_support_excess: 1,
            },
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn closed_form_matches_brute_force_exhaustively() {
        // all branch maps with keys <= 4, multiplicities <= 3, <= 16 vertices
        let mut checked = 0;
        for a0 in 0..=3i64 {
            for a1 in 0..=3i64 {
                for a2 in 0..=3i64 {
                    for a3 in 0..=3i64 {
                        for a4 in 0..=3i64 {
                            let pairs: Vec<(u64, i64)> =
                                [(0, a0), (1, a1), (2, a2), (3, a3), (4, a4)]
                                    .into_iter()
                                    .filter(|&(_, a)| a > 0)
                                    .collect();
                            if pairs.is_empty() {
                                continue;
                            }
                            let t = tree(&pairs);
                            if t.vertex_count() > BigInt::from(16) {
                                continue;
                            }
                            assert_eq!(
                                char_poly_closed_form(&t),
                                char_poly_bruteforce(&t, 16).unwrap(),
                                "{:?}",
                                pairs
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100, "exhaustive sweep too small: {}", checked);
    }

    #[test]
    fn bipartite_parity() {
        // char poly of a tree is x^(odd part) * (polynomial in x^2): nonzero
        // coefficients occur at exponents of a single parity.
        for pairs in [
            vec![(0, 2), (4, 4), (8, 2)],
            vec![(1, 3), (2, 2)],
            vec![(3, 1)],
        ] {
            let t = tree(&pairs);
            let phi = char_poly_closed_form(&t);
            let parity: Vec<usize> = phi
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, _)| e % 2)
                .collect();
            assert!(parity.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
