//! Constructing height polynomials that realize prescribed crossing data,
//! the degree-6 rank obstruction for five- and six-crossing projections of
//! degree-(4,5) plane curves, and lifting knots into higher-degree strata.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diagram::diagram_from_double_points;
use crate::embedding::{certify_with_projection, classify_stratum, PolyKnot, Stratum};
use crate::error::{Error, Result};
use crate::poly::{rat_i, Degree, Polynomial, Rat};
use crate::resultant::{double_points, double_points_refined, DoublePoint};

/// Minimal allowed gap between opposite-sign crossing parameters when
/// placing interval separators.
const RUN_SEPARATION: f64 = 1e-9;

/// Smallest lift perturbation tried before giving up.
const MIN_LIFT_EPSILON: f64 = 1e-12;

/// Prescribed crossing data for a plane projection: one sign per double
/// point (in ascending earlier-parameter order; +1 means the strand visiting
/// the crossing later passes over) and one positive slack per crossing.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingPattern {
    pub e: Vec<i8>,
    pub r_slacks: Vec<Rat>,
}

impl CrossingPattern {
    /// Pattern with unit slacks.
    pub fn new(e: Vec<i8>) -> Result<Self> {
        let r = vec![Rat::one(); e.len()];
        CrossingPattern::with_slacks(e, r)
    }

    pub fn with_slacks(e: Vec<i8>, r_slacks: Vec<Rat>) -> Result<Self> {
        if e.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Parse("pattern signs must be +1 or -1".into()));
        }
        if r_slacks.len() != e.len() {
            return Err(Error::Parse("one slack per crossing required".into()));
        }
        if r_slacks.iter().any(|r| !r.is_positive()) {
            return Err(Error::Parse("slacks must be positive".into()));
        }
        Ok(CrossingPattern { e, r_slacks })
    }

    /// Parse a sign string such as `+-+-+` (unit slacks).
    pub fn parse(s: &str) -> Result<Self> {
        let e = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!("bad pattern character '{}'", other))),
            })
            .collect::<Result<Vec<i8>>>()?;
        CrossingPattern::new(e)
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }
}

/// The linear system whose solutions are height-polynomial coefficients:
/// row `i` holds `t_i^k - s_i^k` for each basis exponent `k`, and the
/// right-hand side is `e_i * r_i`.
#[derive(Debug, Clone)]
pub struct HeightSystem {
    pub matrix: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
    pub basis: Vec<usize>,
}

fn rat_pow(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Build the height system for given double points, pattern and basis.
pub fn height_system(
    pts: &[DoublePoint],
    pattern: &CrossingPattern,
    basis: &[usize],
) -> Result<HeightSystem> {
    if pattern.len() != pts.len() {
        return Err(Error::PatternMismatch {
            crossings: pts.len(),
            pattern: pattern.len(),
        });
    }
    let matrix = pts
        .iter()
        .map(|pt| {
            basis
                .iter()
                .map(|&k| rat_pow(&pt.t_exact, k) - rat_pow(&pt.s_exact, k))
                .collect()
        })
        .collect();
    let rhs = pattern
        .e
        .iter()
        .zip(&pattern.r_slacks)
        .map(|(&e, r)| rat_i(e as i64) * r)
        .collect();
    Ok(HeightSystem {
        matrix,
        rhs,
        basis: basis.to_vec(),
    })
}

/// The default monomial basis `t, t^2, ..., t^(n+2)` for an `n`-crossing
/// projection.
pub fn default_basis(crossings: usize) -> Vec<usize> {
    (1..=crossings + 2).collect()
}

/// Signs actually realized by a height polynomial over the given double
/// points: the exact sign of `h(t_i) - h(s_i)` per crossing.
pub fn realized_signs(h: &Polynomial, pts: &[DoublePoint]) -> Vec<i8> {
    pts.iter()
        .map(|pt| {
            let gap = h.eval(&pt.t_exact) - h.eval(&pt.s_exact);
            if gap.is_positive() {
                1
            } else if gap.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Realize a crossing pattern by an interval product: the `2n` crossing
/// parameters are signed (+ at the over passage, - at the under passage),
/// sorted, and split into maximal same-sign runs; the height polynomial is
/// `±prod (t - a_j)` with one separator `a_j` at the midpoint of each run
/// boundary. Its degree is the number of run changes.
pub fn height_by_intervals(
    f: &Polynomial,
    g: &Polynomial,
    pattern: &CrossingPattern,
) -> Result<Polynomial> {
    let pts = double_points(f, g)?;
    height_by_intervals_at(&pts, pattern)
}

/// Same, from precomputed double points.
pub fn height_by_intervals_at(
    pts: &[DoublePoint],
    pattern: &CrossingPattern,
) -> Result<Polynomial> {
    if pattern.len() != pts.len() {
        return Err(Error::PatternMismatch {
            crossings: pts.len(),
            pattern: pattern.len(),
        });
    }
    if pts.is_empty() {
        return Ok(Polynomial::one());
    }

    // sign each parameter value: + where the curve passes over
    let mut signed: Vec<(Rat, i8)> = Vec::with_capacity(2 * pts.len());
    for (pt, &e) in pts.iter().zip(&pattern.e) {
        signed.push((pt.s_exact.clone(), -e));
        signed.push((pt.t_exact.clone(), e));
    }
    signed.sort_by(|a, b| a.0.cmp(&b.0));

    // separators at midpoints between adjacent opposite-sign parameters
    let mut separators: Vec<Rat> = Vec::new();
    for w in signed.windows(2) {
        let ((a, sa), (b, sb)) = (&w[0], &w[1]);
        if sa == sb {
            continue;
        }
        let gap = (b - a).to_f64().unwrap_or(0.0);
        if gap < RUN_SEPARATION {
            return Err(Error::InfeasibleRuns);
        }
        separators.push((a + b) / rat_i(2));
    }

    let mut h = Polynomial::from_roots(&separators);
    // the monic product is positive on the rightmost run
    if signed.last().unwrap().1 < 0 {
        h = -&h;
    }

    if realized_signs(&h, pts) != pattern.e {
        return Err(Error::VerificationFailed);
    }
    Ok(h)
}

/// Realize a crossing pattern by solving the height linear system over a
/// monomial basis; returns the minimal-Euclidean-norm coefficient solution,
/// computed exactly.
pub fn height_by_linear_system(
    f: &Polynomial,
    g: &Polynomial,
    pattern: &CrossingPattern,
    basis: &[usize],
) -> Result<Polynomial> {
    let pts = double_points(f, g)?;
    let system = height_system(&pts, pattern, basis)?;
    let coeffs = minimal_norm_solve(&system.matrix, &system.rhs)?;
    let mut h = Polynomial::zero();
    for (c, &k) in coeffs.iter().zip(basis) {
        h = &h + &Polynomial::monomial(c.clone(), k);
    }
    if realized_signs(&h, &pts) != pattern.e {
        return Err(Error::VerificationFailed);
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// exact rational linear algebra
// ---------------------------------------------------------------------------

/// Row-echelon rank; also returns the indices of an independent row set.
pub fn rank_with_pivot_rows(mat: &[Vec<Rat>]) -> (usize, Vec<usize>) {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<(usize, Vec<Rat>)> = mat.iter().cloned().enumerate().collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i].1[c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        pivots.push(m[r].0);
        for i in r + 1..rows {
            if m[i].1[c].is_zero() {
                continue;
            }
            let factor = &m[i].1[c] / &m[r].1[c];
            for j in c..cols {
                let v = &m[i].1[j] - &(&factor * &m[r].1[j]);
                m[i].1[j] = v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    (r, pivots)
}

/// Rank of a rational matrix.
pub fn rank(mat: &[Vec<Rat>]) -> usize {
    rank_with_pivot_rows(mat).0
}

/// Exact determinant of a square rational matrix.
#[allow(clippy::needless_range_loop)] // elimination indexes two rows of `m` at once
pub fn det_rational(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "square matrix required");
    let mut m = mat.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if pr != c {
            m.swap(c, pr);
            det = -det;
        }
        det *= &m[c][c].clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &m[i][j] - &(&factor * &m[c][j]);
                m[i][j] = v;
            }
        }
    }
    det
}

#[allow(clippy::needless_range_loop)] // elimination indexes two rows of `m` at once
fn solve_square(mat: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = mat.len();
    let mut m: Vec<Vec<Rat>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pr);
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &m[c][c];
            for j in c..=n {
                let v = &m[i][j] - &(&factor * &m[c][j]);
                m[i][j] = v;
            }
        }
    }
    Some(m.iter().enumerate().map(|(i, r)| &r[n] / &r[i]).collect())
}

/// Minimal-Euclidean-norm exact solution of a consistent linear system;
/// `NoSolution` (with both ranks) when inconsistent.
pub fn minimal_norm_solve(mat: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let (rk, pivots) = rank_with_pivot_rows(mat);
    let augmented: Vec<Vec<Rat>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let augmented_rank = rank(&augmented);
    if augmented_rank > rk {
        return Err(Error::NoSolution {
            rank: rk,
            augmented_rank,
        });
    }
    let cols = mat.first().map_or(0, |r| r.len());
    if rk == 0 {
        return Ok(vec![Rat::zero(); cols]);
    }
    // restrict to an independent row set; the minimal-norm solution is
    // x = M_r^T y where (M_r M_r^T) y = rhs_r, and the Gram matrix of
    // independent rows is invertible
    let sub: Vec<&Vec<Rat>> = pivots.iter().map(|&i| &mat[i]).collect();
    let sub_rhs: Vec<Rat> = pivots.iter().map(|&i| rhs[i].clone()).collect();
    let gram: Vec<Vec<Rat>> = sub
        .iter()
        .map(|ri| {
            sub.iter()
                .map(|rj| ri.iter().zip(rj.iter()).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let y = solve_square(&gram, &sub_rhs).expect("Gram matrix of independent rows is invertible");
    let mut x = vec![Rat::zero(); cols];
    for (yi, row) in y.iter().zip(&sub) {
        for (xj, a) in x.iter_mut().zip(row.iter()) {
            *xj += yi * a;
        }
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// degree-6 obstruction
// ---------------------------------------------------------------------------

/// Monomial exponents available to a degree-6 height polynomial after the
/// affine normalization `h(t) = c6 t^6 + c3 t^3 + c2 t^2 + c1 t`.
pub const DEG6_BASIS: [usize; 4] = [1, 2, 3, 6];

/// Outcome of the degree-6 obstruction test.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub crossings: usize,
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// Rank of the augmented matrix.
    pub augmented_rank: usize,
    /// True when no degree-6 height polynomial can realize the data.
    pub obstructed: bool,
    /// Exact determinant of the 5x5 augmented matrix (5-crossing case only).
    pub det_if_square: Option<Rat>,
}

fn pow10_width(exp: u32) -> Rat {
    Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), exp as usize))
}

fn obstruction_from_system(system: &HeightSystem) -> Result<ObstructionReport> {
    let n = system.matrix.len();
    let rk = rank(&system.matrix);
    let augmented: Vec<Vec<Rat>> = system
        .matrix
        .iter()
        .zip(&system.rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let augmented_rank = rank(&augmented);
    match n {
        5 => {
            let det = det_rational(&augmented);
            Ok(ObstructionReport {
                crossings: n,
                rank: rk,
                augmented_rank,
                obstructed: !det.is_zero(),
                det_if_square: Some(det),
            })
        }
        6 => Ok(ObstructionReport {
            crossings: n,
            rank: rk,
            augmented_rank,
            obstructed: augmented_rank == 5,
            det_if_square: None,
        }),
        _ => Err(Error::WrongShape),
    }
}

fn check_deg45(f: &Polynomial, g: &Polynomial) -> Result<()> {
    if f.degree() != Degree::Finite(4) || g.degree() != Degree::Finite(5) {
        return Err(Error::WrongShape);
    }
    Ok(())
}

/// Test whether the crossing data of a degree-(4,5) projection with 5 or 6
/// crossings is obstructed in degree 6: no polynomial
/// `h = c6 t^6 + c3 t^3 + c2 t^2 + c1 t` realizes the prescribed signed gaps.
///
/// Crossing coordinates enter as rational approximants; the verdict is
/// recomputed at refinement widths 1e-30 and 1e-45 and must agree.
pub fn obstruction_deg6(
    f: &Polynomial,
    g: &Polynomial,
    pattern: &CrossingPattern,
) -> Result<ObstructionReport> {
    obstruction_deg6_at(f, g, pattern, 30)
}

/// Same, with a caller-chosen base precision (decimal digits of the
/// coordinate approximants); the verdict is re-checked at 1.5x the digits.
pub fn obstruction_deg6_at(
    f: &Polynomial,
    g: &Polynomial,
    pattern: &CrossingPattern,
    digits: u32,
) -> Result<ObstructionReport> {
    check_deg45(f, g)?;
    let digits = digits.max(16);
    let mut reports = Vec::new();
    for exp in [digits, digits + digits / 2] {
        let pts = double_points_refined(f, g, &pow10_width(exp))?;
        let system = height_system(&pts, pattern, &DEG6_BASIS)?;
        reports.push(obstruction_from_system(&system)?);
    }
    let fine = reports.pop().unwrap();
    let coarse = reports.pop().unwrap();
    if fine.obstructed != coarse.obstructed {
        return Err(Error::VerificationFailed); // verdict not precision-stable
    }
    Ok(fine)
}

/// Same test with an explicit right-hand side (bypasses the sign/slack
/// encoding; used to exhibit consistent systems). Single-precision: an
/// exactly consistent rhs is tied to one set of coordinate approximants, so
/// no cross-precision agreement is demanded here.
pub fn obstruction_deg6_with_rhs(
    f: &Polynomial,
    g: &Polynomial,
    rhs: &[Rat],
) -> Result<ObstructionReport> {
    check_deg45(f, g)?;
    let pts = double_points_refined(f, g, &pow10_width(30))?;
    if rhs.len() != pts.len() {
        return Err(Error::PatternMismatch {
            crossings: pts.len(),
            pattern: rhs.len(),
        });
    }
    let matrix: Vec<Vec<Rat>> = pts
        .iter()
        .map(|pt| {
            DEG6_BASIS
                .iter()
                .map(|&k| rat_pow(&pt.t_exact, k) - rat_pow(&pt.s_exact, k))
                .collect()
        })
        .collect();
    let system = HeightSystem {
        matrix,
        rhs: rhs.to_vec(),
        basis: DEG6_BASIS.to_vec(),
    };
    obstruction_from_system(&system)
}

/// Cofactor expansion of the 5x5 augmented determinant along its last
/// column: `det([A | r]) = sum_i (-1)^i r_i det(A without row i)` with
/// 0-based rows. The right-hand side enters linearly, one term per slack.
pub fn augmented_det_by_expansion(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Rat {
    assert_eq!(matrix.len(), 5, "five rows expected");
    assert!(matrix.iter().all(|r| r.len() == 4), "four columns expected");
    let mut acc = Rat::zero();
    for (i, b) in rhs.iter().enumerate() {
        let minor: Vec<Vec<Rat>> = matrix
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.clone())
            .collect();
        let term = b * &det_rational(&minor);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// stratum lifting
// ---------------------------------------------------------------------------

/// A knot lifted to a higher fixed-degree stratum, with the certified
/// perturbation size.
#[derive(Debug, Clone)]
pub struct Lift {
    pub knot: PolyKnot,
    pub epsilon: Rat,
}

/// Lift an embedded knot into the fixed-degree stratum of level `n` via
/// `(eps t^(n-2) + f, eps t^(n-1) + g, eps t^n + h)`, halving `eps` from 1
/// until the lift is an embedding whose diagram has the same reduced
/// extended Gauss code as the original.
///
/// The comparison uses [`crate::diagram::KnotDiagram::reduced_gauss_code`]
/// (kinks removed): the monomial perturbation always adds reducible
/// crossings on the far tail of the curve, where the perturbation term
/// dominates, and those persist for every positive `eps`.
pub fn lift_stratum(k: &PolyKnot, n: usize) -> Result<Lift> {
    let top = match k.h.degree() {
        Degree::Finite(d) => d,
        Degree::MinusInfinity => return Err(Error::WrongStratum),
    };
    if n <= top || n < 3 {
        return Err(Error::WrongStratum);
    }

    let reference = diagram_code(k)?;
    let mut eps = Rat::one();
    loop {
        if eps.to_f64().unwrap_or(0.0) < MIN_LIFT_EPSILON {
            return Err(Error::LiftFailed);
        }
        let lifted = PolyKnot {
            f: &k.f + &Polynomial::monomial(eps.clone(), n - 2),
            g: &k.g + &Polynomial::monomial(eps.clone(), n - 1),
            h: &k.h + &Polynomial::monomial(eps.clone(), n),
            name: k.name.clone(),
        };
        if classify_stratum(&lifted, n) == Stratum::InPdTilde {
            if let Ok(Some(code)) = certified_code(&lifted) {
                if code == reference {
                    return Ok(Lift {
                        knot: lifted,
                        epsilon: eps,
                    });
                }
            }
        }
        eps /= rat_i(2);
    }
}

fn diagram_code(k: &PolyKnot) -> Result<String> {
    let pts = double_points(&k.f, &k.g)?;
    let cert = certify_with_projection(k, &pts)?;
    if !cert.embedding {
        return Err(Error::LiftFailed);
    }
    Ok(diagram_from_double_points(k, &pts)?.reduced_gauss_code())
}

/// Gauss code of a candidate lift, or `None` when this perturbation size is
/// unusable (degenerate projection, unresolved crossing, failed separation).
fn certified_code(k: &PolyKnot) -> Result<Option<String>> {
    let pts = match double_points(&k.f, &k.g) {
        Ok(pts) => pts,
        Err(
            Error::DegenerateProjection
            | Error::NonTransverseCrossing(_)
            | Error::DegreeTooLow,
        ) => return Ok(None),
        Err(e) => return Err(e),
    };
    let cert = certify_with_projection(k, &pts)?;
    if !cert.embedding {
        return Ok(None);
    }
    match diagram_from_double_points(k, &pts) {
        Ok(d) => Ok(Some(d.reduced_gauss_code())),
        Err(Error::UnresolvedCrossing(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
