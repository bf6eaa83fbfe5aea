//! Plane-projection double points via divided differences and exact
//! Sylvester resultants.
//!
//! For a projection `t -> (f(t), g(t))` the self-intersections are the
//! pairs `s != t` with `F(s,t) = G(s,t) = 0`, where `F = (f(t)-f(s))/(t-s)`
//! and `G` likewise. Eliminating `s` by a Sylvester resultant gives a
//! univariate polynomial whose real roots locate the crossing parameters.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat_i, Degree, Polynomial, Rat};
use crate::roots::real_roots_exact_width;

/// Crossings closer than this in parameter space mean the projection is not
/// regular (nodes must be transverse).
pub const TRANSVERSALITY_TOLERANCE: f64 = 1e-7;
/// Residual acceptance threshold, relative to the absolute-value evaluation
/// scale of the bivariate polynomial at the candidate point. True crossings
/// refined to width 1e-14 sit around 1e-16 relative; spurious candidates
/// (complex-node shadows, split multiple roots) sit at 1e-9 or above.
pub const RESIDUAL_TOLERANCE: f64 = 1e-11;

/// The symmetric bivariate polynomial `(p(t) - p(s)) / (t - s)`, stored as a
/// polynomial in `s` whose coefficients are polynomials in `t`.
#[derive(Debug, Clone)]
pub struct DividedDifference {
    base: Polynomial,
    /// `coeffs[j]` multiplies `s^j`.
    coeffs: Vec<Polynomial>,
}

impl DividedDifference {
    pub fn new(p: &Polynomial) -> Result<Self> {
        let deg = match p.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Err(Error::DegreeTooLow),
        };
        // coefficient of s^j is sum_{k >= j+1} a_k t^(k-1-j)
        let mut coeffs = Vec::with_capacity(deg);
        for j in 0..deg {
            let mut c = vec![Rat::zero(); deg - j];
            for k in (j + 1)..=deg {
                c[k - 1 - j] = p.coeff(k);
            }
            coeffs.push(Polynomial::from_coeffs(c));
        }
        Ok(DividedDifference {
            base: p.clone(),
            coeffs,
        })
    }

    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    /// Degree in `s` (equals degree in `t` by symmetry).
    pub fn degree_s(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of the powers of `s`, each a polynomial in `t`.
    pub fn s_coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn eval(&self, s: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c.eval(t);
        }
        acc
    }

    pub fn eval_f64(&self, s: f64, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c.eval_f64(t);
        }
        acc
    }

    /// Partial derivative with respect to `s`.
    pub fn d_ds(&self) -> Vec<Polynomial> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&rat_i(j as i64)))
            .collect()
    }

    /// Partial derivative with respect to `t`.
    pub fn d_dt(&self) -> Vec<Polynomial> {
        self.coeffs.iter().map(|c| c.derivative()).collect()
    }

    /// Largest absolute coefficient, as a float; residual scale reference.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|p| p.coeffs())
            .map(|c| c.to_f64().unwrap_or(0.0).abs())
            .fold(1.0, f64::max)
    }
}

pub fn eval_bivariate(coeffs: &[Polynomial], s: &Rat, t: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * s + c.eval(t);
    }
    acc
}

/// Sylvester resultant of `F` and `G` in `s`; a univariate polynomial in `t`
/// vanishing exactly at the `t`-coordinates of common (complex) roots.
pub fn sylvester_resultant(fd: &DividedDifference, gd: &DividedDifference) -> Polynomial {
    resultant_in_s(fd.s_coeffs(), gd.s_coeffs())
}

pub fn resultant_in_s(f: &[Polynomial], g: &[Polynomial]) -> Polynomial {
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        // Res(const, g) = f^deg_s(g)
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * &f[0];
        }
        return acc;
    }
    if n == 0 {
        let mut acc = Polynomial::one();
        for _ in 0..m {
            acc = &acc * &g[0];
        }
        return acc;
    }
    let size = m + n;
    let mut mat = vec![vec![Polynomial::zero(); size]; size];
    // n rows of F coefficients (descending powers of s), then m rows of G
    for row in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

/// Fraction-free Bareiss determinant over the ring of rational polynomials.
/// Entries are cleared to integer polynomials first so every interior
/// division is exact and intermediate growth stays polynomial.
pub fn bareiss_determinant(mut mat: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = mat.len();
    if n == 0 {
        return Polynomial::one();
    }
    // Clear denominators row by row; track the overall scale.
    let mut scale = Rat::one();
    for row in mat.iter_mut() {
        let mut den = num_bigint::BigInt::one();
        for p in row.iter() {
            for c in p.coeffs() {
                den = den.lcm(c.denom());
            }
        }
        if !den.is_one() {
            let d = Rat::from_integer(den);
            for p in row.iter_mut() {
                *p = p.scale(&d);
            }
            scale /= d;
        }
    }
    let mut sign = 1i64;
    let mut prev_pivot = Polynomial::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !mat[r][k].is_zero());
            match swap {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev_pivot).expect("Bareiss division is exact");
            }
            mat[i][k] = Polynomial::zero();
        }
        prev_pivot = mat[k][k].clone();
    }
    mat[n - 1][n - 1].scale(&(Rat::from_integer(sign.into()) * scale))
}

/// A transverse self-intersection of the plane projection.
#[derive(Debug, Clone)]
pub struct DoublePoint {
    pub s: f64,
    pub t: f64,
    /// Exact isolating boxes (rational midpoint approximants).
    pub s_exact: Rat,
    pub t_exact: Rat,
    /// Projection point (f(s), g(s)).
    pub x: f64,
    pub y: f64,
}

/// All real double points of the projection `(f, g)`, in ascending `s`
/// order with `s < t` per pair.
pub fn double_points(f: &Polynomial, g: &Polynomial) -> Result<Vec<DoublePoint>> {
    double_points_refined(f, g, &Rat::from_float(1e-14).unwrap())
}

/// Same, with the crossing parameters refined to rational approximants with
/// error below `width` (2D Newton in exact arithmetic after isolation).
pub fn double_points_refined(
    f: &Polynomial,
    g: &Polynomial,
    width: &Rat,
) -> Result<Vec<DoublePoint>> {
    if f.degree() < Degree::Finite(1) || g.degree() < Degree::Finite(1) {
        return Err(Error::DegreeTooLow);
    }
    if f.degree() == Degree::Finite(1) || g.degree() == Degree::Finite(1) {
        return Ok(Vec::new()); // a linear coordinate makes the pair injective
    }
    let fd = DividedDifference::new(f)?;
    let gd = DividedDifference::new(g)?;
    let gamma = sylvester_resultant(&fd, &gd);
    if gamma.is_zero() {
        return Err(Error::DegenerateProjection);
    }
    let iso_width = Rat::from_float(1e-14).unwrap();
    let t_roots = real_roots_exact_width(&gamma, &iso_width)?;

    let mut pairs: Vec<(Rat, Rat)> = Vec::new();
    for tr in &t_roots.roots {
        let t_mid = tr.exact_midpoint();
        // Solve both specializations F(s, t*) = 0 and G(s, t*) = 0: a true
        // crossing parameter is a root of each, but it can be a *multiple*
        // root of one of them (e.g. under a repeated factor of f), in which
        // case the t* approximation error may push that root off the real
        // line. The other specialization still sees it as a simple root.
        let mut candidates: Vec<Rat> = Vec::new();
        for dd in [&fd, &gd] {
            let spec = specialize_t(dd, &t_mid);
            if spec.is_zero() {
                return Err(Error::DegenerateProjection);
            }
            if spec.coeffs().len() <= 1 {
                continue;
            }
            for sr in &real_roots_exact_width(&spec, &iso_width)?.roots {
                candidates.push(sr.exact_midpoint());
            }
        }
        candidates.sort();
        let t_f = t_mid.to_f64().unwrap_or(f64::INFINITY);
        let mut last_kept: Option<f64> = None;
        for s_mid in candidates {
            if s_mid >= t_mid {
                continue; // keep s < t; the symmetric partner appears once
            }
            let s_f = s_mid.to_f64().unwrap_or(f64::INFINITY);
            // both residuals must be small relative to the evaluation scale
            let f_res = fd.eval(&s_mid, &t_mid).to_f64().unwrap_or(f64::INFINITY);
            let g_res = gd.eval(&s_mid, &t_mid).to_f64().unwrap_or(f64::INFINITY);
            if f_res.abs() > RESIDUAL_TOLERANCE * eval_abs_scale(&fd, s_f, t_f)
                || g_res.abs() > RESIDUAL_TOLERANCE * eval_abs_scale(&gd, s_f, t_f)
            {
                continue; // imaginary-node shadow or spurious factor
            }
            // the same root reported by both specializations
            if last_kept.is_some_and(|prev| (s_f - prev).abs() < 1e-9) {
                continue;
            }
            last_kept = Some(s_f);
            pairs.push((s_mid, t_mid.clone()));
        }
    }

    // Transversality checks before polishing.
    for (s, t) in &pairs {
        let gap = (t - s).to_f64().unwrap_or(0.0).abs();
        if gap < TRANSVERSALITY_TOLERANCE {
            return Err(Error::NonTransverseCrossing(t.to_f64().unwrap_or(0.0)));
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ds = (&pairs[i].0 - &pairs[j].0).to_f64().unwrap_or(0.0).abs();
            let dt = (&pairs[i].1 - &pairs[j].1).to_f64().unwrap_or(0.0).abs();
            if ds < TRANSVERSALITY_TOLERANCE && dt < TRANSVERSALITY_TOLERANCE {
                return Err(Error::NonTransverseCrossing(pairs[i].1.to_f64().unwrap_or(0.0)));
            }
        }
    }

    let mut out = Vec::with_capacity(pairs.len());
    for (s0, t0) in pairs {
        let (s_exact, t_exact) = newton_2d(&fd, &gd, s0, t0, width)?;
        let s = s_exact.to_f64().unwrap();
        let t = t_exact.to_f64().unwrap();
        out.push(DoublePoint {
            x: f.eval_f64(s),
            y: g.eval_f64(s),
            s,
            t,
            s_exact,
            t_exact,
        });
    }
    out.sort_by(|a, b| a.s.partial_cmp(&b.s).unwrap());
    Ok(out)
}

/// Sum of absolute term magnitudes of a divided difference at a point; the
/// natural backward-error scale for residual acceptance.
fn eval_abs_scale(dd: &DividedDifference, s: f64, t: f64) -> f64 {
    let (sa, ta) = (s.abs(), t.abs());
    let mut acc = 0.0f64;
    let mut s_pow = 1.0f64;
    for c in dd.s_coeffs() {
        let mut cj = 0.0f64;
        let mut t_pow = 1.0f64;
        for coeff in c.coeffs() {
            cj += coeff.to_f64().unwrap_or(0.0).abs() * t_pow;
            t_pow *= ta;
        }
        acc += cj * s_pow;
        s_pow *= sa;
    }
    acc.max(1.0)
}

/// Substitute a rational value for `t`, leaving a polynomial in `s`.
pub fn specialize_t(fd: &DividedDifference, t: &Rat) -> Polynomial {
    Polynomial::from_coeffs(fd.s_coeffs().iter().map(|c| c.eval(t)).collect())
}

/// Exact-rational 2D Newton on (F, G); rationals are rounded to a bounded
/// denominator after each step so sizes stay manageable. Quadratic
/// convergence from an isolated transverse root.
fn newton_2d(
    fd: &DividedDifference,
    gd: &DividedDifference,
    mut s: Rat,
    mut t: Rat,
    width: &Rat,
) -> Result<(Rat, Rat)> {
    let fs = fd.d_ds();
    let ft = fd.d_dt();
    let gs = gd.d_ds();
    let gt = gd.d_dt();
    let target = width.clone();
    // round to ~2x the target precision
    let round_den = {
        let mut d = num_bigint::BigInt::one();
        let ten = num_bigint::BigInt::from(10u32);
        let digits = (-width.to_f64().unwrap_or(1e-30).log10()).ceil() as usize + 12;
        for _ in 0..(2 * digits) {
            d *= &ten;
        }
        d
    };
    for _ in 0..64 {
        let rf = fd.eval(&s, &t);
        let rg = gd.eval(&s, &t);
        let a = eval_bivariate(&fs, &s, &t);
        let b = eval_bivariate(&ft, &s, &t);
        let c = eval_bivariate(&gs, &s, &t);
        let d = eval_bivariate(&gt, &s, &t);
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(Error::NonTransverseCrossing(t.to_f64().unwrap_or(0.0)));
        }
        let ds = (&d * &rf - &b * &rg) / &det;
        let dt = (&a * &rg - &c * &rf) / &det;
        let step = ds.abs().max(dt.abs());
        s = round_rat(&(s - ds), &round_den);
        t = round_rat(&(t - dt), &round_den);
        if step < target {
            return Ok((s, t));
        }
    }
    Err(Error::NonTransverseCrossing(t.to_f64().unwrap_or(0.0)))
}

fn round_rat(x: &Rat, den: &num_bigint::BigInt) -> Rat {
    let scaled = x * Rat::from_integer(den.clone());
    Rat::new(scaled.round().to_integer(), den.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn divided_difference_of_square() {
        let dd = DividedDifference::new(&p("t^2")).unwrap();
        // s + t
        assert_eq!(dd.s_coeffs(), &[p("t"), p("1")]);
    }

    #[test]
    fn divided_difference_shastri_first_component() {
        let dd = DividedDifference::new(&p("t^3 - 3*t")).unwrap();
        // s^2 + s t + t^2 - 3
        assert_eq!(dd.s_coeffs(), &[p("t^2 - 3"), p("t"), p("1")]);
    }

    #[test]
    fn divided_difference_quartic() {
        let dd = DividedDifference::new(&p("t^4 - 4*t^2")).unwrap();
        // s^3 + s^2 t + s t^2 + t^3 - 4s - 4t
        assert_eq!(
            dd.s_coeffs(),
            &[p("t^3 - 4*t"), p("t^2 - 4"), p("t"), p("1")]
        );
    }

    #[test]
    fn divided_difference_diagonal_is_derivative() {
        let f = p("t^4 - 4*t^2 + 3*t - 7");
        let dd = DividedDifference::new(&f).unwrap();
        let df = f.derivative();
        for k in -3..=3 {
            let u = rat(k, 2);
            assert_eq!(dd.eval(&u, &u), df.eval(&u));
        }
    }

    #[test]
    fn divided_difference_rejects_constant() {
        assert!(matches!(
            DividedDifference::new(&p("5")),
            Err(Error::DegreeTooLow)
        ));
    }

    #[test]
    fn resultant_of_cusp_pair() {
        // F = s + t, G = s^2 + s t + t^2: by cofactor expansion of the
        // 3x3 Sylvester matrix the resultant is t^2.
        let fd = DividedDifference::new(&p("t^2")).unwrap();
        let gd = DividedDifference::new(&p("t^3")).unwrap();
        let r = sylvester_resultant(&fd, &gd);
        assert_eq!(r, p("t^2"));
    }

    #[test]
    fn resultant_linear_pair() {
        // F = s + t - 1, G = s - t: common solution s = t = 1/2.
        let f = [p("t - 1"), p("1")];
        let g = [p("0,-1"), p("1")];
        let r = resultant_in_s(&f, &g);
        // up to sign 2t - 1
        let normalized = if r.leading_coeff().is_negative() { -&r } else { r };
        assert_eq!(normalized, p("2*t - 1"));
    }

    #[test]
    fn resultant_scaling_multilinearity() {
        let fd = DividedDifference::new(&p("t^3 - 3*t")).unwrap();
        let gd = DividedDifference::new(&p("t^4 - 4*t^2")).unwrap();
        let base = sylvester_resultant(&fd, &gd);
        let scaled_g: Vec<Polynomial> =
            gd.s_coeffs().iter().map(|c| c.scale(&rat(7, 3))).collect();
        let scaled = resultant_in_s(fd.s_coeffs(), &scaled_g);
        // scaling G by lambda scales the resultant by lambda^{deg_s F}
        let lambda_pow = rat(7, 3) * rat(7, 3); // deg_s F = 2
        assert_eq!(scaled, base.scale(&lambda_pow));
    }

    #[test]
    fn cusp_has_no_double_points() {
        let pts = double_points(&p("t^2"), &p("t^3")).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn trefoil_projection_has_three_symmetric_nodes() {
        let pts = double_points(&p("t^3 - 3*t"), &p("t^4 - 4*t^2")).unwrap();
        assert_eq!(pts.len(), 3);
        // symmetric under (s,t) -> (-t,-s)
        for pt in &pts {
            let found = pts
                .iter()
                .any(|q| (q.s + pt.t).abs() < 1e-9 && (q.t + pt.s).abs() < 1e-9);
            assert!(found, "missing mirror of ({}, {})", pt.s, pt.t);
        }
        // each reported pair solves the system both ways round
        let fd = DividedDifference::new(&p("t^3 - 3*t")).unwrap();
        let gd = DividedDifference::new(&p("t^4 - 4*t^2")).unwrap();
        for pt in &pts {
            assert!(fd.eval_f64(pt.t, pt.s).abs() < 1e-8);
            assert!(gd.eval_f64(pt.t, pt.s).abs() < 1e-8);
        }
    }

    #[test]
    fn five_two_projection_has_five_nodes() {
        let f = p("2 (t-2) (t+4) (t^2-11)");
        let g = p("t (t^2-6) (t^2-16)");
        let pts = double_points(&f, &g).unwrap();
        assert_eq!(pts.len(), 5);
        for pt in &pts {
            assert!(pt.s < pt.t);
            assert!((f.eval_f64(pt.s) - f.eval_f64(pt.t)).abs() < 1e-6);
            assert!((g.eval_f64(pt.s) - g.eval_f64(pt.t)).abs() < 1e-6);
        }
        // ascending s order
        for w in pts.windows(2) {
            assert!(w[0].s < w[1].s);
        }
    }

    #[test]
    fn shared_component_is_degenerate() {
        // f and g trace the same parametrized parabola
        let f = p("t^2");
        let g = p("2*t^2");
        // F = s+t, G = 2(s+t): resultant vanishes identically
        assert!(matches!(
            double_points(&f, &g),
            Err(Error::DegenerateProjection)
        ));
    }

    #[test]
    fn high_precision_refinement() {
        let f = p("t^3 - 3*t");
        let g = p("t^4 - 4*t^2");
        let width = Rat::new(1.into(), num_bigint::BigInt::from(10u32).pow(30));
        let pts = double_points_refined(&f, &g, &width).unwrap();
        assert_eq!(pts.len(), 3);
        let fd = DividedDifference::new(&f).unwrap();
        let gd = DividedDifference::new(&g).unwrap();
        for pt in &pts {
            let rf = fd.eval(&pt.s_exact, &pt.t_exact);
            let limit = Rat::new(1.into(), num_bigint::BigInt::from(10u32).pow(25));
            assert!(rf.abs() < limit);
            assert!(gd.eval(&pt.s_exact, &pt.t_exact).abs() < limit);
        }
    }
}
