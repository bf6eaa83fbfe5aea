//! Embedding verification and stratum classification for polynomial triples.
//!
//! A `PolyKnot` is just an ordered triple of polynomials; whether it is an
//! embedding is decided here, with a certificate. The strata are
//! `A_d` (degrees at most d-2, d-1, d), `P_d` (strictly increasing degrees,
//! top at most d) and the fixed-degree stratum `P~_d` (exactly d-2, d-1, d).

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat_i, Degree, Polynomial, Rat};
use crate::resultant::{double_points, DoublePoint};
use crate::roots::real_roots;

/// Minimal allowed gap in the third coordinate over a projection crossing;
/// an order of magnitude above root-refinement error.
pub const SEPARATION_TOLERANCE: f64 = 1e-9;

/// An ordered polynomial triple `t -> (f(t), g(t), h(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyKnot {
    pub f: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
    pub name: Option<String>,
}

/// Wire form of a knot file: polynomials in the comma or human text form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnotFile {
    pub f: String,
    pub g: String,
    pub h: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolyKnot {
    pub fn new(f: Polynomial, g: Polynomial, h: Polynomial) -> Self {
        PolyKnot {
            f,
            g,
            h,
            name: None,
        }
    }

    pub fn named(f: Polynomial, g: Polynomial, h: Polynomial, name: &str) -> Self {
        PolyKnot {
            f,
            g,
            h,
            name: Some(name.to_string()),
        }
    }

    pub fn parse(f: &str, g: &str, h: &str) -> Result<Self> {
        Ok(PolyKnot::new(f.parse()?, g.parse()?, h.parse()?))
    }

    pub fn from_file(kf: &KnotFile) -> Result<Self> {
        let mut k = PolyKnot::parse(&kf.f, &kf.g, &kf.h)?;
        k.name = kf.name.clone();
        Ok(k)
    }

    pub fn to_file(&self) -> KnotFile {
        KnotFile {
            f: self.f.to_string(),
            g: self.g.to_string(),
            h: self.h.to_string(),
            name: self.name.clone(),
        }
    }

    pub fn degree_sequence(&self) -> (Degree, Degree, Degree) {
        (self.f.degree(), self.g.degree(), self.h.degree())
    }

    pub fn components(&self) -> [&Polynomial; 3] {
        [&self.f, &self.g, &self.h]
    }

    /// Mirror image: negate the height component.
    pub fn mirror(&self) -> PolyKnot {
        PolyKnot {
            f: self.f.clone(),
            g: self.g.clone(),
            h: -&self.h,
            name: None,
        }
    }

    /// Apply a sign triple to the components.
    pub fn signed(&self, e1: i32, e2: i32, e3: i32) -> PolyKnot {
        let apply = |p: &Polynomial, e: i32| if e < 0 { -p } else { p.clone() };
        PolyKnot {
            f: apply(&self.f, e1),
            g: apply(&self.g, e2),
            h: apply(&self.h, e3),
            name: None,
        }
    }
}

/// Membership of a triple relative to the degree strata at level `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stratum {
    /// degrees at most (d-2, d-1, d)
    InAd,
    /// strictly increasing degrees, top at most d
    InPd,
    /// degrees exactly (d-2, d-1, d)
    InPdTilde,
    Outside,
}

pub fn classify_stratum(k: &PolyKnot, d: usize) -> Stratum {
    assert!(d >= 2, "strata are defined for d >= 2");
    let (df, dg, dh) = k.degree_sequence();
    if df == Degree::Finite(d - 2) && dg == Degree::Finite(d - 1) && dh == Degree::Finite(d) {
        return Stratum::InPdTilde;
    }
    if df < dg && dg < dh && dh <= Degree::Finite(d) {
        return Stratum::InPd;
    }
    if df <= Degree::Finite(d - 2) && dg <= Degree::Finite(d - 1) && dh <= Degree::Finite(d) {
        return Stratum::InAd;
    }
    Stratum::Outside
}

/// The sign triple of leading coefficients, a path-component invariant on
/// the fixed-degree stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignOctant {
    pub e1: i32,
    pub e2: i32,
    pub e3: i32,
}

pub fn sign_octant(k: &PolyKnot) -> Result<SignOctant> {
    let dh = match k.h.degree() {
        Degree::Finite(d) if d >= 3 => d,
        _ => return Err(Error::WrongStratum),
    };
    if classify_stratum(k, dh) != Stratum::InPdTilde {
        return Err(Error::WrongStratum);
    }
    let sgn = |p: &Polynomial| if p.leading_coeff().is_positive() { 1 } else { -1 };
    Ok(SignOctant {
        e1: sgn(&k.f),
        e2: sgn(&k.g),
        e3: sgn(&k.h),
    })
}

/// Which projection pair certified injectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProjectionPair {
    FG,
    FH,
    GH,
}

/// Evidence produced by [`is_embedding`].
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingCertificate {
    pub embedding: bool,
    pub regular: bool,
    pub injective: bool,
    /// Some component is strictly monotone, so injectivity was immediate.
    pub monotone_component: Option<usize>,
    /// Pair whose double points were separated by the third coordinate.
    pub pair_used: Option<ProjectionPair>,
    /// Minimal third-coordinate gap over the projection crossings.
    pub min_separation: Option<f64>,
    /// Parameter of a common critical point, when regularity fails.
    pub regularity_failure_at: Option<f64>,
}

fn blank_certificate() -> EmbeddingCertificate {
    EmbeddingCertificate {
        embedding: false,
        regular: true,
        injective: false,
        monotone_component: None,
        pair_used: None,
        min_separation: None,
        regularity_failure_at: None,
    }
}

/// Regularity: the three derivatives must have no common real root.
/// Returns the parameter of a common critical point, if any.
fn regularity_failure(k: &PolyKnot) -> Result<Option<f64>> {
    let g1 = k.f.derivative().gcd(&k.g.derivative());
    let g = g1.gcd(&k.h.derivative());
    if g.is_zero() {
        // all three derivatives vanish identically: constant map
        return Err(Error::CannotCertify);
    }
    if g.coeffs().len() > 1 {
        let rl = real_roots(&g, 1e-12)?;
        if let Some(r) = rl.roots.first() {
            return Ok(Some(r.midpoint));
        }
    }
    Ok(None)
}

/// Certify using precomputed double points of the xy-projection `(f, g)`:
/// regularity plus third-coordinate separation over the given crossings.
pub fn certify_with_projection(
    k: &PolyKnot,
    pts: &[DoublePoint],
) -> Result<EmbeddingCertificate> {
    let mut cert = blank_certificate();
    if let Some(at) = regularity_failure(k)? {
        cert.regular = false;
        cert.regularity_failure_at = Some(at);
    }
    cert.pair_used = Some(ProjectionPair::FG);
    let (ok, min_sep) = separated_by(&k.h, pts);
    cert.min_separation = min_sep;
    cert.injective = ok;
    cert.embedding = cert.regular && cert.injective;
    Ok(cert)
}

/// Decide whether the triple is an embedding.
///
/// Regularity: the three derivatives must have no common real root.
/// Injectivity: either some component is strictly monotone, or the double
/// points of a non-degenerate projection pair are separated by the third
/// coordinate beyond [`SEPARATION_TOLERANCE`].
pub fn is_embedding(k: &PolyKnot) -> Result<EmbeddingCertificate> {
    if k.components().iter().all(|p| p.coeffs().len() <= 1) {
        return Err(Error::CannotCertify); // constant map, not a long knot
    }

    let mut cert = blank_certificate();
    if let Some(at) = regularity_failure(k)? {
        cert.regular = false;
        cert.regularity_failure_at = Some(at);
    }

    // injectivity shortcut: a strictly monotone component
    for (i, p) in k.components().iter().enumerate() {
        if p.degree() < Degree::Finite(1) {
            continue;
        }
        let dp = p.derivative();
        if dp.coeffs().len() <= 1 || real_roots(&dp, 1e-12)?.roots.is_empty() {
            // degree-1 component or derivative with no real roots
            if p.degree() == Degree::Finite(1) || no_sign_change(&dp) {
                cert.monotone_component = Some(i);
                cert.injective = true;
                break;
            }
        }
    }

    if !cert.injective {
        // cheapest pair first
        let pairs = [
            (ProjectionPair::FG, &k.f, &k.g, &k.h),
            (ProjectionPair::FH, &k.f, &k.h, &k.g),
            (ProjectionPair::GH, &k.g, &k.h, &k.f),
        ];
        let mut any_usable = false;
        for (tag, a, b, third) in pairs {
            match double_points(a, b) {
                Ok(pts) => {
                    any_usable = true;
                    cert.pair_used = Some(tag);
                    let (ok, min_sep) = separated_by(third, &pts);
                    cert.min_separation = min_sep;
                    cert.injective = ok;
                    break;
                }
                Err(Error::DegenerateProjection)
                | Err(Error::DegreeTooLow)
                | Err(Error::NonTransverseCrossing(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if !any_usable {
            return Err(Error::CannotCertify);
        }
    }

    cert.embedding = cert.regular && cert.injective;
    Ok(cert)
}

fn no_sign_change(dp: &Polynomial) -> bool {
    // derivative has no real roots; it keeps one sign, so the component is
    // strictly monotone
    !dp.is_zero()
}

fn separated_by(third: &Polynomial, pts: &[DoublePoint]) -> (bool, Option<f64>) {
    let mut min_sep: Option<f64> = None;
    for pt in pts {
        let gap = (third.eval_f64(pt.t) - third.eval_f64(pt.s)).abs();
        min_sep = Some(min_sep.map_or(gap, |m: f64| m.min(gap)));
        if gap <= SEPARATION_TOLERANCE {
            return (false, min_sep);
        }
    }
    (true, min_sep)
}

/// Closed-form embedding criterion for the degree-4 normal form
/// `t -> (e1 t^2 + a t, e2 t^3 + b t, e3 t^4 + c t)`:
/// an embedding iff `3a^2 + 4 e2 b > 0` or `e1 a^3 + 2 e1 e2 a b + e3 c != 0`,
/// evaluated exactly.
pub fn deg4_criterion(a: &Rat, b: &Rat, c: &Rat, e1: i32, e2: i32, e3: i32) -> bool {
    let quad = rat_i(3) * a * a + rat_i(4 * e2 as i64) * b;
    if quad.is_positive() {
        return true;
    }
    let cubic = rat_i(e1 as i64) * a * a * a
        + rat_i(2 * (e1 * e2) as i64) * a * b
        + rat_i(e3 as i64) * c;
    !cubic.is_zero()
}

/// The degree-4 normal-form knot for a parameter triple and sign triple.
pub fn deg4_knot(a: &Rat, b: &Rat, c: &Rat, e1: i32, e2: i32, e3: i32) -> PolyKnot {
    let mono = |e: i32, k: usize| Polynomial::monomial(rat_i(e as i64), k);
    PolyKnot::new(
        &mono(e1, 2) + &Polynomial::monomial(a.clone(), 1),
        &mono(e2, 3) + &Polynomial::monomial(b.clone(), 1),
        &mono(e3, 4) + &Polynomial::monomial(c.clone(), 1),
    )
}
