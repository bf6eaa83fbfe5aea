//! Closed-form homotopies between polynomial knots: straight-line and
//! shear/scaling paths connecting degree strata, and the normal-form paths
//! inside the degree-4 stratum. Each family is a map `s -> PolyKnot` on
//! `[0, 1]`, evaluated in exact arithmetic; a companion verifier samples the
//! path on a uniform grid and certifies every sample as an embedding.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::embedding::{classify_stratum, is_embedding, sign_octant, PolyKnot, SignOctant, Stratum};
use crate::error::{Error, Result};
use crate::poly::{rat_i, Degree, Polynomial, Rat};

/// Default number of uniform samples (including both endpoints).
pub const DEFAULT_SAMPLES: usize = 101;

/// A closed-form homotopy family with its endpoint data.
#[derive(Debug, Clone)]
pub enum Family {
    /// Straight line from a degree-sequence-(0,1,2) map to a
    /// degree-sequence-(1,2,3) knot; interior stays at (1,2,3).
    Thm12I { phi: PolyKnot, psi: PolyKnot },
    /// Pulls a (0,1,3)- or (0,2,3)-knot onto `(t, e2 t^2, h)` while staying
    /// at degree sequence (1,2,3) in the interior.
    Thm12II { tau: PolyKnot },
    /// Degree-4 normal form with `3a^2 + 4 e2 b > 0`, contracted onto
    /// `(0, e2 t, e3 t^2)`.
    Thm14I { e: [i32; 3], a: Rat, b: Rat, c: Rat },
    /// Degree-4 normal form with `e1 a^3 + 2 e1 e2 a b + e3 c != 0`,
    /// contracted onto `(0, -e2 t, -2 e3 t^2)`.
    Thm14II { e: [i32; 3], a: Rat, b: Rat, c: Rat },
    /// Kills the constant terms of a degree-sequence-(2,3,4) knot
    /// (an ambient translation at every sample).
    Thm15I { phi: PolyKnot },
    /// Shears away the `t^2` term of the second component and the `t^2`,
    /// `t^3` terms of the third (an invertible linear map at every sample).
    Thm15II { tau: PolyKnot },
    /// Scales each component onto its monic-up-to-sign normal form
    /// (a positive diagonal linear map at every sample).
    Thm15III { sigma: PolyKnot },
    /// Straight line from a degree-sequence-(0,1,2) map to a
    /// degree-sequence-(1,3,4) knot; interior stays at (1,3,4).
    Thm16I { phi: PolyKnot, psi: PolyKnot },
    /// Path in the `3a^2 + 4 e2 b > 0` region of the degree-4 normal forms,
    /// from the base point `(e1 t^2, e2 t^3 + e2 t, e3 t^4)`.
    Thm18F { e: [i32; 3], a: Rat, b: Rat, c: Rat },
    /// Path in the `e1 a^3 + 2 e1 e2 a b + e3 c > 0` region, from
    /// `(e1 t^2, e2 t^3, e3 t^4 + e3 t)`.
    Thm18G { e: [i32; 3], a: Rat, b: Rat, c: Rat },
    /// Path in the `e1 a^3 + 2 e1 e2 a b + e3 c < 0` region, from
    /// `(e1 t^2, e2 t^3, e3 t^4 - e3 t)`.
    Thm18H { e: [i32; 3], a: Rat, b: Rat, c: Rat },
    /// Connects the F and G base points.
    Thm18Phi { e: [i32; 3] },
    /// Connects the F and H base points.
    Thm18Psi { e: [i32; 3] },
}

fn check_sign_triple(e: &[i32; 3]) -> Result<()> {
    if e.iter().all(|&x| x == 1 || x == -1) {
        Ok(())
    } else {
        Err(Error::HypothesisFailed)
    }
}

fn degrees(k: &PolyKnot) -> (Degree, Degree, Degree) {
    k.degree_sequence()
}

fn fin(d: usize) -> Degree {
    Degree::Finite(d)
}

/// `3 a^2 + 4 e2 b`, the quadratic part of the degree-4 criterion.
fn quad_margin(e2: i32, a: &Rat, b: &Rat) -> Rat {
    rat_i(3) * a * a + rat_i(4 * e2 as i64) * b
}

/// `e1 a^3 + 2 e1 e2 a b + e3 c`, the cubic part of the degree-4 criterion.
fn cubic_margin(e: &[i32; 3], a: &Rat, b: &Rat, c: &Rat) -> Rat {
    rat_i(e[0] as i64) * a * a * a
        + rat_i(2 * (e[0] * e[1]) as i64) * a * b
        + rat_i(e[2] as i64) * c
}

fn requires_embedding(k: &PolyKnot) -> Result<()> {
    match is_embedding(k) {
        Ok(cert) if cert.embedding => Ok(()),
        _ => Err(Error::HypothesisFailed),
    }
}

fn mono(c: Rat, k: usize) -> Polynomial {
    Polynomial::monomial(c, k)
}

fn emono(e: i32, k: usize) -> Polynomial {
    mono(rat_i(e as i64), k)
}

/// `(1-s) p + s q`.
fn lerp(p: &Polynomial, q: &Polynomial, s: &Rat) -> Polynomial {
    &p.scale(&(Rat::one() - s)) + &q.scale(s)
}

impl Family {
    /// Validate the endpoint data against the family's hypotheses.
    pub fn check_hypothesis(&self) -> Result<()> {
        match self {
            Family::Thm12I { phi, psi } => {
                if degrees(phi) != (fin(0), fin(1), fin(2))
                    || degrees(psi) != (fin(1), fin(2), fin(3))
                {
                    return Err(Error::HypothesisFailed);
                }
                Ok(())
            }
            Family::Thm16I { phi, psi } => {
                if degrees(phi) != (fin(0), fin(1), fin(2))
                    || degrees(psi) != (fin(1), fin(3), fin(4))
                {
                    return Err(Error::HypothesisFailed);
                }
                Ok(())
            }
            Family::Thm12II { tau } => {
                let d = degrees(tau);
                if d != (fin(0), fin(1), fin(3)) && d != (fin(0), fin(2), fin(3)) {
                    return Err(Error::HypothesisFailed);
                }
                requires_embedding(tau)
            }
            Family::Thm14I { e, a, b, .. } => {
                check_sign_triple(e)?;
                if quad_margin(e[1], a, b).is_positive() {
                    Ok(())
                } else {
                    Err(Error::HypothesisFailed)
                }
            }
            Family::Thm14II { e, a, b, c } => {
                check_sign_triple(e)?;
                if cubic_margin(e, a, b, c).is_zero() {
                    Err(Error::HypothesisFailed)
                } else {
                    Ok(())
                }
            }
            Family::Thm15I { phi } => {
                if degrees(phi) != (fin(2), fin(3), fin(4)) {
                    return Err(Error::HypothesisFailed);
                }
                requires_embedding(phi)
            }
            Family::Thm15II { tau } => {
                if degrees(tau) != (fin(2), fin(3), fin(4))
                    || !tau.f.coeff(0).is_zero()
                    || !tau.g.coeff(0).is_zero()
                    || !tau.h.coeff(0).is_zero()
                {
                    return Err(Error::HypothesisFailed);
                }
                requires_embedding(tau)
            }
            Family::Thm15III { sigma } => {
                if degrees(sigma) != (fin(2), fin(3), fin(4))
                    || !sigma.f.coeff(0).is_zero()
                    || !sigma.g.coeff(0).is_zero()
                    || !sigma.g.coeff(2).is_zero()
                    || !sigma.h.coeff(0).is_zero()
                    || !sigma.h.coeff(2).is_zero()
                    || !sigma.h.coeff(3).is_zero()
                {
                    return Err(Error::HypothesisFailed);
                }
                requires_embedding(sigma)
            }
            Family::Thm18F { e, a, b, .. } => {
                check_sign_triple(e)?;
                if quad_margin(e[1], a, b).is_positive() {
                    Ok(())
                } else {
                    Err(Error::HypothesisFailed)
                }
            }
            Family::Thm18G { e, a, b, c } => {
                check_sign_triple(e)?;
                if cubic_margin(e, a, b, c).is_positive() {
                    Ok(())
                } else {
                    Err(Error::HypothesisFailed)
                }
            }
            Family::Thm18H { e, a, b, c } => {
                check_sign_triple(e)?;
                if cubic_margin(e, a, b, c).is_negative() {
                    Ok(())
                } else {
                    Err(Error::HypothesisFailed)
                }
            }
            Family::Thm18Phi { e } | Family::Thm18Psi { e } => check_sign_triple(e),
        }
    }

    /// Evaluate the family at a rational parameter `s` in `[0, 1]`.
    pub fn at(&self, s: &Rat) -> PolyKnot {
        let om = Rat::one() - s; // 1 - s
        match self {
            Family::Thm12I { phi, psi } | Family::Thm16I { phi, psi } => PolyKnot::new(
                lerp(&phi.f, &psi.f, s),
                lerp(&phi.g, &psi.g, s),
                lerp(&phi.h, &psi.h, s),
            ),
            Family::Thm12II { tau } => {
                let e2 = if tau.g.coeff(2).is_negative() { -1 } else { 1 };
                PolyKnot::new(
                    &tau.f.scale(&om) + &mono(s.clone(), 1),
                    &tau.g.scale(&om) + &mono(rat_i(e2) * s, 2),
                    tau.h.clone(),
                )
            }
            Family::Thm14I { e, a, b, c } => PolyKnot::new(
                &emono(e[0], 2).scale(&om) + &mono(&om * a, 1),
                &emono(e[1], 3).scale(&om) + &mono(&om * b + rat_i(e[1] as i64) * s, 1),
                &(&emono(e[2], 4).scale(&om) + &mono(rat_i(e[2] as i64) * s, 2))
                    + &mono(&om * c, 1),
            ),
            Family::Thm14II { e, a, b, c } => PolyKnot::new(
                &emono(e[0], 2).scale(&om) + &mono(&om * a, 1),
                &emono(e[1], 3).scale(&om) + &mono(&om * b - rat_i(e[1] as i64) * s, 1),
                &(&emono(e[2], 4).scale(&om) + &mono(rat_i(-2 * e[2] as i64) * s, 2))
                    + &mono(&om * c, 1),
            ),
            Family::Thm15I { phi } => {
                let drop_const = |p: &Polynomial| {
                    let shift = mono(p.coeff(0) * s, 0);
                    p - &shift
                };
                PolyKnot::new(drop_const(&phi.f), drop_const(&phi.g), drop_const(&phi.h))
            }
            Family::Thm15II { tau } => {
                let (a2, b2) = (tau.f.coeff(2), tau.g.coeff(2));
                let (b3, c2, c3) = (tau.g.coeff(3), tau.h.coeff(2), tau.h.coeff(3));
                let g = &tau.g - &tau.f.scale(&(&b2 / &a2 * s));
                let h = &(&tau.h
                    + &tau.f.scale(&((&b2 * &c3 - &b3 * &c2) / (&a2 * &b3) * s)))
                    - &tau.g.scale(&(&c3 / &b3 * s));
                PolyKnot::new(tau.f.clone(), g, h)
            }
            Family::Thm15III { sigma } => {
                let stretch = |p: &Polynomial| {
                    let lead = p.leading_coeff();
                    let factor = &om + &(s / lead.abs());
                    p.scale(&factor)
                };
                PolyKnot::new(stretch(&sigma.f), stretch(&sigma.g), stretch(&sigma.h))
            }
            Family::Thm18F { e, a, b, c } => {
                let s2 = s * s;
                PolyKnot::new(
                    &emono(e[0], 2) + &mono(a * s, 1),
                    &emono(e[1], 3)
                        + &mono(b * &s2 + rat_i(e[1] as i64) * (Rat::one() - &s2), 1),
                    &emono(e[2], 4) + &mono(c * s, 1),
                )
            }
            Family::Thm18G { e, a, b, c } => {
                let s3 = s * s * s;
                PolyKnot::new(
                    &emono(e[0], 2) + &mono(a * s, 1),
                    &emono(e[1], 3) + &mono(b * &(s * s), 1),
                    &emono(e[2], 4)
                        + &mono(c * &s3 + rat_i(e[2] as i64) * (Rat::one() - &s3), 1),
                )
            }
            Family::Thm18H { e, a, b, c } => {
                let s3 = s * s * s;
                PolyKnot::new(
                    &emono(e[0], 2) + &mono(a * s, 1),
                    &emono(e[1], 3) + &mono(b * &(s * s), 1),
                    &emono(e[2], 4)
                        + &mono(c * &s3 - rat_i(e[2] as i64) * (Rat::one() - &s3), 1),
                )
            }
            Family::Thm18Phi { e } => PolyKnot::new(
                emono(e[0], 2),
                &emono(e[1], 3) + &mono(rat_i(e[1] as i64) * &om, 1),
                &emono(e[2], 4) + &mono(rat_i(e[2] as i64) * s, 1),
            ),
            Family::Thm18Psi { e } => PolyKnot::new(
                emono(e[0], 2),
                &emono(e[1], 3) + &mono(rat_i(e[1] as i64) * &om, 1),
                &emono(e[2], 4) + &mono(rat_i(-e[2] as i64) * s, 1),
            ),
        }
    }

    pub fn start(&self) -> PolyKnot {
        self.at(&Rat::zero())
    }

    pub fn end(&self) -> PolyKnot {
        self.at(&Rat::one())
    }

    /// Degree sequence the family maintains at interior samples, if any.
    fn interior_degrees(&self) -> Option<(Degree, Degree, Degree)> {
        match self {
            Family::Thm12I { .. } | Family::Thm12II { .. } => Some((fin(1), fin(2), fin(3))),
            Family::Thm14I { .. } | Family::Thm14II { .. } => Some((fin(2), fin(3), fin(4))),
            Family::Thm15I { .. } | Family::Thm15II { .. } | Family::Thm15III { .. } => {
                Some((fin(2), fin(3), fin(4)))
            }
            Family::Thm16I { .. } => Some((fin(1), fin(3), fin(4))),
            Family::Thm18F { .. }
            | Family::Thm18G { .. }
            | Family::Thm18H { .. }
            | Family::Thm18Phi { .. }
            | Family::Thm18Psi { .. } => Some((fin(2), fin(3), fin(4))),
        }
    }
}

/// Evidence gathered while sampling a path.
#[derive(Debug, Clone)]
pub struct PathReport {
    pub samples: usize,
    /// All interior samples had the family's fixed degree sequence.
    pub interior_degrees_ok: bool,
    /// Leading-sign octant was constant over all samples lying in a
    /// fixed-degree stratum.
    pub octant_constant: bool,
}

/// Sample the family uniformly (`samples` points including both endpoints)
/// and certify each sample as an embedding; check the interior degree
/// sequence and octant constancy. A certificate of plausibility by
/// sampling, not a proof.
pub fn verify_family(family: &Family, samples: usize) -> Result<PathReport> {
    assert!(samples >= 2, "need both endpoints");
    family.check_hypothesis()?;
    let expected = family.interior_degrees();
    let mut interior_degrees_ok = true;
    let mut seen_octant: Option<SignOctant> = None;
    let mut octant_constant = true;

    for k in 0..samples {
        let s = Rat::new(BigInt::from(k), BigInt::from(samples - 1));
        let s_f = s.to_f64().unwrap_or(0.0);
        let knot = family.at(&s);
        match is_embedding(&knot) {
            Ok(cert) if cert.embedding => {}
            _ => return Err(Error::PathBroken(s_f)),
        }
        if k > 0 && k + 1 < samples {
            if let Some(exp) = expected {
                if knot.degree_sequence() != exp {
                    interior_degrees_ok = false;
                }
            }
        }
        if let Degree::Finite(d) = knot.h.degree() {
            if d >= 3 && classify_stratum(&knot, d) == Stratum::InPdTilde {
                if let Ok(o) = sign_octant(&knot) {
                    match seen_octant {
                        None => seen_octant = Some(o),
                        Some(prev) if prev != o => octant_constant = false,
                        _ => {}
                    }
                }
            }
        }
    }
    if !interior_degrees_ok {
        return Err(Error::PathBroken(f64::NAN));
    }
    Ok(PathReport {
        samples,
        interior_degrees_ok,
        octant_constant,
    })
}

/// Verify with the default 101-point grid.
pub fn verify(family: &Family) -> Result<PathReport> {
    verify_family(family, DEFAULT_SAMPLES)
}
