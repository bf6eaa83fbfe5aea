//! Real root isolation by Sturm sequences on the square-free part, with
//! bisection refinement and multiplicities from Yun's decomposition.

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::{rat_i, Polynomial, Rat};

/// Default isolating-interval refinement width.
pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-12;

/// One isolated real root: exact rational bracket plus a float view.
#[derive(Debug, Clone)]
pub struct Root {
    pub lo: Rat,
    pub hi: Rat,
    pub midpoint: f64,
    pub multiplicity: usize,
}

impl Root {
    pub fn exact_midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_i(2)
    }
}

/// Ascending list of isolated real roots.
#[derive(Debug, Clone)]
pub struct RootList {
    pub roots: Vec<Root>,
}

impl RootList {
    pub fn midpoints(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.midpoint).collect()
    }

    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Sturm chain of `p` (which must be square-free for root counting).
/// Each element is scaled to a primitive integer polynomial; positive
/// scaling preserves the sign variations the chain is used for.
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(square_free: &Polynomial) -> Self {
        let mut chain = vec![
            square_free.primitive_integer(),
            square_free.derivative().primitive_integer(),
        ];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-&r).primitive_integer());
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut prev = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        let mut count = 0;
        let mut prev = 0;
        for p in &self.chain {
            if p.is_zero() {
                continue;
            }
            let lead = p.leading_coeff();
            let deg = p.coeffs().len() - 1;
            let mut s = if lead.is_positive() { 1 } else { -1 };
            if !positive && deg % 2 == 1 {
                s = -s;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Number of distinct real roots on the whole real line.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Isolate all real roots of a nonzero polynomial and refine every
/// isolating interval to width at most `refine_to`.
pub fn real_roots(p: &Polynomial, refine_to: f64) -> Result<RootList> {
    real_roots_exact_width(p, &Rat::from_float(refine_to).ok_or(Error::ZeroPolynomial)?)
}

pub fn real_roots_exact_width(p: &Polynomial, width: &Rat) -> Result<RootList> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut all: Vec<Root> = Vec::new();
    for (factor, mult) in yun_square_free(p) {
        if factor.coeffs().len() <= 1 {
            continue;
        }
        let chain = SturmChain::new(&factor);
        for (lo, hi) in isolate_square_free_with(&factor, &chain) {
            let (lo, hi) = refine_bisect(&factor, &chain, lo, hi, width);
            let midpoint = ((&lo + &hi) / rat_i(2)).to_f64().unwrap();
            all.push(Root {
                lo,
                hi,
                midpoint,
                multiplicity: mult,
            });
        }
    }
    all.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(RootList { roots: all })
}

/// Yun's algorithm: returns pairwise-coprime square-free factors with their
/// multiplicities, `p = lead * prod f_i^(m_i)`.
pub fn yun_square_free(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if p.is_zero() || p.coeffs().len() <= 1 {
        return out;
    }
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let mut w = p.div_exact(&g).expect("gcd divides");
    let mut y = dp.div_exact(&g).expect("gcd divides");
    let mut i = 1;
    loop {
        let z = &y - &w.derivative();
        if z.is_zero() {
            if w.coeffs().len() > 1 {
                out.push((w.clone(), i));
            }
            break;
        }
        let f = w.gcd(&z);
        if f.coeffs().len() > 1 {
            out.push((f.clone(), i));
        }
        w = w.div_exact(&f).expect("gcd divides");
        y = z.div_exact(&f).expect("gcd divides");
        i += 1;
    }
    out
}

/// Isolating intervals `(lo, hi]` for the distinct real roots of a
/// square-free polynomial, by Sturm bisection.
fn isolate_square_free_with(p: &Polynomial, chain: &SturmChain) -> Vec<(Rat, Rat)> {
    let bound = p.root_bound();
    let lo = -&bound;
    let hi = bound;
    let mut out = Vec::new();
    // p(-B) != 0 by the strict Cauchy bound, so (lo, hi] catches every root.
    split(chain, &lo, &hi, chain.count_in(&lo, &hi), &mut out);
    out
}

fn split(chain: &SturmChain, lo: &Rat, hi: &Rat, count: usize, out: &mut Vec<(Rat, Rat)>) {
    match count {
        0 => {}
        1 => out.push((lo.clone(), hi.clone())),
        _ => {
            let mid = (lo + hi) / rat_i(2);
            let left = chain.count_in(lo, &mid);
            split(chain, lo, &mid, left, out);
            split(chain, &mid, hi, count - left, out);
        }
    }
}

/// Shrink `(lo, hi]`, known to contain exactly one root of square-free `p`,
/// to width <= `width`. Sturm counts steer the bisection until the endpoint
/// signs become usable, then plain sign bisection takes over.
fn refine_bisect(
    p: &Polynomial,
    chain: &SturmChain,
    mut lo: Rat,
    mut hi: Rat,
    width: &Rat,
) -> (Rat, Rat) {
    if p.sign_at(&hi) == 0 {
        // rational root sitting exactly at the isolation endpoint
        let half = width / rat_i(2);
        return (&hi - &half, &hi + &half);
    }
    let mut sign_lo = p.sign_at(&lo);
    let mut sign_hi = p.sign_at(&hi);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat_i(2);
        let s = p.sign_at(&mid);
        if s == 0 {
            let half = width / rat_i(2);
            return (&mid - &half, &mid + &half);
        }
        if sign_lo != 0 && sign_lo != sign_hi {
            if s == sign_lo {
                lo = mid;
                sign_lo = s;
            } else {
                hi = mid;
                sign_hi = s;
            }
        } else {
            // the root lies strictly inside; pick the half that holds it
            if chain.count_in(&mid, &hi) == 1 {
                lo = mid;
                sign_lo = s;
            } else {
                hi = mid;
                sign_hi = s;
            }
        }
    }
    (lo, hi)
}
