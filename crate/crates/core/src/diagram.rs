//! Oriented knot diagrams extracted from the xy-projection of an embedded
//! polynomial triple.
//!
//! The projection's transverse double points become crossings; the height
//! component decides over/under. The long knot is closed by an arc at
//! infinity that crosses nothing, so edges are numbered `1..=2k` along the
//! parameter order and wrap around.
//!
//! Conventions: a crossing is positive when, looking along the over-strand
//! tangent, the under strand passes from right to left. A planar-diagram
//! tuple `X(a, b, c, d)` lists the four incident edges counterclockwise
//! starting from the incoming under-edge.

use serde::Serialize;

use crate::embedding::{PolyKnot, SEPARATION_TOLERANCE};
use crate::error::{Error, Result};
use crate::resultant::double_points;

/// One transverse crossing of the diagram.
#[derive(Debug, Clone, Serialize)]
pub struct Crossing {
    /// 1-based label, in order of first visit along the curve.
    pub id: usize,
    /// Earlier parameter of the double point.
    pub s: f64,
    /// Later parameter of the double point.
    pub t: f64,
    /// Projection coordinates of the double point.
    pub x: f64,
    pub y: f64,
    /// True if the later strand (parameter `t`) passes over.
    pub over_later: bool,
    /// +1 or -1.
    pub sign: i8,
}

/// One passage of the curve through a crossing, in parameter order.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Passage {
    /// Index into the diagram's crossing list.
    pub crossing: usize,
    pub param: f64,
    pub is_over: bool,
}

/// An oriented diagram of a (closed-up) long knot.
#[derive(Debug, Clone, Serialize)]
pub struct KnotDiagram {
    pub crossings: Vec<Crossing>,
    pub passages: Vec<Passage>,
}

impl KnotDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Extended Gauss code, e.g. `O1+ U2+ O3+ U1+ O2+ U3+`.
    pub fn gauss_code(&self) -> String {
        self.passages
            .iter()
            .map(|p| {
                let c = &self.crossings[p.crossing];
                format!(
                    "{}{}{}",
                    if p.is_over { 'O' } else { 'U' },
                    c.id,
                    if c.sign > 0 { '+' } else { '-' }
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Over/under letters in passage order, e.g. `OUOUOU`.
    pub fn crossing_pattern(&self) -> String {
        self.passages
            .iter()
            .map(|p| if p.is_over { 'O' } else { 'U' })
            .collect()
    }

    /// Planar-diagram code: one `[a, b, c, d]` per crossing, edges `1..=2k`.
    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        let n = self.passages.len();
        // incoming edge of the i-th passage (1-based) is edge i,
        // outgoing is i+1, wrapping at 2k
        let mut under_in = vec![0usize; self.crossings.len()];
        let mut over_in = vec![0usize; self.crossings.len()];
        for (i, p) in self.passages.iter().enumerate() {
            let edge_in = i + 1;
            if p.is_over {
                over_in[p.crossing] = edge_in;
            } else {
                under_in[p.crossing] = edge_in;
            }
        }
        let next = |e: usize| if e == n { 1 } else { e + 1 };
        self.crossings
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let a = under_in[ci];
                let cc = next(a);
                let oi = over_in[ci];
                let oo = next(oi);
                if c.sign > 0 {
                    [a, oo, cc, oi]
                } else {
                    [a, oi, cc, oo]
                }
            })
            .collect()
    }

    /// Human PD notation, e.g. `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`.
    pub fn pd_notation(&self) -> String {
        self.pd_code()
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Extended Gauss code after removing reducible kinks: crossings whose
    /// two passages are cyclically adjacent are deleted (Reidemeister I)
    /// until none remain, and survivors are relabeled in first-visit order.
    pub fn reduced_gauss_code(&self) -> String {
        // (crossing index, is_over, sign) in passage order
        let mut seq: Vec<(usize, bool, i8)> = self
            .passages
            .iter()
            .map(|p| (p.crossing, p.is_over, self.crossings[p.crossing].sign))
            .collect();
        loop {
            let n = seq.len();
            if n == 0 {
                break;
            }
            let kink = (0..n).find(|&i| seq[i].0 == seq[(i + 1) % n].0);
            match kink {
                Some(i) => {
                    let c = seq[i].0;
                    seq.retain(|&(ci, _, _)| ci != c);
                }
                None => break,
            }
        }
        let mut labels: Vec<(usize, usize)> = Vec::new(); // (crossing, label)
        let mut out = Vec::with_capacity(seq.len());
        for (c, over, sign) in seq {
            let label = match labels.iter().find(|(ci, _)| *ci == c) {
                Some((_, l)) => *l,
                None => {
                    let l = labels.len() + 1;
                    labels.push((c, l));
                    l
                }
            };
            out.push(format!(
                "{}{}{}",
                if over { 'O' } else { 'U' },
                label,
                if sign > 0 { '+' } else { '-' }
            ));
        }
        out.join(" ")
    }

    /// Diagram of the mirror image: over/under swapped, all signs flipped.
    pub fn mirror(&self) -> KnotDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                over_later: !c.over_later,
                sign: -c.sign,
                ..c.clone()
            })
            .collect();
        let passages = self
            .passages
            .iter()
            .map(|p| Passage {
                is_over: !p.is_over,
                ..*p
            })
            .collect();
        KnotDiagram { crossings, passages }
    }
}

/// Extract the diagram of the xy-projection of `k`.
///
/// Fails with `UnresolvedCrossing` when the height gap at some double point
/// is below the separation tolerance, and propagates degeneracy and
/// transversality failures of the projection.
pub fn extract_diagram(k: &PolyKnot) -> Result<KnotDiagram> {
    let pts = double_points(&k.f, &k.g)?;
    diagram_from_double_points(k, &pts)
}

/// Build the diagram from precomputed double points of the `(f, g)`
/// projection (avoids recomputing the resultant pipeline).
pub fn diagram_from_double_points(
    k: &PolyKnot,
    pts: &[crate::resultant::DoublePoint],
) -> Result<KnotDiagram> {
    let mut crossings = Vec::with_capacity(pts.len());
    for (i, pt) in pts.iter().enumerate() {
        let hs = k.h.eval_f64(pt.s);
        let ht = k.h.eval_f64(pt.t);
        if (ht - hs).abs() <= SEPARATION_TOLERANCE {
            return Err(Error::UnresolvedCrossing(i));
        }
        let over_later = ht > hs;
        let (ou, uu) = if over_later { (pt.t, pt.s) } else { (pt.s, pt.t) };
        let over_tan = (k.f.derivative().eval_f64(ou), k.g.derivative().eval_f64(ou));
        let under_tan = (k.f.derivative().eval_f64(uu), k.g.derivative().eval_f64(uu));
        let cross = over_tan.0 * under_tan.1 - over_tan.1 * under_tan.0;
        crossings.push(Crossing {
            id: 0, // assigned after sorting passages
            s: pt.s,
            t: pt.t,
            x: pt.x,
            y: pt.y,
            over_later,
            sign: if cross > 0.0 { 1 } else { -1 },
        });
    }

    let mut passages: Vec<Passage> = Vec::with_capacity(2 * crossings.len());
    for (ci, c) in crossings.iter().enumerate() {
        passages.push(Passage {
            crossing: ci,
            param: c.s,
            is_over: !c.over_later,
        });
        passages.push(Passage {
            crossing: ci,
            param: c.t,
            is_over: c.over_later,
        });
    }
    passages.sort_by(|a, b| a.param.total_cmp(&b.param));

    // label crossings 1, 2, ... in order of first visit
    let mut next_id = 0usize;
    for p in &passages {
        if crossings[p.crossing].id == 0 {
            next_id += 1;
            crossings[p.crossing].id = next_id;
        }
    }

    Ok(KnotDiagram { crossings, passages })
}
