//! End-to-end acceptance suite. Each test checks one release criterion and
//! prints a single `criterion N ... pass` line (visible with --nocapture);
//! the per-test ok/FAILED line from the harness mirrors the verdict.

use std::time::Instant;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyknot::construct::{
    augmented_det_by_expansion, default_basis, height_by_intervals_at, height_by_linear_system,
    height_system, obstruction_deg6_at, obstruction_deg6_with_rhs, realized_signs,
    CrossingPattern, DEG6_BASIS,
};
use polyknot::corpus::{load_corpus, verify_corpus};
use polyknot::diagram::{diagram_from_double_points, extract_diagram};
use polyknot::embedding::{
    certify_with_projection, deg4_criterion, deg4_knot, is_embedding, sign_octant, PolyKnot,
};
use polyknot::homotopy::{verify, Family};
use polyknot::invariants::{identify, jones};
use polyknot::poly::{rat, rat_i, Degree, Polynomial, Rat};
use polyknot::resultant::{double_points, double_points_refined, DoublePoint};

fn p(s: &str) -> Polynomial {
    s.parse().unwrap()
}

/// The degree-(4,5) plane curve with five real nodes used throughout:
/// (2(t-2)(t+4)(t^2-11), t(t^2-6)(t^2-16)).
fn five_node_projection() -> (Polynomial, Polynomial) {
    (p("2 (t - 2) (t + 4) (t^2 - 11)"), p("t (t^2 - 6) (t^2 - 16)"))
}

fn shastri_projection() -> (Polynomial, Polynomial) {
    (p("t^3 - 3t"), p("t^4 - 4t^2"))
}

// ---------------------------------------------------------------------------
// 1. corpus identification
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_corpus_identification() {
    let corpus = load_corpus().unwrap();
    assert_eq!(corpus.len(), 11, "eleven printed representations");
    for entry in &corpus {
        let t0 = Instant::now();
        // one projection pass feeds both the certificate and the diagram
        let pts = double_points(&entry.knot.f, &entry.knot.g).unwrap();
        let cert = certify_with_projection(&entry.knot, &pts).unwrap();
        assert!(cert.embedding, "{} must verify as an embedding", entry.name);
        let dg = diagram_from_double_points(&entry.knot, &pts).unwrap();
        let id = identify(&dg).unwrap();
        let elapsed = t0.elapsed();
        assert_eq!(id.name, entry.name, "identification of {}", entry.name);
        assert!(
            elapsed.as_secs() < 30,
            "{} took {:?}, budget is 30 s",
            entry.name,
            elapsed
        );
        // the deepest state sum stays within the degree-7 crossing budget
        if entry.name == "8_19" {
            assert!(dg.crossing_count() <= 10);
        }
    }
    println!("criterion 1 (corpus identification, < 30 s per entry): pass");
}

// ---------------------------------------------------------------------------
// 2. five-node projection vs an independent grid+Newton oracle
// ---------------------------------------------------------------------------

/// Independent oracle: hard-coded f64 expansions of the two coordinates,
/// a coarse seed grid, damped 2x2 Newton on (f(s)-f(t), g(s)-g(t)), and
/// duplicate removal. Shares no code with the library pipeline.
fn oracle_nodes() -> Vec<(f64, f64)> {
    // 2(t-2)(t+4)(t^2-11) = 2t^4 + 4t^3 - 38t^2 - 44t + 176
    let f = |t: f64| 2.0 * t.powi(4) + 4.0 * t.powi(3) - 38.0 * t * t - 44.0 * t + 176.0;
    let df = |t: f64| 8.0 * t.powi(3) + 12.0 * t * t - 76.0 * t - 44.0;
    // t(t^2-6)(t^2-16) = t^5 - 22t^3 + 96t
    let g = |t: f64| t.powi(5) - 22.0 * t.powi(3) + 96.0 * t;
    let dg = |t: f64| 5.0 * t.powi(4) - 66.0 * t * t + 96.0;

    let mut found: Vec<(f64, f64)> = Vec::new();
    let mut seed_s = -5.0;
    while seed_s < 5.0 {
        let mut seed_t = seed_s + 0.1;
        while seed_t < 5.0 {
            let (mut s, mut t) = (seed_s, seed_t);
            for _ in 0..60 {
                let (fv, gv) = (f(s) - f(t), g(s) - g(t));
                // Jacobian [[f'(s), -f'(t)], [g'(s), -g'(t)]]
                let (a, b, c, d) = (df(s), -df(t), dg(s), -dg(t));
                let det = a * d - b * c;
                if det.abs() < 1e-9 {
                    break;
                }
                let (ds, dt) = ((fv * d - gv * b) / det, (a * gv - c * fv) / det);
                s -= ds;
                t -= dt;
                if ds.abs() + dt.abs() < 1e-14 {
                    break;
                }
            }
            let converged = (f(s) - f(t)).abs() < 1e-8 && (g(s) - g(t)).abs() < 1e-8;
            if converged && t - s > 1e-3 && s.is_finite() && t.is_finite() {
                let (lo, hi) = if s < t { (s, t) } else { (t, s) };
                if !found
                    .iter()
                    .any(|&(a2, b2)| (a2 - lo).abs() < 1e-6 && (b2 - hi).abs() < 1e-6)
                {
                    found.push((lo, hi));
                }
            }
            seed_t += 0.25;
        }
        seed_s += 0.25;
    }
    found.sort_by(|x, y| x.0.total_cmp(&y.0));
    found
}

#[test]
fn criterion_2_five_node_count_matches_oracle() {
    let (f, g) = five_node_projection();
    let mut pts: Vec<(f64, f64)> = double_points(&f, &g)
        .unwrap()
        .iter()
        .map(|pt| (pt.s.min(pt.t), pt.s.max(pt.t)))
        .collect();
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    assert_eq!(pts.len(), 5, "exactly five double points");

    let oracle = oracle_nodes();
    assert_eq!(oracle.len(), 5, "oracle finds five nodes");
    for (lib, ora) in pts.iter().zip(&oracle) {
        assert!(
            (lib.0 - ora.0).abs() < 1e-8 && (lib.1 - ora.1).abs() < 1e-8,
            "node mismatch: library {:?} vs oracle {:?}",
            lib,
            ora
        );
    }
    println!("criterion 2 (five nodes, grid+Newton oracle to 1e-8): pass");
}

// ---------------------------------------------------------------------------
// 3. closed-form degree-4 criterion vs the numeric pipeline
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_deg4_criterion_equals_numeric_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x64E64);
    let mut checked = 0usize;
    for _ in 0..1000 {
        // random rationals in [-3, 3] with denominator 16
        let a = rat(rng.gen_range(-48..=48), 16);
        let b = rat(rng.gen_range(-48..=48), 16);
        let c = rat(rng.gen_range(-48..=48), 16);
        for signs in 0..8u32 {
            let e1 = if signs & 1 == 0 { 1 } else { -1 };
            let e2 = if signs & 2 == 0 { 1 } else { -1 };
            let e3 = if signs & 4 == 0 { 1 } else { -1 };
            let quad = rat_i(3) * &a * &a + rat_i(4 * e2 as i64) * &b;
            let cubic = rat_i(e1 as i64) * &a * &a * &a
                + rat_i(2 * (e1 * e2) as i64) * &a * &b
                + rat_i(e3 as i64) * &c;
            // distance from the decision boundary of "quad > 0 or cubic != 0"
            let margin = quad
                .to_f64()
                .unwrap()
                .max(cubic.to_f64().unwrap().abs())
                .abs();
            if margin <= 1e-6 {
                continue; // too close to the boundary to trust float pipelines
            }
            let closed_form = deg4_criterion(&a, &b, &c, e1, e2, e3);
            let numeric = is_embedding(&deg4_knot(&a, &b, &c, e1, e2, e3))
                .map(|cert| cert.embedding)
                .unwrap_or(false);
            assert_eq!(
                closed_form, numeric,
                "disagreement at a={} b={} c={} e=({},{},{})",
                a, b, c, e1, e2, e3
            );
            checked += 1;
        }
    }
    assert!(checked >= 7000, "boundary skips must stay rare: {}", checked);
    println!(
        "criterion 3 (degree-4 criterion vs numeric pipeline, {} samples): pass",
        checked
    );
}

// ---------------------------------------------------------------------------
// 4. height-construction round-trip on the trefoil projection
// ---------------------------------------------------------------------------

/// Number of maximal same-sign runs minus one in the sorted signed crossing
/// parameters: the degree the interval construction promises not to exceed.
fn run_changes(pts: &[DoublePoint], pattern: &CrossingPattern) -> usize {
    let mut signed: Vec<(Rat, i8)> = Vec::new();
    for (pt, &e) in pts.iter().zip(&pattern.e) {
        signed.push((pt.s_exact.clone(), -e));
        signed.push((pt.t_exact.clone(), e));
    }
    signed.sort_by(|a, b| a.0.cmp(&b.0));
    signed.windows(2).filter(|w| w[0].1 != w[1].1).count()
}

#[test]
fn criterion_4_height_construction_round_trip() {
    let (f, g) = shastri_projection();
    let reference = PolyKnot::parse("t^3 - 3t", "t^4 - 4t^2", "t^5 - 10t").unwrap();
    let pts = double_points(&f, &g).unwrap();
    assert_eq!(pts.len(), 3);

    // the projection's own alternating crossing data
    let request = CrossingPattern::new(realized_signs(&reference.h, &pts)).unwrap();
    let r = run_changes(&pts, &request);
    let reference_name = identify(&extract_diagram(&reference).unwrap()).unwrap().name;

    let h_int = height_by_intervals_at(&pts, &request).unwrap();
    let h_sys = height_by_linear_system(&f, &g, &request, &default_basis(pts.len())).unwrap();
    assert!(h_int.degree() <= Degree::Finite(r), "interval degree <= {}", r);
    assert!(h_sys.degree() <= Degree::Finite(5), "system degree <= n+2 = 5");

    for h in [&h_int, &h_sys] {
        assert_eq!(realized_signs(h, &pts), request.e, "pattern round-trips");
        let k = PolyKnot::new(f.clone(), g.clone(), h.clone());
        assert!(is_embedding(&k).unwrap().embedding);
        let id = identify(&extract_diagram(&k).unwrap()).unwrap();
        assert_eq!(id.name, reference_name, "both constructions give the trefoil");
    }
    assert!(reference_name.starts_with("3_1"));
    println!("criterion 4 (height construction round-trip, degrees <= min(5, r)): pass");
}

// ---------------------------------------------------------------------------
// 5. degree-6 obstruction: stability, expansion identity, consistent rhs
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_degree6_obstruction() {
    let (f, g) = five_node_projection();
    let pattern = CrossingPattern::parse("-+-+-").unwrap(); // unit slacks

    // obstructed at two working precisions (each call itself double-checks)
    for digits in [30, 50] {
        let report = obstruction_deg6_at(&f, &g, &pattern, digits).unwrap();
        assert!(report.obstructed, "obstructed at {} digits", digits);
        assert_eq!(report.crossings, 5);
        assert!(!report.det_if_square.clone().unwrap().is_zero());
    }

    // cofactor-expansion identity, exactly, on the same system
    let width = Rat::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 30));
    let pts = double_points_refined(&f, &g, &width).unwrap();
    let system = height_system(&pts, &pattern, &DEG6_BASIS).unwrap();
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
    let direct = polyknot::construct::det_rational(&augmented);
    let expanded = augmented_det_by_expansion(&system.matrix, &system.rhs);
    assert_eq!(direct, expanded, "det([A|r]) = sum_i (-1)^i r_i det(A_i)");
    assert!(!direct.is_zero());

    // a right-hand side inside the column space flips the verdict
    let consistent: Vec<Rat> = system
        .matrix
        .iter()
        .map(|row| row.iter().fold(Rat::zero(), |acc, v| acc + v))
        .collect();
    let report = obstruction_deg6_with_rhs(&f, &g, &consistent).unwrap();
    assert!(!report.obstructed, "consistent rhs is unobstructed");
    assert_eq!(report.rank, report.augmented_rank);
    println!("criterion 5 (degree-6 obstruction: two precisions, expansion identity, consistent rhs): pass");
}

// ---------------------------------------------------------------------------
// 6. octant counting and mirror symmetry of the Jones polynomial
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_octant_counting_and_mirrors() {
    let report = verify_corpus().unwrap();
    assert!(report.all_ok);
    assert_eq!(report.components_deg5, 16, "degree-5 lower bound");
    assert_eq!(report.components_deg6, 24, "degree-6 lower bound");
    assert_eq!(report.components_deg7, 88, "degree-7 lower bound");
    assert!(report.entries.iter().all(|e| e.octants_distinct));

    // the 8 sign variants of a corpus knot land in 8 distinct octants
    let corpus = load_corpus().unwrap();
    let base = &corpus.iter().find(|e| e.name == "4_1").unwrap().knot;
    let mut octants = std::collections::BTreeSet::new();
    for signs in 0..8u32 {
        let e1 = if signs & 1 == 0 { 1 } else { -1 };
        let e2 = if signs & 2 == 0 { 1 } else { -1 };
        let e3 = if signs & 4 == 0 { 1 } else { -1 };
        let o = sign_octant(&base.signed(e1, e2, e3)).unwrap();
        octants.insert((o.e1, o.e2, o.e3));
    }
    assert_eq!(octants.len(), 8);

    // V_mirror(t) = V(1/t), exactly, for a chiral and an achiral entry
    for name in ["3_1", "4_1", "5_2"] {
        let k = &corpus.iter().find(|e| e.name == name).unwrap().knot;
        let v = jones(&extract_diagram(k).unwrap()).unwrap();
        let v_mirror = jones(&extract_diagram(&k.mirror()).unwrap()).unwrap();
        assert_eq!(v_mirror, v.invert_variable(), "mirror Jones of {}", name);
    }
    println!("criterion 6 (octant table 16/24/88, 8 distinct octants, mirror Jones): pass");
}

// ---------------------------------------------------------------------------
// 7. homotopy families on random hypothesis-satisfying endpoints
// ---------------------------------------------------------------------------

fn rrat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-16..=16), 8)
}

fn rsign(rng: &mut ChaCha8Rng) -> i32 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

fn rtriple(rng: &mut ChaCha8Rng) -> [i32; 3] {
    [rsign(rng), rsign(rng), rsign(rng)]
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let v = rrat(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random poly of exact degree `d` with small rational coefficients.
fn rpoly(rng: &mut ChaCha8Rng, d: usize) -> Polynomial {
    let mut q = Polynomial::monomial(nonzero(rng), d);
    for k in 0..d {
        q = &q + &Polynomial::monomial(rrat(rng), k);
    }
    q
}

/// Random normal-form parameters with positive quadratic margin.
fn quad_positive(rng: &mut ChaCha8Rng) -> ([i32; 3], Rat, Rat, Rat) {
    loop {
        let (e, a, b, c) = (rtriple(rng), rrat(rng), rrat(rng), rrat(rng));
        if (rat_i(3) * &a * &a + rat_i(4 * e[1] as i64) * &b).is_positive() {
            return (e, a, b, c);
        }
    }
}

/// Random normal-form parameters with cubic margin of the requested sign.
fn cubic_signed(rng: &mut ChaCha8Rng, want: i32) -> ([i32; 3], Rat, Rat, Rat) {
    loop {
        let (e, a, b, c) = (rtriple(rng), rrat(rng), rrat(rng), rrat(rng));
        let cubic = rat_i(e[0] as i64) * &a * &a * &a
            + rat_i(2 * (e[0] * e[1]) as i64) * &a * &b
            + rat_i(e[2] as i64) * &c;
        let ok = match want {
            0 => !cubic.is_zero(),
            1 => cubic.is_positive(),
            _ => cubic.is_negative(),
        };
        if ok {
            return (e, a, b, c);
        }
    }
}

/// Random degree-(2,3,4) embedding: a sheared normal-form knot satisfying
/// the closed-form criterion. Shears are invertible linear maps, so the
/// result stays an embedding.
fn random_234_embedding(rng: &mut ChaCha8Rng) -> PolyKnot {
    let (e, a, b, c) = quad_positive(rng);
    let base = deg4_knot(&a, &b, &c, e[0], e[1], e[2]);
    let g = &base.g + &base.f.scale(&rrat(rng));
    let h = &(&base.h + &base.f.scale(&rrat(rng))) + &base.g.scale(&rrat(rng));
    PolyKnot::new(base.f, g, h)
}

fn random_family(rng: &mut ChaCha8Rng, which: usize) -> Family {
    match which {
        0 => Family::Thm12I {
            phi: PolyKnot::new(
                Polynomial::constant(nonzero(rng)),
                rpoly(rng, 1),
                rpoly(rng, 2),
            ),
            psi: PolyKnot::new(rpoly(rng, 1), rpoly(rng, 2), rpoly(rng, 3)),
        },
        1 => Family::Thm12II {
            // constant, linear, cubic: injective via the monotone component
            tau: PolyKnot::new(
                Polynomial::constant(nonzero(rng)),
                rpoly(rng, 1),
                rpoly(rng, 3),
            ),
        },
        2 => {
            let (e, a, b, c) = quad_positive(rng);
            Family::Thm14I { e, a, b, c }
        }
        3 => {
            let (e, a, b, c) = cubic_signed(rng, 0);
            Family::Thm14II { e, a, b, c }
        }
        4 => {
            let base = random_234_embedding(rng);
            let mut shift = |q: &Polynomial| q + &Polynomial::constant(rrat(rng));
            Family::Thm15I {
                phi: PolyKnot::new(shift(&base.f), shift(&base.g), shift(&base.h)),
            }
        }
        5 => Family::Thm15II {
            tau: random_234_embedding(rng),
        },
        6 => {
            let (e, a, b, c) = quad_positive(rng);
            let base = deg4_knot(&a, &b, &c, e[0], e[1], e[2]);
            let mut stretch = |q: &Polynomial| {
                q.scale(&(rat_i(rng.gen_range(1..=5)) / rat_i(rng.gen_range(1..=5))))
            };
            Family::Thm15III {
                sigma: PolyKnot::new(stretch(&base.f), stretch(&base.g), stretch(&base.h)),
            }
        }
        7 => Family::Thm16I {
            phi: PolyKnot::new(
                Polynomial::constant(nonzero(rng)),
                rpoly(rng, 1),
                rpoly(rng, 2),
            ),
            psi: PolyKnot::new(rpoly(rng, 1), rpoly(rng, 3), rpoly(rng, 4)),
        },
        8 => {
            let (e, a, b, c) = quad_positive(rng);
            Family::Thm18F { e, a, b, c }
        }
        9 => {
            let (e, a, b, c) = cubic_signed(rng, 1);
            Family::Thm18G { e, a, b, c }
        }
        10 => {
            let (e, a, b, c) = cubic_signed(rng, -1);
            Family::Thm18H { e, a, b, c }
        }
        11 => Family::Thm18Phi { e: rtriple(rng) },
        _ => Family::Thm18Psi { e: rtriple(rng) },
    }
}

#[test]
fn criterion_7_homotopy_families_on_random_endpoints() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x40707);
    for which in 0..13usize {
        let mut done = 0;
        while done < 20 {
            let family = random_family(&mut rng, which);
            if family.check_hypothesis().is_err() {
                continue; // rejection sampling: draw again
            }
            let report = verify(&family)
                .unwrap_or_else(|e| panic!("family {} failed: {:?} ({:?})", which, e, family));
            assert!(report.interior_degrees_ok, "family {} degrees", which);
            assert_eq!(report.samples, 101);
            done += 1;
        }
    }
    println!("criterion 7 (13 homotopy families x 20 random endpoints x 101 samples): pass");
}

// ---------------------------------------------------------------------------
// 8. crossing-number bound per degree stratum
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_crossing_bound() {
    let corpus = load_corpus().unwrap();
    for entry in &corpus {
        let d = entry.degrees.2;
        let bound = (d - 2) * (d - 3) / 2;
        let dg = extract_diagram(&entry.knot).unwrap();
        assert!(
            dg.crossing_count() <= bound,
            "{}: {} crossings exceed bound {}",
            entry.name,
            dg.crossing_count(),
            bound
        );
        match entry.name.as_str() {
            "4_1" => assert!(dg.crossing_count() <= 6),
            "3_1" | "3_1*" => assert!(dg.crossing_count() <= 3),
            _ => {}
        }
    }
    println!("criterion 8 (crossing count <= (d-2)(d-3)/2 per entry): pass");
}
