//! Acceptance criteria, one line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::caporaso_harris::CaporasoHarris;
use tropcount::enumerate::{enumerate_curves, EnumerationResult, PointConfiguration};
use tropcount::lattice::{LatticePoint, LatticePolygon};
use tropcount::motvol::{cell_volume, chi_prime, semistable_volume, PolyhedronDescriptor, StratumDatum, VolumeVariant};
use tropcount::multiplicity::{refined_multiplicity, totals};
use tropcount::ringkit::{HalfLaurent, MotivicClass};
use tropcount::tropcurve::{check_balanced, face_census, CaseId, FaceCensus, FaceType};
use tropcount::verify::{chi_universal_curve, conjecture_check, min_doubled_area, nodal_count, ContributionTable, Layer};
use tropcount::zeta::{forward_series, functional_equation_check, invert_series, required_order, ZetaInput, ZetaVariant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(terms: &[(i64, i64)]) -> HalfLaurent {
    HalfLaurent::from_int_terms(terms.iter().copied())
}

fn cubic() -> LatticePolygon {
    LatticePolygon::simplex(3).unwrap()
}

fn nine_curves() -> PointConfiguration {
    PointConfiguration::stretched(&cubic(), 1)
}

fn ten_curves() -> PointConfiguration {
    nine_curves().with_direction(LatticePoint::new(2, -3))
}

fn enumerate(p: &LatticePolygon, delta: i64, cfg: &PointConfiguration) -> Result<EnumerationResult, String> {
    enumerate_curves(p, delta, cfg).map_err(|e| e.to_string())
}

fn per_curve_values() -> Outcome {
    let one = HalfLaurent::one();
    let node = ints(&[(-1, 1), (0, 2), (1, 1)]);
    let triple = ints(&[(-1, 1), (0, 1), (1, 1)]);
    let mut lines = Vec::new();
    for (cfg, special) in [(nine_curves(), &node), (ten_curves(), &triple)] {
        let r = enumerate(&cubic(), 1, &cfg)?;
        let mut ones = 0;
        let mut specials = 0;
        for c in &r.curves {
            let n = refined_multiplicity(c).map_err(|e| e.to_string())?.refined;
            if n == one {
                ones += 1;
            } else if &n == special {
                specials += 1;
            } else {
                return Err(format!("unexpected multiplicity {n}"));
            }
        }
        ensure(specials == 1 && ones == r.curves.len() - 1, || {
            format!("{} curves: {ones} of multiplicity 1, {specials} special", r.curves.len())
        })?;
        lines.push(format!("{} curves: {ones} x 1 + {special}", r.curves.len()));
    }
    Ok(lines.join("; "))
}

fn cubic_totals() -> Outcome {
    let expected = ints(&[(-1, 1), (0, 10), (1, 1)]);
    for cfg in [nine_curves(), ten_curves()] {
        let r = enumerate(&cubic(), 1, &cfg)?;
        let t = totals(&r).map_err(|e| e.to_string())?;
        ensure(t.refined_total == expected, || format!("refined total {}", t.refined_total))?;
        ensure(t.refined_total.eval_at_one() == 12 && t.classical_total == 12, || "classical total".into())?;
        ensure(t.refined_total.eval_at_minus_one().unwrap() == 8 && t.welschinger_total == 8, || {
            format!("real total {}", t.welschinger_total)
        })?;
    }
    Ok(format!("{expected}, 12, 8 for 9 and 10 curves"))
}

/// The right-hand sides `y * {1, y + 2 + 1/y, y + 2 + 1/y, y + 1 + 1/y}`.
fn target(case_id: CaseId) -> HalfLaurent {
    match case_id {
        CaseId::FourValent => ints(&[(1, 1)]),
        CaseId::Weight2Marked | CaseId::Weight2Unmarked => ints(&[(0, 1), (1, 2), (2, 1)]),
        CaseId::Mult3Vertex => ints(&[(0, 1), (1, 1), (2, 1)]),
        CaseId::Smooth => unreachable!(),
    }
}

fn genus_one_identities() -> Outcome {
    let mut n = 0;
    for a in (9..=29).step_by(2) {
        for case_id in CaseId::NODAL {
            let chi = chi_universal_curve(&FaceCensus::expected(case_id, a, 1), 1).map_err(|e| e.to_string())?;
            ensure(chi == target(case_id), || format!("{case_id:?} at A = {a}: {chi}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} identities"))
}

fn general_genus_identities() -> Outcome {
    let mut checked = 0;
    let mut skipped = 0;
    for a in 5..=30 {
        for g in 1..=10 {
            for case_id in CaseId::NODAL {
                if a < min_doubled_area(case_id, g) {
                    skipped += 1;
                    continue;
                }
                let n = nodal_count(&FaceCensus::expected(case_id, a, g), g).map_err(|e| e.to_string())?;
                ensure(n == target(case_id), || format!("{case_id:?} at A = {a}, g = {g}: {n}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identities, {skipped} grid points with negative face counts skipped"))
}

/// Per-row chi_{-y} values as stated for each face and layer.
fn quoted_rows() -> Vec<(CaseId, FaceType, Layer, Vec<i64>)> {
    use CaseId::*;
    use FaceType::{BoundedEdge, FourValentVertex, OnEdgeVertex, OrdinaryVertex, UnboundedEdge, Weight2Edge};
    use Layer::*;
    let mut rows = vec![
        (FourValent, BoundedEdge, Face, vec![-1, 2, -1]),
        (FourValent, UnboundedEdge, Face, vec![-1, 1]),
        (FourValent, OrdinaryVertex, Face, vec![2, -3, 1]),
        (FourValent, FourValentVertex, Face, vec![3, -3, 1]),
        (Weight2Marked, BoundedEdge, Face, vec![-2, 3, -1]),
        (Weight2Marked, BoundedEdge, Thickened, vec![1, -1]),
        (Weight2Marked, UnboundedEdge, Face, vec![-2, 1]),
        (Weight2Marked, UnboundedEdge, Thickened, vec![1]),
        (Weight2Marked, OrdinaryVertex, Face, vec![4, -4, 1]),
        (Weight2Marked, OrdinaryVertex, Thickened, vec![-2, 1]),
        (Weight2Marked, OnEdgeVertex, Face, vec![7, -4, 1]),
        (Weight2Marked, OnEdgeVertex, Thickened, vec![-3, 1]),
        (Weight2Marked, Weight2Edge, Face, vec![-5, 6, -1]),
        (Weight2Marked, Weight2Edge, Thickened, vec![2, -2]),
    ];
    for case_id in [Weight2Unmarked, Mult3Vertex] {
        rows.extend([
            (case_id, BoundedEdge, Face, vec![-1, 2, -1]),
            (case_id, BoundedEdge, Thickened, vec![1, -1]),
            (case_id, UnboundedEdge, Face, vec![-1, 1]),
            (case_id, UnboundedEdge, Thickened, vec![1]),
            (case_id, OrdinaryVertex, Face, vec![2, -3, 1]),
            (case_id, OrdinaryVertex, Thickened, vec![-2, 1]),
        ]);
    }
    rows.extend([
        (Weight2Unmarked, OnEdgeVertex, Face, vec![4, -3, 1]),
        (Weight2Unmarked, OnEdgeVertex, Thickened, vec![-3, 1]),
        (Weight2Unmarked, Weight2Edge, Face, vec![-3, 4, -1]),
        (Weight2Unmarked, Weight2Edge, Thickened, vec![2, -2]),
        (Mult3Vertex, FaceType::Mult3Vertex, Face, vec![4, -2, 1]),
        (Mult3Vertex, FaceType::Mult3Vertex, Thickened, vec![-3]),
    ]);
    rows
}

fn table_rows() -> Outcome {
    let table = ContributionTable::standard();
    let quoted = quoted_rows();
    ensure(table.rows.len() == quoted.len(), || format!("{} rows, {} quoted", table.rows.len(), quoted.len()))?;
    let mut matched = 0;
    for (case_id, face, layer, poly) in &quoted {
        let row = table
            .rows
            .iter()
            .find(|r| r.case_id == *case_id && r.face == *face && r.layer == *layer)
            .ok_or_else(|| format!("missing row {case_id:?} {face:?} {layer:?}"))?;
        let chi = cell_volume(&row.cell, VolumeVariant::Closure)
            .and_then(|v| v.chi_y())
            .map_err(|e| e.to_string())?;
        ensure(chi == HalfLaurent::from_poly(poly), || format!("{case_id:?} {face:?} {layer:?}: {chi}"))?;
        matched += 1;
    }
    Ok(format!("{matched}/{} rows", quoted.len()))
}

/// A relatively open polyhedron built as a product of elementary factors.
#[derive(Debug, Clone)]
enum Factor {
    Point,
    Segment,
    Ray,
    Line,
    /// Open simplex of the given dimension.
    Simplex(u32),
}

/// Euler characteristic with compact supports of an open simplex, from the closed simplex
/// having characteristic 1 and the face decomposition.
fn open_simplex_chi(n: u32) -> i64 {
    let binom = |n: u32, k: u32| (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64);
    let mut chi = vec![1i64];
    for d in 1..=n {
        let faces: i64 = (0..d).map(|k| binom(d + 1, k + 1) * chi[k as usize]).sum();
        chi.push(1 - faces);
    }
    chi[n as usize]
}

/// Euler characteristic of one factor cut down to `[-r, r]` for large `r`.
fn truncated_chi(f: &Factor) -> i64 {
    match f {
        Factor::Point => 1,
        Factor::Segment => -1,
        // (a, r]: an open interval plus a point.
        Factor::Ray => 0,
        // [-r, r]
        Factor::Line => 1,
        Factor::Simplex(n) => open_simplex_chi(*n),
    }
}

fn factor_dim(f: &Factor) -> u32 {
    match f {
        Factor::Point => 0,
        Factor::Segment | Factor::Ray | Factor::Line => 1,
        Factor::Simplex(n) => *n,
    }
}

fn describe(factors: &[Factor]) -> PolyhedronDescriptor {
    let dim = factors.iter().map(factor_dim).sum();
    let bounded = !factors.iter().any(|f| matches!(f, Factor::Ray | Factor::Line));
    let affine_subspace = factors.iter().all(|f| matches!(f, Factor::Point | Factor::Line | Factor::Simplex(0)));
    PolyhedronDescriptor { dim, bounded, affine_subspace }
}

fn chi_prime_suite() -> Outcome {
    let bounded = prop_oneof![
        Just(Factor::Point),
        Just(Factor::Segment),
        (0u32..6).prop_map(Factor::Simplex)
    ];
    // Pointed polyhedra mix bounded factors with rays; affine subspaces use lines only.
    let pointed = prop::collection::vec(prop_oneof![bounded.clone(), Just(Factor::Ray)], 1..5);
    let affine = prop::collection::vec(prop_oneof![Just(Factor::Point), Just(Factor::Line)], 1..5);
    let shape = prop_oneof![prop::collection::vec(bounded, 1..5), pointed, affine];
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    let kinds = std::cell::Cell::new([0usize; 3]);
    runner
        .run(&shape, |factors| {
            let d = describe(&factors);
            let oracle: i64 = factors.iter().map(truncated_chi).product();
            prop_assert_eq!(chi_prime(&d), oracle, "{:?}", factors);
            let mut k = kinds.get();
            k[if d.bounded { 0 } else if d.affine_subspace { 1 } else { 2 }] += 1;
            kinds.set(k);
            if let [Factor::Simplex(n)] = factors[..] {
                prop_assert_eq!(chi_prime(&d), if n % 2 == 0 { 1 } else { -1 });
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for n in 0..8 {
        let d = PolyhedronDescriptor { dim: n, bounded: true, affine_subspace: n == 0 };
        ensure(chi_prime(&d) == open_simplex_chi(n), || format!("open simplex of dimension {n}"))?;
    }
    let kinds = kinds.get();
    Ok(format!(
        "100 descriptors ({} bounded, {} affine, {} other) plus open simplices up to dimension 7",
        kinds[0], kinds[1], kinds[2]
    ))
}

/// chi_{-y} of a smooth projective curve of genus g from its Hodge numbers.
fn curve_chi_y(g: i64) -> HalfLaurent {
    let (h00, h10) = (1, g);
    let (h01, h11) = (g, 1);
    // sum_p (-y)^p sum_q (-1)^q h^{p,q}
    HalfLaurent::from_poly(&[h00 - h01, -(h10 - h11)])
}

fn semistable() -> Outcome {
    let punctured_line = MotivicClass::l_minus(1);
    let cycle = [
        StratumDatum { stratum_class: punctured_line.clone(), depth: 1 },
        StratumDatum { stratum_class: punctured_line, depth: 1 },
        StratumDatum { stratum_class: MotivicClass::constant(2), depth: 2 },
    ];
    let vol = semistable_volume(&cycle).map_err(|e| e.to_string())?;
    ensure(vol.is_zero(), || format!("cycle volume {vol:?}"))?;
    let chi = vol.chi_y().map_err(|e| e.to_string())?;
    ensure(chi.is_zero() && chi == curve_chi_y(1), || format!("cycle chi {chi}"))?;

    let smooth = [StratumDatum { stratum_class: MotivicClass::curve(2, 0), depth: 1 }];
    let chi = semistable_volume(&smooth).and_then(|v| v.chi_y()).map_err(|e| e.to_string())?;
    ensure(chi == HalfLaurent::from_poly(&[-1, -1]) && chi == curve_chi_y(2), || format!("genus 2 chi {chi}"))?;
    Ok("cycle of two lines gives 0, genus 2 gives -1 - y".into())
}

fn zeta_round_trip() -> Outcome {
    let coefficient = prop::collection::vec((-6i64..=6, -5i64..=5), 0..4).prop_map(HalfLaurent::from_half_terms);
    let input = (0i64..=5).prop_flat_map(move |g| (Just(g), prop::collection::vec(coefficient.clone(), (g + 1) as usize)));
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&input, |(g, n)| {
            let series = forward_series(&n, g, required_order(g));
            let back = invert_series(&ZetaInput::new(g, series.into_coefficients()), ZetaVariant::ChiY).unwrap();
            prop_assert_eq!(&back.n[..n.len()], &n[..]);
            prop_assert!(back.n[n.len()..].iter().all(HalfLaurent::is_zero));
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    // 1 + y q / ((1 - q)(1 - y q))
    let h: Vec<HalfLaurent> = (0..required_order(1) as i64)
        .map(|i| if i == 0 { HalfLaurent::one() } else { ints(&(1..=i).map(|e| (e, 1)).collect::<Vec<_>>()) })
        .collect();
    let r = invert_series(&ZetaInput::new(1, h), ZetaVariant::ChiY).map_err(|e| e.to_string())?;
    ensure(r.n[0] == HalfLaurent::one() && r.n[1] == HalfLaurent::y(), || format!("nodal curve gives {:?}", r.n))?;
    ensure(functional_equation_check(&r.n[..2], 1), || "functional equation fails for the nodal curve".into())?;
    Ok("1000 round trips; nodal genus 1 gives (1, y)".into())
}

fn quartic_cross_check() -> Outcome {
    let p = LatticePolygon::simplex(4).unwrap();
    let r = enumerate(&p, 1, &PointConfiguration::stretched(&p, 1))?;
    let t = totals(&r).map_err(|e| e.to_string())?;
    let oracle = CaporasoHarris::default().severi(4, 1);
    ensure(oracle == 27, || format!("recursion gives {oracle}"))?;
    ensure(t.classical_total as u128 == oracle, || format!("enumeration gives {}", t.classical_total))?;
    ensure(t.refined_total == t.refined_total.invert_variable(), || "refined total is not symmetric".into())?;
    ensure(t.refined_total.eval_at_one() == 27, || "refined total does not specialize".into())?;
    Ok(format!("{} curves, {}", r.curves.len(), t.refined_total))
}

fn property_suite() -> Outcome {
    let mut curves = 0;
    let mut compared = 0;
    let mut instances: Vec<(LatticePolygon, i64)> = Vec::new();
    for p in common::desk_polygons() {
        for delta in 0..=p.genus().min(1) {
            instances.push((p.clone(), delta));
        }
    }
    instances.push((LatticePolygon::simplex(4).unwrap(), 2));
    for (p, delta) in instances {
        let g = p.genus();
        let r = enumerate(&p, delta, &PointConfiguration::stretched(&p, delta))?;
        for c in &r.curves {
            let at = || format!("{:?} delta {delta} curve {}", p.vertices(), c.key());
            ensure(check_balanced(c).is_empty(), || format!("{}: unbalanced", at()))?;
            let rec = refined_multiplicity(c).map_err(|e| e.to_string())?;
            ensure(rec.refined.is_integral() && rec.refined.is_palindromic(), || format!("{}: shape", at()))?;
            ensure(rec.refined.eval_at_one() == rec.classical, || format!("{}: value at 1", at()))?;
            if delta <= 1 {
                let census = face_census(c, delta).map_err(|e| e.to_string())?;
                let a = p.doubled_area();
                let expected = FaceCensus::expected(census.case_id, a, g);
                ensure(census == expected, || format!("{}: census {:?}", at(), census.counts))?;
            }
            if delta == 1 && g >= 1 {
                let check = conjecture_check(c, g, 1).map_err(|e| e.to_string())?;
                ensure(check.equal, || format!("{}: {} vs {}", at(), check.n_refined, check.n_delta))?;
                compared += 1;
            }
            curves += 1;
        }
    }
    Ok(format!("{curves} curves, {compared} nodal comparisons"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("per-curve multiplicities of nodal cubics", Duration::from_secs(5), per_curve_values),
        ("refined totals of nodal cubics", Duration::from_secs(10), cubic_totals),
        ("genus-one universal-curve identities", Duration::from_secs(1), genus_one_identities),
        ("general-genus nodal identities", Duration::from_secs(1), general_genus_identities),
        ("contribution table rows", Duration::from_secs(60), table_rows),
        ("bounded Euler characteristic of polyhedra", Duration::from_secs(60), chi_prime_suite),
        ("semistable volumes", Duration::from_secs(60), semistable),
        ("zeta round trip and nodal closed form", Duration::from_secs(5), zeta_round_trip),
        ("quartic Severi degree against recursion", Duration::from_secs(120), quartic_cross_check),
        ("curve property suite", Duration::from_secs(300), property_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if took <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if verdict.0 == "FAIL" {
            failed += 1;
        }
        println!("[{}] {}. {} ({:.3}s): {}", verdict.0, i + 1, name, took.as_secs_f64(), verdict.1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
