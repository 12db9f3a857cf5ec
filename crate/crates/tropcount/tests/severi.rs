mod common;

use common::caporaso_harris::CaporasoHarris;
use tropcount::enumerate::PointConfiguration;
use tropcount::lattice::{LatticePoint, LatticePolygon};
use tropcount::multiplicity::severi;
use tropcount::ringkit::HalfLaurent;

fn classical(d: i64, delta: i64, direction: Option<LatticePoint>) -> (i64, HalfLaurent) {
    let p = LatticePolygon::simplex(d).unwrap();
    let mut cfg = PointConfiguration::stretched(&p, delta);
    if let Some(dir) = direction {
        cfg = cfg.with_direction(dir);
    }
    let t = severi(&p, delta, &cfg).unwrap();
    (t.classical_total, t.refined_total)
}

#[test]
fn recursion_reproduces_known_degrees() {
    let mut ch = CaporasoHarris::default();
    let got: Vec<u128> = [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)]
        .iter()
        .map(|&(d, delta)| ch.severi(d, delta))
        .collect();
    assert_eq!(got, vec![1, 1, 3, 12, 21, 15, 27, 225, 675]);
}

#[test]
fn plane_severi_degrees_match_recursion() {
    let mut ch = CaporasoHarris::default();
    for (d, delta) in [(1, 0), (2, 0), (3, 0), (3, 1), (4, 0), (4, 1), (4, 2)] {
        let (n, refined) = classical(d, delta, None);
        assert_eq!(n as u128, ch.severi(d as u32, delta), "degree {d}, delta {delta}");
        assert!(refined.is_palindromic());
        assert_eq!(refined.eval_at_one(), n);
    }
}

#[test]
fn totals_do_not_depend_on_the_direction() {
    for dir in [LatticePoint::new(2, -3), LatticePoint::new(3, -4), LatticePoint::new(-3, 2), LatticePoint::new(1, -7)] {
        assert_eq!(classical(3, 1, Some(dir)), classical(3, 1, None));
    }
    assert_eq!(classical(4, 1, Some(LatticePoint::new(2, -9))), classical(4, 1, None));
}

#[test]
fn refined_totals_match_refined_recursion() {
    let mut ch = CaporasoHarris::default();
    for (d, delta) in [(2, 0), (3, 1), (4, 1), (4, 2)] {
        let (_, refined) = classical(d, delta, None);
        assert_eq!(refined, ch.refined_severi(d as u32, delta), "degree {d}, delta {delta}");
    }
    assert_eq!(ch.refined_severi(4, 1), HalfLaurent::from_int_terms([(-1, 3), (0, 21), (1, 3)]));
}
