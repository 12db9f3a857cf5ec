mod common;

use proptest::prelude::*;
use tropcount::lattice::{LatticePoint, LatticePolygon};

fn hull_polygon() -> impl Strategy<Value = Option<LatticePolygon>> {
    prop::collection::vec((-20i64..=20, -20i64..=20), 3..12).prop_map(|pts| {
        let pts: Vec<LatticePoint> = pts.into_iter().map(|(x, y)| LatticePoint::new(x, y)).collect();
        LatticePolygon::convex_hull(&pts).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn pick_identity(poly in hull_polygon()) {
        let Some(poly) = poly else { return Ok(()) };
        let s = poly.stats();
        let (interior, boundary) = common::brute_force_counts(poly.vertices());
        prop_assert_eq!(s.interior_points, interior);
        prop_assert_eq!(s.boundary_length, boundary);
        prop_assert_eq!(s.total_points, interior + boundary);
        prop_assert_eq!(s.doubled_area, 2 * interior + boundary - 2);
        prop_assert_eq!(poly.lattice_points().len() as i64, s.total_points);
    }

    #[test]
    fn degree_is_balanced(poly in hull_polygon()) {
        let Some(poly) = poly else { return Ok(()) };
        let mut sum = LatticePoint::new(0, 0);
        let mut weight = 0;
        for d in poly.degree_directions() {
            sum = sum + d.multiplicity * d.direction;
            weight += d.multiplicity;
        }
        prop_assert_eq!(sum, LatticePoint::new(0, 0));
        prop_assert_eq!(weight, poly.boundary_length());
    }

    #[test]
    fn json_round_trip(poly in hull_polygon(), dx in -5i64..5, dy in -5i64..5) {
        let Some(poly) = poly else { return Ok(()) };
        let moved = poly.translated(LatticePoint::new(dx, dy));
        let text = serde_json::to_string(&moved).unwrap();
        let back: LatticePolygon = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.stats(), poly.stats());
    }
}
