#![allow(dead_code)]

pub mod caporaso_harris;

use tropcount::lattice::{LatticePoint, LatticePolygon};

/// Polygons small enough to enumerate quickly, covering several shapes and genera.
pub fn desk_polygons() -> Vec<LatticePolygon> {
    let mut v = vec![
        LatticePolygon::simplex(1).unwrap(),
        LatticePolygon::simplex(2).unwrap(),
        LatticePolygon::simplex(3).unwrap(),
        LatticePolygon::simplex(4).unwrap(),
        LatticePolygon::rectangle(1, 1).unwrap(),
        LatticePolygon::rectangle(2, 1).unwrap(),
        LatticePolygon::rectangle(2, 2).unwrap(),
        LatticePolygon::rectangle(3, 2).unwrap(),
    ];
    for c in [
        &[(0, 0), (3, 0), (0, 2)][..],
        &[(0, 0), (2, 0), (3, 1), (1, 2), (0, 1)][..],
        &[(0, 0), (4, 0), (0, 2)][..],
        &[(1, 0), (2, 1), (1, 2), (0, 1)][..],
        &[(0, 0), (3, 1), (1, 3)][..],
        &[(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)][..],
    ] {
        v.push(LatticePolygon::from_coords(c).unwrap());
    }
    v
}

/// Lattice points counted by scanning the bounding box with orientation tests only.
pub fn brute_force_counts(vertices: &[LatticePoint]) -> (i64, i64) {
    let n = vertices.len();
    let xs = vertices.iter().map(|p| p.x);
    let ys = vertices.iter().map(|p| p.y);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut interior = 0;
    let mut boundary = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let mut zero = false;
            let mut inside = true;
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
                if c < 0 {
                    inside = false;
                }
                if c == 0 {
                    let within = x >= a.x.min(b.x) && x <= a.x.max(b.x) && y >= a.y.min(b.y) && y <= a.y.max(b.y);
                    if within {
                        zero = true;
                    }
                }
            }
            if inside && zero {
                boundary += 1;
            } else if inside {
                interior += 1;
            }
        }
    }
    (interior, boundary)
}
