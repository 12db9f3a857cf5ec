use proptest::prelude::*;
use tropcount::ringkit::HalfLaurent;
use tropcount::zeta::{forward_series, functional_equation_check, invert_series, required_order, ZetaInput, ZetaVariant};

fn coefficient() -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..4).prop_map(HalfLaurent::from_half_terms)
}

fn genus_and_n() -> impl Strategy<Value = (i64, Vec<HalfLaurent>)> {
    (0i64..=5).prop_flat_map(|g| (Just(g), prop::collection::vec(coefficient(), (g + 1) as usize)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn round_trip((g, n) in genus_and_n(), extra in 0usize..3) {
        let order = required_order(g) + extra;
        let series = forward_series(&n, g, order);
        prop_assert_eq!(series.offset(), 1 - g);
        let back = invert_series(&ZetaInput::new(g, series.into_coefficients()), ZetaVariant::ChiY).unwrap();
        prop_assert_eq!(back.determined, order);
        prop_assert_eq!(&back.n[..n.len()], &n[..]);
        prop_assert!(back.n[n.len()..].iter().all(HalfLaurent::is_zero));
    }

    #[test]
    fn euler_variant_specializes((g, n) in genus_and_n(), noise in prop::collection::vec(coefficient(), 8)) {
        let order = required_order(g) + 2;
        let mut h = forward_series(&n, g, order).into_coefficients();
        for (x, e) in h.iter_mut().zip(noise) {
            *x += &e;
        }
        let input = ZetaInput::new(g, h);
        let chi = invert_series(&input, ZetaVariant::ChiY).unwrap();
        let euler = invert_series(&input, ZetaVariant::Euler).unwrap();
        for (a, b) in chi.n.iter().zip(&euler.n) {
            prop_assert_eq!(HalfLaurent::constant(a.eval_at_one()), b.clone());
        }
    }

    #[test]
    fn functional_equation_on_short_sequences((g, n) in genus_and_n()) {
        prop_assert!(functional_equation_check(&n, g));
    }

    #[test]
    fn leading_coefficient_is_read_off((g, n) in genus_and_n()) {
        let h = forward_series(&n, g, required_order(g)).into_coefficients();
        prop_assert_eq!(h[0].clone(), n[0].clone());
    }
}

/// `1 + y q / ((1 - q)(1 - y q))`, the series of a rational curve with one node.
fn nodal_genus_one(order: usize) -> Vec<HalfLaurent> {
    let mut h = vec![HalfLaurent::one()];
    for i in 1..order {
        h.push(HalfLaurent::from_int_terms((1..=i as i64).map(|e| (e, 1))));
    }
    h
}

#[test]
fn nodal_closed_form() {
    for order in 4..9 {
        let r = invert_series(&ZetaInput::new(1, nodal_genus_one(order)), ZetaVariant::ChiY).unwrap();
        assert_eq!(r.n[0], HalfLaurent::one());
        assert_eq!(r.n[1], HalfLaurent::y());
        assert!(r.n[2..].iter().all(HalfLaurent::is_zero));
        assert!(functional_equation_check(&r.n[..2], 1));
    }
}

#[test]
fn smooth_genus_one_from_symmetric_products() {
    // For a smooth genus-1 curve the symmetric-product series is (1 - q)(1 - y q) / ((1 - q)(1 - y q)) = 1.
    let mut h = vec![HalfLaurent::zero(); 6];
    h[0] = HalfLaurent::one();
    let r = invert_series(&ZetaInput::new(1, h), ZetaVariant::ChiY).unwrap();
    assert_eq!(r.n[0], HalfLaurent::one());
    assert!(r.n[1..].iter().all(HalfLaurent::is_zero));
}
