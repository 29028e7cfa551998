use proptest::prelude::*;

use dq_core::symbolic::{
    parse_poly, parse_series, Context, DiffOp, HDiffOp, Mono, Poly, Rat,
};

fn ctx() -> Context {
    Context::new(vec!["x", "u", "v"]).unwrap()
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn arb_mono(max_deg: u32) -> impl Strategy<Value = Mono> {
    proptest::collection::vec((0usize..3, 0u32..=max_deg), 0..3)
        .prop_map(Mono::from_pairs)
        .prop_filter("degree cap", move |m| m.total_degree() <= max_deg)
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((arb_mono(3), arb_rat()), 0..4).prop_map(|terms| {
        let c = ctx();
        let mut p = Poly::zero(&c);
        for (m, r) in terms {
            p = p.add(&Poly::monomial(&c, m, r)).unwrap();
        }
        p
    })
}

fn arb_first_order_op() -> impl Strategy<Value = DiffOp> {
    proptest::collection::vec((arb_mono(2), arb_rat(), 0usize..3), 1..3).prop_map(|terms| {
        let c = ctx();
        let mut op = DiffOp::zero(&c);
        for (m, r, var) in terms {
            op = op
                .add(&DiffOp::term(&c, Poly::monomial(&c, m, r), Mono::var(var)))
                .unwrap();
        }
        op
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        // associativity, commutativity, distributivity: all exact
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn first_order_leibniz(d in arb_first_order_op(), f in arb_poly(), g in arb_poly()) {
        let lhs = d.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = d
            .apply(&f)
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&d.apply(&g).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative(
        a in arb_first_order_op(),
        b in arb_first_order_op(),
        c in arb_first_order_op(),
    ) {
        let order = 3;
        let ha = HDiffOp::from_op(&a, order);
        let hb = HDiffOp::from_op(&b, order);
        let hc = HDiffOp::from_op(&c, order);
        let left = ha.compose(&hb).unwrap().compose(&hc).unwrap();
        let right = ha.compose(&hb.compose(&hc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn print_parse_roundtrip_poly(p in arb_poly()) {
        let c = ctx();
        let printed = p.to_string();
        let reparsed = parse_poly(&printed, &c).unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn print_parse_roundtrip_series(
        p0 in arb_poly(),
        p1 in arb_poly(),
        p2 in arb_poly(),
    ) {
        let c = ctx();
        let s = dq_core::symbolic::HSeries::from_coeffs(&c, vec![p0, p1, p2]).unwrap();
        let printed = s.to_string();
        let reparsed = parse_series(&printed, &c, 3).unwrap();
        prop_assert_eq!(reparsed, s);
    }

    #[test]
    fn composition_matches_pointwise(
        a in arb_first_order_op(),
        b in arb_first_order_op(),
        f in arb_poly(),
    ) {
        let composed = a.compose(&b).unwrap().apply(&f).unwrap();
        let stepwise = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(composed, stepwise);
    }
}
