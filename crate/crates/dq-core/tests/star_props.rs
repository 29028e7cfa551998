//! Seeded property suites for the star engine, mirroring the invariants the
//! acceptance gate quantifies over.

use dq_core::sample::Sampler;
use dq_core::star::{gauge_transport, GaugeMorphism, PbwRelations, StarProduct};
use dq_core::symbolic::{rat_int, Context, HSeries, Poly};

fn xu() -> Context {
    Context::new(vec!["x", "u"]).unwrap()
}

fn random_weyl(s: &mut Sampler, ctx: &Context, order: usize) -> StarProduct {
    StarProduct::weyl(ctx, order, s.skew_matrix(ctx.len())).unwrap()
}

#[test]
fn unit_is_neutral_across_kinds() {
    let c = xu();
    let order = 6;
    let mut s = Sampler::new(101);
    let weyl = random_weyl(&mut s, &c, order);
    let normal = StarProduct::normal_cotangent(&c, order).unwrap();
    let pbw = StarProduct::pbw(
        &c,
        order,
        PbwRelations::new(&c, vec![((0, 1), Poly::constant(&c, rat_int(-1)))]).unwrap(),
    )
    .unwrap();
    let one = HSeries::one(&c, order);
    for sp in [&weyl, &normal, &pbw] {
        for _ in 0..10 {
            let f = HSeries::from_poly(&s.poly(&c, 4, 3), order);
            assert_eq!(sp.star_mul(&one, &f).unwrap(), f);
            assert_eq!(sp.star_mul(&f, &one).unwrap(), f);
        }
    }
}

#[test]
fn associativity_for_constant_poisson() {
    let c = Context::new(vec!["x1", "x2", "x3"]).unwrap();
    let order = 8;
    let mut s = Sampler::new(202);
    for trial in 0..25 {
        let sp = random_weyl(&mut s, &c, order);
        let f = HSeries::from_poly(&s.poly(&c, 4, 3), order);
        let g = HSeries::from_poly(&s.poly(&c, 4, 3), order);
        let h = HSeries::from_poly(&s.poly(&c, 4, 3), order);
        let defect = sp.assoc_defect(&f, &g, &h).unwrap();
        assert!(defect.is_zero(), "trial {trial}: defect {defect}");
    }
}

#[test]
fn pbw_word_products_reassociate() {
    // words of length <= 5, every parenthesization agrees
    let c = Context::new(vec!["x1", "x2"]).unwrap();
    let order = 6;
    let rel = PbwRelations::new(&c, vec![((0, 1), Poly::var(&c, 0))]).unwrap();
    let sp = StarProduct::pbw(&c, order, rel).unwrap();
    let mut s = Sampler::new(303);
    for _ in 0..10 {
        let len = s.usize_in(2, 5);
        let letters: Vec<usize> = (0..len).map(|_| s.usize_in(0, 1)).collect();
        let atoms: Vec<HSeries> = letters
            .iter()
            .map(|&v| HSeries::from_poly(&Poly::var(&c, v), order))
            .collect();
        let mut results = Vec::new();
        all_products(&sp, &atoms, &mut results);
        for r in &results[1..] {
            assert_eq!(r, &results[0], "letters {letters:?}");
        }
    }
}

fn all_products(sp: &StarProduct, atoms: &[HSeries], out: &mut Vec<HSeries>) {
    if atoms.len() == 1 {
        out.push(atoms[0].clone());
        return;
    }
    for split in 1..atoms.len() {
        let mut left = Vec::new();
        all_products(sp, &atoms[..split], &mut left);
        let mut right = Vec::new();
        all_products(sp, &atoms[split..], &mut right);
        for l in &left {
            for r in &right {
                out.push(sp.star_mul(l, r).unwrap());
            }
        }
    }
}

#[test]
fn bracket_axioms() {
    let c = Context::new(vec!["x1", "x2", "x3"]).unwrap();
    let mut s = Sampler::new(404);
    for _ in 0..10 {
        let sp = random_weyl(&mut s, &c, 4);
        for _ in 0..5 {
            let f = s.poly(&c, 3, 3);
            let g = s.poly(&c, 3, 3);
            let h = s.poly(&c, 3, 3);
            // antisymmetry
            assert_eq!(
                sp.poisson_bracket(&f, &g).unwrap(),
                sp.poisson_bracket(&g, &f).unwrap().neg()
            );
            // derivation in the first slot
            let lhs = sp.poisson_bracket(&f.mul(&g).unwrap(), &h).unwrap();
            let rhs = f
                .mul(&sp.poisson_bracket(&g, &h).unwrap())
                .unwrap()
                .add(&g.mul(&sp.poisson_bracket(&f, &h).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            // Jacobi
            let jac = sp
                .poisson_bracket(&f, &sp.poisson_bracket(&g, &h).unwrap())
                .unwrap()
                .add(&sp.poisson_bracket(&g, &sp.poisson_bracket(&h, &f).unwrap()).unwrap())
                .unwrap()
                .add(&sp.poisson_bracket(&h, &sp.poisson_bracket(&f, &g).unwrap()).unwrap())
                .unwrap();
            assert!(jac.is_zero());
        }
    }
}

#[test]
fn sigma0_is_an_algebra_map() {
    let c = xu();
    let order = 5;
    let mut s = Sampler::new(505);
    let sp = StarProduct::normal_cotangent(&c, order).unwrap();
    for _ in 0..20 {
        let f = s.series(&c, order, 3, 3);
        let g = s.series(&c, order, 3, 3);
        let prod = sp.star_mul(&f, &g).unwrap();
        assert_eq!(prod.sigma0(), &f.sigma0().mul(g.sigma0()).unwrap());
    }
}

#[test]
fn gauge_invariance_of_the_antisymmetric_part() {
    let c = xu();
    let order = 4;
    let mut s = Sampler::new(606);
    let sp = StarProduct::normal_cotangent(&c, order).unwrap();
    let p1 = sp.bidiff_ops().unwrap()[1].antisymmetrize();
    for _ in 0..10 {
        let r1 = s.gauge_op(&c, 2, 2);
        let r2 = s.gauge_op(&c, 2, 1);
        let phi = GaugeMorphism::new(&c, order, vec![r1, r2]).unwrap();
        let sp2 = gauge_transport(&sp, &phi).unwrap();
        assert_eq!(sp2.bidiff_ops().unwrap()[1].antisymmetrize(), p1);
    }
}

#[test]
fn opposite_is_an_involution() {
    let c = xu();
    let order = 5;
    let mut s = Sampler::new(707);
    let weyl = random_weyl(&mut s, &c, order);
    let opop = weyl.opposite().opposite();
    for _ in 0..10 {
        let f = HSeries::from_poly(&s.poly(&c, 3, 3), order);
        let g = HSeries::from_poly(&s.poly(&c, 3, 3), order);
        assert_eq!(opop.star_mul(&f, &g).unwrap(), weyl.star_mul(&f, &g).unwrap());
        // and the opposite really swaps
        assert_eq!(
            weyl.opposite().star_mul(&f, &g).unwrap(),
            weyl.star_mul(&g, &f).unwrap()
        );
    }
}

#[test]
fn external_restricts_to_factors() {
    let cx = xu();
    let cy = Context::new(vec!["y", "v"]).unwrap();
    let order = 5;
    let mut s = Sampler::new(808);
    let spx = random_weyl(&mut s, &cx, order);
    let spy = random_weyl(&mut s, &cy, order);
    let ext = spx.external_product(&spy).unwrap();
    let t = ext.context().clone();
    for _ in 0..10 {
        let fx = s.poly(&cx, 3, 2);
        let gx = s.poly(&cx, 3, 2);
        let lifted = ext
            .star_polys(&fx.embed(&t, &[0, 1]), &gx.embed(&t, &[0, 1]))
            .unwrap();
        let in_factor = spx.star_polys(&fx, &gx).unwrap();
        for k in 0..order {
            assert_eq!(lifted.coeff(k), &in_factor.coeff(k).embed(&t, &[0, 1]));
        }
    }
}

#[test]
fn associativity_for_centralizer_products() {
    use dq_core::star::{centralizer_star, StarKind};
    use dq_core::symbolic::{DiffOp, HDiffOp, Mono};
    let c = xu();
    let order = 5;
    // left/right multiplication families of the normal-ordered product
    let x = DiffOp::mul_by(&Poly::var(&c, 0));
    let u = DiffOp::mul_by(&Poly::var(&c, 1));
    let dx = DiffOp::term(&c, Poly::one(&c), Mono::var(0));
    let du = DiffOp::term(&c, Poly::one(&c), Mono::var(1));
    let a_ops = vec![
        HDiffOp::from_op(&x, order),
        HDiffOp::from_op(&u, order).add(&HDiffOp::h_term(&dx, 1, order).unwrap()).unwrap(),
    ];
    let b_ops = vec![
        HDiffOp::from_op(&x, order).add(&HDiffOp::h_term(&du, 1, order).unwrap()).unwrap(),
        HDiffOp::from_op(&u, order),
    ];
    let cp = centralizer_star(&c, order, a_ops, b_ops).unwrap();
    let sp = StarProduct::new(&c, order, StarKind::Centralizer(cp)).unwrap();
    let mut s = Sampler::new(909);
    for trial in 0..50 {
        let f = HSeries::from_poly(&s.poly(&c, 4, 2), order);
        let g = HSeries::from_poly(&s.poly(&c, 4, 2), order);
        let h = HSeries::from_poly(&s.poly(&c, 4, 2), order);
        let defect = sp.assoc_defect(&f, &g, &h).unwrap();
        assert!(defect.is_zero(), "trial {trial}");
    }
}

#[test]
fn pbw_specific_triple_reassociates() {
    // (x2 * x1) * x2 = x2 * (x1 * x2) under [x1, x2] = h x1
    let c = Context::new(vec!["x1", "x2"]).unwrap();
    let rel = PbwRelations::new(&c, vec![((0, 1), Poly::var(&c, 0))]).unwrap();
    let sp = StarProduct::pbw(&c, 6, rel).unwrap();
    let x1 = HSeries::from_poly(&Poly::var(&c, 0), 6);
    let x2 = HSeries::from_poly(&Poly::var(&c, 1), 6);
    let defect = sp.assoc_defect(&x2, &x1, &x2).unwrap();
    assert!(defect.is_zero());
}

#[test]
fn external_of_normals_is_the_normal_on_the_union() {
    use dq_core::symbolic::{rat_int, Rat};
    let cx = xu();
    let cy = Context::new(vec!["y", "v"]).unwrap();
    let order = 5;
    let spx = StarProduct::normal_cotangent(&cx, order).unwrap();
    let spy = StarProduct::normal_cotangent(&cy, order).unwrap();
    let ext = spx.external_product(&spy).unwrap();
    // the union normal product for the block-diagonal bracket matrix
    let union = ext.context().clone();
    let z = || rat_int(0);
    let one = || Rat::from_integer(1.into());
    let skew = vec![
        vec![z(), -one(), z(), z()],
        vec![one(), z(), z(), z()],
        vec![z(), z(), z(), -one()],
        vec![z(), z(), one(), z()],
    ];
    let direct = StarProduct::normal(&union, order, skew).unwrap();
    // identical closed forms: same twist matrices, hence the same operators
    let a = serde_json::to_string(&ext.to_config().unwrap()).unwrap();
    let b = serde_json::to_string(&direct.to_config().unwrap()).unwrap();
    assert_eq!(a, b);
}
