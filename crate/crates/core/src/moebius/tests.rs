use super::*;
use crate::catalog::{self, Immersion};
use crate::construct::Sign;
use crate::geometry::fundamental_data;
use crate::grid::{Grid, Rect};
use crate::jets::Jet2Vec4;
use crate::minimal::MinimalPair;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pair(name: &str) -> MinimalPair {
    catalog::get(name).unwrap().pair.unwrap()
}

#[test]
fn euclidean_inversion_examples() {
    let inv = Inversion::euclidean([0.0; 4], 1.0);
    assert_eq!(inv.apply(&[2.0, 0.0, 0.0, 0.0]).unwrap(), [0.5, 0.0, 0.0, 0.0]);
    assert!(matches!(
        inv.apply(&[0.0; 4]),
        Err(Error::InversionSingular { .. })
    ));
    let inv = Inversion::euclidean([1.0, -2.0, 0.5, 3.0], 1.7);
    let p = [0.3, 0.1, -0.7, 2.0];
    let back = inv.apply(&inv.apply(&p).unwrap()).unwrap();
    assert!(math::max_abs(&math::sub(&back, &p)) < 1e-12);
}

#[test]
fn lorentzian_inversion_is_an_involution() {
    let inv = Inversion::lorentzian([0.0, 0.0, 0.0, 0.0, -2.0], 2.0);
    let p = [0.3, 0.1, -0.7, 0.2, 0.4];
    let q = inv.apply(&p).unwrap();
    let back = inv.apply(&q).unwrap();
    assert!(math::max_abs(&math::sub(&back, &p)) < 1e-12);
    // On the light cone through the center the inversion is singular.
    let cone = [1.0, 0.0, 0.0, 0.0, -1.0];
    assert!(matches!(
        inv.apply(&cone),
        Err(Error::InversionSingular { .. })
    ));
}

#[test]
fn jets_of_an_inversion_match_finite_differences() {
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    let cat = pair("catenoid-helicoid");
    let surface = |u: f64, v: f64| inv.apply_jets(&cat.split(u, v)?.g);
    let r = crate::jets::fd_crosscheck(&surface, (0.7, 0.3), 1e-3).unwrap();
    assert!(r.residual() < 1e-6, "{r:?}");
}

fn catenoid_g(u: f64, v: f64) -> Jet2Vec4 {
    pair("catenoid-helicoid").split(u, v).unwrap().g
}

#[test]
fn normal_transform_euclidean() {
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    let grid = Grid::new(Rect::new(0.3, 5.5, -1.2, 1.2).unwrap(), 5, 5).unwrap();
    let mut worst: f64 = 0.0;
    for (k, (u, v)) in grid.points().enumerate() {
        let g = catenoid_g(u, v);
        let fd = fundamental_data(&g, Ambient::Euclidean).unwrap();
        let t = 0.37 + 1.3 * k as f64;
        let xi = math::add(&math::scale(math::cos(t), &fd.n1), &math::scale(math::sin(t), &fd.n2));
        worst = worst.max(normal_transform_check(&inv, &g, &xi).unwrap().max());
    }
    assert!(worst < 1e-7, "{worst:e}");
}

#[test]
fn normal_transform_sphere_example() {
    // Round sphere of radius 2 about the origin, outward normal: Pξ = −ξ and
    // the image sphere has radius 1/2.
    let s = |u: f64, v: f64| -> Result<JetVec<4>> {
        let (u, v) = (Jet2::var_u(u), Jet2::var_v(v));
        Ok(JetVec([u.sin() * v.cos() * 2.0, u.sin() * v.sin() * 2.0, u.cos() * 2.0, Jet2::ZERO]))
    };
    let x = s(1.0, 0.5).unwrap();
    let xi = math::scale(0.5, &x.value());
    let inv = Inversion::euclidean([0.0; 4], 1.0);
    let r = normal_transform_check(&inv, &x, &xi).unwrap();
    assert!(r.max() < 1e-12, "{r:?}");
    let pxi = inv.normal_map(&x.value(), &xi).unwrap();
    assert!(math::max_abs(&math::add(&pxi, &xi)) < 1e-15);
}

#[test]
fn normal_transform_lorentzian() {
    let e = catalog::get("veronese-hyperbolic").unwrap();
    let Some(Immersion::SpaceForm { ambient, eval }) = e.immersion else {
        unreachable!()
    };
    let inv = Inversion::lorentzian([0.0, 0.0, 0.0, 0.0, -2.0], 2.0);
    let grid = Grid::new(e.rect, 4, 4).unwrap();
    let mut worst: f64 = 0.0;
    for (u, v) in grid.points() {
        let f = eval(u, v).unwrap();
        let fd = fundamental_data(&f, ambient).unwrap();
        for xi in [fd.n1, fd.n2, fd.radial.unwrap()] {
            worst = worst.max(normal_transform_check(&inv, &f, &xi).unwrap().max());
        }
    }
    assert!(worst < 1e-7, "{worst:e}");
}

#[test]
fn normal_transform_rejects_tangent_input() {
    let g = catenoid_g(1.0, 0.5);
    let xi = math::unit::<4>(0);
    let t = math::scale(1.0 / math::norm(&g.du()), &g.du());
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    assert!(normal_transform_check(&inv, &g, &t).unwrap_err().is_precondition());
    let fd = fundamental_data(&g, Ambient::Euclidean).unwrap();
    let long = math::scale(2.0, &fd.n1);
    assert!(normal_transform_check(&inv, &g, &long).unwrap_err().is_precondition());
    let _ = xi;
}

#[test]
fn holomorphic_inversion_examples() {
    let one = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    assert_eq!(holomorphic_inversion(&one, 1.0).unwrap(), one);
    let two = [c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let t = holomorphic_inversion(&two, 1.0).unwrap();
    assert_eq!(t[0], c(0.5, 0.0));
    assert!((bilinear(&t, &t) - c(0.25, 0.0)).norm() < 1e-15);
    let null = [c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)];
    assert!(matches!(
        holomorphic_inversion(&null, 1.0),
        Err(Error::QuadricSingular { .. })
    ));
}

proptest! {
    #[test]
    fn holomorphic_inversion_maps_quadrics(
        re in proptest::array::uniform4(-2.0f64..2.0),
        im in proptest::array::uniform4(-2.0f64..2.0),
        r in 0.2f64..3.0,
    ) {
        let z: [Complex64; 4] = core::array::from_fn(|k| c(re[k], im[k]));
        let k = bilinear(&z, &z);
        prop_assume!(k.norm() > 1e-3);
        let t = holomorphic_inversion(&z, r).unwrap();
        let want = c(r * r * r * r, 0.0) / k;
        prop_assert!((bilinear(&t, &t) - want).norm() < 1e-10 * want.norm());
        let back = holomorphic_inversion(&t, r).unwrap();
        for i in 0..4 {
            prop_assert!((back[i] - z[i]).norm() < 1e-9 * (1.0 + z[i].norm()));
        }
    }

    #[test]
    fn inversions_are_conformal(
        p in proptest::array::uniform4(-2.0f64..2.0),
        a in proptest::array::uniform4(-1.0f64..1.0),
        b in proptest::array::uniform4(-1.0f64..1.0),
    ) {
        prop_assume!(math::norm(&p) > 0.2);
        let (na, nb) = (math::norm(&a), math::norm(&b));
        prop_assume!(na > 0.1 && nb > 0.1);
        let inv = Inversion::euclidean([0.0; 4], 1.3);
        // Push the tangent vectors forward with jets along the lines p + s a, p + t b.
        let x: JetVec<4> = JetVec(core::array::from_fn(|i| {
            Jet2::new(p[i], a[i], b[i], 0.0, 0.0, 0.0)
        }));
        let y = inv.apply_jets(&x).unwrap();
        let (ya, yb) = (y.du(), y.dv());
        let before = math::dot(&a, &b) / (na * nb);
        let after = math::dot(&ya, &yb) / (math::norm(&ya) * math::norm(&yb));
        prop_assert!((before - after).abs() < 1e-10);
    }
}

fn small_grid(rect: Rect, n: usize) -> Grid {
    Grid::new(rect, n, n).unwrap()
}

#[test]
fn pair_transform_routes_agree() {
    let p = pair("catenoid-helicoid");
    let grid = small_grid(Rect::new(0.5, 5.5, -1.2, 1.2).unwrap(), 6);
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    for sign in Sign::BOTH {
        let r = pair_transform_check(&p, &inv, sign, &grid).unwrap();
        assert!(r.best_error() < 1e-5, "{r:?}");
        assert!(r.samples > 20);
    }
    let far = Inversion::euclidean([0.0, 0.0, 0.0, 1e3], 1e3);
    let r = pair_transform_check(&p, &far, Sign::Plus, &grid).unwrap();
    assert!(r.best_error() < 1e-4, "{r:?}");
}

#[test]
fn pair_transform_rejects_q0_curves() {
    let p = pair("q0-trig");
    let grid = small_grid(Rect::new(-0.5, 0.5, -0.5, 0.5).unwrap(), 4);
    let inv = Inversion::euclidean([0.0, 0.0, 0.0, 5.0], 1.0);
    let err = pair_transform_check(&p, &inv, Sign::Plus, &grid).unwrap_err();
    assert!(err.is_precondition(), "{err:?}");
}

#[test]
fn transformed_pair_recertifies() {
    let p = pair("catenoid-helicoid");
    let t = transformed_pair(&p, &[0.0, 0.0, 5.0, 0.0], 1.0);
    let grid = small_grid(Rect::new(0.5, 5.5, -1.2, 1.2).unwrap(), 7);
    let cert = crate::minimal::certify(&t.curve, &grid).unwrap();
    assert!(cert.passes(), "{cert:?}");
    assert!(cert.isotropy_max < 1e-8 && cert.conjugacy_max < 1e-8 && cert.minimality_max < 1e-8);
}

fn c2(text: &str) -> crate::minimal::HolomorphicCurve {
    crate::minimal::HolomorphicCurve::new(
        crate::expr::parse_curve(text).unwrap(),
        crate::grid::Domain::rect(Rect::new(-3.0, 3.0, -3.0, 3.0).unwrap()),
    )
}

#[test]
fn duality_of_the_whitney_curve() {
    let f = c2("(z, 1/z)");
    let d = duality(&f, 1.0, 0.0).unwrap();
    let got = d.fstar.value();
    for (a, b) in got.iter().zip([0.25, 0.0, 0.25, 0.0]) {
        assert!((a - b).abs() < 1e-15, "{got:?}");
    }
    for (u, v) in [(0.5, 0.2), (1.2, -0.7), (0.8, 0.9)] {
        let d = duality(&f, u, v).unwrap();
        assert!(d.involution < 1e-9 && d.anti_holomorphic < 1e-8 && d.conformality < 1e-8, "{d:?}");
        // f* is (1/4)(1/z̄, z̄) for this curve.
        let z = Complex64::new(u, v);
        let want = catalog::whitney_g(z);
        assert!(math::max_abs(&math::sub(&d.fstar.value(), &want)) < 1e-14);
    }
}

#[test]
fn duality_of_other_curves() {
    for text in ["(z, z^2)", "(z, exp(z))"] {
        let f = c2(text);
        for (u, v) in [(0.5, 0.2), (1.2, -0.7), (-0.8, 0.9)] {
            let d = duality(&f, u, v).unwrap();
            assert!(d.involution < 1e-9 && d.anti_holomorphic < 1e-8 && d.conformality < 1e-8, "{text}: {d:?}");
        }
    }
}

#[test]
fn duality_is_singular_for_lines_through_the_origin() {
    let f = c2("(z, 0)");
    assert!(matches!(duality(&f, 0.5, 0.5), Err(Error::DualitySingular { .. })));
    let g = c2("(z, z, z, 0)");
    assert!(duality(&g, 0.5, 0.5).unwrap_err().is_precondition());
}

#[test]
fn whitney_inversion_pair() {
    let e = catalog::get("whitney").unwrap();
    let f = e.c2_curve.unwrap();
    let inv = Inversion::euclidean([0.0; 4], 1.0);
    for (u, v) in [(0.5, 0.2), (1.2, -0.7), (0.8, 0.9)] {
        let p = inversion_pair_of_holomorphic(&f, &inv, u, v).unwrap();
        let z = Complex64::new(u, v);
        assert!(math::max_abs(&math::sub(&p.g, &catalog::whitney_g(z))) < 1e-14);
        assert!(math::max_abs(&math::sub(&p.h, &catalog::whitney_h(z))) < 1e-14);
        assert!(inversion_pair_crosscheck(&f, &inv, u, v).unwrap() < 1e-6);
        // The catalog pair is the same pair as a holomorphic curve.
        let sp = e.pair.as_ref().unwrap().split(u, v).unwrap();
        assert!(math::max_abs(&math::sub(&sp.g.value(), &p.g)) < 1e-14);
        assert!(math::max_abs(&math::sub(&sp.h.value(), &p.h)) < 1e-14);
    }
}

#[test]
fn whitney_reconstruction() {
    let e = catalog::get("whitney").unwrap();
    let f = e.c2_curve.unwrap();
    let pair = e.pair.unwrap();
    let inv = Inversion::euclidean([0.0; 4], 1.0);
    let mut worst = [0.0f64; 2];
    for (u, v) in [(0.5, 0.2), (1.2, -0.7), (0.8, 0.9)] {
        let target = inverted_curve(&f, &inv, u, v).unwrap().value();
        for (k, sign) in Sign::BOTH.iter().enumerate() {
            let phi = crate::construct::phi_jets(&pair.split(u, v).unwrap(), *sign).unwrap();
            worst[k] = worst[k].max(math::max_abs(&math::sub(&phi.value(), &target)));
        }
    }
    assert!(worst[1] < 1e-12, "{worst:?}");
}

#[test]
fn complex_structure_of_q0_line() {
    let p = pair("q0-line");
    let grid = small_grid(Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap(), 5);
    let s = recover_complex_structure(&p, &grid).unwrap();
    assert_eq!(s.span_rank, 2);
    assert!(s.max_residual() < 1e-10, "{s:?}");
    assert!(math::max_abs(&math::sub(&s.apply(&[1.0, 0.0, 0.0, 0.0]), &[0.0, 1.0, 0.0, 0.0])) < 1e-12);
    assert!(math::max_abs(&math::sub(&s.apply(&[0.0, 1.0, 0.0, 0.0]), &[-1.0, 0.0, 0.0, 0.0])) < 1e-12);
}

#[test]
fn complex_structure_of_q0_trig() {
    let p = pair("q0-trig");
    let grid = small_grid(Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap(), 6);
    let s = recover_complex_structure(&p, &grid).unwrap();
    assert!(s.max_residual() < 1e-9, "{s:?}");
}

#[test]
fn complex_structure_needs_q0() {
    let grid = small_grid(Rect::new(0.5, 2.0, -1.0, 1.0).unwrap(), 4);
    let e = recover_complex_structure(&pair("catenoid-helicoid"), &grid).unwrap_err();
    assert!(matches!(e, Error::NotQ0 { .. }));
    assert!(q0_collapse_check(&pair("catenoid-helicoid"), &grid).is_err());
}

#[test]
fn collapse_on_q0_curves() {
    for name in ["q0-line", "q0-trig"] {
        let grid = small_grid(Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap(), 6);
        let r = q0_collapse_check(&pair(name), &grid).unwrap();
        assert!(r.variation < 1e-9, "{name}: {r:?}");
        assert!(r.normal_residual < 1e-9, "{name}: {r:?}");
        if name == "q0-trig" {
            assert!(r.other_variation > 0.1, "{r:?}");
        }
    }
}

#[test]
fn stereo_examples() {
    let x = stereo_to_r4(SpaceForm::Sphere, 1.0, &[1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(math::max_abs(&math::sub(&x, &[2.0, 0.0, 0.0, 0.0])) < 1e-15);
    for space in [SpaceForm::Sphere, SpaceForm::Hyperbolic] {
        let o = stereo_to_r4(space, 1.0, &[0.0; 5]).unwrap();
        assert_eq!(math::max_abs(&o), 0.0);
    }
    let p = stereo_from_r4(SpaceForm::Hyperbolic, 1.0, &[1.99, 0.0, 0.0, 0.0]).unwrap();
    let d = [p[0], p[1], p[2], p[3], p[4] + 1.0];
    assert!((Signature::Lorentzian.dot(&d, &d) + 1.0).abs() < 1e-10);
    assert!(matches!(
        stereo_from_r4(SpaceForm::Hyperbolic, 1.0, &[2.5, 0.0, 0.0, 0.0]),
        Err(Error::Projection(_))
    ));
    assert!(matches!(
        stereo_to_r4(SpaceForm::Sphere, 1.0, &[0.5, 0.0, 0.0, 0.0, 0.0]),
        Err(Error::Projection(_))
    ));
    assert!(matches!(
        stereo_to_r4(SpaceForm::Sphere, 1.0, &[0.0, 0.0, 0.0, 0.0, 2.0]),
        Err(Error::Projection(_))
    ));
}

proptest! {
    #[test]
    fn stereo_round_trips(x in proptest::array::uniform4(-1.4f64..1.4), r in 0.5f64..2.0) {
        for space in [SpaceForm::Sphere, SpaceForm::Hyperbolic] {
            if space == SpaceForm::Hyperbolic && math::norm(&x) > 1.8 {
                continue;
            }
            let y: Vector<4> = math::scale(r, &x);
            let p = stereo_from_r4(space, r, &y).unwrap();
            let scale = 1.0 + math::dot(&p, &p) / (r * r);
            prop_assert!(space.ambient(r).manifold_defect(&p) < 1e-13 * scale);
            let back = stereo_to_r4(space, r, &p).unwrap();
            prop_assert!(math::max_abs(&math::sub(&back, &y)) < 1e-11 * (1.0 + math::max_abs(&y)));
        }
    }

    #[test]
    fn hyperbolic_projection_is_the_line_intersection(x in proptest::array::uniform4(-0.9f64..0.9)) {
        let p = stereo_from_r4(SpaceForm::Hyperbolic, 1.0, &x).unwrap();
        // x = 2R P′/(p5 + 2R) along the line through −2R e5 and P.
        let line: Vector<4> = core::array::from_fn(|i| 2.0 * p[i] / (p[4] + 2.0));
        prop_assert!(math::max_abs(&math::sub(&line, &x)) < 1e-12);
        let s = 4.0 / (4.0 - math::dot(&x, &x));
        prop_assert!((p[4] - (2.0 * s - 2.0)).abs() < 1e-12 * s);
    }
}

type SpaceFormEval = fn(f64, f64) -> Result<JetVec<5>>;

fn space_form(name: &str) -> (Ambient, SpaceFormEval, Rect) {
    let e = catalog::get(name).unwrap();
    match e.immersion {
        Some(Immersion::SpaceForm { ambient, eval }) => (ambient, eval, e.rect),
        _ => unreachable!(),
    }
}

fn superminimal_over(name: &str, n: usize) -> SuperminimalReport {
    let (ambient, eval, rect) = space_form(name);
    let grid = small_grid(rect, n);
    grid.points().fold(SuperminimalReport::default(), |acc, (u, v)| {
        acc.merge(superminimal_test(&eval(u, v).unwrap(), ambient).unwrap())
    })
}

#[test]
fn veronese_is_superminimal() {
    let r = superminimal_over("veronese", 6);
    assert!(r.is_superminimal() && !r.degenerate, "{r:?}");
    assert!(r.wintgen_defect < 1e-8);
}

#[test]
fn great_sphere_is_degenerate() {
    let r = superminimal_over("great-sphere", 5);
    assert!(r.is_superminimal() && r.degenerate, "{r:?}");
}

#[test]
fn torus_in_s4_is_not_minimal() {
    let r = superminimal_over("torus-s4", 5);
    assert!(r.h_norm > 0.1, "{r:?}");
}

#[test]
fn superminimal_rejects_points_off_the_sphere() {
    let (_, eval, _) = space_form("veronese");
    let f = eval(1.0, 1.0).unwrap().scale(1.1);
    assert!(matches!(
        superminimal_test(&f, Ambient::sphere(1.0)),
        Err(Error::Projection(_))
    ));
}

#[test]
fn quadric_classes() {
    let grid = small_grid(Rect::new(0.5, 2.0, -1.0, 1.0).unwrap(), 5);
    let c = quadric_criterion(&pair("catenoid-helicoid"), &grid).unwrap();
    assert_eq!(c.class, QuadricClass::NonConstant);
    let c = quadric_criterion(&pair("q0-line"), &grid).unwrap();
    assert_eq!(c.class, QuadricClass::Null);
    let v = catalog::get("veronese").unwrap();
    let c = quadric_criterion(v.pair.as_ref().unwrap(), &small_grid(v.rect, 5)).unwrap();
    match c.class {
        QuadricClass::Real { k, radius } => {
            assert!((k + 4.0).abs() < 1e-8, "{k}");
            assert!((radius - 1.0).abs() < 1e-9);
        }
        other => panic!("{other:?}"),
    }
    let x = c.cross_check.unwrap();
    assert_eq!(x.matched(), Some(SpaceForm::Sphere), "{x:?}");
}
