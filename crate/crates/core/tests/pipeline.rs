use superconf_core::catalog;
use superconf_core::construct::{self, Sign};
use superconf_core::expr::parse_curve;
use superconf_core::geometry::{self, Ambient};
use superconf_core::grid::{Domain, Grid, Rect};
use superconf_core::math;
use superconf_core::minimal::{self, HolomorphicCurve, MinimalPair};
use superconf_core::Complex64;

fn pair_from(text: &str, rect: Rect) -> MinimalPair {
    MinimalPair::new(HolomorphicCurve::new(parse_curve(text).unwrap(), Domain::rect(rect)))
}

#[test]
fn phi_recovers_its_pair_on_the_catenoid() {
    let rect = Rect::new(0.2, 6.0, -1.5, 1.5).unwrap();
    let p = pair_from("(cos(z), sin(z), -i*z, 0)", rect);
    for sign in Sign::BOTH {
        let mut h_sign = None;
        for (u, v) in Grid::new(rect, 9, 7).unwrap().points() {
            let sp = p.split(u, v).unwrap();
            if construct::build_phi_from(&sp, sign, u, v).unwrap().flags.a_small {
                continue;
            }
            let phi = construct::phi_jets(&sp, sign).unwrap();
            let fd = geometry::fundamental_data(&phi, Ambient::Euclidean).unwrap();
            assert!(geometry::superconformality_test(&fd, 1e-8).is_superconformal, "({u}, {v})");

            let x = construct::extract_minimal_pair(&phi).unwrap();
            let (g, h) = (sp.g.value(), sp.h.value());
            let scale = 1.0 + math::norm(&g);
            assert!(math::max_abs(&math::sub(&x.g, &g)) < 1e-9 * scale, "g at ({u}, {v})");
            let s = *h_sign.get_or_insert(if math::max_abs(&math::sub(&x.h, &h)) < 1e-6 { 1.0 } else { -1.0 });
            assert!(math::max_abs(&math::sub(&x.h, &math::scale(s, &h))) < 1e-9 * scale, "h at ({u}, {v})");
        }
    }
}

#[test]
fn catalog_pairs_certify() {
    for name in ["catenoid-helicoid", "whitney", "q0-line", "q0-trig", "q0-trig-perturbed"] {
        let e = catalog::get(name).unwrap();
        let pair = e.pair.expect("pair entry");
        let cert = minimal::certify(&pair.curve, &Grid::new(e.rect, 12, 12).unwrap()).unwrap();
        assert!(cert.passes(), "{name}: {cert:?}");
    }
}

#[test]
fn parsed_whitney_matches_closed_form() {
    let e = catalog::get("whitney").unwrap();
    let p = pair_from(&e.definition, e.rect);
    for (u, v) in Grid::new(e.rect, 6, 6).unwrap().points() {
        let sp = p.split(u, v).unwrap();
        let z = Complex64::new(u, v);
        assert!(math::max_abs(&math::sub(&sp.g.value(), &catalog::whitney_g(z))) < 1e-12);
        assert!(math::max_abs(&math::sub(&sp.h.value(), &catalog::whitney_h(z))) < 1e-12);
    }
}
