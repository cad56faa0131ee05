//! Formal maps between hypersurfaces: CR derivations, tangency, reflection
//! identities and the chain jets.

use crformal::corpus;
use crformal::mapping::{
    check_invertible, conjugate_reflection_identities, cr_apply, defining_function_equivalence_check, first_chain_jet,
    first_chain_jets, reflection_function, reflection_identities, reflection_identity, second_chain_system,
    tangency_check, CrFrame, FormalMap,
};
use crformal::{Error, Hypersurface, Multiindex, Scalar, Series};

fn mi(e: &[u32]) -> Multiindex {
    Multiindex::from_slice(e)
}

fn three_halves() -> Scalar {
    Scalar::from_ratio(3, 2)
}

fn heisenberg_maps(order: u32) -> Vec<(&'static str, FormalMap)> {
    vec![
        ("identity", FormalMap::identity(2, order)),
        ("dilation", FormalMap::dilation(2, &three_halves(), order)),
        ("automorphism", corpus::heisenberg_automorphism(order)),
    ]
}

/// `Im f = |g|²` checked directly on the complexification of the
/// Heisenberg hypersurface: `f(w, z) − f̄(ζ, ξ) − 2i·g(w, z)·ḡ(ζ, ξ)` with
/// `z := ξ + 2iwζ`, expanded by hand in the ring `(w, ζ, ξ)`.
fn heisenberg_residual(h: &FormalMap, order: u32) -> Series {
    let heis = corpus::heisenberg(order);
    let c = heis.coords();
    let w = Series::var(&c.theta, 0, order);
    let zeta = Series::var(&c.theta, 1, order);
    let xi = Series::var(&c.theta, 2, order);
    let z = &xi + &(&w * &zeta).scale(&Scalar::gauss(0, 2));
    let hol: Vec<Series> = h
        .components()
        .iter()
        .map(|s| s.compose(&[w.clone(), z.clone()]).unwrap())
        .collect();
    let conj: Vec<Series> = h
        .components()
        .iter()
        .map(|s| s.conj().compose(&[zeta.clone(), xi.clone()]).unwrap())
        .collect();
    &(&hol[1] - &conj[1]) - &(&hol[0] * &conj[0]).scale(&Scalar::gauss(0, 2))
}

#[test]
fn cr_derivation_examples() {
    let h = corpus::heisenberg(8);
    let c = h.coords().clone();
    let xi = Series::var(&c.amb, c.axi(), 8);
    let zeta = Series::var(&c.amb, c.azeta(0), 8);
    let w = Series::var(&c.theta, 0, 7);
    assert_eq!(cr_apply(&h, &mi(&[1]), &xi).unwrap(), w.scale(&Scalar::gauss(0, -2)));
    assert_eq!(cr_apply(&h, &mi(&[1]), &zeta).unwrap(), Series::one(&c.theta, 7));
    assert!(cr_apply(&h, &mi(&[1, 0]), &zeta).is_err());
}

#[test]
fn cr_fields_annihilate_the_defining_functions() {
    for name in corpus::HYPERSURFACE_NAMES {
        let h = corpus::hypersurface(name, 8).unwrap().unwrap();
        let c = h.coords().clone();
        let frame = CrFrame::new(&h).unwrap();
        let z = Series::var(&c.amb, c.az(), 8);
        let xi = Series::var(&c.amb, c.axi(), 8);
        let theta = h.theta_amb();
        let thetabar = h.thetabar_amb();
        let rbar = &(&xi - &z) + &theta.mul_i();
        let r = &(&z - &xi) - &thetabar.mul_i();
        for j in 0..c.m() {
            assert!(frame.antiholomorphic(j, &rbar).unwrap().is_zero(), "{name}");
            assert!(frame.holomorphic(j, &r).unwrap().is_zero(), "{name}");
            // The conjugate pairings vanish modulo the ideal.
            let a = frame.antiholomorphic(j, &r).unwrap();
            assert!(h.restrict_z(&a).unwrap().is_zero(), "{name}");
            let b = frame.holomorphic(j, &rbar).unwrap();
            assert!(h.restrict_xi(&b).unwrap().is_zero(), "{name}");
        }
    }
}

#[test]
fn tangency_matches_a_direct_substitution() {
    let h = corpus::heisenberg(10);
    for (name, map) in heisenberg_maps(10) {
        assert!(heisenberg_residual(&map, 10).is_zero(), "{name}");
        assert!(tangency_check(&map, &h, &h, 10).unwrap().tangent, "{name}");
    }
    let shear = corpus::shear(10);
    assert!(!heisenberg_residual(&shear, 10).is_zero());
    assert!(!tangency_check(&shear, &h, &h, 10).unwrap().tangent);
}

#[test]
fn automorphisms_compose_and_invert() {
    let aut = corpus::heisenberg_automorphism(10);
    assert!(check_invertible(&aut).invertible());
    let dil = FormalMap::dilation(2, &three_halves(), 10);
    let both = aut.compose(&dil).unwrap();
    assert!(heisenberg_residual(&both, 10).is_zero());
    let h = corpus::heisenberg(10);
    assert!(tangency_check(&both, &h, &h, 10).unwrap().tangent);
}

#[test]
fn reflection_function_examples() {
    let h = corpus::heisenberg(8);
    for (c, map) in [
        (Scalar::one(), FormalMap::identity(2, 8)),
        (three_halves(), FormalMap::dilation(2, &three_halves(), 8)),
    ] {
        let rf = reflection_function(&map, &h, 8, 3).unwrap();
        let s = rf.to_series();
        let v = &rf.vars;
        let o = s.order();
        // μ̄ − c²z + 2ic·λ̄w
        let expected = &(&Series::var(v, 3, o) - &Series::var(v, 1, o).scale(&(&c * &c)))
            + &(&Series::var(v, 2, o) * &Series::var(v, 0, o)).scale(&(&Scalar::gauss(0, 2) * &c));
        assert_eq!(s, expected);
    }
}

#[test]
fn classical_identity_first_derivative_examples() {
    let h = corpus::heisenberg(10);
    for (c, map) in [
        (Scalar::one(), FormalMap::identity(2, 10)),
        (three_halves(), FormalMap::dilation(2, &three_halves(), 10)),
    ] {
        let rep = reflection_identity(&map, &h, &h, &mi(&[1]), 10).unwrap();
        assert!(rep.holds);
        let w = Series::var(&h.coords().theta, 0, rep.order_delivered);
        let two_c_w = w.scale(&(&Scalar::from_int(2) * &c));
        assert_eq!(rep.lhs.truncate(rep.order_delivered), two_c_w);
        assert_eq!(rep.omega.truncate(rep.order_delivered), two_c_w);
    }
}

#[test]
fn reflection_identities_hold_for_heisenberg_maps() {
    let h = corpus::heisenberg(12);
    for (name, map) in heisenberg_maps(12) {
        let reps = reflection_identities(&map, &h, &h, 3, 12).unwrap();
        assert_eq!(reps.len(), 4);
        for r in &reps {
            assert!(r.holds, "{name} β={}", r.beta);
            assert_eq!(r.order_delivered, 12 - r.beta.degree(), "{name} β={}", r.beta);
        }
        for r in conjugate_reflection_identities(&map, &h, &h, 3, 12).unwrap() {
            assert!(r.holds, "{name} β={}", r.beta);
        }
    }
}

#[test]
fn reflection_identities_require_tangency() {
    let h = corpus::heisenberg(8);
    let shear = corpus::shear(8);
    assert!(matches!(
        reflection_identities(&shear, &h, &h, 2, 8),
        Err(Error::NotTangent(_))
    ));
    let conj = conjugate_reflection_identities(&shear, &h, &h, 2, 8).unwrap();
    assert!(!conj[0].holds);
}

#[test]
fn defining_function_families_agree() {
    let h = corpus::heisenberg(10);
    let shear = defining_function_equivalence_check(&corpus::shear(10), &h, &h, 3, 10).unwrap();
    assert!(!shear.e_zero && !shear.f_zero);
    assert!(shear.leibniz_holds && shear.equivalent());
    assert_eq!(shear.alpha0, Scalar::from_int(-1));
    for (name, map) in heisenberg_maps(10) {
        let rep = defining_function_equivalence_check(&map, &h, &h, 3, 10).unwrap();
        assert!(rep.e_zero && rep.f_zero && rep.leibniz_holds, "{name}");
    }
}

#[test]
fn first_chain_examples() {
    let h = corpus::heisenberg(10);
    let id = FormalMap::identity(2, 10);
    let jet = first_chain_jet(&id, &h, &h, 0, &mi(&[1]), 10).unwrap();
    assert!(jet.agree);
    let w = Series::var(jet.direct.vars(), 0, jet.order);
    assert_eq!(jet.direct.truncate(jet.order), w.scale(&Scalar::from_int(2)));
    let jet = first_chain_jet(&id, &h, &h, 1, &mi(&[1]), 10).unwrap();
    assert!(jet.agree && jet.direct.is_zero());
}

#[test]
fn first_chain_routes_agree_for_heisenberg_maps() {
    let h = corpus::heisenberg(16);
    for (name, map) in heisenberg_maps(16) {
        let jets = first_chain_jets(&map, &h, &h, 4, 3, 16).unwrap();
        assert!(!jets.is_empty());
        for j in &jets {
            assert!(j.agree, "{name}: {}", j.record());
            assert!(j.order >= 5, "{name}: {}", j.record());
        }
    }
}

#[test]
fn second_chain_heisenberg() {
    let h = corpus::heisenberg(12);
    for (name, map) in heisenberg_maps(12) {
        let rep = second_chain_system(&map, &h, &h, None, 4, 12, 1).unwrap();
        assert_eq!(rep.kappa0, Some(0), "{name}");
        assert_eq!(rep.kappa, 1, "{name}");
        assert_eq!(rep.selection, Some(vec![mi(&[1]), mi(&[0])]), "{name}");
        assert!(rep.det_s_nonzero && rep.chain_residuals_vanish, "{name}");
        assert!(
            rep.equivalent() && rep.relation_rt_holds && rep.relation_rs_holds,
            "{name}"
        );
    }
}

#[test]
fn second_chain_flat() {
    let flat = corpus::flat(12);
    let id = FormalMap::identity(2, 12);
    assert!(second_chain_system(&id, &flat, &flat, None, 4, 12, 1).is_err());
    let rep = second_chain_system(&id, &flat, &flat, Some(2), 4, 12, 1).unwrap();
    assert_eq!(rep.family_vanishes, [true; 3]);
    assert!(rep.equivalent());
}

#[test]
fn maps_must_match_dimensions() {
    let h: Hypersurface = corpus::heisenberg(6);
    let d3 = FormalMap::identity(3, 6);
    assert!(matches!(tangency_check(&d3, &h, &h, 6), Err(Error::Dimension(_))));
}
