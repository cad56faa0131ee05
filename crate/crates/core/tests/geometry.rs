//! Hypersurfaces, Segre maps, minimality and the nondegeneracy hierarchy.

use crformal::classify::{
    classify, kappa_order, segre_determinant_witness, select_multiindices, ClassifyOptions, Condition,
};
use crformal::corpus;
use crformal::expr::parse_defining_expression;
use crformal::mapping::{check_invertible, tangency_check, FormalMap};
use crformal::segre::{chain_map, generic_rank, jet_morphism};
use crformal::{Coords, Error, Hypersurface, Multiindex, Scalar, Series};

fn theta2(terms: &[(&[u32], Scalar)], order: u32) -> Series {
    let c = Coords::new(2);
    Series::from_terms(
        &c.theta,
        terms.iter().map(|(e, s)| (Multiindex::from_slice(e), s.clone())),
        order,
    )
}

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

fn all_corpus(order: u32) -> Vec<(&'static str, Hypersurface)> {
    corpus::HYPERSURFACE_NAMES
        .iter()
        .map(|&n| (n, corpus::hypersurface(n, order).unwrap().unwrap()))
        .collect()
}

#[test]
fn reality_examples() {
    let bad = Hypersurface::new(2, &theta2(&[(&[1, 1, 0], int(2)), (&[2, 0, 0], int(1))], 8)).unwrap();
    assert!(!bad.reality_check().real);
    let good = Hypersurface::new(
        2,
        &theta2(&[(&[1, 1, 0], int(2)), (&[2, 0, 0], int(1)), (&[0, 2, 0], int(1))], 8),
    )
    .unwrap();
    let v = good.reality_check();
    assert!(v.real);
    assert_eq!(v.alpha.unwrap().constant_term(), int(-1));
}

#[test]
fn normalization_removes_harmonic_terms_with_verified_witness() {
    let h = Hypersurface::new(
        2,
        &theta2(&[(&[1, 1, 0], int(2)), (&[2, 0, 0], int(1)), (&[0, 2, 0], int(1))], 10),
    )
    .unwrap();
    assert!(!h.is_normal());
    let (normal, witness) = h.normalize(10).unwrap();
    assert!(normal.is_normal());
    assert_eq!(normal.thetabar(), &theta2(&[(&[1, 1, 0], int(2))], 10));
    let t = tangency_check(&witness, &h, &normal, 10).unwrap();
    assert!(t.tangent);
    assert!(check_invertible(&witness).invertible());
}

#[test]
fn segre_degenerate_expansion_matches_independent_oracle() {
    // All terms of total degree ≤ 5, from a separate symbolic fixed-point
    // solve of the real defining equation.
    let h = corpus::segre_degenerate(8).unwrap();
    assert!(h.is_normal());
    let c = Coords::new(3);
    let expected = Series::from_terms(
        &c.theta,
        [
            (&[1, 0, 1, 0, 0][..], Scalar::from_int(2)),
            (&[0, 1, 1, 0, 1], Scalar::gauss(0, -1)),
            (&[1, 0, 0, 1, 1], Scalar::gauss(0, 1)),
            (&[1, 1, 2, 0, 0], Scalar::from_int(2)),
            (&[1, 1, 1, 1, 1], Scalar::gauss(0, 1)),
            (&[2, 0, 0, 2, 1], Scalar::gauss(0, -1)),
        ]
        .map(|(e, s)| (Multiindex::from_slice(e), s)),
        6,
    );
    assert_eq!(h.thetabar().truncate(6), expected);
}

#[test]
fn parse_rejects_non_unit_denominator() {
    assert!(parse_defining_expression("Im(z2) - 1/z1").is_err());
    assert!(parse_defining_expression("Im(z2) - z1*conj(z1)").is_ok());
}

#[test]
fn jet_morphism_examples() {
    let h = corpus::heisenberg(8);
    let c = h.coords().clone();
    let jet = jet_morphism(&h, 1).unwrap();
    let v = |k: usize| Series::var(&c.amb, k, 8);
    let (w, z, zeta, xi) = (v(0), v(1), v(2), v(3));
    let two_i = Scalar::gauss(0, 2);
    assert_eq!(jet.components[0], zeta);
    assert_eq!(jet.components[1], xi);
    let rbar = &(&xi - &z) + &(&zeta * &w).scale(&two_i);
    assert_eq!(jet.components[2], rbar);
    assert_eq!(jet.components[3].truncate(7), w.scale(&two_i).truncate(7));

    let flat = corpus::flat(8);
    let jet = jet_morphism(&flat, 2).unwrap();
    assert_eq!(jet.components[2], &xi - &z);
    assert!(jet.components[3].is_zero() && jet.components[4].is_zero());

    let q = corpus::quartic(8);
    let jet = jet_morphism(&q, 2).unwrap();
    let pos = jet
        .betas
        .iter()
        .position(|b| b == &Multiindex::from_slice(&[2]))
        .unwrap();
    let expected = (&w * &w).scale(&Scalar::gauss(0, 4));
    let got = &jet.components[2 + pos];
    assert_eq!(got.truncate(got.order()), expected.truncate(got.order()));
}

#[test]
fn the_defining_component_vanishes_on_the_complexification() {
    for (name, h) in all_corpus(8) {
        let jet = jet_morphism(&h, 1).unwrap();
        let r = h.restrict_z(&jet.components[h.n()]).unwrap();
        assert!(r.is_zero(), "{name}");
    }
}

#[test]
fn chain_map_and_rank_examples() {
    let h = corpus::heisenberg(8);
    let ch = chain_map(&h, 2).unwrap();
    let c = h.coords();
    let w = Series::var(&c.wzeta, 0, 8);
    let zeta = Series::var(&c.wzeta, 1, 8);
    assert_eq!(ch.components[0], w);
    let expected = (&w * &zeta).scale(&Scalar::gauss(0, 2));
    assert_eq!(ch.components[1].truncate(8), expected.truncate(8));
    assert_eq!(generic_rank(&[w.clone(), expected], 1).unwrap().rank, 2);
}

#[test]
fn generic_rank_is_monotone_in_the_order() {
    for (name, _) in all_corpus(6) {
        let mut last = 0;
        for order in [6, 8, 10] {
            let h = corpus::hypersurface(name, order).unwrap().unwrap();
            let r = h.is_minimal(1).unwrap().rank.rank;
            assert!(r >= last, "{name} at order {order}");
            last = r;
        }
    }
}

#[test]
fn invertibility_examples() {
    let d = FormalMap::dilation(2, &Scalar::from_ratio(3, 2), 6);
    assert_eq!(check_invertible(&d).det, Scalar::from_ratio(27, 8));
    let c = Coords::new(2);
    let w = Series::var(&c.t, 0, 6);
    let sq = FormalMap::new(2, vec![w.clone(), &w * &w]).unwrap();
    assert!(check_invertible(&sq).det.is_zero());
}

#[test]
fn minimality_criteria_agree_on_the_corpus() {
    for (name, h) in all_corpus(8) {
        let v = h.is_minimal(1).unwrap();
        assert_eq!(v.minimal, name != "flat2", "{name}");
    }
}

#[test]
fn multiindex_selection_examples() {
    let h = corpus::heisenberg(8);
    let w = select_multiindices(&h, 3, 1).unwrap();
    assert_eq!(
        w.betas,
        vec![Multiindex::from_slice(&[1]), Multiindex::from_slice(&[0])]
    );
    assert_eq!(w.minor.constant_term(), int(2));
    assert!(matches!(
        select_multiindices(&corpus::flat(8), 3, 1),
        Err(Error::Inconclusive { .. })
    ));
}

#[test]
fn kappa_order_examples() {
    let c = Coords::new(2);
    let zeta_idx = c.theta_zeta();
    assert_eq!(
        kappa_order(&Series::constant(&c.theta, int(3), 6), &zeta_idx).unwrap(),
        0
    );
    let s = Series::monomial(&c.theta, Multiindex::from_slice(&[1, 1, 0]), Scalar::gauss(0, 2), 6);
    assert_eq!(kappa_order(&s, &zeta_idx).unwrap(), 1);
    assert!(kappa_order(&Series::zero(&c.theta, 6), &zeta_idx).is_err());
}

#[test]
fn hierarchy_table_on_the_corpus() {
    let opts = ClassifyOptions {
        order: 10,
        kmax: Some(6),
        beta_bound: 4,
        seed: 1,
    };
    let expect: [(&str, [bool; 5]); 4] = [
        ("heis2", [true; 5]),
        ("w2z2", [false, false, true, true, true]),
        ("degen3", [false, false, false, false, false]),
        ("flat2", [false; 5]),
    ];
    for (name, table) in expect {
        let h = corpus::hypersurface(name, 10).unwrap().unwrap();
        let r = classify(&h, &opts).unwrap();
        for (c, want) in Condition::ALL.iter().zip(table) {
            assert_eq!(r.holds(*c), want, "{name} condition {c}");
        }
        assert!(r.iv_cross_check && r.v_cross_check, "{name}");
    }
    let ex = corpus::segre_degenerate(10).unwrap();
    let r = classify(&ex, &opts).unwrap();
    assert!(r.holds(Condition::V) && !r.holds(Condition::IV));
}

#[test]
fn implications_hold_for_every_jet_bound() {
    for (name, h) in all_corpus(8) {
        for kmax in 1..=6 {
            let opts = ClassifyOptions {
                order: 8,
                kmax: Some(kmax),
                beta_bound: 3,
                seed: 7,
            };
            let r = classify(&h, &opts).unwrap_or_else(|e| panic!("{name} k={kmax}: {e}"));
            let holds: Vec<bool> = Condition::ALL.iter().map(|c| r.holds(*c)).collect();
            for w in holds.windows(2) {
                assert!(!w[0] || w[1], "{name} k={kmax}: {holds:?}");
            }
        }
    }
}

#[test]
fn segre_degenerate_determinant_criteria() {
    let ex10 = corpus::segre_degenerate(10).unwrap();
    let w = select_multiindices(&ex10, 4, 1).unwrap();
    assert!(w.betas.iter().all(|b| b.degree() <= 4));
    assert!(!w.minor.is_zero());
    let ex12 = corpus::segre_degenerate(12).unwrap();
    assert_eq!(segre_determinant_witness(&ex12, 4).unwrap(), None);
}
