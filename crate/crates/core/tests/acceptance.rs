//! Acceptance suite: one check per criterion, each printing a single
//! `PASS`/`FAIL` line, followed by an overall assertion. Run with
//! `cargo test -p crformal --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use crformal::classify::{
    classify, segre_determinant_witness, select_multiindices, ClassifyOptions, Condition, Status,
};
use crformal::corpus;
use crformal::flows::{find_tangent_field, nonconvergent_selfmap, TangentField};
use crformal::mapping::{
    artin_witness, check_invertible, conjugate_reflection_identities, defining_function_equivalence_check,
    first_chain_jets, reflection_identities, second_chain_system, tangency_check, ArtinVerdict, FormalMap,
};
use crformal::{Coords, Hypersurface, Multiindex, Scalar, Series, Vars};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn options() -> ClassifyOptions {
    ClassifyOptions {
        order: 10,
        kmax: Some(6),
        beta_bound: 4,
        seed: 1,
    }
}

fn corpus_at(order: u32) -> Result<Vec<(&'static str, Hypersurface)>, String> {
    corpus::HYPERSURFACE_NAMES
        .iter()
        .map(|&n| Ok((n, corpus::hypersurface(n, order).expect("known name").map_err(e)?)))
        .collect()
}

fn hierarchy() -> Check {
    let start = Instant::now();
    let expected: [(&str, [Option<bool>; 5]); 5] = [
        ("heis2", [Some(true); 5]),
        ("w2z2", [Some(false), Some(false), Some(true), Some(true), Some(true)]),
        ("degen3", [None, None, None, None, Some(false)]),
        ("flat2", [Some(false); 5]),
        ("ex110", [None, None, None, Some(false), Some(true)]),
    ];
    for ((name, h), (ename, table)) in corpus_at(10)?.into_iter().zip(expected) {
        assert_eq!(name, ename);
        let r = classify(&h, &options()).map_err(e)?;
        let holds: Vec<bool> = Condition::ALL.iter().map(|c| r.holds(*c)).collect();
        for w in holds.windows(2) {
            ensure(!w[0] || w[1], || format!("{name}: implication chain broken {holds:?}"))?;
        }
        for (c, want) in Condition::ALL.iter().zip(table) {
            if let Some(want) = want {
                ensure(r.holds(*c) == want, || {
                    format!("{name}: condition {c} expected holds={want}")
                })?;
            }
        }
        if name == "flat2" {
            ensure(!r.minimality.minimal, || "flat2 reported minimal".into())?;
        }
        if name == "ex110" {
            let iv = r.verdict(Condition::IV);
            ensure(matches!(iv.status, Status::FailsToOrder(_)), || {
                format!("ex110: IV is {:?}", iv.status)
            })?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))
}

fn segre_degenerate_example() -> Check {
    let h10 = corpus::segre_degenerate(10).map_err(e)?;
    let w = select_multiindices(&h10, 4, 1).map_err(e)?;
    ensure(w.betas.iter().all(|b| b.degree() <= 4), || {
        format!("selection {:?} exceeds 4", w.betas)
    })?;
    ensure(!w.minor.is_zero(), || "selection determinant vanishes".into())?;
    let h12 = corpus::segre_degenerate(12).map_err(e)?;
    let none = segre_determinant_witness(&h12, 4).map_err(e)?;
    ensure(none.is_none(), || format!("unexpected restricted witness {none:?}"))
}

fn cross_characterization() -> Check {
    for (name, h) in corpus_at(10)? {
        let r = classify(&h, &options()).map_err(e)?;
        ensure(r.iv_cross_check, || format!("{name}: IV cross-check disagrees"))?;
        ensure(r.v_cross_check, || format!("{name}: V cross-check disagrees"))?;
        let field = find_tangent_field(&h, 3, 10).map_err(e)?;
        ensure(field.is_some() == !r.holds(Condition::V), || {
            format!("{name}: tangent field vs V")
        })?;
    }
    Ok(())
}

fn reflection_identity_suite() -> Check {
    let h = corpus::heisenberg(12);
    let maps = [
        ("identity", FormalMap::identity(2, 12)),
        ("dilation", FormalMap::dilation(2, &Scalar::from_ratio(3, 2), 12)),
    ];
    for (name, map) in &maps {
        for r in reflection_identities(map, &h, &h, 3, 12).map_err(e)? {
            ensure(r.holds && r.order_delivered >= 6, || format!("{name}: {}", r.record()))?;
        }
        for r in conjugate_reflection_identities(map, &h, &h, 3, 12).map_err(e)? {
            ensure(r.holds && r.order_delivered >= 6, || format!("{name}: {}", r.record()))?;
        }
    }
    let rep = defining_function_equivalence_check(&corpus::shear(12), &h, &h, 3, 12).map_err(e)?;
    ensure(!rep.e_zero && !rep.f_zero && rep.leibniz_holds, || {
        format!("shear: {rep:?}")
    })
}

fn trigonal_recurrence() -> Check {
    let h = corpus::heisenberg(16);
    let maps = [
        ("identity", FormalMap::identity(2, 16)),
        ("dilation", FormalMap::dilation(2, &Scalar::from_ratio(3, 2), 16)),
        ("automorphism", corpus::heisenberg_automorphism(16)),
    ];
    for (name, map) in &maps {
        let jets = first_chain_jets(map, &h, &h, 4, 3, 16).map_err(e)?;
        ensure(jets.len() == 5 * 4, || format!("{name}: {} jets", jets.len()))?;
        for j in &jets {
            ensure(j.agree, || format!("{name}: {}", j.record()))?;
        }
    }
    Ok(())
}

fn second_chain() -> Check {
    let h = corpus::heisenberg(12);
    let id = FormalMap::identity(2, 12);
    let r = second_chain_system(&id, &h, &h, None, 4, 12, 1).map_err(e)?;
    ensure(r.kappa0 == Some(0), || format!("kappa0 = {:?}", r.kappa0))?;
    ensure(r.det_s_nonzero && r.chain_residuals_vanish, || r.records().join("; "))?;
    ensure(r.equivalent() && r.relation_rt_holds && r.relation_rs_holds, || {
        r.records().join("; ")
    })?;
    ensure(r.reduced_matches_plain, || r.records().join("; "))?;
    let flat = corpus::flat(12);
    let r = second_chain_system(&id, &flat, &flat, Some(2), 4, 12, 1).map_err(e)?;
    ensure(r.family_vanishes == [true; 3], || r.records().join("; "))
}

fn selfmap_constructor() -> Check {
    let h = corpus::degenerate3(12);
    let t = Coords::new(3).t;
    let coeffs = vec![Series::zero(&t, 12), Series::one(&t, 12), Series::zero(&t, 12)];
    let field = TangentField::new(3, coeffs, 0).map_err(e)?;
    let (map, _) = nonconvergent_selfmap(&h, &field, 12).map_err(e)?;
    // (w₁, w₂ + Σ_{1≤k≤11} k!·z^k, z), written out term by term.
    let mut fact = 1i64;
    let mut second = Series::var(&t, 1, 12);
    for k in 1..=11u32 {
        fact *= k as i64;
        second = &second + &Series::monomial(&t, Multiindex::from_slice(&[0, 0, k]), Scalar::from_int(fact), 12);
    }
    let expected = vec![Series::var(&t, 0, 12), second, Series::var(&t, 2, 12)];
    ensure(map.components() == expected.as_slice(), || {
        "self-map differs from the model".into()
    })?;
    let independent = FormalMap::new(3, expected).map_err(e)?;
    ensure(check_invertible(&independent).invertible(), || "not invertible".into())?;
    let tan = tangency_check(&independent, &h, &h, 12).map_err(e)?;
    ensure(tan.tangent && tan.order >= 12, || {
        format!("tangency residual at order {}", tan.order)
    })
}

fn kernel_soundness() -> Check {
    let v = Vars::new(["x", "y"]);
    let x = Series::var(&v, 0, 8);
    let y = Series::var(&v, 1, 8);
    let samples = [
        &(&x * &y).scale(&Scalar::gauss(1, 2)) + &x,
        &(&y * &y).scale(&Scalar::from_ratio(-3, 2)) + &y.scale(&Scalar::i()),
        (&x + &y).pow(3).add_scalar(&Scalar::from_int(2)),
    ];
    for a in &samples {
        for b in &samples {
            ensure((&(a * b) - &(b * a)).is_zero(), || "commutativity".into())?;
            for c in &samples {
                let l = &(a * b) * c;
                let r = a * &(b * c);
                let o = l.order().min(r.order());
                ensure(l.truncate(o) == r.truncate(o), || "associativity".into())?;
                let l = a * &(b + c);
                let r = &(a * b) + &(a * c);
                let o = l.order().min(r.order());
                ensure(l.truncate(o) == r.truncate(o), || "distributivity".into())?;
            }
        }
    }
    let subs = [&x + &(&y * &y), &y - &(&x * &x)];
    let (a, b) = (&samples[0], &samples[2]);
    let l = (a * b).compose(&subs).map_err(e)?;
    let r = &a.compose(&subs).map_err(e)? * &b.compose(&subs).map_err(e)?;
    let o = l.order().min(r.order());
    ensure(l.truncate(o) == r.truncate(o), || "compose/mul".into())?;
    let inv = samples[2].reciprocal().map_err(e)?;
    ensure((&(&samples[2] * &inv) - &Series::one(&v, 8)).is_zero(), || {
        "reciprocal".into()
    })?;
    let f = &(&y - &x) - &(&y * &y);
    let phi = f.implicit_solve().map_err(e)?;
    let back = f
        .compose(&[Series::var(phi.vars(), 0, phi.order()), phi.clone()])
        .map_err(e)?;
    ensure(back.truncate(phi.order()).is_zero(), || {
        "implicit re-substitution".into()
    })?;
    // (y³ ∘ (x + x²))'''' at 0: partitions of 4 points into 3 blocks, one of
    // size 2 (six ways), weighted by 3!·2! = 12.
    let u = Vars::new(["x"]);
    let t = Series::var(&u, 0, 10);
    let comp = (&t + &(&t * &t)).pow(3);
    ensure(
        comp.derive_multi(&[(0, 4)]).map_err(e)?.constant_term() == Scalar::from_int(72),
        || "Faa di Bruno".into(),
    )?;

    let c = Coords::new(2);
    let th = |terms: &[(&[u32], i64)]| {
        Series::from_terms(
            &c.theta,
            terms
                .iter()
                .map(|(ex, k)| (Multiindex::from_slice(ex), Scalar::from_int(*k))),
            10,
        )
    };
    let h = Hypersurface::new(2, &th(&[(&[1, 1, 0], 2), (&[2, 0, 0], 1), (&[0, 2, 0], 1)])).map_err(e)?;
    let (normal, witness) = h.normalize(10).map_err(e)?;
    ensure(normal.thetabar() == &th(&[(&[1, 1, 0], 2)]), || {
        format!("normal form {}", normal.thetabar())
    })?;
    ensure(tangency_check(&witness, &h, &normal, 10).map_err(e)?.tangent, || {
        "witness not tangent".into()
    })
}

fn artin_examples() -> Check {
    let w1 = Vars::new(["w", "y"]);
    let (w, y) = (Series::var(&w1, 0, 10), Series::var(&w1, 1, 10));
    let wv = Vars::new(["w"]);
    let x = Series::var(&wv, 0, 10);
    let a = artin_witness(&[&y - &(&w * &w)], &[&x * &x], 10).map_err(e)?;
    ensure(a.is_satisfied(), || format!("y − w²: {a}"))?;
    let w2 = Vars::new(["w", "y1", "y2"]);
    let v = |k| Series::var(&w2, k, 10);
    let b = artin_witness(&[&v(1) - &v(0), &v(2) - &(&v(1) * &v(1))], &[x.clone(), &x * &x], 10).map_err(e)?;
    ensure(b.is_satisfied(), || format!("triangular: {b}"))?;
    let d = &y - &w;
    let c = artin_witness(&[&d * &d], &[x], 10).map_err(e)?;
    ensure(matches!(c, ArtinVerdict::Inconclusive { .. }), || {
        format!("double root: {c}")
    })
}

#[test]
fn acceptance() {
    let checks: [Criterion; 9] = [
        ("hierarchy", hierarchy),
        ("segre-degenerate example", segre_degenerate_example),
        ("cross-characterization", cross_characterization),
        ("reflection identities", reflection_identity_suite),
        ("trigonal recurrence", trigonal_recurrence),
        ("second chain", second_chain),
        ("formal self-map", selfmap_constructor),
        ("kernel soundness", kernel_soundness),
        ("formal solution witness", artin_examples),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "criterion {}: PASS {name} ({:.2} s)",
                k + 1,
                start.elapsed().as_secs_f64()
            ),
            Err(msg) => {
                println!("criterion {}: FAIL {name}: {msg}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
