//! Tangent vector fields, their flows, the formal self-maps built on them,
//! and the determinant criterion for formal solutions.

use crformal::classify::{classify, ClassifyOptions, Condition};
use crformal::corpus;
use crformal::flows::{
    factorial_model, find_tangent_field, flow, nonconvergent_selfmap, tangency_residual, TangentField,
};
use crformal::manifest::{read_artin, read_field, write_artin, write_field, ArtinSystem};
use crformal::mapping::{artin_witness, ArtinVerdict};
use crformal::{Coords, Error, Multiindex, Scalar, Series, Vars};
use proptest::prelude::*;

fn fact(k: u32) -> Scalar {
    Scalar::from_int((1..=k as i64).product())
}

fn field(n: usize, coeffs: Vec<Series>) -> TangentField {
    TangentField::new(n, coeffs, 1).unwrap()
}

/// `∂/∂w_{k}` in dimension `n`.
fn translation(n: usize, k: usize, order: u32) -> TangentField {
    let t = Coords::new(n).t;
    let coeffs = (0..n)
        .map(|j| {
            if j == k {
                Series::one(&t, order)
            } else {
                Series::zero(&t, order)
            }
        })
        .collect();
    field(n, coeffs)
}

#[test]
fn tangent_fields_on_the_corpus() {
    let d3 = corpus::degenerate3(8);
    let f = find_tangent_field(&d3, 3, 8)
        .unwrap()
        .expect("degenerate3 carries a field");
    assert!(tangency_residual(&d3, &f).unwrap().is_zero());
    let flat = corpus::flat(8);
    let f = find_tangent_field(&flat, 3, 8)
        .unwrap()
        .expect("the flat hyperplane carries a field");
    assert!(tangency_residual(&flat, &f).unwrap().is_zero());
    assert_eq!(find_tangent_field(&corpus::heisenberg(8), 3, 8).unwrap(), None);
    // ∂/∂w₂ is tangent to Im z = |w₁|².
    assert!(tangency_residual(&d3, &translation(3, 1, 8)).unwrap().is_zero());
    // ∂/∂w is not tangent to the Heisenberg hypersurface.
    assert!(!tangency_residual(&corpus::heisenberg(8), &translation(2, 0, 8))
        .unwrap()
        .is_zero());
}

#[test]
fn a_field_exists_exactly_when_holomorphic_nondegeneracy_fails() {
    let opts = ClassifyOptions {
        order: 10,
        kmax: Some(6),
        beta_bound: 4,
        seed: 1,
    };
    for name in corpus::HYPERSURFACE_NAMES {
        let h = corpus::hypersurface(name, 10).unwrap().unwrap();
        let report = classify(&h, &opts).unwrap();
        let found = find_tangent_field(&h, 3, 10).unwrap().is_some();
        assert_eq!(found, !report.holds(Condition::V), "{name}");
    }
}

#[test]
fn translation_flow() {
    let phi = flow(&translation(3, 1, 6), 6).unwrap();
    let v = phi.vars().clone();
    assert_eq!(v.len(), 4);
    let var = |k| Series::var(&v, k, 6);
    assert_eq!(phi.components, vec![var(0), &var(1) + &var(3), var(2)]);
}

#[test]
fn euler_flow_is_the_exponential() {
    let t = Coords::new(2).t;
    let w = Series::var(&t, 0, 8);
    let phi = flow(&field(2, vec![w, Series::zero(&t, 8)]), 8).unwrap();
    // w·e^u, coefficient of w·u^j is 1/j!.
    for j in 0..7u32 {
        let want = fact(j).inv().unwrap();
        assert_eq!(phi.components[0].coeff_of(&[1, 0, j]), want, "u^{j}");
    }
    assert_eq!(phi.components[1], Series::var(phi.vars(), 1, 8));
}

#[test]
fn flows_start_at_the_identity() {
    let d3 = corpus::degenerate3(8);
    let f = find_tangent_field(&d3, 2, 8).unwrap().unwrap();
    let phi = flow(&f, 8).unwrap();
    for (k, c) in phi.components.iter().enumerate() {
        assert_eq!(
            c.set_zero(3),
            Series::var(phi.vars(), k, 8).set_zero(3),
            "component {k}"
        );
    }
}

fn small_coeff() -> impl Strategy<Value = Scalar> {
    (-2i64..=2, -2i64..=2).prop_map(|(a, b)| Scalar::gauss(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// `φ(φ(t, u), v) = φ(t, u + v)` for linear fields `L = (a·w + b·z)∂/∂w + c·z∂/∂z`.
    #[test]
    fn flows_form_a_one_parameter_group(a in small_coeff(), b in small_coeff(), c in small_coeff()) {
        let order = 6;
        let t = Coords::new(2).t;
        let w = Series::var(&t, 0, order);
        let z = Series::var(&t, 1, order);
        let a1 = &w.scale(&a) + &z.scale(&b);
        let a2 = z.scale(&c);
        prop_assume!(!(a1.is_zero() && a2.is_zero()));
        let phi = flow(&TangentField::new(2, vec![a1, a2], 1).unwrap(), order).unwrap();
        let ring = Vars::new(["w1", "z", "u", "v"]);
        let var = |k| Series::var(&ring, k, order);
        // φ(t, u) and φ(t, v) embedded in (w, z, u, v).
        let phi_u: Vec<Series> = phi.components.iter().map(|s| s.embed(&ring, &[0, 1, 2])).collect();
        let lhs: Vec<Series> = phi
            .components
            .iter()
            .map(|s| s.compose(&[phi_u[0].clone(), phi_u[1].clone(), var(3)]).unwrap())
            .collect();
        let rhs: Vec<Series> = phi
            .components
            .iter()
            .map(|s| s.compose(&[var(0), var(1), &var(2) + &var(3)]).unwrap())
            .collect();
        for (l, r) in lhs.iter().zip(&rhs) {
            let o = l.order().min(r.order());
            prop_assert_eq!(l.truncate(o), r.truncate(o));
        }
    }
}

#[test]
fn selfmap_along_a_translation() {
    let d3 = corpus::degenerate3(12);
    let (map, cert) = nonconvergent_selfmap(&d3, &translation(3, 1, 12), 12).unwrap();
    assert!(cert.tangency.tangent);
    assert_eq!(cert.invertibility.det, Scalar::one());
    assert_eq!(cert.moving_component, Some(1));
    let t = Coords::new(3).t;
    let var = |k| Series::var(&t, k, 12);
    // (w₁, w₂ + Σ_{k<12} k!·z^k, z), built independently of the flow.
    let model = Series::from_terms(
        &t,
        (1..12u32).map(|k| (Multiindex::from_slice(&[0, 0, k]), fact(k))),
        12,
    );
    assert_eq!(factorial_model(&t, 12), model);
    assert_eq!(map.components(), &[var(0), &var(1) + &model, var(2)]);
}

#[test]
fn selfmap_requires_a_tangent_field() {
    let h = corpus::heisenberg(8);
    assert!(matches!(
        nonconvergent_selfmap(&h, &translation(2, 0, 8), 8),
        Err(Error::NotTangent(_))
    ));
}

#[test]
fn field_manifest_round_trip() {
    let f = find_tangent_field(&corpus::degenerate3(8), 2, 8).unwrap().unwrap();
    let txt = write_field(&f);
    let back = read_field(&txt).unwrap();
    assert_eq!(back, f);
    assert_eq!(write_field(&back), txt);
}

fn wy(m: usize) -> Vars {
    Vars::new(std::iter::once("w".to_string()).chain((1..=m).map(|k| format!("y{k}"))))
}

#[test]
fn artin_monomial_solution() {
    // R = y − w², ĝ = w².
    let v = wy(1);
    let (w, y) = (Series::var(&v, 0, 9), Series::var(&v, 1, 9));
    let x = Series::var(&Vars::new(["w"]), 0, 9);
    match artin_witness(&[&y - &(&w * &w)], &[&x * &x], 9).unwrap() {
        ArtinVerdict::Satisfied { rows, det, .. } => {
            assert_eq!(rows, vec![0]);
            assert_eq!(det, Series::one(det.vars(), det.order()));
        }
        other => panic!("{other}"),
    }
}

#[test]
fn artin_catalan_solution() {
    // R = y − w − y², solution ĝ = Catalan series (w + w² + 2w³ + …).
    let v = wy(1);
    let (w, y) = (Series::var(&v, 0, 9), Series::var(&v, 1, 9));
    let r = &(&y - &w) - &(&y * &y);
    let g = r.implicit_solve().unwrap();
    match artin_witness(&[r], &[g], 9).unwrap() {
        ArtinVerdict::Satisfied { rows, det, order } => {
            assert_eq!(rows, vec![0]);
            // ∂R/∂y costs one order of the input.
            assert_eq!(order, 8);
            assert_eq!(det.constant_term(), Scalar::one());
        }
        other => panic!("{other}"),
    }
}

#[test]
fn artin_double_root_is_inconclusive() {
    let v = wy(1);
    let (w, y) = (Series::var(&v, 0, 9), Series::var(&v, 1, 9));
    let d = &y - &w;
    let g = Series::var(&Vars::new(["w"]), 0, 9);
    // (y − w)² is known to order 10 since y − w has no constant term.
    assert_eq!(
        artin_witness(&[&d * &d], &[g], 9).unwrap(),
        ArtinVerdict::Inconclusive { order: 9 }
    );
}

#[test]
fn artin_triangular_system() {
    // R = (y₁ − w, y₂ − y₁²), ĝ = (w, w²).
    let v = wy(2);
    let var = |k| Series::var(&v, k, 9);
    let eqs = vec![&var(1) - &var(0), &var(2) - &(&var(1) * &var(1))];
    let wv = Vars::new(["w"]);
    let x = Series::var(&wv, 0, 9);
    let sol = vec![x.clone(), &x * &x];
    let verdict = artin_witness(&eqs, &sol, 9).unwrap();
    assert!(verdict.is_satisfied());
    let sys = ArtinSystem {
        equations: eqs,
        solution: sol,
    };
    let txt = write_artin(&sys);
    assert_eq!(read_artin(&txt).unwrap(), sys);
}

#[test]
fn artin_rejects_non_solutions() {
    let v = wy(1);
    let (w, y) = (Series::var(&v, 0, 9), Series::var(&v, 1, 9));
    let g = Series::var(&Vars::new(["w"]), 0, 9);
    assert!(matches!(
        artin_witness(&[&y - &(&w * &w)], &[g], 9),
        Err(Error::InvalidArgument(_))
    ));
}
