//! Formal CR maps between hypersurfaces in normal coordinates: tangency,
//! the reflection function, reflection identities, Segre-chain recurrences
//! and the determinant criterion for formal solutions.

mod artin;
mod chains;
mod cr;

pub use artin::{artin_witness, ArtinVerdict};
pub use chains::{first_chain_jet, first_chain_jets, second_chain_system, FirstChainJet, SecondChainReport};
pub use cr::{
    conjugate_reflection_identities, conjugate_reflection_identity, cr_apply, defining_function_equivalence_check,
    reflection_identities, reflection_identity, reflection_system, ConjugateIdentityReport, CrFrame,
    DefiningFunctionEquivalenceReport, ReflectionIdentityReport, ReflectionSystem,
};

use std::fmt;

use crate::algebra::{linalg, Multiindex, Scalar, Series, Vars};
use crate::hypersurface::{Coords, Hypersurface};
use crate::{Error, Result};

/// A formal map `h = (g_1, …, g_{n−1}, f)` in the variables `(w, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalMap {
    n: usize,
    components: Vec<Series>,
    jacobian0: Vec<Vec<Scalar>>,
}

impl FormalMap {
    /// Wraps `n` component series (matched by name against `w1.., z`).
    pub fn new(n: usize, components: Vec<Series>) -> Result<FormalMap> {
        if n < 2 {
            return Err(Error::Dimension("maps need n ≥ 2".into()));
        }
        if components.len() != n {
            return Err(Error::Dimension(format!(
                "expected {n} components, got {}",
                components.len()
            )));
        }
        let c = Coords::new(n);
        let components: Vec<Series> = components
            .iter()
            .map(|s| s.relabel(&c.t))
            .collect::<std::result::Result<_, _>>()?;
        if components.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(Error::NotAtOrigin);
        }
        if components.iter().any(|s| s.order() < 2) {
            return Err(Error::OrderExhausted(
                "map components must be known to order ≥ 2".into(),
            ));
        }
        let jacobian0 = components
            .iter()
            .map(|s| (0..n).map(|k| s.coeff(&Multiindex::unit(n, k))).collect())
            .collect();
        Ok(FormalMap {
            n,
            components,
            jacobian0,
        })
    }

    pub fn identity(n: usize, order: u32) -> FormalMap {
        let c = Coords::new(n);
        FormalMap::new(n, (0..n).map(|k| Series::var(&c.t, k, order)).collect()).expect("identity is valid")
    }

    /// The dilation `(w, z) ↦ (c·w, c²·z)`.
    pub fn dilation(n: usize, factor: &Scalar, order: u32) -> FormalMap {
        let c = Coords::new(n);
        let mut comps: Vec<Series> = (0..n - 1).map(|k| Series::var(&c.t, k, order).scale(factor)).collect();
        comps.push(Series::var(&c.t, n - 1, order).scale(&(factor * factor)));
        FormalMap::new(n, comps).expect("dilation is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Series] {
        &self.components
    }

    /// `g_j` (0-based).
    pub fn g(&self, j: usize) -> &Series {
        &self.components[j]
    }

    pub fn f(&self) -> &Series {
        &self.components[self.n - 1]
    }

    pub fn order(&self) -> u32 {
        self.components.iter().map(Series::order).min().unwrap_or(0)
    }

    pub fn jacobian0(&self) -> &[Vec<Scalar>] {
        &self.jacobian0
    }

    pub fn truncate(&self, order: u32) -> FormalMap {
        FormalMap {
            n: self.n,
            components: self.components.iter().map(|s| s.truncate(order)).collect(),
            jacobian0: self.jacobian0.clone(),
        }
    }

    /// Components embedded into the ambient ring `(w, z, ζ, ξ)`.
    pub fn on_ambient(&self, c: &Coords) -> Vec<Series> {
        self.components.iter().map(|s| c.t_to_amb(s)).collect()
    }

    /// Conjugate components `h̄(ζ, ξ)` embedded into the ambient ring.
    pub fn conj_on_ambient(&self, c: &Coords) -> Vec<Series> {
        self.components.iter().map(|s| c.tau_to_amb(&c.conj_t(s))).collect()
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &FormalMap) -> Result<FormalMap> {
        if self.n != other.n {
            return Err(Error::Dimension("maps of different dimensions".into()));
        }
        let comps = self
            .components
            .iter()
            .map(|s| s.compose(&other.components))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FormalMap::new(self.n, comps)
    }
}

impl fmt::Display for FormalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.components.iter().enumerate() {
            let name = if k + 1 == self.n {
                "f".to_string()
            } else {
                format!("g{}", k + 1)
            };
            writeln!(f, "{name} = {s}")?;
        }
        Ok(())
    }
}

/// Jacobian determinants at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityReport {
    /// `det(∂h_j/∂t_k(0))`.
    pub det: Scalar,
    /// `det(∂g_j/∂w_k(0))`, which equals the value at 0 of `det(𝓛̲ḡ)`.
    pub det_g_w: Scalar,
}

impl InvertibilityReport {
    pub fn invertible(&self) -> bool {
        !self.det.is_zero()
    }
}

pub fn check_invertible(h: &FormalMap) -> InvertibilityReport {
    let m = h.n - 1;
    let gw: Vec<Vec<Scalar>> = h.jacobian0[..m].iter().map(|row| row[..m].to_vec()).collect();
    InvertibilityReport {
        det: linalg::det(&h.jacobian0),
        det_g_w: linalg::det(&gw),
    }
}

/// Residuals of the two fundamental tangency equations.
#[derive(Clone, Debug)]
pub struct TangencyReport {
    pub tangent: bool,
    /// `f − f̄ − iΘ̄′(g, ḡ, f̄)` with `ξ := z − iΘ(ζ, w, z)`, in `(w, z, ζ)`.
    pub row1: Series,
    /// `f̄ − f + iΘ′(ḡ, g, f)` with `z := ξ + iΘ̄(w, ζ, ξ)`, in `(w, ζ, ξ)`.
    pub row2: Series,
    pub order: u32,
}

fn check_dims(h: &FormalMap, m: &Hypersurface, mp: &Hypersurface) -> Result<()> {
    if h.n != m.n() || h.n != mp.n() {
        return Err(Error::Dimension(format!(
            "map in dimension {}, hypersurfaces in dimensions {} and {}",
            h.n,
            m.n(),
            mp.n()
        )));
    }
    Ok(())
}

/// `Θ̄′(g(t), ḡ(τ), f̄(τ))` in the ambient ring.
pub(crate) fn thetabar_prime_on_map(mp: &Hypersurface, hol: &[Series], conj: &[Series]) -> Result<Series> {
    let n = hol.len();
    let subs: Vec<Series> = hol[..n - 1]
        .iter()
        .chain(conj[..n - 1].iter())
        .chain([&conj[n - 1]])
        .cloned()
        .collect();
    Ok(mp.thetabar().compose(&subs)?)
}

/// `Θ′(ḡ(τ), g(t), f(t))` in the ambient ring.
pub(crate) fn theta_prime_on_map(mp: &Hypersurface, hol: &[Series], conj: &[Series]) -> Result<Series> {
    let n = hol.len();
    let subs: Vec<Series> = conj[..n - 1]
        .iter()
        .chain(hol[..n - 1].iter())
        .chain([&hol[n - 1]])
        .cloned()
        .collect();
    Ok(mp.thetabar().conj().compose(&subs)?)
}

/// Checks that `h` maps the complexification of `m` into that of `mp` up
/// to `order`, through both fundamental equations.
pub fn tangency_check(h: &FormalMap, m: &Hypersurface, mp: &Hypersurface, order: u32) -> Result<TangencyReport> {
    check_dims(h, m, mp)?;
    let (h, m, mp) = (h.truncate(order), m.truncate(order), mp.truncate(order));
    let c = m.coords();
    let hol = h.on_ambient(c);
    let conj = h.conj_on_ambient(c);
    let n = h.n;
    let f = &hol[n - 1];
    let fb = &conj[n - 1];
    let r1 = &(f - fb) - &thetabar_prime_on_map(&mp, &hol, &conj)?.mul_i();
    let row1 = m.restrict_xi(&r1)?.relabel(&c.wzzeta)?;
    let r2 = &(fb - f) + &theta_prime_on_map(&mp, &hol, &conj)?.mul_i();
    let row2 = m.restrict_z(&r2)?.relabel(&c.theta)?;
    let ord = row1.order().min(row2.order());
    let z1 = row1.truncate(ord).is_zero();
    let z2 = row2.truncate(ord).is_zero();
    if z1 != z2 {
        return Err(Error::Consistency(format!(
            "the two tangency equations disagree at order {ord} (row1 zero: {z1}, row2 zero: {z2})"
        )));
    }
    Ok(TangencyReport {
        tangent: z1 && z2,
        row1,
        row2,
        order: ord,
    })
}

pub(crate) fn require_tangent(h: &FormalMap, m: &Hypersurface, mp: &Hypersurface, order: u32) -> Result<()> {
    let rep = tangency_check(h, m, mp, order)?;
    if !rep.tangent {
        let what = rep
            .row1
            .leading_term()
            .map(|(e, c)| format!("first residual term {e} with coefficient {c}"))
            .unwrap_or_default();
        return Err(Error::NotTangent(what));
    }
    Ok(())
}

/// The reflection function `μ̄ − f + iΣ λ̄^β Θ′_β(g, f)`, truncated to
/// `1 ≤ |β| ≤ beta_bound` and `t`-degree below `order`.
#[derive(Clone, Debug)]
pub struct ReflectionFunction {
    /// `(w, z, lambda1.., mu)`.
    pub vars: Vars,
    pub f: Series,
    /// `(β, Θ′_β(g, f))` in the `(w, z)` ring.
    pub coefficients: Vec<(Multiindex, Series)>,
    pub beta_bound: u32,
    pub order: u32,
}

pub fn reflection_function(
    h: &FormalMap,
    mp: &Hypersurface,
    order: u32,
    beta_bound: u32,
) -> Result<ReflectionFunction> {
    if h.n != mp.n() {
        return Err(Error::Dimension(
            "map and target hypersurface differ in dimension".into(),
        ));
    }
    let h = h.truncate(order);
    let mp = mp.truncate(order);
    let m = h.n - 1;
    let mut coefficients = Vec::new();
    for beta in Multiindex::all_up_to(m, 1, beta_bound) {
        if beta.degree() >= mp.order() {
            break;
        }
        let theta_b = mp.theta_coefficient(&beta)?;
        coefficients.push((beta, theta_b.compose(h.components())?));
    }
    let c = mp.coords();
    let names: Vec<String> =
        c.t.names()
            .iter()
            .cloned()
            .chain((1..=m).map(|j| format!("lambda{j}")))
            .chain(["mu".to_string()])
            .collect();
    Ok(ReflectionFunction {
        vars: Vars::new(names),
        f: h.f().clone(),
        coefficients,
        beta_bound,
        order,
    })
}

impl ReflectionFunction {
    /// The truncated reflection function as one series in
    /// `(w, z, λ̄, μ̄)`; it is exact below total degree
    /// `min(order, beta_bound + 1)`.
    pub fn to_series(&self) -> Series {
        let n = self.f.nvars();
        let m = n - 1;
        let total = self.vars.len();
        let order = self.order.min(self.beta_bound + 1).max(1);
        let t_in: Vec<usize> = (0..n).collect();
        let mut out = Series::var(&self.vars, total - 1, order);
        out = &out - &self.f.embed(&self.vars, &t_in).truncate(order);
        for (beta, s) in &self.coefficients {
            let mut e = Multiindex::zero(total);
            for j in 0..m {
                e.set(n + j, beta.get(j));
            }
            let mono = Series::monomial(&self.vars, e, Scalar::i(), order);
            out = &out + &mono.mul_trunc(&s.embed(&self.vars, &t_in), order);
        }
        out
    }

    /// `R(w, z, 0, μ̄) = μ̄ − f(w, z)`.
    pub fn at_lambda_zero(&self) -> Series {
        let n = self.f.nvars();
        let t_in: Vec<usize> = (0..n).collect();
        &Series::var(&self.vars, self.vars.len() - 1, self.order) - &self.f.embed(&self.vars, &t_in)
    }
}
