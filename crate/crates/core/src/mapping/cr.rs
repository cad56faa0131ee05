//! Complexified CR vector fields and the reflection identities.

use std::collections::HashMap;

use crate::algebra::{linalg, Multiindex, Scalar, Series, Vars};
use crate::hypersurface::{Coords, Hypersurface};
use crate::{Error, Result};

use super::{check_dims, check_invertible, require_tangent, theta_prime_on_map, thetabar_prime_on_map, FormalMap};

/// The complexified CR vector fields of a hypersurface,
/// `𝓛̲_j = ∂_{ζ_j} − iΘ_{ζ_j}(ζ, w, z)∂_ξ` and `𝓛_j = ∂_{w_j} + iΘ̄_{w_j}(w, ζ, ξ)∂_z`,
/// acting on any ring whose leading variables are the ambient `(w, z, ζ, ξ)`.
///
/// The antiholomorphic fields commute and annihilate `r̄` exactly; the
/// holomorphic ones annihilate `r` exactly.
#[derive(Clone, Debug)]
pub struct CrFrame {
    coords: Coords,
    /// `−iΘ_{ζ_j}(ζ, w, z)` in the ambient ring.
    anti: Vec<Series>,
    /// `iΘ̄_{w_j}(w, ζ, ξ)` in the ambient ring.
    holo: Vec<Series>,
}

impl CrFrame {
    pub fn new(h: &Hypersurface) -> Result<CrFrame> {
        let c = h.coords().clone();
        let theta = h.theta_amb();
        let thetabar = h.thetabar_amb();
        let anti = c
            .amb_zeta()
            .iter()
            .map(|&k| Ok(-&theta.derive(k)?.mul_i()))
            .collect::<Result<_>>()?;
        let holo = c
            .amb_w()
            .iter()
            .map(|&k| Ok(thetabar.derive(k)?.mul_i()))
            .collect::<Result<_>>()?;
        Ok(CrFrame { coords: c, anti, holo })
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    fn lift(coef: &Series, target: &Vars) -> Series {
        if coef.vars() == target {
            coef.clone()
        } else {
            let map: Vec<usize> = (0..coef.nvars()).collect();
            coef.embed(target, &map)
        }
    }

    fn check_ring(&self, s: &Series) -> Result<()> {
        let amb = self.coords.amb.names();
        let names = s.vars().names();
        if names.len() < amb.len() || &names[..amb.len()] != amb {
            return Err(Error::Dimension(format!(
                "CR fields act on rings starting with ({}), got ({})",
                self.coords.amb,
                s.vars()
            )));
        }
        Ok(())
    }

    /// `𝓛̲_j s` (0-based `j`).
    pub fn antiholomorphic(&self, j: usize, s: &Series) -> Result<Series> {
        self.check_ring(s)?;
        let c = &self.coords;
        let d_zeta = s.derive(c.azeta(j))?;
        let d_xi = s.derive(c.axi())?;
        Ok(&d_zeta + &(&Self::lift(&self.anti[j], s.vars()) * &d_xi))
    }

    /// `𝓛_j s` (0-based `j`).
    pub fn holomorphic(&self, j: usize, s: &Series) -> Result<Series> {
        self.check_ring(s)?;
        let c = &self.coords;
        let d_w = s.derive(c.aw(j))?;
        let d_z = s.derive(c.az())?;
        Ok(&d_w + &(&Self::lift(&self.holo[j], s.vars()) * &d_z))
    }

    /// `𝓛̲^β s` in the ring of `s`; each application costs one order.
    pub fn apply(&self, beta: &Multiindex, s: &Series) -> Result<Series> {
        let mut out = s.clone();
        for j in 0..beta.len() {
            for _ in 0..beta.get(j) {
                out = self.antiholomorphic(j, &out)?;
            }
        }
        Ok(out)
    }

    /// `𝓛̲^δ s` for every `|δ| ≤ k`, sharing intermediate results.
    pub fn apply_all(&self, k: u32, s: &Series) -> Result<HashMap<Multiindex, Series>> {
        let m = self.coords.m();
        let mut out: HashMap<Multiindex, Series> = HashMap::new();
        for delta in Multiindex::all_up_to(m, 0, k) {
            let value = match (0..m).find(|&j| delta.get(j) > 0) {
                None => s.clone(),
                Some(j) => {
                    let mut prev = delta.clone();
                    prev.set(j, delta.get(j) - 1);
                    self.antiholomorphic(j, &out[&prev])?
                }
            };
            out.insert(delta, value);
        }
        Ok(out)
    }
}

/// Applies `𝓛̲^β` to an ambient or `(ζ, ξ)` series and restricts the result
/// to the complexification through `z := ξ + iΘ̄(w, ζ, ξ)`; the result lives
/// in `(w, ζ, ξ)`.
pub fn cr_apply(m: &Hypersurface, beta: &Multiindex, target: &Series) -> Result<Series> {
    let c = m.coords();
    if beta.len() != c.m() {
        return Err(Error::Dimension(format!(
            "multiindex {beta} must have length {}",
            c.m()
        )));
    }
    let s = target.relabel(&c.amb)?;
    let frame = CrFrame::new(m)?;
    let applied = frame.apply(beta, &s)?;
    Ok(m.restrict_z(&applied)?.relabel(&c.theta)?)
}

/// Shared data for a map between two hypersurfaces, in the ambient ring of
/// the source.
pub(crate) struct MapOnAmbient {
    pub hol: Vec<Series>,
    pub conj: Vec<Series>,
}

impl MapOnAmbient {
    pub fn new(h: &FormalMap, m: &Hypersurface) -> MapOnAmbient {
        MapOnAmbient {
            hol: h.on_ambient(m.coords()),
            conj: h.conj_on_ambient(m.coords()),
        }
    }

    pub fn gbar(&self) -> &[Series] {
        &self.conj[..self.conj.len() - 1]
    }

    pub fn fbar(&self) -> &Series {
        &self.conj[self.conj.len() - 1]
    }

    /// `ḡ^ε`.
    pub fn gbar_power(&self, eps: &Multiindex) -> Series {
        let g = self.gbar();
        let mut out = Series::one(g[0].vars(), g[0].order());
        for (j, gj) in g.iter().enumerate() {
            if eps.get(j) > 0 {
                out = &out * &gj.pow(eps.get(j));
            }
        }
        out
    }
}

pub(crate) fn scalar_binomial(beta: &Multiindex, eps: &Multiindex) -> Scalar {
    Scalar::from_biguint(&beta.binomial(eps))
}

/// `(1/β!)∂^β_{ζ′}Θ′(ζ′, w′, z′)` as a series in the `Θ̄′` slots, read as
/// `(ζ′, w′, z′)`.
pub(crate) fn theta_prime_taylor(mp: &Hypersurface, beta: &Multiindex) -> Result<Series> {
    let c = mp.coords();
    let base = mp.thetabar().conj();
    let orders: Vec<(usize, u32)> = c.theta_w().into_iter().zip(beta.iter()).collect();
    let d = base.derive_multi(&orders)?;
    let inv = Scalar::from_biguint(&beta.factorial())
        .inv()
        .expect("factorials are nonzero");
    Ok(d.scale(&inv))
}

/// The linear system obtained by applying `𝓛̲^δ`, `1 ≤ |δ| ≤ k`, to the
/// conjugate fundamental identity: `i·𝓛̲^δ f̄ = Σ_β A_{δβ}·ω̲_β` on the
/// complexification, with `A_{δβ} = Σ_{ε≤β} C(β, ε)(−ḡ)^{β−ε}𝓛̲^δ(ḡ^ε)`
/// vanishing for `|β| > |δ|`. All series live in `(w, ζ, ξ)`.
#[derive(Clone, Debug)]
pub struct ReflectionSystem {
    pub k: u32,
    /// Row and column labels, `1 ≤ |β| ≤ k` in graded-lexicographic order.
    pub betas: Vec<Multiindex>,
    pub matrix: Vec<Vec<Series>>,
    pub rhs: Vec<Series>,
    /// The solved unknowns `ω̲_β`.
    pub omega: Vec<Series>,
    /// `Δ̲ = det(𝓛̲_j ḡ_k)`, invertible at the origin.
    pub delta: Series,
}

impl ReflectionSystem {
    pub fn omega_of(&self, beta: &Multiindex) -> Option<&Series> {
        self.betas.iter().position(|b| b == beta).map(|i| &self.omega[i])
    }

    /// Least known order over the solved unknowns.
    pub fn order(&self) -> u32 {
        self.omega.iter().map(Series::order).min().unwrap_or(0)
    }
}

pub(crate) fn require_unit_delta(h: &FormalMap) -> Result<()> {
    if check_invertible(h).det_g_w.is_zero() {
        return Err(Error::InvalidArgument("det(∂g/∂w)(0) = 0, so Δ̲ is not a unit".into()));
    }
    Ok(())
}

/// Builds and solves the reflection system up to `|β| ≤ k`.
pub fn reflection_system(
    h: &FormalMap,
    m: &Hypersurface,
    mp: &Hypersurface,
    k: u32,
    order: u32,
) -> Result<ReflectionSystem> {
    check_dims(h, m, mp)?;
    if k == 0 {
        return Err(Error::InvalidArgument("the reflection system needs k ≥ 1".into()));
    }
    require_unit_delta(h)?;
    let (h, m, mp) = (h.truncate(order), m.truncate(order), mp.truncate(order));
    require_tangent(&h, &m, &mp, order)?;
    build_system(&h, &m, k)
}

pub(crate) fn build_system(h: &FormalMap, m: &Hypersurface, k: u32) -> Result<ReflectionSystem> {
    let c = m.coords();
    let mm = c.m();
    let frame = CrFrame::new(m)?;
    let data = MapOnAmbient::new(h, m);
    let restrict = |s: &Series| -> Result<Series> { Ok(m.restrict_z(s)?.relabel(&c.theta)?) };

    let betas = Multiindex::all_up_to(mm, 1, k);
    // 𝓛̲^δ(ḡ^ε) for all |δ|, |ε| ≤ k.
    let mut lg: HashMap<Multiindex, HashMap<Multiindex, Series>> = HashMap::new();
    for eps in Multiindex::all_up_to(mm, 0, k) {
        let all = frame.apply_all(k, &data.gbar_power(&eps))?;
        lg.insert(eps, all);
    }
    let mut neg_powers: HashMap<Multiindex, Series> = HashMap::new();
    for eps in Multiindex::all_up_to(mm, 0, k) {
        let sign = if eps.degree() % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        neg_powers.insert(eps.clone(), data.gbar_power(&eps).scale(&sign));
    }
    let mut matrix = Vec::with_capacity(betas.len());
    for delta in &betas {
        let mut row = Vec::with_capacity(betas.len());
        for beta in &betas {
            if beta.degree() > delta.degree() {
                row.push(Series::zero(&c.theta, m.order()));
                continue;
            }
            let mut acc: Option<Series> = None;
            for eps in beta.divisors() {
                let rest = beta.checked_sub(&eps).expect("divisor");
                let term = (&neg_powers[&rest] * &lg[&eps][delta]).scale(&scalar_binomial(beta, &eps));
                acc = Some(match acc {
                    Some(a) => &a + &term,
                    None => term,
                });
            }
            row.push(restrict(&acc.expect("β has at least one divisor"))?);
        }
        matrix.push(row);
    }
    let lf = frame.apply_all(k, data.fbar())?;
    let rhs = betas
        .iter()
        .map(|d| restrict(&lf[d].mul_i()))
        .collect::<Result<Vec<_>>>()?;
    let omega = linalg::solve_unit_system(&matrix, &rhs)?;
    let jac: Vec<Vec<Series>> = (0..mm)
        .map(|j| {
            data.gbar()
                .iter()
                .map(|g| restrict(&frame.antiholomorphic(j, g)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let jorder = jac.iter().flatten().map(Series::order).min().unwrap_or(1);
    let delta = linalg::series_det(&jac, &c.theta, jorder);
    Ok(ReflectionSystem {
        k,
        betas,
        matrix,
        rhs,
        omega,
        delta,
    })
}

/// Both members of a reflection identity for one multiindex.
#[derive(Clone, Debug)]
pub struct ReflectionIdentityReport {
    pub beta: Multiindex,
    /// `Θ′_β(g, f) + Σ_γ ((β+γ)!/(β!γ!)) ḡ^γ Θ′_{β+γ}(g, f)` on the
    /// complexification.
    pub lhs: Series,
    /// `ω̲_β` from the solved system (for `β = 0`, `−i(f − f̄)`).
    pub omega: Series,
    pub delta: Series,
    pub order_delivered: u32,
    pub holds: bool,
}

impl ReflectionIdentityReport {
    pub fn record(&self) -> String {
        format!(
            "identity=classical beta={} order_delivered={} status={}",
            self.beta,
            self.order_delivered,
            if self.holds { "ok" } else { "fail" }
        )
    }
}

fn compare(a: &Series, b: &Series) -> (u32, bool) {
    let ord = a.order().min(b.order());
    (ord, (&a.truncate(ord) - &b.truncate(ord)).is_zero())
}

/// Checks the reflection identity for `β` (and every `|β′| ≤ |β|` when
/// called through [`reflection_identities`]).
pub fn reflection_identity(
    h: &FormalMap,
    m: &Hypersurface,
    mp: &Hypersurface,
    beta: &Multiindex,
    order: u32,
) -> Result<ReflectionIdentityReport> {
    let all = reflection_identities(h, m, mp, beta.degree(), order)?;
    all.into_iter()
        .find(|r| &r.beta == beta)
        .ok_or_else(|| Error::Dimension(format!("multiindex {beta} has the wrong length")))
}

/// Reflection identities for all `|β| ≤ k`, including `β = 0`.
pub fn reflection_identities(
    h: &FormalMap,
    m: &Hypersurface,
    mp: &Hypersurface,
    k: u32,
    order: u32,
) -> Result<Vec<ReflectionIdentityReport>> {
    check_dims(h, m, mp)?;
    require_unit_delta(h)?;
    let (h, m, mp) = (h.truncate(order), m.truncate(order), mp.truncate(order));
    require_tangent(&h, &m, &mp, order)?;
    let c = m.coords().clone();
    let data = MapOnAmbient::new(&h, &m);
    let restrict = |s: &Series| -> Result<Series> { Ok(m.restrict_z(s)?.relabel(&c.theta)?) };
    let sys = if k >= 1 { Some(build_system(&h, &m, k)?) } else { None };
    let delta = match &sys {
        Some(s) => s.delta.clone(),
        None => Series::one(&c.theta, order),
    };
    let subs: Vec<Series> = data.gbar().iter().chain(data.hol.iter()).cloned().collect();
    let mut out = Vec::new();
    for beta in Multiindex::all_up_to(c.m(), 0, k) {
        let (lhs, omega) = if beta.is_zero() {
            let lhs = restrict(&theta_prime_on_map(&mp, &data.hol, &data.conj)?)?;
            let f = &data.hol[c.m()];
            let omega = restrict(&(f - data.fbar()).mul_i().scale(&Scalar::from_int(-1)))?;
            (lhs, omega)
        } else {
            let lhs = restrict(&theta_prime_taylor(&mp, &beta)?.compose(&subs)?)?;
            let omega = sys
                .as_ref()
                .and_then(|s| s.omega_of(&beta))
                .expect("β within the system")
                .clone();
            (lhs, omega)
        };
        let (ord, holds) = compare(&lhs, &omega);
        out.push(ReflectionIdentityReport {
            beta,
            lhs,
            omega,
            delta: delta.clone(),
            order_delivered: ord,
            holds,
        });
    }
    Ok(out)
}

/// Residual of a conjugate reflection identity.
#[derive(Clone, Debug)]
pub struct ConjugateIdentityReport {
    pub beta: Multiindex,
    /// `𝓛̲^β[f̄ − f + iΘ̄′(g, ḡ, f̄)]` on the complexification; for `β ≠ 0`
    /// this is `𝓛̲^β f̄ + iΣ_γ g^γ 𝓛̲^β(Θ̄′_γ(ḡ, f̄))`.
    pub residual: Series,
    pub order_delivered: u32,
    pub holds: bool,
}

impl ConjugateIdentityReport {
    pub fn record(&self) -> String {
        format!(
            "identity=conjugate beta={} order_delivered={} status={}",
            self.beta,
            self.order_delivered,
            if self.holds { "ok" } else { "fail" }
        )
    }
}

pub fn conjugate_reflection_identity(
    h: &FormalMap,
    m: &Hypersurface,
    mp: &Hypersurface,
    beta: &Multiindex,
    order: u32,
) -> Result<ConjugateIdentityReport> {
    let all = conjugate_reflection_identities(h, m, mp, beta.degree(), order)?;
    all.into_iter()
        .find(|r| &r.beta == beta)
        .ok_or_else(|| Error::Dimension(format!("multiindex {beta} has the wrong length")))
}

/// Conjugate reflection identities for all `|β| ≤ k` (no tangency
/// precondition: a nonzero residual is the verdict for non-tangent maps).
pub fn conjugate_reflection_identities(
    h: &FormalMap,
    m: &Hypersurface,
    mp: &Hypersurface,
    k: u32,
    order: u32,
) -> Result<Vec<ConjugateIdentityReport>> {
    check_dims(h, m, mp)?;
    let (h, m, mp) = (h.truncate(order), m.truncate(order), mp.truncate(order));
    let c = m.coords().clone();
    let frame = CrFrame::new(&m)?;
    let data = MapOnAmbient::new(&h, &m);
    let base = &(data.fbar() - &data.hol[c.m()]) + &thetabar_prime_on_map(&mp, &data.hol, &data.conj)?.mul_i();
    let applied = frame.apply_all(k, &base)?;
    Multiindex::all_up_to(c.m(), 0, k)
        .into_iter()
        .map(|beta| {
            let residual = m.restrict_z(&applied[&beta])?.relabel(&c.theta)?;
            let order_delivered = residual.order();
            let holds = residual.is_zero();
            Ok(ConjugateIdentityReport {
                beta,
                residual,
                order_delivered,
                holds,
            })
        })
        .collect()
}

/// Comparison of the families `E_β = 𝓛̲^β r′(h, h̄)` and
/// `F_β = 𝓛̲^β r̄′(h̄, h)` through `r′ = α′·r̄′`.
#[derive(Clone, Debug)]
pub struct DefiningFunctionEquivalenceReport {
    pub max_beta: u32,
    /// All `E_β` vanish on the complexification.
    pub e_zero: bool,
    /// All `F_β` vanish on the complexification.
    pub f_zero: bool,
    /// `E_β = Σ_{γ≤β} C(β, γ)·𝓛̲^{β−γ}α·F_γ` holds in the ambient ring.
    pub leibniz_holds: bool,
    /// `α(0)`, which must be `−1`.
    pub alpha0: Scalar,
    pub order: u32,
}

impl DefiningFunctionEquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.e_zero == self.f_zero
    }
}

/// `α(t, τ) = α′(h(t), h̄(τ))` where `r′ = α′·r̄′` on the target.
pub(crate) fn alpha_on_map(mp: &Hypersurface, data: &MapOnAmbient) -> Result<Series> {
    let v = mp.reality_check();
    let alpha = v.alpha.ok_or_else(|| {
        Error::NotReal(
            v.first_failure
                .map(|(e, s)| format!("{e} (coefficient {s})"))
                .unwrap_or_default(),
        )
    })?;
    let subs: Vec<Series> = data.hol.iter().chain(data.conj.iter()).cloned().collect();
    Ok(alpha.compose(&subs)?)
}

pub fn defining_function_equivalence_check(
    h: &FormalMap,
    m: &Hypersurface,
    mp: &Hypersurface,
    max_beta: u32,
    order: u32,
) -> Result<DefiningFunctionEquivalenceReport> {
    check_dims(h, m, mp)?;
    let (h, m, mp) = (h.truncate(order), m.truncate(order), mp.truncate(order));
    let c = m.coords().clone();
    let frame = CrFrame::new(&m)?;
    let data = MapOnAmbient::new(&h, &m);
    let f = &data.hol[c.m()];
    let r_prime = &(f - data.fbar()) - &thetabar_prime_on_map(&mp, &data.hol, &data.conj)?.mul_i();
    let rbar_prime = &(data.fbar() - f) + &theta_prime_on_map(&mp, &data.hol, &data.conj)?.mul_i();
    let alpha = alpha_on_map(&mp, &data)?;
    let e = frame.apply_all(max_beta, &r_prime)?;
    let fam = frame.apply_all(max_beta, &rbar_prime)?;
    let la = frame.apply_all(max_beta, &alpha)?;
    let mut leibniz_holds = true;
    let mut e_zero = true;
    let mut f_zero = true;
    let mut ord = u32::MAX;
    for beta in Multiindex::all_up_to(c.m(), 0, max_beta) {
        let mut rhs: Option<Series> = None;
        for gamma in beta.divisors() {
            let rest = beta.checked_sub(&gamma).expect("divisor");
            let term = (&la[&rest] * &fam[&gamma]).scale(&scalar_binomial(&beta, &gamma));
            rhs = Some(match rhs {
                Some(a) => &a + &term,
                None => term,
            });
        }
        let (o, same) = compare(&e[&beta], &rhs.expect("nonempty"));
        leibniz_holds &= same;
        ord = ord.min(o);
        let er = m.restrict_z(&e[&beta])?;
        let fr = m.restrict_z(&fam[&beta])?;
        e_zero &= er.is_zero();
        f_zero &= fr.is_zero();
    }
    Ok(DefiningFunctionEquivalenceReport {
        max_beta,
        e_zero,
        f_zero,
        leibniz_holds,
        alpha0: alpha.constant_term(),
        order: ord,
    })
}
