//! Real analytic hypersurfaces in graph form `z = ξ + iΘ̄(w, ζ, ξ)` and their
//! complexifications.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{Multiindex, Scalar, Series, Vars};
use crate::expr::RealDefining;
use crate::mapping::{tangency_check, FormalMap};
use crate::segre::{generic_rank, RankReport};
use crate::{Error, Result};

/// Variable lists and index conventions for a fixed dimension `n ≥ 2`.
///
/// With `m = n − 1`, the names are `w1..wm`, `z` (holomorphic side) and
/// `zeta1..zetam`, `xi` (antiholomorphic side). The ambient ring of the
/// complexification is `(w, z, ζ, ξ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coords {
    pub n: usize,
    /// `(w, ζ, ξ)`, the ring of `Θ̄`.
    pub theta: Vars,
    /// `(w, z, ζ, ξ)`.
    pub amb: Vars,
    /// `(w, z)`.
    pub t: Vars,
    /// `(ζ, ξ)`.
    pub tau: Vars,
    /// `(w)`.
    pub w: Vars,
    /// `(ζ)`.
    pub zeta: Vars,
    /// `(w, ζ)`.
    pub wzeta: Vars,
    /// `(w, z, ζ)`, a parametrization of the complexification via
    /// `ξ = z − iΘ(ζ, w, z)`.
    pub wzzeta: Vars,
}

impl Coords {
    pub fn new(n: usize) -> Coords {
        assert!(n >= 2, "ambient dimension must be at least 2");
        let m = n - 1;
        let w: Vec<String> = (1..=m).map(|j| format!("w{j}")).collect();
        let zeta: Vec<String> = (1..=m).map(|j| format!("zeta{j}")).collect();
        let z = vec!["z".to_string()];
        let xi = vec!["xi".to_string()];
        let cat = |parts: &[&Vec<String>]| Vars::new(parts.iter().flat_map(|p| p.iter().cloned()));
        Coords {
            n,
            theta: cat(&[&w, &zeta, &xi]),
            amb: cat(&[&w, &z, &zeta, &xi]),
            t: cat(&[&w, &z]),
            tau: cat(&[&zeta, &xi]),
            w: cat(&[&w]),
            zeta: cat(&[&zeta]),
            wzeta: cat(&[&w, &zeta]),
            wzzeta: cat(&[&w, &z, &zeta]),
        }
    }

    pub fn m(&self) -> usize {
        self.n - 1
    }

    /// Ambient index of `w_j` (0-based).
    pub fn aw(&self, j: usize) -> usize {
        j
    }

    pub fn az(&self) -> usize {
        self.m()
    }

    pub fn azeta(&self, j: usize) -> usize {
        self.n + j
    }

    pub fn axi(&self) -> usize {
        2 * self.n - 1
    }

    /// Positions of `(w, z)` in the ambient ring.
    pub fn t_in_amb(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    /// Positions of `(ζ, ξ)` in the ambient ring.
    pub fn tau_in_amb(&self) -> Vec<usize> {
        (self.n..2 * self.n).collect()
    }

    /// Positions of the `Θ̄` slots `(w, ζ, ξ)` in the ambient ring.
    pub fn theta_in_amb(&self) -> Vec<usize> {
        let m = self.m();
        (0..m)
            .chain((0..m).map(|j| self.azeta(j)))
            .chain([self.axi()])
            .collect()
    }

    /// Ambient positions of the slots of `Θ̄` when read as `Θ(ζ, w, z)`.
    pub fn theta_swapped_in_amb(&self) -> Vec<usize> {
        let m = self.m();
        (0..m).map(|j| self.azeta(j)).chain(0..m).chain([self.az()]).collect()
    }

    /// Indices of `w` inside the `Θ̄` ring.
    pub fn theta_w(&self) -> Vec<usize> {
        (0..self.m()).collect()
    }

    /// Indices of `ζ` inside the `Θ̄` ring.
    pub fn theta_zeta(&self) -> Vec<usize> {
        (self.m()..2 * self.m()).collect()
    }

    pub fn theta_xi(&self) -> usize {
        2 * self.m()
    }

    /// Ambient indices of `ζ`.
    pub fn amb_zeta(&self) -> Vec<usize> {
        (0..self.m()).map(|j| self.azeta(j)).collect()
    }

    /// Ambient indices of `w`.
    pub fn amb_w(&self) -> Vec<usize> {
        (0..self.m()).collect()
    }

    /// Embeds a `(w, z)` series into the ambient ring.
    pub fn t_to_amb(&self, s: &Series) -> Series {
        s.embed(&self.amb, &self.t_in_amb())
    }

    /// Embeds a `(ζ, ξ)` series into the ambient ring.
    pub fn tau_to_amb(&self, s: &Series) -> Series {
        s.embed(&self.amb, &self.tau_in_amb())
    }

    /// The conjugate series `s̄(τ)` of a `(w, z)` series, in the `(ζ, ξ)` ring.
    pub fn conj_t(&self, s: &Series) -> Series {
        s.conj().rename(&self.tau)
    }

    /// Ambient coordinate functions, known to `order`.
    pub fn amb_var(&self, k: usize, order: u32) -> Series {
        Series::var(&self.amb, k, order)
    }
}

/// A real analytic hypersurface through 0, given by `Θ̄(w, ζ, ξ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    coords: Coords,
    thetabar: Series,
    normal: bool,
}

/// Outcome of the reality test.
#[derive(Clone, Debug)]
pub struct RealityVerdict {
    pub real: bool,
    /// First nonzero coefficient of `Θ̄(w, ζ, z − iΘ) − Θ` in the ambient ring.
    pub first_failure: Option<(Multiindex, Scalar)>,
    /// The unit `α(t, τ)` with `r = α·r̄`, present when real.
    pub alpha: Option<Series>,
    pub order: u32,
}

/// Outcome of the minimality test.
#[derive(Clone, Debug)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    /// First monomial of `Θ̄(w, ζ, 0)` (criterion 1).
    pub witness_term: Option<(Multiindex, Scalar)>,
    /// Whether `∂Θ̄/∂ζ(w, ζ, 0) ≢ 0` (criterion 2).
    pub derivative_nonzero: bool,
    /// Certified rank of `(w, ζ) ↦ (w, iΘ̄(w, ζ, 0))` (criterion 5).
    pub rank: RankReport,
    pub order: u32,
}

impl fmt::Display for MinimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.minimal {
            let (e, c) = self.witness_term.as_ref().expect("witness present when minimal");
            write!(f, "minimal=true witness_exp={} witness_coeff={} {}", e, c, self.rank)
        } else {
            write!(f, "minimal=false degenerate_at_order={} {}", self.order, self.rank)
        }
    }
}

impl Hypersurface {
    /// Wraps `Θ̄` (variables matched by name against `w.., zeta.., xi`).
    pub fn new(n: usize, thetabar: &Series) -> Result<Hypersurface> {
        if n < 2 {
            return Err(Error::InvalidHypersurface("dimension must be at least 2".into()));
        }
        let coords = Coords::new(n);
        let thetabar = thetabar
            .relabel(&coords.theta)
            .map_err(|e| Error::InvalidHypersurface(format!("variables of Θ̄: {e}")))?;
        if thetabar.terms().any(|(e, _)| e.degree() <= 1) {
            return Err(Error::InvalidHypersurface(
                "Θ̄ must have no constant or linear terms (tangent plane Im z = 0)".into(),
            ));
        }
        let normal = is_normal_form(&coords, &thetabar);
        Ok(Hypersurface {
            coords,
            thetabar,
            normal,
        })
    }

    /// Complexifies a real defining function and solves it for the graph
    /// variable (1-based `graph_var`, moved to the last position).
    pub fn from_real_defining(rho: &RealDefining, graph_var: usize, order: u32) -> Result<Hypersurface> {
        let n = rho.n;
        if n < 2 {
            return Err(Error::InvalidHypersurface("dimension must be at least 2".into()));
        }
        if graph_var == 0 || graph_var > n {
            return Err(Error::InvalidArgument(format!(
                "graph variable z{graph_var} out of range"
            )));
        }
        let s = rho.expand_real(order)?;
        if !s.constant_term().is_zero() {
            return Err(Error::InvalidHypersurface("ρ(0) ≠ 0".into()));
        }
        let g = graph_var - 1;
        // Positions of z_k in the coordinate order with z_g moved last.
        let slot = |k: usize| -> usize {
            if k == g {
                n - 1
            } else if k < g {
                k
            } else {
                k - 1
            }
        };
        for k in 0..n {
            let a = s.coeff(&Multiindex::unit(2 * n, k));
            if k != g && !a.is_zero() {
                return Err(Error::DegenerateGraph(format!("ρ has a linear term in z{}", k + 1)));
            }
            if k == g {
                if a.is_zero() {
                    return Err(Error::DegenerateGraph(format!("dρ/dz{}(0) = 0", k + 1)));
                }
                if !a.re().is_zero() {
                    return Err(Error::DegenerateGraph(format!(
                        "tangent plane at 0 is not {{Im z{} = 0}}",
                        k + 1
                    )));
                }
            }
        }
        let coords = Coords::new(n);
        let m = n - 1;
        let fvars = coords.theta.concat(&Vars::new(["y"]));
        let yk = 2 * m + 1;
        let var = |k: usize| Series::var(&fvars, k, order);
        let xi = var(2 * m);
        let mut subs = vec![Series::zero(&fvars, order); 2 * n];
        for k in 0..n {
            let p = slot(k);
            if p == m {
                subs[k] = &xi + &var(yk).mul_i();
                subs[n + k] = xi.clone();
            } else {
                subs[k] = var(p);
                subs[n + k] = var(m + p);
            }
        }
        let f = s.compose(&subs)?;
        let thetabar = f.implicit_solve()?;
        let h = Hypersurface::new(n, &thetabar)?;
        let verdict = h.reality_check();
        if !verdict.real {
            let (e, c) = verdict.first_failure.expect("failure recorded");
            return Err(Error::NotReal(format!("{e} (coefficient {c})")));
        }
        Ok(h)
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.n
    }

    pub fn m(&self) -> usize {
        self.coords.n - 1
    }

    pub fn order(&self) -> u32 {
        self.thetabar.order()
    }

    pub fn thetabar(&self) -> &Series {
        &self.thetabar
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// Same hypersurface with `Θ̄` truncated to `order`.
    pub fn truncate(&self, order: u32) -> Hypersurface {
        Hypersurface {
            coords: self.coords.clone(),
            thetabar: self.thetabar.truncate(order),
            normal: self.normal,
        }
    }

    /// `Θ̄(w, ζ, ξ)` in the ambient ring.
    pub fn thetabar_amb(&self) -> Series {
        self.thetabar.embed(&self.coords.amb, &self.coords.theta_in_amb())
    }

    /// `Θ(ζ, w, z)` (conjugated coefficients, swapped slots) in the ambient
    /// ring.
    pub fn theta_amb(&self) -> Series {
        self.thetabar
            .conj()
            .embed(&self.coords.amb, &self.coords.theta_swapped_in_amb())
    }

    /// `r(t, τ) = z − ξ − iΘ̄(w, ζ, ξ)`.
    pub fn r_amb(&self) -> Series {
        let c = &self.coords;
        let n = self.order();
        &(&c.amb_var(c.az(), n) - &c.amb_var(c.axi(), n)) - &self.thetabar_amb().mul_i()
    }

    /// `r̄(τ, t) = ξ − z + iΘ(ζ, w, z)`.
    pub fn rbar_amb(&self) -> Series {
        let c = &self.coords;
        let n = self.order();
        &(&c.amb_var(c.axi(), n) - &c.amb_var(c.az(), n)) + &self.theta_amb().mul_i()
    }

    /// Substitutes `ξ := z − iΘ(ζ, w, z)` into an ambient series, i.e.
    /// restricts it to the complexification.
    pub fn restrict_xi(&self, s: &Series) -> Result<Series> {
        let c = &self.coords;
        let phi = &c.amb_var(c.az(), self.order()) - &self.theta_amb().mul_i();
        Ok(s.substitute(c.axi(), &phi)?)
    }

    /// Substitutes `z := ξ + iΘ̄(w, ζ, ξ)` into an ambient series.
    pub fn restrict_z(&self, s: &Series) -> Result<Series> {
        let c = &self.coords;
        let psi = &c.amb_var(c.axi(), self.order()) + &self.thetabar_amb().mul_i();
        Ok(s.substitute(c.az(), &psi)?)
    }

    /// `Θ̄_β(ζ, ξ)` in the `(ζ, ξ)` ring; `Θ̄_0 = ξ`.
    pub fn theta_bar_coefficient(&self, beta: &Multiindex) -> Result<Series> {
        let c = &self.coords;
        if beta.len() != self.m() {
            return Err(Error::Dimension(format!(
                "multiindex {beta} must have length {}",
                self.m()
            )));
        }
        if beta.is_zero() {
            return Ok(Series::var(&c.tau, self.m(), self.order()));
        }
        let coeff = self.thetabar.coefficient(&c.theta_w(), &beta.to_vec())?;
        Ok(coeff.relabel(&c.tau)?)
    }

    /// `Θ_β(w, z)` in the `(w, z)` ring; `Θ_0 = z`.
    pub fn theta_coefficient(&self, beta: &Multiindex) -> Result<Series> {
        Ok(self.theta_bar_coefficient(beta)?.conj().rename(&self.coords.t))
    }

    /// Tests `Θ̄(w, ζ, z − iΘ(ζ, w, z)) ≡ Θ(ζ, w, z)` and computes the unit
    /// `α` with `r = α·r̄` by exact division by `r̄`, which is monic in `ξ`.
    pub fn reality_check(&self) -> RealityVerdict {
        let c = &self.coords;
        let order = self.order();
        let theta = self.theta_amb();
        let diff = match self.restrict_xi(&self.thetabar_amb()) {
            Ok(s) => &s - &theta,
            Err(_) => {
                return RealityVerdict {
                    real: false,
                    first_failure: None,
                    alpha: None,
                    order,
                };
            }
        };
        if let Some((e, v)) = diff.leading_term() {
            return RealityVerdict {
                real: false,
                first_failure: Some((e.clone(), v.clone())),
                alpha: None,
                order: diff.order(),
            };
        }
        let phi = &c.amb_var(c.az(), order) - &theta.mul_i();
        let (q, rem) = divide_by_linear(&self.r_amb(), c.axi(), &phi);
        debug_assert!(rem.is_zero());
        RealityVerdict {
            real: rem.is_zero(),
            first_failure: None,
            alpha: Some(q),
            order: diff.order(),
        }
    }

    /// Brings the hypersurface to normal coordinates degree by degree and
    /// returns the normal form together with a verified witness map
    /// `(w, z) ↦ (w, Z(w, z))` sending this hypersurface to it.
    pub fn normalize(&self, order: u32) -> Result<(Hypersurface, FormalMap)> {
        let order = order.min(self.order());
        let h = self.truncate(order);
        let c = h.coords.clone();
        if h.normal {
            return Ok((h.clone(), FormalMap::identity(h.n(), order)));
        }
        let v = h.reality_check();
        if !v.real {
            let what = v
                .first_failure
                .map(|(e, s)| format!("{e} (coefficient {s})"))
                .unwrap_or_default();
            return Err(Error::NotReal(what));
        }
        let m = h.m();
        // z_old = Q(w, z_new).
        let mut q = Series::var(&c.t, m, order);
        let mut current = h.thetabar.clone();
        for d in 2..order {
            let mut p_terms = Vec::new();
            for (e, coef) in current.homogeneous(d).terms() {
                let wdeg: u32 = c.theta_w().iter().map(|&k| e.get(k)).sum();
                let zdeg: u32 = c.theta_zeta().iter().map(|&k| e.get(k)).sum();
                if zdeg != 0 {
                    continue;
                }
                let mut te = Multiindex::zero(c.n);
                for j in 0..m {
                    te.set(j, e.get(j));
                }
                te.set(m, e.get(c.theta_xi()));
                if wdeg >= 1 {
                    p_terms.push((te, coef.mul_i()));
                } else {
                    p_terms.push((te, &coef.mul_i() * &Scalar::from_ratio(1, 2)));
                }
            }
            if p_terms.is_empty() {
                continue;
            }
            let p = Series::from_terms(&c.t, p_terms, order);
            let shift = &Series::var(&c.t, m, order) + &p;
            q = q.substitute(m, &shift)?;
            current = solve_pushed_forward(&h, &q, order)?;
            let bad = current.homogeneous(d).terms().any(|(e, _)| {
                let wdeg: u32 = c.theta_w().iter().map(|&k| e.get(k)).sum();
                let zdeg: u32 = c.theta_zeta().iter().map(|&k| e.get(k)).sum();
                wdeg == 0 || zdeg == 0
            });
            if bad {
                return Err(Error::Consistency(format!("normalization did not clear degree {d}")));
            }
        }
        let out = Hypersurface::new(h.n(), &current)?;
        if !out.normal {
            return Err(Error::OrderExhausted(format!(
                "normal form not reached below order {order}"
            )));
        }
        // Witness: solve Q(w, y) − z = 0 for y.
        let gvars = c.t.concat(&Vars::new(["y"]));
        let mut subs: Vec<Series> = (0..m).map(|j| Series::var(&gvars, j, order)).collect();
        subs.push(Series::var(&gvars, c.n, order));
        let g = &q.compose(&subs)? - &Series::var(&gvars, m, order);
        let zmap = g.implicit_solve()?.relabel(&c.t)?;
        let mut comps: Vec<Series> = (0..m).map(|j| Series::var(&c.t, j, order)).collect();
        comps.push(zmap);
        let witness = FormalMap::new(h.n(), comps)?;
        let report = tangency_check(&witness, &h, &out, order)?;
        if !report.tangent {
            return Err(Error::Consistency(
                "normalization witness failed the tangency check".into(),
            ));
        }
        Ok((out, witness))
    }

    /// Minimality test through `Θ̄(w, ζ, 0) ≢ 0`, `∂_ζΘ̄(w, ζ, 0) ≢ 0` and
    /// the generic rank of `(w, ζ) ↦ (w, iΘ̄(w, ζ, 0))`.
    pub fn is_minimal(&self, seed: u64) -> Result<MinimalityVerdict> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        let c = &self.coords;
        let order = self.order();
        let restricted = self.thetabar.set_zero(c.theta_xi());
        let witness_term = restricted.leading_term().map(|(e, v)| (e.clone(), v.clone()));
        let mut derivative_nonzero = false;
        for k in c.theta_zeta() {
            if let Ok(d) = restricted.derive(k) {
                derivative_nonzero |= !d.is_zero();
            }
        }
        let on_wzeta = restricted.relabel(&c.wzeta)?;
        let mut map: Vec<Series> = (0..self.m()).map(|j| Series::var(&c.wzeta, j, order)).collect();
        map.push(on_wzeta.mul_i());
        let rank = generic_rank(&map, seed)?;
        let minimal = witness_term.is_some();
        if minimal != derivative_nonzero || minimal != (rank.rank == self.n()) {
            return Err(Error::Consistency(format!(
                "minimality criteria disagree: term={minimal} derivative={derivative_nonzero} rank={}",
                rank.rank
            )));
        }
        Ok(MinimalityVerdict {
            minimal,
            witness_term,
            derivative_nonzero,
            rank,
            order,
        })
    }
}

fn is_normal_form(c: &Coords, thetabar: &Series) -> bool {
    thetabar
        .terms()
        .all(|(e, _)| c.theta_w().iter().any(|&k| e.get(k) > 0) && c.theta_zeta().iter().any(|&k| e.get(k) > 0))
}

/// Divides `r` by `var − phi` (with `phi` free of `var`), returning
/// `(quotient, remainder)` with `r = quotient·(var − phi) + remainder`.
pub(crate) fn divide_by_linear(r: &Series, var: usize, phi: &Series) -> (Series, Series) {
    let vars = r.vars().clone();
    let order = r.order();
    let top = r.degree_in(&[var]);
    // Coefficients r_e(x) of var^e, as series free of var.
    let parts: Vec<Series> = (0..=top)
        .map(|e| r.coefficient(&[var], &[e]).unwrap_or_else(|_| Series::zero(&vars, 1)))
        .collect();
    if top == 0 {
        return (Series::zero(&vars, order), r.clone());
    }
    let mut qs: Vec<Series> = vec![Series::zero(&vars, order); top as usize];
    qs[top as usize - 1] = parts[top as usize].clone();
    for e in (1..top as usize).rev() {
        qs[e - 1] = &parts[e] + &(phi * &qs[e]);
    }
    let rem = &parts[0] + &(phi * &qs[0]);
    let x = Series::var(&vars, var, order);
    let mut q = Series::zero(&vars, order);
    let mut xp = Series::one(&vars, order);
    for qe in &qs {
        q = &q + &(qe * &xp);
        xp = &xp * &x;
    }
    (q, rem)
}

/// `Θ̃` for the coordinates `z = Q(w, z̃)`: solves
/// `Q(w, ξ̃ + iy) − Q̄(ζ, ξ̃) − iΘ̄(w, ζ, Q̄(ζ, ξ̃)) = 0` for `y`.
fn solve_pushed_forward(h: &Hypersurface, q: &Series, order: u32) -> Result<Series> {
    let c = &h.coords;
    let m = h.m();
    let fvars = c.theta.concat(&Vars::new(["y"]));
    let var = |k: usize| Series::var(&fvars, k, order);
    let xi = var(2 * m);
    let mut subs_q: Vec<Series> = (0..m).map(var).collect();
    subs_q.push(&xi + &var(2 * m + 1).mul_i());
    let q_new = q.compose(&subs_q)?;
    let mut subs_qbar: Vec<Series> = (0..m).map(|j| var(m + j)).collect();
    subs_qbar.push(xi.clone());
    let qbar = q.conj().compose(&subs_qbar)?;
    let mut subs_t: Vec<Series> = (0..2 * m).map(var).collect();
    subs_t.push(qbar.clone());
    let tb = h.thetabar.compose(&subs_t)?;
    let f = &(&q_new - &qbar) - &tb.mul_i();
    Ok(f.implicit_solve()?.truncate(order))
}
