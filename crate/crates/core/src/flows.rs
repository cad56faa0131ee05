//! Holomorphic vector fields tangent to a hypersurface, their truncated
//! flows, and the construction of formal self-maps `t ↦ exp(ϖ(t)L)(t)`
//! along a tangent field.

use std::fmt;

use crate::algebra::{factorial, linalg, Multiindex, Scalar, Series, Vars};
use crate::hypersurface::Hypersurface;
use crate::mapping::{check_invertible, tangency_check, FormalMap, InvertibilityReport, TangencyReport};
use crate::{Error, Result};

/// `L = Σ a_k(t) ∂/∂t_k` with polynomial coefficients in `t = (w, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentField {
    pub coefficients: Vec<Series>,
    pub degree_bound: u32,
}

impl TangentField {
    /// Wraps coefficient series (matched by name against `w1.., z`).
    pub fn new(n: usize, coefficients: Vec<Series>, degree_bound: u32) -> Result<TangentField> {
        if coefficients.len() != n || n < 2 {
            return Err(Error::Dimension(format!(
                "expected {n} ≥ 2 coefficients, got {}",
                coefficients.len()
            )));
        }
        let t = crate::hypersurface::Coords::new(n).t;
        let coefficients = coefficients
            .iter()
            .map(|a| a.relabel(&t))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coefficients.iter().all(Series::is_zero) {
            return Err(Error::InvalidArgument("the zero vector field".into()));
        }
        Ok(TangentField {
            coefficients,
            degree_bound,
        })
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn vars(&self) -> &Vars {
        self.coefficients[0].vars()
    }

    /// `L s` for `s` in any ring whose first `n` variables are `t`.
    pub fn apply(&self, s: &Series) -> Result<Series> {
        let n = self.n();
        let idx: Vec<usize> = (0..n).collect();
        let mut out = Series::zero(s.vars(), s.order().saturating_sub(1).max(1));
        for (k, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = if a.vars() == s.vars() {
                a.clone()
            } else {
                a.embed(s.vars(), &idx)
            };
            out = &out + &(&a * &s.derive(k)?);
        }
        Ok(out)
    }
}

impl fmt::Display for TangentField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.vars().names();
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| format!("({a})·∂/∂{}", names[k]))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `L r` restricted to the complexification, as a series in `(w, ζ, ξ)`.
pub fn tangency_residual(h: &Hypersurface, field: &TangentField) -> Result<Series> {
    let c = h.coords();
    if field.n() != c.n {
        return Err(Error::Dimension("field and hypersurface differ in dimension".into()));
    }
    let r = h.r_amb();
    let t_in = c.t_in_amb();
    let mut lr = Series::zero(&c.amb, r.order().saturating_sub(1).max(1));
    for (k, a) in field.coefficients.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        lr = &lr + &(&a.embed(&c.amb, &t_in) * &r.derive(t_in[k])?);
    }
    Ok(h.restrict_z(&lr)?.relabel(&c.theta)?)
}

/// Searches for a nonzero field with polynomial coefficients of degree
/// `≤ degree_bound` satisfying `L r ≡ 0 mod (r)` below `order`. `None` is a
/// verdict stamped by the bound and the order, not a proof of absence.
pub fn find_tangent_field(h: &Hypersurface, degree_bound: u32, order: u32) -> Result<Option<TangentField>> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let h = h.truncate(order.min(h.order()));
    let c = h.coords();
    let n = c.n;
    let monos = Multiindex::all_up_to(n, 0, degree_bound);
    let work = h.order().max(degree_bound + 2);
    let mut cols: Vec<Series> = Vec::new();
    let mut unknowns: Vec<(usize, Multiindex)> = Vec::new();
    for e in &monos {
        for k in 0..n {
            let mut a = vec![Series::zero(&c.t, work); n];
            a[k] = Series::monomial(&c.t, e.clone(), Scalar::one(), work);
            let field = TangentField {
                coefficients: a,
                degree_bound,
            };
            cols.push(tangency_residual(&h, &field)?);
            unknowns.push((k, e.clone()));
        }
    }
    let known = cols.iter().map(Series::order).min().unwrap_or(1);
    let rows_idx: Vec<Multiindex> = {
        let mut all: Vec<Multiindex> = cols
            .iter()
            .flat_map(|s| s.terms().filter(|(e, _)| e.degree() < known).map(|(e, _)| e.clone()))
            .collect();
        all.sort();
        all.dedup();
        all
    };
    let matrix: Vec<Vec<Scalar>> = rows_idx
        .iter()
        .map(|e| cols.iter().map(|s| s.coeff(e)).collect())
        .collect();
    let basis = linalg::kernel(&matrix, cols.len());
    let Some(x) = basis.into_iter().next() else {
        return Ok(None);
    };
    let mut coeffs = vec![Series::zero(&c.t, work); n];
    for ((k, e), v) in unknowns.iter().zip(&x) {
        if !v.is_zero() {
            coeffs[*k] = &coeffs[*k] + &Series::monomial(&c.t, e.clone(), v.clone(), work);
        }
    }
    let field = TangentField {
        coefficients: coeffs,
        degree_bound,
    };
    let check = tangency_residual(&h, &field)?;
    if !check.truncate(known).is_zero() {
        return Err(Error::Consistency("kernel element failed direct substitution".into()));
    }
    Ok(Some(field))
}

/// The flow `φ(t, u) = Σ_j u^j/j! · L^j(t)` in the ring `(w, z, u)`; it
/// satisfies `φ(t, 0) = t` and `∂_u φ = a(φ)` below `order`.
pub fn flow(field: &TangentField, order: u32) -> Result<FormalMapFlow> {
    if order < 2 {
        return Err(Error::OrderExhausted("flows need order ≥ 2".into()));
    }
    let n = field.n();
    let t = field.vars();
    let ring = t.concat(&Vars::new(["u"]));
    let t_in: Vec<usize> = (0..n).collect();
    let u = Series::var(&ring, n, order);
    let field_in_ring = TangentField {
        coefficients: field
            .coefficients
            .iter()
            .map(|a| a.truncate(order).embed(&ring, &t_in))
            .collect(),
        degree_bound: field.degree_bound,
    };
    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = Series::var(&ring, k, order);
        let mut upow = Series::one(&ring, order);
        let mut acc = s.clone();
        for j in 1..order {
            s = field_in_ring.apply(&s)?;
            upow = &upow * &u;
            let inv = Scalar::from_biguint(&factorial(j)).inv().expect("nonzero factorial");
            acc = &acc + &(&upow * &s).scale(&inv);
            if s.order() <= 1 {
                break;
            }
        }
        components.push(acc.truncate(order));
    }
    Ok(FormalMapFlow { components, order })
}

/// A one-parameter family of maps `φ(t, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalMapFlow {
    /// Components in `(w, z, u)`.
    pub components: Vec<Series>,
    pub order: u32,
}

impl FormalMapFlow {
    pub fn vars(&self) -> &Vars {
        self.components[0].vars()
    }

    /// `φ(t, s(t))` for a series `s` in `t` without constant term.
    pub fn at(&self, s: &Series) -> Result<Vec<Series>> {
        let n = self.components.len();
        let subs: Vec<Series> = (0..n)
            .map(|k| Series::var(s.vars(), k, s.order()))
            .chain([s.clone()])
            .collect();
        self.components.iter().map(|c| Ok(c.compose(&subs)?)).collect()
    }
}

/// Side information attached to the constructed self-map.
#[derive(Clone, Debug)]
pub struct SelfMapCertificate {
    pub tangency: TangencyReport,
    pub invertibility: InvertibilityReport,
    /// Least component `k` with `∂_u φ_k(t, ϖ(t)) ≢ 0` below the order.
    pub moving_component: Option<usize>,
    /// Description of the model series `ϖ`; its divergence is a modeling
    /// convention and is never checked.
    pub model: String,
    pub order: u32,
}

impl SelfMapCertificate {
    pub fn records(&self) -> Vec<String> {
        vec![
            format!(
                "tangency={} order={}",
                if self.tangency.tangent { "ok" } else { "fail" },
                self.tangency.order
            ),
            format!(
                "invertible={} det={}",
                self.invertibility.invertible(),
                self.invertibility.det
            ),
            format!(
                "moving_component={}",
                self.moving_component
                    .map_or("none".to_string(), |k| (k + 1).to_string())
            ),
            format!("model={}", self.model),
        ]
    }
}

/// `ϖ(t) = Σ_{1 ≤ k < order} k!·z^k`.
pub fn factorial_model(t: &Vars, order: u32) -> Series {
    let zk = t.len() - 1;
    Series::from_terms(
        t,
        (1..order).map(|k| {
            let mut e = Multiindex::zero(t.len());
            e.set(zk, k);
            (e, Scalar::from_biguint(&factorial(k)))
        }),
        order,
    )
}

/// `h♯(t) = φ(t, ϖ(t))` for a field tangent to `h`, with its certificate.
pub fn nonconvergent_selfmap(
    h: &Hypersurface,
    field: &TangentField,
    order: u32,
) -> Result<(FormalMap, SelfMapCertificate)> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = order.min(h.order());
    let res = tangency_residual(&h.truncate(order), field)?;
    if let Some((e, c)) = res.leading_term() {
        return Err(Error::NotTangent(format!(
            "L r has term {e} with coefficient {c} on the complexification"
        )));
    }
    let phi = flow(field, order)?;
    let t = field.vars().clone();
    let varpi = factorial_model(&t, order);
    let comps = phi.at(&varpi)?.into_iter().map(|s| s.truncate(order)).collect();
    let map = FormalMap::new(h.n(), comps)?;
    let invertibility = check_invertible(&map);
    let tangency = tangency_check(&map, h, h, order)?;
    if !tangency.tangent {
        return Err(Error::NotTangent(
            "the constructed self-map leaves the hypersurface".into(),
        ));
    }
    if !invertibility.invertible() {
        return Err(Error::Consistency("the constructed self-map is not invertible".into()));
    }
    let n = h.n();
    let mut moving_component = None;
    for (k, c) in phi.components.iter().enumerate() {
        let d = c.derive(n)?;
        let subs: Vec<Series> = (0..n)
            .map(|j| Series::var(&t, j, order))
            .chain([varpi.clone()])
            .collect();
        if !d.compose(&subs)?.truncate(order - 1).is_zero() {
            moving_component = Some(k);
            break;
        }
    }
    let cert = SelfMapCertificate {
        tangency,
        invertibility,
        moving_component,
        model: format!("sum_k<{order} k!*z^k"),
        order,
    };
    Ok((map, cert))
}
