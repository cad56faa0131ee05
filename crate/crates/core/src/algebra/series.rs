//! Sparse truncated power series with known-order tracking.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Multiindex, Scalar, SeriesError};

/// An ordered list of variable names shared cheaply between series.
#[derive(Clone, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, k: usize) -> &str {
        &self.0[k]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, SeriesError> {
        self.index(name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    /// The list with variable `k` removed.
    pub fn without(&self, k: usize) -> Vars {
        Vars::new(
            self.0
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, n)| n.clone()),
        )
    }

    /// Concatenation of two lists.
    pub fn concat(&self, o: &Vars) -> Vars {
        Vars::new(self.0.iter().chain(o.0.iter()).cloned())
    }
}

impl PartialEq for Vars {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl Eq for Vars {}

impl Hash for Vars {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.0.hash(h)
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// A truncated formal power series.
///
/// Coefficients of total degree `< order` are exact; everything of degree
/// `≥ order` is unknown and never stored. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    vars: Vars,
    terms: BTreeMap<Multiindex, Scalar>,
    order: u32,
}

impl Series {
    pub fn zero(vars: &Vars, order: u32) -> Self {
        assert!(order >= 1, "known order must be positive");
        Series {
            vars: vars.clone(),
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn constant(vars: &Vars, c: Scalar, order: u32) -> Self {
        Series::monomial(vars, Multiindex::zero(vars.len()), c, order)
    }

    pub fn one(vars: &Vars, order: u32) -> Self {
        Series::constant(vars, Scalar::one(), order)
    }

    /// The coordinate function of variable `k`.
    pub fn var(vars: &Vars, k: usize, order: u32) -> Self {
        Series::monomial(vars, Multiindex::unit(vars.len(), k), Scalar::one(), order)
    }

    pub fn var_named(vars: &Vars, name: &str, order: u32) -> Result<Self, SeriesError> {
        Ok(Series::var(vars, vars.require(name)?, order))
    }

    pub fn monomial(vars: &Vars, exp: Multiindex, c: Scalar, order: u32) -> Self {
        Series::from_terms(vars, std::iter::once((exp, c)), order)
    }

    /// Builds a series, summing repeated exponents and discarding zero
    /// coefficients and terms at or beyond the known order.
    pub fn from_terms<I>(vars: &Vars, terms: I, order: u32) -> Self
    where
        I: IntoIterator<Item = (Multiindex, Scalar)>,
    {
        let mut out = Series::zero(vars, order);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variable count");
            if e.degree() >= order || c.is_zero() {
                continue;
            }
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: Multiindex, c: &Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn from_map(vars: &Vars, acc: HashMap<Multiindex, Scalar>, order: u32) -> Self {
        Series {
            vars: vars.clone(),
            terms: acc
                .into_iter()
                .filter(|(e, c)| !c.is_zero() && e.degree() < order)
                .collect(),
            order,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The known order `N`: degrees `< N` are exact.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multiindex, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, e: &Multiindex) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, e: &[u32]) -> Scalar {
        self.coeff(&Multiindex::from_slice(e))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Multiindex::zero(self.nvars()))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree carrying a nonzero coefficient, or the known order when
    /// none is known.
    pub fn valuation(&self) -> u32 {
        self.terms.keys().next().map(|e| e.degree()).unwrap_or(self.order)
    }

    /// The first nonzero term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Multiindex, &Scalar)> {
        self.terms.iter().next()
    }

    /// Whether variable `k` occurs in some stored term.
    pub fn depends_on(&self, k: usize) -> bool {
        self.terms.keys().any(|e| e.get(k) > 0)
    }

    /// Lowers the known order to `min(order, self.order)`.
    pub fn truncate(&self, order: u32) -> Series {
        let order = order.min(self.order);
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() < order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            order,
        }
    }

    /// Overrides the known order; callers must justify the claim. Terms at or
    /// beyond the new order are discarded.
    pub(crate) fn with_order(mut self, order: u32) -> Series {
        assert!(order >= 1);
        self.order = order;
        self.terms.retain(|e, _| e.degree() < order);
        self
    }

    fn check_vars(&self, o: &Series) -> Result<(), SeriesError> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(SeriesError::VarMismatch {
                left: self.vars.to_string(),
                right: o.vars.to_string(),
            })
        }
    }

    pub fn try_add(&self, o: &Series) -> Result<Series, SeriesError> {
        self.check_vars(o)?;
        let order = self.order.min(o.order);
        let mut out = self.truncate(order);
        for (e, c) in &o.terms {
            if e.degree() < order {
                out.add_term(e.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Series) -> Result<Series, SeriesError> {
        self.try_add(&o.neg())
    }

    /// Product. The known order is `min(ord a + val b, ord b + val a)`, which
    /// is never below the plain minimum of the operand orders.
    pub fn try_mul(&self, o: &Series) -> Result<Series, SeriesError> {
        self.check_vars(o)?;
        let order = self
            .order
            .saturating_add(o.valuation())
            .min(o.order.saturating_add(self.valuation()));
        Ok(self.mul_capped(o, order))
    }

    /// Product with known order capped at `cap` (saves work when only low
    /// degrees are needed).
    pub fn mul_trunc(&self, o: &Series, cap: u32) -> Series {
        self.check_vars(o).expect("variable-list mismatch");
        let order = self
            .order
            .saturating_add(o.valuation())
            .min(o.order.saturating_add(self.valuation()))
            .min(cap);
        self.mul_capped(o, order)
    }

    fn mul_capped(&self, o: &Series, order: u32) -> Series {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Series::zero(&self.vars, order);
        }
        let b: Vec<(u32, &Multiindex, &Scalar)> = o.terms.iter().map(|(e, c)| (e.degree(), e, c)).collect();
        let mut acc: HashMap<Multiindex, Scalar> = HashMap::new();
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            if da >= order {
                break;
            }
            for &(db, eb, cb) in &b {
                if da + db >= order {
                    break;
                }
                let p = ca * cb;
                match acc.get_mut(&ea.add(eb)) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(ea.add(eb), p);
                    }
                }
            }
        }
        Series::from_map(&self.vars, acc, order)
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        if c.is_zero() {
            return Series::zero(&self.vars, self.order);
        }
        Series {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            order: self.order,
        }
    }

    pub fn scale_int(&self, k: i64) -> Series {
        self.scale(&Scalar::from_int(k))
    }

    pub fn mul_i(&self) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul_i())).collect(),
            order: self.order,
        }
    }

    pub fn add_scalar(&self, c: &Scalar) -> Series {
        let mut out = self.clone();
        if !c.is_zero() {
            out.add_term(Multiindex::zero(self.nvars()), c);
        }
        out
    }

    /// Integer power (`k = 0` gives the constant 1 at this series' order).
    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(&self.vars, self.order.max(1));
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Series with conjugated coefficients (same variables and exponents).
    pub fn conj(&self) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
            order: self.order,
        }
    }

    /// Formal partial derivative in variable `k`; the known order drops by 1.
    pub fn derive(&self, k: usize) -> Result<Series, SeriesError> {
        if k >= self.nvars() {
            return Err(SeriesError::UnknownVariable(format!("#{k}")));
        }
        if self.order <= 1 {
            return Err(SeriesError::OrderExhausted(format!(
                "derivative in `{}` of a series known to order {}",
                self.vars.name(k),
                self.order
            )));
        }
        let mut out = Series::zero(&self.vars, self.order - 1);
        for (e, c) in &self.terms {
            let p = e.get(k);
            if p == 0 {
                continue;
            }
            let mut f = e.clone();
            f.set(k, p - 1);
            out.terms.insert(f, c.scale_int(p as i64));
        }
        Ok(out)
    }

    pub fn derive_by(&self, name: &str) -> Result<Series, SeriesError> {
        self.derive(self.vars.require(name)?)
    }

    /// Iterated derivative `∂^β` (β indexed by variable position).
    pub fn derive_multi(&self, beta: &[(usize, u32)]) -> Result<Series, SeriesError> {
        let mut out = self.clone();
        for &(k, p) in beta {
            for _ in 0..p {
                out = out.derive(k)?;
            }
        }
        Ok(out)
    }

    /// Sets variable `k` to zero.
    pub fn set_zero(&self, k: usize) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(k) == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            order: self.order,
        }
    }

    /// Moves the series into `target`, sending variable `k` to position
    /// `map[k]`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Series {
        assert_eq!(map.len(), self.nvars());
        let mut out = Series::zero(target, self.order);
        for (e, c) in &self.terms {
            let mut f = Multiindex::zero(target.len());
            for (k, &t) in map.iter().enumerate() {
                f.set(t, f.get(t) + e.get(k));
            }
            out.add_term(f, c);
        }
        out
    }

    /// Moves the series into `target` by matching names. Variables absent
    /// from `target` must not occur in any stored term.
    pub fn relabel(&self, target: &Vars) -> Result<Series, SeriesError> {
        let mut map = Vec::with_capacity(self.nvars());
        let mut dropped = Vec::new();
        for (k, name) in self.vars.names().iter().enumerate() {
            match target.index(name) {
                Some(t) => map.push(Some(t)),
                None => {
                    if self.depends_on(k) {
                        return Err(SeriesError::DependsOn(name.clone()));
                    }
                    dropped.push(k);
                    map.push(None)
                }
            }
        }
        let mut out = Series::zero(target, self.order);
        for (e, c) in &self.terms {
            let mut f = Multiindex::zero(target.len());
            for (k, t) in map.iter().enumerate() {
                if let Some(t) = t {
                    f.set(*t, f.get(*t) + e.get(k));
                }
            }
            out.add_term(f, c);
        }
        Ok(out)
    }

    /// Same terms, new names for the same positions.
    pub fn rename(&self, vars: &Vars) -> Series {
        assert_eq!(vars.len(), self.nvars());
        Series {
            vars: vars.clone(),
            terms: self.terms.clone(),
            order: self.order,
        }
    }

    /// Coefficient of `x^β` where `x` are the variables at `idx`: the result
    /// lives in the same ring (those variables no longer occur) and is known
    /// to order `N − |β|`.
    pub fn coefficient(&self, idx: &[usize], beta: &[u32]) -> Result<Series, SeriesError> {
        assert_eq!(idx.len(), beta.len());
        let d: u32 = beta.iter().sum();
        if d >= self.order {
            return Err(SeriesError::OrderExhausted(format!(
                "coefficient of degree {d} in a series known to order {}",
                self.order
            )));
        }
        let mut out = Series::zero(&self.vars, self.order - d);
        for (e, c) in &self.terms {
            if idx.iter().zip(beta).all(|(&k, &b)| e.get(k) == b) {
                let mut f = e.clone();
                for &k in idx {
                    f.set(k, 0);
                }
                out.add_term(f, c);
            }
        }
        Ok(out)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: u32) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            order: self.order,
        }
    }

    /// Substitutes `x_k := s`, where `s` lives in the same ring and has zero
    /// constant term.
    pub fn substitute(&self, k: usize, s: &Series) -> Result<Series, SeriesError> {
        self.check_vars(s)?;
        if !s.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        // Group by the exponent of x_k: self = Σ_e c_e · x_k^e.
        let mut groups: BTreeMap<u32, Vec<(Multiindex, Scalar)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let p = e.get(k);
            let mut f = e.clone();
            f.set(k, 0);
            groups.entry(p).or_default().push((f, c.clone()));
        }
        let mut out = Series::zero(&self.vars, self.order);
        let mut power = Series::one(&self.vars, self.order);
        let mut at = 0u32;
        for (p, terms) in groups {
            while at < p {
                power = power.mul_trunc(s, self.order);
                at += 1;
            }
            let c = Series::from_terms(&self.vars, terms, self.order - p);
            out = &out + &c.mul_trunc(&power, self.order);
        }
        Ok(out)
    }

    /// Simultaneous substitution `y_j := subs[j]`; all substituted series
    /// share one variable list, which becomes the result's.
    pub fn compose(&self, subs: &[Series]) -> Result<Series, SeriesError> {
        if subs.len() != self.nvars() {
            return Err(SeriesError::Arity {
                expected: self.nvars(),
                got: subs.len(),
            });
        }
        let Some(first) = subs.first() else {
            return Err(SeriesError::Arity { expected: 1, got: 0 });
        };
        let vars = first.vars.clone();
        for s in subs {
            if s.vars != vars {
                return Err(SeriesError::VarMismatch {
                    left: vars.to_string(),
                    right: s.vars.to_string(),
                });
            }
            if !s.constant_term().is_zero() {
                return Err(SeriesError::NonzeroConstant);
            }
        }
        let v = subs.iter().map(Series::valuation).min().unwrap_or(1).max(1);
        let cap = self.order.saturating_mul(v);
        let mut cache: HashMap<Multiindex, Series> = HashMap::new();
        cache.insert(Multiindex::zero(self.nvars()), Series::one(&vars, cap));
        let mut out = Series::zero(&vars, cap);
        for (e, c) in &self.terms {
            let p = power_product(&mut cache, subs, e, cap);
            out = &out + &p.scale(c);
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series, SeriesError> {
        let a0 = self.constant_term();
        let inv0 = a0.inv().ok_or(SeriesError::NotInvertible)?;
        let n = self.order;
        let two = Series::constant(&self.vars, Scalar::from_int(2), n);
        let mut b = Series::constant(&self.vars, inv0, n);
        let mut prec = 1u32;
        while prec < n {
            prec = (prec * 2).min(n);
            let a = self.truncate(prec);
            // Newton step: b is correct below the previous precision and is
            // padded with zeros up to the new one.
            b = b.with_order(prec);
            let ab = a.mul_trunc(&b, prec);
            b = b.mul_trunc(&(&two - &ab), prec);
        }
        Ok(b.with_order(n))
    }

    /// Solves `F(x, y(x)) = 0` for the last variable `y`, returning `y(x)` in
    /// the ring of the remaining variables, known to the order of `F`.
    pub fn implicit_solve(&self) -> Result<Series, SeriesError> {
        let m = self.nvars();
        if m == 0 {
            return Err(SeriesError::Arity { expected: 1, got: 0 });
        }
        let ky = m - 1;
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NotZeroAtOrigin);
        }
        if self.coeff(&Multiindex::unit(m, ky)).is_zero() {
            return Err(SeriesError::Degenerate);
        }
        let n = self.order;
        let xvars = self.vars.without(ky);
        let fy = self.derive(ky).ok();
        let mut y = Series::zero(&self.vars, n);
        let mut prec = 1u32;
        while prec < n {
            prec = (prec * 2).min(n);
            let f = self.truncate(prec);
            y = y.with_order(prec);
            let res = f.substitute(ky, &y)?.truncate(prec);
            if res.is_zero() {
                continue;
            }
            let d = match &fy {
                Some(fy) => fy.truncate(prec).substitute(ky, &y)?,
                None => Series::constant(&self.vars, self.coeff(&Multiindex::unit(m, ky)), prec),
            };
            let dinv = d.reciprocal()?;
            y = (&y - &res.mul_trunc(&dinv, prec)).with_order(prec);
        }
        let y = y.with_order(n);
        // Independent re-check of the defining identity.
        let res = self.substitute(ky, &y)?;
        debug_assert!(res.truncate(n).is_zero(), "implicit solution failed re-substitution");
        if !res.truncate(n).is_zero() {
            return Err(SeriesError::Degenerate);
        }
        y.relabel(&xvars)
    }

    /// Evaluates the known part at a point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Scalar::zero();
        let mut powers: Vec<Vec<Scalar>> = point.iter().map(|p| vec![Scalar::one(), p.clone()]).collect();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, p) in e.iter().enumerate() {
                while powers[k].len() <= p as usize {
                    let next = powers[k].last().unwrap() * &point[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][p as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Restriction to the line `x = a·s`: coefficients of `s^0..s^{N-1}`.
    pub fn restrict_to_line(&self, direction: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(direction.len(), self.nvars());
        let mut out = vec![Scalar::zero(); self.order as usize];
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, p) in e.iter().enumerate() {
                if p > 0 {
                    t = &t * &direction[k].pow(p as i64).expect("nonnegative power");
                }
            }
            out[e.degree() as usize] += &t;
        }
        out
    }

    /// Per-degree growth diagnostic `max |c|^{1/d}` for `d ≥ 1` (no
    /// convergence claim is attached to it).
    pub fn growth_profile(&self) -> Vec<(u32, f64)> {
        let mut best: BTreeMap<u32, f64> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.degree();
            if d == 0 {
                continue;
            }
            let g = c.magnitude_bound().powf(1.0 / d as f64);
            let slot = best.entry(d).or_insert(0.0);
            if g > *slot {
                *slot = g;
            }
        }
        best.into_iter().collect()
    }

    /// Maximal total degree in the given variables over all stored terms.
    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&k| e.get(k)).sum())
            .max()
            .unwrap_or(0)
    }

    /// Least total degree in the given variables over stored terms.
    pub fn min_degree_in(&self, idx: &[usize]) -> Option<u32> {
        self.terms.keys().map(|e| idx.iter().map(|&k| e.get(k)).sum()).min()
    }

    /// Rational constant helper: `p/q` as a constant series.
    pub fn rational(vars: &Vars, p: i64, q: i64, order: u32) -> Series {
        Series::constant(
            vars,
            Scalar::from_real(BigRational::new(BigInt::from(p), BigInt::from(q))),
            order,
        )
    }
}

fn power_product(cache: &mut HashMap<Multiindex, Series>, subs: &[Series], e: &Multiindex, cap: u32) -> Series {
    if let Some(p) = cache.get(e) {
        return p.clone();
    }
    let j = (0..e.len()).rev().find(|&j| e.get(j) > 0).expect("nonzero exponent");
    let mut prev = e.clone();
    prev.set(j, e.get(j) - 1);
    let base = power_product(cache, subs, &prev, cap);
    let p = base.mul_trunc(&subs[j], cap);
    cache.insert(e.clone(), p.clone());
    p
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    /// Panics on variable-list mismatch; use [`Series::try_add`] otherwise.
    fn add(self, o: &Series) -> Series {
        self.try_add(o).expect("variable-list mismatch")
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self.try_sub(o).expect("variable-list mismatch")
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        self.try_mul(o).expect("variable-list mismatch")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            order: self.order,
        }
    }
}

impl fmt::Display for Series {
    /// Human-readable sum of monomials followed by `+ O(N)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*{}", self.vars.name(j))?,
                    _ => write!(f, "*{}^{}", self.vars.name(j), p)?,
                }
            }
        }
        write!(f, " + O({})", self.order)
    }
}
