//! The five-level nondegeneracy hierarchy, multiindex selection and the
//! ζ-vanishing order of determinants.

use std::fmt;

use crate::algebra::{linalg, Multiindex, Scalar, Series, Vars};
use crate::hypersurface::{Hypersurface, MinimalityVerdict};
use crate::segre::{generic_rank, generic_rank_of_matrix, jet_dimension, jet_morphism, RankReport};
use crate::{Error, Result};

/// The conditions of the hierarchy, from strongest to weakest:
/// Levi-nondegenerate, finitely nondegenerate, essentially finite,
/// Segre-nondegenerate, holomorphically nondegenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    I,
    II,
    III,
    IV,
    V,
}

impl Condition {
    pub const ALL: [Condition; 5] = [Condition::I, Condition::II, Condition::III, Condition::IV, Condition::V];

    pub fn name(self) -> &'static str {
        match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::IV => "IV",
            Condition::V => "V",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    /// No certificate was found below the stated truncation order; this is
    /// never a proof that the condition fails.
    FailsToOrder(u32),
    Inconclusive(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Holds => f.write_str("holds"),
            Status::FailsToOrder(n) => write!(f, "fails-to-order-{n}"),
            Status::Inconclusive(why) => write!(f, "inconclusive({why})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub status: Status,
    /// Least jet order at which the condition was certified.
    pub k0: Option<u32>,
    /// Human-readable certificate (empty unless the condition holds).
    pub witness: String,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn record(&self) -> String {
        let mut s = format!("cond={} status={}", self.condition, self.status);
        if let Some(k) = self.k0 {
            s.push_str(&format!(" k0={k}"));
        }
        if !self.witness.is_empty() {
            s.push_str(&format!(" witness={}", self.witness));
        }
        s
    }
}

/// `β̲¹ > … > β̲ⁿ = 0` with a nonvanishing gradient determinant.
#[derive(Clone, Debug)]
pub struct MultiindexWitness {
    pub betas: Vec<Multiindex>,
    /// `det(∂Θ_{β̲^i}/∂t_j)`, rows in the order of `betas`.
    pub minor: Series,
    /// Valuation (lowest total degree) of `minor`.
    pub vanishing_order: u32,
}

impl fmt::Display for MultiindexWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.betas.iter().map(ToString::to_string).collect();
        write!(f, "[{}] det_valuation={}", b.join(","), self.vanishing_order)
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub order: u32,
    /// Largest jet order examined; defaults to `order − 2`, the largest
    /// value the truncation supports.
    pub kmax: Option<u32>,
    pub beta_bound: u32,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            order: 10,
            kmax: None,
            beta_bound: 4,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub verdicts: Vec<ConditionVerdict>,
    pub minimality: MinimalityVerdict,
    pub selection: Option<MultiindexWitness>,
    /// First `m`-choice of multiindices with a nonzero first-Segre
    /// determinant, if any.
    pub segre_witness: Option<Vec<Multiindex>>,
    /// The rank verdict for (IV) agrees with the determinant search.
    pub iv_cross_check: bool,
    /// The rank verdict for (V) agrees with the multiindex selection.
    pub v_cross_check: bool,
    pub order: u32,
    pub kmax: u32,
    pub beta_bound: u32,
    pub seed: u64,
}

impl ClassificationReport {
    pub fn verdict(&self, c: Condition) -> &ConditionVerdict {
        &self.verdicts[c as usize]
    }

    pub fn holds(&self, c: Condition) -> bool {
        self.verdict(c).holds()
    }

    /// Line-oriented key=value records.
    pub fn machine_lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "classify order={} kmax={} beta_bound={} seed={}",
            self.order, self.kmax, self.beta_bound, self.seed
        )];
        out.push(format!("minimal={} {}", self.minimality.minimal, self.minimality.rank));
        out.extend(self.verdicts.iter().map(ConditionVerdict::record));
        out.push(format!(
            "cross_check iv={} v={}",
            self.iv_cross_check, self.v_cross_check
        ));
        out
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "classification at order {} (k ≤ {}, |β| ≤ {})",
            self.order, self.kmax, self.beta_bound
        )?;
        writeln!(f, "  {}", self.minimality)?;
        for v in &self.verdicts {
            write!(f, "  ({}) {}", v.condition, v.status)?;
            if let Some(k) = v.k0 {
                write!(f, " at k={k}")?;
            }
            if !v.witness.is_empty() {
                write!(f, "  [{}]", v.witness)?;
            }
            writeln!(f)?;
        }
        if let Some(s) = &self.selection {
            writeln!(f, "  multiindex selection: {s}")?;
        }
        write!(
            f,
            "  cross-checks: (IV) {} (V) {}",
            self.iv_cross_check, self.v_cross_check
        )
    }
}

/// All `k`-element subsets of `0..len`, in lexicographic order.
pub fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// `Θ_β(w, 0)` as a series in `w`.
fn theta_on_first_chain(h: &Hypersurface, beta: &Multiindex) -> Result<Series> {
    let c = h.coords();
    Ok(h.theta_coefficient(beta)?.set_zero(c.m()).relabel(&c.w)?)
}

fn linear_part(s: &Series, m: usize) -> Vec<Scalar> {
    (0..m).map(|j| s.coeff(&Multiindex::unit(m, j))).collect()
}

/// Whether `𝔪^p ⊆ I + 𝔪^{p+1}` for the ideal `I` generated by `gens` in
/// `ℂ⟦w⟧`; by Nakayama's lemma this gives `𝔪^p ⊆ I`, so `I` is
/// `𝔪`-primary and the map is finite.
fn nakayama_test(gens: &[Series], m: usize, p: u32) -> bool {
    let monos = Multiindex::all_up_to(m, 0, p);
    let index = |e: &Multiindex| monos.iter().position(|x| x == e);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        for a in &monos {
            let mut row = vec![Scalar::zero(); monos.len()];
            let mut any = false;
            for (e, v) in g.terms() {
                let prod = e.add(a);
                if prod.degree() > p {
                    continue;
                }
                row[index(&prod).expect("degree ≤ p")] += v;
                any = true;
            }
            if any {
                rows.push(row);
            }
        }
    }
    let base = linalg::rank(&rows);
    for e in Multiindex::of_degree(m, p) {
        let mut row = vec![Scalar::zero(); monos.len()];
        row[index(&e).expect("listed")] = Scalar::one();
        rows.push(row);
    }
    linalg::rank(&rows) == base
}

/// Gradient `∇_t Θ_β(w, z)`; `β = 0` gives `(0, …, 0, 1)`.
fn theta_gradient(h: &Hypersurface, beta: &Multiindex) -> Result<Vec<Series>> {
    let c = h.coords();
    let n = c.n;
    if beta.is_zero() {
        return Ok((0..n)
            .map(|j| {
                if j + 1 == n {
                    Series::one(&c.t, h.order())
                } else {
                    Series::zero(&c.t, h.order())
                }
            })
            .collect());
    }
    let th = h.theta_coefficient(beta)?;
    (0..n).map(|j| Ok(th.derive(j)?)).collect()
}

/// Greedy selection `β̲ⁿ = 0 < β̲^{n−1} < … < β̲¹` (graded-lexicographic),
/// each the least multiindex extending the previous choice to a matrix of
/// full column rank.
pub fn select_multiindices(h: &Hypersurface, beta_bound: u32, seed: u64) -> Result<MultiindexWitness> {
    let c = h.coords();
    let bound = beta_bound.min(h.order().saturating_sub(2));
    let mut rows: Vec<(Multiindex, Vec<Series>)> = Vec::new();
    for beta in Multiindex::all_up_to(c.m(), 0, bound) {
        rows.push((beta.clone(), theta_gradient(h, &beta)?));
    }
    select_from_rows(&rows, c.n, &c.t, seed).ok_or_else(|| Error::Inconclusive {
        order: h.order(),
        what: format!("no multiindex selection with |β| ≤ {bound}"),
    })
}

/// Selection over an explicit family of gradient rows (indexed by
/// multiindices in graded-lexicographic order, the zero index first).
pub fn select_from_rows(
    rows: &[(Multiindex, Vec<Series>)],
    n: usize,
    vars: &Vars,
    seed: u64,
) -> Option<MultiindexWitness> {
    let zero = rows.iter().position(|(b, _)| b.is_zero())?;
    let mut chosen = vec![zero];
    while chosen.len() < n {
        let last = &rows[*chosen.last().expect("nonempty")].0;
        let next = rows.iter().enumerate().filter(|(_, (b, _))| b > last).find(|(i, _)| {
            let mat: Vec<Vec<Series>> = chosen.iter().chain([i]).map(|&k| rows[k].1.clone()).collect();
            generic_rank_of_matrix(&mat, seed).rank == chosen.len() + 1
        });
        chosen.push(next?.0);
    }
    chosen.reverse();
    let mat: Vec<Vec<Series>> = chosen.iter().map(|&k| rows[k].1.clone()).collect();
    let ord = mat.iter().flatten().map(Series::order).min().unwrap_or(1);
    let minor = linalg::series_det(&mat, vars, ord);
    if minor.is_zero() {
        return None;
    }
    let vanishing_order = minor.valuation();
    Some(MultiindexWitness {
        betas: chosen.iter().map(|&k| rows[k].0.clone()).collect(),
        minor,
        vanishing_order,
    })
}

/// Least total degree in the variables `zeta_idx` carrying a nonzero
/// coefficient.
pub fn kappa_order(det: &Series, zeta_idx: &[usize]) -> Result<u32> {
    det.min_degree_in(zeta_idx).ok_or_else(|| Error::Inconclusive {
        order: det.order(),
        what: "determinant vanishes to the known order".into(),
    })
}

/// First choice of `m` multiindices `1 ≤ |β^i| ≤ bound` with
/// `det(∂Θ_{β^i}/∂w_j(w, 0)) ≢ 0`.
pub fn segre_determinant_witness(h: &Hypersurface, bound: u32) -> Result<Option<Vec<Multiindex>>> {
    let c = h.coords();
    let m = c.m();
    let bound = bound.min(h.order().saturating_sub(2));
    let betas = Multiindex::all_up_to(m, 1, bound);
    let mut rows = Vec::with_capacity(betas.len());
    for b in &betas {
        let g = theta_on_first_chain(h, b)?;
        rows.push((0..m).map(|j| Ok(g.derive(j)?)).collect::<Result<Vec<_>>>()?);
    }
    for idx in combinations(betas.len(), m) {
        let mat: Vec<Vec<Series>> = idx.iter().map(|&i| rows[i].clone()).collect();
        let ord = mat.iter().flatten().map(Series::order).min().unwrap_or(1);
        if !linalg::series_det(&mat, &c.w, ord).is_zero() {
            return Ok(Some(idx.iter().map(|&i| betas[i].clone()).collect()));
        }
    }
    Ok(None)
}

fn holds(condition: Condition, k0: u32, witness: String) -> ConditionVerdict {
    ConditionVerdict {
        condition,
        status: Status::Holds,
        k0: Some(k0),
        witness,
    }
}

fn fails(condition: Condition, order: u32) -> ConditionVerdict {
    ConditionVerdict {
        condition,
        status: Status::FailsToOrder(order),
        k0: None,
        witness: String::new(),
    }
}

fn rank_witness(r: &RankReport) -> String {
    let j = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    format!("rank:{};rows:{};cols:{}", r.rank, j(&r.rows), j(&r.cols))
}

/// Evaluates conditions (I)–(V) for `k ≤ kmax`, the minimality criteria and
/// the determinant cross-checks.
pub fn classify(h: &Hypersurface, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = opts.order.min(h.order());
    if order < 3 {
        return Err(Error::OrderExhausted("classification needs order ≥ 3".into()));
    }
    let h = h.truncate(order);
    let c = h.coords().clone();
    let m = c.m();
    let n = c.n;
    let kmax = opts.kmax.unwrap_or(order - 2).clamp(1, order - 2);
    let seed = opts.seed;

    let firsts: Vec<(Multiindex, Series)> = Multiindex::all_up_to(m, 1, kmax)
        .into_iter()
        .map(|b| Ok((b.clone(), theta_on_first_chain(&h, &b)?)))
        .collect::<Result<_>>()?;

    // (I) and (II): immersivity at 0.
    let mut lin_rows = Vec::new();
    let mut v1 = fails(Condition::I, order);
    let mut v2 = fails(Condition::II, order);
    for k in 1..=kmax {
        lin_rows.extend(
            firsts
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(_, s)| linear_part(s, m)),
        );
        if linalg::rank(&lin_rows) == m {
            let w = format!("linear_rank:{m}");
            if k == 1 {
                v1 = holds(Condition::I, 1, w.clone());
            }
            v2 = holds(Condition::II, k, w);
            break;
        }
    }

    // (III): finiteness via Nakayama.
    let mut v3 = fails(Condition::III, order);
    'outer: for k in 1..=kmax {
        let gens: Vec<Series> = firsts
            .iter()
            .filter(|(b, _)| b.degree() <= k)
            .map(|(_, s)| s.clone())
            .collect();
        let known = gens.iter().map(Series::order).min().unwrap_or(0);
        for p in 1..known {
            if nakayama_test(&gens, m, p) {
                v3 = holds(Condition::III, k, format!("m^{p}_in_ideal"));
                break 'outer;
            }
        }
    }

    // (IV) and (V): generic ranks of the jet morphism.
    let jet = jet_morphism(&h, kmax)?;
    let first_segre = jet.on_first_segre(&h)?;
    let complexified = jet.on_complexification(&h)?;
    let mut v4 = fails(Condition::IV, order);
    let mut v5 = fails(Condition::V, order);
    for k in 1..=kmax {
        let len = n + jet_dimension(m, k);
        let r = generic_rank(&first_segre[..len], seed)?;
        if r.rank == m {
            v4 = holds(Condition::IV, k, rank_witness(&r));
            break;
        }
    }
    for k in 1..=kmax {
        let len = n + jet_dimension(m, k);
        let r = generic_rank(&complexified[..len], seed)?;
        if r.rank == 2 * n - 1 {
            v5 = holds(Condition::V, k, rank_witness(&r));
            break;
        }
    }

    let verdicts = vec![v1, v2, v3, v4, v5];
    for pair in verdicts.windows(2) {
        if pair[0].holds() && !pair[1].holds() {
            return Err(Error::Consistency(format!(
                "({}) holds but ({}) does not at order {order}",
                pair[0].condition, pair[1].condition
            )));
        }
    }

    let selection = select_multiindices(&h, kmax, seed).ok();
    let segre_witness = segre_determinant_witness(&h, kmax)?;
    let iv_cross_check = verdicts[3].holds() == segre_witness.is_some();
    let v_cross_check = verdicts[4].holds() == selection.is_some();
    let minimality = h.is_minimal(seed)?;
    Ok(ClassificationReport {
        verdicts,
        minimality,
        selection,
        segre_witness,
        iv_cross_check,
        v_cross_check,
        order,
        kmax,
        beta_bound: opts.beta_bound,
        seed,
    })
}
