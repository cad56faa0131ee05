//! The determinant criterion for formal solutions of analytic systems: a
//! formal solution `ĝ(w)` of `R(w, y) = 0` along which some maximal minor
//! of `∂R/∂y` does not vanish identically.

use std::fmt;

use crate::algebra::{linalg, Series};
use crate::classify::combinations;
use crate::{Error, Result};

/// Outcome of the minor search; never a convergence claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArtinVerdict {
    /// Rows `rows` of `∂R/∂y` restricted to `ĝ` have determinant `det`,
    /// certified nonzero at `order`.
    Satisfied { rows: Vec<usize>, det: Series, order: u32 },
    /// Every maximal minor vanishes to `order`.
    Inconclusive { order: u32 },
}

impl ArtinVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ArtinVerdict::Satisfied { .. })
    }

    pub fn record(&self) -> String {
        match self {
            ArtinVerdict::Satisfied { rows, det, order } => {
                let r: Vec<String> = rows.iter().map(|i| (i + 1).to_string()).collect();
                let (e, c) = det.leading_term().expect("certified nonzero");
                format!(
                    "artin=satisfied rows=[{}] det_leading_exp={e} det_leading_coeff={c} order={order}",
                    r.join(",")
                )
            }
            ArtinVerdict::Inconclusive { order } => format!("artin=inconclusive order={order}"),
        }
    }
}

impl fmt::Display for ArtinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArtinVerdict::Satisfied { rows, det, order } => {
                let r: Vec<String> = rows.iter().map(|i| format!("R{}", i + 1)).collect();
                write!(
                    f,
                    "criterion satisfied at order {order}: rows {} give det = {det}",
                    r.join(", ")
                )
            }
            ArtinVerdict::Inconclusive { order } => {
                write!(f, "inconclusive at order {order}: all maximal minors vanish")
            }
        }
    }
}

/// `system` lives in a ring whose variables are those of `solution`
/// (the `w`) followed by one variable per solution component (the `y`).
pub fn artin_witness(system: &[Series], solution: &[Series], order: u32) -> Result<ArtinVerdict> {
    let m = solution.len();
    let first = solution
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty formal solution".into()))?;
    let wvars = first.vars().clone();
    if system.len() < m {
        return Err(Error::Dimension(format!("{} equations for {m} unknowns", system.len())));
    }
    let p = wvars.len();
    for r in system {
        if r.nvars() != p + m {
            return Err(Error::Dimension(format!(
                "equations must be in {} variables ({} of w, {m} of y), got {}",
                p + m,
                p,
                r.nvars()
            )));
        }
        if !r.constant_term().is_zero() {
            return Err(Error::NotAtOrigin);
        }
    }
    if solution.iter().any(|g| !g.constant_term().is_zero()) {
        return Err(Error::NotAtOrigin);
    }
    let solution: Vec<Series> = solution.iter().map(|g| g.truncate(order)).collect();
    let subs: Vec<Series> = (0..p)
        .map(|k| Series::var(&wvars, k, order))
        .chain(solution.iter().cloned())
        .collect();
    let along = |s: &Series| -> Result<Series> { Ok(s.truncate(order).compose(&subs)?.truncate(order)) };

    for (j, r) in system.iter().enumerate() {
        let res = along(r)?;
        if let Some((e, c)) = res.leading_term() {
            return Err(Error::InvalidArgument(format!(
                "R{}(w, ĝ(w)) ≠ 0: term {e} with coefficient {c}",
                j + 1
            )));
        }
    }

    let jac: Vec<Vec<Series>> = system
        .iter()
        .map(|r| (0..m).map(|k| along(&r.derive(p + k)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let known = jac
        .iter()
        .flatten()
        .map(Series::order)
        .min()
        .unwrap_or(order)
        .min(order);
    for rows in combinations(system.len(), m) {
        let mat: Vec<Vec<Series>> = rows.iter().map(|&i| jac[i].clone()).collect();
        let det = linalg::series_det(&mat, &wvars, known).truncate(known);
        if !det.is_zero() {
            return Ok(ArtinVerdict::Satisfied {
                rows,
                det,
                order: known,
            });
        }
    }
    Ok(ArtinVerdict::Inconclusive { order: known })
}
