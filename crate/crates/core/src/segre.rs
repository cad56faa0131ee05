//! Jets of Segre varieties, Segre chains and certified generic ranks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{self, eliminate_trunc, trunc_det, TruncPoly};
use crate::algebra::{Multiindex, Scalar, Series};
use crate::hypersurface::Hypersurface;
use crate::{Error, Result};

/// The jet morphism `τ ↦ (τ, (∂^β_ζ r̄)_{|β|≤k})` as series in `(w, z, ζ, ξ)`.
#[derive(Clone, Debug)]
pub struct JetMorphism {
    pub k: u32,
    /// Multiindices labelling the components after the first `n`, in
    /// graded-lexicographic order.
    pub betas: Vec<Multiindex>,
    pub components: Vec<Series>,
}

/// Parametrization of a Segre chain from the origin.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub depth: u8,
    pub components: Vec<Series>,
}

/// A certified lower bound for the generic rank of a matrix of series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    /// Rows of the certifying minor.
    pub rows: Vec<usize>,
    /// Columns of the certifying minor.
    pub cols: Vec<usize>,
    /// True when minors of size `rank + 1` exist but none was certified.
    pub degenerate_above: bool,
    pub order: u32,
    pub seed: u64,
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "rank={} certified_by=rows:{};cols:{} degenerate_above={} order={} seed={}",
            self.rank,
            join(&self.rows),
            join(&self.cols),
            self.degenerate_above,
            self.order,
            self.seed
        )
    }
}

/// Number of multiindices of length `m` and degree at most `k`.
pub fn jet_dimension(m: usize, k: u32) -> usize {
    Multiindex::all_up_to(m, 0, k).len()
}

/// Builds the jet morphism of order `k`.
pub fn jet_morphism(h: &Hypersurface, k: u32) -> Result<JetMorphism> {
    if k < 1 {
        return Err(Error::InvalidArgument("jet order k must be at least 1".into()));
    }
    let c = h.coords();
    let order = h.order();
    if k + 1 >= order {
        return Err(Error::OrderExhausted(format!(
            "jet order {k} needs truncation order above {}",
            k + 1
        )));
    }
    let mut components: Vec<Series> = c.tau_in_amb().into_iter().map(|j| c.amb_var(j, order)).collect();
    let theta = h.theta_amb();
    let betas = Multiindex::all_up_to(h.m(), 0, k);
    for beta in &betas {
        if beta.is_zero() {
            components.push(h.rbar_amb());
        } else {
            let orders: Vec<(usize, u32)> = (0..h.m()).map(|j| (c.azeta(j), beta.get(j))).collect();
            components.push(theta.derive_multi(&orders)?.mul_i());
        }
    }
    Ok(JetMorphism { k, betas, components })
}

impl JetMorphism {
    /// The components restricted to the complexification via
    /// `ξ := z − iΘ(ζ, w, z)`, as series in `(w, z, ζ)`.
    pub fn on_complexification(&self, h: &Hypersurface) -> Result<Vec<Series>> {
        let c = h.coords();
        self.components
            .iter()
            .map(|s| Ok(h.restrict_xi(s)?.relabel(&c.wzzeta)?))
            .collect()
    }

    /// The components restricted to `{(w, 0, 0, 0)}`, as series in `w`.
    pub fn on_first_segre(&self, h: &Hypersurface) -> Result<Vec<Series>> {
        let c = h.coords();
        self.components
            .iter()
            .map(|s| {
                let mut s = s.clone();
                for k in [c.az(), c.axi()].into_iter().chain(c.amb_zeta()) {
                    s = s.set_zero(k);
                }
                Ok(s.relabel(&c.w)?)
            })
            .collect()
    }
}

/// Segre chains of depth 1 (`(w, 0)` in `w`) and depth 2
/// (`(w, iΘ̄(w, ζ, 0))` in `(w, ζ)`).
pub fn chain_map(h: &Hypersurface, depth: u8) -> Result<ChainMap> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let c = h.coords();
    let order = h.order();
    let m = h.m();
    let components = match depth {
        1 => {
            let mut v: Vec<Series> = (0..m).map(|j| Series::var(&c.w, j, order)).collect();
            v.push(Series::zero(&c.w, order));
            v
        }
        2 => {
            let mut v: Vec<Series> = (0..m).map(|j| Series::var(&c.wzeta, j, order)).collect();
            let second = h.thetabar().set_zero(c.theta_xi()).relabel(&c.wzeta)?.mul_i();
            v.push(second);
            v
        }
        d => return Err(Error::InvalidArgument(format!("chain depth must be 1 or 2, got {d}"))),
    };
    Ok(ChainMap { depth, components })
}

/// Jacobian matrix `∂s_i/∂x_j` over all variables of the common ring.
pub fn jacobian(map: &[Series]) -> Result<Vec<Vec<Series>>> {
    let first = map
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty tuple".into()))?;
    let vars = first.vars().clone();
    map.iter()
        .map(|s| {
            if s.vars() != &vars {
                return Err(Error::Dimension("components live in different rings".into()));
            }
            (0..vars.len()).map(|k| Ok(s.derive(k)?)).collect()
        })
        .collect()
}

fn random_direction(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    (0..len)
        .map(|_| loop {
            let s = Scalar::gauss(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            if !s.is_zero() {
                break s;
            }
        })
        .collect()
}

/// Certified generic rank of the Jacobian of `map`.
pub fn generic_rank(map: &[Series], seed: u64) -> Result<RankReport> {
    let jac = jacobian(map)?;
    Ok(generic_rank_of_matrix(&jac, seed))
}

/// Certified generic rank of a matrix of series (all in one ring).
///
/// The matrix is restricted to random lines through the origin; a minor
/// whose restriction has a certified nonzero coefficient is nonzero as a
/// series. Up to three directions are tried and the best certificate kept.
pub fn generic_rank_of_matrix(m: &[Vec<Series>], seed: u64) -> RankReport {
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let order = m.iter().flatten().map(Series::order).min().unwrap_or(0);
    let full = nr.min(nc);
    let mut best = RankReport {
        rank: 0,
        rows: vec![],
        cols: vec![],
        degenerate_above: full > 0,
        order,
        seed,
    };
    if full == 0 {
        return best;
    }
    let nvars = m[0][0].nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let dir = random_direction(&mut rng, nvars);
        let restricted: Vec<Vec<TruncPoly>> = m
            .iter()
            .map(|row| row.iter().map(|s| TruncPoly::new(s.restrict_to_line(&dir))).collect())
            .collect();
        let elim = eliminate_trunc(&restricted);
        let mut r = elim.rows.len();
        while r > best.rank {
            let minor: Vec<Vec<TruncPoly>> = elim.rows[..r]
                .iter()
                .map(|&i| elim.cols[..r].iter().map(|&j| restricted[i][j].clone()).collect())
                .collect();
            if trunc_det(&minor).is_certified_nonzero() {
                let mut rows = elim.rows[..r].to_vec();
                let mut cols = elim.cols[..r].to_vec();
                rows.sort_unstable();
                cols.sort_unstable();
                best = RankReport {
                    rank: r,
                    rows,
                    cols,
                    degenerate_above: r < full,
                    order,
                    seed,
                };
                break;
            }
            r -= 1;
        }
        if best.rank == full {
            break;
        }
    }
    best
}

/// Rank of the Jacobian of the known polynomial parts evaluated at a
/// random Gaussian-integer point (a probabilistic cross-check).
pub fn evaluation_rank(map: &[Series], seed: u64) -> Result<usize> {
    let jac = jacobian(map)?;
    let nvars = map[0].nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let point = random_direction(&mut rng, nvars);
    let values: Vec<Vec<Scalar>> = jac
        .iter()
        .map(|row| row.iter().map(|s| s.eval(&point)).collect())
        .collect();
    Ok(linalg::rank(&values))
}
