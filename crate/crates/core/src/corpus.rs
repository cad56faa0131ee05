//! Reference hypersurfaces and maps used by the tests, the acceptance suite
//! and the CLI examples.

use crate::algebra::{Multiindex, Scalar, Series};
use crate::expr::parse_defining_expression;
use crate::hypersurface::{Coords, Hypersurface};
use crate::mapping::FormalMap;
use crate::Result;

/// Real defining expression of the three-dimensional hypersurface that is
/// holomorphically nondegenerate but Segre degenerate.
pub const SEGRE_DEGENERATE_EXPR: &str = "Im(z3) - z1*conj(z1)*(1+z1*conj(z2))*(1+conj(z1)*z2)/(1+Re(z1*conj(z2))) \
     + Re(z3)*Im(z1*conj(z2))/(1+Re(z1*conj(z2)))";

fn monomial_thetabar(n: usize, terms: &[(&[u32], i64)], order: u32) -> Hypersurface {
    let c = Coords::new(n);
    let s = Series::from_terms(
        &c.theta,
        terms
            .iter()
            .map(|(e, k)| (Multiindex::from_slice(e), Scalar::from_int(*k))),
        order,
    );
    Hypersurface::new(n, &s).expect("corpus hypersurface is valid")
}

/// `Im z = |w|²`, i.e. `Θ̄ = 2wζ`.
pub fn heisenberg(order: u32) -> Hypersurface {
    monomial_thetabar(2, &[(&[1, 1, 0], 2)], order)
}

/// `Θ̄ = 2w²ζ²` in ℂ².
pub fn quartic(order: u32) -> Hypersurface {
    monomial_thetabar(2, &[(&[2, 2, 0], 2)], order)
}

/// `Im z = |w₁|²` in ℂ³ (holomorphically degenerate).
pub fn degenerate3(order: u32) -> Hypersurface {
    monomial_thetabar(3, &[(&[1, 0, 1, 0, 0], 2)], order)
}

/// The Levi-flat hyperplane `Θ̄ = 0` in ℂ².
pub fn flat(order: u32) -> Hypersurface {
    monomial_thetabar(2, &[], order)
}

/// The hypersurface of [`SEGRE_DEGENERATE_EXPR`], in normal coordinates.
pub fn segre_degenerate(order: u32) -> Result<Hypersurface> {
    let rho = parse_defining_expression(SEGRE_DEGENERATE_EXPR)?;
    let h = Hypersurface::from_real_defining(&rho, 3, order)?;
    if h.is_normal() {
        Ok(h)
    } else {
        Ok(h.normalize(order)?.0)
    }
}

/// The named corpus members: `heis2`, `w2z2`, `degen3`, `flat2`, `ex110`.
pub fn hypersurface(name: &str, order: u32) -> Option<Result<Hypersurface>> {
    Some(match name {
        "heis2" => Ok(heisenberg(order)),
        "w2z2" => Ok(quartic(order)),
        "degen3" => Ok(degenerate3(order)),
        "flat2" => Ok(flat(order)),
        "ex110" => segre_degenerate(order),
        _ => return None,
    })
}

pub const HYPERSURFACE_NAMES: [&str; 5] = ["heis2", "w2z2", "degen3", "flat2", "ex110"];

/// `(w, z) ↦ (w, z + w)`, which is not tangent to the Heisenberg
/// hypersurface.
pub fn shear(order: u32) -> FormalMap {
    let c = Coords::new(2);
    let w = Series::var(&c.t, 0, order);
    let z = Series::var(&c.t, 1, order);
    FormalMap::new(2, vec![w.clone(), &z + &w]).expect("valid map")
}

/// A non-linear automorphism of the Heisenberg hypersurface fixing 0:
/// `(w, z) ↦ ((w + z), z) / (1 − 2iw − iz)`.
pub fn heisenberg_automorphism(order: u32) -> FormalMap {
    let c = Coords::new(2);
    let w = Series::var(&c.t, 0, order);
    let z = Series::var(&c.t, 1, order);
    let den = (&w.scale(&Scalar::gauss(0, -2)) + &z.scale(&Scalar::gauss(0, -1))).add_scalar(&Scalar::one());
    let inv = den.reciprocal().expect("unit denominator");
    FormalMap::new(2, vec![&(&w + &z) * &inv, &z * &inv]).expect("valid map")
}
