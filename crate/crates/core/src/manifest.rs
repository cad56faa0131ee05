//! Text manifests for hypersurfaces (`.hsf`), maps (`.fmap`), tangent
//! fields (`.field`) and analytic systems with a formal solution
//! (`.artin`). Every manifest is a header of `key=value` lines followed by
//! tagged series records:
//!
//! ```text
//! n=2
//! normal=true
//! vars=[w1,zeta1,xi]
//! order=10
//! terms=1
//! exp=[1,1,0] coeff=2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::algebra::{Series, SeriesError};
use crate::flows::TangentField;
use crate::hypersurface::Hypersurface;
use crate::mapping::FormalMap;
use crate::{Error, Result};

fn format_err(msg: impl Into<String>) -> Error {
    Error::Series(SeriesError::Format(msg.into()))
}

struct Lines<'a> {
    inner: Box<dyn Iterator<Item = &'a str> + 'a>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: Box::new(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#')),
            ),
        }
    }

    fn value(&mut self, key: &str) -> Result<&'a str> {
        let line = self
            .inner
            .next()
            .ok_or_else(|| format_err(format!("missing `{key}=` line")))?;
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| format_err(format!("expected `{key}=`, found `{line}`")))
    }

    fn number(&mut self, key: &str) -> Result<usize> {
        let v = self.value(key)?;
        v.parse()
            .map_err(|_| format_err(format!("`{key}` must be a nonnegative integer, found `{v}`")))
    }

    fn tagged(&mut self, tag: &str) -> Result<Series> {
        let line = self
            .inner
            .next()
            .ok_or_else(|| format_err(format!("missing `[{tag}]` record")))?;
        if line != format!("[{tag}]") {
            return Err(format_err(format!("expected `[{tag}]`, found `{line}`")));
        }
        Ok(Series::read_record(&mut self.inner)?)
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            Some(extra) => Err(format_err(format!("trailing content `{extra}`"))),
            None => Ok(()),
        }
    }
}

fn push_tagged(out: &mut String, tag: &str, s: &Series) {
    writeln!(out, "[{tag}]").unwrap();
    out.push_str(&s.to_record());
}

pub fn write_hypersurface(h: &Hypersurface) -> String {
    let mut out = format!("n={}\nnormal={}\n", h.n(), h.is_normal());
    out.push_str(&h.thetabar().to_record());
    out
}

pub fn read_hypersurface(text: &str) -> Result<Hypersurface> {
    let mut lines = Lines::new(text);
    let n = lines.number("n")?;
    let normal: bool = lines
        .value("normal")?
        .parse()
        .map_err(|_| format_err("`normal` must be true or false"))?;
    let thetabar = Series::read_record(&mut lines.inner)?;
    lines.finish()?;
    let h = Hypersurface::new(n, &thetabar)?;
    if h.is_normal() != normal {
        return Err(Error::InvalidHypersurface(format!(
            "header says normal={normal} but Θ̄ is{} in normal form",
            if h.is_normal() { "" } else { " not" }
        )));
    }
    Ok(h)
}

fn map_tag(n: usize, k: usize) -> String {
    if k + 1 == n {
        "f".into()
    } else {
        format!("g{}", k + 1)
    }
}

pub fn write_map(h: &FormalMap) -> String {
    let mut out = format!("n={}\n", h.n());
    for (k, s) in h.components().iter().enumerate() {
        push_tagged(&mut out, &map_tag(h.n(), k), s);
    }
    out
}

pub fn read_map(text: &str) -> Result<FormalMap> {
    let mut lines = Lines::new(text);
    let n = lines.number("n")?;
    let comps = (0..n)
        .map(|k| lines.tagged(&map_tag(n, k)))
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    FormalMap::new(n, comps)
}

pub fn write_field(f: &TangentField) -> String {
    let mut out = format!("n={}\ndegree_bound={}\n", f.n(), f.degree_bound);
    for (k, a) in f.coefficients.iter().enumerate() {
        push_tagged(&mut out, &format!("a{}", k + 1), a);
    }
    out
}

pub fn read_field(text: &str) -> Result<TangentField> {
    let mut lines = Lines::new(text);
    let n = lines.number("n")?;
    let bound = lines.number("degree_bound")? as u32;
    let coeffs = (0..n)
        .map(|k| lines.tagged(&format!("a{}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    TangentField::new(n, coeffs, bound)
}

/// An analytic system `R(w, y) = 0` with a candidate formal solution `ĝ(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSystem {
    pub equations: Vec<Series>,
    pub solution: Vec<Series>,
}

pub fn write_artin(sys: &ArtinSystem) -> String {
    let mut out = format!("equations={}\nunknowns={}\n", sys.equations.len(), sys.solution.len());
    for (k, r) in sys.equations.iter().enumerate() {
        push_tagged(&mut out, &format!("R{}", k + 1), r);
    }
    for (k, g) in sys.solution.iter().enumerate() {
        push_tagged(&mut out, &format!("g{}", k + 1), g);
    }
    out
}

pub fn read_artin(text: &str) -> Result<ArtinSystem> {
    let mut lines = Lines::new(text);
    let e = lines.number("equations")?;
    let m = lines.number("unknowns")?;
    let equations = (0..e)
        .map(|k| lines.tagged(&format!("R{}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    let solution = (0..m)
        .map(|k| lines.tagged(&format!("g{}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    Ok(ArtinSystem { equations, solution })
}
