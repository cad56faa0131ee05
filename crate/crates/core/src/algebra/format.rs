//! Text records for series:
//!
//! ```text
//! vars=[w1,zeta1,xi]
//! order=10
//! terms=1
//! exp=[1,1,0] coeff=2
//! ```

use std::fmt::Write as _;

use super::{Multiindex, Scalar, Series, SeriesError, Vars};

fn field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, SeriesError> {
    let line = line.ok_or_else(|| SeriesError::Format(format!("missing `{key}=` line")))?;
    line.trim()
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| SeriesError::Format(format!("expected `{key}=`, found `{line}`")))
}

fn bracketed(s: &str) -> Result<Vec<&str>, SeriesError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| SeriesError::Format(format!("expected bracketed list, found `{s}`")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').collect())
}

impl Series {
    /// Canonical text record (terms in graded-lexicographic order).
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars=[{}]", self.vars().names().join(",")).unwrap();
        writeln!(out, "order={}", self.order()).unwrap();
        writeln!(out, "terms={}", self.num_terms()).unwrap();
        for (e, c) in self.terms() {
            let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            writeln!(out, "exp=[{}] coeff={}", exps.join(","), c).unwrap();
        }
        out
    }

    /// Parses one record from a line stream, consuming exactly its lines.
    pub fn read_record<'a, I>(lines: &mut I) -> Result<Series, SeriesError>
    where
        I: Iterator<Item = &'a str>,
    {
        let names = bracketed(field(lines.next(), "vars")?)?;
        let vars = Vars::new(names.iter().map(|s| s.trim().to_string()));
        let order: u32 = field(lines.next(), "order")?
            .parse()
            .map_err(|_| SeriesError::Format("bad order".into()))?;
        if order == 0 {
            return Err(SeriesError::Format("order must be positive".into()));
        }
        let count: usize = field(lines.next(), "terms")?
            .parse()
            .map_err(|_| SeriesError::Format("bad term count".into()))?;
        let mut terms = Vec::with_capacity(count);
        let mut prev: Option<Multiindex> = None;
        for _ in 0..count {
            let line = lines
                .next()
                .ok_or_else(|| SeriesError::Format("missing term line".into()))?;
            let (exp, coeff) = line
                .trim()
                .split_once(' ')
                .ok_or_else(|| SeriesError::Format(format!("bad term line `{line}`")))?;
            let exp = field(Some(exp), "exp")?;
            let exps: Result<Vec<u32>, _> = bracketed(exp)?.iter().map(|s| s.trim().parse()).collect();
            let exps = exps.map_err(|_| SeriesError::Format(format!("bad exponent `{exp}`")))?;
            if exps.len() != vars.len() {
                return Err(SeriesError::Format(format!("exponent `{exp}` has wrong length")));
            }
            let c: Scalar = field(Some(coeff), "coeff")?.parse()?;
            let e = Multiindex::from_slice(&exps);
            if c.is_zero() || e.degree() >= order || prev.as_ref().is_some_and(|p| p >= &e) {
                return Err(SeriesError::Format(format!("non-canonical term `{line}`")));
            }
            prev = Some(e.clone());
            terms.push((e, c));
        }
        Ok(Series::from_terms(&vars, terms, order))
    }

    pub fn from_record(text: &str) -> Result<Series, SeriesError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let s = Series::read_record(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(SeriesError::Format(format!("trailing content `{extra}`")));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let v = Vars::new(["w1", "zeta1", "xi"]);
        let s = Series::from_terms(
            &v,
            [
                (Multiindex::from_slice(&[1, 1, 0]), Scalar::from_int(2)),
                (Multiindex::from_slice(&[1, 0, 1]), Scalar::gauss(0, -1)),
                (Multiindex::from_slice(&[2, 2, 0]), Scalar::from_ratio(-3, 7)),
            ],
            9,
        );
        let txt = s.to_record();
        assert!(txt.starts_with("vars=[w1,zeta1,xi]\norder=9\nterms=3\nexp=[1,0,1] coeff=-1*i\n"));
        let back = Series::from_record(&txt).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_record(), txt);
    }

    #[test]
    fn rejects_unsorted() {
        let txt = "vars=[x]\norder=5\nterms=2\nexp=[2] coeff=1\nexp=[1] coeff=1\n";
        assert!(Series::from_record(txt).is_err());
    }
}
