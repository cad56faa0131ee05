//! Exact linear algebra over scalars, truncated series, and univariate
//! truncated polynomials with precision tracking.

use std::collections::HashMap;

use super::{Scalar, Series, SeriesError, Vars};

/// Reduces `m` to reduced row-echelon form in place and returns the pivot
/// columns.
pub fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Scalar>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Determinant by Gaussian elimination over ℚ(i).
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            #[allow(clippy::needless_range_loop)] // rows i and c of the same matrix
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= &t;
            }
        }
    }
    d
}

/// A basis of the right kernel `{x : m·x = 0}`, one vector per free
/// column in increasing column order.
pub fn kernel(m: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Scalar::zero(); cols];
        x[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -&a[r][free];
        }
        out.push(x);
    }
    out
}

/// Determinant of a square matrix of series by Laplace expansion along rows
/// with memoization over column subsets.
pub fn series_det(m: &[Vec<Series>], vars: &Vars, order: u32) -> Series {
    let n = m.len();
    if n == 0 {
        return Series::one(vars, order);
    }
    assert!(n <= 20, "Laplace expansion limited to 20x20");
    let mut memo: HashMap<u32, Series> = HashMap::new();
    fn rec(m: &[Vec<Series>], row: usize, cols: u32, memo: &mut HashMap<u32, Series>) -> Series {
        if row + 1 == m.len() {
            let c = cols.trailing_zeros() as usize;
            return m[row][c].clone();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc: Option<Series> = None;
        let mut sign = true;
        for c in (0..m.len()).filter(|c| cols & (1 << c) != 0) {
            let entry = &m[row][c];
            // Zero entries still carry an unknown tail, so they take part
            // in the order bookkeeping.
            let minor = rec(m, row + 1, cols & !(1 << c), memo);
            let term = entry * &minor;
            let term = if sign { term } else { -&term };
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
            sign = !sign;
        }
        let out = acc.expect("nonempty column set");
        memo.insert(cols, out.clone());
        out
    }
    rec(m, 0, (1u32 << n) - 1, &mut memo)
}

/// Solves `a·x = b` over truncated series where `a(0)` is invertible, by
/// Gaussian elimination pivoting on entries with nonzero constant term.
pub fn solve_unit_system(a: &[Vec<Series>], b: &[Series]) -> Result<Vec<Series>, SeriesError> {
    let n = a.len();
    let mut m: Vec<Vec<Series>> = a.to_vec();
    let mut rhs: Vec<Series> = b.to_vec();
    let mut pivrow = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for c in 0..n {
        let p = (0..n)
            .find(|&i| !used[i] && !m[i][c].constant_term().is_zero())
            .ok_or(SeriesError::NotInvertible)?;
        used[p] = true;
        pivrow.push(p);
        let inv = m[p][c].reciprocal()?;
        for i in 0..n {
            if i == p || m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            #[allow(clippy::needless_range_loop)] // rows i and p of the same matrix
            for j in c..n {
                let t = &f * &m[p][j];
                m[i][j] = &m[i][j] - &t;
            }
            let t = &f * &rhs[p];
            rhs[i] = &rhs[i] - &t;
        }
    }
    Ok((0..n)
        .map(|c| &rhs[pivrow[c]] * &m[pivrow[c]][c].reciprocal().expect("unit pivot"))
        .collect())
}

/// A univariate truncated power series `Σ_{k<prec} c_k s^k`; `prec = 0`
/// means nothing is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    pub coeffs: Vec<Scalar>,
}

impl TruncPoly {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        TruncPoly { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Index of the first known nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn val_or_prec(&self) -> usize {
        self.valuation().unwrap_or(self.prec())
    }

    pub fn is_certified_nonzero(&self) -> bool {
        self.valuation().is_some()
    }

    pub fn mul(&self, o: &TruncPoly) -> TruncPoly {
        let prec = (self.prec() + o.val_or_prec()).min(o.prec() + self.val_or_prec());
        let mut c = vec![Scalar::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= prec {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        TruncPoly::new(c)
    }

    pub fn add(&self, o: &TruncPoly) -> TruncPoly {
        let prec = self.prec().min(o.prec());
        TruncPoly::new((0..prec).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect())
    }

    pub fn neg(&self) -> TruncPoly {
        TruncPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &TruncPoly) -> TruncPoly {
        self.add(&o.neg())
    }

    /// `self / p` where `p` has valuation `v` and `self` is divisible by
    /// `s^v` on its known part.
    pub fn div(&self, p: &TruncPoly) -> TruncPoly {
        let v = p.valuation().expect("pivot must be certified nonzero");
        if self.prec() <= v {
            return TruncPoly::new(Vec::new());
        }
        debug_assert!(self.coeffs[..v].iter().all(Scalar::is_zero));
        let a: Vec<Scalar> = self.coeffs[v..].to_vec();
        let u: Vec<Scalar> = p.coeffs[v..].to_vec();
        let prec = a.len().min(u.len());
        let u0inv = u[0].inv().expect("unit");
        let mut q: Vec<Scalar> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut t = a[k].clone();
            for j in 1..=k {
                if j < u.len() && !u[j].is_zero() {
                    t -= &(&u[j] * &q[k - j]);
                }
            }
            q.push(&t * &u0inv);
        }
        TruncPoly::new(q)
    }
}

/// Outcome of precision-tracked elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationResult {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Gaussian elimination over `ℂ[[s]]` with full pivoting on minimal
/// valuation; returns the pivot rows and columns in pivot order.
pub fn eliminate_trunc(m: &[Vec<TruncPoly>]) -> EliminationResult {
    let nr = m.len();
    let nc = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let mut row_live = vec![true; nr];
    let mut col_live = vec![true; nc];
    let mut res = EliminationResult {
        rows: Vec::new(),
        cols: Vec::new(),
    };
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in (0..nr).filter(|&i| row_live[i]) {
            for j in (0..nc).filter(|&j| col_live[j]) {
                if let Some(v) = a[i][j].valuation() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        row_live[pi] = false;
        col_live[pj] = false;
        res.rows.push(pi);
        res.cols.push(pj);
        let pivot = a[pi][pj].clone();
        for i in (0..nr).filter(|&i| row_live[i]) {
            let f = a[i][pj].div(&pivot);
            for j in (0..nc).filter(|&j| col_live[j]) {
                let t = f.mul(&a[pi][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    res
}

/// Determinant of a square matrix of univariate truncated series by Laplace
/// expansion, with precision propagated by the product/sum rules.
pub fn trunc_det(m: &[Vec<TruncPoly>]) -> TruncPoly {
    let n = m.len();
    if n == 0 {
        return TruncPoly::new(vec![Scalar::one(); 1]);
    }
    let mut memo: HashMap<u32, TruncPoly> = HashMap::new();
    fn rec(m: &[Vec<TruncPoly>], row: usize, cols: u32, memo: &mut HashMap<u32, TruncPoly>) -> TruncPoly {
        if row + 1 == m.len() {
            return m[row][cols.trailing_zeros() as usize].clone();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc: Option<TruncPoly> = None;
        let mut sign = true;
        for c in (0..m.len()).filter(|c| cols & (1 << c) != 0) {
            let minor = rec(m, row + 1, cols & !(1 << c), memo);
            let term = m[row][c].mul(&minor);
            let term = if sign { term } else { term.neg() };
            acc = Some(match acc {
                Some(a) => a.add(&term),
                None => term,
            });
            sign = !sign;
        }
        let out = acc.expect("nonempty");
        memo.insert(cols, out.clone());
        out
    }
    rec(m, 0, (1u32 << n) - 1, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            let r: Scalar = (0..3).fold(Scalar::zero(), |acc, j| acc + &(&m[0][j] * &x[j]));
            assert!(r.is_zero());
        }
    }

    #[test]
    fn determinant() {
        let m = vec![vec![s(2), s(1)], vec![s(7), s(4)]];
        assert_eq!(det(&m), s(1));
        assert_eq!(det(&[vec![s(0), s(1)], vec![s(1), s(0)]]), s(-1));
    }

    #[test]
    fn trunc_elimination_rank() {
        // [[s, s^2], [1, s]] has determinant 0.
        let p = |c: &[i64]| TruncPoly::new(c.iter().map(|&x| s(x)).collect());
        let m = vec![
            vec![p(&[0, 1, 0, 0]), p(&[0, 0, 1, 0])],
            vec![p(&[1, 0, 0, 0]), p(&[0, 1, 0, 0])],
        ];
        let r = eliminate_trunc(&m);
        assert_eq!(r.rows.len(), 1);
        assert!(!trunc_det(&m).is_certified_nonzero());
        let m2 = vec![
            vec![p(&[0, 1, 0, 0]), p(&[1, 0, 0, 0])],
            vec![p(&[1, 0, 0, 0]), p(&[0, 1, 0, 0])],
        ];
        assert_eq!(eliminate_trunc(&m2).rows.len(), 2);
        assert!(trunc_det(&m2).is_certified_nonzero());
    }
}
