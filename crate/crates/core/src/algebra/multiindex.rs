//! Exponent vectors with the graded-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// An exponent vector, one entry per variable.
///
/// Ordered graded-lexicographically: first by total degree, then by the
/// exponent vectors compared entrywise from the first variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Multiindex(SmallVec<[u16; 8]>);

impl Multiindex {
    pub fn zero(len: usize) -> Self {
        Multiindex(SmallVec::from_elem(0, len))
    }

    pub fn from_slice(e: &[u32]) -> Self {
        Multiindex(e.iter().map(|&x| x as u16).collect())
    }

    /// The unit vector `e_k` of the given length.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut m = Multiindex::zero(len);
        m.0[k] = 1;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> u32 {
        self.0[k] as u32
    }

    pub fn set(&mut self, k: usize, v: u32) {
        self.0[k] = v as u16;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&x| x as u32)
    }

    pub fn add(&self, o: &Multiindex) -> Multiindex {
        debug_assert_eq!(self.len(), o.len());
        Multiindex(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// Entrywise difference, `None` unless `o ≤ self` entrywise.
    pub fn checked_sub(&self, o: &Multiindex) -> Option<Multiindex> {
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(o.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Multiindex(out))
    }

    /// Entrywise `self ≤ o`.
    pub fn le_entrywise(&self, o: &Multiindex) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `β!` as an unsigned integer.
    pub fn factorial(&self) -> num_bigint::BigUint {
        self.iter().map(factorial).product()
    }

    /// Multinomial-type binomial `C(self, o) = Π C(self_k, o_k)`.
    pub fn binomial(&self, o: &Multiindex) -> num_bigint::BigUint {
        self.iter().zip(o.iter()).map(|(n, k)| binomial(n, k)).product()
    }

    /// All multiindices of the given length with degree in `lo..=hi`, in
    /// graded-lexicographic order.
    pub fn all_up_to(len: usize, lo: u32, hi: u32) -> Vec<Multiindex> {
        let mut out = Vec::new();
        for d in lo..=hi {
            out.extend(Multiindex::of_degree(len, d));
        }
        out
    }

    /// All multiindices of the given length and exact degree, ascending.
    pub fn of_degree(len: usize, d: u32) -> Vec<Multiindex> {
        fn rec(len: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Multiindex>) {
            if prefix.len() + 1 == len {
                prefix.push(d);
                out.push(Multiindex::from_slice(prefix));
                prefix.pop();
                return;
            }
            for k in 0..=d {
                prefix.push(k);
                rec(len, d - k, prefix, out);
                prefix.pop();
            }
        }
        if len == 0 {
            return if d == 0 { vec![Multiindex::zero(0)] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(len, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All entrywise-smaller-or-equal multiindices, ascending.
    pub fn divisors(&self) -> Vec<Multiindex> {
        let mut out = vec![Multiindex::zero(0)];
        for e in self.iter() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for p in &out {
                for k in 0..=e {
                    let mut q = p.clone();
                    q.0.push(k as u16);
                    next.push(q);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

pub(crate) fn factorial(n: u32) -> num_bigint::BigUint {
    (1..=n).map(num_bigint::BigUint::from).product()
}

pub(crate) fn binomial(n: u32, k: u32) -> num_bigint::BigUint {
    if k > n {
        return 0u32.into();
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigUint::from(1u32);
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

impl Ord for Multiindex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Multiindex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Multiindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Multiindex::from_slice(&[0, 2]);
        let b = Multiindex::from_slice(&[1, 1]);
        let c = Multiindex::from_slice(&[3, 0]);
        assert!(a < b);
        assert!(b < c);
        assert!(Multiindex::from_slice(&[5, 0]) < Multiindex::from_slice(&[0, 6]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Multiindex::of_degree(2, 3).len(), 4);
        assert_eq!(Multiindex::all_up_to(2, 1, 2).len(), 5);
        assert_eq!(Multiindex::from_slice(&[1, 2]).divisors().len(), 6);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10u32.into());
        let b = Multiindex::from_slice(&[2, 3]);
        assert_eq!(b.binomial(&Multiindex::from_slice(&[1, 1])), 6u32.into());
        assert_eq!(b.factorial(), 12u32.into());
    }
}
