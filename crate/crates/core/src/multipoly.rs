//! Sparse multivariate polynomials P = Σ_δ P_δ X^δ over a [`Ring`], stored as
//! an exponent-vector → coefficient map with no zero coefficients and a
//! deterministic (lexicographic) term order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

/// Exponent vector of fixed length n; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> MultiIndex {
        MultiIndex(exponents)
    }

    pub fn zeros(n: usize) -> MultiIndex {
        MultiIndex(vec![0; n])
    }

    /// The j-th unit vector scaled by e.
    pub fn axis(n: usize, j: usize, e: u32) -> MultiIndex {
        let mut v = vec![0; n];
        v[j] = e;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Σδ, the total degree of the monomial.
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise partial order δ ≤ d.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<MultiIndex, RingElement>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring, nvars: usize) -> MultiPoly {
        MultiPoly {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, nvars: usize, value: RingElement) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(ring, nvars);
        if value.ring() != ring {
            return Err(Error::RingMismatch);
        }
        p.insert_add(MultiIndex::zeros(nvars), value)?;
        Ok(p)
    }

    /// The variable X_j (0-based).
    pub fn variable(ring: &Ring, nvars: usize, j: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(ring, nvars);
        p.insert_add(MultiIndex::axis(nvars, j, 1), ring.one())
            .expect("one is in the ring");
        p
    }

    pub fn monomial(ring: &Ring, exp: MultiIndex, coef: RingElement) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(ring, exp.len());
        if coef.ring() != ring {
            return Err(Error::RingMismatch);
        }
        p.insert_add(exp, coef)?;
        Ok(p)
    }

    pub fn from_terms(
        ring: &Ring,
        nvars: usize,
        terms: impl IntoIterator<Item = (MultiIndex, RingElement)>,
    ) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(ring, nvars);
        for (exp, coef) in terms {
            if coef.ring() != ring {
                return Err(Error::RingMismatch);
            }
            p.insert_add(exp, coef)?;
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RingElement)> {
        self.terms.iter()
    }

    /// Adds `coef`·X^`exp` into the map, keeping the sparse canonical form.
    fn insert_add(&mut self, exp: MultiIndex, coef: RingElement) -> Result<()> {
        if exp.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: exp.len(),
            });
        }
        if coef.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, coef);
            }
            Some(old) => {
                let sum = old.add(&coef)?;
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (exp, coef) in &other.terms {
            out.insert_add(exp.clone(), coef.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RingElement) -> Result<MultiPoly> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = MultiPoly::zero(&self.ring, self.nvars);
        for (exp, coef) in &self.terms {
            out.insert_add(exp.clone(), coef.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(&self.ring, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = MultiIndex::new(
                    ea.exponents()
                        .iter()
                        .zip(eb.exponents())
                        .map(|(x, y)| x + y)
                        .collect(),
                );
                out.insert_add(exp, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<MultiPoly> {
        let mut acc = MultiPoly::constant(&self.ring, self.nvars, self.ring.one())?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The stored coefficient P_δ, or 0.
    pub fn coefficient(&self, exp: &MultiIndex) -> RingElement {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// max Σδ over stored terms; None is the degree -∞ of the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.sum()).max()
    }

    /// max δ_j over stored terms; None for the zero polynomial.
    pub fn partial_degree(&self, j: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(j)).max()
    }

    /// Exact value Σ P_δ x^δ.
    pub fn evaluate(&self, point: &[RingElement]) -> Result<RingElement> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        for x in point {
            if x.ring() != &self.ring {
                return Err(Error::RingMismatch);
            }
        }
        // Power tables per variable up to the partial degree actually used.
        let mut powers: Vec<Vec<RingElement>> = Vec::with_capacity(self.nvars);
        for (j, x) in point.iter().enumerate() {
            let maxdeg = self.partial_degree(j).unwrap_or(0) as usize;
            let mut tab = Vec::with_capacity(maxdeg + 1);
            tab.push(self.ring.one());
            for _ in 0..maxdeg {
                tab.push(tab.last().unwrap().mul(x)?);
            }
            powers.push(tab);
        }
        let mut acc = self.ring.zero();
        for (exp, coef) in &self.terms {
            let mut term = coef.clone();
            for (j, &e) in exp.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// The substitution X_j := X_j + c, expanded binomially.
    pub fn substitute_shift(&self, j: usize, c: &RingElement) -> Result<MultiPoly> {
        if j >= self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: j + 1,
            });
        }
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if c.is_zero() {
            return Ok(self.clone());
        }
        let mut out = MultiPoly::zero(&self.ring, self.nvars);
        for (exp, coef) in &self.terms {
            let e = exp.get(j);
            // (X_j + c)^e = Σ_i binom(e, i) c^{e-i} X_j^i
            let mut c_pow = self.ring.one();
            let mut shifted: Vec<(u32, RingElement)> = Vec::with_capacity(e as usize + 1);
            for i in (0..=e).rev() {
                let binom = binomial_bigint(e as u64, i as u64);
                let w = self.ring.from_bigint(&binom).mul(&c_pow)?;
                shifted.push((i, w));
                c_pow = c_pow.mul(c)?;
            }
            for (i, w) in shifted {
                let mut v = exp.exponents().to_vec();
                v[j] = i;
                out.insert_add(MultiIndex::new(v), coef.mul(&w)?)?;
            }
        }
        Ok(out)
    }
}

pub fn binomial_bigint(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial_bigint(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coef) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if exp.sum() == 0 {
                write!(f, "{coef}")?;
                continue;
            }
            if !coef.is_one() {
                write!(f, "{coef}·")?;
            }
            let mut started = false;
            for (j, &e) in exp.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if started {
                    write!(f, "·")?;
                }
                started = true;
                if e == 1 {
                    write!(f, "X{}", j + 1)?;
                } else {
                    write!(f, "X{}^{}", j + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn product_of_sum_and_difference() {
        let r = z();
        let x1 = MultiPoly::variable(&r, 2, 0);
        let x2 = MultiPoly::variable(&r, 2, 1);
        let p = x1.add(&x2).unwrap().mul(&x1.sub(&x2).unwrap()).unwrap();
        let expected = MultiPoly::from_terms(
            &r,
            2,
            [(mi(&[2, 0]), r.integer(1)), (mi(&[0, 2]), r.integer(-1))],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn char_two_square() {
        let r = Ring::integers_mod(2).unwrap();
        let x1 = MultiPoly::variable(&r, 1, 0);
        let one = MultiPoly::constant(&r, 1, r.one()).unwrap();
        let p = x1.add(&one).unwrap();
        let sq = p.mul(&p).unwrap();
        let expected =
            MultiPoly::from_terms(&r, 1, [(mi(&[2]), r.one()), (mi(&[0]), r.one())]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn scale_by_zero_gives_empty_map() {
        let r = z();
        let x1x2 = MultiPoly::monomial(&r, mi(&[1, 1]), r.integer(1)).unwrap();
        let scaled = x1x2.scale(&r.zero()).unwrap();
        assert!(scaled.is_zero());
        assert_eq!(scaled.num_terms(), 0);
    }

    #[test]
    fn evaluate_examples() {
        // X1X2 + 1 over ℤ_5 at (2,3) = 7 ≡ 2
        let r5 = Ring::integers_mod(5).unwrap();
        let p = MultiPoly::from_terms(&r5, 2, [(mi(&[1, 1]), r5.one()), (mi(&[0, 0]), r5.one())])
            .unwrap();
        assert_eq!(
            p.evaluate(&[r5.integer(2), r5.integer(3)]).unwrap(),
            r5.integer(2)
        );

        // X³+X+2 over ℤ_4 at 1 = 4 ≡ 0
        let r4 = Ring::integers_mod(4).unwrap();
        let q = MultiPoly::from_terms(
            &r4,
            1,
            [
                (mi(&[3]), r4.one()),
                (mi(&[1]), r4.one()),
                (mi(&[0]), r4.integer(2)),
            ],
        )
        .unwrap();
        assert_eq!(q.evaluate(&[r4.integer(1)]).unwrap(), r4.zero());

        let zero = MultiPoly::zero(&r4, 1);
        assert_eq!(zero.evaluate(&[r4.integer(3)]).unwrap(), r4.zero());
    }

    #[test]
    fn coefficient_queries() {
        let r = z();
        let p = MultiPoly::monomial(&r, mi(&[2, 1]), r.integer(3)).unwrap();
        assert_eq!(p.coefficient(&mi(&[2, 1])), r.integer(3));
        assert_eq!(p.coefficient(&mi(&[0, 0])), r.zero());
        let x1 = MultiPoly::variable(&r, 2, 0);
        let x2 = MultiPoly::variable(&r, 2, 1);
        let sq = x1.add(&x2).unwrap().pow(2).unwrap();
        assert_eq!(sq.coefficient(&mi(&[1, 1])), r.integer(2));
    }

    #[test]
    fn degree_queries() {
        let r = z();
        let p =
            MultiPoly::from_terms(&r, 2, [(mi(&[2, 1]), r.one()), (mi(&[0, 3]), r.one())]).unwrap();
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.partial_degree(0), Some(2));
        assert_eq!(p.partial_degree(1), Some(3));
        let c = MultiPoly::constant(&r, 2, r.integer(5)).unwrap();
        assert_eq!(c.total_degree(), Some(0));
        assert_eq!(MultiPoly::zero(&r, 2).total_degree(), None);
        assert_eq!(MultiPoly::zero(&r, 2).partial_degree(0), None);
    }

    #[test]
    fn shift_examples() {
        let r = z();
        let x1 = MultiPoly::variable(&r, 1, 0);
        let p = x1.pow(2).unwrap();
        let shifted = p.substitute_shift(0, &r.integer(1)).unwrap();
        let expected = MultiPoly::from_terms(
            &r,
            1,
            [
                (mi(&[2]), r.one()),
                (mi(&[1]), r.integer(2)),
                (mi(&[0]), r.one()),
            ],
        )
        .unwrap();
        assert_eq!(shifted, expected);

        let x1 = MultiPoly::variable(&r, 2, 0);
        let x2 = MultiPoly::variable(&r, 2, 1);
        let p = x1.add(&x2).unwrap();
        let shifted = p.substitute_shift(1, &r.integer(-1)).unwrap();
        let expected = MultiPoly::from_terms(
            &r,
            2,
            [
                (mi(&[1, 0]), r.one()),
                (mi(&[0, 1]), r.one()),
                (mi(&[0, 0]), r.integer(-1)),
            ],
        )
        .unwrap();
        assert_eq!(shifted, expected);

        assert_eq!(p.substitute_shift(0, &r.zero()).unwrap(), p);
    }

    #[test]
    fn shift_round_trip() {
        let r = Ring::integers_mod(12).unwrap();
        let p = MultiPoly::from_terms(
            &r,
            2,
            [
                (mi(&[3, 1]), r.integer(5)),
                (mi(&[1, 2]), r.integer(7)),
                (mi(&[0, 0]), r.integer(11)),
            ],
        )
        .unwrap();
        let c = r.integer(5);
        let back = p
            .substitute_shift(0, &c)
            .unwrap()
            .substitute_shift(0, &c.neg())
            .unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn add_neg_cancels_exactly() {
        let r = z();
        let p = MultiPoly::from_terms(
            &r,
            3,
            [
                (mi(&[1, 0, 2]), r.integer(4)),
                (mi(&[0, 1, 0]), r.integer(-9)),
            ],
        )
        .unwrap();
        let sum = p.add(&p.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn mismatch_errors() {
        let p = MultiPoly::variable(&z(), 2, 0);
        let q = MultiPoly::variable(&Ring::integers_mod(5).unwrap(), 2, 0);
        assert_eq!(p.add(&q), Err(Error::RingMismatch));
        let w = MultiPoly::variable(&z(), 3, 0);
        assert!(matches!(p.add(&w), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            p.evaluate(&[z().integer(1)]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
