//! Exact handling of the N(x)^{-1} factors that appear in the interpolation
//! and coefficient formulas. Over a finite ring the factors are unit inverses;
//! over ℤ they are bookkept as reduced rationals and the final results are
//! required to be integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gridcore::Grid;
use crate::ring::{Ring, RingElement};

/// Per-point N(x)^{-1} in a form that can be summed exactly.
pub(crate) enum NInverses {
    Units(Vec<RingElement>),
    Rationals(Vec<BigRational>),
}

pub(crate) fn n_inverses(grid: &Grid) -> Result<NInverses> {
    match grid.ring() {
        Ring::Integers => {
            let mut out = Vec::with_capacity(grid.num_points());
            for idx in 0..grid.num_points() {
                let n = grid.n_at(idx).as_bigint().expect("ℤ grid").clone();
                if n.is_zero() {
                    return Err(Error::Precondition("N(x) = 0 on the grid".into()));
                }
                out.push(BigRational::new(BigInt::one(), n));
            }
            Ok(NInverses::Rationals(out))
        }
        _ => {
            let mut out = Vec::with_capacity(grid.num_points());
            for idx in 0..grid.num_points() {
                let inv = grid.n_at(idx).try_invert().ok_or_else(|| {
                    Error::Precondition(format!(
                        "N(x) = {} is not invertible; grid not integral",
                        grid.n_at(idx)
                    ))
                })?;
                out.push(inv);
            }
            Ok(NInverses::Units(out))
        }
    }
}

/// Accumulator for sums Σ_x w(x)·N(x)^{-1} with ring-element weights w(x).
pub(crate) enum NInvSum {
    Ring(RingElement),
    Rational(Ring, BigRational),
}

impl NInvSum {
    pub fn new(ring: &Ring) -> NInvSum {
        match ring {
            Ring::Integers => NInvSum::Rational(ring.clone(), BigRational::zero()),
            _ => NInvSum::Ring(ring.zero()),
        }
    }

    pub fn add(&mut self, inverses: &NInverses, idx: usize, weight: &RingElement) -> Result<()> {
        match (self, inverses) {
            (NInvSum::Ring(acc), NInverses::Units(inv)) => {
                *acc = acc.add(&inv[idx].mul(weight)?)?;
                Ok(())
            }
            (NInvSum::Rational(_, acc), NInverses::Rationals(inv)) => {
                let w = weight.as_bigint().expect("ℤ weight").clone();
                *acc += &inv[idx] * BigRational::from_integer(w);
                Ok(())
            }
            _ => Err(Error::RingMismatch),
        }
    }

    /// True when the accumulated value is nonzero (exact, also mid-sum).
    pub fn is_nonzero(&self) -> bool {
        match self {
            NInvSum::Ring(acc) => !acc.is_zero(),
            NInvSum::Rational(_, acc) => !acc.is_zero(),
        }
    }

    /// The accumulated value as a ring element; over ℤ this asserts that the
    /// rational total is an integer.
    pub fn finish(self) -> Result<RingElement> {
        match self {
            NInvSum::Ring(acc) => Ok(acc),
            NInvSum::Rational(ring, acc) => {
                if !acc.denom().is_one() {
                    return Err(Error::DivisionFailed(format!(
                        "sum Σ N(x)^{{-1}}·w(x) = {acc} is not an integer"
                    )));
                }
                Ok(ring.from_bigint(acc.numer()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_sums_must_be_integral() {
        let ring = Ring::integers();
        let axis = vec![ring.integer(0), ring.integer(1), ring.integer(2)];
        let grid = Grid::new(&ring, vec![axis]).unwrap();
        let inv = n_inverses(&grid).unwrap();
        // Σ N^{-1}·1 over {0,1,2} is 1/2 − 1 + 1/2 = 0, an integer.
        let mut sum = NInvSum::new(&ring);
        for idx in 0..grid.num_points() {
            sum.add(&inv, idx, &ring.one()).unwrap();
        }
        assert_eq!(sum.finish().unwrap(), ring.zero());
        // A partial sum (1/2) is not.
        let mut sum = NInvSum::new(&ring);
        sum.add(&inv, 0, &ring.one()).unwrap();
        assert!(matches!(sum.finish(), Err(Error::DivisionFailed(_))));
    }

    #[test]
    fn finite_ring_units() {
        let ring = Ring::integers_mod(5).unwrap();
        let axis: Vec<_> = (0..5).map(|v| ring.integer(v)).collect();
        let grid = Grid::new(&ring, vec![axis]).unwrap();
        let inv = n_inverses(&grid).unwrap();
        match inv {
            NInverses::Units(v) => {
                for (idx, u) in v.iter().enumerate() {
                    assert!(grid.n_at(idx).mul(u).unwrap().is_one());
                }
            }
            _ => panic!("expected unit inverses"),
        }
    }
}
