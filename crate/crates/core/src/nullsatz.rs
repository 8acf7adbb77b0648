//! Polynomial trimming P/X by reduction against the monic axis polynomials
//! L_j = Π_{x̂∈X_j}(X_j − x̂), and the Combinatorial Nullstellensatz with an
//! explicit certificate P = P/X + Σ_j H_j·L_j.

use crate::error::{Error, Result};
use crate::gridcore::Grid;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::ring::RingElement;

/// The decomposition P = trimmed + Σ_j cofactors\[j\]·axis_polys\[j\] with
/// deg_j(trimmed) ≤ d_j and deg(cofactors\[j\]) ≤ deg(P) − |X_j|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub trimmed: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
    pub axis_polys: Vec<MultiPoly>,
}

impl Certificate {
    /// Recomputes trimmed + Σ H_j·L_j; equals the original input by
    /// construction.
    pub fn reconstruct(&self) -> Result<MultiPoly> {
        let mut acc = self.trimmed.clone();
        for (h, l) in self.cofactors.iter().zip(&self.axis_polys) {
            acc = acc.add(&h.mul(l)?)?;
        }
        Ok(acc)
    }
}

/// Result of the vanishing decision on an integral grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingOutcome {
    /// P|_X ≡ 0, certified by trimmed = 0.
    Vanishes(Certificate),
    /// A grid point where P does not vanish.
    NotVanishing(Vec<RingElement>),
}

/// Reduce P against the L_j until all partial degrees satisfy deg_j ≤ d_j.
/// The reduction always rewrites the lexicographically largest offending
/// monomial, at its smallest offending coordinate, so certificates are
/// deterministic.
pub fn trim(grid: &Grid, poly: &MultiPoly) -> Result<Certificate> {
    if poly.ring() != grid.ring() {
        return Err(Error::RingMismatch);
    }
    if poly.nvars() != grid.nvars() {
        return Err(Error::ArityMismatch {
            expected: grid.nvars(),
            got: poly.nvars(),
        });
    }
    let n = grid.nvars();
    let axis_polys: Vec<MultiPoly> = (0..n)
        .map(|j| grid.axis_polynomial(j))
        .collect::<Result<_>>()?;
    // R_j = X_j^{d_j+1} − L_j has degree ≤ d_j in X_j.
    let mut reducers = Vec::with_capacity(n);
    for (j, lj) in axis_polys.iter().enumerate() {
        let top = MultiPoly::monomial(
            grid.ring(),
            MultiIndex::axis(n, j, grid.d().get(j) + 1),
            grid.ring().one(),
        )?;
        reducers.push(top.sub(lj)?);
    }

    let mut work = poly.clone();
    let mut cofactors = vec![MultiPoly::zero(grid.ring(), n); n];
    loop {
        // Lexicographically largest monomial with some δ_j > d_j.
        let target = work
            .terms()
            .filter(|(delta, _)| (0..n).any(|j| delta.get(j) > grid.d().get(j)))
            .map(|(delta, coef)| (delta.clone(), coef.clone()))
            .last();
        let Some((delta, coef)) = target else { break };
        let j = (0..n)
            .find(|&j| delta.get(j) > grid.d().get(j))
            .expect("offending coordinate exists");
        // c·X^δ = c·X^{δ'}·L_j + c·X^{δ'}·R_j with δ' = δ − (d_j+1)e_j
        let mut shifted = delta.exponents().to_vec();
        shifted[j] -= grid.d().get(j) + 1;
        let quotient = MultiPoly::monomial(grid.ring(), MultiIndex::new(shifted), coef.clone())?;
        let replacement = quotient.mul(&reducers[j])?;
        work = work
            .sub(&MultiPoly::monomial(grid.ring(), delta, coef)?)?
            .add(&replacement)?;
        cofactors[j] = cofactors[j].add(&quotient)?;
    }

    Ok(Certificate {
        trimmed: work,
        cofactors,
        axis_polys,
    })
}

/// Decides P|_X ≡ 0 on an integral grid via the trimmed polynomial, returning
/// either the certificate or a witness point.
pub fn certify_vanishing(grid: &Grid, poly: &MultiPoly) -> Result<VanishingOutcome> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    let cert = trim(grid, poly)?;
    if cert.trimmed.is_zero() {
        return Ok(VanishingOutcome::Vanishes(cert));
    }
    // Trimmed ≠ 0 with partial degrees ≤ d on an integral grid means the
    // value table is not identically zero.
    for point in grid.points() {
        if !cert.trimmed.evaluate(&point)?.is_zero() {
            return Ok(VanishingOutcome::NotVanishing(point));
        }
    }
    Err(Error::TheoremViolated(
        "trimmed ≠ 0 on an integral grid but no nonzero point found".into(),
    ))
}

/// Executable check of (P/X)_e = P_e for d-leading e.
pub fn check_dleading_preserved(grid: &Grid, poly: &MultiPoly, e: &MultiIndex) -> Result<bool> {
    let report = crate::coefficient::is_d_leading(poly, e, grid.d())?;
    if !report.is_leading {
        return Err(Error::NotDLeading {
            witness: report.witness.unwrap().exponents().to_vec(),
        });
    }
    let cert = trim(grid, poly)?;
    Ok(cert.trimmed.coefficient(e) == poly.coefficient(e))
}

/// Degree-bound audit for a certificate against its source polynomial:
/// deg_j(trimmed) ≤ d_j and deg(H_j) ≤ deg(P) − |X_j|.
pub fn certificate_bounds_hold(grid: &Grid, poly: &MultiPoly, cert: &Certificate) -> bool {
    for j in 0..grid.nvars() {
        if cert
            .trimmed
            .partial_degree(j)
            .is_some_and(|deg| deg > grid.d().get(j))
        {
            return false;
        }
        let axis_size = grid.d().get(j) as u64 + 1;
        let bound = poly.total_degree().map(|deg| deg.saturating_sub(axis_size));
        match (cert.cofactors[j].total_degree(), bound) {
            (None, _) => {}
            (Some(_), None) => return false,
            (Some(hd), Some(b)) => {
                if hd > b {
                    return false;
                }
            }
        }
    }
    true
}
