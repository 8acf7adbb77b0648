//! d-leading multiindices and the coefficient formulas: P_e as the
//! ψ-weighted grid sum, P_d as the plain N^{-1}-weighted sum, and the
//! second-nonzero and Chevalley–Warning style consequences.

use crate::error::{Error, Result};
use crate::exact::{n_inverses, NInvSum};
use crate::gridcore::Grid;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::ring::RingElement;

/// Outcome of the d-leading test. `witness` is a monomial of P that defeats
/// both cases of the definition; it is present exactly when `is_leading` is
/// false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DLeadingReport {
    pub e: MultiIndex,
    pub is_leading: bool,
    pub witness: Option<MultiIndex>,
}

/// e ≤ d is d-leading in P when every monomial δ of P either equals e or has
/// some coordinate j with δ_j ≠ e_j and δ_j ≤ d_j.
pub fn is_d_leading(poly: &MultiPoly, e: &MultiIndex, d: &MultiIndex) -> Result<DLeadingReport> {
    if e.len() != poly.nvars() || d.len() != poly.nvars() {
        return Err(Error::ArityMismatch {
            expected: poly.nvars(),
            got: e.len().max(d.len()),
        });
    }
    if !e.le(d) {
        return Err(Error::Precondition("e ≤ d must hold componentwise".into()));
    }
    for (delta, _) in poly.terms() {
        if delta == e {
            continue;
        }
        let case2 = (0..poly.nvars()).any(|j| delta.get(j) != e.get(j) && delta.get(j) <= d.get(j));
        if !case2 {
            return Ok(DLeadingReport {
                e: e.clone(),
                is_leading: false,
                witness: Some(delta.clone()),
            });
        }
    }
    Ok(DLeadingReport {
        e: e.clone(),
        is_leading: true,
        witness: None,
    })
}

/// P_e = Σ_{x∈X} ψ_{e,x}·N(x)^{-1}·P(x) for a d-leading multiindex e on an
/// integral grid. No degree restriction beyond d-leading.
pub fn coeff_formula_general(grid: &Grid, poly: &MultiPoly, e: &MultiIndex) -> Result<RingElement> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    check_poly_on_grid(grid, poly)?;
    let report = is_d_leading(poly, e, grid.d())?;
    if !report.is_leading {
        return Err(Error::NotDLeading {
            witness: report.witness.unwrap().exponents().to_vec(),
        });
    }
    let inverses = n_inverses(grid)?;
    let mut sum = NInvSum::new(grid.ring());
    for (idx, point) in grid.points().enumerate() {
        let value = poly.evaluate(&point)?;
        if value.is_zero() {
            continue;
        }
        let w = grid.psi(e, idx)?.mul(&value)?;
        sum.add(&inverses, idx, &w)?;
    }
    sum.finish()
}

/// P_d = Σ_{x∈X} N(x)^{-1}·P(x) for deg(P) ≤ Σd on an integral grid.
pub fn coeff_formula_main(grid: &Grid, poly: &MultiPoly) -> Result<RingElement> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    check_poly_on_grid(grid, poly)?;
    if poly.total_degree().is_some_and(|deg| deg > grid.sum_d()) {
        return Err(Error::DegreeTooLarge(format!(
            "degree exceeds Σd = {}",
            grid.sum_d()
        )));
    }
    let inverses = n_inverses(grid)?;
    let mut sum = NInvSum::new(grid.ring());
    for (idx, point) in grid.points().enumerate() {
        let value = poly.evaluate(&point)?;
        if value.is_zero() {
            continue;
        }
        sum.add(&inverses, idx, &value)?;
    }
    sum.finish()
}

/// Under P_d ≠ 0 and deg(P) ≤ Σd on an integral grid, P does not vanish on X;
/// returns the first nonzero in lexicographic scan order.
pub fn nonzero_exists(grid: &Grid, poly: &MultiPoly) -> Result<Vec<RingElement>> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    check_poly_on_grid(grid, poly)?;
    if poly.total_degree().is_none_or(|deg| deg > grid.sum_d()) {
        return Err(Error::DegreeTooLarge(format!(
            "degree must satisfy deg(P) ≤ Σd = {}",
            grid.sum_d()
        )));
    }
    if poly.coefficient(grid.d()).is_zero() {
        return Err(Error::Precondition(
            "coefficient P_d must be nonzero".into(),
        ));
    }
    for point in grid.points() {
        if !poly.evaluate(&point)?.is_zero() {
            return Ok(point);
        }
    }
    Err(Error::TheoremViolated(
        "P_d ≠ 0 with deg(P) ≤ Σd, but P vanishes on the whole grid".into(),
    ))
}

/// With vanishing d-leading coefficient — d must be d-leading in P and
/// P_d = 0, both implied by deg(P) < Σd — a polynomial cannot have exactly
/// one nonzero on an integral grid; given one nonzero x0, finds another.
pub fn second_nonzero(
    grid: &Grid,
    poly: &MultiPoly,
    x0: &[RingElement],
) -> Result<Vec<RingElement>> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    check_poly_on_grid(grid, poly)?;
    if !poly.coefficient(grid.d()).is_zero() {
        return Err(Error::Precondition(
            "need deg(P) < Σd or a vanishing d-leading coefficient P_d".into(),
        ));
    }
    if !is_d_leading(poly, grid.d(), grid.d())?.is_leading {
        return Err(Error::Precondition(
            "d is not d-leading in P, so the second-nonzero theorem does not apply".into(),
        ));
    }
    let idx0 = grid.index_of_point(x0)?;
    if poly.evaluate(x0)?.is_zero() {
        return Err(Error::Precondition("P(x0) must be nonzero".into()));
    }
    for (idx, point) in grid.points().enumerate() {
        if idx != idx0 && !poly.evaluate(&point)?.is_zero() {
            return Ok(point);
        }
    }
    Err(Error::TheoremViolated(
        "P_d = 0 yet P has exactly one nonzero on the grid".into(),
    ))
}

/// Exact count of common zeros of the system on a grid over F_{p^k}, under
/// the degree condition (p^k − 1)·Σ deg(P_i) < Σd; the count is never 1.
pub fn cw_variant_count(grid: &Grid, polys: &[MultiPoly]) -> Result<u64> {
    let (p, k) = grid
        .ring()
        .field_order()
        .ok_or_else(|| Error::Precondition("grid ring must be a finite field".into()))?;
    let q: u64 = p.pow(k as u32);
    let mut degree_sum: u64 = 0;
    for poly in polys {
        check_poly_on_grid(grid, poly)?;
        degree_sum += poly.total_degree().unwrap_or(0);
    }
    if (q - 1) * degree_sum >= grid.sum_d() {
        return Err(Error::DegreeTooLarge(format!(
            "(q−1)·Σdeg = {} must be < Σd = {}",
            (q - 1) * degree_sum,
            grid.sum_d()
        )));
    }
    let mut count = 0u64;
    for point in grid.points() {
        let mut all_zero = true;
        for poly in polys {
            if !poly.evaluate(&point)?.is_zero() {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            count += 1;
        }
    }
    if count == 1 {
        return Err(Error::TheoremViolated(
            "common-zero count is exactly 1 under the degree condition".into(),
        ));
    }
    Ok(count)
}

fn check_poly_on_grid(grid: &Grid, poly: &MultiPoly) -> Result<()> {
    if poly.ring() != grid.ring() {
        return Err(Error::RingMismatch);
    }
    if poly.nvars() != grid.nvars() {
        return Err(Error::ArityMismatch {
            expected: grid.nvars(),
            got: poly.nvars(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z() -> Ring {
        Ring::integers()
    }
    fn zm(m: u64) -> Ring {
        Ring::integers_mod(m).unwrap()
    }
    fn ints(ring: &Ring, vals: &[i64]) -> Vec<RingElement> {
        vals.iter().map(|&v| ring.integer(v)).collect()
    }
    fn grid(ring: &Ring, axes: &[&[i64]]) -> Grid {
        Grid::new(ring, axes.iter().map(|a| ints(ring, a)).collect()).unwrap()
    }
    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn d_is_leading_for_degree_bounded_polys() {
        let r = z();
        let d = mi(&[2, 1]);
        // X1²X2 + X1³ has degree 3 ≤ Σd = 3
        let p =
            MultiPoly::from_terms(&r, 2, [(mi(&[2, 1]), r.one()), (mi(&[3, 0]), r.one())]).unwrap();
        let rep = is_d_leading(&p, &d, &d).unwrap();
        assert!(rep.is_leading);
    }

    #[test]
    fn d_leading_witness() {
        let r = z();
        let p = MultiPoly::monomial(&r, mi(&[3, 0]), r.one()).unwrap();
        let rep = is_d_leading(&p, &mi(&[1, 0]), &mi(&[1, 1])).unwrap();
        assert!(!rep.is_leading);
        assert_eq!(rep.witness, Some(mi(&[3, 0])));
    }

    #[test]
    fn d_leading_requires_e_below_d() {
        let r = z();
        let p = MultiPoly::variable(&r, 2, 0);
        assert!(is_d_leading(&p, &mi(&[2, 0]), &mi(&[1, 1])).is_err());
    }

    #[test]
    fn all_indices_leading_when_partial_degrees_bounded() {
        let r = zm(5);
        let d = mi(&[2, 2]);
        let p = MultiPoly::from_terms(
            &r,
            2,
            [
                (mi(&[2, 2]), r.one()),
                (mi(&[1, 0]), r.integer(3)),
                (mi(&[0, 2]), r.integer(4)),
            ],
        )
        .unwrap();
        for e0 in 0..=2u32 {
            for e1 in 0..=2u32 {
                assert!(is_d_leading(&p, &mi(&[e0, e1]), &d).unwrap().is_leading);
            }
        }
    }

    #[test]
    fn general_formula_example() {
        // P = X1²X2 + X1³ on {0,1,2}×{0,1} ⊂ ℤ, e = (2,1) → 1
        let g = grid(&z(), &[&[0, 1, 2], &[0, 1]]);
        let p = MultiPoly::from_terms(
            &z(),
            2,
            [(mi(&[2, 1]), z().one()), (mi(&[3, 0]), z().one())],
        )
        .unwrap();
        assert_eq!(
            coeff_formula_general(&g, &p, &mi(&[2, 1])).unwrap(),
            z().integer(1)
        );
        // zero polynomial → 0 for any e ≤ d
        let zero = MultiPoly::zero(&z(), 2);
        assert_eq!(
            coeff_formula_general(&g, &zero, &mi(&[1, 1])).unwrap(),
            z().zero()
        );
        // X1X2 on {0,1}², e = (1,1) → 1
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let p = MultiPoly::monomial(&z(), mi(&[1, 1]), z().one()).unwrap();
        assert_eq!(
            coeff_formula_general(&g, &p, &mi(&[1, 1])).unwrap(),
            z().integer(1)
        );
    }

    #[test]
    fn general_formula_rejects_non_leading() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let p = MultiPoly::monomial(&z(), mi(&[3, 0]), z().one()).unwrap();
        assert!(matches!(
            coeff_formula_general(&g, &p, &mi(&[1, 0])),
            Err(Error::NotDLeading { .. })
        ));
    }

    #[test]
    fn main_formula_examples() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let p = MultiPoly::monomial(&z(), mi(&[1, 1]), z().one()).unwrap();
        assert_eq!(coeff_formula_main(&g, &p).unwrap(), z().integer(1));

        // deg(P) < Σd ⇒ P_d = 0
        let q = MultiPoly::variable(&z(), 2, 0);
        assert_eq!(coeff_formula_main(&g, &q).unwrap(), z().zero());

        // degree violation
        let too_big = MultiPoly::monomial(&z(), mi(&[3, 0]), z().one()).unwrap();
        assert!(matches!(
            coeff_formula_main(&g, &too_big),
            Err(Error::DegreeTooLarge(_))
        ));
    }

    #[test]
    fn main_formula_rejects_non_integral() {
        let r4 = zm(4);
        let g = Grid::new(&r4, vec![ints(&r4, &[0, 2])]).unwrap();
        let p = MultiPoly::variable(&r4, 1, 0);
        assert_eq!(coeff_formula_main(&g, &p), Err(Error::GridNotIntegral));
    }

    #[test]
    fn nonzero_exists_examples() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let p = MultiPoly::monomial(&z(), mi(&[1, 1]), z().one()).unwrap();
        assert_eq!(nonzero_exists(&g, &p).unwrap(), ints(&z(), &[1, 1]));

        // precondition failure: deg 2 < 4 = Σd means P_d = P_(2,2) = 0
        let r5 = zm(5);
        let g = Grid::new(&r5, vec![ints(&r5, &[0, 1, 2]), ints(&r5, &[0, 1, 2])]).unwrap();
        let x1m1 = MultiPoly::from_terms(
            &r5,
            2,
            [(mi(&[1, 0]), r5.one()), (mi(&[0, 0]), r5.integer(-1))],
        )
        .unwrap();
        let x2m1 = MultiPoly::from_terms(
            &r5,
            2,
            [(mi(&[0, 1]), r5.one()), (mi(&[0, 0]), r5.integer(-1))],
        )
        .unwrap();
        let p = x1m1.mul(&x2m1).unwrap();
        assert!(matches!(
            nonzero_exists(&g, &p),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn second_nonzero_examples() {
        // P = X1+X2−1 on {0,1}² ⊂ ℤ: deg 1 < 2 = Σd; the nonzeros are
        // (0,0) and (1,1), so from x0 = (1,1) the scan finds (0,0).
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let p = MultiPoly::from_terms(
            &z(),
            2,
            [
                (mi(&[1, 0]), z().one()),
                (mi(&[0, 1]), z().one()),
                (mi(&[0, 0]), z().integer(-1)),
            ],
        )
        .unwrap();
        assert_eq!(
            second_nonzero(&g, &p, &ints(&z(), &[1, 1])).unwrap(),
            ints(&z(), &[0, 0])
        );

        // the ℤ_4 counterexample grid {0,1,−1} is not integral and is rejected
        let r4 = zm(4);
        let g4 = Grid::new(&r4, vec![ints(&r4, &[0, 1, 3])]).unwrap();
        let p4 = MultiPoly::from_terms(
            &r4,
            1,
            [(mi(&[1]), r4.integer(2)), (mi(&[0]), r4.integer(2))],
        )
        .unwrap();
        assert_eq!(
            second_nonzero(&g4, &p4, &ints(&r4, &[0])),
            Err(Error::GridNotIntegral)
        );

        // P ≡ 1 on {0,1}, x0 = 0 → (1)
        let g1 = grid(&z(), &[&[0, 1]]);
        let one = MultiPoly::constant(&z(), 1, z().one()).unwrap();
        assert_eq!(
            second_nonzero(&g1, &one, &ints(&z(), &[0])).unwrap(),
            ints(&z(), &[1])
        );

        // P(x0) = 0 is rejected
        let x1 = MultiPoly::variable(&z(), 1, 0);
        assert!(matches!(
            second_nonzero(&g1, &x1, &ints(&z(), &[0])),
            Err(Error::Precondition(_))
        ));

        // P = X1⁵X2 has P_(1,1) = 0 but d is NOT d-leading ((5,1) defeats
        // both cases), and indeed the only nonzero on {0,1}² is (1,1); the
        // precondition must reject it rather than report a violation.
        let p = MultiPoly::monomial(&z(), mi(&[5, 1]), z().one()).unwrap();
        assert!(matches!(
            second_nonzero(&g, &p, &ints(&z(), &[1, 1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn vanishing_head_never_leaves_exactly_one_nonzero() {
        // Random polynomials with P_d = 0 on integral grids: the nonzero
        // count of P|_X is never exactly 1.
        use crate::selftest::{
            sample_integral_grid, sample_poly_total_deg, sample_ring, ALL_FAMILIES,
        };
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
        for i in 0..200 {
            let ring = sample_ring(ALL_FAMILIES[i % 4], &mut rng);
            let grid = sample_integral_grid(&ring, &mut rng, false);
            let mut poly = sample_poly_total_deg(&ring, grid.nvars(), grid.sum_d(), &mut rng);
            let head = poly.coefficient(grid.d());
            if !head.is_zero() {
                poly = poly
                    .sub(&MultiPoly::monomial(&ring, grid.d().clone(), head).unwrap())
                    .unwrap();
            }
            let mut count = 0u64;
            for point in grid.points() {
                if !poly.evaluate(&point).unwrap().is_zero() {
                    count += 1;
                }
            }
            assert_ne!(count, 1, "instance {i} on {:?}", grid.axes());
        }
    }

    #[test]
    fn cw_variant_examples() {
        // X = {0,1}³ ⊂ F_3, P = X1+X2+X3: count = 2
        let r3 = zm(3);
        let g = Grid::new(
            &r3,
            vec![ints(&r3, &[0, 1]), ints(&r3, &[0, 1]), ints(&r3, &[0, 1])],
        )
        .unwrap();
        let p = MultiPoly::from_terms(
            &r3,
            3,
            [
                (mi(&[1, 0, 0]), r3.one()),
                (mi(&[0, 1, 0]), r3.one()),
                (mi(&[0, 0, 1]), r3.one()),
            ],
        )
        .unwrap();
        assert_eq!(cw_variant_count(&g, &[p]).unwrap(), 2);

        // empty system: every point is a common zero
        assert_eq!(cw_variant_count(&g, &[]).unwrap(), 8);

        // degree condition violated
        let q = MultiPoly::monomial(&r3, mi(&[2, 0, 0]), r3.one()).unwrap();
        assert!(matches!(
            cw_variant_count(&g, &[q]),
            Err(Error::DegreeTooLarge(_))
        ));
    }
}
