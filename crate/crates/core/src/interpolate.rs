//! Interpolation and inversion over grids: the Ψ-transform, the interpolation
//! formula on division grids, the inversion formula on integral grids, and
//! its inclusion–exclusion specialization on the Boolean grid.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gridcore::{Grid, GridMap};
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::ring::{solve_in_ring, Ring, RingElement};

/// (Ψy)(X) = Σ_x y(x)·L_{X,x}, the polynomial with coefficient tuple Ψy and
/// partial degrees ≤ d. Satisfies (Ψy)(X)|_X = Ny, which is verified on the
/// way out.
pub fn psi_transform(grid: &Grid, y: &GridMap) -> Result<MultiPoly> {
    if y.grid() != grid {
        return Err(Error::Precondition(
            "map does not live on the given grid".into(),
        ));
    }
    let deltas = grid.deltas();
    let mut coeffs = vec![grid.ring().zero(); deltas.len()];
    for idx in 0..grid.num_points() {
        let yv = y.value_at(idx);
        if yv.is_zero() {
            continue;
        }
        for (di, delta) in deltas.iter().enumerate() {
            let w = grid.psi(delta, idx)?;
            coeffs[di] = coeffs[di].add(&w.mul(yv)?)?;
        }
    }
    let poly = MultiPoly::from_terms(
        grid.ring(),
        grid.nvars(),
        deltas.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()),
    )?;
    // (Ψy)(X)|_X = Ny, pointwise.
    for (idx, point) in grid.points().enumerate() {
        let lhs = poly.evaluate(&point)?;
        let rhs = grid.n_at(idx).mul(y.value_at(idx))?;
        if lhs != rhs {
            return Err(Error::TheoremViolated(
                "(Ψy)(X)|_X ≠ Ny at a grid point".into(),
            ));
        }
    }
    Ok(poly)
}

/// φ^{-1}(y) = Ψ(N^{-1}y) on a division grid: the unique polynomial with
/// partial degrees ≤ d interpolating y.
pub fn interpolate_division(grid: &Grid, y: &GridMap) -> Result<MultiPoly> {
    if !grid.class().is_division() {
        return Err(Error::GridNotDivision);
    }
    if y.grid() != grid {
        return Err(Error::Precondition(
            "map does not live on the given grid".into(),
        ));
    }
    let scaled = GridMap::from_fn(grid, |idx, _| {
        let inv = grid.n_at(idx).try_invert().ok_or(Error::GridNotDivision)?;
        inv.mul(y.value_at(idx))
    })?;
    psi_transform(grid, &scaled)
}

/// P = Ψ(N^{-1}·P|_X) on an integral grid: reconstructs P (partial degrees
/// ≤ d) from its value table. Over ℤ the per-point quotients are bookkept as
/// exact rationals; the reconstructed coefficients are asserted integral.
pub fn invert_integral(grid: &Grid, poly: &MultiPoly) -> Result<MultiPoly> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    if poly.ring() != grid.ring() {
        return Err(Error::RingMismatch);
    }
    if poly.nvars() != grid.nvars() {
        return Err(Error::ArityMismatch {
            expected: grid.nvars(),
            got: poly.nvars(),
        });
    }
    for j in 0..grid.nvars() {
        let dj = grid.d().get(j);
        if poly.partial_degree(j).is_some_and(|deg| deg > dj) {
            return Err(Error::DegreeTooLarge(format!(
                "partial degree in X{} exceeds d_{} = {}",
                j + 1,
                j + 1,
                dj
            )));
        }
    }
    let values = GridMap::from_poly(grid, poly)?;
    let deltas = grid.deltas();
    match grid.ring() {
        Ring::Integers => {
            // q(x) = P(x)/N(x) ∈ ℚ; coefficients Σ_x ψ_{δ,x}·q(x) must be integers.
            let quotients: Vec<BigRational> = (0..grid.num_points())
                .map(|idx| {
                    BigRational::new(
                        values.value_at(idx).as_bigint().unwrap().clone(),
                        grid.n_at(idx).as_bigint().unwrap().clone(),
                    )
                })
                .collect();
            let mut terms = Vec::new();
            for delta in deltas {
                let mut acc = BigRational::zero();
                for (idx, q) in quotients.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let w = grid.psi(&delta, idx)?;
                    acc += q * BigRational::from_integer(w.as_bigint().unwrap().clone());
                }
                if acc.is_zero() {
                    continue;
                }
                if !acc.denom().is_one() {
                    return Err(Error::DivisionFailed(format!(
                        "coefficient at {delta} is the non-integer {acc}"
                    )));
                }
                terms.push((delta, grid.ring().from_bigint(acc.numer())));
            }
            MultiPoly::from_terms(grid.ring(), grid.nvars(), terms)
        }
        _ => {
            // c(x) with N(x)·c(x) = P(x); inversion when N(x) is a unit, a
            // ring scan otherwise (unreachable for integral grids over the
            // finite families, where integral ⇔ division).
            let mut scaled_values = Vec::with_capacity(grid.num_points());
            for idx in 0..grid.num_points() {
                let n = grid.n_at(idx);
                let v = values.value_at(idx);
                let c = match n.try_invert() {
                    Some(inv) => inv.mul(v)?,
                    None => solve_in_ring(n, v)?,
                };
                scaled_values.push(c);
            }
            let scaled = GridMap::from_values(grid, scaled_values)?;
            psi_transform(grid, &scaled)
        }
    }
}

/// P_δ = Σ_{x ≤ δ} (−1)^{Σ(δ−x)}·P(x) on the Boolean grid {0,1}^n — the
/// coefficient of the unique multilinear interpolant of the value table.
pub fn inclusion_exclusion_coeff(y: &GridMap, delta: &MultiIndex) -> Result<RingElement> {
    let grid = y.grid();
    if !grid.is_boolean() {
        return Err(Error::GridNotBoolean);
    }
    if delta.len() != grid.nvars() {
        return Err(Error::ArityMismatch {
            expected: grid.nvars(),
            got: delta.len(),
        });
    }
    if !delta.le(grid.d()) {
        return Err(Error::Precondition("δ must satisfy δ ≤ (1,…,1)".into()));
    }
    let ring = grid.ring();
    let support: Vec<usize> = (0..delta.len()).filter(|&j| delta.get(j) == 1).collect();
    let mut acc = ring.zero();
    for mask in 0u64..(1 << support.len()) {
        let ones = mask.count_ones() as u64;
        let point: Vec<RingElement> = (0..delta.len())
            .map(|j| match support.iter().position(|&s| s == j) {
                Some(b) if mask >> b & 1 == 1 => ring.one(),
                _ => ring.zero(),
            })
            .collect();
        let idx = grid.index_of_point(&point)?;
        let term = y.value_at(idx);
        // sign (−1)^{Σ(δ−x)} = (−1)^{|support| − ones}
        if (support.len() as u64 - ones).is_multiple_of(2) {
            acc = acc.add(term)?;
        } else {
            acc = acc.sub(term)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn psi_transform_examples() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let e11 = GridMap::indicator(&g, &ints(&z(), &[1, 1])).unwrap();
        let p = psi_transform(&g, &e11).unwrap();
        assert_eq!(
            p,
            MultiPoly::monomial(&z(), mi(&[1, 1]), z().one()).unwrap()
        );

        let zero_map = GridMap::from_fn(&g, |_, _| Ok(z().zero())).unwrap();
        assert!(psi_transform(&g, &zero_map).unwrap().is_zero());

        let g = grid(&z(), &[&[0, 1, 2]]);
        let e0 = GridMap::indicator(&g, &ints(&z(), &[0])).unwrap();
        let p = psi_transform(&g, &e0).unwrap();
        let expected = MultiPoly::from_terms(
            &z(),
            1,
            [
                (mi(&[2]), z().integer(1)),
                (mi(&[1]), z().integer(-3)),
                (mi(&[0]), z().integer(2)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
        let vals: Vec<RingElement> = g.points().map(|x| p.evaluate(&x).unwrap()).collect();
        assert_eq!(vals, ints(&z(), &[2, 0, 0]));
    }

    #[test]
    fn interpolate_division_examples() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let y = GridMap::indicator(&g, &ints(&z(), &[1, 1])).unwrap();
        assert_eq!(
            interpolate_division(&g, &y).unwrap(),
            MultiPoly::monomial(&z(), mi(&[1, 1]), z().one()).unwrap()
        );

        // X = ℤ_3, y the identity map → P = X
        let r3 = zm(3);
        let g = Grid::new(&r3, vec![ints(&r3, &[0, 1, 2])]).unwrap();
        let y = GridMap::from_fn(&g, |_, x| Ok(x[0].clone())).unwrap();
        assert_eq!(
            interpolate_division(&g, &y).unwrap(),
            MultiPoly::variable(&r3, 1, 0)
        );

        // X = {0,1} over ℤ_6, y = (1,0) → 1 − X
        let r6 = zm(6);
        let g = Grid::new(&r6, vec![ints(&r6, &[0, 1])]).unwrap();
        let y = GridMap::from_values(&g, ints(&r6, &[1, 0])).unwrap();
        let p = interpolate_division(&g, &y).unwrap();
        let expected =
            MultiPoly::from_terms(&r6, 1, [(mi(&[0]), r6.one()), (mi(&[1]), r6.integer(-1))])
                .unwrap();
        assert_eq!(p, expected);

        // non-division grid is rejected
        let g = grid(&z(), &[&[0, 1, 2]]);
        let y = GridMap::from_fn(&g, |_, _| Ok(z().one())).unwrap();
        assert_eq!(interpolate_division(&g, &y), Err(Error::GridNotDivision));
    }

    #[test]
    fn invert_integral_round_trips() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        let p = MultiPoly::from_terms(
            &z(),
            2,
            [(mi(&[1, 1]), z().one()), (mi(&[0, 0]), z().one())],
        )
        .unwrap();
        assert_eq!(invert_integral(&g, &p).unwrap(), p);

        // P = 1 over {0,1,2} ⊂ ℤ: N^{-1}P|_X = (1/2, −1, 1/2) is not integral
        // pointwise, the reconstructed coefficients are.
        let g = grid(&z(), &[&[0, 1, 2]]);
        let one = MultiPoly::constant(&z(), 1, z().one()).unwrap();
        assert_eq!(invert_integral(&g, &one).unwrap(), one);

        let zero = MultiPoly::zero(&z(), 1);
        assert_eq!(invert_integral(&g, &zero).unwrap(), zero);
    }

    #[test]
    fn invert_integral_preconditions() {
        let g = grid(&z(), &[&[0, 1]]);
        let x_sq = MultiPoly::monomial(&z(), mi(&[2]), z().one()).unwrap();
        assert!(matches!(
            invert_integral(&g, &x_sq),
            Err(Error::DegreeTooLarge(_))
        ));
        let g = Grid::new(&zm(4), vec![ints(&zm(4), &[0, 2])]).unwrap();
        let p = MultiPoly::variable(&zm(4), 1, 0);
        assert_eq!(invert_integral(&g, &p), Err(Error::GridNotIntegral));
    }

    #[test]
    fn invert_integral_finite_ring() {
        let r9 = zm(9);
        let g = Grid::new(&r9, vec![ints(&r9, &[0, 1, 2]), ints(&r9, &[4, 6])]).unwrap();
        assert!(g.class().is_integral());
        let p = MultiPoly::from_terms(
            &r9,
            2,
            [
                (mi(&[2, 1]), r9.integer(5)),
                (mi(&[1, 0]), r9.integer(7)),
                (mi(&[0, 0]), r9.integer(3)),
            ],
        )
        .unwrap();
        assert_eq!(invert_integral(&g, &p).unwrap(), p);
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let g = grid(&z(), &[&[0, 1], &[0, 1]]);
        // P = 1 + X1X2
        let p = MultiPoly::from_terms(
            &z(),
            2,
            [(mi(&[0, 0]), z().one()), (mi(&[1, 1]), z().one())],
        )
        .unwrap();
        let y = GridMap::from_poly(&g, &p).unwrap();
        assert_eq!(
            inclusion_exclusion_coeff(&y, &mi(&[1, 1])).unwrap(),
            z().integer(1)
        );
        assert_eq!(
            inclusion_exclusion_coeff(&y, &mi(&[0, 0])).unwrap(),
            p.evaluate(&ints(&z(), &[0, 0])).unwrap()
        );
        // constants have vanishing higher coefficients
        let c = GridMap::from_fn(&g, |_, _| Ok(z().integer(7))).unwrap();
        for delta in [mi(&[0, 1]), mi(&[1, 0]), mi(&[1, 1])] {
            assert!(inclusion_exclusion_coeff(&c, &delta).unwrap().is_zero());
        }
        // non-Boolean grid rejected
        let g3 = grid(&z(), &[&[0, 1, 2]]);
        let y3 = GridMap::from_fn(&g3, |_, _| Ok(z().one())).unwrap();
        assert_eq!(
            inclusion_exclusion_coeff(&y3, &mi(&[1])),
            Err(Error::GridNotBoolean)
        );
    }

    #[test]
    fn inclusion_exclusion_matches_interpolation() {
        // On {0,1}^n both computations produce the multilinear coefficients,
        // for random value tables in every dimension up to 6.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for ring in [z(), zm(7), zm(6)] {
            for n in 1..=6 {
                let g = Grid::new(&ring, vec![ints(&ring, &[0, 1]); n]).unwrap();
                let values: Vec<RingElement> = (0..g.num_points())
                    .map(|_| ring.integer(rng.gen_range(-5..=5)))
                    .collect();
                let y = GridMap::from_values(&g, values).unwrap();
                let p = interpolate_division(&g, &y).unwrap();
                for delta in g.deltas() {
                    assert_eq!(
                        inclusion_exclusion_coeff(&y, &delta).unwrap(),
                        p.coefficient(&delta),
                        "n = {n}, δ = {delta}"
                    );
                }
            }
        }
    }
}
