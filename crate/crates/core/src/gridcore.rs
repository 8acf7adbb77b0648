//! d-grids X = X_1×…×X_n with their cached constants N and Ψ, Lagrange
//! polynomials, the division/affine/integral classification, and the
//! closed-form N specializations for structured axes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::ring::{Ring, RingElement};

/// Refuse grids beyond this many points unless an explicit limit is given.
pub const DEFAULT_MAX_GRID_POINTS: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridClass {
    Division,
    IntegralNotDivision,
    AffineNotIntegral,
    NotAffine,
}

impl GridClass {
    pub fn is_division(self) -> bool {
        self == GridClass::Division
    }
    pub fn is_integral(self) -> bool {
        matches!(self, GridClass::Division | GridClass::IntegralNotDivision)
    }
    pub fn is_affine(self) -> bool {
        self != GridClass::NotAffine
    }
    pub fn name(self) -> &'static str {
        match self {
            GridClass::Division => "division",
            GridClass::IntegralNotDivision => "integral_not_division",
            GridClass::AffineNotIntegral => "affine_not_integral",
            GridClass::NotAffine => "not_affine",
        }
    }
}

#[derive(Debug)]
struct GridInner {
    ring: Ring,
    axes: Vec<Vec<RingElement>>,
    d: MultiIndex,
    num_points: usize,
    /// axis_n[j][i] = N_j(axes[j][i]) = Π_{x̂ ≠ x}(x − x̂)
    axis_n: Vec<Vec<RingElement>>,
    /// axis_psi[j][i][δ] = ψ^j_{δ, axes[j][i]}, the X^δ-coefficient of
    /// Π_{x̂ ≠ x}(X − x̂); row length d_j + 1, monic (last entry 1).
    axis_psi: Vec<Vec<Vec<RingElement>>>,
    /// N(x) for every grid point in enumeration order.
    n_values: Vec<RingElement>,
    class: GridClass,
}

/// A d-grid. Cheap to clone; all cached constants are immutable.
#[derive(Debug, Clone)]
pub struct Grid(Arc<GridInner>);

impl PartialEq for Grid {
    fn eq(&self, other: &Grid) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.axes == other.0.axes)
    }
}
impl Eq for Grid {}

/// Expand Π_{x̂ ∈ pts}(X − x̂) into ascending coefficients (length |pts|+1).
fn expand_linear_product(ring: &Ring, pts: &[&RingElement]) -> Result<Vec<RingElement>> {
    let mut coeffs = vec![ring.one()];
    for x_hat in pts {
        let mut next = vec![ring.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c)?;
            next[i] = next[i].sub(&c.mul(x_hat)?)?;
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// N_j on one axis, by the defining product N_j(x) = Π_{x̂ ≠ x}(x − x̂).
pub fn axis_n_values(axis: &[RingElement]) -> Result<Vec<RingElement>> {
    let ring = axis[0].ring().clone();
    let mut out = Vec::with_capacity(axis.len());
    for (i, x) in axis.iter().enumerate() {
        let mut acc = ring.one();
        for (i2, x_hat) in axis.iter().enumerate() {
            if i2 != i {
                acc = acc.mul(&x.sub(x_hat)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

impl Grid {
    pub fn new(ring: &Ring, axes: Vec<Vec<RingElement>>) -> Result<Grid> {
        Grid::with_limit(ring, axes, DEFAULT_MAX_GRID_POINTS)
    }

    pub fn with_limit(ring: &Ring, axes: Vec<Vec<RingElement>>, max_points: u128) -> Result<Grid> {
        if axes.is_empty() {
            return Err(Error::EmptyAxis);
        }
        let mut num_points: u128 = 1;
        for axis in &axes {
            if axis.is_empty() {
                return Err(Error::EmptyAxis);
            }
            for (i, x) in axis.iter().enumerate() {
                if x.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                if axis[..i].contains(x) {
                    return Err(Error::DuplicateAxisElement);
                }
            }
            num_points = num_points.saturating_mul(axis.len() as u128);
        }
        if num_points > max_points {
            return Err(Error::GridTooLarge {
                points: num_points,
                limit: max_points,
            });
        }
        let num_points = num_points as usize;
        let d = MultiIndex::new(axes.iter().map(|a| (a.len() - 1) as u32).collect());

        let mut axis_n = Vec::with_capacity(axes.len());
        let mut axis_psi = Vec::with_capacity(axes.len());
        for axis in &axes {
            axis_n.push(axis_n_values(axis)?);
            let mut rows = Vec::with_capacity(axis.len());
            for (i, _) in axis.iter().enumerate() {
                let others: Vec<&RingElement> = axis
                    .iter()
                    .enumerate()
                    .filter(|(i2, _)| *i2 != i)
                    .map(|(_, e)| e)
                    .collect();
                rows.push(expand_linear_product(ring, &others)?);
            }
            axis_psi.push(rows);
        }

        // N(x) = Π_j N_j(x_j), eagerly for every point in enumeration order.
        let mut n_values = Vec::with_capacity(num_points);
        let sizes: Vec<usize> = axes.iter().map(|a| a.len()).collect();
        let mut pos = vec![0usize; axes.len()];
        for _ in 0..num_points {
            let mut acc = ring.one();
            for (j, &i) in pos.iter().enumerate() {
                acc = acc.mul(&axis_n[j][i])?;
            }
            n_values.push(acc);
            advance(&mut pos, &sizes);
        }

        let class = classify(ring, &axes, &axis_n, &sizes)?;

        Ok(Grid(Arc::new(GridInner {
            ring: ring.clone(),
            axes,
            d,
            num_points,
            axis_n,
            axis_psi,
            n_values,
            class,
        })))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn nvars(&self) -> usize {
        self.0.axes.len()
    }

    pub fn axes(&self) -> &[Vec<RingElement>] {
        &self.0.axes
    }

    pub fn axis(&self, j: usize) -> &[RingElement] {
        &self.0.axes[j]
    }

    /// d with d_j = |X_j| − 1.
    pub fn d(&self) -> &MultiIndex {
        &self.0.d
    }

    pub fn sum_d(&self) -> u64 {
        self.0.d.sum()
    }

    pub fn num_points(&self) -> usize {
        self.0.num_points
    }

    pub fn class(&self) -> GridClass {
        self.0.class
    }

    /// All Π(d_j+1) points exactly once, lexicographic in axis order.
    pub fn points(&self) -> PointIter<'_> {
        PointIter { grid: self, idx: 0 }
    }

    pub fn point_at(&self, idx: usize) -> Vec<RingElement> {
        let pos = self.positions_at(idx);
        pos.iter()
            .enumerate()
            .map(|(j, &i)| self.0.axes[j][i].clone())
            .collect()
    }

    /// Axis positions of the idx-th point (mixed-radix digits, last axis fastest).
    pub fn positions_at(&self, idx: usize) -> Vec<usize> {
        let mut pos = vec![0usize; self.nvars()];
        let mut rest = idx;
        for j in (0..self.nvars()).rev() {
            let s = self.0.axes[j].len();
            pos[j] = rest % s;
            rest /= s;
        }
        pos
    }

    pub fn index_of_positions(&self, pos: &[usize]) -> usize {
        let mut idx = 0usize;
        for (j, &i) in pos.iter().enumerate() {
            idx = idx * self.0.axes[j].len() + i;
        }
        idx
    }

    /// Point → enumeration index; errors when the point is off the grid.
    pub fn index_of_point(&self, point: &[RingElement]) -> Result<usize> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut pos = Vec::with_capacity(point.len());
        for (j, x) in point.iter().enumerate() {
            let i = self.0.axes[j]
                .iter()
                .position(|e| e == x)
                .ok_or(Error::PointNotInGrid)?;
            pos.push(i);
        }
        Ok(self.index_of_positions(&pos))
    }

    /// N(x) of the idx-th point.
    pub fn n_at(&self, idx: usize) -> &RingElement {
        &self.0.n_values[idx]
    }

    /// The full map N: X → R in enumeration order.
    pub fn n_map(&self) -> GridMap {
        GridMap {
            grid: self.clone(),
            values: self.0.n_values.clone(),
        }
    }

    pub fn axis_n(&self, j: usize) -> &[RingElement] {
        &self.0.axis_n[j]
    }

    /// ψ^j_{δ, x} for the i-th element of axis j.
    pub fn axis_psi(&self, j: usize, i: usize) -> &[RingElement] {
        &self.0.axis_psi[j][i]
    }

    /// ψ_{δ,x} = Π_j ψ^j_{δ_j, x_j} for the idx-th point.
    pub fn psi(&self, delta: &MultiIndex, idx: usize) -> Result<RingElement> {
        if delta.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: delta.len(),
            });
        }
        if !delta.le(&self.0.d) {
            return Err(Error::Precondition("ψ is defined for δ ≤ d only".into()));
        }
        let pos = self.positions_at(idx);
        let mut acc = self.0.ring.one();
        for (j, &i) in pos.iter().enumerate() {
            acc = acc.mul(&self.0.axis_psi[j][i][delta.get(j) as usize])?;
        }
        Ok(acc)
    }

    /// All multiindices δ ∈ \[d\] in lexicographic order.
    pub fn deltas(&self) -> Vec<MultiIndex> {
        let sizes: Vec<usize> = self.0.axes.iter().map(|a| a.len()).collect();
        let mut pos = vec![0usize; sizes.len()];
        let mut out = Vec::with_capacity(self.num_points());
        for _ in 0..self.num_points() {
            out.push(MultiIndex::new(pos.iter().map(|&i| i as u32).collect()));
            advance(&mut pos, &sizes);
        }
        out
    }

    /// The Lagrange polynomial L_{X,x} = Π_j Π_{x̂ ≠ x_j}(X_j − x̂)
    /// = Σ_{δ∈\[d\]} ψ_{δ,x} X^δ.
    pub fn lagrange_polynomial(&self, point: &[RingElement]) -> Result<MultiPoly> {
        let idx = self.index_of_point(point)?;
        let pos = self.positions_at(idx);
        let mut terms = Vec::new();
        let sizes: Vec<usize> = self.0.axes.iter().map(|a| a.len()).collect();
        let mut delta = vec![0usize; sizes.len()];
        for _ in 0..self.num_points() {
            let mut coef = self.0.ring.one();
            for (j, &i) in pos.iter().enumerate() {
                coef = coef.mul(&self.0.axis_psi[j][i][delta[j]])?;
            }
            if !coef.is_zero() {
                terms.push((
                    MultiIndex::new(delta.iter().map(|&e| e as u32).collect()),
                    coef,
                ));
            }
            advance(&mut delta, &sizes);
        }
        MultiPoly::from_terms(&self.0.ring, self.nvars(), terms)
    }

    /// The monic axis polynomial L_j = Π_{x̂∈X_j}(X_j − x̂) as a polynomial
    /// in n variables.
    pub fn axis_polynomial(&self, j: usize) -> Result<MultiPoly> {
        let all: Vec<&RingElement> = self.0.axes[j].iter().collect();
        let coeffs = expand_linear_product(&self.0.ring, &all)?;
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(e, c)| (MultiIndex::axis(self.nvars(), j, e as u32), c));
        MultiPoly::from_terms(&self.0.ring, self.nvars(), terms)
    }

    /// True when every axis is {0, 1}.
    pub fn is_boolean(&self) -> bool {
        let zero = self.0.ring.zero();
        let one = self.0.ring.one();
        self.0
            .axes
            .iter()
            .all(|a| a.len() == 2 && a.contains(&zero) && a.contains(&one))
    }
}

fn advance(pos: &mut [usize], sizes: &[usize]) {
    for j in (0..pos.len()).rev() {
        pos[j] += 1;
        if pos[j] < sizes[j] {
            return;
        }
        pos[j] = 0;
    }
}

fn classify(
    ring: &Ring,
    axes: &[Vec<RingElement>],
    axis_n: &[Vec<RingElement>],
    sizes: &[usize],
) -> Result<GridClass> {
    let mut all_units = true;
    let mut all_non_zero_divisors = true;
    for axis in axes {
        for (i, x) in axis.iter().enumerate() {
            for x_hat in &axis[..i] {
                let diff = x.sub(x_hat)?;
                if diff.try_invert().is_none() {
                    all_units = false;
                }
                if diff.is_zero_divisor() || diff.is_zero() {
                    all_non_zero_divisors = false;
                }
            }
        }
    }
    if all_units {
        return Ok(GridClass::Division);
    }
    if all_non_zero_divisors {
        return Ok(GridClass::IntegralNotDivision);
    }
    // ℤ has no nilpotents besides 0 and no zero divisors, so the scan above
    // already classified every ℤ-grid; the nilpotency test is for finite rings.
    if matches!(ring, Ring::Integers) {
        return Ok(GridClass::IntegralNotDivision);
    }
    // ΠN = Π_j (Π_{x∈X_j} N_j(x)) ^ (|X| / |X_j|)
    let total: u128 = sizes.iter().map(|&s| s as u128).product();
    let mut pi_n = ring.one();
    for (j, n_vals) in axis_n.iter().enumerate() {
        let mut axis_prod = ring.one();
        for v in n_vals {
            axis_prod = axis_prod.mul(v)?;
        }
        pi_n = pi_n.mul(&axis_prod.pow(total / sizes[j] as u128))?;
    }
    if pi_n.is_nilpotent() {
        Ok(GridClass::NotAffine)
    } else {
        Ok(GridClass::AffineNotIntegral)
    }
}

/// A total map X → R, stored in grid enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    grid: Grid,
    values: Vec<RingElement>,
}

impl GridMap {
    pub fn from_values(grid: &Grid, values: Vec<RingElement>) -> Result<GridMap> {
        if values.len() != grid.num_points() {
            return Err(Error::ArityMismatch {
                expected: grid.num_points(),
                got: values.len(),
            });
        }
        for v in &values {
            if v.ring() != grid.ring() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(GridMap {
            grid: grid.clone(),
            values,
        })
    }

    pub fn from_fn(
        grid: &Grid,
        mut f: impl FnMut(usize, &[RingElement]) -> Result<RingElement>,
    ) -> Result<GridMap> {
        let mut values = Vec::with_capacity(grid.num_points());
        for (idx, point) in grid.points().enumerate() {
            values.push(f(idx, &point)?);
        }
        GridMap::from_values(grid, values)
    }

    /// The indicator map e_x of a single grid point.
    pub fn indicator(grid: &Grid, point: &[RingElement]) -> Result<GridMap> {
        let target = grid.index_of_point(point)?;
        let mut values = vec![grid.ring().zero(); grid.num_points()];
        values[target] = grid.ring().one();
        Ok(GridMap {
            grid: grid.clone(),
            values,
        })
    }

    /// The table of values of a polynomial on the grid.
    pub fn from_poly(grid: &Grid, poly: &MultiPoly) -> Result<GridMap> {
        if poly.ring() != grid.ring() {
            return Err(Error::RingMismatch);
        }
        GridMap::from_fn(grid, |_, point| poly.evaluate(point))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[RingElement] {
        &self.values
    }

    pub fn value_at(&self, idx: usize) -> &RingElement {
        &self.values[idx]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .collect()
    }
}

pub struct PointIter<'a> {
    grid: &'a Grid,
    idx: usize,
}

impl<'a> Iterator for PointIter<'a> {
    type Item = Vec<RingElement>;

    fn next(&mut self) -> Option<Vec<RingElement>> {
        if self.idx >= self.grid.num_points() {
            return None;
        }
        let p = self.grid.point_at(self.idx);
        self.idx += 1;
        Some(p)
    }
}

// ---------------------------------------------------------------------------
// Closed-form N specializations for structured axes
// ---------------------------------------------------------------------------

/// The axis families with known closed forms for N_j.
#[derive(Debug, Clone)]
pub enum AxisFamily {
    /// X_j = E_{d_j+1}, all (d_j+1)-th roots of unity in an integral domain:
    /// N_j(x) = (d_j+1)·x^{−1}.
    RootsOfUnity,
    /// X_j ∪ {0} is a finite subfield: N_j(x) = −x^{−1}.
    FieldMinusZero,
    /// X_j = E_{d_j} ∪ {0} in an integral domain:
    /// N_j(x) = d_j·1 for x ≠ 0 and −1 for x = 0.
    RootsOfUnityWithZero,
    /// X_j is a finite subfield: N_j(x) = −1.
    Subfield,
    /// X_j = {0, 1, …, d_j} ⊂ ℤ: N_j(x) = (−1)^{d_j+x}·d_j!·binom(d_j,x)^{−1}.
    IntegerRange,
    /// X_j = base + α: N_{base+α}(x+α) = N_{base}(x).
    Shifted {
        base: Vec<RingElement>,
        alpha: RingElement,
    },
}

fn is_subfield(ring: &Ring, set: &[RingElement]) -> bool {
    let zero = ring.zero();
    let one = ring.one();
    if !set.contains(&zero) || !set.contains(&one) {
        return false;
    }
    for a in set {
        if !a.is_zero() {
            match a.try_invert() {
                Some(inv) if set.contains(&inv) => {}
                _ => return false,
            }
        }
        for b in set {
            let s = a.sub(b).expect("same ring");
            let p = a.mul(b).expect("same ring");
            if !set.contains(&s) || !set.contains(&p) {
                return false;
            }
        }
    }
    true
}

/// N_j on one axis by the closed form of the requested family. The result is
/// checked against the defining product and an internal error is raised on
/// any mismatch.
pub fn n_specialization(
    ring: &Ring,
    axis: &[RingElement],
    family: &AxisFamily,
) -> Result<Vec<RingElement>> {
    if axis.is_empty() {
        return Err(Error::EmptyAxis);
    }
    for x in axis {
        if x.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let d = (axis.len() - 1) as u64;
    let closed: Vec<RingElement> = match family {
        AxisFamily::RootsOfUnity => {
            if !ring.is_domain() {
                return Err(Error::Precondition(
                    "roots-of-unity family needs an integral domain".into(),
                ));
            }
            let l = axis.len() as u128;
            for x in axis {
                if !x.pow(l).is_one() {
                    return Err(Error::Precondition(format!(
                        "axis element {x} is not an {l}-th root of unity"
                    )));
                }
            }
            let scale = ring.integer(axis.len() as i64);
            axis.iter()
                .map(|x| scale.mul(&x.pow(l - 1)).expect("same ring"))
                .collect()
        }
        AxisFamily::FieldMinusZero => {
            let zero = ring.zero();
            if axis.contains(&zero) {
                return Err(Error::Precondition("axis must not contain 0".into()));
            }
            let mut with_zero = axis.to_vec();
            with_zero.push(zero);
            if !is_subfield(ring, &with_zero) {
                return Err(Error::Precondition("axis ∪ {0} is not a subfield".into()));
            }
            let mut out = Vec::with_capacity(axis.len());
            for x in axis {
                let inv = x.try_invert().ok_or_else(|| {
                    Error::Precondition(format!("axis element {x} is not invertible"))
                })?;
                out.push(inv.neg());
            }
            out
        }
        AxisFamily::RootsOfUnityWithZero => {
            if !ring.is_domain() {
                return Err(Error::Precondition(
                    "roots-of-unity-with-zero family needs an integral domain".into(),
                ));
            }
            if !axis.iter().any(|x| x.is_zero()) {
                return Err(Error::Precondition("axis must contain 0".into()));
            }
            for x in axis {
                if !x.is_zero() && !x.pow(d as u128).is_one() {
                    return Err(Error::Precondition(format!(
                        "axis element {x} is not a {d}-th root of unity"
                    )));
                }
            }
            axis.iter()
                .map(|x| {
                    if x.is_zero() {
                        ring.integer(-1)
                    } else {
                        ring.integer(d as i64)
                    }
                })
                .collect()
        }
        AxisFamily::Subfield => {
            if !is_subfield(ring, axis) {
                return Err(Error::Precondition("axis is not a subfield".into()));
            }
            axis.iter().map(|_| ring.integer(-1)).collect()
        }
        AxisFamily::IntegerRange => {
            if !matches!(ring, Ring::Integers) {
                return Err(Error::Precondition("integer-range family needs ℤ".into()));
            }
            for t in 0..=d {
                if !axis.contains(&ring.integer(t as i64)) {
                    return Err(Error::Precondition(format!(
                        "axis is not the range {{0,…,{d}}}"
                    )));
                }
            }
            // (−1)^{d+x}·d!·binom(d,x)^{−1} = (−1)^{d−x}·x!·(d−x)!, exact over ℤ.
            let mut out = Vec::with_capacity(axis.len());
            for x in axis {
                let xv = u64::try_from(x.as_bigint().unwrap()).expect("range checked");
                let val = crate::multipoly::factorial_bigint(xv)
                    * crate::multipoly::factorial_bigint(d - xv);
                let val = if (d - xv) % 2 == 1 { -val } else { val };
                out.push(ring.from_bigint(&val));
            }
            out
        }
        AxisFamily::Shifted { base, alpha } => {
            if base.len() != axis.len() {
                return Err(Error::ArityMismatch {
                    expected: axis.len(),
                    got: base.len(),
                });
            }
            for (x, b) in axis.iter().zip(base) {
                if *x != b.add(alpha)? {
                    return Err(Error::Precondition(
                        "axis is not the claimed shift of the base axis".into(),
                    ));
                }
            }
            axis_n_values(base)?
        }
    };
    let direct = axis_n_values(axis)?;
    if closed != direct {
        return Err(Error::TheoremViolated(
            "closed-form N disagrees with the defining product".into(),
        ));
    }
    Ok(closed)
}
