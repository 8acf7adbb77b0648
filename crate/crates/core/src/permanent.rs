//! The matrix polynomial Π(AX), δ-permanents, the permanent formula over
//! integral grids, and orientation counting on loopless directed multigraphs
//! via incidence matrices.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{n_inverses, NInvSum};
use crate::gridcore::Grid;
use crate::multipoly::{factorial_bigint, MultiIndex, MultiPoly};
use crate::ring::{Ring, RingElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn new(
        ring: &Ring,
        rows: usize,
        cols: usize,
        entries: Vec<RingElement>,
    ) -> Result<RingMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::ArityMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            if e.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<RingElement>>) -> Result<RingMatrix> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition(
                "matrix rows have unequal lengths".into(),
            ));
        }
        RingMatrix::new(ring, m, n, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn at(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    /// A·x for a point x of length n.
    pub fn apply(&self, x: &[RingElement]) -> Result<Vec<RingElement>> {
        if x.len() != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = self.ring.zero();
            for (j, xj) in x.iter().enumerate() {
                acc = acc.add(&self.at(i, j).mul(xj)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Loopless directed multigraph. Vertices are named; edges are (head, tail)
/// index pairs and may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedMultigraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl OrientedMultigraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<OrientedMultigraph> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate vertex name {v}")));
            }
        }
        for &(head, tail) in &edges {
            if head >= vertices.len() || tail >= vertices.len() {
                return Err(Error::Precondition("edge endpoint out of range".into()));
            }
            if head == tail {
                return Err(Error::Precondition("graph must be loopless".into()));
            }
        }
        Ok(OrientedMultigraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Fiber vector of the defining orientation: δ_v = #{e : head(e) = v}.
    pub fn defining_fiber(&self) -> MultiIndex {
        let mut counts = vec![0u32; self.vertices.len()];
        for &(head, _) in &self.edges {
            counts[head] += 1;
        }
        MultiIndex::new(counts)
    }
}

/// Π(AX − b) = Π_i (Σ_j a_ij·X_j − b_i), expanded; degree ≤ m, and the empty
/// product (m = 0) is the constant 1.
pub fn matrix_polynomial(a: &RingMatrix, b: Option<&[RingElement]>) -> Result<MultiPoly> {
    if let Some(b) = b {
        if b.len() != a.rows() {
            return Err(Error::ArityMismatch {
                expected: a.rows(),
                got: b.len(),
            });
        }
        for e in b {
            if e.ring() != a.ring() {
                return Err(Error::RingMismatch);
            }
        }
    }
    let n = a.cols();
    let mut acc = MultiPoly::constant(a.ring(), n, a.ring().one())?;
    for i in 0..a.rows() {
        let mut row_terms: Vec<(MultiIndex, RingElement)> = Vec::new();
        for j in 0..n {
            row_terms.push((MultiIndex::axis(n, j, 1), a.at(i, j).clone()));
        }
        if let Some(b) = b {
            row_terms.push((MultiIndex::zeros(n), b[i].neg()));
        }
        let row = MultiPoly::from_terms(a.ring(), n, row_terms)?;
        acc = acc.mul(&row)?;
    }
    Ok(acc)
}

/// per_δ(A) = Σ over σ: (m] → (n] with fiber sizes δ of Π_i a_{i,σ(i)};
/// zero whenever Σδ ≠ m.
pub fn per_delta(a: &RingMatrix, delta: &MultiIndex) -> Result<RingElement> {
    if delta.len() != a.cols() {
        return Err(Error::ArityMismatch {
            expected: a.cols(),
            got: delta.len(),
        });
    }
    if delta.sum() != a.rows() as u64 {
        return Ok(a.ring().zero());
    }
    let mut remaining: Vec<u32> = delta.exponents().to_vec();
    let mut acc = a.ring().zero();
    let one = a.ring().one();
    enumerate_assignments(a, 0, &mut remaining, &one, &mut acc)?;
    Ok(acc)
}

fn enumerate_assignments(
    a: &RingMatrix,
    row: usize,
    remaining: &mut [u32],
    partial: &RingElement,
    acc: &mut RingElement,
) -> Result<()> {
    if row == a.rows() {
        *acc = acc.add(partial)?;
        return Ok(());
    }
    for j in 0..a.cols() {
        if remaining[j] == 0 {
            continue;
        }
        let entry = a.at(row, j);
        if entry.is_zero() {
            continue;
        }
        remaining[j] -= 1;
        let next = partial.mul(entry)?;
        enumerate_assignments(a, row + 1, remaining, &next, acc)?;
        remaining[j] += 1;
    }
    Ok(())
}

/// Executable check of Π(AX) = Σ_δ per_δ(A)·X^δ at one δ.
pub fn per_delta_expansion_check(a: &RingMatrix, delta: &MultiIndex) -> Result<bool> {
    let poly = matrix_polynomial(a, None)?;
    Ok(poly.coefficient(delta) == per_delta(a, delta)?)
}

/// per_d(A) = Σ_{x∈X} N(x)^{-1}·Π(Ax − b) on an integral grid with d = d(X),
/// for m ≤ Σd. The grid sum is checked against the direct enumeration.
pub fn permanent_formula(a: &RingMatrix, b: &[RingElement], grid: &Grid) -> Result<RingElement> {
    if !grid.class().is_integral() {
        return Err(Error::GridNotIntegral);
    }
    if a.ring() != grid.ring() {
        return Err(Error::RingMismatch);
    }
    if a.cols() != grid.nvars() {
        return Err(Error::ArityMismatch {
            expected: grid.nvars(),
            got: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::ArityMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    if (a.rows() as u64) > grid.sum_d() {
        return Err(Error::DegreeTooLarge(format!(
            "m = {} must satisfy m ≤ Σd = {}",
            a.rows(),
            grid.sum_d()
        )));
    }
    let inverses = n_inverses(grid)?;
    let mut sum = NInvSum::new(grid.ring());
    for (idx, point) in grid.points().enumerate() {
        let ax = a.apply(&point)?;
        let mut prod = grid.ring().one();
        for (v, bi) in ax.iter().zip(b) {
            prod = prod.mul(&v.sub(bi)?)?;
        }
        if prod.is_zero() {
            continue;
        }
        sum.add(&inverses, idx, &prod)?;
    }
    let value = sum.finish()?;
    let direct = per_delta(a, grid.d())?;
    if value != direct {
        return Err(Error::TheoremViolated(format!(
            "grid sum {value} differs from per_d(A) = {direct}"
        )));
    }
    Ok(value)
}

/// Incidence matrix of a loopless oriented multigraph: one row per edge with
/// +1 at the head and −1 at the tail. (Over rings with −1 = 1 the two
/// endpoints become indistinguishable.)
pub fn incidence_matrix(ring: &Ring, graph: &OrientedMultigraph) -> Result<RingMatrix> {
    let m = graph.num_edges();
    let n = graph.num_vertices();
    let mut entries = vec![ring.zero(); m * n];
    for (e, &(head, tail)) in graph.edges().iter().enumerate() {
        if head == tail {
            return Err(Error::Precondition("graph must be loopless".into()));
        }
        entries[e * n + head] = ring.one();
        entries[e * n + tail] = ring.integer(-1);
    }
    RingMatrix::new(ring, m, n, entries)
}

/// Counts of even and odd orientations with fiber vector δ, by exhaustive
/// enumeration of all 2^|E| orientations. The difference is checked against
/// per_δ of the incidence matrix over ℤ.
pub fn alon_tarsi_count(
    graph: &OrientedMultigraph,
    delta: &MultiIndex,
    scan_limit: u128,
) -> Result<(u64, u64)> {
    if delta.len() != graph.num_vertices() {
        return Err(Error::ArityMismatch {
            expected: graph.num_vertices(),
            got: delta.len(),
        });
    }
    if delta.sum() != graph.num_edges() as u64 {
        return Err(Error::Precondition("Σδ must equal |E|".into()));
    }
    let m = graph.num_edges();
    let steps = 1u128 << m.min(127);
    // the orientation masks live in a u64, so 2^62 caps the scan even when
    // the caller lifts the limit
    if steps > scan_limit.min(1 << 62) {
        return Err(Error::ScanTooLarge {
            steps,
            limit: scan_limit.min(1 << 62),
        });
    }
    let mut even = 0u64;
    let mut odd = 0u64;
    let mut counts = vec![0u32; graph.num_vertices()];
    for mask in 0u64..(1u64 << m) {
        counts.iter_mut().for_each(|c| *c = 0);
        for (e, &(head, tail)) in graph.edges().iter().enumerate() {
            // bit set: edge flipped, σ(e) = tail
            if mask >> e & 1 == 1 {
                counts[tail] += 1;
            } else {
                counts[head] += 1;
            }
        }
        if counts.iter().zip(delta.exponents()).all(|(c, d)| c == d) {
            if mask.count_ones() % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
        }
    }
    // |DE_δ| − |DO_δ| = per_δ(A(G)) over ℤ.
    let ring = Ring::integers();
    let inc = incidence_matrix(&ring, graph)?;
    let per = per_delta(&inc, delta)?;
    let diff = BigInt::from(even) - BigInt::from(odd);
    if per.as_bigint() != Some(&diff) {
        return Err(Error::TheoremViolated(format!(
            "|DE| − |DO| = {diff} differs from per_δ(A(G)) = {per}"
        )));
    }
    Ok((even, odd))
}

/// Even/odd Eulerian subgraph counts: equal to the orientation counts at the
/// fiber vector of the defining orientation.
pub fn eulerian_counts(graph: &OrientedMultigraph, scan_limit: u128) -> Result<(u64, u64)> {
    alon_tarsi_count(graph, &graph.defining_fiber(), scan_limit)
}

/// First grid point x (lexicographic scan) with (Ax)_i ≠ b_i for all i.
pub fn coloring_search(
    a: &RingMatrix,
    b: &[RingElement],
    grid: &Grid,
) -> Result<Option<Vec<RingElement>>> {
    if a.ring() != grid.ring() {
        return Err(Error::RingMismatch);
    }
    if a.cols() != grid.nvars() {
        return Err(Error::ArityMismatch {
            expected: grid.nvars(),
            got: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(Error::ArityMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    for point in grid.points() {
        let ax = a.apply(&point)?;
        if ax.iter().zip(b).all(|(v, bi)| v != bi) {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

/// Cross-check of (Π δ_j!)·per_δ(A) = per(A_{|δ}), where A_{|δ} repeats the
/// j-th column δ_j times. Skipped (None) when Π δ_j! is a zero divisor or
/// zero in R, where per_δ is not determined by per(A_{|δ}).
pub fn per_delta_column_check(a: &RingMatrix, delta: &MultiIndex) -> Result<Option<bool>> {
    if delta.len() != a.cols() {
        return Err(Error::ArityMismatch {
            expected: a.cols(),
            got: delta.len(),
        });
    }
    if delta.sum() != a.rows() as u64 {
        return Ok(Some(per_delta(a, delta)?.is_zero()));
    }
    let mut fact = BigInt::one();
    for j in 0..delta.len() {
        fact *= factorial_bigint(delta.get(j) as u64);
    }
    let factor = a.ring().from_bigint(&fact);
    if factor.is_zero() || factor.is_zero_divisor() {
        return Ok(None);
    }
    // Build A_{|δ} and take its classical permanent per_(1,…,1).
    let mut cols: Vec<usize> = Vec::new();
    for j in 0..delta.len() {
        for _ in 0..delta.get(j) {
            cols.push(j);
        }
    }
    let mut entries = Vec::with_capacity(a.rows() * cols.len());
    for i in 0..a.rows() {
        for &j in &cols {
            entries.push(a.at(i, j).clone());
        }
    }
    let expanded = RingMatrix::new(a.ring(), a.rows(), cols.len(), entries)?;
    let ones = MultiIndex::new(vec![1; cols.len()]);
    let classical = per_delta(&expanded, &ones)?;
    let lhs = factor.mul(&per_delta(a, delta)?)?;
    Ok(Some(lhs == classical))
}
