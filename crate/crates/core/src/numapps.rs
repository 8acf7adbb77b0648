//! Executable checkers for the graph, geometry and number-theory
//! applications: each one audits the algebraic degree condition and verifies
//! the asserted existence / divisibility statement by exhaustive search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gridcore::Grid;
use crate::multipoly::{binomial_bigint, factorial_bigint, MultiIndex, MultiPoly};
use crate::ring::{is_prime, Ring, RingElement};

/// Default cap on exhaustive scans (number of evaluation steps).
pub const DEFAULT_SCAN_LIMIT: u128 = 1 << 24;

// ---------------------------------------------------------------------------
// 3-regular subgraphs of 4-regular multigraphs plus one edge
// ---------------------------------------------------------------------------

/// Loopless undirected multigraph with one designated extra edge e0, such
/// that the graph minus e0 is 4-regular.
#[derive(Debug, Clone)]
pub struct ExtendedGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    extra: usize,
}

impl ExtendedGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        extra: usize,
    ) -> Result<ExtendedGraph> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate vertex name {v}")));
            }
        }
        if extra >= edges.len() {
            return Err(Error::Precondition("extra-edge index out of range".into()));
        }
        let mut degree = vec![0u32; vertices.len()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::Precondition("edge endpoint out of range".into()));
            }
            if u == v {
                return Err(Error::Precondition("graph must be loopless".into()));
            }
            if i != extra {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        if let Some(v) = degree.iter().position(|&d| d != 4) {
            return Err(Error::Precondition(format!(
                "graph minus the extra edge is not 4-regular (vertex {} has degree {})",
                vertices[v], degree[v]
            )));
        }
        Ok(ExtendedGraph {
            vertices,
            edges,
            extra,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn extra(&self) -> usize {
        self.extra
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubgraphReport {
    /// Edge indices of a nonempty subgraph in which every vertex has degree
    /// 0 or 3; first hit in subset scan order.
    pub subgraph: Vec<usize>,
    /// Number of edge subsets (including ∅) whose vertex degrees are all
    /// ≡ 0 mod 3 — the common zeros of the F_3 system.
    pub common_zero_count: u64,
    /// The degree-condition audit 2|V| = |E| < |Ē|.
    pub two_v: u64,
    pub e: u64,
    pub ebar: u64,
    pub degree_condition: bool,
}

/// Finds a nontrivial 3-regular subgraph of a 4-regular multigraph plus one
/// edge by scanning all 2^|Ē| edge subsets; the count of mod-3-balanced
/// subsets is reported and must not be 1.
pub fn regular_subgraph_check(
    graph: &ExtendedGraph,
    scan_limit: u128,
) -> Result<RegularSubgraphReport> {
    let m = graph.edges.len();
    let steps = 1u128 << m.min(127);
    // subset masks live in a u64
    if steps > scan_limit.min(1 << 62) {
        return Err(Error::ScanTooLarge {
            steps,
            limit: scan_limit.min(1 << 62),
        });
    }
    let nv = graph.vertices.len();
    let mut count = 0u64;
    let mut witness: Option<u64> = None;
    let mut degree = vec![0u32; nv];
    for mask in 0u64..(1u64 << m) {
        degree.iter_mut().for_each(|d| *d = 0);
        for (i, &(u, v)) in graph.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        if degree.iter().all(|&d| d % 3 == 0) {
            count += 1;
            if mask != 0 && witness.is_none() {
                witness = Some(mask);
            }
        }
    }
    let two_v = 2 * nv as u64;
    let e = m as u64 - 1;
    let ebar = m as u64;
    let report_base = |subgraph| RegularSubgraphReport {
        subgraph,
        common_zero_count: count,
        two_v,
        e,
        ebar,
        degree_condition: two_v == e && e < ebar,
    };
    match witness {
        Some(mask) => Ok(report_base(
            (0..m).filter(|&i| mask >> i & 1 == 1).collect(),
        )),
        None => Err(Error::TheoremViolated(
            "no nontrivial 3-regular subgraph found".into(),
        )),
    }
}

/// The F_3 vertex polynomials P_v = Σ_{e∋v} X_e whose common zeros on
/// {0,1}^Ē are exactly the mod-3-balanced subgraphs.
pub fn regular_subgraph_system(graph: &ExtendedGraph) -> Result<(Grid, Vec<MultiPoly>)> {
    let ring = Ring::integers_mod(3)?;
    let m = graph.edges.len();
    let axes = vec![vec![ring.zero(), ring.one()]; m];
    let grid = Grid::new(&ring, axes)?;
    let mut polys = Vec::with_capacity(graph.vertices.len());
    for v in 0..graph.vertices.len() {
        let terms = graph
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(e, _)| (MultiIndex::axis(m, e, 1), ring.one()));
        polys.push(MultiPoly::from_terms(&ring, m, terms)?);
    }
    Ok((grid, polys))
}

// ---------------------------------------------------------------------------
// Cube coverings by affine hyperplanes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeCoverReport {
    /// Uncovered cube vertices as 0/1 vectors, in lexicographic order.
    pub uncovered: Vec<Vec<u8>>,
    pub m: usize,
    pub n: usize,
    /// False only if exactly one vertex is uncovered by fewer than n planes,
    /// which the covering theorem rules out.
    pub theorem_consistent: bool,
}

/// Computes the set of cube vertices covered by none of the hyperplanes
/// a_i·x = b_i over a field, and audits the m ≥ n bound when exactly one
/// vertex is uncovered.
pub fn cube_cover_check(
    ring: &Ring,
    planes: &[(Vec<RingElement>, RingElement)],
    n: usize,
    scan_limit: u128,
) -> Result<CubeCoverReport> {
    if !ring.is_field() {
        return Err(Error::Precondition(
            "hyperplanes must live over a field".into(),
        ));
    }
    let steps = 1u128 << n.min(127);
    if steps > scan_limit.min(1 << 62) {
        return Err(Error::ScanTooLarge {
            steps,
            limit: scan_limit.min(1 << 62),
        });
    }
    for (a, b) in planes {
        if a.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: a.len(),
            });
        }
        if a.iter().any(|c| c.ring() != ring) || b.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let mut uncovered = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let x: Vec<RingElement> = (0..n)
            .map(|j| {
                if mask >> (n - 1 - j) & 1 == 1 {
                    ring.one()
                } else {
                    ring.zero()
                }
            })
            .collect();
        let mut covered = false;
        for (a, b) in planes {
            let mut dot = ring.zero();
            for (aj, xj) in a.iter().zip(&x) {
                dot = dot.add(&aj.mul(xj)?)?;
            }
            if &dot == b {
                covered = true;
                break;
            }
        }
        if !covered {
            uncovered.push((0..n).map(|j| (mask >> (n - 1 - j) & 1) as u8).collect());
        }
    }
    let theorem_consistent = !(uncovered.len() == 1 && planes.len() < n);
    if !theorem_consistent {
        return Err(Error::TheoremViolated(format!(
            "{} hyperplanes cover all but one vertex of the {n}-cube",
            planes.len()
        )));
    }
    Ok(CubeCoverReport {
        uncovered,
        m: planes.len(),
        n,
        theorem_consistent,
    })
}

// ---------------------------------------------------------------------------
// Chevalley–Warning over the full grid F_q^n
// ---------------------------------------------------------------------------

/// Exhaustive count of common zeros on F_q^n under Σ deg(P_i) < n; the count
/// is divisible by p.
pub fn chevalley_warning_count(
    ring: &Ring,
    polys: &[MultiPoly],
    n: usize,
    scan_limit: u128,
) -> Result<u64> {
    let (p, _) = ring
        .field_order()
        .ok_or_else(|| Error::Precondition("ring must be a finite field".into()))?;
    let q = ring.size().expect("finite field");
    let mut degree_sum: u64 = 0;
    for poly in polys {
        if poly.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if poly.nvars() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: poly.nvars(),
            });
        }
        degree_sum += poly.total_degree().unwrap_or(0);
    }
    if degree_sum >= n as u64 {
        return Err(Error::DegreeTooLarge(format!(
            "Σ deg(P_i) = {degree_sum} must be < n = {n}"
        )));
    }
    let steps = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    if steps > scan_limit.min(u64::MAX as u128) {
        return Err(Error::ScanTooLarge {
            steps,
            limit: scan_limit.min(u64::MAX as u128),
        });
    }
    let elements = ring.elements()?;
    // Full-grid scan, parallel over point indices; the count is an exact
    // commutative reduction, so the result is independent of the split.
    let count = (0..steps as u64)
        .into_par_iter()
        .map(|flat| -> Result<u64> {
            let mut idx = flat as usize;
            let mut point = vec![ring.zero(); n];
            for j in (0..n).rev() {
                point[j] = elements[idx % elements.len()].clone();
                idx /= elements.len();
            }
            for poly in polys {
                if !poly.evaluate(&point)?.is_zero() {
                    return Ok(0);
                }
            }
            Ok(1)
        })
        .try_reduce(|| 0u64, |a, b| Ok(a + b))?;
    if count % p != 0 {
        return Err(Error::TheoremViolated(format!(
            "zero count {count} is not divisible by p = {p}"
        )));
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Cauchy–Davenport
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyDavenportReport {
    pub sumset_size: u64,
    pub bound: u64,
    pub ok: bool,
}

/// |A+B| ≥ min(p, |A|+|B|−1) for nonempty A, B ⊆ ℤ_p, p prime.
pub fn cauchy_davenport(p: u64, a: &[u64], b: &[u64]) -> Result<CauchyDavenportReport> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("A and B must be nonempty".into()));
    }
    let a_set: std::collections::BTreeSet<u64> = a.iter().map(|x| x % p).collect();
    let b_set: std::collections::BTreeSet<u64> = b.iter().map(|x| x % p).collect();
    if a_set.len() != a.len() || b_set.len() != b.len() {
        return Err(Error::Precondition(
            "A and B must not repeat residues".into(),
        ));
    }
    let mut sumset = std::collections::BTreeSet::new();
    for x in &a_set {
        for y in &b_set {
            sumset.insert((x + y) % p);
        }
    }
    let bound = p.min((a_set.len() + b_set.len() - 1) as u64);
    let ok = sumset.len() as u64 >= bound;
    if !ok {
        return Err(Error::TheoremViolated(format!(
            "|A+B| = {} is below the bound {bound}",
            sumset.len()
        )));
    }
    Ok(CauchyDavenportReport {
        sumset_size: sumset.len() as u64,
        bound,
        ok,
    })
}

// ---------------------------------------------------------------------------
// Integer coefficient formula on [d]
// ---------------------------------------------------------------------------

/// Both sides of (−1)^{Σd}·\[Π d_j!\]·P_d = Σ_{x∈\[d\]} \[Π (−1)^{x_j}
/// binom(d_j, x_j)]·P(x) over ℤ, computed independently and compared.
pub fn integer_coeff_formula(poly: &MultiPoly, d: &MultiIndex) -> Result<(BigInt, BigInt)> {
    if !matches!(poly.ring(), Ring::Integers) {
        return Err(Error::Precondition("polynomial must be over ℤ".into()));
    }
    if d.len() != poly.nvars() {
        return Err(Error::ArityMismatch {
            expected: poly.nvars(),
            got: d.len(),
        });
    }
    if poly.total_degree().is_some_and(|deg| deg > d.sum()) {
        return Err(Error::DegreeTooLarge(format!(
            "degree exceeds Σd = {}",
            d.sum()
        )));
    }
    let ring = poly.ring().clone();
    // lhs from the stored coefficient
    let mut lhs = poly.coefficient(d).as_bigint().unwrap().clone();
    for j in 0..d.len() {
        lhs *= factorial_bigint(d.get(j) as u64);
    }
    if d.sum() % 2 == 1 {
        lhs = -lhs;
    }
    // rhs from the binomial-weighted grid sum over [d]
    let mut rhs = BigInt::zero();
    let sizes: Vec<u64> = (0..d.len()).map(|j| d.get(j) as u64 + 1).collect();
    let mut x = vec![0u64; d.len()];
    'outer: loop {
        let mut weight = BigInt::from(1);
        let mut parity = 0u64;
        for (j, &xj) in x.iter().enumerate() {
            weight *= binomial_bigint(d.get(j) as u64, xj);
            parity += xj;
        }
        if parity % 2 == 1 {
            weight = -weight;
        }
        let point: Vec<RingElement> = x.iter().map(|&v| ring.integer(v as i64)).collect();
        rhs += weight * poly.evaluate(&point)?.as_bigint().unwrap();
        for j in (0..x.len()).rev() {
            x[j] += 1;
            if x[j] < sizes[j] {
                continue 'outer;
            }
            x[j] = 0;
        }
        break;
    }
    if lhs != rhs {
        return Err(Error::TheoremViolated(format!(
            "integer coefficient formula: lhs {lhs} ≠ rhs {rhs}"
        )));
    }
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Second nonzeros over ℤ_m without degree restriction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZmReport {
    pub m: u64,
    pub n: usize,
    pub nonzero_count: u64,
    /// True for the documented exceptional case (m, n) = (4, 1), where the
    /// count may be 1 and the binomial sum may be nonzero.
    pub exception: bool,
    /// Σ_x [Π_j (−1)^{x_j} binom(m−1, x_j)]·P(x) in ℤ_m.
    pub binomial_sum: RingElement,
    /// When P(0) = P_0 ≠ 0: the first x ≠ 0 with [Π_j binom(m−1, x_j)]·P(x)
    /// ≠ 0, whose existence the vanishing binomial sum forces.
    pub second_weighted_nonzero: Option<Vec<u64>>,
}

/// The full-grid ℤ_m count of nonzeros of P, which is never 1 for composite
/// m with (m, n) ≠ (4, 1), together with the vanishing binomial-sum identity.
pub fn zm_second_nonzero(poly: &MultiPoly, scan_limit: u128) -> Result<ZmReport> {
    let ring = poly.ring().clone();
    let m = match &ring {
        Ring::IntegersMod { modulus } => *modulus,
        _ => return Err(Error::Precondition("polynomial must be over ℤ_m".into())),
    };
    if is_prime(m) {
        return Err(Error::Precondition(
            "m is prime: use the field-case theorems".into(),
        ));
    }
    let n = poly.nvars();
    let steps = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if steps > scan_limit.min(u64::MAX as u128) {
        return Err(Error::ScanTooLarge {
            steps,
            limit: scan_limit.min(u64::MAX as u128),
        });
    }
    let exception = m == 4 && n == 1;
    // per-residue binomial weights (−1)^x·binom(m−1, x) reduced into ℤ_m
    let weights: Vec<RingElement> = (0..m)
        .map(|x| {
            let mut w = binomial_bigint(m - 1, x);
            if x % 2 == 1 {
                w = -w;
            }
            ring.from_bigint(&w)
        })
        .collect();
    // Parallel full-grid scan; both reductions (a u64 count and an exact
    // ring sum) are commutative, so the split does not affect the result.
    let zero = ring.zero();
    let (nonzero_count, binomial_sum) = (0..steps as u64)
        .into_par_iter()
        .map(|flat| -> Result<(u64, RingElement)> {
            let mut idx = flat;
            let mut x = vec![0u64; n];
            for j in (0..n).rev() {
                x[j] = idx % m;
                idx /= m;
            }
            let point: Vec<RingElement> = x.iter().map(|&v| ring.integer(v as i64)).collect();
            let value = poly.evaluate(&point)?;
            if value.is_zero() {
                return Ok((0, zero.clone()));
            }
            let mut w = value;
            for &xj in &x {
                w = w.mul(&weights[xj as usize])?;
            }
            Ok((1, w))
        })
        .try_reduce(
            || (0u64, zero.clone()),
            |a, b| Ok((a.0 + b.0, a.1.add(&b.1)?)),
        )?;
    if !exception {
        if nonzero_count == 1 {
            return Err(Error::TheoremViolated(
                "exactly one nonzero on ℤ_m^n with m composite".into(),
            ));
        }
        if !binomial_sum.is_zero() {
            return Err(Error::TheoremViolated(format!(
                "binomial sum {binomial_sum} ≠ 0 on ℤ_m^n"
            )));
        }
    }
    // When the x = 0 summand P(0) = P_0 is nonzero, the vanishing sum forces
    // a second nonvanishing summand; find the first one.
    let zero_point = vec![ring.zero(); n];
    let second_weighted_nonzero = if poly.evaluate(&zero_point)?.is_zero() {
        None
    } else {
        let mut found = None;
        for flat in 1..steps as u64 {
            let mut idx = flat;
            let mut x = vec![0u64; n];
            for j in (0..n).rev() {
                x[j] = idx % m;
                idx /= m;
            }
            let point: Vec<RingElement> = x.iter().map(|&v| ring.integer(v as i64)).collect();
            let mut w = poly.evaluate(&point)?;
            for &xj in &x {
                w = w.mul(&weights[xj as usize])?;
            }
            if !w.is_zero() {
                found = Some(x);
                break;
            }
        }
        if found.is_none() && !exception {
            return Err(Error::TheoremViolated(
                "P_0 ≠ 0 but no second weighted nonzero exists".into(),
            ));
        }
        found
    };
    Ok(ZmReport {
        m,
        n,
        nonzero_count,
        exception,
        binomial_sum,
        second_weighted_nonzero,
    })
}

/// Exhaustive search over the normalized cubics in ℤ_4\[X\] (deg ≤ 3,
/// P_3 ≠ −1, nonzero exactly at 0) for violations of the count ≠ 1
/// assertion; returns the coefficient tuples (P_0, P_1, P_2, P_3) found.
pub fn z4_exception_search() -> Result<Vec<[u64; 4]>> {
    let ring = Ring::integers_mod(4)?;
    let mut found = Vec::new();
    for p3 in [0u64, 1, 2] {
        for p2 in 0..4u64 {
            for p1 in 0..4u64 {
                for p0 in 0..4u64 {
                    let poly = MultiPoly::from_terms(
                        &ring,
                        1,
                        [
                            (MultiIndex::new(vec![0]), ring.integer(p0 as i64)),
                            (MultiIndex::new(vec![1]), ring.integer(p1 as i64)),
                            (MultiIndex::new(vec![2]), ring.integer(p2 as i64)),
                            (MultiIndex::new(vec![3]), ring.integer(p3 as i64)),
                        ],
                    )?;
                    let mut nonzero_at = Vec::new();
                    for x in 0..4i64 {
                        if !poly.evaluate(&[ring.integer(x)])?.is_zero() {
                            nonzero_at.push(x);
                        }
                    }
                    if nonzero_at == [0] {
                        found.push([p0, p1, p2, p3]);
                    }
                }
            }
        }
    }
    Ok(found)
}

// ---------------------------------------------------------------------------
// p-adic product divisibility
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicReport {
    pub c: u64,
    /// p-adic valuation of Π_{0<ŷ<p^k}(y−ŷ); None when the product is 0.
    pub valuation: Option<u64>,
    pub divides: bool,
    /// valuation equals c exactly.
    pub exact: bool,
    pub divisible_by_pk: bool,
}

/// p^c | Π_{0<ŷ<p^k}(y−ŷ) with c = Σ_{i∈[k)}(p^i−1), and the valuation is
/// exactly c iff p^k | y.
pub fn padic_product_divisibility(y: i64, p: u64, k: u32) -> Result<PadicReport> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::Precondition("k must be ≥ 1".into()));
    }
    let pk = (p as i128)
        .checked_pow(k)
        .ok_or_else(|| Error::Precondition("p^k overflows".into()))?;
    let c: u64 = (0..k).map(|i| p.pow(i) - 1).sum();
    let mut valuation: Option<u64> = Some(0);
    for y_hat in 1..pk {
        let factor = y as i128 - y_hat;
        if factor == 0 {
            valuation = None;
            break;
        }
        let mut f = factor.unsigned_abs();
        let mut v = 0u64;
        while f.is_multiple_of(p as u128) {
            f /= p as u128;
            v += 1;
        }
        valuation = valuation.map(|total| total + v);
    }
    let divides = valuation.is_none_or(|v| v >= c);
    let exact = valuation == Some(c);
    let divisible_by_pk = (y as i128).rem_euclid(pk) == 0;
    if !divides {
        return Err(Error::TheoremViolated(format!(
            "p^c with c = {c} does not divide the product for y = {y}"
        )));
    }
    // p^{c+1} ∤ product ⟺ p^k | y
    if exact != divisible_by_pk {
        return Err(Error::TheoremViolated(format!(
            "exactness ({exact}) and divisibility p^k | y ({divisible_by_pk}) disagree for y = {y}"
        )));
    }
    Ok(PadicReport {
        c,
        valuation,
        divides,
        exact,
        divisible_by_pk,
    })
}

// ---------------------------------------------------------------------------
// Olson-style counting over p-integral grids
// ---------------------------------------------------------------------------

/// Exhaustive count of x ∈ X with p^{k_i} | P_i(x) for all i, on a
/// p-integral grid over ℤ under Σ(p^{k_i}−1)·deg(P_i) < Σd; never 1.
pub fn olson_generalized(polys: &[MultiPoly], ks: &[u32], p: u64, grid: &Grid) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if polys.len() != ks.len() {
        return Err(Error::ArityMismatch {
            expected: polys.len(),
            got: ks.len(),
        });
    }
    if !matches!(grid.ring(), Ring::Integers) {
        return Err(Error::Precondition("grid must lie in ℤ^n".into()));
    }
    if ks.contains(&0) {
        return Err(Error::Precondition("all k_i must be ≥ 1".into()));
    }
    // p-integrality: p ∤ x − x̃ along every axis
    let p_big = BigInt::from(p);
    for axis in grid.axes() {
        for (i, x) in axis.iter().enumerate() {
            for x_hat in &axis[..i] {
                let diff = x.sub(x_hat)?;
                if diff.as_bigint().unwrap().mod_floor(&p_big).is_zero() {
                    return Err(Error::Precondition(format!(
                        "grid is not {p}-integral: {p} divides {x} − {x_hat}"
                    )));
                }
            }
        }
    }
    let mut degree_sum: u64 = 0;
    for (poly, &k) in polys.iter().zip(ks) {
        if poly.ring() != grid.ring() {
            return Err(Error::RingMismatch);
        }
        if poly.nvars() != grid.nvars() {
            return Err(Error::ArityMismatch {
                expected: grid.nvars(),
                got: poly.nvars(),
            });
        }
        degree_sum += (p.pow(k) - 1) * poly.total_degree().unwrap_or(0);
    }
    if degree_sum >= grid.sum_d() {
        return Err(Error::DegreeTooLarge(format!(
            "Σ(p^k−1)·deg = {degree_sum} must be < Σd = {}",
            grid.sum_d()
        )));
    }
    let moduli: Vec<BigInt> = ks.iter().map(|&k| BigInt::from(p).pow(k)).collect();
    let mut count = 0u64;
    for point in grid.points() {
        let mut all_divide = true;
        for (poly, modulus) in polys.iter().zip(&moduli) {
            let value = poly.evaluate(&point)?;
            if !value.as_bigint().unwrap().mod_floor(modulus).is_zero() {
                all_divide = false;
                break;
            }
        }
        if all_divide {
            count += 1;
        }
    }
    if count == 1 {
        return Err(Error::TheoremViolated(
            "exactly one point with all p^{k_i} | P_i(x)".into(),
        ));
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Experimental search harness for the open conjecture on {0,1}^n
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum AfkSearchMode {
    /// All coefficient matrices with entries in [−bound, bound].
    Exhaustive { bound: i64 },
    /// Random matrices with entries in [−bound, bound].
    Random { trials: u64, bound: i64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfkCounterexample {
    pub coefficients: Vec<Vec<i64>>,
    pub unique_point: Vec<u8>,
}

/// Searches for m homogeneous degree-1 integer polynomials on {0,1}^n with
/// (k−1)·m < n whose set {x : ∀i k | P_i(x)} has exactly one element. The
/// conjecture says none exists; the expected output is None.
pub fn afk_conjecture_search(
    n: usize,
    m: usize,
    k: u64,
    mode: &AfkSearchMode,
    scan_limit: u128,
) -> Result<Option<AfkCounterexample>> {
    if k == 0 {
        return Err(Error::Precondition("k must be ≥ 1".into()));
    }
    if (k - 1) * m as u64 >= n as u64 {
        return Err(Error::Precondition(format!(
            "(k−1)·m = {} must be < n = {n}",
            (k - 1) * m as u64
        )));
    }
    if n > 62 {
        return Err(Error::ScanTooLarge {
            steps: u128::MAX,
            limit: 1 << 62,
        });
    }
    let points = 1u128 << n;
    let check_instance = |coeffs: &[Vec<i64>]| -> Option<Vec<u8>> {
        let mut unique: Option<u64> = None;
        let mut count = 0u64;
        for mask in 0u64..(1u64 << n) {
            let mut all_divisible = true;
            for row in coeffs {
                let mut value: i128 = 0;
                for (j, &a) in row.iter().enumerate() {
                    if mask >> (n - 1 - j) & 1 == 1 {
                        value += a as i128;
                    }
                }
                if value.rem_euclid(k as i128) != 0 {
                    all_divisible = false;
                    break;
                }
            }
            if all_divisible {
                count += 1;
                unique = Some(mask);
                if count > 1 {
                    return None;
                }
            }
        }
        if count == 1 {
            let mask = unique.unwrap();
            Some((0..n).map(|j| (mask >> (n - 1 - j) & 1) as u8).collect())
        } else {
            None
        }
    };
    match mode {
        AfkSearchMode::Exhaustive { bound } => {
            let b = bound.unsigned_abs();
            let base = 2 * b as u128 + 1;
            let mut instances = 1u128;
            for _ in 0..m * n {
                instances = instances.saturating_mul(base);
            }
            let steps = instances.saturating_mul(points);
            if steps > scan_limit {
                return Err(Error::ScanTooLarge {
                    steps,
                    limit: scan_limit,
                });
            }
            let mut digits = vec![0u64; m * n];
            loop {
                let coeffs: Vec<Vec<i64>> = (0..m)
                    .map(|i| (0..n).map(|j| digits[i * n + j] as i64 - *bound).collect())
                    .collect();
                if let Some(point) = check_instance(&coeffs) {
                    return Ok(Some(AfkCounterexample {
                        coefficients: coeffs,
                        unique_point: point,
                    }));
                }
                let mut carried = true;
                for digit in digits.iter_mut() {
                    *digit += 1;
                    if *digit < base as u64 {
                        carried = false;
                        break;
                    }
                    *digit = 0;
                }
                if carried {
                    break;
                }
            }
            Ok(None)
        }
        AfkSearchMode::Random {
            trials,
            bound,
            seed,
        } => {
            let steps = (*trials as u128).saturating_mul(points);
            if steps > scan_limit {
                return Err(Error::ScanTooLarge {
                    steps,
                    limit: scan_limit,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*trials {
                let coeffs: Vec<Vec<i64>> = (0..m)
                    .map(|_| (0..n).map(|_| rng.gen_range(-bound..=*bound)).collect())
                    .collect();
                if let Some(point) = check_instance(&coeffs) {
                    return Ok(Some(AfkCounterexample {
                        coefficients: coeffs,
                        unique_point: point,
                    }));
                }
            }
            Ok(None)
        }
    }
}
