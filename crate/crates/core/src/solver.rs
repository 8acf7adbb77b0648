//! Problems (S, S_t), impressions (R, X, χ), describing polynomials with
//! χ(S) = supp(P|_X), and the constructive equivalence between algebraic
//! solutions and nontrivial solutions.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{n_inverses, NInvSum};
use crate::gridcore::{Grid, GridMap};
use crate::interpolate::psi_transform;
use crate::multipoly::MultiPoly;
use crate::ring::{Ring, RingElement};

/// A problem: a finite set of solution tokens and a subset of trivial ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    solutions: Vec<String>,
    trivial: Vec<String>,
}

impl Problem {
    pub fn new(solutions: Vec<String>, trivial: Vec<String>) -> Result<Problem> {
        for (i, s) in solutions.iter().enumerate() {
            if solutions[..i].contains(s) {
                return Err(Error::Precondition(format!("duplicate solution token {s}")));
            }
        }
        for t in &trivial {
            if !solutions.contains(t) {
                return Err(Error::Precondition(format!(
                    "trivial solution {t} is not a solution"
                )));
            }
        }
        Ok(Problem { solutions, trivial })
    }

    pub fn solutions(&self) -> &[String] {
        &self.solutions
    }
    pub fn trivial(&self) -> &[String] {
        &self.trivial
    }
    pub fn has_nontrivial(&self) -> bool {
        self.solutions.len() > self.trivial.len()
    }
}

/// An impression of a problem: an integral grid plus a map χ: S → X.
#[derive(Debug, Clone)]
pub struct Impression {
    grid: Grid,
    chi: BTreeMap<String, Vec<RingElement>>,
}

impl Impression {
    pub fn new(
        grid: Grid,
        problem: &Problem,
        chi: BTreeMap<String, Vec<RingElement>>,
    ) -> Result<Impression> {
        if !grid.class().is_integral() {
            return Err(Error::GridNotIntegral);
        }
        for s in problem.solutions() {
            let point = chi
                .get(s)
                .ok_or_else(|| Error::Precondition(format!("χ undefined on solution {s}")))?;
            grid.index_of_point(point)?;
        }
        Ok(Impression { grid, chi })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn chi(&self, token: &str) -> Option<&[RingElement]> {
        self.chi.get(token).map(|v| v.as_slice())
    }

    /// Image χ(T) as a deduplicated set of grid indices.
    fn image_indices(&self, tokens: &[String]) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for t in tokens {
            let point = self
                .chi
                .get(t)
                .ok_or_else(|| Error::Precondition(format!("χ undefined on {t}")))?;
            out.insert(self.grid.index_of_point(point)?);
        }
        Ok(out)
    }
}

/// The three predicates of the algebraic-solution definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraicSolutionCheck {
    /// χ(S) = supp(P|_X)
    pub describes: bool,
    /// deg(P) ≤ Σd when S_t = ∅, deg(P) < Σd otherwise
    pub degree_ok: bool,
    /// P_d ≠ 0 when S_t = ∅, Σ_{x∈χ(S_t)} N(x)^{-1}P(x) ≠ 0 otherwise
    pub head_ok: bool,
}

impl AlgebraicSolutionCheck {
    pub fn all(&self) -> bool {
        self.describes && self.degree_ok && self.head_ok
    }
}

/// χ(S) = supp(P|_X) as exact set equality.
pub fn is_describing(poly: &MultiPoly, problem: &Problem, imp: &Impression) -> Result<bool> {
    let values = GridMap::from_poly(imp.grid(), poly)?;
    let support: BTreeSet<usize> = values.support().into_iter().collect();
    let image = imp.image_indices(problem.solutions())?;
    Ok(support == image)
}

pub fn check_algebraic_solution(
    poly: &MultiPoly,
    problem: &Problem,
    imp: &Impression,
) -> Result<AlgebraicSolutionCheck> {
    let grid = imp.grid();
    let describes = is_describing(poly, problem, imp)?;
    let sum_d = grid.sum_d();
    if problem.trivial().is_empty() {
        let degree_ok = poly.total_degree().is_none_or(|deg| deg <= sum_d);
        let head_ok = !poly.coefficient(grid.d()).is_zero();
        Ok(AlgebraicSolutionCheck {
            describes,
            degree_ok,
            head_ok,
        })
    } else {
        let degree_ok = poly.total_degree().is_none_or(|deg| deg < sum_d);
        let trivial_image = imp.image_indices(problem.trivial())?;
        let inverses = n_inverses(grid)?;
        let mut sum = NInvSum::new(grid.ring());
        for idx in trivial_image {
            let value = poly.evaluate(&grid.point_at(idx))?;
            sum.add(&inverses, idx, &value)?;
        }
        Ok(AlgebraicSolutionCheck {
            describes,
            degree_ok,
            head_ok: sum.is_nonzero(),
        })
    }
}

/// Constructs an algebraic solution P = (Ψy)(X) from a map y with
/// supp(y) = χ(S), Σ_{χ(S_t)} y ≠ 0 and (for S_t ≠ ∅) Σy = 0, following the
/// constructive direction of the equivalence theorem. Fails when the
/// impression violates the theorem's side conditions.
pub fn construct_algebraic_solution(problem: &Problem, imp: &Impression) -> Result<MultiPoly> {
    if !problem.has_nontrivial() {
        return Err(Error::Precondition(
            "problem has no nontrivial solution (S = S_t)".into(),
        ));
    }
    let grid = imp.grid();
    let ring = grid.ring();
    let image_s = imp.image_indices(problem.solutions())?;
    let image_t = imp.image_indices(problem.trivial())?;
    let good: Vec<usize> = image_s.difference(&image_t).copied().collect();

    let size = ring.size();
    if size == Some(2) {
        // |R| = 2 forces all nonzero values to 1; the parity conditions
        // |χ(S)|+1 ≡ |χ(S_t)| ≡ ⟦S_t ≠ ∅⟧ (mod 2) are exactly feasibility.
        let t_parity = u128::from(!problem.trivial().is_empty());
        if (image_s.len() as u128 + 1) % 2 != image_t.len() as u128 % 2
            || image_t.len() as u128 % 2 != t_parity
        {
            return Err(Error::Precondition(
                "no algebraic solution under this impression (parity over |R| = 2)".into(),
            ));
        }
    } else if image_t == image_s {
        return Err(Error::Precondition(
            "no algebraic solution under this impression (χ(S) = χ(S_t))".into(),
        ));
    }

    // Candidate values for the designated points: small multiples of 1 first,
    // then (in finite rings) every nonzero element. Over |R| = 2 both lists
    // collapse to {1}.
    let candidates: Vec<RingElement> = {
        let mut c: Vec<RingElement> = Vec::new();
        let cap = size.map_or(5, |s| s.saturating_sub(1).min(5)) as i64;
        for v in 1..=cap.max(1) {
            let e = ring.integer(v);
            if !e.is_zero() && !c.contains(&e) {
                c.push(e);
            }
        }
        // Full enumeration is only ever needed for tiny rings whose nonzero
        // elements are not integer multiples of 1 (char-2 fields beyond F_2);
        // don't materialize large rings for it.
        if size.is_some_and(|s| s <= 4096) {
            for e in ring.elements()? {
                if !e.is_zero() && !c.contains(&e) {
                    c.push(e);
                }
            }
        }
        c
    };

    let one = ring.one();
    let y = if problem.trivial().is_empty() {
        // supp(y) = χ(S), Σy ≠ 0: ones everywhere, adjusting the first point
        // of χ(S) when the plain sum vanishes.
        let designated = *image_s.iter().next().expect("S nonempty");
        let rest_sum = ring.integer(image_s.len() as i64 - 1);
        let value = candidates
            .iter()
            .find(|v| !v.add(&rest_sum).expect("same ring").is_zero())
            .cloned()
            .ok_or_else(|| {
                Error::Precondition(
                    "no algebraic solution under this impression (Σy ≠ 0 infeasible)".into(),
                )
            })?;
        let mut values = vec![ring.zero(); grid.num_points()];
        for &idx in &image_s {
            values[idx] = one.clone();
        }
        values[designated] = value;
        GridMap::from_values(grid, values)?
    } else {
        // supp(y) = χ(S), Σ_{χ(S_t)} y ≠ 0, Σy = 0: ones everywhere except a
        // designated trivial point (value a) and a designated good point
        // (value b = −(rest of the sum)).
        let designated_t = *image_t.iter().next().expect("S_t nonempty");
        let designated_g = *good.first().ok_or_else(|| {
            Error::Precondition(
                "no algebraic solution under this impression (χ(S) = χ(S_t))".into(),
            )
        })?;
        let t_rest = ring.integer(image_t.len() as i64 - 1);
        let g_rest = ring.integer(good.len() as i64 - 1);
        let mut chosen = None;
        for a in &candidates {
            let t_sum = a.add(&t_rest)?;
            if t_sum.is_zero() {
                continue;
            }
            let b = t_sum.add(&g_rest)?.neg();
            if b.is_zero() {
                continue;
            }
            chosen = Some((a.clone(), b));
            break;
        }
        let (a, b) = chosen.ok_or_else(|| {
            Error::Precondition(
                "no algebraic solution under this impression (value scan infeasible)".into(),
            )
        })?;
        let mut values = vec![ring.zero(); grid.num_points()];
        for &idx in &image_s {
            values[idx] = one.clone();
        }
        values[designated_t] = a;
        values[designated_g] = b;
        GridMap::from_values(grid, values)?
    };

    let poly = psi_transform(grid, &y)?;
    let check = check_algebraic_solution(&poly, problem, imp)?;
    if !check.all() {
        return Err(Error::TheoremViolated(format!(
            "constructed polynomial fails the algebraic-solution check: {check:?}"
        )));
    }
    Ok(poly)
}
