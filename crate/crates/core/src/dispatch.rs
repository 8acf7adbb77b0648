//! JSON-in/JSON-out dispatch for every operation. The CLI and the C ABI are
//! thin layers over these entry points, so their behavior is identical.

use serde_json::{json, Value};

use crate::coefficient::{coeff_formula_general, coeff_formula_main};
use crate::error::{Error, Result};
use crate::interpolate::{interpolate_division, invert_integral};
use crate::json as nj;
use crate::multipoly::MultiIndex;
use crate::nullsatz::{certify_vanishing, trim, VanishingOutcome};
use crate::numapps::{
    afk_conjecture_search, cauchy_davenport, chevalley_warning_count, cube_cover_check,
    integer_coeff_formula, olson_generalized, padic_product_divisibility, regular_subgraph_check,
    zm_second_nonzero, AfkSearchMode, ExtendedGraph,
};
use crate::permanent::{alon_tarsi_count, incidence_matrix, per_delta, permanent_formula};
use crate::ring::Ring;
use crate::solver::{check_algebraic_solution, construct_algebraic_solution};

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_grid_points: u128,
    pub scan_limit: u128,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_grid_points: crate::gridcore::DEFAULT_MAX_GRID_POINTS,
            scan_limit: crate::numapps::DEFAULT_SCAN_LIMIT,
        }
    }
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn multiindex_field(v: &Value, key: &str) -> Result<MultiIndex> {
    let arr = field(v, key)?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{key} must be an array")))?;
    let exps: Result<Vec<u32>> = arr
        .iter()
        .map(|e| {
            e.as_u64()
                .map(|x| x as u32)
                .ok_or_else(|| Error::Parse(format!("{key} entries must be non-negative")))
        })
        .collect();
    Ok(MultiIndex::new(exps?))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    Ok(field(v, key)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("{key} must be a non-negative integer")))?
        as usize)
}

fn u64_field(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("{key} must be a non-negative integer")))
}

/// Runs the operation named `op` on the JSON input `v`. The supported names
/// are the CLI subcommands: grid-info, interpolate, invert, coeff-main,
/// coeff-general, trim, certify, permanent, alon-tarsi, solve-check,
/// solve-construct, and check-{subgraph, cube, cw, cd, zm, olson, zint,
/// padic, conjecture}.
pub fn run_op(op: &str, v: &Value, limits: Limits) -> Result<Value> {
    let max_points = limits.max_grid_points;
    let scan_limit = limits.scan_limit;
    match op {
        "grid-info" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            Ok(json!({
                "class": grid.class().name(),
                "d": grid.d().exponents(),
                "sumD": grid.sum_d(),
                "numPoints": grid.num_points(),
                "n": nj::gridmap_to_json(&grid.n_map()),
            }))
        }
        "interpolate" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let values = nj::gridmap_from_json(&grid, field(v, "values")?)?;
            Ok(nj::poly_to_json(&interpolate_division(&grid, &values)?))
        }
        "invert" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            Ok(nj::poly_to_json(&invert_integral(&grid, &poly)?))
        }
        "coeff-main" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            let value = coeff_formula_main(&grid, &poly)?;
            Ok(json!({"coefficient_d": nj::element_to_json(&value)}))
        }
        "coeff-general" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            let e = multiindex_field(v, "e")?;
            let value = coeff_formula_general(&grid, &poly, &e)?;
            Ok(json!({
                "coefficient": nj::element_to_json(&value),
                "e": e.exponents(),
            }))
        }
        "trim" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            Ok(nj::certificate_to_json(&trim(&grid, &poly)?))
        }
        "certify" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            match certify_vanishing(&grid, &poly)? {
                VanishingOutcome::Vanishes(cert) => Ok(json!({
                    "vanishes": true,
                    "certificate": nj::certificate_to_json(&cert),
                })),
                VanishingOutcome::NotVanishing(point) => Ok(json!({
                    "vanishes": false,
                    "witness": nj::point_to_json(&point),
                })),
            }
        }
        "permanent" => {
            let matrix = nj::matrix_from_json(field(v, "matrix")?)?;
            if v.get("delta").is_some() {
                let delta = multiindex_field(v, "delta")?;
                let value = per_delta(&matrix, &delta)?;
                Ok(json!({"perDelta": nj::element_to_json(&value)}))
            } else {
                let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
                let b = match v.get("b") {
                    Some(bv) => nj::point_from_json(matrix.ring(), bv)?,
                    None => vec![matrix.ring().zero(); matrix.rows()],
                };
                let value = permanent_formula(&matrix, &b, &grid)?;
                Ok(json!({"value": nj::element_to_json(&value)}))
            }
        }
        "alon-tarsi" => {
            let graph = nj::graph_from_json(field(v, "graph")?)?;
            let delta = multiindex_field(v, "delta")?;
            let (de, do_) = alon_tarsi_count(&graph, &delta, scan_limit)?;
            let per = per_delta(&incidence_matrix(&Ring::integers(), &graph)?, &delta)?;
            Ok(json!({
                "de": de,
                "do": do_,
                "perDelta": nj::element_to_json(&per),
            }))
        }
        "solve-check" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let problem = nj::problem_from_json(field(v, "problem")?)?;
            let imp = nj::impression_from_json(&grid, &problem, field(v, "problem")?)?;
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            let check = check_algebraic_solution(&poly, &problem, &imp)?;
            Ok(json!({
                "describes": check.describes,
                "degreeOk": check.degree_ok,
                "headOk": check.head_ok,
                "ok": check.all(),
            }))
        }
        "solve-construct" => {
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let problem = nj::problem_from_json(field(v, "problem")?)?;
            let imp = nj::impression_from_json(&grid, &problem, field(v, "problem")?)?;
            Ok(nj::poly_to_json(&construct_algebraic_solution(
                &problem, &imp,
            )?))
        }
        "check-subgraph" => {
            let vertices: Vec<String> = field(v, "vertices")?
                .as_array()
                .ok_or_else(|| Error::Parse("vertices must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or_else(|| Error::Parse("vertex names must be strings".into()))
                })
                .collect::<Result<_>>()?;
            let index_of = |name: &str| {
                vertices
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown vertex \"{name}\"")))
            };
            let mut edges = Vec::new();
            for e in field(v, "edges")?
                .as_array()
                .ok_or_else(|| Error::Parse("edges must be an array".into()))?
            {
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("edges must be [u, v] pairs".into()))?;
                let u = pair[0]
                    .as_str()
                    .ok_or_else(|| Error::Parse("vertex names must be strings".into()))?;
                let w = pair[1]
                    .as_str()
                    .ok_or_else(|| Error::Parse("vertex names must be strings".into()))?;
                edges.push((index_of(u)?, index_of(w)?));
            }
            let extra = usize_field(v, "extraEdge")?;
            let graph = ExtendedGraph::new(vertices, edges, extra)?;
            let report = regular_subgraph_check(&graph, scan_limit)?;
            Ok(json!({
                "subgraphEdges": report.subgraph,
                "commonZeroCount": report.common_zero_count,
                "audit": {
                    "twoV": report.two_v,
                    "e": report.e,
                    "ebar": report.ebar,
                    "degreeCondition": report.degree_condition,
                },
            }))
        }
        "check-cube" => {
            let ring = nj::ring_from_json(field(v, "ring")?)?;
            let n = usize_field(v, "n")?;
            let mut planes = Vec::new();
            for plane in field(v, "planes")?
                .as_array()
                .ok_or_else(|| Error::Parse("planes must be an array".into()))?
            {
                let a = nj::point_from_json(&ring, field(plane, "a")?)?;
                let b = nj::element_from_json(&ring, field(plane, "b")?)?;
                planes.push((a, b));
            }
            let report = cube_cover_check(&ring, &planes, n, scan_limit)?;
            Ok(json!({
                "uncovered": report.uncovered,
                "m": report.m,
                "n": report.n,
                "theoremConsistent": report.theorem_consistent,
            }))
        }
        "check-cw" => {
            let ring = nj::ring_from_json(field(v, "ring")?)?;
            let n = usize_field(v, "n")?;
            let polys: Result<Vec<_>> = field(v, "polys")?
                .as_array()
                .ok_or_else(|| Error::Parse("polys must be an array".into()))?
                .iter()
                .map(nj::poly_from_json)
                .collect();
            let count = chevalley_warning_count(&ring, &polys?, n, scan_limit)?;
            let (p, _) = ring.field_order().expect("validated as a field");
            Ok(json!({"count": count, "p": p, "divisible": true}))
        }
        "check-cd" => {
            let p = u64_field(v, "p")?;
            let nums = |key: &str| -> Result<Vec<u64>> {
                field(v, key)?
                    .as_array()
                    .ok_or_else(|| Error::Parse(format!("{key} must be an array")))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .ok_or_else(|| Error::Parse(format!("{key} entries must be residues")))
                    })
                    .collect()
            };
            let report = cauchy_davenport(p, &nums("a")?, &nums("b")?)?;
            Ok(json!({
                "sumsetSize": report.sumset_size,
                "bound": report.bound,
                "ok": report.ok,
            }))
        }
        "check-zm" => {
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            let report = zm_second_nonzero(&poly, scan_limit)?;
            Ok(json!({
                "m": report.m,
                "n": report.n,
                "nonzeroCount": report.nonzero_count,
                "exception": report.exception,
                "binomialSum": nj::element_to_json(&report.binomial_sum),
                "secondWeightedNonzero": report.second_weighted_nonzero,
            }))
        }
        "check-olson" => {
            let p = u64_field(v, "p")?;
            let ks: Result<Vec<u32>> = field(v, "ks")?
                .as_array()
                .ok_or_else(|| Error::Parse("ks must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|k| k as u32)
                        .ok_or_else(|| Error::Parse("ks entries must be positive".into()))
                })
                .collect();
            let polys: Result<Vec<_>> = field(v, "polys")?
                .as_array()
                .ok_or_else(|| Error::Parse("polys must be an array".into()))?
                .iter()
                .map(nj::poly_from_json)
                .collect();
            let grid = nj::grid_from_json(field(v, "grid")?, max_points)?;
            let count = olson_generalized(&polys?, &ks?, p, &grid)?;
            Ok(json!({"count": count}))
        }
        "check-zint" => {
            let poly = nj::poly_from_json(field(v, "poly")?)?;
            let d = multiindex_field(v, "d")?;
            let (lhs, rhs) = integer_coeff_formula(&poly, &d)?;
            Ok(json!({"lhs": lhs.to_string(), "rhs": rhs.to_string(), "equal": true}))
        }
        "check-padic" => {
            let y = field(v, "y")?
                .as_i64()
                .ok_or_else(|| Error::Parse("y must be an integer".into()))?;
            let p = u64_field(v, "p")?;
            let k = u64_field(v, "k")? as u32;
            let report = padic_product_divisibility(y, p, k)?;
            Ok(json!({
                "c": report.c,
                "valuation": report.valuation,
                "divides": report.divides,
                "exact": report.exact,
                "pkDividesY": report.divisible_by_pk,
            }))
        }
        "check-conjecture" => {
            let n = usize_field(v, "n")?;
            let m = usize_field(v, "m")?;
            let k = u64_field(v, "k")?;
            let bound = v.get("bound").and_then(Value::as_i64).unwrap_or(2);
            let mode = match v.get("trials").and_then(Value::as_u64) {
                Some(trials) => AfkSearchMode::Random {
                    trials,
                    bound,
                    seed: v.get("seed").and_then(Value::as_u64).unwrap_or(0),
                },
                None => AfkSearchMode::Exhaustive { bound },
            };
            match afk_conjecture_search(n, m, k, &mode, scan_limit)? {
                None => Ok(json!({"counterexample": null})),
                Some(ce) => Ok(json!({
                    "counterexample": {
                        "coefficients": ce.coefficients,
                        "uniquePoint": ce.unique_point,
                    },
                })),
            }
        }
        other => Err(Error::Parse(format!("unknown operation \"{other}\""))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_runs_named_ops() {
        let v = json!({
            "grid": {"ring": {"kind": "Z"}, "axes": [[0, 1], [0, 1]]},
            "poly": {"nvars": 2, "ring": {"kind": "Z"}, "terms": [{"exp": [1, 1], "coef": 1}]},
        });
        let out = run_op("coeff-main", &v, Limits::default()).unwrap();
        assert_eq!(out, json!({"coefficient_d": 1}));
        assert!(matches!(
            run_op("nonsense", &v, Limits::default()),
            Err(Error::Parse(_))
        ));
    }
}
