//! JSON encodings of the domain objects. Ring elements serialize relative to
//! their ring: plain integers for ℤ (decimal strings beyond i64), residues
//! for ℤ_m, ascending coefficient lists for F_{p^k}. All object keys are
//! emitted in sorted order, so equal inputs produce byte-identical output.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gridcore::{Grid, GridMap, DEFAULT_MAX_GRID_POINTS};
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::nullsatz::Certificate;
use crate::permanent::{OrientedMultigraph, RingMatrix};
use crate::ring::{Ring, RingElement};
use crate::solver::{Impression, Problem};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'v>(obj: &'v Value, key: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

pub fn ring_to_json(ring: &Ring) -> Value {
    match ring {
        Ring::Integers => json!({"kind": "Z"}),
        Ring::IntegersMod { modulus } => json!({"kind": "Zm", "m": modulus}),
        Ring::GaloisField(gf) => json!({
            "kind": "GF",
            "p": gf.p(),
            "k": gf.k(),
            "modulus": gf.modulus(),
        }),
    }
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    let kind = get(v, "kind")?
        .as_str()
        .ok_or_else(|| parse_err("ring kind must be a string"))?;
    match kind {
        "Z" => Ok(Ring::integers()),
        "Zm" => Ring::integers_mod(as_u64(get(v, "m")?, "m")?),
        "GF" => {
            let p = as_u64(get(v, "p")?, "p")?;
            let k = as_u64(get(v, "k")?, "k")? as usize;
            match v.get("modulus") {
                Some(Value::Array(arr)) => {
                    let modulus: Result<Vec<u64>> = arr
                        .iter()
                        .map(|c| as_u64(c, "modulus coefficient"))
                        .collect();
                    Ring::galois_field(p, k, modulus?)
                }
                Some(_) => Err(parse_err("modulus must be an array")),
                None => Ring::galois_field_default(p, k),
            }
        }
        other => Err(parse_err(format!("unknown ring kind \"{other}\""))),
    }
}

pub fn element_to_json(e: &RingElement) -> Value {
    match e.ring() {
        Ring::Integers => {
            let n = e.as_bigint().expect("ℤ element");
            match i64::try_from(n) {
                Ok(small) => json!(small),
                Err(_) => json!(n.to_string()),
            }
        }
        Ring::IntegersMod { .. } => json!(e.as_residue().expect("ℤ_m element")),
        Ring::GaloisField(_) => json!(e.as_gf_coeffs().expect("GF element")),
    }
}

pub fn element_from_json(ring: &Ring, v: &Value) -> Result<RingElement> {
    match ring {
        Ring::Integers => match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(ring.integer(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(ring.from_bigint(&BigInt::from(u)))
                } else {
                    Err(parse_err("ℤ elements must be integers"))
                }
            }
            Value::String(s) => {
                let n = BigInt::from_str(s)
                    .map_err(|_| parse_err(format!("bad integer literal \"{s}\"")))?;
                Ok(ring.from_bigint(&n))
            }
            _ => Err(parse_err("ℤ elements must be integers or decimal strings")),
        },
        Ring::IntegersMod { .. } => ring.residue(as_u64(v, "residue")?),
        Ring::GaloisField(_) => {
            let arr = v
                .as_array()
                .ok_or_else(|| parse_err("GF elements must be coefficient arrays"))?;
            let coeffs: Result<Vec<u64>> = arr.iter().map(|c| as_u64(c, "coefficient")).collect();
            ring.gf_element(&coeffs?)
        }
    }
}

pub fn point_from_json(ring: &Ring, v: &Value) -> Result<Vec<RingElement>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err("point must be an array"))?;
    arr.iter().map(|e| element_from_json(ring, e)).collect()
}

pub fn point_to_json(point: &[RingElement]) -> Value {
    Value::Array(point.iter().map(element_to_json).collect())
}

pub fn poly_to_json(poly: &MultiPoly) -> Value {
    let terms: Vec<Value> = poly
        .terms()
        .map(|(exp, coef)| {
            json!({
                "exp": exp.exponents(),
                "coef": element_to_json(coef),
            })
        })
        .collect();
    json!({
        "nvars": poly.nvars(),
        "ring": ring_to_json(poly.ring()),
        "terms": terms,
    })
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let ring = ring_from_json(get(v, "ring")?)?;
    let nvars = as_u64(get(v, "nvars")?, "nvars")? as usize;
    let terms_json = get(v, "terms")?
        .as_array()
        .ok_or_else(|| parse_err("terms must be an array"))?;
    let mut terms = Vec::with_capacity(terms_json.len());
    for t in terms_json {
        let exp_arr = get(t, "exp")?
            .as_array()
            .ok_or_else(|| parse_err("exp must be an array"))?;
        let exp: Result<Vec<u32>> = exp_arr
            .iter()
            .map(|e| as_u64(e, "exponent").map(|x| x as u32))
            .collect();
        let coef = element_from_json(&ring, get(t, "coef")?)?;
        terms.push((MultiIndex::new(exp?), coef));
    }
    MultiPoly::from_terms(&ring, nvars, terms)
}

pub fn grid_to_json(grid: &Grid) -> Value {
    let axes: Vec<Value> = grid
        .axes()
        .iter()
        .map(|axis| Value::Array(axis.iter().map(element_to_json).collect()))
        .collect();
    json!({"ring": ring_to_json(grid.ring()), "axes": axes})
}

pub fn grid_from_json(v: &Value, max_points: u128) -> Result<Grid> {
    let ring = ring_from_json(get(v, "ring")?)?;
    let axes_json = get(v, "axes")?
        .as_array()
        .ok_or_else(|| parse_err("axes must be an array"))?;
    let mut axes = Vec::with_capacity(axes_json.len());
    for axis in axes_json {
        axes.push(point_from_json(&ring, axis)?);
    }
    Grid::with_limit(&ring, axes, max_points)
}

pub fn gridmap_to_json(map: &GridMap) -> Value {
    let entries: Vec<Value> = map
        .grid()
        .points()
        .enumerate()
        .map(|(idx, point)| {
            json!({
                "point": point_to_json(&point),
                "value": element_to_json(map.value_at(idx)),
            })
        })
        .collect();
    Value::Array(entries)
}

pub fn gridmap_from_json(grid: &Grid, v: &Value) -> Result<GridMap> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err("grid map must be an array of {point, value}"))?;
    if arr.len() != grid.num_points() {
        return Err(parse_err(format!(
            "grid map must list all {} points, got {}",
            grid.num_points(),
            arr.len()
        )));
    }
    let mut values = vec![None; grid.num_points()];
    for entry in arr {
        let point = point_from_json(grid.ring(), get(entry, "point")?)?;
        let idx = grid.index_of_point(&point)?;
        if values[idx].is_some() {
            return Err(parse_err("grid map repeats a point"));
        }
        values[idx] = Some(element_from_json(grid.ring(), get(entry, "value")?)?);
    }
    let values: Vec<RingElement> = values.into_iter().map(|v| v.unwrap()).collect();
    GridMap::from_values(grid, values)
}

pub fn matrix_to_json(m: &RingMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| element_to_json(m.at(i, j))).collect()))
        .collect();
    json!({"ring": ring_to_json(m.ring()), "rows": rows})
}

pub fn matrix_from_json(v: &Value) -> Result<RingMatrix> {
    let ring = ring_from_json(get(v, "ring")?)?;
    let rows_json = get(v, "rows")?
        .as_array()
        .ok_or_else(|| parse_err("rows must be an array"))?;
    let mut rows = Vec::with_capacity(rows_json.len());
    for row in rows_json {
        rows.push(point_from_json(&ring, row)?);
    }
    RingMatrix::from_rows(&ring, rows)
}

pub fn graph_to_json(g: &OrientedMultigraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|&(head, tail)| json!({"head": g.vertices()[head], "tail": g.vertices()[tail]}))
        .collect();
    json!({"vertices": g.vertices(), "edges": edges})
}

pub fn graph_from_json(v: &Value) -> Result<OrientedMultigraph> {
    let vertices: Vec<String> = get(v, "vertices")?
        .as_array()
        .ok_or_else(|| parse_err("vertices must be an array"))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(String::from)
                .ok_or_else(|| parse_err("vertex names must be strings"))
        })
        .collect::<Result<_>>()?;
    let index_of = |name: &str| {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| parse_err(format!("unknown vertex \"{name}\"")))
    };
    let mut edges = Vec::new();
    for e in get(v, "edges")?
        .as_array()
        .ok_or_else(|| parse_err("edges must be an array"))?
    {
        let head = get(e, "head")?
            .as_str()
            .ok_or_else(|| parse_err("edge head must be a string"))?;
        let tail = get(e, "tail")?
            .as_str()
            .ok_or_else(|| parse_err("edge tail must be a string"))?;
        edges.push((index_of(head)?, index_of(tail)?));
    }
    OrientedMultigraph::new(vertices, edges)
}

pub fn certificate_to_json(cert: &Certificate) -> Value {
    json!({
        "trimmed": poly_to_json(&cert.trimmed),
        "cofactors": cert.cofactors.iter().map(poly_to_json).collect::<Vec<_>>(),
        "axisPolys": cert.axis_polys.iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn problem_from_json(v: &Value) -> Result<Problem> {
    let strings = |key: &str| -> Result<Vec<String>> {
        get(v, key)?
            .as_array()
            .ok_or_else(|| parse_err(format!("{key} must be an array")))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(String::from)
                    .ok_or_else(|| parse_err("tokens must be strings"))
            })
            .collect()
    };
    Problem::new(strings("solutions")?, strings("trivial")?)
}

pub fn impression_from_json(grid: &Grid, problem: &Problem, v: &Value) -> Result<Impression> {
    let chi_json = get(v, "chi")?
        .as_object()
        .ok_or_else(|| parse_err("chi must be an object"))?;
    let mut chi = BTreeMap::new();
    for (token, point) in chi_json {
        chi.insert(token.clone(), point_from_json(grid.ring(), point)?);
    }
    Impression::new(grid.clone(), problem, chi)
}

/// Serialize a value with sorted keys (serde_json maps are ordered) and no
/// extra whitespace; the output is byte-identical for equal inputs.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON serialization cannot fail")
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Parse the tiny univariate ASCII syntax, e.g. "X^3+X+2" or
/// "X^3-2X^2-X+2", into a 1-variable polynomial over the given ring.
pub fn parse_univariate(ring: &Ring, input: &str) -> Result<MultiPoly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    let mut terms: Vec<(MultiIndex, RingElement)> = Vec::new();
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut sign = 1i64;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        pos = 1;
    }
    while pos < bytes.len() {
        // coefficient digits
        let digit_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef_digits = &s[digit_start..pos];
        // optional variable with optional exponent
        let mut exponent = 0u32;
        let mut has_var = false;
        if pos < bytes.len() && (bytes[pos] == b'X' || bytes[pos] == b'x') {
            has_var = true;
            pos += 1;
            exponent = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let exp_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exponent = s[exp_start..pos]
                    .parse()
                    .map_err(|_| parse_err("bad exponent"))?;
            }
        }
        if coef_digits.is_empty() && !has_var {
            return Err(parse_err(format!(
                "unexpected character at \"{}\"",
                &s[pos..]
            )));
        }
        let coef: i64 = if coef_digits.is_empty() {
            1
        } else {
            coef_digits
                .parse()
                .map_err(|_| parse_err("coefficient too large"))?
        };
        terms.push((MultiIndex::new(vec![exponent]), ring.integer(sign * coef)));
        // next sign
        if pos < bytes.len() {
            sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(parse_err(format!("expected + or - at \"{}\"", &s[pos..]))),
            };
            pos += 1;
            if pos == bytes.len() {
                return Err(parse_err("trailing operator"));
            }
        }
    }
    MultiPoly::from_terms(ring, 1, terms)
}

/// Convenience for CLI/FFI input that carries its grid under "grid".
pub fn grid_field_from_json(v: &Value, max_points: Option<u128>) -> Result<Grid> {
    grid_from_json(
        get(v, "grid")?,
        max_points.unwrap_or(DEFAULT_MAX_GRID_POINTS),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_round_trips() {
        for ring in [
            Ring::integers(),
            Ring::integers_mod(6).unwrap(),
            Ring::galois_field(2, 2, vec![1, 1, 1]).unwrap(),
        ] {
            let v = ring_to_json(&ring);
            assert_eq!(ring_from_json(&v).unwrap(), ring);
        }
        // default modulus lookup
        let v = json!({"kind": "GF", "p": 3, "k": 2});
        assert!(ring_from_json(&v).is_ok());
    }

    #[test]
    fn element_round_trips() {
        let z = Ring::integers();
        let big = z.from_bigint(&BigInt::from_str("123456789012345678901234567890").unwrap());
        for e in [z.integer(-5), z.integer(0), big] {
            assert_eq!(element_from_json(&z, &element_to_json(&e)).unwrap(), e);
        }
        let gf = Ring::galois_field(2, 3, vec![1, 1, 0, 1]).unwrap();
        for e in gf.elements().unwrap() {
            assert_eq!(element_from_json(&gf, &element_to_json(&e)).unwrap(), e);
        }
    }

    #[test]
    fn poly_round_trip_and_determinism() {
        let ring = Ring::integers_mod(7).unwrap();
        let poly = MultiPoly::from_terms(
            &ring,
            2,
            [
                (MultiIndex::new(vec![1, 1]), ring.integer(3)),
                (MultiIndex::new(vec![0, 2]), ring.integer(5)),
            ],
        )
        .unwrap();
        let v = poly_to_json(&poly);
        assert_eq!(poly_from_json(&v).unwrap(), poly);
        assert_eq!(
            to_canonical_string(&v),
            to_canonical_string(&poly_to_json(&poly))
        );
        // terms are emitted in lexicographic exponent order
        let s = to_canonical_string(&v);
        assert!(s.find("[0,2]").unwrap() < s.find("[1,1]").unwrap());
    }

    #[test]
    fn grid_and_map_round_trip() {
        let ring = Ring::integers();
        let grid = Grid::new(
            &ring,
            vec![
                vec![ring.integer(0), ring.integer(1)],
                vec![ring.integer(2), ring.integer(5)],
            ],
        )
        .unwrap();
        let v = grid_to_json(&grid);
        let back = grid_from_json(&v, DEFAULT_MAX_GRID_POINTS).unwrap();
        assert_eq!(back, grid);

        let map = GridMap::from_fn(&grid, |idx, _| Ok(ring.integer(idx as i64))).unwrap();
        let mv = gridmap_to_json(&map);
        assert_eq!(gridmap_from_json(&grid, &mv).unwrap(), map);
    }

    #[test]
    fn graph_round_trip() {
        let g = OrientedMultigraph::new(
            vec!["v1".into(), "v2".into(), "v3".into()],
            vec![(0, 1), (1, 2), (0, 1)],
        )
        .unwrap();
        let v = graph_to_json(&g);
        assert_eq!(graph_from_json(&v).unwrap(), g);
    }

    #[test]
    fn univariate_parser() {
        let r4 = Ring::integers_mod(4).unwrap();
        let p = parse_univariate(&r4, "X^3+X+2").unwrap();
        let expected = MultiPoly::from_terms(
            &r4,
            1,
            [
                (MultiIndex::new(vec![3]), r4.one()),
                (MultiIndex::new(vec![1]), r4.one()),
                (MultiIndex::new(vec![0]), r4.integer(2)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);

        let q = parse_univariate(&r4, "X^3-2X^2-X+2").unwrap();
        let expected = MultiPoly::from_terms(
            &r4,
            1,
            [
                (MultiIndex::new(vec![3]), r4.one()),
                (MultiIndex::new(vec![2]), r4.integer(-2)),
                (MultiIndex::new(vec![1]), r4.integer(-1)),
                (MultiIndex::new(vec![0]), r4.integer(2)),
            ],
        )
        .unwrap();
        assert_eq!(q, expected);

        let z = Ring::integers();
        assert_eq!(
            parse_univariate(&z, "7").unwrap(),
            MultiPoly::constant(&z, 1, z.integer(7)).unwrap()
        );
        assert_eq!(
            parse_univariate(&z, "-x").unwrap(),
            MultiPoly::monomial(&z, MultiIndex::new(vec![1]), z.integer(-1)).unwrap()
        );
        // like terms combine: X + X = 2X
        assert_eq!(
            parse_univariate(&z, "X+X").unwrap(),
            MultiPoly::monomial(&z, MultiIndex::new(vec![1]), z.integer(2)).unwrap()
        );
        assert!(parse_univariate(&z, "X^").is_err());
        assert!(parse_univariate(&z, "X+").is_err());
        assert!(parse_univariate(&z, "X*Y").is_err());
        assert!(parse_univariate(&z, "").is_err());
    }
}
