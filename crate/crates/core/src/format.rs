//! Model files: JSON documents `{"n": .., "d": .., "matrices": [[[entry, ..], ..], ..]}`.
//!
//! An entry is a rational string `"p/q"`, a plain integer, or an object
//! `{"re": "p/q", "im": "r/s"}`.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, ExactMatrix, GaussianRational, Rational};
use crate::model::QuadricModel;

fn entry_error(matrix: usize, row: usize, col: usize, reason: impl Into<String>) -> Error {
    Error::InvalidEntry {
        matrix: matrix + 1,
        row: row + 1,
        col: col + 1,
        reason: reason.into(),
    }
}

fn parse_part(v: &Value) -> std::result::Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(x) => match x.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(format!("`{x}` is not an integer; write fractions as \"p/q\"")),
        },
        other => Err(format!("expected a rational, found `{other}`")),
    }
}

fn parse_entry(v: &Value) -> std::result::Result<GaussianRational, String> {
    match v {
        Value::Object(map) => {
            if let Some(k) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(format!("unexpected key `{k}`"));
            }
            let re = map.get("re").map(parse_part).transpose()?.unwrap_or_default();
            let im = map.get("im").map(parse_part).transpose()?.unwrap_or_default();
            Ok(GaussianRational::new(re, im))
        }
        other => parse_part(other).map(GaussianRational::from_real),
    }
}

fn field_usize(doc: &serde_json::Map<String, Value>, key: &str) -> Result<usize> {
    let v = doc.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))?;
    v.as_u64()
        .filter(|&x| x >= 1)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field `{key}` must be a positive integer, found `{v}`")))
}

pub fn parse_model(text: &str) -> Result<QuadricModel> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed model file: {e}")))?;
    let doc = doc
        .as_object()
        .ok_or_else(|| Error::Parse("model file must be an object".into()))?;
    if let Some(k) = doc.keys().find(|k| !matches!(k.as_str(), "n" | "d" | "matrices")) {
        return Err(Error::Parse(format!("unknown field `{k}`")));
    }
    let n = field_usize(doc, "n")?;
    let d = field_usize(doc, "d")?;
    let mats = doc
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("field `matrices` must be a list".into()))?;
    if mats.len() != d {
        return Err(Error::Parse(format!("expected {d} matrices, found {}", mats.len())));
    }
    let mut raw = Vec::with_capacity(d);
    for (j, m) in mats.iter().enumerate() {
        let rows = m
            .as_array()
            .filter(|r| r.len() == n)
            .ok_or_else(|| Error::Parse(format!("matrix {} must be a list of {n} rows", j + 1)))?;
        let mut grid = Vec::with_capacity(n);
        for (r, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .filter(|c| c.len() == n)
                .ok_or_else(|| Error::Parse(format!("matrix {}, row {} must have {n} entries", j + 1, r + 1)))?;
            let mut parsed = Vec::with_capacity(n);
            for (c, cell) in cells.iter().enumerate() {
                parsed.push(parse_entry(cell).map_err(|e| entry_error(j, r, c, e))?);
            }
            grid.push(parsed);
        }
        raw.push(ExactMatrix::from_rows(grid)?);
    }
    QuadricModel::from_matrices(raw)
}

pub fn read_model_file(path: &std::path::Path) -> Result<QuadricModel> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

pub fn rational_string(r: &Rational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn entry_json(x: &GaussianRational) -> String {
    if x.is_real() {
        format!("\"{}\"", rational_string(&x.re))
    } else {
        format!(
            "{{\"re\": \"{}\", \"im\": \"{}\"}}",
            rational_string(&x.re),
            rational_string(&x.im)
        )
    }
}

/// Pretty-printed with one matrix row per line; [`parse_model`] reads it back.
pub fn write_model(model: &QuadricModel) -> String {
    let n = model.n();
    let mut out = format!("{{\n  \"n\": {},\n  \"d\": {},\n  \"matrices\": [\n", n, model.d());
    for (j, a) in model.matrices().iter().enumerate() {
        out.push_str("    [\n");
        for r in 0..n {
            let cells: Vec<String> = (0..n).map(|c| entry_json(a.get(r, c))).collect();
            let sep = if r + 1 < n { "," } else { "" };
            out.push_str(&format!("      [{}]{sep}\n", cells.join(", ")));
        }
        let sep = if j + 1 < model.d() { "," } else { "" };
        out.push_str(&format!("    ]{sep}\n"));
    }
    out.push_str("  ]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random::random_model;

    #[test]
    fn round_trips_catalog_models() {
        for m in [
            catalog::hyperquadric_c2(),
            catalog::beloshapka_c6_codim3(),
            catalog::ber_c6_codim4(),
            catalog::degenerate_flat(),
        ] {
            assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
        }
    }

    #[test]
    fn accepts_all_entry_forms() {
        let text = r#"{"n": 2, "d": 1, "matrices": [[[1, {"re": "1/2", "im": "-3"}], [{"re": "1/2", "im": 3}, "-2/4"]]]}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m.matrix(0).get(0, 1), &"1/2-3i".parse().unwrap());
        assert_eq!(m.matrix(0).get(1, 1), &"-1/2".parse().unwrap());
    }

    #[test]
    fn names_the_offending_entry() {
        let text = r#"{"n": 2, "d": 2, "matrices": [[["1","0"],["0","1"]], [["0","1"],["2","0"]]]}"#;
        match parse_model(text) {
            Err(Error::InvalidEntry { matrix, row, col, .. }) => assert_eq!((matrix, row, col), (2, 2, 1)),
            other => panic!("{other:?}"),
        }
        let text = r#"{"n": 1, "d": 1, "matrices": [[[{"re": "1", "im": "1"}]]]}"#;
        assert!(matches!(parse_model(text), Err(Error::InvalidEntry { matrix: 1, row: 1, col: 1, .. })));
        let text = r#"{"n": 1, "d": 1, "matrices": [[["x"]]]}"#;
        assert!(matches!(parse_model(text), Err(Error::InvalidEntry { .. })));
    }

    #[test]
    fn rejects_bad_shapes() {
        for text in [
            "[]",
            r#"{"n": 1, "d": 2, "matrices": [[["1"]]]}"#,
            r#"{"n": 2, "d": 1, "matrices": [[["1"]]]}"#,
            r#"{"n": 0, "d": 1, "matrices": [[]]}"#,
            r#"{"n": 1, "d": 1, "matrices": [[["1"]]], "extra": 1}"#,
            r#"{"n": 1, "d": 1, "matrices": [[[0.5]]]}"#,
        ] {
            assert!(parse_model(text).is_err(), "{text}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn random_models_round_trip(n in 1usize..4, d in 1usize..4, bound in 1i64..6, seed in any::<u64>()) {
                let m = random_model(n, d, bound, seed);
                prop_assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
            }
        }
    }
}
