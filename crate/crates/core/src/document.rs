//! The JSON input format: named algebras, homs, carve maps, smooth maps,
//! classical fields, and points, all written as expression-string literals.
//!
//! Everything except homs is validated while parsing, so a malformed
//! document fails fast with a diagnostic naming the offending item. Homs
//! are kept raw and validated inside the law suite instead: a hom that
//! violates its source relations is a reportable finding, not a parse
//! error.

use crate::algebra::{Algebra, AlgebraCtx, AlgebraError, AlgElement, FpAlgebra};
use crate::duality::{space_d, space_d2, space_product, space_r, CarveMap, CarvedSpace, DualityError};
use crate::expr::{coordinate_names, Expr, ExprError, Poly, SmoothMap};
use crate::forms::{ClassicalTensorField, FormError};
use crate::hom::{AlgebraHom, HomError};
use crate::monomial::Monomial;
use crate::prolong::{ProlongError, WPoint};
use crate::scalar::{EvalError, Rational};
use serde::Deserialize;
use std::collections::BTreeMap;

pub const DOCUMENT_VERSION: &str = "1";

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("document is not valid JSON: {0}")]
    Json(String),
    #[error("unsupported document version `{0}` (expected `{DOCUMENT_VERSION}`)")]
    Version(String),
    #[error("`{item}`: unknown algebra `{name}`")]
    UnknownAlgebra { item: String, name: String },
    #[error("`{item}`: cannot parse space `{name}` (use D, D(2), D^n, R, R^n, or products with ` x `)")]
    UnknownSpace { item: String, name: String },
    #[error("`{item}`: relation `{text}` is not a monomial in the declared generators")]
    BadRelation { item: String, text: String },
    #[error("`{item}`: bad index tuple key `{key}` (use comma-separated indices, empty for degree 0)")]
    BadTuple { item: String, key: String },
    #[error("`{item}`: {source}")]
    Item { item: String, source: Box<DocumentError> },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Prolong(#[from] ProlongError),
}

fn in_item<T>(item: &str, r: Result<T, DocumentError>) -> Result<T, DocumentError> {
    r.map_err(|source| DocumentError::Item {
        item: item.to_string(),
        source: Box::new(source),
    })
}

#[derive(Deserialize)]
struct RawDocument {
    version: String,
    #[serde(default)]
    algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    homs: BTreeMap<String, RawHom>,
    #[serde(default)]
    carve_maps: BTreeMap<String, RawCarveMap>,
    #[serde(default)]
    smooth_maps: BTreeMap<String, RawSmoothMap>,
    #[serde(default)]
    fields: BTreeMap<String, RawField>,
    #[serde(default)]
    points: BTreeMap<String, RawPoint>,
}

#[derive(Deserialize)]
struct RawAlgebra {
    generators: Vec<String>,
    relations: Vec<String>,
}

#[derive(Deserialize, Clone, Debug)]
pub struct RawHom {
    pub source: String,
    pub target: String,
    pub images: Vec<String>,
}

#[derive(Deserialize)]
struct RawCarveMap {
    source: String,
    target: String,
    components: Vec<String>,
}

#[derive(Deserialize)]
struct RawSmoothMap {
    domain: usize,
    components: Vec<String>,
}

#[derive(Deserialize)]
struct RawField {
    n: usize,
    m: usize,
    coefficients: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawPoint {
    algebra: String,
    coords: Vec<String>,
}

/// A parsed input document. Homs stay raw (see module docs); everything
/// else is validated.
#[derive(Clone, Debug)]
pub struct Document {
    pub algebras: BTreeMap<String, Algebra>,
    pub homs: BTreeMap<String, RawHom>,
    pub carve_maps: BTreeMap<String, CarveMap>,
    pub smooth_maps: BTreeMap<String, SmoothMap>,
    pub fields: BTreeMap<String, ClassicalTensorField>,
    pub points: BTreeMap<String, WPoint<Rational>>,
}

/// `X^2`, `X*Y`, `X1^2*X3` as a monomial over the declared generators.
fn parse_relation(generators: &[String], text: &str) -> Option<Monomial> {
    let mut exps = vec![0u32; generators.len()];
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((name, power)) => (name.trim(), power.trim().parse::<u32>().ok()?),
            None => (factor, 1),
        };
        let idx = generators.iter().position(|g| g == name)?;
        exps[idx] += power;
    }
    let m = Monomial::new(exps);
    (!m.is_unit()).then_some(m)
}

/// Evaluate an expression string to an element, with the algebra's
/// generators as the variables.
pub fn parse_element(algebra: &Algebra, text: &str) -> Result<AlgElement<Rational>, DocumentError> {
    let ctx = AlgebraCtx::rational(algebra.clone());
    let expr = Expr::parse(text)?;
    let lookup = |name: &str| -> Option<AlgElement<Rational>> {
        let idx = algebra.generator_names().iter().position(|g| g == name)?;
        Some(ctx.generator_elem(idx))
    };
    Ok(expr.eval(&ctx, &lookup)?)
}

/// `D`, `D(2)`, `D^n`, `R`, `R^n`, and ` x `-separated products of those.
pub fn parse_space(name: &str) -> Option<CarvedSpace> {
    let mut parts = name.split(" x ");
    let mut space = parse_space_atom(parts.next()?.trim())?;
    for part in parts {
        space = space_product(&space, &parse_space_atom(part.trim())?);
    }
    Some(space)
}

fn parse_space_atom(name: &str) -> Option<CarvedSpace> {
    match name {
        "D" => return Some(space_d(1)),
        "D(2)" => return Some(space_d2()),
        "R" => return Some(space_r(1)),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("D^") {
        return rest.parse().ok().map(space_d);
    }
    if let Some(rest) = name.strip_prefix("R^") {
        return rest.parse().ok().map(space_r);
    }
    None
}

fn parse_tuple(key: &str) -> Option<Vec<usize>> {
    let key = key.trim();
    if key.is_empty() {
        return Some(Vec::new());
    }
    key.split(',')
        .map(|part| part.trim().parse::<usize>().ok())
        .collect()
}

impl Document {
    pub fn from_json(text: &str) -> Result<Document, DocumentError> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        if raw.version != DOCUMENT_VERSION {
            return Err(DocumentError::Version(raw.version));
        }

        let mut algebras = BTreeMap::new();
        for (name, spec) in raw.algebras {
            let item = format!("algebras.{name}");
            let relations = spec
                .relations
                .iter()
                .map(|text| {
                    parse_relation(&spec.generators, text).ok_or_else(|| {
                        DocumentError::BadRelation {
                            item: item.clone(),
                            text: text.clone(),
                        }
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let algebra = in_item(&item, FpAlgebra::new(spec.generators, relations).map_err(DocumentError::from))?;
            algebras.insert(name, algebra);
        }

        let mut carve_maps = BTreeMap::new();
        for (name, spec) in raw.carve_maps {
            let item = format!("carve_maps.{name}");
            let source = parse_space(&spec.source).ok_or_else(|| DocumentError::UnknownSpace {
                item: item.clone(),
                name: spec.source.clone(),
            })?;
            let target = parse_space(&spec.target).ok_or_else(|| DocumentError::UnknownSpace {
                item: item.clone(),
                name: spec.target.clone(),
            })?;
            let refs: Vec<&str> = spec.components.iter().map(String::as_str).collect();
            let map = in_item(
                &item,
                CarveMap::parse(source, target, &refs).map_err(DocumentError::from),
            )?;
            carve_maps.insert(name, map);
        }

        let mut smooth_maps = BTreeMap::new();
        for (name, spec) in raw.smooth_maps {
            let item = format!("smooth_maps.{name}");
            let refs: Vec<&str> = spec.components.iter().map(String::as_str).collect();
            let map = in_item(
                &item,
                SmoothMap::parse(spec.domain, &refs).map_err(DocumentError::from),
            )?;
            smooth_maps.insert(name, map);
        }

        let mut fields = BTreeMap::new();
        for (name, spec) in raw.fields {
            let item = format!("fields.{name}");
            let names = coordinate_names(spec.m);
            let mut entries = Vec::new();
            for (key, text) in &spec.coefficients {
                let tuple = parse_tuple(key).ok_or_else(|| DocumentError::BadTuple {
                    item: item.clone(),
                    key: key.clone(),
                })?;
                let poly = in_item(&item, {
                    let expr = Expr::parse(text).map_err(DocumentError::from)?;
                    Poly::from_expr(&expr, &names).map_err(DocumentError::from)
                })?;
                entries.push((tuple, poly));
            }
            let field = in_item(
                &item,
                ClassicalTensorField::new(spec.n, spec.m, entries).map_err(DocumentError::from),
            )?;
            fields.insert(name, field);
        }

        let mut points = BTreeMap::new();
        for (name, spec) in raw.points {
            let item = format!("points.{name}");
            let algebra = algebras.get(&spec.algebra).cloned().ok_or_else(|| {
                DocumentError::UnknownAlgebra {
                    item: item.clone(),
                    name: spec.algebra.clone(),
                }
            })?;
            let coords = spec
                .coords
                .iter()
                .map(|text| in_item(&item, parse_element(&algebra, text)))
                .collect::<Result<Vec<_>, _>>()?;
            let point = in_item(&item, WPoint::new(algebra, coords).map_err(DocumentError::from))?;
            points.insert(name, point);
        }

        Ok(Document {
            algebras,
            homs: raw.homs,
            carve_maps,
            smooth_maps,
            fields,
            points,
        })
    }

    /// Resolve and validate one named hom. Validation failures (an image
    /// that breaks a source relation) come back as errors for the caller to
    /// report; they are not parse failures.
    pub fn build_hom(&self, name: &str) -> Result<AlgebraHom, DocumentError> {
        let spec = self
            .homs
            .get(name)
            .ok_or_else(|| DocumentError::UnknownAlgebra {
                item: format!("homs.{name}"),
                name: name.to_string(),
            })?;
        let source = self.algebras.get(&spec.source).cloned().ok_or_else(|| {
            DocumentError::UnknownAlgebra {
                item: format!("homs.{name}"),
                name: spec.source.clone(),
            }
        })?;
        let target = self.algebras.get(&spec.target).cloned().ok_or_else(|| {
            DocumentError::UnknownAlgebra {
                item: format!("homs.{name}"),
                name: spec.target.clone(),
            }
        })?;
        let images = spec
            .images
            .iter()
            .map(|text| parse_element(&target, text))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraHom::new(source, target, images)?)
    }

    /// The document every command falls back to when no input file is
    /// given: a small zoo of algebras, maps, fields, and points that
    /// exercises each subsystem.
    pub fn builtin() -> Document {
        Document::from_json(BUILTIN_DOCUMENT).expect("builtin document parses")
    }
}

pub const BUILTIN_DOCUMENT: &str = r#"{
  "version": "1",
  "algebras": {
    "k": { "generators": [], "relations": [] },
    "W_D": { "generators": ["X"], "relations": ["X^2"] },
    "W_D(2)": { "generators": ["X", "Y"], "relations": ["X^2", "Y^2", "X*Y"] },
    "W_DxD": { "generators": ["X1", "X2"], "relations": ["X1^2", "X2^2"] },
    "W_D3": { "generators": ["X1", "X2", "X3"], "relations": ["X1^2", "X2^2", "X3^2"] },
    "W_C3": { "generators": ["X"], "relations": ["X^3"] }
  },
  "homs": {
    "diagonal-pullback": { "source": "W_D(2)", "target": "W_D", "images": ["X", "X"] },
    "first-leg-pullback": { "source": "W_D(2)", "target": "W_D", "images": ["X", "0"] },
    "collapse": { "source": "W_DxD", "target": "W_D", "images": ["X", "X"] },
    "base-point": { "source": "W_D", "target": "k", "images": ["0"] }
  },
  "carve_maps": {
    "diagonal": { "source": "D", "target": "D(2)", "components": ["d", "d"] },
    "swap": { "source": "D^2", "target": "D^2", "components": ["d2", "d1"] },
    "line-scale": { "source": "R x D", "target": "D", "components": ["r*d"] }
  },
  "smooth_maps": {
    "square-shift": { "domain": 2, "components": ["x1^2 + x2", "x1*x2"] },
    "cube": { "domain": 1, "components": ["x1^3"] },
    "twist": { "domain": 3, "components": ["x2*x3", "x1 - x3", "x1*x1*x2"] }
  },
  "fields": {
    "x-dy": { "n": 1, "m": 2, "coefficients": { "2": "x1" } },
    "y-dx": { "n": 1, "m": 2, "coefficients": { "1": "x2" } },
    "mixed-1-form": {
      "n": 1, "m": 3,
      "coefficients": { "1": "x2*x3", "2": "x1^2", "3": "x1 + x2" }
    },
    "area-weighted": {
      "n": 2, "m": 3,
      "coefficients": { "1,2": "x3", "1,3": "-x2", "2,3": "x1*x2" }
    },
    "potential": { "n": 0, "m": 3, "coefficients": { "": "x1*x2*x3" } }
  },
  "points": {
    "p-line": { "algebra": "W_D", "coords": ["1 + 2*X"] },
    "p-pair": { "algebra": "W_D(2)", "coords": ["1 + X - Y", "3 + 2*Y"] },
    "p-order3": { "algebra": "W_C3", "coords": ["2 + X + 1/2*X^2"] }
  }
}
"#;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn builtin_document_parses_and_validates() {
        let doc = Document::builtin();
        assert_eq!(doc.algebras.len(), 6);
        assert_eq!(doc.algebras["W_D(2)"].dimension().unwrap(), 3);
        assert_eq!(doc.carve_maps.len(), 3);
        assert_eq!(doc.fields.len(), 5);
        assert_eq!(doc.points["p-line"].coords()[0].coeff(&Monomial::unit(1)), int(1));
        for name in doc.homs.keys() {
            doc.build_hom(name).unwrap();
        }
    }

    #[test]
    fn sabotaged_homs_fail_lazily() {
        let text = r#"{
            "version": "1",
            "algebras": { "W_D": { "generators": ["X"], "relations": ["X^2"] } },
            "homs": { "shift": { "source": "W_D", "target": "W_D", "images": ["X + 1"] } }
        }"#;
        let doc = Document::from_json(text).expect("parse succeeds, validation is lazy");
        match doc.build_hom("shift").unwrap_err() {
            DocumentError::Hom(HomError::RelationViolated { relation, .. }) => {
                assert_eq!(relation, "X^2");
            }
            other => panic!("expected a relation violation, got {other}"),
        }
    }

    #[test]
    fn bad_inputs_are_positioned() {
        let text = r#"{
            "version": "1",
            "algebras": { "A": { "generators": ["X"], "relations": ["X + 1"] } }
        }"#;
        match Document::from_json(text).unwrap_err() {
            DocumentError::BadRelation { item, .. } => assert_eq!(item, "algebras.A"),
            other => panic!("expected a relation diagnostic, got {other}"),
        }

        let text = r#"{
            "version": "1",
            "fields": { "F": { "n": 1, "m": 2, "coefficients": { "5": "x1" } } }
        }"#;
        match Document::from_json(text).unwrap_err() {
            DocumentError::Item { item, source } => {
                assert_eq!(item, "fields.F");
                assert!(matches!(*source, DocumentError::Form(FormError::IndexRange { .. })));
            }
            other => panic!("expected a positioned field error, got {other}"),
        }

        assert!(matches!(
            Document::from_json(r#"{ "version": "7" }"#).unwrap_err(),
            DocumentError::Version(v) if v == "7"
        ));
    }

    #[test]
    fn spaces_parse_by_shape() {
        assert_eq!(parse_space("D").unwrap().coordinate_count(), 1);
        assert_eq!(parse_space("D^3").unwrap().coordinate_count(), 3);
        assert_eq!(parse_space("R x D^2").unwrap().coordinate_count(), 3);
        assert_eq!(parse_space("D(2)").unwrap().algebra().dimension().unwrap(), 3);
        assert!(parse_space("Q^2").is_none());
    }
}
