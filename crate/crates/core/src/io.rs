//! JSON triangulation documents with exact rational coordinates.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::QPoint;
use crate::error::{Error, Result};
use crate::model::{
    dissection_to_generalized, generalized_to_ct, ConstrainedTriangulation, FanChoice, GeneralizedDissection,
    OrientedTriangle,
};

/// What a document describes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    /// Abstract constrained triangulation; constraints by triangle ids.
    #[default]
    Triangulation,
    /// Classical dissection with points; constraints are derived.
    Dissection,
    /// Generalized dissection with points; constraints by vertex cycles.
    Generalized,
}

impl DocumentKind {
    fn is_default(&self) -> bool {
        *self == DocumentKind::Triangulation
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleDoc {
    pub id: String,
    pub verts: [String; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triangles: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "DocumentKind::is_default")]
    pub kind: DocumentKind,
    pub vertices: Vec<String>,
    pub corners: [String; 4],
    pub triangles: Vec<TriangleDoc>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDoc>,
    /// Vertex id to `["a/b", "c/d"]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<BTreeMap<String, [String; 2]>>,
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::SchemaError {
        path: path.into(),
        msg: msg.into(),
    }
}

/// Parse `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    s.parse::<BigRational>().ok()
}

pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_document(text: &str) -> Result<TriangulationDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(if path == "." { String::new() } else { path }, e.into_inner().to_string())
    })
}

pub fn serialize_document(doc: &TriangulationDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

fn triangles_of(doc: &TriangulationDocument) -> Vec<OrientedTriangle> {
    doc.triangles
        .iter()
        .map(|t| OrientedTriangle {
            id: t.id.clone(),
            verts: t.verts.clone(),
        })
        .collect()
}

impl TriangulationDocument {
    /// Points in vertex order.
    pub fn points_in_order(&self) -> Result<Option<Vec<QPoint>>> {
        let Some(map) = &self.points else {
            return Ok(None);
        };
        for k in map.keys() {
            if !self.vertices.contains(k) {
                return Err(Error::UnknownVertex(k.clone()));
            }
        }
        let mut out = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let [x, y] = map.get(v).ok_or_else(|| schema(format!("points.{v}"), "missing point"))?;
            let coord = |s: &str, i: usize| {
                parse_rational(s).ok_or_else(|| schema(format!("points.{v}[{i}]"), format!("not a rational: {s:?}")))
            };
            out.push((coord(x, 0)?, coord(y, 1)?));
        }
        Ok(Some(out))
    }

    fn require_points(&self) -> Result<Vec<QPoint>> {
        self.points_in_order()?
            .ok_or_else(|| schema("points", format!("required for kind {:?}", self.kind)))
    }

    fn triangle_constraints(&self) -> Result<Vec<Vec<String>>> {
        self.constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if !c.vertices.is_empty() {
                    return Err(schema(format!("constraints[{i}].vertices"), "use triangle ids"));
                }
                Ok(c.triangles.clone())
            })
            .collect()
    }

    /// The generalized dissection a `dissection` or `generalized` document
    /// describes.
    pub fn to_generalized(&self) -> Result<GeneralizedDissection> {
        let points = self.require_points()?;
        let gd = match self.kind {
            DocumentKind::Triangulation => return Err(schema("kind", "not a dissection document")),
            DocumentKind::Dissection => {
                if !self.constraints.is_empty() {
                    return Err(schema("constraints", "derived from points for kind dissection"));
                }
                dissection_to_generalized(&self.name, &self.vertices, &points, &triangles_of(self))?
            }
            DocumentKind::Generalized => {
                let mut constraints = Vec::new();
                for (i, c) in self.constraints.iter().enumerate() {
                    if !c.triangles.is_empty() || c.vertices.is_empty() {
                        return Err(schema(format!("constraints[{i}]"), "give the vertex cycle"));
                    }
                    constraints.push(c.vertices.clone());
                }
                GeneralizedDissection {
                    name: self.name.clone(),
                    vertices: self.vertices.clone(),
                    points,
                    corners: self.corners.clone(),
                    triangles: triangles_of(self),
                    constraints,
                }
            }
        };
        gd.validate()?;
        Ok(gd)
    }

    /// The constrained triangulation, fanning poofagons when needed.
    pub fn to_ct(&self) -> Result<ConstrainedTriangulation> {
        match self.kind {
            DocumentKind::Triangulation => {
                let ct = ConstrainedTriangulation::new(
                    &self.name,
                    &self.vertices,
                    &self.corners,
                    &triangles_of(self),
                    &self.triangle_constraints()?,
                )?;
                self.points_in_order()?;
                Ok(ct)
            }
            _ => generalized_to_ct(&self.to_generalized()?, &FanChoice::LeastVertex),
        }
    }

    pub fn from_ct(ct: &ConstrainedTriangulation, points: Option<&[QPoint]>) -> Self {
        let names = ct.vertex_names();
        TriangulationDocument {
            name: ct.name().to_string(),
            kind: DocumentKind::Triangulation,
            vertices: names.to_vec(),
            corners: ct.corners().map(|c| names[c].clone()),
            triangles: ct
                .oriented_triangles()
                .into_iter()
                .map(|t| TriangleDoc { id: t.id, verts: t.verts })
                .collect(),
            constraints: ct
                .constraint_ids()
                .into_iter()
                .map(|triangles| ConstraintDoc {
                    triangles,
                    vertices: Vec::new(),
                })
                .collect(),
            points: points.map(|pts| point_map(names, pts)),
        }
    }

    pub fn from_generalized(gd: &GeneralizedDissection) -> Self {
        TriangulationDocument {
            name: gd.name.clone(),
            kind: DocumentKind::Generalized,
            vertices: gd.vertices.clone(),
            corners: gd.corners.clone(),
            triangles: gd
                .triangles
                .iter()
                .map(|t| TriangleDoc {
                    id: t.id.clone(),
                    verts: t.verts.clone(),
                })
                .collect(),
            constraints: gd
                .constraints
                .iter()
                .map(|c| ConstraintDoc {
                    triangles: Vec::new(),
                    vertices: c.clone(),
                })
                .collect(),
            points: Some(point_map(&gd.vertices, &gd.points)),
        }
    }
}

fn point_map(names: &[String], pts: &[QPoint]) -> BTreeMap<String, [String; 2]> {
    names
        .iter()
        .zip(pts)
        .map(|(n, (x, y))| (n.clone(), [format_rational(x), format_rational(y)]))
        .collect()
}

/// Parse a document and build its constrained triangulation.
pub fn load_ct(text: &str) -> Result<ConstrainedTriangulation> {
    parse_document(text)?.to_ct()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const DIAG1: &str = r#"{
        "name": "diag1",
        "vertices": ["p", "q", "r", "s", "u"],
        "corners": ["p", "q", "r", "s"],
        "triangles": [
            {"id": "A", "verts": ["p", "q", "u"]},
            {"id": "B", "verts": ["q", "r", "u"]},
            {"id": "C", "verts": ["r", "s", "u"]},
            {"id": "D", "verts": ["s", "p", "u"]}
        ],
        "constraints": []
    }"#;

    #[test]
    fn parses_diag1() {
        let ct = load_ct(DIAG1).unwrap();
        assert_eq!(ct, corpus::diag1());
    }

    #[test]
    fn five_corners_is_a_schema_error_at_corners() {
        let text = DIAG1.replace(r#""corners": ["p", "q", "r", "s"]"#, r#""corners": ["p", "q", "r", "s", "u"]"#);
        match parse_document(&text) {
            Err(Error::SchemaError { path, .. }) => assert_eq!(path, "corners"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors_and_duplicates() {
        let text = DIAG1.replace(r#""id": "B""#, r#""id": "A""#);
        assert_eq!(load_ct(&text), Err(Error::DuplicateId("A".into())));
        let text = DIAG1.replace(r#""name": "diag1","#, r#""name": "diag1", "colour": 1,"#);
        assert!(matches!(parse_document(&text), Err(Error::SchemaError { .. })));
        match parse_document(&DIAG1.replace(r#"["p", "q", "u"]"#, r#"["p", "q"]"#)) {
            Err(Error::SchemaError { path, .. }) => assert_eq!(path, "triangles[0].verts"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_document("[1, 2"), Err(Error::SchemaError { .. })));
    }

    #[test]
    fn ace_has_three_constraints() {
        let text = serialize_document(&TriangulationDocument::from_ct(&corpus::ace(), None));
        let ct = load_ct(&text).unwrap();
        assert_eq!(ct.constraints().len(), 3);
        let mut vs: Vec<Vec<String>> = (0..3).map(|c| ct.constraint_vertex_names(c)).collect();
        vs.sort();
        assert_eq!(vs, [["p", "s", "u"], ["q", "u", "v"], ["r", "s", "v"]]);
    }

    #[test]
    fn corpus_round_trips() {
        for name in corpus::names() {
            let ct = corpus::get(name).unwrap();
            let doc = TriangulationDocument::from_ct(&ct, None);
            let text = serialize_document(&doc);
            assert_eq!(parse_document(&text).unwrap(), doc);
            assert_eq!(doc.to_ct().unwrap(), ct);
        }
    }

    #[test]
    fn rationals_as_strings() {
        let ct = corpus::diag2();
        let pts = corpus::diag2_points();
        let doc = TriangulationDocument::from_ct(&ct, Some(&pts));
        let text = serialize_document(&doc);
        assert!(text.contains(r#""1/4""#));
        let back = parse_document(&text).unwrap();
        assert_eq!(back.points_in_order().unwrap().unwrap(), pts);
        assert_eq!(parse_rational("-3/6"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(BigRational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
    }

    #[test]
    fn generalized_and_dissection_documents() {
        let gd = corpus::ace_generalized();
        let doc = TriangulationDocument::from_generalized(&gd);
        let back = parse_document(&serialize_document(&doc)).unwrap();
        assert_eq!(back.to_generalized().unwrap(), gd);
        assert_eq!(back.to_ct().unwrap().living().len(), 3);

        let (vertices, points, triangles) = corpus::be_dissection();
        let doc = TriangulationDocument {
            name: "be".into(),
            kind: DocumentKind::Dissection,
            vertices: vertices.clone(),
            corners: ["p", "q", "r", "s"].map(String::from),
            triangles: triangles
                .iter()
                .map(|t| TriangleDoc {
                    id: t.id.clone(),
                    verts: t.verts.clone(),
                })
                .collect(),
            constraints: Vec::new(),
            points: Some(point_map(&vertices, &points)),
        };
        let ct = parse_document(&serialize_document(&doc)).unwrap().to_ct().unwrap();
        assert_eq!(ct.constraints().len(), 1);
    }
}
