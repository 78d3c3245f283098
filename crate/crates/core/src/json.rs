//! JSON documents for lattices, complexes and points.
//!
//! Rationals travel as lowest-terms strings (`"2/3"`, `"1"`), so every
//! document is exact and byte-stable.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::rational::{self, Rational};
use crate::realization::{to_function, BarycentricForm, RealizationPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeDoc {
    /// Canonical document: elements in index order, covers sorted by index.
    pub fn from_lattice(lattice: &FiniteLattice) -> Self {
        LatticeDoc {
            elements: lattice.labels().to_vec(),
            covers: lattice
                .covers()
                .into_iter()
                .map(|(x, y)| (lattice.label(x).to_owned(), lattice.label(y).to_owned()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_covers(&self.elements, &self.covers)
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    serde_json::from_str::<LatticeDoc>(text)?.build()
}

pub fn lattice_to_json(lattice: &FiniteLattice) -> String {
    to_pretty(&LatticeDoc::from_lattice(lattice))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexDoc {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexDoc {
            vertices: complex.vertices().to_vec(),
            facets: complex.facets().to_vec(),
        }
    }

    pub fn build(self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices, self.facets)
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    serde_json::from_str::<ComplexDoc>(text)?.build()
}

pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    to_pretty(&ComplexDoc::from_complex(complex))
}

/// `{"chain": [...], "weights": ["p/q", ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarycentricDoc {
    pub chain: Vec<String>,
    pub weights: Vec<String>,
}

impl BarycentricDoc {
    pub fn from_form(lattice: &FiniteLattice, form: &BarycentricForm) -> Self {
        BarycentricDoc {
            chain: form.chain().iter().map(|&x| lattice.label(x).to_owned()).collect(),
            weights: form.weights().iter().map(rational::format).collect(),
        }
    }

    pub fn from_point(lattice: &FiniteLattice, point: &RealizationPoint) -> Self {
        Self::from_form(lattice, &point.barycentric(lattice))
    }

    pub fn build(&self, lattice: &FiniteLattice) -> Result<BarycentricForm> {
        let chain = self
            .chain
            .iter()
            .map(|label| lattice.element(label))
            .collect::<Result<Vec<_>>>()?;
        let weights = self
            .weights
            .iter()
            .map(|w| rational::parse(w))
            .collect::<Result<Vec<_>>>()?;
        BarycentricForm::new(lattice, chain, weights)
    }
}

/// `{"values": {"label": "p/q", ...}}` with keys in lattice order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDoc {
    pub values: Vec<(String, String)>,
}

impl Serialize for FunctionDoc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Values<'a>(&'a [(String, String)]);
        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("values", &Values(&self.values))?;
        map.end()
    }
}

impl FunctionDoc {
    pub fn from_point(lattice: &FiniteLattice, point: &RealizationPoint) -> Self {
        FunctionDoc {
            values: lattice
                .elements()
                .map(|x| (lattice.label(x).to_owned(), rational::format(point.value(x))))
                .collect(),
        }
    }

    /// Values indexed like the lattice; every element must be present once.
    pub fn to_values(&self, lattice: &FiniteLattice) -> Result<Vec<Rational>> {
        let mut values: Vec<Option<Rational>> = vec![None; lattice.len()];
        for (label, text) in &self.values {
            let x = lattice.element(label)?;
            if values[x.index()].replace(rational::parse(text)?).is_some() {
                return Err(Error::Parse(format!("value for `{label}` given twice")));
            }
        }
        values
            .into_iter()
            .zip(lattice.labels())
            .map(|(v, label)| v.ok_or_else(|| Error::Parse(format!("no value for `{label}`"))))
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyPointDoc {
    Barycentric(BarycentricDoc),
    Function {
        values: serde_json::Map<String, serde_json::Value>,
    },
}

/// Which representation to emit for a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PointForm {
    #[default]
    Barycentric,
    Function,
}

/// Accepts either the barycentric or the function document.
pub fn parse_point(lattice: &FiniteLattice, text: &str) -> Result<RealizationPoint> {
    let doc: AnyPointDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("not a point document: {e}")))?;
    match doc {
        AnyPointDoc::Barycentric(doc) => Ok(to_function(lattice, &doc.build(lattice)?)),
        AnyPointDoc::Function { values } => {
            let values = values
                .into_iter()
                .map(|(k, v)| match v {
                    serde_json::Value::String(s) => Ok((k, s)),
                    other => Err(Error::Parse(format!(
                        "value for `{k}` must be a \"p/q\" string, got {other}"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            let values = FunctionDoc { values }.to_values(lattice)?;
            RealizationPoint::new(lattice, values)
        }
    }
}

pub fn point_to_json(lattice: &FiniteLattice, point: &RealizationPoint, form: PointForm) -> String {
    match form {
        PointForm::Barycentric => to_pretty(&BarycentricDoc::from_point(lattice, point)),
        PointForm::Function => to_pretty(&FunctionDoc::from_point(lattice, point)),
    }
}

pub(crate) fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::realization::phi;

    #[test]
    fn lattice_document() {
        let l = FiniteLattice::book(3, 2).unwrap();
        let doc = LatticeDoc::from_lattice(&l);
        assert_eq!(doc.elements, ["0", "a1", "a2", "b1", "1"]);
        let covers: Vec<(&str, &str)> = doc.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        assert_eq!(
            covers,
            [("0", "a1"), ("0", "a2"), ("a1", "b1"), ("a2", "b1"), ("b1", "1")]
        );
        assert_eq!(parse_lattice(&lattice_to_json(&l)).unwrap(), l);
        assert!(matches!(parse_lattice("{\"elements\": [\"0\"]}"), Err(Error::Parse(_))));
        assert!(matches!(parse_lattice("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn complex_document() {
        let k = order_complex(&FiniteLattice::book(2, 2).unwrap());
        let text = complex_to_json(&k);
        assert_eq!(parse_complex(&text).unwrap(), k);
    }

    #[test]
    fn point_documents() {
        let l = FiniteLattice::book(3, 3).unwrap();
        let text = r#"{"chain":["0","b1","1"],"weights":["1/3","1/3","1/3"]}"#;
        let p = parse_point(&l, text).unwrap();
        let f = point_to_json(&l, &p, PointForm::Function);
        let compact: serde_json::Value = serde_json::from_str(&f).unwrap();
        assert_eq!(
            compact.to_string(),
            r#"{"values":{"0":"1","1":"1/3","a1":"2/3","a2":"2/3","a3":"2/3","b1":"2/3"}}"#
        );
        // emitted in lattice order
        assert!(f.find("\"a1\"").unwrap() < f.find("\"1\": ").unwrap());
        assert_eq!(parse_point(&l, &f).unwrap(), p);
        let b = point_to_json(&l, &p, PointForm::Barycentric);
        assert_eq!(parse_point(&l, &b).unwrap(), p);

        let vertex = r#"{"chain":["a2"],"weights":["1"]}"#;
        assert_eq!(parse_point(&l, vertex).unwrap(), phi(&l, l.element("a2").unwrap()));
    }

    #[test]
    fn bad_point_documents() {
        let l = FiniteLattice::book(2, 3).unwrap();
        let missing = r#"{"values":{"0":"1","a1":"1"}}"#;
        assert!(matches!(parse_point(&l, missing), Err(Error::Parse(_))));
        let not_admissible = r#"{"values":{"0":"1","a1":"1","a2":"1","a3":"0","1":"0"}}"#;
        assert_eq!(parse_point(&l, not_admissible), Err(Error::NotAdmissible("1".into())));
        let unknown = r#"{"chain":["zz"],"weights":["1"]}"#;
        assert_eq!(parse_point(&l, unknown), Err(Error::UnknownLabel("zz".into())));
        let numeric = r#"{"values":{"0":1,"a1":"1","a2":"0","a3":"0","1":"0"}}"#;
        assert!(matches!(parse_point(&l, numeric), Err(Error::Parse(_))));
    }
}
