//! JSON model documents: structure equations (as a `d` table on the coframe
//! and/or as brackets) plus named forms, endomorphisms, metrics and an
//! optional list of expected outcomes.
//!
//! All numbers that are coefficients are strings `"p"` or `"p/q"`; indices
//! are 1-based integers. Endomorphisms and metrics are lists of rows; column
//! `j` of an endomorphism matrix is the image of `e_j`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{FormDoc, KForm, TangentVector, MAX_DIM};
use crate::lie::{LieAlgebraModel, MetricData};
use crate::linalg::{Endomorphism, Matrix};
use crate::scalar::{format_scalar, parse_scalar, Scalar};

/// `d w_name += coeff · w_i ^ w_j` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

/// `[e_i, e_j] += coeff · e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketTerm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VaismanOutcome {
    Vaisman,
    Kahler,
    Neither,
}

/// A check a document expects to hold, with the expected result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum Expectation {
    ContactPair {
        alpha: String,
        beta: String,
        h: usize,
        k: usize,
        is_pair: bool,
    },
    Reeb {
        alpha: String,
        beta: String,
        a: TangentVector,
        b: TangentVector,
    },
    PairToLcs {
        alpha: String,
        beta: String,
        omega: String,
        theta: String,
    },
    LcsToPair {
        omega: String,
        x: TangentVector,
        alpha: String,
        beta: String,
    },
    GeneralizedFamily {
        alpha: String,
        beta: String,
        excluded: Vec<String>,
    },
    Integrable {
        j: String,
        integrable: bool,
    },
    Normal {
        alpha: String,
        beta: String,
        j: String,
        g: String,
        normal: bool,
    },
    Vaisman {
        j: String,
        g: String,
        outcome: VaismanOutcome,
    },
    SymplecticPair {
        w1: String,
        w2: String,
        valid: bool,
    },
    KahlerPair {
        w1: String,
        w2: String,
        j: String,
        valid: bool,
    },
    /// `R` generates a circle action preserving `α`, `β`, `J` and `g`.
    CircleAction {
        r: String,
        alpha: String,
        beta: String,
        j: String,
        g: String,
    },
}

type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coframe: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<BTreeMap<String, Vec<DifferentialTerm>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<BracketTerm>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, FormDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub endomorphisms: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expectations: Vec<Expectation>,
}

fn doc_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_at(text: &str, path: &str) -> Result<Scalar> {
    parse_scalar(text).map_err(|e| doc_err(path, e.to_string()))
}

fn index_at(i: usize, n: usize, path: &str) -> Result<usize> {
    if i == 0 || i > n {
        return Err(doc_err(path, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn matrix_at(rows: &MatrixDoc, n: usize, path: &str) -> Result<Matrix> {
    if rows.len() != n {
        return Err(doc_err(path, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(doc_err(format!("{path}[{r}]"), format!("expected {n} entries, found {}", row.len())));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(c, s)| parse_at(s, &format!("{path}[{r}][{c}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(out)
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows().iter().map(|r| r.iter().map(format_scalar).collect()).collect()
}

impl ModelDocument {
    /// Parses JSON; structural errors carry the JSON path of the offending value.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            doc_err(if path == "." { "$".to_string() } else { path }, e.into_inner().to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Validates and converts into a [`ModelBundle`].
    pub fn to_bundle(&self) -> Result<ModelBundle> {
        let n = self.dimension;
        if n == 0 || n > MAX_DIM {
            return Err(doc_err("dimension", format!("dimension must be in 1..={MAX_DIM}")));
        }
        let coframe = match &self.coframe {
            Some(names) => {
                if names.len() != n {
                    return Err(doc_err("coframe", format!("expected {n} names, found {}", names.len())));
                }
                for (a, name) in names.iter().enumerate() {
                    if names[..a].contains(name) {
                        return Err(doc_err(format!("coframe[{a}]"), format!("duplicate name {name:?}")));
                    }
                }
                names.clone()
            }
            None => (1..=n).map(|i| format!("w{i}")).collect(),
        };

        let from_d = match &self.d {
            Some(table) => {
                let mut d = vec![KForm::zero(n, 2); n];
                for (name, terms) in table {
                    let k = coframe
                        .iter()
                        .position(|c| c == name)
                        .ok_or_else(|| doc_err(format!("d.{name}"), format!("{name:?} is not a coframe name")))?;
                    for (t, term) in terms.iter().enumerate() {
                        let at = |f: &str| format!("d.{name}[{t}].{f}");
                        let i = index_at(term.i, n, &at("i"))?;
                        let j = index_at(term.j, n, &at("j"))?;
                        if i >= j {
                            return Err(doc_err(at("j"), "requires i < j"));
                        }
                        let c = parse_at(&term.coeff, &at("coeff"))?;
                        d[k] = d[k].checked_add(&KForm::monomial(n, &[i, j], c)?)?;
                    }
                }
                Some(LieAlgebraModel::from_differentials(&d)?)
            }
            None => None,
        };
        let from_brackets = match &self.brackets {
            Some(terms) => {
                let mut entries = Vec::with_capacity(terms.len());
                for (t, term) in terms.iter().enumerate() {
                    let at = |f: &str| format!("brackets[{t}].{f}");
                    let i = index_at(term.i, n, &at("i"))?;
                    let j = index_at(term.j, n, &at("j"))?;
                    let k = index_at(term.k, n, &at("k"))?;
                    if i == j {
                        return Err(doc_err(at("j"), "bracket of a basis vector with itself"));
                    }
                    entries.push((i, j, k, parse_at(&term.coeff, &at("coeff"))?));
                }
                Some(LieAlgebraModel::from_brackets(n, entries)?)
            }
            None => None,
        };
        let model = match (from_d, from_brackets) {
            (None, None) => return Err(doc_err("$", "one of \"d\" or \"brackets\" is required")),
            (Some(m), None) | (None, Some(m)) => m,
            (Some(a), Some(b)) => {
                if a != b {
                    let (i, j, k) = first_difference(&a, &b);
                    return Err(doc_err(
                        "brackets",
                        format!("disagrees with \"d\" at c^{}_{}{}", k + 1, i + 1, j + 1),
                    ));
                }
                a
            }
        };
        let model = match &self.name {
            Some(name) => model.with_name(name.clone()),
            None => model,
        };

        let forms = self
            .forms
            .iter()
            .map(|(name, f)| Ok((name.clone(), f.to_form(n, &format!("forms.{name}"))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let endomorphisms = self
            .endomorphisms
            .iter()
            .map(|(name, m)| Ok((name.clone(), Endomorphism::new(matrix_at(m, n, &format!("endomorphisms.{name}"))?)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let metrics = self
            .metrics
            .iter()
            .map(|(name, m)| {
                let path = format!("metrics.{name}");
                let g = MetricData::new(matrix_at(m, n, &path)?).map_err(|e| doc_err(&path, e.to_string()))?;
                Ok((name.clone(), g))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;

        Ok(ModelBundle {
            name: self.name.clone(),
            description: self.description.clone(),
            notes: self.notes.clone(),
            coframe,
            model,
            forms,
            endomorphisms,
            metrics,
            expectations: self.expectations.clone(),
        })
    }
}

fn first_difference(a: &LieAlgebraModel, b: &LieAlgebraModel) -> (usize, usize, usize) {
    let n = a.dim();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if a.structure_constant(i, j, k) != b.structure_constant(i, j, k) {
                    return (i, j, k);
                }
            }
        }
    }
    (0, 0, 0)
}

/// A validated model with its named attachments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelBundle {
    pub name: Option<String>,
    pub description: Option<String>,
    pub notes: Option<String>,
    pub coframe: Vec<String>,
    pub model: LieAlgebraModel,
    pub forms: BTreeMap<String, KForm>,
    pub endomorphisms: BTreeMap<String, Endomorphism>,
    pub metrics: BTreeMap<String, MetricData>,
    pub expectations: Vec<Expectation>,
}

impl ModelBundle {
    pub fn from_json(text: &str) -> Result<Self> {
        ModelDocument::from_json(text)?.to_bundle()
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    /// A named form, falling back to coframe names (`w3` is the third basis one-form).
    pub fn form(&self, name: &str) -> Result<KForm> {
        if let Some(f) = self.forms.get(name) {
            return Ok(f.clone());
        }
        if let Some(k) = self.coframe.iter().position(|c| c == name) {
            return Ok(KForm::basis(self.dim(), k));
        }
        Err(Error::UnknownName {
            kind: "form",
            name: name.to_string(),
        })
    }

    pub fn endomorphism(&self, name: &str) -> Result<Endomorphism> {
        self.endomorphisms.get(name).cloned().ok_or_else(|| Error::UnknownName {
            kind: "endomorphism",
            name: name.to_string(),
        })
    }

    pub fn metric(&self, name: &str) -> Result<MetricData> {
        self.metrics.get(name).cloned().ok_or_else(|| Error::UnknownName {
            kind: "metric",
            name: name.to_string(),
        })
    }

    /// Parses `"0,0,1,0"` or a basis name `"e3"`.
    pub fn vector(&self, text: &str) -> Result<TangentVector> {
        let n = self.dim();
        if let Some(rest) = text.strip_prefix('e') {
            if let Ok(i) = rest.parse::<usize>() {
                if i == 0 || i > n {
                    return Err(Error::IndexOutOfRange { index: i, dim: n });
                }
                return Ok(TangentVector::basis(n, i - 1));
            }
        }
        let v = TangentVector::parse(text)?;
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        Ok(v)
    }

    pub fn with_form(mut self, name: impl Into<String>, form: KForm) -> Self {
        self.forms.insert(name.into(), form);
        self
    }

    /// Serializes back to a document with a `d` table.
    pub fn to_document(&self) -> ModelDocument {
        let n = self.dim();
        let mut d = BTreeMap::new();
        for k in 0..n {
            let dk = self.model.coframe_differential(k);
            if dk.is_zero() {
                continue;
            }
            let terms = dk
                .terms()
                .filter(|(_, c)| !c.is_zero())
                .map(|(t, c)| {
                    let idx = t.indices();
                    DifferentialTerm {
                        i: idx[0] + 1,
                        j: idx[1] + 1,
                        coeff: format_scalar(c),
                    }
                })
                .collect();
            d.insert(self.coframe[k].clone(), terms);
        }
        let default_coframe: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
        ModelDocument {
            name: self.name.clone(),
            description: self.description.clone(),
            notes: self.notes.clone(),
            dimension: n,
            coframe: (self.coframe != default_coframe).then(|| self.coframe.clone()),
            d: Some(d),
            brackets: None,
            forms: self.forms.iter().map(|(k, f)| (k.clone(), FormDoc::from(f))).collect(),
            endomorphisms: self.endomorphisms.iter().map(|(k, e)| (k.clone(), matrix_doc(e.matrix()))).collect(),
            metrics: self.metrics.iter().map(|(k, g)| (k.clone(), matrix_doc(g.matrix()))).collect(),
            expectations: self.expectations.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    const NIL: &str = r#"{
        "name": "nil",
        "dimension": 4,
        "d": { "w3": [ { "i": 1, "j": 2, "coeff": "-1" } ] },
        "brackets": [ { "i": 1, "j": 2, "k": 3, "coeff": "1" } ],
        "forms": { "alpha": { "degree": 1, "terms": [ { "indices": [3], "coeff": "1" } ] } },
        "endomorphisms": { "J": [["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]] },
        "metrics": { "g": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]] }
    }"#;

    #[test]
    fn parses_and_cross_checks() {
        let b = ModelBundle::from_json(NIL).unwrap();
        assert_eq!(b.model.bracket_basis(0, 1), TangentVector::basis(4, 2));
        assert_eq!(b.form("alpha").unwrap(), KForm::basis(4, 2));
        assert_eq!(b.form("w4").unwrap(), KForm::basis(4, 3));
        assert_eq!(b.endomorphism("J").unwrap().apply(&TangentVector::basis(4, 0)).unwrap(), TangentVector::basis(4, 1));
        assert_eq!(b.vector("e3").unwrap(), TangentVector::basis(4, 2));
        assert_eq!(b.vector("0,0,1/2,0").unwrap().components()[2], crate::scalar::ratio(1, 2));
        assert!(matches!(b.form("nope"), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn mismatched_brackets_are_rejected() {
        let text = NIL.replace(r#""k": 3, "coeff": "1""#, r#""k": 3, "coeff": "2""#);
        let err = ModelBundle::from_json(&text).unwrap_err();
        assert!(matches!(err, Error::Document { ref path, .. } if path == "brackets"), "{err}");
    }

    #[test]
    fn malformed_coefficients_carry_positions() {
        let text = NIL.replace(r#""coeff": "-1""#, r#""coeff": "1.5""#);
        let err = ModelBundle::from_json(&text).unwrap_err();
        assert!(err.to_string().starts_with("d.w3[0].coeff"), "{err}");
        let text = NIL.replace(r#"["0","0","0","1"]]"#, r#"["0","0","0","1/0"]]"#);
        let err = ModelBundle::from_json(&text).unwrap_err();
        assert!(err.to_string().starts_with("metrics.g[3][3]"), "{err}");
        let err = ModelBundle::from_json(r#"{"dimension": "four"}"#).unwrap_err();
        assert!(err.to_string().starts_with("dimension"), "{err}");
    }

    #[test]
    fn requires_structure() {
        let err = ModelBundle::from_json(r#"{"dimension": 2}"#).unwrap_err();
        assert!(err.to_string().contains("\"d\""));
    }

    #[test]
    fn metrics_are_validated() {
        let text = NIL.replace(r#"["1","0","0","0"],["0","1""#, r#"["1","0","0","0"],["0","-1""#);
        let err = ModelBundle::from_json(&text).unwrap_err();
        assert!(err.to_string().starts_with("metrics.g"), "{err}");
    }

    #[test]
    fn export_round_trip() {
        let b = ModelBundle::from_json(NIL).unwrap();
        let doc = b.to_document();
        assert!(doc.brackets.is_none());
        let again = ModelBundle::from_json(&doc.to_json()).unwrap();
        assert_eq!(again, b);
        assert_eq!(again.model.structure_constant(0, 1, 2), &int(1));
    }
}
