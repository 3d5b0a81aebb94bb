//! Input document schemas.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::CliError;
use crate::cosimplicial::CechInput;
use crate::lie::Generator;
use crate::linalg::rational::{parse_rational, Rational};
use crate::linalg::Matrix;
use crate::presentation::{CohomologyDatum, OpenVarietyDatum};

/// A rational encoded as a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Int(i64),
    Str(String),
}

impl RationalDoc {
    fn value(&self) -> Result<Rational, CliError> {
        match self {
            RationalDoc::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalDoc::Str(s) => parse_rational(s).ok_or_else(|| CliError::Schema(format!("not a rational number: {s:?}"))),
        }
    }
}

fn matrix(rows: &[Vec<RationalDoc>], what: &str) -> Result<Matrix, CliError> {
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Schema(format!("{what}: rows have different lengths")));
    }
    let dense = rows
        .iter()
        .map(|r| r.iter().map(RationalDoc::value).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows.len(), cols, &dense))
}

fn cup_table(cup: &[Vec<Vec<RationalDoc>>]) -> Result<Vec<Vec<Vec<Rational>>>, CliError> {
    cup.iter()
        .map(|slice| {
            slice
                .iter()
                .map(|row| row.iter().map(RationalDoc::value).collect())
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyDoc {
    #[serde(default)]
    pub q: Option<u64>,
    pub h1_dim: usize,
    pub h1_weights: Vec<u32>,
    pub h2_dim: usize,
    pub h2_weights: Vec<u32>,
    pub cup: Vec<Vec<Vec<RationalDoc>>>,
    #[serde(default)]
    pub generator_names: Option<Vec<String>>,
}

impl CohomologyDoc {
    pub fn datum(&self) -> Result<CohomologyDatum, CliError> {
        Ok(CohomologyDatum {
            q: self.q,
            h1_dim: self.h1_dim,
            h1_weights: self.h1_weights.clone(),
            h2_dim: self.h2_dim,
            h2_weights: self.h2_weights.clone(),
            cup: cup_table(&self.cup)?,
            generator_names: self.generator_names.clone(),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenVarietyDoc {
    #[serde(default)]
    pub q: Option<u64>,
    pub h1_compact_dim: usize,
    pub boundary_dim: usize,
    pub h2_dim: usize,
    pub h2_weights: Vec<u32>,
    pub cup: Vec<Vec<Vec<RationalDoc>>>,
    #[serde(default)]
    pub generator_names: Option<Vec<String>>,
}

impl OpenVarietyDoc {
    pub fn datum(&self) -> Result<OpenVarietyDatum, CliError> {
        Ok(OpenVarietyDatum {
            q: self.q,
            h1_compact_dim: self.h1_compact_dim,
            boundary_dim: self.boundary_dim,
            h2_dim: self.h2_dim,
            h2_weights: self.h2_weights.clone(),
            cup: cup_table(&self.cup)?,
            generator_names: self.generator_names.clone(),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub weight: i64,
}

/// The algebra a Frobenius acts on: free on named generators, or the
/// quadratic presentation of a cohomology datum.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default)]
    pub generators: Option<Vec<GeneratorDoc>>,
    #[serde(default)]
    pub presentation: Option<CohomologyDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusDoc {
    #[serde(default)]
    pub q: Option<u64>,
    /// Operator on a plain vector space.
    #[serde(default)]
    pub matrix: Option<Vec<Vec<RationalDoc>>>,
    #[serde(default)]
    pub algebra: Option<AlgebraDoc>,
    /// Operator on the degree-one part of `algebra`.
    #[serde(default)]
    pub degree_one: Option<Vec<Vec<RationalDoc>>>,
    /// Generator names spanning `K`; defaults to the weight -2 generators.
    #[serde(default)]
    pub k: Option<Vec<String>>,
}

pub enum FrobeniusTarget {
    Space(Matrix),
    Algebra {
        generators: Option<Vec<Generator>>,
        presentation: Option<CohomologyDatum>,
        degree_one: Matrix,
        k: Option<Vec<String>>,
    },
}

impl FrobeniusDoc {
    pub fn target(&self) -> Result<FrobeniusTarget, CliError> {
        match (&self.matrix, &self.algebra, &self.degree_one) {
            (Some(m), None, None) => {
                if self.k.is_some() {
                    return Err(CliError::Schema("\"k\" requires \"algebra\"".into()));
                }
                Ok(FrobeniusTarget::Space(matrix(m, "matrix")?))
            }
            (None, Some(a), Some(d)) => {
                let generators = a
                    .generators
                    .as_ref()
                    .map(|g| g.iter().map(|g| Generator::new(g.name.clone(), g.weight)).collect());
                let presentation = a.presentation.as_ref().map(|p| p.datum()).transpose()?;
                if generators.is_some() == presentation.is_some() {
                    return Err(CliError::Schema("\"algebra\" needs exactly one of \"generators\" and \"presentation\"".into()));
                }
                Ok(FrobeniusTarget::Algebra {
                    generators,
                    presentation,
                    degree_one: matrix(d, "degree_one")?,
                    k: self.k.clone(),
                })
            }
            _ => Err(CliError::Schema(
                "a frobenius document needs either \"matrix\" or both \"algebra\" and \"degree_one\"".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionDoc {
    pub simplex: Vec<String>,
    pub dim: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionDoc {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub matrix: Vec<Vec<RationalDoc>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechDoc {
    pub opens: Vec<String>,
    pub sections: Vec<SectionDoc>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionDoc>,
}

impl CechDoc {
    pub fn input(&self) -> Result<CechInput, CliError> {
        let index: BTreeMap<&str, usize> = self.opens.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if index.len() != self.opens.len() {
            return Err(CliError::Schema("open names must be distinct".into()));
        }
        let simplex = |names: &[String]| -> Result<Vec<usize>, CliError> {
            let mut s = names
                .iter()
                .map(|n| index.get(n.as_str()).copied().ok_or_else(|| CliError::Schema(format!("unknown open {n:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(CliError::Schema(format!("repeated open in {names:?}")));
            }
            Ok(s)
        };
        let mut sections = BTreeMap::new();
        for sec in &self.sections {
            if sections.insert(simplex(&sec.simplex)?, sec.dim).is_some() {
                return Err(CliError::Schema(format!("intersection {:?} listed twice", sec.simplex)));
            }
        }
        let mut restrictions = BTreeMap::new();
        for r in &self.restrictions {
            let key = (simplex(&r.from)?, simplex(&r.to)?);
            if restrictions.insert(key, matrix(&r.matrix, "restriction")?).is_some() {
                return Err(CliError::Schema(format!("restriction {:?} -> {:?} listed twice", r.from, r.to)));
            }
        }
        Ok(CechInput {
            opens: self.opens.clone(),
            sections,
            restrictions,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Cohomology(CohomologyDoc),
    OpenVariety(OpenVarietyDoc),
    Frobenius(FrobeniusDoc),
    Cech(CechDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Cohomology(_) => "cohomology",
            Document::OpenVariety(_) => "open_variety",
            Document::Frobenius(_) => "frobenius",
            Document::Cech(_) => "cech",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(format!("invalid document: {e}")))
}
