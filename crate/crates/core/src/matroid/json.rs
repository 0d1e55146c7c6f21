//! JSON form of a matroid: enough to rebuild the oracle exactly.

use serde::{Deserialize, Serialize};

use super::{Kind, Matroid};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::normal_form::{Field, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidJson {
    Uniform {
        ground: Vec<String>,
        rank: usize,
    },
    Linear {
        ground: Vec<String>,
        field: Field,
        /// Row-major entries.
        matrix: Vec<Vec<i64>>,
    },
    Extension {
        ground: Vec<String>,
        base: Box<MatroidJson>,
        /// Every flat of the cut, as base labels.
        cut: Vec<Vec<String>>,
    },
    /// `elements` of `base`, renamed to `ground` in order.
    Restriction {
        ground: Vec<String>,
        base: Box<MatroidJson>,
        elements: Vec<String>,
    },
    Contraction {
        ground: Vec<String>,
        base: Box<MatroidJson>,
        contract: Vec<String>,
    },
    Dual {
        ground: Vec<String>,
        base: Box<MatroidJson>,
    },
    DirectSum {
        ground: Vec<String>,
        parts: [Box<MatroidJson>; 2],
    },
}

impl Matroid {
    pub fn to_json(&self) -> MatroidJson {
        let ground = self.labels().to_vec();
        match self.kind() {
            Kind::Uniform { rank } => MatroidJson::Uniform { ground, rank: *rank },
            Kind::Linear(l) => MatroidJson::Linear { ground, field: l.field(), matrix: l.matrix().rows_vec() },
            Kind::Extension { base, cut, .. } => MatroidJson::Extension {
                ground,
                base: Box::new(base.to_json()),
                cut: cut.iter().map(|&f| base.labels_of(f)).collect(),
            },
            Kind::Restriction { base, map } => MatroidJson::Restriction {
                ground,
                base: Box::new(base.to_json()),
                elements: map.iter().map(|&i| base.label(i).to_string()).collect(),
            },
            Kind::Contraction { base, contracted, .. } => MatroidJson::Contraction {
                ground,
                base: Box::new(base.to_json()),
                contract: base.labels_of(*contracted),
            },
            Kind::Dual { base } => MatroidJson::Dual { ground, base: Box::new(base.to_json()) },
            Kind::DirectSum { left, right } => {
                MatroidJson::DirectSum { ground, parts: [Box::new(left.to_json()), Box::new(right.to_json())] }
            }
        }
    }

    pub fn from_json(j: &MatroidJson) -> Result<Matroid> {
        let m = match j {
            MatroidJson::Uniform { ground, rank } => Matroid::uniform_labeled(*rank, ground.clone())?,
            MatroidJson::Linear { ground, field, matrix } => {
                let m =
                    if matrix.is_empty() { IntMatrix::zeros(0, ground.len()) } else { IntMatrix::from_rows(matrix)? };
                Matroid::from_representation(&Representation::new(m, ground.clone(), *field)?)?
            }
            MatroidJson::Extension { ground, base, cut } => {
                let base = Matroid::from_json(base)?;
                let flats = cut.iter().map(|f| base.set_of(f)).collect::<Result<Vec<_>>>()?;
                let label = ground.last().ok_or_else(|| Error::Serialization("empty extension".into()))?;
                crate::extension::ModularCut::new(&base, flats)?.extend(label)?
            }
            MatroidJson::Restriction { ground, base, elements } => {
                let base = Matroid::from_json(base)?;
                let map = elements.iter().map(|l| base.index_of(l)).collect::<Result<Vec<_>>>()?;
                Matroid::build(ground.clone(), Kind::Restriction { base, map })?
            }
            MatroidJson::Contraction { base, contract, .. } => {
                let base = Matroid::from_json(base)?;
                base.contract(base.set_of(contract)?)
            }
            MatroidJson::Dual { base, .. } => Matroid::from_json(base)?.dual(),
            MatroidJson::DirectSum { parts, .. } => {
                Matroid::direct_sum(&Matroid::from_json(&parts[0])?, &Matroid::from_json(&parts[1])?)?
            }
        };
        let ground = match j {
            MatroidJson::Uniform { ground, .. }
            | MatroidJson::Linear { ground, .. }
            | MatroidJson::Extension { ground, .. }
            | MatroidJson::Restriction { ground, .. }
            | MatroidJson::Contraction { ground, .. }
            | MatroidJson::Dual { ground, .. }
            | MatroidJson::DirectSum { ground, .. } => ground,
        };
        if m.labels() != ground.as_slice() {
            return Err(Error::Serialization("ground set does not match the rebuilt matroid".into()));
        }
        Ok(m)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Matroid> {
        let j: MatroidJson = serde_json::from_str(s).map_err(|e| Error::Serialization(e.to_string()))?;
        Matroid::from_json(&j)
    }
}
