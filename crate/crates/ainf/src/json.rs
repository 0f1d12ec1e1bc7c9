use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{AInfAlgebra, AInfError, AInfModule, Chain, GradedBasis, OpTable, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub inputs: Vec<usize>,
    pub output: Chain,
}

/// Operations keyed by arity ("2") for algebras or by "i,j" for modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub basis: GradedBasis,
    #[serde(default)]
    pub unit: Option<usize>,
    pub ops: BTreeMap<String, Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub name: String,
    pub side: Side,
    pub algebra: AlgebraJson,
    pub basis: GradedBasis,
    pub ops: BTreeMap<String, Vec<Entry>>,
}

fn entries(t: &OpTable) -> Vec<Entry> {
    t.iter().map(|(k, v)| Entry { inputs: k.clone(), output: v.clone() }).collect()
}

impl AInfAlgebra {
    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.name.clone(),
            basis: self.basis().clone(),
            unit: self.unit(),
            ops: self.tables().iter().filter(|(_, t)| !t.is_empty()).map(|(k, t)| (k.to_string(), entries(t))).collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, AInfError> {
        let mut a = AInfAlgebra::new(j.name.clone(), j.basis.clone());
        for (k, list) in &j.ops {
            let arity: usize = k.parse().map_err(|_| AInfError::Json(format!("bad arity {k}")))?;
            for e in list {
                if e.inputs.len() != arity || e.inputs.iter().any(|&i| i >= j.basis.len()) {
                    return Err(AInfError::Json(format!("entry {:?} does not fit mu{arity}", e.inputs)));
                }
                a.set(&e.inputs, e.output.clone())?;
            }
        }
        if let Some(u) = j.unit {
            a.set_unit(u)?;
        }
        Ok(a)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("structures serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, AInfError> {
        let j: AlgebraJson = serde_json::from_str(s).map_err(|e| AInfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

impl AInfModule {
    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            name: self.name.clone(),
            side: self.side(),
            algebra: self.algebra().to_json(),
            basis: self.basis().clone(),
            ops: self.tables().iter().filter(|(_, t)| !t.is_empty()).map(|((i, j), t)| (format!("{i},{j}"), entries(t))).collect(),
        }
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self, AInfError> {
        let algebra = Arc::new(AInfAlgebra::from_json(&j.algebra)?);
        let mut m = AInfModule::new(j.name.clone(), j.side, j.basis.clone(), algebra);
        for (k, list) in &j.ops {
            let (i, jj) = k
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| AInfError::Json(format!("bad operation key {k}")))?;
            for e in list {
                if i == 0 || jj == 0 || e.inputs.len() != i + jj - 1 {
                    return Err(AInfError::Json(format!("entry {:?} does not fit m{i},{jj}", e.inputs)));
                }
                let (left, rest) = e.inputs.split_at(i - 1);
                m.set(left, rest[0], &rest[1..], e.output.clone())?;
            }
        }
        Ok(m)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("structures serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, AInfError> {
        let j: ModuleJson = serde_json::from_str(s).map_err(|e| AInfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}
