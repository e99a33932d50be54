//! The JSON module exchange format.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::module::{adapt, Module, RawModule};
use crate::error::{Error, Result};
use crate::exactla::SparseMat;
use crate::galg::GradedAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Serialize, Deserialize)]
pub struct ModuleJson {
    /// Reference to the algebra file, resolved by the caller.
    pub algebra: String,
    pub side: Side,
    pub weights: Vec<i32>,
    /// `basis name -> [[row, col, c], ...]`.
    pub action: BTreeMap<String, Vec<[i64; 3]>>,
}

impl ModuleJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }
}

fn matrix(alg: &GradedAlgebra, n: usize, name: &str, entries: &[[i64; 3]]) -> Result<SparseMat> {
    let f = alg.field();
    let mut trips = Vec::with_capacity(entries.len());
    for &[r, c, x] in entries {
        if r < 0 || c < 0 || r as usize >= n || c as usize >= n {
            return Err(Error::Parse(format!("action of {name}: entry [{r},{c}] out of range")));
        }
        trips.push((r as usize, c as usize, f.reduce(x)));
    }
    Ok(SparseMat::from_triplets(f, n, n, &trips))
}

/// Build a module over `alg` (left side) or over its opposite (right
/// side). Every generator must have an action; actions given for other
/// basis elements are checked against the generated ones.
pub fn module_from_json(doc: &ModuleJson, alg: &Arc<GradedAlgebra>) -> Result<Module> {
    let over = match doc.side {
        Side::Left => alg.clone(),
        Side::Right => alg.opposite(),
    };
    let n = doc.weights.len();
    let names = over.names();
    for name in doc.action.keys() {
        if !names.contains(name) {
            return Err(Error::Parse(format!("action given for unknown basis element {name:?}")));
        }
    }
    let mut acts = Vec::with_capacity(over.gens().len());
    for &g in over.gens() {
        let name = &names[g];
        let entries = doc
            .action
            .get(name)
            .ok_or_else(|| Error::Parse(format!("missing action of generator {name:?}")))?;
        acts.push(matrix(&over, n, name, entries)?);
    }
    let (m, change) = adapt(RawModule {
        alg: over.clone(),
        weights: doc.weights.clone(),
        acts,
    })?;
    // other listed elements must agree with the generated action
    let back = change.to_dense().inverse().ok_or_else(|| Error::Internal("singular basis change".into()))?;
    let back = SparseMat::from_dense(&back);
    for (name, entries) in &doc.action {
        let k = names.iter().position(|x| x == name).unwrap();
        let given = matrix(&over, n, name, entries)?;
        let derived = change.compose(&m.act_basis(k)).compose(&back);
        if !derived.add_scaled(&given, over.field().neg(1)).is_zero() {
            return Err(Error::ModuleAxiom(format!(
                "action of {name:?} disagrees with the one generated by the generators"
            )));
        }
    }
    Ok(m)
}

/// Serialize with the action of every basis element.
pub fn module_to_json(m: &Module, algebra_ref: &str) -> String {
    let alg = m.alg();
    let side = if alg.is_opposite() { Side::Right } else { Side::Left };
    let mut action = BTreeMap::new();
    for (k, name) in alg.names().iter().enumerate() {
        let a = m.act_basis(k);
        let entries: Vec<[i64; 3]> = a.triplets().into_iter().map(|(r, c, x)| [r as i64, c as i64, x as i64]).collect();
        action.insert(name.clone(), entries);
    }
    let doc = ModuleJson {
        algebra: algebra_ref.into(),
        side,
        weights: m.weights().to_vec(),
        action,
    };
    serde_json::to_string_pretty(&doc).expect("module serializes")
}
