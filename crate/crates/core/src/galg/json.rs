//! The JSON algebra exchange format.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::algebra::{AlgebraData, GradedAlgebra, TriangularData};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    name: String,
    deg: i32,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    p: u32,
    basis: Vec<BasisEntry>,
    unit: Vec<i64>,
    mult: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tri: Option<TriangularData>,
}

/// Parse and validate an algebra; errors name the offending field.
pub fn algebra_from_json(text: &str) -> Result<Arc<GradedAlgebra>> {
    let raw: AlgebraJson = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    let mut mult = Vec::with_capacity(raw.mult.len());
    for (pos, &[i, j, k, c]) in raw.mult.iter().enumerate() {
        if i < 0 || j < 0 || k < 0 {
            return Err(Error::Parse(format!("mult[{pos}] has a negative index")));
        }
        mult.push((i as usize, j as usize, k as usize, c));
    }
    GradedAlgebra::new(AlgebraData {
        p: raw.p,
        names: raw.basis.iter().map(|b| b.name.clone()).collect(),
        degrees: raw.basis.iter().map(|b| b.deg).collect(),
        mult,
        unit: raw.unit,
        tri: raw.tri,
    })
}

/// Serialize with entries in lexicographic `(i, j, k)` order.
pub fn algebra_to_json(a: &GradedAlgebra) -> String {
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in a.product(i, j) {
                mult.push([i as i64, j as i64, k as i64, c as i64]);
            }
        }
    }
    let raw = AlgebraJson {
        p: a.p(),
        basis: (0..n)
            .map(|i| BasisEntry {
                name: a.names()[i].clone(),
                deg: a.degree(i),
            })
            .collect(),
        unit: a.unit().iter().map(|&c| c as i64).collect(),
        mult,
        tri: a.tri().cloned(),
    };
    serde_json::to_string_pretty(&raw).expect("algebra serializes")
}
