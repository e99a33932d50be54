use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rectangular window of homological degrees and weight shifts, inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub i: (i32, i32),
    pub m: (i32, i32),
}

impl Window {
    pub fn new(i: (i32, i32), m: (i32, i32)) -> Self {
        Window { i, m }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.i.0..=self.i.1
    }

    pub fn shifts(&self) -> std::ops::RangeInclusive<i32> {
        self.m.0..=self.m.1
    }

    pub fn contains(&self, i: i32, m: i32) -> bool {
        self.degrees().contains(&i) && self.shifts().contains(&m)
    }

    /// Parse `"lo:hi"`.
    pub fn parse_range(s: &str) -> Result<(i32, i32)> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("range {s:?} is not of the form lo:hi")))?;
        let lo: i32 = a.trim().parse().map_err(|_| Error::Parse(format!("bad bound {a:?}")))?;
        let hi: i32 = b.trim().parse().map_err(|_| Error::Parse(format!("bad bound {b:?}")))?;
        if lo > hi {
            return Err(Error::Parse(format!("empty range {s:?}")));
        }
        Ok((lo, hi))
    }
}

/// One computed dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub i: i32,
    pub m: i32,
    pub dim: usize,
    pub certified: bool,
}

/// Dimensions indexed by `(i, m)`. Entries outside the computed window are
/// absent rather than zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub entries: BTreeMap<(i32, i32), Entry>,
}

impl ExtTable {
    pub fn insert(&mut self, e: Entry) {
        self.entries.insert((e.i, e.m), e);
    }

    pub fn get(&self, i: i32, m: i32) -> Option<&Entry> {
        self.entries.get(&(i, m))
    }

    pub fn dim(&self, i: i32, m: i32) -> Option<usize> {
        self.get(i, m).map(|e| e.dim)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn all_certified(&self) -> bool {
        self.entries.values().all(|e| e.certified)
    }

    /// Sum of all dimensions.
    pub fn total(&self) -> usize {
        self.entries.values().map(|e| e.dim).sum()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = Entry>) -> Self {
        let mut t = ExtTable::default();
        for e in entries {
            t.insert(e);
        }
        t
    }

    /// First `(i, m)` where two tables disagree on the shared window; `None`
    /// when they agree. Errors if no entry is shared.
    pub fn first_mismatch(&self, other: &ExtTable) -> Result<Option<(Entry, Entry)>> {
        let mut shared = 0;
        for (k, a) in &self.entries {
            if let Some(b) = other.entries.get(k) {
                shared += 1;
                if a.dim != b.dim {
                    return Ok(Some((*a, *b)));
                }
            }
        }
        if shared == 0 {
            return Err(Error::Incompatible("tables have disjoint windows".into()));
        }
        Ok(None)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,m,dim,certified\n");
        for e in self.entries.values() {
            s.push_str(&format!("{},{},{},{}\n", e.i, e.m, e.dim, e.certified));
        }
        s
    }
}

/// Serialized result file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub algebra: String,
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Y")]
    pub y: String,
    pub engine: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub entries: Vec<Entry>,
}

impl ResultDoc {
    pub fn new(algebra: &str, x: &str, y: &str, engine: &str, seed: Option<u64>, t: &ExtTable) -> Self {
        ResultDoc {
            algebra: algebra.into(),
            x: x.into(),
            y: y.into(),
            engine: engine.into(),
            seed,
            entries: t.iter().copied().collect(),
        }
    }

    pub fn table(&self) -> ExtTable {
        ExtTable::from_entries(self.entries.iter().copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_and_roundtrip() {
        let a = ExtTable::from_entries([
            Entry { i: 0, m: 0, dim: 1, certified: true },
            Entry { i: 1, m: 0, dim: 0, certified: true },
        ]);
        let mut b = a.clone();
        assert_eq!(a.first_mismatch(&b).unwrap(), None);
        b.insert(Entry { i: 1, m: 0, dim: 2, certified: true });
        assert_eq!(a.first_mismatch(&b).unwrap().unwrap().1.dim, 2);
        let c = ExtTable::from_entries([Entry { i: 5, m: 5, dim: 0, certified: true }]);
        assert!(a.first_mismatch(&c).is_err());
        let doc = ResultDoc::new("alg", "k", "k", "ext", Some(7), &a);
        assert_eq!(ResultDoc::from_json(&doc.to_json()).unwrap(), doc);
        assert!(a.to_csv().starts_with("i,m,dim,certified\n0,0,1,true"));
        assert_eq!(Window::parse_range("-6:6").unwrap(), (-6, 6));
        assert!(Window::parse_range("3:1").is_err());
    }
}
