use std::any::Any;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use serde::{Deserialize, Serialize};

use super::radical;
use super::structure::Structure;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Fp, Mat};

/// Index subsets of the parent basis spanning `A^0`, `A^{>=0}` and `A^{<=0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularData {
    pub a0: Vec<usize>,
    pub ge: Vec<usize>,
    pub le: Vec<usize>,
}

/// One of the distinguished pieces of a triangular algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Piece {
    Full,
    Ge,
    Le,
    Zero,
}

/// A spanning set of words in the generators: word `j > 0` equals
/// `gens[letter[j]] * word[parent[j]]` and word `0` is the unit.
#[derive(Clone, Debug)]
pub struct WordBasis {
    pub parent: Vec<usize>,
    pub letter: Vec<usize>,
    pub values: Vec<Vec<u32>>,
    /// `to_words[k]`: coefficients of basis element `k` in the words.
    pub to_words: Vec<Vec<(u32, u32)>>,
}

/// The semisimple base subalgebra used to split modules into eigenspaces.
///
/// Modules over an algebra always carry a basis on which the first `ngens`
/// generators (the ones inside the base) act diagonally by one of the
/// characters below.
#[derive(Clone, Debug)]
pub struct Base {
    pub idx: Vec<usize>,
    pub ngens: usize,
    /// `gen_values[c][g]`: value of character `c` on generator `g < ngens`.
    pub gen_values: Vec<Vec<u32>>,
    /// `basis_values[c][t]`: value of character `c` on `idx[t]`.
    pub basis_values: Vec<Vec<u32>>,
    /// Primitive idempotents as vectors in the algebra basis.
    pub idem: Vec<Vec<u32>>,
    /// False when the degree-zero part is not split commutative semisimple and
    /// the base degenerated to the scalars.
    pub split: bool,
}

impl Base {
    pub fn nchars(&self) -> usize {
        self.idem.len()
    }

    pub fn char_of_gen_values(&self, vals: &[u32]) -> Option<usize> {
        self.gen_values.iter().position(|v| v.as_slice() == vals)
    }
}

/// Finite-dimensional Z-graded unital algebra over a prime field.
pub struct GradedAlgebra {
    s: Structure,
    names: Vec<String>,
    degrees: Vec<i32>,
    tri: Option<TriangularData>,
    gens: Vec<usize>,
    words: WordBasis,
    base: Base,
    pieces: OnceLock<[Arc<GradedAlgebra>; 3]>,
    op_cache: OnceLock<Arc<GradedAlgebra>>,
    op_of: OnceLock<Weak<GradedAlgebra>>,
    memo: Mutex<HashMap<&'static str, Arc<dyn Any + Send + Sync>>>,
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("p", &self.s.field.p())
            .field("dim", &self.s.n)
            .field("gens", &self.gens)
            .finish()
    }
}

/// Raw algebra description before validation.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub p: u32,
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    /// `(i, j, k, c)`: `a_i a_j` has coefficient `c` along `a_k`.
    pub mult: Vec<(usize, usize, usize, i64)>,
    pub unit: Vec<i64>,
    pub tri: Option<TriangularData>,
}

impl GradedAlgebra {
    /// Validate degree additivity, the unit and associativity, then derive
    /// generators, word basis and base subalgebra.
    pub fn new(data: AlgebraData) -> Result<Arc<Self>> {
        let field = Fp::new(data.p)?;
        let n = data.names.len();
        if data.degrees.len() != n || data.unit.len() != n {
            return Err(Error::Parse(format!(
                "basis has {n} names but {} degrees and {} unit coefficients",
                data.degrees.len(),
                data.unit.len()
            )));
        }
        let mut mult: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n * n];
        for &(i, j, k, c) in &data.mult {
            if i >= n || j >= n || k >= n {
                return Err(Error::Parse(format!("mult entry [{i},{j},{k}] out of range")));
            }
            let c = field.reduce(c);
            let slot = &mut mult[i * n + j];
            match slot.iter_mut().find(|e| e.0 as usize == k) {
                Some(e) => e.1 = field.add(e.1, c),
                None => slot.push((k as u32, c)),
            }
        }
        for slot in mult.iter_mut() {
            slot.retain(|e| e.1 != 0);
            slot.sort_by_key(|e| e.0);
        }
        let unit: Vec<u32> = data.unit.iter().map(|&c| field.reduce(c)).collect();
        let s = Structure {
            field,
            n,
            mult,
            unit,
        };
        validate_structure(&s, &data.names, &data.degrees)?;
        if let Some(t) = &data.tri {
            validate_tri(&s, &data.degrees, t)?;
        }
        Self::from_structure(s, data.names, data.degrees, data.tri)
    }

    fn from_structure(
        s: Structure,
        names: Vec<String>,
        degrees: Vec<i32>,
        tri: Option<TriangularData>,
    ) -> Result<Arc<Self>> {
        let base_idx: Vec<usize> = match &tri {
            Some(t) => t.a0.clone(),
            None => (0..s.n).filter(|&i| degrees[i] == 0).collect(),
        };
        let order = scan_order(&s, &degrees, tri.as_ref(), &base_idx);
        let gens = choose_generators(&s, &order);
        let words = word_basis(&s, &gens)?;
        let base = compute_base(&s, &base_idx, &gens)?;
        Ok(Arc::new(GradedAlgebra {
            s,
            names,
            degrees,
            tri,
            gens,
            words,
            base,
            pieces: OnceLock::new(),
            op_cache: OnceLock::new(),
            op_of: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn structure(&self) -> &Structure {
        &self.s
    }
    pub fn field(&self) -> Fp {
        self.s.field
    }
    pub fn p(&self) -> u32 {
        self.s.field.p()
    }
    pub fn dim(&self) -> usize {
        self.s.n
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }
    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }
    pub fn unit(&self) -> &[u32] {
        &self.s.unit
    }
    pub fn tri(&self) -> Option<&TriangularData> {
        self.tri.as_ref()
    }
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }
    pub fn words(&self) -> &WordBasis {
        &self.words
    }
    pub fn base(&self) -> &Base {
        &self.base
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn product(&self, i: usize, j: usize) -> &[(u32, u32)] {
        self.s.product(i, j)
    }
    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        self.s.basis_vec(i)
    }
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.s.mul(a, b)
    }

    /// Degree of a homogeneous element, `None` for zero or inhomogeneous input.
    pub fn degree_of(&self, a: &[u32]) -> Option<i32> {
        let mut d = None;
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                match d {
                    None => d = Some(self.degrees[i]),
                    Some(e) if e != self.degrees[i] => return None,
                    _ => {}
                }
            }
        }
        d
    }

    /// Word coefficients of an arbitrary element.
    pub fn word_coeffs(&self, a: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0u32; self.dim()];
        for (k, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(j, w) in &self.words.to_words[k] {
                out[j as usize] = f.mul_add(out[j as usize], c, w);
            }
        }
        out
    }

    pub fn same_structure(&self, other: &GradedAlgebra) -> bool {
        self.s == other.s && self.degrees == other.degrees
    }

    /// Basis indices spanning a piece.
    pub fn piece_indices(&self, piece: Piece) -> Result<Vec<usize>> {
        if piece == Piece::Full {
            return Ok((0..self.dim()).collect());
        }
        let t = self.tri.as_ref().ok_or(Error::NoTriangular)?;
        Ok(match piece {
            Piece::Ge => t.ge.clone(),
            Piece::Le => t.le.clone(),
            Piece::Zero => t.a0.clone(),
            Piece::Full => unreachable!(),
        })
    }

    /// The piece as a standalone algebra (basis in increasing parent order).
    pub fn piece(self: &Arc<Self>, piece: Piece) -> Result<Arc<GradedAlgebra>> {
        if piece == Piece::Full {
            return Ok(self.clone());
        }
        if self.tri.is_none() {
            return Err(Error::NoTriangular);
        }
        if self.pieces.get().is_none() {
            let mk = |p: Piece| -> Result<Arc<GradedAlgebra>> {
                let idx = self.piece_indices(p)?;
                self.subalgebra(&idx)
            };
            let made = [mk(Piece::Ge)?, mk(Piece::Le)?, mk(Piece::Zero)?];
            let _ = self.pieces.set(made);
        }
        let ps = self.pieces.get().expect("pieces initialised");
        Ok(match piece {
            Piece::Ge => ps[0].clone(),
            Piece::Le => ps[1].clone(),
            Piece::Zero => ps[2].clone(),
            Piece::Full => unreachable!(),
        })
    }

    /// Subalgebra spanned by basis elements `idx` (kept in the given order).
    pub fn subalgebra(&self, idx: &[usize]) -> Result<Arc<GradedAlgebra>> {
        let s = self.s.restrict(idx).map_err(|e| {
            Error::NotSubalgebra(rename(&e, &self.names))
        })?;
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let degrees = idx.iter().map(|&i| self.degrees[i]).collect();
        Self::from_structure(s, names, degrees, None)
    }

    /// Per-algebra cache of derived data, built outside the lock.
    pub fn memo<T: Any + Send + Sync>(
        &self,
        key: &'static str,
        init: impl FnOnce() -> Result<T>,
    ) -> Result<Arc<T>> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(key) {
            return Ok(v.clone().downcast::<T>().expect("memo key reused with another type"));
        }
        let made: Arc<dyn Any + Send + Sync> = Arc::new(init()?);
        let mut guard = self.memo.lock().expect("memo lock");
        let v = guard.entry(key).or_insert(made).clone();
        Ok(v.downcast::<T>().expect("memo key reused with another type"))
    }

    /// The base subalgebra as a standalone algebra. For triangular algebras
    /// this is the degree-zero piece.
    pub fn base_algebra(self: &Arc<Self>) -> Result<Arc<GradedAlgebra>> {
        if self.tri.is_some() {
            return self.piece(Piece::Zero);
        }
        if !self.base.split {
            return Err(Error::UnsupportedSemisimple(
                "the degree-zero part is not split commutative semisimple".into(),
            ));
        }
        let a = self.memo("base_algebra", || self.subalgebra(&self.base.idx))?;
        Ok((*a).clone())
    }

    /// The opposite algebra; `opposite(opposite(A))` is `A` itself.
    /// Whether this algebra was built as the opposite of another one.
    pub fn is_opposite(&self) -> bool {
        self.op_of.get().is_some()
    }

    pub fn opposite(self: &Arc<Self>) -> Arc<GradedAlgebra> {
        if let Some(w) = self.op_of.get() {
            if let Some(a) = w.upgrade() {
                return a;
            }
        }
        self.op_cache
            .get_or_init(|| {
                let op = Self::from_structure(
                    self.s.opposite(),
                    self.names.clone(),
                    self.degrees.clone(),
                    self.tri.clone(),
                )
                .expect("opposite of a valid algebra is valid");
                let _ = op.op_of.set(Arc::downgrade(self));
                op
            })
            .clone()
    }
}

fn rename(msg: &str, names: &[String]) -> String {
    // messages from Structure::restrict use a{index}; print names instead
    let mut out = String::new();
    let mut rest = msg;
    while let Some(pos) = rest.find('a') {
        let (head, tail) = rest.split_at(pos);
        out.push_str(head);
        let digits: String = tail[1..].chars().take_while(|c| c.is_ascii_digit()).collect();
        match digits.parse::<usize>().ok().and_then(|i| names.get(i)) {
            Some(name) => {
                out.push_str(name);
                rest = &tail[1 + digits.len()..];
            }
            None => {
                out.push('a');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn validate_structure(s: &Structure, names: &[String], degrees: &[i32]) -> Result<()> {
    let n = s.n;
    for i in 0..n {
        for j in 0..n {
            for &(k, _) in s.product(i, j) {
                let k = k as usize;
                if degrees[k] != degrees[i] + degrees[j] {
                    return Err(Error::Degree(format!(
                        "{} * {} has a component along {} of degree {} != {}",
                        names[i],
                        names[j],
                        names[k],
                        degrees[k],
                        degrees[i] + degrees[j]
                    )));
                }
            }
        }
    }
    for i in 0..n {
        let e = s.basis_vec(i);
        if s.mul(&s.unit, &e) != e || s.mul(&e, &s.unit) != e {
            return Err(Error::Unit(format!("unit does not fix {}", names[i])));
        }
    }
    let f = s.field;
    for i in 0..n {
        for j in 0..n {
            let ij = s.product(i, j);
            for k in 0..n {
                // (a_i a_j) a_k
                let mut left = vec![0u32; n];
                for &(m, c) in ij {
                    for &(r, d) in s.product(m as usize, k) {
                        left[r as usize] = f.mul_add(left[r as usize], c, d);
                    }
                }
                let mut right = vec![0u32; n];
                for &(m, c) in s.product(j, k) {
                    for &(r, d) in s.product(i, m as usize) {
                        right[r as usize] = f.mul_add(right[r as usize], c, d);
                    }
                }
                if left != right {
                    return Err(Error::Associativity(format!(
                        "({} {}) {} != {} ({} {})",
                        names[i], names[j], names[k], names[i], names[j], names[k]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn validate_tri(s: &Structure, degrees: &[i32], t: &TriangularData) -> Result<()> {
    let n = s.n;
    for set in [&t.a0, &t.ge, &t.le] {
        if set.iter().any(|&i| i >= n) {
            return Err(Error::Parse("triangular index out of range".into()));
        }
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("triangular index sets must be strictly increasing".into()));
        }
    }
    let inter: Vec<usize> = t.ge.iter().copied().filter(|i| t.le.contains(i)).collect();
    if inter != t.a0 {
        return Err(Error::Precondition("A^0 must equal A^{>=0} intersected with A^{<=0}".into()));
    }
    let deg0 = |set: &[usize]| -> Vec<usize> {
        set.iter().copied().filter(|&i| degrees[i] == 0).collect()
    };
    if t.ge.iter().any(|&i| degrees[i] < 0) || t.le.iter().any(|&i| degrees[i] > 0) {
        return Err(Error::Precondition(
            "A^{>=0} must live in degrees >= 0 and A^{<=0} in degrees <= 0".into(),
        ));
    }
    if deg0(&t.ge) != t.a0 || deg0(&t.le) != t.a0 {
        return Err(Error::Precondition(
            "A^0 must be the degree-0 part of both triangular pieces".into(),
        ));
    }
    Ok(())
}

fn scan_order(
    s: &Structure,
    degrees: &[i32],
    tri: Option<&TriangularData>,
    base_idx: &[usize],
) -> Vec<usize> {
    let mut order: Vec<usize> = base_idx.to_vec();
    let push = |set: &[usize], order: &mut Vec<usize>| {
        for &i in set {
            if !order.contains(&i) {
                order.push(i);
            }
        }
    };
    if let Some(t) = tri {
        push(&t.ge, &mut order);
        push(&t.le, &mut order);
    }
    let mut rest: Vec<usize> = (0..s.n).collect();
    rest.sort_by_key(|&i| (degrees[i].abs(), degrees[i] < 0, i));
    push(&rest, &mut order);
    order
}

fn choose_generators(s: &Structure, order: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = s.generated(&[]);
    for &i in order {
        let e = s.basis_vec(i);
        if !span.contains(&e) {
            gens.push(i);
            let elems: Vec<Vec<u32>> = gens.iter().map(|&g| s.basis_vec(g)).collect();
            span = s.generated(&elems);
        }
    }
    gens
}

fn word_basis(s: &Structure, gens: &[usize]) -> Result<WordBasis> {
    let n = s.n;
    let mut span = Echelon::new(s.field, n);
    let mut parent = vec![0];
    let mut letter = vec![usize::MAX];
    let mut values = vec![s.unit.clone()];
    span.insert(&s.unit);
    let mut j = 0;
    while j < values.len() && values.len() < n {
        for (gi, &g) in gens.iter().enumerate() {
            let v = s.mul(&s.basis_vec(g), &values[j]);
            if span.insert(&v) {
                parent.push(j);
                letter.push(gi);
                values.push(v);
            }
        }
        j += 1;
    }
    if values.len() != n {
        return Err(Error::Internal("generators do not span the algebra".into()));
    }
    let w = Mat::from_cols(s.field, n, &values);
    let winv = w
        .inverse()
        .ok_or_else(|| Error::Internal("word basis is singular".into()))?;
    let to_words = (0..n)
        .map(|k| {
            winv.col(k)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(j, c)| (j as u32, c))
                .collect()
        })
        .collect();
    Ok(WordBasis {
        parent,
        letter,
        values,
        to_words,
    })
}

fn compute_base(s: &Structure, base_idx: &[usize], gens: &[usize]) -> Result<Base> {
    let trivial = || Base {
        idx: Vec::new(),
        ngens: 0,
        gen_values: vec![Vec::new()],
        basis_values: vec![Vec::new()],
        idem: vec![s.unit.clone()],
        split: false,
    };
    let Ok(sub) = s.restrict(base_idx) else {
        return Ok(trivial());
    };
    let rad = radical::radical(&sub)?;
    if rad.cols() != 0 {
        return Ok(trivial());
    }
    let Ok(chars) = radical::split_characters(&sub, &rad) else {
        return Ok(trivial());
    };
    let ngens = gens.iter().take_while(|g| base_idx.contains(g)).count();
    let mut gen_values = Vec::new();
    let mut idem = Vec::new();
    for chi in &chars {
        gen_values.push(
            gens[..ngens]
                .iter()
                .map(|g| chi[base_idx.iter().position(|b| b == g).unwrap()])
                .collect(),
        );
        let e_sub = radical::character_idempotent(&sub, chi)?;
        let mut e = vec![0u32; s.n];
        for (t, &c) in e_sub.iter().enumerate() {
            e[base_idx[t]] = c;
        }
        idem.push(e);
    }
    Ok(Base {
        idx: base_idx.to_vec(),
        ngens,
        gen_values,
        basis_values: chars,
        idem,
        split: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dual_numbers(p: u32, deg: i32) -> Arc<GradedAlgebra> {
        GradedAlgebra::new(AlgebraData {
            p,
            names: vec!["1".into(), "x".into()],
            degrees: vec![0, deg],
            mult: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
            unit: vec![1, 0],
            tri: None,
        })
        .unwrap()
    }

    #[test]
    fn dual_numbers_basics() {
        let a = dual_numbers(2, 1);
        assert_eq!(a.gens(), &[1]);
        assert_eq!(a.base().nchars(), 1);
        assert!(a.base().split);
        let b = dual_numbers(2, 0);
        assert!(!b.base().split);
    }

    #[test]
    fn associativity_fault_is_named() {
        // x*x = x but 1 is not a unit for x from the right
        let err = GradedAlgebra::new(AlgebraData {
            p: 3,
            names: vec!["1".into(), "x".into(), "y".into()],
            degrees: vec![0, 0, 0],
            mult: vec![
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (0, 2, 2, 1),
                (2, 0, 2, 1),
                (1, 2, 1, 1),
                (2, 1, 2, 1),
                (1, 1, 1, 1),
            ],
            unit: vec![1, 0, 0],
            tri: None,
        })
        .unwrap_err();
        assert!(matches!(err, Error::Associativity(_)), "{err}");
    }

    #[test]
    fn opposite_is_involutive_and_cached() {
        let a = dual_numbers(3, 1);
        let op = a.opposite();
        assert!(Arc::ptr_eq(&op.opposite(), &a));
        assert!(op.same_structure(&a));
    }
}
