//! Normal-form multiplication for algebras with an ordered monomial basis
//! `x_0^{a_0} x_1^{a_1} ... ` defined by swap and power rewriting rules.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::Fp;

/// A word in the letters with a coefficient.
pub type Term = (u32, Vec<usize>);

pub struct Rules {
    pub field: Fp,
    pub letters: Vec<String>,
    pub degrees: Vec<i32>,
    /// Exponent at which the power rule fires.
    pub bound: Vec<u32>,
    /// `x_i^{bound_i}` rewritten.
    pub power: Vec<Vec<Term>>,
    /// `swap[(i, j)]` for `i > j`: `x_i x_j` rewritten.
    pub swap: BTreeMap<(usize, usize), Vec<Term>>,
}

pub type Mono = Vec<u32>;
type Elem = BTreeMap<Mono, u32>;

pub struct Pbw {
    rules: Rules,
    memo: HashMap<(usize, Mono), Elem>,
}

fn add_into(f: Fp, acc: &mut Elem, other: &Elem, c: u32) {
    for (m, &x) in other {
        let e = acc.entry(m.clone()).or_insert(0);
        *e = f.mul_add(*e, x, c);
    }
    acc.retain(|_, x| *x != 0);
}

impl Pbw {
    pub fn new(rules: Rules) -> Self {
        Pbw {
            rules,
            memo: HashMap::new(),
        }
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    /// All normal monomials, ordered by exponent vectors.
    pub fn monomials(&self) -> Vec<Mono> {
        let mut out = vec![Vec::new()];
        for &b in &self.rules.bound {
            let mut next = Vec::new();
            for m in &out {
                for e in 0..b {
                    let mut m2: Mono = m.clone();
                    m2.push(e);
                    next.push(m2);
                }
            }
            out = next;
        }
        out
    }

    pub fn degree(&self, m: &Mono) -> i32 {
        m.iter()
            .zip(&self.rules.degrees)
            .map(|(&e, &d)| e as i32 * d)
            .sum()
    }

    pub fn name(&self, m: &Mono) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.rules.letters)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, l)| if e == 1 { l.clone() } else { format!("{l}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Apply a word (letters left to right) to a normal element.
    fn word_times(&mut self, word: &[usize], rhs: &Elem) -> Elem {
        let f = self.rules.field;
        let mut cur = rhs.clone();
        for &l in word.iter().rev() {
            let mut next = Elem::new();
            for (m, &c) in &cur {
                let prod = self.left_mul(l, m);
                add_into(f, &mut next, &prod, c);
            }
            cur = next;
        }
        cur
    }

    /// `x_l * m` in normal form.
    pub fn left_mul(&mut self, l: usize, m: &Mono) -> Elem {
        if let Some(r) = self.memo.get(&(l, m.clone())) {
            return r.clone();
        }
        let f = self.rules.field;
        let first = m.iter().position(|&e| e > 0);
        let result = match first {
            Some(j) if j < l => {
                // x_l x_j^{a} rest = (x_l x_j) x_j^{a-1} rest
                let mut rest = m.clone();
                rest[j] -= 1;
                let rest_elem: Elem = [(rest, 1)].into_iter().collect();
                let rule = self.rules.swap[&(l, j)].clone();
                let mut acc = Elem::new();
                for (c, word) in rule {
                    let t = self.word_times(&word, &rest_elem);
                    add_into(f, &mut acc, &t, c);
                }
                acc
            }
            _ => {
                let mut up = m.clone();
                up[l] += 1;
                if up[l] < self.rules.bound[l] {
                    [(up, 1)].into_iter().collect()
                } else {
                    up[l] = 0;
                    let rest_elem: Elem = [(up, 1)].into_iter().collect();
                    let rule = self.rules.power[l].clone();
                    let mut acc = Elem::new();
                    for (c, word) in rule {
                        let t = self.word_times(&word, &rest_elem);
                        add_into(f, &mut acc, &t, c);
                    }
                    acc
                }
            }
        };
        self.memo.insert((l, m.clone()), result.clone());
        result
    }

    /// Product of two normal monomials.
    pub fn mul(&mut self, a: &Mono, b: &Mono) -> Elem {
        let mut word = Vec::new();
        for (l, &e) in a.iter().enumerate() {
            word.extend(std::iter::repeat_n(l, e as usize));
        }
        let rhs: Elem = [(b.clone(), 1)].into_iter().collect();
        self.word_times(&word, &rhs)
    }
}
