//! Jacobson radical and split commutative semisimple quotients.
//!
//! The radical uses the characteristic-p safe iteration of generalized
//! trace functionals `g_i(a) = Tr(lift(a)^(p^i)) / p^i mod p` on the regular
//! representation: `I_{-1} = B`, `I_i = {x in I_{i-1} : g_i(x b) = 0 for all b}`
//! and the radical is `I_l` with `l = floor(log_p dim B)`.

use super::structure::Structure;
use crate::error::{Error, Result};
use crate::exactla::{quotient_basis, Mat};

/// Whether the bilinear form `(x, y) -> Tr(L_{xy})` is nondegenerate.
/// Nondegeneracy forces semisimplicity; the converse fails in characteristic p.
pub fn trace_form_nondegenerate(s: &Structure) -> bool {
    trace_form(s).rank() == s.n
}

fn trace_form(s: &Structure) -> Mat {
    let f = s.field;
    let mut m = Mat::zeros(f, s.n, s.n);
    for i in 0..s.n {
        for j in 0..s.n {
            let xy = s.mul(&s.basis_vec(i), &s.basis_vec(j));
            let tr = trace_of_left(s, &xy);
            m.set(i, j, tr);
        }
    }
    m
}

fn trace_of_left(s: &Structure, a: &[u32]) -> u32 {
    let f = s.field;
    let mut t = 0;
    for j in 0..s.n {
        let col = s.mul(a, &s.basis_vec(j));
        t = f.add(t, col[j]);
    }
    t
}

fn int_mat_mul(a: &[u64], b: &[u64], n: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            let orow = &mut out[i * n..(i + 1) * n];
            for j in 0..n {
                orow[j] = (orow[j] + x * brow[j]) % q;
            }
        }
    }
    out
}

/// `g_i(a)` for the regular representation.
fn generalized_trace(s: &Structure, a: &[u32], i: u32) -> Result<u32> {
    let p = s.field.p() as u64;
    let n = s.n;
    let q = p.pow(i + 1);
    let l = s.left_mat(a);
    let mut base: Vec<u64> = (0..n * n).map(|k| l.get(k / n, k % n) as u64).collect();
    let mut acc: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
    let mut e = p.pow(i);
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mat_mul(&acc, &base, n, q);
        }
        e >>= 1;
        if e > 0 {
            base = int_mat_mul(&base, &base, n, q);
        }
    }
    let tr = (0..n).map(|k| acc[k * n + k]).sum::<u64>() % q;
    let pi = p.pow(i);
    if !tr.is_multiple_of(pi) {
        return Err(Error::Internal(format!(
            "generalized trace g_{i} not divisible by p^{i}"
        )));
    }
    Ok((tr / pi) as u32)
}

/// Basis (as columns) of the Jacobson radical.
pub fn radical(s: &Structure) -> Result<Mat> {
    let f = s.field;
    if s.n == 0 || trace_form_nondegenerate(s) {
        return Ok(Mat::zeros(f, s.n, 0));
    }
    let p = f.p() as usize;
    let mut l = 0u32;
    while p.pow(l + 1) <= s.n {
        l += 1;
    }
    let mut current = Mat::identity(f, s.n);
    for i in 0..=l {
        if current.cols() == 0 {
            break;
        }
        let basis = current.columns();
        let mut g = Mat::zeros(f, s.n, basis.len());
        for k in 0..s.n {
            let bk = s.basis_vec(k);
            for (r, x) in basis.iter().enumerate() {
                let xb = s.mul(x, &bk);
                let v = if i == 0 {
                    trace_of_left(s, &xb)
                } else {
                    generalized_trace(s, &xb, i)?
                };
                g.set(k, r, v);
            }
        }
        let ker = g.nullspace();
        current = current.mul(&ker);
    }
    Ok(current)
}

/// Characters of a split commutative semisimple quotient `B / rad`.
///
/// Returns the value vectors `chi(b_k)` on the basis of `B`, sorted
/// lexicographically, together with the radical basis.
pub fn split_characters(s: &Structure, rad: &Mat) -> Result<Vec<Vec<u32>>> {
    let f = s.field;
    let quo = quotient_basis(f, s.n, rad)?;
    let q = quo.section.cols();
    let sec = quo.section.columns();
    let proj = &quo.projection;
    // left multiplication operators of the quotient algebra
    let mut ops = Vec::with_capacity(q);
    for i in 0..q {
        let mut m = Mat::zeros(f, q, q);
        for j in 0..q {
            let prod = proj.mul_vec(&s.mul(&sec[i], &sec[j]));
            for (r, &v) in prod.iter().enumerate() {
                m.set(r, j, v);
            }
            let other = proj.mul_vec(&s.mul(&sec[j], &sec[i]));
            if other != prod {
                return Err(Error::UnsupportedSemisimple(
                    "semisimple quotient is not commutative".into(),
                ));
            }
        }
        ops.push(m);
    }
    let mut spaces = vec![Mat::identity(f, q)];
    for op in &ops {
        let mut next = Vec::new();
        for v in &spaces {
            let image = op.mul(v);
            let mut found = 0;
            for lam in 0..f.p() {
                // columns c of v with (op - lam) v c = 0
                let shifted = image.add(&v.scale(f.neg(lam)));
                let ker = shifted.nullspace();
                if ker.cols() > 0 {
                    found += ker.cols();
                    next.push(v.mul(&ker));
                }
            }
            if found != v.cols() {
                return Err(Error::UnsupportedSemisimple(
                    "multiplication operator does not split over the prime field".into(),
                ));
            }
        }
        spaces = next;
    }
    let mut chars = Vec::new();
    for v in &spaces {
        if v.cols() != 1 {
            return Err(Error::UnsupportedSemisimple(
                "joint eigenspace of dimension > 1".into(),
            ));
        }
        let u = v.col(0);
        let piv = u.iter().position(|&x| x != 0).expect("nonzero eigenvector");
        let lam_q: Vec<u32> = ops
            .iter()
            .map(|op| f.mul(op.mul_vec(&u)[piv], f.inv(u[piv])))
            .collect();
        let chi: Vec<u32> = (0..s.n)
            .map(|k| {
                let c = proj.col(k);
                c.iter()
                    .zip(&lam_q)
                    .fold(0, |acc, (&x, &l)| f.mul_add(acc, x, l))
            })
            .collect();
        chars.push(chi);
    }
    chars.sort();
    Ok(chars)
}

/// Primitive idempotent `e_chi` of a split commutative semisimple algebra.
pub fn character_idempotent(s: &Structure, chi: &[u32]) -> Result<Vec<u32>> {
    let f = s.field;
    // solve b e = chi(b) e for all basis b, i.e. (L_b - chi(b)) e = 0
    let mut rows = Mat::zeros(f, 0, s.n);
    for k in 0..s.n {
        let l = s.left_mat(&s.basis_vec(k));
        let shifted = l.add(&Mat::identity(f, s.n).scale(f.neg(chi[k])));
        rows = rows.vstack(&shifted);
    }
    let ker = rows.nullspace();
    if ker.cols() != 1 {
        return Err(Error::UnsupportedSemisimple(format!(
            "character eigenspace has dimension {}",
            ker.cols()
        )));
    }
    let u = ker.col(0);
    let c: u32 = u
        .iter()
        .zip(chi)
        .fold(0, |acc, (&x, &l)| f.mul_add(acc, x, l));
    if c == 0 {
        return Err(Error::UnsupportedSemisimple("nilpotent eigenvector".into()));
    }
    let inv = f.inv(c);
    Ok(u.into_iter().map(|x| f.mul(x, inv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    fn truncated_poly(p: u32, relation: &[u32]) -> Structure {
        // F_p[x]/(x^n - sum relation[k] x^k), basis 1, x, ..., x^{n-1}
        let f = Fp::new(p).unwrap();
        let n = relation.len();
        let reduce = |e: usize| -> Vec<u32> {
            let mut v = vec![0u32; 2 * n];
            v[e] = 1;
            for d in (n..2 * n).rev() {
                let c = v[d];
                if c != 0 {
                    v[d] = 0;
                    for (k, &r) in relation.iter().enumerate() {
                        v[d - n + k] = f.mul_add(v[d - n + k], c, r);
                    }
                }
            }
            v.truncate(n);
            v
        };
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = reduce(i + j);
                mult.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (k as u32, c))
                        .collect(),
                );
            }
        }
        let mut unit = vec![0; n];
        unit[0] = 1;
        Structure {
            field: f,
            n,
            mult,
            unit,
        }
    }

    #[test]
    fn split_torus_is_semisimple() {
        // h^3 = h over F_3
        let s = truncated_poly(3, &[0, 1, 0]);
        assert_eq!(radical(&s).unwrap().cols(), 0);
        let chars = split_characters(&s, &radical(&s).unwrap()).unwrap();
        let on_h: Vec<u32> = chars.iter().map(|c| c[1]).collect();
        assert_eq!(on_h, vec![0, 1, 2]);
        for chi in &chars {
            let e = character_idempotent(&s, chi).unwrap();
            assert_eq!(s.mul(&e, &e), e);
        }
    }

    #[test]
    fn dual_numbers_radical() {
        let s = truncated_poly(2, &[0, 0]);
        let r = radical(&s).unwrap();
        assert_eq!(r.cols(), 1);
        assert_eq!(r.col(0), vec![0, 1]);
        assert!(!trace_form_nondegenerate(&s));
    }

    #[test]
    fn characteristic_p_trace_trap() {
        // F_2[x]/(x^2 - 1) = F_2[x]/(x+1)^2 is not semisimple and its trace
        // form vanishes identically; the algorithm must still find x + 1
        let s = truncated_poly(2, &[1, 0]);
        let r = radical(&s).unwrap();
        assert_eq!(r.cols(), 1);
        assert_eq!(r.col(0), vec![1, 1]);
        // F_3[x]/(x^3) with n = p: l = 1 iteration needed
        let s = truncated_poly(3, &[0, 0, 0]);
        assert_eq!(radical(&s).unwrap().cols(), 2);
    }
}
