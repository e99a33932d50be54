use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Echelon, Fp};

/// `O = F_p[e, h, f] / (h^2 + 4 e f)`, bigraded by polynomial degree and by
/// weight (`e`: 2, `h`: 0, `f`: -2).
#[derive(Clone, Copy, Debug)]
pub struct QuadricCone {
    pub field: Fp,
}

/// Exponents `(a, b, c)` of `e^a h^b f^c`.
type Mono = (u32, u32, u32);

const WEIGHT: [i32; 3] = [2, 0, -2];

impl QuadricCone {
    pub fn new(p: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::Precondition(
                "the quadric h^2 + 4ef degenerates in characteristic 2".into(),
            ));
        }
        Ok(QuadricCone { field: Fp::new(p)? })
    }

    /// Monomials of polynomial degree `d` and weight `w`.
    fn monomials(d: i32, w: i32) -> Vec<Mono> {
        let mut out = Vec::new();
        if d < 0 || w % 2 != 0 {
            return out;
        }
        for a in 0..=d {
            for c in 0..=(d - a) {
                let b = d - a - c;
                if WEIGHT[0] * a + WEIGHT[2] * c == w {
                    out.push((a as u32, b as u32, c as u32));
                }
            }
        }
        out
    }

    /// The polynomial space of bidegree `(d, w)` with the span of the
    /// relation multiples preloaded.
    fn space(&self, d: i32, w: i32) -> (BTreeMap<Mono, usize>, Echelon) {
        let monos = Self::monomials(d, w);
        let index: BTreeMap<Mono, usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut rel = Echelon::new(self.field, index.len());
        let four = self.field.reduce(4);
        for (a, b, c) in Self::monomials(d - 2, w) {
            let mut v = vec![0u32; index.len()];
            v[index[&(a, b + 2, c)]] = 1;
            v[index[&(a + 1, b, c + 1)]] = four;
            rel.insert(&v);
        }
        (index, rel)
    }

    /// Dimension of the subspace of `O_{(D, W)}` spanned by
    /// `mult * O_{(d, w)}`, added into `acc` (which starts as the relations).
    fn push_image(index: &BTreeMap<Mono, usize>, acc: &mut Echelon, d: i32, w: i32, mult: Mono) {
        for (a, b, c) in Self::monomials(d, w) {
            let mut v = vec![0u32; index.len()];
            v[index[&(a + mult.0, b + mult.1, c + mult.2)]] = 1;
            acc.insert(&v);
        }
    }

    /// Dimensions `(O, O_h, O_f, O_h + O_f, O_hf)` in bidegree `(d, w)`, all
    /// realised inside `(hf)^{-k} O_{(d + 2k, w - 2k)}`, and `dim O_h cap O_f`.
    fn cech_dims(&self, d: i32, w: i32, k: u32) -> [usize; 6] {
        let ki = k as i32;
        let (bd, bw) = (d + 2 * ki, w - 2 * ki);
        let (index, rel) = self.space(bd, bw);
        let r0 = rel.dim();
        let span = |parts: &[(i32, i32, Mono)]| -> usize {
            let mut e = rel.clone();
            for &(dd, ww, mult) in parts {
                Self::push_image(&index, &mut e, dd, ww, mult);
            }
            e.dim() - r0
        };
        let o = span(&[(d, w, (0, k, k))]);
        let oh = span(&[(d + ki, w, (0, 0, k))]);
        let of = span(&[(d + ki, w - 2 * ki, (0, k, 0))]);
        let sum = span(&[(d + ki, w, (0, 0, k)), (d + ki, w - 2 * ki, (0, k, 0))]);
        let ohf = index.len() - r0;
        [o, oh, of, sum, ohf, oh + of - sum]
    }

    /// `(H^0, H^1, H^2)` of the Cech complex `O -> O_h + O_f -> O_hf` in
    /// bidegree `(d, w)`, or `None` if the localisations have not settled
    /// by level `cap`.
    ///
    /// Levels below `|d| + |w|/2 + 1` are skipped: before that the
    /// localised pieces may still be empty for degree reasons and a run of
    /// equal dimensions says nothing.
    pub fn local_cohomology_at(&self, d: i32, w: i32, cap: u32) -> Option<[usize; 3]> {
        let mut prev: Option<[usize; 6]> = None;
        let mut streak = 0;
        let kmin = (d.abs() + w.abs() / 2 + 1) as u32;
        for k in kmin..=cap {
            let cur = self.cech_dims(d, w, k);
            if prev == Some(cur) {
                streak += 1;
                if streak == 2 {
                    let [o, _, _, sum, ohf, cap_dim] = cur;
                    // the kernel of O -> O_h + O_f is what dies in O_hf
                    let (idx, rel) = self.space(d, w);
                    let own = idx.len() - rel.dim();
                    return Some([own - o, cap_dim - o, ohf - sum]);
                }
            } else {
                streak = 0;
            }
            prev = Some(cur);
        }
        None
    }
}

/// Local cohomology `H^i_n(N, O)` summed over polynomial degrees, by weight.
#[derive(Clone, Debug, Serialize)]
pub struct ConeTable {
    pub p: u32,
    /// `weight -> [dim H^0, dim H^1, dim H^2]`.
    pub by_weight: BTreeMap<i32, [usize; 3]>,
    /// Nonzero bigraded entries `((degree, weight), [H^0, H^1, H^2])`.
    pub bigraded: Vec<((i32, i32), [usize; 3])>,
    /// Polynomial degrees scanned.
    pub degrees: (i32, i32),
}

/// Graded local cohomology of the sl2 nilpotent cone with support on the
/// line `h = f = 0`, on the weight window `w` and polynomial degrees within
/// `|d| <= pad + max |w|`. Errors if a bidegree does not settle or if the
/// weight totals change when the degree range is widened by two.
pub fn local_cohomology_cone(p: u32, w: (i32, i32), pad: i32) -> Result<ConeTable> {
    let cone = QuadricCone::new(p)?;
    let reach = w.0.abs().max(w.1.abs()) + pad;
    let cap = (3 * reach + 8) as u32;
    let cells: Vec<(i32, i32)> = (w.0..=w.1)
        .flat_map(|wt| (-(reach + 2)..=(reach + 2)).map(move |d| (d, wt)))
        .collect();
    let vals: Vec<Result<((i32, i32), [usize; 3])>> = cells
        .into_par_iter()
        .map(|(d, wt)| {
            cone.local_cohomology_at(d, wt, cap)
                .map(|h| ((d, wt), h))
                .ok_or(Error::Inconclusive {
                    have: cap as usize,
                    need: cap as usize + 1,
                })
        })
        .collect();
    let mut bigraded = BTreeMap::new();
    for v in vals {
        let (key, h) = v?;
        if h.iter().any(|&x| x > 0) {
            bigraded.insert(key, h);
        }
    }
    let total = |r: i32| -> BTreeMap<i32, [usize; 3]> {
        let mut t: BTreeMap<i32, [usize; 3]> = (w.0..=w.1).map(|wt| (wt, [0; 3])).collect();
        for (&(d, wt), h) in &bigraded {
            if d.abs() <= r {
                let e = t.get_mut(&wt).unwrap();
                for i in 0..3 {
                    e[i] += h[i];
                }
            }
        }
        t
    };
    let by_weight = total(reach);
    if by_weight != total(reach + 2) {
        return Err(Error::Inconclusive {
            have: reach as usize,
            need: reach as usize + 2,
        });
    }
    Ok(ConeTable {
        p,
        by_weight,
        bigraded: bigraded.into_iter().filter(|((d, _), _)| d.abs() <= reach).collect(),
        degrees: (-reach, reach),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_is_a_domain_with_expected_dims() {
        // one monomial e^a h^eps f^c per admissible bidegree
        assert_eq!(QuadricCone::monomials(3, 2).len(), 2);
        let c = QuadricCone::new(3).unwrap();
        let (idx, rel) = c.space(2, 0);
        assert_eq!(idx.len() - rel.dim(), 1);
    }

    #[test]
    fn p2_is_rejected() {
        assert!(local_cohomology_cone(2, (-2, 2), 2).is_err());
    }
}
