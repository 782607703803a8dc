//! Truncated tensor algebra `⊕_{m <= N} H^{⊗m}` with sparse coefficients.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::homology::{write_term, HVec, Matrix};
use crate::scalar::{RingSpec, Scalar};
use crate::word::{Gen, SurfaceSig};

/// A multi-index `(i_1, .., i_m)` naming `e_{i_1} ⊗ .. ⊗ e_{i_m}`.
pub type Key = SmallVec<[u8; 4]>;

pub const DEFAULT_TRUNCATION: usize = 3;

/// A truncated element of `T(H)`. `parts[m]` holds the degree-`m` component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    sig: SurfaceSig,
    ring: RingSpec,
    parts: Vec<BTreeMap<Key, Scalar>>,
}

fn add_into(map: &mut BTreeMap<Key, Scalar>, key: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Tensor {
    pub fn zero(sig: SurfaceSig, ring: RingSpec, trunc: usize) -> Tensor {
        Tensor { sig, ring, parts: vec![BTreeMap::new(); trunc + 1] }
    }

    pub fn one(sig: SurfaceSig, ring: RingSpec, trunc: usize) -> Tensor {
        let mut t = Tensor::zero(sig, ring, trunc);
        t.parts[0].insert(Key::new(), ring.one());
        t
    }

    /// `c · e_{idx}`; silently dropped if `idx.len() > trunc`.
    pub fn monomial(sig: SurfaceSig, ring: RingSpec, trunc: usize, idx: &[usize], c: Scalar) -> Tensor {
        let mut t = Tensor::zero(sig, ring, trunc);
        t.add_monomial(idx, c);
        t
    }

    pub fn from_hvec(x: &HVec, trunc: usize) -> Tensor {
        let mut t = Tensor::zero(x.sig(), x.ring(), trunc);
        for (k, c) in x.coords().iter().enumerate() {
            t.add_monomial(&[k], c.clone());
        }
        t
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn truncation(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn add_monomial(&mut self, idx: &[usize], c: Scalar) {
        if idx.len() >= self.parts.len() {
            return;
        }
        let key: Key = idx.iter().map(|&i| i as u8).collect();
        add_into(&mut self.parts[idx.len()], key, c);
    }

    /// The degree-`m` component as a sparse map (empty beyond truncation).
    pub fn part(&self, m: usize) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.parts.get(m).into_iter().flat_map(|p| p.iter())
    }

    pub fn part_len(&self, m: usize) -> usize {
        self.parts.get(m).map_or(0, |p| p.len())
    }

    pub fn coef(&self, idx: &[usize]) -> Scalar {
        let key: Key = idx.iter().map(|&i| i as u8).collect();
        self.parts
            .get(idx.len())
            .and_then(|p| p.get(&key))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Keeps only the degree-`m` component.
    pub fn degree_part(&self, m: usize) -> Tensor {
        let mut t = Tensor::zero(self.sig, self.ring, self.truncation());
        if m < self.parts.len() {
            t.parts[m] = self.parts[m].clone();
        }
        t
    }

    pub fn degree1(&self) -> HVec {
        let mut coords = vec![self.ring.zero(); self.sig.rank()];
        for (k, c) in self.part(1) {
            coords[k[0] as usize] = c.clone();
        }
        HVec::from_coords(self.sig, self.ring, coords).expect("shape")
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(BTreeMap::is_empty)
    }

    /// Drops everything above degree `m`.
    pub fn truncate(&self, m: usize) -> Tensor {
        Tensor { sig: self.sig, ring: self.ring, parts: self.parts[..=m.min(self.truncation())].to_vec() }
    }

    fn check(&self, other: &Tensor) -> Result<()> {
        self.sig.check_same(&other.sig)?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), other.truncation()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, p) in other.parts.iter().enumerate() {
            for (k, c) in p {
                add_into(&mut out.parts[m], k.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.try_add(other).expect("tensor mismatch")
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.sig, self.ring, self.truncation());
        for (m, p) in self.parts.iter().enumerate() {
            for (k, v) in p {
                add_into(&mut out.parts[m], k.clone(), v.mul(c));
            }
        }
        out
    }

    /// Graded product with every term of degree above the truncation dropped.
    pub fn try_mul(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        Ok(self.mul_upto(other, self.truncation()))
    }

    pub fn mul(&self, other: &Tensor) -> Tensor {
        self.try_mul(other).expect("tensor mismatch")
    }

    /// Product keeping only degrees `<= top`; callers guarantee compatibility.
    pub(crate) fn mul_upto(&self, other: &Tensor, top: usize) -> Tensor {
        let top = top.min(self.truncation());
        let mut out = Tensor::zero(self.sig, self.ring, self.truncation());
        for (p, lp) in self.parts.iter().enumerate().take(top + 1) {
            if lp.is_empty() {
                continue;
            }
            for (q, rp) in other.parts.iter().enumerate().take(top + 1 - p) {
                for (lk, lc) in lp {
                    for (rk, rc) in rp {
                        let mut key = lk.clone();
                        key.extend_from_slice(rk);
                        add_into(&mut out.parts[p + q], key, lc.mul(rc));
                    }
                }
            }
        }
        out
    }

    /// Inverse of a unit-normalised tensor by the truncated Neumann series.
    pub fn inverse(&self) -> Result<Tensor> {
        let c0 = self.coef(&[]);
        if !c0.is_one() {
            return Err(Error::NotUnitNormalized);
        }
        let one = Tensor::one(self.sig, self.ring, self.truncation());
        let x = self.sub(&one);
        let minus_x = x.neg();
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.truncation() {
            power = power.mul(&minus_x);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// Applies `M^{⊗m}` in every degree `m`.
    pub fn map_linear(&self, m: &Matrix) -> Tensor {
        let columns: Vec<Vec<(u8, Scalar)>> = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m.entry(i, j).is_zero())
                    .map(|i| (i as u8, m.entry(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut out = Tensor::zero(self.sig, self.ring, self.truncation());
        for (deg, p) in self.parts.iter().enumerate() {
            for (key, c) in p {
                let mut acc: Vec<(Key, Scalar)> = vec![(Key::new(), c.clone())];
                for &i in key.iter() {
                    let col = &columns[i as usize];
                    let mut next = Vec::with_capacity(acc.len() * col.len());
                    for (k, v) in &acc {
                        for (r, e) in col {
                            let mut nk = k.clone();
                            nk.push(*r);
                            next.push((nk, v.mul(e)));
                        }
                    }
                    acc = next;
                }
                for (k, v) in acc {
                    add_into(&mut out.parts[deg], k, v);
                }
            }
        }
        out
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, other: &Tensor) -> Tensor {
        self.mul(other).sub(&other.mul(self))
    }
}

pub(crate) fn key_name(sig: SurfaceSig, key: &[u8]) -> String {
    key.iter().map(|&i| Gen::from_index(sig, i as usize).class_name()).collect()
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            for (k, c) in p {
                write_term(f, c, &key_name(self.sig, k), first)?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
