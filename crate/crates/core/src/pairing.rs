//! The intersection form, Poincare duality `H -> H*`, and contractions of
//! elements of `H* ⊗ H ⊗ H`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::homology::{write_term, DualVec, HVec};
use crate::scalar::{RingSpec, Scalar};
use crate::word::{Gen, SurfaceSig};

/// `♭(e_i, e_j)` on basis indices.
pub fn flat_basis(sig: SurfaceSig, i: usize, j: usize) -> i64 {
    let g = sig.g;
    if i < g && j == i + g {
        1
    } else if j < g && i == j + g {
        -1
    } else {
        0
    }
}

/// `♭(x, y)`.
pub fn flat(x: &HVec, y: &HVec) -> Result<Scalar> {
    x.check_compatible(y)?;
    let g = x.sig().g;
    let mut acc = x.ring().zero();
    for i in 0..g {
        acc = acc.add(&x.coord(i).mul(y.coord(i + g)));
        acc = acc.sub(&x.coord(i + g).mul(y.coord(i)));
    }
    Ok(acc)
}

/// `ȷ(x) = ♭(x, -)`.
pub fn jmath(x: &HVec) -> DualVec {
    let sig = x.sig();
    let ring = x.ring();
    let g = sig.g;
    let mut coords = vec![ring.zero(); sig.rank()];
    for i in 0..g {
        coords[i + g] = x.coord(i).clone();
        coords[i] = x.coord(i + g).neg();
    }
    DualVec::from_coords(sig, ring, coords).expect("shape")
}

/// An element of `H* ⊗ H ⊗ H`, keyed by (dual slot, first, second).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomTensor {
    sig: SurfaceSig,
    ring: RingSpec,
    terms: BTreeMap<(usize, usize, usize), Scalar>,
}

impl HomTensor {
    pub fn zero(sig: SurfaceSig, ring: RingSpec) -> HomTensor {
        HomTensor { sig, ring, terms: BTreeMap::new() }
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn get(&self, f: usize, i: usize, j: usize) -> Scalar {
        self.terms.get(&(f, i, j)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · e_f* ⊗ e_i ⊗ e_j`.
    pub fn add_term(&mut self, f: usize, i: usize, j: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((f, i, j)).or_insert_with(|| self.ring.zero());
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&(f, i, j));
        }
    }

    /// Adds `f ⊗ s` for a dual vector `f` and a sparse element `s` of `H⊗H`.
    pub fn add_product(&mut self, f: &DualVec, s: &[((usize, usize), Scalar)]) {
        for (k, fk) in f.coords().iter().enumerate() {
            if fk.is_zero() {
                continue;
            }
            for ((i, j), c) in s {
                self.add_term(k, *i, *j, &fk.mul(c));
            }
        }
    }

    pub fn add(&self, other: &HomTensor) -> HomTensor {
        let mut out = self.clone();
        for (&(f, i, j), c) in &other.terms {
            out.add_term(f, i, j, c);
        }
        out
    }

    pub fn neg(&self) -> HomTensor {
        let m1 = self.ring.from_i64(-1);
        HomTensor {
            sig: self.sig,
            ring: self.ring,
            terms: self.terms.iter().map(|(k, c)| (*k, c.mul(&m1))).collect(),
        }
    }

    pub fn sub(&self, other: &HomTensor) -> HomTensor {
        self.add(&other.neg())
    }
}

impl fmt::Display for HomTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let name = |k: usize| Gen::from_index(self.sig, k).class_name();
        let mut first_slot = true;
        let mut current: Option<usize> = None;
        let mut first_term = true;
        for (&(s, i, j), c) in &self.terms {
            if current != Some(s) {
                if current.is_some() {
                    write!(f, ")")?;
                }
                if !first_slot {
                    write!(f, " + ")?;
                }
                write!(f, "{}*⊗(", name(s))?;
                first_slot = false;
                first_term = true;
                current = Some(s);
            }
            write_term(f, c, &format!("{}{}", name(i), name(j)), first_term)?;
            first_term = false;
        }
        write!(f, ")")
    }
}

/// `𝔠(f ⊗ X1 X2) = f(X1) X2`.
pub fn contract(t: &HomTensor) -> HVec {
    let mut coords = vec![t.ring.zero(); t.sig.rank()];
    for (&(f, i, j), c) in &t.terms {
        if f == i {
            coords[j] = coords[j].add(c);
        }
    }
    HVec::from_coords(t.sig, t.ring, coords).expect("shape")
}

/// `f ⊗ X1 X2 -> f(X2) X1`.
pub fn contract_switched(t: &HomTensor) -> HVec {
    let mut coords = vec![t.ring.zero(); t.sig.rank()];
    for (&(f, i, j), c) in &t.terms {
        if f == j {
            coords[i] = coords[i].add(c);
        }
    }
    HVec::from_coords(t.sig, t.ring, coords).expect("shape")
}

/// `(1 ⊗ ♭)(f ⊗ X1 X2) = ♭(X1, X2) f`.
pub fn one_tensor_flat(t: &HomTensor) -> DualVec {
    let mut coords = vec![t.ring.zero(); t.sig.rank()];
    for (&(f, i, j), c) in &t.terms {
        let b = flat_basis(t.sig, i, j);
        if b != 0 {
            coords[f] = coords[f].add(&c.scale_i64(b));
        }
    }
    DualVec::from_coords(t.sig, t.ring, coords).expect("shape")
}
