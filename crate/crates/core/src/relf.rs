//! Rotation numbers of the boundary circles of `Σ_{g,n+1}`.
//!
//! `ρ_j = q(d_j) - 1` for `j >= 1` and `ρ_0 = q(ζ^{-1}) + 1`, where `ζ` is the
//! boundary word. With these conventions `Σ ρ_j = χ` for every form.

use std::fmt;

use crate::error::{Error, Result};
use crate::homology::{DualVec, HVec};
use crate::qform::QuadraticForm;
use crate::report::Check;
use crate::scalar::{RingSpec, Scalar};
use crate::word::{Gen, SurfaceSig, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotVector {
    ring: RingSpec,
    entries: Vec<Scalar>,
}

impl RotVector {
    pub fn new(ring: RingSpec, entries: Vec<Scalar>) -> Result<RotVector> {
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring, e.ring()));
        }
        Ok(RotVector { ring, entries })
    }

    pub fn from_i64s(ring: RingSpec, v: &[i64]) -> RotVector {
        RotVector { ring, entries: v.iter().map(|&x| ring.from_i64(x)).collect() }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn sum(&self) -> Scalar {
        self.entries.iter().fold(self.ring.zero(), |a, b| a.add(b))
    }

    pub fn sub(&self, other: &RotVector) -> RotVector {
        RotVector {
            ring: self.ring,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let v: Vec<String> = self.entries.iter().map(Scalar::to_string).collect();
        serde_json::to_string(&v).expect("serialisable")
    }

    pub fn from_json(ring: RingSpec, s: &str) -> Result<RotVector> {
        let v: Vec<String> = serde_json::from_str(s)?;
        let entries = v.iter().map(|x| Scalar::parse(ring, x)).collect::<Result<Vec<_>>>()?;
        Ok(RotVector { ring, entries })
    }
}

impl fmt::Display for RotVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.entries.iter().map(Scalar::to_string).collect();
        write!(f, "({})", v.join(", "))
    }
}

pub fn rot_vector(q: &QuadraticForm) -> RotVector {
    let sig = q.sig();
    let ring = q.ring();
    let one = ring.one();
    let mut entries = Vec::with_capacity(sig.n + 1);
    let zeta_inv = Word::boundary_word(sig).inv();
    entries.push(q.eval_letters(zeta_inv.letters()).add(&one));
    for j in 1..=sig.n {
        entries.push(q.value(Gen::D(j)).sub(&one));
    }
    RotVector { ring, entries }
}

fn chi(sig: SurfaceSig, ring: RingSpec) -> Scalar {
    ring.from_i64(sig.euler_characteristic())
}

/// `Σ_j ρ_j = χ(Σ)`.
pub fn ph_check(q: &QuadraticForm) -> Check {
    let lhs = rot_vector(q).sum();
    let rhs = chi(q.sig(), q.ring());
    let defect = lhs.sub(&rhs);
    Check::compare(&lhs, &rhs, defect)
}

/// Whether some form has rotation vector `rho`.
pub fn feasible(sig: SurfaceSig, ring: RingSpec, rho: &RotVector) -> Result<bool> {
    if rho.ring != ring {
        return Err(Error::RingMismatch(ring, rho.ring));
    }
    if rho.entries.len() != sig.n + 1 {
        return Err(Error::InvalidArgument(format!(
            "rotation vector of length {} on {sig}",
            rho.entries.len()
        )));
    }
    Ok(rho.sum() == chi(sig, ring))
}

/// Predicted change of `ρ` under `q -> q + u`.
pub fn predicted_shift(sig: SurfaceSig, u: &DualVec) -> RotVector {
    let ring = u.ring();
    let d: Vec<Scalar> = (1..=sig.n).map(|j| u.pair(&HVec::of_gen(sig, ring, Gen::D(j)))).collect();
    let total = d.iter().fold(ring.zero(), |a, b| a.add(b));
    let mut entries = vec![total.neg()];
    entries.extend(d);
    RotVector { ring, entries }
}

/// `ρ(q + u) - ρ(q)` against `(-<u, ΣD_j>, <u, D_1>, ..., <u, D_n>)`.
pub fn shift_report(q: &QuadraticForm, u: &DualVec) -> Result<Check> {
    let moved = q.torsor_add(u)?;
    let lhs = rot_vector(&moved).sub(&rot_vector(q));
    let rhs = predicted_shift(q.sig(), u);
    let pass = lhs == rhs;
    let defect = lhs.sub(&rhs);
    Ok(Check::new(pass, lhs, rhs, defect))
}
