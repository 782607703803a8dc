//! `K`-quadratic forms on `π`, stored by their generator values.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::homology::{DualVec, HVec};
use crate::pairing::flat_basis;
use crate::scalar::{RingSpec, Scalar};
use crate::word::{Gen, Letter, SurfaceSig, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    sig: SurfaceSig,
    ring: RingSpec,
    values: Vec<Scalar>,
}

/// The `(class, fibre coefficient)` splitting of `Λ(γ)` given by a `Z`-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCoord {
    pub h: HVec,
    pub z: Scalar,
}

impl QuadraticForm {
    pub fn new(sig: SurfaceSig, ring: RingSpec, values: Vec<Scalar>) -> Result<QuadraticForm> {
        if values.len() != sig.rank() {
            return Err(Error::InvalidArgument(format!("need {} generator values", sig.rank())));
        }
        if let Some(v) = values.iter().find(|v| v.ring() != ring) {
            return Err(Error::RingMismatch(ring, v.ring()));
        }
        Ok(QuadraticForm { sig, ring, values })
    }

    pub fn from_i64s(sig: SurfaceSig, ring: RingSpec, values: &[i64]) -> Result<QuadraticForm> {
        QuadraticForm::new(sig, ring, values.iter().map(|&v| ring.from_i64(v)).collect())
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn value(&self, gen: Gen) -> &Scalar {
        &self.values[gen.index(self.sig)]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Folds `q(u x) = q(u) + q(x) + ♭([u], [x])` over a letter sequence,
    /// reduced or not.
    pub fn eval_letters(&self, letters: &[Letter]) -> Scalar {
        let g = self.sig.g;
        let mut class = vec![0i64; self.sig.rank()];
        let mut cross: i128 = 0;
        let mut acc = self.ring.zero();
        for l in letters {
            let k = l.gen.index(self.sig);
            let s = l.sign();
            // ♭(U, e_k): -U_{B_i} for A_i, U_{A_i} for B_i
            let f = if k < g {
                -class[k + g]
            } else if k < 2 * g {
                class[k - g]
            } else {
                0
            };
            cross += (s * f) as i128;
            if s > 0 {
                acc = acc.add(&self.values[k]);
            } else {
                acc = acc.sub(&self.values[k]);
            }
            class[k] += s;
        }
        acc.add(&int_to_ring(self.ring, cross))
    }

    pub fn eval(&self, w: &Word) -> Result<Scalar> {
        self.sig.check_same(&w.sig())?;
        Ok(self.eval_letters(w.letters()))
    }

    /// `(q + u)(γ) = q(γ) + <u, [γ]>`.
    pub fn torsor_add(&self, u: &DualVec) -> Result<QuadraticForm> {
        u.check_compatible(self.sig, self.ring)?;
        let values = self.values.iter().zip(u.coords()).map(|(a, b)| a.add(b)).collect();
        Ok(QuadraticForm { sig: self.sig, ring: self.ring, values })
    }

    /// The unique `u` with `self = other + u`.
    pub fn torsor_diff(&self, other: &QuadraticForm) -> Result<DualVec> {
        self.sig.check_same(&other.sig)?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let coords = self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect();
        DualVec::from_coords(self.sig, self.ring, coords)
    }

    /// `q(w) - 1`; the caller asserts that `w` has a simple representative.
    pub fn rot_of_simple(&self, w: &Word) -> Result<Scalar> {
        Ok(self.eval(w)?.sub(&self.ring.one()))
    }

    pub fn lambda_coords(&self, w: &Word) -> Result<LambdaCoord> {
        if self.ring != RingSpec::Integers {
            return Err(Error::RingMismatch(RingSpec::Integers, self.ring));
        }
        Ok(LambdaCoord { h: w.homology_class(RingSpec::Integers), z: self.eval(w)? })
    }

    pub fn to_json(&self) -> String {
        let values = self.sig.generators().zip(&self.values).map(|(g, v)| (g.to_string(), v.to_string())).collect();
        let file = FormFile { ring: self.ring.to_string(), g: self.sig.g, n: self.sig.n, values };
        serde_json::to_string_pretty(&file).expect("serialisable")
    }

    /// Reads `{"ring", "g", "n", "values": {"a1": "..."}}`; missing values are 0.
    pub fn from_json(s: &str) -> Result<QuadraticForm> {
        let file: FormFile = serde_json::from_str(s)?;
        let ring: RingSpec = file.ring.parse()?;
        let sig = SurfaceSig::new(file.g, file.n);
        let mut values = vec![ring.zero(); sig.rank()];
        for (name, v) in &file.values {
            let gen = Gen::parse_token(name, false)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator `{name}`")))?;
            gen.check(sig)?;
            values[gen.index(sig)] = Scalar::parse(ring, v)?;
        }
        QuadraticForm::new(sig, ring, values)
    }
}

fn int_to_ring(ring: RingSpec, k: i128) -> Scalar {
    match i64::try_from(k) {
        Ok(v) => ring.from_i64(v),
        Err(_) => ring.from_bigint(k.into()),
    }
}

#[derive(Serialize, Deserialize)]
struct FormFile {
    ring: String,
    g: usize,
    #[serde(default)]
    n: usize,
    values: BTreeMap<String, String>,
}

/// The form `d`: every generator value is 0.
pub fn morita_d(sig: SurfaceSig, ring: RingSpec) -> Result<QuadraticForm> {
    sig.require_closed_boundary("the form d")?;
    if sig.g == 0 {
        return Err(Error::UnsupportedSignature("the form d needs g >= 1".into()));
    }
    Ok(QuadraticForm { sig, ring, values: vec![ring.zero(); sig.rank()] })
}

/// `q(x) = ♭(θ_2(x))`.
pub fn from_expansion(theta: &Expansion) -> Result<QuadraticForm> {
    let sig = theta.sig();
    sig.require_closed_boundary("a form from an expansion")?;
    let ring = theta.ring();
    let values = sig.generators().map(|g| flat_of_degree2(&theta.theta2(g))).collect();
    QuadraticForm::new(sig, ring, values)
}

/// `♭` on the degree-2 part of a tensor.
pub fn flat_of_degree2(t: &crate::tensor::Tensor) -> Scalar {
    let mut acc = t.ring().zero();
    for (k, c) in t.part(2) {
        let b = flat_basis(t.sig(), k[0] as usize, k[1] as usize);
        if b != 0 {
            acc = acc.add(&c.scale_i64(b));
        }
    }
    acc
}

/// A small random ring element: integers in `-3..=3`, halves and thirds over `Q`.
pub fn random_scalar(ring: RingSpec, rng: &mut impl Rng) -> Scalar {
    let p = rng.gen_range(-3i64..=3);
    match ring {
        RingSpec::Rationals if rng.gen_bool(0.5) => {
            let q = rng.gen_range(2i64..=3);
            Scalar::parse(ring, &format!("{p}/{q}")).expect("fraction")
        }
        _ => ring.from_i64(p),
    }
}

pub fn random_form_with(sig: SurfaceSig, ring: RingSpec, rng: &mut impl Rng) -> QuadraticForm {
    let values = (0..sig.rank()).map(|_| random_scalar(ring, rng)).collect();
    QuadraticForm { sig, ring, values }
}

pub fn random_dual_with(sig: SurfaceSig, ring: RingSpec, rng: &mut impl Rng) -> DualVec {
    let coords = (0..sig.rank()).map(|_| random_scalar(ring, rng)).collect();
    DualVec::from_coords(sig, ring, coords).expect("shape")
}
