//! Truncated `K`-expansions `θ: π -> T(H)`, fixed by their values on the
//! free generators.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::HVec;
use crate::mcg::MCGElement;
use crate::scalar::{RingSpec, Scalar};
use crate::tensor::{key_name, Tensor, DEFAULT_TRUNCATION};
use crate::word::{Gen, SurfaceSig, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    sig: SurfaceSig,
    ring: RingSpec,
    trunc: usize,
    theta: Vec<Tensor>,
    theta_inv: Vec<Tensor>,
}

impl Expansion {
    /// Builds `θ(x) = 1 + [x] + higher[x]` for every generator `x`.
    pub fn from_higher(sig: SurfaceSig, ring: RingSpec, trunc: usize, higher: Vec<Tensor>) -> Result<Expansion> {
        if trunc < 2 {
            return Err(Error::InvalidExpansion(format!("truncation {trunc} < 2")));
        }
        if higher.len() != sig.rank() {
            return Err(Error::InvalidExpansion(format!(
                "{} generator values for rank {}",
                higher.len(),
                sig.rank()
            )));
        }
        let mut theta = Vec::with_capacity(sig.rank());
        for (k, h) in higher.into_iter().enumerate() {
            if h.sig() != sig || h.ring() != ring || h.truncation() != trunc {
                return Err(Error::InvalidExpansion(format!("value of {} has the wrong shape", Gen::from_index(sig, k))));
            }
            if h.part_len(0) + h.part_len(1) > 0 {
                return Err(Error::InvalidExpansion(format!(
                    "value of {} carries degree 0/1 terms",
                    Gen::from_index(sig, k)
                )));
            }
            let base = Tensor::one(sig, ring, trunc).add(&Tensor::monomial(sig, ring, trunc, &[k], ring.one()));
            theta.push(base.add(&h));
        }
        let theta_inv = theta.iter().map(|t| t.inverse().expect("unit")).collect();
        Ok(Expansion { sig, ring, trunc, theta, theta_inv })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn value(&self, gen: Gen) -> &Tensor {
        &self.theta[gen.index(self.sig)]
    }

    /// The degree-2 part of `θ(x)` for a generator.
    pub fn theta2(&self, gen: Gen) -> Tensor {
        self.value(gen).degree_part(2)
    }

    pub fn eval(&self, w: &Word) -> Result<Tensor> {
        self.eval_to(w, self.truncation())
    }

    /// `θ(w)` with every degree above `top` discarded.
    pub fn eval_to(&self, w: &Word, top: usize) -> Result<Tensor> {
        self.sig.check_same(&w.sig())?;
        let top = top.min(self.truncation());
        let mut acc = Tensor::one(self.sig, self.ring, self.truncation());
        for l in w.letters() {
            let k = l.gen.index(self.sig);
            let t = if l.inverse { &self.theta_inv[k] } else { &self.theta[k] };
            acc = acc.mul_upto(t, top);
        }
        Ok(acc)
    }

    /// `θ_2(w)`.
    pub fn theta2_word(&self, w: &Word) -> Result<Tensor> {
        Ok(self.eval_to(w, 2)?.degree_part(2))
    }

    fn higher(&self) -> Vec<Tensor> {
        self.theta
            .iter()
            .map(|t| {
                let mut h = t.clone();
                for m in 0..=1 {
                    h = h.sub(&t.degree_part(m));
                }
                h
            })
            .collect()
    }

    /// Replaces `θ_2` of one generator by `θ_2 + delta`.
    pub fn perturb(&self, gen: Gen, delta: &Tensor) -> Result<Expansion> {
        let mut h = self.higher();
        let k = gen.index(self.sig);
        h[k] = h[k].try_add(delta)?;
        Expansion::from_higher(self.sig, self.ring, self.truncation(), h)
    }

    /// `x -> |φ|^⊗ θ(φ^{-1}(x))`, again an expansion.
    pub fn transport(&self, phi: &MCGElement) -> Result<Expansion> {
        self.sig.check_same(&phi.sig())?;
        let m = phi.hmatrix(self.ring);
        let trunc = self.truncation();
        let mut higher = Vec::with_capacity(self.sig.rank());
        for gen in self.sig.generators() {
            let t = self.eval(&phi.apply_bwd(&Word::generator(self.sig, gen)))?.map_linear(&m);
            higher.push(t.sub(&t.degree_part(0)).sub(&t.degree_part(1)));
        }
        Expansion::from_higher(self.sig, self.ring, trunc, higher)
    }

    pub fn to_json(&self) -> String {
        let mut theta = BTreeMap::new();
        for gen in self.sig.generators() {
            let t = self.value(gen);
            let mut terms = Vec::new();
            for m in 2..=self.truncation() {
                for (k, c) in t.part(m) {
                    terms.push(TermJson {
                        deg: m,
                        idx: k.iter().map(|&i| Gen::from_index(self.sig, i as usize).class_name()).collect(),
                        coef: c.to_string(),
                    });
                }
            }
            theta.insert(gen.to_string(), terms);
        }
        let file = ExpansionFile {
            ring: self.ring.to_string(),
            g: self.sig.g,
            n: self.sig.n,
            trunc: self.truncation(),
            theta,
        };
        serde_json::to_string_pretty(&file).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Expansion> {
        let file: ExpansionFile = serde_json::from_str(s)?;
        let ring: RingSpec = file.ring.parse()?;
        let sig = SurfaceSig::new(file.g, file.n);
        let trunc = file.trunc;
        let mut higher = vec![Tensor::zero(sig, ring, trunc); sig.rank()];
        for (name, terms) in &file.theta {
            let gen = Gen::parse_token(name, false)
                .ok_or_else(|| Error::InvalidExpansion(format!("unknown generator `{name}`")))?;
            gen.check(sig)?;
            let h = &mut higher[gen.index(sig)];
            for t in terms {
                if t.deg < 2 || t.deg > trunc || t.idx.len() != t.deg {
                    return Err(Error::InvalidExpansion(format!(
                        "term of degree {} with {} indices for {name} (degrees 2..={trunc} only)",
                        t.deg,
                        t.idx.len()
                    )));
                }
                let idx = t
                    .idx
                    .iter()
                    .map(|s| {
                        let g = Gen::parse_token(s, true)
                            .ok_or_else(|| Error::InvalidExpansion(format!("bad basis symbol `{s}`")))?;
                        g.check(sig)?;
                        Ok(g.index(sig))
                    })
                    .collect::<Result<Vec<_>>>()?;
                h.add_monomial(&idx, Scalar::parse(ring, &t.coef)?);
            }
        }
        Expansion::from_higher(sig, ring, trunc, higher)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    deg: usize,
    idx: Vec<String>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct ExpansionFile {
    ring: String,
    g: usize,
    #[serde(default)]
    n: usize,
    #[serde(rename = "N")]
    trunc: usize,
    theta: BTreeMap<String, Vec<TermJson>>,
}

fn mono(sig: SurfaceSig, ring: RingSpec, trunc: usize, idx: &[usize], c: i64) -> Tensor {
    Tensor::monomial(sig, ring, trunc, idx, ring.from_i64(c))
}

/// `θ_2(a_i) = A_i B_i`, `θ_2(b_i) = B_i A_i`, nothing in degree 3.
pub fn make_default_w3s(sig: SurfaceSig, ring: RingSpec) -> Result<Expansion> {
    make_default_w3s_truncated(sig, ring, DEFAULT_TRUNCATION)
}

pub fn make_default_w3s_truncated(sig: SurfaceSig, ring: RingSpec, trunc: usize) -> Result<Expansion> {
    sig.require_closed_boundary("an expansion")?;
    let g = sig.g;
    let mut higher = Vec::with_capacity(sig.rank());
    for i in 0..g {
        higher.push(mono(sig, ring, trunc, &[i, i + g], 1));
    }
    for i in 0..g {
        higher.push(mono(sig, ring, trunc, &[i + g, i], 1));
    }
    Expansion::from_higher(sig, ring, trunc, higher)
}

/// `θ_2 = 0` on every generator; not weakly 3-symplectic once `g >= 1`.
pub fn make_non_w3s(sig: SurfaceSig, ring: RingSpec) -> Result<Expansion> {
    sig.require_closed_boundary("an expansion")?;
    let higher = (0..sig.rank()).map(|_| Tensor::zero(sig, ring, DEFAULT_TRUNCATION)).collect();
    Expansion::from_higher(sig, ring, DEFAULT_TRUNCATION, higher)
}

fn random_tensor(sig: SurfaceSig, ring: RingSpec, trunc: usize, rng: &mut impl Rng) -> Tensor {
    let r = sig.rank();
    let mut t = Tensor::zero(sig, ring, trunc);
    for i in 0..r {
        for j in 0..r {
            t.add_monomial(&[i, j], ring.from_i64(rng.gen_range(-2..=2)));
        }
    }
    if trunc >= 3 {
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if rng.gen_ratio(1, 8) {
                        t.add_monomial(&[i, j, k], ring.from_i64(rng.gen_range(-2..=2)));
                    }
                }
            }
        }
    }
    t
}

/// Arbitrary `θ_2`, `θ_3` on the generators, coefficients in `{-2..2}`.
pub fn random_expansion_with(sig: SurfaceSig, ring: RingSpec, rng: &mut impl Rng) -> Result<Expansion> {
    sig.require_closed_boundary("an expansion")?;
    let higher = (0..sig.rank()).map(|_| random_tensor(sig, ring, DEFAULT_TRUNCATION, rng)).collect();
    Expansion::from_higher(sig, ring, DEFAULT_TRUNCATION, higher)
}

pub fn make_random_expansion(sig: SurfaceSig, ring: RingSpec, seed: u64) -> Result<Expansion> {
    random_expansion_with(sig, ring, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A random weakly 3-symplectic expansion: the default one moved by
/// perturbations that keep `θ_3(ζ) = 0`, random degree-3 values, and
/// optionally transported by a random mapping class.
pub fn random_w3s_with(sig: SurfaceSig, ring: RingSpec, rng: &mut impl Rng) -> Result<Expansion> {
    let base = make_default_w3s(sig, ring)?;
    let g = sig.g;
    let trunc = DEFAULT_TRUNCATION;
    let mut higher = base.higher();
    for i in 0..g {
        let (a, b) = (i, i + g);
        let mut coef = || rng.gen_range(-2i64..=2);
        let (r, s, t, u) = (coef(), coef(), coef(), coef());
        // [A, AA] = 0 and [B, BB] = 0
        higher[b] = higher[b].add(&mono(sig, ring, trunc, &[a, a], r));
        higher[a] = higher[a].add(&mono(sig, ring, trunc, &[b, b], s));
        // [A, AB + BA] = [B, -AA] and [A, -BB] = [B, -(AB + BA)]
        let sym = mono(sig, ring, trunc, &[a, b], 1).add(&mono(sig, ring, trunc, &[b, a], 1));
        higher[b] = higher[b].add(&sym.scale(&ring.from_i64(t)));
        higher[a] = higher[a].sub(&mono(sig, ring, trunc, &[a, a], t));
        higher[b] = higher[b].sub(&mono(sig, ring, trunc, &[b, b], u));
        higher[a] = higher[a].add(&sym.scale(&ring.from_i64(u)));
    }
    for h in higher.iter_mut() {
        let noise = random_tensor(sig, ring, trunc, rng).degree_part(3);
        *h = h.add(&noise);
    }
    let theta = Expansion::from_higher(sig, ring, trunc, higher)?;
    if g > 0 && rng.gen_bool(0.5) {
        let phi = crate::mcg::random_mcg_with(sig, 2, rng)?;
        return theta.transport(&phi);
    }
    Ok(theta)
}

pub fn make_random_w3s(sig: SurfaceSig, ring: RingSpec, seed: u64) -> Result<Expansion> {
    random_w3s_with(sig, ring, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn require_degree3(theta: &Expansion) -> Result<()> {
    theta.sig.require_closed_boundary("θ_3(ζ)")?;
    if theta.truncation() < 3 {
        return Err(Error::InvalidArgument("θ_3 needs truncation >= 3".into()));
    }
    Ok(())
}

/// `Σ_i [A_i, θ_2(b_i) - B_i A_i] - [B_i, θ_2(a_i) - A_i B_i]`.
pub fn theta3_zeta_closed_form(theta: &Expansion) -> Result<Tensor> {
    require_degree3(theta)?;
    let (sig, ring, trunc) = (theta.sig, theta.ring, theta.truncation());
    let g = sig.g;
    let mut out = Tensor::zero(sig, ring, trunc);
    for i in 0..g {
        let a = mono(sig, ring, trunc, &[i], 1);
        let b = mono(sig, ring, trunc, &[i + g], 1);
        let p = theta.theta2(Gen::B(i + 1)).sub(&mono(sig, ring, trunc, &[i + g, i], 1));
        let q = theta.theta2(Gen::A(i + 1)).sub(&mono(sig, ring, trunc, &[i, i + g], 1));
        out = out.add(&a.bracket(&p)).sub(&b.bracket(&q));
    }
    Ok(out)
}

/// `θ_3(ζ)` by direct evaluation.
pub fn theta3_zeta(theta: &Expansion) -> Result<Tensor> {
    require_degree3(theta)?;
    Ok(theta.eval_to(&Word::boundary_word(theta.sig), 3)?.degree_part(3))
}

pub fn is_weakly_3_symplectic(theta: &Expansion) -> Result<bool> {
    Ok(theta3_zeta(theta)?.is_zero())
}

/// `Σ_i A_i B_i - B_i A_i`.
pub fn symplectic_element(sig: SurfaceSig, ring: RingSpec, trunc: usize) -> Tensor {
    let g = sig.g;
    let mut out = Tensor::zero(sig, ring, trunc);
    for i in 0..g {
        out.add_monomial(&[i, i + g], ring.one());
        out.add_monomial(&[i + g, i], ring.from_i64(-1));
    }
    out
}

/// Flattened description used in reports: degree-2 and degree-3 values.
pub fn describe(theta: &Expansion) -> String {
    let mut parts = Vec::new();
    for gen in theta.sig.generators() {
        let t = theta.value(gen);
        let mut terms = Vec::new();
        for m in 2..=theta.truncation() {
            for (k, c) in t.part(m) {
                terms.push(format!("{c}·{}", key_name(theta.sig, k)));
            }
        }
        parts.push(format!("{gen}: [{}]", terms.join(", ")));
    }
    parts.join("; ")
}

/// Degree-1 check used by validation tests.
pub fn degree1_is_class(theta: &Expansion) -> bool {
    theta.sig.generators().all(|gen| {
        let t = theta.value(gen);
        t.coef(&[]).is_one() && t.degree1() == HVec::of_gen(theta.sig, theta.ring, gen)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingSpec = RingSpec::Integers;

    #[test]
    fn default_expansion() {
        let sig = SurfaceSig::new(2, 0);
        let th = make_default_w3s(sig, Z).unwrap();
        assert!(is_weakly_3_symplectic(&th).unwrap());
        assert_eq!(th.theta2(Gen::A(1)).to_string(), "A1B1");
        let a1 = Word::parse(sig, "a1").unwrap();
        assert_eq!(th.eval_to(&a1, 2).unwrap().to_string(), "1 + A1 + A1B1");
        assert!(matches!(
            make_default_w3s(SurfaceSig::new(1, 1), Z),
            Err(Error::UnsupportedSignature(_))
        ));
        let t = th.eval(&Word::parse(sig, "a1 a1'").unwrap()).unwrap();
        assert_eq!(t, Tensor::one(sig, Z, 3));
    }

    #[test]
    fn zeta_degree_two() {
        for g in 1..=3 {
            let sig = SurfaceSig::new(g, 0);
            let th = make_random_expansion(sig, RingSpec::Mod(5), 11 + g as u64).unwrap();
            let t2 = th.theta2_word(&Word::boundary_word(sig)).unwrap();
            assert_eq!(t2, symplectic_element(sig, RingSpec::Mod(5), 3));
        }
    }

    #[test]
    fn random_expansion_is_deterministic() {
        let sig = SurfaceSig::new(2, 0);
        let x = make_random_expansion(sig, Z, 3).unwrap();
        assert_eq!(x, make_random_expansion(sig, Z, 3).unwrap());
        assert!(degree1_is_class(&x));
        assert_ne!(x, make_random_expansion(sig, Z, 4).unwrap());
    }

    #[test]
    fn zeroed_theta2_is_not_w3s() {
        let sig = SurfaceSig::new(1, 0);
        let th = make_non_w3s(sig, Z).unwrap();
        assert!(!is_weakly_3_symplectic(&th).unwrap());
        let closed = theta3_zeta_closed_form(&th).unwrap();
        // [A, -BA] - [B, -AB] = -ABA + BAA + BAB - ABB
        let mut expect = Tensor::zero(sig, Z, 3);
        for (idx, c) in [([0, 1, 0], -1), ([1, 0, 0], 1), ([1, 0, 1], 1), ([0, 1, 1], -1)] {
            expect.add_monomial(&idx, Z.from_i64(c));
        }
        assert_eq!(closed, expect);
        assert_eq!(closed, theta3_zeta(&th).unwrap());
    }

    #[test]
    fn random_w3s_is_w3s() {
        for (g, r) in [(1, Z), (2, RingSpec::Mod(6)), (3, RingSpec::Rationals)] {
            for seed in 0..5 {
                let th = make_random_w3s(SurfaceSig::new(g, 0), r, seed).unwrap();
                assert!(is_weakly_3_symplectic(&th).unwrap(), "g={g} seed={seed}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let sig = SurfaceSig::new(2, 0);
        let th = make_random_expansion(sig, RingSpec::Mod(5), 9).unwrap();
        let back = Expansion::from_json(&th.to_json()).unwrap();
        assert_eq!(th, back);
        let bad = r#"{"ring":"Z","g":1,"N":3,"theta":{"a1":[{"deg":1,"idx":["A1"],"coef":"1"}]}}"#;
        assert!(matches!(Expansion::from_json(bad), Err(Error::InvalidExpansion(_))));
    }
}
