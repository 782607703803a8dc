//! Mapping classes of `Σ_{g,n+1}` as free-group automorphisms fixing `ζ`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Matrix;
use crate::pairing::flat_basis;
use crate::scalar::RingSpec;
use crate::word::{Gen, SurfaceSig, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCGElement {
    sig: SurfaceSig,
    fwd: Vec<Word>,
    bwd: Vec<Word>,
    fwd_inv: Vec<Word>,
    bwd_inv: Vec<Word>,
    hmat: Matrix,
    hmat_inv: Matrix,
}

fn class_matrix(sig: SurfaceSig, images: &[Word]) -> Matrix {
    let cols: Vec<_> = images.iter().map(|w| w.homology_class(RingSpec::Integers)).collect();
    Matrix::from_columns(RingSpec::Integers, sig.rank(), &cols)
}

impl MCGElement {
    /// Validates `fwd` / `bwd` (indexed in basis order) and builds the element.
    pub fn new(sig: SurfaceSig, fwd: Vec<Word>, bwd: Vec<Word>) -> Result<MCGElement> {
        if fwd.len() != sig.rank() || bwd.len() != sig.rank() {
            return Err(Error::InvalidArgument(format!("need images of all {} generators", sig.rank())));
        }
        for w in fwd.iter().chain(&bwd) {
            sig.check_same(&w.sig())?;
        }
        let phi = MCGElement::assemble(sig, fwd, bwd);
        for gen in sig.generators() {
            let x = Word::generator(sig, gen);
            let k = gen.index(sig);
            if phi.apply_bwd(&phi.fwd[k]) != x || phi.apply_fwd(&phi.bwd[k]) != x {
                return Err(Error::NotInverse(format!("at {gen}")));
            }
        }
        let zeta = Word::boundary_word(sig);
        let image = phi.apply_fwd(&zeta);
        if image != zeta {
            return Err(Error::BoundaryNotFixed(format!("ζ ↦ {image}")));
        }
        if !phi.preserves_flat() {
            return Err(Error::NotSymplectic);
        }
        Ok(phi)
    }

    fn assemble(sig: SurfaceSig, fwd: Vec<Word>, bwd: Vec<Word>) -> MCGElement {
        let fwd_inv = fwd.iter().map(Word::inv).collect();
        let bwd_inv = bwd.iter().map(Word::inv).collect();
        let hmat = class_matrix(sig, &fwd);
        let hmat_inv = class_matrix(sig, &bwd);
        MCGElement { sig, fwd, bwd, fwd_inv, bwd_inv, hmat, hmat_inv }
    }

    fn preserves_flat(&self) -> bool {
        let r = self.sig.rank();
        let col = |j: usize| -> Vec<i64> {
            (0..r).map(|i| self.hmat.entry(i, j).to_i64().expect("small entries")).collect()
        };
        let cols: Vec<Vec<i64>> = (0..r).map(col).collect();
        let flat = |x: &[i64], y: &[i64]| -> i128 {
            let g = self.sig.g;
            (0..g).map(|i| x[i] as i128 * y[i + g] as i128 - x[i + g] as i128 * y[i] as i128).sum()
        };
        (0..r).all(|i| (0..r).all(|j| flat(&cols[i], &cols[j]) == flat_basis(self.sig, i, j) as i128))
    }

    pub fn identity(sig: SurfaceSig) -> MCGElement {
        let gens: Vec<Word> = sig.generators().map(|g| Word::generator(sig, g)).collect();
        MCGElement::assemble(sig, gens.clone(), gens)
    }

    fn from_images(sig: SurfaceSig, fwd: &[(Gen, &str)], bwd: &[(Gen, &str)]) -> Result<MCGElement> {
        let mut f: Vec<Word> = sig.generators().map(|g| Word::generator(sig, g)).collect();
        let mut b = f.clone();
        for (gen, w) in fwd {
            f[gen.index(sig)] = Word::parse(sig, w)?;
        }
        for (gen, w) in bwd {
            b[gen.index(sig)] = Word::parse(sig, w)?;
        }
        MCGElement::new(sig, f, b)
    }

    /// `b_i -> b_i a_i`.
    pub fn twist_a(sig: SurfaceSig, i: usize) -> Result<MCGElement> {
        Gen::A(i).check(sig)?;
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        MCGElement::from_images(sig, &[(Gen::B(i), &format!("{b} {a}"))], &[(Gen::B(i), &format!("{b} {a}'"))])
    }

    /// `a_i -> a_i b_i`.
    pub fn twist_b(sig: SurfaceSig, i: usize) -> Result<MCGElement> {
        Gen::A(i).check(sig)?;
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        MCGElement::from_images(sig, &[(Gen::A(i), &format!("{a} {b}"))], &[(Gen::A(i), &format!("{a} {b}'"))])
    }

    /// A handle-mixing class sending `a_i` to `a_i a_{i+1}`, so that
    /// `a_i`, `a_{i+1}` and its image bound a pair of pants.
    pub fn mix(sig: SurfaceSig, i: usize) -> Result<MCGElement> {
        Gen::A(i).check(sig)?;
        Gen::A(i + 1).check(sig)?;
        let j = i + 1;
        let (a1, b1, a2, b2) = (format!("a{i}"), format!("b{i}"), format!("a{j}"), format!("b{j}"));
        let fwd = [
            (Gen::A(i), format!("{a1} {a2}")),
            (Gen::B(i), format!("{a2}' {b1}")),
            (Gen::A(j), format!("{a2}' {b1} {a1} {b2}'")),
            (Gen::B(j), format!("{b2} {a2} {b2}'")),
        ];
        let bwd = [
            (Gen::A(i), format!("{b1}' {a2} {b2}' {a2}' {b1} {a1}")),
            (Gen::B(i), format!("{a1}' {b1}' {a2} {b2} {a2}' {b1} {a1} {b1}")),
            (Gen::A(j), format!("{a1}' {b1}' {a2} {b2} {a2}' {b1} {a1}")),
            (Gen::B(j), format!("{b2}' {a2}' {b1} {a1}")),
        ];
        let f: Vec<(Gen, &str)> = fwd.iter().map(|(g, w)| (*g, w.as_str())).collect();
        let b: Vec<(Gen, &str)> = bwd.iter().map(|(g, w)| (*g, w.as_str())).collect();
        MCGElement::from_images(sig, &f, &b)
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn fwd_image(&self, gen: Gen) -> &Word {
        &self.fwd[gen.index(self.sig)]
    }

    pub fn bwd_image(&self, gen: Gen) -> &Word {
        &self.bwd[gen.index(self.sig)]
    }

    /// `φ(w)`.
    pub fn apply_fwd(&self, w: &Word) -> Word {
        w.substitute(&self.fwd, &self.fwd_inv, self.sig)
    }

    /// `φ^{-1}(w)`.
    pub fn apply_bwd(&self, w: &Word) -> Word {
        w.substitute(&self.bwd, &self.bwd_inv, self.sig)
    }

    /// The matrix of `|φ|` on `H_K`; column `j` is the class of `φ(e_j)`.
    pub fn hmatrix(&self, ring: RingSpec) -> Matrix {
        self.hmat.change_ring(ring)
    }

    pub fn hmatrix_inv(&self, ring: RingSpec) -> Matrix {
        self.hmat_inv.change_ring(ring)
    }

    /// `(φψ)(x) = φ(ψ(x))`.
    pub fn compose(&self, psi: &MCGElement) -> Result<MCGElement> {
        self.sig.check_same(&psi.sig)?;
        let fwd = psi.fwd.iter().map(|w| self.apply_fwd(w)).collect();
        let bwd = self.bwd.iter().map(|w| psi.apply_bwd(w)).collect();
        MCGElement::new(self.sig, fwd, bwd)
    }

    pub fn invert(&self) -> MCGElement {
        MCGElement::assemble(self.sig, self.bwd.clone(), self.fwd.clone())
    }

    /// `ψ φ ψ^{-1}` where `self = ψ`.
    pub fn conjugate(&self, phi: &MCGElement) -> Result<MCGElement> {
        self.compose(phi)?.compose(&self.invert())
    }

    pub fn pow(&self, k: i64) -> Result<MCGElement> {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = MCGElement::identity(self.sig);
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base)?;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.sig
            .generators()
            .all(|g| self.fwd_image(g) == &Word::generator(self.sig, g))
    }

    /// Total letter count of the forward images.
    pub fn size(&self) -> usize {
        self.fwd.iter().map(Word::len).sum()
    }

    pub fn to_json(&self) -> String {
        let map = |ws: &[Word]| -> BTreeMap<String, String> {
            self.sig.generators().zip(ws).map(|(g, w)| (g.to_string(), w.to_string())).collect()
        };
        let file = MCGFile { g: Some(self.sig.g), n: Some(self.sig.n), fwd: map(&self.fwd), bwd: map(&self.bwd) };
        serde_json::to_string_pretty(&file).expect("serialisable")
    }

    /// Reads `{"fwd": {...}, "bwd": {...}}`; `g`, `n` default to the
    /// generators named in `fwd`.
    pub fn from_json(s: &str) -> Result<MCGElement> {
        let file: MCGFile = serde_json::from_str(s)?;
        let mut g = 0;
        let mut n = 0;
        for key in file.fwd.keys() {
            match Gen::parse_token(key, false) {
                Some(Gen::A(i)) | Some(Gen::B(i)) => g = g.max(i),
                Some(Gen::D(j)) => n = n.max(j),
                None => return Err(Error::InvalidArgument(format!("unknown generator `{key}`"))),
            }
        }
        let sig = SurfaceSig::new(file.g.unwrap_or(g), file.n.unwrap_or(n));
        let read = |m: &BTreeMap<String, String>| -> Result<Vec<Word>> {
            sig.generators()
                .map(|gen| {
                    let w = m
                        .get(&gen.to_string())
                        .ok_or_else(|| Error::InvalidArgument(format!("missing image of {gen}")))?;
                    Word::parse(sig, w)
                })
                .collect()
        };
        MCGElement::new(sig, read(&file.fwd)?, read(&file.bwd)?)
    }
}

impl fmt::Display for MCGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for gen in self.sig.generators() {
            let w = self.fwd_image(gen);
            if w == &Word::generator(self.sig, gen) {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{gen} ↦ {w}")?;
            first = false;
        }
        if first {
            write!(f, "id")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MCGFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    fwd: BTreeMap<String, String>,
    bwd: BTreeMap<String, String>,
}

/// A named built-in generator raised to a power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    TwistA(usize),
    TwistB(usize),
    Mix(usize),
}

impl Builtin {
    pub fn element(self, sig: SurfaceSig) -> Result<MCGElement> {
        match self {
            Builtin::TwistA(i) => MCGElement::twist_a(sig, i),
            Builtin::TwistB(i) => MCGElement::twist_b(sig, i),
            Builtin::Mix(i) => MCGElement::mix(sig, i),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::TwistA(i) => write!(f, "twist_a:{i}"),
            Builtin::TwistB(i) => write!(f, "twist_b:{i}"),
            Builtin::Mix(i) => write!(f, "mix:{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub gen: Builtin,
    pub exp: i64,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^{}", self.gen, self.exp)
        }
    }
}

/// Writes factors as a parseable expression, `id` when empty.
pub fn format_factors(factors: &[Factor]) -> String {
    if factors.is_empty() {
        return "id".into();
    }
    factors.iter().map(Factor::to_string).collect::<Vec<_>>().join(" * ")
}

/// `f_1 * f_2 * ...` acting as `f_1 ∘ f_2 ∘ ...`.
pub fn from_factors(sig: SurfaceSig, factors: &[Factor]) -> Result<MCGElement> {
    let mut out = MCGElement::identity(sig);
    for f in factors {
        out = out.compose(&f.gen.element(sig)?.pow(f.exp)?)?;
    }
    Ok(out)
}

/// Parses `twist_a:1 * twist_b:2^-1 * mix:1`; `id` is the identity.
pub fn parse_factors(expr: &str) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in expr.split('*') {
        let start = offset + (chunk.len() - chunk.trim_start().len());
        offset += chunk.len() + 1;
        let tok = chunk.trim();
        if tok.is_empty() {
            return Err(Error::parse(start, "empty factor"));
        }
        if tok == "id" {
            continue;
        }
        let (head, exp) = match tok.split_once('^') {
            Some((h, e)) => {
                let e: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(start + h.len() + 1, format!("bad exponent `{e}`")))?;
                (h.trim(), e)
            }
            None => (tok, 1),
        };
        let (name, idx) = head
            .split_once(':')
            .ok_or_else(|| Error::parse(start, format!("expected `name:index`, got `{head}`")))?;
        let i: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(start + name.len() + 1, format!("bad index `{idx}`")))?;
        let gen = match name.trim() {
            "twist_a" => Builtin::TwistA(i),
            "twist_b" => Builtin::TwistB(i),
            "mix" => Builtin::Mix(i),
            other => return Err(Error::parse(start, format!("unknown mapping class `{other}`"))),
        };
        out.push(Factor { gen, exp });
    }
    Ok(out)
}

pub fn parse_phi(sig: SurfaceSig, expr: &str) -> Result<MCGElement> {
    from_factors(sig, &parse_factors(expr)?)
}

fn random_twist(g: usize, rng: &mut impl Rng) -> Factor {
    let i = rng.gen_range(1..=g);
    let gen = if rng.gen_bool(0.5) { Builtin::TwistA(i) } else { Builtin::TwistB(i) };
    let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
    Factor { gen, exp }
}

/// A random word of length `1..=max_len` in the twists `twist_a(i)`,
/// `twist_b(i)`, their inverses and conjugates `s t s^-1` of one by another.
pub fn random_factors(sig: SurfaceSig, max_len: usize, rng: &mut impl Rng) -> Vec<Factor> {
    let len = rng.gen_range(1..=max_len.max(1));
    let mut out = Vec::new();
    for _ in 0..len {
        if rng.gen_ratio(1, 3) {
            let s = random_twist(sig.g, rng);
            let t = random_twist(sig.g, rng);
            out.push(s);
            out.push(t);
            out.push(Factor { gen: s.gen, exp: -s.exp });
        } else {
            out.push(random_twist(sig.g, rng));
        }
    }
    out
}

pub fn random_mcg_with(sig: SurfaceSig, max_len: usize, rng: &mut impl Rng) -> Result<MCGElement> {
    if sig.g == 0 {
        return Ok(MCGElement::identity(sig));
    }
    from_factors(sig, &random_factors(sig, max_len, rng))
}
