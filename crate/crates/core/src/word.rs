//! Reduced words in the free group `pi_1(Sigma_{g,n+1}, *)` on the letters
//! `a_1..a_g, b_1..b_g, d_1..d_n`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::HVec;
use crate::scalar::RingSpec;

/// The surface `Sigma_{g,n+1}`: genus `g` with `n + 1` boundary circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub g: usize,
    pub n: usize,
}

impl SurfaceSig {
    pub fn new(g: usize, n: usize) -> Self {
        SurfaceSig { g, n }
    }

    /// Rank of the free group, which is also `dim H`.
    pub fn rank(&self) -> usize {
        2 * self.g + self.n
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - 2 * self.g as i64 - self.n as i64
    }

    /// Generators in basis order `a_1..a_g, b_1..b_g, d_1..d_n`.
    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.rank()).map(move |k| Gen::from_index(*self, k))
    }

    pub(crate) fn require_closed_boundary(&self, what: &str) -> Result<()> {
        if self.n != 0 {
            return Err(Error::UnsupportedSignature(format!(
                "{what} needs a single boundary component (n = 0), got n = {}",
                self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &SurfaceSig) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sigma_{{{},{}}}", self.g, self.n + 1)
    }
}

/// A free generator; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A(usize),
    B(usize),
    D(usize),
}

impl Gen {
    pub fn index(self, sig: SurfaceSig) -> usize {
        match self {
            Gen::A(i) => i - 1,
            Gen::B(i) => sig.g + i - 1,
            Gen::D(j) => 2 * sig.g + j - 1,
        }
    }

    pub fn from_index(sig: SurfaceSig, k: usize) -> Gen {
        if k < sig.g {
            Gen::A(k + 1)
        } else if k < 2 * sig.g {
            Gen::B(k - sig.g + 1)
        } else {
            Gen::D(k - 2 * sig.g + 1)
        }
    }

    pub fn check(self, sig: SurfaceSig) -> Result<()> {
        let ok = match self {
            Gen::A(i) | Gen::B(i) => (1..=sig.g).contains(&i),
            Gen::D(j) => (1..=sig.n).contains(&j),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{self} on {sig}")))
        }
    }

    /// Name of the homology class, e.g. `A1`.
    pub fn class_name(self) -> String {
        match self {
            Gen::A(i) => format!("A{i}"),
            Gen::B(i) => format!("B{i}"),
            Gen::D(j) => format!("D{j}"),
        }
    }

    /// Parses `a3`, `b1`, `d2`; `upper` selects the homology spelling `A3`.
    pub(crate) fn parse_token(tok: &str, upper: bool) -> Option<Gen> {
        let mut chars = tok.chars();
        let head = chars.next()?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let i: usize = rest.parse().ok()?;
        if i == 0 {
            return None;
        }
        let (a, b, d) = if upper { ('A', 'B', 'D') } else { ('a', 'b', 'd') };
        match head {
            c if c == a => Some(Gen::A(i)),
            c if c == b => Some(Gen::B(i)),
            c if c == d => Some(Gen::D(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A(i) => write!(f, "a{i}"),
            Gen::B(i) => write!(f, "b{i}"),
            Gen::D(j) => write!(f, "d{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}'", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word. Equality is equality in the free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    sig: SurfaceSig,
    letters: Vec<Letter>,
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    pub fn identity(sig: SurfaceSig) -> Word {
        Word { sig, letters: Vec::new() }
    }

    pub fn generator(sig: SurfaceSig, gen: Gen) -> Word {
        Word { sig, letters: vec![Letter::new(gen, false)] }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(sig: SurfaceSig, letters: impl IntoIterator<Item = Letter>) -> Result<Word> {
        let mut out = Vec::new();
        for l in letters {
            l.gen.check(sig)?;
            push_reduced(&mut out, l);
        }
        Ok(Word { sig, letters: out })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn try_mul(&self, other: &Word) -> Result<Word> {
        self.sig.check_same(&other.sig)?;
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word { sig: self.sig, letters: out })
    }

    /// Panics on signature mismatch.
    pub fn mul(&self, other: &Word) -> Word {
        self.try_mul(other).expect("word signature mismatch")
    }

    pub fn inv(&self) -> Word {
        Word { sig: self.sig, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        Ok(self.try_mul(other)?.mul(&self.inv()).mul(&other.inv()))
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity(self.sig);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `zeta = [a_1,b_1]...[a_g,b_g] d_1...d_n`. For `n = 0` this is the
    /// inverse of the boundary loop.
    pub fn boundary_word(sig: SurfaceSig) -> Word {
        let mut letters = Vec::with_capacity(4 * sig.g + sig.n);
        for i in 1..=sig.g {
            letters.push(Letter::new(Gen::A(i), false));
            letters.push(Letter::new(Gen::B(i), false));
            letters.push(Letter::new(Gen::A(i), true));
            letters.push(Letter::new(Gen::B(i), true));
        }
        for j in 1..=sig.n {
            letters.push(Letter::new(Gen::D(j), false));
        }
        Word { sig, letters }
    }

    /// Abelianisation: signed letter counts in `K^{2g+n}`.
    pub fn homology_class(&self, ring: RingSpec) -> HVec {
        let mut counts = vec![0i64; self.sig.rank()];
        for l in &self.letters {
            counts[l.gen.index(self.sig)] += l.sign();
        }
        HVec::from_i64s(self.sig, ring, &counts)
    }

    /// Parses the whitespace-separated grammar `a1 b1 a1' b1'`; the empty
    /// string is the identity.
    pub fn parse(sig: SurfaceSig, s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut pos = 0;
        for tok in s.split_whitespace() {
            let start = s[pos..].find(tok).map(|o| o + pos).unwrap_or(pos);
            pos = start + tok.len();
            let (body, inverse) = match tok.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let gen = Gen::parse_token(body, false)
                .ok_or_else(|| Error::parse(start, format!("bad letter `{tok}`")))?;
            gen.check(sig).map_err(|_| {
                Error::IndexOutOfRange(format!("`{tok}` at {start} on {sig}"))
            })?;
            letters.push(Letter::new(gen, inverse));
        }
        Word::reduce(sig, letters)
    }

    /// Applies the substitution `x -> images[index(x)]`, reducing as it goes.
    pub(crate) fn substitute(&self, images: &[Word], inverses: &[Word], sig: SurfaceSig) -> Word {
        let mut out = Vec::new();
        for l in &self.letters {
            let k = l.gen.index(self.sig);
            let img = if l.inverse { &inverses[k] } else { &images[k] };
            for &x in &img.letters {
                push_reduced(&mut out, x);
            }
        }
        Word { sig, letters: out }
    }
}

/// A reduced random word built from at most `max_len` letters.
pub fn random_word(sig: SurfaceSig, max_len: usize, rng: &mut impl Rng) -> Word {
    let r = sig.rank();
    if r == 0 {
        return Word::identity(sig);
    }
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| Letter::new(Gen::from_index(sig, rng.gen_range(0..r)), rng.gen_bool(0.5)));
    Word::reduce(sig, letters).expect("letters in range")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
