//! Independent reference computations used by the integration tests.
//!
//! Tensors are dense `i128` arrays in degrees 0..=3; forms are rational.
//! Ring comparisons lift integer results through `Z -> K`, so everything
//! here is computed once over `Z` (or `Q`) and reduced at the end.
#![allow(dead_code)]

use kframe::expansion::Expansion;
use kframe::homology::{DualVec, HVec};
use kframe::mcg::MCGElement;
use kframe::pairing::HomTensor;
use kframe::qform::QuadraticForm;
use kframe::scalar::{RingSpec, Scalar};
use kframe::tensor::Tensor;
use kframe::word::{Gen, Letter, SurfaceSig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn idx(sig: SurfaceSig, g: Gen) -> usize {
    match g {
        Gen::A(i) => i - 1,
        Gen::B(i) => sig.g + i - 1,
        Gen::D(j) => 2 * sig.g + j - 1,
    }
}

pub fn rank(sig: SurfaceSig) -> usize {
    2 * sig.g + sig.n
}

/// `J[i][j] = ♭(e_i, e_j)`.
pub fn flat_matrix(sig: SurfaceSig) -> Vec<Vec<i128>> {
    let r = rank(sig);
    let mut j = vec![vec![0; r]; r];
    for i in 0..sig.g {
        j[i][sig.g + i] = 1;
        j[sig.g + i][i] = -1;
    }
    j
}

pub fn zeta(sig: SurfaceSig) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=sig.g {
        for (g, inv) in [(Gen::A(i), false), (Gen::B(i), false), (Gen::A(i), true), (Gen::B(i), true)] {
            out.push(Letter { gen: g, inverse: inv });
        }
    }
    for j in 1..=sig.n {
        out.push(Letter { gen: Gen::D(j), inverse: false });
    }
    out
}

pub fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| Letter { gen: l.gen, inverse: !l.inverse }).collect()
}

pub fn class(sig: SurfaceSig, w: &[Letter]) -> Vec<i128> {
    let mut c = vec![0; rank(sig)];
    for l in w {
        c[idx(sig, l.gen)] += if l.inverse { -1 } else { 1 };
    }
    c
}

pub fn pair(j: &[Vec<i128>], x: &[i128], y: &[i128]) -> i128 {
    let mut s = 0;
    for (a, row) in x.iter().zip(j) {
        if *a != 0 {
            for (b, v) in y.iter().zip(row) {
                s += a * b * v;
            }
        }
    }
    s
}

/// Column `k` of the result is the class of `images[k]`.
pub fn matrix_of(sig: SurfaceSig, images: &[Vec<Letter>]) -> Vec<Vec<i128>> {
    let r = rank(sig);
    let mut m = vec![vec![0; r]; r];
    for (k, w) in images.iter().enumerate() {
        for (i, c) in class(sig, w).into_iter().enumerate() {
            m[i][k] = c;
        }
    }
    m
}

pub fn gens(sig: SurfaceSig) -> Vec<Gen> {
    let mut v: Vec<Gen> = (1..=sig.g).map(Gen::A).collect();
    v.extend((1..=sig.g).map(Gen::B));
    v.extend((1..=sig.n).map(Gen::D));
    v
}

pub fn fwd_words(phi: &MCGElement) -> Vec<Vec<Letter>> {
    gens(phi.sig()).into_iter().map(|g| phi.fwd_image(g).letters().to_vec()).collect()
}

pub fn bwd_words(phi: &MCGElement) -> Vec<Vec<Letter>> {
    gens(phi.sig()).into_iter().map(|g| phi.bwd_image(g).letters().to_vec()).collect()
}

/// Substitutes `images` into `w` without reducing.
pub fn substitute(sig: SurfaceSig, w: &[Letter], images: &[Vec<Letter>]) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in w {
        let img = &images[idx(sig, l.gen)];
        if l.inverse {
            out.extend(inverse_letters(img));
        } else {
            out.extend(img.iter().copied());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// dense truncated tensors

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub r: usize,
    pub d: [Vec<i128>; 4],
}

impl Dense {
    pub fn zero(r: usize) -> Dense {
        Dense { r, d: [vec![0; 1], vec![0; r], vec![0; r * r], vec![0; r * r * r]] }
    }

    pub fn one(r: usize) -> Dense {
        let mut t = Dense::zero(r);
        t.d[0][0] = 1;
        t
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut t = self.clone();
        for m in 0..4 {
            for (a, b) in t.d[m].iter_mut().zip(&o.d[m]) {
                *a += b;
            }
        }
        t
    }

    pub fn scale(&self, c: i128) -> Dense {
        let mut t = self.clone();
        for m in 0..4 {
            for a in t.d[m].iter_mut() {
                *a *= c;
            }
        }
        t
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let r = self.r;
        let mut t = Dense::zero(r);
        for p in 0..4 {
            for q in 0..(4 - p) {
                let len_q = r.pow(q as u32);
                for (i, a) in self.d[p].iter().enumerate() {
                    if *a == 0 {
                        continue;
                    }
                    for (j, b) in o.d[q].iter().enumerate() {
                        if *b != 0 {
                            t.d[p + q][i * len_q + j] += a * b;
                        }
                    }
                }
            }
        }
        t
    }

    /// Inverse of `1 + x` with `x` of positive degree.
    pub fn unit_inverse(&self) -> Dense {
        assert_eq!(self.d[0][0], 1);
        let mut x = self.clone();
        x.d[0][0] = 0;
        let x2 = x.mul(&x);
        let x3 = x2.mul(&x);
        Dense::one(self.r).sub(&x).add(&x2).sub(&x3)
    }

    pub fn commutator(&self, o: &Dense) -> Dense {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn basis(r: usize, k: usize) -> Dense {
        let mut t = Dense::zero(r);
        t.d[1][k] = 1;
        t
    }

    pub fn deg2(r: usize, s: Vec<i128>) -> Dense {
        let mut t = Dense::zero(r);
        t.d[2] = s;
        t
    }
}

fn lift(s: &Scalar) -> i128 {
    let b = s.to_bigint().expect("integral coefficient");
    i128::try_from(b).expect("fits in i128")
}

pub fn to_scalar(ring: RingSpec, x: i128) -> Scalar {
    ring.from_bigint(BigInt::from(x))
}

fn keys(r: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|k| (0..r).map(move |i| [k.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Reads a library tensor into dense form (integral coefficients only).
pub fn dense_of(t: &Tensor) -> Dense {
    let r = rank(t.sig());
    let mut d = Dense::zero(r);
    for m in 0..=3.min(t.truncation()) {
        for (pos, k) in keys(r, m).into_iter().enumerate() {
            d.d[m][pos] = lift(&t.coef(&k));
        }
    }
    d
}

/// Does the library tensor agree with `d` after reduction into its ring?
pub fn tensor_matches(t: &Tensor, d: &Dense, degrees: &[usize]) -> bool {
    let r = d.r;
    let ring = t.ring();
    degrees.iter().all(|&m| keys(r, m).into_iter().enumerate().all(|(pos, k)| t.coef(&k) == to_scalar(ring, d.d[m][pos])))
}

pub struct Theta {
    pub sig: SurfaceSig,
    pub vals: Vec<Dense>,
    pub invs: Vec<Dense>,
}

impl Theta {
    pub fn of(theta: &Expansion) -> Theta {
        let sig = theta.sig();
        let vals: Vec<Dense> = gens(sig).into_iter().map(|g| dense_of(theta.value(g))).collect();
        let invs = vals.iter().map(Dense::unit_inverse).collect();
        Theta { sig, vals, invs }
    }

    pub fn r(&self) -> usize {
        rank(self.sig)
    }

    pub fn eval(&self, w: &[Letter]) -> Dense {
        let mut acc = Dense::one(self.r());
        for l in w {
            let k = idx(self.sig, l.gen);
            acc = acc.mul(if l.inverse { &self.invs[k] } else { &self.vals[k] });
        }
        acc
    }

    pub fn theta2(&self, w: &[Letter]) -> Vec<i128> {
        self.eval(w).d[2].clone()
    }
}

/// `(M ⊗ M) s` on a flattened 2-tensor.
pub fn apply2(m: &[Vec<i128>], s: &[i128]) -> Vec<i128> {
    let r = m.len();
    let mut out = vec![0; r * r];
    for i in 0..r {
        for j in 0..r {
            let c = s[i * r + j];
            if c == 0 {
                continue;
            }
            for a in 0..r {
                if m[a][i] == 0 {
                    continue;
                }
                for b in 0..r {
                    out[a * r + b] += c * m[a][i] * m[b][j];
                }
            }
        }
    }
    out
}

/// `τ(φ)`: slot `x` holds `θ_2(x) - M^{⊗2} θ_2(φ^{-1} x)`.
pub fn tau(th: &Theta, phi: &MCGElement) -> Vec<Vec<i128>> {
    let sig = th.sig;
    let m = matrix_of(sig, &fwd_words(phi));
    let bwd = bwd_words(phi);
    gens(sig)
        .into_iter()
        .enumerate()
        .map(|(k, g)| {
            let own = th.theta2(&[Letter { gen: g, inverse: false }]);
            let moved = apply2(&m, &th.theta2(&bwd[k]));
            own.iter().zip(moved).map(|(a, b)| a - b).collect()
        })
        .collect()
}

pub fn one_tensor_flat(sig: SurfaceSig, t: &[Vec<i128>]) -> Vec<i128> {
    let j = flat_matrix(sig);
    let r = rank(sig);
    t.iter().map(|s| (0..r * r).map(|p| s[p] * j[p / r][p % r]).sum()).collect()
}

/// `f ⊗ X_1 X_2 -> f(X_1) X_2`.
pub fn contract(sig: SurfaceSig, t: &[Vec<i128>]) -> Vec<i128> {
    let r = rank(sig);
    (0..r).map(|j| (0..r).map(|x| t[x][x * r + j]).sum()).collect()
}

/// `f ⊗ X_1 X_2 -> f(X_2) X_1`.
pub fn contract_switched(sig: SurfaceSig, t: &[Vec<i128>]) -> Vec<i128> {
    let r = rank(sig);
    (0..r).map(|i| (0..r).map(|x| t[x][i * r + x]).sum()).collect()
}

/// `ȷ(c) = ♭(c, ·)`.
pub fn jmath(sig: SurfaceSig, c: &[i128]) -> Vec<i128> {
    let j = flat_matrix(sig);
    let r = rank(sig);
    (0..r).map(|k| (0..r).map(|i| c[i] * j[i][k]).sum()).collect()
}

pub fn hom_matches(t: &HomTensor, o: &[Vec<i128>]) -> bool {
    let r = o.len();
    let ring = t.ring();
    (0..r).all(|f| (0..r * r).all(|p| t.get(f, p / r, p % r) == to_scalar(ring, o[f][p])))
}

pub fn ints_match(ring: RingSpec, lib: &[Scalar], o: &[i128]) -> bool {
    lib.len() == o.len() && lib.iter().zip(o).all(|(a, b)| *a == to_scalar(ring, *b))
}

pub fn dual_matches(u: &DualVec, o: &[i128]) -> bool {
    ints_match(u.ring(), u.coords(), o)
}

pub fn hvec_matches(x: &HVec, o: &[i128]) -> bool {
    ints_match(x.ring(), x.coords(), o)
}

pub fn sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

// ---------------------------------------------------------------------------
// quadratic forms over Q

pub type Rat = BigRational;

pub fn rat(x: i128) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

pub struct Form {
    pub sig: SurfaceSig,
    pub vals: Vec<Rat>,
}

impl Form {
    pub fn of(q: &QuadraticForm) -> Form {
        Form { sig: q.sig(), vals: q.values().iter().map(Scalar::to_rational).collect() }
    }

    /// Letter-by-letter fold of `q(u x) = q(u) + q(x) + ♭(U, X)`.
    pub fn eval(&self, w: &[Letter]) -> Rat {
        let j = flat_matrix(self.sig);
        let mut u = vec![0i128; rank(self.sig)];
        let mut v = Rat::zero();
        for l in w {
            let k = idx(self.sig, l.gen);
            let s: i128 = if l.inverse { -1 } else { 1 };
            let cross: i128 = u.iter().enumerate().map(|(i, c)| c * j[i][k]).sum::<i128>() * s;
            v += self.vals[k].clone() * rat(s) + rat(cross);
            u[k] += s;
        }
        v
    }

    /// `k_q(φ)` on the generator basis.
    pub fn k(&self, phi: &MCGElement) -> Vec<Rat> {
        bwd_words(phi).iter().zip(&self.vals).map(|(w, q)| self.eval(w) - q).collect()
    }
}

pub fn to_ring(ring: RingSpec, x: &Rat) -> Scalar {
    ring.from_rational(x.clone()).expect("representable")
}

pub fn rats_match(ring: RingSpec, lib: &[Scalar], o: &[Rat]) -> bool {
    lib.len() == o.len() && lib.iter().zip(o).all(|(a, b)| *a == to_ring(ring, b))
}

/// `u ∘ M^{-1} - u` with `M^{-1}` read from the backward images.
pub fn coboundary(sig: SurfaceSig, u: &[Rat], phi: &MCGElement) -> Vec<Rat> {
    let minv = matrix_of(sig, &bwd_words(phi));
    let r = rank(sig);
    (0..r)
        .map(|k| (0..r).map(|i| u[i].clone() * rat(minv[i][k])).fold(Rat::zero(), |a, b| a + b) - u[k].clone())
        .collect()
}

pub fn one_rat() -> Rat {
    Rat::one()
}
