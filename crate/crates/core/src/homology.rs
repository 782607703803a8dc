//! Coordinates in `H = K^{2g+n}`, its dual `H*`, and matrices acting on `H`.
//!
//! Ordered basis: `A_1..A_g, B_1..B_g, D_1..D_n`; the dual basis carries a `*`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{RingSpec, Scalar};
use crate::word::{Gen, SurfaceSig};

fn write_combination(
    f: &mut fmt::Formatter<'_>,
    coords: &[Scalar],
    name: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        write_term(f, c, &name(k), first)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Writes `c*name` as part of a signed sum.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Scalar,
    name: &str,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = if neg { c.neg() } else { c.clone() };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if abs.is_one() && !name.is_empty() {
        write!(f, "{name}")
    } else if abs.to_bigint().is_some() {
        write!(f, "{abs}{name}")
    } else {
        write!(f, "({abs}){name}")
    }
}

/// An element of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVec {
    sig: SurfaceSig,
    ring: RingSpec,
    coords: Vec<Scalar>,
}

impl HVec {
    pub fn zero(sig: SurfaceSig, ring: RingSpec) -> HVec {
        HVec { sig, ring, coords: vec![ring.zero(); sig.rank()] }
    }

    pub fn basis(sig: SurfaceSig, ring: RingSpec, k: usize) -> HVec {
        let mut v = HVec::zero(sig, ring);
        v.coords[k] = ring.one();
        v
    }

    pub fn of_gen(sig: SurfaceSig, ring: RingSpec, gen: Gen) -> HVec {
        HVec::basis(sig, ring, gen.index(sig))
    }

    pub fn from_i64s(sig: SurfaceSig, ring: RingSpec, v: &[i64]) -> HVec {
        assert_eq!(v.len(), sig.rank());
        HVec { sig, ring, coords: v.iter().map(|&x| ring.from_i64(x)).collect() }
    }

    pub fn from_coords(sig: SurfaceSig, ring: RingSpec, coords: Vec<Scalar>) -> Result<HVec> {
        if coords.len() != sig.rank() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                sig.rank(),
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch(ring, c.ring()));
        }
        Ok(HVec { sig, ring, coords })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Scalar {
        &self.coords[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &HVec) -> HVec {
        HVec {
            sig: self.sig,
            ring: self.ring,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &HVec) -> HVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HVec {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> HVec {
        HVec {
            sig: self.sig,
            ring: self.ring,
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub(crate) fn check_compatible(&self, other: &HVec) -> Result<()> {
        self.sig.check_same(&other.sig)?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }
}

impl fmt::Display for HVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.coords, |k| Gen::from_index(self.sig, k).class_name())
    }
}

/// An element of `H* = Hom_K(H, K)` in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualVec {
    sig: SurfaceSig,
    ring: RingSpec,
    coords: Vec<Scalar>,
}

impl DualVec {
    pub fn zero(sig: SurfaceSig, ring: RingSpec) -> DualVec {
        DualVec { sig, ring, coords: vec![ring.zero(); sig.rank()] }
    }

    pub fn basis(sig: SurfaceSig, ring: RingSpec, k: usize) -> DualVec {
        let mut v = DualVec::zero(sig, ring);
        v.coords[k] = ring.one();
        v
    }

    pub fn of_gen(sig: SurfaceSig, ring: RingSpec, gen: Gen) -> DualVec {
        DualVec::basis(sig, ring, gen.index(sig))
    }

    pub fn from_i64s(sig: SurfaceSig, ring: RingSpec, v: &[i64]) -> DualVec {
        assert_eq!(v.len(), sig.rank());
        DualVec { sig, ring, coords: v.iter().map(|&x| ring.from_i64(x)).collect() }
    }

    pub fn from_coords(sig: SurfaceSig, ring: RingSpec, coords: Vec<Scalar>) -> Result<DualVec> {
        let h = HVec::from_coords(sig, ring, coords)?;
        Ok(DualVec { sig, ring, coords: h.coords })
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Scalar {
        &self.coords[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// `<f, X>`.
    pub fn pair(&self, x: &HVec) -> Scalar {
        self.coords
            .iter()
            .zip(x.coords())
            .fold(self.ring.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn add(&self, other: &DualVec) -> DualVec {
        DualVec {
            sig: self.sig,
            ring: self.ring,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &DualVec) -> DualVec {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DualVec {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> DualVec {
        DualVec {
            sig: self.sig,
            ring: self.ring,
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// `f o M`.
    pub fn compose(&self, m: &Matrix) -> DualVec {
        let coords = (0..m.cols)
            .map(|j| {
                (0..m.rows).fold(self.ring.zero(), |acc, i| acc.add(&self.coords[i].mul(m.entry(i, j))))
            })
            .collect();
        DualVec { sig: self.sig, ring: self.ring, coords }
    }

    pub(crate) fn check_compatible(&self, sig: SurfaceSig, ring: RingSpec) -> Result<()> {
        self.sig.check_same(&sig)?;
        if self.ring != ring {
            return Err(Error::RingMismatch(self.ring, ring));
        }
        Ok(())
    }
}

impl fmt::Display for DualVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.coords, |k| {
            format!("{}*", Gen::from_index(self.sig, k).class_name())
        })
    }
}

/// A matrix over `K`; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_columns(ring: RingSpec, rows: usize, columns: &[HVec]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.coord(i).clone());
            }
        }
        m
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, ring.from_i64(v));
            }
        }
        m
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.entry(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn apply(&self, x: &HVec) -> HVec {
        let coords = (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.ring.zero(), |acc, j| acc.add(&self.entry(i, j).mul(x.coord(j))))
            })
            .collect();
        HVec { sig: x.sig(), ring: x.ring(), coords }
    }

    pub fn column(&self, sig: SurfaceSig, j: usize) -> HVec {
        HVec {
            sig,
            ring: self.ring,
            coords: (0..self.rows).map(|i| self.entry(i, j).clone()).collect(),
        }
    }

    /// Reinterprets an integer matrix in another ring through `Z -> K`.
    pub fn change_ring(&self, ring: RingSpec) -> Matrix {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|s| ring.from_bigint(s.to_bigint().expect("integral matrix")))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.entry(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
