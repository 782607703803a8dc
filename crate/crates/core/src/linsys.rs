//! Exact feasibility of `A u = b` over `Q`, `Z` and `Z/m`.
//!
//! `Q` uses Gauss-Jordan elimination. `Z` uses a Smith normal form
//! `U A V = D`; `Z/m` lifts to `[A | m I] (u, v) = b` over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{RingSpec, Scalar};

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (d, x) in m[dst].iter_mut().zip(&s) {
        *d -= q * x;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let x = row[src].clone();
        row[dst] -= q * x;
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of an integer matrix with `rows x cols` entries.
pub fn smith(a: &[Vec<BigInt>], cols: usize) -> Smith {
    let rows = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility: fold a non-multiple into the pivot row
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    Some((i, _)) => {
                        let minus_one = -BigInt::one();
                        row_axpy(&mut m, t, i, &minus_one);
                        row_axpy(&mut u, t, i, &minus_one);
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut m, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    Smith { u, v, diag }
}

/// Outcome of a feasibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A witness `u` with `A u = b`.
    Feasible(Vec<Scalar>),
    /// No solution. `certificate` is an integer `y` with `y A = 0` and
    /// `y · b = residual ≠ 0` in `K`, when such a `y` exists.
    Infeasible { certificate: Option<Vec<BigInt>>, residual: Option<Scalar> },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

fn lift(s: &Scalar) -> Result<BigInt> {
    s.to_bigint().ok_or_else(|| Error::InvalidArgument(format!("{s} is not integral")))
}

/// Decides `A u = b` over `ring`; `a` has one row per equation.
pub fn solve(ring: RingSpec, a: &[Vec<Scalar>], cols: usize, b: &[Scalar]) -> Result<Feasibility> {
    if a.len() != b.len() || a.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidArgument("ragged linear system".into()));
    }
    for s in a.iter().flatten().chain(b) {
        if s.ring() != ring {
            return Err(Error::RingMismatch(ring, s.ring()));
        }
    }
    let solution = match ring {
        RingSpec::Rationals => {
            let ar: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect();
            let br: Vec<BigRational> = b.iter().map(Scalar::to_rational).collect();
            solve_rational(&ar, cols, &br).map(|x| {
                x.into_iter().map(|v| ring.from_rational(v).expect("rational")).collect::<Vec<_>>()
            })
        }
        RingSpec::Integers => {
            let ai = a.iter().map(|r| r.iter().map(lift).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            let bi = b.iter().map(lift).collect::<Result<Vec<_>>>()?;
            solve_integer(&ai, cols, &bi).map(|x| x.into_iter().map(|v| ring.from_bigint(v)).collect())
        }
        RingSpec::Mod(m) => {
            let mb = BigInt::from(m);
            let mut ai = Vec::with_capacity(a.len());
            for (k, r) in a.iter().enumerate() {
                let mut row = r.iter().map(lift).collect::<Result<Vec<_>>>()?;
                row.extend((0..a.len()).map(|j| if j == k { mb.clone() } else { BigInt::zero() }));
                ai.push(row);
            }
            let bi = b.iter().map(lift).collect::<Result<Vec<_>>>()?;
            solve_integer(&ai, cols + a.len(), &bi)
                .map(|x| x.into_iter().take(cols).map(|v| ring.from_bigint(v)).collect())
        }
    };
    if let Some(u) = solution {
        return Ok(Feasibility::Feasible(u));
    }
    let (certificate, residual) = match left_certificate(ring, a, cols, b) {
        Some((y, r)) => (Some(y), Some(r)),
        None => (None, None),
    };
    Ok(Feasibility::Infeasible { certificate, residual })
}

fn solve_integer(a: &[Vec<BigInt>], cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(a, cols);
    let rows = a.len();
    let ub: Vec<BigInt> =
        (0..rows).map(|i| (0..rows).map(|k| &s.u[i][k] * &b[k]).fold(BigInt::zero(), |x, y| x + y)).collect();
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let d = s.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            if !ub[i].is_multiple_of(&d) {
                return None;
            }
            y[i] = &ub[i] / &d;
        }
    }
    Some((0..cols).map(|i| (0..cols).map(|k| &s.v[i][k] * &y[k]).fold(BigInt::zero(), |x, z| x + z)).collect())
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let src = m[r].clone();
                for (x, s) in m[i].iter_mut().zip(&src) {
                    *x = &*x - &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn solve_rational(a: &[Vec<BigRational>], cols: usize, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
    let pivots = rref(&mut m, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut u = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        u[c] = m[r][cols].clone();
    }
    Some(u)
}

/// A basis of `{y : y A = 0}` over `Q`, each scaled to a primitive integer
/// vector whose first nonzero entry is positive.
pub fn left_kernel(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let mut t: Vec<Vec<BigRational>> = (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect();
    let pivots = rref(&mut t, rows);
    let mut out = Vec::new();
    for free in (0..rows).filter(|c| !pivots.contains(c)) {
        let mut y = vec![BigRational::zero(); rows];
        y[free] = BigRational::one();
        for (r, &c) in pivots.iter().enumerate() {
            y[c] = -t[r][free].clone();
        }
        out.push(primitive(&y));
    }
    out
}

fn primitive(y: &[BigRational]) -> Vec<BigInt> {
    let l = y.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = y.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

fn left_certificate(ring: RingSpec, a: &[Vec<Scalar>], cols: usize, b: &[Scalar]) -> Option<(Vec<BigInt>, Scalar)> {
    let ar: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect();
    for y in left_kernel(&ar, cols) {
        let r = y.iter().zip(b).fold(ring.zero(), |acc, (c, x)| acc.add(&ring.from_bigint(c.clone()).mul(x)));
        if !r.is_zero() {
            return Some((y, r));
        }
    }
    None
}
