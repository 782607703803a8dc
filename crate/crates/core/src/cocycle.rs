//! The cocycle `k_q`, the cocycle `τ_1^θ`, and checks of the
//! identities relating them.

use crate::error::{Error, Result};
use crate::expansion::{theta3_zeta_closed_form, Expansion};
use crate::homology::{DualVec, HVec, Matrix};
use crate::linsys::{solve, Feasibility};
use crate::mcg::{Builtin, MCGElement};
use crate::pairing::{contract, contract_switched, flat_basis, jmath, one_tensor_flat, HomTensor};
use crate::qform::{from_expansion, QuadraticForm};
use crate::report::Check;
use crate::scalar::Scalar;
use crate::tensor::Tensor;
use crate::word::{Gen, SurfaceSig, Word};

fn require_closed(sig: SurfaceSig) -> Result<()> {
    sig.require_closed_boundary("cocycles")
}

/// `k_q(φ)[x] = q(φ^{-1}(x)) - q(x)` on the generator basis.
pub fn k_cocycle(q: &QuadraticForm, phi: &MCGElement) -> Result<DualVec> {
    let sig = q.sig();
    require_closed(sig)?;
    sig.check_same(&phi.sig())?;
    let coords = sig
        .generators()
        .map(|g| q.eval_letters(phi.bwd_image(g).letters()).sub(q.value(g)))
        .collect();
    DualVec::from_coords(sig, q.ring(), coords)
}

/// `(δu)(φ) = u ∘ |φ|^{-1} - u`.
pub fn coboundary(u: &DualVec, phi: &MCGElement) -> Result<DualVec> {
    u.sig().check_same(&phi.sig())?;
    Ok(u.compose(&phi.hmatrix_inv(u.ring())).sub(u))
}

/// `τ(φ)[x] = θ_2(x) - |φ|^{⊗2} θ_2(φ^{-1}(x))`.
pub fn tau1(theta: &Expansion, phi: &MCGElement) -> Result<HomTensor> {
    let sig = theta.sig();
    require_closed(sig)?;
    sig.check_same(&phi.sig())?;
    let ring = theta.ring();
    let m = phi.hmatrix(ring);
    let mut out = HomTensor::zero(sig, ring);
    for gen in sig.generators() {
        let moved = theta.theta2_word(phi.bwd_image(gen))?.map_linear(&m);
        let s = theta.theta2(gen).sub(&moved);
        let f = DualVec::of_gen(sig, ring, gen);
        let terms: Vec<_> = s.part(2).map(|(k, c)| ((k[0] as usize, k[1] as usize), c.clone())).collect();
        out.add_product(&f, &terms);
    }
    Ok(out)
}

/// `(f ⊗ s) -> (f ∘ M^{-1}) ⊗ M^{⊗2} s` with `M = |φ|`.
pub fn cocycle_action(phi: &MCGElement, t: &HomTensor) -> Result<HomTensor> {
    let sig = t.sig();
    sig.check_same(&phi.sig())?;
    let ring = t.ring();
    let m = phi.hmatrix(ring);
    let minv = phi.hmatrix_inv(ring);
    let r = sig.rank();
    let col = |mat: &Matrix, j: usize| -> Vec<(usize, Scalar)> {
        (0..r).filter(|&i| !mat.entry(i, j).is_zero()).map(|i| (i, mat.entry(i, j).clone())).collect()
    };
    let mut out = HomTensor::zero(sig, ring);
    for (&(f, i, j), c) in t.terms() {
        let frow: Vec<(usize, Scalar)> =
            (0..r).filter(|&l| !minv.entry(f, l).is_zero()).map(|l| (l, minv.entry(f, l).clone())).collect();
        for (l, x) in &frow {
            for (a, y) in col(&m, i) {
                for (b, z) in col(&m, j) {
                    out.add_term(*l, a, b, &c.mul(x).mul(&y).mul(&z));
                }
            }
        }
    }
    Ok(out)
}

/// `(1⊗♭) τ(φ) = -k_{q_θ}(φ)`.
pub fn verify_nutau(theta: &Expansion, phi: &MCGElement) -> Result<Check> {
    let lhs = one_tensor_flat(&tau1(theta, phi)?);
    let rhs = k_cocycle(&from_expansion(theta)?, phi)?.neg();
    let defect = lhs.sub(&rhs);
    Ok(Check::compare(&lhs, &rhs, defect))
}

/// `(1⊗♭) τ = ȷ 𝔠 τ`; the defect is `ȷ𝔠τ - (1⊗♭)τ`.
pub fn verify_tauc(theta: &Expansion, phi: &MCGElement) -> Result<Check> {
    let t = tau1(theta, phi)?;
    let lhs = one_tensor_flat(&t);
    let rhs = jmath(&contract(&t));
    let defect = rhs.sub(&lhs);
    Ok(Check::compare(&lhs, &rhs, defect))
}

/// `(♭ ⊗ f)(X_1 X_2 X_3) = ♭(X_1, X_2) f(X_3)` on a degree-3 tensor.
pub fn flat_then_dual(t: &Tensor, f: &DualVec) -> Scalar {
    let mut acc = t.ring().zero();
    for (k, c) in t.part(3) {
        let b = flat_basis(t.sig(), k[0] as usize, k[1] as usize);
        if b == 0 {
            continue;
        }
        let fx = f.coord(k[2] as usize);
        if !fx.is_zero() {
            acc = acc.add(&c.mul(fx).scale_i64(b));
        }
    }
    acc
}

/// Predicted `ȷ𝔠τ(t_{a_i}) - (1⊗♭)τ(t_{a_i})`: `-((♭ ⊗ B_i*) θ_3(ζ)) B_i*`.
pub fn tauc_defect_closed_form(theta: &Expansion, i: usize) -> Result<DualVec> {
    let sig = theta.sig();
    Gen::A(i).check(sig)?;
    let t3 = theta3_zeta_closed_form(theta)?;
    let bstar = DualVec::of_gen(sig, theta.ring(), Gen::B(i));
    let c = flat_then_dual(&t3, &bstar);
    Ok(bstar.scale(&c.neg()))
}

/// `X -> ♭(X, c)` as a dual vector.
pub fn flat_against(c: &HVec) -> DualVec {
    jmath(c).neg()
}

/// `k_q(t_{a_i}) = (q(a_i) - 1) ♭(-, A_i)`.
pub fn verify_dehn_twist_lemma(q: &QuadraticForm, i: usize) -> Result<Check> {
    let sig = q.sig();
    let t = MCGElement::twist_a(sig, i)?;
    let lhs = k_cocycle(q, &t)?;
    let rot = q.value(Gen::A(i)).sub(&q.ring().one());
    let rhs = flat_against(&HVec::of_gen(sig, q.ring(), Gen::A(i))).scale(&rot);
    let defect = lhs.sub(&rhs);
    Ok(Check::compare(&lhs, &rhs, defect))
}

/// The genus-1 witness `u = (q(a_1) - 1) A_1* + (q(b_1) + 1) B_1*`.
///
/// Equivalently `-(rot β)(·[A_1]) + (rot α)(·[B_1])` with `rot α = q(a_1) - 1`
/// and `rot β = q(b_1) + 1` (the reverse of `b_1` is the simple based loop).
pub fn genus_one_witness(q: &QuadraticForm) -> Result<DualVec> {
    let sig = q.sig();
    if sig.g != 1 || sig.n != 0 {
        return Err(Error::UnsupportedSignature(format!("genus-one check on {sig}")));
    }
    let ring = q.ring();
    let one = ring.one();
    let coords = vec![q.value(Gen::A(1)).sub(&one), q.value(Gen::B(1)).add(&one)];
    DualVec::from_coords(sig, ring, coords)
}

/// `k_q(φ) = (δu)(φ)` for every supplied `φ`.
pub fn genus_one_coboundary_check(q: &QuadraticForm, phis: &[MCGElement]) -> Result<Vec<Check>> {
    let u = genus_one_witness(q)?;
    phis.iter()
        .map(|phi| {
            let lhs = k_cocycle(q, phi)?;
            let rhs = coboundary(&u, phi)?;
            let defect = lhs.sub(&rhs);
            Ok(Check::compare(&lhs, &rhs, defect))
        })
        .collect()
}

/// A simple closed curve `φ(a_i)`.
#[derive(Clone, Debug)]
pub struct Curve {
    pub phi: MCGElement,
    pub i: usize,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    /// Rows `M_φ A_i` of the system `<u, M_φ A_i> = q(φ(a_i)) - 1`.
    pub rows: Vec<HVec>,
    pub rhs: Vec<Scalar>,
    pub outcome: Feasibility,
}

impl Certificate {
    pub fn feasible(&self) -> bool {
        self.outcome.is_feasible()
    }

    pub fn residual(&self) -> Option<&Scalar> {
        match &self.outcome {
            Feasibility::Infeasible { residual, .. } => residual.as_ref(),
            Feasibility::Feasible(_) => None,
        }
    }
}

/// Decides whether some `u` has `(δu)(t_C) = k_q(t_C)` on all supplied
/// curves, i.e. `<u, [C_k]> = rot C_k`.
pub fn nontriviality_certificate(q: &QuadraticForm, curves: &[Curve]) -> Result<Certificate> {
    let sig = q.sig();
    require_closed(sig)?;
    if sig.g < 2 {
        return Err(Error::UnsupportedSignature(format!("certificate needs g >= 2, got {sig}")));
    }
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    let ring = q.ring();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for c in curves {
        sig.check_same(&c.phi.sig())?;
        let w = c.phi.apply_fwd(&Word::generator(sig, Gen::A(c.i)));
        rows.push(w.homology_class(ring));
        rhs.push(q.rot_of_simple(&w)?);
    }
    let a: Vec<Vec<Scalar>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let outcome = solve(ring, &a, sig.rank(), &rhs)?;
    Ok(Certificate { rows, rhs, outcome })
}

/// `a_i`, `a_{i+1}` and `a_i a_{i+1}`, bounding a pair of pants, each moved by `psi`.
pub fn pants_curves(sig: SurfaceSig, i: usize, psi: &MCGElement) -> Result<Vec<Curve>> {
    let id = MCGElement::identity(sig);
    let mix = MCGElement::mix(sig, i)?;
    Ok(vec![
        Curve { phi: psi.compose(&id)?, i },
        Curve { phi: psi.clone(), i: i + 1 },
        Curve { phi: psi.compose(&mix)?, i },
    ])
}

/// A built-in twist on which `k_{q+u}` and `k_q` differ.
pub fn cor_kk_injectivity_check(q: &QuadraticForm, u: &DualVec) -> Result<(Builtin, DualVec)> {
    let sig = q.sig();
    require_closed(sig)?;
    if sig.g == 0 {
        return Err(Error::UnsupportedSignature("injectivity needs g >= 1".into()));
    }
    if u.is_zero() {
        return Err(Error::InvalidArgument("u must be nonzero".into()));
    }
    let qu = q.torsor_add(u)?;
    for i in 1..=sig.g {
        for b in [Builtin::TwistA(i), Builtin::TwistB(i)] {
            let t = b.element(sig)?;
            let diff = k_cocycle(&qu, &t)?.sub(&k_cocycle(q, &t)?);
            if !diff.is_zero() {
                return Ok((b, diff));
            }
        }
    }
    Err(Error::InvalidArgument(format!("no built-in twist separates q and q + {u}")))
}

/// `ȷ(𝔠'τ) - (1⊗♭)τ` with the switched contraction `𝔠'`.
pub fn switching_defect(theta: &Expansion, phi: &MCGElement) -> Result<DualVec> {
    let t = tau1(theta, phi)?;
    Ok(jmath(&contract_switched(&t)).sub(&one_tensor_flat(&t)))
}
