//! Seeded verification suites over random inputs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::cocycle::{
    cocycle_action, coboundary, cor_kk_injectivity_check, genus_one_coboundary_check, k_cocycle,
    nontriviality_certificate, pants_curves, switching_defect, tau1, tauc_defect_closed_form, verify_dehn_twist_lemma,
    verify_nutau, verify_tauc,
};
use crate::error::{Error, Result};
use crate::expansion::{
    make_default_w3s, make_non_w3s, random_expansion_with, random_w3s_with, symplectic_element,
    theta3_zeta, theta3_zeta_closed_form, Expansion,
};
use crate::homology::DualVec;
use crate::linsys::Feasibility;
use crate::mcg::{format_factors, from_factors, random_factors, Builtin, Factor, MCGElement};
use crate::pairing::one_tensor_flat;
use crate::qform::{morita_d, random_dual_with, random_form_with, random_scalar, QuadraticForm};
use crate::relf::{feasible, ph_check, rot_vector, RotVector};
use crate::report::Check;
use crate::scalar::RingSpec;
use crate::word::{random_word, Gen, SurfaceSig, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Thze,
    W3s,
    Nutau,
    Tauc,
    TaucDefect,
    Dt,
    Cocycle,
    KkInj,
    Ph,
    Feasible,
    Genus1,
    Certificate,
    SwitchNeg,
    Mod2Descent,
    Gamma3,
}

impl Identity {
    pub const ALL: [Identity; 15] = [
        Identity::Thze,
        Identity::W3s,
        Identity::Nutau,
        Identity::Tauc,
        Identity::TaucDefect,
        Identity::Dt,
        Identity::Cocycle,
        Identity::KkInj,
        Identity::Ph,
        Identity::Feasible,
        Identity::Genus1,
        Identity::Certificate,
        Identity::SwitchNeg,
        Identity::Mod2Descent,
        Identity::Gamma3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Thze => "thze",
            Identity::W3s => "w3s",
            Identity::Nutau => "nutau",
            Identity::Tauc => "tauc",
            Identity::TaucDefect => "tauc-defect",
            Identity::Dt => "dt",
            Identity::Cocycle => "cocycle",
            Identity::KkInj => "kk-inj",
            Identity::Ph => "ph",
            Identity::Feasible => "feasible",
            Identity::Genus1 => "genus1",
            Identity::Certificate => "certificate",
            Identity::SwitchNeg => "switch-neg",
            Identity::Mod2Descent => "mod2-descent",
            Identity::Gamma3 => "gamma3",
        }
    }

    /// Probes whose passing outcome is a predicted failure of an identity.
    pub fn is_expected_failure(self) -> bool {
        matches!(self, Identity::TaucDefect | Identity::SwitchNeg)
    }

    fn needs_closed(self) -> bool {
        !matches!(self, Identity::Ph | Identity::Feasible | Identity::Mod2Descent | Identity::Gamma3)
    }

    fn min_genus(self) -> usize {
        match self {
            Identity::Certificate | Identity::SwitchNeg => 2,
            Identity::Nutau
            | Identity::Tauc
            | Identity::TaucDefect
            | Identity::Dt
            | Identity::Cocycle
            | Identity::KkInj
            | Identity::Genus1 => 1,
            _ => 0,
        }
    }

    fn check_config(self, ring: RingSpec, sig: SurfaceSig) -> Result<()> {
        let bad = |why: String| Err(Error::Config(format!("{}: {why}", self.name())));
        if self.needs_closed() && sig.n != 0 {
            return bad(format!("needs n = 0, got n = {}", sig.n));
        }
        if sig.g < self.min_genus() {
            return bad(format!("needs g >= {}, got g = {}", self.min_genus(), sig.g));
        }
        if self == Identity::Genus1 && sig.g != 1 {
            return bad(format!("needs g = 1, got g = {}", sig.g));
        }
        // the default θ only yields even switching defects
        if self == Identity::SwitchNeg && ring == RingSpec::Mod(2) {
            return bad("no witness exists over Z/2 for the default expansion".into());
        }
        if self == Identity::Mod2Descent && ring != RingSpec::Mod(2) {
            return bad(format!("needs ring Z/2, got {ring}"));
        }
        Ok(())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown identity `{}`", s.trim())))
    }
}

/// Identities that can run on `sig` over `ring`.
pub fn applicable(ring: RingSpec, sig: SurfaceSig) -> Vec<Identity> {
    Identity::ALL.into_iter().filter(|i| i.check_config(ring, sig).is_ok()).collect()
}

/// Comma-separated identity names; `all` selects every identity.
pub fn parse_identities(s: &str) -> Result<Vec<Identity>> {
    if s.trim() == "all" {
        return Ok(Identity::ALL.to_vec());
    }
    let mut out: Vec<Identity> = s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.dedup();
    if out.is_empty() {
        return Err(Error::Config("no identities selected".into()));
    }
    Ok(out)
}

fn ser_ring<S: Serializer>(r: &RingSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_identities<S: Serializer>(ids: &[Identity], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ids.iter().map(|i| i.name()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    #[serde(serialize_with = "ser_ring")]
    pub ring: RingSpec,
    pub g: usize,
    pub n: usize,
    pub seed: u64,
    pub cases: usize,
    #[serde(serialize_with = "ser_identities")]
    pub identities: Vec<Identity>,
    /// Labels of user-supplied inputs, echoed into the report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

impl SuiteConfig {
    pub fn new(ring: RingSpec, g: usize, n: usize, seed: u64, cases: usize, identities: Vec<Identity>) -> Result<Self> {
        let cfg = SuiteConfig { ring, g, n, seed, cases, identities, theta: None, form: None, phi: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn sig(&self) -> SurfaceSig {
        SurfaceSig::new(self.g, self.n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cases == 0 {
            return Err(Error::Config("cases must be positive".into()));
        }
        if self.identities.is_empty() {
            return Err(Error::Config("no identities selected".into()));
        }
        for id in &self.identities {
            id.check_config(self.ring, self.sig())?;
        }
        Ok(())
    }
}

/// Inputs fixed by the user instead of drawn at random.
#[derive(Clone, Debug, Default)]
pub struct Fixed {
    pub theta: Option<Expansion>,
    pub form: Option<QuadraticForm>,
    pub phi: Option<MCGElement>,
}

impl Fixed {
    fn check(&self, cfg: &SuiteConfig) -> Result<()> {
        let sig = cfg.sig();
        let mismatch = |what: &str, s: SurfaceSig, r: RingSpec| {
            Error::Config(format!("{what} lives on {s} over {r}, suite runs on {sig} over {}", cfg.ring))
        };
        if let Some(t) = &self.theta {
            if t.sig() != sig || t.ring() != cfg.ring {
                return Err(mismatch("theta", t.sig(), t.ring()));
            }
        }
        if let Some(q) = &self.form {
            if q.sig() != sig || q.ring() != cfg.ring {
                return Err(mismatch("form", q.sig(), q.ring()));
            }
        }
        if let Some(p) = &self.phi {
            if p.sig() != sig {
                return Err(mismatch("phi", p.sig(), cfg.ring));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub identity: String,
    pub case: usize,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub defect: String,
    pub inputs: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub expected_failure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub results: Vec<CaseResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one case, independent of scheduling.
pub fn case_seed(seed: u64, id: Identity, case: usize) -> u64 {
    let k = Identity::ALL.iter().position(|&i| i == id).expect("listed") as u64;
    splitmix(splitmix(seed ^ splitmix(k)) ^ case as u64)
}

struct Ctx<'a> {
    ring: RingSpec,
    sig: SurfaceSig,
    fixed: &'a Fixed,
}

impl Ctx<'_> {
    fn form(&self, rng: &mut ChaCha8Rng) -> QuadraticForm {
        let q = random_form_with(self.sig, self.ring, rng);
        self.fixed.form.clone().unwrap_or(q)
    }

    fn phi(&self, rng: &mut ChaCha8Rng, max_len: usize) -> Result<(MCGElement, String)> {
        let f = random_factors(self.sig, max_len, rng);
        match &self.fixed.phi {
            Some(p) => Ok((p.clone(), "given".into())),
            None => Ok((from_factors(self.sig, &f)?, format_factors(&f))),
        }
    }

    fn random_phi(&self, rng: &mut ChaCha8Rng, max_len: usize) -> Result<(MCGElement, String)> {
        let f = random_factors(self.sig, max_len, rng);
        Ok((from_factors(self.sig, &f)?, format_factors(&f)))
    }

    fn theta(&self, make: impl FnOnce() -> Result<Expansion>) -> Result<(Expansion, &'static str)> {
        self.theta_or(make, "random")
    }

    fn theta_or(&self, make: impl FnOnce() -> Result<Expansion>, label: &'static str) -> Result<(Expansion, &'static str)> {
        match &self.fixed.theta {
            Some(t) => Ok((t.clone(), "given")),
            None => Ok((make()?, label)),
        }
    }

    /// A twist word with one handle-mixing factor spliced in.
    fn mixing_phi(&self, rng: &mut ChaCha8Rng, max_len: usize) -> Result<(MCGElement, String)> {
        let mut f = random_factors(self.sig, max_len, rng);
        let at = rng.gen_range(0..=f.len());
        let i = rng.gen_range(1..self.sig.g);
        let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
        f.insert(at, Factor { gen: Builtin::Mix(i), exp });
        Ok((from_factors(self.sig, &f)?, format_factors(&f)))
    }
}

struct Outcome {
    check: Check,
    inputs: String,
}

fn out(check: Check, inputs: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { check, inputs: inputs.into() })
}

fn form_label(q: &QuadraticForm) -> String {
    let v: Vec<String> = q.values().iter().map(ToString::to_string).collect();
    format!("q = ({})", v.join(", "))
}

fn run_case(cx: &Ctx, id: Identity, rng: &mut ChaCha8Rng, case: usize) -> Result<Outcome> {
    let (sig, ring) = (cx.sig, cx.ring);
    match id {
        Identity::Thze => {
            let (theta, src) = cx.theta(|| random_expansion_with(sig, ring, rng))?;
            let z = theta.eval_to(&Word::boundary_word(sig), 3)?;
            let lhs = z.degree_part(2).add(&z.degree_part(3));
            let rhs = symplectic_element(sig, ring, 3).add(&theta3_zeta_closed_form(&theta)?);
            let defect = lhs.sub(&rhs);
            out(Check::compare(&lhs, &rhs, defect), format!("theta {src}"))
        }
        Identity::W3s => {
            let (theta, src) = cx.theta(|| if case == 0 { make_default_w3s(sig, ring) } else { random_w3s_with(sig, ring, rng) })?;
            let lhs = theta3_zeta(&theta)?;
            let rhs = lhs.sub(&lhs);
            let defect = lhs.clone();
            out(Check::compare(&lhs, &rhs, defect), format!("theta {src}"))
        }
        Identity::Nutau => {
            let (theta, src) = cx.theta(|| random_expansion_with(sig, ring, rng))?;
            let (phi, label) = cx.phi(rng, 6)?;
            out(verify_nutau(&theta, &phi)?, format!("theta {src}; phi = {label}"))
        }
        Identity::Tauc => {
            let (theta, src) = cx.theta(|| random_w3s_with(sig, ring, rng))?;
            let (phi, label) = cx.phi(rng, 6)?;
            out(verify_tauc(&theta, &phi)?, format!("w3s theta {src}; phi = {label}"))
        }
        Identity::TaucDefect => {
            let i = 1 + case % sig.g;
            let theta = if case == 0 { make_non_w3s(sig, ring)? } else { random_expansion_with(sig, ring, rng)? };
            let measured = verify_tauc(&theta, &MCGElement::twist_a(sig, i)?)?;
            let predicted = tauc_defect_closed_form(&theta, i)?;
            let pass = measured.defect == predicted.to_string();
            let src = if case == 0 { "theta_2 = 0" } else { "random theta" };
            let check = Check::new(pass, &measured.defect, &predicted, format!("tauc lhs {} vs rhs {}", measured.lhs, measured.rhs));
            out(check, format!("{src}; phi = twist_a:{i}"))
        }
        Identity::Dt => {
            let q = cx.form(rng);
            let i = 1 + case % sig.g;
            out(verify_dehn_twist_lemma(&q, i)?, format!("{}; i = {i}", form_label(&q)))
        }
        Identity::Cocycle => {
            let (theta, src) = cx.theta(|| random_expansion_with(sig, ring, rng))?;
            let q = cx.form(rng);
            let (phi, l1) = cx.phi(rng, 3)?;
            let (psi, l2) = cx.random_phi(rng, 3)?;
            let pp = phi.compose(&psi)?;
            let t_l = tau1(&theta, &pp)?;
            let t_r = tau1(&theta, &phi)?.add(&cocycle_action(&phi, &tau1(&theta, &psi)?)?);
            let k_l = k_cocycle(&q, &pp)?;
            let k_r = k_cocycle(&q, &phi)?.add(&k_cocycle(&q, &psi)?.compose(&phi.hmatrix_inv(ring)));
            let pass = t_l == t_r && k_l == k_r;
            let check = Check::new(
                pass,
                format!("tau: {t_l}; k: {k_l}"),
                format!("tau: {t_r}; k: {k_r}"),
                format!("tau: {}; k: {}", t_l.sub(&t_r), k_l.sub(&k_r)),
            );
            out(check, format!("theta {src}; {}; phi = {l1}; psi = {l2}", form_label(&q)))
        }
        Identity::KkInj => {
            let q = cx.form(rng);
            let mut u = random_dual_with(sig, ring, rng);
            while u.is_zero() {
                u = random_dual_with(sig, ring, rng);
            }
            let (b, diff) = cor_kk_injectivity_check(&q, &u)?;
            let expect = coboundary(&u, &b.element(sig)?)?;
            let pass = diff == expect && !diff.is_zero();
            out(Check::new(pass, &diff, &expect, diff.sub(&expect)), format!("{}; u = {u}; twist = {b}", form_label(&q)))
        }
        Identity::Ph => {
            let q = cx.form(rng);
            out(ph_check(&q), form_label(&q))
        }
        Identity::Feasible => feasible_case(sig, ring, rng, case),
        Identity::Genus1 => {
            let q = cx.form(rng);
            let (c, label) = cx.random_phi(rng, 6)?;
            let mut phis = vec![MCGElement::twist_a(sig, 1)?, MCGElement::twist_b(sig, 1)?, c];
            if let Some(p) = &cx.fixed.phi {
                phis.push(p.clone());
            }
            let checks = genus_one_coboundary_check(&q, &phis)?;
            let join = |f: fn(&Check) -> &String| checks.iter().map(f).cloned().collect::<Vec<_>>().join("; ");
            let check = Check::new(checks.iter().all(|c| c.pass), join(|c| &c.lhs), join(|c| &c.rhs), join(|c| &c.defect));
            out(check, format!("{}; phi in twist_a:1, twist_b:1, {label}", form_label(&q)))
        }
        Identity::Certificate => {
            let (q, psi, label, i) = if case == 0 {
                let q = match &cx.fixed.form {
                    Some(q) => q.clone(),
                    None => morita_d(sig, ring)?,
                };
                (q, MCGElement::identity(sig), "id".to_string(), 1)
            } else {
                let q = cx.form(rng);
                let (psi, label) = cx.random_phi(rng, 3)?;
                (q, psi, label, rng.gen_range(1..sig.g))
            };
            let cert = nontriviality_certificate(&q, &pants_curves(sig, i, &psi)?)?;
            let chi = ring.from_i64(-1);
            let (pass, lhs, y) = match &cert.outcome {
                Feasibility::Infeasible { residual: Some(r), certificate } => {
                    let y = certificate.as_ref().map(|y| y.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
                    (r == &chi, r.to_string(), y.unwrap_or_default())
                }
                Feasibility::Infeasible { residual: None, .. } => (false, "infeasible without residual".into(), String::new()),
                Feasibility::Feasible(_) => (false, "feasible".into(), String::new()),
            };
            let check = Check::new(pass, &lhs, &chi, format!("{lhs} = χ(S); y = ({y})"));
            out(check, format!("{}; pants at a{i}, a{}; psi = {label}", form_label(&q), i + 1))
        }
        Identity::SwitchNeg => {
            let (theta, src) = cx.theta_or(|| make_default_w3s(sig, ring), "default")?;
            let mut tried = Vec::new();
            let mut candidates = Vec::new();
            if let Some(p) = &cx.fixed.phi {
                candidates.push((p.clone(), "given".to_string()));
            }
            for _ in 0..32 {
                candidates.push(cx.mixing_phi(rng, 3)?);
            }
            for (phi, label) in candidates {
                let d = switching_defect(&theta, &phi)?;
                tried.push(label.clone());
                if !d.is_zero() {
                    let t = tau1(&theta, &phi)?;
                    let rhs = one_tensor_flat(&t);
                    let lhs = d.add(&rhs);
                    return out(Check::new(true, &lhs, &rhs, &d), format!("theta {src}; phi = {label}"));
                }
            }
            let z = DualVec::zero(sig, ring);
            out(Check::new(false, &z, &z, &z), format!("theta {src}; no witness among {}", tried.join(" | ")))
        }
        Identity::Mod2Descent => {
            let q = cx.form(rng);
            let w = random_word(sig, 10, rng);
            let u = random_word(sig, 4, rng);
            let ins = if rng.gen_bool(0.5) {
                let v = random_word(sig, 4, rng);
                u.commutator(&v)?
            } else {
                u.mul(&u)
            };
            let cut = rng.gen_range(0..=w.len());
            let (l, r) = w.letters().split_at(cut);
            let w2 = Word::reduce(sig, l.iter().chain(ins.letters()).chain(r).copied())?;
            let lhs = q.eval(&w2)?;
            let rhs = q.eval(&w)?;
            let defect = lhs.sub(&rhs);
            out(Check::compare(&lhs, &rhs, defect), format!("{}; w = {w}; w' = {w2}", form_label(&q)))
        }
        Identity::Gamma3 => {
            let q = cx.form(rng);
            let (u, v, w) = (random_word(sig, 5, rng), random_word(sig, 5, rng), random_word(sig, 5, rng));
            let lhs = q.eval(&u.commutator(&v)?.commutator(&w)?)?;
            let rhs = ring.zero();
            let defect = lhs.clone();
            out(Check::compare(&lhs, &rhs, defect), format!("{}; u = {u}; v = {v}; w = {w}", form_label(&q)))
        }
    }
}

/// Random `ρ`, about half of them off the `Σ ρ = χ` hyperplane; feasible ones
/// must be realised by an explicit form.
fn feasible_case(sig: SurfaceSig, ring: RingSpec, rng: &mut ChaCha8Rng, case: usize) -> Result<Outcome> {
    let tail: Vec<_> = (0..sig.n).map(|_| random_scalar(ring, rng)).collect();
    let chi = ring.from_i64(sig.euler_characteristic());
    let head = tail.iter().fold(chi, |a, b| a.sub(b));
    let violate = case % 2 == 1;
    let shift = if violate {
        match ring {
            RingSpec::Mod(m) => ring.from_i64(rng.gen_range(1..m as i64)),
            _ => {
                let s = random_scalar(ring, rng);
                if s.is_zero() {
                    ring.one()
                } else {
                    s
                }
            }
        }
    } else {
        ring.zero()
    };
    let mut entries = vec![head.add(&shift)];
    entries.extend(tail.iter().cloned());
    let rho = RotVector::new(ring, entries)?;
    let got = feasible(sig, ring, &rho)?;
    let mut pass = got != violate;
    let mut realised = String::from("-");
    if got {
        let mut values = random_form_with(sig, ring, rng).values().to_vec();
        for (j, r) in tail.iter().enumerate() {
            values[Gen::D(j + 1).index(sig)] = r.add(&ring.one());
        }
        let q = QuadraticForm::new(sig, ring, values)?;
        let back = rot_vector(&q);
        pass &= back == rho;
        realised = back.to_string();
    }
    let check = Check::new(pass, got, !violate, format!("realised rho = {realised}"));
    out(check, format!("rho = {rho}"))
}

fn jobs(cfg: &SuiteConfig) -> Vec<(Identity, usize)> {
    cfg.identities.iter().flat_map(|&id| (0..cfg.cases).map(move |c| (id, c))).collect()
}

fn one(cfg: &SuiteConfig, fixed: &Fixed, id: Identity, case: usize) -> CaseResult {
    let cx = Ctx { ring: cfg.ring, sig: cfg.sig(), fixed };
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(cfg.seed, id, case));
    let (check, inputs) = match run_case(&cx, id, &mut rng, case) {
        Ok(o) => (o.check, o.inputs),
        Err(e) => (Check::new(false, "error", "-", &e), String::new()),
    };
    CaseResult {
        identity: id.name().to_string(),
        case,
        pass: check.pass,
        lhs: check.lhs,
        rhs: check.rhs,
        defect: check.defect,
        inputs,
        expected_failure: id.is_expected_failure(),
    }
}

pub fn run_suite_sequential(cfg: &SuiteConfig, fixed: &Fixed) -> Result<Report> {
    cfg.validate()?;
    fixed.check(cfg)?;
    let results = jobs(cfg).into_iter().map(|(id, c)| one(cfg, fixed, id, c)).collect();
    Ok(Report { config: cfg.clone(), results })
}

#[cfg(feature = "parallel")]
pub fn run_suite_parallel(cfg: &SuiteConfig, fixed: &Fixed) -> Result<Report> {
    use rayon::prelude::*;
    cfg.validate()?;
    fixed.check(cfg)?;
    let results = jobs(cfg).into_par_iter().map(|(id, c)| one(cfg, fixed, id, c)).collect();
    Ok(Report { config: cfg.clone(), results })
}

/// Runs every selected identity; parallel over cases when the `parallel`
/// feature is on. Result order is by identity, then case.
pub fn run_suite(cfg: &SuiteConfig, fixed: &Fixed) -> Result<Report> {
    #[cfg(feature = "parallel")]
    {
        run_suite_parallel(cfg, fixed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_suite_sequential(cfg, fixed)
    }
}
