mod common;

use common::{class, flat_matrix, pair, rank};
use kframe::cocycle::{cocycle_action, k_cocycle, tau1};
use kframe::expansion::{random_expansion_with, theta3_zeta_closed_form, Expansion};
use kframe::homology::{DualVec, HVec};
use kframe::mcg::{from_factors, Builtin, Factor, MCGElement};
use kframe::pairing::{flat, jmath};
use kframe::qform::{from_expansion, QuadraticForm};
use kframe::relf::{feasible, ph_check, rot_vector, shift_report};
use kframe::scalar::{RingSpec, Scalar};
use kframe::suite::{applicable, run_suite, Fixed, SuiteConfig};
use kframe::tensor::Tensor;
use kframe::word::{Gen, Letter, SurfaceSig, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RINGS: [RingSpec; 6] =
    [RingSpec::Integers, RingSpec::Rationals, RingSpec::Mod(2), RingSpec::Mod(3), RingSpec::Mod(5), RingSpec::Mod(6)];

fn ring() -> impl Strategy<Value = RingSpec> {
    prop::sample::select(&RINGS[..])
}

fn scalar(ring: RingSpec) -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=7).prop_map(move |(a, b)| match ring {
        RingSpec::Rationals => ring.from_rational(BigRational::new(BigInt::from(a), BigInt::from(b))).unwrap(),
        _ => ring.from_i64(a),
    })
}

fn sig(closed: bool) -> impl Strategy<Value = SurfaceSig> {
    if closed {
        (1usize..=3, Just(0usize)).prop_map(|(g, n)| SurfaceSig::new(g, n)).boxed()
    } else {
        (0usize..=3, 0usize..=3).prop_filter("rank 0", |(g, n)| g + n > 0).prop_map(|(g, n)| SurfaceSig::new(g, n)).boxed()
    }
}

fn letters(sig: SurfaceSig, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..sig.rank(), any::<bool>()), 0..=max_len)
        .prop_map(move |v| v.into_iter().map(|(k, inv)| Letter::new(Gen::from_index(sig, k), inv)).collect())
}

fn word(sig: SurfaceSig, max_len: usize) -> impl Strategy<Value = Word> {
    letters(sig, max_len).prop_map(move |l| Word::reduce(sig, l).unwrap())
}

fn form(sig: SurfaceSig, ring: RingSpec) -> impl Strategy<Value = QuadraticForm> {
    prop::collection::vec(scalar(ring), sig.rank()).prop_map(move |v| QuadraticForm::new(sig, ring, v).unwrap())
}

fn dual(sig: SurfaceSig, ring: RingSpec) -> impl Strategy<Value = DualVec> {
    prop::collection::vec(scalar(ring), sig.rank()).prop_map(move |v| DualVec::from_coords(sig, ring, v).unwrap())
}

fn hvec(sig: SurfaceSig, ring: RingSpec) -> impl Strategy<Value = HVec> {
    prop::collection::vec(scalar(ring), sig.rank()).prop_map(move |v| HVec::from_coords(sig, ring, v).unwrap())
}

fn expansion(sig: SurfaceSig, ring: RingSpec) -> impl Strategy<Value = Expansion> {
    any::<u64>().prop_map(move |s| random_expansion_with(sig, ring, &mut ChaCha8Rng::seed_from_u64(s)).unwrap())
}

fn mcg(sig: SurfaceSig, max_len: usize) -> impl Strategy<Value = MCGElement> {
    let g = sig.g;
    let kinds = if g >= 2 { 3 } else { 2 };
    prop::collection::vec((0..kinds, 1..=g, prop::sample::select(vec![-2i64, -1, 1, 2])), 0..=max_len).prop_map(
        move |v| {
            let f: Vec<Factor> = v
                .into_iter()
                .map(|(kind, i, exp)| {
                    let gen = match kind {
                        0 => Builtin::TwistA(i),
                        1 => Builtin::TwistB(i),
                        _ => Builtin::Mix(i.min(g - 1)),
                    };
                    Factor { gen, exp }
                })
                .collect();
            from_factors(sig, &f).unwrap()
        },
    )
}

fn ring_sig(closed: bool) -> impl Strategy<Value = (RingSpec, SurfaceSig)> {
    (ring(), sig(closed))
}

// scalars

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in ring().prop_flat_map(|r| (scalar(r), scalar(r), scalar(r)))) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&a.ring().one()), a.clone());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn characteristic_kills_exactly(m in 2u64..40) {
        let r = RingSpec::modulo(m).unwrap();
        prop_assert!(r.from_i64(m as i64).is_zero());
        for k in 1..m {
            prop_assert!(!r.from_i64(k as i64).is_zero());
        }
    }
}

// free group

proptest! {
    #[test]
    fn class_is_a_homomorphism(((r, _), u, v) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), word(s, 10), word(s, 10)))) {
        prop_assert_eq!(u.mul(&v).homology_class(r), u.homology_class(r).add(&v.homology_class(r)));
    }

    #[test]
    fn reduction_is_confluent((s, a, b, c) in sig(false).prop_flat_map(|s| (Just(s), letters(s, 8), letters(s, 8), letters(s, 8)))) {
        let w = |l: &[Letter]| Word::reduce(s, l.to_vec()).unwrap();
        let all = w(&[a.clone(), b.clone(), c.clone()].concat());
        prop_assert_eq!(&w(&a).mul(&w(&b)).mul(&w(&c)), &all);
        prop_assert_eq!(&w(&a).mul(&w(&b).mul(&w(&c))), &all);
        prop_assert_eq!(&w(&[a.clone(), b.clone()].concat()).mul(&w(&c)), &all);
        prop_assert!(all.letters().windows(2).all(|p| p[1] != p[0].inv()));
    }
}

// pairing

proptest! {
    #[test]
    fn flat_is_skew(((_, _), x, y) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), hvec(s, r), hvec(s, r)))) {
        let xy = flat(&x, &y).unwrap();
        prop_assert_eq!(xy.neg(), flat(&y, &x).unwrap());
        let xx = flat(&x, &x).unwrap();
        prop_assert!(xx.add(&xx).is_zero());
        if x.ring().characteristic() != 2 {
            prop_assert!(xx.is_zero());
        }
    }

    #[test]
    fn jmath_is_linear_and_injective(((r, s), x, y) in ring_sig(true).prop_flat_map(|(r, s)| (Just((r, s)), hvec(s, r), hvec(s, r)))) {
        prop_assert_eq!(jmath(&x.add(&y)), jmath(&x).add(&jmath(&y)));
        prop_assert_eq!(jmath(&x).is_zero(), x.is_zero());
        for i in 1..=s.g {
            prop_assert_eq!(jmath(&HVec::of_gen(s, r, Gen::A(i))), DualVec::of_gen(s, r, Gen::B(i)));
            prop_assert_eq!(jmath(&HVec::of_gen(s, r, Gen::B(i))), DualVec::of_gen(s, r, Gen::A(i)).neg());
        }
    }
}

// tensor powers and expansions

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_multiplicative(((_, s), th) in ring_sig(true).prop_flat_map(|(r, s)| (Just((r, s)), expansion(s, r))),
                              seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = kframe::word::random_word(s, 8, &mut rng);
        let v = kframe::word::random_word(s, 8, &mut rng);
        prop_assert_eq!(th.eval(&u.mul(&v)).unwrap(), th.eval(&u).unwrap().mul(&th.eval(&v).unwrap()));
    }

    #[test]
    fn commutators_have_bracket_degree_two(((r, s), th) in ring_sig(true).prop_flat_map(|(r, s)| (Just((r, s)), expansion(s, r))),
                                           seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = kframe::word::random_word(s, 6, &mut rng);
        let v = kframe::word::random_word(s, 6, &mut rng);
        let n = th.truncation();
        let cu = Tensor::from_hvec(&u.homology_class(r), n);
        let cv = Tensor::from_hvec(&v.homology_class(r), n);
        prop_assert_eq!(th.theta2_word(&u.commutator(&v).unwrap()).unwrap(), cu.bracket(&cv).degree_part(2));
    }

    #[test]
    fn boundary_value_matches_closed_form(((_, s), th) in ring_sig(true).prop_flat_map(|(r, s)| (Just((r, s)), expansion(s, r)))) {
        let z = th.eval(&Word::boundary_word(s)).unwrap();
        prop_assert_eq!(z.degree_part(2), kframe::expansion::symplectic_element(s, th.ring(), th.truncation()).degree_part(2));
        prop_assert_eq!(z.degree_part(3), theta3_zeta_closed_form(&th).unwrap());
    }
}

// quadratic forms

proptest! {
    #[test]
    fn qform_laws(((r, s), q, u, v, w) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), form(s, r), word(s, 8), word(s, 8), word(s, 8)))) {
        let j = flat_matrix(s);
        let (cu, cv) = (class(s, u.letters()), class(s, v.letters()));
        let b = r.from_i64(pair(&j, &cu, &cv) as i64);
        let e = |x: &Word| q.eval(x).unwrap();
        prop_assert_eq!(e(&u.mul(&v)), e(&u).add(&e(&v)).add(&b));
        let c = u.commutator(&v).unwrap();
        prop_assert_eq!(e(&c), b.add(&b));
        prop_assert!(e(&c.commutator(&w).unwrap()).is_zero());
        prop_assert_eq!(e(&u.inv()), e(&u).neg());
    }

    #[test]
    fn fold_ignores_reduction(((_, s), q, l) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), form(s, r), letters(s, 12)))) {
        let mut padded = Vec::new();
        for x in &l {
            padded.push(*x);
            padded.push(x.inv());
            padded.push(*x);
        }
        prop_assert_eq!(q.eval_letters(&padded), q.eval(&Word::reduce(s, l).unwrap()).unwrap());
    }

    #[test]
    fn torsor_round_trip(((_, _), q, u) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), form(s, r), dual(s, r)))) {
        prop_assert_eq!(q.torsor_add(&u).unwrap().torsor_diff(&q).unwrap(), u);
    }

    #[test]
    fn mod2_depends_on_class_only((_, q, w, ins, at) in sig(false).prop_flat_map(|s| (
        Just(s), form(s, RingSpec::Mod(2)), word(s, 10), (word(s, 4), word(s, 4), any::<bool>()), any::<prop::sample::Index>()))) {
        let (x, y, square) = ins;
        let piece = if square { x.mul(&x) } else { x.commutator(&y).unwrap() };
        let mut l = w.letters().to_vec();
        let k = at.index(l.len() + 1);
        l.splice(k..k, piece.letters().iter().copied());
        prop_assert_eq!(q.eval(&w).unwrap(), q.eval_letters(&l));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_form_is_flat_of_degree_two(((_, _), th, w) in ring_sig(true).prop_flat_map(|(r, s)| (Just((r, s)), expansion(s, r), word(s, 8)))) {
        let q = from_expansion(&th).unwrap();
        prop_assert_eq!(q.eval(&w).unwrap(), kframe::qform::flat_of_degree2(&th.theta2_word(&w).unwrap()));
    }
}

// mapping classes and cocycles

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mapping_classes_are_valid((s, phi, r) in sig(true).prop_flat_map(|s| (Just(s), mcg(s, 5), ring()))) {
        let z = Word::boundary_word(s);
        prop_assert_eq!(phi.apply_fwd(&z), z);
        prop_assert!(phi.compose(&phi.invert()).unwrap().is_identity());
        let m = phi.hmatrix(r);
        for x in 0..s.rank() {
            for y in 0..s.rank() {
                let (ex, ey) = (HVec::basis(s, r, x), HVec::basis(s, r, y));
                prop_assert_eq!(flat(&m.apply(&ex), &m.apply(&ey)).unwrap(), flat(&ex, &ey).unwrap());
            }
        }
    }

    #[test]
    fn k_is_linear_on_words(((r, _), q, phi, w) in ring_sig(true).prop_flat_map(|(r, s)| (Just((r, s)), form(s, r), mcg(s, 4), word(s, 8)))) {
        let k = k_cocycle(&q, &phi).unwrap();
        let direct = q.eval(&phi.apply_bwd(&w)).unwrap().sub(&q.eval(&w).unwrap());
        prop_assert_eq!(k.pair(&w.homology_class(r)), direct);
    }

    #[test]
    fn tau_is_additive_and_kills_commutators(((r, s), th, phi, u, v) in ring_sig(true).prop_flat_map(|(r, s)| (
        Just((r, s)), expansion(s, r), mcg(s, 4), word(s, 6), word(s, 6)))) {
        let m = phi.hmatrix(r);
        let tw = |w: &Word| th.theta2_word(w).unwrap().sub(&th.theta2_word(&phi.apply_bwd(w)).unwrap().map_linear(&m));
        prop_assert_eq!(tw(&u.mul(&v)), tw(&u).add(&tw(&v)));
        prop_assert!(tw(&u.commutator(&v).unwrap()).is_zero());
        // generator values agree with the library τ
        let t = tau1(&th, &phi).unwrap();
        for (k, gen) in s.generators().enumerate() {
            let slot = tw(&Word::generator(s, gen));
            for (key, c) in slot.part(2) {
                prop_assert_eq!(t.get(k, key[0] as usize, key[1] as usize), c.clone());
            }
        }
    }

    #[test]
    fn cocycle_laws(((r, _), th, q, phi, psi) in ring_sig(true).prop_flat_map(|(r, s)| (
        Just((r, s)), expansion(s, r), form(s, r), mcg(s, 3), mcg(s, 3)))) {
        let pp = phi.compose(&psi).unwrap();
        prop_assert_eq!(tau1(&th, &pp).unwrap(), tau1(&th, &phi).unwrap().add(&cocycle_action(&phi, &tau1(&th, &psi).unwrap()).unwrap()));
        let rhs = k_cocycle(&q, &phi).unwrap().add(&k_cocycle(&q, &psi).unwrap().compose(&phi.hmatrix_inv(r)));
        prop_assert_eq!(k_cocycle(&q, &pp).unwrap(), rhs);
    }
}

// rotation data

proptest! {
    #[test]
    fn poincare_hopf(((r, s), q) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), form(s, r)))) {
        prop_assert!(ph_check(&q).pass);
        prop_assert!(feasible(s, r, &rot_vector(&q)).unwrap());
    }

    #[test]
    fn shifts_do_not_depend_on_q(((_, _), q1, q2, u) in ring_sig(false).prop_flat_map(|(r, s)| (Just((r, s)), form(s, r), form(s, r), dual(s, r)))) {
        prop_assert!(shift_report(&q1, &u).unwrap().pass);
        let d1 = rot_vector(&q1.torsor_add(&u).unwrap()).sub(&rot_vector(&q1));
        let d2 = rot_vector(&q2.torsor_add(&u).unwrap()).sub(&rot_vector(&q2));
        prop_assert_eq!(d1, d2);
    }
}

// suite reports

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_are_deterministic(r in ring(), g in 1usize..=2, seed in any::<u64>()) {
        let s = SurfaceSig::new(g, 0);
        let cfg = SuiteConfig::new(r, g, 0, seed, 2, applicable(r, s)).unwrap();
        let a = run_suite(&cfg, &Fixed::default()).unwrap();
        let b = run_suite(&cfg, &Fixed::default()).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert_eq!(a.exit_code(), if a.all_pass() { 0 } else { 1 });
        prop_assert_eq!(rank(s), s.rank());
    }
}
