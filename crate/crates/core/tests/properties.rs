//! Randomized checks of the structural invariants.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use twisted_core::basis::SignedBasis;
use twisted_core::certificates::{certify_generator_commutator, verify_over_level};
use twisted_core::commutator::{commutator_closed_form, commutator_oracle};
use twisted_core::congruence::{elementary_level_generators, kernel_factor_utv, trivial_factorization, u_factor, v_factor};
use twisted_core::fold::ClassId;
use twisted_core::rep::{Rep, RepKind};
use twisted_core::ring::aform;
use twisted_core::roots::{GraphAut, RootSystem};
use twisted_core::sweep::letter_params;
use twisted_core::word::{evaluate, LetterKind, Node, Param, Word};
use twisted_core::{Elem, Ring, ThetaIdeal};

const RINGS: [&str; 7] = [
    "gf(9;frob)",
    "gf(25;frob)",
    "gf(49;frob)",
    "gf(125;frob)",
    "dual(gf(9;frob);2)",
    "dual(gf(9;frob);3)",
    "prod2(gf(3))",
];

const SYSTEMS: [(&str, &str); 6] = [("A3", "o2"), ("A4", "o2"), ("A5", "o2"), ("D4", "o2"), ("D4", "o3"), ("D5", "o2")];

fn ring(i: usize) -> Arc<Ring> {
    static CACHE: OnceLock<Vec<Arc<Ring>>> = OnceLock::new();
    CACHE.get_or_init(|| RINGS.iter().map(|d| Ring::make(d).unwrap()).collect())[i].clone()
}

fn elem(r: &Ring, k: usize) -> Elem {
    r.elem(k % r.size()).unwrap()
}

/// An adjoint representation and a ring with a matching automorphism order.
fn setup(i: usize) -> (Rep, Arc<Ring>) {
    let (s, o) = SYSTEMS[i];
    let rep = Rep::new(SignedBasis::parse(s, o).unwrap(), RepKind::Adjoint).unwrap();
    let r = Ring::make(if o == "o3" { "gf(125;frob)" } else { "gf(25;frob)" }).unwrap();
    (rep, r)
}

fn pick<T: Clone>(v: &[T], k: usize) -> T {
    v[k % v.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn theta_is_a_ring_automorphism(ri in 0..RINGS.len(), a in any::<usize>(), b in any::<usize>()) {
        let r = ring(ri);
        let (a, b) = (elem(&r, a), elem(&r, b));
        prop_assert_eq!(r.theta(r.add(a, b)), r.add(r.theta(a), r.theta(b)));
        prop_assert_eq!(r.theta(r.mul(a, b)), r.mul(r.theta(a), r.theta(b)));
        prop_assert_eq!(r.theta(r.one()), r.one());
        prop_assert_eq!(r.theta_pow(a, r.theta_order() as i32), a);
    }

    #[test]
    fn aform_group_law(ri in 0..RINGS.len(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let r = ring(ri);
        if r.theta_order() != 2 {
            return Ok(());
        }
        let all = aform::all(&r);
        let (p, q, s) = (pick(&all, i), pick(&all, j), pick(&all, k));
        let pq = aform::op(&r, p, q);
        prop_assert!(aform::is_aform(&r, pq.t, pq.u));
        prop_assert_eq!(aform::op(&r, pq, s), aform::op(&r, p, aform::op(&r, q, s)));
        let ip = aform::inv(&r, p);
        prop_assert_eq!(ip.t, r.neg(p.t));
        prop_assert_eq!(ip.u, r.theta(p.u));
        prop_assert!(aform::op(&r, p, ip).is_zero());
    }

    #[test]
    fn aform_action_is_monoid_action(ri in 0..RINGS.len(), i in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let r = ring(ri);
        if r.theta_order() != 2 {
            return Ok(());
        }
        let p = pick(&aform::all(&r), i);
        let (a, b) = (elem(&r, a), elem(&r, b));
        prop_assert_eq!(aform::act(&r, r.one(), p), p);
        prop_assert_eq!(aform::act(&r, r.mul(a, b), p), aform::act(&r, a, aform::act(&r, b, p)));
    }

    #[test]
    fn ideals_are_theta_stable_and_closed(ri in 0..RINGS.len(), g in any::<usize>(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let r = ring(ri);
        let j = ThetaIdeal::new(&r, &[elem(&r, g)]);
        let (x, y) = (pick(j.elements(), a), pick(j.elements(), b));
        let s = elem(&r, c);
        prop_assert!(j.contains(r.add(x, y)));
        prop_assert!(j.contains(r.mul(s, x)));
        prop_assert!(j.contains(r.theta(x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graph_automorphism_preserves_pairing(si in 0..SYSTEMS.len(), i in any::<usize>(), j in any::<usize>()) {
        let (s, o) = SYSTEMS[si];
        let sys = RootSystem::parse(s).unwrap();
        let aut = GraphAut::parse(&sys, o).unwrap();
        let roots: Vec<_> = sys.roots().collect();
        let (a, b) = (pick(&roots, i), pick(&roots, j));
        prop_assert_eq!(sys.cartan_int(aut.apply(b), aut.apply(a)), sys.cartan_int(b, a));
        prop_assert_eq!(sys.reflect(a, sys.reflect(a, b)), b);
    }

    #[test]
    fn generators_are_sigma_fixed_homomorphisms(si in 0..SYSTEMS.len(), c in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
        let (rep, r) = setup(si);
        let f = rep.folded();
        let class = f.classes()[c % f.classes().len()].id;
        let ps = letter_params(f, &r, class, LetterKind::X);
        let (p, q) = (pick(&ps, i), pick(&ps, j));
        let base = f.class(class).base();
        let m = evaluate(&rep, &r, &Word::x(base, p.clone())).unwrap();
        prop_assert_eq!(&rep.sigma_apply(&m).unwrap(), &m);
        let sum = match (&p, &q) {
            (Param::S(a), Param::S(b)) => Param::S(r.add(*a, *b)),
            (Param::P(a), Param::P(b)) => Param::P(aform::op(&r, *a, *b)),
            _ => unreachable!(),
        };
        let mq = evaluate(&rep, &r, &Word::x(base, q.clone())).unwrap();
        prop_assert_eq!(m.mul(&mq), evaluate(&rep, &r, &Word::x(base, sum)).unwrap());
        if p != q {
            prop_assert_ne!(m, mq);
        }
    }

    #[test]
    fn word_evaluation_is_multiplicative(si in 0..SYSTEMS.len(), picks in prop::collection::vec((any::<usize>(), any::<usize>()), 2..8), cut in any::<usize>()) {
        let (rep, r) = setup(si);
        let f = rep.folded();
        let letters: Vec<Word> = picks
            .iter()
            .map(|&(c, k)| {
                let cl = &f.classes()[c % f.classes().len()];
                Word::x(cl.base(), pick(&letter_params(f, &r, cl.id, LetterKind::X), k))
            })
            .collect();
        let cut = cut % letters.len();
        let (w1, w2) = (Node::prod(letters[..cut].to_vec()), Node::prod(letters[cut..].to_vec()));
        let whole = evaluate(&rep, &r, &Node::prod(vec![w1.clone(), w2.clone()])).unwrap();
        prop_assert_eq!(whole, evaluate(&rep, &r, &w1).unwrap().mul(&evaluate(&rep, &r, &w2).unwrap()));
    }

    #[test]
    fn commutator_closed_form_matches_oracle(si in 0..SYSTEMS.len(), a in any::<usize>(), b in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
        let (rep, r) = setup(si);
        let f = rep.folded();
        let n = f.classes().len();
        let (ca, cb) = (ClassId((a % n) as u16), ClassId((b % n) as u16));
        if f.proportional(ca, cb) {
            return Ok(());
        }
        let pa = pick(&letter_params(f, &r, ca, LetterKind::X), i);
        let pb = pick(&letter_params(f, &r, cb, LetterKind::X), j);
        let (ra, rb) = (f.class(ca).base(), f.class(cb).base());
        let cf = commutator_closed_form(rep.basis(), &r, ra, &pa, rb, &pb).unwrap();
        prop_assert_eq!(evaluate(&rep, &r, &cf.to_word()).unwrap(), commutator_oracle(&rep, &r, ra, &pa, rb, &pb).unwrap());
        // every factor class is a positive rational combination of the two
        for c in cf.classes(f) {
            let (va, vb, vc) = (f.vector(ca), f.vector(cb), f.vector(c));
            let found = (1..=6).any(|z| (1..=6).any(|x| (1..=6).any(|y| {
                va.iter().zip(vb).zip(vc).all(|((p, q), s)| z * s == x * p + y * q)
            })));
            prop_assert!(found, "factor class {} outside the cone", f.format_class(c));
        }
    }

    #[test]
    fn unipotent_factorization_is_unique(si in 0..SYSTEMS.len(), seeds in prop::collection::vec(any::<usize>(), 64), positive in any::<bool>()) {
        let (rep, r) = setup(si);
        let f = rep.folded();
        let mut g = trivial_factorization(f, positive);
        for ((c, p), &k) in g.factors.iter_mut().zip(seeds.iter().cycle()) {
            *p = pick(&letter_params(f, &r, *c, LetterKind::X), k);
        }
        let m = evaluate(&rep, &r, &g.to_word(f)).unwrap();
        let back = if positive { u_factor(&rep, &r, &m) } else { v_factor(&rep, &r, &m) }.unwrap();
        prop_assert_eq!(back, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn utv_recombines(picks in prop::collection::vec((any::<usize>(), any::<usize>()), 1..6)) {
        let r = Ring::make("dual(gf(9;frob);2)").unwrap();
        let j = ThetaIdeal::new(&r, &[r.epsilon().unwrap()]);
        let rep = Rep::new(SignedBasis::parse("A4", "o2").unwrap(), RepKind::Adjoint).unwrap();
        let f = rep.folded();
        let gens = elementary_level_generators(f, &j);
        let all = twisted_core::elements::sample_generators(f, &r);
        let w = Node::prod(picks.iter().map(|&(g, c)| Word::conj(pick(&all, c), pick(&gens, g))).collect());
        let m = evaluate(&rep, &r, &w).unwrap();
        let utv = kernel_factor_utv(&rep, &r, &m, &j).unwrap();
        prop_assert_eq!(evaluate(&rep, &r, &utv.to_word(f)).unwrap(), m);
        prop_assert!(utv.u.params_in(&j) && utv.v.params_in(&j));
    }

    #[test]
    fn certificates_are_ring_generic(c in any::<usize>(), ri in prop::sample::select(vec![0usize, 1, 2, 4])) {
        static CERTS: OnceLock<Vec<twisted_core::certificates::Certificate>> = OnceLock::new();
        let basis = SignedBasis::parse("A4", "o2").unwrap();
        let certs = CERTS.get_or_init(|| {
            basis.folded().classes().iter().map(|cl| certify_generator_commutator(&basis, cl.id).unwrap()).collect()
        });
        let cert = pick(certs, c);
        let r = ring(ri);
        let rep = Rep::new(basis, RepKind::Adjoint).unwrap();
        let res = verify_over_level(&cert, &rep, &r, &ThetaIdeal::whole(&r), 6).unwrap();
        prop_assert!(res.is_ok(), "{} fails over {}", cert.provenance, r.descriptor());
    }
}
