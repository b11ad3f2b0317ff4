//! Conjugation rules for `w`, `h` and torus elements, the untwisting
//! isomorphism over product rings, and the center of the natural
//! representation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fold::{ClassType, Folded};
use crate::matrix::Mat;
use crate::rep::{Character, Rep, RepKind};
use crate::ring::{aform, rk, AForm, Elem, Ring};
use crate::roots::RootId;
use crate::word::{evaluate, Letter, LetterKind, Node, Param, Word};

/// Outer roots of the class based at `a`, in orbit order from `a`.
fn outer_from(folded: &Folded, a: RootId) -> Vec<RootId> {
    let n = folded.class(folded.class_of(a)).outer().len();
    (0..n).map(|i| folded.aut().apply_pow(a, i as i32)).collect()
}

/// The image data of `s_[a]` acting on the class letter based at `b`:
/// `(canonical base of the image class, k)` with `s_[a](rho^k b)` equal to
/// that base.
pub fn reflected_base(folded: &Folded, a: RootId, b: RootId) -> Result<(RootId, i32)> {
    let img = folded.class_of(folded.class_reflect(a, b));
    let base = folded.class(img).base();
    (0..folded.order() as i32)
        .find(|&k| folded.class_reflect(a, folded.aut().apply_pow(b, k)) == base)
        .map(|k| (base, k))
        .ok_or_else(|| Error::Internal("class reflection does not preserve orbit order".into()))
}

/// `d([a], b') prod_i th^i(t)^{-<b', rho^i a>}`.
pub fn conj_coefficient(rep: &Rep, ring: &Ring, a: RootId, t: Elem, beta: RootId) -> Result<Elem> {
    let folded = rep.folded();
    let sys = folded.system();
    let mut r = ring.from_int(rep.basis().d_sign(a, beta) as i64);
    for (i, &ai) in outer_from(folded, a).iter().enumerate() {
        let e = -sys.cartan_int(beta, ai);
        r = ring.mul(r, ring.pow(ring.theta_pow(t, i as i32), e as i64)?);
    }
    Ok(r)
}

/// `N(t)^{-sum_i <b', rho^i a>}` with `N(t) = t th(t)`, the factor for a
/// `w` letter of an `A2` class. No sign enters.
pub fn norm_coefficient(folded: &Folded, ring: &Ring, a: RootId, t: Elem, beta: RootId) -> Result<Elem> {
    let sys = folded.system();
    let s: i64 = outer_from(folded, a).iter().map(|&ai| sys.cartan_int(beta, ai) as i64).sum();
    let n = ring.mul(t, ring.theta(t));
    ring.pow(n, -s)
}

fn theta_param(ring: &Ring, p: &Param, k: i32) -> Param {
    match p {
        Param::S(t) => Param::S(ring.theta_pow(*t, k)),
        Param::P(q) => Param::P(AForm { t: ring.theta_pow(q.t, k), u: ring.theta_pow(q.u, k) }),
        Param::PP(a, b) => Param::PP(
            AForm { t: ring.theta_pow(a.t, k), u: ring.theta_pow(a.u, k) },
            AForm { t: ring.theta_pow(b.t, k), u: ring.theta_pow(b.u, k) },
        ),
        Param::V(v) => Param::V(v.iter().map(|&x| ring.theta_pow(x, k)).collect()),
    }
}

/// Closed form of `w_[a](t) L w_[a](t)^{-1}` for an `x`, `w` or `h`
/// letter `L`, with `t` a scalar in `R*` (fixed when `[a]` is `A1`).
pub fn conj_by_w(rep: &Rep, ring: &Ring, a: RootId, t: Elem, target: &Letter<Param>) -> Result<Letter<Param>> {
    let folded = rep.folded();
    if !ring.is_unit(t) {
        return Err(Error::NotUnit(ring.format(t)));
    }
    if folded.class(folded.class_of(a)).kind == ClassType::A1 && !ring.is_fixed(t) {
        return Err(Error::BadParam(format!("{} is not fixed by th", ring.format(t))));
    }
    folded.base_shift(a)?;
    let (base, k) = reflected_base(folded, a, target.root)?;
    let beta = folded.aut().apply_pow(target.root, k);
    let up = theta_param(ring, &target.p, k);
    let a2_target = folded.class(folded.class_of(target.root)).kind == ClassType::A2;
    let p = match (target.kind, up) {
        (LetterKind::W, Param::S(u)) if a2_target => Param::S(ring.mul(norm_coefficient(folded, ring, a, t, beta)?, u)),
        (LetterKind::X | LetterKind::W, Param::S(u)) => {
            Param::S(ring.mul(conj_coefficient(rep, ring, a, t, beta)?, u))
        }
        (LetterKind::X, Param::P(q)) => Param::P(aform::act(ring, conj_coefficient(rep, ring, a, t, beta)?, q)),
        (LetterKind::H, p) => p,
        (kind, _) => {
            return Err(Error::BadParam(format!("no conjugation rule for a {kind} letter with this parameter")))
        }
    };
    Ok(Letter { kind: target.kind, root: base, p })
}

/// `h(chi) x_[a](u) h(chi)^{-1} = x_[a](chi(a) . u)`.
pub fn conj_by_torus(rep: &Rep, ring: &Ring, chi: &Character, target: &Letter<Param>) -> Result<Letter<Param>> {
    rep.check_character(ring, chi)?;
    if !rep.is_self_conjugate(ring, chi) {
        return Err(Error::Precondition("character is not self-conjugate".into()));
    }
    if target.kind != LetterKind::X {
        return Err(Error::BadParam("torus conjugation applies to x letters".into()));
    }
    let c = rep.char_on_root(ring, chi, target.root)?;
    let p = match target.p {
        Param::S(u) => Param::S(ring.mul(c, u)),
        Param::P(q) => Param::P(aform::act(ring, c, q)),
        _ => return Err(Error::BadParam("x letter has an ill-shaped parameter".into())),
    };
    Ok(Letter { kind: LetterKind::X, root: target.root, p })
}

/// Matrix check of a conjugation rule: `g L g^{-1}` against the predicted
/// letter.
pub fn conjugation_holds(rep: &Rep, ring: &Arc<Ring>, g: &Word, target: &Letter<Param>, image: &Letter<Param>) -> Result<bool> {
    let lhs = evaluate(rep, ring, &Node::conj(g.clone(), Node::L(target.clone())))?;
    let rhs = evaluate(rep, ring, &Node::L(image.clone()))?;
    Ok(lhs == rhs)
}

// ----------------------------------------------------------------- untwist

fn product_shape(folded: &Folded, ring: &Ring) -> Result<Arc<Ring>> {
    let base = ring.base_ring().cloned();
    match (ring.components(ring.zero()), base) {
        (Some(c), Some(b)) if c.len() == folded.order() as usize => Ok(b),
        _ => Err(Error::Precondition(format!(
            "untwisting needs a {}-fold product ring, not {}",
            folded.order(),
            ring.descriptor()
        ))),
    }
}

/// The image of an untwisted word under `G(R) -> G_sigma(R^m)`,
/// `x -> (x, rho(x), ...)`. Only `xr` letters may occur.
pub fn untwist_iso(rep: &Rep, prod: &Ring, word: &Word) -> Result<Word> {
    let folded = rep.folded();
    let base = product_shape(folded, prod)?;
    let m = folded.order() as usize;
    let sys = folded.system();
    let embed = |t: Elem| -> Result<Elem> {
        let mut comps = vec![base.zero(); m];
        comps[0] = t;
        prod.from_components(&comps)
    };
    word.map(&mut |l| {
        let Param::S(t) = l.p else { return Err(Error::BadParam("xr takes one scalar".into())) };
        if l.kind != LetterKind::Root {
            return Err(Error::Precondition("untwisting maps untwisted root letters only".into()));
        }
        let s = embed(t)?;
        let cl = folded.class(folded.class_of(l.root));
        let p = match cl.kind {
            ClassType::A1 => {
                let mut acc = prod.zero();
                for i in 0..m {
                    acc = prod.add(acc, prod.theta_pow(s, i as i32));
                }
                return Ok(Letter { kind: LetterKind::X, root: l.root, p: Param::S(acc) });
            }
            ClassType::A2 if l.root == cl.orbit[2] => {
                let n = rep.basis().n(cl.orbit[1], cl.orbit[0]) as i64;
                let u = prod.scale(n, prod.sub(s, prod.theta(s)));
                return Ok(Letter { kind: LetterKind::X, root: cl.base(), p: Param::P(AForm::new(prod, prod.zero(), u)?) });
            }
            ClassType::A2 => Param::P(AForm::new(prod, s, prod.zero())?),
            _ => Param::S(s),
        };
        let _ = sys;
        Ok(Letter { kind: LetterKind::X, root: l.root, p })
    })
}

/// Component `k` of a matrix over a product ring.
pub fn project(m: &Mat, k: usize) -> Result<Mat> {
    let r = m.ring().clone();
    let base = r.base_ring().cloned().ok_or_else(|| Error::Precondition("not a product ring".into()))?;
    r.components(r.zero()).ok_or_else(|| Error::Precondition("not a product ring".into()))?;
    Ok(m.transfer(&base, |a| r.components(a).expect("product element")[k]))
}

/// `rho` applied to a matrix without the ring automorphism.
pub fn rho_matrix(rep: &Rep, m: &Mat) -> Result<Mat> {
    // over a ring with trivial th the group automorphism is rho alone
    rep.sigma_apply(m)
}

// ------------------------------------------------------------------ center

/// Scalars `z` with `zI` in the image of `G_sigma(R)`.
#[derive(Clone, Debug)]
pub struct CenterReport {
    pub rep: RepKind,
    pub scalars: Vec<Elem>,
    pub commute_checked: usize,
}

pub fn center_describe(rep: &Rep, ring: &Arc<Ring>) -> Result<CenterReport> {
    let folded = rep.folded().clone();
    let scalars: Vec<Elem> = match rep.kind() {
        RepKind::Adjoint => vec![ring.one()],
        RepKind::Natural => {
            let n = rep.dim() as i64;
            let mut out = Vec::new();
            for z in ring.units() {
                if ring.pow(z, n)? != ring.one() {
                    continue;
                }
                let m = Mat::diagonal(ring, &vec![z; rep.dim()]);
                if rep.sigma_apply(&m)? == m {
                    out.push(z);
                }
            }
            out
        }
    };
    let gens = sample_generators(&folded, ring);
    let mut checked = 0;
    for &z in &scalars {
        let zm = Mat::diagonal(ring, &vec![z; rep.dim()]);
        for g in &gens {
            let gm = evaluate(rep, ring, g)?;
            if zm.mul(&gm) != gm.mul(&zm) {
                return Err(Error::Internal("scalar fails to commute".into()));
            }
            checked += 1;
        }
    }
    Ok(CenterReport { rep: rep.kind(), scalars, commute_checked: checked })
}

/// A few generators per class, with parameters built from `1` and the
/// field generator.
pub fn sample_generators(folded: &Folded, ring: &Ring) -> Vec<Word> {
    let mut seeds = vec![ring.one()];
    if let Some(x) = ring.generator_x() {
        seeds.push(x);
    }
    let mut out = Vec::new();
    for c in folded.classes() {
        for &s in &seeds {
            let p = match c.kind {
                ClassType::A1 => {
                    let f = ring.add(s, ring.theta(s));
                    let f = if ring.theta_order() == 3 { ring.add(f, ring.theta_pow(s, 2)) } else { f };
                    Param::S(f)
                }
                ClassType::A2 => Param::P(AForm::standard(ring, s)),
                _ => Param::S(s),
            };
            out.push(Word::x(c.base(), p));
        }
    }
    out
}

// ------------------------------------------------------------ H' witnesses

/// For an `A2` class: writes `h_[a](u)`, `u` in `R_2`, as a product
/// `w(t, v) w(t', v')` of `w` letters with `A(R)*` parameters, using
/// `h((t,v),(t',v')) = h(th(v) v'^-1)`.
pub fn h_prime_witness(folded: &Folded, ring: &Ring, a: RootId, u: Elem) -> Result<Option<Word>> {
    if folded.class(folded.class_of(a)).kind != ClassType::A2 {
        return Err(Error::Precondition("witness applies to A2 classes".into()));
    }
    let units = aform::units(ring);
    let r1 = rk::r1(ring);
    for &b in &r1 {
        // v' = b^-1, v = th(u v')
        let vp = ring.try_inv(b)?;
        let v = ring.theta(ring.mul(u, vp));
        let p1 = units.iter().find(|q| q.u == v);
        let p2 = units.iter().find(|q| q.u == vp);
        if let (Some(&p1), Some(&p2)) = (p1, p2) {
            return Ok(Some(Node::prod(vec![Word::w(a, Param::P(p1)), Word::w(a, Param::P(p2))])));
        }
    }
    Ok(None)
}

/// `w(t1,u1) w(t2,u2)^-1 w(t3,u3)` and the scalar `u1 u2^-1 u3` it equals.
pub fn w_triple(ring: &Ring, a: RootId, p: [AForm; 3]) -> Result<(Word, Elem)> {
    let s = ring.mul(ring.mul(p[0].u, ring.try_inv(p[1].u)?), p[2].u);
    let w = Node::prod(vec![
        Word::w(a, Param::P(p[0])),
        Word::w(a, Param::P(p[1])).inv(),
        Word::w(a, Param::P(p[2])),
    ]);
    Ok((w, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SignedBasis;

    fn rep(s: &str, o: &str, k: RepKind) -> Arc<Rep> {
        Arc::new(Rep::new(SignedBasis::parse(s, o).unwrap(), k).unwrap())
    }

    fn w_params(folded: &Folded, ring: &Ring, a: RootId) -> Vec<Elem> {
        match folded.class(folded.class_of(a)).kind {
            ClassType::A1 => ring.fixed_units(),
            _ => ring.units(),
        }
    }

    #[test]
    fn w_and_h_definitions_agree_with_untwisted_products() {
        let r = Ring::make("gf(9;frob)").unwrap();
        for (s, o) in [("A3", "o2"), ("A4", "o2"), ("D4", "o2")] {
            let rp = rep(s, o, RepKind::Adjoint);
            let f = rp.folded().clone();
            for c in f.classes() {
                let a = c.base();
                for t in w_params(&f, &r, a) {
                    let w = evaluate(&rp, &r, &Word::w(a, Param::S(t))).unwrap();
                    let h = evaluate(&rp, &r, &Word::h(a, Param::S(t))).unwrap();
                    let outer = outer_from(&f, a);
                    let mut wu = rp.identity(&r);
                    let mut hu = rp.identity(&r);
                    if c.kind == ClassType::A2 {
                        continue;
                    }
                    for (i, &ai) in outer.iter().enumerate() {
                        let ti = r.theta_pow(t, i as i32);
                        crate::word::mul_untwisted_w(&rp, &r, &mut wu, ai, ti).unwrap();
                        let d = rp.torus_diagonal(&r, &rp.coroot_character(&r, ai, ti).unwrap()).unwrap();
                        rp.mul_diagonal(&mut hu, &d);
                    }
                    assert_eq!(w, wu, "{s} {}", f.format_class(c.id));
                    assert_eq!(h, hu);
                    assert_eq!(rp.sigma_apply(&w).unwrap(), w);
                    assert_eq!(rp.sigma_apply(&h).unwrap(), h);
                }
            }
        }
    }

    #[test]
    fn h_is_multiplicative() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let rp = rep("A4", "o2", RepKind::Natural);
        let f = rp.folded().clone();
        for c in f.classes().iter().filter(|c| c.positive) {
            let a = c.base();
            let ts = w_params(&f, &r, a);
            for &t in &ts {
                for &u in &ts {
                    let lhs = evaluate(&rp, &r, &Node::prod(vec![Word::h(a, Param::S(t)), Word::h(a, Param::S(u))])).unwrap();
                    assert_eq!(lhs, evaluate(&rp, &r, &Word::h(a, Param::S(r.mul(t, u)))).unwrap());
                }
            }
        }
    }

    #[test]
    fn a2_w_and_h_relations() {
        let r = Ring::make("gf(9;frob)").unwrap();
        for k in [RepKind::Natural, RepKind::Adjoint] {
            let rp = rep("A4", "o2", k);
            let f = rp.folded().clone();
            let units = aform::units(&r);
            for c in f.classes().iter().filter(|c| c.kind == ClassType::A2) {
                let a = c.base();
                for &p in &units {
                    // w(t,u) = w(u)
                    let wp = evaluate(&rp, &r, &Word::w(a, Param::P(p))).unwrap();
                    assert_eq!(wp, evaluate(&rp, &r, &Word::w(a, Param::S(p.u))).unwrap());
                    assert_eq!(rp.sigma_apply(&wp).unwrap(), wp);
                    // w(t,u)^-1 = w(-t u th(u)^-1, th(u))
                    let ub = r.theta(p.u);
                    let q = AForm::new(&r, r.neg(r.mul(r.mul(p.t, p.u), r.inv(ub).unwrap())), ub).unwrap();
                    assert!(wp.mul(&evaluate(&rp, &r, &Word::w(a, Param::P(q))).unwrap()).is_identity());
                }
                for &p in units.iter().step_by(3) {
                    for &q in units.iter().step_by(2) {
                        let h = evaluate(&rp, &r, &Word::h(a, Param::PP(p, q))).unwrap();
                        let s = r.mul(r.theta(p.u), r.inv(q.u).unwrap());
                        assert_eq!(h, evaluate(&rp, &r, &Word::h(a, Param::S(s))).unwrap());
                    }
                }
                for t in r.units() {
                    // h(t) = w(th t) w(1), w(t)^-1 = w(th t)
                    let h = evaluate(&rp, &r, &Word::h(a, Param::S(t))).unwrap();
                    let rhs = Node::prod(vec![Word::w(a, Param::S(r.theta(t))), Word::w(a, Param::S(r.one()))]);
                    assert_eq!(h, evaluate(&rp, &r, &rhs).unwrap());
                    let ww = Node::prod(vec![Word::w(a, Param::S(t)), Word::w(a, Param::S(r.theta(t)))]);
                    assert!(evaluate(&rp, &r, &ww).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn natural_a2_class_torus_matrix() {
        // h_[a](t) = diag(t, th(t) t^-1, th(t)^-1) up to the ordering of the basis
        let r = Ring::make("gf(9;frob)").unwrap();
        let rp = rep("A2", "o2", RepKind::Natural);
        let f = rp.folded().clone();
        let a = f.classes().iter().find(|c| c.positive).unwrap().base();
        for t in r.units() {
            let h = evaluate(&rp, &r, &Word::h(a, Param::S(t))).unwrap();
            let tb = r.theta(t);
            let mut d: Vec<Elem> = (0..3).map(|i| h.get(i, i)).collect();
            let mut want = vec![t, r.mul(tb, r.inv(t).unwrap()), r.inv(tb).unwrap()];
            d.sort();
            want.sort();
            assert_eq!(d, want);
        }
    }

    #[test]
    fn triple_w_identity_and_h_prime_witness() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let rp = rep("A4", "o2", RepKind::Natural);
        let f = rp.folded().clone();
        let a = f.classes().iter().find(|c| c.kind == ClassType::A2).unwrap().base();
        let units = aform::units(&r);
        for i in (0..units.len()).step_by(2) {
            let p = [units[i], units[(i * 5 + 1) % units.len()], units[(i * 7 + 3) % units.len()]];
            let (w, s) = w_triple(&r, a, p).unwrap();
            assert_eq!(evaluate(&rp, &r, &w).unwrap(), evaluate(&rp, &r, &Word::w(a, Param::S(s))).unwrap());
        }
        for u in r.units() {
            let w = h_prime_witness(&f, &r, a, u).unwrap().expect("R_2 is all units over a field");
            assert_eq!(evaluate(&rp, &r, &w).unwrap(), evaluate(&rp, &r, &Word::h(a, Param::S(u))).unwrap());
        }
    }

    fn target_params(f: &Folded, r: &Ring, b: RootId, kind: LetterKind) -> Vec<Param> {
        let ct = f.class(f.class_of(b)).kind;
        match (kind, ct) {
            (LetterKind::X, ClassType::A1) => r.fixed_subring().into_iter().map(Param::S).collect(),
            (LetterKind::X, ClassType::A2) => aform::all(r).into_iter().map(Param::P).collect(),
            (LetterKind::X, _) => r.elements().map(Param::S).collect(),
            (_, ClassType::A1) => r.fixed_units().into_iter().map(Param::S).collect(),
            _ => r.units().into_iter().map(Param::S).collect(),
        }
    }

    #[test]
    fn conjugation_by_w_matches_matrices() {
        for (s, o, ring) in [("A3", "o2", "gf(9;frob)"), ("A4", "o2", "gf(9;frob)"), ("A5", "o2", "gf(9;frob)"), ("D4", "o3", "gf(125;frob)")] {
            let r = Ring::make(ring).unwrap();
            let rp = rep(s, o, RepKind::Adjoint);
            let f = rp.folded().clone();
            for ca in f.classes() {
                let a = ca.base();
                for t in w_params(&f, &r, a).into_iter().step_by(3) {
                    let g = Word::w(a, Param::S(t));
                    for cb in f.classes() {
                        for kind in [LetterKind::X, LetterKind::W, LetterKind::H] {
                            for p in target_params(&f, &r, cb.base(), kind).into_iter().step_by(4) {
                                let target = Letter { kind, root: cb.base(), p };
                                let img = conj_by_w(&rp, &r, a, t, &target).unwrap();
                                assert!(
                                    conjugation_holds(&rp, &r, &g, &target, &img).unwrap(),
                                    "{s}: w{} on {kind}{}",
                                    f.format_class(ca.id),
                                    f.format_class(cb.id)
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn torus_conjugation() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let rp = rep("A3", "o2", RepKind::Natural);
        let f = rp.folded().clone();
        let x = r.generator_x().unwrap();
        let chis = [
            Character { values: vec![r.one(); 3] },
            Character { values: vec![x, r.mul(x, r.theta(x)), r.theta(x)] },
            Character { values: vec![r.theta(x), r.from_int(2), x] },
        ];
        for chi in &chis {
            assert!(rp.is_self_conjugate(&r, chi));
            let g = Word::chi(chi.values.clone());
            for c in f.classes() {
                for p in target_params(&f, &r, c.base(), LetterKind::X).into_iter().step_by(2) {
                    let target = Letter { kind: LetterKind::X, root: c.base(), p };
                    let img = conj_by_torus(&rp, &r, chi, &target).unwrap();
                    assert!(conjugation_holds(&rp, &r, &g, &target, &img).unwrap());
                }
            }
        }
        let bad = Character { values: vec![x, r.one(), r.one()] };
        let t = Letter { kind: LetterKind::X, root: f.classes()[0].base(), p: Param::S(r.one()) };
        assert!(conj_by_torus(&rp, &r, &bad, &t).is_err());
    }

    #[test]
    fn untwist_is_sigma_fixed_and_projects_back() {
        let pr = Ring::make("prod2(gf(3))").unwrap();
        let base = pr.base_ring().unwrap().clone();
        for (s, k) in [("A3", RepKind::Natural), ("A4", RepKind::Adjoint)] {
            let rp = rep(s, "o2", k);
            let sys = rp.sys().clone();
            let mut letters = Vec::new();
            for (i, a) in sys.roots().enumerate() {
                letters.push(Word::root(a, base.from_int(1 + (i as i64 % 2))));
            }
            let w = Node::prod(letters);
            let img = untwist_iso(&rp, &pr, &w).unwrap();
            let m = evaluate(&rp, &pr, &img).unwrap();
            assert_eq!(rp.sigma_apply(&m).unwrap(), m);
            let direct = evaluate(&rp, &base, &w).unwrap();
            assert_eq!(project(&m, 0).unwrap(), direct);
            assert_eq!(project(&m, 1).unwrap(), rho_matrix(&rp, &direct).unwrap());
        }
        let f9 = Ring::make("gf(9;frob)").unwrap();
        let rp = rep("A3", "o2", RepKind::Natural);
        assert!(untwist_iso(&rp, &f9, &Node::one()).is_err());
    }

    #[test]
    fn center_of_natural_2a3() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let c = center_describe(&rep("A3", "o2", RepKind::Natural), &r).unwrap();
        assert_eq!(c.scalars.len(), 4);
        assert!(c.commute_checked > 0);
        let c = center_describe(&rep("A3", "o2", RepKind::Adjoint), &r).unwrap();
        assert_eq!(c.scalars, vec![r.one()]);
    }
}
