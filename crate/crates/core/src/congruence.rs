//! Level structures: generators of `E'(J)`, unique unipotent factorization,
//! the UHV rewriting of a conjugated negative generator, factorization of
//! principal congruence elements, torus level tests and the level of an
//! element.

use std::sync::Arc;

use crate::basis::SignedBasis;
use crate::error::{Error, Result};
use crate::fold::{ClassId, ClassType, Folded, RootClass};
use crate::matrix::Mat;
use crate::rep::{Character, Rep, RepKind};
use crate::ring::{AForm, Component, Elem, ParamKind, Ring, ThetaIdeal};
use crate::roots::RootId;
use crate::word::{check_letter, evaluate, Param, Word};

/// Parameter set of a class type.
pub fn param_kind(kind: ClassType) -> ParamKind {
    match kind {
        ClassType::A1 => ParamKind::Fixed,
        ClassType::A1x2 | ClassType::A1x3 => ParamKind::Scalar,
        ClassType::A2 => ParamKind::Pair,
    }
}

/// `p` lies in the `J`-component of its class.
pub fn param_in_ideal(ideal: &ThetaIdeal, p: &Param) -> bool {
    match p {
        Param::S(t) => ideal.contains(*t),
        Param::P(q) => ideal.contains(q.t) && ideal.contains(q.u),
        Param::PP(a, b) => [a.t, a.u, b.t, b.u].iter().all(|&x| ideal.contains(x)),
        Param::V(v) => v.iter().all(|&x| ideal.contains(x)),
    }
}

fn zero_param(kind: ClassType) -> Param {
    match kind {
        ClassType::A2 => Param::P(AForm { t: Elem::ZERO, u: Elem::ZERO }),
        _ => Param::S(Elem::ZERO),
    }
}

fn is_zero_param(p: &Param) -> bool {
    match p {
        Param::S(t) => *t == Elem::ZERO,
        Param::P(q) => q.is_zero(),
        _ => false,
    }
}

/// All nontrivial generators `x_[a](t)`, `t` in `J_[a]`, over every class.
pub fn elementary_level_generators(folded: &Folded, ideal: &ThetaIdeal) -> Vec<Word> {
    let mut out = Vec::new();
    for c in folded.classes() {
        match ideal.component(param_kind(c.kind)) {
            Component::Scalars(v) => {
                out.extend(v.into_iter().filter(|&t| t != Elem::ZERO).map(|t| Word::x(c.base(), Param::S(t))))
            }
            Component::Pairs(v) => {
                out.extend(v.into_iter().filter(|q| !q.is_zero()).map(|q| Word::x(c.base(), Param::P(q))))
            }
        }
    }
    out
}

// ------------------------------------------------------- unipotent factors

/// A product `prod x_[a](p_a)` over the positive (or negative) classes in
/// the fixed class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentFactorization {
    pub positive: bool,
    pub factors: Vec<(ClassId, Param)>,
}

impl UnipotentFactorization {
    pub fn to_word(&self, folded: &Folded) -> Word {
        Word::prod(self.factors.iter().map(|(c, p)| Word::x(folded.class(*c).base(), p.clone())).collect())
    }

    /// Factors with a nonzero parameter.
    pub fn nontrivial(&self) -> impl Iterator<Item = &(ClassId, Param)> {
        self.factors.iter().filter(|(_, p)| !is_zero_param(p))
    }

    pub fn is_identity(&self) -> bool {
        self.nontrivial().next().is_none()
    }

    pub fn params_in(&self, ideal: &ThetaIdeal) -> bool {
        self.factors.iter().all(|(_, p)| param_in_ideal(ideal, p))
    }
}

fn class_list(folded: &Folded, positive: bool) -> &[RootClass] {
    if positive {
        folded.positive_classes()
    } else {
        folded.negative_classes()
    }
}

/// Factorization of an element of `U_sigma(R)`.
pub fn u_factor(rep: &Rep, ring: &Arc<Ring>, m: &Mat) -> Result<UnipotentFactorization> {
    factor_unipotent(rep, ring, m, true)
}

/// Factorization of an element of `U^-_sigma(R)`.
pub fn v_factor(rep: &Rep, ring: &Arc<Ring>, m: &Mat) -> Result<UnipotentFactorization> {
    factor_unipotent(rep, ring, m, false)
}

/// Reads root parameters layer by layer in height: the entry of `m` at a
/// position where `pi(X_b)` is nonzero is `c s_b` plus a polynomial in the
/// parameters of lower roots.
fn factor_unipotent(rep: &Rep, ring: &Arc<Ring>, m: &Mat, positive: bool) -> Result<UnipotentFactorization> {
    if m.ring().id() != ring.id() {
        return Err(Error::RingMismatch);
    }
    if m.dim() != rep.dim() {
        return Err(Error::Representation("matrix size does not match the representation".into()));
    }
    let folded = rep.folded();
    let sys = folded.system();
    let classes = class_list(folded, positive);
    let seq: Vec<RootId> = classes.iter().flat_map(|c| c.orbit.iter().copied()).collect();
    let mut slots = Vec::with_capacity(seq.len());
    for &b in &seq {
        let act = rep.root_action(b);
        let e = act
            .iter()
            .find(|e| e.2.abs() == 1)
            .or_else(|| act.first())
            .ok_or_else(|| Error::Internal("root acts by zero".into()))?;
        slots.push((e.0, e.1, ring.try_inv(ring.from_int(e.2 as i64))?));
    }
    let heights: Vec<i32> = seq.iter().map(|&b| sys.height(b).abs()).collect();
    let top = heights.iter().copied().max().unwrap_or(0);
    let mut s = vec![Elem::ZERO; seq.len()];
    for h in 1..=top {
        let mut p = rep.identity(ring);
        for (&b, &x) in seq.iter().zip(&s) {
            rep.mul_root_unipotent(&mut p, b, x);
        }
        for i in (0..seq.len()).filter(|&i| heights[i] == h) {
            let (row, col, ci) = slots[i];
            s[i] = ring.mul(ring.sub(m.get(row, col), p.get(row, col)), ci);
        }
    }
    let mut factors = Vec::with_capacity(classes.len());
    let mut k = 0;
    for c in classes {
        let b = c.base();
        let p = match c.kind {
            ClassType::A2 => {
                let n = rep.basis().n(folded.aut().apply(b), b) as i64;
                Param::P(AForm { t: s[k], u: ring.scale(n, s[k + 2]) })
            }
            _ => Param::S(s[k]),
        };
        k += c.orbit.len();
        factors.push((c.id, p));
    }
    let f = UnipotentFactorization { positive, factors };
    let not_member = || Error::Precondition(format!("matrix is not in U{}_sigma(R)", if positive { "" } else { "^-" }));
    for (c, p) in &f.factors {
        let l = crate::word::Letter { kind: crate::word::LetterKind::X, root: folded.class(*c).base(), p: p.clone() };
        check_letter(rep, ring, &l).map_err(|_| not_member())?;
    }
    if evaluate(rep, ring, &f.to_word(folded))? != *m {
        return Err(not_member());
    }
    Ok(f)
}

// ------------------------------------------------------------------- UHV

/// `x_[a](s) x_{-[a]}(t) x_[a](s)^-1 = x_[a](a) h x_{-[a]}(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uhv {
    pub root: RootId,
    pub neg_root: RootId,
    pub a: Param,
    pub h: Word,
    pub b: Param,
}

impl Uhv {
    pub fn lhs(&self, s: &Param, t: &Param) -> Word {
        let xs = Word::x(self.root, s.clone());
        Word::prod(vec![xs.clone(), Word::x(self.neg_root, t.clone()), xs.inv()])
    }

    pub fn rhs(&self) -> Word {
        Word::prod(vec![Word::x(self.root, self.a.clone()), self.h.clone(), Word::x(self.neg_root, self.b.clone())])
    }
}

/// Closed-form UHV rewriting. `root` is an outer root of a positive class;
/// the negative letter is based at `-root` (`A1^k`) or `-rho(root)` (`A2`).
pub fn uhv_conjugate(folded: &Folded, ring: &Ring, root: RootId, s: &Param, t: &Param) -> Result<Uhv> {
    let c = folded.class(folded.class_of(root));
    if !c.positive {
        return Err(Error::Precondition("uhv_conjugate takes a positive class".into()));
    }
    let neg_root = folded.neg_base(root);
    let r = ring;
    let (a, h, b) = match (c.kind, s, t) {
        (ClassType::A2, Param::P(s), Param::P(t)) => {
            // In coordinates (s1, s2) = th(s) on both components the natural
            // matrix of x_[a](s) is [[1, th s1, s2], [0, 1, s1], [0, 0, 1]].
            let th = |x| r.theta(x);
            let (s1, s2, t1, t2) = (th(s.t), th(s.u), th(t.t), th(t.u));
            let den = r.sub(r.one(), r.sub(r.mul(th(t1), s1), r.mul(t2, th(s2))));
            let u = r.try_inv(den)?;
            let ub = r.theta(u);
            let a1 = r.mul(
                r.add(r.sub(r.mul(t1, th(s2)), r.mul(th(t1), r.mul(s1, s1))), r.mul(t2, r.mul(s1, th(s2)))),
                u,
            );
            let a2 = r.mul(
                r.add(
                    r.sub(r.mul(t1, r.mul(th(s1), th(s2))), r.mul(th(t1), r.mul(s1, s2))),
                    r.mul(t2, r.mul(s2, th(s2))),
                ),
                u,
            );
            let b1 = r.mul(r.sub(t1, r.mul(s1, th(t2))), ub);
            let b2 = r.mul(t2, u);
            let a = AForm::new(r, th(a1), th(a2))?;
            let b = AForm::new(r, th(b1), th(b2))?;
            (Param::P(a), Word::h(root, Param::S(ub)), Param::P(b))
        }
        (ClassType::A2, _, _) => return Err(Error::BadParam("A2 classes take pairs".into())),
        (_, Param::S(s), Param::S(t)) => {
            let st = r.mul(*s, *t);
            let d = r.try_inv(r.sub(r.one(), st))?;
            let a = r.neg(r.mul(r.mul(*t, r.mul(*s, *s)), d));
            let b = r.mul(*t, d);
            (Param::S(a), Word::h(root, Param::S(d)), Param::S(b))
        }
        _ => return Err(Error::BadParam("A1-type classes take scalars".into())),
    };
    Ok(Uhv { root, neg_root, a, h, b })
}

// ---------------------------------------------------- congruence kernels

/// `M = x(u) h(chi) x^-(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Utv {
    pub u: UnipotentFactorization,
    pub chi: Character,
    pub v: UnipotentFactorization,
}

impl Utv {
    pub fn to_word(&self, folded: &Folded) -> Word {
        Word::prod(vec![self.u.to_word(folded), Word::chi(self.chi.values.clone()), self.v.to_word(folded)])
    }
}

/// Factors `m` in the principal congruence subgroup of level `J` (`J` in
/// the radical) as `U(J) T(J) U^-(J)`.
pub fn kernel_factor_utv(rep: &Rep, ring: &Arc<Ring>, m: &Mat, ideal: &ThetaIdeal) -> Result<Utv> {
    if m.ring().id() != ring.id() || ideal.ring().id() != ring.id() {
        return Err(Error::RingMismatch);
    }
    if !ideal.in_radical() {
        return Err(Error::Precondition(format!("{} is not in the radical", ideal.describe())));
    }
    if !m.congruent_identity(ideal) {
        return Err(Error::Precondition("matrix is not congruent to the identity".into()));
    }
    let n = m.dim();
    let r = ring;
    // M = U D L, peeling rank-one terms from the bottom-right corner.
    let mut a = m.clone();
    let mut up = Mat::identity(r, n);
    let mut lo = Mat::identity(r, n);
    let mut d = vec![r.one(); n];
    for k in (0..n).rev() {
        let piv = a.get(k, k);
        let pinv = r.try_inv(piv).map_err(|_| Error::Internal("non-unit pivot in a congruence kernel".into()))?;
        d[k] = piv;
        for i in 0..k {
            up.set(i, k, r.mul(a.get(i, k), pinv));
            lo.set(k, i, r.mul(a.get(k, i), pinv));
        }
        for i in 0..k {
            let ui = a.get(i, k);
            if ui == Elem::ZERO {
                continue;
            }
            for j in 0..k {
                let v = r.sub(a.get(i, j), r.mul(ui, lo.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    let u = u_factor(rep, ring, &up)?;
    let v = v_factor(rep, ring, &lo)?;
    let chi = character_from_diagonal(rep, ring, &d)?;
    if !u.params_in(ideal) || !v.params_in(ideal) {
        return Err(Error::Internal("unipotent factor outside the level".into()));
    }
    let (in_tj, _) = torus_level_test(rep, ring, &chi, ideal)?;
    if !in_tj {
        return Err(Error::Internal("torus factor outside T(J)".into()));
    }
    Ok(Utv { u, chi, v })
}

/// Recovers a character from the diagonal of `h(chi)`.
pub fn character_from_diagonal(rep: &Rep, ring: &Arc<Ring>, d: &[Elem]) -> Result<Character> {
    let sys = rep.sys();
    let weights = rep.weights();
    let values = match rep.kind() {
        RepKind::Adjoint => sys
            .simple_roots()
            .iter()
            .map(|&s| {
                let w = sys.root_as_weight(s);
                weights
                    .iter()
                    .position(|x| *x == w)
                    .map(|i| d[i])
                    .ok_or_else(|| Error::Internal("simple root weight missing".into()))
            })
            .collect::<Result<Vec<_>>>()?,
        RepKind::Natural => {
            let mut acc = ring.one();
            d[..sys.rank()]
                .iter()
                .map(|&x| {
                    acc = ring.mul(acc, x);
                    acc
                })
                .collect()
        }
    };
    let chi = Character { values };
    rep.check_character(ring, &chi)?;
    if rep.torus_diagonal(ring, &chi)? != d {
        return Err(Error::Precondition("diagonal is not a torus element".into()));
    }
    if !rep.is_self_conjugate(ring, &chi) {
        return Err(Error::Precondition("torus element is not sigma-fixed".into()));
    }
    Ok(chi)
}

/// `(chi(mu) = 1 mod J on all weights, chi(a) = 1 mod J on all roots)`.
pub fn torus_level_test(rep: &Rep, ring: &Ring, chi: &Character, ideal: &ThetaIdeal) -> Result<(bool, bool)> {
    rep.check_character(ring, chi)?;
    if !rep.is_self_conjugate(ring, chi) {
        return Err(Error::Precondition("character is not self-conjugate".into()));
    }
    let near_one = |x: Elem| ideal.contains(ring.sub(x, ring.one()));
    let mut on_weights = true;
    for mu in rep.weights() {
        on_weights &= near_one(rep.char_on_weight(ring, chi, mu)?);
    }
    let mut on_roots = true;
    for a in rep.sys().roots() {
        on_roots &= near_one(rep.char_on_root(ring, chi, a)?);
    }
    Ok((on_weights, on_roots))
}

/// The smallest `th`-stable ideal `J` with `ad(g) = 1 mod J`.
pub fn level_of(rep: &Rep, m: &Mat) -> Result<ThetaIdeal> {
    if rep.kind() != RepKind::Adjoint {
        return Err(Error::Representation("the level is read in the adjoint representation".into()));
    }
    let r = m.ring();
    let n = m.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { r.sub(m.get(i, j), r.one()) } else { m.get(i, j) };
            if v != Elem::ZERO && !gens.contains(&v) {
                gens.push(v);
            }
        }
    }
    Ok(ThetaIdeal::new(r, &gens))
}

/// [`level_of`] for a word, evaluated in the adjoint representation of
/// `basis` whatever representation the caller works in.
pub fn level_of_word(basis: &Arc<SignedBasis>, ring: &Arc<Ring>, word: &Word) -> Result<ThetaIdeal> {
    let ad = Rep::new(basis.clone(), RepKind::Adjoint)?;
    level_of(&ad, &evaluate(&ad, ring, word)?)
}

/// All elements of `U_sigma(J)` (or `U^-_sigma(J)`) as factor lists, in
/// lexicographic parameter order.
pub fn enumerate_unipotent(folded: &Folded, ideal: &ThetaIdeal, positive: bool) -> Vec<UnipotentFactorization> {
    let comps: Vec<(ClassId, Vec<Param>)> = class_list(folded, positive)
        .iter()
        .map(|c| {
            let ps = match ideal.component(param_kind(c.kind)) {
                Component::Scalars(v) => v.into_iter().map(Param::S).collect(),
                Component::Pairs(v) => v.into_iter().map(Param::P).collect(),
            };
            (c.id, ps)
        })
        .collect();
    let mut out = vec![UnipotentFactorization { positive, factors: Vec::new() }];
    for (c, ps) in &comps {
        let mut next = Vec::with_capacity(out.len() * ps.len());
        for f in &out {
            for p in ps {
                let mut g = f.clone();
                g.factors.push((*c, p.clone()));
                next.push(g);
            }
        }
        out = next;
    }
    out
}

/// `U_sigma(R)` order for a finite ring, from the class components.
pub fn unipotent_order(folded: &Folded, ring: &Arc<Ring>) -> usize {
    let whole = ThetaIdeal::whole(ring);
    folded.positive_classes().iter().map(|c| whole.component(param_kind(c.kind)).len()).product()
}

/// The zero factorization.
pub fn trivial_factorization(folded: &Folded, positive: bool) -> UnipotentFactorization {
    UnipotentFactorization {
        positive,
        factors: class_list(folded, positive).iter().map(|c| (c.id, zero_param(c.kind))).collect(),
    }
}
