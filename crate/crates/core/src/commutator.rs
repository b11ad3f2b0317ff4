//! Commutators `[x_[a](t), x_[b](u)]` of twisted root elements, in closed
//! form and by matrices.
//!
//! The closed form picks orbit representatives so that the first variant of
//! each formula applies, then rebases every factor to its canonical base.

use std::sync::Arc;

use crate::basis::SignedBasis;
use crate::error::{Error, Result};
use crate::fold::{ClassId, Folded, PairType, Tag};
use crate::matrix::Mat;
use crate::rep::Rep;
use crate::ring::{aform, AForm, Elem, Ring};
use crate::roots::RootId;
use crate::word::{canonical_x, evaluate, Letter, LetterKind, Node, Param, Word};

#[derive(Clone, Debug)]
pub struct CommutatorResult {
    pub pair_type: PairType,
    /// `x` letters at canonical bases, in product order.
    pub factors: Vec<Letter<Param>>,
}

impl CommutatorResult {
    pub fn to_word(&self) -> Word {
        Node::prod(self.factors.iter().cloned().map(Node::L).collect())
    }

    pub fn classes(&self, folded: &Folded) -> Vec<ClassId> {
        self.factors.iter().map(|l| folded.class_of(l.root)).collect()
    }
}

struct Ctx<'a> {
    basis: &'a SignedBasis,
    folded: &'a Folded,
    ring: &'a Ring,
}

impl Ctx<'_> {
    fn rho(&self, a: RootId, k: i32) -> RootId {
        self.folded.aut().apply_pow(a, k)
    }

    fn th(&self, x: Elem, k: i32) -> Elem {
        self.ring.theta_pow(x, k)
    }

    fn n(&self, a: RootId, b: RootId) -> Elem {
        self.ring.from_int(self.basis.n(a, b) as i64)
    }

    fn add(&self, a: RootId, b: RootId) -> Result<RootId> {
        self.folded.system().add(a, b).ok_or_else(|| {
            let s = self.folded.system();
            Error::Internal(format!("{} + {} is not a root", s.format(a), s.format(b)))
        })
    }

    fn sum(&self, roots: &[RootId]) -> Result<RootId> {
        let mut acc = roots[0];
        for &r in &roots[1..] {
            acc = self.add(acc, r)?;
        }
        Ok(acc)
    }

    fn is_sum(&self, a: RootId, b: RootId) -> bool {
        self.folded.system().add(a, b).is_some()
    }

    /// Smallest `j` with `a + rho^{j+off}(b)` a root.
    fn shift_for(&self, a: RootId, b: RootId, off: i32) -> Result<i32> {
        (0..self.folded.order() as i32).find(|&j| self.is_sum(a, self.rho(b, j + off))).ok_or_else(|| {
            let s = self.folded.system();
            Error::Internal(format!("no representative of [{}] sums with {}", s.format(b), s.format(a)))
        })
    }

    fn emit(&self, out: &mut Vec<Letter<Param>>, root: RootId, p: Param) -> Result<()> {
        let (base, p) = canonical_x(self.folded, self.ring, root, &p)?;
        out.push(Letter { kind: LetterKind::X, root: base, p });
        Ok(())
    }

    fn prod(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.ring.one(), |a, &b| self.ring.mul(a, b))
    }

    fn shift_param(&self, p: &Param, k: i32) -> Param {
        match p {
            Param::S(t) => Param::S(self.th(*t, k)),
            Param::P(q) => Param::P(AForm { t: self.th(q.t, k), u: self.th(q.u, k) }),
            other => other.clone(),
        }
    }
}

fn scalar(p: &Param) -> Result<Elem> {
    match p {
        Param::S(t) => Ok(*t),
        _ => Err(Error::BadParam("expected a scalar parameter".into())),
    }
}

fn pair(p: &Param) -> Result<AForm> {
    match p {
        Param::P(q) => Ok(*q),
        _ => Err(Error::BadParam("expected an (t, u) parameter".into())),
    }
}

/// Factors of `[x_[a](t), x_[b](u)]` in the orientation the tag is stated
/// for; `a`, `b` are canonical bases.
fn forward(c: &Ctx, tag: Tag, a: RootId, t: &Param, b: RootId, u: &Param) -> Result<Vec<Letter<Param>>> {
    let r = c.ring;
    let mut out = Vec::new();
    match tag {
        Tag::A1 | Tag::A2i => {}
        Tag::A2ii => {
            // with a + rho(b) = g + rho(g) the middle root of [g]
            let j = c.shift_for(a, b, 1)?;
            let b = c.rho(b, j);
            let b1 = c.rho(b, 1);
            let (t, u) = (scalar(t)?, c.th(scalar(u)?, j));
            let g = c.folded.class(c.folded.class_of(c.add(a, b1)?)).base();
            let v = r.sub(r.mul(t, c.th(u, 1)), r.mul(c.th(t, 1), u));
            let v = c.prod(&[c.n(a, b1), c.n(c.rho(g, 1), g), v]);
            c.emit(&mut out, g, Param::P(AForm::new(r, r.zero(), v)?))?;
        }
        Tag::Bi | Tag::Bii => {
            let j = c.shift_for(a, b, 0)?;
            let b = c.rho(b, j);
            let u = c.th(scalar(u)?, j);
            c.emit(&mut out, c.add(a, b)?, Param::S(c.prod(&[c.n(a, b), scalar(t)?, u])))?;
        }
        Tag::Ci => {
            let j = c.shift_for(a, b, 1)?;
            let b1 = c.rho(b, j + 1);
            let (t, u) = (scalar(t)?, c.th(scalar(u)?, j));
            let v = r.add(r.mul(t, c.th(u, 1)), r.mul(c.th(t, 1), u));
            c.emit(&mut out, c.add(a, b1)?, Param::S(r.mul(c.n(a, b1), v)))?;
        }
        Tag::Cii => {
            let j = c.shift_for(a, b, 1)?;
            let b1 = c.rho(b, j + 1);
            let (t1, u1) = (pair(t)?.t, c.th(pair(u)?.t, j));
            c.emit(&mut out, c.add(a, b1)?, Param::S(c.prod(&[c.n(a, b1), t1, c.th(u1, 1)])))?;
        }
        Tag::Di => {
            let j = c.shift_for(a, b, 0)?;
            let b0 = c.rho(b, j);
            let b1 = c.rho(b0, 1);
            let (t, u) = (scalar(t)?, c.th(scalar(u)?, j));
            let n1 = c.n(a, b0);
            c.emit(&mut out, c.add(a, b0)?, Param::S(c.prod(&[n1, t, u])))?;
            let ab1 = c.add(a, b1)?;
            c.emit(&mut out, c.sum(&[a, b0, b1])?, Param::S(c.prod(&[n1, c.n(b0, ab1), t, u, c.th(u, 1)])))?;
        }
        Tag::Dii => {
            let j = c.shift_for(a, b, 0)?;
            let b0 = c.rho(b, j);
            let b1 = c.rho(b0, 1);
            let t = scalar(t)?;
            let q = pair(&c.shift_param(u, j))?;
            let p1 = AForm::new(r, c.prod(&[c.n(a, b0), t, q.t]), c.prod(&[t, c.th(t, 1), q.u]))?;
            c.emit(&mut out, c.add(a, b0)?, Param::P(p1))?;
            let mid = c.add(b0, b1)?;
            c.emit(&mut out, c.sum(&[a, b0, b1])?, Param::S(c.prod(&[c.n(b0, b1), c.n(mid, a), t, q.u])))?;
        }
        Tag::E => {
            let j = c.shift_for(a, b, 0)?;
            let bs = [c.rho(b, j), c.rho(b, j + 1), c.rho(b, j + 2)];
            let t = scalar(t)?;
            let u0 = c.th(scalar(u)?, j);
            let us = [u0, c.th(u0, 1), c.th(u0, 2)];
            let ab1 = c.add(a, bs[1])?;
            let ab2 = c.add(a, bs[2])?;
            c.emit(&mut out, c.add(a, bs[0])?, Param::S(c.prod(&[c.n(a, bs[0]), t, us[0]])))?;
            c.emit(
                &mut out,
                c.sum(&[a, bs[0], bs[1]])?,
                Param::S(c.prod(&[c.n(a, bs[1]), c.n(bs[0], ab1), t, us[0], us[1]])),
            )?;
            let a12 = c.sum(&[a, bs[1], bs[2]])?;
            c.emit(
                &mut out,
                c.sum(&[a, bs[0], bs[1], bs[2]])?,
                Param::S(c.prod(&[c.n(a, bs[2]), c.n(bs[0], ab2), c.n(bs[0], a12), t, us[0], us[1], us[2]])),
            )?;
            let a01 = c.sum(&[a, bs[0], bs[1]])?;
            c.emit(
                &mut out,
                c.add(a01, ab2)?,
                Param::S(c.prod(&[c.n(bs[0], ab1), c.n(a01, ab2), t, t, us[0], us[1], us[2]])),
            )?;
        }
        Tag::F => {
            let j = c.shift_for(a, b, 1)?;
            let bs = [c.rho(b, j), c.rho(b, j + 1), c.rho(b, j + 2)];
            let as_ = [a, c.rho(a, 1), c.rho(a, 2)];
            let t0 = scalar(t)?;
            let ts = [t0, c.th(t0, 1), c.th(t0, 2)];
            let u0 = c.th(scalar(u)?, j);
            let us = [u0, c.th(u0, 1), c.th(u0, 2)];
            let v1 = r.add(c.prod(&[c.n(as_[0], bs[1]), ts[0], us[1]]), c.prod(&[c.n(as_[1], bs[0]), ts[1], us[0]]));
            c.emit(&mut out, c.add(as_[0], bs[1])?, Param::S(v1))?;
            let a1b2 = c.add(as_[1], bs[2])?;
            let s2 = r.add(
                r.add(c.prod(&[ts[0], ts[1], us[2]]), c.prod(&[ts[1], ts[2], us[0]])),
                c.prod(&[ts[0], ts[2], us[1]]),
            );
            c.emit(&mut out, c.add(as_[0], a1b2)?, Param::S(c.prod(&[c.n(as_[0], a1b2), c.n(as_[1], bs[2]), s2])))?;
            let a0b2 = c.add(as_[0], bs[2])?;
            let s3 = r.add(
                r.add(c.prod(&[ts[0], us[1], us[2]]), c.prod(&[ts[1], us[0], us[2]])),
                c.prod(&[ts[2], us[0], us[1]]),
            );
            c.emit(&mut out, c.add(bs[1], a0b2)?, Param::S(c.prod(&[c.n(bs[1], a0b2), c.n(as_[0], bs[2]), s3])))?;
        }
        Tag::G => {
            let j = c.shift_for(a, b, 1)?;
            let bs = [c.rho(b, j), c.rho(b, j + 1)];
            let t0 = scalar(t)?;
            let ts = [t0, c.th(t0, 1), c.th(t0, 2)];
            let u0 = c.th(scalar(u)?, j);
            let us = [u0, c.th(u0, 1), c.th(u0, 2)];
            let s = r.add(r.add(r.mul(ts[0], us[1]), r.mul(ts[1], us[2])), r.mul(ts[2], us[0]));
            c.emit(&mut out, c.add(a, bs[1])?, Param::S(r.mul(c.n(a, bs[1]), s)))?;
        }
    }
    Ok(out)
}

fn inverse_x(ring: &Ring, l: &Letter<Param>) -> Letter<Param> {
    let p = match &l.p {
        Param::S(t) => Param::S(ring.neg(*t)),
        Param::P(q) => Param::P(aform::inv(ring, *q)),
        other => other.clone(),
    };
    Letter { kind: LetterKind::X, root: l.root, p }
}

/// `[x_[a](t), x_[b](u)]` as a product of `x` letters. Roots may be any
/// outer member of their class; parameters are read relative to them.
pub fn commutator_closed_form(
    basis: &SignedBasis,
    ring: &Ring,
    a: RootId,
    t: &Param,
    b: RootId,
    u: &Param,
) -> Result<CommutatorResult> {
    let folded = basis.folded();
    let (a, t) = canonical_x(folded, ring, a, t)?;
    let (b, u) = canonical_x(folded, ring, b, u)?;
    let (c1, c2) = (folded.class_of(a), folded.class_of(b));
    let pair_type = folded.pair_classify(c1, c2)?;
    if c1 == c2 {
        return Err(Error::Precondition("both letters lie in one class".into()));
    }
    let ctx = Ctx { basis, folded, ring };
    let factors = if pair_type.acute {
        Vec::new()
    } else if pair_type.swapped {
        let f = forward(&ctx, pair_type.tag, b, &u, a, &t)?;
        f.iter().rev().map(|l| inverse_x(ring, l)).collect()
    } else {
        forward(&ctx, pair_type.tag, a, &t, b, &u)?
    };
    Ok(CommutatorResult { pair_type, factors })
}

/// Matrix of `x_[a](t) x_[b](u) x_[a](t)^-1 x_[b](u)^-1`.
pub fn commutator_oracle(rep: &Rep, ring: &Arc<Ring>, a: RootId, t: &Param, b: RootId, u: &Param) -> Result<Mat> {
    evaluate(rep, ring, &Node::comm(Word::x(a, t.clone()), Word::x(b, u.clone())))
}

/// Closed form and oracle agree on one instance.
pub fn commutator_agrees(rep: &Rep, ring: &Arc<Ring>, a: RootId, t: &Param, b: RootId, u: &Param) -> Result<bool> {
    let cf = commutator_closed_form(rep.basis(), ring, a, t, b, u)?;
    Ok(evaluate(rep, ring, &cf.to_word())? == commutator_oracle(rep, ring, a, t, b, u)?)
}
