//! The group `A(R) = {(t, u) : t th(t) = u + th(u)}` with
//! `(t, u) + (t', u') = (t + t', u + u' + th(t) t')`.

use serde::{Deserialize, Serialize};

use super::{Elem, Ring, ThetaIdeal};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AForm {
    pub t: Elem,
    pub u: Elem,
}

impl AForm {
    pub const ZERO: AForm = AForm { t: Elem::ZERO, u: Elem::ZERO };

    /// Checks the defining identity.
    pub fn new(r: &Ring, t: Elem, u: Elem) -> Result<AForm> {
        if is_aform(r, t, u) {
            Ok(AForm { t, u })
        } else {
            Err(Error::NotAForm(r.format(t), r.format(u)))
        }
    }

    /// The pair `(t, t th(t) / 2)`.
    pub fn standard(r: &Ring, t: Elem) -> AForm {
        let half = r.inv(r.from_int(2)).expect("2 is a unit");
        AForm { t, u: r.mul(half, r.mul(t, r.theta(t))) }
    }

    pub fn is_zero(self) -> bool {
        self == AForm::ZERO
    }
}

pub fn is_aform(r: &Ring, t: Elem, u: Elem) -> bool {
    r.mul(t, r.theta(t)) == r.add(u, r.theta(u))
}

pub fn op(r: &Ring, p: AForm, q: AForm) -> AForm {
    AForm { t: r.add(p.t, q.t), u: r.add(r.add(p.u, q.u), r.mul(r.theta(p.t), q.t)) }
}

pub fn inv(r: &Ring, p: AForm) -> AForm {
    AForm { t: r.neg(p.t), u: r.theta(p.u) }
}

/// `s . (t, u) = (s t, s th(s) u)`.
pub fn act(r: &Ring, s: Elem, p: AForm) -> AForm {
    AForm { t: r.mul(s, p.t), u: r.mul(r.mul(s, r.theta(s)), p.u) }
}

pub fn sum(r: &Ring, items: &[AForm]) -> AForm {
    items.iter().fold(AForm::ZERO, |acc, &p| op(r, acc, p))
}

/// All of `A(R)`.
pub fn all(r: &Ring) -> Vec<AForm> {
    let mut out = Vec::new();
    for t in r.elements() {
        let tt = r.mul(t, r.theta(t));
        for u in r.elements() {
            if r.add(u, r.theta(u)) == tt {
                out.push(AForm { t, u });
            }
        }
    }
    out
}

/// Pairs whose second coordinate is a unit.
pub fn units(r: &Ring) -> Vec<AForm> {
    all(r).into_iter().filter(|p| r.is_unit(p.u)).collect()
}

/// Splitting `p = h + k` with `h = (0, (u - th(u))/2)` central and
/// `k = (t, t th(t)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkDecomposition {
    pub h: AForm,
    pub k: AForm,
    /// When the ideal is the whole ring, `h` as `a^-1 + (1, 1/2) + b` with
    /// `a, b` of the standard shape `(r, r th(r)/2)`.
    pub h_factors: Option<[AForm; 3]>,
}

pub fn decompose_hk(r: &Ring, p: AForm, ideal: &ThetaIdeal) -> Result<HkDecomposition> {
    if !is_aform(r, p.t, p.u) {
        return Err(Error::NotAForm(r.format(p.t), r.format(p.u)));
    }
    if !ideal.contains(p.t) || !ideal.contains(p.u) {
        return Err(Error::Precondition("pair does not lie in A(J)".into()));
    }
    let half = r.try_inv(r.from_int(2))?;
    let h = AForm { t: r.zero(), u: r.mul(half, r.sub(p.u, r.theta(p.u))) };
    let k = AForm::standard(r, p.t);
    let h_factors = ideal.is_whole().then(|| {
        let g = p.u;
        let a = AForm::standard(r, r.add(r.one(), g));
        [inv(r, a), AForm { t: r.one(), u: half }, AForm::standard(r, g)]
    });
    Ok(HkDecomposition { h, k, h_factors })
}

/// Splitting of a pair over `I + J` into a pair over `I`, a pair over `J`
/// and a central correction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSum {
    pub over_i: AForm,
    pub over_j: AForm,
    pub central: AForm,
}

pub fn split_sum(r: &Ring, p: AForm, i: &ThetaIdeal, j: &ThetaIdeal) -> Result<SplitSum> {
    if !is_aform(r, p.t, p.u) {
        return Err(Error::NotAForm(r.format(p.t), r.format(p.u)));
    }
    let split = |x: Elem| -> Option<(Elem, Elem)> {
        i.elements().iter().find_map(|&a| {
            let b = r.sub(x, a);
            j.contains(b).then_some((a, b))
        })
    };
    let not_in = || Error::Precondition("pair does not lie in A(I + J)".into());
    let (a1, b1) = split(p.t).ok_or_else(not_in)?;
    let (a2, b2) = split(p.u).ok_or_else(not_in)?;
    let half = r.try_inv(r.from_int(2))?;
    let piece = |x1: Elem, x2: Elem| AForm {
        t: x1,
        u: r.mul(half, r.add(r.mul(x1, r.theta(x1)), r.sub(x2, r.theta(x2)))),
    };
    let over_i = piece(a1, a2);
    let over_j = piece(b1, b2);
    let central = AForm {
        t: r.zero(),
        u: r.mul(half, r.sub(r.mul(a1, r.theta(b1)), r.mul(r.theta(a1), b1))),
    };
    Ok(SplitSum { over_i, over_j, central })
}

/// Given `c = r z + r' th(z)` fixed by `th` (order 2), returns `t` with
/// `c = t z + th(t z)`.
pub fn symmetrize2(r: &Ring, z: Elem, c1: Elem, c2: Elem) -> Result<Elem> {
    let c = r.add(r.mul(c1, z), r.mul(c2, r.theta(z)));
    if !r.is_fixed(c) {
        return Err(Error::Precondition("combination is not th-fixed".into()));
    }
    let half = r.try_inv(r.from_int(2))?;
    Ok(r.mul(half, r.add(c1, r.theta(c2))))
}

/// Order-3 analogue: `c = r z + r' th(z) + r'' th2(z)` fixed by `th`
/// yields `t` with `c = t z + th(t z) + th2(t z)`.
pub fn symmetrize3(r: &Ring, z: Elem, c1: Elem, c2: Elem, c3: Elem) -> Result<Elem> {
    let c = r.add(
        r.add(r.mul(c1, z), r.mul(c2, r.theta(z))),
        r.mul(c3, r.theta_pow(z, 2)),
    );
    if !r.is_fixed(c) {
        return Err(Error::Precondition("combination is not th-fixed".into()));
    }
    let third = r.try_inv(r.from_int(3))?;
    let s = r.add(r.add(c1, r.theta(c3)), r.theta_pow(c2, 2));
    Ok(r.mul(third, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn f9() -> Arc<Ring> {
        Ring::make("gf(9;frob)").unwrap()
    }

    #[test]
    fn group_axioms_exhaustive_on_f9() {
        let r = f9();
        let a = all(&r);
        assert_eq!(a.len(), 27);
        for &p in &a {
            assert_eq!(op(&r, AForm::ZERO, p), p);
            assert_eq!(op(&r, p, inv(&r, p)), AForm::ZERO);
            assert_eq!(op(&r, inv(&r, p), p), AForm::ZERO);
            for &q in &a {
                let pq = op(&r, p, q);
                assert!(is_aform(&r, pq.t, pq.u));
                for &s in &a {
                    assert_eq!(op(&r, pq, s), op(&r, p, op(&r, q, s)));
                }
            }
        }
    }

    #[test]
    fn doubling_example() {
        // (1,2) is a pair since 1 = 2 + 2 in F_3
        let r = f9();
        let p = AForm::new(&r, r.one(), r.from_int(2)).unwrap();
        assert_eq!(op(&r, p, p), AForm { t: r.from_int(2), u: r.from_int(2) });
    }

    #[test]
    fn action_is_monoid_action() {
        let r = f9();
        for p in all(&r) {
            assert_eq!(act(&r, r.one(), p), p);
            for s in r.elements() {
                let q = act(&r, s, p);
                assert!(is_aform(&r, q.t, q.u));
                for s2 in r.elements() {
                    assert_eq!(act(&r, r.mul(s, s2), p), act(&r, s, act(&r, s2, p)));
                }
            }
        }
    }

    #[test]
    fn hk_recombines() {
        for d in ["gf(9;frob)", "dual(gf(9;frob);2)"] {
            let r = Ring::make(d).unwrap();
            let whole = ThetaIdeal::whole(&r);
            for p in all(&r) {
                let dec = decompose_hk(&r, p, &whole).unwrap();
                assert_eq!(dec.h.t, r.zero());
                assert_eq!(op(&r, dec.h, dec.k), p);
                assert_eq!(op(&r, dec.k, dec.h), p);
                let [a, b, c] = dec.h_factors.unwrap();
                assert_eq!(sum(&r, &[a, b, c]), dec.h);
            }
        }
    }

    #[test]
    fn split_sum_recombines() {
        let r = Ring::make("dual(gf(9;frob);3)").unwrap();
        let e = r.epsilon().unwrap();
        let i = ThetaIdeal::new(&r, &[r.mul(e, e)]);
        let j = ThetaIdeal::new(&r, &[e]);
        let ij = i.sum(&j);
        for p in ij.aforms() {
            let s = split_sum(&r, p, &i, &j).unwrap();
            assert!(i.contains(s.over_i.t) && i.contains(s.over_i.u));
            assert!(j.contains(s.over_j.t) && j.contains(s.over_j.u));
            assert_eq!(s.central.t, r.zero());
            assert_eq!(sum(&r, &[s.over_i, s.over_j, s.central]), p);
        }
        let zero = ThetaIdeal::zero(&r);
        let p = all(&r)[5];
        let s = split_sum(&r, p, &zero, &ThetaIdeal::whole(&r)).unwrap();
        assert!(s.over_i.is_zero());
    }

    #[test]
    fn symmetrize_identities() {
        let r = f9();
        for z in r.elements() {
            for c1 in r.elements() {
                for c2 in r.elements() {
                    if let Ok(t) = symmetrize2(&r, z, c1, c2) {
                        let lhs = r.add(r.mul(c1, z), r.mul(c2, r.theta(z)));
                        let tz = r.mul(t, z);
                        assert_eq!(lhs, r.add(tz, r.theta(tz)));
                    }
                }
            }
        }
        let r = Ring::make("gf(343;frob)").unwrap();
        let x = r.generator_x().unwrap();
        let mut hits = 0;
        for z in [r.one(), x, r.add(x, r.one())] {
            for k in 0..200usize {
                let c1 = r.elem((k * 37) % 343).unwrap();
                let c2 = r.elem((k * 91 + 5) % 343).unwrap();
                // choose c3 so the combination is fixed: take c = s + th(s) + th2(s)
                let s = r.mul(c1, z);
                let tr = r.add(r.add(s, r.theta(s)), r.theta_pow(s, 2));
                let rest = r.sub(tr, r.add(r.mul(c1, z), r.mul(c2, r.theta(z))));
                let c3 = r.div(rest, r.theta_pow(z, 2)).unwrap();
                let t = symmetrize3(&r, z, c1, c2, c3).unwrap();
                let tz = r.mul(t, z);
                let got = r.add(r.add(tz, r.theta(tz)), r.theta_pow(tz, 2));
                assert_eq!(got, tr);
                hits += 1;
            }
        }
        assert_eq!(hits, 600);
    }
}
