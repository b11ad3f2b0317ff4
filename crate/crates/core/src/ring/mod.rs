//! Finite commutative rings with an automorphism `th` of order 2 or 3.
//!
//! Every ring is fully tabulated: elements are dense indices into
//! addition, multiplication, negation, inverse and `th` tables.

mod build;
pub mod aform;
pub mod conditions;
pub mod expr;
pub mod ideal;
pub mod rk;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use aform::AForm;
pub use build::MAX_RING_SIZE;
pub use expr::Expr;
pub use ideal::{Component, ParamKind, ThetaIdeal};

const NO_INVERSE: u16 = u16::MAX;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// Identifier distinguishing ring instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingId(u64);

/// An element of some [`Ring`], as a dense index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub(crate) u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An element tagged with the ring it was produced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub ring: RingId,
    pub elem: Elem,
}

/// Structure of the element encoding, used for parsing and display.
#[derive(Debug)]
pub(crate) enum Layout {
    /// `Z/p`, element index is the residue.
    Prime,
    /// `GF(p^k)` as `F_p[x]/(f)`; index is `sum c_i p^i`.
    Ext { p: u32, k: u32, modulus: Vec<u32> },
    /// `B^m`; index is `sum a_i |B|^i`.
    Product { base: Arc<Ring>, m: usize },
    /// `B[e]/(e^m)`; index is `sum a_i |B|^i`.
    Dual { base: Arc<Ring>, m: usize },
    /// `P/J`; each coset is indexed by its smallest member.
    Quotient { parent: Arc<Ring>, reps: Vec<Elem>, coset: Vec<u16> },
}

pub struct Ring {
    id: RingId,
    descriptor: String,
    layout: Layout,
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    theta: Vec<u16>,
    inv: Vec<u16>,
    one: Elem,
    theta_order: u8,
    characteristic: u32,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, |R|={})", self.descriptor, self.n)
    }
}

impl Ring {
    /// Parses and validates a ring descriptor such as `gf(9;frob)`,
    /// `prod2(gf(3))` or `dual(gf(9;frob);2)`.
    ///
    /// The resulting `th` must have order 2 or 3, 2 must be a unit, and
    /// 3 must be a unit when `th` has order 3.
    pub fn make(descriptor: &str) -> Result<Arc<Ring>> {
        let ring = build::parse_descriptor(descriptor)?;
        ring.validate()?;
        Ok(ring)
    }

    /// Parses a descriptor without the twisted-ring checks.
    pub fn make_unchecked(descriptor: &str) -> Result<Arc<Ring>> {
        build::parse_descriptor(descriptor)
    }

    fn validate(&self) -> Result<()> {
        if self.theta_order != 2 && self.theta_order != 3 {
            return Err(Error::RingRejected(format!(
                "automorphism has order {}, need 2 or 3",
                self.theta_order
            )));
        }
        if !self.is_unit(self.from_int(2)) {
            return Err(Error::RingRejected("2 is not invertible".into()));
        }
        if self.theta_order == 3 && !self.is_unit(self.from_int(3)) {
            return Err(Error::RingRejected("3 is not invertible".into()));
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_tables(
        descriptor: String,
        layout: Layout,
        n: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        theta: Vec<u16>,
        one: Elem,
    ) -> Ring {
        let mut neg = vec![0u16; n];
        for a in 0..n {
            let row = &add[a * n..(a + 1) * n];
            neg[a] = row.iter().position(|&s| s == 0).expect("additive inverse") as u16;
        }
        let mut inv = vec![NO_INVERSE; n];
        for a in 0..n {
            if inv[a] != NO_INVERSE {
                continue;
            }
            let row = &mul[a * n..(a + 1) * n];
            if let Some(b) = row.iter().position(|&s| s == one.0) {
                inv[a] = b as u16;
                inv[b] = a as u16;
            }
        }
        let mut theta_order = 1u8;
        let mut cur: Vec<u16> = theta.clone();
        while cur.iter().enumerate().any(|(i, &v)| v as usize != i) {
            cur = cur.iter().map(|&v| theta[v as usize]).collect();
            theta_order += 1;
            assert!(theta_order < 64, "theta has unbounded order");
        }
        let mut characteristic = 1u32;
        let mut acc = one.0;
        while acc != 0 {
            acc = add[acc as usize * n + one.index()];
            characteristic += 1;
        }
        Ring {
            id: RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed)),
            descriptor,
            layout,
            n,
            add,
            mul,
            neg,
            theta,
            inv,
            one,
            theta_order,
            characteristic,
        }
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn theta_order(&self) -> u8 {
        self.theta_order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n).map(|i| Elem(i as u16))
    }

    /// Element with the given dense index.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.n {
            Ok(Elem(index as u16))
        } else {
            Err(Error::ElementParse {
                input: format!("#{index}"),
                reason: format!("index out of range for ring of size {}", self.n),
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn theta(&self, a: Elem) -> Elem {
        Elem(self.theta[a.index()])
    }

    /// `th^k(a)`, with `k` taken modulo the order of `th`.
    pub fn theta_pow(&self, a: Elem, k: i32) -> Elem {
        let k = k.rem_euclid(self.theta_order as i32);
        (0..k).fold(a, |x, _| self.theta(x))
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        match self.inv[a.index()] {
            NO_INVERSE => None,
            b => Some(Elem(b)),
        }
    }

    pub fn try_inv(&self, a: Elem) -> Result<Elem> {
        self.inv(a).ok_or_else(|| Error::NotUnit(self.format(a)))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv[a.index()] != NO_INVERSE
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.try_inv(b)?))
    }

    pub fn from_int(&self, k: i64) -> Elem {
        let c = self.characteristic as i64;
        let k = k.rem_euclid(c);
        let mut acc = Elem::ZERO;
        for _ in 0..k {
            acc = self.add(acc, self.one);
        }
        acc
    }

    /// `a^k`, negative `k` requires a unit.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        let base = if k < 0 { self.try_inv(a)? } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.one;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Product of an element with a small integer.
    pub fn scale(&self, k: i64, a: Elem) -> Elem {
        self.mul(self.from_int(k), a)
    }

    pub fn is_fixed(&self, a: Elem) -> bool {
        self.theta(a) == a
    }

    /// The fixed subring `R_th`.
    pub fn fixed_subring(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_fixed(a)).collect()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn fixed_units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_fixed(a) && self.is_unit(a)).collect()
    }

    pub fn tag(&self, elem: Elem) -> Scalar {
        Scalar { ring: self.id, elem }
    }

    /// Checks that a tagged scalar comes from this ring.
    pub fn untag(&self, s: Scalar) -> Result<Elem> {
        if s.ring == self.id {
            Ok(s.elem)
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Parses an element expression, e.g. `2x+1`, `(1,2)`, `1+e`, `1/2`.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let e = Expr::parse(text)?;
        e.eval(self, &|_| None)
    }

    /// Canonical text form; `parse(format(a)) == a`.
    pub fn format(&self, a: Elem) -> String {
        build::format_elem(self, a)
    }

    /// The adjoined generator `x` of the innermost extension field.
    pub fn generator_x(&self) -> Option<Elem> {
        match &self.layout {
            Layout::Prime => None,
            Layout::Ext { p, .. } => Some(Elem(*p as u16)),
            Layout::Product { base, m } => base.generator_x().map(|g| self.diagonal(base, *m, g)),
            Layout::Dual { base, .. } => base.generator_x().map(|g| Elem(g.0)),
            Layout::Quotient { parent, coset, .. } => {
                parent.generator_x().map(|g| Elem(coset[g.index()]))
            }
        }
    }

    /// The nilpotent `e` of the outermost truncated polynomial layer.
    pub fn epsilon(&self) -> Option<Elem> {
        match &self.layout {
            Layout::Dual { base, m } if *m > 1 => Some(Elem((base.one().index() * base.size()) as u16)),
            Layout::Dual { .. } => Some(Elem::ZERO),
            Layout::Product { base, m } => base.epsilon().map(|g| self.diagonal(base, *m, g)),
            Layout::Quotient { parent, coset, .. } => {
                parent.epsilon().map(|g| Elem(coset[g.index()]))
            }
            _ => None,
        }
    }

    fn diagonal(&self, base: &Ring, m: usize, g: Elem) -> Elem {
        let nb = base.size();
        let mut idx = 0usize;
        for _ in 0..m {
            idx = idx * nb + g.index();
        }
        Elem(idx as u16)
    }

    /// Builds an element of a product ring from its components.
    pub fn from_components(&self, comps: &[Elem]) -> Result<Elem> {
        match &self.layout {
            Layout::Product { base, m } if comps.len() == *m => {
                let nb = base.size();
                let mut idx = 0usize;
                for c in comps.iter().rev() {
                    idx = idx * nb + c.index();
                }
                Ok(Elem(idx as u16))
            }
            _ => Err(Error::ElementParse {
                input: format!("{comps:?}"),
                reason: "tuple does not match a product ring layer".into(),
            }),
        }
    }

    /// The ring of a product's components, or the coefficient ring of a
    /// truncated polynomial ring.
    pub fn base_ring(&self) -> Option<&Arc<Ring>> {
        match &self.layout {
            Layout::Product { base, .. } | Layout::Dual { base, .. } => Some(base),
            Layout::Quotient { parent, .. } => Some(parent),
            _ => None,
        }
    }

    /// Components of a product ring element.
    pub fn components(&self, a: Elem) -> Option<Vec<Elem>> {
        match &self.layout {
            Layout::Product { base, m } => {
                let nb = base.size();
                let mut idx = a.index();
                let mut out = Vec::with_capacity(*m);
                for _ in 0..*m {
                    out.push(Elem((idx % nb) as u16));
                    idx /= nb;
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Modulus of an extension field layer, lowest coefficient first.
    pub fn modulus(&self) -> Option<Vec<u32>> {
        match &self.layout {
            Layout::Ext { modulus, .. } => Some(modulus.clone()),
            Layout::Product { base, .. } | Layout::Dual { base, .. } => base.modulus(),
            Layout::Quotient { parent, .. } => parent.modulus(),
            Layout::Prime => None,
        }
    }

    /// The quotient `R/J` and the reduction map as an index table.
    pub fn quotient(self: &Arc<Self>, ideal: &ThetaIdeal) -> Result<(Arc<Ring>, Vec<Elem>)> {
        build::quotient(self, ideal)
    }

    pub(crate) fn layout(&self) -> &Layout {
        &self.layout
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Ring {}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_theta_laws(r: &Ring) {
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(r.theta(r.add(a, b)), r.add(r.theta(a), r.theta(b)));
                assert_eq!(r.theta(r.mul(a, b)), r.mul(r.theta(a), r.theta(b)));
            }
        }
        assert_eq!(r.theta(r.one()), r.one());
        for a in r.elements() {
            assert_eq!(r.theta_pow(a, r.theta_order() as i32), a);
        }
    }

    #[test]
    fn gf9_is_field_with_order_two_frobenius() {
        let r = Ring::make("gf(9;frob)").unwrap();
        assert_eq!(r.size(), 9);
        assert_eq!(r.theta_order(), 2);
        assert_eq!(r.characteristic(), 3);
        assert_eq!(r.units().len(), 8);
        assert_eq!(r.fixed_subring().len(), 3);
        for a in r.elements() {
            assert_eq!(r.theta(a), r.pow(a, 3).unwrap());
        }
        check_theta_laws(&r);
    }

    #[test]
    fn swap_product_fixed_diagonal() {
        let r = Ring::make("prod2(gf(3))").unwrap();
        assert_eq!(r.size(), 9);
        assert_eq!(r.theta_order(), 2);
        let fixed = r.fixed_subring();
        assert_eq!(fixed.len(), 3);
        for a in fixed {
            let c = r.components(a).unwrap();
            assert_eq!(c[0], c[1]);
        }
        let a = r.parse("(1,2)").unwrap();
        assert_eq!(r.format(r.theta(a)), "(2,1)");
        check_theta_laws(&r);
    }

    #[test]
    fn gf343_order_three() {
        let r = Ring::make("gf(343;frob)").unwrap();
        assert_eq!(r.theta_order(), 3);
        assert_eq!(r.fixed_subring().len(), 7);
        assert_eq!(r.units().len(), 342);
    }

    #[test]
    fn dual_ring_units_and_nilpotent() {
        let r = Ring::make("dual(gf(9;frob);2)").unwrap();
        assert_eq!(r.size(), 81);
        let e = r.epsilon().unwrap();
        assert_eq!(r.mul(e, e), r.zero());
        assert!(!r.is_unit(e));
        assert!(r.is_unit(r.add(r.one(), e)));
        assert_eq!(r.units().len(), 72);
        assert_eq!(r.theta(e), e);
        check_theta_laws(&r);
    }

    #[test]
    fn rejections() {
        assert!(matches!(Ring::make("gf(3)"), Err(Error::RingRejected(_))));
        assert!(matches!(Ring::make("gf(4;frob)"), Err(Error::RingRejected(_))));
        assert!(matches!(Ring::make("gf(81;frob)"), Err(Error::RingRejected(_))));
        assert!(matches!(Ring::make("prod3(gf(3))"), Err(Error::RingRejected(_))));
        assert!(matches!(Ring::make("gf(10)"), Err(Error::Descriptor { .. })));
        assert!(matches!(Ring::make("foo"), Err(Error::Descriptor { .. })));
        assert!(Ring::make("prod3(gf(5))").is_ok());
    }

    #[test]
    fn cross_ring_tags_rejected() {
        let a = Ring::make("gf(9;frob)").unwrap();
        let b = Ring::make("gf(9;frob)").unwrap();
        let s = a.tag(a.one());
        assert_eq!(a.untag(s), Ok(a.one()));
        assert_eq!(b.untag(s), Err(Error::RingMismatch));
    }

    #[test]
    fn format_parse_round_trip() {
        for d in ["gf(9;frob)", "prod2(gf(3))", "dual(gf(9;frob);3)", "gf(343;frob)", "prod3(gf(7))"] {
            let r = Ring::make(d).unwrap();
            for a in r.elements() {
                let s = r.format(a);
                assert_eq!(r.parse(&s).unwrap(), a, "{d}: {s}");
            }
        }
    }
}
