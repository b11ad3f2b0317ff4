use std::fmt;
use std::sync::Arc;

use super::{AForm, Elem, Ring};
use crate::error::{Error, Result};

/// A `th`-stable ideal with its elements enumerated.
#[derive(Clone)]
pub struct ThetaIdeal {
    ring: Arc<Ring>,
    gens: Vec<Elem>,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

impl fmt::Debug for ThetaIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThetaIdeal({})", self.describe())
    }
}

/// Which parameter set a root class uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// Fixed subring `R_th`.
    Fixed,
    /// The whole ring.
    Scalar,
    /// Pairs in `A(R)`.
    Pair,
}

/// A per-class parameter set cut out by an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    Scalars(Vec<Elem>),
    Pairs(Vec<AForm>),
}

impl Component {
    pub fn len(&self) -> usize {
        match self {
            Component::Scalars(v) => v.len(),
            Component::Pairs(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl ThetaIdeal {
    /// Smallest `th`-stable ideal containing `gens`.
    pub fn new(ring: &Arc<Ring>, gens: &[Elem]) -> ThetaIdeal {
        let mut closed: Vec<Elem> = Vec::new();
        for &g in gens {
            for k in 0..ring.theta_order() as i32 {
                let h = ring.theta_pow(g, k);
                if !closed.contains(&h) {
                    closed.push(h);
                }
            }
        }
        let mut products: Vec<Elem> = Vec::new();
        let mut seen = vec![false; ring.size()];
        for &g in &closed {
            for r in ring.elements() {
                let p = ring.mul(r, g);
                if !seen[p.index()] {
                    seen[p.index()] = true;
                    products.push(p);
                }
            }
        }
        let mut member = vec![false; ring.size()];
        member[0] = true;
        let mut elements = vec![Elem::ZERO];
        let mut i = 0;
        while i < elements.len() {
            let a = elements[i];
            for &p in &products {
                let s = ring.add(a, p);
                if !member[s.index()] {
                    member[s.index()] = true;
                    elements.push(s);
                }
            }
            i += 1;
        }
        elements.sort();
        ThetaIdeal { ring: ring.clone(), gens: gens.to_vec(), elements, member }
    }

    pub fn zero(ring: &Arc<Ring>) -> ThetaIdeal {
        ThetaIdeal::new(ring, &[])
    }

    pub fn whole(ring: &Arc<Ring>) -> ThetaIdeal {
        ThetaIdeal::new(ring, &[ring.one()])
    }

    /// Wraps an element set that must already be a `th`-stable ideal.
    pub fn from_elements(ring: &Arc<Ring>, elems: &[Elem]) -> Result<ThetaIdeal> {
        let mut member = vec![false; ring.size()];
        for &a in elems {
            member[a.index()] = true;
        }
        let gens = minimal_generators(ring, &member);
        let ideal = ThetaIdeal::new(ring, &gens);
        if ideal.member != member {
            return Err(Error::Precondition("element set is not a th-stable ideal".into()));
        }
        Ok(ideal)
    }

    /// Parses `ideal(<ring>; g1, g2, ...)`.
    pub fn parse(text: &str) -> Result<(Arc<Ring>, ThetaIdeal)> {
        let t = text.trim();
        let bad = |reason: &str| Error::Descriptor { input: text.to_string(), reason: reason.to_string() };
        let inner = t
            .strip_prefix("ideal(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected ideal(<ring>; g1, ...)"))?;
        let parts = split_top_level(inner, ';');
        if parts.len() != 2 {
            return Err(bad("expected exactly one top-level `;`"));
        }
        let ring = Ring::make(parts[0])?;
        let gens = split_top_level(parts[1], ',')
            .into_iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let ideal = ThetaIdeal::new(&ring, &gens);
        Ok((ring, ideal))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// A small generating set, chosen greedily in index order.
    pub fn reduced_generators(&self) -> Vec<Elem> {
        minimal_generators(&self.ring, &self.member)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.member[a.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.ring.size()
    }

    pub fn is_subset_of(&self, other: &ThetaIdeal) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn sum(&self, other: &ThetaIdeal) -> ThetaIdeal {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        ThetaIdeal::new(&self.ring, &gens)
    }

    pub fn intersection(&self, other: &ThetaIdeal) -> ThetaIdeal {
        let elems: Vec<Elem> = self.elements.iter().copied().filter(|&a| other.contains(a)).collect();
        ThetaIdeal::from_elements(&self.ring, &elems).expect("intersection of ideals is an ideal")
    }

    /// Whether every element lies in the Jacobson radical.
    pub fn in_radical(&self) -> bool {
        self.elements.iter().all(|&j| self.ring.is_unit(self.ring.add(self.ring.one(), j)))
    }

    /// `J_th = J` intersected with the fixed subring.
    pub fn fixed_part(&self) -> Vec<Elem> {
        self.elements.iter().copied().filter(|&a| self.ring.is_fixed(a)).collect()
    }

    /// `A(J)`: pairs of `A(R)` with both coordinates in `J`.
    pub fn aforms(&self) -> Vec<AForm> {
        let r = &self.ring;
        let mut out = Vec::new();
        for &t in &self.elements {
            let tt = r.mul(t, r.theta(t));
            for &u in &self.elements {
                if r.add(u, r.theta(u)) == tt {
                    out.push(AForm { t, u });
                }
            }
        }
        out
    }

    /// The parameter set `J_[a]` for a class with the given parameter kind.
    pub fn component(&self, kind: ParamKind) -> Component {
        match kind {
            ParamKind::Fixed => Component::Scalars(self.fixed_part()),
            ParamKind::Scalar => Component::Scalars(self.elements.clone()),
            ParamKind::Pair => Component::Pairs(self.aforms()),
        }
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.reduced_generators().iter().map(|&g| self.ring.format(g)).collect();
        format!("ideal({}; {})", self.ring.descriptor(), gens.join(", "))
    }
}

impl PartialEq for ThetaIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.id() == other.ring.id() && self.member == other.member
    }
}

impl Eq for ThetaIdeal {}

fn minimal_generators(ring: &Arc<Ring>, member: &[bool]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut current = ThetaIdeal::new(ring, &gens);
    for a in ring.elements() {
        if member[a.index()] && !current.contains(a) {
            gens.push(a);
            current = ThetaIdeal::new(ring, &gens);
        }
    }
    gens
}

/// Splits on `sep` outside of any brackets.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_ideal_in_dual_ring() {
        let r = Ring::make("dual(gf(9;frob);2)").unwrap();
        let j = ThetaIdeal::new(&r, &[r.epsilon().unwrap()]);
        assert_eq!(j.size(), 9);
        assert_eq!(j.fixed_part().len(), 3);
        assert!(j.in_radical());
        assert_eq!(j.component(ParamKind::Fixed).len(), 3);
        assert_eq!(j.component(ParamKind::Scalar).len(), 9);
        // e^2 = 0 so every (a e, b e) with b + th(b) = 0 qualifies
        assert_eq!(j.aforms().len(), 9 * 3);
    }

    #[test]
    fn trivial_ideals() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let z = ThetaIdeal::new(&r, &[r.zero()]);
        assert!(z.is_zero());
        assert_eq!(z.component(ParamKind::Pair), Component::Pairs(vec![AForm { t: r.zero(), u: r.zero() }]));
        let w = ThetaIdeal::new(&r, &[r.one()]);
        assert!(w.is_whole());
        assert_eq!(w.aforms().len(), 27);
        assert!(!w.in_radical());
    }

    #[test]
    fn theta_closure_is_taken() {
        let r = Ring::make("prod2(gf(3))").unwrap();
        let e1 = r.parse("(1,0)").unwrap();
        let j = ThetaIdeal::new(&r, &[e1]);
        assert!(j.is_whole());
    }

    #[test]
    fn parse_ideal_descriptor() {
        let (r, j) = ThetaIdeal::parse("ideal(dual(gf(9;frob);3); e^2)").unwrap();
        assert_eq!(r.size(), 729);
        assert_eq!(j.size(), 9);
        assert_eq!(j.reduced_generators().len(), 1);
        let (_, k) = ThetaIdeal::parse("ideal(prod2(gf(3)); (1,2), (0,0))").unwrap();
        assert!(k.is_whole());
    }

    #[test]
    fn sums_and_intersections() {
        let r = Ring::make("dual(gf(9;frob);3)").unwrap();
        let e = r.epsilon().unwrap();
        let i = ThetaIdeal::new(&r, &[r.mul(e, e)]);
        let j = ThetaIdeal::new(&r, &[e]);
        assert_eq!(i.sum(&j), j);
        assert_eq!(i.intersection(&j), i);
        assert!(i.is_subset_of(&j));
    }
}
