//! Folding a simply-laced root system along a diagram automorphism into the
//! class system `Phi_rho`, and the interaction types of class pairs.
//!
//! Classes are vectors in simple-root coordinates: the class of `a` is the
//! orbit sum `a + rho(a) (+ rho^2(a))` of a non-fixed-sum member. Sums of
//! classes are tested by vector lookup, so `Phi_rho` membership of
//! `i[a] + j[b]` is exact integer arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{GraphAut, Kind, RootId, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassType {
    A1,
    A1x2,
    A1x3,
    A2,
}

impl ClassType {
    pub fn label(self) -> &'static str {
        match self {
            ClassType::A1 => "A1",
            ClassType::A1x2 => "A1^2",
            ClassType::A1x3 => "A1^3",
            ClassType::A2 => "A2",
        }
    }
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Index into [`Folded::classes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassId(pub u16);

impl ClassId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct RootClass {
    pub id: ClassId,
    pub kind: ClassType,
    /// Ordered orbit: `[b, rho b, rho^2 b]` for `A1^k`, `[b, rho b, b + rho b]`
    /// for `A2`. `orbit[0]` is the base used by generator letters.
    pub orbit: Vec<RootId>,
    /// Minimal root of the class.
    pub rep: RootId,
    pub positive: bool,
    /// Height in the folded system.
    pub height: i32,
}

impl RootClass {
    pub fn base(&self) -> RootId {
        self.orbit[0]
    }

    /// Members that occur as letters `x_a(.)` with a class parameter image,
    /// i.e. the orbit without the middle root of an `A2` class.
    pub fn outer(&self) -> &[RootId] {
        match self.kind {
            ClassType::A2 => &self.orbit[..2],
            _ => &self.orbit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    A1,
    A2i,
    A2ii,
    Bi,
    Bii,
    Ci,
    Cii,
    Di,
    Dii,
    E,
    F,
    G,
}

impl Tag {
    pub const ALL: [Tag; 12] =
        [Tag::A1, Tag::A2i, Tag::A2ii, Tag::Bi, Tag::Bii, Tag::Ci, Tag::Cii, Tag::Di, Tag::Dii, Tag::E, Tag::F, Tag::G];

    pub fn label(self) -> &'static str {
        match self {
            Tag::A1 => "a1",
            Tag::A2i => "a2-i",
            Tag::A2ii => "a2-ii",
            Tag::Bi => "b-i",
            Tag::Bii => "b-ii",
            Tag::Ci => "c-i",
            Tag::Cii => "c-ii",
            Tag::Di => "d-i",
            Tag::Dii => "d-ii",
            Tag::E => "e",
            Tag::F => "f",
            Tag::G => "g",
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        Tag::ALL.iter().copied().find(|t| t.label() == s)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Interaction type of an ordered pair of classes.
///
/// `alpha` and `beta` are the bases in the orientation the tag is stated
/// for: the long class first in `d`/`e`, and `beta` replaced by the base of
/// the negated class when only the difference lies in `Phi_rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairType {
    pub tag: Tag,
    /// The tag is stated for `(c2, c1)`.
    pub swapped: bool,
    /// `[c1] + [c2]` is not in `Phi_rho` but the difference is; the tag is
    /// that of `(c1, -c2)`.
    pub acute: bool,
    pub alpha: RootId,
    pub beta: RootId,
    /// `(i, j)` with `rho^i(alpha) + rho^j(beta)` a root.
    pub sums: Vec<(u8, u8)>,
}

impl PairType {
    pub fn has_sum(&self, i: u8, j: u8) -> bool {
        self.sums.contains(&(i, j))
    }
}

pub struct Folded {
    sys: Arc<RootSystem>,
    aut: GraphAut,
    classes: Vec<RootClass>,
    class_of: Vec<ClassId>,
    vectors: Vec<Vec<i32>>,
    lookup: HashMap<Vec<i32>, ClassId>,
    norms: Vec<i32>,
    type_name: String,
    tilde_name: String,
    n_positive: usize,
}

impl fmt::Debug for Folded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Folded({} o{} -> {})", self.sys.name(), self.aut.order(), self.type_name)
    }
}

impl Folded {
    pub fn new(sys: Arc<RootSystem>, aut: GraphAut) -> Result<Folded> {
        let o = aut.order() as i32;
        let rank = sys.rank();
        let orbit_sum = |r: RootId| -> Vec<i32> {
            let mut v = vec![0i32; rank];
            for k in 0..o {
                for (x, &c) in v.iter_mut().zip(sys.coords(aut.apply_pow(r, k))) {
                    *x += c as i32;
                }
            }
            v
        };

        let mut seen = vec![false; sys.len()];
        // (kind, orbit, rep) in root order of the representative
        let mut raw: Vec<(ClassType, Vec<RootId>, RootId)> = Vec::new();
        for r in sys.roots() {
            if seen[r.index()] {
                continue;
            }
            let mut orb = vec![r];
            let mut x = aut.apply(r);
            while x != r {
                orb.push(x);
                x = aut.apply(x);
            }
            let (kind, members) = match orb.len() {
                1 => {
                    // a fixed root may be the middle of an A2 class
                    if let Some(pair) = sys.roots().find(|&a| {
                        aut.apply(a) != a && aut.order() == 2 && sys.add(a, aut.apply(a)) == Some(r)
                    }) {
                        let (a, b) = (pair.min(aut.apply(pair)), pair.max(aut.apply(pair)));
                        (ClassType::A2, vec![a, b, r])
                    } else {
                        (ClassType::A1, vec![r])
                    }
                }
                2 => match sys.add(orb[0], orb[1]) {
                    Some(m) => {
                        let (a, b) = (orb[0].min(orb[1]), orb[0].max(orb[1]));
                        (ClassType::A2, vec![a, b, m])
                    }
                    None => (ClassType::A1x2, orb.clone()),
                },
                3 => (ClassType::A1x3, orb.clone()),
                _ => return Err(Error::BadAutomorphism("orbit of unexpected length".into())),
            };
            for &m in &members {
                seen[m.index()] = true;
            }
            let rep = *members.iter().min().expect("nonempty");
            let orbit = match kind {
                ClassType::A2 => {
                    let (a, b, m) = (members[0], members[1], members[2]);
                    if sys.is_positive(a) {
                        vec![a, b, m]
                    } else {
                        // negative A2 class: {-rho(b0), -b0, ..} with b0 the positive base
                        let b0 = sys.neg(b).min(sys.neg(a));
                        let first = sys.neg(aut.apply(b0));
                        vec![first, aut.apply(first), m]
                    }
                }
                _ => {
                    let mut v = vec![rep];
                    for k in 1..members.len() as i32 {
                        v.push(aut.apply_pow(rep, k));
                    }
                    v
                }
            };
            raw.push((kind, orbit, rep));
        }

        // simple classes and folded height
        let simple_classes: Vec<usize> =
            (0..rank).filter(|&i| (0..rank).all(|j| j >= i || !orbit_contains(&aut, j, i))).collect();
        let simple_vecs: Vec<(usize, i32)> = simple_classes
            .iter()
            .map(|&i| {
                let sr = sys.simple_roots()[i];
                let (_, orbit, _) = raw.iter().find(|(_, o, _)| o.contains(&sr)).expect("every root has a class");
                (i, orbit_sum(orbit[0])[i])
            })
            .collect();

        let mut built: Vec<(i32, RootId, ClassType, Vec<RootId>, bool)> = raw
            .into_iter()
            .map(|(kind, orbit, rep)| {
                let v = orbit_sum(orbit[0]);
                let h: i32 = simple_vecs.iter().map(|&(i, d)| v[i] / d).sum();
                (h, rep, kind, orbit, sys.is_positive(rep))
            })
            .collect();
        // positive classes by increasing height, then negatives by decreasing height
        built.sort_by_key(|(h, rep, _, _, pos)| (!*pos, if *pos { *h } else { -*h }, *rep));
        let n_positive = built.iter().filter(|b| b.4).count();

        let mut classes = Vec::new();
        let mut class_of = vec![ClassId(0); sys.len()];
        let mut vectors = Vec::new();
        let mut lookup = HashMap::new();
        for (idx, (h, rep, kind, orbit, pos)) in built.into_iter().enumerate() {
            let id = ClassId(idx as u16);
            for &m in &orbit {
                class_of[m.index()] = id;
            }
            let v = orbit_sum(orbit[0]);
            lookup.insert(v.clone(), id);
            vectors.push(v);
            classes.push(RootClass { id, kind, orbit, rep, positive: pos, height: h });
        }
        let cartan = sys.cartan();
        let norms = vectors
            .iter()
            .map(|v| {
                let mut s = 0;
                for i in 0..rank {
                    for j in 0..rank {
                        s += v[i] * cartan[i][j] * v[j];
                    }
                }
                s
            })
            .collect();

        let (type_name, tilde_name) = folded_names(&sys, aut.order());
        Ok(Folded { sys, aut, classes, class_of, vectors, lookup, norms, type_name, tilde_name, n_positive })
    }

    pub fn parse(system: &str, order: &str) -> Result<Folded> {
        let sys = Arc::new(RootSystem::parse(system)?);
        let aut = GraphAut::parse(&sys, order)?;
        Folded::new(sys, aut)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn aut(&self) -> &GraphAut {
        &self.aut
    }

    pub fn order(&self) -> u8 {
        self.aut.order()
    }

    /// Folded type, e.g. `C2`, `B2`, `G2`.
    pub fn type_name(&self) -> &str {
        &self.type_name
    }

    /// Type of the possibly non-reduced system (`BC_n` for `A_{2n}`).
    pub fn tilde_name(&self) -> &str {
        &self.tilde_name
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.aut.order(), self.sys.name())
    }

    pub fn classes(&self) -> &[RootClass] {
        &self.classes
    }

    pub fn class(&self, c: ClassId) -> &RootClass {
        &self.classes[c.index()]
    }

    /// Positive classes in increasing (regular) order.
    pub fn positive_classes(&self) -> &[RootClass] {
        &self.classes[..self.n_positive]
    }

    /// Negative classes, by increasing absolute height.
    pub fn negative_classes(&self) -> &[RootClass] {
        &self.classes[self.n_positive..]
    }

    pub fn class_of(&self, r: RootId) -> ClassId {
        self.class_of[r.index()]
    }

    pub fn vector(&self, c: ClassId) -> &[i32] {
        &self.vectors[c.index()]
    }

    pub fn is_long(&self, c: ClassId) -> bool {
        let max = *self.norms.iter().max().expect("nonempty");
        self.norms[c.index()] == max
    }

    /// Class types of long and short classes (`None` when all have one length).
    pub fn length_types(&self) -> (ClassType, Option<ClassType>) {
        let max = *self.norms.iter().max().expect("nonempty");
        let min = *self.norms.iter().min().expect("nonempty");
        let of = |n: i32| self.classes[self.norms.iter().position(|&x| x == n).expect("present")].kind;
        (of(max), (min != max).then(|| of(min)))
    }

    pub fn neg(&self, c: ClassId) -> ClassId {
        self.class_of(self.sys.neg(self.class(c).rep))
    }

    /// Base of `-[a]` for a letter based at `b`: `-b` for `A1^k`, `-rho(b)`
    /// for `A2`.
    pub fn neg_base(&self, b: RootId) -> RootId {
        match self.class(self.class_of(b)).kind {
            ClassType::A2 => self.sys.neg(self.aut.apply(b)),
            _ => self.sys.neg(b),
        }
    }

    /// Number of `rho` steps from the canonical base of the class of `b` to
    /// `b` (`b` must be an outer member).
    pub fn base_shift(&self, b: RootId) -> Result<i32> {
        let c = self.class(self.class_of(b));
        let o = self.aut.order() as i32;
        (0..o)
            .find(|&k| self.aut.apply_pow(c.base(), k) == b)
            .ok_or_else(|| Error::Precondition(format!("{} is the middle root of an A2 class", self.sys.format(b))))
    }

    /// The reflection `s_[a]` of the class based at `a`, applied to a root.
    pub fn class_reflect(&self, a: RootId, x: RootId) -> RootId {
        let sys = &self.sys;
        let c = self.class(self.class_of(a));
        match c.kind {
            ClassType::A2 => sys.reflect(c.orbit[2], x),
            _ => c.orbit.iter().fold(x, |y, &m| sys.reflect(m, y)),
        }
    }

    /// The class of `i[c1] + j[c2]` if it lies in `Phi_rho`.
    pub fn folded_sum(&self, c1: ClassId, c2: ClassId, i: i32, j: i32) -> Option<ClassId> {
        let v: Vec<i32> = self.vector(c1).iter().zip(self.vector(c2)).map(|(a, b)| i * a + j * b).collect();
        self.lookup.get(&v).copied()
    }

    /// The class `(c1 + c2) / 2` if it exists.
    pub fn half_sum(&self, c1: ClassId, c2: ClassId) -> Option<ClassId> {
        let v: Vec<i32> = self.vector(c1).iter().zip(self.vector(c2)).map(|(a, b)| a + b).collect();
        if v.iter().any(|x| x % 2 != 0) {
            return None;
        }
        let h: Vec<i32> = v.iter().map(|x| x / 2).collect();
        self.lookup.get(&h).copied()
    }

    pub fn proportional(&self, c1: ClassId, c2: ClassId) -> bool {
        c1 == c2 || c1 == self.neg(c2)
    }

    fn in_phi(&self, c1: ClassId, c2: ClassId, i: i32, j: i32) -> bool {
        self.folded_sum(c1, c2, i, j).is_some()
    }

    /// Classifies the ordered pair `(c1, c2)`.
    pub fn pair_classify(&self, c1: ClassId, c2: ClassId) -> Result<PairType> {
        if self.proportional(c1, c2) {
            return Err(Error::Proportional(format!(
                "{} and {}",
                self.sys.format(self.class(c1).rep),
                self.sys.format(self.class(c2).rep)
            )));
        }
        let sum = self.in_phi(c1, c2, 1, 1);
        let diff = self.in_phi(c1, c2, 1, -1);
        let (k1, k2) = (self.class(c1).kind, self.class(c2).kind);
        if !sum && !diff {
            let half = self.half_sum(c1, c2).map(|h| self.class(h).kind);
            let tag = match (k1, k2, half) {
                (ClassType::A1, ClassType::A1, Some(ClassType::A1x2)) => Tag::A2i,
                (ClassType::A1x2, ClassType::A1x2, Some(ClassType::A2)) => Tag::A2ii,
                _ => Tag::A1,
            };
            return Ok(self.finish(tag, false, false, self.class(c1).base(), self.class(c2).base()));
        }
        if !sum {
            let nb = self.neg_base(self.class(c2).base());
            let mut p = self.pair_classify(c1, self.neg(c2))?;
            p.acute = true;
            if !p.swapped {
                p.beta = nb;
            } else {
                p.alpha = nb;
            }
            let fixed = self.finish(p.tag, p.swapped, true, p.alpha, p.beta);
            return Ok(fixed);
        }
        let (b1, b2) = (self.class(c1).base(), self.class(c2).base());
        if k1 == k2 {
            let tag = match (k1, diff) {
                (ClassType::A1x2, true) => Tag::Ci,
                (ClassType::A2, true) => Tag::Cii,
                (ClassType::A1x3, true) => {
                    if self.in_phi(c1, c2, 2, 1) {
                        Tag::F
                    } else {
                        Tag::G
                    }
                }
                (ClassType::A1, false) => Tag::Bi,
                (ClassType::A1x2, false) => Tag::Bii,
                _ => {
                    return Err(Error::Internal(format!(
                        "unclassified pair of {} classes in {}",
                        k1,
                        self.name()
                    )))
                }
            };
            return Ok(self.finish(tag, false, false, b1, b2));
        }
        // long/short: long class first
        let swapped = !self.is_long(c1);
        let (long, short) = if swapped { (k2, k1) } else { (k1, k2) };
        let tag = match (long, short) {
            (ClassType::A1, ClassType::A1x2) => Tag::Di,
            (ClassType::A1x2, ClassType::A2) => Tag::Dii,
            (ClassType::A1, ClassType::A1x3) => Tag::E,
            _ => return Err(Error::Internal(format!("unclassified pair {long}/{short} in {}", self.name()))),
        };
        let (a, b) = if swapped { (b2, b1) } else { (b1, b2) };
        Ok(self.finish(tag, swapped, false, a, b))
    }

    fn finish(&self, tag: Tag, swapped: bool, acute: bool, alpha: RootId, beta: RootId) -> PairType {
        let o = self.aut.order() as i32;
        let mut sums = Vec::new();
        for i in 0..o {
            for j in 0..o {
                let a = self.aut.apply_pow(alpha, i);
                let b = self.aut.apply_pow(beta, j);
                if self.sys.add(a, b).is_some() {
                    sums.push((i as u8, j as u8));
                }
            }
        }
        PairType { tag, swapped, acute, alpha, beta, sums }
    }

    /// Tag counts over unordered non-proportional pairs.
    pub fn census(&self) -> Vec<(Tag, usize)> {
        let mut counts: HashMap<Tag, usize> = HashMap::new();
        let n = self.classes.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (ClassId(i as u16), ClassId(j as u16));
                if self.proportional(a, b) {
                    continue;
                }
                let p = self.pair_classify(a, b).expect("non-proportional");
                *counts.entry(p.tag).or_default() += 1;
            }
        }
        let mut out: Vec<(Tag, usize)> = counts.into_iter().collect();
        out.sort();
        out
    }

    /// Parses a class given by any member root (`[1,1,0]`, `a2`, `-a1`).
    pub fn parse_class(&self, text: &str) -> Result<ClassId> {
        Ok(self.class_of(self.sys.parse_root(text)?))
    }

    pub fn format_class(&self, c: ClassId) -> String {
        let cl = self.class(c);
        let members: Vec<String> = cl.orbit.iter().map(|&r| self.sys.format(r)).collect();
        format!("{{{}}}", members.join(","))
    }
}

fn orbit_contains(aut: &GraphAut, i: usize, j: usize) -> bool {
    let mut x = i;
    for _ in 0..aut.order() {
        if x == j {
            return true;
        }
        x = aut.perm()[x];
    }
    false
}

fn folded_names(sys: &RootSystem, order: u8) -> (String, String) {
    let n = sys.rank();
    match (sys.kind(), order) {
        (Kind::A, _) if n % 2 == 1 => (format!("C{}", n.div_ceil(2)), format!("C{}", n.div_ceil(2))),
        (Kind::A, _) => (format!("B{}", n / 2), format!("BC{}", n / 2)),
        (Kind::D, 2) => (format!("B{}", n - 1), format!("B{}", n - 1)),
        (Kind::D, _) => ("G2".into(), "G2".into()),
        (Kind::E, _) => ("F4".into(), "F4".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fold(s: &str, o: &str) -> Folded {
        Folded::parse(s, o).unwrap()
    }

    #[test]
    fn a3_folds_to_c2() {
        let f = fold("A3", "o2");
        assert_eq!(f.type_name(), "C2");
        let pos = f.positive_classes();
        assert_eq!(pos.len(), 4);
        assert_eq!(pos.iter().filter(|c| c.kind == ClassType::A1).count(), 2);
        assert_eq!(pos.iter().filter(|c| c.kind == ClassType::A1x2).count(), 2);
        assert_eq!(f.length_types(), (ClassType::A1, Some(ClassType::A1x2)));
        let c = f.class(f.parse_class("a1").unwrap());
        assert_eq!(c.kind, ClassType::A1x2);
        let s = f.system();
        assert_eq!(c.orbit, vec![s.parse_root("a1").unwrap(), s.parse_root("a3").unwrap()]);
    }

    #[test]
    fn a4_folds_to_b2() {
        let f = fold("A4", "o2");
        assert_eq!(f.type_name(), "B2");
        assert_eq!(f.tilde_name(), "BC2");
        assert_eq!(f.length_types(), (ClassType::A1x2, Some(ClassType::A2)));
        let c = f.class(f.parse_class("a2").unwrap());
        assert_eq!(c.kind, ClassType::A2);
        let s = f.system();
        let want: Vec<RootId> = ["a2", "a3", "[0,1,1,0]"].iter().map(|t| s.parse_root(t).unwrap()).collect();
        assert_eq!(c.orbit, want);
    }

    #[test]
    fn d4_triality_folds_to_g2() {
        let f = fold("D4", "o3");
        assert_eq!(f.type_name(), "G2");
        assert_eq!(f.length_types(), (ClassType::A1, Some(ClassType::A1x3)));
        assert_eq!(f.positive_classes().len(), 6);
    }

    #[test]
    fn folding_table() {
        let cases = [
            ("A3", "o2", "C2", ClassType::A1, ClassType::A1x2),
            ("A5", "o2", "C3", ClassType::A1, ClassType::A1x2),
            ("A4", "o2", "B2", ClassType::A1x2, ClassType::A2),
            ("A6", "o2", "B3", ClassType::A1x2, ClassType::A2),
            ("D4", "o2", "B3", ClassType::A1, ClassType::A1x2),
            ("D5", "o2", "B4", ClassType::A1, ClassType::A1x2),
            ("E6", "o2", "F4", ClassType::A1, ClassType::A1x2),
            ("D4", "o3", "G2", ClassType::A1, ClassType::A1x3),
        ];
        for (s, o, name, long, short) in cases {
            let f = fold(s, o);
            assert_eq!(f.type_name(), name);
            assert_eq!(f.length_types(), (long, Some(short)), "{s} {o}");
            // partition of the roots
            let total: usize = f.classes().iter().map(|c| c.orbit.len()).sum();
            assert_eq!(total, f.system().len());
            // class heights: simple classes have height one
            for r in f.system().simple_roots() {
                assert_eq!(f.class(f.class_of(*r)).height, 1);
            }
        }
    }

    #[test]
    fn class_of_is_rho_invariant() {
        for (s, o) in [("A5", "o2"), ("D4", "o3"), ("E6", "o2"), ("A4", "o2")] {
            let f = fold(s, o);
            for r in f.system().roots() {
                assert_eq!(f.class_of(r), f.class_of(f.aut().apply(r)));
            }
        }
    }

    #[test]
    fn negation_convention() {
        let f = fold("A4", "o2");
        let s = f.system();
        for c in f.positive_classes() {
            let n = f.class(f.neg(c.id));
            assert_eq!(n.kind, c.kind);
            if c.kind == ClassType::A2 {
                assert_eq!(n.orbit[0], s.neg(c.orbit[1]));
                assert_eq!(n.orbit[1], s.neg(c.orbit[0]));
                assert_eq!(f.neg_base(c.base()), n.base());
            }
            let mut a: Vec<RootId> = c.orbit.iter().map(|&r| s.neg(r)).collect();
            let mut b = n.orbit.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn spec_pair_examples() {
        let f = fold("A3", "o2");
        let long = f.parse_class("a2").unwrap();
        let short = f.parse_class("a1").unwrap();
        let p = f.pair_classify(long, short).unwrap();
        assert_eq!(p.tag, Tag::Di);
        assert!(!p.swapped);
        assert!(f.folded_sum(long, short, 1, 1).is_some());
        assert!(f.folded_sum(long, short, 1, 2).is_some());
        let q = f.pair_classify(short, long).unwrap();
        assert_eq!(q.tag, Tag::Di);
        assert!(q.swapped);

        let f = fold("A4", "o2");
        let long = f.parse_class("a1").unwrap();
        let short = f.parse_class("a2").unwrap();
        assert_eq!(f.pair_classify(long, short).unwrap().tag, Tag::Dii);
        // two orthogonal long classes whose half-sum is short
        let l2 = f.parse_class("[1,1,1,0]").unwrap();
        let p = f.pair_classify(long, l2).unwrap();
        assert_eq!(f.class(l2).kind, ClassType::A1x2);
        assert_eq!(p.tag, Tag::A2ii);
        assert_eq!(f.class(f.half_sum(long, l2).unwrap()).kind, ClassType::A2);
    }

    #[test]
    fn folded_sum_basics() {
        let f = fold("A3", "o2");
        for c in f.classes() {
            assert!(f.folded_sum(c.id, c.id, 1, 1).is_none());
        }
    }

    #[test]
    fn every_pair_gets_one_tag_and_efg_only_in_triality() {
        for (s, o) in [("A3", "o2"), ("A4", "o2"), ("A5", "o2"), ("A6", "o2"), ("D4", "o2"), ("D5", "o2"), ("E6", "o2"), ("D4", "o3")] {
            let f = fold(s, o);
            let census = f.census();
            let triality = s == "D4" && o == "o3";
            for (tag, _) in &census {
                assert_eq!(matches!(tag, Tag::E | Tag::F | Tag::G), triality && matches!(tag, Tag::E | Tag::F | Tag::G));
            }
            if triality {
                let tags: Vec<Tag> = census.iter().map(|x| x.0).collect();
                for t in [Tag::E, Tag::F, Tag::G] {
                    assert!(tags.contains(&t));
                }
            }
            assert_eq!(census, f.census());
        }
    }
}
