//! Structure constants of a Chevalley basis adapted to the diagram
//! automorphism, and the Weyl-conjugation signs `c` and `d`.
//!
//! `N` starts from the bimultiplicative sign cocycle on the root lattice
//! (`eps(a_i, a_i) = -1`, `eps(a_i, a_j) = (-1)^{A_ij}` for `i < j`, `1`
//! otherwise), with `X_{-a}` negated for `a > 0` so that `[X_a, X_{-a}] = H_a`.
//! A sign flip `X_a -> -X_a, X_{-a} -> -X_{-a}` per positive root is then
//! solved over GF(2) so that `rho(X_a) = eps_a X_{rho a}` is a Lie algebra
//! automorphism with `eps_a = -1` exactly on the middle roots of `A2`
//! classes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fold::{ClassType, Folded};
use crate::roots::{RootId, RootSystem};

/// Element of the Chevalley basis: `X_a` or `H_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieBasis {
    X(RootId),
    H(usize),
}

#[derive(Debug)]
pub struct SignedBasis {
    folded: Arc<Folded>,
    n: Vec<i8>,
    eps: Vec<i8>,
}

fn cocycle_parity(sys: &RootSystem, x: &[i8], y: &[i8]) -> i32 {
    let cartan = sys.cartan();
    let r = sys.rank();
    let mut e = 0i32;
    for i in 0..r {
        e += x[i] as i32 * y[i] as i32;
        for j in i + 1..r {
            if cartan[i][j] != 0 {
                e += x[i] as i32 * y[j] as i32;
            }
        }
    }
    e.rem_euclid(2)
}

impl SignedBasis {
    pub fn new(folded: Arc<Folded>) -> Result<SignedBasis> {
        let sys = folded.system().clone();
        let aut = folded.aut();
        let len = sys.len();
        let sign = |r: RootId| if sys.is_positive(r) { 1i8 } else { -1i8 };
        let mut n = vec![0i8; len * len];
        for a in sys.roots() {
            for b in sys.roots() {
                if let Some(c) = sys.add(a, b) {
                    let e = if cocycle_parity(&sys, sys.coords(a), sys.coords(b)) == 0 { 1 } else { -1 };
                    n[a.index() * len + b.index()] = sign(a) * sign(b) * sign(c) * e;
                }
            }
        }

        let mut eps = vec![1i8; len];
        for c in folded.classes() {
            if c.kind == ClassType::A2 {
                eps[c.orbit[2].index()] = -1;
            }
        }

        // unknown flip bit per positive root
        let pos: Vec<RootId> = sys.positive_roots().collect();
        let var = |r: RootId| -> usize {
            let p = if sys.is_positive(r) { r } else { sys.neg(r) };
            pos.iter().position(|&x| x == p).expect("positive root")
        };
        let bit = |s: i8| u8::from(s < 0);
        let mut rows: Vec<(Vec<u64>, u8)> = Vec::new();
        let words = pos.len().div_ceil(64);
        for a in sys.roots() {
            for b in sys.roots() {
                let Some(c) = sys.add(a, b) else { continue };
                let (ra, rb) = (aut.apply(a), aut.apply(b));
                let rc = aut.apply(c);
                let mut row = vec![0u64; words];
                for r in [a, b, c, ra, rb, rc] {
                    let v = var(r);
                    row[v / 64] ^= 1 << (v % 64);
                }
                let rhs = bit(n[a.index() * len + b.index()])
                    ^ bit(n[ra.index() * len + rb.index()])
                    ^ bit(eps[a.index()])
                    ^ bit(eps[b.index()])
                    ^ bit(eps[c.index()]);
                rows.push((row, rhs));
            }
        }
        let flips = solve_gf2(rows, pos.len()).ok_or_else(|| {
            Error::Internal(format!("no sign normalization exists for {}", folded.name()))
        })?;
        let flip = |r: RootId| if flips[var(r)] { -1i8 } else { 1i8 };
        for a in sys.roots() {
            for b in sys.roots() {
                if let Some(c) = sys.add(a, b) {
                    n[a.index() * len + b.index()] *= flip(a) * flip(b) * flip(c);
                }
            }
        }
        let basis = SignedBasis { folded, n, eps };
        basis.check_rho_compatible()?;
        Ok(basis)
    }

    pub fn parse(system: &str, order: &str) -> Result<Arc<SignedBasis>> {
        Ok(Arc::new(SignedBasis::new(Arc::new(Folded::parse(system, order)?))?))
    }

    fn check_rho_compatible(&self) -> Result<()> {
        let sys = self.sys();
        let aut = self.folded.aut();
        for a in sys.roots() {
            for b in sys.roots() {
                if let Some(c) = sys.add(a, b) {
                    let lhs = self.n(aut.apply(a), aut.apply(b));
                    let rhs = self.eps(a) * self.eps(b) * self.eps(c) * self.n(a, b);
                    if lhs != rhs {
                        return Err(Error::Internal("sign normalization failed".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn folded(&self) -> &Arc<Folded> {
        &self.folded
    }

    pub fn sys(&self) -> &Arc<RootSystem> {
        self.folded.system()
    }

    /// `N_{a,b}`, zero when `a + b` is not a root.
    pub fn n(&self, a: RootId, b: RootId) -> i32 {
        self.n[a.index() * self.sys().len() + b.index()] as i32
    }

    /// `eps_a` with `rho(X_a) = eps_a X_{rho a}`.
    pub fn eps(&self, a: RootId) -> i32 {
        self.eps[a.index()] as i32
    }

    /// Sign in `w_a(t) X_b w_a(t)^{-1} = c t^{-<b,a>} X_{s_a b}`.
    pub fn c_sign(&self, a: RootId, b: RootId) -> i32 {
        let sys = self.sys();
        if a == b || a == sys.neg(b) {
            return -1;
        }
        if sys.add(a, b).is_some() {
            return self.n(a, b);
        }
        let nb = sys.neg(b);
        if sys.add(a, nb).is_some() {
            return self.n(a, nb);
        }
        1
    }

    /// The class sign `d([a], b)` for the class of `a` taken with base `a`.
    pub fn d_sign(&self, a: RootId, b: RootId) -> i32 {
        let sys = self.sys();
        let aut = self.folded.aut();
        let kind = self.folded.class(self.folded.class_of(a)).kind;
        let a1 = aut.apply(a);
        match kind {
            ClassType::A1 => self.c_sign(a, b),
            ClassType::A1x2 => self.c_sign(a, b) * self.c_sign(a1, sys.reflect(a, b)),
            ClassType::A1x3 => {
                let a2 = aut.apply(a1);
                let s1 = sys.reflect(a, b);
                self.c_sign(a, b) * self.c_sign(a1, s1) * self.c_sign(a2, sys.reflect(a1, s1))
            }
            ClassType::A2 => {
                let s1 = sys.reflect(a, b);
                self.c_sign(a, b) * self.c_sign(a1, s1) * self.c_sign(a, sys.reflect(a1, s1))
            }
        }
    }

    /// Lie bracket of two basis elements as an integer combination.
    pub fn bracket(&self, x: LieBasis, y: LieBasis) -> Vec<(LieBasis, i32)> {
        let sys = self.sys();
        match (x, y) {
            (LieBasis::H(_), LieBasis::H(_)) => vec![],
            (LieBasis::H(i), LieBasis::X(b)) => {
                let k = sys.cartan_int(b, sys.simple_roots()[i]);
                if k == 0 {
                    vec![]
                } else {
                    vec![(LieBasis::X(b), k)]
                }
            }
            (LieBasis::X(_), LieBasis::H(_)) => {
                self.bracket(y, x).into_iter().map(|(e, k)| (e, -k)).collect()
            }
            (LieBasis::X(a), LieBasis::X(b)) => {
                if b == sys.neg(a) {
                    sys.coords(a)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (LieBasis::H(i), c as i32))
                        .collect()
                } else if let Some(c) = sys.add(a, b) {
                    vec![(LieBasis::X(c), self.n(a, b))]
                } else {
                    vec![]
                }
            }
        }
    }

    /// All basis elements: roots in order, then `H_1..H_n`.
    pub fn lie_basis(&self) -> Vec<LieBasis> {
        let sys = self.sys();
        sys.roots().map(LieBasis::X).chain((0..sys.rank()).map(LieBasis::H)).collect()
    }
}

/// Solves `rows * x = rhs` over GF(2); free variables are zero.
fn solve_gf2(mut rows: Vec<(Vec<u64>, u8)>, nvars: usize) -> Option<Vec<bool>> {
    let get = |row: &[u64], v: usize| (row[v / 64] >> (v % 64)) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for v in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| get(&rows[i].0, v)) else { continue };
        rows.swap(r, p);
        let (pr, prhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && get(&row.0, v) {
                for (w, pw) in row.0.iter_mut().zip(&pr) {
                    *w ^= pw;
                }
                row.1 ^= prhs;
            }
        }
        pivots.push((r, v));
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs != 0) {
        return None;
    }
    let mut x = vec![false; nvars];
    for (row, v) in pivots {
        x[v] = rows[row].1 == 1;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    const SYSTEMS: [(&str, &str); 8] = [
        ("A2", "o2"),
        ("A3", "o2"),
        ("A4", "o2"),
        ("A5", "o2"),
        ("D4", "o2"),
        ("D4", "o3"),
        ("D5", "o2"),
        ("E6", "o2"),
    ];

    fn combine(b: &SignedBasis, x: &[(LieBasis, i32)], y: LieBasis) -> Vec<(LieBasis, i32)> {
        let mut out = Vec::new();
        for &(e, k) in x {
            for (f, m) in b.bracket(e, y) {
                out.push((f, k * m));
            }
        }
        out
    }

    #[test]
    fn jacobi_holds_on_all_triples() {
        for (s, o) in [("A3", "o2"), ("A4", "o2"), ("D4", "o3"), ("D5", "o2")] {
            let b = SignedBasis::parse(s, o).unwrap();
            let all = b.lie_basis();
            for &x in &all {
                for &y in &all {
                    let xy = b.bracket(x, y);
                    for &z in &all {
                        let yz = b.bracket(y, z);
                        let zx = b.bracket(z, x);
                        let mut acc: HashMap<LieBasis, i32> = HashMap::new();
                        // [[x,y],z] + [[y,z],x] + [[z,x],y]
                        for (e, k) in combine(&b, &xy, z).into_iter().chain(combine(&b, &yz, x)).chain(combine(&b, &zx, y)) {
                            *acc.entry(e).or_default() += k;
                        }
                        assert!(acc.values().all(|&v| v == 0), "{s} {x:?} {y:?} {z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constant_axioms() {
        for (s, o) in SYSTEMS {
            let b = SignedBasis::parse(s, o).unwrap();
            let sys = b.sys();
            for a in sys.roots() {
                for c in sys.roots() {
                    let n = b.n(a, c);
                    assert_eq!(n != 0, sys.add(a, c).is_some());
                    assert_eq!(n, -b.n(c, a));
                    assert_eq!(b.n(sys.neg(a), sys.neg(c)), -n);
                }
            }
        }
    }

    #[test]
    fn epsilon_pattern() {
        for (s, o) in SYSTEMS {
            let b = SignedBasis::parse(s, o).unwrap();
            let f = b.folded();
            let aut = f.aut();
            for r in b.sys().roots() {
                let c = f.class(f.class_of(r));
                let middle = c.kind == ClassType::A2 && aut.apply(r) == r;
                assert_eq!(b.eps(r), if middle { -1 } else { 1 });
                assert_eq!(b.eps(r), b.eps(aut.apply(r)));
                for q in b.sys().roots() {
                    assert_eq!(b.n(aut.apply(r), aut.apply(q)), b.eps(r) * b.eps(q) * b.eps_sum(r, q) * b.n(r, q));
                }
            }
        }
        let b = SignedBasis::parse("A2", "o2").unwrap();
        let top = b.sys().parse_root("[1,1]").unwrap();
        assert_eq!(b.eps(top), -1);
        let b = SignedBasis::parse("A3", "o2").unwrap();
        assert!(b.sys().roots().all(|r| b.eps(r) == 1));
    }

    impl SignedBasis {
        fn eps_sum(&self, a: RootId, b: RootId) -> i32 {
            self.sys().add(a, b).map_or(1, |c| self.eps(c))
        }
    }

    #[test]
    fn a2_pair_antisymmetry() {
        let b = SignedBasis::parse("A4", "o2").unwrap();
        let sys = b.sys();
        for a in sys.roots() {
            for c in sys.roots() {
                if sys.add(a, c).is_some() {
                    assert_eq!(b.n(a, c) * b.n(c, a), -1);
                }
            }
        }
    }

    #[test]
    fn quoted_jacobi_identities() {
        // from the triality computations: N_{b, a + rho b} = N_{rho b, a + b}
        // and the two product identities for pairs of short classes
        let b = SignedBasis::parse("D4", "o3").unwrap();
        let sys = b.sys();
        let aut = b.folded().aut();
        let mut checked = 0;
        for a in sys.roots() {
            for c in sys.roots() {
                let (c1, c2) = (aut.apply(c), aut.apply_pow(c, 2));
                let (a1, a2) = (aut.apply(a), aut.apply_pow(a, 2));
                if let (Some(x), Some(y)) = (sys.add(a, c1), sys.add(a, c)) {
                    if sys.add(c, x).is_some() {
                        assert_eq!(b.n(c, x), b.n(c1, y));
                        checked += 1;
                    }
                }
                if let (Some(s1), Some(s2)) = (sys.add(a2, c), sys.add(a1, c)) {
                    if sys.add(a1, s1).is_some() && sys.add(a2, s2).is_some() {
                        assert_eq!(b.n(a1, s1) * b.n(a2, c), b.n(a2, s2) * b.n(a1, c));
                        checked += 1;
                    }
                }
                if let (Some(s1), Some(s2)) = (sys.add(a, c2), sys.add(a, c1)) {
                    if sys.add(c1, s1).is_some() && sys.add(c2, s2).is_some() {
                        assert_eq!(b.n(c1, s1) * b.n(a, c2), b.n(c2, s2) * b.n(a, c1));
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn c_sign_table() {
        let b = SignedBasis::parse("A3", "o2").unwrap();
        let sys = b.sys();
        for a in sys.roots() {
            assert_eq!(b.c_sign(a, a), -1);
            for c in sys.roots() {
                assert_eq!(b.c_sign(a, c), b.c_sign(a, sys.neg(c)));
                if a != c && sys.add(a, c).is_none() && sys.sub(a, c).is_none() && a != sys.neg(c) {
                    assert_eq!(b.c_sign(a, c), 1);
                }
                if sys.add(a, c).is_some() {
                    assert_eq!(b.c_sign(a, c), b.n(a, c));
                }
            }
        }
    }

    #[test]
    fn d_sign_rho_invariance() {
        for (s, o) in SYSTEMS {
            let b = SignedBasis::parse(s, o).unwrap();
            let f = b.folded();
            for c in f.classes() {
                for r in b.sys().roots() {
                    let base = c.base();
                    assert_eq!(b.d_sign(base, r), b.d_sign(base, f.aut().apply(r)), "{s} {o}");
                }
            }
        }
    }

    #[test]
    fn d_sign_on_a2_sums() {
        for (s, o) in [("A2", "o2"), ("A4", "o2"), ("A6", "o2")] {
            let b = SignedBasis::parse(s, o).unwrap();
            let f = b.folded();
            for c in f.classes() {
                let a = c.base();
                for d in f.classes().iter().filter(|d| d.kind == ClassType::A2) {
                    let (be, bb, top) = (d.orbit[0], d.orbit[1], d.orbit[2]);
                    let lhs = b.d_sign(a, top);
                    let rhs = b.n(f.class_reflect(a, bb), f.class_reflect(a, be)) * b.n(bb, be);
                    assert_eq!(lhs, rhs, "{s}");
                }
            }
        }
    }
}
