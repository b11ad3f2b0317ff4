//! Matrix realizations: the adjoint representation of every supported
//! system and the natural representation of `A_n`, with root unipotents,
//! torus elements and the twisting automorphism `sigma`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{LieBasis, SignedBasis};
use crate::error::{Error, Result};
use crate::fold::Folded;
use crate::matrix::Mat;
use crate::ring::{Elem, Ring};
use crate::roots::{Kind, RootId, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepKind {
    Adjoint,
    Natural,
}

impl RepKind {
    pub fn parse(s: &str) -> Result<RepKind> {
        match s {
            "adjoint" | "ad" => Ok(RepKind::Adjoint),
            "natural" | "nat" => Ok(RepKind::Natural),
            _ => Err(Error::Representation(format!("unknown representation `{s}`"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RepKind::Adjoint => "adjoint",
            RepKind::Natural => "natural",
        }
    }
}

type Sparse = Vec<(usize, usize, i32)>;

/// A representation with integer data independent of the ring.
#[derive(Debug)]
pub struct Rep {
    basis: Arc<SignedBasis>,
    kind: RepKind,
    dim: usize,
    /// `pi(X_a)` and `pi(X_a)^2 / 2` per root.
    e1: Vec<Sparse>,
    e2: Vec<Sparse>,
    /// Weight of each basis vector in fundamental-weight coordinates.
    weights: Vec<Vec<i32>>,
    /// `sigma(g) = P th(g) P^{-1}` (adjoint), or `J th(g)^{-T} J^{-1}` (natural).
    perm: Vec<usize>,
    signs: Vec<i8>,
}

/// A character of the weight lattice, by its values on a lattice basis:
/// simple roots for the adjoint representation, fundamental weights for the
/// natural one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<Elem>,
}

impl Rep {
    pub fn new(basis: Arc<SignedBasis>, kind: RepKind) -> Result<Rep> {
        let rep = match kind {
            RepKind::Adjoint => Rep::adjoint(basis),
            RepKind::Natural => Rep::natural(basis)?,
        };
        rep.validate()?;
        Ok(rep)
    }

    pub fn parse(system: &str, order: &str, kind: &str) -> Result<Arc<Rep>> {
        let basis = SignedBasis::parse(system, order)?;
        Ok(Arc::new(Rep::new(basis, RepKind::parse(kind)?)?))
    }

    fn adjoint(basis: Arc<SignedBasis>) -> Rep {
        let sys = basis.sys().clone();
        let aut = basis.folded().aut().clone();
        let rank = sys.rank();
        // positive roots decreasing, then H_1..H_n, then negative roots decreasing
        let mut order: Vec<LieBasis> = sys.positive_roots().collect::<Vec<_>>().into_iter().rev().map(LieBasis::X).collect();
        order.extend((0..rank).map(LieBasis::H));
        let mut neg: Vec<RootId> = sys.roots().filter(|&r| !sys.is_positive(r)).collect();
        neg.reverse();
        order.extend(neg.into_iter().map(LieBasis::X));
        let dim = order.len();
        let index = |e: LieBasis| order.iter().position(|&x| x == e).expect("basis element");

        let mut e1 = Vec::new();
        let mut e2 = Vec::new();
        for a in sys.roots() {
            let mut m: Sparse = Vec::new();
            for (col, &y) in order.iter().enumerate() {
                for (z, k) in basis.bracket(LieBasis::X(a), y) {
                    m.push((index(z), col, k));
                }
            }
            // square, halved
            let mut sq: std::collections::BTreeMap<(usize, usize), i32> = Default::default();
            for &(i, k, v) in &m {
                for &(k2, j, w) in &m {
                    if k2 == k {
                        *sq.entry((i, j)).or_default() += v * w;
                    }
                }
            }
            let half: Sparse = sq
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|((i, j), v)| {
                    assert!(v % 2 == 0, "ad^2 has even entries");
                    (i, j, v / 2)
                })
                .collect();
            e1.push(m);
            e2.push(half);
        }
        let weights = order
            .iter()
            .map(|&e| match e {
                LieBasis::X(a) => sys.root_as_weight(a),
                LieBasis::H(_) => vec![0; rank],
            })
            .collect();
        let mut perm = vec![0; dim];
        let mut signs = vec![1i8; dim];
        for (k, &e) in order.iter().enumerate() {
            match e {
                LieBasis::X(a) => {
                    perm[k] = index(LieBasis::X(aut.apply(a)));
                    signs[k] = basis.eps(a) as i8;
                }
                LieBasis::H(i) => perm[k] = index(LieBasis::H(aut.perm()[i])),
            }
        }
        Rep { basis, kind: RepKind::Adjoint, dim, e1, e2, weights, perm, signs }
    }

    fn natural(basis: Arc<SignedBasis>) -> Result<Rep> {
        let sys = basis.sys().clone();
        if sys.kind() != Kind::A {
            return Err(Error::Representation(format!("natural representation needs type A, not {}", sys.name())));
        }
        let n = sys.rank();
        let dim = n + 1;
        // positive root a_i + ... + a_{j-1} is e_i - e_j (0-based i < j)
        let span = |r: RootId| -> (usize, usize) {
            let c = sys.coords(r);
            let i = c.iter().position(|&x| x != 0).expect("nonzero");
            let j = c.iter().rposition(|&x| x != 0).expect("nonzero") + 1;
            (i, j)
        };
        let mut sign = vec![0i32; sys.len()];
        let mut pos: Vec<RootId> = sys.positive_roots().collect();
        pos.sort_by_key(|&r| sys.height(r));
        for &r in &pos {
            if sys.height(r) == 1 {
                sign[r.index()] = 1;
                continue;
            }
            // r = a + s with s simple at the right end: [X_a, X_s] = N X_r
            let (_, j) = span(r);
            let s = sys.simple_roots()[j - 1];
            let a = sys.sub(r, s).expect("root minus end simple root");
            // E_{i,j-1} E_{j-1,j} - E_{j-1,j} E_{i,j-1} = E_{ij}
            sign[r.index()] = sign[a.index()] * sign[s.index()] * basis.n(a, s);
        }
        let mut e1 = Vec::new();
        for r in sys.roots() {
            let (p, q) = if sys.is_positive(r) { span(r) } else { span(sys.neg(r)) };
            let s = if sys.is_positive(r) { sign[r.index()] } else { sign[sys.neg(r).index()] };
            let entry = if sys.is_positive(r) { (p, q, s) } else { (q, p, s) };
            e1.push(vec![entry]);
        }
        let e2 = vec![Vec::new(); sys.len()];
        // e_k has weight w_{k+1} - w_k (fundamental weights, 1-based, w_0 = w_{n+1} = 0)
        let weights = (0..dim)
            .map(|k| {
                let mut w = vec![0; n];
                if k < n {
                    w[k] += 1;
                }
                if k > 0 {
                    w[k - 1] -= 1;
                }
                w
            })
            .collect();
        let perm: Vec<usize> = (0..dim).map(|k| dim - 1 - k).collect();
        let signs: Vec<i8> = (0..dim).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        Ok(Rep { basis, kind: RepKind::Natural, dim, e1, e2, weights, perm, signs })
    }

    /// Checks the bracket relations and the generator formula for `sigma`.
    fn validate(&self) -> Result<()> {
        let sys = self.sys();
        let dense = |s: &Sparse| {
            let mut m = vec![0i64; self.dim * self.dim];
            for &(i, j, v) in s {
                m[i * self.dim + j] += v as i64;
            }
            m
        };
        let mulz = |a: &[i64], b: &[i64]| {
            let n = self.dim;
            let mut out = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    if a[i * n + k] != 0 {
                        for j in 0..n {
                            out[i * n + j] += a[i * n + k] * b[k * n + j];
                        }
                    }
                }
            }
            out
        };
        let mats: Vec<Vec<i64>> = self.e1.iter().map(dense).collect();
        for a in sys.roots() {
            for b in sys.roots() {
                if b == sys.neg(a) {
                    continue;
                }
                let ab = mulz(&mats[a.index()], &mats[b.index()]);
                let ba = mulz(&mats[b.index()], &mats[a.index()]);
                let comm: Vec<i64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
                let want: Vec<i64> = match sys.add(a, b) {
                    Some(c) => mats[c.index()].iter().map(|&x| x * self.basis.n(a, b) as i64).collect(),
                    None => vec![0; self.dim * self.dim],
                };
                if comm != want {
                    return Err(Error::Internal(format!(
                        "{} representation violates [X_a, X_b] for {} {}",
                        self.kind.label(),
                        sys.format(a),
                        sys.format(b)
                    )));
                }
            }
        }
        // sigma on generators at the Lie algebra level: rho(X_a) = eps_a X_{rho a}
        let aut = self.basis.folded().aut();
        for a in sys.roots() {
            let img = self.rho_lie(&mats[a.index()]);
            let want: Vec<i64> =
                mats[aut.apply(a).index()].iter().map(|&x| x * self.basis.eps(a) as i64).collect();
            if img != want {
                return Err(Error::Internal(format!(
                    "{} representation: sigma does not match the generator formula at {}",
                    self.kind.label(),
                    sys.format(a)
                )));
            }
        }
        Ok(())
    }

    /// The Lie algebra automorphism induced on integer matrices.
    fn rho_lie(&self, m: &[i64]) -> Vec<i64> {
        let n = self.dim;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = m[i * n + j];
                if v == 0 {
                    continue;
                }
                match self.kind {
                    RepKind::Adjoint => {
                        out[self.perm[i] * n + self.perm[j]] = v * (self.signs[i] * self.signs[j]) as i64;
                    }
                    RepKind::Natural => {
                        // X -> -J X^T J^{-1}
                        let (pi, pj) = (self.perm[j], self.perm[i]);
                        out[pi * n + pj] = -v * (self.signs[j] * self.signs[i]) as i64;
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self) -> &Arc<SignedBasis> {
        &self.basis
    }

    pub fn folded(&self) -> &Arc<Folded> {
        self.basis.folded()
    }

    pub fn sys(&self) -> &Arc<RootSystem> {
        self.basis.sys()
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self, ring: &Arc<Ring>) -> Mat {
        Mat::identity(ring, self.dim)
    }

    /// `x_a(t) = I + t pi(X_a) + t^2 pi(X_a)^2 / 2`.
    pub fn root_unipotent(&self, ring: &Arc<Ring>, a: RootId, t: Elem) -> Mat {
        let mut m = self.identity(ring);
        m.add_sparse(t, &self.e1[a.index()]);
        m.add_sparse(ring.mul(t, t), &self.e2[a.index()]);
        m
    }

    /// Nonzero entries `(row, col, coefficient)` of `pi(X_a)`.
    pub fn root_action(&self, a: RootId) -> &[(usize, usize, i32)] {
        &self.e1[a.index()]
    }

    /// `m <- m * x_a(t)` without forming `x_a(t)`.
    pub fn mul_root_unipotent(&self, m: &mut Mat, a: RootId, t: Elem) {
        if t == Elem::ZERO {
            return;
        }
        let r = m.ring().clone();
        let t2 = r.mul(t, t);
        m.mul_right_sparse(&[(t, &self.e1[a.index()]), (t2, &self.e2[a.index()])]);
    }

    /// `m <- m * diag(d)`.
    pub fn mul_diagonal(&self, m: &mut Mat, d: &[Elem]) {
        let r = m.ring().clone();
        for i in 0..self.dim {
            for (j, &dj) in d.iter().enumerate() {
                let v = m.get(i, j);
                if v != Elem::ZERO {
                    m.set(i, j, r.mul(v, dj));
                }
            }
        }
    }

    /// Lattice-basis length of characters for this representation.
    pub fn lattice_rank(&self) -> usize {
        self.sys().rank()
    }

    /// `chi(mu)` for a weight given in fundamental-weight coordinates.
    pub fn char_on_weight(&self, ring: &Ring, chi: &Character, mu: &[i32]) -> Result<Elem> {
        let exps: Vec<i32> = match self.kind {
            RepKind::Natural => mu.to_vec(),
            RepKind::Adjoint => {
                // express mu in simple roots: solve C^T x = mu (mu in the root lattice)
                root_coords_of_weight(self.sys(), mu)
                    .ok_or_else(|| Error::Representation("weight outside the root lattice".into()))?
            }
        };
        let mut acc = ring.one();
        for (&v, &e) in chi.values.iter().zip(&exps) {
            acc = ring.mul(acc, ring.pow(v, e as i64)?);
        }
        Ok(acc)
    }

    /// `chi(a)` for a root.
    pub fn char_on_root(&self, ring: &Ring, chi: &Character, a: RootId) -> Result<Elem> {
        match self.kind {
            RepKind::Adjoint => {
                let mut acc = ring.one();
                for (&v, &c) in chi.values.iter().zip(self.sys().coords(a)) {
                    acc = ring.mul(acc, ring.pow(v, c as i64)?);
                }
                Ok(acc)
            }
            RepKind::Natural => self.char_on_weight(ring, chi, &self.sys().root_as_weight(a)),
        }
    }

    pub fn check_character(&self, ring: &Ring, chi: &Character) -> Result<()> {
        if chi.values.len() != self.lattice_rank() {
            return Err(Error::BadParam(format!("character needs {} values", self.lattice_rank())));
        }
        for &v in &chi.values {
            if !ring.is_unit(v) {
                return Err(Error::NotUnit(ring.format(v)));
            }
        }
        Ok(())
    }

    /// `h(chi)`: diagonal in the weight basis.
    pub fn torus_element(&self, ring: &Arc<Ring>, chi: &Character) -> Result<Mat> {
        self.check_character(ring, chi)?;
        let diag = self.torus_diagonal(ring, chi)?;
        Ok(Mat::diagonal(ring, &diag))
    }

    pub fn torus_diagonal(&self, ring: &Arc<Ring>, chi: &Character) -> Result<Vec<Elem>> {
        self.weights.iter().map(|w| self.char_on_weight(ring, chi, w)).collect()
    }

    /// `chi_{a,t}: lambda -> t^{<lambda, a>}`, so that `h(chi) = h_a(t)`.
    pub fn coroot_character(&self, ring: &Ring, a: RootId, t: Elem) -> Result<Character> {
        let sys = self.sys();
        let exps: Vec<i32> = match self.kind {
            RepKind::Adjoint => sys.simple_roots().iter().map(|&s| sys.cartan_int(s, a)).collect(),
            RepKind::Natural => sys.coords(a).iter().map(|&c| c as i32).collect(),
        };
        let values = exps.iter().map(|&e| ring.pow(t, e as i64)).collect::<Result<Vec<_>>>()?;
        Ok(Character { values })
    }

    /// `chi(rho(lambda)) = th(chi(lambda))` on the lattice basis.
    pub fn is_self_conjugate(&self, ring: &Ring, chi: &Character) -> bool {
        let perm = self.folded().aut().perm();
        (0..chi.values.len()).all(|i| chi.values[perm[i]] == ring.theta(chi.values[i]))
    }

    /// The character with `h(sigma chi) = sigma(h(chi))`.
    pub fn sigma_character(&self, ring: &Ring, chi: &Character) -> Character {
        let perm = self.folded().aut().perm();
        let mut values = vec![Elem::ZERO; chi.values.len()];
        for (i, &v) in chi.values.iter().enumerate() {
            values[perm[i]] = ring.theta(v);
        }
        Character { values }
    }

    /// `sigma = rho o th` at the group level.
    pub fn sigma_apply(&self, m: &Mat) -> Result<Mat> {
        let t = m.theta();
        match self.kind {
            RepKind::Adjoint => Ok(t.conj_signed_perm(&self.perm, &self.signs)),
            RepKind::Natural => Ok(t.inverse()?.transpose().conj_signed_perm(&self.perm, &self.signs)),
        }
    }

    /// Index of the basis vector `X_a` (adjoint) used by the level and
    /// factorization routines.
    pub fn weights(&self) -> &[Vec<i32>] {
        &self.weights
    }
}

/// Solves `sum_i x_i (row i of the Cartan matrix) = mu` over the integers.
fn root_coords_of_weight(sys: &RootSystem, mu: &[i32]) -> Option<Vec<i32>> {
    let n = sys.rank();
    let c = sys.cartan();
    // Gaussian elimination over the rationals with i64 fractions kept exact
    let mut a: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| c[i][j] as i64).chain([mu[j] as i64]).collect()).collect();
    let mut row = 0;
    let mut piv = vec![0usize; n];
    for col in 0..n {
        let p = (row..n).find(|&i| a[i][col] != 0)?;
        a.swap(row, p);
        for i in 0..n {
            if i != row && a[i][col] != 0 {
                let (f, g) = (a[i][col], a[row][col]);
                for k in 0..=n {
                    a[i][k] = a[i][k] * g - a[row][k] * f;
                }
            }
        }
        piv[row] = col;
        row += 1;
    }
    let mut x = vec![0i32; n];
    for i in 0..n {
        let (num, den) = (a[i][n], a[i][piv[i]]);
        if num % den != 0 {
            return None;
        }
        x[piv[i]] = (num / den) as i32;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_dimensions_and_validation() {
        for (s, o, dim) in [("A3", "o2", 15), ("A4", "o2", 24), ("D4", "o3", 28), ("D5", "o2", 45), ("E6", "o2", 78)] {
            let rep = Rep::parse(s, o, "adjoint").unwrap();
            assert_eq!(rep.dim(), dim);
        }
        for (s, dim) in [("A2", 3), ("A3", 4), ("A4", 5), ("A6", 7)] {
            let rep = Rep::parse(s, "o2", "natural").unwrap();
            assert_eq!(rep.dim(), dim);
        }
        assert!(Rep::parse("D4", "o2", "natural").is_err());
    }

    #[test]
    fn unipotents_are_additive_and_sigma_matches_generators() {
        let r = Ring::make("gf(9;frob)").unwrap();
        for (s, o, k) in [("A3", "o2", "adjoint"), ("A4", "o2", "adjoint"), ("A3", "o2", "natural"), ("A4", "o2", "natural")] {
            let rep = Rep::parse(s, o, k).unwrap();
            let sys = rep.sys().clone();
            let aut = rep.folded().aut().clone();
            for a in sys.roots() {
                assert!(rep.root_unipotent(&r, a, r.zero()).is_identity());
                for t in r.elements().step_by(2) {
                    for u in r.elements().step_by(3) {
                        let lhs = rep.root_unipotent(&r, a, t).mul(&rep.root_unipotent(&r, a, u));
                        assert_eq!(lhs, rep.root_unipotent(&r, a, r.add(t, u)));
                    }
                    let img = rep.sigma_apply(&rep.root_unipotent(&r, a, t)).unwrap();
                    let e = r.from_int(rep.basis().eps(a) as i64);
                    assert_eq!(img, rep.root_unipotent(&r, aut.apply(a), r.mul(e, r.theta(t))), "{s} {k}");
                    let mut m = rep.identity(&r);
                    rep.mul_root_unipotent(&mut m, a, t);
                    assert_eq!(m, rep.root_unipotent(&r, a, t));
                }
            }
        }
    }

    #[test]
    fn natural_a2_simple_unipotent() {
        let rep = Rep::parse("A2", "o2", "natural").unwrap();
        let r = Ring::make("gf(9;frob)").unwrap();
        let x = r.generator_x().unwrap();
        let m = rep.root_unipotent(&r, rep.sys().parse_root("a1").unwrap(), x);
        let mut want = Mat::identity(&r, 3);
        want.set(0, 1, x);
        assert_eq!(m, want);
    }

    #[test]
    fn coroot_torus_matches_w_products() {
        // h_a(t) = w_a(t) w_a(-1), w_a(t) = x_a(t) x_{-a}(-1/t) x_a(t)
        let r = Ring::make("gf(9;frob)").unwrap();
        for (s, k) in [("A3", "adjoint"), ("A3", "natural"), ("D4", "adjoint")] {
            let rep = Rep::parse(s, "o2", k).unwrap();
            let sys = rep.sys().clone();
            for a in sys.roots() {
                for t in r.units() {
                    let w = |t: Elem| {
                        let ti = r.inv(t).unwrap();
                        rep.root_unipotent(&r, a, t)
                            .mul(&rep.root_unipotent(&r, sys.neg(a), r.neg(ti)))
                            .mul(&rep.root_unipotent(&r, a, t))
                    };
                    let h = w(t).mul(&w(r.neg(r.one())));
                    let chi = rep.coroot_character(&r, a, t).unwrap();
                    assert_eq!(h, rep.torus_element(&r, &chi).unwrap(), "{s} {k}");
                }
            }
        }
    }

    #[test]
    fn sigma_on_torus_and_order() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let rep = Rep::parse("A3", "o2", "natural").unwrap();
        let x = r.generator_x().unwrap();
        let chi = Character { values: vec![x, r.one(), r.mul(x, x)] };
        let h = rep.torus_element(&r, &chi).unwrap();
        let s = rep.sigma_apply(&h).unwrap();
        assert_eq!(s, rep.torus_element(&r, &rep.sigma_character(&r, &chi)).unwrap());
        let m = rep
            .root_unipotent(&r, rep.sys().parse_root("a1").unwrap(), x)
            .mul(&rep.root_unipotent(&r, rep.sys().parse_root("-a2").unwrap(), r.one()));
        assert_eq!(rep.sigma_apply(&rep.sigma_apply(&m).unwrap()).unwrap(), m);

        let r3 = Ring::make("gf(343;frob)").unwrap();
        let rep = Rep::parse("D4", "o3", "adjoint").unwrap();
        let y = r3.generator_x().unwrap();
        let m = rep.root_unipotent(&r3, rep.sys().parse_root("a1").unwrap(), y);
        let s3 = rep.sigma_apply(&rep.sigma_apply(&rep.sigma_apply(&m).unwrap()).unwrap()).unwrap();
        assert_eq!(s3, m);
        assert_ne!(rep.sigma_apply(&m).unwrap(), m);
    }
}
