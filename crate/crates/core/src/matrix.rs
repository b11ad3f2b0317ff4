//! Dense square matrices over a finite ring.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, ThetaIdeal};

#[derive(Clone)]
pub struct Mat {
    ring: Arc<Ring>,
    dim: usize,
    data: Vec<Elem>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Mat) -> bool {
        self.ring.id() == other.ring.id() && self.dim == other.dim && self.data == other.data
    }
}

impl Eq for Mat {}

impl std::hash::Hash for Mat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

impl Mat {
    pub fn zero(ring: &Arc<Ring>, dim: usize) -> Mat {
        Mat { ring: ring.clone(), dim, data: vec![Elem::ZERO; dim * dim] }
    }

    pub fn identity(ring: &Arc<Ring>, dim: usize) -> Mat {
        let mut m = Mat::zero(ring, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ring.one();
        }
        m
    }

    pub fn diagonal(ring: &Arc<Ring>, diag: &[Elem]) -> Mat {
        let mut m = Mat::zero(ring, diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    /// Reinterprets entries through `f` into another ring.
    pub fn transfer(&self, ring: &Arc<Ring>, f: impl Fn(Elem) -> Elem) -> Mat {
        Mat { ring: ring.clone(), dim: self.dim, data: self.data.iter().map(|&a| f(a)).collect() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        let one = self.ring.one();
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == if i == j { one } else { Elem::ZERO }))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let r = &self.ring;
        let n = self.dim;
        let mut out = Mat::zero(r, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Elem::ZERO {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != Elem::ZERO {
                        let idx = i * n + j;
                        out.data[idx] = r.add(out.data[idx], r.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `self + c * E`, for a sparse integer matrix `E`.
    pub fn add_sparse(&mut self, c: Elem, sparse: &[(usize, usize, i32)]) {
        let r = self.ring.clone();
        for &(i, j, k) in sparse {
            let idx = i * self.dim + j;
            self.data[idx] = r.add(self.data[idx], r.scale(k as i64, c));
        }
    }

    /// `self * (I + a E1 + b E2)` for sparse integer matrices.
    pub fn mul_right_sparse(&mut self, terms: &[(Elem, &[(usize, usize, i32)])]) {
        let r = self.ring.clone();
        let n = self.dim;
        let old = self.data.clone();
        for &(c, sparse) in terms {
            if c == Elem::ZERO {
                continue;
            }
            for &(k, j, v) in sparse {
                let f = r.scale(v as i64, c);
                for i in 0..n {
                    let a = old[i * n + k];
                    if a != Elem::ZERO {
                        let idx = i * n + j;
                        self.data[idx] = r.add(self.data[idx], r.mul(a, f));
                    }
                }
            }
        }
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Mat {
        Mat { ring: self.ring.clone(), dim: self.dim, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn theta(&self) -> Mat {
        self.map(|x| self.ring.theta(x))
    }

    pub fn transpose(&self) -> Mat {
        let n = self.dim;
        let mut out = Mat::zero(&self.ring, n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    /// Conjugation `P M P^{-1}` by the signed permutation `P e_k = s_k e_{perm[k]}`.
    pub fn conj_signed_perm(&self, perm: &[usize], signs: &[i8]) -> Mat {
        let r = &self.ring;
        let n = self.dim;
        let mut out = Mat::zero(r, n);
        for i in 0..n {
            for j in 0..n {
                let v = self.data[i * n + j];
                if v != Elem::ZERO {
                    let v = if signs[i] * signs[j] < 0 { r.neg(v) } else { v };
                    out.data[perm[i] * n + perm[j]] = v;
                }
            }
        }
        out
    }

    /// Inverse by unit-pivot elimination, falling back to the division-free
    /// characteristic polynomial when no unit pivot is available.
    pub fn inverse(&self) -> Result<Mat> {
        if let Some(m) = self.inverse_elimination() {
            return Ok(m);
        }
        self.inverse_cayley_hamilton()
    }

    fn inverse_elimination(&self) -> Option<Mat> {
        let r = self.ring.clone();
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Mat::identity(&r, n).data;
        for col in 0..n {
            let p = (col..n).find(|&i| r.is_unit(a[i * n + col]))?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            let pinv = r.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = r.mul(a[col * n + j], pinv);
                inv[col * n + j] = r.mul(inv[col * n + j], pinv);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[i * n + col];
                if f == Elem::ZERO {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = r.sub(a[i * n + j], r.mul(f, a[col * n + j]));
                    inv[i * n + j] = r.sub(inv[i * n + j], r.mul(f, inv[col * n + j]));
                }
            }
        }
        Some(Mat { ring: r, dim: n, data: inv })
    }

    /// Coefficients `c_0..c_n` of `det(x I - M) = sum c_k x^{n-k}` by
    /// Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Vec<Elem> {
        let r = &self.ring;
        let n = self.dim;
        let mut poly = vec![r.one()];
        for k in 0..n {
            // leading k x k block is A, column C = a[0..k][k], row R = a[k][0..k], d = a[k][k]
            let d = self.get(k, k);
            let mut t = vec![Elem::ZERO; k + 2];
            t[0] = r.one();
            t[1] = r.neg(d);
            // R A^j C for j = 0..k-1
            let mut v: Vec<Elem> = (0..k).map(|i| self.get(i, k)).collect();
            for j in 0..k {
                let mut s = Elem::ZERO;
                for (i, &vi) in v.iter().enumerate() {
                    s = r.add(s, r.mul(self.get(k, i), vi));
                }
                t[j + 2] = r.neg(s);
                let mut nv = vec![Elem::ZERO; k];
                for (i, slot) in nv.iter_mut().enumerate() {
                    let mut acc = Elem::ZERO;
                    for (l, &vl) in v.iter().enumerate() {
                        acc = r.add(acc, r.mul(self.get(i, l), vl));
                    }
                    *slot = acc;
                }
                v = nv;
            }
            // Toeplitz product: new = T * poly
            let mut next = vec![Elem::ZERO; k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = Elem::ZERO;
                for (j, &pj) in poly.iter().enumerate() {
                    if i >= j {
                        acc = r.add(acc, r.mul(t[i - j], pj));
                    }
                }
                *slot = acc;
            }
            poly = next;
        }
        poly
    }

    pub fn determinant(&self) -> Elem {
        let p = self.charpoly();
        let c = *p.last().expect("nonempty");
        if self.dim % 2 == 1 {
            self.ring.neg(c)
        } else {
            c
        }
    }

    fn inverse_cayley_hamilton(&self) -> Result<Mat> {
        let r = self.ring.clone();
        let n = self.dim;
        let p = self.charpoly();
        let cn = p[n];
        let cinv = r.inv(cn).ok_or_else(|| Error::NotUnit("determinant".into()))?;
        // M^{-1} = -c_n^{-1} (M^{n-1} + c_1 M^{n-2} + ... + c_{n-1} I)
        let mut acc = Mat::identity(&r, n);
        for &c in p.iter().take(n).skip(1) {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = r.add(acc.data[idx], c);
            }
        }
        let f = r.neg(cinv);
        Ok(acc.map(|x| r.mul(x, f)))
    }

    /// Entrywise image in `R/J`.
    pub fn reduce_mod(&self, ideal: &ThetaIdeal) -> Result<Mat> {
        if ideal.ring().id() != self.ring.id() {
            return Err(Error::RingMismatch);
        }
        if ideal.is_whole() {
            return Err(Error::Precondition("cannot reduce modulo the whole ring".into()));
        }
        let (q, map) = self.ring.quotient(ideal)?;
        Ok(Mat { ring: q, dim: self.dim, data: self.data.iter().map(|x| map[x.index()]).collect() })
    }

    /// `M - I` has all entries in `J`.
    pub fn congruent_identity(&self, ideal: &ThetaIdeal) -> bool {
        let r = &self.ring;
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = if i == j { r.sub(self.get(i, j), r.one()) } else { self.get(i, j) };
                ideal.contains(v)
            })
        })
    }

    /// Row-major dump, one row per line, entries in the ring's syntax.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.ring.format(self.get(i, j))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}
