//! The unit sets `R_k`: `R_1` collects the second coordinates of pairs in
//! `A(R)` that are units, `R_k` the `k`-fold products.

use super::{aform, Elem, Ring};

#[derive(Clone, Debug)]
pub struct RkSets {
    /// `levels[k - 1]` is `R_k`, sorted.
    pub levels: Vec<Vec<Elem>>,
    /// Union over all `k`.
    pub all: Vec<Elem>,
    /// Union over even `k`.
    pub even: Vec<Elem>,
    /// Union over odd `k`.
    pub odd: Vec<Elem>,
}

impl RkSets {
    pub fn level(&self, k: usize) -> &[Elem] {
        &self.levels[k - 1]
    }
}

pub fn r1(r: &Ring) -> Vec<Elem> {
    let mut mark = vec![false; r.size()];
    for p in aform::units(r) {
        mark[p.u.index()] = true;
    }
    r.elements().filter(|a| mark[a.index()]).collect()
}

/// Computes `R_1, ..., R_kmax` and the unions, the latter by iterating to
/// stabilisation independently of `kmax`.
pub fn rk_sets(r: &Ring, kmax: usize) -> RkSets {
    let base = r1(r);
    let step = |set: &[bool]| -> Vec<bool> {
        let mut out = vec![false; r.size()];
        for a in r.elements().filter(|a| set[a.index()]) {
            for &b in &base {
                out[r.mul(a, b).index()] = true;
            }
        }
        out
    };
    let to_vec = |m: &[bool]| r.elements().filter(|a| m[a.index()]).collect::<Vec<_>>();
    let mut cur = vec![false; r.size()];
    for &b in &base {
        cur[b.index()] = true;
    }
    let mut levels = vec![to_vec(&cur)];
    let mut odd = cur.clone();
    let mut even = vec![false; r.size()];
    let mut history: Vec<(usize, Vec<bool>)> = vec![(1, cur.clone())];
    let mut k = 1;
    loop {
        k += 1;
        cur = step(&cur);
        if k <= kmax {
            levels.push(to_vec(&cur));
        }
        let target = if k % 2 == 0 { &mut even } else { &mut odd };
        for (t, &c) in target.iter_mut().zip(&cur) {
            *t |= c;
        }
        // the sequence is periodic once a state recurs at the same parity
        let repeated = history.iter().any(|(j, h)| j % 2 == k % 2 && *h == cur);
        history.push((k, cur.clone()));
        if repeated && k >= kmax {
            break;
        }
        if base.is_empty() && k >= kmax {
            break;
        }
    }
    let all: Vec<bool> = odd.iter().zip(&even).map(|(a, b)| *a || *b).collect();
    RkSets { levels, all: to_vec(&all), even: to_vec(&even), odd: to_vec(&odd) }
}
