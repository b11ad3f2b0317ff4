//! Simply-laced root systems `A_n`, `D_n`, `E_6` in simple-root coordinates,
//! with a fixed total order and the diagram automorphisms.
//!
//! Labelling: `A_n` is the chain `1-2-...-n`; `D_n` is the chain
//! `1-...-(n-1)` with `n` also attached to `n-2`; `E_6` is the chain
//! `1-3-4-5-6` with `2` attached to `4`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
}

/// Index of a root in the ordered root list.
///
/// Indices increase along the total order, so comparing ids compares roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootId(pub u16);

impl RootId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub struct RootSystem {
    kind: Kind,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    coords: Vec<Vec<i8>>,
    lookup: HashMap<Vec<i8>, RootId>,
    heights: Vec<i32>,
    neg: Vec<RootId>,
    sum: Vec<Option<RootId>>,
    pairing: Vec<i8>,
    simple: Vec<RootId>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({})", self.name())
    }
}

fn order_key(c: &[i8]) -> (i32, Vec<i8>) {
    let h: i32 = c.iter().map(|&x| x as i32).sum();
    (h, c.iter().map(|&x| -x).collect())
}

impl RootSystem {
    /// Parses `A3`, `D4`, `E6`, ...
    pub fn parse(name: &str) -> Result<RootSystem> {
        let name = name.trim();
        let bad = || Error::UnsupportedSystem(name.to_string());
        let mut chars = name.chars();
        let kind = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Kind::A,
            'D' => Kind::D,
            'E' => Kind::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootSystem::new(kind, rank)
    }

    pub fn new(kind: Kind, rank: usize) -> Result<RootSystem> {
        let ok = match kind {
            Kind::A => (2..=12).contains(&rank),
            Kind::D => (4..=12).contains(&rank),
            Kind::E => rank == 6,
        };
        if !ok {
            return Err(Error::UnsupportedSystem(format!("{kind:?}{rank}")));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match kind {
            Kind::A => edges.extend((0..rank - 1).map(|i| (i, i + 1))),
            Kind::D => {
                edges.extend((0..rank - 2).map(|i| (i, i + 1)));
                edges.push((rank - 3, rank - 1));
            }
            Kind::E => edges.extend([(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]),
        }
        let mut cartan = vec![vec![0i32; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }
        let pair = |b: &[i8], a: &[i8]| -> i32 {
            let mut s = 0;
            for i in 0..rank {
                if b[i] == 0 {
                    continue;
                }
                for j in 0..rank {
                    s += b[i] as i32 * a[j] as i32 * cartan[i][j];
                }
            }
            s
        };
        // positive roots by adding simple roots while the pairing is -1
        let mut positive: Vec<Vec<i8>> = (0..rank)
            .map(|i| {
                let mut v = vec![0i8; rank];
                v[i] = 1;
                v
            })
            .collect();
        let mut i = 0;
        while i < positive.len() {
            let beta = positive[i].clone();
            for j in 0..rank {
                let mut e = vec![0i8; rank];
                e[j] = 1;
                if beta != e && pair(&beta, &e) == -1 {
                    let mut s = beta.clone();
                    s[j] += 1;
                    if !positive.contains(&s) {
                        positive.push(s);
                    }
                }
            }
            i += 1;
        }
        let mut all: Vec<Vec<i8>> = positive.clone();
        all.extend(positive.iter().map(|v| v.iter().map(|&x| -x).collect::<Vec<i8>>()));
        all.sort_by_key(|c| order_key(c));
        let n = all.len();
        let lookup: HashMap<Vec<i8>, RootId> =
            all.iter().enumerate().map(|(i, c)| (c.clone(), RootId(i as u16))).collect();
        let heights = all.iter().map(|c| c.iter().map(|&x| x as i32).sum()).collect();
        let neg = all
            .iter()
            .map(|c| lookup[&c.iter().map(|&x| -x).collect::<Vec<i8>>()])
            .collect();
        let mut sum = vec![None; n * n];
        let mut pairing = vec![0i8; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i8> = all[a].iter().zip(&all[b]).map(|(x, y)| x + y).collect();
                sum[a * n + b] = lookup.get(&s).copied();
                pairing[a * n + b] = pair(&all[a], &all[b]) as i8;
            }
        }
        let simple = (0..rank)
            .map(|i| {
                let mut v = vec![0i8; rank];
                v[i] = 1;
                lookup[&v]
            })
            .collect();
        Ok(RootSystem { kind, rank, cartan, coords: all, lookup, heights, neg, sum, pairing, simple })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// All roots in increasing order.
    pub fn roots(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.coords.len()).map(|i| RootId(i as u16))
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = RootId> + '_ {
        self.roots().filter(move |&r| self.is_positive(r))
    }

    pub fn simple_roots(&self) -> &[RootId] {
        &self.simple
    }

    pub fn coords(&self, r: RootId) -> &[i8] {
        &self.coords[r.index()]
    }

    pub fn find(&self, coords: &[i8]) -> Option<RootId> {
        self.lookup.get(coords).copied()
    }

    pub fn height(&self, r: RootId) -> i32 {
        self.heights[r.index()]
    }

    pub fn is_positive(&self, r: RootId) -> bool {
        self.heights[r.index()] > 0
    }

    pub fn neg(&self, r: RootId) -> RootId {
        self.neg[r.index()]
    }

    /// `a + b` if it is a root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sum[a.index() * self.len() + b.index()]
    }

    /// `a - b` if it is a root.
    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.add(a, self.neg(b))
    }

    /// The pairing `<b, a>` of `b` with the coroot of `a`.
    pub fn cartan_int(&self, b: RootId, a: RootId) -> i32 {
        self.pairing[b.index() * self.len() + a.index()] as i32
    }

    /// `s_a(b) = b - <b, a> a`.
    pub fn reflect(&self, a: RootId, b: RootId) -> RootId {
        let k = self.cartan_int(b, a) as i8;
        let c: Vec<i8> = self.coords(b).iter().zip(self.coords(a)).map(|(&x, &y)| x - k * y).collect();
        self.lookup[&c]
    }

    /// Pairing of a weight given by its values on simple coroots with `a`'s
    /// coroot, i.e. `sum_i lambda_i * a_i` in simple-root coordinates.
    pub fn weight_pairing(&self, lambda: &[i32], a: RootId) -> i32 {
        self.coords(a).iter().zip(lambda).map(|(&c, &l)| c as i32 * l).sum()
    }

    /// Values of a root on simple coroots (its row in the Cartan matrix
    /// basis), i.e. its expression in fundamental weights.
    pub fn root_as_weight(&self, a: RootId) -> Vec<i32> {
        (0..self.rank)
            .map(|j| self.coords(a).iter().enumerate().map(|(i, &c)| c as i32 * self.cartan[i][j]).sum())
            .collect()
    }

    pub fn highest_root(&self) -> RootId {
        RootId((self.len() - 1) as u16)
    }

    /// Formats a root as `[c1,c2,...]`.
    pub fn format(&self, r: RootId) -> String {
        let parts: Vec<String> = self.coords(r).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses `[c1,c2,...]` (or `a3` for the third simple root, `-a3` for
    /// its negative).
    pub fn parse_root(&self, text: &str) -> Result<RootId> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::UnknownRoot(text.to_string());
        if let Some(rest) = t.strip_prefix("-a").or_else(|| t.strip_prefix("-α")) {
            let i: usize = rest.parse().map_err(|_| bad())?;
            return self.simple.get(i.wrapping_sub(1)).map(|&r| self.neg(r)).ok_or_else(bad);
        }
        if let Some(rest) = t.strip_prefix('a').or_else(|| t.strip_prefix('α')) {
            let i: usize = rest.parse().map_err(|_| bad())?;
            return self.simple.get(i.wrapping_sub(1)).copied().ok_or_else(bad);
        }
        let inner = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
        let coords = inner
            .split(',')
            .map(|s| s.parse::<i8>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != self.rank {
            return Err(bad());
        }
        self.find(&coords).ok_or_else(bad)
    }
}

/// A diagram automorphism, as a permutation of simple-root indices.
#[derive(Clone, Debug)]
pub struct GraphAut {
    perm: Vec<usize>,
    order: u8,
    /// Action on all roots by index.
    table: Vec<RootId>,
}

impl GraphAut {
    /// The automorphism of the given order (`o2`, `o3`).
    pub fn new(sys: &RootSystem, order: u8) -> Result<GraphAut> {
        let n = sys.rank();
        let bad = || Error::BadAutomorphism(format!("o{order} on {}", sys.name()));
        let perm: Vec<usize> = match (sys.kind(), order) {
            (Kind::A, 2) => (0..n).map(|i| n - 1 - i).collect(),
            (Kind::D, 2) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                p
            }
            (Kind::D, 3) if n == 4 => vec![2, 1, 3, 0],
            (Kind::E, 2) => vec![5, 1, 4, 3, 2, 0],
            _ => return Err(bad()),
        };
        let table = sys
            .roots()
            .map(|r| {
                let c = sys.coords(r);
                let mut img = vec![0i8; n];
                for (i, &ci) in c.iter().enumerate() {
                    img[perm[i]] += ci;
                }
                sys.find(&img).expect("diagram automorphisms permute roots")
            })
            .collect();
        Ok(GraphAut { perm, order, table })
    }

    pub fn parse(sys: &RootSystem, text: &str) -> Result<GraphAut> {
        match text.trim() {
            "o2" | "2" => GraphAut::new(sys, 2),
            "o3" | "3" => GraphAut::new(sys, 3),
            other => Err(Error::BadAutomorphism(other.to_string())),
        }
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, r: RootId) -> RootId {
        self.table[r.index()]
    }

    pub fn apply_pow(&self, r: RootId, k: i32) -> RootId {
        let k = k.rem_euclid(self.order as i32);
        (0..k).fold(r, |x, _| self.apply(x))
    }

    /// Permutes weight coordinates (values on simple coroots).
    pub fn apply_weight(&self, lambda: &[i32]) -> Vec<i32> {
        let mut out = vec![0; lambda.len()];
        for (i, &l) in lambda.iter().enumerate() {
            out[self.perm[i]] = l;
        }
        out
    }
}
