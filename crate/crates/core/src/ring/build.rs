use std::sync::Arc;

use super::{Elem, Layout, Ring, ThetaIdeal};
use crate::error::{Error, Result};

/// Largest ring (number of elements) that will be tabulated.
pub const MAX_RING_SIZE: usize = 2048;

fn desc_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Descriptor { input: input.to_string(), reason: reason.into() }
}

pub(crate) fn parse_descriptor(input: &str) -> Result<Arc<Ring>> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = DescParser { src: &compact, pos: 0, full: input };
    let ring = p.ring()?;
    if p.pos != compact.len() {
        return Err(desc_err(input, format!("trailing input at offset {}", p.pos)));
    }
    Ok(ring)
}

struct DescParser<'a> {
    src: &'a str,
    pos: usize,
    full: &'a str,
}

impl<'a> DescParser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(desc_err(self.full, format!("expected `{tok}` at offset {}", self.pos)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(desc_err(self.full, format!("expected a number at offset {}", self.pos)));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| desc_err(self.full, "number out of range"))
    }

    fn ring(&mut self) -> Result<Arc<Ring>> {
        if self.eat("gf(") {
            let q = self.number()?;
            let mut frob_power = 0u32;
            if self.eat(";") {
                self.expect("frob")?;
                frob_power = 1;
                if self.eat("^") {
                    frob_power = self.number()? as u32;
                }
            }
            self.expect(")")?;
            gf(self.full, q, frob_power)
        } else if self.eat("prod2(") {
            let base = self.ring()?;
            self.expect(")")?;
            product(base, 2)
        } else if self.eat("prod3(") {
            let base = self.ring()?;
            self.expect(")")?;
            product(base, 3)
        } else if self.eat("dual(") {
            let base = self.ring()?;
            let mut m = 2;
            if self.eat(";") {
                m = self.number()? as usize;
            }
            self.expect(")")?;
            if m < 1 {
                return Err(desc_err(self.full, "truncation degree must be at least 1"));
            }
            dual(base, m)
        } else {
            Err(desc_err(self.full, format!("unknown constructor at offset {}", self.pos)))
        }
    }
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_RING_SIZE {
        Err(Error::RingTooLarge(n, MAX_RING_SIZE))
    } else {
        Ok(())
    }
}

fn gf(full: &str, q: u64, frob_power: u32) -> Result<Arc<Ring>> {
    let (p, k) = prime_power(q).ok_or_else(|| desc_err(full, format!("{q} is not a prime power")))?;
    check_size(q as usize)?;
    let n = q as usize;
    let frob_power = if k == 0 { 0 } else { frob_power % k };
    let descriptor = match frob_power {
        0 => format!("gf({q})"),
        1 => format!("gf({q};frob)"),
        j => format!("gf({q};frob^{j})"),
    };
    if k == 1 {
        let pu = p as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % pu) as u16;
                mul[a * n + b] = ((a * b) % pu) as u16;
            }
        }
        let theta = (0..n as u16).collect();
        return Ok(Arc::new(Ring::from_tables(
            descriptor,
            Layout::Prime,
            n,
            add,
            mul,
            theta,
            Elem(1),
        )));
    }
    let modulus = primitive_modulus(p, k);
    // log/antilog tables with respect to the primitive element x
    let mut antilog = vec![0usize; n - 1];
    let mut log = vec![usize::MAX; n];
    let mut cur = vec![0u32; k as usize];
    cur[0] = 1;
    for (i, slot) in antilog.iter_mut().enumerate() {
        let idx = digits_to_index(&cur, p);
        *slot = idx;
        log[idx] = i;
        cur = times_x(&cur, &modulus, p);
    }
    let digits: Vec<Vec<u32>> = (0..n).map(|i| index_to_digits(i, p, k)).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let s: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * n + b] = digits_to_index(&s, p) as u16;
            if a != 0 && b != 0 {
                mul[a * n + b] = antilog[(log[a] + log[b]) % (n - 1)] as u16;
            }
        }
    }
    let mut theta = vec![0u16; n];
    let exponent = (p as usize).pow(frob_power);
    for a in 1..n {
        theta[a] = antilog[(log[a] * exponent) % (n - 1)] as u16;
    }
    Ok(Arc::new(Ring::from_tables(
        descriptor,
        Layout::Ext { p, k, modulus },
        n,
        add,
        mul,
        theta,
        Elem(1),
    )))
}

fn index_to_digits(mut i: usize, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (i % p as usize) as u32;
            i /= p as usize;
            d
        })
        .collect()
}

fn digits_to_index(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Multiplies a residue (coefficients low to high) by `x` modulo the monic
/// polynomial `x^k + sum modulus[i] x^i`.
fn times_x(c: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = c.len();
    let top = c[k - 1];
    let mut out = vec![0u32; k];
    for i in (1..k).rev() {
        out[i] = c[i - 1];
    }
    for i in 0..k {
        out[i] = (out[i] + (p - modulus[i]) * top) % p;
    }
    out
}

/// First monic polynomial of degree `k` (lower coefficients ordered as a
/// base-`p` number) for which `x` generates the multiplicative group.
fn primitive_modulus(p: u32, k: u32) -> Vec<u32> {
    let q = (p as usize).pow(k);
    for idx in 0..q {
        let modulus = index_to_digits(idx, p, k);
        if modulus[0] == 0 {
            continue;
        }
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        let mut order = 0;
        loop {
            cur = times_x(&cur, &modulus, p);
            order += 1;
            if cur.iter().enumerate().all(|(i, &c)| c == u32::from(i == 0)) || order >= q {
                break;
            }
        }
        if order == q - 1 {
            return modulus;
        }
    }
    unreachable!("a primitive polynomial always exists")
}

fn product(base: Arc<Ring>, m: usize) -> Result<Arc<Ring>> {
    let nb = base.size();
    let n = nb.checked_pow(m as u32).unwrap_or(usize::MAX);
    check_size(n)?;
    let split = |mut i: usize| -> Vec<usize> {
        (0..m)
            .map(|_| {
                let d = i % nb;
                i /= nb;
                d
            })
            .collect()
    };
    let join = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &c| acc * nb + c);
    let comps: Vec<Vec<usize>> = (0..n).map(split).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let s: Vec<usize> = (0..m)
                .map(|i| base.add(Elem(comps[a][i] as u16), Elem(comps[b][i] as u16)).index())
                .collect();
            let t: Vec<usize> = (0..m)
                .map(|i| base.mul(Elem(comps[a][i] as u16), Elem(comps[b][i] as u16)).index())
                .collect();
            add[a * n + b] = join(&s) as u16;
            mul[a * n + b] = join(&t) as u16;
        }
    }
    let theta = (0..n)
        .map(|a| {
            let c = &comps[a];
            let shifted: Vec<usize> = (0..m).map(|i| c[(i + m - 1) % m]).collect();
            join(&shifted) as u16
        })
        .collect();
    let one = join(&vec![base.one().index(); m]);
    let descriptor = format!("prod{m}({})", base.descriptor());
    Ok(Arc::new(Ring::from_tables(
        descriptor,
        Layout::Product { base, m },
        n,
        add,
        mul,
        theta,
        Elem(one as u16),
    )))
}

fn dual(base: Arc<Ring>, m: usize) -> Result<Arc<Ring>> {
    let nb = base.size();
    let n = nb.checked_pow(m as u32).unwrap_or(usize::MAX);
    check_size(n)?;
    let split = |mut i: usize| -> Vec<Elem> {
        (0..m)
            .map(|_| {
                let d = i % nb;
                i /= nb;
                Elem(d as u16)
            })
            .collect()
    };
    let join = |d: &[Elem]| d.iter().rev().fold(0usize, |acc, c| acc * nb + c.index());
    let coeffs: Vec<Vec<Elem>> = (0..n).map(split).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let s: Vec<Elem> = (0..m).map(|i| base.add(coeffs[a][i], coeffs[b][i])).collect();
            let mut t = vec![Elem::ZERO; m];
            for i in 0..m {
                if coeffs[a][i] == Elem::ZERO {
                    continue;
                }
                for j in 0..m - i {
                    t[i + j] = base.add(t[i + j], base.mul(coeffs[a][i], coeffs[b][j]));
                }
            }
            add[a * n + b] = join(&s) as u16;
            mul[a * n + b] = join(&t) as u16;
        }
    }
    let theta = (0..n)
        .map(|a| {
            let t: Vec<Elem> = coeffs[a].iter().map(|&c| base.theta(c)).collect();
            join(&t) as u16
        })
        .collect();
    let one = base.one().index();
    let descriptor = format!("dual({};{m})", base.descriptor());
    Ok(Arc::new(Ring::from_tables(
        descriptor,
        Layout::Dual { base, m },
        n,
        add,
        mul,
        theta,
        Elem(one as u16),
    )))
}

pub(crate) fn quotient(parent: &Arc<Ring>, ideal: &ThetaIdeal) -> Result<(Arc<Ring>, Vec<Elem>)> {
    if ideal.ring().id() != parent.id() {
        return Err(Error::RingMismatch);
    }
    let np = parent.size();
    let mut coset = vec![u16::MAX; np];
    let mut reps = Vec::new();
    let members = ideal.elements();
    for a in parent.elements() {
        if coset[a.index()] != u16::MAX {
            continue;
        }
        let c = reps.len() as u16;
        reps.push(a);
        for &j in members {
            coset[parent.add(a, j).index()] = c;
        }
    }
    let n = reps.len();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            add[i * n + j] = coset[parent.add(a, b).index()];
            mul[i * n + j] = coset[parent.mul(a, b).index()];
        }
    }
    let theta = reps.iter().map(|&a| coset[parent.theta(a).index()]).collect();
    let one = Elem(coset[parent.one().index()]);
    let gens: Vec<String> = ideal.generators().iter().map(|&g| parent.format(g)).collect();
    let descriptor = format!("{}/({})", parent.descriptor(), gens.join(","));
    let map = coset.iter().map(|&c| Elem(c)).collect();
    let ring = Ring::from_tables(
        descriptor,
        Layout::Quotient { parent: parent.clone(), reps, coset },
        n,
        add,
        mul,
        theta,
        one,
    );
    Ok((Arc::new(ring), map))
}

pub(crate) fn format_elem(ring: &Ring, a: Elem) -> String {
    match ring.layout() {
        Layout::Prime => a.index().to_string(),
        Layout::Ext { p, k, .. } => {
            let d = index_to_digits(a.index(), *p, *k);
            let mut terms = Vec::new();
            for (i, &c) in d.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                let term = match i {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{i}"),
                };
                terms.push(term);
            }
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        }
        Layout::Product { base, .. } => {
            let comps = ring.components(a).expect("product layout");
            let parts: Vec<String> = comps.iter().map(|&c| base.format(c)).collect();
            format!("({})", parts.join(","))
        }
        Layout::Dual { base, m } => {
            let nb = base.size();
            let mut i = a.index();
            let mut terms = Vec::new();
            for deg in 0..*m {
                let c = Elem((i % nb) as u16);
                i /= nb;
                if c == Elem::ZERO {
                    continue;
                }
                let cs = base.format(c);
                let mono = if deg == 1 { "e".to_string() } else { format!("e^{deg}") };
                let term = if deg == 0 {
                    cs
                } else if c == base.one() {
                    mono
                } else if cs.contains('+') {
                    format!("({cs})*{mono}")
                } else {
                    format!("{cs}*{mono}")
                };
                terms.push(term);
            }
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        }
        Layout::Quotient { parent, reps, .. } => format!("[{}]", parent.format(reps[a.index()])),
    }
}

/// Embeds an element of the immediate base ring of a dual or quotient
/// layer, or builds a product element from components.
pub(crate) fn embed_base(ring: &Ring, b: Elem) -> Elem {
    match ring.layout() {
        Layout::Dual { .. } => Elem(b.0),
        Layout::Quotient { coset, .. } => Elem(coset[b.index()]),
        Layout::Product { base, m } => {
            let nb = base.size();
            let mut idx = 0usize;
            for _ in 0..*m {
                idx = idx * nb + b.index();
            }
            Elem(idx as u16)
        }
        _ => b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_moduli_are_stable() {
        assert_eq!(primitive_modulus(3, 2), vec![2, 1]);
        let m = primitive_modulus(7, 3);
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(343), Some((7, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn descriptors_normalise() {
        let r = parse_descriptor(" dual( gf(9; frob) ; 2 )").unwrap();
        assert_eq!(r.descriptor(), "dual(gf(9;frob);2)");
        assert_eq!(r.size(), 81);
        assert!(matches!(parse_descriptor("gf(9;frob"), Err(Error::Descriptor { .. })));
        assert!(matches!(parse_descriptor("dual(gf(81;frob);3)"), Err(Error::RingTooLarge(..))));
    }

    #[test]
    fn quotient_of_dual_is_base_field() {
        let r = parse_descriptor("dual(gf(9;frob);2)").unwrap();
        let e = r.epsilon().unwrap();
        let j = ThetaIdeal::new(&r, &[e]);
        let (q, map) = r.quotient(&j).unwrap();
        assert_eq!(q.size(), 9);
        assert_eq!(q.units().len(), 8);
        assert_eq!(map[e.index()], q.zero());
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(map[r.mul(a, b).index()], q.mul(map[a.index()], map[b.index()]));
            }
        }
        assert_eq!(q.theta_order(), 2);
    }
}
