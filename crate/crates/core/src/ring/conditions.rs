//! Brute-force checks of the lifting conditions on maximal ideals used by
//! the normality results: surjectivity of `R_th -> (R/I)_th` and of
//! `A(R) -> A(R/I)` for `I` the intersection of the `th`-orbit of a maximal
//! ideal, and `m = R_th ∩ mR` for maximal ideals `m` of `R_th`.

use std::sync::Arc;

use serde::Serialize;

use super::{aform, Elem, Ring, ThetaIdeal};

#[derive(Clone, Debug, Serialize)]
pub struct MaximalIdealReport {
    /// Generators of the maximal ideal, in the ring's element syntax.
    pub generators: Vec<String>,
    pub size: usize,
    /// `R_th -> (R / orbit-intersection)_th` is onto.
    pub fixed_map_onto: bool,
    /// `A(R) -> A(R / orbit-intersection)` is onto (order 2 only).
    pub aform_map_onto: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub descriptor: String,
    pub theta_order: u8,
    pub maximal_ideals: Vec<MaximalIdealReport>,
    pub aform_units_exist: bool,
    /// Order 2: fixed-subring lifting for every maximal ideal.
    pub a1_fixed: Option<bool>,
    /// Order 2: pair lifting for every maximal ideal and `A(R)*` nonempty.
    pub a1_pairs: Option<bool>,
    /// Order 3: fixed-subring lifting through the three-fold intersection.
    pub a1_order3: Option<bool>,
    pub a2: bool,
    /// Number of maximal ideals of the fixed subring.
    pub fixed_maximal_ideals: usize,
}

fn is_nilpotent(r: &Ring, a: Elem) -> bool {
    let mut x = a;
    for _ in 0..=12 {
        if x == Elem::ZERO {
            return true;
        }
        x = r.mul(x, x);
    }
    x == Elem::ZERO
}

/// Maximal ideals of a subring `s` (listed elements, containing 1) of `r`,
/// obtained from its primitive idempotents.
pub fn maximal_ideals_of(r: &Ring, s: &[Elem]) -> Vec<Vec<Elem>> {
    let idem: Vec<Elem> = s.iter().copied().filter(|&e| e != Elem::ZERO && r.mul(e, e) == e).collect();
    let primitive: Vec<Elem> = idem
        .iter()
        .copied()
        .filter(|&e| idem.iter().all(|&f| f == e || r.mul(f, e) != f))
        .collect();
    primitive
        .iter()
        .map(|&e| s.iter().copied().filter(|&a| is_nilpotent(r, r.mul(a, e))).collect())
        .collect()
}

pub fn check_conditions(r: &Arc<Ring>) -> ConditionReport {
    let order = r.theta_order();
    let all_elems: Vec<Elem> = r.elements().collect();
    let maxes = maximal_ideals_of(r, &all_elems);
    let aform_units_exist = !aform::units(r).is_empty();
    let fixed = r.fixed_subring();
    let all_pairs = aform::all(r);

    let mut reports = Vec::new();
    for m in &maxes {
        let ideal = ThetaIdeal::from_elements(r, m).ok();
        // m itself need not be th-stable; its orbit intersection is
        let mut member = vec![true; r.size()];
        for k in 0..order as i32 {
            let mut mk = vec![false; r.size()];
            for &a in m {
                mk[r.theta_pow(a, k).index()] = true;
            }
            for (x, y) in member.iter_mut().zip(&mk) {
                *x &= *y;
            }
        }
        let inter: Vec<Elem> = r.elements().filter(|a| member[a.index()]).collect();
        let inter = ThetaIdeal::from_elements(r, &inter).expect("orbit intersection is th-stable");
        let (q, map) = r.quotient(&inter).expect("same ring");
        let mut hit = vec![false; q.size()];
        for &a in &fixed {
            hit[map[a.index()].index()] = true;
        }
        let fixed_map_onto = q.fixed_subring().iter().all(|b| hit[b.index()]);
        let aform_map_onto = (order == 2).then(|| {
            let mut seen = std::collections::HashSet::new();
            for p in &all_pairs {
                seen.insert((map[p.t.index()], map[p.u.index()]));
            }
            aform::all(&q).iter().all(|p| seen.contains(&(p.t, p.u)))
        });
        let gens = match &ideal {
            Some(i) => i.reduced_generators(),
            None => generators_plain(r, m),
        };
        reports.push(MaximalIdealReport {
            generators: gens.iter().map(|&g| r.format(g)).collect(),
            size: m.len(),
            fixed_map_onto,
            aform_map_onto,
        });
    }

    let fixed_maxes = maximal_ideals_of(r, &fixed);
    let a2 = fixed_maxes.iter().all(|mt| {
        let extended = ThetaIdeal::new(r, mt);
        let back: Vec<Elem> = fixed.iter().copied().filter(|&a| extended.contains(a)).collect();
        let mut lhs = mt.clone();
        lhs.sort();
        lhs == back
    });

    let all_fixed_onto = reports.iter().all(|m| m.fixed_map_onto);
    ConditionReport {
        descriptor: r.descriptor().to_string(),
        theta_order: order,
        aform_units_exist,
        a1_fixed: (order == 2).then_some(all_fixed_onto),
        a1_pairs: (order == 2)
            .then(|| aform_units_exist && reports.iter().all(|m| m.aform_map_onto == Some(true))),
        a1_order3: (order == 3).then_some(all_fixed_onto),
        a2,
        fixed_maximal_ideals: fixed_maxes.len(),
        maximal_ideals: reports,
    }
}

/// Greedy additive-and-multiplicative generating set for an ideal that is
/// not `th`-stable.
fn generators_plain(r: &Ring, m: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; r.size()];
    let mut gens = Vec::new();
    for &a in m {
        if member[a.index()] {
            continue;
        }
        gens.push(a);
        let mut span = vec![Elem::ZERO];
        let mut mark = vec![false; r.size()];
        mark[0] = true;
        let mults: Vec<Elem> = gens.iter().flat_map(|&g| r.elements().map(move |x| (g, x))).map(|(g, x)| r.mul(g, x)).collect();
        let mut i = 0;
        while i < span.len() {
            let s = span[i];
            for &p in &mults {
                let t = r.add(s, p);
                if !mark[t.index()] {
                    mark[t.index()] = true;
                    span.push(t);
                }
            }
            i += 1;
        }
        member = mark;
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_satisfy_everything() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let rep = check_conditions(&r);
        assert_eq!(rep.maximal_ideals.len(), 1);
        assert_eq!(rep.a1_fixed, Some(true));
        assert_eq!(rep.a1_pairs, Some(true));
        assert!(rep.a2);
        let r = Ring::make("gf(343;frob)").unwrap();
        let rep = check_conditions(&r);
        assert_eq!(rep.a1_order3, Some(true));
        assert!(rep.a2);
    }

    #[test]
    fn product_ring_has_two_maximal_ideals() {
        let r = Ring::make("prod2(gf(3))").unwrap();
        let rep = check_conditions(&r);
        assert_eq!(rep.maximal_ideals.len(), 2);
        assert_eq!(rep.a1_fixed, Some(true));
        assert_eq!(rep.a1_pairs, Some(true));
        assert!(rep.a2);
    }

    #[test]
    fn local_dual_ring() {
        let r = Ring::make("dual(gf(9;frob);2)").unwrap();
        let rep = check_conditions(&r);
        assert_eq!(rep.maximal_ideals.len(), 1);
        assert_eq!(rep.maximal_ideals[0].size, 9);
        assert_eq!(rep.a1_fixed, Some(true));
        assert_eq!(rep.a1_pairs, Some(true));
        assert!(rep.a2);
    }
}
