//! Batch checks of closed forms against matrix oracles.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commutator::{commutator_closed_form, commutator_oracle};
use crate::elements::{conj_by_w, conjugation_holds};
use crate::error::Result;
use crate::fold::{ClassId, ClassType, Folded, Tag};
use crate::rep::Rep;
use crate::ring::{aform, Ring};
use crate::word::{evaluate, Letter, LetterKind, Param, Word};

/// Every parameter of a letter of the given kind on class `c`: `R_[c]` for
/// `x`, units (fixed units for `A1`) for `w` and `h`.
pub fn letter_params(folded: &Folded, ring: &Ring, c: ClassId, kind: LetterKind) -> Vec<Param> {
    match (kind, folded.class(c).kind) {
        (LetterKind::X, ClassType::A1) => ring.fixed_subring().into_iter().map(Param::S).collect(),
        (LetterKind::X, ClassType::A2) => aform::all(ring).into_iter().map(Param::P).collect(),
        (LetterKind::X, _) => ring.elements().map(Param::S).collect(),
        (_, ClassType::A1) => ring.fixed_units().into_iter().map(Param::S).collect(),
        _ => ring.units().into_iter().map(Param::S).collect(),
    }
}

/// Per pair type: how many ordered class pairs and instances were checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TagReport {
    pub tag: String,
    pub pairs: usize,
    pub instances: usize,
    pub exhaustive: bool,
    pub failures: usize,
    /// First failure, as `class, class, t, u`.
    pub first_failure: Option<String>,
}

/// Compares the commutator closed form with the matrix oracle for every
/// ordered pair of non-proportional classes. Pairs with at most `cap`
/// parameter combinations are checked exhaustively; the others share
/// `per_tag` random combinations per pair type, at least one each.
/// Results are sorted by tag.
pub fn commutator_sweep(rep: &Rep, ring: &Arc<Ring>, cap: usize, per_tag: usize, seed: u64) -> Result<Vec<TagReport>> {
    let folded = rep.folded();
    let mut pairs = Vec::new();
    let mut tag_count: BTreeMap<Tag, usize> = BTreeMap::new();
    for a in folded.classes() {
        for b in folded.classes() {
            if !folded.proportional(a.id, b.id) {
                pairs.push((a.id, b.id));
                *tag_count.entry(folded.pair_classify(a.id, b.id)?.tag).or_default() += 1;
            }
        }
    }
    let results: Vec<(Tag, usize, bool, usize, Option<String>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(a, b))| -> Result<_> {
            let tag = folded.pair_classify(a, b)?.tag;
            let pa = letter_params(folded, ring, a, LetterKind::X);
            let pb = letter_params(folded, ring, b, LetterKind::X);
            let exhaustive = pa.len() * pb.len() <= cap;
            let combos: Vec<(usize, usize)> = if exhaustive {
                (0..pa.len()).flat_map(|x| (0..pb.len()).map(move |y| (x, y))).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                let samples = per_tag.div_ceil(tag_count[&tag]).max(1);
                (0..samples).map(|_| (rng.gen_range(0..pa.len()), rng.gen_range(0..pb.len()))).collect()
            };
            let (ra, rb) = (folded.class(a).base(), folded.class(b).base());
            let mut failures = 0;
            let mut first = None;
            for &(x, y) in &combos {
                let cf = commutator_closed_form(rep.basis(), ring, ra, &pa[x], rb, &pb[y])?;
                let ok = evaluate(rep, ring, &cf.to_word())? == commutator_oracle(rep, ring, ra, &pa[x], rb, &pb[y])?;
                if !ok {
                    failures += 1;
                    if first.is_none() {
                        first = Some(format!(
                            "{}, {}, {:?}, {:?}",
                            folded.format_class(a),
                            folded.format_class(b),
                            crate::word::param_strings(ring, &pa[x]),
                            crate::word::param_strings(ring, &pb[y])
                        ));
                    }
                }
            }
            Ok((tag, combos.len(), exhaustive, failures, first))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_tag: BTreeMap<Tag, TagReport> = BTreeMap::new();
    for (tag, n, exhaustive, failures, first) in results {
        let e = by_tag.entry(tag).or_insert_with(|| TagReport {
            tag: tag.label().to_string(),
            pairs: 0,
            instances: 0,
            exhaustive: true,
            failures: 0,
            first_failure: None,
        });
        e.pairs += 1;
        e.instances += n;
        e.exhaustive &= exhaustive;
        e.failures += failures;
        if e.first_failure.is_none() {
            e.first_failure = first;
        }
    }
    Ok(by_tag.into_values().collect())
}

/// Conjugation of `x`, `w` and `h` letters by `w_[a](t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub class_pairs: usize,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

/// Checks `conj_by_w` against matrices for every class `[a]`, every unit
/// parameter of `w_[a]` (at most `unit_cap`, evenly spread), every class
/// `[b]` and every letter kind, on `targets` target parameters each.
pub fn conjugation_sweep(rep: &Rep, ring: &Arc<Ring>, unit_cap: usize, targets: usize, seed: u64) -> Result<ConjugationReport> {
    let folded = rep.folded();
    let mut pairs = Vec::new();
    for a in folded.classes() {
        for b in folded.classes() {
            pairs.push((a.id, b.id));
        }
    }
    let results: Vec<(usize, usize, Option<String>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(a, b))| -> Result<_> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let units = letter_params(folded, ring, a, LetterKind::W);
            let step = units.len().div_ceil(unit_cap.max(1)).max(1);
            let (ra, rb) = (folded.class(a).base(), folded.class(b).base());
            let mut n = 0;
            let mut failures = 0;
            let mut first = None;
            for t in units.iter().step_by(step) {
                let Param::S(t) = *t else { continue };
                let g = Word::w(ra, Param::S(t));
                for kind in [LetterKind::X, LetterKind::W, LetterKind::H] {
                    let ps = letter_params(folded, ring, b, kind);
                    for _ in 0..targets {
                        let p = ps[rng.gen_range(0..ps.len())].clone();
                        let target = Letter { kind, root: rb, p };
                        let img = conj_by_w(rep, ring, ra, t, &target)?;
                        n += 1;
                        if !conjugation_holds(rep, ring, &g, &target, &img)? {
                            failures += 1;
                            if first.is_none() {
                                first = Some(format!("w{} t={} on {}{}", folded.format_class(a), ring.format(t), kind.label(), folded.format_class(b)));
                            }
                        }
                    }
                }
            }
            Ok((n, failures, first))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep_out = ConjugationReport { class_pairs: pairs.len(), instances: 0, failures: 0, first_failure: None };
    for (n, f, first) in results {
        rep_out.instances += n;
        rep_out.failures += f;
        if rep_out.first_failure.is_none() {
            rep_out.first_failure = first;
        }
    }
    Ok(rep_out)
}
