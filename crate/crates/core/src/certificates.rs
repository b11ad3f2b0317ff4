//! Word certificates for generators of relative elementary subgroups.
//!
//! Three constructions are provided: a commutator expression for every
//! generator `x_[a](u)` with `u` in a level (`certify_generator_commutator`),
//! a split of a negative generator into one commutator and a residual
//! (`certify_negroot_split`), and the normal closure of a single root
//! element (`certify_normal_closure`). Every certificate is an identity of
//! words that `verify_certificate` checks by exact matrix evaluation.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::SignedBasis;
use crate::commutator::commutator_closed_form;
use crate::congruence::{param_in_ideal, param_kind};
use crate::elements::conj_by_w;
use crate::error::{Error, Result};
use crate::fold::{ClassId, ClassType, Folded};
use crate::rep::{Rep, RepKind};
use crate::ring::{aform, AForm, Component, Elem, Expr, Ring, ThetaIdeal};
use crate::word::{evaluate, parse_word, Letter, LetterKind, Node, Param, SymParam, SymWord, Word};

/// Variable assignment for symbolic certificates.
pub type Env = Vec<(String, Elem)>;

fn lookup(env: &Env) -> impl Fn(&str) -> Option<Elem> + '_ {
    move |v| env.iter().find(|(n, _)| n == v).map(|(_, e)| *e)
}

/// A word identity `lhs = rhs` in a folded system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub system: String,
    pub order: String,
    pub lhs: SymWord,
    pub rhs: SymWord,
    pub provenance: String,
}

impl Certificate {
    fn new(folded: &Folded, lhs: SymWord, rhs: SymWord, provenance: String) -> Certificate {
        Certificate {
            system: folded.system().name(),
            order: format!("o{}", folded.order()),
            lhs,
            rhs,
            provenance,
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v = self.lhs.vars();
        for x in self.rhs.vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }

    pub fn claim(&self, folded: &Folded) -> String {
        format!("{} = {}", self.lhs.format(folded), self.rhs.format(folded))
    }

    /// Text block read back by `parse_certificates`.
    pub fn to_text(&self, folded: &Folded) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "certificate");
        let _ = writeln!(s, "system\t{}\t{}", self.system, self.order);
        let _ = writeln!(s, "provenance\t{}", self.provenance);
        let _ = writeln!(s, "lhs\t{}", self.lhs.format(folded));
        let _ = writeln!(s, "rhs\t{}", self.rhs.format(folded));
        let _ = writeln!(s, "end");
        s
    }

    /// The class and argument expressions of a single-letter lhs.
    pub fn target(&self, folded: &Folded) -> Option<(ClassId, Vec<Expr>)> {
        match &self.lhs {
            Node::L(l) if l.kind == LetterKind::X => Some((folded.class_of(l.root), l.p.0.clone())),
            _ => None,
        }
    }
}

/// Parses the blocks written by `Certificate::to_text`.
pub fn parse_certificates(text: &str) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    let mut cur: Option<(String, String, String, Option<String>, Option<String>)> = None;
    let mut folded_cache: HashMap<(String, String), Arc<Folded>> = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |m: &str| Error::WordParse(format!("line {}: {m}", no + 1));
        let (key, rest) = line.split_once('\t').unwrap_or((line, ""));
        match key {
            "certificate" => cur = Some((String::new(), String::new(), String::new(), None, None)),
            "system" => {
                let c = cur.as_mut().ok_or_else(|| bad("system outside a block"))?;
                let (s, o) = rest.split_once('\t').ok_or_else(|| bad("system needs a type and an order"))?;
                c.0 = s.to_string();
                c.1 = o.to_string();
            }
            "provenance" => cur.as_mut().ok_or_else(|| bad("provenance outside a block"))?.2 = rest.to_string(),
            "lhs" => cur.as_mut().ok_or_else(|| bad("lhs outside a block"))?.3 = Some(rest.to_string()),
            "rhs" => cur.as_mut().ok_or_else(|| bad("rhs outside a block"))?.4 = Some(rest.to_string()),
            "end" => {
                let (s, o, prov, lhs, rhs) = cur.take().ok_or_else(|| bad("end outside a block"))?;
                let key = (s.clone(), o.clone());
                let folded = match folded_cache.get(&key) {
                    Some(f) => f.clone(),
                    None => {
                        let f = Arc::new(Folded::parse(&s, &o)?);
                        folded_cache.insert(key, f.clone());
                        f
                    }
                };
                let lhs = parse_word(&lhs.ok_or_else(|| bad("missing lhs"))?, &folded)?;
                let rhs = parse_word(&rhs.ok_or_else(|| bad("missing rhs"))?, &folded)?;
                out.push(Certificate { system: s, order: o, lhs, rhs, provenance: prov });
            }
            other => return Err(bad(&format!("unknown key {other:?}"))),
        }
    }
    if cur.is_some() {
        return Err(Error::WordParse("unterminated certificate block".into()));
    }
    Ok(out)
}

/// True iff both sides evaluate to the same matrix under `env`.
pub fn verify_certificate(cert: &Certificate, rep: &Rep, ring: &Arc<Ring>, env: &Env) -> Result<bool> {
    let folded = rep.folded();
    let f = lookup(env);
    let lhs = cert.lhs.instantiate(folded, ring, &f)?;
    let rhs = cert.rhs.instantiate(folded, ring, &f)?;
    Ok(evaluate(rep, ring, &lhs)? == evaluate(rep, ring, &rhs)?)
}

/// Variable names used for the parameter of a class.
pub fn param_vars(kind: ClassType) -> Vec<String> {
    match kind {
        ClassType::A2 => vec!["u1".into(), "u2".into()],
        _ => vec!["u".into()],
    }
}

/// Assignments of the lhs variables ranging over `J_[a]` for the lhs class;
/// all of them if there are at most `cap`, otherwise `cap` sampled ones.
pub fn level_assignments(cert: &Certificate, folded: &Folded, ideal: &ThetaIdeal, cap: usize, seed: u64) -> Result<Vec<Env>> {
    let vars = cert.vars();
    if vars.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let (c, args) = cert.target(folded).ok_or_else(|| Error::Precondition("lhs is not a single x letter".into()))?;
    let kind = folded.class(c).kind;
    let names = param_vars(kind);
    if args.iter().map(|a| a.to_string()).collect::<Vec<_>>() != names {
        return Err(Error::Precondition("lhs arguments are not the plain level variables".into()));
    }
    let mut all: Vec<Env> = match ideal.component(param_kind(kind)) {
        Component::Scalars(v) => v.into_iter().map(|a| vec![(names[0].clone(), a)]).collect(),
        Component::Pairs(v) => v.into_iter().map(|p| vec![(names[0].clone(), p.t), (names[1].clone(), p.u)]).collect(),
    };
    if all.len() > cap {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        all.shuffle(&mut rng);
        all.truncate(cap);
    }
    Ok(all)
}

/// Checks a certificate for every assignment from `level_assignments`.
/// Returns the number of assignments checked, or the first failing one.
pub fn verify_over_level(
    cert: &Certificate,
    rep: &Rep,
    ring: &Arc<Ring>,
    ideal: &ThetaIdeal,
    cap: usize,
) -> Result<std::result::Result<usize, Env>> {
    let envs = level_assignments(cert, rep.folded(), ideal, cap, 11)?;
    for env in &envs {
        if !verify_certificate(cert, rep, ring, env)? {
            return Ok(Err(env.clone()));
        }
    }
    Ok(Ok(envs.len()))
}

/// Literal expression for a ring element.
pub fn literal(ring: &Ring, a: Elem) -> Expr {
    Expr::parse(&ring.format(a)).unwrap_or(Expr::Index(a.index()))
}

/// A concrete word with its parameters written as literals.
pub fn symbolic(ring: &Ring, word: &Word) -> Result<SymWord> {
    word.map(&mut |l| {
        let args = match &l.p {
            Param::S(a) => vec![literal(ring, *a)],
            Param::P(q) => vec![literal(ring, q.t), literal(ring, q.u)],
            Param::PP(p, q) => vec![literal(ring, p.t), literal(ring, p.u), literal(ring, q.t), literal(ring, q.u)],
            Param::V(v) => v.iter().map(|&a| literal(ring, a)).collect(),
        };
        Ok(Letter { kind: l.kind, root: l.root, p: SymParam(args) })
    })
}

// ---------------------------------------------------------------- probing

/// The ring used to freeze signs and constants: the smallest Frobenius
/// field of characteristic at least 7 for the automorphism order, so that
/// the constants `+-1, +-1/2, +-1/4` are pairwise distinct.
pub fn probe_ring(order: u8) -> Result<Arc<Ring>> {
    match order {
        2 => Ring::make("gf(49;frob)"),
        3 => Ring::make("gf(343;frob)"),
        k => Err(Error::BadAutomorphism(format!("order {k}"))),
    }
}

struct Probe<'a> {
    basis: &'a Arc<SignedBasis>,
    ring: Arc<Ring>,
    rep: Rep,
    samples: Vec<Env>,
}

fn shape(folded: &Folded, ring: &Ring, c: ClassId, vals: &[Elem]) -> Result<Param> {
    match (folded.class(c).kind, vals) {
        (ClassType::A2, [t, u]) => Ok(Param::P(AForm::new(ring, *t, *u)?)),
        (ClassType::A1, [t]) if !ring.is_fixed(*t) => Err(Error::BadParam("not fixed".into())),
        (ClassType::A2, _) => Err(Error::BadParam("A2 class needs a pair".into())),
        (_, [t]) => Ok(Param::S(*t)),
        _ => Err(Error::BadParam("one argument expected".into())),
    }
}

fn eval_param(folded: &Folded, ring: &Ring, c: ClassId, args: &[Expr], env: &Env) -> Result<Param> {
    let f = lookup(env);
    let vals = args.iter().map(|e| e.eval(ring, &f)).collect::<Result<Vec<_>>>()?;
    shape(folded, ring, c, &vals)
}

fn random_samples(folded: &Folded, ring: &Ring, kind: ClassType, n: usize, seed: u64) -> Vec<Env> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = param_vars(kind);
    let mut out = Vec::new();
    let _ = folded;
    match kind {
        ClassType::A2 => {
            let pool: Vec<AForm> = aform::all(ring).into_iter().filter(|p| ring.is_unit(p.t)).collect();
            for _ in 0..n {
                let p = *pool.choose(&mut rng).expect("unit forms exist");
                out.push(vec![(names[0].clone(), p.t), (names[1].clone(), p.u)]);
            }
        }
        _ => {
            let pool: Vec<Elem> = if kind == ClassType::A1 { ring.fixed_units() } else { ring.units() };
            let pool: Vec<Elem> = pool.into_iter().filter(|&a| a != ring.one() && a != ring.neg(ring.one())).collect();
            for _ in 0..n {
                out.push(vec![(names[0].clone(), *pool.choose(&mut rng).expect("units exist"))]);
            }
        }
    }
    out
}

/// How a target class sits with a companion inside a rank-2 subsystem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Case {
    /// Same length: an `A2` subsystem.
    SameLength,
    /// `B2`, target long.
    LongInB2,
    /// `B2`, target short.
    ShortInB2,
    /// `G2`, target short.
    ShortInG2,
}

fn companion_case(folded: &Folded, a: ClassId, b: ClassId) -> Option<Case> {
    if folded.proportional(a, b) || folded.folded_sum(a, b, 1, -1).is_some() || folded.folded_sum(a, b, 1, 1).is_none() {
        return None;
    }
    let (la, lb) = (folded.is_long(a), folded.is_long(b));
    if la == lb {
        return Some(Case::SameLength);
    }
    let g2 = folded.folded_sum(a, b, 1, 3).is_some() || folded.folded_sum(a, b, 3, 1).is_some();
    match (la, g2) {
        (true, false) => Some(Case::LongInB2),
        (false, false) => Some(Case::ShortInB2),
        (false, true) => Some(Case::ShortInG2),
        // long classes of G2 use a long companion instead
        (true, true) => None,
    }
}

struct Template {
    first: (ClassId, Vec<Expr>),
    second: (ClassId, Vec<Expr>),
}

fn one() -> Expr {
    Expr::Int(1)
}

fn neg(e: Expr) -> Expr {
    Expr::Neg(Box::new(e))
}

fn signed(e: &Expr) -> [Expr; 2] {
    [e.clone(), neg(e.clone())]
}

fn theta_variants(e: &Expr, order: u8) -> Vec<Expr> {
    (0..order).map(|k| e.clone().th_pow(k)).collect()
}

fn both_orders(out: &mut Vec<Template>, p: (ClassId, Vec<Expr>), q: (ClassId, Vec<Expr>)) {
    out.push(Template { first: p.clone(), second: q.clone() });
    out.push(Template { first: q, second: p });
}

fn templates(folded: &Folded, case: Case, a: ClassId, b: ClassId, arg: &[Expr]) -> Vec<Template> {
    let order = folded.order();
    let kind = folded.class(a).kind;
    let mut out = Vec::new();
    let nb = folded.neg(b);
    match case {
        Case::SameLength => {
            let p = folded.folded_sum(a, b, 1, 1).expect("connected");
            let vs = if kind == ClassType::A1 { vec![arg[0].clone()] } else { theta_variants(&arg[0], order) };
            for c in signed(&one()) {
                for v in &vs {
                    both_orders(&mut out, (p, vec![c.clone()]), (nb, vec![v.clone()]));
                }
            }
        }
        Case::LongInB2 => {
            let p = folded.folded_sum(a, b, 1, 1).expect("connected");
            if folded.class(p).kind == ClassType::A2 {
                let norm = (arg[0].clone() * arg[0].clone().th()).half();
                for c in signed(&one()) {
                    for v in theta_variants(&arg[0], order) {
                        both_orders(&mut out, (p, vec![c.clone(), one().half()]), (nb, vec![v, norm.clone()]));
                    }
                }
            } else {
                for c in signed(&one().half()) {
                    both_orders(&mut out, (p, vec![c]), (nb, vec![arg[0].clone()]));
                }
            }
        }
        Case::ShortInB2 => {
            let p = folded.folded_sum(a, b, 1, 1).expect("connected");
            if kind == ClassType::A2 {
                let mut vs = Vec::new();
                for t in theta_variants(&arg[0], order) {
                    for s in signed(&t) {
                        for u in theta_variants(&arg[1], order) {
                            vs.push(vec![s.clone(), u]);
                        }
                    }
                }
                for c in signed(&one()) {
                    for v in &vs {
                        both_orders(&mut out, (nb, vec![c.clone()]), (p, v.clone()));
                    }
                }
            } else {
                for c in signed(&one()) {
                    for t in theta_variants(&arg[0], order) {
                        for v in signed(&t) {
                            both_orders(&mut out, (nb, vec![c.clone()]), (p, vec![v]));
                        }
                    }
                }
            }
        }
        Case::ShortInG2 => {
            let p = folded.folded_sum(a, b, 2, 1).expect("G2 pair");
            let q = folded.folded_sum(a, b, -1, -1).expect("G2 pair");
            let u = arg[0].clone();
            let q1 = (u.clone() + u.clone().th() - u.clone().th_pow(2)).half();
            let q2 = (u.clone() + u.clone().th_pow(2) - u.th()).half();
            for v in [q1, q2] {
                for sv in signed(&v) {
                    for c in signed(&one()) {
                        both_orders(&mut out, (p, vec![sv.clone()]), (q, vec![c]));
                    }
                }
            }
        }
    }
    out
}

/// Candidate expressions for an extra scalar factor of a commutator whose
/// target argument is `arg`.
fn extra_candidates(arg: &[Expr], order: u8) -> Vec<Expr> {
    let mut monos: Vec<Expr> = Vec::new();
    if arg.len() == 1 {
        let p = arg[0].clone();
        let (p1, p2) = (p.clone().th(), p.clone().th_pow(2));
        monos.push(p.clone());
        monos.push(p1.clone());
        monos.push(p.clone() * p1.clone());
        monos.push(p.clone() + p1.clone());
        monos.push(p.clone() - p1.clone());
        monos.push(p.clone() * p.clone());
        if order == 3 {
            monos.push(p2.clone());
            monos.push(p.clone() * p2.clone());
            monos.push(p1.clone() * p2.clone());
            monos.push(p.clone() * p1.clone() * p2.clone());
            let s = p.clone() + p1.clone() + p2.clone();
            monos.push(s.clone());
            monos.push(s.pow(2));
            let sq = p.clone().pow(2) + p1.clone().pow(2) + p2.clone().pow(2);
            let cross = p.clone() * p1.clone() + p1.clone() * p2.clone() + p.clone() * p2;
            monos.push(sq - Expr::Int(2) * cross);
        }
    } else {
        let (t, u) = (arg[0].clone(), arg[1].clone());
        monos.push(t.clone());
        monos.push(t.clone().th());
        monos.push(u.clone());
        monos.push(u.clone().th());
        monos.push(t.clone() * t.th());
        monos.push(u.clone() - u.th());
    }
    let mut out = vec![Expr::Int(0)];
    for m in monos {
        out.push(m.clone());
        out.push(neg(m.clone()));
        for d in [2, 4] {
            out.push(m.clone().div(Expr::Int(d)));
            out.push(neg(m.clone().div(Expr::Int(d))));
        }
    }
    out
}

fn subsystem_name(case: Case) -> &'static str {
    match case {
        Case::SameLength => "A2",
        Case::LongInB2 | Case::ShortInB2 => "B2",
        Case::ShortInG2 => "G2",
    }
}

fn class_words(folded: &Folded, c: ClassId) -> String {
    let len = match folded.length_types() {
        (_, None) => "",
        _ if folded.is_long(c) => "long ",
        _ => "short ",
    };
    format!("{len}{} class", folded.class(c).kind.label())
}

impl Probe<'_> {
    fn certify(&self, target: ClassId, arg: &[Expr], depth: usize) -> Result<(SymWord, String)> {
        if depth > 4 {
            return Err(Error::Internal("certificate recursion too deep".into()));
        }
        let folded = self.basis.folded();
        let want = self
            .samples
            .iter()
            .map(|env| eval_param(folded, &self.ring, target, arg, env))
            .collect::<Result<Vec<_>>>()?;
        for b in folded.classes() {
            let Some(case) = companion_case(folded, target, b.id) else { continue };
            for tpl in templates(folded, case, target, b.id, arg) {
                if let Some((rhs, extras)) = self.try_template(target, arg, &want, &tpl, depth)? {
                    let tag = folded.pair_classify(tpl.first.0, tpl.second.0)?.tag.label();
                    let mut prov = format!(
                        "{} via {} companion {}, commutator of pair type {}",
                        class_words(folded, target),
                        subsystem_name(case),
                        folded.system().format(b.base()),
                        tag
                    );
                    if !extras.is_empty() {
                        let _ = write!(prov, "; peeled {{{}}}", extras.join("; "));
                    }
                    return Ok((rhs, prov));
                }
            }
        }
        Err(Error::Internal(format!("no commutator template for class {}", folded.format_class(target))))
    }

    #[allow(clippy::type_complexity)]
    fn try_template(
        &self,
        target: ClassId,
        arg: &[Expr],
        want: &[Param],
        tpl: &Template,
        depth: usize,
    ) -> Result<Option<(SymWord, Vec<String>)>> {
        let folded = self.basis.folded();
        let ring = &self.ring;
        let (c1, a1) = &tpl.first;
        let (c2, a2) = &tpl.second;
        let (r1, r2) = (folded.class(*c1).base(), folded.class(*c2).base());
        let mut layout: Option<Vec<ClassId>> = None;
        let mut values: Vec<Vec<Param>> = Vec::new();
        for env in &self.samples {
            let (Ok(p1), Ok(p2)) = (eval_param(folded, ring, *c1, a1, env), eval_param(folded, ring, *c2, a2, env)) else {
                return Ok(None);
            };
            let cf = commutator_closed_form(self.basis, ring, r1, &p1, r2, &p2)?;
            let classes: Vec<ClassId> = cf.classes(folded);
            match &layout {
                None => layout = Some(classes),
                Some(l) if *l != classes => return Ok(None),
                _ => {}
            }
            values.push(cf.factors.into_iter().map(|l| l.p).collect());
        }
        let layout = layout.unwrap_or_default();
        let hits: Vec<usize> = (0..layout.len()).filter(|&k| layout[k] == target).collect();
        let [k] = hits[..] else { return Ok(None) };
        if !values.iter().zip(want).all(|(v, w)| &v[k] == w) {
            return Ok(None);
        }
        let cands = extra_candidates(arg, folded.order());
        let mut extra_exprs: Vec<Option<Expr>> = Vec::new();
        for (j, &c) in layout.iter().enumerate() {
            if j == k {
                extra_exprs.push(None);
                continue;
            }
            if folded.class(c).kind == ClassType::A2 {
                return Ok(None);
            }
            let found = cands.iter().find(|e| {
                self.samples.iter().zip(&values).all(|(env, v)| {
                    eval_param(folded, ring, c, std::slice::from_ref(e), env).map(|p| p == v[j]).unwrap_or(false)
                })
            });
            match found {
                Some(e) => extra_exprs.push(Some(e.clone())),
                None => return Ok(None),
            }
        }
        let main = SymWord::comm(SymWord::x(r1, a1.clone()), SymWord::x(r2, a2.clone()));
        let mut before = Vec::new();
        let mut after = Vec::new();
        let mut provs = Vec::new();
        for (j, e) in extra_exprs.iter().enumerate() {
            let Some(e) = e else { continue };
            if e.is_zero_literal() {
                continue;
            }
            let c = layout[j];
            let (w, p) = self.certify(c, std::slice::from_ref(e), depth + 1)?;
            provs.push(p);
            if j < k {
                before.push(w.inv());
            } else {
                after.push(w.inv());
            }
        }
        before.reverse();
        after.reverse();
        let rhs = if before.is_empty() && after.is_empty() {
            main
        } else {
            let mut items = before;
            items.push(main);
            items.extend(after);
            SymWord::prod(items)
        };
        let lhs = SymWord::x(folded.class(target).base(), arg.to_vec());
        let cert = Certificate::new(folded, lhs, rhs.clone(), String::new());
        for env in &self.samples {
            if !verify_certificate(&cert, &self.rep, &self.ring, env)? {
                return Ok(None);
            }
        }
        Ok(Some((rhs, provs)))
    }
}

/// A product-of-commutators word for `x_[a](u)` (`u` a free variable, or
/// `u1, u2` for an `A2` class). Each commutator pairs a letter with a
/// constant parameter and a letter whose parameter vanishes with `u`, so
/// instantiating `u` in `J_[a]` certifies the generator inside
/// `[E'(R), E'(J)]`. Constants are frozen by evaluation over `probe_ring`.
pub fn certify_generator_commutator(basis: &Arc<SignedBasis>, class: ClassId) -> Result<Certificate> {
    let folded = basis.folded();
    let ring = probe_ring(folded.order())?;
    let kind = folded.class(class).kind;
    let samples = random_samples(folded, &ring, kind, 6, 1000 + class.index() as u64);
    let probe = Probe { basis, rep: Rep::new(basis.clone(), RepKind::Adjoint)?, ring, samples };
    let arg: Vec<Expr> = param_vars(kind).iter().map(|v| Expr::var(v)).collect();
    let (rhs, prov) = probe.certify(class, &arg, 0)?;
    let lhs = SymWord::x(folded.class(class).base(), arg);
    let prov = format!("{prov}; constants fixed over {}", probe.ring.descriptor());
    Ok(Certificate::new(folded, lhs, rhs, prov))
}

/// Commutator certificates for every class, in class order.
pub fn certify_all_generators(basis: &Arc<SignedBasis>) -> Result<Vec<Certificate>> {
    basis.folded().classes().iter().map(|c| certify_generator_commutator(basis, c.id)).collect()
}

/// True iff `rhs` is built from commutators `[A, B]` (with products and
/// inverses) where one side has constant arguments and the other has
/// arguments that all vanish when the variables are zero.
pub fn is_level_commutator_word(word: &SymWord, folded: &Folded, ring: &Ring) -> bool {
    fn side(w: &SymWord, folded: &Folded, ring: &Ring, level: bool) -> bool {
        let zero = |_: &str| Some(ring.zero());
        let mut ok = true;
        w.for_each_letter(&mut |l: &Letter<SymParam>| {
            for e in &l.p.0 {
                let has_vars = !e.vars().is_empty();
                ok &= if level {
                    has_vars && e.eval(ring, &zero).map(|v| v == ring.zero()).unwrap_or(false)
                } else {
                    !has_vars
                };
            }
        });
        let _ = folded;
        ok
    }
    match word {
        Node::Prod(xs) => xs.iter().all(|x| is_level_commutator_word(x, folded, ring)),
        Node::Inv(a) => is_level_commutator_word(a, folded, ring),
        Node::Comm(a, b) => {
            (side(a, folded, ring, false) && side(b, folded, ring, true))
                || (side(a, folded, ring, true) && side(b, folded, ring, false))
        }
        _ => false,
    }
}

// ------------------------------------------------------ negative-root split

fn param_op(ring: &Ring, a: &Param, b: &Param) -> Param {
    match (a, b) {
        (Param::S(x), Param::S(y)) => Param::S(ring.add(*x, *y)),
        (Param::P(p), Param::P(q)) => Param::P(aform::op(ring, *p, *q)),
        _ => a.clone(),
    }
}

fn param_inv(ring: &Ring, a: &Param) -> Param {
    match a {
        Param::S(x) => Param::S(ring.neg(*x)),
        Param::P(p) => Param::P(aform::inv(ring, *p)),
        other => other.clone(),
    }
}

fn param_zero(kind: ClassType, ring: &Ring) -> Param {
    match kind {
        ClassType::A2 => Param::P(AForm { t: ring.zero(), u: ring.zero() }),
        _ => Param::S(ring.zero()),
    }
}

fn is_zero_param(p: &Param, ring: &Ring) -> bool {
    match p {
        Param::S(x) => *x == ring.zero(),
        Param::P(q) => q.is_zero(),
        _ => false,
    }
}

fn u1_candidates(folded: &Folded, ring: &Ring, c: ClassId, u: &Param) -> Vec<Param> {
    let order = folded.order() as i32;
    let mut out = Vec::new();
    let kind = folded.class(c).kind;
    match u {
        Param::S(s) => {
            for k in 0..order {
                let v = ring.theta_pow(*s, k);
                if kind == ClassType::A2 {
                    let half = ring.div(ring.mul(v, ring.theta(v)), ring.from_int(2)).ok();
                    if let Some(h) = half {
                        for t in [v, ring.neg(v)] {
                            out.push(Param::P(AForm { t, u: h }));
                        }
                    }
                } else {
                    out.push(Param::S(v));
                    out.push(Param::S(ring.neg(v)));
                }
            }
        }
        Param::P(q) => {
            if kind == ClassType::A2 {
                for t in [q.t, ring.theta(q.t)] {
                    for s in [t, ring.neg(t)] {
                        for w in [q.u, ring.theta(q.u)] {
                            out.push(Param::P(AForm { t: s, u: w }));
                        }
                    }
                }
            } else {
                for v in [q.t, ring.theta(q.t), q.u, ring.theta(q.u)] {
                    out.push(Param::S(v));
                    out.push(Param::S(ring.neg(v)));
                }
            }
        }
        _ => {}
    }
    out.retain(|p| shape(folded, ring, c, &param_values(p)).is_ok());
    out
}

fn param_values(p: &Param) -> Vec<Elem> {
    match p {
        Param::S(x) => vec![*x],
        Param::P(q) => vec![q.t, q.u],
        Param::PP(a, b) => vec![a.t, a.u, b.t, b.u],
        Param::V(v) => v.clone(),
    }
}

fn u2_candidates(folded: &Folded, ring: &Ring, c: ClassId) -> Vec<Param> {
    let mut out = Vec::new();
    for d in [1, 2, 3] {
        let Ok(v) = ring.div(ring.one(), ring.from_int(d)) else { continue };
        for s in [v, ring.neg(v)] {
            if folded.class(c).kind == ClassType::A2 {
                if let Ok(h) = ring.div(ring.mul(s, ring.theta(s)), ring.from_int(2)) {
                    out.push(Param::P(AForm { t: s, u: h }));
                }
            } else {
                out.push(Param::S(s));
            }
        }
    }
    out.retain(|p| shape(folded, ring, c, &param_values(p)).is_ok());
    out
}

/// `x_{-[a]}(u) = [x_{-([a]+[g])}(u1), x_[g](u2)] h'` with `u1` a twist of
/// `u`, `u2` a constant, and `h'` an explicit word with parameters in
/// `ideal`. `class` is the positive class `[a]`.
pub fn certify_negroot_split(
    rep: &Rep,
    ring: &Arc<Ring>,
    ideal: &ThetaIdeal,
    class: ClassId,
    u: &Param,
    companion: ClassId,
) -> Result<Certificate> {
    let basis = rep.basis();
    let folded = rep.folded();
    if !param_in_ideal(ideal, u) {
        return Err(Error::Precondition("u is not in the level".into()));
    }
    let na = folded.neg(class);
    let c1 = folded
        .folded_sum(na, companion, 1, -1)
        .ok_or_else(|| Error::Precondition("-[a]-[g] is not a root class".into()))?;
    let pt = folded.pair_classify(c1, companion)?;
    if pt.acute {
        return Err(Error::Precondition("pair is not in the table".into()));
    }
    let target = Param::clone(u);
    let (r1, r2) = (folded.class(c1).base(), folded.class(companion).base());
    let base_na = folded.class(na).base();
    for p1 in u1_candidates(folded, ring, c1, u) {
        if !param_in_ideal(ideal, &p1) {
            continue;
        }
        for p2 in u2_candidates(folded, ring, companion) {
            let cf = commutator_closed_form(basis, ring, r1, &p1, r2, &p2)?;
            let classes = cf.classes(folded);
            if !(0..classes.len()).any(|k| classes[k] == na && cf.factors[k].p == target) {
                continue;
            }
            // x(u) = C * h' with h' = f_n^-1 ... f_1^-1 f_k
            let mut residual: Vec<Word> = Vec::new();
            for f in cf.factors.iter().rev() {
                if is_zero_param(&f.p, ring) {
                    continue;
                }
                residual.push(Word::x(f.root, param_inv(ring, &f.p)));
            }
            residual.push(Word::x(base_na, target.clone()));
            if !cf.factors.iter().all(|f| param_in_ideal(ideal, &f.p)) {
                continue;
            }
            let lhs = Word::x(base_na, target.clone());
            let rhs = Word::prod(vec![Word::comm(Word::x(r1, p1.clone()), Word::x(r2, p2.clone())), Word::prod(residual)]);
            let prov = format!(
                "negative {} split by companion {}: commutator of pair type {} with residual in the level",
                class_words(folded, class),
                folded.system().format(r2),
                pt.tag.label()
            );
            let cert = Certificate::new(folded, symbolic(ring, &lhs)?, symbolic(ring, &rhs)?, prov);
            if verify_certificate(&cert, rep, ring, &Vec::new())? {
                return Ok(cert);
            }
        }
    }
    Err(Error::Precondition(format!("no table row for pair type {}", pt.tag.label())))
}

// ----------------------------------------------------------- normal closure

/// The ideal generated by the displayed entries of a seed parameter:
/// `Rz`, `Rz + R th(z)`, `Rz + R th(z) + R th2(z)`, or
/// `R z1 + R th(z1) + R (z2 - th(z2))` for an `A2` class.
pub fn normal_closure_ideal(folded: &Folded, ring: &Arc<Ring>, class: ClassId, z: &Param) -> Result<ThetaIdeal> {
    let gens = match (folded.class(class).kind, z) {
        (ClassType::A2, Param::P(q)) => vec![q.t, ring.theta(q.t), ring.sub(q.u, ring.theta(q.u))],
        (ClassType::A2, _) => return Err(Error::BadParam("A2 class needs a pair".into())),
        (_, Param::S(s)) => (0..folded.order() as i32).map(|k| ring.theta_pow(*s, k)).collect(),
        _ => return Err(Error::BadParam("scalar expected".into())),
    };
    Ok(ThetaIdeal::new(ring, &gens))
}

/// Result of `certify_normal_closure`.
#[derive(Clone, Debug)]
pub struct NormalClosure {
    pub class: ClassId,
    pub seed: Param,
    /// The ideal read off from the seed.
    pub displayed: ThetaIdeal,
    /// The ideal generated by every parameter reached by the closure.
    pub reached: ThetaIdeal,
    /// For each class: parameters reached and the size of `J_[b]`.
    pub sizes: Vec<(ClassId, usize, usize)>,
    /// One certificate per generator of each `J_[b]`.
    pub transfers: Vec<Certificate>,
}

impl NormalClosure {
    /// Every class reached all of `J_[b]` and the two ideals agree.
    pub fn complete(&self) -> bool {
        self.displayed == self.reached && self.sizes.iter().all(|(_, a, b)| a == b)
    }
}

struct Known {
    elems: Vec<Param>,
    index: HashMap<Param, usize>,
    member: Vec<bool>,
    /// Element index, witness word, derivation label.
    gens: Vec<(usize, Word, String)>,
    /// `elems[i] = elems[prev] * gens[g]`.
    pred: Vec<Option<(usize, usize)>>,
}

impl Known {
    fn new(elems: Vec<Param>, ring: &Ring, kind: ClassType) -> Known {
        let index: HashMap<Param, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut member = vec![false; elems.len()];
        member[index[&param_zero(kind, ring)]] = true;
        Known { pred: vec![None; elems.len()], elems, index, member, gens: Vec::new() }
    }

    fn contains(&self, p: &Param) -> bool {
        self.index.get(p).is_some_and(|&i| self.member[i])
    }

    fn add(&mut self, ring: &Ring, p: &Param, w: Word, label: String) -> bool {
        let Some(&i) = self.index.get(p) else { return false };
        if self.member[i] {
            return false;
        }
        self.gens.push((i, w, label));
        let mut frontier: Vec<usize> = (0..self.elems.len()).filter(|&j| self.member[j]).collect();
        while let Some(j) = frontier.pop() {
            for (g, (gi, _, _)) in self.gens.iter().enumerate() {
                let q = param_op(ring, &self.elems[j], &self.elems[*gi]);
                let qi = self.index[&q];
                if !self.member[qi] {
                    self.member[qi] = true;
                    self.pred[qi] = Some((j, g));
                    frontier.push(qi);
                }
            }
        }
        true
    }

    fn word_for(&self, p: &Param) -> Option<Word> {
        let mut i = *self.index.get(p)?;
        if !self.member[i] {
            return None;
        }
        let mut parts = Vec::new();
        while let Some((prev, g)) = self.pred[i] {
            parts.push(self.gens[g].1.clone());
            i = prev;
        }
        parts.reverse();
        Some(match parts.len() {
            1 => parts.pop().expect("one part"),
            _ => Word::prod(parts),
        })
    }

    fn labels_for(&self, p: &Param) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let Some(&start) = self.index.get(p) else { return out };
        let mut i = start;
        while let Some((prev, g)) = self.pred[i] {
            if !out.contains(&self.gens[g].2) {
                out.push(self.gens[g].2.clone());
            }
            i = prev;
        }
        out
    }
}

fn class_params(ring: &Ring, kind: ClassType) -> Vec<Param> {
    match kind {
        ClassType::A1 => ring.fixed_subring().into_iter().map(Param::S).collect(),
        ClassType::A2 => aform::all(ring).into_iter().map(Param::P).collect(),
        _ => ring.elements().map(Param::S).collect(),
    }
}

/// True iff the word lies in the normal closure of `seed` by construction:
/// the seed letter, inverses, products, conjugates of such words, and
/// commutators with at least one such side.
pub fn is_seed_conjugate_word(word: &Word, seed: &Letter<Param>) -> bool {
    match word {
        Node::L(l) => l == seed,
        Node::Inv(a) => is_seed_conjugate_word(a, seed),
        Node::Prod(xs) => xs.iter().all(|x| is_seed_conjugate_word(x, seed)),
        Node::Conj(_, b) => is_seed_conjugate_word(b, seed),
        Node::Comm(a, b) => is_seed_conjugate_word(a, seed) || is_seed_conjugate_word(b, seed),
    }
}

struct Closure<'a> {
    rep: &'a Rep,
    ring: &'a Arc<Ring>,
    known: Vec<Known>,
}

impl Closure<'_> {
    fn folded(&self) -> &Folded {
        self.rep.folded()
    }

    /// Adds `x_[c](p)` with witness `w` after checking the identity by
    /// matrices.
    fn accept(&mut self, c: ClassId, p: &Param, w: Word, label: String) -> Result<bool> {
        if self.known[c.index()].contains(p) {
            return Ok(false);
        }
        let base = self.folded().class(c).base();
        let lhs = evaluate(self.rep, self.ring, &Word::x(base, p.clone()))?;
        if evaluate(self.rep, self.ring, &w)? != lhs {
            return Ok(false);
        }
        let ring = self.ring.clone();
        Ok(self.known[c.index()].add(&ring, p, w, label))
    }

    fn pass(&mut self) -> Result<bool> {
        let folded = self.rep.folded().clone();
        let ring = self.ring.clone();
        let basis = self.rep.basis().clone();
        let mut changed = false;
        for c in folded.classes() {
            let n = self.known[c.id.index()].gens.len();
            for g in 0..n {
                let (si, sw) = {
                    let k = &self.known[c.id.index()];
                    (k.gens[g].0, k.gens[g].1.clone())
                };
                let s = self.known[c.id.index()].elems[si].clone();
                for d in folded.classes() {
                    if folded.proportional(c.id, d.id) {
                        continue;
                    }
                    // conjugation by w_[d](1)
                    let img = conj_by_w(self.rep, &ring, d.base(), ring.one(), &Letter { kind: LetterKind::X, root: c.base(), p: s.clone() })?;
                    let ic = folded.class_of(img.root);
                    if !self.known[ic.index()].contains(&img.p) {
                        let w = Word::conj(Word::w(d.base(), Param::S(ring.one())), sw.clone());
                        let label = format!("conjugate by w{}", folded.system().format(d.base()));
                        changed |= self.accept(ic, &img.p, w, label)?;
                    }
                    let mut groups: HashMap<(usize, Vec<(ClassId, Param)>), (Param, Param)> = HashMap::new();
                    for r in class_params(&ring, d.kind) {
                        if is_zero_param(&r, &ring) {
                            continue;
                        }
                        let cf = commutator_closed_form(&basis, &ring, c.base(), &s, d.base(), &r)?;
                        let facs: Vec<(ClassId, Param)> = cf
                            .factors
                            .iter()
                            .filter(|l| !is_zero_param(&l.p, &ring))
                            .map(|l| (folded.class_of(l.root), l.p.clone()))
                            .collect();
                        if facs.is_empty() {
                            continue;
                        }
                        let comm = Word::comm(sw.clone(), Word::x(d.base(), r.clone()));
                        let unknown: Vec<usize> =
                            (0..facs.len()).filter(|&j| !self.known[facs[j].0.index()].contains(&facs[j].1)).collect();
                        if let [k] = unknown[..] {
                            let mut items = Vec::new();
                            for j in (0..k).rev() {
                                items.push(self.known[facs[j].0.index()].word_for(&facs[j].1).expect("known").inv());
                            }
                            items.push(comm.clone());
                            for j in (k + 1..facs.len()).rev() {
                                items.push(self.known[facs[j].0.index()].word_for(&facs[j].1).expect("known").inv());
                            }
                            let w = if items.len() == 1 { comm.clone() } else { Word::prod(items) };
                            let label = format!(
                                "commutator with x{} of pair type {}",
                                folded.system().format(d.base()),
                                cf.pair_type.tag.label()
                            );
                            changed |= self.accept(facs[k].0, &facs[k].1, w, label)?;
                        }
                        if facs.len() < 2 {
                            continue;
                        }
                        for k in 0..facs.len() {
                            let mut others = facs.clone();
                            let (bc, bp) = others.remove(k);
                            let key = (bc.index(), others);
                            match groups.get(&key) {
                                None => {
                                    groups.insert(key, (bp, r.clone()));
                                }
                                Some((p0, r0)) if *p0 != bp => {
                                    let q = param_op(&ring, &bp, &param_inv(&ring, p0));
                                    if self.known[bc.index()].contains(&q) {
                                        continue;
                                    }
                                    let comm0 = Word::comm(sw.clone(), Word::x(d.base(), r0.clone()));
                                    let w = Word::prod(vec![comm.clone(), comm0.inv()]);
                                    let label = format!(
                                        "quotient of two commutators with x{} of pair type {}",
                                        folded.system().format(d.base()),
                                        cf.pair_type.tag.label()
                                    );
                                    changed |= self.accept(bc, &q, w, label)?;
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Ok(changed)
    }
}

/// Normal closure of `x_[a](z)` in `E'(R)`: grows, class by class, the
/// parameters `t` for which `x_[b](t)` has a witness built from conjugates
/// of the seed, then certifies a generating set of every `J_[b]` where `J`
/// is `normal_closure_ideal`. Each accepted step is checked by matrices.
pub fn certify_normal_closure(rep: &Rep, ring: &Arc<Ring>, class: ClassId, z: &Param) -> Result<NormalClosure> {
    let folded = rep.folded().clone();
    let kind = folded.class(class).kind;
    shape(&folded, ring, class, &param_values(z))?;
    let displayed = normal_closure_ideal(&folded, ring, class, z)?;
    let known = folded.classes().iter().map(|c| Known::new(class_params(ring, c.kind), ring, c.kind)).collect();
    let mut cl = Closure { rep, ring, known };
    let seed = Letter { kind: LetterKind::X, root: folded.class(class).base(), p: z.clone() };
    if !is_zero_param(z, ring) {
        cl.known[class.index()].add(ring, z, Node::L(seed.clone()), "seed".into());
        while cl.pass()? {}
    }
    let mut gens = Vec::new();
    for k in &cl.known {
        for (i, m) in k.member.iter().enumerate() {
            if *m {
                gens.extend(param_values(&k.elems[i]));
            }
        }
    }
    let reached = ThetaIdeal::new(ring, &gens);
    let mut sizes = Vec::new();
    let mut transfers = Vec::new();
    for c in folded.classes() {
        let k = &cl.known[c.id.index()];
        let target: Vec<Param> = match displayed.component(param_kind(c.kind)) {
            Component::Scalars(v) => v.into_iter().map(Param::S).collect(),
            Component::Pairs(v) => v.into_iter().map(Param::P).collect(),
        };
        sizes.push((c.id, target.iter().filter(|p| k.contains(p)).count(), target.len()));
        // a generating set of J_[b] as a group
        let mut span = Known::new(class_params(ring, c.kind), ring, c.kind);
        for t in &target {
            if span.contains(t) {
                continue;
            }
            span.add(ring, t, Word::one(), String::new());
            let Some(w) = k.word_for(t) else { continue };
            if !is_seed_conjugate_word(&w, &seed) {
                return Err(Error::Internal("closure witness leaves the normal closure".into()));
            }
            let labels = k.labels_for(t);
            let prov = format!(
                "normal closure of x{} at {}: {}",
                folded.system().format(seed.root),
                crate::word::param_strings(ring, z).join(","),
                labels.join("; ")
            );
            let lhs = Word::x(c.base(), t.clone());
            let cert = Certificate::new(&folded, symbolic(ring, &lhs)?, symbolic(ring, &w)?, prov);
            if !verify_certificate(&cert, rep, ring, &Vec::new())? {
                return Err(Error::Internal("transfer certificate fails to verify".into()));
            }
            transfers.push(cert);
        }
    }
    let _ = kind;
    Ok(NormalClosure { class, seed: z.clone(), displayed, reached, sizes, transfers })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(s: &str, o: &str) -> Arc<SignedBasis> {
        SignedBasis::parse(s, o).unwrap()
    }

    fn check_generic(b: &Arc<SignedBasis>, rings: &[&str]) {
        let folded = b.folded();
        for c in folded.classes() {
            let cert = certify_generator_commutator(b, c.id).unwrap();
            let probe = probe_ring(folded.order()).unwrap();
            assert!(is_level_commutator_word(&cert.rhs, folded, &probe), "{}", cert.claim(folded));
            for desc in rings {
                let ring = Ring::make(desc).unwrap();
                let rep = Rep::new(b.clone(), RepKind::Adjoint).unwrap();
                let ideal = ThetaIdeal::whole(&ring);
                let r = verify_over_level(&cert, &rep, &ring, &ideal, 40).unwrap();
                assert!(r.is_ok(), "{} over {desc}: {}", cert.claim(folded), cert.provenance);
            }
        }
    }

    #[test]
    fn generator_certificates_2a3_2a4() {
        check_generic(&basis("A3", "o2"), &["gf(9;frob)", "dual(gf(9;frob);2)", "gf(25;frob)"]);
        check_generic(&basis("A4", "o2"), &["gf(9;frob)", "dual(gf(9;frob);2)"]);
    }

    #[test]
    fn generator_certificates_3d4() {
        check_generic(&basis("D4", "o3"), &["gf(125;frob)"]);
    }

    #[test]
    fn provenance_is_descriptive() {
        let b = basis("A3", "o2");
        let folded = b.folded();
        for c in folded.classes() {
            let cert = certify_generator_commutator(&b, c.id).unwrap();
            assert!(cert.provenance.contains("companion"), "{}", cert.provenance);
        }
    }

    #[test]
    fn text_round_trip() {
        let b = basis("A4", "o2");
        let folded = b.folded();
        let certs = certify_all_generators(&b).unwrap();
        let text: String = certs.iter().map(|c| c.to_text(folded)).collect();
        let back = parse_certificates(&text).unwrap();
        assert_eq!(back, certs);
    }

    #[test]
    fn perturbed_certificate_fails() {
        let b = basis("A3", "o2");
        let folded = b.folded();
        let ring = Ring::make("gf(25;frob)").unwrap();
        let rep = Rep::new(b.clone(), RepKind::Adjoint).unwrap();
        let whole = ThetaIdeal::whole(&ring);
        for c in folded.classes() {
            let cert = certify_generator_commutator(&b, c.id).unwrap();
            let mut bad = cert.clone();
            flip_first_constant(&mut bad.rhs);
            assert_ne!(bad, cert);
            let r = verify_over_level(&bad, &rep, &ring, &whole, 40).unwrap();
            assert!(r.is_err(), "perturbation of {} still verifies", cert.claim(folded));
        }
    }

    fn flip_first_constant(w: &mut SymWord) -> bool {
        match w {
            Node::L(l) => {
                for e in l.p.0.iter_mut() {
                    if e.vars().is_empty() {
                        *e = neg(e.clone());
                        return true;
                    }
                }
                false
            }
            Node::Inv(a) => flip_first_constant(a),
            Node::Comm(a, b) | Node::Conj(a, b) => flip_first_constant(a) || flip_first_constant(b),
            Node::Prod(xs) => xs.iter_mut().any(flip_first_constant),
        }
    }

    #[test]
    fn negroot_split_table_rows() {
        for (s, o, desc) in [("A3", "o2", "dual(gf(9;frob);2)"), ("A4", "o2", "dual(gf(9;frob);2)")] {
            let rep = Rep::new(basis(s, o), RepKind::Natural).unwrap();
            let folded = rep.folded().clone();
            let ring = Ring::make(desc).unwrap();
            let eps = ring.epsilon().unwrap();
            let ideal = ThetaIdeal::new(&ring, &[eps]);
            let mut done = 0;
            for a in folded.positive_classes() {
                let u = match a.kind {
                    ClassType::A2 => Param::P(AForm::standard(&ring, eps)),
                    _ => Param::S(eps),
                };
                for g in folded.classes() {
                    let na = folded.neg(a.id);
                    let Some(c1) = folded.folded_sum(na, g.id, 1, -1) else { continue };
                    if folded.pair_classify(c1, g.id).map(|p| p.acute).unwrap_or(true) {
                        continue;
                    }
                    let cert = certify_negroot_split(&rep, &ring, &ideal, a.id, &u, g.id).unwrap();
                    assert!(verify_certificate(&cert, &rep, &ring, &Vec::new()).unwrap());
                    done += 1;
                }
            }
            assert!(done > 0);
        }
    }

    #[test]
    fn normal_closure_trivial_seed() {
        let rep = Rep::new(basis("A3", "o2"), RepKind::Natural).unwrap();
        let ring = Ring::make("dual(gf(9;frob);2)").unwrap();
        let c = rep.folded().positive_classes()[0].id;
        let nc = certify_normal_closure(&rep, &ring, c, &Param::S(ring.zero())).unwrap();
        assert!(nc.displayed.is_zero());
        assert!(nc.transfers.is_empty());
        assert!(nc.complete());
    }

    #[test]
    fn normal_closure_at_epsilon() {
        let ring = Ring::make("dual(gf(9;frob);2)").unwrap();
        let eps = ring.epsilon().unwrap();
        for (s, kinds) in [("A3", vec![ClassType::A1, ClassType::A1x2]), ("A4", vec![ClassType::A1x2, ClassType::A2])] {
            let rep = Rep::new(basis(s, "o2"), RepKind::Natural).unwrap();
            let folded = rep.folded().clone();
            for kind in kinds {
                let c = folded.positive_classes().iter().find(|c| c.kind == kind).unwrap().id;
                for z in [eps, ring.one()] {
                    let p = match kind {
                        ClassType::A2 => Param::P(AForm::standard(&ring, z)),
                        _ => Param::S(z),
                    };
                    let nc = certify_normal_closure(&rep, &ring, c, &p).unwrap();
                    assert!(nc.complete(), "{s} {kind:?} {}: {:?}", ring.format(z), nc.sizes);
                    let seed = Letter { kind: LetterKind::X, root: folded.class(c).base(), p: p.clone() };
                    for t in &nc.transfers {
                        let w = t.rhs.instantiate(&folded, &ring, &|_| None).unwrap();
                        assert!(is_seed_conjugate_word(&w, &seed));
                    }
                }
            }
        }
    }
}
