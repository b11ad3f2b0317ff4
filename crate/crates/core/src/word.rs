//! Words in the twisted generators and their evaluation.
//!
//! Text grammar (one or more forms, juxtaposed forms multiply):
//!
//! ```text
//! form  := '(' 'x'  root args ')'      twisted root element x_[a](p)
//!        | '(' 'w'  root args ')'      w_[a](p)
//!        | '(' 'h'  root args ')'      h_[a](p)
//!        | '(' 'xr' root arg ')'       untwisted x_a(t)
//!        | '(' 'hchi' args ')'         h(chi), values on the lattice basis
//!        | '(' 'inv' form ')'
//!        | '(' 'comm' form form ')'    a b a^-1 b^-1
//!        | '(' 'conj' form form ')'    a b a^-1
//!        | '(' 'prod' form* ')'
//! root  := '[' c1 ',' ... ']' | 'a'i | '-a'i
//! args  := expr (',' expr)*
//! ```
//!
//! The root of a class letter is its ordered base: `x_[b](t)` is
//! `x_b(t) x_{rho b}(th t) ...`. An `A2` class takes `t, u` for `x`, either
//! `t` or `t, u` for `w`, and either `t` or `t, u, t', u'` for `h`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fold::{ClassType, Folded};
use crate::matrix::Mat;
use crate::ring::{aform, AForm, Elem, Expr, Ring};
use crate::rep::{Character, Rep};
use crate::roots::RootId;

/// A concrete parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    S(Elem),
    P(AForm),
    PP(AForm, AForm),
    V(Vec<Elem>),
}

/// A symbolic parameter: the comma-separated argument expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymParam(pub Vec<Expr>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LetterKind {
    X,
    W,
    H,
    Chi,
    Root,
}

impl LetterKind {
    pub fn label(self) -> &'static str {
        match self {
            LetterKind::X => "x",
            LetterKind::W => "w",
            LetterKind::H => "h",
            LetterKind::Chi => "hchi",
            LetterKind::Root => "xr",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter<P> {
    pub kind: LetterKind,
    /// Base root; unused for `Chi`.
    pub root: RootId,
    pub p: P,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node<P> {
    L(Letter<P>),
    Inv(Box<Node<P>>),
    Comm(Box<Node<P>>, Box<Node<P>>),
    Conj(Box<Node<P>>, Box<Node<P>>),
    Prod(Vec<Node<P>>),
}

pub type Word = Node<Param>;
pub type SymWord = Node<SymParam>;

impl<P> Node<P> {
    pub fn one() -> Node<P> {
        Node::Prod(Vec::new())
    }

    pub fn letter(kind: LetterKind, root: RootId, p: P) -> Node<P> {
        Node::L(Letter { kind, root, p })
    }

    pub fn inv(self) -> Node<P> {
        Node::Inv(Box::new(self))
    }

    pub fn comm(a: Node<P>, b: Node<P>) -> Node<P> {
        Node::Comm(Box::new(a), Box::new(b))
    }

    pub fn conj(a: Node<P>, b: Node<P>) -> Node<P> {
        Node::Conj(Box::new(a), Box::new(b))
    }

    pub fn prod(items: Vec<Node<P>>) -> Node<P> {
        Node::Prod(items)
    }

    /// Visits every letter in tree order.
    pub fn for_each_letter<'a>(&'a self, f: &mut dyn FnMut(&'a Letter<P>)) {
        match self {
            Node::L(l) => f(l),
            Node::Inv(a) => a.for_each_letter(f),
            Node::Comm(a, b) | Node::Conj(a, b) => {
                a.for_each_letter(f);
                b.for_each_letter(f);
            }
            Node::Prod(xs) => xs.iter().for_each(|x| x.for_each_letter(f)),
        }
    }

    pub fn map<Q>(&self, f: &mut dyn FnMut(&Letter<P>) -> Result<Letter<Q>>) -> Result<Node<Q>> {
        Ok(match self {
            Node::L(l) => Node::L(f(l)?),
            Node::Inv(a) => Node::Inv(Box::new(a.map(f)?)),
            Node::Comm(a, b) => Node::Comm(Box::new(a.map(f)?), Box::new(b.map(f)?)),
            Node::Conj(a, b) => Node::Conj(Box::new(a.map(f)?), Box::new(b.map(f)?)),
            Node::Prod(xs) => Node::Prod(xs.iter().map(|x| x.map(f)).collect::<Result<_>>()?),
        })
    }
}

impl Word {
    pub fn x(root: RootId, p: Param) -> Word {
        Node::letter(LetterKind::X, root, p)
    }

    pub fn w(root: RootId, p: Param) -> Word {
        Node::letter(LetterKind::W, root, p)
    }

    pub fn h(root: RootId, p: Param) -> Word {
        Node::letter(LetterKind::H, root, p)
    }

    pub fn chi(values: Vec<Elem>) -> Word {
        Node::letter(LetterKind::Chi, RootId(0), Param::V(values))
    }

    pub fn root(root: RootId, t: Elem) -> Word {
        Node::letter(LetterKind::Root, root, Param::S(t))
    }
}

impl SymWord {
    pub fn x(root: RootId, args: Vec<Expr>) -> SymWord {
        Node::letter(LetterKind::X, root, SymParam(args))
    }

    pub fn w(root: RootId, args: Vec<Expr>) -> SymWord {
        Node::letter(LetterKind::W, root, SymParam(args))
    }

    pub fn h(root: RootId, args: Vec<Expr>) -> SymWord {
        Node::letter(LetterKind::H, root, SymParam(args))
    }

    /// Evaluates every argument in `ring`.
    pub fn instantiate(&self, folded: &Folded, ring: &Ring, env: &dyn Fn(&str) -> Option<Elem>) -> Result<Word> {
        self.map(&mut |l| {
            let vals = l.p.0.iter().map(|e| e.eval(ring, env)).collect::<Result<Vec<_>>>()?;
            let p = shape_param(folded, ring, l.kind, l.root, vals)?;
            Ok(Letter { kind: l.kind, root: l.root, p })
        })
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.for_each_letter(&mut |l| {
            for e in &l.p.0 {
                for v in e.vars() {
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
        });
        out
    }

    pub fn format(&self, folded: &Folded) -> String {
        fmt_node(self, folded, &|p: &SymParam| p.0.iter().map(|e| e.to_string()).collect())
    }
}

/// Turns evaluated argument lists into parameters for the class type.
fn shape_param(folded: &Folded, ring: &Ring, kind: LetterKind, root: RootId, vals: Vec<Elem>) -> Result<Param> {
    let ct = folded.class(folded.class_of(root)).kind;
    let pair = |a: Elem, b: Elem| AForm::new(ring, a, b);
    match (kind, ct, vals.len()) {
        (LetterKind::Chi, _, _) => Ok(Param::V(vals)),
        (LetterKind::Root, _, 1) => Ok(Param::S(vals[0])),
        (LetterKind::X, ClassType::A2, 2) | (LetterKind::W, ClassType::A2, 2) => Ok(Param::P(pair(vals[0], vals[1])?)),
        (LetterKind::H, ClassType::A2, 4) => Ok(Param::PP(pair(vals[0], vals[1])?, pair(vals[2], vals[3])?)),
        (LetterKind::X, ClassType::A2, _) => Err(Error::BadParam("A2 class needs a pair t, u".into())),
        (_, _, 1) => Ok(Param::S(vals[0])),
        _ => Err(Error::BadParam(format!("{} letter with {} arguments", kind.label(), vals.len()))),
    }
}

impl Word {
    pub fn format(&self, folded: &Folded, ring: &Ring) -> String {
        fmt_node(self, folded, &|p: &Param| param_strings(ring, p))
    }
}

pub fn param_strings(ring: &Ring, p: &Param) -> Vec<String> {
    match p {
        Param::S(a) => vec![ring.format(*a)],
        Param::P(q) => vec![ring.format(q.t), ring.format(q.u)],
        Param::PP(a, b) => vec![ring.format(a.t), ring.format(a.u), ring.format(b.t), ring.format(b.u)],
        Param::V(v) => v.iter().map(|&a| ring.format(a)).collect(),
    }
}

fn fmt_node<P>(node: &Node<P>, folded: &Folded, args: &dyn Fn(&P) -> Vec<String>) -> String {
    let sys = folded.system();
    match node {
        Node::L(l) => {
            let a = args(&l.p).join(", ");
            match l.kind {
                LetterKind::Chi => format!("(hchi {a})"),
                k => format!("({} {} {a})", k.label(), sys.format(l.root)),
            }
        }
        Node::Inv(a) => format!("(inv {})", fmt_node(a, folded, args)),
        Node::Comm(a, b) => format!("(comm {} {})", fmt_node(a, folded, args), fmt_node(b, folded, args)),
        Node::Conj(a, b) => format!("(conj {} {})", fmt_node(a, folded, args), fmt_node(b, folded, args)),
        Node::Prod(xs) => {
            let inner: Vec<String> = xs.iter().map(|x| fmt_node(x, folded, args)).collect();
            format!("(prod{}{})", if inner.is_empty() { "" } else { " " }, inner.join(" "))
        }
    }
}

impl fmt::Display for LetterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// ---------------------------------------------------------------- parsing

fn werr(msg: impl Into<String>) -> Error {
    Error::WordParse(msg.into())
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.s[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(werr(format!("expected `{c}` at offset {} in `{}`", self.pos, self.s)))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.s[start..self.pos]
    }

    /// A root token: a bracketed vector or a bare word.
    fn root_token(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('[') {
            let end = self.s[start..].find(']').ok_or_else(|| werr("unclosed `[`"))?;
            self.pos = start + end + 1;
        } else {
            while let Some(c) = self.peek() {
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                self.pos += c.len_utf8();
            }
        }
        if self.pos == start {
            return Err(werr("missing root"));
        }
        Ok(&self.s[start..self.pos])
    }

    /// Everything up to the matching `)`, split on top-level commas.
    fn args(&mut self) -> Result<Vec<Expr>> {
        let start = self.pos;
        let mut depth = 0i32;
        let mut parts = Vec::new();
        let mut last = start;
        loop {
            let c = self.peek().ok_or_else(|| werr("unclosed `(`"))?;
            match c {
                '(' | '[' => depth += 1,
                ']' => depth -= 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&self.s[last..self.pos]);
                    last = self.pos + 1;
                }
                _ => {}
            }
            self.pos += c.len_utf8();
        }
        let tail = &self.s[last..self.pos];
        if !(parts.is_empty() && tail.trim().is_empty()) {
            parts.push(tail);
        }
        parts.iter().map(|p| Expr::parse(p.trim())).collect()
    }

    fn node(&mut self, folded: &Folded) -> Result<SymWord> {
        self.expect('(')?;
        let head = self.ident();
        let sys = folded.system();
        let node = match head {
            "x" | "w" | "h" | "xr" => {
                let tok = self.root_token()?;
                let mut root = sys.parse_root(tok)?;
                let kind = match head {
                    "x" => LetterKind::X,
                    "w" => LetterKind::W,
                    "h" => LetterKind::H,
                    _ => LetterKind::Root,
                };
                if kind != LetterKind::Root && folded.base_shift(root).is_err() {
                    // the middle root of an A2 class names the class
                    root = folded.class(folded.class_of(root)).base();
                }
                let args = self.args()?;
                if args.is_empty() {
                    return Err(werr(format!("letter `{head}` needs a parameter")));
                }
                Node::letter(kind, root, SymParam(args))
            }
            "hchi" => {
                let args = self.args()?;
                Node::letter(LetterKind::Chi, RootId(0), SymParam(args))
            }
            "inv" => self.node(folded)?.inv(),
            "comm" | "conj" => {
                let a = self.node(folded)?;
                let b = self.node(folded)?;
                if head == "comm" {
                    Node::comm(a, b)
                } else {
                    Node::conj(a, b)
                }
            }
            "prod" => {
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(')') {
                        break;
                    }
                    items.push(self.node(folded)?);
                }
                Node::prod(items)
            }
            "" => return Err(werr(format!("missing letter kind at offset {}", self.pos))),
            other => return Err(werr(format!("unknown letter kind `{other}`"))),
        };
        self.expect(')')?;
        Ok(node)
    }
}

/// Parses the word grammar.
pub fn parse_word(text: &str, folded: &Folded) -> Result<SymWord> {
    let mut c = Cursor { s: text, pos: 0 };
    let mut items = Vec::new();
    loop {
        c.skip_ws();
        if c.peek().is_none() {
            break;
        }
        items.push(c.node(folded)?);
    }
    Ok(if items.len() == 1 { items.pop().expect("one item") } else { Node::prod(items) })
}

// ------------------------------------------------------------- validation

/// Checks that a parameter belongs to the set its letter requires.
pub fn check_letter(rep: &Rep, ring: &Ring, l: &Letter<Param>) -> Result<()> {
    let folded = rep.folded();
    let bad = |m: String| Err(Error::BadParam(m));
    if l.kind == LetterKind::Chi {
        let Param::V(v) = &l.p else { return bad("hchi takes a value list".into()) };
        let chi = Character { values: v.clone() };
        rep.check_character(ring, &chi)?;
        if !rep.is_self_conjugate(ring, &chi) {
            return bad("character is not self-conjugate".into());
        }
        return Ok(());
    }
    if l.kind == LetterKind::Root {
        return match l.p {
            Param::S(_) => Ok(()),
            _ => bad("xr takes one scalar".into()),
        };
    }
    if folded.base_shift(l.root).is_err() {
        return bad(format!("{} is not an ordered base", folded.system().format(l.root)));
    }
    let ct = folded.class(folded.class_of(l.root)).kind;
    let unit = |a: Elem| if ring.is_unit(a) { Ok(()) } else { Err(Error::NotUnit(ring.format(a))) };
    let aform_ok = |q: &AForm| {
        if aform::is_aform(ring, q.t, q.u) {
            Ok(())
        } else {
            Err(Error::NotAForm(ring.format(q.t), ring.format(q.u)))
        }
    };
    match (l.kind, ct, &l.p) {
        (LetterKind::X, ClassType::A1, Param::S(t)) => {
            if ring.is_fixed(*t) {
                Ok(())
            } else {
                bad(format!("{} is not fixed by th", ring.format(*t)))
            }
        }
        (LetterKind::X, ClassType::A1x2 | ClassType::A1x3, Param::S(_)) => Ok(()),
        (LetterKind::X, ClassType::A2, Param::P(q)) => aform_ok(q),
        (LetterKind::W | LetterKind::H, ClassType::A1, Param::S(t)) => {
            if !ring.is_fixed(*t) {
                return bad(format!("{} is not fixed by th", ring.format(*t)));
            }
            unit(*t)
        }
        (LetterKind::W | LetterKind::H, _, Param::S(t)) => unit(*t),
        (LetterKind::W, ClassType::A2, Param::P(q)) => {
            aform_ok(q)?;
            unit(q.u)
        }
        (LetterKind::H, ClassType::A2, Param::PP(a, b)) => {
            aform_ok(a)?;
            aform_ok(b)?;
            unit(a.u)?;
            unit(b.u)
        }
        _ => bad(format!("{} letter parameter does not match class type {}", l.kind, ct)),
    }
}

// ---------------------------------------------------------------- inverses

/// The inverse of a letter as a letter.
pub fn letter_inverse(rep: &Rep, ring: &Ring, l: &Letter<Param>) -> Result<Letter<Param>> {
    let folded = rep.folded();
    let ct = folded.class(folded.class_of(l.root)).kind;
    let p = match (l.kind, &l.p) {
        (LetterKind::X | LetterKind::Root, Param::S(t)) => Param::S(ring.neg(*t)),
        (LetterKind::X, Param::P(q)) => Param::P(aform::inv(ring, *q)),
        (LetterKind::W, Param::S(t)) if ct == ClassType::A2 => Param::S(ring.theta(*t)),
        (LetterKind::W, Param::S(t)) => Param::S(ring.neg(*t)),
        (LetterKind::W, Param::P(q)) => {
            // w(t, u)^-1 = w(-t u th(u)^-1, th(u))
            let ub = ring.theta(q.u);
            let t = ring.neg(ring.mul(ring.mul(q.t, q.u), ring.try_inv(ub)?));
            Param::P(AForm { t, u: ub })
        }
        (LetterKind::H, Param::S(t)) => Param::S(ring.try_inv(*t)?),
        (LetterKind::H, Param::PP(a, b)) => {
            let wa = letter_inverse(rep, ring, &Letter { kind: LetterKind::W, root: l.root, p: Param::P(*a) })?;
            let wb = letter_inverse(rep, ring, &Letter { kind: LetterKind::W, root: l.root, p: Param::P(*b) })?;
            match (wb.p, wa.p) {
                (Param::P(x), Param::P(y)) => Param::PP(x, y),
                _ => unreachable!("w inverse of a pair is a pair"),
            }
        }
        (LetterKind::Chi, Param::V(v)) => Param::V(v.iter().map(|&a| ring.try_inv(a)).collect::<Result<_>>()?),
        _ => return Err(Error::BadParam(format!("{} letter has an ill-shaped parameter", l.kind))),
    };
    Ok(Letter { kind: l.kind, root: l.root, p })
}

/// Flattens a word into letters, resolving inverses letter by letter.
pub fn flatten(rep: &Rep, ring: &Ring, word: &Word) -> Result<Vec<Letter<Param>>> {
    let mut out = Vec::new();
    flatten_into(rep, ring, word, false, &mut out)?;
    Ok(out)
}

fn flatten_into(rep: &Rep, ring: &Ring, node: &Word, inverse: bool, out: &mut Vec<Letter<Param>>) -> Result<()> {
    match node {
        Node::L(l) => out.push(if inverse { letter_inverse(rep, ring, l)? } else { l.clone() }),
        Node::Inv(a) => flatten_into(rep, ring, a, !inverse, out)?,
        Node::Prod(xs) => {
            if inverse {
                for x in xs.iter().rev() {
                    flatten_into(rep, ring, x, true, out)?;
                }
            } else {
                for x in xs {
                    flatten_into(rep, ring, x, false, out)?;
                }
            }
        }
        Node::Comm(a, b) => {
            // [a, b]^-1 = [b, a]
            let (a, b) = if inverse { (b, a) } else { (a, b) };
            flatten_into(rep, ring, a, false, out)?;
            flatten_into(rep, ring, b, false, out)?;
            flatten_into(rep, ring, a, true, out)?;
            flatten_into(rep, ring, b, true, out)?;
        }
        Node::Conj(a, b) => {
            flatten_into(rep, ring, a, false, out)?;
            flatten_into(rep, ring, b, inverse, out)?;
            flatten_into(rep, ring, a, true, out)?;
        }
    }
    Ok(())
}

// -------------------------------------------------------------- evaluation

/// Evaluates a word in a representation over `ring`.
pub fn evaluate(rep: &Rep, ring: &Arc<Ring>, word: &Word) -> Result<Mat> {
    let letters = flatten(rep, ring, word)?;
    let mut m = rep.identity(ring);
    for l in &letters {
        check_letter(rep, ring, l)?;
        apply_letter(rep, ring, &mut m, l)?;
    }
    Ok(m)
}

/// Right-multiplies `m` by the matrix of one (valid) letter.
pub fn apply_letter(rep: &Rep, ring: &Arc<Ring>, m: &mut Mat, l: &Letter<Param>) -> Result<()> {
    let folded = rep.folded();
    let aut = folded.aut();
    let b = l.root;
    match (l.kind, &l.p) {
        (LetterKind::Root, Param::S(t)) => rep.mul_root_unipotent(m, b, *t),
        (LetterKind::X, Param::S(t)) => {
            let k = folded.class(folded.class_of(b)).orbit.len();
            for i in 0..k {
                rep.mul_root_unipotent(m, aut.apply_pow(b, i as i32), ring.theta_pow(*t, i as i32));
            }
        }
        (LetterKind::X, Param::P(q)) => {
            let rb = aut.apply(b);
            let mid = folded.system().add(b, rb).expect("A2 class middle root");
            let n = rep.basis().n(rb, b) as i64;
            rep.mul_root_unipotent(m, b, q.t);
            rep.mul_root_unipotent(m, rb, ring.theta(q.t));
            rep.mul_root_unipotent(m, mid, ring.scale(n, q.u));
        }
        (LetterKind::W, Param::S(t)) if folded.class(folded.class_of(b)).kind == ClassType::A2 => {
            // w_b(th t) w_{rho b}(1) w_b(t)
            let rb = aut.apply(b);
            mul_untwisted_w(rep, ring, m, b, ring.theta(*t))?;
            mul_untwisted_w(rep, ring, m, rb, ring.one())?;
            mul_untwisted_w(rep, ring, m, b, *t)?;
        }
        (LetterKind::W, Param::S(t)) => {
            let nb = folded.neg_base(b);
            let x = Letter { kind: LetterKind::X, root: b, p: Param::S(*t) };
            apply_letter(rep, ring, m, &x)?;
            let y = Letter { kind: LetterKind::X, root: nb, p: Param::S(ring.neg(ring.try_inv(*t)?)) };
            apply_letter(rep, ring, m, &y)?;
            apply_letter(rep, ring, m, &x)?;
        }
        (LetterKind::W, Param::P(q)) => {
            // x(t,u) x_{-[a]}(-th(u)^-1 . (t,u)) x(u th(u)^-1 . (t,u))
            let ubi = ring.try_inv(ring.theta(q.u))?;
            let nb = folded.neg_base(b);
            apply_letter(rep, ring, m, &Letter { kind: LetterKind::X, root: b, p: Param::P(*q) })?;
            let mid = aform::act(ring, ring.neg(ubi), *q);
            apply_letter(rep, ring, m, &Letter { kind: LetterKind::X, root: nb, p: Param::P(mid) })?;
            let last = aform::act(ring, ring.mul(q.u, ubi), *q);
            apply_letter(rep, ring, m, &Letter { kind: LetterKind::X, root: b, p: Param::P(last) })?;
        }
        (LetterKind::H, Param::S(t)) if folded.class(folded.class_of(b)).kind == ClassType::A2 => {
            // h_b(t) h_{rho b}(th t)
            let rb = aut.apply(b);
            let d1 = rep.torus_diagonal(ring, &rep.coroot_character(ring, b, *t)?)?;
            let d2 = rep.torus_diagonal(ring, &rep.coroot_character(ring, rb, ring.theta(*t))?)?;
            rep.mul_diagonal(m, &d1);
            rep.mul_diagonal(m, &d2);
        }
        (LetterKind::H, Param::S(t)) => {
            let w1 = Letter { kind: LetterKind::W, root: b, p: Param::S(*t) };
            let w2 = Letter { kind: LetterKind::W, root: b, p: Param::S(ring.neg(ring.one())) };
            apply_letter(rep, ring, m, &w1)?;
            apply_letter(rep, ring, m, &w2)?;
        }
        (LetterKind::H, Param::PP(a, c)) => {
            apply_letter(rep, ring, m, &Letter { kind: LetterKind::W, root: b, p: Param::P(*a) })?;
            apply_letter(rep, ring, m, &Letter { kind: LetterKind::W, root: b, p: Param::P(*c) })?;
        }
        (LetterKind::Chi, Param::V(v)) => {
            let d = rep.torus_diagonal(ring, &Character { values: v.clone() })?;
            rep.mul_diagonal(m, &d);
        }
        _ => return Err(Error::BadParam(format!("{} letter has an ill-shaped parameter", l.kind))),
    }
    Ok(())
}

/// `m <- m * w_a(t)` with `w_a(t) = x_a(t) x_{-a}(-1/t) x_a(t)`.
pub fn mul_untwisted_w(rep: &Rep, ring: &Ring, m: &mut Mat, a: RootId, t: Elem) -> Result<()> {
    let ti = ring.try_inv(t)?;
    rep.mul_root_unipotent(m, a, t);
    rep.mul_root_unipotent(m, rep.sys().neg(a), ring.neg(ti));
    rep.mul_root_unipotent(m, a, t);
    Ok(())
}

/// Canonicalizes an `x` letter to the class's canonical base:
/// `x_[rho^k b](p) = x_[b](th^-k p)`.
pub fn canonical_x(folded: &Folded, ring: &Ring, root: RootId, p: &Param) -> Result<(RootId, Param)> {
    let k = folded.base_shift(root)?;
    let base = folded.class(folded.class_of(root)).base();
    let back = -k;
    let p = match p {
        Param::S(t) => Param::S(ring.theta_pow(*t, back)),
        Param::P(q) => Param::P(AForm { t: ring.theta_pow(q.t, back), u: ring.theta_pow(q.u, back) }),
        other => other.clone(),
    };
    Ok((base, p))
}

/// Rebases an `x` parameter from the canonical base to `target`.
pub fn rebase_x(folded: &Folded, ring: &Ring, target: RootId, p: &Param) -> Result<Param> {
    let k = folded.base_shift(target)?;
    Ok(match p {
        Param::S(t) => Param::S(ring.theta_pow(*t, k)),
        Param::P(q) => Param::P(AForm { t: ring.theta_pow(q.t, k), u: ring.theta_pow(q.u, k) }),
        other => other.clone(),
    })
}
