//! Element expressions: a small arithmetic language over ring elements,
//! used for parsing scalars and for symbolic certificate parameters.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? digits)?
//! atom    := digits | '#' digits | 'x' | 'e' | ident | ident '(' sum ')'
//!          | '(' sum (',' sum)* ')' | '[' sum ']'
//! ```
//!
//! `th(a)` and `th2(a)` apply the ring automorphism once or twice.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{build, Elem, Layout, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(i64),
    /// Raw dense element index.
    Index(usize),
    X,
    Eps,
    Var(String),
    Tuple(Vec<Expr>),
    /// A coset representative written in the parent ring of a quotient.
    Coset(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    /// `th^k`.
    Th(Box<Expr>, u8),
}

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::ElementParse { input: input.to_string(), reason: reason.into() }
}

impl Expr {
    pub fn int(k: i64) -> Expr {
        Expr::Int(k)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn th(self) -> Expr {
        self.th_pow(1)
    }

    pub fn th_pow(self, k: u8) -> Expr {
        if k == 0 {
            self
        } else {
            Expr::Th(Box::new(self), k)
        }
    }

    pub fn pow(self, k: i64) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn inv(self) -> Expr {
        self.pow(-1)
    }

    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn half(self) -> Expr {
        self.div(Expr::Int(2))
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Int(0))
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0, text };
        let e = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(parse_err(text, format!("unexpected token {:?}", p.tokens[p.pos])));
        }
        Ok(e)
    }

    /// Free variables, in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Tuple(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Expr::Coset(a) | Expr::Neg(a) | Expr::Pow(a, _) | Expr::Th(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            _ => {}
        }
    }

    /// Evaluates in `ring`, resolving variables through `env`.
    pub fn eval(&self, ring: &Ring, env: &dyn Fn(&str) -> Option<Elem>) -> Result<Elem> {
        Ok(match self {
            Expr::Int(k) => ring.from_int(*k),
            Expr::Index(i) => ring.elem(*i)?,
            Expr::X => ring
                .generator_x()
                .ok_or_else(|| parse_err("x", format!("{} has no generator x", ring.descriptor())))?,
            Expr::Eps => ring
                .epsilon()
                .ok_or_else(|| parse_err("e", format!("{} has no nilpotent e", ring.descriptor())))?,
            Expr::Var(v) => env(v).ok_or_else(|| Error::UnboundVar(v.clone()))?,
            Expr::Tuple(items) => eval_tuple(ring, items)?,
            Expr::Coset(inner) => match ring.layout() {
                Layout::Quotient { parent, .. } => {
                    let a = inner.eval(parent, &|_| None)?;
                    build::embed_base(ring, a)
                }
                _ => return Err(parse_err(&self.to_string(), "brackets need a quotient ring")),
            },
            Expr::Add(a, b) => ring.add(a.eval(ring, env)?, b.eval(ring, env)?),
            Expr::Sub(a, b) => ring.sub(a.eval(ring, env)?, b.eval(ring, env)?),
            Expr::Mul(a, b) => ring.mul(a.eval(ring, env)?, b.eval(ring, env)?),
            Expr::Div(a, b) => ring.div(a.eval(ring, env)?, b.eval(ring, env)?)?,
            Expr::Neg(a) => ring.neg(a.eval(ring, env)?),
            Expr::Pow(a, k) => ring.pow(a.eval(ring, env)?, *k)?,
            Expr::Th(a, k) => ring.theta_pow(a.eval(ring, env)?, *k as i32),
        })
    }

    /// Evaluates an expression without variables.
    pub fn eval_const(&self, ring: &Ring) -> Result<Elem> {
        self.eval(ring, &|_| None)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Int(k) if *k < 0 => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn eval_tuple(ring: &Ring, items: &[Expr]) -> Result<Elem> {
    match ring.layout() {
        Layout::Product { base, m } if *m == items.len() => {
            let comps = items.iter().map(|e| e.eval_const(base)).collect::<Result<Vec<_>>>()?;
            ring.from_components(&comps)
        }
        Layout::Dual { base, .. } | Layout::Quotient { parent: base, .. } => {
            let b = eval_tuple(base, items)?;
            Ok(build::embed_base(ring, b))
        }
        _ if items.len() == 1 => items[0].eval_const(ring),
        _ => Err(parse_err(
            &Expr::Tuple(items.to_vec()).to_string(),
            format!("tuple of length {} does not fit {}", items.len(), ring.descriptor()),
        )),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(k) => write!(f, "{k}"),
            Expr::Index(i) => write!(f, "#{i}"),
            Expr::X => write!(f, "x"),
            Expr::Eps => write!(f, "e"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Tuple(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Expr::Coset(a) => write!(f, "[{a}]"),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "+")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "-")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(a, k) => {
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
            Expr::Th(a, 1) => write!(f, "th({a})"),
            Expr::Th(a, k) => write!(f, "th{k}({a})"),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl From<i64> for Expr {
    fn from(k: i64) -> Expr {
        Expr::Int(k)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Hash(usize),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| parse_err(text, "integer too large"))?));
        } else if c == '#' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Hash(s.parse().map_err(|_| parse_err(text, "expected index after #"))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),[]".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(parse_err(text, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(parse_err(self.text, format!("expected `{c}`")))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = lhs + self.term()?;
            } else if self.eat_sym('-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Hash(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('['))
        )
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = lhs * self.unary()?;
            } else if self.eat_sym('/') {
                lhs = lhs.div(self.unary()?);
            } else if self.starts_atom() {
                lhs = lhs * self.power()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let neg = self.eat_sym('-');
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    Ok(base.pow(if neg { -k } else { k }))
                }
                _ => Err(parse_err(self.text, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned().ok_or_else(|| parse_err(self.text, "unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Num(k) => Ok(Expr::Int(k)),
            Tok::Hash(i) => Ok(Expr::Index(i)),
            Tok::Ident(name) => {
                let th = match name.as_str() {
                    "th" => Some(1),
                    "th2" => Some(2),
                    _ => None,
                };
                if let Some(k) = th {
                    self.expect_sym('(')?;
                    let inner = self.sum()?;
                    self.expect_sym(')')?;
                    return Ok(inner.th_pow(k));
                }
                Ok(match name.as_str() {
                    "x" => Expr::X,
                    "e" => Expr::Eps,
                    _ => Expr::Var(name),
                })
            }
            Tok::Sym('(') => {
                let first = self.sum()?;
                if self.eat_sym(',') {
                    let mut items = vec![first];
                    loop {
                        items.push(self.sum()?);
                        if !self.eat_sym(',') {
                            break;
                        }
                    }
                    self.expect_sym(')')?;
                    Ok(Expr::Tuple(items))
                } else {
                    self.expect_sym(')')?;
                    Ok(first)
                }
            }
            Tok::Sym('[') => {
                let inner = self.sum()?;
                self.expect_sym(']')?;
                Ok(Expr::Coset(Box::new(inner)))
            }
            t => Err(parse_err(self.text, format!("unexpected token {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_in_gf9() {
        let r = Ring::make("gf(9;frob)").unwrap();
        let x = r.generator_x().unwrap();
        assert_eq!(r.parse("x").unwrap(), x);
        assert_eq!(r.parse("2x+1").unwrap(), r.add(r.mul(r.from_int(2), x), r.one()));
        assert_eq!(r.parse("x^2").unwrap(), r.mul(x, x));
        assert_eq!(r.parse("x^-1*x").unwrap(), r.one());
        assert_eq!(r.parse("th(x)").unwrap(), r.theta(x));
        assert_eq!(r.parse("1/2").unwrap(), r.from_int(2));
        assert_eq!(r.parse("-1").unwrap(), r.from_int(2));
        assert!(r.parse("1/0").is_err());
        assert!(r.parse("e").is_err());
        assert!(matches!(r.parse("u"), Err(Error::UnboundVar(_))));
    }

    #[test]
    fn variables_and_display() {
        let e = Expr::parse("th(u)*z - (u+1)/2").unwrap();
        assert_eq!(e.vars(), vec!["u".to_string(), "z".to_string()]);
        let again = Expr::parse(&e.to_string()).unwrap();
        assert_eq!(again, e);
        let r = Ring::make("gf(9;frob)").unwrap();
        let x = r.generator_x().unwrap();
        let env = |v: &str| match v {
            "u" => Some(x),
            "z" => Some(r.one()),
            _ => None,
        };
        let got = e.eval(&r, &env).unwrap();
        let want = r.sub(r.theta(x), r.div(r.add(x, r.one()), r.from_int(2)).unwrap());
        assert_eq!(got, want);
    }

    #[test]
    fn nested_tuples_in_dual_of_product() {
        let r = Ring::make("dual(prod2(gf(3));2)").unwrap();
        let a = r.parse("(1,2)+(0,1)*e").unwrap();
        assert_eq!(r.format(a), "(1,2)+(0,1)*e");
        assert_eq!(r.parse(&r.format(a)).unwrap(), a);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..5).prop_map(Expr::Int),
            Just(Expr::X),
            Just(Expr::var("u")),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                inner.clone().prop_map(|a| -a),
                inner.clone().prop_map(Expr::th),
                (inner, 0i64..4).prop_map(|(a, k)| a.pow(k)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_preserves_value(e in arb_expr(), u in 0usize..9) {
            let r = Ring::make("gf(9;frob)").unwrap();
            let env = |_: &str| Some(Elem(u as u16));
            let reparsed = Expr::parse(&e.to_string()).unwrap();
            prop_assert_eq!(e.eval(&r, &env).unwrap(), reparsed.eval(&r, &env).unwrap());
        }

        #[test]
        fn format_parse_round_trip(i in 0usize..81) {
            let r = Ring::make("dual(gf(9;frob);2)").unwrap();
            let a = r.elem(i).unwrap();
            prop_assert_eq!(r.parse(&r.format(a)).unwrap(), a);
        }
    }
}
