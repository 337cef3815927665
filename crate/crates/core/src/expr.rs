//! Plain-text expressions for algebra elements and module vectors.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := factor ("^" posint)?
//! factor := rational | param | gen | vector | weyl
//!         | "[" expr "," expr "]" | "(" expr ")"
//! gen    := ("L" | "G" | "t" | "xit" | "X" | "Y") "(" int ")" | "C" | "xi"
//! vector := "e" "(" int "," ("0" | "1") ")"
//! weyl   := "d_t" | "d_xi" | "G0_image"
//! ```
//!
//! Whitespace is ignored. `X(0)` and `Y(0)` are rejected.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::{int, Param, Rational, Scalar};
use crate::env::{supercommutator, EnvElement, EnvFlavor};
use crate::error::{Error, Result};
use crate::liealg::{Generator, Parity};
use crate::modules::gamma::{GammaModule, GammaVector, WeylModule, WeylOp};
use crate::modules::verma::{VermaModule, VermaVector};
use crate::twist::{make_twist, TwistKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Param(Param),
    Gen(Generator),
    Twist(TwistKind, i64),
    Vector(i64, u8),
    Weyl(WeylOp),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(q) if q.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Renders with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Param(p) => f.write_str(p.name()),
            Expr::Gen(Generator::XiT(0)) => f.write_str("xi"),
            Expr::Gen(Generator::XiT(i)) => write!(f, "xit({i})"),
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Twist(k, m) => write!(f, "{k}({m})"),
            Expr::Vector(i, r) => write!(f, "e({i},{r})"),
            Expr::Weyl(op) => write!(f, "{op}"),
            Expr::Neg(e) => match e.as_ref() {
                Expr::Num(_) => write!(f, "-({e})"),
                _ => {
                    f.write_str("-")?;
                    write_child(f, e, 3)
                }
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                f.write_str("*")?;
                write_child(f, b, 3)
            }
            Expr::Pow(a, n) => {
                let atom = match a.as_ref() {
                    Expr::Num(q) => q.is_integer() && !q.is_negative(),
                    other => other.precedence() >= 5,
                };
                if atom {
                    write!(f, "{a}^{n}")
                } else {
                    write!(f, "({a})^{n}")
                }
            }
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|c| c.1).collect();
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|c| c.1).collect())));
        } else if "+-*/^[](),".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            k += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character '{ch}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn index(&mut self) -> Result<i64> {
        let pos = self.pos();
        let neg = self.eat('-');
        let n = self.natural()?;
        if self.peek() == Some(&Tok::Sym('/')) {
            return self.error("generator index must be an integer");
        }
        let n = if neg { -n } else { n };
        i64::try_from(n).map_err(|_| Error::Syntax { pos, msg: "index out of range".into() })
    }

    fn indexed(&mut self) -> Result<i64> {
        self.expect('(')?;
        let i = self.index()?;
        self.expect(')')?;
        Ok(i)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            // A bare literal folds into a negative number; `-(3)` and `-3^2` stay negations.
            if matches!(self.peek(), Some(Tok::Int(_))) {
                return Ok(match self.power()? {
                    Expr::Num(q) => Expr::Num(-q),
                    e => Expr::Neg(Box::new(e)),
                });
            }
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.factor()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let n = self.natural()?;
        let n = u32::try_from(n).map_err(|_| Error::Syntax { pos, msg: "exponent out of range".into() })?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn factor(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                if self.eat('/') {
                    let d = self.natural()?;
                    if d.is_zero() {
                        return Err(Error::Syntax { pos, msg: "zero denominator".into() });
                    }
                    return Ok(Expr::Num(Rational::new(n, d)));
                }
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.named(pos, &name)
            }
            Some(Tok::Sym(c)) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn named(&mut self, pos: usize, name: &str) -> Result<Expr> {
        if let Some(p) = Param::from_name(name) {
            return Ok(Expr::Param(p));
        }
        Ok(match name {
            "C" => Expr::Gen(Generator::C),
            "xi" => Expr::Gen(Generator::XiT(0)),
            "d_t" => Expr::Weyl(WeylOp::Dt),
            "d_xi" => Expr::Weyl(WeylOp::Dxi),
            "G0_image" => Expr::Weyl(WeylOp::G0Image),
            "L" => Expr::Gen(Generator::L(self.indexed()?)),
            "G" => Expr::Gen(Generator::G(self.indexed()?)),
            "t" => Expr::Gen(Generator::T(self.indexed()?)),
            "xit" => Expr::Gen(Generator::XiT(self.indexed()?)),
            "X" | "Y" => {
                let kind = if name == "X" { TwistKind::X } else { TwistKind::Y };
                let at = self.pos();
                let m = self.indexed()?;
                if m == 0 {
                    return Err(Error::Syntax { pos: at, msg: "twist index must be nonzero".into() });
                }
                Expr::Twist(kind, m)
            }
            "e" => {
                self.expect('(')?;
                let i = self.index()?;
                self.expect(',')?;
                let at = self.pos();
                let r = self.natural()?;
                if r > BigInt::one() {
                    return Err(Error::Syntax { pos: at, msg: "parity slot must be 0 or 1".into() });
                }
                self.expect(')')?;
                Expr::Vector(i, u8::from(r.is_one()))
            }
            _ => return Err(Error::UnknownSymbol { pos, name: name.to_string() }),
        })
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.error("trailing input");
    }
    Ok(e)
}

/// Where an expression is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Context {
    Algebra(EnvFlavor),
    Gamma(GammaModule),
    Weyl(WeylModule),
    Verma(VermaModule),
}

impl Context {
    /// `s`, `sbar`, `stilde`, `ubar`, `gamma[(lambda, b)]`, `weyl[(lambda)]`,
    /// `verma[(h, c)]`. Omitted module parameters stay symbolic.
    pub fn parse(text: &str) -> Result<Context> {
        let text = text.trim();
        let (head, args) = match text.find('(') {
            Some(k) if text.ends_with(')') => (&text[..k], Some(&text[k + 1..text.len() - 1])),
            _ => (text, None),
        };
        let args: Vec<Scalar> = match args {
            Some(a) => a.split(',').map(parse_scalar).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let arity = |n: usize| -> Result<()> {
            if args.is_empty() || args.len() == n {
                Ok(())
            } else {
                Err(Error::ContextMismatch(format!("context '{head}' takes {n} parameters")))
            }
        };
        let arg = |k: usize, default: Param| args.get(k).cloned().unwrap_or_else(|| Scalar::param(default));
        match head.trim() {
            "s" | "sbar" | "stilde" | "ubar" | "Ubar" if args.is_empty() => Ok(Context::Algebra(match head.trim() {
                "s" => EnvFlavor::S,
                "sbar" => EnvFlavor::SBar,
                "stilde" => EnvFlavor::STilde,
                _ => EnvFlavor::UBar,
            })),
            "gamma" => {
                arity(2)?;
                Ok(Context::Gamma(GammaModule::new(arg(0, Param::Lambda), arg(1, Param::B))))
            }
            "weyl" => {
                arity(1)?;
                Ok(Context::Weyl(WeylModule::new(arg(0, Param::Lambda))))
            }
            "verma" => {
                arity(2)?;
                Ok(Context::Verma(VermaModule::new(arg(0, Param::H), arg(1, Param::C))))
            }
            other => Err(Error::ContextMismatch(format!("unknown context '{other}'"))),
        }
    }
}

/// A constant expression built from numbers and parameters.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    eval_scalar(&parse(text)?)
}

pub fn eval_scalar(e: &Expr) -> Result<Scalar> {
    let go = eval_scalar;
    Ok(match e {
        Expr::Num(q) => Scalar::from(q.clone()),
        Expr::Param(p) => Scalar::param(*p),
        Expr::Neg(a) => -go(a)?,
        Expr::Add(a, b) => &go(a)? + &go(b)?,
        Expr::Sub(a, b) => &go(a)? - &go(b)?,
        Expr::Mul(a, b) => &go(a)? * &go(b)?,
        Expr::Pow(a, n) => {
            let base = go(a)?;
            (0..*n).fold(Scalar::one(), |acc, _| &acc * &base)
        }
        other => return Err(Error::ContextMismatch(format!("'{other}' is not a scalar"))),
    })
}

/// A rational-valued parameter; symbols are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = parse_scalar(text)?;
    s.to_rational().ok_or_else(|| Error::NonNumericParameter(text.to_string()))
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Env(EnvElement),
    Vector(GammaVector),
    Verma(VermaVector),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Env(e) => write!(f, "{e}"),
            Value::Vector(v) => write!(f, "{v}"),
            Value::Verma(v) => write!(f, "{v}"),
        }
    }
}

/// Evaluates an algebra expression in an enveloping algebra.
pub fn eval_env(e: &Expr, flavor: EnvFlavor) -> Result<EnvElement> {
    let rec = |x: &Expr| eval_env(x, flavor);
    Ok(match e {
        Expr::Num(q) => EnvElement::scalar(flavor, Scalar::from(q.clone())),
        Expr::Param(p) => EnvElement::scalar(flavor, Scalar::param(*p)),
        Expr::Gen(g) => EnvElement::generator(flavor, *g)?,
        Expr::Twist(kind, m) => {
            if flavor != EnvFlavor::UBar {
                return Err(Error::ContextMismatch(format!("{e} lives in Ubar, not {flavor}")));
            }
            make_twist(*kind, *m)?.realization
        }
        Expr::Vector(..) => return Err(Error::ContextMismatch(format!("module vector {e} in algebra context {flavor}"))),
        Expr::Weyl(_) => return Err(Error::ContextMismatch(format!("{e} is only defined in the Weyl context"))),
        Expr::Neg(a) => -&rec(a)?,
        Expr::Add(a, b) => &rec(a)? + &rec(b)?,
        Expr::Sub(a, b) => &rec(a)? - &rec(b)?,
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?)?,
        Expr::Pow(a, n) => {
            let base = rec(a)?;
            let mut acc = EnvElement::one(flavor);
            for _ in 0..*n {
                acc = acc.mul(&base)?;
            }
            acc
        }
        Expr::Bracket(a, b) => supercommutator(&rec(a)?, &rec(b)?)?,
    })
}

/// Linear combination of raw operator words, used for module actions.
#[derive(Clone, Debug)]
struct Words<A: Ord> {
    terms: BTreeMap<Vec<A>, Scalar>,
}

impl<A: Ord + Clone> Words<A> {
    fn scalar(s: Scalar) -> Self {
        let mut w = Words { terms: BTreeMap::new() };
        w.add(Vec::new(), s);
        w
    }

    fn atom(a: A) -> Self {
        let mut w = Words { terms: BTreeMap::new() };
        w.add(vec![a], Scalar::one());
        w
    }

    fn add(&mut self, word: Vec<A>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(word.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&word);
        }
    }

    fn plus(mut self, other: Words<A>, sign: i64) -> Self {
        for (w, c) in other.terms {
            self.add(w, c.scale(&int(sign)));
        }
        self
    }

    fn times(&self, other: &Words<A>) -> Self {
        let mut out = Words { terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add(w, x * y);
            }
        }
        out
    }

    /// `[a, b] = ab - (-1)^{|a||b|} ba`, word by word.
    fn bracket(&self, other: &Words<A>, parity: impl Fn(&A) -> Parity) -> Self {
        let word_parity = |w: &[A]| w.iter().fold(Parity::Even, |p, a| p + parity(a));
        let mut out = Words { terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = x * y;
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                out.add(ab, c.clone());
                let mut ba = b.clone();
                ba.extend_from_slice(a);
                out.add(ba, c.scale(&int(-word_parity(a).sign(word_parity(b)))));
            }
        }
        out
    }
}

fn eval_words<A: Ord + Clone>(e: &Expr, atom: &dyn Fn(&Expr) -> Result<A>, parity: &dyn Fn(&A) -> Parity) -> Result<Words<A>> {
    let rec = |x: &Expr| eval_words(x, atom, parity);
    Ok(match e {
        Expr::Num(q) => Words::scalar(Scalar::from(q.clone())),
        Expr::Param(p) => Words::scalar(Scalar::param(*p)),
        Expr::Neg(a) => Words::scalar(Scalar::zero()).plus(rec(a)?, -1),
        Expr::Add(a, b) => rec(a)?.plus(rec(b)?, 1),
        Expr::Sub(a, b) => rec(a)?.plus(rec(b)?, -1),
        Expr::Mul(a, b) => rec(a)?.times(&rec(b)?),
        Expr::Pow(a, n) => {
            let base = rec(a)?;
            (0..*n).fold(Words::scalar(Scalar::one()), |acc, _| acc.times(&base))
        }
        Expr::Bracket(a, b) => rec(a)?.bracket(&rec(b)?, parity),
        leaf => Words::atom(atom(leaf)?),
    })
}

/// Evaluates a module vector: numbers, parameters and `e(i, r)`.
pub fn eval_gamma_vector(e: &Expr) -> Result<GammaVector> {
    let rec = eval_gamma_vector;
    let scalar = |x: &Expr| -> Result<Option<Scalar>> {
        match eval_scalar(x) {
            Ok(s) => Ok(Some(s)),
            Err(Error::ContextMismatch(_)) => Ok(None),
            Err(err) => Err(err),
        }
    };
    Ok(match e {
        Expr::Vector(i, r) => GammaVector::basis(*i, *r),
        Expr::Neg(a) => -&rec(a)?,
        Expr::Add(a, b) => &rec(a)? + &rec(b)?,
        Expr::Sub(a, b) => &rec(a)? - &rec(b)?,
        Expr::Mul(a, b) => match (scalar(a)?, scalar(b)?) {
            (Some(s), None) => rec(b)?.scale(&s),
            (None, Some(s)) => rec(a)?.scale(&s),
            _ => return Err(Error::ContextMismatch(format!("'{e}' is not a module vector"))),
        },
        other => return Err(Error::ContextMismatch(format!("'{other}' is not a module vector"))),
    })
}

fn gamma_atom(e: &Expr) -> Result<Generator> {
    match e {
        Expr::Gen(g) => Ok(*g),
        _ => Err(Error::ContextMismatch(format!("'{e}' does not act on gamma modules"))),
    }
}

fn weyl_atom(e: &Expr) -> Result<WeylOp> {
    match e {
        Expr::Gen(Generator::T(j)) => Ok(WeylOp::T(*j)),
        Expr::Gen(Generator::XiT(0)) => Ok(WeylOp::Xi),
        Expr::Weyl(op) => Ok(*op),
        _ => Err(Error::ContextMismatch(format!("'{e}' is not an operator of the Weyl module"))),
    }
}

fn weyl_parity(op: &WeylOp) -> Parity {
    Parity::from_odd(matches!(op, WeylOp::Xi | WeylOp::Dxi | WeylOp::G0Image))
}

fn verma_atom(e: &Expr) -> Result<Generator> {
    match e {
        Expr::Gen(g @ (Generator::L(_) | Generator::G(_) | Generator::C)) => Ok(*g),
        _ => Err(Error::ContextMismatch(format!("'{e}' does not act on verma modules"))),
    }
}

/// Evaluates `op` in `ctx`. Module contexts need a vector: a combination of
/// `e(i, r)` for `gamma`/`weyl`, or an operator applied to the cyclic vector
/// for `verma` (`None` means the cyclic vector itself).
pub fn eval_expr(op: &Expr, ctx: &Context, vector: Option<&Expr>) -> Result<Value> {
    let need = || vector.ok_or_else(|| Error::ContextMismatch("a vector is required in module contexts".into()));
    match ctx {
        Context::Algebra(flavor) => {
            if vector.is_some() {
                return Err(Error::ContextMismatch(format!("no vector is acted on in {flavor}")));
            }
            Ok(Value::Env(eval_env(op, *flavor)?))
        }
        Context::Gamma(m) => {
            let v = eval_gamma_vector(need()?)?;
            let words = eval_words(op, &gamma_atom, &|g: &Generator| g.parity())?;
            let mut out = GammaVector::zero();
            for (w, c) in &words.terms {
                out = &out + &m.act_word(w, &v).scale(c);
            }
            Ok(Value::Vector(out))
        }
        Context::Weyl(m) => {
            let v = eval_gamma_vector(need()?)?;
            let words = eval_words(op, &weyl_atom, &weyl_parity)?;
            let mut out = GammaVector::zero();
            for (w, c) in &words.terms {
                out = &out + &m.act_word(w, &v).scale(c);
            }
            Ok(Value::Vector(out))
        }
        Context::Verma(m) => {
            let parity = |g: &Generator| g.parity();
            let base = match vector {
                Some(v) => eval_words(v, &verma_atom, &parity)?,
                None => Words::scalar(Scalar::one()),
            };
            let words = eval_words(op, &verma_atom, &parity)?.times(&base);
            let hw = VermaModule::highest_weight_vector();
            let mut out = VermaVector::zero();
            for (w, c) in &words.terms {
                out = &out + &m.act_word(w, &hw)?.scale(c);
            }
            Ok(Value::Verma(out))
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_text(op: &str, ctx: &Context, vector: Option<&str>) -> Result<Value> {
    let vector = vector.map(parse).transpose()?;
    eval_expr(&parse(op)?, ctx, vector.as_ref())
}
