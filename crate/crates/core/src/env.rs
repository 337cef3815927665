//! Enveloping algebras `U(s)`, `U(sbar)`, `U(stilde)` and the quotient
//! `Ubar = U(stilde) / I`, where `I` identifies products of `A`-symbols
//! with their product in `A` (`t^i·t^j = t^{i+j}`, `t^0 = 1`,
//! `t^i·ξ = t^i ξ`, `ξ·ξ = 0`).
//!
//! Elements are kept in PBW normal form with respect to the basis order
//!
//! ```text
//! C < T(i) (i ascending) < XiT(i) (i ascending) < L(n) (n ascending) < G(n) (n ascending)
//! ```
//!
//! so the `A`-part of every `Ubar` word sits at the far left as a single
//! symbol `t^i ξ^r`, and each odd generator occurs at most once.
//!
//! Straightening rewrites one adjacent pair at a time:
//!
//! * `x·y -> (-1)^{|x||y|} y·x + [x, y]` when `x > y`,
//! * `g·g -> [g, g] / 2` for odd `g`.
//!
//! Termination: a swap keeps the length and removes one inversion, a bracket
//! term is one generator shorter. The pair (length, inversions) decreases
//! lexicographically at every step.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coeff::{int, rat, render_combination, Scalar};
use crate::error::{Error, Result};
use crate::liealg::{generator_bracket, Flavor, Generator, LieElement, Parity};
use crate::verify::Residue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnvFlavor {
    S,
    SBar,
    STilde,
    UBar,
}

impl EnvFlavor {
    /// The Lie superalgebra whose brackets drive straightening.
    pub fn lie(self) -> Flavor {
        match self {
            EnvFlavor::S => Flavor::S,
            EnvFlavor::SBar => Flavor::SBar,
            EnvFlavor::STilde | EnvFlavor::UBar => Flavor::STilde,
        }
    }

    pub fn allows(self, g: Generator) -> bool {
        self.lie().allows(g)
    }
}

impl fmt::Display for EnvFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnvFlavor::S => "U(s)",
            EnvFlavor::SBar => "U(sbar)",
            EnvFlavor::STilde => "U(stilde)",
            EnvFlavor::UBar => "Ubar",
        })
    }
}

/// Total order on generators used for normal forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenOrder {
    /// `C < T < XiT < L < G`, indices ascending.
    Pbw,
    /// `C`, then negative modes, then `G(0) < L(0)`, then positive modes.
    /// Used for highest-weight modules: positive modes end up on the right.
    Triangular,
}

impl GenOrder {
    fn key(self, g: Generator) -> (u8, u8, i64) {
        match self {
            GenOrder::Pbw => match g {
                Generator::C => (0, 0, 0),
                Generator::T(i) => (1, 0, i),
                Generator::XiT(i) => (2, 0, i),
                Generator::L(n) => (3, 0, n),
                Generator::G(n) => (4, 0, n),
            },
            GenOrder::Triangular => {
                let n = g.weight_shift();
                let class = match g {
                    Generator::C => 0,
                    _ if n < 0 => 1,
                    _ if n == 0 => 2,
                    _ => 3,
                };
                let sub = match g {
                    Generator::C => 0,
                    Generator::T(_) => 0,
                    Generator::XiT(_) => 1,
                    Generator::L(_) if n == 0 => 3,
                    Generator::G(_) if n == 0 => 2,
                    Generator::L(_) => 2,
                    Generator::G(_) => 3,
                };
                (class, sub, n)
            }
        }
    }

    fn cmp(self, a: Generator, b: Generator) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Which violation the straightener rewrites first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// A monomial; normal-form words are produced only by this module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub(crate) fn from_vec(gens: Vec<Generator>) -> Word {
        Word(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd(self.0.iter().filter(|g| g.parity().is_odd()).count() % 2 == 1)
    }
}

// Longer words first, then generator-wise in display order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rewriting engine: brackets from `flavor`, normal order `order`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Straightener {
    pub flavor: Flavor,
    pub order: GenOrder,
    pub strategy: Strategy,
}

impl Straightener {
    fn violation(&self, w: &[Generator]) -> Option<usize> {
        let bad = |i: usize| {
            let (x, y) = (w[i], w[i + 1]);
            match self.order.cmp(x, y) {
                Ordering::Greater => true,
                Ordering::Equal => x.parity().is_odd(),
                Ordering::Less => false,
            }
        };
        let n = w.len().saturating_sub(1);
        match self.strategy {
            Strategy::Leftmost => (0..n).find(|&i| bad(i)),
            Strategy::Rightmost => (0..n).rev().find(|&i| bad(i)),
        }
    }

    /// Straightens a linear combination of raw words.
    pub fn run(&self, input: impl IntoIterator<Item = (Vec<Generator>, Scalar)>) -> BTreeMap<Word, Scalar> {
        // keyed by (length, word) so the longest pending word is rewritten first
        let mut pending: BTreeMap<(usize, Vec<Generator>), Scalar> = BTreeMap::new();
        for (w, c) in input {
            accumulate(&mut pending, w, &c);
        }
        let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
        while let Some(((_, w), c)) = pending.pop_last() {
            let Some(i) = self.violation(&w) else {
                let e = done.entry(Word(w.clone())).or_default();
                *e += &c;
                if e.is_zero() {
                    done.remove(&Word(w));
                }
                continue;
            };
            let (x, y) = (w[i], w[i + 1]);
            let splice = |mid: &[Generator]| {
                let mut v = Vec::with_capacity(w.len());
                v.extend_from_slice(&w[..i]);
                v.extend_from_slice(mid);
                v.extend_from_slice(&w[i + 2..]);
                v
            };
            if x == y {
                // odd square: g·g = [g, g] / 2
                for (g, k) in generator_bracket(self.flavor, x, x) {
                    accumulate(&mut pending, splice(&[g]), &c.scale(&(k * rat(1, 2))));
                }
            } else {
                let sign = int(x.parity().sign(y.parity()));
                accumulate(&mut pending, splice(&[y, x]), &c.scale(&sign));
                for (g, k) in generator_bracket(self.flavor, x, y) {
                    accumulate(&mut pending, splice(&[g]), &c.scale(&k));
                }
            }
        }
        done
    }
}

fn accumulate(map: &mut BTreeMap<(usize, Vec<Generator>), Scalar>, w: Vec<Generator>, c: &Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry((w.len(), w)) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Multiplies out the leading `A`-symbols of a `U(stilde)` normal word.
/// `None` means the word lies in `I`.
fn collapse_a_prefix(w: &[Generator]) -> Option<Vec<Generator>> {
    let split = w.iter().position(|g| !g.is_a_part()).unwrap_or(w.len());
    let (prefix, rest) = w.split_at(split);
    let mut power = 0;
    let mut xi = 0;
    for g in prefix {
        match *g {
            Generator::T(i) => power += i,
            Generator::XiT(i) => {
                power += i;
                xi += 1;
            }
            _ => unreachable!(),
        }
    }
    if xi > 1 {
        return None;
    }
    let mut out = Vec::with_capacity(rest.len() + 1);
    match (xi, power) {
        (0, 0) => {}
        (0, p) => out.push(Generator::T(p)),
        (_, p) => out.push(Generator::XiT(p)),
    }
    out.extend_from_slice(rest);
    Some(out)
}

/// Finite combination of normal-form words in one enveloping algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EnvElement {
    flavor: EnvFlavor,
    terms: BTreeMap<Word, Scalar>,
}

impl EnvElement {
    pub fn zero(flavor: EnvFlavor) -> Self {
        EnvElement { flavor, terms: BTreeMap::new() }
    }

    pub fn one(flavor: EnvFlavor) -> Self {
        Self::scalar(flavor, Scalar::one())
    }

    pub fn scalar(flavor: EnvFlavor, s: Scalar) -> Self {
        let mut out = Self::zero(flavor);
        if !s.is_zero() {
            out.terms.insert(Word::unit(), s);
        }
        out
    }

    pub fn generator(flavor: EnvFlavor, g: Generator) -> Result<Self> {
        Self::pbw_normalize(vec![g], flavor)
    }

    /// Normal form of a raw product of generators.
    pub fn pbw_normalize(raw: Vec<Generator>, flavor: EnvFlavor) -> Result<Self> {
        Self::pbw_normalize_with(raw, flavor, Strategy::Leftmost)
    }

    pub fn pbw_normalize_with(raw: Vec<Generator>, flavor: EnvFlavor, strategy: Strategy) -> Result<Self> {
        Self::normalize_raw(flavor, [(raw, Scalar::one())], strategy)
    }

    fn normalize_raw(flavor: EnvFlavor, raw: impl IntoIterator<Item = (Vec<Generator>, Scalar)>, strategy: Strategy) -> Result<Self> {
        let raw: Vec<_> = raw.into_iter().collect();
        for (w, _) in &raw {
            if let Some(g) = w.iter().find(|g| !flavor.allows(**g)) {
                return Err(Error::IllegalGenerator { generator: *g, flavor: flavor.to_string() });
            }
        }
        let engine = Straightener { flavor: flavor.lie(), order: GenOrder::Pbw, strategy };
        let straight = engine.run(raw);
        let mut out = EnvElement::zero(flavor);
        for (w, c) in straight {
            if flavor == EnvFlavor::UBar {
                if let Some(v) = collapse_a_prefix(&w.0) {
                    out.add_term(Word(v), &c);
                }
            } else {
                out.add_term(w, &c);
            }
        }
        Ok(out)
    }

    /// Image of a Lie element as a degree-one element.
    pub fn from_lie(x: &LieElement, flavor: EnvFlavor) -> Result<Self> {
        if x.flavor() != flavor.lie() {
            return Err(Error::FlavorMismatch { left: x.flavor().to_string(), right: flavor.to_string() });
        }
        Self::normalize_raw(flavor, x.terms().map(|(g, c)| (vec![*g], c.clone())), Strategy::Leftmost)
    }

    pub fn flavor(&self) -> EnvFlavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[Generator]) -> Scalar {
        self.terms.get(&Word(w.to_vec())).cloned().unwrap_or_default()
    }

    /// Longest word length (0 for scalars and zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, s: &Scalar) -> EnvElement {
        let mut out = EnvElement::zero(self.flavor);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * s));
        }
        out
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Word::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn split_parity(&self) -> (EnvElement, EnvElement) {
        let mut even = EnvElement::zero(self.flavor);
        let mut odd = EnvElement::zero(self.flavor);
        for (w, c) in &self.terms {
            match w.parity() {
                Parity::Even => even.add_term(w.clone(), c),
                Parity::Odd => odd.add_term(w.clone(), c),
            }
        }
        (even, odd)
    }

    fn check_same_flavor(&self, other: &EnvElement) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch { left: self.flavor.to_string(), right: other.flavor.to_string() });
        }
        Ok(())
    }

    /// Product: concatenate words pairwise, then straighten.
    pub fn mul(&self, other: &EnvElement) -> Result<EnvElement> {
        self.mul_with(other, Strategy::Leftmost)
    }

    pub fn mul_with(&self, other: &EnvElement, strategy: Strategy) -> Result<EnvElement> {
        self.check_same_flavor(other)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.0.clone();
                w.extend_from_slice(&wb.0);
                raw.push((w, ca * cb));
            }
        }
        Self::normalize_raw(self.flavor, raw, strategy)
    }

    /// Re-straightens the element (idempotent on normal forms).
    pub fn renormalize(&self) -> Result<EnvElement> {
        Self::normalize_raw(self.flavor, self.terms.iter().map(|(w, c)| (w.0.clone(), c.clone())), Strategy::Leftmost)
    }
}

/// `a·b - (-1)^{|a||b|} b·a`, summed over parity components.
pub fn supercommutator(a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
    a.check_same_flavor(b)?;
    let parts = |e: &EnvElement| {
        let (ev, od) = e.split_parity();
        [(Parity::Even, ev), (Parity::Odd, od)].into_iter().filter(|(_, p)| !p.is_zero()).collect::<Vec<_>>()
    };
    let mut out = EnvElement::zero(a.flavor);
    for (pa, x) in parts(a) {
        for (pb, y) in parts(b) {
            let xy = x.mul(&y)?;
            let yx = y.mul(&x)?.scale(&Scalar::from(pa.sign(pb)));
            out = &out + &(&xy - &yx);
        }
    }
    Ok(out)
}

/// Reduces a `U(stilde)` element modulo `I`, producing a `Ubar` element.
pub fn ubar_reduce(a: &EnvElement) -> Result<EnvElement> {
    if !matches!(a.flavor, EnvFlavor::STilde | EnvFlavor::UBar) {
        return Err(Error::FlavorMismatch { left: a.flavor.to_string(), right: EnvFlavor::STilde.to_string() });
    }
    EnvElement::normalize_raw(EnvFlavor::UBar, a.terms.iter().map(|(w, c)| (w.0.clone(), c.clone())), Strategy::Leftmost)
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_combination(self.terms.iter().map(|(w, c)| (if w.is_empty() { String::new() } else { w.to_string() }, c))))
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.flavor, self)
    }
}

impl Residue for EnvElement {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Add<&EnvElement> for &EnvElement {
    type Output = EnvElement;
    fn add(self, rhs: &EnvElement) -> EnvElement {
        debug_assert_eq!(self.flavor, rhs.flavor);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub<&EnvElement> for &EnvElement {
    type Output = EnvElement;
    fn sub(self, rhs: &EnvElement) -> EnvElement {
        self + &(-rhs)
    }
}

impl Neg for &EnvElement {
    type Output = EnvElement;
    fn neg(self) -> EnvElement {
        EnvElement { flavor: self.flavor, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}
