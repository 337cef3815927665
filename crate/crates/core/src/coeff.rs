//! Exact coefficients: arbitrary-precision rationals and polynomials in the
//! formal parameters `lambda`, `b`, `c`, `h`.
//!
//! A [`Scalar`] is a sparse map from exponent vectors to nonzero rationals.
//! Monomials are ordered graded-lexicographically with `lambda < b < c < h`,
//! so every polynomial has exactly one stored representation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `n choose k` for small non-negative arguments.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

/// The four formal parameters, in monomial-order position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Lambda,
    B,
    C,
    H,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Lambda, Param::B, Param::C, Param::H];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::Lambda => "lambda",
            Param::B => "b",
            Param::C => "c",
            Param::H => "h",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Exponent vector `(e_lambda, e_b, e_c, e_h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(p: Param) -> Monomial {
        let mut e = [0; 4];
        e[p.slot()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, p: Param) -> u32 {
        self.0[p.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

// graded lex, lambda < b < c < h
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Param::ALL {
            let e = self.exponent(p);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(p.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Partial substitution of rational values for parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment([Option<Rational>; 4]);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, value: Rational) -> Self {
        self.0[p.slot()] = Some(value);
        self
    }

    pub fn get(&self, p: Param) -> Option<&Rational> {
        self.0[p.slot()].as_ref()
    }
}

/// Polynomial in `lambda, b, c, h` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Rational::one())
    }

    pub fn param(p: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(p), Rational::one());
        Scalar { terms }
    }

    pub fn lambda() -> Self {
        Self::param(Param::Lambda)
    }

    pub fn b() -> Self {
        Self::param(Param::B)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from(rat(num, den))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut s = Scalar::zero();
        s.add_term(m, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    /// The value if this polynomial is a constant.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.keys().map(|m| m.exponent(p)).max().unwrap_or(0)
    }

    /// Substitutes the assigned parameters; unassigned ones stay formal.
    pub fn evaluate(&self, sigma: &Assignment) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = [0u32; 4];
            for p in Param::ALL {
                let e = m.exponent(p);
                match sigma.get(p) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => rest[p.slot()] = e,
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect() }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// True if the single stored term has a negative coefficient.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.is_negative())
    }

    /// Terms in display order: total degree descending, then `lambda`-heaviest first.
    fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.0.cmp(&a.0)));
        v
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rational) -> fmt::Result {
    if m.is_one() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{c}*{m}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write_term(f, m, &c.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Renders `sum coeff*basis` with the sign folded into the joiners.
///
/// An empty basis string denotes the unit. Multi-term coefficients are
/// parenthesised.
pub(crate) fn render_combination<'a>(terms: impl IntoIterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (basis, coeff) in terms {
        let first = out.is_empty();
        let (neg, body) = if coeff.num_terms() == 1 {
            let neg = coeff.is_negative_monomial();
            let abs = if neg { -coeff.clone() } else { coeff.clone() };
            let body = match (abs.is_one(), basis.is_empty()) {
                (_, true) => abs.to_string(),
                (true, false) => basis,
                (false, false) => format!("{abs}*{basis}"),
            };
            (neg, body)
        } else if basis.is_empty() {
            (false, format!("({coeff})"))
        } else {
            (false, format!("({coeff})*{basis}"))
        };
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::monomial(Monomial::ONE, r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from(int(n))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Scalar {
        Scalar::lambda()
    }

    #[test]
    fn difference_of_squares() {
        let one = Scalar::one();
        let lhs = (lam() + &one) * (lam() - &one);
        let rhs = lam() * lam() - one;
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "lambda^2 - 1");
    }

    #[test]
    fn additive_identity_and_scaling() {
        let x = Scalar::ratio(3, 2) * lam() * Scalar::b() + Scalar::from(7);
        assert_eq!(&x + &Scalar::zero(), x);
        let half_b = Scalar::ratio(1, 2) * Scalar::b();
        assert_eq!(half_b * Scalar::from(4), Scalar::from(2) * Scalar::b());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = lam() * Scalar::b() + Scalar::from(1);
        let d = &x - &x;
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn evaluate_substitutes_assigned_only() {
        // lambda + i + m*b at i = 2, m = 5, lambda -> 1/2, b -> 0
        let p = lam() + Scalar::from(2) + Scalar::from(5) * Scalar::b();
        let sigma = Assignment::new().with(Param::Lambda, rat(1, 2)).with(Param::B, int(0));
        assert_eq!(p.evaluate(&sigma), Scalar::ratio(5, 2));

        assert!(Scalar::zero().evaluate(&sigma).is_zero());

        let q = Scalar::from(4) * lam() * Scalar::b();
        let s = Assignment::new().with(Param::Lambda, rat(1, 3));
        assert_eq!(q.evaluate(&s), Scalar::ratio(4, 3) * Scalar::b());
    }

    #[test]
    fn rendering() {
        let x = Scalar::ratio(3, 2) * lam() * lam() * Scalar::b();
        assert_eq!(x.to_string(), "3/2*lambda^2*b");
        let y = lam() + Scalar::from(3) * Scalar::b() + Scalar::ratio(3, 2);
        assert_eq!(y.to_string(), "lambda + 3*b + 3/2");
        assert_eq!(Scalar::ratio(-1, 24).to_string(), "-1/24");
        assert_eq!((-lam()).to_string(), "-lambda");
    }

    #[test]
    fn monomial_order_is_graded() {
        let l = Monomial::var(Param::Lambda);
        let b = Monomial::var(Param::B);
        let h = Monomial::var(Param::H);
        assert!(l < b && b < h);
        assert!(h < l.mul(&l));
        assert!(Monomial::ONE < l);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, 0), int(1));
        assert_eq!(binomial(3, 4), int(0));
    }
}
