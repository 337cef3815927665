//! The Ramond superalgebra `s`, its centreless quotient `sbar`, and the
//! semidirect product `stilde = sbar ⋉ A` with `A = C[t, t^-1] ⊗ Λ(ξ)`.
//!
//! Brackets follow the sign convention `[L_m, L_n] = (n - m) L_{m+n}`.
//! In `stilde` the Laurent–Grassmann algebra `A` is an abelian ideal and
//! `sbar` acts on it by the super vector fields
//! `L_n ∘ x = t^{n+1} ∂_t x + (n/2) t^n ξ ∂_ξ x` and
//! `G_n ∘ x = t^{n+1} ξ ∂_t x - t^n ∂_ξ x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coeff::{binomial, int, rat, Rational, Scalar};
use crate::error::{Error, Result};
use crate::verify::{Residue, Verification};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_odd(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(-1)^{|x||y|}` as an integer.
    pub fn sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != rhs.is_odd())
    }
}

/// Basis symbols. `T(i)` is `t^i` and `XiT(i)` is `t^i ξ`; `ξ` itself is `XiT(0)`.
///
/// The derived order (L, G, T, XiT, C) is only used for display; enveloping
/// algebra straightening uses its own basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    L(i64),
    G(i64),
    T(i64),
    XiT(i64),
    C,
}

impl Generator {
    pub fn parity(self) -> Parity {
        match self {
            Generator::L(_) | Generator::T(_) | Generator::C => Parity::Even,
            Generator::G(_) | Generator::XiT(_) => Parity::Odd,
        }
    }

    /// Change of `L_0`-weight (the mode index).
    pub fn weight_shift(self) -> i64 {
        match self {
            Generator::L(n) | Generator::G(n) | Generator::T(n) | Generator::XiT(n) => n,
            Generator::C => 0,
        }
    }

    pub fn is_a_part(self) -> bool {
        matches!(self, Generator::T(_) | Generator::XiT(_))
    }

    pub fn is_virasoro_like(self) -> bool {
        matches!(self, Generator::L(_) | Generator::G(_))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::L(n) => write!(f, "L({n})"),
            Generator::G(n) => write!(f, "G({n})"),
            Generator::T(i) => write!(f, "t({i})"),
            Generator::XiT(0) => f.write_str("xi"),
            Generator::XiT(i) => write!(f, "xit({i})"),
            Generator::C => f.write_str("C"),
        }
    }
}

/// Which of the three superalgebras an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    S,
    SBar,
    STilde,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::S, Flavor::SBar, Flavor::STilde];

    pub fn allows(self, g: Generator) -> bool {
        match g {
            Generator::L(_) | Generator::G(_) => true,
            Generator::C => self == Flavor::S,
            Generator::T(_) | Generator::XiT(_) => self == Flavor::STilde,
        }
    }

    /// All basis generators with mode index in `[-bound, bound]`.
    pub fn generators(self, bound: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        for n in -bound..=bound {
            out.push(Generator::L(n));
            out.push(Generator::G(n));
        }
        match self {
            Flavor::S => out.push(Generator::C),
            Flavor::SBar => {}
            Flavor::STilde => {
                for i in -bound..=bound {
                    out.push(Generator::T(i));
                    out.push(Generator::XiT(i));
                }
            }
        }
        out
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::S => "s",
            Flavor::SBar => "sbar",
            Flavor::STilde => "stilde",
        })
    }
}

/// Finite linear combination of generators of one flavor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    flavor: Flavor,
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero(flavor: Flavor) -> Self {
        LieElement { flavor, terms: BTreeMap::new() }
    }

    pub fn generator(flavor: Flavor, g: Generator) -> Result<Self> {
        Self::from_terms(flavor, [(g, Scalar::one())])
    }

    pub fn from_terms(flavor: Flavor, terms: impl IntoIterator<Item = (Generator, Scalar)>) -> Result<Self> {
        let mut out = LieElement::zero(flavor);
        for (g, c) in terms {
            if !flavor.allows(g) {
                return Err(Error::illegal(g, flavor));
            }
            out.add_term(g, &c);
        }
        Ok(out)
    }

    /// Shorthand for generator literals known to be legal.
    pub(crate) fn gen(flavor: Flavor, g: Generator) -> Self {
        Self::generator(flavor, g).expect("generator legal for flavor")
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, g: Generator, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn scale(&self, s: &Scalar) -> LieElement {
        let mut out = LieElement::zero(self.flavor);
        for (g, c) in &self.terms {
            out.add_term(*g, &(c * s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> LieElement {
        LieElement {
            flavor: self.flavor,
            terms: if num_traits::Zero::is_zero(r) { BTreeMap::new() } else { self.terms.iter().map(|(g, c)| (*g, c.scale(r))).collect() },
        }
    }

    /// Reinterprets the element in another flavor (fails on illegal generators).
    pub fn with_flavor(&self, flavor: Flavor) -> Result<LieElement> {
        LieElement::from_terms(flavor, self.terms.iter().map(|(g, c)| (*g, c.clone())))
    }

    /// `Some(p)` if every term has parity `p`; the zero element counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|g| g.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Even and odd components.
    pub fn split_parity(&self) -> (LieElement, LieElement) {
        let mut even = LieElement::zero(self.flavor);
        let mut odd = LieElement::zero(self.flavor);
        for (g, c) in &self.terms {
            match g.parity() {
                Parity::Even => even.add_term(*g, c),
                Parity::Odd => odd.add_term(*g, c),
            }
        }
        (even, odd)
    }

    fn check_same_flavor(&self, other: &LieElement) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch { left: self.flavor.to_string(), right: other.flavor.to_string() });
        }
        Ok(())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::coeff::render_combination(self.terms.iter().map(|(g, c)| (g.to_string(), c))))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.flavor, self)
    }
}

impl Residue for LieElement {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Add<&LieElement> for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        debug_assert_eq!(self.flavor, rhs.flavor);
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(*g, c);
        }
        out
    }
}

impl Sub<&LieElement> for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self + &(-rhs)
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        LieElement { flavor: self.flavor, terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect() }
    }
}

/// Bracket of two basis generators, as a list of (generator, coefficient).
pub(crate) fn generator_bracket(flavor: Flavor, x: Generator, y: Generator) -> Vec<(Generator, Rational)> {
    use Generator::*;
    let central = flavor == Flavor::S;
    match (x, y) {
        (C, _) | (_, C) => vec![],
        (L(m), L(n)) => {
            let mut out = vec![(L(m + n), int(n - m))];
            // (m^3 - m)/12: the sign that keeps super-Jacobi with the odd central term below
            if central && m + n == 0 {
                out.push((C, rat(m * m * m - m, 12)));
            }
            out
        }
        (L(m), G(p)) => vec![(G(p + m), rat(2 * p - m, 2))],
        (G(p), L(m)) => vec![(G(p + m), rat(m - 2 * p, 2))],
        (G(p), G(q)) => {
            let mut out = vec![(L(p + q), int(-2))];
            if central && p + q == 0 {
                out.push((C, rat(4 * p * p - 1, 12)));
            }
            out
        }
        (L(n), T(i)) => vec![(T(n + i), int(i))],
        (L(n), XiT(i)) => vec![(XiT(n + i), rat(2 * i + n, 2))],
        (G(n), T(i)) => vec![(XiT(n + i), int(i))],
        (G(n), XiT(i)) => vec![(T(n + i), int(-1))],
        (T(_) | XiT(_), L(_) | G(_)) => {
            // [a, x] = -(-1)^{|a||x|} [x, a]
            let s = -x.parity().sign(y.parity());
            generator_bracket(flavor, y, x).into_iter().map(|(g, c)| (g, c * int(s))).collect()
        }
        (T(_) | XiT(_), T(_) | XiT(_)) => vec![],
    }
    .into_iter()
    .filter(|(_, c)| !num_traits::Zero::is_zero(c))
    .collect()
}

/// Bilinear super bracket. Central terms only appear in flavor `s`.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    x.check_same_flavor(y)?;
    let mut out = LieElement::zero(x.flavor);
    for (gx, cx) in &x.terms {
        for (gy, cy) in &y.terms {
            let c = cx * cy;
            for (g, k) in generator_bracket(x.flavor, *gx, *gy) {
                out.add_term(g, &c.scale(&k));
            }
        }
    }
    Ok(out)
}

/// Action of a single `A`-monomial (`T(i)` or `XiT(i)`) on `sbar`:
/// `t^i L_n = L_{n+i}`, `t^i G_n = G_{n+i}`, `t^i ξ L_n = G_{n+i}/2`, `t^i ξ G_n = 0`.
pub fn a_on_sbar(a: Generator, x: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero(x.flavor);
    for (g, c) in &x.terms {
        let (img, k) = match (a, *g) {
            (Generator::T(i), Generator::L(n)) => (Generator::L(n + i), int(1)),
            (Generator::T(i), Generator::G(n)) => (Generator::G(n + i), int(1)),
            (Generator::XiT(i), Generator::L(n)) => (Generator::G(n + i), rat(1, 2)),
            (Generator::XiT(_), Generator::G(_)) => continue,
            (Generator::T(_) | Generator::XiT(_), other) => return Err(Error::illegal(other, Flavor::SBar)),
            (other, _) => return Err(Error::IllegalGenerator { generator: other, flavor: "A".into() }),
        };
        if !x.flavor.allows(img) {
            return Err(Error::illegal(img, x.flavor));
        }
        out.add_term(img, &c.scale(&k));
    }
    Ok(out)
}

/// Linear extension of [`a_on_sbar`] to an element of `A` written in `stilde`.
pub fn a_element_on_sbar(a: &LieElement, x: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero(x.flavor);
    for (g, c) in a.terms() {
        let part = a_on_sbar(*g, x)?;
        out = &out + &part.scale(c);
    }
    Ok(out)
}

fn jacobi_homogeneous(x: &LieElement, y: &LieElement, z: &LieElement) -> Result<LieElement> {
    let px = x.parity().expect("homogeneous");
    let py = y.parity().expect("homogeneous");
    let a = bracket(x, &bracket(y, z)?)?;
    let b = bracket(&bracket(x, y)?, z)?;
    let c = bracket(y, &bracket(x, z)?)?.scale_rational(&int(px.sign(py)));
    Ok(&(&a - &b) - &c)
}

/// `[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]`, computed on parity
/// components and summed. Zero certifies the triple.
pub fn super_jacobi(x: &LieElement, y: &LieElement, z: &LieElement) -> Result<LieElement> {
    x.check_same_flavor(y)?;
    x.check_same_flavor(z)?;
    let parts = |e: &LieElement| {
        let (ev, od) = e.split_parity();
        [ev, od].into_iter().filter(|p| !p.is_zero()).collect::<Vec<_>>()
    };
    let mut out = LieElement::zero(x.flavor);
    for a in parts(x) {
        for b in parts(y) {
            for c in parts(z) {
                out = &out + &jacobi_homogeneous(&a, &b, &c)?;
            }
        }
    }
    Ok(out)
}

/// `(t-1)^k · x` through the `A`-module structure on `sbar`.
pub fn tminus1_times(k: u32, x: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero(x.flavor);
    for r in 0..=k {
        let sign = if (k - r) % 2 == 0 { 1 } else { -1 };
        let c = binomial(k as u64, r as u64) * int(sign);
        out = &out + &a_on_sbar(Generator::T(r as i64), x)?.scale_rational(&c);
    }
    Ok(out)
}

/// `(t-1)^k g` for a single `L(n)` or `G(n)`, in `sbar`.
pub fn tminus1_expand(k: u32, g: Generator) -> Result<LieElement> {
    if !g.is_virasoro_like() {
        return Err(Error::illegal(g, Flavor::SBar));
    }
    tminus1_times(k, &LieElement::gen(Flavor::SBar, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelKind {
    LL,
    LG,
    GG,
}

impl RelKind {
    pub const ALL: [RelKind; 3] = [RelKind::LL, RelKind::LG, RelKind::GG];
}

impl fmt::Display for RelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Closed form for `[(t-1)^k X_i, (t-1)^l Y_j]`.
fn rel_subalg_closed_form(k: u32, l: u32, i: i64, j: i64, kind: RelKind) -> Result<LieElement> {
    let (ki, li) = (k as i64, l as i64);
    let lower = |c: Rational, g: Generator| -> Result<LieElement> {
        if k + l == 0 {
            // coefficient vanishes whenever the exponent k + l - 1 is negative
            debug_assert!(num_traits::Zero::is_zero(&c));
            return Ok(LieElement::zero(Flavor::SBar));
        }
        Ok(tminus1_expand(k + l - 1, g)?.scale_rational(&c))
    };
    Ok(match kind {
        RelKind::LL => {
            let top = tminus1_expand(k + l, Generator::L(i + j))?.scale_rational(&int(li - ki + j - i));
            &top + &lower(int(li - ki), Generator::L(i + j))?
        }
        RelKind::LG => {
            let top = tminus1_expand(k + l, Generator::G(i + j))?.scale_rational(&rat(2 * j - i, 2));
            &top + &lower(rat(2 * li - ki, 2), Generator::G(i + j + 1))?
        }
        RelKind::GG => tminus1_expand(k + l, Generator::L(i + j))?.scale_rational(&int(-2)),
    })
}

/// Expands both sides of the `(t-1)`-filtration bracket identity; the residue is lhs - rhs.
pub fn verify_rel_subalg(k: u32, l: u32, i: i64, j: i64, kind: RelKind) -> Result<Verification<LieElement>> {
    let (x, y) = match kind {
        RelKind::LL => (Generator::L(i), Generator::L(j)),
        RelKind::LG => (Generator::L(i), Generator::G(j)),
        RelKind::GG => (Generator::G(i), Generator::G(j)),
    };
    let lhs = bracket(&tminus1_expand(k, x)?, &tminus1_expand(l, y)?)?;
    let rhs = rel_subalg_closed_form(k, l, i, j, kind)?;
    Ok(Verification::new(format!("rel_subalg/{kind}"), format!("k={k} l={l} i={i} j={j}"), &lhs - &rhs))
}

/// Laurent coefficients `(Σ a_n t^n, Σ b_n t^n)` of `x = p(t)·L_0 + q(t)·G_0`.
fn laurent_parts(x: &LieElement) -> Result<(Vec<(i64, Scalar)>, Vec<(i64, Scalar)>)> {
    let mut ls = Vec::new();
    let mut gs = Vec::new();
    for (g, c) in x.terms() {
        match *g {
            Generator::L(n) => ls.push((n, c.clone())),
            Generator::G(n) => gs.push((n, c.clone())),
            _ => return Err(Error::NotInA1(x.to_string())),
        }
    }
    Ok((ls, gs))
}

/// `p^{(j)}(1)` for `p = Σ c_n t^n`.
fn derivative_at_one(coeffs: &[(i64, Scalar)], j: u32) -> Scalar {
    let mut out = Scalar::zero();
    for (n, c) in coeffs {
        let falling: i64 = (0..j as i64).map(|s| n - s).product();
        out += c.scale(&int(falling));
    }
    out
}

/// Membership in `a_k = (t-1)^k sbar`: both Laurent parts vanish to order `k` at `t = 1`.
pub fn in_a_k(x: &LieElement, k: u32) -> bool {
    let Ok((ls, gs)) = laurent_parts(x) else {
        return false;
    };
    (0..k).all(|j| derivative_at_one(&ls, j).is_zero() && derivative_at_one(&gs, j).is_zero())
}

/// Image of `x ∈ a_1` in the two-dimensional quotient `a_1 / a_2 = span{X, Y}`,
/// returned as the pair of coefficients of `X` and `Y`.
pub fn a1_mod_a2_class(x: &LieElement) -> Result<(Scalar, Scalar)> {
    let (ls, gs) = laurent_parts(x)?;
    if !derivative_at_one(&ls, 0).is_zero() || !derivative_at_one(&gs, 0).is_zero() {
        return Err(Error::NotInA1(x.to_string()));
    }
    Ok((derivative_at_one(&ls, 1), derivative_at_one(&gs, 1)))
}

/// Bracket in `a_1/a_2`: `[X, Y] = Y/2`, all other brackets of basis elements zero.
pub fn quotient_bracket(a: &(Scalar, Scalar), b: &(Scalar, Scalar)) -> (Scalar, Scalar) {
    // [aX X + aY Y, bX X + bY Y] = (aX bY - aY bX) [X, Y]
    let half = Scalar::ratio(1, 2);
    (Scalar::zero(), (&a.0 * &b.1 - &a.1 * &b.0) * half)
}

/// Residue of the compatibility identity for `sbar` as an `stilde`-module:
/// `[x, a·y] - (-1)^{|x||a|} a·[x, y] - (x∘a)·y`.
pub fn compatibility_residue(x: Generator, a: Generator, y: Generator) -> Result<LieElement> {
    let sb = |g| LieElement::generator(Flavor::SBar, g);
    let xs = sb(x)?;
    let ys = sb(y)?;
    let first = bracket(&xs, &a_on_sbar(a, &ys)?)?;
    let sign = int(x.parity().sign(a.parity()));
    let second = a_on_sbar(a, &bracket(&xs, &ys)?)?.scale_rational(&sign);
    let x_on_a = bracket(&LieElement::generator(Flavor::STilde, x)?, &LieElement::generator(Flavor::STilde, a)?)?;
    let third = a_element_on_sbar(&x_on_a, &ys)?;
    Ok(&(&first - &second) - &third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn el(f: Flavor, g: Generator) -> LieElement {
        LieElement::gen(f, g)
    }

    fn lin(f: Flavor, terms: &[(Generator, Rational)]) -> LieElement {
        LieElement::from_terms(f, terms.iter().map(|(g, c)| (*g, Scalar::from(c.clone())))).unwrap()
    }

    #[test]
    fn virasoro_central_term() {
        let r = bracket(&el(Flavor::S, L(2)), &el(Flavor::S, L(-2))).unwrap();
        assert_eq!(r, lin(Flavor::S, &[(L(0), int(-4)), (C, rat(1, 2))]));
        assert_eq!(r.to_string(), "-4*L(0) + 1/2*C");
    }

    #[test]
    fn odd_bracket_central_term() {
        let r = bracket(&el(Flavor::S, G(1)), &el(Flavor::S, G(-1))).unwrap();
        assert_eq!(r, lin(Flavor::S, &[(L(0), int(-2)), (C, rat(1, 4))]));
    }

    #[test]
    fn central_terms_dropped_in_sbar() {
        let r = bracket(&el(Flavor::SBar, L(2)), &el(Flavor::SBar, L(-2))).unwrap();
        assert_eq!(r, lin(Flavor::SBar, &[(L(0), int(-4))]));
    }

    #[test]
    fn vanishing_mixed_coefficient() {
        assert!(bracket(&el(Flavor::S, L(2)), &el(Flavor::S, G(1))).unwrap().is_zero());
    }

    #[test]
    fn action_on_a() {
        let r = bracket(&el(Flavor::STilde, L(2)), &el(Flavor::STilde, T(3))).unwrap();
        assert_eq!(r, lin(Flavor::STilde, &[(T(5), int(3))]));
        let r = bracket(&el(Flavor::STilde, G(0)), &el(Flavor::STilde, XiT(0))).unwrap();
        assert_eq!(r, lin(Flavor::STilde, &[(T(0), int(-1))]));
    }

    #[test]
    fn flavor_mismatch_is_an_error() {
        let e = bracket(&el(Flavor::S, L(1)), &el(Flavor::SBar, L(1)));
        assert!(matches!(e, Err(Error::FlavorMismatch { .. })));
        assert!(LieElement::generator(Flavor::SBar, C).is_err());
        assert!(LieElement::generator(Flavor::S, T(1)).is_err());
    }

    #[test]
    fn a_module_structure() {
        let x = el(Flavor::SBar, L(-1));
        assert_eq!(a_on_sbar(T(3), &x).unwrap(), el(Flavor::SBar, L(2)));
        let y = el(Flavor::SBar, L(5));
        assert_eq!(a_on_sbar(XiT(0), &y).unwrap(), lin(Flavor::SBar, &[(G(5), rat(1, 2))]));
        assert!(a_on_sbar(XiT(2), &el(Flavor::SBar, G(7))).unwrap().is_zero());
    }

    #[test]
    fn jacobi_examples() {
        let s = |g| el(Flavor::S, g);
        assert!(super_jacobi(&s(L(1)), &s(L(2)), &s(L(-3))).unwrap().is_zero());
        assert!(super_jacobi(&s(G(1)), &s(G(-1)), &s(L(0))).unwrap().is_zero());
        let g0 = el(Flavor::SBar, G(0));
        assert!(super_jacobi(&g0, &g0, &g0).unwrap().is_zero());
    }

    #[test]
    fn jacobi_on_mixed_parity_input() {
        let x = &el(Flavor::STilde, L(1)) + &el(Flavor::STilde, G(-1));
        let y = &el(Flavor::STilde, XiT(2)) + &el(Flavor::STilde, T(-1));
        let z = &el(Flavor::STilde, G(2)) + &el(Flavor::STilde, L(0));
        assert!(super_jacobi(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn binomial_expansions() {
        assert_eq!(tminus1_expand(1, L(0)).unwrap(), lin(Flavor::SBar, &[(L(1), int(1)), (L(0), int(-1))]));
        assert_eq!(tminus1_expand(2, G(-1)).unwrap(), lin(Flavor::SBar, &[(G(1), int(1)), (G(0), int(-2)), (G(-1), int(1))]));
        assert_eq!(tminus1_expand(0, L(5)).unwrap(), el(Flavor::SBar, L(5)));
    }

    #[test]
    fn rel_subalg_examples() {
        let v = verify_rel_subalg(1, 1, 0, 1, RelKind::LL).unwrap();
        assert!(v.passed(), "{}", v.residue);
        let lhs = bracket(&tminus1_expand(1, L(0)).unwrap(), &tminus1_expand(1, L(1)).unwrap()).unwrap();
        assert_eq!(lhs, tminus1_expand(2, L(1)).unwrap());

        let lhs = bracket(&tminus1_expand(1, G(0)).unwrap(), &tminus1_expand(1, G(0)).unwrap()).unwrap();
        assert_eq!(lhs, tminus1_expand(2, L(0)).unwrap().scale_rational(&int(-2)));
        assert!(verify_rel_subalg(1, 1, 0, 0, RelKind::GG).unwrap().passed());

        let lhs = bracket(&tminus1_expand(2, L(0)).unwrap(), &tminus1_expand(1, L(0)).unwrap()).unwrap();
        let expect = &(-&tminus1_expand(3, L(0)).unwrap()) - &tminus1_expand(2, L(0)).unwrap();
        assert_eq!(lhs, expect);
        assert!(verify_rel_subalg(2, 1, 0, 0, RelKind::LL).unwrap().passed());
    }

    #[test]
    fn quotient_classes() {
        let x = a_on_sbar(T(3), &tminus1_expand(1, L(7)).unwrap()).unwrap();
        assert_eq!(a1_mod_a2_class(&x).unwrap(), (Scalar::one(), Scalar::zero()));
        let y = tminus1_expand(2, G(0)).unwrap();
        assert_eq!(a1_mod_a2_class(&y).unwrap(), (Scalar::zero(), Scalar::zero()));
        for m in -5..=5 {
            let z = &el(Flavor::SBar, L(m)) - &el(Flavor::SBar, L(0));
            // oracle: L(m) - L(0) telescopes into m classes of (t-1) t^k L(0)
            let mut tele = LieElement::zero(Flavor::SBar);
            let (lo, hi, sign) = if m >= 0 { (0, m, 1) } else { (m, 0, -1) };
            for k in lo..hi {
                let piece = a_on_sbar(T(k), &tminus1_expand(1, L(0)).unwrap()).unwrap();
                tele = &tele + &piece.scale_rational(&int(sign));
            }
            assert_eq!(tele, z);
            assert_eq!(a1_mod_a2_class(&z).unwrap(), (Scalar::from(m), Scalar::zero()));
        }
    }

    #[test]
    fn class_rejects_elements_outside_a1() {
        assert!(matches!(a1_mod_a2_class(&el(Flavor::SBar, L(3))), Err(Error::NotInA1(_))));
    }

    #[test]
    fn compatibility_identities_vanish() {
        for x in [L(2), G(-1)] {
            for a in [T(3), XiT(-2), XiT(0)] {
                for y in [L(1), G(0)] {
                    assert!(compatibility_residue(x, a, y).unwrap().is_zero(), "{x} {a} {y}");
                }
            }
        }
    }

    #[test]
    fn skew_symmetry_small_range() {
        for f in Flavor::ALL {
            let gens = f.generators(3);
            for &x in &gens {
                for &y in &gens {
                    let xy = bracket(&el(f, x), &el(f, y)).unwrap();
                    let yx = bracket(&el(f, y), &el(f, x)).unwrap();
                    let s = int(-x.parity().sign(y.parity()));
                    assert_eq!(xy, yx.scale_rational(&s), "{f} {x} {y}");
                }
            }
        }
    }
}
