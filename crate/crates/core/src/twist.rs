//! The twist elements `X_m`, `Y_m` of `Ubar` and the subalgebra they span.
//!
//! ```text
//! X_m = t^{-m}·L_m + (m/2) t^{-m}ξ·G_m - L_0
//! Y_m = t^{-m}·G_m - 2 t^{-m}ξ·L_m - G_0 + 2 ξ·L_0
//! ```
//!
//! They supercommute with `A` and `G_0`, close under the supercommutator,
//! and `X_m -> L_m - L_0`, `Y_m -> G_m - G_0` identifies their span with
//! `(t-1) sbar`. Both formulas give zero at `m = 0`, which is how `X_0` and
//! `Y_0` are read in the closed-form brackets.

use std::fmt;

use crate::coeff::{rat, Rational, Scalar};
use crate::env::{supercommutator, EnvElement, EnvFlavor};
use crate::error::{Error, Result};
use crate::liealg::{bracket, Flavor, Generator, LieElement, Parity};
use crate::verify::Verification;

use Generator::{XiT, G, L, T};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistKind {
    X,
    Y,
}

impl TwistKind {
    pub fn parity(self) -> Parity {
        match self {
            TwistKind::X => Parity::Even,
            TwistKind::Y => Parity::Odd,
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistElement {
    pub kind: TwistKind,
    pub m: i64,
    pub realization: EnvElement,
}

impl fmt::Display for TwistElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.m)
    }
}

fn ubar(terms: &[(&[Generator], Rational)]) -> EnvElement {
    let mut out = EnvElement::zero(EnvFlavor::UBar);
    for (w, c) in terms {
        let piece = EnvElement::pbw_normalize(w.to_vec(), EnvFlavor::UBar).expect("legal Ubar word");
        out = &out + &piece.scale(&Scalar::from(c.clone()));
    }
    out
}

/// Defining expression in `Ubar`, valid for every integer `m` (zero at `m = 0`).
pub(crate) fn twist_realization(kind: TwistKind, m: i64) -> EnvElement {
    let one = rat(1, 1);
    match kind {
        TwistKind::X => ubar(&[(&[T(-m), L(m)], one.clone()), (&[XiT(-m), G(m)], rat(m, 2)), (&[L(0)], -one)]),
        TwistKind::Y => ubar(&[(&[T(-m), G(m)], one.clone()), (&[XiT(-m), L(m)], rat(-2, 1)), (&[G(0)], -one), (&[XiT(0), L(0)], rat(2, 1))]),
    }
}

pub fn make_twist(kind: TwistKind, m: i64) -> Result<TwistElement> {
    if m == 0 {
        return Err(Error::ZeroTwistIndex);
    }
    Ok(TwistElement { kind, m, realization: twist_realization(kind, m) })
}

/// `L_m - L_0` or `G_m - G_0` in `sbar`.
pub fn phi_image(e: &TwistElement) -> LieElement {
    phi_basis(e.kind, e.m)
}

fn phi_basis(kind: TwistKind, m: i64) -> LieElement {
    let (a, b) = match kind {
        TwistKind::X => (L(m), L(0)),
        TwistKind::Y => (G(m), G(0)),
    };
    let one = Scalar::one();
    LieElement::from_terms(Flavor::SBar, [(a, one.clone()), (b, -one)]).expect("sbar generators")
}

/// Coordinates of a `Ubar` element in the basis `{X_k, Y_k : k != 0}`, if it lies in their span.
///
/// `X_k` is the only basis element containing the word `t^{-k}·L_k`, and `Y_k`
/// the only one containing `t^{-k}·G_k`, so coordinates can be read off directly.
pub fn twist_coordinates(e: &EnvElement) -> Option<Vec<(TwistKind, i64, Scalar)>> {
    let mut coords = Vec::new();
    let mut rest = e.clone();
    for (w, c) in e.terms() {
        if let [T(p), g] = w.generators() {
            let (kind, k) = match *g {
                L(k) if k == -p && k != 0 => (TwistKind::X, k),
                G(k) if k == -p && k != 0 => (TwistKind::Y, k),
                _ => continue,
            };
            coords.push((kind, k, c.clone()));
            rest = &rest - &twist_realization(kind, k).scale(c);
        }
    }
    rest.is_zero().then_some(coords)
}

/// Transports a `Ubar` element of the twist span to `(t-1) sbar`.
pub fn phi_of(e: &EnvElement) -> Result<LieElement> {
    let coords = twist_coordinates(e).ok_or_else(|| Error::NotInA1(e.to_string()))?;
    let mut out = LieElement::zero(Flavor::SBar);
    for (kind, k, c) in coords {
        out = &out + &phi_basis(kind, k).scale(&c);
    }
    Ok(out)
}

/// Probe generators for the centralizer check: `t(n)`, `xit(n)` or `G(0)`.
pub fn probe_element(g: Generator) -> Result<EnvElement> {
    match g {
        T(_) | XiT(_) | G(0) => EnvElement::generator(EnvFlavor::UBar, g),
        other => Err(Error::IllegalGenerator { generator: other, flavor: "centralizer probes".into() }),
    }
}

/// Supercommutators of `X_m` and `Y_m` with each probe; every residue should vanish.
pub fn verify_centralizer(m: i64, probes: &[Generator]) -> Result<Vec<Verification<EnvElement>>> {
    let mut out = Vec::with_capacity(2 * probes.len());
    for kind in [TwistKind::X, TwistKind::Y] {
        let tw = make_twist(kind, m)?;
        for &p in probes {
            let r = supercommutator(&tw.realization, &probe_element(p)?)?;
            out.push(Verification::new(format!("centralizer/{kind}"), format!("m={m} probe={p}"), r));
        }
    }
    Ok(out)
}

fn combo(terms: &[(TwistKind, i64, Rational)]) -> EnvElement {
    let mut out = EnvElement::zero(EnvFlavor::UBar);
    for (kind, k, c) in terms {
        out = &out + &twist_realization(*kind, *k).scale(&Scalar::from(c.clone()));
    }
    out
}

/// Checks the three closed-form brackets of the twist subalgebra:
///
/// ```text
/// [X_m, X_n] = -n X_n + m X_m + (n - m) X_{m+n}
/// [X_m, Y_n] = -n Y_n + (m/2) Y_m + (n - m/2) Y_{m+n}
/// [Y_m, Y_n] = 2 (X_n + X_m - X_{m+n})
/// ```
pub fn verify_twist_brackets(m: i64, n: i64) -> Result<Vec<Verification<EnvElement>>> {
    use TwistKind::{X, Y};
    let xm = make_twist(X, m)?.realization;
    let xn = make_twist(X, n)?.realization;
    let ym = make_twist(Y, m)?.realization;
    let yn = make_twist(Y, n)?.realization;
    let inputs = format!("m={m} n={n}");

    let xx = combo(&[(X, n, rat(-n, 1)), (X, m, rat(m, 1)), (X, m + n, rat(n - m, 1))]);
    let xy = combo(&[(Y, n, rat(-n, 1)), (Y, m, rat(m, 2)), (Y, m + n, rat(2 * n - m, 2))]);
    let yy = combo(&[(X, n, rat(2, 1)), (X, m, rat(2, 1)), (X, m + n, rat(-2, 1))]);

    Ok(vec![
        Verification::new("twist/[X,X]", inputs.clone(), &supercommutator(&xm, &xn)? - &xx),
        Verification::new("twist/[X,Y]", inputs.clone(), &supercommutator(&xm, &yn)? - &xy),
        Verification::new("twist/[Y,Y]", inputs, &supercommutator(&ym, &yn)? - &yy),
    ])
}

/// The bracket of the leading parts `t^{-m}·G_m - 2 t^{-m}ξ·L_m` of `Y_m` and `Y_n`,
/// compared with `2 (X_n + X_m - X_{m+n} + L_0)`.
pub fn verify_yy_leading_parts(m: i64, n: i64) -> Result<Verification<EnvElement>> {
    let lead = |k: i64| ubar(&[(&[T(-k), G(k)], rat(1, 1)), (&[XiT(-k), L(k)], rat(-2, 1))]);
    let lhs = supercommutator(&lead(m), &lead(n))?;
    let rhs = &combo(&[(TwistKind::X, n, rat(2, 1)), (TwistKind::X, m, rat(2, 1)), (TwistKind::X, m + n, rat(-2, 1))]) + &ubar(&[(&[L(0)], rat(2, 1))]);
    Ok(Verification::new("twist/[Y,Y] leading parts", format!("m={m} n={n}"), &lhs - &rhs))
}

/// Preimages showing that `A[G_0]` and the twist span generate `Ubar`:
///
/// ```text
/// t^m·X_m - (m/2) t^m ξ·Y_m + t^m·L_0 - (m/2) t^m ξ·G_0 = L_m
/// t^m·Y_m + 2 t^m ξ·X_m + t^m·G_0 = G_m
/// ```
///
/// At `m = 0` the twist terms vanish and both lines reduce to tautologies.
pub fn verify_iota_witness(m: i64) -> Result<Vec<Verification<EnvElement>>> {
    let t = ubar(&[(&[T(m)], rat(1, 1))]);
    let tx = ubar(&[(&[XiT(m)], rat(1, 1))]);
    let xm = twist_realization(TwistKind::X, m);
    let ym = twist_realization(TwistKind::Y, m);
    let half_m = Scalar::from(rat(m, 2));

    let l_side =
        &(&t.mul(&xm)? - &tx.mul(&ym)?.scale(&half_m)) + &(&t.mul(&ubar(&[(&[L(0)], rat(1, 1))]))? - &tx.mul(&ubar(&[(&[G(0)], rat(1, 1))]))?.scale(&half_m));
    let g_side = &(&t.mul(&ym)? + &tx.mul(&xm)?.scale(&Scalar::from(2))) + &t.mul(&ubar(&[(&[G(0)], rat(1, 1))]))?;

    let inputs = format!("m={m}");
    Ok(vec![
        Verification::new("iota/L", inputs.clone(), &l_side - &ubar(&[(&[L(m)], rat(1, 1))])),
        Verification::new("iota/G", inputs, &g_side - &ubar(&[(&[G(m)], rat(1, 1))])),
    ])
}

/// `phi([a, b]) - [phi(a), phi(b)]` for two twist basis elements.
pub fn verify_phi_homomorphism(a: (TwistKind, i64), b: (TwistKind, i64)) -> Result<Verification<LieElement>> {
    let ea = make_twist(a.0, a.1)?;
    let eb = make_twist(b.0, b.1)?;
    let lhs = phi_of(&supercommutator(&ea.realization, &eb.realization)?)?;
    let rhs = bracket(&phi_image(&ea), &phi_image(&eb))?;
    Ok(Verification::new("twist/phi", format!("{ea} {eb}"), &lhs - &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definitions_render() {
        let x1 = make_twist(TwistKind::X, 1).unwrap();
        assert_eq!(x1.realization.to_string(), "t(-1)*L(1) + 1/2*xit(-1)*G(1) - L(0)");
        let y = make_twist(TwistKind::Y, -2).unwrap();
        assert_eq!(y.realization.to_string(), "t(2)*G(-2) + 2*xi*L(0) - 2*xit(2)*L(-2) - G(0)");
        assert_eq!(make_twist(TwistKind::X, 0), Err(Error::ZeroTwistIndex));
    }

    #[test]
    fn formal_index_zero_vanishes() {
        assert!(twist_realization(TwistKind::X, 0).is_zero());
        assert!(twist_realization(TwistKind::Y, 0).is_zero());
    }

    #[test]
    fn centralizer_examples() {
        for v in verify_centralizer(3, &[G(0)]).unwrap() {
            assert!(v.passed(), "{}", v.residue);
        }
        for v in verify_centralizer(1, &[T(5)]).unwrap() {
            assert!(v.passed(), "{}", v.residue);
        }
        for v in verify_centralizer(-2, &[XiT(0)]).unwrap() {
            assert!(v.passed(), "{}", v.residue);
        }
    }

    #[test]
    fn bracket_examples() {
        for (m, n) in [(1, 2), (1, 1), (2, -2), (-3, 1)] {
            for v in verify_twist_brackets(m, n).unwrap() {
                assert!(v.passed(), "{} {}: {}", v.id, v.inputs, v.residue);
            }
        }
    }

    #[test]
    fn iota_examples() {
        for m in [1, -3, 0] {
            for v in verify_iota_witness(m).unwrap() {
                assert!(v.passed(), "{} {}: {}", v.id, v.inputs, v.residue);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let x2 = make_twist(TwistKind::X, 2).unwrap();
        assert_eq!(phi_image(&x2).to_string(), "-L(0) + L(2)");
        let y = make_twist(TwistKind::Y, -1).unwrap();
        assert_eq!(phi_image(&y).to_string(), "G(-1) - G(0)");
        let v = verify_phi_homomorphism((TwistKind::X, 1), (TwistKind::X, 2)).unwrap();
        assert!(v.passed(), "{}", v.residue);
    }

    #[test]
    fn leading_parts_carry_the_extra_l0() {
        for (m, n) in [(1, 1), (1, 2), (2, -1), (1, -1), (-3, 2)] {
            let v = verify_yy_leading_parts(m, n).unwrap();
            assert!(v.passed(), "{m} {n}: {}", v.residue);
        }
    }

    #[test]
    fn coordinates_reject_non_twist_elements() {
        let l0 = EnvElement::generator(EnvFlavor::UBar, L(0)).unwrap();
        assert!(twist_coordinates(&l0).is_none());
        let e = &twist_realization(TwistKind::X, 3) + &twist_realization(TwistKind::Y, -1).scale(&Scalar::lambda());
        let c = twist_coordinates(&e).unwrap();
        assert_eq!(c.len(), 2);
    }
}
