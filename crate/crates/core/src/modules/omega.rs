//! Differentiator operators: alternating binomial sums of quadratic words
//! that annihilate cuspidal modules once the order is large enough.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::coeff::{binomial, int, rat, Rational, Scalar};
use crate::env::{supercommutator, EnvElement, EnvFlavor};
use crate::error::{Error, Result};
use crate::liealg::Generator;
use crate::modules::gamma::{GammaModule, GammaVector};
use crate::verify::Verification;

/// `LL`: `Σ (-1)^i C(m,i) L_{k-i} L_{s+i}`; `GL`: the same with `G_{k-i}` in front.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaVariant {
    LL,
    GL,
}

impl fmt::Display for OmegaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaVariant::LL => "LL",
            OmegaVariant::GL => "GL",
        })
    }
}

impl FromStr for OmegaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LL" | "ll" => Ok(OmegaVariant::LL),
            "GL" | "gl" => Ok(OmegaVariant::GL),
            _ => Err(Error::ContextMismatch(format!("unknown differentiator variant '{s}'"))),
        }
    }
}

fn alt_binomial(m: u32, i: u32) -> Rational {
    let sign = if i % 2 == 0 { 1 } else { -1 };
    binomial(m as u64, i as u64) * int(sign)
}

/// The words of the operator with their coefficients.
pub fn omega_terms(k: i64, s: i64, m: u32, variant: OmegaVariant) -> Vec<(Rational, [Generator; 2])> {
    (0..=m)
        .map(|i| {
            let j = i as i64;
            let front = match variant {
                OmegaVariant::LL => Generator::L(k - j),
                OmegaVariant::GL => Generator::G(k - j),
            };
            (alt_binomial(m, i), [front, Generator::L(s + j)])
        })
        .collect()
}

pub fn omega_apply(module: &GammaModule, k: i64, s: i64, m: u32, variant: OmegaVariant, v: &GammaVector) -> GammaVector {
    let mut out = GammaVector::zero();
    for (c, word) in omega_terms(k, s, m, variant) {
        out = &out + &module.act_word(&word, v).scale_rational(&c);
    }
    out
}

/// The operator as an element of `U(sbar)`.
pub fn omega_env(k: i64, s: i64, m: u32, variant: OmegaVariant) -> Result<EnvElement> {
    let mut out = EnvElement::zero(EnvFlavor::SBar);
    for (c, word) in omega_terms(k, s, m, variant) {
        let w = EnvElement::pbw_normalize(word.to_vec(), EnvFlavor::SBar)?;
        out = &out + &w.scale(&Scalar::from(c));
    }
    Ok(out)
}

/// Whether the order-`m` operator kills every `e(i, r)` for `k, s, i ∈ range`.
pub fn annihilates(module: &GammaModule, variant: OmegaVariant, m: u32, range: &RangeInclusive<i64>) -> bool {
    range
        .clone()
        .all(|k| range.clone().all(|s| range.clone().all(|i| (0..=1).all(|r| omega_apply(module, k, s, m, variant, &GammaVector::basis(i, r)).is_zero()))))
}

/// Smallest order that annihilates the test range, if any up to `max_m`.
pub fn minimal_annihilating_m(module: &GammaModule, variant: OmegaVariant, range: &RangeInclusive<i64>, max_m: u32) -> Option<u32> {
    (0..=max_m).find(|&m| annihilates(module, variant, m, range))
}

/// Outcome of checking the bracket identity for the odd differentiator.
#[derive(Clone, Debug)]
pub struct OmegaIdentityReport {
    /// Six-term bracket combination minus the intermediate three-term sum.
    pub intermediate: Verification<EnvElement>,
    /// Intermediate sum minus the telescoped sum up to `m + 2`.
    pub telescoped: Verification<EnvElement>,
    /// Whether stopping the telescoped sum at `m` would also have been correct.
    pub literal_limit_holds: bool,
    /// The upper limit that makes the telescoped form exact.
    pub resolved_upper_limit: Option<u32>,
}

impl OmegaIdentityReport {
    pub fn passed(&self) -> bool {
        self.intermediate.passed() && self.telescoped.passed()
    }
}

fn gl_word(c: Rational, g: i64, l: i64) -> Result<EnvElement> {
    Ok(EnvElement::pbw_normalize(vec![Generator::G(g), Generator::L(l)], EnvFlavor::SBar)?.scale(&Scalar::from(c)))
}

fn telescoped(m: u32, j: i64, k: i64, p: i64, limit: u32) -> Result<EnvElement> {
    let mut out = EnvElement::zero(EnvFlavor::SBar);
    for i in 0..=limit {
        let c = alt_binomial(m + 2, i) * rat(3, 2);
        let ii = i as i64;
        out = &out + &gl_word(c, k - ii + j + 1, p + ii - 1)?;
    }
    Ok(out)
}

/// Checks, in `U(sbar)`, that
///
/// ```text
/// [Ω_{k,p-1},G_{j+1}] - 2[Ω_{k,p},G_j] + [Ω_{k,p+1},G_{j-1}]
///   - [Ω_{k+1,p-1},G_j] + 2[Ω_{k+1,p},G_{j-1}] - [Ω_{k+1,p+1},G_{j-2}]
/// ```
///
/// equals the three-term intermediate sum and its telescoped form.
pub fn omega_bracket_identity(m: u32, j: i64, k: i64, p: i64) -> Result<OmegaIdentityReport> {
    let six: [(i64, i64, i64, i64); 6] =
        [(1, k, p - 1, j + 1), (-2, k, p, j), (1, k, p + 1, j - 1), (-1, k + 1, p - 1, j), (2, k + 1, p, j - 1), (-1, k + 1, p + 1, j - 2)];
    let mut lhs = EnvElement::zero(EnvFlavor::SBar);
    for (c, kk, ss, g) in six {
        let omega = omega_env(kk, ss, m, OmegaVariant::LL)?;
        let gj = EnvElement::generator(EnvFlavor::SBar, Generator::G(g))?;
        lhs = &lhs + &supercommutator(&omega, &gj)?.scale(&Scalar::from(c));
    }

    let mut middle = EnvElement::zero(EnvFlavor::SBar);
    for i in 0..=m {
        let c = alt_binomial(m, i) * rat(3, 2);
        let ii = i as i64;
        middle = &middle + &gl_word(c.clone(), k - ii + j + 1, p + ii - 1)?;
        middle = &middle + &gl_word(c.clone() * int(-2), k - ii + j, p + ii)?;
        middle = &middle + &gl_word(c, k - ii + j - 1, p + ii + 1)?;
    }

    let full = telescoped(m, j, k, p, m + 2)?;
    let literal = telescoped(m, j, k, p, m)?;
    let inputs = format!("m={m}, j={j}, k={k}, p={p}");
    let intermediate = Verification::new("omega.identity.intermediate", inputs.clone(), &lhs - &middle);
    let telescoped = Verification::new("omega.identity.telescoped", inputs, &middle - &full);
    let literal_limit_holds = (&middle - &literal).is_zero();
    let resolved_upper_limit = if telescoped.passed() {
        Some(m + 2)
    } else if literal_limit_holds {
        Some(m)
    } else {
        None
    };
    Ok(OmegaIdentityReport { intermediate, telescoped, literal_limit_holds, resolved_upper_limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_example() {
        let m = GammaModule::symbolic();
        let v = omega_apply(&m, 1, 0, 1, OmegaVariant::LL, &GammaVector::basis(0, 0));
        assert_eq!(v.to_string(), "(-lambda - b)*e(1,0)");
    }

    #[test]
    fn order_zero_is_single_product() {
        let m = GammaModule::symbolic();
        let v = GammaVector::basis(2, 1);
        assert_eq!(omega_apply(&m, 3, -1, 0, OmegaVariant::LL, &v), m.act_word(&[Generator::L(3), Generator::L(-1)], &v));
    }

    #[test]
    fn minimal_orders() {
        let m = GammaModule::symbolic();
        let range = -2..=2;
        assert_eq!(minimal_annihilating_m(&m, OmegaVariant::LL, &range, 6), Some(3));
        assert_eq!(minimal_annihilating_m(&m, OmegaVariant::GL, &range, 6), Some(3));
        let zero = GammaModule::numeric(int(0), int(0));
        assert!(minimal_annihilating_m(&zero, OmegaVariant::LL, &range, 6).unwrap() <= 3);
    }

    #[test]
    fn bracket_identity_samples() {
        for (m, j, k, p) in [(0, 0, 0, 0), (1, 1, 0, -1), (2, 0, 2, 1)] {
            let r = omega_bracket_identity(m, j, k, p).unwrap();
            assert!(r.intermediate.passed(), "{}", r.intermediate.residue);
            assert!(r.telescoped.passed(), "{}", r.telescoped.residue);
            assert_eq!(r.resolved_upper_limit, Some(m + 2));
        }
    }
}
