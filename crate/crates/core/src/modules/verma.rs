//! Highest-weight modules over `s`, truncated by depth.
//!
//! The cyclic vector `v` satisfies `L_n v = G_n v = 0` for `n > 0`,
//! `L_0 v = h v`, `C v = c v`. Because `[L_0, L_{-n}] = -n L_{-n}`, a
//! vector of depth `n` has `L_0`-eigenvalue `h - n`: negative modes lower
//! the eigenvalue and `v` sits at the top.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::coeff::{render_combination, Scalar};
use crate::env::{GenOrder, Straightener, Strategy, Word};
use crate::error::{Error, Result};
use crate::liealg::{bracket, Flavor, Generator, LieElement};
use crate::verify::{Residue, Verification};

/// Combination of normal words applied to the cyclic vector.
///
/// Words hold `L(-a)` (indices ascending, repeats allowed), then distinct
/// `G(-a)` (ascending), then at most one `G(0)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VermaVector {
    terms: BTreeMap<Word, Scalar>,
}

impl VermaVector {
    pub fn zero() -> Self {
        Self::default()
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Generator]) -> Scalar {
        self.terms.get(&Word::from_vec(w.to_vec())).cloned().unwrap_or_default()
    }

    pub fn scale(&self, s: &Scalar) -> VermaVector {
        let mut out = VermaVector::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * s));
        }
        out
    }

    /// Depths of the words present.
    pub fn depths(&self) -> Vec<i64> {
        self.terms.keys().map(|w| depth(w.generators())).collect()
    }
}

pub fn depth(word: &[Generator]) -> i64 {
    word.iter().map(|g| -g.weight_shift()).sum()
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_combination(self.terms.iter().map(|(w, c)| {
            let basis = if w.is_empty() { "v".to_string() } else { format!("{w}*v") };
            (basis, c)
        }));
        f.write_str(&s)
    }
}

impl fmt::Debug for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VermaVector({self})")
    }
}

impl Residue for VermaVector {
    fn is_zero(&self) -> bool {
        VermaVector::is_zero(self)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Add<&VermaVector> for &VermaVector {
    type Output = VermaVector;

    fn add(self, rhs: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub<&VermaVector> for &VermaVector {
    type Output = VermaVector;

    fn sub(self, rhs: &VermaVector) -> VermaVector {
        self + &rhs.scale(&Scalar::from(-1))
    }
}

/// `M(h, c)`; parameters may be symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaModule {
    pub h: Scalar,
    pub c: Scalar,
}

const STRAIGHTEN: Straightener = Straightener { flavor: Flavor::S, order: GenOrder::Triangular, strategy: Strategy::Leftmost };

impl VermaModule {
    pub fn new(h: Scalar, c: Scalar) -> Self {
        VermaModule { h, c }
    }

    pub fn symbolic() -> Self {
        Self::new(Scalar::param(crate::coeff::Param::H), Scalar::param(crate::coeff::Param::C))
    }

    pub fn highest_weight_vector() -> VermaVector {
        Self::basis_vector(&[])
    }

    pub fn basis_vector(word: &[Generator]) -> VermaVector {
        let mut v = VermaVector::zero();
        v.add_term(Word::from_vec(word.to_vec()), &Scalar::one());
        v
    }

    /// `L_0` eigenvalue on depth `n`.
    pub fn l0_eigenvalue(&self, n: i64) -> Scalar {
        &self.h - &Scalar::from(n)
    }

    /// Reads a triangular normal word against the cyclic vector.
    fn reduce(&self, w: &Word) -> Option<(Word, Scalar)> {
        let mut coeff = Scalar::one();
        let mut kept = Vec::new();
        for &g in w.generators() {
            match g {
                Generator::C => coeff = &coeff * &self.c,
                Generator::L(0) => coeff = &coeff * &self.h,
                _ if g.weight_shift() > 0 => return None,
                _ => kept.push(g),
            }
        }
        Some((Word::from_vec(kept), coeff))
    }

    pub fn act_generator(&self, g: Generator, v: &VermaVector) -> Result<VermaVector> {
        if !Flavor::S.allows(g) {
            return Err(Error::illegal(g, Flavor::S));
        }
        let raw = v.terms.iter().map(|(w, c)| {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(g);
            word.extend_from_slice(w.generators());
            (word, c.clone())
        });
        let mut out = VermaVector::zero();
        for (w, c) in STRAIGHTEN.run(raw) {
            if let Some((kept, k)) = self.reduce(&w) {
                out.add_term(kept, &(&c * &k));
            }
        }
        Ok(out)
    }

    pub fn act(&self, x: &LieElement, v: &VermaVector) -> Result<VermaVector> {
        let mut out = VermaVector::zero();
        for (&g, c) in x.terms() {
            out = &out + &self.act_generator(g, v)?.scale(c);
        }
        Ok(out)
    }

    /// Applies a word, rightmost generator first.
    pub fn act_word(&self, word: &[Generator], v: &VermaVector) -> Result<VermaVector> {
        word.iter().rev().try_fold(v.clone(), |acc, &g| self.act_generator(g, &acc))
    }

    /// Residue of `[x,y]·v - x·(y·v) + (-1)^{|x||y|} y·(x·v)`.
    pub fn check_module_axiom(&self, x: Generator, y: Generator, v: &VermaVector) -> Result<Verification<VermaVector>> {
        let xs = LieElement::generator(Flavor::S, x)?;
        let ys = LieElement::generator(Flavor::S, y)?;
        let lhs = self.act(&bracket(&xs, &ys)?, v)?;
        let x_y = self.act_word(&[x, y], v)?;
        let y_x = self.act_word(&[y, x], v)?.scale(&Scalar::from(x.parity().sign(y.parity())));
        Ok(Verification::new("verma.module_axiom", format!("x={x}, y={y}, v={v}"), &(&lhs - &x_y) + &y_x))
    }
}

/// Normal words of depth exactly `n`.
pub fn verma_basis(n: i64) -> Vec<Vec<Generator>> {
    let mut out = Vec::new();
    for l_total in 0..=n {
        for ls in partitions(l_total, l_total.max(1)) {
            for gs in distinct_partitions(n - l_total, n - l_total) {
                let mut word: Vec<Generator> = ls.iter().map(|&a| Generator::L(-a)).collect();
                word.extend(gs.iter().map(|&a| Generator::G(-a)));
                out.push(word.clone());
                word.push(Generator::G(0));
                out.push(word);
            }
        }
    }
    out
}

/// Partitions of `n` into parts `<= max`, parts listed largest first.
fn partitions(n: i64, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `n` into distinct parts `<= max`, largest first.
fn distinct_partitions(n: i64, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in distinct_partitions(n - first, first - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Dimensions of the weight spaces at depths `0..=n`.
pub fn verma_weight_dims(n: i64) -> Vec<usize> {
    (0..=n).map(|d| verma_basis(d).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Param;

    #[test]
    fn small_dims() {
        assert_eq!(verma_weight_dims(2), vec![2, 4, 8]);
    }

    #[test]
    fn basis_words_are_normal() {
        let m = VermaModule::symbolic();
        let v = VermaModule::highest_weight_vector();
        for n in 0..=4 {
            for w in verma_basis(n) {
                let built = m.act_word(&w, &v).unwrap();
                assert_eq!(built, VermaModule::basis_vector(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn highest_weight_relations() {
        let m = VermaModule::symbolic();
        let v = VermaModule::highest_weight_vector();
        let h = Scalar::param(Param::H);
        let c = Scalar::param(Param::C);
        let lv = m.act_word(&[Generator::L(1), Generator::L(-1)], &v).unwrap();
        assert_eq!(lv, v.scale(&h.scale(&crate::coeff::int(-2))));
        assert!(m.act_generator(Generator::G(1), &v).unwrap().is_zero());
        let g0g0 = m.act_word(&[Generator::G(0), Generator::G(0)], &v).unwrap();
        assert_eq!(g0g0, v.scale(&(&(-&h) - &c.scale(&crate::coeff::rat(1, 24)))));
        assert_eq!(g0g0.to_string(), "(-1/24*c - h)*v");
    }

    #[test]
    fn l0_lowers_with_depth() {
        let m = VermaModule::symbolic();
        let v = VermaModule::highest_weight_vector();
        for n in 0..=3 {
            for w in verma_basis(n) {
                let u = m.act_word(&w, &v).unwrap();
                let l0u = m.act_generator(Generator::L(0), &u).unwrap();
                assert_eq!(l0u, u.scale(&m.l0_eigenvalue(n)));
            }
        }
    }

    #[test]
    fn axiom_on_depth_two() {
        let m = VermaModule::symbolic();
        let gens = [Generator::L(-1), Generator::L(1), Generator::G(-1), Generator::G(0), Generator::G(2), Generator::C];
        for w in verma_basis(2) {
            let v = VermaModule::basis_vector(&w);
            for &x in &gens {
                for &y in &gens {
                    let r = m.check_module_axiom(x, y, &v).unwrap();
                    assert!(r.passed(), "{x} {y} {w:?}: {}", r.residue);
                }
            }
        }
    }
}
