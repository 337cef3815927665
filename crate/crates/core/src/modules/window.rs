//! Finite truncations of operators on `Γ(λ, b)`.

use std::fmt;

use crate::coeff::Scalar;
use crate::env::EnvElement;
use crate::error::{Error, Result};
use crate::liealg::{Generator, LieElement};
use crate::modules::gamma::{GammaModule, GammaVector};
use crate::verify::Residue;

/// A range of offsets `lo..=hi`; basis `e(i, r)` for `i` in range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::DegenerateWindow { lo, hi, depth: 0 });
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.lo..=self.hi).contains(&i)
    }

    /// Number of basis vectors, two per offset.
    pub fn dim(&self) -> usize {
        2 * (self.hi - self.lo + 1) as usize
    }

    pub fn index(&self, i: i64, r: u8) -> Option<usize> {
        self.contains(i).then(|| 2 * (i - self.lo) as usize + r as usize)
    }

    pub fn basis(&self) -> impl Iterator<Item = (i64, u8)> {
        (self.lo..=self.hi).flat_map(|i| [(i, 0), (i, 1)])
    }

    /// `[lo + d, hi - d]`, failing if that is empty.
    pub fn shrink(&self, d: i64) -> Result<Window> {
        let (lo, hi) = (self.lo + d, self.hi - d);
        if lo > hi {
            return Err(Error::DegenerateWindow { lo: self.lo, hi: self.hi, depth: d });
        }
        Ok(Window { lo, hi })
    }

    pub fn grow(&self, d: i64) -> Window {
        Window { lo: self.lo - d, hi: self.hi + d }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Exact matrix of an operator restricted to a window.
///
/// Rows and columns are both indexed by [`Window::index`]; entry
/// `(target, source)` can be nonzero only when the offsets differ by `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedOperator {
    pub window: Window,
    pub shift: i64,
    matrix: Vec<Vec<Scalar>>,
    /// Nonzero coefficients dropped because they landed outside the window.
    pub spill: usize,
}

impl WindowedOperator {
    fn empty(window: Window, shift: i64) -> Self {
        let n = window.dim();
        WindowedOperator { window, shift, matrix: vec![vec![Scalar::zero(); n]; n], spill: 0 }
    }

    fn from_images(window: Window, shift: i64, image: impl Fn(i64, u8) -> GammaVector) -> Self {
        let mut op = Self::empty(window, shift);
        for (i, r) in window.basis() {
            let col = window.index(i, r).unwrap();
            for (&(j, s), c) in image(i, r).terms() {
                match window.index(j, s) {
                    Some(row) => op.matrix[row][col] = c.clone(),
                    None => op.spill += 1,
                }
            }
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn entry(&self, target: (i64, u8), source: (i64, u8)) -> Scalar {
        match (self.window.index(target.0, target.1), self.window.index(source.0, source.1)) {
            (Some(r), Some(c)) => self.matrix[r][c].clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn is_banded(&self) -> bool {
        let basis: Vec<_> = self.window.basis().collect();
        basis.iter().enumerate().all(|(row, &(j, _))| basis.iter().enumerate().all(|(col, &(i, _))| j - i == self.shift || self.matrix[row][col].is_zero()))
    }

    /// `self ∘ other` on the same window.
    pub fn compose(&self, other: &WindowedOperator) -> WindowedOperator {
        assert_eq!(self.window, other.window, "windows must agree");
        let n = self.dim();
        let mut out = Self::empty(self.window, self.shift + other.shift);
        for row in 0..n {
            for mid in 0..n {
                if self.matrix[row][mid].is_zero() {
                    continue;
                }
                for col in 0..n {
                    if !other.matrix[mid][col].is_zero() {
                        let p = &self.matrix[row][mid] * &other.matrix[mid][col];
                        out.matrix[row][col] += &p;
                    }
                }
            }
        }
        out
    }

    /// Keeps only the columns whose source offset lies in `interior`.
    pub fn restrict_sources(&self, interior: Window) -> WindowedOperator {
        let mut out = self.clone();
        for (i, r) in self.window.basis() {
            if !interior.contains(i) {
                let col = self.window.index(i, r).unwrap();
                for row in out.matrix.iter_mut() {
                    row[col] = Scalar::zero();
                }
            }
        }
        out.spill = 0;
        out
    }

    /// Entrywise difference; the shift of `self` is kept.
    pub fn difference(&self, other: &WindowedOperator) -> WindowedOperator {
        assert_eq!(self.window, other.window, "windows must agree");
        let mut out = self.clone();
        for (a, b) in out.matrix.iter_mut().zip(&other.matrix) {
            for (x, y) in a.iter_mut().zip(b) {
                *x -= y;
            }
        }
        out.spill = 0;
        out
    }
}

impl Residue for WindowedOperator {
    fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Scalar::is_zero)
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for (j, s) in self.window.basis() {
            for (i, r) in self.window.basis() {
                let c = self.entry((j, s), (i, r));
                if !c.is_zero() {
                    parts.push(format!("[e({j},{s}) <- e({i},{r})] {c}"));
                }
            }
        }
        parts.join("; ")
    }
}

fn single_shift(shifts: impl IntoIterator<Item = i64>) -> Result<i64> {
    let mut found: Option<i64> = None;
    for s in shifts {
        match found {
            Some(f) if f != s => return Err(Error::MixedWeightShift(f, s)),
            _ => found = Some(s),
        }
    }
    Ok(found.unwrap_or(0))
}

/// Matrix of `g` acting on `Γ(λ, b)` inside `w`.
pub fn window_matrix(g: &LieElement, module: &GammaModule, w: Window) -> Result<WindowedOperator> {
    let shift = single_shift(g.terms().filter(|(&x, _)| x != Generator::C).map(|(x, _)| x.weight_shift()))?;
    Ok(WindowedOperator::from_images(w, shift, |i, r| module.act(g, &GammaVector::basis(i, r))))
}

/// Matrix of an enveloping-algebra element; every word must share one weight.
pub fn window_matrix_env(e: &EnvElement, module: &GammaModule, w: Window) -> Result<WindowedOperator> {
    let shift = single_shift(e.terms().map(|(word, _)| word.generators().iter().map(|g| g.weight_shift()).sum()))?;
    Ok(WindowedOperator::from_images(w, shift, |i, r| module.act_env(e, &GammaVector::basis(i, r))))
}
