//! The intermediate-series modules `Γ(λ, b)` and the Weyl module `A(λ)`.
//!
//! Both have basis `e(i, r) = t^i ξ^r (⊗ u)` with `r ∈ {0, 1}`; the
//! parity of `e(i, r)` is `r`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::coeff::{int, rat, render_combination, Rational, Scalar};
use crate::env::EnvElement;
use crate::error::Result;
use crate::liealg::{a1_mod_a2_class, bracket, Flavor, Generator, LieElement};
use crate::verify::{Residue, Verification};

/// Finite combination of basis vectors `e(i, r)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GammaVector {
    terms: BTreeMap<(i64, u8), Scalar>,
}

/// `A(λ)` shares the basis of `Γ(λ, b)`.
pub type WeylVector = GammaVector;

impl GammaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: i64, r: u8) -> Self {
        Self::term(i, r, Scalar::one())
    }

    pub fn term(i: i64, r: u8, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(i, r, &c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, u8), Scalar)>) -> Self {
        let mut v = Self::zero();
        for ((i, r), c) in terms {
            v.add_term(i, r, &c);
        }
        v
    }

    pub fn add_term(&mut self, i: i64, r: u8, c: &Scalar) {
        assert!(r <= 1, "e(i, r) needs r in {{0, 1}}");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, r)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, r));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, r: u8) -> Scalar {
        self.terms.get(&(i, r)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u8), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: &Scalar) -> GammaVector {
        let mut out = GammaVector::zero();
        for (&(i, r), c) in &self.terms {
            out.add_term(i, r, &(c * s));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> GammaVector {
        self.scale(&Scalar::from(q.clone()))
    }

    /// Even and odd components.
    pub fn split_parity(&self) -> (GammaVector, GammaVector) {
        let mut even = GammaVector::zero();
        let mut odd = GammaVector::zero();
        for (&(i, r), c) in &self.terms {
            if r == 0 { &mut even } else { &mut odd }.add_term(i, r, c);
        }
        (even, odd)
    }

    /// Applies `f` to every basis vector and sums the results.
    pub(crate) fn map_basis(&self, mut f: impl FnMut(i64, u8) -> GammaVector) -> GammaVector {
        let mut out = GammaVector::zero();
        for (&(i, r), c) in &self.terms {
            out = &out + &f(i, r).scale(c);
        }
        out
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render_combination(self.terms.iter().map(|(&(i, r), c)| (format!("e({i},{r})"), c)));
        f.write_str(&s)
    }
}

impl fmt::Debug for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaVector({self})")
    }
}

impl Residue for GammaVector {
    fn is_zero(&self) -> bool {
        GammaVector::is_zero(self)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Add<&GammaVector> for &GammaVector {
    type Output = GammaVector;

    fn add(self, rhs: &GammaVector) -> GammaVector {
        let mut out = self.clone();
        for (&(i, r), c) in &rhs.terms {
            out.add_term(i, r, c);
        }
        out
    }
}

impl Sub<&GammaVector> for &GammaVector {
    type Output = GammaVector;

    fn sub(self, rhs: &GammaVector) -> GammaVector {
        self + &(-rhs)
    }
}

impl Neg for &GammaVector {
    type Output = GammaVector;

    fn neg(self) -> GammaVector {
        self.scale(&Scalar::from(-1))
    }
}

/// `Γ(λ, b)`; parameters may be symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    pub lambda: Scalar,
    pub b: Scalar,
}

impl GammaModule {
    pub fn new(lambda: Scalar, b: Scalar) -> Self {
        GammaModule { lambda, b }
    }

    /// Fully symbolic `λ, b`.
    pub fn symbolic() -> Self {
        Self::new(Scalar::lambda(), Scalar::b())
    }

    pub fn numeric(lambda: Rational, b: Rational) -> Self {
        Self::new(Scalar::from(lambda), Scalar::from(b))
    }

    /// Image of one basis vector under one generator, as `(i', r', coefficient)`.
    ///
    /// `C` acts as zero, and so does `ξ` on `e(i, 1)`.
    pub fn act_basis(&self, g: Generator, i: i64, r: u8) -> Option<(i64, u8, Scalar)> {
        let base = &self.lambda + &Scalar::from(i);
        let out = match g {
            Generator::L(m) => {
                let shift = &self.b.scale(&int(m)) + &Scalar::from(rat(m * r as i64, 2));
                (i + m, r, &base + &shift)
            }
            Generator::G(m) if r == 0 => (i + m, 1, &base + &self.b.scale(&int(2 * m))),
            Generator::G(m) => (i + m, 0, Scalar::from(-1)),
            Generator::T(j) => (i + j, r, Scalar::one()),
            Generator::XiT(j) if r == 0 => (i + j, 1, Scalar::one()),
            Generator::XiT(_) | Generator::C => return None,
        };
        (!out.2.is_zero()).then_some(out)
    }

    pub fn act_generator(&self, g: Generator, v: &GammaVector) -> GammaVector {
        v.map_basis(|i, r| match self.act_basis(g, i, r) {
            Some((j, s, c)) => GammaVector::term(j, s, c),
            None => GammaVector::zero(),
        })
    }

    /// Linear action of a Lie element; `C` acts as zero.
    pub fn act(&self, x: &LieElement, v: &GammaVector) -> GammaVector {
        self.act_flagged(x, v).0
    }

    /// Like [`act`](Self::act), also reporting whether a `C` term was dropped.
    pub fn act_flagged(&self, x: &LieElement, v: &GammaVector) -> (GammaVector, bool) {
        let mut out = GammaVector::zero();
        let mut central = false;
        for (&g, c) in x.terms() {
            central |= g == Generator::C;
            out = &out + &self.act_generator(g, v).scale(c);
        }
        (out, central)
    }

    /// Applies a word of generators, rightmost first.
    pub fn act_word(&self, word: &[Generator], v: &GammaVector) -> GammaVector {
        word.iter().rev().fold(v.clone(), |acc, &g| self.act_generator(g, &acc))
    }

    /// Action of an enveloping-algebra element, word by word.
    pub fn act_env(&self, e: &EnvElement, v: &GammaVector) -> GammaVector {
        let mut out = GammaVector::zero();
        for (w, c) in e.terms() {
            out = &out + &self.act_word(w.generators(), v).scale(c);
        }
        out
    }

    /// The action rebuilt from `A ⊗ V` with `V = C u` one-dimensional:
    /// `(L_m - L_0) u = m b u`, `(G_m - G_0) u = 0`.
    ///
    /// Must agree with [`act_generator`](Self::act_generator) everywhere.
    pub fn act_factored(&self, g: Generator, v: &GammaVector) -> Result<GammaVector> {
        let m = match g {
            Generator::L(m) | Generator::G(m) => m,
            _ => return Ok(self.act_generator(g, v)),
        };
        let on_u = |x: Generator| -> Result<Scalar> {
            let diff = &LieElement::gen(Flavor::SBar, x) - &LieElement::gen(Flavor::SBar, same_kind(x, 0));
            let (xc, yc) = a1_mod_a2_class(&diff)?;
            // X.u = b u, Y.u = 0
            Ok(&xc * &self.b + &yc * &Scalar::zero())
        };
        let l_on_u = on_u(Generator::L(m))?;
        let g_on_u = on_u(Generator::G(m))?;
        let half_m = Scalar::from(rat(m, 2));
        Ok(v.map_basis(|i, r| {
            let y = GammaVector::basis(i, r);
            let ty = |c: Scalar| a_mul(m, false, &y).scale(&c);
            let xi_ty = |c: Scalar| a_mul(m, true, &y).scale(&c);
            let sign_y = Scalar::from(if r == 1 { -1 } else { 1 });
            let weight = &self.lambda + &Scalar::from(i);
            match g {
                Generator::L(_) => {
                    // t^m y ⊗ (L_m-L_0)u - (-1)^{|y|} (m/2) t^m ξ y ⊗ (G_m-G_0)u
                    // + t^m (λ y + t∂_t y) ⊗ u + (m/2) t^m ξ∂_ξ(y) ⊗ u
                    let mut acc = ty(l_on_u.clone());
                    acc = &acc - &xi_ty(&(&sign_y * &half_m) * &g_on_u);
                    acc = &acc + &ty(weight);
                    &acc + &ty(&half_m * &Scalar::from(r as i64))
                }
                _ => {
                    // (-1)^{|y|} t^m y ⊗ (G_m-G_0)u + 2 t^m ξ y ⊗ (L_m-L_0)u
                    // + t^m ξ(λ y + t∂_t y) ⊗ u - t^m ∂_ξ(y) ⊗ u
                    let mut acc = ty(&sign_y * &g_on_u);
                    acc = &acc + &xi_ty(l_on_u.scale(&int(2)));
                    acc = &acc + &xi_ty(weight);
                    if r == 1 {
                        acc = &acc - &GammaVector::basis(i + m, 0);
                    }
                    acc
                }
            }
        }))
    }

    /// Residue of `[x,y]·v - x·(y·v) + (-1)^{|x||y|} y·(x·v)`.
    pub fn check_module_axiom(&self, x: &LieElement, y: &LieElement, v: &GammaVector) -> Result<Verification<GammaVector>> {
        let px = x.parity().ok_or_else(|| crate::error::Error::NotHomogeneous(x.to_string()))?;
        let py = y.parity().ok_or_else(|| crate::error::Error::NotHomogeneous(y.to_string()))?;
        let xy = bracket(x, y)?;
        let lhs = self.act(&xy, v);
        let x_y = self.act(x, &self.act(y, v));
        let y_x = self.act(y, &self.act(x, v)).scale(&Scalar::from(px.sign(py)));
        let residue = &(&lhs - &x_y) + &y_x;
        Ok(Verification::new("gamma.module_axiom", format!("x={x}, y={y}, v={v}"), residue))
    }
}

fn same_kind(g: Generator, n: i64) -> Generator {
    match g {
        Generator::G(_) => Generator::G(n),
        _ => Generator::L(n),
    }
}

/// Left multiplication in `A` by `t^m` or `t^m ξ`.
fn a_mul(m: i64, with_xi: bool, y: &GammaVector) -> GammaVector {
    y.map_basis(|i, r| match (with_xi, r) {
        (false, _) => GammaVector::basis(i + m, r),
        (true, 0) => GammaVector::basis(i + m, 1),
        (true, _) => GammaVector::zero(),
    })
}

/// Generators of the Weyl superalgebra acting on `A(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylOp {
    T(i64),
    Xi,
    Dt,
    Dxi,
    /// `ξ t ∂_t - ∂_ξ`, the image of `G_0`.
    G0Image,
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylOp::T(j) => write!(f, "t({j})"),
            WeylOp::Xi => f.write_str("xi"),
            WeylOp::Dt => f.write_str("d_t"),
            WeylOp::Dxi => f.write_str("d_xi"),
            WeylOp::G0Image => f.write_str("G0_image"),
        }
    }
}

/// `A(λ)`: the quotient of the Weyl superalgebra by the left ideal
/// generated by `t∂_t - λ` and `∂_ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylModule {
    pub lambda: Scalar,
}

impl WeylModule {
    pub fn new(lambda: Scalar) -> Self {
        WeylModule { lambda }
    }

    pub fn act(&self, op: WeylOp, v: &WeylVector) -> WeylVector {
        v.map_basis(|i, r| match op {
            WeylOp::T(j) => GammaVector::basis(i + j, r),
            WeylOp::Xi if r == 0 => GammaVector::basis(i, 1),
            WeylOp::Xi => GammaVector::zero(),
            WeylOp::Dt => GammaVector::term(i - 1, r, &self.lambda + &Scalar::from(i)),
            WeylOp::Dxi if r == 1 => GammaVector::basis(i, 0),
            WeylOp::Dxi => GammaVector::zero(),
            WeylOp::G0Image => {
                let v = GammaVector::basis(i, r);
                let t_dt = self.act(WeylOp::T(1), &self.act(WeylOp::Dt, &v));
                &self.act(WeylOp::Xi, &t_dt) - &self.act(WeylOp::Dxi, &v)
            }
        })
    }

    pub fn act_word(&self, ops: &[WeylOp], v: &WeylVector) -> WeylVector {
        ops.iter().rev().fold(v.clone(), |acc, &op| self.act(op, &acc))
    }
}
