//! Weight-space dimensions of the `A`-cover of `Γ(λ, b)`.
//!
//! A weight space of `sbar ⊗ M` at offset `p` is spanned by
//! `L_{p-k} ⊗ e(k, r)` and `G_{p-k} ⊗ e(k, r)`. The cover is the quotient by
//! the kernel of `Σ x_i ⊗ v_i ↦ (a ↦ Σ (a·x_i) v_i)`, so its dimension is
//! the rank of that evaluation map.

use serde::Serialize;

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::liealg::{a_on_sbar, Flavor, Generator, LieElement};
use crate::linalg::rank;
use crate::modules::gamma::{GammaModule, GammaVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverDim {
    pub dimension: usize,
    /// Dimension at truncation `K + 2`.
    pub wider: usize,
    pub stabilized: bool,
}

fn probes(k: i64) -> Vec<Generator> {
    (-2 * k..=2 * k).flat_map(|j| [Generator::T(j), Generator::XiT(j)]).collect()
}

fn rank_at(module: &GammaModule, p: i64, k: i64) -> Result<usize> {
    let probes = probes(k);
    let mut columns = Vec::new();
    for j in -k..=k {
        for x in [Generator::L(p - j), Generator::G(p - j)] {
            let x = LieElement::generator(Flavor::SBar, x)?;
            for r in 0..=1 {
                let v = GammaVector::basis(j, r);
                let mut col = Vec::with_capacity(probes.len() * 2);
                for &a in &probes {
                    let image = module.act(&a_on_sbar(a, &x)?, &v);
                    let target = p + a.weight_shift();
                    for s in 0..=1 {
                        let c = image.coeff(target, s);
                        col.push(c.to_rational().ok_or_else(|| Error::NonNumericParameter(c.to_string()))?);
                    }
                    debug_assert!(image.terms().all(|((i, _), _)| *i == target));
                }
                columns.push(col);
            }
        }
    }
    Ok(rank(&columns))
}

/// Dimension of the cover's weight space at offset `p`, truncated at `K`.
pub fn cover_weight_dim(lambda: Rational, b: Rational, p: i64, truncation: i64) -> Result<CoverDim> {
    if truncation < 1 {
        return Err(Error::InvalidBound(format!("truncation must be at least 1, got {truncation}")));
    }
    let module = GammaModule::numeric(lambda, b);
    let dimension = rank_at(&module, p, truncation)?;
    let wider = rank_at(&module, p, truncation + 2)?;
    Ok(CoverDim { dimension, wider, stabilized: dimension == wider })
}
