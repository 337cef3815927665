//! Window search for invariant subspaces of `Γ(λ, b)` at rational parameters.
//!
//! The result is evidence, not a proof: closures are computed inside a
//! finite window and compared against a wider one.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::Rational;
use crate::error::Result;
use crate::liealg::Generator;
use crate::linalg::Subspace;
use crate::modules::gamma::{GammaModule, GammaVector};
use crate::modules::window::Window;

/// A proper invariant subspace of the interior, with the seeds generating it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspace {
    pub seeds: Vec<(i64, u8)>,
    pub dim: usize,
    pub spanning: Vec<GammaVector>,
}

#[derive(Clone, Debug)]
pub struct SubmoduleReport {
    pub lambda: Rational,
    pub b: Rational,
    pub window: Window,
    pub interior: Window,
    pub depth: i64,
    pub proper: Vec<InvariantSubspace>,
    /// Every closure agrees with its counterpart in the window grown by `depth`.
    pub stable: bool,
}

/// Serializable summary of a search.
#[derive(Clone, Debug, Serialize)]
pub struct SubmoduleSummary {
    pub lambda: String,
    pub b: String,
    pub window: [i64; 2],
    pub interior: [i64; 2],
    pub depth: i64,
    pub stable: bool,
    pub proper: Vec<SubspaceSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceSummary {
    pub dim: usize,
    pub seeds: Vec<String>,
    pub spanning: Vec<String>,
}

impl SubmoduleReport {
    pub fn summary(&self) -> SubmoduleSummary {
        SubmoduleSummary {
            lambda: self.lambda.to_string(),
            b: self.b.to_string(),
            window: [self.window.lo(), self.window.hi()],
            interior: [self.interior.lo(), self.interior.hi()],
            depth: self.depth,
            stable: self.stable,
            proper: self
                .proper
                .iter()
                .map(|s| SubspaceSummary {
                    dim: s.dim,
                    seeds: s.seeds.iter().map(|(i, r)| format!("e({i},{r})")).collect(),
                    spanning: s.spanning.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }
}

struct Closure {
    space: Subspace,
    spanning: Vec<GammaVector>,
}

fn coords(v: &GammaVector, interior: Window) -> Vec<Rational> {
    let mut out = vec![Rational::default(); interior.dim()];
    for (&(i, r), c) in v.terms() {
        if let Some(k) = interior.index(i, r) {
            out[k] = c.to_rational().expect("numeric parameters give rational coefficients");
        }
    }
    out
}

fn restrict(v: &GammaVector, interior: Window) -> GammaVector {
    GammaVector::from_terms(v.terms().filter(|((i, _), _)| interior.contains(*i)).map(|(&k, c)| (k, c.clone())))
}

fn closure(module: &GammaModule, interior: Window, gens: &[Generator], seed: (i64, u8)) -> Closure {
    let mut space = Subspace::new(interior.dim());
    let start = GammaVector::basis(seed.0, seed.1);
    space.insert(&coords(&start, interior));
    let mut spanning = vec![start.clone()];
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for &g in gens {
            let w = restrict(&module.act_generator(g, &v), interior);
            if space.insert(&coords(&w, interior)) {
                spanning.push(w.clone());
                queue.push(w);
            }
        }
    }
    Closure { space, spanning }
}

fn generators(depth: i64) -> Vec<Generator> {
    (-depth..=depth).flat_map(|m| [Generator::L(m), Generator::G(m)]).collect()
}

/// Closes every interior basis vector under `L_m, G_m` with `|m| <= depth`,
/// dropping images that leave the interior `[lo + depth, hi - depth]`.
pub fn submodule_search(lambda: Rational, b: Rational, w: Window, depth: i64) -> Result<SubmoduleReport> {
    let interior = w.shrink(depth)?;
    let wide = w.grow(depth).shrink(depth)?;
    let module = GammaModule::numeric(lambda.clone(), b.clone());
    let gens = generators(depth);
    let seeds: Vec<(i64, u8)> = interior.basis().collect();

    let runs: Vec<(Closure, Closure)> = seeds.par_iter().map(|&s| (closure(&module, interior, &gens, s), closure(&module, wide, &gens, s))).collect();

    let mut stable = true;
    let mut proper: Vec<(Subspace, InvariantSubspace)> = Vec::new();
    for (&seed, (small, big)) in seeds.iter().zip(&runs) {
        if small.space.is_full() {
            stable &= big.space.is_full();
            continue;
        }
        let mut embedded = Subspace::new(wide.dim());
        for v in &small.spanning {
            embedded.insert(&coords(v, wide));
        }
        stable &= embedded == big.space;
        match proper.iter_mut().find(|(s, _)| *s == small.space) {
            Some((_, found)) => found.seeds.push(seed),
            None => proper.push((small.space.clone(), InvariantSubspace { seeds: vec![seed], dim: small.space.dim(), spanning: small.spanning.clone() })),
        }
    }
    Ok(SubmoduleReport { lambda, b, window: w, interior, depth, proper: proper.into_iter().map(|(_, p)| p).collect(), stable })
}

/// One search per `b`, for a fixed `λ`; points with a proper subspace are
/// the candidates for reducibility.
pub fn reducibility_sweep(lambda: &Rational, bs: &[Rational], w: Window, depth: i64) -> Result<Vec<SubmoduleReport>> {
    bs.par_iter().map(|b| submodule_search(lambda.clone(), b.clone(), w, depth)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    #[test]
    fn trivial_point_has_the_constant_line() {
        let r = submodule_search(int(0), int(0), Window::new(-6, 6).unwrap(), 2).unwrap();
        let line = r.proper.iter().find(|s| s.seeds.contains(&(0, 0))).expect("e(0,0) closure");
        assert_eq!(line.dim, 1);
        assert_eq!(line.spanning, vec![GammaVector::basis(0, 0)]);
    }

    #[test]
    fn generic_point_is_irreducible_on_window() {
        let r = submodule_search(rat(1, 2), rat(1, 3), Window::new(-8, 8).unwrap(), 2).unwrap();
        assert!(r.proper.is_empty(), "{:?}", r.summary());
        assert!(r.stable);
    }

    #[test]
    fn degenerate_window_is_rejected() {
        assert!(submodule_search(int(0), int(0), Window::new(0, 2).unwrap(), 2).is_err());
    }
}
