//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::coeff::Rational;

/// A subspace of `Q^n` kept as a fully reduced row-echelon basis.
///
/// Rows are sorted by pivot column and every pivot column is zero outside
/// its own row, so two equal subspaces have identical row lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &w[p];
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut s = Subspace::new(first.len());
    for v in vectors {
        s.insert(v);
    }
    s.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let vs = [v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&vs), 2);
        let mut s = Subspace::new(3);
        for x in &vs {
            s.insert(x);
        }
        assert!(s.contains(&v(&[1, 3, 4])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn canonical_rows_ignore_insertion_order() {
        let mut a = Subspace::new(3);
        a.insert(&v(&[1, 1, 0]));
        a.insert(&v(&[0, 1, 1]));
        let mut b = Subspace::new(3);
        b.insert(&v(&[1, 2, 1]));
        b.insert(&v(&[1, 0, -1]));
        assert_eq!(a, b);
    }

    #[test]
    fn empty_rank() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[v(&[0, 0])]), 0);
    }
}
