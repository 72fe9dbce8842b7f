use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Caps that turn runaway computations into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of S-pairs reduced by a single Groebner basis run.
    pub max_spairs: usize,
    /// Largest monomial degree enumerated when listing a graded piece.
    pub max_piece_degree: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_spairs: 2_000_000,
            max_piece_degree: 64,
        }
    }
}

/// `k[x_1, ..., x_n]` over a prime field with positive integer weights.
#[derive(Clone, Debug)]
pub struct GradedRing {
    names: Vec<String>,
    weights: Vec<u32>,
    field: PrimeField,
    limits: Limits,
}

pub type RingRef = Arc<GradedRing>;

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.weights == other.weights && self.field == other.field
    }
}

impl Eq for GradedRing {}

impl GradedRing {
    pub fn new<S: AsRef<str>>(names: &[S], weights: &[u32], p: u64) -> Result<RingRef> {
        Self::with_limits(names, weights, p, Limits::default())
    }

    pub fn with_limits<S: AsRef<str>>(
        names: &[S],
        weights: &[u32],
        p: u64,
        limits: Limits,
    ) -> Result<RingRef> {
        let field = PrimeField::new(p)?;
        if names.len() != weights.len() {
            return Err(Error::LengthMismatch {
                names: names.len(),
                weights: weights.len(),
            });
        }
        if names.is_empty() {
            return Err(Error::NoVariables);
        }
        let mut seen = HashSet::new();
        for (name, &w) in names.iter().zip(weights) {
            let name = name.as_ref();
            if !seen.insert(name) {
                return Err(Error::DuplicateName(name.to_string()));
            }
            if w == 0 {
                return Err(Error::InvalidWeight(name.to_string()));
            }
        }
        Ok(Arc::new(GradedRing {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            weights: weights.to_vec(),
            field,
            limits,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Sum of the variable weights.
    pub fn sigma(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn order(&self) -> MonomialOrder<'_> {
        MonomialOrder::new(&self.weights)
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order().compare(a, b)
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    /// The same ring with one extra variable appended.
    pub fn extend(&self, name: &str, weight: u32) -> Result<RingRef> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut weights = self.weights.clone();
        weights.push(weight);
        Self::with_limits(
            &names,
            &weights,
            self.field.characteristic() as u64,
            self.limits,
        )
    }

    /// All monomials of the given weighted degree, in increasing term order.
    pub fn monomials_of_degree(&self, degree: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(0, degree, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_monomials(a, b));
        out
    }

    fn enumerate(&self, i: usize, rest: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if rest == 0 {
                out.push(Monomial::from_exponents(exps));
            }
            return;
        }
        let w = self.weights[i] as i64;
        let mut e = 0;
        while e * w <= rest {
            exps[i] = e as u32;
            self.enumerate(i + 1, rest - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.sigma(), 2);
        let r = GradedRing::new(&["x", "y", "z"], &[1, 1, 4], 2).unwrap();
        assert_eq!(r.sigma(), 6);
        assert_eq!(
            GradedRing::new(&["x"], &[1], 4).unwrap_err(),
            Error::NotPrime(4)
        );
        assert_eq!(
            GradedRing::new(&["x", "x"], &[1, 1], 3).unwrap_err(),
            Error::DuplicateName("x".into())
        );
        assert_eq!(
            GradedRing::new(&["x"], &[0], 3).unwrap_err(),
            Error::InvalidWeight("x".into())
        );
        assert!(GradedRing::new(&["x"], &[1, 2], 3).is_err());
    }

    #[test]
    fn degree_enumeration() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        assert_eq!(r.monomials_of_degree(2).len(), 3);
        let r = GradedRing::new(&["x", "y"], &[1, 2], 2).unwrap();
        // x^4, x^2 y, y^2
        assert_eq!(r.monomials_of_degree(4).len(), 3);
        assert_eq!(r.monomials_of_degree(-1).len(), 0);
    }
}
