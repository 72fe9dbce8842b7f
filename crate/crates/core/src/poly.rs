use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::RingRef;

/// Polynomial with terms sorted in decreasing term order and no zero
/// coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u32) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts, merges
    /// equal monomials, reduces coefficients and drops zeros.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, u32)>) -> Self {
        let k = ring.field();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % k.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Constant term coefficient (0 if absent).
    pub fn constant_coefficient(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Weighted degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let k = self.ring.field();
        self.combine(other, k.neg(1))
    }

    /// `self + c * other` by merging sorted term lists.
    fn combine(&self, other: &Polynomial, c: u32) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let k = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                self.ring.cmp_monomials(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = k.mul(c, b[j].1);
                    if v != 0 {
                        out.push((b[j].0.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = k.add(a[i].1, k.mul(c, b[j].1));
                    if v != 0 {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(Polynomial::from_sorted_terms(&self.ring, out))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &other.terms {
            acc = acc.try_add(&self.mul_term(m, *c))?;
        }
        Ok(acc)
    }

    /// Multiplication by `c * m`; the order is multiplicative so the term
    /// list stays sorted.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let k = self.ring.field();
        if c.is_multiple_of(k.characteristic()) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| (t.mul(m), k.mul(*d, c)))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Re-embeds into a ring with extra trailing variables.
    pub fn embed(&self, target: &RingRef) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(n, 0);
                (Monomial::from_exponents(&e), *c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (m.is_one(), *c == 1) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", m.display(self.ring.names()))?,
                (false, false) => write!(f, "{c}*{}", m.display(self.ring.names()))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GradedRing;
    use proptest::prelude::*;

    #[test]
    fn frobenius_in_char_two() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq, &(&x * &x) + &(&y * &y));
        assert_eq!(&s * &Polynomial::one(&r), s);
        assert_eq!(sq.to_string(), "x^2+y^2");
    }

    #[test]
    fn char_three_product() {
        let r = GradedRing::new(&["x"], &[1], 3).unwrap();
        let x = Polynomial::var(&r, 0);
        let a = &x + &Polynomial::constant(&r, 1);
        let b = &x + &Polynomial::constant(&r, 2);
        let expect = &(&x * &x) + &Polynomial::constant(&r, 2);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn ring_mismatch() {
        let r = GradedRing::new(&["x"], &[1], 3).unwrap();
        let s = GradedRing::new(&["x"], &[1], 5).unwrap();
        let e = Polynomial::var(&r, 0).try_mul(&Polynomial::var(&s, 0));
        assert_eq!(e, Err(Error::RingMismatch));
    }

    fn arb_homogeneous(r: RingRef, deg: i64) -> impl Strategy<Value = Polynomial> {
        let monos = r.monomials_of_degree(deg);
        prop::collection::vec(0u32..5, monos.len())
            .prop_map(move |cs| Polynomial::from_terms(&r, monos.iter().cloned().zip(cs).collect()))
    }

    proptest! {
        #[test]
        fn degree_additivity(
            f in arb_homogeneous(GradedRing::new(&["x","y","z"], &[1,2,3], 5).unwrap(), 4),
            g in arb_homogeneous(GradedRing::new(&["x","y","z"], &[1,2,3], 5).unwrap(), 3),
        ) {
            let h = &f * &g;
            if !f.is_zero() && !g.is_zero() {
                prop_assert_eq!(h.homogeneous_degree(), Some(7));
            }
        }

        #[test]
        fn canonical_form_independent_of_order(cs in prop::collection::vec((0u32..4, 0u32..4, 0u32..7), 0..8)) {
            let r = GradedRing::new(&["x","y"], &[1,1], 7).unwrap();
            let terms: Vec<_> = cs.iter().map(|&(a,b,c)| (Monomial::from_exponents(&[a,b]), c)).collect();
            let forward = terms.iter().fold(Polynomial::zero(&r), |acc, (m, c)| &acc + &Polynomial::monomial(&r, m.clone(), *c));
            let backward = terms.iter().rev().fold(Polynomial::zero(&r), |acc, (m, c)| &acc + &Polynomial::monomial(&r, m.clone(), *c));
            prop_assert_eq!(&forward, &backward);
            prop_assert_eq!(forward, Polynomial::from_terms(&r, terms));
        }
    }
}
