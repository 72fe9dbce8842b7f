use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Name of the fixed term order, echoed in reports.
pub const ORDER_NAME: &str = "weighted-degrevlex";

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Product; exponent overflow is a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for e in &self.exps {
            exps.push(e.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables occurring in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Renders with the given variable names, `1` for the unit monomial.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayMonomial { m: self, names }
    }
}

struct DisplayMonomial<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Weighted degree first, then reverse lexicographic on exponents (the
/// monomial with the smaller exponent in the last differing variable is
/// larger), then lexicographic in variable-index order.
#[derive(Clone, Copy, Debug)]
pub struct MonomialOrder<'a> {
    weights: &'a [u32],
}

impl<'a> MonomialOrder<'a> {
    pub fn new(weights: &'a [u32]) -> Self {
        MonomialOrder { weights }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = a.weighted_degree(self.weights);
        let db = b.weighted_degree(self.weights);
        da.cmp(&db)
            .then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
            // unreachable once the reverse-lex pass has compared every
            // exponent; kept so the order is total by construction
            .then_with(|| a.exps.cmp(&b.exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::new(&[1, 1]);
        assert_eq!(o.compare(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[2, 1]), &m(&[2, 1])), Ordering::Equal);
        let o = MonomialOrder::new(&[1, 4]);
        assert_eq!(o.compare(&m(&[5, 0]), &m(&[0, 1])), Ordering::Greater);
        let o = MonomialOrder::new(&[1, 1, 1]);
        // x*z < y^2 under degrevlex
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn overflow_is_an_error() {
        let a = m(&[u32::MAX, 0]);
        assert_eq!(a.checked_mul(&m(&[1, 0])), Err(Error::ExponentOverflow));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let w = [1u32, 2, 3];
            let o = MonomialOrder::new(&w);
            let ab = o.compare(&a, &b);
            prop_assert_eq!(o.compare(&c.mul(&a), &c.mul(&b)), ab);
            prop_assert_eq!(o.compare(&b, &a), ab.reverse());
        }

        #[test]
        fn one_is_minimum_and_division_descends(a in arb_mono()) {
            let w = [1u32, 1, 2];
            let o = MonomialOrder::new(&w);
            let one = Monomial::one(3);
            prop_assert_ne!(o.compare(&a, &one), Ordering::Less);
            // strip one variable at a time: every step strictly decreases
            let mut cur = a.clone();
            let mut steps = 0;
            loop {
                let Some(i) = cur.support().next() else { break };
                let next = cur.div(&Monomial::var(3, i));
                prop_assert_eq!(o.compare(&next, &cur), Ordering::Less);
                cur = next;
                steps += 1;
            }
            prop_assert_eq!(steps, a.exponents().iter().sum::<u32>());
        }
    }
}
