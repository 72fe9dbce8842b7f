//! Graded free modules `F = ⊕ S·e_c` and their elements.
//!
//! The basis element `e_c` has degree `degrees[c]`, so a term `m·e_c` has
//! degree `deg(m) + degrees[c]`. Terms are ordered by block (used only by
//! elimination), then twisted degree, then the monomial order, with smaller
//! component indices ranking higher.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{same_ring, Polynomial};
use crate::ring::RingRef;

#[derive(Clone, Debug)]
pub struct FreeModule {
    ring: RingRef,
    degrees: Vec<i64>,
    blocks: Vec<u8>,
}

impl PartialEq for FreeModule {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.degrees == other.degrees
            && self.blocks == other.blocks
    }
}

impl Eq for FreeModule {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: u32,
}

/// Element of a graded free module. Meaningful only together with the
/// [`FreeModule`] it was built in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Vector { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

impl FreeModule {
    pub fn new(ring: &RingRef, degrees: Vec<i64>) -> Self {
        FreeModule {
            ring: ring.clone(),
            degrees,
            blocks: Vec::new(),
        }
    }

    /// Free module whose terms in higher blocks dominate all terms in lower
    /// blocks; `blocks[c]` is the block of component `c`.
    pub fn with_blocks(ring: &RingRef, degrees: Vec<i64>, blocks: Vec<u8>) -> Self {
        assert_eq!(degrees.len(), blocks.len());
        FreeModule {
            ring: ring.clone(),
            degrees,
            blocks,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, c: usize) -> i64 {
        self.degrees[c]
    }

    pub fn shifted(&self, by: i64) -> FreeModule {
        FreeModule::new(&self.ring, self.degrees.iter().map(|d| d + by).collect())
    }

    /// Same module without block structure.
    pub fn plain(&self) -> FreeModule {
        FreeModule::new(&self.ring, self.degrees.clone())
    }

    #[inline]
    fn block(&self, c: usize) -> u8 {
        if self.blocks.is_empty() {
            0
        } else {
            self.blocks[c]
        }
    }

    #[inline]
    pub fn term_degree(&self, comp: usize, mono: &Monomial) -> i64 {
        self.ring.degree(mono) + self.degrees[comp]
    }

    pub fn cmp_terms(&self, ac: usize, am: &Monomial, bc: usize, bm: &Monomial) -> Ordering {
        self.block(ac)
            .cmp(&self.block(bc))
            .then_with(|| self.term_degree(ac, am).cmp(&self.term_degree(bc, bm)))
            .then_with(|| self.ring.cmp_monomials(am, bm))
            .then_with(|| bc.cmp(&ac))
    }

    pub fn basis(&self, c: usize) -> Vector {
        Vector {
            terms: vec![Term {
                comp: c,
                mono: Monomial::one(self.ring.nvars()),
                coeff: 1,
            }],
        }
    }

    /// Canonicalizes arbitrary terms: sort, merge, drop zeros.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> Vector {
        let k = self.ring.field();
        terms.sort_by(|a, b| self.cmp_terms(b.comp, &b.mono, a.comp, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for mut t in terms {
            t.coeff %= k.characteristic();
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coeff = k.add(last.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        Vector { terms: out }
    }

    /// `Σ polys[c] · e_c`.
    pub fn from_polys(&self, polys: &[Polynomial]) -> Vector {
        let terms = polys
            .iter()
            .enumerate()
            .flat_map(|(c, p)| {
                p.terms().iter().map(move |(m, k)| Term {
                    comp: c,
                    mono: m.clone(),
                    coeff: *k,
                })
            })
            .collect();
        self.from_terms(terms)
    }

    pub fn component(&self, v: &Vector, c: usize) -> Polynomial {
        let terms = v
            .terms
            .iter()
            .filter(|t| t.comp == c)
            .map(|t| (t.mono.clone(), t.coeff))
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Re-sorts the terms of `v` for this module's order; use after
    /// reinterpreting a vector in a module with different degrees or blocks.
    pub fn adopt(&self, v: &Vector) -> Vector {
        self.from_terms(v.terms.clone())
    }

    /// Renumbers components through `map` (None drops the term) and
    /// canonicalizes in this module.
    pub fn remap(&self, v: &Vector, map: impl Fn(usize) -> Option<usize>) -> Vector {
        let terms = v
            .terms
            .iter()
            .filter_map(|t| {
                map(t.comp).map(|c| Term {
                    comp: c,
                    mono: t.mono.clone(),
                    coeff: t.coeff,
                })
            })
            .collect();
        self.from_terms(terms)
    }

    /// Degree of a homogeneous nonzero element.
    pub fn element_degree(&self, v: &Vector) -> Result<i64> {
        let mut it = v.terms.iter().map(|t| self.term_degree(t.comp, &t.mono));
        let d = it.next().ok_or(Error::ZeroElement)?;
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::NonHomogeneous)
        }
    }

    pub fn is_homogeneous(&self, v: &Vector) -> bool {
        v.is_zero() || self.element_degree(v).is_ok()
    }

    pub fn add(&self, a: &Vector, b: &Vector) -> Vector {
        self.axpy(a, 1, &Monomial::one(self.ring.nvars()), b)
    }

    pub fn sub(&self, a: &Vector, b: &Vector) -> Vector {
        let k = self.ring.field();
        self.axpy(a, k.neg(1), &Monomial::one(self.ring.nvars()), b)
    }

    pub fn neg(&self, a: &Vector) -> Vector {
        let k = self.ring.field();
        self.mul_term(a, &Monomial::one(self.ring.nvars()), k.neg(1))
    }

    /// `a + c·m·b`, merging sorted term lists.
    pub fn axpy(&self, a: &Vector, c: u32, m: &Monomial, b: &Vector) -> Vector {
        Vector {
            terms: self.axpy_slice(&a.terms, c, m, &b.terms),
        }
    }

    pub(crate) fn axpy_slice(&self, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vec<Term> {
        let k = self.ring.field();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut j = 0;
        let mut scaled: Option<Term> = None;
        let next_b = |j: &mut usize| -> Option<Term> {
            let t = b.get(*j)?;
            *j += 1;
            Some(Term {
                comp: t.comp,
                mono: t.mono.mul(m),
                coeff: k.mul(t.coeff, c),
            })
        };
        if c != 0 {
            scaled = next_b(&mut j);
        }
        let mut i = 0;
        loop {
            match (a.get(i), scaled.as_ref()) {
                (None, None) => break,
                (Some(t), None) => {
                    out.push(t.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let t = scaled.take().unwrap();
                    if t.coeff != 0 {
                        out.push(t);
                    }
                    scaled = next_b(&mut j);
                }
                (Some(t), Some(s)) => match self.cmp_terms(t.comp, &t.mono, s.comp, &s.mono) {
                    Ordering::Greater => {
                        out.push(t.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let s = scaled.take().unwrap();
                        if s.coeff != 0 {
                            out.push(s);
                        }
                        scaled = next_b(&mut j);
                    }
                    Ordering::Equal => {
                        let v = k.add(t.coeff, s.coeff);
                        if v != 0 {
                            out.push(Term {
                                comp: t.comp,
                                mono: t.mono.clone(),
                                coeff: v,
                            });
                        }
                        i += 1;
                        scaled = next_b(&mut j);
                    }
                },
            }
        }
        out
    }

    pub fn mul_term(&self, v: &Vector, m: &Monomial, c: u32) -> Vector {
        let k = self.ring.field();
        if c.is_multiple_of(k.characteristic()) {
            return Vector::zero();
        }
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coeff: k.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn scale(&self, v: &Vector, c: u32) -> Vector {
        self.mul_term(v, &Monomial::one(self.ring.nvars()), c)
    }

    pub fn mul_poly(&self, p: &Polynomial, v: &Vector) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = self.axpy(&acc, *c, m, v);
        }
        acc
    }

    /// Linear combination `Σ coeffs[i] · vs[i]`.
    pub fn combination(&self, coeffs: &[Polynomial], vs: &[Vector]) -> Vector {
        let mut acc = Vector::zero();
        for (p, v) in coeffs.iter().zip(vs) {
            for (m, c) in p.terms() {
                acc = self.axpy(&acc, *c, m, v);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, v: &Vector) -> Vector {
        match v.lead() {
            None => Vector::zero(),
            Some(t) if t.coeff == 1 => v.clone(),
            Some(t) => self.scale(v, self.ring.field().inv(t.coeff)),
        }
    }

    pub fn display<'a>(&'a self, v: &'a Vector) -> impl fmt::Display + 'a {
        DisplayVector { module: self, v }
    }
}

struct DisplayVector<'a> {
    module: &'a FreeModule,
    v: &'a Vector,
}

impl fmt::Display for DisplayVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return f.write_str("0");
        }
        let names = self.module.ring.names();
        for (i, t) in self.v.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.coeff != 1 {
                write!(f, "{}*", t.coeff)?;
            }
            if !t.mono.is_one() {
                write!(f, "{}*", t.mono.display(names))?;
            }
            write!(f, "e{}", t.comp)?;
        }
        Ok(())
    }
}
