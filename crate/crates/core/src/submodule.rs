//! Submodules of graded free modules and ideals, with the colon,
//! saturation and intersection calculus built on syzygies.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::module::{FreeModule, Vector};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Homogeneous submodule of a graded free module. The reduced Groebner
/// basis is computed on first use and cached.
#[derive(Clone, Debug)]
pub struct Submodule {
    ambient: FreeModule,
    gens: Vec<Vector>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

/// `{a ∈ S^k : Σ a_i·images[i] ∈ span(rels)}` where `S^k` has basis degrees
/// `source_degrees`. Generators are returned as vectors of that free module.
pub(crate) fn preimage(
    target: &FreeModule,
    images: &[Vector],
    source_degrees: &[i64],
    rels: &[Vector],
) -> Result<Vec<Vector>> {
    let keep = images.len();
    let mut all = images.to_vec();
    let mut degrees = source_degrees.to_vec();
    for r in rels.iter().filter(|r| !r.is_zero()) {
        degrees.push(target.element_degree(r)?);
        all.push(r.clone());
    }
    let syz = groebner::syzygies(target, &all, &degrees)?;
    let source = FreeModule::new(target.ring(), source_degrees.to_vec());
    Ok(syz
        .iter()
        .map(|s| source.remap(s, |c| (c < keep).then_some(c)))
        .filter(|v| !v.is_zero())
        .collect())
}

impl Submodule {
    pub fn new(ambient: &FreeModule, gens: Vec<Vector>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if let Some(t) = g.terms().iter().find(|t| t.comp >= ambient.rank()) {
                return Err(Error::Inconsistent(format!(
                    "component {} outside a rank-{} module",
                    t.comp,
                    ambient.rank()
                )));
            }
            ambient.element_degree(&g)?;
            kept.push(ambient.adopt(&g));
        }
        Ok(Submodule {
            ambient: ambient.clone(),
            gens: kept,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ambient: &FreeModule) -> Self {
        Submodule {
            ambient: ambient.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn full(ambient: &FreeModule) -> Self {
        let gens = (0..ambient.rank()).map(|c| ambient.basis(c)).collect();
        Submodule {
            ambient: ambient.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn ring(&self) -> &RingRef {
        self.ambient.ring()
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = Arc::new(groebner::groebner(&self.ambient, &self.gens)?);
        Ok(self.gb.get_or_init(|| gb))
    }

    /// The reduced Groebner basis, which is unique for the fixed order.
    pub fn reduced_basis(&self) -> Result<&[Vector]> {
        Ok(&self.groebner()?.elements)
    }

    pub fn reduced(&self) -> Result<Submodule> {
        let gb = self.groebner()?.clone();
        Ok(Submodule {
            ambient: self.ambient.clone(),
            gens: gb.elements.clone(),
            gb: OnceLock::from(Arc::new(gb)),
        })
    }

    pub fn minimal_generators(&self) -> Result<Vec<Vector>> {
        let gb = self.groebner()?;
        Ok(gb
            .minimal_generators
            .iter()
            .map(|&i| self.gens[i].clone())
            .collect())
    }

    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        Ok(groebner::reduce(&self.ambient, v, self.reduced_basis()?))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_submodule(&self, other: &Submodule) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of spans, decided by comparing reduced Groebner bases.
    pub fn same_span(&self, other: &Submodule) -> Result<bool> {
        Ok(self.reduced_basis()? == other.reduced_basis()?)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_full(&self) -> Result<bool> {
        for c in 0..self.ambient.rank() {
            if !self.contains(&self.ambient.basis(c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Syzygies of the reduced Groebner basis `u_1..u_g` via Schreyer's
    /// construction: a submodule of a rank-`g` free module whose basis
    /// degrees are the degrees of the `u_i`.
    pub fn syzygy_basis(&self) -> Result<Submodule> {
        let gb = self.reduced_basis()?;
        let (source, syz) = groebner::schreyer_syzygies(&self.ambient, gb)?;
        Submodule::new(&source, syz)
    }

    /// `(U : f) = {v : f·v ∈ U}`.
    pub fn colon_element(&self, f: &Polynomial) -> Result<Submodule> {
        if f.is_zero() {
            return Ok(Submodule::full(&self.ambient));
        }
        let df = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
        let images: Vec<Vector> = (0..self.ambient.rank())
            .map(|c| self.ambient.mul_poly(f, &self.ambient.basis(c)))
            .collect();
        let degrees: Vec<i64> = self.ambient.degrees().iter().map(|d| d + df).collect();
        let pre = preimage(&self.ambient, &images, &degrees, &self.gens)?;
        let gens = pre.iter().map(|v| self.ambient.adopt(v)).collect();
        Submodule::new(&self.ambient, gens)
    }

    /// `(U : J) = {v : J·v ⊆ U}`; the zero ideal gives the whole module.
    pub fn colon(&self, j: &Ideal) -> Result<Submodule> {
        let mut acc: Option<Submodule> = None;
        for f in j.polynomials() {
            let c = self.colon_element(&f)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Submodule::full(&self.ambient)))
    }

    /// Stable value of `(U : J) ⊆ (U : J^2) ⊆ ...`.
    pub fn saturate(&self, j: &Ideal) -> Result<Submodule> {
        let mut cur = self.reduced()?;
        loop {
            let next = cur.colon(j)?.reduced()?;
            if next.same_span(&cur)? {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// `U ∩ V` as the kernel of `F → F/U ⊕ F/V`.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let r = self.ambient.rank();
        let mut degrees = self.ambient.degrees().to_vec();
        degrees.extend_from_slice(self.ambient.degrees());
        let doubled = FreeModule::new(self.ring(), degrees);
        let images: Vec<Vector> = (0..r)
            .map(|c| doubled.add(&doubled.basis(c), &doubled.basis(r + c)))
            .collect();
        let mut rels: Vec<Vector> = self.gens.iter().map(|g| doubled.adopt(g)).collect();
        rels.extend(other.gens.iter().map(|g| doubled.remap(g, |c| Some(c + r))));
        let pre = preimage(&doubled, &images, self.ambient.degrees(), &rels)?;
        Submodule::new(&self.ambient, pre)
    }

    /// k-basis of the degree-`q` piece of `F/U`: the standard
    /// (component, monomial) pairs of twisted degree `q`.
    pub fn standard_monomials(&self, q: i64) -> Result<Vec<(usize, Monomial)>> {
        let limits = self.ring().limits();
        let gb = self.reduced_basis()?;
        let mut out = Vec::new();
        for c in 0..self.ambient.rank() {
            let d = q - self.ambient.degree(c);
            if d < 0 {
                continue;
            }
            if d > limits.max_piece_degree {
                return Err(Error::ResourceCap(format!(
                    "graded piece enumeration beyond degree {}",
                    limits.max_piece_degree
                )));
            }
            for m in self.ring().monomials_of_degree(d) {
                let hit = gb.iter().any(|g| {
                    let t = g.lead().unwrap();
                    t.comp == c && t.mono.divides(&m)
                });
                if !hit {
                    out.push((c, m));
                }
            }
        }
        Ok(out)
    }
}

/// Homogeneous ideal: a submodule of the rank-one free module in degree 0.
#[derive(Clone, Debug)]
pub struct Ideal {
    inner: Submodule,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: &[Polynomial]) -> Result<Self> {
        let f = FreeModule::new(ring, vec![0]);
        let vs = gens
            .iter()
            .map(|p| f.from_polys(std::slice::from_ref(p)))
            .collect();
        Ok(Ideal {
            inner: Submodule::new(&f, vs)?,
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal {
            inner: Submodule::zero(&FreeModule::new(ring, vec![0])),
        }
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal {
            inner: Submodule::full(&FreeModule::new(ring, vec![0])),
        }
    }

    pub fn from_submodule(s: Submodule) -> Result<Self> {
        if s.ambient().degrees() != [0] {
            return Err(Error::AmbientMismatch);
        }
        Ok(Ideal { inner: s })
    }

    pub fn as_submodule(&self) -> &Submodule {
        &self.inner
    }

    pub fn ring(&self) -> &RingRef {
        self.inner.ring()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.inner
            .generators()
            .iter()
            .map(|v| self.inner.ambient().component(v, 0))
            .collect()
    }

    pub fn reduced_polynomials(&self) -> Result<Vec<Polynomial>> {
        Ok(self
            .inner
            .reduced_basis()?
            .iter()
            .map(|v| self.inner.ambient().component(v, 0))
            .collect())
    }

    pub fn minimal_polynomials(&self) -> Result<Vec<Polynomial>> {
        Ok(self
            .inner
            .minimal_generators()?
            .iter()
            .map(|v| self.inner.ambient().component(v, 0))
            .collect())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let v = self.inner.ambient().from_polys(std::slice::from_ref(f));
        self.inner.contains(&v)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let v = self.inner.ambient().from_polys(std::slice::from_ref(f));
        Ok(self
            .inner
            .ambient()
            .component(&self.inner.normal_form(&v)?, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.inner.is_full()
    }

    pub fn same_span(&self, other: &Ideal) -> Result<bool> {
        self.inner.same_span(&other.inner)
    }

    /// `I ∩ J` as the kernel of `S → S/I ⊕ S/J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        Ok(Ideal {
            inner: self.inner.intersect(&other.inner)?,
        })
    }

    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        Ok(Ideal {
            inner: self.inner.colon(other)?,
        })
    }

    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        Ok(Ideal {
            inner: self.inner.saturate(other)?,
        })
    }

    /// Leading monomials of the reduced Groebner basis.
    pub fn initial_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .inner
            .reduced_basis()?
            .iter()
            .map(|v| v.lead().unwrap().mono.clone())
            .collect())
    }

    /// Codimension read off the initial ideal: the smallest set of
    /// variables meeting the support of every leading monomial. `None` for
    /// the unit ideal.
    pub fn codimension(&self) -> Result<Option<usize>> {
        let lead = self.initial_monomials()?;
        Ok(monomial_codimension(self.ring().nvars(), &lead))
    }

    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.codimension()?.map(|c| self.ring().nvars() - c))
    }
}

/// Codimension of the monomial ideal generated by `gens` in `n` variables:
/// `n` minus the largest variable set containing no generator's support.
pub fn monomial_codimension(n: usize, gens: &[Monomial]) -> Option<usize> {
    if gens.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    assert!(n < 64, "too many variables for subset enumeration");
    let mut best = 0;
    for set in 0u64..(1 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Some(n - best)
}
