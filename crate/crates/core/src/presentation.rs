//! Finitely presented graded modules `M = F / R`.

use crate::error::{Error, Result};
use crate::module::{FreeModule, Vector};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::submodule::{preimage, Ideal, Submodule};

/// Cokernel of a homogeneous relation submodule `R ⊆ F`. Generator `g_c`
/// is the image of the basis element `e_c` and has degree `F.degree(c)`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    relations: Submodule,
}

impl PresentedModule {
    pub fn new(
        ring: &RingRef,
        generator_degrees: Vec<i64>,
        relations: Vec<Vector>,
    ) -> Result<Self> {
        let f = FreeModule::new(ring, generator_degrees);
        Ok(PresentedModule {
            relations: Submodule::new(&f, relations)?,
        })
    }

    pub fn from_submodule(relations: Submodule) -> Self {
        PresentedModule { relations }
    }

    /// The free module `S(-d_0) ⊕ ...` with generators in the given degrees.
    pub fn free(ring: &RingRef, generator_degrees: Vec<i64>) -> Self {
        PresentedModule {
            relations: Submodule::zero(&FreeModule::new(ring, generator_degrees)),
        }
    }

    /// `S/I` with its generator in degree 0.
    pub fn cyclic(ring: &RingRef, ideal: &[Polynomial]) -> Result<Self> {
        let i = Ideal::new(ring, ideal)?;
        Ok(PresentedModule {
            relations: i.as_submodule().clone(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        self.relations.ring()
    }

    pub fn generators(&self) -> &FreeModule {
        self.relations.ambient()
    }

    pub fn generator_degrees(&self) -> &[i64] {
        self.relations.ambient().degrees()
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.relations.is_full()
    }

    pub fn graded_piece_basis(&self, q: i64) -> Result<Vec<(usize, Monomial)>> {
        self.relations.standard_monomials(q)
    }

    pub fn graded_dimension(&self, q: i64) -> Result<usize> {
        Ok(self.graded_piece_basis(q)?.len())
    }

    /// Every generator degree moved by `by`.
    pub fn shift(&self, by: i64) -> PresentedModule {
        let f = self.generators().shifted(by);
        let gens = self
            .relations
            .generators()
            .iter()
            .map(|g| f.adopt(g))
            .collect();
        PresentedModule {
            relations: Submodule::new(&f, gens).expect("shift preserves homogeneity"),
        }
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        let r = self.generators().rank();
        let mut degrees = self.generator_degrees().to_vec();
        degrees.extend_from_slice(other.generator_degrees());
        let f = FreeModule::new(self.ring(), degrees);
        let mut rels: Vec<Vector> = self
            .relations
            .generators()
            .iter()
            .map(|g| f.adopt(g))
            .collect();
        rels.extend(
            other
                .relations
                .generators()
                .iter()
                .map(|g| f.remap(g, |c| Some(c + r))),
        );
        Ok(PresentedModule {
            relations: Submodule::new(&f, rels)?,
        })
    }

    /// Removes generators that a relation expresses through the others
    /// (relations with a unit entry) and keeps a minimal set of relations.
    /// Generators keep their relative order.
    pub fn minimal_presentation(&self) -> Result<PresentedModule> {
        let ring = self.ring().clone();
        let k = ring.field();
        let mut f = self.generators().clone();
        let mut rels: Vec<Vector> = self.relations.generators().to_vec();
        loop {
            // unit entry with the lowest generator degree, then lowest
            // generator index, then lowest relation index
            let mut pivot: Option<(i64, usize, usize, u32)> = None;
            for (i, r) in rels.iter().enumerate() {
                for t in r.terms() {
                    if t.mono.is_one() {
                        let cand = (f.degree(t.comp), t.comp, i, t.coeff);
                        if pivot.is_none_or(|p| (cand.0, cand.1, cand.2) < (p.0, p.1, p.2)) {
                            pivot = Some(cand);
                        }
                    }
                }
            }
            let Some((_, a, i, u)) = pivot else { break };
            let r = rels.remove(i);
            let uinv = k.inv(u);
            let keep: Vec<usize> = (0..f.rank()).filter(|&c| c != a).collect();
            let g = FreeModule::new(&ring, keep.iter().map(|&c| f.degree(c)).collect());
            let index_of = |c: usize| -> Option<usize> {
                if c == a {
                    None
                } else {
                    Some(if c > a { c - 1 } else { c })
                }
            };
            rels = rels
                .iter()
                .map(|s| {
                    let sa = f.component(s, a).scale(k.neg(uinv));
                    let s2 = f.add(s, &f.mul_poly(&sa, &r));
                    debug_assert!(f.component(&s2, a).is_zero());
                    g.remap(&s2, index_of)
                })
                .filter(|v| !v.is_zero())
                .collect();
            f = g;
        }
        let sub = Submodule::new(&f, rels)?;
        let minimal = sub.minimal_generators()?;
        Ok(PresentedModule {
            relations: Submodule::new(&f, minimal)?,
        })
    }

    /// `ann M = ∩_c (R : e_c)`, each colon computed in the ambient free
    /// module and the results intersected.
    pub fn annihilator(&self) -> Result<Ideal> {
        let f = self.generators();
        let ring = self.ring();
        let mut acc: Option<Ideal> = None;
        for c in 0..f.rank() {
            let pre = preimage(
                f,
                &[f.basis(c)],
                &[f.degree(c)],
                self.relations.generators(),
            )?;
            let polys: Vec<Polynomial> = pre
                .iter()
                .map(|v| {
                    let src = FreeModule::new(ring, vec![f.degree(c)]);
                    src.component(v, 0)
                })
                .collect();
            let colon = Ideal::new(ring, &polys)?;
            acc = Some(match acc {
                None => colon,
                Some(a) => a.intersect(&colon)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(ring)))
    }

    /// Re-presents the module over `S[t]` (weight of `t` = degree of `f`)
    /// with the extra relations `(t - f)·g_c`.
    pub fn with_redundant_variable(&self, name: &str, f: &Polynomial) -> Result<PresentedModule> {
        let w = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
        if w <= 0 {
            return Err(Error::InvalidWeight(name.to_string()));
        }
        let ring = self.ring().extend(name, w as u32)?;
        let n = ring.nvars();
        let g = FreeModule::new(&ring, self.generator_degrees().to_vec());
        let old = self.generators();
        let embed = |v: &Vector| -> Vector {
            let polys: Vec<Polynomial> = (0..old.rank())
                .map(|c| old.component(v, c).embed(&ring))
                .collect();
            g.from_polys(&polys)
        };
        let mut rels: Vec<Vector> = self.relations.generators().iter().map(embed).collect();
        let t_minus_f = &Polynomial::var(&ring, n - 1) - &f.embed(&ring);
        for c in 0..g.rank() {
            rels.push(g.mul_poly(&t_minus_f, &g.basis(c)));
        }
        PresentedModule::new(&ring, g.degrees().to_vec(), rels)
    }
}
