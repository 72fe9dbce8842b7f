//! Ext, Tor and Hom as finitely presented graded modules.
//!
//! Each is the homology of a three-term complex whose terms are free
//! modules modulo relations; [`homology`] turns such a subquotient into a
//! presentation.

use crate::error::Result;
use crate::groebner;
use crate::module::{FreeModule, Term, Vector};
use crate::presentation::PresentedModule;
use crate::resolution::{default_max_length, free_resolution, GradedResolution};
use crate::submodule::preimage;

/// Homology at `mid` of `in --> mid/mid_rels --> out/out_rels`.
///
/// `outgoing[c]` is the image of basis element `c` of `mid` in `out`;
/// `incoming` lists images in `mid` of the basis of the incoming term.
/// Both maps are homogeneous of degree zero. Generators of the result are
/// a minimal generating set of the cycles, sorted by degree.
pub fn homology(
    mid: &FreeModule,
    mid_rels: &[Vector],
    out: &FreeModule,
    out_rels: &[Vector],
    outgoing: &[Vector],
    incoming: &[Vector],
) -> Result<PresentedModule> {
    let ring = mid.ring();
    let cycles: Vec<Vector> = if out.rank() == 0 || outgoing.iter().all(|v| v.is_zero()) {
        (0..mid.rank()).map(|c| mid.basis(c)).collect()
    } else {
        preimage(out, outgoing, mid.degrees(), out_rels)?
            .iter()
            .map(|v| mid.adopt(v))
            .collect()
    };
    let z = groebner::minimal_generators(mid, &cycles)?;
    if z.is_empty() {
        return Ok(PresentedModule::free(ring, Vec::new()));
    }
    let zdeg = z
        .iter()
        .map(|v| mid.element_degree(v))
        .collect::<Result<Vec<_>>>()?;
    let mut bounds: Vec<Vector> = incoming.iter().filter(|v| !v.is_zero()).cloned().collect();
    bounds.extend(mid_rels.iter().filter(|v| !v.is_zero()).cloned());
    let rels = if bounds.is_empty() {
        Vec::new()
    } else {
        preimage(mid, &z, &zdeg, &bounds)?
    };
    PresentedModule::new(ring, zdeg, rels)?.minimal_presentation()
}

fn dual(f: &FreeModule) -> FreeModule {
    FreeModule::new(f.ring(), f.degrees().iter().map(|d| -d).collect())
}

/// Rows of a differential given by its columns, as vectors of `target`
/// (indexed by the column positions).
fn transpose(cols: &[Vector], nrows: usize, target: &FreeModule) -> Vec<Vector> {
    let mut rows: Vec<Vec<Term>> = vec![Vec::new(); nrows];
    for (b, col) in cols.iter().enumerate() {
        for t in col.terms() {
            rows[t.comp].push(Term {
                comp: b,
                mono: t.mono.clone(),
                coeff: t.coeff,
            });
        }
    }
    rows.into_iter().map(|r| target.from_terms(r)).collect()
}

fn zero_module(res: &GradedResolution) -> PresentedModule {
    PresentedModule::free(res.ring(), Vec::new())
}

/// `Ext^j(M, S)` from a free resolution of `M`: homology of the dual complex
/// `Hom(F_{j-1}, S) → Hom(F_j, S) → Hom(F_{j+1}, S)`, where
/// `Hom(S(-a), S) = S(a)`.
pub fn ext_from_resolution(res: &GradedResolution, j: usize) -> Result<PresentedModule> {
    if j > res.length() {
        return Ok(zero_module(res));
    }
    let fj = res.module(j).unwrap();
    let mid = dual(fj);
    let (out, outgoing) = match res.module(j + 1) {
        Some(next) => {
            let out = dual(next);
            let rows = transpose(res.differential(j).unwrap(), fj.rank(), &out);
            (out, rows)
        }
        None => (FreeModule::new(res.ring(), Vec::new()), Vec::new()),
    };
    let incoming = if j >= 1 {
        let prev = res.module(j - 1).unwrap();
        transpose(res.differential(j - 1).unwrap(), prev.rank(), &mid)
    } else {
        Vec::new()
    };
    homology(&mid, &[], &out, &[], &outgoing, &incoming)
}

pub fn ext_module(m: &PresentedModule, j: usize) -> Result<PresentedModule> {
    let res = free_resolution(m, default_max_length(m.ring()))?;
    ext_from_resolution(&res, j)
}

/// `F ⊗ N` for a free `F`: one copy of `N`'s generators per basis element.
struct Tensor<'a> {
    n_gens: &'a FreeModule,
    n_rels: &'a [Vector],
}

impl Tensor<'_> {
    fn free(&self, f: &FreeModule) -> FreeModule {
        let mut degrees = Vec::with_capacity(f.rank() * self.n_gens.rank());
        for &a in f.degrees() {
            for &g in self.n_gens.degrees() {
                degrees.push(a + g);
            }
        }
        FreeModule::new(f.ring(), degrees)
    }

    fn rels(&self, f: &FreeModule, tf: &FreeModule) -> Vec<Vector> {
        let width = self.n_gens.rank();
        let mut out = Vec::new();
        for a in 0..f.rank() {
            for r in self.n_rels {
                out.push(tf.remap(r, |g| Some(a * width + g)));
            }
        }
        out
    }

    /// Images of the basis `(a, g)` of `F_src ⊗ N` under `d ⊗ 1`.
    fn map(&self, cols: &[Vector], target: &FreeModule) -> Vec<Vector> {
        let width = self.n_gens.rank();
        let mut out = Vec::with_capacity(cols.len() * width);
        for col in cols {
            for g in 0..width {
                out.push(target.remap(col, |c| Some(c * width + g)));
            }
        }
        out
    }
}

/// `Tor_j(M, N)` as the homology of (resolution of `M`) ⊗ `N`.
pub fn tor_from_resolution(
    res: &GradedResolution,
    n: &PresentedModule,
    j: usize,
) -> Result<PresentedModule> {
    if j > res.length() {
        return Ok(zero_module(res));
    }
    let n = n.minimal_presentation()?;
    let t = Tensor {
        n_gens: n.generators(),
        n_rels: n.relations().generators(),
    };
    let fj = res.module(j).unwrap();
    let mid = t.free(fj);
    let mid_rels = t.rels(fj, &mid);
    let (out, out_rels, outgoing) = if j >= 1 {
        let prev = res.module(j - 1).unwrap();
        let out = t.free(prev);
        let rels = t.rels(prev, &out);
        let images = t.map(res.differential(j - 1).unwrap(), &out);
        (out, rels, images)
    } else {
        (
            FreeModule::new(res.ring(), Vec::new()),
            Vec::new(),
            Vec::new(),
        )
    };
    let incoming = match res.differential(j) {
        Some(cols) => t.map(cols, &mid),
        None => Vec::new(),
    };
    homology(&mid, &mid_rels, &out, &out_rels, &outgoing, &incoming)
}

pub fn tor_module(m: &PresentedModule, n: &PresentedModule, j: usize) -> Result<PresentedModule> {
    let res = free_resolution(m, default_max_length(m.ring()))?;
    tor_from_resolution(&res, n, j)
}

/// `Hom(N, M)` as the kernel of `Hom(G_0, M) → Hom(G_1, M)` for a
/// presentation `G_1 → G_0 → N → 0`.
pub fn hom_module(n: &PresentedModule, m: &PresentedModule) -> Result<PresentedModule> {
    let n = n.minimal_presentation()?;
    let m = m.minimal_presentation()?;
    let g0 = n.generators();
    let rho = n.relations().generators();
    let p = m.generators();
    let m_rels = m.relations().generators();
    let width = p.rank();

    let block = |shifts: &[i64]| -> FreeModule {
        let mut degrees = Vec::with_capacity(shifts.len() * width);
        for &s in shifts {
            for &d in p.degrees() {
                degrees.push(d - s);
            }
        }
        FreeModule::new(m.ring(), degrees)
    };
    let block_rels = |f: &FreeModule, count: usize| -> Vec<Vector> {
        let mut out = Vec::new();
        for b in 0..count {
            for r in m_rels {
                out.push(f.remap(r, |i| Some(b * width + i)));
            }
        }
        out
    };

    let mid = block(g0.degrees());
    let mid_rels = block_rels(&mid, g0.rank());
    let rho_degrees = rho
        .iter()
        .map(|r| g0.element_degree(r))
        .collect::<Result<Vec<_>>>()?;
    let out = block(&rho_degrees);
    let out_rels = block_rels(&out, rho.len());

    // φ ↦ φ∘ρ: basis (g, i) goes to Σ_h ρ[g][h]·(h, i)
    let mut images: Vec<Vec<Term>> = vec![Vec::new(); mid.rank()];
    for (h, col) in rho.iter().enumerate() {
        for t in col.terms() {
            for i in 0..width {
                images[t.comp * width + i].push(Term {
                    comp: h * width + i,
                    mono: t.mono.clone(),
                    coeff: t.coeff,
                });
            }
        }
    }
    let outgoing: Vec<Vector> = images.into_iter().map(|ts| out.from_terms(ts)).collect();
    homology(&mid, &mid_rels, &out, &out_rels, &outgoing, &[])
}
