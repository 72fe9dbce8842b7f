//! Graded free resolutions, minimization and Betti tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner;
use crate::module::{FreeModule, Vector};
use crate::poly::Polynomial;
use crate::presentation::PresentedModule;
use crate::ring::RingRef;

/// `F_0 <- F_1 <- ... <- F_l`. `maps[i]` holds the images of the basis of
/// `F_{i+1}` as vectors of `F_i` (the columns of the differential), so
/// `maps[0]` is the relation matrix of the presentation.
#[derive(Clone, Debug)]
pub struct GradedResolution {
    ring: RingRef,
    modules: Vec<FreeModule>,
    maps: Vec<Vec<Vector>>,
    minimal: bool,
}

/// Graded Betti numbers `β_{i,j}`: homological degree `i`, internal degree `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `(i, j, β_{i,j})` for every nonzero entry, sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Total Betti numbers `Σ_j β_{i,j}` for `i = 0..=max`.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }
}

impl GradedResolution {
    /// Assembles a complex from explicit data. Columns must be homogeneous
    /// of the degree of the basis element they are the image of.
    pub fn from_parts(modules: Vec<FreeModule>, maps: Vec<Vec<Vector>>) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Inconsistent("resolution shape mismatch".into()));
        }
        let ring = modules[0].ring().clone();
        for (i, cols) in maps.iter().enumerate() {
            if cols.len() != modules[i + 1].rank() {
                return Err(Error::Inconsistent(
                    "differential has wrong column count".into(),
                ));
            }
            for (b, col) in cols.iter().enumerate() {
                if !col.is_zero() && modules[i].element_degree(col)? != modules[i + 1].degree(b) {
                    return Err(Error::NonHomogeneous);
                }
            }
        }
        let res = GradedResolution {
            ring,
            modules,
            maps,
            minimal: false,
        };
        if !res.is_complex() {
            return Err(Error::Inconsistent("d∘d ≠ 0".into()));
        }
        Ok(res)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Homological length (index of the last free module).
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn module(&self, i: usize) -> Option<&FreeModule> {
        self.modules.get(i)
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Columns of the differential `F_{i+1} → F_i`.
    pub fn differential(&self, i: usize) -> Option<&[Vector]> {
        self.maps.get(i).map(|v| v.as_slice())
    }

    /// Entry in row `a` (basis of `F_i`), column `b` (basis of `F_{i+1}`).
    pub fn entry(&self, i: usize, a: usize, b: usize) -> Polynomial {
        self.modules[i].component(&self.maps[i][b], a)
    }

    /// Applies the differential `F_{i+1} → F_i` to `v`.
    pub fn apply(&self, i: usize, v: &Vector) -> Vector {
        let src = &self.modules[i + 1];
        let coeffs: Vec<Polynomial> = (0..src.rank()).map(|b| src.component(v, b)).collect();
        self.modules[i].combination(&coeffs, &self.maps[i])
    }

    pub fn is_complex(&self) -> bool {
        (1..self.maps.len()).all(|i| {
            self.maps[i]
                .iter()
                .all(|col| self.apply(i - 1, col).is_zero())
        })
    }

    /// No differential entry has a nonzero constant term.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps.iter().all(|cols| {
            cols.iter()
                .all(|c| c.terms().iter().all(|t| !t.mono.is_one()))
        })
    }

    pub fn betti(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, m) in self.modules.iter().enumerate() {
            for &d in m.degrees() {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// Cancels unit entries one at a time until none remain. Pivots are
    /// taken in increasing homological position, then lowest internal
    /// degree, then row-major.
    pub fn minimize(&self) -> GradedResolution {
        let k = self.ring.field();
        let mut modules = self.modules.clone();
        let mut maps = self.maps.clone();
        for i in 0..maps.len() {
            loop {
                let mut pivot: Option<(i64, usize, usize, u32)> = None;
                for (b, col) in maps[i].iter().enumerate() {
                    for t in col.terms() {
                        if t.mono.is_one() {
                            let cand = (modules[i].degree(t.comp), t.comp, b, t.coeff);
                            if pivot.is_none_or(|p| (cand.0, cand.1, cand.2) < (p.0, p.1, p.2)) {
                                pivot = Some(cand);
                            }
                        }
                    }
                }
                let Some((_, a, b, u)) = pivot else { break };
                let uinv = k.inv(u);
                let (target, source) = (&modules[i], &modules[i + 1]);
                let col_b = maps[i][b].clone();
                let drop = |x: usize| {
                    move |c: usize| -> Option<usize> {
                        if c == x {
                            None
                        } else {
                            Some(if c > x { c - 1 } else { c })
                        }
                    }
                };
                let new_target = drop_basis(target, a);
                let new_source = drop_basis(source, b);
                let new_cols: Vec<Vector> = maps[i]
                    .iter()
                    .enumerate()
                    .filter(|&(c, _)| c != b)
                    .map(|(_, col)| {
                        let factor = target.component(col, a).scale(k.neg(uinv));
                        let reduced = target.add(col, &target.mul_poly(&factor, &col_b));
                        debug_assert!(target.component(&reduced, a).is_zero());
                        new_target.remap(&reduced, drop(a))
                    })
                    .collect();
                maps[i] = new_cols;
                if i + 1 < maps.len() {
                    maps[i + 1] = maps[i + 1]
                        .iter()
                        .map(|col| new_source.remap(col, drop(b)))
                        .collect();
                }
                if i >= 1 {
                    maps[i - 1].remove(a);
                }
                modules[i] = new_target;
                modules[i + 1] = new_source;
            }
        }
        while modules.len() > 1 && modules.last().unwrap().rank() == 0 {
            modules.pop();
            maps.pop();
        }
        GradedResolution {
            ring: self.ring.clone(),
            modules,
            maps,
            minimal: true,
        }
    }
}

fn drop_basis(f: &FreeModule, x: usize) -> FreeModule {
    let degrees = f
        .degrees()
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != x)
        .map(|(_, &d)| d)
        .collect();
    FreeModule::new(f.ring(), degrees)
}

/// Minimal graded free resolution by iterated syzygies of minimal
/// generating sets, followed by minimization.
pub fn free_resolution(m: &PresentedModule, max_length: usize) -> Result<GradedResolution> {
    let pres = m.minimal_presentation()?;
    let ring = pres.ring().clone();
    let mut modules = vec![pres.generators().clone()];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    let mut gens = pres.relations().generators().to_vec();
    while !gens.is_empty() {
        if maps.len() >= max_length {
            return Err(Error::ResourceCap(format!(
                "resolution longer than {max_length}"
            )));
        }
        let cur = modules.last().unwrap();
        let degrees = gens
            .iter()
            .map(|g| cur.element_degree(g))
            .collect::<Result<Vec<_>>>()?;
        let next = FreeModule::new(&ring, degrees.clone());
        let syz = groebner::syzygies(cur, &gens, &degrees)?;
        let new_gens = groebner::minimal_generators(&next, &syz)?;
        maps.push(gens);
        modules.push(next);
        gens = new_gens;
    }
    let raw = GradedResolution {
        ring,
        modules,
        maps,
        minimal: false,
    };
    Ok(raw.minimize())
}

/// Default length cap: one more than Hilbert's syzygy bound.
pub fn default_max_length(ring: &RingRef) -> usize {
    ring.nvars() + 1
}

/// Projective dimension: the length of the minimal resolution.
pub fn projective_dimension(m: &PresentedModule) -> Result<usize> {
    let res = free_resolution(m, default_max_length(m.ring()))?;
    if res.modules[0].rank() == 0 {
        return Err(Error::ZeroModule);
    }
    Ok(res.length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GradedRing;

    #[test]
    fn koszul_two_variables() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let m = PresentedModule::cyclic(&r, &[x, y]).unwrap();
        let res = free_resolution(&m, 3).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.module(1).unwrap().degrees(), &[1, 1]);
        assert_eq!(res.module(2).unwrap().degrees(), &[2]);
        assert!(res.is_complex());
        assert!(res.has_no_unit_entries());
        assert!(res.is_minimal());
        // already minimal: minimizing again changes nothing
        assert_eq!(res.minimize().ranks(), res.ranks());
    }

    #[test]
    fn free_module_has_length_zero() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        let res = free_resolution(&PresentedModule::free(&r, vec![0]), 3).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.ranks(), vec![1]);
    }

    #[test]
    fn padded_identity_summand_cancels() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 3).unwrap();
        let x = Polynomial::var(&r, 0);
        // S <-x- S(-1) plus a padded S(-1) <-1- S(-1)
        let f0 = FreeModule::new(&r, vec![0, 1]);
        let f1 = FreeModule::new(&r, vec![1, 1]);
        let cols = vec![
            f0.from_polys(&[x.clone(), Polynomial::zero(&r)]),
            f0.from_polys(&[Polynomial::zero(&r), Polynomial::one(&r)]),
        ];
        let res = GradedResolution::from_parts(vec![f0, f1], vec![cols]).unwrap();
        let min = res.minimize();
        assert_eq!(min.ranks(), vec![1, 1]);
        assert_eq!(min.entry(0, 0, 0), x);
    }

    #[test]
    fn schreyer_resolution_minimizes() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let m = PresentedModule::cyclic(&r, &[&x * &x, &x * &y]).unwrap();
        let res = free_resolution(&m, 3).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert_eq!(res.module(1).unwrap().degrees(), &[2, 2]);
        assert_eq!(res.module(2).unwrap().degrees(), &[3]);
        assert_eq!(projective_dimension(&m).unwrap(), 2);
    }

    #[test]
    fn resolution_length_cap() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        let m =
            PresentedModule::cyclic(&r, &[Polynomial::var(&r, 0), Polynomial::var(&r, 1)]).unwrap();
        assert!(matches!(free_resolution(&m, 1), Err(Error::ResourceCap(_))));
    }
}
