//! Numerical invariants of a graded module: codimension, dimension, depth,
//! projective dimension, the Ext-annihilator profile and ω, the Hilbert
//! series and graded local cohomology.
//!
//! Everything is read off one minimal resolution and the modules
//! `Ext^e(M, S)` for `e ≤ pd M`, bundled in [`ModuleAnalysis`]. Where two
//! routes to the same number exist they are both taken and compared; a
//! mismatch is reported as [`Error::Inconsistent`].

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::homology::ext_from_resolution;
use crate::presentation::PresentedModule;
use crate::resolution::{default_max_length, free_resolution, BettiTable, GradedResolution};
use crate::ring::RingRef;
use crate::submodule::Ideal;

/// One homological degree of the profile.
#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub e: usize,
    pub ext_nonzero: bool,
    /// `I_e = ann Ext^e(M, S)`.
    pub annihilator: Ideal,
    /// `None` when `I_e` is the unit ideal.
    pub codim: Option<usize>,
    /// `Ext^e ≠ 0` and `codim I_e = e`: some associated prime has
    /// codimension `e`.
    pub flag: bool,
}

#[derive(Clone, Debug)]
pub struct ExtAnnihilatorProfile {
    entries: Vec<ProfileEntry>,
}

impl ExtAnnihilatorProfile {
    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    /// Homological degrees whose flag is set, ascending.
    pub fn flagged(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|p| p.flag)
            .map(|p| p.e)
            .collect()
    }
}

/// `N(t) / Π (1 - t^{w_i})` with a Laurent polynomial numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: BTreeMap<i64, i64>,
    weights: Vec<u32>,
}

impl HilbertSeries {
    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`.
    pub fn from_betti(betti: &BettiTable, weights: &[u32]) -> Self {
        let mut numerator = BTreeMap::new();
        for (i, j, b) in betti.entries() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *numerator.entry(j).or_insert(0) += sign * b as i64;
        }
        numerator.retain(|_, c| *c != 0);
        HilbertSeries {
            numerator,
            weights: weights.to_vec(),
        }
    }

    /// Nonzero numerator coefficients by exponent.
    pub fn numerator(&self) -> &BTreeMap<i64, i64> {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Order of the pole at `t = 1`: the number of variables minus the
    /// multiplicity of `1` as a root of the numerator.
    pub fn pole_order(&self) -> usize {
        let Some((&lo, _)) = self.numerator.first_key_value() else {
            return 0;
        };
        let hi = *self.numerator.last_key_value().unwrap().0;
        let mut c: Vec<i64> = (lo..=hi)
            .map(|k| self.numerator.get(&k).copied().unwrap_or(0))
            .collect();
        let mut order = 0;
        while c.len() > 1 && c.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t), lowest coefficient first
            let mut q = Vec::with_capacity(c.len() - 1);
            let mut acc = 0;
            for &a in &c[..c.len() - 1] {
                acc += a;
                q.push(acc);
            }
            c = q;
            order += 1;
        }
        self.weights.len().saturating_sub(order)
    }

    /// Coefficient of `t^q` in the expanded series.
    pub fn coefficient(&self, q: i64) -> i64 {
        let lo = match self.numerator.first_key_value() {
            Some((&lo, _)) => lo,
            None => return 0,
        };
        if q < lo {
            return 0;
        }
        // monomial counts of each degree, by a knapsack over the weights
        let top = (q - lo) as usize;
        let mut count = vec![0i64; top + 1];
        count[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for d in w..=top {
                count[d] += count[d - w];
            }
        }
        self.numerator
            .iter()
            .filter(|(&j, _)| j <= q)
            .map(|(&j, &c)| c * count[(q - j) as usize])
            .sum()
    }
}

/// All numerical invariants of one module.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub depth: usize,
    pub dim: usize,
    pub codim: usize,
    pub pd: usize,
    pub omega: usize,
    pub profile: ExtAnnihilatorProfile,
    pub hilbert: HilbertSeries,
    pub betti: BettiTable,
}

/// Minimal resolution, Ext modules and profile of a nonzero module.
#[derive(Clone, Debug)]
pub struct ModuleAnalysis {
    module: PresentedModule,
    resolution: GradedResolution,
    ext: Vec<PresentedModule>,
    profile: ExtAnnihilatorProfile,
    codim: usize,
}

impl ModuleAnalysis {
    pub fn new(m: &PresentedModule) -> Result<Self> {
        let module = m.minimal_presentation()?;
        if module.generators().rank() == 0 {
            return Err(Error::ZeroModule);
        }
        let n = module.ring().nvars();
        let resolution = free_resolution(&module, default_max_length(module.ring()))?;
        let pd = resolution.length();
        let ext = (0..=pd)
            .map(|j| ext_from_resolution(&resolution, j))
            .collect::<Result<Vec<_>>>()?;
        let nonzero: Vec<bool> = ext
            .iter()
            .map(|e| e.is_zero().map(|z| !z))
            .collect::<Result<_>>()?;

        let first = nonzero.iter().position(|&b| b);
        let last = nonzero.iter().rposition(|&b| b);
        if last != Some(pd) {
            return Err(Error::Inconsistent(format!(
                "resolution has length {pd} but the last nonzero Ext is {last:?}"
            )));
        }
        let codim = first.unwrap();
        let combinatorial = module.annihilator()?.codimension()?;
        if combinatorial != Some(codim) {
            return Err(Error::Inconsistent(format!(
                "codimension {codim} from Ext but {combinatorial:?} from the initial ideal"
            )));
        }

        let mut entries = Vec::with_capacity(pd + 1);
        for (e, (x, &nz)) in ext.iter().zip(&nonzero).enumerate() {
            let annihilator = x.annihilator()?;
            let codim_e = annihilator.codimension()?;
            if nz && codim_e.is_none_or(|c| c < e) {
                return Err(Error::Inconsistent(format!(
                    "ann Ext^{e} has codimension {codim_e:?} < {e}"
                )));
            }
            entries.push(ProfileEntry {
                e,
                ext_nonzero: nz,
                annihilator,
                codim: codim_e,
                flag: nz && codim_e == Some(e),
            });
        }
        let profile = ExtAnnihilatorProfile { entries };
        if profile.flagged().is_empty() {
            return Err(Error::Inconsistent(
                "no homological degree detects an associated prime".into(),
            ));
        }
        debug_assert!(codim <= n);
        Ok(ModuleAnalysis {
            module,
            resolution,
            ext,
            profile,
            codim,
        })
    }

    /// The minimal presentation the analysis works with.
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn ring(&self) -> &RingRef {
        self.module.ring()
    }

    pub fn resolution(&self) -> &GradedResolution {
        &self.resolution
    }

    /// `Ext^j(M, S)`; zero above the projective dimension.
    pub fn ext(&self, j: usize) -> PresentedModule {
        match self.ext.get(j) {
            Some(x) => x.clone(),
            None => PresentedModule::free(self.ring(), Vec::new()),
        }
    }

    pub fn ext_nonzero(&self, j: usize) -> bool {
        self.profile.entries.get(j).is_some_and(|p| p.ext_nonzero)
    }

    pub fn projective_dimension(&self) -> usize {
        self.resolution.length()
    }

    pub fn codimension(&self) -> usize {
        self.codim
    }

    pub fn dimension(&self) -> usize {
        self.ring().nvars() - self.codim
    }

    /// Auslander–Buchsbaum.
    pub fn depth(&self) -> usize {
        self.ring().nvars() - self.projective_dimension()
    }

    pub fn profile(&self) -> &ExtAnnihilatorProfile {
        &self.profile
    }

    pub fn omega(&self) -> usize {
        let top = *self.profile.flagged().last().unwrap();
        self.ring().nvars() - top
    }

    pub fn betti(&self) -> BettiTable {
        self.resolution.betti()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::from_betti(&self.betti(), self.ring().weights())
    }

    /// `dim_k H^i_m(M)_q = dim_k Ext^{n-i}(M, S)_{-q-σ}` for each `q`.
    pub fn local_cohomology_dims(
        &self,
        i: usize,
        range: RangeInclusive<i64>,
    ) -> Result<BTreeMap<i64, usize>> {
        let n = self.ring().nvars();
        let sigma = self.ring().sigma();
        let mut out = BTreeMap::new();
        for q in range {
            let d = if i > n || !self.ext_nonzero(n - i) {
                0
            } else {
                self.ext[n - i].graded_dimension(-q - sigma)?
            };
            out.insert(q, d);
        }
        Ok(out)
    }

    /// Collects the invariants, checking `depth ≤ ω ≤ dim` and that the
    /// Hilbert series has a pole of order `dim`.
    pub fn report(&self) -> Result<InvariantReport> {
        let hilbert = self.hilbert_series();
        let (depth, omega, dim) = (self.depth(), self.omega(), self.dimension());
        if !(depth <= omega && omega <= dim) {
            return Err(Error::Inconsistent(format!(
                "depth {depth}, omega {omega}, dim {dim} out of order"
            )));
        }
        if hilbert.pole_order() != dim {
            return Err(Error::Inconsistent(format!(
                "Hilbert series pole order {} but dimension {dim}",
                hilbert.pole_order()
            )));
        }
        Ok(InvariantReport {
            depth,
            dim,
            codim: self.codimension(),
            pd: self.projective_dimension(),
            omega,
            profile: self.profile.clone(),
            hilbert,
            betti: self.betti(),
        })
    }
}

pub fn analyze(m: &PresentedModule) -> Result<InvariantReport> {
    ModuleAnalysis::new(m)?.report()
}

pub fn codimension(m: &PresentedModule) -> Result<usize> {
    Ok(ModuleAnalysis::new(m)?.codimension())
}

pub fn dimension_of(m: &PresentedModule) -> Result<usize> {
    Ok(ModuleAnalysis::new(m)?.dimension())
}

pub fn depth_of(m: &PresentedModule) -> Result<usize> {
    Ok(ModuleAnalysis::new(m)?.depth())
}

pub fn ext_annihilator_profile(m: &PresentedModule) -> Result<ExtAnnihilatorProfile> {
    Ok(ModuleAnalysis::new(m)?.profile)
}

pub fn omega_of(m: &PresentedModule) -> Result<usize> {
    Ok(ModuleAnalysis::new(m)?.omega())
}

pub fn hilbert_series(m: &PresentedModule) -> Result<HilbertSeries> {
    Ok(ModuleAnalysis::new(m)?.hilbert_series())
}

pub fn local_cohomology_graded_dims(
    m: &PresentedModule,
    i: usize,
    range: RangeInclusive<i64>,
) -> Result<BTreeMap<i64, usize>> {
    ModuleAnalysis::new(m)?.local_cohomology_dims(i, range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::ring::GradedRing;

    fn cyclic(names: &[&str], p: u64, gens: &[&[u32]]) -> PresentedModule {
        let r = GradedRing::new(names, &vec![1; names.len()], p).unwrap();
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|e| Polynomial::monomial(&r, crate::Monomial::from_exponents(e), 1))
            .collect();
        PresentedModule::cyclic(&r, &polys).unwrap()
    }

    #[test]
    fn free_module() {
        let m = cyclic(&["x", "y"], 2, &[]);
        let r = analyze(&m).unwrap();
        assert_eq!((r.depth, r.dim, r.codim, r.pd, r.omega), (2, 2, 0, 0, 2));
        assert_eq!(r.profile.flagged(), vec![0]);
        assert!(r.profile.entries()[0].annihilator.is_zero());
    }

    #[test]
    fn embedded_prime() {
        let m = cyclic(&["x", "y"], 2, &[&[2, 0], &[1, 1]]);
        let r = analyze(&m).unwrap();
        assert_eq!((r.depth, r.dim, r.pd, r.omega), (0, 1, 2, 0));
        assert_eq!(r.profile.flagged(), vec![1, 2]);
    }

    #[test]
    fn two_planes() {
        let m = cyclic(
            &["x", "y", "z", "w"],
            2,
            &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]],
        );
        let r = analyze(&m).unwrap();
        assert_eq!((r.depth, r.dim, r.omega, r.pd, r.codim), (1, 2, 2, 3, 2));
        assert_eq!(r.betti.totals(), vec![1, 4, 4, 1]);
        assert_eq!(r.profile.flagged(), vec![2]);
        assert_eq!(r.profile.entries()[3].codim, Some(4));
        let num: Vec<(i64, i64)> = r
            .hilbert
            .numerator()
            .iter()
            .map(|(&a, &b)| (a, b))
            .collect();
        assert_eq!(num, vec![(0, 1), (2, -4), (3, 4), (4, -1)]);
        assert_eq!(r.hilbert.pole_order(), 2);
    }

    #[test]
    fn hilbert_series_cancellation() {
        let m = cyclic(&["x", "y"], 2, &[&[1, 0]]);
        let h = hilbert_series(&m).unwrap();
        assert_eq!(h.pole_order(), 1);
        for q in 0..6 {
            assert_eq!(h.coefficient(q), 1);
        }
        let k = cyclic(&["x", "y"], 2, &[&[1, 0], &[0, 1]]);
        let h = hilbert_series(&k).unwrap();
        assert_eq!(h.pole_order(), 0);
        assert_eq!(h.coefficient(0), 1);
        assert_eq!(h.coefficient(1), 0);
    }

    #[test]
    fn local_cohomology_of_a_line() {
        let m = cyclic(&["x", "y"], 2, &[&[1, 0]]);
        let h1 = local_cohomology_graded_dims(&m, 1, -5..=3).unwrap();
        for (q, d) in h1 {
            assert_eq!(d, usize::from(q <= -1), "degree {q}");
        }
        let h0 = local_cohomology_graded_dims(&m, 0, -5..=3).unwrap();
        assert!(h0.values().all(|&d| d == 0));
        let k = cyclic(&["x", "y"], 2, &[&[1, 0], &[0, 1]]);
        let h0 = local_cohomology_graded_dims(&k, 0, -3..=3).unwrap();
        assert_eq!(
            h0.iter().filter(|(_, &d)| d > 0).collect::<Vec<_>>(),
            vec![(&0, &1)]
        );
    }

    #[test]
    fn zero_module_is_rejected() {
        let m = cyclic(&["x"], 2, &[&[0]]);
        assert!(matches!(analyze(&m), Err(Error::ZeroModule)));
    }
}
