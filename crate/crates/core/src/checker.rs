//! The four equivalent conditions for `depth M = ω M`, and the gap-one
//! verdict.
//!
//! With `e = pd M` and `I_e = ann Ext^e(M, S)`, the conditions are
//!
//! 1. `depth M = ω M`,
//! 2. `H^0_{I_e}(M) ≠ 0`,
//! 3. `Hom(Ext^e(M, S), M) ≠ 0`,
//! 4. `Tor_e(M, M) ≠ 0`.
//!
//! Each is evaluated by its own route (profile, colon, Hom, Tor), so their
//! agreement is an end-to-end test of the engine.

use crate::error::{Error, Result};
use crate::homology::{hom_module, tor_from_resolution};
use crate::invariants::ModuleAnalysis;
use crate::presentation::PresentedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConditionVerdict {
    pub e: usize,
    pub depth_equals_omega: bool,
    pub h0_nonzero: bool,
    pub hom_nonzero: bool,
    pub tor_nonzero: bool,
    pub agree: bool,
}

impl ConditionVerdict {
    pub fn conditions(&self) -> [bool; 4] {
        [
            self.depth_equals_omega,
            self.h0_nonzero,
            self.hom_nonzero,
            self.tor_nonzero,
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapOne {
    /// `dim - depth ≠ 1`.
    GapNotOne,
    /// Gap one and `depth = ω`.
    Confirmed,
    /// Gap one and `depth < ω`.
    Refuted,
}

impl GapOne {
    pub fn as_str(&self) -> &'static str {
        match self {
            GapOne::GapNotOne => "gap-not-one",
            GapOne::Confirmed => "confirmed",
            GapOne::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapOneReport {
    pub verdict: GapOne,
    pub gap: usize,
    pub claim_cohomology: bool,
}

impl GapOneReport {
    /// A refuted claimed cohomology ring: the presentation deserves a
    /// second look.
    pub fn needs_review(&self) -> bool {
        self.claim_cohomology && self.verdict == GapOne::Refuted
    }
}

impl ModuleAnalysis {
    pub fn condition_depth_omega(&self) -> bool {
        self.depth() == self.omega()
    }

    /// `(0 :_M I_e) ≠ 0`, i.e. `(R : I_e)` strictly contains the relations
    /// `R`. A nonzero `x` with `I^s x = 0`, `s` minimal, gives a nonzero
    /// `f x` killed by `I` for some `f ∈ I^{s-1}`, so one colon suffices.
    pub fn condition_h0(&self) -> Result<bool> {
        let e = self.projective_dimension();
        let ie = &self.profile().entries()[e].annihilator;
        let rels = self.module().relations();
        let colon = rels.colon(ie)?;
        Ok(!rels.contains_submodule(&colon)?)
    }

    pub fn condition_hom(&self) -> Result<bool> {
        let e = self.projective_dimension();
        let h = hom_module(&self.ext(e), self.module())?;
        Ok(!h.is_zero()?)
    }

    pub fn condition_tor(&self) -> Result<bool> {
        let e = self.projective_dimension();
        let t = tor_from_resolution(self.resolution(), self.module(), e)?;
        Ok(!t.is_zero()?)
    }

    /// All four conditions; `agree` is not enforced here.
    pub fn verdict(&self) -> Result<ConditionVerdict> {
        let c1 = self.condition_depth_omega();
        let c2 = self.condition_h0()?;
        let c3 = self.condition_hom()?;
        let c4 = self.condition_tor()?;
        Ok(ConditionVerdict {
            e: self.projective_dimension(),
            depth_equals_omega: c1,
            h0_nonzero: c2,
            hom_nonzero: c3,
            tor_nonzero: c4,
            agree: c1 == c2 && c2 == c3 && c3 == c4,
        })
    }

    pub fn gap_one(&self, claim_cohomology: bool) -> GapOneReport {
        let gap = self.dimension() - self.depth();
        let verdict = if gap != 1 {
            GapOne::GapNotOne
        } else if self.condition_depth_omega() {
            GapOne::Confirmed
        } else {
            GapOne::Refuted
        };
        GapOneReport {
            verdict,
            gap,
            claim_cohomology,
        }
    }
}

pub fn condition_depth_omega(m: &PresentedModule) -> Result<bool> {
    Ok(ModuleAnalysis::new(m)?.condition_depth_omega())
}

pub fn condition_h0(m: &PresentedModule) -> Result<bool> {
    ModuleAnalysis::new(m)?.condition_h0()
}

pub fn condition_hom(m: &PresentedModule) -> Result<bool> {
    ModuleAnalysis::new(m)?.condition_hom()
}

pub fn condition_tor(m: &PresentedModule) -> Result<bool> {
    ModuleAnalysis::new(m)?.condition_tor()
}

/// Evaluates the four conditions; a disagreement is an engine bug and is
/// returned as [`Error::Disagreement`].
pub fn check_equivalence(m: &PresentedModule) -> Result<ConditionVerdict> {
    let v = ModuleAnalysis::new(m)?.verdict()?;
    if v.agree {
        Ok(v)
    } else {
        Err(Error::Disagreement(v))
    }
}

pub fn check_gap_one(m: &PresentedModule, claim_cohomology: bool) -> Result<GapOneReport> {
    Ok(ModuleAnalysis::new(m)?.gap_one(claim_cohomology))
}
