//! Report documents. Keys are emitted in field order, so the JSON form is
//! canonical; every number is an integer.

use std::fmt::Write as _;

use omega_kernel::checker::{ConditionVerdict, GapOneReport};
use omega_kernel::invariants::InvariantReport;
use omega_kernel::{BettiTable, RingRef, ORDER_NAME, VERSION};
use serde::Serialize;

use crate::parse::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Engine {
    pub name: &'static str,
    pub version: &'static str,
    pub order: &'static str,
}

impl Engine {
    pub fn current() -> Self {
        Engine {
            name: "omega-kernel",
            version: VERSION,
            order: ORDER_NAME,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingEcho {
    pub characteristic: u32,
    pub variables: Vec<Variable>,
    pub sigma: i64,
}

impl RingEcho {
    pub fn of(r: &RingRef) -> Self {
        RingEcho {
            characteristic: r.characteristic(),
            variables: r
                .names()
                .iter()
                .zip(r.weights())
                .map(|(n, &w)| Variable {
                    name: n.clone(),
                    weight: w,
                })
                .collect(),
            sigma: r.sigma(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleEcho {
    pub generators: Vec<Generator>,
    pub relations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTerm {
    pub exponent: i64,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hilbert {
    pub numerator: Vec<HilbertTerm>,
    pub denominator_weights: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub e: usize,
    pub ext_nonzero: bool,
    pub annihilator_codim: Option<usize>,
    pub flag: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub depth: usize,
    pub dim: usize,
    pub codim: usize,
    pub pd: usize,
    pub omega: usize,
    pub betti: Vec<BettiEntry>,
    pub hilbert: Hilbert,
    pub profile: Vec<ProfileEntry>,
}

pub fn betti_entries(b: &BettiTable) -> Vec<BettiEntry> {
    b.entries()
        .map(|(i, j, beta)| BettiEntry { i, j, beta })
        .collect()
}

impl Invariants {
    pub fn of(r: &InvariantReport) -> Self {
        Invariants {
            depth: r.depth,
            dim: r.dim,
            codim: r.codim,
            pd: r.pd,
            omega: r.omega,
            betti: betti_entries(&r.betti),
            hilbert: Hilbert {
                numerator: r
                    .hilbert
                    .numerator()
                    .iter()
                    .map(|(&exponent, &coefficient)| HilbertTerm {
                        exponent,
                        coefficient,
                    })
                    .collect(),
                denominator_weights: r.hilbert.weights().to_vec(),
            },
            profile: r
                .profile
                .entries()
                .iter()
                .map(|p| ProfileEntry {
                    e: p.e,
                    ext_nonzero: p.ext_nonzero,
                    annihilator_codim: p.codim,
                    flag: p.flag,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub e: usize,
    pub depth_equals_omega: bool,
    pub h0_nonzero: bool,
    pub hom_nonzero: bool,
    pub tor_nonzero: bool,
    pub agree: bool,
    /// How the top local cohomology criterion is certified: through the
    /// Hom condition and local duality, never on the dual side.
    pub top_local_cohomology_criterion: &'static str,
}

impl Conditions {
    pub fn of(v: &ConditionVerdict) -> Self {
        Conditions {
            e: v.e,
            depth_equals_omega: v.depth_equals_omega,
            h0_nonzero: v.h0_nonzero,
            hom_nonzero: v.hom_nonzero,
            tor_nonzero: v.tor_nonzero,
            agree: v.agree,
            top_local_cohomology_criterion: "via local duality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapOneEcho {
    pub verdict: &'static str,
    pub gap: usize,
    pub claim_cohomology: bool,
    pub needs_review: bool,
}

impl GapOneEcho {
    pub fn of(g: &GapOneReport) -> Self {
        GapOneEcho {
            verdict: g.verdict.as_str(),
            gap: g.gap,
            claim_cohomology: g.claim_cohomology,
            needs_review: g.needs_review(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub label: String,
    pub engine: Engine,
    pub ring: RingEcho,
    pub module: ModuleEcho,
    pub invariants: Invariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Conditions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_one: Option<GapOneEcho>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(label: String, p: &Presentation, inv: &InvariantReport) -> Self {
        Report {
            label,
            engine: Engine::current(),
            ring: RingEcho::of(&p.ring),
            module: ModuleEcho {
                generators: p
                    .generators
                    .iter()
                    .map(|(name, degree)| Generator {
                        name: name.clone(),
                        degree: *degree,
                    })
                    .collect(),
                relations: p.relations.len(),
            },
            invariants: Invariants::of(inv),
            conditions: None,
            gap_one: None,
            wall_time_ms: 0,
        }
    }

    pub fn to_text(&self) -> String {
        let inv = &self.invariants;
        let mut out = String::new();
        writeln!(out, "{}", self.label).unwrap();
        writeln!(
            out,
            "  depth {}  dim {}  codim {}  pd {}  omega {}",
            inv.depth, inv.dim, inv.codim, inv.pd, inv.omega
        )
        .unwrap();
        let flagged: Vec<String> = inv
            .profile
            .iter()
            .filter(|p| p.flag)
            .map(|p| p.e.to_string())
            .collect();
        writeln!(
            out,
            "  associated prime codimensions: {}",
            flagged.join(" ")
        )
        .unwrap();
        writeln!(out, "  hilbert numerator: {}", numerator_text(&inv.hilbert)).unwrap();
        out.push_str(&indent(&betti_text(&inv.betti)));
        if let Some(c) = &self.conditions {
            writeln!(
                out,
                "  conditions at e = {}: depth=omega {}  H0 {}  Hom {}  Tor {}  ({})",
                c.e,
                c.depth_equals_omega,
                c.h0_nonzero,
                c.hom_nonzero,
                c.tor_nonzero,
                if c.agree { "agree" } else { "DISAGREE" }
            )
            .unwrap();
        }
        if let Some(g) = &self.gap_one {
            write!(out, "  gap {}: {}", g.gap, g.verdict).unwrap();
            if g.needs_review {
                out.push_str("  [claimed cohomology ring, review the presentation]");
            }
            out.push('\n');
        }
        out
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

pub fn numerator_text(h: &Hilbert) -> String {
    let mut out = String::new();
    for (k, t) in h.numerator.iter().enumerate() {
        let c = t.coefficient;
        if k == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let a = c.unsigned_abs();
        match t.exponent {
            0 => write!(out, "{a}").unwrap(),
            e => {
                if a != 1 {
                    write!(out, "{a}").unwrap();
                }
                if e == 1 {
                    out.push('t');
                } else {
                    write!(out, "t^{e}").unwrap();
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Betti table with rows indexed by `j - i`.
pub fn betti_text(entries: &[BettiEntry]) -> String {
    if entries.is_empty() {
        return "betti: (empty)\n".into();
    }
    let cols = entries.iter().map(|e| e.i).max().unwrap() + 1;
    let lo = entries.iter().map(|e| e.j - e.i as i64).min().unwrap();
    let hi = entries.iter().map(|e| e.j - e.i as i64).max().unwrap();
    let mut totals = vec![0; cols];
    for e in entries {
        totals[e.i] += e.beta;
    }
    let width = entries
        .iter()
        .map(|e| e.beta.to_string().len())
        .chain(totals.iter().map(|t| t.to_string().len()))
        .max()
        .unwrap()
        .max(cols.to_string().len());
    let mut out = String::from("betti:");
    let label_width = 7;
    out = format!("{out:<label_width$}");
    for i in 0..cols {
        write!(out, " {i:>width$}").unwrap();
    }
    out.push('\n');
    write!(out, "{:<label_width$}", "total:").unwrap();
    for t in &totals {
        write!(out, " {t:>width$}").unwrap();
    }
    out.push('\n');
    for row in lo..=hi {
        write!(out, "{:>w$}", format!("{row}:"), w = label_width - 1).unwrap();
        out.push(' ');
        for i in 0..cols {
            let b = entries
                .iter()
                .find(|e| e.i == i && e.j - i as i64 == row)
                .map_or(0, |e| e.beta);
            let cell = if b == 0 {
                ".".to_string()
            } else {
                b.to_string()
            };
            write!(out, " {cell:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}
