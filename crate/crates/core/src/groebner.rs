//! Buchberger's algorithm for homogeneous submodules of graded free modules,
//! processed degree by degree with the normal selection strategy.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::module::{FreeModule, Term, Vector};
use crate::monomial::Monomial;

/// Reduced Groebner basis of the submodule spanned by some generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    /// Monic, tail-reduced, sorted by increasing leading term.
    pub elements: Vec<Vector>,
    /// Indices (into the input list) of a minimal homogeneous generating
    /// set, in order of processing: by degree, then by input index.
    pub minimal_generators: Vec<usize>,
    /// Number of S-pairs that were actually reduced.
    pub spairs_reduced: usize,
}

#[derive(Clone)]
struct Lead {
    comp: usize,
    mono: Monomial,
}

fn find_divisor(leads: &[Lead], t: &Term) -> Option<usize> {
    leads
        .iter()
        .position(|l| l.comp == t.comp && l.mono.divides(&t.mono))
}

fn leads_of(basis: &[Vector]) -> Vec<Lead> {
    basis
        .iter()
        .map(|g| {
            let t = g.lead().expect("zero element in basis");
            Lead {
                comp: t.comp,
                mono: t.mono.clone(),
            }
        })
        .collect()
}

/// Full reduction of `v` by a monic basis; no term of the result is
/// divisible by a leading term of `basis`.
pub fn reduce(module: &FreeModule, v: &Vector, basis: &[Vector]) -> Vector {
    let leads = leads_of(basis);
    Vector::from_sorted(reduce_terms(
        module,
        v.terms().to_vec(),
        basis,
        &leads,
        None,
    ))
}

/// Quotient entry: `coeff · mono` times basis element `index`.
pub type Quotient = (usize, Monomial, u32);

/// Reduction that also records the multiples subtracted, so that
/// `v = result + Σ coeff·mono·basis[index]`.
pub fn reduce_with_quotients(
    module: &FreeModule,
    v: &Vector,
    basis: &[Vector],
) -> (Vector, Vec<Quotient>) {
    let leads = leads_of(basis);
    let mut quotients = Vec::new();
    let rem = reduce_terms(
        module,
        v.terms().to_vec(),
        basis,
        &leads,
        Some(&mut quotients),
    );
    (Vector::from_sorted(rem), quotients)
}

fn reduce_terms(
    module: &FreeModule,
    mut p: Vec<Term>,
    basis: &[Vector],
    leads: &[Lead],
    mut quotients: Option<&mut Vec<Quotient>>,
) -> Vec<Term> {
    let k = module.ring().field();
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let t = &p[start];
        match find_divisor(leads, t) {
            Some(idx) => {
                let q = t.mono.div(&leads[idx].mono);
                let c = t.coeff;
                if let Some(qs) = quotients.as_deref_mut() {
                    qs.push((idx, q.clone(), c));
                }
                p = module.axpy_slice(&p[start..], k.neg(c), &q, basis[idx].terms());
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn spoly(module: &FreeModule, a: &Vector, b: &Vector, lcm: &Monomial) -> Vector {
    let k = module.ring().field();
    let la = &a.lead().unwrap().mono;
    let lb = &b.lead().unwrap().mono;
    let left = module.mul_term(a, &lcm.div(la), 1);
    module.axpy(&left, k.neg(1), &lcm.div(lb), b)
}

struct Buchberger<'a> {
    module: &'a FreeModule,
    basis: Vec<Vector>,
    leads: Vec<Lead>,
    pending: BTreeSet<(i64, usize, usize)>,
    pending_set: HashSet<(usize, usize)>,
    product_criterion: bool,
}

impl Buchberger<'_> {
    fn add(&mut self, h: Vector) {
        let h = self.module.monic(&h);
        let lead = h.lead().unwrap();
        let new = Lead {
            comp: lead.comp,
            mono: lead.mono.clone(),
        };
        let idx = self.basis.len();
        for (i, l) in self.leads.iter().enumerate() {
            if l.comp != new.comp {
                continue;
            }
            if self.product_criterion && l.mono.is_coprime(&new.mono) {
                continue;
            }
            let lcm = l.mono.lcm(&new.mono);
            let deg = self.module.term_degree(new.comp, &lcm);
            self.pending.insert((deg, i, idx));
            self.pending_set.insert((i, idx));
        }
        self.leads.push(new);
        self.basis.push(h);
    }

    fn pair_pending(&self, a: usize, b: usize) -> bool {
        self.pending_set.contains(&(a.min(b), a.max(b)))
    }

    /// Buchberger's chain criterion: some third leading term divides the
    /// lcm and both connecting pairs are already settled.
    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let comp = self.leads[i].comp;
        self.leads.iter().enumerate().any(|(k, l)| {
            k != i
                && k != j
                && l.comp == comp
                && l.mono.divides(lcm)
                && !self.pair_pending(i, k)
                && !self.pair_pending(j, k)
        })
    }
}

/// Reduced Groebner basis of the submodule of `module` spanned by `gens`.
/// Inputs must be homogeneous; zero generators are ignored.
pub fn groebner(module: &FreeModule, gens: &[Vector]) -> Result<GroebnerBasis> {
    let limits = module.ring().limits();
    let mut inputs: Vec<(i64, usize)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = module.element_degree(g)?;
        inputs.push((d, i));
    }
    inputs.sort();

    let mut bb = Buchberger {
        module,
        basis: Vec::new(),
        leads: Vec::new(),
        pending: BTreeSet::new(),
        pending_set: HashSet::new(),
        product_criterion: module.rank() == 1,
    };
    let mut minimal = Vec::new();
    let mut spairs = 0usize;
    let mut next_input = 0;

    loop {
        let pair_deg = bb.pending.first().map(|p| p.0);
        let input_deg = inputs.get(next_input).map(|p| p.0);
        let d = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        while let Some(&(pd, i, j)) = bb.pending.first() {
            if pd != d {
                break;
            }
            bb.pending.pop_first();
            bb.pending_set.remove(&(i, j));
            let lcm = bb.leads[i].mono.lcm(&bb.leads[j].mono);
            if bb.chain_criterion(i, j, &lcm) {
                continue;
            }
            spairs += 1;
            if spairs > limits.max_spairs {
                return Err(Error::ResourceCap(format!(
                    "more than {} S-pairs in one Groebner basis",
                    limits.max_spairs
                )));
            }
            let s = spoly(module, &bb.basis[i], &bb.basis[j], &lcm);
            let h = Vector::from_sorted(reduce_terms(
                module,
                s.into_terms(),
                &bb.basis,
                &bb.leads,
                None,
            ));
            if !h.is_zero() {
                bb.add(h);
            }
        }
        while let Some(&(gd, gi)) = inputs.get(next_input) {
            if gd != d {
                break;
            }
            next_input += 1;
            let h = Vector::from_sorted(reduce_terms(
                module,
                gens[gi].terms().to_vec(),
                &bb.basis,
                &bb.leads,
                None,
            ));
            if !h.is_zero() {
                bb.add(h);
                minimal.push(gi);
            }
        }
    }

    // tail reduction; leading terms are already pairwise non-dividing
    let basis = std::mem::take(&mut bb.basis);
    let leads = std::mem::take(&mut bb.leads);
    let mut elements: Vec<Vector> = basis
        .iter()
        .map(|g| {
            let mut terms = g.terms().to_vec();
            let tail = terms.split_off(1);
            terms.extend(reduce_terms(module, tail, &basis, &leads, None));
            Vector::from_sorted(terms)
        })
        .collect();
    elements.sort_by(|a, b| {
        let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
        module.cmp_terms(ta.comp, &ta.mono, tb.comp, &tb.mono)
    });
    Ok(GroebnerBasis {
        elements,
        minimal_generators: minimal,
        spairs_reduced: spairs,
    })
}

/// A minimal homogeneous generating set, chosen greedily by degree.
pub fn minimal_generators(module: &FreeModule, gens: &[Vector]) -> Result<Vec<Vector>> {
    let gb = groebner(module, gens)?;
    Ok(gb
        .minimal_generators
        .iter()
        .map(|&i| gens[i].clone())
        .collect())
}

/// Generators of `{a : Σ a_i · images[i] = 0}` inside the free module with
/// basis degrees `source_degrees`, computed by eliminating the target
/// components from `(images[i], e_i)`. The result is a Groebner basis of
/// the syzygy module.
pub fn syzygies(
    target: &FreeModule,
    images: &[Vector],
    source_degrees: &[i64],
) -> Result<Vec<Vector>> {
    let r = target.rank();
    let s = images.len();
    debug_assert_eq!(s, source_degrees.len());
    let mut degrees = target.degrees().to_vec();
    degrees.extend_from_slice(source_degrees);
    let mut blocks = vec![1u8; r];
    blocks.extend(std::iter::repeat_n(0u8, s));
    let combined = FreeModule::with_blocks(target.ring(), degrees, blocks);
    let one = Monomial::one(target.ring().nvars());
    let gens: Vec<Vector> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut terms = img.terms().to_vec();
            terms.push(Term {
                comp: r + i,
                mono: one.clone(),
                coeff: 1,
            });
            combined.from_terms(terms)
        })
        .collect();
    let gb = groebner(&combined, &gens)?;
    let source = FreeModule::new(target.ring(), source_degrees.to_vec());
    Ok(gb
        .elements
        .into_iter()
        .filter(|g| g.lead().unwrap().comp >= r)
        .map(|g| source.remap(&g, |c| Some(c - r)))
        .collect())
}

/// Syzygies of a monic Groebner basis from its S-pair standard
/// representations (Schreyer). Returns the source module and the
/// (generally non-minimal) generating set.
pub fn schreyer_syzygies(module: &FreeModule, gb: &[Vector]) -> Result<(FreeModule, Vec<Vector>)> {
    let degrees = gb
        .iter()
        .map(|g| module.element_degree(g))
        .collect::<Result<Vec<_>>>()?;
    let source = FreeModule::new(module.ring(), degrees);
    let k = module.ring().field();
    let mut out = Vec::new();
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            let (li, lj) = (gb[i].lead().unwrap(), gb[j].lead().unwrap());
            if li.comp != lj.comp {
                continue;
            }
            debug_assert!(li.coeff == 1 && lj.coeff == 1);
            let lcm = li.mono.lcm(&lj.mono);
            let s = spoly(module, &gb[i], &gb[j], &lcm);
            let (rem, quots) = reduce_with_quotients(module, &s, gb);
            if !rem.is_zero() {
                return Err(Error::Inconsistent(
                    "Schreyer syzygies requested for a non-Groebner basis".into(),
                ));
            }
            let mut terms = vec![
                Term {
                    comp: i,
                    mono: lcm.div(&li.mono),
                    coeff: 1,
                },
                Term {
                    comp: j,
                    mono: lcm.div(&lj.mono),
                    coeff: k.neg(1),
                },
            ];
            terms.extend(quots.into_iter().map(|(idx, mono, c)| Term {
                comp: idx,
                mono,
                coeff: k.neg(c),
            }));
            let syz = source.from_terms(terms);
            if !syz.is_zero() {
                out.push(syz);
            }
        }
    }
    Ok((source, out))
}
