//! Brute-force computations used to cross-check the Ext pipeline.
//!
//! None of these go through resolutions of the module under test: the
//! monomial oracles are pure divisibility arguments, the Čech oracle counts
//! ranks of the Čech complex multidegree by multidegree, and the
//! graded-piece oracle computes homology of a complex one degree at a time
//! with dense linear algebra.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::module::{FreeModule, Term, Vector};
use crate::monomial::Monomial;
use crate::presentation::PresentedModule;
use crate::resolution::GradedResolution;
use crate::submodule::Ideal;

/// Generators of a monomial ideal, with scalars stripped.
pub fn monomial_generators(ideal: &Ideal) -> Result<Vec<Monomial>> {
    ideal
        .polynomials()
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            if p.is_monomial() {
                Ok(p.terms()[0].0.clone())
            } else {
                Err(Error::NonMonomial(format!("{p}")))
            }
        })
        .collect()
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.exponents().iter().sum::<u32>());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &e in m.exponents() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=e).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.iter().map(|v| Monomial::from_exponents(v)).collect()
}

/// Associated primes of `S/I` for a monomial ideal `I`, as sets of
/// variable indices: the supports `A` for which `(I : m) = (x_i : i ∈ A)`
/// for some monomial `m ∉ I` dividing the lcm of the generators.
pub fn monomial_ass_oracle(ideal: &Ideal) -> Result<BTreeSet<Vec<usize>>> {
    let n = ideal.ring().nvars();
    let gens = minimalize(monomial_generators(ideal)?);
    if gens.iter().any(|g| g.is_one()) {
        return Ok(BTreeSet::new());
    }
    let lcm = gens.iter().fold(Monomial::one(n), |a, g| a.lcm(g));
    let mut out = BTreeSet::new();
    for m in divisors(&lcm) {
        if gens.iter().any(|g| g.divides(&m)) {
            continue;
        }
        let quotients = minimalize(gens.iter().map(|g| g.div(&g.gcd(&m))).collect());
        let linear = quotients
            .iter()
            .all(|q| q.exponents().iter().sum::<u32>() == 1);
        if linear {
            let mut support: Vec<usize> = quotients.iter().flat_map(|q| q.support()).collect();
            support.sort_unstable();
            out.insert(support);
        }
    }
    Ok(out)
}

/// Codimensions of the associated primes of `S/I`.
pub fn oracle_ass_codimensions(ideal: &Ideal) -> Result<BTreeSet<usize>> {
    Ok(monomial_ass_oracle(ideal)?
        .iter()
        .map(|a| a.len())
        .collect())
}

/// `ω(S/I) = n - max |A|` over the associated primes.
pub fn oracle_omega(ideal: &Ideal) -> Result<usize> {
    let n = ideal.ring().nvars();
    monomial_ass_oracle(ideal)?
        .iter()
        .map(|a| n - a.len())
        .min()
        .ok_or(Error::ZeroModule)
}

/// Number of `c ≥ 0` with `Σ w_j c_j = s`.
fn compositions(weights: &[u32], s: i64) -> u64 {
    if s < 0 {
        return 0;
    }
    let s = s as usize;
    let mut count = vec![0u64; s + 1];
    count[0] = 1;
    for &w in weights {
        let w = w as usize;
        for d in w..=s {
            count[d] += count[d - w];
        }
    }
    count[s]
}

/// `dim_k H^i_m(S/I)_q` for a monomial ideal, from the Čech complex.
///
/// In multidegree `a` the localization `(S/I)_{x_A}` is one-dimensional
/// when `a_j ≥ 0` off `A` and no generator `g` has `g_j ≤ a_j` for all
/// `j ∉ A`, and zero otherwise. The complex depends only on the set `N` of
/// negative coordinates and the values of the others; it is constant in
/// any coordinate `a_j ≥ ρ_j` (the largest exponent of `x_j` among the
/// generators), and local cohomology vanishes in large degrees, so it is
/// exact there. It is enough to take `0 ≤ a_j < ρ_j` off `N` and count the
/// multidegrees of each total degree with that pattern.
pub fn cech_local_cohomology(
    ideal: &Ideal,
    i: usize,
    range: RangeInclusive<i64>,
) -> Result<BTreeMap<i64, usize>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let k = ring.field();
    let w = ring.weights();
    let gens = minimalize(monomial_generators(ideal)?);
    let mut out: BTreeMap<i64, usize> = range.clone().map(|q| (q, 0)).collect();
    if gens.iter().any(|g| g.is_one()) || i > n {
        return Ok(out);
    }
    let rho: Vec<u32> = (0..n)
        .map(|j| gens.iter().map(|g| g.exponents()[j]).max().unwrap_or(0))
        .collect();

    for neg in 0u32..(1 << n) {
        let free: Vec<usize> = (0..n).filter(|j| neg & (1 << j) == 0).collect();
        let neg_weights: Vec<u32> = (0..n)
            .filter(|j| neg & (1 << j) != 0)
            .map(|j| w[j])
            .collect();
        let neg_floor: i64 = neg_weights.iter().map(|&x| x as i64).sum();
        let mut b = vec![0u32; n];
        'boxes: loop {
            let h = cech_piece(&gens, n, neg, &b, i, k);
            if h > 0 {
                let base: i64 = free.iter().map(|&j| b[j] as i64 * w[j] as i64).sum();
                for q in range.clone() {
                    // remaining degree q - base = -Σ_{j∈N} w_j c_j, c_j ≥ 1
                    let s = base - q;
                    let count = if neg == 0 {
                        u64::from(s == 0)
                    } else {
                        compositions(&neg_weights, s - neg_floor)
                    };
                    *out.get_mut(&q).unwrap() += h * count as usize;
                }
            }
            // next box point over the free coordinates
            for &j in &free {
                if b[j] + 1 < rho[j] {
                    b[j] += 1;
                    continue 'boxes;
                }
                b[j] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// `dim H^i` of the Čech complex in one multidegree pattern: negative set
/// `neg`, nonnegative values `b` elsewhere.
fn cech_piece(
    gens: &[Monomial],
    n: usize,
    neg: u32,
    b: &[u32],
    i: usize,
    k: crate::field::PrimeField,
) -> usize {
    let valid = |set: u32| -> bool {
        set & neg == neg
            && !gens.iter().any(|g| {
                (0..n)
                    .filter(|j| set & (1 << j) == 0)
                    .all(|j| g.exponents()[j] <= b[j])
            })
    };
    let layer = |size: usize| -> Vec<u32> {
        if size > n {
            return Vec::new();
        }
        (0u32..(1 << n))
            .filter(|s| s.count_ones() as usize == size && valid(*s))
            .collect()
    };
    let rank_from = |src: &[u32], dst: &[u32]| -> usize {
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let pos: HashMap<u32, usize> = dst.iter().enumerate().map(|(r, &s)| (s, r)).collect();
        let mut m = DenseMatrix::zeros(dst.len(), src.len());
        for (c, &a) in src.iter().enumerate() {
            for j in 0..n {
                if a & (1 << j) != 0 {
                    continue;
                }
                if let Some(&r) = pos.get(&(a | (1 << j))) {
                    let below = (a & ((1 << j) - 1)).count_ones();
                    let v = if below % 2 == 0 { 1 } else { k.neg(1) };
                    m.set(r, c, v);
                }
            }
        }
        m.rank(k)
    };
    let here = layer(i);
    if here.is_empty() {
        return 0;
    }
    let out_rank = rank_from(&here, &layer(i + 1));
    let in_rank = if i == 0 {
        0
    } else {
        rank_from(&layer(i - 1), &here)
    };
    here.len() - out_rank - in_rank
}

/// Basis of `(F ⊗ N)_q`: triples (component of `F`, generator of `N`,
/// standard monomial).
fn tensor_piece(
    f: &FreeModule,
    n: &PresentedModule,
    q: i64,
) -> Result<Vec<(usize, usize, Monomial)>> {
    let mut out = Vec::new();
    for a in 0..f.rank() {
        for (g, m) in n.graded_piece_basis(q - f.degree(a))? {
            out.push((a, g, m));
        }
    }
    Ok(out)
}

/// Matrix in degree `q` of `φ ⊗ N` where `images[a]` is `φ(e_a)` in `dst`.
fn tensor_matrix(
    src: &FreeModule,
    dst: &FreeModule,
    images: &[Vector],
    n: &PresentedModule,
    q: i64,
) -> Result<DenseMatrix> {
    let k = src.ring().field();
    let cols = tensor_piece(src, n, q)?;
    let rows = tensor_piece(dst, n, q)?;
    let index: HashMap<(usize, usize, Monomial), usize> = rows
        .iter()
        .cloned()
        .enumerate()
        .map(|(r, key)| (key, r))
        .collect();
    let ng = n.generators();
    let mut mat = DenseMatrix::zeros(rows.len(), cols.len());
    for (c, (a, g, m)) in cols.iter().enumerate() {
        for t in images[*a].terms() {
            let v = ng.from_terms(vec![Term {
                comp: *g,
                mono: t.mono.mul(m),
                coeff: t.coeff,
            }]);
            let nf = n.relations().normal_form(&v)?;
            for s in nf.terms() {
                let r = index[&(t.comp, s.comp, s.mono.clone())];
                mat.add_to(k, r, c, s.coeff);
            }
        }
    }
    Ok(mat)
}

/// `dim_k` in degree `q` of the homology at the middle of
/// `A --α--> B --β--> C` tensored with `N`; `alpha[a]` and `beta[b]` are
/// the images of basis elements.
pub fn piece_homology(
    a: &FreeModule,
    alpha: &[Vector],
    b: &FreeModule,
    c: &FreeModule,
    beta: &[Vector],
    n: &PresentedModule,
    q: i64,
) -> Result<usize> {
    let k = b.ring().field();
    let size = tensor_piece(b, n, q)?.len();
    let out_rank = tensor_matrix(b, c, beta, n, q)?.rank(k);
    let in_rank = tensor_matrix(a, b, alpha, n, q)?.rank(k);
    Ok(size - out_rank - in_rank)
}

fn empty(res: &GradedResolution) -> FreeModule {
    FreeModule::new(res.ring(), Vec::new())
}

/// `dim_k Tor_j(M, N)_q` from a resolution of `M`, degree by degree.
pub fn tor_piece_dimension(
    res: &GradedResolution,
    n: &PresentedModule,
    j: usize,
    q: i64,
) -> Result<usize> {
    let Some(mid) = res.module(j) else {
        return Ok(0);
    };
    let zero = empty(res);
    let (a, alpha) = match res.module(j + 1) {
        Some(a) => (a.clone(), res.differential(j).unwrap().to_vec()),
        None => (zero.clone(), Vec::new()),
    };
    let (c, beta) = if j == 0 {
        (zero.clone(), vec![Vector::zero(); mid.rank()])
    } else {
        (
            res.module(j - 1).unwrap().clone(),
            res.differential(j - 1).unwrap().to_vec(),
        )
    };
    piece_homology(&a, &alpha, mid, &c, &beta, n, q)
}

/// Dual of a free module together with the transpose of a map into it.
fn dual_map(
    src: &FreeModule,
    dst: &FreeModule,
    cols: &[Vector],
) -> (FreeModule, FreeModule, Vec<Vector>) {
    let ring = src.ring();
    let dsrc = FreeModule::new(ring, src.degrees().iter().map(|d| -d).collect());
    let ddst = FreeModule::new(ring, dst.degrees().iter().map(|d| -d).collect());
    let mut rows: Vec<Vec<Term>> = vec![Vec::new(); dst.rank()];
    for (bcol, col) in cols.iter().enumerate() {
        for t in col.terms() {
            rows[t.comp].push(Term {
                comp: bcol,
                mono: t.mono.clone(),
                coeff: t.coeff,
            });
        }
    }
    let images = rows.into_iter().map(|r| dsrc.from_terms(r)).collect();
    (ddst, dsrc, images)
}

/// `dim_k Ext^j(M, S)_q` from a resolution of `M`, degree by degree on
/// the dual complex.
pub fn ext_piece_dimension(res: &GradedResolution, j: usize, q: i64) -> Result<usize> {
    let Some(fj) = res.module(j) else {
        return Ok(0);
    };
    let s = PresentedModule::free(res.ring(), vec![0]);
    let zero = empty(res);
    let mid = FreeModule::new(res.ring(), fj.degrees().iter().map(|d| -d).collect());
    let (c, beta) = match res.module(j + 1) {
        Some(next) => {
            let (_, dnext, images) = dual_map(next, fj, res.differential(j).unwrap());
            (dnext, images)
        }
        None => (zero.clone(), vec![Vector::zero(); fj.rank()]),
    };
    let (a, alpha) = if j == 0 {
        (zero, Vec::new())
    } else {
        let prev = res.module(j - 1).unwrap();
        let (dprev, _, images) = dual_map(fj, prev, res.differential(j - 1).unwrap());
        (dprev, images)
    };
    piece_homology(&a, &alpha, &mid, &c, &beta, &s, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::ring::GradedRing;

    fn ideal(names: &[&str], weights: &[u32], gens: &[&[u32]]) -> Ideal {
        let r = GradedRing::new(names, weights, 2).unwrap();
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|e| Polynomial::monomial(&r, Monomial::from_exponents(e), 1))
            .collect();
        Ideal::new(&r, &polys).unwrap()
    }

    fn sets(v: &[&[usize]]) -> BTreeSet<Vec<usize>> {
        v.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn ass_of_small_ideals() {
        let i = ideal(&["x", "y"], &[1, 1], &[&[1, 0]]);
        assert_eq!(monomial_ass_oracle(&i).unwrap(), sets(&[&[0]]));
        assert_eq!(oracle_omega(&i).unwrap(), 1);
        let i = ideal(&["x", "y"], &[1, 1], &[&[2, 0], &[1, 1]]);
        assert_eq!(monomial_ass_oracle(&i).unwrap(), sets(&[&[0], &[0, 1]]));
        assert_eq!(oracle_omega(&i).unwrap(), 0);
        let i = ideal(
            &["x", "y", "z", "w"],
            &[1; 4],
            &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]],
        );
        assert_eq!(monomial_ass_oracle(&i).unwrap(), sets(&[&[0, 1], &[2, 3]]));
        assert_eq!(oracle_omega(&i).unwrap(), 2);
        let zero = ideal(&["x", "y"], &[1, 1], &[]);
        assert_eq!(monomial_ass_oracle(&zero).unwrap(), sets(&[&[]]));
        assert_eq!(oracle_omega(&zero).unwrap(), 2);
    }

    #[test]
    fn non_monomial_is_rejected() {
        let r = GradedRing::new(&["x", "y"], &[1, 1], 2).unwrap();
        let f = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        let i = Ideal::new(&r, &[f]).unwrap();
        assert!(matches!(
            monomial_ass_oracle(&i),
            Err(Error::NonMonomial(_))
        ));
    }

    #[test]
    fn cech_of_a_line() {
        let i = ideal(&["x", "y"], &[1, 1], &[&[1, 0]]);
        let h1 = cech_local_cohomology(&i, 1, -5..=3).unwrap();
        for (q, d) in &h1 {
            assert_eq!(*d, usize::from(*q <= -1), "degree {q}");
        }
        let h0 = cech_local_cohomology(&i, 0, -5..=3).unwrap();
        assert!(h0.values().all(|&d| d == 0));
    }

    #[test]
    fn cech_of_the_polynomial_ring() {
        // H^2_m(k[x,y]) = (xy)^{-1} k[x^{-1}, y^{-1}]: dimension -q-1 in degree q
        let i = ideal(&["x", "y"], &[1, 1], &[]);
        let h2 = cech_local_cohomology(&i, 2, -6..=1).unwrap();
        for (q, d) in &h2 {
            assert_eq!(*d as i64, (-q - 1).max(0), "degree {q}");
        }
        // weights (1, 3): the socle sits in degree -4
        let i = ideal(&["x", "y"], &[1, 3], &[]);
        let h2 = cech_local_cohomology(&i, 2, -6..=0).unwrap();
        assert_eq!(h2[&-4], 1);
        assert_eq!(h2[&-3], 0);
        assert_eq!(h2[&-5], 1);
    }

    #[test]
    fn cech_of_the_residue_field() {
        let i = ideal(&["x", "y"], &[1, 1], &[&[1, 0], &[0, 1]]);
        let h0 = cech_local_cohomology(&i, 0, -2..=2).unwrap();
        assert_eq!(
            h0.into_iter().filter(|(_, d)| *d > 0).collect::<Vec<_>>(),
            vec![(0, 1)]
        );
    }
}
