//! Randomized checks of the Groebner engine, the derived functors and the
//! invariants against each other and against the brute-force oracles.

use proptest::prelude::*;

use omega_kernel::groebner::{groebner, reduce};
use omega_kernel::homology::{ext_module, hom_module, tor_module};
use omega_kernel::invariants::{HilbertSeries, ModuleAnalysis};
use omega_kernel::oracle::{oracle_ass_codimensions, oracle_omega, piece_homology};
use omega_kernel::resolution::free_resolution;
use omega_kernel::{
    FreeModule, GradedRing, Ideal, Monomial, Polynomial, PresentedModule, RingRef, Submodule,
    Vector,
};

fn ring(n: usize, p: u64) -> RingRef {
    let names: Vec<String> = "xyzw".chars().take(n).map(String::from).collect();
    GradedRing::new(&names, &vec![1; n], p).unwrap()
}

fn monomial_ideal(r: &RingRef, gens: &[Vec<u32>]) -> Ideal {
    let polys: Vec<Polynomial> = gens
        .iter()
        .map(|e| Polynomial::monomial(r, Monomial::from_exponents(e), 1))
        .collect();
    Ideal::new(r, &polys).unwrap()
}

fn quotient(i: &Ideal) -> PresentedModule {
    PresentedModule::from_submodule(i.as_submodule().clone())
}

/// Exponent vectors of total degree 1..=max_deg in `n` variables.
fn arb_exponent(n: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, n).prop_filter("degree in range", move |v| {
        let d: u32 = v.iter().sum();
        (1..=max_deg).contains(&d)
    })
}

fn arb_monomial_ideal() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (2usize..=4).prop_flat_map(|n| {
        let deg = if n == 4 { 2 } else { 3 };
        (Just(n), prop::collection::vec(arb_exponent(n, deg), 1..=4))
    })
}

/// Homogeneous polynomial of degree `d` with coefficients drawn from `coeffs`.
fn homogeneous(r: &RingRef, d: i64, coeffs: &[u32]) -> Polynomial {
    let terms: Vec<(Monomial, u32)> = r
        .monomials_of_degree(d)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .map(|(m, &c)| (m, c % r.characteristic()))
        .collect();
    Polynomial::from_terms(r, terms)
}

/// A random homogeneous ideal in three variables over F_3.
fn arb_ideal() -> impl Strategy<Value = (Vec<i64>, Vec<Vec<u32>>)> {
    (
        prop::collection::vec(1i64..=3, 1..=3),
        prop::collection::vec(prop::collection::vec(0u32..3, 10), 3),
    )
}

fn build_ideal(degrees: &[i64], coeffs: &[Vec<u32>]) -> (RingRef, Vec<Polynomial>) {
    let r = ring(3, 3);
    let polys = degrees
        .iter()
        .zip(coeffs)
        .map(|(&d, c)| homogeneous(&r, d, c))
        .filter(|p| !p.is_zero())
        .collect();
    (r, polys)
}

fn spoly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading_term().unwrap().clone();
    let (mg, cg) = g.leading_term().unwrap().clone();
    let l = mf.lcm(&mg);
    let k = f.ring().field();
    let a = f.mul_term(&l.div(&mf), k.inv(cf));
    let b = g.mul_term(&l.div(&mg), k.inv(cg));
    &a - &b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_bases_are_canonical((degrees, coeffs) in arb_ideal(), mult in prop::collection::vec(0u32..3, 10)) {
        let (r, polys) = build_ideal(&degrees, &coeffs);
        prop_assume!(!polys.is_empty());
        let i = Ideal::new(&r, &polys).unwrap();
        let gb = i.reduced_polynomials().unwrap();
        // every S-pair of the output reduces to zero
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                prop_assert!(i.normal_form(&spoly(&gb[a], &gb[b])).unwrap().is_zero());
            }
        }
        // span preservation in both directions
        let j = Ideal::new(&r, &gb).unwrap();
        for p in &polys {
            prop_assert!(j.contains(p).unwrap());
        }
        for g in &gb {
            prop_assert!(i.contains(g).unwrap());
            prop_assert_eq!(g.leading_term().unwrap().1, 1);
        }
        // generator order does not matter
        let mut rev = polys.clone();
        rev.reverse();
        prop_assert_eq!(Ideal::new(&r, &rev).unwrap().reduced_polynomials().unwrap(), gb.clone());
        // membership soundness on a combination, idempotence on a stray element
        let combo = polys.iter().enumerate().fold(Polynomial::zero(&r), |acc, (k, p)| {
            let top = 4 - p.homogeneous_degree().unwrap();
            &acc + &(&homogeneous(&r, top, &mult[k..]) * p)
        });
        prop_assert!(i.contains(&combo).unwrap());
        let stray = homogeneous(&r, 3, &mult);
        let nf = i.normal_form(&stray).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains(&(&stray - &nf)).unwrap());
    }

    #[test]
    fn syzygies_are_exact((degrees, coeffs) in arb_ideal()) {
        let (r, polys) = build_ideal(&degrees, &coeffs);
        prop_assume!(!polys.is_empty());
        let i = Ideal::new(&r, &polys).unwrap();
        let gb = i.as_submodule().reduced_basis().unwrap().to_vec();
        let syz = i.as_submodule().syzygy_basis().unwrap();
        let ambient = FreeModule::new(&r, vec![0]);
        let source = syz.ambient().clone();
        for s in syz.generators() {
            let polys: Vec<Polynomial> = (0..source.rank()).map(|c| source.component(s, c)).collect();
            prop_assert!(ambient.combination(&polys, &gb).is_zero());
        }
        // syz --> S^g --> S exact in the middle, degree by degree
        let syz_module = FreeModule::new(&r, syz.generators().iter().map(|s| source.element_degree(s).unwrap()).collect());
        let s = PresentedModule::free(&r, vec![0]);
        for q in 0..=7 {
            let h = piece_homology(&syz_module, syz.generators(), &source, &ambient, &gb, &s, q).unwrap();
            prop_assert_eq!(h, 0, "degree {}", q);
        }
    }

    #[test]
    fn colon_and_saturation((degrees, coeffs) in arb_ideal(), jdeg in 1i64..=2, jc in prop::collection::vec(0u32..3, 6)) {
        let (r, polys) = build_ideal(&degrees, &coeffs);
        prop_assume!(!polys.is_empty());
        let f = homogeneous(&r, jdeg, &jc);
        let g = Polynomial::var(&r, 2);
        let u = Ideal::new(&r, &polys).unwrap();
        let j = Ideal::new(&r, &[f, g]).unwrap();
        let c = u.colon(&j).unwrap();
        for a in c.reduced_polynomials().unwrap() {
            for b in j.polynomials() {
                prop_assert!(u.contains(&(&a * &b)).unwrap());
            }
        }
        let sat = u.saturate(&j).unwrap();
        prop_assert!(sat.colon(&j).unwrap().same_span(&sat).unwrap());
        prop_assert!(sat.as_submodule().contains_submodule(c.as_submodule()).unwrap());
    }

    #[test]
    fn monomial_calculus_matches_divisibility((n, gens) in arb_monomial_ideal(), other in prop::collection::vec(prop::collection::vec(0u32..=2, 4), 1..=3)) {
        let r = ring(n, 2);
        let other: Vec<Vec<u32>> = other.into_iter().map(|v| v[..n].to_vec()).filter(|v| v.iter().any(|&e| e > 0)).collect();
        prop_assume!(!other.is_empty());
        let i = monomial_ideal(&r, &gens);
        let j = monomial_ideal(&r, &other);
        let mono = |e: &[u32]| Monomial::from_exponents(e);
        // intersection: pairwise lcms
        let lcms: Vec<Vec<u32>> = gens.iter().flat_map(|a| other.iter().map(move |b| mono(a).lcm(&mono(b)).exponents().to_vec())).collect();
        prop_assert!(i.intersect(&j).unwrap().same_span(&monomial_ideal(&r, &lcms)).unwrap());
        // colon by a monomial: generators divided by their gcd with it
        let m = mono(&other[0]);
        let quot: Vec<Vec<u32>> = gens.iter().map(|g| { let g = mono(g); g.div(&g.gcd(&m)).exponents().to_vec() }).collect();
        let c = i.colon(&monomial_ideal(&r, &other[..1])).unwrap();
        prop_assert!(c.same_span(&monomial_ideal(&r, &quot)).unwrap());
        // annihilator of S/I is I
        prop_assert!(quotient(&i).annihilator().unwrap().same_span(&i).unwrap());
    }

    #[test]
    fn invariants_of_monomial_quotients((n, gens) in arb_monomial_ideal(), p in prop::sample::select(vec![2u64, 3])) {
        let r = ring(n, p);
        let i = monomial_ideal(&r, &gens);
        let m = quotient(&i);
        let a = ModuleAnalysis::new(&m).unwrap();
        let rep = a.report().unwrap();
        let v = a.verdict().unwrap();
        prop_assert!(v.agree, "{:?}", v);
        prop_assert_eq!(rep.depth + rep.pd, n);
        prop_assert_eq!(rep.codim + rep.dim, n);
        prop_assert!(rep.depth <= rep.omega && rep.omega <= rep.dim);
        prop_assert_eq!(rep.omega, oracle_omega(&i).unwrap());
        let oracle: Vec<usize> = oracle_ass_codimensions(&i).unwrap().into_iter().collect();
        prop_assert_eq!(rep.profile.flagged(), oracle);
        for entry in rep.profile.entries() {
            if !entry.ext_nonzero {
                prop_assert!(!entry.flag);
            }
        }
        prop_assert_eq!(rep.hilbert.pole_order(), rep.dim);
        if rep.depth == 0 {
            prop_assert!(v.depth_equals_omega);
        }
        // Hilbert function against the standard monomials
        for q in 0..=6 {
            prop_assert_eq!(rep.hilbert.coefficient(q), m.graded_dimension(q).unwrap() as i64);
        }
    }

    #[test]
    fn hom_tor_duality_and_h0_lemma((n, gens) in arb_monomial_ideal()) {
        let r = ring(n, 2);
        let i = monomial_ideal(&r, &gens);
        let m = quotient(&i);
        let a = ModuleAnalysis::new(&m).unwrap();
        let e = a.projective_dimension();
        let hom = hom_module(&ext_module(&m, e).unwrap(), &m).unwrap();
        let tor = tor_module(&m, &m, e).unwrap();
        prop_assert_eq!(hom.is_zero().unwrap(), tor.is_zero().unwrap());
        let ie = &a.profile().entries()[e].annihilator;
        let rels = m.relations();
        let colon_bigger = !rels.contains_submodule(&rels.colon(ie).unwrap()).unwrap();
        let sat_bigger = !rels.contains_submodule(&rels.saturate(ie).unwrap()).unwrap();
        prop_assert_eq!(colon_bigger, sat_bigger);
    }

    #[test]
    fn shifts_change_no_verdict((n, gens) in arb_monomial_ideal(), by in -3i64..=3) {
        let r = ring(n, 2);
        let m = quotient(&monomial_ideal(&r, &gens));
        let s = m.shift(by);
        let a = ModuleAnalysis::new(&m).unwrap();
        let b = ModuleAnalysis::new(&s).unwrap();
        prop_assert_eq!(a.verdict().unwrap(), b.verdict().unwrap());
        for j in 0..=a.projective_dimension() {
            prop_assert_eq!(a.ext_nonzero(j), b.ext_nonzero(j));
            let t = tor_module(&m, &s, j).unwrap();
            let t0 = tor_module(&m, &m, j).unwrap();
            prop_assert_eq!(t.is_zero().unwrap(), t0.is_zero().unwrap());
        }
        let shifted = HilbertSeries::from_betti(&b.betti(), r.weights());
        let mut expect = a.hilbert_series().numerator().clone();
        expect = expect.into_iter().map(|(k, c)| (k + by, c)).collect();
        prop_assert_eq!(shifted.numerator(), &expect);
    }

    #[test]
    fn redundant_variable_changes_pd_and_codim_only((n, gens) in arb_monomial_ideal()) {
        let r = ring(n, 2);
        let m = quotient(&monomial_ideal(&r, &gens));
        let f = Polynomial::var(&r, 0);
        let big = m.with_redundant_variable("t", &f).unwrap();
        let a = ModuleAnalysis::new(&m).unwrap();
        let b = ModuleAnalysis::new(&big).unwrap();
        prop_assert_eq!(b.projective_dimension(), a.projective_dimension() + 1);
        prop_assert_eq!(b.codimension(), a.codimension() + 1);
        prop_assert_eq!((b.depth(), b.dimension(), b.omega()), (a.depth(), a.dimension(), a.omega()));
    }

    #[test]
    fn general_ideals_agree((degrees, coeffs) in arb_ideal()) {
        let (r, polys) = build_ideal(&degrees, &coeffs);
        prop_assume!(!polys.is_empty());
        let m = PresentedModule::cyclic(&r, &polys).unwrap();
        prop_assume!(!m.is_zero().unwrap());
        let a = ModuleAnalysis::new(&m).unwrap();
        let rep = a.report().unwrap();
        prop_assert!(a.verdict().unwrap().agree);
        prop_assert_eq!(rep.depth + rep.pd, 3);
        let res = free_resolution(&m, 4).unwrap();
        prop_assert!(res.is_complex() && res.has_no_unit_entries());
    }

    #[test]
    fn direct_sums_agree((n, a) in arb_monomial_ideal(), b in prop::collection::vec(arb_exponent(4, 2), 1..=3), shift in 0i64..=2) {
        let r = ring(n, 2);
        let b: Vec<Vec<u32>> = b.into_iter().map(|v| v[..n].to_vec()).filter(|v| v.iter().any(|&e| e > 0)).collect();
        prop_assume!(!b.is_empty());
        let m1 = quotient(&monomial_ideal(&r, &a));
        let m2 = quotient(&monomial_ideal(&r, &b)).shift(shift);
        let sum = m1.direct_sum(&m2).unwrap();
        let x = ModuleAnalysis::new(&m1).unwrap();
        let y = ModuleAnalysis::new(&m2).unwrap();
        let s = ModuleAnalysis::new(&sum).unwrap();
        prop_assert!(s.verdict().unwrap().agree);
        prop_assert_eq!(s.depth(), x.depth().min(y.depth()));
        prop_assert_eq!(s.dimension(), x.dimension().max(y.dimension()));
        prop_assert_eq!(s.omega(), x.omega().min(y.omega()));
    }
}

#[test]
fn koszul_betti_numbers_are_binomial() {
    for n in 1..=4 {
        let r = ring(n, 2);
        let vars: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&r, i)).collect();
        let m = PresentedModule::cyclic(&r, &vars).unwrap();
        let res = free_resolution(&m, n + 1).unwrap();
        let binom: Vec<usize> = (0..=n)
            .map(|i| (0..i).fold(1, |acc, k| acc * (n - k) / (k + 1)))
            .collect();
        assert_eq!(res.ranks(), binom);
        for (i, &b) in binom.iter().enumerate() {
            assert_eq!(res.betti().get(i, i as i64), b);
        }
    }
}

#[test]
fn rank_two_presentations_agree() {
    let r = ring(3, 2);
    let [x, y, z] = [0, 1, 2].map(|i| Polynomial::var(&r, i));
    let f = FreeModule::new(&r, vec![0, 1]);
    let cases: Vec<Vec<Vector>> = vec![
        vec![
            f.from_polys(&[y.clone(), Polynomial::zero(&r)]),
            f.from_polys(&[&x * &z, z.clone()]),
        ],
        vec![f.from_polys(&[&x * &y, x.clone()])],
        vec![
            f.from_polys(&[&x * &x, y.clone()]),
            f.from_polys(&[&z * &z, Polynomial::zero(&r)]),
        ],
    ];
    for rels in cases {
        let m = PresentedModule::new(&r, vec![0, 1], rels).unwrap();
        let a = ModuleAnalysis::new(&m).unwrap();
        let v = a.verdict().unwrap();
        assert!(v.agree, "{v:?}");
        let rep = a.report().unwrap();
        assert_eq!(rep.depth + rep.pd, 3);
        let _ = Submodule::zero(&f);
    }
}

#[test]
fn buchberger_output_is_its_own_basis() {
    let r = ring(3, 3);
    let [x, y, z] = [0, 1, 2].map(|i| Polynomial::var(&r, i));
    let gens = [&(&x * &y) + &(&z * &z),
        &(&x * &x) - &(&y * &z),
        &(&y * &y) + &(&x * &z)];
    let f = FreeModule::new(&r, vec![0]);
    let vecs: Vec<Vector> = gens.iter().map(|g| f.from_polys(std::slice::from_ref(g))).collect();
    let gb = groebner(&f, &vecs).unwrap();
    let again = groebner(&f, &gb.elements).unwrap();
    assert_eq!(again.elements, gb.elements);
    for v in &vecs {
        assert!(reduce(&f, v, &gb.elements).is_zero());
    }
}
