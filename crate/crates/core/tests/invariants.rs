//! Randomized structural invariants.
//!
//! The linear-algebra cases are generated with planted structure: complexes
//! are direct sums of elementary pieces (an isolated line or an identity
//! pair bridging two levels) conjugated by random invertible base changes,
//! so homology dimensions are known in advance and every assertion is an
//! exact oracle comparison, not a consistency tautology.

use gradedlc_core::cech::{zdegree_status, BoxBounds, MonomialIdeal, ZdegreeStatus};
use gradedlc_core::checks::{
    check_rigidity, check_tameness, squarefree_ideals, DegreePattern, DegreeStatus, Verdict,
};
use gradedlc_core::linalg::{induced_map, FiniteComplex, RatMatrix};
use gradedlc_core::rat::{rat, rat_int, Rat};
use gradedlc_core::weyl::{apply, euler, GradedDegree, MonomialWindow, WeylElement};
use gradedlc_core::window::{
    check_generalized_eulerian, check_generalized_eulerian_offset, DegreeNilpotency,
};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(rows in 1usize..=5, cols in 1usize..=5, seed in prop::collection::vec(small_rat(), 25)) {
        let mut m = RatMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, seed[r * 5 + c].clone());
            }
        }
        prop_assert_eq!(m.kernel_basis().cols() + m.rank(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

/// A complex with known homology, plus two chain maps from it to itself.
#[derive(Clone, Debug)]
struct Planted {
    complex: FiniteComplex,
    homology_dims: Vec<usize>,
    f: Vec<RatMatrix>,
    g: Vec<RatMatrix>,
}

fn dims_of(singles: &[usize], pairs: &[usize]) -> Vec<usize> {
    let levels = singles.len();
    (0..levels)
        .map(|j| {
            let ending = if j > 0 { pairs[j - 1] } else { 0 };
            let starting = if j < levels - 1 { pairs[j] } else { 0 };
            singles[j] + ending + starting
        })
        .collect()
}

/// Unit lower times unit upper triangular: invertible by construction.
fn base_change(dim: usize, pool: &mut impl Iterator<Item = i64>) -> RatMatrix {
    let mut lower = RatMatrix::identity(dim);
    let mut upper = RatMatrix::identity(dim);
    for r in 0..dim {
        for c in 0..r {
            lower.set(r, c, rat_int(pool.next().unwrap()));
            upper.set(c, r, rat_int(pool.next().unwrap()));
        }
    }
    lower.mul(&upper)
}

fn build_planted(singles: &[usize], pairs: &[usize], pool: &[i64], scalars: &[Rat]) -> Planted {
    let levels = singles.len();
    let dims = dims_of(singles, pairs);
    let mut pool = pool.iter().copied().cycle();
    let mut scalars = scalars.iter().cloned().cycle();

    let changes: Vec<RatMatrix> = dims.iter().map(|&d| base_change(d, &mut pool)).collect();
    let inverses: Vec<RatMatrix> = changes
        .iter()
        .map(|s| s.inverse().expect("triangular product is invertible"))
        .collect();

    // Basis order at level j: singles, then pair ends from below, then pair
    // starts toward level j+1. The planted differential is the identity on
    // the start/end blocks.
    let mut diffs = Vec::new();
    for j in 0..levels - 1 {
        let mut d = RatMatrix::zeros(dims[j + 1], dims[j]);
        let src_offset = singles[j] + if j > 0 { pairs[j - 1] } else { 0 };
        for t in 0..pairs[j] {
            d.set(singles[j + 1] + t, src_offset + t, rat_int(1));
        }
        diffs.push(changes[j + 1].mul(&d).mul(&inverses[j]));
    }
    let complex = FiniteComplex::new(dims.clone(), diffs).expect("planted differentials compose to zero");

    // Chain self-maps: one scalar per elementary summand, so each commutes
    // with the planted differential blockwise.
    let mut maps = || -> Vec<RatMatrix> {
        let mut per_pair: Vec<Vec<Rat>> = pairs
            .iter()
            .map(|&p| (0..p).map(|_| scalars.next().unwrap()).collect())
            .collect();
        per_pair.push(Vec::new());
        let mut out = Vec::new();
        for j in 0..levels {
            let mut f = RatMatrix::zeros(dims[j], dims[j]);
            let mut pos = 0;
            for _ in 0..singles[j] {
                f.set(pos, pos, scalars.next().unwrap());
                pos += 1;
            }
            if j > 0 {
                for s in &per_pair[j - 1] {
                    f.set(pos, pos, s.clone());
                    pos += 1;
                }
            }
            if j < levels - 1 {
                for s in &per_pair[j] {
                    f.set(pos, pos, s.clone());
                    pos += 1;
                }
            }
            out.push(changes[j].mul(&f).mul(&inverses[j]));
        }
        out
    };
    let f = maps();
    let g = maps();

    Planted { complex, homology_dims: singles.to_vec(), f, g }
}

fn planted() -> impl Strategy<Value = Planted> {
    (2usize..=4)
        .prop_flat_map(|levels| {
            (
                prop::collection::vec(0usize..=2, levels),
                prop::collection::vec(0usize..=2, levels - 1),
            )
        })
        .prop_flat_map(|(singles, pairs)| {
            let pool: usize = dims_of(&singles, &pairs).iter().map(|d| d * d * 2).sum();
            let nscalars = 2 * (singles.iter().sum::<usize>() + pairs.iter().sum::<usize>());
            (
                Just(singles),
                Just(pairs),
                prop::collection::vec(-3i64..=3, pool.max(1)),
                prop::collection::vec(small_rat(), nscalars.max(1)),
            )
        })
        .prop_map(|(singles, pairs, pool, scalars)| build_planted(&singles, &pairs, &pool, &scalars))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homology_recovers_planted_dimensions(p in planted()) {
        for (j, &expected) in p.homology_dims.iter().enumerate() {
            prop_assert_eq!(p.complex.homology(j).dim, expected);
        }
    }

    #[test]
    fn euler_characteristic_is_alternating_homology_sum(p in planted()) {
        let from_homology: i64 = (0..p.complex.len())
            .map(|j| (1 - 2 * (j as i64 % 2)) * p.complex.homology(j).dim as i64)
            .sum();
        prop_assert_eq!(p.complex.euler_characteristic(), from_homology);
    }

    #[test]
    fn induced_map_of_composite_is_product(p in planted()) {
        let composite: Vec<RatMatrix> =
            p.g.iter().zip(&p.f).map(|(g, f)| g.mul(f)).collect();
        for j in 0..p.complex.len() {
            let one = induced_map(&p.complex, &p.complex, &p.f, j).unwrap();
            let two = induced_map(&p.complex, &p.complex, &p.g, j).unwrap();
            let both = induced_map(&p.complex, &p.complex, &composite, j).unwrap();
            prop_assert_eq!(both, two.mul(&one));
        }
    }
}

fn monomial(m: usize, alpha: &[u32], beta: &[u32], c: &Rat) -> WeylElement {
    let mut e = WeylElement::scalar(m, c.clone());
    for (i, &a) in alpha.iter().enumerate() {
        e = e.multiply(&WeylElement::xgen(m, i + 1).unwrap().pow(a).unwrap()).unwrap();
    }
    for (i, &b) in beta.iter().enumerate() {
        e = e.multiply(&WeylElement::dgen(m, i + 1).unwrap().pow(b).unwrap()).unwrap();
    }
    e
}

fn exponents(m: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=2, m).prop_filter("total exponent kept small", |v| {
        v.iter().sum::<u32>() <= 3
    })
}

fn weyl_element(m: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((exponents(m), exponents(m), small_rat()), 1..=3).prop_map(
        move |terms| {
            let mut e = WeylElement::zero(m);
            for (alpha, beta, c) in &terms {
                e = e.add(&monomial(m, alpha, beta, c)).unwrap();
            }
            e
        },
    )
}

/// Every term has x-degree minus d-degree equal to `t`.
fn homogeneous_element(m: usize, t: i64) -> impl Strategy<Value = Vec<(Vec<u32>, Vec<u32>, Rat)>> {
    prop::collection::vec((exponents(m), 0..m, small_rat()), 1..=3).prop_map(move |parts| {
        parts
            .into_iter()
            .map(|(shared, axis, c)| {
                let mut alpha = shared.clone();
                let mut beta = shared;
                if t >= 0 {
                    alpha[axis] += t as u32;
                } else {
                    beta[axis] += (-t) as u32;
                }
                (alpha, beta, c)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn weyl_associativity_m1(a in weyl_element(1), b in weyl_element(1), c in weyl_element(1)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weyl_associativity_m2(a in weyl_element(2), b in weyl_element(2), c in weyl_element(2)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fourier_is_an_automorphism(a in weyl_element(2), b in weyl_element(2)) {
        let lhs = a.multiply(&b).unwrap().fourier();
        let rhs = a.fourier().multiply(&b.fourier()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.fourier().fourier_inverse(), a.clone());
        prop_assert_eq!(a.fourier_inverse().fourier(), a);
    }

    #[test]
    fn degree_of_product_adds(
        s in -2i64..=2,
        t in -2i64..=2,
        a_parts in homogeneous_element(2, 0),
        b_parts in homogeneous_element(2, 0),
    ) {
        let shift = |parts: Vec<(Vec<u32>, Vec<u32>, Rat)>, t: i64| -> WeylElement {
            let mut e = WeylElement::zero(2);
            for (mut alpha, mut beta, c) in parts {
                if t >= 0 { alpha[0] += t as u32; } else { beta[0] += (-t) as u32; }
                e = e.add(&monomial(2, &alpha, &beta, &c)).unwrap();
            }
            e
        };
        let a = shift(a_parts, s);
        let b = shift(b_parts, t);
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(a.degree(), GradedDegree::Homogeneous(s));
        prop_assert_eq!(b.degree(), GradedDegree::Homogeneous(t));
        let ab = a.multiply(&b).unwrap();
        // The algebra has no zero divisors, so the product is nonzero and
        // homogeneous of the summed degree.
        prop_assert!(!ab.is_zero());
        prop_assert_eq!(ab.degree(), GradedDegree::Homogeneous(s + t));
    }

    #[test]
    fn apply_intertwines_multiply(
        a in weyl_element(2),
        b in weyl_element(2),
        coeffs in prop::collection::vec(small_rat(), 49),
    ) {
        let window = MonomialWindow::cube(2, 3);
        prop_assert_eq!(window.len(), 49);
        let ab = a.multiply(&b).unwrap();
        let staged = apply(&b, &window, &coeffs).and_then(|mid| apply(&a, &window, &mid));
        let direct = apply(&ab, &window, &coeffs);
        if let (Ok(direct), Ok(staged)) = (direct, staged) {
            prop_assert_eq!(direct, staged);
        }
    }

    #[test]
    fn euler_element_is_fourier_antiinvariant(m in 1usize..=3) {
        let e = euler(m).unwrap();
        let expected = e.neg().sub(&WeylElement::scalar(m, rat_int(m as i64))).unwrap();
        prop_assert_eq!(e.fourier(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn eulerian_reports_commute_with_shifts(k in -3i64..=3) {
        let module = gradedlc_core::cech::top_lc_oracle(2, -7, -2).unwrap();
        let base = check_generalized_eulerian(&module);
        let shifted = module.shift(k);
        let moved = check_generalized_eulerian_offset(&shifted, k);
        prop_assert_eq!(moved.verdict, base.verdict);
        prop_assert_eq!(moved.max_index, base.max_index);
        prop_assert_eq!(moved.skipped, base.skipped);
        for (n, status) in &moved.per_degree {
            let original = base.nilpotency_at(n + k).expect("same window, reindexed");
            match (status, original) {
                (DegreeNilpotency::Nilpotent { index: i1 }, DegreeNilpotency::Nilpotent { index: i2 }) => {
                    prop_assert_eq!(i1, i2)
                }
                (DegreeNilpotency::Skipped { .. }, DegreeNilpotency::Skipped { .. }) => {}
                (DegreeNilpotency::NotNilpotent, DegreeNilpotency::NotNilpotent) => {}
                (a, b) => prop_assert!(false, "mismatch at {}: {:?} vs {:?}", n, a, b),
            }
        }
    }
}

fn arbitrary_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=3)
        .prop_flat_map(|m| {
            (
                Just(m),
                prop::collection::vec(prop::collection::vec(0u32..=2, m), 1..=3),
            )
        })
        .prop_filter_map("generators must be nonzero", |(m, gens)| {
            if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
                return None;
            }
            MonomialIdeal::new(m, gens).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn slice_euler_characteristic_matches_component_dims(
        ideal in arbitrary_ideal(),
        a_seed in prop::collection::vec(-3i64..=3, 3),
    ) {
        let a: Vec<i64> = a_seed[..ideal.m()].to_vec();
        let s = ideal.generator_count();
        let slice = gradedlc_core::cech::slice(&ideal, &a);
        let from_subsets: i64 = (0u32..(1 << s))
            .filter(|&mask| slice.is_present(mask))
            .map(|mask| 1 - 2 * (mask.count_ones() as i64 % 2))
            .sum();
        let from_homology: i64 = (0..=s)
            .map(|i| {
                let sign = 1 - 2 * (i as i64 % 2);
                sign * gradedlc_core::cech::component_dim(&ideal, i, &a).unwrap() as i64
            })
            .sum();
        prop_assert_eq!(from_subsets, from_homology);
    }

    #[test]
    fn enlarging_the_box_never_revokes_certificates(
        ideal in arbitrary_ideal(),
        index_seed in 0usize..=3,
        n in -6i64..=3,
    ) {
        let index = index_seed.min(ideal.generator_count());
        let small = BoxBounds::default_for(&ideal, -6, 3);
        let large = BoxBounds::new(small.per_axis().iter().map(|b| b + 3).collect()).unwrap();
        let before = zdegree_status(&ideal, index, n, &small).unwrap();
        let after = zdegree_status(&ideal, index, n, &large).unwrap();
        match (before, after) {
            (ZdegreeStatus::ZeroCertified, got) => {
                prop_assert_eq!(got, ZdegreeStatus::ZeroCertified)
            }
            (ZdegreeStatus::Nonzero { dim: d1, .. }, ZdegreeStatus::Nonzero { dim: d2, .. }) => {
                prop_assert!(d2 >= d1);
                if ideal.is_squarefree() {
                    prop_assert_eq!(d1, d2);
                }
            }
            (ZdegreeStatus::Nonzero { .. }, got) => {
                prop_assert!(false, "nonzero witness vanished under a larger box: {:?}", got)
            }
            (ZdegreeStatus::ZeroInBox, _) => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pattern_verdicts_stable_under_certified_window_growth(
        ideal_pick in 0usize..5,
        index in 0usize..=2,
        grow_left in 0i64..=2,
        grow_right in 0i64..=2,
    ) {
        let mut ideals = squarefree_ideals(1);
        ideals.extend(squarefree_ideals(2));
        let ideal = &ideals[ideal_pick];
        let index = index.min(ideal.generator_count());
        let (lo, hi) = (-5i64, 1i64);
        let (lo2, hi2) = (lo - grow_left, hi + grow_right);
        // One box for both scans so shared degrees get identical statuses.
        let bounds = BoxBounds::default_for(ideal, lo2, hi2);
        let inner = DegreePattern::from_scan(ideal, index, lo, hi, &bounds).unwrap();
        let outer = DegreePattern::from_scan(ideal, index, lo2, hi2, &bounds).unwrap();
        let added_certified = outer
            .degrees()
            .filter(|n| *n < lo || *n > hi)
            .all(|n| !matches!(outer.status(n), Some(DegreeStatus::Boundary)));

        for check in [check_tameness, check_rigidity] {
            let inner_v = check(&inner, ideal.m()).verdict;
            let outer_v = check(&outer, ideal.m()).verdict;
            if inner_v == Verdict::Fail {
                prop_assert_eq!(outer_v, Verdict::Fail);
            }
            if added_certified {
                prop_assert_eq!(inner_v, outer_v);
            }
        }
    }
}
