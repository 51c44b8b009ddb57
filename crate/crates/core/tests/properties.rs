//! Randomized invariants of the exact core, bouquets, bases, constructors and hypergraphs.

use std::collections::BTreeSet;

use bouquet_core::bases::{check_stable_transport, connects_fiber, LegStatus, Toric};
use bouquet_core::bouquets::{check_unimodular_correspondence, compute_bouquets_with_basis};
use bouquet_core::constructors::{hypergraph_encoding, lawrence_decomposition};
use bouquet_core::exact::{enumerate_bounded_kernel, is_unimodular, kernel_lattice_basis};
use bouquet_core::{
    check_bouquet_with_basis, classify_lawrence, compute_bouquets, encode01_stable,
    generalized_lawrence, graver_basis, imbalance_vector, is_stable, second_lawrence,
    subbouquet_decomposition, walk_from_vector, BouquetKind, Encoding01Spec, Hypergraph, IntMatrix,
    LawrenceSpec, SignedVector, Verdict,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn rows_strategy(
    max_rows: usize,
    max_cols: usize,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 2..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(lo..=hi, c), r))
}

fn kernel_dim(a: &IntMatrix) -> usize {
    a.cols() - a.rank()
}

fn as_set(vs: &[SignedVector]) -> BTreeSet<SignedVector> {
    vs.iter().map(SignedVector::canonical).collect()
}

fn max_norm(vs: &[SignedVector]) -> u64 {
    vs.iter()
        .map(SignedVector::max_norm)
        .max()
        .and_then(|x| u64::try_from(x).ok())
        .unwrap_or(0)
}

fn conformally_below(v: &SignedVector, u: &SignedVector) -> bool {
    v.coords()
        .iter()
        .zip(u.coords())
        .all(|(a, b)| a.is_zero() || (a.signum() == b.signum() && a.abs() <= b.abs()))
}

/// Conformally minimal vectors among the bounded kernel enumeration.
fn graver_oracle(a: &IntMatrix, bound: u64) -> BTreeSet<SignedVector> {
    let k = enumerate_bounded_kernel(a, bound).unwrap();
    let signed: Vec<SignedVector> = k.iter().flat_map(|u| [u.clone(), -u]).collect();
    k.iter()
        .filter(|u| !signed.iter().any(|w| w != *u && conformally_below(w, u)))
        .cloned()
        .collect()
}

/// Pairs `(a_i, c_i)` with at most 3 rows, 3 pairs and 3 columns per block.
fn spec_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1..=3usize, 1..=3usize).prop_flat_map(|(m, s)| {
        let c = prop::collection::vec(-3i64..=3, 1..=3).prop_filter("valid c", |c| {
            let v = SignedVector::from_i64s(c);
            v.has_full_support() && v.content().is_one() && c[0] > 0
        });
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, m), s),
            prop::collection::vec(c, s),
        )
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn bounded_kernel_vectors_are_saturated_lattice_points(rows in rows_strategy(4, 6, -3, 3)) {
        let a = matrix(&rows);
        prop_assume!(kernel_dim(&a) <= 3);
        let basis = kernel_lattice_basis(&a);
        prop_assert_eq!(&basis, &kernel_lattice_basis(&a.clone()));
        for u in enumerate_bounded_kernel(&a, 2).unwrap() {
            prop_assert!(a.annihilates(u.coords()));
            let coeffs = basis.coordinates_of(u.coords());
            prop_assert!(coeffs.is_some(), "{} outside the lattice basis span", u);
        }
    }

    #[test]
    fn unimodularity_ignores_column_permutation_and_negation(
        rows in rows_strategy(3, 5, -2, 2),
        seed in any::<u64>(),
    ) {
        let a = matrix(&rows);
        let n = a.cols();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left((seed % n as u64) as usize);
        let mut b = a.select_columns(&order).unwrap();
        for j in 0..n {
            if (seed >> j) & 1 == 1 {
                for i in 0..b.rows() {
                    let x = -b.get(i, j).clone();
                    b.set(i, j, x);
                }
            }
        }
        prop_assert_eq!(is_unimodular(&a).unwrap(), is_unimodular(&b).unwrap());
    }

    #[test]
    fn bouquets_do_not_depend_on_the_kernel_basis(
        rows in rows_strategy(3, 6, -3, 3),
        mix in prop::collection::vec(-2i64..=2, 9),
    ) {
        let a = matrix(&rows);
        let basis = kernel_lattice_basis(&a).basis_vectors;
        prop_assume!((2..=3).contains(&basis.len()));
        // Elementary operations g_0 += k g_1, g_1 += l g_2, g_2 += k' g_0 are unimodular.
        let mut changed = basis.clone();
        let d = changed.len();
        for (t, k) in mix.iter().enumerate().take(3) {
            let (i, j) = (t % d, (t + 1) % d);
            let add = changed[j].scaled(&BigInt::from(*k));
            changed[i] = &changed[i] + &add;
        }
        changed.swap(0, 1);
        let original = compute_bouquets(&a);
        let other = compute_bouquets_with_basis(&a, &changed);
        prop_assert_eq!(original, other);
    }

    #[test]
    fn mixed_exactly_when_c_has_both_signs(rows in rows_strategy(4, 6, -3, 3)) {
        let a = matrix(&rows);
        let dec = compute_bouquets(&a);
        for b in &dec.bouquets {
            let pos = b.c.coords().iter().any(Signed::is_positive);
            let neg = b.c.coords().iter().any(Signed::is_negative);
            prop_assert_eq!(b.kind == BouquetKind::Mixed, pos && neg);
            prop_assert_eq!(&b.a, &a.mul_vec(b.c.coords()));
        }
        prop_assert_eq!(subbouquet_decomposition(&a, &dec.parts()).unwrap(), dec);
    }

    #[test]
    fn lifting_is_a_bijection_on_bounded_kernels(rows in rows_strategy(4, 6, -3, 3)) {
        let a = matrix(&rows);
        prop_assume!((1..=3).contains(&kernel_dim(&a)));
        let dec = compute_bouquets(&a);
        let k = 2u64;
        let target: BTreeSet<SignedVector> = enumerate_bounded_kernel(&a, k).unwrap().into_iter().collect();
        let mut image = BTreeSet::new();
        for u in enumerate_bounded_kernel(&dec.bouquet_matrix, k).unwrap() {
            let l = dec.lift(&u).unwrap();
            prop_assert!(a.annihilates(l.coords()));
            if l.max_norm() <= BigInt::from(k) {
                image.insert(l.canonical());
            }
        }
        prop_assert_eq!(&image, &target);
        for v in &target {
            prop_assert_eq!(&dec.lift(&dec.unlift(v).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn stable_lifts_split_signs(rows in rows_strategy(4, 6, -3, 3), u in prop::collection::vec(-4i64..=4, 6)) {
        let a = matrix(&rows);
        prop_assume!(is_stable(&a));
        let dec = compute_bouquets(&a);
        let u = SignedVector::from_i64s(&u[..dec.len()]);
        let l = dec.lift(&u).unwrap();
        prop_assert_eq!(l.positive_part(), dec.lift(&SignedVector::new(u.positive_part())).unwrap().into_coords());
        prop_assert_eq!(l.negative_part(), dec.lift(&SignedVector::new(u.negative_part())).unwrap().into_coords());
    }

    #[test]
    fn unimodular_equivalence(rows in rows_strategy(3, 6, -2, 2)) {
        let a = matrix(&rows);
        prop_assert!(check_unimodular_correspondence(&a).unwrap().equivalence_holds);
    }

    #[test]
    fn generalized_lawrence_round_trip((a_list, c_list) in spec_strategy()) {
        let spec = LawrenceSpec::new(
            a_list.iter().map(|a| SignedVector::from_i64s(a)).collect(),
            c_list.iter().map(|c| SignedVector::from_i64s(c)).collect(),
        )
        .unwrap();
        let g = generalized_lawrence(&spec).unwrap();
        let dec = lawrence_decomposition(&spec, &g).unwrap();
        prop_assert_eq!(dec.parts(), spec.parts());
        let m = spec.ambient_rows();
        for (k, b) in dec.bouquets.iter().enumerate() {
            prop_assert_eq!(&b.a[..m], spec.a_list[k].coords());
            prop_assert!(b.a[m..].iter().all(Zero::is_zero));
            let c: Vec<BigInt> = b.column_indices.iter().map(|&i| b.c.coords()[i].clone()).collect();
            prop_assert_eq!(c.as_slice(), spec.c_list[k].coords());
        }
    }

    #[test]
    fn sigma_blocks_have_trivial_kernel(k in 1i64..=6) {
        let s = encode01_stable(&matrix(&[vec![k]])).unwrap();
        let n = (k + 1) as usize;
        prop_assert_eq!((s.rows(), s.cols()), (n, n));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(s.get(i, j).is_zero(), i == j);
            }
        }
        prop_assert_eq!(s.rank(), n);
    }

    #[test]
    fn walks_realize_the_imbalance(
        edges in prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=3), 1..=6),
        coeffs in prop::collection::vec(-3i64..=3, 6),
    ) {
        let edges: Vec<Vec<usize>> = edges.into_iter().map(|e| e.into_iter().collect()).collect();
        let h = Hypergraph::new(6, edges).unwrap();
        let u = SignedVector::from_i64s(&coeffs[..h.edge_count()]);
        let (walk, balanced) = walk_from_vector(&h, &u).unwrap();
        let inc = h.incidence_matrix();
        prop_assert_eq!(imbalance_vector(&h, &walk), inc.mul_vec(u.coords()));
        prop_assert_eq!(balanced, inc.annihilates(u.coords()));
        prop_assert_eq!(walk.to_vector(h.edge_count()).unwrap(), u);
    }

    #[test]
    fn bouquets_with_basis_are_free_or_mixed_subbouquets(
        edges in prop::collection::vec(prop::collection::btree_set(0usize..7, 2..=3), 2..=7),
        basis in prop::collection::btree_set(0usize..7, 1..=4),
    ) {
        let edges: Vec<Vec<usize>> = edges.into_iter().map(|e| e.into_iter().collect()).collect();
        let h = Hypergraph::new(7, edges).unwrap();
        let u: Vec<usize> = basis.into_iter().collect();
        let Some(b) = check_bouquet_with_basis(&h, &u) else { return Ok(()) };
        let inc = h.incidence_matrix();
        let n = h.edge_count();
        let mut parts = vec![b.edges.clone()];
        parts.extend((0..n).filter(|e| !b.edges.contains(e)).map(|e| vec![e]));
        parts.sort();
        let dec = subbouquet_decomposition(&inc, &parts);
        prop_assert!(dec.is_ok(), "E_U = {:?} is not a subbouquet", b.edges);
        let dec = dec.unwrap();
        let part = dec.bouquets.iter().find(|x| x.column_indices == b.edges).unwrap();
        prop_assert!(matches!(part.kind, BouquetKind::Free | BouquetKind::Mixed));
        let full = compute_bouquets(&inc);
        prop_assert!(full.bouquets.iter().any(|x| b.edges.iter().all(|e| x.column_indices.contains(e))));
        if part.kind == BouquetKind::Mixed {
            prop_assert_eq!(&part.c, &b.full_c(n));
            prop_assert_eq!(&part.a, &b.a);
        }
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn graver_matches_the_bounded_oracle_and_closes_conformally(rows in rows_strategy(4, 6, -3, 3)) {
        let a = matrix(&rows);
        prop_assume!((1..=3).contains(&kernel_dim(&a)));
        let gr = graver_basis(&a).unwrap();
        let k = max_norm(&gr);
        prop_assume!(k <= 6);
        prop_assert_eq!(graver_oracle(&a, k), as_set(&gr));
        prop_assert_eq!(graver_oracle(&a, k + 1), as_set(&gr));
        // Greedy conformal subtraction of Graver elements empties every bounded kernel vector.
        let signed: Vec<SignedVector> = gr.iter().flat_map(|g| [g.clone(), -g]).collect();
        for v in enumerate_bounded_kernel(&a, 2).unwrap() {
            let mut rest = v.clone();
            while !rest.is_zero() {
                let g = signed.iter().find(|g| conformally_below(g, &rest));
                prop_assert!(g.is_some(), "{} has no conformal Graver summand", rest);
                rest = &rest - g.unwrap();
            }
        }
    }

    #[test]
    fn graver_and_circuits_transport(rows in rows_strategy(4, 6, -3, 3)) {
        let a = matrix(&rows);
        prop_assume!((1..=3).contains(&kernel_dim(&a)));
        prop_assume!(max_norm(&graver_basis(&a).unwrap()) <= 12);
        let report = check_stable_transport(&compute_bouquets(&a)).unwrap();
        prop_assert!(report.ok(), "{:?}", report);
        for name in ["graver", "circuits"] {
            prop_assert_eq!(&report.leg(name).unwrap().status, &LegStatus::Verified);
        }
    }

    #[test]
    fn markov_bases_sit_between_indispensables_and_graver(rows in rows_strategy(3, 5, 0, 3)) {
        let a = matrix(&rows);
        prop_assume!(a.zero_columns().is_empty() && (1..=2).contains(&kernel_dim(&a)));
        let t = Toric::new(&a);
        prop_assume!(t.is_positively_graded());
        prop_assume!(max_norm(t.graver().unwrap()) <= 8);
        let gr = as_set(t.graver().unwrap());
        let ind = as_set(t.indispensables().unwrap());
        let mk = t.minimal_markov_basis().unwrap().elements;
        let mk_set = as_set(&mk);
        prop_assert!(ind.is_subset(&mk_set));
        prop_assert!(mk_set.is_subset(&gr));
        for (k, m) in mk.iter().enumerate() {
            let fiber = t.fiber(&m.positive_part(), None).unwrap();
            prop_assert!(fiber.complete);
            let others: Vec<SignedVector> =
                mk.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect();
            prop_assert!(connects_fiber(&fiber.elements, &mk));
            prop_assert!(!connects_fiber(&fiber.elements, &others), "{} is redundant", m);
        }
    }

    #[test]
    fn stable_indispensables_transport_elementwise(rows in rows_strategy(3, 5, 0, 3)) {
        let a = matrix(&rows);
        prop_assume!(a.zero_columns().is_empty() && (1..=2).contains(&kernel_dim(&a)) && is_stable(&a));
        let dec = compute_bouquets(&a);
        let (ta, tb) = (Toric::new(&a), Toric::new(&dec.bouquet_matrix));
        prop_assume!(max_norm(tb.graver().unwrap()) <= 8);
        let ind_a = as_set(ta.indispensables().unwrap());
        let ind_b = as_set(tb.indispensables().unwrap());
        for u in tb.graver().unwrap() {
            let lifted = dec.lift(u).unwrap().canonical();
            prop_assert_eq!(ind_b.contains(&u.canonical()), ind_a.contains(&lifted));
        }
    }

    #[test]
    fn lawrence_conditions_agree(rows in rows_strategy(3, 5, -2, 2)) {
        let a = matrix(&rows);
        prop_assume!((1..=2).contains(&kernel_dim(&a)));
        prop_assume!(max_norm(&graver_basis(&a).unwrap()) <= 8);
        let rep = classify_lawrence(&a).unwrap();
        if rep.conclusive {
            prop_assert!(rep.consistent, "({}, {}, {})", rep.cond_a, rep.cond_b, rep.cond_c);
        }
        let all_mixed = rep.decomposition.bouquets.iter().all(|b| b.kind != BouquetKind::NonMixed);
        if all_mixed && rep.cond_b.is_conclusive() {
            prop_assert_eq!(rep.cond_b, Verdict::True);
        }
    }

    #[test]
    fn second_lawrence_liftings_are_lawrence(rows in rows_strategy(2, 3, -2, 2)) {
        let d = matrix(&rows);
        prop_assume!(kernel_dim(&d) >= 1);
        let rep = classify_lawrence(&second_lawrence(&d)).unwrap();
        prop_assert_eq!((rep.cond_a, rep.cond_b, rep.cond_c), (Verdict::True, Verdict::True, Verdict::True));
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn sunflower_encoding_realizes_the_matrix(rows in rows_strategy(2, 4, -2, 2)) {
        let a = matrix(&rows);
        prop_assume!(a.zero_rows().is_empty() && a.zero_columns().is_empty() && kernel_dim(&a) >= 1);
        let gr_a = graver_basis(&a).unwrap();
        prop_assume!(max_norm(&gr_a) <= 6);
        let enc = hypergraph_encoding(&a).unwrap();
        let inc = enc.hypergraph.incidence_matrix();
        let dec = enc.decomposition().unwrap();
        for (j, b) in dec.bouquets.iter().enumerate() {
            prop_assert_eq!(b.a[..a.rows()].to_vec(), a.column(j));
            prop_assert!(b.a[a.rows()..].iter().all(Zero::is_zero));
            let basis = check_bouquet_with_basis(&enc.hypergraph, &enc.bases[j]);
            prop_assert!(basis.is_some());
        }
        let gr_h = as_set(&graver_basis(&inc).unwrap());
        let lifted: BTreeSet<SignedVector> = gr_a.iter().map(|u| dec.lift(u).unwrap().canonical()).collect();
        prop_assert_eq!(&gr_h, &lifted);
        for u in &gr_a {
            prop_assert!(u.binomial_degree() <= dec.lift(u).unwrap().binomial_degree());
        }
        let rep = classify_lawrence(&inc).unwrap();
        prop_assert_eq!(rep.cond_b, Verdict::True);
    }

    #[test]
    fn zero_one_encoding_transports_the_toric_data(rows in rows_strategy(3, 3, 0, 3)) {
        let d = matrix(&rows);
        prop_assume!(d.zero_columns().is_empty() && kernel_dim(&d) >= 1);
        let td = Toric::new(&d);
        prop_assume!(td.is_positively_graded());
        let spec = Encoding01Spec::new(&d).unwrap();
        let enc = spec.matrix();
        prop_assert!(enc.entries().iter().all(|x| x.is_zero() || x.is_one()));
        prop_assert_eq!((enc.rows(), enc.cols()), (spec.delta + spec.l, spec.delta));
        prop_assert_eq!(is_stable(&enc), is_stable(&d));
        let dec = subbouquet_decomposition(&enc, &spec.parts()).unwrap();
        prop_assert!(dec.bouquets.iter().all(|b| b.kind != BouquetKind::Mixed));
        prop_assert_eq!(
            enumerate_bounded_kernel(&dec.bouquet_matrix, 4).unwrap(),
            enumerate_bounded_kernel(&d, 4).unwrap()
        );
        let te = Toric::new(&enc);
        prop_assert_eq!(te.graver().unwrap().len(), td.graver().unwrap().len());
        prop_assert_eq!(te.circuits().unwrap().len(), td.circuits().unwrap().len());
        prop_assert_eq!(te.indispensables().unwrap().len(), td.indispensables().unwrap().len());
        prop_assert_eq!(
            te.minimal_markov_basis().unwrap().elements.len(),
            td.minimal_markov_basis().unwrap().elements.len()
        );
    }

    #[test]
    fn two_regular_basis_gives_lawrence_ideal(
        incidences in prop::collection::vec((0usize..5, 0usize..5), 1..=4),
        extra in prop::collection::vec(prop::collection::btree_set(0usize..3, 0..=2), 5),
        edge_count in 2usize..=5,
    ) {
        // Vertices 0..k form U, each lying on exactly two distinct edges; vertices k..k+3 are free.
        let k = incidences.len();
        let mut edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); edge_count];
        for (x, &(p, q)) in incidences.iter().enumerate() {
            let (p, q) = (p % edge_count, q % edge_count);
            prop_assume!(p != q);
            edges[p].insert(x);
            edges[q].insert(x);
        }
        prop_assume!(edges.iter().all(|e| !e.is_empty()));
        for (e, more) in edges.iter_mut().zip(&extra) {
            e.extend(more.iter().map(|y| y + k));
        }
        let h = Hypergraph::new(k + 3, edges.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap();
        let rep = classify_lawrence(&h.incidence_matrix()).unwrap();
        prop_assert_eq!(rep.cond_b, Verdict::True);
    }
}
