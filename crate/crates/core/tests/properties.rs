mod common;

use gdl_core::certify::degree_test;
use gdl_core::families::{quotient_family, random_invertible, restrict_family};
use gdl_core::orbits::{block_equality_check, orbit_decomposition, SemilinearMap};
use gdl_core::setdomains::{multilinear_degree, CubeFunction};
use gdl_core::*;
use proptest::prelude::*;

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[test]
fn field_axioms_exhaustive() {
    for q in ORDERS {
        let f = Field::of_order(q).unwrap();
        let els: Vec<Elem> = f.elements().collect();
        assert_eq!(els.len(), q as usize);
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            assert_eq!(f.pow(a, q as u64), a);
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn enumerate_bijection_on_j2_6_3() {
    let v = Space::of(2, 6).unwrap();
    let idx = SubspaceIndex::new(&v, 3).unwrap();
    assert_eq!(idx.len(), 1395);
    let mut seen = std::collections::HashSet::new();
    for i in 0..idx.len() {
        let s = idx.unrank(i);
        assert_eq!(s.dim(), 3);
        assert_eq!(v.canonicalize(&s.basis()), s);
        assert_eq!(idx.rank(&s), i);
        assert!(seen.insert(s));
    }
}

#[test]
fn complement_degree_closure() {
    for (name, f, d) in common::catalog_632() {
        assert!(degree_test(&f, d).unwrap().certified(), "{name}");
        assert!(degree_test(&f.complement(), d).unwrap().certified(), "complement of {name}");
    }
}

fn space_strategy() -> impl Strategy<Value = Space> {
    (prop::sample::select(vec![2u32, 3, 4, 5]), 2usize..=7).prop_map(|(q, n)| Space::of(q, n).unwrap())
}

fn rows_in(space: &Space, max_rows: usize) -> impl Strategy<Value = Vec<Vec<Elem>>> {
    let q = space.q() as Elem;
    let n = space.n();
    prop::collection::vec(prop::collection::vec(0..q, n), 0..=max_rows)
}

fn space_and_rows(count: usize) -> impl Strategy<Value = (Space, Vec<Vec<Vec<Elem>>>)> {
    space_strategy().prop_flat_map(move |v| {
        let n = v.n();
        let rows = prop::collection::vec(rows_in(&v, n), count);
        (Just(v), rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn meet_join_dimension_identity((v, rows) in space_and_rows(2)) {
        let s = v.canonicalize(&rows[0]);
        let t = v.canonicalize(&rows[1]);
        let meet = v.meet(&s, &t);
        let join = v.join(&s, &t);
        prop_assert_eq!(meet.dim() + join.dim(), s.dim() + t.dim());
        prop_assert!(v.contains(&s, &meet) && v.contains(&t, &meet));
        prop_assert!(v.contains(&join, &s) && v.contains(&join, &t));
        prop_assert_eq!(v.meet_dim(&s, &t), meet.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonicalization_idempotent((v, rows) in space_and_rows(1), c in 1u8..=255, i in 0usize..8, j in 0usize..8) {
        let s = v.canonicalize(&rows[0]);
        prop_assert_eq!(v.canonicalize(&s.basis()), s.clone());
        // row operations do not change the canonical form
        let mut r = rows[0].clone();
        if r.len() >= 2 {
            let (i, j) = (i % r.len(), j % r.len());
            let f = v.field();
            let c = (c as usize % (v.q() - 1) + 1) as Elem;
            if i != j {
                let src = r[j].clone();
                for (a, b) in r[i].iter_mut().zip(&src) {
                    *a = f.add(*a, f.mul(c, *b));
                }
            }
            r[j] = r[j].iter().map(|&x| f.mul(c, x)).collect();
            r.swap(0, i);
        }
        prop_assert_eq!(v.canonicalize(&r), s);
    }

    #[test]
    fn dual_is_an_inclusion_reversing_involution((v, rows) in space_and_rows(2)) {
        let s = v.canonicalize(&rows[0]);
        let t = v.join(&s, &v.canonicalize(&rows[1]));
        prop_assert_eq!(v.dual(&v.dual(&s)), s.clone());
        prop_assert_eq!(v.dual(&s).dim(), v.n() - s.dim());
        prop_assert!(v.contains(&v.dual(&s), &v.dual(&t)));
    }

    #[test]
    fn quotient_preserves_incidence((v, rows) in space_and_rows(2), pick in any::<prop::sample::Index>()) {
        let t0 = v.canonicalize(&rows[0]);
        prop_assume!(t0.dim() >= 1);
        let p = v.point(t0.row(pick.index(t0.dim())));
        let t = t0;
        let s = v.join(&t, &v.canonicalize(&rows[1]));
        let tq = v.quotient_space(&t, &p).unwrap();
        let sq = v.quotient_space(&s, &p).unwrap();
        prop_assert_eq!(tq.dim() + 1, t.dim());
        prop_assert_eq!(sq.dim() + 1, s.dim());
        prop_assert!(v.with_dim(v.n() - 1).unwrap().contains(&sq, &tq));
    }

    #[test]
    fn rank_unrank_round_trip(q in prop::sample::select(vec![2u32, 3, 4]), n in 1usize..=6, k in 0usize..=6, i in any::<prop::sample::Index>()) {
        prop_assume!(k <= n);
        let v = Space::of(q, n).unwrap();
        let idx = SubspaceIndex::new(&v, k).unwrap();
        let j = i.index(idx.len());
        let s = idx.unrank(j);
        prop_assert_eq!(s.dim(), k);
        prop_assert_eq!(idx.rank(&s), j);
    }

    #[test]
    fn multilinear_degree_complement_invariant(m in 1usize..=6, bits in any::<u64>()) {
        let mask = if m == 6 { u64::MAX } else { (1u64 << (1 << m)) - 1 };
        let f = CubeFunction::from_bits(m, bits & mask).unwrap();
        prop_assert_eq!(multilinear_degree(&f), multilinear_degree(&f.complement()));
    }

    #[test]
    fn semilinear_action((v, rows) in space_and_rows(1), seed in any::<u64>(), f1 in 0u32..2, f2 in 0u32..2) {
        let e = v.field().e();
        let a = SemilinearMap::new(&v, random_invertible(&v, seed), f1 % e).unwrap();
        let b = SemilinearMap::new(&v, random_invertible(&v, seed ^ 0x9e37), f2 % e).unwrap();
        let s = v.canonicalize(&rows[0]);
        let ab = a.then(&v, &b);
        prop_assert_eq!(a.apply(&v, &s).dim(), s.dim());
        prop_assert_eq!(ab.apply(&v, &s), b.apply(&v, &a.apply(&v, &s)));
        prop_assert_eq!(a.invert(&v).apply(&v, &a.apply(&v, &s)), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn orbits_partition_and_block_inequality(
        q in prop::sample::select(vec![2u32, 3, 4]),
        n in 3usize..=5,
        seeds in prop::collection::vec(any::<u64>(), 1..=2),
        frob in 0u32..2,
        dk in any::<prop::sample::Index>(),
    ) {
        let v = Space::of(q, n).unwrap();
        let gens: Vec<SemilinearMap> = seeds
            .iter()
            .map(|&s| SemilinearMap::new(&v, random_invertible(&v, s), frob % v.field().e()).unwrap())
            .collect();
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|k| (1..=k.min(n - k)).map(move |d| (d, k))).collect();
        let (d, k) = pairs[dk.index(pairs.len())];
        let orb = orbit_decomposition(&v, &gens, k).unwrap();
        let idx = SubspaceIndex::new(&v, k).unwrap();
        let mut seen = vec![false; idx.len()];
        for (o, members) in orb.orbits.iter().enumerate() {
            for &i in members {
                prop_assert!(!seen[i]);
                seen[i] = true;
                for g in &gens {
                    prop_assert_eq!(orb.orbit_of[idx.rank(&g.apply(&v, &idx.unrank(i)))], o);
                }
            }
        }
        prop_assert!(seen.iter().all(|&x| x));
        let r = block_equality_check(&v, &gens, d, k).unwrap();
        prop_assert!(r.s <= r.t);
    }

    #[test]
    fn restriction_and_quotient_of_pencils(seed in any::<u64>()) {
        // a plane pencil moved by a random collineation stays degree 2 under both reductions
        let v = Space::of(2, 6).unwrap();
        let idx = SubspaceIndex::new(&v, 3).unwrap();
        let l = v.coordinate_span([0, 1]);
        let f = Family::from_predicate(&idx, |s| v.contains(s, &l)).unwrap();
        let g = gdl_core::families::transform_family(&f, &random_invertible(&v, seed)).unwrap();
        prop_assert!(degree_test(&g, 2).unwrap().certified());
        let h = v.coordinate_span(0..5);
        prop_assert!(degree_test(&restrict_family(&g, &h).unwrap(), 2).unwrap().certified());
        let p = v.coordinate_span([5]);
        prop_assert!(degree_test(&quotient_family(&g, &p).unwrap(), 2).unwrap().certified());
    }
}
