use proptest::prelude::*;
use qmatroid::axioms::{check_rank, CheckOptions, RankVariant};
use qmatroid::io::{family_from_json, family_to_json, matroid_from_json, matroid_to_json};
use qmatroid::representable::{matroid_from_matrix, GeneratorMatrix};
use qmatroid::{ExtField, Lattice, QMatroid, Subspace, SubspaceFamily};

fn vectors(q: u32, n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..q, n), 0..=max)
}

fn space(q: u32, n: usize) -> impl Strategy<Value = Subspace> {
    vectors(q, n, n + 1).prop_map(move |g| Subspace::canonicalize(&g, q, n).unwrap())
}

fn field_elems(m: usize) -> impl Strategy<Value = (usize, u32, u32, u32)> {
    (Just(m), 0..(1u32 << m), 0..(1u32 << m), 0..(1u32 << m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_laws((m, a, b, c) in (1usize..=6).prop_flat_map(field_elems)) {
        let f = ExtField::build(2, m).unwrap();
        let (a, b, c) = (f.decode(a), f.decode(b), f.decode(c));
        prop_assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        prop_assert_eq!(f.decode(f.encode(&a)), a);
    }

    #[test]
    fn modular_dimension_law(a in space(3, 4), b in space(3, 4)) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains(&a).unwrap() && a.contains(&i).unwrap());
    }

    #[test]
    fn perp_laws(a in space(2, 6), b in space(2, 6)) {
        prop_assert_eq!(a.perp().perp(), a.clone());
        prop_assert_eq!(a.perp().dim(), 6 - a.dim());
        prop_assert_eq!(a.sum(&b).unwrap().perp(), a.perp().intersect(&b.perp()).unwrap());
    }

    #[test]
    fn canonical_form_ignores_generators(g in vectors(2, 5, 6), extra in vectors(2, 5, 2)) {
        let a = Subspace::canonicalize(&g, 2, 5).unwrap();
        let again = Subspace::canonicalize(&a.basis(), 2, 5).unwrap();
        prop_assert_eq!(&again, &a);
        let mut more = g.clone();
        more.extend(extra.iter().cloned());
        let b = Subspace::canonicalize(&more, 2, 5).unwrap();
        prop_assert!(b.contains(&a).unwrap());
        prop_assert_eq!(b, a.sum(&Subspace::canonicalize(&extra, 2, 5).unwrap()).unwrap());
    }

    #[test]
    fn lattice_operations_agree_with_subspaces(a in space(2, 4), b in space(2, 4)) {
        let lat = Lattice::shared(2, 4).unwrap();
        let (i, j) = (lat.require(&a).unwrap(), lat.require(&b).unwrap());
        prop_assert_eq!(lat.space(lat.join(i, j)), &a.sum(&b).unwrap());
        prop_assert_eq!(lat.space(lat.meet(i, j)), &a.intersect(&b).unwrap());
        prop_assert_eq!(lat.le(i, j), b.contains(&a).unwrap());
        prop_assert_eq!(lat.space(lat.perp(i)), &a.perp());
        prop_assert!(lat.dim(i) <= lat.dim(lat.join(i, j)));
    }

    #[test]
    fn representable_matroids_satisfy_both_rank_systems(
        m in 1usize..=3,
        codes in prop::collection::vec(prop::collection::vec(0u32..8, 4), 1..=3),
    ) {
        let field = ExtField::build(2, m).unwrap();
        let entries = codes.iter().map(|r| r.iter().map(|&c| field.decode(c % (1 << m))).collect()).collect();
        if let Ok(g) = GeneratorMatrix::new(field, entries) {
            let mat = matroid_from_matrix(&g).unwrap();
            let t = mat.rank_table();
            prop_assert!(check_rank(&t, RankVariant::Global, &CheckOptions::exhaustive()).passed());
            prop_assert!(check_rank(&t, RankVariant::Local, &CheckOptions::exhaustive()).passed());
            prop_assert_eq!(mat.full_rank() as usize, g.k());
            let d = mat.dual();
            prop_assert_eq!(d.full_rank() as usize, 4 - g.k());
        }
    }

    #[test]
    fn family_operators(members in prop::collection::vec(space(2, 3), 0..6)) {
        let f = SubspaceFamily::from_members(2, 3, members).unwrap();
        let low = f.low().unwrap();
        let upp = f.upp().unwrap();
        prop_assert!(f.iter().all(|s| low.contains(s) && upp.contains(s)));
        prop_assert_eq!(low.low().unwrap(), low.clone());
        prop_assert_eq!(upp.upp().unwrap(), upp.clone());
        prop_assert_eq!(f.opp().unwrap().opp().unwrap(), f.clone());
        prop_assert_eq!(f.perp().perp(), f.clone());
        let mx = f.max();
        prop_assert!(mx.iter().all(|a| f.contains(a) && !mx.iter().any(|b| b != a && b.contains(a).unwrap())));
        prop_assert_eq!(f.max().low().unwrap(), low);
        prop_assert_eq!(f.min().upp().unwrap(), upp);
    }

    #[test]
    fn json_round_trips(k in 0usize..=4, members in prop::collection::vec(space(3, 3), 0..5)) {
        let m = QMatroid::uniform(k, 4, 2).unwrap();
        prop_assert_eq!(matroid_from_json(&matroid_to_json(&m)).unwrap(), m);
        let f = SubspaceFamily::from_members(3, 3, members).unwrap();
        let (kind, back) = family_from_json(&family_to_json("flat", &f)).unwrap();
        prop_assert_eq!(kind, "flat");
        prop_assert_eq!(back, f);
    }
}
