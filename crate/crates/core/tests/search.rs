use dyadic::catalog::build_named;
use dyadic::linalg::{is_delta_modular, is_totally_delta_modular, IntMatrix};
use dyadic::matroid::{rank_functions_equal, Matroid};
use dyadic::normal_form::{pivot_to_standard_form, Representation};
use dyadic::search::*;

#[test]
fn membership() {
    let u24 = build_named("U(2,4)").unwrap();
    let rep = find_totally_2modular_representation(&u24).unwrap().unwrap();
    assert!(is_totally_delta_modular(rep.matrix(), 2));
    assert!(rank_functions_equal(&Matroid::from_representation(&rep).unwrap(), &u24));

    assert!(find_totally_2modular_representation(&build_named("U24+U24").unwrap()).unwrap().is_none());

    let u13 = Matroid::uniform_labeled(1, vec!["x".into(), "y".into(), "z".into()]).unwrap();
    let sum = Matroid::direct_sum(&u13, &u24).unwrap();
    assert!(find_totally_2modular_representation(&sum).unwrap().is_some());

    assert!(find_totally_2modular_representation(&Matroid::uniform(3, 13).unwrap()).is_err());
    assert!(find_totally_2modular_representation(&Matroid::uniform(7, 8).unwrap()).is_err());
}

#[test]
fn excluded_minors() {
    for name in ["U24+U24", "U8", "U(2,5)"] {
        let report = verify_excluded_minor_2modular(&build_named(name).unwrap()).unwrap();
        assert_eq!(report.verdict, ExcludedMinorVerdict::ExcludedMinor, "{name}");
        assert!(!report.member);
        assert_eq!(report.minors.len(), 2 * report.size);
        for minor in &report.minors {
            let rows = minor.witness.as_ref().unwrap();
            let m = if rows.is_empty() {
                IntMatrix::zeros(0, minor.labels.len())
            } else {
                IntMatrix::from_rows(rows).unwrap()
            };
            assert!(is_totally_delta_modular(&m, 2));
        }
    }
    let member = verify_excluded_minor_2modular(&build_named("U(2,4)").unwrap()).unwrap();
    assert_eq!(member.verdict, ExcludedMinorVerdict::Member);
    let not_minimal = verify_excluded_minor_2modular(&build_named("U(2,6)").unwrap()).unwrap();
    assert_eq!(not_minimal.verdict, ExcludedMinorVerdict::NotMinimal);
}

#[test]
fn rank_two() {
    for (delta, want) in [(1, 3), (2, 4), (4, 6), (6, 8), (7, 10)] {
        let r = rank2_max_size(delta).unwrap();
        assert_eq!(r.n_max, want, "delta {delta}");
        assert!(is_delta_modular(&r.witness_matrix(), delta).unwrap());
    }
    let r3 = rank2_max_size(3).unwrap();
    assert_eq!(
        r3.witness_matrix(),
        IntMatrix::from_columns(2, &[[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3]]).unwrap()
    );
    for delta in 1..=4 {
        assert_eq!(rank2_max_size(delta).unwrap().n_max, rank2_max_size_enlarged(delta).unwrap().n_max);
    }
    // The documented membership construction: unit columns plus [1, m] for m = 1..delta.
    for delta in 1..=8i64 {
        let mut cols = vec![[1, 0], [0, 1]];
        cols.extend((1..=delta).map(|m| [1, m]));
        let mat = IntMatrix::from_columns(2, &cols).unwrap();
        assert!(is_delta_modular(&mat, delta as u64).unwrap());
        assert!(rank2_max_size(delta as u64).unwrap().n_max >= cols.len());
    }
}

#[test]
fn random_matrices() {
    let scrambled = random_2modular_matrix(3, 0, 5).unwrap();
    let rep = Representation::numbered(scrambled);
    let out = pivot_to_standard_form(&rep, "0").unwrap();
    assert!(out.is_standard_form());
    assert_eq!(random_2modular_matrix(4, 5, 99).unwrap(), random_2modular_matrix(4, 5, 99).unwrap());
    for seed in 0..100 {
        let m = random_2modular_matrix(4, 5, seed).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (4, 9));
        assert!(is_delta_modular(&m, 2).unwrap(), "seed {seed}");
    }
}
