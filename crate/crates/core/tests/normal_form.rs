use dyadic::catalog::build_a;
use dyadic::linalg::{is_totally_delta_modular, IntMatrix};
use dyadic::matroid::{rank_functions_equal, Matroid};
use dyadic::normal_form::{dual_representation, pivot_to_standard_form, Field, Representation};
use dyadic::search::random_2modular_matrix;
use dyadic::Error;

fn matroid(rep: &Representation) -> Matroid {
    Matroid::from_representation(rep).unwrap()
}

#[test]
fn standard_form_input_is_unchanged() {
    let rep = Representation::numbered(IntMatrix::from_rows(&[[1, 0, 0, 1], [0, 1, 0, -1], [0, 0, 1, 1]]).unwrap());
    let out = pivot_to_standard_form(&rep, "0").unwrap();
    assert_eq!(out, rep);
}

#[test]
fn scrambled_a3_returns_to_standard_form() {
    let a = build_a(3).unwrap();
    let u = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, -1], [0, 0, 1]]).unwrap();
    let scrambled = Representation::new(u.mul(a.matrix()).unwrap(), a.labels().to_vec(), Field::Rationals).unwrap();
    for e in a.labels() {
        let out = pivot_to_standard_form(&scrambled, e).unwrap();
        assert!(out.is_standard_form());
        assert_eq!(out.labels()[0], *e);
        assert!(is_totally_delta_modular(out.matrix(), 2));
        assert!(rank_functions_equal(&matroid(&out), &matroid(&a)));
    }
}

#[test]
fn three_modular_counterexample_cannot_put_column_first() {
    let rep = Representation::numbered(IntMatrix::from_rows(&[[1, 1, 1], [0, 2, 3]]).unwrap());
    assert!(matches!(pivot_to_standard_form(&rep, "1"), Err(Error::NotTwoModular(_))));
    let non_primitive = Representation::numbered(IntMatrix::from_rows(&[[2, 1, 0], [0, 0, 1]]).unwrap());
    assert!(matches!(pivot_to_standard_form(&non_primitive, "0"), Err(Error::NoUnitPivot(_))));
    assert!(pivot_to_standard_form(&non_primitive, "1").is_ok());
}

#[test]
fn duals() {
    let rep = Representation::numbered(IntMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]).unwrap());
    let d = dual_representation(&rep).unwrap();
    assert!(rank_functions_equal(&matroid(&d), &matroid(&rep).dual()));
    assert_eq!(matroid(&d).rank(), 1);
    assert_eq!(dual_representation(&d).unwrap(), rep);

    let a4 = pivot_to_standard_form(&build_a(4).unwrap(), "e01").unwrap();
    let d4 = dual_representation(&a4).unwrap();
    assert!(is_totally_delta_modular(d4.matrix(), 2));
    assert!(rank_functions_equal(&matroid(&d4), &matroid(&a4).dual()));
}

#[test]
fn unimodular_scramble_of_identity_round_trips() {
    let m = random_2modular_matrix(4, 0, 11).unwrap();
    let rep = Representation::numbered(m);
    let out = pivot_to_standard_form(&rep, "2").unwrap();
    assert!(out.is_standard_form());
    assert!(out.x_block().unwrap().ncols() == 0);
}
