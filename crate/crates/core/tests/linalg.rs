use dyadic::catalog::{build_a, build_d, build_h};
use dyadic::linalg::{
    det, find_minor_exceeding, is_delta_modular, is_totally_delta_modular, max_abs_minor, rank, row_point_count,
    IntMatrix, MatrixText,
};
use itertools::Itertools;
use num_bigint::BigInt;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn network(n: usize) -> IntMatrix {
    IntMatrix::hcat(&[&IntMatrix::identity(n), &build_d(n).unwrap()]).unwrap()
}

/// Cofactor expansion along the first row.
fn cofactor_det(a: &[Vec<i64>]) -> i64 {
    if a.is_empty() {
        return 1;
    }
    (0..a.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a[0][j] * cofactor_det(&minor)
        })
        .sum()
}

#[test]
fn determinants() {
    assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
    assert_eq!(det(&m(&[&[1, 1], &[-1, 1]])).unwrap(), BigInt::from(2));
}

#[test]
fn h4_minors_match_cofactor_expansion() {
    let h = build_h(4).unwrap();
    let mat = h.matrix();
    assert_eq!((mat.nrows(), mat.ncols()), (4, 11));
    for cols in (0..11).combinations(4) {
        let sub = mat.submatrix(&[0, 1, 2, 3], &cols);
        let d = det(&sub).unwrap();
        assert_eq!(d, BigInt::from(cofactor_det(&sub.rows_vec())));
        assert!(d >= BigInt::from(-2) && d <= BigInt::from(2));
    }
}

#[test]
fn ranks() {
    assert_eq!(rank(&IntMatrix::identity(5)), 5);
    assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
    assert_eq!(rank(build_a(5).unwrap().matrix()), 5);
}

#[test]
fn largest_minors() {
    assert_eq!(max_abs_minor(&IntMatrix::identity(4), 4).unwrap(), BigInt::from(1));
    let a2 = build_a(2).unwrap();
    assert_eq!(a2.matrix().columns(), vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![1, 1]]);
    assert_eq!(max_abs_minor(a2.matrix(), 2).unwrap(), BigInt::from(2));
    assert_eq!(max_abs_minor(&network(2), 2).unwrap(), BigInt::from(1));
}

#[test]
fn delta_modularity() {
    let c = m(&[&[1, 1, 1], &[0, 2, 3]]);
    assert!(is_delta_modular(&c, 3).unwrap());
    assert!(!is_delta_modular(&c, 2).unwrap());
    let v = find_minor_exceeding(&c, 2, 2).unwrap().unwrap();
    assert_eq!(v.det, BigInt::from(3));
    assert!(is_totally_delta_modular(&network(2), 1));
    assert!(is_totally_delta_modular(build_h(4).unwrap().matrix(), 2));
    assert!(!is_totally_delta_modular(&m(&[&[2]]), 1));
    assert!(is_delta_modular(&IntMatrix::zeros(2, 2), 1).is_err());
}

#[test]
fn row_points() {
    let mut rows: Vec<Vec<i64>> = IntMatrix::identity(3).rows_vec();
    rows.push(vec![0, 1, 0]);
    rows.push(vec![0, 0, 0]);
    assert_eq!(row_point_count(&IntMatrix::from_rows(&rows).unwrap()), 3);
    assert_eq!(row_point_count(&build_a(5).unwrap().matrix().transpose()), 19);
    assert_eq!(row_point_count(&m(&[&[1, 0], &[2, 0], &[0, 1]])), 2);
}

#[test]
fn text_format_round_trip() {
    let a = build_a(3).unwrap();
    let text = MatrixText::with_labels(a.matrix().clone(), a.labels()).to_string();
    let back: MatrixText = text.parse().unwrap();
    assert_eq!(&back.matrix, a.matrix());
    assert_eq!(back.labels().unwrap(), a.labels());
    assert_eq!(back.to_string(), text);
}
