use detcircuit::algebra::{
    braiding, cofactor_determinant, compose, dagger, determinant, direct_sum, int, principal_minor_sum, ratio,
    Label, LabeledMatrix, Rational,
};
use detcircuit::oracle::{sdet_expand, tensor_compose, tensor_product, tensor_trace};
use proptest::prelude::*;

fn entries(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), len).prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

fn matrix(rows: Vec<Label>, cols: Vec<Label>) -> impl Strategy<Value = LabeledMatrix<Rational>> {
    entries(rows.len() * cols.len()).prop_map(move |d| LabeledMatrix::new(rows.clone(), cols.clone(), d).unwrap())
}

fn labels(base: Label, n: usize) -> Vec<Label> {
    (base..base + n as Label).collect()
}

/// A pair `(n, m)` with `n.cols` and `m.rows` on the same labels in the same order.
fn composable(max: usize) -> impl Strategy<Value = (LabeledMatrix<Rational>, LabeledMatrix<Rational>)> {
    (0..=max, 0..=max, 0..=max).prop_flat_map(|(a, b, c)| {
        (matrix(labels(0, a), labels(100, b)), matrix(labels(100, b), labels(200, c)))
    })
}

fn square(max: usize) -> impl Strategy<Value = LabeledMatrix<Rational>> {
    (0..=max).prop_flat_map(|n| matrix(labels(0, n), labels(0, n)))
}

fn explicit_minor_sum(m: &LabeledMatrix<Rational>) -> Rational {
    let n = m.nrows();
    (0..1usize << n)
        .map(|mask| {
            let pos: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            determinant(&m.submatrix(&pos, &pos)).unwrap()
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative(
        (x, y, z) in (0..=3usize, 0..=3usize, 0..=3usize, 0..=3usize).prop_flat_map(|(a, b, c, d)| (
            matrix(labels(0, a), labels(10, b)),
            matrix(labels(10, b), labels(20, c)),
            matrix(labels(20, c), labels(30, d)),
        ))
    ) {
        let left = compose(&compose(&x, &y).unwrap(), &z).unwrap();
        let right = compose(&x, &compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn minor_expansion_is_functorial((n, m) in composable(4)) {
        let lhs = sdet_expand(&compose(&n, &m).unwrap()).unwrap();
        let rhs = tensor_compose(&sdet_expand(&n).unwrap(), &sdet_expand(&m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reordered_middle_passes_through_a_permutation(
        (n, m, shuffle) in (1..=4usize).prop_flat_map(|b| (
            matrix(labels(0, 3), labels(100, b)),
            matrix(labels(100, b), labels(200, 2)),
            Just(labels(100, b)).prop_shuffle(),
        ))
    ) {
        let m = m.with_row_order(&shuffle).unwrap();
        // Identity on the middle wires, rows in n's order, columns in m's.
        let p = LabeledMatrix::<Rational>::identity(n.cols().to_vec()).unwrap().with_col_order(&shuffle).unwrap();
        let lhs = sdet_expand(&compose(&n, &m).unwrap()).unwrap();
        let through = tensor_compose(&sdet_expand(&p).unwrap(), &sdet_expand(&m).unwrap()).unwrap();
        let rhs = tensor_compose(&sdet_expand(&n).unwrap(), &through).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_cyclic(
        (x, y) in (0..=5usize, 0..=5usize).prop_flat_map(|(a, b)| (
            matrix(labels(0, a), labels(50, b)),
            matrix(labels(50, b), labels(0, a)),
        ))
    ) {
        let xy = principal_minor_sum(&compose(&x, &y).unwrap()).unwrap();
        let yx = principal_minor_sum(&compose(&y, &x).unwrap()).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn elimination_matches_cofactor_expansion(m in square(5)) {
        let n = m.nrows();
        prop_assert_eq!(determinant(&m).unwrap(), cofactor_determinant(m.data(), n));
    }

    #[test]
    fn minor_sum_is_det_of_identity_plus(m in square(7)) {
        prop_assert_eq!(principal_minor_sum(&m).unwrap(), explicit_minor_sum(&m));
    }

    #[test]
    fn trace_of_expansion_is_minor_sum(m in square(6)) {
        let t = sdet_expand(&m).unwrap();
        prop_assert_eq!(tensor_trace(&t).unwrap(), principal_minor_sum(&m).unwrap());
    }

    #[test]
    fn dagger_reverses_composition((n, m) in composable(4)) {
        let lhs = dagger(&compose(&n, &m).unwrap());
        let rhs = compose(&dagger(&m), &dagger(&n)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(dagger(&dagger(&n)), n);
    }

    #[test]
    fn direct_sum_expands_to_tensor_product(
        (a, b) in (0..=2usize, 0..=2usize, 0..=2usize, 0..=2usize).prop_flat_map(|(r1, c1, r2, c2)| (
            matrix(labels(0, r1), labels(10, c1)),
            matrix(labels(20, r2), labels(30, c2)),
        ))
    ) {
        let lhs = sdet_expand(&direct_sum(&a, &b).unwrap()).unwrap();
        let rhs = tensor_product(&sdet_expand(&a).unwrap(), &sdet_expand(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braiding_is_an_involution(a in 0..=3usize, b in 0..=3usize) {
        let (la, lb) = (labels(0, a), labels(10, b));
        let c1: LabeledMatrix<Rational> = braiding(&la, &lb).unwrap();
        let c2: LabeledMatrix<Rational> = braiding(&lb, &la).unwrap();
        let both = compose(&c2, &c1).unwrap();
        let id = LabeledMatrix::identity([la.clone(), lb.clone()].concat()).unwrap();
        prop_assert_eq!(both, id);
    }
}

#[test]
fn named_values() {
    let m = LabeledMatrix::new(vec![1, 2], vec![1, 2], [1, 2, 3, 4].map(int).to_vec()).unwrap();
    assert_eq!(determinant(&m).unwrap(), int(-2));
    assert_eq!(principal_minor_sum(&m).unwrap(), int(4));
    let empty = LabeledMatrix::<Rational>::zeros(vec![], vec![]).unwrap();
    assert_eq!(determinant(&empty).unwrap(), int(1));
    assert_eq!(direct_sum(&m, &empty).unwrap(), m);
    let zero = LabeledMatrix::<Rational>::zeros(labels(0, 4), labels(0, 4)).unwrap();
    assert_eq!(principal_minor_sum(&zero).unwrap(), int(1));
    let a = LabeledMatrix::new(vec![1], vec![2], vec![int(3)]).unwrap();
    let b = LabeledMatrix::new(vec![2], vec![3], vec![int(5)]).unwrap();
    assert_eq!(compose(&a, &b).unwrap(), LabeledMatrix::new(vec![1], vec![3], vec![int(15)]).unwrap());
    let c: LabeledMatrix<Rational> = braiding(&[1], &[2]).unwrap();
    assert_eq!(c.rows(), &[2, 1]);
    assert_eq!(c.cols(), &[1, 2]);
    assert_eq!(c.data(), &[0, 1, 1, 0].map(int));
    let unit: LabeledMatrix<Rational> = braiding(&[], &[1]).unwrap();
    assert_eq!(unit, LabeledMatrix::identity(vec![1]).unwrap());
}

#[test]
fn identity_expansion_traces_to_power_of_two() {
    for n in 0..=6 {
        let id = LabeledMatrix::<Rational>::identity(labels(0, n)).unwrap();
        assert_eq!(tensor_trace(&sdet_expand(&id).unwrap()).unwrap(), int(1 << n));
    }
}
