use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use obstruction_lab::exact::smith::{divisors_from_minors, Euclidean};
use obstruction_lab::exact::{smith_normal_form, IntMatrix, Matrix};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r).prop_map(|rows| {
            Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()).unwrap()
        })
    })
}

fn diag_of(m: &IntMatrix, d: &[BigInt]) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for (i, x) in d.iter().enumerate() {
        out.set(i, i, x.clone());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transformation_identity(m in matrix(12, 50)) {
        let s = smith_normal_form(&m);
        let lhs = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        prop_assert_eq!(&lhs, &diag_of(&m, &s.diag));
        prop_assert!(s.left.mul(&s.left_inv).unwrap() == IntMatrix::identity(m.rows()));
        for w in s.diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
    }

    #[test]
    fn nearest_remainder(a in -10_000i64..10_000, d in -500i64..500) {
        prop_assume!(d != 0);
        let (a, d) = (BigInt::from(a), BigInt::from(d));
        let (q, r) = a.euclid_div_rem(&d);
        prop_assert_eq!(&q * &d + &r, a);
        prop_assert!(BigInt::from(2) * r.abs() <= d.abs());
    }

    #[test]
    fn minors_oracle(m in matrix(5, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.diag, divisors_from_minors(&m));
    }
}

#[test]
fn rank_deficient() {
    let m = IntMatrix::from_i64_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 0]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diag, vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
    assert_eq!(divisors_from_minors(&m), s.diag);
}
