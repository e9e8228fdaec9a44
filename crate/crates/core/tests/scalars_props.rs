use lietorus::scalars::matrix::is_zero_vec;
use lietorus::scalars::{CycScalar, ExactMatrix};
use lietorus::Error;
use proptest::prelude::*;

fn cyc(n: u32) -> impl Strategy<Value = CycScalar> {
    let phi = lietorus::scalars::euler_phi(n);
    prop::collection::vec((-6i64..=6, 1i64..=4), phi).prop_map(move |cs| {
        let coeffs = cs.into_iter().map(|(a, b)| lietorus::scalars::q_frac(a, b)).collect();
        CycScalar::from_coeffs(n, coeffs).unwrap()
    })
}

fn any_cyc() -> impl Strategy<Value = CycScalar> {
    prop_oneof![cyc(1), cyc(3), cyc(4), cyc(5), cyc(8), cyc(12)]
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn to_exact(m: &[Vec<i64>]) -> ExactMatrix {
    ExactMatrix::from_i64(m)
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 5 => -4i64..=4], c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in any_cyc(), b in any_cyc(), c in any_cyc()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_is_exact(a in any_cyc(), b in any_cyc()) {
        if b.is_zero() {
            prop_assert!(matches!(a.checked_div(&b), Err(Error::DivisionByZero)));
        } else {
            let q = a.checked_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }
    }

    #[test]
    fn rank_matches_bareiss(m in int_matrix()) {
        let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let a = to_exact(&m);
        prop_assert_eq!(a.rank(), bareiss_rank(wide));
        let ker = a.kernel();
        prop_assert_eq!(a.rank() + ker.len(), a.cols());
        for k in &ker {
            prop_assert!(is_zero_vec(&a.mul_vec(k)));
        }
    }

    #[test]
    fn solve_agrees_with_augmented_rank(m in int_matrix(), seed in prop::collection::vec(-3i64..=3, 8)) {
        let a = to_exact(&m);
        let b: Vec<i64> = (0..a.rows()).map(|i| seed[i % seed.len()]).collect();
        let mut aug = m.clone();
        for (row, x) in aug.iter_mut().zip(&b) {
            row.push(*x);
        }
        let wide = |mm: &[Vec<i64>]| mm.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let consistent = bareiss_rank(wide(&m)) == bareiss_rank(wide(&aug));
        let rhs: Vec<CycScalar> = b.iter().map(|&x| CycScalar::from_int(x)).collect();
        match a.solve(&rhs) {
            Ok(x) => {
                prop_assert!(consistent);
                prop_assert_eq!(a.mul_vec(&x), rhs);
            }
            Err(Error::Inconsistent) => prop_assert!(!consistent),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn cyclotomic_solve(entries in prop::collection::vec(cyc(3), 9), rhs in prop::collection::vec(cyc(3), 3)) {
        let rows: Vec<Vec<CycScalar>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let a = ExactMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(a.rank() + a.kernel().len(), 3);
        if let Ok(x) = a.solve(&rhs) {
            prop_assert_eq!(a.mul_vec(&x), rhs);
        } else {
            prop_assert!(a.rank() < 3);
        }
    }
}
