mod common;

use common::*;
use fgcert::abelianize::{exponent_vector, is_basis_extendable_abelian, smith_normal_form};
use fgcert::{BigIntMatrix, IntMatrix, IntVector};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Elementary divisors from gcds of `k × k` minors.
fn determinantal_divisors(rows: &[Vec<i64>]) -> Vec<i64> {
    let (nr, nc) = (rows.len(), rows[0].len());
    let mut out = Vec::new();
    let mut previous = 1i64;
    for k in 1..=nr.min(nc) {
        let mut g = 0i64;
        for rs in subsets(nr, k) {
            for cs in subsets(nc, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, nr.min(nc) - out.len()));
            break;
        }
        out.push(g / previous);
        previous = g;
    }
    out
}

fn matrices(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, cols), rows)
}

/// Random unimodular row and column operations.
fn scramble(mut m: Vec<Vec<i64>>, ops: &[(bool, usize, usize, i64)]) -> Vec<Vec<i64>> {
    let (nr, nc) = (m.len(), m[0].len());
    for &(on_rows, i, j, q) in ops {
        if on_rows {
            let (i, j) = (i % nr, j % nr);
            if i == j {
                m[i].iter_mut().for_each(|v| *v = -*v);
            } else {
                let source = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(source) {
                    *x += q * y;
                }
            }
        } else {
            let (i, j) = (i % nc, j % nc);
            for row in m.iter_mut() {
                if i == j {
                    row.swap(i, (i + 1) % nc);
                } else {
                    row[i] += q * row[j];
                }
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_determinantal_divisors(rows in matrices(3, 4)) {
        let snf = smith_normal_form(&IntMatrix::from_rows(rows.clone()).unwrap()).unwrap();
        prop_assert_eq!(snf, determinantal_divisors(&rows));
    }

    #[test]
    fn snf_is_invariant_under_unimodular_operations(
        rows in matrices(3, 4),
        ops in prop::collection::vec((any::<bool>(), 0usize..4, 0usize..4, -2i64..=2), 0..12),
    ) {
        let before = smith_normal_form(&IntMatrix::from_rows(rows.clone()).unwrap()).unwrap();
        let after = smith_normal_form(&IntMatrix::from_rows(scramble(rows, &ops)).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn divisors_form_a_chain(rows in matrices(4, 3)) {
        let d = smith_normal_form(&IntMatrix::from_rows(rows.clone()).unwrap()).unwrap();
        prop_assert_eq!(d.len(), 3);
        for pair in d.windows(2) {
            prop_assert!(pair[0] >= 0);
            prop_assert!(pair[1] == 0 || (pair[0] != 0 && pair[1] % pair[0] == 0));
        }
        let big: BigIntMatrix = IntMatrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x));
        let bd = smith_normal_form(&big).unwrap();
        prop_assert_eq!(bd, d.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn exponent_vectors_are_additive(x in words(&alphabet("a,b,c"), 10), y in words(&alphabet("a,b,c"), 10)) {
        let sum = exponent_vector(&x).checked_add(&exponent_vector(&y)).unwrap();
        prop_assert_eq!(exponent_vector(&x.multiply(&y).unwrap()), sum);
        let inv = exponent_vector(&x.inverse()).checked_add(&exponent_vector(&x)).unwrap();
        prop_assert!(inv.is_zero());
    }

    #[test]
    fn primitive_vectors_extend(v in prop::collection::vec(-6i64..=6, 3)) {
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        prop_assume!(g != 0);
        prop_assert_eq!(is_basis_extendable_abelian(&[IntVector::new(v)]).unwrap(), g == 1);
    }
}
