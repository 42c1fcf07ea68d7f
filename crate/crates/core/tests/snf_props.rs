//! Smith normal form against determinant divisors: `s_1⋯s_k` equals the gcd
//! of all k×k minors.
use itertools::Itertools;
use lf_forge::invariants::{cokernel, smith_diagonal, FinAbGroup};
use proptest::prelude::*;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn determinant_divisor(m: &[Vec<i64>], k: usize) -> i128 {
    let cols = m[0].len();
    let mut g = 0;
    for rs in (0..m.len()).combinations(k) {
        for cs in (0..cols).combinations(k) {
            let sub: Vec<Vec<i128>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                .collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn diagonal_matches_determinant_divisors(m in matrix()) {
        let s = smith_diagonal(&m).unwrap();
        for w in s.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let max_k = m.len().min(m[0].len());
        let mut prod: i128 = 1;
        for k in 1..=max_k {
            let dk = determinant_divisor(&m, k);
            if k <= s.len() {
                prod *= s[k - 1] as i128;
                prop_assert_eq!(dk, prod, "k={}", k);
            } else {
                prop_assert_eq!(dk, 0, "k={} beyond rank {}", k, s.len());
            }
        }
    }

    #[test]
    fn square_cokernel_order_is_the_determinant(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))) {
        let n = m.len();
        let d = det(&m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
        let g = cokernel(n, &m).unwrap();
        if d == 0 {
            prop_assert!(g.free_rank > 0);
        } else {
            prop_assert_eq!(g.free_rank, 0);
            prop_assert_eq!(g.torsion.iter().map(|&t| t as i128).product::<i128>(), d.abs());
        }
    }

    #[test]
    fn canonical_form_ignores_diagonal_order(mut diag in prop::collection::vec(0u64..30, 0..5)) {
        let a = FinAbGroup::from_diagonal(6, &diag);
        diag.reverse();
        prop_assert_eq!(a, FinAbGroup::from_diagonal(6, &diag));
    }
}

#[test]
fn displays() {
    assert_eq!(FinAbGroup::from_diagonal(3, &[2]).to_string(), "Z^2 + Z/2");
    assert_eq!(FinAbGroup::trivial().to_string(), "0");
    assert_eq!(FinAbGroup::from_diagonal(2, &[2, 3]).to_string(), "Z/6");
}
