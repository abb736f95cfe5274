use charstack::arith::totient;
use charstack::exactpoly::{int, rat, Poly};
use charstack::gln::{
    class_number_polynomial, count_polynomial_gln, count_polynomial_pgln_identity, enumerate_types, genus_number,
    type_hook_polynomial,
};
use charstack::partitions::{enumerate_partitions, Partition};
use num_bigint::BigInt;
use proptest::prelude::*;

const PARTITION_COUNTS: [usize; 13] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * k)
}

fn q_minus_one() -> Poly {
    Poly::from_ints(&[-1, 1])
}

#[test]
fn partition_counts_up_to_twelve() {
    for n in 0..=12u32 {
        let parts = enumerate_partitions(n);
        assert_eq!(parts.len(), PARTITION_COUNTS[n as usize]);
        assert!(parts.iter().all(|p| p.size() == n));
        assert!(parts.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn hook_length_formula_sums_to_factorial() {
    // Σ_λ (n! / ∏ h)^2 = n!
    for n in 1..=12u32 {
        let total: BigInt = enumerate_partitions(n)
            .iter()
            .map(|p| {
                let hooks: BigInt = p.hook_lengths().into_iter().map(BigInt::from).product();
                let f = factorial(n) / hooks;
                &f * &f
            })
            .sum();
        assert_eq!(total, factorial(n), "n = {n}");
    }
}

#[test]
fn conjugation_and_pairing() {
    for n in 0..=12u32 {
        for p in enumerate_partitions(n) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().size(), n);
            let mut h = p.hook_lengths();
            let mut hc = p.conjugate().hook_lengths();
            h.sort();
            hc.sort();
            assert_eq!(h, hc);
            let pairing: u64 = p.conjugate().parts().iter().map(|&c| (c as u64).pow(2)).sum();
            assert_eq!(p.self_pairing(), pairing);
        }
    }
}

#[test]
fn hook_polynomials_are_normalized() {
    // q^{<λ,λ>/2} H_λ is an integral polynomial with constant term 1 and degree Σ h
    for n in 1..=8u32 {
        for p in enumerate_partitions(n) {
            let h = p.hook_polynomial();
            let shifted = h * charstack::HalfLaurent::monomial(int(1), p.self_pairing() as i64);
            let poly = shifted.to_polynomial().unwrap();
            assert!(poly.has_integer_coeffs());
            assert_eq!(poly.coeff(0), int(1));
            let hook_sum: u32 = p.hook_lengths().iter().sum();
            assert_eq!(poly.degree(), Some(hook_sum as usize));
        }
    }
}

#[test]
fn type_hook_polynomials_integral_with_unit_leading_coefficient() {
    for n in 1..=6 {
        for tau in enumerate_types(n) {
            let h = type_hook_polynomial(&tau).unwrap();
            assert!(h.has_integer_coeffs(), "{tau}");
            let lead = h.leading_coeff().unwrap();
            assert!(*lead == int(1) || *lead == int(-1), "{tau}: {h}");
        }
    }
}

#[test]
fn class_number_is_monic_of_degree_n() {
    for n in 1..=6 {
        let classes = class_number_polynomial(n);
        assert_eq!(classes.degree(), Some(n as usize));
        assert_eq!(classes.leading_coeff(), Some(&int(1)));
    }
}

#[test]
fn divisibility_by_q_minus_one() {
    let d = q_minus_one();
    for n in 1..=6u32 {
        for tau in enumerate_types(n) {
            let a = genus_number(&tau);
            let h = type_hook_polynomial(&tau).unwrap();
            let a1 = a.div_exact(&d).unwrap_or_else(|_| panic!("(q-1) does not divide A_τ for {tau}"));
            let h1 = h.div_exact(&d).unwrap_or_else(|_| panic!("(q-1) does not divide H_τ for {tau}"));
            let h_at_one = h1.eval_int(1);
            if tau.is_regular_elliptic() {
                assert_eq!(h_at_one.clone() * h_at_one, int(n as i64 * n as i64), "{tau}");
                assert_eq!(a1.eval_int(1), rat(totient(n as u64) as i64, n as i64), "{tau}");
            } else {
                assert_eq!(h_at_one, int(0), "(q-1)^2 should divide H_τ for {tau}");
            }
        }
    }
}

#[test]
fn gl_counts_divisible_by_powers_of_q_minus_one() {
    for n in 1..=4 {
        for g in 1..=3 {
            let count = count_polynomial_gln(n, g).unwrap();
            assert!(count.div_exact(&q_minus_one().pow(2 * g - 1)).is_ok(), "n={n} g={g}");
            assert!(count_polynomial_pgln_identity(n, g).is_ok());
        }
    }
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    (0u32..=12).prop_flat_map(|n| {
        let parts = enumerate_partitions(n);
        let len = parts.len();
        (0..len).prop_map(move |i| parts[i].clone())
    })
}

proptest! {
    #[test]
    fn partition_text_round_trip(p in partition_strategy()) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn hook_count_equals_size(p in partition_strategy()) {
        prop_assert_eq!(p.hook_lengths().len() as u32, p.size());
        prop_assert!(p.hook_lengths().iter().all(|&h| h >= 1 && h <= p.size()));
    }
}
