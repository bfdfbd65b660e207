#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use siegel_euler::forms::FormsTable;
use siegel_euler::weyl::{SignedPermutation, WeylKind};

/// `σ_k(n)`.
pub fn divisor_power_sum(n: usize, k: u32) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// Coefficients `1..=len` of `Δ = q ∏ (1 - q^m)^24`, by naive series
/// multiplication.
pub fn delta_series(len: usize) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); len + 1];
    prod[0] = BigInt::from(1);
    for m in 1..=len {
        for _ in 0..24 {
            for i in (m..=len).rev() {
                let sub = prod[i - m].clone();
                prod[i] -= sub;
            }
        }
    }
    let mut out = vec![BigInt::zero(); len + 1];
    out[1..].clone_from_slice(&prod[..len]);
    out
}

/// Coefficients `1..=len` of `E_k · Δ` for `k ∈ {4, 6}`.
pub fn eisenstein_times_delta(k: u32, len: usize) -> Vec<BigInt> {
    let (c, power) = match k {
        4 => (240, 3),
        6 => (-504, 5),
        _ => panic!("unsupported weight"),
    };
    let mut e = vec![BigInt::zero(); len + 1];
    e[0] = BigInt::from(1);
    for (n, slot) in e.iter_mut().enumerate().skip(1) {
        *slot = BigInt::from(c) * divisor_power_sum(n, power);
    }
    let d = delta_series(len);
    let mut out = vec![BigInt::zero(); len + 1];
    for i in 1..=len {
        for j in 0..i {
            out[i] += &e[j] * &d[i - j];
        }
    }
    out
}

/// The standard table extended with eigenvalues of the weight 16 and 18
/// eigenforms at small primes.
pub fn table_with_small_weights() -> FormsTable {
    let primes = [2usize, 3, 5, 7];
    let f16 = eisenstein_times_delta(4, 7);
    let f18 = eisenstein_times_delta(6, 7);
    let hecke = |f: &[BigInt]| {
        primes
            .iter()
            .map(|p| format!("\"{p}\": {}", f[*p]))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let doc = format!(
        r#"{{"families": [
            {{"type": "S", "weights": ["15/2"], "count": 1, "forms": [{{"label": "Δ_15", "hecke": {{{}}}}}]}},
            {{"type": "S", "weights": ["17/2"], "count": 1, "forms": [{{"label": "Δ_17", "hecke": {{{}}}}}]}}
        ]}}"#,
        hecke(&f16),
        hecke(&f18)
    );
    FormsTable::standard().ingest_str(&doc).expect("valid table")
}

/// All dominant weights of rank `n` with entries at most `max`.
pub fn dominant(max: i64, n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in dominant(first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Membership in `W(a, b, n)` or `W'(a, b, n)` by checking every chain of
/// inequalities on `w⁻¹`.
pub fn in_weyl_set(w: &SignedPermutation, kind: WeylKind, a: usize, b: usize) -> bool {
    let n = w.rank();
    let inv = w.inverse();
    let at = |i: usize| inv.apply(i as i32);
    let singles: Vec<i32> = (1..=a).map(at).collect();
    let singles_ok = match kind {
        WeylKind::W => singles.first().is_none_or(|&x| x > 0) && singles.windows(2).all(|p| p[0] < p[1]),
        WeylKind::WPrime => singles.last().is_none_or(|&x| x > 0) && singles.windows(2).all(|p| p[0] > p[1]),
    };
    let firsts: Vec<i32> = (0..b).map(|i| at(a + 2 * i + 1)).collect();
    let firsts_ok = firsts.first().is_none_or(|&x| x > 0) && firsts.windows(2).all(|p| p[0] < p[1]);
    let pairs_ok = (1..=b).all(|i| at(a + 2 * i).abs() > at(a + 2 * i - 1));
    let tail: Vec<i32> = (a + 2 * b + 1..=n).map(at).collect();
    let tail_ok = tail.first().is_none_or(|&x| x > 0) && tail.windows(2).all(|p| p[0] < p[1]);
    singles_ok && firsts_ok && pairs_ok && tail_ok
}

/// All permutations of `{1, …, a + 2b}` satisfying the Kostant conditions,
/// by filtering the full symmetric group.
pub fn kostant_brute_force(a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = a + 2 * b;
    (1..=n)
        .permutations(n)
        .filter(|sigma| {
            let mut inv = vec![0usize; n + 1];
            for (i, &x) in sigma.iter().enumerate() {
                inv[x] = i + 1;
            }
            (1..a).all(|i| inv[i] < inv[i + 1])
                && (1..=b).all(|i| inv[a + 2 * i - 1] < inv[a + 2 * i])
                && (1..b).all(|i| inv[a + 2 * i - 1] < inv[a + 2 * i + 1])
        })
        .sorted()
        .collect()
}
