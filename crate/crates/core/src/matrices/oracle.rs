//! All-pairs brute force over Σ_{n²}.
//!
//! Pairs are counted with one `u128` AND per pair (`n⁴ ≤ 81` bits). The outer
//! index is split across rayon workers; every worker accumulates exact `u64`
//! counts, so the totals do not depend on the number of threads.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::formulas::binomial;

use super::pi::enumerate_sperm;

fn fingerprints(n: usize) -> Result<Vec<u128>> {
    Ok(enumerate_sperm(n)?.iter().map(|m| m.fingerprint_u128()).collect())
}

/// Ordered pairs `(x, y)` of S-permutation matrices with no common 1.
pub fn brute_force_disjoint_count(n: usize) -> Result<BigInt> {
    let fps = fingerprints(n)?;
    let total: u64 = fps
        .par_iter()
        .map(|&x| fps.iter().filter(|&&y| x & y == 0).count() as u64)
        .sum();
    Ok(BigInt::from(total))
}

/// Entry `m` counts ordered pairs sharing exactly `m` ones, `m = 0..=n²`.
pub fn agreement_histogram(n: usize) -> Result<Vec<BigInt>> {
    let fps = fingerprints(n)?;
    let bins = n * n + 1;
    let hist = fps
        .par_iter()
        .fold(
            || vec![0u64; bins],
            |mut acc, &x| {
                for &y in &fps {
                    acc[(x & y).count_ones() as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist.into_iter().map(BigInt::from).collect())
}

/// `Σ_m C(m, k) · hist[m]`: pairs together with a chosen set of `k`
/// coinciding cells.
pub fn q_from_histogram(hist: &[BigInt], k: usize) -> BigInt {
    hist.iter()
        .enumerate()
        .map(|(m, count)| binomial(m, k) * count)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::s_perm_count;
    use crate::matrices::pi::enumerate_pi;

    #[test]
    fn n1_is_never_disjoint() {
        assert_eq!(brute_force_disjoint_count(1).unwrap(), BigInt::from(0));
        assert_eq!(agreement_histogram(1).unwrap(), vec![BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn n2_histogram_by_cellwise_comparison() {
        let pis = enumerate_pi(2).unwrap();
        let mut expected = vec![BigInt::from(0); 5];
        for x in &pis {
            for y in &pis {
                expected[x.agreements(y)] += 1;
            }
        }
        let hist = agreement_histogram(2).unwrap();
        assert_eq!(hist, expected);
        assert_eq!(hist[0], brute_force_disjoint_count(2).unwrap());
        assert_eq!(hist[4], s_perm_count(2));
        assert_eq!(hist.iter().sum::<BigInt>(), s_perm_count(2).pow(2));
    }

    #[test]
    fn q_from_histogram_edges() {
        let hist = agreement_histogram(2).unwrap();
        assert_eq!(q_from_histogram(&hist, 0), BigInt::from(256));
        assert_eq!(q_from_histogram(&hist, 1), BigInt::from(256));
        assert_eq!(q_from_histogram(&hist, 4), BigInt::from(16));
    }
}
