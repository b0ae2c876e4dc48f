//! Weighted index sampling over a cumulative weight array.
//!
//! Binary search over prefix sums: `O(log p)` per draw, no setup beyond the
//! prefix sums themselves, which the setup tables already store.

use crate::error::{BterError, Result};

/// Prefix sums of non-negative weights.
pub fn cumulative(weights: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .into_iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

/// Returns the smallest `i` with `u * total < cum_weights[i]`.
pub fn weighted_index_sample(cum_weights: &[f64], u: f64) -> Result<usize> {
    let total = match cum_weights.last() {
        Some(&t) if t > 0.0 => t,
        Some(_) => return Err(BterError::validation("all sampling weights are zero")),
        None => return Err(BterError::validation("no sampling weights")),
    };
    let mut probe = 0;
    Ok(search(cum_weights, u * total, &mut probe))
}

/// Core binary search. `comparisons` is incremented once per probe of
/// `cum`, at most `ceil(log2(len + 1))` times.
#[inline]
pub(crate) fn search(cum: &[f64], target: f64, comparisons: &mut u32) -> usize {
    let (mut lo, mut hi) = (0, cum.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        *comparisons += 1;
        if target < cum[mid] {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo == cum.len() {
        // u * total rounded up to total
        last_positive(cum)
    } else {
        lo
    }
}

fn last_positive(cum: &[f64]) -> usize {
    let total = cum[cum.len() - 1];
    cum.iter().position(|&c| c >= total).unwrap_or(cum.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_bin() {
        for u in [0.0, 0.3, 0.999_999] {
            assert_eq!(weighted_index_sample(&[1.0], u).unwrap(), 0);
        }
    }

    #[test]
    fn hand_evaluated() {
        let cum = cumulative([1.0, 3.0]);
        assert_eq!(cum, vec![1.0, 4.0]);
        assert_eq!(weighted_index_sample(&cum, 0.5).unwrap(), 1);
        assert_eq!(weighted_index_sample(&cum, 0.2).unwrap(), 0);
        assert_eq!(weighted_index_sample(&cum, 0.25).unwrap(), 1);
    }

    #[test]
    fn zero_weight_bins_never_selected() {
        let cum = cumulative([0.0, 2.0, 0.0, 0.0, 1.0, 0.0]);
        for k in 0..1000 {
            let u = k as f64 / 1000.0;
            let i = weighted_index_sample(&cum, u).unwrap();
            assert!(i == 1 || i == 4, "u={u} gave {i}");
        }
        // rounding guard: target equal to total lands on the last positive bin
        let mut c = 0;
        assert_eq!(search(&cum, 3.0, &mut c), 4);
    }

    #[test]
    fn errors_on_empty_or_zero() {
        assert!(weighted_index_sample(&[], 0.5).is_err());
        assert!(weighted_index_sample(&[0.0, 0.0], 0.5).is_err());
    }

    #[test]
    fn comparison_bound() {
        for p in 1..300usize {
            let cum = cumulative((0..p).map(|i| (i % 7 + 1) as f64));
            let bound = (p as f64).log2().ceil() as u32 + 1;
            for k in 0..64 {
                let mut c = 0;
                search(&cum, cum[p - 1] * k as f64 / 64.0, &mut c);
                assert!(c <= bound, "p={p} used {c} > {bound}");
            }
        }
    }

    #[test]
    fn uniform_frequencies() {
        let cum = cumulative([2.0, 2.0, 2.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 1_000_000;
        let mut hits = [0u64; 3];
        for _ in 0..draws {
            hits[weighted_index_sample(&cum, rng.random()).unwrap()] += 1;
        }
        for h in hits {
            let f = h as f64 / draws as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.002, "frequency {f}");
        }
        // chi-square with 2 dof, 99.9% critical value 13.82
        let e = draws as f64 / 3.0;
        let chi2: f64 = hits.iter().map(|&h| (h as f64 - e).powi(2) / e).sum();
        assert!(chi2 < 13.82, "chi2 = {chi2}");
    }
}
