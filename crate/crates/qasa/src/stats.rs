//! Order statistics shared by the fit and the benchmark harness.

/// Median of a non-empty slice: the middle order statistic, or the mean of
/// the two central ones for even length.
pub fn median(values: &[f64]) -> f64 {
    debug_assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

/// Median absolute deviation: `median(|x_i − median(x)|)`.
pub fn mad(values: &[f64]) -> f64 {
    let m = median(values);
    let deviations: Vec<f64> = values.iter().map(|&x| (x - m).abs()).collect();
    median(&deviations)
}

/// Five-number boxplot summary with Tukey-style outliers.
///
/// Quartiles use the median-of-halves convention with the central element
/// excluded for odd length; whiskers extend to the most extreme points
/// within `1.5·IQR` of the quartiles and everything beyond is listed as an
/// outlier.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxplotSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub outliers: Vec<f64>,
}

impl BoxplotSummary {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let med = median(&sorted);
        let half = n / 2;
        let (lower, upper) = if n == 1 {
            (&sorted[..1], &sorted[..1])
        } else {
            // Exclude the central element for odd n.
            (&sorted[..half], &sorted[n - half..])
        };
        let q1 = median(lower);
        let q3 = median(upper);
        let iqr = q3 - q1;
        let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
        let mut outliers: Vec<f64> =
            sorted.iter().copied().filter(|&x| x < lo_fence || x > hi_fence).collect();
        outliers.sort_by(f64::total_cmp);
        let inliers: Vec<f64> =
            sorted.iter().copied().filter(|&x| x >= lo_fence && x <= hi_fence).collect();
        let (min, max) = if inliers.is_empty() {
            (med, med)
        } else {
            (inliers[0], inliers[inliers.len() - 1])
        };
        Some(Self { min, q1, median: med, q3, max, outliers })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_conventions() {
        assert_eq!(median(&[3.0]), 3.0);
        assert_eq!(median(&[1.0, 2.0, 10.0]), 2.0);
        assert_eq!(median(&[1.0, 2.0, 3.0, 10.0]), 2.5);
    }

    #[test]
    fn mad_hand_example() {
        // median(0.2, 0.4, 0.9) = 0.4; deviations (0.2, 0, 0.5) → MAD 0.2.
        assert!((mad(&[0.2, 0.4, 0.9]) - 0.2).abs() <= 1e-15);
        assert_eq!(mad(&[0.7]), 0.0);
        assert_eq!(mad(&[0.3, 0.3, 0.3]), 0.0);
    }

    /// Independent quantile oracle: direct index arithmetic on the sorted
    /// slice, written separately from the implementation above.
    fn quartile_oracle(sorted: &[f64]) -> (f64, f64) {
        let n = sorted.len();
        let half = &sorted[..n / 2];
        let upper = &sorted[n.div_ceil(2)..];
        let med_of = |s: &[f64]| {
            let m = s.len();
            if m % 2 == 1 {
                s[m / 2]
            } else {
                0.5 * (s[m / 2 - 1] + s[m / 2])
            }
        };
        (med_of(half), med_of(upper))
    }

    #[test]
    fn boxplot_matches_quantile_oracle() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for len in [2usize, 3, 4, 5, 10, 41, 100] {
            let mut values: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() * 10.0).collect();
            let summary = BoxplotSummary::from_values(&values).unwrap();
            values.sort_by(f64::total_cmp);
            let (q1, q3) = quartile_oracle(&values);
            assert_eq!(summary.q1, q1, "len {len}");
            assert_eq!(summary.q3, q3, "len {len}");
            assert_eq!(summary.median, median(&values));
        }
    }

    #[test]
    fn boxplot_flags_outliers() {
        let mut values = vec![1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7];
        values.push(50.0);
        let summary = BoxplotSummary::from_values(&values).unwrap();
        assert_eq!(summary.outliers, vec![50.0]);
        assert_eq!(summary.max, 1.7);
        assert_eq!(summary.min, 1.0);
        assert!(BoxplotSummary::from_values(&[]).is_none());
    }
}
