//! The lower bound `dim A > (2n)^{2/3} - 1` for maximal commutative
//! subalgebras of `M_n`.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaffeyBound {
    pub n: u64,
    /// `(2n)^2`; the bound is `cbrt(radicand) - 1`.
    pub radicand: u64,
    pub expression: String,
    pub approximation: f64,
    /// Smallest integer strictly greater than the bound.
    pub implied_min_dim: u64,
}

fn integer_cbrt(m: u64) -> u64 {
    let mut r = (m as f64).cbrt().round() as u64;
    while r.pow(3) > m {
        r -= 1;
    }
    while (r + 1).pow(3) <= m {
        r += 1;
    }
    r
}

fn bisect_cbrt(m: u64) -> f64 {
    let target = m as f64;
    let (mut lo, mut hi) = (0.0f64, target.max(1.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid * mid < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Evaluates the bound for `n ≥ 1`.
pub fn laffey_bound(n: u64) -> LaffeyBound {
    assert!(n >= 1, "n must be positive");
    let radicand = (2 * n) * (2 * n);
    // dim > c - 1 with c = cbrt(radicand): the smallest admissible integer
    // is floor(c), whether or not c is an integer.
    let implied_min_dim = integer_cbrt(radicand);
    LaffeyBound {
        n,
        radicand,
        expression: format!("{}^(2/3) - 1 = {}^(1/3) - 1", 2 * n, radicand),
        approximation: bisect_cbrt(radicand) - 1.0,
        implied_min_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let b = laffey_bound(1);
        assert!((b.approximation - 0.5874).abs() < 1e-4);
        assert_eq!(b.implied_min_dim, 1);

        let b = laffey_bound(6);
        assert!((b.approximation - (144f64.cbrt() - 1.0)).abs() < 1e-12);
        assert!((b.approximation - 4.2415).abs() < 1e-4);
        assert_eq!(b.implied_min_dim, 5);

        let b = laffey_bound(14);
        assert!((b.approximation - (784f64.cbrt() - 1.0)).abs() < 1e-12);
        assert!((b.approximation - 8.2209).abs() < 1e-4);
        assert_eq!(b.implied_min_dim, 9);
    }

    #[test]
    fn perfect_cube_radicand() {
        // n = 4: 64^(1/3) - 1 = 3 exactly, so dim ≥ 4.
        let b = laffey_bound(4);
        assert!((b.approximation - 3.0).abs() < 1e-12);
        assert_eq!(b.implied_min_dim, 4);
    }
}
