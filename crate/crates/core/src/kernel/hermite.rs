use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};

/// Largest order accepted by [`hermite`]. Beyond this the recurrence loses
/// too much range at double precision for the arguments used by the beams.
pub const MAX_HERMITE_ORDER: usize = 60;

/// A single evaluated Hermite polynomial value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiteEval {
    pub order: usize,
    pub argument: f64,
    pub value: f64,
}

impl HermiteEval {
    pub fn new(order: usize, argument: f64) -> Result<Self> {
        Ok(Self {
            order,
            argument,
            value: hermite(order, argument)?,
        })
    }
}

/// Physicists' Hermite polynomial `H_order(x)` by the three-term recurrence
/// `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite(order: usize, x: f64) -> Result<f64> {
    if order > MAX_HERMITE_ORDER {
        return Err(BeamError::UnsupportedOrder {
            order,
            max: MAX_HERMITE_ORDER,
        });
    }
    Ok(hermite_unchecked(order, x))
}

#[inline]
pub(crate) fn hermite_unchecked(order: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if order == 0 {
        return prev;
    }
    let mut curr = 2.0 * x;
    for k in 1..order {
        let next = 2.0 * x * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Real roots of `H_order`, ascending. Bracketed on a fine grid inside the
/// bound `sqrt(2 order + 1)` and polished by bisection.
pub fn hermite_roots(order: usize) -> Result<Vec<f64>> {
    if order > MAX_HERMITE_ORDER {
        return Err(BeamError::UnsupportedOrder {
            order,
            max: MAX_HERMITE_ORDER,
        });
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    let bound = (2.0 * order as f64 + 1.0).sqrt() + 0.5;
    let cells = 400 * order;
    let dx = 2.0 * bound / cells as f64;
    let mut roots = Vec::with_capacity(order);
    // Odd orders have an exact root at the origin; keep it exact.
    if order % 2 == 1 {
        roots.push(0.0);
    }
    for i in 0..cells / 2 {
        let a = i as f64 * dx;
        let b = a + dx;
        let (fa, fb) = (hermite_unchecked(order, a), hermite_unchecked(order, b));
        if a == 0.0 && order % 2 == 1 {
            continue;
        }
        if fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            roots.push(bisect(order, a, b));
        }
    }
    let mut all: Vec<f64> = roots
        .iter()
        .filter(|r| **r > 0.0)
        .map(|r| -r)
        .chain(roots.iter().copied())
        .collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(all)
}

fn bisect(order: usize, mut a: f64, mut b: f64) -> f64 {
    let mut fa = hermite_unchecked(order, a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = hermite_unchecked(order, mid);
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Explicit power-series coefficients of H_k, built from
    /// H_k(x) = k! sum_j (-1)^j (2x)^{k-2j} / (j! (k-2j)!).
    fn series(order: usize, x: f64) -> f64 {
        let fact = |n: usize| (1..=n).fold(1.0_f64, |acc, i| acc * i as f64);
        (0..=order / 2)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * fact(order) / (fact(j) * fact(order - 2 * j))
                    * (2.0 * x).powi((order - 2 * j) as i32)
            })
            .sum()
    }

    #[test]
    fn low_orders() {
        assert_eq!(hermite(0, 1.7).unwrap(), 1.0);
        assert_eq!(hermite(1, 0.5).unwrap(), 1.0);
    }

    #[test]
    fn order_four_matches_series() {
        let x = 0.3_f64;
        let explicit = 16.0 * x.powi(4) - 48.0 * x * x + 12.0;
        let got = hermite(4, x).unwrap();
        assert!((got - explicit).abs() <= 1e-12 * explicit.abs());
        assert!((got - series(4, x)).abs() <= 1e-12 * explicit.abs());
    }

    #[test]
    fn series_agreement_up_to_twelve() {
        for order in 0..=12 {
            for &x in &[-2.3, -0.7, 0.0, 0.41, 1.9] {
                let a = hermite(order, x).unwrap();
                let b = series(order, x);
                assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "H_{order}({x})");
            }
        }
    }

    #[test]
    fn order_guard() {
        assert!(hermite(60, 0.1).is_ok());
        assert_eq!(
            hermite(61, 0.1),
            Err(BeamError::UnsupportedOrder { order: 61, max: 60 })
        );
    }

    #[test]
    fn tabulated_roots() {
        assert_eq!(hermite_roots(1).unwrap(), vec![0.0]);
        let r2 = hermite_roots(2).unwrap();
        assert!((r2[1] - 0.5_f64.sqrt()).abs() < 1e-14);
        let r3 = hermite_roots(3).unwrap();
        assert_eq!(r3.len(), 3);
        assert!((r3[2] - 1.5_f64.sqrt()).abs() < 1e-14);
        assert_eq!(hermite_roots(7).unwrap().len(), 7);
    }

    proptest! {
        #[test]
        fn recurrence_consistency(k in 2usize..=20, x in -4.0f64..4.0) {
            let hk = hermite(k, x).unwrap();
            let h1 = hermite(k - 1, x).unwrap();
            let h2 = hermite(k - 2, x).unwrap();
            let scale = hk.abs().max((2.0 * x * h1).abs()).max((2.0 * (k - 1) as f64 * h2).abs());
            prop_assert!((hk - 2.0 * x * h1 + 2.0 * (k - 1) as f64 * h2).abs() <= 1e-10 * scale);
        }

        #[test]
        fn parity(k in 0usize..=30, x in -5.0f64..5.0) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let a = hermite(k, -x).unwrap();
            let b = sign * hermite(k, x).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(f64::MIN_POSITIVE));
        }
    }
}
