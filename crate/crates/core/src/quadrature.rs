//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below `max(abs_tol, rel_tol·|value|)`. The per-interval
//! error estimate is `|K15 - G7|`, which is conservative for smooth integrands.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the even-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx)? + f(centre + dx)?;
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Segment { a, b, value: kron * half, error: ((kron - gauss) * half).abs() })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64, max_intervals: usize) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration bounds must be finite, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, intervals: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut segments = vec![kronrod(&mut f, lo, hi)?];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target {
            return Ok(Integral { value: sign * value, error, intervals: segments.len() });
        }

        let (worst, _) =
            segments.iter().enumerate().max_by(|x, y| x.1.error.total_cmp(&y.1.error)).expect("at least one segment");
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        let exhausted = segments.len() >= max_intervals
            || mid <= seg.a
            || mid >= seg.b
            || (seg.b - seg.a) <= 64.0 * f64::EPSILON * seg.a.abs().max(seg.b.abs());
        if exhausted {
            return Err(Error::Quadrature { estimate: sign * value, error_bound: error, target });
        }
        segments[worst] = kronrod(&mut f, seg.a, mid)?;
        segments.push(kronrod(&mut f, mid, seg.b)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| Ok(x.powi(5) - 3.0 * x * x), -1.0, 2.0, 1e-12, 0.0, 100).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-13);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn peaked_integrand() {
        // ∫_0^50 x e^{-x} dx = 1 - 51 e^{-50}
        let r = integrate(|x| Ok(x * (-x).exp()), 0.0, 50.0, 1e-12, 0.0, 500).unwrap();
        assert!((r.value - (1.0 - 51.0 * (-50.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let r = integrate(|x| Ok(x.cos()), 1.0, 0.0, 1e-12, 0.0, 100).unwrap();
        assert!((r.value + 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn non_convergence_reports_estimate() {
        let err = integrate(|x| Ok(1.0 / x.abs().sqrt().max(1e-300)), -1.0, 1.0, 1e-14, 0.0, 8).unwrap_err();
        assert!(matches!(err, Error::Quadrature { estimate, .. } if estimate > 0.0));
    }

    #[test]
    fn integrand_errors_propagate() {
        let err = integrate(|_| Err(Error::Domain("nope".into())), 0.0, 1.0, 1e-8, 0.0, 10).unwrap_err();
        assert_eq!(err, Error::Domain("nope".into()));
    }
}
