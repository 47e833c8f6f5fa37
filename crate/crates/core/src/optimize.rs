//! Brent's derivative-free minimiser (golden section with parabolic steps).

/// Outcome of [`brent_minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// Minimises `f` on `[low, high]` to relative tolerance `rel_tol` in `x`.
pub fn brent_minimize<F>(mut f: F, low: f64, high: f64, rel_tol: f64, max_iter: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if low <= high { (low, high) } else { (high, low) };
    let abs_floor = 1e-3 * f64::EPSILON.sqrt() * (a.abs() + b.abs()).max(f64::MIN_POSITIVE);

    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d = 0.0_f64;
    let mut e = 0.0_f64;

    for iter in 0..max_iter {
        let m = 0.5 * (a + b);
        let tol1 = rel_tol * x.abs() + abs_floor;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            return Minimum { x, fx, iterations: iter, converged: true };
        }

        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if (u - a) < tol2 || (b - u) < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }

        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);

        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }

    Minimum { x, fx, iterations: max_iter, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let m = brent_minimize(|x| (x - 1.234).powi(2), -10.0, 10.0, 1e-12, 200);
        assert!(m.converged);
        assert!((m.x - 1.234).abs() < 1e-9);
        assert!(m.fx < 1e-17);
    }

    #[test]
    fn non_polynomial() {
        // minimum of x - ln x at x = 1
        let m = brent_minimize(|x| x - x.ln(), 0.01, 50.0, 1e-12, 200);
        assert!((m.x - 1.0).abs() < 1e-8);
    }

    #[test]
    fn boundary_minimum_hugs_endpoint() {
        let m = brent_minimize(|x| x, 2.0, 3.0, 1e-10, 200);
        assert!(m.converged);
        assert!(m.x - 2.0 < 1e-8);
    }

    #[test]
    fn iteration_cap() {
        let m = brent_minimize(|x| (x - 0.3).abs().sqrt(), 0.0, 1.0, 1e-15, 3);
        assert!(!m.converged);
        assert_eq!(m.iterations, 3);
    }
}
