/// Bisection on a bracketing interval.
///
/// Returns `None` when `f(lo)` and `f(hi)` have the same strict sign. An
/// endpoint where `f` vanishes is returned as is. Otherwise halves the
/// bracket until it is narrower than `tol` or stops shrinking.
pub fn root_solve(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    assert!(lo < hi, "root_solve needs lo < hi");
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return None;
    }
    let a_negative = fa < 0.0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == a_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}
