//! Sign-change scanning and bisection on a closed interval.

/// Bisects a bracket `[a, b]` with `f(a)·f(b) ≤ 0` until its width is at most
/// `tol` (or no longer shrinks in floating point). Returns whichever end of
/// the final bracket has the smaller `|f|`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    bisect_with_residual(f, a, b, tol, f64::INFINITY)
}

/// Like [`bisect`], but keeps halving past `tol` until the better end also
/// has `|f| ≤ ftol`, stopping only when the bracket cannot shrink further.
pub fn bisect_with_residual<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    ftol: f64,
) -> f64 {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa.signum() != fb.signum(), "bracket without sign change");
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        if (b - a).abs() <= tol && fa.abs().min(fb.abs()) <= ftol {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    if fa.abs() <= fb.abs() {
        a
    } else {
        b
    }
}

/// All sign changes of `f` between consecutive points of a uniform
/// `n`-point grid on `[lo, hi]`, each refined by [`bisect`] to width `tol`.
/// Roots are returned in ascending order.
pub fn scan_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, tol: f64) -> Vec<f64> {
    scan_roots_with_residual(f, lo, hi, n, tol, f64::INFINITY)
}

/// [`scan_roots`] with each root refined by [`bisect_with_residual`].
pub fn scan_roots_with_residual<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n: usize,
    tol: f64,
    ftol: f64,
) -> Vec<f64> {
    assert!(n >= 2, "scan needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    let grid = |k: usize| if k == n - 1 { hi } else { lo + step * k as f64 };

    let mut roots = Vec::new();
    let mut x_prev = grid(0);
    let mut f_prev = f(x_prev);
    if f_prev == 0.0 {
        roots.push(x_prev);
    }
    for k in 1..n {
        let x = grid(k);
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0
            && f_prev.signum() != fx.signum()
            && fx.is_finite()
            && f_prev.is_finite()
        {
            roots.push(bisect_with_residual(&f, x_prev, x, tol, ftol));
        }
        x_prev = x;
        f_prev = fx;
    }
    roots
}
