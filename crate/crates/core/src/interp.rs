/// Piecewise-linear interpolation over `(x, y)` knots sorted by `x`.
/// Outside the knot range the end values are held flat.
pub(crate) fn linear(knots: &[(f64, f64)], x: f64) -> f64 {
    debug_assert!(!knots.is_empty());
    let (x0, y0) = knots[0];
    if x <= x0 {
        return y0;
    }
    let (xn, yn) = knots[knots.len() - 1];
    if x >= xn {
        return yn;
    }
    let hi = knots.partition_point(|&(kx, _)| kx <= x);
    let (xa, ya) = knots[hi - 1];
    let (xb, yb) = knots[hi];
    if x == xa {
        return ya;
    }
    let t = (x - xa) / (xb - xa);
    ya + t * (yb - ya)
}
