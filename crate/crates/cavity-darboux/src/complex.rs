//! Complex scalar utilities, chiefly the explicit principal square root
//! written in terms of the real and imaginary parts.

use num_complex::Complex64 as C64;

/// Principal square root of `z = a + ib` from the explicit real-pair form
///
/// ```text
/// p = sqrt((hypot(a, b) + a) / 2),   q = sgn(b) * sqrt((hypot(a, b) - a) / 2),
/// ```
///
/// so that `(p + iq)^2 = z` and `p >= 0`. For `b = 0` the formula above is
/// not defined by the sign rule, so the real axis is handled directly:
/// `sqrt(a)` for `a >= 0` and `i*sqrt(-a)` for `a < 0`, which is the
/// continuous `b -> 0+` limit.
pub fn csqrt(z: C64) -> C64 {
    let (a, b) = (z.re, z.im);
    debug_assert!(a.is_finite() && b.is_finite(), "csqrt: non-finite input");
    if b == 0.0 {
        return if a >= 0.0 {
            C64::new(a.sqrt(), 0.0)
        } else {
            C64::new(0.0, (-a).sqrt())
        };
    }
    let r = a.hypot(b);
    // Evaluate whichever of (r ± a) is free of cancellation and recover the
    // other component through p q = b/2, which the closed forms satisfy
    // exactly; evaluating both square roots directly loses relative accuracy
    // in p q when |b| << |a|.
    if a >= 0.0 {
        let p = ((r + a) / 2.0).sqrt();
        C64::new(p, b / (2.0 * p))
    } else {
        let q = b.signum() * ((r - a) / 2.0).sqrt();
        C64::new(b / (2.0 * q), q)
    }
}
