//! Envelope oracle for oscillating traces: sliding-window oscillation
//! amplitude, collapse detection, and revival-peak location.

use crate::jc::InversionTrace;

/// Oscillation amplitude `(max - min)/2` over a window of width `window`
/// centered at every sample, computed with monotonic deques in O(n).
pub fn sliding_amplitude(trace: &InversionTrace, window: f64) -> Vec<f64> {
    let n = trace.len();
    let half = window / 2.0;
    let t = &trace.t;
    let w = &trace.w;

    let mut out = vec![0.0; n];
    let mut max_dq: std::collections::VecDeque<usize> = Default::default();
    let mut min_dq: std::collections::VecDeque<usize> = Default::default();
    let mut lo = 0usize;
    let mut hi = 0usize;
    for i in 0..n {
        let left = t[i] - half;
        let right = t[i] + half;
        while hi < n && t[hi] <= right {
            while max_dq.back().is_some_and(|&j| w[j] <= w[hi]) {
                max_dq.pop_back();
            }
            max_dq.push_back(hi);
            while min_dq.back().is_some_and(|&j| w[j] >= w[hi]) {
                min_dq.pop_back();
            }
            min_dq.push_back(hi);
            hi += 1;
        }
        while t[lo] < left {
            if max_dq.front() == Some(&lo) {
                max_dq.pop_front();
            }
            if min_dq.front() == Some(&lo) {
                min_dq.pop_front();
            }
            lo += 1;
        }
        out[i] = (w[*max_dq.front().unwrap()] - w[*min_dq.front().unwrap()]) / 2.0;
    }
    out
}

/// Oscillation amplitude `(max - min)/2` over one closed time interval.
pub fn window_amplitude(trace: &InversionTrace, t_lo: f64, t_hi: f64) -> f64 {
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for (&t, &w) in trace.t.iter().zip(&trace.w) {
        if t >= t_lo && t <= t_hi {
            max = max.max(w);
            min = min.min(w);
        }
    }
    assert!(max.is_finite(), "empty window [{t_lo}, {t_hi}]");
    (max - min) / 2.0
}

/// Smallest sliding amplitude and its location inside `[t_lo, t_hi]`.
pub fn min_amplitude_in(trace: &InversionTrace, window: f64, t_lo: f64, t_hi: f64) -> (f64, f64) {
    let env = sliding_amplitude(trace, window);
    trace
        .t
        .iter()
        .zip(&env)
        .filter(|(&t, _)| t >= t_lo && t <= t_hi)
        .map(|(&t, &a)| (t, a))
        .fold((f64::NAN, f64::INFINITY), |acc, (t, a)| {
            if a < acc.1 {
                (t, a)
            } else {
                acc
            }
        })
}

/// Location and height of the largest sliding-amplitude peak at `t >= t_lo`.
/// Searching after the collapse has completed makes this the first (and
/// strongest) revival.
pub fn revival_peak(trace: &InversionTrace, window: f64, t_lo: f64) -> (f64, f64) {
    let env = sliding_amplitude(trace, window);
    trace
        .t
        .iter()
        .zip(&env)
        .filter(|(&t, _)| t >= t_lo)
        .map(|(&t, &a)| (t, a))
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, (t, a)| {
            if a > acc.1 {
                (t, a)
            } else {
                acc
            }
        })
}
