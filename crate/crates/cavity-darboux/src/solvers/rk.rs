//! Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for complex-valued
//! first-order systems, with dense output: the step sequence is chosen by
//! the error controller alone, and requested grid points are filled in from
//! the method's continuous extension. Output density therefore never
//! perturbs the trajectory.

use num_complex::Complex64 as C64;

use super::SolverError;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// difference between the 5th- and embedded 4th-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// dense-output weights of the continuous extension
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Right-hand side contract: fill `dy` with the derivative at `(t, y)`.
/// Errors abort the integration and surface with the failing time attached.
pub trait Rhs {
    fn eval(&mut self, t: f64, y: &[C64], dy: &mut [C64]) -> Result<(), SolverError>;
}

impl<F> Rhs for F
where
    F: FnMut(f64, &[C64], &mut [C64]) -> Result<(), SolverError>,
{
    fn eval(&mut self, t: f64, y: &[C64], dy: &mut [C64]) -> Result<(), SolverError> {
        self(t, y, dy)
    }
}

/// Dormand-Prince 5(4) driver.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    /// Hard cap on the step size; useful for convergence-order measurements.
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 {
            rtol: 1e-10,
            atol: 1e-12,
            h_max: f64::INFINITY,
            max_steps: 50_000_000,
        }
    }
}

impl Dopri5 {
    /// Integrates from `grid[0]` (where `y0` is given) and returns the state
    /// at every grid point. The grid must be strictly increasing.
    pub fn integrate<R: Rhs>(
        &self,
        mut rhs: R,
        y0: &[C64],
        grid: &[f64],
    ) -> Result<Vec<Vec<C64>>, SolverError> {
        assert!(!grid.is_empty(), "output grid is empty");
        assert!(
            grid.windows(2).all(|p| p[0] < p[1]),
            "output grid must be strictly increasing"
        );
        let dim = y0.len();
        let t0 = grid[0];
        let span = grid[grid.len() - 1] - t0;
        let mut out = Vec::with_capacity(grid.len());
        out.push(y0.to_vec());
        if grid.len() == 1 {
            return Ok(out);
        }

        let mut t = t0;
        let mut y = y0.to_vec();
        let mut k: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); dim]; 7];
        let mut y_stage = vec![C64::new(0.0, 0.0); dim];
        let mut y_new = vec![C64::new(0.0, 0.0); dim];
        rhs.eval(t, &y, &mut k[0])?;

        let mut next_out = 1usize;
        let mut h = (span * 1e-4).min(self.h_max);
        let h_floor = 1e-14 * span;
        let mut steps = 0usize;

        while next_out < grid.len() {
            steps += 1;
            if steps > self.max_steps || h < h_floor {
                return Err(SolverError::StepUnderflow { t, h });
            }

            // stages 2..7 (k1 is fresh from FSAL or the initial evaluation)
            stage(&y, &[(A21, &k[0])], h, &mut y_stage);
            rhs.eval(t + C2 * h, &y_stage, &mut k[1])?;
            stage(&y, &[(A31, &k[0]), (A32, &k[1])], h, &mut y_stage);
            rhs.eval(t + C3 * h, &y_stage, &mut k[2])?;
            stage(
                &y,
                &[(A41, &k[0]), (A42, &k[1]), (A43, &k[2])],
                h,
                &mut y_stage,
            );
            rhs.eval(t + C4 * h, &y_stage, &mut k[3])?;
            stage(
                &y,
                &[(A51, &k[0]), (A52, &k[1]), (A53, &k[2]), (A54, &k[3])],
                h,
                &mut y_stage,
            );
            rhs.eval(t + C5 * h, &y_stage, &mut k[4])?;
            stage(
                &y,
                &[
                    (A61, &k[0]),
                    (A62, &k[1]),
                    (A63, &k[2]),
                    (A64, &k[3]),
                    (A65, &k[4]),
                ],
                h,
                &mut y_stage,
            );
            rhs.eval(t + h, &y_stage, &mut k[5])?;
            stage(
                &y,
                &[
                    (B1, &k[0]),
                    (B3, &k[2]),
                    (B4, &k[3]),
                    (B5, &k[4]),
                    (B6, &k[5]),
                ],
                h,
                &mut y_new,
            );
            // k7 = f(t+h, y_new), reused as k1 after acceptance (FSAL)
            rhs.eval(t + h, &y_new, &mut k[6])?;

            // scaled RMS error over components
            let mut err_sq = 0.0f64;
            for idx in 0..dim {
                let e = h
                    * (E1 * k[0][idx]
                        + E3 * k[2][idx]
                        + E4 * k[3][idx]
                        + E5 * k[4][idx]
                        + E6 * k[5][idx]
                        + E7 * k[6][idx]);
                let scale = self.atol + self.rtol * y[idx].norm().max(y_new[idx].norm());
                err_sq += (e.norm() / scale).powi(2);
            }
            let err = (err_sq / dim as f64).sqrt();

            if err <= 1.0 {
                // continuous extension over [t, t+h], evaluated for every
                // grid point the step has covered
                while next_out < grid.len() && grid[next_out] <= t + h {
                    let theta = (grid[next_out] - t) / h;
                    if theta == 1.0 {
                        out.push(y_new.clone());
                    } else {
                        out.push(dense_eval(&y, &y_new, &k, h, theta));
                    }
                    next_out += 1;
                }
                t += h;
                std::mem::swap(&mut y, &mut y_new);
                k.swap(0, 6);
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h = (h * factor).min(self.h_max);
            } else {
                h *= (0.9 * err.powf(-0.2)).max(0.2);
                // k1 still matches (t, y); nothing to re-evaluate
            }
        }
        Ok(out)
    }
}

fn stage(y: &[C64], contributions: &[(f64, &Vec<C64>)], h: f64, out: &mut [C64]) {
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (coeff, k) in contributions {
            acc += *coeff * k[idx];
        }
        *slot = y[idx] + h * acc;
    }
}

/// Fifth-method continuous extension at fraction `theta` of the step.
fn dense_eval(y: &[C64], y_new: &[C64], k: &[Vec<C64>], h: f64, theta: f64) -> Vec<C64> {
    let dim = y.len();
    let mut out = vec![C64::new(0.0, 0.0); dim];
    for idx in 0..dim {
        let ydiff = y_new[idx] - y[idx];
        let bspl = h * k[0][idx] - ydiff;
        let c1 = y[idx];
        let c2 = ydiff;
        let c3 = bspl;
        let c4 = ydiff - h * k[6][idx] - bspl;
        let c5 = h
            * (D1 * k[0][idx]
                + D3 * k[2][idx]
                + D4 * k[3][idx]
                + D5 * k[4][idx]
                + D6 * k[5][idx]
                + D7 * k[6][idx]);
        out[idx] = c1 + theta * (c2 + (1.0 - theta) * (c3 + theta * (c4 + (1.0 - theta) * c5)));
    }
    out
}

/// Independent integration oracle: adaptive Dormand-Prince 5(4) with output
/// at the given grid points, local error controlled by `rtol`/`atol`.
pub fn rk_oracle<R: Rhs>(
    rhs: R,
    ic: &[C64],
    grid: &[f64],
    rtol: f64,
    atol: f64,
) -> Result<Vec<Vec<C64>>, SolverError> {
    Dopri5 {
        rtol,
        atol,
        ..Dopri5::default()
    }
    .integrate(rhs, ic, grid)
}
