//! Adaptive Dormand–Prince 5(4) integrator with continuous output.

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Why an integration stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    StepUnderflow,
    NonFinite,
    TooManySteps,
}

/// Diagnostic for a failed integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeFailure {
    pub kind: FailureKind,
    /// Time reached before the failure.
    pub t: f64,
    /// Last attempted step size.
    pub h: f64,
}

/// Step counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

/// Solver settings. The local error estimate of every accepted step satisfies
/// `|err_i| <= atol + rtol * max(|y_i|, |y_new_i|)` for every component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            h_min: 1e-12,
            h_max: f64::INFINITY,
            max_steps: 50_000_000,
        }
    }

    /// Integrates `dy/dt = f(t, y)` from `t0` to `t_end`.
    ///
    /// `observe` is called for each of `sample_times` (ascending, inside
    /// `[t0, t_end]`) with the interpolated state. Returns the final state.
    pub fn solve<F, O>(
        &self,
        mut f: F,
        t0: f64,
        y0: &[f64],
        t_end: f64,
        sample_times: &[f64],
        mut observe: O,
    ) -> Result<(Vec<f64>, OdeStats), OdeFailure>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
        O: FnMut(f64, &[f64]),
    {
        let dim = y0.len();
        let mut stats = OdeStats::default();
        let mut y = y0.to_vec();
        let mut t = t0;
        let mut next_sample = 0;
        while next_sample < sample_times.len() && sample_times[next_sample] <= t0 {
            observe(sample_times[next_sample], &y);
            next_sample += 1;
        }
        if t_end <= t0 {
            return Ok((y, stats));
        }

        let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
        let mut stage = vec![0.0; dim];
        let mut y_new = vec![0.0; dim];
        let mut dense = vec![vec![0.0; dim]; 5];
        let mut interp = vec![0.0; dim];

        f(t, &y, &mut k[0]);
        stats.evaluations += 1;
        let mut h = self.initial_step(&mut f, t, &y, &k[0], t_end - t0, &mut stats);
        let mut last_rejected = false;

        loop {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(OdeFailure { kind: FailureKind::TooManySteps, t, h });
            }
            let remaining = t_end - t;
            let mut last = false;
            if h >= remaining {
                h = remaining;
                last = true;
            }
            if h < self.h_min && !last {
                return Err(OdeFailure { kind: FailureKind::StepUnderflow, t, h });
            }

            for s in 1..7 {
                for i in 0..dim {
                    let mut acc = 0.0;
                    for (j, a) in A[s][..s].iter().enumerate() {
                        acc += a * k[j][i];
                    }
                    stage[i] = y[i] + h * acc;
                }
                f(t + C[s] * h, &stage, &mut k[s]);
                stats.evaluations += 1;
                if s == 6 {
                    y_new.copy_from_slice(&stage);
                }
            }

            let mut err: f64 = 0.0;
            let mut finite = true;
            for i in 0..dim {
                let mut e = 0.0;
                for (j, ej) in E.iter().enumerate() {
                    e += ej * k[j][i];
                }
                e *= h;
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                let r = (e / scale).abs();
                if !r.is_finite() || !y_new[i].is_finite() {
                    finite = false;
                }
                err = err.max(r);
            }

            if !finite {
                stats.rejected += 1;
                h *= 0.2;
                last_rejected = true;
                if h < self.h_min {
                    return Err(OdeFailure { kind: FailureKind::NonFinite, t, h });
                }
                continue;
            }

            if err <= 1.0 {
                stats.accepted += 1;
                let t_new = if last { t_end } else { t + h };
                if next_sample < sample_times.len() && sample_times[next_sample] <= t_new {
                    for i in 0..dim {
                        let diff = y_new[i] - y[i];
                        let bspl = h * k[0][i] - diff;
                        dense[0][i] = y[i];
                        dense[1][i] = diff;
                        dense[2][i] = bspl;
                        dense[3][i] = diff - h * k[6][i] - bspl;
                        let mut acc = 0.0;
                        for (j, dj) in D.iter().enumerate() {
                            acc += dj * k[j][i];
                        }
                        dense[4][i] = h * acc;
                    }
                    while next_sample < sample_times.len() && sample_times[next_sample] <= t_new {
                        let ts = sample_times[next_sample];
                        if ts == t_new {
                            observe(ts, &y_new);
                        } else {
                            let s = (ts - t) / h;
                            let s1 = 1.0 - s;
                            for i in 0..dim {
                                interp[i] = dense[0][i]
                                    + s * (dense[1][i]
                                        + s1 * (dense[2][i] + s * (dense[3][i] + s1 * dense[4][i])));
                            }
                            observe(ts, &interp);
                        }
                        next_sample += 1;
                    }
                }
                y.copy_from_slice(&y_new);
                t = t_new;
                k.swap(0, 6);
                if last {
                    return Ok((y, stats));
                }
                let mut factor = if err == 0.0 { 10.0 } else { 0.9 * err.powf(-0.2) };
                factor = factor.clamp(0.2, 10.0);
                if last_rejected {
                    factor = factor.min(1.0);
                }
                h = (h * factor).min(self.h_max);
                last_rejected = false;
            } else {
                stats.rejected += 1;
                h *= (0.9 * err.powf(-0.2)).max(0.2);
                last_rejected = true;
            }
        }
    }

    fn initial_step<F>(
        &self,
        f: &mut F,
        t: f64,
        y: &[f64],
        dy: &[f64],
        span: f64,
        stats: &mut OdeStats,
    ) -> f64
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let dim = y.len();
        let scale: Vec<f64> = y.iter().map(|v| self.atol + self.rtol * v.abs()).collect();
        let rms = |v: &[f64]| -> f64 {
            let s: f64 = v.iter().zip(&scale).map(|(a, s)| (a / s).powi(2)).sum();
            (s / dim.max(1) as f64).sqrt()
        };
        let d0 = rms(y);
        let d1 = rms(dy);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 * span } else { 0.01 * d0 / d1 };
        let h0 = h0.min(span);
        let y1: Vec<f64> = y.iter().zip(dy).map(|(a, b)| a + h0 * b).collect();
        let mut dy1 = vec![0.0; dim];
        f(t + h0, &y1, &mut dy1);
        stats.evaluations += 1;
        let diff: Vec<f64> = dy1.iter().zip(dy).map(|(a, b)| a - b).collect();
        let d2 = rms(&diff) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6 * span)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(self.h_max).max(self.h_min)
    }
}
