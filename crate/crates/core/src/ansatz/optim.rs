//! Small unconstrained minimizers.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct OptResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best objective value after each iteration.
    pub trace: Vec<f64>,
}

/// Nelder–Mead with dimension-adaptive coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub max_iter: usize,
    pub initial_step: f64,
    /// Stop when the spread of simplex values falls below this.
    pub ftol: f64,
    pub xtol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_iter: 2000,
            initial_step: 0.5,
            ftol: 1e-10,
            xtol: 1e-8,
        }
    }
}

impl NelderMead {
    /// Iteration budget of 200 per parameter, never below 2000.
    pub fn scaled_budget(n_params: usize) -> usize {
        (200 * n_params).max(2000)
    }

    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> OptResult {
        let n = x0.len();
        let mut evals = 0;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            f(x)
        };
        if n == 0 {
            let v = eval(x0, &mut evals);
            return OptResult {
                x: vec![],
                f: v,
                iterations: 0,
                evaluations: evals,
                converged: true,
                trace: vec![v],
            };
        }
        let nf = n as f64;
        let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

        let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += self.initial_step;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();
        let mut trace = vec![];
        let mut converged = false;
        let mut iterations = 0;

        while iterations < self.max_iter {
            iterations += 1;
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread = values[n] - values[0];
            let size = simplex[1..]
                .iter()
                .map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if spread <= self.ftol && size <= self.xtol {
                converged = true;
                trace.push(values[0]);
                break;
            }

            let mut centroid = vec![0.0; n];
            for v in &simplex[..n] {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x / nf;
                }
            }
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let xr = along(alpha);
            let fr = eval(&xr, &mut evals);
            if fr < values[0] {
                let xe = along(alpha * gamma);
                let fe = eval(&xe, &mut evals);
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
            } else if fr < values[n - 1] {
                simplex[n] = xr;
                values[n] = fr;
            } else {
                let (xc, fc) = if fr < values[n] {
                    let xc = along(alpha * rho);
                    let fc = eval(&xc, &mut evals);
                    (xc, fc)
                } else {
                    let xc = along(-rho);
                    let fc = eval(&xc, &mut evals);
                    (xc, fc)
                };
                if fc < values[n].min(fr) {
                    simplex[n] = xc;
                    values[n] = fc;
                } else {
                    let best = simplex[0].clone();
                    for i in 1..=n {
                        for (x, b) in simplex[i].iter_mut().zip(&best) {
                            *x = b + sigma * (*x - b);
                        }
                        values[i] = eval(&simplex[i], &mut evals);
                    }
                }
            }
            trace.push(values.iter().copied().fold(f64::INFINITY, f64::min));
        }
        let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
        OptResult {
            x: simplex[best].clone(),
            f: values[best],
            iterations,
            evaluations: evals,
            converged,
            trace,
        }
    }
}

/// Exact coordinate minimization for objectives of the form
/// `a·cos θ_k + b·sin θ_k + c` in every coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotosolve {
    pub max_sweeps: usize,
    pub ftol: f64,
}

impl Default for Rotosolve {
    fn default() -> Self {
        Rotosolve {
            max_sweeps: 200,
            ftol: 1e-10,
        }
    }
}

impl Rotosolve {
    /// One iteration is one coordinate update.
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> OptResult {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let mut x = x0.to_vec();
        let mut fx = f(&x);
        let mut evals = 1;
        let mut trace = vec![];
        let mut converged = false;
        let mut iterations = 0;
        for _ in 0..self.max_sweeps {
            let start = fx;
            for k in 0..x.len() {
                let t0 = x[k];
                x[k] = t0 + half_pi;
                let fp = f(&x);
                x[k] = t0 - half_pi;
                let fm = f(&x);
                evals += 2;
                let t = t0 - half_pi - (2.0 * fx - fp - fm).atan2(fp - fm);
                x[k] = wrap_angle(t);
                let ft = f(&x);
                evals += 1;
                if ft <= fx {
                    fx = ft;
                } else {
                    x[k] = t0;
                }
                iterations += 1;
                trace.push(fx);
            }
            if start - fx < self.ftol {
                converged = true;
                break;
            }
        }
        OptResult {
            x,
            f: fx,
            iterations,
            evaluations: evals,
            converged,
            trace,
        }
    }
}

/// Maps an angle into `(−π, π]`.
pub fn wrap_angle(t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = t.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Quasi-Newton minimization with a backtracking Armijo line search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bfgs {
    pub max_iter: usize,
    pub gtol: f64,
    pub ftol: f64,
}

impl Default for Bfgs {
    fn default() -> Self {
        Bfgs {
            max_iter: 500,
            gtol: 1e-7,
            ftol: 1e-13,
        }
    }
}

impl Bfgs {
    /// `fg` returns the value and fills the gradient.
    pub fn minimize<F: FnMut(&[f64], &mut [f64]) -> f64>(&self, mut fg: F, x0: &[f64]) -> OptResult {
        let n = x0.len();
        let mut x = DVector::from_column_slice(x0);
        let mut g = DVector::zeros(n);
        let mut fx = fg(x.as_slice(), g.as_mut_slice());
        let mut evals = 1;
        let mut hinv = DMatrix::<f64>::identity(n, n);
        let mut trace = vec![fx];
        let mut converged = false;
        let mut iterations = 0;
        let mut g_new = DVector::zeros(n);

        while iterations < self.max_iter {
            if g.amax() <= self.gtol {
                converged = true;
                break;
            }
            iterations += 1;
            let mut d = -(&hinv * &g);
            let mut slope = g.dot(&d);
            if slope >= 0.0 {
                hinv = DMatrix::identity(n, n);
                d = -g.clone();
                slope = g.dot(&d);
            }
            let mut step = 1.0;
            let (x_new, f_new) = loop {
                let trial = &x + step * &d;
                let ft = fg(trial.as_slice(), g_new.as_mut_slice());
                evals += 1;
                if ft <= fx + 1e-4 * step * slope || step < 1e-12 {
                    break (trial, ft);
                }
                step *= 0.5;
            };
            let s = &x_new - &x;
            let y = &g_new - &g;
            let sy = s.dot(&y);
            let df = fx - f_new;
            x = x_new;
            fx = f_new;
            g.copy_from(&g_new);
            trace.push(fx);
            if sy > 1e-14 {
                let rho = 1.0 / sy;
                let hy = &hinv * &y;
                let yhy = y.dot(&hy);
                hinv += (rho * rho * yhy + rho) * (&s * s.transpose())
                    - rho * (&hy * s.transpose() + &s * hy.transpose());
            }
            if df.abs() < self.ftol && g.amax() <= self.gtol.sqrt() {
                converged = true;
                break;
            }
        }
        if g.amax() <= self.gtol {
            converged = true;
        }
        OptResult {
            x: x.as_slice().to_vec(),
            f: fx,
            iterations,
            evaluations: evals,
            converged,
            trace,
        }
    }
}
