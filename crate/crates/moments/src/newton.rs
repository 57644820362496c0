//! Damped Newton iteration with a finite-difference Jacobian.
//!
//! The residual closure returns `None` outside its domain; the line search
//! then halves the step exactly as it does on a residual increase.

use nalgebra::{DMatrix, DVector};

use crate::{MomentsError, Result, MAX_ITERATIONS, RESIDUAL_TOL};

#[derive(Debug)]
pub(crate) struct Solved {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &b| a.max(b.abs()))
}

fn jacobian<F>(f: &F, x: &[f64], fx: &[f64]) -> Option<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let n = x.len();
    let mut jac = DMatrix::zeros(fx.len(), n);
    let mut probe = x.to_vec();
    for i in 0..n {
        let h = 1e-7 * x[i].abs().max(1e-6);
        probe[i] = x[i] + h;
        let plus = f(&probe);
        probe[i] = x[i] - h;
        let minus = f(&probe);
        probe[i] = x[i];
        let column: Vec<f64> = match (plus, minus) {
            (Some(p), Some(m)) => p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect(),
            (Some(p), None) => p.iter().zip(fx).map(|(a, b)| (a - b) / h).collect(),
            (None, Some(m)) => fx.iter().zip(&m).map(|(a, b)| (a - b) / h).collect(),
            (None, None) => return None,
        };
        for (r, v) in column.into_iter().enumerate() {
            jac[(r, i)] = v;
        }
    }
    Some(jac)
}

/// Solves `f(x) = 0` from `x0`. Iterates until the max-norm residual stops
/// improving or drops well below [`RESIDUAL_TOL`], then checks the tolerance.
pub(crate) fn solve<F>(x0: Vec<f64>, f: F) -> Result<Solved>
where
    F: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let mut x = x0;
    let mut fx = f(&x).ok_or_else(|| {
        MomentsError::Domain("Newton start point lies outside the residual's domain".into())
    })?;
    let mut norm = max_norm(&fx);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && norm > RESIDUAL_TOL * 1e-3 {
        iterations += 1;
        let Some(jac) = jacobian(&f, &x, &fx) else {
            break;
        };
        let rhs = -DVector::from_column_slice(&fx);
        let Some(step) = jac.lu().solve(&rhs) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        while lambda > 1e-12 {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, d)| a + lambda * d).collect();
            if let Some(ft) = f(&trial) {
                let tn = max_norm(&ft);
                if tn < norm {
                    accepted = Some((trial, ft, tn));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((xt, ft, tn)) => {
                x = xt;
                fx = ft;
                norm = tn;
            }
            None => break,
        }
    }
    if norm <= RESIDUAL_TOL {
        Ok(Solved { x, residual: norm, iterations })
    } else {
        Err(MomentsError::NoConvergence { iterations, residual: norm })
    }
}
