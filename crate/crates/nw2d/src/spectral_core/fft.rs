//! Cached two-dimensional FFT plans.
//!
//! Rows are transformed independently (in parallel for large grids), then the
//! array is transposed and the rows transformed again. Every output value is
//! produced by the same sequence of floating-point operations regardless of
//! the thread count, so results are bit-for-bit reproducible.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Grids at or above this size transform their rows in parallel.
const PARALLEL_MIN_N: usize = 128;

pub struct Transform2d {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plan_cache() -> &'static Mutex<HashMap<usize, Arc<Transform2d>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transform2d>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared transform for an `n × n` grid.
pub fn transform(n: usize) -> Arc<Transform2d> {
    let mut cache = plan_cache().lock().expect("fft plan cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Transform2d {
                n,
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

impl Transform2d {
    fn rows(&self, plan: &Arc<dyn Fft<f64>>, data: &mut [Complex64]) {
        let n = self.n;
        let scratch_len = plan.get_inplace_scratch_len();
        if n >= PARALLEL_MIN_N {
            let rows_per_task = (n / 16).max(1);
            data.par_chunks_mut(n * rows_per_task).for_each(|block| {
                let mut scratch = vec![Complex64::new(0.0, 0.0); scratch_len];
                for row in block.chunks_exact_mut(n) {
                    plan.process_with_scratch(row, &mut scratch);
                }
            });
        } else {
            let mut scratch = vec![Complex64::new(0.0, 0.0); scratch_len];
            for row in data.chunks_exact_mut(n) {
                plan.process_with_scratch(row, &mut scratch);
            }
        }
    }

    fn transpose(&self, data: &mut [Complex64]) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                data.swap(i * n + j, j * n + i);
            }
        }
    }

    fn both_axes(&self, plan: &Arc<dyn Fft<f64>>, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.n * self.n, "buffer does not match grid");
        self.rows(plan, data);
        self.transpose(data);
        self.rows(plan, data);
        self.transpose(data);
    }

    /// Physical samples to coefficients: `c_k = n⁻² Σ_x f(x) e^{-i k·x}`.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.both_axes(&self.forward, data);
        let scale = 1.0 / (self.n * self.n) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    /// Coefficients to physical samples: `f(x) = Σ_k c_k e^{i k·x}`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.both_axes(&self.inverse, data);
    }
}
