use super::fft;
use super::grid::Grid;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex field on a periodic grid, stored by its Fourier coefficients
/// under the convention `f(x) = Σ_ξ c_ξ e^{i x·ξ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        SpectralField {
            grid,
            coeffs: vec![ZERO; grid.len()],
        }
    }

    /// Wraps coefficients given in FFT order. Nyquist entries are cleared.
    pub fn from_coeffs(grid: Grid, mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        for (idx, c) in coeffs.iter_mut().enumerate() {
            if grid.is_nyquist(idx) {
                *c = ZERO;
            }
        }
        Ok(SpectralField { grid, coeffs })
    }

    /// Transforms physical samples (row index = first coordinate).
    pub fn from_physical(grid: Grid, values: &[Complex64]) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        let mut data = values.to_vec();
        fft::transform(grid.n()).forward(&mut data);
        Self::from_coeffs(grid, data)
    }

    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self> {
        let data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::from_physical(grid, &data)
    }

    /// Samples a function of the physical position `(x1, x2)`, with
    /// coordinates wrapped into `[-L/2, L/2)` around sample 0.
    pub fn from_function(grid: Grid, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let n = grid.n();
        let mut data = Vec::with_capacity(grid.len());
        for i1 in 0..n {
            let x1 = grid.coordinate(i1);
            for i2 in 0..n {
                data.push(f(x1, grid.coordinate(i2)));
            }
        }
        Self::from_physical(grid, &data)
    }

    /// Builds coefficients from a function of the physical frequency.
    pub fn from_spectrum(grid: Grid, f: impl Fn([f64; 2]) -> Complex64) -> Self {
        let coeffs = (0..grid.len())
            .map(|idx| {
                if grid.is_nyquist(idx) {
                    ZERO
                } else {
                    f(grid.frequency(idx))
                }
            })
            .collect();
        SpectralField { grid, coeffs }
    }

    /// Single Fourier mode `amplitude · e^{i x·ξ}` at integer wavenumbers.
    pub fn mode(grid: Grid, k1: i64, k2: i64, amplitude: Complex64) -> Self {
        let mut f = Self::zeros(grid);
        f.set(k1, k2, amplitude);
        f
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, k1: i64, k2: i64) -> Complex64 {
        self.coeffs[self.grid.flat_of(k1, k2)]
    }

    /// Sets one coefficient; writes to Nyquist entries are ignored.
    pub fn set(&mut self, k1: i64, k2: i64, value: Complex64) {
        let idx = self.grid.flat_of(k1, k2);
        if !self.grid.is_nyquist(idx) {
            self.coeffs[idx] = value;
        }
    }

    /// Physical samples, row index = first coordinate.
    pub fn to_physical(&self) -> Vec<Complex64> {
        let mut data = self.coeffs.clone();
        fft::transform(self.grid.n()).inverse(&mut data);
        data
    }

    pub fn check_same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.grid.n(),
                self.grid.length(),
                other.grid.n(),
                other.grid.length()
            )));
        }
        Ok(())
    }

    /// Multiplies every coefficient by `symbol(ξ)`.
    pub fn map_symbol(&self, symbol: impl Fn([f64; 2]) -> Complex64) -> SpectralField {
        let grid = self.grid;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                if c == ZERO {
                    ZERO
                } else {
                    c * symbol(grid.frequency(idx))
                }
            })
            .collect();
        SpectralField { grid, coeffs }
    }

    /// Complex conjugate in physical space: `c'_ξ = conj(c_{-ξ})`.
    pub fn conj(&self) -> SpectralField {
        let grid = self.grid;
        let coeffs = (0..grid.len())
            .map(|idx| {
                if grid.is_nyquist(idx) {
                    ZERO
                } else {
                    let (k1, k2) = grid.integer_frequency(idx);
                    self.coeffs[grid.flat_of(-k1, -k2)].conj()
                }
            })
            .collect();
        SpectralField { grid, coeffs }
    }

    /// Physical-space real part `(f + f̄)/2`.
    pub fn real_part(&self) -> SpectralField {
        (self + &self.conj()).scale(0.5)
    }

    /// Physical-space imaginary part `(f − f̄)/(2i)`.
    pub fn imag_part(&self) -> SpectralField {
        (self - &self.conj()).scale_complex(Complex64::new(0.0, -0.5))
    }

    pub fn scale(&self, s: f64) -> SpectralField {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: Complex64) -> SpectralField {
        SpectralField {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// `self += s · other`.
    pub fn axpy(&mut self, s: Complex64, other: &SpectralField) {
        assert_eq!(self.grid, other.grid, "grid mismatch in axpy");
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn zero_mode(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Removes the mean (zero mode).
    pub fn without_mean(mut self) -> SpectralField {
        self.coeffs[0] = ZERO;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// `∫ conj(f) g dx = L² Σ conj(f̂) ĝ`.
    pub fn inner(&self, other: &SpectralField) -> Complex64 {
        assert_eq!(self.grid, other.grid, "grid mismatch in inner product");
        let l2 = self.grid.length() * self.grid.length();
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * l2
    }

    /// Squared coefficient sum `Σ |c_ξ|²`.
    pub fn coeff_norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Physical `L²` norm, `L · sqrt(Σ |c_ξ|²)`.
    pub fn l2_norm(&self) -> f64 {
        self.grid.length() * self.coeff_norm_sqr().sqrt()
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest physical-space modulus.
    pub fn linf_norm(&self) -> f64 {
        self.to_physical().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest physical-space imaginary part.
    pub fn max_imag(&self) -> f64 {
        self.to_physical().iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Relative `L²` distance `‖self − other‖ / max(‖other‖, floor)`.
    pub fn rel_distance(&self, other: &SpectralField, floor: f64) -> f64 {
        (self - other).l2_norm() / other.l2_norm().max(floor)
    }

    /// Copies coefficients into another grid with the same lattice spacing,
    /// keeping only wavenumbers representable on both (strictly inside the
    /// smaller grid's Nyquist band).
    pub fn resample(&self, target: Grid) -> Result<SpectralField> {
        if (target.length() - self.grid.length()).abs() > 1e-12 * self.grid.length() {
            return Err(Error::GridMismatch(
                "resampling requires equal side lengths".into(),
            ));
        }
        let h = (self.grid.n().min(target.n()) / 2) as i64;
        let mut out = SpectralField::zeros(target);
        for k1 in (1 - h)..h {
            for k2 in (1 - h)..h {
                out.set(k1, k2, self.get(k1, k2));
            }
        }
        Ok(out)
    }
}

impl<'a> Add<&'a SpectralField> for &'a SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &'a SpectralField) -> SpectralField {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a SpectralField> for &'a SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &'a SpectralField) -> SpectralField {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for SpectralField {
    type Output = SpectralField;
    fn add(mut self, rhs: SpectralField) -> SpectralField {
        self += &rhs;
        self
    }
}

impl Sub for SpectralField {
    type Output = SpectralField;
    fn sub(mut self, rhs: SpectralField) -> SpectralField {
        self -= &rhs;
        self
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in addition");
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&SpectralField> for SpectralField {
    fn sub_assign(&mut self, rhs: &SpectralField) {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in subtraction");
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: Complex64) -> SpectralField {
        self.scale_complex(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_mode_samples_exponential() {
        let g = Grid::new(16, 2.0 * PI).unwrap();
        let f = SpectralField::mode(g, 2, -3, Complex64::new(1.0, 0.0));
        let phys = f.to_physical();
        for i1 in 0..16 {
            for i2 in 0..16 {
                let x1 = g.coordinate(i1);
                let x2 = g.coordinate(i2);
                let expect = Complex64::from_polar(1.0, 2.0 * x1 - 3.0 * x2);
                assert!((phys[g.flat(i1, i2)] - expect).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn conj_matches_physical_conjugate() {
        let g = Grid::new(16, 5.0).unwrap();
        let f = SpectralField::from_function(g, |x, y| {
            Complex64::new((x * 0.7).sin() + y.cos(), (x + y).sin())
        })
        .unwrap();
        let a: Vec<Complex64> = f.to_physical().iter().map(|c| c.conj()).collect();
        let b = f.conj().to_physical();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn inner_product_is_physical_integral() {
        let g = Grid::new(16, 3.0).unwrap();
        let f = SpectralField::mode(g, 1, 2, Complex64::new(0.5, -0.25));
        let expect = 9.0 * (0.25 + 0.0625);
        assert!((f.inner(&f).re - expect).abs() < 1e-13);
        assert!((f.l2_norm().powi(2) - expect).abs() < 1e-13);
    }

    #[test]
    fn resample_keeps_shared_modes() {
        let g = Grid::new(32, 10.0).unwrap();
        let h = Grid::new(16, 10.0).unwrap();
        let mut f = SpectralField::mode(g, 3, -4, Complex64::new(1.0, 2.0));
        f.set(12, 0, Complex64::new(1.0, 0.0));
        let r = f.resample(h).unwrap();
        assert_eq!(r.get(3, -4), Complex64::new(1.0, 2.0));
        assert!((r.coeff_norm_sqr() - 5.0).abs() < 1e-15);
        assert!(f.resample(Grid::new(16, 11.0).unwrap()).is_err());
    }
}
