use crate::error::{Error, Result};

#[inline]
pub fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub fn neg(a: [f64; 2]) -> [f64; 2] {
    [-a[0], -a[1]]
}

#[inline]
pub fn add(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Rotation by angle `theta`.
#[inline]
pub fn rotate(a: [f64; 2], theta: f64) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    [c * a[0] - s * a[1], s * a[0] + c * a[1]]
}

/// Frequency configuration of one interaction: first input `zeta`, second
/// input `eta`, output `xi = zeta + eta`.
#[derive(Debug, Clone, Copy)]
pub struct Interaction {
    pub zeta: [f64; 2],
    pub eta: [f64; 2],
    pub xi: [f64; 2],
    pub nz: f64,
    pub ne: f64,
    pub nx: f64,
    /// `ζ × η`, which equals `ξ × η` and `ζ × ξ`.
    pub cross: f64,
    /// Cosine of the angle between the inputs.
    pub cos: f64,
}

impl Interaction {
    pub fn new(zeta: [f64; 2], eta: [f64; 2]) -> Result<Self> {
        let xi = add(zeta, eta);
        let (nz, ne, nx) = (norm(zeta), norm(eta), norm(xi));
        let finite = zeta.iter().chain(&eta).all(|v| v.is_finite());
        if !finite || nz == 0.0 || ne == 0.0 || nx == 0.0 {
            return Err(Error::SingularInput(format!(
                "zeta = {zeta:?}, eta = {eta:?}"
            )));
        }
        Ok(Interaction {
            zeta,
            eta,
            xi,
            nz,
            ne,
            nx,
            cross: cross(zeta, eta),
            cos: dot(zeta, eta) / (nz * ne),
        })
    }

    /// Tests whether the inputs are parallel to within rounding.
    pub fn is_parallel(&self) -> bool {
        self.cross.abs() <= 1e-14 * self.nz * self.ne
    }
}
