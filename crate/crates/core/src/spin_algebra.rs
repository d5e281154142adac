//! Spin operators, rotations and projections for an arbitrary spin length.
//!
//! Basis vectors are ordered by decreasing projection, `index i <-> M = S - i`,
//! so `S_z = diag(S, S-1, ..., -S)`. All operators are dense; the supported
//! envelope is `2S <= 100`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported `2S` (Hilbert dimension 101).
pub const MAX_TWO_S: u32 = 100;

/// Dense complex operator on the `2S + 1` dimensional spin space.
pub type Operator = DMatrix<Complex64>;

/// Spin length stored as the integer `2S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinLength(u32);

impl SpinLength {
    pub fn new(two_s: u32) -> Result<Self> {
        if two_s == 0 {
            return Err(Error::InvalidSpinLength(two_s));
        }
        if two_s > MAX_TWO_S {
            return Err(Error::SpinTooLarge {
                two_s,
                max: MAX_TWO_S,
            });
        }
        Ok(Self(two_s))
    }

    pub fn two_s(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `S(S+1)`, the Casimir eigenvalue.
    pub fn casimir(self) -> f64 {
        let s = self.value();
        s * (s + 1.0)
    }

    /// Projection `M` of basis vector `index`.
    pub fn projection(self, index: usize) -> f64 {
        self.value() - index as f64
    }

    /// Projections `S, S-1, ..., -S` in basis order.
    pub fn projections(self) -> impl Iterator<Item = f64> {
        (0..self.dim()).map(move |i| self.projection(i))
    }

    /// Basis index of the level with projection `two_m / 2`.
    pub fn index_of(self, two_m: i32) -> Result<usize> {
        let two_s = self.0 as i32;
        if two_m.abs() > two_s || (two_s - two_m) % 2 != 0 {
            return Err(Error::ProjectionOutOfRange {
                two_m,
                two_s: self.0,
            });
        }
        Ok(((two_s - two_m) / 2) as usize)
    }
}

impl std::fmt::Display for SpinLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A real unit vector in the lab frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AxisVector {
    pub const UNIT_TOLERANCE: f64 = 1e-12;

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > Self::UNIT_TOLERANCE {
            return Err(Error::NonUnitAxis(norm - 1.0));
        }
        Ok(Self { x, y, z })
    }

    /// Unit vector with polar angle `polar` from `z` and azimuth `azimuth` from `x`.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        Self {
            x: polar.sin() * azimuth.cos(),
            y: polar.sin() * azimuth.sin(),
            z: polar.cos(),
        }
    }

    pub fn x_hat() -> Self {
        Self { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn y_hat() -> Self {
        Self { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn z_hat() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn dot(&self, other: &AxisVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Polar angle and azimuth of the vector.
    pub fn angles(&self) -> (f64, f64) {
        (self.z.clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
    }
}

/// The three Cartesian spin components.
#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub sx: Operator,
    pub sy: Operator,
    pub sz: Operator,
}

/// Ladder-operator construction of `S_x`, `S_y`, `S_z`.
pub fn build_spin_matrices(s: SpinLength) -> SpinMatrices {
    let d = s.dim();
    let spin = s.value();
    let mut raise = DMatrix::<f64>::zeros(d, d);
    // S_+ |M> = sqrt(S(S+1) - M(M+1)) |M+1>, and |M+1> sits one index above |M>.
    for i in 1..d {
        let m = s.projection(i);
        raise[(i - 1, i)] = (spin * (spin + 1.0) - m * (m + 1.0)).sqrt();
    }
    let lower = raise.transpose();
    let sx = (&raise + &lower).map(|v| Complex64::new(0.5 * v, 0.0));
    let sy = (&raise - &lower).map(|v| Complex64::new(0.0, -0.5 * v));
    let sz = Operator::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::new(s.projection(i), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    SpinMatrices { sx, sy, sz }
}

/// `n_x S_x + n_y S_y + n_z S_z`.
pub fn axis_projection(matrices: &SpinMatrices, n: &AxisVector) -> Result<Operator> {
    let n = AxisVector::new(n.x, n.y, n.z)?;
    let c = |v: f64| Complex64::new(v, 0.0);
    Ok(&matrices.sx * c(n.x) + &matrices.sy * c(n.y) + &matrices.sz * c(n.z))
}

/// Wigner small-d matrix `exp(-i S_y angle)` built from scratch.
///
/// For repeated rotations of the same spin use [`Spin::rotation_y`], which
/// caches the `S_y` eigenbasis.
pub fn rotation_y(s: SpinLength, angle: f64) -> DMatrix<f64> {
    Spin::new(s).rotation_y(angle)
}

/// Spin operators of one spin length together with the cached `S_y` eigenbasis.
#[derive(Debug, Clone)]
pub struct Spin {
    length: SpinLength,
    matrices: SpinMatrices,
    y_vectors: Operator,
    y_values: Vec<f64>,
    y_generator: DMatrix<f64>,
}

impl Spin {
    pub fn new(length: SpinLength) -> Self {
        let matrices = build_spin_matrices(length);
        let eigen = SymmetricEigen::new(matrices.sy.clone());
        // Eigenvalues of S_y are exactly -S..S; snap away the eigensolver noise.
        let y_values = eigen
            .eigenvalues
            .iter()
            .map(|v| (2.0 * v).round() / 2.0)
            .collect();
        // -i S_y is real and antisymmetric.
        let y_generator = matrices.sy.map(|z| z.im);
        Self {
            length,
            matrices,
            y_vectors: eigen.eigenvectors,
            y_values,
            y_generator,
        }
    }

    pub fn from_two_s(two_s: u32) -> Result<Self> {
        Ok(Self::new(SpinLength::new(two_s)?))
    }

    pub fn length(&self) -> SpinLength {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.length.dim()
    }

    pub fn matrices(&self) -> &SpinMatrices {
        &self.matrices
    }

    pub fn sx(&self) -> &Operator {
        &self.matrices.sx
    }

    pub fn sy(&self) -> &Operator {
        &self.matrices.sy
    }

    pub fn sz(&self) -> &Operator {
        &self.matrices.sz
    }

    /// The real antisymmetric generator `-i S_y`, so that
    /// `d/dβ rotation_y(β) = generator · rotation_y(β)`.
    pub fn y_generator(&self) -> &DMatrix<f64> {
        &self.y_generator
    }

    /// `exp(-i S_y angle)`, real-valued (Wigner small-d).
    pub fn rotation_y(&self, angle: f64) -> DMatrix<f64> {
        let d = self.dim();
        if angle == 0.0 {
            return DMatrix::identity(d, d);
        }
        let w = &self.y_vectors;
        let phases: Vec<Complex64> = self
            .y_values
            .iter()
            .map(|m| Complex64::from_polar(1.0, -angle * m))
            .collect();
        DMatrix::from_fn(d, d, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += w[(i, k)] * phases[k] * w[(j, k)].conj();
            }
            acc.re
        })
    }

    /// `exp(-i S_z angle)`, diagonal.
    pub fn rotation_z(&self, angle: f64) -> Operator {
        let d = self.dim();
        Operator::from_fn(d, d, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, -angle * self.length.projection(i))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Unitary whose `k`-th column is the eigenvector of `n·S` with
    /// eigenvalue `S - k`: `exp(-i S_z α) exp(-i S_y β)` for the polar
    /// angle `β` and azimuth `α` of `n`.
    pub fn axis_frame(&self, n: &AxisVector) -> Operator {
        let (polar, azimuth) = n.angles();
        self.rotation_z(azimuth) * to_complex(&self.rotation_y(polar))
    }

    pub fn axis_projection(&self, n: &AxisVector) -> Result<Operator> {
        axis_projection(&self.matrices, n)
    }
}

pub(crate) fn to_complex(m: &DMatrix<f64>) -> Operator {
    m.map(|v| Complex64::new(v, 0.0))
}
