use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{QsimError, UNITARITY_TOL};

/// Amplitude / matrix entry type.
pub type ComplexValue = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One of the six uniform-superposition preparations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateRecipe {
    H,
    Sx,
    Rx {
        theta: f64,
    },
    Ry {
        theta: f64,
    },
    /// Phase gate followed by Hadamard, i.e. the matrix `H * P(theta)`.
    PThenH {
        theta: f64,
    },
    U {
        theta: f64,
        phi: f64,
        lambda: f64,
    },
}

impl GateRecipe {
    pub const fn h() -> Self {
        Self::H
    }

    pub const fn sx() -> Self {
        Self::Sx
    }

    pub const fn rx() -> Self {
        Self::Rx { theta: FRAC_PI_2 }
    }

    pub const fn ry() -> Self {
        Self::Ry { theta: FRAC_PI_2 }
    }

    pub const fn p_then_h() -> Self {
        Self::PThenH { theta: FRAC_PI_2 }
    }

    pub const fn u() -> Self {
        Self::U {
            theta: FRAC_PI_2,
            phi: FRAC_PI_2,
            lambda: FRAC_PI_2,
        }
    }

    /// The six recipes at their default angles.
    pub const ALL: [GateRecipe; 6] = [
        Self::h(),
        Self::sx(),
        Self::rx(),
        Self::ry(),
        Self::p_then_h(),
        Self::u(),
    ];

    /// Short CLI name: `h`, `sx`, `rx`, `ry`, `ph` or `u`.
    pub fn short_name(&self) -> &'static str {
        match self {
            Self::H => "h",
            Self::Sx => "sx",
            Self::Rx { .. } => "rx",
            Self::Ry { .. } => "ry",
            Self::PThenH { .. } => "ph",
            Self::U { .. } => "u",
        }
    }

    pub fn display_name(&self) -> &'static str {
        match self {
            Self::H => "H-Gate-Based",
            Self::Sx => "SX-Gate-Based",
            Self::Rx { .. } => "RX-Gate-Based",
            Self::Ry { .. } => "RY-Gate-Based",
            Self::PThenH { .. } => "Based on P-Gate & H-Gate",
            Self::U { .. } => "U-Gate-Based",
        }
    }

    fn angles(&self) -> impl Iterator<Item = f64> {
        let v = match *self {
            Self::H | Self::Sx => [0.0; 3],
            Self::Rx { theta } | Self::Ry { theta } | Self::PThenH { theta } => [theta, 0.0, 0.0],
            Self::U { theta, phi, lambda } => [theta, phi, lambda],
        };
        v.into_iter()
    }
}

impl fmt::Display for GateRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for GateRecipe {
    type Err = QsimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(Self::h()),
            "sx" => Ok(Self::sx()),
            "rx" => Ok(Self::rx()),
            "ry" => Ok(Self::ry()),
            "ph" | "p-h" | "pthenh" => Ok(Self::p_then_h()),
            "u" => Ok(Self::u()),
            _ => Err(QsimError::UnknownRecipe(s.to_string())),
        }
    }
}

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMatrix {
    entries: [[Complex64; 2]; 2],
}

impl GateMatrix {
    pub const IDENTITY: GateMatrix = GateMatrix {
        entries: [[ONE, ZERO], [ZERO, ONE]],
    };

    /// Wraps raw entries after checking finiteness and unitarity.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self, QsimError> {
        let m = Self { entries };
        if !entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(QsimError::NonFinite);
        }
        let dev = m.unitarity_deviation();
        if dev > UNITARITY_TOL {
            return Err(QsimError::NotUnitary(dev));
        }
        Ok(m)
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn mul(&self, rhs: &GateMatrix) -> GateMatrix {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        GateMatrix { entries: out }
    }

    pub fn adjoint(&self) -> GateMatrix {
        let e = &self.entries;
        GateMatrix {
            entries: [
                [e[0][0].conj(), e[1][0].conj()],
                [e[0][1].conj(), e[1][1].conj()],
            ],
        }
    }

    /// Largest per-entry magnitude of `U^dagger U - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { ONE } else { ZERO };
                worst = worst.max((p.entries[i][j] - expected).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_deviation() <= UNITARITY_TOL
    }

    pub fn max_abs_diff(&self, other: &GateMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn hadamard() -> GateMatrix {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    GateMatrix {
        entries: [[s, s], [s, -s]],
    }
}

fn phase(theta: f64) -> GateMatrix {
    GateMatrix {
        entries: [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, theta)]],
    }
}

/// Builds the unitary for a recipe.
///
/// `PThenH` yields the product `H * P(theta)` (P applied first). `U` uses
/// `[[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]]`.
pub fn build_gate(recipe: GateRecipe) -> Result<GateMatrix, QsimError> {
    if recipe.angles().any(|a| !a.is_finite()) {
        return Err(QsimError::NonFiniteAngle(recipe));
    }
    let m = match recipe {
        GateRecipe::H => hadamard(),
        GateRecipe::Sx => {
            let p = Complex64::new(0.5, 0.5);
            let q = Complex64::new(0.5, -0.5);
            GateMatrix {
                entries: [[p, q], [q, p]],
            }
        }
        GateRecipe::Rx { theta } => {
            let c = Complex64::new((theta / 2.0).cos(), 0.0);
            let s = Complex64::new(0.0, -(theta / 2.0).sin());
            GateMatrix {
                entries: [[c, s], [s, c]],
            }
        }
        GateRecipe::Ry { theta } => {
            let (s, c) = (theta / 2.0).sin_cos();
            GateMatrix {
                entries: [
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ],
            }
        }
        GateRecipe::PThenH { theta } => hadamard().mul(&phase(theta)),
        GateRecipe::U { theta, phi, lambda } => {
            let (s, c) = (theta / 2.0).sin_cos();
            GateMatrix {
                entries: [
                    [Complex64::new(c, 0.0), -Complex64::from_polar(s, lambda)],
                    [
                        Complex64::from_polar(s, phi),
                        Complex64::from_polar(c, phi + lambda),
                    ],
                ],
            }
        }
    };
    Ok(m)
}
