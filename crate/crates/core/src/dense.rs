//! Brute-force oracle: explicit gate matrices applied by full
//! matrix-vector products. Entries come straight from the gate
//! definitions (permutation and 2×2-block structure), with no code
//! shared with the structured kernels, so the two paths check each
//! other.

use num_complex::Complex64;

use crate::consts::DENSE_WIDTH_CAP;
use crate::gates::GateSpec;
use crate::quregister::Quregister;
use crate::{Error, Result};

/// Square matrix over the computational basis, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Register width the matrix acts on (dim = 2^width).
    pub fn width(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            for col in 0..dim {
                entries.push(f(row, col));
            }
        }
        Self { dim, entries }
    }

    /// Ordinary matrix product, for squaring the root-of-NOT matrix.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        let dim = self.dim;
        Ok(Self::from_fn(dim, |row, col| {
            (0..dim).map(|k| self.entry(row, k) * other.entry(k, col)).sum()
        }))
    }
}

/// Builds the explicit matrix for a gate. Widths above the cap are
/// refused; the oracle exists for verification, not production.
pub fn matrix_for(spec: GateSpec) -> Result<DenseMatrix> {
    let width = spec.width();
    if width > DENSE_WIDTH_CAP {
        return Err(Error::WidthCap {
            width,
            cap: DENSE_WIDTH_CAP,
        });
    }
    let dim = 1usize << width;
    Ok(match spec {
        GateSpec::Not { .. } => DenseMatrix::from_fn(dim, |row, col| {
            if row == col ^ 1 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        }),
        GateSpec::SqrtNot { .. } => DenseMatrix::from_fn(dim, |row, col| {
            if row == col {
                Complex64::new(0.5, 0.5)
            } else if row == col ^ 1 {
                Complex64::new(0.5, -0.5)
            } else {
                Complex64::ZERO
            }
        }),
        GateSpec::Toffoli { m, .. } => {
            let controls = (1usize << (m + 1)) | 2;
            DenseMatrix::from_fn(dim, |row, col| {
                let image = if col & controls == controls { col ^ 1 } else { col };
                if row == image {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                }
            })
        }
    })
}

/// Matrix-vector product M·ψ.
pub fn apply_dense(matrix: &DenseMatrix, psi: &Quregister) -> Result<Quregister> {
    if matrix.dim != psi.amplitudes().len() {
        return Err(Error::WidthMismatch {
            expected: matrix.width(),
            actual: psi.n_qubits(),
        });
    }
    let amps = (0..matrix.dim)
        .map(|row| {
            psi.amplitudes()
                .iter()
                .enumerate()
                .map(|(col, a)| matrix.entry(row, col) * a)
                .sum()
        })
        .collect();
    Quregister::new(psi.n_qubits(), amps)
}

/// Max-modulus deviation of M·M† from the identity.
pub fn check_unitary(matrix: &DenseMatrix) -> f64 {
    let dim = matrix.dim;
    let mut worst = 0.0f64;
    for row in 0..dim {
        for col in 0..dim {
            let product: Complex64 = (0..dim)
                .map(|k| matrix.entry(row, k) * matrix.entry(col, k).conj())
                .sum();
            let target = if row == col {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            worst = worst.max((product - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quregister::Bit::{One, Zero};

    #[test]
    fn toffoli_matrix_swaps_last_two_rows_of_identity() {
        let m = matrix_for(GateSpec::Toffoli { n: 1, m: 1 }).unwrap();
        assert_eq!(m.dim(), 8);
        for row in 0..8 {
            for col in 0..8 {
                let want = match (row, col) {
                    (6, 7) | (7, 6) => 1.0,
                    (r, c) if r == c && r < 6 => 1.0,
                    _ => 0.0,
                };
                assert_eq!(m.entry(row, col), Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn small_not_and_sqrt_not_matrices() {
        let not = matrix_for(GateSpec::Not { n: 1 }).unwrap();
        assert_eq!(not.entry(0, 0), Complex64::ZERO);
        assert_eq!(not.entry(0, 1), Complex64::ONE);
        assert_eq!(not.entry(1, 0), Complex64::ONE);
        assert_eq!(not.entry(1, 1), Complex64::ZERO);

        let root = matrix_for(GateSpec::SqrtNot { n: 1 }).unwrap();
        assert_eq!(root.entry(0, 0), Complex64::new(0.5, 0.5));
        assert_eq!(root.entry(0, 1), Complex64::new(0.5, -0.5));
        assert_eq!(root.entry(1, 0), Complex64::new(0.5, -0.5));
        assert_eq!(root.entry(1, 1), Complex64::new(0.5, 0.5));
    }

    #[test]
    fn apply_dense_basics() {
        let psi = Quregister::basis_state(&[One, One, Zero]).unwrap();
        let id = DenseMatrix::from_fn(8, |r, c| {
            if r == c {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        });
        assert_eq!(apply_dense(&id, &psi).unwrap(), psi);

        let not = matrix_for(GateSpec::Not { n: 1 }).unwrap();
        let zero = Quregister::basis_state(&[Zero]).unwrap();
        let one = Quregister::basis_state(&[One]).unwrap();
        assert_eq!(apply_dense(&not, &zero).unwrap(), one);

        let tof = matrix_for(GateSpec::Toffoli { n: 1, m: 1 }).unwrap();
        assert_eq!(
            apply_dense(&tof, &psi).unwrap(),
            Quregister::basis_state(&[One, One, One]).unwrap()
        );
    }

    #[test]
    fn apply_dense_rejects_mismatched_width() {
        let not = matrix_for(GateSpec::Not { n: 1 }).unwrap();
        let wide = Quregister::basis_state(&[Zero, Zero]).unwrap();
        assert!(matches!(
            apply_dense(&not, &wide),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for spec in [
            GateSpec::Not { n: 2 },
            GateSpec::SqrtNot { n: 3 },
            GateSpec::Toffoli { n: 2, m: 1 },
        ] {
            let m = matrix_for(spec).unwrap();
            assert!(check_unitary(&m) <= 1e-12, "{spec}");
        }
    }

    #[test]
    fn unitarity_check_flags_a_non_unitary_matrix() {
        let ones = DenseMatrix::from_fn(4, |_, _| Complex64::ONE);
        assert!(check_unitary(&ones) > 1.0);
    }

    #[test]
    fn sqrt_not_matrix_squares_to_not() {
        let root = matrix_for(GateSpec::SqrtNot { n: 3 }).unwrap();
        let not = matrix_for(GateSpec::Not { n: 3 }).unwrap();
        let squared = root.multiply(&root).unwrap();
        for row in 0..squared.dim() {
            for col in 0..squared.dim() {
                let dev = (squared.entry(row, col) - not.entry(row, col)).norm();
                assert!(dev <= 1e-12);
            }
        }
    }

    #[test]
    fn width_cap_is_enforced() {
        let err = matrix_for(GateSpec::Toffoli { n: 6, m: 6 }).unwrap_err();
        assert_eq!(err, Error::WidthCap { width: 13, cap: 12 });
    }
}
