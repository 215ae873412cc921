//! Structured gate kernels: NOT, the square root of NOT, the Toffoli
//! family, and the derived AND/OR. Every kernel is an index transform
//! over the amplitude array, O(2ⁿ) time, never a dense matrix product.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quregister::Quregister;
use crate::{Error, Result};

/// ½(1+i), the diagonal entry of the square root of NOT.
const HALF_P: Complex64 = Complex64::new(0.5, 0.5);
/// ½(1−i), its off-diagonal entry.
const HALF_M: Complex64 = Complex64::new(0.5, -0.5);

/// Description of one gate instance: kind plus arity parameters.
///
/// TOFFOLI acts on n+m+1 qubits (two operand registers and a target);
/// NOT and SQRT_NOT act on n qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GateSpec {
    #[serde(rename = "NOT")]
    Not { n: usize },
    #[serde(rename = "SQRT_NOT")]
    SqrtNot { n: usize },
    #[serde(rename = "TOFFOLI")]
    Toffoli { n: usize, m: usize },
}

impl GateSpec {
    /// Register width the gate acts on.
    pub fn width(&self) -> usize {
        match *self {
            GateSpec::Not { n } | GateSpec::SqrtNot { n } => n,
            GateSpec::Toffoli { n, m } => n + m + 1,
        }
    }
}

impl std::fmt::Display for GateSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            GateSpec::Not { n } => write!(f, "NOT({n})"),
            GateSpec::SqrtNot { n } => write!(f, "SQRT_NOT({n})"),
            GateSpec::Toffoli { n, m } => write!(f, "TOFFOLI({n},{m})"),
        }
    }
}

fn ensure_unit(psi: &Quregister) -> Result<()> {
    let norm_sqr = psi.norm_sqr();
    if (norm_sqr - 1.0).abs() > crate::consts::UNIT_NORM_TOL {
        return Err(Error::NotUnit { norm_sqr });
    }
    Ok(())
}

/// Swaps each amplitude pair (2k, 2k+1): the last qubit's bit flip.
fn not_kernel(amps: &mut [Complex64]) {
    for pair in amps.chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
}

/// Per-pair 2×2 multiply with entries ½(1±i).
fn sqrt_not_kernel(amps: &mut [Complex64]) {
    for pair in amps.chunks_exact_mut(2) {
        let c0 = pair[0];
        let c1 = pair[1];
        pair[0] = HALF_P * c0 + HALF_M * c1;
        pair[1] = HALF_M * c0 + HALF_P * c1;
    }
}

/// Masked pair swap. Qubit n (last of the first operand register) sits
/// at bit m+1 of the index; qubit n+m (last of the second) at bit 1.
/// Where both are set, the target bit (bit 0) flips.
fn toffoli_kernel(amps: &mut [Complex64], m: usize) {
    let controls = (1usize << (m + 1)) | 2;
    let mut j = 0;
    while j < amps.len() {
        if j & controls == controls {
            amps.swap(j, j | 1);
        }
        j += 2;
    }
}

/// NOT⁽ⁿ⁾: flips the last qubit of a unit register.
pub fn apply_not(psi: &Quregister) -> Result<Quregister> {
    ensure_unit(psi)?;
    let mut amps = psi.amps.clone();
    not_kernel(&mut amps);
    Ok(Quregister {
        n_qubits: psi.n_qubits,
        amps,
    })
}

/// √NOT⁽ⁿ⁾: square root of NOT on the last qubit; applying it twice
/// equals NOT.
pub fn apply_sqrt_not(psi: &Quregister) -> Result<Quregister> {
    ensure_unit(psi)?;
    let mut amps = psi.amps.clone();
    sqrt_not_kernel(&mut amps);
    Ok(Quregister {
        n_qubits: psi.n_qubits,
        amps,
    })
}

/// T⁽ⁿ,ᵐ,¹⁾ on an (n+m+1)-qubit register: sends the target bit z to
/// min(xₙ, yₘ) ⊕ z, where xₙ and yₘ are the last bits of the two
/// operand registers.
pub fn apply_toffoli(psi: &Quregister, n: usize, m: usize) -> Result<Quregister> {
    assert!(n >= 1 && m >= 1, "toffoli arities must be positive");
    let expected = n + m + 1;
    if psi.n_qubits != expected {
        return Err(Error::WidthMismatch {
            expected,
            actual: psi.n_qubits,
        });
    }
    ensure_unit(psi)?;
    let mut amps = psi.amps.clone();
    toffoli_kernel(&mut amps, m);
    Ok(Quregister {
        n_qubits: psi.n_qubits,
        amps,
    })
}

/// Applies any gate described by a [`GateSpec`]; width mismatches
/// error out.
pub fn apply_gate(spec: GateSpec, psi: &Quregister) -> Result<Quregister> {
    if psi.n_qubits != spec.width() {
        return Err(Error::WidthMismatch {
            expected: spec.width(),
            actual: psi.n_qubits,
        });
    }
    match spec {
        GateSpec::Not { .. } => apply_not(psi),
        GateSpec::SqrtNot { .. } => apply_sqrt_not(psi),
        GateSpec::Toffoli { n, m } => apply_toffoli(psi, n, m),
    }
}

/// AND: T⁽ⁿ,ᵐ,¹⁾(φ ⊗ ψ ⊗ |0⟩). The conjunction value lands in the
/// target qubit; the operand registers pass through unchanged.
pub fn and_gate(phi: &Quregister, psi: &Quregister) -> Result<Quregister> {
    ensure_unit(phi)?;
    ensure_unit(psi)?;
    let mut out = phi.tensor(psi);
    out.n_qubits += 1;
    // Tensoring with |0⟩ widens each index j to 2j.
    let mut amps = vec![Complex64::ZERO; out.amps.len() * 2];
    for (j, a) in out.amps.iter().enumerate() {
        amps[2 * j] = *a;
    }
    toffoli_kernel(&mut amps, psi.n_qubits);
    out.amps = amps;
    Ok(out)
}

/// OR: NOT(AND(NOT φ, NOT ψ)), composed literally. The target qubit
/// carries the disjunction value (so the probability-value is the
/// expected p + q − pq); the operand registers keep the negated inputs.
pub fn or_gate(phi: &Quregister, psi: &Quregister) -> Result<Quregister> {
    ensure_unit(phi)?;
    ensure_unit(psi)?;
    let mut left = phi.amps.clone();
    not_kernel(&mut left);
    let mut right = psi.amps.clone();
    not_kernel(&mut right);
    let not_phi = Quregister {
        n_qubits: phi.n_qubits,
        amps: left,
    };
    let not_psi = Quregister {
        n_qubits: psi.n_qubits,
        amps: right,
    };
    let mut out = not_phi.tensor(&not_psi);
    out.n_qubits += 1;
    let mut amps = vec![Complex64::ZERO; out.amps.len() * 2];
    for (j, a) in out.amps.iter().enumerate() {
        amps[2 * j] = *a;
    }
    toffoli_kernel(&mut amps, psi.n_qubits);
    not_kernel(&mut amps);
    out.amps = amps;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quregister::Bit::{One, Zero};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ket(bits: &[crate::quregister::Bit]) -> Quregister {
        Quregister::basis_state(bits).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn max_dev(a: &Quregister, b: &Quregister) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn not_flips_single_qubit() {
        assert_eq!(apply_not(&ket(&[One])).unwrap(), ket(&[Zero]));
        assert_eq!(apply_not(&ket(&[Zero])).unwrap(), ket(&[One]));
    }

    #[test]
    fn not_fixes_balanced_superposition() {
        let h = 1.0 / 2f64.sqrt();
        let psi = Quregister::qubit(re(h), re(h));
        assert_eq!(apply_not(&psi).unwrap(), psi);
    }

    #[test]
    fn not_flips_last_bit_of_wider_registers() {
        let a = Complex64::new(0.6, 0.0);
        let b = Complex64::new(0.0, 0.8);
        let mut amps = vec![Complex64::ZERO; 4];
        amps[0b00] = a;
        amps[0b11] = b;
        let psi = Quregister::new(2, amps).unwrap();
        let out = apply_not(&psi).unwrap();
        assert_eq!(out.amplitudes()[0b01], a);
        assert_eq!(out.amplitudes()[0b10], b);
    }

    #[test]
    fn not_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let psi = Quregister::random_unit(4, &mut rng);
        let back = apply_not(&apply_not(&psi).unwrap()).unwrap();
        assert_eq!(back, psi);
    }

    #[test]
    fn sqrt_not_sends_zero_to_the_halved_superposition() {
        let out = apply_sqrt_not(&ket(&[Zero])).unwrap();
        assert_eq!(out.amplitudes(), &[HALF_P, HALF_M]);
    }

    #[test]
    fn sqrt_not_fixes_balanced_superposition() {
        let h = 1.0 / 2f64.sqrt();
        let psi = Quregister::qubit(re(h), re(h));
        let out = apply_sqrt_not(&psi).unwrap();
        assert!(max_dev(&out, &psi) <= 1e-15);
    }

    #[test]
    fn sqrt_not_squares_to_not() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for width in 1..=4 {
            let psi = Quregister::random_unit(width, &mut rng);
            let twice = apply_sqrt_not(&apply_sqrt_not(&psi).unwrap()).unwrap();
            let flipped = apply_not(&psi).unwrap();
            assert!(max_dev(&twice, &flipped) <= 1e-15);
        }
    }

    #[test]
    fn toffoli_truth_table() {
        // All eight classical rows; only the two fully-controlled rows
        // exchange, and the permutation is exact.
        for x in [Zero, One] {
            for y in [Zero, One] {
                for z in [Zero, One] {
                    let input = ket(&[x, y, z]);
                    let out = apply_toffoli(&input, 1, 1).unwrap();
                    let target = (x == One && y == One) ^ (z == One);
                    let expected = ket(&[x, y, if target { One } else { Zero }]);
                    assert_eq!(out, expected, "row |{x:?},{y:?},{z:?}⟩");
                }
            }
        }
    }

    #[test]
    fn toffoli_rejects_bad_width() {
        let err = apply_toffoli(&ket(&[One, One, Zero]), 2, 1).unwrap_err();
        assert_eq!(
            err,
            Error::WidthMismatch {
                expected: 4,
                actual: 3
            }
        );
    }

    #[test]
    fn gates_reject_non_unit_states() {
        let short = Quregister::qubit(re(0.5), re(0.5));
        assert!(matches!(apply_not(&short), Err(Error::NotUnit { .. })));
        assert!(matches!(apply_sqrt_not(&short), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn and_gate_classical_rows() {
        assert_eq!(
            and_gate(&ket(&[One]), &ket(&[One])).unwrap(),
            ket(&[One, One, One])
        );
        assert_eq!(
            and_gate(&ket(&[One]), &ket(&[Zero])).unwrap(),
            ket(&[One, Zero, Zero])
        );
    }

    #[test]
    fn and_gate_superposition_layout() {
        let (a0, a1) = (re(0.6), re(0.8));
        let (b0, b1) = (Complex64::new(0.0, 0.28), re(0.96));
        let out = and_gate(&Quregister::qubit(a0, a1), &Quregister::qubit(b0, b1)).unwrap();
        let amps = out.amplitudes();
        assert_eq!(amps[0b000], a0 * b0);
        assert_eq!(amps[0b010], a0 * b1);
        assert_eq!(amps[0b100], a1 * b0);
        assert_eq!(amps[0b111], a1 * b1);
        for j in [0b001, 0b011, 0b101, 0b110] {
            assert_eq!(amps[j], Complex64::ZERO);
        }
    }

    #[test]
    fn or_gate_superposition_layout() {
        // Composition places the negated inputs in the operand
        // registers; only a₁b₁, a₁b₀, a₀b₁ sit at odd indices, so the
        // probability-value is |a₁b₁|² + |a₁b₀|² + |a₀b₁|².
        let (a0, a1) = (re(0.6), re(0.8));
        let (b0, b1) = (Complex64::new(0.0, 0.28), re(0.96));
        let out = or_gate(&Quregister::qubit(a0, a1), &Quregister::qubit(b0, b1)).unwrap();
        let amps = out.amplitudes();
        assert_eq!(amps[0b001], a1 * b1);
        assert_eq!(amps[0b011], a1 * b0);
        assert_eq!(amps[0b101], a0 * b1);
        assert_eq!(amps[0b110], a0 * b0);
        for j in [0b000, 0b010, 0b100, 0b111] {
            assert_eq!(amps[j], Complex64::ZERO);
        }
        let p = 0.64;
        let q = 0.96 * 0.96;
        assert!((out.prob().unwrap() - (p + q - p * q)).abs() <= 1e-12);
    }

    #[test]
    fn or_gate_classical_rows_by_value() {
        let out = or_gate(&ket(&[Zero]), &ket(&[Zero])).unwrap();
        assert_eq!(out.prob().unwrap(), 0.0);
        assert_eq!(out.norm(), 1.0);

        let out = or_gate(&ket(&[One]), &ket(&[Zero])).unwrap();
        assert_eq!(out.prob().unwrap(), 1.0);
    }

    #[test]
    fn gate_spec_reports_width_and_serializes_by_kind() {
        assert_eq!(GateSpec::Not { n: 3 }.width(), 3);
        assert_eq!(GateSpec::Toffoli { n: 2, m: 1 }.width(), 4);
        let text = serde_json::to_string(&GateSpec::Toffoli { n: 2, m: 1 }).unwrap();
        assert_eq!(text, r#"{"kind":"TOFFOLI","n":2,"m":1}"#);
        assert_eq!(GateSpec::SqrtNot { n: 2 }.to_string(), "SQRT_NOT(2)");
    }
}
