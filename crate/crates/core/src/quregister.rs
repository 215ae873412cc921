//! Amplitude vectors over the computational basis of ⊗ⁿC², the C⁺/C⁻
//! index partition, and the probability functional.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::consts::UNIT_NORM_TOL;
use crate::{Error, Result};

/// Largest register width the engine will construct. 2³⁰ amplitudes is
/// already 16 GiB; anything above is a caller bug, not a workload.
const MAX_QUBITS: usize = 30;

/// A classical bit, naming the basis kets of C².
///
/// |0⟩ is the vector (1, 0) and |1⟩ is (0, 1); index j of an n-qubit
/// amplitude vector encodes |x₁,…,xₙ⟩ with x₁ the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn value(self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

/// State of an n-qubit register: 2ⁿ complex amplitudes, index j holding
/// the coefficient of |x₁,…,xₙ⟩ with j = Σ xₖ·2^(n−k).
///
/// Unit vectors are the quregisters proper; sub-normalized vectors
/// (squared norm ≤ 1) are allowed wherever only the probability-value is
/// taken. Values are immutable once built and safe to share across
/// threads.
///
/// Serializes as `{"n": 2, "amps": [[re, im], ...]}` with 2ⁿ entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuregisterRepr", into = "QuregisterRepr")]
pub struct Quregister {
    pub(crate) n_qubits: usize,
    pub(crate) amps: Vec<Complex64>,
}

impl Quregister {
    /// Builds a register from a full amplitude vector. The length must
    /// be exactly 2^n_qubits; no norm condition is imposed here.
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Malformed(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n_qubits}"
            )));
        }
        let want = 1usize << n_qubits;
        if amps.len() != want {
            return Err(Error::Malformed(format!(
                "{n_qubits}-qubit register needs {want} amplitudes, got {}",
                amps.len()
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Computational-basis vector |x₁,…,xₙ⟩ for a nonempty bit string.
    pub fn basis_state(bits: &[Bit]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyBitString);
        }
        let n = bits.len();
        let j = bits.iter().fold(0usize, |j, b| (j << 1) | b.value());
        Self::basis_from_index(n, j)
    }

    /// Basis vector |j⟩ of an n-qubit register, by amplitude index.
    pub fn basis_from_index(n_qubits: usize, j: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Malformed(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n_qubits}"
            )));
        }
        let dim = 1usize << n_qubits;
        if j >= dim {
            return Err(Error::Malformed(format!(
                "basis index {j} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[j] = Complex64::ONE;
        Ok(Self { n_qubits, amps })
    }

    /// Single qubit a₀|0⟩ + a₁|1⟩.
    pub fn qubit(a0: Complex64, a1: Complex64) -> Self {
        Self {
            n_qubits: 1,
            amps: vec![a0, a1],
        }
    }

    /// Uniformly random unit vector on 2ⁿ amplitudes (direction only;
    /// the sampling is isotropic enough for identity testing).
    pub fn random_unit<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n_qubits));
        let dim = 1usize << n_qubits;
        loop {
            let amps: Vec<Complex64> = (0..dim)
                .map(|_| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                })
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                let amps = amps.into_iter().map(|a| a / norm).collect();
                return Self { n_qubits, amps };
            }
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Amplitude vector, index j ↦ coefficient of |j⟩.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Tensor product; amplitude at index j·2^nψ + k is aⱼ·bₖ, so the
    /// left factor occupies the high-order bit positions.
    pub fn tensor(&self, other: &Self) -> Self {
        let n_qubits = self.n_qubits + other.n_qubits;
        assert!(n_qubits <= MAX_QUBITS, "tensor product too wide");
        let mut amps = Vec::with_capacity(1usize << n_qubits);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { n_qubits, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Whether the vector is unit within the admission tolerance.
    pub fn is_unit(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= UNIT_NORM_TOL
    }

    /// Probability-value: the squared mass on C⁺, the odd-index half of
    /// the basis (strings ending in 1). Defined for squared norm ≤ 1.
    pub fn prob(&self) -> Result<f64> {
        let norm_sqr = self.norm_sqr();
        if norm_sqr > 1.0 + UNIT_NORM_TOL {
            return Err(Error::NormExceedsOne { norm_sqr });
        }
        let p: f64 = self
            .amps
            .iter()
            .skip(1)
            .step_by(2)
            .map(|a| a.norm_sqr())
            .sum();
        Ok(p.min(1.0))
    }

    /// ⟨self|other⟩ = Σⱼ conj(aⱼ)·bⱼ.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// The C⁺/C⁻ split of amplitude indices for one register width: C⁺ holds
/// the indices of basis strings ending in 1 (odd j), C⁻ the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientPartition {
    pub cplus: Vec<usize>,
    pub cminus: Vec<usize>,
}

impl CoefficientPartition {
    pub fn for_width(n_qubits: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n_qubits));
        let dim = 1usize << n_qubits;
        Self {
            cplus: (0..dim).filter(|j| j % 2 == 1).collect(),
            cminus: (0..dim).filter(|j| j % 2 == 0).collect(),
        }
    }
}

/// Wire format: `{"n": int, "amps": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct QuregisterRepr {
    n: usize,
    amps: Vec<[f64; 2]>,
}

impl TryFrom<QuregisterRepr> for Quregister {
    type Error = Error;

    fn try_from(repr: QuregisterRepr) -> Result<Self> {
        let amps = repr
            .amps
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        Quregister::new(repr.n, amps)
    }
}

impl From<Quregister> for QuregisterRepr {
    fn from(q: Quregister) -> Self {
        QuregisterRepr {
            n: q.n_qubits,
            amps: q.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}
