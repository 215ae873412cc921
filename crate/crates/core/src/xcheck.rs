//! Structured-kernel vs dense-oracle agreement sweep, the backing for
//! the `gate-xcheck` command.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consts::{DENSE_WIDTH_CAP, GATE_IDENTITY_TOL};
use crate::dense::{apply_dense, matrix_for};
use crate::gates::{apply_gate, GateSpec};
use crate::quregister::Quregister;
use crate::{Error, Result};

/// Agreement figure for one gate instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XcheckRow {
    pub gate: GateSpec,
    pub width: usize,
    pub trials: usize,
    /// Largest componentwise |kernel − dense| over all trials.
    pub max_deviation: f64,
}

/// Full sweep over every gate instance up to a width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XcheckReport {
    pub max_width: usize,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub rows: Vec<XcheckRow>,
    pub max_deviation: f64,
    pub pass: bool,
}

fn gate_instances(max_width: usize) -> Vec<GateSpec> {
    let mut specs = Vec::new();
    for width in 1..=max_width {
        specs.push(GateSpec::Not { n: width });
        specs.push(GateSpec::SqrtNot { n: width });
    }
    for width in 3..=max_width {
        for n in 1..width - 1 {
            specs.push(GateSpec::Toffoli { n, m: width - 1 - n });
        }
    }
    specs
}

/// Runs every NOT, √NOT, and Toffoli instance of width ≤ `max_width`
/// against the dense oracle on `trials` random unit states each.
pub fn run_gate_xcheck(max_width: usize, trials: usize, seed: u64) -> Result<XcheckReport> {
    if max_width == 0 || max_width > DENSE_WIDTH_CAP {
        return Err(Error::WidthCap {
            width: max_width,
            cap: DENSE_WIDTH_CAP,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut overall = 0.0f64;
    for spec in gate_instances(max_width) {
        let width = spec.width();
        let matrix = matrix_for(spec)?;
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let psi = Quregister::random_unit(width, &mut rng);
            let fast = apply_gate(spec, &psi)?;
            let slow = apply_dense(&matrix, &psi)?;
            let dev = fast
                .amplitudes()
                .iter()
                .zip(slow.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            worst = worst.max(dev);
        }
        overall = overall.max(worst);
        rows.push(XcheckRow {
            gate: spec,
            width,
            trials,
            max_deviation: worst,
        });
    }
    Ok(XcheckReport {
        max_width,
        trials,
        seed,
        tolerance: GATE_IDENTITY_TOL,
        rows,
        max_deviation: overall,
        pass: overall <= GATE_IDENTITY_TOL,
    })
}
