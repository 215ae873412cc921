//! Quantum computational realizations: compositional evaluation of
//! formulas to quregisters, probability-values of sentences, truth and
//! consequence at a realization, and randomized counterexample search.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consts::{COUNTEREXAMPLE_MARGIN, PROB_EQ_TOL, REALIZATION_FILE_NORM_TOL};
use crate::gates::{and_gate, apply_not, apply_sqrt_not};
use crate::quregister::Quregister;
use crate::syntax::Formula;
use crate::{Error, Result};

/// Most atoms a deterministic grid sweep will cover; 11⁵ points is the
/// largest grid that stays cheap.
const GRID_ATOM_CAP: usize = 5;

/// Assignment of a single-qubit unit vector to each atom name. Compound
/// sentences get their meanings computed, so only atoms are stored.
///
/// File format: JSON `{"p": {"a0": [re, im], "a1": [re, im]}, ...}`;
/// vectors are accepted within 1e−8 of unit norm and renormalized.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RealizationRepr", into = "RealizationRepr")]
pub struct Realization {
    assignment: BTreeMap<String, Quregister>,
}

impl Realization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns a single-qubit unit vector to an atom name.
    pub fn assign(&mut self, name: &str, qubit: Quregister) -> Result<()> {
        if !is_atom_name(name) {
            return Err(Error::InvalidRealization(format!(
                "`{name}` is not a valid atom name"
            )));
        }
        if qubit.n_qubits() != 1 {
            return Err(Error::InvalidRealization(format!(
                "atom `{name}` must be assigned a single qubit, got {} qubits",
                qubit.n_qubits()
            )));
        }
        if !qubit.is_unit() {
            return Err(Error::InvalidRealization(format!(
                "atom `{name}` must be assigned a unit vector, squared norm is {}",
                qubit.norm_sqr()
            )));
        }
        self.assignment.insert(name.to_string(), qubit);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Quregister> {
        self.assignment.get(name)
    }

    pub fn atom_names(&self) -> impl Iterator<Item = &str> {
        self.assignment.keys().map(String::as_str)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            // Validation failures surface through serde already carrying this
            // variant's display prefix; drop it so it is not printed twice.
            let msg = e.to_string();
            let trimmed = msg.strip_prefix("invalid realization: ").unwrap_or(&msg);
            Error::InvalidRealization(trimmed.to_string())
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("realization serialization cannot fail")
    }
}

fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && !matches!(name, "not" | "snot" | "and" | "or")
}

/// Wire format for one assigned qubit.
#[derive(Serialize, Deserialize)]
struct QubitRepr {
    a0: [f64; 2],
    a1: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct RealizationRepr(BTreeMap<String, QubitRepr>);

impl TryFrom<RealizationRepr> for Realization {
    type Error = Error;

    fn try_from(repr: RealizationRepr) -> Result<Self> {
        let mut out = Realization::new();
        for (name, qubit) in repr.0 {
            let a0 = Complex64::new(qubit.a0[0], qubit.a0[1]);
            let a1 = Complex64::new(qubit.a1[0], qubit.a1[1]);
            let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
            if (norm - 1.0).abs() > REALIZATION_FILE_NORM_TOL {
                return Err(Error::InvalidRealization(format!(
                    "atom `{name}`: vector norm {norm} is not 1 within {REALIZATION_FILE_NORM_TOL}"
                )));
            }
            // Absorb decimal-serialization drift before the stricter
            // internal unit check.
            out.assign(&name, Quregister::qubit(a0 / norm, a1 / norm))?;
        }
        Ok(out)
    }
}

impl From<Realization> for RealizationRepr {
    fn from(r: Realization) -> Self {
        RealizationRepr(
            r.assignment
                .into_iter()
                .map(|(name, q)| {
                    let amps = q.amplitudes();
                    (
                        name,
                        QubitRepr {
                            a0: [amps[0].re, amps[0].im],
                            a1: [amps[1].re, amps[1].im],
                        },
                    )
                })
                .collect(),
        )
    }
}

/// Meaning of a formula at a realization. Disjunctions are expanded
/// first, then the recursion applies NOT, √NOT, and AND.
pub fn evaluate(f: &Formula, r: &Realization) -> Result<Quregister> {
    eval_expanded(&f.expand_disjunction(), r)
}

fn eval_expanded(f: &Formula, r: &Realization) -> Result<Quregister> {
    match f {
        Formula::Atom(name) => r
            .get(name)
            .cloned()
            .ok_or_else(|| Error::MissingAssignment(name.clone())),
        Formula::Neg(sub) => apply_not(&eval_expanded(sub, r)?),
        Formula::SqrtNeg(sub) => apply_sqrt_not(&eval_expanded(sub, r)?),
        Formula::Conj(l, rr) => and_gate(&eval_expanded(l, r)?, &eval_expanded(rr, r)?),
        Formula::Disj(..) => unreachable!("disjunctions are expanded before evaluation"),
    }
}

/// Probability-value of a sentence at a realization.
pub fn prob_of(f: &Formula, r: &Realization) -> Result<f64> {
    evaluate(f, r)?.prob()
}

/// Truth-functional probability for √¬-free formulas, straight from the
/// atomic probabilities: 1−p for ¬, p·q for ∧, p+q−pq for ∨.
pub fn prob_via_atoms(f: &Formula, probs: &BTreeMap<String, f64>) -> Result<f64> {
    match f {
        Formula::Atom(name) => {
            let p = *probs
                .get(name)
                .ok_or_else(|| Error::MissingAssignment(name.clone()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidRealization(format!(
                    "probability of `{name}` must lie in [0,1], got {p}"
                )));
            }
            Ok(p)
        }
        Formula::Neg(sub) => Ok(1.0 - prob_via_atoms(sub, probs)?),
        Formula::SqrtNeg(_) => Err(Error::NotTruthFunctional),
        Formula::Conj(l, r) => Ok(prob_via_atoms(l, probs)? * prob_via_atoms(r, probs)?),
        Formula::Disj(l, r) => {
            let p = prob_via_atoms(l, probs)?;
            let q = prob_via_atoms(r, probs)?;
            Ok(p + q - p * q)
        }
    }
}

/// Truth at a realization: probability-value 1 within tolerance.
pub fn is_true_at(f: &Formula, r: &Realization) -> Result<bool> {
    Ok(prob_of(f, r)? >= 1.0 - PROB_EQ_TOL)
}

/// Outcome of one consequence test Prob(left) ≤ Prob(right).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsequenceVerdict {
    pub holds_at_sample: bool,
    pub prob_left: f64,
    pub prob_right: f64,
    /// prob_left − prob_right; positive means the consequence is
    /// violated at this realization.
    pub margin: f64,
}

/// Tests Prob(a) ≤ Prob(b) at one realization.
pub fn consequence_at(a: &Formula, b: &Formula, r: &Realization) -> Result<ConsequenceVerdict> {
    let prob_left = prob_of(a, r)?;
    let prob_right = prob_of(b, r)?;
    let margin = prob_left - prob_right;
    Ok(ConsequenceVerdict {
        holds_at_sample: margin <= PROB_EQ_TOL,
        prob_left,
        prob_right,
        margin,
    })
}

/// Draws one single-qubit state per atom: a₀ = cos θ, a₁ = sin θ·e^(iφ)
/// with θ uniform on [0, π/2] and φ uniform on [0, 2π). Covers every
/// qubit up to global phase, which probability-values ignore.
pub fn sample_realization<I, S>(atoms: I, seed: u64) -> Realization
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Realization::new();
    for name in atoms {
        let theta = rng.random::<f64>() * std::f64::consts::FRAC_PI_2;
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        let a0 = Complex64::new(theta.cos(), 0.0);
        let a1 = Complex64::from_polar(theta.sin(), phi);
        out.assign(name.as_ref(), Quregister::qubit(a0, a1))
            .expect("sampled qubit is unit by construction");
    }
    out
}

/// How a counterexample was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSource {
    /// Replayed from the pinned witness table.
    Pinned,
    /// Found on the deterministic probability grid.
    Grid,
    /// Found by seeded random sampling.
    Sampled,
}

/// A realization violating the claim under test, with its margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub margin: f64,
    pub source: WitnessSource,
    pub realization: Realization,
}

/// Result of a counterexample search. Finding nothing is a valid
/// outcome and proves nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub counterexample: Option<Counterexample>,
    /// Realizations examined, including replayed and grid points.
    pub samples: usize,
    /// Largest violation margin seen anywhere in the search.
    pub worst_margin: f64,
}

struct SearchState {
    samples: usize,
    worst_margin: f64,
}

impl SearchState {
    fn new() -> Self {
        Self {
            samples: 0,
            worst_margin: f64::NEG_INFINITY,
        }
    }

    fn observe(&mut self, margin: f64) -> bool {
        self.samples += 1;
        self.worst_margin = self.worst_margin.max(margin);
        margin > COUNTEREXAMPLE_MARGIN
    }

    fn finish(self, counterexample: Option<Counterexample>) -> SearchReport {
        SearchReport {
            counterexample,
            samples: self.samples,
            worst_margin: self.worst_margin,
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn union_atoms(a: &Formula, b: Option<&Formula>) -> Vec<String> {
    let mut set: BTreeSet<String> = a.atoms();
    if let Some(b) = b {
        set.extend(b.atoms());
    }
    set.into_iter().collect()
}

/// The balanced superposition (√2/2)(|0⟩ + |1⟩), the workhorse witness.
fn balanced_qubit() -> Quregister {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Quregister::qubit(Complex64::new(h, 0.0), Complex64::new(h, 0.0))
}

/// (√3/2)|0⟩ + (1/2)|1⟩, the third vector of the distributivity
/// witness.
fn quarter_qubit() -> Quregister {
    Quregister::qubit(Complex64::new(3f64.sqrt() / 2.0, 0.0), Complex64::new(0.5, 0.0))
}

fn all_balanced(atoms: impl IntoIterator<Item = String>) -> Realization {
    let mut r = Realization::new();
    for name in atoms {
        r.assign(&name, balanced_qubit()).expect("witness qubit is unit");
    }
    r
}

/// Known witness for a candidate consequence, when its shape matches a
/// claim with a stock refutation: α ⊨ α∧α, or the failing
/// distributivity direction (α∧β)∨(α∧γ) ⊨ α∧(β∨γ).
pub fn known_consequence_witness(a: &Formula, b: &Formula) -> Option<Realization> {
    if let Formula::Conj(l, r) = b {
        if **l == *a && **r == *a {
            return Some(all_balanced(a.atoms()));
        }
    }
    distributivity_witness(a, b)
}

fn distributivity_witness(a: &Formula, b: &Formula) -> Option<Realization> {
    let Formula::Disj(dl, dr) = a else { return None };
    let Formula::Conj(x1, y) = &**dl else { return None };
    let Formula::Conj(x2, z) = &**dr else { return None };
    let Formula::Conj(x3, yz) = b else { return None };
    let Formula::Disj(y2, z2) = &**yz else { return None };
    if x1 != x2 || x1 != x3 || y != y2 || z != z2 {
        return None;
    }
    let mut r = Realization::new();
    for name in z.atoms() {
        r.assign(&name, quarter_qubit()).expect("witness qubit is unit");
    }
    for name in x1.atoms().into_iter().chain(y.atoms()) {
        r.assign(&name, balanced_qubit()).expect("witness qubit is unit");
    }
    Some(r)
}

/// Known witness for a candidate tautology: excluded middle α∨¬α and
/// non-contradiction ¬(α∧¬α) both break at the balanced superposition.
pub fn known_tautology_witness(f: &Formula) -> Option<Realization> {
    if let Formula::Disj(l, r) = f {
        if let Formula::Neg(sub) = &**r {
            if **sub == **l {
                return Some(all_balanced(f.atoms()));
            }
        }
    }
    if let Formula::Neg(outer) = f {
        if let Formula::Conj(l, r) = &**outer {
            if let Formula::Neg(sub) = &**r {
                if **sub == **l {
                    return Some(all_balanced(f.atoms()));
                }
            }
        }
    }
    None
}

fn realization_from_probs(atoms: &[String], probs: &[f64]) -> Realization {
    let mut r = Realization::new();
    for (name, &p) in atoms.iter().zip(probs) {
        let qubit = Quregister::qubit(
            Complex64::new((1.0 - p).sqrt(), 0.0),
            Complex64::new(p.sqrt(), 0.0),
        );
        r.assign(name, qubit).expect("grid qubit is unit");
    }
    r
}

/// Sweeps atomic probabilities over {0, 0.1, …, 1}^k for √¬-free
/// claims. `margin_of` maps the grid probabilities to a violation
/// margin; the whole grid is scanned and the strongest hit is rebuilt
/// as a realization and re-measured with the full evaluator.
fn grid_search(
    atoms: &[String],
    state: &mut SearchState,
    margin_of: impl Fn(&BTreeMap<String, f64>) -> Result<f64>,
    remeasure: impl Fn(&Realization) -> Result<f64>,
) -> Result<Option<Counterexample>> {
    let k = atoms.len();
    if k == 0 || k > GRID_ATOM_CAP {
        return Ok(None);
    }
    let points = 11usize.pow(k as u32);
    let mut probs = vec![0.0f64; k];
    let mut best: Option<(f64, Vec<f64>)> = None;
    for index in 0..points {
        let mut rest = index;
        for slot in probs.iter_mut() {
            *slot = (rest % 11) as f64 / 10.0;
            rest /= 11;
        }
        let map: BTreeMap<String, f64> = atoms.iter().cloned().zip(probs.iter().copied()).collect();
        let margin = margin_of(&map)?;
        if state.observe(margin) && best.as_ref().is_none_or(|(m, _)| margin > *m) {
            best = Some((margin, probs.clone()));
        }
    }
    let Some((_, hit)) = best else {
        return Ok(None);
    };
    let realization = realization_from_probs(atoms, &hit);
    let margin = remeasure(&realization)?;
    if margin <= COUNTEREXAMPLE_MARGIN {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        margin,
        source: WitnessSource::Grid,
        realization,
    }))
}

/// Searches for a realization refuting Prob(a) ≤ Prob(b): pinned-witness
/// replay first, then the deterministic grid for √¬-free claims, then
/// seeded random sampling up to `budget`.
pub fn search_counterexample(a: &Formula, b: &Formula, budget: usize, seed: u64) -> SearchReport {
    let atoms = union_atoms(a, Some(b));
    let mut state = SearchState::new();

    if let Some(witness) = known_consequence_witness(a, b) {
        if let Ok(v) = consequence_at(a, b, &witness) {
            if state.observe(v.margin) {
                return state.finish(Some(Counterexample {
                    margin: v.margin,
                    source: WitnessSource::Pinned,
                    realization: witness,
                }));
            }
        }
    }

    if !a.contains_sqrt_neg() && !b.contains_sqrt_neg() {
        let hit = grid_search(
            &atoms,
            &mut state,
            |map| Ok(prob_via_atoms(a, map)? - prob_via_atoms(b, map)?),
            |r| Ok(consequence_at(a, b, r)?.margin),
        );
        if let Ok(Some(counterexample)) = hit {
            return state.finish(Some(counterexample));
        }
    }

    let mut stream = seed;
    for _ in 0..budget.max(1) {
        let r = sample_realization(&atoms, splitmix64(&mut stream));
        let Ok(v) = consequence_at(a, b, &r) else { continue };
        if state.observe(v.margin) {
            return state.finish(Some(Counterexample {
                margin: v.margin,
                source: WitnessSource::Sampled,
                realization: r,
            }));
        }
    }
    state.finish(None)
}

/// Searches for a realization refuting ⊨ f, i.e. one where
/// Prob(f) < 1. Same pipeline as the consequence search.
pub fn search_tautology_counterexample(f: &Formula, budget: usize, seed: u64) -> SearchReport {
    let atoms = union_atoms(f, None);
    let mut state = SearchState::new();

    if let Some(witness) = known_tautology_witness(f) {
        if let Ok(p) = prob_of(f, &witness) {
            if state.observe(1.0 - p) {
                return state.finish(Some(Counterexample {
                    margin: 1.0 - p,
                    source: WitnessSource::Pinned,
                    realization: witness,
                }));
            }
        }
    }

    if !f.contains_sqrt_neg() {
        let hit = grid_search(
            &atoms,
            &mut state,
            |map| Ok(1.0 - prob_via_atoms(f, map)?),
            |r| Ok(1.0 - prob_of(f, r)?),
        );
        if let Ok(Some(counterexample)) = hit {
            return state.finish(Some(counterexample));
        }
    }

    let mut stream = seed;
    for _ in 0..budget.max(1) {
        let r = sample_realization(&atoms, splitmix64(&mut stream));
        let Ok(p) = prob_of(f, &r) else { continue };
        if state.observe(1.0 - p) {
            return state.finish(Some(Counterexample {
                margin: 1.0 - p,
                source: WitnessSource::Sampled,
                realization: r,
            }));
        }
    }
    state.finish(None)
}
