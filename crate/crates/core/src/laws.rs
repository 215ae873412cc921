//! Named registry of logical-law claims, the per-law runner, and the
//! suite report behind the `laws` command.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consts::{COUNTEREXAMPLE_MARGIN, GATE_IDENTITY_TOL, PROB_EQ_TOL};
use crate::gates::{and_gate, apply_not, apply_sqrt_not, apply_toffoli};
use crate::quregister::Quregister;
use crate::semantics::{
    consequence_at, prob_of, search_counterexample, search_tautology_counterexample,
    Counterexample, Realization, WitnessSource,
};
use crate::syntax::{parse, Formula};

/// What a law claims.
#[derive(Debug, Clone, PartialEq)]
pub enum LawKind {
    /// Prob(left) ≤ Prob(right) at every realization.
    Consequence { left: Formula, right: Formula },
    /// Prob(formula) = 1 at every realization.
    Tautology { formula: Formula },
    /// An operator-level identity checked on random states.
    GateProperty(GateProperty),
}

/// Operator-level identities carried alongside the logical laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateProperty {
    /// √NOT applied twice equals NOT, widths 1 through 6.
    SqrtNotSquared,
    /// The Toffoli commutes with √NOT, (n, m) over {1,2}×{1,2}.
    ToffoliSqrtNotCommutation,
    /// NOT and √NOT commute, widths 1 through 6.
    NotSqrtNotCommutation,
    /// Prob(√NOT(AND(ψ, φ))) is ½ for all unit ψ, φ.
    ConstantHalf,
}

/// Whether the claim is expected to survive search or to be refuted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Holds,
    Fails,
}

/// One registered claim. Claims expected to fail with a known
/// witness carry it pinned for deterministic replay.
#[derive(Debug, Clone, PartialEq)]
pub struct LawSpec {
    pub id: &'static str,
    pub kind: LawKind,
    pub expected: Expected,
    pub pinned_counterexample: Option<Realization>,
}

/// Verdict of one law run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Expected to hold; no counterexample found within budget.
    #[serde(rename = "CONFIRMED-HOLDS-UNREFUTED")]
    ConfirmedHoldsUnrefuted,
    /// Expected to fail; a counterexample was found.
    #[serde(rename = "CONFIRMED-FAILS")]
    ConfirmedFails,
    /// Outcome contradicts the expectation; build-breaking.
    #[serde(rename = "UNEXPECTED")]
    Unexpected,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ConfirmedHoldsUnrefuted => "CONFIRMED-HOLDS-UNREFUTED",
            Verdict::ConfirmedFails => "CONFIRMED-FAILS",
            Verdict::Unexpected => "UNEXPECTED",
        })
    }
}

/// Outcome of one law run. Wall time is measured but never serialized,
/// so reports for a fixed seed and budget are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub id: String,
    pub verdict: Verdict,
    pub samples: usize,
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip, default)]
    pub wall_ms: f64,
}

/// Aggregate of a full suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub engine_version: String,
    pub seed: u64,
    pub budget: usize,
    pub laws: Vec<LawReport>,
    pub pass: bool,
}

fn balanced() -> Quregister {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Quregister::qubit(num_complex::Complex64::new(h, 0.0), num_complex::Complex64::new(h, 0.0))
}

fn pinned_balanced(names: &[&str]) -> Realization {
    let mut r = Realization::new();
    for name in names {
        r.assign(name, balanced()).expect("pinned qubit is unit");
    }
    r
}

fn pinned_distributivity() -> Realization {
    let mut r = pinned_balanced(&["p", "q"]);
    let gamma = Quregister::qubit(
        num_complex::Complex64::new(3f64.sqrt() / 2.0, 0.0),
        num_complex::Complex64::new(0.5, 0.0),
    );
    r.assign("r", gamma).expect("pinned qubit is unit");
    r
}

fn holds(id: &'static str, left: &str, right: &str) -> LawSpec {
    LawSpec {
        id,
        kind: LawKind::Consequence {
            left: parse(left).expect("builtin formula parses"),
            right: parse(right).expect("builtin formula parses"),
        },
        expected: Expected::Holds,
        pinned_counterexample: None,
    }
}

fn property(id: &'static str, property: GateProperty) -> LawSpec {
    LawSpec {
        id,
        kind: LawKind::GateProperty(property),
        expected: Expected::Holds,
        pinned_counterexample: None,
    }
}

/// The full registry: sixteen holding entailment directions, four
/// refuted claims with pinned witnesses, and four operator properties.
pub fn builtin_laws() -> Vec<LawSpec> {
    vec![
        holds("double-negation-fwd", "p", "not not p"),
        holds("double-negation-rev", "not not p", "p"),
        holds("sqrt-double-negation-fwd", "snot snot p", "not p"),
        holds("sqrt-double-negation-rev", "not p", "snot snot p"),
        holds("commutativity-and", "p and q", "q and p"),
        holds("commutativity-or", "p or q", "q or p"),
        holds("associativity-and-fwd", "p and (q and r)", "(p and q) and r"),
        holds("associativity-and-rev", "(p and q) and r", "p and (q and r)"),
        holds("associativity-or-fwd", "p or (q or r)", "(p or q) or r"),
        holds("associativity-or-rev", "(p or q) or r", "p or (q or r)"),
        holds("de-morgan-1-fwd", "not (p and q)", "not p or not q"),
        holds("de-morgan-1-rev", "not p or not q", "not (p and q)"),
        holds("de-morgan-2-fwd", "not (p or q)", "not p and not q"),
        holds("de-morgan-2-rev", "not p and not q", "not (p or q)"),
        holds("semiidempotence-1", "p and p", "p"),
        holds("distributivity-1", "p and (q or r)", "(p and q) or (p and r)"),
        LawSpec {
            id: "semiidempotence-2",
            kind: LawKind::Consequence {
                left: parse("p").expect("builtin formula parses"),
                right: parse("p and p").expect("builtin formula parses"),
            },
            expected: Expected::Fails,
            pinned_counterexample: Some(pinned_balanced(&["p"])),
        },
        LawSpec {
            id: "excluded-middle",
            kind: LawKind::Tautology {
                formula: parse("p or not p").expect("builtin formula parses"),
            },
            expected: Expected::Fails,
            pinned_counterexample: Some(pinned_balanced(&["p"])),
        },
        LawSpec {
            id: "non-contradiction",
            kind: LawKind::Tautology {
                formula: parse("not (p and not p)").expect("builtin formula parses"),
            },
            expected: Expected::Fails,
            pinned_counterexample: Some(pinned_balanced(&["p"])),
        },
        LawSpec {
            id: "distributivity-2",
            kind: LawKind::Consequence {
                left: parse("(p and q) or (p and r)").expect("builtin formula parses"),
                right: parse("p and (q or r)").expect("builtin formula parses"),
            },
            expected: Expected::Fails,
            pinned_counterexample: Some(pinned_distributivity()),
        },
        property("sqrt-not-squared", GateProperty::SqrtNotSquared),
        property(
            "commutation-toffoli-sqrt-not",
            GateProperty::ToffoliSqrtNotCommutation,
        ),
        property("commutation-not-sqrt-not", GateProperty::NotSqrtNotCommutation),
        property("constant-half", GateProperty::ConstantHalf),
    ]
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in text.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn max_componentwise_deviation(a: &Quregister, b: &Quregister) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Runs one operator property for `budget` trials, cycling through its
/// width (or arity) combinations. Returns (samples, worst deviation,
/// tolerance).
fn run_gate_property(
    property: GateProperty,
    budget: usize,
    seed: u64,
) -> crate::Result<(usize, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = budget.max(1);
    let mut worst = 0.0f64;
    match property {
        GateProperty::SqrtNotSquared => {
            for i in 0..budget {
                let width = 1 + i % 6;
                let psi = Quregister::random_unit(width, &mut rng);
                let twice = apply_sqrt_not(&apply_sqrt_not(&psi)?)?;
                let flipped = apply_not(&psi)?;
                worst = worst.max(max_componentwise_deviation(&twice, &flipped));
            }
            Ok((budget, worst, GATE_IDENTITY_TOL))
        }
        GateProperty::ToffoliSqrtNotCommutation => {
            const ARITIES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];
            for i in 0..budget {
                let (n, m) = ARITIES[i % 4];
                let psi = Quregister::random_unit(n + m + 1, &mut rng);
                let a = apply_sqrt_not(&apply_toffoli(&psi, n, m)?)?;
                let b = apply_toffoli(&apply_sqrt_not(&psi)?, n, m)?;
                worst = worst.max(max_componentwise_deviation(&a, &b));
            }
            Ok((budget, worst, GATE_IDENTITY_TOL))
        }
        GateProperty::NotSqrtNotCommutation => {
            for i in 0..budget {
                let width = 1 + i % 6;
                let psi = Quregister::random_unit(width, &mut rng);
                let a = apply_sqrt_not(&apply_not(&psi)?)?;
                let b = apply_not(&apply_sqrt_not(&psi)?)?;
                worst = worst.max(max_componentwise_deviation(&a, &b));
            }
            Ok((budget, worst, GATE_IDENTITY_TOL))
        }
        GateProperty::ConstantHalf => {
            const ARITIES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];
            for i in 0..budget {
                let (n, m) = ARITIES[i % 4];
                let psi = Quregister::random_unit(n, &mut rng);
                let phi = Quregister::random_unit(m, &mut rng);
                let p = apply_sqrt_not(&and_gate(&psi, &phi)?)?.prob()?;
                worst = worst.max((p - 0.5).abs());
            }
            Ok((budget, worst, PROB_EQ_TOL))
        }
    }
}

fn error_report(spec: &LawSpec, error: crate::Error, start: Instant) -> LawReport {
    LawReport {
        id: spec.id.to_string(),
        verdict: Verdict::Unexpected,
        samples: 0,
        worst_margin: f64::NAN,
        counterexample: None,
        error: Some(error.to_string()),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs one law: pinned witness first, then search (or the property
/// trials), then the verdict from the expected/outcome matrix.
pub fn run_law(spec: &LawSpec, budget: usize, seed: u64) -> LawReport {
    let start = Instant::now();
    let law_seed = seed ^ fnv1a64(spec.id);

    let (samples, worst_margin, counterexample) = match &spec.kind {
        LawKind::GateProperty(property) => {
            match run_gate_property(*property, budget, law_seed) {
                Ok((samples, worst, tolerance)) => {
                    let verdict = if worst <= tolerance {
                        Verdict::ConfirmedHoldsUnrefuted
                    } else {
                        Verdict::Unexpected
                    };
                    return LawReport {
                        id: spec.id.to_string(),
                        verdict,
                        samples,
                        worst_margin: worst,
                        counterexample: None,
                        error: None,
                        wall_ms: start.elapsed().as_secs_f64() * 1e3,
                    };
                }
                Err(e) => return error_report(spec, e, start),
            }
        }
        LawKind::Consequence { left, right } => {
            let mut samples = 0usize;
            let mut worst = f64::NEG_INFINITY;
            let mut found = None;
            if let Some(pinned) = &spec.pinned_counterexample {
                match consequence_at(left, right, pinned) {
                    Ok(v) => {
                        samples += 1;
                        worst = worst.max(v.margin);
                        if v.margin > COUNTEREXAMPLE_MARGIN {
                            found = Some(Counterexample {
                                margin: v.margin,
                                source: WitnessSource::Pinned,
                                realization: pinned.clone(),
                            });
                        }
                    }
                    Err(e) => return error_report(spec, e, start),
                }
            }
            if found.is_none() {
                let report = search_counterexample(left, right, budget, law_seed);
                samples += report.samples;
                worst = worst.max(report.worst_margin);
                found = report.counterexample;
            }
            (samples, worst, found)
        }
        LawKind::Tautology { formula } => {
            let mut samples = 0usize;
            let mut worst = f64::NEG_INFINITY;
            let mut found = None;
            if let Some(pinned) = &spec.pinned_counterexample {
                match prob_of(formula, pinned) {
                    Ok(p) => {
                        let margin = 1.0 - p;
                        samples += 1;
                        worst = worst.max(margin);
                        if margin > COUNTEREXAMPLE_MARGIN {
                            found = Some(Counterexample {
                                margin,
                                source: WitnessSource::Pinned,
                                realization: pinned.clone(),
                            });
                        }
                    }
                    Err(e) => return error_report(spec, e, start),
                }
            }
            if found.is_none() {
                let report = search_tautology_counterexample(formula, budget, law_seed);
                samples += report.samples;
                worst = worst.max(report.worst_margin);
                found = report.counterexample;
            }
            (samples, worst, found)
        }
    };

    let verdict = match (spec.expected, counterexample.is_some()) {
        (Expected::Holds, false) => Verdict::ConfirmedHoldsUnrefuted,
        (Expected::Holds, true) => Verdict::Unexpected,
        (Expected::Fails, true) => Verdict::ConfirmedFails,
        (Expected::Fails, false) => Verdict::Unexpected,
    };
    LawReport {
        id: spec.id.to_string(),
        verdict,
        samples,
        worst_margin,
        counterexample,
        error: None,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs the whole registry. Per-law seeds are derived from the suite
/// seed and the law id, so results do not depend on execution order.
pub fn run_suite(budget: usize, seed: u64) -> SuiteReport {
    let laws: Vec<LawReport> = builtin_laws()
        .iter()
        .map(|spec| run_law(spec, budget, seed))
        .collect();
    let pass = laws.iter().all(|r| r.verdict != Verdict::Unexpected);
    SuiteReport {
        schema: 1,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        budget,
        laws,
        pass,
    }
}
