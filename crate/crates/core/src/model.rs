//! Model definition: per-unit parameter sets, validation, and TOML ingestion.
//!
//! All quantities are per-unit on the machine base; synchronous speed is 1 pu,
//! so rotor speed is `s + 1` and no base conversions happen anywhere.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative guard band around the parallel resonance `y_c = 1/x_m'`.
/// Values with `|y_c * x_m' - 1| <= RESONANCE_GUARD` are rejected.
pub const RESONANCE_GUARD: f64 = 1e-6;

/// Default upper bound of the slip analysis domain.
pub const DEFAULT_SLIP_DOMAIN_UPPER: f64 = 0.5;

/// Per-unit electrical parameters of the induction machine, its line, and the
/// terminal compensation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineParams {
    /// Stator resistance (pu).
    pub r_s: f64,
    /// Stator leakage reactance (pu).
    pub x_s: f64,
    /// Magnetizing reactance of the machine alone (pu).
    pub x_m_prime: f64,
    /// Rotor resistance (pu).
    pub r_r: f64,
    /// Rotor leakage reactance (pu).
    pub x_r: f64,
    /// Line reactance to the infinite bus (pu).
    pub x_l: f64,
    /// Infinite-bus voltage magnitude (pu).
    pub v_b: f64,
    /// Compensation susceptance at the machine terminals (pu, >= 0).
    #[serde(default)]
    pub y_c: f64,
    /// Rotor-resistance multiplier; 1 for a plain squirrel-cage machine,
    /// > 1 models external rotor resistance.
    #[serde(default = "default_r_mult")]
    pub r_mult: f64,
}

fn default_r_mult() -> f64 {
    1.0
}

/// Per-unit aerodynamic fit and the combined drivetrain inertia.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TurbineParams {
    /// Tip-speed ratio the fit treats as optimal.
    pub lambda_0: f64,
    /// Power-curve fit coefficient (1/lambda term).
    pub a: f64,
    /// Power-curve fit offset.
    pub b: f64,
    /// Power-curve fit exponential scale.
    pub c: f64,
    /// Combined turbine + generator inertia (pu·s).
    pub inertia_m: f64,
}

/// Full analysis model: machine, turbine, and the slip domain bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelDef {
    pub machine: MachineParams,
    pub turbine: TurbineParams,
    /// Upper bound of the slip analysis domain (pu).
    pub slip_domain_upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnalysisSection {
    #[serde(default = "default_slip_domain_upper")]
    slip_domain_upper: f64,
}

fn default_slip_domain_upper() -> f64 {
    DEFAULT_SLIP_DOMAIN_UPPER
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            slip_domain_upper: DEFAULT_SLIP_DOMAIN_UPPER,
        }
    }
}

/// On-disk layout: `[machine]`, `[turbine]`, optional `[analysis]`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    machine: MachineParams,
    turbine: TurbineParams,
    #[serde(default)]
    analysis: AnalysisSection,
}

/// One violated or flagged invariant, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Outcome of [`ModelDef::validate`]. Violations fail the model; warnings
/// flag permitted-but-unusual configurations (compensation past resonance).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass")?;
        } else {
            let list: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", list.join("; "))?;
        }
        if !self.warnings.is_empty() {
            let list: Vec<String> = self.warnings.iter().map(|w| w.to_string()).collect();
            write!(f, " (warnings: {})", list.join("; "))?;
        }
        Ok(())
    }
}

impl ModelDef {
    /// The reference parameter set used by the bundled `paper.toml` fixture,
    /// the golden files, and most of the test-suite.
    pub fn reference() -> Self {
        Self {
            machine: MachineParams {
                r_s: 0.031,
                x_s: 0.10,
                x_m_prime: 3.1,
                r_r: 0.018,
                x_r: 0.18,
                x_l: 0.08,
                v_b: 1.0,
                y_c: 0.0,
                r_mult: 1.0,
            },
            turbine: TurbineParams {
                lambda_0: 7.04,
                a: 247.7079,
                b: 21.6539,
                c: 18.40,
                inertia_m: 0.8,
            },
            slip_domain_upper: DEFAULT_SLIP_DOMAIN_UPPER,
        }
    }

    /// Checks every parameter invariant. Total: never panics, any finite or
    /// non-finite numeric input yields a report.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let m = &self.machine;
        let mut positive = |field: &str, value: f64| {
            if value.is_nan() || value <= 0.0 {
                report.violations.push(Violation {
                    field: field.to_string(),
                    message: format!("must be strictly positive, got {value}"),
                });
            }
        };
        positive("r_s", m.r_s);
        positive("x_s", m.x_s);
        positive("x_m_prime", m.x_m_prime);
        positive("r_r", m.r_r);
        positive("x_r", m.x_r);
        positive("x_l", m.x_l);
        positive("v_b", m.v_b);
        let t = &self.turbine;
        positive("lambda_0", t.lambda_0);
        positive("a", t.a);
        positive("b", t.b);
        positive("c", t.c);
        positive("inertia_m", t.inertia_m);
        positive("slip_domain_upper", self.slip_domain_upper);

        if m.y_c.is_nan() || m.y_c < 0.0 {
            report.violations.push(Violation {
                field: "y_c".to_string(),
                message: format!("must be >= 0, got {}", m.y_c),
            });
        } else if m.x_m_prime > 0.0 {
            let product = m.y_c * m.x_m_prime;
            if (product - 1.0).abs() <= RESONANCE_GUARD {
                report.violations.push(Violation {
                    field: "y_c".to_string(),
                    message: format!(
                        "parallel resonance: y_c = {} is within the guard band of 1/x_m' = {}",
                        m.y_c,
                        1.0 / m.x_m_prime
                    ),
                });
            } else if product > 1.0 {
                report.warnings.push(Violation {
                    field: "y_c".to_string(),
                    message: format!(
                        "compensation past resonance (y_c > 1/x_m' = {}); net magnetizing \
                         reactance is negative",
                        1.0 / m.x_m_prime
                    ),
                });
            }
        }
        if m.r_mult.is_nan() || m.r_mult < 1.0 {
            report.violations.push(Violation {
                field: "r_mult".to_string(),
                message: format!("must be >= 1, got {}", m.r_mult),
            });
        }
        report
    }

    /// Loads and validates a model from a TOML file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Parses and validates a model from TOML text.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ModelFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let model = Self {
            machine: file.machine,
            turbine: file.turbine,
            slip_domain_upper: file.analysis.slip_domain_upper,
        };
        let report = model.validate();
        if !report.passed() {
            return Err(Error::Validation(report));
        }
        Ok(model)
    }

    /// Serializes back to the `[machine]`/`[turbine]`/`[analysis]` layout.
    pub fn to_toml_string(&self) -> String {
        let file = ModelFile {
            machine: self.machine,
            turbine: self.turbine,
            analysis: AnalysisSection {
                slip_domain_upper: self.slip_domain_upper,
            },
        };
        toml::to_string(&file).expect("model serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_model_passes() {
        let report = ModelDef::reference().validate();
        assert!(report.passed(), "{report}");
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn zero_rotor_resistance_names_field() {
        let mut model = ModelDef::reference();
        model.machine.r_r = 0.0;
        let report = model.validate();
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.field == "r_r"));
    }

    #[test]
    fn resonant_compensation_names_y_c() {
        let mut model = ModelDef::reference();
        model.machine.y_c = 1.0 / 3.1;
        let report = model.validate();
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.field == "y_c"));
    }

    #[test]
    fn past_resonance_is_warned_not_rejected() {
        let mut model = ModelDef::reference();
        model.machine.y_c = 1.0; // well past 1/3.1
        let report = model.validate();
        assert!(report.passed());
        assert!(report.warnings.iter().any(|w| w.field == "y_c"));
    }

    #[test]
    fn negative_y_c_rejected() {
        let mut model = ModelDef::reference();
        model.machine.y_c = -0.1;
        assert!(!model.validate().passed());
    }

    #[test]
    fn fixture_matches_reference() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/paper.toml");
        let model = ModelDef::load(path).unwrap();
        assert_eq!(model, ModelDef::reference());
    }

    #[test]
    fn omitted_optionals_take_defaults() {
        let text = r#"
            [machine]
            r_s = 0.031
            x_s = 0.10
            x_m_prime = 3.1
            r_r = 0.018
            x_r = 0.18
            x_l = 0.08
            v_b = 1.0

            [turbine]
            lambda_0 = 7.04
            a = 247.7079
            b = 21.6539
            c = 18.40
            inertia_m = 0.8
        "#;
        let model = ModelDef::from_toml_str(text).unwrap();
        assert_eq!(model.machine.y_c, 0.0);
        assert_eq!(model.machine.r_mult, 1.0);
        assert_eq!(model.slip_domain_upper, 0.5);
    }

    #[test]
    fn invalid_file_reports_validation_error() {
        let mut model = ModelDef::reference();
        model.machine.r_r = -0.01;
        let text = model.to_toml_string();
        match ModelDef::from_toml_str(&text) {
            Err(Error::Validation(report)) => {
                assert!(report.violations.iter().any(|v| v.field == "r_r"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_toml_is_a_parse_error() {
        assert!(matches!(
            ModelDef::from_toml_str("[machine"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            ModelDef::from_toml_str("[machine]\nbogus_key = 1.0"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn toml_round_trip_is_exact() {
        let model = ModelDef::reference();
        let back = ModelDef::from_toml_str(&model.to_toml_string()).unwrap();
        assert_eq!(back, model);
    }

    #[test]
    fn validate_total_on_non_finite() {
        let mut model = ModelDef::reference();
        model.machine.x_m_prime = f64::NAN;
        model.turbine.a = f64::INFINITY;
        let report = model.validate();
        assert!(report.violations.iter().any(|v| v.field == "x_m_prime"));
    }
}
