//! Suite reports, stable error codes and the list of resolved deviations.

use std::fmt::Display;

use serde::{Serialize, Serializer};

/// The `code` tag of a serialized error enum; wrapped errors carry their own code.
pub fn error_code<E: Serialize>(e: &E) -> String {
    match serde_json::to_value(e) {
        Ok(serde_json::Value::Object(map)) => map
            .get("code")
            .and_then(|c| c.as_str())
            .unwrap_or("unknown")
            .to_string(),
        _ => "unknown".to_string(),
    }
}

pub fn display<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// Counterexamples kept per suite; the failure count is always exact.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// `None` for structural checks that do not depend on a trial.
    pub trial: Option<u32>,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub trials: u32,
    pub checks: u64,
    pub failures: u64,
    /// Samples abandoned because rejection sampling ran out of retries.
    pub skipped: u64,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str, trials: u32) -> Self {
        SuiteReport {
            name: name.to_string(),
            trials,
            checks: 0,
            failures: 0,
            skipped: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn check(&mut self, trial: Option<u32>, label: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(trial, label, detail());
        }
    }

    pub fn fail(&mut self, trial: Option<u32>, label: &str, detail: String) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                trial,
                check: label.to_string(),
                detail,
            });
        }
    }

    /// Folds the counts of `other` into `self`, keeping the earliest counterexamples.
    pub fn merge(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures += other.failures;
        self.skipped += other.skipped;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
        self.notes.extend(other.notes);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub id: &'static str,
    pub summary: &'static str,
}

/// Formula choices that were settled by computation, each checked by a suite.
pub const RESOLVED_DEVIATIONS: [Deviation; 9] = [
    Deviation {
        id: "sigma2_shear",
        summary: "the shear normalizing s2 is (-1/3, 1/3), solved from the point correspondence",
    },
    Deviation {
        id: "gm_free_slot",
        summary: "the free (1,3) slot of A(z) is calibrated from the residue at infinity and equals alpha_inf",
    },
    Deviation {
        id: "alpha_inf_reading",
        summary: "alpha_inf is read from the image of res_inf + beta_H at infinity with unit first coefficient",
    },
    Deviation {
        id: "beta_condition",
        summary: "beta_H uses the mu form, and the convolution hypotheses are checked on the input mu",
    },
    Deviation {
        id: "chi_sign",
        summary: "chi(E_a - E_b) = -(nu_a - nu_b); only this sign makes the chi-derived action agree with w3",
    },
    Deviation {
        id: "b13_sign",
        summary: "the constant term of b13 in the normal form is -nu00 nu01 nu02",
    },
    Deviation {
        id: "xi_frame_rescale",
        summary: "the third xi frame vector is scaled by 1/beta_T and followed by one normalization gauge",
    },
    Deviation {
        id: "sublattice_rank",
        summary: "root and triangle lattices span a rank 9 sublattice meeting in Z delta, not all of Pic",
    },
    Deviation {
        id: "contracted_lines",
        summary: "under w3 the lines f46, f16, f14 contract to p1, p4, p6 of the target configuration",
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub trials: u32,
    pub all_pass: bool,
    pub suites: Vec<SuiteReport>,
    pub resolved_deviations: Vec<Deviation>,
}

impl Report {
    pub fn new(seed: u64, trials: u32, suites: Vec<SuiteReport>) -> Self {
        Report {
            seed,
            trials,
            all_pass: suites.iter().all(SuiteReport::passed),
            suites,
            resolved_deviations: RESOLVED_DEVIATIONS.to_vec(),
        }
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceError;
    use crate::convolution::ConvolutionError;
    use crate::connection::ConnectionError;

    #[test]
    fn codes_are_snake_case_and_nested_codes_win() {
        assert_eq!(error_code(&SurfaceError::GammaZero), "gamma_zero");
        let nested = ConvolutionError::Connection(ConnectionError::NotLogarithmic);
        assert_eq!(error_code(&nested), "not_logarithmic");
        let text = serde_json::to_string(&nested).unwrap();
        assert_eq!(text.matches("\"code\"").count(), 1, "{text}");
    }

    #[test]
    fn counterexamples_are_capped() {
        let mut s = SuiteReport::new("x", 0);
        for _ in 0..9 {
            s.check(None, "c", false, String::new);
        }
        assert_eq!((s.checks, s.failures), (9, 9));
        assert_eq!(s.counterexamples.len(), MAX_COUNTEREXAMPLES);
    }
}
