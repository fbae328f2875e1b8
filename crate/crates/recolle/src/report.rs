//! Machine-readable suite reports: a versioned JSON schema with one entry
//! per check, plus a plain-text traceability table. Check lists are sorted
//! by id so identical configurations produce byte-identical output.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
}

impl Check {
    pub fn pass(id: &str) -> Check {
        Check {
            id: id.to_string(),
            status: Status::Pass,
            witness: None,
            dims: None,
        }
    }

    pub fn fail(id: &str, witness: String) -> Check {
        Check {
            id: id.to_string(),
            status: Status::Fail,
            witness: Some(witness),
            dims: None,
        }
    }

    pub fn undecided(id: &str, witness: String) -> Check {
        Check {
            id: id.to_string(),
            status: Status::Undecided,
            witness: Some(witness),
            dims: None,
        }
    }

    pub fn from_flag(id: &str, ok: bool, witness: impl FnOnce() -> String) -> Check {
        if ok {
            Check::pass(id)
        } else {
            Check::fail(id, witness())
        }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Check {
        self.dims = Some(dims);
        self
    }

    pub fn with_witness(mut self, witness: String) -> Check {
        self.witness = Some(witness);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub budget: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, budget: usize) -> Report {
        Report {
            schema: 1,
            suite: suite.to_string(),
            seed,
            budget,
            checks: Vec::new(),
        }
    }

    pub fn extend(&mut self, checks: Vec<Check>) {
        self.checks.extend(checks);
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Sort checks by id for deterministic output.
    pub fn finalize(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn any_undecided(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Undecided)
    }

    /// 0 = all pass, 1 = some failure, 3 = undecided but no failure.
    pub fn exit_code(&self) -> i32 {
        if self.any_fail() {
            1
        } else if self.any_undecided() {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite: {}  (seed {}, budget {})\n",
            self.suite, self.seed, self.budget
        );
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Undecided => "undecided",
            };
            out.push_str(&format!("  {:<50} {}", c.id, status));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [{w}]"));
            }
            if let Some(d) = &c.dims {
                out.push_str(&format!("  dims {d:?}"));
            }
            out.push('\n');
        }
        out
    }
}
