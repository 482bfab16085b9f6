//! Report types emitted by every subcommand. The JSON schema is stable and
//! documented in the repository README; the text format is rendered from the
//! same data.

use serde::Serialize;

#[derive(Serialize, Debug, Clone)]
pub struct CheckRecord {
    /// Stable machine-readable check identifier.
    pub id: String,
    /// Reference label of the statement being checked.
    pub reference: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct Assignment {
    pub name: String,
    pub coords: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct CandidateRecord {
    pub assignment: Vec<Assignment>,
    pub relations_pass: Vec<bool>,
    /// Residual expression for each failing relation, aligned with
    /// `relations_pass` (null when the relation holds).
    pub residuals: Vec<Option<String>>,
    pub spans_all_degrees: bool,
    pub passes: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct TargetReport {
    pub target: String,
    pub group: String,
    pub max_degree: usize,
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_dims: Option<Vec<usize>>,
    pub checks: Vec<CheckRecord>,
    pub candidates: Vec<CandidateRecord>,
    pub elapsed_ms: u128,
    pub verdict: bool,
}

impl TargetReport {
    /// Verdict policy: every check passes, and when a candidate table is
    /// present at least one tuple passes all of its relation checks.
    pub fn finalize(&mut self) {
        assert!(
            !self.checks.is_empty(),
            "a report with zero checks is invalid"
        );
        self.verdict = self.checks.iter().all(|c| c.pass)
            && (self.candidates.is_empty() || self.candidates.iter().any(|c| c.passes));
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: String,
    pub targets: Vec<TargetReport>,
    pub verdict: bool,
}

impl Report {
    pub fn new(command: &str, targets: Vec<TargetReport>) -> Report {
        let verdict = targets.iter().all(|t| t.verdict);
        Report {
            command: command.to_string(),
            targets,
            verdict,
        }
    }

    pub fn failing_checks(&self) -> Vec<String> {
        self.targets
            .iter()
            .flat_map(|t| {
                t.checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(move |c| format!("{}/{}", t.target, c.id))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.targets {
            out.push_str(&format!(
                "== {} [{}] group={} max_degree={} ({} ms)\n",
                t.target,
                if t.verdict { "pass" } else { "FAIL" },
                t.group,
                t.max_degree,
                t.elapsed_ms
            ));
            out.push_str(&format!("   betti: {:?}\n", t.betti));
            if let Some(dims) = &t.ring_dims {
                out.push_str(&format!("   ring:  {dims:?}\n"));
            }
            for c in &t.checks {
                out.push_str(&format!(
                    "   [{}] {} {}: expected {}, computed {}\n",
                    if c.pass { "ok " } else { "FAIL" },
                    c.reference,
                    c.description,
                    c.expected,
                    c.computed
                ));
            }
            if !t.candidates.is_empty() {
                let passing = t.candidates.iter().filter(|c| c.passes).count();
                out.push_str(&format!(
                    "   candidate tuples: {} total, {} passing\n",
                    t.candidates.len(),
                    passing
                ));
                for (i, c) in t.candidates.iter().enumerate() {
                    if c.passes {
                        let names: Vec<String> = c
                            .assignment
                            .iter()
                            .map(|a| format!("{}={}", a.name, a.coords))
                            .collect();
                        out.push_str(&format!("     tuple {i}: {}\n", names.join(", ")));
                    }
                }
            }
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.verdict { "pass" } else { "FAIL" }
        ));
        out
    }
}
