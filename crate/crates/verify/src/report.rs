//! Machine-readable check results.

/// One verified invariant: the measured quantity against its tolerance.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    pub fn bounded(name: &str, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: measured <= tolerance,
            measured,
            tolerance,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }

    /// An informational entry that never fails; `measured` is still recorded.
    pub fn informational(name: &str, measured: f64, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: true,
            measured,
            tolerance: f64::INFINITY,
            detail,
        }
    }
}

/// Aggregated result of a verification run.
#[derive(Debug, Clone, Default)]
pub struct InvariantReport {
    pub checks: Vec<CheckResult>,
}

impl InvariantReport {
    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    /// One line per check: PASS/FAIL, name, measured, tolerance, detail.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {:<44} measured={:<12.6e} tol={:<12.6e} {}\n",
                c.name, c.measured, c.tolerance, c.detail
            ));
        }
        out.push_str(&format!(
            "{} checks, {} failures\n",
            self.checks.len(),
            self.failures()
        ));
        out
    }

    /// CSV twin of the report.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,pass,measured,tolerance,detail\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{:.17e},{:.17e},{}\n",
                c.name,
                c.pass,
                c.measured,
                c.tolerance,
                c.detail.replace(',', ";")
            ));
        }
        out
    }
}
