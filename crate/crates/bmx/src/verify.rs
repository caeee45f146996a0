//! Tiered reproduction runs: fixtures, the census total, and the
//! catalogue-backed extremal checks, at three cost levels.
//!
//! Quick covers ranks 3..=5, full adds rank 6, long adds rank 7. Each
//! tier builds one excluded-minor catalogue just large enough for its
//! checks; every assertion comes back as a labelled pass/fail line, never
//! a panic.

use std::fmt;

use bmx_core::gadgets::{verify_fixture, Fixture};
use bmx_core::polya::subset_orbit_profile;

use crate::parallel::bootstrap_parallel;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level {
    Quick,
    Full,
    Long,
}

impl Level {
    /// Catalogue bounds: the smallest (rank, size) window whose complete
    /// strata certify this tier's table rows.
    fn bounds(self) -> (u8, u8) {
        match self {
            Level::Quick => (5, 16),
            Level::Full => (6, 22),
            Level::Long => (7, 29),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), pass, detail: detail.into() });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(
                f,
                "{} {:<34} {}",
                if l.pass { "PASS" } else { "FAIL" },
                l.name,
                l.detail
            )?;
        }
        write!(
            f,
            "{}/{} checks passed",
            self.lines.iter().filter(|l| l.pass).count(),
            self.lines.len()
        )
    }
}

pub fn run(level: Level, workers: usize) -> VerifyReport {
    let mut report = VerifyReport::default();

    for fixture in Fixture::ALL {
        let pass = verify_fixture(fixture);
        report.push(
            format!("fixture {}", fixture.name()),
            pass,
            if pass { "verified" } else { "computation did not match" },
        );
    }

    match subset_orbit_profile(6) {
        Ok(profile) => {
            // every per-size entry at rank 6 fits comfortably in u64
            let total: u64 = profile.iter().map(|b| u64::try_from(b).unwrap()).sum();
            let pass = total == 475_499_108;
            report.push("census_rank6_total", pass, format!("counted {total}"));
        }
        Err(e) => report.push("census_rank6_total", false, e.to_string()),
    }

    let (rank, size) = level.bounds();
    let cat = bootstrap_parallel(rank, size, true, workers);
    match bmx_core::catalogue::verify_theorems(&cat) {
        Ok(checks) => {
            for c in checks {
                report.push(c.name, c.pass, c.detail);
            }
        }
        Err(e) => report.push("catalogue_checks", false, e.to_string()),
    }

    report
}
