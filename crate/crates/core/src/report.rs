//! Verification report lines.

use std::fmt;

use serde::Serialize;

/// One verified claim: "check-id,parameters,predicted,observed,PASS|FAIL".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    #[serde(rename = "check")]
    pub id: String,
    pub params: String,
    pub predicted: String,
    pub observed: String,
    #[serde(rename = "status", serialize_with = "status_field")]
    pub pass: bool,
}

fn status_field<S: serde::Serializer>(pass: &bool, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(if *pass { "PASS" } else { "FAIL" })
}

/// Header matching `csv_line`.
pub const CSV_HEADER: &str = "check,params,predicted,observed,status";

impl Check {
    pub fn new(
        id: impl Into<String>,
        params: impl Into<String>,
        predicted: impl ToString,
        observed: impl ToString,
    ) -> Self {
        let predicted = predicted.to_string();
        let observed = observed.to_string();
        Check {
            id: id.into(),
            params: params.into(),
            pass: predicted == observed,
            predicted,
            observed,
        }
    }

    /// A yes/no claim; predicted is always "true".
    pub fn holds(id: impl Into<String>, params: impl Into<String>, ok: bool) -> Self {
        Check::new(id, params, true, ok)
    }

    pub fn status(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn csv_line(&self) -> String {
        [
            self.id.as_str(),
            &quote(&self.params),
            &quote(&self.predicted),
            &quote(&self.observed),
            self.status(),
        ]
        .join(",")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<5} {:<28} {:<12} predicted {} observed {}",
            self.status(),
            self.id,
            self.params,
            self.predicted,
            self.observed
        )
    }
}

// parameter tuples like (2,4,2) stay unquoted, matching the report examples
fn quote(s: &str) -> String {
    let bracketed = s.starts_with('(') && s.ends_with(')') && !s.contains('"');
    if bracketed || !s.contains([',', '"', '\n']) {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('"', "\"\""))
    }
}

/// "(l,m,q)".
pub fn params(l: usize, m: usize, q: u32) -> String {
    format!("({l},{m},{q})")
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_format() {
        let c = Check::new("chow", params(2, 4, 2), 40320u64, 40320u64);
        assert_eq!(c.csv_line(), "chow,(2,4,2),40320,40320,PASS");
        let c = Check::new("x", "a,b", "1", "2");
        assert_eq!(c.csv_line(), "x,\"a,b\",1,2,FAIL");
    }
}
