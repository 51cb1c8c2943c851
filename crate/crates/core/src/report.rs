//! Outcome of a single identity check.

use std::fmt;
use std::time::Instant;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactring::{Rat, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// How firmly the checked statement is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tag {
    Proven,
    Conjecture,
    Expected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check_name: String,
    pub params: IndexMap<String, String>,
    pub status: Status,
    pub tag: Tag,
    pub residual_first_nonzero_order: Option<usize>,
    pub truncation_order: usize,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    /// Runs `f` and grades its residual series: zero means PASS.
    pub fn from_residual<F>(name: &str, params: Params, tag: Tag, order: usize, f: F) -> Report
    where
        F: FnOnce() -> Result<Series>,
    {
        let start = Instant::now();
        let res = f();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let mut rep = Report {
            check_name: name.to_string(),
            params: params.0,
            status: Status::Pass,
            tag,
            residual_first_nonzero_order: None,
            truncation_order: order,
            elapsed_ms,
            detail: None,
        };
        match res {
            Ok(s) => {
                if let Some(k) = s.first_nonzero() {
                    rep.status = Status::Fail;
                    rep.residual_first_nonzero_order = Some(k);
                }
            }
            Err(e) => {
                rep.status = Status::Error;
                rep.detail = Some(e.to_string());
            }
        }
        rep
    }

    /// Same as [`Report::from_residual`] for exact rational residuals.
    pub fn from_exact<F>(name: &str, params: Params, tag: Tag, f: F) -> Report
    where
        F: FnOnce() -> Result<Rat>,
    {
        Report::from_residual(name, params, tag, 1, || {
            f().map(|r| Series::constant(r, 1))
        })
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A failure that should make the run fail: anything not PASS on a proven statement.
    pub fn is_hard_failure(&self) -> bool {
        !self.passed() && self.tag == Tag::Proven
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        write!(f, "{status} {}", self.check_name)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        write!(f, " O={}", self.truncation_order)?;
        match self.tag {
            Tag::Proven => {}
            Tag::Conjecture => write!(f, " [CONJECTURE]")?,
            Tag::Expected => write!(f, " [EXPECTED]")?,
        }
        if let Some(k) = self.residual_first_nonzero_order {
            write!(f, " residual@u^{k}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        write!(f, " {}ms", self.elapsed_ms)
    }
}

/// Ordered check parameters.
#[derive(Clone, Debug, Default)]
pub struct Params(IndexMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, k: &str, v: impl fmt::Display) -> Self {
        self.0.insert(k.to_string(), v.to_string());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat_int;

    #[test]
    fn text_line_and_json_roundtrip() {
        let p = Params::new().with("I", "{1}").with("i", 2).with("j", 3);
        let mut rep = Report::from_residual("qq/bosonic", p, Tag::Proven, 6, || Ok(Series::zero(6)));
        rep.elapsed_ms = 3;
        assert_eq!(rep.to_string(), "PASS qq/bosonic I={1} i=2 j=3 O=6 3ms");
        let json = serde_json::to_string(&rep).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn nonzero_residual_fails() {
        let rep = Report::from_residual("x", Params::new(), Tag::Conjecture, 4, || {
            Ok(Series::monomial(rat_int(1), 2, 4))
        });
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.residual_first_nonzero_order, Some(2));
        assert!(!rep.is_hard_failure());
        let err = Report::from_exact("y", Params::new(), Tag::Proven, || {
            Err(crate::Error::NotInvertible)
        });
        assert_eq!(err.status, Status::Error);
        assert!(err.is_hard_failure());
    }
}
