//! JSON-lines certificate records.
//!
//! One line per checked claim:
//! `{"suite":…, "case":…, "n":…, "k":…, "lhs":…, "rhs":…, "ok":…}`
//! with an optional `"detail"` string. `n`/`k` are `null` when a claim is
//! not tied to a specific parameter.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub case: String,
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Record {
    pub fn new(suite: &str, case: impl Into<String>, lhs: f64, rhs: f64, ok: bool) -> Self {
        Record {
            suite: suite.to_string(),
            case: case.into(),
            n: None,
            k: None,
            lhs,
            rhs,
            ok,
            detail: None,
        }
    }

    pub fn at(mut self, n: u64, k: Option<u64>) -> Self {
        self.n = Some(n);
        self.k = k;
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        // non-finite floats have no JSON form; records never carry them
        serde_json::to_string(self).expect("record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_line_shape() {
        let r = Record::new("cases", "K2", 0.7, 0.37, true).at(40, Some(2));
        let line = r.to_json_line();
        assert_eq!(
            line,
            r#"{"suite":"cases","case":"K2","n":40,"k":2,"lhs":0.7,"rhs":0.37,"ok":true}"#
        );
        let back: Record = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
        let bare = Record::new("be", "phi_width", 0.68, 0.6, true).detail("x");
        assert!(bare.to_json_line().contains(r#""n":null"#));
        assert!(bare.to_json_line().ends_with(r#""detail":"x"}"#));
    }
}
