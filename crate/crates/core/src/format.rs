//! Portrait input formats.
//!
//! Text form (UTF-8, LF):
//!
//! ```text
//! # worked cubic example
//! degree 3
//! set 0 1/3
//! set 7/15 4/5
//! ```
//!
//! JSON form: `{"degree": 3, "sets": [["0", "1/3"], ["7/15", "4/5"]]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{Angle, AngleError, Degree};
use crate::portrait::{CriticalPortrait, PortraitError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    Angle { line: usize, source: AngleError },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `degree` line")]
    MissingDegree,
    #[error("invalid JSON portrait: {0}")]
    Json(#[from] serde_json::Error),
}

/// Either a syntactic problem or a portrait that violates an axiom.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid portrait: {0}")]
    Invalid(#[from] PortraitError),
}

/// Degree plus unvalidated angle sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPortrait {
    pub degree: Degree,
    pub sets: Vec<Vec<Angle>>,
}

impl RawPortrait {
    pub fn validate(self) -> Result<CriticalPortrait, PortraitError> {
        CriticalPortrait::validate(self.degree, self.sets)
    }
}

impl From<&CriticalPortrait> for RawPortrait {
    fn from(p: &CriticalPortrait) -> Self {
        RawPortrait {
            degree: p.degree(),
            sets: p.elements().iter().map(|e| e.angles().to_vec()).collect(),
        }
    }
}

pub fn parse_text(src: &str) -> Result<RawPortrait, ParseError> {
    let mut degree = None;
    let mut sets = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let syntax = |message: String| ParseError::Syntax { line, message };
        match words.next() {
            Some("degree") => {
                if degree.is_some() {
                    return Err(syntax("duplicate `degree` line".into()));
                }
                let (Some(d), None) = (words.next(), words.next()) else {
                    return Err(syntax("expected `degree <d>`".into()));
                };
                let d: u64 = d.parse().map_err(|_| syntax(format!("bad degree `{d}`")))?;
                degree = Some(Degree::new(d).map_err(|source| ParseError::Angle { line, source })?);
            }
            Some("set") => {
                let set = words
                    .map(|w| w.parse::<Angle>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|source| ParseError::Angle { line, source })?;
                sets.push(set);
            }
            Some(other) => return Err(syntax(format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    Ok(RawPortrait {
        degree: degree.ok_or(ParseError::MissingDegree)?,
        sets,
    })
}

pub fn parse_json(src: &str) -> Result<RawPortrait, ParseError> {
    Ok(serde_json::from_str(src)?)
}

/// Parses either format, picking JSON when the first non-blank character is `{`.
pub fn parse_portrait(src: &str) -> Result<CriticalPortrait, InputError> {
    let raw = if src.trim_start().starts_with('{') {
        parse_json(src)?
    } else {
        parse_text(src)?
    };
    Ok(raw.validate()?)
}

pub fn to_text(p: &CriticalPortrait) -> String {
    let mut out = format!("degree {}\n", p.degree());
    for e in p.elements() {
        out.push_str("set");
        for a in e.angles() {
            out.push(' ');
            out.push_str(&a.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "# worked cubic\ndegree 3\n\nset 0 1/3   # first leaf\nset 7/15 4/5\n";

    #[test]
    fn text_and_json_agree() {
        let a = parse_portrait(EXAMPLE).unwrap();
        let b = parse_portrait(r#"{"degree": 3, "sets": [["0", "1/3"], ["7/15", "12/15"]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_portrait(&to_text(&a)).unwrap(), a);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_text("degree 2\nset 1//3 0"),
            Err(ParseError::Angle { line: 2, .. })
        ));
        assert!(matches!(parse_text("set 0 1/2"), Err(ParseError::MissingDegree)));
        assert!(matches!(
            parse_text("degree 1\n"),
            Err(ParseError::Angle { line: 1, .. })
        ));
        assert!(matches!(
            parse_text("degree 2 3\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_text("degree 2\nleaf 0 1/2"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_json(r#"{"degree": 2, "sets": [["1/0"]]}"#),
            Err(ParseError::Json(_))
        ));
    }

    #[test]
    fn invalid_portrait_is_not_a_parse_error() {
        match parse_portrait("degree 2\nset 0 1/4\n") {
            Err(InputError::Invalid(e)) => assert_eq!(e.axiom(), "NotCollapsing"),
            other => panic!("{other:?}"),
        }
    }
}
