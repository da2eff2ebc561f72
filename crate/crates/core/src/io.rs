//! Foliation files.
//!
//! ```text
//! field: t^2+1
//! A = X^3*Y + 4*Y^4 + ...
//! B = ...
//! C = ...
//! ```
//!
//! The `field:` line is optional (default Q). Blank lines and text after `#`
//! are ignored.

use thiserror::Error;

use crate::numfield::Field;
use crate::parse::{parse_minpoly, parse_poly};
use crate::polyforms::{FormError, ProjectiveOneForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("missing component {0}")]
    Missing(char),
    #[error("invalid 1-form: {0}")]
    Form(#[from] FormError),
}

/// Parses a foliation file into its 1-form (whose field is the declared one).
pub fn parse_foliation(text: &str) -> Result<ProjectiveOneForm, InputError> {
    let mut field: Option<Field> = None;
    let mut comps: [Option<crate::polyforms::Poly>; 3] = [None, None, None];
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |col: usize, msg: String| InputError::Syntax {
            line: line_no,
            col,
            msg,
        };
        if let Some(rest) = line.strip_prefix("field:") {
            if field.is_some() || comps.iter().any(|c| c.is_some()) {
                return Err(syntax(1, "field must be declared once, before the components".into()));
            }
            let offset = raw.find(rest.trim()).unwrap_or(0);
            let mp = parse_minpoly(rest.trim()).map_err(|e| syntax(offset + e.col, e.msg))?;
            field = Some(Field::new(mp));
            continue;
        }
        let Some((name, expr)) = line.split_once('=') else {
            return Err(syntax(1, "expected 'A = ...', 'B = ...' or 'C = ...'".into()));
        };
        let idx = match name.trim() {
            "A" => 0,
            "B" => 1,
            "C" => 2,
            other => return Err(syntax(1, format!("unknown component '{other}'"))),
        };
        if comps[idx].is_some() {
            return Err(syntax(1, format!("component {} given twice", name.trim())));
        }
        let k = field.get_or_insert_with(Field::rationals);
        let offset = raw.find('=').unwrap() + 1;
        let p = parse_poly(expr, k).map_err(|e| syntax(offset + e.col, e.msg))?;
        comps[idx] = Some(p);
    }
    let [a, b, c] = comps;
    let a = a.ok_or(InputError::Missing('A'))?;
    let b = b.ok_or(InputError::Missing('B'))?;
    let c = c.ok_or(InputError::Missing('C'))?;
    Ok(ProjectiveOneForm::new(a, b, c)?)
}

/// Writes a 1-form in the format read by [`parse_foliation`].
pub fn write_foliation(omega: &ProjectiveOneForm) -> String {
    let mut out = String::new();
    if !omega.field().is_rationals() {
        out.push_str(&format!("field: {}\n", omega.field().minimal_polynomial()));
    }
    for (name, p) in ["A", "B", "C"].iter().zip(omega.components()) {
        out.push_str(&format!("{name} = {p}\n"));
    }
    out
}
