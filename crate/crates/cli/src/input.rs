//! Reading matroids and matrices from files, and writing constructions back.

use std::fs;
use std::path::Path;

use dyadic::linalg::{IntMatrix, MatrixText};
use dyadic::matroid::{Matroid, MatroidJson};
use dyadic::normal_form::{Field, Representation};

use crate::Failure;

const FIELD_PREFIX: &str = "field:";

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    t.strip_prefix("GF(")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|p| p.parse::<u64>().ok())
        .filter(|&p| p >= 2)
        .map(Field::Prime)
        .ok_or_else(|| Failure::Usage(format!("unrecognized field {t:?}")))
}

/// A labeled matrix in the plain-text format, with an optional
/// `# field: GF(p)` comment (rationals otherwise).
pub fn parse_representation(text: &str) -> Result<Representation, Failure> {
    let parsed: MatrixText = text.parse()?;
    let field = match parsed.comments.iter().find_map(|c| c.strip_prefix(FIELD_PREFIX)) {
        Some(f) => parse_field(f)?,
        None => Field::Rationals,
    };
    let labels = parsed.labels().unwrap_or_else(|| (0..parsed.matrix.ncols()).map(|i| i.to_string()).collect());
    Ok(Representation::new(parsed.matrix, labels, field)?)
}

/// A matroid from JSON (first non-blank character `{`) or from matrix text.
pub fn parse_matroid(text: &str) -> Result<Matroid, Failure> {
    if text.trim_start().starts_with('{') {
        Ok(Matroid::from_json_str(text)?)
    } else {
        Ok(Matroid::from_representation(&parse_representation(text)?)?)
    }
}

pub fn load_matroid(path: &Path) -> Result<Matroid, Failure> {
    parse_matroid(&read(path)?)
}

pub fn load_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    let parsed: MatrixText = read(path)?.parse()?;
    Ok(parsed.matrix)
}

pub fn representation_text(rep: &Representation) -> String {
    let mut text = MatrixText::with_labels(rep.matrix().clone(), rep.labels());
    if let Field::Prime(p) = rep.field() {
        text.comments.push(format!("{FIELD_PREFIX} GF({p})"));
    }
    text.to_string()
}

/// Matrix text for linear matroids, JSON otherwise.
pub fn matroid_text(m: &Matroid) -> Result<String, Failure> {
    match m.to_json() {
        MatroidJson::Linear { ground, field, matrix } => {
            let rows = matrix.len();
            let matrix = if rows == 0 { IntMatrix::zeros(0, ground.len()) } else { IntMatrix::from_rows(&matrix)? };
            Ok(representation_text(&Representation::new(matrix, ground, field)?))
        }
        _ => {
            let mut s = m.to_json_string();
            s.push('\n');
            Ok(s)
        }
    }
}
