//! Input documents: a matrix of rational strings or a polynomial of integer strings, plus run options.

use serde::{Deserialize, Deserializer, Serialize};
use yuzvinski::exact_arith::{format_rational, parse_rational, BigInt, IntPolynomial};
use yuzvinski::rational_linalg::RationalMatrix;

use crate::CliError;

/// Accepts JSON numbers as well as strings for entries; always stores the text.
#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

impl From<Scalar> for String {
    fn from(s: Scalar) -> String {
        match s {
            Scalar::Int(i) => i.to_string(),
            Scalar::Text(t) => t,
        }
    }
}

fn de_matrix<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<String>>>, D::Error> {
    let raw: Option<Vec<Vec<Scalar>>> = Option::deserialize(d)?;
    Ok(raw.map(|rows| rows.into_iter().map(|r| r.into_iter().map(String::from).collect()).collect()))
}

fn de_poly<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<String>>, D::Error> {
    let raw: Option<Vec<Scalar>> = Option::deserialize(d)?;
    Ok(raw.map(|c| c.into_iter().map(String::from).collect()))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default, deserialize_with = "de_matrix", skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    /// Coefficients in ascending degree order.
    #[serde(default, deserialize_with = "de_poly", skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The object an input document describes.
#[derive(Clone, Debug)]
pub enum Subject {
    Matrix(RationalMatrix),
    Poly(IntPolynomial),
}

fn parse_int(text: &str) -> Result<BigInt, CliError> {
    let t = text.trim().replace('\u{2212}', "-");
    t.parse::<BigInt>()
        .map_err(|_| CliError::Input(format!("'{text}' is not an integer")))
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed input document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn subject(&self) -> Result<Subject, CliError> {
        match (&self.matrix, &self.poly) {
            (Some(_), Some(_)) => Err(CliError::Input("give either a matrix or a polynomial, not both".into())),
            (None, None) => Err(CliError::Input("input needs a matrix or a polynomial".into())),
            (Some(rows), None) => {
                if rows.is_empty() {
                    return Err(CliError::Input("matrix is empty".into()));
                }
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(|x| parse_rational(x)).collect::<yuzvinski::Result<Vec<_>>>())
                    .collect::<yuzvinski::Result<Vec<_>>>()?;
                Ok(Subject::Matrix(RationalMatrix::from_rows(parsed)?))
            }
            (None, Some(coeffs)) => {
                let c = coeffs.iter().map(|x| parse_int(x)).collect::<Result<Vec<_>, _>>()?;
                match c.last() {
                    None => Err(CliError::Input("polynomial has no coefficients".into())),
                    Some(lead) if *lead == BigInt::from(0) => {
                        Err(CliError::Input("leading coefficient must be nonzero".into()))
                    }
                    Some(_) => Ok(Subject::Poly(IntPolynomial::new(c))),
                }
            }
        }
    }

    /// Same document with every entry in canonical form (`a/b` reduced, `a` for integers).
    pub fn canonical(&self) -> Result<Self, CliError> {
        let mut out = self.clone();
        match self.subject()? {
            Subject::Matrix(m) => {
                out.matrix = Some(m.rows().map(|r| r.iter().map(format_rational).collect()).collect());
            }
            Subject::Poly(p) => {
                out.poly = Some(p.coeffs().iter().map(|c| c.to_string()).collect());
            }
        }
        Ok(out)
    }
}
