//! Configuration-file schema.
//!
//! ```json
//! {
//!   "field": "na",
//!   "dimension": 2,
//!   "vectors": [["1", "0"], ["3/5", "4/5"]],
//!   "certificate": { "P": [["1", "0"], ["0", "1"]], "D": ["1", "1"] }
//! }
//! ```
//!
//! `na` entries use the scalar syntax; `r` and `c` entries are decimal or
//! `a+bi` text (bare JSON numbers are accepted too). The certificate is
//! optional and only meaningful for `na`.

use super::CliError;
use crate::classical::{ClassicalConfig, ComplexVector, FieldTag};
use crate::field::Scalar;
use crate::linalg::{Config, DiagCertificate, Matrix, Vector};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "na")]
    NonArchimedean,
    #[serde(rename = "r")]
    Real,
    #[serde(rename = "c")]
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub field: FieldKind,
    pub dimension: usize,
    #[serde(deserialize_with = "entry_rows")]
    pub vectors: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
}

fn entry_rows<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<String>>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Text(String),
        Number(serde_json::Number),
    }
    let rows = Vec::<Vec<Entry>>::deserialize(d)?;
    Ok(rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Text(s) => s,
                    Entry::Number(n) => n.to_string(),
                })
                .collect()
        })
        .collect())
}

fn parse_scalar(text: &str, at: &str) -> Result<Scalar, CliError> {
    text.parse()
        .map_err(|e| CliError::new(format!("{at}: {e} (in {text:?})")))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (also with `j`).
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().ok()?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!(
        "{}{sign}{}i",
        super::report::fmt_sig17(z.re),
        super::report::fmt_sig17(z.im.abs())
    )
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cf: ConfigFile = serde_json::from_str(text).map_err(|e| {
            CliError::new(format!(
                "config line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        cf.check_shape()?;
        Ok(cf)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    fn check_shape(&self) -> Result<(), CliError> {
        if self.dimension == 0 {
            return Err(CliError::new("dimension must be positive"));
        }
        if self.vectors.is_empty() {
            return Err(CliError::new("vectors must be nonempty"));
        }
        for (i, row) in self.vectors.iter().enumerate() {
            if row.len() != self.dimension {
                return Err(CliError::new(format!(
                    "vectors[{i}] has {} entries, expected dimension {}",
                    row.len(),
                    self.dimension
                )));
            }
        }
        Ok(())
    }

    fn require(&self, kinds: &[FieldKind]) -> Result<(), CliError> {
        if kinds.contains(&self.field) {
            Ok(())
        } else {
            Err(CliError::new(format!(
                "field {:?} is not accepted by this command",
                self.field
            )))
        }
    }

    pub fn na_config(&self) -> Result<Config, CliError> {
        self.require(&[FieldKind::NonArchimedean])?;
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| parse_scalar(e, &format!("vectors[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Vector::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Config::new(vectors).map_err(CliError::from)
    }

    /// The certificate, checked against the dimension of the operator it
    /// is meant for.
    pub fn certificate(&self, expected_dim: usize) -> Result<Option<DiagCertificate>, CliError> {
        let Some(cert) = &self.certificate else {
            return Ok(None);
        };
        if cert.p.len() != expected_dim || cert.d.len() != expected_dim {
            return Err(CliError::new(format!(
                "certificate has dimension {}x{}, expected {expected_dim}",
                cert.p.len(),
                cert.d.len()
            )));
        }
        let rows = cert
            .p
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != expected_dim {
                    return Err(CliError::new(format!(
                        "certificate.P[{i}] has {} entries, expected {expected_dim}",
                        row.len()
                    )));
                }
                row.iter()
                    .enumerate()
                    .map(|(j, e)| parse_scalar(e, &format!("certificate.P[{i}][{j}]")))
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let d = cert
            .d
            .iter()
            .enumerate()
            .map(|(i, e)| parse_scalar(e, &format!("certificate.D[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(DiagCertificate {
            p: Matrix::from_rows(rows)?,
            d,
        }))
    }

    pub fn classical_config(&self) -> Result<ClassicalConfig, CliError> {
        self.require(&[FieldKind::Real, FieldKind::Complex])?;
        let tag = match self.field {
            FieldKind::Real => FieldTag::Real,
            _ => FieldTag::Complex,
        };
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        parse_complex(e).ok_or_else(|| {
                            CliError::new(format!("vectors[{i}][{j}]: cannot parse number {e:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(ComplexVector::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        ClassicalConfig::new(vectors, tag).map_err(CliError::from)
    }

    /// Rewrites every entry in canonical text form.
    pub fn canonicalize(&self) -> Result<Self, CliError> {
        let mut out = self.clone();
        match self.field {
            FieldKind::NonArchimedean => {
                for (i, row) in out.vectors.iter_mut().enumerate() {
                    for (j, e) in row.iter_mut().enumerate() {
                        *e = parse_scalar(e, &format!("vectors[{i}][{j}]"))?.to_string();
                    }
                }
                if let Some(cert) = out.certificate.as_mut() {
                    for e in cert.p.iter_mut().flatten().chain(cert.d.iter_mut()) {
                        *e = parse_scalar(e, "certificate")?.to_string();
                    }
                }
            }
            FieldKind::Real | FieldKind::Complex => {
                for e in out.vectors.iter_mut().flatten() {
                    let z = parse_complex(e)
                        .ok_or_else(|| CliError::new(format!("cannot parse number {e:?}")))?;
                    *e = if self.field == FieldKind::Real {
                        super::report::fmt_sig17(z.re)
                    } else {
                        format_complex(z)
                    };
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_text() {
        assert_eq!(parse_complex("0.5"), Some(Complex64::new(0.5, 0.0)));
        assert_eq!(parse_complex("0.5+0.25i"), Some(Complex64::new(0.5, 0.25)));
        assert_eq!(parse_complex("1e-3-2i"), Some(Complex64::new(1e-3, -2.0)));
        assert_eq!(parse_complex("-i"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(parse_complex("2.5j"), Some(Complex64::new(0.0, 2.5)));
        assert_eq!(parse_complex("1 + 1e-2i"), Some(Complex64::new(1.0, 0.01)));
        assert_eq!(parse_complex("x"), None);
        let z = Complex64::new(-0.125, -3.0);
        assert_eq!(parse_complex(&format_complex(z)), Some(z));
    }

    #[test]
    fn rejects_ragged_rows() {
        let text = r#"{"field":"na","dimension":2,"vectors":[["1","0"],["1"]]}"#;
        let err = ConfigFile::from_json(text).unwrap_err();
        assert!(err.to_string().contains("vectors[1]"));
    }

    #[test]
    fn json_errors_name_line_and_column() {
        let err = ConfigFile::from_json("{\n  \"field\": \"na\",\n  oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn scalar_errors_name_entry_and_column() {
        let text = r#"{"field":"na","dimension":2,"vectors":[["1","0"],["t^-1","1"]]}"#;
        let err = ConfigFile::from_json(text)
            .unwrap()
            .na_config()
            .unwrap_err();
        assert!(err.to_string().contains("vectors[1][0]"), "{err}");
        assert!(err.to_string().contains("column 3"), "{err}");
    }

    #[test]
    fn numbers_accepted_for_classical() {
        let text = r#"{"field":"r","dimension":2,"vectors":[[1,0],["0.6",0.8]]}"#;
        let c = ConfigFile::from_json(text)
            .unwrap()
            .classical_config()
            .unwrap();
        assert_eq!(c.n(), 2);
    }

    #[test]
    fn canonical_round_trip() {
        let text = r#"{"field":"na","dimension":2,"vectors":[["2/2","0"],["(2t)/(2+2t^2)","1-t"]],
                      "certificate":{"P":[["1","0"],["0","1"]],"D":["1","1"]}}"#;
        let canon = ConfigFile::from_json(text).unwrap().canonicalize().unwrap();
        assert_eq!(canon.vectors[0][0], "1");
        assert_eq!(canon.vectors[1][0], "(t)/(1+t^2)");
        let again = ConfigFile::from_json(&canon.to_json()).unwrap();
        assert_eq!(again, canon);
        assert_eq!(again.canonicalize().unwrap(), canon);
    }
}
