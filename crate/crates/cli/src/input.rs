//! Parsing of matrix specs (`ex2:theta=pi/3,eps=-1` or a JSON file path),
//! angle expressions, N ranges, and comma lists.

use std::path::Path;

use braidform_core::{catalog, CatalogTag, Epsilon, RMatrix};

use crate::CliError;

/// An angle in radians, either as a float or an exact rational multiple of π.
#[derive(Clone, Copy, Debug)]
pub enum Theta {
    Radians(f64),
    /// numerator·π / denominator
    PiFraction(i64, i64),
}

impl Theta {
    pub fn value(self) -> f64 {
        match self {
            Theta::Radians(v) => v,
            Theta::PiFraction(num, den) => num as f64 * std::f64::consts::PI / den as f64,
        }
    }

    /// Exact check for q² = 1, available when the input was a π fraction.
    pub fn is_multiple_of_pi(self) -> bool {
        match self {
            Theta::PiFraction(num, den) => num % den == 0,
            Theta::Radians(v) => v.sin().abs() < braidform_core::tol::DEGENERATE_PHASE,
        }
    }
}

/// Accepts `0.75`, `-1.2e-1`, `pi`, `pi/3`, `2pi/5`, `-3pi/4`.
pub fn parse_theta(s: &str) -> Result<Theta, CliError> {
    let trimmed = s.trim();
    if let Some(pos) = trimmed.find("pi") {
        let (coeff_str, rest) = trimmed.split_at(pos);
        let rest = &rest[2..];
        let numerator: i64 = match coeff_str {
            "" | "+" => 1,
            "-" => -1,
            other => other
                .parse()
                .map_err(|_| CliError::usage(format!("cannot parse angle {s:?}")))?,
        };
        let denominator: i64 = match rest.strip_prefix('/') {
            None if rest.is_empty() => 1,
            Some(d) => d
                .parse()
                .map_err(|_| CliError::usage(format!("cannot parse angle {s:?}")))?,
            _ => return Err(CliError::usage(format!("cannot parse angle {s:?}"))),
        };
        if denominator == 0 {
            return Err(CliError::usage("angle denominator must be nonzero".into()));
        }
        return Ok(Theta::PiFraction(numerator, denominator));
    }
    trimmed
        .parse::<f64>()
        .map(Theta::Radians)
        .map_err(|_| CliError::usage(format!("cannot parse angle {s:?}")))
}

/// A parsed matrix source: catalog instance or explicit matrix.
#[derive(Clone, Debug)]
pub struct MatrixSpec {
    pub matrix: RMatrix,
    pub tag: Option<CatalogTag>,
    /// Original spec string, echoed in reports.
    pub display: String,
}

/// `ex<k>:theta=<angle>[,eps=<±1>]`, or a path to a JSON matrix file.
pub fn parse_matrix_spec(s: &str) -> Result<MatrixSpec, CliError> {
    if let Some((tag_str, params)) = s.split_once(':') {
        if let Some(tag) = CatalogTag::parse(tag_str) {
            let mut theta: Option<Theta> = None;
            let mut eps = Epsilon::Plus;
            for part in params.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| CliError::usage(format!("bad parameter {part:?} in {s:?}")))?;
                match key.trim() {
                    "theta" => theta = Some(parse_theta(value)?),
                    "eps" | "epsilon" => {
                        let v: i8 = value.trim().parse().map_err(|_| {
                            CliError::usage(format!("epsilon must be 1 or -1, got {value:?}"))
                        })?;
                        eps = Epsilon::from_i8(v).map_err(CliError::Core)?;
                    }
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown matrix parameter {other:?}"
                        )))
                    }
                }
            }
            let theta =
                theta.ok_or_else(|| CliError::usage(format!("{s:?} is missing theta=<angle>")))?;
            // Exact degeneracy check for rational-π input.
            if tag.requires_nondegenerate_phase() && theta.is_multiple_of_pi() {
                return Err(CliError::usage(format!(
                    "{}: theta={} gives q^2 = 1, which this entry excludes",
                    tag.name(),
                    theta.value()
                )));
            }
            let matrix = catalog(tag, theta.value(), eps).map_err(CliError::Core)?;
            return Ok(MatrixSpec {
                matrix,
                tag: Some(tag),
                display: s.to_string(),
            });
        }
    }
    // Otherwise treat the spec as a path to a JSON matrix.
    let path = Path::new(s);
    let contents = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read matrix file {s:?}: {e}")))?;
    let matrix: RMatrix = serde_json::from_str(&contents)
        .map_err(|e| CliError::usage(format!("malformed matrix JSON in {s:?}: {e}")))?;
    Ok(MatrixSpec {
        tag: matrix.provenance().map(|p| p.tag),
        matrix,
        display: s.to_string(),
    })
}

/// Inclusive N range: `4` or `2..6`.
pub fn parse_n_range(s: &str) -> Result<Vec<usize>, CliError> {
    let parse_one = |p: &str| -> Result<usize, CliError> {
        p.trim()
            .parse()
            .map_err(|_| CliError::usage(format!("cannot parse strand count {p:?}")))
    };
    let values = if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        (lo..=hi).collect::<Vec<_>>()
    } else {
        vec![parse_one(s)?]
    };
    if values.is_empty() {
        return Err(CliError::usage(format!("empty N range {s:?}")));
    }
    Ok(values)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("cannot parse number {p:?}")))
        })
        .collect()
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("cannot parse integer {p:?}")))
        })
        .collect()
}

pub fn parse_tags(s: &str) -> Result<Vec<CatalogTag>, CliError> {
    if s.trim() == "all" {
        return Ok(CatalogTag::ALL.to_vec());
    }
    s.split(',')
        .map(|p| {
            CatalogTag::parse(p.trim())
                .ok_or_else(|| CliError::usage(format!("unknown catalog tag {p:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_forms() {
        assert!((parse_theta("0.75").unwrap().value() - 0.75).abs() < 1e-15);
        assert!((parse_theta("pi").unwrap().value() - std::f64::consts::PI).abs() < 1e-15);
        assert!((parse_theta("pi/3").unwrap().value() - std::f64::consts::PI / 3.0).abs() < 1e-15);
        assert!(
            (parse_theta("2pi/5").unwrap().value() - 2.0 * std::f64::consts::PI / 5.0).abs()
                < 1e-15
        );
        assert!(
            (parse_theta("-3pi/4").unwrap().value() + 3.0 * std::f64::consts::PI / 4.0).abs()
                < 1e-15
        );
        assert!(parse_theta("pie").is_err());
        assert!(parse_theta("pi/0").is_err());
    }

    #[test]
    fn exact_degeneracy_detection() {
        assert!(parse_theta("2pi/2").unwrap().is_multiple_of_pi());
        assert!(parse_theta("pi").unwrap().is_multiple_of_pi());
        assert!(!parse_theta("pi/2").unwrap().is_multiple_of_pi());
        assert!(parse_matrix_spec("ex2:theta=pi").is_err());
        assert!(parse_matrix_spec("ex2:theta=pi/2").is_ok());
        assert!(parse_matrix_spec("ex1:theta=0,eps=-1").is_ok());
    }

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("4").unwrap(), vec![4]);
        assert_eq!(parse_n_range("2..6").unwrap(), vec![2, 3, 4, 5, 6]);
        assert!(parse_n_range("6..2").is_err());
        assert!(parse_n_range("x").is_err());
    }
}
