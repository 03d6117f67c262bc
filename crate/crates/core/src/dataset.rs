//! Probe/response datasets and their CSV representation.
//!
//! The on-disk format is a UTF-8 CSV with header
//! `t,alpha_1,...,alpha_m,beta_1,...,beta_m`, one row per observation.
//! Floats are written with 17 significant digits so a save/load round trip
//! is bit exact.

use std::path::Path;

use crate::error::{Error, Result};
use crate::vecmath::fmt_f64;

/// A sequence of probe vectors and the responses they elicited.
///
/// Probes are strictly positive incentive vectors, responses are nonnegative
/// precision vectors; both live in `R^m` and the sequences have equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResponseDataset {
    probes: Vec<Vec<f64>>,
    responses: Vec<Vec<f64>>,
}

impl ProbeResponseDataset {
    /// Builds a dataset after validating all invariants.
    pub fn new(probes: Vec<Vec<f64>>, responses: Vec<Vec<f64>>) -> Result<Self> {
        if probes.is_empty() {
            return Err(Error::input("dataset must contain at least one observation"));
        }
        if probes.len() != responses.len() {
            return Err(Error::Dimension {
                expected: probes.len(),
                got: responses.len(),
            });
        }
        let m = probes[0].len();
        if m == 0 {
            return Err(Error::input("vectors must have dimension >= 1"));
        }
        for (t, (a, b)) in probes.iter().zip(&responses).enumerate() {
            if a.len() != m {
                return Err(Error::Dimension { expected: m, got: a.len() });
            }
            if b.len() != m {
                return Err(Error::Dimension { expected: m, got: b.len() });
            }
            for (i, &v) in a.iter().enumerate() {
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::input(format!(
                        "probe {} component {} must be finite and > 0, got {v}",
                        t + 1,
                        i + 1
                    )));
                }
            }
            for (i, &v) in b.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::input(format!(
                        "response {} component {} must be finite and >= 0, got {v}",
                        t + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { probes, responses })
    }

    /// Number of observations.
    pub fn len(&self) -> usize {
        self.probes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // K >= 1 by construction
    }

    /// Dimension of each probe and response vector.
    pub fn dim(&self) -> usize {
        self.probes[0].len()
    }

    pub fn probes(&self) -> &[Vec<f64>] {
        &self.probes
    }

    pub fn responses(&self) -> &[Vec<f64>] {
        &self.responses
    }

    pub fn probe(&self, t: usize) -> &[f64] {
        &self.probes[t]
    }

    pub fn response(&self, t: usize) -> &[f64] {
        &self.responses[t]
    }

    /// Writes the dataset as CSV.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let m = self.dim();
        let mut header = vec!["t".to_string()];
        header.extend((1..=m).map(|i| format!("alpha_{i}")));
        header.extend((1..=m).map(|i| format!("beta_{i}")));
        w.write_record(&header)?;
        for t in 0..self.len() {
            let mut row = vec![(t + 1).to_string()];
            row.extend(self.probes[t].iter().map(|&v| fmt_f64(v)));
            row.extend(self.responses[t].iter().map(|&v| fmt_f64(v)));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a dataset back from CSV, validating the header and all invariants.
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let headers = r.headers()?.clone();
        let m = infer_dim(&headers, true)?;
        let mut probes = Vec::new();
        let mut responses = Vec::new();
        for (idx, record) in r.records().enumerate() {
            let row = idx + 2; // 1-based, header is row 1
            let record = record?;
            if record.len() != 1 + 2 * m {
                return Err(Error::Parse {
                    row,
                    column: record.len(),
                    message: format!("expected {} fields, got {}", 1 + 2 * m, record.len()),
                });
            }
            parse_field::<u64>(&record, row, 0, "observation index")?;
            let mut alpha = Vec::with_capacity(m);
            let mut beta = Vec::with_capacity(m);
            for i in 0..m {
                let v = parse_field::<f64>(&record, row, 1 + i, "probe value")?;
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::Parse {
                        row,
                        column: 2 + i,
                        message: format!("probe entries must be finite and > 0, got {v}"),
                    });
                }
                alpha.push(v);
            }
            for i in 0..m {
                let v = parse_field::<f64>(&record, row, 1 + m + i, "response value")?;
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Parse {
                        row,
                        column: 2 + m + i,
                        message: format!("response entries must be finite and >= 0, got {v}"),
                    });
                }
                beta.push(v);
            }
            probes.push(alpha);
            responses.push(beta);
        }
        Self::new(probes, responses)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}

/// Writes a probes-only CSV (`t,alpha_1,...,alpha_m`).
pub fn save_probes(probes: &[Vec<f64>], path: impl AsRef<Path>) -> Result<()> {
    if probes.is_empty() {
        return Err(Error::input("probe sequence is empty"));
    }
    let m = probes[0].len();
    let file = std::fs::File::create(path)?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    let mut header = vec!["t".to_string()];
    header.extend((1..=m).map(|i| format!("alpha_{i}")));
    w.write_record(&header)?;
    for (t, alpha) in probes.iter().enumerate() {
        let mut row = vec![(t + 1).to_string()];
        row.extend(alpha.iter().map(|&v| fmt_f64(v)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a probes-only CSV back.
pub fn load_probes(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    let file = std::fs::File::open(path)?;
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(std::io::BufReader::new(file));
    let headers = r.headers()?.clone();
    let m = infer_dim(&headers, false)?;
    let mut probes = Vec::new();
    for (idx, record) in r.records().enumerate() {
        let row = idx + 2;
        let record = record?;
        if record.len() != 1 + m {
            return Err(Error::Parse {
                row,
                column: record.len(),
                message: format!("expected {} fields, got {}", 1 + m, record.len()),
            });
        }
        let mut alpha = Vec::with_capacity(m);
        for i in 0..m {
            let v = parse_field::<f64>(&record, row, 1 + i, "probe value")?;
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Parse {
                    row,
                    column: 2 + i,
                    message: format!("probe entries must be finite and > 0, got {v}"),
                });
            }
            alpha.push(v);
        }
        probes.push(alpha);
    }
    if probes.is_empty() {
        return Err(Error::input("probe file contains no observations"));
    }
    Ok(probes)
}

fn infer_dim(headers: &csv::StringRecord, with_responses: bool) -> Result<usize> {
    let fields: Vec<&str> = headers.iter().collect();
    if fields.first() != Some(&"t") {
        return Err(Error::Parse {
            row: 1,
            column: 1,
            message: "header must start with column `t`".into(),
        });
    }
    let n = fields.len() - 1;
    let m = if with_responses {
        if n % 2 != 0 || n == 0 {
            return Err(Error::Parse {
                row: 1,
                column: fields.len(),
                message: "header must contain alpha_1..alpha_m,beta_1..beta_m".into(),
            });
        }
        n / 2
    } else {
        if n == 0 {
            return Err(Error::Parse {
                row: 1,
                column: 1,
                message: "header must contain alpha_1..alpha_m".into(),
            });
        }
        n
    };
    for i in 0..m {
        let want = format!("alpha_{}", i + 1);
        if fields[1 + i] != want {
            return Err(Error::Parse {
                row: 1,
                column: 2 + i,
                message: format!("expected header `{want}`, got `{}`", fields[1 + i]),
            });
        }
    }
    if with_responses {
        for i in 0..m {
            let want = format!("beta_{}", i + 1);
            if fields[1 + m + i] != want {
                return Err(Error::Parse {
                    row: 1,
                    column: 2 + m + i,
                    message: format!("expected header `{want}`, got `{}`", fields[1 + m + i]),
                });
            }
        }
    }
    Ok(m)
}

fn parse_field<T: std::str::FromStr>(
    record: &csv::StringRecord,
    row: usize,
    idx: usize,
    what: &str,
) -> Result<T> {
    record[idx].trim().parse::<T>().map_err(|_| Error::Parse {
        row,
        column: idx + 1,
        message: format!("cannot parse {what} from `{}`", &record[idx]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ProbeResponseDataset {
        ProbeResponseDataset::new(
            vec![vec![0.5, 1.0], vec![1.0, 0.25]],
            vec![vec![2.0, 0.0], vec![0.0, 4.0]],
        )
        .unwrap()
    }

    #[test]
    fn rejects_mismatched_lengths() {
        let err = ProbeResponseDataset::new(vec![vec![1.0]], vec![]).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn rejects_nonpositive_probe() {
        let err =
            ProbeResponseDataset::new(vec![vec![0.0, 1.0]], vec![vec![1.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn rejects_negative_response() {
        let err =
            ProbeResponseDataset::new(vec![vec![1.0, 1.0]], vec![vec![-0.1, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let ds = ProbeResponseDataset::new(
            vec![vec![1.0 / 3.0, std::f64::consts::PI]],
            vec![vec![2.0 / 7.0, 0.0]],
        )
        .unwrap();
        let mut buf = Vec::new();
        ds.write_csv(&mut buf).unwrap();
        let back = ProbeResponseDataset::read_csv(buf.as_slice()).unwrap();
        assert_eq!(ds, back);
    }

    #[test]
    fn csv_zero_probe_is_rejected_with_location() {
        let text = "t,alpha_1,alpha_2,beta_1,beta_2\n1,1.0,0.0,1.0,1.0\n";
        let err = ProbeResponseDataset::read_csv(text.as_bytes()).unwrap_err();
        match err {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, 3);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn csv_wrong_field_count_is_rejected() {
        let text = "t,alpha_1,alpha_2,beta_1,beta_2\n1,1.0,1.0,1.0\n";
        let err = ProbeResponseDataset::read_csv(text.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, .. } | Error::Csv(_)));
    }

    #[test]
    fn header_is_exactly_the_documented_schema() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,alpha_1,alpha_2,beta_1,beta_2\n"));
    }
}
