//! JSON matrix and channel files.
//!
//! ```json
//! {"dim": 2, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}
//! {"dim_in": 2, "dim_out": 2, "kraus": [{"re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}]}
//! ```
//!
//! `im` may be omitted for real operators. Numbers are written in shortest
//! round-trip form, so write-then-read is exact.

use std::fs;
use std::path::Path;

use qdist_core::{Channel64, ComplexMatrix, Matrix64, C};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub im: Vec<Vec<f64>>,
}

/// One Kraus operator: `dim_out × dim_in` arrays, `dim` optional for square ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrausEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus: Vec<KrausEntry>,
}

fn check_shape(field: &str, rows: &[Vec<f64>], nr: usize, nc: usize) -> Result<(), String> {
    if rows.len() != nr {
        return Err(format!("field `{field}`: {} rows, expected {nr}", rows.len()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != nc {
            return Err(format!(
                "field `{field}`: row {i} has {} entries, expected {nc}",
                row.len()
            ));
        }
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(format!("field `{field}`: entry [{i}][{j}] is not finite"));
        }
    }
    Ok(())
}

fn assemble(re: &[Vec<f64>], im: &[Vec<f64>], nr: usize, nc: usize) -> Result<Matrix64, String> {
    check_shape("re", re, nr, nc)?;
    if !im.is_empty() {
        check_shape("im", im, nr, nc)?;
    }
    Ok(ComplexMatrix::from_fn(nr, nc, |i, j| {
        C::new(re[i][j], im.get(i).map_or(0.0, |r| r[j]))
    }))
}

fn split(m: &Matrix64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].re).collect())
        .collect();
    let im = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].im).collect())
        .collect();
    (re, im)
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix64) -> Self {
        let (re, im) = split(m);
        Self {
            dim: m.rows(),
            re,
            im,
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix64, String> {
        assemble(&self.re, &self.im, self.dim, self.dim)
    }
}

impl ChannelFile {
    pub fn from_kraus(kraus: &[Matrix64]) -> Self {
        let dim_in = kraus.first().map_or(0, |k| k.cols());
        let dim_out = kraus.first().map_or(0, |k| k.rows());
        let kraus = kraus
            .iter()
            .map(|k| {
                let (re, im) = split(k);
                KrausEntry { dim: None, re, im }
            })
            .collect();
        Self {
            dim_in,
            dim_out,
            kraus,
        }
    }

    pub fn to_kraus(&self) -> Result<Vec<Matrix64>, String> {
        if self.kraus.is_empty() {
            return Err("field `kraus`: empty operator list".into());
        }
        self.kraus
            .iter()
            .enumerate()
            .map(|(n, k)| {
                if let Some(d) = k.dim {
                    if d != self.dim_in || d != self.dim_out {
                        return Err(format!(
                            "kraus[{n}]: dim {d} disagrees with dim_in {} / dim_out {}",
                            self.dim_in, self.dim_out
                        ));
                    }
                }
                assemble(&k.re, &k.im, self.dim_out, self.dim_in)
                    .map_err(|e| format!("kraus[{n}]: {e}"))
            })
            .collect()
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<Matrix64, CliError> {
    let file: MatrixFile = read_json(path)?;
    file.to_matrix()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Parses a channel file and validates trace preservation.
pub fn read_channel(path: &Path) -> Result<Channel64, CliError> {
    let file: ChannelFile = read_json(path)?;
    let kraus = file
        .to_kraus()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    Channel64::new(kraus).map_err(|e| CliError::from_core(e).context(path))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdist_core::random::{ginibre, seeded_rng};

    #[test]
    fn matrix_roundtrip_is_exact() {
        let m = ginibre::<f64>(3, 3, &mut seeded_rng(1));
        let text = to_json(&MatrixFile::from_matrix(&m));
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn channel_roundtrip_is_exact() {
        let mut rng = seeded_rng(2);
        let kraus = vec![ginibre::<f64>(2, 3, &mut rng), ginibre::<f64>(2, 3, &mut rng)];
        let text = to_json(&ChannelFile::from_kraus(&kraus));
        let back: ChannelFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_kraus().unwrap(), kraus);
    }

    #[test]
    fn shape_errors_name_the_field() {
        let f = MatrixFile {
            dim: 2,
            re: vec![vec![1.0, 0.0], vec![0.0]],
            im: vec![],
        };
        let err = f.to_matrix().unwrap_err();
        assert!(err.contains("`re`") && err.contains("row 1"), "{err}");
    }

    #[test]
    fn missing_im_is_zero() {
        let f: MatrixFile = serde_json::from_str(r#"{"dim": 1, "re": [[1.0]]}"#).unwrap();
        assert_eq!(f.to_matrix().unwrap()[(0, 0)], C::new(1.0, 0.0));
    }
}
