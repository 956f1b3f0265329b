//! On-disk JSON formats: matrices as bit strings, weight tables and
//! threshold certificates as rational strings, polyplexes as entry lists.
//! Every format round-trips bit-exactly; ingestion validates shape and
//! content strictly so a malformed file fails with a pointed diagnostic
//! instead of leaking into the arithmetic.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::duality::{Polyplex, WeightTable};
use crate::error::Error;
use crate::matrix::{Index, MultiMatrix};
use crate::rat::{rat_from_str, rat_to_string};
use crate::threshold::ThresholdCertificate;

/// `{d, n, bits}` with bits written as a '0'/'1' string of length n^d in
/// offset (lexicographic index) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub d: usize,
    pub n: usize,
    pub bits: String,
}

impl MatrixFile {
    pub fn from_matrix(m: &MultiMatrix) -> MatrixFile {
        MatrixFile {
            d: m.dim(),
            n: m.order(),
            bits: m.bits().iter().map(|&b| if b { '1' } else { '0' }).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<MultiMatrix, Error> {
        let mut bits = Vec::with_capacity(self.bits.len());
        for (pos, c) in self.bits.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::parse(format!(
                        "matrix bit string holds {other:?} at position {pos}, expected '0' or '1'"
                    )))
                }
            }
        }
        MultiMatrix::new(self.d, self.n, bits)
    }
}

/// `{d, n, weights}` with weights a d x n array of reduced rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTableFile {
    pub d: usize,
    pub n: usize,
    pub weights: Vec<Vec<String>>,
}

fn render_weights(table: &WeightTable) -> Vec<Vec<String>> {
    table
        .weights
        .iter()
        .map(|row| row.iter().map(rat_to_string).collect())
        .collect()
}

fn parse_weights(d: usize, n: usize, weights: &[Vec<String>]) -> Result<WeightTable, Error> {
    let mut parsed = Vec::with_capacity(weights.len());
    for row in weights {
        let mut out = Vec::with_capacity(row.len());
        for text in row {
            out.push(rat_from_str(text)?);
        }
        parsed.push(out);
    }
    WeightTable::new(d, n, parsed)
}

impl WeightTableFile {
    pub fn from_table(table: &WeightTable) -> WeightTableFile {
        WeightTableFile {
            d: table.d,
            n: table.n,
            weights: render_weights(table),
        }
    }

    pub fn to_table(&self) -> Result<WeightTable, Error> {
        parse_weights(self.d, self.n, &self.weights)
    }
}

/// A weight table plus the threshold margin it achieves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub d: usize,
    pub n: usize,
    pub weights: Vec<Vec<String>>,
    pub margin: String,
}

impl CertificateFile {
    pub fn from_certificate(cert: &ThresholdCertificate) -> CertificateFile {
        CertificateFile {
            d: cert.table.d,
            n: cert.table.n,
            weights: render_weights(&cert.table),
            margin: rat_to_string(&cert.margin),
        }
    }

    pub fn to_certificate(&self) -> Result<ThresholdCertificate, Error> {
        Ok(ThresholdCertificate {
            table: parse_weights(self.d, self.n, &self.weights)?,
            margin: rat_from_str(&self.margin)?,
        })
    }
}

/// `{d, n, entries, total}` with each entry an (index tuple, rational) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyplexFile {
    pub d: usize,
    pub n: usize,
    pub entries: Vec<(Vec<usize>, String)>,
    pub total: String,
}

impl PolyplexFile {
    pub fn from_polyplex(k: &Polyplex) -> PolyplexFile {
        PolyplexFile {
            d: k.d,
            n: k.n,
            entries: k
                .entries
                .iter()
                .map(|(idx, w)| (idx.coords().to_vec(), rat_to_string(w)))
                .collect(),
            total: rat_to_string(&k.weight),
        }
    }

    pub fn to_polyplex(&self) -> Result<Polyplex, Error> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (coords, text) in &self.entries {
            entries.push((
                Index::new(coords.clone(), self.d, self.n)?,
                rat_from_str(text)?,
            ));
        }
        Ok(Polyplex {
            d: self.d,
            n: self.n,
            entries,
            weight: rat_from_str(&self.total)?,
        })
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::parse(format!("serialization failed: {e}")))?;
    fs::write(path, text + "\n")?;
    Ok(())
}
