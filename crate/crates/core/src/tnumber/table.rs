//! `SpectrumTable`, the interchange format between solvers, fits and files.
//!
//! CSV layout: header `n,l,m,N,E`, one row per state, empty fields for absent
//! quantum numbers, energies at 12 significant digits.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};

use serde::Serialize;

use super::StateLabel;
use crate::error::{Error, Result};
use crate::format::g12;

pub const CSV_HEADER: &str = "n,l,m,N,E";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Oracle,
    Semiclassical,
    File,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Oracle => "oracle",
            Provenance::Semiclassical => "semiclassical",
            Provenance::File => "file",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub label: StateLabel,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    rows: Vec<SpectrumRow>,
    provenance: Provenance,
}

impl SpectrumTable {
    pub fn new(rows: Vec<SpectrumRow>, provenance: Provenance) -> Result<Self> {
        let mut seen = HashSet::with_capacity(rows.len());
        for row in &rows {
            if !seen.insert(row.label) {
                return Err(Error::InvalidState(format!(
                    "duplicate state {}",
                    row.label
                )));
            }
        }
        Ok(Self { rows, provenance })
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (StateLabel, f64)>,
        provenance: Provenance,
    ) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(label, energy)| SpectrumRow { label, energy })
                .collect(),
            provenance,
        )
    }

    pub fn rows(&self) -> &[SpectrumRow] {
        &self.rows
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn energy_of(&self, label: &StateLabel) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.label == *label)
            .map(|r| r.energy)
    }

    /// Sorts by energy, breaking ties by `(l, n, m)`.
    pub fn sort_by_energy(&mut self) {
        self.rows.sort_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then_with(|| a.label.cmp_order(&b.label))
        });
    }

    pub fn sorted_by_energy(mut self) -> Self {
        self.sort_by_energy();
        self
    }

    /// Keeps the first `count` rows.
    pub fn truncated(mut self, count: usize) -> Self {
        self.rows.truncate(count);
        self
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(out, "{},{}", label_fields(&row.label), g12(row.energy))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.label.n,
                    "l": r.label.l,
                    "m": r.label.m,
                    "N": r.label.slab,
                    "E": r.energy,
                })
            })
            .collect();
        serde_json::json!({ "provenance": self.provenance, "rows": rows })
    }

    /// Reads a table with header `n,l,m,N` plus an energy column. Extra
    /// columns are ignored; the energy is taken from `E`, else `E_exact`, else
    /// `E_semi`, and rows with an empty energy are skipped.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let n_col = col("n").ok_or_else(|| Error::Parse("missing column 'n'".into()))?;
        let (l_col, m_col, slab_col) = (col("l"), col("m"), col("N"));
        let e_col = col("E")
            .or_else(|| col("E_exact"))
            .or_else(|| col("E_semi"))
            .ok_or_else(|| Error::Parse("no energy column (E, E_exact or E_semi)".into()))?;

        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            let line = i + 2;
            let field = |c: Option<usize>| c.and_then(|c| record.get(c)).filter(|s| !s.is_empty());
            let Some(energy) = field(Some(e_col)) else {
                continue;
            };
            let energy: f64 = parse(energy, line)?;
            let label = StateLabel {
                n: parse(field(Some(n_col)).unwrap_or(""), line)?,
                l: field(l_col).map(|s| parse(s, line)).transpose()?,
                m: field(m_col).map(|s| parse(s, line)).transpose()?,
                slab: field(slab_col).map(|s| parse(s, line)).transpose()?,
            }
            .validated()?;
            rows.push(SpectrumRow { label, energy });
        }
        Self::new(rows, Provenance::File)
    }
}

/// `n,l,m,N` fields with empty entries for absent quantum numbers.
pub fn label_fields(label: &StateLabel) -> String {
    fn opt<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    format!(
        "{},{},{},{}",
        label.n,
        opt(label.l),
        opt(label.m),
        opt(label.slab)
    )
}

fn parse<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("line {line}: cannot parse '{s}'")))
}
