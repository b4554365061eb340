use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RadialPotential;
use crate::error::{Error, Result};

fn unit_scale() -> f64 {
    1.0
}

/// JSON form of a potential:
/// `{"type": "power_law"|"hard_wall"|"tabulated", "beta", "coeff", "R", "samples": [[r, V], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PotentialConfig {
    PowerLaw {
        beta: f64,
        coeff: f64,
        #[serde(rename = "R", default = "unit_scale")]
        radius: f64,
    },
    HardWall {
        #[serde(rename = "R")]
        radius: f64,
    },
    Tabulated {
        samples: Vec<[f64; 2]>,
    },
}

impl TryFrom<PotentialConfig> for RadialPotential {
    type Error = Error;

    fn try_from(config: PotentialConfig) -> Result<Self> {
        match config {
            PotentialConfig::PowerLaw {
                beta,
                coeff,
                radius,
            } => RadialPotential::power_law(beta, coeff, radius),
            PotentialConfig::HardWall { radius } => RadialPotential::hard_wall(radius),
            PotentialConfig::Tabulated { samples } => {
                let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s[0], s[1])).collect();
                RadialPotential::tabulated(&pairs)
            }
        }
    }
}

impl From<&RadialPotential> for PotentialConfig {
    fn from(potential: &RadialPotential) -> Self {
        match potential {
            RadialPotential::PowerLaw { beta, coeff, scale } => PotentialConfig::PowerLaw {
                beta: *beta,
                coeff: *coeff,
                radius: *scale,
            },
            RadialPotential::HardWall { radius } => PotentialConfig::HardWall { radius: *radius },
            RadialPotential::Tabulated(t) => PotentialConfig::Tabulated {
                samples: t
                    .knots()
                    .iter()
                    .zip(t.values())
                    .map(|(r, v)| [*r, *v])
                    .collect(),
            },
        }
    }
}

impl RadialPotential {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: PotentialConfig = serde_json::from_str(text)?;
        config.try_into()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let config: PotentialConfig = serde_json::from_value(value)?;
        config.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PotentialConfig::from(self)).expect("potential config serializes")
    }

    /// Reads two-column `r,V` samples; a non-numeric first row is taken as a header.
    pub fn tabulated_from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut samples = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() < 2 {
                return Err(Error::Parse(format!(
                    "row {}: expected two columns r,V",
                    i + 1
                )));
            }
            match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
                (Ok(r), Ok(v)) => samples.push((r, v)),
                _ if i == 0 => continue,
                _ => {
                    return Err(Error::Parse(format!(
                        "row {}: cannot parse '{}', '{}' as numbers",
                        i + 1,
                        &record[0],
                        &record[1]
                    )))
                }
            }
        }
        RadialPotential::tabulated(&samples)
    }

    /// Loads a potential from a `.csv` table or a JSON document.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let is_csv = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            Self::tabulated_from_csv(std::fs::File::open(path)?)
        } else {
            Self::from_json(&std::fs::read_to_string(path)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::PotentialValue;

    #[test]
    fn parses_each_variant() {
        let osc =
            RadialPotential::from_json(r#"{"type":"power_law","beta":2,"coeff":1,"R":1}"#).unwrap();
        assert_eq!(osc, RadialPotential::oscillator());
        let coulomb =
            RadialPotential::from_json(r#"{"type":"power_law","beta":-1,"coeff":-1}"#).unwrap();
        assert_eq!(coulomb, RadialPotential::coulomb());
        let well = RadialPotential::from_json(r#"{"type":"hard_wall","R":2.5}"#).unwrap();
        assert_eq!(well, RadialPotential::HardWall { radius: 2.5 });
        let tab =
            RadialPotential::from_json(r#"{"type":"tabulated","samples":[[0,0],[1,1],[2,4]]}"#)
                .unwrap();
        assert_eq!(tab.evaluate(1.0).unwrap(), PotentialValue::Finite(1.0));
        assert_eq!(RadialPotential::from_json(&tab.to_json()).unwrap(), tab);
    }

    #[test]
    fn invalid_documents_are_config_errors() {
        for doc in [
            r#"{"type":"power_law","beta":0,"coeff":1}"#,
            r#"{"type":"hard_wall"}"#,
            r#"{"type":"cone","R":1}"#,
            r#"{"type":"tabulated","samples":[[0,0],[0,1]]}"#,
        ] {
            let err = RadialPotential::from_json(doc).unwrap_err();
            assert!(err.is_config(), "{doc}: {err}");
        }
    }

    #[test]
    fn csv_with_and_without_header() {
        let with = RadialPotential::tabulated_from_csv("r,V\n0,0\n1,1\n2,4\n".as_bytes()).unwrap();
        let without = RadialPotential::tabulated_from_csv("0, 0\n1, 1\n2, 4\n".as_bytes()).unwrap();
        assert_eq!(with, without);
        assert!(RadialPotential::tabulated_from_csv("r,V\n0,0\n1,x\n".as_bytes()).is_err());
    }
}
