use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ZRow;
use crate::error::{Error, Result};
use crate::indices::IndexKind;

pub const PRESET_NAMES: [&str; 2] = ["original_gispy", "scigispy"];

/// A weighted sum of index z values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaConfig {
    pub name: String,
    /// Index name to coefficient.
    pub terms: BTreeMap<String, f64>,
}

impl FormulaConfig {
    /// Built-in formulas by name.
    ///
    /// ```
    /// use scigis::gis::FormulaConfig;
    ///
    /// let f = FormulaConfig::preset("scigispy").unwrap();
    /// assert_eq!(f.terms.len(), 6);
    /// assert_eq!(f.terms["msl"], -1.0);
    /// assert!(FormulaConfig::preset("bogus").is_err());
    /// ```
    pub fn preset(name: &str) -> Result<FormulaConfig> {
        let terms: &[(&str, f64)] = match name {
            "original_gispy" => &[
                ("pcref", 1.0),
                ("pcdc", 1.0),
                ("smcaus_e", 1.0),
                ("smcaus_wn", -1.0),
                ("pccnc", -1.0),
                ("wrdimg", -1.0),
                ("wrdhyp_mean", -1.0),
            ],
            "scigispy" => &[
                ("pcref_chunk", -1.0),
                ("pcdc", 1.0),
                ("smcaus_e", 1.0),
                ("smcaus_wn", -1.0),
                ("wrdic", -1.0),
                ("msl", -1.0),
            ],
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        Ok(FormulaConfig {
            name: name.to_string(),
            terms: terms.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        })
    }

    /// A preset name, or the path of a JSON formula file.
    pub fn resolve(spec: &str) -> Result<FormulaConfig> {
        if PRESET_NAMES.contains(&spec) {
            return Self::preset(spec);
        }
        let path = Path::new(spec);
        if !path.is_file() {
            return Err(Error::UnknownPreset(spec.to_string()));
        }
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{spec}: {m}")),
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<FormulaConfig> {
        let cfg: FormulaConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("formula: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Every term names a known index and has a finite coefficient.
    pub fn validate(&self) -> Result<()> {
        self.indices().map(|_| ())
    }

    /// The indices the formula reads.
    pub fn indices(&self) -> Result<Vec<IndexKind>> {
        self.terms
            .iter()
            .map(|(name, coef)| {
                let kind: IndexKind = name.parse()?;
                if !coef.is_finite() {
                    return Err(Error::Config(format!(
                        "coefficient for `{name}` is not finite"
                    )));
                }
                Ok(kind)
            })
            .collect()
    }

    /// `Σ coefficient × z`.
    ///
    /// ```
    /// use scigis::gis::FormulaConfig;
    /// use scigis::indices::IndexKind;
    ///
    /// let mut z = [0.0; IndexKind::COUNT];
    /// z[IndexKind::Pcref.slot()] = 1.0;
    /// let f = FormulaConfig::preset("original_gispy").unwrap();
    /// assert_eq!(f.apply(&z).unwrap(), 1.0);
    /// ```
    pub fn apply(&self, z: &ZRow) -> Result<f64> {
        let mut sum = 0.0;
        for (name, coef) in &self.terms {
            let kind: IndexKind = name.parse()?;
            sum += coef * z[kind.slot()];
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(kind: IndexKind) -> ZRow {
        let mut z = [0.0; IndexKind::COUNT];
        z[kind.slot()] = 1.0;
        z
    }

    #[test]
    fn preset_shapes() {
        let orig = FormulaConfig::preset("original_gispy").unwrap();
        let sci = FormulaConfig::preset("scigispy").unwrap();
        assert_eq!(orig.terms.len(), 7);
        assert_eq!(sci.terms.len(), 6);
        for f in [&orig, &sci] {
            assert!(f.terms.values().all(|c| c.abs() == 1.0));
            f.validate().unwrap();
        }
        assert!(matches!(
            FormulaConfig::preset("bogus"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn polarity() {
        let orig = FormulaConfig::preset("original_gispy").unwrap();
        let sci = FormulaConfig::preset("scigispy").unwrap();
        assert_eq!(orig.apply(&[0.0; IndexKind::COUNT]).unwrap(), 0.0);
        assert_eq!(orig.apply(&unit(IndexKind::Pcref)).unwrap(), 1.0);
        assert_eq!(sci.apply(&unit(IndexKind::Msl)).unwrap(), -1.0);
        assert_eq!(sci.apply(&unit(IndexKind::PcrefChunk)).unwrap(), -1.0);
        assert_eq!(sci.apply(&unit(IndexKind::Pcref)).unwrap(), 0.0);
    }

    #[test]
    fn json_config() {
        let f = FormulaConfig::from_json(r#"{"name":"msl_only","terms":{"msl":-1}}"#).unwrap();
        assert_eq!(f.indices().unwrap(), vec![IndexKind::Msl]);
        let bad = FormulaConfig::from_json(r#"{"name":"x","terms":{"coref":1}}"#);
        assert!(matches!(bad, Err(Error::UnknownIndex(_))));
        assert!(FormulaConfig::from_json("{").is_err());
    }

    #[test]
    fn resolve_file_or_preset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.json");
        fs::write(&path, r#"{"name":"f","terms":{"pcdc":2.0}}"#).unwrap();
        assert_eq!(
            FormulaConfig::resolve(path.to_str().unwrap())
                .unwrap()
                .terms["pcdc"],
            2.0
        );
        assert_eq!(FormulaConfig::resolve("scigispy").unwrap().name, "scigispy");
        assert!(FormulaConfig::resolve("no/such/file.json")
            .unwrap_err()
            .is_config());
    }
}
