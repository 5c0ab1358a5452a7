use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use softarm::kv::KeyValues;
use softarm::requirements::RequirementsProfile;

/// Settings shared by the subcommands, read from a flat `key = value` file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub profile: RequirementsProfile,
    pub materials: Option<PathBuf>,
    pub records: Option<PathBuf>,
    pub curve: Option<PathBuf>,
    /// mm
    pub target_od: f64,
    pub area_gain: f64,
    pub lever_gain: f64,
}

const PATH_KEYS: [&str; 3] = ["materials", "records", "curve"];
const OTHER_KEYS: [&str; 3] = ["target_od", "area_gain", "lever_gain"];

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            profile: RequirementsProfile::MEDICAL,
            materials: None,
            records: None,
            curve: None,
            target_od: 12.0,
            area_gain: 2.0,
            lever_gain: 2.0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let kv = KeyValues::read(path)?;
        let allowed: Vec<&str> = RequirementsProfile::KEYS
            .iter()
            .chain(&PATH_KEYS)
            .chain(&OTHER_KEYS)
            .copied()
            .collect();
        kv.reject_unknown(&allowed)?;

        // relative paths are taken from the config file's directory
        let base = path.parent().unwrap_or(Path::new(""));
        let resolve = |key: &str| -> Result<Option<PathBuf>> {
            let Some(v) = kv.get(key) else {
                return Ok(None);
            };
            let p = base.join(v);
            if !p.exists() {
                bail!(
                    "{}: {key} path {} does not exist",
                    path.display(),
                    p.display()
                );
            }
            Ok(Some(p))
        };
        let d = Self::default();
        let cfg = Self {
            profile: RequirementsProfile::overlay(d.profile, &kv)?,
            materials: resolve("materials")?,
            records: resolve("records")?,
            curve: resolve("curve")?,
            target_od: kv.f64("target_od")?.unwrap_or(d.target_od),
            area_gain: kv.f64("area_gain")?.unwrap_or(d.area_gain),
            lever_gain: kv.f64("lever_gain")?.unwrap_or(d.lever_gain),
        };
        if !(cfg.target_od > 0.0 && cfg.target_od.is_finite()) {
            bail!("{}: target_od must be positive", path.display());
        }
        Ok(cfg)
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::load(p).with_context(|| format!("reading config {}", p.display())),
            None => Ok(Self::default()),
        }
    }
}
