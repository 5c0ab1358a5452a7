//! Hyperelastic rubber catalogue and stiffness-based material ranking.
//!
//! The Neo-Hookean `c10` coefficient is the single rubber stiffness scalar
//! used by the scaling laws. A material without a tabulated `c10` is never
//! ranked or scaled; no value is estimated from its Shore hardness.

use std::cmp::Ordering;
use std::io::Read;
use std::path::Path;

use crate::error::{invalid, Error, Result};

/// Column header of the materials CSV format.
pub const MATERIALS_CSV_HEADER: [&str; 6] = [
    "name",
    "c10_kpa",
    "ultimate_stress_mpa",
    "ultimate_strain_pct",
    "shore",
    "poisson",
];

/// A hyperelastic rubber.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    /// Neo-Hookean stiffness coefficient, kPa.
    pub c10: Option<f64>,
    /// MPa.
    pub ultimate_stress: f64,
    /// Fraction, e.g. `7.0` for 700 %.
    pub ultimate_strain: f64,
    /// Scale label and value, e.g. `28A` or `OO50`.
    pub shore_hardness: String,
    pub poisson_ratio: Option<f64>,
    /// One standard deviation on `c10`, kPa.
    pub c10_uncertainty: Option<f64>,
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(invalid("material name is empty"));
        }
        if let Some(c10) = self.c10 {
            if !(c10.is_finite() && c10 > 0.0) {
                return Err(invalid(format!("{}: c10 must be positive", self.name)));
            }
        }
        if !(self.ultimate_stress.is_finite() && self.ultimate_stress > 0.0) {
            return Err(invalid(format!(
                "{}: ultimate stress must be positive",
                self.name
            )));
        }
        if !(self.ultimate_strain.is_finite() && self.ultimate_strain > 0.0) {
            return Err(invalid(format!(
                "{}: ultimate strain must be positive",
                self.name
            )));
        }
        Ok(())
    }

    /// Ultimate strain in percent, as used by the CSV format.
    pub fn ultimate_strain_pct(&self) -> f64 {
        // round away the representation error of the fraction, e.g. 9.8 * 100
        (self.ultimate_strain * 1e8).round() / 1e6
    }
}

fn table_row(
    name: &str,
    ultimate_stress: f64,
    ultimate_strain: f64,
    shore: &str,
    c10: Option<f64>,
) -> Material {
    Material {
        name: name.to_string(),
        c10,
        ultimate_stress,
        ultimate_strain,
        shore_hardness: shore.to_string(),
        poisson_ratio: None,
        c10_uncertainty: None,
    }
}

/// The six silicone rubbers of the built-in catalogue.
///
/// Elastosil M4601 carries the mean `c10 = 131.2 kPa` of a repeated
/// characterisation (standard deviation 24.3 kPa). A Yeoh fit elsewhere gives
/// `c10 = 110 kPa`; that alternative is not stored.
pub fn builtin_materials() -> Vec<Material> {
    let mut elastosil = table_row("Elastosil M4601", 6.5, 7.00, "28A", Some(131.2));
    elastosil.c10_uncertainty = Some(24.3);
    vec![
        table_row("DragonSkin 10", 2.75, 6.63, "10A", Some(42.5)),
        table_row("DragonSkin 20", 3.8, 6.20, "20A", None),
        table_row("DragonSkin 30", 3.45, 3.84, "30A", None),
        elastosil,
        table_row("Ecoflex OO-30", 1.38, 9.00, "OO30", Some(12.7)),
        table_row("Ecoflex OO-50", 2.17, 9.80, "OO50", Some(25.0)),
    ]
}

/// Looks a material up by exact name, falling back to a case-insensitive match.
pub fn find_material<'a>(materials: &'a [Material], name: &str) -> Option<&'a Material> {
    materials
        .iter()
        .find(|m| m.name == name)
        .or_else(|| materials.iter().find(|m| m.name.eq_ignore_ascii_case(name)))
}

/// Materials able to reach `required_strain` (a fraction), stiffest first.
///
/// At equal non-dimensional groups the supportable wrench grows with rubber
/// stiffness, so candidates are ordered by descending `c10`. Ties go to the
/// larger ultimate strain, then to name order. Materials without `c10` are
/// dropped. An empty result is not an error.
pub fn rank_materials(candidates: &[Material], required_strain: f64) -> Result<Vec<Material>> {
    if required_strain.is_nan() || required_strain < 0.0 {
        return Err(invalid(format!(
            "required strain must be non-negative, got {required_strain}"
        )));
    }
    let mut ranked: Vec<Material> = Vec::new();
    for m in candidates {
        if m.c10.is_some() && m.ultimate_strain >= required_strain && !ranked.iter().any(|r| r == m)
        {
            ranked.push(m.clone());
        }
    }
    ranked.sort_by(ranking_order);
    Ok(ranked)
}

fn ranking_order(a: &Material, b: &Material) -> Ordering {
    let (ca, cb) = (a.c10.unwrap_or(0.0), b.c10.unwrap_or(0.0));
    cb.total_cmp(&ca)
        .then(b.ultimate_strain.total_cmp(&a.ultimate_strain))
        .then_with(|| a.name.cmp(&b.name))
}

/// Reads materials from CSV. Empty cells mean absent; strain is in percent.
pub fn read_materials_csv<R: Read>(reader: R, source: &Path) -> Result<Vec<Material>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| csv_error(source, e))?
        .iter()
        .collect::<Vec<_>>();
    if header != MATERIALS_CSV_HEADER {
        return Err(Error::parse(
            source,
            1,
            format!("expected header `{}`", MATERIALS_CSV_HEADER.join(",")),
        ));
    }
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize| record.get(i).unwrap_or("");
        let number = |i: usize| -> Result<Option<f64>> {
            let text = cell(i);
            if text.is_empty() {
                return Ok(None);
            }
            text.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| {
                    Error::parse(
                        source,
                        line,
                        format!(
                            "invalid number `{text}` in column `{}`",
                            MATERIALS_CSV_HEADER[i]
                        ),
                    )
                })
        };
        let required = |i: usize| -> Result<f64> {
            number(i)?.ok_or_else(|| {
                Error::parse(
                    source,
                    line,
                    format!("column `{}` is required", MATERIALS_CSV_HEADER[i]),
                )
            })
        };
        let material = Material {
            name: cell(0).to_string(),
            c10: number(1)?,
            ultimate_stress: required(2)?,
            ultimate_strain: required(3)? / 100.0,
            shore_hardness: cell(4).to_string(),
            poisson_ratio: number(5)?,
            c10_uncertainty: None,
        };
        material
            .validate()
            .map_err(|e| Error::parse(source, line, e.to_string()))?;
        out.push(material);
    }
    Ok(out)
}

pub fn load_materials_csv(path: impl AsRef<Path>) -> Result<Vec<Material>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_materials_csv(file, path)
}

/// Serialises materials in the CSV format read by [`read_materials_csv`].
pub fn materials_to_csv(materials: &[Material]) -> String {
    let mut out = MATERIALS_CSV_HEADER.join(",");
    out.push('\n');
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for m in materials {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            m.name,
            opt(m.c10),
            m.ultimate_stress,
            m.ultimate_strain_pct(),
            m.shore_hardness,
            opt(m.poisson_ratio)
        ));
    }
    out
}

pub(crate) fn csv_error(source: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::parse(source, line, e.to_string())
}
