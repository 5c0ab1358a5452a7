//! Diameter-normalised comparison of lateral force across designs.
//!
//! Reported forces are carried to a common outer diameter with the `d²`
//! law. Forces that are not active lateral forces stay in the table but are
//! flagged: a jammed (rigidised) module resists load without being able to
//! move, and an extension force is axial.

use std::cmp::Ordering;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::materials::csv_error;
use crate::report::{aligned_table, sig4};
use crate::scaling::scale_force_diameter;

pub const RECORDS_CSV_HEADER: [&str; 8] = [
    "name",
    "source",
    "od_mm",
    "force_n",
    "kind",
    "dofs",
    "bending_deg",
    "notes",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForceKind {
    LateralActive,
    LateralJammed,
    Extension,
}

impl fmt::Display for ForceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForceKind::LateralActive => "lateral_active",
            ForceKind::LateralJammed => "lateral_jammed",
            ForceKind::Extension => "extension",
        })
    }
}

impl FromStr for ForceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "lateral_active" | "lateralactive" => Ok(ForceKind::LateralActive),
            "lateral_jammed" | "lateraljammed" => Ok(ForceKind::LateralJammed),
            "extension" => Ok(ForceKind::Extension),
            other => Err(invalid(format!("unknown force kind `{other}`"))),
        }
    }
}

/// A design as reported in its source.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignRecord {
    pub name: String,
    pub source: String,
    /// mm
    pub reported_od: f64,
    /// N
    pub reported_force: f64,
    pub force_kind: ForceKind,
    pub dofs: u32,
    pub bending_deg: Option<f64>,
    pub notes: String,
}

impl DesignRecord {
    fn validate(&self) -> Result<()> {
        if !(self.reported_od > 0.0 && self.reported_od.is_finite()) {
            return Err(invalid(format!("{}: OD must be positive", self.name)));
        }
        if !(self.reported_force >= 0.0 && self.reported_force.is_finite()) {
            return Err(invalid(format!(
                "{}: force must be non-negative",
                self.name
            )));
        }
        Ok(())
    }
}

/// A record normalised to the comparison diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub name: String,
    /// N at the target OD.
    pub force_at_target: f64,
    pub force_kind: ForceKind,
    pub flagged: bool,
}

pub fn normalize_record(rec: &DesignRecord, target_od: f64) -> Result<ComparisonRow> {
    rec.validate()?;
    Ok(ComparisonRow {
        name: rec.name.clone(),
        force_at_target: scale_force_diameter(rec.reported_force, rec.reported_od, target_od)?,
        force_kind: rec.force_kind,
        flagged: rec.force_kind != ForceKind::LateralActive,
    })
}

/// Normalises every record to `target_od` and sorts by descending force,
/// ties by name.
pub fn comparison_table(records: &[DesignRecord], target_od: f64) -> Result<Vec<ComparisonRow>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no design records"));
    }
    let mut rows = records
        .iter()
        .map(|r| normalize_record(r, target_od))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        b.force_at_target
            .total_cmp(&a.force_at_target)
            .then_with(|| a.name.cmp(&b.name))
    });
    Ok(rows)
}

/// Whether a row competes in the improvement statistic: active lateral
/// forces, plus jammed lateral forces, which are the strongest lateral
/// values in the literature.
pub fn counts_for_improvement(row: &ComparisonRow) -> bool {
    !row.flagged || row.force_kind == ForceKind::LateralJammed
}

#[derive(Debug, Clone, PartialEq)]
pub struct Baseline {
    pub name: String,
    pub force: f64,
    /// Improvement of the best row over this one, %.
    pub percent: f64,
}

/// Improvement of the strongest design over the runner-up.
#[derive(Debug, Clone, PartialEq)]
pub struct Improvement {
    pub best: String,
    pub best_force: f64,
    pub baseline: Baseline,
    /// Rows that entered the statistic, in table order.
    pub included: Vec<String>,
    /// The improvement over every other included row, strongest first.
    pub candidates: Vec<Baseline>,
}

impl Improvement {
    pub fn percent(&self) -> f64 {
        self.baseline.percent
    }
}

impl fmt::Display for Improvement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "improvement: {}% ({} at {} N over {} at {} N)",
            sig4(self.percent()),
            self.best,
            sig4(self.best_force),
            self.baseline.name,
            sig4(self.baseline.force)
        )?;
        writeln!(
            f,
            "computed as (best - runner_up) / runner_up * 100 over: {}",
            self.included.join(", ")
        )?;
        for c in self.candidates.iter().skip(1) {
            writeln!(
                f,
                "  over {} at {} N: {}%",
                c.name,
                sig4(c.force),
                sig4(c.percent)
            )?;
        }
        Ok(())
    }
}

/// `(best - second) / second * 100` over the rows selected by
/// [`counts_for_improvement`].
pub fn relative_improvement(table: &[ComparisonRow]) -> Result<Improvement> {
    if table.len() < 2 {
        return Err(Error::InsufficientRows {
            needed: 2,
            got: table.len(),
        });
    }
    let mut eligible: Vec<&ComparisonRow> =
        table.iter().filter(|r| counts_for_improvement(r)).collect();
    if eligible.len() < 2 {
        return Err(Error::InsufficientRows {
            needed: 2,
            got: eligible.len(),
        });
    }
    eligible.sort_by(|a, b| {
        b.force_at_target
            .partial_cmp(&a.force_at_target)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.name.cmp(&b.name))
    });
    let best = eligible[0];
    let mut candidates = Vec::new();
    for other in &eligible[1..] {
        if other.force_at_target <= 0.0 {
            continue;
        }
        candidates.push(Baseline {
            name: other.name.clone(),
            force: other.force_at_target,
            percent: (best.force_at_target - other.force_at_target) / other.force_at_target * 100.0,
        });
    }
    if eligible[1].force_at_target <= 0.0 {
        return Err(invalid("runner-up force is zero; improvement undefined"));
    }
    Ok(Improvement {
        best: best.name.clone(),
        best_force: best.force_at_target,
        baseline: candidates[0].clone(),
        included: table
            .iter()
            .filter(|r| counts_for_improvement(r))
            .map(|r| r.name.clone())
            .collect(),
        candidates,
    })
}

fn record(
    name: &str,
    source: &str,
    od: f64,
    force: f64,
    kind: ForceKind,
    notes: &str,
) -> DesignRecord {
    DesignRecord {
        name: name.to_string(),
        source: source.to_string(),
        reported_od: od,
        reported_force: force,
        force_kind: kind,
        dofs: 2,
        bending_deg: None,
        notes: notes.to_string(),
    }
}

const PRESCALED: &str = "value already at 12 mm OD; original diameter not reported";

/// Maximum lateral force of one 2-DOF segment for the published designs
/// with a reported lateral force, plus this design.
///
/// Only 12 mm equivalents are available for the literature entries, so they
/// are stored at `reported_od = 12`.
pub fn published_records() -> Vec<DesignRecord> {
    vec![
        record(
            "Tsinghua University",
            "tsinghua",
            12.0,
            0.384,
            ForceKind::LateralActive,
            PRESCALED,
        ),
        record(
            "University of Hong Kong",
            "hku",
            12.0,
            0.82,
            ForceKind::LateralActive,
            PRESCALED,
        ),
        record(
            "Stiff-flop design",
            "stiff-flop-sim",
            12.0,
            0.09,
            ForceKind::LateralActive,
            PRESCALED,
        ),
        record(
            "Stiff-flop jamming",
            "stiff-flop",
            12.0,
            0.84,
            ForceKind::LateralJammed,
            "locked by granular jamming; cannot move actively",
        ),
        record(
            "Our design",
            "this-design",
            12.0,
            2.9,
            ForceKind::LateralActive,
            "measured at 3 bar",
        ),
    ]
}

/// The Stiff-flop module's 47.1 N at 33 mm OD, an axial force measured with
/// a load cell over a vertical module.
pub fn stiff_flop_extension_record() -> DesignRecord {
    record(
        "Stiff-flop extension",
        "stiff-flop",
        33.0,
        47.1,
        ForceKind::Extension,
        "load cell on top of a vertical module",
    )
}

pub fn read_records_csv<R: Read>(reader: R, source: &Path) -> Result<Vec<DesignRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| csv_error(source, e))?;
    if header.iter().collect::<Vec<_>>() != RECORDS_CSV_HEADER {
        return Err(Error::parse(
            source,
            1,
            format!("expected header `{}`", RECORDS_CSV_HEADER.join(",")),
        ));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(source, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        let cell = |i: usize| rec.get(i).unwrap_or("");
        let err = |msg: String| Error::parse(source, line, msg);
        let num = |i: usize| {
            cell(i)
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    err(format!(
                        "invalid number `{}` in column `{}`",
                        cell(i),
                        RECORDS_CSV_HEADER[i]
                    ))
                })
        };
        let r = DesignRecord {
            name: cell(0).to_string(),
            source: cell(1).to_string(),
            reported_od: num(2)?,
            reported_force: num(3)?,
            force_kind: cell(4).parse().map_err(|e: Error| err(e.to_string()))?,
            dofs: cell(5)
                .parse()
                .map_err(|_| err(format!("invalid DOF count `{}`", cell(5))))?,
            bending_deg: if cell(6).is_empty() {
                None
            } else {
                Some(num(6)?)
            },
            notes: cell(7).to_string(),
        };
        r.validate().map_err(|e| err(e.to_string()))?;
        out.push(r);
    }
    Ok(out)
}

pub fn load_records_csv(path: impl AsRef<Path>) -> Result<Vec<DesignRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_records_csv(file, path)
}

fn csv_line(cells: &[String]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(cells).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

pub fn records_to_csv(records: &[DesignRecord]) -> String {
    let mut out = RECORDS_CSV_HEADER.join(",") + "\n";
    for r in records {
        out.push_str(&csv_line(&[
            r.name.clone(),
            r.source.clone(),
            r.reported_od.to_string(),
            r.reported_force.to_string(),
            r.force_kind.to_string(),
            r.dofs.to_string(),
            r.bending_deg.map(|b| b.to_string()).unwrap_or_default(),
            r.notes.clone(),
        ]));
    }
    out
}

pub const TABLE_CSV_HEADER: &str = "name,force_at_target_n,kind,flagged";

/// Comparison rows as CSV at full precision.
pub fn table_to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = format!("{TABLE_CSV_HEADER}\n");
    for r in rows {
        out.push_str(&csv_line(&[
            r.name.clone(),
            r.force_at_target.to_string(),
            r.force_kind.to_string(),
            r.flagged.to_string(),
        ]));
    }
    out
}

/// Comparison rows as an aligned text table, forces to four significant
/// digits.
pub fn table_to_text(rows: &[ComparisonRow], target_od: f64) -> String {
    let force_col = format!(
        "force_at_{}mm_n",
        sig4(target_od).trim_end_matches('0').trim_end_matches('.')
    );
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                sig4(r.force_at_target),
                r.force_kind.to_string(),
                if r.flagged { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    aligned_table(&["design", &force_col, "kind", "flagged"], &body)
}

/// Bar-chart series: one point per row in table order.
pub fn plot_data_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("index,label,force_n,flagged\n");
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&csv_line(&[
            i.to_string(),
            r.name.clone(),
            r.force_at_target.to_string(),
            r.flagged.to_string(),
        ]));
    }
    out
}
