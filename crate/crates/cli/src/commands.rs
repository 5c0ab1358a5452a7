use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use softarm::comparison::{
    comparison_table, load_records_csv, plot_data_csv, published_records, relative_improvement,
    table_to_csv, table_to_text,
};
use softarm::geometry::{validate_spec, CrossSectionSpec, MorphState};
use softarm::materials::{
    builtin_materials, find_material, load_materials_csv, materials_to_csv, rank_materials,
    Material,
};
use softarm::mechanics::{predicted_curve, ForcePressureCurve, SegmentDesign};
use softarm::report::{aligned_table, sig4};
use softarm::scaling::{fit_stiffness_ratio, scale_curve_diameter, scale_curve_material};

use crate::config::RunConfig;
use crate::{
    CompareArgs, FitArgs, Format, MaterialsArgs, Morph, PredictArgs, ScaleArgs, ValidateArgs,
};

fn emit(data: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, data).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(data.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn catalogue(file: Option<&Path>, cfg: &RunConfig) -> Result<Vec<Material>> {
    match file.or(cfg.materials.as_deref()) {
        Some(p) => Ok(load_materials_csv(p)?),
        None => Ok(builtin_materials()),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), sig4)
}

fn materials_text(ms: &[Material]) -> String {
    let rows: Vec<Vec<String>> = ms
        .iter()
        .map(|m| {
            vec![
                m.name.clone(),
                opt(m.c10),
                sig4(m.ultimate_stress),
                sig4(m.ultimate_strain_pct()),
                m.shore_hardness.clone(),
                opt(m.poisson_ratio),
            ]
        })
        .collect();
    aligned_table(
        &[
            "material",
            "c10_kpa",
            "stress_mpa",
            "strain_pct",
            "shore",
            "poisson",
        ],
        &rows,
    )
}

pub fn materials(cfg: &RunConfig, args: &MaterialsArgs) -> Result<ExitCode> {
    let mut ms = catalogue(args.file.as_deref(), cfg)?;
    if args.rank {
        let pct = args
            .strain
            .ok_or_else(|| anyhow!("--rank needs --strain"))?;
        ms = rank_materials(&ms, pct / 100.0)?;
        if ms.is_empty() {
            eprintln!("no material with c10 reaches {pct}% strain");
        }
    }
    let text = match args.format {
        Format::Text => materials_text(&ms),
        Format::Csv => materials_to_csv(&ms),
    };
    emit(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn predict(cfg: &RunConfig, args: &PredictArgs) -> Result<ExitCode> {
    let section = CrossSectionSpec::load(&args.spec)?;
    let ms = catalogue(args.materials.as_deref(), cfg)?;
    let material = find_material(&ms, &args.material)
        .ok_or_else(|| anyhow!("unknown material `{}`", args.material))?
        .clone();
    let profile = (!args.no_profile).then_some(&cfg.profile);

    let highest = args.pressures.iter().copied().fold(0.0, f64::max);
    if let Some(p) = profile {
        if highest > p.max_pressure {
            bail!(
                "pressure {highest} kPa exceeds the {} kPa limit of the requirements profile",
                p.max_pressure
            );
        }
    }
    let max_pressure = args
        .max_pressure
        .or(profile.map(|p| p.max_pressure))
        .unwrap_or(highest.max(f64::MIN_POSITIVE));
    let design = SegmentDesign {
        section,
        length: args.length,
        material,
        max_pressure,
        component_stiffnesses: None,
    };
    design.validate(profile)?;

    let morph = match args.morph {
        Morph::None => {
            if args.area_gain.is_some() || args.lever_gain.is_some() {
                eprintln!("warning: gains are ignored without --morph ideal");
            }
            MorphState::undeformed()
        }
        Morph::Ideal => MorphState::morphed(
            args.area_gain.unwrap_or(cfg.area_gain),
            args.lever_gain.unwrap_or(cfg.lever_gain),
        )?,
    };
    let set: BTreeSet<usize> = args.pressurized.iter().copied().collect();
    let curve = predicted_curve(&design, &args.pressures, &set, morph)?;
    emit(&curve.to_csv(), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn scale(cfg: &RunConfig, args: &ScaleArgs) -> Result<ExitCode> {
    let path = args
        .curve
        .as_deref()
        .or(cfg.curve.as_deref())
        .ok_or_else(|| anyhow!("no curve given; pass --curve or set `curve` in the config"))?;
    let curve = ForcePressureCurve::load(path)?;
    let scaled = match (args.c10_from, args.c10_to, args.d_from, args.d_to) {
        (Some(from), Some(to), None, None) => scale_curve_material(&curve, from, to)?,
        (None, None, Some(from), Some(to)) => scale_curve_diameter(&curve, from, to)?,
        _ => bail!("give either --c10-from/--c10-to or --d-from/--d-to"),
    };
    emit(&scaled.to_csv(), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn fit(args: &FitArgs) -> Result<ExitCode> {
    let a = ForcePressureCurve::load(&args.a)?;
    let b = ForcePressureCurve::load(&args.b)?;
    let fit = fit_stiffness_ratio(&a, &b)?;
    let text = match args.format {
        Format::Csv => fit.to_csv(),
        Format::Text => format!(
            "ratio = {}\nresidual_n = {}\noverlap_kpa = {} .. {}\npoints = {}\n",
            sig4(fit.ratio),
            sig4(fit.residual),
            sig4(fit.overlap.0),
            sig4(fit.overlap.1),
            fit.points
        ),
    };
    emit(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn compare(cfg: &RunConfig, args: &CompareArgs) -> Result<ExitCode> {
    let records = match args.records.as_deref().or(cfg.records.as_deref()) {
        Some(p) => load_records_csv(p)?,
        None => published_records(),
    };
    let target = args.target_od.unwrap_or(cfg.target_od);
    let table = comparison_table(&records, target)?;
    let text = match args.format {
        Format::Csv => table_to_csv(&table),
        Format::Text => {
            let mut t = table_to_text(&table, target);
            match relative_improvement(&table) {
                Ok(imp) => {
                    t.push('\n');
                    t.push_str(&imp.to_string());
                }
                Err(e) => eprintln!("note: no improvement figure: {e}"),
            }
            t
        }
    };
    emit(&text, args.out.as_deref())?;
    if let Some(p) = &args.plot_data {
        fs::write(p, plot_data_csv(&table)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn validate(cfg: &RunConfig, args: &ValidateArgs) -> Result<ExitCode> {
    let spec = CrossSectionSpec::load(&args.spec)?;
    let profile = (!args.no_profile).then_some(&cfg.profile);
    let report = validate_spec(&spec, profile);
    emit(&report.to_string(), None)?;
    Ok(if report.is_valid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
