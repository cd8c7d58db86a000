//! Batch front end: construct, matrix, compare, and score from the command
//! line with reproducible outputs.
//!
//! Precedence for every setting is command-line flag, then config file,
//! then built-in default (`SKIA_OUT_DIR` supplies the default output root).
//! Identical resolved configs produce byte-identical output files: no
//! timestamps, fixed ordering everywhere.
//!
//! Exit codes: 0 success, 2 user/config error, 3 internal or numeric
//! failure.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use torus_shade::compare::{
    calibration_from_reports, calibration_to_json, compare_config, reports_to_csv,
    reports_to_json, CompareError, ComparisonReport, ReferenceKind, DEFAULT_RESOLUTION,
};
use torus_shade::construction::{
    run_construction, trace_shade_path, trace_to_json, validate_trace, ConstructionError,
    InterpretationVariant, TorusElevationSpec,
};
use torus_shade::oracle::{build_oracle_shade, Torus3};
use torus_shade::plates::{
    plate_construction, plate_matrix, plate_overlay, presets, CellStatus, PlateStyle,
};
use torus_shade::rubric;

#[derive(Parser)]
#[command(
    name = "torus-shade",
    version,
    about = "Elevation-only shade construction for tori: construct, render, compare, score"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonOpts {
    /// Output directory (default: $SKIA_OUT_DIR or ./out)
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Flat key = value config file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// SVG user units per inch
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the construction for one torus; write the trace JSON and
    /// optionally the labeled plate
    Construct {
        /// Outline width in inches
        #[arg(long)]
        width: Option<f64>,
        /// Outline height in inches
        #[arg(long)]
        height: Option<f64>,
        /// Interpretation variant id, or "canonical"
        #[arg(long)]
        variant: Option<String>,
        /// Shade-path sample count
        #[arg(long)]
        samples: Option<usize>,
        /// Also write the labeled construction plate
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Render a grid of shade casts over dimension ranges
    Matrix {
        /// Preset grid: fig4 (24 cells), fig5 (30), or full (54)
        #[arg(long)]
        preset: Option<String>,
        /// Width range as from:to inclusive, e.g. 20:12
        #[arg(long)]
        widths: Option<String>,
        /// Height range as from:to inclusive, e.g. 6:1
        #[arg(long)]
        heights: Option<String>,
        /// Also write one trace JSON per constructible cell
        #[arg(long)]
        traces: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Measure construction paths against the analytic oracle
    Compare {
        #[arg(long)]
        width: Option<f64>,
        #[arg(long)]
        height: Option<f64>,
        /// Preset config grid: fig4, fig5, or full
        #[arg(long)]
        preset: Option<String>,
        /// "canonical", "all", or comma-separated variant ids
        #[arg(long)]
        variants: Option<String>,
        /// Comma-separated reference kinds (default: all three)
        #[arg(long)]
        references: Option<String>,
        /// Oracle raster resolution (pixels on the long side)
        #[arg(long)]
        resolution: Option<usize>,
        /// Also write one overlay plate per config
        #[arg(long)]
        overlays: bool,
        /// Also write the variant calibration ranking
        #[arg(long)]
        calibrate: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Score method profiles on the 1-5 complexity rubric
    Score {
        /// Profiles CSV (default: the shipped table)
        #[arg(long)]
        profiles: Option<PathBuf>,
    },
}

/// Errors sorted by exit code.
enum AppError {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::User(_) => 2,
            AppError::Internal(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::User(e) | AppError::Internal(e) => format!("{e:#}"),
        }
    }
}

fn user<E: Into<anyhow::Error>>(e: E) -> AppError {
    AppError::User(e.into())
}

fn internal<E: Into<anyhow::Error>>(e: E) -> AppError {
    AppError::Internal(e.into())
}

fn classify_construction(e: ConstructionError) -> AppError {
    match e {
        ConstructionError::NonPositiveDimension { .. }
        | ConstructionError::SpindleNotSupported { .. } => user(e),
        ConstructionError::InternalInconsistency { .. } | ConstructionError::Planar(_) => {
            internal(e)
        }
    }
}

fn classify_compare(e: CompareError) -> AppError {
    match e {
        CompareError::EmptyInput(_) => user(e),
        CompareError::Construction(c) => classify_construction(c),
        other => internal(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct {
            width,
            height,
            variant,
            samples,
            svg,
            common,
        } => cmd_construct(width, height, variant, samples, svg, common),
        Command::Matrix {
            preset,
            widths,
            heights,
            traces,
            common,
        } => cmd_matrix(preset, widths, heights, traces, common),
        Command::Compare {
            width,
            height,
            preset,
            variants,
            references,
            resolution,
            overlays,
            calibrate,
            common,
        } => cmd_compare(
            width, height, preset, variants, references, resolution, overlays, calibrate, common,
        ),
        Command::Score { profiles } => cmd_score(profiles),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

/// A resolved setting set: every value as a string, for the metadata echo.
struct Resolved {
    values: BTreeMap<String, String>,
    file: BTreeMap<String, String>,
}

impl Resolved {
    fn load(common: &CommonOpts) -> Result<Resolved, AppError> {
        let file = match &common.config {
            Some(path) => parse_config_file(path).map_err(user)?,
            None => BTreeMap::new(),
        };
        Ok(Resolved {
            values: BTreeMap::new(),
            file,
        })
    }

    /// flag > config file > default; records the winner.
    fn pick<T: ToString>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: Option<T>,
    ) -> Option<String> {
        let value = flag
            .map(|v| v.to_string())
            .or_else(|| self.file.get(key).cloned())
            .or_else(|| default.map(|v| v.to_string()));
        if let Some(v) = &value {
            self.values.insert(key.to_string(), v.clone());
        }
        value
    }

    fn pick_f64(&mut self, key: &str, flag: Option<f64>, default: Option<f64>) -> Result<Option<f64>, AppError> {
        match self.pick(key, flag, default) {
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| user(anyhow!("bad numeric value for {key}: {s:?}"))),
            None => Ok(None),
        }
    }

    fn pick_usize(
        &mut self,
        key: &str,
        flag: Option<usize>,
        default: usize,
    ) -> Result<usize, AppError> {
        let s = self.pick(key, flag, Some(default)).unwrap();
        s.parse()
            .map_err(|_| user(anyhow!("bad integer value for {key}: {s:?}")))
    }

    fn metadata_line(&self, subcommand: &str) -> String {
        let mut parts = vec![format!("subcommand={subcommand}")];
        for (k, v) in &self.values {
            parts.push(format!("{k}={v}"));
        }
        parts.join(" ")
    }

    fn meta_json(&self, subcommand: &str, outputs: &[String]) -> String {
        let mut s = String::from("{\n  \"schema_version\": 1,\n");
        s.push_str(&format!("  \"subcommand\": \"{subcommand}\",\n"));
        s.push_str("  \"resolved\": {\n");
        for (idx, (k, v)) in self.values.iter().enumerate() {
            s.push_str(&format!(
                "    \"{}\": \"{}\"{}\n",
                torus_shade::textfmt::json_escape(k),
                torus_shade::textfmt::json_escape(v),
                if idx + 1 < self.values.len() { "," } else { "" }
            ));
        }
        s.push_str("  },\n  \"outputs\": [\n");
        let mut sorted: Vec<&String> = outputs.iter().collect();
        sorted.sort();
        for (idx, o) in sorted.iter().enumerate() {
            s.push_str(&format!(
                "    \"{}\"{}\n",
                torus_shade::textfmt::json_escape(o),
                if idx + 1 < sorted.len() { "," } else { "" }
            ));
        }
        s.push_str("  ]\n}\n");
        s
    }
}

/// Flat `key = value` lines, `#` comments, optional quotes around values.
fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key = value", lineno + 1))?;
        let value = value.trim().trim_matches('"').trim_matches('\'');
        out.insert(key.trim().to_string(), value.to_string());
    }
    Ok(out)
}

fn out_dir(resolved: &mut Resolved, common: &CommonOpts) -> PathBuf {
    let env_default = std::env::var("SKIA_OUT_DIR").ok().unwrap_or_else(|| "out".to_string());
    let dir = resolved
        .pick(
            "out_dir",
            common.out_dir.as_ref().map(|p| p.display().to_string()),
            Some(env_default),
        )
        .unwrap();
    PathBuf::from(dir)
}

fn write_output(
    dir: &Path,
    name: &str,
    bytes: &[u8],
    outputs: &mut Vec<String>,
) -> Result<(), AppError> {
    let target = dir.join(name);
    if let Some(parent) = target.parent() {
        std::fs::create_dir_all(parent).map_err(internal)?;
    }
    std::fs::write(&target, bytes)
        .with_context(|| format!("writing {}", target.display()))
        .map_err(internal)?;
    outputs.push(name.to_string());
    Ok(())
}

fn parse_variant(s: &str) -> Result<InterpretationVariant, AppError> {
    if s == "canonical" {
        return Ok(InterpretationVariant::canonical());
    }
    InterpretationVariant::parse(s)
        .ok_or_else(|| user(anyhow!("unknown variant {s:?}; use \"canonical\" or an id like \"vertical_chord+orthogonal_foot+forward_ray\"")))
}

fn parse_range(text: &str, what: &str) -> Result<Vec<f64>, AppError> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| user(anyhow!("{what} range must look like from:to, got {text:?}")))?;
    let a: f64 = a
        .trim()
        .parse()
        .map_err(|_| user(anyhow!("bad {what} range start {a:?}")))?;
    let b: f64 = b
        .trim()
        .parse()
        .map_err(|_| user(anyhow!("bad {what} range end {b:?}")))?;
    let mut out = Vec::new();
    let step = if a >= b { -1.0 } else { 1.0 };
    let mut v = a;
    loop {
        out.push(v);
        if (v - b).abs() < 1e-9 {
            break;
        }
        v += step;
        if step > 0.0 && v > b + 1e-9 || step < 0.0 && v < b - 1e-9 {
            break;
        }
    }
    if out.is_empty() {
        return Err(user(anyhow!("empty {what} range {text:?}")));
    }
    Ok(out)
}

fn cmd_construct(
    width: Option<f64>,
    height: Option<f64>,
    variant: Option<String>,
    samples: Option<usize>,
    svg: bool,
    common: CommonOpts,
) -> Result<(), AppError> {
    let mut resolved = Resolved::load(&common)?;
    let dir = out_dir(&mut resolved, &common);
    let width = resolved
        .pick_f64("width", width, None)?
        .ok_or_else(|| user(anyhow!("--width is required (flag or config file)")))?;
    let height = resolved
        .pick_f64("height", height, None)?
        .ok_or_else(|| user(anyhow!("--height is required (flag or config file)")))?;
    let variant = parse_variant(
        &resolved
            .pick("variant", variant, Some("canonical".to_string()))
            .unwrap(),
    )?;
    let samples = resolved.pick_usize("samples", samples, 2048)?;
    let scale = resolved.pick_f64("scale", common.scale, Some(96.0))?.unwrap();
    resolved.pick("svg", Some(svg), None);

    let spec = TorusElevationSpec::new(width, height).map_err(classify_construction)?;
    let trace = run_construction(spec, variant).map_err(classify_construction)?;
    let path = trace_shade_path(&trace, samples);
    let id = spec.config_id();

    let mut outputs = Vec::new();
    write_output(
        &dir,
        &format!("trace_{id}.json"),
        trace_to_json(&trace, &path).as_bytes(),
        &mut outputs,
    )?;
    if svg {
        let style = PlateStyle {
            scale,
            metadata: Some(resolved.metadata_line("construct")),
            ..PlateStyle::default()
        };
        write_output(
            &dir,
            &format!("plate_construction_{id}.svg"),
            plate_construction(&trace, &path, &style).as_bytes(),
            &mut outputs,
        )?;
    }
    write_output(
        &dir,
        "run_meta.json",
        resolved.meta_json("construct", &outputs).as_bytes(),
        &mut outputs,
    )?;

    let tolerance = 1e-9 * spec.extent();
    let mut max_residual: f64 = 0.0;
    println!("construction {id} variant {}", trace.variant.id());
    for assertion in validate_trace(&trace) {
        max_residual = max_residual.max(assertion.residual);
        println!(
            "  {:<22} {}",
            assertion.id,
            torus_shade::textfmt::sci(assertion.residual)
        );
    }
    println!(
        "max residual {} (tolerance {})",
        torus_shade::textfmt::sci(max_residual),
        torus_shade::textfmt::sci(tolerance)
    );
    for o in &outputs {
        println!("wrote {}", dir.join(o).display());
    }
    if max_residual > tolerance {
        return Err(internal(anyhow!(
            "assertion residual {max_residual} exceeds tolerance {tolerance}"
        )));
    }
    Ok(())
}

fn cmd_matrix(
    preset: Option<String>,
    widths: Option<String>,
    heights: Option<String>,
    traces: bool,
    common: CommonOpts,
) -> Result<(), AppError> {
    let mut resolved = Resolved::load(&common)?;
    let dir = out_dir(&mut resolved, &common);
    let preset = resolved.pick("preset", preset, None);
    let widths_s = resolved.pick("widths", widths, None);
    let heights_s = resolved.pick("heights", heights, None);
    let scale = resolved.pick_f64("scale", common.scale, Some(96.0))?.unwrap();
    resolved.pick("traces", Some(traces), None);

    let (id, widths, heights) = match (&preset, &widths_s, &heights_s) {
        (Some(name), _, _) => {
            let (w, h) = presets::by_name(name)
                .ok_or_else(|| user(anyhow!("unknown preset {name:?}; use fig4, fig5, or full")))?;
            (name.clone(), w, h)
        }
        (None, Some(w), Some(h)) => {
            let widths = parse_range(w, "width")?;
            let heights = parse_range(h, "height")?;
            let id = format!(
                "{}-{}x{}-{}",
                widths.first().unwrap(),
                widths.last().unwrap(),
                heights.first().unwrap(),
                heights.last().unwrap()
            );
            (id, widths, heights)
        }
        _ => {
            return Err(user(anyhow!(
                "either --preset or both --widths and --heights are required"
            )))
        }
    };

    let style = PlateStyle {
        scale,
        metadata: Some(resolved.metadata_line("matrix")),
        ..PlateStyle::default()
    };
    let (svg, manifest) = plate_matrix(&widths, &heights, &style);
    let mut outputs = Vec::new();
    write_output(
        &dir,
        &format!("plate_matrix_{id}.svg"),
        svg.as_bytes(),
        &mut outputs,
    )?;
    write_output(
        &dir,
        &format!("matrix_manifest_{id}.json"),
        manifest.to_json().as_bytes(),
        &mut outputs,
    )?;

    if traces {
        for cell in &manifest.cells {
            if cell.status != CellStatus::Ok {
                continue;
            }
            let spec = TorusElevationSpec::new(cell.width, cell.height)
                .map_err(classify_construction)?;
            let trace = run_construction(spec, InterpretationVariant::canonical())
                .map_err(classify_construction)?;
            let path = trace_shade_path(&trace, 2048);
            write_output(
                &dir,
                &format!("traces/trace_{}.json", spec.config_id()),
                trace_to_json(&trace, &path).as_bytes(),
                &mut outputs,
            )?;
        }
    }
    write_output(
        &dir,
        "run_meta.json",
        resolved.meta_json("matrix", &outputs).as_bytes(),
        &mut outputs,
    )?;

    let skipped: Vec<&torus_shade::plates::MatrixCell> = manifest
        .cells
        .iter()
        .filter(|c| c.status != CellStatus::Ok)
        .collect();
    println!(
        "matrix {id}: {} cells, {} ok, {} skipped",
        manifest.cells.len(),
        manifest.ok_count(),
        skipped.len()
    );
    for cell in skipped {
        if let CellStatus::Skipped(reason) = &cell.status {
            println!("  skipped {}x{}: {}", cell.width, cell.height, reason);
        }
    }
    for o in &outputs {
        println!("wrote {}", dir.join(o).display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    width: Option<f64>,
    height: Option<f64>,
    preset: Option<String>,
    variants: Option<String>,
    references: Option<String>,
    resolution: Option<usize>,
    overlays: bool,
    calibrate: bool,
    common: CommonOpts,
) -> Result<(), AppError> {
    let mut resolved = Resolved::load(&common)?;
    let dir = out_dir(&mut resolved, &common);
    let preset = resolved.pick("preset", preset, None);
    let width = resolved.pick_f64("width", width, None)?;
    let height = resolved.pick_f64("height", height, None)?;
    let variants_s = resolved
        .pick("variants", variants, Some("canonical".to_string()))
        .unwrap();
    let references_s = resolved.pick("references", references, Some("all".to_string())).unwrap();
    let resolution = resolved.pick_usize("resolution", resolution, DEFAULT_RESOLUTION)?;
    let scale = resolved.pick_f64("scale", common.scale, Some(96.0))?.unwrap();
    resolved.pick("overlays", Some(overlays), None);
    resolved.pick("calibrate", Some(calibrate), None);

    let (id, configs) = match (&preset, width, height) {
        (Some(name), _, _) => {
            let (ws, hs) = presets::by_name(name)
                .ok_or_else(|| user(anyhow!("unknown preset {name:?}; use fig4, fig5, or full")))?;
            let mut configs = Vec::new();
            for &h in &hs {
                for &w in &ws {
                    if let Ok(spec) = TorusElevationSpec::new(w, h) {
                        configs.push(spec);
                    }
                }
            }
            (name.clone(), configs)
        }
        (None, Some(w), Some(h)) => {
            let spec = TorusElevationSpec::new(w, h).map_err(classify_construction)?;
            (spec.config_id(), vec![spec])
        }
        _ => {
            return Err(user(anyhow!(
                "either --preset or both --width and --height are required"
            )))
        }
    };

    let variant_list: Vec<InterpretationVariant> = match variants_s.as_str() {
        "all" => InterpretationVariant::all(),
        "canonical" => vec![InterpretationVariant::canonical()],
        list => list
            .split(',')
            .map(|s| parse_variant(s.trim()))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let reference_filter: Vec<ReferenceKind> = match references_s.as_str() {
        "all" => ReferenceKind::ALL.to_vec(),
        list => list
            .split(',')
            .map(|s| {
                ReferenceKind::parse(s.trim())
                    .ok_or_else(|| user(anyhow!("unknown reference kind {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };

    let style = PlateStyle {
        scale,
        metadata: Some(resolved.metadata_line("compare")),
        ..PlateStyle::default()
    };
    let mut rows: Vec<ComparisonReport> = Vec::new();
    let mut outputs = Vec::new();
    for spec in &configs {
        let torus = Torus3::new(spec.major_radius, spec.minor_radius);
        let oracle = build_oracle_shade(&torus, resolution).map_err(|e| internal(e))?;
        for &variant in &variant_list {
            let config_rows =
                compare_config(*spec, variant, &oracle, resolution).map_err(classify_compare)?;
            rows.extend(
                config_rows
                    .into_iter()
                    .filter(|r| reference_filter.contains(&r.reference)),
            );
        }
        if overlays {
            let trace = run_construction(*spec, InterpretationVariant::canonical())
                .map_err(classify_construction)?;
            let path = trace_shade_path(&trace, 2048);
            let canonical_rows: Vec<ComparisonReport> = rows
                .iter()
                .filter(|r| {
                    r.config == spec.config_id()
                        && r.variant == InterpretationVariant::canonical().id()
                })
                .cloned()
                .collect();
            write_output(
                &dir,
                &format!("plate_overlay_{}.svg", spec.config_id()),
                plate_overlay(&trace, &path, &oracle, &canonical_rows, &style).as_bytes(),
                &mut outputs,
            )?;
        }
    }

    write_output(
        &dir,
        &format!("compare_report_{id}.csv"),
        reports_to_csv(&rows).as_bytes(),
        &mut outputs,
    )?;
    write_output(
        &dir,
        &format!("compare_report_{id}.json"),
        reports_to_json(&rows).as_bytes(),
        &mut outputs,
    )?;
    if calibrate {
        let calibration =
            calibration_from_reports(&rows, &variant_list).map_err(classify_compare)?;
        write_output(
            &dir,
            &format!("calibration_{id}.json"),
            calibration_to_json(&calibration).as_bytes(),
            &mut outputs,
        )?;
    }
    write_output(
        &dir,
        "run_meta.json",
        resolved.meta_json("compare", &outputs).as_bytes(),
        &mut outputs,
    )?;

    println!(
        "compare {id}: {} rows over {} configs x {} variants",
        rows.len(),
        configs.len(),
        variant_list.len()
    );
    for o in &outputs {
        println!("wrote {}", dir.join(o).display());
    }
    Ok(())
}

fn cmd_score(profiles: Option<PathBuf>) -> Result<(), AppError> {
    let table = match &profiles {
        Some(path) => rubric::load_method_profiles(path).map_err(user)?,
        None => rubric::builtin_profiles(),
    };

    println!(
        "{:<42} {:>5} {:>6} {:>6} {:>6} {:>9} {:>10}",
        "method", "steps", "extra", "angle", "multi", "computed", "published"
    );
    let mut mismatches = 0;
    for profile in &table {
        let computed = rubric::score(profile).value;
        let flag = match profile.published_score {
            Some(p) if p != computed => {
                mismatches += 1;
                "  MISMATCH"
            }
            _ => "",
        };
        println!(
            "{:<42} {:>5} {:>6} {:>6} {:>6} {:>9} {:>10}{}",
            profile.name,
            profile.steps,
            profile.extra_drawings,
            profile.angles,
            if profile.multiple_projection { "yes" } else { "no" },
            computed,
            profile
                .published_score
                .map(|p| p.to_string())
                .unwrap_or_else(|| "-".to_string()),
            flag
        );
    }

    // the proposed method, scored from the live step log
    let spec = TorusElevationSpec::new(6.0, 2.0).map_err(classify_construction)?;
    let trace =
        run_construction(spec, InterpretationVariant::canonical()).map_err(classify_construction)?;
    let proposed = rubric::proposed_profile(trace.steps.len());
    let computed = rubric::score(&proposed).value;
    println!(
        "{:<42} {:>5} {:>6} {:>6} {:>6} {:>9} {:>10}",
        proposed.name,
        proposed.steps,
        proposed.extra_drawings,
        proposed.angles,
        "no",
        computed,
        proposed
            .published_score
            .map(|p| p.to_string())
            .unwrap_or_else(|| "-".to_string())
    );
    if mismatches > 0 {
        println!("{mismatches} row(s) disagree with their published score");
    }
    Ok(())
}

