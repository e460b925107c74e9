//! Command-line front end: config files in, CSV snapshots, a JSON report and
//! a digest manifest out.
//!
//! Output layout for a run of scenario `s` into `dir`:
//! - `dir/s_<pipeline>_NNN.csv`: one file per recorded frame
//! - `dir/report.json`: the [`ComparisonReport`]
//! - `dir/manifest.json`: config echo, version and SHA-256 of every file above,
//!   written last

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use config::{parse_config, parse_config_str, to_config_text, ConfigError};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::scenarios::{run_scenario, ComparisonReport, Movie, ScenarioConfig, ScenarioKind};

pub const REPORT_FILE: &str = "report.json";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Provenance record written after all other outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub artifact: String,
    pub version: String,
    pub scenario: String,
    pub config: ScenarioConfig,
    pub files: Vec<FileDigest>,
}

/// Result of [`run`].
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub report: ComparisonReport,
    pub manifest: RunManifest,
}

impl RunSummary {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text of one frame: a `# t=` line, a column header, one row per node.
pub fn frame_csv(movie: &Movie, frame: usize) -> String {
    let f = &movie.frames[frame];
    let nc = movie.components;
    let mut out = format!("# t={}\nx,density", sci(f.time));
    for c in 1..=nc {
        out.push_str(&format!(",re_c{c},im_c{c}"));
    }
    out.push('\n');
    for (j, x) in f.x.iter().enumerate() {
        let v = &f.values[j * nc..(j + 1) * nc];
        let rho: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        out.push_str(&sci(*x));
        out.push(',');
        out.push_str(&sci(rho));
        for z in v {
            out.push(',');
            out.push_str(&sci(z.re));
            out.push(',');
            out.push_str(&sci(z.im));
        }
        out.push('\n');
    }
    out
}

/// A frame read back from CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvFrame {
    pub time: f64,
    pub x: Vec<f64>,
    pub density: Vec<f64>,
    pub components: usize,
    pub values: Vec<C64>,
}

/// Parses text written by [`frame_csv`].
pub fn parse_frame_csv(text: &str) -> Result<CsvFrame> {
    let bad = |what: &str| Error::PreconditionViolated(format!("malformed snapshot CSV: {what}"));
    let mut lines = text.lines();
    let time = lines
        .next()
        .and_then(|l| l.strip_prefix("# t="))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad("missing `# t=` line"))?;
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let cols = header.split(',').count();
    if cols < 4 || cols % 2 != 0 || !header.starts_with("x,density") {
        return Err(bad("unexpected header"));
    }
    let components = (cols - 2) / 2;
    let mut frame = CsvFrame {
        time,
        x: Vec::new(),
        density: Vec::new(),
        components,
        values: Vec::new(),
    };
    for line in lines {
        let nums = line
            .split(',')
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("non-numeric cell"))?;
        if nums.len() != cols {
            return Err(bad("row length"));
        }
        frame.x.push(nums[0]);
        frame.density.push(nums[1]);
        frame
            .values
            .extend(nums[2..].chunks(2).map(|p| C64::new(p[0], p[1])));
    }
    Ok(frame)
}

fn digest(name: &str, bytes: &[u8]) -> FileDigest {
    let hash = Sha256::digest(bytes);
    FileDigest {
        name: name.to_string(),
        bytes: bytes.len() as u64,
        sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
    }
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> Result<FileDigest> {
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    Ok(digest(name, bytes))
}

/// Writes every frame of every movie; returns the digests in write order.
pub fn emit_snapshots(scenario: &str, movies: &[Movie], dir: &Path) -> Result<Vec<FileDigest>> {
    let mut out = Vec::new();
    for movie in movies {
        for k in 0..movie.frames.len() {
            let name = format!("{scenario}_{}_{k:03}.csv", movie.label);
            out.push(write(dir, &name, frame_csv(movie, k).as_bytes())?);
        }
    }
    Ok(out)
}

pub fn report_json(report: &ComparisonReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit_report(report: &ComparisonReport, dir: &Path) -> Result<FileDigest> {
    write(dir, REPORT_FILE, report_json(report).as_bytes())
}

/// Runs the configured scenario and writes all outputs into `dir`.
pub fn run(cfg: &ScenarioConfig, dir: &Path) -> Result<RunSummary> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let output = run_scenario(cfg)?;
    let scenario = cfg.scenario.name();
    let mut files = emit_snapshots(scenario, &output.movies, dir)?;
    files.push(emit_report(&output.report, dir)?);
    let manifest = RunManifest {
        artifact: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: scenario.to_string(),
        config: cfg.clone(),
        files,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write(dir, MANIFEST_FILE, text.as_bytes())?;
    Ok(RunSummary {
        report: output.report,
        manifest,
    })
}

/// Re-hashes the files listed in a manifest and reports the first mismatch.
pub fn verify_manifest(dir: &Path) -> Result<RunManifest> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let manifest: RunManifest = serde_json::from_str(&text)
        .map_err(|e| Error::PreconditionViolated(format!("manifest: {e}")))?;
    for f in &manifest.files {
        let p = dir.join(&f.name);
        let bytes = fs::read(&p).map_err(|e| Error::io(&p, e))?;
        if digest(&f.name, &bytes) != *f {
            return Err(Error::PreconditionViolated(format!("digest mismatch for {}", f.name)));
        }
    }
    Ok(manifest)
}

#[derive(Debug, Parser)]
#[command(name = "dirac-encode", version, about = "Run potential-encoding scenarios and emit snapshot data")]
pub struct Args {
    /// Scenario config file (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Scenario name; overrides the one in the config file.
    #[arg(long)]
    pub scenario: Option<ScenarioKind>,
    /// Print the available scenarios and exit.
    #[arg(long)]
    pub list_scenarios: bool,
    /// Evaluate the acceptance checks only; write nothing.
    #[arg(long)]
    pub check: bool,
}

fn load(args: &Args) -> Result<ScenarioConfig> {
    match (&args.config, args.scenario) {
        (Some(path), over) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_config_str(&text, over)
        }
        (None, Some(kind)) => parse_config_str("", Some(kind)),
        (None, None) => Err(ConfigError::MissingKey("scenario".into()).into()),
    }
}

fn print_checks(report: &ComparisonReport) {
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {}: {:e} ({:?} {:e})", c.name, c.value, c.relation, c.limit);
    }
}

/// Exit status: 0 when every check passes, 2 when one fails, 1 on error.
pub fn execute(args: &Args) -> ExitCode {
    if args.list_scenarios {
        for kind in ScenarioKind::ALL {
            println!("{:<16} {}", kind.name(), kind.description());
        }
        return ExitCode::SUCCESS;
    }
    let result = load(args).and_then(|cfg| {
        if args.check {
            run_scenario(&cfg).map(|o| o.report)
        } else {
            run(&cfg, &args.out).map(|s| s.report)
        }
    });
    match result {
        Ok(report) => {
            print_checks(&report);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::Frame;

    fn movie(nc: usize) -> Movie {
        Movie {
            label: "a".into(),
            components: nc,
            frames: vec![Frame {
                time: 0.1,
                x: vec![-1.0, 0.0, 1.0 / 3.0],
                values: (0..3 * nc)
                    .map(|i| C64::new(i as f64 / 7.0, -(i as f64).sqrt()))
                    .collect(),
            }],
        }
    }

    #[test]
    fn csv_round_trips_exactly() {
        for nc in [2, 4] {
            let m = movie(nc);
            let text = frame_csv(&m, 0);
            assert!(text.starts_with("# t="));
            let back = parse_frame_csv(&text).unwrap();
            assert_eq!(back.components, nc);
            assert_eq!(back.time, 0.1);
            assert_eq!(back.x, m.frames[0].x);
            assert_eq!(back.values, m.frames[0].values);
        }
    }

    #[test]
    fn two_body_rows_have_eight_value_columns() {
        let text = frame_csv(&movie(4), 0);
        let header = text.lines().nth(1).unwrap();
        assert_eq!(header, "x,density,re_c1,im_c1,re_c2,im_c2,re_c3,im_c3,re_c4,im_c4");
    }

    #[test]
    fn digest_is_sha256_hex() {
        let d = digest("f", b"abc");
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(d.bytes, 3);
    }
}
