//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::measures::{self, GridPartition, MeasureReport};
use crate::pattern::to_text;
use crate::raster::{read_image, write_image};

use super::config::{resolve, KeyValues, SweepJob};
use super::gallery::{self, GALLERIES};
use super::presets;
use super::sweep::run_sweep;

#[derive(Debug, Parser)]
#[command(
    name = "bubbler",
    version,
    about = "Sand-bubbler patterns and symmetry measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one symmetric, optionally broken, pattern and render it.
    Generate(GenerateArgs),
    /// Compute SYM and BFL for image files and print CSV.
    Measure(MeasureArgs),
    /// Run a breaking-rate sweep and write `sigma,measure,g,mean,std` CSV.
    Sweep(SweepArgs),
    /// Render an illustration gallery (fig1, fig3, fig4).
    Gallery(GalleryArgs),
}

#[derive(Debug, Args)]
struct ConfigSource {
    /// Configuration file (`key = value` lines).
    config: Option<PathBuf>,
    /// Start from a bundled preset instead of a file.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Override a configuration key; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Shorthand for `--set isometry=NAME`.
    #[arg(long)]
    isometry: Option<String>,
}

impl ConfigSource {
    fn load(&self) -> Result<SweepJob> {
        let mut kv = match (&self.config, &self.preset) {
            (Some(path), _) => {
                KeyValues::parse(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)?
            }
            (None, Some(name)) => presets::key_values(name)?,
            (None, None) => KeyValues::default(),
        };
        for s in &self.set {
            kv.set_line(0, s)?;
        }
        if let Some(iso) = &self.isometry {
            kv.set_line(0, &format!("isometry={iso}"))?;
        }
        resolve(&kv)
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: ConfigSource,
    /// Breaking rate applied on the configured axis.
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output image (binary PPM).
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the pattern as text.
    #[arg(long)]
    pattern: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// PPM images.
    #[arg(required = true)]
    images: Vec<PathBuf>,
    /// Grid subdivisions, from 2, 4, 8.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 4])]
    grids: Vec<u32>,
    #[arg(long, default_value_t = measures::DEFAULT_ALPHA)]
    alpha: f64,
    /// Skip the Benford's-law fit.
    #[arg(long)]
    no_bfl: bool,
    /// Write CSV here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    source: ConfigSource,
    /// CSV output; defaults to the config's `output`, else stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Directory for one sample image per rate.
    #[arg(long)]
    gallery: Option<PathBuf>,
    /// Evaluate images on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct GalleryArgs {
    /// One of fig1, fig3, fig4, or a sweep preset (one image per rate).
    #[arg(long)]
    preset: String,
    #[arg(long, default_value = "gallery")]
    out: PathBuf,
    #[arg(long, default_value_t = 2018)]
    seed: u64,
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn generate(args: &GenerateArgs) -> Result<()> {
    let job = args.source.load()?;
    let pattern = job.sweep.build_pattern(args.sigma, args.seed)?;
    let img = crate::raster::render(&pattern, &job.sweep.canvas)?;
    write_image(&img, &args.output)?;
    if let Some(p) = &args.pattern {
        fs::write(p, to_text(&pattern)).map_err(|e| Error::io(p, e))?;
    }
    Ok(())
}

fn measure(args: &MeasureArgs) -> Result<()> {
    let grids = args
        .grids
        .iter()
        .map(|&g| GridPartition::new(g))
        .collect::<Result<Vec<_>>>()?;
    let mut out = MeasureReport::csv_header(&grids, !args.no_bfl);
    out.push('\n');
    for path in &args.images {
        let img = read_image(path)?;
        let report = measures::evaluate(&img, &grids, args.alpha, !args.no_bfl)?;
        out.push_str(&report.csv_row(&path.display().to_string()));
        out.push('\n');
    }
    emit(&out, args.output.as_deref())
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let job = args.source.load()?;
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let result = run_sweep(&job.sweep, exec)?;
    emit(
        &result.to_csv(),
        args.output
            .as_ref()
            .or(job.output.as_ref())
            .map(PathBuf::as_path),
    )?;
    if let Some(dir) = args.gallery.as_ref().or(job.gallery.as_ref()) {
        let prefix = args.source.preset.as_deref().unwrap_or("sweep");
        let panels = gallery::sweep_samples(&job.sweep)?;
        gallery::write_panels(&panels, prefix, dir)?;
    }
    Ok(())
}

fn run_gallery(args: &GalleryArgs) -> Result<()> {
    let name = args.preset.to_ascii_lowercase();
    let panels = if GALLERIES.contains(&name.as_str()) {
        gallery::gallery(&name, args.seed)?
    } else {
        gallery::sweep_samples(&presets::load(&name)?.sweep)?
    };
    for path in gallery::write_panels(&panels, &name, &args.out)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

/// Run the CLI on `argv` (including the program name) and return the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Measure(a) => measure(a),
        Command::Sweep(a) => sweep(a),
        Command::Gallery(a) => run_gallery(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
