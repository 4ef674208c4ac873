//! `pairkit` command-line tool.

mod error;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pairkit::diophantine::{brute_force, solve_cantor_dioph, solve_triangular_dioph, uniqueness_scan, DiophResult, Equation};
use pairkit::fitter::{fit_and_validate, Reference, Window};
use pairkit::inverses::{invert_builtin, invert_p3d, invert_pkd};
use pairkit::mappings::{eval_p3d, eval_pkd};
use pairkit::oracle::verify_mapping;
use pairkit::{
    builtin, enumerate, fit3d, invert, verify_bijection, Int, LatticePoint2, LatticePoint3, LatticePointK, MapId, Nat,
    PiecewiseMapping, Rational, SamplePoint, SamplePoint3,
};
use serde_json::json;

use crate::error::CliError;
use crate::render::GridSpec;

const DEFAULT_MAX_GRID: u128 = 10_000;

#[derive(Parser)]
#[command(name = "pairkit", version, about = "Exact pairing polynomials on integer lattices")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a mapping at a point.
    Eval {
        #[command(flatten)]
        map: MapArgs,
        /// Coordinates, "x,y" or "x,y,z" or k values for pkd.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Point with a given value.
    Invert {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_hyphen_values = true)]
        z: Int,
    },
    /// Fit a quadratic (6 rows) or cubic (20 rows) through sample points.
    Fit {
        /// CSV with rows x,y,value (or x,y,z,value); a header line is optional.
        #[arg(long)]
        points: PathBuf,
        /// Mapping to validate against; defaults to the samples themselves.
        #[arg(long)]
        reference: Option<String>,
        /// Validation box "x0:x1,y0:y1"; defaults to the sample box grown by 3.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Write the full report here as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a mapping with its enumeration oracle.
    Verify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        /// Test hook: "region,coefficient,delta" added to one form coefficient.
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
    /// First points of a mapping in value order, as CSV.
    Enumerate {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// CSV file to write; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of values.
    Render {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4")]
        xrange: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4")]
        yrange: String,
        /// Minimum cell width.
        #[arg(long)]
        width: Option<usize>,
        /// Show raw region values at out-of-domain points in brackets.
        #[arg(long)]
        brackets: bool,
        /// Region whose form fills the brackets.
        #[arg(long, default_value_t = 0)]
        region: usize,
    },
    /// Solutions of a pairing Diophantine equation.
    Dioph {
        /// Value on the left-hand side.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<Int>,
        #[arg(long, default_value = "cantor")]
        equation: String,
        /// Scan all a, b up to this bound for collisions instead.
        #[arg(long)]
        scan: Option<Int>,
    },
    /// Time evaluation and inversion of a mapping.
    Bench {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
    },
    /// Regions, forms and domain of a mapping, as JSON.
    Describe {
        #[command(flatten)]
        map: MapArgs,
    },
}

#[derive(Args)]
struct MapArgs {
    /// Built-in mapping, e.g. cantor1, saw(5), pkd(4).
    #[arg(long)]
    map: Option<String>,
    /// Dimension for pkd.
    #[arg(long)]
    k: Option<Int>,
    /// Mapping JSON as written by `describe`.
    #[arg(long)]
    map_file: Option<PathBuf>,
}

enum Target {
    Planar(Box<PiecewiseMapping>),
    P3d,
    Pkd(usize),
}

impl MapArgs {
    fn id(&self) -> Result<Option<MapId>, CliError> {
        let Some(name) = &self.map else { return Ok(None) };
        let id = match self.k {
            Some(k) if !name.contains('(') => MapId::from_parts(name.trim(), Some(k))?,
            _ => name.parse::<MapId>()?,
        };
        Ok(Some(id))
    }

    fn require_id(&self) -> Result<MapId, CliError> {
        self.id()?.ok_or_else(|| CliError::Usage("--map is required".into()))
    }

    fn target(&self) -> Result<Target, CliError> {
        if let Some(path) = &self.map_file {
            return Ok(Target::Planar(Box::new(PiecewiseMapping::from_json(&fs::read_to_string(path)?)?)));
        }
        Ok(match self.require_id()? {
            MapId::P3d => Target::P3d,
            MapId::Pkd(k) => Target::Pkd(usize::try_from(k).map_err(|_| CliError::Usage(format!("bad dimension {k}")))?),
            id => Target::Planar(Box::new(builtin(&id)?)),
        })
    }

    fn planar(&self) -> Result<PiecewiseMapping, CliError> {
        match self.target()? {
            Target::Planar(m) => Ok(*m),
            _ => Err(CliError::Usage("this command needs a planar mapping".into())),
        }
    }
}

fn parse_coords(s: &str) -> Result<Vec<Int>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<Int>().map_err(|_| CliError::Usage(format!("bad coordinate {t:?} in {s:?}"))))
        .collect()
}

fn parse_range(s: &str) -> Result<(Int, Int), CliError> {
    let bad = || CliError::Usage(format!("bad range {s:?}, expected a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: Int = a.trim().parse().map_err(|_| bad())?;
    let b: Int = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let (xs, ys) = s.split_once(',').ok_or_else(|| CliError::Usage(format!("bad window {s:?}, expected x0:x1,y0:y1")))?;
    let (x0, x1) = parse_range(xs)?;
    let (y0, y1) = parse_range(ys)?;
    Ok(Window::new(x0, x1, y0, y1))
}

fn max_grid() -> Result<u128, CliError> {
    match std::env::var("PAIRKIT_MAX_GRID") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("PAIRKIT_MAX_GRID={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_GRID),
    }
}

/// Integers without the "/1".
fn show(r: &Rational) -> String {
    r.to_int().map_or_else(|| r.to_string(), |v| v.to_string())
}

fn point_text(c: &[Int]) -> String {
    c.iter().map(Int::to_string).collect::<Vec<_>>().join(",")
}

/// The samples as their own reference: exact on the sample points, silent elsewhere.
struct SampleTable(Vec<SamplePoint>);

impl Reference for SampleTable {
    fn value_at(&self, p: LatticePoint2) -> Option<Int> {
        self.0.iter().find(|s| s.point() == p).map(|s| s.value)
    }

    fn label(&self) -> String {
        "samples".into()
    }
}

fn read_rows(path: &Path) -> Result<Vec<Vec<Int>>, CliError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).flexible(true).from_path(path)?;
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let parsed: Result<Vec<Int>, _> = rec.iter().map(str::parse::<Int>).collect();
        match parsed {
            Ok(r) => rows.push(r),
            // A non-numeric first line is a header.
            Err(_) if i == 0 => continue,
            Err(_) => return Err(CliError::Usage(format!("{}: line {} is not numeric", path.display(), i + 1))),
        }
    }
    Ok(rows)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let as_json = cli.json;
    match cli.command {
        Command::Eval { map, point } => {
            let coords = parse_coords(&point)?;
            let value = match map.target()? {
                Target::Planar(m) => match coords[..] {
                    [x, y] => m.eval(LatticePoint2::new(x, y))?,
                    _ => return Err(CliError::Usage(format!("{} takes a point x,y", m.name))),
                },
                Target::P3d => match coords[..] {
                    [x, y, z] => eval_p3d(LatticePoint3::new(x, y, z))?,
                    _ => return Err(CliError::Usage("p3d takes a point x,y,z".into())),
                },
                Target::Pkd(k) => {
                    if coords.len() != k {
                        return Err(CliError::Usage(format!("pkd({k}) takes {k} coordinates")));
                    }
                    eval_pkd(&LatticePointK::new(coords.clone()))?
                }
            };
            if as_json {
                writeln!(out, "{}", json!({ "point": coords, "value": value }))?;
            } else {
                writeln!(out, "{value}")?;
            }
        }
        Command::Invert { map, z } => {
            let coords: Vec<Int> = match map.target()? {
                Target::Planar(m) => {
                    let q = match m.builtin {
                        Some(id) => invert_builtin(id, z)?,
                        None => invert(&m, z)?,
                    };
                    vec![q.x, q.y]
                }
                Target::P3d => {
                    let q = invert_p3d(z)?;
                    vec![q.x, q.y, q.z]
                }
                Target::Pkd(k) => invert_pkd(k, z)?.coords().to_vec(),
            };
            if as_json {
                writeln!(out, "{}", json!({ "value": z, "point": coords }))?;
            } else {
                writeln!(out, "{}", point_text(&coords))?;
            }
        }
        Command::Fit { points, reference, window, out: out_path } => fit_command(&points, reference, window, out_path, as_json, out)?,
        Command::Verify { map, count, perturb } => {
            let report = match (map.id()?, map.map_file.is_some() || perturb.is_some()) {
                (Some(id), false) => verify_bijection(id, count)?,
                (id, _) => {
                    let id = id.or_else(|| map.planar().ok().and_then(|m| m.builtin)).ok_or_else(|| {
                        CliError::Usage("verify needs --map to choose the enumeration oracle".into())
                    })?;
                    let mut m = match &map.map_file {
                        Some(_) => map.planar()?,
                        None => builtin(&id)?,
                    };
                    if let Some(spec) = perturb {
                        m = perturbed(&m, &spec)?;
                    }
                    verify_mapping(&m, &enumerate(id, count)?)
                }
            };
            if as_json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else if report.passed {
                writeln!(out, "PASS {} ({} points)", report.map, report.checked)?;
            } else {
                writeln!(out, "FAIL {}", report.map)?;
            }
            if !report.passed {
                let d = report.first_divergence.as_ref().map(|d| format!("{d:?}")).unwrap_or_default();
                return Err(CliError::VerifyFailed(format!("{} diverges from its oracle: {d}", report.map)));
            }
        }
        Command::Enumerate { map, count, out: out_path } => {
            let trace = enumerate(map.require_id()?, count)?;
            match out_path {
                Some(p) => trace.write_csv(fs::File::create(p)?)?,
                None => trace.write_csv(&mut *out)?,
            }
        }
        Command::Render { map, xrange, yrange, width, brackets, region } => {
            let m = map.planar()?;
            let spec = GridSpec {
                x: parse_range(&xrange)?,
                y: parse_range(&yrange)?,
                brackets: brackets.then_some(region),
                width,
            };
            if brackets {
                m.region(region)?;
            }
            let limit = max_grid()?;
            if spec.cells() > limit {
                return Err(CliError::Oversize { cells: spec.cells(), limit });
            }
            write!(out, "{}", render::render(&m, &spec))?;
        }
        Command::Dioph { z, equation, scan } => {
            let eq: Equation = equation.parse().map_err(|e: pairkit::diophantine::UnknownEquation| CliError::Usage(e.to_string()))?;
            if let Some(bound) = scan {
                let report = uniqueness_scan(eq, Nat::new(bound).map_err(|e| CliError::Usage(e.to_string()))?);
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
                return Ok(());
            }
            let z = z.ok_or_else(|| CliError::Usage("--z or --scan is required".into()))?;
            let nat = Nat::new(z).map_err(|e| CliError::Domain(e.to_string()))?;
            let result = match eq {
                Equation::Cantor => solve_cantor_dioph(nat),
                Equation::Triangular => solve_triangular_dioph(nat),
                Equation::Degraded => {
                    let solutions = brute_force(eq, z);
                    let explanation = vec![
                        format!("{} with c = {z}", eq.text()),
                        format!("{} solutions by direct search over a", solutions.len()),
                    ];
                    DiophResult { equation: eq, query: z, solutions, explanation }
                }
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
        }
        Command::Bench { map, count } => bench(&map, count, as_json, out)?,
        Command::Describe { map } => {
            let m = map.planar()?;
            writeln!(out, "{}", m.to_json())?;
        }
    }
    Ok(())
}

fn fit_command(
    points: &Path,
    reference: Option<String>,
    window: Option<String>,
    out_path: Option<PathBuf>,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let rows = read_rows(points)?;
    if rows.len() == 20 && rows.iter().all(|r| r.len() == 4) {
        let samples: Vec<SamplePoint3> = rows.iter().map(|r| SamplePoint3::new(r[0], r[1], r[2], r[3])).collect();
        let form = fit3d(&samples)?;
        let text = serde_json::to_string_pretty(&json!({ "form": form, "samples": samples }))?;
        if let Some(p) = out_path {
            fs::write(p, &text)?;
        }
        if as_json {
            writeln!(out, "{text}")?;
        } else {
            writeln!(out, "FITTED {}", form.coeffs().iter().map(show).collect::<Vec<_>>().join(" "))?;
        }
        return Ok(());
    }
    if rows.iter().any(|r| r.len() != 3) {
        return Err(CliError::Usage("rows must be x,y,value (6 rows) or x,y,z,value (20 rows)".into()));
    }
    let samples: Vec<SamplePoint> = rows.iter().map(|r| SamplePoint::new(r[0], r[1], r[2])).collect();
    let window = window.as_deref().map(parse_window).transpose()?;
    let report = match reference {
        Some(name) => {
            let m = builtin(&name.parse::<MapId>()?)?;
            fit_and_validate(&samples, &m, window)?
        }
        None => fit_and_validate(&samples, &SampleTable(samples.clone()), window)?,
    };
    let text = serde_json::to_string_pretty(&report)?;
    if let Some(p) = out_path {
        fs::write(p, &text)?;
    }
    let verdict = match &report.validation {
        pairkit::fitter::Validation::Valid { .. } => "VALID",
        pairkit::fitter::Validation::Invalid { .. } => "INVALID",
        pairkit::fitter::Validation::Singular { .. } => "SINGULAR",
    };
    if as_json {
        writeln!(out, "{text}")?;
    } else {
        match &report.form {
            Some(f) => writeln!(out, "{verdict} {}", f.coeffs().iter().map(show).collect::<Vec<_>>().join(" "))?,
            None => writeln!(out, "{verdict} det {}", show(&report.determinant))?,
        }
        for m in report.validation.mismatches().iter().take(10) {
            writeln!(out, "  mismatch at {}: expected {}, got {}", m.point, m.expected, show(&m.got))?;
        }
    }
    if report.form.is_none() {
        return Err(CliError::Singular(format!("singular system (det {})", show(&report.determinant))));
    }
    Ok(())
}

/// `spec` is "region,coefficient,delta" with a rational delta.
fn perturbed(m: &PiecewiseMapping, spec: &str) -> Result<PiecewiseMapping, CliError> {
    let bad = || CliError::Usage(format!("bad perturbation {spec:?}, expected region,coefficient,delta"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [r, c, d] = parts[..] else { return Err(bad()) };
    let region: usize = r.parse().map_err(|_| bad())?;
    let coef: usize = c.parse().map_err(|_| bad())?;
    let delta: Rational = d.parse().map_err(|_| bad())?;
    if coef >= 6 {
        return Err(bad());
    }
    let mut coeffs = m.region(region)?.form.coeffs().clone();
    coeffs[coef] = &coeffs[coef] + &delta;
    Ok(m.with_region_form(region, pairkit::QuadForm::new(coeffs))?)
}

fn bench(map: &MapArgs, count: usize, as_json: bool, out: &mut impl Write) -> Result<(), CliError> {
    let m = map.planar()?;
    let id = m.builtin;
    let trace = enumerate(id.ok_or_else(|| CliError::Usage("bench needs a built-in mapping".into()))?, count)?;
    let points: Vec<LatticePoint2> = trace.points2().collect();

    let start = Instant::now();
    let mut checksum: Int = 0;
    for &q in &points {
        checksum = checksum.wrapping_add(m.eval(q)?);
    }
    let eval_ns = start.elapsed().as_nanos() as f64 / points.len().max(1) as f64;

    let start = Instant::now();
    for e in &trace.entries {
        let q = invert_builtin(trace.map_id, e.value)?;
        checksum = checksum.wrapping_add(q.x);
    }
    let invert_ns = start.elapsed().as_nanos() as f64 / points.len().max(1) as f64;

    if as_json {
        writeln!(out, "{}", json!({ "map": m.name, "count": points.len(), "eval_ns": eval_ns, "invert_ns": invert_ns, "checksum": checksum.to_string() }))?;
    } else {
        writeln!(out, "{}: {} points, eval {:.1} ns/point, invert {:.1} ns/point", m.name, points.len(), eval_ns, invert_ns)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            let _ = lock.flush();
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}
