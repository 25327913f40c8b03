//! Command-line front end. [`run`] returns the process exit code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bridge::sphere_to_hline;
use crate::census::{self, gen, io, CensusReport, SphereSet, VerifyConfig};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::line::HLine;
use crate::sphere::OrientedSphere;
use crate::structures::ConicSection;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "liesphere", version, about = "Sphere contact and Heisenberg line censuses over exact fields")]
pub struct Cli {
    /// `p:<prime>` with p ≡ 3 (mod 4), or `rational`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// JSON report (the default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Tab-separated report.
    #[arg(long, global = true)]
    tsv: bool,
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Report measured run times instead of 0.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated sphere or point set as TSV.
    Gen(GenArgs),
    /// Pencil census of a sphere file.
    Pencils { file: PathBuf },
    /// Pairs of points at distance r, or the full distance distribution.
    Distances {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        /// Accept sphere records and ignore the radius column.
        #[arg(long)]
        force_zero: bool,
    },
    /// Point-sphere incidences, counted two ways.
    Incidences {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        spheres: PathBuf,
        #[arg(long)]
        force_zero: bool,
    },
    /// Points on a red and a blue line; the lines are the images of the spheres in each file.
    Bichromatic {
        #[arg(long)]
        red: PathBuf,
        #[arg(long)]
        blue: PathBuf,
    },
    /// Complementary conic pairs with at least `threshold` members on each side.
    Conics {
        file: PathBuf,
        #[arg(long)]
        threshold: usize,
        /// Triples drawn when the set is too large for an exhaustive scan.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Incident and maximal coplanar counts of a point file on one sphere.
    Eta {
        file: PathBuf,
        /// `x,y,z,r`
        #[arg(long, allow_hyphen_values = true)]
        sphere: String,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        force_zero: bool,
    },
    /// Run the invariant suites. Defaults to `--field p:10007`.
    Verify {
        /// Fraction of the full case counts.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Random,
    RandomPoints,
    Grid,
    Pencil,
    ConicPair,
    PlanePoints,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    /// Grid side.
    #[arg(long)]
    m: Option<u32>,
    /// Random set size.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Pencil size.
    #[arg(long)]
    k: Option<usize>,
    /// Pencil direction `u,v,w,s`.
    #[arg(long, allow_hyphen_values = true)]
    dir: Option<String>,
    /// Pencil base sphere `x,y,z,r`.
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    /// Integer range of random rational coordinates.
    #[arg(long, default_value_t = 100)]
    range: i64,
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => match emit(&cli, &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn field_hint(cli: &Cli) -> Result<Option<FieldSpec>> {
    cli.field.as_deref().map(str::parse).transpose()
}

fn parse_tuple(f: FieldSpec, s: &str) -> Result<[Scalar; 4]> {
    let parts: Vec<_> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidParameter(format!("expected four comma-separated values, got {s:?}")));
    }
    let mut out = [f.zero(); 4];
    for (k, p) in parts.iter().enumerate() {
        out[k] = f.parse_scalar(p)?;
    }
    Ok(out)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn conic_json(c: &ConicSection) -> Vec<Vec<String>> {
    c.constraints().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let hint = field_hint(cli)?;
    let workers = cli.workers.max(1);
    let tsv = cli.tsv && !cli.json;
    let out = match &cli.command {
        Command::Gen(g) => gen_cmd(g, hint.unwrap_or_else(FieldSpec::rational), cli.seed)?,
        Command::Pencils { file } => {
            let set = io::read_spheres(file, hint)?;
            let mut rep = census::pencil_census(&set, workers);
            if !cli.timing {
                rep.runtime_ms = 0;
            }
            if tsv { pencil_tsv(&rep) } else { to_json(&rep) }
        }
        Command::Distances { file, r, force_zero } => {
            let pts = io::read_points(file, hint, *force_zero)?;
            match r {
                Some(r) => {
                    let r = pts.field().parse_scalar(r)?;
                    let pairs = census::repeated_distance_census(&pts, r, workers)?;
                    let via = census::repeated_distance_via_contact(&pts, r, workers)?;
                    let rep = DistanceReport {
                        n: pts.len(),
                        field: pts.field().to_string(),
                        r: r.to_string(),
                        pairs,
                        pairs_via_contact: via,
                    };
                    let text = if tsv {
                        format!("n\t{}\nfield\t{}\nr\t{}\npairs\t{}\npairs_via_contact\t{}\n", rep.n, rep.field, rep.r, pairs, via)
                    } else {
                        to_json(&rep)
                    };
                    return Ok((text, if pairs == via { EXIT_OK } else { EXIT_COUNTEREXAMPLE }));
                }
                None => {
                    let d = census::distance_distribution(&pts, workers);
                    let rep = DistributionReport {
                        n: pts.len(),
                        field: pts.field().to_string(),
                        total_pairs: d.total_pairs,
                        classes: d.classes.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                        max_nonzero_square: d.max_nonzero_square.map(|(r2, pairs)| MaxClass { r2: r2.to_string(), pairs }),
                    };
                    if tsv {
                        let mut s = format!("n\t{}\nfield\t{}\ntotal_pairs\t{}\n", rep.n, rep.field, rep.total_pairs);
                        if let Some(m) = &rep.max_nonzero_square {
                            writeln!(s, "max_nonzero_square\t{}\t{}", m.r2, m.pairs).unwrap();
                        }
                        s.push_str("squared_distance\tpairs\n");
                        for (k, v) in &d.classes {
                            writeln!(s, "{k}\t{v}").unwrap();
                        }
                        s
                    } else {
                        to_json(&rep)
                    }
                }
            }
        }
        Command::Incidences { points, spheres, force_zero } => {
            let pts = io::read_points(points, hint, *force_zero)?;
            let sph = io::read_spheres(spheres, hint.or(Some(pts.field())))?;
            let r = census::incidence_census(&pts, &sph, workers)?;
            let rep = IncidenceJson {
                points: pts.len(),
                spheres: sph.len(),
                field: pts.field().to_string(),
                direct: r.direct,
                via_contact: r.via_contact,
                agree: r.agree(),
            };
            let text = if tsv {
                format!(
                    "points\t{}\nspheres\t{}\nfield\t{}\ndirect\t{}\nvia_contact\t{}\n",
                    rep.points, rep.spheres, rep.field, rep.direct, rep.via_contact
                )
            } else {
                to_json(&rep)
            };
            return Ok((text, if r.agree() { EXIT_OK } else { EXIT_COUNTEREXAMPLE }));
        }
        Command::Bichromatic { red, blue } => {
            let r = io::read_spheres(red, hint)?;
            let b = io::read_spheres(blue, Some(r.field()))?;
            let lines = |s: &SphereSet| -> Vec<HLine> { s.spheres().iter().map(sphere_to_hline).collect() };
            let res = census::bichromatic_census(&lines(&r), &lines(&b), workers);
            let rep = BichromaticJson {
                red: r.len(),
                blue: b.len(),
                field: r.field().to_string(),
                points: res.points,
                shared_lines: res.shared_lines,
            };
            if tsv {
                format!(
                    "red\t{}\nblue\t{}\nfield\t{}\npoints\t{}\nshared_lines\t{}\n",
                    rep.red, rep.blue, rep.field, rep.points, rep.shared_lines
                )
            } else {
                to_json(&rep)
            }
        }
        Command::Conics { file, threshold, budget } => {
            let set = io::read_spheres(file, hint)?;
            let hits = census::conic_pair_census(&set, *threshold, *budget, cli.seed, workers);
            let exhaustive = set.len() <= census::EXHAUSTIVE_LIMIT;
            let rep = ConicsJson {
                n: set.len(),
                field: set.field().to_string(),
                threshold: *threshold,
                mode: if exhaustive { "exhaustive" } else { "sampled" },
                budget: if exhaustive { None } else { Some(*budget) },
                pairs: hits
                    .iter()
                    .map(|h| ConicPairJson {
                        first_count: h.first_count(),
                        second_count: h.second_count(),
                        first_members: h.first_members.clone(),
                        second_members: h.second_members.clone(),
                        first_constraints: conic_json(&h.first),
                        second_constraints: conic_json(&h.second),
                    })
                    .collect(),
            };
            if tsv {
                let mut s = format!("n\t{}\nfield\t{}\nthreshold\t{}\nmode\t{}\n", rep.n, rep.field, rep.threshold, rep.mode);
                s.push_str("first_count\tsecond_count\tfirst_members\tsecond_members\n");
                for p in &rep.pairs {
                    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    writeln!(s, "{}\t{}\t{}\t{}", p.first_count, p.second_count, join(&p.first_members), join(&p.second_members)).unwrap();
                }
                s
            } else {
                to_json(&rep)
            }
        }
        Command::Eta { file, sphere, eta, force_zero } => {
            let pts = io::read_points(file, hint, *force_zero)?;
            let s = OrientedSphere::from_coords(parse_tuple(pts.field(), sphere)?)?;
            let r = census::eta_check(&s, &pts);
            let rep = EtaJson {
                incident: r.incident,
                max_coplanar: r.max_coplanar,
                eta: *eta,
                non_degenerate: eta.map(|e| r.is_non_degenerate(e)),
            };
            if tsv {
                let mut s = format!("incident\t{}\nmax_coplanar\t{}\n", r.incident, r.max_coplanar);
                if let (Some(e), Some(nd)) = (rep.eta, rep.non_degenerate) {
                    writeln!(s, "eta\t{e}\nnon_degenerate\t{nd}").unwrap();
                }
                s
            } else {
                to_json(&rep)
            }
        }
        Command::Verify { scale } => {
            if !(*scale > 0.0 && scale.is_finite()) {
                return Err(Error::InvalidParameter("scale must be positive".into()));
            }
            let f = match hint {
                Some(f) => f,
                None => FieldSpec::prime(10007)?,
            };
            let mut cfg = VerifyConfig::new(f, cli.seed);
            cfg.workers = workers;
            cfg.scale = *scale;
            let rep = census::verify(&cfg);
            let code = if rep.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
            let text = if tsv {
                let mut s = String::from("suite\tcases\tfailures\tcounterexample\n");
                for r in &rep.suites {
                    writeln!(s, "{}\t{}\t{}\t{}", r.name, r.cases, r.failures, r.counterexample.as_deref().unwrap_or("-")).unwrap();
                }
                s
            } else {
                to_json(&rep)
            };
            return Ok((text, code));
        }
    };
    Ok((out, EXIT_OK))
}

fn gen_cmd(g: &GenArgs, f: FieldSpec, seed: u64) -> Result<String> {
    let need = |name: &str| Error::InvalidParameter(format!("`gen` needs --{name} for this kind"));
    Ok(match g.kind {
        GenKind::Random => io::format_spheres(&gen::random(f, g.n, seed, g.range)?),
        GenKind::RandomPoints => io::format_points(&gen::random_points(f, g.n, seed, g.range)?),
        GenKind::Grid => io::format_spheres(&gen::grid(f, g.m.ok_or_else(|| need("m"))?)?),
        GenKind::Pencil => {
            let dir = parse_tuple(f, g.dir.as_deref().ok_or_else(|| need("dir"))?)?;
            let base = match &g.base {
                Some(b) => parse_tuple(f, b)?,
                None => [f.zero(); 4],
            };
            io::format_spheres(&gen::pencil(base, dir, g.k.ok_or_else(|| need("k"))?)?)
        }
        GenKind::ConicPair => io::format_spheres(&gen::conic_pair(f, seed)?),
        GenKind::PlanePoints => io::format_points(&gen::plane_points(f)?),
    })
}

fn pencil_tsv(rep: &CensusReport) -> String {
    let mut s = format!(
        "n\t{}\nfield\t{}\ncontact_pairs\t{}\nruntime_ms\t{}\n",
        rep.n, rep.field, rep.contact_pairs, rep.runtime_ms
    );
    for w in &rep.warnings {
        writeln!(s, "warning\t{w}").unwrap();
    }
    s.push_str("k\tpencils\n");
    for (k, c) in &rep.histogram {
        writeln!(s, "{k}\t{c}").unwrap();
    }
    s
}

#[derive(Serialize)]
struct DistanceReport {
    n: usize,
    field: String,
    r: String,
    pairs: u64,
    pairs_via_contact: u64,
}

#[derive(Serialize)]
struct MaxClass {
    r2: String,
    pairs: u64,
}

#[derive(Serialize)]
struct DistributionReport {
    n: usize,
    field: String,
    total_pairs: u64,
    classes: BTreeMap<String, u64>,
    max_nonzero_square: Option<MaxClass>,
}

#[derive(Serialize)]
struct IncidenceJson {
    points: usize,
    spheres: usize,
    field: String,
    direct: u64,
    via_contact: u64,
    agree: bool,
}

#[derive(Serialize)]
struct BichromaticJson {
    red: usize,
    blue: usize,
    field: String,
    points: u64,
    shared_lines: u64,
}

#[derive(Serialize)]
struct ConicPairJson {
    first_count: usize,
    second_count: usize,
    first_members: Vec<usize>,
    second_members: Vec<usize>,
    first_constraints: Vec<Vec<String>>,
    second_constraints: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ConicsJson {
    n: usize,
    field: String,
    threshold: usize,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<usize>,
    pairs: Vec<ConicPairJson>,
}

#[derive(Serialize)]
struct EtaJson {
    incident: u64,
    max_coplanar: u64,
    eta: Option<f64>,
    non_degenerate: Option<bool>,
}
