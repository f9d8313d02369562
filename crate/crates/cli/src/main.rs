use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcx::cache::{Cache, CACHE_ENV};
use graphcx::engine::{disagreements, CheckReport, Engine};
use graphcx::formats::{table_csv, table_text, table_to_json, write_basis, write_matrix};
use graphcx::theorems::{Battery, CRITERIA};
use graphcx_core::enumerate::DEFAULT_BUDGET;
use graphcx_core::{ComplexId, Family, FieldTag, MapId};
use serde_json::json;

#[derive(Parser)]
#[command(name = "graphcx", version, about = "Bases, differentials and cohomology of graph complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cache root; caching is off when neither this nor the environment variable is set.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest number of decorated candidates per basis.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Largest vertex count (default: 10 at g=1, 3g otherwise).
    #[arg(long, global = true)]
    vmax: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Target {
    /// Family tag such as GC, dGC or oGC3; `TAG:d=<d>` is accepted too.
    #[arg(long)]
    complex: String,
    #[arg(long)]
    d: Option<i32>,
    /// Loop order or inclusive range `lo-hi`.
    #[arg(long)]
    g: String,
    #[arg(long, allow_hyphen_values = true)]
    deg: Option<i32>,
    /// `Q` or `Fp:<prime>`.
    #[arg(long, default_value = "Fp:32003")]
    field: String,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a basis and its size.
    Basis(Target),
    /// Emit the matrix of the differential from degree `--deg`.
    Delta(Target),
    /// Emit the cohomology table.
    Cohomology(Target),
    /// Check δ² = 0 on every generator in the window.
    VerifyD2(Target),
    /// Check that a map commutes with the differentials.
    VerifyMap {
        /// Map tag: f, s, z, j, iota, F_t, F_or, mu, inclusion, projection.
        map: String,
        #[command(flatten)]
        target: Target,
    },
    /// Side-by-side cohomology of two complexes.
    Compare {
        /// First complex as `TAG:d=<d>`.
        #[arg(long)]
        a: String,
        /// Second complex as `TAG:d=<d>`.
        #[arg(long)]
        b: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "Fp:32003")]
        field: String,
    },
    /// Run the acceptance battery.
    Theorems {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Run(graphcx::Error),
}

impl From<graphcx::Error> for Failure {
    fn from(e: graphcx::Error) -> Failure {
        Failure::Run(e)
    }
}

impl From<graphcx_core::Error> for Failure {
    fn from(e: graphcx_core::Error) -> Failure {
        Failure::Run(e.into())
    }
}

fn parse_complex(tag: &str, d: Option<i32>) -> Result<ComplexId, Failure> {
    let usage = |m: String| Failure::Usage(m);
    match (ComplexId::parse(tag), d) {
        (Some(c), None) => Ok(c),
        (Some(c), Some(d)) if c.d == d => Ok(c),
        (Some(_), Some(_)) => Err(usage(format!("--d disagrees with {tag}"))),
        (None, d) => {
            let f = Family::from_tag(tag).ok_or_else(|| usage(format!("unknown complex {tag}")))?;
            let d = d.ok_or_else(|| usage("--d is required".into()))?;
            ComplexId::new(f, d).map_err(|e| usage(e.to_string()))
        }
    }
}

fn parse_g(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad loop order {s}"));
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => {
            let g = s.parse().map_err(|_| bad())?;
            (g, g)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn parse_field(s: &str) -> Result<FieldTag, Failure> {
    FieldTag::parse(s).ok_or_else(|| Failure::Usage(format!("bad field {s}; use Q or Fp:<prime>")))
}

struct Resolved {
    id: ComplexId,
    gs: Vec<usize>,
    deg: Option<i32>,
    field: FieldTag,
}

fn resolve(t: &Target) -> Result<Resolved, Failure> {
    Ok(Resolved { id: parse_complex(&t.complex, t.d)?, gs: parse_g(&t.g)?, deg: t.deg, field: parse_field(&t.field)? })
}

fn degrees(engine: &Engine, id: ComplexId, g: usize, deg: Option<i32>) -> Vec<i32> {
    match deg {
        Some(k) => vec![k],
        None => id.spec().degree_range(g, engine.vmax(g)).map_or_else(Vec::new, |(lo, hi)| (lo..=hi).collect()),
    }
}

fn print_check(fmt: Format, what: &str, id: ComplexId, g: usize, r: &CheckReport) {
    let verdict = if r.passed() { "pass" } else { "fail" };
    match fmt {
        Format::Json => {
            let failures: Vec<_> =
                r.failures.iter().map(|f| json!({"degree": f.degree, "index": f.index, "graph": f.graph})).collect();
            let v = json!({"check": what, "complex": id.family.tag(), "d": id.d, "g": g,
                "checked": r.checked, "pass": r.passed(), "failures": failures});
            println!("{v}");
        }
        Format::Csv => {
            println!("check,complex,d,g,checked,failures");
            println!("{what},{},{},{g},{},{}", id.family.tag(), id.d, r.checked, r.failures.len());
        }
        Format::Table => {
            println!("{what} {id} g={g}: {} generators, {verdict}", r.checked);
            for f in &r.failures {
                println!("  degree {} index {}: {}", f.degree, f.index, f.graph);
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let opts = &cli.run;
    if let Some(n) = opts.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if opts.vmax == Some(0) {
        return Err(Failure::Usage("--vmax must be positive".into()));
    }
    let engine = Engine::new(opts.vmax, opts.budget, opts.cache_dir.clone().map(Cache::new));
    let fmt = opts.format;
    match &cli.command {
        Command::Basis(t) => {
            let r = resolve(t)?;
            let mut rows = Vec::new();
            for &g in &r.gs {
                for k in degrees(&engine, r.id, g, r.deg) {
                    let b = engine.basis(r.id, g, k)?;
                    match fmt {
                        Format::Table => print!("{}", write_basis(&b)),
                        Format::Csv => {
                            for (i, x) in b.elems.iter().enumerate() {
                                rows.push(format!("{g},{k},{i},{}", x.encode()));
                            }
                        }
                        Format::Json => {
                            let graphs: Vec<String> = b.elems.iter().map(|x| x.encode()).collect();
                            println!(
                                "{}",
                                json!({"complex": r.id.family.tag(), "d": r.id.d, "g": g, "deg": k, "count": b.len(), "graphs": graphs})
                            );
                        }
                    }
                }
            }
            if fmt == Format::Csv {
                println!("g,degree,index,graph");
                rows.iter().for_each(|l| println!("{l}"));
            }
            Ok(true)
        }
        Command::Delta(t) => {
            let r = resolve(t)?;
            let k = r.deg.ok_or_else(|| Failure::Usage("delta needs --deg".into()))?;
            for &g in &r.gs {
                let m = engine.delta_matrix(r.id, g, k)?;
                match fmt {
                    Format::Table => print!("{}", write_matrix(&m)),
                    Format::Csv => {
                        println!("row,col,value");
                        for (i, j, q) in m.entries() {
                            println!("{i},{j},{q}");
                        }
                    }
                    Format::Json => {
                        let entries: Vec<_> = m.entries().map(|(i, j, q)| json!([i, j, q.to_string()])).collect();
                        let rank = m.rank_over(r.field)?;
                        println!(
                            "{}",
                            json!({"complex": r.id.family.tag(), "d": r.id.d, "g": g, "deg": k, "rows": m.rows(),
                                "cols": m.cols(), "field": r.field.to_string(), "rank": rank, "entries": entries})
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Cohomology(t) => {
            let r = resolve(t)?;
            for &g in &r.gs {
                let table = engine.cohomology(r.id, g, r.field)?;
                match fmt {
                    Format::Table => print!("{}", table_text(&table)),
                    Format::Csv => print!("{}", table_csv(&table)),
                    Format::Json => println!("{}", table_to_json(&table)),
                }
            }
            Ok(true)
        }
        Command::VerifyD2(t) => {
            let r = resolve(t)?;
            let mut ok = true;
            for &g in &r.gs {
                let rep = engine.verify_d2(r.id, g)?;
                ok &= rep.passed();
                print_check(fmt, "verify-d2", r.id, g, &rep);
            }
            Ok(ok)
        }
        Command::VerifyMap { map, target } => {
            let m = MapId::from_tag(map).ok_or_else(|| Failure::Usage(format!("unknown map {map}")))?;
            let r = resolve(target)?;
            m.target(r.id).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut ok = true;
            for &g in &r.gs {
                let rep = engine.verify_map(m, r.id, g)?;
                ok &= rep.passed();
                print_check(fmt, &format!("verify-map {m}"), r.id, g, &rep);
            }
            Ok(ok)
        }
        Command::Compare { a, b, g, field } => {
            let (ia, ib) = (parse_complex(a, None)?, parse_complex(b, None)?);
            let (gs, field) = (parse_g(g)?, parse_field(field)?);
            let mut ok = true;
            for g in gs {
                let (ta, tb) = (engine.cohomology(ia, g, field)?, engine.cohomology(ib, g, field)?);
                let diff = disagreements(&ta, &tb);
                let common: Vec<i32> = ta.reported.iter().copied().filter(|&k| tb.reports(k)).collect();
                let verdict = if diff.is_empty() { "equal" } else { "differ" };
                ok &= diff.is_empty();
                match fmt {
                    Format::Json => {
                        let rows: Vec<_> = common
                            .iter()
                            .map(|&k| json!({"degree": k, "a": ta.dim(k), "b": tb.dim(k), "equal": ta.dim(k) == tb.dim(k)}))
                            .collect();
                        println!(
                            "{}",
                            json!({"a": ia.to_string(), "b": ib.to_string(), "g": g, "field": field.to_string(),
                            "degrees": rows, "verdict": verdict})
                        );
                    }
                    Format::Csv => {
                        println!("degree,a,b,equal");
                        for &k in &common {
                            println!("{k},{},{},{}", ta.dim(k), tb.dim(k), ta.dim(k) == tb.dim(k));
                        }
                    }
                    Format::Table => {
                        println!("{ia} vs {ib}, g={g}, over {field}");
                        println!("{:>6} {:>6} {:>6}", "k", "a", "b");
                        for &k in &common {
                            let mark = if ta.dim(k) == tb.dim(k) { "" } else { "  *" };
                            println!("{k:>6} {:>6} {:>6}{mark}", ta.dim(k), tb.dim(k));
                        }
                        println!("verdict: {verdict}");
                    }
                }
            }
            Ok(ok)
        }
        Command::Theorems { only } => {
            let numbers: Vec<u32> = if only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { only.clone() };
            if let Some(n) = numbers.iter().find(|n| !(1..=CRITERIA.len() as u32).contains(n)) {
                return Err(Failure::Usage(format!("no criterion {n}")));
            }
            let battery = Battery::new(&engine);
            let mut ok = true;
            for n in numbers {
                let o = battery.run(n)?;
                ok &= o.pass;
                match fmt {
                    Format::Json => println!(
                        "{}",
                        json!({"criterion": o.number, "title": o.title, "pass": o.pass, "detail": o.detail})
                    ),
                    Format::Csv => println!("{},{},{}", o.number, o.pass, o.title),
                    Format::Table => println!("{}", o.line()),
                }
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.run.format == Format::Json;
    let (code, kind, message) = match run(cli) {
        Ok(true) => return ExitCode::SUCCESS,
        Ok(false) => return ExitCode::from(1),
        Err(Failure::Usage(m)) => (2, "usage", m),
        Err(Failure::Run(e)) => {
            let kind = match e.exit_code() {
                2 => "validation",
                _ if matches!(e, graphcx::Error::Core(graphcx_core::Error::Budget { .. })) => "budget",
                _ => "io",
            };
            (e.exit_code(), kind, e.to_string())
        }
    };
    if json {
        eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
    } else {
        eprintln!("error ({kind}): {message}");
    }
    ExitCode::from(code as u8)
}
