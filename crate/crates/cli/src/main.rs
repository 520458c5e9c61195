//! `qmat`: build q-matroids, classify their subspaces, run axiom suites and
//! conversions. Exit status 0 means every check passed, 1 a mathematical
//! failure (with witness on stderr), 2 a usage or I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qmatroid::axioms::{
    check_bases, check_circuits, check_closure, check_dependence, check_flats, check_hyperplanes, check_independence,
    check_nonspanning, check_open, check_rank, check_spanning, AxiomReport, CheckOptions, CircuitVariant,
    HyperplaneVariant, IndependenceVariant, OpenVariant, RankVariant, System,
};
use qmatroid::crypto::{convert, cycles, native, roundtrip_verify, ConversionPath, Object};
use qmatroid::fixtures::{fixture, Fixture, FIXTURE_NAMES};
use qmatroid::io::{
    construction_from_json, family_to_json, matroid_to_json, parse_str, read_document, to_pretty_string, Document,
};
use qmatroid::report::classify;
use qmatroid::{Error, FamilyKind, QMatroid, SubspaceFamily};

#[derive(Parser)]
#[command(name = "qmat", version, about = "q-matroids over finite fields")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a matroid from flags or a construction spec file.
    Build(BuildArgs),
    /// Per-dimension classification of every subspace.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Run axiom systems on a matroid, family or closure map.
    Check(CheckArgs),
    /// Convert along a path such as "rank,closure,flats".
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        path: String,
        #[command(flatten)]
        out: Output,
    },
    /// Convert along a path and compare every step with the matroid's own object.
    Roundtrip {
        #[command(flatten)]
        input: Input,
        /// Comma-separated path; omit to run every cycle of at most four edges.
        #[arg(long)]
        path: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// The dual matroid.
    Dual {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Write a builtin fixture.
    Fixture {
        name: String,
        #[command(flatten)]
        out: Output,
    },
    /// Quick end-to-end checks on the builtin fixtures.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Representable,
    Uniform,
    Matrix,
    RankTable,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct Input {
    /// JSON document: rank table, family, closure map or construction spec.
    file: Option<PathBuf>,
    /// Use a builtin fixture instead of a file.
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Construction spec file; flags are ignored when given.
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated systems, or "all".
    #[arg(long)]
    systems: Option<String>,
    /// Comma-separated variants: global, local, I4, I4', I4'', H3, H3', C3, C3', C3bar, O3, O3bar.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Samples per sweep in sampled mode.
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    /// Shorthand for --mode exhaustive.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AxiomViolation { .. } => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check passed.
fn run(cmd: Command) -> CliResult<bool> {
    match cmd {
        Command::Build(args) => {
            let m = build(&args)?;
            emit(&args.out, &to_pretty_string(&matroid_to_json(&m)))?;
            Ok(true)
        }
        Command::Classify { input, format, out } => {
            let m = load_matroid(&input)?;
            let c = classify(&m);
            let text = match format {
                Format::Text => c.to_text(),
                Format::Json => to_pretty_string(&c.to_json()),
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Check(args) => check(&args),
        Command::Convert { input, path, out } => {
            let path = ConversionPath::parse(&path)?;
            let mut obj = match load(&input)? {
                Document::Matroid(m) => native(&m, path.nodes()[0]),
                other => {
                    let obj = document_object(other)?;
                    if obj.node() != path.nodes()[0] {
                        return Err(usage(format!("input is a {} but the path starts at {}", obj.node(), path.nodes()[0])));
                    }
                    obj
                }
            };
            for &node in &path.nodes()[1..] {
                obj = convert(&obj, node)?;
            }
            emit(&out, &to_pretty_string(&obj.to_json()))?;
            Ok(true)
        }
        Command::Roundtrip { input, path, out } => {
            let m = load_matroid(&input)?;
            let paths = match path {
                Some(p) => vec![ConversionPath::parse(&p)?],
                None => cycles(4),
            };
            let mut results = Vec::new();
            let mut ok = true;
            for p in &paths {
                let r = roundtrip_verify(&m, p)?;
                if let Some(d) = &r.divergence {
                    if ok {
                        eprintln!("FAIL {}: step {} ({}): {}", p, d.step, d.node, d.detail);
                    }
                    ok = false;
                }
                results.push(r.to_json());
            }
            emit(&out, &to_pretty_string(&json!({"pass": ok, "roundtrips": results})))?;
            Ok(ok)
        }
        Command::Dual { input, out } => {
            let m = load_matroid(&input)?;
            emit(&out, &to_pretty_string(&matroid_to_json(&m.dual())))?;
            Ok(true)
        }
        Command::Fixture { name, out } => {
            let v = match fixture(&name)? {
                Fixture::Matroid(m) => matroid_to_json(&m),
                Fixture::Family { kind, family } => family_to_json(kind.name(), &family),
            };
            emit(&out, &to_pretty_string(&v))?;
            Ok(true)
        }
        Command::Selftest => selftest(),
    }
}

fn build(args: &BuildArgs) -> CliResult<QMatroid> {
    if let Some(file) = &args.file {
        return Ok(construction_from_json(&read_json(file)?)?);
    }
    let construction = args.construction.ok_or_else(|| usage("--construction or a spec file is required"))?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required")));
    let q = args.q.ok_or_else(|| usage("--q is required"))?;
    let spec = match construction {
        Construction::Representable => {
            json!({"construction": "representable", "q": q, "p": need(args.p, "p")?, "s": need(args.s, "s")?})
        }
        Construction::Uniform => {
            json!({"construction": "uniform", "q": q, "n": need(args.n, "n")?, "k": need(args.k, "k")?})
        }
        Construction::Matrix | Construction::RankTable => {
            return Err(usage("matrix and rank_table constructions are read from a spec file"));
        }
    };
    Ok(construction_from_json(&spec)?)
}

fn read_json(path: &PathBuf) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(parse_str(&text)?)
}

fn load(input: &Input) -> CliResult<Document> {
    if let Some(name) = &input.fixture {
        return Ok(match fixture(name)? {
            Fixture::Matroid(m) => Document::Matroid(m),
            Fixture::Family { kind, family } => Document::Family { kind: kind.name().into(), family },
        });
    }
    let file = input.file.as_ref().ok_or_else(|| usage("an input file or --fixture is required"))?;
    Ok(read_document(&read_json(file)?)?)
}

fn load_matroid(input: &Input) -> CliResult<QMatroid> {
    match load(input)? {
        Document::Matroid(m) => Ok(m),
        _ => Err(usage("input is not a matroid")),
    }
}

fn family_kind(kind: &str) -> CliResult<FamilyKind> {
    FamilyKind::parse(kind).ok_or_else(|| usage(format!("unknown family kind {kind:?}")))
}

fn document_object(doc: Document) -> CliResult<Object> {
    Ok(match doc {
        Document::Matroid(m) => Object::Rank(m),
        Document::Closure(cl) => Object::Closure(cl),
        Document::Family { kind, family } => Object::Family(family_kind(&kind)?, family),
    })
}

fn emit(out: &Output, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

#[derive(Default)]
struct Variants {
    rank: Vec<RankVariant>,
    independence: Option<IndependenceVariant>,
    hyperplanes: Option<HyperplaneVariant>,
    circuits: Option<CircuitVariant>,
    open: Option<OpenVariant>,
}

impl Variants {
    fn parse(list: Option<&str>) -> CliResult<Self> {
        let mut v = Variants::default();
        for name in list.into_iter().flat_map(|l| l.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "global" | "R" => v.rank.push(RankVariant::Global),
                "local" | "R'" => v.rank.push(RankVariant::Local),
                "I4" => v.independence = Some(IndependenceVariant::I4),
                "I4'" | "I4p" => v.independence = Some(IndependenceVariant::I4p),
                "I4''" | "I4pp" => v.independence = Some(IndependenceVariant::I4pp),
                "H3" => v.hyperplanes = Some(HyperplaneVariant::H3),
                "H3'" | "H3p" => v.hyperplanes = Some(HyperplaneVariant::H3p),
                "C3" => v.circuits = Some(CircuitVariant::C3),
                "C3'" | "C3p" => v.circuits = Some(CircuitVariant::C3p),
                "C3bar" => v.circuits = Some(CircuitVariant::C3bar),
                "O3" => v.open = Some(OpenVariant::O3),
                "O3bar" => v.open = Some(OpenVariant::O3bar),
                other => return Err(usage(format!("unknown variant {other:?}"))),
            }
        }
        Ok(v)
    }

    /// The single system a variant list points at, if any.
    fn implied_system(&self) -> Option<System> {
        let hits: Vec<System> = [
            (!self.rank.is_empty()).then_some(System::Rank),
            self.independence.map(|_| System::Independence),
            self.hyperplanes.map(|_| System::Hyperplanes),
            self.circuits.map(|_| System::Circuits),
            self.open.map(|_| System::Open),
        ]
        .into_iter()
        .flatten()
        .collect();
        (hits.len() == 1).then(|| hits[0])
    }
}

fn parse_systems(list: &str) -> CliResult<Vec<System>> {
    if list.trim() == "all" {
        return Ok(System::ALL.to_vec());
    }
    list.split(',').map(|s| System::parse(s).ok_or_else(|| usage(format!("unknown system {:?}", s.trim())))).collect()
}

fn check_one(system: System, family: &SubspaceFamily, v: &Variants, opts: &CheckOptions) -> CliResult<AxiomReport> {
    Ok(match system {
        System::Independence => check_independence(family, v.independence.unwrap_or(IndependenceVariant::I4), opts)?,
        System::Bases => check_bases(family, opts)?,
        System::Flats => check_flats(family, opts)?,
        System::Hyperplanes => check_hyperplanes(family, v.hyperplanes.unwrap_or(HyperplaneVariant::H3), opts)?,
        System::Circuits => check_circuits(family, v.circuits.unwrap_or(CircuitVariant::C3), opts)?,
        System::Dependence => check_dependence(family, opts)?,
        System::Open => check_open(family, v.open.unwrap_or(OpenVariant::O3), opts)?,
        System::Spanning => check_spanning(family, opts)?,
        System::Nonspanning => check_nonspanning(family, opts)?,
        System::Rank | System::Closure => return Err(usage(format!("{system} does not apply to a family"))),
    })
}

fn check(args: &CheckArgs) -> CliResult<bool> {
    let opts = match (args.exhaustive, args.mode) {
        (true, _) | (false, ModeArg::Exhaustive) => CheckOptions::exhaustive(),
        (false, ModeArg::Sampled) => CheckOptions::sampled(args.seed, args.samples),
        (false, ModeArg::Auto) => CheckOptions::default(),
    };
    let variants = Variants::parse(args.variant.as_deref())?;
    let doc = load(&args.input)?;
    let requested = match &args.systems {
        Some(list) => Some(parse_systems(list)?),
        None => variants.implied_system().map(|s| vec![s]),
    };
    let mut reports = Vec::new();
    match doc {
        Document::Matroid(m) => {
            for system in requested.unwrap_or_else(|| System::ALL.to_vec()) {
                match system {
                    System::Rank => {
                        let rv = if variants.rank.is_empty() {
                            vec![RankVariant::Global, RankVariant::Local]
                        } else {
                            variants.rank.clone()
                        };
                        let table = m.rank_table();
                        reports.extend(rv.into_iter().map(|v| check_rank(&table, v, &opts)));
                    }
                    System::Closure => reports.push(check_closure(&m.closure_map(), &opts)),
                    s => {
                        let kind = s.family_kind().expect("family system");
                        reports.push(check_one(s, &m.derive_family(kind), &variants, &opts)?);
                    }
                }
            }
        }
        Document::Family { kind, family } => {
            let own = System::for_kind(family_kind(&kind)?);
            let systems = match requested {
                Some(list) if list.len() == System::ALL.len() => vec![own],
                Some(list) => list,
                None => vec![own],
            };
            for s in systems {
                reports.push(check_one(s, &family, &variants, &opts)?);
            }
        }
        Document::Closure(cl) => {
            if let Some(list) = &requested {
                if list.iter().any(|&s| s != System::Closure) && list.len() != System::ALL.len() {
                    return Err(usage("a closure map supports only the closure system"));
                }
            }
            reports.push(check_closure(&cl, &opts));
        }
    }
    let pass = reports.iter().all(AxiomReport::passed);
    if let Some((r, v)) = reports.iter().find_map(|r| r.first_failure().map(|v| (r, v))) {
        let witness = v.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        eprintln!("FAIL {} {}: {}", r.system, v.axiom, witness);
    }
    let body = json!({"pass": pass, "reports": reports.iter().map(AxiomReport::to_json).collect::<Vec<_>>()});
    emit(&args.out, &to_pretty_string(&body))?;
    Ok(pass)
}

fn selftest() -> CliResult<bool> {
    use qmatroid::representable::build_spread;
    let mut all = true;
    let mut line = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        all &= ok;
    };
    let names_ok = FIXTURE_NAMES.iter().all(|n| fixture(n).is_ok());
    line("fixtures load", names_ok);
    let m6 = qmatroid::fixtures::m6()?;
    let c = classify(&m6);
    line("m6 flats per dimension", c.family(FamilyKind::Flat) == Some(&[1, 0, 0, 9, 0, 0, 1][..]));
    line("m6 dim-2 circuits", c.family(FamilyKind::Circuit).map(|v| v[2]) == Some(63));
    let spread = build_spread(2, 3, 6)?;
    line("spread of 3-spaces in F_2^6", spread.elements().len() == 9);
    let ex = qmatroid::fixtures::example10_independent()?;
    let r = check_independence(&ex, IndependenceVariant::I4, &CheckOptions::exhaustive())?;
    line("example family fails I4", !r.passed());
    let lo = qmatroid::fixtures::lo_prime()?;
    let pass_bar = check_open(&lo, OpenVariant::O3bar, &CheckOptions::exhaustive())?.passed();
    let pass_o3 = check_open(&lo, OpenVariant::O3, &CheckOptions::exhaustive())?.passed();
    line("lo-prime separates O3 from O3bar", pass_bar && !pass_o3);
    let rt = roundtrip_verify(&m6, &ConversionPath::parse("rank,closure,independent,rank")?)?;
    line("m6 round trip rank,closure,independent,rank", rt.ok);
    Ok(all)
}
