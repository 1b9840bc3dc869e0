use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use resring::brackets::Brackets;
use resring::classical::{
    ldf_equivalence_check, ldf_table, pfaffian_shape_check, quartic_identities_check, BinaryCubic,
    TernaryQuadricPair,
};
use resring::config::parse_t_polynomial;
use resring::suites::{parse_range, run_suite, Suite, SuiteOptions};
use resring::table::integral_orders;
use resring::{
    build_resolution, structure_constants, validate, verify_table, Configuration,
    GradedFreeResolution, MultiplicationTable, Normalization, PolyMatrix, Polynomial, Rational,
    Report, Scale,
};

/// Rings of rank n from the minimal free resolution of n points.
#[derive(Parser)]
#[command(name = "resring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate the minimal free resolution.
    Resolve(SourceArgs),
    /// Print the quadratic forms Ω_1, …, Ω_{n-1}.
    Omega(SourceArgs),
    /// Structure constants of the ring, verified before output.
    Table {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "hessian")]
        scale: Scale,
        /// Shear to a normalized basis: cyclic, pairwise or trace-zero.
        #[arg(long)]
        normalize: Option<Normalization>,
    },
    /// Discriminant of a table, a configuration or a binary cubic.
    Disc {
        #[command(flatten)]
        source: SourceArgs,
        /// Coefficients a b c d of a binary cubic.
        #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["A", "B", "C", "D"])]
        cubic: Option<Vec<i64>>,
        /// Print disc(B), disc(B') and check their ratio.
        #[arg(long)]
        orders: bool,
        #[arg(long, default_value = "cyclic")]
        normalize: Normalization,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        /// A size, an inclusive range like 4..6, or a list like 4,6.
        #[arg(long)]
        n: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        cases: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks for binary cubics, quadric pairs and alternating matrices.
    #[command(subcommand)]
    Classical(Classical),
}

#[derive(Subcommand)]
enum Classical {
    Cubic {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    Quartic {
        a: PathBuf,
        b: PathBuf,
    },
    Quintic {
        phi: PathBuf,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// Configuration JSON, a table JSON for `disc`, or `-` for stdin.
    input: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["input", "etale", "points"])]
    standard: Option<usize>,
    /// Monic integer polynomial in t, e.g. "t^4-t-1".
    #[arg(long, conflicts_with_all = ["input", "points"])]
    etale: Option<String>,
    #[arg(long, conflicts_with = "input")]
    points: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Inconsistent(_) => 3,
        }
    }
}

impl From<resring::Error> for Failure {
    fn from(e: resring::Error) -> Self {
        if e.is_inconsistency() {
            Failure::Inconsistent(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(format!("malformed JSON: {e}"))
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_text(path: &Path) -> Outcome<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn digest_of<T: serde::Serialize>(v: &T) -> String {
    sha256_hex(serde_json::to_string(v).expect("serializable").as_bytes())
}

fn emit(value: &Value, out: Option<&Path>) -> Outcome<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn configuration(src: &SourceArgs) -> Outcome<Configuration> {
    if let Some(n) = src.standard {
        return Ok(Configuration::standard(n)?);
    }
    if let Some(f) = &src.etale {
        return Ok(Configuration::from_etale(parse_t_polynomial(f)?)?);
    }
    match src.points.as_ref().or(src.input.as_ref()) {
        Some(path) => read_json(path),
        None => Err(Failure::Input(
            "no input: give a file, --points, --standard or --etale".into(),
        )),
    }
}

fn provenance(c: &Configuration, f: &GradedFreeResolution) -> Value {
    json!({
        "tool": concat!("resring ", env!("CARGO_PKG_VERSION")),
        "command": std::env::args().collect::<Vec<_>>().join(" "),
        "input_sha256": digest_of(c),
        "resolution_sha256": digest_of(f),
    })
}

fn resolved(src: &SourceArgs) -> Outcome<(Configuration, GradedFreeResolution)> {
    let c = configuration(src)?;
    let f = build_resolution(&c)?;
    Ok((c, f))
}

fn require(report: &Report, what: &str) -> Outcome<()> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Inconsistent(format!(
            "{what}: {} failed: {}",
            c.name, c.detail
        ))),
    }
}

fn cmd_resolve(src: &SourceArgs) -> Outcome<()> {
    let (c, f) = resolved(src)?;
    let report = validate(&f);
    emit(
        &json!({
            "configuration": c,
            "resolution": f,
            "validation": report,
            "provenance": provenance(&c, &f),
        }),
        src.out.as_deref(),
    )?;
    require(&report, "validation")
}

fn cmd_omega(src: &SourceArgs) -> Outcome<()> {
    let (_, f) = resolved(src)?;
    let om = Brackets::new(&f)?.omega()?;
    emit(&serde_json::to_value(&om)?, src.out.as_deref())
}

fn cmd_table(src: &SourceArgs, scale: Scale, normalize: Option<Normalization>) -> Outcome<()> {
    let (c, f) = resolved(src)?;
    let om = Brackets::new(&f)?.omega()?;
    let mut table = structure_constants(&om, scale)?;
    let mut shear = None;
    if let Some(conv) = normalize {
        let (t, s) = table.normalize(conv)?;
        table = t;
        shear = Some(s);
    }
    require(&verify_table(&table), "table verification")?;
    let mut prov = provenance(&c, &f);
    prov["scale"] = serde_json::to_value(scale)?;
    prov["normalization"] = serde_json::to_value(normalize)?;
    prov["shear"] = serde_json::to_value(&shear)?;
    emit(
        &json!({ "table": table, "provenance": prov }),
        src.out.as_deref(),
    )
}

/// A table file holds either a bare table or the output of `table`.
fn table_from_value(v: &Value) -> Option<Outcome<MultiplicationTable>> {
    let t = v.get("table").unwrap_or(v);
    t.get("c0")
        .is_some()
        .then(|| serde_json::from_value(t.clone()).map_err(Failure::from))
}

fn cmd_disc(
    src: &SourceArgs,
    cubic: Option<&[i64]>,
    orders: bool,
    conv: Normalization,
) -> Outcome<()> {
    if let Some(v) = cubic {
        let f = BinaryCubic::from_ints([v[0], v[1], v[2], v[3]]);
        println!("{}", ldf_table(&f).discriminant());
        return Ok(());
    }
    if let (Some(path), false) = (&src.input, orders) {
        let v: Value = serde_json::from_str(&read_text(path)?)?;
        if let Some(t) = table_from_value(&v) {
            let t = t?;
            if let Some(c) = verify_table(&t).first_failure() {
                return Err(Failure::Input(format!("table is not a ring: {}", c.name)));
            }
            println!("{}", t.discriminant());
            return Ok(());
        }
    }
    let (_, f) = resolved(src)?;
    if !orders {
        let t = structure_constants(&Brackets::new(&f)?.omega()?, Scale::Hessian)?;
        println!("{}", t.discriminant());
        return Ok(());
    }
    let o = integral_orders(&f.integralize(), conv)?;
    let n = f.n();
    println!("disc(B)  = {}", o.disc_b);
    println!("disc(B') = {}", o.disc_b_prime);
    if o.disc_b_prime != Rational::from(0) {
        println!("ratio    = {}", &o.disc_b / &o.disc_b_prime);
    }
    println!(
        "expected = (2n)^(2(n-1)) = {}",
        Rational::from(2 * n as i64).pow(2 * (n as u32 - 1))
    );
    require(&o.report, "orders")
}

fn cmd_verify(
    suite: Suite,
    n: Option<&str>,
    seed: u64,
    cases: usize,
    out: Option<&Path>,
) -> Outcome<()> {
    let ns = match n {
        Some(s) => parse_range(s)?,
        None => suite.default_ns(),
    };
    let opts = SuiteOptions { ns, seed, cases };
    let report = run_suite(suite, &opts)?;
    emit(
        &json!({
            "suite": suite,
            "options": opts,
            "passed": report.passed(),
            "checks": report.checks,
        }),
        out,
    )?;
    require(&report, "suite")
}

fn cmd_classical(which: &Classical) -> Outcome<()> {
    let (value, report) = match which {
        Classical::Cubic { a, b, c, d } => {
            let f = BinaryCubic::from_ints([*a, *b, *c, *d]);
            let report = ldf_equivalence_check(&f)?;
            let v = json!({
                "cubic": f,
                "discriminant": f.discriminant(),
                "ldf_table": ldf_table(&f),
            });
            (v, report)
        }
        Classical::Quartic { a, b } => {
            let pair = TernaryQuadricPair::new(read_json::<Polynomial>(a)?, read_json(b)?)?;
            let f = pair.resolution()?;
            let report = quartic_identities_check(&f)?;
            (json!({ "resolution": f }), report)
        }
        Classical::Quintic { phi } => {
            let m: PolyMatrix = read_json(phi)?;
            let (report, table) = pfaffian_shape_check(&m)?;
            (json!({ "table": table }), report)
        }
    };
    let mut value = value;
    value["report"] = serde_json::to_value(&report)?;
    emit(&value, None)?;
    require(&report, "classical check")
}

fn run(cli: Cli) -> Outcome<()> {
    match &cli.command {
        Command::Resolve(src) => cmd_resolve(src),
        Command::Omega(src) => cmd_omega(src),
        Command::Table {
            source,
            scale,
            normalize,
        } => cmd_table(source, *scale, *normalize),
        Command::Disc {
            source,
            cubic,
            orders,
            normalize,
        } => cmd_disc(source, cubic.as_deref(), *orders, *normalize),
        Command::Verify {
            suite,
            n,
            seed,
            cases,
            out,
        } => cmd_verify(*suite, n.as_deref(), *seed, *cases, out.as_deref()),
        Command::Classical(which) => cmd_classical(which),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
