mod output;
mod resolve;

use std::process::ExitCode;
use std::time::Instant;

use charstack::genus_tables::{count_polynomial_table, invariants, zeta_table};
use charstack::gln::{count_polynomial_gln, count_polynomial_pgln_identity};
use charstack::oracle::{GroupKind, Oracle, DEFAULT_CAP};
use charstack::rootdata::modulus;
use charstack::{Error, Poly, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{InvariantsRecord, OracleRecord, Record, VerifyRecord};

#[derive(Parser, Debug)]
#[command(name = "charstack", version, about = "Point counts of character stacks of surface groups")]
struct Cli {
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Counting polynomial for GL_n, or the identity component for PGL_n.
    Gln(GlnArgs),
    /// Counting polynomial from a genus table.
    Table(TableArgs),
    /// Brute-force homomorphism count over a finite field.
    Oracle(OracleArgs),
    /// Compare the oracle with the polynomial engines.
    Verify(VerifyArgs),
    /// Modulus of a root datum.
    Modulus(ModulusArgs),
}

#[derive(Args, Debug)]
struct GlnArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    pgl_identity: bool,
    #[arg(long, value_name = "Q")]
    eval: Option<i64>,
    #[arg(long)]
    invariants: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Path of a genus table, or the name of a shipped one (pgl2, pgl3, so5, g2).
    #[arg(long)]
    file: String,
    #[arg(long)]
    genus: u32,
    #[arg(long, value_name = "Q")]
    eval: Option<i64>,
    #[arg(long)]
    invariants: bool,
    /// Evaluate ζ(S) of the finite group at the `--eval` value of q.
    #[arg(long, value_name = "S", requires = "eval", allow_negative_numbers = true)]
    zeta: Option<f64>,
    #[arg(long)]
    force_residue: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Gl,
    Sl,
    Pgl,
}

impl From<KindArg> for GroupKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Gl => GroupKind::GL,
            KindArg::Sl => GroupKind::SL,
            KindArg::Pgl => GroupKind::PGL,
        }
    }
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    genus: u32,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Gl,
    Pgl,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: VerifyKind,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    genus: u32,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Args, Debug)]
struct ModulusArgs {
    /// Path of a root datum file, or one of sl2, sl3, sp4, g2, gl2, gl3.
    #[arg(long)]
    datum: String,
}

/// Failure with its exit code.
enum Failure {
    Usage(String),
    Computation(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let format = cli.format;
    let mut record = Record::new(std::env::args().skip(1).collect());
    let result = match cli.command {
        Command::Gln(a) => run_gln(a, &mut record),
        Command::Table(a) => run_table(a, &mut record),
        Command::Oracle(a) => run_oracle(a, &mut record),
        Command::Verify(a) => run_verify(a, &mut record),
        Command::Modulus(a) => run_modulus(a, &mut record),
    };
    record.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(()) => {
            print!("{}", output::render(&record, format));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Computation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            print!("{}", output::render(&record, format));
            eprintln!("verification mismatch: {msg}");
            ExitCode::from(3)
        }
    }
}

fn check_genus(g: u32) -> Result<(), Failure> {
    if g == 0 {
        return Err(Failure::Usage("--genus must be at least 1".into()));
    }
    Ok(())
}

fn fill_polynomial(record: &mut Record, p: Poly, eval: Option<i64>, want_invariants: bool) -> Result<(), Failure> {
    if let Some(q) = eval {
        record.eval_q = Some(q);
        record.value = Some(p.eval_int(q).to_string());
    }
    if want_invariants {
        let inv = invariants(&p)?;
        record.invariants = Some(InvariantsRecord {
            dimension: inv.dimension,
            components: inv.components.to_string(),
            euler: inv.euler.to_string(),
        });
    }
    record.set_polynomial(p);
    Ok(())
}

fn run_gln(a: GlnArgs, record: &mut Record) -> Result<(), Failure> {
    check_genus(a.genus)?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let p = if a.pgl_identity { count_polynomial_pgln_identity(a.n, a.genus)? } else { count_polynomial_gln(a.n, a.genus)? };
    fill_polynomial(record, p, a.eval, a.invariants)
}

fn run_table(a: TableArgs, record: &mut Record) -> Result<(), Failure> {
    check_genus(a.genus)?;
    let table = resolve::genus_table(&a.file)?;
    if let Some(q) = a.eval {
        let qu = u64::try_from(q).map_err(|_| Failure::Usage(format!("--eval {q} must be nonnegative")))?;
        if !a.force_residue && qu % table.modulus != table.residue {
            return Err(Error::ResidueMismatch { q: qu, modulus: table.modulus, residue: table.residue }.into());
        }
        if let Some(s) = a.zeta {
            record.zeta = Some(zeta_table(&table, qu, s, a.force_residue)?);
        }
    }
    let p = count_polynomial_table(&table, a.genus)?;
    fill_polynomial(record, p, a.eval, a.invariants)
}

fn run_oracle(a: OracleArgs, record: &mut Record) -> Result<(), Failure> {
    check_genus(a.genus)?;
    let mut o = Oracle::new(a.kind.into(), a.n, a.q, a.cap)?;
    let hom = o.hom_count(a.genus)?;
    let groupoid = o.groupoid_count(a.genus)?;
    record.value = Some(groupoid.to_string());
    record.oracle = Some(OracleRecord {
        kind: GroupKind::from(a.kind).to_string(),
        n: a.n,
        q: a.q,
        order: o.group.order().to_string(),
        classes: o.classes.len(),
        hom_count: hom.to_string(),
        groupoid_count: groupoid.to_string(),
    });
    Ok(())
}

fn run_verify(a: VerifyArgs, record: &mut Record) -> Result<(), Failure> {
    check_genus(a.genus)?;
    let (kind, poly) = match a.kind {
        VerifyKind::Gl => (GroupKind::GL, count_polynomial_gln(a.n, a.genus)?),
        VerifyKind::Pgl => {
            let name = match a.n {
                2 => "pgl2",
                3 => "pgl3",
                n => return Err(Failure::Usage(format!("no genus table ships for PGL{n}; use n = 2 or 3"))),
            };
            let table = resolve::genus_table(name)?;
            if a.q % table.modulus != table.residue {
                return Err(Error::ResidueMismatch { q: a.q, modulus: table.modulus, residue: table.residue }.into());
            }
            (GroupKind::PGL, count_polynomial_table(&table, a.genus)?)
        }
    };
    let mut o = Oracle::new(kind, a.n, a.q, a.cap)?;
    let oracle_value = o.groupoid_count(a.genus)?;
    let poly_value: Rational = poly.eval_int(a.q as i64);
    let agree = oracle_value == poly_value;
    record.eval_q = Some(a.q as i64);
    record.value = Some(poly_value.to_string());
    record.verify = Some(VerifyRecord {
        oracle: oracle_value.to_string(),
        polynomial: poly_value.to_string(),
        agree,
    });
    record.set_polynomial(poly);
    if agree {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("oracle {oracle_value} != polynomial {poly_value}")))
    }
}

fn run_modulus(a: ModulusArgs, record: &mut Record) -> Result<(), Failure> {
    let datum = resolve::root_datum(&a.datum)?;
    record.modulus = Some(modulus(&datum)?.to_string());
    Ok(())
}
