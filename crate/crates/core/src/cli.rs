//! Command-line front end. `run` returns the process exit status:
//! 0 success, 1 inequivalent (verify), 2 usage, 3 parse, 4 resource or guard.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use num_traits::ToPrimitive;

use crate::encode::{encode_cnf_nonroot, encode_exact_sat, encode_generalized_sat, encode_nae, GeneralizedClause};
use crate::error::Error;
use crate::gen::{
    erbds_to_csp, gen_degree_d_composition, gen_erbds_cross, gen_primesat_from_cnf, gen_tree_gadget,
    or_polynomial_mod_p, ErbdsGraph,
};
use crate::io::{parse_dimacs, parse_pcsp, parse_rbds, serialize_dimacs, serialize_pcsp};
use crate::model::{equivalent_with_limit, Constraint, CspInstance, Mode, DEFAULT_ORACLE_LIMIT};
use crate::poly::{monomial_count, MultilinearPoly, DEFAULT_TERM_LIMIT};
use crate::ring::RingSpec;
use crate::sparsify::{sparsify_field, sparsify_howell, sparsify_nonroot_with_limit, sparsify_subset_modm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INEQUIVALENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "polysparse", version, about = "Sparsify polynomial constraint systems over Q and Z/mZ")]
struct Cli {
    /// More log output on stderr (repeat for more)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a DIMACS CNF file as polynomial constraints
    Encode(EncodeArgs),
    /// Drop redundant constraints from a .pcsp file
    Sparsify(SparsifyArgs),
    /// Compare the satisfying sets of two .pcsp files by enumeration
    Verify(VerifyArgs),
    /// Produce instances from the lower-bound constructions
    Generate(GenerateArgs),
    /// Print size figures for a .pcsp file
    Stats(StatsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Scheme {
    Exact,
    Nae,
    CnfNonroot,
    GenSat,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[arg(long, value_enum)]
    scheme: Scheme,
    /// Work over Z/mZ instead of Q
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Allowed true-literal counts for gen-sat, comma separated
    #[arg(long, value_delimiter = ',')]
    allowed: Vec<u64>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Field,
    Howell,
    Subset,
    Nonroot,
}

#[derive(Args, Debug)]
struct SparsifyArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Read integer coefficients of a Q file modulo m
    #[arg(long = "mod")]
    modulus: Option<u64>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on terms per constraint after lifting inequalities
    #[arg(long)]
    max_terms: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Largest variable count to enumerate
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    limit: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Construction {
    ErbdsCross,
    TreeGadget,
    DegreeComp,
    Primesat,
    OrPoly,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// RBDS input file (repeatable)
    #[arg(long)]
    rbds: Vec<PathBuf>,
    /// RBDS inputs per group for degree-comp
    #[arg(long, default_value_t = 1)]
    per_group: usize,
    /// Original variable count for tree-gadget
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Degree for degree-comp and or-poly
    #[arg(long)]
    d: Option<usize>,
    /// Prime for or-poly
    #[arg(long)]
    p: Option<u64>,
    /// CNF input for primesat
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where erbds-cross writes the composed graph
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::TermLimit { .. } | Error::OracleLimit { .. } | Error::SearchExhausted(_) | Error::Internal(_) => {
            EXIT_RESOURCE
        }
        Error::RingMismatch { .. }
        | Error::ArityMismatch { .. }
        | Error::UnsupportedRing(_)
        | Error::Mode(_)
        | Error::InvalidArgument(_) => EXIT_USAGE,
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
    let outcome = match cli.command {
        Command::Encode(a) => encode(a),
        Command::Sparsify(a) => sparsify(a),
        Command::Verify(a) => verify(a),
        Command::Generate(a) => generate(a),
        Command::Stats(a) => stats(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ring_for(modulus: Option<u64>) -> crate::error::Result<RingSpec> {
    match modulus {
        Some(m) => RingSpec::integers_mod(m),
        None => Ok(RingSpec::rationals()),
    }
}

fn require<T>(v: Option<T>, flag: &str) -> crate::error::Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("this construction needs {flag}")))
}

fn encode(a: EncodeArgs) -> Outcome {
    let f = parse_dimacs(&read(&a.input)?)?;
    let ring = ring_for(a.modulus)?;
    if !a.allowed.is_empty() && !matches!(a.scheme, Scheme::GenSat) {
        warn!("--allowed only applies to gen-sat; ignored");
    }
    let inst = match a.scheme {
        Scheme::Exact => encode_exact_sat(&f, &ring)?,
        Scheme::Nae => encode_nae(&f, &ring)?,
        Scheme::CnfNonroot => encode_cnf_nonroot(&f, &ring)?,
        Scheme::GenSat => {
            if a.allowed.is_empty() {
                return Err(Error::invalid("gen-sat needs --allowed").into());
            }
            let clauses: Vec<GeneralizedClause> = f
                .clauses()
                .iter()
                .map(|c| GeneralizedClause {
                    literals: c.clone(),
                    allowed: a.allowed.clone(),
                })
                .collect();
            encode_generalized_sat(f.n_vars(), &clauses, a.modulus, &ring)?
        }
    };
    info!("encoded {} clauses into {} constraints", f.clauses().len(), inst.len());
    write(a.out.as_deref(), &serialize_pcsp(&inst))?;
    Ok(EXIT_OK)
}

/// Reads an instance over Q with integer coefficients as one over `Z/mZ`.
fn reduce_mod(inst: &CspInstance, m: u64) -> crate::error::Result<CspInstance> {
    let ring = RingSpec::integers_mod(m)?;
    match inst.ring() {
        RingSpec::Rationals => {}
        r if *r == ring => return Ok(inst.clone()),
        r => {
            return Err(Error::invalid(format!("--mod {m} does not match the file's ring {r}")));
        }
    }
    let constraints = inst
        .constraints()
        .iter()
        .map(|c| {
            let terms = c
                .poly
                .terms()
                .iter()
                .map(|(mono, coef)| {
                    let q = coef.as_rational().expect("rational coefficient");
                    if !q.is_integer() {
                        return Err(Error::invalid(format!("coefficient {coef} is not an integer")));
                    }
                    Ok((mono.clone(), ring.from_bigint(q.numer())))
                })
                .collect::<crate::error::Result<Vec<_>>>()?;
            let poly = MultilinearPoly::from_terms(ring.clone(), inst.n_vars(), terms)?;
            Ok(Constraint {
                poly,
                relation: c.relation,
            })
        })
        .collect::<crate::error::Result<Vec<_>>>()?;
    CspInstance::new(ring, inst.n_vars(), inst.degree_bound(), constraints, inst.mode())
}

fn sparsify(a: SparsifyArgs) -> Outcome {
    let mut inst = parse_pcsp(&read(&a.input)?)?;
    if let Some(m) = a.modulus {
        inst = reduce_mod(&inst, m)?;
    }
    if a.max_terms.is_some() && !matches!(a.method, Method::Nonroot) {
        warn!("--max-terms only applies to the nonroot method; ignored");
    }
    let out = match a.method {
        Method::Field => sparsify_field(&inst)?,
        Method::Howell => sparsify_howell(&inst)?,
        Method::Subset => sparsify_subset_modm(&inst)?,
        Method::Nonroot => sparsify_nonroot_with_limit(&inst, a.max_terms.unwrap_or(DEFAULT_TERM_LIMIT))?,
    };
    info!("kept {} of {} constraints", out.len(), inst.len());
    write(a.out.as_deref(), &serialize_pcsp(&out))?;
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs) -> Outcome {
    let x = parse_pcsp(&read(&a.a)?)?;
    let y = parse_pcsp(&read(&a.b)?)?;
    if equivalent_with_limit(&x, &y, a.limit)? {
        println!("equivalent");
        Ok(EXIT_OK)
    } else {
        println!("not equivalent");
        Ok(EXIT_INEQUIVALENT)
    }
}

fn read_rbds_inputs(paths: &[PathBuf]) -> std::result::Result<Vec<crate::gen::RbdsInstance>, Failure> {
    if paths.is_empty() {
        return Err(Error::invalid("this construction needs at least one --rbds file").into());
    }
    paths.iter().map(|p| Ok(parse_rbds(&read(p)?)?)).collect()
}

fn describe_graph(g: &ErbdsGraph) -> String {
    let c = g.census();
    let audit = g.degree_audit();
    let mut out = String::new();
    let _ = writeln!(out, "c erbds t {} k {} mR {} mB {}", g.t, g.k, g.m_r, g.m_b);
    let _ = writeln!(
        out,
        "c census red {} blue {} u {} v {} w {} d {} z {} y {} gadget-red {} gadget-blue {}",
        c.red, c.blue, c.u, c.v, c.w, c.d, c.z, c.y, c.gadget_red, c.gadget_blue
    );
    let _ = writeln!(
        out,
        "c degree audit: {} non-exempt blue vertices above degree {} (allowed {})",
        audit.high_degree.len(),
        audit.threshold,
        audit.allowed
    );
    let graph = &g.graph;
    for r in graph.red_labels() {
        let _ = writeln!(out, "red {r}");
    }
    for (b, label) in graph.blue_labels().iter().enumerate() {
        let tag = if g.is_exempt(b) { " exempt" } else { "" };
        let _ = writeln!(out, "blue {label}{tag}");
    }
    for (b, label) in graph.blue_labels().iter().enumerate() {
        for &r in graph.blue_neighbors(b) {
            let _ = writeln!(out, "e {} {label}", graph.red_labels()[r]);
        }
    }
    out
}

fn generate(a: GenerateArgs) -> Outcome {
    match a.construction {
        Construction::ErbdsCross => {
            let inputs = read_rbds_inputs(&a.rbds)?;
            let g = gen_erbds_cross(&inputs)?;
            if !g.degree_audit().holds() {
                warn!("degree audit fails on the composed graph");
            }
            if a.graph.is_some() || a.out.is_none() {
                write(a.graph.as_deref(), &describe_graph(&g))?;
            }
            if let Some(out) = &a.out {
                let inst = erbds_to_csp(&g.graph, &ring_for(a.modulus)?)?;
                write(Some(out), &serialize_pcsp(&inst))?;
            }
        }
        Construction::TreeGadget => {
            let sys = gen_tree_gadget(require(a.n, "--n")?, require(a.modulus, "--mod")?)?;
            info!("{} original and {} dummy variables", sys.n_original, sys.n_dummy);
            write(a.out.as_deref(), &serialize_pcsp(&sys.instance))?;
        }
        Construction::DegreeComp => {
            let inputs = read_rbds_inputs(&a.rbds)?;
            if a.per_group == 0 || inputs.len() % a.per_group != 0 {
                return Err(Error::invalid(format!(
                    "{} inputs do not split into groups of {}",
                    inputs.len(),
                    a.per_group
                ))
                .into());
            }
            let groups = inputs
                .chunks(a.per_group)
                .map(gen_erbds_cross)
                .collect::<crate::error::Result<Vec<_>>>()?;
            let inst = gen_degree_d_composition(&groups, &ring_for(a.modulus)?, a.d.unwrap_or(2))?;
            write(a.out.as_deref(), &serialize_pcsp(&inst))?;
        }
        Construction::Primesat => {
            let f = parse_dimacs(&read(&require(a.input, "--in")?)?)?;
            let inst = gen_primesat_from_cnf(&f)?;
            let formula = crate::encode::CnfFormula::new(inst.n_vars, inst.clauses.clone())?;
            let text = format!("c primesat {} {} {}\n{}", inst.a, inst.b, inst.d, serialize_dimacs(&formula));
            write(a.out.as_deref(), &text)?;
        }
        Construction::OrPoly => {
            let p = require(a.p, "--p")?;
            let d = require(a.d, "--d")?;
            let poly = or_polynomial_mod_p(p, d)?;
            let inst = CspInstance::new(
                poly.ring().clone(),
                poly.n_vars(),
                d,
                vec![Constraint::nonroot(poly)],
                Mode::AllNonRoot,
            )?;
            write(a.out.as_deref(), &serialize_pcsp(&inst))?;
        }
    }
    Ok(EXIT_OK)
}

fn stats(a: StatsArgs) -> Outcome {
    let inst = parse_pcsp(&read(&a.input)?)?;
    let (n, d) = (inst.n_vars(), inst.degree_bound());
    let pow = |e: usize| (n as u128).checked_pow(e as u32).and_then(|v| v.checked_add(1));
    let show = |v: Option<u128>| v.map_or_else(|| "overflow".to_string(), |v| v.to_string());
    let terms: usize = inst.constraints().iter().map(|c| c.poly.term_count()).sum();
    let mut out = String::new();
    let _ = writeln!(out, "ring: {}", inst.ring());
    let _ = writeln!(out, "mode: {}", inst.mode());
    let _ = writeln!(out, "variables: {n}");
    let _ = writeln!(out, "degree bound: {d}");
    let _ = writeln!(out, "max degree: {}", inst.max_degree());
    let _ = writeln!(out, "constraints: {}", inst.len());
    let _ = writeln!(out, "terms: {terms}");
    let _ = writeln!(out, "monomials up to degree d: {}", monomial_count(n, d));
    let _ = writeln!(out, "bound n^d+1: {}", show(pow(d)));
    if let Some(m) = inst.ring().modulus() {
        let r = inst.ring().distinct_primes() as u128;
        let _ = writeln!(out, "bound r(n^d+1): {}", show(pow(d).and_then(|v| v.checked_mul(r))));
        if inst.ring().is_field() && inst.mode() != Mode::AllRoot {
            let e = (m - 1).to_usize().and_then(|p1| d.checked_mul(p1));
            let _ = writeln!(out, "bound n^(d(p-1))+1: {}", show(e.and_then(pow)));
        }
    }
    print!("{out}");
    Ok(EXIT_OK)
}
