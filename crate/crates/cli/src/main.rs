use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use distinction_core::coset::{enumerate_coset_matrices, is_open, CaseTag, CosetMatrix, Partition};
use distinction_core::engine::{
    cross_check_report, steinberg_decision, CrossCheck, DistinctionVerdict, Stage,
};
use distinction_core::lfactor::{eval_nonvanishing_at_s0, i2_ratio, NonvanishingReport, RamificationTag};
use distinction_core::oracle::quaternion_model_check;
use distinction_core::oracle::{
    cached_census, reduce_to_representative, resolve_cache_dir, visit_flags, FieldSpec, ProfileCensus,
    QuaternionReport, DEFAULT_BUDGET,
};
use distinction_core::solver::{matrix_size, orbit_supports, ChiToken, SupportReport};
use distinction_core::Error;
use num_rational::{BigRational, Rational64};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "distinction",
    version,
    about = "Orbit, support and L-factor computations for distinguished Steinberg representations"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the coset matrices of a partition.
    Enumerate {
        #[arg(long)]
        case: CaseTag,
        #[arg(long)]
        partition: Partition,
    },
    /// Run the support test on every orbit of a partition.
    Support {
        #[arg(long)]
        case: CaseTag,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        chi: ChiToken,
        #[arg(long)]
        partition: Partition,
    },
    /// Decide whether St(chi) is distinguished.
    Steinberg {
        #[arg(long)]
        case: CaseTag,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        chi: ChiToken,
    },
    /// Compare the decision with eta^(md-1) for every m <= max-m, d <= max-d.
    Sweep {
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        max_d: usize,
    },
    /// The m = 2 L-factor ratio, its Godement-Jacquet chain and its value at s = 0.
    Lfactor {
        #[arg(long)]
        d: usize,
        #[arg(long, action = clap::ArgAction::Set)]
        ramified: bool,
        #[arg(long)]
        at_s0: bool,
        /// Residue field sizes sampled with --at-s0.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7,9")]
        q: Vec<u64>,
    },
    /// Census of flag profiles over F_{q^2} against the odd-case classes.
    OracleFlags {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        partition: Partition,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Also reduce every flag to its representative.
        #[arg(long)]
        reduce: bool,
    },
    /// Exact check of the Galois involution in the quaternion algebra (a, b).
    OracleQuaternion {
        #[arg(long, allow_hyphen_values = true)]
        a: BigRational,
        #[arg(long, allow_hyphen_values = true)]
        b: BigRational,
    },
}

/// Printed output plus whether the verification it reports succeeded.
struct Outcome {
    table: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, table: String, ok: bool) -> Result<Outcome, Error> {
        let json = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(Outcome { table, json, ok })
    }
}

fn enumerate(case: CaseTag, partition: &Partition) -> Result<Outcome, Error> {
    let all = enumerate_coset_matrices(partition, case)?;
    let mut t = format!(
        "{} coset matrices for case {case}, partition {partition}\n",
        all.len()
    );
    for (k, s) in all.iter().enumerate() {
        t += &format!("{:>4}  {s}\n", k + 1);
    }
    Outcome::new(&all, t, true)
}

fn support_row(r: &SupportReport) -> String {
    let v: Vec<String> = r
        .violations
        .iter()
        .map(|v| {
            format!(
                "{}@{}",
                serde_json::to_value(v.rule).unwrap().as_str().unwrap(),
                v.block
            )
        })
        .collect();
    format!(
        "{:<28} {:<9} {}",
        r.s.to_string(),
        if r.feasible { "supports" } else { "-" },
        v.join(" ")
    )
}

fn support(
    case: CaseTag,
    m: usize,
    d: usize,
    chi: ChiToken,
    partition: &Partition,
) -> Result<Outcome, Error> {
    let n = matrix_size(case, m, d)?;
    if partition.total() != n {
        return Err(Error::InvalidInput(format!(
            "partition {partition} has total {}, expected n = {n}",
            partition.total()
        )));
    }
    let reports = enumerate_coset_matrices(partition, case)?
        .iter()
        .map(|s| orbit_supports(s, chi, Rational64::from_integer(1)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = format!("case {case}, m = {m}, d = {d}, chi = {chi}, partition {partition}\n");
    for r in &reports {
        t += &support_row(r);
        t += "\n";
    }
    Outcome::new(&reports, t, true)
}

fn steinberg(case: CaseTag, m: usize, d: usize, chi: ChiToken) -> Result<Outcome, Error> {
    let v: DistinctionVerdict = steinberg_decision(case, m, d, chi)?;
    let mut t = format!(
        "case {case}, m = {m}, d = {d}, chi = {chi}\nstatus {}\nmultiplicity {}\n",
        v.status, v.multiplicity
    );
    for e in &v.trace {
        let stage = match e.stage {
            Stage::Minimal => "minimal",
            Stage::NextToMinimal => "next-to-minimal",
        };
        let mark = if e.distinguished_orbit { "*" } else { " " };
        t += &format!("{stage:<16}{mark} {}\n", support_row(&e.report));
    }
    Outcome::new(&v, t, true)
}

fn sweep(max_m: usize, max_d: usize) -> Result<Outcome, Error> {
    let mut rows: Vec<CrossCheck> = Vec::new();
    for m in 1..=max_m {
        for d in 1..=max_d {
            rows.push(cross_check_report(CaseTag::for_index(d), m, d)?);
        }
    }
    let mut t = format!(
        "{:<5} {:>2} {:>2} {:<8} {:<18} {:<18} {}\n",
        "case", "m", "d", "expected", "triv", "eta", "ok"
    );
    for r in &rows {
        t += &format!(
            "{:<5} {:>2} {:>2} {:<8} {:<18} {:<18} {}\n",
            r.case.to_string(),
            r.m,
            r.d,
            r.expected.to_string(),
            r.triv.to_string(),
            r.eta.to_string(),
            if r.consistent { "yes" } else { "NO" }
        );
        if let Some(diag) = &r.diagnostic {
            t += &format!("      {diag}\n");
        }
    }
    let ok = rows.iter().all(|r| r.consistent);
    Outcome::new(&rows, t, ok)
}

#[derive(Serialize)]
struct LfactorOutput {
    d: usize,
    ram: RamificationTag,
    ratio: String,
    via_chain: String,
    chain_holds: bool,
    at_s0: Option<NonvanishingReport>,
}

fn lfactor(d: usize, ramified: bool, at_s0: bool, qs: &[u64]) -> Result<Outcome, Error> {
    let r = i2_ratio(d, RamificationTag::from_flag(ramified))?;
    let at = at_s0.then(|| eval_nonvanishing_at_s0(&r.ratio, qs)).transpose()?;
    let out = LfactorOutput {
        d,
        ram: r.ram,
        ratio: r.ratio.to_string(),
        via_chain: r.via_chain.to_string(),
        chain_holds: r.chain_holds,
        at_s0: at,
    };
    let mut t = format!(
        "d = {d}, {}\nratio      {}\nvia chain  {}\nchain      {}\n",
        out.ram,
        out.ratio,
        out.via_chain,
        if out.chain_holds { "holds" } else { "FAILS" }
    );
    let mut ok = out.chain_holds;
    if let Some(rep) = &out.at_s0 {
        t += &format!("s = 0      {}\n", rep.symbolic.as_deref().unwrap_or("pole"));
        for s in &rep.samples {
            let status = serde_json::to_value(s.status).unwrap();
            t += &format!(
                "  q = {:<3} {:<8} {}\n",
                s.q,
                status.as_str().unwrap(),
                s.value.as_deref().unwrap_or("")
            );
        }
        t += &format!("nonvanishing {}\n", if rep.nonvanishing { "yes" } else { "NO" });
        ok &= rep.nonvanishing;
    }
    Outcome::new(&out, t, ok)
}

#[derive(Serialize)]
struct FlagsOutput {
    census: ProfileCensus,
    classes: usize,
    profiles_match_classes: bool,
    open_orbit_strictly_largest: bool,
    reduction_failures: Option<u64>,
    passed: bool,
}

fn oracle_flags(
    n: usize,
    q: u32,
    partition: &Partition,
    budget: u128,
    cache_dir: Option<PathBuf>,
    reduce: bool,
) -> Result<Outcome, Error> {
    if partition.total() != n {
        return Err(Error::InvalidInput(format!(
            "partition {partition} has total {}, expected n = {n}",
            partition.total()
        )));
    }
    let f = FieldSpec::for_q(q)?;
    let dir = resolve_cache_dir(cache_dir);
    let (census, cache) = cached_census(&f, partition, budget, dir.as_deref())?;
    eprintln!(
        "cache: {}",
        serde_json::to_value(cache).unwrap().as_str().unwrap()
    );

    let classes = enumerate_coset_matrices(partition, CaseTag::Odd)?;
    let mut found = census.profiles();
    let mut want = classes.clone();
    found.sort_by_key(CosetMatrix::row_major);
    want.sort_by_key(CosetMatrix::row_major);
    let profiles_match_classes = found == want;

    let max = census.counts.iter().map(|c| c.1).max().unwrap_or(0);
    let top: Vec<&CosetMatrix> = census
        .counts
        .iter()
        .filter(|c| c.1 == max)
        .map(|c| &c.0)
        .collect();
    let open_orbit_strictly_largest = top.len() == 1 && is_open(top[0])?;

    let reduction_failures = if reduce {
        let mut failures = 0u64;
        visit_flags(&f, partition, budget, &mut |flag| {
            if reduce_to_representative(flag, &f).is_err() {
                failures += 1;
            }
        })?;
        Some(failures)
    } else {
        None
    };
    let passed =
        profiles_match_classes && open_orbit_strictly_largest && reduction_failures.unwrap_or(0) == 0;

    let mut t = format!(
        "q = {q}, n = {n}, partition {partition}: {} flags, {} classes\n",
        census.total,
        classes.len()
    );
    for (s, c) in &census.counts {
        t += &format!("{:<28} {c:>10}\n", s.to_string());
    }
    t += &format!(
        "profiles match classes {}\nopen orbit strictly largest {}\n",
        yes_no(profiles_match_classes),
        yes_no(open_orbit_strictly_largest)
    );
    if let Some(k) = reduction_failures {
        t += &format!("reduction failures {k}\n");
    }
    let out = FlagsOutput {
        census,
        classes: classes.len(),
        profiles_match_classes,
        open_orbit_strictly_largest,
        reduction_failures,
        passed,
    };
    Outcome::new(&out, t, passed)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn oracle_quaternion(a: BigRational, b: BigRational) -> Result<Outcome, Error> {
    let r: QuaternionReport = quaternion_model_check(a, b)?;
    let mut t = format!(
        "alpha = {}, beta = {}\ns_epsilon = [[{}, {}], [{}, {}]]\n",
        r.alpha, r.beta, r.s_epsilon[0][0], r.s_epsilon[0][1], r.s_epsilon[1][0], r.s_epsilon[1][1]
    );
    for c in &r.checks {
        t += &format!("{:<30} {}\n", c.name, if c.passed { "pass" } else { "FAIL" });
    }
    t += &format!("passed {}\n", yes_no(r.passed));
    let ok = r.passed;
    Outcome::new(&r, t, ok)
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Enumerate { case, partition } => enumerate(case, &partition),
        Command::Support {
            case,
            m,
            d,
            chi,
            partition,
        } => support(case, m, d, chi, &partition),
        Command::Steinberg { case, m, d, chi } => steinberg(case, m, d, chi),
        Command::Sweep { max_m, max_d } => sweep(max_m, max_d),
        Command::Lfactor {
            d,
            ramified,
            at_s0,
            q,
        } => lfactor(d, ramified, at_s0, &q),
        Command::OracleFlags {
            n,
            q,
            partition,
            budget,
            cache_dir,
            reduce,
        } => oracle_flags(n, q, &partition, budget, cache_dir, reduce),
        Command::OracleQuaternion { a, b } => oracle_quaternion(a, b),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            // A closed pipe downstream is not an error of ours.
            let mut stdout = std::io::stdout().lock();
            let _ = match cli.format {
                Format::Table => write!(stdout, "{}", out.table),
                Format::Json => writeln!(stdout, "{}", out.json),
            };
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
