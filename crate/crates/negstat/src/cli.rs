//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use negstat_core::{
    closed_form_a, closed_form_b, closed_form_b_dlen, closed_form_d, construct_class,
    des_d_tabulation, descent_class_blocks_b, descent_class_blocks_d, descent_class_filter, gf,
    iter_group, statistics, verify, Caps, DescentClassSpec, DescentSet, Flavor, Group, IdentityId,
    Mode, Outcome, Series, SignedPermutation, StatKey, Status, Var, VerifyParams,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "negstat",
    version,
    about = "Statistics and equidistribution checks on signed permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every statistic of one window, e.g. "[-3,1,-6,2,-4,-5]".
    Stats {
        window: String,
        #[arg(long, value_enum, default_value_t = Output::Pretty)]
        output: Output,
    },
    /// List a descent class and its generating functions.
    Class(ClassArgs),
    /// Run identity checks ("all" for every identity).
    Verify(VerifyArgs),
    /// Evaluate a product formula for a descent class.
    ClosedForm {
        #[command(flatten)]
        target: Target,
        /// Type-D length over B(M) instead of the group's own formula.
        #[arg(long)]
        dlen: bool,
        #[arg(long, value_enum, default_value_t = Output::Pretty)]
        output: Output,
    },
    /// List a whole group.
    Enumerate {
        #[arg(long)]
        group: Group,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Group all of B_n by the type-D descent set of the inverse.
    Tabulate {
        #[arg(long)]
        n: usize,
    },
    /// List identity ids.
    List,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Tsv,
    Pretty,
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    group: Group,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=63))]
    n: u32,
    /// Comma-separated descent set such as "0,2"; empty for the empty set.
    #[arg(long, default_value = "")]
    set: String,
}

impl Target {
    fn descent_set(&self) -> anyhow::Result<DescentSet> {
        Ok(DescentSet::parse(self.n as usize, &self.set)?)
    }
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value = "subset")]
    mode: Mode,
    /// Build from shuffle blocks (the default).
    #[arg(long, group = "method")]
    construct: bool,
    /// Filter the whole group.
    #[arg(long, group = "method")]
    filter: bool,
    /// Do both and compare.
    #[arg(long, group = "method")]
    both: bool,
    /// Only print the cardinality.
    #[arg(long)]
    count: bool,
    /// Statistics to tabulate, comma-separated (defaults depend on the group).
    #[arg(long, value_delimiter = ',')]
    gf: Vec<StatKey>,
    #[arg(long, value_enum, default_value_t = Output::Pretty)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity ids, or "all".
    #[arg(required = true)]
    ids: Vec<String>,
    /// Single rank (overrides the range).
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Restrict class identities to one descent set, e.g. "0,2".
    #[arg(long)]
    set: Option<String>,
    #[arg(long, default_value = "subset")]
    mode: Mode,
    /// Series truncation, e.g. "u=4,t=10,q=10".
    #[arg(long)]
    caps: Option<Caps>,
    #[arg(long, value_enum, default_value_t = Output::Pretty)]
    output: Output,
    /// Worker threads; results keep submission order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Also write one JSON report per identity into this directory.
    #[arg(long)]
    report_dir: Option<PathBuf>,
    /// Leave elapsed times out, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Stats { window, output } => cmd_stats(&window, output, out),
        Command::Class(args) => cmd_class(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::ClosedForm {
            target,
            dlen,
            output,
        } => cmd_closed_form(&target, dlen, output, out),
        Command::Enumerate { group, n, count } => {
            if n == 0 {
                bail!("rank must be at least 1");
            }
            if count {
                writeln!(out, "{}", iter_group(group, n).count())?;
            } else {
                for p in iter_group(group, n) {
                    writeln!(out, "{p}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Tabulate { n } => {
            if n == 0 {
                bail!("rank must be at least 1");
            }
            for (set, elements) in des_d_tabulation(n) {
                let list: Vec<String> = elements.iter().map(ToString::to_string).collect();
                writeln!(out, "{set}\t{}", list.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::List => {
            for id in IdentityId::ALL {
                writeln!(out, "{:<24}{}", id.name(), id.about())?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_stats(window: &str, output: Output, out: &mut dyn Write) -> anyhow::Result<i32> {
    let p: SignedPermutation = window.parse()?;
    let s = statistics(&p);
    match output {
        Output::Json => writeln!(out, "{}", report::statistics_json(&p, &s))?,
        Output::Tsv => {
            let keys = StatKey::ALL;
            let names: Vec<&str> = keys.iter().map(|k| k.name()).collect();
            let values: Vec<String> = keys.iter().map(|k| k.of(&s).to_string()).collect();
            writeln!(out, "window\t{}\tepsilon", names.join("\t"))?;
            writeln!(out, "{p}\t{}\t{}", values.join("\t"), s.epsilon)?;
        }
        Output::Pretty => {
            writeln!(out, "window   {p}")?;
            for k in StatKey::ALL {
                writeln!(out, "{:<8} {}", k.name(), k.of(&s))?;
            }
            writeln!(out, "{:<8} {}", "epsilon", s.epsilon)?;
            writeln!(out, "Des      {}", s.des_set)?;
            writeln!(out, "Des_B    {}", s.des_b_set)?;
            writeln!(out, "Des_D    {}", s.des_d_set)?;
            writeln!(out, "NDes     {:?}", s.ndes_multiset)?;
            writeln!(out, "DDes     {:?}", s.ddes_multiset)?;
            writeln!(out, "note: {}", report::DDES_NOTE)?;
        }
    }
    Ok(EXIT_OK)
}

fn default_keys(group: Group) -> Vec<StatKey> {
    match group {
        Group::A => vec![StatKey::Inv, StatKey::Maj],
        Group::B => vec![StatKey::LenB, StatKey::Nmaj, StatKey::Fmaj],
        Group::D => vec![StatKey::LenD, StatKey::Dmaj],
    }
}

fn cmd_class(args: &ClassArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let group = args.target.group;
    let set = args.target.descent_set()?;
    let spec = DescentClassSpec::new(group, set.clone(), args.mode)?;
    let filtered = || descent_class_filter(&spec);
    let constructed = || -> anyhow::Result<Vec<SignedPermutation>> {
        // Blocks give the subset class; exact mode keeps those with the exact descent set.
        let flavor = Flavor::natural(group);
        let mut v: Vec<SignedPermutation> = construct_class(group, &set)?
            .into_iter()
            .filter(|p| args.mode == Mode::Subset || flavor.mask(&p.inverse()) == set.mask())
            .collect();
        v.sort();
        Ok(v)
    };

    let mut verdict = None;
    let elements = if args.filter {
        filtered()
    } else if args.both {
        let (a, b) = (constructed()?, filtered());
        verdict = Some(a == b);
        b
    } else {
        constructed()?
    };
    let keys = if args.gf.is_empty() {
        default_keys(group)
    } else {
        args.gf.clone()
    };
    let gfs: Vec<(StatKey, Series)> = keys
        .iter()
        .map(|&k| Ok((k, gf(&elements, &[(k, Var::Q)], Caps::unbounded())?)))
        .collect::<anyhow::Result<_>>()?;

    match args.output {
        Output::Json => {
            let mut v = json!({
                "group": group.to_string(),
                "n": set.rank(),
                "set": set.members(),
                "mode": args.mode.to_string(),
                "count": elements.len(),
                "gf": gfs.iter().map(|(k, s)| (k.name().to_string(), report::series_json(s))).collect::<serde_json::Map<_, _>>(),
            });
            if !args.count {
                v["elements"] = elements
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .into();
            }
            if let Some(eq) = verdict {
                v["construct_equals_filter"] = eq.into();
            }
            writeln!(out, "{v}")?;
        }
        Output::Tsv | Output::Pretty => {
            if args.construct || !(args.filter || args.both) {
                write_blocks(group, &set, out)?;
            }
            if args.count {
                writeln!(out, "count\t{}", elements.len())?;
            } else {
                for p in &elements {
                    writeln!(out, "{p}")?;
                }
                writeln!(out, "count\t{}", elements.len())?;
            }
            for (k, s) in &gfs {
                writeln!(out, "gf {k}\t{s}")?;
            }
            if let Some(eq) = verdict {
                writeln!(out, "construct == filter\t{eq}")?;
            }
        }
    }
    Ok(if verdict == Some(false) {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}

fn write_blocks(group: Group, set: &DescentSet, out: &mut dyn Write) -> anyhow::Result<()> {
    match group {
        Group::A => {}
        Group::B => {
            for (r, block) in descent_class_blocks_b(set) {
                writeln!(out, "block r={r:?}\t{block}")?;
            }
        }
        Group::D => {
            for (tag, r, block) in descent_class_blocks_d(set) {
                writeln!(out, "block {tag} r={r:?}\t{block}")?;
            }
        }
    }
    Ok(())
}

fn cmd_closed_form(
    target: &Target,
    dlen: bool,
    output: Output,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let set = target.descent_set()?;
    let series = match (target.group, dlen) {
        (Group::B, true) => closed_form_b_dlen(&set),
        (_, true) => bail!("--dlen applies to group B"),
        (Group::A, false) => closed_form_a(&set)?,
        (Group::B, false) => closed_form_b(&set),
        (Group::D, false) => closed_form_d(&set)?,
    };
    match output {
        Output::Json => writeln!(out, "{}", report::series_json(&series))?,
        _ => writeln!(out, "{series}")?,
    }
    Ok(EXIT_OK)
}

struct Job {
    id: IdentityId,
    params: VerifyParams,
    result: Result<Outcome, String>,
    elapsed: Duration,
}

fn resolve_ids(names: &[String]) -> (Vec<IdentityId>, Vec<String>) {
    let mut ids = Vec::new();
    let mut unknown = Vec::new();
    for name in names {
        if name == "all" {
            ids.extend(IdentityId::ALL.iter().copied());
        } else {
            match name.parse::<IdentityId>() {
                Ok(id) => ids.push(id),
                Err(_) => unknown.push(name.clone()),
            }
        }
    }
    (ids, unknown)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (ids, unknown) = resolve_ids(&args.ids);
    let (n_min, n_max) = match args.n {
        Some(n) => (n, n),
        None => (args.n_min, args.n_max),
    };
    if n_max == 0 || n_min > n_max {
        bail!("empty rank range {n_min}..={n_max}");
    }
    let mut base = VerifyParams::range(n_min, n_max).with_mode(args.mode);
    if let Some(text) = &args.set {
        // Validated against the largest rank; smaller ranks skip members that do not fit.
        base = base.with_set(DescentSet::parse(n_max, text)?.members().to_vec());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs as usize)
        .build()
        .context("building worker pool")?;
    let jobs: Vec<Job> = pool.install(|| {
        ids.par_iter()
            .map(|&id| {
                let mut params = base.clone();
                params.caps = args.caps.or(id.default_caps());
                let start = Instant::now();
                let result = verify(id, &params).map_err(|e| e.to_string());
                Job {
                    id,
                    params,
                    result,
                    elapsed: start.elapsed(),
                }
            })
            .collect()
    });

    if let Some(dir) = &args.report_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for job in &jobs {
            if let Ok(o) = &job.result {
                let path = dir.join(format!("{}.json", job.id));
                let text = serde_json::to_string_pretty(&report::outcome_json(
                    o,
                    &job.params,
                    timing(args, job),
                ))?;
                std::fs::write(&path, text + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }

    match args.output {
        Output::Json => {
            let reports: Vec<Value> = jobs
                .iter()
                .map(|job| match &job.result {
                    Ok(o) => report::outcome_json(o, &job.params, timing(args, job)),
                    Err(e) => json!({ "identity_id": job.id.name(), "error": e }),
                })
                .collect();
            writeln!(out, "{}", Value::Array(reports))?;
        }
        Output::Tsv => {
            writeln!(out, "{}", report::TSV_HEADER)?;
            for job in &jobs {
                match &job.result {
                    Ok(o) => writeln!(out, "{}", report::tsv_row(o, timing(args, job)))?,
                    Err(e) => writeln!(out, "{}\terror\t0\t-\t{e}", job.id)?,
                }
            }
        }
        Output::Pretty => {
            for job in &jobs {
                match &job.result {
                    Ok(o) => {
                        let time = timing(args, job)
                            .map(|d| format!(", {:.2}s", d.as_secs_f64()))
                            .unwrap_or_default();
                        let tag = if o.status == Status::Pass {
                            "PASS"
                        } else {
                            "FAIL"
                        };
                        writeln!(out, "{tag}  {:<24}{} checks{time}", o.id.name(), o.checks)?;
                        if let Some(w) = &o.witness {
                            writeln!(
                                out,
                                "      {}: coefficient of {} is {} vs {}",
                                w.label, w.monomial, w.lhs, w.rhs
                            )?;
                        }
                        for note in &o.notes {
                            writeln!(out, "      note: {note}")?;
                        }
                    }
                    Err(e) => writeln!(out, "ERROR {:<24}{e}", job.id.name())?,
                }
            }
        }
    }
    for name in &unknown {
        writeln!(
            out,
            "unknown identity `{name}` skipped (see `negstat list`)"
        )?;
    }

    let failed = jobs
        .iter()
        .any(|j| matches!(&j.result, Ok(o) if o.status == Status::Fail));
    let errored = jobs.iter().any(|j| j.result.is_err());
    Ok(if !unknown.is_empty() || errored {
        EXIT_USAGE
    } else if failed {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}

fn timing(args: &VerifyArgs, job: &Job) -> Option<Duration> {
    (!args.no_timing).then_some(job.elapsed)
}
