//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on domain errors (and failed `verify`
//! checks), 2 on usage errors.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, INPUT_LIMIT};
use crate::incentive::{
    closure_members, closure_membership, closure_msg, is_admissible, is_incentive, ClosureKind,
    IncentiveSpec,
};
use crate::monoid::{join, GenSet};
use crate::sequence::SequenceModel;
use crate::tree::{
    brute_force_family, decompose_with, enumerate_tree_with, EnumerationBound, TreeOptions,
};

/// Parses a comma-separated integer set: `"-3,2"` → `[-3, 2]`, sorted and
/// deduplicated.
pub fn parse_set(literal: &str) -> Result<Vec<i64>, String> {
    let mut values = parse_list(literal)?;
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

/// Like [`parse_set`] but keeps order and repetitions.
pub fn parse_list(literal: &str) -> Result<Vec<i64>, String> {
    if literal.trim().is_empty() {
        return Err("empty set literal".into());
    }
    literal
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| format!("`{tok}` is not a decimal integer"))?;
            if v.abs() > INPUT_LIMIT {
                return Err(format!("{v} exceeds 2^31 in absolute value"));
            }
            Ok(v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct IntSet(Vec<i64>);

fn int_set(s: &str) -> Result<IntSet, String> {
    parse_set(s).map(IntSet)
}

fn int_list(s: &str) -> Result<IntSet, String> {
    parse_list(s).map(IntSet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(
    name = "incentives",
    about = "C-incentive submonoids of the natural numbers",
    after_help = "Sets are comma-separated decimal integers, e.g. --c=-3,2. \
                  Zeros in X are ignored since they never change the closure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct BoundArgs {
    #[arg(long)]
    max_frobenius: Option<u64>,
    /// Default bound when none is given: 20
    #[arg(long)]
    max_genus: Option<u64>,
    #[arg(long)]
    max_depth: Option<u64>,
}

impl BoundArgs {
    fn bound(&self) -> EnumerationBound {
        match (self.max_frobenius, self.max_genus, self.max_depth) {
            (Some(k), _, _) => EnumerationBound::MaxFrobenius(k),
            (_, _, Some(k)) => EnumerationBound::MaxDepth(k),
            (_, Some(k), _) => EnumerationBound::MaxGenus(k),
            _ => EnumerationBound::MaxGenus(20),
        }
    }
}

#[derive(Args, Debug)]
struct TreeArgs {
    #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
    c: IntSet,
    /// Required subset X (restricts the tree to semigroups containing it)
    #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
    x: Option<IntSet>,
    #[command(flatten)]
    bound: BoundArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Cross-check every expansion by recomputing from scratch
    #[arg(long)]
    debug_checks: bool,
}

impl TreeArgs {
    fn options(&self) -> TreeOptions {
        TreeOptions {
            debug_checks: self.debug_checks,
            threads: self.threads,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// θ(C) = −min(C ∪ {0})
    Theta {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        c: IntSet,
    },
    /// Whether some C-incentive contains X
    Admissible {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        c: IntSet,
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        x: IntSet,
    },
    /// Whether ⟨gens⟩ is a C-incentive
    CheckIncentive {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        c: IntSet,
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        gens: IntSet,
    },
    /// Minimal generators of the smallest C-incentive containing X
    Closure {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        c: IntSet,
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        x: IntSet,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Membership of n in the closure of X (with --c/--x) or in ⟨gens⟩
    Membership {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true, requires = "x")]
        c: Option<IntSet>,
        #[arg(long, value_parser = int_set, allow_hyphen_values = true, requires = "c")]
        x: Option<IntSet>,
        #[arg(long, value_parser = int_set, allow_hyphen_values = true, conflicts_with_all = ["c", "x"], required_unless_present = "c")]
        gens: Option<IntSet>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Tree of numerical C-incentives (containing X)
    Tree(TreeArgs),
    /// Split C-incentives by gcd into scaled numerical trees
    Decompose(TreeArgs),
    /// Pricing-promotion model M(A,B)
    Mab {
        #[command(subcommand)]
        action: MabCommand,
    },
    /// Cross-check independent computations
    Verify {
        #[command(subcommand)]
        action: VerifyCommand,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_parser = int_set)]
    a: IntSet,
    #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
    b: IntSet,
}

impl ModelArgs {
    fn model(&self) -> Result<SequenceModel, Error> {
        SequenceModel::new(self.a.0.iter().copied(), self.b.0.iter().copied())
    }
}

#[derive(Subcommand, Debug)]
enum MabCommand {
    /// Total of an (A,B)-sequence
    Invoice {
        #[command(flatten)]
        model: ModelArgs,
        /// The sequence x_1,…,x_n in order
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        seq: IntSet,
    },
    /// Whether n is an attainable invoice (or 0)
    Member {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// All attainable invoices up to --bound
    Set {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        bound: u32,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// M(A,B) equals the smallest (B∖{0})-incentive containing A on [0, bound]
    Theorem5 {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        bound: u32,
    },
    /// Tree enumeration equals brute-force gap-set search up to --max-frobenius
    Tree {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        c: IntSet,
        #[arg(long)]
        max_frobenius: u64,
        #[arg(long)]
        debug_checks: bool,
    },
    /// Generator fixpoint and state search agree on [0, bound]
    ClosureAgreement {
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        c: IntSet,
        #[arg(long, value_parser = int_set, allow_hyphen_values = true)]
        x: IntSet,
        #[arg(long, default_value_t = 200)]
        bound: u32,
    },
}

fn spec(c: &IntSet) -> Result<IncentiveSpec, Error> {
    IncentiveSpec::new(c.0.iter().copied())
}

enum Failure {
    Domain(Error),
    Usage(String),
    /// A verification ran and reported a mismatch.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn bool_line(b: bool) -> String {
    format!("{b}\n")
}

/// Runs the CLI on `argv` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Check(report)) => {
            let _ = out.write_all(report.as_bytes());
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
    }
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Theta { c } => Ok(format!("{}\n", spec(&c)?.theta())),
        Command::Admissible { c, x } => Ok(bool_line(is_admissible(&x.0, &spec(&c)?))),
        Command::CheckIncentive { c, gens } => {
            let g = GenSet::new(gens.0.iter().copied())?.minimal();
            Ok(bool_line(is_incentive(&g, &spec(&c)?)))
        }
        Command::Closure { c, x, format } => closure(&spec(&c)?, &x.0, format),
        Command::Membership { c, x, gens, n } => match (c, x, gens) {
            (Some(c), Some(x), _) => Ok(bool_line(closure_membership(&x.0, &spec(&c)?, n)?)),
            (_, _, Some(g)) => Ok(bool_line(GenSet::new(g.0.iter().copied())?.contains(n))),
            _ => Err(Failure::Usage("give --c and --x, or --gens".into())),
        },
        Command::Tree(args) => {
            let tree = enumerate_tree_with(
                &spec(&args.c)?,
                args.x.as_ref().map(|x| x.0.as_slice()),
                args.bound.bound(),
                &args.options(),
            )?;
            Ok(match args.format {
                Format::Text => tree.to_text(),
                Format::Json => tree.to_json() + "\n",
                Format::Dot => tree.to_dot(),
            })
        }
        Command::Decompose(args) => {
            let d = decompose_with(
                &spec(&args.c)?,
                args.x.as_ref().map(|x| x.0.as_slice()),
                args.bound.bound(),
                &args.options(),
            )?;
            match args.format {
                Format::Text => Ok(d.to_text()),
                Format::Json => Ok(d.to_json() + "\n"),
                Format::Dot => Err(Failure::Usage("decompose supports text and json".into())),
            }
        }
        Command::Mab { action } => match action {
            MabCommand::Invoice { model, seq } => {
                Ok(format!("{}\n", model.model()?.invoice(&seq.0)?))
            }
            MabCommand::Member { model, n } => Ok(bool_line(model.model()?.contains(n))),
            MabCommand::Set { model, bound } => Ok(format!(
                "{}\n",
                join(&model.model()?.members_up_to(bound as i64))
            )),
        },
        Command::Verify { action } => verify(action),
    }
}

fn closure(c: &IncentiveSpec, x: &[i64], format: Format) -> Result<String, Failure> {
    let r = closure_msg(x, c)?;
    let s = r.semigroup.as_ref();
    match format {
        Format::Json => {
            let kind = match r.kind {
                ClosureKind::Numerical => "numerical",
                ClosureKind::MultipleOf(_) => "multiple_of",
                ClosureKind::Trivial => "trivial",
            };
            let value = json!({
                "kind": kind,
                "divisor": r.divisor(),
                "msg": r.generators.generators(),
                "reduced_msg": s.map(|s| s.msg().as_slice()),
                "frobenius": s.map(|s| s.frobenius()),
                "genus": s.map(|s| s.genus()),
            });
            Ok(serde_json::to_string_pretty(&value).expect("json") + "\n")
        }
        Format::Text => Ok(match (r.kind, s) {
            (ClosureKind::Numerical, Some(s)) => format!(
                "msg: {} | frobenius: {} | genus: {}\n",
                join(r.generators.generators()),
                s.frobenius(),
                s.genus()
            ),
            (ClosureKind::MultipleOf(d), Some(s)) => format!(
                "msg: {} | gcd: {d} | reduced: {} | frobenius: {} | genus: {}\n",
                join(r.generators.generators()),
                s,
                s.frobenius(),
                s.genus()
            ),
            _ => "msg: (none) | trivial monoid {0}\n".to_string(),
        }),
        Format::Dot => Err(Failure::Usage("closure supports text and json".into())),
    }
}

fn verify(action: VerifyCommand) -> Result<String, Failure> {
    let (ok, report) = match action {
        VerifyCommand::Theorem5 { model, bound } => {
            let ok = model.model()?.verify_closure_identity(bound as i64)?;
            (ok, format!("theorem5 on [0,{bound}]: {}\n", verdict(ok)))
        }
        VerifyCommand::Tree {
            c,
            max_frobenius,
            debug_checks,
        } => {
            let c = spec(&c)?;
            let family = brute_force_family(&c, max_frobenius)?;
            let tree = enumerate_tree_with(
                &c,
                None,
                EnumerationBound::MaxFrobenius(max_frobenius),
                &TreeOptions {
                    debug_checks,
                    threads: 1,
                },
            )?;
            let brute: BTreeSet<GenSet> = family.into_keys().collect();
            let ok = tree.node_set() == brute;
            (
                ok,
                format!(
                    "tree nodes: {} | brute force: {} | {}\n",
                    tree.node_count(),
                    brute.len(),
                    verdict(ok)
                ),
            )
        }
        VerifyCommand::ClosureAgreement { c, x, bound } => {
            let c = spec(&c)?;
            let closure = closure_msg(&x.0, &c)?;
            let by_generators: Vec<i64> = (0..=bound as i64)
                .filter(|&n| closure.contains(n))
                .collect();
            let by_search = closure_members(&x.0, &c, bound as i64)?;
            let ok = by_generators == by_search;
            (
                ok,
                format!("closure agreement on [0,{bound}]: {}\n", verdict(ok)),
            )
        }
    };
    if ok {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "agree"
    } else {
        "DISAGREE"
    }
}
