//! The `homshift` command-line front end.
//!
//! Exit status: 0 for YES or success, 1 for NO, 2 for any error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::amalgamation::{amalgamate_rounds, random_split_walk, total_amalgamation};
use crate::automaton::EdgeTreeAutomaton;
use crate::block::{count_blocks, enumerate_blocks, DEFAULT_BLOCK_CAP};
use crate::compiler::compile;
use crate::conjugacy::decide_conjugacy;
use crate::error::{Error, Result};
use crate::homdecide::{
    check_symmetric, decide_directed_hom, decide_hom, synthesize_directed_hom, HomDecision,
};
use crate::io::{directed_dot, undirected_dot, Document, Meta};
use crate::oracle::verify_split_roundtrip;

const AFTER_HELP: &str = "\
Exit status: 0 = YES or success, 1 = NO, 2 = error.
Inputs are JSON documents; commands taking an automaton also accept an sft
document, which is compiled first. An automaton accepting no infinite tree
is trivially YES for every check, with an empty witness graph.
HOMSHIFT_NODE_BUDGET bounds isomorphism and cube searches,
HOMSHIFT_STATE_CAP bounds the compiler.";

#[derive(Parser, Debug)]
#[command(name = "homshift", version, about = "Decide whether tree-shifts of finite type are Hom shifts", after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the result document here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Record the tool version and command line in the output document.
    #[arg(long, global = true)]
    meta: bool,
    /// Emit witness graphs in Graphviz format instead of JSON.
    #[arg(long, global = true)]
    dot: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile an sft document into a trim edge tree automaton.
    Compile { input: PathBuf },
    /// Remove states that accept no infinite tree.
    Trim { input: PathBuf },
    /// Merge states with equal columns.
    Amalgamate {
        input: PathBuf,
        /// Merge until nothing merges.
        #[arg(long, conflicts_with = "rounds", required_unless_present = "rounds")]
        total: bool,
        /// Apply at most this many rounds.
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Decide whether the shift is conjugate to a Hom shift.
    Check {
        input: PathBuf,
        /// Undirected Hom shift.
        #[arg(
            long,
            conflicts_with = "directed_hom",
            required_unless_present = "directed_hom"
        )]
        hom: bool,
        /// Directed Hom tree-shift.
        #[arg(long)]
        directed_hom: bool,
        /// With --directed-hom: only test symmetry and emit the graph that
        /// splits each state by unordered child multiset.
        #[arg(long, requires = "directed_hom")]
        multiset_split: bool,
    },
    /// Decide whether two shifts are conjugate.
    Conjugate { left: PathBuf, right: PathBuf },
    /// Apply random out-splittings.
    Split {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        rounds: usize,
    },
    /// List or count the blocks of a given height.
    Blocks {
        input: PathBuf,
        #[arg(long)]
        height: usize,
        /// Print only the counts.
        #[arg(long)]
        count_only: bool,
    },
    /// Run a brute-force self-check.
    Verify {
        input: PathBuf,
        /// Split at random, amalgamate, and compare with the original.
        #[arg(long, required = true)]
        roundtrip: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
    },
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let command: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut ctx = Ctx {
        out: &cli.out,
        command,
        stdout,
        stderr,
    };
    match execute(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

struct Ctx<'a> {
    out: &'a OutputArgs,
    command: Vec<String>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit_text(&mut self, text: &str) -> Result<()> {
        match &self.out.output {
            Some(path) => std::fs::write(path, text)?,
            None => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit(&mut self, doc: Document) -> Result<()> {
        let doc = if self.out.meta {
            doc.with_meta(Meta {
                tool: "homshift".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: self.command.clone(),
            })
        } else {
            doc
        };
        self.emit_text(&doc.to_json())
    }

    fn note(&mut self, text: &str) -> Result<()> {
        writeln!(self.stderr, "{text}")?;
        Ok(())
    }
}

fn load_automaton(path: &Path) -> Result<EdgeTreeAutomaton> {
    let doc = Document::read(path)?;
    match doc {
        Document::Sft { .. } => Ok(compile(&doc.to_sft()?)?.automaton),
        _ => doc.to_automaton(),
    }
}

fn execute(command: &Command, ctx: &mut Ctx) -> Result<i32> {
    match command {
        Command::Compile { input } => {
            let p = Document::read(input)?.to_sft()?;
            let c = compile(&p)?;
            if c.is_empty_shift() {
                ctx.note("note: the shift is empty")?;
            }
            ctx.emit(Document::from(&c.automaton))?;
            Ok(0)
        }
        Command::Trim { input } => {
            let a = load_automaton(input)?;
            ctx.emit(Document::from(&a.trim()))?;
            Ok(0)
        }
        Command::Amalgamate {
            input,
            total,
            rounds,
        } => {
            let a = load_automaton(input)?;
            let result = if *total {
                total_amalgamation(&a)
            } else {
                amalgamate_rounds(&a, rounds.expect("clap requires one")).result
            };
            ctx.emit(Document::from(&result))?;
            Ok(0)
        }
        Command::Check {
            input,
            hom,
            multiset_split,
            ..
        } => {
            let a = load_automaton(input)?;
            if *hom {
                report_hom(decide_hom(&a)?, ctx, undirected_dot)
            } else if *multiset_split {
                check_multiset_split(&a, ctx)
            } else {
                report_hom(decide_directed_hom(&a)?, ctx, directed_dot)
            }
        }
        Command::Conjugate { left, right } => {
            let a = load_automaton(left)?;
            let b = load_automaton(right)?;
            let decision = decide_conjugacy(&a, &b)?;
            match &decision.isomorphism {
                Some(iso) => {
                    let mut text = String::from("YES\n");
                    for (i, &j) in iso.mapping.iter().enumerate() {
                        text.push_str(&format!(
                            "{} -> {}\n",
                            decision.left.state_name(i),
                            decision.right.state_name(j)
                        ));
                    }
                    ctx.emit_text(&text)?;
                    Ok(0)
                }
                None => {
                    ctx.emit_text("NO\n")?;
                    ctx.note(&format!(
                        "total amalgamations are not isomorphic ({} and {} states)",
                        decision.left.num_states(),
                        decision.right.num_states()
                    ))?;
                    Ok(1)
                }
            }
        }
        Command::Split {
            input,
            seed,
            rounds,
        } => {
            let a = load_automaton(input)?;
            ctx.emit(Document::from(&random_split_walk(&a, *rounds, *seed)))?;
            Ok(0)
        }
        Command::Blocks {
            input,
            height,
            count_only,
        } => {
            let a = load_automaton(input)?.trim();
            let mut text = String::new();
            if *count_only {
                let table = count_blocks(&a, *height)?;
                text.push_str(&format!("total {}\n", table.total()));
                for (p, c) in table.per_state.iter().enumerate() {
                    text.push_str(&format!("{} {c}\n", a.state_name(p)));
                }
            } else {
                for b in enumerate_blocks(&a, *height, DEFAULT_BLOCK_CAP)? {
                    text.push_str(&format!("{}\n", b.map(|l| l.display(&a))));
                }
            }
            ctx.emit_text(&text)?;
            Ok(0)
        }
        Command::Verify {
            input,
            seed,
            rounds,
            ..
        } => {
            let a = load_automaton(input)?;
            let report = verify_split_roundtrip(&a, *rounds, *seed)?;
            let sizes: Vec<String> = report.sizes.iter().map(ToString::to_string).collect();
            let text = format!(
                "{}\nsplit sizes: {}\nfixpoint states: {} and {}\n{}\n",
                if report.passed { "PASS" } else { "FAIL" },
                sizes.join(" "),
                report.original_fixpoint_states,
                report.split_fixpoint_states,
                report.message
            );
            ctx.emit_text(&text)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn report_hom<G, V>(
    decision: HomDecision<G, V>,
    ctx: &mut Ctx,
    dot: impl Fn(&G) -> String,
) -> Result<i32>
where
    for<'a> &'a G: Into<Document>,
{
    match decision {
        HomDecision::Yes {
            witness,
            degenerate,
            ..
        } => {
            ctx.note(if degenerate {
                "YES (empty shift)"
            } else {
                "YES"
            })?;
            if ctx.out.dot {
                ctx.emit_text(&dot(&witness.graph))?;
            } else {
                ctx.emit((&witness.graph).into())?;
            }
            Ok(0)
        }
        HomDecision::No { reason, .. } => {
            ctx.note(&format!("NO: {reason}"))?;
            Ok(1)
        }
    }
}

fn check_multiset_split(a: &EdgeTreeAutomaton, ctx: &mut Ctx) -> Result<i32> {
    let k = total_amalgamation(&a.trim());
    if let Err(v) = check_symmetric(&k) {
        ctx.note(&format!("NO: {}", v.describe(&k)))?;
        return Ok(1);
    }
    let w = match synthesize_directed_hom(&k) {
        Ok(w) => w,
        Err(Error::NotTrim) => unreachable!("total amalgamation of a trim automaton is trim"),
        Err(e) => return Err(e),
    };
    ctx.note("symmetric; the graph is not checked against the shift")?;
    if ctx.out.dot {
        ctx.emit_text(&directed_dot(&w.graph))?;
    } else {
        ctx.emit(Document::from(&w.graph))?;
    }
    Ok(0)
}
