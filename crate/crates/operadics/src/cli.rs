//! The `operadics` command line.
//!
//! One binary, subcommand style. Every verification subcommand exits 0 when
//! all requested checks pass, 1 when a check fails (the report names the
//! offending instances), 2 on malformed input, and 3 when a computation
//! cannot be stated inside the truncation. JSON output is canonically
//! ordered, so identical inputs produce byte-identical reports.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance;
use crate::coproduct::{idempotent_monoid, OperadCoproduct, Side, Word};
use crate::cosimplicial::{build_cosimplicial, compare_hochschild};
use crate::elem::Elem;
use crate::graded::GradedSet;
use crate::modules::{hochschild, module_endomorphism_operad, splitting_resolution, RightModule};
use crate::report::Report;
use crate::schema;
use crate::table::{Multiplication, TableOperad};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "operadics",
    version,
    about = "Planar operads over finite graded sets: build, verify, resolve"
)]
pub struct Cli {
    /// Output format for reports and artifacts.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the formatted output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the embarrassingly parallel sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = acceptance::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the operad axioms of a JSON operad file ("-" reads stdin).
    VerifyOperad { file: String },
    /// Print the operad with a single point at every level, as JSON.
    MakeAssoc { level_bound: u32 },
    /// Print the endomorphism operad of {0, .., size-1}, as JSON.
    MakeEndSet { size: u64, level_bound: u32 },
    /// Rewrite a coproduct word to its normal form.
    CoproductNormalize {
        #[command(flatten)]
        pair: PairArgs,
        /// Word as a JSON file ("-" reads stdin).
        #[arg(long)]
        word: Option<String>,
        /// Level-one word as root-first letters, e.g. "p:a,p:a,q:1,q:a".
        #[arg(long)]
        chain: Option<String>,
    },
    /// Count words, collapsible words, and normal forms per branch count, and
    /// check the filtration recursion.
    CoproductCensus {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        max_beta: u32,
        /// Also classify by congruence closure and compare.
        #[arg(long)]
        with_oracle: bool,
    },
    /// Classify words by congruence closure and check one normal form per
    /// class.
    CoproductOracle {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        max_beta: u32,
    },
    /// Build the Hochschild resolution and verify its identities.
    Hochschild {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        /// Level truncation; defaults to the operad's own bound.
        #[arg(long)]
        level_bound: Option<u32>,
    },
    /// Build the splitting resolution of a free operad and report its path
    /// components.
    #[command(name = "pi0-j")]
    Pi0J {
        /// Generator levels, comma separated (e.g. "2" for one binary
        /// generator).
        #[arg(long)]
        generator_levels: String,
        #[arg(long, default_value_t = 1)]
        k_max: u32,
        #[arg(long, default_value_t = 3)]
        max_level: u32,
        #[arg(long, default_value_t = 3)]
        max_nodes: u32,
    },
    /// Enumerate the endomorphism operad of an operad as a module over
    /// itself, and compare it with the operad.
    EndOperad {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        /// Cap on the backtracking search.
        #[arg(long, default_value_t = 1 << 22)]
        cap: u64,
    },
    /// The cosimplicial object of a multiplicative operad.
    Cosimplicial {
        #[command(subcommand)]
        action: CosimplicialCmd,
    },
    /// Run the full acceptance suite.
    Selftest,
}

#[derive(Args)]
pub struct PairArgs {
    /// Left operad as a JSON file.
    #[arg(long)]
    p: Option<String>,
    /// Right operad as a JSON file.
    #[arg(long)]
    q: Option<String>,
    /// Use the idempotent two-element monoid on both sides.
    #[arg(long)]
    monoid_idempotent: bool,
    /// Use the self-map monoid of a set of this size on both sides.
    #[arg(long)]
    end_monoid: Option<u64>,
}

impl PairArgs {
    fn build(&self) -> Result<OperadCoproduct> {
        if self.monoid_idempotent {
            return Ok(OperadCoproduct::new(
                idempotent_monoid(),
                idempotent_monoid(),
            ));
        }
        if let Some(size) = self.end_monoid {
            let m = TableOperad::endomorphism_monoid(size)?;
            return Ok(OperadCoproduct::new(m.clone(), m));
        }
        match (&self.p, &self.q) {
            (Some(p), Some(q)) => Ok(OperadCoproduct::new(
                schema::operad_from_value(&read_json(p)?)?,
                schema::operad_from_value(&read_json(q)?)?,
            )),
            _ => Err(Error::Schema(
                "choose operads: --p/--q files, --monoid-idempotent, or --end-monoid N".into(),
            )),
        }
    }
}

#[derive(Args)]
pub struct OperadArgs {
    /// Operad as a JSON file.
    #[arg(long)]
    operad: Option<String>,
    /// The operad with one point per level, at this bound.
    #[arg(long)]
    assoc: Option<u32>,
    /// Endomorphism operad of a finite set: "size,level_bound".
    #[arg(long)]
    end_set: Option<String>,
}

impl OperadArgs {
    fn build(&self) -> Result<TableOperad> {
        if let Some(bound) = self.assoc {
            return Ok(TableOperad::associative(bound));
        }
        if let Some(spec) = &self.end_set {
            let (size, bound) = spec
                .split_once(',')
                .and_then(|(s, l)| Some((s.trim().parse().ok()?, l.trim().parse().ok()?)))
                .ok_or_else(|| Error::Schema("--end-set takes \"size,level_bound\"".into()))?;
            return TableOperad::endomorphism_of_set(size, bound);
        }
        if let Some(file) = &self.operad {
            return schema::operad_from_value(&read_json(file)?);
        }
        Err(Error::Schema(
            "choose an operad: --operad FILE, --assoc L, or --end-set S,L".into(),
        ))
    }
}

#[derive(Subcommand)]
pub enum CosimplicialCmd {
    /// Build the object and print its level sizes.
    Build(CosimplicialArgs),
    /// Build the object and verify the cosimplicial identities.
    Check(CosimplicialArgs),
    /// Compute the discrete limit.
    Limit(CosimplicialArgs),
    /// Compare with the operators transported from the bar resolution.
    Compare(CosimplicialArgs),
}

#[derive(Args)]
pub struct CosimplicialArgs {
    /// Use the operad with one point per level.
    #[arg(long)]
    assoc: bool,
    /// Use the endomorphism operad of a set of this size.
    #[arg(long)]
    end_set: Option<u64>,
    /// Operad as a JSON file.
    #[arg(long)]
    operad: Option<String>,
    /// Level truncation; defaults to max(degrees, 2).
    #[arg(long)]
    level_bound: Option<u32>,
    /// Name of the level-2 product element ("max"/"min" work for sets).
    #[arg(long)]
    mu: Option<String>,
    /// Name of the level-0 unit element.
    #[arg(long)]
    eps: Option<String>,
    /// Top cosimplicial degree.
    #[arg(long = "N", default_value_t = 2)]
    degrees: u32,
}

impl CosimplicialArgs {
    fn multiplication(&self) -> Result<Multiplication> {
        let bound = self.level_bound.unwrap_or(self.degrees.max(2));
        if self.assoc {
            let a = TableOperad::associative(bound.max(2));
            return Multiplication::by_names(a, "a0", "a2");
        }
        if let Some(size) = self.end_set {
            let op = TableOperad::endomorphism_of_set(size, bound.max(2))?;
            let mu = match self.mu.as_deref() {
                Some("max") => comparison_table(size, true),
                Some("min") => comparison_table(size, false),
                Some(name) => name.to_string(),
                None => return Err(Error::Schema("--mu is required for --end-set".into())),
            };
            let eps = self
                .eps
                .clone()
                .ok_or_else(|| Error::Schema("--eps is required for --end-set".into()))?;
            return Multiplication::by_names(op, &eps, &mu);
        }
        if let Some(file) = &self.operad {
            let op = schema::operad_from_value(&read_json(file)?)?;
            let (Some(eps), Some(mu)) = (&self.eps, &self.mu) else {
                return Err(Error::Schema("--eps and --mu are required".into()));
            };
            return Multiplication::by_names(op, eps, mu);
        }
        Err(Error::Schema(
            "choose an operad: --assoc, --end-set S, or --operad FILE".into(),
        ))
    }
}

/// Value table of binary max or min over {0, .., size-1}.
fn comparison_table(size: u64, take_max: bool) -> String {
    let mut out = String::with_capacity((size * size) as usize);
    for x in 0..size {
        for y in 0..size {
            let v = if take_max { x.max(y) } else { x.min(y) };
            out.push(char::from_digit(v as u32, 10).expect("single digit sizes"));
        }
    }
    out
}

fn read_json(path: &str) -> Result<Value> {
    let content = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Schema(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&content).map_err(|e| Error::Schema(format!("parsing {path}: {e}")))
}

struct Output {
    text: String,
    json: Value,
    dot: Option<String>,
    passed: bool,
}

impl Output {
    fn from_report(report: &Report) -> Output {
        Output {
            text: report.to_text(),
            json: json!({ "report": serde_json::to_value(report).expect("serializable") }),
            dot: None,
            passed: report.passed(),
        }
    }
}

fn parse_chain(cop: &OperadCoproduct, chain: &str) -> Result<Word> {
    let letters = chain
        .split(',')
        .map(|tok| {
            let (side, name) = tok
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Schema(format!("chain letter {tok:?} is not side:name")))?;
            let side = match side.trim() {
                "p" | "P" => Side::Left,
                "q" | "Q" => Side::Right,
                other => return Err(Error::Schema(format!("unknown side {other:?}"))),
            };
            Ok((side, name.trim()))
        })
        .collect::<Result<Vec<_>>>()?;
    cop.word_from_chain(&letters)
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::VerifyOperad { file } => {
            let op = schema::operad_from_value(&read_json(file)?)?;
            Ok(Output::from_report(&op.verify()))
        }
        Command::MakeAssoc { level_bound } => {
            let v = schema::operad_to_value(&TableOperad::associative(*level_bound))?;
            Ok(Output {
                text: serde_json::to_string_pretty(&v).expect("serializable"),
                json: v,
                dot: None,
                passed: true,
            })
        }
        Command::MakeEndSet { size, level_bound } => {
            let v =
                schema::operad_to_value(&TableOperad::endomorphism_of_set(*size, *level_bound)?)?;
            Ok(Output {
                text: serde_json::to_string_pretty(&v).expect("serializable"),
                json: v,
                dot: None,
                passed: true,
            })
        }
        Command::CoproductNormalize { pair, word, chain } => {
            let cop = pair.build()?;
            let input = match (word, chain) {
                (Some(file), None) => cop.word_from_value(&read_json(file)?)?,
                (None, Some(c)) => parse_chain(&cop, c)?,
                _ => {
                    return Err(Error::Schema(
                        "provide exactly one of --word or --chain".into(),
                    ))
                }
            };
            let nf = cop.normalize(&input)?;
            let dot = nf.to_dot("normal_form", |l| match &l.payload {
                crate::coproduct::Payload::Op(r) => format!(
                    "{}:{}",
                    if l.comp == 0 { "p" } else { "q" },
                    cop.side(if l.comp == 0 { Side::Left } else { Side::Right })
                        .name_of(*r)
                ),
                crate::coproduct::Payload::Gen(e) => e.to_string(),
            });
            Ok(Output {
                text: format!("input:  {input}\nnormal: {nf}\n"),
                json: json!({
                    "input": cop.word_to_value(&input),
                    "normal_form": cop.word_to_value(&nf),
                }),
                dot: Some(dot),
                passed: true,
            })
        }
        Command::CoproductCensus {
            pair,
            level,
            max_beta,
            with_oracle,
        } => {
            let cop = pair.build()?;
            let census = cop.census(*level, *max_beta, cli.jobs)?;
            let mut text = format!("census at level {level}\n");
            for k in 0..=*max_beta as usize {
                text.push_str(&format!(
                    "k={k}: words={} collapsible={} normal<=k={}\n",
                    census.t[k], census.c[k], census.f[k]
                ));
            }
            let mut passed = census.recursion_holds;
            text.push_str(if census.recursion_holds {
                "recursion holds\n"
            } else {
                "recursion FAILS\n"
            });
            let mut oracle_json = Value::Null;
            if *with_oracle {
                let (words, classes, report) = cop.oracle(*level, *max_beta)?;
                let mut match_ok = report.passed();
                for k in 0..=*max_beta {
                    let reached = classes
                        .iter()
                        .filter(|cl| {
                            cl.iter().map(|&i| words[i].branch_count()).min().unwrap() <= k
                        })
                        .count() as u64;
                    if reached != census.f[k as usize] {
                        match_ok = false;
                    }
                }
                text.push_str(if match_ok {
                    "oracle classes agree\n"
                } else {
                    "oracle classes DISAGREE\n"
                });
                passed = passed && match_ok;
                oracle_json = json!({ "classes": classes.len(), "agrees": match_ok });
            }
            Ok(Output {
                text,
                json: json!({ "census": census, "oracle": oracle_json }),
                dot: None,
                passed,
            })
        }
        Command::CoproductOracle {
            pair,
            level,
            max_beta,
        } => {
            let cop = pair.build()?;
            let (words, classes, report) = cop.oracle(*level, *max_beta)?;
            let mut out = Output::from_report(&report);
            out.text.push_str(&format!(
                "{} words in {} classes\n",
                words.len(),
                classes.len()
            ));
            out.json = json!({
                "words": words.len(),
                "classes": classes.len(),
                "report": serde_json::to_value(&report).expect("serializable"),
            });
            Ok(out)
        }
        Command::Hochschild {
            operad,
            n_max,
            level_bound,
        } => {
            let op = operad.build()?;
            let bound = level_bound.unwrap_or(op.level_bound());
            let h = hochschild(&op, *n_max, bound)?;
            let report = h.check();
            let sizes: Vec<Vec<usize>> = (0..=h.simplicial.top_degree())
                .map(|n| h.simplicial.degree(n).sizes())
                .collect();
            let mut out = Output::from_report(&report);
            out.json = json!({
                "degree_sizes": sizes,
                "report": serde_json::to_value(&report).expect("serializable"),
            });
            Ok(out)
        }
        Command::Pi0J {
            generator_levels,
            k_max,
            max_level,
            max_nodes,
        } => {
            let levels: Vec<u32> = generator_levels
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Schema(format!("bad generator level {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let bound = levels.iter().copied().max().unwrap_or(0);
            let mut by_level: Vec<Vec<Elem>> = vec![Vec::new(); bound as usize + 1];
            for (k, l) in levels.iter().enumerate() {
                by_level[*l as usize].push(Elem::atom(*l, format!("g{k}")));
            }
            let gens = GradedSet::new(by_level)?;
            let res = splitting_resolution(&gens, *k_max, *max_level, *max_nodes)?;
            let mut report = res.simplicial.check_identities();
            let (counts, pi0) = res.pi0_report()?;
            report.extend(pi0);
            let mut out = Output::from_report(&report);
            out.text = format!("components by level: {counts:?}\n{}", out.text);
            out.json = json!({
                "components_by_level": counts,
                "report": serde_json::to_value(&report).expect("serializable"),
            });
            Ok(out)
        }
        Command::EndOperad { operad, n_max, cap } => {
            let op = operad.build()?;
            let module = RightModule::over_self(&op, op.level_bound())?;
            let end = module_endomorphism_operad(&module, *n_max, *cap)?;
            let mut report = end.operad.verify();
            report.extend(end.compare_with_operad(&module)?);
            let sizes: Vec<usize> = end.maps.iter().map(Vec::len).collect();
            let mut out = Output::from_report(&report);
            out.text = format!("maps by arity: {sizes:?}\n{}", out.text);
            out.json = json!({
                "maps_by_arity": sizes,
                "report": serde_json::to_value(&report).expect("serializable"),
            });
            Ok(out)
        }
        Command::Cosimplicial { action } => {
            let (args, mode) = match action {
                CosimplicialCmd::Build(a) => (a, "build"),
                CosimplicialCmd::Check(a) => (a, "check"),
                CosimplicialCmd::Limit(a) => (a, "limit"),
                CosimplicialCmd::Compare(a) => (a, "compare"),
            };
            let m = args.multiplication()?;
            match mode {
                "build" => {
                    let c = build_cosimplicial(&m, args.degrees)?;
                    let sizes: Vec<usize> = c.levels.iter().map(Vec::len).collect();
                    Ok(Output {
                        text: format!("level sizes: {sizes:?}\n"),
                        json: json!({ "level_sizes": sizes }),
                        dot: None,
                        passed: true,
                    })
                }
                "check" => {
                    let c = build_cosimplicial(&m, args.degrees)?;
                    Ok(Output::from_report(&c.check()))
                }
                "limit" => {
                    let c = build_cosimplicial(&m, args.degrees.max(1))?;
                    let limit = c.discrete_limit()?;
                    let names: Vec<String> = limit.iter().map(|r| c.host.name_of(*r)).collect();
                    Ok(Output {
                        text: format!("limit size {}: {names:?}\n", names.len()),
                        json: json!({ "size": names.len(), "elements": names }),
                        dot: None,
                        passed: true,
                    })
                }
                _ => Ok(Output::from_report(&compare_hochschild(&m, args.degrees)?)),
            }
        }
        Command::Selftest => {
            let report = acceptance::run_all(cli.seed, cli.jobs)?;
            Ok(Output::from_report(&report))
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let content = match cli.format {
                Format::Text => output.text.clone(),
                Format::Json => {
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&output.json).expect("serializable")
                    )
                }
                Format::Dot => match &output.dot {
                    Some(d) => d.clone(),
                    None => {
                        eprintln!("error: this subcommand has no DOT output");
                        return ExitCode::from(2);
                    }
                },
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, content) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{content}"),
            }
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::TruncationExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
