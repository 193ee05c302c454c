use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use explorable::automaton::Automaton;
use explorable::constructions::{buchi_union_flatten, compose_monitor, to_13, union_condition_automaton_02, union_power};
use explorable::explore::pcp::{is_k_population_winnable, pcp_reduce, pcp_to_explorability, PcpInstance};
use explorable::explore::{explorability_bounded, is_k_explorable, ExplorabilityStatus};
use explorable::format::{parse_automaton, parse_pcp, print_automaton, print_pcp};
use explorable::game::{parse_arena, solve, Player};
use explorable::generators::atm::{atm_reduce, parse_atm};
use explorable::generators::{gen_ak, gen_bk, gen_c, gen_fig4, Fig4Side};
use explorable::hd::{is_hd_assuming_explorable, is_hd_exact, Evidence};
use explorable::limits::limits;
use explorable::membership::{equivalent_on_lassos, equivalent_on_words, member_finite, member_lasso};
use explorable::omega::{is_omega_explorable, OmegaVerdict};
use explorable::word::{parse_letters, LassoWord};
use serde_json::{json, Map, Value};

/// Explorability, history-determinism and ω-explorability of automata.
#[derive(Parser)]
#[command(name = "explore", version)]
struct Cli {
    /// Print a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Out {
    /// Write the produced file here instead of stdout.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a game arena and report both winning regions.
    SolveGame { arena: PathBuf },
    /// Smallest k ≤ max-k for which the automaton is k-explorable.
    Explorable {
        #[arg(long = "max-k")]
        max_k: usize,
        #[arg(long)]
        monitor: Option<PathBuf>,
        automaton: PathBuf,
    },
    /// Whether the automaton is k-explorable.
    KExplorable {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        monitor: Option<PathBuf>,
        automaton: PathBuf,
    },
    /// Reduce explorability of an NFA to a population-control instance.
    PcpReduce {
        automaton: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Whether Determiniser wins the k-population game.
    Population {
        #[arg(short)]
        k: usize,
        pcp: PathBuf,
    },
    /// NFA that is k-explorable iff Determiniser wins the k-population game.
    PcpToNfa {
        pcp: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// History-determinism, exactly or through G2 on an explorable input.
    Hd {
        #[arg(long, conflicts_with = "via_g2")]
        exact: bool,
        #[arg(long = "via-g2", requires = "witness_k")]
        via_g2: bool,
        #[arg(long = "witness-k")]
        witness_k: Option<usize>,
        #[arg(long)]
        monitor: Option<PathBuf>,
        automaton: PathBuf,
    },
    /// ω-explorability; Büchi and parity inputs get a Büchi reduction.
    OmegaExplorable {
        automaton: PathBuf,
        #[arg(long = "emit-reduction")]
        emit_reduction: Option<PathBuf>,
    },
    /// Automaton constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Fixture families.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Membership of a finite word or a lasso `u(v)`.
    Member { automaton: PathBuf, word: String },
    /// Bounded language equivalence with a counterexample.
    Equivalent {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Construct {
    To13 {
        automaton: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Power {
        #[arg(short)]
        k: usize,
        automaton: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Flatten {
        automaton: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Cond02 {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Run `condition` on the rank vectors emitted by `automaton`.
    Compose {
        automaton: PathBuf,
        condition: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Generate {
    Ak {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    C {
        #[command(flatten)]
        out: Out,
    },
    Bk {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    Fig4 {
        side: Side,
        #[command(flatten)]
        out: Out,
    },
    /// Reduction of an ATM and an input word over {0,1}.
    Atm {
        machine: PathBuf,
        word: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Positive,
    Negative,
    Inconclusive,
}

impl Outcome {
    fn of(b: bool) -> Self {
        if b {
            Outcome::Positive
        } else {
            Outcome::Negative
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 1,
            Outcome::Inconclusive => 2,
        }
    }
}

struct Report {
    command: &'static str,
    input: Vec<String>,
    verdict: String,
    outcome: Outcome,
    witness_k: Option<usize>,
    counterexample: Option<String>,
    extra: Map<String, Value>,
    /// Human-readable text.
    text: String,
}

impl Report {
    fn new(command: &'static str, input: &[&Path], verdict: impl Into<String>, outcome: Outcome) -> Self {
        let verdict = verdict.into();
        Report {
            command,
            input: input.iter().map(|p| p.display().to_string()).collect(),
            text: verdict.clone(),
            verdict,
            outcome,
            witness_k: None,
            counterexample: None,
            extra: Map::new(),
        }
    }

    fn text(mut self, t: impl Into<String>) -> Self {
        self.text = t.into();
        self
    }

    fn to_json(&self, ms: f64) -> Value {
        let l = limits();
        let mut v = json!({
            "schema": 1,
            "command": self.command,
            "input": self.input,
            "verdict": self.verdict,
            "timings_ms": { "total": ms },
            "channel_budget": l.channel_budget,
            "lasso_bound": l.lasso_bound,
        });
        let obj = v.as_object_mut().unwrap();
        if let Some(k) = self.witness_k {
            obj.insert("witness_k".into(), json!(k));
        }
        if let Some(c) = &self.counterexample {
            obj.insert("counterexample".into(), json!(c));
        }
        obj.extend(self.extra.clone());
        v
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<Automaton> {
    Ok(parse_automaton(&path.display().to_string(), &read(path)?)?)
}

fn load_opt(path: &Option<PathBuf>) -> Result<Option<Automaton>> {
    path.as_deref().map(load).transpose()
}

fn load_pcp(path: &Path) -> Result<PcpInstance> {
    let (nfa, target) = parse_pcp(&path.display().to_string(), &read(path)?)?;
    Ok(PcpInstance::new(nfa, target)?)
}

/// Writes `text` to `out` or returns it for stdout.
fn emit(command: &'static str, input: &[&Path], text: String, out: &Out) -> Result<Report> {
    let r = Report::new(command, input, "ok", Outcome::Positive);
    match &out.out {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
            let mut r = r.text(format!("wrote {}", p.display()));
            r.extra.insert("output_file".into(), json!(p.display().to_string()));
            Ok(r)
        }
        None => {
            let mut r = r.text(text.trim_end().to_string());
            r.extra.insert("output".into(), json!(text));
            Ok(r)
        }
    }
}

fn emit_automaton(command: &'static str, input: &[&Path], a: &Automaton, out: &Out) -> Result<Report> {
    let mut r = emit(command, input, print_automaton(a), out)?;
    r.extra.insert("states".into(), json!(a.num_states()));
    Ok(r)
}

fn region(winner: &[Player], p: Player) -> Vec<usize> {
    (0..winner.len()).filter(|&v| winner[v] == p).collect()
}

fn run(cmd: &Cmd) -> Result<Report> {
    Ok(match cmd {
        Cmd::SolveGame { arena } => {
            let (g, obj) = parse_arena(&arena.display().to_string(), &read(arena)?)?;
            let s = solve(&g, &obj);
            let w = s.winner[g.initial];
            let (r0, r1) = (region(&s.winner, Player::Zero), region(&s.winner, Player::One));
            let verdict = if w == Player::Zero { "player0" } else { "player1" };
            let mut r = Report::new("solve-game", &[arena], verdict, Outcome::of(w == Player::Zero))
                .text(format!("initial position won by {verdict}\nregion 0: {r0:?}\nregion 1: {r1:?}"));
            r.extra.insert("winning_region_0".into(), json!(r0));
            r.extra.insert("winning_region_1".into(), json!(r1));
            r
        }
        Cmd::Explorable { max_k, monitor, automaton } => {
            let a = load(automaton)?;
            let v = explorability_bounded(&a, *max_k, load_opt(monitor)?.as_ref())?;
            let levels: Vec<Value> = v.levels.iter().map(|(k, w)| json!({ "k": k, "determiniser_wins": w })).collect();
            let mut r = match v.status {
                ExplorabilityStatus::ExplorableWith(k) => {
                    let mut r = Report::new("explorable", &[automaton], format!("ExplorableWith({k})"), Outcome::Positive);
                    r.witness_k = Some(k);
                    r
                }
                ExplorabilityStatus::NotExplorableUpTo(k) => {
                    Report::new("explorable", &[automaton], format!("NotExplorableUpTo({k})"), Outcome::Inconclusive)
                }
            };
            r.extra.insert("levels".into(), json!(levels));
            r
        }
        Cmd::KExplorable { k, monitor, automaton } => {
            let a = load(automaton)?;
            let won = is_k_explorable(&a, *k, load_opt(monitor)?.as_ref())?;
            let verdict = if won { format!("{k}-explorable") } else { format!("not {k}-explorable") };
            let mut r = Report::new("k-explorable", &[automaton], verdict, Outcome::of(won));
            if won {
                r.witness_k = Some(*k);
            }
            r
        }
        Cmd::PcpReduce { automaton, out } => {
            let p = pcp_reduce(&load(automaton)?)?;
            let mut r = emit("pcp-reduce", &[automaton], print_pcp(&p.nfa, p.target), out)?;
            r.extra.insert("states".into(), json!(p.nfa.num_states()));
            r.extra.insert("target".into(), json!(p.target));
            r
        }
        Cmd::Population { k, pcp } => {
            let won = is_k_population_winnable(&load_pcp(pcp)?, *k)?;
            let verdict = if won { "determiniser" } else { "spoiler" };
            Report::new("population", &[pcp], verdict, Outcome::of(won))
                .text(format!("{verdict} wins the {k}-population game"))
        }
        Cmd::PcpToNfa { pcp, out } => {
            let a = pcp_to_explorability(&load_pcp(pcp)?)?;
            emit_automaton("pcp-to-nfa", &[pcp], &a, out)?
        }
        Cmd::Hd { exact: _, via_g2, witness_k, monitor, automaton } => {
            let a = load(automaton)?;
            let user = load_opt(monitor)?;
            let hd = if *via_g2 {
                is_hd_assuming_explorable(&a, witness_k.map(Evidence::Witness), user.as_ref())?
            } else {
                is_hd_exact(&a, user.as_ref())?
            };
            let method = if *via_g2 { "g2" } else { "exact" };
            let mut r = Report::new("hd", &[automaton], if hd { "hd" } else { "not hd" }, Outcome::of(hd));
            r.extra.insert("method".into(), json!(method));
            r.witness_k = *witness_k;
            r
        }
        Cmd::OmegaExplorable { automaton, emit_reduction } => {
            let a = load(automaton)?;
            match is_omega_explorable(&a)? {
                OmegaVerdict::OmegaExplorable => {
                    Report::new("omega-explorable", &[automaton], "OmegaExplorable", Outcome::Positive)
                }
                OmegaVerdict::NotOmegaExplorable => {
                    Report::new("omega-explorable", &[automaton], "NotOmegaExplorable", Outcome::Negative)
                }
                OmegaVerdict::Unknown(b) => {
                    let mut r = Report::new("omega-explorable", &[automaton], "Unknown", Outcome::Inconclusive);
                    r.extra.insert("reduction_states".into(), json!(b.num_states()));
                    if let Some(p) = emit_reduction {
                        fs::write(p, print_automaton(&b)).with_context(|| format!("cannot write {}", p.display()))?;
                        r.extra.insert("reduction_file".into(), json!(p.display().to_string()));
                        r = r.text(format!("Unknown; Büchi reduction written to {}", p.display()));
                    }
                    r
                }
            }
        }
        Cmd::Construct { what } => match what {
            Construct::To13 { automaton, out } => emit_automaton("construct", &[automaton], &to_13(&load(automaton)?)?, out)?,
            Construct::Power { k, automaton, out } => {
                emit_automaton("construct", &[automaton], &union_power(&load(automaton)?, *k)?, out)?
            }
            Construct::Flatten { automaton, out } => {
                emit_automaton("construct", &[automaton], &buchi_union_flatten(&load(automaton)?)?, out)?
            }
            Construct::Cond02 { k, out } => emit_automaton("construct", &[], &union_condition_automaton_02(*k)?, out)?,
            Construct::Compose { automaton, condition, out } => {
                let m = compose_monitor(&load(automaton)?, &load(condition)?)?;
                emit_automaton("construct", &[automaton, condition], &m, out)?
            }
        },
        Cmd::Generate { what } => match what {
            Generate::Ak { k, out } => emit_automaton("generate", &[], &gen_ak(positive(*k)?), out)?,
            Generate::C { out } => emit_automaton("generate", &[], &gen_c(), out)?,
            Generate::Bk { k, out } => emit_automaton("generate", &[], &gen_bk(positive(*k)?), out)?,
            Generate::Fig4 { side, out } => {
                let side = match side {
                    Side::Left => Fig4Side::Left,
                    Side::Right => Fig4Side::Right,
                };
                emit_automaton("generate", &[], &gen_fig4(side), out)?
            }
            Generate::Atm { machine, word, out } => {
                let m = parse_atm(&machine.display().to_string(), &read(machine)?)?;
                let bits = word
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => bail!("ATM input must be over {{0,1}}, found `{c}`"),
                    })
                    .collect::<Result<Vec<u8>>>()?;
                if bits.len() > m.space {
                    bail!("input of length {} exceeds the space bound {}", bits.len(), m.space);
                }
                emit_automaton("generate", &[machine], &atm_reduce(&m, &bits), out)?
            }
        },
        Cmd::Member { automaton, word } => {
            let a = load(automaton)?;
            let yes = if word.contains('(') {
                member_lasso(&a, &LassoWord::parse(word, a.alphabet())?)?
            } else {
                member_finite(&a, &parse_letters(word, a.alphabet())?)?
            };
            Report::new("member", &[automaton], if yes { "accepted" } else { "rejected" }, Outcome::of(yes))
        }
        Cmd::Equivalent { left, right, bound } => {
            let (a, b) = (load(left)?, load(right)?);
            let bound = bound.unwrap_or(limits().lasso_bound);
            let v = if a.condition().is_finite() {
                equivalent_on_words(&a, &b, bound)?
            } else {
                equivalent_on_lassos(&a, &b, bound)?
            };
            let mut r = Report::new(
                "equivalent",
                &[left, right],
                if v.equivalent { "equivalent" } else { "different" },
                Outcome::of(v.equivalent),
            );
            if let Some(w) = v.counterexample {
                let c = w.render(a.alphabet());
                r.text = format!("different on {c}");
                r.counterexample = Some(c);
            }
            r.extra.insert("bound".into(), json!(bound));
            r
        }
    })
}

fn positive(k: usize) -> Result<usize> {
    if k == 0 {
        bail!("k must be at least 1");
    }
    Ok(k)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&cli.cmd);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.to_json(ms)).unwrap());
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(r.outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if cli.json {
                println!("{}", json!({ "schema": 1, "verdict": "error", "error": format!("{e:#}") }));
            }
            ExitCode::from(3)
        }
    }
}
