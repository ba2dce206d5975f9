//! `xpk` — graph toolkit front door.
//!
//! Subcommands: `gen` (seeded G(n,p) to an edge-list file), `extract`
//! (expander-or-dense-witness), `verify` (expansion | cheeger | sparsity |
//! separator), `minor` (exact | greedy), `game` (the three biased games)
//! and `pipeline` (maker-minor | giant). Every command prints one JSON
//! report to stdout; all randomized commands take explicit seeds.
//!
//! Exit codes: 0 success, 2 invalid input, 3 when a decision was requested
//! but only INCONCLUSIVE verdicts came back. Set XPK_LOG=debug for
//! diagnostics on stderr (it never changes behavior).

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::{fingerprint, print_report, Report};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;
use xpk_core::extraction::{extract_expander, ExtractionParams};
use xpk_core::games::{
    self, criterion_sums, maker_minor_pipeline, play_rounds, Family, GameKind, GameState, Side,
    Strategy,
};
use xpk_core::graph::Graph;
use xpk_core::rational::rat_to_f64;
use xpk_core::{parse_decimal, Rat};

#[derive(Parser)]
#[command(name = "xpk", version, about = "expander extraction, graph verification and biased positional games")]
struct Cli {
    /// Worker threads for multi-seed commands (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Expansion,
    Cheeger,
    Sparsity,
    Separator,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MinorMode {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GameKindArg {
    MakerBreaker,
    AvoiderEnforcer,
    ClientWaiter,
}

impl From<GameKindArg> for GameKind {
    fn from(k: GameKindArg) -> GameKind {
        match k {
            GameKindArg::MakerBreaker => GameKind::MakerBreaker,
            GameKindArg::AvoiderEnforcer => GameKind::AvoiderEnforcer,
            GameKindArg::ClientWaiter => GameKind::ClientWaiter,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Random,
    Greedy,
    PotentialBlock,
    PotentialAttack,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PipelineKind {
    MakerMinor,
    Giant,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FirstArg {
    A,
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n,p) with a fixed seed and write the edge list to a file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the expander-or-dense-witness extraction on an edge-list file.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        /// global density floor, a decimal or fraction (c1 > c2 > 1)
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        /// dense-witness size fraction in (0,1)
        #[arg(long)]
        alpha: String,
        /// degree cap the input must respect
        #[arg(long)]
        delta: u32,
    },
    /// Ground-truth verifiers on small graphs.
    Verify {
        #[arg(long, value_enum)]
        mode: VerifyMode,
        #[arg(long = "in")]
        input: PathBuf,
        /// sparsity mode: local density bound c2 > 1
        #[arg(long)]
        c2: Option<String>,
        /// sparsity mode: subset size fraction alpha in (0,1)
        #[arg(long)]
        alpha: Option<String>,
        /// sparsity mode: heuristic work budget
        #[arg(long, default_value_t = 1_000_000)]
        effort: u64,
    },
    /// Clique-minor search: exact oracle or seeded greedy contraction.
    Minor {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: MinorMode,
        /// exact mode: the clique order to test (t <= 5)
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        restarts: u32,
    },
    /// Play seeded biased games on the edges of K_n.
    Game {
        #[arg(long, value_enum)]
        kind: GameKindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, short = 'b')]
        bias: usize,
        #[arg(long, value_enum)]
        strategy_a: StrategyArg,
        #[arg(long, value_enum)]
        strategy_b: StrategyArg,
        /// family file (edge sets separated by blank lines) for potential
        /// strategies and coverage stats
        #[arg(long)]
        family: Option<PathBuf>,
        /// use the family of all triangles of K_n
        #[arg(long)]
        triangles: bool,
        /// which side moves first
        #[arg(long, value_enum, default_value = "a")]
        first: FirstArg,
        #[arg(long)]
        seed: u64,
        /// number of independently seeded games
        #[arg(long, default_value_t = 1)]
        games: u64,
        /// stop after this many rounds (default: play out the board)
        #[arg(long)]
        rounds: Option<u32>,
    },
    /// Multi-stage experiments: the random-Maker minor pipeline or the
    /// giant-component extraction pipeline.
    Pipeline {
        #[arg(long, value_enum)]
        kind: PipelineKind,
        #[arg(long)]
        n: usize,
        /// supercriticality / bias margin eps, a decimal or fraction
        #[arg(long)]
        eps: String,
        /// maker-minor: Breaker's bias
        #[arg(long, short = 'b')]
        bias: Option<usize>,
        /// maker-minor: Breaker's strategy
        #[arg(long, value_enum, default_value = "random")]
        breaker: StrategyArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// giant: extraction params
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        delta: Option<u32>,
    },
}

enum CliError {
    Usage(String),
    Inconclusive,
}

impl From<String> for CliError {
    fn from(msg: String) -> CliError {
        CliError::Usage(msg)
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("XPK_LOG")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
        .is_err()
    {
        log::debug!("rayon pool already initialized");
    }
    let mut report = Report::new(argv);
    let start = Instant::now();
    let code = match run(&cli.command, &mut report) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Inconclusive) => 3,
    };
    report
        .timings_ms
        .insert("total".into(), start.elapsed().as_secs_f64() * 1e3);
    if code != 2 {
        print_report(&report).expect("stdout");
    }
    std::process::exit(code);
}

fn load_graph(path: &PathBuf, report: &mut Report) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let g = xpk_core::io::parse_edge_list(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    report.input_fingerprint = Some(fingerprint(&g));
    Ok(g)
}

fn parse_rat(label: &str, s: &str) -> Result<Rat, CliError> {
    parse_decimal(s).map_err(|e| CliError::Usage(format!("--{label}: {e}")))
}

fn require<T>(opt: Option<T>, what: &str) -> Result<T, CliError> {
    opt.ok_or_else(|| CliError::Usage(format!("{what} is required for this mode")))
}

fn build_strategy(
    which: StrategyArg,
    seed: u64,
    family: Option<&Family>,
    bias: usize,
) -> Result<Box<dyn Strategy>, CliError> {
    Ok(match which {
        StrategyArg::Random => Box::new(games::random_edge_strategy(seed)),
        StrategyArg::Greedy => Box::new(games::greedy_degree_strategy()),
        StrategyArg::PotentialBlock => Box::new(games::potential_blocker_strategy(
            require(family.cloned(), "--family or --triangles")?,
            bias,
        )),
        StrategyArg::PotentialAttack => Box::new(games::potential_attack_strategy(
            require(family.cloned(), "--family or --triangles")?,
            bias,
        )),
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values are serializable")
}

/// Run independent trials on the rayon pool (--jobs threads); rows come
/// back in trial order, so the report is identical at any thread count.
fn maybe_parallel<F>(range: std::ops::Range<u64>, f: F) -> Result<Vec<Value>, CliError>
where
    F: Fn(u64) -> Result<Value, CliError> + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

fn run(cmd: &Command, report: &mut Report) -> Result<(), CliError> {
    match cmd {
        Command::Gen { n, p, seed, out } => {
            let t0 = Instant::now();
            let spec = xpk_core::random::GnpSpec { n: *n, p: *p, seed: *seed };
            if !(0.0..=1.0).contains(p) {
                return Err(CliError::Usage(format!("--p must lie in [0,1], got {p}")));
            }
            let g = xpk_core::random::gnp(&spec);
            report.timings_ms.insert("gen".into(), t0.elapsed().as_secs_f64() * 1e3);
            let text = xpk_core::io::format_edge_list(&g);
            std::fs::write(out, text)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            report.seeds = vec![*seed];
            report.input_fingerprint = Some(fingerprint(&g));
            report.params = json!({ "n": n, "p": p });
            report.outcome = json!({
                "edges": g.m(),
                "max_degree": g.max_degree(),
                "out": out.display().to_string(),
            });
            Ok(())
        }
        Command::Extract { input, c1, c2, alpha, delta } => {
            let g = load_graph(input, report)?;
            let params = ExtractionParams::new(
                parse_rat("c1", c1)?,
                parse_rat("c2", c2)?,
                parse_rat("alpha", alpha)?,
                *delta,
            )
            .map_err(|e| e.to_string())?;
            report.params = json!({
                "c1": c1, "c2": c2, "alpha": alpha, "delta_cap": delta,
                "thresholds": to_value(&params.thresholds()),
            });
            let t0 = Instant::now();
            let outcome = extract_expander(&g, &params).map_err(|e| e.to_string())?;
            report.timings_ms.insert("extract".into(), t0.elapsed().as_secs_f64() * 1e3);
            report.outcome = to_value(&outcome);
            Ok(())
        }
        Command::Verify { mode, input, c2, alpha, effort } => {
            let g = load_graph(input, report)?;
            let t0 = Instant::now();
            let mut inconclusive = false;
            report.outcome = match mode {
                VerifyMode::Expansion => {
                    let profile =
                        xpk_core::expansion::vertex_expansion_exact(&g).map_err(|e| e.to_string())?;
                    json!({
                        "gamma": to_value(&profile),
                        "gamma_float": rat_to_f64(&profile.gamma),
                    })
                }
                VerifyMode::Cheeger => {
                    let (h, witness) =
                        xpk_core::spectral::cheeger_exact(&g).map_err(|e| e.to_string())?;
                    let spec = xpk_core::spectral::lambda1(&g, 1e-10).map_err(|e| e.to_string())?;
                    let h_f = rat_to_f64(&h);
                    let sandwich =
                        h_f * h_f / 2.0 - 1e-9 <= spec.lambda1 && spec.lambda1 <= 2.0 * h_f + 1e-9;
                    json!({
                        "h": xpk_core::RatRepr::from(h),
                        "h_float": h_f,
                        "lambda1": spec.lambda1,
                        "residual": spec.residual,
                        "witness": witness,
                        "sandwich": if sandwich { "pass" } else { "fail" },
                    })
                }
                VerifyMode::Sparsity => {
                    let c2 = parse_rat("c2", &require(c2.clone(), "--c2")?)?;
                    let alpha = parse_rat("alpha", &require(alpha.clone(), "--alpha")?)?;
                    let verdict = xpk_core::sparsity::local_sparsity_verdict(&g, &c2, &alpha, *effort)
                        .map_err(|e| e.to_string())?;
                    inconclusive =
                        verdict.status == xpk_core::sparsity::SparsityStatus::Inconclusive;
                    to_value(&verdict)
                }
                VerifyMode::Separator => {
                    let sep =
                        xpk_core::expansion::min_separator_exact(&g).map_err(|e| e.to_string())?;
                    let profile =
                        xpk_core::expansion::vertex_expansion_exact(&g).map_err(|e| e.to_string())?;
                    let bound =
                        xpk_core::expansion::separator_lower_bound(&profile.gamma, g.n());
                    match sep {
                        Some(sep) => json!({
                            "separator": to_value(&sep),
                            "size": sep.s.len(),
                            "gamma": to_value(&profile),
                            "bound": xpk_core::RatRepr::from(bound),
                            "bound_ok": Rat::from_integer(sep.s.len() as i64) >= bound,
                        }),
                        None => json!({
                            "separator": Value::Null,
                            "gamma": to_value(&profile),
                            "bound": xpk_core::RatRepr::from(bound),
                        }),
                    }
                }
            };
            report.timings_ms.insert("verify".into(), t0.elapsed().as_secs_f64() * 1e3);
            report.params = json!({ "c2": c2, "alpha": alpha, "effort": effort });
            if inconclusive {
                return Err(CliError::Inconclusive);
            }
            Ok(())
        }
        Command::Minor { input, mode, t, seed, restarts } => {
            let g = load_graph(input, report)?;
            let t0 = Instant::now();
            report.outcome = match mode {
                MinorMode::Exact => {
                    let t = require(*t, "--t")?;
                    let model =
                        xpk_core::minors::clique_minor_exact(&g, t).map_err(|e| e.to_string())?;
                    json!({ "t": t, "model": model.map(|m| to_value(&m)) })
                }
                MinorMode::Greedy => {
                    let seed = require(*seed, "--seed")?;
                    report.seeds = vec![seed];
                    let model = xpk_core::minors::clique_minor_greedy(&g, seed, *restarts)
                        .map_err(|e| e.to_string())?;
                    json!({ "order": model.order(), "model": to_value(&model) })
                }
            };
            report.timings_ms.insert("minor".into(), t0.elapsed().as_secs_f64() * 1e3);
            report.params = json!({ "t": t, "restarts": restarts });
            Ok(())
        }
        Command::Game {
            kind,
            n,
            bias,
            strategy_a,
            strategy_b,
            family,
            triangles,
            first,
            seed,
            games: game_count,
            rounds,
        } => {
            let family = match (family, triangles) {
                (Some(path), false) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    let pairs =
                        xpk_core::io::parse_family_file(&text).map_err(|e| e.to_string())?;
                    Some(Family::from_pairs(*n, "user-file", pairs).map_err(|e| e.to_string())?)
                }
                (None, true) => Some(Family::triangles(*n)),
                (None, false) => None,
                (Some(_), true) => {
                    return Err(CliError::Usage(
                        "--family and --triangles are mutually exclusive".into(),
                    ))
                }
            };
            let sums = family.as_ref().map(|f| {
                let s = criterion_sums(f, *bias);
                json!({
                    "sum": s.sum_f64(),
                    "beck_holds": s.beck_holds,
                    "cw_holds": s.cw_holds,
                    "members": f.len(),
                })
            });
            let first = match first {
                FirstArg::A => Side::A,
                FirstArg::B => Side::B,
            };
            let t0 = Instant::now();
            let rows: Result<Vec<Value>, CliError> = maybe_parallel(0..*game_count, |i| {
                    let game_seed = seed.wrapping_add(i);
                    let mut a =
                        build_strategy(*strategy_a, game_seed, family.as_ref(), *bias)?;
                    let mut b = build_strategy(
                        *strategy_b,
                        game_seed ^ 0x5de7_1c9b_0a3f_44d1,
                        family.as_ref(),
                        *bias,
                    )?;
                    let state = GameState::new(*n, *bias, (*kind).into(), first, game_seed)
                        .map_err(|e| e.to_string())?;
                    let state = play_rounds(state, a.as_mut(), b.as_mut(), *rounds)
                        .map_err(|e| e.to_string())?;
                    let graph_a = state.graph_of(Side::A);
                    let member_in_a = family.as_ref().map(|f| f.member_inside(&graph_a).is_some());
                    let client_floor = match kind {
                        GameKindArg::ClientWaiter => {
                            let floor = state.edge_count() / (*bias + 1);
                            Some(json!({
                                "floor": floor,
                                "ok": state.count_of(Side::A) >= floor,
                            }))
                        }
                        _ => None,
                    };
                    Ok(json!({
                        "game": i,
                        "seed": game_seed,
                        "rounds": state.rounds_played,
                        "edges_a": state.count_of(Side::A),
                        "edges_b": state.count_of(Side::B),
                        "family_member_in_a": member_in_a,
                        "client_floor": client_floor,
                    }))
                });
            let rows = rows?;
            report.timings_ms.insert("games".into(), t0.elapsed().as_secs_f64() * 1e3);
            report.seeds = (0..*game_count).map(|i| seed.wrapping_add(i)).collect();
            report.params = json!({
                "n": n, "bias": bias, "games": game_count,
                // blocking guarantees are stated for the biased side moving
                // first; record the move order so reports are comparable
                "first": match first { Side::A => "a", Side::B => "b" },
                "criterion": sums,
                "family": family.as_ref().map(|f| f.tag.clone()),
            });
            let blocked_all = rows
                .iter()
                .filter_map(|r| r["family_member_in_a"].as_bool())
                .filter(|&b| !b)
                .count();
            report.outcome = json!({ "rows": rows, "games_with_a_blocked": blocked_all });
            Ok(())
        }
        Command::Pipeline {
            kind,
            n,
            eps,
            bias,
            breaker,
            seed,
            trials,
            c1,
            c2,
            alpha,
            delta,
        } => {
            let eps = parse_rat("eps", eps)?;
            let t0 = Instant::now();
            match kind {
                PipelineKind::MakerMinor => {
                    let bias = require(*bias, "--bias")?;
                    let rows: Result<Vec<Value>, CliError> =
                        maybe_parallel(0..*trials, |i| {
                            let trial_seed = seed.wrapping_add(i);
                            let mut b = build_strategy(*breaker, trial_seed ^ 0x77, None, bias)?;
                            let rep =
                                maker_minor_pipeline(*n, &eps, bias, trial_seed, b.as_mut())
                                    .map_err(|e| e.to_string())?;
                            Ok(to_value(&rep))
                        });
                    report.outcome = json!({ "rows": rows? });
                    report.params = json!({ "n": n, "eps": eps.to_string(), "bias": bias });
                }
                PipelineKind::Giant => {
                    let params = ExtractionParams::new(
                        parse_rat("c1", &require(c1.clone(), "--c1")?)?,
                        parse_rat("c2", &require(c2.clone(), "--c2")?)?,
                        parse_rat("alpha", &require(alpha.clone(), "--alpha")?)?,
                        require(*delta, "--delta")?,
                    )
                    .map_err(|e| e.to_string())?;
                    let params = &params;
                    let rows: Result<Vec<Value>, CliError> =
                        maybe_parallel(0..*trials, move |i| {
                            let trial_seed = seed.wrapping_add(i);
                            let rep =
                                xpk_core::random::giant_pipeline(*n, &eps, trial_seed, params)
                                    .map_err(|e| e.to_string())?;
                            Ok(to_value(&rep))
                        });
                    report.outcome = json!({ "rows": rows? });
                    report.params = json!({
                        "n": n, "eps": eps.to_string(),
                        "c1": c1, "c2": c2, "alpha": alpha, "delta_cap": delta,
                    });
                }
            }
            report.timings_ms.insert("pipeline".into(), t0.elapsed().as_secs_f64() * 1e3);
            report.seeds = (0..*trials).map(|i| seed.wrapping_add(i)).collect();
            Ok(())
        }
    }
}
