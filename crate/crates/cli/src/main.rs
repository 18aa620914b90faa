use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use geostar::automaton::Alphabet;
use geostar::catalog;
use geostar::expr::parse;
use geostar::geodesics::{
    abelian_pe, alternation_probe, graph_product, pumped, restriction_holds, vabelian_check, vabelian_pt,
    verify_language, BallSearch, VAbelianGenSet,
};
use geostar::group::{AbelianGroup, PresentationFile, WordOracle};
use geostar::repro::repro_suite;
use geostar::starfree::{analyze, AperiodicityReport};
use geostar::{Dfa, Error};
use num_rational::Ratio;
use serde_json::{json, Value};

mod graph;

const AFTER_HELP: &str = "\
Formats:
  automaton JSON   {\"alphabet\": [\"a\",\"A\"], \"inverses\": [[\"a\",\"A\"]], \"states\": 2,
                    \"start\": 0, \"accepting\": [0], \"transitions\": [[0,1],[1,1]]}
  presentation     lines `gens: a b`, `rel: abAB` or `rel: u = v`, `order: a 3`,
                   `oracle: free|abelian|b3|dehn|raag|subst(g=word, ...[; inner])`;
                   uppercase letters are inverses
  graph file       lines `v1: file.json` and `v1 -- v2`
  expression       `|` union, `&` intersection, juxtaposition or `.` concatenation,
                   `!` complement, `0` empty set, `e` empty word, `{w1, w2}` finite set;
                   `!0` is every word

Exit status: 0 success, 1 a check failed, 2 bad usage or input, 3 search budget exceeded.";

#[derive(Parser)]
#[command(name = "geostar", version, about = "Star-freeness of regular languages and of geodesic languages of groups")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of group elements a Cayley ball may hold.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize an automaton (JSON file) and print it.
    Minimize {
        /// Automaton JSON file.
        #[arg(long)]
        dfa: PathBuf,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether an automaton's language is star-free; exit 1 if not.
    Starfree {
        /// Automaton JSON file.
        #[arg(long)]
        dfa: PathBuf,
    },
    /// Transition monoid of the minimal automaton: size, idempotents, aperiodicity.
    Monoid {
        /// Automaton JSON file.
        #[arg(long)]
        dfa: PathBuf,
        /// List at most this many elements with their shortest words.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Compile a star-free expression into a minimal automaton (JSON).
    CompileExpr {
        /// Expression text.
        expr: String,
        /// Comma-separated symbols.
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        alphabet: Option<String>,
        /// Comma-separated generators; inverses are the uppercase letters.
        #[arg(long)]
        group: Option<String>,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Small cancellation conditions C'(lambda) and T(q) of a presentation file.
    ScCheck {
        /// Presentation file.
        #[arg(long)]
        pres: PathBuf,
        /// Metric condition parameter, e.g. 1/6.
        #[arg(long, default_value = "1/6")]
        lambda: String,
        /// Also check T(q).
        #[arg(long)]
        t: Option<usize>,
    },
    /// Sphere sizes of the Cayley ball of a presentation file.
    Ball {
        /// Presentation file.
        #[arg(long)]
        pres: PathBuf,
        /// Ball radius.
        #[arg(long)]
        radius: usize,
    },
    /// Length of the element a word represents and whether the word is geodesic.
    Geodesic {
        /// Presentation file.
        #[arg(long)]
        pres: PathBuf,
        /// Word over the presentation's generators.
        word: String,
        /// Ball radius for the bidirectional search (default: half the word length).
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Geodesic memberships of u v^n w for n = 0..=N.
    Probe {
        /// Presentation file.
        #[arg(long)]
        pres: PathBuf,
        /// Prefix word.
        #[arg(short, default_value = "")]
        u: String,
        /// Pumped word, non-empty.
        #[arg(short)]
        v: String,
        /// Suffix word.
        #[arg(short, default_value = "")]
        w: String,
        /// Largest exponent.
        #[arg(short, default_value_t = 6)]
        n: usize,
    },
    /// Compare an automaton with the geodesics of a presentation on all words up to a length.
    Verify {
        /// Automaton JSON file.
        #[arg(long)]
        dfa: PathBuf,
        /// Presentation file.
        #[arg(long)]
        pres: PathBuf,
        /// Check every word up to this length.
        #[arg(long)]
        maxlen: usize,
    },
    /// Piecewise excluding geodesic automaton of an abelian group on a monoid generating set.
    AbelianPe {
        /// Cyclic factor orders, 0 for Z, e.g. `0,0` or `6`.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u64>,
        /// A generator and its coordinates, e.g. `a=1,0`; repeat per generator.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Largest letter count searched for minimal non-geodesic tuples.
        #[arg(long, default_value_t = 6)]
        sum_bound: usize,
        /// Compare the result with the group on every word up to this length.
        #[arg(long, default_value_t = 8)]
        verify_len: usize,
    },
    /// Check the five virtually abelian generating-set properties.
    VabCheck {
        /// Built-in generating set.
        #[arg(long, value_enum, default_value_t = Example::Dihedral)]
        group: Example,
    },
    /// Build the geodesic automaton of a virtually abelian generating set.
    VabBuild {
        /// Built-in generating set.
        #[arg(long, value_enum, default_value_t = Example::Dihedral)]
        group: Example,
        /// Largest letter count searched for minimal non-geodesic tuples.
        #[arg(long, default_value_t = 4)]
        sum_bound: usize,
        /// Compare the result with the group on every word up to this length.
        #[arg(long, default_value_t = 8)]
        verify_len: usize,
    },
    /// Geodesic automaton of a graph product from vertex automata.
    Graphprod {
        /// Graph file naming one automaton JSON file per vertex.
        #[arg(long)]
        graph: PathBuf,
        /// Print Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Run the reproduction suite of worked examples.
    Repro {
        /// Run a single scenario.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    /// The infinite dihedral group on t, T, s with N = <t>.
    Dihedral,
}

fn example(e: Example) -> VAbelianGenSet {
    match e {
        Example::Dihedral => catalog::dihedral_gen_set(),
    }
}

/// What a command prints, and whether its check passed.
struct Output {
    json: Value,
    text: String,
    pass: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, pass: true }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_dfa(path: &Path) -> Result<Dfa> {
    Dfa::from_json(&read(path)?).map_err(|e| {
        anyhow!(Error::Parse {
            line: match &e {
                Error::Json(j) => j.line(),
                _ => 0,
            },
            message: format!("{}: {e}", path.display()),
        })
    })
}

fn load_pres(path: &Path) -> Result<PresentationFile> {
    PresentationFile::parse(&read(path)?).map_err(|e| match e {
        Error::Parse { line, message } => anyhow!(Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        }),
        e => anyhow!(e),
    })
}

fn dfa_output(d: &Dfa, dot: bool) -> Output {
    let text = if dot { d.to_dot() } else { d.to_json() };
    Output::ok(serde_json::from_str(&d.to_json()).unwrap(), text)
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn search_for(oracle: Arc<dyn WordOracle>, maxlen: usize, budget: usize) -> Result<BallSearch> {
    Ok(BallSearch::new(oracle, maxlen.div_ceil(2).max(1), budget)?)
}

fn run(cli: Cli) -> Result<Output> {
    let budget = cli.budget;
    Ok(match cli.command {
        Command::Minimize { dfa, dot } => dfa_output(&load_dfa(&dfa)?.minimize(), dot),
        Command::Starfree { dfa } => {
            let d = load_dfa(&dfa)?;
            let report = analyze(&d)?;
            let al = d.alphabet();
            let witness = report.circuit.as_ref().map(|w| {
                json!({"u": al.format_word(&w.u), "v": al.format_word(&w.v), "k": w.k, "w": al.format_word(&w.w)})
            });
            let text = match (&report.aperiodicity, &report.circuit) {
                (AperiodicityReport::Aperiodic { bound }, _) => {
                    format!("star-free: yes\naperiodicity bound: {bound}\nminimal states: {}\n", report.minimal_states)
                }
                (_, Some(w)) => format!(
                    "star-free: no\nwitness: u = {}, v = {}, k = {}, w = {}\n",
                    al.format_word(&w.u),
                    al.format_word(&w.v),
                    w.k,
                    al.format_word(&w.w)
                ),
                _ => unreachable!("criteria are checked to agree"),
            };
            Output {
                json: json!({
                    "star_free": report.star_free(),
                    "bound": report.aperiodicity.bound(),
                    "witness": witness,
                    "minimal_states": report.minimal_states,
                    "monoid_size": report.monoid_size,
                }),
                text,
                pass: report.star_free(),
            }
        }
        Command::Monoid { dfa, limit } => {
            let d = load_dfa(&dfa)?.minimize();
            let m = d.transition_monoid();
            let al = d.alphabet();
            let idempotents = (0..m.len()).filter(|&x| m.is_idempotent(x)).count();
            let aperiodicity = geostar::starfree::is_aperiodic(&m);
            let mut text = format!(
                "elements: {}\nidempotents: {idempotents}\naperiodic: {}\n",
                m.len(),
                aperiodicity.bound().map_or("no".to_string(), |b| format!("yes, bound {b}"))
            );
            if let AperiodicityReport::Periodic { witness, period, .. } = &aperiodicity {
                text.push_str(&format!("periodic element: {} with period {period}\n", al.format_word(witness)));
            }
            for e in m.elements().iter().take(limit) {
                text.push_str(&format!("  {:<10} {:?}\n", al.format_word(&e.word), e.map));
            }
            let elements: Vec<Value> = m
                .elements()
                .iter()
                .map(|e| json!({"word": al.format_word(&e.word), "map": e.map}))
                .collect();
            Output::ok(
                json!({"size": m.len(), "idempotents": idempotents, "bound": aperiodicity.bound(), "elements": elements}),
                text,
            )
        }
        Command::CompileExpr { expr, alphabet, group, dot } => {
            let al = match (alphabet, group) {
                (Some(a), _) => Alphabet::new(&split_list(&a))?,
                (None, Some(g)) => Alphabet::group(&split_list(&g))?,
                (None, None) => unreachable!("clap requires one"),
            };
            dfa_output(&parse(&expr, &al)?.compile(&al)?, dot)
        }
        Command::ScCheck { pres, lambda, t } => {
            let file = load_pres(&pres)?;
            let lambda: Ratio<i64> = lambda
                .parse()
                .map_err(|_| anyhow!(Error::InvalidArgument(format!("bad ratio `{lambda}`"))))?;
            let sym = file.presentation.symmetrize();
            let al = sym.alphabet().clone();
            let c = sym.check_c_prime(lambda)?;
            let mut text = format!(
                "symmetrized relators: {}\nmax piece length: {}\nC'({lambda}): {}\n",
                sym.len(),
                c.max_piece_len,
                if c.passed { "pass" } else { "fail" }
            );
            if let Some((piece, relator)) = &c.violation {
                text.push_str(&format!("  piece {} in {}\n", al.format_word(piece), al.format_word(relator)));
            }
            let mut pass = c.passed;
            let mut t_json = Value::Null;
            if let Some(q) = t {
                let r = sym.check_t(q)?;
                text.push_str(&format!("T({q}): {}\n", if r.passed { "pass" } else { "fail" }));
                if let Some(cycle) = &r.violation {
                    let words: Vec<String> = cycle.iter().map(|w| al.format_word(w)).collect();
                    text.push_str(&format!("  cycle {}\n", words.join(", ")));
                }
                pass &= r.passed;
                t_json = json!({"q": q, "passed": r.passed});
            }
            Output {
                json: json!({
                    "relators": sym.len(),
                    "max_piece_len": c.max_piece_len,
                    "lambda": lambda.to_string(),
                    "c_prime": c.passed,
                    "t": t_json,
                }),
                text,
                pass,
            }
        }
        Command::Ball { pres, radius } => {
            let oracle = load_pres(&pres)?.build_oracle()?;
            let ball = geostar::geodesics::build_ball(oracle, radius, budget)?;
            let spheres = ball.sphere_sizes().to_vec();
            let text = format!("sphere sizes: {spheres:?}\nelements: {}\n", ball.len());
            Output::ok(json!({"radius": radius, "spheres": spheres, "elements": ball.len()}), text)
        }
        Command::Geodesic { pres, word, radius } => {
            let oracle = load_pres(&pres)?.build_oracle()?;
            let al = oracle.alphabet().clone();
            let w = al.parse_word(&word)?;
            let search = match radius {
                Some(r) => BallSearch::new(oracle, r, budget)?,
                None => search_for(oracle, w.len(), budget)?,
            };
            let length = search.length(&w)?;
            let geodesic = length == w.len();
            Output::ok(
                json!({"word": word, "word_length": w.len(), "length": length, "geodesic": geodesic}),
                format!("length: {length}\ngeodesic: {}\n", if geodesic { "yes" } else { "no" }),
            )
        }
        Command::Probe { pres, u, v, w, n } => {
            let oracle = load_pres(&pres)?.build_oracle()?;
            let al = oracle.alphabet().clone();
            let [u, v, w] = [&u, &v, &w].map(|s| al.parse_word(s));
            let (u, v, w) = (u?, v?, w?);
            if v.is_empty() {
                return Err(anyhow!(Error::InvalidArgument("v must be non-empty".into())));
            }
            let search = search_for(oracle, pumped(&u, &v, &w, n).len(), budget)?;
            let probe = alternation_probe(&search, &u, &v, &w, n)?;
            let mut text: String = probe
                .memberships
                .iter()
                .enumerate()
                .map(|(i, &g)| format!("n = {i}: {}\n", if g { "geodesic" } else { "not geodesic" }))
                .collect();
            text.push_str(&format!("eventually constant: {}\n", probe.eventually_constant));
            Output::ok(serde_json::to_value(&probe)?, text)
        }
        Command::Verify { dfa, pres, maxlen } => {
            let d = load_dfa(&dfa)?;
            let oracle = load_pres(&pres)?.build_oracle()?;
            let search = search_for(oracle, maxlen, budget)?;
            let report = verify_language(&d, &search, maxlen)?;
            let al = d.alphabet();
            let text = match &report.mismatch {
                None => format!("match on all {} words up to length {maxlen}\n", report.words_checked),
                Some(m) => format!(
                    "mismatch on {}: automaton {}, group {}\n",
                    al.format_word(&m.word),
                    if m.automaton { "accepts" } else { "rejects" },
                    if m.oracle { "geodesic" } else { "not geodesic" }
                ),
            };
            let mismatch = report
                .mismatch
                .as_ref()
                .map(|m| json!({"word": al.format_word(&m.word), "automaton": m.automaton, "oracle": m.oracle}));
            Output {
                json: json!({"maxlen": maxlen, "words_checked": report.words_checked, "mismatch": mismatch}),
                text,
                pass: report.passed(),
            }
        }
        Command::AbelianPe { orders, gens, sum_bound, verify_len } => {
            let mut names = Vec::new();
            let mut images = Vec::new();
            for g in &gens {
                let (name, coords) = g
                    .split_once('=')
                    .ok_or_else(|| anyhow!(Error::InvalidArgument(format!("expected `name=coords`, got `{g}`"))))?;
                let v = split_list(coords)
                    .iter()
                    .map(|c| c.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| anyhow!(Error::InvalidArgument(format!("`{g}`: {e}"))))?;
                names.push(name.trim().to_string());
                images.push(v);
            }
            let group = AbelianGroup::new(Alphabet::new(&names)?, orders, images)?;
            let pe = abelian_pe(&group, sum_bound, verify_len)?;
            let al = group.alphabet();
            let excluded: Vec<String> = pe.excluded.iter().map(|w| al.format_word(w)).collect();
            let minimal: Vec<&Vec<u32>> = pe.minimal.iter().map(|t| &t.0).collect();
            let text = format!(
                "minimal tuples: {minimal:?}\nexcluded words: {}\nstates: {}\nverified to length {}\n",
                excluded.join(" "),
                pe.dfa.num_states(),
                pe.verified_to
            );
            Output::ok(
                json!({
                    "minimal": minimal,
                    "excluded": excluded,
                    "sum_bound": sum_bound,
                    "verified_to": pe.verified_to,
                    "dfa": serde_json::from_str::<Value>(&pe.dfa.to_json())?,
                }),
                text,
            )
        }
        Command::VabCheck { group } => {
            let report = vabelian_check(&example(group));
            let text = report
                .properties
                .iter()
                .map(|p| {
                    format!(
                        "property {}: {}{}\n",
                        p.number,
                        if p.passed { "pass" } else { "fail" },
                        p.detail.as_ref().map_or(String::new(), |d| format!(" ({d})"))
                    )
                })
                .collect();
            Output {
                json: serde_json::to_value(&report)?,
                text,
                pass: report.passed(),
            }
        }
        Command::VabBuild { group, sum_bound, verify_len } => {
            let gs = example(group);
            let b = vabelian_pt(&gs, sum_bound, verify_len)?;
            let al = b.dfa.alphabet().clone();
            let fmt = |ws: &[Vec<usize>]| ws.iter().map(|w| al.format_word(w)).collect::<Vec<_>>();
            let text = format!(
                "W0: {}\nW1: {}\nW2: {}\nL2 empty: {}\nstates: {}\nverified to length {}\n",
                fmt(&b.w0).join(" "),
                fmt(&b.w1).join(" "),
                fmt(&b.w2).join(" "),
                b.l2.is_empty(),
                b.dfa.num_states(),
                b.verified_to
            );
            Output::ok(
                json!({
                    "w0": fmt(&b.w0), "w1": fmt(&b.w1), "w2": fmt(&b.w2),
                    "l2_empty": b.l2.is_empty(),
                    "verified_to": b.verified_to,
                    "dfa": serde_json::from_str::<Value>(&b.dfa.to_json())?,
                }),
                text,
            )
        }
        Command::Graphprod { graph, dot } => {
            let g = graph::load(&graph)?;
            let gp = graph_product(&g.graph, &g.vertices)?;
            for (v, name) in g.vertices.iter().zip(&g.names) {
                if !restriction_holds(&gp.dfa, v)? {
                    log::warn!("restriction to vertex {name} differs from its automaton");
                }
            }
            if g.namespaced {
                log::info!("vertex alphabets overlapped; symbols renamed to symbol@vertex");
            }
            dfa_output(&gp.dfa, dot)
        }
        Command::Repro { only } => {
            let report = repro_suite(only.as_deref())?;
            Output {
                json: serde_json::to_value(&report)?,
                text: report.to_text(),
                pass: report.passed(),
            }
        }
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::WordTooLong { .. }) => 3,
        Some(
            Error::VerificationMismatch { .. }
            | Error::Precondition(_)
            | Error::NotMinimal { .. }
            | Error::NotPrefixClosed(_)
            | Error::CriteriaDisagree(_),
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut command = Cli::command();
    let names: Vec<String> = command.get_subcommands().map(|s| s.get_name().to_string()).collect();
    for name in names {
        command = command.mut_subcommand(name, |s| s.after_help(AFTER_HELP));
    }
    let cli = Cli::from_arg_matches(&command.get_matches()).unwrap_or_else(|e| e.exit());
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let mut text = if json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // a closed pipe (`geostar ... | head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
