use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use bdtw::corpus::CorpusSpec;
use bdtw::formats::{
    parse_ptd_unchecked, read_graph, read_strategy_tree, read_td, write_graph, write_ptd, write_strategy_tree, write_td,
};
use bdtw::game::{decide_with_budget, solve_with_budget, GameConfig, Winner, DEFAULT_BUDGET};
use bdtw::monotonize::{monotonize_pipeline, run, PipelineOptions, PipelineOutcome, RunOptions};
use bdtw::strategy_tree::fuzz::fuzz_strategy;
use bdtw::strategy_tree::{build, build_with_cutoff};
use bdtw::sweep::{sweep, sweep_sequential, SweepConfig};
use bdtw::Graph;
use bdtw_cli::play::{PlayOutcome, Session, Side};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Bounded-depth tree decompositions through the placement-bounded
/// cops-and-robber game.
#[derive(Parser)]
#[command(name = "bdtw", version)]
struct Cli {
    /// Cap on solver positions expanded.
    #[arg(long, global = true, env = "BDTW_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Number of cops (bag size bound).
    #[arg(long)]
    k: usize,
    /// Number of placements (depth bound).
    #[arg(long)]
    q: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertFormat {
    Td,
    Ptd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayAs {
    Cop,
    Robber,
}

#[derive(Subcommand)]
enum Command {
    /// Is the graph in the class of width < k, depth ≤ q graphs?
    /// Exit status 0 = member, 1 = non-member, 2 = error.
    Decide {
        graph: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Write a certificate for members ('-' for stdout).
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Build the certificate from the general game's strategy.
        #[arg(long)]
        via_nonmonotone: bool,
        /// Run the per-step checks while building the certificate.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "td")]
        format: CertFormat,
    },
    /// Solve the game and report the winner.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Play the monotone variant.
        #[arg(long)]
        monotone: bool,
        /// Play on the graph with a loop added at every vertex.
        #[arg(long)]
        closure: bool,
        /// Write the winner's strategy here.
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Write the cop strategy tree here (needs a closed graph).
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Inject this many non-monotone detours before building the tree.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Turn a strategy tree into an exact pre-tree decomposition.
    Monotonize {
        tree: PathBuf,
        #[arg(long)]
        verify: bool,
        /// Where to write the result (stdout after the trace by default).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Largest number of free edges searched per step.
        #[arg(long, default_value_t = 20)]
        free_edge_cap: usize,
    },
    /// Check a graph, tree decomposition, pre-tree decomposition or strategy
    /// tree file. Exit status 0 = valid, 1 = violations, 2 = error.
    Verify {
        artifact: PathBuf,
        /// Graph the decomposition belongs to (needed for `.td` files).
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Compare monotone and general game winners over a corpus.
    Equivalence {
        /// Corpus, e.g. `standard`, `all-graphs:0-4`, `random-gnp:5:count=20`.
        #[arg(long, default_value = "standard")]
        corpus: String,
        /// Cop counts, `a-b`.
        #[arg(long, default_value = "1-4")]
        k: String,
        /// Placement counts, `a-b`.
        #[arg(long, default_value = "1-6")]
        q: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Do not spread instances over threads.
        #[arg(long)]
        sequential: bool,
    },
    /// Play against the solver.
    Play {
        graph: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long = "as", value_enum, default_value = "robber")]
        side: PlayAs,
        #[arg(long)]
        monotone: bool,
        #[arg(long)]
        closure: bool,
        /// Read moves from this file instead of stdin.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Write a session log (replayable with --script).
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Write a corpus of graphs.
    Generate {
        #[arg(long, default_value = "standard")]
        corpus: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for one file per graph; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (a, b) = s.split_once('-').unwrap_or((s, s));
    let a = a.trim().parse().map_err(|_| anyhow!("bad range `{s}`"))?;
    let b = b.trim().parse().map_err(|_| anyhow!("bad range `{s}`"))?;
    Ok(a..=b)
}

fn corpus(spec: &str, seed: Option<u64>) -> Result<Vec<bdtw::corpus::Instance>> {
    let mut spec: CorpusSpec = spec.parse()?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    Ok(spec.generate()?)
}

fn decide_cmd(
    budget: usize,
    graph: &Path,
    b: Bounds,
    certificate: Option<&Path>,
    via_nonmonotone: bool,
    verify: bool,
    format: CertFormat,
) -> Result<ExitCode> {
    let g = load_graph(graph)?;
    let member = match certificate {
        None => {
            let cfg = GameConfig::new(b.k, b.q, true)?;
            decide_with_budget(&g.closure(), &cfg, budget)? == Winner::Cop
        }
        Some(path) => {
            let opts = PipelineOptions {
                nonmonotone: via_nonmonotone,
                verify,
                budget: Some(budget),
                ..Default::default()
            };
            match monotonize_pipeline(&g, b.k, b.q, &opts)? {
                PipelineOutcome::NonMember(_) => false,
                PipelineOutcome::Member { td, exact, .. } => {
                    let bag = td.bags.iter().map(|x| x.len()).max().unwrap_or(0);
                    if !td.is_valid() || bag > b.k || td.depth() > b.q {
                        bail!("internal error: certificate fails validation");
                    }
                    let text = match format {
                        CertFormat::Td => write_td(&td),
                        CertFormat::Ptd => write_ptd(&exact),
                    };
                    emit(path, &text)?;
                    true
                }
            }
        }
    };
    if member {
        // keep stdout clean when the certificate goes there
        if certificate.is_some_and(|p| p.as_os_str() == "-") {
            eprintln!("IN T^{}_{}", b.k, b.q);
        } else {
            println!("IN T^{}_{}", b.k, b.q);
        }
        Ok(ExitCode::from(0))
    } else {
        println!("NOT IN T^{}_{}", b.k, b.q);
        Ok(ExitCode::from(1))
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_cmd(
    budget: usize,
    graph: &Path,
    b: Bounds,
    monotone: bool,
    closure: bool,
    strategy: Option<&Path>,
    tree: Option<&Path>,
    fuzz: Option<usize>,
    seed: u64,
) -> Result<ExitCode> {
    let mut g = load_graph(graph)?;
    if closure {
        g = g.closure();
    }
    let cfg = GameConfig::new(b.k, b.q, monotone)?;
    let res = solve_with_budget(&g, &cfg, budget)?;
    println!("winner: {}", res.winner);
    match res.winner {
        Winner::Cop => {
            let sigma = res.cop_strategy.expect("winning cops have a strategy");
            println!("placements needed: {}", res.placements_needed.unwrap_or(0));
            let sigma = match fuzz {
                None => sigma,
                Some(slack) => {
                    let f = fuzz_strategy(&g, &sigma, b.k, b.q, slack, seed)?;
                    println!("detours injected: {}, placements needed: {}", f.detours.len(), f.placements_needed);
                    f.strategy
                }
            };
            if let Some(p) = strategy {
                emit(p, &sigma.dump())?;
            }
            if let Some(p) = tree {
                let st = match fuzz {
                    None => build(&g, &sigma, &cfg)?,
                    Some(slack) => {
                        let loose = GameConfig::new(b.k, b.q + slack, false)?;
                        build_with_cutoff(&g, &sigma, &loose, b.q + slack)?
                    }
                };
                println!("strategy tree: {} nodes, depth {}", st.ptd.tree.len(), st.ptd.depth());
                emit(p, &write_strategy_tree(&st))?;
            }
        }
        Winner::Robber => {
            if tree.is_some() || fuzz.is_some() {
                bail!("the robber wins: there is no cop strategy to build a tree from");
            }
            if let Some(p) = strategy {
                emit(p, &res.robber_strategy.expect("winning robber has a strategy").dump())?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn monotonize_cmd(tree: &Path, verify: bool, output: Option<&Path>, cap: usize) -> Result<ExitCode> {
    let text = fs::read_to_string(tree).with_context(|| format!("reading {}", tree.display()))?;
    let st = read_strategy_tree(&text)?;
    let out = run(
        &st,
        &RunOptions {
            verify,
            free_edge_cap: cap,
        },
    )?;
    for r in &out.steps {
        println!("{}", r.trace_line());
        for i in &r.issues {
            println!("  issue {i}");
        }
    }
    let issues = out.issues().count();
    let summary = format!(
        "exact={} width={} depth={} (input width={} depth={})",
        out.ptd.is_exact(),
        out.ptd.width(),
        out.ptd.depth(),
        st.ptd.width(),
        st.ptd.depth()
    );
    match output {
        Some(p) => {
            emit(p, &write_ptd(&out.ptd))?;
            println!("{summary}");
        }
        None => {
            println!("c {summary}");
            print!("{}", write_ptd(&out.ptd));
        }
    }
    if issues > 0 {
        eprintln!("{issues} verification issue(s)");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(artifact: &Path, graph: Option<&Path>) -> Result<ExitCode> {
    let text = fs::read_to_string(artifact).with_context(|| format!("reading {}", artifact.display()))?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("c "))
        .unwrap_or("");
    let mut problems: Vec<String> = Vec::new();
    if header.starts_with("p tw") {
        let g = read_graph(&text)?;
        println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    } else if header.starts_with("s td") {
        let path = graph.ok_or_else(|| anyhow!("checking a .td file needs --graph"))?;
        let g = load_graph(path)?;
        let td = read_td(&text, &g)?;
        problems.extend(td.validate().iter().map(|v| v.to_string()));
        println!("tree decomposition: {} bags", td.bags.len());
        if problems.is_empty() {
            println!("width {} depth {}", td.width(), td.depth());
        }
    } else if header.starts_with("p ptd") {
        let tree_line = |l: &str| l.starts_with("m ") || l.starts_with("B ");
        let is_tree = text.lines().any(tree_line);
        // structural check first, on the decomposition part alone
        let bare: String = text.lines().filter(|l| !tree_line(l)).map(|l| format!("{l}\n")).collect();
        let p = parse_ptd_unchecked(&bare)?;
        problems.extend(p.validate().iter().map(|v| v.to_string()));
        println!(
            "{}: {} nodes",
            if is_tree { "strategy tree" } else { "pre-tree decomposition" },
            p.tree.len()
        );
        if problems.is_empty() {
            println!(
                "exact={} width={} depth={}",
                p.is_exact(),
                p.width(),
                p.depth()
            );
            if is_tree {
                let st = read_strategy_tree(&text)?;
                for (name, ok) in [
                    ("monotone edges are exact", st.check_monotone_exact()),
                    ("self-loop cones", st.check_self_loop_cones()),
                ] {
                    if !ok {
                        problems.push(format!("strategy tree: {name} check fails"));
                    }
                }
                println!("max branching nodes on a root-leaf path: {}", st.max_branching_on_paths());
            }
        }
    } else {
        bail!("unrecognised file: expected a `p tw`, `s td` or `p ptd` header");
    }
    for p in &problems {
        println!("violation: {p}");
    }
    if problems.is_empty() {
        println!("ok");
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn equivalence_cmd(budget: usize, spec: &str, k: &str, q: &str, seed: Option<u64>, sequential: bool) -> Result<ExitCode> {
    let instances = corpus(spec, seed)?;
    let cfg = SweepConfig {
        ks: range(k)?,
        qs: range(q)?,
        budget,
    };
    let start = Instant::now();
    let report = if sequential {
        sweep_sequential(&instances, &cfg)
    } else {
        sweep(&instances, &cfg)
    };
    print!("{}", report.table());
    println!(
        "instances={} cells={} cop-wins={} disagreements={} errors={}",
        report.instances.len(),
        report.cells(),
        report.cop_wins(),
        report.disagreements(),
        report.errors()
    );
    eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    Ok(if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[allow(clippy::too_many_arguments)]
fn play_cmd(
    budget: usize,
    graph: &Path,
    b: Bounds,
    side: PlayAs,
    monotone: bool,
    closure: bool,
    script: Option<&Path>,
    log: Option<&Path>,
) -> Result<ExitCode> {
    let mut g = load_graph(graph)?;
    if closure {
        g = g.closure();
    }
    let cfg = GameConfig::new(b.k, b.q, monotone)?;
    let human = match side {
        PlayAs::Cop => Side::Cop,
        PlayAs::Robber => Side::Robber,
    };
    let input: Box<dyn BufRead> = match script {
        Some(p) => Box::new(BufReader::new(
            fs::File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )),
        None => Box::new(io::stdin().lock()),
    };
    let stdout = io::stdout();
    let session = Session::new(&g, cfg, human, budget, input, stdout.lock());
    let mut log_file = match log {
        Some(p) => Some(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => None,
    };
    let outcome = match log_file.as_mut() {
        Some(f) => session.with_log(f).run()?,
        None => session.run()?,
    };
    if let Some(f) = log_file.as_mut() {
        f.flush()?;
    }
    Ok(match outcome {
        PlayOutcome::Quit => ExitCode::SUCCESS,
        PlayOutcome::Finished { winner, .. } => match (winner, human) {
            (Winner::Cop, Side::Cop) | (Winner::Robber, Side::Robber) => ExitCode::SUCCESS,
            _ => ExitCode::from(1),
        },
    })
}

fn generate_cmd(spec: &str, seed: Option<u64>, out: Option<&Path>) -> Result<ExitCode> {
    let instances = corpus(spec, seed)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for i in &instances {
                let name: String = i
                    .name
                    .chars()
                    .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                    .collect();
                let path = dir.join(format!("{:04}_{name}.gr", i.id));
                fs::write(&path, format!("c {}\n{}", i.name, write_graph(&i.graph)))?;
            }
            println!("wrote {} graphs to {}", instances.len(), dir.display());
        }
        None => {
            let mut stdout = io::stdout().lock();
            for i in &instances {
                writeln!(stdout, "c {} {}", i.id, i.name)?;
                write!(stdout, "{}", write_graph(&i.graph))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let budget = cli.budget;
    match cli.cmd {
        Command::Decide {
            graph,
            bounds,
            certificate,
            via_nonmonotone,
            verify,
            format,
        } => decide_cmd(budget, &graph, bounds, certificate.as_deref(), via_nonmonotone, verify, format),
        Command::Solve {
            graph,
            bounds,
            monotone,
            closure,
            strategy,
            tree,
            fuzz,
            seed,
        } => solve_cmd(
            budget,
            &graph,
            bounds,
            monotone,
            closure,
            strategy.as_deref(),
            tree.as_deref(),
            fuzz,
            seed,
        ),
        Command::Monotonize {
            tree,
            verify,
            output,
            free_edge_cap,
        } => monotonize_cmd(&tree, verify, output.as_deref(), free_edge_cap),
        Command::Verify { artifact, graph } => verify_cmd(&artifact, graph.as_deref()),
        Command::Equivalence {
            corpus,
            k,
            q,
            seed,
            sequential,
        } => equivalence_cmd(budget, &corpus, &k, &q, seed, sequential),
        Command::Play {
            graph,
            bounds,
            side,
            monotone,
            closure,
            script,
            log,
        } => play_cmd(
            budget,
            &graph,
            bounds,
            side,
            monotone,
            closure,
            script.as_deref(),
            log.as_deref(),
        ),
        Command::Generate { corpus, seed, out } => generate_cmd(&corpus, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
