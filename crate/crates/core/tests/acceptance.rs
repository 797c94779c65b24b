//! Acceptance suite. Runs without the libtest harness so that the seven
//! PASS/FAIL lines always show up; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use bdtw::corpus::{self, CorpusSpec, Instance};
use bdtw::game::{brute_force_cop_wins, decide, solve, strategy_need, GameConfig, Winner};
use bdtw::monotonize::{check_branching_depth_bound, run, RunOptions, RunOutput};
use bdtw::partitions::check_submodularity_instance;
use bdtw::strategy_tree::fuzz::fuzz_strategy;
use bdtw::strategy_tree::{build, build_with_cutoff, StrategyTree};
use bdtw::sweep::{sweep, SweepConfig};
use bdtw::tree::RootedTree;
use bdtw::{EdgePartition, EdgeSet, Error, Graph, PreTreeDecomposition, TreeDecomposition, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FUZZ_TARGET: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if let Some(f) = failures.first() {
        detail = format!("{detail}; {} failure(s), first: {f}", failures.len());
    }
    Outcome {
        pass: failures.is_empty(),
        detail,
    }
}

/// One monotonization run, monotone or fuzzed.
struct PipelineRun {
    label: String,
    base: Graph,
    k: usize,
    q: usize,
    tree: StrategyTree,
    out: Result<RunOutput, Error>,
}

fn suite_one() -> Vec<Instance> {
    CorpusSpec::new(corpus::Family::Standard, 0, 4).generate().unwrap()
}

fn criterion_1(instances: &[Instance]) -> (Outcome, Vec<(usize, usize, usize)>) {
    let report = sweep(instances, &SweepConfig::default());
    let mut failures = Vec::new();
    let mut cop_cells = Vec::new();
    for inst in &report.instances {
        if let Some(e) = &inst.error {
            failures.push(format!("{}: {e}", inst.name));
        }
        for c in &inst.cells {
            if !c.agree() {
                failures.push(format!("{} k={} q={}: {:?}", inst.name, c.k, c.q, c.winners));
            } else if c.winners[0] == Winner::Cop {
                cop_cells.push((inst.id, c.k, c.q));
            }
        }
    }
    let detail = format!(
        "{} instances, {} (k,q) cells x 4 games, {} disagreements",
        report.instances.len(),
        report.cells(),
        report.disagreements()
    );
    (outcome(&failures, detail), cop_cells)
}

fn monotone_runs(instances: &[Instance], cells: &[(usize, usize, usize)]) -> Vec<PipelineRun> {
    cells
        .iter()
        .map(|&(id, k, q)| {
            let base = instances[id].graph.clone();
            let host = base.closure();
            let cfg = GameConfig::new(k, q, true).unwrap();
            let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
            let tree = build(&host, &sigma, &cfg).unwrap();
            let out = run(&tree, &RunOptions { verify: true, free_edge_cap: 0 });
            PipelineRun {
                label: format!("{} k={k} q={q}", instances[id].name),
                base,
                k,
                q,
                tree,
                out,
            }
        })
        .collect()
}

/// Fuzzed, genuinely non-monotone strategies over the cop-win cells.
fn fuzzed_runs(instances: &[Instance], cells: &[(usize, usize, usize)]) -> Vec<PipelineRun> {
    let mut runs = Vec::new();
    for (i, &(id, k, q)) in cells.iter().enumerate() {
        let base = instances[id].graph.clone();
        if base.edge_count() == 0 {
            continue;
        }
        let host = base.closure();
        let cfg = GameConfig::new(k, q, false).unwrap();
        let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
        let slack = 1 + i % 2;
        let seed = i as u64;
        let Ok(f) = fuzz_strategy(&host, &sigma, k, q, slack, seed) else {
            continue;
        };
        if strategy_need(&host, k, true, &f.strategy).is_ok() {
            continue; // still monotone, not what we are after
        }
        let loose = GameConfig::new(k, q + slack, false).unwrap();
        let tree = build_with_cutoff(&host, &f.strategy, &loose, q + slack).unwrap();
        let out = run(&tree, &RunOptions { verify: true, free_edge_cap: 0 });
        runs.push(PipelineRun {
            label: format!("{} k={k} q={q} slack={slack} seed={seed}", instances[id].name),
            base,
            k,
            q: q + slack,
            tree,
            out,
        });
    }
    runs
}

fn criterion_2(runs: &[PipelineRun], fuzzed: usize) -> (Outcome, Vec<TreeDecomposition>) {
    let mut failures = Vec::new();
    let mut certs = Vec::new();
    for r in runs {
        let out = match &r.out {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("{}: {e}", r.label));
                continue;
            }
        };
        let p = &out.ptd;
        if !p.is_exact() {
            failures.push(format!("{}: not exact", r.label));
        }
        if p.width() > r.tree.ptd.width() || p.depth() > r.tree.ptd.depth() {
            failures.push(format!(
                "{}: width {}->{} depth {}->{}",
                r.label,
                r.tree.ptd.width(),
                p.width(),
                r.tree.ptd.depth(),
                p.depth()
            ));
        }
        match p.to_tree_decomposition(&r.base) {
            Ok(td) => {
                let bags = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
                if !td.is_valid() || bags > r.k || td.depth() > r.q {
                    failures.push(format!(
                        "{}: td valid={} max bag={} depth={}",
                        r.label,
                        td.is_valid(),
                        bags,
                        td.depth()
                    ));
                }
                certs.push(td);
            }
            Err(e) => failures.push(format!("{}: {e}", r.label)),
        }
    }
    if fuzzed < FUZZ_TARGET {
        failures.push(format!("only {fuzzed} non-monotone strategies generated"));
    }
    let detail = format!(
        "{} runs ({} monotone, {} fuzzed non-monotone)",
        runs.len(),
        runs.len() - fuzzed,
        fuzzed
    );
    (outcome(&failures, detail), certs)
}

fn criterion_3(runs: &[PipelineRun]) -> Outcome {
    let mut failures = Vec::new();
    let mut steps = 0;
    for r in runs {
        if let Ok(out) = &r.out {
            steps += out.steps.len();
            for (s, issue) in out.issues() {
                failures.push(format!("{} step {s}: {issue}", r.label));
            }
        } else {
            failures.push(format!("{}: run failed", r.label));
        }
    }
    outcome(&failures, format!("{steps} verified steps over {} runs", runs.len()))
}

/// Set partitions of `0..m`, each also with one trailing empty block.
fn partitions(m: usize) -> Vec<Vec<EdgeSet>> {
    fn rec(i: usize, m: usize, cur: &mut Vec<EdgeSet>, out: &mut Vec<Vec<EdgeSet>>) {
        if i == m {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].insert(i);
            rec(i + 1, m, cur, out);
            cur[b].remove(i);
        }
        cur.push(EdgeSet::singleton(i));
        rec(i + 1, m, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::new(), &mut out);
    let with_empty: Vec<_> = out
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.push(EdgeSet::new());
            p
        })
        .collect();
    out.extend(with_empty);
    out
}

#[derive(Default)]
struct SubmodTally {
    checked: u64,
    skipped: u64,
    failures: Vec<String>,
}

impl SubmodTally {
    fn check(&mut self, g: &Graph, p: &EdgePartition, q: &EdgePartition, x: usize, y: usize) {
        match check_submodularity_instance(g, p, q, x, y) {
            Ok(true) => self.checked += 1,
            Ok(false) => self.failures.push(format!("{g:?} {p:?} {q:?} x={x} y={y}")),
            Err(Error::Precondition(_)) => self.skipped += 1,
            Err(e) => self.failures.push(e.to_string()),
        }
    }
}

fn criterion_4() -> Outcome {
    let mut tally = SubmodTally::default();

    // exhaustive: every graph (loops allowed) on 4 vertices with at most 4 edges
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a..4).map(move |b| (a, b))).collect();
    let mut exhaustive_graphs = 0;
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() > 4 {
            continue;
        }
        let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = Graph::from_edges(4, &edges).unwrap();
        exhaustive_graphs += 1;
        let parts: Vec<EdgePartition> = partitions(g.edge_count())
            .into_iter()
            .map(|b| EdgePartition::new(&g, b).unwrap())
            .collect();
        for p in &parts {
            for q in &parts {
                for x in 0..p.len() {
                    for y in 0..q.len() {
                        tally.check(&g, p, q, x, y);
                    }
                }
            }
        }
    }
    let exhaustive = tally.checked;

    // random: up to 8 edges on up to 6 vertices
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    while tally.checked - exhaustive < 10_000 {
        let n = rng.gen_range(1..=6);
        let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let m = rng.gen_range(1..=8.min(all.len()));
        let edges: Vec<_> = rand::seq::index::sample(&mut rng, all.len(), m).iter().map(|i| all[i]).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let random_partition = |rng: &mut ChaCha8Rng| {
            let blocks = rng.gen_range(1..=4);
            let mut b = vec![EdgeSet::new(); blocks];
            for e in 0..m {
                b[rng.gen_range(0..blocks)].insert(e);
            }
            EdgePartition::new(&g, b).unwrap()
        };
        let p = random_partition(&mut rng);
        let q = random_partition(&mut rng);
        let (x, y) = (rng.gen_range(0..p.len()), rng.gen_range(0..q.len()));
        tally.check(&g, &p, &q, x, y);
    }
    let detail = format!(
        "{exhaustive} exhaustive cases on {exhaustive_graphs} graphs + {} random cases hold, {} inadmissible skipped",
        tally.checked - exhaustive,
        tally.skipped
    );
    outcome(&tally.failures, detail)
}

fn hand_built() -> Vec<(String, TreeDecomposition)> {
    let vs = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
    // P3 as a path a-b-c: bag {b} at the root, {a,b} and {b,c} below
    let p3 = corpus::path(3);
    let p3_td = TreeDecomposition::new(
        RootedTree::from_parents(vec![0, 0, 0]).unwrap(),
        p3,
        vec![vs(&[1]), vs(&[0, 1]), vs(&[1, 2])],
    );
    let c4 = corpus::cycle(4);
    let c4_td = TreeDecomposition::new(
        RootedTree::from_parents(vec![0, 0, 0]).unwrap(),
        c4,
        vec![vs(&[0, 2]), vs(&[0, 1, 2]), vs(&[0, 2, 3])],
    );
    // a deliberately slack one: a path of bags over C4
    let c4_chain = TreeDecomposition::new(
        RootedTree::from_parents(vec![0, 0, 1]).unwrap(),
        corpus::cycle(4),
        vec![vs(&[0, 1, 2]), vs(&[0, 2, 3]), vs(&[0, 3])],
    );
    let k4 = corpus::complete(4);
    let k4_td = TreeDecomposition::new(RootedTree::singleton(), k4.clone(), vec![vs(&[0, 1, 2, 3])]);
    let k4_chain = TreeDecomposition::new(
        RootedTree::from_parents(vec![0, 0]).unwrap(),
        k4,
        vec![vs(&[0, 1, 2]), vs(&[0, 1, 2, 3])],
    );
    vec![
        ("P3".into(), p3_td),
        ("C4".into(), c4_td),
        ("C4-chain".into(), c4_chain),
        ("K4".into(), k4_td),
        ("K4-chain".into(), k4_chain),
    ]
}

fn criterion_5(certs: &[TreeDecomposition]) -> Outcome {
    let mut failures = Vec::new();
    let mut all: Vec<(String, TreeDecomposition)> =
        certs.iter().enumerate().map(|(i, td)| (format!("certificate {i}"), td.clone())).collect();
    let hand = hand_built();
    for (name, td) in &hand {
        if !td.is_valid() {
            failures.push(format!("{name}: hand-built decomposition is invalid"));
        }
    }
    all.extend(hand);
    for (name, td) in &all {
        let back = PreTreeDecomposition::from_tree_decomposition(td)
            .and_then(|p| p.to_tree_decomposition(&td.host));
        match back {
            Ok(b) if b.is_valid() && b.width() <= td.width() && b.depth() <= td.depth() => {}
            Ok(b) => failures.push(format!(
                "{name}: valid={} width {}->{} depth {}->{}",
                b.is_valid(),
                td.width(),
                b.width(),
                td.depth(),
                b.depth()
            )),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(&failures, format!("{} decompositions round-tripped", all.len()))
}

fn criterion_6(runs: &[PipelineRun]) -> Outcome {
    let mut failures = Vec::new();
    for r in runs {
        if let Ok(out) = &r.out {
            if !check_branching_depth_bound(&out.ptd, &r.tree) {
                failures.push(format!(
                    "{}: depth {} > branching {}",
                    r.label,
                    out.ptd.depth(),
                    r.tree.max_branching_on_paths()
                ));
            }
        } else {
            failures.push(format!("{}: run failed", r.label));
        }
    }
    outcome(&failures, format!("{} runs checked", runs.len()))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut oracle_checks = 0;
    let mut expect = |failures: &mut Vec<String>, g: &Graph, name: &str, k: usize, q: usize, want: Winner| {
        for monotone in [true, false] {
            let cfg = GameConfig::new(k, q, monotone).unwrap();
            match decide(g, &cfg) {
                Ok(w) if w == want => {}
                Ok(w) => failures.push(format!("{name} k={k} q={q} monotone={monotone}: {w}")),
                Err(e) => failures.push(format!("{name} k={k} q={q}: {e}")),
            }
            if g.vertex_count() <= 4 {
                oracle_checks += 1;
                let oracle = if brute_force_cop_wins(g, &cfg) { Winner::Cop } else { Winner::Robber };
                if oracle != want {
                    failures.push(format!("{name} k={k} q={q} monotone={monotone}: oracle says {oracle}"));
                }
            }
        }
    };
    for n in 2..=4 {
        let g = corpus::complete(n).closure();
        let name = format!("K{n}°");
        expect(&mut failures, &g, &name, n, n, Winner::Cop);
        for q in 1..=n + 2 {
            expect(&mut failures, &g, &name, n - 1, q, Winner::Robber);
        }
    }
    let mut immediate = 0;
    for n in 0..=4 {
        let g = Graph::new(n);
        for k in 1..=4 {
            for q in 1..=6 {
                expect(&mut failures, &g, &format!("edgeless{n}"), k, q, Winner::Cop);
                let res = solve(&g, &GameConfig::new(k, q, true).unwrap()).unwrap();
                if res.placements_needed != Some(0) {
                    failures.push(format!("edgeless{n} k={k} q={q}: needs {:?} placements", res.placements_needed));
                }
                immediate += 1;
            }
        }
    }
    outcome(
        &failures,
        format!("K2°..K4° values hold, {oracle_checks} oracle cross-checks, {immediate} edgeless immediate wins"),
    )
}

fn report(n: usize, name: &str, o: &Outcome, started: Instant) -> bool {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "{tag} criterion {n} ({name}): {} [{:.1}s]",
        o.detail,
        started.elapsed().as_secs_f64()
    );
    o.pass
}

fn main() -> ExitCode {
    let instances = suite_one();
    let mut ok = true;

    let t = Instant::now();
    let (c1, cells) = criterion_1(&instances);
    ok &= report(1, "equivalence", &c1, t);

    let t = Instant::now();
    let mut runs = monotone_runs(&instances, &cells);
    let fuzzed = fuzzed_runs(&instances, &cells);
    let fuzz_count = fuzzed.len();
    runs.extend(fuzzed);
    let (c2, certs) = criterion_2(&runs, fuzz_count);
    ok &= report(2, "pipeline soundness", &c2, t);

    let t = Instant::now();
    ok &= report(3, "per-step checks", &criterion_3(&runs), t);

    let t = Instant::now();
    ok &= report(4, "submodularity", &criterion_4(), t);

    let t = Instant::now();
    ok &= report(5, "round trip", &criterion_5(&certs), t);

    let t = Instant::now();
    ok &= report(6, "branching bound", &criterion_6(&runs), t);

    let t = Instant::now();
    ok &= report(7, "sanity values", &criterion_7(), t);

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
