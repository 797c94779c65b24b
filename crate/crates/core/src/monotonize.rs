//! Exactification of strategy trees.
//!
//! Nodes are visited in breadth-first order. At an internal node `s` the cones
//! toward its children are rebalanced by disjoint F-extensions chosen to
//! minimise the boundary of the local partition (then the number of moved
//! edges, then lexicographically), and the change is pushed through the part
//! of the tree visited so far. Afterwards every edge between visited nodes
//! and their neighbours is exact and each affected bag is reset to the
//! boundary of its local partition. Width and depth never grow.
//!
//! Edges leaving the visited region keep their cone pointing back into it;
//! only the outward cone is trimmed. This keeps the partition at the outside
//! node intact (a node outside the region is untouched until later).

use std::fmt;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};
use crate::game::{fmt_edges, solve_with_budget, GameConfig, RobberStrategy, Winner, DEFAULT_BUDGET};
use crate::graph::Graph;
use crate::ptd::{node_depths_of, PreTreeDecomposition};
use crate::strategy_tree::fuzz::fuzz_strategy;
use crate::strategy_tree::{build, build_with_cutoff, StrategyTree};
use crate::tree::{NodeId, RootedTree};
use crate::tree_decomp::TreeDecomposition;

/// Default cap on free edges searched exhaustively at one node.
pub const DEFAULT_FREE_EDGE_CAP: usize = 20;

#[derive(Debug, Clone)]
pub struct StepState {
    /// Steps done so far (`0` for the input).
    pub step: usize,
    pub ptd: PreTreeDecomposition,
    /// Visited nodes `s_1..s_i`.
    pub processed: Vec<bool>,
    /// `V(T_i)`: visited nodes and their neighbours.
    pub in_tree: Vec<bool>,
}

impl StepState {
    pub fn initial(st: &StrategyTree) -> Self {
        let n = st.ptd.tree.len();
        StepState {
            step: 0,
            ptd: st.ptd.clone(),
            processed: vec![false; n],
            in_tree: vec![false; n],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionChoice {
    /// `F_j` per child, in child order.
    pub per_child: Vec<EdgeSet>,
    /// `F = ∪ F_j`.
    pub union: EdgeSet,
    /// `F*_j = (gap_j ∪ F) ∖ F_j`.
    pub star: Vec<EdgeSet>,
    /// `|δ(π*)|` of the chosen extension.
    pub boundary: usize,
}

impl ExtensionChoice {
    fn empty(children: usize) -> Self {
        ExtensionChoice {
            per_child: vec![EdgeSet::new(); children],
            union: EdgeSet::new(),
            star: vec![EdgeSet::new(); children],
            boundary: 0,
        }
    }
}

/// Level order with ties by node id; the root first.
pub fn bfs_order(st: &StrategyTree) -> Vec<NodeId> {
    st.ptd.tree.bfs_order()
}

/// `gap_j = ¬γ(t_j, s) ∩ ¬γ(s, t_j)` for each child `t_j` of `s`.
fn gaps(p: &PreTreeDecomposition, s: NodeId) -> Vec<EdgeSet> {
    let all = p.host.all_edges();
    p.tree
        .children(s)
        .iter()
        .map(|&t| all.difference(&p.down[t].union(&p.up[t])))
        .collect()
}

/// Optimal disjoint extensions at `s`: minimum boundary, then fewest moved
/// edges, then the first assignment in (edge id, none < child order) order.
pub fn choose_extensions(state: &StepState, s: NodeId, cap: usize) -> Result<ExtensionChoice> {
    let p = &state.ptd;
    let children = p.tree.children(s).to_vec();
    let gaps = gaps(p, s);
    let free: Vec<usize> = gaps.iter().fold(EdgeSet::new(), |a, g| a.union(g)).to_vec();
    let mut choice = ExtensionChoice::empty(children.len());
    if free.len() > cap {
        return Err(Error::BudgetExhausted(format!(
            "search budget: {} free edges at node {s} exceed the cap of {cap}",
            free.len()
        )));
    }
    // block 0: toward the parent (if any); block j+1: toward child j
    let has_parent = p.tree.parent(s).is_some();
    let m = p.host.edge_count();
    let mut block = vec![usize::MAX; m];
    if has_parent {
        for e in &p.up[s] {
            block[e] = 0;
        }
    }
    for (j, &t) in children.iter().enumerate() {
        for e in &p.down[t] {
            block[e] = j + 1;
        }
    }
    if block.contains(&usize::MAX) && children.len() + usize::from(has_parent) > 1 {
        return Err(Error::Internal(format!("local tuple at node {s} is not a partition")));
    }
    if free.is_empty() {
        choice.boundary = p.local_boundary(s).len();
        return Ok(choice);
    }
    let eligible: Vec<Vec<usize>> = free
        .iter()
        .map(|&e| (0..children.len()).filter(|&j| gaps[j].contains(e)).collect())
        .collect();

    let mut search = Search {
        host: &p.host,
        free: &free,
        eligible: &eligible,
        block,
        decided: vec![true; m],
        assign: vec![None; free.len()],
        moved: 0,
        best: None,
    };
    for &e in &free {
        search.decided[e] = false;
    }
    search.run(0);
    let (boundary, _, assign) = search.best.expect("the empty assignment is always feasible");
    for (idx, a) in assign.iter().enumerate() {
        if let Some(j) = a {
            choice.per_child[*j].insert(free[idx]);
        }
    }
    choice.union = choice.per_child.iter().fold(EdgeSet::new(), |a, f| a.union(f));
    choice.star = gaps
        .iter()
        .zip(&choice.per_child)
        .map(|(g, f)| g.union(&choice.union).difference(f))
        .collect();
    choice.boundary = boundary;
    Ok(choice)
}

struct Search<'a> {
    host: &'a Graph,
    free: &'a [usize],
    eligible: &'a [Vec<usize>],
    /// Current block per edge (free edges start in their old block).
    block: Vec<usize>,
    decided: Vec<bool>,
    assign: Vec<Option<usize>>,
    moved: usize,
    best: Option<(usize, usize, Vec<Option<usize>>)>,
}

impl Search<'_> {
    /// Vertices already forced into the boundary by decided edges.
    fn lower_bound(&self) -> usize {
        let mut count = 0;
        for v in 0..self.host.vertex_count() {
            let mut seen = None;
            for e in self.host.incident(v) {
                if !self.decided[e] {
                    continue;
                }
                match seen {
                    None => seen = Some(self.block[e]),
                    Some(b) if b != self.block[e] => {
                        count += 1;
                        break;
                    }
                    _ => {}
                }
            }
        }
        count
    }

    fn worse_or_equal(&self, bound: usize, moved: usize) -> bool {
        match &self.best {
            Some((b, f, _)) => (bound, moved) >= (*b, *f),
            None => false,
        }
    }

    fn run(&mut self, idx: usize) {
        let lb = self.lower_bound();
        if self.worse_or_equal(lb, self.moved) {
            return;
        }
        if idx == self.free.len() {
            // every edge decided: the lower bound is the boundary
            self.best = Some((lb, self.moved, self.assign.clone()));
            return;
        }
        let e = self.free[idx];
        let old = self.block[e];
        self.decided[e] = true;
        self.assign[idx] = None;
        self.run(idx + 1);
        for jj in 0..self.eligible[idx].len() {
            let j = self.eligible[idx][jj];
            self.block[e] = j + 1;
            self.assign[idx] = Some(j);
            self.moved += 1;
            self.run(idx + 1);
            self.moved -= 1;
        }
        self.block[e] = old;
        self.assign[idx] = None;
        self.decided[e] = false;
    }
}

/// One step of the construction at `s` (the identity at childless nodes).
pub fn apply_step(state: &StepState, s: NodeId, choice: &ExtensionChoice) -> Result<StepState> {
    let mut next = state.clone();
    next.step += 1;
    next.processed[s] = true;
    let tree = state.ptd.tree.clone();
    next.in_tree[s] = true;
    for t in tree.neighbors(s) {
        next.in_tree[t] = true;
    }
    let children = tree.children(s).to_vec();
    if children.is_empty() {
        return Ok(next);
    }
    if choice.per_child.len() != children.len() {
        return Err(Error::Internal("extension choice does not match the children".into()));
    }
    let f = &choice.union;
    let prev = &state.ptd;
    let p = &mut next.ptd;
    for (parent, c) in tree.edges() {
        if !next.in_tree[parent] {
            continue;
        }
        if parent == s {
            let j = children.iter().position(|&t| t == c).unwrap();
            p.down[c] = prev.down[c].difference(f).union(&choice.per_child[j]);
            p.up[c] = prev.up[c].union(&choice.star[j]);
        } else if let Some(j) = children.iter().position(|&t| t == parent) {
            p.down[c] = prev.down[c].difference(&choice.star[j]);
        } else if tree.is_ancestor(c, s) {
            p.down[c] = prev.down[c].union(f);
            p.up[c] = prev.up[c].difference(f);
        } else {
            p.down[c] = prev.down[c].difference(f);
            if next.in_tree[c] {
                p.up[c] = prev.up[c].union(f);
            }
        }
    }
    for t in tree.nodes() {
        if next.in_tree[t] {
            p.bags[t] = p.local_boundary(t);
        }
    }
    Ok(next)
}

/// A failed check from [`verify_step`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepIssue {
    pub check: char,
    pub detail: String,
}

impl fmt::Display for StepIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.check, self.detail)
    }
}

fn union_on_path(tree: &RootedTree, bags: &[VertexSet], t: NodeId) -> VertexSet {
    tree.path_from_root(t)
        .into_iter()
        .fold(VertexSet::new(), |a, s| a.union(&bags[s]))
}

/// Checks everything the construction promises about the step from `prev`
/// to `next` at node `s`; an empty report means every check passed.
pub fn verify_step(prev: &StepState, next: &StepState, s: NodeId, original: &StrategyTree) -> Vec<StepIssue> {
    let mut out = Vec::new();
    let mut issue = |check: char, detail: String| out.push(StepIssue { check, detail });
    let p = &next.ptd;
    let orig = &original.ptd;
    let tree = &p.tree;

    // (a) still a pre-tree decomposition
    for v in p.validate() {
        issue('a', v.to_string());
    }
    // (b) edges inside T_i are exact
    for (a, b) in tree.edges() {
        if next.in_tree[a] && next.in_tree[b] && !p.is_exact_edge(a, b) {
            issue('b', format!("edge {a}-{b} is not exact"));
        }
    }
    // (c) cones below unvisited parents never exceed the original ones
    for (a, b) in tree.edges() {
        if !next.processed[a] && !p.down[b].is_subset(&orig.down[b]) {
            issue('c', format!("cone {a}->{b} grew beyond the original"));
        }
    }
    // (d) width
    if p.width() > orig.width() {
        issue('d', format!("width {} exceeds original {}", p.width(), orig.width()));
    }
    // (e) depth per node of T_i
    let depth_next = node_depths_of(tree, &p.bags);
    let depth_orig = node_depths_of(tree, &orig.bags);
    for t in tree.nodes() {
        if next.in_tree[t] && depth_next[t] > depth_orig[t] {
            issue('e', format!("depth at node {t} is {} > {}", depth_next[t], depth_orig[t]));
        }
    }
    // (f) the three claims
    let bi = &p.bags;
    let bp = &prev.ptd.bags;
    let b0 = &orig.bags;
    for &t in tree.children(s) {
        let new_here = bi[t].difference(&bi[s]);
        let new_orig = b0[t].difference(&b0[s]);
        if !new_here.is_subset(&new_orig) {
            issue('f', format!("node {t}: new vertices {new_here:?} not new in the original"));
        }
    }
    let old_region: Vec<NodeId> = tree.nodes().filter(|&t| prev.in_tree[t]).collect();
    for &t in &old_region {
        for v in &bi[t].difference(&bp[t]) {
            for u in tree.path(t, s) {
                if !bi[u].contains(v) {
                    issue('f', format!("vertex {v} added at {t} missing at {u} on the way to {s}"));
                }
            }
        }
        for v in &bp[t].difference(&bi[t]) {
            for &u in &old_region {
                if tree.path(u, s).contains(&t) && bi[u].contains(v) {
                    issue('f', format!("vertex {v} dropped at {t} still present at {u}"));
                }
            }
        }
    }
    // (g) vertex exchange at the greatest common ancestor
    for &t in &old_region {
        let now = union_on_path(tree, bi, t);
        let before = union_on_path(tree, bp, t);
        let u = now.difference(&before);
        let top = tree.gca(t, s);
        let w = bp[top].difference(&bi[top]);
        if u.len() > w.len() {
            issue('g', format!("node {t}: {} new vertices but only {} exchanged at {top}", u.len(), w.len()));
        }
        if !w.is_subset(&before.difference(&now)) {
            issue('g', format!("node {t}: exchanged vertices {w:?} survive on the path"));
        }
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub verify: bool,
    /// Free-edge cap for [`choose_extensions`]; `0` means the default.
    pub free_edge_cap: usize,
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub step: usize,
    pub node: NodeId,
    pub extensions: Vec<EdgeSet>,
    pub width: i64,
    pub depth: usize,
    pub issues: Vec<StepIssue>,
}

impl StepRecord {
    /// `step <i> node <s> F={...} width=<w> depth=<d>`.
    pub fn trace_line(&self) -> String {
        let fs: Vec<String> = self.extensions.iter().map(fmt_edges).collect();
        format!(
            "step {} node {} F={{{}}} width={} depth={}",
            self.step,
            self.node,
            fs.join(","),
            self.width,
            self.depth
        )
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub ptd: PreTreeDecomposition,
    pub steps: Vec<StepRecord>,
}

impl RunOutput {
    pub fn issues(&self) -> impl Iterator<Item = (usize, &StepIssue)> {
        self.steps.iter().flat_map(|r| r.issues.iter().map(move |i| (r.step, i)))
    }
}

/// Runs every step and returns the exact result with a per-step record.
pub fn run(st: &StrategyTree, opts: &RunOptions) -> Result<RunOutput> {
    let cap = if opts.free_edge_cap == 0 {
        DEFAULT_FREE_EDGE_CAP
    } else {
        opts.free_edge_cap
    };
    if let Some(v) = st.ptd.validate().first() {
        return Err(Error::InvalidInput(format!("input is not a pre-tree decomposition: {v}")));
    }
    let mut state = StepState::initial(st);
    let mut steps = Vec::new();
    for s in bfs_order(st) {
        let choice = if st.ptd.tree.children(s).is_empty() {
            ExtensionChoice::empty(0)
        } else {
            choose_extensions(&state, s, cap)?
        };
        let next = apply_step(&state, s, &choice)?;
        let issues = if opts.verify {
            verify_step(&state, &next, s, st)
        } else {
            // PT axioms are cheap enough to always guard
            next.ptd
                .validate()
                .into_iter()
                .map(|v| StepIssue {
                    check: 'a',
                    detail: v.to_string(),
                })
                .collect()
        };
        if !opts.verify {
            if let Some(i) = issues.first() {
                return Err(Error::Internal(format!("step {} at node {s} broke an axiom: {i}", next.step)));
            }
        }
        steps.push(StepRecord {
            step: next.step,
            node: s,
            extensions: choice.per_child.clone(),
            width: next.ptd.width(),
            depth: next.ptd.depth(),
            issues,
        });
        state = next;
    }
    Ok(RunOutput {
        ptd: state.ptd,
        steps,
    })
}

/// Final depth is at most the largest number of branching nodes on a
/// root-to-leaf path of the strategy tree.
pub fn check_branching_depth_bound(result: &PreTreeDecomposition, st: &StrategyTree) -> bool {
    result.depth() <= st.max_branching_on_paths()
}

#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    /// Inject non-monotone detours: (slack, seed).
    pub fuzz: Option<(usize, u64)>,
    /// Take the strategy from the general (non-monotone) game solver.
    pub nonmonotone: bool,
    pub verify: bool,
    pub budget: Option<usize>,
    pub free_edge_cap: usize,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum PipelineOutcome {
    Member {
        td: TreeDecomposition,
        exact: PreTreeDecomposition,
        tree: Box<StrategyTree>,
        run: RunOutput,
        /// Placement bound the strategy was built with (q plus any slack).
        q_used: usize,
    },
    NonMember(RobberStrategy),
}

/// Solve on `g°`, build the strategy tree (optionally of a fuzzed,
/// non-monotone strategy), make it exact and convert it into a tree
/// decomposition of `g`.
pub fn monotonize_pipeline(g: &Graph, k: usize, q: usize, opts: &PipelineOptions) -> Result<PipelineOutcome> {
    let host = g.closure();
    let cfg = GameConfig::new(k, q, opts.fuzz.is_none() && !opts.nonmonotone)?;
    let solved = solve_with_budget(&host, &cfg, opts.budget.unwrap_or(DEFAULT_BUDGET))?;
    if solved.winner == Winner::Robber {
        let rs = solved.robber_strategy.expect("robber wins with a strategy");
        return Ok(PipelineOutcome::NonMember(rs));
    }
    let sigma = solved.cop_strategy.expect("cop wins with a strategy");
    let (tree, q_used) = match opts.fuzz {
        None => (build(&host, &sigma, &cfg)?, q),
        Some((slack, seed)) => {
            let fuzzed = match fuzz_strategy(&host, &sigma, k, q, slack, seed) {
                Ok(f) => f.strategy,
                // nothing to perturb: fall back to the solver's strategy
                Err(Error::Precondition(_)) => sigma,
                Err(e) => return Err(e),
            };
            let loose = GameConfig::new(k, q + slack, false)?;
            (build_with_cutoff(&host, &fuzzed, &loose, q + slack)?, q + slack)
        }
    };
    let run = run(
        &tree,
        &RunOptions {
            verify: opts.verify,
            free_edge_cap: opts.free_edge_cap,
        },
    )?;
    if let Some((step, i)) = run.issues().next() {
        return Err(Error::Internal(format!("step {step} failed verification: {i}")));
    }
    let td = run.ptd.to_tree_decomposition(g)?;
    Ok(PipelineOutcome::Member {
        td,
        exact: run.ptd.clone(),
        tree: Box::new(tree),
        run,
        q_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::solve;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    fn fuzzed_tree(base: &Graph, k: usize, q: usize, slack: usize, seed: u64) -> StrategyTree {
        let host = base.closure();
        let cfg = GameConfig::new(k, q, true).unwrap();
        let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
        let f = fuzz_strategy(&host, &sigma, k, q, slack, seed).unwrap();
        let loose = GameConfig::new(k, q + slack, false).unwrap();
        build_with_cutoff(&host, &f.strategy, &loose, q + slack).unwrap()
    }

    fn check_run(st: &StrategyTree) -> RunOutput {
        let out = run(st, &RunOptions { verify: true, free_edge_cap: 0 }).unwrap();
        let issues: Vec<String> = out.issues().map(|(s, i)| format!("step {s}: {i}")).collect();
        assert!(issues.is_empty(), "{issues:#?}");
        assert!(out.ptd.is_exact());
        assert!(out.ptd.width() <= st.ptd.width());
        assert!(out.ptd.depth() <= st.ptd.depth());
        assert!(check_branching_depth_bound(&out.ptd, st));
        out
    }

    #[test]
    fn e1_fuzzed_run() {
        let base = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let st = fuzzed_tree(&base, 2, 2, 1, 7);
        assert!(!st.ptd.is_exact());
        let out = check_run(&st);
        assert!(out.ptd.width() <= 1);
        assert!(out.ptd.depth() <= 2);
        let td = out.ptd.to_tree_decomposition(&base).unwrap();
        assert!(td.is_valid() && td.width() <= 1 && td.depth() <= 2);
    }

    #[test]
    fn already_exact_input_is_kept() {
        let base = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let host = base.closure();
        let cfg = GameConfig::new(2, 2, true).unwrap();
        let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
        let st = build(&host, &sigma, &cfg).unwrap();
        let out = check_run(&st);
        assert_eq!(out.ptd, st.ptd);
        assert!(out.steps.iter().all(|r| r.extensions.iter().all(|f| f.is_empty())));
    }

    #[test]
    fn fuzzed_k3_and_c4_runs() {
        let k3 = complete(3);
        for seed in 0..4 {
            check_run(&fuzzed_tree(&k3, 3, 3, 2, seed));
        }
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let host = c4.closure();
        let (k, q) = (3, 4);
        assert_eq!(solve(&host, &GameConfig::new(k, q, true).unwrap()).unwrap().winner, Winner::Cop);
        for seed in 0..4 {
            check_run(&fuzzed_tree(&c4, k, q, 2, seed));
        }
    }

    #[test]
    fn identity_at_leaves_and_trace() {
        let base = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let st = fuzzed_tree(&base, 2, 2, 1, 7);
        let state = StepState::initial(&st);
        let leaf = *st.ptd.tree.leaves().last().unwrap();
        let next = apply_step(&state, leaf, &ExtensionChoice::empty(0)).unwrap();
        assert_eq!(next.ptd, state.ptd);
        assert!(verify_step(&state, &next, leaf, &st).is_empty());
        let out = run(&st, &RunOptions::default()).unwrap();
        assert!(out.steps[0].trace_line().starts_with("step 1 node 0 F={"));
    }

    #[test]
    fn free_edge_cap_errors() {
        let base = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let st = fuzzed_tree(&base, 2, 2, 1, 7);
        let mut state = StepState::initial(&st);
        let mut hit = false;
        for s in bfs_order(&st) {
            if !gaps(&state.ptd, s).iter().all(|g| g.is_empty()) {
                assert!(matches!(choose_extensions(&state, s, 0), Err(Error::BudgetExhausted(_))));
                hit = true;
            }
            let choice = if st.ptd.tree.children(s).is_empty() {
                ExtensionChoice::empty(0)
            } else {
                choose_extensions(&state, s, DEFAULT_FREE_EDGE_CAP).unwrap()
            };
            state = apply_step(&state, s, &choice).unwrap();
        }
        assert!(hit, "the detour leaves free edges somewhere");
    }

    #[test]
    fn pipeline_examples() {
        let e1 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        match monotonize_pipeline(&e1, 2, 2, &PipelineOptions::default()).unwrap() {
            PipelineOutcome::Member { td, .. } => {
                assert!(td.is_valid() && td.width() <= 1 && td.depth() <= 2)
            }
            _ => panic!("E1 is in T^2_2"),
        }
        let k3 = complete(3);
        let opts = PipelineOptions {
            fuzz: Some((1, 3)),
            verify: true,
            ..Default::default()
        };
        match monotonize_pipeline(&k3, 3, 3, &opts).unwrap() {
            PipelineOutcome::Member { td, .. } => {
                assert!(td.is_valid() && td.width() <= 2 && td.depth() <= 3)
            }
            _ => panic!("K3 is in T^3_3"),
        }
        let general = PipelineOptions {
            nonmonotone: true,
            verify: true,
            ..Default::default()
        };
        match monotonize_pipeline(&k3, 3, 3, &general).unwrap() {
            PipelineOutcome::Member { td, q_used, .. } => {
                assert!(q_used == 3 && td.is_valid() && td.depth() <= 3)
            }
            _ => panic!("K3 is in T^3_3"),
        }
        assert!(matches!(
            monotonize_pipeline(&k3, 2, 5, &PipelineOptions::default()).unwrap(),
            PipelineOutcome::NonMember(_)
        ));
        let empty = Graph::new(2);
        match monotonize_pipeline(&empty, 1, 1, &PipelineOptions::default()).unwrap() {
            PipelineOutcome::Member { td, .. } => assert!(td.is_valid() && td.depth() <= 1),
            _ => panic!("edgeless graphs are members"),
        }
    }
}
