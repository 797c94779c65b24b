//! The q-placement k-cops-and-robber game, monotone and non-monotone.
//!
//! A cop turn is a macro-move: remove a set `R ⊆ X`, then place one new cop
//! `v ∉ X`. The robber sees the intermediate set `Y = X ∖ R`: he may move to
//! any part of `G^{X'}` inside the part of `G^Y` holding him. Positions are
//! quotiented by robber part, so a position is `(X, part, j)`.
//!
//! Moves that re-place a just-removed cop (`v ∈ R`) are never better for
//! the cops than removing less, so the solver does not enumerate them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};

/// Positions a solver may expand before giving up.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameConfig {
    pub k: usize,
    pub q: usize,
    pub monotone: bool,
}

impl GameConfig {
    pub fn new(k: usize, q: usize, monotone: bool) -> Result<Self> {
        if k == 0 || q == 0 {
            return Err(invalid(format!("k and q must be at least 1 (got k={k}, q={q})")));
        }
        Ok(GameConfig { k, q, monotone })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Winner {
    Cop,
    Robber,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Cop => "cop",
            Winner::Robber => "robber",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub cops: VertexSet,
    /// Edge set of the robber's part of `G^cops`.
    pub robber: EdgeSet,
    pub placements: usize,
}

/// One macro-move: remove `removed`, then place `placed`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopMove {
    pub removed: VertexSet,
    pub placed: Vertex,
    pub next: VertexSet,
}

impl CopMove {
    /// The cop set the robber moves around: `X ∖ R`.
    pub fn intermediate(&self, cops: &VertexSet) -> VertexSet {
        cops.difference(&self.removed)
    }
}

/// A positional cop strategy `(X, robber part) -> X'`. The removal set of a
/// move is `X ∖ X'` and the placed vertex is the single vertex of `X' ∖ X`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Strategy {
    moves: BTreeMap<(VertexSet, EdgeSet), VertexSet>,
}

impl Strategy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, cops: VertexSet, robber: EdgeSet, next: VertexSet) -> Option<VertexSet> {
        self.moves.insert((cops, robber), next)
    }

    pub fn get(&self, cops: &VertexSet, robber: &EdgeSet) -> Option<&VertexSet> {
        self.moves.get(&(cops.clone(), robber.clone()))
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(VertexSet, EdgeSet), &VertexSet)> {
        self.moves.iter()
    }

    /// One `(cops | part) -> cops` line per entry; vertices 1-based, edge ids
    /// 0-based.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for ((x, r), next) in &self.moves {
            out.push_str(&format!(
                "({} | {}) -> {}\n",
                fmt_vertices(x),
                fmt_edges(r),
                fmt_vertices(next)
            ));
        }
        out
    }
}

/// Robber strategy: an initial part and a response to every cop move met
/// while following it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RobberStrategy {
    pub initial: Option<EdgeSet>,
    /// `(X, part, j, X') -> new part`.
    pub responses: BTreeMap<(VertexSet, EdgeSet, usize, VertexSet), EdgeSet>,
}

impl RobberStrategy {
    /// `initial {part}` then `({X} | {part} | j) after {X'} -> {part'}` lines.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if let Some(p) = &self.initial {
            out.push_str(&format!("initial {}\n", fmt_edges(p)));
        }
        for ((x, r, j, next), to) in &self.responses {
            out.push_str(&format!(
                "({} | {} | {j}) after {} -> {}\n",
                fmt_vertices(x),
                fmt_edges(r),
                fmt_vertices(next),
                fmt_edges(to)
            ));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub winner: Winner,
    pub cop_strategy: Option<Strategy>,
    pub robber_strategy: Option<RobberStrategy>,
    pub position_count: usize,
    /// Fewest placements that still win for the cops, if they win.
    pub placements_needed: Option<usize>,
}

pub fn fmt_vertices(x: &VertexSet) -> String {
    let items: Vec<String> = x.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn fmt_edges(x: &EdgeSet) -> String {
    let items: Vec<String> = x.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Parts of `G^X` that carry edges, with a capture flag and an edge→part map.
#[derive(Debug)]
pub(crate) struct PartTable {
    pub parts: Vec<EdgeSet>,
    pub captured: Vec<bool>,
    pub owner: Vec<usize>,
}

impl PartTable {
    pub fn new(g: &Graph, x: &VertexSet) -> Self {
        let mut parts = Vec::new();
        let mut captured = Vec::new();
        let mut owner = vec![usize::MAX; g.edge_count()];
        for (i, (edges, single)) in g.edge_parts(x).into_iter().enumerate() {
            for e in &edges {
                owner[e] = i;
            }
            parts.push(edges);
            captured.push(single);
        }
        PartTable {
            parts,
            captured,
            owner,
        }
    }

    pub fn index_of(&self, part: &EdgeSet) -> Option<usize> {
        let i = *self.owner.get(part.first()?)?;
        (self.parts[i] == *part).then_some(i)
    }

    /// Indices of the parts meeting `area`, ascending.
    pub fn parts_within(&self, area: &EdgeSet) -> Vec<usize> {
        let mut idx: Vec<usize> = area.iter().map(|e| self.owner[e]).collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }
}

/// Robber parts available at the start: the components of `G` with edges.
pub fn initial_parts(g: &Graph) -> Vec<EdgeSet> {
    g.edge_parts(&VertexSet::new()).into_iter().map(|(e, _)| e).collect()
}

/// The robber part is a single edge (or loop) with every endpoint guarded.
pub fn is_capture(g: &Graph, cops: &VertexSet, robber: &EdgeSet) -> bool {
    robber.len() == 1 && g.vertices_of(robber).is_subset(cops)
}

/// Whether the macro-move keeps the robber's part from growing at the
/// removal stage.
pub fn is_monotone_move(g: &Graph, pos: &Position, mv: &CopMove) -> Result<bool> {
    let e = pos.robber.first().ok_or_else(|| invalid("empty robber part"))?;
    let area = g.robber_component(&mv.intermediate(&pos.cops), e)?;
    Ok(area == pos.robber)
}

/// Every macro-move `(R, v)` with `R ⊆ X`, `v ∉ X ∖ R`, `|X'| ≤ k`, ordered
/// by (removal set, vertex). Empty when `j = q`. In monotone mode only moves
/// passing [`is_monotone_move`] are listed.
pub fn legal_cop_moves(g: &Graph, cfg: &GameConfig, pos: &Position) -> Result<Vec<CopMove>> {
    if pos.placements >= cfg.q {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for removed in subsets_ordered(&pos.cops) {
        let y = pos.cops.difference(&removed);
        for v in 0..g.vertex_count() {
            if y.contains(v) {
                continue;
            }
            let mut next = y.clone();
            next.insert(v);
            if next.len() > cfg.k {
                continue;
            }
            let mv = CopMove {
                removed: removed.clone(),
                placed: v,
                next,
            };
            if cfg.monotone && !is_monotone_move(g, pos, &mv)? {
                continue;
            }
            out.push(mv);
        }
    }
    Ok(out)
}

/// Parts of `G^{X'}` inside the part of `G^{X∖R}` that holds the robber.
pub fn legal_robber_responses(g: &Graph, pos: &Position, mv: &CopMove) -> Result<Vec<EdgeSet>> {
    let e = pos.robber.first().ok_or_else(|| invalid("empty robber part"))?;
    let area = g.robber_component(&mv.intermediate(&pos.cops), e)?;
    let table = PartTable::new(g, &mv.next);
    Ok(table
        .parts_within(&area)
        .into_iter()
        .map(|i| table.parts[i].clone())
        .collect())
}

/// All subsets of `x`, in the set order (`{} < {0} < {0,1} < {1}`).
pub(crate) fn subsets_ordered(x: &VertexSet) -> Vec<VertexSet> {
    let members = x.to_vec();
    let mut out: Vec<VertexSet> = (0u32..1 << members.len())
        .map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// A candidate move as the solver sees it.
#[derive(Debug, Clone)]
struct SolverMove {
    removed: VertexSet,
    placed: Vertex,
    next: VertexSet,
    table: Rc<PartTable>,
    responses: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    /// Largest remaining-placement count known to lose (`-1`: none).
    lose_max: i64,
    /// Smallest remaining-placement count known to win (`i64::MAX`: none).
    win_min: i64,
}

/// Memoized game solver for one graph, cop count and mode. Values are kept
/// per remaining-placement count, so one solver answers every `q`.
pub struct Solver<'g> {
    g: &'g Graph,
    k: usize,
    monotone: bool,
    budget: usize,
    tables: HashMap<VertexSet, Rc<PartTable>>,
    memo: HashMap<(VertexSet, usize), Bounds>,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g Graph, k: usize, monotone: bool) -> Self {
        Solver {
            g,
            k,
            monotone,
            budget: DEFAULT_BUDGET,
            tables: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn position_count(&self) -> usize {
        self.memo.len()
    }

    fn table(&mut self, x: &VertexSet) -> Rc<PartTable> {
        if let Some(t) = self.tables.get(x) {
            return t.clone();
        }
        let t = Rc::new(PartTable::new(self.g, x));
        self.tables.insert(x.clone(), t.clone());
        t
    }

    /// Candidate moves at `(x, part)`, in (removal set, vertex) order.
    fn moves(&mut self, x: &VertexSet, part: usize) -> Vec<SolverMove> {
        let here = self.table(x);
        let robber = here.parts[part].clone();
        let first = robber.first().expect("parts carry edges");
        let mut out = Vec::new();
        for removed in subsets_ordered(x) {
            let y = x.difference(&removed);
            if y.len() + 1 > self.k {
                continue;
            }
            let ty = self.table(&y);
            let area = &ty.parts[ty.owner[first]];
            if self.monotone && *area != robber {
                continue;
            }
            let area = area.clone();
            for v in 0..self.g.vertex_count() {
                if x.contains(v) {
                    continue;
                }
                let mut next = y.clone();
                next.insert(v);
                let table = self.table(&next);
                let responses = table.parts_within(&area);
                out.push(SolverMove {
                    removed: removed.clone(),
                    placed: v,
                    next,
                    table,
                    responses,
                });
            }
        }
        out
    }

    /// Whether the cops, to move at `(x, part)` with `rem` placements left,
    /// can force a capture.
    pub fn wins(&mut self, x: &VertexSet, part: usize, rem: usize) -> Result<bool> {
        if rem == 0 {
            return Ok(false);
        }
        let key = (x.clone(), part);
        let rem_i = rem as i64;
        if let Some(b) = self.memo.get(&key) {
            if rem_i >= b.win_min {
                return Ok(true);
            }
            if rem_i <= b.lose_max {
                return Ok(false);
            }
        } else {
            if self.memo.len() >= self.budget {
                return Err(Error::BudgetExhausted(format!(
                    "solver expanded {} positions",
                    self.memo.len()
                )));
            }
            self.memo.insert(
                key.clone(),
                Bounds {
                    lose_max: 0,
                    win_min: i64::MAX,
                },
            );
        }
        let mut result = false;
        'moves: for mv in self.moves(x, part) {
            for &s in &mv.responses {
                if !mv.table.captured[s] && !self.wins(&mv.next, s, rem - 1)? {
                    continue 'moves;
                }
            }
            result = true;
            break;
        }
        let b = self.memo.get_mut(&key).expect("inserted above");
        if result {
            b.win_min = b.win_min.min(rem_i);
        } else {
            b.lose_max = b.lose_max.max(rem_i);
        }
        Ok(result)
    }

    /// Fewest remaining placements that win from `(x, part)`, if at most `cap`.
    pub fn need(&mut self, x: &VertexSet, part: usize, cap: usize) -> Result<Option<usize>> {
        for rem in 1..=cap {
            if self.wins(x, part, rem)? {
                return Ok(Some(rem));
            }
        }
        Ok(None)
    }

    /// Winner of the game with `q` placements.
    pub fn decide(&mut self, q: usize) -> Result<Winner> {
        let root = self.table(&VertexSet::new());
        for i in 0..root.parts.len() {
            if !self.wins(&VertexSet::new(), i, q)? {
                return Ok(Winner::Robber);
            }
        }
        Ok(Winner::Cop)
    }

    /// Positional cop strategy along the plays it allows: at each position
    /// the first move, in (removal set, vertex) order, among those using the
    /// fewest placements.
    pub fn cop_strategy(&mut self, q: usize) -> Result<Strategy> {
        let mut strategy = Strategy::new();
        let root = self.table(&VertexSet::new());
        let mut queue: Vec<(VertexSet, usize)> =
            (0..root.parts.len()).map(|i| (VertexSet::new(), i)).collect();
        let mut seen: HashSet<(VertexSet, usize)> = queue.iter().cloned().collect();
        let mut head = 0;
        while head < queue.len() {
            let (x, part) = queue[head].clone();
            head += 1;
            let h = self
                .need(&x, part, q)?
                .ok_or_else(|| Error::Precondition("the cops do not win this position".into()))?;
            let mut chosen = None;
            'moves: for mv in self.moves(&x, part) {
                for &s in &mv.responses {
                    if !mv.table.captured[s] && !self.wins(&mv.next, s, h - 1)? {
                        continue 'moves;
                    }
                }
                chosen = Some(mv);
                break;
            }
            let mv = chosen.ok_or_else(|| Error::Internal("no optimal move found".into()))?;
            let robber = self.table(&x).parts[part].clone();
            strategy.insert(x.clone(), robber, mv.next.clone());
            for &s in &mv.responses {
                if !mv.table.captured[s] && seen.insert((mv.next.clone(), s)) {
                    queue.push((mv.next.clone(), s));
                }
            }
        }
        Ok(strategy)
    }

    /// Robber strategy: the first losing initial part, then at every cop move
    /// the first surviving response.
    pub fn robber_strategy(&mut self, q: usize) -> Result<RobberStrategy> {
        let empty = VertexSet::new();
        let root = self.table(&empty);
        let mut start = None;
        for i in 0..root.parts.len() {
            if !self.wins(&empty, i, q)? {
                start = Some(i);
                break;
            }
        }
        let start =
            start.ok_or_else(|| Error::Precondition("the robber does not win this game".into()))?;
        let mut rs = RobberStrategy {
            initial: Some(root.parts[start].clone()),
            responses: BTreeMap::new(),
        };
        let mut queue = vec![(empty, start, 0usize)];
        let mut seen: HashSet<(VertexSet, usize, usize)> = queue.iter().cloned().collect();
        while let Some((x, part, j)) = queue.pop() {
            if j >= q {
                continue;
            }
            let robber = self.table(&x).parts[part].clone();
            for mv in self.moves(&x, part) {
                let mut pick = None;
                for &s in &mv.responses {
                    if !mv.table.captured[s] && !self.wins(&mv.next, s, q - j - 1)? {
                        pick = Some(s);
                        break;
                    }
                }
                let s = pick.ok_or_else(|| Error::Internal("robber has no surviving response".into()))?;
                rs.responses.insert(
                    (x.clone(), robber.clone(), j, mv.next.clone()),
                    mv.table.parts[s].clone(),
                );
                if seen.insert((mv.next.clone(), s, j + 1)) {
                    queue.push((mv.next.clone(), s, j + 1));
                }
            }
        }
        Ok(rs)
    }

    /// Candidate macro-moves at a position, as public values.
    pub fn candidate_moves(&mut self, x: &VertexSet, robber: &EdgeSet) -> Result<Vec<(CopMove, Vec<EdgeSet>)>> {
        let table = self.table(x);
        let part = table
            .index_of(robber)
            .ok_or_else(|| invalid("robber set is not a part of the edge component graph"))?;
        Ok(self
            .moves(x, part)
            .into_iter()
            .map(|m| {
                let resp = m.responses.iter().map(|&s| m.table.parts[s].clone()).collect();
                (
                    CopMove {
                        removed: m.removed,
                        placed: m.placed,
                        next: m.next,
                    },
                    resp,
                )
            })
            .collect())
    }

    /// `wins` for a position given by its robber edge set.
    pub fn wins_at(&mut self, x: &VertexSet, robber: &EdgeSet, rem: usize) -> Result<bool> {
        let part = self
            .table(x)
            .index_of(robber)
            .ok_or_else(|| invalid("robber set is not a part of the edge component graph"))?;
        self.wins(x, part, rem)
    }
}

/// Winner only.
pub fn decide(g: &Graph, cfg: &GameConfig) -> Result<Winner> {
    decide_with_budget(g, cfg, DEFAULT_BUDGET)
}

pub fn decide_with_budget(g: &Graph, cfg: &GameConfig, budget: usize) -> Result<Winner> {
    Solver::new(g, cfg.k, cfg.monotone).with_budget(budget).decide(cfg.q)
}

/// Exact game value plus the winner's strategy.
pub fn solve(g: &Graph, cfg: &GameConfig) -> Result<SolveResult> {
    solve_with_budget(g, cfg, DEFAULT_BUDGET)
}

pub fn solve_with_budget(g: &Graph, cfg: &GameConfig, budget: usize) -> Result<SolveResult> {
    let mut solver = Solver::new(g, cfg.k, cfg.monotone).with_budget(budget);
    let winner = solver.decide(cfg.q)?;
    let mut result = SolveResult {
        winner,
        cop_strategy: None,
        robber_strategy: None,
        position_count: 0,
        placements_needed: None,
    };
    match winner {
        Winner::Cop => {
            let empty = VertexSet::new();
            let mut need = 0;
            for i in 0..initial_parts(g).len() {
                need = need.max(solver.need(&empty, i, cfg.q)?.unwrap_or(0));
            }
            result.placements_needed = Some(need);
            result.cop_strategy = Some(solver.cop_strategy(cfg.q)?);
        }
        Winner::Robber => result.robber_strategy = Some(solver.robber_strategy(cfg.q)?),
    }
    result.position_count = solver.position_count();
    Ok(result)
}

/// Winners of the monotone and non-monotone games on `g` and on `g°`
/// coincide.
pub fn winners_agree(g: &Graph, k: usize, q: usize) -> Result<bool> {
    let closed = g.closure();
    let mut first = None;
    for host in [&closed, g] {
        for monotone in [true, false] {
            let w = decide(host, &GameConfig::new(k, q, monotone)?)?;
            if *first.get_or_insert(w) != w {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Why a cop strategy fails to win.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyFailure {
    Missing(VertexSet, EdgeSet),
    Illegal { cops: VertexSet, robber: EdgeSet, next: VertexSet, why: String },
    /// Some play revisits a position forever.
    Cycle(VertexSet, EdgeSet),
    /// Some play needs more than `q` placements.
    TooSlow { needed: usize, q: usize },
}

impl fmt::Display for StrategyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyFailure::Missing(x, r) => {
                write!(f, "no move at ({} | {})", fmt_vertices(x), fmt_edges(r))
            }
            StrategyFailure::Illegal {
                cops,
                robber,
                next,
                why,
            } => write!(
                f,
                "illegal move ({} | {}) -> {}: {why}",
                fmt_vertices(cops),
                fmt_edges(robber),
                fmt_vertices(next)
            ),
            StrategyFailure::Cycle(x, r) => {
                write!(f, "play cycles through ({} | {})", fmt_vertices(x), fmt_edges(r))
            }
            StrategyFailure::TooSlow { needed, q } => {
                write!(f, "strategy needs {needed} placements but only {q} are allowed")
            }
        }
    }
}

/// Checks one strategy move and returns the robber's possible replies.
pub(crate) fn strategy_step(
    g: &Graph,
    k: usize,
    monotone: bool,
    x: &VertexSet,
    robber: &EdgeSet,
    next: &VertexSet,
) -> std::result::Result<Vec<(EdgeSet, bool)>, StrategyFailure> {
    let illegal = |why: &str| StrategyFailure::Illegal {
        cops: x.clone(),
        robber: robber.clone(),
        next: next.clone(),
        why: why.to_string(),
    };
    if next.len() > k {
        return Err(illegal("too many cops"));
    }
    if next.difference(x).len() != 1 {
        return Err(illegal("a move places exactly one new cop"));
    }
    if next.bound() > g.vertex_count() {
        return Err(illegal("unknown vertex"));
    }
    let y = x.intersection(next);
    let first = robber.first().ok_or_else(|| illegal("empty robber part"))?;
    let area = g.robber_component(&y, first).map_err(|e| illegal(&e.to_string()))?;
    if monotone && area != *robber {
        return Err(illegal("move is not monotone"));
    }
    let table = PartTable::new(g, next);
    Ok(table
        .parts_within(&area)
        .into_iter()
        .map(|i| (table.parts[i].clone(), table.captured[i]))
        .collect())
}

/// Worst-case number of placements `σ` uses before capture (0 on an
/// edgeless graph).
pub fn strategy_need(
    g: &Graph,
    k: usize,
    monotone: bool,
    sigma: &Strategy,
) -> std::result::Result<usize, StrategyFailure> {
    struct Walk<'a> {
        g: &'a Graph,
        k: usize,
        monotone: bool,
        sigma: &'a Strategy,
        done: HashMap<(VertexSet, EdgeSet), usize>,
        active: HashSet<(VertexSet, EdgeSet)>,
    }
    impl Walk<'_> {
        fn need(&mut self, x: &VertexSet, r: &EdgeSet) -> std::result::Result<usize, StrategyFailure> {
            let key = (x.clone(), r.clone());
            if let Some(&n) = self.done.get(&key) {
                return Ok(n);
            }
            if !self.active.insert(key.clone()) {
                return Err(StrategyFailure::Cycle(x.clone(), r.clone()));
            }
            let next = self
                .sigma
                .get(x, r)
                .ok_or_else(|| StrategyFailure::Missing(x.clone(), r.clone()))?
                .clone();
            let replies = strategy_step(self.g, self.k, self.monotone, x, r, &next)?;
            let mut worst = 0;
            for (s, captured) in replies {
                if !captured {
                    worst = worst.max(self.need(&next, &s)?);
                }
            }
            self.active.remove(&key);
            self.done.insert(key, worst + 1);
            Ok(worst + 1)
        }
    }
    let mut walk = Walk {
        g,
        k,
        monotone,
        sigma,
        done: HashMap::new(),
        active: HashSet::new(),
    };
    let mut worst = 0;
    for r in initial_parts(g) {
        worst = worst.max(walk.need(&VertexSet::new(), &r)?);
    }
    Ok(worst)
}

/// Replays `σ` against every robber behaviour.
pub fn verify_cop_strategy(g: &Graph, cfg: &GameConfig, sigma: &Strategy) -> Result<()> {
    match strategy_need(g, cfg.k, cfg.monotone, sigma) {
        Ok(n) if n <= cfg.q => Ok(()),
        Ok(n) => Err(Error::StrategyLoses(
            StrategyFailure::TooSlow { needed: n, q: cfg.q }.to_string(),
        )),
        Err(f) => Err(Error::StrategyLoses(f.to_string())),
    }
}

/// Plays the robber strategy against every cop move (new cops only placed
/// off the current set) and checks that it survives `q` placements.
pub fn verify_robber_strategy(g: &Graph, cfg: &GameConfig, rs: &RobberStrategy) -> Result<()> {
    let lose = |m: String| Error::StrategyLoses(m);
    let start = rs.initial.clone().ok_or_else(|| lose("no initial part".into()))?;
    if !initial_parts(g).contains(&start) {
        return Err(lose("initial part is not a component".into()));
    }
    let mut solver = Solver::new(g, cfg.k, cfg.monotone);
    let mut seen = HashSet::new();
    let mut stack = vec![(VertexSet::new(), start, 0usize)];
    while let Some((x, r, j)) = stack.pop() {
        if j >= cfg.q || !seen.insert((x.clone(), r.clone(), j)) {
            continue;
        }
        for (mv, replies) in solver.candidate_moves(&x, &r)? {
            let s = rs
                .responses
                .get(&(x.clone(), r.clone(), j, mv.next.clone()))
                .ok_or_else(|| {
                    lose(format!(
                        "no response at ({} | {}) j={j} -> {}",
                        fmt_vertices(&x),
                        fmt_edges(&r),
                        fmt_vertices(&mv.next)
                    ))
                })?;
            if !replies.contains(s) {
                return Err(lose(format!("response {} is not reachable", fmt_edges(s))));
            }
            if is_capture(g, &mv.next, s) {
                return Err(lose(format!("response {} is captured", fmt_edges(s))));
            }
            stack.push((mv.next.clone(), s.clone(), j + 1));
        }
    }
    Ok(())
}

/// Reference minimax over primitive states (cop set, robber edge, counter).
/// No memo and no edge component graph: the robber walks edge to edge
/// through vertices outside `X ∖ R`. Exponential; test use only.
pub fn brute_force_cop_wins(g: &Graph, cfg: &GameConfig) -> bool {
    fn reachable(g: &Graph, start: usize, blocked: &VertexSet) -> Vec<usize> {
        let mut seen = vec![false; g.edge_count()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(e) = stack.pop() {
            out.push(e);
            let edge = g.edge(e);
            for w in [edge.u, edge.v] {
                if blocked.contains(w) {
                    continue;
                }
                for (f, fe) in g.edges().iter().enumerate() {
                    if !seen[f] && (fe.u == w || fe.v == w) {
                        seen[f] = true;
                        stack.push(f);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
    fn cop_wins(g: &Graph, cfg: &GameConfig, x: &VertexSet, e: usize, j: usize) -> bool {
        if j >= cfg.q {
            return false;
        }
        let members = x.to_vec();
        for mask in 0u32..1 << members.len() {
            let y: VertexSet = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, &v)| v)
                .collect();
            let escape = reachable(g, e, &y);
            if cfg.monotone && escape != reachable(g, e, x) {
                continue;
            }
            for v in 0..g.vertex_count() {
                if y.contains(v) {
                    continue;
                }
                let mut next = y.clone();
                next.insert(v);
                if next.len() > cfg.k {
                    continue;
                }
                let all_lose = escape.iter().all(|&f| {
                    let fe = g.edge(f);
                    (next.contains(fe.u) && next.contains(fe.v)) || cop_wins(g, cfg, &next, f, j + 1)
                });
                if all_lose {
                    return true;
                }
            }
        }
        false
    }
    (0..g.edge_count()).all(|e| cop_wins(g, cfg, &VertexSet::new(), e, 0))
}

/// A game trace line: `round <i>: cops {…} j=<j> robber-part {…}`.
pub fn trace_line(round: usize, pos: &Position) -> String {
    format!(
        "round {round}: cops {} j={} robber-part {}",
        fmt_vertices(&pos.cops),
        pos.placements,
        fmt_edges(&pos.robber)
    )
}
