//! Strategy trees: a cop strategy replayed against every robber behaviour,
//! recorded as a pre-tree decomposition of the closure graph.
//!
//! Each macro-move becomes one or two tree edges. With a nonempty removal
//! set there is first a removal node (bag `X ∖ R`, a single child whose cone
//! is the robber's grown part) and then a placement node (bag `X'`). Without
//! removals only the placement node is created. Captures become leaves whose
//! bag is the endpoint set of the caught edge.

pub mod fuzz;

use std::collections::VecDeque;
use std::fmt;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{invalid, Error, Result};
use crate::game::{
    fmt_edges, fmt_vertices, initial_parts, is_capture, strategy_need, strategy_step, trace_line,
    GameConfig, Position, Strategy,
};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::ptd::PreTreeDecomposition;
use crate::tree::NodeId;

/// Node count at which building gives up.
pub const MAX_TREE_NODES: usize = 2_000_000;

/// The game step that created a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeMove {
    Root,
    Remove(VertexSet),
    Place(Vertex),
    Capture(EdgeId),
}

impl fmt::Display for TreeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeMove::Root => write!(f, "root"),
            TreeMove::Remove(r) => {
                write!(f, "remove")?;
                for v in r {
                    write!(f, " {}", v + 1)?;
                }
                Ok(())
            }
            TreeMove::Place(v) => write!(f, "place {}", v + 1),
            TreeMove::Capture(e) => write!(f, "capture {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTree {
    pub ptd: PreTreeDecomposition,
    pub branching: Vec<bool>,
    pub moves: Vec<TreeMove>,
    /// The strategy the tree was built from, when known.
    pub strategy: Option<Strategy>,
}

struct Pending {
    parent: NodeId,
    cone: EdgeSet,
    cops: VertexSet,
    placements: usize,
    play: Vec<Position>,
}

fn escaping_play(play: &[Position], last: Position, why: &str) -> Error {
    let mut msg = format!("{why}; play:");
    for (i, p) in play.iter().chain(std::iter::once(&last)).enumerate() {
        msg.push_str("\n  ");
        msg.push_str(&trace_line(i, p));
    }
    Error::StrategyLoses(msg)
}

/// Builds the strategy tree of `sigma` on the closure graph `host`, refusing
/// plays that need more than `cfg.q` placements.
pub fn build(host: &Graph, sigma: &Strategy, cfg: &GameConfig) -> Result<StrategyTree> {
    build_with_cutoff(host, sigma, cfg, cfg.q)
}

/// As [`build`] with an explicit placement cutoff (used for strategies that
/// are only known to win with extra placements).
pub fn build_with_cutoff(
    host: &Graph,
    sigma: &Strategy,
    cfg: &GameConfig,
    cutoff: usize,
) -> Result<StrategyTree> {
    if !host.is_closed() {
        return Err(invalid("strategy trees are built on closure graphs"));
    }
    let all = host.all_edges();
    let mut ptd = PreTreeDecomposition::trivial(host.clone());
    let mut branching = vec![false];
    let mut moves = vec![TreeMove::Root];
    let mut queue: VecDeque<Pending> = initial_parts(host)
        .into_iter()
        .map(|cone| Pending {
            parent: 0,
            cone,
            cops: VertexSet::new(),
            placements: 0,
            play: Vec::new(),
        })
        .collect();

    while let Some(item) = queue.pop_front() {
        if ptd.tree.len() >= MAX_TREE_NODES {
            return Err(Error::BudgetExhausted(format!(
                "strategy tree exceeds {MAX_TREE_NODES} nodes"
            )));
        }
        let pos = Position {
            cops: item.cops.clone(),
            robber: item.cone.clone(),
            placements: item.placements,
        };
        if is_capture(host, &item.cops, &item.cone) {
            let e = item.cone.first().expect("captured part is one edge");
            let up = all.difference(&item.cone);
            ptd.add_child(item.parent, host.edge(e).endpoints(), item.cone, up);
            branching.push(false);
            moves.push(TreeMove::Capture(e));
            continue;
        }
        if item.placements >= cutoff {
            return Err(escaping_play(
                &item.play,
                pos,
                &format!("robber survives {cutoff} placements"),
            ));
        }
        let next = match sigma.get(&item.cops, &item.cone) {
            Some(n) => n.clone(),
            None => {
                return Err(escaping_play(&item.play, pos, "strategy has no move at this position"))
            }
        };
        let replies = strategy_step(host, cfg.k, cfg.monotone, &item.cops, &item.cone, &next)
            .map_err(|f| escaping_play(&item.play, pos.clone(), &f.to_string()))?;
        let removed = item.cops.difference(&next);
        let placed = next.difference(&item.cops).first().expect("checked by strategy_step");
        let area: EdgeSet = replies.iter().fold(EdgeSet::new(), |acc, (s, _)| acc.union(s));

        let mut parent = item.parent;
        let mut cone = item.cone.clone();
        if !removed.is_empty() {
            let y = item.cops.difference(&removed);
            parent = ptd.add_child(parent, y, cone, all.difference(&area));
            branching.push(false);
            moves.push(TreeMove::Remove(removed));
            cone = area.clone();
        }
        let is_branching = host.vertices_of(&cone).contains(placed);
        let node = ptd.add_child(parent, next.clone(), cone.clone(), all.difference(&cone));
        branching.push(is_branching);
        moves.push(TreeMove::Place(placed));

        let mut play = item.play;
        play.push(pos);
        for (s, _) in replies {
            queue.push_back(Pending {
                parent: node,
                cone: s,
                cops: next.clone(),
                placements: item.placements + 1,
                play: play.clone(),
            });
        }
    }
    Ok(StrategyTree {
        ptd,
        branching,
        moves,
        strategy: Some(sigma.clone()),
    })
}

impl StrategyTree {
    /// Branching nodes: placements onto a vertex of the robber's escape space.
    pub fn mark_branching(&self) -> Vec<NodeId> {
        self.ptd.tree.nodes().filter(|&t| self.branching[t]).collect()
    }

    /// Checks the self-loop characterisation of branching nodes: `s` has a
    /// child cone `{vv}` for a non-isolated `v` iff `s` is branching and
    /// placed `v`.
    pub fn check_branching_loops(&self, base: &Graph) -> bool {
        let host = &self.ptd.host;
        self.ptd.tree.nodes().all(|s| {
            let loop_children: Vec<Vertex> = self
                .ptd
                .tree
                .children(s)
                .iter()
                .filter_map(|&c| {
                    let cone = &self.ptd.down[c];
                    if cone.len() != 1 {
                        return None;
                    }
                    let e = host.edge(cone.first().unwrap());
                    (e.is_loop() && !base.is_isolated(e.u)).then_some(e.u)
                })
                .collect();
            match (&self.moves[s], self.branching[s]) {
                (TreeMove::Place(v), true) if !base.is_isolated(*v) => loop_children == vec![*v],
                _ => loop_children.is_empty(),
            }
        })
    }

    /// An edge is exact iff its move is monotone, and every non-exact edge
    /// shrinks the bag strictly.
    pub fn check_monotone_exact(&self) -> bool {
        let p = &self.ptd;
        p.tree.edges().into_iter().all(|(s, t)| {
            let monotone = match &self.moves[t] {
                TreeMove::Remove(_) => {
                    let down = &p.down[t];
                    match down.first() {
                        Some(e) => p
                            .host
                            .robber_component(&p.bags[t], e)
                            .map(|area| area == *down)
                            .unwrap_or(false),
                        None => false,
                    }
                }
                _ => true,
            };
            let exact = p.is_exact_edge(s, t);
            exact == monotone && (exact || (p.bags[t].is_subset(&p.bags[s]) && p.bags[t] != p.bags[s]))
        })
    }

    /// Every loop `vv` with `v` in the bag of an internal non-root node lies
    /// in the cone toward the parent or forms a child cone on its own.
    pub fn check_self_loop_cones(&self) -> bool {
        let p = &self.ptd;
        p.tree.nodes().all(|s| {
            let Some(parent) = p.tree.parent(s) else {
                return true;
            };
            if p.tree.children(s).is_empty() {
                return true;
            }
            p.bags[s].iter().all(|v| {
                let Some(vv) = p.host.edge_id(v, v) else {
                    return true;
                };
                p.cone(s, parent).contains(vv)
                    || p
                        .tree
                        .children(s)
                        .iter()
                        .any(|&c| p.down[c] == EdgeSet::singleton(vv))
            })
        })
    }

    /// `depth ≤ q` exactly when the recorded strategy wins with `q`
    /// placements.
    pub fn depth_iff_winning(&self, cfg: &GameConfig) -> Result<bool> {
        let sigma = self
            .strategy
            .as_ref()
            .ok_or_else(|| Error::Precondition("strategy tree carries no strategy".into()))?;
        let wins = match strategy_need(&self.ptd.host, cfg.k, false, sigma) {
            Ok(n) => n <= cfg.q,
            Err(_) => false,
        };
        Ok((self.ptd.depth() <= cfg.q) == wins)
    }

    /// Max number of branching nodes on a root-to-leaf path.
    pub fn max_branching_on_paths(&self) -> usize {
        let tree = &self.ptd.tree;
        let mut count = vec![0usize; tree.len()];
        let mut best = 0;
        for t in tree.bfs_order() {
            count[t] = tree.parent(t).map_or(0, |p| count[p]) + usize::from(self.branching[t]);
            if tree.is_leaf(t) {
                best = best.max(count[t]);
            }
        }
        best
    }

    /// Human-readable move summary used in traces.
    pub fn describe(&self, t: NodeId) -> String {
        format!(
            "node {t} bag {} cone {} move {}",
            fmt_vertices(&self.ptd.bags[t]),
            fmt_edges(&self.ptd.down[t]),
            self.moves[t]
        )
    }
}
