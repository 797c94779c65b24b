//! Line-oriented text formats.
//!
//! * graphs: PACE style, `p tw <n> <m>` then `u v` per edge (1-based,
//!   `v v` is a loop), `c` comments;
//! * tree decompositions: `s td <#bags> <width+1> <n>`, `b <id> <v...>`,
//!   tree edges `<id> <id>`, `r <root>` (bag ids 1-based), `c depth <d>`;
//! * pre-tree decompositions: `p ptd <#nodes> <n> <m>`, host edges
//!   `e <id> <u> <v>`, nodes `n <id> <parent> : <bag>`, cones
//!   `g <s> <t> : <edge ids>` (node and edge ids 0-based, the root is its
//!   own parent);
//! * strategy trees: a pre-tree decomposition plus `B <node>` and
//!   `m <node> : <move>` lines;
//! * strategies: `(cops | part) -> cops` lines.

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};
use crate::game::Strategy;
use crate::graph::Graph;
use crate::ptd::PreTreeDecomposition;
use crate::strategy_tree::{StrategyTree, TreeMove};
use crate::tree::RootedTree;
use crate::tree_decomp::TreeDecomposition;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("expected a non-negative integer, found `{tok}`")))
}

fn vertex(tok: &str, line: usize, n: usize) -> Result<usize> {
    let v = num(tok, line)?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Meaningful lines with their 1-based numbers (comments and blanks dropped).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut expected = 0;
    for (ln, toks) in lines(text) {
        match (&mut g, toks[0]) {
            (None, "p") => {
                if toks.len() != 4 || toks[1] != "tw" {
                    return Err(perr(ln, "header must be `p tw <n> <m>`"));
                }
                g = Some(Graph::new(num(toks[2], ln)?));
                expected = num(toks[3], ln)?;
            }
            (None, _) => return Err(perr(ln, "edge before the `p tw` header")),
            (Some(_), "p") => return Err(perr(ln, "duplicate header")),
            (Some(graph), _) => {
                if toks.len() != 2 {
                    return Err(perr(ln, "edge lines hold two vertices"));
                }
                let n = graph.vertex_count();
                let (a, b) = (vertex(toks[0], ln, n)?, vertex(toks[1], ln, n)?);
                graph.add_edge(a, b).map_err(|e| perr(ln, e.to_string()))?;
            }
        }
    }
    let g = g.ok_or_else(|| perr(0, "missing `p tw` header"))?;
    if g.edge_count() != expected {
        return Err(perr(0, format!("header announces {expected} edges, found {}", g.edge_count())));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u + 1, e.v + 1));
    }
    out
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let width_plus_one = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!(
        "s td {} {} {}\n",
        td.bags.len(),
        width_plus_one,
        td.host.vertex_count()
    );
    out.push_str(&format!("c depth {}\n", td.depth()));
    for (i, b) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in b {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for (p, c) in td.tree.edges() {
        out.push_str(&format!("{} {}\n", p + 1, c + 1));
    }
    out.push_str(&format!("r {}\n", td.tree.root() + 1));
    out
}

/// Reads a rooted `.td` file for the given host graph. A missing `r` line
/// roots the tree at bag 1.
pub fn read_td(text: &str, host: &Graph) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    let mut root = None;
    let n = host.vertex_count();
    for (ln, toks) in lines(text) {
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" || header.is_some() {
                    return Err(perr(ln, "header must be a single `s td <#bags> <width+1> <n>`"));
                }
                let count = num(toks[2], ln)?;
                let verts = num(toks[4], ln)?;
                if verts != n {
                    return Err(perr(ln, format!("decomposition is for {verts} vertices, graph has {n}")));
                }
                header = Some((count, num(toks[3], ln)?));
                bags = vec![None; count];
            }
            _ if header.is_none() => return Err(perr(ln, "content before the `s td` header")),
            "b" => {
                let id = num(toks.get(1).ok_or_else(|| perr(ln, "bag id missing"))?, ln)?;
                if id == 0 || id > bags.len() {
                    return Err(perr(ln, format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(perr(ln, format!("bag {id} given twice")));
                }
                let mut bag = VertexSet::new();
                for t in &toks[2..] {
                    bag.insert(vertex(t, ln, n)?);
                }
                bags[id - 1] = Some(bag);
            }
            "r" => {
                if toks.len() != 2 {
                    return Err(perr(ln, "root line is `r <bag-id>`"));
                }
                let r = num(toks[1], ln)?;
                if r == 0 || r > bags.len() {
                    return Err(perr(ln, format!("root {r} out of range")));
                }
                root = Some(r - 1);
            }
            _ => {
                if toks.len() != 2 {
                    return Err(perr(ln, "tree edge lines hold two bag ids"));
                }
                let (a, b) = (num(toks[0], ln)?, num(toks[1], ln)?);
                if a == 0 || b == 0 {
                    return Err(perr(ln, "bag ids are 1-based"));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (count, _) = header.ok_or_else(|| perr(0, "missing `s td` header"))?;
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| perr(0, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    if count == 0 {
        return Err(perr(0, "a decomposition needs at least one bag"));
    }
    let tree = RootedTree::from_edges(count, &edges, root.unwrap_or(0)).map_err(|e| perr(0, e.to_string()))?;
    Ok(TreeDecomposition::new(tree, host.clone(), bags))
}

fn fmt_list(items: impl IntoIterator<Item = usize>, shift: usize) -> String {
    items
        .into_iter()
        .map(|x| (x + shift).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_ptd(p: &PreTreeDecomposition) -> String {
    let mut out = format!(
        "p ptd {} {} {}\n",
        p.tree.len(),
        p.host.vertex_count(),
        p.host.edge_count()
    );
    for (i, e) in p.host.edges().iter().enumerate() {
        out.push_str(&format!("e {i} {} {}\n", e.u + 1, e.v + 1));
    }
    for t in p.tree.nodes() {
        let parent = p.tree.parent(t).unwrap_or(t);
        out.push_str(&format!("n {t} {parent} : {}\n", fmt_list(&p.bags[t], 1)).replace(" \n", "\n"));
    }
    for (s, t) in p.tree.edges() {
        out.push_str(&format!("g {s} {t} : {}\n", fmt_list(&p.down[t], 0)).replace(" \n", "\n"));
        out.push_str(&format!("g {t} {s} : {}\n", fmt_list(&p.up[t], 0)).replace(" \n", "\n"));
    }
    out
}

/// Parses without checking PT1–PT4.
pub fn parse_ptd_unchecked(text: &str) -> Result<PreTreeDecomposition> {
    parse_ptd_lines(text, &mut |_, _| Ok(false))
}

/// Parses and rejects anything that is not a pre-tree decomposition.
pub fn read_ptd(text: &str) -> Result<PreTreeDecomposition> {
    let p = parse_ptd_unchecked(text)?;
    if let Some(v) = p.validate().first() {
        return Err(Error::InvalidInput(format!("not a pre-tree decomposition: {v}")));
    }
    Ok(p)
}

/// Shared parser; `extra` may claim lines the ptd grammar does not know.
fn parse_ptd_lines(
    text: &str,
    extra: &mut dyn FnMut(usize, &[&str]) -> Result<bool>,
) -> Result<PreTreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut host_edges: Vec<Option<(usize, usize)>> = Vec::new();
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut cones: Vec<(usize, usize, EdgeSet, usize)> = Vec::new();
    for (ln, toks) in lines(text) {
        if toks[0] == "p" {
            if toks.len() != 5 || toks[1] != "ptd" || header.is_some() {
                return Err(perr(ln, "header must be a single `p ptd <#nodes> <n> <m>`"));
            }
            let h = (num(toks[2], ln)?, num(toks[3], ln)?, num(toks[4], ln)?);
            host_edges = vec![None; h.2];
            parents = vec![None; h.0];
            bags = vec![VertexSet::new(); h.0];
            header = Some(h);
            continue;
        }
        let Some((nodes, n, m)) = header else {
            return Err(perr(ln, "content before the `p ptd` header"));
        };
        match toks[0] {
            "e" => {
                if toks.len() != 4 {
                    return Err(perr(ln, "host edge lines are `e <id> <u> <v>`"));
                }
                let id = num(toks[1], ln)?;
                if id >= m || host_edges[id].is_some() {
                    return Err(perr(ln, format!("bad or repeated edge id {id}")));
                }
                host_edges[id] = Some((vertex(toks[2], ln, n)?, vertex(toks[3], ln, n)?));
            }
            "n" => {
                if toks.len() < 4 || toks[3] != ":" {
                    return Err(perr(ln, "node lines are `n <id> <parent> : <bag>`"));
                }
                let id = num(toks[1], ln)?;
                let parent = num(toks[2], ln)?;
                if id >= nodes || parent >= nodes || parents[id].is_some() {
                    return Err(perr(ln, format!("bad or repeated node {id}")));
                }
                parents[id] = Some(parent);
                for t in &toks[4..] {
                    bags[id].insert(vertex(t, ln, n)?);
                }
            }
            "g" => {
                if toks.len() < 4 || toks[3] != ":" {
                    return Err(perr(ln, "cone lines are `g <s> <t> : <edge ids>`"));
                }
                let (s, t) = (num(toks[1], ln)?, num(toks[2], ln)?);
                let mut cone = EdgeSet::new();
                for tok in &toks[4..] {
                    let e = num(tok, ln)?;
                    if e >= m {
                        return Err(perr(ln, format!("edge id {e} out of range")));
                    }
                    cone.insert(e);
                }
                cones.push((s, t, cone, ln));
            }
            _ => {
                if !extra(ln, &toks)? {
                    return Err(perr(ln, format!("unknown record `{}`", toks[0])));
                }
            }
        }
    }
    let (nodes, n, _) = header.ok_or_else(|| perr(0, "missing `p ptd` header"))?;
    let mut host = Graph::new(n);
    for (i, e) in host_edges.into_iter().enumerate() {
        let (a, b) = e.ok_or_else(|| perr(0, format!("host edge {i} missing")))?;
        host.add_edge(a, b).map_err(|err| perr(0, err.to_string()))?;
    }
    let parents: Vec<usize> = parents
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| perr(0, format!("node {i} missing"))))
        .collect::<Result<_>>()?;
    if nodes == 0 {
        return Err(perr(0, "a decomposition needs a root"));
    }
    let tree = RootedTree::from_parents(parents).map_err(|e| perr(0, e.to_string()))?;
    let mut down: Vec<Option<EdgeSet>> = vec![None; nodes];
    let mut up: Vec<Option<EdgeSet>> = vec![None; nodes];
    for (s, t, cone, ln) in cones {
        let slot = if s < nodes && t < nodes && tree.parent(t) == Some(s) {
            &mut down[t]
        } else if s < nodes && t < nodes && tree.parent(s) == Some(t) {
            &mut up[s]
        } else {
            return Err(perr(ln, format!("{s}-{t} is not a tree edge")));
        };
        if slot.replace(cone).is_some() {
            return Err(perr(ln, format!("cone {s}->{t} given twice")));
        }
    }
    let mut ds = Vec::with_capacity(nodes);
    let mut us = Vec::with_capacity(nodes);
    for t in 0..nodes {
        if t == tree.root() {
            ds.push(EdgeSet::new());
            us.push(EdgeSet::new());
            continue;
        }
        let p = tree.parent(t).unwrap();
        ds.push(down[t].take().ok_or_else(|| perr(0, format!("cone {p}->{t} missing")))?);
        us.push(up[t].take().ok_or_else(|| perr(0, format!("cone {t}->{p} missing")))?);
    }
    Ok(PreTreeDecomposition {
        tree,
        host,
        bags,
        down: ds,
        up: us,
    })
}

pub fn write_strategy_tree(st: &StrategyTree) -> String {
    let mut out = write_ptd(&st.ptd);
    for t in st.ptd.tree.nodes().filter(|&t| st.branching[t]) {
        out.push_str(&format!("B {t}\n"));
    }
    for (t, m) in st.moves.iter().enumerate() {
        out.push_str(&format!("m {t} : {m}\n"));
    }
    out
}

fn parse_move(toks: &[&str], ln: usize, n: usize) -> Result<TreeMove> {
    match toks.first().copied() {
        Some("root") if toks.len() == 1 => Ok(TreeMove::Root),
        Some("remove") => Ok(TreeMove::Remove(
            toks[1..].iter().map(|t| vertex(t, ln, n)).collect::<Result<_>>()?,
        )),
        Some("place") if toks.len() == 2 => Ok(TreeMove::Place(vertex(toks[1], ln, n)?)),
        Some("capture") if toks.len() == 2 => Ok(TreeMove::Capture(num(toks[1], ln)?)),
        _ => Err(perr(ln, "unknown move")),
    }
}

/// Reads a strategy tree file (the strategy itself is not stored).
pub fn read_strategy_tree(text: &str) -> Result<StrategyTree> {
    let mut branching_ids = Vec::new();
    let mut move_lines: Vec<(usize, usize, Vec<String>)> = Vec::new();
    let p = parse_ptd_lines(text, &mut |ln, toks| match toks[0] {
        "B" if toks.len() == 2 => {
            branching_ids.push((num(toks[1], ln)?, ln));
            Ok(true)
        }
        "m" if toks.len() >= 3 && toks[2] == ":" => {
            let t = num(toks[1], ln)?;
            move_lines.push((ln, t, toks[3..].iter().map(|s| s.to_string()).collect()));
            Ok(true)
        }
        _ => Ok(false),
    })?;
    if let Some(v) = p.validate().first() {
        return Err(Error::InvalidInput(format!("not a pre-tree decomposition: {v}")));
    }
    let nodes = p.tree.len();
    let mut branching = vec![false; nodes];
    for (t, ln) in branching_ids {
        *branching
            .get_mut(t)
            .ok_or_else(|| perr(ln, format!("node {t} out of range")))? = true;
    }
    let mut moves: Vec<Option<TreeMove>> = vec![None; nodes];
    for (ln, t, toks) in move_lines {
        let toks: Vec<&str> = toks.iter().map(|s| s.as_str()).collect();
        let mv = parse_move(&toks, ln, p.host.vertex_count())?;
        let slot = moves.get_mut(t).ok_or_else(|| perr(ln, format!("node {t} out of range")))?;
        if slot.replace(mv).is_some() {
            return Err(perr(ln, format!("move of node {t} given twice")));
        }
    }
    let moves = moves
        .into_iter()
        .enumerate()
        .map(|(t, m)| m.ok_or_else(|| perr(0, format!("move of node {t} missing"))))
        .collect::<Result<_>>()?;
    Ok(StrategyTree {
        ptd: p,
        branching,
        moves,
        strategy: None,
    })
}

fn parse_brace_set(s: &str, ln: usize, shift: bool, n: usize) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| perr(ln, format!("expected `{{...}}`, found `{s}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| if shift { vertex(t, ln, n) } else { num(t, ln) })
        .collect()
}

/// Parses a strategy dump for a graph with `n` vertices.
pub fn read_strategy(text: &str, n: usize) -> Result<Strategy> {
    let mut sigma = Strategy::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| perr(ln, "expected `(cops | part) -> cops`"))?;
        let lhs = lhs
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| perr(ln, "left side must be parenthesised"))?;
        let (cops, part) = lhs.split_once('|').ok_or_else(|| perr(ln, "missing `|`"))?;
        let cops: VertexSet = parse_brace_set(cops, ln, true, n)?.into_iter().collect();
        let part: EdgeSet = parse_brace_set(part, ln, false, n)?.into_iter().collect();
        let next: VertexSet = parse_brace_set(rhs, ln, true, n)?.into_iter().collect();
        if sigma.insert(cops, part, next).is_some() {
            return Err(perr(ln, "position given twice"));
        }
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{solve, GameConfig};
    use crate::strategy_tree::build;

    #[test]
    fn graph_round_trip() {
        let text = "c path with a loop\np tw 3 3\n1 2\n2 3\n3 3\n";
        let g = read_graph(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.edge(2).is_loop());
        assert_eq!(write_graph(&g), "p tw 3 3\n1 2\n2 3\n3 3\n");
        assert!(matches!(read_graph("p tw 2 1\n1 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(read_graph("p tw 2 2\n1 2\n").is_err());
        assert!(read_graph("p tw 2 2\n1 2\n2 1\n").is_err());
    }

    #[test]
    fn td_round_trip() {
        let g = read_graph("p tw 3 2\n1 2\n2 3\n").unwrap();
        let text = "s td 3 2 3\nb 1 2\nb 2 1 2\nb 3 2 3\n1 2\n1 3\nr 1\n";
        let td = read_td(text, &g).unwrap();
        assert!(td.is_valid());
        assert_eq!((td.width(), td.depth()), (1, 2));
        let again = read_td(&write_td(&td), &g).unwrap();
        assert_eq!(again, td);
        assert!(write_td(&td).contains("c depth 2"));
        assert!(read_td("s td 2 2 3\nb 1 1 2\n", &g).is_err());
    }

    #[test]
    fn ptd_and_strategy_tree_round_trip() {
        let host = read_graph("p tw 3 3\n1 2\n2 3\n1 3\n").unwrap().closure();
        let cfg = GameConfig::new(3, 3, true).unwrap();
        let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
        let st = build(&host, &sigma, &cfg).unwrap();
        let p = read_ptd(&write_ptd(&st.ptd)).unwrap();
        assert_eq!(p, st.ptd);
        let back = read_strategy_tree(&write_strategy_tree(&st)).unwrap();
        assert_eq!(back.ptd, st.ptd);
        assert_eq!(back.branching, st.branching);
        assert_eq!(back.moves, st.moves);

        let parsed = read_strategy(&sigma.dump(), 3).unwrap();
        assert_eq!(parsed, sigma);
    }

    #[test]
    fn ptd_reader_rejects_broken_files() {
        let host = read_graph("p tw 2 1\n1 2\n").unwrap().closure();
        let p = PreTreeDecomposition::trivial(host);
        let text = write_ptd(&p);
        // a lone root over a graph with edges violates PT1
        assert!(read_ptd(&text).is_err());
        assert!(parse_ptd_unchecked(&text).is_ok());
        assert!(parse_ptd_unchecked("p ptd 1 1 0\nn 0 0 : 2\n").is_err());
        assert!(parse_ptd_unchecked("p ptd 2 1 0\nn 0 0 :\nn 1 0 :\n").is_err());
    }
}
