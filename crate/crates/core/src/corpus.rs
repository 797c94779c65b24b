//! Small-graph corpora. Every family is deterministic; the random one is
//! driven by a seeded ChaCha RNG.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: usize,
    pub name: String,
    pub graph: Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Every labeled graph (no loops) on exactly `n` vertices.
    AllGraphs,
    Paths,
    Cycles,
    /// Star with `n` leaves.
    Stars,
    Complete,
    /// `r × c` grids with `min ≤ r ≤ c ≤ max`.
    Grids,
    RandomGnp,
    /// P5, P6, C4, C5, C6, K4, K2,3 and the 2×3 grid.
    Named,
    /// All graphs on at most `max` vertices followed by the named graphs.
    Standard,
}

impl Family {
    const NAMES: [(&'static str, Family); 9] = [
        ("all-graphs", Family::AllGraphs),
        ("paths", Family::Paths),
        ("cycles", Family::Cycles),
        ("stars", Family::Stars),
        ("complete", Family::Complete),
        ("grids", Family::Grids),
        ("random-gnp", Family::RandomGnp),
        ("named", Family::Named),
        ("standard", Family::Standard),
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = Family::NAMES.iter().find(|(_, x)| x == self).unwrap().0;
        f.write_str(name)
    }
}

/// What to generate: `family[:min[-max]][:p=<prob>][:count=<c>][:seed=<s>]`,
/// e.g. `all-graphs:0-4`, `grids:2-3`, `random-gnp:5-6:p=0.4:count=20`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub family: Family,
    pub min: usize,
    pub max: usize,
    /// Edge probability for `random-gnp`.
    pub p: f64,
    /// Graphs per size for `random-gnp`.
    pub count: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(family: Family, min: usize, max: usize) -> Self {
        CorpusSpec {
            family,
            min,
            max,
            p: 0.5,
            count: 10,
            seed: 0,
        }
    }

    /// An inverted size range simply yields no graphs.
    pub fn generate(&self) -> Result<Vec<Instance>> {
        let mut out: Vec<(String, Graph)> = Vec::new();
        let sizes = self.min..=self.max;
        match self.family {
            Family::AllGraphs => {
                for n in sizes {
                    out.extend(all_graphs(n)?);
                }
            }
            Family::Paths => {
                for n in sizes {
                    out.push((format!("P{n}"), path(n)));
                }
            }
            Family::Cycles => {
                for n in sizes.filter(|&n| n >= 3) {
                    out.push((format!("C{n}"), cycle(n)));
                }
            }
            Family::Stars => {
                for n in sizes {
                    out.push((format!("S{n}"), complete_bipartite(1, n)));
                }
            }
            Family::Complete => {
                for n in sizes {
                    out.push((format!("K{n}"), complete(n)));
                }
            }
            Family::Grids => {
                for r in sizes.clone().filter(|&r| r >= 1) {
                    for c in r..=self.max {
                        out.push((format!("grid{r}x{c}"), grid(r, c)));
                    }
                }
            }
            Family::RandomGnp => {
                if !(0.0..=1.0).contains(&self.p) {
                    return Err(invalid(format!("edge probability {} outside [0,1]", self.p)));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                for n in sizes {
                    for i in 0..self.count {
                        out.push((format!("gnp{n}-{i}"), gnp(n, self.p, &mut rng)));
                    }
                }
            }
            Family::Named => out.extend(named()),
            Family::Standard => {
                for n in 0..=self.max {
                    out.extend(all_graphs(n)?);
                }
                out.extend(named());
            }
        }
        Ok(out
            .into_iter()
            .enumerate()
            .map(|(id, (name, graph))| Instance { id, name, graph })
            .collect())
    }
}

impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let fam = parts.next().unwrap_or_default();
        let family = Family::NAMES
            .iter()
            .find(|(n, _)| *n == fam)
            .map(|(_, f)| *f)
            .ok_or_else(|| invalid(format!("unknown corpus family `{fam}`")))?;
        let (min, max) = match family {
            Family::Standard => (0, 4),
            Family::Named => (0, 0),
            Family::Grids => (2, 3),
            _ => (1, 4),
        };
        let mut spec = CorpusSpec::new(family, min, max);
        for part in parts {
            let bad = || invalid(format!("bad corpus option `{part}`"));
            if let Some((key, val)) = part.split_once('=') {
                match key {
                    "p" => spec.p = val.parse().map_err(|_| bad())?,
                    "count" => spec.count = val.parse().map_err(|_| bad())?,
                    "seed" => spec.seed = val.parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                }
            } else if let Some((a, b)) = part.split_once('-') {
                spec.min = a.parse().map_err(|_| bad())?;
                spec.max = b.parse().map_err(|_| bad())?;
            } else {
                let n = part.parse().map_err(|_| bad())?;
                spec.min = n;
                spec.max = n;
            }
        }
        Ok(spec)
    }
}

fn all_graphs(n: usize) -> Result<Vec<(String, Graph)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    if pairs.len() > 20 {
        return Err(invalid(format!("all-graphs on {n} vertices is too large")));
    }
    Ok((0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            (format!("G{n}#{mask}"), Graph::from_edges(n, &edges).unwrap())
        })
        .collect())
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

/// `r × c` grid, vertices numbered row by row.
pub fn grid(r: usize, c: usize) -> Graph {
    let id = |i, j| i * c + j;
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < r {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Graph::from_edges(r * c, &edges).unwrap()
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

pub fn named() -> Vec<(String, Graph)> {
    vec![
        ("P5".into(), path(5)),
        ("P6".into(), path(6)),
        ("C4".into(), cycle(4)),
        ("C5".into(), cycle(5)),
        ("C6".into(), cycle(6)),
        ("K4".into(), complete(4)),
        ("K2,3".into(), complete_bipartite(2, 3)),
        ("grid2x3".into(), grid(2, 3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_corpus_shape() {
        let c: CorpusSpec = "standard".parse().unwrap();
        let inst = c.generate().unwrap();
        // 1 + 1 + 2 + 8 + 64 labeled graphs plus 8 named ones
        assert_eq!(inst.len(), 76 + 8);
        assert!(inst.iter().enumerate().all(|(i, x)| x.id == i));
        let grid = &inst.last().unwrap().graph;
        assert_eq!((grid.vertex_count(), grid.edge_count()), (6, 7));
    }

    #[test]
    fn spec_parsing() {
        let s: CorpusSpec = "random-gnp:5-6:p=0.3:count=4:seed=9".parse().unwrap();
        assert_eq!((s.min, s.max, s.count, s.seed), (5, 6, 4, 9));
        assert_eq!(s.generate().unwrap(), s.generate().unwrap());
        assert_eq!(s.generate().unwrap().len(), 8);
        assert!("trees:3".parse::<CorpusSpec>().is_err());
        assert!("paths:x".parse::<CorpusSpec>().is_err());
        assert_eq!("grids:2-3".parse::<CorpusSpec>().unwrap().generate().unwrap().len(), 3);
        assert!(CorpusSpec::new(Family::Paths, 3, 2).generate().unwrap().is_empty());
    }

    #[test]
    fn families() {
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
        assert_eq!(grid(3, 3).edge_count(), 12);
        assert_eq!(path(1).edge_count(), 0);
    }
}
