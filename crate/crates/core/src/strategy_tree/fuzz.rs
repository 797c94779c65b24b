//! Non-monotone strategy fuzzer.
//!
//! Takes a winning cop strategy and injects place-then-remove detours: at a
//! site `(X, R)` with a spare cop, the cops first place `w` inside the
//! robber's escape space, and on every reply give `w` back while making the
//! original move. The robber regains everything he lost, so the strategy
//! stays winning with one extra placement per detour on a play, but the give-back
//! move is no longer monotone.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};
use crate::game::{strategy_need, strategy_step, Strategy};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detour {
    pub cops: VertexSet,
    pub robber: EdgeSet,
    pub extra: Vertex,
}

#[derive(Debug, Clone)]
pub struct FuzzResult {
    pub strategy: Strategy,
    pub detours: Vec<Detour>,
    /// Placements the perturbed strategy needs in the worst case.
    pub placements_needed: usize,
}

/// Injects up to `slack` detours into `sigma`, chosen by a ChaCha RNG seeded
/// with `seed`. Fails if no detour site exists or the result does not win
/// within `q + slack` placements.
pub fn fuzz_strategy(
    g: &Graph,
    sigma: &Strategy,
    k: usize,
    q: usize,
    slack: usize,
    seed: u64,
) -> Result<FuzzResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Detour> = Vec::new();
    for ((x, r), next) in sigma.iter() {
        if x.len() >= k {
            continue;
        }
        for w in &g.vertices_of(r) {
            if x.contains(w) || next.contains(w) {
                continue;
            }
            candidates.push(Detour {
                cops: x.clone(),
                robber: r.clone(),
                extra: w,
            });
        }
    }
    candidates.shuffle(&mut rng);

    let mut out = sigma.clone();
    let mut detours: Vec<Detour> = Vec::new();
    for d in candidates {
        if detours.len() >= slack {
            break;
        }
        if detours.iter().any(|o| o.cops == d.cops && o.robber == d.robber) {
            continue;
        }
        let original = sigma.get(&d.cops, &d.robber).expect("site comes from sigma").clone();
        let mut raised = d.cops.clone();
        raised.insert(d.extra);
        let Ok(replies) = strategy_step(g, k, false, &d.cops, &d.robber, &raised) else {
            continue;
        };
        let open: Vec<EdgeSet> = replies.into_iter().filter(|(_, c)| !c).map(|(s, _)| s).collect();
        if open.is_empty() || open.iter().any(|s| out.get(&raised, s).is_some()) {
            continue;
        }
        let mut trial = out.clone();
        trial.insert(d.cops.clone(), d.robber.clone(), raised.clone());
        for s in open {
            trial.insert(raised.clone(), s, original.clone());
        }
        if strategy_need(g, k, false, &trial).is_ok_and(|n| n <= q + detours.len() + 1) {
            out = trial;
            detours.push(d);
        }
    }
    if detours.is_empty() {
        return Err(Error::Precondition("no detour site in this strategy".into()));
    }
    let placements_needed = strategy_need(g, k, false, &out)
        .map_err(|f| Error::Internal(format!("fuzzed strategy fails: {f}")))?;
    if placements_needed > q + slack {
        return Err(Error::Internal(format!(
            "fuzzed strategy needs {placements_needed} > {} placements",
            q + slack
        )));
    }
    Ok(FuzzResult {
        strategy: out,
        detours,
        placements_needed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{solve, GameConfig};
    use crate::strategy_tree::build_with_cutoff;

    #[test]
    fn e1_detour_is_non_monotone_and_wins() {
        let host = Graph::from_edges(2, &[(0, 1)]).unwrap().closure();
        let cfg = GameConfig::new(2, 2, true).unwrap();
        let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
        let f = fuzz_strategy(&host, &sigma, 2, 2, 1, 7).unwrap();
        assert_eq!(f.detours.len(), 1);
        assert!(f.placements_needed <= 3);
        assert!(strategy_need(&host, 2, true, &f.strategy).is_err());
        let loose = GameConfig::new(2, 3, false).unwrap();
        let st = build_with_cutoff(&host, &f.strategy, &loose, 3).unwrap();
        assert!(st.ptd.is_valid());
        assert!(!st.ptd.is_exact());
        assert!(st.check_monotone_exact());
        assert!(st.check_self_loop_cones());
        assert!(st.depth_iff_winning(&loose).unwrap());
        let tight = GameConfig::new(2, st.ptd.depth() - 1, false).unwrap();
        assert!(st.depth_iff_winning(&tight).unwrap());
    }

    #[test]
    fn deterministic_under_seed() {
        let host = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap().closure();
        let cfg = GameConfig::new(3, 3, true).unwrap();
        let sigma = solve(&host, &cfg).unwrap().cop_strategy.unwrap();
        let a = fuzz_strategy(&host, &sigma, 3, 3, 2, 11);
        let b = fuzz_strategy(&host, &sigma, 3, 3, 2, 11);
        match (a, b) {
            (Ok(a), Ok(b)) => assert_eq!(a.strategy, b.strategy),
            (Err(_), Err(_)) => {}
            _ => panic!("seeded fuzzing is not deterministic"),
        }
    }
}
