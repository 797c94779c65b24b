//! Equivalence sweep: on every corpus instance and every `(k, q)` in a grid,
//! solve the monotone and the general game on both `G` and `G°` and compare
//! winners.
//!
//! Instances are independent, so with the `parallel` feature they are spread
//! over rayon's pool; the report is always ordered by instance id.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::corpus::Instance;
use crate::game::{Solver, Winner, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub ks: RangeInclusive<usize>,
    pub qs: RangeInclusive<usize>,
    /// Position budget per solver.
    pub budget: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ks: 1..=4,
            qs: 1..=6,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Winners at one `(k, q)`: `[G° monotone, G° general, G monotone, G general]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub k: usize,
    pub q: usize,
    pub winners: [Winner; 4],
}

impl Cell {
    pub fn agree(&self) -> bool {
        self.winners.iter().all(|w| *w == self.winners[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceReport {
    pub id: usize,
    pub name: String,
    pub cells: Vec<Cell>,
    /// Set when a solver gave up (budget); cells are then incomplete.
    pub error: Option<String>,
}

impl InstanceReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.agree())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub instances: Vec<InstanceReport>,
}

impl SweepReport {
    pub fn cells(&self) -> usize {
        self.instances.iter().map(|i| i.cells.len()).sum()
    }

    pub fn disagreements(&self) -> usize {
        self.instances.iter().map(|i| i.disagreements().count()).sum()
    }

    pub fn errors(&self) -> usize {
        self.instances.iter().filter(|i| i.error.is_some()).count()
    }

    pub fn cop_wins(&self) -> usize {
        self.instances
            .iter()
            .flat_map(|i| &i.cells)
            .filter(|c| c.agree() && c.winners[0] == Winner::Cop)
            .count()
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements() == 0 && self.errors() == 0
    }

    /// One row per instance: id, name, cells checked, cop wins, disagreements.
    pub fn table(&self) -> String {
        let mut out = String::from("id\tname\tcells\tcop-wins\tdisagree\tstatus\n");
        for i in &self.instances {
            let cops = i.cells.iter().filter(|c| c.winners[0] == Winner::Cop).count();
            let bad = i.disagreements().count();
            let status = match (&i.error, bad) {
                (Some(e), _) => format!("error: {e}"),
                (None, 0) => "ok".into(),
                (None, _) => "DISAGREE".into(),
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                i.id,
                i.name,
                i.cells.len(),
                cops,
                bad,
                status
            );
        }
        out
    }
}

/// Sweeps a single instance.
pub fn sweep_instance(inst: &Instance, cfg: &SweepConfig) -> InstanceReport {
    let mut report = InstanceReport {
        id: inst.id,
        name: inst.name.clone(),
        cells: Vec::new(),
        error: None,
    };
    let closed = inst.graph.closure();
    for k in cfg.ks.clone() {
        let mut solvers = [
            Solver::new(&closed, k, true),
            Solver::new(&closed, k, false),
            Solver::new(&inst.graph, k, true),
            Solver::new(&inst.graph, k, false),
        ]
        .map(|s| s.with_budget(cfg.budget));
        for q in cfg.qs.clone() {
            let mut winners = [Winner::Cop; 4];
            for (w, s) in winners.iter_mut().zip(solvers.iter_mut()) {
                match s.decide(q) {
                    Ok(x) => *w = x,
                    Err(e) => {
                        report.error = Some(format!("k={k} q={q}: {e}"));
                        return report;
                    }
                }
            }
            report.cells.push(Cell { k, q, winners });
        }
    }
    report
}

pub fn sweep_sequential(instances: &[Instance], cfg: &SweepConfig) -> SweepReport {
    SweepReport {
        instances: instances.iter().map(|i| sweep_instance(i, cfg)).collect(),
    }
}

#[cfg(feature = "parallel")]
pub fn sweep_parallel(instances: &[Instance], cfg: &SweepConfig) -> SweepReport {
    use rayon::prelude::*;
    // collect() on an indexed parallel iterator keeps input order
    SweepReport {
        instances: instances.par_iter().map(|i| sweep_instance(i, cfg)).collect(),
    }
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn sweep(instances: &[Instance], cfg: &SweepConfig) -> SweepReport {
    #[cfg(feature = "parallel")]
    {
        sweep_parallel(instances, cfg)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(instances, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusSpec;

    #[test]
    fn small_sweep_agrees() {
        let inst = "all-graphs:0-3".parse::<CorpusSpec>().unwrap().generate().unwrap();
        let cfg = SweepConfig {
            ks: 1..=3,
            qs: 1..=4,
            budget: DEFAULT_BUDGET,
        };
        let r = sweep(&inst, &cfg);
        assert!(r.is_clean());
        assert_eq!(r.cells(), inst.len() * 12);
        assert_eq!(r, sweep_sequential(&inst, &cfg));
        assert!(r.instances.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn empty_corpus_gives_empty_table() {
        let r = sweep(&[], &SweepConfig::default());
        assert_eq!(r.table().lines().count(), 1);
        assert!(r.is_clean());
    }

    #[test]
    fn budget_errors_are_reported() {
        let inst = "complete:4".parse::<CorpusSpec>().unwrap().generate().unwrap();
        let cfg = SweepConfig {
            ks: 4..=4,
            qs: 4..=4,
            budget: 1,
        };
        let r = sweep(&inst, &cfg);
        assert_eq!(r.errors(), 1);
        assert!(r.table().contains("error"));
    }
}
