//! Terminal play: a human takes one side, the solver the other.
//!
//! Cop input is `place <v>` or `remove <u>... place <v>` (1-based vertices);
//! robber input is the index of a listed part. `quit` ends the session at
//! any prompt. Lines starting with `#` are ignored, so a session log can be
//! fed back as a script.

use std::io::{BufRead, Write};

use anyhow::{bail, Result};
use bdtw::game::{
    fmt_edges, fmt_vertices, initial_parts, is_capture, legal_cop_moves, legal_robber_responses, trace_line,
    CopMove, GameConfig, Position, Solver, Winner,
};
use bdtw::{EdgeSet, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Cop,
    Robber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayOutcome {
    Finished { winner: Winner, rounds: usize },
    Quit,
}

pub struct Session<'a, R, W> {
    g: &'a Graph,
    cfg: GameConfig,
    human: Side,
    solver: Solver<'a>,
    input: R,
    out: W,
    log: Option<&'a mut dyn Write>,
}

enum Read<T> {
    Value(T),
    Quit,
}

impl<'a, R: BufRead, W: Write> Session<'a, R, W> {
    pub fn new(g: &'a Graph, cfg: GameConfig, human: Side, budget: usize, input: R, out: W) -> Self {
        Session {
            g,
            cfg,
            human,
            solver: Solver::new(g, cfg.k, cfg.monotone).with_budget(budget),
            input,
            out,
            log: None,
        }
    }

    /// Mirror inputs and trace lines to `log`.
    pub fn with_log(mut self, log: &'a mut dyn Write) -> Self {
        self.log = Some(log);
        self
    }

    fn say(&mut self, line: &str) -> Result<()> {
        writeln!(self.out, "{line}")?;
        if let Some(log) = self.log.as_mut() {
            writeln!(log, "# {line}")?;
        }
        Ok(())
    }

    /// Next meaningful input line; `None` on end of input.
    fn line(&mut self, prompt: &str) -> Result<Option<String>> {
        write!(self.out, "{prompt}> ")?;
        self.out.flush()?;
        loop {
            let mut buf = String::new();
            if self.input.read_line(&mut buf)? == 0 {
                writeln!(self.out)?;
                return Ok(None);
            }
            let t = buf.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(log) = self.log.as_mut() {
                writeln!(log, "{t}")?;
            }
            return Ok(Some(t.to_string()));
        }
    }

    fn choose_part(&mut self, prompt: &str, options: &[EdgeSet]) -> Result<Read<EdgeSet>> {
        for (i, p) in options.iter().enumerate() {
            let line = format!("  [{i}] edges {} on vertices {}", fmt_edges(p), fmt_vertices(&self.g.vertices_of(p)));
            self.say(&line)?;
        }
        loop {
            let Some(l) = self.line(prompt)? else {
                return Ok(Read::Quit);
            };
            if l == "quit" {
                return Ok(Read::Quit);
            }
            match l.parse::<usize>() {
                Ok(i) if i < options.len() => return Ok(Read::Value(options[i].clone())),
                _ => self.say(&format!("expected a number in 0..{}", options.len()))?,
            }
        }
    }

    fn parse_cop_move(&self, line: &str, pos: &Position) -> std::result::Result<CopMove, String> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let mut removed = VertexSet::new();
        let mut placed = None;
        let mut i = 0;
        while i < toks.len() {
            let vertex = |t: &str| -> std::result::Result<usize, String> {
                match t.parse::<usize>() {
                    Ok(v) if v >= 1 && v <= self.g.vertex_count() => Ok(v - 1),
                    _ => Err(format!("`{t}` is not a vertex")),
                }
            };
            match toks[i] {
                "remove" => {
                    i += 1;
                    while i < toks.len() && toks[i] != "place" {
                        removed.insert(vertex(toks[i])?);
                        i += 1;
                    }
                }
                "place" if i + 1 < toks.len() && placed.is_none() => {
                    placed = Some(vertex(toks[i + 1])?);
                    i += 2;
                }
                _ => return Err("expected `[remove <u>...] place <v>`".into()),
            }
        }
        let placed = placed.ok_or("missing `place <v>`")?;
        let mut next = pos.cops.difference(&removed);
        next.insert(placed);
        let mv = CopMove { removed, placed, next };
        let legal = legal_cop_moves(self.g, &self.cfg, pos).map_err(|e| e.to_string())?;
        if legal.contains(&mv) {
            Ok(mv)
        } else {
            Err("illegal move".into())
        }
    }

    fn human_cop_move(&mut self, pos: &Position) -> Result<Read<CopMove>> {
        loop {
            let Some(l) = self.line("cop")? else {
                return Ok(Read::Quit);
            };
            if l == "quit" {
                return Ok(Read::Quit);
            }
            match self.parse_cop_move(&l, pos) {
                Ok(mv) => return Ok(Read::Value(mv)),
                Err(e) => self.say(&e)?,
            }
        }
    }

    /// A winning move if one exists, otherwise the first legal one.
    fn solver_cop_move(&mut self, pos: &Position) -> Result<CopMove> {
        let rem = self.cfg.q - pos.placements;
        let moves = self.solver.candidate_moves(&pos.cops, &pos.robber)?;
        for (mv, replies) in &moves {
            let mut wins = true;
            for s in replies {
                if !is_capture(self.g, &mv.next, s) && !self.solver.wins_at(&mv.next, s, rem - 1)? {
                    wins = false;
                    break;
                }
            }
            if wins {
                return Ok(mv.clone());
            }
        }
        match moves.into_iter().next() {
            Some((mv, _)) => Ok(mv),
            None => bail!("the cops have no legal move"),
        }
    }

    /// A part the cops cannot win from, else an uncaptured one, else the first.
    fn solver_robber_part(&mut self, cops: &VertexSet, options: &[EdgeSet], rem: usize) -> Result<EdgeSet> {
        for s in options {
            if !is_capture(self.g, cops, s) && !self.solver.wins_at(cops, s, rem)? {
                return Ok(s.clone());
            }
        }
        Ok(options
            .iter()
            .find(|s| !is_capture(self.g, cops, s))
            .unwrap_or(&options[0])
            .clone())
    }

    pub fn run(mut self) -> Result<PlayOutcome> {
        let g = self.g;
        let (k, q) = (self.cfg.k, self.cfg.q);
        self.say(&format!(
            "game on {} vertices, {} edges: k={k} q={q}{}; you play the {}",
            g.vertex_count(),
            g.edge_count(),
            if self.cfg.monotone { " monotone" } else { "" },
            if self.human == Side::Cop { "cops" } else { "robber" }
        ))?;
        let starts = initial_parts(g);
        if starts.is_empty() {
            self.say("no edges: the cops win immediately")?;
            return Ok(PlayOutcome::Finished {
                winner: Winner::Cop,
                rounds: 0,
            });
        }
        let robber = if self.human == Side::Robber {
            self.say("choose a starting part:")?;
            match self.choose_part("robber", &starts)? {
                Read::Value(p) => p,
                Read::Quit => return self.quit(),
            }
        } else {
            self.solver_robber_part(&VertexSet::new(), &starts, q)?
        };
        let mut pos = Position {
            cops: VertexSet::new(),
            robber,
            placements: 0,
        };
        let mut round = 0;
        loop {
            self.say(&trace_line(round, &pos))?;
            if is_capture(g, &pos.cops, &pos.robber) {
                self.say("robber captured: the cops win")?;
                return Ok(PlayOutcome::Finished { winner: Winner::Cop, rounds: round });
            }
            if pos.placements >= q {
                self.say("placements exhausted: the robber wins")?;
                return Ok(PlayOutcome::Finished {
                    winner: Winner::Robber,
                    rounds: round,
                });
            }
            let mv = if self.human == Side::Cop {
                match self.human_cop_move(&pos)? {
                    Read::Value(mv) => mv,
                    Read::Quit => return self.quit(),
                }
            } else {
                let mv = self.solver_cop_move(&pos)?;
                let r: Vec<usize> = mv.removed.iter().map(|v| v + 1).collect();
                self.say(&format!("cops remove {r:?}, place {}", mv.placed + 1))?;
                mv
            };
            let options = legal_robber_responses(g, &pos, &mv)?;
            let next = if self.human == Side::Robber {
                self.say("choose where to run:")?;
                match self.choose_part("robber", &options)? {
                    Read::Value(p) => p,
                    Read::Quit => return self.quit(),
                }
            } else {
                self.solver_robber_part(&mv.next, &options, q - pos.placements - 1)?
            };
            pos = Position {
                cops: mv.next,
                robber: next,
                placements: pos.placements + 1,
            };
            round += 1;
        }
    }

    fn quit(mut self) -> Result<PlayOutcome> {
        self.say("session ended")?;
        Ok(PlayOutcome::Quit)
    }
}
