use serde::Serialize;

use super::structure::{bit, ColoringProblem};
use super::{KsError, Mask, OrthStructure, COUNT_LIMIT};

/// A 0/1 assignment to the vertices of a KS instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    assignment: Vec<u8>,
}

impl Coloring {
    pub fn new(assignment: Vec<u8>) -> Self {
        Self { assignment }
    }

    pub fn assignment(&self) -> &[u8] {
        &self.assignment
    }

    pub fn value(&self, v: usize) -> u8 {
        self.assignment[v]
    }

    /// Check both sum rules against `problem`.
    pub fn is_valid_for(&self, problem: &ColoringProblem) -> bool {
        if self.assignment.len() != problem.vertex_count() || self.assignment.iter().any(|&x| x > 1)
        {
            return false;
        }
        let ones_in = |idx: &[usize]| idx.iter().filter(|&&i| self.assignment[i] == 1).count();
        problem.bases().iter().all(|b| ones_in(b) == 1)
            && problem.pairs().iter().all(|&(i, j)| ones_in(&[i, j]) <= 1)
    }
}

/// Result of a fully explored search tree with no satisfying assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustionCertificate {
    pub nodes_explored: u64,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Colorable { coloring: Coloring, nodes_explored: u64 },
    Uncolorable(ExhaustionCertificate),
}

impl SearchOutcome {
    pub fn is_colorable(&self) -> bool {
        matches!(self, SearchOutcome::Colorable { .. })
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            SearchOutcome::Colorable { nodes_explored, .. } => *nodes_explored,
            SearchOutcome::Uncolorable(c) => c.nodes_explored,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct State {
    ones: Mask,
    zeros: Mask,
}

enum Branch {
    /// Every basis already holds a 1.
    Settled,
    Vertex(usize),
}

struct Searcher<'a> {
    problem: &'a ColoringProblem,
    all: Mask,
    nodes: u64,
    max_depth: usize,
}

impl<'a> Searcher<'a> {
    fn new(problem: &'a ColoringProblem) -> Self {
        let n = problem.vertex_count();
        let all = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
        Self {
            problem,
            all,
            nodes: 0,
            max_depth: 0,
        }
    }

    /// Unit propagation to a fixpoint; `None` on conflict.
    fn propagate(&self, mut s: State) -> Option<State> {
        loop {
            let mut forced_zero: Mask = 0;
            let mut ones = s.ones;
            while ones != 0 {
                let v = ones.trailing_zeros() as usize;
                ones &= ones - 1;
                forced_zero |= self.problem.neighbor_mask(v);
            }
            s.zeros |= forced_zero;
            if s.ones & s.zeros != 0 {
                return None;
            }
            let mut changed = false;
            for &b in self.problem.basis_masks() {
                if b & s.ones != 0 {
                    continue;
                }
                let open = b & !s.zeros;
                match open.count_ones() {
                    0 => return None,
                    1 => {
                        s.ones |= open;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(s);
            }
        }
    }

    /// Most constrained open basis, then its highest-degree open vertex.
    fn choose(&self, s: &State) -> Branch {
        let mut best: Option<(u32, Mask)> = None;
        for &b in self.problem.basis_masks() {
            if b & s.ones != 0 {
                continue;
            }
            let open = b & !s.zeros;
            let c = open.count_ones();
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, open));
            }
        }
        let Some((_, mut open)) = best else {
            return Branch::Settled;
        };
        let mut pick = None;
        let mut pick_degree = 0;
        while open != 0 {
            let v = open.trailing_zeros() as usize;
            open &= open - 1;
            let d = self.problem.degree(v);
            if pick.is_none() || d > pick_degree {
                pick = Some(v);
                pick_degree = d;
            }
        }
        Branch::Vertex(pick.expect("open basis has an unassigned vertex"))
    }

    fn find(&mut self, s: State, depth: usize) -> Option<State> {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        let s = self.propagate(s)?;
        match self.choose(&s) {
            Branch::Settled => Some(State {
                ones: s.ones,
                zeros: self.all & !s.ones,
            }),
            Branch::Vertex(v) => {
                let one = State {
                    ones: s.ones | bit(v),
                    zeros: s.zeros,
                };
                if let Some(found) = self.find(one, depth + 1) {
                    return Some(found);
                }
                let zero = State {
                    ones: s.ones,
                    zeros: s.zeros | bit(v),
                };
                self.find(zero, depth + 1)
            }
        }
    }

    fn count(&mut self, s: State, depth: usize) -> u128 {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        let Some(s) = self.propagate(s) else {
            return 0;
        };
        let v = match self.choose(&s) {
            Branch::Vertex(v) => v,
            Branch::Settled => {
                let free = self.all & !(s.ones | s.zeros);
                if free == 0 {
                    return 1;
                }
                free.trailing_zeros() as usize
            }
        };
        let one = State {
            ones: s.ones | bit(v),
            zeros: s.zeros,
        };
        let zero = State {
            ones: s.ones,
            zeros: s.zeros | bit(v),
        };
        self.count(one, depth + 1) + self.count(zero, depth + 1)
    }
}

/// Decide colorability of a combinatorial instance by backtracking search.
pub fn search_problem(problem: &ColoringProblem) -> SearchOutcome {
    let mut searcher = Searcher::new(problem);
    let found = searcher.find(State { ones: 0, zeros: 0 }, 0);
    match found {
        Some(s) => {
            let assignment = (0..problem.vertex_count())
                .map(|i| u8::from(s.ones & bit(i) != 0))
                .collect();
            SearchOutcome::Colorable {
                coloring: Coloring::new(assignment),
                nodes_explored: searcher.nodes,
            }
        }
        None => SearchOutcome::Uncolorable(ExhaustionCertificate {
            nodes_explored: searcher.nodes,
            max_depth: searcher.max_depth,
        }),
    }
}

/// Decide KS-colorability of a structure.
pub fn search_coloring(s: &OrthStructure) -> SearchOutcome {
    search_problem(s.problem())
}

/// Exact number of valid colorings, together with the nodes visited.
pub fn count_problem(problem: &ColoringProblem) -> Result<(u128, u64), KsError> {
    if problem.vertex_count() > COUNT_LIMIT {
        return Err(KsError::TooManyVectors {
            count: problem.vertex_count(),
            limit: COUNT_LIMIT,
        });
    }
    let mut searcher = Searcher::new(problem);
    let n = searcher.count(State { ones: 0, zeros: 0 }, 0);
    Ok((n, searcher.nodes))
}

pub fn count_colorings(s: &OrthStructure) -> Result<u128, KsError> {
    count_problem(s.problem()).map(|(n, _)| n)
}
