//! Local search over ε-lattices for extremal objective values.
//!
//! Every visited state is a maximal independent set of the conflict graph, so
//! every score the search sees is attained by a real lattice. Minimizing
//! therefore never undershoots the true infimum and maximizing never
//! overshoots the supremum.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::FnSpec;
use crate::lattice::{ConflictGraph, Lattice};
use crate::space::Domain;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// True when `a` is strictly preferable to `b`.
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }

    /// Signed loss of moving from `from` to `to`; positive means worse.
    fn loss(self, from: f64, to: f64) -> f64 {
        match self {
            Direction::Minimize => to - from,
            Direction::Maximize => from - to,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub restarts: usize,
    /// Moves per restart; `None` means `10 * n`.
    pub max_moves: Option<usize>,
    pub rng_seed: u64,
    pub anneal: bool,
    pub initial_temperature: f64,
    pub cooling: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_moves: None,
            rng_seed: 0,
            anneal: false,
            initial_temperature: 1.0,
            cooling: 0.95,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive".into()));
        }
        if self.max_moves == Some(0) {
            return Err(Error::InvalidConfig("max_moves must be positive".into()));
        }
        if self.anneal {
            if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
                return Err(Error::InvalidConfig(
                    "initial temperature must be positive".into(),
                ));
            }
            if !(self.cooling > 0.0 && self.cooling < 1.0) {
                return Err(Error::InvalidConfig(
                    "cooling ratio must lie in (0, 1)".into(),
                ));
            }
        }
        Ok(())
    }

    fn moves_for(&self, n: usize) -> usize {
        self.max_moves.unwrap_or(10 * n).max(1)
    }
}

/// A quantity scored on member sets of a conflict graph (local indices).
pub trait Objective {
    /// Score of an ascending member set, or `None` where it is undefined.
    fn score(&self, members: &[usize]) -> Option<f64>;

    /// Per-point preference used to order greedy completion; smaller keys
    /// go first when minimizing, larger first when maximizing.
    fn key(&self, v: usize) -> f64;
}

/// Average of per-point values, summed in ascending id order.
pub struct MeanObjective {
    values: Vec<f64>,
}

impl MeanObjective {
    /// `values` are indexed by the graph's local vertex index.
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn for_graph(graph: &ConflictGraph, table: &[f64]) -> Self {
        Self::new(graph.members().iter().map(|p| table[p.index()]).collect())
    }
}

impl Objective for MeanObjective {
    fn score(&self, members: &[usize]) -> Option<f64> {
        if members.is_empty() {
            return None;
        }
        let mut sum = 0.0;
        for &v in members {
            sum += self.values[v];
        }
        Some(sum / members.len() as f64)
    }

    fn key(&self, v: usize) -> f64 {
        self.values[v]
    }
}

/// `|A ∩ S| / |B ∩ S|`, undefined when `B ∩ S` is empty.
pub struct RatioObjective {
    in_a: Vec<bool>,
    in_b: Vec<bool>,
}

impl RatioObjective {
    pub fn new(in_a: Vec<bool>, in_b: Vec<bool>) -> Self {
        Self { in_a, in_b }
    }
}

impl Objective for RatioObjective {
    fn score(&self, members: &[usize]) -> Option<f64> {
        let (mut a, mut b) = (0usize, 0usize);
        for &v in members {
            a += self.in_a[v] as usize;
            b += self.in_b[v] as usize;
        }
        (b > 0).then(|| a as f64 / b as f64)
    }

    fn key(&self, v: usize) -> f64 {
        match (self.in_a[v], self.in_b[v]) {
            (true, _) => 1.0,
            (false, true) => 0.0,
            (false, false) => 0.5,
        }
    }
}

/// Lattice size; completion prefers high-degree points when minimizing.
pub struct SizeObjective {
    degree: Vec<usize>,
}

impl SizeObjective {
    pub fn new(graph: &ConflictGraph) -> Self {
        Self {
            degree: (0..graph.len()).map(|v| graph.degree(v)).collect(),
        }
    }
}

impl Objective for SizeObjective {
    fn score(&self, members: &[usize]) -> Option<f64> {
        Some(members.len() as f64)
    }

    fn key(&self, v: usize) -> f64 {
        -(self.degree[v] as f64)
    }
}

/// Best lattice found by a search and its objective value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEstimate {
    pub value: f64,
    pub lattice: Lattice,
}

/// Membership plus, per vertex, how many members conflict with it.
struct State<'g> {
    graph: &'g ConflictGraph,
    member: Vec<bool>,
    blockers: Vec<u32>,
}

impl<'g> State<'g> {
    fn from_members(graph: &'g ConflictGraph, members: &[usize]) -> Self {
        let mut s = Self {
            graph,
            member: vec![false; graph.len()],
            blockers: vec![0; graph.len()],
        };
        for &v in members {
            s.add(v);
        }
        s
    }

    fn add(&mut self, v: usize) {
        debug_assert!(!self.member[v] && self.blockers[v] == 0);
        self.member[v] = true;
        for &u in self.graph.neighbors(v) {
            self.blockers[u] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.member[v]);
        self.member[v] = false;
        for &u in self.graph.neighbors(v) {
            self.blockers[u] -= 1;
        }
    }

    fn is_free(&self, v: usize) -> bool {
        !self.member[v] && self.blockers[v] == 0
    }

    fn members(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&v| self.member[v]).collect()
    }

    /// Adds free points best-key first; `deferred` points are tried last.
    fn complete<O: Objective + ?Sized>(&mut self, obj: &O, dir: Direction, deferred: &[usize]) {
        let mut cand: Vec<usize> = (0..self.member.len())
            .filter(|&v| self.is_free(v) && !deferred.contains(&v))
            .collect();
        cand.sort_by(|&a, &b| {
            let (ka, kb) = (obj.key(a), obj.key(b));
            let ord = match dir {
                Direction::Minimize => ka.total_cmp(&kb),
                Direction::Maximize => kb.total_cmp(&ka),
            };
            ord.then(a.cmp(&b))
        });
        for v in cand.into_iter().chain(deferred.iter().copied()) {
            if self.is_free(v) {
                self.add(v);
            }
        }
    }
}

/// Better score first, then lexicographically smaller member list.
fn improves(dir: Direction, cand: (Option<f64>, &[usize]), best: (Option<f64>, &[usize])) -> bool {
    match (cand.0, best.0) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(a), Some(b)) => dir.better(a, b) || (a == b && cand.1 < best.1),
    }
}

/// Multi-restart local search for the extremal objective over lattices of `graph`.
///
/// Returns the best score and its ascending local member set, or `None` when
/// the objective was undefined on every visited lattice.
pub fn search_graph<O: Objective + ?Sized>(
    graph: &ConflictGraph,
    obj: &O,
    dir: Direction,
    cfg: &SearchConfig,
) -> Result<Option<(f64, Vec<usize>)>> {
    cfg.validate()?;
    let n = graph.len();
    let moves = cfg.moves_for(n);
    let mut best: Option<(Option<f64>, Vec<usize>)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(restart as u64);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let start = graph.greedy_local(&order);
        let mut state = State::from_members(graph, &start);
        let mut current = start;
        let mut cur_score = obj.score(&current);
        let mut local_best = (cur_score, current.clone());
        let mut temperature = cfg.initial_temperature;

        for _ in 0..moves {
            let proposal = propose(&mut state, &current, obj, dir, &mut rng);
            let Some(next) = proposal else { break };
            let next_score = obj.score(&next);
            let accept = match (next_score, cur_score) {
                (None, _) => false,
                (Some(_), None) => true,
                (Some(a), Some(b)) => {
                    let loss = dir.loss(b, a);
                    loss <= 0.0
                        || (cfg.anneal
                            && temperature > 0.0
                            && rng.gen::<f64>() < (-loss / temperature).exp())
                }
            };
            if accept {
                if improves(dir, (next_score, &next), (local_best.0, &local_best.1)) {
                    local_best = (next_score, next.clone());
                }
                current = next;
                cur_score = next_score;
            } else {
                state = State::from_members(graph, &current);
            }
            if cfg.anneal {
                temperature *= cfg.cooling;
            }
        }

        let replace = match &best {
            None => true,
            Some((s, m)) => improves(dir, (local_best.0, &local_best.1), (*s, m)),
        };
        if replace {
            best = Some(local_best);
        }
    }
    Ok(best.and_then(|(s, m)| s.map(|v| (v, m))))
}

/// One neighbourhood move applied to `state`; returns the new member set.
///
/// Either drops one member and re-completes with it deferred, or forces a
/// non-member in, evicts its conflicting members and re-completes with the
/// evicted points deferred.
fn propose<O: Objective + ?Sized>(
    state: &mut State<'_>,
    current: &[usize],
    obj: &O,
    dir: Direction,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let n = state.member.len();
    let outside = n - current.len();
    if current.is_empty() {
        return None;
    }
    let insert = outside > 0 && rng.gen_bool(0.5);
    if insert {
        let pick = rng.gen_range(0..outside);
        let v = (0..n).filter(|&v| !state.member[v]).nth(pick)?;
        let evicted: Vec<usize> = state
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| state.member[u])
            .collect();
        for &u in &evicted {
            state.remove(u);
        }
        state.add(v);
        state.complete(obj, dir, &evicted);
    } else {
        let m = current[rng.gen_range(0..current.len())];
        state.remove(m);
        state.complete(obj, dir, &[m]);
    }
    Some(state.members())
}

/// Searches for the lattice minimizing or maximizing the average of `f`.
///
/// The result is an inner approximation: a minimum is never below the true
/// lower mean and a maximum never above the true upper mean.
pub fn extremal_average<D: Domain + ?Sized>(
    domain: &D,
    eps: f64,
    f: &FnSpec,
    direction: Direction,
    cfg: &SearchConfig,
) -> Result<BoundEstimate> {
    let table = f.tabulate(domain.space())?;
    let graph = ConflictGraph::new(domain, eps)?;
    extremal_average_on(&graph, &table, direction, cfg)
}

pub(crate) fn extremal_average_on(
    graph: &ConflictGraph,
    table: &[f64],
    direction: Direction,
    cfg: &SearchConfig,
) -> Result<BoundEstimate> {
    let obj = MeanObjective::for_graph(graph, table);
    let (value, local) =
        search_graph(graph, &obj, direction, cfg)?.expect("mean is defined on nonempty lattices");
    Ok(BoundEstimate {
        value,
        lattice: graph.to_lattice(&local),
    })
}
