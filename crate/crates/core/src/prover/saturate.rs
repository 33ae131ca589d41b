//! The given-clause loop.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::time::{Duration, Instant};

use super::clause::{clause_weight, normalize, subsumes, Lit};
use super::infer::{
    demodulate, eq_factorings, eq_resolutions, fool_paramodulations, is_ground_lit, maximal_flags,
    superpositions, unit_deletions, unit_resolutions, Derived, Inference, Premise,
};
use super::proof::Proof;
use super::term::SymTable;

#[derive(Clone, Debug)]
pub struct Limits {
    pub time: Duration,
    pub max_clauses: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            time: Duration::from_secs(60),
            max_clauses: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SaturationOptions {
    pub fool_paramodulation: bool,
    pub limits: Limits,
    /// Clauses picked by age versus by weight.
    pub age_weight_ratio: (usize, usize),
    /// Restricts inferences to those with a premise descending from the
    /// negated conjecture. Saturation then proves nothing.
    pub set_of_support: bool,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            fool_paramodulation: true,
            limits: Limits::default(),
            age_weight_ratio: (1, 4),
            set_of_support: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub generated: usize,
    pub kept: usize,
    pub given: usize,
    pub forward_subsumed: usize,
    pub backward_subsumed: usize,
    pub tautologies: usize,
    pub fool_paramodulations: usize,
    pub demodulated: usize,
    pub unit_deletions: usize,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Refutation(Proof),
    /// The final active set.
    Saturated(Vec<Vec<Lit>>),
    ResourceOut,
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub outcome: Outcome,
    pub stats: Stats,
}

struct Passive {
    by_age: VecDeque<usize>,
    by_weight: BinaryHeap<Reverse<(usize, usize)>>,
    taken: Vec<bool>,
    picks: usize,
}

impl Passive {
    fn push(&mut self, id: usize, weight: usize) {
        if self.taken.len() <= id {
            self.taken.resize(id + 1, false);
        }
        self.by_age.push_back(id);
        self.by_weight.push(Reverse((weight, id)));
    }

    fn pop(&mut self, ratio: (usize, usize)) -> Option<usize> {
        let by_age = self.picks % (ratio.0 + ratio.1).max(1) < ratio.0;
        self.picks += 1;
        let next = |p: &mut Passive, age: bool| -> Option<usize> {
            loop {
                let id = if age {
                    p.by_age.pop_front()?
                } else {
                    p.by_weight.pop()?.0 .1
                };
                if !p.taken[id] {
                    p.taken[id] = true;
                    return Some(id);
                }
            }
        };
        next(self, by_age).or_else(|| next(self, !by_age))
    }
}

struct Store {
    clauses: Vec<(Vec<Lit>, Inference)>,
}

impl Store {
    fn proof(&self, root: usize, tab: &SymTable) -> Proof {
        let mut keep = vec![false; self.clauses.len()];
        let mut stack = vec![root];
        while let Some(k) = stack.pop() {
            if keep[k] {
                continue;
            }
            keep[k] = true;
            stack.extend(self.clauses[k].1.parents());
        }
        let steps = (0..self.clauses.len())
            .filter(|k| keep[*k])
            .map(|k| super::proof::ProofStep {
                id: k,
                lits: self.clauses[k].0.clone(),
                inference: self.clauses[k].1.clone(),
            })
            .collect();
        Proof {
            steps,
            table: tab.clone(),
        }
    }
}

const DEMODULATION_STEPS: usize = 1000;

enum Simplified {
    Unchanged,
    Deleted,
    Into(usize),
}

struct Loop<'a> {
    tab: &'a SymTable,
    opts: &'a SaturationOptions,
    start: Instant,
    store: Store,
    maximal: Vec<Option<Vec<bool>>>,
    sos: Vec<bool>,
    passive: Passive,
    active: Vec<usize>,
    stats: Stats,
}

impl Loop<'_> {
    fn out_of_resources(&self) -> bool {
        self.start.elapsed() > self.opts.limits.time
            || self.store.clauses.len() > self.opts.limits.max_clauses
    }

    /// Stores a normalized clause; returns its id, or `None` for tautologies.
    fn store(&mut self, lits: Vec<Lit>, inf: Inference) -> Option<usize> {
        let Some(lits) = normalize(lits, self.opts.fool_paramodulation) else {
            self.stats.tautologies += 1;
            return None;
        };
        let id = self.store.clauses.len();
        let sos = match &inf {
            Inference::Input { conjecture, .. } => *conjecture || !self.opts.set_of_support,
            other => other.parents().iter().any(|p| self.sos[*p]),
        };
        self.store.clauses.push((lits, inf));
        self.sos.push(sos);
        self.maximal.push(None);
        self.stats.kept += 1;
        Some(id)
    }

    /// Stores and enqueues; returns the id when the clause is empty.
    fn add(&mut self, lits: Vec<Lit>, inf: Inference) -> Option<usize> {
        let id = self.store(lits, inf)?;
        let c = &self.store.clauses[id].0;
        if c.is_empty() {
            return Some(id);
        }
        self.passive.push(id, clause_weight(c));
        None
    }

    fn lits(&self, id: usize) -> &[Lit] {
        &self.store.clauses[id].0
    }

    fn maximal(&mut self, id: usize) -> Vec<bool> {
        if self.maximal[id].is_none() {
            self.maximal[id] = Some(maximal_flags(&self.store.clauses[id].0, self.tab));
        }
        self.maximal[id].clone().unwrap()
    }

    fn units(&self) -> Vec<usize> {
        self.active
            .iter()
            .copied()
            .filter(|k| self.lits(*k).len() == 1)
            .collect()
    }

    /// Demodulates and deletes refuted literals of clause `id` using `units`.
    fn simplify(&mut self, id: usize, units: &[usize]) -> Simplified {
        let mut cur = id;
        let pos: Vec<(usize, &Lit)> = units
            .iter()
            .map(|k| (*k, &self.lits(*k)[0]))
            .filter(|(_, l)| l.pos)
            .collect();
        if let Some((lits, steps)) = demodulate(self.lits(cur), &pos, self.tab, DEMODULATION_STEPS)
        {
            self.stats.demodulated += 1;
            match self.store(lits, Inference::Demodulation { target: cur, steps }) {
                None => return Simplified::Deleted,
                Some(k) => cur = k,
            }
        }
        let all: Vec<(usize, &Lit)> = units.iter().map(|k| (*k, &self.lits(*k)[0])).collect();
        if let Some((lits, deletions)) = unit_deletions(self.lits(cur), &all) {
            self.stats.unit_deletions += 1;
            match self.store(
                lits,
                Inference::UnitDeletion {
                    target: cur,
                    deletions,
                },
            ) {
                None => return Simplified::Deleted,
                Some(k) => cur = k,
            }
        }
        if cur == id {
            Simplified::Unchanged
        } else {
            Simplified::Into(cur)
        }
    }

    fn run(mut self, input: Vec<(Vec<Lit>, Inference)>) -> SaturationResult {
        for (lits, inf) in input {
            if let Some(id) = self.add(lits, inf) {
                return self.refutation(id);
            }
        }
        if !self.sos.iter().any(|s| *s) {
            self.sos.iter_mut().for_each(|s| *s = true);
        }
        loop {
            if self.out_of_resources() {
                return self.finish(Outcome::ResourceOut);
            }
            let Some(mut gid) = self.passive.pop(self.opts.age_weight_ratio) else {
                if self.opts.set_of_support && self.sos.iter().any(|s| !s) {
                    return self.finish(Outcome::ResourceOut);
                }
                let set = self.active.iter().map(|k| self.lits(*k).to_vec()).collect();
                return self.finish(Outcome::Saturated(set));
            };
            let units = self.units();
            match self.simplify(gid, &units) {
                Simplified::Unchanged => {}
                Simplified::Deleted => continue,
                Simplified::Into(id) if self.lits(id).is_empty() => return self.refutation(id),
                Simplified::Into(id) => gid = id,
            }
            let given = self.lits(gid).to_vec();
            if self.active.iter().any(|a| subsumes(self.lits(*a), &given)) {
                self.stats.forward_subsumed += 1;
                continue;
            }
            let before = self.active.len();
            let store = &self.store;
            self.active
                .retain(|a| !subsumes(&given, &store.clauses[*a].0));
            self.stats.backward_subsumed += before - self.active.len();
            if given.len() == 1 {
                let mut kept = Vec::new();
                let mut rewritten = Vec::new();
                for a in std::mem::take(&mut self.active) {
                    match self.simplify(a, &[gid]) {
                        Simplified::Unchanged => kept.push(a),
                        Simplified::Deleted => {}
                        Simplified::Into(k) => rewritten.push(k),
                    }
                }
                self.active = kept;
                for k in rewritten {
                    let c = self.lits(k);
                    if c.is_empty() {
                        return self.refutation(k);
                    }
                    self.passive.push(k, clause_weight(c));
                }
            }
            self.stats.given += 1;
            self.active.push(gid);

            let gmax = self.maximal(gid);
            let gp = Premise {
                lits: &given,
                id: gid,
                maximal: &gmax,
            };
            let mut derived: Vec<Derived> = Vec::new();
            let given_sos = self.sos[gid];
            if given_sos {
                eq_resolutions(&given, gid, self.tab, &mut derived);
                eq_factorings(&given, gid, self.tab, &mut derived);
                if self.opts.fool_paramodulation {
                    let n = derived.len();
                    fool_paramodulations(&given, gid, self.tab, &mut derived);
                    self.stats.fool_paramodulations += derived.len() - n;
                }
            }
            let given_unit = match given.as_slice() {
                [l] if is_ground_lit(l) => Some(l.clone()),
                _ => None,
            };
            for a in self.active.clone() {
                if !given_sos && !self.sos[a] {
                    continue;
                }
                if a != gid {
                    if let Some(u) = &given_unit {
                        unit_resolutions(self.lits(a), a, u, gid, self.tab, &mut derived);
                    }
                    if let [u] = self.lits(a) {
                        if is_ground_lit(u) {
                            let u = u.clone();
                            unit_resolutions(&given, gid, &u, a, self.tab, &mut derived);
                        }
                    }
                }
                let amax = self.maximal(a);
                let other = self.lits(a).to_vec();
                let ap = Premise {
                    lits: &other,
                    id: a,
                    maximal: &amax,
                };
                superpositions(ap, gp, self.tab, &mut derived);
                if a != gid {
                    superpositions(gp, ap, self.tab, &mut derived);
                }
                if derived.len() > 4096 {
                    if let Some(id) = self.flush(&mut derived) {
                        return self.refutation(id);
                    }
                    if self.out_of_resources() {
                        return self.finish(Outcome::ResourceOut);
                    }
                }
            }
            if let Some(id) = self.flush(&mut derived) {
                return self.refutation(id);
            }
        }
    }

    fn flush(&mut self, derived: &mut Vec<Derived>) -> Option<usize> {
        self.stats.generated += derived.len();
        for (lits, inf) in derived.drain(..) {
            if let Some(id) = self.add(lits, inf) {
                return Some(id);
            }
        }
        None
    }

    fn refutation(self, id: usize) -> SaturationResult {
        refutation(&self.store, id, self.tab, self.stats)
    }

    fn finish(self, outcome: Outcome) -> SaturationResult {
        SaturationResult {
            outcome,
            stats: self.stats,
        }
    }
}

/// Runs the given-clause loop on `input` until a refutation, saturation or a limit.
pub fn saturate(
    input: Vec<(Vec<Lit>, Inference)>,
    tab: &SymTable,
    opts: &SaturationOptions,
) -> SaturationResult {
    let l = Loop {
        tab,
        opts,
        start: Instant::now(),
        store: Store {
            clauses: Vec::new(),
        },
        maximal: Vec::new(),
        sos: Vec::new(),
        passive: Passive {
            by_age: VecDeque::new(),
            by_weight: BinaryHeap::new(),
            taken: Vec::new(),
            picks: 0,
        },
        active: Vec::new(),
        stats: Stats::default(),
    };
    l.run(input)
}

fn refutation(store: &Store, id: usize, tab: &SymTable, stats: Stats) -> SaturationResult {
    SaturationResult {
        outcome: Outcome::Refutation(store.proof(id, tab)),
        stats,
    }
}
