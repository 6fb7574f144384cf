//! The O(n log n) insertion solver.
//!
//! Points are inserted left to right. A point either lands on its initial
//! position (opening a new chain or extending the last one when it lands
//! exactly delta away) or is pushed to `previous + delta`, joining the last
//! chain as a right-displaced point. When that tips the last chain to
//! `|R| = |L| + |O|`, the chain slides left until either its smallest right
//! slack reaches zero or it touches the chain before it, in which case the
//! two chains merge.
//!
//! Chains store positions affinely: point `i` sits at `base + i * delta`.
//! A right-displaced point is kept in the chain's heap under the fixed key
//! `i * delta - initial[i]`, so its slack is `key + base` and sliding a
//! chain only touches `base`. Two neighbouring chains are exactly delta
//! apart iff their bases are equal, which makes merged heap keys directly
//! comparable.

use std::fmt;

use crate::audit::{audit_parts, decompose_parts};
use crate::error::{Error, Result};
use crate::heap::PairingHeap;
use crate::model::{total_cost, Configuration, ProblemInstance};
use crate::scalar::Scalar;

/// Operation counts gathered during one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// Heap primitives: insert, find-min, extract-min and meld.
    pub heap_ops: u64,
    /// Key comparisons performed inside the heaps.
    pub heap_comparisons: u64,
    pub shifts: u64,
    pub merges: u64,
    pub iterations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceKind {
    PlaceInitial,
    PlaceAppended,
    NewChain,
    JoinChain,
    Shift,
    Merge,
}

impl TraceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceKind::PlaceInitial => "place_initial",
            TraceKind::PlaceAppended => "place_appended",
            TraceKind::NewChain => "new_chain",
            TraceKind::JoinChain => "join_chain",
            TraceKind::Shift => "shift",
            TraceKind::Merge => "merge",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "place_initial" => TraceKind::PlaceInitial,
            "place_appended" => TraceKind::PlaceAppended,
            "new_chain" => TraceKind::NewChain,
            "join_chain" => TraceKind::JoinChain,
            "shift" => TraceKind::Shift,
            "merge" => TraceKind::Merge,
            _ => return None,
        })
    }
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One solver action. `amount` is set for shifts, `merged_with_start` for merges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent<T> {
    /// Index of the point being inserted when the action happened.
    pub iter: usize,
    pub kind: TraceKind,
    pub chain_start: usize,
    pub amount: Option<T>,
    pub merged_with_start: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub trace: bool,
    /// Audit the partial configuration after every iteration.
    pub debug_audit: bool,
}

#[derive(Debug, Clone)]
pub struct SolveResult<T> {
    pub configuration: Configuration<T>,
    pub total_cost: T,
    pub counters: Counters,
    pub trace: Option<Vec<TraceEvent<T>>>,
}

/// A chain under construction.
#[derive(Debug)]
pub struct LiveChain<T> {
    pub start: usize,
    pub end: usize,
    /// Point `i` of the chain sits at `base + i * delta`.
    pub base: T,
    pub cnt_l: usize,
    pub cnt_o: usize,
    /// Keys `i * delta - initial[i]` of the right-displaced points.
    pub heap: PairingHeap<T>,
    /// Total leftward movement since the chain was created.
    pub shift_total: T,
}

impl<T: Scalar> LiveChain<T> {
    fn singleton(i: usize, base: T) -> Self {
        Self {
            start: i,
            end: i,
            base,
            cnt_l: 0,
            cnt_o: 1,
            heap: PairingHeap::new(),
            shift_total: T::zero(),
        }
    }

    pub fn cnt_r(&self) -> usize {
        self.heap.len()
    }

    /// Smallest positive displacement among the right-displaced points.
    pub fn min_slack(&self, counters: &mut Counters) -> Result<Option<T>> {
        counters.heap_ops += 1;
        self.heap.find_min().map(|&k| k.add_exact(self.base)).transpose()
    }

    /// Slides the chain left by `amount`.
    ///
    /// Points that were on their initial position move left of it, and right
    /// points whose slack reaches zero become stationary. Requires
    /// `0 < amount <= min slack`; room on the left is the caller's concern.
    pub fn shift(&mut self, amount: T, counters: &mut Counters) -> Result<()> {
        if amount <= T::zero() {
            return Err(Error::Invariant(format!("non-positive shift {amount}")));
        }
        if let Some(slack) = self.min_slack(counters)? {
            if amount > slack {
                return Err(Error::Invariant(format!("shift {amount} exceeds min slack {slack}")));
            }
        }
        self.base = self.base.sub_exact(amount)?;
        self.shift_total = self.shift_total.add_exact(amount)?;
        counters.shifts += 1;
        self.cnt_l += self.cnt_o;
        self.cnt_o = 0;
        while let Some(slack) = self.min_slack(counters)? {
            if slack > T::zero() {
                break;
            }
            if slack < T::zero() {
                return Err(Error::Invariant(format!("right point with slack {slack}")));
            }
            self.heap.extract_min();
            counters.heap_ops += 1;
            self.cnt_o += 1;
        }
        Ok(())
    }

    /// Joins two adjacent chains that are exactly delta apart.
    pub fn merge(mut left: Self, right: Self, counters: &mut Counters) -> Result<Self> {
        if right.start != left.end + 1 || right.base != left.base {
            return Err(Error::Invariant(format!(
                "cannot merge [{}..{}] (base {}) with [{}..{}] (base {})",
                left.start, left.end, left.base, right.start, right.end, right.base
            )));
        }
        left.end = right.end;
        left.cnt_l += right.cnt_l;
        left.cnt_o += right.cnt_o;
        left.heap.meld(right.heap);
        counters.heap_ops += 1;
        counters.merges += 1;
        Ok(left)
    }

    fn property1(&self) -> bool {
        self.cnt_l + self.cnt_o > self.cnt_r()
    }
}

/// Incremental solver state. [`solve`] drives it over all points.
#[derive(Debug)]
pub struct Solver<'a, T> {
    inst: &'a ProblemInstance<T>,
    chains: Vec<LiveChain<T>>,
    placed: usize,
    counters: Counters,
    trace: Option<Vec<TraceEvent<T>>>,
}

impl<'a, T: Scalar> Solver<'a, T> {
    pub fn new(inst: &'a ProblemInstance<T>, want_trace: bool) -> Self {
        Self {
            inst,
            chains: Vec::new(),
            placed: 0,
            counters: Counters::default(),
            trace: want_trace.then(Vec::new),
        }
    }

    pub fn chains(&self) -> &[LiveChain<T>] {
        &self.chains
    }

    pub fn placed(&self) -> usize {
        self.placed
    }

    fn record(&mut self, kind: TraceKind, chain_start: usize, amount: Option<T>, merged_with_start: Option<usize>) {
        if let Some(trace) = &mut self.trace {
            trace.push(TraceEvent { iter: self.placed, kind, chain_start, amount, merged_with_start });
        }
    }

    /// Places the next point. Returns true when the last chain now has
    /// `|R| = |L| + |O|` and [`Solver::restore_property`] must run.
    pub fn insert_point(&mut self) -> Result<bool> {
        let i = self.placed;
        let delta = self.inst.delta;
        let initial = *self
            .inst
            .initial
            .get(i)
            .ok_or_else(|| Error::Invariant(format!("no point {i} to insert")))?;
        let offset = T::index_offset(i, delta)?;
        let Some(last) = self.chains.last_mut() else {
            self.chains.push(LiveChain::singleton(i, initial.sub_exact(offset)?));
            self.record(TraceKind::PlaceInitial, i, None, None);
            self.record(TraceKind::NewChain, i, None, None);
            return Ok(false);
        };
        // Previous point sits at base + (i - 1) * delta, so initial[i] - that = initial[i] - offset - base + delta.
        let gap = initial.sub_exact(offset)?.sub_exact(last.base)?.add_exact(delta)?;
        if gap >= delta {
            if gap == delta {
                last.end = i;
                last.cnt_o += 1;
                let start = last.start;
                self.record(TraceKind::PlaceInitial, start, None, None);
                self.record(TraceKind::JoinChain, start, None, None);
            } else {
                self.chains.push(LiveChain::singleton(i, initial.sub_exact(offset)?));
                self.record(TraceKind::PlaceInitial, i, None, None);
                self.record(TraceKind::NewChain, i, None, None);
            }
            return Ok(false);
        }
        last.end = i;
        last.heap.insert(offset.sub_exact(initial)?);
        self.counters.heap_ops += 1;
        let violated = last.heap.len() >= last.cnt_l + last.cnt_o;
        let start = last.start;
        self.record(TraceKind::PlaceAppended, start, None, None);
        self.record(TraceKind::JoinChain, start, None, None);
        Ok(violated)
    }

    /// Slides the last chain left until `|L| + |O| > |R|` holds again,
    /// merging it into its left neighbour if the two touch first.
    pub fn restore_property(&mut self) -> Result<()> {
        let k = self
            .chains
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Invariant("no chain to restore".into()))?;
        let last = &self.chains[k];
        if last.cnt_r() != last.cnt_l + last.cnt_o {
            return Err(Error::Invariant(format!(
                "restore on chain with L={} O={} R={}",
                last.cnt_l,
                last.cnt_o,
                last.cnt_r()
            )));
        }
        let alpha = last
            .min_slack(&mut self.counters)?
            .ok_or_else(|| Error::Invariant("violated chain has no right points".into()))?;
        let beta = match k {
            0 => None,
            _ => Some(last.base.sub_exact(self.chains[k - 1].base)?),
        };
        let start = last.start;
        match beta {
            Some(beta) if alpha >= beta => {
                if beta <= T::zero() {
                    return Err(Error::Invariant(format!("chains at {start} not separated")));
                }
                self.chains[k].shift(beta, &mut self.counters)?;
                self.record(TraceKind::Shift, start, Some(beta), None);
                let right = self.chains.pop().expect("k >= 1");
                let left = self.chains.pop().expect("k >= 1");
                let left_start = left.start;
                self.chains.push(LiveChain::merge(left, right, &mut self.counters)?);
                self.record(TraceKind::Merge, left_start, None, Some(start));
            }
            _ => {
                self.chains[k].shift(alpha, &mut self.counters)?;
                self.record(TraceKind::Shift, start, Some(alpha), None);
            }
        }
        let last = self.chains.last().expect("non-empty");
        if !last.property1() {
            return Err(Error::Invariant(format!(
                "restore left chain [{}..{}] with L={} O={} R={}",
                last.start,
                last.end,
                last.cnt_l,
                last.cnt_o,
                last.cnt_r()
            )));
        }
        Ok(())
    }

    /// One full iteration: insert the next point and repair if needed.
    pub fn step(&mut self) -> Result<()> {
        if self.insert_point()? {
            self.restore_property()?;
        }
        self.placed += 1;
        self.counters.iterations += 1;
        Ok(())
    }

    /// Materialises the positions of the points placed so far.
    pub fn positions(&self) -> Result<Vec<T>> {
        let delta = self.inst.delta;
        let mut out = Vec::with_capacity(self.placed);
        for c in &self.chains {
            let mut pos = c.base.add_exact(T::index_offset(c.start, delta)?)?;
            for _ in c.start..=c.end.min(self.placed.saturating_sub(1)) {
                out.push(pos);
                pos = pos.add_exact(delta)?;
            }
        }
        Ok(out)
    }

    /// Full audit of the partial configuration plus agreement between the
    /// live chains and an independent chain decomposition.
    pub fn check_invariants(&self) -> Result<()> {
        let positions = self.positions()?;
        let initial = &self.inst.initial[..self.placed];
        let report = audit_parts(self.inst.delta, initial, &positions);
        if !report.independent || !report.prop1_ok.iter().chain(&report.prop2_ok).all(|&b| b) {
            return Err(Error::Invariant(format!(
                "after {} points: {}",
                self.placed,
                report.failures().join("; ")
            )));
        }
        let views = decompose_parts(self.inst.delta, initial, &positions)?;
        let live: Vec<_> = self
            .chains
            .iter()
            .map(|c| (c.start, c.end, c.cnt_l, c.cnt_o, c.cnt_r()))
            .collect();
        let seen: Vec<_> = views.iter().map(|v| (v.start, v.end, v.cnt_l, v.cnt_o, v.cnt_r)).collect();
        if live != seen {
            return Err(Error::Invariant(format!("live chains {live:?} disagree with {seen:?}")));
        }
        if self.chains.windows(2).any(|w| w[0].base >= w[1].base) {
            return Err(Error::Invariant("chain bases not strictly increasing".into()));
        }
        Ok(())
    }

    pub fn finish(self) -> Result<SolveResult<T>> {
        let configuration = Configuration::new(self.positions()?);
        let total_cost = total_cost(self.inst, &configuration)?;
        let mut counters = self.counters;
        counters.heap_comparisons = self.chains.iter().map(|c| c.heap.comparisons()).sum();
        Ok(SolveResult { configuration, total_cost, counters, trace: self.trace })
    }
}

/// Computes a minimum total displacement independent configuration.
pub fn solve<T: Scalar>(inst: &ProblemInstance<T>, opts: SolveOptions) -> Result<SolveResult<T>> {
    let mut solver = Solver::new(inst, opts.trace);
    while solver.placed() < inst.len() {
        solver.step()?;
        if opts.debug_audit {
            solver.check_invariants()?;
        }
    }
    solver.finish()
}

/// Rebuilds the final configuration from a trace using explicit positions.
pub fn replay<T: Scalar>(inst: &ProblemInstance<T>, events: &[TraceEvent<T>]) -> Result<Configuration<T>> {
    let bad = |e: &TraceEvent<T>, why: &str| Error::Invariant(format!("trace event {e:?}: {why}"));
    let mut pos: Vec<T> = Vec::with_capacity(inst.len());
    let mut chains: Vec<(usize, usize)> = Vec::new();
    for e in events {
        match e.kind {
            TraceKind::PlaceInitial | TraceKind::PlaceAppended => {
                if e.iter != pos.len() || e.iter >= inst.len() {
                    return Err(bad(e, "out of order placement"));
                }
                let p = if e.kind == TraceKind::PlaceInitial {
                    inst.initial[e.iter]
                } else {
                    let prev = *pos.last().ok_or_else(|| bad(e, "append without predecessor"))?;
                    prev.add_exact(inst.delta)?
                };
                pos.push(p);
            }
            TraceKind::NewChain => chains.push((e.iter, e.iter)),
            TraceKind::JoinChain => match chains.last_mut() {
                Some(c) if c.0 == e.chain_start => c.1 = e.iter,
                _ => return Err(bad(e, "join to unknown chain")),
            },
            TraceKind::Shift => {
                let amount = e.amount.ok_or_else(|| bad(e, "shift without amount"))?;
                let &(s, t) = chains
                    .iter()
                    .find(|c| c.0 == e.chain_start)
                    .ok_or_else(|| bad(e, "shift of unknown chain"))?;
                for p in &mut pos[s..=t] {
                    *p = p.sub_exact(amount)?;
                }
            }
            TraceKind::Merge => {
                let right = chains.pop();
                let left = chains.last_mut();
                match (left, right, e.merged_with_start) {
                    (Some(l), Some(r), Some(m)) if l.0 == e.chain_start && r.0 == m && r.0 == l.1 + 1 => l.1 = r.1,
                    _ => return Err(bad(e, "merge of non-adjacent chains")),
                }
            }
        }
    }
    if pos.len() != inst.len() {
        return Err(Error::LengthMismatch { expected: inst.len(), got: pos.len() });
    }
    Ok(Configuration::new(pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(delta: i64, initial: &[i64]) -> ProblemInstance<i64> {
        ProblemInstance::from_sorted(delta, initial.to_vec()).unwrap()
    }

    fn run(delta: i64, initial: &[i64]) -> SolveResult<i64> {
        solve(&inst(delta, initial), SolveOptions { trace: true, debug_audit: true }).unwrap()
    }

    #[test]
    fn two_points_shift_alone() {
        let r = run(2, &[0, 1]);
        assert_eq!(r.configuration.positions, vec![-1, 1]);
        assert_eq!(r.total_cost, 1);
        assert_eq!((r.counters.shifts, r.counters.merges), (1, 0));
    }

    #[test]
    fn already_independent() {
        let r = run(1, &[0, 10]);
        assert_eq!(r.configuration.positions, vec![0, 10]);
        assert_eq!(r.total_cost, 0);
        assert_eq!(r.counters.heap_ops, 0);
    }

    #[test]
    fn merge_case() {
        // delta 2, initial [0, 3, 3.5] at scale 10.
        let r = run(20, &[0, 30, 35]);
        assert_eq!(r.configuration.positions, vec![0, 20, 40]);
        assert_eq!(r.total_cost, 15);
        assert_eq!(r.counters.merges, 1);
        let kinds: Vec<_> = r.trace.unwrap().iter().map(|e| e.kind).collect();
        assert!(kinds.ends_with(&[TraceKind::Shift, TraceKind::Merge]));
    }

    #[test]
    fn shift_by_alpha_case() {
        // delta 2, initial [0, 4, 4.5].
        let r = run(20, &[0, 40, 45]);
        assert_eq!(r.configuration.positions, vec![0, 25, 45]);
        assert_eq!(r.total_cost, 15);
        assert_eq!((r.counters.shifts, r.counters.merges), (1, 0));
    }

    #[test]
    fn empty_and_single() {
        let r = run(3, &[]);
        assert!(r.configuration.is_empty());
        assert_eq!(r.total_cost, 0);
        let r = run(3, &[-7]);
        assert_eq!(r.configuration.positions, vec![-7]);
        assert_eq!((r.total_cost, r.counters.heap_ops), (0, 0));
    }

    #[test]
    fn insert_cases() {
        let p = inst(2, &[0, 2, 3]);
        let mut s = Solver::new(&p, false);
        assert!(!s.insert_point().unwrap());
        s.placed += 1;
        // Exact delta landing joins as stationary.
        assert!(!s.insert_point().unwrap());
        s.placed += 1;
        assert_eq!(s.chains().len(), 1);
        assert_eq!((s.chains()[0].cnt_o, s.chains()[0].cnt_r()), (2, 0));
        // Pushed to 4 with slack 1; R=1 < L+O=2.
        assert!(!s.insert_point().unwrap());

        let p = inst(2, &[0, 1]);
        let mut s = Solver::new(&p, false);
        s.step().unwrap();
        assert!(s.insert_point().unwrap());
        let c = &s.chains()[0];
        assert_eq!(c.heap.find_min().map(|k| k + c.base), Some(1));
    }

    #[test]
    fn point_left_of_previous_is_appended() {
        // Duplicates: second point's initial is left of where the chain ends.
        let r = run(1, &[5, 5, 5]);
        assert_eq!(r.configuration.positions, vec![4, 5, 6]);
        assert_eq!(r.total_cost, 2);
    }

    fn chain(start: usize, end: usize, base: i64, cnt_l: usize, cnt_o: usize, keys: &[i64]) -> LiveChain<i64> {
        LiveChain {
            start,
            end,
            base,
            cnt_l,
            cnt_o,
            heap: keys.iter().copied().collect(),
            shift_total: 0,
        }
    }

    #[test]
    fn shift_pops_reached_slack() {
        let mut c = chain(0, 2, 0, 0, 1, &[1, 3]);
        let mut n = Counters::default();
        c.shift(1, &mut n).unwrap();
        assert_eq!((c.cnt_l, c.cnt_o, c.cnt_r()), (1, 1, 1));
        assert_eq!(c.shift_total, 1);
    }

    #[test]
    fn small_shift_converts_o_to_l() {
        let mut c = chain(0, 2, 0, 1, 2, &[5]);
        c.shift(2, &mut Counters::default()).unwrap();
        assert_eq!((c.cnt_l, c.cnt_o, c.cnt_r()), (3, 0, 1));
    }

    #[test]
    fn duplicate_min_slacks_both_pop() {
        let mut c = chain(0, 2, 0, 0, 1, &[2, 2]);
        c.shift(2, &mut Counters::default()).unwrap();
        assert_eq!((c.cnt_l, c.cnt_o, c.cnt_r()), (1, 2, 0));
    }

    #[test]
    fn shift_preconditions() {
        let mut c = chain(0, 1, 0, 0, 1, &[2]);
        assert!(c.shift(3, &mut Counters::default()).is_err());
        assert!(c.shift(0, &mut Counters::default()).is_err());
    }

    #[test]
    fn merge_checks_and_combines() {
        let mut n = Counters::default();
        let left = chain(0, 0, 5, 0, 1, &[]);
        let right = chain(1, 2, 5, 1, 1, &[-3]);
        let m = LiveChain::merge(left, right, &mut n).unwrap();
        assert_eq!((m.start, m.end, m.cnt_l, m.cnt_o, m.cnt_r()), (0, 2, 1, 2, 1));

        let left = chain(0, 1, 5, 0, 1, &[-4]);
        let right = chain(2, 2, 5, 0, 1, &[]);
        let m = LiveChain::merge(left, right, &mut n).unwrap();
        assert_eq!(m.heap.find_min(), Some(&-4));

        let left = chain(0, 0, 5, 0, 1, &[]);
        assert!(LiveChain::merge(left, chain(1, 1, 6, 0, 1, &[]), &mut n).is_err());
        let left = chain(0, 0, 5, 0, 1, &[]);
        assert!(LiveChain::merge(left, chain(2, 2, 5, 0, 1, &[]), &mut n).is_err());
    }

    #[test]
    fn alpha_equals_beta_merges() {
        // delta 2: chain {0}, then 3 lands alone, 4 pushed to 5 (slack 1).
        // alpha = 1, beta = 3 - 0 - 2 = 1.
        let r = run(2, &[0, 3, 4]);
        assert_eq!(r.counters.merges, 1);
        assert_eq!(r.configuration.positions, vec![0, 2, 4]);
        let trace = r.trace.unwrap();
        let shift = trace.iter().find(|e| e.kind == TraceKind::Shift).unwrap();
        assert_eq!(shift.amount, Some(1));
    }

    #[test]
    fn replay_reproduces() {
        let p = inst(3, &[0, 1, 1, 2, 7, 8, 8, 9, 20]);
        let r = solve(&p, SolveOptions { trace: true, debug_audit: true }).unwrap();
        assert_eq!(replay(&p, r.trace.as_ref().unwrap()).unwrap(), r.configuration);
    }

    #[test]
    fn overflow_surfaces() {
        let p = inst(i64::MAX / 2, &[0, 1, 2, 3]);
        assert_eq!(solve(&p, SolveOptions::default()).unwrap_err(), Error::Overflow);
    }
}
