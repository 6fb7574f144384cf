use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{total_cost, Configuration, ProblemInstance};
use crate::scalar::Scalar;

use super::OracleResult;

pub const EXHAUSTIVE_MAX_N: usize = 14;

/// Enumerates every anchored configuration and keeps the cheapest.
///
/// The points are split into consecutive segments in every possible way.
/// Each segment is laid out tightly (gaps exactly delta) with one of its
/// points left in place, trying every in-segment anchor whose segment cost
/// is minimal. Combinations that are not globally independent are dropped.
/// Some optimum always has this form, so the minimum over the survivors is
/// the optimal cost; every optimal survivor is reported.
pub fn exhaustive_anchored_solve<T: Scalar>(inst: &ProblemInstance<T>) -> Result<OracleResult<T>> {
    let n = inst.len();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge { n, max: EXHAUSTIVE_MAX_N });
    }
    let delta = inst.delta;

    // Segment [a, b] anchored at j puts point i at initial[j] + (i - j) * delta.
    // candidates[a][b] holds the distinct layouts (as position of point a)
    // over all cost-minimal anchors, together with that minimal cost.
    let mut candidates: Vec<Vec<(T, Vec<T>)>> = vec![Vec::new(); n];
    for (a, row) in candidates.iter_mut().enumerate() {
        for b in a..n {
            let mut best: Option<T> = None;
            let mut starts = BTreeSet::new();
            for j in a..=b {
                let start = inst.initial[j].sub_exact(T::index_offset(j - a, delta)?)?;
                let mut cost = T::zero();
                let mut x = start;
                for i in a..=b {
                    cost = cost.add_exact(x.sub_exact(inst.initial[i])?.abs_exact()?)?;
                    x = x.add_exact(delta)?;
                }
                match best {
                    Some(c) if cost > c => {}
                    Some(c) if cost == c => {
                        starts.insert(start);
                    }
                    _ => {
                        best = Some(cost);
                        starts = BTreeSet::from([start]);
                    }
                }
            }
            row.push((best.expect("non-empty segment"), starts.into_iter().collect()));
        }
    }

    let mut search = Search {
        inst,
        candidates: &candidates,
        best: None,
        optima: BTreeSet::new(),
        positions: Vec::with_capacity(n),
    };
    search.descend(0, T::zero())?;

    let best_cost = search.best.unwrap_or_else(T::zero);
    let mut optima: Vec<Configuration<T>> = if n == 0 {
        vec![Configuration::new(Vec::new())]
    } else {
        search.optima.into_iter().map(Configuration::new).collect()
    };
    optima.sort();
    let witness = optima.first().cloned().ok_or_else(|| Error::Invariant("no feasible layout".into()))?;
    debug_assert_eq!(total_cost(inst, &witness)?, best_cost);
    Ok(OracleResult { best_cost, witness, all_optima: Some(optima) })
}

struct Search<'a, T> {
    inst: &'a ProblemInstance<T>,
    candidates: &'a [Vec<(T, Vec<T>)>],
    best: Option<T>,
    optima: BTreeSet<Vec<T>>,
    positions: Vec<T>,
}

impl<T: Scalar> Search<'_, T> {
    fn descend(&mut self, a: usize, cost: T) -> Result<()> {
        let n = self.inst.len();
        if a == n {
            match self.best {
                Some(b) if cost > b => {}
                Some(b) if cost == b => {
                    self.optima.insert(self.positions.clone());
                }
                _ => {
                    self.best = Some(cost);
                    self.optima.clear();
                    self.optima.insert(self.positions.clone());
                }
            }
            return Ok(());
        }
        let delta = self.inst.delta;
        for b in a..n {
            let (seg_cost, ref starts) = self.candidates[a][b - a];
            let total = cost.add_exact(seg_cost)?;
            // Costs are non-negative, so a partial sum above the best is final.
            if matches!(self.best, Some(best) if total > best) {
                continue;
            }
            for &start in starts {
                if let Some(&prev) = self.positions.last() {
                    if start.sub_exact(prev)? < delta {
                        continue;
                    }
                }
                let mut x = start;
                for _ in a..=b {
                    self.positions.push(x);
                    x = x.add_exact(delta)?;
                }
                self.descend(b + 1, total)?;
                self.positions.truncate(a);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive(delta: i64, initial: &[i64]) -> OracleResult<i64> {
        exhaustive_anchored_solve(&ProblemInstance::from_sorted(delta, initial.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn singleton() {
        let r = exhaustive(5, &[3]);
        assert_eq!(r.best_cost, 0);
        assert_eq!(r.witness.positions, vec![3]);
    }

    #[test]
    fn two_points_two_anchors() {
        let r = exhaustive(2, &[0, 1]);
        assert_eq!(r.best_cost, 1);
        let optima: Vec<_> = r.all_optima.unwrap().into_iter().map(|c| c.positions).collect();
        assert_eq!(optima, vec![vec![-1, 1], vec![0, 2]]);
    }

    #[test]
    fn small_costs() {
        assert_eq!(exhaustive(20, &[0, 40, 45]).best_cost, 15);
        assert_eq!(exhaustive(20, &[0, 30, 35]).best_cost, 15);
        assert_eq!(exhaustive(2, &[0, 1, 2]).best_cost, 2);
    }

    #[test]
    fn empty_instance() {
        let r = exhaustive(1, &[]);
        assert_eq!(r.best_cost, 0);
        assert_eq!(r.all_optima.unwrap().len(), 1);
    }

    #[test]
    fn rejects_large() {
        let p = ProblemInstance::from_sorted(1i64, (0..15).collect()).unwrap();
        assert_eq!(exhaustive_anchored_solve(&p), Err(Error::TooLarge { n: 15, max: 14 }));
    }
}
