use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{total_cost, Configuration, ProblemInstance};
use crate::scalar::Scalar;

use super::OracleResult;

/// The insertion algorithm with explicit positions and plain index lists.
///
/// Every count and slack is recomputed by scanning, and a shift rewrites
/// every member, giving O(n^2) time. Output must match the fast solver
/// coordinate for coordinate.
pub fn naive_quadratic_solve<T: Scalar>(inst: &ProblemInstance<T>) -> Result<OracleResult<T>> {
    let delta = inst.delta;
    let init = &inst.initial;
    let mut pos: Vec<T> = Vec::with_capacity(inst.len());
    let mut chains: Vec<Vec<usize>> = Vec::new();

    for i in 0..inst.len() {
        let Some(&prev) = pos.last() else {
            pos.push(init[0]);
            chains.push(vec![0]);
            continue;
        };
        let gap = init[i].sub_exact(prev)?;
        if gap >= delta {
            pos.push(init[i]);
            if gap == delta {
                chains.last_mut().expect("non-empty").push(i);
            } else {
                chains.push(vec![i]);
            }
            continue;
        }
        pos.push(prev.add_exact(delta)?);
        chains.last_mut().expect("non-empty").push(i);

        let (l, o, r) = counts(chains.last().expect("non-empty"), &pos, init);
        if r < l + o {
            continue;
        }
        let last = chains.last().expect("non-empty");
        let mut alpha: Option<T> = None;
        for &j in last {
            if pos[j] > init[j] {
                let slack = pos[j].sub_exact(init[j])?;
                alpha = Some(alpha.map_or(slack, |a| a.min(slack)));
            }
        }
        let alpha = alpha.ok_or_else(|| Error::Invariant("no right point".into()))?;
        let beta = if chains.len() >= 2 {
            let prev_chain = &chains[chains.len() - 2];
            let gap = pos[last[0]].sub_exact(pos[*prev_chain.last().expect("non-empty")])?;
            Some(gap.sub_exact(delta)?)
        } else {
            None
        };
        let (amount, merge) = match beta {
            Some(b) if alpha >= b => (b, true),
            _ => (alpha, false),
        };
        for &j in chains.last().expect("non-empty") {
            pos[j] = pos[j].sub_exact(amount)?;
        }
        if merge {
            let right = chains.pop().expect("len >= 2");
            chains.last_mut().expect("len >= 1").extend(right);
        }
    }

    let witness = Configuration::new(pos);
    Ok(OracleResult { best_cost: total_cost(inst, &witness)?, witness, all_optima: None })
}

fn counts<T: Ord>(members: &[usize], pos: &[T], init: &[T]) -> (usize, usize, usize) {
    members.iter().fold((0, 0, 0), |(l, o, r), &j| match pos[j].cmp(&init[j]) {
        Ordering::Less => (l + 1, o, r),
        Ordering::Equal => (l, o + 1, r),
        Ordering::Greater => (l, o, r + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(delta: i64, initial: &[i64]) -> Vec<i64> {
        naive_quadratic_solve(&ProblemInstance::from_sorted(delta, initial.to_vec()).unwrap())
            .unwrap()
            .witness
            .positions
    }

    #[test]
    fn hand_traces() {
        assert_eq!(naive(2, &[0, 1]), vec![-1, 1]);
        assert_eq!(naive(20, &[0, 30, 35]), vec![0, 20, 40]);
        assert_eq!(naive(20, &[0, 40, 45]), vec![0, 25, 45]);
        assert!(naive(1, &[]).is_empty());
    }

    #[test]
    fn shift_pops_reached_point() {
        // delta 2, initial [0, 1, 1]: [0] then 1 -> 2 (slack 1), tie -> shift 1: [-1, 1];
        // next 1 -> 3 (slack 2); L=1,O=1,R=1 ok.
        assert_eq!(naive(2, &[0, 1, 1]), vec![-1, 1, 3]);
    }
}
