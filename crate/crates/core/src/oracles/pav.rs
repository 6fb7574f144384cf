use crate::error::Result;
use crate::model::{total_cost, Configuration, ProblemInstance};
use crate::scalar::Scalar;

use super::OracleResult;

/// Solves the instance as L1 isotonic regression.
///
/// Order is preserved at some optimum, so with `z_i = initial[i] - i*delta`
/// a configuration `x_i = y_i + i*delta` is independent iff `y` is
/// non-decreasing, and its cost is `sum |y_i - z_i|`. Pool-adjacent-violators
/// with block (lower) medians finds an optimal `y`.
pub fn pav_isotonic_solve<T: Scalar>(inst: &ProblemInstance<T>) -> Result<OracleResult<T>> {
    let delta = inst.delta;
    let mut z = Vec::with_capacity(inst.len());
    for (i, &p) in inst.initial.iter().enumerate() {
        z.push(p.sub_exact(T::index_offset(i, delta)?)?);
    }

    // Each block keeps its values sorted; its fitted value is the lower median.
    let mut blocks: Vec<Vec<T>> = Vec::new();
    for &v in &z {
        let mut block = vec![v];
        while let Some(prev) = blocks.last() {
            if lower_median(prev) <= lower_median(&block) {
                break;
            }
            let prev = blocks.pop().expect("checked above");
            block = merge_sorted(prev, block);
        }
        blocks.push(block);
    }

    let mut positions = Vec::with_capacity(inst.len());
    for block in &blocks {
        let m = lower_median(block);
        for _ in 0..block.len() {
            let i = positions.len();
            positions.push(m.add_exact(T::index_offset(i, delta)?)?);
        }
    }
    let witness = Configuration::new(positions);
    Ok(OracleResult { best_cost: total_cost(inst, &witness)?, witness, all_optima: None })
}

fn lower_median<T: Copy>(sorted: &[T]) -> T {
    sorted[(sorted.len() - 1) / 2]
}

fn merge_sorted<T: Ord + Copy>(a: Vec<T>, b: Vec<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
