//! Chain decomposition and the exact invariant checks run against every
//! solver output.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{Configuration, ProblemInstance};
use crate::scalar::Scalar;

/// A maximal run of points whose consecutive gaps are exactly delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainView {
    pub start: usize,
    /// Inclusive.
    pub end: usize,
    /// Points left of their initial position.
    pub cnt_l: usize,
    /// Points on their initial position.
    pub cnt_o: usize,
    /// Points right of their initial position.
    pub cnt_r: usize,
}

impl ChainView {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|L| + |O| > |R|`.
    pub fn property1(&self) -> bool {
        self.cnt_l + self.cnt_o > self.cnt_r
    }

    /// `|L| <= |O| + |R|`.
    pub fn property2(&self) -> bool {
        self.cnt_l <= self.cnt_o + self.cnt_r
    }
}

/// Splits an independent configuration into its maximal chains, left to right.
pub fn decompose_chains<T: Scalar>(inst: &ProblemInstance<T>, cfg: &Configuration<T>) -> Result<Vec<ChainView>> {
    decompose_parts(inst.delta, &inst.initial, &cfg.positions)
}

pub(crate) fn decompose_parts<T: Scalar>(delta: T, initial: &[T], positions: &[T]) -> Result<Vec<ChainView>> {
    if initial.len() != positions.len() {
        return Err(Error::LengthMismatch { expected: initial.len(), got: positions.len() });
    }
    let mut chains: Vec<ChainView> = Vec::new();
    for i in 0..positions.len() {
        let bonded = if i == 0 {
            false
        } else {
            let gap = positions[i].sub_exact(positions[i - 1])?;
            match gap.cmp(&delta) {
                Ordering::Less => return Err(Error::NotIndependent(i - 1)),
                Ordering::Equal => true,
                Ordering::Greater => false,
            }
        };
        if !bonded {
            chains.push(ChainView { start: i, end: i, cnt_l: 0, cnt_o: 0, cnt_r: 0 });
        }
        let chain = chains.last_mut().expect("chain pushed above");
        chain.end = i;
        match positions[i].cmp(&initial[i]) {
            Ordering::Less => chain.cnt_l += 1,
            Ordering::Equal => chain.cnt_o += 1,
            Ordering::Greater => chain.cnt_r += 1,
        }
    }
    Ok(chains)
}

/// Result of [`audit`]. Every flag is decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub independent: bool,
    /// Positions are non-decreasing, i.e. the sorted input order survives.
    pub order_preserved: bool,
    /// Per chain, `|L| + |O| > |R|`.
    pub prop1_ok: Vec<bool>,
    /// Per chain, `|L| <= |O| + |R|`.
    pub prop2_ok: Vec<bool>,
    /// Every prefix of every chain satisfies `|L| + |O| > |R|`.
    pub prefix_ok: bool,
    /// Every chain holds at least one point on its initial position.
    pub stationary_per_chain: bool,
    pub chains: Vec<ChainView>,
}

impl AuditReport {
    /// All checks passed.
    pub fn passed(&self) -> bool {
        self.independent
            && self.order_preserved
            && self.prop1_ok.iter().all(|&b| b)
            && self.prop2_ok.iter().all(|&b| b)
            && self.prefix_ok
            && self.stationary_per_chain
    }

    /// Human readable list of failed checks.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.independent {
            out.push("not independent".to_string());
        }
        if !self.order_preserved {
            out.push("input order not preserved".to_string());
        }
        for (k, c) in self.chains.iter().enumerate() {
            if !self.prop1_ok[k] {
                out.push(format!("chain [{}..{}] violates |L|+|O| > |R|", c.start, c.end));
            }
            if !self.prop2_ok[k] {
                out.push(format!("chain [{}..{}] violates |L| <= |O|+|R|", c.start, c.end));
            }
        }
        if !self.prefix_ok {
            out.push("a chain prefix violates |L|+|O| > |R|".to_string());
        }
        if !self.stationary_per_chain {
            out.push("a chain has no stationary point".to_string());
        }
        out
    }
}

/// Checks independence, order preservation and the per-chain count
/// properties of `cfg`. A dependent configuration skips the chain checks.
pub fn audit<T: Scalar>(inst: &ProblemInstance<T>, cfg: &Configuration<T>) -> AuditReport {
    audit_parts(inst.delta, &inst.initial, &cfg.positions)
}

pub(crate) fn audit_parts<T: Scalar>(delta: T, initial: &[T], positions: &[T]) -> AuditReport {
    let order_preserved = initial.len() == positions.len() && positions.windows(2).all(|w| w[0] <= w[1]);
    let chains = match decompose_parts(delta, initial, positions) {
        Ok(chains) => chains,
        Err(_) => {
            return AuditReport {
                independent: false,
                order_preserved,
                prop1_ok: Vec::new(),
                prop2_ok: Vec::new(),
                prefix_ok: false,
                stationary_per_chain: false,
                chains: Vec::new(),
            }
        }
    };
    let prefix_ok = chains.iter().all(|c| {
        let (mut lo, mut r) = (0usize, 0usize);
        (c.start..=c.end).all(|i| {
            if positions[i] > initial[i] {
                r += 1;
            } else {
                lo += 1;
            }
            lo > r
        })
    });
    AuditReport {
        independent: true,
        order_preserved,
        prop1_ok: chains.iter().map(ChainView::property1).collect(),
        prop2_ok: chains.iter().map(ChainView::property2).collect(),
        prefix_ok,
        stationary_per_chain: chains.iter().all(|c| c.cnt_o >= 1),
        chains,
    }
}
