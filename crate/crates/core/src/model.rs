use crate::decimal::{format_scaled, parse_scalar, ScaledInt};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Points on a line together with the required separation.
///
/// `initial` is sorted non-decreasingly; `perm[i]` is the position in the
/// caller's original input of the point stored at sorted index `i`.
/// `digits` records the decimal scale (units of `10^-digits`) when the
/// instance came from decimal text, and is 0 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance<T> {
    pub delta: T,
    pub initial: Vec<T>,
    pub perm: Vec<usize>,
    pub digits: u32,
}

impl<T: Scalar> ProblemInstance<T> {
    /// Builds an instance from positions in arbitrary order.
    ///
    /// Equal positions keep their input order.
    pub fn new(delta: T, positions: Vec<T>) -> Result<Self> {
        if delta <= T::zero() {
            return Err(Error::NonPositiveDelta);
        }
        let mut perm: Vec<usize> = (0..positions.len()).collect();
        perm.sort_by_key(|&i| positions[i]);
        let initial = perm.iter().map(|&i| positions[i]).collect();
        Ok(Self { delta, initial, perm, digits: 0 })
    }

    /// Builds an instance from already sorted positions (identity permutation).
    pub fn from_sorted(delta: T, initial: Vec<T>) -> Result<Self> {
        if delta <= T::zero() {
            return Err(Error::NonPositiveDelta);
        }
        if let Some(i) = initial.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Unsorted(i + 1));
        }
        let perm = (0..initial.len()).collect();
        Ok(Self { delta, initial, perm, digits: 0 })
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn len(&self) -> usize {
        self.initial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_empty()
    }

    /// The instance's own starting placement as a configuration.
    pub fn identity(&self) -> Configuration<T> {
        Configuration::new(self.initial.clone())
    }

    /// Reorders a sorted-index sequence back into original input order.
    pub fn to_input_order<U: Clone>(&self, sorted: &[U]) -> Vec<U> {
        let mut out: Vec<Option<U>> = vec![None; sorted.len()];
        for (k, &orig) in self.perm.iter().enumerate() {
            out[orig] = Some(sorted[k].clone());
        }
        out.into_iter().map(|v| v.expect("perm is a permutation")).collect()
    }
}

impl ProblemInstance<i128> {
    /// Renders a value of this instance as a decimal string.
    pub fn format(&self, value: i128) -> String {
        format_scaled(value, self.digits)
    }
}

/// Parses decimal literals onto one shared scale and sorts them.
pub fn normalize_instance<S: AsRef<str>>(raw: &[S], delta: &str) -> Result<ProblemInstance<i128>> {
    let delta = parse_scalar(delta)?;
    let parsed = raw
        .iter()
        .map(|s| parse_scalar(s.as_ref()))
        .collect::<Result<Vec<ScaledInt>>>()?;
    let digits = parsed.iter().map(|p| p.digits).chain([delta.digits]).max().unwrap_or(0);
    let delta = delta.at_digits(digits)?;
    let positions = parsed
        .into_iter()
        .map(|p| p.at_digits(digits))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProblemInstance::new(delta, positions)?.with_digits(digits))
}

/// A placement of every point, indexed like [`ProblemInstance::initial`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration<T> {
    pub positions: Vec<T>,
}

impl<T: Scalar> Configuration<T> {
    pub fn new(positions: Vec<T>) -> Self {
        Self { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// First index `i` with `positions[i + 1] - positions[i] < delta`, if any.
    pub fn first_violation(&self, delta: T) -> Result<Option<usize>> {
        for (i, w) in self.positions.windows(2).enumerate() {
            if w[1].sub_exact(w[0])? < delta {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_independent(&self, delta: T) -> Result<bool> {
        Ok(self.first_violation(delta)?.is_none())
    }

    /// True when `self[i] <= other[i]` at every index.
    pub fn pointwise_le(&self, other: &Self) -> bool {
        self.len() == other.len() && self.positions.iter().zip(&other.positions).all(|(a, b)| a <= b)
    }
}

/// Exact `sum |cfg[i] - initial[i]|`.
pub fn total_cost<T: Scalar>(inst: &ProblemInstance<T>, cfg: &Configuration<T>) -> Result<T> {
    if cfg.len() != inst.len() {
        return Err(Error::LengthMismatch { expected: inst.len(), got: cfg.len() });
    }
    cfg.positions
        .iter()
        .zip(&inst.initial)
        .try_fold(T::zero(), |acc, (&p, &q)| acc.add_exact(p.sub_exact(q)?.abs_exact()?))
}
