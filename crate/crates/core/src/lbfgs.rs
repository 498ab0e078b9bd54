//! Correction-pair storage and the two-loop recursion.

use std::collections::VecDeque;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{axpy, dot};

/// One stored correction `(s, y)` with `rho = y's` cached at admission.
#[derive(Debug, Clone, PartialEq)]
pub struct UpdatePair {
    s: Vec<f64>,
    y: Vec<f64>,
    rho: f64,
}

impl UpdatePair {
    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Ring of at most `capacity` pairs, oldest first.
#[derive(Debug, Clone, Default)]
pub struct PairBuffer {
    capacity: usize,
    pairs: VecDeque<UpdatePair>,
}

impl PairBuffer {
    /// `usize::MAX` means unlimited memory.
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity,
            pairs: VecDeque::new(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &UpdatePair> {
        self.pairs.iter()
    }

    pub fn clear(&mut self) {
        self.pairs.clear();
    }

    /// Cautious admission: appends `(s, y)` iff `y's > c_s |s|^2`, evicting
    /// the oldest pair when full. Returns whether the pair was accepted.
    pub fn maybe_store(&mut self, s: &[f64], y: &[f64], c_s: f64) -> bool {
        debug_assert_eq!(s.len(), y.len());
        let rho = dot(y, s);
        if !(rho > c_s * dot(s, s)) {
            return false;
        }
        if self.capacity == 0 {
            return true;
        }
        if self.pairs.len() == self.capacity {
            self.pairs.pop_front();
        }
        self.pairs.push_back(UpdatePair {
            s: s.to_vec(),
            y: y.to_vec(),
            rho,
        });
        true
    }
}

/// Computes `d = -H g` where `H` is the inverse of the BFGS matrix obtained
/// by updating the seed with the stored pairs, oldest to newest.
///
/// `seed_solve` applies the inverse of the seed matrix, exactly or
/// approximately. With an empty buffer the result is `-seed_solve(g)`.
pub fn two_loop_direction<F>(g: &[f64], buf: &PairBuffer, mut seed_solve: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(buf.len());
    for pair in buf.iter().rev() {
        check_dim(g.len(), pair.s.len())?;
        if !(pair.rho > 0.0) {
            return Err(Error::Internal(format!(
                "stored pair has non-positive curvature {}",
                pair.rho
            )));
        }
        let a = dot(&pair.s, &q) / pair.rho;
        axpy(-a, &pair.y, &mut q);
        alphas.push(a);
    }

    let mut r = seed_solve(&q)?;
    check_dim(g.len(), r.len())?;

    for (pair, a) in buf.iter().zip(alphas.into_iter().rev()) {
        let b = dot(&pair.y, &r) / pair.rho;
        axpy(a - b, &pair.s, &mut r);
    }

    for v in &mut r {
        *v = -*v;
    }
    Ok(r)
}
