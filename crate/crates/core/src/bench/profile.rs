//! Dolan-Moré performance profiles.

use crate::error::{Error, Result};

/// `rho_s(tau)` for one method as a right-continuous step function.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub method: String,
    /// `(tau, rho)` at every breakpoint, sorted by `tau`.
    pub points: Vec<(f64, f64)>,
}

impl ProfileCurve {
    /// Fraction of problems solved within a factor `tau` of the best method.
    pub fn rho_at(&self, tau: f64) -> f64 {
        self.points
            .iter()
            .take_while(|(t, _)| *t <= tau)
            .last()
            .map_or(0.0, |&(_, r)| r)
    }
}

/// Profiles for the metric matrix `t[p][s]` (problems by methods, smaller is
/// better, `inf` for failures).
///
/// Problems no method solved are dropped. Every curve is evaluated at all
/// distinct finite performance ratios.
pub fn performance_profile(t: &[Vec<f64>], methods: &[String]) -> Result<Vec<ProfileCurve>> {
    if t.is_empty() || methods.is_empty() {
        return Err(Error::InvalidInput("empty performance matrix".into()));
    }
    if let Some(row) = t.iter().find(|row| row.len() != methods.len()) {
        return Err(Error::DimensionMismatch {
            expected: methods.len(),
            found: row.len(),
        });
    }

    let mut ratios: Vec<Vec<f64>> = Vec::with_capacity(t.len());
    for (p, row) in t.iter().enumerate() {
        let best = row
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .fold(f64::INFINITY, f64::min);
        if !best.is_finite() {
            log::warn!("problem {p} was not solved by any method; dropped from the profile");
            continue;
        }
        ratios.push(
            row.iter()
                .map(|&v| {
                    if !v.is_finite() {
                        f64::INFINITY
                    } else if v == best {
                        1.0
                    } else {
                        v / best
                    }
                })
                .collect(),
        );
    }
    if ratios.is_empty() {
        return Err(Error::InvalidInput(
            "no problem was solved by any method".into(),
        ));
    }

    let mut taus: Vec<f64> = ratios
        .iter()
        .flatten()
        .copied()
        .filter(|r| r.is_finite())
        .collect();
    taus.sort_by(|a, b| a.total_cmp(b));
    taus.dedup();

    let n_problems = ratios.len() as f64;
    Ok(methods
        .iter()
        .enumerate()
        .map(|(s, name)| {
            let mut col: Vec<f64> = ratios.iter().map(|row| row[s]).collect();
            col.sort_by(|a, b| a.total_cmp(b));
            let points = taus
                .iter()
                .map(|&tau| {
                    let count = col.partition_point(|&r| r <= tau);
                    (tau, count as f64 / n_problems)
                })
                .collect();
            ProfileCurve {
                method: name.clone(),
                points,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("m{i}")).collect()
    }

    #[test]
    fn single_method() {
        let curves = performance_profile(&[vec![3.0], vec![7.0]], &names(1)).unwrap();
        assert_eq!(curves[0].points, vec![(1.0, 1.0)]);
        assert_eq!(curves[0].rho_at(1.0), 1.0);
        assert_eq!(curves[0].rho_at(100.0), 1.0);
    }

    #[test]
    fn two_by_two() {
        let t = vec![vec![1.0, 2.0], vec![2.0, 2.0]];
        let curves = performance_profile(&t, &names(2)).unwrap();
        assert_eq!(curves[0].points, vec![(1.0, 1.0), (2.0, 1.0)]);
        assert_eq!(curves[1].points, vec![(1.0, 0.5), (2.0, 1.0)]);
        assert_eq!(curves[1].rho_at(1.5), 0.5);
        assert_eq!(curves[1].rho_at(0.5), 0.0);
    }

    #[test]
    fn unsolved_method() {
        let curves = performance_profile(&[vec![1.0, f64::INFINITY]], &names(2)).unwrap();
        assert_eq!(curves[1].points, vec![(1.0, 0.0)]);
        assert_eq!(curves[1].rho_at(1e9), 0.0);
    }

    #[test]
    fn unsolved_problem_dropped() {
        let t = vec![vec![f64::INFINITY, f64::INFINITY], vec![1.0, 4.0]];
        let curves = performance_profile(&t, &names(2)).unwrap();
        assert_eq!(curves[1].points, vec![(1.0, 0.0), (4.0, 1.0)]);
    }

    #[test]
    fn empty_rejected() {
        assert!(performance_profile(&[], &names(1)).is_err());
        assert!(performance_profile(&[vec![f64::INFINITY]], &names(1)).is_err());
        assert!(performance_profile(&[vec![1.0, 2.0]], &names(1)).is_err());
    }
}
