//! Well-conditioned basis selection: `kappa(B) <= coeff * (log2 max(N, 2))^power`.

use crate::simplex::{BasisSnapshot, MAX_ROWS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionPolicy {
    pub coeff: f64,
    pub power: f64,
}

impl Default for ConditionPolicy {
    fn default() -> Self {
        ConditionPolicy { coeff: 1.0, power: 3.0 }
    }
}

impl ConditionPolicy {
    pub fn threshold(&self, n: usize) -> f64 {
        self.coeff * (n.max(2) as f64).log2().powf(self.power)
    }

    pub fn accepts(&self, kappa: f64, n: usize) -> bool {
        kappa.is_finite() && kappa <= self.threshold(n)
    }
}

/// Marks and returns the snapshots whose basis passes the policy, with `N` the basis
/// dimension. Bases above the dense limit are rejected.
pub fn filter_wellconditioned(snapshots: &mut [BasisSnapshot], policy: &ConditionPolicy) -> Vec<BasisSnapshot> {
    let mut out = Vec::new();
    for s in snapshots.iter_mut() {
        let n = s.matrix.nrows();
        s.accepted = n <= MAX_ROWS && policy.accepts(s.kappa_b, n);
        if s.accepted {
            out.push(s.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_threshold_arithmetic() {
        let p = ConditionPolicy::default();
        assert_eq!(p.threshold(64), 216.0);
        assert!(!p.accepts(1e6, 64));
        assert!(p.accepts(1.0, 1));
        assert!(!p.accepts(f64::INFINITY, 64));
        assert!(filter_wellconditioned(&mut [], &p).is_empty());
    }
}
