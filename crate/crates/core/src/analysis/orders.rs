use std::collections::BTreeMap;

use crate::dynamics::AtomEnsemble;

/// Population fraction in each momentum order n, i.e. in u ∈ [2n−1, 2n+1).
pub fn momentum_orders(e: &AtomEnsemble) -> BTreeMap<i64, f64> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &u in &e.momentum {
        *counts.entry(((u + 1.0) / 2.0).floor() as i64).or_default() += 1;
    }
    let total = e.momentum.len() as f64;
    counts.into_iter().map(|(order, c)| (order, c as f64 / total)).collect()
}
