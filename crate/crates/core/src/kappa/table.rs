//! Reference values of kappa(N), shipped as a data file.

use std::collections::BTreeMap;
use std::sync::OnceLock;

const RAW: &str = include_str!("table1.txt");

/// All tabulated (N, kappa(N)) pairs.
pub fn table1() -> &'static BTreeMap<u64, u64> {
    static T: OnceLock<BTreeMap<u64, u64>> = OnceLock::new();
    T.get_or_init(|| {
        RAW.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let mut it = l.split_whitespace().map(|t| t.parse::<u64>().expect("table entry"));
                (it.next().expect("N"), it.next().expect("kappa"))
            })
            .collect()
    })
}

pub fn table1_value(n: u64) -> Option<u64> {
    table1().get(&n).copied()
}
