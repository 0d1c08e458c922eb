#![allow(dead_code)]

use lsap_core::rng::SplitMix64;
use lsap_core::Instance;

/// Uniform real matrix in `[lo, hi)`.
pub fn random_instance(n: usize, seed: u64, lo: f64, hi: f64) -> Instance {
    let mut rng = SplitMix64::new(seed);
    let vals = (0..n * n)
        .map(|_| lo + rng.next_unit() * (hi - lo))
        .collect();
    Instance::new(n, vals).unwrap()
}

/// Integer-valued matrix with entries in `0..=max`.
pub fn random_integer_instance(n: usize, seed: u64, max: u64) -> Instance {
    use rand::RngCore;
    let mut rng = SplitMix64::new(seed);
    let vals = (0..n * n)
        .map(|_| (rng.next_u64() % (max + 1)) as f64)
        .collect();
    Instance::new(n, vals).unwrap()
}

/// All permutations of `0..n` by recursive insertion.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Optimum by enumeration, summing benefits directly from the matrix.
pub fn enumerate_optimum(inst: &Instance) -> f64 {
    permutations(inst.n())
        .iter()
        .map(|sigma| {
            sigma
                .iter()
                .enumerate()
                .map(|(j, &i)| inst.benefit(i, j))
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma
        .iter()
        .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
}
