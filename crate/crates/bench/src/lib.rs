//! Host sets shared by the benchmarks under `benches/`.

use blockpath::rng::{sample_digraph, PairDistribution, SplitMix64};
use blockpath::{chromatic_number, Digraph, Mode};

/// The first `count` sampled oriented digraphs on `n_min..=n_max` vertices
/// with chromatic number at least `chi`.
pub fn hosts(count: usize, n_min: usize, n_max: usize, chi: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = sample_digraph(&mut rng, n_min, n_max, Mode::Oriented, PairDistribution::AbsentPerMille(40));
        if chromatic_number(&g).map(|c| c.chi >= chi).unwrap_or(false) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hosts_meet_the_threshold() {
        let hs = hosts(20, 6, 8, 5, 1);
        assert_eq!(hs.len(), 20);
        assert!(hs.iter().all(|g| chromatic_number(g).unwrap().chi >= 5));
        assert_eq!(hs, hosts(20, 6, 8, 5, 1));
    }
}
