//! Exhaustive enumeration of small ordered grounds.
//!
//! Everything here is brute force over labeled relation matrices, which is
//! comfortable at the sizes the lab sweeps (four points and under, giving at
//! most 2^12 candidate relations). Isomorphism reduction takes the minimum of
//! a packed matrix encoding over all relabelings.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::mask;
use crate::order::{FinitePoset, OrderMode};
use crate::Subset;

/// Largest ground size the exhaustive sweeps accept.
pub const MAX_ENUM: usize = 4;

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn is_transitive(up: &[Subset]) -> bool {
    (0..up.len()).all(|i| {
        mask::iter(up[i]).all(|j| up[j] & !up[i] == 0)
    })
}

fn is_antisymmetric(up: &[Subset]) -> bool {
    (0..up.len()).all(|i| {
        mask::iter(up[i]).all(|j| j == i || !mask::contains(up[j], i))
    })
}

fn sweep(n: usize, require_antisym: bool) -> Vec<FinitePoset> {
    assert!(n <= MAX_ENUM, "enumeration is capped at {MAX_ENUM} points");
    if n == 0 {
        return vec![FinitePoset::discrete(0)];
    }
    let off_diag = n * n - n;
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << off_diag) {
        let mut up = vec![0u64; n];
        let mut k = 0;
        for i in 0..n {
            up[i] |= mask::singleton(i);
            for j in 0..n {
                if i != j {
                    if bits >> k & 1 == 1 {
                        up[i] |= mask::singleton(j);
                    }
                    k += 1;
                }
            }
        }
        if !is_transitive(&up) {
            continue;
        }
        if require_antisym && !is_antisymmetric(&up) {
            continue;
        }
        let mode = if require_antisym { OrderMode::Partial } else { OrderMode::Preorder };
        out.push(FinitePoset::from_up_masks(default_labels(n), up, mode));
    }
    out
}

/// All labeled partial orders on `n` points.
pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    sweep(n, true)
}

/// All labeled preorders on `n` points. Through the specialization
/// correspondence these are exactly the topologies on `n` points.
pub fn all_preorders(n: usize) -> Vec<FinitePoset> {
    sweep(n, false)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..n {
            let mut perm = rest.clone();
            perm.insert(slot, n - 1);
            out.push(perm);
        }
    }
    out
}

/// Packed relation matrix with bit `i * n + j` set when `p_i <= p_j`.
pub fn encode(p: &FinitePoset) -> u32 {
    let n = p.n();
    let mut code = 0u32;
    for i in 0..n {
        for j in mask::iter(p.up_mask(i)) {
            code |= 1 << (i * n + j);
        }
    }
    code
}

fn canonical_code(p: &FinitePoset) -> u32 {
    let n = p.n();
    let mut best = u32::MAX;
    for perm in permutations(n) {
        let mut code = 0u32;
        for i in 0..n {
            for j in mask::iter(p.up_mask(i)) {
                code |= 1 << (perm[i] * n + perm[j]);
            }
        }
        best = best.min(code);
    }
    best
}

fn reduce(all: Vec<FinitePoset>) -> Vec<FinitePoset> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for p in all {
        if seen.insert(canonical_code(&p)) {
            out.push(p);
        }
    }
    out
}

/// One representative per isomorphism class of partial orders on `n` points.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    reduce(all_posets(n))
}

/// One representative per isomorphism class of preorders on `n` points.
pub fn preorders_up_to_iso(n: usize) -> Vec<FinitePoset> {
    reduce(all_preorders(n))
}

/// Deterministic selection of `count` distinct indices below `len`.
pub fn seeded_indices(len: usize, count: usize, seed: u64) -> Vec<usize> {
    if count >= len {
        return (0..len).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, len, count).into_vec();
    picked.sort_unstable();
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts_match_the_classical_tallies() {
        assert_eq!(all_posets(1).len(), 1);
        assert_eq!(all_posets(2).len(), 3);
        assert_eq!(all_posets(3).len(), 19);
        assert_eq!(all_posets(4).len(), 219);
        assert_eq!(all_preorders(2).len(), 4);
        assert_eq!(all_preorders(3).len(), 29);
        assert_eq!(all_preorders(4).len(), 355);
    }

    #[test]
    fn iso_counts_match_the_classical_tallies() {
        assert_eq!(posets_up_to_iso(1).len(), 1);
        assert_eq!(posets_up_to_iso(2).len(), 2);
        assert_eq!(posets_up_to_iso(3).len(), 5);
        assert_eq!(posets_up_to_iso(4).len(), 16);
        assert_eq!(preorders_up_to_iso(3).len(), 9);
        assert_eq!(preorders_up_to_iso(4).len(), 33);
    }

    #[test]
    fn every_enumerated_relation_is_well_formed() {
        for p in all_preorders(3) {
            for i in 0..3 {
                assert!(p.leq(i, i));
                for j in mask::iter(p.up_mask(i)) {
                    assert!(p.up_mask(j) & !p.up_mask(i) == 0);
                }
            }
        }
        for p in all_posets(3) {
            for i in 0..3 {
                for j in 0..3 {
                    if p.leq(i, j) && p.leq(j, i) {
                        assert_eq!(i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn seeded_selection_is_deterministic_and_in_range() {
        let a = seeded_indices(100, 7, 42);
        let b = seeded_indices(100, 7, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 7);
        assert!(a.iter().all(|&i| i < 100));
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seeded_indices(5, 9, 1), vec![0, 1, 2, 3, 4]);
    }
}
