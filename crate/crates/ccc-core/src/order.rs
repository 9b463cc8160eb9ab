//! Finite posets and preorders over a labelled ground set.
//!
//! The relation is stored as one up-set mask per element, so order tests,
//! up/down closures, cuts and directedness are all mask arithmetic. A
//! poset built in partial mode is guaranteed antisymmetric; preorder mode
//! admits equivalent elements and is what specialization preorders of
//! non-T0 spaces produce.

use crate::{mask, Subset};
use thiserror::Error;

/// Hard bound on ground-set size so every subset fits in a mask and the
/// `2^n` sweeps used elsewhere stay small.
pub const MAX_GROUND: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("antisymmetry violated: {0:?} and {1:?} are order-equivalent")]
    NotAntisymmetric(String, String),
    #[error("ground set has {got} elements, limit is {limit}")]
    TooLarge { got: usize, limit: usize },
}

/// Whether antisymmetry is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    Partial,
    Preorder,
}

/// A reflexive transitive relation on `labels`, antisymmetric in
/// [`OrderMode::Partial`] mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `up[i]` is the mask of `j` with `i <= j`.
    up: Vec<Subset>,
    mode: OrderMode,
}

impl FinitePoset {
    /// Builds the reflexive transitive closure of `pairs` (given as
    /// `(below, above)` label pairs) and checks antisymmetry in partial mode.
    pub fn build(
        labels: &[&str],
        pairs: &[(&str, &str)],
        mode: OrderMode,
    ) -> Result<Self, OrderError> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        if labels.len() > MAX_GROUND {
            return Err(OrderError::TooLarge {
                got: labels.len(),
                limit: MAX_GROUND,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        let index = |l: &str| -> Result<usize, OrderError> {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| OrderError::UnknownLabel(l.to_string()))
        };
        let n = labels.len();
        let mut up: Vec<Subset> = (0..n).map(mask::singleton).collect();
        for (a, b) in pairs {
            let (i, j) = (index(a)?, index(b)?);
            up[i] |= mask::singleton(j);
        }
        // Transitive closure by repeated squaring of the reachability step.
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut acc = up[i];
                for j in mask::iter(up[i]) {
                    acc |= up[j];
                }
                if acc != up[i] {
                    up[i] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let poset = FinitePoset { labels, up, mode };
        if mode == OrderMode::Partial {
            if let Some((i, j)) = poset.equivalent_pair() {
                return Err(OrderError::NotAntisymmetric(
                    poset.labels[i].clone(),
                    poset.labels[j].clone(),
                ));
            }
        }
        Ok(poset)
    }

    /// Builds directly from up-set masks; masks must already be reflexive
    /// and transitive (debug-asserted).
    pub fn from_up_masks(labels: Vec<String>, up: Vec<Subset>, mode: OrderMode) -> Self {
        debug_assert_eq!(labels.len(), up.len());
        #[cfg(debug_assertions)]
        for i in 0..up.len() {
            debug_assert!(mask::contains(up[i], i));
            for j in mask::iter(up[i]) {
                debug_assert!(mask::is_subset(up[j], up[i]));
            }
        }
        FinitePoset { labels, up, mode }
    }

    /// Antichain on `n` fresh labels.
    pub fn discrete(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        FinitePoset {
            labels,
            up: (0..n).map(mask::singleton).collect(),
            mode: OrderMode::Partial,
        }
    }

    /// Chain `p0 < p1 < ... < p{n-1}`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let up = (0..n).map(|i| mask::full(n) & !mask::full(i)).collect();
        FinitePoset {
            labels,
            up,
            mode: OrderMode::Partial,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn mode(&self) -> OrderMode {
        self.mode
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        mask::contains(self.up[i], j)
    }

    pub fn up_mask(&self, i: usize) -> Subset {
        self.up[i]
    }

    pub fn down_mask(&self, i: usize) -> Subset {
        let mut m = 0;
        for j in 0..self.n() {
            if self.leq(j, i) {
                m |= mask::singleton(j);
            }
        }
        m
    }

    /// Up-closure of a subset.
    pub fn up_set(&self, s: Subset) -> Subset {
        mask::iter(s).fold(0, |acc, i| acc | self.up[i])
    }

    /// Down-closure of a subset.
    pub fn down_set(&self, s: Subset) -> Subset {
        mask::iter(s).fold(0, |acc, i| acc | self.down_mask(i))
    }

    /// Upper bounds of `s` in the whole poset; the full mask when `s` is empty.
    pub fn upper_bounds(&self, s: Subset) -> Subset {
        mask::iter(s).fold(mask::full(self.n()), |acc, i| acc & self.up[i])
    }

    /// Lower bounds of `s` in the whole poset; the full mask when `s` is empty.
    pub fn lower_bounds(&self, s: Subset) -> Subset {
        mask::iter(s).fold(mask::full(self.n()), |acc, i| acc & self.down_mask(i))
    }

    /// The cut: common lower bounds of the common upper bounds.
    pub fn cut(&self, s: Subset) -> Subset {
        self.lower_bounds(self.upper_bounds(s))
    }

    /// True iff `s` is nonempty and every pair in `s` has an upper bound in `s`.
    pub fn is_directed(&self, s: Subset) -> bool {
        if s == 0 {
            return false;
        }
        for i in mask::iter(s) {
            for j in mask::iter(s) {
                if j < i {
                    continue;
                }
                if self.up[i] & self.up[j] & s == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `s` is nonempty and totally ordered.
    pub fn is_chain_subset(&self, s: Subset) -> bool {
        if s == 0 {
            return false;
        }
        for i in mask::iter(s) {
            for j in mask::iter(s) {
                if !self.leq(i, j) && !self.leq(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `s` is nonempty and all its elements are order-equivalent.
    pub fn is_equivalence_clique(&self, s: Subset) -> bool {
        if s == 0 {
            return false;
        }
        for i in mask::iter(s) {
            for j in mask::iter(s) {
                if !self.leq(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Least element of the upper-bound set of `s`, if one exists. In
    /// preorder mode an equivalence class of least upper bounds is
    /// represented by its smallest index.
    pub fn sup(&self, s: Subset) -> Option<usize> {
        let ubs = self.upper_bounds(s);
        mask::iter(ubs).find(|&u| mask::is_subset(ubs, self.up[u]))
    }

    /// Elements of `s` above every element of `s`.
    pub fn maxima_of(&self, s: Subset) -> Subset {
        let mut m = 0;
        for i in mask::iter(s) {
            if mask::iter(s).all(|j| self.leq(j, i)) {
                m |= mask::singleton(i);
            }
        }
        m
    }

    /// All directed subsets, ascending by mask.
    pub fn directed_subsets(&self) -> Vec<Subset> {
        (1..=mask::full(self.n()))
            .filter(|&s| self.is_directed(s))
            .collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.equivalent_pair().is_none()
    }

    fn equivalent_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.leq(i, j) && self.leq(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Cover pairs `(i, j)` of the transitive reduction; partial mode only.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between = (0..self.n())
                    .any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All order-preserving maps from `self` to `q`, as value tables,
    /// lexicographically ascending.
    pub fn monotone_maps(&self, q: &FinitePoset) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut table = vec![0usize; self.n()];
        self.monotone_rec(q, &mut table, 0, &mut out);
        out
    }

    fn monotone_rec(
        &self,
        q: &FinitePoset,
        table: &mut Vec<usize>,
        at: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == self.n() {
            out.push(table.clone());
            return;
        }
        'next: for v in 0..q.n() {
            for earlier in 0..at {
                if self.leq(earlier, at) && !q.leq(table[earlier], v) {
                    continue 'next;
                }
                if self.leq(at, earlier) && !q.leq(v, table[earlier]) {
                    continue 'next;
                }
            }
            table[at] = v;
            self.monotone_rec(q, table, at + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask;

    fn diamond() -> FinitePoset {
        FinitePoset::build(
            &["bot", "l", "r", "top"],
            &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
            OrderMode::Partial,
        )
        .unwrap()
    }

    #[test]
    fn closure_is_transitive_and_reflexive() {
        let p = FinitePoset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")], OrderMode::Partial)
            .unwrap();
        assert!(p.leq(0, 2));
        assert!(p.leq(1, 1));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn antisymmetry_rejected_in_partial_mode() {
        let err = FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")], OrderMode::Partial)
            .unwrap_err();
        assert_eq!(
            err,
            OrderError::NotAntisymmetric("a".into(), "b".into())
        );
        let pre =
            FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")], OrderMode::Preorder)
                .unwrap();
        assert!(!pre.is_antisymmetric());
    }

    #[test]
    fn cut_of_two_incomparable_points_in_diamond() {
        let p = diamond();
        let lr = mask::singleton(1) | mask::singleton(2);
        // Upper bounds of {l, r} = {top}; lower bounds of {top} = everything.
        assert_eq!(p.upper_bounds(lr), mask::singleton(3));
        assert_eq!(p.cut(lr), mask::full(4));
    }

    #[test]
    fn cut_contains_down_set_and_is_monotone() {
        let p = diamond();
        for s in 1..mask::full(4) {
            assert!(mask::is_subset(p.down_set(s), p.cut(s)));
            for t in s..=mask::full(4) {
                if mask::is_subset(s, t) {
                    assert!(mask::is_subset(p.cut(s), p.cut(t)));
                }
            }
        }
    }

    #[test]
    fn cut_of_singleton_is_down_set() {
        let p = diamond();
        for i in 0..4 {
            let s = mask::singleton(i);
            assert_eq!(p.cut(s), p.down_mask(i));
        }
    }

    #[test]
    fn directedness() {
        let p = diamond();
        assert!(!p.is_directed(0));
        assert!(p.is_directed(mask::singleton(1)));
        // {l, r} has upper bound top, but not inside the set.
        assert!(!p.is_directed(mask::singleton(1) | mask::singleton(2)));
        assert!(p.is_directed(mask::singleton(1) | mask::singleton(2) | mask::singleton(3)));
        // Every nonempty subset of a chain is directed.
        let c = FinitePoset::chain(4);
        for s in 1..=mask::full(4) {
            assert!(c.is_directed(s));
            assert!(c.is_chain_subset(s));
        }
    }

    #[test]
    fn sup_and_maxima() {
        let p = diamond();
        assert_eq!(p.sup(mask::singleton(1) | mask::singleton(2)), Some(3));
        assert_eq!(p.sup(mask::singleton(0)), Some(0));
        assert_eq!(p.maxima_of(mask::full(4)), mask::singleton(3));
        let two = FinitePoset::discrete(2);
        assert_eq!(two.sup(mask::full(2)), None);
    }

    #[test]
    fn monotone_map_counts_match_brute_force() {
        let c3 = FinitePoset::chain(3);
        let maps = c3.monotone_maps(&c3);
        // Weakly increasing maps from a 3-chain to a 3-chain: C(5, 2) = 10.
        assert_eq!(maps.len(), 10);
        for f in &maps {
            for i in 0..3 {
                for j in 0..3 {
                    if c3.leq(i, j) {
                        assert!(c3.leq(f[i], f[j]));
                    }
                }
            }
        }
        let v = FinitePoset::build(
            &["a", "b", "c"],
            &[("a", "c"), ("b", "c")],
            OrderMode::Partial,
        )
        .unwrap();
        let brute = (0..27)
            .map(|k| vec![k / 9 % 3, k / 3 % 3, k % 3])
            .filter(|f: &Vec<usize>| {
                (0..3).all(|i| (0..3).all(|j| !v.leq(i, j) || v.leq(f[i], f[j])))
            })
            .count();
        assert_eq!(v.monotone_maps(&v).len(), brute);
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let p = diamond();
        let mut cov = p.covers();
        cov.sort();
        assert_eq!(cov, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn equivalence_clique_detection() {
        let pre = FinitePoset::build(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "a"), ("b", "c")],
            OrderMode::Preorder,
        )
        .unwrap();
        assert!(pre.is_equivalence_clique(mask::singleton(0) | mask::singleton(1)));
        assert!(!pre.is_equivalence_clique(mask::singleton(1) | mask::singleton(2)));
    }
}
