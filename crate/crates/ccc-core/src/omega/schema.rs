//! Finite descriptions of subsets and nets over a ground set of the form
//! F ⊎ ℕ, where F is a finite block and ℕ is one countable chain.
//!
//! A `SchemaSet` holds a mask over F, an explicit finite list of chain
//! indices, and an optional tail threshold standing for every index from
//! that point on. Normalization keeps explicit entries strictly below the
//! tail and absorbs entries adjacent to it, so structural equality is set
//! equality.

use crate::mask;
use crate::Subset;

/// A point of the ground set: a finite-block element or a chain element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Point {
    Fin(usize),
    Chain(u64),
}

/// Finitely described subset of F ⊎ ℕ.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SchemaSet {
    pub fin: Subset,
    pub chain: Vec<u64>,
    pub tail: Option<u64>,
}

impl SchemaSet {
    pub fn new(fin: Subset, chain: Vec<u64>, tail: Option<u64>) -> Self {
        let mut s = SchemaSet { fin, chain, tail };
        s.normalize();
        s
    }

    pub fn empty() -> Self {
        SchemaSet { fin: 0, chain: Vec::new(), tail: None }
    }

    pub fn fins(fin: Subset) -> Self {
        SchemaSet { fin, chain: Vec::new(), tail: None }
    }

    /// The whole ground set over `n_fin` finite points.
    pub fn whole(n_fin: usize) -> Self {
        SchemaSet { fin: mask::full(n_fin), chain: Vec::new(), tail: Some(0) }
    }

    pub fn point(p: Point) -> Self {
        match p {
            Point::Fin(i) => SchemaSet::fins(mask::singleton(i)),
            Point::Chain(j) => SchemaSet { fin: 0, chain: vec![j], tail: None },
        }
    }

    fn normalize(&mut self) {
        self.chain.sort_unstable();
        self.chain.dedup();
        if let Some(mut t) = self.tail {
            self.chain.retain(|&j| j < t);
            while t > 0 && self.chain.last() == Some(&(t - 1)) {
                self.chain.pop();
                t -= 1;
            }
            self.tail = Some(t);
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Fin(i) => mask::contains(self.fin, i),
            Point::Chain(j) => {
                self.chain.binary_search(&j).is_ok() || self.tail.is_some_and(|t| j >= t)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.fin == 0 && self.chain.is_empty() && self.tail.is_none()
    }

    /// True when the chain part is infinite.
    pub fn is_tailed(&self) -> bool {
        self.tail.is_some()
    }

    pub fn intersect(&self, other: &SchemaSet) -> SchemaSet {
        let fin = self.fin & other.fin;
        let chain: Vec<u64> = self
            .chain
            .iter()
            .copied()
            .filter(|&j| other.contains(Point::Chain(j)))
            .chain(other.chain.iter().copied().filter(|&j| self.contains(Point::Chain(j))))
            .collect();
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        SchemaSet::new(fin, chain, tail)
    }

    /// Both sets must be normalized, which `new` guarantees.
    pub fn is_subset(&self, other: &SchemaSet) -> bool {
        if !mask::is_subset(self.fin, other.fin) {
            return false;
        }
        match self.tail {
            Some(t) => {
                if !other.tail.is_some_and(|u| u <= t) {
                    return false;
                }
            }
            None => {}
        }
        self.chain.iter().all(|&j| other.contains(Point::Chain(j)))
    }

    pub fn union(&self, other: &SchemaSet) -> SchemaSet {
        let mut chain = self.chain.clone();
        chain.extend_from_slice(&other.chain);
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (t, None) | (None, t) => t,
        };
        SchemaSet::new(self.fin | other.fin, chain, tail)
    }

    /// Largest numeric parameter mentioned, used to size stabilization sweeps.
    pub fn max_param(&self) -> u64 {
        let c = self.chain.last().copied().unwrap_or(0);
        c.max(self.tail.unwrap_or(0))
    }

    /// Representative points: every finite-block member, every explicit chain
    /// entry, and one generic tail element beyond `bound` when tailed.
    pub fn reps(&self, n_fin: usize, bound: u64) -> Vec<Point> {
        let mut out: Vec<Point> =
            mask::iter(self.fin).filter(|&i| i < n_fin).map(Point::Fin).collect();
        out.extend(self.chain.iter().map(|&j| Point::Chain(j)));
        if let Some(t) = self.tail {
            out.push(Point::Chain(t.max(bound) + 1));
        }
        out
    }
}

/// One residue class of a schematic net: a constant value or a strictly
/// increasing ride up the chain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NetStep {
    At(Point),
    Ramp { mul: u64, add: u64 },
}

/// Total net ℕ → F ⊎ ℕ given by cycling through `steps`; index i uses
/// `steps[i % steps.len()]`, and a ramp step maps i to chain point
/// mul·i + add.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemaNet {
    pub steps: Vec<NetStep>,
}

impl SchemaNet {
    pub fn new(steps: Vec<NetStep>) -> Self {
        assert!(!steps.is_empty(), "a net needs at least one residue class");
        for s in &steps {
            if let NetStep::Ramp { mul, .. } = s {
                assert!(*mul >= 1, "ramps must be strictly increasing");
            }
        }
        SchemaNet { steps }
    }

    pub fn constant(p: Point) -> Self {
        SchemaNet::new(vec![NetStep::At(p)])
    }

    /// The identity ride up the chain.
    pub fn chain_ride() -> Self {
        SchemaNet::new(vec![NetStep::Ramp { mul: 1, add: 0 }])
    }

    pub fn value(&self, i: u64) -> Point {
        match self.steps[(i % self.steps.len() as u64) as usize] {
            NetStep::At(p) => p,
            NetStep::Ramp { mul, add } => Point::Chain(mul * i + add),
        }
    }

    /// Decides whether the net is eventually inside `u`. A constant residue
    /// must sit in `u`; a ramp visits unboundedly large chain points, so it
    /// is eventually inside exactly the tailed sets.
    pub fn eventually_in(&self, u: &SchemaSet) -> bool {
        self.steps.iter().all(|s| match s {
            NetStep::At(p) => u.contains(*p),
            NetStep::Ramp { .. } => u.is_tailed(),
        })
    }

    pub fn max_param(&self) -> u64 {
        self.steps
            .iter()
            .map(|s| match s {
                NetStep::At(Point::Chain(j)) => *j,
                NetStep::At(Point::Fin(_)) => 0,
                NetStep::Ramp { mul, add } => mul + add,
            })
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_absorbs_entries_adjacent_to_the_tail() {
        let a = SchemaSet::new(0, vec![3, 4, 7], Some(5));
        assert!(a.chain.is_empty());
        assert_eq!(a.tail, Some(3));
        let b = SchemaSet::new(0, vec![0, 1, 2], Some(3));
        assert_eq!(b.tail, Some(0));
        assert!(b.chain.is_empty());
    }

    #[test]
    fn membership_covers_explicit_and_tail_parts() {
        let s = SchemaSet::new(0b01, vec![2], Some(10));
        assert!(s.contains(Point::Fin(0)));
        assert!(!s.contains(Point::Fin(1)));
        assert!(s.contains(Point::Chain(2)));
        assert!(!s.contains(Point::Chain(3)));
        assert!(s.contains(Point::Chain(123456)));
    }

    #[test]
    fn intersection_against_membership_oracle() {
        let a = SchemaSet::new(0b11, vec![1, 4], Some(8));
        let b = SchemaSet::new(0b10, vec![4, 5], Some(6));
        let c = a.intersect(&b);
        for j in 0..20 {
            assert_eq!(
                c.contains(Point::Chain(j)),
                a.contains(Point::Chain(j)) && b.contains(Point::Chain(j)),
                "chain {j}"
            );
        }
        assert_eq!(c.fin, 0b10);
    }

    #[test]
    fn union_against_membership_oracle() {
        let a = SchemaSet::new(0b01, vec![1], Some(9));
        let b = SchemaSet::new(0b10, vec![4, 8], None);
        let c = a.union(&b);
        for j in 0..15 {
            assert_eq!(
                c.contains(Point::Chain(j)),
                a.contains(Point::Chain(j)) || b.contains(Point::Chain(j)),
                "chain {j}"
            );
        }
        assert_eq!(c.fin, 0b11);
    }

    #[test]
    fn subset_checks_respect_tails() {
        let small = SchemaSet::new(0, vec![], Some(7));
        let big = SchemaSet::new(0, vec![], Some(3));
        assert!(small.is_subset(&big));
        assert!(!big.is_subset(&small));
        let finite = SchemaSet::new(0, vec![3, 4], None);
        assert!(finite.is_subset(&big));
        assert!(!small.is_subset(&finite));
    }

    #[test]
    fn nets_step_and_decide_eventual_membership() {
        let net = SchemaNet::new(vec![
            NetStep::At(Point::Fin(0)),
            NetStep::Ramp { mul: 2, add: 0 },
        ]);
        assert_eq!(net.value(0), Point::Fin(0));
        assert_eq!(net.value(3), Point::Chain(6));
        let tailed = SchemaSet::new(0b01, vec![], Some(100));
        assert!(net.eventually_in(&tailed));
        let untailed = SchemaSet::new(0b01, (0..50).collect(), None);
        assert!(!net.eventually_in(&untailed));
        let wrong_fin = SchemaSet::new(0b10, vec![], Some(0));
        assert!(!net.eventually_in(&wrong_fin));
    }
}
