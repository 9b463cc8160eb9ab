/*!
Exact models of topologies determined by convergence classes.

Everything here is computed, never approximated: finite posets and
topologies are explicit bit-mask structures, and the countable spaces
built from a finite part plus an ascending chain are handled by decision
procedures that exploit the uniform tail behaviour of their presentations.

The crate is organized bottom-up:

* [`order`]: finite posets and preorders, directed subsets, cuts, sups.
* [`topology`]: finite topologies, specialization, order topologies,
  products, final topologies.
* [`conv`]: convergence classes on finite ground sets, the topology a
  class determines, the six class operators and their coreflections,
  and transfinite closure under a class.
* [`enumerate`]: exhaustive, isomorphism-reduced enumeration of small
  posets and spaces, plus seeded sampling.
* [`omega`]: countable spaces presented as a finite part glued to an
  omega-chain; schematic sets and nets; exact openness, convergence and
  coreflection oracles; order topologies on such presentations.
* [`category`]: hom-sets, pointwise function spaces, tensor and
  exponential constructions, and checkable categorical laws.
* [`cspace`]: eventual lower bounds, the net class they induce, and the
  interior-of-upset space property that decides when that class is
  topological.
*/

pub mod category;
pub mod conv;
pub mod cspace;
pub mod enumerate;
pub mod omega;
pub mod order;
pub mod topology;

/// Membership mask over a ground set: bit `i` set means element `i` is in.
pub type Subset = u64;

/// Mask helpers shared by every module that works over a finite ground set.
pub mod mask {
    use super::Subset;

    /// Mask with the low `n` bits set.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 63);
        (1u64 << n) - 1
    }

    pub fn singleton(i: usize) -> Subset {
        1u64 << i
    }

    pub fn contains(m: Subset, i: usize) -> bool {
        m >> i & 1 == 1
    }

    pub fn is_subset(a: Subset, b: Subset) -> bool {
        a & !b == 0
    }

    /// Indices of set bits, ascending.
    pub fn iter(m: Subset) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| contains(m, *i))
    }

    pub fn complement(m: Subset, n: usize) -> Subset {
        full(n) & !m
    }
}
