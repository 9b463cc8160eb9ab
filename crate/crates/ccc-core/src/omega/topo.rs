//! Decision procedures for the schematic topology of an omega space.
//!
//! Every quantifier over the chain reduces to closed-form threshold
//! comparisons: a template family's instances are nested or pairwise
//! disjoint along the chain, so "for all instances" and "some instance"
//! questions close over the finitely many numeric parameters in play.

use super::schema::{NetStep, Point, SchemaNet, SchemaSet};
use super::{OmegaError, OmegaSpace, SchemaTemplate};
use crate::mask;

/// Specialization preorder of the generated topology: x ⊑ y when every
/// base set containing x contains y.
pub fn spec_leq(space: &OmegaSpace, x: Point, y: Point) -> bool {
    space.base().iter().all(|t| template_forces(t, x, y))
}

fn template_forces(t: &SchemaTemplate, x: Point, y: Point) -> bool {
    match t {
        SchemaTemplate::Fixed(s) => !s.contains(x) || s.contains(y),
        SchemaTemplate::PerChain { upset: true, attach, from } => match x {
            Point::Fin(p) => {
                if !mask::contains(*attach, p) {
                    return true;
                }
                // x lies in every instance, so y must too; only attached
                // finite points survive arbitrarily late tails.
                match y {
                    Point::Fin(q) => mask::contains(*attach, q),
                    Point::Chain(_) => false,
                }
            }
            Point::Chain(j) => {
                if j < *from {
                    return true;
                }
                // Instances holding c_j are the tails from n <= j; the
                // binding one is the tail from j itself.
                match y {
                    Point::Fin(q) => mask::contains(*attach, q),
                    Point::Chain(k) => k >= j,
                }
            }
        },
        SchemaTemplate::PerChain { upset: false, attach, from } => match x {
            Point::Fin(p) => {
                if !mask::contains(*attach, p) {
                    return true;
                }
                match y {
                    Point::Fin(q) => mask::contains(*attach, q),
                    Point::Chain(_) => false,
                }
            }
            Point::Chain(j) => {
                if j < *from {
                    return true;
                }
                match y {
                    Point::Fin(q) => mask::contains(*attach, q),
                    Point::Chain(k) => k == j,
                }
            }
        },
    }
}

/// True when every base set containing x has an infinite chain part. Points
/// with this property are exactly the limits of chain rides.
pub(super) fn all_nbhds_tailed(space: &OmegaSpace, x: Point) -> bool {
    space.base().iter().all(|t| match t {
        SchemaTemplate::Fixed(s) => !s.contains(x) || s.is_tailed(),
        SchemaTemplate::PerChain { upset: true, .. } => true,
        SchemaTemplate::PerChain { upset: false, attach, from } => match x {
            Point::Fin(p) => !mask::contains(*attach, p),
            Point::Chain(j) => j < *from,
        },
    })
}

/// Openness of `u` in the topology generated by `templates`. The template
/// list must be intersection-closed; both space bases and extracted bases
/// are kept that way.
pub(super) fn is_open_with(space: &OmegaSpace, templates: &[SchemaTemplate], u: &SchemaSet) -> bool {
    let extra = [
        u.max_param(),
        templates.iter().map(|t| match t {
            SchemaTemplate::Fixed(s) => s.max_param(),
            SchemaTemplate::PerChain { from, .. } => *from,
        }).max().unwrap_or(0),
    ];
    let bound = space.sweep_bound(&extra);
    u.reps(space.n_fin(), bound)
        .into_iter()
        .all(|x| templates.iter().any(|t| witnesses(t, x, u)))
}

/// Does some instance of `t` pin x inside u?
fn witnesses(t: &SchemaTemplate, x: Point, u: &SchemaSet) -> bool {
    match t {
        SchemaTemplate::Fixed(s) => s.contains(x) && s.is_subset(u),
        SchemaTemplate::PerChain { upset: true, attach, from } => {
            if !mask::is_subset(*attach, u.fin) {
                return false;
            }
            let Some(t0) = u.tail else { return false };
            let lo = t0.max(*from);
            match x {
                Point::Fin(p) => mask::contains(*attach, p),
                Point::Chain(j) => j >= lo,
            }
        }
        SchemaTemplate::PerChain { upset: false, attach, from } => {
            if !mask::is_subset(*attach, u.fin) {
                return false;
            }
            match x {
                Point::Chain(j) => j >= *from && u.contains(Point::Chain(j)),
                Point::Fin(p) => {
                    mask::contains(*attach, p)
                        && (u.tail.is_some() || u.chain.iter().any(|&k| k >= *from))
                }
            }
        }
    }
}

/// Openness in the space's own topology.
pub fn is_open(space: &OmegaSpace, u: &SchemaSet) -> bool {
    is_open_with(space, space.base(), u)
}

/// Up-closure of `u` under the specialization preorder.
pub(super) fn up_closed_spec(space: &OmegaSpace, u: &SchemaSet) -> bool {
    let bound = space.sweep_bound(&[u.max_param()]);
    let ground = space.ground_reps(bound);
    u.reps(space.n_fin(), bound).into_iter().all(|x| {
        ground
            .iter()
            .all(|&y| !spec_leq(space, x, y) || u.contains(y))
    })
}

/// Topological convergence of a schematic net: the net is eventually inside
/// every base set containing the candidate limit.
pub fn converges_net(space: &OmegaSpace, net: &SchemaNet, x: Point) -> bool {
    converges_net_with(space.base(), net, x)
}

/// Net convergence through an arbitrary base. The templates must form a
/// genuine base of the topology being queried.
pub(super) fn converges_net_with(templates: &[SchemaTemplate], net: &SchemaNet, x: Point) -> bool {
    templates.iter().all(|t| net_converges_through(t, net, x))
}

fn net_converges_through(t: &SchemaTemplate, net: &SchemaNet, x: Point) -> bool {
    match t {
        SchemaTemplate::Fixed(s) => !s.contains(x) || net.eventually_in(s),
        SchemaTemplate::PerChain { upset: true, attach, from } => {
            let binding = match x {
                Point::Fin(p) => {
                    if !mask::contains(*attach, p) {
                        return true;
                    }
                    // Every tail is a neighborhood, so constant chain
                    // residues eventually fall out.
                    None
                }
                Point::Chain(j) => {
                    if j < *from {
                        return true;
                    }
                    Some(j)
                }
            };
            net.steps.iter().all(|s| match s {
                NetStep::Ramp { .. } => true,
                NetStep::At(Point::Fin(q)) => mask::contains(*attach, *q),
                NetStep::At(Point::Chain(k)) => binding.is_some_and(|j| *k >= j),
            })
        }
        SchemaTemplate::PerChain { upset: false, attach, from } => match x {
            Point::Fin(p) => {
                if !mask::contains(*attach, p) {
                    return true;
                }
                net.steps.iter().all(|s| match s {
                    NetStep::At(Point::Fin(q)) => mask::contains(*attach, *q),
                    _ => false,
                })
            }
            Point::Chain(j) => {
                if j < *from {
                    return true;
                }
                net.steps.iter().all(|s| match s {
                    NetStep::At(Point::Fin(q)) => mask::contains(*attach, *q),
                    NetStep::At(Point::Chain(k)) => *k == j,
                    NetStep::Ramp { .. } => false,
                })
            }
        },
    }
}

/// Directedness of a schematic set in the declared order, decided over
/// representatives; two generic tail points stand in for the unbounded part.
pub(super) fn is_directed_declared(space: &OmegaSpace, d: &SchemaSet) -> bool {
    if d.is_empty() {
        return false;
    }
    let bound = space.sweep_bound(&[d.max_param()]);
    let mut reps: Vec<Point> =
        mask::iter(d.fin).filter(|&i| i < space.n_fin()).map(Point::Fin).collect();
    reps.extend(d.chain.iter().map(|&j| Point::Chain(j)));
    if d.tail.is_some() {
        reps.push(Point::Chain(bound + 1));
        reps.push(Point::Chain(bound + 2));
    }
    reps.iter().all(|&x| {
        reps.iter().all(|&y| {
            reps.iter()
                .any(|&z| space.declared_leq(x, z) && space.declared_leq(y, z))
        })
    })
}

/// Residual tails of a directed set seen as a net over itself: for each
/// member e, the set of members above e in the declared order.
fn residuals(space: &OmegaSpace, d: &SchemaSet, bound: u64) -> Vec<SchemaSet> {
    let mut out = Vec::new();
    let fin_above = |e: Point| -> u64 {
        mask::iter(d.fin)
            .filter(|&q| q < space.n_fin() && space.declared_leq(e, Point::Fin(q)))
            .fold(0, |m, q| m | mask::singleton(q))
    };
    for p in mask::iter(d.fin).filter(|&i| i < space.n_fin()) {
        let e = Point::Fin(p);
        let chain: Vec<u64> =
            d.chain.iter().copied().filter(|&j| space.declared_leq(e, Point::Chain(j))).collect();
        let tail = match (d.tail, space.above(p)) {
            (Some(t), Some(m)) => Some(t.max(m)),
            _ => None,
        };
        out.push(SchemaSet::new(fin_above(e), chain, tail));
    }
    let mut cuts: Vec<u64> = d.chain.clone();
    if let Some(t) = d.tail {
        cuts.extend(t..=bound + 1);
    }
    for j in cuts {
        let e = Point::Chain(j);
        let chain: Vec<u64> = d.chain.iter().copied().filter(|&k| k >= j).collect();
        let tail = d.tail.map(|t| t.max(j));
        out.push(SchemaSet::new(fin_above(e), chain, tail));
    }
    if d.tail.is_some() {
        // Residual at an arbitrarily late tail point: only finite points
        // below the whole chain survive, and the tail outruns any concrete
        // instance threshold.
        let far = mask::iter(d.fin)
            .filter(|&q| {
                q < space.n_fin() && matches!(space.below(q), super::ChainBound::All)
            })
            .fold(0, |m, q| m | mask::singleton(q));
        out.push(SchemaSet::new(far, Vec::new(), Some(bound + 3)));
    }
    out
}

/// Topological convergence of a directed set seen as a net over itself.
pub fn converges_directed(
    space: &OmegaSpace,
    d: &SchemaSet,
    x: Point,
) -> Result<bool, OmegaError> {
    converges_directed_with(space, space.base(), d, x)
}

/// Directed convergence through an arbitrary base over the same ground;
/// directedness is still judged in the space's declared order.
pub(super) fn converges_directed_with(
    space: &OmegaSpace,
    templates: &[SchemaTemplate],
    d: &SchemaSet,
    x: Point,
) -> Result<bool, OmegaError> {
    if !is_directed_declared(space, d) {
        return Err(OmegaError::NotDirected);
    }
    let xp = match x {
        Point::Chain(j) => j,
        Point::Fin(_) => 0,
    };
    let tparams = templates
        .iter()
        .map(|t| match t {
            SchemaTemplate::Fixed(s) => s.max_param(),
            SchemaTemplate::PerChain { from, .. } => *from,
        })
        .max()
        .unwrap_or(0);
    let bound = space.sweep_bound(&[d.max_param(), xp, tparams]);
    let res = residuals(space, d, bound);
    let some_res_inside = |b: &SchemaSet| res.iter().any(|r| r.is_subset(b));
    let ok = templates.iter().all(|t| match t {
        SchemaTemplate::Fixed(s) => !s.contains(x) || some_res_inside(s),
        SchemaTemplate::PerChain { upset: true, attach, from } => match x {
            Point::Fin(p) => {
                if !mask::contains(*attach, p) {
                    return true;
                }
                some_res_inside(&SchemaSet::new(*attach, Vec::new(), Some(bound + 2)))
            }
            Point::Chain(j) => {
                if j < *from {
                    return true;
                }
                some_res_inside(&SchemaSet::new(*attach, Vec::new(), Some(j)))
            }
        },
        SchemaTemplate::PerChain { upset: false, attach, from } => match x {
            Point::Fin(p) => {
                if !mask::contains(*attach, p) {
                    return true;
                }
                some_res_inside(&SchemaSet::fins(*attach))
            }
            Point::Chain(j) => {
                if j < *from {
                    return true;
                }
                some_res_inside(&SchemaSet::new(*attach, vec![j], None))
            }
        },
    });
    Ok(ok)
}
