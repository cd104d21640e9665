//! Hole-filling envelopes in planar windows, integral decompositions,
//! volume-bounded envelopes and strong disk filtrations.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{component_masks, disk_certificate_of_mask, Region, TriId, TriangulatedComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("empty region")]
    Empty,
    #[error("component {0} touches the window frontier; its envelope is not determined by the window")]
    Unreliable(TriId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeResult {
    pub region: Region,
    /// Bounded complementary triangles added to the input.
    pub filled: Region,
    /// Complementary triangles connected to the window frontier.
    pub unbounded: Region,
    /// False when the input or a filled hole has a frontier vertex.
    pub reliable: bool,
}

/// Triangles having an edge on the boundary of the window complex.
fn frontier_triangles(host: &TriangulatedComplex) -> Vec<bool> {
    let mut out = vec![false; host.num_triangles()];
    for e in host.edges() {
        if e.is_boundary() {
            out[e.tris[0] as usize] = true;
        }
    }
    out
}

fn touches_frontier(host: &TriangulatedComplex, t: u32) -> bool {
    host.tri_vertices(t).iter().any(|&v| host.vertex(v).on_frontier)
}

/// Envelope of a triangle mask: flood fill of the complement on the dual
/// graph from the frontier triangles. Returns `(unbounded, filled)`.
pub(crate) fn envelope_mask(host: &TriangulatedComplex, mask: &[bool]) -> (Vec<bool>, Vec<bool>) {
    let seeds = frontier_triangles(host);
    let n = mask.len();
    let mut unbounded = vec![false; n];
    let mut stack: Vec<u32> = (0..n as u32).filter(|&t| !mask[t as usize] && seeds[t as usize]).collect();
    for &t in &stack {
        unbounded[t as usize] = true;
    }
    while let Some(t) = stack.pop() {
        for k in 0..3 {
            if let Some(nb) = host.neighbor(t, k) {
                let i = nb as usize;
                if !mask[i] && !unbounded[i] {
                    unbounded[i] = true;
                    stack.push(nb);
                }
            }
        }
    }
    let filled = (0..n).map(|t| !mask[t] && !unbounded[t]).collect();
    (unbounded, filled)
}

fn result_from_masks(host: &TriangulatedComplex, input: &Region, mask: &[bool]) -> EnvelopeResult {
    let (unbounded, filled) = envelope_mask(host, mask);
    let reliable = (0..mask.len()).all(|t| !(mask[t] || filled[t]) || !touches_frontier(host, t as u32));
    let env: Vec<bool> = (0..mask.len()).map(|t| mask[t] || filled[t]).collect();
    let mut region = host.region_from_mask(&env);
    region.leaf_index = input.leaf_index;
    EnvelopeResult {
        region,
        filled: host.region_from_mask(&filled),
        unbounded: host.region_from_mask(&unbounded),
        reliable,
    }
}

/// `eps(Omega)` for a connected region: the region plus every complementary
/// component that does not reach the window frontier.
pub fn envelope_component(host: &TriangulatedComplex, omega: &Region) -> Result<EnvelopeResult, EnvelopeError> {
    if omega.is_empty() {
        return Err(EnvelopeError::Empty);
    }
    Ok(result_from_masks(host, omega, &host.mask(omega)))
}

/// `eps(B) = X - C_inf` on one leaf window.
pub fn envelope(host: &TriangulatedComplex, b: &Region) -> EnvelopeResult {
    result_from_masks(host, b, &host.mask(b))
}

/// Envelopes leaf by leaf.
pub fn envelope_family(leaves: &[(&TriangulatedComplex, Region)]) -> Vec<EnvelopeResult> {
    leaves.iter().map(|(host, b)| envelope(host, b)).collect()
}

/// A component of a region with its own envelope.
#[derive(Clone, Debug)]
struct Enveloped {
    comp: Vec<u32>,
    env: Vec<u32>,
    reliable: bool,
}

fn enveloped_components(host: &TriangulatedComplex, mask: &[bool]) -> Vec<Enveloped> {
    let mut comps = component_masks(host, mask);
    comps.sort_by_key(|c| c.iter().map(|&t| host.tri_id(t)).min());
    let n = mask.len();
    comps
        .into_iter()
        .map(|comp| {
            let mut m = vec![false; n];
            for &t in &comp {
                m[t as usize] = true;
            }
            let (_, filled) = envelope_mask(host, &m);
            let env: Vec<u32> = (0..n as u32).filter(|&t| m[t as usize] || filled[t as usize]).collect();
            let reliable = env.iter().all(|&t| !touches_frontier(host, t));
            Enveloped { comp, env, reliable }
        })
        .collect()
}

/// Splits `B` into integral parts: part `k` holds the components whose
/// envelope contains exactly `k` other components of `B`. Intermediate
/// parts may be empty.
pub fn integral_decomposition(host: &TriangulatedComplex, b: &Region) -> Result<Vec<Region>, EnvelopeError> {
    let comps = enveloped_components(host, &host.mask(b));
    if let Some(bad) = comps.iter().find(|c| !c.reliable) {
        return Err(EnvelopeError::Unreliable(host.tri_id(*bad.comp.iter().min().unwrap())));
    }
    let n = host.num_triangles();
    let mut owner = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for &t in &c.comp {
            owner[t as usize] = i;
        }
    }
    let mut parts: Vec<BTreeSet<TriId>> = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let inside: BTreeSet<usize> = c
            .env
            .iter()
            .map(|&t| owner[t as usize])
            .filter(|&o| o != usize::MAX && o != i)
            .collect();
        let k = inside.len();
        if parts.len() <= k {
            parts.resize(k + 1, BTreeSet::new());
        }
        parts[k].extend(c.comp.iter().map(|&t| host.tri_id(t)));
    }
    Ok(parts
        .into_iter()
        .map(|triangles| Region { triangles, leaf_index: b.leaf_index })
        .collect())
}

/// `eps_q(B)`: the union of the component envelopes of volume at most `q`.
/// Components whose envelope reaches the frontier are skipped.
pub fn envelope_bounded(host: &TriangulatedComplex, b: &Region, q: usize) -> Region {
    let mut mask = vec![false; host.num_triangles()];
    for c in enveloped_components(host, &host.mask(b)) {
        if c.reliable && c.env.len() <= q {
            for t in c.env {
                mask[t as usize] = true;
            }
        }
    }
    let mut r = host.region_from_mask(&mask);
    r.leaf_index = b.leaf_index;
    r
}

/// `B^_q = U_n eps_q(B_n)` for every `q <= q_max`, stored by breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongFiltration {
    /// Increasing volumes at which the filtration changes, with the region
    /// from that volume on.
    pub levels: Vec<(usize, Region)>,
    pub q_max: usize,
}

impl StrongFiltration {
    pub fn at(&self, q: usize) -> Region {
        let q = q.min(self.q_max);
        self.levels
            .iter()
            .take_while(|(v, _)| *v <= q)
            .last()
            .map(|(_, r)| r.clone())
            .unwrap_or_default()
    }

    pub fn last(&self) -> Region {
        self.levels.last().map(|(_, r)| r.clone()).unwrap_or_default()
    }

    pub fn is_vacuous(&self) -> bool {
        self.levels.iter().all(|(_, r)| r.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongFiltrationReport {
    pub input_monotone: bool,
    pub levels: usize,
    /// `(q, component min id)` of components that fail the disk certificate
    /// or exceed volume `q`.
    pub bad_components: Vec<(usize, TriId)>,
    pub monotone: bool,
    /// Triangles of some `B_n` in a frontier-free component with envelope
    /// volume at most `q_max` that never enter the filtration.
    pub missed: Vec<TriId>,
}

impl StrongFiltrationReport {
    pub fn passed(&self) -> bool {
        self.input_monotone && self.bad_components.is_empty() && self.monotone && self.missed.is_empty()
    }
}

pub fn strong_filtration(
    host: &TriangulatedComplex,
    bs: &[Region],
    q_max: usize,
) -> (StrongFiltration, StrongFiltrationReport) {
    let n = host.num_triangles();
    let per_stage: Vec<Vec<Enveloped>> = bs.iter().map(|b| enveloped_components(host, &host.mask(b))).collect();
    let mut volumes: BTreeSet<usize> = BTreeSet::new();
    for stage in &per_stage {
        for c in stage {
            if c.reliable && c.env.len() <= q_max {
                volumes.insert(c.env.len());
            }
        }
    }
    let mut levels = Vec::new();
    let mut mask = vec![false; n];
    for &q in &volumes {
        for stage in &per_stage {
            for c in stage {
                if c.reliable && c.env.len() == q {
                    for &t in &c.env {
                        mask[t as usize] = true;
                    }
                }
            }
        }
        levels.push((q, host.region_from_mask(&mask)));
    }
    let sf = StrongFiltration { levels, q_max };

    let mut bad_components = Vec::new();
    for (q, r) in &sf.levels {
        let m = host.mask(r);
        for comp in component_masks(host, &m) {
            let mut cm = vec![false; n];
            for &t in &comp {
                cm[t as usize] = true;
            }
            if comp.len() > *q || !disk_certificate_of_mask(host, &cm).is_disk() {
                bad_components.push((*q, comp.iter().map(|&t| host.tri_id(t)).min().unwrap()));
            }
        }
    }
    let monotone = sf.levels.windows(2).all(|w| w[0].1.is_subset(&w[1].1));
    let input_monotone = bs.windows(2).all(|w| w[0].is_subset(&w[1]));
    let final_mask = host.mask(&sf.last());
    let mut missed = BTreeSet::new();
    for stage in &per_stage {
        for c in stage {
            if c.reliable && c.env.len() <= q_max {
                missed.extend(c.comp.iter().filter(|&&t| !final_mask[t as usize]).map(|&t| host.tri_id(t)));
            }
        }
    }
    let report = StrongFiltrationReport {
        input_monotone,
        levels: sf.levels.len(),
        bad_components,
        monotone,
        missed: missed.into_iter().collect(),
    };
    (sf, report)
}

/// Envelope volume of every component of `b`, keyed by minimum id, with a
/// reliability flag.
pub fn envelope_volumes(host: &TriangulatedComplex, b: &Region) -> BTreeMap<TriId, (usize, bool)> {
    enveloped_components(host, &host.mask(b))
        .into_iter()
        .map(|c| (host.tri_id(*c.comp.iter().min().unwrap()), (c.env.len(), c.reliable)))
        .collect()
}
