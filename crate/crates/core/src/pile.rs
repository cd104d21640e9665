//! Families of labelled complexes over a finite vertical, cut into piles
//! (isomorphism classes with explicit parametrisations), semi-simple
//! refinements and relative decompositions with full sub-piles.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::{component_masks, Region, TriId, TriangulatedComplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PileError {
    #[error("map on fiber {fiber} is not simplicial on triangle {triangle}")]
    NotSimplicial { fiber: u32, triangle: TriId },
    #[error("map on fiber {fiber} is undefined at vertex {vertex}")]
    MissingVertex { fiber: u32, vertex: VertexId },
    #[error("no map given for fiber {0}")]
    MissingMap(u32),
    #[error("region on fiber {fiber} contains triangle {triangle} outside the fiber")]
    NotContained { fiber: u32, triangle: TriId },
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

/// A complex with an integer label on every triangle (default 0).
#[derive(Clone, Debug)]
pub struct LabeledComplex {
    pub complex: TriangulatedComplex,
    pub labels: BTreeMap<TriId, u32>,
}

impl LabeledComplex {
    pub fn new(complex: TriangulatedComplex) -> Self {
        LabeledComplex { complex, labels: BTreeMap::new() }
    }

    pub fn with_labels(complex: TriangulatedComplex, labels: BTreeMap<TriId, u32>) -> Self {
        LabeledComplex { complex, labels }
    }

    pub fn label(&self, t: u32) -> u32 {
        self.labels.get(&self.complex.tri_id(t)).copied().unwrap_or(0)
    }

    fn label_vec(&self) -> Vec<u32> {
        (0..self.complex.num_triangles() as u32).map(|t| self.label(t)).collect()
    }

    pub fn subcomplex(&self, region: &Region) -> Result<LabeledComplex, PileError> {
        let complex = self.complex.subcomplex(region)?;
        let labels = self
            .labels
            .iter()
            .filter(|(t, _)| region.contains(**t))
            .map(|(t, l)| (*t, *l))
            .collect();
        Ok(LabeledComplex { complex, labels })
    }
}

/// Fibers indexed by a finite vertical.
#[derive(Clone, Debug, Default)]
pub struct Family {
    pub fibers: BTreeMap<u32, LabeledComplex>,
}

impl Family {
    pub fn new(fibers: BTreeMap<u32, LabeledComplex>) -> Self {
        Family { fibers }
    }

    pub fn vertical(&self) -> BTreeSet<u32> {
        self.fibers.keys().copied().collect()
    }
}

/// A base complex with label- and orientation-preserving isomorphisms onto
/// every fiber of its vertical.
#[derive(Clone, Debug)]
pub struct Pile {
    pub base: LabeledComplex,
    /// Per fiber, base vertex id to fiber vertex id.
    pub iso: BTreeMap<u32, BTreeMap<VertexId, VertexId>>,
    pub fibers: BTreeMap<u32, LabeledComplex>,
}

impl Pile {
    pub fn vertical(&self) -> BTreeSet<u32> {
        self.iso.keys().copied().collect()
    }
}

/// Canonical code of one edge-connected component together with the
/// traversal that realises it.
#[derive(Clone, Debug)]
struct ComponentForm {
    code: Vec<u32>,
    /// Vertex index for each canonical vertex number.
    numbering: Vec<u32>,
    /// Triangle index for each canonical triangle position.
    tri_order: Vec<u32>,
}

/// Isomorphism-invariant code of a labelled complex, built component by
/// component as the lexicographically least breadth-first encoding over
/// all rooted, oriented starting corners.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    components: Vec<ComponentForm>,
}

impl CanonicalForm {
    pub fn key(&self) -> Vec<Vec<u32>> {
        self.components.iter().map(|c| c.code.clone()).collect()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }
}

struct Scratch {
    num: Vec<u32>,
    num_gen: Vec<u32>,
    vis_gen: Vec<u32>,
    gen: u32,
}

impl Scratch {
    fn new(nv: usize, nt: usize) -> Self {
        Scratch { num: vec![0; nv], num_gen: vec![0; nv], vis_gen: vec![0; nt], gen: 0 }
    }
}

/// Result of one rooted traversal.
enum Walk {
    Worse,
    Equal(Vec<u32>, Vec<u32>),
    Better(Vec<u32>, Vec<u32>, Vec<u32>),
}

fn walk(c: &TriangulatedComplex, labels: &[u32], root: u32, rot: usize, best: Option<&[u32]>, s: &mut Scratch) -> Walk {
    s.gen += 1;
    let gen = s.gen;
    let mut code = Vec::new();
    let mut numbering = Vec::new();
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back((root, rot));
    s.vis_gen[root as usize] = gen;
    let mut better = best.is_none();
    while let Some((t, r)) = queue.pop_front() {
        order.push(t);
        let tv = c.tri_vertices(t);
        let corners = [tv[r], tv[(r + 1) % 3], tv[(r + 2) % 3]];
        let mut words = [0u32; 4];
        for (k, &v) in corners.iter().enumerate() {
            if s.num_gen[v as usize] != gen {
                s.num_gen[v as usize] = gen;
                s.num[v as usize] = numbering.len() as u32;
                numbering.push(v);
            }
            words[k] = s.num[v as usize];
        }
        words[3] = labels[t as usize];
        for w in words {
            if !better {
                let b = best.unwrap();
                let pos = code.len();
                match b.get(pos).map(|&x| w.cmp(&x)) {
                    Some(std::cmp::Ordering::Less) => better = true,
                    Some(std::cmp::Ordering::Greater) | None => return Walk::Worse,
                    Some(std::cmp::Ordering::Equal) => {}
                }
            }
            code.push(w);
        }
        let edges = c.tri_edges(t);
        for k in 0..3 {
            let e = edges[(r + k) % 3];
            let edge = &c.edges()[e as usize];
            let nb = if edge.tris[0] == t { edge.tris[1] } else { edge.tris[0] };
            if nb == crate::complex::NO_TRIANGLE || s.vis_gen[nb as usize] == gen {
                continue;
            }
            s.vis_gen[nb as usize] = gen;
            let target = corners[(k + 1) % 3];
            let nv = c.tri_vertices(nb);
            let nr = nv.iter().position(|&x| x == target).unwrap();
            queue.push_back((nb, nr));
        }
    }
    match best {
        Some(b) if !better && code.len() == b.len() => Walk::Equal(numbering, order),
        Some(b) if !better && code.len() < b.len() => Walk::Worse,
        _ => Walk::Better(code, numbering, order),
    }
}

/// Minimal code of a component and every traversal attaining it.
fn component_forms(c: &TriangulatedComplex, labels: &[u32], comp: &[u32], s: &mut Scratch) -> (Vec<u32>, Vec<(Vec<u32>, Vec<u32>)>) {
    let deg = |v: u32| c.vertex_triangles(v).len() as u32;
    let invariant = |t: u32, r: usize| {
        let tv = c.tri_vertices(t);
        (labels[t as usize], deg(tv[r]), deg(tv[(r + 1) % 3]), deg(tv[(r + 2) % 3]))
    };
    let mut roots = Vec::new();
    let mut best_inv = None;
    for &t in comp {
        for r in 0..3 {
            let inv = invariant(t, r);
            match best_inv {
                Some(b) if inv > b => {}
                Some(b) if inv == b => roots.push((t, r)),
                _ => {
                    best_inv = Some(inv);
                    roots.clear();
                    roots.push((t, r));
                }
            }
        }
    }
    let mut best: Option<Vec<u32>> = None;
    let mut realising = Vec::new();
    for (t, r) in roots {
        match walk(c, labels, t, r, best.as_deref(), s) {
            Walk::Worse => {}
            Walk::Equal(numbering, order) => realising.push((numbering, order)),
            Walk::Better(code, numbering, order) => {
                best = Some(code);
                realising.clear();
                realising.push((numbering, order));
            }
        }
    }
    (best.unwrap_or_default(), realising)
}

fn canonical_with(lc: &LabeledComplex, labels: &[u32]) -> Vec<(Vec<u32>, Vec<(Vec<u32>, Vec<u32>)>)> {
    let c = &lc.complex;
    let mut s = Scratch::new(c.num_vertices(), c.num_triangles());
    let all = vec![true; c.num_triangles()];
    component_masks(c, &all)
        .iter()
        .map(|comp| component_forms(c, labels, comp, &mut s))
        .collect()
}

pub fn canonical_form(lc: &LabeledComplex) -> CanonicalForm {
    let labels = lc.label_vec();
    let mut components: Vec<ComponentForm> = canonical_with(lc, &labels)
        .into_iter()
        .map(|(code, mut real)| {
            let (numbering, tri_order) = real.swap_remove(0);
            ComponentForm { code, numbering, tri_order }
        })
        .collect();
    components.sort_by(|a, b| a.code.cmp(&b.code));
    CanonicalForm { components }
}

/// Vertex-id isomorphism `a -> b` matching canonical traversals.
fn form_iso(a: &LabeledComplex, fa: &[ComponentForm], b: &LabeledComplex, fb: &[ComponentForm]) -> BTreeMap<VertexId, VertexId> {
    let mut m = BTreeMap::new();
    for (ca, cb) in fa.iter().zip(fb) {
        for (&va, &vb) in ca.numbering.iter().zip(&cb.numbering) {
            m.insert(a.complex.vertex(va).id, b.complex.vertex(vb).id);
        }
    }
    m
}

/// Triangle-id correspondence `a -> b` matching canonical traversals.
fn form_tri_map(a: &LabeledComplex, fa: &[ComponentForm], b: &LabeledComplex, fb: &[ComponentForm]) -> BTreeMap<TriId, TriId> {
    let mut m = BTreeMap::new();
    for (ca, cb) in fa.iter().zip(fb) {
        for (&ta, &tb) in ca.tri_order.iter().zip(&cb.tri_order) {
            m.insert(a.complex.tri_id(ta), b.complex.tri_id(tb));
        }
    }
    m
}

/// Groups fibers by canonical form; returns `(key, members)` with members
/// as `(fiber, component forms)`.
fn group_by_form<K: Ord + Clone>(
    items: Vec<(u32, K, Vec<ComponentForm>)>,
) -> Vec<(K, Vec<(u32, Vec<ComponentForm>)>)> {
    let mut groups: BTreeMap<K, Vec<(u32, Vec<ComponentForm>)>> = BTreeMap::new();
    for (t, key, forms) in items {
        groups.entry(key).or_default().push((t, forms));
    }
    let mut out: Vec<_> = groups.into_iter().collect();
    out.sort_by_key(|(_, members)| members[0].0);
    out
}

fn assemble_pile(family: &BTreeMap<u32, LabeledComplex>, members: &[(u32, Vec<ComponentForm>)]) -> Pile {
    let (t0, f0) = &members[0];
    let base = family[t0].clone();
    let mut iso = BTreeMap::new();
    let mut fibers = BTreeMap::new();
    for (t, forms) in members {
        iso.insert(*t, form_iso(&base, f0, &family[t], forms));
        fibers.insert(*t, family[t].clone());
    }
    Pile { base, iso, fibers }
}

/// Fibers excluded from a decomposition, with the reason.
pub type Excluded = Vec<(u32, String)>;

fn truncated(lc: &LabeledComplex) -> bool {
    lc.complex.vertices().iter().any(|v| v.on_frontier)
}

/// Cuts the family into piles of canonically isomorphic fibers. Fibers
/// truncated by the window frontier are excluded.
pub fn pile_decompose(family: &Family) -> (Vec<Pile>, Excluded) {
    let mut excluded = Vec::new();
    let mut items = Vec::new();
    for (&t, lc) in &family.fibers {
        if truncated(lc) {
            excluded.push((t, "fiber touches the window frontier".to_string()));
            continue;
        }
        let cf = canonical_form(lc);
        items.push((t, cf.key(), cf.components));
    }
    let piles = group_by_form(items)
        .into_iter()
        .map(|(_, members)| assemble_pile(&family.fibers, &members))
        .collect();
    (piles, excluded)
}

/// Checks that `f` sends every triangle onto a simplex of `k`.
fn check_simplicial(
    t: u32,
    lc: &LabeledComplex,
    f: &BTreeMap<VertexId, VertexId>,
    k: &TriangulatedComplex,
) -> Result<(), PileError> {
    let c = &lc.complex;
    for tri in 0..c.num_triangles() as u32 {
        let mut img = Vec::with_capacity(3);
        for v in c.tri_vertices(tri) {
            let id = c.vertex(v).id;
            let w = *f.get(&id).ok_or(PileError::MissingVertex { fiber: t, vertex: id })?;
            let wi = k
                .vertex_idx(w)
                .ok_or(PileError::NotSimplicial { fiber: t, triangle: c.tri_id(tri) })?;
            if !img.contains(&wi) {
                img.push(wi);
            }
        }
        let ok = match img.len() {
            1 => true,
            2 => k.edge_idx(img[0], img[1]).is_some(),
            _ => {
                let mut s = img.clone();
                s.sort_unstable();
                k.vertex_triangles(s[0]).iter().any(|&kt| {
                    let mut kv = k.tri_vertices(kt);
                    kv.sort_unstable();
                    kv[..] == s[..]
                })
            }
        };
        if !ok {
            return Err(PileError::NotSimplicial { fiber: t, triangle: c.tri_id(tri) });
        }
    }
    Ok(())
}

/// Refines the pile decomposition so that on each part the maps `f_t`
/// factor through one base map. Returns each part with its base map
/// (base vertex id to `K` vertex id).
pub fn semi_simple_decompose(
    family: &Family,
    f: &BTreeMap<u32, BTreeMap<VertexId, VertexId>>,
    k: &TriangulatedComplex,
) -> Result<(Vec<(Pile, BTreeMap<VertexId, VertexId>)>, Excluded), PileError> {
    let mut excluded = Vec::new();
    let mut items = Vec::new();
    for (&t, lc) in &family.fibers {
        let ft = f.get(&t).ok_or(PileError::MissingMap(t))?;
        check_simplicial(t, lc, ft, k)?;
        if truncated(lc) {
            excluded.push((t, "fiber touches the window frontier".to_string()));
            continue;
        }
        let labels = lc.label_vec();
        let mut comps: Vec<(Vec<u32>, Vec<u32>, ComponentForm)> = canonical_with(lc, &labels)
            .into_iter()
            .map(|(code, realising)| {
                // Among automorphic traversals pick the least image sequence.
                let (seq, (numbering, tri_order)) = realising
                    .into_iter()
                    .map(|(numbering, order)| {
                        let seq: Vec<u32> = numbering
                            .iter()
                            .map(|&v| ft[&lc.complex.vertex(v).id].0)
                            .collect();
                        (seq, (numbering, order))
                    })
                    .min_by(|a, b| a.0.cmp(&b.0))
                    .unwrap();
                (code.clone(), seq, ComponentForm { code, numbering, tri_order })
            })
            .collect();
        comps.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let key: Vec<(Vec<u32>, Vec<u32>)> = comps.iter().map(|c| (c.0.clone(), c.1.clone())).collect();
        items.push((t, key, comps.into_iter().map(|c| c.2).collect()));
    }
    let parts = group_by_form(items)
        .into_iter()
        .map(|(_, members)| {
            let pile = assemble_pile(&family.fibers, &members);
            let t0 = members[0].0;
            let base_map = pile
                .base
                .complex
                .vertex_ids()
                .filter_map(|v| f[&t0].get(&v).map(|w| (v, *w)))
                .collect();
            (pile, base_map)
        })
        .collect();
    Ok((parts, excluded))
}

/// A pile of `B^` fibers with the full sub-piles cut out by `B`.
#[derive(Clone, Debug)]
pub struct RelativePile {
    pub pile: Pile,
    /// One full sub-pile per `B`-component of the base, in splitting order.
    pub subpiles: Vec<Pile>,
    /// No fiber of this pile meets `B`.
    pub degenerate: bool,
}

/// Cuts `B^` into piles on which `B` is a union of full sub-piles. Fibers
/// are grouped by the canonical form of `B^_t` marked with membership in
/// `B_t`; within a group the `r` components of `B` are split off one at a
/// time, least canonical position first.
pub fn relative_decompose(
    b: &BTreeMap<u32, Region>,
    bhat: &Family,
) -> Result<(Vec<RelativePile>, Excluded), PileError> {
    let mut excluded = Vec::new();
    let mut items = Vec::new();
    let empty = Region::new();
    for (&t, lc) in &bhat.fibers {
        let bt = b.get(&t).unwrap_or(&empty);
        for &tri in &bt.triangles {
            if lc.complex.tri_idx(tri).is_none() {
                return Err(PileError::NotContained { fiber: t, triangle: tri });
            }
        }
        if truncated(lc) {
            excluded.push((t, "fiber touches the window frontier".to_string()));
            continue;
        }
        let labels: Vec<u32> = (0..lc.complex.num_triangles() as u32)
            .map(|tri| 2 * lc.label(tri) + bt.contains(lc.complex.tri_id(tri)) as u32)
            .collect();
        let mut forms: Vec<ComponentForm> = canonical_with(lc, &labels)
            .into_iter()
            .map(|(code, mut real)| {
                let (numbering, tri_order) = real.swap_remove(0);
                ComponentForm { code, numbering, tri_order }
            })
            .collect();
        forms.sort_by(|a, b| a.code.cmp(&b.code));
        let key: Vec<Vec<u32>> = forms.iter().map(|f| f.code.clone()).collect();
        items.push((t, key, forms));
    }
    let mut out = Vec::new();
    for (_, members) in group_by_form(items) {
        let pile = assemble_pile(&bhat.fibers, &members);
        let (t0, f0) = &members[0];
        let base_b = b.get(t0).cloned().unwrap_or_default();
        // B-components of the base ordered by least canonical position.
        let position: HashMap<TriId, usize> = f0
            .iter()
            .flat_map(|c| c.tri_order.iter())
            .enumerate()
            .map(|(i, &tri)| (pile.base.complex.tri_id(tri), i))
            .collect();
        let mut remaining = crate::complex::components(&pile.base.complex, &base_b);
        let mut subpiles = Vec::new();
        while !remaining.is_empty() {
            let (i, _) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| r.triangles.iter().map(|t| position[t]).min())
                .unwrap();
            let comp = remaining.swap_remove(i);
            subpiles.push(sub_pile(&pile, &bhat.fibers, &members, &comp)?);
        }
        let degenerate = subpiles.is_empty();
        out.push(RelativePile { pile, subpiles, degenerate });
    }
    Ok((out, excluded))
}

fn sub_pile(
    pile: &Pile,
    fibers: &BTreeMap<u32, LabeledComplex>,
    members: &[(u32, Vec<ComponentForm>)],
    comp: &Region,
) -> Result<Pile, PileError> {
    let (t0, f0) = &members[0];
    let base = pile.base.subcomplex(comp)?;
    let base_verts: BTreeSet<VertexId> = base.complex.vertex_ids().collect();
    let mut iso = BTreeMap::new();
    let mut sub_fibers = BTreeMap::new();
    for (t, forms) in members {
        let tri_map = form_tri_map(&fibers[t0], f0, &fibers[t], forms);
        let image = Region::from_ids(comp.triangles.iter().map(|x| tri_map[x]));
        let fiber = fibers[t].subcomplex(&image)?;
        let full = &pile.iso[t];
        iso.insert(*t, base_verts.iter().map(|v| (*v, full[v])).collect());
        sub_fibers.insert(*t, fiber);
    }
    Ok(Pile { base, iso, fibers: sub_fibers })
}

/// Whether `sub` is a full sub-pile of `big`: equal verticals, each plaque
/// of `big` containing exactly one (connected) plaque of `sub`, and a
/// single base embedding commuting with all parametrisations. Returns the
/// embedding (sub base vertex to big base vertex) on success.
pub fn is_full_subpile(sub: &Pile, big: &Pile) -> (bool, Option<BTreeMap<VertexId, VertexId>>) {
    if sub.vertical() != big.vertical() || sub.vertical().is_empty() {
        return (false, None);
    }
    let mut common: Option<BTreeMap<VertexId, VertexId>> = None;
    for t in sub.vertical() {
        let sf = &sub.fibers[&t];
        let bf = &big.fibers[&t];
        if crate::complex::components(&sf.complex, &sf.complex.all_triangles()).len() != 1 {
            return (false, None);
        }
        for tri in sf.complex.triangles() {
            match bf.complex.tri_idx(tri.id) {
                Some(i) if bf.complex.tri_vertices(i).map(|v| bf.complex.vertex(v).id) == tri.vertices => {}
                _ => return (false, None),
            }
        }
        let inv: BTreeMap<VertexId, VertexId> = big.iso[&t].iter().map(|(a, b)| (*b, *a)).collect();
        let mut emb = BTreeMap::new();
        for (sv, fv) in &sub.iso[&t] {
            match inv.get(fv) {
                Some(bv) => {
                    emb.insert(*sv, *bv);
                }
                None => return (false, None),
            }
        }
        match &common {
            None => common = Some(emb),
            Some(c) if *c == emb => {}
            Some(_) => return (false, None),
        }
    }
    (true, common)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid_disk, single_triangle};

    fn compact(c: TriangulatedComplex) -> TriangulatedComplex {
        let verts = c
            .vertices()
            .iter()
            .map(|v| crate::complex::Vertex { on_frontier: false, ..*v })
            .collect();
        TriangulatedComplex::new(verts, c.triangles().collect(), None).unwrap()
    }

    fn fam(fibers: Vec<TriangulatedComplex>) -> Family {
        Family::new(
            fibers
                .into_iter()
                .enumerate()
                .map(|(i, c)| (i as u32, LabeledComplex::new(compact(c))))
                .collect(),
        )
    }

    #[test]
    fn piles_of_simple_families() {
        let f = fam(vec![grid_disk(1), grid_disk(1)]);
        let (piles, ex) = pile_decompose(&f);
        assert!(ex.is_empty());
        assert_eq!(piles.len(), 1);
        assert_eq!(piles[0].vertical().len(), 2);

        let f = fam(vec![grid_disk(1), single_triangle()]);
        assert_eq!(pile_decompose(&f).0.len(), 2);
    }

    #[test]
    fn truncated_fibers_are_excluded() {
        let f = Family::new([(0, LabeledComplex::new(grid_disk(1)))].into_iter().collect());
        let (piles, ex) = pile_decompose(&f);
        assert!(piles.is_empty());
        assert_eq!(ex.len(), 1);
    }

    #[test]
    fn semi_simple_splits_by_vertex_map() {
        let f = fam(vec![grid_disk(1), grid_disk(1)]);
        let k = single_triangle();
        let constant: BTreeMap<VertexId, VertexId> =
            f.fibers[&0].complex.vertex_ids().map(|v| (v, VertexId(0))).collect();
        let maps: BTreeMap<u32, _> = [(0, constant.clone()), (1, constant.clone())].into_iter().collect();
        let (parts, _) = semi_simple_decompose(&f, &maps, &k).unwrap();
        assert_eq!(parts.len(), 1);

        let other: BTreeMap<VertexId, VertexId> =
            f.fibers[&0].complex.vertex_ids().map(|v| (v, VertexId(1))).collect();
        let maps: BTreeMap<u32, _> = [(0, constant), (1, other)].into_iter().collect();
        assert_eq!(semi_simple_decompose(&f, &maps, &k).unwrap().0.len(), 2);
    }

    #[test]
    fn non_simplicial_map_is_rejected() {
        let f = fam(vec![grid_disk(1)]);
        let k = grid_disk(1);
        // Collapse the window onto two non-adjacent corner vertices of K.
        let a = crate::generators::grid_vertex_id(1, -1, 1);
        let b = crate::generators::grid_vertex_id(1, 1, -1);
        let map: BTreeMap<VertexId, VertexId> = f.fibers[&0]
            .complex
            .vertices()
            .iter()
            .map(|v| (v.id, if v.pos.x < 0.0 { a } else { b }))
            .collect();
        let maps = [(0, map)].into_iter().collect();
        assert!(matches!(semi_simple_decompose(&f, &maps, &k), Err(PileError::NotSimplicial { .. })));
    }

    #[test]
    fn relative_piles_are_full() {
        let f = fam(vec![grid_disk(1), grid_disk(1), grid_disk(1)]);
        let centre = crate::generators::grid_square_ids(1, 0, 0)[0];
        let b: BTreeMap<u32, Region> = (0..3).map(|t| (t, Region::from_ids([centre]))).collect();
        let (parts, _) = relative_decompose(&b, &f).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].subpiles.len(), 1);
        let (ok, emb) = is_full_subpile(&parts[0].subpiles[0], &parts[0].pile);
        assert!(ok && emb.unwrap().len() == 3);

        let (parts, _) = relative_decompose(&BTreeMap::new(), &f).unwrap();
        assert!(parts[0].degenerate);
    }

    #[test]
    fn full_subpile_failures() {
        let f = fam(vec![grid_disk(1), grid_disk(1)]);
        let centre = crate::generators::grid_square_ids(1, 0, 0)[0];
        let other = crate::generators::grid_square_ids(1, -1, -1)[1];
        let b: BTreeMap<u32, Region> = [(0, Region::from_ids([centre])), (1, Region::from_ids([centre]))]
            .into_iter()
            .collect();
        let (parts, _) = relative_decompose(&b, &f).unwrap();
        let mut sub = parts[0].subpiles[0].clone();
        let big = &parts[0].pile;
        sub.iso.remove(&1);
        sub.fibers.remove(&1);
        assert!(!is_full_subpile(&sub, big).0);

        // Same shape at a different position in fiber 1.
        let mut moved = parts[0].subpiles[0].clone();
        let lc = f.fibers[&1].subcomplex(&Region::from_ids([other])).unwrap();
        let tri = lc.complex.triangles().next().unwrap();
        let base_tri = moved.base.complex.triangles().next().unwrap();
        moved.iso.insert(1, base_tri.vertices.iter().copied().zip(tri.vertices).collect());
        moved.fibers.insert(1, lc);
        assert!(!is_full_subpile(&moved, big).0);
    }
}
