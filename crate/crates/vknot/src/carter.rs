//! The canonical closed orientable surface supporting a Gauss-code diagram.
//!
//! Each crossing becomes a 4-valent vertex with a rotation (the cyclic order
//! of its four strand-ends on the oriented surface), each arc a band between
//! vertices, and the faces are traced from the rotation system. Capping every
//! boundary circle with a disk yields the supporting surface; its genus comes
//! from the Euler characteristic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{Arc, Cork, Passage, Sign, Triple, VirtualLinkDiagram};

/// Direction in which a face boundary walks an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// One directed side of an arc, as it appears in a face boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSide {
    pub arc: Arc,
    pub direction: Direction,
}

/// A disk face of the supporting surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub boundary: Vec<EdgeSide>,
}

impl Face {
    pub fn is_bigon(&self) -> bool {
        self.boundary.len() == 2
    }
}

/// Face color in a checkerboard coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceColor {
    Black,
    White,
}

impl FaceColor {
    pub fn other(self) -> Self {
        match self {
            FaceColor::Black => FaceColor::White,
            FaceColor::White => FaceColor::Black,
        }
    }
}

/// A proper 2-coloring of the faces: adjacent faces get different colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    /// Color per face index.
    pub assignment: Vec<FaceColor>,
}

/// Result of attempting a checkerboard coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringOutcome {
    Colorable(Coloring),
    /// Face indices forming a closed walk of odd length in the adjacency
    /// graph; a single index means a face adjacent to itself across an edge.
    NotColorable { odd_cycle: Vec<usize> },
}

impl ColoringOutcome {
    pub fn is_colorable(&self) -> bool {
        matches!(self, ColoringOutcome::Colorable(_))
    }
}

/// An arc whose two sides lie on the same face. The dual loop through that
/// face meets the diagram exactly once, which makes it a singular curve of
/// the supporting surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularWitness {
    pub edge: Arc,
}

/// Diagram-level verdict for a cork.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorkClassification {
    Singular(SingularWitness),
    /// No witness at this arc. This is a verdict about the given diagram, not
    /// a proof that no singular disk appears after isotopy.
    NonsingularAtDiagram,
}

impl CorkClassification {
    pub fn is_singular(&self) -> bool {
        matches!(self, CorkClassification::Singular(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarterError {
    #[error("DegenerateDiagram: {reason}")]
    DegenerateDiagram { reason: String },
    #[error("InvalidCork: arc {0} does not exist in the diagram")]
    InvalidCork(Arc),
}

/// Face structure, Euler characteristic, and genus of the supporting surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarterSurface {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub faces: Vec<Face>,
    pub euler_characteristic: i64,
    pub genus: usize,
    /// Crossing id of each vertex, in increasing order.
    pub crossing_ids: Vec<u32>,
    /// Arc of each edge, in edge-index order.
    pub edge_arcs: Vec<Arc>,
    /// Face index on each side of each edge: `[forward, backward]`.
    pub face_of_side: Vec<[usize; 2]>,
    /// Face index at each of the four corners of each vertex, in rotation
    /// order. Corners `k` and `k + 2` are opposite.
    pub corner_faces: Vec<[usize; 4]>,
    /// Endpoint vertices `(tail, head)` of each edge.
    pub edge_endpoints: Vec<(usize, usize)>,
}

impl CarterSurface {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Index into `edge_arcs` for an arc of a nonempty component.
    pub fn edge_index_of_arc(&self, arc: Arc) -> Option<usize> {
        self.edge_arcs.iter().position(|a| *a == arc)
    }
}

// Dart roles at a vertex. "Out" darts point along the strand direction,
// "back" darts point against it.
const OVER_OUT: usize = 0;
const OVER_BACK: usize = 1;
const UNDER_OUT: usize = 2;
const UNDER_BACK: usize = 3;

/// Counterclockwise order of the four strand-ends around a crossing, by role.
///
/// Convention: put the over strand along the x-axis pointing right. A
/// positive crossing has the under strand pointing up, a negative one down.
/// Reading counterclockwise from the outgoing over end gives the orders
/// below. The classical trefoil `O1+U2+O3+U1+O2+U3+` coming out at genus 0
/// pins this convention down.
fn rotation_order(sign: Sign) -> [usize; 4] {
    match sign {
        Sign::Plus => [OVER_OUT, UNDER_OUT, OVER_BACK, UNDER_BACK],
        Sign::Minus => [OVER_OUT, UNDER_BACK, OVER_BACK, UNDER_OUT],
    }
}

struct DiagramIndex {
    /// vertex index -> crossing id
    crossing_ids: Vec<u32>,
    /// vertex index -> sign
    signs: Vec<Sign>,
    /// (component, position) -> (vertex, passage), flattened
    occurrences: Vec<Vec<(usize, Passage)>>,
    arcs: Vec<Arc>,
}

fn index_diagram(diagram: &VirtualLinkDiagram) -> Result<DiagramIndex, CarterError> {
    let comps = diagram.components();
    let empties = comps.iter().filter(|c| c.is_empty()).count();
    if empties > 0 && comps.len() > 1 {
        return Err(CarterError::DegenerateDiagram {
            reason: "a zero-crossing component is only supported as the whole diagram"
                .to_string(),
        });
    }

    let mut crossing_ids: Vec<u32> = comps.iter().flatten().map(|l| l.id).collect();
    crossing_ids.sort_unstable();
    crossing_ids.dedup();
    let vertex_of = |id: u32| crossing_ids.binary_search(&id).expect("validated id");

    let mut signs = vec![Sign::Plus; crossing_ids.len()];
    let mut occurrences = Vec::with_capacity(comps.len());
    let mut arcs = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let mut occ = Vec::with_capacity(comp.len());
        for (pi, label) in comp.iter().enumerate() {
            let v = vertex_of(label.id);
            signs[v] = label.sign;
            occ.push((v, label.passage));
            arcs.push(Arc::new(ci, pi));
        }
        occurrences.push(occ);
    }

    // The supporting surface is only defined for diagrams whose underlying
    // 4-valent graph is connected; split diagrams have no single cellular
    // surface carrying them.
    if !comps.is_empty() && !crossing_ids.is_empty() {
        let mut comp_class: Vec<usize> = (0..comps.len()).collect();
        fn find(class: &mut Vec<usize>, i: usize) -> usize {
            if class[i] != i {
                let root = find(class, class[i]);
                class[i] = root;
                root
            } else {
                i
            }
        }
        let mut first_seen: std::collections::HashMap<u32, usize> =
            std::collections::HashMap::new();
        for (ci, comp) in comps.iter().enumerate() {
            for label in comp {
                match first_seen.entry(label.id) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(ci);
                    }
                    std::collections::hash_map::Entry::Occupied(e) => {
                        let a = find(&mut comp_class, *e.get());
                        let b = find(&mut comp_class, ci);
                        comp_class[a] = b;
                    }
                }
            }
        }
        let root = find(&mut comp_class, 0);
        for ci in 1..comps.len() {
            if find(&mut comp_class, ci) != root {
                return Err(CarterError::DegenerateDiagram {
                    reason: format!(
                        "components 0 and {ci} share no crossing; split diagrams have no \
                         supporting surface"
                    ),
                });
            }
        }
    }

    Ok(DiagramIndex {
        crossing_ids,
        signs,
        occurrences,
        arcs,
    })
}

/// Traces the faces of the supporting surface.
///
/// The zero-crossing unknot is special-cased as a sphere carrying one marked
/// disk face; for every diagram with at least one crossing the identity
/// `euler_characteristic = V - E + F` holds on the nose.
pub fn trace_faces(diagram: &VirtualLinkDiagram) -> Result<CarterSurface, CarterError> {
    let index = index_diagram(diagram)?;
    if index.crossing_ids.is_empty() {
        return Ok(CarterSurface {
            vertex_count: 0,
            edge_count: 0,
            faces: vec![Face { boundary: vec![] }],
            euler_characteristic: 2,
            genus: 0,
            crossing_ids: vec![],
            edge_arcs: vec![],
            face_of_side: vec![],
            corner_faces: vec![],
            edge_endpoints: vec![],
        });
    }

    let v_count = index.crossing_ids.len();
    let dart_count = 4 * v_count;

    // rho: next dart counterclockwise at the same vertex.
    // rot_pos: position of each dart in its vertex's rotation order.
    let mut rho = vec![0usize; dart_count];
    let mut rot_pos = vec![0usize; dart_count];
    for v in 0..v_count {
        let order = rotation_order(index.signs[v]);
        for k in 0..4 {
            rho[v * 4 + order[k]] = v * 4 + order[(k + 1) % 4];
            rot_pos[v * 4 + order[k]] = k;
        }
    }

    // alpha: the opposite dart along the same edge.
    let out_dart = |(v, passage): (usize, Passage)| {
        v * 4
            + match passage {
                Passage::Over => OVER_OUT,
                Passage::Under => UNDER_OUT,
            }
    };
    let back_dart = |(v, passage): (usize, Passage)| {
        v * 4
            + match passage {
                Passage::Over => OVER_BACK,
                Passage::Under => UNDER_BACK,
            }
    };

    let mut alpha = vec![usize::MAX; dart_count];
    let mut edge_of_dart = vec![usize::MAX; dart_count];
    let mut dart_is_forward = vec![false; dart_count];
    let mut edge_endpoints = Vec::with_capacity(index.arcs.len());
    let mut edge_index = 0usize;
    for occ in &index.occurrences {
        let n = occ.len();
        for p in 0..n {
            let from = occ[p];
            let to = occ[(p + 1) % n];
            let a = out_dart(from);
            let b = back_dart(to);
            alpha[a] = b;
            alpha[b] = a;
            edge_of_dart[a] = edge_index;
            edge_of_dart[b] = edge_index;
            dart_is_forward[a] = true;
            edge_endpoints.push((from.0, to.0));
            edge_index += 1;
        }
    }
    debug_assert!(alpha.iter().all(|&d| d != usize::MAX));

    // Faces are the orbits of rho . alpha.
    let mut face_of_dart = vec![usize::MAX; dart_count];
    let mut faces = Vec::new();
    let mut corner_faces = vec![[usize::MAX; 4]; v_count];
    for start in 0..dart_count {
        if face_of_dart[start] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut boundary = Vec::new();
        let mut d = start;
        loop {
            face_of_dart[d] = f;
            boundary.push(EdgeSide {
                arc: index.arcs[edge_of_dart[d]],
                direction: if dart_is_forward[d] {
                    Direction::Forward
                } else {
                    Direction::Backward
                },
            });
            let opposite = alpha[d];
            corner_faces[opposite / 4][rot_pos[opposite]] = f;
            d = rho[opposite];
            if d == start {
                break;
            }
        }
        faces.push(Face { boundary });
    }

    let e_count = edge_index;
    let mut face_of_side = vec![[usize::MAX; 2]; e_count];
    for d in 0..dart_count {
        let slot = if dart_is_forward[d] { 0 } else { 1 };
        face_of_side[edge_of_dart[d]][slot] = face_of_dart[d];
    }

    let euler = v_count as i64 - e_count as i64 + faces.len() as i64;
    debug_assert!(euler % 2 == 0, "rotation-system surfaces have even euler characteristic");
    debug_assert!(euler <= 2);
    let genus = ((2 - euler) / 2) as usize;

    Ok(CarterSurface {
        vertex_count: v_count,
        edge_count: e_count,
        faces,
        euler_characteristic: euler,
        genus,
        crossing_ids: index.crossing_ids,
        edge_arcs: index.arcs,
        face_of_side,
        corner_faces,
        edge_endpoints,
    })
}

/// Genus of the supporting surface of this diagram.
///
/// This is the supporting genus of the given diagram; it equals the minimal
/// genus of the underlying virtual knot only when a certificate guarantees
/// that (see [`crate::analysis::tg_certificate`]).
pub fn carter_genus(diagram: &VirtualLinkDiagram) -> Result<usize, CarterError> {
    Ok(trace_faces(diagram)?.genus)
}

/// Attempts to 2-color the faces so adjacent faces differ. Deterministic: the
/// lowest-index face of the surface is black.
pub fn checkerboard_coloring(
    diagram: &VirtualLinkDiagram,
) -> Result<ColoringOutcome, CarterError> {
    let surface = trace_faces(diagram)?;
    Ok(checkerboard_on(&surface))
}

pub(crate) fn checkerboard_on(surface: &CarterSurface) -> ColoringOutcome {
    let n = surface.face_count();
    // adjacency with the edge that realizes it, for odd-cycle reconstruction
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &[f1, f2] in &surface.face_of_side {
        if f1 == f2 {
            return ColoringOutcome::NotColorable { odd_cycle: vec![f1] };
        }
        adj[f1].push(f2);
        adj[f2].push(f1);
    }
    let mut color: Vec<Option<FaceColor>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(FaceColor::Black);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap();
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(c.other());
                        parent[g] = f;
                        queue.push_back(g);
                    }
                    Some(cg) if cg == c => {
                        return ColoringOutcome::NotColorable {
                            odd_cycle: odd_cycle(&parent, f, g),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    ColoringOutcome::Colorable(Coloring {
        assignment: color.into_iter().map(|c| c.unwrap()).collect(),
    })
}

fn odd_cycle(parent: &[usize], f: usize, g: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != x {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pf = path_to_root(f);
    let pg = path_to_root(g);
    // drop the shared tail, keep the meeting point once
    let mut i = pf.len();
    let mut j = pg.len();
    while i > 0 && j > 0 && pf[i - 1] == pg[j - 1] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pf[..=i.min(pf.len() - 1)].to_vec();
    let mut back: Vec<usize> = pg[..j].to_vec();
    back.reverse();
    cycle.extend(back);
    cycle
}

/// Every arc whose two sides lie on a single face.
pub fn find_singular_witnesses(
    diagram: &VirtualLinkDiagram,
) -> Result<Vec<SingularWitness>, CarterError> {
    let surface = trace_faces(diagram)?;
    Ok(witnesses_on(&surface))
}

pub(crate) fn witnesses_on(surface: &CarterSurface) -> Vec<SingularWitness> {
    surface
        .face_of_side
        .iter()
        .enumerate()
        .filter(|(_, [f1, f2])| f1 == f2)
        .map(|(e, _)| SingularWitness {
            edge: surface.edge_arcs[e],
        })
        .collect()
}

/// Classifies a cork at the diagram level: singular exactly when its arc is a
/// singular witness.
pub fn classify_cork(
    diagram: &VirtualLinkDiagram,
    cork: &Cork,
) -> Result<CorkClassification, CarterError> {
    if !cork.arc.is_valid_in(diagram) {
        return Err(CarterError::InvalidCork(cork.arc));
    }
    let surface = trace_faces(diagram)?;
    Ok(classify_on(&surface, cork))
}

pub(crate) fn classify_on(surface: &CarterSurface, cork: &Cork) -> CorkClassification {
    match surface.edge_index_of_arc(cork.arc) {
        Some(e) => {
            let [f1, f2] = surface.face_of_side[e];
            if f1 == f2 {
                CorkClassification::Singular(SingularWitness { edge: cork.arc })
            } else {
                CorkClassification::NonsingularAtDiagram
            }
        }
        // a zero-crossing component has no edges, hence no witnesses
        None => CorkClassification::NonsingularAtDiagram,
    }
}

impl Triple {
    /// A triple declared at the supporting genus of its diagram.
    pub fn new(diagram: VirtualLinkDiagram, cork: Cork) -> Result<Self, CarterError> {
        if !cork.arc.is_valid_in(&diagram) {
            return Err(CarterError::InvalidCork(cork.arc));
        }
        let declared_genus = carter_genus(&diagram)?;
        Ok(Triple {
            diagram,
            declared_genus,
            cork,
        })
    }

    /// A triple declared at a genus below the supporting genus, recording a
    /// destabilized realization.
    pub fn with_declared_genus(
        diagram: VirtualLinkDiagram,
        cork: Cork,
        declared_genus: usize,
    ) -> Result<Self, CarterError> {
        if !cork.arc.is_valid_in(&diagram) {
            return Err(CarterError::InvalidCork(cork.arc));
        }
        let supporting = carter_genus(&diagram)?;
        if declared_genus > supporting {
            return Err(CarterError::DegenerateDiagram {
                reason: format!(
                    "declared genus {declared_genus} exceeds supporting genus {supporting}"
                ),
            });
        }
        Ok(Triple {
            diagram,
            declared_genus,
            cork,
        })
    }

    pub fn classify_cork(&self) -> Result<CorkClassification, CarterError> {
        classify_cork(&self.diagram, &self.cork)
    }
}
