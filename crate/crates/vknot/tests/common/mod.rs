//! Shared test support: a deterministic generator of random valid codes, an
//! independent face-tracing implementation to check the primary one against,
//! and small-code enumeration.
//!
//! The oracle here must stay independent of `vknot::carter`: it derives the
//! rotation at each crossing from explicit ray angles and walks faces with
//! the face kept on the left (the inverse rotation), where the primary uses
//! hardcoded cyclic role tables and the forward rotation.

#![allow(dead_code)]

use std::collections::HashMap;

use vknot::gauss::{CrossingLabel, Passage, Sign, VirtualLinkDiagram};

/// SplitMix64: deterministic, seedable, good enough for test sampling.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A uniformly shuffled valid single-component signed Gauss code with
/// `crossings` crossings: any arrangement of the occurrence multiset is a
/// valid virtual knot diagram.
pub fn random_knot_code(rng: &mut Rng, crossings: usize) -> VirtualLinkDiagram {
    let mut labels = Vec::with_capacity(2 * crossings);
    for id in 1..=crossings as u32 {
        let sign = if rng.flip() { Sign::Plus } else { Sign::Minus };
        labels.push(CrossingLabel::new(id, sign, Passage::Over));
        labels.push(CrossingLabel::new(id, sign, Passage::Under));
    }
    for i in (1..labels.len()).rev() {
        labels.swap(i, rng.below(i + 1));
    }
    VirtualLinkDiagram::new(vec![labels]).expect("shuffled pairing is valid")
}

/// Every single-component diagram with `crossings` crossings, up to rotation:
/// position 0 is pinned to O1 and the remaining occurrences and signs are
/// enumerated exhaustively.
pub fn enumerate_knot_codes(crossings: usize) -> Vec<VirtualLinkDiagram> {
    let mut rest = Vec::new();
    rest.push(CrossingLabel::new(1, Sign::Plus, Passage::Under));
    for id in 2..=crossings as u32 {
        rest.push(CrossingLabel::new(id, Sign::Plus, Passage::Over));
        rest.push(CrossingLabel::new(id, Sign::Plus, Passage::Under));
    }
    let mut orders = Vec::new();
    permute(&mut rest, 0, &mut orders);
    let mut out = Vec::new();
    for order in orders {
        for signs in 0..(1u32 << crossings) {
            let mut word = vec![CrossingLabel::new(1, Sign::Plus, Passage::Over)];
            word.extend(order.iter().copied());
            for label in &mut word {
                if signs >> (label.id - 1) & 1 == 1 {
                    label.sign = Sign::Minus;
                }
            }
            out.push(VirtualLinkDiagram::new(vec![word]).expect("valid enumeration"));
        }
    }
    out.sort_by_key(|d| d.serialize());
    out.dedup();
    out
}

fn permute(items: &mut Vec<CrossingLabel>, k: usize, out: &mut Vec<Vec<CrossingLabel>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Ray directions out of a crossing, as angles in degrees with the over
/// strand along the x-axis pointing right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Ray {
    OverOut,
    OverBack,
    UnderOut,
    UnderBack,
}

fn angle(ray: Ray, sign: Sign) -> u16 {
    match (ray, sign) {
        (Ray::OverOut, _) => 0,
        (Ray::OverBack, _) => 180,
        (Ray::UnderOut, Sign::Plus) => 90,
        (Ray::UnderBack, Sign::Plus) => 270,
        (Ray::UnderOut, Sign::Minus) => 270,
        (Ray::UnderBack, Sign::Minus) => 90,
    }
}

/// A dart of the oracle's map: a ray at a crossing, identified by crossing id.
type Dart = (u32, Ray);

/// Independent face count, genus, and witness arcs.
pub struct OracleSurface {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
    /// (component, position) arcs whose two sides lie on one face.
    pub witness_arcs: Vec<(usize, usize)>,
    /// True iff no crossing has two opposite quadrants on one face.
    pub reduced: bool,
}

/// Second face-tracing implementation: faces are walked keeping the face on
/// the left, stepping from the arrival ray to the previous ray
/// counterclockwise (equivalently, the next clockwise).
pub fn oracle_trace(diagram: &VirtualLinkDiagram) -> Option<OracleSurface> {
    let comps = diagram.components();
    if comps.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut signs: HashMap<u32, Sign> = HashMap::new();
    for label in comps.iter().flatten() {
        signs.insert(label.id, label.sign);
    }
    let vertices = signs.len();
    if vertices == 0 {
        return None;
    }

    // counterclockwise ray order at each crossing, from sorted angles
    let mut ccw: HashMap<u32, Vec<Ray>> = HashMap::new();
    for (&id, &sign) in &signs {
        let mut rays = vec![Ray::OverOut, Ray::OverBack, Ray::UnderOut, Ray::UnderBack];
        rays.sort_by_key(|&r| angle(r, sign));
        ccw.insert(id, rays);
    }
    let prev_ccw = |dart: Dart| -> Dart {
        let order = &ccw[&dart.0];
        let k = order.iter().position(|&r| r == dart.1).unwrap();
        (dart.0, order[(k + 3) % 4])
    };

    // edges: consecutive occurrences; `mate` joins a departing ray to the
    // arriving ray it meets, and `arc_of` names the arc both darts border
    let mut mate: HashMap<Dart, Dart> = HashMap::new();
    let mut arc_of: HashMap<Dart, (usize, usize)> = HashMap::new();
    let mut edges = 0usize;
    for (ci, comp) in comps.iter().enumerate() {
        let n = comp.len();
        for p in 0..n {
            let from = comp[p];
            let to = comp[(p + 1) % n];
            let out = (
                from.id,
                match from.passage {
                    Passage::Over => Ray::OverOut,
                    Passage::Under => Ray::UnderOut,
                },
            );
            let back = (
                to.id,
                match to.passage {
                    Passage::Over => Ray::OverBack,
                    Passage::Under => Ray::UnderBack,
                },
            );
            mate.insert(out, back);
            mate.insert(back, out);
            arc_of.insert(out, (ci, p));
            arc_of.insert(back, (ci, p));
            edges += 1;
        }
    }

    // left-walk the faces; the corner swept at each arrival starts at the
    // exit ray and runs counterclockwise to the arrival ray
    let mut face_of: HashMap<Dart, usize> = HashMap::new();
    let mut corner_face: HashMap<Dart, usize> = HashMap::new();
    let mut all_darts: Vec<Dart> = mate.keys().copied().collect();
    all_darts.sort_by_key(|&(id, ray)| (id, angle(ray, signs[&id])));
    let mut faces = 0usize;
    for &start in &all_darts {
        if face_of.contains_key(&start) {
            continue;
        }
        let mut dart = start;
        loop {
            face_of.insert(dart, faces);
            let arrival = mate[&dart];
            dart = prev_ccw(arrival);
            corner_face.insert(dart, faces);
            if dart == start {
                break;
            }
        }
        faces += 1;
    }

    let reduced = signs.keys().all(|&id| {
        corner_face[&(id, Ray::OverOut)] != corner_face[&(id, Ray::OverBack)]
            && corner_face[&(id, Ray::UnderOut)] != corner_face[&(id, Ray::UnderBack)]
    });

    let chi = vertices as i64 - edges as i64 + faces as i64;
    if chi % 2 != 0 || chi > 2 {
        return None;
    }
    let mut witness_arcs: Vec<(usize, usize)> = Vec::new();
    for (&dart, &other) in &mate {
        if dart < other && face_of[&dart] == face_of[&other] {
            witness_arcs.push(arc_of[&dart]);
        }
    }
    witness_arcs.sort_unstable();
    witness_arcs.dedup();

    Some(OracleSurface {
        vertices,
        edges,
        faces,
        genus: ((2 - chi) / 2) as usize,
        witness_arcs,
        reduced,
    })
}

/// A uniformly random alternating single-component code: overcrossings at
/// even positions, undercrossings at odd, independent permutations and signs.
pub fn random_alternating_code(rng: &mut Rng, crossings: usize) -> VirtualLinkDiagram {
    let c = crossings;
    let mut overs: Vec<u32> = (1..=c as u32).collect();
    let mut unders: Vec<u32> = (1..=c as u32).collect();
    for i in (1..c).rev() {
        overs.swap(i, rng.below(i + 1));
        unders.swap(i, rng.below(i + 1));
    }
    let signs: Vec<Sign> = (0..c)
        .map(|_| if rng.flip() { Sign::Plus } else { Sign::Minus })
        .collect();
    let mut word = Vec::with_capacity(2 * c);
    for k in 0..c {
        let sign_of = |id: u32| signs[(id - 1) as usize];
        word.push(CrossingLabel::new(overs[k], sign_of(overs[k]), Passage::Over));
        word.push(CrossingLabel::new(
            unders[k],
            sign_of(unders[k]),
            Passage::Under,
        ));
    }
    VirtualLinkDiagram::new(vec![word]).expect("alternating pairing is valid")
}

/// Two fixed certified diagrams: reduced, alternating, weakly prime,
/// supporting genus one. Six crossings is the smallest size at which such
/// codes exist.
pub const CERTIFIED_A: &str = "O1+U5+O2+U4+O5+U6+O4+U3+O6+U1+O3+U2+";
pub const CERTIFIED_B: &str = "O1+U4+O5+U1+O6+U5+O2+U6+O3+U2+O4+U3+";

/// A three-crossing diagram of supporting genus one with both singular
/// (0:1, 0:3) and nonsingular arcs, standing in for a small genus-one knot
/// in composition examples.
pub const THREE_CROSSING_GENUS_ONE: &str = "O1+O2+O3+U2+U3+U1+";

/// Every alternating single-component code with `crossings` crossings, up to
/// rotation: overcrossings at even positions with id 1 pinned first,
/// undercrossings at odd positions, all sign patterns.
pub fn enumerate_alternating_codes(crossings: usize) -> Vec<VirtualLinkDiagram> {
    let c = crossings;
    let mut over_rest: Vec<u32> = (2..=c as u32).collect();
    let mut over_orders = Vec::new();
    permute_ids(&mut over_rest, 0, &mut over_orders);
    let mut under: Vec<u32> = (1..=c as u32).collect();
    let mut under_orders = Vec::new();
    permute_ids(&mut under, 0, &mut under_orders);

    let mut out = Vec::new();
    for over in &over_orders {
        for under in &under_orders {
            for signs in 0..(1u32 << c) {
                let sign_of = |id: u32| {
                    if signs >> (id - 1) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                };
                let mut word = Vec::with_capacity(2 * c);
                for k in 0..c {
                    let o_id = if k == 0 { 1 } else { over[k - 1] };
                    word.push(CrossingLabel::new(o_id, sign_of(o_id), Passage::Over));
                    word.push(CrossingLabel::new(
                        under[k],
                        sign_of(under[k]),
                        Passage::Under,
                    ));
                }
                out.push(VirtualLinkDiagram::new(vec![word]).expect("valid alternating code"));
            }
        }
    }
    out.sort_by_key(|d| d.serialize());
    out.dedup();
    out
}

fn permute_ids(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_ids(items, k + 1, out);
        items.swap(k, i);
    }
}
