//! Diagram predicates: alternating, reduced, weakly prime, twist regions,
//! alternating corks, and the tg-hyperbolicity certificate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carter::{trace_faces, CarterError, Face};
use crate::gauss::{Arc, Cork, VirtualLinkDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("MultiComponentUnsupported: {0}")]
    MultiComponentUnsupported(String),
    #[error("NotAlternatingReduced: alternating corks require a reduced alternating diagram")]
    NotAlternatingReduced,
    #[error("CyclicBigonChain: bigons through crossings {crossings:?} close into a cycle")]
    CyclicBigonChain { crossings: Vec<u32> },
    #[error("OverlappingRegions: crossing {crossing} lies on two transverse bigon chains")]
    OverlappingRegions { crossing: u32 },
    #[error(transparent)]
    Carter(#[from] CarterError),
}

/// A maximal chain of end-to-end bigons, or a lone crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRegion {
    /// Crossing ids in chain order.
    pub crossings: Vec<u32>,
    /// The bigon faces chaining consecutive crossings (empty for a lone
    /// crossing).
    pub bigons: Vec<Face>,
}

impl TwistRegion {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

/// Verdict of the tg-hyperbolicity certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Alternating, weakly prime, reduced, and of positive supporting genus.
    /// The supporting genus is then the minimal genus of the knot.
    CertifiedTgHyperbolic,
    /// The sufficient conditions do not all hold. Never a certificate of
    /// non-hyperbolicity.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateResult {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub reasons: Vec<PredicateResult>,
    pub genus: usize,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedTgHyperbolic
    }
}

/// True iff the passage markers strictly alternate O, U, O, U, ... cyclically
/// along every component. Empty components are vacuously alternating.
pub fn is_alternating(diagram: &VirtualLinkDiagram) -> bool {
    diagram.components().iter().all(|comp| {
        comp.len() % 2 == 0
            && comp
                .iter()
                .zip(comp.iter().cycle().skip(1))
                .all(|(a, b)| a.passage != b.passage)
    })
}

/// True iff no crossing is nugatory, i.e. no crossing has two opposite
/// corners on the same face.
pub fn is_reduced(diagram: &VirtualLinkDiagram) -> Result<bool, CarterError> {
    let surface = trace_faces(diagram)?;
    Ok(surface
        .corner_faces
        .iter()
        .all(|c| c[0] != c[2] && c[1] != c[3]))
}

/// True iff the code has no connect-summand interval.
///
/// An interval of the cyclic code is closed when every crossing occurring
/// inside has both of its occurrences inside; a closed proper interval is cut
/// off by a circle meeting the diagram exactly twice. A single crossing whose
/// partner lies outside never closes an interval, so lone crossings do not
/// fail; the one-crossing kink diagram does, since its loop is a summand disk
/// that the interval scan has no room to see.
pub fn is_weakly_prime(diagram: &VirtualLinkDiagram) -> Result<bool, AnalysisError> {
    if diagram.component_count() != 1 {
        return Err(AnalysisError::MultiComponentUnsupported(
            "weak primality is defined through the Gauss code of a knot".to_string(),
        ));
    }
    let word = &diagram.components()[0];
    let n = word.len();
    if n == 0 {
        return Ok(true);
    }
    if diagram.crossing_count() == 1 {
        return Ok(false);
    }
    for start in 0..n {
        let mut counts = std::collections::HashMap::new();
        let mut open = 0usize;
        for len in 1..n {
            let label = &word[(start + len - 1) % n];
            let entry = counts.entry(label.id).or_insert(0usize);
            *entry += 1;
            match *entry {
                1 => open += 1,
                2 => open -= 1,
                _ => unreachable!("ids occur twice"),
            }
            if open == 0 && len >= 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Groups the crossings into maximal chains of end-to-end bigons.
///
/// Bigons whose two edges form a loop at one crossing (a kink's curl) do not
/// chain anything. Two bigons meeting at a crossing continue one chain only
/// when they sit on opposite corners there.
pub fn twist_regions(diagram: &VirtualLinkDiagram) -> Result<Vec<TwistRegion>, AnalysisError> {
    let surface = trace_faces(diagram)?;
    let v_count = surface.vertex_count;

    // bigon face -> its two endpoint vertices
    let mut bigons: Vec<(usize, usize, usize)> = Vec::new(); // (face, u, v)
    for (f, face) in surface.faces.iter().enumerate() {
        if !face.is_bigon() {
            continue;
        }
        let e0 = surface
            .edge_index_of_arc(face.boundary[0].arc)
            .expect("bigon edge");
        let (u, v) = surface.edge_endpoints[e0];
        if u == v {
            continue; // curl at a kink
        }
        bigons.push((f, u, v));
    }

    // bigon at each corner of each vertex
    let mut corner_bigon = vec![[None::<usize>; 4]; v_count];
    for (bi, &(f, u, v)) in bigons.iter().enumerate() {
        for vertex in [u, v] {
            for (k, &corner_face) in surface.corner_faces[vertex].iter().enumerate() {
                if corner_face == f {
                    corner_bigon[vertex][k] = Some(bi);
                }
            }
        }
    }

    // Continuing a chain through `vertex` from bigon `bi` means stepping to
    // the bigon at the opposite corner. A bigon on a transverse corner marks
    // an overlap of two chains.
    let continuation = |vertex: usize, bi: usize| -> Result<Option<usize>, AnalysisError> {
        let corners = &corner_bigon[vertex];
        let k = (0..4)
            .find(|&k| corners[k] == Some(bi))
            .expect("bigon touches its endpoint");
        for j in [(k + 1) % 4, (k + 3) % 4] {
            if corners[j].is_some() && corners[j] != Some(bi) {
                return Err(AnalysisError::OverlappingRegions {
                    crossing: surface.crossing_ids[vertex],
                });
            }
        }
        Ok(corners[(k + 2) % 4].filter(|&next| next != bi))
    };

    let mut assigned_bigon = vec![false; bigons.len()];
    let mut assigned_vertex = vec![false; v_count];
    let mut regions = Vec::new();
    for start in 0..bigons.len() {
        if assigned_bigon[start] {
            continue;
        }
        // walk backwards from `start` until the chain stops
        let mut first = start;
        let mut tail_vertex = bigons[start].1;
        while let Some(prev) = continuation(tail_vertex, first)? {
            if prev == start {
                // closed up: collect the cycle's crossings for the report
                let mut cycle = vec![surface.crossing_ids[tail_vertex]];
                let mut at = other_endpoint(&bigons, start, tail_vertex);
                let mut via = start;
                while at != tail_vertex {
                    cycle.push(surface.crossing_ids[at]);
                    let next = continuation(at, via)?.expect("cycle continues");
                    at = other_endpoint(&bigons, next, at);
                    via = next;
                }
                return Err(AnalysisError::CyclicBigonChain { crossings: cycle });
            }
            tail_vertex = other_endpoint(&bigons, prev, tail_vertex);
            first = prev;
        }
        // walk forward from `first`, collecting the chain
        let mut chain_bigons = vec![first];
        let mut chain_vertices = vec![tail_vertex, other_endpoint(&bigons, first, tail_vertex)];
        let mut current = first;
        loop {
            let head = *chain_vertices.last().unwrap();
            match continuation(head, current)? {
                Some(next) => {
                    if next == first {
                        return Err(AnalysisError::CyclicBigonChain {
                            crossings: chain_vertices
                                .iter()
                                .map(|&v| surface.crossing_ids[v])
                                .collect(),
                        });
                    }
                    chain_bigons.push(next);
                    chain_vertices.push(other_endpoint(&bigons, next, head));
                    current = next;
                }
                None => break,
            }
        }
        for &bi in &chain_bigons {
            assigned_bigon[bi] = true;
        }
        for &v in &chain_vertices {
            if assigned_vertex[v] {
                return Err(AnalysisError::OverlappingRegions {
                    crossing: surface.crossing_ids[v],
                });
            }
            assigned_vertex[v] = true;
        }
        regions.push(TwistRegion {
            crossings: chain_vertices
                .iter()
                .map(|&v| surface.crossing_ids[v])
                .collect(),
            bigons: chain_bigons
                .iter()
                .map(|&bi| surface.faces[bigons[bi].0].clone())
                .collect(),
        });
    }

    // lone crossings
    for (v, assigned) in assigned_vertex.iter().enumerate() {
        if !assigned {
            regions.push(TwistRegion {
                crossings: vec![surface.crossing_ids[v]],
                bigons: vec![],
            });
        }
    }

    regions.sort_by_key(|r| *r.crossings.iter().min().unwrap());
    Ok(regions)
}

fn other_endpoint(bigons: &[(usize, usize, usize)], bi: usize, vertex: usize) -> usize {
    let (_, u, v) = bigons[bi];
    if u == vertex {
        v
    } else {
        u
    }
}

/// All arcs of a reduced alternating diagram, as corks. When the supporting
/// genus is at least one, every one of them classifies nonsingular.
pub fn alternating_corks(diagram: &VirtualLinkDiagram) -> Result<Vec<Cork>, AnalysisError> {
    if !is_alternating(diagram) || !is_reduced(diagram)? {
        return Err(AnalysisError::NotAlternatingReduced);
    }
    Ok(diagram.arcs().into_iter().map(Cork::new).collect())
}

/// Sufficient-condition certificate: alternating, weakly prime, reduced, and
/// supporting genus at least one. When it holds, the supporting genus is the
/// minimal genus and the knot is non-classical; when it does not, nothing is
/// claimed.
pub fn tg_certificate(diagram: &VirtualLinkDiagram) -> Result<Certificate, AnalysisError> {
    let alternating = is_alternating(diagram);
    let weakly_prime = is_weakly_prime(diagram)?;
    let reduced = is_reduced(diagram)?;
    let genus = crate::carter::carter_genus(diagram)?;
    let reasons = vec![
        PredicateResult {
            name: "alternating".to_string(),
            holds: alternating,
        },
        PredicateResult {
            name: "weakly_prime".to_string(),
            holds: weakly_prime,
        },
        PredicateResult {
            name: "reduced".to_string(),
            holds: reduced,
        },
        PredicateResult {
            name: "genus_at_least_one".to_string(),
            holds: genus >= 1,
        },
    ];
    let verdict = if reasons.iter().all(|r| r.holds) {
        Verdict::CertifiedTgHyperbolic
    } else {
        Verdict::Unknown
    };
    Ok(Certificate {
        verdict,
        reasons,
        genus,
    })
}

/// The arcs of a diagram paired with their cork classification.
pub fn cork_classifications(
    diagram: &VirtualLinkDiagram,
) -> Result<Vec<(Arc, crate::carter::CorkClassification)>, CarterError> {
    let surface = trace_faces(diagram)?;
    Ok(diagram
        .arcs()
        .into_iter()
        .map(|arc| (arc, crate::carter::classify_on(&surface, &Cork::new(arc))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse;

    fn d(code: &str) -> VirtualLinkDiagram {
        parse(code).unwrap()
    }

    #[test]
    fn alternating_examples() {
        assert!(is_alternating(&d("O1+U2+O3+U1+O2+U3+")));
        assert!(!is_alternating(&d("O1+O2+U1+U2+")));
        assert!(is_alternating(&d("")));
        // a kink alternates by passage pattern; it is reducedness that fails
        assert!(is_alternating(&d("O1+U1+")));
    }

    #[test]
    fn alternating_invariant_under_symmetries() {
        for code in ["O1+U2+O3+U1+O2+U3+", "O1+O2+U1+U2+"] {
            let diagram = d(code);
            let a = is_alternating(&diagram);
            assert_eq!(is_alternating(&diagram.mirror_reflect()), a);
            assert_eq!(is_alternating(&diagram.reverse_orientation(0).unwrap()), a);
        }
    }

    #[test]
    fn reduced_examples() {
        assert!(is_reduced(&d("O1+U2+O3+U1+O2+U3+")).unwrap());
        assert!(!is_reduced(&d("O1+U1+")).unwrap());
        assert!(is_reduced(&d("")).unwrap());
    }

    #[test]
    fn weakly_prime_examples() {
        assert!(is_weakly_prime(&d("O1+U2+O3+U1+O2+U3+")).unwrap());
        assert!(!is_weakly_prime(&d("O1+U1+")).unwrap());
        assert!(is_weakly_prime(&d("")).unwrap());
        // the virtual trefoil has no closed proper interval
        assert!(is_weakly_prime(&d("O1+O2+U1+U2+")).unwrap());
        // a concatenated code is never weakly prime
        assert!(!is_weakly_prime(&d("O1+O2+U1+U2+O3+O4+U3+U4+")).unwrap());
        assert!(is_weakly_prime(&d("O1+U2+/U1+O2+")).is_err());
    }

    #[test]
    fn trefoil_bigons_close_into_a_cycle() {
        let err = twist_regions(&d("O1+U2+O3+U1+O2+U3+")).unwrap_err();
        assert!(matches!(err, AnalysisError::CyclicBigonChain { .. }));
    }

    #[test]
    fn kink_curl_does_not_chain() {
        let regions = twist_regions(&d("O1+U1+")).unwrap();
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].crossings, vec![1]);
        assert!(regions[0].bigons.is_empty());
    }

    #[test]
    fn virtual_trefoil_is_one_region() {
        let regions = twist_regions(&d("O1+O2+U1+U2+")).unwrap();
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].crossings.len(), 2);
        assert_eq!(regions[0].bigons.len(), 1);
    }

    #[test]
    fn twist_regions_partition_crossings() {
        for code in ["O1+O2+U1+U2+", "O1+U1+", "O1-U1-", ""] {
            let diagram = d(code);
            let regions = twist_regions(&diagram).unwrap();
            let mut ids: Vec<u32> = regions.iter().flat_map(|r| r.crossings.clone()).collect();
            ids.sort_unstable();
            ids.dedup();
            assert_eq!(ids.len(), diagram.crossing_count());
        }
    }

    #[test]
    fn alternating_corks_requires_reduced_alternating() {
        assert!(matches!(
            alternating_corks(&d("O1+O2+U1+U2+")),
            Err(AnalysisError::NotAlternatingReduced)
        ));
        let corks = alternating_corks(&d("O1+U2+O3+U1+O2+U3+")).unwrap();
        assert_eq!(corks.len(), 6);
    }

    #[test]
    fn certificate_examples() {
        let cert = tg_certificate(&d("O1+O2+U1+U2+")).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
        assert!(cert
            .reasons
            .iter()
            .any(|r| r.name == "alternating" && !r.holds));

        let cert = tg_certificate(&d("O1+U2+O3+U1+O2+U3+")).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
        assert!(cert
            .reasons
            .iter()
            .any(|r| r.name == "genus_at_least_one" && !r.holds));
    }
}
