//! Composition of triples, cork doubles, twist insertion, augmentation, and
//! the increasing-volume sequence of compositions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{tg_certificate, AnalysisError, TwistRegion};
use crate::carter::{carter_genus, classify_cork, CarterError, CorkClassification};
use crate::gauss::{
    Arc, Cork, CrossingLabel, GaussError, Passage, Sign, Triple, VirtualLinkDiagram,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("InvalidArc: {0} does not exist in the diagram")]
    InvalidArc(Arc),
    #[error("CorkNotSingular: cork at {0} classifies nonsingular at the diagram level")]
    CorkNotSingular(Arc),
    #[error("CorkSingular: cork at {0} classifies singular at the diagram level")]
    CorkSingular(Arc),
    #[error("NotCertifiedAlternating: {0}")]
    NotCertifiedAlternating(String),
    #[error("UnknownCrossing: crossing {0} does not occur in the diagram")]
    UnknownCrossing(u32),
    #[error("InvalidTwistCount: at least one twist pair is required")]
    InvalidTwistCount,
    #[error(transparent)]
    Carter(#[from] CarterError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Whether a composition went through singular or nonsingular corks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositionKind {
    Nonsingular,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositionWarning {
    /// Both corks classify singular; the nonsingular construction still
    /// applies but the singular one would drop the genus by one.
    BothCorksSingular,
}

/// Outcome of composing two triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionResult {
    pub diagram: VirtualLinkDiagram,
    pub kind: CompositionKind,
    /// Genus of the realization the construction guarantees: the sum of the
    /// factors' declared genera, less one for singular composition.
    pub declared_genus: usize,
    /// Supporting genus of `diagram` as written. Splicing through two
    /// witness arcs destabilizes the supporting surface by one on its own,
    /// so for factors declared at their supporting genus this agrees with
    /// `declared_genus` in both kinds of composition.
    pub carter_genus: usize,
    pub factors: (Triple, Triple),
    pub orientation_matched: bool,
    pub warnings: Vec<CompositionWarning>,
}

impl CompositionResult {
    /// True when the declared genus records a destabilized realization that
    /// the spliced code itself does not exhibit.
    pub fn is_destabilized(&self) -> bool {
        self.declared_genus != self.carter_genus
    }
}

/// A diagram with trivial circles added around twist regions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedLink {
    pub diagram: VirtualLinkDiagram,
    /// Indices of the augmenting components.
    pub augmenting_components: Vec<usize>,
    /// Half-twist normalization per augmenting component (0 or 1). Cutting
    /// along the twice-punctured disk an augmenting circle bounds and
    /// regluing with a half twist changes the encircled crossing count by one
    /// without changing the complement, so the flag is bookkeeping rather
    /// than extra crossings.
    pub half_twist_flags: Vec<u8>,
}

/// Output of the increasing-volume sequence construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceResult {
    /// The augmented, twisted factor before composition; each augmenting
    /// component contributes a cusp.
    pub augmented_link: AugmentedLink,
    pub composition: CompositionResult,
}

fn require_arc(diagram: &VirtualLinkDiagram, arc: Arc) -> Result<(), ComposeError> {
    if arc.is_valid_in(diagram) {
        Ok(())
    } else {
        Err(ComposeError::InvalidArc(arc))
    }
}

/// Cuts the component at the gap after `position` and returns the linear
/// sequence starting just past the cut.
fn cut_at(component: &[CrossingLabel], position: usize) -> Vec<CrossingLabel> {
    let n = component.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(component[(position + 1 + k) % n]);
    }
    out
}

fn renumber(diagram: &VirtualLinkDiagram, offset: u32) -> Vec<Vec<CrossingLabel>> {
    diagram
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|label| CrossingLabel {
                    id: label.id + offset,
                    ..*label
                })
                .collect()
        })
        .collect()
}

/// Glues two diagrams into one by cutting each at an arc and joining the cut
/// ends, the diagram-level realization of removing both corks and
/// identifying their boundaries. Crossing ids of `d2` are shifted past those
/// of `d1`; the open second component is inserted into the first's arc.
pub fn splice(
    d1: &VirtualLinkDiagram,
    a1: Arc,
    d2: &VirtualLinkDiagram,
    a2: Arc,
) -> Result<VirtualLinkDiagram, ComposeError> {
    require_arc(d1, a1)?;
    require_arc(d2, a2)?;
    let offset = d1.max_crossing_id();
    let d2_components = renumber(d2, offset);

    let mut merged = cut_at(&d1.components()[a1.component], a1.position);
    merged.extend(cut_at(&d2_components[a2.component], a2.position));

    let mut components = Vec::with_capacity(d1.component_count() + d2.component_count() - 1);
    for (ci, comp) in d1.components().iter().enumerate() {
        if ci == a1.component {
            components.push(merged.clone());
        } else {
            components.push(comp.clone());
        }
    }
    for (ci, comp) in d2_components.into_iter().enumerate() {
        if ci != a2.component {
            components.push(comp);
        }
    }
    Ok(VirtualLinkDiagram::new(components)?)
}

/// Finds the rotation by which `canonical` is obtained from `raw`.
fn rotation_offset(raw: &[CrossingLabel], canonical: &[CrossingLabel]) -> usize {
    let n = raw.len();
    if n == 0 {
        return 0;
    }
    (0..n)
        .find(|&r| (0..n).all(|k| raw[(r + k) % n] == canonical[k]))
        .expect("canonical form is a rotation of the raw sequence")
}

/// Reverses the orientation of the component carrying `arc` and returns the
/// reversed diagram together with the arc's new address.
fn reverse_component_tracking_arc(
    diagram: &VirtualLinkDiagram,
    arc: Arc,
) -> Result<(VirtualLinkDiagram, Arc), ComposeError> {
    require_arc(diagram, arc)?;
    let comp = &diagram.components()[arc.component];
    let n = comp.len();
    let reversed = diagram.reverse_orientation(arc.component)?;
    if n == 0 {
        return Ok((reversed, arc));
    }
    // gap after position p lies, in the raw reversed sequence, at position
    // n - 2 - p (mod n); then account for canonical rotation
    let mut raw: Vec<CrossingLabel> = comp.clone();
    raw.reverse();
    let shift = rotation_offset(&raw, &reversed.components()[arc.component]);
    let raw_position = (2 * n - 2 - arc.position) % n;
    let position = (raw_position + n - shift) % n;
    Ok((
        reversed,
        Arc {
            component: arc.component,
            position,
        },
    ))
}

fn classified(triple: &Triple) -> Result<CorkClassification, ComposeError> {
    require_arc(&triple.diagram, triple.cork.arc)?;
    Ok(classify_cork(&triple.diagram, &triple.cork)?)
}

fn build_result(
    t1: &Triple,
    t2: &Triple,
    orientation_matched: bool,
    kind: CompositionKind,
    declared_genus: usize,
    warnings: Vec<CompositionWarning>,
) -> Result<CompositionResult, ComposeError> {
    let (d2, a2) = if orientation_matched {
        (t2.diagram.clone(), t2.cork.arc)
    } else {
        reverse_component_tracking_arc(&t2.diagram, t2.cork.arc)?
    };
    let diagram = splice(&t1.diagram, t1.cork.arc, &d2, a2)?;
    let carter = carter_genus(&diagram)?;
    Ok(CompositionResult {
        diagram,
        kind,
        declared_genus,
        carter_genus: carter,
        factors: (t1.clone(), t2.clone()),
        orientation_matched,
        warnings,
    })
}

/// Composes through the corks, removing each and gluing the boundaries. The
/// genus adds. Defined whenever at least one cork is nonsingular; when both
/// are singular the composition still goes through but a warning notes that
/// the singular construction would apply instead.
pub fn compose_nonsingular(
    t1: &Triple,
    t2: &Triple,
    orientation_matched: bool,
) -> Result<CompositionResult, ComposeError> {
    let c1 = classified(t1)?;
    let c2 = classified(t2)?;
    let mut warnings = Vec::new();
    if c1.is_singular() && c2.is_singular() {
        warnings.push(CompositionWarning::BothCorksSingular);
    }
    build_result(
        t1,
        t2,
        orientation_matched,
        CompositionKind::Nonsingular,
        t1.declared_genus + t2.declared_genus,
        warnings,
    )
}

/// Composes by cutting along the singular curves through the corks. Both
/// corks must classify singular. The construction destabilizes once, so the
/// declared genus is one below the sum of the factors' genera; the spliced
/// code's own supporting surface destabilizes the same way.
pub fn compose_singular(
    t1: &Triple,
    t2: &Triple,
    orientation_matched: bool,
) -> Result<CompositionResult, ComposeError> {
    for t in [t1, t2] {
        if !classified(t)?.is_singular() {
            return Err(ComposeError::CorkNotSingular(t.cork.arc));
        }
    }
    // a witness edge forces supporting genus >= 1, so the sum is positive for
    // triples declared at their supporting genus; saturate against
    // under-declared bookkeeping
    let declared = (t1.declared_genus + t2.declared_genus).saturating_sub(1);
    build_result(
        t1,
        t2,
        orientation_matched,
        CompositionKind::Singular,
        declared,
        Vec::new(),
    )
}

fn mirror_triple(t: &Triple) -> Result<Triple, ComposeError> {
    // reflection preserves passages and order, so the cork's address carries
    // over to the image unchanged
    Ok(Triple::with_declared_genus(
        t.diagram.mirror_reflect(),
        t.cork,
        t.declared_genus,
    )?)
}

/// Nonsingular composition of a triple with its reflected image at the image
/// cork. The genus doubles.
pub fn double_nonsingular(t: &Triple) -> Result<CompositionResult, ComposeError> {
    if classified(t)?.is_singular() {
        return Err(ComposeError::CorkSingular(t.cork.arc));
    }
    compose_nonsingular(t, &mirror_triple(t)?, true)
}

/// Singular composition of a triple with its reflected image. Declared genus
/// 2g - 1.
pub fn double_singular(t: &Triple) -> Result<CompositionResult, ComposeError> {
    if !classified(t)?.is_singular() {
        return Err(ComposeError::CorkNotSingular(t.cork.arc));
    }
    compose_singular(t, &mirror_triple(t)?, true)
}

/// The inserted word for `n` twist pairs: ids walk out `b, b+1, ..., b+2n-1`
/// and back, passages alternating from `first`. All inserted crossings are
/// positive; the whole word is drawn inside a disk around the arc, so the
/// supporting genus is unchanged and the moves are repeated strand pokes that
/// keep the knot type.
fn twist_word(base_id: u32, n: usize, first: Passage) -> Vec<CrossingLabel> {
    let mut word = Vec::with_capacity(4 * n);
    for t in 0..4 * n {
        let id = if t < 2 * n {
            base_id + t as u32
        } else {
            base_id + (4 * n - 1 - t) as u32
        };
        let passage = if t % 2 == 0 { first } else { first.opposite() };
        word.push(CrossingLabel::new(id, Sign::Plus, passage));
    }
    word
}

/// Inserts `n` twist pairs at the arc, producing one twist region of `2n`
/// crossings there. The passage parity is chosen to preserve alternation of
/// the host component when it is alternating, else over-first. Inserting into
/// a curl arc (one whose two ends meet the same crossing) can extend the
/// maximal chain beyond the inserted crossings.
pub fn add_twists(
    diagram: &VirtualLinkDiagram,
    arc: Arc,
    n: usize,
) -> Result<VirtualLinkDiagram, ComposeError> {
    let comp = diagram
        .components()
        .get(arc.component)
        .ok_or(ComposeError::InvalidArc(arc))?;
    let first = if comp.is_empty() {
        Passage::Over
    } else {
        comp[arc.position % comp.len()].passage.opposite()
    };
    add_twists_with_parity(diagram, arc, n, first)
}

/// As [`add_twists`], with the first inserted passage chosen by the caller.
pub fn add_twists_with_parity(
    diagram: &VirtualLinkDiagram,
    arc: Arc,
    n: usize,
    first: Passage,
) -> Result<VirtualLinkDiagram, ComposeError> {
    require_arc(diagram, arc)?;
    if n == 0 {
        return Err(ComposeError::InvalidTwistCount);
    }
    let word = twist_word(diagram.max_crossing_id() + 1, n, first);
    let mut components: Vec<Vec<CrossingLabel>> = diagram.components().to_vec();
    let comp = &mut components[arc.component];
    let at = if comp.is_empty() { 0 } else { arc.position + 1 };
    comp.splice(at..at, word);
    Ok(VirtualLinkDiagram::new(components)?)
}

/// Adds a trivial circle around one crossing of the region. The circle
/// punctures the projection twice, crossing each of the two strands through
/// that crossing twice: it passes over both outgoing ends and under both
/// incoming ends, reading `O O U U` around the circle.
pub fn augment_twist_region(
    diagram: &VirtualLinkDiagram,
    region: &TwistRegion,
) -> Result<AugmentedLink, ComposeError> {
    let crossing = *region
        .crossings
        .first()
        .ok_or(ComposeError::InvalidTwistCount)?;
    augment_at_crossing(diagram, crossing)
}

/// Adds an augmenting circle around the given crossing.
///
/// Walking the circle counterclockwise around the crossing meets the four
/// strand-ends in the crossing's rotation order: the outgoing over end, then
/// one under end (which one depends on the crossing sign), the incoming over
/// end, and the other under end. The circle runs above the surface across the
/// first two and below across the last two. With the circle's orientation
/// fixed this way, its crossings on the over strand are negative and those on
/// the under strand carry the base crossing's sign flipped; this is the
/// convention under which the circle stays inside a disk and the supporting
/// genus is unchanged.
pub fn augment_at_crossing(
    diagram: &VirtualLinkDiagram,
    crossing: u32,
) -> Result<AugmentedLink, ComposeError> {
    let mut over = None;
    let mut under = None;
    let mut base_sign = Sign::Plus;
    for (ci, comp) in diagram.components().iter().enumerate() {
        for (pi, label) in comp.iter().enumerate() {
            if label.id == crossing {
                base_sign = label.sign;
                match label.passage {
                    Passage::Over => over = Some((ci, pi)),
                    Passage::Under => under = Some((ci, pi)),
                }
            }
        }
    }
    let (over, under) = match (over, under) {
        (Some(o), Some(u)) => (o, u),
        _ => return Err(ComposeError::UnknownCrossing(crossing)),
    };

    let base = diagram.max_crossing_id() + 1;
    // per circle position k: the base insertion point and the new crossing's
    // sign; `true` means just after the occurrence, `false` just before
    let slot = |k: usize| -> ((usize, usize), bool, Sign) {
        match (k, base_sign) {
            (0, _) => (over, true, Sign::Minus),
            (2, _) => (over, false, Sign::Minus),
            (1, Sign::Plus) => (under, true, Sign::Minus),
            (3, Sign::Plus) => (under, false, Sign::Minus),
            (1, Sign::Minus) => (under, false, Sign::Plus),
            (3, Sign::Minus) => (under, true, Sign::Plus),
            _ => unreachable!(),
        }
    };

    // (component, index, rank, label): rank orders same-slot insertions so an
    // outgoing marker lands before an incoming one
    let mut insertions = Vec::with_capacity(4);
    let mut circle = Vec::with_capacity(4);
    for k in 0..4 {
        let id = base + k as u32;
        let ((ci, pi), after, sign) = slot(k);
        let circle_passage = if k < 2 { Passage::Over } else { Passage::Under };
        let index = if after { pi + 1 } else { pi };
        let rank = usize::from(!after);
        insertions.push((
            ci,
            index,
            rank,
            CrossingLabel::new(id, sign, circle_passage.opposite()),
        ));
        circle.push(CrossingLabel::new(id, sign, circle_passage));
    }
    insertions.sort_by_key(|&(_, index, rank, _)| std::cmp::Reverse((index, rank)));

    let mut components: Vec<Vec<CrossingLabel>> = diagram.components().to_vec();
    for (ci, index, _, label) in insertions {
        components[ci].insert(index, label);
    }
    components.push(circle);
    let augmenting = components.len() - 1;
    Ok(AugmentedLink {
        diagram: VirtualLinkDiagram::new(components)?,
        augmenting_components: vec![augmenting],
        half_twist_flags: vec![0],
    })
}

fn position_of(comp: &[CrossingLabel], label: CrossingLabel) -> usize {
    comp.iter()
        .position(|l| *l == label)
        .expect("label present in component")
}

/// Builds the `i`-th member of the family of compositions whose volumes grow
/// without bound: the first factor gains `2i` twist regions of `2j` crossings
/// beside its cork (each normalized to `2j - 1` by a half-twist flag), every
/// region is augmented once, and the result is composed with the second
/// factor. Both factors must carry the certificate; the augmenting circles
/// then each contribute a cusp, so the composition's volume is at least
/// `2i` times the ideal-tetrahedron volume.
pub fn infinite_volume_sequence(
    t1: &Triple,
    t2: &Triple,
    i: usize,
    j: usize,
) -> Result<SequenceResult, ComposeError> {
    if i == 0 || j == 0 {
        return Err(ComposeError::InvalidTwistCount);
    }
    for (name, t) in [("first", t1), ("second", t2)] {
        let cert = tg_certificate(&t.diagram)?;
        if !cert.is_certified() {
            return Err(ComposeError::NotCertifiedAlternating(format!(
                "{name} factor lacks the alternating tg-hyperbolicity certificate"
            )));
        }
    }

    // certified diagrams are single nonempty components
    let cork_component = t1.cork.arc.component;
    let mut diagram = t1.diagram.clone();
    let mut cork_label = diagram.components()[cork_component][t1.cork.arc.position];
    // insertion anchor: the occurrence just before the gap where the next
    // region goes; starts at the cork's own occurrence so the regions pile up
    // on the far side of the cork arc
    let mut anchor = cork_label;
    let mut region_ids = Vec::with_capacity(2 * i);
    for _ in 0..2 * i {
        let base = diagram.max_crossing_id() + 1;
        let position = position_of(&diagram.components()[cork_component], anchor);
        diagram = add_twists(&diagram, Arc::new(cork_component, position), j)?;
        region_ids.push(base);
        // the word walks out and back, ending with its base id; the next
        // region goes after that final occurrence
        let word_last = twist_word(base, j, Passage::Over)
            .last()
            .copied()
            .expect("nonempty word");
        anchor = diagram.components()[cork_component]
            .iter()
            .copied()
            .find(|l| l.id == base && l.passage == word_last.passage)
            .expect("inserted word present");
    }

    let mut augmenting_components = Vec::with_capacity(2 * i);
    let mut augmented = diagram;
    for &base in &region_ids {
        let out = augment_at_crossing(&augmented, base)?;
        augmented = out.diagram;
        augmenting_components.extend(out.augmenting_components);
    }
    let augmented_link = AugmentedLink {
        diagram: augmented.clone(),
        augmenting_components,
        half_twist_flags: vec![1; 2 * i],
    };

    let cork_position = position_of(&augmented.components()[cork_component], cork_label);
    cork_label = augmented.components()[cork_component][cork_position];
    debug_assert_eq!(cork_label.id, t1.diagram.components()[cork_component][t1.cork.arc.position].id);
    let t1_aug = Triple::new(
        augmented,
        Cork::new(Arc::new(cork_component, cork_position)),
    )?;
    let composition = compose_nonsingular(&t1_aug, t2, true)?;
    Ok(SequenceResult {
        augmented_link,
        composition,
    })
}
