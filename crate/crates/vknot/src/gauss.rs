//! Signed Gauss codes for virtual knots and links.
//!
//! A diagram is an ordered list of components, each a cyclic sequence of
//! crossing passages. Virtual crossings are never stored: the code itself is
//! the canonical object, and the supporting surface is reconstructed from it
//! (see [`crate::carter`]).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Whether the strand passes over or under at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn opposite(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Passage::Over => 'O',
            Passage::Under => 'U',
        }
    }
}

/// One passage through a classical crossing, as written in a Gauss code.
///
/// Each crossing id occurs exactly twice in a diagram, once `Over` and once
/// `Under`, with the same sign at both occurrences.
///
/// Ordering is the token order used for canonical rotations: `O` before `U`,
/// then id, then `+` before `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingLabel {
    pub id: u32,
    pub sign: Sign,
    pub passage: Passage,
}

impl CrossingLabel {
    pub fn new(id: u32, sign: Sign, passage: Passage) -> Self {
        CrossingLabel { id, sign, passage }
    }

    fn token_key(&self) -> (Passage, u32, Sign) {
        (self.passage, self.id, self.sign)
    }
}

impl PartialOrd for CrossingLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CrossingLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.token_key().cmp(&other.token_key())
    }
}

impl fmt::Display for CrossingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.passage.as_char(),
            self.id,
            self.sign.as_char()
        )
    }
}

/// An arc of a diagram: the gap following occurrence `position` in the cyclic
/// sequence of component `component`.
///
/// A zero-crossing component has exactly one arc, at position 0. Arc indices
/// refer to the canonical rotation of the component, so they are stable
/// references across serialization. In JSON an arc appears as the address
/// string `component:position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub component: usize,
    pub position: usize,
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_arc_address(&text).map_err(serde::de::Error::custom)
    }
}

impl Arc {
    pub fn new(component: usize, position: usize) -> Self {
        Arc {
            component,
            position,
        }
    }

    pub fn is_valid_in(&self, diagram: &VirtualLinkDiagram) -> bool {
        match diagram.components().get(self.component) {
            Some(comp) if comp.is_empty() => self.position == 0,
            Some(comp) => self.position < comp.len(),
            None => false,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.position)
    }
}

/// A marked arc designating the thickened disk through which compositions are
/// performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cork {
    pub arc: Arc,
}

impl Cork {
    pub fn new(arc: Arc) -> Self {
        Cork { arc }
    }
}

/// A diagram together with a cork and the genus it is declared to live at.
///
/// By default the declared genus is the supporting genus of the diagram; a
/// lower value records a destabilized realization that the diagram itself
/// does not exhibit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub diagram: VirtualLinkDiagram,
    pub declared_genus: usize,
    pub cork: Cork,
}

/// Multi-component signed Gauss code. Components are cyclic: construction
/// normalizes each to its lexicographically minimal rotation, so structural
/// equality is rotation-invariant. In JSON a diagram appears as its canonical
/// Gauss-code string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VirtualLinkDiagram {
    components: Vec<Vec<CrossingLabel>>,
}

impl Serialize for VirtualLinkDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.serialize())
    }
}

impl<'de> Deserialize<'de> for VirtualLinkDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("SyntaxError: {0}")]
    Syntax(String),
    #[error("PairingError: {0}")]
    Pairing(String),
    #[error("SignError: crossing {id} occurs with both signs")]
    SignMismatch { id: u32 },
}

impl VirtualLinkDiagram {
    /// Validates pairing and sign consistency, then stores each component in
    /// canonical rotation.
    pub fn new(components: Vec<Vec<CrossingLabel>>) -> Result<Self, GaussError> {
        validate(&components)?;
        Ok(Self::new_unchecked(components))
    }

    fn new_unchecked(components: Vec<Vec<CrossingLabel>>) -> Self {
        let components = components.into_iter().map(canonical_rotation).collect();
        VirtualLinkDiagram { components }
    }

    /// The zero-crossing unknot: a single empty component.
    pub fn unknot() -> Self {
        VirtualLinkDiagram {
            components: vec![vec![]],
        }
    }

    pub fn components(&self) -> &[Vec<CrossingLabel>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Number of distinct classical crossings.
    pub fn crossing_count(&self) -> usize {
        let mut ids: Vec<u32> = self
            .components
            .iter()
            .flatten()
            .map(|label| label.id)
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(|label| label.id)
            .max()
            .unwrap_or(0)
    }

    /// All arcs, ordered by component then position. A component with k >= 1
    /// occurrences contributes k arcs; a zero-crossing component contributes
    /// one.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            let n = comp.len().max(1);
            for p in 0..n {
                out.push(Arc::new(ci, p));
            }
        }
        out
    }

    /// Flips every crossing sign, leaving passages and cyclic order unchanged.
    /// This encodes reflection across a plane perpendicular to the projection
    /// plane: the surface orientation reverses, the over/under direction does
    /// not.
    pub fn mirror_reflect(&self) -> Self {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|label| CrossingLabel {
                        sign: label.sign.flipped(),
                        ..*label
                    })
                    .collect()
            })
            .collect();
        Self::new_unchecked(components)
    }

    /// Reverses the cyclic sequence of one component.
    pub fn reverse_orientation(&self, component: usize) -> Result<Self, GaussError> {
        if component >= self.components.len() {
            return Err(GaussError::Syntax(format!(
                "component index {component} out of range ({} components)",
                self.components.len()
            )));
        }
        let mut components = self.components.clone();
        components[component].reverse();
        Ok(Self::new_unchecked(components))
    }

    /// Canonical Gauss-code text: components joined by `/`, each starting at
    /// its minimal rotation.
    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|comp| comp.iter().map(|label| label.to_string()).collect())
            .collect();
        parts.join("/")
    }
}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn canonical_rotation(component: Vec<CrossingLabel>) -> Vec<CrossingLabel> {
    if component.len() <= 1 {
        return component;
    }
    let n = component.len();
    let mut best = 0;
    for start in 1..n {
        for k in 0..n {
            let a = &component[(start + k) % n];
            let b = &component[(best + k) % n];
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    best = start;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => continue,
            }
        }
    }
    let mut rotated = Vec::with_capacity(n);
    rotated.extend_from_slice(&component[best..]);
    rotated.extend_from_slice(&component[..best]);
    rotated
}

fn validate(components: &[Vec<CrossingLabel>]) -> Result<(), GaussError> {
    use std::collections::HashMap;
    let mut seen: HashMap<u32, (Sign, Vec<Passage>)> = HashMap::new();
    for label in components.iter().flatten() {
        if label.id == 0 {
            return Err(GaussError::Syntax(
                "crossing ids must be positive".to_string(),
            ));
        }
        let entry = seen
            .entry(label.id)
            .or_insert_with(|| (label.sign, Vec::new()));
        if entry.0 != label.sign {
            return Err(GaussError::SignMismatch { id: label.id });
        }
        entry.1.push(label.passage);
    }
    let mut ids: Vec<u32> = seen.keys().copied().collect();
    ids.sort_unstable();
    for id in ids {
        let passages = &seen[&id].1;
        if passages.len() != 2 {
            return Err(GaussError::Pairing(format!(
                "crossing {id} occurs {} time(s), expected exactly 2",
                passages.len()
            )));
        }
        if passages[0] == passages[1] {
            return Err(GaussError::Pairing(format!(
                "crossing {id} occurs twice as {}, expected once Over and once Under",
                passages[0].as_char()
            )));
        }
    }
    Ok(())
}

/// Parses Gauss-code text.
///
/// Grammar: components joined by `/`; each component a sequence of tokens
/// `("O"|"U") digits ("+"|"-")`; whitespace ignored; the empty string is one
/// empty component.
pub fn parse(text: &str) -> Result<VirtualLinkDiagram, GaussError> {
    let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut components = Vec::new();
    for part in stripped.split('/') {
        components.push(parse_component(part)?);
    }
    VirtualLinkDiagram::new(components)
}

fn parse_component(part: &str) -> Result<Vec<CrossingLabel>, GaussError> {
    let mut labels = Vec::new();
    let mut chars = part.chars().peekable();
    while let Some(c) = chars.next() {
        let passage = match c {
            'O' => Passage::Over,
            'U' => Passage::Under,
            other => {
                return Err(GaussError::Syntax(format!(
                    "expected 'O' or 'U', found {other:?}"
                )))
            }
        };
        let mut digits = String::new();
        while let Some(d) = chars.peek() {
            if d.is_ascii_digit() {
                digits.push(*d);
                chars.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(GaussError::Syntax(format!(
                "expected digits after {:?}",
                passage.as_char()
            )));
        }
        let id: u32 = digits
            .parse()
            .map_err(|_| GaussError::Syntax(format!("crossing id {digits:?} out of range")))?;
        if id == 0 {
            return Err(GaussError::Syntax(
                "crossing ids must be positive".to_string(),
            ));
        }
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            Some(other) => {
                return Err(GaussError::Syntax(format!(
                    "expected '+' or '-' after id {id}, found {other:?}"
                )))
            }
            None => {
                return Err(GaussError::Syntax(format!(
                    "expected '+' or '-' after id {id}, found end of input"
                )))
            }
        };
        labels.push(CrossingLabel::new(id, sign, passage));
    }
    Ok(labels)
}

/// Parses an arc address of the form `component:position` (both 0-based).
pub fn parse_arc_address(text: &str) -> Result<Arc, GaussError> {
    let (comp, pos) = text
        .split_once(':')
        .ok_or_else(|| GaussError::Syntax(format!("arc address {text:?} missing ':'")))?;
    let component: usize = comp
        .parse()
        .map_err(|_| GaussError::Syntax(format!("bad component index {comp:?}")))?;
    let position: usize = pos
        .parse()
        .map_err(|_| GaussError::Syntax(format!("bad arc position {pos:?}")))?;
    Ok(Arc::new(component, position))
}
