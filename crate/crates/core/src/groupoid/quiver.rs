use super::GroupoidError;
use crate::fan::ChamberDecomposition;
use crate::model::FanModel;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// One arrow of the doubled quiver. Its name is derived from its endpoints
/// as `source>target`, which keeps identifiers stable across rebuilds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub source: String,
    pub target: String,
}

impl Arrow {
    pub fn name(&self) -> String {
        format!("{}>{}", self.source, self.target)
    }

    /// The opposed arrow, pointing the other way.
    pub fn opposite(&self) -> Arrow {
        Arrow {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}

/// Doubled quiver on the maximal rigid sets of a model: one vertex per set,
/// and a pair of opposed arrows between any two sets that differ in exactly
/// one summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    out: BTreeMap<String, Vec<String>>,
}

impl MutationQuiver {
    fn from_adjacency(
        vertices: Vec<String>,
        neighbours: BTreeSet<(String, String)>,
    ) -> MutationQuiver {
        let mut arrows = Vec::new();
        let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for v in &vertices {
            out.insert(v.clone(), Vec::new());
        }
        for (a, b) in &neighbours {
            arrows.push(Arrow {
                source: a.clone(),
                target: b.clone(),
            });
            out.get_mut(a).expect("vertex present").push(b.clone());
        }
        arrows.sort();
        MutationQuiver {
            vertices,
            arrows,
            out,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.out.contains_key(v)
    }

    pub fn has_arrow(&self, source: &str, target: &str) -> bool {
        self.out
            .get(source)
            .map(|ts| ts.iter().any(|t| t == target))
            .unwrap_or(false)
    }

    /// Targets of the arrows leaving `v`, in sorted order.
    pub fn targets_from(&self, v: &str) -> &[String] {
        self.out.get(v).map(|ts| ts.as_slice()).unwrap_or(&[])
    }

    /// The quiver of a chamber decomposition: vertices are chamber labels and
    /// opposed arrow pairs join chambers that share a facet.
    pub fn from_decomposition(fan: &ChamberDecomposition) -> Result<MutationQuiver, GroupoidError> {
        let vertices: Vec<String> = fan.labels().iter().map(|s| s.to_string()).collect();
        let mut neighbours = BTreeSet::new();
        for wall in fan.walls()? {
            if let Some((a, b)) = wall.sides {
                neighbours.insert((a.clone(), b.clone()));
                neighbours.insert((b, a));
            }
        }
        Ok(MutationQuiver::from_adjacency(vertices, neighbours))
    }
}

/// Builds the mutation quiver of a model. Two maximal rigid sets are joined
/// by an opposed arrow pair exactly when their summand sets differ in one
/// element.
pub fn build_quiver(model: &FanModel) -> Result<MutationQuiver, GroupoidError> {
    let mut sizes = BTreeSet::new();
    for m in &model.maximal_rigid {
        sizes.insert(m.summands.len());
    }
    if sizes.len() > 1 {
        return Err(GroupoidError::InconsistentCardinalities(format!(
            "sizes {:?} all need to agree",
            sizes.into_iter().collect::<Vec<_>>()
        )));
    }
    let mut sets: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for m in &model.maximal_rigid {
        sets.insert(
            m.label.as_str(),
            m.summands.iter().map(|s| s.as_str()).collect(),
        );
    }
    let mut vertices: Vec<String> = sets.keys().map(|s| s.to_string()).collect();
    vertices.sort();
    let mut neighbours = BTreeSet::new();
    let labels: Vec<&str> = sets.keys().copied().collect();
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            let diff = sets[a].difference(&sets[b]).count();
            if diff == 1 {
                neighbours.insert((a.to_string(), b.to_string()));
                neighbours.insert((b.to_string(), a.to_string()));
            }
        }
    }
    Ok(MutationQuiver::from_adjacency(vertices, neighbours))
}

/// One traversal step of a path word. The underlying arrow runs
/// `arrow_source -> arrow_target`; with `inverse` set the step traverses it
/// backwards. Rendered as `a>b` for the forward step and `a<b` for the
/// backward one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Step {
    pub arrow_source: String,
    pub arrow_target: String,
    pub inverse: bool,
}

impl Step {
    pub fn forward(source: &str, target: &str) -> Step {
        Step {
            arrow_source: source.to_string(),
            arrow_target: target.to_string(),
            inverse: false,
        }
    }

    pub fn backward(source: &str, target: &str) -> Step {
        Step {
            arrow_source: source.to_string(),
            arrow_target: target.to_string(),
            inverse: true,
        }
    }

    /// Where this step starts, taking the traversal direction into account.
    pub fn from(&self) -> &str {
        if self.inverse {
            &self.arrow_target
        } else {
            &self.arrow_source
        }
    }

    /// Where this step ends.
    pub fn to(&self) -> &str {
        if self.inverse {
            &self.arrow_source
        } else {
            &self.arrow_target
        }
    }

    pub fn inverted(&self) -> Step {
        Step {
            arrow_source: self.arrow_source.clone(),
            arrow_target: self.arrow_target.clone(),
            inverse: !self.inverse,
        }
    }

    /// Two steps cancel when they traverse the same arrow in opposite
    /// directions.
    pub fn cancels(&self, other: &Step) -> bool {
        self.arrow_source == other.arrow_source
            && self.arrow_target == other.arrow_target
            && self.inverse != other.inverse
    }

    pub fn render(&self) -> String {
        if self.inverse {
            format!("{}<{}", self.arrow_source, self.arrow_target)
        } else {
            format!("{}>{}", self.arrow_source, self.arrow_target)
        }
    }
}

/// A composable word of quiver steps with a fixed base vertex. Steps are
/// listed in application order: the first step leaves the base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathWord {
    base: String,
    steps: Vec<Step>,
}

impl PathWord {
    pub fn empty(base: &str) -> PathWord {
        PathWord {
            base: base.to_string(),
            steps: Vec::new(),
        }
    }

    pub fn new(base: &str, steps: Vec<Step>) -> Result<PathWord, GroupoidError> {
        let mut cur = base.to_string();
        for step in &steps {
            if step.from() != cur {
                return Err(GroupoidError::NotComposable(format!(
                    "step {} starts at {} but the word is at {}",
                    step.render(),
                    step.from(),
                    cur
                )));
            }
            cur = step.to().to_string();
        }
        Ok(PathWord {
            base: base.to_string(),
            steps,
        })
    }

    /// The positive word walking the given vertex sequence with forward
    /// arrows.
    pub fn positive(vertices: &[String]) -> Result<PathWord, GroupoidError> {
        if vertices.is_empty() {
            return Err(GroupoidError::Parse("empty vertex sequence".into()));
        }
        let steps = vertices
            .windows(2)
            .map(|w| Step::forward(&w[0], &w[1]))
            .collect();
        PathWord::new(&vertices[0], steps)
    }

    pub fn source(&self) -> &str {
        &self.base
    }

    pub fn target(&self) -> &str {
        self.steps.last().map(|s| s.to()).unwrap_or(&self.base)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.steps.iter().all(|s| !s.inverse)
    }

    /// The vertices visited, source first. A word of length p lists p + 1
    /// vertices.
    pub fn vertex_sequence(&self) -> Vec<String> {
        let mut out = vec![self.base.clone()];
        for step in &self.steps {
            out.push(step.to().to_string());
        }
        out
    }

    pub fn extended(&self, step: Step) -> Result<PathWord, GroupoidError> {
        let mut steps = self.steps.clone();
        steps.push(step);
        PathWord::new(&self.base, steps)
    }

    pub fn composed(&self, next: &PathWord) -> Result<PathWord, GroupoidError> {
        if next.source() != self.target() {
            return Err(GroupoidError::NotComposable(format!(
                "second word starts at {} but the first ends at {}",
                next.source(),
                self.target()
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        PathWord::new(&self.base, steps)
    }

    pub fn inverted(&self) -> PathWord {
        let steps = self.steps.iter().rev().map(|s| s.inverted()).collect();
        PathWord {
            base: self.target().to_string(),
            steps,
        }
    }

    /// Cancels adjacent mutually inverse steps until none remain.
    pub fn freely_reduced(&self) -> PathWord {
        let mut stack: Vec<Step> = Vec::new();
        for step in &self.steps {
            if stack.last().map(|top| top.cancels(step)).unwrap_or(false) {
                stack.pop();
            } else {
                stack.push(step.clone());
            }
        }
        PathWord {
            base: self.base.clone(),
            steps: stack,
        }
    }

    pub fn render(&self) -> String {
        if self.steps.is_empty() {
            format!("(empty at {})", self.base)
        } else {
            self.steps
                .iter()
                .map(|s| s.render())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Parses a word from whitespace or comma separated step tokens like
    /// `a>b` and `a<b`, validating every step against the quiver.
    pub fn parse(quiver: &MutationQuiver, text: &str) -> Result<PathWord, GroupoidError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(GroupoidError::Parse(
                "a word needs at least one step".into(),
            ));
        }
        let mut steps = Vec::new();
        for token in tokens {
            let step = if let Some((a, b)) = token.split_once('>') {
                Step::forward(a, b)
            } else if let Some((a, b)) = token.split_once('<') {
                Step::backward(a, b)
            } else {
                return Err(GroupoidError::Parse(format!(
                    "step {token} has neither > nor <"
                )));
            };
            if !quiver.has_arrow(&step.arrow_source, &step.arrow_target) {
                return Err(GroupoidError::UnknownArrow(format!(
                    "{}>{}",
                    step.arrow_source, step.arrow_target
                )));
            }
            steps.push(step);
        }
        let base = steps[0].from().to_string();
        PathWord::new(&base, steps)
    }
}

/// A groupoid presentation: the arrows of a doubled quiver as generators and
/// pairs of parallel positive words as relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Arrow>,
    pub relations: Vec<(PathWord, PathWord)>,
}

impl Presentation {
    pub fn to_json(&self) -> Value {
        json!({
            "generators": self
                .generators
                .iter()
                .map(|a| json!({"name": a.name(), "source": a.source, "target": a.target}))
                .collect::<Vec<_>>(),
            "relations": self
                .relations
                .iter()
                .map(|(l, r)| json!([l.render(), r.render()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("generators:\n");
        for a in &self.generators {
            out.push_str(&format!("  {}\n", a.name()));
        }
        out.push_str("relations:\n");
        for (l, r) in &self.relations {
            out.push_str(&format!("  {} = {}\n", l.render(), r.render()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_dihedral, generate_sigma_swap};
    use crate::polygon::build_fan_model;

    #[test]
    fn pentagon_quiver_has_ten_arrows() {
        let model = build_fan_model(2).unwrap();
        let quiver = build_quiver(&model).unwrap();
        assert_eq!(quiver.vertices().len(), 5);
        assert_eq!(quiver.arrows().len(), 10);
        for v in quiver.vertices() {
            assert_eq!(quiver.targets_from(v).len(), 2);
        }
        assert!(quiver.has_arrow("13+14", "14+24"));
        assert!(quiver.has_arrow("14+24", "13+14"));
        assert!(!quiver.has_arrow("13+14", "24+25"));
    }

    #[test]
    fn fourteen_vertex_quiver_is_cubic() {
        let model = build_fan_model(3).unwrap();
        let quiver = build_quiver(&model).unwrap();
        assert_eq!(quiver.vertices().len(), 14);
        assert_eq!(quiver.arrows().len(), 42);
        for v in quiver.vertices() {
            assert_eq!(quiver.targets_from(v).len(), 3);
        }
    }

    #[test]
    fn rank_one_quiver_is_a_single_opposed_pair() {
        let model = build_fan_model(1).unwrap();
        let quiver = build_quiver(&model).unwrap();
        assert_eq!(quiver.vertices().len(), 2);
        assert_eq!(quiver.arrows().len(), 2);
    }

    #[test]
    fn swap_model_quiver_is_a_single_opposed_pair() {
        let model = generate_sigma_swap(2).unwrap();
        let quiver = build_quiver(&model).unwrap();
        assert_eq!(quiver.vertices().len(), 2);
        assert_eq!(quiver.arrows().len(), 2);
    }

    #[test]
    fn decomposition_quiver_of_a_hexagon_fan_is_a_cycle() {
        let model = generate_dihedral(3).unwrap();
        let fan = model.decomposition().unwrap();
        let quiver = MutationQuiver::from_decomposition(&fan).unwrap();
        assert_eq!(quiver.vertices().len(), 6);
        assert_eq!(quiver.arrows().len(), 12);
        for v in quiver.vertices() {
            assert_eq!(quiver.targets_from(v).len(), 2);
        }
    }

    #[test]
    fn words_compose_reduce_and_render() {
        let model = build_fan_model(2).unwrap();
        let quiver = build_quiver(&model).unwrap();
        let w = PathWord::parse(&quiver, "13+14>14+24, 14+24>24+25").unwrap();
        assert_eq!(w.source(), "13+14");
        assert_eq!(w.target(), "24+25");
        assert!(w.is_positive());
        assert_eq!(w.render(), "13+14>14+24 14+24>24+25");

        let back = PathWord::parse(&quiver, "13+14<14+24").unwrap();
        assert_eq!(back.source(), "14+24");
        assert_eq!(back.target(), "13+14");
        assert!(!back.is_positive());

        let round = PathWord::parse(&quiver, "13+14>14+24 13+14<14+24").unwrap();
        assert_eq!(round.freely_reduced(), PathWord::empty("13+14"));

        assert!(PathWord::parse(&quiver, "13+14>24+25").is_err());
        assert!(PathWord::parse(&quiver, "13+14>14+24 24+25>25+35").is_err());
    }

    #[test]
    fn inversion_swaps_endpoints() {
        let model = build_fan_model(2).unwrap();
        let quiver = build_quiver(&model).unwrap();
        let w = PathWord::parse(&quiver, "13+14>14+24 14+24>24+25").unwrap();
        let inv = w.inverted();
        assert_eq!(inv.source(), "24+25");
        assert_eq!(inv.target(), "13+14");
        assert_eq!(w.composed(&inv).unwrap().freely_reduced().len(), 0);
    }
}
