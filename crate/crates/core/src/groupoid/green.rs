use super::quiver::{build_quiver, MutationQuiver, PathWord, Presentation};
use super::GroupoidError;
use crate::exact::Int;
use crate::fan::{recognize_arrangement, ChamberDecomposition, SimplicialCone};
use crate::forms;
use crate::model::FanModel;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// The chamber fan seen from a fixed maximal rigid set, against which the
/// greenness of every step of a word based there is decided.
struct GreenContext {
    fan: ChamberDecomposition,
    source: String,
}

impl GreenContext {
    fn new(model: &FanModel, source: &str) -> Result<GreenContext, GroupoidError> {
        if model.rigid_set(source).is_none() {
            return Err(GroupoidError::UnknownVertex(source.to_string()));
        }
        let fan = if model.exchange.is_some() {
            // Rebase every chamber on the index vectors taken with respect
            // to the word's own source.
            let tables = forms::reference_tables(model)?;
            let table = &tables[source];
            let mut chambers = Vec::new();
            for m in &model.maximal_rigid {
                let rays: Vec<Vec<Int>> = m
                    .summands
                    .iter()
                    .map(|s| table[s].clone())
                    .collect();
                chambers.push((m.label.clone(), SimplicialCone::new(model.dim, rays)?));
            }
            ChamberDecomposition::new(model.dim, chambers)?
        } else {
            // Without exchange data the stored fan is the only one available;
            // the dichotomy is still taken against the source's chamber.
            model.decomposition()?
        };
        Ok(GreenContext {
            fan,
            source: source.to_string(),
        })
    }

    /// A step is green when the chamber it leaves sits on the positive side
    /// of the crossed wall, oriented towards the source chamber.
    fn step_is_green(&self, from: &str, to: &str) -> Result<bool, GroupoidError> {
        let wall = self.fan.wall_between(from, to)?;
        let oriented = self.fan.wall_dichotomy(&wall, &self.source)?;
        Ok(oriented.positive_side == from)
    }
}

/// Decides whether a positive word is a green path. Every step must leave
/// the positive side of its wall, oriented towards the chamber of the word's
/// source. Inverse steps are rejected outright.
pub fn is_green(model: &FanModel, word: &PathWord) -> Result<bool, GroupoidError> {
    if !word.is_positive() {
        return Err(GroupoidError::NotPositive);
    }
    let ctx = GreenContext::new(model, word.source())?;
    for step in word.steps() {
        if !ctx.step_is_green(step.from(), step.to())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every green path from one maximal rigid set to another, in lexicographic
/// order on vertex sequences. Green paths never revisit enough vertices to
/// reach the number of maximal rigid sets, which bounds the search.
pub fn green_paths(
    model: &FanModel,
    from: &str,
    to: &str,
) -> Result<Vec<PathWord>, GroupoidError> {
    let quiver = build_quiver(model)?;
    for v in [from, to] {
        if !quiver.has_vertex(v) {
            return Err(GroupoidError::UnknownVertex(v.to_string()));
        }
    }
    let ctx = GreenContext::new(model, from)?;
    green_paths_in(&ctx, &quiver, from, to)
}

fn green_paths_in(
    ctx: &GreenContext,
    quiver: &MutationQuiver,
    from: &str,
    to: &str,
) -> Result<Vec<PathWord>, GroupoidError> {
    let max_len = quiver.vertices().len().saturating_sub(1);
    let mut seq = vec![from.to_string()];
    let mut out = Vec::new();
    descend_green(ctx, quiver, to, max_len, &mut seq, &mut out)?;
    Ok(out)
}

fn descend_green(
    ctx: &GreenContext,
    quiver: &MutationQuiver,
    to: &str,
    max_len: usize,
    seq: &mut Vec<String>,
    out: &mut Vec<PathWord>,
) -> Result<(), GroupoidError> {
    let cur = seq.last().expect("sequence nonempty").clone();
    if cur == to {
        out.push(PathWord::positive(seq)?);
    }
    if seq.len() - 1 >= max_len {
        return Ok(());
    }
    for next in quiver.targets_from(&cur) {
        if ctx.step_is_green(&cur, next)? {
            seq.push(next.clone());
            descend_green(ctx, quiver, to, max_len, seq, out)?;
            seq.pop();
        }
    }
    Ok(())
}

/// The presentation of the green groupoid: all arrows as generators, and for
/// every ordered pair of vertices one relation per unordered pair of
/// distinct green paths between them. Relations are not pruned.
pub fn green_presentation(model: &FanModel) -> Result<Presentation, GroupoidError> {
    let quiver = build_quiver(model)?;
    let mut relations = Vec::new();
    for from in quiver.vertices() {
        let ctx = GreenContext::new(model, from)?;
        for to in quiver.vertices() {
            let paths = green_paths_in(&ctx, &quiver, from, to)?;
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    relations.push((paths[i].clone(), paths[j].clone()));
                }
            }
        }
    }
    Ok(Presentation {
        generators: quiver.arrows().to_vec(),
        relations,
    })
}

/// The sets of first and last interior stops of reroutings of a green path:
/// `enter` collects the second vertices of all green paths between its
/// endpoints, `exit` their second-to-last vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnterExit {
    pub enter: BTreeSet<String>,
    pub exit: BTreeSet<String>,
}

pub fn enter_exit(model: &FanModel, word: &PathWord) -> Result<EnterExit, GroupoidError> {
    if !is_green(model, word)? {
        return Err(GroupoidError::NotGreen(word.render()));
    }
    if word.is_empty() {
        return Ok(EnterExit {
            enter: BTreeSet::new(),
            exit: BTreeSet::new(),
        });
    }
    let paths = green_paths(model, word.source(), word.target())?;
    let mut enter = BTreeSet::new();
    let mut exit = BTreeSet::new();
    for p in &paths {
        let seq = p.vertex_sequence();
        enter.insert(seq[1].clone());
        exit.insert(seq[seq.len() - 2].clone());
    }
    Ok(EnterExit { enter, exit })
}

struct DualGraph {
    neighbours: BTreeMap<String, BTreeSet<String>>,
    dist: BTreeMap<String, BTreeMap<String, usize>>,
}

impl DualGraph {
    fn new(fan: &ChamberDecomposition) -> Result<DualGraph, GroupoidError> {
        let mut neighbours: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for l in fan.labels() {
            neighbours.insert(l.to_string(), BTreeSet::new());
        }
        for wall in fan.walls()? {
            if let Some((a, b)) = wall.sides {
                neighbours.get_mut(&a).expect("label present").insert(b.clone());
                neighbours.get_mut(&b).expect("label present").insert(a);
            }
        }
        let mut dist = BTreeMap::new();
        for start in neighbours.keys() {
            let mut d: BTreeMap<String, usize> = BTreeMap::new();
            d.insert(start.clone(), 0);
            let mut queue = VecDeque::from([start.clone()]);
            while let Some(u) = queue.pop_front() {
                let du = d[&u];
                for v in &neighbours[&u] {
                    if !d.contains_key(v) {
                        d.insert(v.clone(), du + 1);
                        queue.push_back(v.clone());
                    }
                }
            }
            dist.insert(start.clone(), d);
        }
        Ok(DualGraph { neighbours, dist })
    }

    fn distance(&self, a: &str, b: &str) -> Result<usize, GroupoidError> {
        self.dist
            .get(a)
            .and_then(|d| d.get(b))
            .copied()
            .ok_or_else(|| GroupoidError::Disconnected(format!("no gallery joins {a} and {b}")))
    }

    fn adjacent(&self, a: &str, b: &str) -> bool {
        self.neighbours
            .get(a)
            .map(|ns| ns.contains(b))
            .unwrap_or(false)
    }

    /// Second vertices of minimal galleries from `s` to `t`.
    fn enter_set(&self, s: &str, t: &str) -> Result<BTreeSet<String>, GroupoidError> {
        let total = self.distance(s, t)?;
        let mut out = BTreeSet::new();
        for n in &self.neighbours[s] {
            if self.distance(n, t)? + 1 == total {
                out.insert(n.clone());
            }
        }
        Ok(out)
    }

    /// Second-to-last vertices of minimal galleries from `s` to `t`.
    fn exit_set(&self, s: &str, t: &str) -> Result<BTreeSet<String>, GroupoidError> {
        let total = self.distance(s, t)?;
        let mut out = BTreeSet::new();
        for n in &self.neighbours[t] {
            if self.distance(s, n)? + 1 == total {
                out.insert(n.clone());
            }
        }
        Ok(out)
    }
}

/// Factors a positive word over an arrangement fan into its canonical
/// sequence of green segments: a greedy left-to-right absorption into
/// maximal green runs, followed by repeated pair moves that pull every
/// rerouting opportunity as far left as it goes. Each resulting segment is
/// rendered as the lexicographically least minimal gallery between its
/// endpoints. Only fans recognized as hyperplane arrangements admit this
/// factorization.
pub fn normal_form(model: &FanModel, word: &PathWord) -> Result<Vec<PathWord>, GroupoidError> {
    if !word.is_positive() {
        return Err(GroupoidError::NotPositive);
    }
    let fan = model.decomposition()?;
    let recognition = recognize_arrangement(&fan)?;
    if !recognition.is_arrangement {
        let witness = recognition
            .witness
            .map(|w| format!(": {w}"))
            .unwrap_or_default();
        return Err(GroupoidError::NotArrangement(witness));
    }
    let graph = DualGraph::new(&fan)?;
    for v in word.vertex_sequence() {
        if !graph.neighbours.contains_key(&v) {
            return Err(GroupoidError::UnknownVertex(v));
        }
    }

    let mut segments: Vec<(String, String)> = Vec::new();
    for step in word.steps() {
        let (x, u) = (step.from().to_string(), step.to().to_string());
        if !graph.adjacent(&x, &u) {
            return Err(GroupoidError::NotComposable(format!(
                "{x} and {u} share no wall"
            )));
        }
        let absorbed = match segments.last_mut() {
            Some((s, t)) if graph.distance(s, &u)? == graph.distance(s, t)? + 1 => {
                *t = u.clone();
                true
            }
            _ => false,
        };
        if !absorbed {
            segments.push((x, u));
        }
        cascade(&graph, &mut segments)?;
    }

    let mut words = Vec::new();
    for (s, t) in &segments {
        let galleries = fan.minimal_galleries(s, t)?;
        let least = galleries
            .iter()
            .min()
            .expect("at least one minimal gallery");
        words.push(PathWord::positive(least)?);
    }
    Ok(words)
}

/// Restores the chaining condition: every entry vertex of a segment must be
/// an exit vertex of its predecessor. A violating vertex is moved across the
/// boundary, which shifts length leftwards, so the sweep terminates.
fn cascade(
    graph: &DualGraph,
    segments: &mut Vec<(String, String)>,
) -> Result<(), GroupoidError> {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < segments.len() {
            let (s1, t1) = segments[i].clone();
            let (s2, t2) = segments[i + 1].clone();
            let enters = graph.enter_set(&s2, &t2)?;
            let exits = graph.exit_set(&s1, &t1)?;
            if let Some(n) = enters.difference(&exits).next().cloned() {
                segments[i].1 = n.clone();
                if n == t2 {
                    segments.remove(i + 1);
                } else {
                    segments[i + 1].0 = n;
                }
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::generate_dihedral;
    use crate::polygon::build_fan_model;

    fn word(model: &FanModel, text: &str) -> PathWord {
        let quiver = build_quiver(model).unwrap();
        PathWord::parse(&quiver, text).unwrap()
    }

    #[test]
    fn every_single_arrow_is_green() {
        let model = build_fan_model(2).unwrap();
        let quiver = build_quiver(&model).unwrap();
        for a in quiver.arrows() {
            let w = PathWord::positive(&[a.source.clone(), a.target.clone()]).unwrap();
            assert!(is_green(&model, &w).unwrap(), "arrow {}", a.name());
        }
    }

    #[test]
    fn pentagon_descent_chains_are_green() {
        let model = build_fan_model(2).unwrap();
        let long = word(&model, "13+14>14+24 14+24>24+25 24+25>25+35");
        assert!(is_green(&model, &long).unwrap());
        let short = word(&model, "13+14>13+35 13+35>25+35");
        assert!(is_green(&model, &short).unwrap());
        let backtrack = word(&model, "13+14>14+24 14+24>13+14");
        assert!(!is_green(&model, &backtrack).unwrap());
        let inverse = word(&model, "13+14<14+24");
        assert_eq!(is_green(&model, &inverse), Err(GroupoidError::NotPositive));
    }

    #[test]
    fn pentagon_green_paths_between_opposite_vertices() {
        let model = build_fan_model(2).unwrap();
        let paths = green_paths(&model, "13+14", "25+35").unwrap();
        assert_eq!(paths.len(), 2);
        let lengths: Vec<usize> = paths.iter().map(|p| p.len()).collect();
        assert_eq!(lengths, vec![2, 3]);
        assert_eq!(
            paths[0].vertex_sequence(),
            vec!["13+14", "13+35", "25+35"]
        );
        assert_eq!(
            paths[1].vertex_sequence(),
            vec!["13+14", "14+24", "24+25", "25+35"]
        );
    }

    #[test]
    fn green_paths_to_self_and_to_neighbours() {
        let model = build_fan_model(2).unwrap();
        let loops = green_paths(&model, "13+14", "13+14").unwrap();
        assert_eq!(loops.len(), 1);
        assert!(loops[0].is_empty());
        let step = green_paths(&model, "13+14", "14+24").unwrap();
        assert_eq!(step.len(), 1);
        assert_eq!(step[0].len(), 1);
    }

    #[test]
    fn pentagon_presentation_has_five_relations() {
        let model = build_fan_model(2).unwrap();
        let p = green_presentation(&model).unwrap();
        assert_eq!(p.generators.len(), 10);
        assert_eq!(p.relations.len(), 5);
        for (l, r) in &p.relations {
            assert_eq!(l.source(), r.source());
            assert_eq!(l.target(), r.target());
            assert_ne!(l, r);
            // Each relation pairs the two reroutings around the pentagon.
            assert_eq!(l.len() + r.len(), 5);
        }
    }

    #[test]
    fn rank_one_presentation_is_free() {
        let model = build_fan_model(1).unwrap();
        let p = green_presentation(&model).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn enter_and_exit_of_small_words() {
        let model = build_fan_model(2).unwrap();
        let single = word(&model, "13+14>14+24");
        let ee = enter_exit(&model, &single).unwrap();
        assert_eq!(ee.enter, BTreeSet::from(["14+24".to_string()]));
        assert_eq!(ee.exit, BTreeSet::from(["13+14".to_string()]));

        let empty = PathWord::empty("13+14");
        let ee = enter_exit(&model, &empty).unwrap();
        assert!(ee.enter.is_empty());
        assert!(ee.exit.is_empty());

        let cross = word(&model, "13+14>14+24 14+24>24+25 24+25>25+35");
        let ee = enter_exit(&model, &cross).unwrap();
        assert_eq!(
            ee.enter,
            BTreeSet::from(["13+35".to_string(), "14+24".to_string()])
        );
        assert_eq!(
            ee.exit,
            BTreeSet::from(["13+35".to_string(), "24+25".to_string()])
        );

        let backtrack = word(&model, "13+14>14+24 14+24>13+14");
        assert!(matches!(
            enter_exit(&model, &backtrack),
            Err(GroupoidError::NotGreen(_))
        ));
    }

    #[test]
    fn hexagon_greenness_matches_minimal_galleries() {
        let model = generate_dihedral(3).unwrap();
        let fan = model.decomposition().unwrap();
        let quiver = build_quiver(&model).unwrap();
        for from in quiver.vertices() {
            for to in quiver.vertices() {
                let galleries = fan.minimal_galleries(from, to).unwrap();
                let greens = green_paths(&model, from, to).unwrap();
                let green_seqs: Vec<Vec<String>> =
                    greens.iter().map(|p| p.vertex_sequence()).collect();
                assert_eq!(green_seqs, galleries, "{from} to {to}");
            }
        }
    }

    #[test]
    fn hexagon_normal_form_worked_example() {
        let model = generate_dihedral(3).unwrap();
        let w = word(&model, "C0>C1 C1>C2 C2>C1 C1>C0 C0>C5");
        let nf = normal_form(&model, &w).unwrap();
        assert_eq!(nf.len(), 2);
        assert_eq!(nf[0].vertex_sequence(), vec!["C0", "C1", "C2", "C3"]);
        assert_eq!(nf[1].vertex_sequence(), vec!["C3", "C4", "C5"]);
    }

    #[test]
    fn normal_form_of_green_words_is_one_segment() {
        let model = generate_dihedral(3).unwrap();
        let w = word(&model, "C0>C1 C1>C2 C2>C3");
        let nf = normal_form(&model, &w).unwrap();
        assert_eq!(nf.len(), 1);
        assert_eq!(nf[0].vertex_sequence(), vec!["C0", "C1", "C2", "C3"]);

        let empty = PathWord::empty("C0");
        assert!(normal_form(&model, &empty).unwrap().is_empty());

        let backtrack = word(&model, "C0>C1 C1>C0");
        let nf = normal_form(&model, &backtrack).unwrap();
        assert_eq!(nf.len(), 2);
        assert_eq!(nf[0].vertex_sequence(), vec!["C0", "C1"]);
        assert_eq!(nf[1].vertex_sequence(), vec!["C1", "C0"]);
    }

    #[test]
    fn normal_form_rejects_non_arrangement_fans() {
        let model = build_fan_model(2).unwrap();
        let w = word(&model, "13+14>14+24");
        let err = normal_form(&model, &w).unwrap_err();
        assert!(err.to_string().contains("normal form requires"));
    }

    #[test]
    fn normal_form_segments_chain() {
        let model = generate_dihedral(4).unwrap();
        let w = word(&model, "C0>C1 C1>C2 C2>C3 C3>C2 C2>C1 C1>C0 C0>C7");
        let nf = normal_form(&model, &w).unwrap();
        for pair in nf.windows(2) {
            assert_eq!(pair[0].target(), pair[1].source());
        }
        assert_eq!(nf[0].source(), "C0");
        let total: usize = nf.iter().map(|p| p.len()).sum();
        assert_eq!(total, 7);
        for p in &nf {
            assert!(is_green(&model, p).unwrap());
        }
    }
}
