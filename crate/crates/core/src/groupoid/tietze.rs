use super::quiver::Presentation;
use super::GroupoidError;
use crate::exact::{smith_invariants, Int};
use num::Zero;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A letter of a group word: a generator name and whether it occurs
/// inverted.
pub type Letter = (String, bool);

/// A finitely presented group: named generators and relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in word {
        if stack
            .last()
            .map(|top| top.0 == l.0 && top.1 != l.1)
            .unwrap_or(false)
        {
            stack.pop();
        } else {
            stack.push(l.clone());
        }
    }
    stack
}

fn cyclic_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut w = free_reduce(word);
    while w.len() >= 2 {
        let first = w.first().expect("nonempty").clone();
        let last = w.last().expect("nonempty").clone();
        if first.0 == last.0 && first.1 != last.1 {
            w.pop();
            w.remove(0);
        } else {
            break;
        }
    }
    w
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|(g, s)| (g.clone(), !s)).collect()
}

/// Canonical representative of a relator up to rotation and inversion, used
/// to drop duplicates.
fn cyclic_key(word: &[Letter]) -> Vec<Letter> {
    let mut best: Option<Vec<Letter>> = None;
    for candidate in [word.to_vec(), invert(word)] {
        for r in 0..candidate.len().max(1) {
            let mut rot = candidate.clone();
            rot.rotate_left(r % candidate.len().max(1));
            if best.as_ref().map(|b| rot < *b).unwrap_or(true) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

impl GroupPresentation {
    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.generators,
            "relators": self
                .relators
                .iter()
                .map(|r| render_word(r))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("generators:\n");
        for g in &self.generators {
            out.push_str(&format!("  {g}\n"));
        }
        out.push_str("relators:\n");
        for r in &self.relators {
            out.push_str(&format!("  {}\n", render_word(r)));
        }
        out
    }

    /// Invariant factors of the abelianization, one entry per generator:
    /// d > 1 contributes a cyclic factor of order d, d = 1 a trivial factor,
    /// d = 0 a free factor.
    pub fn abelianization(&self) -> Vec<Int> {
        if self.generators.is_empty() {
            return Vec::new();
        }
        if self.relators.is_empty() {
            return vec![Int::zero(); self.generators.len()];
        }
        let position: BTreeMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        let rows: Vec<Vec<Int>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![Int::zero(); self.generators.len()];
                for (g, inv) in r {
                    let j = position[g.as_str()];
                    if *inv {
                        row[j] -= 1;
                    } else {
                        row[j] += 1;
                    }
                }
                row
            })
            .collect();
        smith_invariants(&rows).expect("exponent matrix is rectangular and nonempty")
    }
}

pub fn render_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "(empty)".to_string();
    }
    word.iter()
        .map(|(g, inv)| {
            if *inv {
                format!("{g}^-1")
            } else {
                g.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The vertex group of a presented groupoid at a chosen vertex. A spanning
/// tree is grown breadth first in lexicographic order; its arrows collapse
/// to the identity, every other arrow becomes a group generator, and each
/// groupoid relation descends to a relator.
pub fn vertex_group(p: &Presentation, at: &str) -> Result<GroupPresentation, GroupoidError> {
    let mut vertices: BTreeSet<String> = BTreeSet::new();
    let mut out_arrows: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for a in &p.generators {
        vertices.insert(a.source.clone());
        vertices.insert(a.target.clone());
        out_arrows
            .entry(a.source.clone())
            .or_default()
            .push(a.target.clone());
    }
    for targets in out_arrows.values_mut() {
        targets.sort();
        targets.dedup();
    }
    if !vertices.contains(at) {
        return Err(GroupoidError::UnknownVertex(at.to_string()));
    }

    let mut tree: BTreeSet<(String, String)> = BTreeSet::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    seen.insert(at.to_string());
    let mut queue = VecDeque::from([at.to_string()]);
    while let Some(u) = queue.pop_front() {
        if let Some(ts) = out_arrows.get(&u) {
            for w in ts {
                if seen.insert(w.clone()) {
                    tree.insert((u.clone(), w.clone()));
                    queue.push_back(w.clone());
                }
            }
        }
    }
    if seen.len() != vertices.len() {
        let missing: Vec<String> = vertices.difference(&seen).cloned().collect();
        return Err(GroupoidError::Disconnected(format!(
            "vertices {} are not reachable from {}",
            missing.join(", "),
            at
        )));
    }

    let generators: Vec<String> = p
        .generators
        .iter()
        .filter(|a| !tree.contains(&(a.source.clone(), a.target.clone())))
        .map(|a| a.name())
        .collect();

    let mut relators = Vec::new();
    for (lhs, rhs) in &p.relations {
        let mut word: Vec<Letter> = Vec::new();
        for step in lhs.steps() {
            let key = (step.arrow_source.clone(), step.arrow_target.clone());
            if !tree.contains(&key) {
                word.push((format!("{}>{}", key.0, key.1), step.inverse));
            }
        }
        for step in rhs.steps().iter().rev() {
            let key = (step.arrow_source.clone(), step.arrow_target.clone());
            if !tree.contains(&key) {
                word.push((format!("{}>{}", key.0, key.1), !step.inverse));
            }
        }
        let word = cyclic_reduce(&word);
        if !word.is_empty() {
            relators.push(word);
        }
    }

    Ok(GroupPresentation {
        generators,
        relators,
    })
}

/// Simplifies a group presentation by iterated Tietze moves: free and cyclic
/// reduction, dropping duplicate relators up to rotation and inversion, and
/// eliminating any generator that occurs exactly once in some relator by
/// solving that relator for it. The pipeline is deterministic and always
/// terminates, but makes no completeness promise.
pub fn tietze_simplify(p: &GroupPresentation) -> GroupPresentation {
    let mut generators = p.generators.clone();
    let mut relators: Vec<Vec<Letter>> = p.relators.clone();
    loop {
        relators = relators.iter().map(|r| cyclic_reduce(r)).collect();
        relators.retain(|r| !r.is_empty());
        let mut seen = BTreeSet::new();
        relators.retain(|r| seen.insert(cyclic_key(r)));

        let Some((ri, g)) = find_elimination(&relators) else {
            return GroupPresentation {
                generators,
                relators,
            };
        };
        let relator = relators.remove(ri);
        let replacement = solve_for(&relator, &g);
        for r in relators.iter_mut() {
            *r = substitute(r, &g, &replacement);
        }
        generators.retain(|h| *h != g);
    }
}

/// Finds the first relator containing a generator exactly once, returning
/// the relator index and the lexicographically least such generator.
fn find_elimination(relators: &[Vec<Letter>]) -> Option<(usize, String)> {
    for (ri, r) in relators.iter().enumerate() {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (g, _) in r {
            *counts.entry(g.as_str()).or_insert(0) += 1;
        }
        if let Some(g) = counts
            .iter()
            .filter(|(_, c)| **c == 1)
            .map(|(g, _)| g.to_string())
            .next()
        {
            return Some((ri, g));
        }
    }
    None
}

/// Solves a relator for a generator occurring exactly once: rotates the
/// occurrence to the front, makes it positive, and returns the word the
/// generator equals.
fn solve_for(relator: &[Letter], g: &str) -> Vec<Letter> {
    let pos = relator
        .iter()
        .position(|(h, _)| h == g)
        .expect("generator occurs");
    let mut rot = relator.to_vec();
    rot.rotate_left(pos);
    if rot[0].1 {
        rot = invert(&rot);
        let pos = rot
            .iter()
            .position(|(h, _)| h == g)
            .expect("generator occurs");
        rot.rotate_left(pos);
    }
    // rot = g w with g positive, so g = w^-1.
    invert(&rot[1..])
}

fn substitute(word: &[Letter], g: &str, replacement: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for l in word {
        if l.0 == g {
            if l.1 {
                out.extend(invert(replacement));
            } else {
                out.extend(replacement.iter().cloned());
            }
        } else {
            out.push(l.clone());
        }
    }
    free_reduce(&out)
}

/// True when the word is the defining relator of the 3-strand braid group in
/// two generators: up to rotation, inversion and renaming it reads
/// x y x y^-1 x^-1 y^-1.
pub fn is_braid_relator(word: &[Letter]) -> bool {
    let w = cyclic_reduce(word);
    if w.len() != 6 {
        return false;
    }
    let names: BTreeSet<&str> = w.iter().map(|(g, _)| g.as_str()).collect();
    if names.len() != 2 {
        return false;
    }
    for candidate in [w.clone(), invert(&w)] {
        for r in 0..6 {
            let mut rot = candidate.clone();
            rot.rotate_left(r);
            let signs: Vec<bool> = rot.iter().map(|(_, s)| *s).collect();
            let alternating = rot.windows(2).all(|p| p[0].0 != p[1].0);
            if signs == [false, false, false, true, true, true] && alternating {
                return true;
            }
        }
    }
    false
}
