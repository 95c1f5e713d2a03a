use super::quiver::{PathWord, Presentation, Step};
use super::GroupoidError;
use std::collections::{BTreeSet, VecDeque};

/// Outcome of a bounded equality search. The search is complete only up to
/// the given depth, so a negative answer never claims the words are distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordEquality {
    Equal,
    DistinctUpToDepth,
}

fn key(word: &PathWord) -> (String, Vec<String>) {
    let reduced = word.freely_reduced();
    (
        reduced.source().to_string(),
        reduced.steps().iter().map(|s| s.render()).collect(),
    )
}

/// Replaces the contiguous block `word[at .. at + old.len()]` by `new`,
/// provided the block matches `old` exactly (step for step).
fn rewrite_at(word: &PathWord, at: usize, old: &PathWord, new: &PathWord) -> Option<PathWord> {
    let steps = word.steps();
    if at + old.len() > steps.len() {
        return None;
    }
    if steps[at..at + old.len()] != *old.steps() {
        return None;
    }
    let mut out: Vec<Step> = steps[..at].to_vec();
    out.extend(new.steps().iter().cloned());
    out.extend(steps[at + old.len()..].iter().cloned());
    let base = if at == 0 { new.source() } else { word.source() };
    PathWord::new(base, out).ok()
}

/// All words one move away: a defining relation applied to a contiguous
/// block, one free cancellation, or one free expansion at a vertex the word
/// visits.
fn neighbours(p: &Presentation, word: &PathWord) -> Vec<PathWord> {
    let mut out = Vec::new();
    for (lhs, rhs) in &p.relations {
        for (old, new) in [(lhs, rhs), (rhs, lhs)] {
            if old.is_empty() {
                continue;
            }
            for at in 0..=word.len().saturating_sub(old.len()) {
                if let Some(w) = rewrite_at(word, at, old, new) {
                    out.push(w);
                }
            }
        }
    }
    let steps = word.steps();
    for at in 0..steps.len().saturating_sub(1) {
        if steps[at].cancels(&steps[at + 1]) {
            let mut rest: Vec<Step> = steps[..at].to_vec();
            rest.extend(steps[at + 2..].iter().cloned());
            if let Ok(w) = PathWord::new(word.source(), rest) {
                out.push(w);
            }
        }
    }
    let vertices = word.vertex_sequence();
    for a in &p.generators {
        for (at, v) in vertices.iter().enumerate() {
            let insertion = if *v == a.source {
                Some(vec![
                    Step::forward(&a.source, &a.target),
                    Step::backward(&a.source, &a.target),
                ])
            } else if *v == a.target {
                Some(vec![
                    Step::backward(&a.source, &a.target),
                    Step::forward(&a.source, &a.target),
                ])
            } else {
                None
            };
            if let Some(pair) = insertion {
                let mut steps: Vec<Step> = word.steps()[..at].to_vec();
                steps.extend(pair);
                steps.extend(word.steps()[at..].iter().cloned());
                if let Ok(w) = PathWord::new(word.source(), steps) {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Breadth-first search for a chain of elementary moves carrying `w1` to
/// `w2`, exploring only words of length at most `depth`. Equality is decided
/// up to free reduction at every state.
pub fn words_equal_bounded(
    p: &Presentation,
    w1: &PathWord,
    w2: &PathWord,
    depth: usize,
) -> Result<WordEquality, GroupoidError> {
    if w1.source() != w2.source() || w1.target() != w2.target() {
        return Err(GroupoidError::EndpointMismatch(format!(
            "{} -> {} vs {} -> {}",
            w1.source(),
            w1.target(),
            w2.source(),
            w2.target()
        )));
    }
    let goal = key(w2);
    let start = w1.clone();
    if key(&start) == goal {
        return Ok(WordEquality::Equal);
    }
    let mut seen: BTreeSet<(String, Vec<String>)> = BTreeSet::new();
    seen.insert(key(&start));
    let mut queue = VecDeque::from([start]);
    while let Some(word) = queue.pop_front() {
        for next in neighbours(p, &word) {
            if next.len() > depth {
                continue;
            }
            let k = key(&next);
            if k == goal {
                return Ok(WordEquality::Equal);
            }
            if seen.insert(k) {
                queue.push_back(next);
            }
        }
    }
    Ok(WordEquality::DistinctUpToDepth)
}
