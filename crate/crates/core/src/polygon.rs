//! Diagonals of a convex (n+3)-gon: crossing tests, the rotation that
//! models the shift, triangulations and their flips, hom dimensions, and
//! integer index vectors computed by transporting basis vectors along flip
//! paths. `build_fan_model` packages all of it as an interchange model.

use crate::exact::{Int, Rational, RationalMatrix};
use crate::forms::{apply_phi, PhiPair};
use crate::model::{ExchangeTriangle, FanModel, Indecomposable, MaximalRigid};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("invalid diagonal: {0}")]
    InvalidDiagonal(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("diagonal {0} is not in the triangulation")]
    NotInTriangulation(String),
}

/// A diagonal of the (n+3)-gon, stored with endpoints in increasing order;
/// boundary edges are excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagonal {
    pub a: u32,
    pub b: u32,
}

impl Diagonal {
    pub fn new(n: u32, i: u32, j: u32) -> Result<Diagonal, PolygonError> {
        let v = n + 3;
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        if a < 1 || b > v || a == b {
            return Err(PolygonError::InvalidDiagonal(format!(
                "endpoints {{{}, {}}} outside 1..={}",
                i, j, v
            )));
        }
        if b - a == 1 || b - a == v - 1 {
            return Err(PolygonError::InvalidDiagonal(format!(
                "{{{}, {}}} is a boundary edge of the {}-gon",
                a, b, v
            )));
        }
        Ok(Diagonal { a, b })
    }

    pub fn label(&self, n: u32) -> String {
        if n + 3 <= 9 {
            format!("{}{}", self.a, self.b)
        } else {
            format!("{}-{}", self.a, self.b)
        }
    }
}

/// Endpoints strictly interleave around the polygon.
pub fn crossing(x: Diagonal, y: Diagonal) -> bool {
    (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b)
}

fn rotate_vertex(n: u32, v: u32) -> u32 {
    if v == 1 {
        n + 3
    } else {
        v - 1
    }
}

fn unrotate_vertex(n: u32, v: u32) -> u32 {
    if v == n + 3 {
        1
    } else {
        v + 1
    }
}

/// The shift: both endpoints move one step clockwise.
pub fn sigma(n: u32, d: Diagonal) -> Diagonal {
    Diagonal::new(n, rotate_vertex(n, d.a), rotate_vertex(n, d.b))
        .expect("rotation preserves non-adjacency")
}

pub fn sigma_inverse(n: u32, d: Diagonal) -> Diagonal {
    Diagonal::new(n, unrotate_vertex(n, d.a), unrotate_vertex(n, d.b))
        .expect("rotation preserves non-adjacency")
}

/// Hom dimension between two diagonals: 1 exactly when the source crosses
/// the counterclockwise rotation of the target. Validated against an
/// independent mesh-recursion oracle in the test suite.
pub fn hom_dim(n: u32, x: Diagonal, y: Diagonal) -> u64 {
    u64::from(crossing(x, sigma_inverse(n, y)))
}

pub fn all_diagonals(n: u32) -> Vec<Diagonal> {
    let v = n + 3;
    let mut out = Vec::new();
    for i in 1..=v {
        for j in (i + 2)..=v {
            if j - i == v - 1 {
                continue;
            }
            out.push(Diagonal { a: i, b: j });
        }
    }
    out
}

pub type Triangulation = BTreeSet<Diagonal>;

/// Validate a set of diagonals as a triangulation: exactly n of them,
/// pairwise non-crossing (maximality is automatic at that count).
pub fn triangulation(
    n: u32,
    diagonals: impl IntoIterator<Item = Diagonal>,
) -> Result<Triangulation, PolygonError> {
    let set: Triangulation = diagonals.into_iter().collect();
    if set.len() != n as usize {
        return Err(PolygonError::InvalidTriangulation(format!(
            "expected {} diagonals, got {}",
            n,
            set.len()
        )));
    }
    let list: Vec<Diagonal> = set.iter().copied().collect();
    for (k, x) in list.iter().enumerate() {
        for y in &list[k + 1..] {
            if crossing(*x, *y) {
                return Err(PolygonError::InvalidTriangulation(format!(
                    "{} crosses {}",
                    x.label(n),
                    y.label(n)
                )));
            }
        }
    }
    Ok(set)
}

pub fn triangulation_label(n: u32, t: &Triangulation) -> String {
    let parts: Vec<String> = t.iter().map(|d| d.label(n)).collect();
    parts.join("+")
}

/// Exhaustive enumeration by backtracking over the lex-ordered diagonal
/// list; the count is the Catalan number of n + 1.
pub fn all_triangulations(n: u32) -> Vec<Triangulation> {
    let diags = all_diagonals(n);
    let mut out = Vec::new();
    let mut current: Vec<Diagonal> = Vec::new();
    fn recurse(
        n: usize,
        diags: &[Diagonal],
        start: usize,
        current: &mut Vec<Diagonal>,
        out: &mut Vec<Triangulation>,
    ) {
        if current.len() == n {
            out.push(current.iter().copied().collect());
            return;
        }
        for k in start..diags.len() {
            let d = diags[k];
            if current.iter().all(|c| !crossing(*c, d)) {
                current.push(d);
                recurse(n, diags, k + 1, current, out);
                current.pop();
            }
        }
    }
    recurse(n as usize, &diags, 0, &mut current, &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipOutcome {
    pub result: Triangulation,
    pub new_diagonal: Diagonal,
    /// Sides of the flip quadrilateral adjacent to the corner shared with
    /// the new diagonal's first arc, boundary edges dropped.
    pub b_plus: Vec<Diagonal>,
    pub b_minus: Vec<Diagonal>,
}

/// Replace one diagonal by the other diagonal of its quadrilateral. The two
/// opposite side pairs of that quadrilateral, with boundary edges dropped,
/// are returned as the plus and minus middle terms.
pub fn flip(n: u32, t: &Triangulation, d: Diagonal) -> Result<FlipOutcome, PolygonError> {
    if !t.contains(&d) {
        return Err(PolygonError::NotInTriangulation(d.label(n)));
    }
    let v = n + 3;
    let connected = |x: u32, y: u32| -> bool {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        b - a == 1 || b - a == v - 1 || t.contains(&Diagonal { a, b })
    };
    // The apex on each side of d is the unique vertex joined to both
    // endpoints; two such vertices on one side would force a crossing.
    let side1: Vec<u32> = (d.a + 1..d.b).collect();
    let side2: Vec<u32> = (d.b + 1..=v).chain(1..d.a).collect();
    let apex = |side: &[u32]| -> u32 {
        *side
            .iter()
            .find(|&&x| connected(d.a, x) && connected(d.b, x))
            .expect("every diagonal of a triangulation borders two triangles")
    };
    let q = apex(&side1);
    let s = apex(&side2);
    // Quadrilateral in counterclockwise order: (d.a, q, d.b, s).
    let new_diagonal = Diagonal::new(n, q, s).expect("opposite quadrilateral corners");
    let mut result = t.clone();
    result.remove(&d);
    result.insert(new_diagonal);
    let keep = |x: u32, y: u32| -> Option<Diagonal> { Diagonal::new(n, x, y).ok() };
    let mut b_plus: Vec<Diagonal> = [keep(d.a, q), keep(d.b, s)].into_iter().flatten().collect();
    let mut b_minus: Vec<Diagonal> = [keep(d.a, s), keep(q, d.b)].into_iter().flatten().collect();
    b_plus.sort();
    b_minus.sort();
    Ok(FlipOutcome {
        result,
        new_diagonal,
        b_plus,
        b_minus,
    })
}

/// The polygon model: a fixed reference triangulation, the index vector of
/// every diagonal with respect to it, and the full hom table. Built once;
/// all queries afterwards are pure lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonModel {
    pub n: u32,
    pub reference: Triangulation,
    pub index_table: BTreeMap<Diagonal, Vec<Int>>,
    pub hom_table: BTreeMap<(Diagonal, Diagonal), u64>,
}

impl PolygonModel {
    /// Reference defaults to the lexicographically least triangulation,
    /// the fan of diagonals at vertex 1.
    pub fn new(n: u32) -> Result<PolygonModel, PolygonError> {
        let fan: Result<Vec<Diagonal>, PolygonError> =
            (3..=n + 2).map(|j| Diagonal::new(n, 1, j)).collect();
        PolygonModel::with_reference(n, triangulation(n, fan?)?)
    }

    pub fn with_reference(n: u32, reference: Triangulation) -> Result<PolygonModel, PolygonError> {
        let reference = triangulation(n, reference)?;
        let diagonals = all_diagonals(n);
        let mut hom_table = BTreeMap::new();
        for &x in &diagonals {
            for &y in &diagonals {
                hom_table.insert((x, y), hom_dim(n, x, y));
            }
        }
        let index_table = build_index_table(n, &reference)?;
        Ok(PolygonModel {
            n,
            reference,
            index_table,
            hom_table,
        })
    }

    pub fn index_vector(&self, d: Diagonal) -> &Vec<Int> {
        &self.index_table[&d]
    }

    /// Hom-dimension matrix of a triangulation's diagonals in increasing
    /// order.
    pub fn cartan_matrix(&self, t: &Triangulation) -> RationalMatrix {
        let list: Vec<Diagonal> = t.iter().copied().collect();
        let rows: Vec<Vec<Rational>> = list
            .iter()
            .map(|x| {
                list.iter()
                    .map(|y| Rational::from(Int::from(self.hom_table[&(*x, *y)])))
                    .collect()
            })
            .collect();
        RationalMatrix::new(rows).expect("triangulations are nonempty")
    }
}

/// Index vectors of all diagonals with respect to the reference: each
/// diagonal gets the basis vector in the first triangulation containing it
/// (breadth-first from the reference), transported back step by step.
fn build_index_table(
    n: u32,
    reference: &Triangulation,
) -> Result<BTreeMap<Diagonal, Vec<Int>>, PolygonError> {
    let mut parent: BTreeMap<Triangulation, (Triangulation, Diagonal)> = BTreeMap::new();
    let mut first_container: BTreeMap<Diagonal, Triangulation> = BTreeMap::new();
    let mut seen = BTreeSet::from([reference.clone()]);
    let mut queue = VecDeque::from([reference.clone()]);
    while let Some(cur) = queue.pop_front() {
        for &d in &cur {
            first_container.entry(d).or_insert_with(|| cur.clone());
        }
        for &d in &cur {
            let out = flip(n, &cur, d)?;
            if seen.insert(out.result.clone()) {
                // To walk back to `cur`, flip the incoming diagonal.
                parent.insert(out.result.clone(), (cur.clone(), out.new_diagonal));
                queue.push_back(out.result);
            }
        }
    }
    let ref_order: Vec<Diagonal> = reference.iter().copied().collect();
    let mut table = BTreeMap::new();
    for d in all_diagonals(n) {
        let start = first_container
            .get(&d)
            .expect("every diagonal lies in some triangulation")
            .clone();
        let mut coeffs: BTreeMap<Diagonal, Int> = BTreeMap::from([(d, Int::one())]);
        let mut cur = start;
        while &cur != reference {
            let (par, back) = parent.get(&cur).expect("breadth-first tree covers").clone();
            let out = flip(n, &cur, back)?;
            debug_assert_eq!(out.result, par);
            let source: Vec<Diagonal> = cur.iter().copied().collect();
            let slot = source.iter().position(|&x| x == back).expect("member");
            let class = |middle: &[Diagonal]| -> Vec<Int> {
                let mut c = vec![Int::zero(); source.len()];
                c[slot] = -Int::one();
                for m in middle {
                    let j = source.iter().position(|x| x == m).expect("side in source");
                    c[j] += Int::one();
                }
                c
            };
            let pair = PhiPair {
                mutated_index: slot,
                b_plus_class: class(&out.b_plus),
                b_minus_class: class(&out.b_minus),
            };
            let xi: Vec<Int> = source
                .iter()
                .map(|x| coeffs.get(x).cloned().unwrap_or_else(Int::zero))
                .collect();
            let moved = apply_phi(&pair, &xi);
            let mut aligned = source;
            aligned[slot] = out.new_diagonal;
            coeffs = aligned
                .into_iter()
                .zip(moved)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            cur = par;
        }
        let vector: Vec<Int> = ref_order
            .iter()
            .map(|x| coeffs.get(x).cloned().unwrap_or_else(Int::zero))
            .collect();
        table.insert(d, vector);
    }
    Ok(table)
}

/// The full interchange model of the (n+3)-gon: every diagonal with its
/// index vector, every triangulation, the hom table, the rotation, and the
/// exchange data of every flip.
pub fn build_fan_model(n: u32) -> Result<FanModel, PolygonError> {
    let model = PolygonModel::new(n)?;
    let diagonals = all_diagonals(n);
    let tris = all_triangulations(n);
    let indecomposables: Vec<Indecomposable> = diagonals
        .iter()
        .map(|d| Indecomposable {
            label: d.label(n),
            index: model.index_table[d].clone(),
        })
        .collect();
    let maximal_rigid: Vec<MaximalRigid> = tris
        .iter()
        .map(|t| MaximalRigid {
            label: triangulation_label(n, t),
            summands: t.iter().map(|d| d.label(n)).collect(),
        })
        .collect();
    let mut hom_dims = BTreeMap::new();
    for &x in &diagonals {
        let row: BTreeMap<String, u64> = diagonals
            .iter()
            .map(|&y| (y.label(n), model.hom_table[&(x, y)]))
            .collect();
        hom_dims.insert(x.label(n), row);
    }
    let sigma_map: BTreeMap<String, String> = diagonals
        .iter()
        .map(|&d| (d.label(n), sigma(n, d).label(n)))
        .collect();
    let mut exchange = Vec::new();
    for t in &tris {
        for &d in t {
            let out = flip(n, t, d).expect("member");
            exchange.push(ExchangeTriangle {
                from: triangulation_label(n, t),
                to: triangulation_label(n, &out.result),
                replaced: d.label(n),
                b_plus: out.b_plus.iter().map(|x| x.label(n)).collect(),
                b_minus: out.b_minus.iter().map(|x| x.label(n)).collect(),
            });
        }
    }
    Ok(FanModel {
        dim: n as usize,
        reference: triangulation_label(n, &model.reference),
        indecomposables,
        maximal_rigid,
        hom_dims: Some(hom_dims),
        sigma: Some(sigma_map),
        exchange: Some(exchange),
    })
}
