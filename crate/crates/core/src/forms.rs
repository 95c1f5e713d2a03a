//! Bilinear forms attached to maximal rigid sets, the piecewise-linear
//! transport of index vectors across mutations, and the model checks built
//! on them: invariance of the pairing, index antisymmetry under the shift,
//! positive definiteness and determinant constancy, and congruence of the
//! forms at two vertices.

use crate::exact::{is_positive_definite, Int, Rational, RationalMatrix, RationalVector};
use crate::model::{ExchangeTriangle, FanModel};
use num::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    #[error("model has no hom table")]
    MissingHomTable,
    #[error("model has no sigma data")]
    MissingSigma,
    #[error("model has no exchange data: {0}")]
    MissingExchange(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("bad exchange data: {0}")]
    BadExchange(String),
    #[error("singular summand basis: {0}")]
    SingularBasis(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// The pairing matrix of one maximal rigid set: entry (i, j) is the hom
/// dimension from the i-th to the j-th summand in the set's listed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanForm {
    pub reference: String,
    pub matrix: RationalMatrix,
    pub ordering: Vec<String>,
}

impl CartanForm {
    /// ξᵀ C η, exactly.
    pub fn pairing(
        &self,
        xi: &RationalVector,
        eta: &RationalVector,
    ) -> Result<Rational, FormsError> {
        if xi.dim() != self.matrix.rows() || eta.dim() != self.matrix.rows() {
            return Err(FormsError::DimensionMismatch(format!(
                "form is {}x{}, arguments have dims {} and {}",
                self.matrix.rows(),
                self.matrix.cols(),
                xi.dim(),
                eta.dim()
            )));
        }
        Ok(xi.dot(&self.matrix.mul_vec(eta)))
    }
}

pub fn cartan_form(model: &FanModel, reference: &str) -> Result<CartanForm, FormsError> {
    if model.hom_dims.is_none() {
        return Err(FormsError::MissingHomTable);
    }
    let m = model
        .rigid_set(reference)
        .ok_or_else(|| FormsError::UnknownLabel(reference.to_string()))?;
    let entries: Vec<Vec<Rational>> = m
        .summands
        .iter()
        .map(|a| {
            m.summands
                .iter()
                .map(|b| {
                    Rational::from(Int::from(
                        model.hom_dim(a, b).expect("complete hom table"),
                    ))
                })
                .collect()
        })
        .collect();
    Ok(CartanForm {
        reference: reference.to_string(),
        matrix: RationalMatrix::new(entries).expect("square nonempty"),
        ordering: m.summands.clone(),
    })
}

/// Transport data across one mutation, in slot-aligned coordinates: the
/// mutated summand sits at `mutated_index` in both bases, and the two class
/// vectors record the two candidate images of its basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPair {
    pub mutated_index: usize,
    pub b_plus_class: Vec<Int>,
    pub b_minus_class: Vec<Int>,
}

/// The one place the sign rule lives: coefficient ≥ 0 at the mutated slot
/// picks the plus class, ≤ 0 the minus class. At zero the two agree because
/// both classes only enter multiplied by that coefficient.
pub fn apply_phi(pair: &PhiPair, xi: &[Int]) -> Vec<Int> {
    let i = pair.mutated_index;
    let c = &xi[i];
    let class = if c.is_negative() {
        &pair.b_minus_class
    } else {
        &pair.b_plus_class
    };
    let mut out: Vec<Int> = xi.to_vec();
    out[i] = Int::zero();
    for (j, entry) in out.iter_mut().enumerate() {
        *entry += c * &class[j];
    }
    out
}

fn position(order: &[String], label: &str) -> Result<usize, FormsError> {
    order
        .iter()
        .position(|s| s == label)
        .ok_or_else(|| FormsError::BadExchange(format!("label {} not in summand basis", label)))
}

/// The PhiPair of one exchange edge, in coordinates aligned with the source
/// summand order (the replaced slot holds the incoming summand on the target
/// side).
pub fn phi_pair(
    source_order: &[String],
    t: &ExchangeTriangle,
    new_summand: &str,
) -> Result<PhiPair, FormsError> {
    let i = position(source_order, &t.replaced)?;
    let d = source_order.len();
    let mut plus = vec![Int::zero(); d];
    let mut minus = vec![Int::zero(); d];
    plus[i] = -Int::one();
    minus[i] = -Int::one();
    for label in &t.b_plus {
        if label == &t.replaced || label == new_summand {
            return Err(FormsError::BadExchange(format!(
                "middle term {} coincides with an exchanged summand",
                label
            )));
        }
        let j = position(source_order, label)?;
        plus[j] += Int::one();
    }
    for label in &t.b_minus {
        if label == &t.replaced || label == new_summand {
            return Err(FormsError::BadExchange(format!(
                "middle term {} coincides with an exchanged summand",
                label
            )));
        }
        let j = position(source_order, label)?;
        minus[j] += Int::one();
    }
    Ok(PhiPair {
        mutated_index: i,
        b_plus_class: plus,
        b_minus_class: minus,
    })
}

/// Index vectors of every indecomposable with respect to every maximal
/// rigid set, each in that set's listed summand order. Computed by walking
/// the exchange graph breadth-first from the global reference and
/// transporting the whole table across each edge.
pub fn reference_tables(
    model: &FanModel,
) -> Result<BTreeMap<String, BTreeMap<String, Vec<Int>>>, FormsError> {
    let exchange = model
        .exchange
        .as_ref()
        .ok_or_else(|| FormsError::MissingExchange("index transport needs it".into()))?;
    let mut tables: BTreeMap<String, BTreeMap<String, Vec<Int>>> = BTreeMap::new();
    let mut base = BTreeMap::new();
    for ind in &model.indecomposables {
        base.insert(ind.label.clone(), ind.index.clone());
    }
    tables.insert(model.reference.clone(), base);
    let mut queue = VecDeque::from([model.reference.clone()]);
    while let Some(cur) = queue.pop_front() {
        let cur_order = model
            .rigid_set(&cur)
            .ok_or_else(|| FormsError::UnknownLabel(cur.clone()))?
            .summands
            .clone();
        for t in exchange.iter().filter(|t| t.from == cur) {
            if tables.contains_key(&t.to) {
                continue;
            }
            let target = model
                .rigid_set(&t.to)
                .ok_or_else(|| FormsError::UnknownLabel(t.to.clone()))?;
            let new_summand = target
                .summands
                .iter()
                .find(|s| !cur_order.contains(s))
                .ok_or_else(|| {
                    FormsError::BadExchange(format!(
                        "{} and {} do not differ by one summand",
                        t.from, t.to
                    ))
                })?
                .clone();
            let pair = phi_pair(&cur_order, t, &new_summand)?;
            // Aligned target order: the replaced slot now holds the new summand.
            let mut aligned = cur_order.clone();
            aligned[pair.mutated_index] = new_summand;
            let source_table = tables.get(&cur).expect("visited");
            let mut target_table = BTreeMap::new();
            for (label, xi) in source_table {
                let moved = apply_phi(&pair, xi);
                // Permute from the aligned order to the target's listed order.
                let permuted: Vec<Int> = target
                    .summands
                    .iter()
                    .map(|s| {
                        let j = aligned.iter().position(|a| a == s).expect("same label set");
                        moved[j].clone()
                    })
                    .collect();
                target_table.insert(label.clone(), permuted);
            }
            tables.insert(t.to.clone(), target_table);
            queue.push_back(t.to.clone());
        }
    }
    for m in &model.maximal_rigid {
        if !tables.contains_key(&m.label) {
            return Err(FormsError::MissingExchange(format!(
                "no exchange path from {} to {}",
                model.reference, m.label
            )));
        }
    }
    Ok(tables)
}

/// Outcome of one model check, serializable as
/// `{check, model, status, witnesses}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub model: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl Report {
    fn new(check: &str, model: &FanModel, witnesses: Vec<String>) -> Report {
        Report {
            check: check.to_string(),
            model: model.reference.clone(),
            passed: witnesses.is_empty(),
            witnesses,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "model": self.model,
            "status": if self.passed { "pass" } else { "fail" },
            "witnesses": self.witnesses,
        })
    }
}

fn int_vec_to_rational(v: &[Int]) -> RationalVector {
    RationalVector::from_bigints(v)
}

fn fmt_int_vec(v: &[Int]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(", "))
}

/// For every pair of maximal rigid sets and every ordered pair of
/// indecomposables, compare the pairing of their transported index vectors
/// under the two Cartan forms. Reports every disagreement.
pub fn check_invariance(model: &FanModel) -> Result<Report, FormsError> {
    if model.hom_dims.is_none() {
        return Err(FormsError::MissingHomTable);
    }
    let tables = reference_tables(model)?;
    let forms: BTreeMap<String, CartanForm> = model
        .maximal_rigid
        .iter()
        .map(|m| cartan_form(model, &m.label).map(|f| (m.label.clone(), f)))
        .collect::<Result<_, _>>()?;
    let labels: Vec<&String> = model.maximal_rigid.iter().map(|m| &m.label).collect();
    let indecs: Vec<&String> = model.indecomposables.iter().map(|i| &i.label).collect();
    let mut witnesses = Vec::new();
    for (a, l) in labels.iter().enumerate() {
        for m in labels.iter().skip(a + 1) {
            let fl = &forms[l.as_str()];
            let fm = &forms[m.as_str()];
            let tl = &tables[l.as_str()];
            let tm = &tables[m.as_str()];
            for n1 in &indecs {
                for n2 in &indecs {
                    let vl = fl.pairing(
                        &int_vec_to_rational(&tl[n1.as_str()]),
                        &int_vec_to_rational(&tl[n2.as_str()]),
                    )?;
                    let vm = fm.pairing(
                        &int_vec_to_rational(&tm[n1.as_str()]),
                        &int_vec_to_rational(&tm[n2.as_str()]),
                    )?;
                    if vl != vm {
                        witnesses.push(format!(
                            "references {} and {}, pair ({}, {}): {} vs {}",
                            l, m, n1, n2, vl, vm
                        ));
                    }
                }
            }
        }
    }
    Ok(Report::new("invariance", model, witnesses))
}

/// Verify index(σn) = −index(n) for every indecomposable, with respect to
/// every maximal rigid set whose index table is computable (all of them when
/// exchange data is present, otherwise the global reference only).
pub fn check_antisymmetry(model: &FanModel) -> Result<Report, FormsError> {
    let sigma = model.sigma.as_ref().ok_or(FormsError::MissingSigma)?;
    let tables = if model.exchange.is_some() {
        reference_tables(model)?
    } else {
        let mut base = BTreeMap::new();
        for ind in &model.indecomposables {
            base.insert(ind.label.clone(), ind.index.clone());
        }
        BTreeMap::from([(model.reference.clone(), base)])
    };
    let mut witnesses = Vec::new();
    for (reference, table) in &tables {
        for ind in &model.indecomposables {
            let image = sigma.get(&ind.label).expect("validated permutation");
            let lhs = &table[image];
            let rhs: Vec<Int> = table[&ind.label].iter().map(|x| -x).collect();
            if lhs != &rhs {
                witnesses.push(format!(
                    "reference {}: index({}) = {} but -index({}) = {}",
                    reference,
                    image,
                    fmt_int_vec(lhs),
                    ind.label,
                    fmt_int_vec(&rhs)
                ));
            }
        }
    }
    Ok(Report::new("antisymmetry", model, witnesses))
}

/// For every maximal rigid set: the symmetrized Cartan form is positive
/// definite, the form is nondegenerate, and the determinant does not depend
/// on the set.
pub fn check_forms(model: &FanModel) -> Result<Report, FormsError> {
    if model.hom_dims.is_none() {
        return Err(FormsError::MissingHomTable);
    }
    let mut witnesses = Vec::new();
    let mut dets: Vec<(String, Rational)> = Vec::new();
    for m in &model.maximal_rigid {
        let form = cartan_form(model, &m.label)?;
        let sym = form
            .matrix
            .add(&form.matrix.transpose())
            .expect("same shape");
        match is_positive_definite(&sym) {
            Ok(true) => {}
            Ok(false) => witnesses.push(format!(
                "reference {}: symmetrized form is not positive definite",
                m.label
            )),
            Err(e) => witnesses.push(format!("reference {}: {}", m.label, e)),
        }
        let det = form.matrix.det().expect("square");
        if det.is_zero() {
            witnesses.push(format!("reference {}: form is degenerate", m.label));
        }
        dets.push((m.label.clone(), det));
    }
    if let Some((first_label, first)) = dets.first() {
        for (label, det) in dets.iter().skip(1) {
            if det != first {
                witnesses.push(format!(
                    "determinant differs: {} at {} vs {} at {}",
                    first, first_label, det, label
                ));
            }
        }
    }
    Ok(Report::new("forms", model, witnesses))
}

fn columns_matrix(model: &FanModel, label: &str) -> Result<RationalMatrix, FormsError> {
    let m = model
        .rigid_set(label)
        .ok_or_else(|| FormsError::UnknownLabel(label.to_string()))?;
    let cols: Vec<RationalVector> = m
        .summands
        .iter()
        .map(|s| RationalVector::from_bigints(model.index_of(s).expect("validated")))
        .collect();
    RationalMatrix::from_columns(&cols).map_err(|e| FormsError::DimensionMismatch(e.to_string()))
}

/// Congruence of the Cartan forms at two vertices through the basis-change
/// matrix of their stored global index bases: Cart_m = Pᵀ Cart_ℓ P with
/// det P = ±1. When exchange data is present and every step between the two
/// vertices has equal plus and minus middle terms, the transport is linear
/// and its composite is cross-checked against P.
pub fn check_congruence(model: &FanModel, l: &str, m: &str) -> Result<Report, FormsError> {
    if model.hom_dims.is_none() {
        return Err(FormsError::MissingHomTable);
    }
    let form_l = cartan_form(model, l)?;
    let form_m = cartan_form(model, m)?;
    let lmat = columns_matrix(model, l)?;
    let mmat = columns_matrix(model, m)?;
    let linv = lmat
        .inverse()
        .map_err(|e| FormsError::DimensionMismatch(e.to_string()))?
        .ok_or_else(|| {
            FormsError::SingularBasis(format!("summand indices of {} are dependent", l))
        })?;
    let msing = mmat
        .inverse()
        .map_err(|e| FormsError::DimensionMismatch(e.to_string()))?;
    if msing.is_none() {
        return Err(FormsError::SingularBasis(format!(
            "summand indices of {} are dependent",
            m
        )));
    }
    let p = linv.mul_mat(&mmat);
    let mut witnesses = Vec::new();
    let det = p.det().expect("square");
    if !(det == Rational::one() || det == -Rational::one()) {
        witnesses.push(format!("basis change has determinant {}", det));
    }
    let conj = p.transpose().mul_mat(&form_l.matrix).mul_mat(&p);
    if conj != form_m.matrix {
        let residual = form_m.matrix.sub(&conj).expect("same shape");
        witnesses.push(format!(
            "forms are not congruent; residual {}",
            residual.render()
        ));
    }
    if let Some(phi) = linear_transport(model, l, m)? {
        // Transport sends coordinates at l to coordinates at m, so applied
        // to P (m's basis written at l) it must give the identity.
        let composite = phi.mul_mat(&p);
        let d = composite.rows();
        if composite != RationalMatrix::identity(d) {
            witnesses.push(format!(
                "linear transport disagrees with the basis change; composite {}",
                composite.render()
            ));
        }
    }
    Ok(Report::new("congruence", model, witnesses))
}

/// The composite transport matrix along the breadth-first exchange path from
/// l to m, provided every step on it has b_plus equal to b_minus as
/// multisets (the only case in which transport is a single linear map).
/// Returns Ok(None) when exchange data is absent, no path exists, or some
/// step is genuinely piecewise.
fn linear_transport(
    model: &FanModel,
    l: &str,
    m: &str,
) -> Result<Option<RationalMatrix>, FormsError> {
    let Some(exchange) = model.exchange.as_ref() else {
        return Ok(None);
    };
    // Breadth-first parent pointers from l over exchange edges.
    let mut parent: BTreeMap<String, &ExchangeTriangle> = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::from([l.to_string()]);
    let mut queue = VecDeque::from([l.to_string()]);
    while let Some(cur) = queue.pop_front() {
        for t in exchange.iter().filter(|t| t.from == cur) {
            if seen.insert(t.to.clone()) {
                parent.insert(t.to.clone(), t);
                queue.push_back(t.to.clone());
            }
        }
    }
    if l != m && !parent.contains_key(m) {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut cur = m.to_string();
    while cur != l {
        let t = parent[&cur];
        steps.push(t);
        cur = t.from.clone();
    }
    steps.reverse();
    let mut sorted_plus;
    for t in &steps {
        sorted_plus = t.b_plus.clone();
        sorted_plus.sort();
        let mut sorted_minus = t.b_minus.clone();
        sorted_minus.sort();
        if sorted_plus != sorted_minus {
            return Ok(None);
        }
    }
    let dim = model.dim;
    let mut composite = RationalMatrix::identity(dim);
    for t in steps {
        let source = model.rigid_set(&t.from).expect("validated").summands.clone();
        let target = model.rigid_set(&t.to).expect("validated").summands.clone();
        let new_summand = target
            .iter()
            .find(|s| !source.contains(s))
            .ok_or_else(|| {
                FormsError::BadExchange(format!(
                    "{} and {} do not differ by one summand",
                    t.from, t.to
                ))
            })?
            .clone();
        let pair = phi_pair(&source, t, &new_summand)?;
        let mut aligned = source.clone();
        aligned[pair.mutated_index] = new_summand;
        // Linear here, so the matrix is determined by images of basis vectors.
        let mut cols = Vec::new();
        for j in 0..dim {
            let mut e = vec![Int::zero(); dim];
            e[j] = Int::one();
            let image_aligned = apply_phi(&pair, &e);
            let image: Vec<Int> = target
                .iter()
                .map(|s| {
                    let k = aligned.iter().position(|a| a == s).expect("same label set");
                    image_aligned[k].clone()
                })
                .collect();
            cols.push(RationalVector::from_bigints(&image));
        }
        let step_matrix = RationalMatrix::from_columns(&cols).expect("square");
        composite = step_matrix.mul_mat(&composite);
    }
    Ok(Some(composite))
}
