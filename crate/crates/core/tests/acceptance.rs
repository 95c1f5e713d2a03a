//! End-to-end acceptance checks. Every criterion prints one line, in order,
//! and the test fails if any criterion does. The hom-dimension oracle gate
//! (criterion 11) is computed before everything else since the rest of the
//! suite leans on the hom rule it certifies. All comparisons are exact
//! integer or rational arithmetic; there are no tolerances.

mod support;

use greenfan_core::exact::{int, primitive, Int};
use greenfan_core::fan::{recognize_arrangement, ray_reduction, shared_facet, Arrangement, ChamberDecomposition, SimplicialCone};
use greenfan_core::forms::{
    cartan_form, check_antisymmetry, check_congruence, check_forms, check_invariance,
    reference_tables,
};
use greenfan_core::groupoid::{
    build_quiver, deligne_groupoid, green_presentation, normal_form, tietze_simplify,
    vertex_group, words_equal_bounded, is_braid_relator, MutationQuiver, PathWord, WordEquality,
};
use greenfan_core::model::{generate_dihedral, generate_sigma_swap, FanModel};
use greenfan_core::polygon::{all_diagonals, build_fan_model, hom_dim};
use greenfan_core::Rational;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use support::{mesh_hom_dim, transport_along, Lcg};

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

/// Criterion 11, the gate: the crossing rule for hom dimensions agrees with
/// an independently computed mesh-recursion oracle on every ordered pair of
/// diagonals, for ranks 2 and 3.
fn criterion_11() -> Result<(), String> {
    for n in [2u32, 3] {
        for &x in &all_diagonals(n) {
            for &y in &all_diagonals(n) {
                let claimed = hom_dim(n, x, y);
                let oracle = mesh_hom_dim(n, x, y);
                check(
                    claimed == oracle,
                    format!(
                        "n={}: hom({}, {}) = {} but the mesh oracle says {}",
                        n,
                        x.label(n),
                        y.label(n),
                        claimed,
                        oracle
                    ),
                )?;
            }
        }
    }
    Ok(())
}

/// Rank 2 has exactly the five known maximal rigid sets and its exchange
/// quiver is the doubled pentagon.
fn criterion_1() -> Result<(), String> {
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = model.maximal_rigid.iter().map(|m| m.label.as_str()).collect();
    check(
        labels == ["13+14", "13+35", "14+24", "24+25", "25+35"],
        format!("maximal rigid sets are {labels:?}"),
    )?;
    let quiver = build_quiver(&model).map_err(|e| e.to_string())?;
    check(quiver.vertices().len() == 5, "expected 5 vertices")?;
    check(quiver.arrows().len() == 10, "expected 10 arrows")?;
    let expected: BTreeMap<&str, [&str; 2]> = BTreeMap::from([
        ("13+14", ["13+35", "14+24"]),
        ("14+24", ["13+14", "24+25"]),
        ("24+25", ["14+24", "25+35"]),
        ("25+35", ["13+35", "24+25"]),
        ("13+35", ["13+14", "25+35"]),
    ]);
    for (v, nbrs) in expected {
        check(
            quiver.targets_from(v) == nbrs,
            format!("neighbours of {} are {:?}", v, quiver.targets_from(v)),
        )?;
    }
    Ok(())
}

/// The five index vectors are the expected ones and the cones tile the
/// plane.
fn criterion_2() -> Result<(), String> {
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    let expected: [(&str, [i64; 2]); 5] = [
        ("13", [1, 0]),
        ("14", [0, 1]),
        ("24", [-1, 1]),
        ("25", [-1, 0]),
        ("35", [0, -1]),
    ];
    for (label, v) in expected {
        let got = model
            .index_of(label)
            .ok_or_else(|| format!("missing indecomposable {label}"))?;
        let want: Vec<Int> = v.iter().map(|&x| int(x)).collect();
        check(*got == want, format!("index({label}) = {got:?}"))?;
    }
    let decomposition = model.decomposition().map_err(|e| e.to_string())?;
    let verification = decomposition.verify();
    check(
        verification.ok(),
        format!("fan violations: {:?}", verification.violations),
    )
}

/// The green presentation of rank 2 has exactly five relations, each
/// equating the three-step path around one side of the pentagon with the
/// two-step path around the other.
fn criterion_3() -> Result<(), String> {
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    let p = green_presentation(&model).map_err(|e| e.to_string())?;
    check(
        p.relations.len() == 5,
        format!("expected 5 relations, got {}", p.relations.len()),
    )?;
    let v = ["14+24", "24+25", "25+35", "13+35", "13+14"];
    let at = |i: i64| v[i.rem_euclid(5) as usize].to_string();
    let mut seen = BTreeSet::new();
    for (lhs, rhs) in &p.relations {
        let (short, long) = if lhs.len() < rhs.len() {
            (lhs, rhs)
        } else {
            (rhs, lhs)
        };
        check(
            short.len() == 2 && long.len() == 3,
            format!("relation sides have lengths {} and {}", lhs.len(), rhs.len()),
        )?;
        let i = v
            .iter()
            .position(|x| *x == long.source())
            .ok_or_else(|| format!("unknown source {}", long.source()))? as i64;
        let want_long: Vec<String> = (0..=3).map(|k| at(i + k)).collect();
        let want_short: Vec<String> = [0, -1, -2].iter().map(|k| at(i + k)).collect();
        check(
            long.vertex_sequence() == want_long,
            format!("long side from {} is {:?}", at(i), long.vertex_sequence()),
        )?;
        check(
            short.vertex_sequence() == want_short,
            format!("short side from {} is {:?}", at(i), short.vertex_sequence()),
        )?;
        check(seen.insert(i), format!("two relations based at {}", at(i)))?;
    }
    Ok(())
}

type Letter4 = (u8, i64, bool);

fn reduce4(word: &[Letter4]) -> Vec<Letter4> {
    let mut out: Vec<Letter4> = Vec::new();
    for &(k, i, s) in word {
        let i = i.rem_euclid(5);
        if out
            .last()
            .map(|&(k2, i2, s2)| k2 == k && i2 == i && s2 != s)
            .unwrap_or(false)
        {
            out.pop();
        } else {
            out.push((k, i, s));
        }
    }
    out
}

fn invert4(word: &[Letter4]) -> Vec<Letter4> {
    word.iter().rev().map(|&(k, i, s)| (k, i, !s)).collect()
}

fn is_rotation(word: &[Letter4], of: &[Letter4]) -> bool {
    if word.len() != of.len() {
        return false;
    }
    (0..of.len()).any(|r| {
        let mut rot = of.to_vec();
        rot.rotate_left(r);
        rot == word
    })
}

/// The scripted two-generator reduction of the rank-2 green group: the
/// substitution words eliminate the alpha and beta families by pure free
/// reduction, the pentagon relators collapse to the expected two-generator
/// shape, and the machine pipeline lands on the braid relation with
/// infinite cyclic abelianization.
fn criterion_4() -> Result<(), String> {
    const A: u8 = 0;
    const B: u8 = 1;
    let alpha = |i: i64, s: bool| (A, i.rem_euclid(5), s);
    let beta = |i: i64, s: bool| (B, i.rem_euclid(5), s);
    // a_j = alpha_{j-1}^-1 beta_j and b_j = beta_{j+3}^-1 alpha_{j+2} alpha_{j+1}.
    let a = |j: i64| vec![alpha(j - 1, true), beta(j, false)];
    let b = |j: i64| vec![beta(j + 3, true), alpha(j + 2, false), alpha(j + 1, false)];
    for i in 0..5i64 {
        let mut w1 = a(i - 3);
        w1.extend(b(i - 1));
        check(
            reduce4(&w1) == vec![alpha(i, false)],
            format!("a(i-3) b(i-1) at i={i} reduces to {:?}", reduce4(&w1)),
        )?;
        let mut w2 = a(i - 4);
        w2.extend(b(i - 2));
        w2.extend(a(i));
        check(
            reduce4(&w2) == vec![beta(i, false)],
            format!("a(i-4) b(i-2) a(i) at i={i} reduces to {:?}", reduce4(&w2)),
        )?;
        let mut w3 = b(i - 4);
        w3.extend(a(i - 2));
        w3.extend(b(i));
        let want3 = vec![
            beta(i - 1, true),
            alpha(i + 3, false),
            alpha(i + 2, false),
            alpha(i + 1, false),
        ];
        check(
            reduce4(&w3) == want3,
            format!("b(i-4) a(i-2) b(i) at i={i} reduces to {:?}", reduce4(&w3)),
        )?;
        // The two expressions for the same arrow compose to a rotation of
        // the inverted pentagon relator.
        let mut loop_word = w2.clone();
        loop_word.extend(invert4(&w3));
        let relator = vec![
            alpha(i + 3, false),
            alpha(i + 2, false),
            alpha(i + 1, false),
            beta(i, true),
            beta(i - 1, true),
        ];
        check(
            is_rotation(&reduce4(&loop_word), &invert4(&relator)),
            format!("substituted relator at i={i} is {:?}", reduce4(&loop_word)),
        )?;
    }
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    let p = green_presentation(&model).map_err(|e| e.to_string())?;
    let vg = vertex_group(&p, "13+14").map_err(|e| e.to_string())?;
    let reduced = tietze_simplify(&vg);
    check(
        reduced.generators.len() == 2 && reduced.relators.len() == 1,
        format!(
            "reduced to {} generators and {} relators",
            reduced.generators.len(),
            reduced.relators.len()
        ),
    )?;
    check(
        is_braid_relator(&reduced.relators[0]),
        "surviving relator is not the braid relation",
    )?;
    check(
        reduced.abelianization() == vec![int(1), int(0)],
        format!("abelianization {:?}", reduced.abelianization()),
    )
}

/// The rank-2 fan is not a hyperplane arrangement, witnessed by a ray with
/// no opposite.
fn criterion_5() -> Result<(), String> {
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    let decomposition = model.decomposition().map_err(|e| e.to_string())?;
    let recognition = recognize_arrangement(&decomposition).map_err(|e| e.to_string())?;
    check(!recognition.is_arrangement, "fan was recognized as an arrangement")?;
    let witness = recognition
        .witness
        .ok_or("recognition failed without a witness")?;
    check(
        witness.contains("(-1, 1)") && witness.contains("(1, -1)") && witness.contains("no opposite"),
        format!("witness is {witness:?}"),
    )
}

/// Builds the 14 chambers of rank 3 with respect to one reference table.
fn chambers_at(
    model: &FanModel,
    table: &BTreeMap<String, Vec<Int>>,
) -> Result<Vec<(String, SimplicialCone)>, String> {
    model
        .maximal_rigid
        .iter()
        .map(|m| {
            let rays: Vec<Vec<Int>> = m
                .summands
                .iter()
                .map(|s| table[s].clone())
                .collect();
            SimplicialCone::new(model.dim, rays)
                .map(|c| (m.label.clone(), c))
                .map_err(|e| format!("cone of {} at this reference: {}", m.label, e))
        })
        .collect()
}

/// Rank 3: 14 maximal rigid sets, 42 exchange arrows, and with respect to
/// every reference the 14 index cones are simplicial, tile without overlap,
/// and share a facet exactly when the sets differ in one summand.
fn criterion_6() -> Result<(), String> {
    let model = build_fan_model(3).map_err(|e| e.to_string())?;
    check(
        model.maximal_rigid.len() == 14,
        format!("{} maximal rigid sets", model.maximal_rigid.len()),
    )?;
    let quiver = build_quiver(&model).map_err(|e| e.to_string())?;
    check(
        quiver.arrows().len() == 42,
        format!("{} arrows", quiver.arrows().len()),
    )?;
    let decomposition = model.decomposition().map_err(|e| e.to_string())?;
    check(
        decomposition.verify().ok(),
        "stored-reference fan does not verify",
    )?;
    let tables = reference_tables(&model).map_err(|e| e.to_string())?;
    let summand_sets: BTreeMap<&str, BTreeSet<&str>> = model
        .maximal_rigid
        .iter()
        .map(|m| {
            (
                m.label.as_str(),
                m.summands.iter().map(|s| s.as_str()).collect(),
            )
        })
        .collect();
    for reference in model.maximal_rigid.iter().map(|m| &m.label) {
        let chambers = chambers_at(&model, &tables[reference])?;
        for (_, cone) in &chambers {
            check(
                cone.is_full_dimensional(),
                format!("degenerate cone at reference {reference}"),
            )?;
        }
        let decomposition = ChamberDecomposition::new(model.dim, chambers.clone())
            .map_err(|e| format!("at reference {reference}: {e}"))?;
        let verification = decomposition.verify();
        check(
            verification.ok(),
            format!(
                "fan at reference {} has violations: {:?}",
                reference, verification.violations
            ),
        )?;
        for (i, (la, ca)) in chambers.iter().enumerate() {
            for (lb, cb) in chambers.iter().skip(i + 1) {
                let adjacent = summand_sets[la.as_str()]
                    .intersection(&summand_sets[lb.as_str()])
                    .count()
                    == 2;
                let wall = shared_facet(ca, cb).map_err(|e| e.to_string())?;
                check(
                    adjacent == wall.is_some(),
                    format!(
                        "at reference {}: {} and {} adjacency {} vs shared facet {}",
                        reference,
                        la,
                        lb,
                        adjacent,
                        wall.is_some()
                    ),
                )?;
            }
        }
    }
    Ok(())
}

fn positive_walks(quiver: &MutationQuiver, max_len: usize) -> Vec<Vec<String>> {
    let mut walks: Vec<Vec<String>> = quiver
        .vertices()
        .iter()
        .map(|v| vec![v.clone()])
        .collect();
    let mut frontier = walks.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let last = w.last().expect("nonempty");
            for t in quiver.targets_from(last) {
                let mut extended = w.clone();
                extended.push(t.clone());
                next.push(extended);
            }
        }
        walks.extend(next.iter().cloned());
        frontier = next;
    }
    walks
}

/// Positive-rewrite closure of a walk under the defining relations, all of
/// which preserve length; used as an equivalence oracle for normal forms.
fn rewrite_closure(
    relations: &[(Vec<String>, Vec<String>)],
    start: &[String],
) -> BTreeSet<Vec<String>> {
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for (l, r) in relations {
            for (old, new) in [(l, r), (r, l)] {
                if old.len() > w.len() {
                    continue;
                }
                for at in 0..=(w.len() - old.len()) {
                    if &w[at..at + old.len()] == old.as_slice() {
                        let mut rewritten = w[..at].to_vec();
                        rewritten.extend(new.iter().cloned());
                        rewritten.extend(w[at + old.len()..].iter().cloned());
                        if seen.insert(rewritten.clone()) {
                            queue.push_back(rewritten);
                        }
                    }
                }
            }
        }
    }
    seen
}

/// The arrangement of three concurrent lines: opposite chambers have
/// exactly two minimal galleries, the vertex group of its gallery groupoid
/// stalls on the three-generator two-relator presentation with free abelian
/// rank 3, and normal forms are unique on the rewrite-equivalence classes of
/// all positive galleries up to length 6.
fn criterion_7() -> Result<(), String> {
    let arr = Arrangement::new(2, vec![
        vec![int(1), int(0)],
        vec![int(0), int(1)],
        vec![int(1), int(1)],
    ])
    .map_err(|e| e.to_string())?;
    let decomposition =
        greenfan_core::fan::chambers_of_arrangement(&arr).map_err(|e| e.to_string())?;
    let labels: Vec<String> = decomposition.labels().iter().map(|s| s.to_string()).collect();
    check(labels.len() == 6, format!("{} chambers", labels.len()))?;
    let mut opposite_pairs = 0;
    for a in &labels {
        for b in &labels {
            if a == b {
                continue;
            }
            let d = decomposition
                .gallery_distance(a, b)
                .map_err(|e| e.to_string())?;
            let galleries = decomposition
                .minimal_galleries(a, b)
                .map_err(|e| e.to_string())?;
            if d == 3 {
                opposite_pairs += 1;
                check(
                    galleries.len() == 2,
                    format!("{} -> {}: {} minimal galleries", a, b, galleries.len()),
                )?;
                for g in &galleries {
                    check(g.len() == 4, format!("gallery {g:?} has wrong length"))?;
                }
            } else {
                check(
                    galleries.len() == 1,
                    format!("{} -> {} at distance {}: {} galleries", a, b, d, galleries.len()),
                )?;
            }
        }
    }
    check(opposite_pairs == 6, format!("{opposite_pairs} ordered opposite pairs"))?;

    let p = deligne_groupoid(&arr).map_err(|e| e.to_string())?;
    check(p.relations.len() == 6, format!("{} relations", p.relations.len()))?;
    let vg = vertex_group(&p, "c0").map_err(|e| e.to_string())?;
    let reduced = tietze_simplify(&vg);
    check(
        reduced.generators.len() == 3 && reduced.relators.len() == 2,
        format!(
            "reduced to {} generators, {} relators",
            reduced.generators.len(),
            reduced.relators.len()
        ),
    )?;
    for r in &reduced.relators {
        check(r.len() == 6, format!("relator length {}", r.len()))?;
        let (head, tail) = r.split_at(3);
        check(
            head.iter().all(|l| !l.1) && tail.iter().all(|l| l.1),
            "relator is not positive half then negative half",
        )?;
        let tail_pos: Vec<_> = tail.iter().rev().map(|l| (l.0.clone(), false)).collect();
        let head_vec: Vec<_> = head.to_vec();
        let rotated = (0..3).any(|k| {
            let mut rot = head_vec.clone();
            rot.rotate_left(k);
            rot == tail_pos
        });
        check(rotated, "relator does not equate a word with its rotation")?;
    }
    check(
        reduced.abelianization() == vec![int(0), int(0), int(0)],
        format!("abelianization {:?}", reduced.abelianization()),
    )?;

    // Normal forms on the hexagon model: idempotent, endpoint-preserving,
    // and constant on rewrite-equivalence classes.
    let model = generate_dihedral(3).map_err(|e| e.to_string())?;
    let quiver = build_quiver(&model).map_err(|e| e.to_string())?;
    let hex = green_presentation(&model).map_err(|e| e.to_string())?;
    let relations: Vec<(Vec<String>, Vec<String>)> = hex
        .relations
        .iter()
        .map(|(l, r)| (l.vertex_sequence(), r.vertex_sequence()))
        .collect();
    let walks = positive_walks(&quiver, 6);
    check(walks.len() == 762, format!("{} walks enumerated", walks.len()))?;
    let mut class_forms: BTreeMap<Vec<String>, Vec<Vec<String>>> = BTreeMap::new();
    for walk in &walks {
        let word = PathWord::positive(walk).map_err(|e| e.to_string())?;
        let segments = normal_form(&model, &word).map_err(|e| e.to_string())?;
        let mut chained = PathWord::empty(walk[0].as_str());
        for s in &segments {
            chained = chained.composed(s).map_err(|e| e.to_string())?;
        }
        check(
            chained.source() == word.source() && chained.target() == word.target(),
            format!("normal form of {walk:?} changes endpoints"),
        )?;
        let again = normal_form(&model, &chained).map_err(|e| e.to_string())?;
        check(
            again == segments,
            format!("normal form of {walk:?} is not idempotent"),
        )?;
        class_forms
            .entry(walk.clone())
            .or_default()
            .push(segments.iter().map(|s| s.render()).collect());
    }
    for walk in &walks {
        let mine = class_forms[walk][0].clone();
        for other in rewrite_closure(&relations, walk) {
            let theirs = class_forms
                .get(&other)
                .ok_or_else(|| format!("closure left the enumerated set at {other:?}"))?;
            check(
                theirs[0] == mine,
                format!("{walk:?} and {other:?} are equivalent but normal forms differ"),
            )?;
        }
    }
    // The bounded word-equality search agrees on a defining relation.
    let (l, r) = &hex.relations[0];
    check(
        words_equal_bounded(&hex, l, r, 8).map_err(|e| e.to_string())?
            == WordEquality::Equal,
        "defining relation not recognized as equality",
    )
}

/// Index transport does not depend on the path taken: exhaustively over all
/// pentagon walks up to length 6, and on 200 seeded random walk pairs in
/// rank 3.
fn criterion_8() -> Result<(), String> {
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    let quiver = build_quiver(&model).map_err(|e| e.to_string())?;
    let tables = reference_tables(&model).map_err(|e| e.to_string())?;
    let mut frontier = vec![vec![model.reference.clone()]];
    let mut checked = 0usize;
    for _ in 0..=6 {
        let mut next = Vec::new();
        for walk in &frontier {
            let table = transport_along(&model, walk);
            let end = walk.last().expect("nonempty");
            check(
                table == tables[end],
                format!("transport along {walk:?} disagrees with the canonical table"),
            )?;
            checked += 1;
            for t in quiver.targets_from(end) {
                let mut ext = walk.clone();
                ext.push(t.clone());
                next.push(ext);
            }
        }
        frontier = next;
    }
    check(checked == 127, format!("checked {checked} pentagon walks"))?;

    let model3 = build_fan_model(3).map_err(|e| e.to_string())?;
    let quiver3 = build_quiver(&model3).map_err(|e| e.to_string())?;
    let tables3 = reference_tables(&model3).map_err(|e| e.to_string())?;
    let mut rng = Lcg::new(0x5EED_CAFE);
    for trial in 0..200 {
        let mut walk = vec![model3.reference.clone()];
        let len = 1 + rng.below(8);
        for _ in 0..len {
            let here = walk.last().expect("nonempty");
            let outs = quiver3.targets_from(here);
            walk.push(outs[rng.below(outs.len())].clone());
        }
        let end = walk.last().expect("nonempty").clone();
        let table = transport_along(&model3, &walk);
        check(
            table == tables3[&end],
            format!("trial {trial}: transport along {walk:?} disagrees"),
        )?;
    }
    Ok(())
}

/// The bilinear-form suite: rank 2 Cartan determinants are all 1 with
/// positive definite symmetrizations, the antisymmetry check fails with a
/// witness naming 24, and the two-object swap model passes invariance,
/// antisymmetry, and congruence.
fn criterion_9() -> Result<(), String> {
    let model = build_fan_model(2).map_err(|e| e.to_string())?;
    for m in &model.maximal_rigid {
        let form = cartan_form(&model, &m.label).map_err(|e| e.to_string())?;
        let det = form.matrix.det().map_err(|e| e.to_string())?;
        check(
            det == Rational::from(int(1)),
            format!("det Cartan({}) = {}", m.label, det),
        )?;
    }
    let forms_report = check_forms(&model).map_err(|e| e.to_string())?;
    check(
        forms_report.passed,
        format!("forms check witnesses: {:?}", forms_report.witnesses),
    )?;
    let anti = check_antisymmetry(&model).map_err(|e| e.to_string())?;
    check(!anti.passed, "antisymmetry unexpectedly passed on rank 2")?;
    check(
        anti.witnesses.first().map(|w| w.contains("24")).unwrap_or(false),
        format!("first antisymmetry witness: {:?}", anti.witnesses.first()),
    )?;
    let swap = generate_sigma_swap(1).map_err(|e| e.to_string())?;
    let inv = check_invariance(&swap).map_err(|e| e.to_string())?;
    check(inv.passed, format!("swap invariance witnesses: {:?}", inv.witnesses))?;
    let anti_swap = check_antisymmetry(&swap).map_err(|e| e.to_string())?;
    check(
        anti_swap.passed,
        format!("swap antisymmetry witnesses: {:?}", anti_swap.witnesses),
    )?;
    let cong = check_congruence(&swap, "x", "sx").map_err(|e| e.to_string())?;
    check(
        cong.passed,
        format!("swap congruence witnesses: {:?}", cong.witnesses),
    )
}

/// Ray reduction of the rank-3 fan: along the ray of 13 the link is a
/// 5-chamber plane fan, along the ray of 14 a 4-chamber one, both verified.
fn criterion_10() -> Result<(), String> {
    let model = build_fan_model(3).map_err(|e| e.to_string())?;
    let decomposition = model.decomposition().map_err(|e| e.to_string())?;
    for (label, expected) in [("13", 5usize), ("14", 4usize)] {
        let ray = primitive(
            model
                .index_of(label)
                .ok_or_else(|| format!("missing {label}"))?,
        )
        .map_err(|e| e.to_string())?;
        let reduced = ray_reduction(&decomposition, &ray).map_err(|e| e.to_string())?;
        check(
            reduced.ambient_dim() == 2,
            format!("reduction at {label} has dimension {}", reduced.ambient_dim()),
        )?;
        check(
            reduced.chambers().len() == expected,
            format!(
                "reduction at {} has {} chambers",
                label,
                reduced.chambers().len()
            ),
        )?;
        let verification = reduced.verify();
        check(
            verification.ok(),
            format!(
                "reduction at {} has violations: {:?}",
                label, verification.violations
            ),
        )?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    // The oracle gate is computed before anything else.
    let gate = criterion_11();
    let results: Vec<(usize, Result<(), String>)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, gate),
    ];
    let mut failures = Vec::new();
    for (n, outcome) in &results {
        match outcome {
            Ok(()) => println!("criterion {n}: pass"),
            Err(msg) => {
                println!("criterion {n}: fail ({msg})");
                failures.push(format!("criterion {n}: {msg}"));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
