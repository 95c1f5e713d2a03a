use super::cone::{dot_int, dot_sign, SimplicialCone};
use super::decomposition::{cmp_ccw, strictly_feasible, ChamberDecomposition};
use super::FanError;
use crate::exact::{
    primitive, rat, sign_canonical, Int, Rational, RationalMatrix, RationalVector, SolveOutcome,
};
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeSet;

/// A finite central arrangement, stored as primitive normals with
/// lexicographically positive sign, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Vec<Int>>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, normals: Vec<Vec<Int>>) -> Result<Self, FanError> {
        let mut set = BTreeSet::new();
        for n in normals {
            if n.len() != ambient_dim {
                return Err(FanError::DimensionMismatch(format!(
                    "normal has {} entries in ambient dimension {}",
                    n.len(),
                    ambient_dim
                )));
            }
            let p = primitive(&n).map_err(|_| FanError::ZeroRay)?;
            set.insert(sign_canonical(&p));
        }
        Ok(Arrangement {
            ambient_dim,
            hyperplanes: set.into_iter().collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionReport {
    pub is_arrangement: bool,
    pub arrangement: Option<Arrangement>,
    pub witness: Option<String>,
}

/// Unimodular matrix U with U v = e_d (last standard basis vector), built by
/// integer row operations. Requires v nonzero; v is normalized to its
/// primitive representative first.
pub fn row_ops_to_unit(v: &[Int]) -> Result<Vec<Vec<Int>>, FanError> {
    let d = v.len();
    let mut w = primitive(v).map_err(|_| FanError::ZeroRay)?;
    let mut u: Vec<Vec<Int>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..d).filter(|&i| !w[i].is_zero()).collect();
        if nz.len() == 1 {
            let i = nz[0];
            if w[i].is_negative() {
                for c in 0..d {
                    u[i][c] = -&u[i][c];
                }
            }
            if i != d - 1 {
                u.swap(i, d - 1);
            }
            return Ok(u);
        }
        let j = nz
            .iter()
            .copied()
            .min_by_key(|&k| w[k].abs())
            .expect("at least two nonzero entries");
        let i = nz.iter().copied().find(|&k| k != j).expect("second nonzero");
        let q = w[i].div_floor(&w[j]);
        w[i] = &w[i] - &q * &w[j];
        for c in 0..d {
            u[i][c] = &u[i][c] - &q * &u[j][c];
        }
    }
}

/// Integer basis of the lattice of integer points orthogonal to the given
/// vector: the first d-1 rows of the unimodular reduction.
pub(crate) fn kernel_lattice_rows(normal: &[Int]) -> Result<Vec<Vec<Int>>, FanError> {
    let u = row_ops_to_unit(normal)?;
    Ok(u[..normal.len() - 1].to_vec())
}

/// Primitive sign-canonical normal of the hyperplane spanned by the given
/// vectors, or None when their span does not have codimension one.
pub fn hyperplane_normal(vectors: &[Vec<Int>]) -> Result<Option<Vec<Int>>, FanError> {
    if vectors.is_empty() {
        return Ok(None);
    }
    let d = vectors[0].len();
    if vectors.iter().any(|v| v.len() != d) {
        return Err(FanError::DimensionMismatch("ragged vectors".into()));
    }
    // Reduced row echelon form; exactly one free column means codimension 1.
    let mut m: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..d {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, pivot_row);
        let piv = m[pivot_row][col].clone();
        for c in col..d {
            m[pivot_row][c] /= &piv;
        }
        for r in 0..rows {
            if r == pivot_row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..d {
                let sub = &factor * &m[pivot_row][c];
                m[r][c] -= sub;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    if pivot_cols.len() != d - 1 {
        return Ok(None);
    }
    let free_col = (0..d)
        .find(|c| !pivot_cols.contains(c))
        .expect("one free column");
    let mut kernel = vec![Rational::zero(); d];
    kernel[free_col] = Rational::one();
    for (row, &col) in pivot_cols.iter().enumerate() {
        kernel[col] = -m[row][free_col].clone();
    }
    let v = RationalVector::new(kernel)
        .to_primitive_ray()
        .map_err(|_| FanError::ZeroRay)?;
    Ok(Some(sign_canonical(&v)))
}

/// Restricts the decomposition to the bouquet of η (chambers having η as a
/// generator) and projects along η onto a complement, using a unimodular
/// change of basis that sends η to the last basis vector. Labels carry over.
pub fn ray_reduction(
    decomp: &ChamberDecomposition,
    ray: &[Int],
) -> Result<ChamberDecomposition, FanError> {
    let d = decomp.ambient_dim();
    if d < 2 {
        return Err(FanError::UnsupportedDimension(
            "ray reduction needs ambient dimension at least 2".into(),
        ));
    }
    if ray.len() != d {
        return Err(FanError::DimensionMismatch(format!(
            "ray has {} entries in ambient dimension {}",
            ray.len(),
            d
        )));
    }
    let eta = primitive(ray).map_err(|_| FanError::ZeroRay)?;
    if !decomp.extremal_rays().contains(&eta) {
        return Err(FanError::NotExtremalRay);
    }
    let u = row_ops_to_unit(&eta)?;
    let project = |g: &[Int]| -> Vec<Int> {
        u[..d - 1].iter().map(|row| dot_int(row, g)).collect()
    };
    let mut chambers = Vec::new();
    for (label, cone) in decomp.chambers() {
        if !cone.has_generator(&eta) {
            continue;
        }
        let rays: Vec<Vec<Int>> = cone
            .generators()
            .iter()
            .filter(|g| g.as_slice() != eta.as_slice())
            .map(|g| project(g))
            .collect();
        chambers.push((label.clone(), SimplicialCone::new(d - 1, rays)?));
    }
    ChamberDecomposition::new(d - 1, chambers)
}

/// All facet hyperplane normals of a verified decomposition, sign-canonical
/// and sorted.
fn facet_normal_set(decomp: &ChamberDecomposition) -> Result<BTreeSet<Vec<Int>>, FanError> {
    let mut normals = BTreeSet::new();
    for (_, cone) in decomp.chambers() {
        for skip in 0..cone.num_generators() {
            let n = cone.facet_inward_normal(skip)?;
            normals.insert(sign_canonical(&n));
        }
    }
    Ok(normals)
}

/// Decides whether the hyperplane with the given normal is a union of facets
/// of the decomposition: the facets lying inside it, rewritten in lattice
/// coordinates of the hyperplane, must themselves verify as a chamber
/// decomposition one dimension down.
fn hyperplane_tiled(decomp: &ChamberDecomposition, normal: &[Int]) -> Result<bool, FanError> {
    let d = decomp.ambient_dim();
    let basis = kernel_lattice_rows(normal)?;
    let basis_cols: Vec<RationalVector> = basis
        .iter()
        .map(|b| RationalVector::from_bigints(b))
        .collect();
    let basis_matrix = RationalMatrix::from_columns(&basis_cols)
        .map_err(|_| FanError::DegenerateCone)?;
    let mut seen = BTreeSet::new();
    let mut chambers = Vec::new();
    for (_, cone) in decomp.chambers() {
        for facet in cone.facets() {
            if !facet
                .generators()
                .iter()
                .all(|g| dot_sign(normal, g) == 0)
            {
                continue;
            }
            if !seen.insert(facet.key()) {
                continue;
            }
            let mut coords = Vec::new();
            for g in facet.generators() {
                let rhs = RationalVector::from_bigints(g);
                let c = match crate::exact::solve_linear(&basis_matrix, &rhs) {
                    Ok(SolveOutcome::Unique(c)) => c,
                    _ => return Err(FanError::DegenerateCone),
                };
                coords.push(c.to_primitive_ray().map_err(|_| FanError::ZeroRay)?);
            }
            let idx = chambers.len();
            chambers.push((format!("f{}", idx), SimplicialCone::new(d - 1, coords)?));
        }
    }
    if chambers.is_empty() {
        return Ok(false);
    }
    let sub = ChamberDecomposition::new(d - 1, chambers)?;
    Ok(sub.verify().ok())
}

/// Decides whether a verified chamber decomposition consists of the chambers
/// of a central hyperplane arrangement, and reconstructs the arrangement
/// when it does. Dimension 2 uses the opposite-ray criterion; dimension 3
/// checks that every facet hyperplane is tiled by facets; higher dimensions
/// reduce along every extremal ray and check the projected hyperplanes
/// of every facet through that ray.
pub fn recognize_arrangement(
    decomp: &ChamberDecomposition,
) -> Result<RecognitionReport, FanError> {
    let report = decomp.verify();
    if !report.ok() {
        return Err(FanError::VerifyFirst(report.violations.join("; ")));
    }
    let d = decomp.ambient_dim();
    if d == 1 {
        return Ok(RecognitionReport {
            is_arrangement: true,
            arrangement: Some(Arrangement::new(1, vec![vec![Int::one()]])?),
            witness: None,
        });
    }
    if d == 2 {
        let rays = decomp.extremal_rays();
        let set: BTreeSet<Vec<Int>> = rays.iter().cloned().collect();
        for ray in &rays {
            let opposite: Vec<Int> = ray.iter().map(|x| -x).collect();
            if !set.contains(&opposite) {
                return Ok(RecognitionReport {
                    is_arrangement: false,
                    arrangement: None,
                    witness: Some(format!(
                        "extremal ray {} has no opposite extremal ray {}",
                        fmt_ray(ray),
                        fmt_ray(&opposite)
                    )),
                });
            }
        }
        let normals: Vec<Vec<Int>> = rays
            .iter()
            .map(|r| sign_canonical(&[-r[1].clone(), r[0].clone()]))
            .collect();
        return Ok(RecognitionReport {
            is_arrangement: true,
            arrangement: Some(Arrangement::new(2, normals)?),
            witness: None,
        });
    }
    if d == 3 {
        let candidates = facet_normal_set(decomp)?;
        for normal in &candidates {
            if !hyperplane_tiled(decomp, normal)? {
                return Ok(RecognitionReport {
                    is_arrangement: false,
                    arrangement: None,
                    witness: Some(format!(
                        "hyperplane with normal {} is not a union of facets",
                        fmt_ray(normal)
                    )),
                });
            }
        }
        return Ok(RecognitionReport {
            is_arrangement: true,
            arrangement: Some(Arrangement::new(3, candidates.into_iter().collect())?),
            witness: None,
        });
    }
    // d >= 4: for every extremal ray, the bouquet is projected one dimension
    // down and every hyperplane spanned by a facet through the ray must be a
    // union of facets of the projection.
    for eta in decomp.extremal_rays() {
        let reduced = ray_reduction(decomp, &eta)?;
        if !reduced.verify().ok() {
            return Ok(RecognitionReport {
                is_arrangement: false,
                arrangement: None,
                witness: Some(format!(
                    "bouquet of ray {} does not project to a chamber decomposition",
                    fmt_ray(&eta)
                )),
            });
        }
        for normal in facet_normal_set(&reduced)? {
            if !hyperplane_tiled(&reduced, &normal)? {
                return Ok(RecognitionReport {
                    is_arrangement: false,
                    arrangement: None,
                    witness: Some(format!(
                        "projected hyperplane with normal {} at ray {} is not a union of facets",
                        fmt_ray(&normal),
                        fmt_ray(&eta)
                    )),
                });
            }
        }
    }
    let normals = facet_normal_set(decomp)?;
    Ok(RecognitionReport {
        is_arrangement: true,
        arrangement: Some(Arrangement::new(d, normals.into_iter().collect())?),
        witness: None,
    })
}

/// Chambers of a central essential arrangement in dimension at most 3, as a
/// labelled decomposition. Dimension 2 labels run counterclockwise from the
/// least ray; other dimensions label chambers in sorted cone order.
pub fn chambers_of_arrangement(arr: &Arrangement) -> Result<ChamberDecomposition, FanError> {
    let d = arr.ambient_dim;
    let normal_matrix = RationalMatrix::from_int_rows(&arr.hyperplanes)
        .map_err(|_| FanError::UnsupportedDimension("empty arrangement".into()))?;
    if normal_matrix.rank() != d {
        return Err(FanError::UnsupportedDimension(
            "arrangement is not essential".into(),
        ));
    }
    match d {
        1 => {
            let chambers = vec![
                ("c0".to_string(), SimplicialCone::new(1, vec![vec![Int::one()]])?),
                (
                    "c1".to_string(),
                    SimplicialCone::new(1, vec![vec![-Int::one()]])?,
                ),
            ];
            ChamberDecomposition::new(1, chambers)
        }
        2 => {
            let mut rays: BTreeSet<Vec<Int>> = BTreeSet::new();
            for n in &arr.hyperplanes {
                let dir = primitive(&[-n[1].clone(), n[0].clone()])
                    .map_err(|_| FanError::ZeroRay)?;
                rays.insert(dir.iter().map(|x| -x).collect());
                rays.insert(dir);
            }
            let mut ordered: Vec<Vec<Int>> = rays.into_iter().collect();
            ordered.sort_by(|a, b| cmp_ccw(a, b));
            let k = ordered.len();
            let mut chambers = Vec::new();
            for i in 0..k {
                let cone = SimplicialCone::new(
                    2,
                    vec![ordered[i].clone(), ordered[(i + 1) % k].clone()],
                )?;
                chambers.push((format!("c{}", i), cone));
            }
            ChamberDecomposition::new(2, chambers)
        }
        3 => {
            // Candidate extremal rays: primitive generators of pairwise
            // hyperplane intersections, both orientations.
            let mut rays: BTreeSet<Vec<Int>> = BTreeSet::new();
            let m = arr.hyperplanes.len();
            for i in 0..m {
                for j in (i + 1)..m {
                    if let Some(line) = hyperplane_normal(&[
                        arr.hyperplanes[i].clone(),
                        arr.hyperplanes[j].clone(),
                    ])? {
                        // The "normal" of two independent normals is the
                        // direction of their intersection line.
                        rays.insert(line.iter().map(|x| -x).collect());
                        rays.insert(line);
                    }
                }
            }
            let mut chambers = Vec::new();
            for mask in 0..(1u64 << m) {
                let signs: Vec<i8> = (0..m)
                    .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
                    .collect();
                let rows: Vec<Vec<Rational>> = (0..m)
                    .map(|i| {
                        arr.hyperplanes[i]
                            .iter()
                            .map(|x| Rational::from_integer(x.clone()) * rat(signs[i] as i64))
                            .collect()
                    })
                    .collect();
                if !strictly_feasible(rows) {
                    continue;
                }
                let cone_rays: Vec<Vec<Int>> = rays
                    .iter()
                    .filter(|r| {
                        (0..m).all(|i| {
                            let s = dot_sign(&arr.hyperplanes[i], r);
                            s == 0 || s == signs[i]
                        })
                    })
                    .cloned()
                    .collect();
                if cone_rays.len() != 3 {
                    return Err(FanError::UnsupportedDimension(
                        "arrangement is not simplicial".into(),
                    ));
                }
                chambers.push(SimplicialCone::new(3, cone_rays)?);
            }
            chambers.sort();
            let labelled = chambers
                .into_iter()
                .enumerate()
                .map(|(i, c)| (format!("c{}", i), c))
                .collect();
            ChamberDecomposition::new(3, labelled)
        }
        _ => Err(FanError::UnsupportedDimension(format!(
            "arrangement chambers implemented for dimension at most 3, got {}",
            d
        ))),
    }
}

fn fmt_ray(r: &[Int]) -> String {
    let inner: Vec<String> = r.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(", "))
}
