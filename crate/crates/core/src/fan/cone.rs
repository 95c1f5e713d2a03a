use super::FanError;
use crate::exact::{
    primitive, sign_canonical, Int, RationalMatrix, RationalVector, SolveOutcome,
};
use num::{Signed, Zero};
use std::collections::BTreeSet;

/// Cone spanned by finitely many primitive integer rays, at most one per
/// direction. Generators are stored sorted so equal cones compare equal.
/// Linear independence is not enforced here; the decomposition verifier
/// reports cones that fail it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplicialCone {
    ambient_dim: usize,
    generators: Vec<Vec<Int>>,
}

/// Exact membership classification of a point against a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl SimplicialCone {
    /// Builds a cone from integer ray representatives. Each is divided by its
    /// content; duplicates (same ray after normalization) are rejected.
    pub fn new(ambient_dim: usize, rays: Vec<Vec<Int>>) -> Result<Self, FanError> {
        let mut generators = Vec::with_capacity(rays.len());
        for r in rays {
            if r.len() != ambient_dim {
                return Err(FanError::DimensionMismatch(format!(
                    "ray has {} entries in ambient dimension {}",
                    r.len(),
                    ambient_dim
                )));
            }
            let p = primitive(&r).map_err(|_| FanError::ZeroRay)?;
            generators.push(p);
        }
        generators.sort();
        let before = generators.len();
        generators.dedup();
        if generators.len() != before {
            return Err(FanError::DuplicateGenerator);
        }
        Ok(SimplicialCone {
            ambient_dim,
            generators,
        })
    }

    pub fn from_ints(ambient_dim: usize, rays: &[&[i64]]) -> Result<Self, FanError> {
        SimplicialCone::new(
            ambient_dim,
            rays.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn has_generator(&self, ray: &[Int]) -> bool {
        self.generators.iter().any(|g| g.as_slice() == ray)
    }

    /// Matrix whose columns are the generators.
    pub fn generator_matrix(&self) -> Result<RationalMatrix, FanError> {
        let cols: Vec<RationalVector> = self
            .generators
            .iter()
            .map(|g| RationalVector::from_bigints(g))
            .collect();
        RationalMatrix::from_columns(&cols).map_err(|_| FanError::DegenerateCone)
    }

    pub fn is_simplicial(&self) -> bool {
        if self.generators.is_empty() {
            return true;
        }
        match self.generator_matrix() {
            Ok(m) => m.rank() == self.generators.len(),
            Err(_) => false,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.generators.len() == self.ambient_dim && self.is_simplicial()
    }

    /// Classifies x by solving x = Σ a_i g_i exactly. Interior needs every
    /// a_i > 0 and a full-dimensional cone; any point of the cone that is not
    /// interior is boundary; everything else (including points outside the
    /// span) is outside.
    pub fn contains(&self, x: &RationalVector) -> Result<Membership, FanError> {
        if x.dim() != self.ambient_dim {
            return Err(FanError::DimensionMismatch(format!(
                "point has {} entries in ambient dimension {}",
                x.dim(),
                self.ambient_dim
            )));
        }
        if self.generators.is_empty() {
            return Ok(if x.is_zero() {
                Membership::Boundary
            } else {
                Membership::Outside
            });
        }
        let m = self.generator_matrix()?;
        let coeffs = match crate::exact::solve_linear(&m, x) {
            Ok(SolveOutcome::Unique(c)) => c,
            Ok(SolveOutcome::Inconsistent) => return Ok(Membership::Outside),
            Ok(SolveOutcome::Underdetermined) => return Err(FanError::DegenerateCone),
            Err(_) => return Err(FanError::DegenerateCone),
        };
        let mut any_zero = false;
        for a in coeffs.entries() {
            if a.is_negative() {
                return Ok(Membership::Outside);
            }
            if a.is_zero() {
                any_zero = true;
            }
        }
        if !any_zero && self.is_full_dimensional() {
            Ok(Membership::Interior)
        } else {
            Ok(Membership::Boundary)
        }
    }

    /// The sub-cones obtained by dropping one generator each.
    pub fn facets(&self) -> Vec<SimplicialCone> {
        (0..self.generators.len())
            .map(|skip| SimplicialCone {
                ambient_dim: self.ambient_dim,
                generators: self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, g)| g.clone())
                    .collect(),
            })
            .collect()
    }

    /// Canonical key for facet matching: the sorted generator list.
    pub fn key(&self) -> Vec<Vec<Int>> {
        self.generators.clone()
    }

    /// For a full-dimensional cone, the inward-pointing primitive normal of
    /// the facet obtained by dropping generator `skip`: it vanishes on the
    /// kept generators and is positive on the dropped one.
    pub fn facet_inward_normal(&self, skip: usize) -> Result<Vec<Int>, FanError> {
        if !self.is_full_dimensional() {
            return Err(FanError::DegenerateCone);
        }
        let inv = self
            .generator_matrix()?
            .inverse()
            .map_err(|_| FanError::DegenerateCone)?
            .ok_or(FanError::DegenerateCone)?;
        // Row `skip` of the inverse pairs to δ with the generators.
        let row = inv.row(skip);
        row.to_primitive_ray().map_err(|_| FanError::ZeroRay)
    }
}

/// A matched codimension-one face between two chambers. The normal is
/// primitive with lexicographically positive sign; `sides` carries the two
/// adjacent chamber labels once the wall is enumerated from a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub normal: Vec<Int>,
    pub face: SimplicialCone,
    pub sides: Option<(String, String)>,
}

/// Returns the common facet and its normal when the two full-dimensional
/// cones meet exactly in a facet of both, i.e. they share all but one
/// generator and lie on strictly opposite sides of that facet's hyperplane.
pub fn shared_facet(c1: &SimplicialCone, c2: &SimplicialCone) -> Result<Option<Wall>, FanError> {
    if c1.ambient_dim() != c2.ambient_dim() {
        return Err(FanError::DimensionMismatch(
            "cones in different ambient dimensions".into(),
        ));
    }
    if !c1.is_full_dimensional() || !c2.is_full_dimensional() {
        return Err(FanError::DegenerateCone);
    }
    if c1 == c2 {
        return Ok(None);
    }
    let set2: BTreeSet<&Vec<Int>> = c2.generators().iter().collect();
    let common: Vec<Vec<Int>> = c1
        .generators()
        .iter()
        .filter(|g| set2.contains(*g))
        .cloned()
        .collect();
    if common.len() + 1 != c1.ambient_dim() {
        return Ok(None);
    }
    let skip1 = c1
        .generators()
        .iter()
        .position(|g| !common.contains(g))
        .expect("exactly one generator of c1 is not shared");
    let normal = c1.facet_inward_normal(skip1)?;
    // Opposite side check: the off-facet generator of c2 must pair strictly
    // negative where c1's pairs strictly positive.
    let off2 = c2
        .generators()
        .iter()
        .find(|g| !common.contains(*g))
        .expect("exactly one generator of c2 is not shared");
    let pairing = dot_int(&normal, off2);
    if !pairing.is_negative() {
        return Ok(None);
    }
    let face = SimplicialCone::new(c1.ambient_dim(), common)?;
    Ok(Some(Wall {
        normal: sign_canonical(&normal),
        face,
        sides: None,
    }))
}

pub(crate) fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn dot_sign(a: &[Int], b: &[Int]) -> i8 {
    let d = dot_int(a, b);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn quadrant() -> SimplicialCone {
        SimplicialCone::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap()
    }

    #[test]
    fn membership_interior_boundary_outside() {
        let c = quadrant();
        let inside = RationalVector::from_ints(&[1, 1]);
        assert_eq!(c.contains(&inside).unwrap(), Membership::Interior);
        let edge = RationalVector::from_ints(&[1, 0]);
        assert_eq!(c.contains(&edge).unwrap(), Membership::Boundary);
        let out = RationalVector::from_ints(&[-1, 1]);
        assert_eq!(c.contains(&out).unwrap(), Membership::Outside);
        // Chamber spanned by (-1,1) and (-1,0) does not contain (1,0).
        let c = SimplicialCone::from_ints(2, &[&[-1, 1], &[-1, 0]]).unwrap();
        let x = RationalVector::from_ints(&[1, 0]);
        assert_eq!(c.contains(&x).unwrap(), Membership::Outside);
    }

    #[test]
    fn membership_outside_span() {
        let c = SimplicialCone::from_ints(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let x = RationalVector::from_ints(&[0, 0, 1]);
        assert_eq!(c.contains(&x).unwrap(), Membership::Outside);
        let flat = RationalVector::from_ints(&[2, 3, 0]);
        // In the cone, but a 2-generator cone in dimension 3 has no interior.
        assert_eq!(c.contains(&flat).unwrap(), Membership::Boundary);
    }

    #[test]
    fn generators_are_normalized_and_sorted() {
        let c = SimplicialCone::new(2, vec![vec![int(0), int(2)], vec![int(3), int(0)]]).unwrap();
        assert_eq!(
            c.generators(),
            &[vec![int(0), int(1)], vec![int(1), int(0)]]
        );
        assert!(matches!(
            SimplicialCone::new(2, vec![vec![int(1), int(0)], vec![int(2), int(0)]]),
            Err(FanError::DuplicateGenerator)
        ));
    }

    #[test]
    fn shared_facet_finds_wall_or_rejects() {
        let a = quadrant();
        let b = SimplicialCone::from_ints(2, &[&[0, 1], &[-1, 1]]).unwrap();
        let w = shared_facet(&a, &b).unwrap().unwrap();
        assert_eq!(w.face.generators(), &[vec![int(0), int(1)]]);
        assert_eq!(w.normal, vec![int(1), int(0)]);
        // Symmetric.
        let w2 = shared_facet(&b, &a).unwrap().unwrap();
        assert_eq!(w2.face, w.face);
        assert_eq!(w2.normal, w.normal);
        // Not neighbours: opposite quadrants meet only at 0.
        let c = SimplicialCone::from_ints(2, &[&[-1, 1], &[-1, 0]]).unwrap();
        assert!(shared_facet(&a, &c).unwrap().is_none());
        // A chamber is not its own neighbour.
        assert!(shared_facet(&a, &a.clone()).unwrap().is_none());
        // Same facet generators but same side: overlapping cones, no wall.
        let overlap = SimplicialCone::from_ints(2, &[&[0, 1], &[1, 1]]).unwrap();
        assert!(shared_facet(&a, &overlap).unwrap().is_none());
    }

    #[test]
    fn facet_normals_point_inward() {
        let c = quadrant();
        // Dropping (0,1) leaves the facet spanned by (1,0); the inward normal
        // vanishes on (1,0) and is positive on the dropped generator.
        let idx = c
            .generators()
            .iter()
            .position(|g| g == &vec![int(0), int(1)])
            .unwrap();
        assert_eq!(c.facet_inward_normal(idx).unwrap(), vec![int(0), int(1)]);
    }
}
