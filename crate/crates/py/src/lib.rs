//! Python bindings. A single `Model` class wraps a fan model and exposes the
//! fan, path, groupoid, and bilinear-form operations; module functions build
//! the example models or load one from JSON. Integer vectors cross the
//! boundary as Python ints of arbitrary size.

use greenfan_core::exact::{primitive, Int};
use greenfan_core::fan::{ray_reduction, recognize_arrangement};
use greenfan_core::forms::{
    cartan_form, check_antisymmetry, check_congruence, check_forms, check_invariance, Report,
};
use greenfan_core::groupoid::{
    build_quiver, green_paths, green_presentation, normal_form, render_word, tietze_simplify,
    vertex_group, words_equal_bounded, GroupPresentation, PathWord, WordEquality,
};
use greenfan_core::model::{generate_dihedral, generate_sigma_swap, FanModel};
use greenfan_core::polygon::build_fan_model;
use greenfan_core::render::render_svg;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Generators, rendered relators, and abelianization invariants.
type GroupData = (Vec<String>, Vec<String>, Vec<Int>);

fn group_data(p: &GroupPresentation) -> GroupData {
    (
        p.generators.clone(),
        p.relators.iter().map(|r| render_word(r)).collect(),
        p.abelianization(),
    )
}

#[pyclass]
struct Model {
    inner: FanModel,
}

#[pymethods]
impl Model {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn reference(&self) -> String {
        self.inner.reference.clone()
    }

    fn indecomposables(&self) -> Vec<String> {
        self.inner
            .indecomposables
            .iter()
            .map(|i| i.label.clone())
            .collect()
    }

    fn maximal_rigid(&self) -> Vec<String> {
        self.inner
            .maximal_rigid
            .iter()
            .map(|m| m.label.clone())
            .collect()
    }

    fn summands(&self, label: &str) -> PyResult<Vec<String>> {
        self.inner
            .rigid_set(label)
            .map(|m| m.summands.clone())
            .ok_or_else(|| err(format!("unknown maximal rigid label: {label}")))
    }

    fn index(&self, label: &str) -> PyResult<Vec<Int>> {
        self.inner
            .index_of(label)
            .cloned()
            .ok_or_else(|| err(format!("unknown indecomposable label: {label}")))
    }

    fn hom(&self, a: &str, b: &str) -> Option<u64> {
        self.inner.hom_dim(a, b)
    }

    fn sigma(&self, label: &str) -> Option<String> {
        self.inner.sigma_of(label).map(|s| s.to_string())
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_canonical_string().map_err(err)
    }

    /// Violations of the tiling conditions; empty means the fan verifies.
    fn verify(&self) -> PyResult<Vec<String>> {
        let fan = self.inner.decomposition().map_err(err)?;
        Ok(fan.verify().violations)
    }

    /// Whether the fan is a hyperplane arrangement, with either the list of
    /// hyperplane normals or a witness for the failure.
    fn recognize(&self) -> PyResult<(bool, Option<String>, Option<Vec<Vec<Int>>>)> {
        let fan = self.inner.decomposition().map_err(err)?;
        let recognition = recognize_arrangement(&fan).map_err(err)?;
        Ok((
            recognition.is_arrangement,
            recognition.witness,
            recognition.arrangement.map(|a| a.hyperplanes),
        ))
    }

    fn extremal_rays(&self) -> PyResult<Vec<Vec<Int>>> {
        Ok(self.inner.decomposition().map_err(err)?.extremal_rays())
    }

    /// Chambers of the fan projected along the ray of one indecomposable.
    fn ray_reduction(&self, label: &str) -> PyResult<Vec<(String, Vec<Vec<Int>>)>> {
        let fan = self.inner.decomposition().map_err(err)?;
        let index = self
            .inner
            .index_of(label)
            .ok_or_else(|| err(format!("unknown indecomposable label: {label}")))?;
        let direction = primitive(index).map_err(err)?;
        let reduced = ray_reduction(&fan, &direction).map_err(err)?;
        Ok(reduced
            .chambers()
            .iter()
            .map(|(l, c)| (l.clone(), c.generators().to_vec()))
            .collect())
    }

    fn minimal_galleries(&self, from: &str, to: &str) -> PyResult<Vec<Vec<String>>> {
        let fan = self.inner.decomposition().map_err(err)?;
        fan.minimal_galleries(from, to).map_err(err)
    }

    fn green_paths(&self, from: &str, to: &str) -> PyResult<Vec<Vec<String>>> {
        Ok(green_paths(&self.inner, from, to)
            .map_err(err)?
            .iter()
            .map(|p| p.vertex_sequence())
            .collect())
    }

    /// Generators and relations of the green groupoid as a JSON string.
    fn presentation_json(&self) -> PyResult<String> {
        let p = green_presentation(&self.inner).map_err(err)?;
        serde_json::to_string_pretty(&p.to_json()).map_err(err)
    }

    /// The vertex group at a chamber, raw and Tietze-simplified. Each group
    /// is a triple (generators, relators, abelianization invariants).
    fn vertex_group(&self, at: &str) -> PyResult<(GroupData, GroupData)> {
        let p = green_presentation(&self.inner).map_err(err)?;
        let raw = vertex_group(&p, at).map_err(err)?;
        let simplified = tietze_simplify(&raw);
        Ok((group_data(&raw), group_data(&simplified)))
    }

    /// Canonical factorization of a positive word into green segments. The
    /// word lists steps like "A>B", separated by spaces or commas.
    fn normal_form(&self, word: &str) -> PyResult<Vec<String>> {
        let quiver = build_quiver(&self.inner).map_err(err)?;
        let w = PathWord::parse(&quiver, word).map_err(err)?;
        let segments = normal_form(&self.inner, &w).map_err(err)?;
        Ok(segments.iter().map(|s| s.render()).collect())
    }

    /// Bounded search for equality of two words in the green groupoid.
    /// True means equal; False means no derivation was found within the
    /// intermediate-length bound.
    fn words_equal(&self, w1: &str, w2: &str, depth: usize) -> PyResult<bool> {
        let quiver = build_quiver(&self.inner).map_err(err)?;
        let p = green_presentation(&self.inner).map_err(err)?;
        let a = PathWord::parse(&quiver, w1).map_err(err)?;
        let b = PathWord::parse(&quiver, w2).map_err(err)?;
        Ok(matches!(
            words_equal_bounded(&p, &a, &b, depth).map_err(err)?,
            WordEquality::Equal
        ))
    }

    /// Runs one of the form checks: "forms", "invariance", or
    /// "antisymmetry". Returns (passed, witnesses).
    fn check(&self, which: &str) -> PyResult<(bool, Vec<String>)> {
        let report: Report = match which {
            "forms" => check_forms(&self.inner).map_err(err)?,
            "invariance" => check_invariance(&self.inner).map_err(err)?,
            "antisymmetry" => check_antisymmetry(&self.inner).map_err(err)?,
            other => return Err(err(format!("unknown check: {other}"))),
        };
        Ok((report.passed, report.witnesses))
    }

    fn congruence(&self, from: &str, to: &str) -> PyResult<(bool, Vec<String>)> {
        let report = check_congruence(&self.inner, from, to).map_err(err)?;
        Ok((report.passed, report.witnesses))
    }

    /// The Cartan matrix at a reference: the summand ordering and the
    /// matrix rendered row by row.
    fn cartan(&self, reference: &str) -> PyResult<(Vec<String>, String)> {
        let form = cartan_form(&self.inner, reference).map_err(err)?;
        Ok((form.ordering.clone(), form.matrix.render()))
    }

    fn render_svg(&self) -> PyResult<String> {
        render_svg(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(dim={}, reference='{}', chambers={})",
            self.inner.dim,
            self.inner.reference,
            self.inner.maximal_rigid.len()
        )
    }
}

/// Polygon-diagonal model of rank n.
#[pyfunction]
fn polygon_model(n: u32) -> PyResult<Model> {
    Ok(Model {
        inner: build_fan_model(n).map_err(err)?,
    })
}

/// Fan of m rational lines through the origin of the plane.
#[pyfunction]
fn dihedral_model(m: usize) -> PyResult<Model> {
    Ok(Model {
        inner: generate_dihedral(m).map_err(err)?,
    })
}

/// Two-object rank-one model with self-extension parameter c.
#[pyfunction]
fn sigma_swap_model(c: u64) -> PyResult<Model> {
    Ok(Model {
        inner: generate_sigma_swap(c).map_err(err)?,
    })
}

#[pyfunction]
fn load_model(path: &str) -> PyResult<Model> {
    Ok(Model {
        inner: greenfan_core::model::load_model(path.as_ref()).map_err(err)?,
    })
}

#[pyfunction]
fn model_from_json(text: &str) -> PyResult<Model> {
    Ok(Model {
        inner: greenfan_core::model::load_model_str(text).map_err(err)?,
    })
}

#[pymodule]
fn greenfan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(polygon_model, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_model, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_swap_model, m)?)?;
    m.add_function(wrap_pyfunction!(load_model, m)?)?;
    m.add_function(wrap_pyfunction!(model_from_json, m)?)?;
    Ok(())
}
