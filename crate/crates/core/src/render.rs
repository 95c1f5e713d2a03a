//! Standalone SVG pictures of 2-dimensional fans: every extremal ray drawn
//! at its exact angle, chamber labels at angular bisectors, and the positive
//! and negative chambers shaded. Exact coordinates are converted to floating
//! point only when formatting the final attribute values.

use crate::exact::{primitive, Int};
use crate::fan::ChamberDecomposition;
use crate::model::{FanModel, ModelError};
use num::ToPrimitive;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("SVG rendering is 2-D only")]
    NotPlanar,
    #[error(transparent)]
    Model(#[from] ModelError),
}

const RADIUS: f64 = 90.0;
const VIEW: i32 = 120;

/// Fixed-precision attribute value; tiny magnitudes collapse to "0.000" so
/// reruns cannot disagree about the sign of a rounding error.
fn fmt(v: f64) -> String {
    let v = if v.abs() < 0.0005 { 0.0 } else { v };
    format!("{v:.3}")
}

/// Screen position of a ray endpoint: length-normalized, y flipped so the
/// mathematical orientation is preserved on screen.
fn endpoint(ray: &[Int]) -> (f64, f64) {
    let x = ray[0].to_f64().unwrap_or(0.0);
    let y = ray[1].to_f64().unwrap_or(0.0);
    let len = (x * x + y * y).sqrt();
    (RADIUS * x / len, -RADIUS * y / len)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// The chamber opposite the reference: through the label permutation when
/// the model carries one, otherwise by matching the negated reference cone.
fn negative_chamber(model: &FanModel, decomposition: &ChamberDecomposition) -> Option<String> {
    let reference = model.rigid_set(&model.reference)?;
    if model.sigma.is_some() {
        let image: BTreeSet<String> = reference
            .summands
            .iter()
            .map(|s| model.sigma_of(s).map(|t| t.to_string()))
            .collect::<Option<_>>()?;
        return model
            .maximal_rigid
            .iter()
            .find(|m| m.summands.iter().cloned().collect::<BTreeSet<_>>() == image)
            .map(|m| m.label.clone());
    }
    let negated: BTreeSet<Vec<Int>> = decomposition
        .chamber(&model.reference)?
        .generators()
        .iter()
        .map(|r| primitive(&r.iter().map(|x| -x).collect::<Vec<_>>()).ok())
        .collect::<Option<_>>()?;
    decomposition
        .chambers()
        .iter()
        .find(|(_, cone)| {
            cone.generators()
                .iter()
                .map(|r| primitive(r).ok())
                .collect::<Option<BTreeSet<_>>>()
                .map(|set| set == negated)
                .unwrap_or(false)
        })
        .map(|(label, _)| label.clone())
}

/// Renders a 2-dimensional model as a self-contained SVG 1.1 document.
pub fn render_svg(model: &FanModel) -> Result<String, RenderError> {
    if model.dim != 2 {
        return Err(RenderError::NotPlanar);
    }
    let decomposition = model.decomposition().map_err(RenderError::Model)?;
    let positive = model.reference.clone();
    let negative = negative_chamber(model, &decomposition);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"{v0} {v0} {v1} {v1}\" width=\"360\" height=\"360\">\n",
        v0 = -VIEW,
        v1 = 2 * VIEW
    ));
    svg.push_str(
        "  <style>\n    line.ray { stroke: #333333; stroke-width: 1.2; }\n    \
         path.chamber-pos { fill: #cde7cd; }\n    path.chamber-neg { fill: #e7cdcd; }\n    \
         text { font-family: sans-serif; font-size: 8px; fill: #222222; \
         text-anchor: middle; }\n  </style>\n",
    );

    // Shaded wedges first so rays and labels draw on top.
    for (label, cone) in decomposition.chambers() {
        let class = if *label == positive {
            "chamber-pos"
        } else if negative.as_deref() == Some(label.as_str()) {
            "chamber-neg"
        } else {
            continue;
        };
        let (x1, y1) = endpoint(&cone.generators()[0]);
        let (x2, y2) = endpoint(&cone.generators()[1]);
        svg.push_str(&format!(
            "  <path class=\"{}\" data-chamber=\"{}\" d=\"M 0 0 L {} {} L {} {} Z\"/>\n",
            class,
            escape(label),
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        ));
    }

    let rays = decomposition.extremal_rays();
    for ray in &rays {
        let (x, y) = endpoint(ray);
        svg.push_str(&format!(
            "  <line class=\"ray\" x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }

    // Ray labels: the indecomposables sitting on each ray, if any.
    for ray in &rays {
        let names: Vec<String> = model
            .indecomposables
            .iter()
            .filter(|i| primitive(&i.index).ok().as_deref() == Some(ray.as_slice()))
            .map(|i| escape(&i.label))
            .collect();
        if names.is_empty() {
            continue;
        }
        let (x, y) = endpoint(ray);
        svg.push_str(&format!(
            "  <text class=\"ray-label\" x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(x * 1.13),
            fmt(y * 1.13),
            names.join("/")
        ));
    }

    // Chamber labels at the bisector of the two bounding rays.
    for (label, cone) in decomposition.chambers() {
        let (x1, y1) = endpoint(&cone.generators()[0]);
        let (x2, y2) = endpoint(&cone.generators()[1]);
        let (bx, by) = (x1 + x2, y1 + y2);
        let len = (bx * bx + by * by).sqrt();
        svg.push_str(&format!(
            "  <text class=\"chamber-label\" x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(RADIUS * 0.62 * bx / len),
            fmt(RADIUS * 0.62 * by / len),
            escape(label)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::generate_dihedral;
    use crate::polygon::build_fan_model;

    #[test]
    fn pentagon_fan_draws_five_rays_with_both_shaded_chambers() {
        let model = build_fan_model(2).unwrap();
        let svg = render_svg(&model).unwrap();
        assert_eq!(svg.matches("<line class=\"ray\"").count(), 5);
        assert!(svg.contains("version=\"1.1\""));
        assert!(svg.contains("viewBox=\"-120 -120 240 240\""));
        assert!(svg.contains("class=\"chamber-pos\" data-chamber=\"13+14\""));
        assert!(svg.contains("class=\"chamber-neg\" data-chamber=\"25+35\""));
        // One label per chamber and per ray.
        assert_eq!(svg.matches("class=\"chamber-label\"").count(), 5);
        assert_eq!(svg.matches("class=\"ray-label\"").count(), 5);
        // The reference rays land on the axes.
        assert!(svg.contains("x2=\"90.000\" y2=\"0.000\""));
        assert!(svg.contains("x2=\"0.000\" y2=\"-90.000\""));
    }

    #[test]
    fn coordinate_cross_draws_four_rays_and_finds_the_opposite_chamber() {
        let model = generate_dihedral(2).unwrap();
        let svg = render_svg(&model).unwrap();
        assert_eq!(svg.matches("<line class=\"ray\"").count(), 4);
        assert!(svg.contains("class=\"chamber-pos\" data-chamber=\"C0\""));
        assert!(svg.contains("class=\"chamber-neg\" data-chamber=\"C2\""));
    }

    #[test]
    fn three_dimensional_models_are_refused() {
        let model = build_fan_model(3).unwrap();
        let err = render_svg(&model).unwrap_err();
        assert_eq!(err.to_string(), "SVG rendering is 2-D only");
    }

    #[test]
    fn output_is_reproducible() {
        let model = build_fan_model(2).unwrap();
        assert_eq!(render_svg(&model).unwrap(), render_svg(&model).unwrap());
    }
}
