//! Shared helpers for the integration tests: an independent mesh-recursion
//! oracle for hom dimensions of the polygon models, a tiny deterministic
//! RNG, and index-table transport along an explicit chamber path.

// Each test binary compiles this module separately and none uses all of it.
#![allow(dead_code)]

use greenfan_core::exact::Int;
use greenfan_core::forms::{apply_phi, phi_pair};
use greenfan_core::model::FanModel;
use greenfan_core::polygon::Diagonal;
use std::collections::BTreeMap;

/// A vertex of the doubled infinite strip: column p, height q in 1..=n.
pub type Strip = (i64, u32);

fn shift(n: u32, (p, q): Strip) -> Strip {
    (p + q as i64, n + 1 - q)
}

/// dim Hom(x, z) for all z in a window of the strip, by a forward sweep of
/// the additivity recursion: the value at z is the sum over the arrows into
/// z minus the value at the translate, corrected at z = x and z = shift(x)
/// where the identity map enters and leaves. Everything left of x vanishes,
/// so the sweep seeds itself.
fn hom_sheet(n: u32, x: Strip) -> BTreeMap<Strip, i64> {
    let (px, _) = x;
    let (ps, _) = shift(n, x);
    let lo = px - 1;
    let hi = ps + n as i64 + 3;
    let mut g: BTreeMap<Strip, i64> = BTreeMap::new();
    for p in lo..=hi {
        for q in 1..=n {
            let mut v = 0;
            if q > 1 {
                v += g.get(&(p, q - 1)).copied().unwrap_or(0);
            }
            if q < n {
                v += g.get(&(p - 1, q + 1)).copied().unwrap_or(0);
            }
            v -= g.get(&(p - 1, q)).copied().unwrap_or(0);
            if (p, q) == x {
                v += 1;
            }
            if (p, q) == shift(n, x) {
                v += 1;
            }
            g.insert((p, q), v);
        }
    }
    g
}

/// Lift of a polygon diagonal to the strip: one endpoint fixes the column,
/// the gap between the endpoints fixes the height.
pub fn lift(d: Diagonal) -> Strip {
    (d.a as i64, d.b - d.a - 1)
}

/// The orbit functor: one column past the shift.
fn orbit(n: u32, (p, q): Strip) -> Strip {
    (p + q as i64 + 1, n + 1 - q)
}

fn orbit_inverse(n: u32, (p, q): Strip) -> Strip {
    (p + q as i64 - n as i64 - 2, n + 1 - q)
}

/// Independent hom-dimension oracle: the dimension in the orbit category is
/// the sum of strip dimensions over all orbit translates of the target. One
/// orbit step moves the column by at least 2, so a handful of steps in each
/// direction clears any finite window.
pub fn mesh_hom_dim(n: u32, x: Diagonal, y: Diagonal) -> u64 {
    let sheet = hom_sheet(n, lift(n_check(n, x)));
    let mut total = 0i64;
    for k in -8i64..=8 {
        let mut z = lift(n_check(n, y));
        for _ in 0..k.abs() {
            z = if k > 0 { orbit(n, z) } else { orbit_inverse(n, z) };
        }
        total += sheet.get(&z).copied().unwrap_or(0);
    }
    u64::try_from(total).expect("hom dimensions are nonnegative")
}

fn n_check(n: u32, d: Diagonal) -> Diagonal {
    assert!(d.a < d.b && d.b - d.a >= 2 && d.b - d.a <= n + 1);
    d
}

/// Deterministic linear congruential generator for reproducible sampling.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Transports the global index table along an explicit path of maximal
/// rigid labels, starting at the model's reference, one exchange edge at a
/// time. Returns the table in the listed summand order of the final vertex.
pub fn transport_along(model: &FanModel, path: &[String]) -> BTreeMap<String, Vec<Int>> {
    assert_eq!(path[0], model.reference, "transport starts at the reference");
    let mut order: Vec<String> = model
        .rigid_set(&model.reference)
        .expect("reference exists")
        .summands
        .clone();
    let mut table: BTreeMap<String, Vec<Int>> = model
        .indecomposables
        .iter()
        .map(|i| (i.label.clone(), i.index.clone()))
        .collect();
    for pair in path.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        let t = model
            .exchange_between(cur, next)
            .expect("path follows exchange edges");
        let target = model.rigid_set(next).expect("path vertices exist");
        let new_summand = target
            .summands
            .iter()
            .find(|s| !order.contains(s))
            .expect("edge changes one summand")
            .clone();
        let phi = phi_pair(&order, t, &new_summand).expect("well-formed exchange data");
        let mut aligned = order.clone();
        aligned[phi.mutated_index] = new_summand;
        table = table
            .into_iter()
            .map(|(label, xi)| {
                let moved = apply_phi(&phi, &xi);
                let permuted: Vec<Int> = target
                    .summands
                    .iter()
                    .map(|s| {
                        let j = aligned.iter().position(|a| a == s).expect("same label set");
                        moved[j].clone()
                    })
                    .collect();
                (label, permuted)
            })
            .collect();
        order = target.summands.clone();
    }
    table
}
