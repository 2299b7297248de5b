//! End-to-end check of the `∂C₆(9)` example: the cyclic polytope boundary is a
//! homology 5-sphere, a 2-dimensional subtorus acts freely on its moment-angle
//! manifold, and the quotient has `H² ≅ ℤ²` with `w₂ ≠ 0`.
//!
//! Stages run in a fixed order and stop at the first failure. Reports carry no
//! timings, so repeated runs serialize to identical bytes.

use itertools::Itertools;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::charclass::{h2_of_quotient, w2_of_quotient};
use crate::homology::is_homology_sphere;
use crate::io::matrix_rows_json;
use crate::known::{c69_quotient_map, c69_torus_matrix};
use crate::linalg::{kernel_lattice, same_row_lattice, IntMatrix};
use crate::simplicial::{cyclic_polytope_boundary, SimplicialComplex};
use crate::torus::{acts_freely, Freeness, Subtorus};

pub const STAGES: [&str; 7] = [
    "gale-enumeration",
    "purity",
    "homology-sphere",
    "freeness",
    "kernel-containment",
    "h2",
    "w2",
];

/// The matrices fed to the pipeline; replaceable for fault injection.
#[derive(Clone, Debug)]
pub struct C69Inputs {
    pub torus: IntMatrix,
    pub theta: IntMatrix,
}

impl Default for C69Inputs {
    fn default() -> Self {
        C69Inputs {
            torus: c69_torus_matrix(),
            theta: c69_quotient_map(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageResult {
    pub stage: &'static str,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct C69Report {
    pub passed: bool,
    pub first_failure: Option<&'static str>,
    pub stages: Vec<StageResult>,
}

impl C69Report {
    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.stage == name)
    }
}

pub fn verify_c69() -> C69Report {
    verify_c69_with(&C69Inputs::default())
}

pub fn verify_c69_with(inputs: &C69Inputs) -> C69Report {
    let mut run = Runner::default();
    let k = cyclic_polytope_boundary(6, 9).expect("valid parameters");

    let complements: Vec<Vec<usize>> = k.facets().iter().map(|f| k.complement(f)).collect();
    let parity_ok = complements
        .iter()
        .all(|c| (c[1] - c[0]) % 2 == 1 && (c[2] - c[1]) % 2 == 1);
    let brute = (1..=9usize)
        .combinations(6)
        .filter(|s| gale_all_pairs(s, 9))
        .count();
    if !run.stage(
        "gale-enumeration",
        k.facets().len() == 30 && brute == 30 && parity_ok,
        json!({
            "facets": k.facets().len(),
            "subsets_tested": 84,
            "complement_gaps_odd": parity_ok,
            "f_vector": k.f_vector(),
        }),
    ) {
        return run.finish();
    }

    if !run.stage(
        "purity",
        k.is_pure() && k.dimension() == 5,
        json!({ "pure": k.is_pure(), "dimension": k.dimension() }),
    ) {
        return run.finish();
    }

    let cert = is_homology_sphere(&k);
    if !run.stage(
        "homology-sphere",
        cert.is_homology_sphere,
        json!({
            "criterion": cert.criterion,
            "certified": cert.is_homology_sphere,
            "dimension": cert.dimension,
            "distinct_links_checked": cert.distinct_links_checked,
        }),
    ) {
        return run.finish();
    }

    let (free_ok, free_detail) = freeness_stage(&k, &inputs.torus);
    if !run.stage("freeness", free_ok, free_detail) {
        return run.finish();
    }

    let annihilates = inputs.theta.cols() == 9
        && inputs
            .theta
            .checked_mul(&inputs.torus.transpose())
            .is_ok_and(|p| p.is_zero());
    let kernel_matches =
        annihilates && same_row_lattice(&kernel_lattice(&inputs.theta), &inputs.torus);
    if !run.stage(
        "kernel-containment",
        annihilates && kernel_matches,
        json!({
            "theta_times_torus_transpose_is_zero": annihilates,
            "kernel_equals_torus_lattice": kernel_matches,
            "theta": matrix_rows_json(&inputs.theta),
        }),
    ) {
        return run.finish();
    }

    let h2 = h2_of_quotient(&inputs.theta);
    let h2_ok = h2.presentation.free_rank == 2 && h2.presentation.torsion.is_empty();
    if !run.stage(
        "h2",
        h2_ok,
        json!({
            "free_rank": h2.presentation.free_rank,
            "torsion": h2.presentation.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "basis_generators": h2.basis_generators,
            "relations": h2.relations(),
            "assumes_simply_connected": h2.assumes_simply_connected,
        }),
    ) {
        return run.finish();
    }

    let w2 = w2_of_quotient(&inputs.theta);
    run.stage(
        "w2",
        w2.nonzero,
        json!({
            "class": w2.class.to_polynomial(),
            "coords": serde_json::to_value(&w2.class).expect("serializable")["coords"],
            "nonzero": w2.nonzero,
            "formula": w2.formula,
            "note": w2.note,
        }),
    );
    run.finish()
}

fn freeness_stage(k: &SimplicialComplex, a: &IntMatrix) -> (bool, Value) {
    let t = match Subtorus::new(a.clone()) {
        Ok(t) => t,
        Err(e) => return (false, json!({ "error": e.to_string() })),
    };
    let verdict = match acts_freely(&t, k) {
        Ok(v) => v,
        Err(e) => return (false, json!({ "error": e.to_string() })),
    };
    if let Freeness::NotFree { facet } = &verdict {
        return (
            false,
            json!({ "verdict": "not_free", "witness_facet": facet, "complement": k.complement(facet) }),
        );
    }
    // Every complement {a<b<c} should also carry a 2x2 minor equal to ±1.
    let mut minors = Vec::new();
    for facet in k.facets() {
        let comp = k.complement(facet);
        let unit = comp.iter().copied().combinations(2).find(|pair| {
            a.submatrix_cols(pair)
                .ok()
                .and_then(|b| b.det().ok())
                .is_some_and(|d| d.abs().is_one())
        });
        match unit {
            Some(pair) => minors.push(json!({ "complement": comp, "unit_minor": pair })),
            None => {
                return (
                    false,
                    json!({ "verdict": "no_unit_minor", "witness_facet": facet, "complement": comp }),
                )
            }
        }
    }
    (
        true,
        json!({ "verdict": "free", "facets_checked": k.facets().len(), "unit_minors": minors }),
    )
}

/// Evenness tested on every pair of non-members, independent of the library's
/// consecutive-gap test.
fn gale_all_pairs(s: &[usize], m: usize) -> bool {
    let outside: Vec<usize> = (1..=m).filter(|v| !s.contains(v)).collect();
    outside
        .iter()
        .tuple_combinations()
        .all(|(&i, &j)| s.iter().filter(|&&x| i < x && x < j).count() % 2 == 0)
}

#[derive(Default)]
struct Runner {
    stages: Vec<StageResult>,
}

impl Runner {
    fn stage(&mut self, stage: &'static str, passed: bool, detail: Value) -> bool {
        self.stages.push(StageResult {
            stage,
            passed,
            detail,
        });
        passed
    }

    fn finish(self) -> C69Report {
        let first_failure = self.stages.iter().find(|s| !s.passed).map(|s| s.stage);
        C69Report {
            passed: first_failure.is_none() && self.stages.len() == STAGES.len(),
            first_failure,
            stages: self.stages,
        }
    }
}
