//! Machine-readable reports for each CLI command.
//!
//! Every report carries `"schema": "twistgab/1"` at the top level (added by
//! the CLI) and every computed number names its provenance: `"exhaustive"`
//! for brute-force enumeration, `"theorem"` for a closed-form criterion.
//! Independent routes are cross-checked here; disagreement is an
//! [`Error::Inconsistency`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::codes::{classify, full_message, CodeSpec, HammingLabel, Twist, Witness};
use crate::covering::{
    covering_report, deep_hole_family, deep_hole_via_extension, distance_to_code, Bound,
    CoveringReport, Flavor,
};
use crate::error::{Error, Result};
use crate::io::{
    code_spec_from_json, code_spec_to_json, element_to_json, elements_from_json, elements_to_json,
};
use crate::mrdcheck::{
    construct_chain_mrd, construct_scalar_multiple_mrd, construct_sum_product_free_mrd,
    forbidden_eta_set_one_twist, hamming_class_via_omega, mrd_membership_multi, norm_mrd_condition,
    omega_one, omega_one_prime, omega_tuples_exhaustive, omega_witness, ratio_set_one_twist,
    sum_product_free_test, Constructed, ForbiddenSet, MrdVerdict, SetWitness,
};
use crate::subspace::SubspaceRep;
use crate::tower::{Element, FieldTower};

pub const SCHEMA: &str = "twistgab/1";
pub const EXHAUSTIVE: &str = "exhaustive";
pub const THEOREM: &str = "theorem";

fn subspace_json(v: &SubspaceRep) -> Value {
    json!({"pivots": v.pivots, "rref": v.matrix.to_rows()})
}

fn set_witness_json(w: &SetWitness) -> Value {
    match w {
        SetWitness::Subspace(v) => json!({"subspace": subspace_json(v)}),
        SetWitness::Subset(i) => json!({"columns": i}),
    }
}

fn witness_json(tower: &FieldTower, w: &Witness) -> Value {
    json!({
        "message": elements_to_json(tower, &w.message),
        "codeword": elements_to_json(tower, &w.codeword),
        "weight": w.weight,
    })
}

fn verdict_json(v: &MrdVerdict) -> Value {
    json!({
        "is_mrd": v.is_mrd,
        "witness": v.witness.as_ref().map(subspace_json),
        "subspaces": v.subspaces.to_string(),
        "provenance": EXHAUSTIVE,
    })
}

fn set_json(tower: &FieldTower, s: &ForbiddenSet, provenance: &str) -> Value {
    json!({
        "definition": s.provenance.as_str(),
        "provenance": provenance,
        "size": s.len(),
        "enumerated": s.enumerated.to_string(),
        "entries": s
            .entries
            .iter()
            .map(|(x, w)| json!({"value": element_to_json(tower, *x), "witness": set_witness_json(w)}))
            .collect::<Vec<_>>(),
    })
}

fn mismatch(what: &'static str, detail: String) -> Error {
    Error::inconsistency(what, detail)
}

/// Brute-force distances plus every applicable criterion, checked against
/// each other.
pub fn classify_report(tower: &FieldTower, spec: &CodeSpec, budget: &Budget) -> Result<Value> {
    spec.validate(tower)?;
    let d = classify(tower, spec, budget)?;
    let mut routes = serde_json::Map::new();
    routes.insert(
        "brute_force".into(),
        json!({"is_mrd": d.is_mrd, "d_rank": d.d_rank, "provenance": EXHAUSTIVE}),
    );
    routes.insert(
        "subspace_criterion".into(),
        json!({"is_mrd": d.subspace_mrd, "subspaces": d.subspaces.to_string(), "provenance": EXHAUSTIVE}),
    );

    if !spec.is_gabidulin() {
        let membership = mrd_membership_multi(tower, spec, budget)?;
        if membership.is_mrd != d.is_mrd {
            return Err(mismatch(
                "MRD routes",
                format!(
                    "separated determinants give MRD = {}, brute force {}",
                    membership.is_mrd, d.is_mrd
                ),
            ));
        }
        routes.insert("determinant_sum".into(), verdict_json(&membership));
    }

    if let [tw] = spec.twists.as_slice() {
        let forbidden =
            forbidden_eta_set_one_twist(tower, &spec.alpha, spec.k, spec.h, tw.t, budget)?;
        let predicted = !forbidden.contains(tw.eta);
        if predicted != d.is_mrd {
            return Err(mismatch(
                "MRD routes",
                format!(
                    "forbidden-set membership predicts MRD = {predicted}, brute force {}",
                    d.is_mrd
                ),
            ));
        }
        routes.insert(
            "forbidden_set".into(),
            json!({
                "is_mrd": predicted,
                "forbidden_size": forbidden.len(),
                "witness": forbidden.entries.get(&tw.eta).map(set_witness_json),
                "provenance": THEOREM,
            }),
        );
        if tw.t == 0 {
            let norm = norm_mrd_condition(tower, spec)?;
            if norm.holds && !d.is_mrd {
                return Err(mismatch(
                    "norm condition",
                    "the norm condition holds but the code is not MRD".into(),
                ));
            }
            routes.insert(
                "norm_condition".into(),
                json!({
                    "holds": norm.holds,
                    "eta_norm": element_to_json(tower, norm.eta_norm),
                    "sign": element_to_json(tower, norm.sign),
                    "witness": norm.witness.map(|(f0, fh)| json!({
                        "f0": element_to_json(tower, f0),
                        "fh": element_to_json(tower, fh),
                    })),
                    "implies_mrd": norm.holds,
                    "provenance": THEOREM,
                }),
            );
        }
    }

    let mut hamming_routes = Value::Null;
    if !spec.is_gabidulin() {
        let omega = omega_witness(tower, &spec.alpha, spec.k, spec.h, &spec.twists, budget)?;
        if omega.is_some() && d.is_mrd {
            return Err(mismatch(
                "omega soundness",
                format!("witness {omega:?} on an MRD code"),
            ));
        }
        routes.insert(
            "omega".into(),
            json!({"witness": omega, "implies_non_mrd": omega.is_some(), "provenance": THEOREM}),
        );
        let hv = hamming_class_via_omega(tower, spec, budget)?;
        let brute = d.label();
        let agrees = if hv.nmds_decided {
            hv.label == brute
        } else {
            hv.label == HammingLabel::Amds
                && matches!(brute, HammingLabel::Amds | HammingLabel::Nmds)
        };
        if !agrees {
            return Err(mismatch(
                "Hamming classification routes",
                format!(
                    "minor zeros give {}, enumeration gives {}",
                    hv.label.as_str(),
                    brute.as_str()
                ),
            ));
        }
        hamming_routes = json!({
            "label": hv.label.as_str(),
            "nmds_decided": hv.nmds_decided,
            "zero_subsets": hv.zero_subsets,
            "failing_superset": hv.failing_superset,
            "provenance": THEOREM,
        });
    }

    Ok(json!({
        "spec": code_spec_to_json(tower, spec),
        "n": d.n,
        "k": d.k,
        "label": d.label().as_str(),
        "rank": {
            "d_rank": d.d_rank,
            "is_mrd": d.is_mrd,
            "witness": witness_json(tower, &d.rank_witness),
            "provenance": EXHAUSTIVE,
        },
        "hamming": {
            "d_hamming": d.d_hamming,
            "dual_d_hamming": d.dual_d_hamming,
            "is_mds": d.is_mds,
            "is_amds": d.is_amds,
            "is_nmds": d.is_nmds,
            "witness": witness_json(tower, &d.hamming_witness),
            "provenance": EXHAUSTIVE,
            "column_conditions": {
                "i": d.conditions.cond_i,
                "ii": d.conditions.cond_ii,
                "iii": d.conditions.cond_iii,
                "provenance": THEOREM,
            },
            "via_minor_zeros": hamming_routes,
        },
        "routes": Value::Object(routes),
        "routes_agree": true,
        "counts": {
            "codeword_classes": d.classes.to_string(),
            "dual_codeword_classes": d.dual_classes.to_string(),
            "subspaces": d.subspaces.to_string(),
        },
    }))
}

/// Forbidden sets for the twist positions of `spec`; η values in the spec
/// are ignored. One twist gives the exhaustive forbidden η set, the ratio
/// set and Ω_1 (and Ω_1' at t = 0); several twists give the η tuples with a
/// vanishing minor.
pub fn forbidden_report(tower: &FieldTower, spec: &CodeSpec, budget: &Budget) -> Result<Value> {
    if spec.twists.is_empty() {
        return Err(Error::InvalidCode(
            "forbidden sets need at least one twist".into(),
        ));
    }
    let placeholder = CodeSpec {
        twists: spec
            .twists
            .iter()
            .map(|tw| Twist {
                t: tw.t,
                eta: Element::ONE,
            })
            .collect(),
        ..spec.clone()
    };
    placeholder.validate(tower)?;
    let (alpha, k, h) = (&spec.alpha, spec.k, spec.h);
    let nonzero = tower.order() as usize - 1;
    if let [tw] = spec.twists.as_slice() {
        let t = tw.t;
        let forbidden = forbidden_eta_set_one_twist(tower, alpha, k, h, t, budget)?;
        let ratio = ratio_set_one_twist(tower, alpha, k, h, t, budget)?;
        let omega = omega_one(tower, alpha, k, h, t, budget)?;
        for (x, w) in &forbidden.entries {
            if !ratio.contains(tower.inv(*x)?) {
                return Err(mismatch(
                    "forbidden set",
                    format!("{x:?} (witness {w:?}) has no inverse in the ratio set"),
                ));
            }
        }
        let nonzero_ratio = ratio.entries.keys().filter(|x| !x.is_zero()).count();
        if nonzero_ratio != forbidden.len() {
            return Err(mismatch(
                "forbidden set",
                format!(
                    "{} forbidden values but {nonzero_ratio} non-zero ratios",
                    forbidden.len()
                ),
            ));
        }
        if let Some(x) = omega.values().into_iter().find(|&x| !ratio.contains(x)) {
            return Err(mismatch(
                "omega-1",
                format!("{x:?} is missing from the ratio set"),
            ));
        }
        let mut sets = serde_json::Map::new();
        sets.insert(
            "forbidden_eta".into(),
            set_json(tower, &forbidden, EXHAUSTIVE),
        );
        sets.insert("ratio_set".into(), set_json(tower, &ratio, EXHAUSTIVE));
        sets.insert("omega_1".into(), set_json(tower, &omega, THEOREM));
        if t == 0 {
            let prime = omega_one_prime(tower, alpha, k, h, budget)?;
            if prime.values() != omega.values() {
                return Err(mismatch(
                    "omega-1-prime",
                    "differs from omega-1 at t = 0".into(),
                ));
            }
            sets.insert("omega_1_prime".into(), set_json(tower, &prime, THEOREM));
        }
        return Ok(json!({
            "spec": code_spec_to_json(tower, &placeholder),
            "mode": "one-twist",
            "sets": Value::Object(sets),
            "mrd_eta_count": nonzero - forbidden.len(),
            "omega_1_complement_size": nonzero - omega.values().iter().filter(|x| !x.is_zero()).count(),
            "checks": {
                "forbidden_inverse_of_ratio_set": true,
                "omega_1_within_ratio_set": true,
            },
        }));
    }
    let ts = spec.ts();
    let tuples = omega_tuples_exhaustive(tower, alpha, k, h, &ts, budget)?;
    Ok(json!({
        "spec": code_spec_to_json(tower, &placeholder),
        "mode": "multi-twist",
        "ts": ts,
        "tuples_scanned": crate::budget::pow_sat(nonzero as u64, ts.len()).to_string(),
        "omega_tuples": {
            "provenance": THEOREM,
            "size": tuples.len(),
            "entries": tuples
                .iter()
                .map(|(etas, cols)| json!({"etas": elements_to_json(tower, etas), "columns": cols}))
                .collect::<Vec<_>>(),
        },
    }))
}

fn usize_list(v: &Value, key: &str) -> Result<Vec<usize>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing array \"{key}\"")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("\"{key}\" entries must be integers")))
        })
        .collect()
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("missing or non-integer \"{key}\"")))
}

fn get_elements(tower: &FieldTower, v: &Value, key: &str) -> Result<Vec<Element>> {
    elements_from_json(
        tower,
        v.get(key)
            .ok_or_else(|| Error::Parse(format!("missing \"{key}\"")))?,
    )
}

/// Runs a construction recipe:
/// `{"family": "chain" | "scalar-multiple" | "sum-product-free", "alpha", "k", "h", "ts", ...}`
/// with `"chain"` and `"etas"` for chains, `"s"`, `"eta1"` and `"bs"` for
/// scalar multiples, `"s"` and `"etas"` for sum-product-free twists.
pub fn construct_report(tower: &FieldTower, recipe: &Value, budget: &Budget) -> Result<Value> {
    let family = recipe
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("construction recipe needs a string \"family\"".into()))?;
    let alpha = get_elements(tower, recipe, "alpha")?;
    let k = get_usize(recipe, "k")?;
    let h = if recipe.get("h").is_some() {
        get_usize(recipe, "h")?
    } else {
        0
    };
    let ts = usize_list(recipe, "ts")?;
    let mut extra = serde_json::Map::new();
    let built: Constructed = match family {
        "chain" => {
            let chain = usize_list(recipe, "chain")?;
            let etas = get_elements(tower, recipe, "etas")?;
            extra.insert("chain".into(), json!(chain));
            construct_chain_mrd(tower, &chain, &alpha, k, h, &ts, &etas, budget)?
        }
        "scalar-multiple" => {
            let s = get_usize(recipe, "s")?;
            let eta1 = crate::io::element_from_json(
                tower,
                recipe
                    .get("eta1")
                    .ok_or_else(|| Error::Parse("missing \"eta1\"".into()))?,
            )?;
            let bs = get_elements(tower, recipe, "bs")?;
            extra.insert("s".into(), json!(s));
            construct_scalar_multiple_mrd(tower, s, &alpha, k, h, &ts, eta1, &bs, budget)?
        }
        "sum-product-free" => {
            let s = get_usize(recipe, "s")?;
            let etas = get_elements(tower, recipe, "etas")?;
            let spf = sum_product_free_test(tower, &etas, s, 1, budget)?;
            extra.insert("s".into(), json!(s));
            extra.insert(
                "sum_product_free".into(),
                json!({"free": spf.free, "tuples": spf.tuples.to_string(), "provenance": EXHAUSTIVE}),
            );
            construct_sum_product_free_mrd(tower, s, &alpha, k, h, &ts, &etas, budget)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown construction family \"{other}\" (chain, scalar-multiple, sum-product-free)"
            )))
        }
    };
    Ok(json!({
        "family": family,
        "parameters": Value::Object(extra),
        "spec": code_spec_to_json(tower, &built.spec),
        "mrd": {"value": true, "provenance": THEOREM},
        "verification": built.verification.as_ref().map(verdict_json),
        "complete": built.verification.is_some(),
    }))
}

fn bound_json(b: &Bound) -> Value {
    json!({"value": b.value, "provenance": b.method.as_str(), "source": b.source})
}

pub fn covering_json(tower: &FieldTower, spec: &CodeSpec, r: &CoveringReport) -> Value {
    json!({
        "spec": code_spec_to_json(tower, spec),
        "rho": r.rho.map(|rho| json!({"value": rho, "provenance": EXHAUSTIVE})),
        "lower_bound": bound_json(&r.lower),
        "upper_bound": bound_json(&r.upper),
        "cosets": r.cosets.to_string(),
        "deep_cosets": r.complete.then(|| r.deep_cosets.to_string()),
        "deepest_vectors": r
            .deepest_vectors
            .iter()
            .map(|d| json!({"vector": elements_to_json(tower, &d.vector), "distance": d.distance}))
            .collect::<Vec<_>>(),
        "complete": r.complete,
    })
}

/// Covering report and whether it is exhaustive.
pub fn covering_command(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<(Value, bool)> {
    spec.validate(tower)?;
    let r = covering_report(tower, spec, budget)?;
    Ok((covering_json(tower, spec, &r), r.complete))
}

/// What `deephole` checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeepHoleRequest {
    /// A grid of family vectors: every non-zero g in `gs` against every f
    /// message in `fs`, for the given flavors.
    Family {
        flavors: Vec<Flavor>,
        gs: Vec<Element>,
        fs: Vec<Vec<Element>>,
    },
    /// Explicit vectors.
    Vectors(Vec<Vec<Element>>),
    /// Uniformly random vectors drawn with the given seed.
    Random { count: usize, seed: u64 },
}

/// Distance, deep-hole status and the extension criterion for each vector;
/// the two deep-hole tests must agree.
pub fn deephole_report(
    tower: &FieldTower,
    spec: &CodeSpec,
    request: &DeepHoleRequest,
    budget: &Budget,
) -> Result<Value> {
    spec.validate(tower)?;
    let cover = covering_report(tower, spec, budget)?;
    let rho = cover.rho.ok_or(Error::BudgetExceeded {
        what: "covering radius for deep-hole checks",
        required: cover.cosets,
        budget: budget.ambient,
    })?;
    let mut labelled: Vec<(Value, Vec<Element>)> = Vec::new();
    match request {
        DeepHoleRequest::Family { flavors, gs, fs } => {
            for &flavor in flavors {
                for &g in gs {
                    for f in fs {
                        let u = deep_hole_family(tower, spec, g, flavor, f)?;
                        let origin = json!({
                            "flavor": flavor.as_str(),
                            "g": element_to_json(tower, g),
                            "f": elements_to_json(tower, f),
                        });
                        labelled.push((origin, u));
                    }
                }
            }
        }
        DeepHoleRequest::Vectors(vs) => {
            labelled.extend(vs.iter().map(|v| (Value::Null, v.clone())));
        }
        DeepHoleRequest::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                let v: Vec<Element> = (0..spec.n())
                    .map(|_| Element::from_index(rng.gen_range(0..tower.order())))
                    .collect();
                labelled.push((Value::Null, v));
            }
        }
    }
    let family = matches!(request, DeepHoleRequest::Family { .. });
    let check_extension = matches!(spec.twists.as_slice(), [tw] if tw.t == 0);
    let mut entries = Vec::with_capacity(labelled.len());
    let mut deep = 0usize;
    for (origin, u) in labelled {
        let distance = distance_to_code(tower, spec, &u, budget)?;
        let is_deep = distance == rho;
        deep += is_deep as usize;
        let extension = if check_extension && distance > 0 {
            let ext = deep_hole_via_extension(tower, spec, &u, budget)?;
            if ext != is_deep {
                return Err(mismatch(
                    "deep-hole routes",
                    format!("extension MRD = {ext} but distance {distance} vs rho {rho}"),
                ));
            }
            Some(ext)
        } else {
            None
        };
        if family && !is_deep {
            return Err(mismatch(
                "deep-hole family",
                format!("family vector {origin} is at distance {distance} < rho = {rho}"),
            ));
        }
        entries.push(json!({
            "vector": elements_to_json(tower, &u),
            "origin": origin,
            "distance": {"value": distance, "provenance": EXHAUSTIVE},
            "is_deep_hole": is_deep,
            "extension_mrd": extension,
        }));
    }
    Ok(json!({
        "spec": code_spec_to_json(tower, spec),
        "rho": {"value": rho, "provenance": EXHAUSTIVE},
        "checked": entries.len(),
        "deep_holes": deep,
        "verified": !family || deep == entries.len(),
        "vectors": entries,
    }))
}

/// Every message of length k over the field, in index order; used to build
/// f grids.
pub fn all_messages(tower: &FieldTower, k: usize) -> Vec<Vec<Element>> {
    let count = crate::budget::pow_sat(tower.order() as u64, k);
    (0..count)
        .map(|i| full_message(tower.order(), k, i))
        .collect()
}

/// Accepts a bare code spec, an object with a `"spec"` field, or a CLI
/// report with exactly one result, so `construct` output can be fed straight
/// back into `classify`.
pub fn spec_from_document(tower: &FieldTower, v: &Value) -> Result<CodeSpec> {
    if v.get("alpha").is_some() {
        return code_spec_from_json(tower, v);
    }
    if let Some(inner) = v.get("spec") {
        return code_spec_from_json(tower, inner);
    }
    match v
        .get("results")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
    {
        Some([only]) => spec_from_document(tower, only),
        Some(_) => Err(Error::Parse(
            "report must hold exactly one result to be used as a code spec".into(),
        )),
        None => code_spec_from_json(tower, v),
    }
}
