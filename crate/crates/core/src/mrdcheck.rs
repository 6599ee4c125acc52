//! MRD criteria over subspace representatives, forbidden parameter sets,
//! the Ω sets built from g_h^{(t)}, MRD constructions and the structural
//! Hamming-metric classification.
//!
//! For a k×n generator matrix G over F_{q^m} the code is MRD iff
//! |V Gᵀ| ≠ 0 for every V in V_q(k, n). Replacing V by RV with R ∈ GL_k(F_q)
//! scales the determinant by det R, so one RREF representative per row space
//! suffices.
//!
//! With twists at row h the determinant is multilinear in that row:
//! |V Gᵀ| = |V M_kᵀ| + Σ_j η_j |V M_k^{(h,k+t_j)}ᵀ|.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::budget::{pow_sat, Budget};
use crate::codes::{generator_matrix, CodeSpec, HammingLabel, Twist};
use crate::error::{Error, Result};
use crate::gcoeff::{g_coefficient, subset_coeffs};
use crate::moore::{det, modified_moore_matrix, moore_matrix, rank, MatrixFqm};
use crate::subspace::{binomial, enumerate_subspaces, k_subsets, SubspaceRep};
use crate::tower::{Element, FieldTower, FqMatrix};

/// V Gᵀ for V over F_q (k×n) and G over F_{q^m} (r×n): a k×r matrix.
pub fn v_times_gt(tower: &FieldTower, v: &FqMatrix, g: &MatrixFqm) -> MatrixFqm {
    let mut out = MatrixFqm::zeros(v.rows(), g.rows());
    for i in 0..v.rows() {
        for j in 0..g.rows() {
            let mut acc = Element::ZERO;
            for l in 0..v.cols() {
                let c = v.get(i, l);
                if c != 0 {
                    acc = tower.add(acc, tower.mul(Element::from_index(c), g.get(j, l)));
                }
            }
            out.set(i, j, acc);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrdVerdict {
    pub is_mrd: bool,
    /// First representative (in enumeration order) with a vanishing minor.
    pub witness: Option<SubspaceRep>,
    pub subspaces: u128,
}

/// rk(V Gᵀ) = k for every V in V_q(k, n).
pub fn is_mrd_matrix(tower: &FieldTower, g: &MatrixFqm, budget: &Budget) -> Result<MrdVerdict> {
    let reps = enumerate_subspaces(tower.base(), g.cols(), g.rows(), budget)?;
    let k = g.rows();
    let witness = reps
        .par_iter()
        .find_first(|v| rank(tower, &v_times_gt(tower, &v.matrix, g)) != k)
        .cloned();
    Ok(MrdVerdict {
        is_mrd: witness.is_none(),
        witness,
        subspaces: reps.len() as u128,
    })
}

pub fn is_mrd_subspace_criterion(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<MrdVerdict> {
    is_mrd_matrix(tower, &generator_matrix(tower, spec)?, budget)
}

/// Evaluates |V M_kᵀ| + Σ_j η_j |V M_k^{(h,k+t_j)}ᵀ| ≠ 0 for every V, from
/// separately computed determinants.
pub fn mrd_membership_multi(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<MrdVerdict> {
    spec.validate(tower)?;
    let (k, n) = (spec.k, spec.n());
    let plain = moore_matrix(tower, &spec.alpha, k)?;
    let modified: Vec<(Element, MatrixFqm)> = spec
        .twists
        .iter()
        .map(|tw| {
            Ok((
                tw.eta,
                modified_moore_matrix(tower, &spec.alpha, k, spec.h, k + tw.t)?,
            ))
        })
        .collect::<Result<_>>()?;
    let reps = enumerate_subspaces(tower.base(), n, k, budget)?;
    let outcomes: Vec<Result<bool>> = reps
        .par_iter()
        .map(|v| {
            let base = det(tower, &v_times_gt(tower, &v.matrix, &plain))?;
            if base.is_zero() {
                return Err(Error::inconsistency(
                    "Gabidulin minor",
                    format!("|V M_k^T| vanished for V with pivots {:?}", v.pivots),
                ));
            }
            let mut total = base;
            for (eta, m) in &modified {
                let d = det(tower, &v_times_gt(tower, &v.matrix, m))?;
                total = tower.add(total, tower.mul(*eta, d));
            }
            Ok(total.is_zero())
        })
        .collect();
    let mut witness = None;
    for (v, outcome) in reps.iter().zip(outcomes) {
        if outcome? {
            witness = Some(v.clone());
            break;
        }
    }
    Ok(MrdVerdict {
        is_mrd: witness.is_none(),
        witness,
        subspaces: reps.len() as u128,
    })
}

/// Which definition produced a [`ForbiddenSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// {η : |V M_kᵀ| + η |V M_k^{(h,k+t)}ᵀ| = 0 for some V}.
    ForbiddenEta,
    /// {−|V M_k^{(h,k+t)}ᵀ| / |V M_kᵀ| : V}.
    RatioSet,
    /// {−g_h^{(t)}(I) : I a k-subset}.
    OmegaOne,
    /// {c_{k−h}(I) : I a k-subset}, the t = 0 case.
    OmegaOnePrime,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ForbiddenEta => "forbidden-eta",
            Provenance::RatioSet => "ratio-set",
            Provenance::OmegaOne => "omega-1",
            Provenance::OmegaOnePrime => "omega-1-prime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetWitness {
    Subspace(SubspaceRep),
    Subset(Vec<usize>),
}

/// A materialized set of field elements, each with the first witness that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    pub provenance: Provenance,
    pub entries: BTreeMap<Element, SetWitness>,
    /// Subspaces or subsets enumerated.
    pub enumerated: u128,
}

impl ForbiddenSet {
    pub fn contains(&self, x: Element) -> bool {
        self.entries.contains_key(&x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<Element> {
        self.entries.keys().copied().collect()
    }
}

type Minors = (Vec<SubspaceRep>, Vec<(Element, Element)>);

/// (|V M_k^{(h,k+t)}ᵀ|, |V M_kᵀ|) for every representative, in order.
fn one_twist_minors(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    t: usize,
    budget: &Budget,
) -> Result<Minors> {
    let plain = moore_matrix(tower, alpha, k)?;
    let modified = modified_moore_matrix(tower, alpha, k, h, k + t)?;
    let reps = enumerate_subspaces(tower.base(), alpha.len(), k, budget)?;
    let minors = reps
        .par_iter()
        .map(|v| {
            let num = det(tower, &v_times_gt(tower, &v.matrix, &modified))?;
            let den = det(tower, &v_times_gt(tower, &v.matrix, &plain))?;
            if den.is_zero() {
                return Err(Error::inconsistency(
                    "ratio set",
                    format!("|V M_k^T| vanished for V with pivots {:?}", v.pivots),
                ));
            }
            Ok((num, den))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((reps, minors))
}

/// Every η making some |V G_1ᵀ| vanish: −|V M_kᵀ| / |V M_k^{(h,k+t)}ᵀ| over V
/// with a non-zero modified minor. C_1 is MRD iff η lies outside.
pub fn forbidden_eta_set_one_twist(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    t: usize,
    budget: &Budget,
) -> Result<ForbiddenSet> {
    let (reps, minors) = one_twist_minors(tower, alpha, k, h, t, budget)?;
    let mut entries = BTreeMap::new();
    for (v, (num, den)) in reps.iter().zip(minors) {
        if num.is_zero() {
            continue;
        }
        let eta = tower.neg(tower.div(den, num)?);
        entries
            .entry(eta)
            .or_insert_with(|| SetWitness::Subspace(v.clone()));
    }
    Ok(ForbiddenSet {
        provenance: Provenance::ForbiddenEta,
        entries,
        enumerated: reps.len() as u128,
    })
}

/// The ratio set {−|V M_k^{(h,k+t)}ᵀ| / |V M_kᵀ|}. Its non-zero members are
/// exactly the inverses of [`forbidden_eta_set_one_twist`], and it contains
/// Ω_1.
pub fn ratio_set_one_twist(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    t: usize,
    budget: &Budget,
) -> Result<ForbiddenSet> {
    let (reps, minors) = one_twist_minors(tower, alpha, k, h, t, budget)?;
    let mut entries = BTreeMap::new();
    for (v, (num, den)) in reps.iter().zip(minors) {
        let r = tower.neg(tower.div(num, den)?);
        entries
            .entry(r)
            .or_insert_with(|| SetWitness::Subspace(v.clone()));
    }
    Ok(ForbiddenSet {
        provenance: Provenance::RatioSet,
        entries,
        enumerated: reps.len() as u128,
    })
}

fn check_points(tower: &FieldTower, alpha: &[Element], k: usize, budget: &Budget) -> Result<()> {
    if tower.fq_rank(alpha) != alpha.len() {
        return Err(Error::InvalidCode(
            "evaluation points are not linearly independent over F_q".into(),
        ));
    }
    if k == 0 || k > alpha.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} out of range for {} points",
            alpha.len()
        )));
    }
    budget.check_subspaces(binomial(alpha.len(), k))
}

/// g_h^{(t)}(I) for every k-subset I, lexicographic.
pub fn g_values(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    t: usize,
    budget: &Budget,
) -> Result<Vec<(Vec<usize>, Element)>> {
    check_points(tower, alpha, k, budget)?;
    k_subsets(alpha.len(), k)
        .into_iter()
        .map(|i| {
            let c = subset_coeffs(tower, alpha, &i)?;
            let g = g_coefficient(tower, &c, h, t)?;
            Ok((i, g))
        })
        .collect()
}

/// Ω_1 = {−g_h^{(t)}(I)}.
pub fn omega_one(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    t: usize,
    budget: &Budget,
) -> Result<ForbiddenSet> {
    let values = g_values(tower, alpha, k, h, t, budget)?;
    let enumerated = values.len() as u128;
    let mut entries = BTreeMap::new();
    for (i, g) in values {
        entries.entry(tower.neg(g)).or_insert(SetWitness::Subset(i));
    }
    Ok(ForbiddenSet {
        provenance: Provenance::OmegaOne,
        entries,
        enumerated,
    })
}

/// Ω_1' = {c_{k−h}(I)}, checked subset by subset against −g_h^{(0)}(I).
pub fn omega_one_prime(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    budget: &Budget,
) -> Result<ForbiddenSet> {
    check_points(tower, alpha, k, budget)?;
    let mut entries = BTreeMap::new();
    let mut enumerated = 0;
    for i in k_subsets(alpha.len(), k) {
        let c = subset_coeffs(tower, alpha, &i)?;
        let value = c.get(k - h);
        let g0 = g_coefficient(tower, &c, h, 0)?;
        if value != tower.neg(g0) {
            return Err(Error::inconsistency(
                "omega-1-prime",
                format!("c_(k-h) differs from -g_h^(0) on subset {i:?}"),
            ));
        }
        entries.entry(value).or_insert(SetWitness::Subset(i));
        enumerated += 1;
    }
    Ok(ForbiddenSet {
        provenance: Provenance::OmegaOnePrime,
        entries,
        enumerated,
    })
}

/// 1 + Σ_j η_j g_h^{(t_j)}(I) for every k-subset I. Zero exactly when the
/// maximal minor of G on columns I vanishes.
pub fn omega_values(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    twists: &[Twist],
    budget: &Budget,
) -> Result<Vec<(Vec<usize>, Element)>> {
    check_points(tower, alpha, k, budget)?;
    k_subsets(alpha.len(), k)
        .into_iter()
        .map(|i| {
            let c = subset_coeffs(tower, alpha, &i)?;
            let mut z = Element::ONE;
            for tw in twists {
                let g = g_coefficient(tower, &c, h, tw.t)?;
                z = tower.add(z, tower.mul(tw.eta, g));
            }
            Ok((i, z))
        })
        .collect()
}

/// First k-subset with 1 + Σ_j η_j g_h^{(t_j)}(I) = 0. A witness means the
/// code is not MRD.
pub fn omega_witness(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    twists: &[Twist],
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    Ok(omega_values(tower, alpha, k, h, twists, budget)?
        .into_iter()
        .find(|(_, z)| z.is_zero())
        .map(|(i, _)| i))
}

#[allow(clippy::too_many_arguments)]
pub fn omega_two_witness(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    (t1, t2): (usize, usize),
    (eta1, eta2): (Element, Element),
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    let twists = [Twist { t: t1, eta: eta1 }, Twist { t: t2, eta: eta2 }];
    omega_witness(tower, alpha, k, h, &twists, budget)
}

/// Two twists at t = (0, 1): the first I with
/// (η_1 − η_2 c_1^{[1]}) c_{k−h} + η_2 c_{k−h+1}^{[1]} = 1.
pub fn omega_two_prime_witness(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    (eta1, eta2): (Element, Element),
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    check_points(tower, alpha, k, budget)?;
    if h >= k {
        return Err(Error::InvalidArgument(format!(
            "h = {h} must be below k = {k}"
        )));
    }
    for i in k_subsets(alpha.len(), k) {
        let c = subset_coeffs(tower, alpha, &i)?;
        let lhs = tower.add(
            tower.mul(
                tower.sub(eta1, tower.mul(eta2, tower.frobenius(c.get(1), 1))),
                c.get(k - h),
            ),
            tower.mul(eta2, tower.frobenius(c.get(k - h + 1), 1)),
        );
        if lhs == Element::ONE {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Every (η_1, ..., η_ℓ) ∈ (F_{q^m}^*)^ℓ with an Ω witness, for tiny fields.
pub fn omega_tuples_exhaustive(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    ts: &[usize],
    budget: &Budget,
) -> Result<BTreeMap<Vec<Element>, Vec<usize>>> {
    let ell = ts.len();
    let tuples = pow_sat(tower.order() as u64 - 1, ell);
    budget.check_codewords(tuples)?;
    let gs: Vec<(Vec<usize>, Vec<Element>)> = {
        check_points(tower, alpha, k, budget)?;
        k_subsets(alpha.len(), k)
            .into_iter()
            .map(|i| {
                let c = subset_coeffs(tower, alpha, &i)?;
                let g = ts
                    .iter()
                    .map(|&t| g_coefficient(tower, &c, h, t))
                    .collect::<Result<Vec<_>>>()?;
                Ok((i, g))
            })
            .collect::<Result<_>>()?
    };
    let q1 = tower.order() - 1;
    let mut out = BTreeMap::new();
    for idx in 0..tuples as u64 {
        let mut rest = idx;
        let etas: Vec<Element> = (0..ell)
            .map(|_| {
                let d = (rest % q1 as u64) as u32 + 1;
                rest /= q1 as u64;
                Element::from_index(d)
            })
            .collect();
        let hit = gs.iter().find(|(_, g)| {
            let z = g.iter().zip(&etas).fold(Element::ONE, |acc, (&g, &e)| {
                tower.add(acc, tower.mul(e, g))
            });
            z.is_zero()
        });
        if let Some((i, _)) = hit {
            out.insert(etas, i.clone());
        }
    }
    Ok(out)
}

/// Result of a construction: the spec, and its MRD re-verification when the
/// subspace count fits the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructed {
    pub spec: CodeSpec,
    pub verification: Option<MrdVerdict>,
}

fn construction_error(level: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Construction {
        level: level.into(),
        reason: reason.into(),
    }
}

/// Checks F_q ⊊ F_{q^s} ⊊ F_{q^m}, n ≤ s and that α is an independent tuple
/// inside F_{q^s}.
fn check_intermediate_field(tower: &FieldTower, s: usize, alpha: &[Element]) -> Result<()> {
    let m = tower.m();
    if s <= 1 || s >= m || !m.is_multiple_of(s) {
        return Err(construction_error(
            format!("F_q^{s}"),
            format!("need a proper intermediate field: 1 < s < m = {m} and s | m"),
        ));
    }
    if alpha.len() > s {
        return Err(construction_error(
            "alpha",
            format!("n = {} exceeds s = {s}", alpha.len()),
        ));
    }
    for (i, &a) in alpha.iter().enumerate() {
        if !tower.in_subfield(a, s)? {
            return Err(construction_error(
                format!("alpha_{}", i + 1),
                format!("not in F_q^{s}"),
            ));
        }
    }
    if tower.fq_rank(alpha) != alpha.len() {
        return Err(construction_error(
            "alpha",
            "points are not independent over F_q",
        ));
    }
    Ok(())
}

fn finish(tower: &FieldTower, spec: CodeSpec, budget: &Budget) -> Result<Constructed> {
    spec.validate(tower)?;
    let verification = match mrd_membership_multi(tower, &spec, budget) {
        Ok(v) => Some(v),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(v) = &verification {
        if !v.is_mrd {
            return Err(Error::inconsistency(
                "MRD construction",
                format!(
                    "constructed code fails the MRD criterion at V with pivots {:?}",
                    v.witness.as_ref().map(|w| w.pivots.clone())
                ),
            ));
        }
    }
    Ok(Constructed { spec, verification })
}

/// Twists from a subfield chain F_q ⊊ F_{q^{s_1}} ⊊ ... ⊊ F_{q^{s_ℓ}} ⊊ F_{q^m}
/// with η_i ∈ F_{q^{s_{i+1}}} ∖ F_{q^{s_i}} (s_{ℓ+1} = m) and α inside
/// F_{q^{s_1}}.
#[allow(clippy::too_many_arguments)]
pub fn construct_chain_mrd(
    tower: &FieldTower,
    chain: &[usize],
    alpha: &[Element],
    k: usize,
    h: usize,
    ts: &[usize],
    etas: &[Element],
    budget: &Budget,
) -> Result<Constructed> {
    if chain.is_empty() || chain.len() != etas.len() || ts.len() != etas.len() {
        return Err(construction_error(
            "chain",
            "need one subfield degree, one twist exponent and one eta per level",
        ));
    }
    check_intermediate_field(tower, chain[0], alpha)?;
    let m = tower.m();
    for (i, &eta) in etas.iter().enumerate() {
        let lower = chain[i];
        let upper = chain.get(i + 1).copied().unwrap_or(m);
        if upper <= lower || upper % lower != 0 || !m.is_multiple_of(upper) {
            return Err(construction_error(
                format!("level {}", i + 1),
                format!("F_q^{lower} ⊊ F_q^{upper} is not a strict subfield step"),
            ));
        }
        if !tower.in_subfield(eta, upper)? {
            return Err(construction_error(
                format!("eta_{}", i + 1),
                format!("not in F_q^{upper}"),
            ));
        }
        if tower.in_subfield(eta, lower)? {
            return Err(construction_error(
                format!("eta_{}", i + 1),
                format!("lies in F_q^{lower}"),
            ));
        }
    }
    let twists = ts
        .iter()
        .zip(etas)
        .map(|(&t, &eta)| Twist { t, eta })
        .collect();
    finish(
        tower,
        CodeSpec::twisted(alpha.to_vec(), k, h, twists),
        budget,
    )
}

/// η_1 ∈ F_{q^m} ∖ F_{q^s} and η_i = b_i η_1 with b_i ∈ F_{q^s}^*.
#[allow(clippy::too_many_arguments)]
pub fn construct_scalar_multiple_mrd(
    tower: &FieldTower,
    s: usize,
    alpha: &[Element],
    k: usize,
    h: usize,
    ts: &[usize],
    eta1: Element,
    bs: &[Element],
    budget: &Budget,
) -> Result<Constructed> {
    check_intermediate_field(tower, s, alpha)?;
    if ts.len() != bs.len() + 1 {
        return Err(construction_error("twists", "need one exponent per eta"));
    }
    if tower.in_subfield(eta1, s)? {
        return Err(construction_error("eta_1", format!("lies in F_q^{s}")));
    }
    let mut etas = vec![eta1];
    for (i, &b) in bs.iter().enumerate() {
        if b.is_zero() || !tower.in_subfield(b, s)? {
            return Err(construction_error(
                format!("b_{}", i + 2),
                format!("not in F_q^{s}*"),
            ));
        }
        etas.push(tower.mul(b, eta1));
    }
    let twists = ts
        .iter()
        .zip(&etas)
        .map(|(&t, &eta)| Twist { t, eta })
        .collect();
    finish(
        tower,
        CodeSpec::twisted(alpha.to_vec(), k, h, twists),
        budget,
    )
}

/// Twists whose η vector is 1-F_{q^s}-sum-product free.
#[allow(clippy::too_many_arguments)]
pub fn construct_sum_product_free_mrd(
    tower: &FieldTower,
    s: usize,
    alpha: &[Element],
    k: usize,
    h: usize,
    ts: &[usize],
    etas: &[Element],
    budget: &Budget,
) -> Result<Constructed> {
    check_intermediate_field(tower, s, alpha)?;
    if ts.len() != etas.len() {
        return Err(construction_error("twists", "need one exponent per eta"));
    }
    let spf = sum_product_free_test(tower, etas, s, 1, budget)?;
    if let Some(w) = spf.witness {
        return Err(construction_error(
            "eta",
            format!(
                "not 1-sum-product free: coefficients {:?} give an element of F_q^{s}*",
                w.coefficients.iter().map(|c| c.index()).collect::<Vec<_>>()
            ),
        ));
    }
    let twists = ts
        .iter()
        .zip(etas)
        .map(|(&t, &eta)| Twist { t, eta })
        .collect();
    finish(
        tower,
        CodeSpec::twisted(alpha.to_vec(), k, h, twists),
        budget,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfWitness {
    /// The index subsets S (0-based) with 0 < |S| ≤ t, in order.
    pub subsets: Vec<Vec<usize>>,
    pub coefficients: Vec<Element>,
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfResult {
    pub free: bool,
    pub witness: Option<SpfWitness>,
    pub tuples: u128,
}

/// Whether Σ_{0<|S|≤t} a_S Π_{i∈S} η_i avoids F_{q^s}^* for every choice of
/// a_S ∈ F_{q^s}, by scanning all coefficient tuples.
pub fn sum_product_free_test(
    tower: &FieldTower,
    etas: &[Element],
    s: usize,
    t: usize,
    budget: &Budget,
) -> Result<SpfResult> {
    if t == 0 {
        return Err(Error::InvalidArgument(
            "sum-product order t must be at least 1".into(),
        ));
    }
    let sub = tower.subfield_elements(s)?;
    let subsets: Vec<Vec<usize>> = (1..=t.min(etas.len()))
        .flat_map(|size| k_subsets(etas.len(), size))
        .collect();
    let products: Vec<Element> = subsets
        .iter()
        .map(|set| {
            set.iter()
                .fold(Element::ONE, |acc, &i| tower.mul(acc, etas[i]))
        })
        .collect();
    let base = sub.len() as u64;
    let tuples = pow_sat(base, products.len());
    crate::budget::check("sum-product-free scan", tuples, budget.codewords)?;
    let coeffs_of = |idx: u64| -> Vec<Element> {
        let mut rest = idx;
        (0..products.len())
            .map(|_| {
                let d = sub[(rest % base) as usize];
                rest /= base;
                d
            })
            .collect()
    };
    let value_of = |coeffs: &[Element]| {
        coeffs
            .iter()
            .zip(&products)
            .fold(Element::ZERO, |acc, (&a, &p)| {
                tower.add(acc, tower.mul(a, p))
            })
    };
    let in_sub_star = |x: Element| !x.is_zero() && tower.frobenius(x, s as i64) == x;
    let hit = (0..tuples as u64)
        .into_par_iter()
        .find_first(|&idx| in_sub_star(value_of(&coeffs_of(idx))));
    let witness = hit.map(|idx| {
        let coefficients = coeffs_of(idx);
        let value = value_of(&coefficients);
        SpfWitness {
            subsets: subsets.clone(),
            coefficients,
            value,
        }
    });
    Ok(SpfResult {
        free: witness.is_none(),
        witness,
        tuples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormCondition {
    /// N(f_0) ≠ (−1)^{mk} N(η) N(f_h) for every admissible (f_0, f_h).
    pub holds: bool,
    /// A violating (f_0, f_h); for h = 0 both entries coincide.
    pub witness: Option<(Element, Element)>,
    pub eta_norm: Element,
    pub sign: Element,
}

/// The norm sufficient condition for one twist at t = 0. For h = 0 the
/// coefficients f_0 and f_h coincide and the condition reduces to
/// N(η) ≠ (−1)^{mk}. A `true` result certifies MRD; `false` certifies
/// nothing.
pub fn norm_mrd_condition(tower: &FieldTower, spec: &CodeSpec) -> Result<NormCondition> {
    spec.validate(tower)?;
    let [tw] = spec.twists.as_slice() else {
        return Err(Error::InvalidArgument(
            "norm condition needs exactly one twist".into(),
        ));
    };
    if tw.t != 0 {
        return Err(Error::InvalidArgument(format!(
            "norm condition is stated for t = 0, got t = {}",
            tw.t
        )));
    }
    let sign = tower.minus_one_pow(tower.m() * spec.k);
    let eta_norm = tower.norm(tw.eta);
    let scale = tower.mul(sign, eta_norm);
    let witness = if spec.h == 0 {
        tower
            .nonzero_elements()
            .find(|&f| tower.norm(f) == tower.mul(scale, tower.norm(f)))
            .map(|f| (f, f))
    } else {
        // Norms of f_0 range over all of F_q^*, so the first f_h decides.
        tower.nonzero_elements().find_map(|fh| {
            let target = tower.mul(scale, tower.norm(fh));
            tower
                .nonzero_elements()
                .find(|&f0| tower.norm(f0) == target)
                .map(|f0| (f0, fh))
        })
    };
    Ok(NormCondition {
        holds: witness.is_none(),
        witness,
        eta_norm,
        sign,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingVerdict {
    pub label: HammingLabel,
    /// False when the theorems leave NMDS open (h strictly inside 1..k−1);
    /// the label is then at most AMDS.
    pub nmds_decided: bool,
    /// k-subsets with a vanishing maximal minor.
    pub zero_subsets: Vec<Vec<usize>>,
    /// A (k+1)-subset all of whose k-subsets vanish, if any.
    pub failing_superset: Option<Vec<usize>>,
}

/// MDS iff no 1 + Σ η_j g_h^{(t_j)}(I) vanishes; otherwise AMDS iff every
/// (k+1)-subset contains a k-subset where it does not, and for h ∈ {0, k−1}
/// that same condition is equivalent to NMDS.
pub fn hamming_class_via_omega(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<HammingVerdict> {
    spec.validate(tower)?;
    let (n, k, h) = (spec.n(), spec.k, spec.h);
    budget.check_subspaces(binomial(n, k + 1))?;
    let values = omega_values(tower, &spec.alpha, k, h, &spec.twists, budget)?;
    let zero_subsets: Vec<Vec<usize>> = values
        .iter()
        .filter(|(_, z)| z.is_zero())
        .map(|(i, _)| i.clone())
        .collect();
    if zero_subsets.is_empty() {
        return Ok(HammingVerdict {
            label: HammingLabel::Mds,
            nmds_decided: true,
            zero_subsets,
            failing_superset: None,
        });
    }
    let failing_superset = k_subsets(n, k + 1).into_iter().find(|j| {
        (0..j.len()).all(|drop| {
            let sub: Vec<usize> = j
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != drop)
                .map(|(_, &x)| x)
                .collect();
            zero_subsets.contains(&sub)
        })
    });
    let edge_row = h == 0 || h == k - 1;
    let label = match (&failing_superset, edge_row) {
        (Some(_), _) => HammingLabel::Other,
        (None, true) => HammingLabel::Nmds,
        (None, false) => HammingLabel::Amds,
    };
    Ok(HammingVerdict {
        label,
        nmds_decided: edge_row || failing_superset.is_some(),
        zero_subsets,
        failing_superset,
    })
}
