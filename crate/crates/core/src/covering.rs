//! Rank-metric covering radius and deep holes.
//!
//! The exhaustive scan splits F_{q^m}^n into cosets of the code. Reducing a
//! vector against a systematic generator makes it vanish on an information
//! set, so the Q^{n−k} vectors supported off that set represent every coset
//! exactly once; each coset's minimum rank weight is then a scan over the
//! Q^k codewords.

use rayon::prelude::*;

use crate::budget::{pow_sat, Budget};
use crate::codes::{encode, full_message, generator_matrix, CodeSpec};
use crate::error::{Error, Result};
use crate::moore::{frobenius_row, MatrixFqm};
use crate::tower::{Element, FieldTower};

/// Where a number in a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    TheoremBound,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::TheoremBound => "theorem-bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: usize,
    pub method: Method,
    /// Short name of the statement or scan that justifies the value.
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeepHole {
    pub vector: Vec<Element>,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringReport {
    /// Exact covering radius, when the scan fit the budget.
    pub rho: Option<usize>,
    pub lower: Bound,
    pub upper: Bound,
    /// Capped list of coset representatives at distance ρ.
    pub deepest_vectors: Vec<DeepHole>,
    /// Number of cosets at distance ρ.
    pub deep_cosets: u128,
    pub cosets: u128,
    pub complete: bool,
}

/// Default cap on listed deep holes.
pub const DEFAULT_DEEP_HOLE_SAMPLES: usize = 16;

/// Row-reduced generator and the pivot columns forming an information set.
fn systematic(tower: &FieldTower, g: &MatrixFqm) -> Result<(MatrixFqm, Vec<usize>)> {
    let mut s = g.clone();
    let pivots = s.rref(tower);
    if pivots.len() != g.rows() {
        return Err(Error::InvalidArgument(
            "generator matrix is rank deficient".into(),
        ));
    }
    Ok((s, pivots))
}

/// u minus the codeword agreeing with it on the information set.
fn reduce(tower: &FieldTower, sys: &MatrixFqm, pivots: &[usize], u: &[Element]) -> Vec<Element> {
    let coeffs: Vec<Element> = pivots.iter().map(|&p| u[p]).collect();
    let c = sys.left_mul_vec(tower, &coeffs).expect("shape checked");
    u.iter().zip(c).map(|(&a, b)| tower.sub(a, b)).collect()
}

/// min over all codewords c of rk(u − c), for a matrix generator.
pub fn distance_to_matrix_code(
    tower: &FieldTower,
    g: &MatrixFqm,
    u: &[Element],
    budget: &Budget,
) -> Result<usize> {
    if u.len() != g.cols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against codes of length {}",
            u.len(),
            g.cols()
        )));
    }
    let k = g.rows();
    let words = pow_sat(tower.order() as u64, k);
    budget.check_codewords(words)?;
    Ok(coset_min(tower, g, u, words))
}

fn coset_min(tower: &FieldTower, g: &MatrixFqm, u: &[Element], words: u128) -> usize {
    let mut best = usize::MAX;
    for i in 0..words {
        let msg = full_message(tower.order(), g.rows(), i);
        let c = g.left_mul_vec(tower, &msg).expect("shape checked");
        let diff: Vec<Element> = u.iter().zip(&c).map(|(&a, &b)| tower.sub(a, b)).collect();
        best = best.min(tower.fq_rank(&diff));
        if best == 0 {
            break;
        }
    }
    best
}

pub fn distance_to_code(
    tower: &FieldTower,
    spec: &CodeSpec,
    u: &[Element],
    budget: &Budget,
) -> Result<usize> {
    distance_to_matrix_code(tower, &generator_matrix(tower, spec)?, u, budget)
}

/// Exact covering radius of the row space of `g` by the coset scan.
pub fn covering_radius_matrix(
    tower: &FieldTower,
    g: &MatrixFqm,
    budget: &Budget,
    max_samples: usize,
) -> Result<(usize, Vec<DeepHole>, u128, u128)> {
    let (k, n) = (g.rows(), g.cols());
    let q = tower.order() as u64;
    let cosets = pow_sat(q, n - k);
    let words = pow_sat(q, k);
    budget.check_ambient(cosets.saturating_mul(words))?;
    let (_, pivots) = systematic(tower, g)?;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let rep = |idx: u128| -> Vec<Element> {
        let mut u = vec![Element::ZERO; n];
        for (&c, x) in free
            .iter()
            .zip(full_message(tower.order(), free.len(), idx))
        {
            u[c] = x;
        }
        u
    };
    let minima: Vec<usize> = (0..cosets as u64)
        .into_par_iter()
        .map(|i| coset_min(tower, g, &rep(i as u128), words))
        .collect();
    let rho = minima.iter().copied().max().unwrap_or(0);
    let deep_cosets = minima.iter().filter(|&&d| d == rho).count() as u128;
    let samples = minima
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == rho)
        .take(max_samples)
        .map(|(i, &d)| DeepHole {
            vector: rep(i as u128),
            distance: d,
        })
        .collect();
    Ok((rho, samples, deep_cosets, cosets))
}

/// Exact covering radius with witnesses; fails with
/// [`Error::BudgetExceeded`] when Q^n exceeds the ambient cap.
pub fn covering_radius_exhaustive(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<CoveringReport> {
    let g = generator_matrix(tower, spec)?;
    let (lower, upper) = covering_bounds(spec);
    let (rho, deepest_vectors, deep_cosets, cosets) =
        covering_radius_matrix(tower, &g, budget, DEFAULT_DEEP_HOLE_SAMPLES)?;
    if rho < lower.value || rho > upper.value {
        return Err(Error::inconsistency(
            "covering radius",
            format!(
                "exhaustive radius {rho} outside the bounds [{}, {}] ({} / {})",
                lower.value, upper.value, lower.source, upper.source
            ),
        ));
    }
    Ok(CoveringReport {
        rho: Some(rho),
        lower,
        upper,
        deepest_vectors,
        deep_cosets,
        cosets,
        complete: true,
    })
}

/// Exhaustive report when it fits, otherwise theorem bounds only.
pub fn covering_report(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<CoveringReport> {
    match covering_radius_exhaustive(tower, spec, budget) {
        Err(Error::BudgetExceeded { .. }) => {
            let (lower, upper) = covering_bounds(spec);
            Ok(CoveringReport {
                rho: None,
                lower,
                upper,
                deepest_vectors: Vec::new(),
                deep_cosets: 0,
                cosets: pow_sat(tower.order() as u64, spec.n() - spec.k),
                complete: false,
            })
        }
        other => other,
    }
}

/// Theorem bounds: exactly n−k for one twist at t = 0; [n−k−ℓ+1, n−k] for
/// twists at t = 0, ..., ℓ−1; [0, n−k] otherwise.
pub fn covering_bounds(spec: &CodeSpec) -> (Bound, Bound) {
    let r = spec.n() - spec.k;
    let upper = Bound {
        value: r,
        method: Method::TheoremBound,
        source: "rho <= n-k",
    };
    let ts = spec.ts();
    let contiguous = !ts.is_empty() && ts.iter().enumerate().all(|(i, &t)| t == i);
    let lower = if contiguous && ts.len() == 1 {
        Bound {
            value: r,
            method: Method::TheoremBound,
            source: "one twist at t = 0: rho = n-k",
        }
    } else if contiguous {
        Bound {
            value: (r + 1).saturating_sub(ts.len()),
            method: Method::TheoremBound,
            source: "twists at t = 0..l-1: rho >= n-k-l+1",
        }
    } else {
        Bound {
            value: 0,
            method: Method::TheoremBound,
            source: "generic",
        }
    };
    (lower, upper)
}

/// d_R(u, C) = ρ, with ρ supplied by the caller.
pub fn is_deep_hole_with_radius(
    tower: &FieldTower,
    spec: &CodeSpec,
    u: &[Element],
    rho: usize,
    budget: &Budget,
) -> Result<bool> {
    Ok(distance_to_code(tower, spec, u, budget)? == rho)
}

/// d_R(u, C) = ρ_R(C), computing ρ exhaustively.
pub fn is_deep_hole(
    tower: &FieldTower,
    spec: &CodeSpec,
    u: &[Element],
    budget: &Budget,
) -> Result<bool> {
    let report = covering_radius_exhaustive(tower, spec, budget)?;
    is_deep_hole_with_radius(tower, spec, u, report.rho.expect("exhaustive"), budget)
}

fn require_c1_t0(spec: &CodeSpec) -> Result<()> {
    match spec.twists.as_slice() {
        [tw] if tw.t == 0 => Ok(()),
        _ => Err(Error::InvalidArgument(
            "deep-hole results apply to one twist at t = 0".into(),
        )),
    }
}

/// Whether G_1 with u appended generates an [n, k+1] MRD code. For one twist
/// at t = 0 this is equivalent to u being a deep hole.
pub fn deep_hole_via_extension(
    tower: &FieldTower,
    spec: &CodeSpec,
    u: &[Element],
    budget: &Budget,
) -> Result<bool> {
    require_c1_t0(spec)?;
    let g = generator_matrix(tower, spec)?;
    if u.len() != g.cols() {
        return Err(Error::Dimension(format!(
            "vector length {} != n = {}",
            u.len(),
            g.cols()
        )));
    }
    let (sys, pivots) = systematic(tower, &g)?;
    if reduce(tower, &sys, &pivots, u).iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidArgument("vector lies in the code".into()));
    }
    let ext = g.stack(&MatrixFqm::from_rows(vec![u.to_vec()])?)?;
    Ok(crate::mrdcheck::is_mrd_matrix(tower, &ext, budget)?.is_mrd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// g(x) = g x^{[k]} + f(x)
    TopPower,
    /// g(x) = g x^{[h]} + f(x)
    TwistRow,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::TopPower => "x^[k]",
            Flavor::TwistRow => "x^[h]",
        }
    }
}

/// u_g = g α^{[k or h]} + f(α) where f ∈ P_1 is given by its message.
pub fn deep_hole_family(
    tower: &FieldTower,
    spec: &CodeSpec,
    g: Element,
    flavor: Flavor,
    f_message: &[Element],
) -> Result<Vec<Element>> {
    require_c1_t0(spec)?;
    if g.is_zero() {
        return Err(Error::InvalidArgument("g must be non-zero".into()));
    }
    let power = match flavor {
        Flavor::TopPower => spec.k,
        Flavor::TwistRow => spec.h,
    };
    let f = encode(tower, spec, f_message)?;
    Ok(frobenius_row(tower, &spec.alpha, power)
        .into_iter()
        .zip(f)
        .map(|(a, b)| tower.add(tower.mul(g, a), b))
        .collect())
}
