//! Gabidulin codes and their twisted variants with any number of twists at a
//! single row, plus brute-force distance computation and Hamming-metric
//! classification.
//!
//! A [`CodeSpec`] with no twists is the Gabidulin code G_{n,k}(α). With
//! twists (t_1, η_1), ..., (t_ℓ, η_ℓ) at row h, message f_0, ..., f_{k−1}
//! maps to the q-polynomial Σ f_i x^{[i]} + f_h Σ_j η_j x^{[k+t_j]}
//! evaluated at α.

use rayon::prelude::*;

use crate::budget::{pow_sat, Budget};
use crate::error::{Error, Result};
use crate::linpoly::LinearizedPoly;
use crate::moore::{frobenius_row, moore_matrix, rank, MatrixFqm};
use crate::subspace::k_subsets;
use crate::tower::{Element, FieldTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Twist {
    pub t: usize,
    pub eta: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub alpha: Vec<Element>,
    pub k: usize,
    /// Twisted row; ignored when `twists` is empty.
    pub h: usize,
    pub twists: Vec<Twist>,
}

impl CodeSpec {
    pub fn gabidulin(alpha: Vec<Element>, k: usize) -> Self {
        CodeSpec {
            alpha,
            k,
            h: 0,
            twists: Vec::new(),
        }
    }

    pub fn twisted(alpha: Vec<Element>, k: usize, h: usize, twists: Vec<Twist>) -> Self {
        CodeSpec {
            alpha,
            k,
            h,
            twists,
        }
    }

    /// One twist: the code C_1.
    pub fn one_twist(alpha: Vec<Element>, k: usize, h: usize, t: usize, eta: Element) -> Self {
        Self::twisted(alpha, k, h, vec![Twist { t, eta }])
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_gabidulin(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn ts(&self) -> Vec<usize> {
        self.twists.iter().map(|tw| tw.t).collect()
    }

    pub fn etas(&self) -> Vec<Element> {
        self.twists.iter().map(|tw| tw.eta).collect()
    }

    /// Checks k < n ≤ m, rk_q(α) = n, 0 ≤ h < k, strictly increasing
    /// t_j ≤ n−k−1 and η_j ≠ 0.
    pub fn validate(&self, tower: &FieldTower) -> Result<()> {
        let (n, k) = (self.n(), self.k);
        if k == 0 || k >= n {
            return Err(Error::InvalidCode(format!(
                "need 1 <= k < n, got k = {k}, n = {n}"
            )));
        }
        if n > tower.m() {
            return Err(Error::InvalidCode(format!(
                "n = {n} exceeds the extension degree m = {}",
                tower.m()
            )));
        }
        if let Some(a) = self.alpha.iter().find(|a| a.index() >= tower.order()) {
            return Err(Error::InvalidCode(format!(
                "evaluation point index {} is outside the field",
                a.index()
            )));
        }
        if tower.fq_rank(&self.alpha) != n {
            return Err(Error::InvalidCode(
                "evaluation points are not linearly independent over F_q".into(),
            ));
        }
        if self.twists.is_empty() {
            return Ok(());
        }
        if self.h >= k {
            return Err(Error::InvalidCode(format!(
                "twist row h = {} must satisfy 0 <= h <= k-1 = {}",
                self.h,
                k - 1
            )));
        }
        if self.twists.len() > n - k {
            return Err(Error::InvalidCode(format!(
                "{} twists exceed n-k = {}",
                self.twists.len(),
                n - k
            )));
        }
        for (j, tw) in self.twists.iter().enumerate() {
            if tw.t > n - k - 1 {
                return Err(Error::InvalidCode(format!(
                    "twist exponent t_{} = {} exceeds n-k-1 = {}",
                    j + 1,
                    tw.t,
                    n - k - 1
                )));
            }
            if j > 0 && tw.t <= self.twists[j - 1].t {
                return Err(Error::InvalidCode(
                    "twist exponents must be strictly increasing".into(),
                ));
            }
            if tw.eta.is_zero() {
                return Err(Error::InvalidCode(format!(
                    "eta_{} must be non-zero",
                    j + 1
                )));
            }
            if tw.eta.index() >= tower.order() {
                return Err(Error::InvalidCode(format!(
                    "eta_{} is outside the field",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// Moore rows α^{[i]} for i ≠ h and α^{[h]} + Σ_j η_j α^{[k+t_j]} at row h.
pub fn generator_matrix(tower: &FieldTower, spec: &CodeSpec) -> Result<MatrixFqm> {
    spec.validate(tower)?;
    let mut g = moore_matrix(tower, &spec.alpha, spec.k)?;
    for tw in &spec.twists {
        let extra = frobenius_row(tower, &spec.alpha, spec.k + tw.t);
        for (c, x) in extra.into_iter().enumerate() {
            let v = tower.add(g.get(spec.h, c), tower.mul(tw.eta, x));
            g.set(spec.h, c, v);
        }
    }
    Ok(g)
}

/// The q-polynomial in the evaluation space attached to a message.
pub fn message_poly(
    tower: &FieldTower,
    spec: &CodeSpec,
    message: &[Element],
) -> Result<LinearizedPoly> {
    if message.len() != spec.k {
        return Err(Error::Dimension(format!(
            "message has length {}, expected k = {}",
            message.len(),
            spec.k
        )));
    }
    let top = spec
        .twists
        .iter()
        .map(|tw| spec.k + tw.t + 1)
        .max()
        .unwrap_or(spec.k);
    let mut coeffs = vec![Element::ZERO; top];
    coeffs[..spec.k].copy_from_slice(message);
    for tw in &spec.twists {
        let c = &mut coeffs[spec.k + tw.t];
        *c = tower.add(*c, tower.mul(tw.eta, message[spec.h]));
    }
    Ok(LinearizedPoly::new(coeffs))
}

/// Evaluates the message polynomial at α.
pub fn encode(tower: &FieldTower, spec: &CodeSpec, message: &[Element]) -> Result<Vec<Element>> {
    spec.validate(tower)?;
    let f = message_poly(tower, spec, message)?;
    Ok(spec.alpha.iter().map(|&a| f.eval(tower, a)).collect())
}

/// Number of non-zero messages up to scalar multiples: (Q^k − 1)/(Q − 1).
pub fn projective_count(order: u32, k: usize) -> u128 {
    let q = order as u64;
    (pow_sat(q, k) - 1) / (q as u128 - 1)
}

/// The `index`-th projective message: first non-zero entry equal to one,
/// leading positions earlier in the order, remaining entries in base Q with
/// the last position varying fastest.
pub fn projective_message(order: u32, k: usize, index: u128) -> Vec<Element> {
    let q = order as u128;
    let mut rest = index;
    for lead in 0..k {
        let block = q.pow((k - 1 - lead) as u32);
        if rest < block {
            let mut msg = vec![Element::ZERO; k];
            msg[lead] = Element::ONE;
            for pos in (lead + 1..k).rev() {
                msg[pos] = Element::from_index((rest % q) as u32);
                rest /= q;
            }
            return msg;
        }
        rest -= block;
    }
    panic!("projective index out of range");
}

/// Full message number `index` in base Q, position 0 least significant.
pub fn full_message(order: u32, k: usize, index: u128) -> Vec<Element> {
    let q = order as u128;
    let mut rest = index;
    (0..k)
        .map(|_| {
            let d = (rest % q) as u32;
            rest /= q;
            Element::from_index(d)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub message: Vec<Element>,
    pub codeword: Vec<Element>,
    pub weight: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceScan {
    pub d_rank: usize,
    pub d_hamming: usize,
    pub rank_witness: Witness,
    pub hamming_witness: Witness,
    /// Projective message classes visited.
    pub classes: u128,
}

/// Minimum rank and Hamming weights of the row space of `g` over one message
/// per scalar class. Ties go to the earliest class.
pub fn scan_distances(tower: &FieldTower, g: &MatrixFqm, budget: &Budget) -> Result<DistanceScan> {
    let k = g.rows();
    if k == 0 {
        return Err(Error::InvalidArgument("empty generator matrix".into()));
    }
    let classes = projective_count(tower.order(), k);
    budget.check_codewords(classes)?;
    let (rank_min, ham_min) = (0..classes as u64)
        .into_par_iter()
        .map(|i| {
            let msg = projective_message(tower.order(), k, i as u128);
            let cw = g.left_mul_vec(tower, &msg).expect("shape checked");
            ((tower.fq_rank(&cw), i), (tower.hamming_weight(&cw), i))
        })
        .reduce(
            || ((usize::MAX, u64::MAX), (usize::MAX, u64::MAX)),
            |a, b| (a.0.min(b.0), a.1.min(b.1)),
        );
    let witness = |(weight, i): (usize, u64)| {
        let message = projective_message(tower.order(), k, i as u128);
        let codeword = g.left_mul_vec(tower, &message).expect("shape checked");
        Witness {
            message,
            codeword,
            weight,
        }
    };
    Ok(DistanceScan {
        d_rank: rank_min.0,
        d_hamming: ham_min.0,
        rank_witness: witness(rank_min),
        hamming_witness: witness(ham_min),
        classes,
    })
}

pub fn min_rank_distance(
    tower: &FieldTower,
    spec: &CodeSpec,
    budget: &Budget,
) -> Result<DistanceScan> {
    scan_distances(tower, &generator_matrix(tower, spec)?, budget)
}

pub fn min_hamming_distance(tower: &FieldTower, spec: &CodeSpec, budget: &Budget) -> Result<usize> {
    Ok(min_rank_distance(tower, spec, budget)?.d_hamming)
}

/// A generator matrix of the dual code (the right null space of `g`).
pub fn dual_generator(tower: &FieldTower, g: &MatrixFqm) -> Result<MatrixFqm> {
    let rows = g.null_space(tower);
    if rows.is_empty() {
        return Err(Error::InvalidArgument(
            "the dual of the full space is zero".into(),
        ));
    }
    MatrixFqm::from_rows(rows)
}

/// Column conditions on a full-rank k×n generator matrix:
/// (i) every k−1 columns independent, (ii) some k columns dependent,
/// (iii) every k+1 columns of rank k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NmdsConditions {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
}

impl NmdsConditions {
    pub fn is_mds(&self) -> bool {
        !self.cond_ii
    }

    pub fn is_amds(&self) -> bool {
        self.cond_ii && self.cond_iii
    }

    pub fn is_nmds(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii
    }
}

pub fn nmds_conditions(tower: &FieldTower, g: &MatrixFqm) -> Result<NmdsConditions> {
    let (k, n) = (g.rows(), g.cols());
    if rank(tower, g) != k {
        return Err(Error::InvalidArgument(
            "generator matrix is rank deficient".into(),
        ));
    }
    let all_full = |size: usize, target: usize| {
        size > n
            || k_subsets(n, size)
                .iter()
                .all(|cols| rank(tower, &g.select_columns(cols)) == target)
    };
    let cond_i = all_full(k - 1, k - 1);
    let cond_ii = !all_full(k, k);
    let cond_iii = all_full(k + 1, k);
    Ok(NmdsConditions {
        cond_i,
        cond_ii,
        cond_iii,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HammingLabel {
    Mds,
    Nmds,
    Amds,
    Other,
}

impl HammingLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            HammingLabel::Mds => "MDS",
            HammingLabel::Nmds => "NMDS",
            HammingLabel::Amds => "AMDS",
            HammingLabel::Other => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub d_rank: usize,
    pub d_hamming: usize,
    pub dual_d_hamming: usize,
    pub is_mrd: bool,
    pub is_mds: bool,
    pub is_amds: bool,
    pub is_nmds: bool,
    pub rank_witness: Witness,
    pub hamming_witness: Witness,
    pub conditions: NmdsConditions,
    /// MRD verdict of the subspace criterion.
    pub subspace_mrd: bool,
    pub classes: u128,
    pub dual_classes: u128,
    pub subspaces: u128,
}

impl DistanceReport {
    pub fn label(&self) -> HammingLabel {
        if self.is_mds {
            HammingLabel::Mds
        } else if self.is_nmds {
            HammingLabel::Nmds
        } else if self.is_amds {
            HammingLabel::Amds
        } else {
            HammingLabel::Other
        }
    }
}

/// Brute-force distances of the code and its dual, cross-checked against the
/// column-rank conditions and the subspace MRD criterion. Any disagreement is
/// an [`Error::Inconsistency`].
pub fn classify(tower: &FieldTower, spec: &CodeSpec, budget: &Budget) -> Result<DistanceReport> {
    let g = generator_matrix(tower, spec)?;
    classify_matrix(tower, &g, budget)
}

pub fn classify_matrix(
    tower: &FieldTower,
    g: &MatrixFqm,
    budget: &Budget,
) -> Result<DistanceReport> {
    let (k, n) = (g.rows(), g.cols());
    let scan = scan_distances(tower, g, budget)?;
    let dual = dual_generator(tower, g)?;
    let dual_scan = scan_distances(tower, &dual, budget)?;
    let conditions = nmds_conditions(tower, g)?;
    let subspace = crate::mrdcheck::is_mrd_matrix(tower, g, budget)?;

    let is_mrd = scan.d_rank == n - k + 1;
    let is_mds = scan.d_hamming == n - k + 1;
    let is_amds = scan.d_hamming == n - k;
    let is_nmds = is_amds && dual_scan.d_hamming == k;

    if scan.d_rank > scan.d_hamming || scan.d_hamming > n - k + 1 {
        return Err(Error::inconsistency(
            "distance bounds",
            format!(
                "d_R = {}, d_H = {}, n-k+1 = {}",
                scan.d_rank,
                scan.d_hamming,
                n - k + 1
            ),
        ));
    }
    if subspace.is_mrd != is_mrd {
        return Err(Error::inconsistency(
            "MRD routes",
            format!(
                "brute force d_R = {} but the subspace criterion says MRD = {}",
                scan.d_rank, subspace.is_mrd
            ),
        ));
    }
    if is_mrd && !is_mds {
        return Err(Error::inconsistency(
            "MRD implies MDS",
            format!("d_H = {}", scan.d_hamming),
        ));
    }
    let structural = (
        conditions.is_mds(),
        conditions.is_amds(),
        conditions.is_nmds(),
    );
    if structural != (is_mds, is_amds, is_nmds) {
        return Err(Error::inconsistency(
            "Hamming classification routes",
            format!(
                "column conditions give (MDS, AMDS, NMDS) = {structural:?}, \
                 enumeration gives ({is_mds}, {is_amds}, {is_nmds}) with d_H = {}, dual d_H = {}",
                scan.d_hamming, dual_scan.d_hamming
            ),
        ));
    }
    Ok(DistanceReport {
        n,
        k,
        d_rank: scan.d_rank,
        d_hamming: scan.d_hamming,
        dual_d_hamming: dual_scan.d_hamming,
        is_mrd,
        is_mds,
        is_amds,
        is_nmds,
        rank_witness: scan.rank_witness,
        hamming_witness: scan.hamming_witness,
        conditions,
        subspace_mrd: subspace.is_mrd,
        classes: scan.classes,
        dual_classes: dual_scan.classes,
        subspaces: subspace.subspaces,
    })
}
