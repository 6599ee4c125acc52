//! The triangular inverse e_{i,j} and the coefficients g_h^{(t)} relating
//! modified Moore determinants to plain ones:
//! |M_k^{(h,k+t)}(α)| = g_h^{(t)} |M_k(α)|.

use crate::error::{Error, Result};
use crate::linpoly::{annihilator, LinearizedPoly};
use crate::moore::{det, modified_moore_matrix, moore_matrix, MatrixFqm};
use crate::tower::{Element, FieldTower};

/// c_0, ..., c_k with Π_{u ∈ U}(x − u) = Σ_j c_j x^{[k−j]}; reads past k
/// return zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorCoeffs {
    c: Vec<Element>,
}

impl AnnihilatorCoeffs {
    /// Raw coefficients `c_0, ..., c_k`.
    pub fn new(c: Vec<Element>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidArgument("need at least c_0".into()));
        }
        Ok(AnnihilatorCoeffs { c })
    }

    /// Reverses a q-degree-k polynomial: c_j is its coefficient of x^{[k−j]}.
    pub fn from_poly(f: &LinearizedPoly) -> Result<Self> {
        let k = f
            .q_degree()
            .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
        Self::new((0..=k).map(|j| f.coeff(k - j)).collect())
    }

    /// Coefficients of the annihilator of span(points); the points must be
    /// F_q-independent.
    pub fn from_points(tower: &FieldTower, points: &[Element]) -> Result<Self> {
        if tower.fq_rank(points) != points.len() {
            return Err(Error::DependentSubset {
                indices: (0..points.len()).collect(),
            });
        }
        Self::from_poly(&annihilator(tower, points))
    }

    pub fn k(&self) -> usize {
        self.c.len() - 1
    }

    pub fn get(&self, j: usize) -> Element {
        self.c.get(j).copied().unwrap_or(Element::ZERO)
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.c
    }
}

/// Lower unitriangular E = A_t^{-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularInverse {
    e: Vec<Vec<Element>>,
}

impl TriangularInverse {
    pub fn t(&self) -> usize {
        self.e.len() - 1
    }

    /// e_{i,j}; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> Element {
        if j > i {
            Element::ZERO
        } else {
            self.e[i][j]
        }
    }

    pub fn to_matrix(&self) -> MatrixFqm {
        let n = self.e.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        MatrixFqm::from_rows(rows).expect("square")
    }
}

/// A_t with entry (i, j) = c_{i−j}^{[i]} for i ≥ j.
pub fn a_matrix(tower: &FieldTower, c: &AnnihilatorCoeffs, t: usize) -> MatrixFqm {
    let mut a = MatrixFqm::zeros(t + 1, t + 1);
    for i in 0..=t {
        for j in 0..=i {
            a.set(i, j, tower.frobenius(c.get(i - j), i as i64));
        }
    }
    a
}

/// e_{i,i} = 1 and e_{i,j} = −Σ_{s=0}^{i−j−1} e_{j+s,j} c_{i−j−s}^{[i]}.
/// The product A_t E is checked against the identity before returning.
pub fn triangular_inverse(
    tower: &FieldTower,
    c: &AnnihilatorCoeffs,
    t: usize,
) -> Result<TriangularInverse> {
    if c.get(0) != Element::ONE {
        return Err(Error::InvalidArgument(
            "triangular inverse needs c_0 = 1".into(),
        ));
    }
    let mut e: Vec<Vec<Element>> = (0..=t).map(|i| vec![Element::ZERO; i + 1]).collect();
    for i in 0..=t {
        e[i][i] = Element::ONE;
        for j in (0..i).rev() {
            let mut acc = Element::ZERO;
            for s in 0..i - j {
                let term = tower.mul(e[j + s][j], tower.frobenius(c.get(i - j - s), i as i64));
                acc = tower.add(acc, term);
            }
            e[i][j] = tower.neg(acc);
        }
    }
    let inv = TriangularInverse { e };
    let prod = a_matrix(tower, c, t).mul(tower, &inv.to_matrix())?;
    if prod != MatrixFqm::identity(t + 1) {
        return Err(Error::inconsistency(
            "triangular inverse",
            format!("A_{t} E is not the identity"),
        ));
    }
    Ok(inv)
}

/// g_h^{(t)} = −Σ_{i=0}^{min(t,h)} e_{t,i} c_{k−h+i}^{[i]}.
pub fn g_coefficient(
    tower: &FieldTower,
    c: &AnnihilatorCoeffs,
    h: usize,
    t: usize,
) -> Result<Element> {
    let k = c.k();
    if h >= k {
        return Err(Error::InvalidArgument(format!(
            "twist row h = {h} out of range for k = {k}"
        )));
    }
    let e = triangular_inverse(tower, c, t)?;
    let mut acc = Element::ZERO;
    for i in 0..=t.min(h) {
        let term = tower.mul(e.get(t, i), tower.frobenius(c.get(k - h + i), i as i64));
        acc = tower.add(acc, term);
    }
    Ok(tower.neg(acc))
}

/// g_h^{(t)}(I) for the points of `alpha` indexed by `subset` (0-based).
pub fn g_of_subset(
    tower: &FieldTower,
    alpha: &[Element],
    subset: &[usize],
    h: usize,
    t: usize,
) -> Result<Element> {
    let coeffs = subset_coeffs(tower, alpha, subset)?;
    g_coefficient(tower, &coeffs, h, t)
}

/// Annihilator coefficients of U_I, failing on a dependent subset.
pub fn subset_coeffs(
    tower: &FieldTower,
    alpha: &[Element],
    subset: &[usize],
) -> Result<AnnihilatorCoeffs> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= alpha.len()) {
        return Err(Error::InvalidArgument(format!(
            "subset index {bad} out of range for {} points",
            alpha.len()
        )));
    }
    let points: Vec<Element> = subset.iter().map(|&i| alpha[i]).collect();
    AnnihilatorCoeffs::from_points(tower, &points).map_err(|e| match e {
        Error::DependentSubset { .. } => Error::DependentSubset {
            indices: subset.to_vec(),
        },
        other => other,
    })
}

/// Checks |M_k^{(h,k+t)}(α)| = g_h^{(t)} |M_k(α)| for independent α of
/// length k.
pub fn verify_modified_moore_identity(
    tower: &FieldTower,
    alpha_k: &[Element],
    h: usize,
    t: usize,
) -> Result<bool> {
    let k = alpha_k.len();
    let c = AnnihilatorCoeffs::from_points(tower, alpha_k)?;
    let g = g_coefficient(tower, &c, h, t)?;
    let lhs = det(tower, &modified_moore_matrix(tower, alpha_k, k, h, k + t)?)?;
    let rhs = tower.mul(g, det(tower, &moore_matrix(tower, alpha_k, k)?)?);
    Ok(lhs == rhs)
}
