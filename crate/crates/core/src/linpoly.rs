//! Linearized polynomials f(x) = Σ f_i x^{[i]} with x^{[i]} = x^{q^i}, under
//! composition (the skew ring F_{q^m}[x; σ]).

use crate::error::{Error, Result};
use crate::tower::{Element, FieldTower, FqMatrix};

/// Above this many subspace elements the annihilator is built by iterated
/// composition instead of the literal product over the subspace.
pub const LITERAL_ANNIHILATOR_LIMIT: u64 = 1 << 12;

/// Coefficient vector, index `i` holding the coefficient of x^{[i]}. Trailing
/// zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearizedPoly {
    coeffs: Vec<Element>,
}

impl LinearizedPoly {
    pub fn new(mut coeffs: Vec<Element>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearizedPoly { coeffs }
    }

    pub fn zero() -> Self {
        LinearizedPoly { coeffs: Vec::new() }
    }

    /// The identity map x = x^{[0]}.
    pub fn identity() -> Self {
        Self::monomial(0, Element::ONE)
    }

    /// `c · x^{[i]}`.
    pub fn monomial(i: usize, c: Element) -> Self {
        let mut coeffs = vec![Element::ZERO; i + 1];
        coeffs[i] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// Coefficient of x^{[i]}, zero past the q-degree.
    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs.get(i).copied().unwrap_or(Element::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// q-degree, `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, tower: &FieldTower, x: Element) -> Element {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Element::ZERO, |acc, (i, &c)| {
                if c.is_zero() {
                    acc
                } else {
                    tower.add(acc, tower.mul(c, tower.frobenius(x, i as i64)))
                }
            })
    }

    pub fn add(&self, tower: &FieldTower, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| tower.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, tower: &FieldTower, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| tower.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    /// Left scalar multiple `a · f`.
    pub fn scale(&self, tower: &FieldTower, a: Element) -> Self {
        Self::new(self.coeffs.iter().map(|&c| tower.mul(a, c)).collect())
    }

    /// Composition `self ∘ other`: coefficient k is Σ_i a_i σ^i(b_{k-i}).
    pub fn compose(&self, tower: &FieldTower, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Element::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = tower.mul(a, tower.frobenius(b, i as i64));
                out[i + j] = tower.add(out[i + j], term);
            }
        }
        Self::new(out)
    }

    /// F_q-matrix of x ↦ f(x) on coordinates: column j is f(y^j).
    pub fn matrix(&self, tower: &FieldTower) -> FqMatrix {
        let m = tower.m();
        let mut a = FqMatrix::zeros(m, m);
        let mut basis = Element::ONE;
        let y = tower.root();
        for j in 0..m {
            for (i, c) in tower
                .coords(self.eval(tower, basis))
                .into_iter()
                .enumerate()
            {
                a.set(i, j, c);
            }
            basis = tower.mul(basis, y);
        }
        a
    }

    /// Echelonized F_q-basis of the kernel of a non-zero polynomial.
    pub fn kernel(&self, tower: &FieldTower) -> Result<Vec<Element>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "the zero polynomial has the whole field as kernel".into(),
            ));
        }
        self.matrix(tower)
            .null_space(tower.base())
            .iter()
            .map(|v| tower.from_coords(v))
            .collect()
    }

    /// Left division with remainder: `self = quotient ∘ d + remainder`,
    /// q-degree of the remainder below that of `d`.
    pub fn right_divide(&self, tower: &FieldTower, d: &Self) -> Result<(Self, Self)> {
        let db = d.q_degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quo = vec![Element::ZERO; self.coeffs.len().saturating_sub(db)];
        while let Some(da) = rem.q_degree() {
            if da < db {
                break;
            }
            let s = da - db;
            let lead = tower.frobenius(d.coeffs[db], s as i64);
            let u = tower.div(rem.coeffs[da], lead)?;
            quo[s] = u;
            rem = rem.sub(tower, &Self::monomial(s, u).compose(tower, d));
        }
        Ok((Self::new(quo), rem))
    }
}

/// Echelonized F_q-basis of the span of `gens`.
pub fn span_basis(tower: &FieldTower, gens: &[Element]) -> Vec<Element> {
    if gens.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<u32>> = gens.iter().map(|&g| tower.coords(g)).collect();
    let mut a = FqMatrix::from_rows(&rows);
    let rank = a.rref(tower.base()).len();
    (0..rank)
        .map(|r| {
            tower
                .from_coords(a.row(r))
                .expect("rref rows stay in range")
        })
        .collect()
}

/// All elements of the F_q-span of an independent `basis`, in the order of
/// their coefficient vectors.
pub fn span_elements(tower: &FieldTower, basis: &[Element]) -> Vec<Element> {
    let q = tower.q();
    let mut out = vec![Element::ZERO];
    for &b in basis {
        let prev = out.clone();
        for c in 1..q {
            let cb = tower.mul(Element::from_index(c), b);
            out.extend(prev.iter().map(|&u| tower.add(u, cb)));
        }
    }
    out
}

/// The monic annihilator Π_{u ∈ U}(x − u) of U = span(gens).
pub fn annihilator(tower: &FieldTower, gens: &[Element]) -> LinearizedPoly {
    let basis = span_basis(tower, gens);
    let size = (tower.q() as u64).saturating_pow(basis.len() as u32);
    if size <= LITERAL_ANNIHILATOR_LIMIT {
        annihilator_literal(tower, gens).expect("within the literal limit")
    } else {
        annihilator_composition(tower, gens)
    }
}

/// Expands the product of all q^{dim U} linear factors as an ordinary
/// polynomial and reads off the q-power coefficients.
pub fn annihilator_literal(tower: &FieldTower, gens: &[Element]) -> Result<LinearizedPoly> {
    let basis = span_basis(tower, gens);
    let size = (tower.q() as u64).saturating_pow(basis.len() as u32);
    crate::budget::check(
        "literal annihilator",
        size as u128,
        LITERAL_ANNIHILATOR_LIMIT,
    )?;
    let mut prod = vec![Element::ONE];
    for u in span_elements(tower, &basis) {
        // prod *= (x - u)
        let neg_u = tower.neg(u);
        let mut next = vec![Element::ZERO; prod.len() + 1];
        for (i, &c) in prod.iter().enumerate() {
            next[i + 1] = tower.add(next[i + 1], c);
            next[i] = tower.add(next[i], tower.mul(c, neg_u));
        }
        prod = next;
    }
    let q = tower.q() as usize;
    let mut coeffs = Vec::with_capacity(basis.len() + 1);
    let mut power = 1usize;
    for (deg, &c) in prod.iter().enumerate() {
        if deg == power {
            coeffs.push(c);
            power *= q;
        } else if !c.is_zero() {
            return Err(Error::inconsistency(
                "annihilator",
                format!("non-linearized term of degree {deg} in the subspace polynomial"),
            ));
        }
    }
    Ok(LinearizedPoly::new(coeffs))
}

/// Builds the annihilator one basis vector at a time:
/// A_{i+1} = (x^{[1]} − A_i(β_i)^{q−1} x) ∘ A_i.
pub fn annihilator_composition(tower: &FieldTower, gens: &[Element]) -> LinearizedPoly {
    let mut a = LinearizedPoly::identity();
    for b in span_basis(tower, gens) {
        let v = a.eval(tower, b);
        debug_assert!(!v.is_zero(), "basis vectors are independent");
        let step = LinearizedPoly::new(vec![
            tower.neg(tower.pow(v, (tower.q() - 1) as u64)),
            Element::ONE,
        ]);
        a = step.compose(tower, &a);
    }
    a
}
