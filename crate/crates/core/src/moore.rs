//! Matrices over F_{q^m}, Moore matrices and their determinants.
//!
//! Rows and columns are 0-based here. Reports number evaluation points
//! α_1, ..., α_n from 1, so row `h` of a matrix is the (h+1)-th row.

use crate::error::{Error, Result};
use crate::tower::{Element, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFqm {
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl MatrixFqm {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFqm {
            rows,
            cols,
            entries: vec![Element::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Element::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(MatrixFqm {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Element {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Element) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Element] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Element>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Element> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix keeping the listed columns in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns onto {}",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatrixFqm {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, tower: &FieldTower, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = tower.add(out.get(i, j), tower.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, tower: &FieldTower, v: &[Element]) -> Result<Vec<Element>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![Element::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = tower.add(*o, tower.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, tower: &FieldTower) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, r);
            let inv = tower.inv(self.get(r, c)).expect("pivot is non-zero");
            for j in c..self.cols {
                let v = tower.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i == r || f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = tower.sub(self.get(i, j), tower.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Basis of `{x : A x = 0}`, in reduced echelon form.
    pub fn null_space(&self, tower: &FieldTower) -> Vec<Vec<Element>> {
        let mut a = self.clone();
        let pivots = a.rref(tower);
        let basis: Vec<Vec<Element>> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![Element::ZERO; self.cols];
                v[f] = Element::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = tower.neg(a.get(i, f));
                }
                v
            })
            .collect();
        if basis.is_empty() {
            return basis;
        }
        let mut b = MatrixFqm::from_rows(basis).expect("uniform rows");
        b.rref(tower);
        b.to_rows()
    }
}

/// Determinant by Gaussian elimination over F_{q^m}.
pub fn det(tower: &FieldTower, m: &MatrixFqm) -> Result<Element> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = Element::ONE;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(Element::ZERO);
        };
        if pr != c {
            a.swap_rows(pr, c);
            acc = tower.neg(acc);
        }
        let pivot = a.get(c, c);
        acc = tower.mul(acc, pivot);
        let inv = tower.inv(pivot)?;
        for i in c + 1..n {
            let f = tower.mul(a.get(i, c), inv);
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = tower.sub(a.get(i, j), tower.mul(f, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(acc)
}

/// Rank over F_{q^m}.
pub fn rank(tower: &FieldTower, m: &MatrixFqm) -> usize {
    m.clone().rref(tower).len()
}

/// Rows α^{[0]}, ..., α^{[k-1]}.
pub fn moore_matrix(tower: &FieldTower, alpha: &[Element], k: usize) -> Result<MatrixFqm> {
    if k < 1 {
        return Err(Error::InvalidArgument("Moore matrix needs k >= 1".into()));
    }
    if alpha.is_empty() {
        return Err(Error::InvalidArgument(
            "Moore matrix needs at least one point".into(),
        ));
    }
    let rows = (0..k).map(|i| frobenius_row(tower, alpha, i)).collect();
    MatrixFqm::from_rows(rows)
}

/// The Moore matrix with row `h` replaced by α^{[t]}.
pub fn modified_moore_matrix(
    tower: &FieldTower,
    alpha: &[Element],
    k: usize,
    h: usize,
    t: usize,
) -> Result<MatrixFqm> {
    if h >= k {
        return Err(Error::InvalidArgument(format!(
            "replaced row h = {h} must satisfy 0 <= h <= k-1 = {}",
            k as isize - 1
        )));
    }
    let mut m = moore_matrix(tower, alpha, k)?;
    for (c, x) in frobenius_row(tower, alpha, t).into_iter().enumerate() {
        m.set(h, c, x);
    }
    Ok(m)
}

/// α^{[i]} componentwise.
pub fn frobenius_row(tower: &FieldTower, alpha: &[Element], i: usize) -> Vec<Element> {
    alpha
        .iter()
        .map(|&a| tower.frobenius(a, i as i64))
        .collect()
}

/// α_1 Π_{j=1}^{k-1} Π_{b ∈ F_q^j} (α_{j+1} − Σ_i b_i α_i), enumerating every
/// coefficient tuple.
pub fn moore_det_product(tower: &FieldTower, alpha: &[Element]) -> Result<Element> {
    let Some(&first) = alpha.first() else {
        return Err(Error::InvalidArgument(
            "Moore determinant product needs at least one point".into(),
        ));
    };
    let q = tower.q();
    let mut acc = first;
    for j in 1..alpha.len() {
        let tuples = (q as u64).pow(j as u32);
        for idx in 0..tuples {
            let mut rest = idx;
            let mut combo = Element::ZERO;
            for &a in &alpha[..j] {
                let b = Element::from_index((rest % q as u64) as u32);
                rest /= q as u64;
                combo = tower.add(combo, tower.mul(b, a));
            }
            acc = tower.mul(acc, tower.sub(alpha[j], combo));
        }
    }
    Ok(acc)
}
