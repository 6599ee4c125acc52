//! The base field F_q = F_p[x]/(base modulus) and dense matrices over it.

use super::poly::{self, LogTables, PrimeField, Scalars};

/// Digit-wise addition of two packed base-`p` indices.
#[inline]
pub(crate) fn digit_add(p: u32, a: u32, b: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0u32, 1u32);
    while a != 0 || b != 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

#[inline]
pub(crate) fn digit_neg(p: u32, a: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut a = a;
    let (mut out, mut place) = (0u32, 1u32);
    while a != 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place = place.wrapping_mul(p);
    }
    out
}

/// F_q with q = p^e. Element `i` packs its F_p coordinates as base-`p` digits,
/// constant term first; the prime subfield is `0..p`.
#[derive(Debug, Clone)]
pub struct BaseField {
    p: u32,
    e: usize,
    q: u32,
    modulus: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl BaseField {
    /// `modulus` must already be verified monic irreducible of degree `e`.
    pub(crate) fn new(p: u32, e: usize, modulus: Vec<u32>) -> Self {
        let LogTables { log, exp, .. } = poly::build_log_tables(&PrimeField { p }, &modulus);
        BaseField {
            p,
            e,
            q: p.pow(e as u32),
            modulus,
            log,
            exp,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        digit_add(self.p, a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        digit_neg(self.p, a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        digit_add(self.p, a, digit_neg(self.p, b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Inverse of a non-zero element.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_q");
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }
}

impl Scalars for BaseField {
    fn order(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        BaseField::add(self, a, b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        BaseField::sub(self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        BaseField::mul(self, a, b)
    }
    fn inv(&self, a: u32) -> u32 {
        BaseField::inv(self, a)
    }
}

/// Dense row-major matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FqMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &FqMatrix, fq: &BaseField) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = FqMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fq.add(out.get(i, j), fq.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], fq: &BaseField) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &x)| fq.add(acc, fq.mul(a, x)))
            })
            .collect()
    }

    /// Reduces in place to reduced row-echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self, fq: &BaseField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = fq.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = fq.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = fq.sub(self.get(i, j), fq.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, fq: &BaseField) -> usize {
        self.clone().rref(fq).len()
    }

    /// Basis of the right null space `{x : A x = 0}`, one vector per free
    /// column, returned in reduced row-echelon form.
    pub fn null_space(&self, fq: &BaseField) -> Vec<Vec<u32>> {
        let mut a = self.clone();
        let pivots = a.rref(fq);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<u32>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = fq.neg(a.get(i, f));
                }
                v
            })
            .collect();
        if basis.is_empty() {
            return basis;
        }
        let mut b = FqMatrix::from_rows(&basis);
        b.rref(fq);
        b.to_rows()
    }
}
