//! Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m}.
//!
//! An [`Element`] of F_{q^m} is a packed index: its F_q coordinates with
//! respect to the polynomial basis `1, y, ..., y^{m-1}` of
//! `F_q[y]/(top_modulus)`, written in base q, each F_q coordinate itself
//! packed in base p. Indices below q are exactly the subfield F_q, so an
//! F_q scalar and its image in F_{q^m} share one representation.
//!
//! Multiplication runs on log/exp tables generated at construction time by
//! explicit polynomial arithmetic modulo the (verified irreducible) moduli.
//! The Frobenius map x ↦ x^q is applied as a precomputed F_q-linear matrix on
//! coordinates.

mod fq;
mod poly;

pub use fq::{BaseField, FqMatrix};

use crate::error::{Error, Result};
use poly::PrimeField;

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    /// Wraps a packed index. Indices at or above the field order make tower
    /// operations panic; use [`FieldTower::element`] for a checked version.
    pub const fn from_index(index: u32) -> Self {
        Element(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters of F_p ⊂ F_q ⊂ F_{q^m}. Moduli are little-endian and monic;
/// `top_modulus` coefficients are packed F_q elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerParams {
    pub p: u32,
    pub e: usize,
    pub m: usize,
    pub base_modulus: Vec<u32>,
    pub top_modulus: Vec<u32>,
}

impl TowerParams {
    /// Parameters with the smallest monic irreducible moduli (in packed
    /// index order) for the given degrees.
    pub fn with_default_moduli(p: u32, e: usize, m: usize) -> Result<Self> {
        check_shape(p, e, m)?;
        let base_modulus = if e == 1 {
            vec![0, 1]
        } else {
            poly::first_irreducible(&PrimeField { p }, e)
        };
        let base = BaseField::new(p, e, base_modulus.clone());
        let top_modulus = poly::first_irreducible(&base, m);
        Ok(TowerParams {
            p,
            e,
            m,
            base_modulus,
            top_modulus,
        })
    }

    /// Prime base field (`e = 1`) with the given top modulus.
    pub fn binary_like(p: u32, m: usize, top_modulus: Vec<u32>) -> Self {
        TowerParams {
            p,
            e: 1,
            m,
            base_modulus: vec![0, 1],
            top_modulus,
        }
    }
}

fn check_shape(p: u32, e: usize, m: usize) -> Result<()> {
    if !poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "extension degrees e and m must be at least 1".into(),
        ));
    }
    let order = (p as u128).checked_pow((e * m) as u32);
    match order {
        Some(o) if o <= MAX_ORDER as u128 => Ok(()),
        Some(o) => Err(Error::FieldTooLarge(o.min(u64::MAX as u128) as u64)),
        None => Err(Error::FieldTooLarge(u64::MAX)),
    }
}

fn check_modulus(which: &'static str, modulus: &[u32], degree: usize, order: u32) -> Result<()> {
    if let Some(&value) = modulus.iter().find(|&&c| c >= order) {
        return Err(Error::CoefficientRange { value, order });
    }
    let got = poly::degree(modulus).unwrap_or(0);
    if got != degree || modulus.len() != degree + 1 {
        return Err(Error::ModulusDegree {
            which,
            expected: degree,
            got,
        });
    }
    if modulus[degree] != 1 {
        return Err(Error::NotMonic { which });
    }
    Ok(())
}

/// σ and its powers as m×m matrices over F_q acting on coordinate columns.
#[derive(Debug, Clone)]
pub struct FrobeniusTable {
    pub sigma_matrix: FqMatrix,
    /// `powers[i]` realizes σ^i for `0 <= i < m`.
    pub powers: Vec<FqMatrix>,
}

/// An immutable, thread-safe finite field tower.
#[derive(Debug, Clone)]
pub struct FieldTower {
    params: TowerParams,
    base: BaseField,
    q: u32,
    order: u32,
    q_pows: Vec<u32>,
    generator: Element,
    log: Vec<u32>,
    exp: Vec<u32>,
    frobenius: FrobeniusTable,
}

impl FieldTower {
    pub fn new(params: TowerParams) -> Result<Self> {
        let TowerParams { p, e, m, .. } = params;
        check_shape(p, e, m)?;
        check_modulus("base_modulus", &params.base_modulus, e, p)?;
        let prime = PrimeField { p };
        if e > 1 {
            if let Some(factor) = poly::find_factor(&prime, &params.base_modulus) {
                return Err(Error::Reducible {
                    which: "base_modulus",
                    modulus: params.base_modulus.clone(),
                    factor,
                });
            }
        }
        let base = BaseField::new(p, e, params.base_modulus.clone());
        let q = base.q();
        check_modulus("top_modulus", &params.top_modulus, m, q)?;
        if let Some(factor) = poly::find_factor(&base, &params.top_modulus) {
            return Err(Error::Reducible {
                which: "top_modulus",
                modulus: params.top_modulus.clone(),
                factor,
            });
        }

        let tables = poly::build_log_tables(&base, &params.top_modulus);
        let order = q.pow(m as u32);
        let q_pows = (0..m).map(|i| q.pow(i as u32)).collect();
        let mut tower = FieldTower {
            params,
            base,
            q,
            order,
            q_pows,
            generator: Element(tables.generator),
            log: tables.log,
            exp: tables.exp,
            frobenius: FrobeniusTable {
                sigma_matrix: FqMatrix::identity(m),
                powers: Vec::new(),
            },
        };
        tower.frobenius = tower.build_frobenius();
        Ok(tower)
    }

    /// Tower with default moduli for `(p, e, m)`.
    pub fn with_defaults(p: u32, e: usize, m: usize) -> Result<Self> {
        Self::new(TowerParams::with_default_moduli(p, e, m)?)
    }

    fn build_frobenius(&self) -> FrobeniusTable {
        let m = self.m();
        // Column j holds the coordinates of σ(y^j) = (y^j)^q.
        let mut sigma = FqMatrix::zeros(m, m);
        for j in 0..m {
            let image = self.pow(Element(self.q_pows[j]), self.q as u64);
            for (i, c) in self.coords(image).into_iter().enumerate() {
                sigma.set(i, j, c);
            }
        }
        let mut powers = Vec::with_capacity(m);
        let mut cur = FqMatrix::identity(m);
        for _ in 0..m {
            powers.push(cur.clone());
            cur = sigma.mul(&cur, &self.base);
        }
        FrobeniusTable {
            sigma_matrix: sigma,
            powers,
        }
    }

    pub fn params(&self) -> &TowerParams {
        &self.params
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn frobenius_table(&self) -> &FrobeniusTable {
        &self.frobenius
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn e(&self) -> usize {
        self.params.e
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// q^m, the number of elements of the top field.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// A primitive element (generator of the multiplicative group).
    pub fn generator(&self) -> Element {
        self.generator
    }

    /// The element `y` of the polynomial basis (a root of the top modulus).
    pub fn root(&self) -> Element {
        if self.m() > 1 {
            Element(self.q)
        } else {
            // F_{q^1} = F_q: the root of a monic linear modulus y + a is -a.
            Element(self.base.neg(self.params.top_modulus[0]))
        }
    }

    pub fn element(&self, index: u32) -> Result<Element> {
        if index < self.order {
            Ok(Element(index))
        } else {
            Err(Error::CoefficientRange {
                value: index,
                order: self.order,
            })
        }
    }

    /// Embeds an F_q element.
    pub fn from_base(&self, c: u32) -> Result<Element> {
        if c < self.q {
            Ok(Element(c))
        } else {
            Err(Error::CoefficientRange {
                value: c,
                order: self.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Element> + '_ {
        (1..self.order).map(Element)
    }

    /// F_q coordinates, constant first.
    pub fn coords(&self, x: Element) -> Vec<u32> {
        let mut v = x.0;
        (0..self.m())
            .map(|_| {
                let c = v % self.q;
                v /= self.q;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Element> {
        if coords.len() != self.m() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.m(),
                coords.len()
            )));
        }
        if let Some(&value) = coords.iter().find(|&&c| c >= self.q) {
            return Err(Error::CoefficientRange {
                value,
                order: self.q,
            });
        }
        Ok(Element(poly::pack(coords, self.q)))
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        Element(fq::digit_add(self.params.p, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        Element(fq::digit_neg(self.params.p, a.0))
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.0 == 0 || b.0 == 0 {
            return Element::ZERO;
        }
        let n = self.order - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Element(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Element(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Inverse computed by the extended Euclidean algorithm on the
    /// representing polynomial, independent of the log tables.
    pub fn inv_euclid(&self, a: Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ap = self.coords(a);
        poly::trim(&mut ap);
        let mut inv = poly::inv_mod(&self.base, &ap, &self.params.top_modulus)
            .ok_or(Error::DivisionByZero)?;
        inv.resize(self.m(), 0);
        Ok(Element(poly::pack(&inv, self.q)))
    }

    /// Product computed by polynomial multiplication modulo the top modulus,
    /// independent of the log tables.
    pub fn mul_poly(&self, a: Element, b: Element) -> Element {
        let mut ap = self.coords(a);
        let mut bp = self.coords(b);
        poly::trim(&mut ap);
        poly::trim(&mut bp);
        let mut r = poly::mulmod(&self.base, &ap, &bp, &self.params.top_modulus);
        r.resize(self.m(), 0);
        Element(poly::pack(&r, self.q))
    }

    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return Element::ONE;
        }
        if a.is_zero() {
            return Element::ZERO;
        }
        let n = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Element(self.exp[((l * (e % n)) % n) as usize])
    }

    /// σ^i(x) = x^{q^i}; `i` is reduced modulo m.
    pub fn frobenius(&self, x: Element, i: i64) -> Element {
        let r = i.rem_euclid(self.m() as i64) as usize;
        if r == 0 || x.0 < self.q {
            return x;
        }
        let image = self.frobenius.powers[r].mul_vec(&self.coords(x), &self.base);
        Element(poly::pack(&image, self.q))
    }

    /// Field norm to F_q as the product of the m conjugates.
    pub fn norm(&self, x: Element) -> Element {
        let n =
            (0..self.m() as i64).fold(Element::ONE, |acc, i| self.mul(acc, self.frobenius(x, i)));
        debug_assert!(n.0 < self.q, "norm left F_q");
        n
    }

    /// (-1)^k as an element of F_q.
    pub fn minus_one_pow(&self, k: usize) -> Element {
        if k.is_multiple_of(2) {
            Element::ONE
        } else {
            self.neg(Element::ONE)
        }
    }

    /// Whether `x` lies in the subfield F_{q^s}; `s` must divide m.
    pub fn in_subfield(&self, x: Element, s: usize) -> Result<bool> {
        if s == 0 || !self.m().is_multiple_of(s) {
            return Err(Error::NotSubfield { s, m: self.m() });
        }
        Ok(self.frobenius(x, s as i64) == x)
    }

    /// All elements of F_{q^s} in index order.
    pub fn subfield_elements(&self, s: usize) -> Result<Vec<Element>> {
        if s == 0 || !self.m().is_multiple_of(s) {
            return Err(Error::NotSubfield { s, m: self.m() });
        }
        Ok(self
            .elements()
            .filter(|&x| self.frobenius(x, s as i64) == x)
            .collect())
    }

    /// Rank over F_q of the components of `v`, i.e. the rank weight.
    pub fn fq_rank(&self, v: &[Element]) -> usize {
        if self.q == 2 {
            return binary_rank(v.iter().map(|x| x.0));
        }
        let rows: Vec<Vec<u32>> = v.iter().map(|&x| self.coords(x)).collect();
        if rows.is_empty() {
            return 0;
        }
        FqMatrix::from_rows(&rows).rank(&self.base)
    }

    pub fn hamming_weight(&self, v: &[Element]) -> usize {
        v.iter().filter(|x| !x.is_zero()).count()
    }

    /// Σ c_i x_i for F_q scalars `c_i`.
    pub fn fq_combination(&self, coeffs: &[u32], xs: &[Element]) -> Element {
        coeffs.iter().zip(xs).fold(Element::ZERO, |acc, (&c, &x)| {
            self.add(acc, self.mul(Element(c), x))
        })
    }
}

/// Rank of a set of bit vectors over F_2.
fn binary_rank(vs: impl Iterator<Item = u32>) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for mut x in vs {
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}
