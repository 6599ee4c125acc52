//! Dense univariate polynomials over a small field whose elements are packed
//! `u32` indices. Only used while building a tower: irreducibility tests,
//! reduction modulo the defining polynomial and log/exp table generation.
//!
//! Polynomials are little-endian coefficient vectors with no trailing zeros;
//! the zero polynomial is the empty vector.

/// Arithmetic on packed field elements `0..order`.
pub(crate) trait Scalars {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// Multiplicative inverse; `a` must be non-zero.
    fn inv(&self, a: u32) -> u32;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeField {
    pub p: u32,
}

impl Scalars for PrimeField {
    fn order(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        // Fermat: a^(p-2).
        let p = self.p as u64;
        let mut base = a as u64 % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul<F: Scalars>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by non-zero `b`.
pub(crate) fn divrem<F: Scalars>(f: &F, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        quo[shift] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

pub(crate) fn rem<F: Scalars>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    divrem(f, a, b).1
}

pub(crate) fn mulmod<F: Scalars>(f: &F, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    rem(f, &mul(f, a, b), m)
}

pub(crate) fn powmod<F: Scalars>(f: &F, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, m) != 1`.
pub(crate) fn inv_mod<F: Scalars>(f: &F, a: &[u32], m: &[u32]) -> Option<Vec<u32>> {
    // Invariant: s_i * a ≡ r_i (mod m).
    let (mut r0, mut r1) = (m.to_vec(), rem(f, a, m));
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quo, r2) = divrem(f, &r0, &r1);
        let qs = mul(f, &quo, &s1);
        let s2 = sub(f, &s0, &qs);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = f.inv(r0[0]);
    let mut out: Vec<u32> = s0.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut out);
    Some(rem(f, &out, m))
}

pub(crate) fn sub<F: Scalars>(f: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut out);
    out
}

/// Coefficients of `index` written in base `order`, `len` digits.
pub(crate) fn unpack(index: u32, order: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    let mut x = index;
    for _ in 0..len {
        out.push(x % order);
        x /= order;
    }
    out
}

pub(crate) fn pack(coeffs: &[u32], order: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * order + c)
}

/// Smallest monic factor of degree `1..=deg/2`, found by trial division over
/// all monic candidates in index order. `None` means `m` is irreducible.
pub(crate) fn find_factor<F: Scalars>(f: &F, m: &[u32]) -> Option<Vec<u32>> {
    let d = degree(m)?;
    let order = f.order();
    for fd in 1..=d / 2 {
        let count = (order as u64).pow(fd as u32);
        for low in 0..count {
            let mut cand = unpack(low as u32, order, fd);
            cand.push(1);
            if rem(f, m, &cand).is_empty() {
                return Some(cand);
            }
        }
    }
    None
}

/// Smallest monic irreducible polynomial of degree `d` in index order.
pub(crate) fn first_irreducible<F: Scalars>(f: &F, d: usize) -> Vec<u32> {
    let order = f.order();
    let count = (order as u64).pow(d as u32);
    for low in 0..count {
        let mut cand = unpack(low as u32, order, d);
        cand.push(1);
        if d == 1 || find_factor(f, &cand).is_none() {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && prime_factors(n as u64) == vec![n as u64]
}

/// Discrete log and exponential tables of `F[x]/(modulus)` for irreducible
/// `modulus`, with elements packed as base-`order` digits.
pub(crate) struct LogTables {
    pub generator: u32,
    pub log: Vec<u32>,
    pub exp: Vec<u32>,
}

pub(crate) fn build_log_tables<F: Scalars>(f: &F, modulus: &[u32]) -> LogTables {
    let d = degree(modulus).expect("non-zero modulus");
    let order = f.order();
    let size = (order as u64).pow(d as u32);
    let group = size - 1;
    let factors = prime_factors(group);
    let is_generator = |g: &[u32]| {
        factors
            .iter()
            .all(|&r| powmod(f, g, group / r, modulus) != vec![1])
    };
    // x is tried first: for primitive moduli it generates and keeps the
    // table walk a shift-and-reduce.
    let x_index = if d > 1 { order } else { 1 };
    let candidates = std::iter::once(x_index).chain(1..size as u32);
    let generator = candidates
        .into_iter()
        .find(|&g| {
            let mut gp = unpack(g, order, d);
            trim(&mut gp);
            !gp.is_empty() && is_generator(&gp)
        })
        .expect("multiplicative group of a finite field is cyclic");
    let mut gp = unpack(generator, order, d);
    trim(&mut gp);

    let mut log = vec![0u32; size as usize];
    let mut exp = vec![0u32; group as usize];
    let mut cur = vec![1u32];
    for (i, slot) in exp.iter_mut().enumerate() {
        let mut padded = cur.clone();
        padded.resize(d, 0);
        let idx = pack(&padded, order);
        *slot = idx;
        log[idx as usize] = i as u32;
        cur = mulmod(f, &cur, &gp, modulus);
    }
    LogTables {
        generator,
        log,
        exp,
    }
}
