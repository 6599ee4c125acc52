//! Canonical representatives of k-dimensional subspaces of F_q^n and
//! lexicographic k-subsets of index sets.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::tower::{BaseField, FqMatrix};

/// A full-rank k×n matrix over F_q in reduced row-echelon form: the unique
/// representative of its row space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceRep {
    pub pivots: Vec<usize>,
    pub matrix: FqMatrix,
}

/// The Gaussian binomial [n choose k]_q, saturating.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(crate::budget::pow_sat(q, n - i).saturating_sub(1));
        den = den.saturating_mul(crate::budget::pow_sat(q, i + 1) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Rightmost position that can still advance.
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every RREF representative of V_q(k, n), pivot sets in lexicographic
/// order and free entries in increasing packed order within each.
pub fn enumerate_subspaces(
    fq: &BaseField,
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<Vec<SubspaceRep>> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {k} must lie in 1..={n}"
        )));
    }
    let q = fq.q() as u64;
    let expected = gaussian_binomial(n, k, q);
    budget.check_subspaces(expected)?;
    let mut out = Vec::with_capacity(expected as usize);
    for pivots in k_subsets(n, k) {
        // Free slots: row r, column c > pivot_r that is not itself a pivot.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let fillings = q.pow(free.len() as u32);
        for idx in 0..fillings {
            let mut m = FqMatrix::zeros(k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, 1);
            }
            let mut rest = idx;
            // Last free slot varies fastest.
            for &(r, c) in free.iter().rev() {
                m.set(r, c, (rest % q) as u32);
                rest /= q;
            }
            out.push(SubspaceRep {
                pivots: pivots.clone(),
                matrix: m,
            });
        }
    }
    if out.len() as u128 != expected {
        return Err(Error::inconsistency(
            "subspace enumeration",
            format!(
                "generated {} representatives, expected {expected}",
                out.len()
            ),
        ));
    }
    Ok(out)
}
