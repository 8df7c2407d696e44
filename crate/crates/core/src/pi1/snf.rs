//! Invariant factors of sparse integer matrices.
//!
//! Columns are eliminated on ±1 pivots first (each such pivot contributes a
//! unit factor and removes one row and one column); whatever remains goes
//! through a dense Smith normal form over arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest dense remainder (rows × columns) accepted.
pub const DENSE_BUDGET: usize = 16_000_000;

/// Sparse column `Vec<(row, value)>`, rows strictly increasing, no zeros.
pub type Column = Vec<(u32, i64)>;

/// Nonzero invariant factors `d₁ | d₂ | …` of the matrix with the given
/// columns; their count is the rank.
pub fn invariant_factors(rows: usize, columns: Vec<Column>) -> Result<Vec<BigInt>> {
    let mut cols: Vec<BTreeMap<u32, i64>> =
        columns.into_iter().map(|c| c.into_iter().filter(|e| e.1 != 0).collect()).collect();
    let mut row_cols: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &r in c.keys() {
            row_cols[r as usize].insert(j as u32);
        }
    }
    let mut units = 0usize;
    let mut alive = vec![true; cols.len()];
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            if !alive[c] {
                continue;
            }
            if cols[c].is_empty() {
                alive[c] = false;
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| (row_cols[*e.0 as usize].len(), *e.0))
                .map(|(&r, &s)| (r, s));
            let Some((r, s)) = pivot else { continue };
            let pivot_col = std::mem::take(&mut cols[c]);
            let others: Vec<u32> = row_cols[r as usize].iter().copied().filter(|&j| j as usize != c).collect();
            for j in others {
                let a = cols[j as usize][&r];
                let factor = a.checked_mul(s).ok_or_else(overflow)?;
                let col = &mut cols[j as usize];
                for (&pr, &pv) in &pivot_col {
                    let delta = factor.checked_mul(pv).ok_or_else(overflow)?;
                    let entry = col.entry(pr).or_insert(0);
                    let before = *entry;
                    *entry = before.checked_sub(delta).ok_or_else(overflow)?;
                    if *entry == 0 {
                        col.remove(&pr);
                        row_cols[pr as usize].remove(&j);
                    } else if before == 0 {
                        row_cols[pr as usize].insert(j);
                    }
                }
            }
            for &pr in pivot_col.keys() {
                row_cols[pr as usize].remove(&(c as u32));
            }
            alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let rest: Vec<&BTreeMap<u32, i64>> = cols.iter().filter(|c| !c.is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if rest.is_empty() {
        return Ok(factors);
    }
    let used_rows: BTreeSet<u32> = rest.iter().flat_map(|c| c.keys().copied()).collect();
    let row_index: BTreeMap<u32, usize> = used_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let (m, n) = (used_rows.len(), rest.len());
    if m.saturating_mul(n) > DENSE_BUDGET {
        return Err(Error::OverflowGuard(format!("dense remainder {m}x{n}")));
    }
    let mut dense = vec![vec![BigInt::zero(); n]; m];
    for (j, c) in rest.iter().enumerate() {
        for (r, &v) in c.iter() {
            dense[row_index[r]][j] = BigInt::from(v);
        }
    }
    factors.extend(dense_smith(dense));
    factors.sort();
    Ok(factors)
}

fn overflow() -> Error {
    Error::OverflowGuard("64-bit entry overflow during sparse elimination".into())
}

/// Nonzero diagonal of the Smith normal form of a dense matrix.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut progress = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                        *x -= &q * p;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(i, t);
                        progress = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let p = row[t].clone();
                        row[j] -= &q * p;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        progress = true;
                    }
                }
            }
            if progress {
                continue;
            }
            let bad = (t + 1..m).find(|&i| a[i].iter().skip(t + 1).any(|x| !(x % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(&src).skip(t) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}
