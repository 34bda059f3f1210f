//! Exact distances by kernel enumeration, and information-set upper bounds.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{CssCode, Distance};
use crate::error::{Error, Result};
use crate::f2la::{lex_cmp_words, BitMatrix, BitVec, RowReducer};

/// Default cap on the kernel dimension for exact enumeration.
pub const KERNEL_DIM_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Z,
}

impl Side {
    /// `(opposite, same)`: logicals lie in ker(opposite) outside rowspace(same).
    fn matrices(self, c: &CssCode) -> (&BitMatrix, &BitMatrix) {
        match self {
            Side::X => (c.hz(), c.hx()),
            Side::Z => (c.hx(), c.hz()),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Side::X),
            "Z" | "z" => Ok(Side::Z),
            _ => Err(Error::parse("side", format!("expected X or Z, got {s}"))),
        }
    }
}

/// A distance with its certifying logical operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub side: Side,
    pub value: usize,
    pub exact: bool,
    #[serde(with = "bitstring")]
    pub witness: BitVec,
    pub trials_used: u64,
    pub seed: Option<u64>,
}

impl DistanceReport {
    pub fn distance(&self) -> Distance {
        Distance {
            value: self.value,
            exact: self.exact,
        }
    }
}

mod bitstring {
    use super::BitVec;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BitVec, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BitVec, D::Error> {
        let s = String::deserialize(d)?;
        if s.chars().any(|c| c != '0' && c != '1') {
            return Err(serde::de::Error::custom("witness must be a 0/1 string"));
        }
        Ok(BitVec::parse(&s))
    }
}

pub fn is_nontrivial_logical(c: &CssCode, v: &BitVec, side: Side) -> Result<bool> {
    let (opposite, same) = side.matrices(c);
    if v.len() != c.n() {
        return Err(Error::LengthMismatch {
            expected: c.n(),
            found: v.len(),
        });
    }
    Ok(opposite.mul_vec(v)?.is_zero() && !same.rowspace_contains(v)?)
}

fn zero_report(c: &CssCode, side: Side, exact: bool, trials: u64, seed: Option<u64>) -> DistanceReport {
    DistanceReport {
        side,
        value: 0,
        exact,
        witness: BitVec::zeros(c.n()),
        trials_used: trials,
        seed,
    }
}

fn is_nonzero_mod(reducer: &RowReducer, words: &[u64]) -> bool {
    let mut w = words.to_vec();
    reducer.reduce_words(&mut w);
    w.iter().any(|&x| x != 0)
}

/// Gray-code walk over the kernel of the opposite matrix.
pub fn distance_exact(c: &CssCode, side: Side, kernel_dim_cap: usize) -> Result<DistanceReport> {
    if c.k() == 0 {
        return Ok(zero_report(c, side, true, 0, None));
    }
    let (opposite, same) = side.matrices(c);
    let kernel = opposite.kernel_basis();
    let dim = kernel.rows();
    if dim > kernel_dim_cap {
        return Err(Error::KernelCap {
            dim,
            cap: kernel_dim_cap,
        });
    }
    let reducer = RowReducer::new(same);
    let words = kernel.row_words(0).len();
    let mut v = vec![0u64; words];
    let mut best: Option<(usize, Vec<u64>)> = None;
    for i in 1u64..(1u64 << dim) {
        let bit = i.trailing_zeros() as usize;
        for (a, b) in v.iter_mut().zip(kernel.row_words(bit)) {
            *a ^= b;
        }
        let w: usize = v.iter().map(|x| x.count_ones() as usize).sum();
        let better = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && lex_cmp_words(&v, bv) == CmpOrdering::Less),
        };
        if better && is_nonzero_mod(&reducer, &v) {
            best = Some((w, v.clone()));
        }
    }
    let (value, witness) = best.expect("k > 0 gives a nontrivial logical");
    Ok(DistanceReport {
        side,
        value,
        exact: true,
        witness: BitVec::from_words(c.n(), &witness),
        trials_used: 0,
        seed: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct UpperOptions {
    pub trials: u64,
    pub seed: u64,
    /// Largest number of echelon rows combined per candidate (1 to 3).
    pub depth: usize,
}

impl Default for UpperOptions {
    fn default() -> Self {
        UpperOptions {
            trials: 1000,
            seed: 0,
            depth: 2,
        }
    }
}

/// Smallest nontrivial logical seen over `opts.trials` information sets.
pub fn distance_upper(c: &CssCode, side: Side, opts: UpperOptions) -> Result<DistanceReport> {
    if opts.trials == 0 || !(1..=3).contains(&opts.depth) {
        return Err(Error::parse("estimator options", "need trials >= 1 and depth in 1..=3"));
    }
    if c.k() == 0 {
        return Ok(zero_report(c, side, true, opts.trials, Some(opts.seed)));
    }
    let (opposite, same) = side.matrices(c);
    let kernel = opposite.kernel_basis();
    let reducer = RowReducer::new(same);
    let n = c.n();
    let rows: Vec<Vec<u64>> = (0..kernel.rows()).map(|r| kernel.row_words(r).to_vec()).collect();
    let bound = AtomicUsize::new(usize::MAX);
    let best = (0..opts.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(trial);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let echelon = echelon_in_order(rows.clone(), &perm);
            best_in_trial(&echelon, &reducer, opts.depth, &bound)
        })
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| lex_cmp_words(&a.1, &b.1)));
    let (value, witness) = best.expect("every trial sees a full kernel basis, so some logical is nontrivial");
    Ok(DistanceReport {
        side,
        value,
        exact: false,
        witness: BitVec::from_words(n, &witness),
        trials_used: opts.trials,
        seed: Some(opts.seed),
    })
}

/// Reduced echelon form with pivots taken in the order `cols`.
fn echelon_in_order(mut rows: Vec<Vec<u64>>, cols: &[usize]) -> Vec<Vec<u64>> {
    let mut rank = 0;
    for &c in cols {
        if rank == rows.len() {
            break;
        }
        let (w, b) = (c / 64, c % 64);
        let Some(p) = (rank..rows.len()).find(|&r| (rows[r][w] >> b) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot, tail) = tail.split_first_mut().expect("rank < rows");
        for r in head.iter_mut().chain(tail.iter_mut()) {
            if (r[w] >> b) & 1 == 1 {
                for (x, y) in r.iter_mut().zip(pivot.iter()) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn weight(words: &[u64]) -> usize {
    words.iter().map(|x| x.count_ones() as usize).sum()
}

fn best_in_trial(
    rows: &[Vec<u64>],
    reducer: &RowReducer,
    depth: usize,
    bound: &AtomicUsize,
) -> Option<(usize, Vec<u64>)> {
    let mut best: Option<(usize, Vec<u64>)> = None;
    let mut consider = |v: &[u64]| {
        let w = weight(v);
        if w == 0 || w > bound.load(Ordering::Relaxed) {
            return;
        }
        let better = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && lex_cmp_words(v, bv) == CmpOrdering::Less),
        };
        if better && is_nonzero_mod(reducer, v) {
            bound.fetch_min(w, Ordering::Relaxed);
            best = Some((w, v.to_vec()));
        }
    };
    let words = rows.first().map_or(0, Vec::len);
    let mut sum = vec![0u64; words];
    let mut sum3 = vec![0u64; words];
    for (i, a) in rows.iter().enumerate() {
        consider(a);
        if depth < 2 {
            continue;
        }
        for (j, b) in rows.iter().enumerate().skip(i + 1) {
            for ((s, x), y) in sum.iter_mut().zip(a).zip(b) {
                *s = x ^ y;
            }
            consider(&sum);
            if depth < 3 {
                continue;
            }
            for cc in &rows[j + 1..] {
                for ((t, s), z) in sum3.iter_mut().zip(&sum).zip(cc) {
                    *t = s ^ z;
                }
                consider(&sum3);
            }
        }
    }
    best
}

/// Exact distances when the kernels are small enough, estimates otherwise.
pub fn code_distances(c: &CssCode, cap: usize, opts: UpperOptions) -> Result<(DistanceReport, DistanceReport)> {
    let one = |side| match distance_exact(c, side, cap) {
        Err(Error::KernelCap { .. }) => distance_upper(c, side, opts),
        other => other,
    };
    Ok((one(Side::X)?, one(Side::Z)?))
}
