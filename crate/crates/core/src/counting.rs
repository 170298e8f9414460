//! Exact counts of nonattacking placements.
//!
//! Two independent counters: an exhaustive depth-first search that works for
//! any rider, and a bishop-only dynamic program that never enumerates
//! placements. The naive counter is the oracle for the fast one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::board::{attacks, Rider, Square};
use crate::error::{Error, Result};
use crate::exec::Exec;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Fast,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "fast" => Ok(Method::Fast),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Fast => "fast",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NaiveOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
    pub exec: Exec,
}

impl Default for NaiveOptions {
    fn default() -> Self {
        NaiveOptions { budget: DEFAULT_NODE_BUDGET, exec: Exec::default() }
    }
}

/// Fixed-width bitset over the `n²` squares, row-major.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    /// `self & !mask`, restricted to indices strictly above `k`.
    fn without_after(&self, mask: &Bits, k: usize) -> Bits {
        let mut out = Bits(self.0.iter().zip(&mask.0).map(|(a, m)| a & !m).collect());
        let w = k / 64;
        for word in &mut out.0[..w] {
            *word = 0;
        }
        let keep = (k % 64) + 1;
        out.0[w] &= if keep == 64 { 0 } else { !0u64 << keep };
        out
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

struct Search<'a> {
    attack: &'a [Bits],
    nodes: &'a AtomicU64,
    budget: u64,
    local: u64,
}

impl Search<'_> {
    const FLUSH: u64 = 1 << 12;

    fn tick(&mut self) -> Result<()> {
        self.local += 1;
        if self.local == Self::FLUSH {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.nodes.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// Number of ways to choose `left` more pieces from `avail`.
    fn count(&mut self, avail: &Bits, left: usize) -> Result<u128> {
        self.tick()?;
        match left {
            0 => Ok(1),
            1 => Ok(avail.count() as u128),
            _ => {
                let mut total = 0;
                for k in avail.ones() {
                    let next = avail.without_after(&self.attack[k], k);
                    total += self.count(&next, left - 1)?;
                }
                Ok(total)
            }
        }
    }
}

fn attack_masks(rider: &Rider, n: usize) -> Vec<Bits> {
    let cells = n * n;
    let sq = |k: usize| Square::new((k % n) as i64 + 1, (k / n) as i64 + 1);
    (0..cells)
        .map(|a| {
            let mut m = Bits::empty(cells);
            for b in 0..cells {
                if a != b && attacks(sq(a), sq(b), rider) {
                    m.set(b);
                }
            }
            m
        })
        .collect()
}

/// Exhaustive count of `q`-subsets of the `n × n` board that are pairwise
/// nonattacking, with the default node budget.
pub fn count_unlabelled_naive(rider: &Rider, q: usize, n: usize) -> Result<BigUint> {
    count_unlabelled_naive_with(rider, q, n, NaiveOptions::default())
}

pub fn count_unlabelled_naive_with(rider: &Rider, q: usize, n: usize, opts: NaiveOptions) -> Result<BigUint> {
    if q == 0 {
        return Ok(BigUint::one());
    }
    let cells = n * n;
    if q > cells {
        return Ok(BigUint::zero());
    }
    let attack = attack_masks(rider, n);
    let nodes = AtomicU64::new(0);
    let mut full = Bits::empty(cells);
    (0..cells).for_each(|k| full.set(k));

    // One subtree per square of the first (lowest-index) piece.
    let firsts: Vec<usize> = (0..cells).collect();
    let parts = opts.exec.try_map(firsts, |k| {
        let mut s = Search { attack: &attack, nodes: &nodes, budget: opts.budget, local: 0 };
        let avail = full.without_after(&attack[k], k);
        let c = s.count(&avail, q - 1)?;
        s.flush()?;
        Ok::<_, Error>(c)
    })?;
    if nodes.load(Ordering::Relaxed) > opts.budget {
        return Err(Error::BudgetExceeded { budget: opts.budget });
    }
    Ok(parts.into_iter().map(BigUint::from).sum())
}

/// Rook numbers `r_0, r_1, …` of a Ferrers board given by its row lengths.
fn ferrers_rook_numbers(mut rows: Vec<usize>) -> Vec<BigUint> {
    rows.sort_unstable();
    let mut r = vec![BigUint::one()];
    for len in rows {
        r.push(BigUint::zero());
        for j in (1..r.len()).rev() {
            // the j-th rook goes in this row, avoiding the j-1 columns already used
            if len >= j {
                let add = &r[j - 1] * BigUint::from(len + 1 - j);
                r[j] += add;
            }
        }
    }
    while r.len() > 1 && r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}

/// Lengths of the `x + y = s` diagonals with `s ≡ parity (mod 2)`.
///
/// Each such diagonal meets the opposite-direction diagonals of the same
/// color in an interval centred on `x − y = 0`, so the sets are nested and
/// the color class is a Ferrers board for rook placement.
fn diagonal_lengths(n: usize, parity: usize) -> Vec<usize> {
    (2..=2 * n).filter(|s| s % 2 == parity).map(|s| (s - 1).min(2 * n + 1 - s)).collect()
}

/// Number of nonattacking placements of `q` unlabelled bishops on an
/// `n × n` board, by rook-number convolution over the two color classes.
pub fn count_bishops_fast(q: usize, n: usize) -> BigUint {
    let even = ferrers_rook_numbers(diagonal_lengths(n, 0));
    let odd = ferrers_rook_numbers(diagonal_lengths(n, 1));
    (0..=q).filter(|&j| j < even.len() && q - j < odd.len()).map(|j| &even[j] * &odd[q - j]).sum()
}

/// `u(q;n)`, choosing the fast counter for the bishop.
pub fn count_unlabelled(rider: &Rider, q: usize, n: usize) -> Result<BigUint> {
    if rider.is_bishop() {
        Ok(count_bishops_fast(q, n))
    } else {
        count_unlabelled_naive(rider, q, n)
    }
}

/// `o(q;n) = q!·u(q;n)`.
pub fn count_labelled(rider: &Rider, q: usize, n: usize) -> Result<BigUint> {
    let u = count_unlabelled(rider, q, n)?;
    let fact: BigUint = (1..=q).map(BigUint::from).product();
    Ok(u * fact)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub rider: String,
    pub q: usize,
    pub method: Method,
    pub entries: BTreeMap<usize, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct CountEntryJson {
    n: usize,
    count: String,
}

#[derive(Serialize, Deserialize)]
struct CountTableJson {
    rider: String,
    q: usize,
    method: Method,
    counts: Vec<CountEntryJson>,
}

impl CountTable {
    pub fn to_json(&self) -> serde_json::Value {
        let j = CountTableJson {
            rider: self.rider.clone(),
            q: self.q,
            method: self.method,
            counts: self.entries.iter().map(|(&n, c)| CountEntryJson { n, count: c.to_string() }).collect(),
        };
        serde_json::to_value(j).expect("count table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: CountTableJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let mut entries = BTreeMap::new();
        for e in j.counts {
            let c = e
                .count
                .parse::<BigUint>()
                .map_err(|err| Error::Parse { line: 0, msg: format!("{:?}: {err}", e.count) })?;
            entries.insert(e.n, c);
        }
        Ok(CountTable { rider: j.rider, q: j.q, method: j.method, entries })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "count"]).expect("in-memory write");
        for (n, c) in &self.entries {
            w.write_record([n.to_string(), c.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

pub fn sample_counts(rider: &Rider, q: usize, n_from: usize, n_to: usize, method: Method) -> Result<CountTable> {
    sample_counts_with(rider, q, n_from, n_to, method, NaiveOptions::default())
}

pub fn sample_counts_with(
    rider: &Rider,
    q: usize,
    n_from: usize,
    n_to: usize,
    method: Method,
    opts: NaiveOptions,
) -> Result<CountTable> {
    if n_from > n_to {
        return Err(Error::InvalidArgument(format!("empty range {n_from}..{n_to}")));
    }
    if method == Method::Fast && !rider.is_bishop() {
        return Err(Error::FastMethodUnsupported(rider.name().to_string()));
    }
    let ns: Vec<usize> = (n_from..=n_to).collect();
    let counts = opts.exec.try_map(ns.clone(), |n| match method {
        Method::Fast => Ok(count_bishops_fast(q, n)),
        Method::Naive => count_unlabelled_naive_with(rider, q, n, opts),
    })?;
    Ok(CountTable { rider: rider.name().to_string(), q, method, entries: ns.into_iter().zip(counts).collect() })
}
