//! Quasipolynomials with exact rational coefficients, and their recovery
//! from sampled counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::board::Rider;
use crate::counting::{sample_counts_with, Method, NaiveOptions};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{solve, Solution};
use crate::rational::{self, Rational};

/// One polynomial per residue class of `n mod period`. Each constituent
/// holds `degree + 1` coefficients, leading coefficient first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    period: u64,
    degree: usize,
    constituents: Vec<Vec<Rational>>,
}

impl Quasipolynomial {
    pub fn new(constituents: Vec<Vec<Rational>>) -> Result<Self> {
        let period = constituents.len() as u64;
        let len = constituents.first().map(Vec::len).unwrap_or(0);
        if period == 0 || len == 0 || constituents.iter().any(|c| c.len() != len) {
            return Err(Error::InvalidArgument("need at least one constituent, all of the same nonzero length".into()));
        }
        Ok(Quasipolynomial { period, degree: len - 1, constituents })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constituents(&self) -> &[Vec<Rational>] {
        &self.constituents
    }

    fn residue(&self, n: i64) -> usize {
        n.rem_euclid(self.period as i64) as usize
    }

    /// Value at `n`, using the constituent of the least nonnegative residue.
    pub fn evaluate(&self, n: i64) -> Rational {
        let x = Rational::from_integer(BigInt::from(n));
        self.constituents[self.residue(n)].iter().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// `γ_i` of constituent `r`, the coefficient of `n^(degree − i)`.
    pub fn coefficient(&self, i: usize, r: u64) -> Result<Rational> {
        if i > self.degree || r >= self.period {
            return Err(Error::IndexOutOfRange(format!(
                "coefficient({i}, {r}) with degree {} and period {}",
                self.degree, self.period
            )));
        }
        Ok(self.constituents[r as usize][i].clone())
    }

    fn repeats_with(&self, p: u64) -> bool {
        (0..self.period as usize).all(|r| self.constituents[r] == self.constituents[r % p as usize])
    }

    /// The same function with the smallest period dividing the current one.
    pub fn minimize_period(&self) -> Quasipolynomial {
        let p = (1..=self.period)
            .find(|d| self.period.is_multiple_of(*d) && self.repeats_with(*d))
            .expect("the full period always repeats");
        Quasipolynomial { period: p, degree: self.degree, constituents: self.constituents[..p as usize].to_vec() }
    }

    /// Smallest period of each individual coefficient `γ_i` across residues.
    pub fn coefficient_periods(&self) -> Vec<u64> {
        (0..=self.degree)
            .map(|i| {
                (1..=self.period)
                    .find(|&d| {
                        self.period.is_multiple_of(d)
                            && (0..self.period as usize)
                                .all(|r| self.constituents[r][i] == self.constituents[r % d as usize][i])
                    })
                    .expect("full period repeats")
            })
            .collect()
    }

    pub fn verify_against(&self, samples: &BTreeMap<i64, BigInt>) -> bool {
        samples.iter().all(|(&n, v)| self.evaluate(n) == Rational::from_integer(v.clone()))
    }

    pub fn scale(&self, factor: &Rational) -> Quasipolynomial {
        Quasipolynomial {
            period: self.period,
            degree: self.degree,
            constituents: self.constituents.iter().map(|c| c.iter().map(|v| v * factor).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = QuasipolynomialJson {
            period: self.period,
            degree: self.degree,
            constituents: self.constituents.iter().map(|c| c.iter().map(rational::to_string).collect()).collect(),
        };
        serde_json::to_value(j).expect("serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: QuasipolynomialJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let constituents = j
            .constituents
            .iter()
            .map(|c| c.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let q = Quasipolynomial::new(constituents)?;
        if q.period != j.period || q.degree != j.degree {
            return Err(Error::Parse { line: 0, msg: "period/degree disagree with the constituent table".into() });
        }
        Ok(q)
    }
}

#[derive(Serialize, Deserialize)]
struct QuasipolynomialJson {
    period: u64,
    degree: usize,
    constituents: Vec<Vec<String>>,
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Rational]) -> fmt::Result {
    let d = coeffs.len() - 1;
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let pow = d - i;
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let a = c.abs();
        let mag = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
        match pow {
            0 => f.write_str(&mag)?,
            _ => {
                if !a.is_one() {
                    write!(f, "{mag} ")?;
                }
                if pow == 1 {
                    f.write_str("n")?;
                } else {
                    write!(f, "n^{pow}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, c) in self.constituents.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "n ≡ {r} (mod {}): ", self.period)?;
            fmt_poly(f, c)?;
        }
        Ok(())
    }
}

/// Recovers the quasipolynomial of the given degree and period through all
/// samples, solving each residue class exactly. With `leading` supplied,
/// `degree` samples per class suffice instead of `degree + 1`.
pub fn interpolate(
    samples: &BTreeMap<i64, BigInt>,
    degree: usize,
    period: u64,
    leading: Option<&Rational>,
) -> Result<Quasipolynomial> {
    interpolate_with(samples, degree, period, leading, Exec::default())
}

pub fn interpolate_with(
    samples: &BTreeMap<i64, BigInt>,
    degree: usize,
    period: u64,
    leading: Option<&Rational>,
    exec: Exec,
) -> Result<Quasipolynomial> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    if let Some((&n, _)) = samples.iter().find(|(&n, _)| n <= 0) {
        return Err(Error::InvalidArgument(format!("sample key {n} is not positive")));
    }
    let need = if leading.is_some() { degree } else { degree + 1 };
    let classes: Vec<u64> = (0..period).collect();
    let constituents = exec.try_map(classes, |r| {
        let pts: Vec<(Rational, Rational)> = samples
            .iter()
            .filter(|(&n, _)| n.rem_euclid(period as i64) as u64 == r)
            .map(|(&n, v)| (Rational::from_integer(n.into()), Rational::from_integer(v.clone())))
            .collect();
        if pts.len() < need {
            return Err(Error::InsufficientSamples { residue: r, period, have: pts.len(), need });
        }
        let powers = |x: &Rational| -> Vec<Rational> {
            let mut p = vec![Rational::one(); degree + 1];
            for k in (0..degree).rev() {
                p[k] = &p[k + 1] * x;
            }
            p
        };
        let mut rows = Vec::with_capacity(pts.len());
        let mut rhs = Vec::with_capacity(pts.len());
        for (x, v) in &pts {
            let p = powers(x);
            match leading {
                Some(l) => {
                    rhs.push(v - l * &p[0]);
                    rows.push(p[1..].to_vec());
                }
                None => {
                    rhs.push(v.clone());
                    rows.push(p);
                }
            }
        }
        let coeffs = if need == 0 {
            // only the leading coefficient is unknown-free; check consistency
            if rhs.iter().any(|v| !v.is_zero()) {
                return Err(Error::InconsistentSamples { degree, period, residue: r });
            }
            Vec::new()
        } else {
            match solve(&rows, &rhs) {
                Solution::Unique(x) => x,
                Solution::Inconsistent => return Err(Error::InconsistentSamples { degree, period, residue: r }),
                Solution::Underdetermined => unreachable!("distinct nodes give a full-rank Vandermonde system"),
            }
        };
        Ok(match leading {
            Some(l) => std::iter::once(l.clone()).chain(coeffs).collect(),
            None => coeffs,
        })
    })?;
    Quasipolynomial::new(constituents)
}

pub fn samples_from_counts<'a>(
    counts: impl IntoIterator<Item = (&'a usize, &'a num_bigint::BigUint)>,
) -> BTreeMap<i64, BigInt> {
    counts.into_iter().map(|(&n, c)| (n as i64, BigInt::from(c.clone()))).collect()
}

/// Result of fitting a rider's counting quasipolynomial for fixed `q`.
#[derive(Clone, Debug)]
pub struct Fit {
    pub q: usize,
    /// As interpolated under the period hypothesis.
    pub fitted: Quasipolynomial,
    pub minimized: Quasipolynomial,
    pub holdout: BTreeMap<i64, BigInt>,
    pub holdout_ok: bool,
}

/// Samples `u(q;n)` for `n = 1..=2q·period`, interpolates with degree `2q`
/// and leading coefficient `1/q!`, then checks the result against the next
/// four board sizes. The bishop uses the fast counter, other riders the
/// naive one.
pub fn fit_rider(rider: &Rider, q: usize, period: u64, opts: NaiveOptions) -> Result<Fit> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let last = 2 * q * period as usize;
    let method = if rider.is_bishop() { Method::Fast } else { Method::Naive };
    let table = sample_counts_with(rider, q, 1, last + 4, method, opts)?;
    let all = samples_from_counts(&table.entries);
    let (training, holdout): (BTreeMap<i64, BigInt>, BTreeMap<i64, BigInt>) =
        all.into_iter().partition(|(n, _)| *n <= last as i64);
    let leading = rational::factorial_recip(q);
    let fitted = interpolate_with(&training, 2 * q, period, Some(&leading), opts.exec)?;
    let minimized = fitted.minimize_period();
    let holdout_ok = minimized.verify_against(&holdout);
    Ok(Fit { q, fitted, minimized, holdout, holdout_ok })
}

/// Fits `u(q;n)` for `q` bishops from `n = 1..=4q` under the period-2
/// hypothesis, holding out `n = 4q+1..=4q+4`.
pub fn fit_bishops(q: usize, exec: Exec) -> Result<Fit> {
    fit_rider(&Rider::bishop(), q, 2, NaiveOptions { exec, ..NaiveOptions::default() })
}
