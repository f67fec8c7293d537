//! Intersection numbers of psi classes on moduli of curves.
//!
//! [`TauEngine::tau`] computes the correlators by the DVV form of the
//! Virasoro constraints: writing the largest index as `k + 1`,
//!
//! ```text
//! (2k+3)!! <tau_{k+1} prod_j tau_{d_j}>_g =
//!     sum_j ((2 d_j + 2k + 1)!! / (2 d_j - 1)!!) <tau_{d_j + k} prod_{i != j} tau_{d_i}>_g
//!   + 1/2 sum_{a+b = k-1} (2a+1)!! (2b+1)!! ( <tau_a tau_b prod_j tau_{d_j}>_{g-1}
//!       + sum over splittings <tau_a ...>_{g'} <tau_b ...>_{g''} )
//! ```
//!
//! with `<tau_0^3>_0 = 1` and the central value `<tau_1>_1 = 1/24` (the `L_0`
//! anomaly) as base cases. The string and dilaton equations are deliberately
//! not used for computation; the test suite applies them as independent
//! identity checks on every cached value.

use crate::comb::{double_factorial, factorial};
use crate::error::{Error, Result};
use crate::rational::{int, pow, rat, Rational};
use num::bigint::BigInt;
use num::{One, Zero};
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Mutex;

/// A correlator key: genus plus the sorted multiset of indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauKey {
    pub g: u32,
    pub d: Vec<u32>,
}

impl TauKey {
    pub fn new(g: u32, mut d: Vec<u32>) -> Self {
        d.sort_unstable();
        TauKey { g, d }
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }
}

/// Default complexity guards; CLI flags can lift them.
pub const DEFAULT_MAX_GENUS: u32 = 30;
pub const DEFAULT_MAX_INSERTIONS: usize = 12;

pub struct TauEngine {
    memo: Mutex<HashMap<TauKey, Rational>>,
    pub max_genus: u32,
    pub max_insertions: usize,
}

impl Default for TauEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl TauEngine {
    pub fn new() -> Self {
        TauEngine {
            memo: Mutex::new(HashMap::new()),
            max_genus: DEFAULT_MAX_GENUS,
            max_insertions: DEFAULT_MAX_INSERTIONS,
        }
    }

    pub fn with_guards(max_genus: u32, max_insertions: usize) -> Self {
        TauEngine {
            memo: Mutex::new(HashMap::new()),
            max_genus,
            max_insertions,
        }
    }

    /// `<tau_{d_1} ... tau_{d_n}>_g`, exactly.
    ///
    /// Returns zero when the dimension constraint `sum d_i = 3g - 3 + n`
    /// fails; errors on unstable `(g, n)` or when a guard trips.
    pub fn tau(&self, g: u32, d: &[u32]) -> Result<Rational> {
        if d.is_empty() || 2 * (g as i64) - 2 + d.len() as i64 <= 0 {
            return Err(Error::Unstable {
                g,
                n: d.len() as u32,
            });
        }
        if g > self.max_genus || d.len() > self.max_insertions {
            return Err(Error::Guard(format!(
                "tau with g = {g}, n = {} exceeds guards (g <= {}, n <= {})",
                d.len(),
                self.max_genus,
                self.max_insertions
            )));
        }
        Ok(self.value(&TauKey::new(g, d.to_vec())))
    }

    /// Internal evaluation: unstable or dimension-violating keys are zero.
    fn value(&self, key: &TauKey) -> Rational {
        let g = key.g as i64;
        let n = key.n() as i64;
        if n == 0 || 2 * g - 2 + n <= 0 {
            return Rational::zero();
        }
        let dim = 3 * g - 3 + n;
        let total: i64 = key.d.iter().map(|&x| x as i64).sum();
        if total != dim {
            return Rational::zero();
        }
        if let Some(v) = self.memo.lock().unwrap().get(key) {
            return v.clone();
        }
        let v = self.compute(key);
        self.memo.lock().unwrap().insert(key.clone(), v.clone());
        v
    }

    fn compute(&self, key: &TauKey) -> Rational {
        // Base cases: the L_{-1} and L_0 anomalies.
        if key.g == 0 && key.d == [0, 0, 0] {
            return Rational::one();
        }
        if key.g == 1 && key.d == [1] {
            return rat(1, 24);
        }

        let g = key.g;
        // Largest index is k + 1 (>= 1 here: the all-zero case with matching
        // dimension is exactly <tau_0^3>_0, handled above).
        let kp1 = *key.d.last().unwrap();
        debug_assert!(kp1 >= 1);
        let k = kp1 - 1;
        let rest: Vec<u32> = key.d[..key.d.len() - 1].to_vec();

        let mut acc = Rational::zero();

        // Pairing with each remaining insertion.
        let groups = group_multiset(&rest);
        for &(value, count) in &groups {
            let coeff = Rational::new(
                double_factorial(2 * value as i64 + 2 * k as i64 + 1).unwrap(),
                double_factorial(2 * value as i64 - 1).unwrap(),
            ) * int(count as i64);
            let mut d2: Vec<u32> = Vec::with_capacity(rest.len());
            let mut replaced = false;
            for &x in &rest {
                if x == value && !replaced {
                    d2.push(value + k);
                    replaced = true;
                } else {
                    d2.push(x);
                }
            }
            acc += coeff * self.value(&TauKey::new(g, d2));
        }

        // Boundary terms: a + b = k - 1.
        if k >= 1 {
            let mut boundary = Rational::zero();
            for a in 0..k {
                let b = k - 1 - a;
                let w = Rational::from_integer(
                    double_factorial(2 * a as i64 + 1).unwrap()
                        * double_factorial(2 * b as i64 + 1).unwrap(),
                );

                // Non-separating: genus drops by one.
                if g >= 1 {
                    let mut d2 = rest.clone();
                    d2.push(a);
                    d2.push(b);
                    boundary += &w * self.value(&TauKey::new(g - 1, d2));
                }

                // Separating: split the genus and the remaining insertions.
                let mut split_sum = Rational::zero();
                for (sub, mult) in sub_multisets(&groups) {
                    let complement = multiset_difference(&rest, &sub);
                    for g1 in 0..=g {
                        let g2 = g - g1;
                        let mut left = sub.clone();
                        left.push(a);
                        let mut right = complement.clone();
                        right.push(b);
                        let t1 = self.value(&TauKey::new(g1, left));
                        if t1.is_zero() {
                            continue;
                        }
                        let t2 = self.value(&TauKey::new(g2, right));
                        if t2.is_zero() {
                            continue;
                        }
                        split_sum += int(mult as i64) * t1 * t2;
                    }
                }
                boundary += w * split_sum;
            }
            acc += boundary * rat(1, 2);
        }

        acc / Rational::from_integer(double_factorial(2 * k as i64 + 3).unwrap())
    }

    /// Aggarwal's large-genus main term
    /// `(6g - 5 + 2n)!! / (prod (2 d_i + 1)!! g! 24^g)`.
    pub fn main_term(&self, g: u32, d: &[u32]) -> Result<Rational> {
        let n = d.len() as i64;
        let dim = 3 * (g as i64) - 3 + n;
        let total: i64 = d.iter().map(|&x| x as i64).sum();
        if total != dim {
            return Err(Error::DimensionMismatch {
                got: total,
                expected: dim,
            });
        }
        let mut den = factorial(g as u64) * BigInt::from(24).pow(g);
        for &di in d {
            den *= double_factorial(2 * di as i64 + 1).unwrap();
        }
        Ok(Rational::new(
            double_factorial(6 * g as i64 - 5 + 2 * n).unwrap(),
            den,
        ))
    }

    /// Exact check of the Aggarwal upper bound
    /// `tau <= main_term * (3/2)^(n-1)`.
    pub fn upper_bound_holds(&self, g: u32, d: &[u32]) -> Result<bool> {
        let t = self.tau(g, d)?;
        let m = self.main_term(g, d)?;
        Ok(t <= m * pow(&rat(3, 2), d.len() as u32 - 1))
    }

    /// Snapshot of all cached keys, sorted.
    pub fn cached_keys(&self) -> Vec<TauKey> {
        let mut keys: Vec<TauKey> = self.memo.lock().unwrap().keys().cloned().collect();
        keys.sort();
        keys
    }

    /// Write the cache, one `g;d1,...,dn;p/q` record per line.
    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let memo = self.memo.lock().unwrap();
        let mut entries: Vec<(&TauKey, &Rational)> = memo.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for (k, v) in entries {
            let ds: Vec<String> = k.d.iter().map(|x| x.to_string()).collect();
            writeln!(
                out,
                "{};{};{}",
                k.g,
                ds.join(","),
                crate::rational::format_rational(v)
            )?;
        }
        Ok(())
    }

    /// Load records produced by [`TauEngine::save_cache`].
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        let file = std::fs::File::open(path)?;
        let mut count = 0;
        for line in std::io::BufReader::new(file).lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.splitn(3, ';');
            let (Some(g), Some(ds), Some(val)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("bad cache record `{line}`")));
            };
            let g: u32 = g
                .parse()
                .map_err(|e| Error::Parse(format!("bad genus in `{line}`: {e}")))?;
            let d: Vec<u32> = ds
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("bad indices in `{line}`: {e}")))?;
            let v = crate::rational::parse_rational(val)?;
            self.memo.lock().unwrap().insert(TauKey::new(g, d), v);
            count += 1;
        }
        Ok(count)
    }
}

/// Group a sorted multiset into (value, multiplicity) pairs.
fn group_multiset(d: &[u32]) -> Vec<(u32, usize)> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &x in d {
        match groups.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => groups.push((x, 1)),
        }
    }
    groups
}

/// All sub-multisets with the number of labeled subsets realizing each.
fn sub_multisets(groups: &[(u32, usize)]) -> Vec<(Vec<u32>, u64)> {
    let mut acc: Vec<(Vec<u32>, u64)> = vec![(Vec::new(), 1)];
    for &(value, count) in groups {
        let mut next = Vec::with_capacity(acc.len() * (count + 1));
        for (sub, mult) in &acc {
            for take in 0..=count {
                let mut s = sub.clone();
                s.extend(std::iter::repeat(value).take(take));
                let choose: u64 = crate::comb::binomial(count as u64, take as u64)
                    .try_into()
                    .expect("binomial fits in u64 at desk scale");
                next.push((s, mult * choose));
            }
        }
        acc = next;
    }
    acc
}

fn multiset_difference(whole: &[u32], sub: &[u32]) -> Vec<u32> {
    let mut remaining: Vec<u32> = whole.to_vec();
    for &x in sub {
        let pos = remaining.iter().position(|&y| y == x).unwrap();
        remaining.remove(pos);
    }
    remaining
}
