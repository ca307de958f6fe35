//! Monomials up to permutation of variables, their Waring ranks, and
//! exhaustive enumeration by integer partitions.
//!
//! A monomial x_1^{a_1} ... x_n^{a_n} is identified with its multiset of
//! positive exponents. With the exponents sorted ascending,
//! `0 < a_1 <= ... <= a_k`, its rank is `(a_2 + 1) ... (a_k + 1)`.

use std::fmt;

use crate::error::{Result, WaringError};
use crate::exact_math::Natural;

/// Selects how a maximum is obtained: by the explicit construction or by
/// brute force over every candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    ClosedForm,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    /// Positive, ascending.
    exponents: Vec<u32>,
    ambient_vars: u32,
}

impl Monomial {
    /// Drops zero exponents and sorts the rest ascending.
    pub fn canonicalize(raw_exponents: &[u32], ambient_vars: u32) -> Result<Monomial> {
        let mut exponents: Vec<u32> = raw_exponents.iter().copied().filter(|&a| a > 0).collect();
        if exponents.is_empty() {
            return Err(WaringError::Degenerate(
                "monomial needs at least one positive exponent".into(),
            ));
        }
        if ambient_vars == 0 || exponents.len() > ambient_vars as usize {
            return Err(WaringError::Dimension {
                used: exponents.len(),
                ambient: ambient_vars,
            });
        }
        exponents.sort_unstable();
        Ok(Monomial {
            exponents,
            ambient_vars,
        })
    }

    /// Parses comma-separated exponents such as `"1,2,2"`. The ambient
    /// variable count defaults to the number of listed entries.
    pub fn parse(text: &str, ambient_vars: Option<u32>) -> Result<Monomial> {
        let raw = parse_exponent_list(text)?;
        let ambient = ambient_vars.unwrap_or(raw.len() as u32);
        Monomial::canonicalize(&raw, ambient)
    }

    /// Builds from a partition listed with parts in descending order.
    pub(crate) fn from_descending_parts(parts: &[u32], ambient_vars: u32) -> Monomial {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Monomial {
            exponents: parts.iter().rev().copied().collect(),
            ambient_vars,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn ambient_vars(&self) -> u32 {
        self.ambient_vars
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Number of variables that actually appear.
    pub fn vars_used(&self) -> u32 {
        self.exponents.len() as u32
    }

    pub fn rank(&self) -> Natural {
        waring_rank(self)
    }

    /// Same exponents, different ambient variable count.
    pub fn with_ambient(&self, ambient_vars: u32) -> Result<Monomial> {
        Monomial::canonicalize(&self.exponents, ambient_vars)
    }

    /// `"1,2,2"`, the syntax accepted by [`Monomial::parse`].
    pub fn exponent_string(&self) -> String {
        join_exponents(&self.exponents)
    }

    /// Human-readable form on variables starting at `x_{first}`, e.g. `x1*x2^2`.
    pub fn display_from(&self, first: u32) -> String {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let v = first + i as u32;
                if a == 1 {
                    format!("x{v}")
                } else {
                    format!("x{v}^{a}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_from(1))
    }
}

pub(crate) fn join_exponents(exponents: &[u32]) -> String {
    exponents
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn parse_exponent_list(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(WaringError::Parse("empty exponent list".into()));
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| WaringError::Parse(format!("bad exponent {tok:?} in {text:?}")))
        })
        .collect()
}

/// Rank of a monomial: the product of `a_i + 1` over all ascending exponents
/// except the smallest. A pure power has rank 1.
pub fn waring_rank(m: &Monomial) -> Natural {
    m.exponents[1..]
        .iter()
        .map(|&a| Natural::from(u64::from(a) + 1))
        .product()
}

/// The rank-maximizing monomial of degree `d` in `n` variables.
///
/// Uses `n' = min(n, d)` variables: writing `d - 1 = q (n' - 1) + s` with
/// `0 <= s < n' - 1`, the exponents are `1`, then `n' - s - 1` copies of `q`,
/// then `s` copies of `q + 1`.
pub fn max_rank_monomial(n: u32, d: u32) -> Result<Monomial> {
    if d == 0 || n == 0 {
        return Err(WaringError::Degenerate(format!(
            "max-rank monomial needs n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    let used = n.min(d);
    if used == 1 {
        return Monomial::canonicalize(&[d], n);
    }
    let q = (d - 1) / (used - 1);
    let s = (d - 1) % (used - 1);
    let mut exponents = Vec::with_capacity(used as usize);
    exponents.push(1);
    exponents.extend(std::iter::repeat_n(q, (used - s - 1) as usize));
    exponents.extend(std::iter::repeat_n(q + 1, s as usize));
    Monomial::canonicalize(&exponents, n)
}

/// Partitions of `total` into at most `max_parts` positive parts, each listed
/// in descending order, visited in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    max_parts: usize,
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    pub fn new(total: u32, max_parts: u32) -> Partitions {
        let mut parts = Vec::new();
        let done = total == 0 || max_parts == 0;
        if !done {
            fill_greedy(&mut parts, total, total);
        }
        Partitions {
            max_parts: max_parts as usize,
            parts,
            started: false,
            done,
        }
    }

    fn advance(&mut self) -> bool {
        // Lower the rightmost part that can drop by one while the tail still
        // fits in the remaining slots; refill the tail greedily.
        let mut tail: u32 = 0;
        while let Some(last) = self.parts.pop() {
            tail += last;
            if last > 1 {
                let cap = last - 1;
                let rest = tail - cap;
                let slots = self.max_parts - self.parts.len() - 1;
                if u64::from(rest) <= u64::from(cap) * slots as u64 {
                    self.parts.push(cap);
                    fill_greedy(&mut self.parts, rest, cap);
                    return true;
                }
            }
        }
        false
    }
}

fn fill_greedy(parts: &mut Vec<u32>, mut remaining: u32, cap: u32) {
    while remaining > 0 {
        let p = remaining.min(cap);
        parts.push(p);
        remaining -= p;
    }
}

impl Iterator for Partitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            // The first greedy fill is [total]; it always fits in one slot.
            return Some(self.parts.clone());
        }
        if self.advance() {
            Some(self.parts.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// Every monomial of degree `d` in `n` ambient variables, once each up to
/// permutation, in descending lexicographic order of the partition of `d`.
pub fn enumerate_monomials(n: u32, d: u32) -> impl Iterator<Item = Monomial> {
    Partitions::new(d, n).map(move |p| Monomial::from_descending_parts(&p, n))
}

/// Maximum monomial rank together with a monomial attaining it.
pub fn r_max_with_witness(n: u32, d: u32, mode: Mode) -> Result<(Natural, Monomial)> {
    match mode {
        Mode::ClosedForm => {
            let m = max_rank_monomial(n, d)?;
            Ok((m.rank(), m))
        }
        Mode::Oracle => {
            if n == 0 || d == 0 {
                return Err(WaringError::Degenerate(format!(
                    "r_max needs n >= 1 and d >= 1, got n={n}, d={d}"
                )));
            }
            let mut best: Option<(Natural, Monomial)> = None;
            for m in enumerate_monomials(n, d) {
                let r = m.rank();
                if best.as_ref().is_none_or(|(b, _)| r > *b) {
                    best = Some((r, m));
                }
            }
            Ok(best.expect("at least the pure power is enumerated"))
        }
    }
}

/// Maximum Waring rank of a degree-`d` monomial in `n` variables.
pub fn r_max(n: u32, d: u32, mode: Mode) -> Result<Natural> {
    r_max_with_witness(n, d, mode).map(|(r, _)| r)
}
