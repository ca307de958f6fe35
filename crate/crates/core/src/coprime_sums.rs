//! Sums of pairwise coprime monomials.
//!
//! Monomials on disjoint sets of variables have additive rank, so a sum is
//! identified by the multiset of its block shapes (each a partition of the
//! common degree). Variable labels are never stored.

use std::cmp::Reverse;
use std::fmt;

use crate::error::{Result, WaringError};
use crate::exact_math::Natural;
use crate::monomials::{self, max_rank_monomial, parse_exponent_list, Mode, Monomial, Partitions};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoprimeSum {
    /// Each block's ambient count equals the variables it uses.
    blocks: Vec<Monomial>,
    ambient_vars: u32,
}

fn block_order_key(m: &Monomial) -> (Reverse<u32>, Reverse<&[u32]>) {
    (Reverse(m.vars_used()), Reverse(m.exponents()))
}

impl CoprimeSum {
    pub fn new(blocks: Vec<Monomial>, ambient_vars: u32) -> Result<CoprimeSum> {
        let Some(first) = blocks.first() else {
            return Err(WaringError::Degenerate("a sum needs at least one block".into()));
        };
        let d = first.degree();
        if let Some(b) = blocks.iter().find(|b| b.degree() != d) {
            return Err(WaringError::DegreeMismatch(d, b.degree()));
        }
        let used: usize = blocks.iter().map(|b| b.vars_used() as usize).sum();
        if used > ambient_vars as usize {
            return Err(WaringError::Dimension {
                used,
                ambient: ambient_vars,
            });
        }
        let mut blocks: Vec<Monomial> = blocks
            .into_iter()
            .map(|b| b.with_ambient(b.vars_used()))
            .collect::<Result<_>>()?;
        blocks.sort_by(|a, b| block_order_key(a).cmp(&block_order_key(b)));
        Ok(CoprimeSum {
            blocks,
            ambient_vars,
        })
    }

    /// Builds from raw exponent lists, one per block (zeros allowed).
    pub fn from_exponent_blocks(raw_blocks: &[Vec<u32>], ambient_vars: u32) -> Result<CoprimeSum> {
        let blocks = raw_blocks
            .iter()
            .map(|raw| Monomial::canonicalize(raw, raw.len().max(1) as u32))
            .collect::<Result<Vec<_>>>()?;
        CoprimeSum::new(blocks, ambient_vars)
    }

    /// Parses `"1,2|1,2"`: blocks joined by `|`, exponents by `,`. The
    /// ambient variable count defaults to the total number of listed entries.
    pub fn parse(text: &str, ambient_vars: Option<u32>) -> Result<CoprimeSum> {
        let raw: Vec<Vec<u32>> = text
            .split('|')
            .map(parse_exponent_list)
            .collect::<Result<_>>()?;
        let listed: usize = raw.iter().map(Vec::len).sum();
        CoprimeSum::from_exponent_blocks(&raw, ambient_vars.unwrap_or(listed as u32))
    }

    /// The bare monomial viewed as a one-block sum.
    pub fn from_monomial(m: &Monomial) -> CoprimeSum {
        CoprimeSum::new(vec![m.clone()], m.ambient_vars()).expect("monomial is a valid block")
    }

    pub fn blocks(&self) -> &[Monomial] {
        &self.blocks
    }

    pub fn ambient_vars(&self) -> u32 {
        self.ambient_vars
    }

    pub fn degree(&self) -> u32 {
        self.blocks[0].degree()
    }

    pub fn vars_used(&self) -> u32 {
        self.blocks.iter().map(Monomial::vars_used).sum()
    }

    pub fn is_spanning(&self) -> bool {
        self.vars_used() == self.ambient_vars
    }

    pub fn rank(&self) -> Natural {
        sum_rank(self)
    }

    /// `"1,2|1,2"`, the syntax accepted by [`CoprimeSum::parse`].
    pub fn block_string(&self) -> String {
        self.blocks
            .iter()
            .map(Monomial::exponent_string)
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Exponent vectors of the blocks, in canonical order.
    pub fn shape(&self) -> Vec<Vec<u32>> {
        self.blocks.iter().map(|b| b.exponents().to_vec()).collect()
    }
}

impl fmt::Display for CoprimeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut next_var = 1;
        let mut terms = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            terms.push(b.display_from(next_var));
            next_var += b.vars_used();
        }
        f.write_str(&terms.join(" + "))
    }
}

/// Rank of a coprime sum: the sum of its block ranks.
///
/// For degree 1 this counts blocks, which is not the rank of the resulting
/// linear form; rank additivity needs degree at least 2.
pub fn sum_rank(f: &CoprimeSum) -> Natural {
    f.blocks.iter().map(Monomial::rank).sum()
}

/// Streams every coprime sum of degree `d` using at most `n` variables
/// (exactly `n` when `spanning`), once per multiset of block shapes.
///
/// Block shapes are ordered canonically and each multiset is produced as a
/// non-decreasing sequence of shape indices, in depth-first order.
#[derive(Clone, Debug)]
pub struct CoprimeSums {
    shapes: Vec<Monomial>,
    shape_vars: Vec<u32>,
    n: u32,
    spanning: bool,
    stack: Vec<usize>,
    used: u32,
    done: bool,
}

impl CoprimeSums {
    pub fn new(n: u32, d: u32, spanning: bool) -> CoprimeSums {
        let mut shapes: Vec<Monomial> = Partitions::new(d, d)
            .map(|p| Monomial::from_descending_parts(&p, p.len() as u32))
            .collect();
        shapes.sort_by(|a, b| block_order_key(a).cmp(&block_order_key(b)));
        let shape_vars = shapes.iter().map(Monomial::vars_used).collect();
        CoprimeSums {
            shapes,
            shape_vars,
            n,
            spanning,
            stack: Vec::new(),
            used: 0,
            done: n == 0 || d == 0,
        }
    }

    fn first_fit(&self, from: usize) -> Option<usize> {
        (from..self.shapes.len()).find(|&j| self.used + self.shape_vars[j] <= self.n)
    }

    fn advance(&mut self) -> bool {
        let from = self.stack.last().copied().unwrap_or(0);
        if let Some(j) = self.first_fit(from) {
            self.stack.push(j);
            self.used += self.shape_vars[j];
            return true;
        }
        while let Some(k) = self.stack.pop() {
            self.used -= self.shape_vars[k];
            if let Some(j) = self.first_fit(k + 1) {
                self.stack.push(j);
                self.used += self.shape_vars[j];
                return true;
            }
        }
        false
    }

    fn current(&self) -> CoprimeSum {
        CoprimeSum {
            blocks: self.stack.iter().map(|&i| self.shapes[i].clone()).collect(),
            ambient_vars: self.n,
        }
    }
}

impl Iterator for CoprimeSums {
    type Item = CoprimeSum;

    fn next(&mut self) -> Option<CoprimeSum> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            if !self.spanning || self.used == self.n {
                return Some(self.current());
            }
        }
        None
    }
}

pub fn enumerate_coprime_sums(n: u32, d: u32, spanning: bool) -> CoprimeSums {
    CoprimeSums::new(n, d, spanning)
}

/// Brute-force maximum over [`enumerate_coprime_sums`]; the first maximizer
/// in enumeration order is returned as witness.
pub fn r_max_star_oracle(n: u32, d: u32, spanning: bool) -> Result<(Natural, CoprimeSum)> {
    if n == 0 || d == 0 {
        return Err(WaringError::Degenerate(format!(
            "r_max* needs n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    let mut best: Option<(Natural, CoprimeSum)> = None;
    for f in enumerate_coprime_sums(n, d, spanning) {
        let r = f.rank();
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, f));
        }
    }
    best.ok_or_else(|| {
        WaringError::Degenerate(format!("no coprime sum of degree {d} spans {n} variables"))
    })
}

/// Whether the closed form for r_max* covers `(n, d)`.
pub fn has_closed_form(n: u32, d: u32) -> bool {
    d >= n || d == 3
}

/// Maximum rank of a sum of pairwise coprime monomials, with a witness.
///
/// Closed forms: `r_max(n, d)` when `d >= n`; for cubics, `3n/2` (n even)
/// or `(3n - 1)/2` (n odd), realised by `x y^2` blocks plus one cube.
pub fn r_max_star_with_witness(n: u32, d: u32, mode: Mode) -> Result<(Natural, CoprimeSum)> {
    match mode {
        Mode::Oracle => r_max_star_oracle(n, d, false),
        Mode::ClosedForm => {
            if n == 0 || d == 0 {
                return Err(WaringError::Degenerate(format!(
                    "r_max* needs n >= 1 and d >= 1, got n={n}, d={d}"
                )));
            }
            if d >= n {
                let (r, m) = monomials::r_max_with_witness(n, d, Mode::ClosedForm)?;
                return Ok((r, CoprimeSum::from_monomial(&m)));
            }
            if d == 3 {
                let mut blocks = vec![vec![1, 2]; (n / 2) as usize];
                if n % 2 == 1 {
                    blocks.push(vec![3]);
                }
                let value = if n.is_multiple_of(2) { 3 * n / 2 } else { (3 * n - 1) / 2 };
                let f = CoprimeSum::from_exponent_blocks(&blocks, n)?;
                return Ok((Natural::from(value), f));
            }
            Err(WaringError::UnsupportedRegime { n, d })
        }
    }
}

pub fn r_max_star(n: u32, d: u32, mode: Mode) -> Result<Natural> {
    r_max_star_with_witness(n, d, mode).map(|(r, _)| r)
}

/// `⌊n/d⌋` squarefree blocks of `d` variables, plus the max-rank monomial of
/// degree `d` on the `n mod d` leftover variables when there are any.
pub fn greedy_construction(n: u32, d: u32) -> Result<CoprimeSum> {
    if n == 0 || d < 2 {
        return Err(WaringError::Degenerate(format!(
            "greedy construction needs n >= 1 and d >= 2, got n={n}, d={d}"
        )));
    }
    let mut blocks: Vec<Monomial> = (0..n / d)
        .map(|_| Monomial::canonicalize(&vec![1; d as usize], d))
        .collect::<Result<_>>()?;
    let rest = n % d;
    if rest > 0 {
        blocks.push(max_rank_monomial(rest, d)?);
    }
    CoprimeSum::new(blocks, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn sum(text: &str, n: u32) -> CoprimeSum {
        CoprimeSum::parse(text, Some(n)).unwrap()
    }

    /// Independent route to r_max*: unbounded knapsack over block sizes,
    /// each size k worth r_max(k, d).
    fn knapsack_r_max_star(n: u32, d: u32) -> Natural {
        let values: Vec<Natural> = (1..=d.min(n))
            .map(|k| monomials::r_max(k, d, Mode::Oracle).unwrap())
            .collect();
        let mut best = vec![Natural::zero(); n as usize + 1];
        for cap in 1..=n as usize {
            let mut b = best[cap - 1].clone();
            for (i, v) in values.iter().enumerate() {
                let k = i + 1;
                if k <= cap {
                    let cand = &best[cap - k] + v;
                    if cand > b {
                        b = cand;
                    }
                }
            }
            best[cap] = b;
        }
        best[n as usize].clone()
    }

    #[test]
    fn sum_rank_examples() {
        assert_eq!(sum("1,2|1,2", 4).rank(), nat(6));
        assert_eq!(sum("1,1,1|3", 4).rank(), nat(5));
        assert_eq!(sum("3|3|3|3", 4).rank(), nat(4));
        let m = Monomial::canonicalize(&[2, 1, 3], 3).unwrap();
        assert_eq!(CoprimeSum::from_monomial(&m).rank(), m.rank());
    }

    #[test]
    fn parse_and_canonical_order() {
        let f = CoprimeSum::parse("3|2,1|0,3", None).unwrap();
        assert_eq!(f.ambient_vars(), 5);
        assert_eq!(f.block_string(), "1,2|3|3");
        assert_eq!(f.to_string(), "x1*x2^2 + x3^3 + x4^3");
        assert_eq!(f.vars_used(), 4);
        assert!(!f.is_spanning());

        let g = CoprimeSum::parse("3|1,1,1", Some(4)).unwrap();
        assert_eq!(g.block_string(), "1,1,1|3");
        assert!(g.is_spanning());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            CoprimeSum::parse("1,2|1,1", None),
            Err(WaringError::DegreeMismatch(3, 2))
        ));
        assert!(matches!(
            CoprimeSum::parse("1,2|1,2", Some(3)),
            Err(WaringError::Dimension { used: 4, ambient: 3 })
        ));
        assert!(matches!(CoprimeSum::parse("1,2|", None), Err(WaringError::Parse(_))));
        assert!(matches!(CoprimeSum::parse("0|1", None), Err(WaringError::Degenerate(_))));
        assert!(CoprimeSum::new(vec![], 3).is_err());
    }

    #[test]
    fn spanning_43_classification() {
        let sums: Vec<CoprimeSum> = enumerate_coprime_sums(4, 3, true).collect();
        assert_eq!(sums.len(), 4);
        let mut ranks: Vec<u64> = sums.iter().map(|f| f.rank().to_u64().unwrap()).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![4, 5, 5, 6]);
        let shapes: HashSet<String> = sums.iter().map(CoprimeSum::block_string).collect();
        let expected: HashSet<String> = ["3|3|3|3", "1,2|3|3", "1,1,1|3", "1,2|1,2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(shapes, expected);
    }

    #[test]
    fn single_variable_has_one_sum() {
        for d in 1..=6 {
            for spanning in [false, true] {
                let all: Vec<_> = enumerate_coprime_sums(1, d, spanning).collect();
                assert_eq!(all.len(), 1);
                assert_eq!(all[0].shape(), vec![vec![d]]);
            }
        }
    }

    #[test]
    fn enumeration_distinct_and_canonical() {
        for n in 1..=8 {
            for d in 1..=8 {
                let mut seen = HashSet::new();
                for f in enumerate_coprime_sums(n, d, false) {
                    assert!(f.vars_used() <= n);
                    assert!(f.blocks().iter().all(|b| b.degree() == d));
                    // already canonical: rebuilding changes nothing
                    let rebuilt = CoprimeSum::new(f.blocks().to_vec(), n).unwrap();
                    assert_eq!(rebuilt, f);
                    assert!(seen.insert(f.block_string()), "duplicate {f}");
                    // rank is the sum of block ranks
                    let by_block: Natural = f.blocks().iter().map(Monomial::rank).sum();
                    assert_eq!(f.rank(), by_block);
                }
                let spanning = enumerate_coprime_sums(n, d, true).count();
                let all_spanning = seen.len()
                    - enumerate_coprime_sums(n - 1, d, false).count().min(seen.len());
                assert_eq!(spanning, all_spanning, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn r_max_star_examples() {
        assert_eq!(r_max_star(4, 3, Mode::ClosedForm).unwrap(), nat(6));
        assert_eq!(r_max_star(4, 3, Mode::Oracle).unwrap(), nat(6));
        assert_eq!(r_max_star(5, 3, Mode::ClosedForm).unwrap(), nat(7));
        assert_eq!(r_max_star(5, 3, Mode::Oracle).unwrap(), nat(7));
        assert_eq!(r_max_star(6, 3, Mode::ClosedForm).unwrap(), nat(9));
        assert_eq!(r_max_star(6, 3, Mode::Oracle).unwrap(), nat(9));
        let (r, w) = r_max_star_with_witness(5, 4, Mode::Oracle).unwrap();
        assert_eq!(r, nat(10));
        assert_eq!(w.rank(), nat(10));
        assert_eq!(sum("1,1,2|1,3", 5).rank(), nat(10));
    }

    #[test]
    fn closed_form_outside_regime_is_rejected() {
        assert_eq!(
            r_max_star(5, 4, Mode::ClosedForm),
            Err(WaringError::UnsupportedRegime { n: 5, d: 4 })
        );
        assert!(r_max_star(3, 2, Mode::ClosedForm).is_err());
        assert!(r_max_star(0, 3, Mode::Oracle).is_err());
    }

    #[test]
    fn closed_form_agrees_with_oracle_small() {
        for d in 1..=9 {
            for n in 1..=d {
                assert_eq!(
                    r_max_star(n, d, Mode::ClosedForm).unwrap(),
                    r_max_star(n, d, Mode::Oracle).unwrap(),
                    "n={n} d={d}"
                );
            }
        }
        for n in 1..=12 {
            assert_eq!(
                r_max_star(n, 3, Mode::ClosedForm).unwrap(),
                r_max_star(n, 3, Mode::Oracle).unwrap(),
                "n={n} d=3"
            );
        }
    }

    #[test]
    fn oracle_agrees_with_knapsack() {
        for n in 1..=10 {
            for d in 2..=8 {
                assert_eq!(
                    r_max_star(n, d, Mode::Oracle).unwrap(),
                    knapsack_r_max_star(n, d),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn oracle_dominates_single_monomial() {
        for n in 1..=8 {
            for d in 1..=8 {
                assert!(
                    r_max_star(n, d, Mode::Oracle).unwrap()
                        >= monomials::r_max(n, d, Mode::ClosedForm).unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_form_witness_matches_value() {
        for n in 1..=12 {
            for d in [3u32, 4, 6, 12] {
                if has_closed_form(n, d) {
                    let (r, w) = r_max_star_with_witness(n, d, Mode::ClosedForm).unwrap();
                    assert_eq!(w.rank(), r);
                    assert_eq!(w.degree(), d);
                    assert!(w.vars_used() <= n);
                }
            }
        }
    }

    #[test]
    fn cubic_normalization_preserves_rank_and_variables() {
        // xyz -> x y^2 + z^3
        let before = sum("1,1,1", 3);
        let after = sum("1,2|3", 3);
        assert_eq!(before.rank(), after.rank());
        assert_eq!(before.vars_used(), after.vars_used());
        let before = sum("1,1,1|1,1,1|3", 7);
        let after = sum("1,2|3|1,2|3|3", 7);
        assert_eq!(before.rank(), after.rank());
        assert_eq!(before.vars_used(), after.vars_used());
    }

    #[test]
    fn linear_bound_for_many_variables() {
        // r_max*(n,d) d <= n 2^(d-1) when n > d >= 4
        for d in 4..=7u32 {
            for n in d + 1..=12 {
                let lhs = &r_max_star(n, d, Mode::Oracle).unwrap() * u64::from(d);
                let rhs = &nat(2).pow(d - 1) * u64::from(n);
                assert!(lhs <= rhs, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_construction(4, 3).unwrap();
        assert_eq!(g.block_string(), "1,1,1|3");
        assert_eq!(g.rank(), nat(5));
        let g = greedy_construction(5, 4).unwrap();
        assert_eq!(g.block_string(), "1,1,1,1|4");
        assert_eq!(g.rank(), nat(9));
        let g = greedy_construction(6, 5).unwrap();
        assert_eq!(g.block_string(), "1,1,1,1,1|5");
        assert_eq!(g.rank(), nat(17));
        let g = greedy_construction(8, 4).unwrap();
        assert_eq!(g.block_string(), "1,1,1,1|1,1,1,1");
        assert_eq!(g.rank(), nat(16));
        let g = greedy_construction(3, 5).unwrap();
        assert_eq!(g.block_string(), "1,2,2");
        assert!(greedy_construction(4, 1).is_err());
    }

    #[test]
    fn greedy_is_beaten_where_expected() {
        for (n, d, greedy, best) in [(4, 3, 5u64, 6u64), (5, 4, 9, 10), (6, 5, 17, 18)] {
            assert_eq!(greedy_construction(n, d).unwrap().rank(), nat(greedy));
            assert_eq!(r_max_star(n, d, Mode::Oracle).unwrap(), nat(best));
        }
        assert_eq!(sum("1,2,2|1,2,2", 6).rank(), nat(18));
    }
}
