//! Generic rank, classical upper bounds on the maximum rank, and a small
//! registry of non-monomial forms whose rank exceeds the generic value.

use std::fmt;

use crate::coprime_sums::CoprimeSum;
use crate::error::{Result, WaringError};
use crate::exact_math::{binomial, binomial_signed, ceil_div, Natural};
use crate::monomials::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecordKind {
    Generic,
    RMax,
    RMaxStar,
    SpanBound,
    ImprovedBound,
    JelisiejewBound,
    BallicoDeParisBound,
    BlekhermanBound,
}

impl RecordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordKind::Generic => "generic",
            RecordKind::RMax => "r_max",
            RecordKind::RMaxStar => "r_max_star",
            RecordKind::SpanBound => "span_bound",
            RecordKind::ImprovedBound => "improved_bound",
            RecordKind::JelisiejewBound => "jelisiejew_bound",
            RecordKind::BallicoDeParisBound => "ballico_deparis_bound",
            RecordKind::BlekhermanBound => "blekherman_bound",
        }
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A form whose rank is known: a monomial or a coprime sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Monomial(Monomial),
    Sum(CoprimeSum),
}

impl Witness {
    pub fn rank(&self) -> Natural {
        match self {
            Witness::Monomial(m) => m.rank(),
            Witness::Sum(f) => f.rank(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Witness::Monomial(m) => m.degree(),
            Witness::Sum(f) => f.degree(),
        }
    }

    pub fn ambient_vars(&self) -> u32 {
        match self {
            Witness::Monomial(m) => m.ambient_vars(),
            Witness::Sum(f) => f.ambient_vars(),
        }
    }

    /// Exponent syntax: `1,2,2` for a monomial, `1,2|1,2` for a sum.
    pub fn syntax(&self) -> String {
        match self {
            Witness::Monomial(m) => m.exponent_string(),
            Witness::Sum(f) => f.block_string(),
        }
    }

    /// Parses either syntax; text containing `|` is a sum.
    pub fn parse(text: &str, ambient_vars: u32) -> Result<Witness> {
        if text.contains('|') {
            CoprimeSum::parse(text, Some(ambient_vars)).map(Witness::Sum)
        } else {
            Monomial::parse(text, Some(ambient_vars)).map(Witness::Monomial)
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Monomial(m) => m.fmt(f),
            Witness::Sum(s) => s.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRecord {
    pub n: u32,
    pub d: u32,
    pub kind: RecordKind,
    pub value: Natural,
    pub witness: Option<Witness>,
}

impl RankRecord {
    pub fn new(
        n: u32,
        d: u32,
        kind: RecordKind,
        value: Natural,
        witness: Option<Witness>,
    ) -> Result<RankRecord> {
        if value.is_zero() {
            return Err(WaringError::Degenerate(format!("{kind} at ({n},{d}) is zero")));
        }
        if let Some(w) = &witness {
            if w.ambient_vars() != n || w.degree() != d {
                return Err(WaringError::Usage(format!(
                    "witness {w} does not live in (n,d) = ({n},{d})"
                )));
            }
            if w.rank() != value {
                return Err(WaringError::Usage(format!(
                    "witness {w} has rank {} but record says {value}",
                    w.rank()
                )));
            }
        }
        Ok(RankRecord {
            n,
            d,
            kind,
            value,
            witness,
        })
    }
}

/// `⌈C(d+n-1, n-1) / n⌉`, the generic rank outside the exceptional cases.
pub fn generic_rank_formula(n: u32, d: u32) -> Natural {
    let dim = binomial(u64::from(d + n - 1), u64::from(n - 1));
    ceil_div(&dim, &Natural::from(n)).expect("n >= 1")
}

/// The (n, 2), (3, 4), (4, 4), (5, 3), (5, 4) families.
pub fn is_exceptional(n: u32, d: u32) -> bool {
    exceptional_value(n, d).is_some_and(|v| v != generic_rank_formula(n, d))
}

fn exceptional_value(n: u32, d: u32) -> Option<Natural> {
    let v: u32 = match (n, d) {
        // quadrics: rank of a generic symmetric matrix
        (n, 2) => n,
        (3, 4) => 6,
        (4, 4) => 10,
        (5, 3) => 8,
        (5, 4) => 15,
        _ => return None,
    };
    Some(Natural::from(v))
}

/// Generic Waring rank of degree-`d` forms in `n` variables.
pub fn generic_rank(n: u32, d: u32) -> Natural {
    assert!(n >= 1 && d >= 1, "generic rank needs n, d >= 1");
    exceptional_value(n, d).unwrap_or_else(|| generic_rank_formula(n, d))
}

/// Binomial with signed arguments, zero when either is negative.
fn binom(top: i64, bottom: i64) -> Natural {
    binomial_signed(top, bottom)
}

fn jelisiejew_correction(n: i64, d: i64) -> Natural {
    binom(d + n - 6, n - 3)
}

fn ballico_deparis_correction(n: i64, d: i64) -> Natural {
    binom(d + n - 7, n - 3)
}

/// The five upper bounds on the maximum rank, from the dimension of the
/// space of forms down to twice the generic rank.
pub fn upper_bounds(n: u32, d: u32) -> Vec<RankRecord> {
    let (ni, di) = (i64::from(n), i64::from(d));
    let span = binom(di + ni - 1, ni - 1);
    let improved = binom(di + ni - 2, ni - 1);
    let jel = improved
        .checked_sub(&jelisiejew_correction(ni, di))
        .expect("correction never exceeds the main term");
    let bdp = jel
        .checked_sub(&ballico_deparis_correction(ni, di))
        .expect("correction never exceeds the main term");
    let blek = &generic_rank(n, d) * 2;
    [
        (RecordKind::SpanBound, span),
        (RecordKind::ImprovedBound, improved),
        (RecordKind::JelisiejewBound, jel),
        (RecordKind::BallicoDeParisBound, bdp),
        (RecordKind::BlekhermanBound, blek),
    ]
    .into_iter()
    .map(|(kind, value)| RankRecord {
        n,
        d,
        kind,
        value,
        witness: None,
    })
    .collect()
}

/// Which correction terms vanished at `(n, d)`: (Jelisiejew, Ballico–De Paris).
pub fn vanished_corrections(n: u32, d: u32) -> (bool, bool) {
    let (ni, di) = (i64::from(n), i64::from(d));
    (
        jelisiejew_correction(ni, di).is_zero(),
        ballico_deparis_correction(ni, di).is_zero(),
    )
}

/// Rank after adding `s` pure powers in new variables.
pub fn rank_add_powers(base_rank: &Natural, s: u32) -> Result<Natural> {
    if base_rank.is_zero() {
        return Err(WaringError::Degenerate("base rank must be at least 1".into()));
    }
    Ok(base_rank + &Natural::from(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownExample {
    pub label: String,
    pub n: u32,
    pub d: u32,
    pub rank: Natural,
    pub source_note: String,
}

/// Non-monomial forms with rank above the generic value. Ranks are
/// literature values, not computed here.
pub fn known_examples() -> Vec<KnownExample> {
    let entry = |label: &str, n, d, rank: u32, note: &str| KnownExample {
        label: label.to_string(),
        n,
        d,
        rank: Natural::from(rank),
        source_note: note.to_string(),
    };
    vec![
        entry(
            "x^2*y + y^2*z",
            3,
            3,
            5,
            "plane cubic; Landsberg-Teitler sec. 8, Kleppe Thm 2.3",
        ),
        entry("x^2*y^2 + y^3*z", 3, 4, 7, "plane quartic; Kleppe Prop 3.1"),
        entry(
            "x^2*y + y^2*z + w^3",
            4,
            3,
            6,
            "plane cubic plus one pure power; rank adds 1 (Carlini-Catalisano-Chiantini)",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn bound(n: u32, d: u32, kind: RecordKind) -> Natural {
        upper_bounds(n, d)
            .into_iter()
            .find(|r| r.kind == kind)
            .unwrap()
            .value
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(3, 3), nat(4));
        assert_eq!(generic_rank(4, 3), nat(5));
        assert_eq!(generic_rank(3, 4), nat(6));
        assert_eq!(generic_rank(4, 4), nat(10));
        assert_eq!(generic_rank(5, 3), nat(8));
        assert_eq!(generic_rank(5, 4), nat(15));
        assert_eq!(generic_rank(6, 3), nat(10));
        assert_eq!(generic_rank(100, 3), nat(1717));
        for n in 1..=30 {
            assert_eq!(generic_rank(n, 2), nat(n.into()));
        }
        assert_eq!(generic_rank(1, 9), nat(1));
        assert_eq!(generic_rank(7, 1), nat(1));
    }

    #[test]
    fn formula_values_replaced_by_exceptions() {
        assert_eq!(generic_rank_formula(3, 4), nat(5));
        assert_eq!(generic_rank_formula(4, 4), nat(9));
        assert_eq!(generic_rank_formula(5, 3), nat(7));
        assert_eq!(generic_rank_formula(5, 4), nat(14));
        assert_eq!(generic_rank_formula(6, 2), nat(4));
    }

    #[test]
    fn strict_excess_exactly_on_exceptional_families() {
        for n in 1..=20 {
            for d in 1..=40 {
                let g = generic_rank(n, d);
                let f = generic_rank_formula(n, d);
                assert!(g >= f);
                // (1,2) and (2,2) coincide with the formula
                let listed = d == 2 && n >= 3 || matches!((n, d), (3, 4) | (4, 4) | (5, 3) | (5, 4));
                assert_eq!(g > f, listed, "n={n} d={d}");
                assert_eq!(is_exceptional(n, d), listed);
            }
        }
    }

    #[test]
    fn generic_rank_monotone() {
        for n in 1..=20 {
            for d in 1..=40 {
                if d < 40 {
                    assert!(generic_rank(n, d) <= generic_rank(n, d + 1), "n={n} d={d}");
                }
                if n < 20 {
                    assert!(generic_rank(n, d) <= generic_rank(n + 1, d), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(bound(3, 4, RecordKind::JelisiejewBound), nat(9));
        assert_eq!(bound(3, 4, RecordKind::BallicoDeParisBound), nat(8));
        assert_eq!(bound(3, 3, RecordKind::JelisiejewBound), nat(5));
        assert_eq!(bound(3, 3, RecordKind::BallicoDeParisBound), nat(5));
        assert_eq!(bound(3, 4, RecordKind::BlekhermanBound), nat(12));
        assert_eq!(bound(3, 4, RecordKind::SpanBound), nat(15));
        assert_eq!(bound(3, 4, RecordKind::ImprovedBound), nat(10));
        assert_eq!(upper_bounds(4, 4).len(), 5);
        assert_eq!(vanished_corrections(3, 3), (false, true));
        assert_eq!(vanished_corrections(2, 9), (true, true));
        assert_eq!(vanished_corrections(4, 4), (false, false));
    }

    #[test]
    fn bound_chain_is_ordered() {
        for n in 3..=12 {
            for d in 3..=30 {
                let b = upper_bounds(n, d);
                let v: Vec<&Natural> = b.iter().take(4).map(|r| &r.value).collect();
                assert!(v[0] >= v[1] && v[1] >= v[2] && v[2] >= v[3], "n={n} d={d}");
                assert!(*v[3] >= generic_rank(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn adding_powers() {
        assert_eq!(rank_add_powers(&nat(5), 1).unwrap(), nat(6));
        assert_eq!(rank_add_powers(&nat(4), 0).unwrap(), nat(4));
        assert_eq!(rank_add_powers(&nat(7), 2).unwrap(), nat(9));
        assert!(rank_add_powers(&nat(0), 2).is_err());
    }

    #[test]
    fn known_examples_exceed_generic() {
        let ex = known_examples();
        assert_eq!(ex.len(), 3);
        for e in &ex {
            assert!(e.rank > generic_rank(e.n, e.d), "{}", e.label);
        }
        assert_eq!(ex[0].rank, nat(5));
        assert_eq!(ex[1].rank, nat(7));
        assert_eq!(ex[2].rank, rank_add_powers(&ex[0].rank, 1).unwrap());
    }

    #[test]
    fn record_validation() {
        let m = Monomial::canonicalize(&[1, 1, 1, 1], 4).unwrap();
        assert!(RankRecord::new(4, 4, RecordKind::RMax, nat(8), Some(Witness::Monomial(m.clone()))).is_ok());
        assert!(RankRecord::new(4, 4, RecordKind::RMax, nat(9), Some(Witness::Monomial(m.clone()))).is_err());
        assert!(RankRecord::new(5, 4, RecordKind::RMax, nat(8), Some(Witness::Monomial(m))).is_err());
        assert!(RankRecord::new(4, 4, RecordKind::Generic, nat(0), None).is_err());
    }

    #[test]
    fn witness_syntax_round_trip() {
        let w = Witness::parse("2,1|1,2", 5).unwrap();
        assert_eq!(w.syntax(), "1,2|1,2");
        assert_eq!(w.rank(), nat(6));
        let w = Witness::parse("0,1,2", 4).unwrap();
        assert_eq!(w.syntax(), "1,2");
        assert_eq!(w.ambient_vars(), 4);
    }
}
