//! Decision procedures answering questions about open gaps `(lo, hi)`.
//!
//! A bound of `None` stands for `-∞` (as `lo`) or `+∞` (as `hi`).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl Cardinality {
    pub fn is_zero(self) -> bool {
        self == Cardinality::Finite(0)
    }

    pub fn plus(self, k: u64) -> Cardinality {
        match self {
            Cardinality::Finite(n) => Cardinality::Finite(n.saturating_add(k)),
            Cardinality::Infinite => Cardinality::Infinite,
        }
    }

    pub fn minus(self, k: u64) -> Cardinality {
        match self {
            Cardinality::Finite(n) => Cardinality::Finite(n.saturating_sub(k)),
            Cardinality::Infinite => Cardinality::Infinite,
        }
    }

    pub fn sum(self, other: Cardinality) -> Cardinality {
        match other {
            Cardinality::Finite(k) => self.plus(k),
            Cardinality::Infinite => Cardinality::Infinite,
        }
    }

    fn from_bigint(n: &BigInt) -> Cardinality {
        if n.is_negative() {
            Cardinality::Finite(0)
        } else {
            Cardinality::Finite(n.to_u64().unwrap_or(u64::MAX))
        }
    }
}

/// Closed bounding interval of a set; `None` ends are unbounded. Bounds need
/// not be attained, and need not be tight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hull {
    Empty,
    Span {
        inf: Option<Rational>,
        sup: Option<Rational>,
    },
}

pub trait GapOracle: Send + Sync {
    /// Whether the set has an element strictly between `lo` and `hi`.
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool;

    /// Exact number of elements strictly between `lo` and `hi`, when known.
    fn count_between(&self, _lo: Option<&Rational>, _hi: Option<&Rational>) -> Option<Cardinality> {
        None
    }

    fn contains(&self, x: &Rational) -> bool;

    fn hull(&self) -> Option<Hull> {
        None
    }
}

pub fn in_gap(x: &Rational, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
    lo.is_none_or(|l| l < x) && hi.is_none_or(|h| x < h)
}

fn count_in_gap<'a>(
    values: impl IntoIterator<Item = &'a Rational>,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
) -> u64 {
    values.into_iter().filter(|v| in_gap(v, lo, hi)).count() as u64
}

/// `#{n ≥ 1 : p < 1/n < q}`.
fn reciprocal_count(p: Option<&Rational>, q: Option<&Rational>) -> Cardinality {
    let n_min: BigInt = match q {
        Some(q) if !q.is_negative() && !q.is_zero() => {
            if *q > Rational::one() {
                BigInt::one()
            } else {
                // 1/n < q  ⇔  n > 1/q
                q.recip().expect("q > 0").floor() + 1
            }
        }
        Some(_) => return Cardinality::Finite(0),
        None => BigInt::one(),
    };
    let n_max: BigInt = match p {
        Some(p) if !p.is_negative() && !p.is_zero() => {
            // 1/n > p  ⇔  n < 1/p
            p.recip().expect("p > 0").ceil() - 1
        }
        _ => return Cardinality::Infinite,
    };
    Cardinality::from_bigint(&(n_max - n_min + 1))
}

/// The family `{center + 1/n : n ≥ 1}` (or `center - 1/n` when `below`).
#[derive(Debug, Clone)]
pub struct ReciprocalFamily {
    pub center: Rational,
    pub below: bool,
}

impl GapOracle for ReciprocalFamily {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        !self.count_between(lo, hi).unwrap().is_zero()
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        let c = &self.center;
        Some(if self.below {
            let p = hi.map(|h| c - h);
            let q = lo.map(|l| c - l);
            reciprocal_count(p.as_ref(), q.as_ref())
        } else {
            let p = lo.map(|l| l - c);
            let q = hi.map(|h| h - c);
            reciprocal_count(p.as_ref(), q.as_ref())
        })
    }

    fn contains(&self, x: &Rational) -> bool {
        let offset = if self.below {
            &self.center - x
        } else {
            x - &self.center
        };
        !offset.is_negative() && !offset.is_zero() && offset.numer().is_one()
    }

    fn hull(&self) -> Option<Hull> {
        let one = Rational::one();
        Some(if self.below {
            Hull::Span {
                inf: Some(&self.center - &one),
                sup: Some(self.center.clone()),
            }
        } else {
            Hull::Span {
                inf: Some(self.center.clone()),
                sup: Some(&self.center + &one),
            }
        })
    }
}

/// `{k/d : k ≥ 0}` for a fixed positive denominator `d`.
#[derive(Debug, Clone)]
pub struct Multiples {
    pub step_denominator: u64,
}

impl GapOracle for Multiples {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        !self.count_between(lo, hi).unwrap().is_zero()
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        let d = Rational::from(self.step_denominator);
        let k_min = match lo {
            Some(l) => ((l * &d).floor() + BigInt::one()).max(BigInt::zero()),
            None => BigInt::zero(),
        };
        let Some(h) = hi else {
            return Some(Cardinality::Infinite);
        };
        let k_max: BigInt = (h * &d).ceil() - BigInt::one();
        Some(Cardinality::from_bigint(&(k_max - k_min + BigInt::one())))
    }

    fn contains(&self, x: &Rational) -> bool {
        let scaled = x * &Rational::from(self.step_denominator);
        scaled.is_integer() && !scaled.is_negative()
    }

    fn hull(&self) -> Option<Hull> {
        Some(Hull::Span {
            inf: Some(Rational::zero()),
            sup: None,
        })
    }
}

/// All rationals in the closed interval `[a, b]`.
#[derive(Debug, Clone)]
pub struct ClosedInterval {
    pub a: Rational,
    pub b: Rational,
}

impl GapOracle for ClosedInterval {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        !self.count_between(lo, hi).unwrap().is_zero()
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        if self.a == self.b {
            return Some(Cardinality::Finite(in_gap(&self.a, lo, hi) as u64));
        }
        let low = match lo {
            Some(l) if *l > self.a => l,
            _ => &self.a,
        };
        let high = match hi {
            Some(h) if *h < self.b => h,
            _ => &self.b,
        };
        Some(if low < high {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(0)
        })
    }

    fn contains(&self, x: &Rational) -> bool {
        &self.a <= x && x <= &self.b
    }

    fn hull(&self) -> Option<Hull> {
        Some(Hull::Span {
            inf: Some(self.a.clone()),
            sup: Some(self.b.clone()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct FiniteSet {
    sorted: Vec<Rational>,
}

impl FiniteSet {
    pub fn new(values: &[Rational]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort();
        sorted.dedup();
        FiniteSet { sorted }
    }
}

impl GapOracle for FiniteSet {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        self.sorted.iter().any(|v| in_gap(v, lo, hi))
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        Some(Cardinality::Finite(count_in_gap(&self.sorted, lo, hi)))
    }

    fn contains(&self, x: &Rational) -> bool {
        self.sorted.binary_search(x).is_ok()
    }

    fn hull(&self) -> Option<Hull> {
        Some(match (self.sorted.first(), self.sorted.last()) {
            (Some(lo), Some(hi)) => Hull::Span {
                inf: Some(lo.clone()),
                sup: Some(hi.clone()),
            },
            _ => Hull::Empty,
        })
    }
}

/// `{2^-m : m ∈ M}` given an oracle for the index set `M ⊆ ℕ`.
pub struct DyadicOracle {
    pub indices: Arc<dyn GapOracle>,
}

impl DyadicOracle {
    /// Closed range of exponents `m` with `lo < 2^-m < hi`; `None` upper end
    /// means unbounded. Returns `None` when the range is empty.
    fn exponent_range(lo: Option<&Rational>, hi: Option<&Rational>) -> Option<(u64, Option<u64>)> {
        let half = Rational::ratio(1, 2).unwrap();
        let m_lo = match hi {
            Some(h) if !h.is_negative() && !h.is_zero() => {
                let mut m = 0u64;
                let mut v = Rational::one();
                while v >= *h {
                    v = &v * &half;
                    m += 1;
                }
                m
            }
            Some(_) => return None,
            None => 0,
        };
        let m_hi = match lo {
            Some(l) if !l.is_negative() && !l.is_zero() => {
                if *l >= Rational::one() {
                    return None;
                }
                let mut m = 0u64;
                let mut v = Rational::one();
                while &v * &half > *l {
                    v = &v * &half;
                    m += 1;
                }
                if m < m_lo {
                    return None;
                }
                Some(m)
            }
            _ => None,
        };
        Some((m_lo, m_hi))
    }

    fn index_gap(m_lo: u64, m_hi: Option<u64>) -> (Rational, Option<Rational>) {
        let half = Rational::ratio(1, 2).unwrap();
        let lo = &Rational::from(m_lo) - &half;
        let hi = m_hi.map(|m| &Rational::from(m) + &half);
        (lo, hi)
    }
}

impl GapOracle for DyadicOracle {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        match Self::exponent_range(lo, hi) {
            None => false,
            Some((m_lo, m_hi)) => {
                let (l, h) = Self::index_gap(m_lo, m_hi);
                self.indices.meets(Some(&l), h.as_ref())
            }
        }
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        match Self::exponent_range(lo, hi) {
            None => Some(Cardinality::Finite(0)),
            Some((m_lo, m_hi)) => {
                let (l, h) = Self::index_gap(m_lo, m_hi);
                self.indices.count_between(Some(&l), h.as_ref())
            }
        }
    }

    fn contains(&self, x: &Rational) -> bool {
        if x.is_negative() || x.is_zero() || !x.numer().is_one() {
            return false;
        }
        let d = x.denom();
        let bits = d.bits();
        if bits == 0 || *d != BigInt::one() << (bits - 1) {
            return false;
        }
        self.indices.contains(&Rational::from(bits - 1))
    }

    fn hull(&self) -> Option<Hull> {
        Some(Hull::Span {
            inf: Some(Rational::zero()),
            sup: Some(Rational::one()),
        })
    }
}

/// The base set with finitely many of its members removed.
pub struct Removed {
    pub base: Arc<dyn GapOracle>,
    pub removed: Vec<Rational>,
}

impl GapOracle for Removed {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        match self.count_between(lo, hi) {
            Some(c) => !c.is_zero(),
            // may overstate, never understates
            None => self.base.meets(lo, hi),
        }
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        let base = self.base.count_between(lo, hi)?;
        Some(base.minus(count_in_gap(&self.removed, lo, hi)))
    }

    fn contains(&self, x: &Rational) -> bool {
        self.base.contains(x) && !self.removed.contains(x)
    }

    fn hull(&self) -> Option<Hull> {
        self.base.hull()
    }
}

/// The base set plus finitely many new points.
pub struct Added {
    pub base: Arc<dyn GapOracle>,
    pub added: Vec<Rational>,
}

impl GapOracle for Added {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        self.added.iter().any(|v| in_gap(v, lo, hi)) || self.base.meets(lo, hi)
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        let base = self.base.count_between(lo, hi)?;
        Some(base.plus(count_in_gap(&self.added, lo, hi)))
    }

    fn contains(&self, x: &Rational) -> bool {
        self.added.contains(x) || self.base.contains(x)
    }

    fn hull(&self) -> Option<Hull> {
        let mut hull = self.base.hull()?;
        for v in &self.added {
            hull = match hull {
                Hull::Empty => Hull::Span {
                    inf: Some(v.clone()),
                    sup: Some(v.clone()),
                },
                Hull::Span { inf, sup } => Hull::Span {
                    inf: inf.map(|i| i.min(v.clone())),
                    sup: sup.map(|s| s.max(v.clone())),
                },
            };
        }
        Some(hull)
    }
}

/// Union of several sets. When `glued` is `Some`, the parts are known to
/// overlap exactly in those points; otherwise overlaps are unknown.
pub struct Union {
    pub parts: Vec<Arc<dyn GapOracle>>,
    pub glued: Option<Vec<Rational>>,
}

impl GapOracle for Union {
    fn meets(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
        self.parts.iter().any(|p| p.meets(lo, hi))
    }

    fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Cardinality> {
        let counts: Option<Vec<Cardinality>> =
            self.parts.iter().map(|p| p.count_between(lo, hi)).collect();
        let counts = counts?;
        if counts.contains(&Cardinality::Infinite) {
            return Some(Cardinality::Infinite);
        }
        if counts.iter().all(|c| c.is_zero()) {
            return Some(Cardinality::Finite(0));
        }
        let glued = self.glued.as_ref()?;
        let total = counts
            .into_iter()
            .fold(Cardinality::Finite(0), Cardinality::sum);
        Some(total.minus(count_in_gap(glued, lo, hi)))
    }

    fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    fn hull(&self) -> Option<Hull> {
        let mut inf: Option<Option<Rational>> = None;
        let mut sup: Option<Option<Rational>> = None;
        for part in &self.parts {
            match part.hull()? {
                Hull::Empty => {}
                Hull::Span { inf: i, sup: s } => {
                    inf = Some(match (inf, i) {
                        (None, i) => i,
                        (Some(Some(a)), Some(b)) => Some(a.min(b)),
                        _ => None,
                    });
                    sup = Some(match (sup, s) {
                        (None, s) => s,
                        (Some(Some(a)), Some(b)) => Some(a.max(b)),
                        _ => None,
                    });
                }
            }
        }
        Some(match (inf, sup) {
            (Some(inf), Some(sup)) => Hull::Span { inf, sup },
            _ => Hull::Empty,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Brute-force count over an explicit finite sample of a family.
    fn brute(sample: &[Rational], lo: Option<&Rational>, hi: Option<&Rational>) -> u64 {
        sample.iter().filter(|v| in_gap(v, lo, hi)).count() as u64
    }

    #[test]
    fn reciprocal_counts_match_enumeration() {
        let harmonic = ReciprocalFamily {
            center: Rational::zero(),
            below: false,
        };
        let sample: Vec<Rational> = (1..=2000).map(|n| Rational::ratio(1, n).unwrap()).collect();
        let bounds = ["-1", "0", "1/7", "1/3", "2/5", "1/2", "1", "3/2"];
        for lo in &bounds {
            for hi in &bounds {
                let (l, h) = (r(lo), r(hi));
                let got = harmonic.count_between(Some(&l), Some(&h)).unwrap();
                if l > Rational::zero() {
                    assert_eq!(
                        got,
                        Cardinality::Finite(brute(&sample, Some(&l), Some(&h))),
                        "({lo},{hi})"
                    );
                } else if h > Rational::zero() {
                    assert_eq!(got, Cardinality::Infinite);
                } else {
                    assert_eq!(got, Cardinality::Finite(0));
                }
            }
        }
        assert!(harmonic.contains(&r("1/9")));
        assert!(!harmonic.contains(&r("2/9")));
        assert!(!harmonic.contains(&r("0")));
    }

    #[test]
    fn descending_family_counts() {
        // 3 - 1/n : 2, 5/2, 8/3, ...
        let fam = ReciprocalFamily {
            center: r("3"),
            below: true,
        };
        let sample: Vec<Rational> = (1..=500)
            .map(|n| &r("3") - &Rational::ratio(1, n).unwrap())
            .collect();
        for (lo, hi) in [("2", "3"), ("1", "5/2"), ("5/2", "11/4"), ("0", "2")] {
            let (l, h) = (r(lo), r(hi));
            let got = fam.count_between(Some(&l), Some(&h)).unwrap();
            if h >= r("3") {
                assert_eq!(got, Cardinality::Infinite);
            } else {
                assert_eq!(got, Cardinality::Finite(brute(&sample, Some(&l), Some(&h))));
            }
        }
        assert!(fam.contains(&r("2")) && fam.contains(&r("8/3")) && !fam.contains(&r("3")));
    }

    #[test]
    fn thirds_counts() {
        let thirds = Multiples {
            step_denominator: 3,
        };
        assert_eq!(
            thirds.count_between(None, Some(&r("0"))),
            Some(Cardinality::Finite(0))
        );
        assert_eq!(
            thirds.count_between(None, Some(&r("1/3"))),
            Some(Cardinality::Finite(1))
        );
        assert_eq!(
            thirds.count_between(Some(&r("0")), Some(&r("1"))),
            Some(Cardinality::Finite(2))
        );
        assert_eq!(
            thirds.count_between(Some(&r("-5")), None),
            Some(Cardinality::Infinite)
        );
        assert!(!thirds.meets(None, Some(&r("0"))));
    }

    #[test]
    fn interval_counts() {
        let unit = ClosedInterval {
            a: r("0"),
            b: r("1"),
        };
        assert_eq!(
            unit.count_between(None, Some(&r("0"))),
            Some(Cardinality::Finite(0))
        );
        assert_eq!(
            unit.count_between(None, Some(&r("1/100"))),
            Some(Cardinality::Infinite)
        );
        assert_eq!(
            unit.count_between(Some(&r("1")), None),
            Some(Cardinality::Finite(0))
        );
        let point = ClosedInterval {
            a: r("1/2"),
            b: r("1/2"),
        };
        assert_eq!(
            point.count_between(None, None),
            Some(Cardinality::Finite(1))
        );
    }

    #[test]
    fn dyadic_counts() {
        let indices: Arc<dyn GapOracle> = Arc::new(FiniteSet::new(&[r("0"), r("2"), r("3")]));
        let dy = DyadicOracle { indices };
        // members 1, 1/4, 1/8
        assert_eq!(dy.count_between(None, None), Some(Cardinality::Finite(3)));
        assert_eq!(
            dy.count_between(Some(&r("1/8")), Some(&r("1"))),
            Some(Cardinality::Finite(1))
        );
        assert_eq!(
            dy.count_between(Some(&r("1/9")), Some(&r("1/4"))),
            Some(Cardinality::Finite(1))
        );
        assert!(dy.contains(&r("1/4")) && !dy.contains(&r("1/2")) && !dy.contains(&r("3/8")));
    }
}
