use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::ordertype::OrderType;
use crate::rational::Rational;

use super::listing::{Listing, RawSource};
use super::oracle::{
    ClosedInterval, DyadicOracle, FiniteSet, GapOracle, Multiples, ReciprocalFamily,
};
use super::transforms::interleave;
use super::{ListingError, SetError};

pub type ListingFactory = Arc<dyn Fn() -> Listing + Send + Sync>;

/// A c.e. set presented by a generating listing, with an optional declared
/// order type and an optional gap oracle.
///
/// Construction is pure: every call to [`SetSpec::listing`] builds a fresh,
/// independent listing that replays the same sequence.
#[derive(Clone)]
pub struct SetSpec {
    label: String,
    factory: ListingFactory,
    descriptor: Option<OrderType>,
    oracle: Option<Arc<dyn GapOracle>>,
    parts: Vec<SetSpec>,
}

impl fmt::Debug for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSpec")
            .field("label", &self.label)
            .field("descriptor", &self.descriptor)
            .field("oracle", &self.oracle.is_some())
            .field("parts", &self.parts.len())
            .finish()
    }
}

impl SetSpec {
    pub fn new<F>(label: impl Into<String>, factory: F) -> Self
    where
        F: Fn() -> Listing + Send + Sync + 'static,
    {
        SetSpec {
            label: label.into(),
            factory: Arc::new(factory),
            descriptor: None,
            oracle: None,
            parts: Vec::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_descriptor(mut self, descriptor: Option<OrderType>) -> Self {
        self.descriptor = descriptor.map(|d| d.normalize());
        self
    }

    pub fn with_oracle(mut self, oracle: Option<Arc<dyn GapOracle>>) -> Self {
        self.oracle = oracle;
        self
    }

    pub(crate) fn with_parts(mut self, parts: Vec<SetSpec>) -> Self {
        self.parts = parts;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn listing(&self) -> Listing {
        (self.factory)()
    }

    pub fn descriptor(&self) -> Option<&OrderType> {
        self.descriptor.as_ref()
    }

    pub fn oracle(&self) -> Option<&Arc<dyn GapOracle>> {
        self.oracle.as_ref()
    }

    /// Union components when this set was built by [`interleave`]; a set that
    /// is not a union is its own single component.
    pub fn components(&self) -> Vec<SetSpec> {
        if self.parts.is_empty() {
            vec![self.clone()]
        } else {
            self.parts.clone()
        }
    }
}

/// `{1/n : n ≥ 1}` listed as `1, 1/2, 1/3, ...`.
pub fn builtin_harmonic() -> SetSpec {
    SetSpec::new("harmonic", || {
        Listing::from_index_fn(|k| Ok(Some(Rational::make(false, 1u32, k + 1).unwrap())))
    })
    .with_descriptor(Some(OrderType::OmegaStar))
    .with_oracle(Some(Arc::new(ReciprocalFamily {
        center: Rational::zero(),
        below: false,
    })))
}

/// `{n/3 : n ≥ 0}` listed as `0, 1/3, 2/3, ...`.
pub fn builtin_thirds() -> SetSpec {
    SetSpec::new("thirds", || {
        Listing::from_index_fn(|k| Ok(Some(Rational::make(false, k, 3u32).unwrap())))
    })
    .with_descriptor(Some(OrderType::Omega))
    .with_oracle(Some(Arc::new(Multiples {
        step_denominator: 3,
    })))
}

/// `{2^-m : m ∈ M}` where `indices` lists `M ⊆ ℕ`.
pub fn builtin_dyadic(indices: &SetSpec) -> SetSpec {
    let source = indices.clone();
    let descriptor = indices.descriptor().map(|d| d.reverse());
    let oracle = indices
        .oracle()
        .map(|o| Arc::new(DyadicOracle { indices: o.clone() }) as Arc<dyn GapOracle>);
    SetSpec::new(format!("dyadic({})", indices.label()), move || {
        let mut inner = source.listing();
        Listing::from_index_fn(move |k| {
            let Some(m) = inner.get(k as usize)? else {
                return Ok(None);
            };
            if !m.is_integer() || m.is_negative() {
                return Err(ListingError::NotNatural(m));
            }
            let exp = m
                .to_u64()
                .ok_or_else(|| ListingError::NotNatural(m.clone()))?;
            let den = BigUint::one() << exp;
            Ok(Some(Rational::make(false, 1u32, den).unwrap()))
        })
    })
    .with_descriptor(descriptor)
    .with_oracle(oracle)
}

/// The block `T_i`: ascending from `i-1` towards `i` for odd `i`, descending
/// from `i` towards `i-1` for even `i`. Listing index `k` uses `n = k + 1`.
pub fn build_t(i: u64) -> Result<SetSpec, SetError> {
    if i < 1 {
        return Err(SetError::BadFamilyIndex(i));
    }
    let odd = i % 2 == 1;
    let spec = SetSpec::new(format!("T:{i}"), move || {
        let top = Rational::from(i);
        let base = Rational::from(i - 1);
        Listing::from_index_fn(move |k| {
            let n = k + 1;
            let frac = Rational::make(false, n - 1, n).unwrap();
            Ok(Some(if odd { &base + &frac } else { &top - &frac }))
        })
    });
    let (descriptor, oracle) = if odd {
        (
            OrderType::Omega,
            ReciprocalFamily {
                center: Rational::from(i),
                below: true,
            },
        )
    } else {
        (
            OrderType::OmegaStar,
            ReciprocalFamily {
                center: Rational::from(i - 1),
                below: false,
            },
        )
    };
    Ok(spec
        .with_descriptor(Some(descriptor))
        .with_oracle(Some(Arc::new(oracle))))
}

/// `A_i = T_1 ∪ ... ∪ T_i`, listed by strict round-robin over the blocks.
pub fn build_a(i: u64) -> Result<SetSpec, SetError> {
    if i < 1 {
        return Err(SetError::BadFamilyIndex(i));
    }
    let blocks = (1..=i).map(build_t).collect::<Result<Vec<_>, _>>()?;
    Ok(interleave(&blocks)?.with_label(format!("A:{i}")))
}

/// Walks `ℚ ∩ [a, b]` by increasing denominator, then increasing numerator,
/// emitting each value in lowest terms exactly once.
struct IntervalWalk {
    a: Rational,
    b: Rational,
    q: u64,
    p: BigInt,
    p_end: BigInt,
}

impl IntervalWalk {
    fn new(a: Rational, b: Rational) -> Self {
        let mut walk = IntervalWalk {
            a,
            b,
            q: 0,
            p: BigInt::one(),
            p_end: BigInt::from(0),
        };
        walk.next_row();
        walk
    }

    fn next_row(&mut self) {
        self.q += 1;
        let q = Rational::from(self.q);
        self.p = (&self.a * &q).ceil();
        self.p_end = (&self.b * &q).floor();
    }
}

impl RawSource for IntervalWalk {
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        loop {
            while self.p > self.p_end {
                self.next_row();
            }
            let p = self.p.clone();
            self.p += 1;
            let q = BigInt::from(self.q);
            if p.gcd(&q).is_one() {
                return Ok(Some(
                    Rational::from(p).checked_div(&Rational::from(q)).unwrap(),
                ));
            }
        }
    }
}

/// Every rational in `[a, b]`.
pub fn rationals_in_interval(a: Rational, b: Rational) -> Result<SetSpec, SetError> {
    if a > b {
        return Err(SetError::EmptyInterval { a, b });
    }
    let label = format!("interval:{a},{b}");
    let oracle: Arc<dyn GapOracle> = Arc::new(ClosedInterval {
        a: a.clone(),
        b: b.clone(),
    });
    if a == b {
        return Ok(
            SetSpec::new(label, move || Listing::from_values(vec![a.clone()]))
                .with_descriptor(Some(OrderType::Fin(1)))
                .with_oracle(Some(oracle)),
        );
    }
    Ok(SetSpec::new(label, move || {
        Listing::new(IntervalWalk::new(a.clone(), b.clone()))
    })
    .with_descriptor(Some(OrderType::Dense {
        left: true,
        right: true,
    }))
    .with_oracle(Some(oracle)))
}

/// Exactly `values`, in the given order.
pub fn finite_listing(values: Vec<Rational>) -> Result<SetSpec, SetError> {
    let mut seen = HashSet::new();
    for v in &values {
        if !seen.insert(v) {
            return Err(SetError::Duplicate(v.clone()));
        }
    }
    let texts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    let oracle: Arc<dyn GapOracle> = Arc::new(FiniteSet::new(&values));
    let count = values.len() as u64;
    Ok(
        SetSpec::new(format!("finite:{}", texts.join(",")), move || {
            Listing::from_values(values.clone())
        })
        .with_descriptor(Some(OrderType::Fin(count)))
        .with_oracle(Some(oracle)),
    )
}
