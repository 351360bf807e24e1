use std::collections::HashSet;
use std::fmt;

use crate::rational::Rational;

use super::ListingError;

/// A raw generator. It may repeat values; [`Listing`] removes repeats.
pub trait RawSource: Send {
    /// `Ok(None)` means the generator is finished for good.
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError>;
}

/// Consecutive raw repeats tolerated before a source is treated as finished.
pub const DEFAULT_MAX_SKIP: usize = 1 << 16;

/// A deterministic, injective stream of rationals with a memoized prefix.
///
/// Index `k` is produced once and then replayed from the memo. Values the
/// raw source repeats are skipped, keeping first-occurrence order.
pub struct Listing {
    source: Box<dyn RawSource>,
    memo: Vec<Rational>,
    seen: HashSet<Rational>,
    exhausted: bool,
    failure: Option<ListingError>,
    max_skip: usize,
}

impl fmt::Debug for Listing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Listing")
            .field("memoized", &self.memo.len())
            .field("exhausted", &self.exhausted)
            .finish()
    }
}

impl Listing {
    pub fn new(source: impl RawSource + 'static) -> Self {
        Listing {
            source: Box::new(source),
            memo: Vec::new(),
            seen: HashSet::new(),
            exhausted: false,
            failure: None,
            max_skip: DEFAULT_MAX_SKIP,
        }
    }

    /// Listing driven by an index formula; `None` ends the stream.
    pub fn from_index_fn<F>(f: F) -> Self
    where
        F: FnMut(u64) -> Result<Option<Rational>, ListingError> + Send + 'static,
    {
        Listing::new(IndexFn { f, next: 0 })
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        Listing::new(VecSource { values, pos: 0 })
    }

    pub fn empty() -> Self {
        Listing::from_values(Vec::new())
    }

    pub fn with_max_skip(mut self, max_skip: usize) -> Self {
        self.max_skip = max_skip.max(1);
        self
    }

    fn pull(&mut self) -> Result<bool, ListingError> {
        if let Some(err) = &self.failure {
            return Err(err.clone());
        }
        if self.exhausted {
            return Ok(false);
        }
        let mut skipped = 0;
        loop {
            match self.source.next_raw() {
                Ok(Some(v)) => {
                    if self.seen.insert(v.clone()) {
                        self.memo.push(v);
                        return Ok(true);
                    }
                    skipped += 1;
                    if skipped >= self.max_skip {
                        self.exhausted = true;
                        return Ok(false);
                    }
                }
                Ok(None) => {
                    self.exhausted = true;
                    return Ok(false);
                }
                Err(err) => {
                    self.failure = Some(err.clone());
                    return Err(err);
                }
            }
        }
    }

    /// Value at index `k`, or `None` past the end of a finite listing.
    pub fn get(&mut self, k: usize) -> Result<Option<Rational>, ListingError> {
        while self.memo.len() <= k {
            if !self.pull()? {
                return Ok(None);
            }
        }
        Ok(Some(self.memo[k].clone()))
    }

    /// Produces up to `len` values and returns how many exist.
    pub fn fill(&mut self, len: usize) -> Result<usize, ListingError> {
        while self.memo.len() < len {
            if !self.pull()? {
                break;
            }
        }
        Ok(self.memo.len().min(len))
    }

    /// The first `len` values; fails if the listing is shorter.
    pub fn prefix(&mut self, len: usize) -> Result<&[Rational], ListingError> {
        let available = self.fill(len)?;
        if available < len {
            return Err(ListingError::TooShort {
                wanted: len,
                available,
            });
        }
        Ok(&self.memo[..len])
    }

    /// At most `len` values (fewer when the listing ends first).
    pub fn take(&mut self, len: usize) -> Result<&[Rational], ListingError> {
        let available = self.fill(len)?;
        Ok(&self.memo[..available])
    }

    pub fn memoized(&self) -> &[Rational] {
        &self.memo
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn iter(&mut self) -> ListingIter<'_> {
        ListingIter {
            listing: self,
            pos: 0,
        }
    }
}

/// Walks a listing from index 0, stopping at its end or at the first error.
pub struct ListingIter<'a> {
    listing: &'a mut Listing,
    pos: usize,
}

impl Iterator for ListingIter<'_> {
    type Item = Result<Rational, ListingError>;

    fn next(&mut self) -> Option<Self::Item> {
        let item = self.listing.get(self.pos).transpose()?;
        self.pos += 1;
        Some(item)
    }
}

struct IndexFn<F> {
    f: F,
    next: u64,
}

impl<F> RawSource for IndexFn<F>
where
    F: FnMut(u64) -> Result<Option<Rational>, ListingError> + Send,
{
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        let v = (self.f)(self.next)?;
        self.next += 1;
        Ok(v)
    }
}

struct VecSource {
    values: Vec<Rational>,
    pos: usize,
}

impl RawSource for VecSource {
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        let v = self.values.get(self.pos).cloned();
        self.pos += 1;
        Ok(v)
    }
}

struct Shifted {
    inner: Listing,
    offset: usize,
    pos: usize,
}

impl RawSource for Shifted {
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        let v = self.inner.get(self.offset + self.pos)?;
        self.pos += 1;
        Ok(v)
    }
}

/// `shift(h, m)(i) = h(i + m)`.
pub fn shift(h: Listing, m: usize) -> Listing {
    if m == 0 {
        return h;
    }
    Listing::new(Shifted {
        inner: h,
        offset: m,
        pos: 0,
    })
}

pub(crate) struct Filtered {
    pub(crate) inner: Listing,
    pub(crate) drop: HashSet<Rational>,
    pub(crate) pos: usize,
}

impl RawSource for Filtered {
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        loop {
            let v = self.inner.get(self.pos)?;
            self.pos += 1;
            match v {
                Some(x) if self.drop.contains(&x) => continue,
                other => return Ok(other),
            }
        }
    }
}

pub(crate) struct Prepended {
    pub(crate) head: Vec<Rational>,
    pub(crate) inner: Listing,
    pub(crate) pos: usize,
}

impl RawSource for Prepended {
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        let k = self.pos;
        self.pos += 1;
        if k < self.head.len() {
            return Ok(Some(self.head[k].clone()));
        }
        self.inner.get(k - self.head.len())
    }
}

/// Strict round-robin over several listings; finished inputs drop out.
pub(crate) struct RoundRobin {
    pub(crate) inputs: Vec<Listing>,
    pub(crate) cursor: Vec<usize>,
    pub(crate) done: Vec<bool>,
    pub(crate) turn: usize,
}

impl RoundRobin {
    pub(crate) fn new(inputs: Vec<Listing>) -> Self {
        let n = inputs.len();
        RoundRobin {
            inputs,
            cursor: vec![0; n],
            done: vec![false; n],
            turn: 0,
        }
    }
}

impl RawSource for RoundRobin {
    fn next_raw(&mut self) -> Result<Option<Rational>, ListingError> {
        let n = self.inputs.len();
        for _ in 0..n {
            let k = self.turn;
            self.turn = (self.turn + 1) % n;
            if self.done[k] {
                continue;
            }
            match self.inputs[k].get(self.cursor[k])? {
                Some(v) => {
                    self.cursor[k] += 1;
                    return Ok(Some(v));
                }
                None => self.done[k] = true,
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(k: u64) -> Rational {
        Rational::from(k)
    }

    #[test]
    fn replay_is_deterministic() {
        let mut h = Listing::from_index_fn(|k| Ok(Some(nat(k * k))));
        let first: Vec<_> = h.prefix(20).unwrap().to_vec();
        assert_eq!(h.get(7).unwrap(), Some(nat(49)));
        assert_eq!(h.prefix(20).unwrap(), &first[..]);
    }

    #[test]
    fn duplicates_are_skipped() {
        let mut h = Listing::from_index_fn(|k| Ok(Some(nat(k / 3))));
        assert_eq!(h.prefix(4).unwrap(), &[nat(0), nat(1), nat(2), nat(3)]);
    }

    #[test]
    fn constant_source_becomes_finite() {
        let mut h = Listing::from_index_fn(|_| Ok(Some(nat(1)))).with_max_skip(100);
        assert_eq!(h.take(10).unwrap(), &[nat(1)]);
        assert!(h.is_exhausted());
        assert_eq!(
            h.prefix(2).unwrap_err(),
            ListingError::TooShort {
                wanted: 2,
                available: 1
            }
        );
    }

    #[test]
    fn shift_examples() {
        let base = || Listing::from_index_fn(|k| Ok(Some(nat(k))));
        let mut s0 = shift(base(), 0);
        assert_eq!(s0.prefix(3).unwrap(), &[nat(0), nat(1), nat(2)]);
        let mut s = shift(shift(base(), 2), 3);
        for i in 0..10 {
            assert_eq!(s.get(i).unwrap(), Some(nat(i as u64 + 5)));
        }
    }

    #[test]
    fn iter_stops_at_end() {
        let mut h = Listing::from_values(vec![nat(3), nat(1)]);
        let all: Vec<_> = h.iter().collect::<Result<_, _>>().unwrap();
        assert_eq!(all, vec![nat(3), nat(1)]);
    }
}
