//! One-coordinate supports and their products.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};

/// A nonempty interval of `ℝ` with finite lower end and possibly infinite upper end.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: ExponentValue,
    lo_closed: bool,
    hi: Option<ExponentValue>,
    hi_closed: bool,
}

impl Interval {
    /// Rejects empty intervals; a degenerate `lo = hi` needs both ends closed.
    pub fn new(
        lo: ExponentValue,
        lo_closed: bool,
        hi: Option<ExponentValue>,
        hi_closed: bool,
    ) -> Result<Self> {
        let interval = Interval {
            lo,
            lo_closed,
            hi_closed: hi.is_some() && hi_closed,
            hi,
        };
        if let Some(hi) = &interval.hi {
            let ok = match interval.lo.compare(hi)? {
                Ordering::Less => true,
                Ordering::Equal => interval.lo_closed && interval.hi_closed,
                Ordering::Greater => false,
            };
            if !ok {
                return Err(Error::EmptyInterval(interval.to_string()));
            }
        }
        Ok(interval)
    }

    /// `[a, ∞)`.
    pub fn closed_ray(a: ExponentValue) -> Self {
        Interval {
            lo: a,
            lo_closed: true,
            hi: None,
            hi_closed: false,
        }
    }

    /// `(a, ∞)`.
    pub fn open_ray(a: ExponentValue) -> Self {
        Interval {
            lo: a,
            lo_closed: false,
            hi: None,
            hi_closed: false,
        }
    }

    /// `{a}`.
    pub fn point(a: ExponentValue) -> Self {
        Interval {
            hi: Some(a.clone()),
            lo: a,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// Bounded interval with the given closedness flags.
    pub fn bounded(
        lo: ExponentValue,
        lo_closed: bool,
        hi: ExponentValue,
        hi_closed: bool,
    ) -> Result<Self> {
        Interval::new(lo, lo_closed, Some(hi), hi_closed)
    }

    pub fn lo(&self) -> &ExponentValue {
        &self.lo
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi(&self) -> Option<&ExponentValue> {
        self.hi.as_ref()
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    /// `[a, ∞)`: the support of a free module of rank one.
    pub fn is_free(&self) -> bool {
        self.lo_closed && self.hi.is_none()
    }

    pub fn is_up_closed(&self) -> bool {
        self.hi.is_none()
    }

    /// The finite endpoints.
    pub fn endpoints(&self) -> impl Iterator<Item = &ExponentValue> {
        std::iter::once(&self.lo).chain(self.hi.iter())
    }

    pub fn shift(&self, by: &ExponentValue) -> Interval {
        Interval {
            lo: &self.lo + by,
            lo_closed: self.lo_closed,
            hi: self.hi.as_ref().map(|h| h + by),
            hi_closed: self.hi_closed,
        }
    }

    /// Direct membership by comparisons (used by oracles; the engine works on cells).
    pub fn contains(&self, x: &ExponentValue) -> Result<bool> {
        let above = match x.compare(&self.lo)? {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        if !above {
            return Ok(false);
        }
        Ok(match &self.hi {
            None => true,
            Some(h) => match x.compare(h)? {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            },
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hi.as_ref() == Some(&self.lo) && self.lo_closed && self.hi_closed {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        match &self.hi {
            None => write!(f, "{open}{},inf)", self.lo),
            Some(h) => {
                let close = if self.hi_closed { ']' } else { ')' };
                write!(f, "{open}{},{h}{close}", self.lo)
            }
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The graded module `k[B]` for a box `B`, a product of intervals.
/// With no intervals this is the field `k` over zero variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoxModule {
    intervals: Vec<Interval>,
}

impl BoxModule {
    pub fn new(intervals: Vec<Interval>) -> Self {
        BoxModule { intervals }
    }

    /// `k` over zero variables, the unit for products.
    pub fn unit() -> Self {
        BoxModule::new(Vec::new())
    }

    /// The free module `R(-b)`, supported on `b + ℝⁿ₊`.
    pub fn free(corner: &ExponentVector) -> Self {
        BoxModule::new(corner.iter().cloned().map(Interval::closed_ray).collect())
    }

    /// The shifted orthant ideal with lower corner `corner`, open along `sigma`.
    pub fn orthant(corner: &ExponentVector, sigma: &[bool]) -> Self {
        BoxModule::new(
            corner
                .iter()
                .zip(sigma)
                .map(|(c, &open)| {
                    if open {
                        Interval::open_ray(c.clone())
                    } else {
                        Interval::closed_ray(c.clone())
                    }
                })
                .collect(),
        )
    }

    /// `R = k[ℝⁿ₊]`.
    pub fn ring(n: usize) -> Self {
        BoxModule::free(&ExponentVector::zeros(n))
    }

    /// The residue field `k = R/𝔪`, supported at the origin.
    pub fn residue_field(n: usize) -> Self {
        BoxModule::new(vec![Interval::point(ExponentValue::zero()); n])
    }

    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    pub fn is_free(&self) -> bool {
        self.intervals.iter().all(Interval::is_free)
    }

    /// Lower corner of the box.
    pub fn corner(&self) -> ExponentVector {
        self.intervals.iter().map(|i| i.lo.clone()).collect()
    }

    /// Coordinates whose lower face is open.
    pub fn open_lower_faces(&self) -> Vec<bool> {
        self.intervals.iter().map(|i| !i.lo_closed).collect()
    }

    /// `k[B] ⊗_k k[B']` on disjoint variables.
    pub fn product(&self, other: &BoxModule) -> BoxModule {
        let mut intervals = self.intervals.clone();
        intervals.extend(other.intervals.iter().cloned());
        BoxModule::new(intervals)
    }

    /// Keep the coordinates listed in `coords`, in that order.
    pub fn select(&self, coords: &[usize]) -> BoxModule {
        BoxModule::new(coords.iter().map(|&i| self.intervals[i].clone()).collect())
    }

    pub fn with_interval(&self, i: usize, interval: Interval) -> BoxModule {
        let mut out = self.clone();
        out.intervals[i] = interval;
        out
    }

    pub fn shift(&self, by: &ExponentVector) -> BoxModule {
        BoxModule::new(
            self.intervals
                .iter()
                .zip(by.iter())
                .map(|(i, b)| i.shift(b))
                .collect(),
        )
    }

    /// Direct membership test by comparisons.
    pub fn contains(&self, degree: &ExponentVector) -> Result<bool> {
        if degree.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: degree.len(),
            });
        }
        for (interval, x) in self.intervals.iter().zip(degree.iter()) {
            if !interval.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Scale every endpoint (used by lattice rescaling).
    pub fn scale(&self, by: &BigRational) -> BoxModule {
        BoxModule::new(
            self.intervals
                .iter()
                .map(|i| Interval {
                    lo: i.lo.scale(by),
                    lo_closed: i.lo_closed,
                    hi: i.hi.as_ref().map(|h| h.scale(by)),
                    hi_closed: i.hi_closed,
                })
                .collect(),
        )
    }
}

impl fmt::Display for BoxModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("k");
        }
        for (i, interval) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{interval}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoxModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{self}]")
    }
}

/// `k[B + O_σ]`: lower faces opened along `sigma`, all upper ends sent to `∞`.
pub fn minkowski_orthant(b: &BoxModule, sigma: &[bool]) -> BoxModule {
    BoxModule::new(
        b.intervals
            .iter()
            .zip(sigma)
            .map(|(i, &open)| Interval {
                lo: i.lo.clone(),
                lo_closed: i.lo_closed && !open,
                hi: None,
                hi_closed: false,
            })
            .collect(),
    )
}
