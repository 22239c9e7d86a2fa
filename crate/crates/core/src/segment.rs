//! Segments, good-parity parameters and the order relations between segments.
//!
//! A segment `[b, e]` is the decreasing run `b, b - 1, ..., e` of half-integers.
//! A parameter ψ is a list of segments `ν_1, ..., ν_r` whose reference order is
//! admissible: no segment is preceded by a later one.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangements::Permutation;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub b: HalfInt,
    pub e: HalfInt,
}

impl Segment {
    pub fn new(b: HalfInt, e: HalfInt) -> Result<Self> {
        if b < e || (b - e).doubled() % 2 != 0 {
            return Err(Error::InvalidSegment { b, e });
        }
        Ok(Segment { b, e })
    }

    /// The segment of length `m` centred at `a/2`: `[(a+m-1)/2, (a-m+1)/2]`.
    pub fn from_component(a: i64, m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::InvalidComponent(m));
        }
        Ok(Segment {
            b: HalfInt::from_doubled(a + m - 1),
            e: HalfInt::from_doubled(a - m + 1),
        })
    }

    /// Length `m = b - e + 1`. Never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> i64 {
        (self.b - self.e).doubled() / 2 + 1
    }

    /// `a = b + e`, always an integer.
    pub fn a(&self) -> i64 {
        (self.b + self.e).doubled() / 2
    }

    /// Whether the entries are integers (as opposed to strict half-integers).
    pub fn is_integral(&self) -> bool {
        self.b.is_integer()
    }

    /// Strict precedence `self > other`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.b > other.b && self.e > other.e
    }

    pub fn weakly_precedes(&self, other: &Segment) -> bool {
        self.b >= other.b && self.e >= other.e
    }

    /// `self ⊇ other`.
    pub fn contains_segment(&self, other: &Segment) -> bool {
        self.b >= other.b && self.e <= other.e
    }

    pub fn entries(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len()).map(move |t| self.b - t)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.b, self.e)
    }
}

/// Number of common entries of two segments.
pub fn intersection_size(s: &Segment, t: &Segment) -> i64 {
    if s.is_integral() != t.is_integral() {
        return 0;
    }
    let top = s.b.min(t.b);
    let bottom = s.e.max(t.e);
    ((top - bottom).doubled() / 2 + 1).max(0)
}

/// How segment `i` sits relative to segment `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Precedes,
    PrecededBy,
    Contains,
    Contained,
}

impl Relation {
    pub fn inverse(self) -> Relation {
        match self {
            Relation::Precedes => Relation::PrecededBy,
            Relation::PrecededBy => Relation::Precedes,
            Relation::Contains => Relation::Contained,
            Relation::Contained => Relation::Contains,
        }
    }

    pub fn is_containment(self) -> bool {
        matches!(self, Relation::Contains | Relation::Contained)
    }
}

/// Relation between two segments at distinct positions; equal segments are
/// resolved so that the one at the smaller index contains the other.
pub fn relation_of(si: &Segment, sj: &Segment, i_first: bool) -> Relation {
    if si.precedes(sj) {
        Relation::Precedes
    } else if sj.precedes(si) {
        Relation::PrecededBy
    } else if si == sj {
        if i_first {
            Relation::Contains
        } else {
            Relation::Contained
        }
    } else if si.contains_segment(sj) {
        Relation::Contains
    } else {
        Relation::Contained
    }
}

/// The Arthur parameter ψ: segments in an admissible reference order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GoodParityParameter {
    segments: Vec<Segment>,
    strict_parity: bool,
}

impl GoodParityParameter {
    /// Validates the reference order. All segments must share integrality;
    /// with `strict_parity`, each `a_i + m_i` must have the parity of `n`.
    pub fn new(segments: Vec<Segment>, strict_parity: bool) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::EmptyParameter);
        }
        if let Some(k) = segments
            .iter()
            .position(|s| s.is_integral() != segments[0].is_integral())
        {
            return Err(Error::MixedIntegrality {
                first: 0,
                second: k,
            });
        }
        let n: i64 = segments.iter().map(Segment::len).sum();
        if strict_parity {
            for (index, s) in segments.iter().enumerate() {
                let sum = s.a() + s.len();
                if (sum - n).rem_euclid(2) != 0 {
                    return Err(Error::ParityViolation { index, sum, n });
                }
            }
        }
        for later in 0..segments.len() {
            for earlier in 0..later {
                if segments[later].precedes(&segments[earlier]) {
                    return Err(Error::InadmissibleOrder { earlier, later });
                }
            }
        }
        Ok(GoodParityParameter {
            segments,
            strict_parity,
        })
    }

    /// Builds ψ from `(a_i, m_i)` pairs.
    pub fn from_components(components: &[(i64, i64)], strict_parity: bool) -> Result<Self> {
        let segments = components
            .iter()
            .map(|&(a, m)| Segment::from_component(a, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments, strict_parity)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, i: usize) -> &Segment {
        &self.segments[i]
    }

    pub fn strict_parity(&self) -> bool {
        self.strict_parity
    }

    pub fn r(&self) -> usize {
        self.segments.len()
    }

    pub fn n(&self) -> i64 {
        self.segments.iter().map(Segment::len).sum()
    }

    pub fn m(&self, i: usize) -> i64 {
        self.segments[i].len()
    }

    pub fn lengths(&self) -> Vec<i64> {
        self.segments.iter().map(Segment::len).collect()
    }

    /// ψ re-listed along an admissible permutation: position `h` gets `ν_{σ(h)}`.
    /// Equal segments are tie-broken by their new positions.
    pub fn rearranged(&self, sigma: &Permutation) -> Result<Self> {
        self.check_size(sigma.len())?;
        let segments = sigma.images().iter().map(|&i| self.segments[i]).collect();
        Self::new(segments, self.strict_parity)
    }

    pub(crate) fn check_size(&self, got: usize) -> Result<()> {
        if got != self.r() {
            return Err(Error::SizeMismatch {
                expected: self.r(),
                got,
            });
        }
        Ok(())
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == j || i >= self.r() || j >= self.r() {
            return Err(Error::InvalidPair(i, j));
        }
        Ok(())
    }

    /// Relation of `ν_i` to `ν_j`.
    pub fn relation(&self, i: usize, j: usize) -> Result<Relation> {
        self.check_pair(i, j)?;
        Ok(self.rel(i, j))
    }

    pub(crate) fn rel(&self, i: usize, j: usize) -> Relation {
        relation_of(&self.segments[i], &self.segments[j], i < j)
    }

    /// Whether `ν_i`, `ν_j` are neighbours: related with nothing strictly between
    /// them in the same relation.
    pub fn neighbors(&self, i: usize, j: usize) -> Result<bool> {
        self.check_pair(i, j)?;
        let (big, small, rel) = match self.rel(i, j) {
            Relation::Precedes => (i, j, Relation::Precedes),
            Relation::PrecededBy => (j, i, Relation::Precedes),
            Relation::Contains => (i, j, Relation::Contains),
            Relation::Contained => (j, i, Relation::Contains),
        };
        let between = (0..self.r())
            .filter(|&k| k != i && k != j)
            .any(|k| self.rel(big, k) == rel && self.rel(k, small) == rel);
        Ok(!between)
    }

    /// `λ_i = (a_i + m_i - n)/2 + Σ_{j<i} m_j`.
    pub fn lambda_values(&self) -> Vec<HalfInt> {
        let n = self.n();
        let mut before = 0;
        self.segments
            .iter()
            .map(|s| {
                let lambda = HalfInt::from_doubled(s.a() + s.len() - n) + before;
                before += s.len();
                lambda
            })
            .collect()
    }

    /// Which of the four range conditions hold for the arrangement `ν^σ`.
    pub fn range_classify(&self, sigma: &Permutation) -> Result<BTreeSet<RangeLabel>> {
        self.check_size(sigma.len())?;
        let arranged: Vec<Segment> = sigma.images().iter().map(|&i| self.segments[i]).collect();
        let mut labels = BTreeSet::new();
        if !crate::arrangements::is_admissible_arrangement(&arranged) {
            return Ok(labels);
        }
        labels.insert(RangeLabel::Mediocre);
        let pairs = || arranged.windows(2);
        if pairs().all(|w| w[0].a() >= w[1].a()) {
            labels.insert(RangeLabel::WeaklyFair);
        }
        if pairs().all(|w| w[0].weakly_precedes(&w[1])) {
            labels.insert(RangeLabel::Nice);
        }
        if pairs().all(|w| w[0].e > w[1].b) {
            labels.insert(RangeLabel::Good);
        }
        Ok(labels)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RangeLabel {
    Good,
    Nice,
    WeaklyFair,
    Mediocre,
}
