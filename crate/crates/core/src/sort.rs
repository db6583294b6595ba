//! Smart Sort: quicksort on a first-element pivot, where a badly skewed
//! partition is repaired by building a max-heap and a min-heap on the two
//! halves around the midpoint and exchanging their roots until every element
//! of the left half is no larger than every element of the right half.

use std::fmt;

use thiserror::Error;

use crate::counters::Counters;
use crate::heap::{adjust_max_heap, adjust_min_heap, build_max_heap, build_min_heap};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SortError {
    #[error("threshold {name} = {value} is outside [0, 0.5]")]
    InvalidThreshold { name: &'static str, value: f64 },
    #[error("segment [{low}, {high}] is empty")]
    EmptySegment { low: usize, high: usize },
    #[error("segment [{low}, {high}] does not fit a buffer of length {len}")]
    OutOfBounds { low: usize, high: usize, len: usize },
}

/// Skew thresholds. A partition whose pivot lands within `t1 * range` of the
/// left end (or `t2 * range` of the right end) is rebalanced with heaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SortConfig {
    t1: f64,
    t2: f64,
}

impl SortConfig {
    pub const DEFAULT_THRESHOLD: f64 = 0.01;

    pub fn new(t1: f64, t2: f64) -> Result<Self, SortError> {
        for (name, value) in [("t1", t1), ("t2", t2)] {
            if !(0.0..=0.5).contains(&value) {
                return Err(SortError::InvalidThreshold { name, value });
            }
        }
        Ok(Self { t1, t2 })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }
}

impl Default for SortConfig {
    fn default() -> Self {
        Self {
            t1: Self::DEFAULT_THRESHOLD,
            t2: Self::DEFAULT_THRESHOLD,
        }
    }
}

/// Inclusive 1-based index range `[low, high]`; empty iff `low > high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub low: usize,
    pub high: usize,
}

impl Segment {
    /// Panics if `low` is zero.
    pub fn new(low: usize, high: usize) -> Self {
        assert!(low >= 1, "segments are 1-based");
        Self { low, high }
    }

    /// The segment covering a whole buffer of `len` elements.
    pub fn whole(len: usize) -> Self {
        Self { low: 1, high: len }
    }

    pub fn is_empty(&self) -> bool {
        self.low > self.high
    }

    /// Number of elements; 0 when empty.
    pub fn len(&self) -> usize {
        (self.high + 1).saturating_sub(self.low)
    }

    /// `high - low + 1`. Only meaningful for non-empty segments.
    pub fn range(&self) -> usize {
        self.len()
    }

    pub fn mid(&self) -> usize {
        (self.low + self.high) / 2
    }

    pub(crate) fn slice<'a, T>(&self, buf: &'a [T]) -> Option<&'a [T]> {
        (!self.is_empty()).then(|| &buf[self.low - 1..self.high])
    }

    pub(crate) fn slice_mut<'a, T>(&self, buf: &'a mut [T]) -> Option<&'a mut [T]> {
        (!self.is_empty()).then(|| &mut buf[self.low - 1..self.high])
    }

    fn check<T>(&self, buf: &[T]) -> Result<(), SortError> {
        if self.is_empty() {
            return Err(SortError::EmptySegment {
                low: self.low,
                high: self.high,
            });
        }
        if self.high > buf.len() {
            return Err(SortError::OutOfBounds {
                low: self.low,
                high: self.high,
                len: buf.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.low, self.high)
    }
}

/// Which skew test fired for a partition, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkewSide {
    None,
    /// Pivot close to the left end; heaps over `[J+1, mid]` and `[mid+1, high]`.
    Left,
    /// Pivot close to the right end; heaps over `[low, mid]` and `[mid+1, J-1]`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionOutcome {
    /// Final position of the pivot (1-based).
    pub pivot_index: usize,
    pub skew_side: SkewSide,
}

impl PartitionOutcome {
    /// True if the heap balancing ran, in which case the segment is split at
    /// its midpoint rather than at the pivot.
    pub fn balanced_by_heaps(&self) -> bool {
        self.skew_side != SkewSide::None
    }
}

/// Hooks into Smart Sort, used by tests and instrumentation. All methods
/// default to doing nothing.
pub trait SortObserver<T> {
    /// Both heaps are built; no root has been exchanged yet.
    fn heaps_built(&mut self, _buf: &[T], _max_heap: Segment, _min_heap: Segment) {}

    /// The two heap roots were just exchanged.
    fn root_exchanged(&mut self, _buf: &[T], _max_heap: Segment, _min_heap: Segment) {}

    /// A smart partition of `seg` finished with `outcome`.
    fn partitioned(&mut self, _buf: &[T], _seg: Segment, _outcome: PartitionOutcome) {}
}

impl<T> SortObserver<T> for () {}

#[inline]
fn exchange<T>(buf: &mut [T], i: usize, j: usize, counters: &mut Counters) {
    counters.swap(buf, i - 1, j - 1);
}

/// Partitions `seg` around its first element.
///
/// On return `buf[J]` holds the original `buf[low]`, everything in
/// `[low, J-1]` is `<=` it and everything in `[J+1, high]` is `>=` it.
pub fn partition_first_pivot<T: PartialOrd>(
    buf: &mut [T],
    seg: Segment,
    counters: &mut Counters,
) -> Result<usize, SortError> {
    seg.check(buf)?;
    Ok(partition(buf, seg, counters))
}

// Hoare scan from both ends; both scans stop on keys equal to the pivot, which
// keeps runs of duplicates splitting near the middle.
pub(crate) fn partition<T: PartialOrd>(buf: &mut [T], seg: Segment, counters: &mut Counters) -> usize {
    counters.partition_calls += 1;
    let (low, high) = (seg.low - 1, seg.high - 1);
    let mut i = low;
    let mut j = high + 1;
    loop {
        loop {
            i += 1;
            if i > high || !counters.less(&buf[i], &buf[low]) {
                break;
            }
        }
        loop {
            j -= 1;
            if !counters.less(&buf[low], &buf[j]) {
                break;
            }
        }
        if i >= j {
            break;
        }
        counters.swap(buf, i, j);
    }
    counters.swap(buf, low, j);
    j + 1
}

fn skew_test(seg: Segment, pivot: usize, config: &SortConfig) -> SkewSide {
    let (low, high, range) = (seg.low as f64, seg.high as f64, seg.range() as f64);
    let j = pivot as f64;
    if j <= low + config.t1 * range {
        SkewSide::Left
    } else if j >= high - config.t2 * range {
        SkewSide::Right
    } else {
        SkewSide::None
    }
}

/// Heap segments for a skewed partition, or `None` when the balancing cannot
/// establish the midpoint split (tiny segment or an empty heap).
fn heap_segments(seg: Segment, pivot: usize, side: SkewSide) -> Option<(Segment, Segment)> {
    if seg.range() < 4 {
        return None;
    }
    let mid = seg.mid();
    let (max_heap, min_heap) = match side {
        SkewSide::None => return None,
        SkewSide::Left => (Segment::new(pivot + 1, mid), Segment::new(mid + 1, seg.high)),
        SkewSide::Right => (Segment::new(seg.low, mid), Segment::new(mid + 1, pivot - 1)),
    };
    (!max_heap.is_empty() && !min_heap.is_empty()).then_some((max_heap, min_heap))
}

/// Smart partition of a non-empty `seg`.
///
/// When the outcome reports a skew side, `buf[mid]` is the maximum of
/// `[low, mid]`, `buf[mid+1]` is the minimum of `[mid+1, high]` and the former
/// is `<=` the latter. Otherwise the plain partition postcondition holds
/// around `pivot_index`.
pub fn smart_partition<T: PartialOrd>(
    buf: &mut [T],
    seg: Segment,
    config: &SortConfig,
    counters: &mut Counters,
) -> Result<PartitionOutcome, SortError> {
    smart_partition_probed(buf, seg, config, counters, &mut ())
}

/// [`smart_partition`] reporting to `probe`.
pub fn smart_partition_probed<T: PartialOrd, P: SortObserver<T>>(
    buf: &mut [T],
    seg: Segment,
    config: &SortConfig,
    counters: &mut Counters,
    probe: &mut P,
) -> Result<PartitionOutcome, SortError> {
    seg.check(buf)?;
    Ok(smart_partition_inner(buf, seg, config, counters, probe))
}

fn smart_partition_inner<T: PartialOrd, P: SortObserver<T>>(
    buf: &mut [T],
    seg: Segment,
    config: &SortConfig,
    counters: &mut Counters,
    probe: &mut P,
) -> PartitionOutcome {
    let pivot_index = partition(buf, seg, counters);
    let side = skew_test(seg, pivot_index, config);
    let Some((max_heap, min_heap)) = heap_segments(seg, pivot_index, side) else {
        let outcome = PartitionOutcome {
            pivot_index,
            skew_side: SkewSide::None,
        };
        probe.partitioned(buf, seg, outcome);
        return outcome;
    };
    counters.balance_activations += 1;

    build_max_heap(buf, max_heap, counters);
    build_min_heap(buf, min_heap, counters);
    probe.heaps_built(buf, max_heap, min_heap);
    let (max_root, min_root) = (max_heap.low, min_heap.low);
    while counters.less(&buf[min_root - 1], &buf[max_root - 1]) {
        exchange(buf, max_root, min_root, counters);
        counters.root_exchanges += 1;
        probe.root_exchanged(buf, max_heap, min_heap);
        adjust_max_heap(buf, max_heap, counters);
        adjust_min_heap(buf, min_heap, counters);
    }
    // Left block maximum goes to mid, next to the right block minimum.
    exchange(buf, max_root, seg.mid(), counters);

    let outcome = PartitionOutcome {
        pivot_index,
        skew_side: side,
    };
    probe.partitioned(buf, seg, outcome);
    outcome
}

/// Sorts `buf` ascending.
///
/// Keys must be totally ordered in practice: NaN or other incomparable values
/// leave the output order unspecified (it is still a permutation).
pub fn smart_sort<T: PartialOrd>(buf: &mut [T], config: &SortConfig, counters: &mut Counters) {
    sort_segment(buf, Segment::whole(buf.len()), config, counters, &mut (), 0);
}

/// [`smart_sort`] reporting every partition to `observer`.
pub fn smart_sort_observed<T: PartialOrd, O: SortObserver<T>>(
    buf: &mut [T],
    config: &SortConfig,
    counters: &mut Counters,
    observer: &mut O,
) {
    sort_segment(buf, Segment::whole(buf.len()), config, counters, observer, 0);
}

/// Convenience wrapper returning a fresh set of counters.
pub fn smart_sort_counted<T: PartialOrd>(buf: &mut [T], config: &SortConfig) -> Counters {
    let mut counters = Counters::new();
    smart_sort(buf, config, &mut counters);
    counters
}

// Recurses into the smaller part and loops on the larger one, so the native
// stack stays logarithmic. `depth` tracks the logical recursion depth.
fn sort_segment<T: PartialOrd, O: SortObserver<T>>(
    buf: &mut [T],
    mut seg: Segment,
    config: &SortConfig,
    counters: &mut Counters,
    observer: &mut O,
    mut depth: u64,
) {
    while seg.low < seg.high {
        depth += 1;
        counters.observe_depth(depth);
        let outcome = smart_partition_inner(buf, seg, config, counters, observer);
        let (left, right) = if outcome.balanced_by_heaps() {
            let mid = seg.mid();
            (Segment::new(seg.low, mid - 1), Segment::new(mid + 2, seg.high))
        } else {
            let j = outcome.pivot_index;
            (Segment::new(seg.low, j - 1), Segment::new(j + 1, seg.high))
        };
        let (smaller, larger) = if left.len() <= right.len() {
            (left, right)
        } else {
            (right, left)
        };
        sort_segment(buf, smaller, config, counters, observer, depth);
        seg = larger;
    }
}
