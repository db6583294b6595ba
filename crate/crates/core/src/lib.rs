//! Smart Sort laboratory.
//!
//! * [`sort`]: the Smart Sort driver and its partition routine, which repairs
//!   skewed quicksort partitions by balancing a max-heap against a min-heap.
//! * [`heap`]: Floyd heap construction and sift-down over arbitrary sub-ranges.
//! * [`baselines`]: classic first-pivot quicksort, Floyd heapsort and an
//!   independent merge sort used as a test oracle.
//! * [`input_gen`]: seeded generators for six input distributions and a few
//!   adversarial patterns.
//! * [`metrics`]: operation counters and wall-clock measurement.
//! * [`experiment`]: size sweeps, growth-model fitting ("empirical O") and
//!   report files.
//!
//! Indices in [`Segment`] are 1-based and inclusive, so `Segment::new(1, n)`
//! covers a whole buffer of length `n`.

pub mod baselines;
pub mod counters;
pub mod experiment;
pub mod heap;
pub mod input_gen;
pub mod metrics;
pub mod sort;

pub use counters::Counters;
pub use sort::{
    partition_first_pivot, smart_partition, smart_partition_probed, smart_sort, smart_sort_counted,
    smart_sort_observed, PartitionOutcome, Segment, SkewSide, SortConfig, SortError, SortObserver,
};
