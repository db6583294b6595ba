use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

/// Operation counts collected during one sort invocation.
///
/// An exchange of two distinct positions costs three assignments.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub comparisons: u64,
    pub assignments: u64,
    pub partition_calls: u64,
    pub balance_activations: u64,
    pub root_exchanges: u64,
    pub max_recursion_depth: u64,
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    /// `a < b`, counted.
    #[inline]
    pub(crate) fn less<T: PartialOrd>(&mut self, a: &T, b: &T) -> bool {
        self.comparisons += 1;
        a < b
    }

    /// Exchanges `buf[i]` and `buf[j]` (0-based). A self-exchange is free.
    #[inline]
    pub(crate) fn swap<T>(&mut self, buf: &mut [T], i: usize, j: usize) {
        if i != j {
            buf.swap(i, j);
            self.assignments += 3;
        }
    }

    #[inline]
    pub(crate) fn observe_depth(&mut self, depth: u64) {
        self.max_recursion_depth = self.max_recursion_depth.max(depth);
    }
}

/// Accumulates counts from an independent invocation. Counts add; the depth
/// is a high-water mark, so it combines with `max`.
impl AddAssign for Counters {
    fn add_assign(&mut self, rhs: Self) {
        self.comparisons += rhs.comparisons;
        self.assignments += rhs.assignments;
        self.partition_calls += rhs.partition_calls;
        self.balance_activations += rhs.balance_activations;
        self.root_exchanges += rhs.root_exchanges;
        self.max_recursion_depth = self.max_recursion_depth.max(rhs.max_recursion_depth);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_swap_costs_nothing() {
        let mut c = Counters::new();
        let mut buf = [1, 2];
        c.swap(&mut buf, 1, 1);
        assert_eq!(c.assignments, 0);
        c.swap(&mut buf, 0, 1);
        assert_eq!(buf, [2, 1]);
        assert_eq!(c.assignments, 3);
    }

    #[test]
    fn add_assign_keeps_depth_high_water_mark() {
        let mut a = Counters {
            comparisons: 4,
            max_recursion_depth: 3,
            ..Counters::default()
        };
        let b = Counters {
            comparisons: 6,
            max_recursion_depth: 2,
            ..Counters::default()
        };
        a += b;
        assert_eq!(a.comparisons, 10);
        assert_eq!(a.max_recursion_depth, 3);
    }
}
