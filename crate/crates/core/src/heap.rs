//! Floyd heap construction and sift-down restricted to a [`Segment`].
//!
//! Heaps are laid out relative to the segment start: the children of absolute
//! position `i` are `low + 2(i - low) + 1` and `low + 2(i - low) + 2`. Each
//! routine returns the root (the segment maximum or minimum), or `None` for an
//! empty segment.

use crate::counters::Counters;
use crate::sort::Segment;

/// Rearranges `seg` into a max-heap and returns its root.
pub fn build_max_heap<'a, T: PartialOrd>(buf: &'a mut [T], seg: Segment, counters: &mut Counters) -> Option<&'a T> {
    build::<T, true>(buf, seg, counters)
}

/// Rearranges `seg` into a min-heap and returns its root.
pub fn build_min_heap<'a, T: PartialOrd>(buf: &'a mut [T], seg: Segment, counters: &mut Counters) -> Option<&'a T> {
    build::<T, false>(buf, seg, counters)
}

/// Restores the max-heap property after the root of `seg` was replaced.
///
/// Everything below the root must already satisfy the property.
pub fn adjust_max_heap<'a, T: PartialOrd>(buf: &'a mut [T], seg: Segment, counters: &mut Counters) -> Option<&'a T> {
    adjust::<T, true>(buf, seg, counters)
}

/// Min-heap counterpart of [`adjust_max_heap`].
pub fn adjust_min_heap<'a, T: PartialOrd>(buf: &'a mut [T], seg: Segment, counters: &mut Counters) -> Option<&'a T> {
    adjust::<T, false>(buf, seg, counters)
}

/// Returns true if no parent in `seg` is smaller than one of its children.
pub fn is_max_heap<T: PartialOrd>(buf: &[T], seg: Segment) -> bool {
    is_heap::<T, true>(buf, seg)
}

/// Returns true if no parent in `seg` is larger than one of its children.
pub fn is_min_heap<T: PartialOrd>(buf: &[T], seg: Segment) -> bool {
    is_heap::<T, false>(buf, seg)
}

fn build<'a, T: PartialOrd, const MAX: bool>(buf: &'a mut [T], seg: Segment, counters: &mut Counters) -> Option<&'a T> {
    let heap = seg.slice_mut(buf)?;
    for node in (0..heap.len() / 2).rev() {
        sift_down::<T, MAX>(heap, node, counters);
    }
    Some(&heap[0])
}

fn adjust<'a, T: PartialOrd, const MAX: bool>(
    buf: &'a mut [T],
    seg: Segment,
    counters: &mut Counters,
) -> Option<&'a T> {
    let heap = seg.slice_mut(buf)?;
    sift_down::<T, MAX>(heap, 0, counters);
    Some(&heap[0])
}

/// True if `a` belongs above `b` in the heap.
#[inline]
fn outranks<T: PartialOrd, const MAX: bool>(a: &T, b: &T, counters: &mut Counters) -> bool {
    if MAX {
        counters.less(b, a)
    } else {
        counters.less(a, b)
    }
}

/// Sift-down within a heap stored in `heap[..]` (0-based, relative layout).
pub(crate) fn sift_down<T: PartialOrd, const MAX: bool>(heap: &mut [T], mut node: usize, counters: &mut Counters) {
    let len = heap.len();
    loop {
        let left = 2 * node + 1;
        if left >= len {
            return;
        }
        let right = left + 1;
        let mut child = left;
        if right < len && outranks::<T, MAX>(&heap[right], &heap[left], counters) {
            child = right;
        }
        if !outranks::<T, MAX>(&heap[child], &heap[node], counters) {
            return;
        }
        counters.swap(heap, node, child);
        node = child;
    }
}

// `!(a < b)` rather than `a >= b`: the predicate only forbids strict
// violations, the same relation the sift-down restores.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn is_heap<T: PartialOrd, const MAX: bool>(buf: &[T], seg: Segment) -> bool {
    let Some(heap) = seg.slice(buf) else {
        return true;
    };
    (1..heap.len()).all(|child| {
        let parent = (child - 1) / 2;
        if MAX {
            !(heap[parent] < heap[child])
        } else {
            !(heap[child] < heap[parent])
        }
    })
}
