//! Reference sorts sharing the partition and heap primitives of Smart Sort,
//! plus an independent merge sort used only as a correctness oracle.

use crate::counters::Counters;
use crate::heap::{self, build_max_heap};
use crate::sort::{partition, Segment};

/// Quicksort with the same first-element pivot partition as Smart Sort and no
/// rebalancing. Quadratic on sorted input.
pub fn quicksort_classic<T: PartialOrd>(buf: &mut [T], counters: &mut Counters) {
    quicksort_segment(buf, Segment::whole(buf.len()), counters, 0);
}

fn quicksort_segment<T: PartialOrd>(buf: &mut [T], mut seg: Segment, counters: &mut Counters, mut depth: u64) {
    while seg.low < seg.high {
        depth += 1;
        counters.observe_depth(depth);
        let j = partition(buf, seg, counters);
        let left = Segment::new(seg.low, j - 1);
        let right = Segment::new(j + 1, seg.high);
        let (smaller, larger) = if left.len() <= right.len() {
            (left, right)
        } else {
            (right, left)
        };
        quicksort_segment(buf, smaller, counters, depth);
        seg = larger;
    }
}

/// Heapsort: Floyd construction followed by repeated root extraction.
pub fn heapsort_floyd<T: PartialOrd>(buf: &mut [T], counters: &mut Counters) {
    build_max_heap(buf, Segment::whole(buf.len()), counters);
    for end in (1..buf.len()).rev() {
        counters.swap(buf, 0, end);
        heap::sift_down::<T, true>(&mut buf[..end], 0, counters);
    }
}

/// Top-down merge sort. Shares no code with the sorts under test.
pub fn oracle_sort<T: PartialOrd + Clone>(buf: &mut [T]) {
    if buf.len() < 2 {
        return;
    }
    let mut scratch = buf.to_vec();
    merge_sort(buf, &mut scratch);
}

// Sorts `buf` using `scratch` (same length, same contents) as workspace.
fn merge_sort<T: PartialOrd + Clone>(buf: &mut [T], scratch: &mut [T]) {
    let n = buf.len();
    if n < 2 {
        return;
    }
    let half = n / 2;
    {
        let (sl, sr) = scratch.split_at_mut(half);
        let (bl, br) = buf.split_at_mut(half);
        merge_sort(sl, bl);
        merge_sort(sr, br);
    }
    let (left, right) = scratch.split_at(half);
    let (mut i, mut j) = (0, 0);
    for slot in buf.iter_mut() {
        // Stable: take from the left unless the right key is strictly smaller.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        let take_left = j >= right.len() || (i < left.len() && !(right[j] < left[i]));
        if take_left {
            *slot = left[i].clone();
            i += 1;
        } else {
            *slot = right[j].clone();
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<u8>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n as u8);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn oracle_small_cases() {
        let mut a = [2, 1];
        oracle_sort(&mut a);
        assert_eq!(a, [1, 2]);
        let mut b = [5, 5, 1];
        oracle_sort(&mut b);
        assert_eq!(b, [1, 5, 5]);
        let mut e: [u8; 0] = [];
        oracle_sort(&mut e);
    }

    #[test]
    fn quicksort_small() {
        let mut a = [3, 1, 2];
        quicksort_classic(&mut a, &mut Counters::new());
        assert_eq!(a, [1, 2, 3]);
    }

    #[test]
    fn heapsort_small() {
        let mut e: [i32; 0] = [];
        heapsort_floyd(&mut e, &mut Counters::new());
        let mut r: Vec<i32> = (1..=8).rev().collect();
        heapsort_floyd(&mut r, &mut Counters::new());
        assert_eq!(r, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn all_permutations_of_seven() {
        let perms = permutations(7);
        assert_eq!(perms.len(), 5040);
        let expected: Vec<u8> = (1..=7).collect();
        for p in perms {
            let mut o = p.clone();
            oracle_sort(&mut o);
            assert_eq!(o, expected);
            let mut q = p.clone();
            quicksort_classic(&mut q, &mut Counters::new());
            assert_eq!(q, expected);
            let mut h = p;
            heapsort_floyd(&mut h, &mut Counters::new());
            assert_eq!(h, expected);
        }
    }

    #[test]
    fn quicksort_degenerates_on_sorted_input() {
        let n = 1024u64;
        let mut buf: Vec<u64> = (0..n).collect();
        let mut c = Counters::new();
        quicksort_classic(&mut buf, &mut c);
        assert!(c.comparisons >= 471_859, "comparisons = {}", c.comparisons);
        assert_eq!(c.max_recursion_depth, n - 1);
    }
}
