//! Labeled counts split over worker threads. Each worker counts a fixed
//! subset of prefixes, so totals do not depend on the thread count.

use finspace::enumerate::{branches, count_from_prefix};

/// Prefix depth used to split the stream.
const SPLIT_DEPTH: usize = 3;

pub fn count_labeled_posets(n: usize, threads: usize) -> u64 {
    let depth = SPLIT_DEPTH.min(n);
    let prefixes = branches(depth);
    let threads = threads.clamp(1, prefixes.len().max(1));
    if threads == 1 {
        return prefixes.into_iter().map(|p| count_from_prefix(p, n)).sum();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let mine: Vec<_> = prefixes.iter().skip(t).step_by(threads).cloned().collect();
                s.spawn(move || mine.into_iter().map(|p| count_from_prefix(p, n)).sum::<u64>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

/// Stirling numbers of the second kind `S(n, k)` for `k = 0..=n`.
fn stirling_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        for k in 1..=m {
            let keep = if k < m { k as u64 * row[k] } else { 0 };
            next[k] = keep + row[k - 1];
        }
        row = next;
    }
    row
}

/// Preorders are posets on the blocks of a set partition.
pub fn count_labeled_preorders(n: usize, threads: usize) -> u64 {
    stirling_row(n)
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 0)
        .map(|(k, &s)| s * count_labeled_posets(k, threads))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling_row(0), vec![1]);
        assert_eq!(stirling_row(4), vec![0, 1, 7, 6, 1]);
    }

    #[test]
    fn thread_count_does_not_change_totals() {
        for n in 0..=5 {
            let one = count_labeled_posets(n, 1);
            assert_eq!(count_labeled_posets(n, 4), one);
            assert_eq!(count_labeled_preorders(n, 3), finspace::enumerate::count_labeled_preorders(n));
        }
    }
}
