use serde::{Deserialize, Serialize};

use super::{distinct_count, Symbol};

/// Repetition statistics of one window, relative to its neighbours.
///
/// `s_i` is the longest proper suffix that also occurs somewhere else in the
/// window; `s_alpha` restricts those other occurrences to ones immediately
/// followed by the next symbol. The prefix pair is the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowStats {
    pub distinct_count: usize,
    pub longest_repeating_suffix: usize,
    pub longest_suffix_followed_by_next: usize,
    /// Whether the next symbol occurs in the window at all. When it does not,
    /// not even the empty suffix is followed by it.
    pub next_occurs: bool,
    pub longest_repeating_prefix: usize,
    pub longest_prefix_preceded_by_prev: usize,
    pub prev_occurs: bool,
}

/// Z-array: `z[k]` is the length of the longest common prefix of `s` and `s[k..]`.
fn z_array(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for k in 1..n {
        if k < r {
            z[k] = (r - k).min(z[k - l]);
        }
        while k + z[k] < n && s[z[k]] == s[k + z[k]] {
            z[k] += 1;
        }
        if k + z[k] > r {
            l = k;
            r = k + z[k];
        }
    }
    z
}

/// Returns (longest repeating suffix, longest suffix whose other occurrence is
/// followed by `next`).
fn suffix_stats(window: &[Symbol], next: Option<Symbol>) -> (usize, usize) {
    let d = window.len();
    let reversed: Vec<Symbol> = window.iter().rev().copied().collect();
    let z = z_array(&reversed);
    let mut repeating = 0;
    let mut followed = 0;
    // An occurrence ending at e < d - 1 shares a suffix of length z[d-1-e].
    for e in 0..d.saturating_sub(1) {
        let common = z[d - 1 - e];
        repeating = repeating.max(common);
        if next == Some(window[e + 1]) {
            followed = followed.max(common);
        }
    }
    (repeating, followed)
}

/// Computes [`WindowStats`] for `window` with optional neighbours
/// `next = T[i+d]` and `prev = T[i-1]`.
pub fn window_stats(window: &[Symbol], next: Option<Symbol>, prev: Option<Symbol>) -> WindowStats {
    let (s_i, s_alpha) = suffix_stats(window, next);
    let reversed: Vec<Symbol> = window.iter().rev().copied().collect();
    let (p_i, p_beta) = suffix_stats(&reversed, prev);
    let next_occurs = next.is_some_and(|a| window.contains(&a));
    let prev_occurs = prev.is_some_and(|b| window.contains(&b));
    WindowStats {
        distinct_count: distinct_count(window),
        longest_repeating_suffix: s_i,
        longest_suffix_followed_by_next: s_alpha,
        next_occurs,
        longest_repeating_prefix: p_i,
        longest_prefix_preceded_by_prev: p_beta,
        prev_occurs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerates every (suffix, other occurrence) pair directly.
    fn brute(window: &[Symbol], next: Option<Symbol>) -> (usize, usize) {
        let d = window.len();
        let (mut rep, mut fol) = (0, 0);
        for len in 1..d {
            let suffix = &window[d - len..];
            for p in 0..d - len {
                if &window[p..p + len] == suffix {
                    rep = rep.max(len);
                    if next == Some(window[p + len]) {
                        fol = fol.max(len);
                    }
                }
            }
        }
        (rep, fol)
    }

    #[test]
    fn examples() {
        let s = window_stats(b"abcddd", Some(b'e'), None);
        assert_eq!(s.distinct_count, 4);
        assert_eq!(s.longest_repeating_suffix, 2);
        assert_eq!(s.longest_suffix_followed_by_next, 0);
        assert!(!s.next_occurs);

        let s = window_stats(b"aaaa", Some(b'a'), None);
        assert_eq!((s.distinct_count, s.longest_repeating_suffix), (1, 3));
        assert_eq!(s.longest_suffix_followed_by_next, 3);

        let s = window_stats(b"ab", Some(b'c'), None);
        assert_eq!((s.distinct_count, s.longest_repeating_suffix), (2, 0));
        assert_eq!(s.longest_suffix_followed_by_next, 0);
    }

    #[test]
    fn prefix_side_mirrors_suffix_side() {
        let s = window_stats(b"aab", None, Some(b'a'));
        assert_eq!(s.longest_repeating_prefix, 1);
        assert_eq!(s.longest_prefix_preceded_by_prev, 1);
        assert!(s.prev_occurs);
        assert_eq!(s.longest_suffix_followed_by_next, 0);
    }

    #[test]
    fn agrees_with_brute_force_on_all_short_binary_windows() {
        for d in 1..=12usize {
            for mask in 0u32..1 << d {
                let w: Vec<Symbol> = (0..d).map(|i| b'0' + (mask >> i & 1) as u8).collect();
                let rev: Vec<Symbol> = w.iter().rev().copied().collect();
                for next in *b"01" {
                    let s = window_stats(&w, Some(next), Some(next));
                    assert_eq!(
                        (s.longest_repeating_suffix, s.longest_suffix_followed_by_next),
                        brute(&w, Some(next)),
                        "{w:?} next {next}"
                    );
                    assert_eq!(
                        (s.longest_repeating_prefix, s.longest_prefix_preceded_by_prev),
                        brute(&rev, Some(next))
                    );
                    assert!(s.longest_suffix_followed_by_next <= s.longest_repeating_suffix);
                    assert!(s.longest_repeating_suffix < d && s.longest_repeating_prefix < d);
                    assert!(s.distinct_count >= 1 && s.distinct_count <= d.min(2));
                }
            }
        }
    }
}
