//! Cyclic-word utilities: least rotations and Lyndon words.

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |idx: isize| &s[idx as usize % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k: isize = 0;
    for j in 1..2 * n as isize {
        let sj = at(j);
        let mut i = f[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i as usize];
        }
        // here either i == -1 or sj matches
        if sj != at(k + i + 1) {
            if sj < at(k) {
                k = j;
            }
            f[(j - k) as usize] = -1;
        } else {
            f[(j - k) as usize] = i + 1;
        }
    }
    k as usize % n
}

/// The least rotation as a new vector.
pub fn canonical_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    let k = least_rotation(s);
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[k..]);
    out.extend_from_slice(&s[..k]);
    out
}

pub fn is_canonical_rotation<T: Ord>(s: &[T]) -> bool {
    let k = least_rotation(s);
    k == 0 || s[k..].iter().chain(&s[..k]).eq(s.iter())
}

/// Lyndon words over `0..alphabet` with length at most `max_len`, in
/// lexicographic order (Duval's generation).
pub fn lyndon_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if alphabet == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == alphabet - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_least(s: &[u8]) -> Vec<u8> {
        (0..s.len().max(1))
            .map(|k| {
                let mut r = s[k.min(s.len())..].to_vec();
                r.extend_from_slice(&s[..k.min(s.len())]);
                r
            })
            .min()
            .unwrap()
    }

    #[test]
    fn periodic_words() {
        assert_eq!(canonical_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
        assert!(is_canonical_rotation(&[0, 1, 0, 1]));
        assert!(!is_canonical_rotation(&[1, 0, 1, 0]));
        assert_eq!(canonical_rotation::<u8>(&[]), Vec::<u8>::new());
    }

    #[test]
    fn lyndon_counts() {
        // necklace-theoretic counts of aperiodic necklaces: 2 letters, n=1..4: 2,1,2,3
        let words = lyndon_words(2, 4);
        let by_len = |l| words.iter().filter(|w| w.len() == l).count();
        assert_eq!((by_len(1), by_len(2), by_len(3), by_len(4)), (2, 1, 2, 3));
        assert_eq!(lyndon_words(3, 2).len(), 3 + 3);
    }

    proptest! {
        #[test]
        fn booth_matches_brute_force(s in proptest::collection::vec(0u8..3, 1..12)) {
            prop_assert_eq!(canonical_rotation(&s), naive_least(&s));
        }
    }
}
