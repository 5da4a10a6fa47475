//! Small permutation helpers shared by the enumerators.

/// `k!`, saturating at `u64::MAX`.
pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).fold(1u64, |acc, x| acc.saturating_mul(x))
}

/// Advances `perm` to the next permutation in lexicographic order.
/// Returns `false` (leaving `perm` sorted ascending) after the last one.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All permutations of `0..k` in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(k) as usize);
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

/// Lexicographic rank of a permutation of `0..k`.
pub fn rank(perm: &[usize]) -> usize {
    let k = perm.len();
    let mut r = 0usize;
    for i in 0..k {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        r = r * (k - i) + smaller;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(mut r: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0usize; k];
    for i in (0..k).rev() {
        let base = k - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..k).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_roundtrip() {
        for (i, p) in all_permutations(4).iter().enumerate() {
            assert_eq!(rank(p), i);
            assert_eq!(&unrank(i, 4), p);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(5).len(), 120);
        assert_eq!(factorial(8), 40320);
    }
}
