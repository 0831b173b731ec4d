//! Cyclic words: least rotations, primitive roots and necklace enumeration.

/// Index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation<T: Ord>(word: &[T]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &word[i % n];
    let mut failure: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = failure[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k
}

pub fn canonical_rotation<T: Ord + Clone>(word: &[T]) -> Vec<T> {
    let k = least_rotation(word);
    word[k..].iter().chain(&word[..k]).cloned().collect()
}

/// Length of the shortest period `p` with `word = root^(len/p)`.
pub fn primitive_period<T: PartialEq>(word: &[T]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .unwrap_or(n)
}

/// All necklaces of exact length `len` over letters `1..=alphabet`, each in
/// least-rotation form, in lexicographic order (Fredricksen–Kessler–Maiorana).
pub fn necklaces(alphabet: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if alphabet == 0 || len == 0 {
        return out;
    }
    let mut a = vec![0u32; len + 1];
    fkm(1, 1, len, alphabet, &mut a, &mut out);
    out
}

fn fkm(t: usize, p: usize, n: usize, k: u32, a: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if t > n {
        if n % p == 0 {
            out.push(a[1..=n].iter().map(|x| x + 1).collect());
        }
        return;
    }
    a[t] = a[t - p];
    fkm(t + 1, p, n, k, a, out);
    for j in a[t - p] + 1..k {
        a[t] = j;
        fkm(t + 1, t, n, k, a, out);
    }
}

/// Necklace count `(1/m)·Σ_{d|m} φ(d)·s^{m/d}`.
pub fn necklace_count(alphabet: u64, len: u64) -> u64 {
    if len == 0 {
        return 0;
    }
    let total: u64 = (1..=len)
        .filter(|d| len % d == 0)
        .map(|d| totient(d) * alphabet.pow((len / d) as u32))
        .sum();
    total / len
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|&j| num_integer::gcd(j, n) == 1).count() as u64
}
