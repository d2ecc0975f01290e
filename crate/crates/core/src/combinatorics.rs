//! Binomial coefficients, colex ranks and subset iteration.

use alloc::vec::Vec;

/// `C(n, r)`, or `None` on overflow.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// `C(n, r)` for arguments known to be small.
pub fn binom(n: usize, r: usize) -> usize {
    binomial(n as u64, r as u64)
        .and_then(|b| usize::try_from(b).ok())
        .expect("binomial coefficient overflows usize")
}

/// Colex rank of a strictly ascending subset: `sum_i C(s_i, i + 1)`.
pub fn colex_rank(subset: &[u32]) -> Option<u128> {
    let mut rank: u128 = 0;
    for (i, &s) in subset.iter().enumerate() {
        rank = rank.checked_add(binomial(u64::from(s), i as u64 + 1)?)?;
    }
    Some(rank)
}

/// Dense table of binomials `C(v, j)` for `v < n`, `j <= r`, used for fast colex ranking.
#[derive(Clone, Debug)]
pub struct ColexTable {
    r: usize,
    table: Vec<usize>,
}

impl ColexTable {
    /// Returns `None` when `C(n, r)` does not fit a `usize`.
    pub fn new(n: usize, r: usize) -> Option<Self> {
        usize::try_from(binomial(n as u64, r as u64)?).ok()?;
        let mut table = alloc::vec![0usize; n.max(1) * (r + 1)];
        for v in 0..n {
            for j in 0..=r {
                table[v * (r + 1) + j] = usize::try_from(binomial(v as u64, j as u64)?).ok()?;
            }
        }
        Some(Self { r, table })
    }

    #[inline]
    pub fn rank(&self, subset: &[u32]) -> usize {
        debug_assert!(subset.len() <= self.r);
        subset
            .iter()
            .enumerate()
            .map(|(i, &s)| self.table[s as usize * (self.r + 1) + i + 1])
            .sum()
    }
}

/// Advances `c` (ascending indices into `0..n`) to the next r-combination in
/// lexicographic order. Returns false after the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every r-subset of `items` (in lexicographic position order).
pub fn for_each_subset<T: Copy>(items: &[T], r: usize, mut f: impl FnMut(&[T])) {
    let n = items.len();
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        if !next_combination(&mut idx, n) {
            break;
        }
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
    }
}

/// Every r-subset of `0..n` in lexicographic order, flattened with stride `r`.
pub fn all_subsets(n: usize, r: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    if r == 0 {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.extend(idx.iter().map(|&i| i as u32));
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    out
}

/// Largest integer `x` with `2 * x^p <= m^p`, i.e. `floor(m * 2^(-1/p))`.
pub fn floor_scaled_root_half(m: u64, p: u32) -> u64 {
    let target = u128::from(m).pow(p);
    let (mut lo, mut hi) = (0u64, m);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if 2 * u128::from(mid).pow(p) <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}
