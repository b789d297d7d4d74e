//! Permutations of the positive integers with finite support.
//!
//! A permutation is stored by its window `[u(1), ..., u(n)]` with trailing
//! fixed points trimmed, so `S_n` embeds in `S_{n+1}` transparently and
//! equality/hashing see through the embedding. Positions and values are
//! 1-based throughout, matching the usual window notation.

use std::fmt;
use thiserror::Error;

/// Errors raised by permutation constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    /// A window repeats a value.
    #[error("duplicate value {0} in window")]
    DuplicateValue(usize),
    /// A window contains a value outside `1..=len`.
    #[error("value {value} out of range for window of length {len}")]
    OutOfRange { value: usize, len: usize },
    /// A Grassmannian shape has more parts than the descent position allows.
    #[error("shape has {parts} parts but m = {m}")]
    ShapeTooLong { parts: usize, m: usize },
}

/// A finite-support permutation of `{1, 2, 3, ...}` in canonical window form.
///
/// The canonical window never ends with a fixed point: the identity is the
/// empty window, and `u(i) = i` for every `i` beyond the window.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    window: Vec<usize>,
}

/// Result of the dominant-approximation recursion applied to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantData {
    /// The dominant approximation `mu_v`.
    pub mu: Perm,
    /// Simple-reflection indices applied to `v`, in application order, so
    /// that `v * s(word[0]) * ... * s(word[m-1]) = mu` with length rising by
    /// one at each step.
    pub word: Vec<usize>,
    /// `lambda(v)`: the conjugate of `code(mu)`.
    pub lambda: Vec<usize>,
}

impl Perm {
    /// The identity permutation.
    pub fn identity() -> Self {
        Perm { window: Vec::new() }
    }

    /// Builds a permutation from a one-line window, validating that it is a
    /// bijection of `{1..len}` and trimming trailing fixed points.
    pub fn from_window(seq: &[usize]) -> Result<Self, PermError> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &v in seq {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, len: n });
            }
            if seen[v - 1] {
                return Err(PermError::DuplicateValue(v));
            }
            seen[v - 1] = true;
        }
        let mut window = seq.to_vec();
        trim(&mut window);
        Ok(Perm { window })
    }

    /// The unique permutation whose code is `entries` (trailing zeros in
    /// `entries` are harmless). Greedy construction: position `i` takes the
    /// `(entries[i] + 1)`-th smallest value not yet used.
    pub fn from_code(entries: &[usize]) -> Self {
        let mut n = entries.len();
        for (i, &c) in entries.iter().enumerate() {
            n = n.max(i + 1 + c);
        }
        let mut avail: Vec<usize> = (1..=n).collect();
        let mut window = Vec::with_capacity(n);
        for i in 0..n {
            let c = entries.get(i).copied().unwrap_or(0);
            window.push(avail.remove(c));
        }
        trim(&mut window);
        Perm { window }
    }

    /// The value `u(i)` for any positive position `i`.
    pub fn value(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.window.get(i - 1).copied().unwrap_or(i)
    }

    /// The canonical (trimmed) window. Empty exactly for the identity.
    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// Length of the canonical window; `u(i) = i` for all `i` beyond it.
    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    /// True for the identity permutation.
    pub fn is_identity(&self) -> bool {
        self.window.is_empty()
    }

    /// The number of inversions `#{(i,j) : i < j, u(i) > u(j)}`.
    pub fn length(&self) -> usize {
        self.code_untrimmed().iter().sum()
    }

    /// The code of the permutation: entry `i` counts later values smaller
    /// than `u(i)`. Trailing zeros are trimmed.
    pub fn code(&self) -> Vec<usize> {
        let mut c = self.code_untrimmed();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    fn code_untrimmed(&self) -> Vec<usize> {
        let w = &self.window;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .collect()
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let n = self.window_len().max(other.window_len());
        let mut window: Vec<usize> = (1..=n).map(|i| self.value(other.value(i))).collect();
        trim(&mut window);
        Perm { window }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Perm {
        let n = self.window_len();
        let mut window = vec![0; n];
        for i in 1..=n {
            window[self.value(i) - 1] = i;
        }
        trim(&mut window);
        Perm { window }
    }

    /// The simple transposition `s_i` swapping `i` and `i+1`.
    pub fn s(i: usize) -> Perm {
        debug_assert!(i >= 1);
        Perm::transposition(i, i + 1)
    }

    /// The transposition `t_{ab}` swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Perm {
        debug_assert!(a >= 1 && b >= 1 && a != b);
        let (a, b) = (a.min(b), a.max(b));
        let mut window: Vec<usize> = (1..=b).collect();
        window.swap(a - 1, b - 1);
        Perm { window }
    }

    /// Right multiplication `self * s_i`: swaps window positions `i`, `i+1`.
    pub fn right_mul_s(&self, i: usize) -> Perm {
        self.right_mul_t(i, i + 1)
    }

    /// Right multiplication `self * t_{ab}`: swaps window positions `a`, `b`.
    pub fn right_mul_t(&self, a: usize, b: usize) -> Perm {
        debug_assert!(a != b);
        let n = self.window_len().max(a).max(b);
        let mut window: Vec<usize> = (1..=n).map(|i| self.value(i)).collect();
        window.swap(a - 1, b - 1);
        trim(&mut window);
        Perm { window }
    }

    /// True iff `length(self * t_{ab}) = length(self) + 1`, for `a < b`:
    /// requires `u(a) < u(b)` with no position strictly between carrying a
    /// value strictly between.
    pub fn t_raises_by_one(&self, a: usize, b: usize) -> bool {
        debug_assert!(a < b);
        let ua = self.value(a);
        let ub = self.value(b);
        ua < ub && (a + 1..b).all(|c| {
            let uc = self.value(c);
            uc < ua || uc > ub
        })
    }

    /// Positions `i` with `u(i) > u(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        let w = &self.window;
        (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
    }

    /// True iff the code is weakly decreasing (a partition shape).
    pub fn is_dominant(&self) -> bool {
        let c = self.code_untrimmed();
        c.windows(2).all(|p| p[0] >= p[1])
    }

    /// Runs the dominant-approximation recursion: while the code is not a
    /// partition, pick the maximal `i` with `c_i < c_{i+1}` and replace `v`
    /// by `v * s_i` (which swaps code entries `i`, `i+1` and adds 1 at `i`).
    pub fn dominant_approximation(&self) -> DominantData {
        let mut code = self.code_untrimmed();
        code.push(0);
        let mut word = Vec::new();
        loop {
            let rise = (0..code.len() - 1).rev().find(|&i| code[i] < code[i + 1]);
            match rise {
                None => break,
                Some(i) => {
                    let (lo, hi) = (code[i], code[i + 1]);
                    code[i] = hi + 1;
                    code[i + 1] = lo;
                    word.push(i + 1);
                }
            }
        }
        while code.last() == Some(&0) {
            code.pop();
        }
        let mu = Perm::from_code(&code);
        let lambda = conjugate(&code);
        DominantData { mu, word, lambda }
    }

    /// Nontrivial cycles of the permutation, each rotated to start at its
    /// largest element and following the action (`cycle[j+1] = u(cycle[j])`);
    /// cycles sorted by largest element.
    pub fn disjoint_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.window_len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.value(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.value(next);
            }
            if cycle.len() >= 2 {
                let top = cycle.iter().position(|&x| x == *cycle.iter().max().unwrap());
                cycle.rotate_left(top.unwrap());
                cycles.push(cycle);
            }
        }
        cycles.sort_by_key(|c| c[0]);
        cycles
    }

    /// The Grassmannian permutation `w_{lambda;m}`: `w(i) = i + lambda_{m+1-i}`
    /// for `i <= m` (shape padded with zeros), remaining values increasing.
    pub fn grassmannian(lambda: &[usize], m: usize) -> Result<Perm, PermError> {
        if lambda.len() > m {
            return Err(PermError::ShapeTooLong { parts: lambda.len(), m });
        }
        debug_assert!(lambda.windows(2).all(|p| p[0] >= p[1]));
        let n = m + lambda.first().copied().unwrap_or(0);
        let mut window = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        for i in 1..=m {
            let part = lambda.get(m - i).copied().unwrap_or(0);
            window.push(i + part);
            used[i + part] = true;
        }
        window.extend((1..=n).filter(|&v| !used[v]));
        trim(&mut window);
        Ok(Perm { window })
    }

    /// The longest element `w_0(n)` of `S_{n+1}`: `w(i) = n + 2 - i`.
    pub fn longest_element(n: usize) -> Perm {
        let mut window: Vec<usize> = (1..=n + 1).rev().collect();
        trim(&mut window);
        Perm { window }
    }

    /// A reduced word `(i_1, ..., i_m)` with `self = s_{i_1} ∘ ... ∘ s_{i_m}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut g = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(&i) = g.descents().first() {
            g = g.right_mul_s(i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }
}

/// All permutations of `S_n` (windows over `{1..n}`), in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut window: Vec<usize> = (1..=n).collect();
    loop {
        let mut w = window.clone();
        trim(&mut w);
        out.push(Perm { window: w });
        if !next_permutation(&mut window) {
            break;
        }
    }
    out
}

/// The conjugate (transpose) of a partition.
pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let rows = parts.first().copied().unwrap_or(0);
    (1..=rows)
        .map(|i| parts.iter().filter(|&&p| p >= i).count())
        .collect()
}

fn trim(window: &mut Vec<usize>) {
    while !window.is_empty() && *window.last().unwrap() == window.len() {
        window.pop();
    }
}

fn next_permutation(w: &mut [usize]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Perm {
    /// Space-separated window; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.window.is_empty() {
            return write!(f, "1");
        }
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
