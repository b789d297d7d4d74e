//! The Pieri relation `u →_k w` and multiplication of a double Schubert
//! polynomial by (factorial) elementary symmetric polynomials.
//!
//! `u →_k w` holds when `w = u·t_{a_1b_1}⋯t_{a_pb_p}` for transpositions
//! with `a_i ≤ k < b_i`, pairwise distinct `a_i`, and length rising by one
//! at every step. Each related pair carries the fixed set
//! `P_k(u,w) = {u(i) : i ≤ k, u(i) = w(i)}`, whose elements index the
//! linear factors `(y_i − z_j)` of the step's weight.

use crate::perm::Perm;
use crate::poly::{FactoredSum, FactoredTerm, Poly, Var};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Errors raised by Pieri-engine operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PieriError {
    /// `mul_factorial_elementary` requires `1 ≤ p ≤ k`.
    #[error("factorial elementary E_{{{p},{k}}} requires 1 <= p <= k")]
    BadShape { p: usize, k: usize },
}

/// One Pieri move `source →_k target` together with its fixed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriStep {
    pub source: Perm,
    pub target: Perm,
    pub k: usize,
    /// `P_k(source, target)`: values fixed among the first `k` positions.
    pub fixed_values: BTreeSet<usize>,
}

impl PieriStep {
    fn new(source: Perm, target: Perm, k: usize) -> PieriStep {
        let fixed_values = (1..=k)
            .filter(|&i| source.value(i) == target.value(i))
            .map(|i| source.value(i))
            .collect();
        PieriStep { source, target, k, fixed_values }
    }
}

/// One coefficient of an expansion: the canonical expanded polynomial, plus
/// the factored positive form when a formula path produced it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    pub poly: Poly,
    pub factored: Option<FactoredSum>,
}

impl Coeff {
    pub fn from_poly(poly: Poly) -> Coeff {
        Coeff { poly, factored: None }
    }

    pub fn from_factored(factored: FactoredSum) -> Coeff {
        Coeff { poly: factored.expand(), factored: Some(factored) }
    }
}

/// A finite expansion `Σ_w coeff(w)·S_w(x;y)`: permutation → coefficient,
/// with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoeffMap {
    entries: BTreeMap<Perm, Coeff>,
}

impl CoeffMap {
    pub fn new() -> CoeffMap {
        CoeffMap::default()
    }

    /// Adds an expanded-only contribution.
    pub fn add_poly(&mut self, w: Perm, poly: Poly) {
        let entry = self.entries.entry(w.clone()).or_default();
        entry.poly.add_assign(&poly);
        self.normalize(&w);
    }

    /// Adds a factored contribution (both forms are updated).
    pub fn add_factored(&mut self, w: Perm, sum: FactoredSum) {
        let entry = self.entries.entry(w.clone()).or_default();
        entry.poly.add_assign(&sum.expand());
        entry.factored = match entry.factored.take() {
            None if entry.poly == sum.expand() => Some(sum),
            None => None, // earlier expanded-only contributions poison it
            Some(own) => Some(own.add(&sum)),
        };
        self.normalize(&w);
    }

    pub fn insert(&mut self, w: Perm, coeff: Coeff) {
        if !coeff.poly.is_zero() {
            self.entries.insert(w, coeff);
        }
    }

    fn normalize(&mut self, w: &Perm) {
        if self.entries.get(w).is_some_and(|c| c.poly.is_zero()) {
            self.entries.remove(w);
        }
    }

    pub fn get(&self, w: &Perm) -> Option<&Coeff> {
        self.entries.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Perm, &Coeff)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The expanded view, for comparisons between different computations.
    pub fn expanded(&self) -> BTreeMap<Perm, Poly> {
        self.entries
            .iter()
            .map(|(w, c)| (w.clone(), c.poly.clone()))
            .collect()
    }
}

impl FromIterator<(Perm, Coeff)> for CoeffMap {
    fn from_iter<T: IntoIterator<Item = (Perm, Coeff)>>(iter: T) -> CoeffMap {
        let mut map = CoeffMap::new();
        for (w, c) in iter {
            if !c.poly.is_zero() {
                let entry = map.entries.entry(w).or_default();
                entry.poly.add_assign(&c.poly);
                debug_assert!(entry.factored.is_none());
                entry.factored = c.factored;
            }
        }
        map
    }
}

/// Decides `u →_k w` by the cycle characterization: every nontrivial cycle
/// of `u⁻¹w` must contain exactly one element `b > k`; reading the cycle
/// from the element after `b` around to `b`, the `u`-values strictly
/// increase; and the cycle lengths must account for the full length jump
/// `ℓ(w) − ℓ(u)`.
pub fn pieri_related(u: &Perm, w: &Perm, k: usize) -> bool {
    if w.length() < u.length() {
        return false;
    }
    let g = u.inverse().compose(w);
    let mut jump = 0;
    for cycle in g.disjoint_cycles() {
        // Cycles start at their largest element, which must be the unique
        // element exceeding k.
        let b = cycle[0];
        let rest = &cycle[1..];
        if b <= k || rest.iter().any(|&c| c > k) {
            return false;
        }
        let increasing = rest
            .iter()
            .chain(std::iter::once(&b))
            .map(|&c| u.value(c))
            .collect::<Vec<_>>()
            .windows(2)
            .all(|p| p[0] < p[1]);
        if !increasing {
            return false;
        }
        jump += cycle.len() - 1;
    }
    jump == w.length() - u.length()
}

/// Enumerates every `w` with `u →_k w`, each as a `PieriStep` with its
/// fixed set.
///
/// Depth-first extension by transpositions `t_{ab}`, `a ≤ k < b`, distinct
/// `a`'s, each raising length by exactly one, taking `b` weakly increasing
/// along the chain (any valid chain can be reordered this way) and ordering
/// candidates by increasing `b` then increasing `a`. Targets are
/// deduplicated: a step records reachability, not the number of chains.
///
/// Bound on `b`: at any point of the chain, `b ≤ max(window, k) + 1`
/// suffices, where `window` is the current window length. For larger `b`,
/// the position `c = max(window, k) + 1` sits strictly between `a` and `b`
/// and carries the fixed value `c`, which lies strictly between the current
/// value at `a` (at most `max(window, k)`) and `b` — so `t_{ab}` raises
/// length by more than one. The test suite checks this bound against an
/// unrestricted search.
pub fn pieri_successors(u: &Perm, k: usize) -> Vec<PieriStep> {
    let mut found: BTreeMap<Perm, ()> = BTreeMap::new();
    let mut stack = vec![(u.clone(), BTreeSet::<usize>::new(), k + 1)];
    while let Some((current, used, min_b)) = stack.pop() {
        found.insert(current.clone(), ());
        for b in min_b..=current.window_len().max(k) + 1 {
            for a in 1..=k.min(b - 1) {
                if !used.contains(&a) && current.t_raises_by_one(a, b) {
                    let mut used = used.clone();
                    used.insert(a);
                    stack.push((current.right_mul_t(a, b), used, b));
                }
            }
        }
    }
    found
        .into_keys()
        .map(|w| PieriStep::new(u.clone(), w, k))
        .collect()
}

/// Targets reachable from `u` by a full-length jump `ℓ(w) = ℓ(u) + k`
/// (equivalently: empty fixed set). This is the only slice of the Pieri
/// relation that survives setting y = z = 0, so the ordinary product path
/// enumerates it directly instead of filtering `pieri_successors`.
pub fn pieri_full_jump_targets(u: &Perm, k: usize) -> Vec<Perm> {
    let mut found: BTreeSet<Perm> = BTreeSet::new();
    // Chains here use every a in {1..k} exactly once.
    let mut stack = vec![(u.clone(), BTreeSet::<usize>::new(), k + 1)];
    while let Some((current, used, min_b)) = stack.pop() {
        if used.len() == k {
            found.insert(current);
            continue;
        }
        for b in min_b..=current.window_len().max(k) + 1 {
            for a in 1..=k.min(b - 1) {
                if !used.contains(&a) && current.t_raises_by_one(a, b) {
                    let mut used = used.clone();
                    used.insert(a);
                    stack.push((current.right_mul_t(a, b), used, b));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// The factored weight of a step: `∏_{i ∈ fixed_values} (y_i − z_j)`.
pub fn weight_factored(step: &PieriStep, j: usize) -> FactoredTerm {
    FactoredTerm::new(
        step.fixed_values
            .iter()
            .map(|&i| (Var::y(i), Var::z(j)))
            .collect(),
    )
}

/// The weight of a step against `z_j`, expanded.
pub fn weight(step: &PieriStep, j: usize) -> Poly {
    weight_factored(step, j).expand()
}

/// Expands `(x_i − z_j)·S_u(x;y)`: coefficient `y_{u(i)} − z_j` on `u`
/// itself, `+1` on each `u·t_{iq}` with `q > i`, `−1` on each `u·t_{qi}`
/// with `q < i` (length must rise by one either way).
pub fn mul_single_variable(u: &Perm, i: usize, j: usize) -> CoeffMap {
    let mut map = CoeffMap::new();
    map.add_factored(
        u.clone(),
        FactoredSum::from(FactoredTerm::new(vec![(Var::y(u.value(i)), Var::z(j))])),
    );
    for q in i + 1..=u.window_len().max(i) + 1 {
        if u.t_raises_by_one(i, q) {
            map.add_factored(u.right_mul_t(i, q), FactoredSum::from(FactoredTerm::one()));
        }
    }
    for q in 1..i {
        if u.t_raises_by_one(q, i) {
            map.add_poly(u.right_mul_t(q, i), Poly::integer(-1));
        }
    }
    map
}

/// Expands `S_u(x;y)·E_k(x;z_j)` where `E_k(x;z_j) = ∏_{i≤k}(x_i − z_j)`:
/// the sum of `weight(step, j)·S_w` over all `u →_k w`, computed directly
/// from the enumeration (not by the cancellation recursion that proves it).
pub fn mul_elementary(u: &Perm, k: usize, j: usize) -> CoeffMap {
    let mut map = CoeffMap::new();
    for step in pieri_successors(u, k) {
        let sum = FactoredSum::from(weight_factored(&step, j));
        map.add_factored(step.target, sum);
    }
    map
}

/// Expands `S_u(x;y)·E_{p,k}(x;z)` by the Pieri formula: the coefficient of
/// `S_w` is `E_{p−ℓ(u,w), k−ℓ(u,w)}(y_{P_k(u,w)}; z)`; targets with
/// `p − ℓ(u,w) < 0` are omitted (the factorial elementary vanishes there).
pub fn mul_factorial_elementary(u: &Perm, p: usize, k: usize) -> Result<CoeffMap, PieriError> {
    if p < 1 || p > k {
        return Err(PieriError::BadShape { p, k });
    }
    let mut map = CoeffMap::new();
    for step in pieri_successors(u, k) {
        let jump = step.target.length() - step.source.length();
        if p < jump {
            continue;
        }
        let alphabet: Vec<usize> = step.fixed_values.iter().copied().collect();
        let sum = elem_expand_factored((p - jump) as isize, k - jump, &alphabet);
        map.add_factored(step.target, sum);
    }
    Ok(map)
}

/// Factored form of `E_{p,k}(Y;z)` over a strictly increasing y-alphabet of
/// size `k`: the sum over weakly increasing sequences `(a_0..a_{p−1})` in
/// `[1, k+1−p]` of `∏_i (Y_{a_i+i} − z_{a_i})`. Empty (one term, no
/// factors) if `p = 0`; zero if `p < 0` or `p > k`.
pub fn elem_expand_factored(p: isize, k: usize, y_alphabet: &[usize]) -> FactoredSum {
    assert_eq!(y_alphabet.len(), k, "alphabet must have exactly k entries");
    assert!(
        y_alphabet.windows(2).all(|w| w[0] < w[1]),
        "alphabet must be strictly increasing"
    );
    if p < 0 || p as usize > k {
        return FactoredSum::zero();
    }
    let p = p as usize;
    let mut terms = Vec::new();
    let mut seq = vec![1usize; p];
    loop {
        terms.push(FactoredTerm::new(
            seq.iter()
                .enumerate()
                .map(|(i, &a)| (Var::y(y_alphabet[a + i - 1]), Var::z(a)))
                .collect(),
        ));
        // Advance to the next weakly increasing sequence over [1, k+1-p].
        let Some(at) = (0..p).rev().find(|&i| seq[i] < k + 1 - p) else {
            break;
        };
        let bumped = seq[at] + 1;
        for entry in seq.iter_mut().skip(at) {
            *entry = bumped;
        }
    }
    FactoredSum::new(terms)
}

/// `E_{p,k}(Y;z)` expanded; see `elem_expand_factored`.
pub fn elem_expand(p: isize, k: usize, y_alphabet: &[usize]) -> Poly {
    elem_expand_factored(p, k, y_alphabet).expand()
}
