//! Product expansion of double Schubert polynomials.
//!
//! The central objects are the coefficients `d_{u,λ}^w(y;z)`, built by
//! repeated Pieri multiplication, and the coefficients `e_{uv}^w(y;z)`
//! obtained from them through the dominant approximation of `v`. When the
//! hypotheses checked by [`check_hypotheses`] hold, the `e` coefficients
//! expand the product `S_u(x;y)·S_v(x;z)` in the basis `S_w(x;y)` with
//! manifestly positive factored coefficients; otherwise the engine falls
//! back to the skew-divided-difference oracle. Specializations `z = y`
//! (equivariant) and `y = z = 0` (ordinary) get dedicated entry points.

use crate::oracle::oracle_coefficient;
use crate::perm::Perm;
use crate::pieri::{pieri_full_jump_targets, pieri_successors, weight_factored, CoeffMap, PieriStep};
use crate::poly::{FactoredSum, FactoredTerm, Family, Poly, Var};
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use thiserror::Error;

/// Errors raised by product-engine operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    /// Neither hypothesis holds; the caller should use the oracle path.
    #[error("hypotheses fail; the formula path does not apply")]
    HypothesesFail,
    /// A skew coefficient was requested with `ℓ(u) > ℓ(w)`.
    #[error("skew coefficient requires len(u) <= len(w), got {lu} > {lw}")]
    LengthOrder { lu: usize, lw: usize },
}

/// A chain `u_0 →_{λ_1} u_1 →_{λ_2} ⋯ →_{λ_m} u_m` together with its steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieriPath {
    /// The permutations `u_0, …, u_m` visited, in order.
    pub chain: Vec<Perm>,
    /// The shape `λ`; step `i` (1-based) uses `k = λ_i`.
    pub shape: Vec<usize>,
    /// The steps, in order; `steps[i].k == shape[i]`.
    pub steps: Vec<PieriStep>,
}

impl PieriPath {
    /// The endpoint `u_m`.
    pub fn endpoint(&self) -> &Perm {
        self.chain.last().expect("chain is never empty")
    }

    /// The path weight `∏_i weight(step_i, i)`, the z-index of step `i`
    /// being `i` itself.
    pub fn weight(&self) -> FactoredTerm {
        let mut factors = Vec::new();
        for (idx, step) in self.steps.iter().enumerate() {
            factors.extend_from_slice(weight_factored(step, idx + 1).factors());
        }
        FactoredTerm::new(factors)
    }

    /// All factors of the path: pairs `(a, q)` with `a ≤ λ_q` and
    /// `u_{q−1}(a) = u_q(a)`, carrying the value `u_q(a)`.
    pub fn factors(&self) -> Vec<Factor> {
        let mut out = Vec::new();
        for (idx, step) in self.steps.iter().enumerate() {
            let q = idx + 1;
            for a in 1..=step.k {
                if step.source.value(a) == step.target.value(a) {
                    out.push(Factor::new(a, q, step.target.value(a)));
                }
            }
        }
        out
    }
}

/// Sign class of a path factor under the specialization `z = y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Negative,
    Zero,
    Positive,
}

/// A factor `(a, q)` of a path: the weight contribution `y_{value} − z_q`
/// from row `a` in column `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub row: usize,
    pub column: usize,
    /// The fixed value `u_q(a)`.
    pub value: usize,
    pub kind: FactorKind,
}

impl Factor {
    fn new(row: usize, column: usize, value: usize) -> Factor {
        let kind = match value.cmp(&column) {
            std::cmp::Ordering::Less => FactorKind::Negative,
            std::cmp::Ordering::Equal => FactorKind::Zero,
            std::cmp::Ordering::Greater => FactorKind::Positive,
        };
        Factor { row, column, value, kind }
    }
}

/// Outcome of [`check_hypotheses`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every descent of `u` is `≥ p` and every descent of `v` is `≤ p`,
    /// with the least such `p > 0`.
    SeparatedDescents(usize),
    /// The canonical dominant-approximation word of `v` avoids the
    /// descents of `u`.
    GeneralWord,
    Fails,
}

/// Which product hypothesis a pair `(u, v)` satisfies, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub verdict: Verdict,
    /// For [`Verdict::GeneralWord`], the witnessing word.
    pub word: Option<Vec<usize>>,
}

/// All Pieri paths from `u` of shape `lambda`, grouped by endpoint, each
/// with its factored weight.
pub fn enumerate_paths(
    u: &Perm,
    lambda: &[usize],
) -> BTreeMap<Perm, Vec<(PieriPath, FactoredTerm)>> {
    let mut partial = vec![(vec![u.clone()], Vec::new())];
    for (idx, &k) in lambda.iter().enumerate() {
        debug_assert!(idx == 0 || lambda[idx - 1] >= k, "shape must be a partition");
        let mut next = Vec::with_capacity(partial.len());
        for (chain, steps) in &partial {
            let tip = chain.last().unwrap();
            for step in pieri_successors(tip, k) {
                let mut chain = chain.clone();
                let mut steps: Vec<PieriStep> = steps.clone();
                chain.push(step.target.clone());
                steps.push(step);
                next.push((chain, steps));
            }
        }
        partial = next;
    }
    let mut grouped: BTreeMap<Perm, Vec<(PieriPath, FactoredTerm)>> = BTreeMap::new();
    for (chain, steps) in partial {
        let path = PieriPath { chain, shape: lambda.to_vec(), steps };
        let weight = path.weight();
        grouped.entry(path.endpoint().clone()).or_default().push((path, weight));
    }
    grouped
}

/// The fold behind `d_coefficients`, keeping one factored term per path.
fn d_raw(u: &Perm, lambda: &[usize]) -> BTreeMap<Perm, FactoredSum> {
    let mut acc = BTreeMap::from([(u.clone(), FactoredSum::from(FactoredTerm::one()))]);
    for (idx, &k) in lambda.iter().enumerate() {
        let j = idx + 1;
        let mut next: BTreeMap<Perm, FactoredSum> = BTreeMap::new();
        for (perm, sum) in &acc {
            for step in pieri_successors(perm, k) {
                let contribution = sum.times_term(&weight_factored(&step, j));
                match next.entry(step.target) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let merged = e.get().add(&contribution);
                        e.insert(merged);
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(contribution);
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

/// The coefficients `d_{u,λ}^w(y;z)`: the expansion of
/// `S_u(x;y)·∏_i E_{λ_i}(x;z_i)` in the basis `S_w(x;y)`, computed by
/// folding the Pieri rule over the parts of `λ` in decreasing degree with
/// increasing z-index. Each coefficient is the sum of the weights of the
/// shape-`λ` paths from `u` to `w`.
pub fn d_coefficients(u: &Perm, lambda: &[usize]) -> CoeffMap {
    let mut out = CoeffMap::new();
    for (w, sum) in d_raw(u, lambda) {
        out.add_factored(w, sum);
    }
    out
}

/// Decides whether the formula path applies to `S_u(x;y)·S_v(x;z)`:
/// separated descents first (with the least valid `p`), then the
/// descent-avoiding word condition, else `Fails`.
pub fn check_hypotheses(u: &Perm, v: &Perm) -> Hypotheses {
    let du = u.descents();
    let dv = v.descents();
    let least = dv.last().copied().unwrap_or(0).max(1);
    if du.first().is_none_or(|&m| least <= m) {
        return Hypotheses { verdict: Verdict::SeparatedDescents(least), word: None };
    }
    let word = v.dominant_approximation().word;
    if word.iter().all(|i| !du.contains(i)) {
        return Hypotheses { verdict: Verdict::GeneralWord, word: Some(word) };
    }
    Hypotheses { verdict: Verdict::Fails, word: None }
}

/// `ρ = v⁻¹·μ_v` as a permutation, from the canonical word.
fn dominant_quotient(word: &[usize]) -> Perm {
    word.iter().fold(Perm::identity(), |r, &i| r.compose(&Perm::s(i)))
}

/// The coefficients `e_{uv}^w(y;z)` expanding `S_u(x;y)·S_v(x;z) =
/// Σ_w e_{uv}^w(y;z)·S_w(x;y)`, valid whenever [`check_hypotheses`] does
/// not fail: compute `d_{u,λ(v)}`, then keep the endpoint `w' = w·ρ` for
/// `ρ = v⁻¹μ_v` exactly when `ℓ(w') − ℓ(w) = ℓ(ρ)`.
pub fn e_coefficients(u: &Perm, v: &Perm) -> Result<CoeffMap, ProductError> {
    if check_hypotheses(u, v).verdict == Verdict::Fails {
        return Err(ProductError::HypothesesFail);
    }
    let data = v.dominant_approximation();
    let rho = dominant_quotient(&data.word);
    let rho_inv = rho.inverse();
    let lrho = rho.length();
    let mut out = CoeffMap::new();
    for (wp, sum) in d_raw(u, &data.lambda) {
        let w = wp.compose(&rho_inv);
        if wp.length() == w.length() + lrho {
            out.add_factored(w, sum);
        }
    }
    Ok(out)
}

/// Expands `S_u(x;y)·S_v(x;z)` in the basis `S_w(x;y)`: the formula path
/// with factored positive coefficients when the hypotheses hold, the
/// oracle otherwise.
pub fn product_mixed(u: &Perm, v: &Perm) -> CoeffMap {
    e_coefficients(u, v).unwrap_or_else(|_| oracle_coefficient(u, v))
}

/// Expands `S_u(x;y)·S_v(x;y)` (one alphabet) in the basis `S_w(x;y)`.
///
/// On the formula path — tried in both operand orders, since the product
/// is symmetric once `z = y` — every path weight containing a zero factor
/// is dropped before specializing, leaving only factors `y_i − y_j` with
/// `i > j`; the surviving coefficients are therefore visibly nonnegative
/// in the negative roots. Without a formula path the oracle result is
/// specialized instead.
pub fn product_equivariant(u: &Perm, v: &Perm) -> CoeffMap {
    let formula = e_coefficients(u, v).or_else(|_| e_coefficients(v, u));
    let mut out = CoeffMap::new();
    match formula {
        Ok(m) => {
            for (w, coeff) in m.iter() {
                let specialized = coeff
                    .factored
                    .as_ref()
                    .expect("formula path carries factored coefficients")
                    .map_terms(|t| {
                        t.map_vars(|var| match var.family {
                            Family::Z => Var::y(var.index),
                            _ => var,
                        })
                    })
                    .retain(|t| !t.has_zero_factor());
                out.add_factored(w.clone(), specialized);
            }
        }
        Err(_) => {
            for (w, coeff) in oracle_coefficient(u, v).iter() {
                out.add_poly(w.clone(), coeff.poly.rename_family(Family::Z, Family::Y));
            }
        }
    }
    out
}

/// A subproblem of the transition walk, named by its sorted operand pair.
type PairKey = (Perm, Perm);

/// Expansions awaiting consumption, with their remaining consumer counts.
type Frontier = HashMap<PairKey, (Rc<BTreeMap<Perm, BigInt>>, usize)>;

fn pair_key(u: &Perm, v: &Perm) -> PairKey {
    if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) }
}

/// One planned subproblem: either a formula-eligible orientation, or a
/// split into the Monk child and the length-raising side children.
enum TransitionNode {
    /// `ordinary_formula(a, b)` applies directly.
    Formula(Perm, Perm),
    /// `S_keep·S_split = x_r·S_main + Σ sides`, recorded as child keys.
    Split { r: usize, main: PairKey, sides: Vec<PairKey> },
}

/// Plans one subproblem without expanding anything.
fn plan_ordinary(u: &Perm, v: &Perm) -> TransitionNode {
    // Prefer decomposing the operand nearer its dominant approximation.
    let ordered = if dominant_distance(v) <= dominant_distance(u) { [(u, v), (v, u)] } else { [(v, u), (u, v)] };
    for (a, b) in ordered {
        if check_hypotheses(a, b).verdict != Verdict::Fails {
            return TransitionNode::Formula(a.clone(), b.clone());
        }
    }
    let (keep, split) = ordered[0];

    // Transition: with r the last descent of `split` and s the largest
    // position past r holding a smaller value, `S_split = x_r·S_{v1} +
    // Σ_q S_{v1·t_{qr}}` where `v1 = split·t_{rs}` and q < r raises the
    // length of v1 by one. Each summand is strictly closer to dominant
    // (lower length, or lexicographically larger at equal length), so the
    // walk grounds out in formula-eligible pairs.
    let r = *split.descents().last().expect("non-dominant permutation has a descent");
    let s = (r + 1..=split.window_len())
        .rev()
        .find(|&j| split.value(j) < split.value(r))
        .expect("a descent has a later smaller value");
    let v1 = split.right_mul_t(r, s);
    let sides = (1..r)
        .filter(|&q| v1.t_raises_by_one(q, r))
        .map(|q| pair_key(keep, &v1.right_mul_t(q, r)))
        .collect();
    TransitionNode::Split { r, main: pair_key(keep, &v1), sides }
}

/// The ordinary structure constants: `S_u(x;0)·S_v(x;0) = Σ_w c·S_w(x;0)`
/// with nonnegative integer `c`.
///
/// Setting `y = z = 0` kills every Pieri step that fixes a value, so the
/// formula path degenerates to counting chains of full-jump steps — pure
/// integer arithmetic. When neither operand order satisfies the
/// hypotheses, the operand closer to dominant is split by the transition
/// recurrence (peel the last-descent transposition, then Monk's rule for
/// the resulting `x_r` factor) until the formula applies. The walk first
/// maps out the subproblem graph, then expands children before parents,
/// dropping each expansion at its last consumer: every distinct
/// subproblem is expanded exactly once, and peak memory tracks the live
/// frontier instead of every expansion ever produced.
pub fn product_ordinary(u: &Perm, v: &Perm) -> BTreeMap<Perm, BigInt> {
    let root = pair_key(u, v);

    // Map out the subproblem graph, counting each node's consumers.
    let mut nodes: HashMap<PairKey, TransitionNode> = HashMap::new();
    let mut uses: HashMap<PairKey, usize> = HashMap::from([(root.clone(), 1)]);
    let mut work = vec![root.clone()];
    while let Some(key) = work.pop() {
        if nodes.contains_key(&key) {
            continue;
        }
        let node = plan_ordinary(&key.0, &key.1);
        if let TransitionNode::Split { main, sides, .. } = &node {
            for child in std::iter::once(main).chain(sides) {
                *uses.entry(child.clone()).or_insert(0) += 1;
                work.push(child.clone());
            }
        }
        nodes.insert(key, node);
    }

    // Expand children before parents, freeing as consumers finish.
    let mut results = Frontier::new();
    let mut stack = vec![root.clone()];
    while let Some(key) = stack.last().cloned() {
        if results.contains_key(&key) {
            stack.pop();
            continue;
        }
        let expansion = match &nodes[&key] {
            TransitionNode::Formula(a, b) => ordinary_formula(a, b),
            TransitionNode::Split { r, main, sides } => {
                let pending: Vec<PairKey> = std::iter::once(main)
                    .chain(sides.iter())
                    .filter(|k| !results.contains_key(*k))
                    .cloned()
                    .collect();
                if !pending.is_empty() {
                    stack.extend(pending);
                    continue;
                }
                assemble_ordinary(*r, main, sides, &mut results)
            }
        };
        stack.pop();
        nodes.remove(&key);
        let consumers = uses.remove(&key).expect("every planned node has a consumer");
        results.insert(key, (Rc::new(expansion), consumers));
    }
    let (expansion, _) = results.remove(&root).expect("the root was expanded");
    Rc::try_unwrap(expansion).unwrap_or_else(|rc| (*rc).clone())
}

/// Steps of the canonical walk from `v` up to its dominant approximation;
/// zero exactly for dominant `v`.
fn dominant_distance(v: &Perm) -> usize {
    v.dominant_approximation().word.len()
}

/// Combines child expansions per the transition identity at `y = z = 0`.
fn assemble_ordinary(r: usize, main: &PairKey, sides: &[PairKey], results: &mut Frontier) -> BTreeMap<Perm, BigInt> {
    let mut out: BTreeMap<Perm, BigInt> = BTreeMap::new();
    // Monk's rule on each term of the main child picks up the x_r factor.
    for (w, c) in consume(results, main).iter() {
        for b in r + 1..=w.window_len().max(r) + 1 {
            if w.t_raises_by_one(r, b) {
                *out.entry(w.right_mul_t(r, b)).or_default() += c;
            }
        }
        for a in 1..r {
            if w.t_raises_by_one(a, r) {
                *out.entry(w.right_mul_t(a, r)).or_default() -= c;
            }
        }
    }
    for side in sides {
        for (w, c) in consume(results, side).iter() {
            *out.entry(w.clone()).or_default() += c;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

/// Reads a child expansion, dropping it after its final consumer.
fn consume(results: &mut Frontier, key: &PairKey) -> Rc<BTreeMap<Perm, BigInt>> {
    let entry = results.get_mut(key).expect("children are expanded before parents");
    entry.1 -= 1;
    let map = entry.0.clone();
    if entry.1 == 0 {
        results.remove(key);
    }
    map
}

/// The formula path at `y = z = 0`: fold full-jump Pieri steps over
/// `λ(v)`, counting multiplicities, then apply the endpoint filter.
fn ordinary_formula(u: &Perm, v: &Perm) -> BTreeMap<Perm, BigInt> {
    let data = v.dominant_approximation();
    let mut acc = BTreeMap::from([(u.clone(), BigInt::from(1))]);
    for &k in &data.lambda {
        let mut next: BTreeMap<Perm, BigInt> = BTreeMap::new();
        for (perm, c) in &acc {
            for target in pieri_full_jump_targets(perm, k) {
                *next.entry(target).or_default() += c;
            }
        }
        acc = next;
    }
    let rho = dominant_quotient(&data.word);
    let rho_inv = rho.inverse();
    let lrho = rho.length();
    let mut out = BTreeMap::new();
    for (wp, c) in acc {
        let w = wp.compose(&rho_inv);
        if wp.length() == w.length() + lrho {
            out.insert(w, c);
        }
    }
    out
}

/// The positive expression of `S_v(x;y)` as a sum over Pieri paths of
/// products of `(x_i − y_j)`: the coefficient `e_{1,v}^1` with its
/// alphabets renamed `y → x`, `z → y`.
pub fn schubert_positive(v: &Perm) -> Vec<FactoredTerm> {
    let data = v.dominant_approximation();
    let rho = dominant_quotient(&data.word);
    let sum = d_raw(&Perm::identity(), &data.lambda).remove(&rho).unwrap_or_else(FactoredSum::zero);
    sum.terms().iter().map(|t| t.map_vars(coefficient_to_x_alphabet)).collect()
}

/// Renames a `(y;z)` coefficient variable into the `(x;y)` alphabets.
fn coefficient_to_x_alphabet(var: Var) -> Var {
    match var.family {
        Family::Y => Var::x(var.index),
        Family::Z => Var::y(var.index),
        _ => var,
    }
}

/// The skew coefficient `c_{u,w_0(n)}^w(x;y)` in factored positive form.
///
/// `w_0(n)` is dominant with staircase shape, so the formula path applies
/// to every `u`; expect `u, w ∈ S_{n+1}`.
pub fn skew_schubert_factored(u: &Perm, w: &Perm, n: usize) -> Result<FactoredSum, ProductError> {
    if u.length() > w.length() {
        return Err(ProductError::LengthOrder { lu: u.length(), lw: w.length() });
    }
    let lambda: Vec<usize> = (1..=n).rev().collect();
    let sum = d_raw(u, &lambda).remove(w).unwrap_or_else(FactoredSum::zero);
    Ok(sum.map_terms(|t| t.map_vars(coefficient_to_x_alphabet)))
}

/// The skew coefficient `c_{u,w_0(n)}^w(x;y)` expanded, optionally
/// specialized at `y = 0`; the result has nonnegative integer
/// coefficients.
pub fn skew_schubert(u: &Perm, w: &Perm, n: usize, set_y_zero: bool) -> Result<Poly, ProductError> {
    let expanded = skew_schubert_factored(u, w, n)?.expand();
    if !set_y_zero {
        return Ok(expanded);
    }
    let map = (1..=expanded.max_index(Family::Y).unwrap_or(0))
        .map(|i| (Var::y(i), Poly::zero()))
        .collect();
    Ok(expanded.substitute(&map))
}

/// [`skew_schubert`] followed by the variable relabeling `x_j → x_{u⁻¹(j)}`,
/// i.e. the skew Schubert polynomial proper rather than the bare
/// coefficient.
pub fn skew_schubert_relabeled(
    u: &Perm,
    w: &Perm,
    n: usize,
    set_y_zero: bool,
) -> Result<Poly, ProductError> {
    let plain = skew_schubert(u, w, n, set_y_zero)?;
    let uinv = u.inverse();
    let map = (1..=plain.max_index(Family::X).unwrap_or(0))
        .map(|j| (Var::x(j), Poly::var(Var::x(uinv.value(j)))))
        .collect();
    Ok(plain.substitute(&map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::double_schubert;
    use crate::perm::all_perms;

    fn p(w: &[usize]) -> Perm {
        Perm::from_window(w).unwrap()
    }

    fn poly(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    /// Expanded formula-path coefficients, for comparisons.
    fn e_expanded(u: &Perm, v: &Perm) -> BTreeMap<Perm, Poly> {
        e_coefficients(u, v).unwrap().expanded()
    }

    #[test]
    fn test_enumerate_paths_shapes() {
        let grouped = enumerate_paths(&p(&[1, 3, 4, 2]), &[]);
        assert_eq!(grouped.len(), 1);
        let (path, weight) = &grouped[&p(&[1, 3, 4, 2])][0];
        assert_eq!(path.chain.len(), 1);
        assert_eq!(weight.to_string(), "1");

        let grouped = enumerate_paths(&p(&[1, 3, 4, 2]), &[3, 2, 2]);
        let target = p(&[4, 5, 1, 2, 3]);
        let wanted: Vec<&(PieriPath, FactoredTerm)> = grouped[&target]
            .iter()
            .filter(|(path, _)| {
                path.chain[1] == p(&[1, 3, 5, 2, 4]) && path.chain[2] == p(&[3, 5, 1, 2, 4])
            })
            .collect();
        assert_eq!(wanted.len(), 1);
        assert_eq!(wanted[0].1.to_string(), "(y1-z1)*(y3-z1)*(y5-z3)");
    }

    #[test]
    fn test_d_coefficients_small() {
        let m = d_coefficients(&p(&[1, 3, 2]), &[]);
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(&p(&[1, 3, 2])).unwrap().poly, Poly::one());

        let m = d_coefficients(&p(&[1, 3, 2]), &[1, 1]);
        assert_eq!(m.get(&p(&[3, 1, 2])).unwrap().poly, poly("y1 + y3 - z1 - z2"));
        assert_eq!(m.get(&p(&[1, 3, 2])).unwrap().poly, poly("y1 - z1").mul(&poly("y1 - z2")));
        assert_eq!(m.get(&p(&[3, 2, 1])).unwrap().poly, Poly::one());
    }

    #[test]
    fn test_d_equals_path_weight_sum() {
        for u in [p(&[1, 3, 2]), p(&[2, 1, 4, 3]), p(&[3, 1, 2])] {
            for lambda in [vec![2, 1], vec![2, 2], vec![3, 1, 1]] {
                let folded = d_coefficients(&u, &lambda).expanded();
                let mut summed: BTreeMap<Perm, Poly> = BTreeMap::new();
                for (w, paths) in enumerate_paths(&u, &lambda) {
                    let mut total = Poly::zero();
                    for (_, weight) in &paths {
                        total.add_assign(&weight.expand());
                    }
                    summed.insert(w, total);
                }
                summed.retain(|_, q| !q.is_zero());
                assert_eq!(folded, summed, "u={u:?} lambda={lambda:?}");
            }
        }
    }

    #[test]
    fn test_check_hypotheses() {
        let h = check_hypotheses(&p(&[1, 3, 5, 2, 4]), &p(&[1, 4, 2, 3]));
        assert_eq!(h.verdict, Verdict::SeparatedDescents(2));

        let h = check_hypotheses(&p(&[4, 1, 3, 2]), &p(&[3, 1, 4, 2]));
        assert_eq!(h.verdict, Verdict::GeneralWord);
        assert_eq!(h.word, Some(vec![2]));

        let h = check_hypotheses(&p(&[2, 1]), &p(&[1, 3, 2]));
        assert_eq!(h.verdict, Verdict::Fails);

        // Dominant second operands always pass: the canonical word is empty.
        for u in all_perms(4) {
            for v in all_perms(4).into_iter().filter(Perm::is_dominant) {
                assert_ne!(check_hypotheses(&u, &v).verdict, Verdict::Fails, "u={u:?} v={v:?}");
            }
        }
    }

    #[test]
    fn test_e_coefficients_first_example() {
        let u = p(&[1, 3, 2]);
        let m = e_coefficients(&u, &u).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.get(&u).unwrap().poly, poly("y1 + y3 - z1 - z2"));
        assert_eq!(
            m.get(&u).unwrap().factored.as_ref().unwrap().to_string(),
            "(y1-z1) + (y3-z2)"
        );
        assert_eq!(m.get(&p(&[1, 4, 2, 3])).unwrap().poly, Poly::one());
        assert_eq!(m.get(&p(&[2, 3, 1])).unwrap().poly, Poly::one());
    }

    #[test]
    fn test_e_coefficients_dominant_identity_reduction() {
        // Dominant v: e reduces to d over the conjugate code, verbatim.
        let u = p(&[2, 1, 4, 3]);
        let v = p(&[3, 1, 2]); // dominant, code (2, 0)
        assert_eq!(e_expanded(&u, &v), d_coefficients(&u, &[1, 1]).expanded());
    }

    #[test]
    fn test_e_coefficients_third_example() {
        let m = e_coefficients(&p(&[1, 4, 3, 2]), &p(&[2, 4, 1, 3])).unwrap();
        let c = m.get(&p(&[3, 4, 1, 2])).unwrap();
        assert_eq!(
            c.factored.as_ref().unwrap().to_string(),
            "(y1-z1)*(y4-z1) + (y3-z2)*(y4-z1) + (y4-z1)*(y4-z3)"
        );
        let c = m.get(&p(&[3, 5, 1, 2, 4])).unwrap();
        assert_eq!(
            c.factored.as_ref().unwrap().to_string(),
            "(y1-z1) + (y3-z2) + (y4-z1) + (y5-z3)"
        );
    }

    #[test]
    fn test_e_coefficients_reject_failing_pair() {
        assert_eq!(
            e_coefficients(&p(&[2, 1]), &p(&[1, 3, 2])).unwrap_err(),
            ProductError::HypothesesFail
        );
    }

    #[test]
    fn test_e_matches_oracle_sample() {
        for (u, v) in [
            (p(&[1, 3, 2]), p(&[1, 3, 2])),
            (p(&[2, 1, 4, 3]), p(&[3, 1, 2])),
            (p(&[4, 1, 3, 2]), p(&[3, 1, 4, 2])),
            (p(&[1, 3, 5, 2, 4]), p(&[1, 4, 2, 3])),
        ] {
            assert_eq!(
                e_expanded(&u, &v),
                oracle_coefficient(&u, &v).expanded(),
                "u={u:?} v={v:?}"
            );
        }
    }

    #[test]
    fn test_product_mixed_dispatch() {
        // Formula-eligible pairs carry factored coefficients.
        let m = product_mixed(&p(&[1, 3, 2]), &p(&[1, 3, 2]));
        assert!(m.iter().all(|(_, c)| c.factored.is_some()));

        // A failing pair falls back to the oracle and still expands the
        // product correctly.
        let u = p(&[2, 1]);
        let v = p(&[1, 3, 2]);
        let m = product_mixed(&u, &v);
        assert!(m.iter().all(|(_, c)| c.factored.is_none()));
        let mut rebuilt = Poly::zero();
        for (w, c) in m.iter() {
            rebuilt.add_assign(&c.poly.mul(&double_schubert(w, Family::Y)));
        }
        let direct = double_schubert(&u, Family::Y).mul(&double_schubert(&v, Family::Z));
        assert_eq!(rebuilt, direct);

        let id = Perm::identity();
        let m = product_mixed(&id, &id);
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(&id).unwrap().poly, Poly::one());
    }

    #[test]
    fn test_product_equivariant_grassmannian() {
        let u = p(&[2, 4, 1, 3]);
        let v = p(&[1, 3, 2]);
        let m = product_equivariant(&u, &v);
        assert_eq!(m.get(&u).unwrap().poly, poly("y4 - y1"));
        assert_eq!(
            m.get(&u).unwrap().factored.as_ref().unwrap().to_string(),
            "(y2-y1) + (y4-y2)"
        );
        assert_eq!(m.get(&p(&[3, 4, 1, 2])).unwrap().poly, Poly::one());
    }

    #[test]
    fn test_product_equivariant_mixed_sizes() {
        let m = product_equivariant(&p(&[1, 2, 4, 6, 3, 5]), &p(&[3, 1, 4, 2]));
        assert_eq!(m.len(), 5);
        assert_eq!(m.get(&p(&[3, 1, 4, 6, 2, 5])).unwrap().poly, poly("y4 - y2"));
        for w in [
            p(&[3, 1, 5, 6, 2, 4]),
            p(&[3, 1, 6, 4, 2, 5]),
            p(&[3, 2, 4, 6, 1, 5]),
            p(&[4, 1, 6, 2, 3, 5]),
        ] {
            assert_eq!(m.get(&w).unwrap().poly, Poly::one(), "w={w:?}");
        }
    }

    #[test]
    fn test_product_equivariant_non_schur() {
        let m = product_equivariant(&p(&[1, 3, 5, 4, 2]), &p(&[3, 1, 4, 2]));
        assert_eq!(m.len(), 10);
        assert_eq!(
            m.get(&p(&[3, 1, 5, 4, 2])).unwrap().poly,
            poly("y3 - y2").mul(&poly("y5 - y2"))
        );
        assert_eq!(m.get(&p(&[3, 2, 5, 4, 1])).unwrap().poly, poly("y3 + y5 - y1 - y2"));
        assert_eq!(m.get(&p(&[3, 4, 5, 1, 2])).unwrap().poly, poly("y3 - y2"));
        assert_eq!(m.get(&p(&[4, 1, 5, 3, 2])).unwrap().poly, poly("y5 - y2"));
        assert_eq!(m.get(&p(&[3, 1, 6, 4, 2, 5])).unwrap().poly, poly("y3 - y2"));
        for w in [
            p(&[3, 4, 5, 2, 1]),
            p(&[4, 2, 5, 3, 1]),
            p(&[4, 3, 5, 1, 2]),
            p(&[3, 2, 6, 4, 1, 5]),
            p(&[4, 1, 6, 3, 2, 5]),
        ] {
            assert_eq!(m.get(&w).unwrap().poly, Poly::one(), "w={w:?}");
        }
    }

    #[test]
    fn test_product_equivariant_identity_and_fallback() {
        let u = p(&[3, 1, 2]);
        let m = product_equivariant(&u, &Perm::identity());
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(&u).unwrap().poly, Poly::one());

        // Both orders fail; the oracle fallback must agree with direct
        // expansion of the one-alphabet product.
        let u = p(&[2, 1, 4, 3]);
        let v = p(&[1, 3, 2]);
        assert_eq!(check_hypotheses(&u, &v).verdict, Verdict::Fails);
        assert_eq!(check_hypotheses(&v, &u).verdict, Verdict::Fails);
        let m = product_equivariant(&u, &v);
        let mut rebuilt = Poly::zero();
        for (w, c) in m.iter() {
            rebuilt.add_assign(&c.poly.mul(&double_schubert(w, Family::Y)));
        }
        let direct = double_schubert(&u, Family::Y)
            .mul(&double_schubert(&v, Family::Z))
            .rename_family(Family::Z, Family::Y);
        assert_eq!(rebuilt, direct);
    }

    #[test]
    fn test_general_word_example() {
        let m = e_coefficients(&p(&[4, 1, 3, 2]), &p(&[3, 1, 4, 2])).unwrap();
        assert_eq!(m.len(), 9);
        let f = |w: &[usize]| m.get(&p(w)).unwrap().factored.as_ref().unwrap().to_string();
        assert_eq!(f(&[4, 1, 3, 2]), "(y1-z1)*(y4-z1)*(y4-z2) + (y3-z2)*(y4-z1)*(y4-z2)");
        assert_eq!(f(&[4, 2, 3, 1]), "(y4-z1)*(y4-z2)");
        assert_eq!(
            f(&[5, 1, 3, 2, 4]),
            "(y1-z1)*(y4-z1) + (y1-z1)*(y5-z2) + (y3-z2)*(y4-z1) + (y3-z2)*(y5-z2)"
        );
        assert_eq!(f(&[4, 1, 5, 2, 3]), "(y4-z1)*(y4-z2)");
        assert_eq!(f(&[5, 1, 4, 2, 3]), "(y4-z1) + (y5-z2)");
        assert_eq!(f(&[5, 2, 3, 1, 4]), "(y4-z1) + (y5-z2)");
        assert_eq!(f(&[6, 1, 3, 2, 4, 5]), "(y1-z1) + (y3-z2)");
        assert_eq!(f(&[6, 1, 4, 2, 3, 5]), "1");
        assert_eq!(f(&[6, 2, 3, 1, 4, 5]), "1");
    }

    #[test]
    fn test_schubert_positive_goldens() {
        assert_eq!(schubert_positive(&Perm::identity()), vec![FactoredTerm::one()]);

        let terms = schubert_positive(&p(&[1, 3, 2]));
        let rendered: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(rendered, vec!["(x1-y1)", "(x2-y2)"]);

        let terms = schubert_positive(&p(&[1, 4, 3, 2]));
        let rendered: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        let expected = [
            "(x1-y1)*(x1-y2)*(x2-y1)",
            "(x1-y1)*(x1-y2)*(x3-y2)",
            "(x1-y1)*(x2-y1)*(x2-y3)",
            "(x1-y1)*(x2-y3)*(x3-y2)",
            "(x2-y2)*(x2-y3)*(x3-y2)",
        ];
        assert_eq!(rendered, expected);
    }

    #[test]
    fn test_schubert_positive_sums_to_schubert() {
        for v in all_perms(4) {
            let mut total = Poly::zero();
            for term in schubert_positive(&v) {
                total.add_assign(&term.expand());
            }
            assert_eq!(total, double_schubert(&v, Family::Y), "v={v:?}");
        }
    }

    #[test]
    fn test_skew_schubert_kirillov() {
        let u = p(&[3, 1, 2, 4]);
        let w = p(&[4, 3, 1, 2]);
        assert_eq!(
            skew_schubert_factored(&u, &w, 3).unwrap().to_string(),
            "(x1-y1)*(x3-y1)*(x3-y2) + (x1-y1)*(x3-y1)*(x4-y3) + (x1-y1)*(x4-y2)*(x4-y3)"
        );
        let specialized = skew_schubert(&u, &w, 3, true).unwrap();
        assert_eq!(
            specialized,
            Poly::var(Var::x(1)).mul(&poly("x3^2 + x3*x4 + x4^2"))
        );
        assert_eq!(
            skew_schubert_relabeled(&u, &w, 3, true).unwrap(),
            Poly::var(Var::x(2)).mul(&poly("x1^2 + x1*x4 + x4^2"))
        );
    }

    #[test]
    fn test_skew_schubert_edges() {
        // The change of basis is unitriangular: the top coefficient is 1.
        let w0 = Perm::longest_element(3);
        assert_eq!(skew_schubert(&Perm::identity(), &w0, 3, false).unwrap(), Poly::one());
        assert_eq!(
            skew_schubert(&p(&[2, 1]), &Perm::identity(), 3, false).unwrap_err(),
            ProductError::LengthOrder { lu: 1, lw: 0 }
        );
        // Unreachable endpoints give the zero polynomial.
        assert!(skew_schubert(&p(&[2, 1]), &p(&[1, 3, 2]), 3, false).unwrap().is_zero());
    }

    #[test]
    fn test_pathequal_zero_factor() {
        // A negative factor in some column forces a zero factor in an
        // earlier-or-equal column.
        let mut paths_seen = 0;
        for u in all_perms(3) {
            for lambda in [vec![2, 1], vec![2, 2, 1]] {
                for (_, paths) in enumerate_paths(&u, &lambda) {
                    for (path, _) in paths {
                        paths_seen += 1;
                        let factors = path.factors();
                        for f in &factors {
                            if f.kind == FactorKind::Negative {
                                assert!(
                                    factors.iter().any(|g| {
                                        g.kind == FactorKind::Zero && g.column <= f.column
                                    }),
                                    "path {:?} breaks the zero-factor rule",
                                    path.chain
                                );
                            }
                        }
                    }
                }
            }
        }
        assert!(paths_seen > 100);
    }

    #[test]
    fn test_product_ordinary_small() {
        let id = Perm::identity();
        assert_eq!(product_ordinary(&id, &id), BTreeMap::from([(id.clone(), BigInt::from(1))]));

        let s1 = p(&[2, 1]);
        assert_eq!(
            product_ordinary(&s1, &s1),
            BTreeMap::from([(p(&[3, 1, 2]), BigInt::from(1))])
        );

        let u = p(&[1, 3, 2]);
        assert_eq!(
            product_ordinary(&u, &u),
            BTreeMap::from([
                (p(&[1, 4, 2, 3]), BigInt::from(1)),
                (p(&[2, 3, 1]), BigInt::from(1)),
            ])
        );
    }

    #[test]
    fn test_product_ordinary_transition_pair() {
        // Both orientations fail the hypotheses, forcing the transition
        // recursion; the oracle at y = z = 0 is the reference.
        let u = p(&[2, 1, 4, 3]);
        let v = p(&[1, 3, 2]);
        assert_eq!(check_hypotheses(&u, &v).verdict, Verdict::Fails);
        assert_eq!(check_hypotheses(&v, &u).verdict, Verdict::Fails);
        assert_eq!(product_ordinary(&u, &v), ordinary_oracle(&u, &v));
    }

    #[test]
    fn test_product_ordinary_matches_oracle_on_sample() {
        let sample = [
            (p(&[3, 1, 2]), p(&[2, 3, 1])),
            (p(&[2, 1, 4, 3]), p(&[2, 1, 4, 3])),
            (p(&[1, 3, 2]), p(&[3, 2, 1])),
            (p(&[4, 1, 3, 2]), p(&[3, 1, 4, 2])),
        ];
        for (u, v) in sample {
            assert_eq!(product_ordinary(&u, &v), ordinary_oracle(&u, &v), "u={u:?} v={v:?}");
            assert_eq!(product_ordinary(&u, &v), product_ordinary(&v, &u));
        }
    }

    /// Oracle ordinary constants: expand the mixed product and read off the
    /// constant term of each coefficient at y = z = 0.
    fn ordinary_oracle(u: &Perm, v: &Perm) -> BTreeMap<Perm, BigInt> {
        let mut out = BTreeMap::new();
        for (w, coeff) in oracle_coefficient(u, v).iter() {
            let constant = coeff
                .poly
                .terms()
                .filter(|(m, _)| m.is_constant())
                .map(|(_, c)| c.clone())
                .next()
                .unwrap_or_default();
            if constant != BigInt::from(0) {
                out.insert(w.clone(), constant);
            }
        }
        out
    }

    #[test]
    fn test_e_coefficients_second_example() {
        let m = e_coefficients(&p(&[1, 3, 5, 2, 4]), &p(&[1, 4, 2, 3])).unwrap();
        assert_eq!(m.len(), 8);
        let f = |w: &[usize]| m.get(&p(w)).unwrap().factored.as_ref().unwrap().to_string();
        assert_eq!(
            f(&[1, 3, 5, 2, 4]),
            "(y1-z1)*(y1-z2) + (y1-z1)*(y3-z3) + (y3-z2)*(y3-z3)"
        );
        assert_eq!(f(&[1, 4, 5, 2, 3]), "(y1-z1) + (y3-z2) + (y4-z3)");
        assert_eq!(f(&[2, 3, 5, 1, 4]), "(y1-z1) + (y2-z2) + (y3-z3)");
        assert_eq!(f(&[1, 5, 3, 2, 4]), "(y1-z1) + (y3-z2) + (y5-z3)");
        for w in [
            p(&[1, 5, 4, 2, 3]),
            p(&[2, 4, 5, 1, 3]),
            p(&[2, 5, 3, 1, 4]),
            p(&[1, 6, 3, 2, 4, 5]),
        ] {
            assert_eq!(m.get(&w).unwrap().poly, Poly::one(), "w={w:?}");
        }
    }

    #[test]
    fn test_coefficient_homogeneity() {
        let u = p(&[1, 3, 5, 2, 4]);
        let v = p(&[1, 4, 2, 3]);
        let m = e_coefficients(&u, &v).unwrap();
        for (w, c) in m.iter() {
            assert_eq!(
                c.poly.is_homogeneous(),
                Some(u.length() + v.length() - w.length()),
                "w={w:?}"
            );
        }
    }
}
