//! Brute-force engine for everything the combinatorial formulas compute:
//! divided difference operators, explicit double Schubert polynomials, skew
//! divided differences, and expansion of arbitrary polynomials in the
//! double Schubert basis.
//!
//! This path is exponentially slower than the Pieri machinery but fully
//! general; the engine falls back to it when the formula hypotheses fail,
//! and the test suite uses it as the independent oracle throughout.

use crate::perm::Perm;
use crate::pieri::{Coeff, CoeffMap};
use crate::poly::{Family, Poly, Var};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use thiserror::Error;

/// Errors raised by the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The quotient `(p − s_i(p))/(x_i − x_{i+1})` left a remainder. The
    /// numerator is antisymmetric in `x_i, x_{i+1}`, so this is impossible
    /// for correct polynomial arithmetic; it signals an internal bug.
    #[error("divided difference left a remainder (arithmetic bug)")]
    InexactDivision,
}

/// The divided difference `∂^{s_i}(p) = (p − s_i(p))/(x_i − x_{i+1})`,
/// where `s_i` exchanges `x_i` and `x_{i+1}` and fixes all other variables.
///
/// Computed by synthetic division in `x_i`: each numerator term
/// `c·x_i^d·x_{i+1}^e·m` contributes `c·Σ_{t<d} x_i^{d−1−t}·x_{i+1}^{e+t}·m`
/// to the quotient and `c·x_{i+1}^{d+e}·m` to the remainder, which must
/// cancel to zero overall.
pub fn divided_difference(p: &Poly, i: usize) -> Result<Poly, OracleError> {
    let xi = Var::x(i);
    let xnext = Var::x(i + 1);
    let numerator = p.sub(&p.swap_vars(xi, xnext));
    let mut quotient = Poly::zero();
    let mut remainder = Poly::zero();
    for (mono, coeff) in numerator.terms() {
        let d = mono.exp(xi);
        let rest = mono.div_var(xi, d).unwrap();
        for t in 0..d {
            quotient.add_term(
                rest.mul_var(xi, d - 1 - t).mul_var(xnext, t),
                coeff.clone(),
            );
        }
        remainder.add_term(rest.mul_var(xnext, d), coeff.clone());
    }
    if !remainder.is_zero() {
        return Err(OracleError::InexactDivision);
    }
    Ok(quotient)
}

/// Applies divided differences left to right: `word[0]` first.
///
/// For a reduced word of `u` read right to left this computes `∂^u`; a
/// non-reduced word annihilates every polynomial.
pub fn apply_word(p: &Poly, word: &[usize]) -> Poly {
    let mut out = p.clone();
    for &i in word {
        if out.is_zero() {
            return out;
        }
        out = divided_difference(&out, i).expect("numerator is antisymmetric");
    }
    out
}

thread_local! {
    static SCHUBERT_CACHE: RefCell<HashMap<(Perm, Family), Rc<Poly>>> =
        RefCell::new(HashMap::new());
}

/// The double Schubert polynomial `S_u(x;c)` with coefficient alphabet
/// `c ∈ {y, z}`.
///
/// Dominant permutations get the closed product over their diagram; any
/// other `u` embeds in the least `S_{n+1}` and descends from the staircase
/// `S_{w_0(n)}(x;c) = ∏_{i+j≤n+1}(x_i − c_j)` by divided differences. The
/// result is independent of `n`.
pub fn double_schubert(u: &Perm, coeff_family: Family) -> Poly {
    assert!(
        matches!(coeff_family, Family::Y | Family::Z),
        "coefficient alphabet must be y or z"
    );
    let key = (u.clone(), coeff_family);
    let cached = SCHUBERT_CACHE.with(|c| c.borrow().get(&key).cloned());
    if let Some(p) = cached {
        return (*p).clone();
    }
    let result = if u.is_dominant() {
        let mut prod = Poly::one();
        for (i, &c) in u.code().iter().enumerate() {
            for j in 1..=c {
                prod = prod.mul(&Poly::linear(Var::x(i + 1), Var::new(coeff_family, j)));
            }
        }
        prod
    } else {
        let n = u.window_len() - 1;
        let mut staircase = Poly::one();
        for i in 1..=n {
            for j in 1..=n + 1 - i {
                staircase = staircase.mul(&Poly::linear(Var::x(i), Var::new(coeff_family, j)));
            }
        }
        let g = u.inverse().compose(&Perm::longest_element(n));
        let mut word = g.reduced_word();
        word.reverse();
        apply_word(&staircase, &word)
    };
    SCHUBERT_CACHE.with(|c| c.borrow_mut().insert(key, Rc::new(result.clone())));
    result
}

/// One primitive of a skew operator: a divided difference or a bare `s_i`
/// acting on the x variables.
#[derive(Clone, Copy, Debug)]
enum Instr {
    Dd(usize),
    Swap(usize),
}

/// Memoized instruction sequences, keyed by `(u, w)`.
type SkewCache = HashMap<(Perm, Perm), Rc<Vec<Vec<Instr>>>>;

thread_local! {
    static SKEW_CACHE: RefCell<SkewCache> =
        RefCell::new(HashMap::new());
}

/// `∂_u^w` as a sum of instruction sequences, from the recurrence: with
/// `i` the largest descent of `w`,
/// `∂_u^w = ∂_u^{ws_i}∂^{s_i} + [ℓ(us_i)<ℓ(u)] ∂_{us_i}^{ws_i} s_i`,
/// grounded in `∂_1^1 = 1` and `∂_u^1 = 0` otherwise. Sequences are stored
/// in application order (the operator adjacent to the argument first);
/// fixing the largest descent makes the memo key canonical.
fn skew_operator(u: &Perm, w: &Perm) -> Rc<Vec<Vec<Instr>>> {
    if w.is_identity() {
        return Rc::new(if u.is_identity() { vec![vec![]] } else { vec![] });
    }
    let key = (u.clone(), w.clone());
    let cached = SKEW_CACHE.with(|c| c.borrow().get(&key).cloned());
    if let Some(seqs) = cached {
        return seqs;
    }
    let i = *w.descents().last().expect("non-identity has a descent");
    let w1 = w.right_mul_s(i);
    let mut seqs = Vec::new();
    for seq in skew_operator(u, &w1).iter() {
        let mut extended = vec![Instr::Dd(i)];
        extended.extend_from_slice(seq);
        seqs.push(extended);
    }
    let us = u.right_mul_s(i);
    if us.length() < u.length() {
        for seq in skew_operator(&us, &w1).iter() {
            let mut extended = vec![Instr::Swap(i)];
            extended.extend_from_slice(seq);
            seqs.push(extended);
        }
    }
    let seqs = Rc::new(seqs);
    SKEW_CACHE.with(|c| c.borrow_mut().insert(key, seqs.clone()));
    seqs
}

/// The skew divided difference `∂_u^w` applied to `p`.
pub fn skew_dd(u: &Perm, w: &Perm, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for seq in skew_operator(u, w).iter() {
        let mut value = p.clone();
        for instr in seq {
            value = match *instr {
                Instr::Dd(i) => {
                    divided_difference(&value, i).expect("numerator is antisymmetric")
                }
                Instr::Swap(i) => value.swap_vars(Var::x(i), Var::x(i + 1)),
            };
            if value.is_zero() {
                break;
            }
        }
        out.add_assign(&value);
    }
    out
}

/// Expands `p` in the double Schubert basis: `w ↦ ∂^w(p)|_{x=y}`, over all
/// `w` up to the x-degree of `p`; the results satisfy
/// `p = Σ_w coeff(w)·S_w(x;y)`.
///
/// Candidates are grown by increasing length: `∂^{s_i w}(p) =
/// ∂^{s_i}(∂^w(p))` whenever the left product raises length, and a branch
/// is abandoned once `∂^w(p) = 0` (longer extensions stay zero).
pub fn expand_in_schubert_basis(p: &Poly) -> CoeffMap {
    let mut out = CoeffMap::new();
    let mut level: BTreeMap<Perm, Poly> = BTreeMap::new();
    if !p.is_zero() {
        level.insert(Perm::identity(), p.clone());
    }
    while !level.is_empty() {
        let mut next: BTreeMap<Perm, Poly> = BTreeMap::new();
        for (w, q) in &level {
            let coeff = q.rename_family(Family::X, Family::Y);
            if !coeff.is_zero() {
                out.insert(w.clone(), Coeff::from_poly(coeff));
            }
            let top = q.max_index(Family::X).unwrap_or(0);
            for i in 1..=top {
                let longer = Perm::s(i).compose(w);
                if longer.length() == w.length() + 1 && !next.contains_key(&longer) {
                    let derived =
                        divided_difference(q, i).expect("numerator is antisymmetric");
                    if !derived.is_zero() {
                        next.insert(longer, derived);
                    }
                }
            }
        }
        level = next;
    }
    out
}

/// The oracle's product coefficients: `w ↦ ∂_u^w(S_v(x;z))|_{x=y}`,
/// computed by expanding `S_u(x;y)·S_v(x;z)` in the basis (the generalized
/// Leibniz rule and the vanishing `S_u(y;y) = δ_{1,u}` make the two
/// formulations agree; the product form shares work across all `w`).
pub fn oracle_coefficient(u: &Perm, v: &Perm) -> CoeffMap {
    let product = double_schubert(u, Family::Y).mul(&double_schubert(v, Family::Z));
    expand_in_schubert_basis(&product)
}
