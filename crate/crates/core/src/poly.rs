//! Exact sparse multivariate polynomials over the integers.
//!
//! Variables come in four families: `x` (Schubert polynomial arguments),
//! `y` and `z` (the two coefficient alphabets), and `b` (the simple negative
//! roots β_i = y_{i+1} − y_i used for equivariant positivity). Coefficients
//! are arbitrary-precision integers; large products overflow machine words.
//!
//! Formula-path coefficients additionally carry a factored form — a sum of
//! products of linear differences — so positive display never has to be
//! recovered from the expanded polynomial by search.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The input to `expand_in_negative_roots` is not translation-invariant:
    /// the free symbol `y1` survives the rewrite.
    #[error("not a polynomial in root differences: y1 survives")]
    ResidualBase,
    /// Text did not match the canonical rendering grammar.
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Variable family, in term-order rank: x < y < z < b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    Z,
    Beta,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
            Family::Beta => 'b',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        match c {
            'x' => Some(Family::X),
            'y' => Some(Family::Y),
            'z' => Some(Family::Z),
            'b' => Some(Family::Beta),
            _ => None,
        }
    }
}

/// A single indexed variable such as `y3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn new(family: Family, index: usize) -> Var {
        debug_assert!(index >= 1);
        Var { family, index }
    }

    pub fn x(index: usize) -> Var {
        Var::new(Family::X, index)
    }

    pub fn y(index: usize) -> Var {
        Var::new(Family::Y, index)
    }

    pub fn z(index: usize) -> Var {
        Var::new(Family::Z, index)
    }

    pub fn beta(index: usize) -> Var {
        Var::new(Family::Beta, index)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// A monomial: sorted sparse list of (variable, positive exponent) pairs.
///
/// The derived ordering — lexicographic on the pair list — is the canonical
/// term order used for rendering.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pairs: Vec<(Var, u32)>,
}

impl Mono {
    /// The empty (constant) monomial.
    pub fn one() -> Mono {
        Mono::default()
    }

    pub fn var(v: Var) -> Mono {
        Mono { pairs: vec![(v, 1)] }
    }

    /// Normalizes arbitrary pairs: sorts, merges duplicates, drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Mono {
        let mut pairs: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        pairs.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Mono { pairs: merged }
    }

    pub fn is_constant(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.pairs
            .iter()
            .find(|&&(pv, _)| pv == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.pairs.iter().copied()
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.pairs.iter().map(|&(_, e)| e as usize).sum()
    }

    /// Degree in one family only.
    pub fn family_degree(&self, family: Family) -> usize {
        self.pairs
            .iter()
            .filter(|&&(v, _)| v.family == family)
            .map(|&(_, e)| e as usize)
            .sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut a, mut b) = (self.pairs.iter().peekable(), other.pairs.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Mono { pairs: out }
    }

    pub fn mul_var(&self, v: Var, e: u32) -> Mono {
        self.mul(&Mono::from_pairs([(v, e)]))
    }

    /// Divides by `v^e`; `None` if the exponent is too small.
    pub fn div_var(&self, v: Var, e: u32) -> Option<Mono> {
        if self.exp(v) < e {
            return None;
        }
        Some(Mono {
            pairs: self
                .pairs
                .iter()
                .filter_map(|&(pv, pe)| {
                    let ne = if pv == v { pe - e } else { pe };
                    (ne > 0).then_some((pv, ne))
                })
                .collect(),
        })
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: canonical-ordered terms with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::integer(1)
    }

    pub fn integer(n: i64) -> Poly {
        Poly::constant(BigInt::from(n))
    }

    pub fn constant(n: BigInt) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Mono::one(), n);
        p
    }

    pub fn var(v: Var) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Mono::var(v), BigInt::one());
        p
    }

    /// The difference `a − b`.
    pub fn linear(a: Var, b: Var) -> Poly {
        let mut p = Poly::var(a);
        p.add_term(Mono::var(b), -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `Some(c)` if the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    /// Folds `coeff * mono` into the polynomial, dropping zero results.
    pub fn add_term(&mut self, mono: Mono, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Simultaneous substitution; variables absent from the map pass through.
    /// A ring homomorphism: the result is fully expanded and renormalized.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut passthrough = Mono::one();
            for (v, e) in m.vars() {
                match map.get(&v) {
                    Some(image) => acc = acc.mul(&image.pow(e)),
                    None => passthrough = passthrough.mul_var(v, e),
                }
            }
            out.add_assign(&acc.mul_term(&passthrough, &BigInt::one()));
        }
        out
    }

    /// Exchanges two variables (a transposition substitution, term by term).
    pub fn swap_vars(&self, a: Var, b: Var) -> Poly {
        let remap = |v: Var| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        };
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Mono::from_pairs(m.vars().map(|(v, e)| (remap(v), e))),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Moves every variable of one family to the same index in another
    /// family (e.g. the specializations x=y and z=y), merging collisions.
    pub fn rename_family(&self, from: Family, to: Family) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mono = Mono::from_pairs(m.vars().map(|(v, e)| {
                if v.family == from {
                    (Var::new(to, v.index), e)
                } else {
                    (v, e)
                }
            }));
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Largest degree in one family (0 if the family is absent).
    pub fn family_degree(&self, family: Family) -> usize {
        self.terms
            .keys()
            .map(|m| m.family_degree(family))
            .max()
            .unwrap_or(0)
    }

    /// `Some(d)` if every term has total degree `d` (zero counts as any
    /// degree and reports `Some(0)`).
    pub fn is_homogeneous(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Mono::degree);
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    /// Largest index of the family appearing in the polynomial.
    pub fn max_index(&self, family: Family) -> Option<usize> {
        self.terms
            .keys()
            .flat_map(Mono::vars)
            .filter(|(v, _)| v.family == family)
            .map(|(v, _)| v.index)
            .max()
    }

    /// True iff every stored coefficient is ≥ 0.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Rewrites a y-family polynomial in the simple negative roots
    /// `b_i = y_{i+1} − y_i` via `y_i = y_1 + b_1 + … + b_{i−1}`.
    ///
    /// Fails with `ResidualBase` when the free symbol `y1` survives, i.e.
    /// the input is not invariant under translating every `y_i` at once.
    pub fn expand_in_negative_roots(&self) -> Result<Poly, PolyError> {
        assert!(
            self.terms
                .keys()
                .flat_map(Mono::vars)
                .all(|(v, _)| v.family == Family::Y),
            "expand_in_negative_roots requires a y-family polynomial"
        );
        let top = self.max_index(Family::Y).unwrap_or(1);
        let mut map = BTreeMap::new();
        let mut image = Poly::var(Var::y(1));
        for i in 2..=top {
            image.add_assign(&Poly::var(Var::beta(i - 1)));
            map.insert(Var::y(i), image.clone());
        }
        let rewritten = self.substitute(&map);
        if rewritten.max_index(Family::Y).is_some() {
            return Err(PolyError::ResidualBase);
        }
        Ok(rewritten)
    }

    /// Parses the canonical rendering grammar (see `Display`).
    pub fn parse(text: &str) -> Result<Poly, PolyError> {
        let err = |msg: &str| PolyError::Parse(format!("{msg} in {text:?}"));
        let mut chars = text.chars().peekable();
        let mut out = Poly::zero();
        let skip_ws = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
        };
        let read_int = |chars: &mut std::iter::Peekable<std::str::Chars>| -> Option<BigInt> {
            let mut digits = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                digits.push(chars.next().unwrap());
            }
            digits.parse().ok()
        };
        skip_ws(&mut chars);
        let mut negative = false;
        if let Some(&c) = chars.peek() {
            if c == '-' || c == '+' {
                negative = c == '-';
                chars.next();
                skip_ws(&mut chars);
            }
        }
        loop {
            // One term: optional integer, then *-joined variable powers.
            let mut coeff = read_int(&mut chars).unwrap_or_else(BigInt::one);
            let mut pairs = Vec::new();
            loop {
                match chars.peek() {
                    Some(&c) if Family::from_letter(c).is_some() => {
                        let family = Family::from_letter(c).unwrap();
                        chars.next();
                        let index = read_int(&mut chars)
                            .and_then(|n| usize::try_from(n).ok())
                            .filter(|&n| n >= 1)
                            .ok_or_else(|| err("expected variable index"))?;
                        let mut exp = 1u32;
                        if chars.peek() == Some(&'^') {
                            chars.next();
                            exp = read_int(&mut chars)
                                .and_then(|n| u32::try_from(n).ok())
                                .ok_or_else(|| err("expected exponent"))?;
                        }
                        pairs.push((Var::new(family, index), exp));
                    }
                    Some(&'*') => {
                        chars.next();
                    }
                    _ => break,
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Mono::from_pairs(pairs), coeff);
            skip_ws(&mut chars);
            match chars.next() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(err(&format!("unexpected character {c:?}"))),
            }
            skip_ws(&mut chars);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering: terms in canonical order, coefficient then
    /// `*`-joined variables with `^` powers, e.g.
    /// `y1*y4 - y1*z1 - y4*z1 + z1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.abs();
            if mono.is_constant() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// One product of linear differences, e.g. `(y1-z1)*(y4-z1)`.
///
/// Factors are kept sorted by (first variable, second variable); the empty
/// product renders as `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactoredTerm {
    factors: Vec<(Var, Var)>,
}

impl FactoredTerm {
    /// The empty product.
    pub fn one() -> FactoredTerm {
        FactoredTerm::default()
    }

    pub fn new(mut factors: Vec<(Var, Var)>) -> FactoredTerm {
        factors.sort();
        FactoredTerm { factors }
    }

    pub fn factors(&self) -> &[(Var, Var)] {
        &self.factors
    }

    /// This product extended by the factor `a − b`.
    pub fn times(&self, a: Var, b: Var) -> FactoredTerm {
        let mut factors = self.factors.clone();
        factors.push((a, b));
        factors.sort();
        FactoredTerm { factors }
    }

    /// Applies a variable map to every factor.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> FactoredTerm {
        FactoredTerm::new(self.factors.iter().map(|&(a, b)| (f(a), f(b))).collect())
    }

    /// True iff some factor is identically zero (both sides equal).
    pub fn has_zero_factor(&self) -> bool {
        self.factors.iter().any(|&(a, b)| a == b)
    }

    pub fn expand(&self) -> Poly {
        let mut out = Poly::one();
        for &(a, b) in &self.factors {
            out = out.mul(&Poly::linear(a, b));
        }
        out
    }
}

impl fmt::Display for FactoredTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, b)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({a}-{b})")?;
        }
        Ok(())
    }
}

/// A sum of factored terms, e.g. `(y1-z1)*(y4-z1) + (y3-z2)`.
///
/// Terms are kept sorted; duplicates are allowed (a coefficient may receive
/// the same weight from two different paths).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredSum {
    terms: Vec<FactoredTerm>,
}

impl FactoredSum {
    pub fn zero() -> FactoredSum {
        FactoredSum::default()
    }

    pub fn new(mut terms: Vec<FactoredTerm>) -> FactoredSum {
        terms.sort();
        FactoredSum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[FactoredTerm] {
        &self.terms
    }

    pub fn push(&mut self, term: FactoredTerm) {
        let at = self.terms.partition_point(|t| *t <= term);
        self.terms.insert(at, term);
    }

    pub fn add(&self, other: &FactoredSum) -> FactoredSum {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FactoredSum::new(terms)
    }

    /// Multiplies every term by the single factored term.
    pub fn times_term(&self, t: &FactoredTerm) -> FactoredSum {
        FactoredSum::new(
            self.terms
                .iter()
                .map(|own| {
                    let mut factors = own.factors.clone();
                    factors.extend_from_slice(&t.factors);
                    FactoredTerm::new(factors)
                })
                .collect(),
        )
    }

    pub fn map_terms(&self, f: impl Fn(&FactoredTerm) -> FactoredTerm) -> FactoredSum {
        FactoredSum::new(self.terms.iter().map(f).collect())
    }

    pub fn retain(&self, keep: impl Fn(&FactoredTerm) -> bool) -> FactoredSum {
        FactoredSum::new(self.terms.iter().filter(|t| keep(t)).cloned().collect())
    }

    pub fn expand(&self) -> Poly {
        let mut out = Poly::zero();
        for t in &self.terms {
            out.add_assign(&t.expand());
        }
        out
    }
}

impl From<FactoredTerm> for FactoredSum {
    fn from(t: FactoredTerm) -> FactoredSum {
        FactoredSum { terms: vec![t] }
    }
}

impl fmt::Display for FactoredSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
