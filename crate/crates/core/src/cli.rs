//! Command-line front end: three product modes over permutation operands.
//!
//! Grammar: `schubmult <mode> [-code] [--display-positive] P1 - P2 [- P3 …]`
//! where `mode` is `ordinary`, `equivariant`, or `mixed`, and each operand is
//! a space-separated window (or code, with `-code`). Result lines go to
//! stdout as `<coefficient>  <permutation>`; exit code 0 on success, 2 on a
//! parse error, 3 when `--display-positive` cannot be honored.

use crate::perm::Perm;
use crate::pieri::CoeffMap;
use crate::poly::Poly;
use crate::product::{product_equivariant, product_mixed, product_ordinary};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

/// Which specialization of the product to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `y = z = 0`: nonnegative integer structure constants.
    Ordinary,
    /// `z = y`: coefficients are polynomials in the `y` alphabet.
    Equivariant,
    /// `y`, `z` distinct; exactly two operands.
    Mixed,
}

/// A parsed invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub mode: Mode,
    pub operands: Vec<Perm>,
    pub as_code: bool,
    pub display_positive: bool,
}

/// Errors surfaced to the shell.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error(
        "cannot display positively: coefficient of {0} was computed without \
         a positive decomposition, and general positivization is unsupported"
    )]
    PositivizationUnavailable(Perm),
}

impl CliError {
    /// Shell exit code for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::InvalidPermutation(_) => 2,
            CliError::PositivizationUnavailable(_) => 3,
        }
    }
}

/// Parses `argv` (program name excluded) into a [`Request`].
pub fn parse(argv: &[String]) -> Result<Request, CliError> {
    let mut args = argv.iter();
    let mode = match args.next().map(String::as_str) {
        Some("ordinary") => Mode::Ordinary,
        Some("equivariant") => Mode::Equivariant,
        Some("mixed") => Mode::Mixed,
        Some(other) => return Err(CliError::Parse(format!("unknown mode {other:?}"))),
        None => return Err(CliError::Parse("missing mode".into())),
    };
    let mut as_code = false;
    let mut display_positive = false;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new()];
    for token in args {
        let no_operand_yet = groups.len() == 1 && groups[0].is_empty();
        match token.as_str() {
            "-code" if no_operand_yet => as_code = true,
            "--display-positive" if no_operand_yet => display_positive = true,
            "-" => groups.push(Vec::new()),
            t => match t.parse::<usize>() {
                Ok(n) => groups.last_mut().unwrap().push(n),
                Err(_) => return Err(CliError::Parse(format!("unexpected token {t:?}"))),
            },
        }
    }
    let mut operands = Vec::with_capacity(groups.len());
    for group in &groups {
        if group.is_empty() {
            return Err(CliError::Parse("empty operand".into()));
        }
        operands.push(if as_code {
            Perm::from_code(group)
        } else {
            Perm::from_window(group).map_err(|e| CliError::InvalidPermutation(e.to_string()))?
        });
    }
    if operands.len() < 2 {
        return Err(CliError::Parse("need at least two operands".into()));
    }
    if mode == Mode::Mixed && operands.len() > 2 {
        return Err(CliError::Parse(
            "mixed mode takes exactly two operands: later factors would need fresh alphabets"
                .into(),
        ));
    }
    Ok(Request { mode, operands, as_code, display_positive })
}

/// Computes the requested product, folding operands left to right.
pub fn execute(req: &Request) -> CoeffMap {
    match req.mode {
        Mode::Mixed => product_mixed(&req.operands[0], &req.operands[1]),
        Mode::Equivariant => {
            let mut acc = product_equivariant(&req.operands[0], &req.operands[1]);
            for v in &req.operands[2..] {
                let mut next = CoeffMap::new();
                for (w, c) in acc.iter() {
                    for (t, d) in product_equivariant(w, v).iter() {
                        next.add_poly(t.clone(), c.poly.mul(&d.poly));
                    }
                }
                acc = next;
            }
            acc
        }
        Mode::Ordinary => {
            let mut acc = BTreeMap::from([(req.operands[0].clone(), BigInt::from(1))]);
            for v in &req.operands[1..] {
                let mut next: BTreeMap<Perm, BigInt> = BTreeMap::new();
                for (w, c) in &acc {
                    for (t, d) in product_ordinary(w, v) {
                        *next.entry(t).or_default() += c * d;
                    }
                }
                acc = next;
            }
            let mut out = CoeffMap::new();
            for (w, c) in acc {
                out.add_poly(w, Poly::constant(c));
            }
            out
        }
    }
}

/// Renders one line per nonzero coefficient, sorted by (length, window).
pub fn render(result: &CoeffMap, req: &Request) -> Result<String, CliError> {
    let mut entries: Vec<(&Perm, String)> = Vec::with_capacity(result.len());
    for (w, c) in result.iter() {
        let coefficient = if !req.display_positive {
            c.poly.to_string()
        } else {
            match req.mode {
                Mode::Ordinary => c.poly.to_string(),
                Mode::Mixed => match &c.factored {
                    Some(sum) => sum.to_string(),
                    None => return Err(CliError::PositivizationUnavailable(w.clone())),
                },
                Mode::Equivariant => c
                    .poly
                    .expand_in_negative_roots()
                    .map_err(|_| CliError::PositivizationUnavailable(w.clone()))?
                    .to_string(),
            }
        };
        entries.push((w, coefficient));
    }
    entries.sort_by_key(|(w, _)| (w.length(), w.window().to_vec()));
    let mut out = String::new();
    for (w, coefficient) in entries {
        let perm = if req.as_code {
            let code = w.code();
            if code.is_empty() {
                "0".to_string()
            } else {
                code.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            }
        } else {
            w.to_string()
        };
        out.push_str(&coefficient);
        out.push_str("  ");
        out.push_str(&perm);
        out.push('\n');
    }
    Ok(out)
}

/// Parse, execute, render: the whole pipeline behind the binary.
pub fn run(argv: &[String]) -> Result<String, CliError> {
    let req = parse(argv)?;
    let result = execute(&req);
    render(&result, &req)
}
