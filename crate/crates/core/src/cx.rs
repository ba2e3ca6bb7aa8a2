//! The group `⟨z, x_n (n >= 2) | x_n^n = z, z central⟩`.
//!
//! Every element has a unique form `z^a·x_{n_1}^{r_1}⋯x_{n_l}^{r_l}` with
//! `0 < r_i < n_i` and `n_i != n_{i+1}`. Products carry multiples of `n`
//! into the central exponent. Killing `z` maps onto the free product of the
//! cyclic groups `Z/n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::equations::{cyclic_symbolic_solve, EqError, EquationSystem, SolutionTuple};
use crate::group::Group;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CxError {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },
    #[error("k_0⋯k_M = {0} must be at least 2")]
    ProductTooSmall(u64),
    #[error(transparent)]
    Equation(#[from] EqError),
}

/// `x_n^r` with `0 < r < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CxSyllable {
    pub n: u64,
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CEElement {
    central: i64,
    word: Vec<CxSyllable>,
}

impl CEElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn z(a: i64) -> Self {
        Self { central: a, word: Vec::new() }
    }

    /// `x_n^r` for any integer `r`, in normal form.
    pub fn x(n: u64, r: i64) -> Self {
        assert!(n >= 2, "x_n needs n >= 2");
        let m = n as i64;
        let (carry, rest) = (r.div_euclid(m), r.rem_euclid(m) as u64);
        let word = if rest == 0 { Vec::new() } else { vec![CxSyllable { n, r: rest }] };
        Self { central: carry, word }
    }

    pub fn central(&self) -> i64 {
        self.central
    }

    pub fn word(&self) -> &[CxSyllable] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.central == 0 && self.word.is_empty()
    }
}

pub fn ce_multiply(a: &CEElement, b: &CEElement) -> CEElement {
    let mut central = a.central + b.central;
    let mut word = a.word.clone();
    let mut rest = b.word.iter().copied().peekable();
    while let (Some(&last), Some(&&first)) = (word.last(), rest.peek().as_ref()) {
        if last.n != first.n {
            break;
        }
        rest.next();
        word.pop();
        let s = last.r + first.r;
        central += (s / last.n) as i64;
        if s % last.n != 0 {
            word.push(CxSyllable { n: last.n, r: s % last.n });
            break;
        }
    }
    word.extend(rest);
    CEElement { central, word }
}

pub fn ce_invert(a: &CEElement) -> CEElement {
    // (x_n^r)^-1 = z^-1·x_n^{n-r}
    CEElement {
        central: -a.central - a.word.len() as i64,
        word: a.word.iter().rev().map(|s| CxSyllable { n: s.n, r: s.n - s.r }).collect(),
    }
}

/// Square-and-multiply; negative exponents invert first.
pub fn ce_power(a: &CEElement, n: i64) -> CEElement {
    let mut base = if n < 0 { ce_invert(a) } else { a.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = CEElement::identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = ce_multiply(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = ce_multiply(&base, &base);
        }
    }
    acc
}

/// A reduced word in `*_{n >= 2} Z/n`: syllables `(n, r)` with `0 < r < n`
/// and neighbours in distinct factors.
pub type QuotientWord = Vec<CxSyllable>;

pub fn ce_quotient(a: &CEElement) -> QuotientWord {
    a.word.clone()
}

pub fn quotient_multiply(a: &[CxSyllable], b: &[CxSyllable]) -> QuotientWord {
    let lifted = ce_multiply(
        &CEElement { central: 0, word: a.to_vec() },
        &CEElement { central: 0, word: b.to_vec() },
    );
    lifted.word
}

pub fn render_quotient(w: &[CxSyllable]) -> String {
    let parts: Vec<String> = w.iter().map(|s| format!("{}:{}", s.n, s.r)).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for CEElement {
    /// `z^A` followed by the syllables, e.g. `z^-1 x4^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{}", self.central)?;
        for s in &self.word {
            write!(f, " x{}^{}", s.n, s.r)?;
        }
        Ok(())
    }
}

impl FromStr for CEElement {
    type Err = CxError;

    /// Reads a product of `z`, `z^A`, `xN` and `xN^R` tokens (`e` is skipped)
    /// and normalizes it.
    fn from_str(text: &str) -> Result<Self, CxError> {
        let mut acc = CEElement::identity();
        let mut tokens = 0;
        for token in text.split_whitespace() {
            tokens += 1;
            if token == "e" {
                continue;
            }
            let err = |reason| CxError::Parse { token: token.to_string(), reason };
            let (head, exponent) = match token.split_once('^') {
                Some((h, e)) => (h, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (token, 1),
            };
            let factor = if head == "z" {
                CEElement::z(exponent)
            } else {
                let n = head
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<u64>().ok())
                    .ok_or_else(|| err("expected z or x<n>"))?;
                if n < 2 {
                    return Err(err("x_n needs n >= 2"));
                }
                CEElement::x(n, exponent)
            };
            acc = ce_multiply(&acc, &factor);
        }
        if tokens == 0 {
            return Err(CxError::Parse { token: String::new(), reason: "empty element" });
        }
        Ok(acc)
    }
}

/// The counterexample group as a [`Group`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CounterexampleGroup;

impl Group for CounterexampleGroup {
    type Element = CEElement;

    fn identity(&self) -> CEElement {
        CEElement::identity()
    }

    fn multiply(&self, a: &CEElement, b: &CEElement) -> CEElement {
        ce_multiply(a, b)
    }

    fn invert(&self, a: &CEElement) -> CEElement {
        ce_invert(a)
    }

    fn power(&self, a: &CEElement, n: i64) -> CEElement {
        ce_power(a, n)
    }

    fn render(&self, a: &CEElement) -> String {
        a.to_string()
    }
}

/// The cascade `y_m = z^j·y_{m+1}^{k_m}`.
pub fn ce_system(j: u64, k: &[u64]) -> Result<EquationSystem<CEElement>, CxError> {
    Ok(EquationSystem::uniform(CEElement::z(1), j, k.to_vec())?)
}

/// A solution of [`ce_system`] with `b_0 = z`: `b_m = x_K^{e_m}` where `K =
/// k_0⋯k_M`, so that `x_K^K = z`.
pub fn ce_solve_system(j: u64, k: &[u64]) -> Result<SolutionTuple<CEElement>, CxError> {
    let exponents = cyclic_symbolic_solve(j, k)?;
    let big_k = exponents[0] as u64;
    if big_k < 2 {
        return Err(CxError::ProductTooSmall(big_k));
    }
    let h = CEElement::x(big_k, 1);
    Ok(SolutionTuple(exponents.iter().map(|&e| ce_power(&h, e)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::check_solution;

    fn ce(s: &str) -> CEElement {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(ce_multiply(&ce("x2"), &ce("x2")), ce("z"));
        assert_eq!(ce_multiply(&ce("x3^2"), &ce("x3^2")), ce("z x3"));
        assert_eq!(ce_multiply(&ce("z^5"), &ce("x7^3")).to_string(), "z^5 x7^3");
        let a = ce("x2 x3^2");
        let b = ce("x3 x2");
        assert_eq!(ce_multiply(&a, &b), ce("z^2"));
    }

    #[test]
    fn power_examples() {
        assert_eq!(ce_power(&ce("x4"), 4), CEElement::z(1));
        assert_eq!(ce_power(&ce("z^3 x5^2 x2"), 0), CEElement::identity());
        assert_eq!(ce_power(&ce("x2 x3"), 2).to_string(), "z^0 x2^1 x3^1 x2^1 x3^1");
        for n in 2..=12 {
            assert_eq!(ce_power(&CEElement::x(n, 1), n as i64), CEElement::z(1));
        }
        let a = ce("z^2 x3 x5^4");
        assert_eq!(ce_power(&a, -3), ce_invert(&ce_power(&a, 3)));
        assert_eq!(ce_multiply(&a, &ce_invert(&a)), CEElement::identity());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(render_quotient(&ce_quotient(&ce("z^5 x2 x3^2"))), "[2:1, 3:2]");
        assert!(ce_quotient(&ce("z^7")).is_empty());
        let (a, b) = (ce("x3 x2 x4^3"), ce("x4 x2 z^-2"));
        assert_eq!(
            ce_quotient(&ce_multiply(&a, &b)),
            quotient_multiply(&ce_quotient(&a), &ce_quotient(&b))
        );
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(ce("z^-1 x4^2").to_string(), "z^-1 x4^2");
        assert_eq!(ce("x4^-2"), ce("z^-1 x4^2"));
        assert_eq!(ce("e").to_string(), "z^0");
        for bad in ["", "y2", "x1", "x", "x2^q", "z^"] {
            assert!(bad.parse::<CEElement>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn solve_examples() {
        let b = ce_solve_system(1, &[2, 2]).unwrap();
        let shown: Vec<String> = b.0.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["z^1", "z^0", "z^-1 x4^2"]);
        let sys = ce_system(1, &[2, 2]).unwrap();
        assert!(check_solution(&CounterexampleGroup, &sys, &b).unwrap().holds());

        let b = ce_solve_system(1, &[2]).unwrap();
        assert_eq!(b.0, [ce("z"), ce("e")]);

        let b = ce_solve_system(2, &[3]).unwrap();
        assert_eq!(b.0[1], ce("z^-1 x3^2"));
        let sys = ce_system(2, &[3]).unwrap();
        assert!(check_solution(&CounterexampleGroup, &sys, &b).unwrap().holds());

        assert_eq!(ce_solve_system(1, &[1, 1]), Err(CxError::ProductTooSmall(1)));
    }
}
