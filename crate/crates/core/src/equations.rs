//! Equation cascades `y_m = a_m·y_{m+1}^{k_m}` for `0 <= m <= M`.
//!
//! A solution is a tuple `b_0, …, b_{M+1}`; once `b_{M+1}` is fixed every
//! other entry is determined, which is what [`bounded_solve`] exploits.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gp::{GPElement, GpError, GraphProduct};
use crate::group::Group;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EqError {
    #[error("system needs at least one equation")]
    Empty,
    #[error("exponent k_{0} must be at least 1")]
    ZeroExponent(usize),
    #[error("j must be at least 1")]
    ZeroJ,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponent arithmetic overflowed")]
    Overflow,
    #[error("system descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Gp(#[from] GpError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficients<E> {
    /// `a_m = g^j` for every `m`.
    Uniform { g: E, j: u64 },
    Explicit(Vec<E>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem<E> {
    coefficients: Coefficients<E>,
    exponents: Vec<u64>,
}

impl<E: Clone> EquationSystem<E> {
    pub fn uniform(g: E, j: u64, exponents: Vec<u64>) -> Result<Self, EqError> {
        if j == 0 {
            return Err(EqError::ZeroJ);
        }
        Self::validated(Coefficients::Uniform { g, j }, exponents)
    }

    pub fn explicit(coefficients: Vec<E>, exponents: Vec<u64>) -> Result<Self, EqError> {
        if coefficients.len() != exponents.len() {
            return Err(EqError::LengthMismatch {
                expected: exponents.len(),
                got: coefficients.len(),
            });
        }
        Self::validated(Coefficients::Explicit(coefficients), exponents)
    }

    fn validated(coefficients: Coefficients<E>, exponents: Vec<u64>) -> Result<Self, EqError> {
        if exponents.is_empty() {
            return Err(EqError::Empty);
        }
        if let Some(m) = exponents.iter().position(|&k| k == 0) {
            return Err(EqError::ZeroExponent(m));
        }
        Ok(Self { coefficients, exponents })
    }

    /// `M`, the index of the last equation.
    pub fn depth(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn coefficients(&self) -> &Coefficients<E> {
        &self.coefficients
    }

    pub fn coefficient<G: Group<Element = E>>(&self, group: &G, m: usize) -> E {
        match &self.coefficients {
            Coefficients::Uniform { g, j } => group.power(g, *j as i64),
            Coefficients::Explicit(a) => a[m].clone(),
        }
    }

    fn all_coefficients<G: Group<Element = E>>(&self, group: &G) -> Vec<E> {
        match &self.coefficients {
            Coefficients::Uniform { g, j } => vec![group.power(g, *j as i64); self.exponents.len()],
            Coefficients::Explicit(a) => a.clone(),
        }
    }
}

/// `b_0, …, b_{M+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTuple<E>(pub Vec<E>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// Least `m` with `b_m != a_m·b_{m+1}^{k_m}`.
    FailsAt(usize),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

pub fn check_solution<G: Group>(
    group: &G,
    system: &EquationSystem<G::Element>,
    solution: &SolutionTuple<G::Element>,
) -> Result<Verdict, EqError> {
    let b = &solution.0;
    let expected = system.depth() + 2;
    if b.len() != expected {
        return Err(EqError::LengthMismatch { expected, got: b.len() });
    }
    let a = system.all_coefficients(group);
    for (m, &k) in system.exponents.iter().enumerate() {
        let rhs = group.multiply(&a[m], &group.power(&b[m + 1], k as i64));
        if rhs != b[m] {
            return Ok(Verdict::FailsAt(m));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<E> {
    Solution(SolutionTuple<E>),
    NoSolutionWithinRadius,
}

impl<E> SolveOutcome<E> {
    pub fn solution(&self) -> Option<&SolutionTuple<E>> {
        match self {
            SolveOutcome::Solution(s) => Some(s),
            SolveOutcome::NoSolutionWithinRadius => None,
        }
    }
}

/// Searches for a solution with the given `b_0` and all of `b_1, …,
/// b_{M+1}` of norm at most `radius`.
///
/// Candidates for `b_{M+1}` are tried in ball order; each determines the rest
/// of the tuple, and a candidate is dropped as soon as some `b_m` with
/// `m >= 1` leaves the ball.
pub fn bounded_solve(
    gp: &GraphProduct,
    system: &EquationSystem<GPElement>,
    b0: &GPElement,
    radius: u64,
) -> Result<SolveOutcome<GPElement>, EqError> {
    gp.require_norm()?;
    let a = system.all_coefficients(gp);
    let depth = system.depth();
    let ball = gp.ball_cached(radius)?;
    'candidates: for entry in ball.within(radius) {
        let mut tuple = vec![GPElement::identity(); depth + 2];
        tuple[depth + 1] = entry.element.clone();
        for m in (0..=depth).rev() {
            let next = gp.multiply(&a[m], &gp.power(&tuple[m + 1], system.exponents[m] as i64));
            if m >= 1 && gp.dudley_norm(&next)? > radius {
                continue 'candidates;
            }
            tuple[m] = next;
        }
        if tuple[0] == *b0 {
            return Ok(SolveOutcome::Solution(SolutionTuple(tuple)));
        }
    }
    Ok(SolveOutcome::NoSolutionWithinRadius)
}

/// Exponents `e_0, …, e_{M+1}` with `e_0 = K = k_0⋯k_M` and `e_m = jK +
/// k_m·e_{m+1}`.
///
/// If `h^K = g` then `b_m = h^{e_m}` solves `y_m = g^j·y_{m+1}^{k_m}` with
/// `b_0 = g`.
pub fn cyclic_symbolic_solve(j: u64, k: &[u64]) -> Result<Vec<i64>, EqError> {
    if j == 0 {
        return Err(EqError::ZeroJ);
    }
    if k.is_empty() {
        return Err(EqError::Empty);
    }
    if let Some(m) = k.iter().position(|&x| x == 0) {
        return Err(EqError::ZeroExponent(m));
    }
    let big_k = k
        .iter()
        .try_fold(1i64, |acc, &x| acc.checked_mul(x as i64))
        .ok_or(EqError::Overflow)?;
    let shift = (j as i64).checked_mul(big_k).ok_or(EqError::Overflow)?;
    let mut e = vec![big_k];
    for &km in k {
        let prev = *e.last().expect("nonempty");
        let num = prev.checked_sub(shift).ok_or(EqError::Overflow)?;
        assert_eq!(num % km as i64, 0, "cascade exponents divide exactly");
        e.push(num / km as i64);
    }
    Ok(e)
}

/// `1 - j·(1 + k_0 + k_0k_1 + … + k_0⋯k_{M-1})`, the last exponent of
/// [`cyclic_symbolic_solve`] in closed form.
pub fn symbolic_tail(j: u64, k: &[u64]) -> Result<i64, EqError> {
    let mut sum = 0i64;
    let mut prefix = 1i64;
    for &km in &k[..k.len().saturating_sub(1)] {
        sum = sum.checked_add(prefix).ok_or(EqError::Overflow)?;
        prefix = prefix.checked_mul(km as i64).ok_or(EqError::Overflow)?;
    }
    sum = sum.checked_add(prefix).ok_or(EqError::Overflow)?;
    (j as i64)
        .checked_mul(sum)
        .and_then(|x| 1i64.checked_sub(x))
        .ok_or(EqError::Overflow)
}

/// JSON form: `{"g": "u", "j": 1, "k": [2, 2]}` or `{"a": ["u", "u"], "k":
/// [2, 2]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    pub k: Vec<u64>,
}

impl SystemDescriptor {
    pub fn parse(text: &str) -> Result<Self, EqError> {
        serde_json::from_str(text).map_err(|e| EqError::Descriptor(e.to_string()))
    }

    /// Builds the system, parsing element strings with `parse`.
    pub fn resolve<E, F>(&self, parse: F) -> Result<EquationSystem<E>, EqError>
    where
        E: Clone,
        F: Fn(&str) -> Result<E, EqError>,
    {
        match (&self.g, &self.a) {
            (Some(g), None) => EquationSystem::uniform(parse(g)?, self.j.unwrap_or(1), self.k.clone()),
            (None, Some(a)) if self.j.is_none() => {
                let a = a.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
                EquationSystem::explicit(a, self.k.clone())
            }
            _ => Err(EqError::Descriptor(
                "give either `g` (with optional `j`) or `a`".into(),
            )),
        }
    }
}
