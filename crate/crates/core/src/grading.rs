//! The character lattice of the diagonal torus and the grading it induces.
//!
//! For the torus `T = {diag(γ_1,…,γ_n) : γ_1⋯γ_n = 1}` the character lattice
//! is identified with `M = ℤ^{n-1}` by sending the basis vector `μ_i` to the
//! character `γ ↦ γ_i`. The last coordinate character `γ ↦ γ_n` is then
//! `χ^{-𝟙}` with `𝟙 = μ_1 + … + μ_{n-1}`, so the polynomial ring is graded by
//! `deg x_i = μ_i` for `i < n` and `deg x_n = -𝟙`.
//!
//! A character can also be written as `γ ↦ ∏ γ_j^{β_j}` with `β ∈ ℤ^n`; two
//! such vectors give the same character exactly when they differ by a
//! multiple of `(1,…,1)`. [`CharClass`] stores the representative with
//! `β_n = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Exponent, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("malformed lattice vector {0:?}")]
    Malformed(String),
}

/// An element of the character lattice `M ≅ ℤ^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MVec(pub Vec<i64>);

/// An element of the dual lattice `N ≅ ℤ^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NVec(pub Vec<i64>);

impl MVec {
    pub fn zero(rank: usize) -> Self {
        MVec(vec![0; rank])
    }

    /// The all-ones vector `𝟙`.
    pub fn ones(rank: usize) -> Self {
        MVec(vec![1; rank])
    }

    /// The basis vector `μ_{index+1}`.
    pub fn basis(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        MVec(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &MVec) -> MVec {
        MVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MVec) -> MVec {
        MVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> MVec {
        MVec(self.0.iter().map(|a| -a).collect())
    }
}

impl NVec {
    /// The pairing `⟨v, m⟩`.
    pub fn pair(&self, m: &MVec) -> i64 {
        self.0.iter().zip(&m.0).map(|(a, b)| a * b).sum()
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, entries: &[i64]) -> fmt::Result {
    f.write_str("(")?;
    for (k, e) in entries.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

/// Parses `(a,b,c)` or `a,b,c`. Whitespace is ignored.
pub fn parse_int_tuple(src: &str) -> Result<Vec<i64>, GradingError> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(&compact);
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.parse::<i64>().map_err(|_| GradingError::Malformed(src.to_string())))
        .collect()
}

impl fmt::Display for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for NVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl FromStr for MVec {
    type Err = GradingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_int_tuple(s).map(MVec)
    }
}

/// A character of the diagonal torus in its canonical representative
/// `β = (β_1,…,β_{n-1},0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharClass(Vec<i64>);

impl CharClass {
    pub fn beta(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl FromStr for CharClass {
    type Err = GradingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        normalize_char(&parse_int_tuple(s)?)
    }
}

/// Degree of the monomial `x^α`: `(α_1-α_n, …, α_{n-1}-α_n)`.
pub fn mdeg_monomial(alpha: &Exponent) -> MVec {
    let e = alpha.entries();
    let last = i64::from(e[e.len() - 1]);
    MVec(e[..e.len() - 1].iter().map(|&a| i64::from(a) - last).collect())
}

/// Degree of the generator `x_{index+1}` in an `n`-variable ring.
pub fn generator_degree(n: usize, index: usize) -> MVec {
    if index + 1 == n {
        MVec::ones(n - 1).neg()
    } else {
        MVec::basis(n - 1, index)
    }
}

/// Splits `f` into its graded pieces `B_m`. Zero yields an empty map.
pub fn homogeneous_components(f: &Poly) -> BTreeMap<MVec, Poly> {
    let mut buckets: BTreeMap<MVec, Vec<(Exponent, Rat)>> = BTreeMap::new();
    for (e, c) in f.terms() {
        buckets.entry(mdeg_monomial(e)).or_default().push((e.clone(), c.clone()));
    }
    buckets
        .into_iter()
        .map(|(m, terms)| {
            let p = Poly::from_terms(f.dim(), terms).expect("terms come from f");
            (m, p)
        })
        .collect()
}

/// Result of testing a polynomial for homogeneity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, which lies in every `B_m`.
    Zero,
    Homogeneous(MVec),
    /// Terms of at least two distinct degrees (listed in ascending order).
    Mixed(Vec<MVec>),
}

impl Homogeneity {
    pub fn degree(&self) -> Option<&MVec> {
        match self {
            Homogeneity::Homogeneous(m) => Some(m),
            _ => None,
        }
    }
}

pub fn is_homogeneous(f: &Poly) -> Homogeneity {
    let mut degrees: Vec<MVec> = f.terms().map(|(e, _)| mdeg_monomial(e)).collect();
    degrees.sort();
    degrees.dedup();
    match degrees.len() {
        0 => Homogeneity::Zero,
        1 => Homogeneity::Homogeneous(degrees.pop().expect("one degree")),
        _ => Homogeneity::Mixed(degrees),
    }
}

/// Canonical representative of the character `γ ↦ ∏ γ_j^{β_j}`.
pub fn normalize_char(beta: &[i64]) -> Result<CharClass, GradingError> {
    if beta.len() < 2 {
        return Err(GradingError::LengthMismatch { expected: 2, got: beta.len() });
    }
    let last = beta[beta.len() - 1];
    Ok(CharClass(beta.iter().map(|b| b - last).collect()))
}

pub fn char_to_mvec(c: &CharClass) -> MVec {
    MVec(c.0[..c.0.len() - 1].to_vec())
}

pub fn mvec_to_char(m: &MVec) -> CharClass {
    let mut beta = m.0.clone();
    beta.push(0);
    CharClass(beta)
}

/// Monomials of degree `m` with total degree at most `dmax`, ascending in
/// graded-lex order.
///
/// These are `x^α` with `α = (m_1+s, …, m_{n-1}+s, s)` for `s ≥ max(0, -min m_k)`.
pub fn monomial_basis(m: &MVec, dmax: u64) -> Vec<Exponent> {
    let n = m.rank() as i64 + 1;
    let smin = m.0.iter().copied().min().map_or(0, |lo| (-lo).max(0));
    let msum: i64 = m.0.iter().sum();
    let mut out = Vec::new();
    let mut s = smin;
    while msum + n * s <= dmax as i64 {
        let mut alpha: Vec<u32> = m.0.iter().map(|&mk| (mk + s) as u32).collect();
        alpha.push(s as u32);
        out.push(Exponent::new(alpha));
        s += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{exponents_up_to, rat};

    fn exp(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn mono(v: &[u32]) -> Poly {
        Poly::monomial(exp(v), rat(1))
    }

    #[test]
    fn generator_and_monomial_degrees() {
        assert_eq!(mdeg_monomial(&exp(&[1, 0, 0])), MVec(vec![1, 0]));
        assert_eq!(mdeg_monomial(&exp(&[0, 0, 1])), MVec(vec![-1, -1]));
        assert_eq!(mdeg_monomial(&exp(&[1, 1, 1])), MVec(vec![0, 0]));
        for i in 0..3 {
            assert_eq!(generator_degree(3, i), mdeg_monomial(&Exponent::unit(3, i)));
        }
    }

    #[test]
    fn components() {
        let f = &mono(&[2, 0]) + &mono(&[3, 1]);
        let comps = homogeneous_components(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&MVec(vec![2])], f);

        let g = &mono(&[1, 0]) + &mono(&[0, 1]);
        let comps = homogeneous_components(&g);
        assert_eq!(comps[&MVec(vec![1])], mono(&[1, 0]));
        assert_eq!(comps[&MVec(vec![-1])], mono(&[0, 1]));
        assert!(homogeneous_components(&Poly::zero(2)).is_empty());
    }

    #[test]
    fn homogeneity_verdicts() {
        assert_eq!(
            is_homogeneous(&mono(&[2, 1, 0])),
            Homogeneity::Homogeneous(MVec(vec![2, 1]))
        );
        assert!(matches!(
            is_homogeneous(&(&mono(&[1, 0, 0]) + &mono(&[0, 1, 0]))),
            Homogeneity::Mixed(_)
        ));
        assert_eq!(
            is_homogeneous(&(&mono(&[1, 1, 1]) + &Poly::one(3))),
            Homogeneity::Homogeneous(MVec(vec![0, 0]))
        );
        assert_eq!(is_homogeneous(&Poly::zero(3)), Homogeneity::Zero);
    }

    #[test]
    fn character_normalization() {
        assert_eq!(normalize_char(&[1, 1, -1]).unwrap().beta(), &[2, 2, 0]);
        let c = normalize_char(&[0, 0, -1]).unwrap();
        assert_eq!(char_to_mvec(&c), MVec(vec![1, 1]));
        assert_eq!(mvec_to_char(&MVec(vec![1, 0])).beta(), &[1, 0, 0]);
        assert!(normalize_char(&[3]).is_err());
        let back: CharClass = "(2,2,0)".parse().unwrap();
        assert_eq!(back, normalize_char(&[1, 1, -1]).unwrap());
    }

    #[test]
    fn basis_slices() {
        assert_eq!(monomial_basis(&MVec(vec![1]), 3), vec![exp(&[1, 0]), exp(&[2, 1])]);
        assert_eq!(monomial_basis(&MVec(vec![-2]), 4), vec![exp(&[0, 2]), exp(&[1, 3])]);
        assert_eq!(monomial_basis(&MVec(vec![0]), 1), vec![exp(&[0, 0])]);
        assert!(monomial_basis(&MVec(vec![5, -5]), 4).is_empty());
    }

    #[test]
    fn basis_is_complete_against_full_scan() {
        for n in 2..=4usize {
            let dmax = 6;
            let all = exponents_up_to(n, dmax);
            let mut degrees: Vec<MVec> = all.iter().map(mdeg_monomial).collect();
            degrees.sort();
            degrees.dedup();
            for m in degrees {
                let expected: Vec<Exponent> =
                    all.iter().filter(|a| mdeg_monomial(a) == m).cloned().collect();
                assert_eq!(monomial_basis(&m, u64::from(dmax)), expected, "m = {m}");
            }
        }
    }
}
