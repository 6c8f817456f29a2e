//! The polynomial ring as the graded algebra `A[D]` of the polyhedral divisor
//! `D = Δ·[0]` on the affine line `Spec ℚ[t]`, with `Δ` the standard simplex.
//!
//! Homogeneous elements are `t^r·χ^m`, and `t^r·χ^m ∈ A[D]` iff
//! `r ≥ -D(m)` where `D(m) = min_v ⟨v, m⟩ = min(0, m_1, …, m_{n-1})`. The
//! dictionary with ordinary coordinates is `x_i = χ^{μ_i}` for `i < n` and
//! `x_n = t·χ^{-𝟙}`.
//!
//! For `λ ≠ 0`, a vertex index `i` and `e ∈ M`, the derivation
//! `∂_{λ,i,e}(t^r·χ^m) = λ(r + v_i(m))·t^{r - v_i(e) - 1}·χ^{m+e}` restricts to
//! a locally nilpotent derivation of `A[D]` when `v_j(e) ≥ v_i(e) + 1` for all
//! `j ≠ i`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::derivation::Derivation;
use crate::grading::{MVec, NVec};
use crate::poly::{Exponent, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AhError {
    #[error("vertex index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("t^{r}·chi^{m} is not in A[D]")]
    NotMember { r: i64, m: MVec },
    #[error("spec (i={index}, e={e}) violates v_j(e) >= v_i(e) + 1")]
    Inadmissible { index: usize, e: MVec },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("lattice vector {m} has rank {got}, expected {expected}")]
    RankMismatch { m: MVec, expected: usize, got: usize },
}

/// The vertices `v_1 = ν_1, …, v_{n-1} = ν_{n-1}, v_n = 0` of the standard simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexModel {
    dim: usize,
    vertices: Vec<NVec>,
}

/// `coefficient · t^r · χ^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdMonomial {
    pub coefficient: Rat,
    pub r: i64,
    pub m: MVec,
}

impl fmt::Display for AdMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * t^{} * chi^{}", self.coefficient, self.r, self.m)
    }
}

/// Image of a term under `∂_{λ,i,e}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdImage {
    Zero,
    Member(AdMonomial),
    /// Nonzero but outside `A[D]`; only possible for inadmissible specs.
    Outside(AdMonomial),
}

/// Parameters `(λ, i, e)` of `∂_{λ,i,e}`. `index` is zero-based, so the
/// origin vertex `v_n` has `index == n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdDerivationSpec {
    pub lambda: Rat,
    pub index: usize,
    pub e: MVec,
}

impl fmt::Display for AdDerivationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda={}, i={}, e={}", self.lambda, self.index + 1, self.e)
    }
}

impl SimplexModel {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 2, "the simplex model needs n >= 2");
        let rank = dim - 1;
        let mut vertices: Vec<NVec> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                NVec(v)
            })
            .collect();
        vertices.push(NVec(vec![0; rank]));
        SimplexModel { dim, vertices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[NVec] {
        &self.vertices
    }

    fn check_rank(&self, m: &MVec) -> Result<(), AhError> {
        if m.rank() == self.dim - 1 {
            Ok(())
        } else {
            Err(AhError::RankMismatch { m: m.clone(), expected: self.dim - 1, got: m.rank() })
        }
    }

    fn vertex(&self, index: usize) -> Result<&NVec, AhError> {
        self.vertices
            .get(index)
            .ok_or(AhError::IndexOutOfRange { index, dim: self.dim })
    }

    /// `D(m) = min over vertices of ⟨v, m⟩`.
    pub fn dd_eval(&self, m: &MVec) -> i64 {
        debug_assert!(self.vertices.iter().all(|v| v.0.iter().all(|&c| c == 0 || c == 1)));
        self.vertices
            .iter()
            .map(|v| v.pair(m))
            .min()
            .expect("simplex has vertices")
    }

    /// `t^r·χ^m ∈ A[D]`, i.e. `r ≥ -D(m)` (which forces `r ≥ 0`).
    pub fn membership(&self, r: i64, m: &MVec) -> bool {
        r >= (-self.dd_eval(m)).max(0)
    }

    /// `x^α ↦ (r, m) = (α_n, (α_1-α_n, …, α_{n-1}-α_n))`.
    pub fn to_ad(&self, alpha: &Exponent) -> (i64, MVec) {
        let e = alpha.entries();
        let r = i64::from(e[self.dim - 1]);
        (r, MVec(e[..self.dim - 1].iter().map(|&a| i64::from(a) - r).collect()))
    }

    /// Inverse of [`to_ad`](Self::to_ad): `α_n = r`, `α_k = m_k + r`.
    pub fn from_ad(&self, r: i64, m: &MVec) -> Result<Exponent, AhError> {
        self.check_rank(m)?;
        if !self.membership(r, m) {
            return Err(AhError::NotMember { r, m: m.clone() });
        }
        let mut alpha: Vec<u32> = m.0.iter().map(|&mk| (mk + r) as u32).collect();
        alpha.push(r as u32);
        Ok(Exponent::new(alpha))
    }

    /// `v_j(e) ≥ v_i(e) + 1` for every `j ≠ i`.
    pub fn admissible(&self, index: usize, e: &MVec) -> Result<bool, AhError> {
        self.check_rank(e)?;
        let vi = self.vertex(index)?.pair(e);
        Ok(self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != index)
            .all(|(_, vj)| vj.pair(e) >= vi + 1))
    }

    pub fn ad_apply(&self, spec: &AdDerivationSpec, term: &AdMonomial) -> Result<AdImage, AhError> {
        self.check_rank(&spec.e)?;
        self.check_rank(&term.m)?;
        let vi = self.vertex(spec.index)?;
        let factor = term.r + vi.pair(&term.m);
        if factor == 0 || term.coefficient.is_zero() || spec.lambda.is_zero() {
            return Ok(AdImage::Zero);
        }
        let image = AdMonomial {
            coefficient: &spec.lambda * &term.coefficient * Rat::from_integer(factor.into()),
            r: term.r - vi.pair(&spec.e) - 1,
            m: term.m.add(&spec.e),
        };
        if self.membership(image.r, &image.m) {
            Ok(AdImage::Member(image))
        } else {
            Ok(AdImage::Outside(image))
        }
    }

    /// The monomial derivation `λ·x^α·∂/∂x_i` corresponding to an admissible spec.
    ///
    /// For `i < n`: `α_i = 0`, `α_n = -e_i - 1`, `α_k = e_k - e_i - 1`.
    /// For `i = n`: `α_n = 0`, `α_k = e_k - 1`.
    pub fn translate_spec(&self, spec: &AdDerivationSpec) -> Result<Derivation, AhError> {
        if spec.lambda.is_zero() {
            return Err(AhError::ZeroLambda);
        }
        if !self.admissible(spec.index, &spec.e)? {
            return Err(AhError::Inadmissible { index: spec.index, e: spec.e.clone() });
        }
        let e = spec.e.entries();
        let last = self.dim - 1;
        let alpha: Vec<u32> = if spec.index < last {
            let ei = e[spec.index];
            (0..self.dim)
                .map(|k| match k {
                    k if k == spec.index => 0,
                    k if k == last => -ei - 1,
                    k => e[k] - ei - 1,
                })
                .map(|a| u32::try_from(a).expect("admissibility keeps exponents non-negative"))
                .collect()
        } else {
            e.iter()
                .map(|&ek| ek - 1)
                .chain(std::iter::once(0))
                .map(|a| u32::try_from(a).expect("admissibility keeps exponents non-negative"))
                .collect()
        };
        Ok(Derivation::monomial(spec.lambda.clone(), Exponent::new(alpha), spec.index))
    }

    /// Brute-force check that `∂_{λ,i,e}` maps every member `t^r·χ^m` with
    /// `r + Σ|m_k| ≤ bound` to zero or a member.
    pub fn closure_check(&self, spec: &AdDerivationSpec, bound: i64) -> Result<bool, AhError> {
        for (r, m) in self.members_within(bound) {
            let term = AdMonomial { coefficient: Rat::from_integer(1.into()), r, m };
            if let AdImage::Outside(_) = self.ad_apply(spec, &term)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All members `(r, m)` with `r ≥ 0` and `r + Σ|m_k| ≤ bound`.
    pub fn members_within(&self, bound: i64) -> Vec<(i64, MVec)> {
        let rank = self.dim - 1;
        let mut out = Vec::new();
        let mut m = vec![0i64; rank];
        fn rec(
            model: &SimplexModel,
            k: usize,
            budget: i64,
            m: &mut Vec<i64>,
            out: &mut Vec<(i64, MVec)>,
        ) {
            if k == m.len() {
                let mv = MVec(m.clone());
                for r in 0..=budget {
                    if model.membership(r, &mv) {
                        out.push((r, mv.clone()));
                    }
                }
                return;
            }
            for v in -budget..=budget {
                m[k] = v;
                rec(model, k + 1, budget - v.abs(), m, out);
            }
        }
        rec(self, 0, bound, &mut m, &mut out);
        out
    }
}
