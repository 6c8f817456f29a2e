//! Derivations of `ℚ[x_1,…,x_n]` and the root-vector test.
//!
//! A derivation is determined by its generator images `∂(x_1),…,∂(x_n)`.
//! Local nilpotency is certified on generators only: if `∂^{k_j}(x_j) = 0`
//! for every `j`, the Leibniz rule gives `∂^K(f) = 0` for every polynomial
//! `f` once `K` exceeds the weighted degree of `f`, so the derivation is
//! locally nilpotent. There is no negative certificate; a chain that has not
//! vanished after `cap` steps is reported as [`LndVerdict::ExhaustedCap`].
//!
//! The torus acts on polynomials by `γ(x_k) = γ_k·x_k`, so `B_m` is the
//! `χ^m`-eigenspace. A root vector `∂` with root `χ^e` satisfies
//! `γ∘∂∘γ⁻¹ = χ^e(γ)·∂`; [`Derivation::conjugate_formal`] computes the left
//! side for a generic torus element with parameters `s_1..s_{n-1}` and
//! `γ_n = (s_1⋯s_{n-1})⁻¹`.

use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::grading::{
    char_to_mvec, generator_degree, is_homogeneous, normalize_char, Homogeneity, MVec,
};
use crate::poly::{det, rat, write_monomial, Exponent, LaurentScalar, Poly, PolyError, Rat, TorusPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("derivation needs {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("the zero derivation has no degree")]
    ZeroDerivation,
    #[error("local nilpotency not proven within cap {cap}")]
    NotProvenLnd { cap: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// A derivation of the polynomial ring, given by its generator images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    dim: usize,
    images: Vec<Poly>,
}

/// Outcome of the generator-level nilpotency test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LndVerdict {
    /// `orders[j]` is the least `k` with `∂^k(x_{j+1}) = 0`.
    Proven { orders: Vec<usize> },
    /// Some chain was still nonzero after `cap` applications. `status[j]` is
    /// the order for chains that did vanish.
    ExhaustedCap { cap: usize, status: Vec<Option<usize>> },
}

impl LndVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, LndVerdict::Proven { .. })
    }
}

/// `λ·x^α·∂/∂x_{index+1}` with `α_index = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub lambda: Rat,
    pub index: usize,
    pub alpha: Exponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotRootReason {
    ZeroDerivation,
    NotHomogeneous,
    NotLndWithinCap(LndVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootCheckResult {
    IsRoot { root: MVec, normal_form: NormalForm },
    NotRoot(NotRootReason),
}

impl Derivation {
    pub fn new(images: Vec<Poly>) -> Result<Self, DerivationError> {
        let dim = images.len();
        if dim < 2 {
            return Err(PolyError::DimensionTooSmall(dim).into());
        }
        for img in &images {
            if img.dim() != dim {
                return Err(PolyError::DimensionMismatch { left: dim, right: img.dim() }.into());
            }
        }
        Ok(Derivation { dim, images })
    }

    pub fn zero(dim: usize) -> Self {
        Derivation { dim, images: vec![Poly::zero(dim); dim] }
    }

    /// `λ·x^α·∂/∂x_{index+1}`.
    pub fn monomial(lambda: Rat, alpha: Exponent, index: usize) -> Self {
        let dim = alpha.dim();
        let mut images = vec![Poly::zero(dim); dim];
        images[index] = Poly::monomial(alpha, lambda);
        Derivation { dim, images }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Derivation {
        Derivation { dim: self.dim, images: self.images.iter().map(|p| p.scale(c)).collect() }
    }

    /// `Σ_i ∂(x_i)·∂f/∂x_i`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, DerivationError> {
        if f.dim() != self.dim {
            return Err(PolyError::DimensionMismatch { left: self.dim, right: f.dim() }.into());
        }
        let mut out = Poly::zero(self.dim);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial(i)?;
            if !d.is_zero() {
                out = &out + &(img * &d);
            }
        }
        Ok(out)
    }

    /// `2n + (max total degree of the images) + 4`.
    pub fn default_cap(&self) -> usize {
        let deg = self.images.iter().filter_map(Poly::total_degree).max().unwrap_or(0);
        2 * self.dim + deg as usize + 4
    }

    /// `x, ∂x, ∂²x, …` up to but excluding the first zero, or `None` if the
    /// chain is still nonzero after `cap` steps.
    fn chain(&self, start: Poly, cap: usize) -> Result<Option<Vec<Poly>>, DerivationError> {
        let mut chain = vec![start];
        for _ in 0..cap {
            let next = self.apply(chain.last().expect("chain is never empty"))?;
            if next.is_zero() {
                return Ok(Some(chain));
            }
            chain.push(next);
        }
        Ok(None)
    }

    pub fn lnd_check(&self, cap: usize) -> LndVerdict {
        let mut status = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let chain = self.chain(Poly::var(self.dim, j), cap).expect("dimensions agree");
            status.push(chain.map(|c| c.len()));
        }
        if status.iter().all(Option::is_some) {
            LndVerdict::Proven { orders: status.into_iter().flatten().collect() }
        } else {
            LndVerdict::ExhaustedCap { cap, status }
        }
    }

    /// The degree `e` with `∂(B_m) ⊆ B_{m+e}`, if the derivation is homogeneous.
    ///
    /// A derivation is homogeneous of degree `e` exactly when every nonzero
    /// image `∂(x_j)` is homogeneous of degree `deg x_j + e`.
    pub fn degree(&self) -> Result<Option<MVec>, DerivationError> {
        if self.is_zero() {
            return Err(DerivationError::ZeroDerivation);
        }
        let mut common: Option<MVec> = None;
        for (j, img) in self.images.iter().enumerate() {
            let shift = match is_homogeneous(img) {
                Homogeneity::Zero => continue,
                Homogeneity::Mixed(_) => return Ok(None),
                Homogeneity::Homogeneous(m) => m.sub(&generator_degree(self.dim, j)),
            };
            match &common {
                None => common = Some(shift),
                Some(e) if *e == shift => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(common)
    }

    /// `exp(t∂)`: `x_j ↦ Σ_k t^k/k!·∂^k(x_j)`. Fails unless every generator
    /// chain vanishes within `cap` steps.
    pub fn exp(&self, t: &Rat, cap: usize) -> Result<Automorphism, DerivationError> {
        let mut images = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let chain = self
                .chain(Poly::var(self.dim, j), cap)?
                .ok_or(DerivationError::NotProvenLnd { cap })?;
            let mut acc = Poly::zero(self.dim);
            let mut weight = Rat::one();
            for (k, term) in chain.iter().enumerate() {
                if k > 0 {
                    weight = weight * t / rat(k as i64);
                }
                acc = &acc + &term.scale(&weight);
            }
            images.push(acc);
        }
        Ok(Automorphism { dim: self.dim, images })
    }

    /// Generator images of `γ∘∂∘γ⁻¹` for the generic torus element `γ`.
    ///
    /// Image `j` is `γ_j⁻¹·∂(x_j)(γ_1x_1, …, γ_nx_n)` with `γ_k = s_k` for
    /// `k < n` and `γ_n = ∏ s_k⁻¹`.
    pub fn conjugate_formal(&self) -> Vec<TorusPoly> {
        let n = self.dim;
        let params = n - 1;
        // γ_k as a Laurent exponent vector
        let gamma: Vec<Vec<i64>> = (0..n).map(|k| generator_degree(n, k).0).collect();
        self.images
            .iter()
            .enumerate()
            .map(|(j, img)| {
                let mut out = TorusPoly::zero(n, params);
                for (alpha, c) in img.terms() {
                    let mut s_exp: Vec<i64> = gamma[j].iter().map(|g| -g).collect();
                    for (k, &a) in alpha.entries().iter().enumerate() {
                        for (slot, g) in s_exp.iter_mut().zip(&gamma[k]) {
                            *slot += i64::from(a) * g;
                        }
                    }
                    out.add_term(alpha.clone(), LaurentScalar::monomial(s_exp, c.clone()));
                }
                out
            })
            .collect()
    }

    /// `χ^e(s)·∂` as generator images over the Laurent scalars.
    pub fn scaled_by_character(&self, e: &MVec) -> Vec<TorusPoly> {
        let chi = LaurentScalar::monomial(e.0.clone(), Rat::one());
        self.images
            .iter()
            .map(|p| TorusPoly::from_poly(p, self.dim - 1).scale(&chi))
            .collect()
    }

    /// Decides whether `self` is a root vector and returns its root and the
    /// normal form `λ·x^α·∂/∂x_i`.
    ///
    /// A nonzero locally nilpotent derivation is a root vector exactly when
    /// it is homogeneous, and its root is then `χ^{deg ∂}`. Both that
    /// criterion and the raw conjugation identity are checked. A homogeneous
    /// proven LND that is not a single monomial image, or whose conjugation
    /// identity fails, yields [`DerivationError::Inconsistent`].
    pub fn root_check(&self, cap: usize) -> Result<RootCheckResult, DerivationError> {
        if self.is_zero() {
            return Ok(RootCheckResult::NotRoot(NotRootReason::ZeroDerivation));
        }
        let Some(e) = self.degree()? else {
            return Ok(RootCheckResult::NotRoot(NotRootReason::NotHomogeneous));
        };
        let verdict = self.lnd_check(cap);
        if !verdict.is_proven() {
            return Ok(RootCheckResult::NotRoot(NotRootReason::NotLndWithinCap(verdict)));
        }
        if self.conjugate_formal() != self.scaled_by_character(&e) {
            return Err(DerivationError::Inconsistent(format!(
                "conjugation identity fails for {self} with degree {e}"
            )));
        }
        let normal_form = self.normal_form().ok_or_else(|| {
            DerivationError::Inconsistent(format!(
                "homogeneous LND {self} is not of the form λ·x^α·∂/∂x_i"
            ))
        })?;
        let mut beta: Vec<i64> = normal_form.alpha.entries().iter().map(|&a| i64::from(a)).collect();
        beta[normal_form.index] -= 1;
        let expected = char_to_mvec(&normalize_char(&beta).expect("n >= 2"));
        if expected != e {
            return Err(DerivationError::Inconsistent(format!(
                "degree {e} differs from character {expected} of the normal form"
            )));
        }
        Ok(RootCheckResult::IsRoot { root: e, normal_form })
    }

    /// `Some((λ, i, α))` when exactly one image is nonzero, that image is a
    /// single term `λ·x^α`, and `α_i = 0`.
    pub fn normal_form(&self) -> Option<NormalForm> {
        let mut nonzero = self.images.iter().enumerate().filter(|(_, p)| !p.is_zero());
        let (index, img) = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        let (alpha, lambda) = img.single_term()?;
        (alpha[index] == 0).then(|| NormalForm {
            lambda: lambda.clone(),
            index,
            alpha: alpha.clone(),
        })
    }

    /// Human-readable operator form, e.g. `x2^3 d/dx1 - x2 d/dx2`.
    pub fn operator_form(&self) -> String {
        struct Op<'a>(&'a Derivation);
        impl fmt::Display for Op<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (i, img) in self.0.images.iter().enumerate() {
                    if img.is_zero() {
                        continue;
                    }
                    if let Some((alpha, c)) = img.single_term() {
                        match (first, c.is_negative()) {
                            (true, true) => f.write_str("-")?,
                            (true, false) => {}
                            (false, true) => f.write_str(" - ")?,
                            (false, false) => f.write_str(" + ")?,
                        }
                        let magnitude = c.abs();
                        if !magnitude.is_one() {
                            write!(f, "{magnitude}")?;
                            if !alpha.is_zero() {
                                f.write_str("*")?;
                            }
                        }
                        if !alpha.is_zero() {
                            write_monomial(f, alpha)?;
                        }
                        if !magnitude.is_one() || !alpha.is_zero() {
                            f.write_str(" ")?;
                        }
                    } else {
                        if !first {
                            f.write_str(" + ")?;
                        }
                        write!(f, "({img}) ")?;
                    }
                    write!(f, "d/dx{}", i + 1)?;
                    first = false;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
        Op(self).to_string()
    }
}

/// Comma-separated generator images, e.g. `x2^3, 0`.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, img) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{img}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[n={}]({})", self.dim, self.operator_form())
    }
}

/// An endomorphism of the polynomial ring, `x_j ↦ images[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    dim: usize,
    images: Vec<Poly>,
}

impl Automorphism {
    pub fn new(images: Vec<Poly>) -> Result<Self, PolyError> {
        let dim = images.len();
        for img in &images {
            if img.dim() != dim {
                return Err(PolyError::DimensionMismatch { left: dim, right: img.dim() });
            }
        }
        Ok(Automorphism { dim, images })
    }

    pub fn identity(dim: usize) -> Self {
        Automorphism { dim, images: (0..dim).map(|j| Poly::var(dim, j)).collect() }
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// `self ∘ other` as ring maps: `x_j ↦ other(x_j)` evaluated through `self`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, PolyError> {
        let images = other
            .images
            .iter()
            .map(|g| g.substitute(&self.images))
            .collect::<Result<_, _>>()?;
        Ok(Automorphism { dim: self.dim, images })
    }

    /// Entry `(i, j)` is `∂γ(x_j)/∂x_i`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        (0..self.dim)
            .map(|i| {
                self.images
                    .iter()
                    .map(|g| g.partial(i).expect("index in range"))
                    .collect()
            })
            .collect()
    }

    pub fn jacobian_det(&self) -> Poly {
        det(&self.jacobian()).expect("square Jacobian")
    }

    pub fn is_volume_preserving(&self) -> bool {
        self.jacobian_det().is_one()
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, img) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{img}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i - 1)
    }

    fn der(images: Vec<Poly>) -> Derivation {
        Derivation::new(images).unwrap()
    }

    fn mono(v: &[u32], c: Rat) -> Poly {
        Poly::monomial(Exponent::new(v.to_vec()), c)
    }

    #[test]
    fn apply_on_generators_and_products() {
        let d = der(vec![x(2, 2), Poly::zero(2)]);
        assert_eq!(d.apply(&x(2, 1)).unwrap(), x(2, 2));
        assert_eq!(d.apply(&x(2, 1).pow(2)).unwrap(), (&x(2, 1) * &x(2, 2)).scale(&rat(2)));
        assert!(d.apply(&x(2, 2)).unwrap().is_zero());
        assert!(d.apply(&x(3, 1)).is_err());
    }

    #[test]
    fn nilpotency_verdicts() {
        let d = der(vec![x(2, 2), Poly::zero(2)]);
        assert_eq!(d.lnd_check(10), LndVerdict::Proven { orders: vec![2, 1] });
        let euler = der(vec![x(2, 1), Poly::zero(2)]);
        assert_eq!(
            euler.lnd_check(10),
            LndVerdict::ExhaustedCap { cap: 10, status: vec![None, Some(1)] }
        );
        assert_eq!(Derivation::zero(3).lnd_check(1), LndVerdict::Proven { orders: vec![1, 1, 1] });
    }

    #[test]
    fn proven_orders_are_minimal() {
        // ∂ = x2 d/dx1 + x3 d/dx2 has orders (3, 2, 1)
        let d = der(vec![x(3, 2), x(3, 3), Poly::zero(3)]);
        let LndVerdict::Proven { orders } = d.lnd_check(10) else { panic!() };
        assert_eq!(orders, vec![3, 2, 1]);
        for (j, &k) in orders.iter().enumerate() {
            let mut f = x(3, j + 1);
            for _ in 0..k - 1 {
                f = d.apply(&f).unwrap();
            }
            assert!(!f.is_zero());
            assert!(d.apply(&f).unwrap().is_zero());
        }
        // cap too small to see order 3
        assert!(!d.lnd_check(2).is_proven());
    }

    #[test]
    fn degrees() {
        let n = 3;
        let d = der(vec![&x(n, 2) * &x(n, 3), Poly::zero(n), Poly::zero(n)]);
        assert_eq!(d.degree().unwrap(), Some(MVec(vec![-2, 0])));
        let d = der(vec![Poly::one(n), Poly::one(n), Poly::zero(n)]);
        assert_eq!(d.degree().unwrap(), None);
        let d = der(vec![x(n, 1), Poly::zero(n), Poly::zero(n)]);
        assert_eq!(d.degree().unwrap(), Some(MVec(vec![0, 0])));
        assert_eq!(Derivation::zero(n).degree(), Err(DerivationError::ZeroDerivation));
        // mixed image
        let d = der(vec![&x(n, 2) + &x(n, 3), Poly::zero(n), Poly::zero(n)]);
        assert_eq!(d.degree().unwrap(), None);
    }

    #[test]
    fn exponentials() {
        let n = 2;
        let d = der(vec![x(n, 2), Poly::zero(n)]);
        let a = d.exp(&rat(1), 10).unwrap();
        assert_eq!(a.images(), &[&x(n, 1) + &x(n, 2), x(n, 2)]);
        assert_eq!(d.exp(&rat(0), 10).unwrap(), Automorphism::identity(n));
        let d = der(vec![x(n, 2).pow(2), Poly::zero(n)]);
        let a = d.exp(&ratio(1, 2), 10).unwrap();
        assert_eq!(a.images()[0], &x(n, 1) + &x(n, 2).pow(2).scale(&ratio(1, 2)));

        let euler = der(vec![x(n, 1), Poly::zero(n)]);
        assert_eq!(euler.exp(&rat(1), 5), Err(DerivationError::NotProvenLnd { cap: 5 }));
    }

    #[test]
    fn exp_of_a_longer_chain() {
        // ∂ = x2 d/dx1 + x3 d/dx2: x1 ↦ x1 + t x2 + t²/2 x3
        let n = 3;
        let d = der(vec![x(n, 2), x(n, 3), Poly::zero(n)]);
        let t = rat(3);
        let a = d.exp(&t, 10).unwrap();
        let expected = &(&x(n, 1) + &x(n, 2).scale(&t)) + &x(n, 3).scale(&ratio(9, 2));
        assert_eq!(a.images()[0], expected);
        assert!(a.is_volume_preserving());
        let twice = a.compose(&a).unwrap();
        assert_eq!(twice, d.exp(&rat(6), 10).unwrap());
    }

    #[test]
    fn volume_preservation() {
        let n = 2;
        assert!(Automorphism::identity(n).is_volume_preserving());
        let d = der(vec![x(n, 2), Poly::zero(n)]);
        for t in [rat(1), rat(-3), ratio(1, 2)] {
            assert!(d.exp(&t, 10).unwrap().is_volume_preserving());
        }
        let scaling = Automorphism::new(vec![x(n, 1).scale(&rat(2)), x(n, 2)]).unwrap();
        assert!(!scaling.is_volume_preserving());
        assert_eq!(scaling.jacobian_det(), Poly::constant(n, rat(2)));
    }

    #[test]
    fn formal_conjugation() {
        let n = 2;
        // γ = diag(s, s⁻¹): x2 d/dx1 ↦ s⁻²·x2 d/dx1, degree −2
        let d = der(vec![x(n, 2), Poly::zero(n)]);
        let conj = d.conjugate_formal();
        let mut expected = TorusPoly::zero(2, 1);
        expected.add_term(Exponent::new(vec![0, 1]), LaurentScalar::monomial(vec![-2], rat(1)));
        assert_eq!(conj[0], expected);
        assert_eq!(conj[1], TorusPoly::zero(2, 1));

        let d = der(vec![Poly::zero(n), Poly::one(n)]);
        let mut expected = TorusPoly::zero(2, 1);
        expected.add_term(Exponent::zeros(2), LaurentScalar::monomial(vec![1], rat(1)));
        assert_eq!(d.conjugate_formal()[1], expected);

        let d = der(vec![x(n, 1), Poly::zero(n)]);
        assert_eq!(d.conjugate_formal()[0].to_poly(), Some(x(n, 1)));
    }

    #[test]
    fn root_checks() {
        let n = 2;
        let d = der(vec![mono(&[0, 3], rat(5)), Poly::zero(n)]);
        let RootCheckResult::IsRoot { root, normal_form } = d.root_check(d.default_cap()).unwrap()
        else {
            panic!("expected a root vector");
        };
        assert_eq!(root, MVec(vec![-4]));
        assert_eq!(
            normal_form,
            NormalForm { lambda: rat(5), index: 0, alpha: Exponent::new(vec![0, 3]) }
        );

        let euler = der(vec![x(n, 1), Poly::zero(n)]);
        assert!(matches!(
            euler.root_check(10).unwrap(),
            RootCheckResult::NotRoot(NotRootReason::NotLndWithinCap(_))
        ));
        let hyperbolic = der(vec![x(n, 1), -x(n, 2)]);
        assert_eq!(hyperbolic.degree().unwrap(), Some(MVec(vec![0])));
        assert!(matches!(
            hyperbolic.root_check(50).unwrap(),
            RootCheckResult::NotRoot(NotRootReason::NotLndWithinCap(_))
        ));
        assert_eq!(
            Derivation::zero(n).root_check(5).unwrap(),
            RootCheckResult::NotRoot(NotRootReason::ZeroDerivation)
        );
        let mixed = der(vec![Poly::one(n), Poly::one(n)]);
        assert_eq!(
            mixed.root_check(5).unwrap(),
            RootCheckResult::NotRoot(NotRootReason::NotHomogeneous)
        );
    }

    #[test]
    fn non_monomial_lnd_is_not_homogeneous() {
        // triangular but not homogeneous: x2 d/dx1 + x3 d/dx2 in n = 3
        let n = 3;
        let d = der(vec![x(n, 2), x(n, 3), Poly::zero(n)]);
        assert!(d.lnd_check(10).is_proven());
        assert_eq!(d.root_check(10).unwrap(), RootCheckResult::NotRoot(NotRootReason::NotHomogeneous));
    }

    #[test]
    fn operator_form_printing() {
        let n = 2;
        assert_eq!(der(vec![x(n, 2).pow(3), Poly::zero(n)]).operator_form(), "x2^3 d/dx1");
        assert_eq!(der(vec![x(n, 1), -x(n, 2)]).operator_form(), "x1 d/dx1 - x2 d/dx2");
        assert_eq!(der(vec![Poly::one(n), Poly::constant(n, ratio(-1, 2))]).operator_form(), "d/dx1 - 1/2 d/dx2");
        assert_eq!(der(vec![&x(n, 1) + &x(n, 2), Poly::zero(n)]).operator_form(), "(x1 + x2) d/dx1");
        assert_eq!(Derivation::zero(n).operator_form(), "0");
        assert_eq!(der(vec![x(n, 2).pow(3), Poly::zero(n)]).to_string(), "x2^3, 0");
    }
}
