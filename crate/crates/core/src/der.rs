//! The complex of f-derivations `Der*(ΛV, B; f)`.
//!
//! A derivation of degree `n` is stored by its values on the generators of
//! `ΛV` and extended to products by the twisted Leibniz rule
//! `θ(xy) = θ(x) f(y) + (-1)^(n|x|) f(x) θ(y)`.

use num_traits::{One, Zero};

use crate::cdga::{Cdga, Morphism};
use crate::error::{Error, Result};
use crate::gca::{sign_of, GradedPolynomial, GradedRing, Monomial, Rational};
use crate::linalg::RationalMatrix;

/// A morphism `f: ΛV -> B` together with the choice of free (`B`-valued) or
/// based (`B⁺`-valued) derivations.
#[derive(Clone, Debug)]
pub struct DerContext {
    f: Morphism,
    based: bool,
    chain_defects: Vec<String>,
}

impl DerContext {
    /// Requires a free source, valid source and target, and a degree- and
    /// relation-preserving morphism. Failures of `fd = df` are recorded in
    /// [`DerContext::chain_defects`] rather than rejected.
    pub fn new(f: Morphism, based: bool) -> Result<Self> {
        if !f.source().is_sullivan_free() {
            return Err(Error::Unsupported(format!(
                "source {} of {} must be free",
                f.source().name(),
                f.name()
            )));
        }
        let mut violations = Vec::new();
        if let Err(v) = f.source().validate() {
            violations.extend(v);
        }
        if let Err(v) = f.target().validate() {
            violations.extend(v);
        }
        violations.extend(f.structural_violations());
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        let chain_defects = f.chain_violations();
        Ok(DerContext {
            f,
            based,
            chain_defects,
        })
    }

    /// Like [`DerContext::new`] but also rejects morphisms that are not chain
    /// maps.
    pub fn strict(f: Morphism, based: bool) -> Result<Self> {
        let ctx = Self::new(f, based)?;
        if ctx.chain_defects.is_empty() {
            Ok(ctx)
        } else {
            Err(Error::Validation(ctx.chain_defects))
        }
    }

    pub fn source(&self) -> &Cdga {
        self.f.source()
    }

    pub fn target(&self) -> &Cdga {
        self.f.target()
    }

    pub fn morphism(&self) -> &Morphism {
        &self.f
    }

    pub fn is_based(&self) -> bool {
        self.based
    }

    pub fn chain_defects(&self) -> &[String] {
        &self.chain_defects
    }

    /// The same morphism with the other choice of coefficients.
    pub fn with_based(&self, based: bool) -> Self {
        DerContext {
            based,
            ..self.clone()
        }
    }

    fn src(&self) -> &GradedRing {
        self.f.source().ring()
    }

    fn tgt(&self) -> &GradedRing {
        self.f.target().ring()
    }

    /// Largest source generator degree; derivations of degree below minus
    /// this value vanish.
    pub fn max_generator_degree(&self) -> i64 {
        self.src()
            .generators()
            .iter()
            .map(|g| g.degree)
            .max()
            .unwrap_or(0)
    }
}

/// A homogeneous f-derivation given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    degree: i64,
    // indexed by canonical source generator position
    values: Vec<GradedPolynomial>,
}

impl Derivation {
    pub fn zero(ctx: &DerContext, degree: i64) -> Self {
        Derivation {
            degree,
            values: vec![GradedPolynomial::zero(); ctx.src().len()],
        }
    }

    /// Builds a derivation from named generator values; unnamed generators
    /// map to zero.
    pub fn from_values(
        ctx: &DerContext,
        degree: i64,
        values: Vec<(&str, GradedPolynomial)>,
    ) -> Result<Self> {
        let mut d = Self::zero(ctx, degree);
        for (name, v) in values {
            let i = ctx.src().require_index(name)?;
            d.values[i] = ctx.tgt().reduce(&v);
        }
        d.check(ctx)?;
        Ok(d)
    }

    /// Checks homogeneity and, in based contexts, vanishing augmentation.
    pub fn check(&self, ctx: &DerContext) -> Result<()> {
        if self.values.len() != ctx.src().len() {
            return Err(Error::DomainMismatch(
                "derivation over another source".into(),
            ));
        }
        for (i, v) in self.values.iter().enumerate() {
            let g = ctx.src().generator(i);
            if v.terms()
                .any(|(m, _)| m.exponents().len() != ctx.tgt().len())
            {
                return Err(Error::DomainMismatch(format!(
                    "value on {} is not an element of {}",
                    g.name,
                    ctx.target().name()
                )));
            }
            if !v.is_homogeneous_of(g.degree + self.degree) {
                return Err(Error::Contract(format!(
                    "value on {} must have degree {}, got {}",
                    g.name,
                    g.degree + self.degree,
                    ctx.tgt().format_poly(v)
                )));
            }
            if ctx.based && !v.augmentation().is_zero() {
                return Err(Error::Contract(format!(
                    "based derivation takes a unit value on {}",
                    g.name
                )));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Value on the generator at canonical position `index`.
    pub fn value(&self, index: usize) -> &GradedPolynomial {
        &self.values[index]
    }

    pub fn values(&self) -> &[GradedPolynomial] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GradedPolynomial::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Derivation {
        Derivation {
            degree: self.degree,
            values: self.values.iter().map(|v| v.scale(s)).collect(),
        }
    }

    /// `self + s * other`; degrees must agree.
    pub fn add_scaled(&self, other: &Derivation, s: &Rational) -> Derivation {
        assert_eq!(
            self.degree, other.degree,
            "adding derivations of different degrees"
        );
        Derivation {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| {
                    let mut out = a.clone();
                    out.add_scaled(b, s);
                    out
                })
                .collect(),
        }
    }

    /// `(generator name, rendered value)` for every nonzero value, in
    /// declaration order.
    pub fn describe(&self, ctx: &DerContext) -> Vec<(String, String)> {
        ctx.src()
            .declaration_order()
            .iter()
            .filter(|&&i| !self.values[i].is_zero())
            .map(|&i| {
                (
                    ctx.src().generator(i).name.clone(),
                    ctx.tgt().format_poly(&self.values[i]),
                )
            })
            .collect()
    }
}

/// θ applied to the sorted word `word`, without a coefficient.
fn eval_word(ctx: &DerContext, theta: &Derivation, word: &[usize]) -> GradedPolynomial {
    let src = ctx.src();
    let tgt = ctx.tgt();
    let mut out = GradedPolynomial::zero();
    let mut prefix_degree = 0i64;
    for (i, &letter) in word.iter().enumerate() {
        let value = &theta.values[letter];
        if !value.is_zero() {
            let factors =
                word.iter()
                    .enumerate()
                    .map(|(k, &l)| if k == i { value } else { ctx.f.image(l) });
            let term = tgt.product(factors);
            out.add_scaled(&term, &sign_of(theta.degree * prefix_degree));
        }
        prefix_degree += src.generator(letter).degree;
    }
    out
}

/// Extends θ to `p` by the twisted Leibniz rule, one canonical word at a
/// time.
pub fn eval_derivation(
    ctx: &DerContext,
    theta: &Derivation,
    p: &GradedPolynomial,
) -> Result<GradedPolynomial> {
    theta.check(ctx)?;
    Ok(eval_unchecked(ctx, theta, p))
}

fn eval_unchecked(ctx: &DerContext, theta: &Derivation, p: &GradedPolynomial) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero();
    for (m, c) in p.terms() {
        let word = ctx.src().factor_word(m);
        out.add_scaled(&eval_word(ctx, theta, &word), c);
    }
    out
}

/// `∂θ = d θ - (-1)^n θ d`, a derivation of degree `n + 1`.
pub fn der_boundary(ctx: &DerContext, theta: &Derivation) -> Derivation {
    let sign = sign_of(theta.degree);
    let values = (0..ctx.src().len())
        .map(|i| {
            let outer = ctx.target().extend_differential(&theta.values[i]);
            let inner = eval_unchecked(ctx, theta, ctx.source().d(i));
            let mut v = outer;
            v.add_scaled(&inner, &-sign.clone());
            v
        })
        .collect();
    Derivation {
        degree: theta.degree + 1,
        values,
    }
}

/// Coordinates on `Der^n`: one slot per pair of a source generator and a
/// basis monomial of `B` (or `B⁺`) in the matching degree.
#[derive(Clone, Debug)]
pub struct DerSpace {
    degree: i64,
    slots: Vec<(usize, Monomial)>,
    width: usize,
}

impl DerSpace {
    pub fn new(ctx: &DerContext, degree: i64) -> Self {
        let src = ctx.src();
        let tgt = ctx.tgt();
        let mut slots = Vec::new();
        for &i in src.declaration_order() {
            let k = src.generator(i).degree + degree;
            for b in tgt.basis_of_degree(k) {
                if ctx.based && b.is_unit() {
                    continue;
                }
                slots.push((i, b));
            }
        }
        DerSpace {
            degree,
            slots,
            width: src.len(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[(usize, Monomial)] {
        &self.slots
    }

    pub fn basis_element(&self, j: usize) -> Derivation {
        let (i, b) = &self.slots[j];
        let mut values = vec![GradedPolynomial::zero(); self.width];
        values[*i] = GradedPolynomial::monomial(b.clone(), Rational::one());
        Derivation {
            degree: self.degree,
            values,
        }
    }

    pub fn basis(&self) -> Vec<Derivation> {
        (0..self.dim()).map(|j| self.basis_element(j)).collect()
    }

    /// Coordinates of θ. Panics if θ has a component outside this space.
    pub fn coords(&self, theta: &Derivation) -> Vec<Rational> {
        assert_eq!(theta.degree, self.degree, "derivation of the wrong degree");
        let coords: Vec<Rational> = self
            .slots
            .iter()
            .map(|(i, b)| theta.values[*i].coefficient(b))
            .collect();
        debug_assert_eq!(
            theta
                .values
                .iter()
                .map(GradedPolynomial::len)
                .sum::<usize>(),
            coords.iter().filter(|c| !c.is_zero()).count(),
            "derivation has terms outside the coordinate space"
        );
        coords
    }

    pub fn from_coords(&self, coords: &[Rational]) -> Derivation {
        assert_eq!(coords.len(), self.dim());
        let mut values = vec![GradedPolynomial::zero(); self.width];
        for ((i, b), c) in self.slots.iter().zip(coords) {
            values[*i].add_term(b.clone(), c.clone());
        }
        Derivation {
            degree: self.degree,
            values,
        }
    }
}

/// Basis of `Der^n` in declaration order of generators, then basis order.
pub fn der_basis(ctx: &DerContext, n: i64) -> Vec<Derivation> {
    DerSpace::new(ctx, n).basis()
}

/// Matrix of `∂: Der^n -> Der^(n+1)` in [`DerSpace`] coordinates.
pub fn boundary_matrix(ctx: &DerContext, n: i64) -> (DerSpace, DerSpace, RationalMatrix) {
    let from = DerSpace::new(ctx, n);
    let to = DerSpace::new(ctx, n + 1);
    let columns: Vec<Vec<Rational>> = (0..from.dim())
        .map(|j| to.coords(&der_boundary(ctx, &from.basis_element(j))))
        .collect();
    let m = RationalMatrix::from_columns(to.dim(), &columns);
    (from, to, m)
}

/// The inner double sum of the bracket for a single word `v_1 ... v_s`:
/// `Σ_{i≠j} (-1)^ε_ij f(v_1..v_{i-1}) φ(v_i) ... ψ(v_j) ... f(..v_s)`,
/// with factors multiplied in positional order. The word need not be sorted.
pub fn bracket_word(
    ctx: &DerContext,
    phi: &Derivation,
    psi: &Derivation,
    word: &[usize],
) -> GradedPolynomial {
    let src = ctx.src();
    let tgt = ctx.tgt();
    let (n, m) = (phi.degree, psi.degree);
    // prefix[k] = |v_1| + ... + |v_k|
    let mut prefix = vec![0i64; word.len() + 1];
    for (k, &l) in word.iter().enumerate() {
        prefix[k + 1] = prefix[k] + src.generator(l).degree;
    }
    let mut out = GradedPolynomial::zero();
    for i in 0..word.len() {
        let a = &phi.values[word[i]];
        if a.is_zero() {
            continue;
        }
        for j in 0..word.len() {
            if i == j {
                continue;
            }
            let b = &psi.values[word[j]];
            if b.is_zero() {
                continue;
            }
            let mut eps = n * prefix[i] + m * prefix[j];
            if i < j {
                eps += n * m;
            }
            let factors = word.iter().enumerate().map(|(k, &l)| {
                if k == i {
                    a
                } else if k == j {
                    b
                } else {
                    ctx.f.image(l)
                }
            });
            let term = tgt.product(factors);
            out.add_scaled(&term, &sign_of(eps));
        }
    }
    out
}

/// The bracket of two derivations of degrees `n`, `m`: a derivation of degree
/// `n + m + 1` whose value on a generator `v` is `(-1)^(n+m-1)` times
/// [`bracket_word`] summed over the canonical expansion of `d v`.
pub fn bracket(ctx: &DerContext, phi: &Derivation, psi: &Derivation) -> Result<Derivation> {
    phi.check(ctx)?;
    psi.check(ctx)?;
    Ok(bracket_unchecked(ctx, phi, psi))
}

pub(crate) fn bracket_unchecked(
    ctx: &DerContext,
    phi: &Derivation,
    psi: &Derivation,
) -> Derivation {
    let src = ctx.src();
    let outer = sign_of(phi.degree + psi.degree - 1);
    let values = (0..src.len())
        .map(|v| {
            let mut total = GradedPolynomial::zero();
            for (mono, c) in ctx.source().d(v).terms() {
                let word = src.factor_word(mono);
                total.add_scaled(&bracket_word(ctx, phi, psi, &word), c);
            }
            total.scale(&outer)
        })
        .collect();
    Derivation {
        degree: phi.degree + psi.degree + 1,
        values,
    }
}
