//! Free graded-commutative algebras over the rationals, modulo monomial ideals.
//!
//! Generators are stored in canonical order, sorted by `(degree, name)`. A
//! [`Monomial`] is an exponent vector over that order, so every monomial has a
//! unique representation and its factor word (see [`GradedRing::factor_word`])
//! is the canonical ordering of its letters. Odd generators square to zero and
//! never carry an exponent above one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// A monomial in canonical form: exponents indexed by canonical generator
/// position, together with its total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: i64,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(len: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; len],
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Word length, i.e. the sum of the exponents.
    pub fn word_length(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Generators (canonical indices) that occur in this monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Degree ascending, then graded-lexicographic: larger exponents on earlier
/// generators come first, so `w^2 < w*y < y^2` when `w` precedes `y`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ideal generated by monomials, kept as a minimal generating set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = monomials.into_iter().collect();
        all.sort();
        all.dedup();
        let mut generators: Vec<Monomial> = Vec::new();
        for m in all {
            // sorted by degree, so a divisor of m is already present
            if !generators.iter().any(|g| g.divides(&m)) {
                generators.push(m);
            }
        }
        MonomialIdeal { generators }
    }

    pub fn empty() -> Self {
        MonomialIdeal::default()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

/// Element of a graded-commutative algebra: monomials with nonzero rational
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        GradedPolynomial::default()
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn constant(len: usize, coeff: Rational) -> Self {
        GradedPolynomial::monomial(Monomial::unit(len), coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &GradedPolynomial, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scale(&self, s: &Rational) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        out.add_scaled(self, s);
        out
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous
    /// polynomials.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when zero or every term has degree `deg`.
    pub fn is_homogeneous_of(&self, deg: i64) -> bool {
        self.terms.keys().all(|m| m.degree == deg)
    }

    /// Coefficient of the unit monomial.
    pub fn augmentation(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> GradedPolynomial {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        self.scale(&-Rational::one())
    }
}

/// Deletes every term divisible by a generator of `ideal`.
pub fn reduce_mod_ideal(p: &GradedPolynomial, ideal: &MonomialIdeal) -> GradedPolynomial {
    if ideal.is_empty() {
        return p.clone();
    }
    p.filter_terms(|m| !ideal.contains(m))
}

/// `(-1)^count` as a rational.
pub(crate) fn sign_of(count: i64) -> Rational {
    if count.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// A free graded-commutative algebra on finitely many generators modulo a
/// monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedRing {
    gens: Vec<Generator>,
    declared: Vec<usize>,
    ideal: MonomialIdeal,
}

impl GradedRing {
    /// Builds the free algebra on `gens`, given in declaration order.
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.degree < 1 {
                return Err(Error::Parameter(format!(
                    "generator {} has degree {}; degrees must be at least 1",
                    g.name, g.degree
                )));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by(|&a, &b| {
            (gens[a].degree, &gens[a].name).cmp(&(gens[b].degree, &gens[b].name))
        });
        let mut declared = vec![0; gens.len()];
        for (canonical, &original) in order.iter().enumerate() {
            declared[original] = canonical;
        }
        let sorted = order.iter().map(|&i| gens[i].clone()).collect();
        Ok(GradedRing {
            gens: sorted,
            declared,
            ideal: MonomialIdeal::empty(),
        })
    }

    pub fn with_ideal(mut self, ideal: MonomialIdeal) -> Self {
        self.ideal = ideal;
        self
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// Generators in canonical order.
    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.gens[index]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Canonical indices in declaration order.
    pub fn declaration_order(&self) -> &[usize] {
        &self.declared
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::DomainMismatch(format!("symbol {name} is not a generator")))
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.len())
    }

    pub fn one(&self) -> GradedPolynomial {
        GradedPolynomial::constant(self.len(), Rational::one())
    }

    pub fn constant(&self, c: Rational) -> GradedPolynomial {
        GradedPolynomial::constant(self.len(), c)
    }

    /// The monomial for a single generator.
    pub fn gen_monomial(&self, index: usize) -> Monomial {
        let mut exps = vec![0; self.len()];
        exps[index] = 1;
        Monomial {
            degree: self.gens[index].degree,
            exps,
        }
    }

    pub fn gen_poly(&self, index: usize) -> GradedPolynomial {
        GradedPolynomial::monomial(self.gen_monomial(index), Rational::one())
    }

    /// Builds a monomial from `(name, exponent)` factors. Rejects squares of
    /// odd generators, which are zero rather than monomials.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<Monomial> {
        let mut exps = vec![0u32; self.len()];
        for (name, e) in factors {
            let i = self.require_index(name)?;
            exps[i] += e;
        }
        self.monomial_from_exponents(exps)
    }

    pub fn monomial_from_exponents(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.len() {
            return Err(Error::DomainMismatch(
                "exponent vector length does not match the algebra".into(),
            ));
        }
        if let Some((i, _)) = exps
            .iter()
            .enumerate()
            .find(|(i, &e)| e > 1 && self.gens[*i].is_odd())
        {
            return Err(Error::Parameter(format!(
                "odd generator {} cannot appear with exponent above 1",
                self.gens[i].name
            )));
        }
        let degree = exps
            .iter()
            .zip(&self.gens)
            .map(|(&e, g)| i64::from(e) * g.degree)
            .sum();
        Ok(Monomial { degree, exps })
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.exps.len() != self.len() {
            return Err(Error::DomainMismatch(
                "monomial belongs to a different algebra".into(),
            ));
        }
        Ok(())
    }

    fn check_poly(&self, p: &GradedPolynomial) -> Result<()> {
        p.terms.keys().try_for_each(|m| self.check(m))
    }

    /// Sorts a word of canonical generator indices into canonical order.
    ///
    /// Returns `None` when an odd generator repeats. Otherwise the sign is
    /// `(-1)^t` with `t` the number of odd-odd transpositions performed by a
    /// stable merge sort.
    pub fn canonical_monomial(&self, word: &[usize]) -> Option<(Rational, Monomial)> {
        let mut letters = word.to_vec();
        let mut scratch = vec![0; letters.len()];
        let swaps = self.merge_sort(&mut letters, &mut scratch);
        for pair in letters.windows(2) {
            if pair[0] == pair[1] && self.gens[pair[0]].is_odd() {
                return None;
            }
        }
        let mut exps = vec![0u32; self.len()];
        for &l in &letters {
            exps[l] += 1;
        }
        let degree = letters.iter().map(|&l| self.gens[l].degree).sum();
        Some((sign_of(swaps as i64), Monomial { degree, exps }))
    }

    /// Symbol-level form of [`GradedRing::canonical_monomial`].
    pub fn canonical_monomial_of_names(
        &self,
        word: &[&str],
    ) -> Result<Option<(Rational, Monomial)>> {
        let indices = word
            .iter()
            .map(|n| self.require_index(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.canonical_monomial(&indices))
    }

    // Counts inversions between odd letters.
    fn merge_sort(&self, xs: &mut [usize], scratch: &mut [usize]) -> usize {
        let n = xs.len();
        if n < 2 {
            return 0;
        }
        let mid = n / 2;
        let mut swaps = {
            let (left, right) = xs.split_at_mut(mid);
            let (sl, sr) = scratch.split_at_mut(mid);
            self.merge_sort(left, sl) + self.merge_sort(right, sr)
        };
        let odd_left_total = xs[..mid].iter().filter(|&&l| self.gens[l].is_odd()).count();
        let (mut i, mut j, mut k) = (0, mid, 0);
        let mut odd_left_taken = 0;
        while i < mid && j < n {
            if xs[j] < xs[i] {
                if self.gens[xs[j]].is_odd() {
                    swaps += odd_left_total - odd_left_taken;
                }
                scratch[k] = xs[j];
                j += 1;
            } else {
                if self.gens[xs[i]].is_odd() {
                    odd_left_taken += 1;
                }
                scratch[k] = xs[i];
                i += 1;
            }
            k += 1;
        }
        while i < mid {
            scratch[k] = xs[i];
            i += 1;
            k += 1;
        }
        while j < n {
            scratch[k] = xs[j];
            j += 1;
            k += 1;
        }
        xs.copy_from_slice(&scratch[..n]);
        swaps
    }

    /// The canonical word of a monomial: letters in canonical order, each
    /// repeated by its exponent.
    pub fn factor_word(&self, m: &Monomial) -> Vec<usize> {
        m.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// Product of two monomials with its Koszul sign, or `None` if it vanishes
    /// in the free algebra. The ideal is not applied here.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Rational, Monomial)> {
        let mut inversions = 0i64;
        let mut odd_in_a_after = 0i64;
        // walk from the top index down, counting odd letters of `a` above each odd letter of `b`
        for i in (0..a.exps.len()).rev() {
            if !self.gens[i].is_odd() {
                continue;
            }
            if a.exps[i] > 0 && b.exps[i] > 0 {
                return None;
            }
            if b.exps[i] > 0 {
                inversions += odd_in_a_after;
            }
            if a.exps[i] > 0 {
                odd_in_a_after += 1;
            }
        }
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        Some((
            sign_of(inversions),
            Monomial {
                degree: a.degree + b.degree,
                exps,
            },
        ))
    }

    /// Product in the quotient algebra.
    pub fn mul(&self, p: &GradedPolynomial, q: &GradedPolynomial) -> Result<GradedPolynomial> {
        self.check_poly(p)?;
        self.check_poly(q)?;
        Ok(self.mul_unchecked(p, q))
    }

    pub(crate) fn mul_unchecked(
        &self,
        p: &GradedPolynomial,
        q: &GradedPolynomial,
    ) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (a, ca) in &p.terms {
            for (b, cb) in &q.terms {
                if let Some((sign, m)) = self.mul_monomials(a, b) {
                    if !self.ideal.contains(&m) {
                        out.add_term(m, sign * ca * cb);
                    }
                }
            }
        }
        out
    }

    /// Product of a sequence of factors, left to right.
    pub fn product<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a GradedPolynomial>,
    ) -> GradedPolynomial {
        let mut acc = self.one();
        for f in factors {
            if acc.is_zero() {
                break;
            }
            acc = self.mul_unchecked(&acc, f);
        }
        self.reduce(&acc)
    }

    pub fn pow(&self, p: &GradedPolynomial, k: u32) -> GradedPolynomial {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, p);
        }
        self.reduce(&acc)
    }

    pub fn reduce(&self, p: &GradedPolynomial) -> GradedPolynomial {
        reduce_mod_ideal(p, &self.ideal)
    }

    /// All reduced monomials of degree `k`, in canonical enumeration order.
    pub fn basis_of_degree(&self, k: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if k < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.len()];
        self.enumerate(0, k, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        index: usize,
        remaining: i64,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            let m = Monomial {
                degree: exps
                    .iter()
                    .zip(&self.gens)
                    .map(|(&e, g)| i64::from(e) * g.degree)
                    .sum(),
                exps: exps.clone(),
            };
            if !self.ideal.contains(&m) {
                out.push(m);
            }
            return;
        }
        if index == self.len() {
            return;
        }
        let g = &self.gens[index];
        let max = remaining / g.degree;
        let max = if g.is_odd() { max.min(1) } else { max };
        for e in 0..=max {
            exps[index] = e as u32;
            self.enumerate(index + 1, remaining - e * g.degree, exps, out);
        }
        exps[index] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.gens[i].name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Renders a polynomial with exact coefficients; unit coefficients are
    /// omitted on non-constant terms and zero prints as `0`.
    pub fn format_poly(&self, p: &GradedPolynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in p.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if m.is_unit() {
                s.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    s.push_str(&format_rational(&abs));
                    s.push('*');
                }
                s.push_str(&self.format_monomial(m));
            }
        }
        s
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
