//! Presentations of commutative differential graded algebras and their
//! morphisms, plus the structural invariants read off a Sullivan model:
//! quadratic part, `omega`, product length and d1-depth.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gca::{sign_of, GradedPolynomial, GradedRing, Monomial, Rational};

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(u64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<u64> {
        match self {
            Extended::Finite(n) => Some(n),
            Extended::Infinity => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(n) => write!(f, "{n}"),
            Extended::Infinity => f.write_str("infinity"),
        }
    }
}

/// Generators, monomial relations and a differential given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cdga {
    name: String,
    ring: GradedRing,
    // indexed by canonical generator position
    differential: Vec<GradedPolynomial>,
}

impl Cdga {
    /// The algebra `ring` with zero differential.
    pub fn new(name: impl Into<String>, ring: GradedRing) -> Self {
        let differential = vec![GradedPolynomial::zero(); ring.len()];
        Cdga {
            name: name.into(),
            ring,
            differential,
        }
    }

    /// Sets `d(gen)`. Degrees are not checked here; see [`Cdga::validate`].
    pub fn set_differential(&mut self, gen: &str, value: GradedPolynomial) -> Result<()> {
        let index = self.ring.require_index(gen)?;
        if value
            .terms()
            .any(|(m, _)| m.exponents().len() != self.ring.len())
        {
            return Err(Error::DomainMismatch(format!(
                "d({gen}) is not an element of {}",
                self.name
            )));
        }
        self.differential[index] = self.ring.reduce(&value);
        Ok(())
    }

    pub fn with_differential(mut self, gen: &str, value: GradedPolynomial) -> Result<Self> {
        self.set_differential(gen, value)?;
        Ok(self)
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    /// `d` of the generator at canonical position `index`.
    pub fn d(&self, index: usize) -> &GradedPolynomial {
        &self.differential[index]
    }

    pub fn differential(&self) -> &[GradedPolynomial] {
        &self.differential
    }

    pub fn is_sullivan_free(&self) -> bool {
        self.ring.ideal().is_empty()
    }

    /// Free with decomposable differential.
    pub fn is_minimal(&self) -> bool {
        self.is_sullivan_free()
            && self
                .differential
                .iter()
                .all(|p| p.terms().all(|(m, _)| m.word_length() >= 2))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(GradedPolynomial::is_zero)
    }

    /// Polynomial of a sorted sub-word.
    pub(crate) fn word_poly(ring: &GradedRing, word: &[usize]) -> GradedPolynomial {
        match ring.canonical_monomial(word) {
            Some((sign, m)) => ring.reduce(&GradedPolynomial::monomial(m, sign)),
            None => GradedPolynomial::zero(),
        }
    }

    /// Extends `d` to all of the algebra by the Leibniz rule.
    pub fn extend_differential(&self, p: &GradedPolynomial) -> GradedPolynomial {
        let ring = &self.ring;
        let mut out = GradedPolynomial::zero();
        for (m, c) in p.terms() {
            let word = ring.factor_word(m);
            let mut prefix_degree = 0;
            for (i, &letter) in word.iter().enumerate() {
                let dv = &self.differential[letter];
                if !dv.is_zero() {
                    let prefix = Self::word_poly(ring, &word[..i]);
                    let suffix = Self::word_poly(ring, &word[i + 1..]);
                    let term = ring.product([&prefix, dv, &suffix]);
                    out.add_scaled(&term, &(sign_of(prefix_degree) * c));
                }
                prefix_degree += ring.generator(letter).degree;
            }
        }
        out
    }

    /// Checks that `d` has degree +1, squares to zero and preserves the
    /// relation ideal. Reports every failure.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let ring = &self.ring;
        let mut violations = Vec::new();
        if ring.ideal().generators().iter().any(Monomial::is_unit) {
            violations.push(format!("{}: relation 1 kills the algebra", self.name));
        }
        for (i, g) in ring.generators().iter().enumerate() {
            let dv = &self.differential[i];
            if !dv.is_homogeneous_of(g.degree + 1) {
                let found = dv
                    .terms()
                    .map(|(m, _)| m.degree())
                    .find(|&d| d != g.degree + 1)
                    .unwrap_or_default();
                violations.push(format!(
                    "{}: d({}) has degree {found} but must have degree {}",
                    self.name,
                    g.name,
                    g.degree + 1
                ));
                continue;
            }
            let dd = self.extend_differential(dv);
            if !dd.is_zero() {
                violations.push(format!(
                    "{}: d(d({})) = {} is not zero",
                    self.name,
                    g.name,
                    ring.format_poly(&dd)
                ));
            }
        }
        for r in ring.ideal().generators() {
            let image =
                self.extend_differential(&GradedPolynomial::monomial(r.clone(), Rational::one()));
            if !image.is_zero() {
                violations.push(format!(
                    "{}: d({}) = {} does not lie in the relation ideal",
                    self.name,
                    ring.format_monomial(r),
                    ring.format_poly(&image)
                ));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    fn require_free(&self, what: &str) -> Result<()> {
        if self.is_sullivan_free() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} needs a free algebra but {} has relations",
                self.name
            )))
        }
    }

    /// Word-length-2 component of `d` on each generator.
    pub fn quadratic_part(&self) -> Result<Vec<GradedPolynomial>> {
        self.require_free("the quadratic part")?;
        Ok(self
            .differential
            .iter()
            .map(|p| p.filter_terms(|m| m.word_length() == 2))
            .collect())
    }

    /// Least word length occurring in `d(V)`; infinity when `d = 0`.
    pub fn omega(&self) -> Extended {
        self.differential
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| u64::from(m.word_length())))
            .min()
            .map_or(Extended::Infinity, Extended::Finite)
    }

    /// Product length of the underlying graded algebra, ignoring `d`.
    pub fn nil(&self) -> Extended {
        let ring = &self.ring;
        let mut bounds = Vec::with_capacity(ring.len());
        for (i, g) in ring.generators().iter().enumerate() {
            if g.is_odd() {
                bounds.push(1u32);
                continue;
            }
            let pure = ring
                .ideal()
                .generators()
                .iter()
                .filter(|r| r.support().all(|j| j == i))
                .map(|r| r.exponent(i))
                .min();
            match pure {
                Some(p) => bounds.push(p.saturating_sub(1)),
                None => return Extended::Infinity,
            }
        }
        let mut best = 0u64;
        let mut exps = vec![0u32; ring.len()];
        loop {
            if let Ok(m) = ring.monomial_from_exponents(exps.clone()) {
                if !ring.ideal().contains(&m) {
                    best = best.max(u64::from(m.word_length()));
                }
            }
            // odometer over the exponent box
            let mut k = 0;
            while k < exps.len() {
                if exps[k] < bounds[k] {
                    exps[k] += 1;
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == exps.len() {
                break;
            }
        }
        Extended::Finite(best)
    }

    /// Length of the generator filtration `V_0 ⊂ V_1 ⊂ ...` induced by the
    /// quadratic part.
    pub fn d1_depth(&self) -> Result<u32> {
        let d1 = self.quadratic_part()?;
        let n = self.ring.len();
        let mut inside = vec![false; n];
        let mut depth = 0u32;
        for level in 0.. {
            let next: Vec<bool> = (0..n)
                .map(|i| {
                    if level == 0 {
                        d1[i].is_zero()
                    } else {
                        d1[i].terms().all(|(m, _)| m.support().all(|j| inside[j]))
                    }
                })
                .collect();
            if next == inside {
                break;
            }
            inside = next;
            depth = level;
        }
        if inside.iter().any(|&b| !b) {
            let missing = (0..n)
                .filter(|&i| !inside[i])
                .map(|i| self.ring.generator(i).name.clone())
                .collect();
            return Err(Error::NotNilpotent(missing));
        }
        Ok(depth)
    }

    /// Whitehead length of the space modeled by this algebra: d1-depth + 1.
    pub fn wl_space(&self) -> Result<u32> {
        Ok(self.d1_depth()? + 1)
    }

    /// All structural invariants at once.
    pub fn invariants(&self) -> Result<StructuralInvariants> {
        let d1_depth = self.d1_depth()?;
        Ok(StructuralInvariants {
            omega: self.omega(),
            nil: self.nil(),
            d1_depth,
            wl_space: d1_depth + 1,
        })
    }

    /// Tensor product; generator names must be disjoint.
    pub fn tensor(&self, other: &Cdga, name: impl Into<String>) -> Result<Cdga> {
        let a = &self.ring;
        let b = &other.ring;
        let declared = |r: &GradedRing| -> Vec<crate::gca::Generator> {
            r.declaration_order()
                .iter()
                .map(|&i| r.generator(i).clone())
                .collect()
        };
        let mut gens = declared(a);
        gens.extend(declared(b));
        let ring = GradedRing::new(gens)?;
        let lift = |src: &GradedRing, p: &GradedPolynomial| -> GradedPolynomial {
            let mut out = GradedPolynomial::zero();
            for (m, c) in p.terms() {
                let mut exps = vec![0u32; ring.len()];
                for (i, g) in src.generators().iter().enumerate() {
                    exps[ring.index_of(&g.name).expect("generator carried over")] = m.exponent(i);
                }
                out.add_term(
                    ring.monomial_from_exponents(exps).expect("valid monomial"),
                    c.clone(),
                );
            }
            out
        };
        let relations: Vec<Monomial> = a
            .ideal()
            .generators()
            .iter()
            .map(|r| (a, r))
            .chain(b.ideal().generators().iter().map(|r| (b, r)))
            .flat_map(|(src, r)| {
                lift(src, &GradedPolynomial::monomial(r.clone(), Rational::one()))
                    .terms()
                    .map(|(m, _)| m.clone())
                    .collect::<Vec<_>>()
            })
            .collect();
        let ring = ring
            .clone()
            .with_ideal(crate::gca::MonomialIdeal::new(relations));
        let mut out = Cdga::new(name, ring);
        for (src, alg) in [(a, self), (b, other)] {
            for (i, g) in src.generators().iter().enumerate() {
                out.set_differential(&g.name, lift(src, alg.d(i)))?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralInvariants {
    pub omega: Extended,
    pub nil: Extended,
    pub d1_depth: u32,
    pub wl_space: u32,
}

/// A multiplicative map between presentations, given on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    name: String,
    source: Cdga,
    target: Cdga,
    // indexed by canonical source generator position
    images: Vec<GradedPolynomial>,
}

impl Morphism {
    /// Every source generator needs an image.
    pub fn new(
        name: impl Into<String>,
        source: Cdga,
        target: Cdga,
        images: Vec<(String, GradedPolynomial)>,
    ) -> Result<Self> {
        let name = name.into();
        let mut slots: Vec<Option<GradedPolynomial>> = vec![None; source.ring().len()];
        for (gen, value) in images {
            let i = source.ring().require_index(&gen)?;
            if slots[i].is_some() {
                return Err(Error::Parameter(format!(
                    "{name}: image of {gen} given twice"
                )));
            }
            if value
                .terms()
                .any(|(m, _)| m.exponents().len() != target.ring().len())
            {
                return Err(Error::DomainMismatch(format!(
                    "{name}: image of {gen} is not an element of {}",
                    target.name()
                )));
            }
            slots[i] = Some(target.ring().reduce(&value));
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::Parameter(format!(
                        "{name}: no image given for {}",
                        source.ring().generator(i).name
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            name,
            source,
            target,
            images,
        })
    }

    pub fn identity(a: &Cdga) -> Self {
        let images = (0..a.ring().len()).map(|i| a.ring().gen_poly(i)).collect();
        Morphism {
            name: format!("id_{}", a.name()),
            source: a.clone(),
            target: a.clone(),
            images,
        }
    }

    /// Sends every generator to zero.
    pub fn constant(source: &Cdga, target: &Cdga) -> Self {
        Morphism {
            name: "const".into(),
            source: source.clone(),
            target: target.clone(),
            images: vec![GradedPolynomial::zero(); source.ring().len()],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Cdga {
        &self.source
    }

    pub fn target(&self) -> &Cdga {
        &self.target
    }

    pub fn image(&self, index: usize) -> &GradedPolynomial {
        &self.images[index]
    }

    /// Image of the sorted word `word` of source generators.
    pub fn apply_word(&self, word: &[usize]) -> GradedPolynomial {
        self.target
            .ring()
            .product(word.iter().map(|&l| &self.images[l]))
    }

    pub fn apply(&self, p: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (m, c) in p.terms() {
            let word = self.source.ring().factor_word(m);
            out.add_scaled(&self.apply_word(&word), c);
        }
        out
    }

    /// Failures of degree preservation and of compatibility with relations.
    pub fn structural_violations(&self) -> Vec<String> {
        let src = self.source.ring();
        let tgt = self.target.ring();
        let mut out = Vec::new();
        for (i, g) in src.generators().iter().enumerate() {
            if !self.images[i].is_homogeneous_of(g.degree) {
                out.push(format!(
                    "{}: image of {} = {} is not of degree {}",
                    self.name,
                    g.name,
                    tgt.format_poly(&self.images[i]),
                    g.degree
                ));
            }
        }
        for r in src.ideal().generators() {
            let image = self.apply(&GradedPolynomial::monomial(r.clone(), Rational::one()));
            if !image.is_zero() {
                out.push(format!(
                    "{}: relation {} maps to {} instead of 0",
                    self.name,
                    src.format_monomial(r),
                    tgt.format_poly(&image)
                ));
            }
        }
        out
    }

    /// Generators on which `f d = d f` fails.
    pub fn chain_violations(&self) -> Vec<String> {
        let src = self.source.ring();
        let tgt = self.target.ring();
        let mut out = Vec::new();
        for (i, g) in src.generators().iter().enumerate() {
            let lhs = self.apply(self.source.d(i));
            let rhs = self.target.extend_differential(&self.images[i]);
            let defect = &lhs - &rhs;
            if !defect.is_zero() {
                out.push(format!(
                    "{}: not a chain map at {}: f(d{}) - d(f{}) = {}",
                    self.name,
                    g.name,
                    g.name,
                    g.name,
                    tgt.format_poly(&defect)
                ));
            }
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut all = self.structural_violations();
        all.extend(self.chain_violations());
        if all.is_empty() {
            Ok(())
        } else {
            Err(all)
        }
    }

    pub fn is_chain_map(&self) -> bool {
        self.chain_violations().is_empty()
    }

    /// True when the unit never appears in the image of a generator.
    pub fn is_augmented(&self) -> bool {
        self.images.iter().all(|p| p.augmentation().is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{rat, Generator};
    use crate::models;

    fn poly(ring: &GradedRing, factors: &[(&str, u32)], c: i64) -> GradedPolynomial {
        GradedPolynomial::monomial(ring.monomial(factors).unwrap(), rat(c))
    }

    #[test]
    fn leibniz_examples() {
        let cp2 = models::cpn(2).unwrap();
        let r = cp2.ring();
        let p = poly(r, &[("x", 1), ("xp", 1)], 1);
        assert_eq!(cp2.extend_differential(&p), poly(r, &[("x", 4)], 1));
        assert!(cp2.extend_differential(&r.one()).is_zero());

        let s2 = models::sphere(2).unwrap();
        let r = s2.ring();
        let p = poly(r, &[("e3", 1), ("e2", 1)], 1);
        assert_eq!(s2.extend_differential(&p), poly(r, &[("e2", 3)], 1));
    }

    #[test]
    fn validation_reports_violations() {
        assert!(models::sphere(3).unwrap().validate().is_ok());

        let r = GradedRing::new(vec![Generator::new("x", 2), Generator::new("xp", 5)]).unwrap();
        let bad = Cdga::new("Y", r.clone())
            .with_differential("xp", poly(&r, &[("x", 2)], 1))
            .unwrap();
        let v = bad.validate().unwrap_err();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("degree 4"), "{v:?}");

        let r = GradedRing::new(vec![
            Generator::new("a", 2),
            Generator::new("b", 3),
            Generator::new("c", 4),
        ])
        .unwrap();
        let bad = Cdga::new("Z", r.clone())
            .with_differential("b", poly(&r, &[("a", 2)], 1))
            .unwrap()
            .with_differential("c", poly(&r, &[("b", 1), ("a", 1)], 1))
            .unwrap();
        let v = bad.validate().unwrap_err();
        assert!(
            v.iter().any(|s| s.contains("d(d(c))") && s.contains("a^3")),
            "{v:?}"
        );
    }

    #[test]
    fn relation_ideal_must_be_stable() {
        // d(y) = w in Q[w,y]/(y^2) sends y^2 to 2wy, outside the ideal
        let r = GradedRing::new(vec![Generator::new("w", 3), Generator::new("y", 2)]).unwrap();
        let r = r.clone().with_ideal(crate::gca::MonomialIdeal::new([r
            .monomial(&[("y", 2)])
            .unwrap()]));
        let a = Cdga::new("B", r.clone())
            .with_differential("y", r.gen_poly(r.index_of("w").unwrap()))
            .unwrap();
        let v = a.validate().unwrap_err();
        assert!(v.iter().any(|s| s.contains("relation ideal")), "{v:?}");
    }

    #[test]
    fn morphism_application() {
        let f = models::cp_map(2, 1, rat(0), rat(0), rat(1)).unwrap();
        let src = f.source().ring();
        let tgt = f.target().ring();
        assert!(f.apply(&poly(src, &[("x", 3)], 1)).is_zero());
        assert_eq!(
            f.apply(&poly(src, &[("x", 1)], 1)),
            poly(tgt, &[("y", 1)], 1)
        );

        let f = models::cp_map(3, 1, rat(2), rat(0), rat(1)).unwrap();
        let src = f.source().ring();
        let tgt = f.target().ring();
        for k in 0..4 {
            assert_eq!(
                f.apply(&poly(src, &[("z", k)], 1)),
                poly(tgt, &[("w", k)], 2i64.pow(k))
            );
        }

        let a = models::sphere(2).unwrap();
        let id = Morphism::identity(&a);
        let p = poly(a.ring(), &[("e2", 2), ("e3", 1)], 5);
        assert_eq!(id.apply(&p), p);
        assert!(id.validate().is_ok());
    }

    #[test]
    fn quadratic_parts() {
        let s2 = models::sphere(2).unwrap();
        let d1 = s2.quadratic_part().unwrap();
        let e3 = s2.ring().index_of("e3").unwrap();
        assert_eq!(d1[e3], poly(s2.ring(), &[("e2", 2)], 1));
        let cp3 = models::cpn(3).unwrap();
        assert!(cp3
            .quadratic_part()
            .unwrap()
            .iter()
            .all(GradedPolynomial::is_zero));
        assert!(models::sphere(5)
            .unwrap()
            .quadratic_part()
            .unwrap()
            .iter()
            .all(|p| p.is_zero()));
        assert!(matches!(
            models::truncated_cp(2).unwrap().quadratic_part(),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn omega_and_nil() {
        for n in 1..=5 {
            assert_eq!(
                models::cpn(n).unwrap().omega(),
                Extended::Finite(n as u64 + 1)
            );
        }
        assert_eq!(models::sphere(2).unwrap().omega(), Extended::Finite(2));
        assert_eq!(models::sphere(3).unwrap().omega(), Extended::Infinity);
        for m in 1..=6 {
            assert_eq!(
                models::truncated_cp(m).unwrap().nil(),
                Extended::Finite(m as u64)
            );
        }
        assert_eq!(models::cp_infinity().nil(), Extended::Infinity);
        assert_eq!(models::sphere(3).unwrap().nil(), Extended::Finite(1));
    }

    #[test]
    fn nil_is_additive_on_truncated_tensors() {
        for a in 1..=3 {
            for b in 1..=3 {
                let x = models::truncated_cp(a).unwrap();
                let r = GradedRing::new(vec![Generator::new("u", 2)]).unwrap();
                let u = r.monomial(&[("u", b + 1)]).unwrap();
                let y = Cdga::new("U", r.with_ideal(crate::gca::MonomialIdeal::new([u])));
                let t = x.tensor(&y, "T").unwrap();
                assert_eq!(t.nil(), Extended::Finite(u64::from(a + b)));
            }
        }
    }

    #[test]
    fn depth_filtration() {
        assert_eq!(models::sphere(3).unwrap().d1_depth().unwrap(), 0);
        assert_eq!(models::sphere(2).unwrap().d1_depth().unwrap(), 1);
        assert_eq!(models::cpn(2).unwrap().d1_depth().unwrap(), 0);

        let r = GradedRing::new(vec![
            Generator::new("a", 3),
            Generator::new("b", 5),
            Generator::new("c", 7),
        ])
        .unwrap();
        let z = Cdga::new("Z", r.clone())
            .with_differential("c", poly(&r, &[("a", 1), ("b", 1)], 1))
            .unwrap();
        assert_eq!(z.d1_depth().unwrap(), 1);

        // d1(b) involves b itself, so b never enters the filtration
        let r = GradedRing::new(vec![Generator::new("a", 2), Generator::new("b", 3)]).unwrap();
        let w = Cdga::new("W", r.clone())
            .with_differential("b", poly(&r, &[("a", 1), ("b", 1)], 1))
            .unwrap();
        assert!(matches!(w.d1_depth(), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn tensor_carries_differentials() {
        let t = models::cp_infinity()
            .tensor(&models::cpn(2).unwrap(), "Y")
            .unwrap();
        assert!(t.validate().is_ok());
        let xp = t.ring().index_of("xp").unwrap();
        assert_eq!(t.d(xp), &poly(t.ring(), &[("x", 3)], 1));
        assert!(models::cpn(2)
            .unwrap()
            .tensor(&models::cpn(3).unwrap(), "clash")
            .is_err());
    }

    #[test]
    fn chain_violations_are_named() {
        let f = models::cp_map(2, 1, rat(1), rat(1), rat(1)).unwrap();
        let v = f.chain_violations();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("xp"));
        assert!(models::cp_map(2, 1, rat(1), rat(0), rat(1))
            .unwrap()
            .is_chain_map());
    }

    #[test]
    fn minimality() {
        assert!(models::sphere(4).unwrap().is_minimal());
        assert!(!models::truncated_cp(2).unwrap().is_minimal());
    }
}
