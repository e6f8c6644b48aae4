//! Ready-made presentations: spheres, complex projective spaces, their
//! cohomology algebras and the two-parameter family of maps between
//! `CP^inf x CP^n` and `CP^inf x CP^m` models.

use num_traits::One;

use crate::cdga::{Cdga, Morphism};
use crate::error::{Error, Result};
use crate::gca::{Generator, GradedPolynomial, GradedRing, MonomialIdeal, Rational};

fn single(name: &str, degree: i64) -> Result<GradedRing> {
    GradedRing::new(vec![Generator::new(name, degree)])
}

/// Minimal model of `S^n`: `(Λ(e_n), 0)` for odd `n`, and
/// `(Λ(e_n, e_{2n-1}), d e_{2n-1} = e_n^2)` for even `n`.
pub fn sphere(n: u32) -> Result<Cdga> {
    if n == 0 {
        return Err(Error::Parameter(
            "sphere dimension must be at least 1".into(),
        ));
    }
    let n = i64::from(n);
    let name = format!("S{n}");
    let top = format!("e{n}");
    if n % 2 == 1 {
        return Ok(Cdga::new(name, single(&top, n)?));
    }
    let aux = format!("e{}", 2 * n - 1);
    let ring = GradedRing::new(vec![
        Generator::new(&top, n),
        Generator::new(&aux, 2 * n - 1),
    ])?;
    let square = GradedPolynomial::monomial(ring.monomial(&[(&top, 2)])?, Rational::one());
    Cdga::new(name, ring).with_differential(&aux, square)
}

/// Minimal model of `CP^n`: `Λ(x, xp)` with `|x| = 2`, `|xp| = 2n+1` and
/// `d xp = x^(n+1)`.
pub fn cpn(n: u32) -> Result<Cdga> {
    if n == 0 {
        return Err(Error::Parameter("CP^n needs n >= 1".into()));
    }
    let ring = GradedRing::new(vec![
        Generator::new("x", 2),
        Generator::new("xp", 2 * i64::from(n) + 1),
    ])?;
    let top = GradedPolynomial::monomial(ring.monomial(&[("x", n + 1)])?, Rational::one());
    Cdga::new(format!("CP{n}"), ring).with_differential("xp", top)
}

/// `(Q[z], 0)` with `|z| = 2`.
pub fn cp_infinity() -> Cdga {
    polynomial("z")
}

/// `(Q[name], 0)` on one generator of degree 2, named `Q<name>`.
pub fn polynomial(name: &str) -> Cdga {
    Cdga::new(
        format!("Q{name}"),
        single(name, 2).expect("degree 2 generator"),
    )
}

/// `H*(CP^m; Q) = Q[y]/(y^(m+1))` with zero differential.
pub fn truncated_cp(m: u32) -> Result<Cdga> {
    truncated("y", m)
}

/// `Q[name]/(name^(m+1))` with `|name| = 2`, named `Q<name>_<m+1>`.
pub fn truncated(name: &str, m: u32) -> Result<Cdga> {
    if m == 0 {
        return Err(Error::Parameter("truncation needs m >= 1".into()));
    }
    let ring = single(name, 2)?;
    let rel = ring.monomial(&[(name, m + 1)])?;
    Ok(Cdga::new(
        format!("Q{name}_{}", m + 1),
        ring.with_ideal(MonomialIdeal::new([rel])),
    ))
}

/// The map `Q[z] ⊗ Λ(x, xp) -> Q[w] ⊗ Q[y]/(y^(m+1))` with
/// `z ↦ q1 w`, `x ↦ q2 w + q3 y`, `xp ↦ 0`.
///
/// Only a chain map when `q2 = 0`; for `q2 ≠ 0` the image of `d xp` is
/// `(q2 w + q3 y)^(n+1) ≠ 0`. Callers that need a strict chain map should
/// check [`Morphism::is_chain_map`].
pub fn cp_map(n: u32, m: u32, q1: Rational, q2: Rational, q3: Rational) -> Result<Morphism> {
    if n == 0 || m == 0 {
        return Err(Error::Parameter("cp_map needs n >= 1 and m >= 1".into()));
    }
    if m >= n {
        return Err(Error::Parameter(format!(
            "cp_map needs m < n, got n={n}, m={m}"
        )));
    }
    let source = cp_infinity().tensor(&cpn(n)?, "Y")?;
    let target = polynomial("w").tensor(&truncated_cp(m)?, "B")?;
    let t = target.ring();
    let w = t.gen_poly(t.require_index("w")?);
    let y = t.gen_poly(t.require_index("y")?);
    let images = vec![
        ("z".to_string(), w.scale(&q1)),
        ("x".to_string(), &w.scale(&q2) + &y.scale(&q3)),
        ("xp".to_string(), GradedPolynomial::zero()),
    ];
    Morphism::new("f", source, target, images)
}
