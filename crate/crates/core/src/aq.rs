//! André–Quillen cohomology of the derivation complex, the induced bracket on
//! classes, and Whitehead-length bounds for mapping spaces.
//!
//! `H^{-k}` of the complex models `π_k` of the mapping-space component for
//! `k >= 2`; lower `k` are still computed but flagged.

use std::fmt;
use std::ops::RangeInclusive;

use num_traits::Zero;

use crate::cdga::{Cdga, Extended};
use crate::der::{
    boundary_matrix, bracket_unchecked, der_boundary, DerContext, DerSpace, Derivation,
};
use crate::error::{Error, Result};
use crate::gca::Rational;
use crate::linalg::{kernel_basis, rank, EchelonSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    /// Homotopy degree; the derivations live in `Der^{-k}`.
    pub k: i64,
    pub rank: usize,
    pub representatives: Vec<Derivation>,
    /// Dimension of `Der^{-k}`.
    pub cochains: usize,
    /// Rank of `∂: Der^{-k} -> Der^{-k+1}`.
    pub outgoing_rank: usize,
    /// Rank of `∂: Der^{-k-1} -> Der^{-k}`.
    pub incoming_rank: usize,
}

impl DegreeRecord {
    pub fn is_homotopy_interpretable(&self) -> bool {
        self.k >= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub based: bool,
    pub degrees: Vec<DegreeRecord>,
}

impl CohomologyReport {
    pub fn rank(&self, k: i64) -> Option<usize> {
        self.degrees.iter().find(|d| d.k == k).map(|d| d.rank)
    }

    pub fn record(&self, k: i64) -> Option<&DegreeRecord> {
        self.degrees.iter().find(|d| d.k == k)
    }
}

/// Cocycles modulo boundaries in one degree of the complex.
struct DegreeData {
    space: DerSpace,
    boundaries: EchelonSpan,
    outgoing_rank: usize,
    incoming_rank: usize,
    kernel: Vec<Vec<Rational>>,
}

fn degree_data(ctx: &DerContext, n: i64) -> DegreeData {
    let (space, _, outgoing) = boundary_matrix(ctx, n);
    let (_, _, incoming) = boundary_matrix(ctx, n - 1);
    let mut boundaries = EchelonSpan::new();
    for c in 0..incoming.cols() {
        boundaries.insert(&incoming.column(c));
    }
    DegreeData {
        space,
        outgoing_rank: rank(&outgoing),
        incoming_rank: rank(&incoming),
        kernel: kernel_basis(&outgoing),
        boundaries,
    }
}

/// Ranks and representative cocycles of `H^{-k}` for each `k` in `k_range`.
///
/// Representatives are kernel basis vectors that are independent modulo
/// boundaries, each reduced against the echelon basis of the boundaries.
pub fn aq_cohomology(ctx: &DerContext, k_range: RangeInclusive<i64>) -> CohomologyReport {
    let degrees = k_range
        .map(|k| {
            let data = degree_data(ctx, -k);
            let mut span = data.boundaries.clone();
            let mut representatives = Vec::new();
            for v in &data.kernel {
                if span.insert(v) {
                    let reduced = data.boundaries.reduce(v);
                    representatives.push(data.space.from_coords(&reduced));
                }
            }
            DegreeRecord {
                k,
                rank: representatives.len(),
                representatives,
                cochains: data.space.dim(),
                outgoing_rank: data.outgoing_rank,
                incoming_rank: data.incoming_rank,
            }
        })
        .collect();
    CohomologyReport {
        based: ctx.is_based(),
        degrees,
    }
}

/// Default degree window: `2..=top(B) + max|v|` for finite-dimensional `B`,
/// otherwise `2..=max|v|`, beyond which `Der^{-k}` vanishes.
pub fn default_k_range(ctx: &DerContext) -> RangeInclusive<i64> {
    let max_gen = ctx.max_generator_degree();
    let top = top_degree(ctx.target()).unwrap_or(0);
    2..=(top + max_gen).max(2)
}

/// Highest nonzero degree of a finite-dimensional algebra.
pub fn top_degree(a: &Cdga) -> Option<i64> {
    a.nil().finite()?;
    let max_gen = a
        .ring()
        .generators()
        .iter()
        .map(|g| g.degree)
        .max()
        .unwrap_or(0);
    let nil = a.nil().finite()? as i64;
    (0..=nil * max_gen.max(1))
        .rev()
        .find(|&k| !a.ring().basis_of_degree(k).is_empty())
}

/// Result of bracketing two cohomology classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBracket {
    /// Bracket of the representatives, reduced modulo boundaries; zero when
    /// the class vanishes.
    pub representative: Derivation,
    pub is_zero: bool,
}

/// Reduces a cocycle modulo boundaries and reports whether it is exact.
pub fn reduce_class(ctx: &DerContext, cocycle: &Derivation) -> Result<ClassBracket> {
    cocycle.check(ctx)?;
    if !der_boundary(ctx, cocycle).is_zero() {
        return Err(Error::Contract(format!(
            "derivation of degree {} is not a cocycle",
            cocycle.degree()
        )));
    }
    let (_, space, incoming) = boundary_matrix(ctx, cocycle.degree() - 1);
    let mut boundaries = EchelonSpan::new();
    for c in 0..incoming.cols() {
        boundaries.insert(&incoming.column(c));
    }
    let reduced = boundaries.reduce(&space.coords(cocycle));
    let is_zero = reduced.iter().all(Zero::is_zero);
    Ok(ClassBracket {
        representative: space.from_coords(&reduced),
        is_zero,
    })
}

/// Bracket of the classes of two cocycles, decided up to boundaries.
pub fn bracket_on_cohomology(
    ctx: &DerContext,
    a: &Derivation,
    b: &Derivation,
) -> Result<ClassBracket> {
    for (name, x) in [("first", a), ("second", b)] {
        x.check(ctx)?;
        if !der_boundary(ctx, x).is_zero() {
            return Err(Error::Contract(format!("{name} argument is not a cocycle")));
        }
    }
    let raw = bracket_unchecked(ctx, a, b);
    reduce_class(ctx, &raw)
}

/// Greatest `L <= max_len` such that some left-nested bracket
/// `[c_1, [c_2, ... [c_{L-1}, c_L]...]]` of classes from `k_range` is
/// nonzero; 0 when every group in range vanishes.
///
/// Each level keeps a basis of the span of the nonzero nested classes found
/// so far; by bilinearity, brackets of basis classes span the next level.
pub fn wl_lower_bound(ctx: &DerContext, max_len: usize, k_range: RangeInclusive<i64>) -> usize {
    let report = aq_cohomology(ctx, k_range);
    let generators: Vec<Derivation> = report
        .degrees
        .iter()
        .filter(|d| d.is_homotopy_interpretable())
        .flat_map(|d| d.representatives.iter().cloned())
        .collect();
    if generators.is_empty() || max_len == 0 {
        return 0;
    }
    let mut level = generators.clone();
    let mut length = 1;
    while length < max_len {
        let mut spans: Vec<(i64, EchelonSpan, DerSpace)> = Vec::new();
        let mut next = Vec::new();
        for c in &generators {
            for inner in &level {
                let class = match bracket_on_cohomology(ctx, c, inner) {
                    Ok(class) if !class.is_zero => class.representative,
                    _ => continue,
                };
                let degree = class.degree();
                let pos = match spans.iter().position(|(d, _, _)| *d == degree) {
                    Some(p) => p,
                    None => {
                        spans.push((degree, EchelonSpan::new(), DerSpace::new(ctx, degree)));
                        spans.len() - 1
                    }
                };
                let (_, span, space) = &mut spans[pos];
                if span.insert(&space.coords(&class)) {
                    next.push(class);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
        length += 1;
    }
    length
}

/// An upper bound that is either a number, infinite, or not available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Value(Extended),
    Inapplicable(String),
}

impl Bound {
    pub fn value(&self) -> Option<Extended> {
        match self {
            Bound::Value(v) => Some(*v),
            Bound::Inapplicable(_) => None,
        }
    }

    /// True unless the bound is a finite number below `lower`.
    pub fn admits(&self, lower: usize) -> bool {
        match self {
            Bound::Value(Extended::Finite(b)) => lower as u64 <= *b,
            _ => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Value(v) => write!(f, "{v}"),
            Bound::Inapplicable(why) => write!(f, "inapplicable ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlReport {
    pub lower_bound: usize,
    /// `nil B`, for based contexts.
    pub nil_bound: Bound,
    /// `floor((nil B - 1)/(omega - 1)) + 1`, for based contexts with
    /// `WL(Y) = 1`, `nil B >= 2` and finite `omega`.
    pub refined_bound: Bound,
    /// `WL(Y)`, when `d = d_1` on `ΛV`.
    pub coformal_bound: Bound,
    /// `WL` of the space modeled by the source, `d1-depth + 1`.
    pub wl_target: Result<u32>,
}

impl WlReport {
    /// Every applicable finite bound is at least the lower bound.
    pub fn is_consistent(&self) -> bool {
        [&self.nil_bound, &self.refined_bound, &self.coformal_bound]
            .iter()
            .all(|b| b.admits(self.lower_bound))
    }
}

/// The upper-bound part of a [`WlReport`], each gated on its hypotheses.
pub fn wl_upper_bounds(ctx: &DerContext) -> (Bound, Bound, Bound, Result<u32>) {
    let source = ctx.source();
    let target = ctx.target();
    let wl_target = source.wl_space();
    let nil = target.nil();
    let omega = source.omega();

    let nil_bound = if ctx.is_based() {
        Bound::Value(nil)
    } else {
        Bound::Inapplicable("nil B bounds based mapping spaces only".into())
    };

    let refined_bound = if !ctx.is_based() {
        Bound::Inapplicable("needs a based mapping space".into())
    } else if !matches!(wl_target, Ok(1)) {
        Bound::Inapplicable("needs WL(Y) = 1, i.e. d_1 = 0".into())
    } else {
        match (nil, omega) {
            (Extended::Infinity, _) => Bound::Inapplicable("nil B is infinite".into()),
            (Extended::Finite(b), _) if b < 2 => Bound::Inapplicable("needs nil B >= 2".into()),
            (_, Extended::Infinity) => Bound::Inapplicable("omega is infinite (d = 0)".into()),
            (Extended::Finite(b), Extended::Finite(w)) => {
                Bound::Value(Extended::Finite((b - 1) / (w - 1) + 1))
            }
        }
    };

    let coformal_bound = match (source.quadratic_part(), &wl_target) {
        (Ok(d1), Ok(wl)) if d1.as_slice() == source.differential() => {
            Bound::Value(Extended::Finite(u64::from(*wl)))
        }
        (Ok(_), Ok(_)) => {
            Bound::Inapplicable("d has components of word length other than 2".into())
        }
        (_, Err(e)) => Bound::Inapplicable(e.to_string()),
        (Err(e), _) => Bound::Inapplicable(e.to_string()),
    };

    (nil_bound, refined_bound, coformal_bound, wl_target)
}

/// Lower bound from the bracket search together with all upper bounds.
pub fn wl_report(ctx: &DerContext, max_len: usize, k_range: RangeInclusive<i64>) -> WlReport {
    let lower_bound = wl_lower_bound(ctx, max_len, k_range);
    let (nil_bound, refined_bound, coformal_bound, wl_target) = wl_upper_bounds(ctx);
    WlReport {
        lower_bound,
        nil_bound,
        refined_bound,
        coformal_bound,
        wl_target,
    }
}

/// Whitehead length of the space modeled by `a`.
pub fn wl_space(a: &Cdga) -> Result<u32> {
    a.wl_space()
}
