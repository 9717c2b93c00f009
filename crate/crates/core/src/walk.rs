//! Walk matrices, controllability, walk counts and the spectral
//! equivalences they relate to.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{IntMatrix, IntPoly, RatPoly};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("parameter t must be nonzero")]
    ZeroParameter,
    #[error("I - tA is singular at t = {0}")]
    Singular(BigRational),
}

pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    IntMatrix::from_fn(g.order(), g.order(), |i, j| BigInt::from(g.has_edge(i, j) as u8))
}

/// `A·v`, summing over neighbor lists.
fn adjacency_apply(g: &Graph, v: &[BigInt]) -> Vec<BigInt> {
    (0..g.order())
        .map(|i| g.neighbors(i).iter().map(|&u| &v[u]).sum())
        .collect()
}

/// Columns `1, A·1, ..., A^{len-1}·1`.
fn walk_columns(g: &Graph, len: usize) -> Vec<Vec<BigInt>> {
    let mut cols = Vec::with_capacity(len);
    let mut cur = vec![BigInt::one(); g.order()];
    for _ in 0..len {
        let next = adjacency_apply(g, &cur);
        cols.push(std::mem::replace(&mut cur, next));
    }
    cols
}

fn columns_to_matrix(n: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    IntMatrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
}

/// Walk matrix together with its extension by `A^n·1` and the
/// controllability flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkData {
    pub walk: IntMatrix,
    pub extended: IntMatrix,
    pub controllable: bool,
}

impl WalkData {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let cols = walk_columns(g, n + 1);
        let walk = columns_to_matrix(n, &cols[..n]);
        let extended = columns_to_matrix(n, &cols);
        let controllable = walk.rank() == n;
        WalkData {
            walk,
            extended,
            controllable,
        }
    }
}

/// `W = [1, A·1, ..., A^{n-1}·1]`; entry `(i, j)` counts walks of length `j`
/// starting at `i`.
pub fn walk_matrix(g: &Graph) -> IntMatrix {
    columns_to_matrix(g.order(), &walk_columns(g, g.order()))
}

/// `[W | A^n·1]`, an `n x (n+1)` matrix.
pub fn extended_walk_matrix(g: &Graph) -> IntMatrix {
    columns_to_matrix(g.order(), &walk_columns(g, g.order() + 1))
}

pub fn is_controllable(g: &Graph) -> bool {
    walk_matrix(g).rank() == g.order()
}

/// Number of walks of length `r` starting at each vertex, i.e. `A^r·1`.
pub fn vertex_walk_counts(g: &Graph, r: usize) -> Vec<BigInt> {
    let mut cur = vec![BigInt::one(); g.order()];
    for _ in 0..r {
        cur = adjacency_apply(g, &cur);
    }
    cur
}

/// Total number of walks of length `r`, `1ᵀ·A^r·1`.
pub fn walk_count(g: &Graph, r: usize) -> BigInt {
    vertex_walk_counts(g, r).into_iter().sum()
}

/// Walk totals for lengths `0..len`.
pub fn walk_counts(g: &Graph, len: usize) -> Vec<BigInt> {
    walk_columns(g, len)
        .into_iter()
        .map(|c| c.into_iter().sum())
        .collect()
}

/// Equal walk totals for every length.
///
/// Each total sequence satisfies the linear recurrence given by the
/// characteristic polynomial of its graph, so the difference of two such
/// sequences satisfies one of order at most `n_g + n_h`. Agreement on the
/// first `2·max(n_g, n_h)` terms therefore forces agreement everywhere.
pub fn are_walk_equivalent(g: &Graph, h: &Graph) -> bool {
    let len = 2 * g.order().max(h.order());
    walk_counts(g, len) == walk_counts(h, len)
}

fn rational_parts(t: &BigRational) -> (BigInt, BigInt) {
    (t.numer().clone(), t.denom().clone())
}

/// `1ᵀ(I - tA)⁻¹1`, the walk generating function evaluated at `t`.
pub fn walk_gen_resolvent(g: &Graph, t: &BigRational) -> Result<BigRational, WalkError> {
    let n = g.order();
    let (p, q) = rational_parts(t);
    // (I - tA)·x = 1  <=>  (qI - pA)·x = q·1
    let m = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            q.clone()
        } else if g.has_edge(i, j) {
            -p.clone()
        } else {
            BigInt::zero()
        }
    });
    let x = m
        .solve(&vec![q.clone(); n])
        .expect("square system")
        .ok_or_else(|| WalkError::Singular(t.clone()))?;
    Ok(x.into_iter().sum())
}

/// The walk generating function at `t` expressed through the characteristic
/// polynomials of the graph and its complement:
/// `(1/t)·(χ_Ā(-1/t - 1) / ((-1)^n·χ_A(1/t)) - 1)`.
pub fn walk_gen_charpoly(g: &Graph, t: &BigRational) -> Result<BigRational, WalkError> {
    if t.is_zero() {
        return Err(WalkError::ZeroParameter);
    }
    let inv = t.recip();
    let chi = graph_char_poly(g);
    let chi_comp = graph_char_poly(&g.complement());
    let mut den = chi.eval(&inv);
    if g.order() % 2 == 1 {
        den = -den;
    }
    if den.is_zero() {
        return Err(WalkError::Singular(t.clone()));
    }
    let num = chi_comp.eval(&(-&inv - BigRational::one()));
    Ok(inv * (num / den - BigRational::one()))
}

/// Characteristic polynomial of the adjacency matrix.
pub fn graph_char_poly(g: &Graph) -> IntPoly {
    adjacency_matrix(g).char_poly().expect("adjacency matrix is square and nonempty")
}

pub fn are_cospectral(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && graph_char_poly(g) == graph_char_poly(h)
}

/// Characteristic polynomial of `A + sJ`, i.e. `det(tI - sJ - A)`.
pub fn generalized_char_poly_at(g: &Graph, s: &BigRational) -> RatPoly {
    let n = g.order();
    let (p, q) = rational_parts(s);
    // q·(A + sJ) = qA + pJ is integral; χ_{M/q}(t) = q^{-n}·χ_M(qt).
    let scaled = adjacency_matrix(g).scale(&q).add_scalar_to_all(&p);
    let chi = scaled.char_poly().expect("square and nonempty");
    let coeffs = (0..=n)
        .map(|k| {
            let denom = num_traits::pow(q.clone(), n - k);
            BigRational::new(chi.coeff(k), denom)
        })
        .collect();
    RatPoly::new(coeffs)
}

/// Integer characteristic polynomial of `A + sJ` for integral `s`.
fn generalized_char_poly_int(g: &Graph, s: i64) -> IntPoly {
    adjacency_matrix(g)
        .add_scalar_to_all(&BigInt::from(s))
        .char_poly()
        .expect("square and nonempty")
}

/// `det(tI - sJ - A)` agrees at `s = 0` and `s = 1`. Every coefficient is
/// affine in `s` because `J` has rank one, so two points decide all `s`.
pub fn generalized_cospectral_two_point(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && generalized_char_poly_int(g, 0) == generalized_char_poly_int(h, 0)
        && generalized_char_poly_int(g, 1) == generalized_char_poly_int(h, 1)
}

/// Cospectral with cospectral complements.
pub fn johnson_newman_criterion(g: &Graph, h: &Graph) -> bool {
    are_cospectral(g, h) && are_cospectral(&g.complement(), &h.complement())
}

/// Generalized cospectrality. Both the two-point check and the complement
/// criterion are evaluated; they must agree.
pub fn are_generalized_cospectral(g: &Graph, h: &Graph) -> bool {
    let two_point = generalized_cospectral_two_point(g, h);
    let complement = johnson_newman_criterion(g, h);
    assert_eq!(
        two_point, complement,
        "generalized cospectrality checks disagree for {g:?} and {h:?}"
    );
    two_point
}
