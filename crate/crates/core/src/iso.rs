//! Isomorphism decisions for controllable graphs.
//!
//! Two controllable graphs are isomorphic exactly when their extended walk
//! matrices agree up to a permutation of rows; since the rows of an
//! invertible walk matrix are distinct, that permutation is unique and is the
//! isomorphism. Graphs that are not controllable fall back to exhaustive
//! search at small orders and are reported as inconclusive otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{IntMatrix, RatMatrix};
use crate::graph::{Graph, Permutation};
use crate::refine::{match_rows, same_iterated_degree_sequence};
use crate::walk::{adjacency_matrix, extended_walk_matrix, graph_char_poly, walk_matrix, WalkData};

/// Largest order accepted by [`brute_force_iso`].
pub const BRUTE_FORCE_CAP: usize = 10;

/// Default order up to which [`decide_isomorphism`] falls back to search.
pub const DEFAULT_BRUTEFORCE_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("exhaustive search supports at most {cap} vertices, got {n}")]
    SizeOverCap { n: usize, cap: usize },
    #[error("graphs have different orders ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("walk-row matching produced a permutation that is not an isomorphism\n{0}")]
    CertificateRejected(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Isomorphic,
    NonIsomorphic,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Isomorphic => "Isomorphic",
            VerdictKind::NonIsomorphic => "NonIsomorphic",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }
}

/// Why a verdict was reached. Non-isomorphic reasons name the invariant
/// that differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    SizeMismatch,
    RefinementDiffers,
    SpectrumDiffers,
    ComplementSpectrumDiffers,
    ControllabilityDiffers,
    WalkrowsDiffer,
    WalkrowsMatchVerified,
    Bruteforce,
    NotControllable,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::SizeMismatch => "size-mismatch",
            Reason::RefinementDiffers => "refinement-differs",
            Reason::SpectrumDiffers => "spectrum-differs",
            Reason::ComplementSpectrumDiffers => "complement-spectrum-differs",
            Reason::ControllabilityDiffers => "controllability-differs",
            Reason::WalkrowsDiffer => "walkrows-differ",
            Reason::WalkrowsMatchVerified => "walkrows-match-verified",
            Reason::Bruteforce => "bruteforce",
            Reason::NotControllable => "not-controllable",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub kind: VerdictKind,
    /// Present iff `kind` is `Isomorphic`; maps vertex `i` of the first graph
    /// to vertex `p(i)` of the second.
    pub certificate: Option<Permutation>,
    pub reason: Reason,
}

impl IsoVerdict {
    fn non_isomorphic(reason: Reason) -> Self {
        IsoVerdict {
            kind: VerdictKind::NonIsomorphic,
            certificate: None,
            reason,
        }
    }

    fn isomorphic(certificate: Permutation, reason: Reason) -> Self {
        IsoVerdict {
            kind: VerdictKind::Isomorphic,
            certificate: Some(certificate),
            reason,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        self.kind == VerdictKind::Isomorphic
    }
}

fn require_same_order(g: &Graph, h: &Graph) -> Result<usize, IsoError> {
    if g.order() == h.order() {
        Ok(g.order())
    } else {
        Err(IsoError::SizeMismatch {
            left: g.order(),
            right: h.order(),
        })
    }
}

/// Screens, in order: order, color refinement, spectra of the graphs and of
/// their complements, controllability. Two controllable graphs are then
/// decided by matching rows of their extended walk matrices; two
/// non-controllable graphs by exhaustive search up to `bruteforce_max`
/// vertices, and are inconclusive beyond that.
pub fn decide_isomorphism(g: &Graph, h: &Graph, bruteforce_max: usize) -> Result<IsoVerdict, IsoError> {
    if g.order() != h.order() {
        return Ok(IsoVerdict::non_isomorphic(Reason::SizeMismatch));
    }
    if !same_iterated_degree_sequence(g, h) {
        return Ok(IsoVerdict::non_isomorphic(Reason::RefinementDiffers));
    }
    if graph_char_poly(g) != graph_char_poly(h) {
        return Ok(IsoVerdict::non_isomorphic(Reason::SpectrumDiffers));
    }
    if graph_char_poly(&g.complement()) != graph_char_poly(&h.complement()) {
        return Ok(IsoVerdict::non_isomorphic(Reason::ComplementSpectrumDiffers));
    }
    let wg = WalkData::new(g);
    let wh = WalkData::new(h);
    if wg.controllable != wh.controllable {
        return Ok(IsoVerdict::non_isomorphic(Reason::ControllabilityDiffers));
    }
    if wg.controllable {
        let ext_g = &wg.extended;
        let ext_h = &wh.extended;
        let Some(p) = match_rows(
            (0..ext_g.rows()).map(|i| ext_g.row(i)),
            (0..ext_h.rows()).map(|i| ext_h.row(i)),
        ) else {
            return Ok(IsoVerdict::non_isomorphic(Reason::WalkrowsDiffer));
        };
        let image = g.apply_permutation(&p).expect("same order");
        if &image != h {
            return Err(IsoError::CertificateRejected(format!(
                "g = {g:?}\nh = {h:?}\npermutation = {:?}\nextended walk matrix of g = {ext_g:?}\nextended walk matrix of h = {ext_h:?}",
                p.image()
            )));
        }
        return Ok(IsoVerdict::isomorphic(p, Reason::WalkrowsMatchVerified));
    }
    if g.order() <= bruteforce_max.min(BRUTE_FORCE_CAP) {
        return Ok(match brute_force_iso(g, h)? {
            Some(p) => IsoVerdict::isomorphic(p, Reason::Bruteforce),
            None => IsoVerdict::non_isomorphic(Reason::Bruteforce),
        });
    }
    Ok(IsoVerdict {
        kind: VerdictKind::Inconclusive,
        certificate: None,
        reason: Reason::NotControllable,
    })
}

/// Depth-first search for isomorphisms `g -> h`, assigning the vertices of
/// `g` in order and trying images in ascending order. `visit` is called on
/// each complete map and returns `true` to stop.
fn search_isomorphisms(g: &Graph, h: &Graph, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return;
    }

    struct State<'a> {
        g: &'a Graph,
        h: &'a Graph,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    fn extend(s: &mut State<'_>, i: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = s.g.order();
        if i == n {
            return visit(&s.map);
        }
        for j in 0..n {
            if s.used[j] || s.g.degree(i) != s.h.degree(j) {
                continue;
            }
            if (0..i).any(|k| s.g.has_edge(i, k) != s.h.has_edge(j, s.map[k])) {
                continue;
            }
            s.map[i] = j;
            s.used[j] = true;
            let stop = extend(s, i + 1, visit);
            s.used[j] = false;
            if stop {
                return true;
            }
        }
        false
    }

    let mut state = State {
        g,
        h,
        map: vec![0; n],
        used: vec![false; n],
    };
    extend(&mut state, 0, &mut visit);
}

fn check_cap(n: usize) -> Result<(), IsoError> {
    if n > BRUTE_FORCE_CAP {
        Err(IsoError::SizeOverCap {
            n,
            cap: BRUTE_FORCE_CAP,
        })
    } else {
        Ok(())
    }
}

/// Lexicographically least `p` with `g.apply_permutation(p) == h`, by
/// exhaustive search with degree pruning.
pub fn brute_force_iso(g: &Graph, h: &Graph) -> Result<Option<Permutation>, IsoError> {
    require_same_order(g, h)?;
    check_cap(g.order())?;
    let mut found = None;
    search_isomorphisms(g, h, |map| {
        found = Some(map.to_vec());
        true
    });
    Ok(found.map(|image| Permutation::new(image).expect("search yields bijections")))
}

/// The identity is the only automorphism.
pub fn has_trivial_automorphism_group(g: &Graph) -> Result<bool, IsoError> {
    check_cap(g.order())?;
    let mut nontrivial = false;
    search_isomorphisms(g, g, |map| {
        nontrivial = map.iter().enumerate().any(|(i, &x)| i != x);
        nontrivial
    });
    Ok(!nontrivial)
}

/// `Q = W_h·W_g⁻¹` for two controllable, generalized cospectral graphs.
///
/// Such a `Q` satisfies `Q·1 = 1` and `Q·A_g·Qᵀ = A_h`; both identities are
/// checked exactly before returning. `None` when a precondition fails.
pub fn quotient_transform(g: &Graph, h: &Graph) -> Option<RatMatrix> {
    if g.order() != h.order() {
        return None;
    }
    let wg = walk_matrix(g);
    let (adj, det) = wg.inverse_scaled().expect("square")?;
    let wh = walk_matrix(h);
    if wh.rank() != h.order() || !crate::walk::are_generalized_cospectral(g, h) {
        return None;
    }
    let product = &wh * &adj;
    let n = g.order();
    let q = RatMatrix::from_fn(n, n, |i, j| BigRational::new(product.get(i, j).clone(), det.clone()));

    let ones = vec![BigRational::one(); n];
    assert!(q.mul_vec(&ones) == ones, "Q·1 != 1 for {g:?} and {h:?}");
    let a = RatMatrix::from(&adjacency_matrix(g));
    let b = RatMatrix::from(&adjacency_matrix(h));
    assert!((&(&q * &a) * &q.transpose()) == b, "Q·A·Qᵀ != B for {g:?} and {h:?}");
    Some(q)
}

/// An orthogonal `Q` with `Q·u = v`, column by column, if `uᵀu = vᵀv`.
///
/// Built from reflections `R_w(x) = x - 2(wᵀx / wᵀw)·w` with `w = Q·u_i - v_i`.
/// Gram equality makes `w` orthogonal to every column already aligned, so
/// each reflection keeps earlier columns in place. All arithmetic is exact.
pub fn orthogonal_aligner(u: &RatMatrix, v: &RatMatrix) -> Result<Option<RatMatrix>, IsoError> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(IsoError::ShapeMismatch {
            left: (u.rows(), u.cols()),
            right: (v.rows(), v.cols()),
        });
    }
    if u.gram() != v.gram() {
        return Ok(None);
    }
    let n = u.rows();
    let mut q = RatMatrix::identity(n);
    for col in 0..u.cols() {
        let image = q.mul_vec(&u.column(col));
        let target = v.column(col);
        let w: Vec<BigRational> = image.iter().zip(&target).map(|(a, b)| a - b).collect();
        let ww: BigRational = w.iter().map(|x| x * x).sum();
        if ww.is_zero() {
            continue;
        }
        // q <- q - (2/wᵀw)·w·(wᵀq)
        let scale = BigRational::from_integer(BigInt::from(2)) / ww;
        let wq: Vec<BigRational> = (0..n)
            .map(|j| (0..n).map(|i| &w[i] * q.get(i, j)).sum())
            .collect();
        for i in 0..n {
            if w[i].is_zero() {
                continue;
            }
            let wi = &scale * &w[i];
            for (j, wqj) in wq.iter().enumerate() {
                let updated = q.get(i, j) - &wi * wqj;
                q.set(i, j, updated);
            }
        }
    }
    Ok(Some(q))
}

/// `Ŵ_gᵀŴ_g = Ŵ_hᵀŴ_h` for the extended walk matrices.
pub fn gram_screen(g: &Graph, h: &Graph) -> Result<bool, IsoError> {
    require_same_order(g, h)?;
    Ok(extended_walk_matrix(g).gram() == extended_walk_matrix(h).gram())
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and
/// `-c_0, ..., -c_{n-1}` in the last column, so that `A·W = W·C` for a
/// graph's characteristic polynomial.
pub fn companion_matrix(poly: &crate::algebra::IntPoly) -> IntMatrix {
    let n = poly.degree().unwrap_or(0);
    IntMatrix::from_fn(n, n, |i, j| {
        if j + 1 == n {
            -poly.coeff(i)
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}
