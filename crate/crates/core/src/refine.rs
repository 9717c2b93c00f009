//! Color refinement (iterated degree sequences) and the equivalences it
//! decides: C²-equivalence, fractional isomorphism, and matching of
//! walk-matrix rows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::RatMatrix;
use crate::graph::{Graph, Permutation};
use crate::walk::{adjacency_matrix, walk_matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error("graphs have different orders ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
}

fn require_same_order(g: &Graph, h: &Graph) -> Result<usize, RefineError> {
    if g.order() == h.order() {
        Ok(g.order())
    } else {
        Err(RefineError::SizeMismatch {
            left: g.order(),
            right: h.order(),
        })
    }
}

/// Stable coloring produced by color refinement.
///
/// Class ids are dense, ordered canonically by refinement history. A class
/// signature lists the class id the vertex held after every round, starting
/// with its degree; signatures from one refinement run are comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Vertex to class id.
    pub classes: Vec<usize>,
    /// Class id to signature.
    pub signatures: Vec<String>,
    /// Class id to number of vertices.
    pub class_sizes: Vec<usize>,
    /// Refinement rounds run after the degree coloring.
    pub rounds: usize,
}

impl Coloring {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Vertices of each class, in class-id order.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.class_count()];
        for (v, &c) in self.classes.iter().enumerate() {
            cells[c].push(v);
        }
        cells
    }
}

/// Replaces each color by (old color, sorted multiset of neighbor colors)
/// and renumbers the distinct keys in sorted order.
pub fn refine_step(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let keys: Vec<(usize, Vec<usize>)> = (0..g.order())
        .map(|v| {
            let mut around: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
            around.sort_unstable();
            (colors[v], around)
        })
        .collect();
    renumber(&keys)
}

fn renumber<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present"))
        .collect()
}

fn class_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// True iff vertices sharing a class have equally many neighbors in every class.
pub fn is_stable(g: &Graph, classes: &[usize]) -> bool {
    class_count(&refine_step(g, classes)) == class_count(classes)
}

pub fn color_refine(g: &Graph) -> Coloring {
    let degrees = g.degrees();
    let mut colors = renumber(&degrees);
    let mut history: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    let mut rounds = 0;
    loop {
        let next = refine_step(g, &colors);
        rounds += 1;
        let stable = class_count(&next) == class_count(&colors);
        for (h, c) in history.iter_mut().zip(&next) {
            h.push('.');
            h.push_str(&c.to_string());
        }
        colors = next;
        if stable {
            break;
        }
    }
    let k = class_count(&colors);
    let mut signatures = vec![String::new(); k];
    let mut class_sizes = vec![0; k];
    for (v, &c) in colors.iter().enumerate() {
        class_sizes[c] += 1;
        if signatures[c].is_empty() {
            signatures[c] = std::mem::take(&mut history[v]);
        }
    }
    Coloring {
        classes: colors,
        signatures,
        class_sizes,
        rounds,
    }
}

/// Refinement of `g ⊔ h`, giving both graphs a common set of classes.
#[derive(Debug, Clone)]
pub struct JointColoring {
    pub coloring: Coloring,
    left_order: usize,
}

impl JointColoring {
    pub fn new(g: &Graph, h: &Graph) -> Self {
        JointColoring {
            coloring: color_refine(&g.disjoint_union(h)),
            left_order: g.order(),
        }
    }

    pub fn left_class(&self, v: usize) -> usize {
        self.coloring.classes[v]
    }

    pub fn right_class(&self, v: usize) -> usize {
        self.coloring.classes[self.left_order + v]
    }

    /// Per-class vertex counts of the left and right graph.
    pub fn class_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let k = self.coloring.class_count();
        let mut left = vec![0; k];
        let mut right = vec![0; k];
        for (v, &c) in self.coloring.classes.iter().enumerate() {
            if v < self.left_order {
                left[c] += 1;
            } else {
                right[c] += 1;
            }
        }
        (left, right)
    }

    /// Every class holds as many left vertices as right vertices.
    pub fn balanced(&self) -> bool {
        let (left, right) = self.class_counts();
        left == right
    }
}

/// Same iterated degree sequence; by Immerman-Lander this is exactly
/// C²-equivalence, and it is the crate's C² decision.
pub fn same_iterated_degree_sequence(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && JointColoring::new(g, h).balanced()
}

/// Doubly stochastic `S` with `S·A_g = A_h·S`, or `None` when the iterated
/// degree sequences differ.
///
/// Rows of `S` are indexed by vertices of `h` and columns by vertices of `g`;
/// `S[v][u] = 1/m` when `u` and `v` share a joint class holding `m` vertices
/// of each graph.
pub fn fractional_iso_witness(g: &Graph, h: &Graph) -> Result<Option<RatMatrix>, RefineError> {
    let n = require_same_order(g, h)?;
    let joint = JointColoring::new(g, h);
    if !joint.balanced() {
        return Ok(None);
    }
    let (sizes, _) = joint.class_counts();
    let s = RatMatrix::from_fn(n, n, |v, u| {
        let c = joint.right_class(v);
        if c == joint.left_class(u) {
            BigRational::new(1.into(), BigInt::from(sizes[c]))
        } else {
            BigRational::from_integer(0.into())
        }
    });
    Ok(Some(s))
}

/// `S` is doubly stochastic and `S·A_g = A_h·S` holds exactly.
pub fn verify_fractional_witness(g: &Graph, h: &Graph, s: &RatMatrix) -> bool {
    if g.order() != h.order() || s.rows() != g.order() || !s.is_doubly_stochastic() {
        return false;
    }
    let a = RatMatrix::from(&adjacency_matrix(g));
    let b = RatMatrix::from(&adjacency_matrix(h));
    (s * &a) == (&b * s)
}

/// A permutation `p` with row `p(i)` of `W_h` equal to row `i` of `W_g`, if
/// the two walk matrices have the same multiset of rows. Equal rows are
/// paired in ascending index order.
pub fn walk_row_permutation(g: &Graph, h: &Graph) -> Result<Option<Permutation>, RefineError> {
    require_same_order(g, h)?;
    let wg = walk_matrix(g);
    let wh = walk_matrix(h);
    Ok(match_rows(
        (0..wg.rows()).map(|i| wg.row(i)),
        (0..wh.rows()).map(|i| wh.row(i)),
    ))
}

/// Pairs equal rows of two equally sized row lists; ties go to the smallest
/// unused index. `None` if the row multisets differ.
pub(crate) fn match_rows<'a, T, I, J>(left: I, right: J) -> Option<Permutation>
where
    T: Ord + 'a,
    I: Iterator<Item = &'a [T]>,
    J: Iterator<Item = &'a [T]>,
{
    let mut pool: BTreeMap<&[T], Vec<usize>> = BTreeMap::new();
    let mut right_len = 0;
    for (i, row) in right.enumerate() {
        pool.entry(row).or_default().push(i);
        right_len += 1;
    }
    for indices in pool.values_mut() {
        indices.reverse();
    }
    let mut image = Vec::with_capacity(right_len);
    for row in left {
        image.push(pool.get_mut(row)?.pop()?);
    }
    if image.len() != right_len {
        return None;
    }
    Some(Permutation::new(image).expect("matching is a bijection"))
}
