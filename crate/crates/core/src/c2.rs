//! Two-variable first-order logic with counting quantifiers over graphs.
//!
//! Formulas are immutable DAGs: subformulas are reference counted and the
//! walk-counting builders share them heavily, so a formula can stand for a
//! disjunction over far more decompositions than it has nodes. Evaluation
//! works bottom-up on the DAG, computing one `n x n` truth table per node.
//!
//! Text form (prefix, whitespace separated):
//!
//! ```text
//! formula := true | false
//!          | (edge V V) | (eq V V)
//!          | (not F) | (and F*) | (or F*)
//!          | (count>= V N F)
//!          | (exists V F) | (forall V F) | (exactly V N F)
//! V       := x | y
//! ```
//!
//! `exists`, `forall` and `exactly` are sugar for `(count>= V 1 F)`,
//! `(not (count>= V 1 (not F)))` and
//! `(and (count>= V N F) (not (count>= V N+1 F)))`; the printer uses them
//! whenever a subtree has that shape.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::Graph;

/// Default cap on the number of distinct nodes a builder may create, and on
/// the expanded size of a formula printed as text.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum C2Error {
    #[error("free variable {0} is not assigned")]
    UnassignedVariable(Var),
    #[error("variable {var} is assigned vertex {vertex}, graph has {n} vertices")]
    VertexOutOfRange { var: Var, vertex: usize, n: usize },
    #[error("formula exceeds the cap of {cap} nodes")]
    TooLarge { cap: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node {
    True,
    False,
    Edge(Var, Var),
    Equal(Var, Var),
    Not(C2Formula),
    And(Vec<C2Formula>),
    Or(Vec<C2Formula>),
    /// At least `d` vertices satisfy the body when bound to the variable.
    CountAtLeast(Var, u64, C2Formula),
}

/// Shared handle to a formula node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct C2Formula(Arc<Node>);

impl C2Formula {
    fn wrap(node: Node) -> Self {
        C2Formula(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn tt() -> Self {
        Self::wrap(Node::True)
    }

    pub fn ff() -> Self {
        Self::wrap(Node::False)
    }

    pub fn edge(a: Var, b: Var) -> Self {
        Self::wrap(Node::Edge(a, b))
    }

    pub fn equal(a: Var, b: Var) -> Self {
        Self::wrap(Node::Equal(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: C2Formula) -> Self {
        Self::wrap(Node::Not(f))
    }

    pub fn and(fs: Vec<C2Formula>) -> Self {
        Self::wrap(Node::And(fs))
    }

    pub fn or(fs: Vec<C2Formula>) -> Self {
        Self::wrap(Node::Or(fs))
    }

    pub fn count_at_least(v: Var, d: u64, f: C2Formula) -> Self {
        Self::wrap(Node::CountAtLeast(v, d, f))
    }

    pub fn exists(v: Var, f: C2Formula) -> Self {
        Self::count_at_least(v, 1, f)
    }

    pub fn forall(v: Var, f: C2Formula) -> Self {
        Self::not(Self::exists(v, Self::not(f)))
    }

    /// Exactly `d` vertices satisfy `f`.
    pub fn exactly(v: Var, d: u64, f: C2Formula) -> Self {
        Self::and(vec![
            Self::count_at_least(v, d, f.clone()),
            Self::not(Self::count_at_least(v, d + 1, f)),
        ])
    }

    pub fn is_false_const(&self) -> bool {
        matches!(self.node(), Node::False)
    }

    fn children(&self) -> &[C2Formula] {
        match self.node() {
            Node::Not(f) | Node::CountAtLeast(_, _, f) => std::slice::from_ref(f),
            Node::And(fs) | Node::Or(fs) => fs,
            _ => &[],
        }
    }

    /// Distinct nodes reachable from this one.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if seen.insert(f.key()) {
                stack.extend(f.children());
            }
        }
        seen.len()
    }

    /// Node count of the fully expanded tree, saturating at `u64::MAX`.
    pub fn tree_size(&self) -> u64 {
        fn go(f: &C2Formula, memo: &mut HashMap<usize, u64>) -> u64 {
            if let Some(&s) = memo.get(&f.key()) {
                return s;
            }
            let s = f
                .children()
                .iter()
                .fold(1u64, |acc, c| acc.saturating_add(go(c, memo)));
            memo.insert(f.key(), s);
            s
        }
        go(self, &mut HashMap::new())
    }

    /// Variables occurring anywhere in the formula, bound or free.
    pub fn variables(&self) -> Vec<Var> {
        let mut found = [false; 2];
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.key()) {
                continue;
            }
            match f.node() {
                Node::Edge(a, b) | Node::Equal(a, b) => {
                    found[*a as usize] = true;
                    found[*b as usize] = true;
                }
                Node::CountAtLeast(v, _, _) => found[*v as usize] = true,
                _ => {}
            }
            stack.extend(f.children());
        }
        [Var::X, Var::Y]
            .into_iter()
            .filter(|v| found[*v as usize])
            .collect()
    }

    /// Free variables as a two-bit mask (bit 0 = x, bit 1 = y).
    fn free_mask(&self, memo: &mut HashMap<usize, u8>) -> u8 {
        if let Some(&m) = memo.get(&self.key()) {
            return m;
        }
        let bit = |v: Var| 1u8 << (v as u8);
        let m = match self.node() {
            Node::True | Node::False => 0,
            Node::Edge(a, b) | Node::Equal(a, b) => bit(*a) | bit(*b),
            Node::Not(f) => f.free_mask(memo),
            Node::And(fs) | Node::Or(fs) => fs.iter().fold(0, |acc, f| acc | f.free_mask(memo)),
            Node::CountAtLeast(v, _, f) => f.free_mask(memo) & !bit(*v),
        };
        memo.insert(self.key(), m);
        m
    }

    pub fn free_variables(&self) -> Vec<Var> {
        let m = self.free_mask(&mut HashMap::new());
        [Var::X, Var::Y]
            .into_iter()
            .filter(|v| m & (1 << (*v as u8)) != 0)
            .collect()
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Text form; fails if the expanded tree exceeds `cap` nodes.
    pub fn to_text(&self, cap: usize) -> Result<String, C2Error> {
        if self.tree_size() > cap as u64 {
            return Err(C2Error::TooLarge { cap });
        }
        Ok(self.to_string())
    }
}

impl fmt::Debug for C2Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tree_size() <= 200 {
            write!(f, "{self}")
        } else {
            write!(f, "<formula with {} nodes>", self.dag_size())
        }
    }
}

/// Recognizes `(and (count>= v d f) (not (count>= v d+1 f)))`.
fn as_exactly(fs: &[C2Formula]) -> Option<(Var, u64, &C2Formula)> {
    let [lo, hi] = fs else { return None };
    let (Node::CountAtLeast(v, d, f), Node::Not(neg)) = (lo.node(), hi.node()) else {
        return None;
    };
    let Node::CountAtLeast(v2, d2, f2) = neg.node() else {
        return None;
    };
    (v == v2 && *d2 == d + 1 && f == f2).then_some((*v, *d, f))
}

impl fmt::Display for C2Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::True => write!(out, "true"),
            Node::False => write!(out, "false"),
            Node::Edge(a, b) => write!(out, "(edge {a} {b})"),
            Node::Equal(a, b) => write!(out, "(eq {a} {b})"),
            Node::Not(inner) => {
                if let Node::CountAtLeast(v, 1, body) = inner.node() {
                    if let Node::Not(f) = body.node() {
                        return write!(out, "(forall {v} {f})");
                    }
                }
                write!(out, "(not {inner})")
            }
            Node::And(fs) => {
                if let Some((v, d, f)) = as_exactly(fs) {
                    return write!(out, "(exactly {v} {d} {f})");
                }
                write!(out, "(and")?;
                for f in fs {
                    write!(out, " {f}")?;
                }
                write!(out, ")")
            }
            Node::Or(fs) => {
                write!(out, "(or")?;
                for f in fs {
                    write!(out, " {f}")?;
                }
                write!(out, ")")
            }
            Node::CountAtLeast(v, 1, f) => write!(out, "(exists {v} {f})"),
            Node::CountAtLeast(v, d, f) => write!(out, "(count>= {v} {d} {f})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, C2Error> {
        Err(C2Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn token(&mut self) -> Result<&'a str, C2Error> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.is_empty() {
            return self.err("unexpected end of input");
        }
        let len = if rest.starts_with(['(', ')']) {
            1
        } else {
            rest.find(|c: char| c.is_ascii_whitespace() || c == '(' || c == ')')
                .unwrap_or(rest.len())
        };
        self.pos += len;
        Ok(&rest[..len])
    }

    fn peek_close(&mut self) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(')')
    }

    fn expect_close(&mut self) -> Result<(), C2Error> {
        self.skip_ws();
        let start = self.pos;
        match self.token()? {
            ")" => Ok(()),
            t => {
                self.pos = start;
                self.err(format!("expected ')', found '{t}'"))
            }
        }
    }

    fn var(&mut self) -> Result<Var, C2Error> {
        self.skip_ws();
        let start = self.pos;
        match self.token()? {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            t => {
                self.pos = start;
                self.err(format!("expected variable x or y, found '{t}'"))
            }
        }
    }

    fn nat(&mut self) -> Result<u64, C2Error> {
        self.skip_ws();
        let start = self.pos;
        let t = self.token()?;
        t.parse().or_else(|_| {
            self.pos = start;
            self.err(format!("expected a natural number, found '{t}'"))
        })
    }

    fn formula(&mut self) -> Result<C2Formula, C2Error> {
        self.skip_ws();
        let start = self.pos;
        match self.token()? {
            "true" => return Ok(C2Formula::tt()),
            "false" => return Ok(C2Formula::ff()),
            "(" => {}
            t => {
                self.pos = start;
                return self.err(format!("unexpected token '{t}'"));
            }
        }
        self.skip_ws();
        let head_at = self.pos;
        let head = self.token()?;
        let f = match head {
            "edge" => C2Formula::edge(self.var()?, self.var()?),
            "eq" => C2Formula::equal(self.var()?, self.var()?),
            "not" => C2Formula::not(self.formula()?),
            "and" | "or" => {
                let mut fs = Vec::new();
                while !self.peek_close() {
                    fs.push(self.formula()?);
                }
                if head == "and" {
                    C2Formula::and(fs)
                } else {
                    C2Formula::or(fs)
                }
            }
            "count>=" => {
                let v = self.var()?;
                let d = self.nat()?;
                C2Formula::count_at_least(v, d, self.formula()?)
            }
            "exactly" => {
                let v = self.var()?;
                let d = self.nat()?;
                C2Formula::exactly(v, d, self.formula()?)
            }
            "exists" => {
                let v = self.var()?;
                C2Formula::exists(v, self.formula()?)
            }
            "forall" => {
                let v = self.var()?;
                C2Formula::forall(v, self.formula()?)
            }
            other => {
                self.pos = head_at;
                return self.err(format!("unknown connective '{other}'"));
            }
        };
        self.expect_close()?;
        Ok(f)
    }
}

impl FromStr for C2Formula {
    type Err = C2Error;

    fn from_str(s: &str) -> Result<Self, C2Error> {
        let mut p = Parser { src: s, pos: 0 };
        let f = p.formula()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(f)
    }
}

/// Vertices bound to the two variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Assignment {
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl Assignment {
    pub fn empty() -> Self {
        Assignment::default()
    }

    pub fn with(var: Var, vertex: usize) -> Self {
        let mut a = Assignment::default();
        match var {
            Var::X => a.x = Some(vertex),
            Var::Y => a.y = Some(vertex),
        }
        a
    }

    fn get(&self, var: Var) -> Option<usize> {
        match var {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }
}

/// Truth tables indexed by `x * n + y`.
struct Evaluator<'g> {
    g: &'g Graph,
    memo: HashMap<usize, Arc<[bool]>>,
}

impl Evaluator<'_> {
    fn table(&mut self, f: &C2Formula) -> Arc<[bool]> {
        if let Some(t) = self.memo.get(&f.key()) {
            return t.clone();
        }
        let n = self.g.order();
        let pick = |v: Var, x: usize, y: usize| if v == Var::X { x } else { y };
        let t: Arc<[bool]> = match f.node() {
            Node::True => vec![true; n * n].into(),
            Node::False => vec![false; n * n].into(),
            Node::Edge(a, b) => (0..n * n)
                .map(|i| {
                    let (x, y) = (i / n, i % n);
                    self.g.has_edge(pick(*a, x, y), pick(*b, x, y))
                })
                .collect(),
            Node::Equal(a, b) => (0..n * n)
                .map(|i| {
                    let (x, y) = (i / n, i % n);
                    pick(*a, x, y) == pick(*b, x, y)
                })
                .collect(),
            Node::Not(inner) => self.table(inner).iter().map(|b| !b).collect(),
            Node::And(fs) => {
                let mut acc = vec![true; n * n];
                for sub in fs {
                    let t = self.table(sub);
                    acc.iter_mut().zip(t.iter()).for_each(|(a, b)| *a &= b);
                }
                acc.into()
            }
            Node::Or(fs) => {
                let mut acc = vec![false; n * n];
                for sub in fs {
                    let t = self.table(sub);
                    acc.iter_mut().zip(t.iter()).for_each(|(a, b)| *a |= b);
                }
                acc.into()
            }
            Node::CountAtLeast(v, d, body) => {
                let t = self.table(body);
                let mut out = vec![false; n * n];
                match v {
                    Var::X => {
                        for y in 0..n {
                            let hits = (0..n).filter(|&x| t[x * n + y]).count() as u64;
                            for x in 0..n {
                                out[x * n + y] = hits >= *d;
                            }
                        }
                    }
                    Var::Y => {
                        for x in 0..n {
                            let hits = (0..n).filter(|&y| t[x * n + y]).count() as u64;
                            for y in 0..n {
                                out[x * n + y] = hits >= *d;
                            }
                        }
                    }
                }
                out.into()
            }
        };
        self.memo.insert(f.key(), t.clone());
        t
    }
}

/// Truth of `f` in `g` under `a`. Every free variable of `f` must be assigned.
pub fn eval_formula(g: &Graph, f: &C2Formula, a: Assignment) -> Result<bool, C2Error> {
    let n = g.order();
    for var in [Var::X, Var::Y] {
        if let Some(vertex) = a.get(var) {
            if vertex >= n {
                return Err(C2Error::VertexOutOfRange { var, vertex, n });
            }
        }
    }
    for var in f.free_variables() {
        if a.get(var).is_none() {
            return Err(C2Error::UnassignedVariable(var));
        }
    }
    let mut ev = Evaluator {
        g,
        memo: HashMap::new(),
    };
    let t = ev.table(f);
    Ok(t[a.x.unwrap_or(0) * n + a.y.unwrap_or(0)])
}

/// Multisets `{(value, multiplicity)}` with distinct values in
/// `0..=max_value`, multiplicities at least one, at most `max_parts` parts
/// counted with multiplicity, and `Σ value·multiplicity = q`. Parts are listed
/// by descending value; the list is sorted lexicographically.
pub fn count_decompositions(q: u64, max_value: u64, max_parts: u64) -> Vec<Vec<(u64, u64)>> {
    fn go(
        value: u64,
        remaining: u64,
        parts_left: u64,
        current: &mut Vec<(u64, u64)>,
        out: &mut Vec<Vec<(u64, u64)>>,
    ) {
        if value == 0 {
            if remaining == 0 {
                out.push(current.clone());
                for a in 1..=parts_left {
                    current.push((0, a));
                    out.push(current.clone());
                    current.pop();
                }
            }
            return;
        }
        go(value - 1, remaining, parts_left, current, out);
        let mut a = 1;
        while a <= parts_left && a * value <= remaining {
            current.push((value, a));
            go(value - 1, remaining - a * value, parts_left - a, current, out);
            current.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    go(max_value, q, max_parts, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Builds the walk-counting formulas `ψ` and `φ`, caching shared subformulas.
///
/// `ψ^q_r(v)` holds at a vertex with exactly `q` walks of length `r` starting
/// there; `φ^q_r` holds in a graph with exactly `q` walks of length `r`. Both
/// are correct on graphs whose maximum degree is at most `degree_bound`.
#[derive(Debug)]
pub struct C2Builder {
    degree_bound: u64,
    cap: usize,
    created: usize,
    psi_cache: HashMap<(u64, u32, Var), C2Formula>,
    tt: C2Formula,
    ff: C2Formula,
}

impl C2Builder {
    pub fn new(degree_bound: u64) -> Self {
        Self::with_cap(degree_bound, DEFAULT_NODE_CAP)
    }

    pub fn with_cap(degree_bound: u64, cap: usize) -> Self {
        C2Builder {
            degree_bound,
            cap,
            created: 0,
            psi_cache: HashMap::new(),
            tt: C2Formula::tt(),
            ff: C2Formula::ff(),
        }
    }

    /// Nodes created so far.
    pub fn nodes_created(&self) -> usize {
        self.created
    }

    fn charge(&mut self, nodes: usize) -> Result<(), C2Error> {
        self.created += nodes;
        if self.created > self.cap {
            Err(C2Error::TooLarge { cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// `degree_bound^r`, the largest possible per-vertex walk count.
    fn max_walks(&self, r: u32) -> u64 {
        self.degree_bound.checked_pow(r).unwrap_or(u64::MAX)
    }

    fn exactly(&mut self, v: Var, d: u64, f: C2Formula) -> Result<C2Formula, C2Error> {
        self.charge(4)?;
        Ok(C2Formula::exactly(v, d, f))
    }

    /// `ψ^q_r` with free variable `var`.
    pub fn psi(&mut self, q: u64, r: u32, var: Var) -> Result<C2Formula, C2Error> {
        if let Some(f) = self.psi_cache.get(&(q, r, var)) {
            return Ok(f.clone());
        }
        let other = var.other();
        let f = if r == 0 {
            if q == 1 {
                self.tt.clone()
            } else {
                self.ff.clone()
            }
        } else if q > self.max_walks(r) {
            self.ff.clone()
        } else if q == 0 {
            // no neighbor, or every neighbor has no walks of length r-1
            let body = if r == 1 {
                C2Formula::not(C2Formula::edge(var, other))
            } else {
                let inner = self.psi(0, r - 1, other)?;
                C2Formula::or(vec![C2Formula::not(C2Formula::edge(var, other)), inner])
            };
            self.charge(5)?;
            C2Formula::forall(other, body)
        } else if r == 1 {
            self.exactly(other, q, C2Formula::edge(var, other))?
        } else {
            // Neighbors of `var` with q_i walks of length r-1 number exactly a_i,
            // and the a_i add up to the degree.
            let bound = self.max_walks(r - 1).min(q);
            let mut disjuncts = Vec::new();
            for parts in count_decompositions(q, bound, self.degree_bound) {
                self.charge(parts.len() + 2)?;
                let mut conj = Vec::with_capacity(parts.len() + 1);
                let mut degree = 0;
                let mut impossible = false;
                for &(value, mult) in &parts {
                    let sub = self.psi(value, r - 1, other)?;
                    if sub.is_false_const() {
                        impossible = true;
                        break;
                    }
                    let guarded = C2Formula::and(vec![C2Formula::edge(var, other), sub]);
                    conj.push(self.exactly(other, mult, guarded)?);
                    degree += mult;
                }
                if impossible {
                    continue;
                }
                conj.push(self.exactly(other, degree, C2Formula::edge(var, other))?);
                disjuncts.push(C2Formula::and(conj));
            }
            if disjuncts.is_empty() {
                self.ff.clone()
            } else {
                C2Formula::or(disjuncts)
            }
        };
        self.psi_cache.insert((q, r, var), f.clone());
        Ok(f)
    }

    /// `φ^q_r`: exactly `q` walks of length `r` in total.
    ///
    /// Equivalent to the disjunction, over decompositions of `q` into positive
    /// per-vertex counts `v` with multiplicities `a_v`, of
    /// `⋀_v ∃^{=a_v} x ψ^v_r(x)` with every positive count accounted for.
    /// The disjunction is built factored: `F(v, s)` fixes how many vertices
    /// have exactly `v` walks and leaves `s` walks to larger counts. When `q`
    /// is below `degree_bound^r`, a conjunct `∀x ⋁_{v ≤ q} ψ^v_r(x)` rules
    /// out vertices with more than `q` walks.
    pub fn phi(&mut self, q: u64, r: u32) -> Result<C2Formula, C2Error> {
        if q == 0 {
            self.charge(4)?;
            let none = self.psi(0, r, Var::X)?;
            return Ok(C2Formula::forall(Var::X, none));
        }
        let max_value = self.max_walks(r).min(q);
        let mut memo: HashMap<(u64, u64), C2Formula> = HashMap::new();
        let counted = self.phi_tail(1, q, r, max_value, &mut memo)?;
        if max_value == self.max_walks(r) || counted.is_false_const() {
            return Ok(counted);
        }
        // vertices with more than q walks are not seen by the counting part
        let mut bounded = Vec::new();
        for value in 0..=q {
            let psi = self.psi(value, r, Var::X)?;
            if !psi.is_false_const() {
                bounded.push(psi);
            }
        }
        self.charge(bounded.len() + 5)?;
        Ok(C2Formula::and(vec![
            counted,
            C2Formula::forall(Var::X, C2Formula::or(bounded)),
        ]))
    }

    fn phi_tail(
        &mut self,
        value: u64,
        rest: u64,
        r: u32,
        max_value: u64,
        memo: &mut HashMap<(u64, u64), C2Formula>,
    ) -> Result<C2Formula, C2Error> {
        if let Some(f) = memo.get(&(value, rest)) {
            return Ok(f.clone());
        }
        let f = if value > max_value {
            if rest == 0 {
                self.tt.clone()
            } else {
                self.ff.clone()
            }
        } else {
            let psi = self.psi(value, r, Var::X)?;
            if psi.is_false_const() {
                self.phi_tail(value + 1, rest, r, max_value, memo)?
            } else {
                let mut options = Vec::new();
                for mult in 0..=rest / value {
                    let tail = self.phi_tail(value + 1, rest - mult * value, r, max_value, memo)?;
                    if tail.is_false_const() {
                        continue;
                    }
                    let count = self.exactly(Var::X, mult, psi.clone())?;
                    self.charge(1)?;
                    options.push(C2Formula::and(vec![count, tail]));
                }
                self.charge(1)?;
                if options.is_empty() {
                    self.ff.clone()
                } else {
                    C2Formula::or(options)
                }
            }
        };
        memo.insert((value, rest), f.clone());
        Ok(f)
    }
}

/// `ψ^q_r(x)` for graphs of maximum degree at most `degree_bound`.
pub fn build_psi(q: u64, r: u32, degree_bound: u64) -> Result<C2Formula, C2Error> {
    C2Builder::new(degree_bound).psi(q, r, Var::X)
}

/// `φ^q_r` for graphs of maximum degree at most `degree_bound`.
pub fn build_phi(q: u64, r: u32, degree_bound: u64) -> Result<C2Formula, C2Error> {
    C2Builder::new(degree_bound).phi(q, r)
}
