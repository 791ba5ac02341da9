//! Unordered rooted trees in canonical form, forests, and tree surgery.
//!
//! A [`Tree`] is stored with its children sorted by the plain lexicographic
//! order of their bracket encodings, so two trees are isomorphic exactly when
//! their encodings are equal. Vertices are addressed by their preorder
//! position in the canonical form (root = 0).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// A rooted tree in canonical form.
#[derive(Clone)]
pub struct Tree {
    children: Vec<Tree>,
    size: usize,
    encoding: String,
}

/// A rooted tree with arbitrary child order, as read from input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawTree {
    pub children: Vec<RawTree>,
}

/// Preorder address of a vertex in a canonical tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIndex(pub usize);

impl From<usize> for VertexIndex {
    fn from(index: usize) -> Self {
        VertexIndex(index)
    }
}

impl Tree {
    /// The one-vertex tree `e`.
    pub fn leaf() -> Tree {
        Tree::from_children(Vec::new())
    }

    /// Builds the tree whose root has the given children (in any order).
    pub fn from_children(mut children: Vec<Tree>) -> Tree {
        children.sort();
        let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
        let mut encoding = String::with_capacity(2 * size);
        encoding.push('[');
        for child in &children {
            encoding.push_str(&child.encoding);
        }
        encoding.push(']');
        Tree {
            children,
            size,
            encoding,
        }
    }

    /// The chain (ladder) with `n` vertices. `n` must be positive.
    pub fn chain(n: usize) -> Tree {
        assert!(n >= 1, "a tree has at least one vertex");
        let mut t = Tree::leaf();
        for _ in 1..n {
            t = Tree::from_children(vec![t]);
        }
        t
    }

    /// A root with `k` leaf children.
    pub fn corolla(k: usize) -> Tree {
        Tree::from_children(vec![Tree::leaf(); k])
    }

    pub fn parse(text: &str) -> Result<Tree> {
        Ok(canonicalize(&RawTree::parse(text)?))
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Grading degree in the Grossman-Larson algebra: vertex count minus one.
    pub fn degree(&self) -> usize {
        self.size - 1
    }

    pub fn encoding(&self) -> &str {
        &self.encoding
    }

    /// Number of children of the root.
    pub fn fertility(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            children: self.children.iter().map(Tree::to_raw).collect(),
        }
    }

    /// Parent of each vertex, in preorder.
    pub fn parents(&self) -> Vec<Option<usize>> {
        fn walk(t: &Tree, idx: usize, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
            out[idx] = parent;
            let mut next = idx + 1;
            for c in &t.children {
                walk(c, next, Some(idx), out);
                next += c.size;
            }
        }
        let mut out = vec![None; self.size];
        walk(self, 0, None, &mut out);
        out
    }

    /// The subtree hanging from vertex `v` (the vertex itself as root).
    pub fn subtree(&self, v: VertexIndex) -> Result<&Tree> {
        self.check_index(v)?;
        let mut node = self;
        let mut idx = 0;
        'descend: while idx != v.0 {
            let mut next = idx + 1;
            for c in &node.children {
                if v.0 < next + c.size {
                    node = c;
                    idx = next;
                    continue 'descend;
                }
                next += c.size;
            }
            unreachable!("index checked against size");
        }
        Ok(node)
    }

    fn check_index(&self, v: VertexIndex) -> Result<()> {
        if v.0 < self.size {
            Ok(())
        } else {
            Err(Error::Index {
                index: v.0,
                size: self.size,
            })
        }
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.encoding == other.encoding
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.encoding.hash(state);
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encoding.cmp(&other.encoding)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.encoding)
    }
}

impl std::str::FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tree::parse(s)
    }
}

impl RawTree {
    /// Parses `Tree := "[" Tree* "]"`. Positions in errors are byte offsets.
    pub fn parse(text: &str) -> Result<RawTree> {
        let mut stack: Vec<Vec<RawTree>> = Vec::new();
        let mut done: Option<RawTree> = None;
        for (i, ch) in text.char_indices() {
            if done.is_some() {
                return Err(Error::parse(i, "trailing input after tree"));
            }
            match ch {
                '[' => stack.push(Vec::new()),
                ']' => {
                    let children = stack
                        .pop()
                        .ok_or_else(|| Error::parse(i, "unmatched ']'"))?;
                    let node = RawTree { children };
                    match stack.last_mut() {
                        Some(parent) => parent.push(node),
                        None => done = Some(node),
                    }
                }
                other => return Err(Error::parse(i, format!("unexpected character {other:?}"))),
            }
        }
        done.ok_or_else(|| {
            let message = if stack.is_empty() {
                "empty input"
            } else {
                "unbalanced brackets, expected ']'"
            };
            Error::parse(text.len(), message)
        })
    }
}

/// Canonical form of a tree given with arbitrary child order.
pub fn canonicalize(raw: &RawTree) -> Tree {
    Tree::from_children(raw.children.iter().map(canonicalize).collect())
}

/// A multiset of trees, kept as a sorted sequence. The empty forest is the
/// unit monomial of the Connes-Kreimer algebra.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn empty() -> Forest {
        Forest::default()
    }

    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort();
        Forest { trees }
    }

    pub fn single(t: Tree) -> Forest {
        Forest { trees: vec![t] }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    /// Total number of vertices.
    pub fn weight(&self) -> usize {
        self.trees.iter().map(Tree::size).sum()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Multiset union, i.e. the product of monomials.
    pub fn union(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.trees.iter().peekable(), other.trees.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        trees.push(a.next().unwrap().clone());
                    } else {
                        trees.push(b.next().unwrap().clone());
                    }
                }
                (Some(_), None) => trees.push(a.next().unwrap().clone()),
                (None, Some(_)) => trees.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        Forest { trees }
    }

    /// Trees joined by single spaces; the empty forest is `"1"`.
    pub fn encoding(&self) -> String {
        if self.trees.is_empty() {
            return "1".to_string();
        }
        self.trees
            .iter()
            .map(Tree::encoding)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str) -> Result<Forest> {
        if text == "1" {
            return Ok(Forest::empty());
        }
        if text.is_empty() {
            return Err(Error::parse(0, "empty input"));
        }
        let mut trees = Vec::new();
        let mut offset = 0;
        for token in text.split(' ') {
            if token.is_empty() {
                return Err(Error::parse(
                    offset,
                    "expected a tree (trees are separated by single spaces)",
                ));
            }
            let t = Tree::parse(token).map_err(|e| match e {
                Error::Parse { position, message } => Error::parse(offset + position, message),
                other => other,
            })?;
            trees.push(t);
            offset += token.len() + 1;
        }
        Ok(Forest::new(trees))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({})", self.encoding())
    }
}

impl FromIterator<Tree> for Forest {
    fn from_iter<I: IntoIterator<Item = Tree>>(iter: I) -> Self {
        Forest::new(iter.into_iter().collect())
    }
}

/// Removes the root: the forest of the root's child subtrees.
pub fn b_minus(t: &Tree) -> Forest {
    Forest::new(t.children.clone())
}

/// Joins the trees of a forest under a new root.
pub fn b_plus(f: &Forest) -> Tree {
    Tree::from_children(f.trees.clone())
}

/// Rebuilds `t` (whose root sits at preorder index `idx`), dropping the
/// subtrees at vertices for which `removed` holds and appending the trees
/// produced by `extra` as new children of each visited vertex.
pub(crate) fn rebuild<R, X>(t: &Tree, idx: usize, removed: &R, extra: &X) -> Tree
where
    R: Fn(usize) -> bool,
    X: Fn(usize, &mut Vec<Tree>),
{
    let mut children = Vec::with_capacity(t.children.len() + 1);
    let mut next = idx + 1;
    for c in &t.children {
        if !removed(next) {
            children.push(rebuild(c, next, removed, extra));
        }
        next += c.size;
    }
    extra(idx, &mut children);
    Tree::from_children(children)
}

/// Attaches `scion` as a new child of vertex `v` of `host`.
pub fn graft(host: &Tree, v: VertexIndex, scion: &Tree) -> Result<Tree> {
    host.check_index(v)?;
    Ok(rebuild(
        host,
        0,
        &|_| false,
        &|idx, children: &mut Vec<Tree>| {
            if idx == v.0 {
                children.push(scion.clone());
            }
        },
    ))
}

/// Attaches each scion in `attachments[v]` as a child of vertex `v`.
pub(crate) fn graft_all(host: &Tree, attachments: &[Vec<Tree>]) -> Tree {
    debug_assert_eq!(attachments.len(), host.size);
    rebuild(host, 0, &|_| false, &|idx, children: &mut Vec<Tree>| {
        children.extend(attachments[idx].iter().cloned());
    })
}

/// An admissible cut: the severed edges (named by their child vertex), the
/// cut branches `P^c` and the trunk `R^c` that keeps the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub edges: Vec<usize>,
    pub branch: Forest,
    pub trunk: Tree,
}

impl Cut {
    /// Number of elementary cuts.
    pub fn order(&self) -> usize {
        self.edges.len()
    }
}

// Antichains among the strict descendants of the vertex at `idx`,
// including the empty one. Each antichain comes out in increasing order.
fn antichains_below(t: &Tree, idx: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    let mut next = idx + 1;
    for c in &t.children {
        let mut options = antichains_below(c, next);
        options.push(vec![next]);
        acc = acc
            .iter()
            .flat_map(|a| {
                options.iter().map(move |o| {
                    let mut v = a.clone();
                    v.extend_from_slice(o);
                    v
                })
            })
            .collect();
        next += c.size;
    }
    acc
}

/// All admissible cuts with at least one elementary cut, ordered by edge set.
pub fn admissible_cuts(t: &Tree) -> Vec<Cut> {
    let mut sets: Vec<Vec<usize>> = antichains_below(t, 0)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    sets.sort();
    sets.into_iter()
        .map(|edges| {
            let branch = edges
                .iter()
                .map(|&v| {
                    t.subtree(VertexIndex(v))
                        .expect("cut vertex in range")
                        .clone()
                })
                .collect();
            let trunk = rebuild(
                t,
                0,
                &|v| edges.binary_search(&v).is_ok(),
                &|_, _: &mut Vec<Tree>| {},
            );
            Cut {
                edges,
                branch,
                trunk,
            }
        })
        .collect()
}

/// The trees obtained by attaching one new leaf at each vertex, one per
/// vertex, sorted. Isomorphic results appear with multiplicity.
pub fn natural_growth_terms(t: &Tree) -> Vec<Tree> {
    let leaf = Tree::leaf();
    let mut out: Vec<Tree> = (0..t.size)
        .map(|v| graft(t, VertexIndex(v), &leaf).expect("index in range"))
        .collect();
    out.sort();
    out
}

/// Order of the automorphism group of `t`: the product over each group of
/// `m` identical sibling subtrees `s` of `m!·σ(s)^m`.
pub fn symmetry_factor(t: &Tree) -> u128 {
    let mut out = 1u128;
    let children = t.children();
    let mut i = 0;
    while i < children.len() {
        let mut j = i;
        while j < children.len() && children[j] == children[i] {
            j += 1;
        }
        let sigma = symmetry_factor(&children[i]);
        for m in 1..=(j - i) as u128 {
            out *= m * sigma;
        }
        i = j;
    }
    out
}

static TREE_CACHE: OnceLock<Mutex<Vec<Vec<Tree>>>> = OnceLock::new();

/// All trees with exactly `n` vertices, sorted by encoding.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    assert!(n >= 1, "trees have at least one vertex");
    let cache = TREE_CACHE.get_or_init(|| Mutex::new(vec![Vec::new()]));
    if let Some(found) = cache.lock().unwrap().get(n) {
        return found.clone();
    }
    for m in 1..=n {
        if cache.lock().unwrap().len() > m {
            continue;
        }
        let mut trees: Vec<Tree> = forest_multisets(m - 1)
            .into_iter()
            .map(Tree::from_children)
            .collect();
        trees.sort();
        let mut guard = cache.lock().unwrap();
        if guard.len() == m {
            guard.push(trees);
        }
    }
    cache.lock().unwrap()[n].clone()
}

/// All forests of total weight `w`, sorted.
pub fn enumerate_forests(w: usize) -> Vec<Forest> {
    let mut out: Vec<Forest> = forest_multisets(w).into_iter().map(Forest::new).collect();
    out.sort();
    out
}

// Multisets of trees with total weight `w`, built from the smaller tree
// lists as non-decreasing index sequences into a shared pool.
fn forest_multisets(w: usize) -> Vec<Vec<Tree>> {
    let pool: Vec<Tree> = (1..=w).flat_map(enumerate_trees).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(
        pool: &[Tree],
        start: usize,
        remaining: usize,
        current: &mut Vec<Tree>,
        out: &mut Vec<Vec<Tree>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..pool.len() {
            if pool[i].size <= remaining {
                current.push(pool[i].clone());
                go(pool, i, remaining - pool[i].size, current, out);
                current.pop();
            }
        }
    }
    go(&pool, 0, w, &mut current, &mut out);
    out
}

/// Number of rooted trees with `n` vertices from the divisor-sum recurrence
/// `r(n+1) = (1/n) Σ_{k=1..n} (Σ_{d|k} d·r(d)) r(n−k+1)`.
pub fn count_trees_recurrence(n: usize) -> u128 {
    assert!(n >= 1, "trees have at least one vertex");
    let mut r = vec![0u128; n + 1];
    r[1] = 1;
    for m in 1..n {
        let mut total = 0u128;
        for k in 1..=m {
            let divisor_sum: u128 = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| d as u128 * r[d])
                .sum();
            total += divisor_sum * r[m - k + 1];
        }
        debug_assert_eq!(total % m as u128, 0);
        r[m + 1] = total / m as u128;
    }
    r[n]
}
