//! Exact rational linear combinations over canonical basis keys.
//!
//! Every algebra element in this crate is a [`LinComb`] over some basis
//! family: trees, forests, `Z`-symbols, or tensor pairs of those. Zero
//! coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::trees::{Forest, Tree};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `"<p>/<q>"` with `q > 0`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"<p>/<q>"` or an integer shorthand `"<p>"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Json(format!("invalid rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Json(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// A basis key with a canonical text encoding.
pub trait Basis: Clone + Ord {
    fn encode(&self) -> String;
}

pub trait ParseBasis: Basis + Sized {
    fn decode(text: &str) -> Result<Self>;
}

impl Basis for Tree {
    fn encode(&self) -> String {
        self.encoding().to_string()
    }
}

impl ParseBasis for Tree {
    fn decode(text: &str) -> Result<Self> {
        Tree::parse(text)
    }
}

impl Basis for Forest {
    fn encode(&self) -> String {
        self.encoding()
    }
}

impl ParseBasis for Forest {
    fn decode(text: &str) -> Result<Self> {
        Forest::parse(text)
    }
}

/// Separator between the legs of a tensor key.
pub const TENSOR_SEPARATOR: &str = " | ";

impl<A: Basis, B: Basis> Basis for (A, B) {
    fn encode(&self) -> String {
        format!("{}{TENSOR_SEPARATOR}{}", self.0.encode(), self.1.encode())
    }
}

impl<A: ParseBasis, B: ParseBasis> ParseBasis for (A, B) {
    fn decode(text: &str) -> Result<Self> {
        for (at, _) in text.match_indices(TENSOR_SEPARATOR) {
            let (left, right) = (&text[..at], &text[at + TENSOR_SEPARATOR.len()..]);
            if let (Ok(a), Ok(b)) = (A::decode(left), B::decode(right)) {
                return Ok((a, b));
            }
        }
        Err(Error::parse(0, format!("not a tensor key: {text:?}")))
    }
}

/// A finite formal linear combination with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Basis> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: B, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }

    /// Sum of basis keys, each with coefficient one (merging repeats).
    pub fn from_keys<I: IntoIterator<Item = B>>(iter: I) -> Self {
        Self::from_terms(iter.into_iter().map(|b| (b, Rational::one())))
    }

    pub fn add_term(&mut self, b: B, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scalar: &Rational) {
        if scalar.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * scalar);
        }
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, scalar: &Rational) -> Self {
        if scalar.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c * scalar))
                .collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear extension of a basis-level map.
    pub fn map_linear<C: Basis>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Relabels basis keys, merging keys that collide.
    pub fn map_basis<C: Basis>(&self, mut f: impl FnMut(&B) -> C) -> LinComb<C> {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    /// Terms sorted by basis encoding, as `(encoding, coefficient)` pairs.
    pub fn encoded_terms(&self) -> Vec<(String, &Rational)> {
        let mut out: Vec<(String, &Rational)> =
            self.terms.iter().map(|(b, c)| (b.encode(), c)).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `{"terms": [{"coeff": "p/q", "basis": "<encoding>"}, ...]}`, terms
    /// sorted by basis encoding.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .encoded_terms()
            .into_iter()
            .map(|(basis, c)| json!({"coeff": format_rational(c), "basis": basis}))
            .collect();
        json!({ "terms": terms })
    }
}

impl<B: ParseBasis> LinComb<B> {
    pub fn from_json(value: &Value) -> Result<Self> {
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("expected an object with a \"terms\" array".into()))?;
        let mut out = Self::zero();
        for term in terms {
            let coeff = term
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Json("term without string \"coeff\"".into()))?;
            let basis = term
                .get("basis")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Json("term without string \"basis\"".into()))?;
            out.add_term(B::decode(basis)?, parse_rational(coeff)?);
        }
        Ok(out)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json(&value)
    }
}

impl<B: Basis> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.encoded_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (basis, c)) in terms.into_iter().enumerate() {
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            if magnitude.is_one() {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{magnitude}*{basis}")?;
            }
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinComb({self})")
    }
}

impl<B: Basis> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &Rational::one());
    }
}

impl<B: Basis> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        self.add_scaled(rhs, &-Rational::one());
    }
}

impl<B: Basis> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self += &rhs;
        self
    }
}

impl<B: Basis> Add<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Basis> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self -= &rhs;
        self
    }
}

impl<B: Basis> Sub<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Basis> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&-Rational::one())
    }
}

impl<B: Basis> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&-Rational::one())
    }
}

/// `a + scalar·b`.
pub fn combine<B: Basis>(a: &LinComb<B>, b: &LinComb<B>, scalar: &Rational) -> LinComb<B> {
    let mut out = a.clone();
    out.add_scaled(b, scalar);
    out
}

/// Bilinear extension of a map defined on pairs of basis keys.
pub fn extend_bilinear<A: Basis, B: Basis, C: Basis>(
    a: &LinComb<A>,
    b: &LinComb<B>,
    mut f: impl FnMut(&A, &B) -> LinComb<C>,
) -> LinComb<C> {
    let mut out = LinComb::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            out.add_scaled(&f(x, y), &(cx * cy));
        }
    }
    out
}

/// `a ⊗ b`.
pub fn tensor<A: Basis, B: Basis>(a: &LinComb<A>, b: &LinComb<B>) -> LinComb<(A, B)> {
    extend_bilinear(a, b, |x, y| LinComb::basis((x.clone(), y.clone())))
}

/// `(f ⊗ id)` on a tensor.
pub fn apply_left<A: Basis, B: Basis, C: Basis>(
    x: &LinComb<(A, B)>,
    mut f: impl FnMut(&A) -> LinComb<C>,
) -> LinComb<(C, B)> {
    x.map_linear(|(a, b)| f(a).map_basis(|c| (c.clone(), b.clone())))
}

/// `(id ⊗ f)` on a tensor.
pub fn apply_right<A: Basis, B: Basis, C: Basis>(
    x: &LinComb<(A, B)>,
    mut f: impl FnMut(&B) -> LinComb<C>,
) -> LinComb<(A, C)> {
    x.map_linear(|(a, b)| f(b).map_basis(|c| (a.clone(), c.clone())))
}

/// Collapses a tensor through a map on pairs of legs, e.g. a multiplication.
pub fn contract<A: Basis, B: Basis, C: Basis>(
    x: &LinComb<(A, B)>,
    mut f: impl FnMut(&A, &B) -> LinComb<C>,
) -> LinComb<C> {
    x.map_linear(|(a, b)| f(a, b))
}

/// The flip `a ⊗ b ↦ b ⊗ a`.
pub fn swap<A: Basis, B: Basis>(x: &LinComb<(A, B)>) -> LinComb<(B, A)> {
    x.map_basis(|(a, b)| (b.clone(), a.clone()))
}

/// `a ⊗ (b ⊗ c) ↦ (a ⊗ b) ⊗ c`.
pub fn reassociate<A: Basis, B: Basis, C: Basis>(x: &LinComb<(A, (B, C))>) -> LinComb<((A, B), C)> {
    x.map_basis(|(a, (b, c))| ((a.clone(), b.clone()), c.clone()))
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl DenseMatrix {
    pub fn new(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::Shape {
                    expected: cols,
                    actual: row.len(),
                });
            }
        }
        Ok(DenseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        eliminate(&mut m, self.cols).len()
    }

    /// Some solution of `self · x = rhs` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if rhs.len() != self.rows {
            return Err(Error::Shape {
                expected: self.rows,
                actual: rhs.len(),
            });
        }
        let mut aug: Vec<Vec<Rational>> = self
            .data
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let pivots = eliminate(&mut aug, self.cols);
        // rows past the pivot rows are zero on the left; any nonzero
        // right-hand entry there means no solution
        if aug[pivots.len()..].iter().any(|r| !r[self.cols].is_zero()) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug[row][self.cols].clone();
        }
        Ok(Some(x))
    }
}

// Reduced row echelon form over the first `cols` columns, in place.
// Returns the pivot column of each leading row.
fn eliminate(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let (pivot_row, target) = if r < row {
                    let (lo, hi) = m.split_at_mut(row);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = m.split_at_mut(r);
                    (&lo[row], &mut hi[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    *t -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Outcome of an exact span-membership solve.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// Coordinates with respect to the generators, in order.
    InSpan(Vec<Rational>),
    /// The target is independent of the generators, whose span has this rank.
    NotInSpan { rank: usize },
}

impl Membership {
    pub fn coordinates(&self) -> Option<&[Rational]> {
        match self {
            Membership::InSpan(c) => Some(c),
            Membership::NotInSpan { .. } => None,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InSpan(_))
    }
}

fn key_index<B: Basis>(vectors: &[&LinComb<B>]) -> BTreeMap<B, usize> {
    let mut keys = BTreeMap::new();
    for v in vectors {
        for k in v.keys() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
    }
    keys
}

fn column_matrix<B: Basis>(keys: &BTreeMap<B, usize>, columns: &[LinComb<B>]) -> DenseMatrix {
    let mut rows = vec![vec![Rational::zero(); columns.len()]; keys.len()];
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col.terms() {
            rows[keys[k]][j] = c.clone();
        }
    }
    DenseMatrix::new(rows, columns.len()).expect("rows built with uniform width")
}

/// Expresses `target` as a rational combination of `generators`.
pub fn solve_membership<B: Basis>(target: &LinComb<B>, generators: &[LinComb<B>]) -> Membership {
    let mut all: Vec<&LinComb<B>> = generators.iter().collect();
    all.push(target);
    let keys = key_index(&all);
    let matrix = column_matrix(&keys, generators);
    let mut rhs = vec![Rational::zero(); keys.len()];
    for (k, c) in target.terms() {
        rhs[keys[k]] = c.clone();
    }
    match matrix.solve(&rhs).expect("rhs built with matching height") {
        Some(x) => Membership::InSpan(x),
        None => Membership::NotInSpan {
            rank: matrix.rank(),
        },
    }
}

/// Dimension of the span of `vectors`.
pub fn rank<B: Basis>(vectors: &[LinComb<B>]) -> usize {
    let keys = key_index(&vectors.iter().collect::<Vec<_>>());
    column_matrix(&keys, vectors).rank()
}

/// `Σ coords[i] · generators[i]`.
pub fn recombine<B: Basis>(generators: &[LinComb<B>], coords: &[Rational]) -> LinComb<B> {
    let mut out = LinComb::zero();
    for (g, c) in generators.iter().zip(coords) {
        out.add_scaled(g, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e() -> Tree {
        Tree::leaf()
    }
    fn l2() -> Tree {
        Tree::chain(2)
    }

    #[test]
    fn combine_examples() {
        let x = LinComb::basis(e());
        assert!(combine(&x, &x, &rat(-1)).is_zero());

        let two_e = LinComb::term(e(), rat(2));
        let got = combine(&two_e, &LinComb::basis(l2()), &rat(3));
        assert_eq!(got, LinComb::from_terms([(e(), rat(2)), (l2(), rat(3))]));

        let a = LinComb::from_keys([e(), l2()]);
        let got = combine(&a, &LinComb::basis(e()), &rat(1));
        assert_eq!(got, LinComb::from_terms([(e(), rat(2)), (l2(), rat(1))]));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(
            parse_rational("6/4").unwrap(),
            Rational::new(3.into(), 2.into())
        );
        assert_eq!(
            parse_rational("-1/2").unwrap(),
            Rational::new((-1).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert_eq!(format_rational(&rat(3)), "3/1");
        assert_eq!(
            format_rational(&Rational::new(2.into(), (-4).into())),
            "-1/2"
        );
    }

    #[test]
    fn json_round_trip_and_order() {
        let x = LinComb::from_terms([(e(), rat(2)), (l2(), Rational::new(1.into(), 3.into()))]);
        let text = x.to_json().to_string();
        assert_eq!(
            text,
            r#"{"terms":[{"basis":"[[]]","coeff":"1/3"},{"basis":"[]","coeff":"2/1"}]}"#
        );
        assert_eq!(LinComb::<Tree>::from_json_str(&text).unwrap(), x);
        let shorthand = r#"{"terms":[{"coeff":"3","basis":"[]"}]}"#;
        assert_eq!(
            LinComb::<Tree>::from_json_str(shorthand).unwrap(),
            LinComb::term(e(), rat(3))
        );
    }

    #[test]
    fn tensor_keys_decode() {
        let k = (Forest::parse("[] []").unwrap(), Forest::empty());
        assert_eq!(k.encode(), "[] [] | 1");
        assert_eq!(<(Forest, Forest)>::decode("[] [] | 1").unwrap(), k);
        let nested = ((e(), l2()), e());
        assert_eq!(
            <((Tree, Tree), Tree)>::decode(&nested.encode()).unwrap(),
            nested
        );
    }

    #[test]
    fn display_text() {
        let x = LinComb::from_terms([(e(), rat(-2)), (l2(), rat(1))]);
        assert_eq!(x.to_string(), "[[]] - 2*[]");
        assert_eq!(LinComb::<Tree>::zero().to_string(), "0");
    }

    #[test]
    fn membership_basics() {
        let g = vec![LinComb::basis(e()), LinComb::basis(l2())];
        assert_eq!(
            solve_membership(&g[0], &g),
            Membership::InSpan(vec![rat(1), rat(0)])
        );
        assert_eq!(
            solve_membership(&LinComb::zero(), &g),
            Membership::InSpan(vec![rat(0), rat(0)])
        );
        let outside = LinComb::basis(Tree::chain(3));
        assert_eq!(
            solve_membership(&outside, &g),
            Membership::NotInSpan { rank: 2 }
        );
    }

    #[test]
    fn dense_shape_errors() {
        assert_eq!(
            DenseMatrix::new(vec![vec![rat(1), rat(2)], vec![rat(1)]], 2),
            Err(Error::Shape {
                expected: 2,
                actual: 1
            })
        );
        let m = DenseMatrix::new(vec![vec![rat(1), rat(2)]], 2).unwrap();
        assert_eq!(
            m.solve(&[rat(1), rat(1)]),
            Err(Error::Shape {
                expected: 1,
                actual: 2
            })
        );
    }

    #[test]
    fn dense_rank_and_solve() {
        let m = DenseMatrix::new(
            vec![
                vec![rat(1), rat(2), rat(3)],
                vec![rat(2), rat(4), rat(6)],
                vec![rat(0), rat(1), rat(1)],
            ],
            3,
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        let x = m.solve(&[rat(4), rat(8), rat(1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(2), rat(1), rat(0)]);
        assert_eq!(m.solve(&[rat(4), rat(7), rat(1)]).unwrap(), None);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn small_comb() -> impl Strategy<Value = LinComb<Tree>> {
        proptest::collection::vec((1usize..5, small_rational()), 0..5).prop_map(|terms| {
            LinComb::from_terms(terms.into_iter().map(|(n, c)| (Tree::chain(n), c)))
        })
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            let reduced = &a * &b;
            prop_assert!(reduced.denom().is_positive());
            prop_assert_eq!(num_integer::Integer::gcd(reduced.numer(), reduced.denom()), BigInt::one());
        }

        #[test]
        fn linear_combinations_form_a_group(a in small_comb(), b in small_comb(), c in small_comb()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert!((&a + &b).terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn bilinear_extension_respects_scalars(a in small_comb(), b in small_comb(), s in small_rational()) {
            let f = |x: &LinComb<Tree>, y: &LinComb<Tree>| tensor(x, y);
            prop_assert_eq!(f(&a.scale(&s), &b), f(&a, &b).scale(&s));
            prop_assert_eq!(f(&a, &b.scale(&s)), f(&a, &b).scale(&s));
        }

        #[test]
        fn membership_coordinates_reproduce_target(gens in proptest::collection::vec(small_comb(), 1..4), coeffs in proptest::collection::vec(small_rational(), 4)) {
            let target = recombine(&gens, &coeffs[..gens.len()]);
            match solve_membership(&target, &gens) {
                Membership::InSpan(x) => prop_assert_eq!(recombine(&gens, &x), target),
                Membership::NotInSpan { .. } => prop_assert!(false, "constructed target must be in span"),
            }
        }
    }
}
