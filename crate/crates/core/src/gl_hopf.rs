//! The Grossman-Larson Hopf algebra `A`: linear basis of rooted trees,
//! grafting product, and the cocommutative root-children splitting coproduct.
//!
//! `A` is graded by `deg t = size(t) − 1` and the unit is the one-vertex
//! tree `e`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use crate::exactlin::{extend_bilinear, rank, tensor, LinComb, Rational};
use crate::trees::{enumerate_trees, graft_all, Tree};

pub type AElement = LinComb<Tree>;
pub type ATensor = LinComb<(Tree, Tree)>;

/// The unit `e`.
pub fn gl_unit() -> AElement {
    LinComb::basis(Tree::leaf())
}

/// `t1 · t2`: the sum over all `n^r` ways of attaching the `r` root-children
/// subtrees of `t1` to the `n` vertices of `t2`.
pub fn gl_product(t1: &Tree, t2: &Tree) -> AElement {
    let scions = t1.children();
    let n = t2.size();
    let mut out = AElement::zero();
    let mut choice = vec![0usize; scions.len()];
    loop {
        let mut attachments = vec![Vec::new(); n];
        for (scion, &v) in scions.iter().zip(&choice) {
            attachments[v].push(scion.clone());
        }
        out.add_term(graft_all(t2, &attachments), Rational::one());

        // next attachment map, odometer style
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Bilinear extension of [`gl_product`].
pub fn gl_mul(a: &AElement, b: &AElement) -> AElement {
    extend_bilinear(a, b, gl_product)
}

/// `Δ(t)`: the `2^r` splits of the root's children into two subsets, each
/// child slot choosing a side independently. `Δ(e) = e⊗e`.
pub fn gl_coproduct(t: &Tree) -> ATensor {
    let children = t.children();
    let r = children.len();
    let mut out = ATensor::zero();
    for mask in 0u64..(1u64 << r) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, c) in children.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(c.clone());
            } else {
                right.push(c.clone());
            }
        }
        out.add_term(
            (Tree::from_children(left), Tree::from_children(right)),
            Rational::one(),
        );
    }
    out
}

pub fn gl_coproduct_elem(x: &AElement) -> ATensor {
    x.map_linear(gl_coproduct)
}

/// Product in `A ⊗ A`: `(a⊗b)(c⊗d) = ac ⊗ bd`.
pub fn gl_tensor_product(x: &ATensor, y: &ATensor) -> ATensor {
    extend_bilinear(x, y, |(a, b), (c, d)| {
        tensor(&gl_product(a, c), &gl_product(b, d))
    })
}

/// Coefficient of `e`.
pub fn gl_counit(x: &AElement) -> Rational {
    x.coeff(&Tree::leaf())
}

/// Terms of `Δ(t)` with neither leg equal to `e`.
pub fn gl_reduced_coproduct(t: &Tree) -> ATensor {
    gl_coproduct(t).filter(|(a, b)| !a.is_leaf() && !b.is_leaf())
}

static ANTIPODE_CACHE: OnceLock<Mutex<HashMap<Tree, AElement>>> = OnceLock::new();

fn antipode_tree(t: &Tree) -> AElement {
    if t.is_leaf() {
        return gl_unit();
    }
    let cache = ANTIPODE_CACHE.get_or_init(Default::default);
    if let Some(found) = cache.lock().unwrap().get(t) {
        return found.clone();
    }
    // S(t) = -t - Σ S(t') t'' over the reduced coproduct
    let mut out = -AElement::basis(t.clone());
    for ((left, right), c) in gl_reduced_coproduct(t).terms() {
        let term = gl_mul(&antipode_tree(left), &AElement::basis(right.clone()));
        out.add_scaled(&term, &-c);
    }
    cache.lock().unwrap().insert(t.clone(), out.clone());
    out
}

/// The antipode, from the connected-graded recursion.
pub fn gl_antipode(x: &AElement) -> AElement {
    x.map_linear(antipode_tree)
}

/// Trees with `n + 1` vertices whose root has exactly one child: a basis of
/// the primitive elements of degree `n`.
pub fn primitive_basis(n: usize) -> Vec<Tree> {
    enumerate_trees(n + 1)
        .into_iter()
        .filter(|t| t.fertility() == 1)
        .collect()
}

/// `Δ(x) − e⊗x − x⊗e`, zero exactly when `x` is primitive.
pub fn primitivity_defect(x: &AElement) -> ATensor {
    let e = gl_unit();
    let mut out = gl_coproduct_elem(x);
    out -= &tensor(&e, x);
    out -= &tensor(x, &e);
    out
}

/// Dimension of the primitive subspace of `A_n`, computed as the kernel of
/// [`primitivity_defect`] on the tree basis of degree `n`.
pub fn primitive_space_dimension(n: usize) -> usize {
    let trees = enumerate_trees(n + 1);
    let images: Vec<ATensor> = trees
        .iter()
        .map(|t| primitivity_defect(&AElement::basis(t.clone())))
        .collect();
    trees.len() - rank(&images)
}

/// Degree of a homogeneous element, `None` for zero or mixed degrees.
pub fn gl_degree(x: &AElement) -> Option<usize> {
    let mut degrees = x.keys().map(Tree::degree);
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{contract, rat, swap};
    use num_traits::Pow;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }
    fn el(terms: &[(&str, i64)]) -> AElement {
        LinComb::from_terms(terms.iter().map(|(s, c)| (t(s), rat(*c))))
    }

    #[test]
    fn unit_laws() {
        let e = Tree::leaf();
        for n in 1..=5 {
            for x in enumerate_trees(n) {
                assert_eq!(gl_product(&e, &x), AElement::basis(x.clone()));
                assert_eq!(gl_product(&x, &e), AElement::basis(x.clone()));
            }
        }
    }

    #[test]
    fn product_examples() {
        let l2 = Tree::chain(2);
        assert_eq!(gl_product(&l2, &l2), el(&[("[[][]]", 1), ("[[[]]]", 1)]));
        let got = gl_product(&Tree::corolla(2), &l2);
        assert_eq!(
            got,
            el(&[("[[][][]]", 1), ("[[[][]]]", 1), ("[[[]][]]", 2)])
        );
        assert_eq!(got.mass(), rat(4));
        assert_eq!(
            gl_mul(&el(&[("[]", 2)]), &el(&[("[[]]", 1)])),
            el(&[("[[]]", 2)])
        );
        assert!(gl_mul(&AElement::zero(), &el(&[("[[]]", 1)])).is_zero());
    }

    #[test]
    fn coproduct_examples() {
        let e = Tree::leaf();
        let l2 = Tree::chain(2);
        let cherry = Tree::corolla(2);
        assert_eq!(gl_coproduct(&e), LinComb::basis((e.clone(), e.clone())));
        assert_eq!(
            gl_coproduct(&l2),
            LinComb::from_keys([(e.clone(), l2.clone()), (l2.clone(), e.clone())])
        );
        assert_eq!(
            gl_coproduct(&cherry),
            LinComb::from_terms([
                ((e.clone(), cherry.clone()), rat(1)),
                ((cherry.clone(), e.clone()), rat(1)),
                ((l2.clone(), l2.clone()), rat(2)),
            ])
        );
        let d = gl_coproduct(&t("[[][[]][[]]]"));
        assert_eq!(d.mass(), rat(8));
        assert_eq!(swap(&d), d);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(gl_counit(&gl_unit()), rat(1));
        assert_eq!(gl_counit(&el(&[("[[[]]]", 1)])), rat(0));
        assert_eq!(gl_counit(&el(&[("[]", 2), ("[[]]", -7)])), rat(2));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(gl_antipode(&gl_unit()), gl_unit());
        assert_eq!(gl_antipode(&el(&[("[[]]", 1)])), el(&[("[[]]", -1)]));
        let s = gl_antipode(&el(&[("[[][]]", 1)]));
        assert_eq!(s, el(&[("[[][]]", 1), ("[[[]]]", 2)]));
        let axiom = contract(&gl_coproduct(&Tree::corolla(2)), |a, b| {
            gl_mul(
                &gl_antipode(&AElement::basis(a.clone())),
                &AElement::basis(b.clone()),
            )
        });
        assert!(axiom.is_zero());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_basis(1), vec![Tree::chain(2)]);
        assert_eq!(primitive_basis(2), vec![Tree::chain(3)]);
        assert_eq!(primitive_space_dimension(1), 1);
        assert_eq!(primitive_space_dimension(3), 2);
        assert_eq!(primitive_space_dimension(4), 4);
        for n in 1..=4 {
            for p in primitive_basis(n) {
                assert!(primitivity_defect(&AElement::basis(p)).is_zero());
            }
        }
    }

    #[test]
    fn product_is_not_commutative() {
        let (a, b) = (Tree::chain(2), Tree::chain(3));
        assert_ne!(gl_product(&a, &b), gl_product(&b, &a));
    }

    #[test]
    fn multiplicity_matches_attachment_count() {
        for (x, y) in [
            ("[[][][]]", "[[]]"),
            ("[[[]][]]", "[[][]]"),
            ("[[]]", "[[[]][]]"),
        ] {
            let (x, y) = (t(x), t(y));
            let expected: Rational = rat(y.size() as i64).pow(x.fertility() as u32);
            assert_eq!(gl_product(&x, &y).mass(), expected);
        }
    }

    #[test]
    fn degree_helper() {
        assert_eq!(gl_degree(&el(&[("[[]]", 1), ("[]", 1)])), None);
        assert_eq!(gl_degree(&el(&[("[[][]]", 1), ("[[[]]]", 3)])), Some(2));
    }
}
