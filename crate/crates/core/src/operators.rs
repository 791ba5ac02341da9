//! The natural growth operator `N` and the operator `M` on `A`, and the
//! sequence `x_k = N^k(e)`.
//!
//! The `x_k` span a commutative, cocommutative Hopf subalgebra isomorphic to
//! the polynomial Hopf algebra `k[X]` through `x_k ↦ X^k`.

use std::sync::{Mutex, OnceLock};

use crate::gl_hopf::{gl_counit, gl_mul, gl_product, gl_unit, AElement};
use crate::trees::{natural_growth_terms, Tree};

/// `N`: attach one new leaf at each vertex, summed.
pub fn n_apply(x: &AElement) -> AElement {
    x.map_linear(|t| AElement::from_keys(natural_growth_terms(t)))
}

/// `N(e)`, the two-vertex chain.
pub fn n_of_unit() -> AElement {
    AElement::basis(Tree::chain(2))
}

static XK_CACHE: OnceLock<Mutex<Vec<AElement>>> = OnceLock::new();

/// `x_k = N^k(e)`.
pub fn x_k(k: usize) -> AElement {
    let cache = XK_CACHE.get_or_init(|| Mutex::new(vec![gl_unit()]));
    let mut table = cache.lock().unwrap();
    while table.len() <= k {
        let next = n_apply(table.last().expect("x_0 is seeded"));
        table.push(next);
    }
    table[k].clone()
}

/// `M(e) = 0`, `M(t) = t·N(e)`.
pub fn m_apply(x: &AElement) -> AElement {
    let l2 = Tree::chain(2);
    x.map_linear(|t| {
        if t.is_leaf() {
            AElement::zero()
        } else {
            gl_product(t, &l2)
        }
    })
}

/// `x − ε(x)·e`.
pub fn augmentation_part(x: &AElement) -> AElement {
    let mut out = x.clone();
    out.add_term(Tree::leaf(), -gl_counit(x));
    out
}

/// `(x − ε(x)e)·N(e)`, the closed form of `M`.
pub fn m_closed_form(x: &AElement) -> AElement {
    gl_mul(&augmentation_part(x), &n_of_unit())
}

/// The two operators of this module, addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    N,
    M,
}

impl Operator {
    pub fn apply(self, x: &AElement) -> AElement {
        match self {
            Operator::N => n_apply(x),
            Operator::M => m_apply(x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::N => "N",
            Operator::M => "M",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, LinComb};
    use crate::gl_hopf::gl_coproduct_elem;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }
    fn el(terms: &[(&str, i64)]) -> AElement {
        LinComb::from_terms(terms.iter().map(|(s, c)| (t(s), rat(*c))))
    }

    #[test]
    fn growth_examples() {
        assert_eq!(n_apply(&gl_unit()), el(&[("[[]]", 1)]));
        assert_eq!(
            n_apply(&el(&[("[[]]", 1)])),
            el(&[("[[][]]", 1), ("[[[]]]", 1)])
        );
        for n in 1..=6 {
            for b in crate::trees::enumerate_trees(n) {
                let b = AElement::basis(b);
                assert_eq!(gl_mul(&n_of_unit(), &b), n_apply(&b));
            }
        }
    }

    #[test]
    fn xk_examples() {
        assert_eq!(x_k(0), gl_unit());
        assert_eq!(x_k(1), el(&[("[[]]", 1)]));
        assert_eq!(x_k(2), el(&[("[[[]]]", 1), ("[[][]]", 1)]));
        assert_eq!(x_k(3).mass(), rat(6));
    }

    #[test]
    fn m_examples() {
        assert!(m_apply(&gl_unit()).is_zero());
        assert_eq!(
            m_apply(&el(&[("[[]]", 1)])),
            el(&[("[[][]]", 1), ("[[[]]]", 1)])
        );
        assert_eq!(
            m_apply(&el(&[("[]", 2), ("[[]]", 1)])),
            el(&[("[[][]]", 1), ("[[[]]]", 1)])
        );
        let x = el(&[("[]", 3), ("[[][]]", -2), ("[[[]]]", 1)]);
        assert_eq!(m_apply(&x), m_closed_form(&x));
    }

    #[test]
    fn n_of_unit_is_primitive() {
        let d = gl_coproduct_elem(&n_of_unit());
        let e = gl_unit();
        let expected =
            crate::exactlin::tensor(&e, &n_of_unit()) + crate::exactlin::tensor(&n_of_unit(), &e);
        assert_eq!(d, expected);
    }

    #[test]
    fn operator_handles() {
        let x = el(&[("[[]]", 1)]);
        assert_eq!(Operator::N.apply(&x), n_apply(&x));
        assert_eq!(Operator::M.apply(&x), m_apply(&x));
        assert_eq!(Operator::M.name(), "M");
    }
}
