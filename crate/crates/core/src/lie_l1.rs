//! The Lie algebra `L¹` spanned by symbols `Z_t`, its single-cut star
//! operation and bracket, and the isomorphism with the primitives of `A`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{extend_bilinear, Basis, LinComb, ParseBasis, Rational};
use crate::gl_hopf::{gl_mul, AElement};
use crate::trees::{
    admissible_cuts, b_plus, enumerate_trees, graft, symmetry_factor, Forest, Tree, VertexIndex,
};

/// The basis symbol `Z_t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Z(pub Tree);

impl fmt::Debug for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z({})", self.0)
    }
}

impl Basis for Z {
    fn encode(&self) -> String {
        format!("Z:{}", self.0)
    }
}

impl ParseBasis for Z {
    fn decode(text: &str) -> Result<Self> {
        let body = text
            .strip_prefix("Z:")
            .ok_or_else(|| Error::parse(0, "expected \"Z:\" prefix"))?;
        Tree::parse(body).map(Z).map_err(|e| match e {
            Error::Parse { position, message } => Error::parse(position + 2, message),
            other => other,
        })
    }
}

pub type L1Element = LinComb<Z>;

pub fn z(t: &Tree) -> L1Element {
    LinComb::basis(Z(t.clone()))
}

/// `Z_{t1} * Z_{t2}`, realized by grafting `t1` onto each vertex of `t2`.
pub fn star_basis(t1: &Tree, t2: &Tree) -> L1Element {
    LinComb::from_keys(
        (0..t2.size()).map(|v| Z(graft(t2, VertexIndex(v), t1).expect("vertex index in range"))),
    )
}

pub fn star(a: &L1Element, b: &L1Element) -> L1Element {
    extend_bilinear(a, b, |Z(x), Z(y)| star_basis(x, y))
}

/// The star product read off literally: for every tree `t` of size
/// `size(t1) + size(t2)`, count the single cuts of `t` with branch `t1` and
/// trunk `t2`.
pub fn star_by_cut_counting(t1: &Tree, t2: &Tree, max_size: usize) -> L1Element {
    let target = t1.size() + t2.size();
    assert!(
        max_size >= target,
        "max_size {max_size} below the product size {target}"
    );
    let branch = Forest::single(t1.clone());
    let mut out = L1Element::zero();
    for t in enumerate_trees(target) {
        let count = admissible_cuts(&t)
            .into_iter()
            .filter(|c| c.order() == 1 && c.branch == branch && &c.trunk == t2)
            .count();
        out.add_term(Z(t), Rational::from_integer(count.into()));
    }
    out
}

/// Bilinear extension of [`star_by_cut_counting`].
pub fn star_cut(a: &L1Element, b: &L1Element) -> L1Element {
    extend_bilinear(a, b, |Z(x), Z(y)| {
        star_by_cut_counting(x, y, x.size() + y.size())
    })
}

/// The bracket built on the cut-counting star.
pub fn bracket_cut(a: &L1Element, b: &L1Element) -> L1Element {
    star_cut(a, b) - star_cut(b, a)
}

/// `σ(t)/(σ(t1)σ(t2))`: the factor by which the cut count of `(t1, t2; t)`
/// exceeds the graft count.
pub fn cut_to_graft_ratio(t1: &Tree, t2: &Tree, t: &Tree) -> Rational {
    Rational::new(
        symmetry_factor(t).into(),
        (symmetry_factor(t1) * symmetry_factor(t2)).into(),
    )
}

/// `[a, b] = a*b − b*a`.
pub fn bracket(a: &L1Element, b: &L1Element) -> L1Element {
    star(a, b) - star(b, a)
}

/// `φ(t) = Z_{B₋(t)}` on trees whose root has exactly one child.
pub fn phi(x: &AElement) -> Result<L1Element> {
    let mut out = L1Element::zero();
    for (t, c) in x.terms() {
        match t.children() {
            [only] => out.add_term(Z(only.clone()), c.clone()),
            _ => {
                return Err(Error::domain(format!(
                    "{t} is not a primitive basis tree (root fertility {})",
                    t.fertility()
                )))
            }
        }
    }
    Ok(out)
}

/// `t ↦ σ(B₋t)·Z_{B₋t}`: the rescaling of [`phi`] that is a Lie morphism
/// into the cut-counting bracket [`bracket_cut`].
pub fn phi_symmetric(x: &AElement) -> Result<L1Element> {
    Ok(phi(x)?.map_linear(|Z(t)| {
        LinComb::term(
            Z(t.clone()),
            Rational::from_integer(symmetry_factor(t).into()),
        )
    }))
}

/// `ψ(Z_t) = B₊(t)`, the inverse of [`phi`].
pub fn psi(a: &L1Element) -> AElement {
    a.map_basis(|Z(t)| b_plus(&Forest::single(t.clone())))
}

/// The commutator in `A`.
pub fn gl_commutator(a: &AElement, b: &AElement) -> AElement {
    gl_mul(a, b) - gl_mul(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }
    fn zs(terms: &[(&str, i64)]) -> L1Element {
        LinComb::from_terms(terms.iter().map(|(s, c)| (Z(t(s)), rat(*c))))
    }

    #[test]
    fn star_examples() {
        let (e, l2) = (Tree::leaf(), Tree::chain(2));
        assert_eq!(star_basis(&e, &e), zs(&[("[[]]", 1)]));
        assert_eq!(star_basis(&e, &l2), zs(&[("[[][]]", 1), ("[[[]]]", 1)]));
        assert_eq!(star_basis(&l2, &e), zs(&[("[[[]]]", 1)]));
    }

    #[test]
    fn cut_counting_agrees_on_examples() {
        let (e, l2, cherry) = (Tree::leaf(), Tree::chain(2), Tree::corolla(2));
        assert_eq!(star_by_cut_counting(&e, &e, 2), zs(&[("[[]]", 1)]));
        assert_eq!(star_by_cut_counting(&l2, &l2, 4), star_basis(&l2, &l2));
        // symmetric trees break the equality with grafting
        let got = star_by_cut_counting(&e, &cherry, 4);
        assert_eq!(got, zs(&[("[[][][]]", 3), ("[[[]][]]", 1)]));
        assert_eq!(
            star_basis(&e, &cherry),
            zs(&[("[[][][]]", 1), ("[[[]][]]", 2)])
        );
        let rescaled = star_basis(&e, &cherry)
            .map_linear(|Z(x)| LinComb::term(Z(x.clone()), cut_to_graft_ratio(&e, &cherry, x)));
        assert_eq!(rescaled, got);
    }

    #[test]
    fn bracket_examples() {
        let (e, l2) = (z(&Tree::leaf()), z(&Tree::chain(2)));
        assert!(bracket(&e, &e).is_zero());
        assert_eq!(bracket(&e, &l2), zs(&[("[[][]]", 1)]));
        assert_eq!(bracket(&l2, &e), zs(&[("[[][]]", -1)]));
    }

    #[test]
    fn phi_psi_examples() {
        let a = |s: &str| AElement::basis(t(s));
        assert_eq!(phi(&a("[[]]")).unwrap(), zs(&[("[]", 1)]));
        assert_eq!(phi(&a("[[[]]]")).unwrap(), zs(&[("[[]]", 1)]));
        assert!(matches!(phi(&a("[[][]]")), Err(Error::Domain(_))));
        assert!(matches!(phi(&a("[]")), Err(Error::Domain(_))));
        assert_eq!(psi(&zs(&[("[]", 1)])), a("[[]]"));
        assert_eq!(psi(&zs(&[("[[][]]", 1)])), a("[[[][]]]"));
    }

    #[test]
    fn symmetric_phi_is_a_lie_map_for_cut_bracket() {
        let a = AElement::basis(t("[[]]"));
        let b = AElement::basis(t("[[[][]]]"));
        let lhs = phi_symmetric(&gl_commutator(&a, &b)).unwrap();
        let rhs = bracket_cut(&phi_symmetric(&a).unwrap(), &phi_symmetric(&b).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(phi_symmetric(&b).unwrap(), zs(&[("[[][]]", 2)]));
    }

    #[test]
    fn star_is_not_associative() {
        let e = z(&Tree::leaf());
        let left = star(&star(&e, &e), &e);
        let right = star(&e, &star(&e, &e));
        assert_ne!(left, right);
    }

    #[test]
    fn z_keys_round_trip() {
        let k = Z(t("[[]]"));
        assert_eq!(k.encode(), "Z:[[]]");
        assert_eq!(Z::decode("Z:[[]]").unwrap(), k);
        assert!(Z::decode("[[]]").is_err());
        assert!(matches!(
            Z::decode("Z:[["),
            Err(Error::Parse { position: 4, .. })
        ));
    }
}
