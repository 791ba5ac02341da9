//! The Connes-Kreimer Hopf algebra `H_R`: commutative polynomials in the
//! rooted trees, with the admissible-cut coproduct.
//!
//! Elements are linear combinations of forests; a forest is read as the
//! monomial of its trees and the empty forest is the unit `1`. Grading is by
//! total vertex count (weight).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{
    apply_right, extend_bilinear, solve_membership, tensor, LinComb, Membership, Rational,
};
use crate::trees::{admissible_cuts, b_minus, b_plus, natural_growth_terms, Forest, Tree};

pub type HrElement = LinComb<Forest>;
pub type HrTensor = LinComb<(Forest, Forest)>;

pub fn hr_unit() -> HrElement {
    LinComb::basis(Forest::empty())
}

/// The monomial consisting of a single tree.
pub fn hr_tree(t: &Tree) -> HrElement {
    LinComb::basis(Forest::single(t.clone()))
}

pub fn hr_product(a: &HrElement, b: &HrElement) -> HrElement {
    extend_bilinear(a, b, |x, y| LinComb::basis(x.union(y)))
}

/// Product in `H_R ⊗ H_R`: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
pub fn hr_tensor_product(x: &HrTensor, y: &HrTensor) -> HrTensor {
    extend_bilinear(x, y, |(a, b), (c, d)| {
        LinComb::basis((a.union(c), b.union(d)))
    })
}

fn unit_tensor() -> HrTensor {
    LinComb::basis((Forest::empty(), Forest::empty()))
}

/// `Δ(t) = 1⊗t + t⊗1 + Σ_c P^c(t) ⊗ R^c(t)` over admissible cuts.
pub fn hr_coproduct_tree(t: &Tree) -> HrTensor {
    let whole = Forest::single(t.clone());
    let mut out = HrTensor::zero();
    out.add_term((Forest::empty(), whole.clone()), Rational::one());
    out.add_term((whole, Forest::empty()), Rational::one());
    for cut in admissible_cuts(t) {
        out.add_term((cut.branch, Forest::single(cut.trunk)), Rational::one());
    }
    out
}

fn forest_coproduct(f: &Forest, tree_coproduct: &impl Fn(&Tree) -> HrTensor) -> HrTensor {
    f.trees().iter().fold(unit_tensor(), |acc, t| {
        hr_tensor_product(&acc, &tree_coproduct(t))
    })
}

/// The cut coproduct, extended multiplicatively to monomials and linearly.
pub fn hr_coproduct(x: &HrElement) -> HrTensor {
    x.map_linear(|f| forest_coproduct(f, &hr_coproduct_tree))
}

/// `Δ(t) = t⊗1 + (id⊗B₊)(Δ(B₋(t)))`, recursing through the forest `B₋(t)`.
pub fn hr_coproduct_recursive(t: &Tree) -> HrTensor {
    let below = forest_coproduct(&b_minus(t), &hr_coproduct_recursive);
    let mut out = apply_right(&below, |f| LinComb::basis(Forest::single(b_plus(f))));
    out.add_term(
        (Forest::single(t.clone()), Forest::empty()),
        Rational::one(),
    );
    out
}

/// Coefficient of the unit.
pub fn hr_counit(x: &HrElement) -> Rational {
    x.coeff(&Forest::empty())
}

static ANTIPODE_CACHE: OnceLock<Mutex<HashMap<Tree, HrElement>>> = OnceLock::new();

fn antipode_tree(t: &Tree) -> HrElement {
    let cache = ANTIPODE_CACHE.get_or_init(Default::default);
    if let Some(found) = cache.lock().unwrap().get(t) {
        return found.clone();
    }
    // S(t) = -t - Σ_c S(P^c(t)) R^c(t)
    let mut out = -hr_tree(t);
    for cut in admissible_cuts(t) {
        let s_branch = antipode_forest(&cut.branch);
        out -= &hr_product(&s_branch, &hr_tree(&cut.trunk));
    }
    cache.lock().unwrap().insert(t.clone(), out.clone());
    out
}

fn antipode_forest(f: &Forest) -> HrElement {
    f.trees()
        .iter()
        .fold(hr_unit(), |acc, t| hr_product(&acc, &antipode_tree(t)))
}

/// The antipode: the cut recursion on trees, multiplicative on monomials.
pub fn hr_antipode(x: &HrElement) -> HrElement {
    x.map_linear(antipode_forest)
}

/// The natural growth operator, acting as a derivation.
pub fn hr_natural_growth(x: &HrElement) -> HrElement {
    x.map_linear(|f| {
        let trees = f.trees();
        let mut out = HrElement::zero();
        for (i, t) in trees.iter().enumerate() {
            for grown in natural_growth_terms(t) {
                let mut replaced = trees.to_vec();
                replaced[i] = grown;
                out.add_term(Forest::new(replaced), Rational::one());
            }
        }
        out
    })
}

/// `δ_1 = e`, `δ_{k+1} = N(δ_k)`.
pub fn hr_delta(k: usize) -> Result<HrElement> {
    if k == 0 {
        return Err(Error::domain("δ_k is defined for k ≥ 1"));
    }
    let mut out = hr_tree(&Tree::leaf());
    for _ in 1..k {
        out = hr_natural_growth(&out);
    }
    Ok(out)
}

/// The 1-cocycle `L`, equal to `B₊` on monomials; `L(1) = e`.
pub fn hr_l(x: &HrElement) -> HrElement {
    x.map_basis(|f| Forest::single(b_plus(f)))
}

/// Weight of a homogeneous element, `None` for mixed weights or zero.
pub fn hr_weight(x: &HrElement) -> Option<usize> {
    let mut weights = x.keys().map(Forest::weight);
    let first = weights.next()?;
    weights.all(|w| w == first).then_some(first)
}

/// Partitions of `n` into non-increasing parts, largest first part first.
pub(crate) fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The monomials `δ_{k_1}···δ_{k_m}` with `Σ k_i = weight`, tagged with their
/// partition.
pub fn delta_monomials(weight: usize) -> Vec<(Vec<usize>, HrElement)> {
    partitions(weight)
        .into_iter()
        .map(|parts| {
            let value = parts.iter().fold(hr_unit(), |acc, &k| {
                hr_product(&acc, &hr_delta(k).expect("parts are positive"))
            });
            (parts, value)
        })
        .collect()
}

/// Coordinates of `x` in the `δ`-monomial basis of the given weight.
pub fn hr_delta_membership(x: &HrElement, weight: usize) -> Result<Membership> {
    if x.keys().any(|f| f.weight() != weight) {
        return Err(Error::domain(format!(
            "element is not homogeneous of weight {weight}"
        )));
    }
    let generators: Vec<HrElement> = delta_monomials(weight)
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    Ok(solve_membership(x, &generators))
}

/// One bidegree component of `Δ(δ_k)` tested against the span of
/// `δ`-monomials tensored with `δ`-monomials.
#[derive(Clone, Debug)]
pub struct BidegreeClosure {
    pub left_weight: usize,
    pub right_weight: usize,
    pub component: HrTensor,
    /// Pairs of partitions indexing the generators, in coordinate order.
    pub generators: Vec<(Vec<usize>, Vec<usize>)>,
    pub membership: Membership,
}

/// Checks that every bidegree component of `Δ(δ_k)` lies in the tensor
/// square of the `δ`-span.
pub fn delta_coproduct_closure(k: usize) -> Result<Vec<BidegreeClosure>> {
    let coproduct = hr_coproduct(&hr_delta(k)?);
    let mut out = Vec::new();
    for left_weight in 0..=k {
        let right_weight = k - left_weight;
        let component = coproduct.filter(|(a, _)| a.weight() == left_weight);
        let mut generators = Vec::new();
        let mut labels = Vec::new();
        for (p, a) in delta_monomials(left_weight) {
            for (q, b) in delta_monomials(right_weight) {
                generators.push(tensor(&a, &b));
                labels.push((p.clone(), q));
            }
        }
        let membership = solve_membership(&component, &generators);
        out.push(BidegreeClosure {
            left_weight,
            right_weight,
            component,
            generators: labels,
            membership,
        });
    }
    Ok(out)
}

/// Renders a monomial label like `δ2·δ1`, or `1` for the empty partition.
pub fn delta_label(parts: &[usize]) -> String {
    if parts.is_empty() {
        return "1".into();
    }
    parts
        .iter()
        .map(|k| format!("δ{k}"))
        .collect::<Vec<_>>()
        .join("·")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, swap};

    fn f(s: &str) -> Forest {
        Forest::parse(s).unwrap()
    }
    fn el(terms: &[(&str, i64)]) -> HrElement {
        LinComb::from_terms(terms.iter().map(|(s, c)| (f(s), rat(*c))))
    }
    fn tens(terms: &[(&str, &str, i64)]) -> HrTensor {
        LinComb::from_terms(terms.iter().map(|(a, b, c)| ((f(a), f(b)), rat(*c))))
    }

    #[test]
    fn product_examples() {
        let x = el(&[("[[]]", 2), ("[]", 1)]);
        assert_eq!(hr_product(&hr_unit(), &x), x);
        assert_eq!(
            hr_product(&el(&[("[]", 1)]), &el(&[("[]", 1)])),
            el(&[("[] []", 1)])
        );
        assert_eq!(
            hr_product(&el(&[("[]", 1), ("[[]]", 1)]), &el(&[("[]", 1)])),
            el(&[("[] []", 1), ("[[]] []", 1)])
        );
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(hr_coproduct(&hr_unit()), tens(&[("1", "1", 1)]));
        assert_eq!(
            hr_coproduct(&el(&[("[[]]", 1)])),
            tens(&[("1", "[[]]", 1), ("[[]]", "1", 1), ("[]", "[]", 1)])
        );
        assert_eq!(
            hr_coproduct(&el(&[("[[][]]", 1)])),
            tens(&[
                ("1", "[[][]]", 1),
                ("[[][]]", "1", 1),
                ("[]", "[[]]", 2),
                ("[] []", "[]", 1)
            ])
        );
    }

    #[test]
    fn recursive_coproduct_examples() {
        assert_eq!(
            hr_coproduct_recursive(&Tree::leaf()),
            tens(&[("[]", "1", 1), ("1", "[]", 1)])
        );
        assert_eq!(
            hr_coproduct_recursive(&Tree::chain(2)),
            hr_coproduct_tree(&Tree::chain(2))
        );
        assert_eq!(
            hr_coproduct_recursive(&Tree::chain(3)),
            tens(&[
                ("1", "[[[]]]", 1),
                ("[[[]]]", "1", 1),
                ("[[]]", "[]", 1),
                ("[]", "[[]]", 1)
            ])
        );
    }

    #[test]
    fn counit_examples() {
        assert_eq!(hr_counit(&hr_unit()), rat(1));
        assert_eq!(hr_counit(&el(&[("[[]]", 1)])), rat(0));
        assert_eq!(hr_counit(&el(&[("1", 5), ("[]", 3)])), rat(5));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(hr_antipode(&hr_unit()), hr_unit());
        assert_eq!(hr_antipode(&el(&[("[]", 1)])), el(&[("[]", -1)]));
        assert_eq!(
            hr_antipode(&el(&[("[[]]", 1)])),
            el(&[("[[]]", -1), ("[] []", 1)])
        );
    }

    #[test]
    fn growth_examples() {
        assert_eq!(hr_natural_growth(&el(&[("[]", 1)])), el(&[("[[]]", 1)]));
        assert_eq!(
            hr_natural_growth(&el(&[("[] []", 1)])),
            el(&[("[[]] []", 2)])
        );
        assert!(hr_natural_growth(&hr_unit()).is_zero());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(hr_delta(1).unwrap(), el(&[("[]", 1)]));
        assert_eq!(hr_delta(2).unwrap(), el(&[("[[]]", 1)]));
        assert_eq!(hr_delta(3).unwrap(), el(&[("[[[]]]", 1), ("[[][]]", 1)]));
        assert!(matches!(hr_delta(0), Err(Error::Domain(_))));
    }

    #[test]
    fn l_examples() {
        assert_eq!(hr_l(&hr_unit()), el(&[("[]", 1)]));
        assert_eq!(hr_l(&el(&[("[] []", 1)])), el(&[("[[][]]", 1)]));
        assert_eq!(hr_l(&el(&[("[[]]", 1)])), el(&[("[[[]]]", 1)]));
    }

    #[test]
    fn membership_examples() {
        // partition order at weight 3: [3], [2,1], [1,1,1]
        let delta3 = hr_delta(3).unwrap();
        assert_eq!(
            hr_delta_membership(&delta3, 3).unwrap(),
            Membership::InSpan(vec![rat(1), rat(0), rat(0)])
        );
        let e_l2 = el(&[("[[]] []", 1)]);
        assert_eq!(
            hr_delta_membership(&e_l2, 3).unwrap(),
            Membership::InSpan(vec![rat(0), rat(1), rat(0)])
        );
        let cherry = el(&[("[[][]]", 1)]);
        assert_eq!(
            hr_delta_membership(&cherry, 3).unwrap(),
            Membership::NotInSpan { rank: 3 }
        );
        assert!(hr_delta_membership(&el(&[("[]", 1), ("[[]]", 1)]), 2).is_err());
    }

    #[test]
    fn delta3_coproduct_closes() {
        let closure = delta_coproduct_closure(3).unwrap();
        assert_eq!(closure.len(), 4);
        assert!(closure.iter().all(|c| c.membership.is_member()));
    }

    #[test]
    fn cherry_is_not_cocommutative() {
        let d = hr_coproduct(&el(&[("[[][]]", 1)]));
        assert_ne!(swap(&d), d);
    }

    #[test]
    fn partitions_order() {
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn weight_of_elements() {
        assert_eq!(hr_weight(&el(&[("[] []", 1), ("[[]]", 2)])), Some(2));
        assert_eq!(hr_weight(&el(&[("[]", 1), ("[[]]", 2)])), None);
        assert_eq!(hr_weight(&HrElement::zero()), None);
    }
}
