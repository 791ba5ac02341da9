//! Degree-truncated graded dual of `A`.
//!
//! A functional is stored by its values on the tree basis. Since every
//! homogeneous component of `A` is finite dimensional, a functional supported
//! in bounded degree lies in the finite dual, and its coproduct (the
//! transpose of the multiplication) is an exact finite computation.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{LinComb, Rational};
use crate::gl_hopf::{gl_coproduct, gl_counit, gl_product, AElement};
use crate::operators::m_apply;
use crate::trees::{enumerate_trees, Tree};

/// A functional on `A` supported on trees of degree at most `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFunctional {
    coeffs: LinComb<Tree>,
    max_degree: usize,
}

impl DualFunctional {
    pub fn new(coeffs: LinComb<Tree>, max_degree: usize) -> Result<Self> {
        if let Some(t) = coeffs.keys().find(|t| t.degree() > max_degree) {
            return Err(Error::domain(format!(
                "{t} has degree {} above the bound {max_degree}",
                t.degree()
            )));
        }
        Ok(DualFunctional { coeffs, max_degree })
    }

    /// The dual basis functional `t*`.
    pub fn basis(t: &Tree) -> Self {
        DualFunctional {
            coeffs: LinComb::basis(t.clone()),
            max_degree: t.degree(),
        }
    }

    /// The counit `ε = e*`.
    pub fn counit() -> Self {
        Self::basis(&Tree::leaf())
    }

    pub fn coeffs(&self) -> &LinComb<Tree> {
        &self.coeffs
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn eval(&self, x: &AElement) -> Rational {
        pair(self, x)
    }
}

/// `f(x)`, pairing the tree basis with its dual basis.
pub fn pair(f: &DualFunctional, x: &AElement) -> Rational {
    let (small, large) = if f.coeffs.len() <= x.len() {
        (&f.coeffs, x)
    } else {
        (x, &f.coeffs)
    };
    small
        .terms()
        .fold(Rational::zero(), |acc, (t, c)| acc + c * large.coeff(t))
}

/// All trees of degree at most `bound`, by increasing degree.
pub fn trees_up_to_degree(bound: usize) -> Vec<Tree> {
    (1..=bound + 1).flat_map(enumerate_trees).collect()
}

/// `m*(f) = Σ f(ab) a*⊗b*` over tree pairs with `deg a + deg b ≤ degree_bound`.
pub fn dual_coproduct(f: &DualFunctional, degree_bound: usize) -> LinComb<(Tree, Tree)> {
    let trees = trees_up_to_degree(degree_bound);
    let mut out = LinComb::zero();
    for a in &trees {
        for b in trees
            .iter()
            .filter(|b| a.degree() + b.degree() <= degree_bound)
        {
            out.add_term((a.clone(), b.clone()), pair(f, &gl_product(a, b)));
        }
    }
    out
}

/// `M⁰(f) = f ∘ M`. `M` raises degree by one, so the support drops by one.
pub fn m_dual(f: &DualFunctional) -> DualFunctional {
    let bound = f.max_degree.saturating_sub(1);
    let coeffs = LinComb::from_terms(trees_up_to_degree(bound).into_iter().map(|x| {
        let v = pair(f, &m_apply(&AElement::basis(x.clone())));
        (x, v)
    }));
    DualFunctional {
        coeffs,
        max_degree: bound,
    }
}

/// `f ∘ op` restricted to trees of degree at most `f.max_degree()`, for an
/// arbitrary linear `op` that need not respect the grading.
pub fn transpose_with(f: &DualFunctional, op: &dyn Fn(&AElement) -> AElement) -> DualFunctional {
    let coeffs = LinComb::from_terms(trees_up_to_degree(f.max_degree).into_iter().map(|x| {
        let v = pair(f, &op(&AElement::basis(x.clone())));
        (x, v)
    }));
    DualFunctional {
        coeffs,
        max_degree: f.max_degree,
    }
}

/// Convolution product `(fg)(x) = Σ f(x₁) g(x₂)` over `Δx`, evaluated on
/// trees of degree at most `degree_bound`.
pub fn convolution(f: &DualFunctional, g: &DualFunctional, degree_bound: usize) -> DualFunctional {
    let coeffs = LinComb::from_terms(trees_up_to_degree(degree_bound).into_iter().map(|x| {
        let v = gl_coproduct(&x)
            .terms()
            .fold(Rational::zero(), |acc, ((a, b), c)| {
                acc + c * f.coeffs.coeff(a) * g.coeffs.coeff(b)
            });
        (x, v)
    }));
    DualFunctional {
        coeffs,
        max_degree: degree_bound,
    }
}

/// One failure of the dual Hochschild identity, evaluated at `a ⊗ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualViolation {
    pub functional: Tree,
    pub left: Tree,
    pub right: Tree,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct DualCheckReport {
    pub degree_bound: usize,
    pub checked: usize,
    pub violations: Vec<DualViolation>,
}

impl DualCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Δ(M⁰f) = M⁰f ⊗ ε + (id ⊗ M⁰)(Δf)` for every dual basis
/// functional `f = t*` with `deg t ≤ degree_bound`, evaluated on every tree
/// pair `(a, b)` with `deg a + deg b ≤ degree_bound − 1`.
pub fn hochschild_check_dual(degree_bound: usize) -> DualCheckReport {
    hochschild_check_dual_with(degree_bound, &m_apply)
}

/// [`hochschild_check_dual`] with a replacement for `M`.
pub fn hochschild_check_dual_with(
    degree_bound: usize,
    m: &dyn Fn(&AElement) -> AElement,
) -> DualCheckReport {
    let trees = trees_up_to_degree(degree_bound);
    let products: BTreeMap<(Tree, Tree), AElement> = trees
        .iter()
        .flat_map(|a| {
            trees
                .iter()
                .filter(move |b| a.degree() + b.degree() <= degree_bound)
                .map(move |b| ((a.clone(), b.clone()), gl_product(a, b)))
        })
        .collect();
    let transposed: BTreeMap<Tree, DualFunctional> = trees
        .iter()
        .map(|t| {
            (
                t.clone(),
                transpose_with(&DualFunctional::basis_bounded(t, degree_bound), m),
            )
        })
        .collect();

    let mut report = DualCheckReport {
        degree_bound,
        ..Default::default()
    };
    let eval_bound = degree_bound.saturating_sub(1);
    for t in &trees {
        let m0 = &transposed[t];
        // Δ(t*) = Σ_{(c,d)} t*(cd) c*⊗d*
        let cop: Vec<(&Tree, &Tree, Rational)> = products
            .iter()
            .filter_map(|((c, d), prod)| {
                let v = prod.coeff(t);
                (!v.is_zero()).then_some((c, d, v))
            })
            .collect();
        for ((a, b), ab) in products
            .iter()
            .filter(|((a, b), _)| a.degree() + b.degree() <= eval_bound)
        {
            let lhs = pair(m0, ab);
            let mut rhs =
                pair(m0, &AElement::basis(a.clone())) * gl_counit(&AElement::basis(b.clone()));
            for (c, d, v) in &cop {
                if *c == a {
                    rhs += v * pair(&transposed[*d], &AElement::basis(b.clone()));
                }
            }
            report.checked += 1;
            if lhs != rhs {
                report.violations.push(DualViolation {
                    functional: t.clone(),
                    left: a.clone(),
                    right: b.clone(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    report
}

impl DualFunctional {
    fn basis_bounded(t: &Tree, max_degree: usize) -> Self {
        DualFunctional {
            coeffs: LinComb::basis(t.clone()),
            max_degree: max_degree.max(t.degree()),
        }
    }
}
