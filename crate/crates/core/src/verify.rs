//! Exhaustive low-degree verification of the algebraic identities.
//!
//! Each suite walks every basis element (or pair, or triple) below its
//! bounds and records one check per evaluated identity. Violations carry
//! both sides of the failed equation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Pow, Zero};
use serde_json::{json, Value};

use crate::ck_hopf::{
    delta_coproduct_closure, delta_label, hr_antipode, hr_coproduct, hr_coproduct_recursive,
    hr_coproduct_tree, hr_counit, hr_delta_membership, hr_l, hr_natural_growth, hr_product,
    hr_tensor_product, hr_unit, HrElement,
};
use crate::dual::{
    convolution, dual_coproduct, hochschild_check_dual, hochschild_check_dual_with, m_dual, pair,
    trees_up_to_degree, DualFunctional,
};
use crate::exactlin::{
    apply_left, apply_right, contract, format_rational, rank, reassociate, recombine, swap, tensor,
    Basis, LinComb, Membership, Rational,
};
use crate::gl_hopf::{
    gl_antipode, gl_coproduct, gl_coproduct_elem, gl_counit, gl_mul, gl_product, gl_tensor_product,
    gl_unit, primitive_basis, primitive_space_dimension, primitivity_defect, AElement,
};
use crate::lie_l1::{
    bracket, bracket_cut, cut_to_graft_ratio, gl_commutator, phi, phi_symmetric, psi, star,
    star_basis, star_by_cut_counting, z, L1Element, Z,
};
use crate::operators::{augmentation_part, m_apply, n_apply, n_of_unit, x_k};
use crate::trees::{
    admissible_cuts, b_minus, b_plus, canonicalize, count_trees_recurrence, enumerate_forests,
    enumerate_trees, natural_growth_terms, Forest, RawTree, Tree,
};

/// One failed identity instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub law: String,
    pub inputs: Vec<String>,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LawTally {
    pub checked: usize,
    pub failed: usize,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub max_degree: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub laws: BTreeMap<String, LawTally>,
}

impl Report {
    pub fn new(suite: impl Into<String>, max_degree: usize) -> Self {
        Report {
            suite: suite.into(),
            max_degree,
            checked: 0,
            violations: Vec::new(),
            laws: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether every law whose name starts with `prefix` was checked at
    /// least once and never failed.
    pub fn laws_pass(&self, prefix: &str) -> bool {
        let mut matched = self
            .laws
            .iter()
            .filter(|(name, _)| name.starts_with(prefix))
            .peekable();
        matched.peek().is_some() && matched.all(|(_, t)| t.checked > 0 && t.failed == 0)
    }

    pub fn tally(&self, law: &str) -> LawTally {
        self.laws.get(law).copied().unwrap_or_default()
    }

    fn record(&mut self, law: &str, ok: bool, violation: impl FnOnce() -> Violation) {
        self.checked += 1;
        let tally = self.laws.entry(law.to_string()).or_default();
        tally.checked += 1;
        if !ok {
            tally.failed += 1;
            self.violations.push(violation());
        }
    }

    pub fn check_comb<K: Basis>(
        &mut self,
        law: &str,
        inputs: &[String],
        lhs: &LinComb<K>,
        rhs: &LinComb<K>,
    ) {
        self.record(law, lhs == rhs, || Violation {
            law: law.to_string(),
            inputs: inputs.to_vec(),
            lhs: lhs.to_json(),
            rhs: rhs.to_json(),
        });
    }

    pub fn check_value(&mut self, law: &str, inputs: &[String], lhs: Value, rhs: Value) {
        let ok = lhs == rhs;
        self.record(law, ok, || Violation {
            law: law.to_string(),
            inputs: inputs.to_vec(),
            lhs,
            rhs,
        });
    }

    pub fn check_rational(&mut self, law: &str, inputs: &[String], lhs: &Rational, rhs: &Rational) {
        self.check_value(
            law,
            inputs,
            json!(format_rational(lhs)),
            json!(format_rational(rhs)),
        );
    }

    /// A predicate check; `detail` is reported as the left-hand side on failure.
    pub fn check_that(
        &mut self,
        law: &str,
        inputs: &[String],
        ok: bool,
        detail: impl FnOnce() -> Value,
    ) {
        self.record(law, ok, || Violation {
            law: law.to_string(),
            inputs: inputs.to_vec(),
            lhs: detail(),
            rhs: json!(true),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        for (law, t) in other.laws {
            let entry = self.laws.entry(law).or_default();
            entry.checked += t.checked;
            entry.failed += t.failed;
        }
    }

    /// `{"suite", "maxDegree", "checked", "violations": [{"law", "inputs", "lhs", "rhs"}]}`
    pub fn to_json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| json!({"law": v.law, "inputs": v.inputs, "lhs": v.lhs, "rhs": v.rhs}))
            .collect();
        json!({
            "suite": self.suite,
            "maxDegree": self.max_degree,
            "checked": self.checked,
            "violations": violations,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} (max degree {}): {} checks, {} violations",
            self.suite,
            self.max_degree,
            self.checked,
            self.violations.len()
        );
        for (law, t) in &self.laws {
            let status = if t.failed == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {law}: {} checked, {} failed",
                t.checked, t.failed
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "violation {} at [{}]: lhs {} rhs {}",
                v.law,
                v.inputs.join(", "),
                v.lhs,
                v.rhs
            );
        }
        out
    }
}

fn trees_up_to_size(n: usize) -> Vec<Tree> {
    (1..=n).flat_map(enumerate_trees).collect()
}

fn forests_up_to_weight(w: usize) -> Vec<Forest> {
    (0..=w).flat_map(enumerate_forests).collect()
}

fn enc<B: Basis>(b: &B) -> String {
    b.encode()
}

fn int(n: u128) -> Rational {
    Rational::from_integer(n.into())
}

// ---------------------------------------------------------------- trees

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreesBounds {
    /// Counts compared against the recurrence for sizes `1..=count_max`.
    pub count_max: usize,
    pub tree_size: usize,
    pub forest_weight: usize,
}

impl TreesBounds {
    pub fn from_max_degree(d: usize) -> Self {
        TreesBounds {
            count_max: (2 * d).max(1),
            tree_size: d + 3,
            forest_weight: d + 2,
        }
    }
}

// Admissible cut sets by brute force over all subsets of non-root vertices.
fn brute_force_cut_sets(t: &Tree) -> Vec<Vec<usize>> {
    let parents = t.parents();
    let is_ancestor = |a: usize, mut v: usize| {
        while let Some(p) = parents[v] {
            if p == a {
                return true;
            }
            v = p;
        }
        false
    };
    let n = t.size();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << (n - 1)) {
        let set: Vec<usize> = (1..n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let antichain = set
            .iter()
            .all(|&a| set.iter().all(|&b| a == b || !is_ancestor(a, b)));
        if antichain {
            out.push(set);
        }
    }
    out.sort();
    out
}

// Reverses and rotates child lists at every level.
fn scramble(raw: &RawTree, salt: usize) -> RawTree {
    let mut children: Vec<RawTree> = raw.children.iter().map(|c| scramble(c, salt + 1)).collect();
    children.reverse();
    if !children.is_empty() {
        let k = salt % children.len();
        children.rotate_left(k);
    }
    RawTree { children }
}

pub fn suite_trees(b: TreesBounds, max_degree: usize) -> Report {
    let mut r = Report::new("trees", max_degree);
    for n in 1..=b.count_max {
        let enumerated = enumerate_trees(n).len() as u128;
        r.check_value(
            "trees.count_matches_recurrence",
            &[n.to_string()],
            json!(enumerated.to_string()),
            json!(count_trees_recurrence(n).to_string()),
        );
    }
    for t in trees_up_to_size(b.tree_size) {
        let inputs = [enc(&t)];
        r.check_value(
            "trees.bplus_bminus_identity",
            &inputs,
            json!(enc(&b_plus(&b_minus(&t)))),
            json!(enc(&t)),
        );
        let parents = t.parents();
        let cuts = admissible_cuts(&t);
        for cut in &cuts {
            r.check_that("trees.cut_weight_conservation", &inputs, cut.branch.weight() + cut.trunk.size() == t.size(), || {
                json!({"edges": cut.edges, "branch": enc(&cut.branch), "trunk": enc(&cut.trunk)})
            });
            let admissible = cut.edges.iter().all(|&v| {
                let mut u = v;
                while let Some(p) = parents[u] {
                    if cut.edges.contains(&p) {
                        return false;
                    }
                    u = p;
                }
                true
            });
            r.check_that(
                "trees.cut_admissibility",
                &inputs,
                admissible,
                || json!({"edges": cut.edges}),
            );
        }
        let edges: Vec<Vec<usize>> = cuts.iter().map(|c| c.edges.clone()).collect();
        r.check_value(
            "trees.cuts_match_brute_force",
            &inputs,
            json!(edges),
            json!(brute_force_cut_sets(&t)),
        );
        r.check_value(
            "trees.growth_term_count",
            &inputs,
            json!(natural_growth_terms(&t).len()),
            json!(t.size()),
        );
        let raw = t.to_raw();
        for salt in 0..3 {
            r.check_value(
                "trees.canonical_form_invariance",
                &inputs,
                json!(enc(&canonicalize(&scramble(&raw, salt)))),
                json!(enc(&t)),
            );
        }
        r.check_value(
            "trees.canonical_idempotent",
            &inputs,
            json!(enc(&canonicalize(&raw))),
            json!(enc(&t)),
        );
        r.check_value(
            "trees.parse_render_round_trip",
            &inputs,
            json!(Tree::parse(t.encoding())
                .map(|x| enc(&x))
                .unwrap_or_default()),
            json!(enc(&t)),
        );
    }
    for f in forests_up_to_weight(b.forest_weight) {
        r.check_value(
            "trees.bminus_bplus_identity",
            &[enc(&f)],
            json!(enc(&b_minus(&b_plus(&f)))),
            json!(enc(&f)),
        );
    }
    for w in 0..=b.forest_weight {
        let images: BTreeSet<Tree> = enumerate_forests(w).iter().map(b_plus).collect();
        let forests = enumerate_forests(w).len();
        let trees: BTreeSet<Tree> = enumerate_trees(w + 1).into_iter().collect();
        r.check_that(
            "trees.bplus_bijection",
            &[w.to_string()],
            images == trees && forests == trees.len(),
            || json!({"forests": forests, "images": images.len(), "trees": trees.len()}),
        );
    }
    r
}

// ---------------------------------------------------------------- H_R

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HrBounds {
    /// Coassociativity, counit, multiplicativity, Hochschild, Leibniz, grading.
    pub axioms_weight: usize,
    pub antipode_weight: usize,
    /// Trees on which the cut and recursive coproducts are compared.
    pub recursive_size: usize,
    /// `δ_k` coproduct closure for `k ≤ delta_weight`.
    pub delta_weight: usize,
}

impl HrBounds {
    pub fn from_max_degree(d: usize) -> Self {
        HrBounds {
            axioms_weight: d + 1,
            antipode_weight: d,
            recursive_size: d + 2,
            delta_weight: d.saturating_sub(1).max(1),
        }
    }
}

pub fn suite_hr(b: HrBounds, max_degree: usize) -> Report {
    let mut r = Report::new("hr", max_degree);
    let forests = forests_up_to_weight(b.axioms_weight);
    let basis = |f: &Forest| HrElement::basis(f.clone());

    for f in &forests {
        let inputs = [enc(f)];
        let x = basis(f);
        let d = hr_coproduct(&x);

        let left = apply_left(&d, |a| hr_coproduct(&basis(a)));
        let right = reassociate(&apply_right(&d, |a| hr_coproduct(&basis(a))));
        r.check_comb("hr.coassociativity", &inputs, &left, &right);

        let counit_left = contract(&d, |a, c| basis(c).scale(&hr_counit(&basis(a))));
        let counit_right = contract(&d, |a, c| basis(a).scale(&hr_counit(&basis(c))));
        r.check_comb("hr.counit_left", &inputs, &counit_left, &x);
        r.check_comb("hr.counit_right", &inputs, &counit_right, &x);

        if f.weight() <= b.antipode_weight {
            let eps = hr_unit().scale(&hr_counit(&x));
            let s_left = contract(&d, |a, c| hr_product(&hr_antipode(&basis(a)), &basis(c)));
            let s_right = contract(&d, |a, c| hr_product(&basis(a), &hr_antipode(&basis(c))));
            r.check_comb("hr.antipode_left", &inputs, &s_left, &eps);
            r.check_comb("hr.antipode_right", &inputs, &s_right, &eps);
        }

        // Δ∘L = L⊗1 + (id⊗L)∘Δ, with L⊗1 read as x ↦ L(x)⊗1
        let lx = hr_l(&x);
        let mut rhs = tensor(&lx, &hr_unit());
        rhs += &apply_right(&d, |a| hr_l(&basis(a)));
        r.check_comb("hr.hochschild_cocycle", &inputs, &hr_coproduct(&lx), &rhs);

        let w = f.weight();
        r.check_that(
            "hr.grading_coproduct",
            &inputs,
            d.keys().all(|(a, c)| a.weight() + c.weight() == w),
            || d.to_json(),
        );
        let s = hr_antipode(&x);
        r.check_that(
            "hr.grading_antipode",
            &inputs,
            s.keys().all(|g| g.weight() == w),
            || s.to_json(),
        );
        let n = hr_natural_growth(&x);
        r.check_that(
            "hr.grading_growth",
            &inputs,
            n.keys().all(|g| g.weight() == w + 1),
            || n.to_json(),
        );
    }

    for (i, f) in forests.iter().enumerate() {
        for g in &forests[i..] {
            if f.weight() + g.weight() > b.axioms_weight {
                continue;
            }
            let inputs = [enc(f), enc(g)];
            let (x, y) = (basis(f), basis(g));
            let xy = hr_product(&x, &y);
            r.check_comb(
                "hr.coproduct_multiplicative",
                &inputs,
                &hr_coproduct(&xy),
                &hr_tensor_product(&hr_coproduct(&x), &hr_coproduct(&y)),
            );
            let leibniz =
                hr_product(&hr_natural_growth(&x), &y) + hr_product(&x, &hr_natural_growth(&y));
            r.check_comb(
                "hr.growth_leibniz",
                &inputs,
                &hr_natural_growth(&xy),
                &leibniz,
            );
            r.check_comb("hr.product_commutative", &inputs, &xy, &hr_product(&y, &x));
        }
    }

    for t in trees_up_to_size(b.recursive_size) {
        r.check_comb(
            "hr.coproduct_recursive_matches_cuts",
            &[enc(&t)],
            &hr_coproduct_recursive(&t),
            &hr_coproduct_tree(&t),
        );
    }

    let unit_case = hr_coproduct(&hr_l(&hr_unit()));
    let e = HrElement::basis(Forest::single(Tree::leaf()));
    r.check_comb(
        "hr.hochschild_unit",
        &["1".into()],
        &unit_case,
        &(tensor(&e, &hr_unit()) + tensor(&hr_unit(), &e)),
    );

    let cherry = HrElement::basis(Forest::single(Tree::corolla(2)));
    let dc = hr_coproduct(&cherry);
    r.check_that(
        "hr.non_cocommutative_witness",
        &[enc(&Tree::corolla(2))],
        swap(&dc) != dc,
        || dc.to_json(),
    );

    delta_checks(&mut r, b.delta_weight);
    r
}

fn delta_checks(r: &mut Report, max_k: usize) {
    for k in 1..=max_k {
        let closure = delta_coproduct_closure(k).expect("k ≥ 1");
        for c in closure {
            let inputs = [
                format!("δ{k}"),
                format!("bidegree ({}, {})", c.left_weight, c.right_weight),
            ];
            match &c.membership {
                Membership::InSpan(coords) => {
                    // re-substitute the coordinates into the generators
                    let gens: Vec<_> = c
                        .generators
                        .iter()
                        .map(|(p, q)| tensor(&delta_monomial(p), &delta_monomial(q)))
                        .collect();
                    r.check_comb(
                        "hr.delta_coproduct_closure",
                        &inputs,
                        &recombine(&gens, coords),
                        &c.component,
                    );
                }
                Membership::NotInSpan { rank } => {
                    let labels: Vec<String> = c
                        .generators
                        .iter()
                        .map(|(p, q)| format!("{}⊗{}", delta_label(p), delta_label(q)))
                        .collect();
                    r.check_that("hr.delta_coproduct_closure", &inputs, false, || {
                        json!({"component": c.component.to_json(), "rank": rank, "generators": labels})
                    });
                }
            }
        }
    }
    let cherry = HrElement::basis(Forest::single(Tree::corolla(2)));
    let outcome = hr_delta_membership(&cherry, 3).expect("homogeneous");
    r.check_value(
        "hr.delta_negative_control",
        &[enc(&Tree::corolla(2))],
        json!(format!("{outcome:?}")),
        json!(format!("{:?}", Membership::NotInSpan { rank: 3 })),
    );
}

fn delta_monomial(parts: &[usize]) -> HrElement {
    parts.iter().fold(hr_unit(), |acc, &k| {
        hr_product(&acc, &crate::ck_hopf::hr_delta(k).expect("positive part"))
    })
}

// ---------------------------------------------------------------- A

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlBounds {
    /// Coassociativity, counit, antipode, multiplicativity, grading, mass.
    pub axioms_degree: usize,
    /// Associativity on triples with total size at most this.
    pub assoc_size: usize,
    pub cocommutative_size: usize,
    pub primitive_degree: usize,
}

impl GlBounds {
    pub fn from_max_degree(d: usize) -> Self {
        GlBounds {
            axioms_degree: d + 1,
            assoc_size: d + 3,
            cocommutative_size: d + 2,
            primitive_degree: d + 1,
        }
    }
}

fn check_product_shape(r: &mut Report, a: &Tree, b: &Tree, prod: &AElement) {
    let inputs = [enc(a), enc(b)];
    let expected = int(b.size() as u128).pow(a.fertility() as u32);
    r.check_rational("gl.product_multiplicity", &inputs, &prod.mass(), &expected);
    let deg = a.degree() + b.degree();
    r.check_that(
        "gl.product_grading",
        &inputs,
        prod.keys().all(|t| t.degree() == deg),
        || prod.to_json(),
    );
}

pub fn suite_gl(b: GlBounds, max_degree: usize) -> Report {
    let mut r = Report::new("gl", max_degree);
    let trees = trees_up_to_degree(b.axioms_degree);
    let basis = |t: &Tree| AElement::basis(t.clone());

    for t in &trees {
        let inputs = [enc(t)];
        let x = basis(t);
        let d = gl_coproduct(t);

        let left = apply_left(&d, gl_coproduct);
        let right = reassociate(&apply_right(&d, gl_coproduct));
        r.check_comb("gl.coassociativity", &inputs, &left, &right);

        let counit_left = contract(&d, |a, c| basis(c).scale(&gl_counit(&basis(a))));
        let counit_right = contract(&d, |a, c| basis(a).scale(&gl_counit(&basis(c))));
        r.check_comb("gl.counit_left", &inputs, &counit_left, &x);
        r.check_comb("gl.counit_right", &inputs, &counit_right, &x);

        let eps = gl_unit().scale(&gl_counit(&x));
        let s_left = contract(&d, |a, c| gl_mul(&gl_antipode(&basis(a)), &basis(c)));
        let s_right = contract(&d, |a, c| gl_mul(&basis(a), &gl_antipode(&basis(c))));
        r.check_comb("gl.antipode_left", &inputs, &s_left, &eps);
        r.check_comb("gl.antipode_right", &inputs, &s_right, &eps);

        let expected = int(1u128 << t.fertility());
        r.check_rational("gl.coproduct_multiplicity", &inputs, &d.mass(), &expected);
        r.check_that(
            "gl.coproduct_grading",
            &inputs,
            d.keys().all(|(a, c)| a.degree() + c.degree() == t.degree()),
            || d.to_json(),
        );

        r.check_comb("gl.unit_left", &inputs, &gl_product(&Tree::leaf(), t), &x);
        r.check_comb("gl.unit_right", &inputs, &gl_product(t, &Tree::leaf()), &x);
    }

    for t in trees_up_to_size(b.cocommutative_size) {
        let d = gl_coproduct(&t);
        r.check_comb("gl.cocommutativity", &[enc(&t)], &swap(&d), &d);
    }

    for a in &trees {
        for c in trees
            .iter()
            .filter(|c| a.degree() + c.degree() <= b.axioms_degree)
        {
            let inputs = [enc(a), enc(c)];
            let prod = gl_product(a, c);
            check_product_shape(&mut r, a, c, &prod);
            let lhs = gl_coproduct_elem(&prod);
            let rhs = gl_tensor_product(&gl_coproduct(a), &gl_coproduct(c));
            r.check_comb("gl.coproduct_multiplicative", &inputs, &lhs, &rhs);
        }
    }

    let small = trees_up_to_size(b.assoc_size.saturating_sub(2));
    for a in &small {
        for c in &small {
            for e in &small {
                if a.size() + c.size() + e.size() > b.assoc_size {
                    continue;
                }
                let ac = gl_product(a, c);
                let ce = gl_product(c, e);
                let lhs = gl_mul(&ac, &basis(e));
                let rhs = gl_mul(&basis(a), &ce);
                r.check_comb("gl.associativity", &[enc(a), enc(c), enc(e)], &lhs, &rhs);
            }
        }
    }

    let witness = trees_up_to_degree(3.min(b.axioms_degree))
        .into_iter()
        .find_map(|a| {
            trees_up_to_degree(3.min(b.axioms_degree))
                .into_iter()
                .find(|c| gl_product(&a, c) != gl_product(c, &a))
                .map(|c| (a, c))
        });
    r.check_that("gl.non_commutative_witness", &[], witness.is_some(), || {
        json!("no non-commuting pair found")
    });

    for n in 1..=b.primitive_degree {
        let basis_trees = primitive_basis(n);
        r.check_value(
            "gl.primitive_dimension",
            &[n.to_string()],
            json!(primitive_space_dimension(n)),
            json!(basis_trees.len()),
        );
        r.check_value(
            "gl.primitive_count_matches_tree_count",
            &[n.to_string()],
            json!(basis_trees.len().to_string()),
            json!(count_trees_recurrence(n).to_string()),
        );
        for p in basis_trees {
            let defect = primitivity_defect(&basis(&p));
            r.check_comb(
                "gl.primitive_basis_is_primitive",
                &[enc(&p)],
                &defect,
                &LinComb::zero(),
            );
        }
    }
    r
}

// ---------------------------------------------------------------- L¹

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LieBounds {
    /// Pairs and triples with total size at most this.
    pub total_size: usize,
    /// φ∘ψ and ψ∘φ on bases up to this size.
    pub inverse_size: usize,
}

impl LieBounds {
    pub fn from_max_degree(d: usize) -> Self {
        LieBounds {
            total_size: d + 1,
            inverse_size: d + 2,
        }
    }
}

fn rescale_graft_to_cuts(t1: &Tree, t2: &Tree) -> L1Element {
    star_basis(t1, t2).map_linear(|Z(t)| LinComb::term(Z(t.clone()), cut_to_graft_ratio(t1, t2, t)))
}

pub fn suite_lie(b: LieBounds, max_degree: usize) -> Report {
    let mut r = Report::new("lie", max_degree);

    for t in trees_up_to_size(b.inverse_size) {
        if t.fertility() == 1 {
            let x = AElement::basis(t.clone());
            let back = phi(&x).map(|y| psi(&y));
            r.check_value(
                "lie.psi_after_phi",
                &[enc(&t)],
                back.map(|y| y.to_json())
                    .unwrap_or_else(|e| json!(e.to_string())),
                x.to_json(),
            );
        }
        let zt = z(&t);
        let back = phi(&psi(&zt));
        r.check_value(
            "lie.phi_after_psi",
            &[enc(&t)],
            back.map(|y| y.to_json())
                .unwrap_or_else(|e| json!(e.to_string())),
            zt.to_json(),
        );
    }

    let trees = trees_up_to_size(b.total_size.saturating_sub(1));
    for t1 in &trees {
        for t2 in trees
            .iter()
            .filter(|t2| t1.size() + t2.size() <= b.total_size)
        {
            let inputs = [enc(t1), enc(t2)];
            let cut = star_by_cut_counting(t1, t2, b.total_size);
            r.check_comb(
                "lie.star_cut_count_equals_rescaled_graft",
                &inputs,
                &cut,
                &rescale_graft_to_cuts(t1, t2),
            );
            let (a, c) = (z(t1), z(t2));
            r.check_comb(
                "lie.bracket_antisymmetry",
                &inputs,
                &bracket(&a, &c),
                &-bracket(&c, &a),
            );
        }
    }

    let primitives: Vec<Tree> = trees_up_to_size(b.total_size.saturating_sub(2))
        .into_iter()
        .filter(|t| t.fertility() == 1)
        .collect();
    for t1 in &primitives {
        for t2 in primitives
            .iter()
            .filter(|t2| t1.size() + t2.size() <= b.total_size)
        {
            let inputs = [enc(t1), enc(t2)];
            let (x, y) = (AElement::basis(t1.clone()), AElement::basis(t2.clone()));
            let comm = gl_commutator(&x, &y);
            r.check_that(
                "lie.commutator_is_primitive_supported",
                &inputs,
                comm.keys().all(|t| t.fertility() == 1),
                || comm.to_json(),
            );
            let lhs = phi(&comm);
            let rhs = bracket(&phi(&x).expect("primitive"), &phi(&y).expect("primitive"));
            r.check_value(
                "lie.phi_is_lie_morphism",
                &inputs,
                lhs.map(|l| l.to_json())
                    .unwrap_or_else(|e| json!(e.to_string())),
                rhs.to_json(),
            );
            let lhs = phi_symmetric(&comm);
            let rhs = bracket_cut(
                &phi_symmetric(&x).expect("primitive"),
                &phi_symmetric(&y).expect("primitive"),
            );
            r.check_value(
                "lie.symmetric_phi_is_lie_morphism_for_cut_bracket",
                &inputs,
                lhs.map(|l| l.to_json())
                    .unwrap_or_else(|e| json!(e.to_string())),
                rhs.to_json(),
            );
        }
    }

    for t1 in &trees {
        for t2 in &trees {
            for t3 in &trees {
                if t1.size() + t2.size() + t3.size() > b.total_size {
                    continue;
                }
                let inputs = [enc(t1), enc(t2), enc(t3)];
                let (a, c, e) = (z(t1), z(t2), z(t3));
                let jacobi = bracket(&bracket(&a, &c), &e)
                    + bracket(&bracket(&c, &e), &a)
                    + bracket(&bracket(&e, &a), &c);
                r.check_comb("lie.jacobi", &inputs, &jacobi, &LinComb::zero());
                let jacobi_cut = bracket_cut(&bracket_cut(&a, &c), &e)
                    + bracket_cut(&bracket_cut(&c, &e), &a)
                    + bracket_cut(&bracket_cut(&e, &a), &c);
                r.check_comb(
                    "lie.jacobi_cut_bracket",
                    &inputs,
                    &jacobi_cut,
                    &LinComb::zero(),
                );
            }
        }
    }

    let e = z(&Tree::leaf());
    let left = star(&star(&e, &e), &e);
    let right = star(&e, &star(&e, &e));
    r.check_that(
        "lie.star_non_associative_witness",
        &vec!["[]".to_string(); 3],
        left != right,
        || left.to_json(),
    );
    r
}

/// The literal claim that the grafting star and the cut-counting star agree
/// on every basis pair with total size at most `total_size`. This fails on
/// trees with nontrivial symmetry; see [`suite_lie`] for the relation that
/// does hold.
pub fn star_graft_vs_cut_count(total_size: usize) -> Report {
    let mut r = Report::new("lie-literal", total_size);
    let trees = trees_up_to_size(total_size.saturating_sub(1));
    for t1 in &trees {
        for t2 in trees
            .iter()
            .filter(|t2| t1.size() + t2.size() <= total_size)
        {
            r.check_comb(
                "lie.star_graft_equals_cut_count",
                &[enc(t1), enc(t2)],
                &star_basis(t1, t2),
                &star_by_cut_counting(t1, t2, total_size),
            );
        }
    }
    r
}

// ---------------------------------------------------------------- N, M, x_k

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorBounds {
    /// Basis elements and pairs with total degree at most this.
    pub degree: usize,
    /// `N^k(e)` identities for `k ≤ power_max`.
    pub power_max: usize,
    /// `x_m x_n = x_{m+n}` for `m + n ≤ xk_product_total`.
    pub xk_product_total: usize,
    /// Coproduct, counit, antipode, independence of `x_m` for `m ≤ xk_max`.
    pub xk_max: usize,
}

impl OperatorBounds {
    pub fn from_max_degree(d: usize) -> Self {
        OperatorBounds {
            degree: d,
            power_max: d.saturating_sub(1).max(1),
            xk_product_total: d + 2,
            xk_max: d + 1,
        }
    }
}

fn binomial(m: usize, i: usize) -> u128 {
    (0..i).fold(1u128, |acc, j| acc * (m - j) as u128 / (j + 1) as u128)
}

pub fn suite_operators(b: OperatorBounds, max_degree: usize) -> Report {
    let mut r = Report::new("operators", max_degree);
    let trees = trees_up_to_degree(b.degree);
    let basis = |t: &Tree| AElement::basis(t.clone());
    let ne = n_of_unit();
    let e = gl_unit();

    let d_ne = gl_coproduct_elem(&ne);
    r.check_comb(
        "ops.n_of_unit_primitive",
        &[enc(&Tree::chain(2))],
        &d_ne,
        &(tensor(&e, &ne) + tensor(&ne, &e)),
    );

    for t in &trees {
        let inputs = [enc(t)];
        let x = basis(t);
        let nx = n_apply(&x);
        r.check_comb(
            "ops.n_is_left_mult_by_n_of_unit",
            &inputs,
            &gl_mul(&ne, &x),
            &nx,
        );

        let dn = gl_coproduct_elem(&nx);
        let d = gl_coproduct(t);
        let mut rhs = apply_right(&d, |a| n_apply(&basis(a)));
        rhs += &apply_left(&d, |a| n_apply(&basis(a)));
        r.check_comb("ops.n_coderivation", &inputs, &dn, &rhs);

        for k in 1..=b.power_max {
            let lhs = gl_mul(&x_k(k), &x);
            let rhs = (0..k).fold(x.clone(), |acc, _| n_apply(&acc));
            r.check_comb("ops.powers_of_n", &[format!("k={k}"), enc(t)], &lhs, &rhs);
        }

        let aug = augmentation_part(&x);
        let mx = m_apply(&x);
        r.check_comb("ops.m_closed_form", &inputs, &mx, &gl_mul(&aug, &ne));

        let dm = gl_coproduct_elem(&mx);
        let mut rhs = apply_right(&d, |a| m_apply(&basis(a)));
        rhs += &apply_left(&d, |a| m_apply(&basis(a)));
        rhs += &tensor(&aug, &ne);
        rhs += &tensor(&ne, &aug);
        r.check_comb("ops.m_coproduct", &inputs, &dm, &rhs);

        r.check_that(
            "ops.grading",
            &inputs,
            nx.keys()
                .chain(mx.keys())
                .all(|s| s.degree() == t.degree() + 1),
            || json!({"N": nx.to_json(), "M": mx.to_json()}),
        );
    }

    for a in &trees {
        for c in trees.iter().filter(|c| a.degree() + c.degree() <= b.degree) {
            let inputs = [enc(a), enc(c)];
            let (x, y) = (basis(a), basis(c));
            let xy = gl_product(a, c);
            r.check_comb(
                "ops.n_of_product",
                &inputs,
                &n_apply(&xy),
                &gl_mul(&n_apply(&x), &y),
            );
            let mut rhs = gl_mul(&x, &m_apply(&y));
            rhs += &m_apply(&x).scale(&gl_counit(&y));
            r.check_comb("ops.m_twisted_derivation", &inputs, &m_apply(&xy), &rhs);
        }
    }

    for k in 1..=b.power_max {
        let inputs = [format!("k={k}")];
        let next = x_k(k + 1);
        r.check_comb("ops.xk_step_right", &inputs, &gl_mul(&x_k(k), &ne), &next);
        r.check_comb("ops.xk_step_left", &inputs, &gl_mul(&ne, &x_k(k)), &next);
    }

    for m in 0..=b.xk_product_total {
        for n in 0..=(b.xk_product_total - m) {
            let inputs = [format!("m={m}"), format!("n={n}")];
            let (xm, xn) = (x_k(m), x_k(n));
            let target = x_k(m + n);
            r.check_comb("ops.xk_product", &inputs, &gl_mul(&xm, &xn), &target);
            r.check_comb("ops.xk_commute", &inputs, &gl_mul(&xn, &xm), &target);
        }
    }

    r.check_comb("ops.x0_is_unit", &["m=0".into()], &x_k(0), &e);
    for m in 0..=b.xk_max {
        let inputs = [format!("m={m}")];
        let xm = x_k(m);
        let expected = if m == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
        r.check_rational("ops.xk_counit", &inputs, &gl_counit(&xm), &expected);

        let mut binomial_sum = LinComb::zero();
        for i in 0..=m {
            binomial_sum.add_scaled(&tensor(&x_k(i), &x_k(m - i)), &int(binomial(m, i)));
        }
        r.check_comb(
            "ops.xk_binomial_coproduct",
            &inputs,
            &gl_coproduct_elem(&xm),
            &binomial_sum,
        );

        let sign = if m % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        r.check_comb(
            "ops.xk_antipode_sign",
            &inputs,
            &gl_antipode(&xm),
            &xm.scale(&sign),
        );
    }
    let xs: Vec<AElement> = (0..=b.xk_max).map(x_k).collect();
    r.check_value(
        "ops.xk_linear_independence",
        &[format!("m≤{}", b.xk_max)],
        json!(rank(&xs)),
        json!(xs.len()),
    );
    r
}

// ---------------------------------------------------------------- dual

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualBounds {
    pub degree_bound: usize,
}

impl DualBounds {
    pub fn from_max_degree(d: usize) -> Self {
        DualBounds {
            degree_bound: d.max(1),
        }
    }
}

pub type LinearMap = Box<dyn Fn(&AElement) -> AElement>;

/// A perturbation of `M(ℓ2)` is only visible inside a product `a·ℓ2` paired
/// against a degree 3 functional, so mutation checks run at least at this bound.
pub const MIN_MUTATION_BOUND: usize = 4;

/// Single-image perturbations of `M` used as mutation controls: for each
/// tree `t` of degree below `degree_bound`, add a chain of degree
/// `deg t + 1` to `M(t)`, and for `t ≠ e` also double `M(t)`.
pub fn m_mutations(degree_bound: usize) -> Vec<(String, LinearMap)> {
    let mut out: Vec<(String, LinearMap)> = Vec::new();
    for t in trees_up_to_degree(degree_bound.saturating_sub(1)) {
        let extra = Tree::chain(t.size() + 1);
        let label = format!("M({t}) += {extra}");
        let target = t.clone();
        out.push((
            label,
            Box::new(move |x: &AElement| {
                let mut y = m_apply(x);
                y.add_scaled(&AElement::basis(extra.clone()), &x.coeff(&target));
                y
            }),
        ));
        if !t.is_leaf() {
            let label = format!("M({t}) *= 2");
            out.push((
                label,
                Box::new(move |x: &AElement| {
                    let mut y = m_apply(x);
                    let image = m_apply(&AElement::basis(t.clone()));
                    y.add_scaled(&image, &x.coeff(&t));
                    y
                }),
            ));
        }
    }
    out
}

pub fn suite_dual(b: DualBounds, max_degree: usize) -> Report {
    let mut r = Report::new("dual", max_degree);
    let bound = b.degree_bound;
    let trees = trees_up_to_degree(bound);

    let hoch = hochschild_check_dual(bound);
    let violations: BTreeSet<(Tree, Tree, Tree)> = hoch
        .violations
        .iter()
        .map(|v| (v.functional.clone(), v.left.clone(), v.right.clone()))
        .collect();
    for t in &trees {
        for a in &trees {
            for c in trees.iter().filter(|c| a.degree() + c.degree() < bound) {
                let key = (t.clone(), a.clone(), c.clone());
                let found = hoch
                    .violations
                    .iter()
                    .find(|v| (v.functional.clone(), v.left.clone(), v.right.clone()) == key);
                r.check_that(
                    "dual.hochschild_cocycle",
                    &[format!("{t}*"), enc(a), enc(c)],
                    !violations.contains(&key),
                    || json!({"lhs": found.map(|v| format_rational(&v.lhs)), "rhs": found.map(|v| format_rational(&v.rhs))}),
                );
            }
        }
    }

    for t in &trees {
        let f = DualFunctional::basis(t);
        let mf = m_dual(&f);
        for x in trees.iter().filter(|x| x.degree() < bound) {
            let bx = AElement::basis(x.clone());
            r.check_rational(
                "dual.transpose_coherence",
                &[format!("{t}*"), enc(x)],
                &pair(&mf, &bx),
                &pair(&f, &m_apply(&bx)),
            );
        }
        let cop = dual_coproduct(&f, bound);
        for x in &trees {
            for y in trees.iter().filter(|y| x.degree() + y.degree() <= bound) {
                // f(xy) against Σ c_{a,b} a*(x) b*(y)
                let via_cop = cop.terms().fold(Rational::zero(), |acc, ((a, c), v)| {
                    if a == x && c == y {
                        acc + v
                    } else {
                        acc
                    }
                });
                r.check_rational(
                    "dual.coproduct_transposes_product",
                    &[format!("{t}*"), enc(x), enc(y)],
                    &pair(&f, &gl_product(x, y)),
                    &via_cop,
                );
            }
        }
    }

    for (i, a) in trees.iter().enumerate() {
        for c in &trees[i + 1..] {
            let (fa, fc) = (DualFunctional::basis(a), DualFunctional::basis(c));
            r.check_comb(
                "dual.convolution_commutative",
                &[format!("{a}*"), format!("{c}*")],
                convolution(&fa, &fc, bound).coeffs(),
                convolution(&fc, &fa, bound).coeffs(),
            );
        }
    }

    let mutation_bound = bound.max(MIN_MUTATION_BOUND);
    for (label, op) in m_mutations(mutation_bound) {
        let report = hochschild_check_dual_with(mutation_bound, op.as_ref());
        r.check_that(
            "dual.mutation_detected",
            &[label],
            !report.violations.is_empty(),
            || json!({"checked": report.checked, "violations": 0}),
        );
    }
    r
}

// ---------------------------------------------------------------- driver

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Trees,
    Hr,
    Gl,
    Lie,
    Operators,
    Dual,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Trees => "trees",
            Suite::Hr => "hr",
            Suite::Gl => "gl",
            Suite::Lie => "lie",
            Suite::Operators => "operators",
            Suite::Dual => "dual",
            Suite::All => "all",
        }
    }
}

/// Runs a suite with every bound derived from `max_degree`.
pub fn run_suite(suite: Suite, max_degree: usize) -> Report {
    let d = max_degree;
    match suite {
        Suite::Trees => suite_trees(TreesBounds::from_max_degree(d), d),
        Suite::Hr => suite_hr(HrBounds::from_max_degree(d), d),
        Suite::Gl => suite_gl(GlBounds::from_max_degree(d), d),
        Suite::Lie => suite_lie(LieBounds::from_max_degree(d), d),
        Suite::Operators => suite_operators(OperatorBounds::from_max_degree(d), d),
        Suite::Dual => suite_dual(DualBounds::from_max_degree(d), d),
        Suite::All => {
            let mut all = Report::new("all", d);
            for s in [
                Suite::Trees,
                Suite::Hr,
                Suite::Gl,
                Suite::Lie,
                Suite::Operators,
                Suite::Dual,
            ] {
                all.merge(run_suite(s, d));
            }
            all
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_bookkeeping() {
        let mut r = Report::new("x", 1);
        r.check_value("a.one", &[], json!(1), json!(1));
        r.check_value("a.two", &["i".into()], json!(1), json!(2));
        assert_eq!(r.checked, 2);
        assert_eq!(r.violations.len(), 1);
        assert!(r.laws_pass("a.one"));
        assert!(!r.laws_pass("a."));
        assert!(!r.laws_pass("missing"));
        let j = r.to_json();
        assert_eq!(j["violations"][0]["law"], "a.two");
        assert_eq!(j["maxDegree"], 1);
        assert!(r.to_text().contains("FAIL a.two"));
    }

    #[test]
    fn brute_force_cuts_of_cherry() {
        assert_eq!(
            brute_force_cut_sets(&Tree::corolla(2)),
            vec![vec![1], vec![1, 2], vec![2]]
        );
        assert_eq!(
            brute_force_cut_sets(&Tree::chain(3)),
            vec![vec![1], vec![2]]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 4), 1);
    }

    #[test]
    fn small_suites_pass() {
        for s in [
            Suite::Trees,
            Suite::Hr,
            Suite::Gl,
            Suite::Lie,
            Suite::Operators,
            Suite::Dual,
        ] {
            let r = run_suite(s, 2);
            assert!(r.passed(), "{}", r.to_text());
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn literal_star_equality_breaks_at_size_three() {
        assert!(star_graft_vs_cut_count(2).passed());
        assert!(!star_graft_vs_cut_count(3).passed());
    }
}
