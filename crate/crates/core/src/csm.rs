//! Chern-Schwartz-MacPherson classes of Schubert cells.
//!
//! Two pipelines: the `T_k` recursion on homology driven by the Chevalley
//! formula, and the equivariant product `prod (s_i + x_i)` in the nil-Hecke
//! algebra. The Bott-Samelson aggregates cross-check the second one at the
//! word level.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cartan::Root;
use crate::error::Result;
use crate::nilhecke::{element_json, NilHecke, NilHeckeElem};
use crate::poly::{Poly, Rational};
use crate::rootpoly::RootPoly;
use crate::weyl::{WeylElem, WeylGroup, Word};
use crate::wordalg::{embeddings, WordAlgebra};

/// Equivariant classes are nil-Hecke elements under `[X(v)]_T -> x_v`.
pub type EquivariantClass = NilHeckeElem;

/// A rational combination of Schubert classes `[X(v)]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyClass {
    terms: BTreeMap<WeylElem, Rational>,
}

impl HomologyClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn schubert(w: WeylElem) -> Self {
        let mut c = Self::zero();
        c.add_term(w, &Rational::one());
        c
    }

    pub fn add_term(&mut self, w: WeylElem, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &HomologyClass, factor: &Rational) {
        for (&w, c) in &other.terms {
            self.add_term(w, &(c * factor));
        }
    }

    pub fn coeff(&self, w: WeylElem) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElem, &Rational)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_json(&self, group: &WeylGroup) -> Value {
        json!({
            "basis": "schubert",
            "terms": self.terms.iter().map(|(&w, c)| json!({
                "w": element_json(group, w),
                "coeff": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `c_1(L_lambda) . xi = sum <lambda, beta^vee> [X(w s_beta)]` over lowering reflections.
pub fn chevalley(group: &WeylGroup, lambda: &Root, xi: &HomologyClass) -> HomologyClass {
    let mut out = HomologyClass::zero();
    for (w, c) in xi.terms() {
        for (beta, ws) in group.lowering_reflections(w) {
            let pairing = group.cartan().pairing(lambda, &beta.coroot);
            out.add_term(ws, &(c * Rational::from_integer(pairing.into())));
        }
    }
    out
}

/// The BGG operator: `[X(w)] -> [X(w s_k)]` when the length goes up, else zero.
pub fn bgg(group: &WeylGroup, k: usize, xi: &HomologyClass) -> HomologyClass {
    let mut out = HomologyClass::zero();
    for (w, c) in xi.terms() {
        let ws = group.right_mul_simple(w, k);
        if group.length(ws) > group.length(w) {
            out.add_term(ws, c);
        }
    }
    out
}

/// `s_k = id - c_1(L_{alpha_k}) d_k`.
pub fn s_k_apply(group: &WeylGroup, k: usize, xi: &HomologyClass) -> Result<HomologyClass> {
    group.cartan().check_index(k)?;
    let mut out = xi.clone();
    let lowered = chevalley(group, &group.cartan().simple_root(k), &bgg(group, k, xi));
    out.add_scaled(&lowered, &-Rational::one());
    Ok(out)
}

/// `T_k = d_k - s_k`.
pub fn t_k_apply(group: &WeylGroup, k: usize, xi: &HomologyClass) -> Result<HomologyClass> {
    group.cartan().check_index(k)?;
    let raised = bgg(group, k, xi);
    let mut out = raised.clone();
    out.add_scaled(xi, &-Rational::one());
    out.add_scaled(&chevalley(group, &group.cartan().simple_root(k), &raised), &Rational::one());
    Ok(out)
}

/// `[X(w)] -> [X(w W_P)]` on minimal coset representatives, zero otherwise.
/// The result is keyed by the minimal representative.
pub fn parabolic_pushforward(group: &WeylGroup, xi: &HomologyClass, subset: &[usize]) -> Result<HomologyClass> {
    let mut out = HomologyClass::zero();
    for (w, c) in xi.terms() {
        if group.min_coset_rep(w, subset)? == w {
            out.add_term(w, c);
        }
    }
    Ok(out)
}

/// Memoized CSM computations over one Weyl group.
pub struct Csm<'g> {
    group: &'g WeylGroup,
    nh: NilHecke<'g>,
    cells: Vec<OnceLock<HomologyClass>>,
    equivariant: Vec<OnceLock<EquivariantClass>>,
    expansions: Vec<OnceLock<NilHeckeElem>>,
}

impl<'g> Csm<'g> {
    pub fn new(group: &'g WeylGroup) -> Self {
        let n = group.len();
        Csm {
            group,
            nh: NilHecke::new(group),
            cells: (0..n).map(|_| OnceLock::new()).collect(),
            equivariant: (0..n).map(|_| OnceLock::new()).collect(),
            expansions: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    pub fn nilhecke(&self) -> &NilHecke<'g> {
        &self.nh
    }

    /// `csm(X(w)^o)`, by `T_k` along the canonical reduced word from the point class.
    pub fn csm_cell(&self, w: WeylElem) -> &HomologyClass {
        if let Some(c) = self.cells[w.index()].get() {
            return c;
        }
        let c = match self.group.canonical_word(w).0.last() {
            None => HomologyClass::schubert(w),
            Some(&k) => {
                let prev = self.group.right_mul_simple(w, k as usize);
                t_k_apply(self.group, k as usize, self.csm_cell(prev)).expect("valid letter")
            }
        };
        assert!(c.is_integral(), "non-integral CSM coefficient for {}", self.group.name(w));
        self.cells[w.index()].get_or_init(|| c)
    }

    /// `c(w; v)`.
    pub fn csm_coeff(&self, w: WeylElem, v: WeylElem) -> Rational {
        self.csm_cell(w).coeff(v)
    }

    fn mul_s_plus_x(&self, e: &EquivariantClass, k: usize) -> EquivariantClass {
        let mut out = self.nh.right_mul_reflection(e, k);
        out.add(&self.nh.right_mul_generator(e, k));
        out
    }

    /// `prod (s_{i_j} + x_{i_j})` along an arbitrary word.
    pub fn csm_equivariant_along(&self, word: &Word) -> Result<EquivariantClass> {
        let mut acc = self.nh.one();
        for k in word.letters() {
            self.group.cartan().check_index(k)?;
            acc = self.mul_s_plus_x(&acc, k);
        }
        Ok(acc)
    }

    /// `csm_T(X(w)^o) = sum_v c_T(w; v) x_v`.
    pub fn csm_cell_equivariant(&self, w: WeylElem) -> &EquivariantClass {
        if let Some(c) = self.equivariant[w.index()].get() {
            return c;
        }
        let c = match self.group.canonical_word(w).0.last() {
            None => self.nh.one(),
            Some(&k) => {
                let prev = self.group.right_mul_simple(w, k as usize);
                self.mul_s_plus_x(self.csm_cell_equivariant(prev), k as usize)
            }
        };
        assert!(
            c.terms().all(|(_, f)| f.is_integral()),
            "non-integral equivariant coefficient for {}",
            self.group.name(w)
        );
        self.equivariant[w.index()].get_or_init(|| c)
    }

    /// `c_T(w; v)`.
    pub fn ct_coeff(&self, w: WeylElem, v: WeylElem) -> RootPoly {
        self.csm_cell_equivariant(w).coeff(v)
    }

    /// `c_T(w; v)` as the Bott-Samelson aggregate over a reduced word `i` of `w`:
    /// the sum of `p^i_{i', i''}` over `i'` in `R(v)` and all words `i''`.
    pub fn csm_via_aggregation(&self, w: WeylElem, v: WeylElem) -> RootPoly {
        let wa = WordAlgebra::new(self.group);
        let word = self.group.canonical_word(w);
        let mut total = Poly::zero(self.group.rank());
        for sub in self.group.reduced_words(v).iter() {
            for k in embeddings(word, sub) {
                let positions: Vec<usize> = k.iter().map(|p| p + 1).collect();
                let product = wa.mixed_product(word, &positions).expect("canonical word is valid");
                for (_, c) in product.terms() {
                    total += c;
                }
            }
        }
        total
    }

    /// `u -> f(w, v, u)` from the degree-zero relative coefficients:
    /// `i'` in `R(v)`, `|i'| + |i''| = l(w)`, grouped by `w_{i''}`.
    pub fn f_row_via_aggregation(&self, w: WeylElem, v: WeylElem) -> BTreeMap<WeylElem, Rational> {
        let wa = WordAlgebra::new(self.group);
        let word = self.group.canonical_word(w);
        let m = word.len();
        let lv = self.group.length(v);
        let mut row: BTreeMap<WeylElem, Rational> = BTreeMap::new();
        if lv > m {
            return row;
        }
        for sub in self.group.reduced_words(v).iter() {
            for k in embeddings(word, sub) {
                let positions: Vec<usize> = k.iter().map(|p| p + 1).collect();
                let product = wa.mixed_product(word, &positions).expect("canonical word is valid");
                for (z, c) in product.terms() {
                    if z.len() + lv != m {
                        continue;
                    }
                    let u = self.group.from_word(z).expect("subword letters are valid");
                    *row.entry(u).or_insert_with(Rational::zero) += c.constant_term();
                }
            }
        }
        row.retain(|_, c| !c.is_zero());
        row
    }

    /// `f(w, v, u)` by aggregation.
    pub fn f_via_aggregation(&self, w: WeylElem, v: WeylElem, u: WeylElem) -> Rational {
        self.f_row_via_aggregation(w, v).remove(&u).unwrap_or_else(Rational::zero)
    }

    /// `w = sum_v sigma^w(v) x_v`, memoized.
    pub fn weyl_expansion(&self, w: WeylElem) -> &NilHeckeElem {
        self.expansions[w.index()].get_or_init(|| self.nh.weyl_as_nilhecke(w))
    }

    /// The localization `sigma^w(v)`: the coefficient of `x_v` in the expansion of `w`.
    pub fn localization(&self, w: WeylElem, v: WeylElem) -> RootPoly {
        self.weyl_expansion(w).coeff(v)
    }

    /// The degree-`l(v)` part of `c_T(w; v)`.
    pub fn top_degree(&self, w: WeylElem, v: WeylElem) -> RootPoly {
        self.ct_coeff(w, v).homogeneous_part(self.group.length(v) as u32)
    }
}
