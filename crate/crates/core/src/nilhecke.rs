//! The nil-Hecke algebra with left `S`-basis `{x_w}`.
//!
//! Every product reduces to one kernel: moving a polynomial to the left
//! past a generator, `x_i f = s_i(f) x_i + D_i(f)`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rootpoly::{commute_generator, simple_root_poly, RootPoly};
use crate::weyl::{WeylElem, WeylGroup, Word};

/// `sum_w f_w x_w` with coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilHeckeElem {
    rank: usize,
    terms: BTreeMap<WeylElem, RootPoly>,
}

impl NilHeckeElem {
    pub fn zero(rank: usize) -> Self {
        NilHeckeElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(rank: usize, w: WeylElem) -> Self {
        Self::term(w, Poly::one(rank))
    }

    pub fn term(w: WeylElem, coeff: RootPoly) -> Self {
        let mut e = Self::zero(coeff.nvars());
        e.add_term(w, &coeff);
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, w: WeylElem, coeff: &RootPoly) {
        if coeff.is_zero() {
            return;
        }
        assert_eq!(coeff.nvars(), self.rank, "coefficient rank mismatch");
        let entry = self.terms.entry(w).or_insert_with(|| Poly::zero(self.rank));
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn add_product(&mut self, w: WeylElem, a: &RootPoly, b: &RootPoly) {
        let entry = self.terms.entry(w).or_insert_with(|| Poly::zero(self.rank));
        entry.add_mul(a, b);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&mut self, other: &NilHeckeElem) {
        for (&w, c) in &other.terms {
            self.add_term(w, c);
        }
    }

    pub fn coeff(&self, w: WeylElem) -> RootPoly {
        self.terms.get(&w).cloned().unwrap_or_else(|| Poly::zero(self.rank))
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElem, &RootPoly)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = WeylElem> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&RootPoly) -> RootPoly) -> NilHeckeElem {
        let mut out = NilHeckeElem::zero(self.rank);
        for (&w, c) in &self.terms {
            out.add_term(w, &f(c));
        }
        out
    }

    pub fn to_json(&self, group: &WeylGroup) -> Value {
        json!({
            "basis": "nilhecke",
            "terms": self.terms.iter().map(|(&w, c)| json!({
                "w": element_json(group, w),
                "coeff": c.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(group: &WeylGroup, value: &Value) -> Result<Self> {
        if value["basis"] != "nilhecke" {
            return Err(Error::Parse("expected basis \"nilhecke\"".into()));
        }
        let mut out = NilHeckeElem::zero(group.rank());
        let terms = value["terms"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let w = element_from_json(group, &t["w"])?;
            out.add_term(w, &Poly::from_json(&t["coeff"], group.rank())?);
        }
        Ok(out)
    }
}

/// One-line permutation in type A, the canonical reduced word otherwise.
pub fn element_json(group: &WeylGroup, w: WeylElem) -> Value {
    match group.perm(w) {
        Some(p) => json!(p),
        None => json!(group.canonical_word(w).0),
    }
}

pub fn element_from_json(group: &WeylGroup, value: &Value) -> Result<WeylElem> {
    let seq: Vec<u8> = serde_json::from_value(value.clone())?;
    if group.is_type_a() {
        group.from_perm(&seq)
    } else {
        group.from_word(&Word(seq))
    }
}

/// `sum f_{u,v} x_u (x) x_v` over `S`, coefficients normalized to the left factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilHeckeTensor {
    rank: usize,
    terms: BTreeMap<(WeylElem, WeylElem), RootPoly>,
}

impl NilHeckeTensor {
    pub fn one(rank: usize) -> Self {
        NilHeckeTensor {
            rank,
            terms: BTreeMap::from([((WeylElem::IDENTITY, WeylElem::IDENTITY), Poly::one(rank))]),
        }
    }

    fn add_term(&mut self, key: (WeylElem, WeylElem), coeff: &RootPoly) {
        let entry = self.terms.entry(key).or_insert_with(|| Poly::zero(self.rank));
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add_product(&mut self, key: (WeylElem, WeylElem), a: &RootPoly, b: &RootPoly) {
        let entry = self.terms.entry(key).or_insert_with(|| Poly::zero(self.rank));
        entry.add_mul(a, b);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, u: WeylElem, v: WeylElem) -> RootPoly {
        self.terms
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.rank))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((WeylElem, WeylElem), &RootPoly)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Arithmetic in the nil-Hecke algebra of a fixed Weyl group.
pub struct NilHecke<'g> {
    group: &'g WeylGroup,
    alpha_commute: Vec<OnceLock<NilHeckeElem>>,
    coproducts: Vec<OnceLock<Arc<NilHeckeTensor>>>,
}

impl<'g> NilHecke<'g> {
    pub fn new(group: &'g WeylGroup) -> Self {
        let n = group.len();
        NilHecke {
            group,
            alpha_commute: (0..n * group.rank()).map(|_| OnceLock::new()).collect(),
            coproducts: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    fn rank(&self) -> usize {
        self.group.rank()
    }

    fn check(&self, e: &NilHeckeElem) -> Result<()> {
        if e.rank != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: e.rank,
            });
        }
        Ok(())
    }

    pub fn one(&self) -> NilHeckeElem {
        NilHeckeElem::basis(self.rank(), self.group.identity())
    }

    pub fn x(&self, w: WeylElem) -> NilHeckeElem {
        NilHeckeElem::basis(self.rank(), w)
    }

    pub fn poly(&self, f: &RootPoly) -> NilHeckeElem {
        NilHeckeElem::term(self.group.identity(), f.clone())
    }

    /// `s_i = 1 + alpha_i x_i`.
    pub fn simple_reflection(&self, i: usize) -> NilHeckeElem {
        let mut e = self.one();
        e.add_term(self.group.simple(i), &simple_root_poly(self.group.cartan(), i));
        e
    }

    /// `x_i * e`.
    pub fn left_mul_generator(&self, i: usize, e: &NilHeckeElem) -> Result<NilHeckeElem> {
        self.group.cartan().check_index(i)?;
        let mut out = NilHeckeElem::zero(self.rank());
        for (y, c) in e.terms() {
            let (reflected, d) = commute_generator(self.group.cartan(), i, c)?;
            let sy = self.group.left_mul_simple(i, y);
            if self.group.length(sy) > self.group.length(y) {
                out.add_term(sy, &reflected);
            }
            out.add_term(y, &d);
        }
        Ok(out)
    }

    /// `e * x_i`.
    pub fn right_mul_generator(&self, e: &NilHeckeElem, i: usize) -> NilHeckeElem {
        let mut out = NilHeckeElem::zero(self.rank());
        for (y, c) in e.terms() {
            let ys = self.group.right_mul_simple(y, i);
            if self.group.length(ys) > self.group.length(y) {
                out.add_term(ys, c);
            }
        }
        out
    }

    /// `x_w f`, expanded with coefficients on the left.
    pub fn commute_poly_left(&self, w: WeylElem, f: &RootPoly) -> Result<NilHeckeElem> {
        let mut acc = NilHeckeElem::term(self.group.identity(), f.clone());
        for l in self.group.canonical_word(w).letters().collect::<Vec<_>>().into_iter().rev() {
            acc = self.left_mul_generator(l, &acc)?;
        }
        Ok(acc)
    }

    /// `x_w alpha_i`, memoized.
    fn commute_alpha(&self, w: WeylElem, i: usize) -> &NilHeckeElem {
        self.alpha_commute[w.index() * self.rank() + i - 1].get_or_init(|| {
            self.commute_poly_left(w, &simple_root_poly(self.group.cartan(), i))
                .expect("divided differences of roots are exact")
        })
    }

    /// `e * f` for a polynomial `f`.
    pub fn right_mul_poly(&self, e: &NilHeckeElem, f: &RootPoly) -> Result<NilHeckeElem> {
        let mut out = NilHeckeElem::zero(self.rank());
        for (y, c) in e.terms() {
            for (z, d) in self.commute_poly_left(y, f)?.terms() {
                out.add_product(z, c, d);
            }
        }
        Ok(out)
    }

    fn right_mul_alpha(&self, e: &NilHeckeElem, i: usize) -> NilHeckeElem {
        let mut out = NilHeckeElem::zero(self.rank());
        for (y, c) in e.terms() {
            for (z, d) in self.commute_alpha(y, i).terms() {
                out.add_product(z, c, d);
            }
        }
        out
    }

    /// `x_u x_v`: `x_{uv}` when lengths add, zero otherwise.
    pub fn basis_product(&self, u: WeylElem, v: WeylElem) -> Option<WeylElem> {
        let uv = self.group.mul(u, v);
        (self.group.length(uv) == self.group.length(u) + self.group.length(v)).then_some(uv)
    }

    pub fn mul(&self, a: &NilHeckeElem, b: &NilHeckeElem) -> Result<NilHeckeElem> {
        self.check(a)?;
        self.check(b)?;
        let mut out = NilHeckeElem::zero(self.rank());
        for (u, p) in a.terms() {
            for (v, q) in b.terms() {
                for (u2, c) in self.commute_poly_left(u, q)?.terms() {
                    if let Some(w) = self.basis_product(u2, v) {
                        out.add_product(w, p, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `e * s_i = e + (e alpha_i) x_i`.
    pub fn right_mul_reflection(&self, e: &NilHeckeElem, i: usize) -> NilHeckeElem {
        let mut out = e.clone();
        out.add(&self.right_mul_generator(&self.right_mul_alpha(e, i), i));
        out
    }

    /// The product of `1 + alpha_i x_i` along a word.
    pub fn weyl_along(&self, word: &Word) -> Result<NilHeckeElem> {
        let mut acc = self.one();
        for l in word.letters() {
            self.group.cartan().check_index(l)?;
            acc = self.right_mul_reflection(&acc, l);
        }
        Ok(acc)
    }

    /// `w = sum_v sigma^w(v) x_v`, expanded along the canonical reduced word.
    pub fn weyl_as_nilhecke(&self, w: WeylElem) -> NilHeckeElem {
        self.weyl_along(self.group.canonical_word(w))
            .expect("canonical words are valid")
    }

    /// `acc * Delta(x_i)` with `Delta(x_i) = x_i (x) 1 + 1 (x) x_i + alpha_i x_i (x) x_i`.
    fn tensor_mul_delta(&self, acc: &NilHeckeTensor, i: usize) -> NilHeckeTensor {
        let g = self.group;
        let mut out = NilHeckeTensor {
            rank: self.rank(),
            terms: BTreeMap::new(),
        };
        for ((u, v), q) in acc.terms() {
            let us = g.right_mul_simple(u, i);
            if g.length(us) > g.length(u) {
                out.add_term((us, v), q);
            }
            let vs = g.right_mul_simple(v, i);
            if g.length(vs) > g.length(v) {
                out.add_term((u, vs), q);
                for (u2, c) in self.commute_alpha(u, i).terms() {
                    let u2s = g.right_mul_simple(u2, i);
                    if g.length(u2s) > g.length(u2) {
                        out.add_product((u2s, vs), q, c);
                    }
                }
            }
        }
        out
    }

    /// `Delta(x_{i_1}) ... Delta(x_{i_m})`.
    pub fn coproduct_along(&self, word: &Word) -> Result<NilHeckeTensor> {
        let mut acc = NilHeckeTensor::one(self.rank());
        for l in word.letters() {
            self.group.cartan().check_index(l)?;
            acc = self.tensor_mul_delta(&acc, l);
        }
        Ok(acc)
    }

    /// `Delta(x_w) = sum p^w_{u,v} x_u (x) x_v`, memoized along canonical words.
    pub fn coproduct(&self, w: WeylElem) -> Arc<NilHeckeTensor> {
        if let Some(t) = self.coproducts[w.index()].get() {
            return t.clone();
        }
        let t = match self.group.canonical_word(w).0.last() {
            None => NilHeckeTensor::one(self.rank()),
            Some(&l) => {
                let prev = self.group.right_mul_simple(w, l as usize);
                self.tensor_mul_delta(&self.coproduct(prev), l as usize)
            }
        };
        self.coproducts[w.index()].get_or_init(|| Arc::new(t)).clone()
    }

    /// The equivariant Littlewood-Richardson coefficient `p^w_{u,v}`.
    pub fn lr_coefficient(&self, w: WeylElem, u: WeylElem, v: WeylElem) -> RootPoly {
        self.coproduct(w).coeff(u, v)
    }
}
