//! The generalized nil-Hecke algebra on the free monoid of words.
//!
//! Same commutation rule as the nil-Hecke algebra, but basis elements `x_w`
//! are indexed by arbitrary words: there is no nilpotency and no braid
//! relation, so `x_1 x_1 = x_(1,1)` is a basis element.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::nilhecke::NilHeckeElem;
use crate::poly::Poly;
use crate::rootpoly::{commute_generator, simple_root_poly, RootPoly};
use crate::weyl::{WeylElem, WeylGroup, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAlgElem {
    rank: usize,
    terms: BTreeMap<Word, RootPoly>,
}

impl WordAlgElem {
    pub fn zero(rank: usize) -> Self {
        WordAlgElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(rank: usize, word: Word) -> Self {
        Self::term(word, Poly::one(rank))
    }

    pub fn term(word: Word, coeff: RootPoly) -> Self {
        let mut e = Self::zero(coeff.nvars());
        e.add_term(word, &coeff);
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, word: Word, coeff: &RootPoly) {
        if coeff.is_zero() {
            return;
        }
        assert_eq!(coeff.nvars(), self.rank, "coefficient rank mismatch");
        let entry = self.terms.entry(word.clone()).or_insert_with(|| Poly::zero(self.rank));
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    fn add_product(&mut self, word: Word, a: &RootPoly, b: &RootPoly) {
        let entry = self.terms.entry(word.clone()).or_insert_with(|| Poly::zero(self.rank));
        entry.add_mul(a, b);
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add(&mut self, other: &WordAlgElem) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn coeff(&self, word: &Word) -> RootPoly {
        self.terms.get(word).cloned().unwrap_or_else(|| Poly::zero(self.rank))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RootPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": "word",
            "terms": self.terms.iter().map(|(w, c)| json!({
                "word": w.0,
                "coeff": c.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value, rank: usize) -> Result<Self> {
        if value["basis"] != "word" {
            return Err(Error::Parse("expected basis \"word\"".into()));
        }
        let mut out = WordAlgElem::zero(rank);
        let terms = value["terms"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let word: Word = serde_json::from_value(t["word"].clone())?;
            if let Some(&l) = word.0.iter().find(|&&l| l == 0 || l as usize > rank) {
                return Err(Error::IndexOutOfRange {
                    index: l as usize,
                    rank,
                });
            }
            out.add_term(word, &Poly::from_json(&t["coeff"], rank)?);
        }
        Ok(out)
    }
}

/// `sum f_{a,b} x_a (x) x_b` over words, coefficients on the left factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTensor {
    rank: usize,
    terms: BTreeMap<(Word, Word), RootPoly>,
}

impl WordTensor {
    pub fn coeff(&self, left: &Word, right: &Word) -> RootPoly {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.rank))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &RootPoly)> {
        self.terms.iter()
    }

    fn add_product(&mut self, key: (Word, Word), a: &RootPoly, b: &RootPoly) {
        let entry = self.terms.entry(key.clone()).or_insert_with(|| Poly::zero(self.rank));
        entry.add_mul(a, b);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

pub struct WordAlgebra<'g> {
    group: &'g WeylGroup,
}

impl<'g> WordAlgebra<'g> {
    pub fn new(group: &'g WeylGroup) -> Self {
        WordAlgebra { group }
    }

    fn rank(&self) -> usize {
        self.group.rank()
    }

    fn check(&self, e: &WordAlgElem) -> Result<()> {
        if e.rank != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: e.rank,
            });
        }
        Ok(())
    }

    fn check_word(&self, word: &Word) -> Result<()> {
        word.letters().try_for_each(|l| self.group.cartan().check_index(l))
    }

    pub fn one(&self) -> WordAlgElem {
        WordAlgElem::basis(self.rank(), Word::empty())
    }

    pub fn x(&self, word: Word) -> WordAlgElem {
        WordAlgElem::basis(self.rank(), word)
    }

    /// `x_i * e`.
    pub fn left_mul_generator(&self, i: usize, e: &WordAlgElem) -> Result<WordAlgElem> {
        let mut out = WordAlgElem::zero(self.rank());
        for (w, c) in e.terms() {
            let (reflected, d) = commute_generator(self.group.cartan(), i, c)?;
            let mut longer = Word(vec![i as u8]);
            longer.0.extend_from_slice(&w.0);
            out.add_term(longer, &reflected);
            out.add_term(w.clone(), &d);
        }
        Ok(out)
    }

    /// `x_word * f` with coefficients moved to the left.
    pub fn commute_poly_left(&self, word: &Word, f: &RootPoly) -> Result<WordAlgElem> {
        let mut acc = WordAlgElem::term(Word::empty(), f.clone());
        for l in word.letters().collect::<Vec<_>>().into_iter().rev() {
            acc = self.left_mul_generator(l, &acc)?;
        }
        Ok(acc)
    }

    pub fn right_mul_generator(&self, e: &WordAlgElem, i: usize) -> WordAlgElem {
        WordAlgElem {
            rank: e.rank,
            terms: e
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut w = w.clone();
                    w.push(i);
                    (w, c.clone())
                })
                .collect(),
        }
    }

    pub fn right_mul_poly(&self, e: &WordAlgElem, f: &RootPoly) -> Result<WordAlgElem> {
        let mut out = WordAlgElem::zero(self.rank());
        for (w, c) in e.terms() {
            for (z, d) in self.commute_poly_left(w, f)?.terms() {
                out.add_product(z.clone(), c, d);
            }
        }
        Ok(out)
    }

    /// `e * s_i = e + (e alpha_i) x_i`.
    pub fn right_mul_reflection(&self, e: &WordAlgElem, i: usize) -> Result<WordAlgElem> {
        let alpha = simple_root_poly(self.group.cartan(), i);
        let mut out = e.clone();
        out.add(&self.right_mul_generator(&self.right_mul_poly(e, &alpha)?, i));
        Ok(out)
    }

    pub fn mul_word(&self, a: &WordAlgElem, b: &WordAlgElem) -> Result<WordAlgElem> {
        self.check(a)?;
        self.check(b)?;
        let mut out = WordAlgElem::zero(self.rank());
        for (u, p) in a.terms() {
            for (v, q) in b.terms() {
                for (z, c) in self.commute_poly_left(u, q)?.terms() {
                    out.add_product(z.concat(v), p, c);
                }
            }
        }
        Ok(out)
    }

    /// `prod_j E(j)` with `E(j) = s_{i_j}` for `j` in `positions` (1-based), `x_{i_j}` otherwise.
    pub fn mixed_product(&self, word: &Word, positions: &[usize]) -> Result<WordAlgElem> {
        self.check_word(word)?;
        let mut marked = vec![false; word.len()];
        for &p in positions {
            if p == 0 || p > word.len() {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    len: word.len(),
                });
            }
            marked[p - 1] = true;
        }
        let mut acc = self.one();
        for (l, on) in word.letters().zip(marked) {
            acc = if on {
                self.right_mul_reflection(&acc, l)?
            } else {
                self.right_mul_generator(&acc, l)
            };
        }
        Ok(acc)
    }

    /// The relative Littlewood-Richardson coefficient `p^word_{left,right}`:
    /// summing `mixed_product(word, K)` over `K` with `word_K = left`, the
    /// coefficient of `x_right`.
    pub fn relative_lr(&self, word: &Word, left: &Word, right: &Word) -> Result<RootPoly> {
        self.check_word(word)?;
        let mut total = Poly::zero(self.rank());
        for k in embeddings(word, left) {
            let positions: Vec<usize> = k.iter().map(|p| p + 1).collect();
            total += &self.mixed_product(word, &positions)?.coeff(right);
        }
        Ok(total)
    }

    /// `Delta(x_{i_1}) ... Delta(x_{i_m})` computed factor by factor.
    pub fn coproduct_along(&self, word: &Word) -> Result<WordTensor> {
        self.check_word(word)?;
        let rank = self.rank();
        let mut acc = WordTensor {
            rank,
            terms: BTreeMap::from([((Word::empty(), Word::empty()), Poly::one(rank))]),
        };
        let one = Poly::one(rank);
        for i in word.letters() {
            let alpha = simple_root_poly(self.group.cartan(), i);
            let mut out = WordTensor {
                rank,
                terms: BTreeMap::new(),
            };
            for ((a, b), q) in &acc.terms {
                let mut ai = a.clone();
                ai.push(i);
                let mut bi = b.clone();
                bi.push(i);
                out.add_product((ai, b.clone()), q, &one);
                out.add_product((a.clone(), bi.clone()), q, &one);
                for (z, c) in self.commute_poly_left(a, &alpha)?.terms() {
                    let mut zi = z.clone();
                    zi.push(i);
                    out.add_product((zi, bi.clone()), q, c);
                }
            }
            acc = out;
        }
        Ok(acc)
    }

    /// `(u, v) -> sum p^word_{i', i''}` over reduced `i'` in `R(u)` and reduced `i''` in `R(v)`.
    pub fn reduced_aggregates(&self, word: &Word) -> Result<BTreeMap<(WeylElem, WeylElem), RootPoly>> {
        self.check_word(word)?;
        let mut out: BTreeMap<(WeylElem, WeylElem), RootPoly> = BTreeMap::new();
        for k in all_subsets(word.len()) {
            let sub = word.subword(&k);
            if !self.group.is_reduced(&sub) {
                continue;
            }
            let u = self.group.from_word(&sub)?;
            let positions: Vec<usize> = k.iter().map(|p| p + 1).collect();
            for (z, c) in self.mixed_product(word, &positions)?.terms() {
                if self.group.is_reduced(z) {
                    let v = self.group.from_word(z)?;
                    *out.entry((u, v)).or_insert_with(|| Poly::zero(self.rank())) += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `x_word -> x_{w_word}` if reduced, zero otherwise, extended `S`-linearly.
    pub fn mu_map(&self, a: &WordAlgElem) -> Result<NilHeckeElem> {
        self.check(a)?;
        let mut out = NilHeckeElem::zero(self.rank());
        for (w, c) in a.terms() {
            if self.group.is_reduced(w) {
                out.add_term(self.group.from_word(w)?, c);
            }
        }
        Ok(out)
    }
}

/// All increasing position lists (0-based) `K` with `word_K = sub`.
pub fn embeddings(word: &Word, sub: &Word) -> Vec<Vec<usize>> {
    fn go(word: &[u8], sub: &[u8], start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == sub.len() {
            out.push(cur.clone());
            return;
        }
        let need = sub.len() - cur.len();
        for p in start..=word.len().saturating_sub(need) {
            if word[p] == sub[cur.len()] {
                cur.push(p);
                go(word, sub, p + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if sub.len() <= word.len() {
        go(&word.0, &sub.0, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Every subset of `0..len` as a sorted position list.
pub fn all_subsets(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << len).map(move |mask| (0..len).filter(|&p| mask >> p & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::nilhecke::NilHecke;
    use crate::poly::int;

    fn setup() -> WeylGroup {
        WeylGroup::symmetric(3).unwrap()
    }

    fn a(g: &WeylGroup, i: usize) -> RootPoly {
        simple_root_poly(g.cartan(), i)
    }

    fn w(letters: &[usize]) -> Word {
        Word::new(letters.iter().copied())
    }

    #[test]
    fn free_monoid_products() {
        let g = setup();
        let wa = WordAlgebra::new(&g);
        assert_eq!(wa.mul_word(&wa.x(w(&[1])), &wa.x(w(&[1]))).unwrap(), wa.x(w(&[1, 1])));
        let rhs = WordAlgElem::term(Word::empty(), a(&g, 1));
        let got = wa.mul_word(&wa.x(w(&[1])), &rhs).unwrap();
        let mut expect = WordAlgElem::term(w(&[1]), -&a(&g, 1));
        expect.add_term(Word::empty(), &Poly::constant(2, int(-2)));
        assert_eq!(got, expect);
        let e = wa.mixed_product(&w(&[1, 2, 1]), &[1]).unwrap();
        assert_eq!(wa.mul_word(&wa.one(), &e).unwrap(), e);
    }

    #[test]
    fn worked_mixed_product() {
        let g = setup();
        let wa = WordAlgebra::new(&g);
        let got = wa.mixed_product(&w(&[1, 2, 1]), &[1, 3]).unwrap();
        let (a1, a2) = (a(&g, 1), a(&g, 2));
        let one = Poly::one(2);
        let mut expect = WordAlgElem::zero(2);
        expect.add_term(w(&[2]), &one);
        expect.add_term(w(&[1, 2]), &a1);
        expect.add_term(w(&[1]), &one);
        expect.add_term(w(&[2, 1]), &a2);
        expect.add_term(w(&[1, 1]), &a1);
        expect.add_term(w(&[1, 2, 1]), &(&a1 * &a2));
        assert_eq!(got, expect);
    }

    #[test]
    fn mixed_product_edge_cases() {
        let g = setup();
        let wa = WordAlgebra::new(&g);
        let word = w(&[1, 2, 1]);
        assert_eq!(wa.mixed_product(&word, &[]).unwrap(), wa.x(word.clone()));
        let mut s1 = wa.one();
        s1.add_term(w(&[1]), &a(&g, 1));
        assert_eq!(wa.mixed_product(&w(&[1]), &[1]).unwrap(), s1);
        assert!(matches!(
            wa.mixed_product(&word, &[4]),
            Err(Error::PositionOutOfRange { position: 4, len: 3 })
        ));
    }

    #[test]
    fn relative_coefficients_from_the_worked_example() {
        let g = setup();
        let wa = WordAlgebra::new(&g);
        let word = w(&[1, 2, 1]);
        assert_eq!(wa.relative_lr(&word, &w(&[1, 1]), &w(&[2, 1])).unwrap(), a(&g, 2));
        assert_eq!(
            wa.relative_lr(&word, &w(&[1, 1]), &w(&[1, 2, 1])).unwrap(),
            &a(&g, 1) * &a(&g, 2)
        );
        for word in [w(&[]), w(&[1]), w(&[1, 2, 1]), w(&[2, 2, 1])] {
            assert_eq!(wa.relative_lr(&word, &word, &Word::empty()).unwrap(), Poly::one(2));
        }
    }

    #[test]
    fn mu_examples() {
        let g = setup();
        let wa = WordAlgebra::new(&g);
        let nh = NilHecke::new(&g);
        assert!(wa.mu_map(&wa.x(w(&[1, 1]))).unwrap().is_zero());
        let s1s2 = g.from_word(&w(&[1, 2])).unwrap();
        assert_eq!(wa.mu_map(&wa.x(w(&[1, 2]))).unwrap(), nh.x(s1s2));
        let mut e = WordAlgElem::term(w(&[2, 1]), a(&g, 2));
        e.add_term(w(&[1, 1]), &a(&g, 1));
        let s2s1 = g.from_word(&w(&[2, 1])).unwrap();
        assert_eq!(wa.mu_map(&e).unwrap(), NilHeckeElem::term(s2s1, a(&g, 2)));
    }

    #[test]
    fn coproduct_matches_mixed_products() {
        // Delta(x_i) = sum_K (prod E_K) (x) x_{i_K}, where K marks the s-factors.
        let g = WeylGroup::new(CartanData::from_label("B2").unwrap()).unwrap();
        let wa = WordAlgebra::new(&g);
        for word in [w(&[1, 2, 1]), w(&[2, 2]), w(&[1, 2, 2, 1])] {
            let delta = wa.coproduct_along(&word).unwrap();
            let mut rebuilt: BTreeMap<(Word, Word), RootPoly> = BTreeMap::new();
            for k in all_subsets(word.len()) {
                let positions: Vec<usize> = k.iter().map(|p| p + 1).collect();
                let right = word.subword(&k);
                for (left, c) in wa.mixed_product(&word, &positions).unwrap().terms() {
                    let e = rebuilt.entry((left.clone(), right.clone())).or_insert_with(|| Poly::zero(2));
                    *e += c;
                }
            }
            rebuilt.retain(|_, c| !c.is_zero());
            let direct: BTreeMap<(Word, Word), RootPoly> =
                delta.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
            assert_eq!(direct, rebuilt, "{word}");
        }
    }

    #[test]
    fn word_coproduct_is_cocommutative() {
        for label in ["A2", "B2", "G2"] {
            let g = WeylGroup::new(CartanData::from_label(label).unwrap()).unwrap();
            let wa = WordAlgebra::new(&g);
            for word in [w(&[1, 2, 1]), w(&[1, 1, 2]), w(&[2, 1, 2, 1])] {
                let delta = wa.coproduct_along(&word).unwrap();
                for ((l, r), c) in delta.terms() {
                    assert_eq!(&delta.coeff(r, l), c, "{label} {word}");
                }
            }
        }
    }

    fn words_up_to(rank: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let next: Vec<Word> = frontier
                .iter()
                .flat_map(|w| (1..=rank).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                }))
                .collect();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn mu_is_multiplicative() {
        let g = WeylGroup::symmetric(4).unwrap();
        let wa = WordAlgebra::new(&g);
        let nh = NilHecke::new(&g);
        let words = words_up_to(3, 3);
        for a in &words {
            for b in &words {
                for k in 1..=3 {
                    let left = wa.x(a.clone());
                    let right = WordAlgElem::term(b.clone(), simple_root_poly(g.cartan(), k));
                    let lhs = wa.mu_map(&wa.mul_word(&left, &right).unwrap()).unwrap();
                    let rhs = nh
                        .mul(&wa.mu_map(&left).unwrap(), &wa.mu_map(&right).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "{a} {b} {k}");
                }
            }
        }
    }

    #[test]
    fn aggregates_recover_group_coefficients() {
        let g = setup();
        let wa = WordAlgebra::new(&g);
        let nh = NilHecke::new(&g);
        for w in g.elements() {
            let word = g.canonical_word(w).clone();
            for u in g.elements() {
                for v in g.elements() {
                    let mut total = Poly::zero(2);
                    for wu in g.reduced_words(u).iter() {
                        for wv in g.reduced_words(v).iter() {
                            total += &wa.relative_lr(&word, wu, wv).unwrap();
                        }
                    }
                    assert_eq!(total, nh.lr_coefficient(w, u, v));
                    let agg = wa.reduced_aggregates(&word).unwrap();
                    assert_eq!(agg.get(&(u, v)).cloned().unwrap_or_else(|| Poly::zero(2)), total);
                }
            }
        }
    }

    #[test]
    fn embeddings_enumerate_positions() {
        assert_eq!(embeddings(&w(&[1, 2, 1]), &w(&[1, 1])), vec![vec![0, 2]]);
        assert_eq!(embeddings(&w(&[1, 2, 1]), &w(&[1])), vec![vec![0], vec![2]]);
        assert_eq!(embeddings(&w(&[1]), &w(&[1, 1])), Vec::<Vec<usize>>::new());
        assert_eq!(embeddings(&w(&[2]), &Word::empty()), vec![Vec::<usize>::new()]);
    }
}
