//! The Bruhat and extended Bruhat actions of the Fomin-Kirillov generators
//! on the group ring of `S_n`, Dunkl elements, and Schubert polynomials
//! evaluated at Dunkl elements.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::nilhecke::element_json;
use crate::schubert::Schubert;
use crate::weyl::{WeylElem, WeylGroup};

/// An integer combination of permutations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupVector {
    terms: BTreeMap<WeylElem, i64>,
}

impl GroupVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: WeylElem) -> Self {
        let mut v = Self::zero();
        v.add_term(w, 1);
        v
    }

    pub fn add_term(&mut self, w: WeylElem, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &GroupVector, factor: i64) {
        for (&w, &c) in &other.terms {
            self.add_term(w, c * factor);
        }
    }

    pub fn coeff(&self, w: WeylElem) -> i64 {
        self.terms.get(&w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElem, i64)> + '_ {
        self.terms.iter().map(|(&w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self, group: &WeylGroup) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&w, &c)| json!({"w": element_json(group, w), "coeff": c}))
                .collect(),
        )
    }
}

/// The generator `[ij]`, stored with `i < j` and a sign (`[ji] = -[ij]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FkGenerator {
    i: usize,
    j: usize,
    sign: i64,
}

impl FkGenerator {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::Parse(format!("invalid generator [{a}{b}]")));
        }
        Ok(if a < b {
            FkGenerator { i: a, j: b, sign: 1 }
        } else {
            FkGenerator { i: b, j: a, sign: -1 }
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }
}

impl fmt::Display for FkGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        write!(f, "[{}{}]", self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `w . [ij] = w t_ij` when the length drops by exactly one.
    Bruhat,
    /// `w * [ij] = w t_ij` when the length drops at all.
    Extended,
}

/// The Fomin-Kirillov actions on `Z S_n`.
pub struct Fk<'g> {
    group: &'g WeylGroup,
    n: usize,
    // Right multiplication by t_ij, indexed [w][pair].
    swaps: Vec<Vec<WeylElem>>,
    schubert: Schubert<'g>,
}

impl<'g> Fk<'g> {
    pub fn new(group: &'g WeylGroup) -> Result<Self> {
        let schubert = Schubert::new(group)?;
        let n = group.rank() + 1;
        let swaps = group
            .elements()
            .map(|w| {
                let perm = group.perm(w).expect("type A");
                let mut row = Vec::with_capacity(n * n);
                for i in 1..=n {
                    for j in 1..=n {
                        let mut p = perm.to_vec();
                        p.swap(i - 1, j - 1);
                        row.push(group.from_perm(&p).expect("permutation"));
                    }
                }
                row
            })
            .collect();
        Ok(Fk {
            group,
            n,
            swaps,
            schubert,
        })
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator(&self, a: usize, b: usize) -> Result<FkGenerator> {
        let g = FkGenerator::new(a, b)?;
        if g.j > self.n {
            return Err(Error::IndexOutOfRange {
                index: g.j,
                rank: self.n,
            });
        }
        Ok(g)
    }

    /// `w t_ij`: positions `i` and `j` of the one-line notation swapped.
    pub fn times_transposition(&self, w: WeylElem, i: usize, j: usize) -> WeylElem {
        self.swaps[w.index()][(i - 1) * self.n + j - 1]
    }

    pub fn act(&self, xi: &GroupVector, g: FkGenerator, mode: Mode) -> GroupVector {
        let mut out = GroupVector::zero();
        for (w, c) in xi.terms() {
            let wt = self.times_transposition(w, g.i, g.j);
            let (lw, lwt) = (self.group.length(w), self.group.length(wt));
            let hit = match mode {
                Mode::Bruhat => lwt + 1 == lw,
                Mode::Extended => lwt < lw,
            };
            if hit {
                out.add_term(wt, c * g.sign);
            }
        }
        out
    }

    pub fn bruhat_act(&self, xi: &GroupVector, g: FkGenerator) -> GroupVector {
        self.act(xi, g, Mode::Bruhat)
    }

    pub fn extended_act(&self, xi: &GroupVector, g: FkGenerator) -> GroupVector {
        self.act(xi, g, Mode::Extended)
    }

    /// Action of the Dunkl element `theta_i = sum_{j != i} [ij]`.
    pub fn dunkl_act(&self, xi: &GroupVector, i: usize, mode: Mode) -> Result<GroupVector> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.n,
            });
        }
        let mut out = GroupVector::zero();
        for j in (1..=self.n).filter(|&j| j != i) {
            out.add_scaled(&self.act(xi, FkGenerator::new(i, j)?, mode), 1);
        }
        Ok(out)
    }

    /// Acts by the monomial `theta_1^{e_1} theta_2^{e_2} ...`, `theta_1` first.
    pub fn monomial_act(&self, xi: &GroupVector, exps: &[u16], mode: Mode) -> GroupVector {
        let mut acc = xi.clone();
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                if acc.is_zero() {
                    return acc;
                }
                acc = self.dunkl_act(&acc, k + 1, mode).expect("index in range");
            }
        }
        acc
    }

    /// `w * S_v(theta)` (extended) or `w . S_v(theta)` (Bruhat).
    pub fn schubert_act(&self, w: WeylElem, v: WeylElem, mode: Mode) -> GroupVector {
        let start = GroupVector::basis(w);
        let mut out = GroupVector::zero();
        for (m, c) in self.schubert.get(v).terms() {
            let c: i64 = c
                .to_integer()
                .try_into()
                .expect("Schubert coefficients fit in i64");
            out.add_scaled(&self.monomial_act(&start, m.exps(), mode), c);
        }
        out
    }

    /// Coefficient of `u` in `w * S_v(theta)`.
    pub fn f_coeff(&self, w: WeylElem, v: WeylElem, u: WeylElem) -> i64 {
        self.schubert_act(w, v, Mode::Extended).coeff(u)
    }
}

/// The augmentation `w -> 1`.
pub fn psi(xi: &GroupVector) -> i64 {
    xi.terms().map(|(_, c)| c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Word;

    fn el(g: &WeylGroup, word: &[usize]) -> WeylElem {
        g.from_word(&Word::new(word.iter().copied())).unwrap()
    }

    fn vec_of(g: &WeylGroup, terms: &[(&[usize], i64)]) -> GroupVector {
        let mut v = GroupVector::zero();
        for (w, c) in terms {
            v.add_term(el(g, w), *c);
        }
        v
    }

    #[test]
    fn generator_actions() {
        let g = WeylGroup::symmetric(3).unwrap();
        let fk = Fk::new(&g).unwrap();
        let gen = |a, b| fk.generator(a, b).unwrap();
        let s1s2 = GroupVector::basis(el(&g, &[1, 2]));
        let w0 = GroupVector::basis(g.longest());
        let id = GroupVector::basis(g.identity());
        assert_eq!(fk.bruhat_act(&s1s2, gen(1, 3)), vec_of(&g, &[(&[2], 1)]));
        assert_eq!(fk.bruhat_act(&w0, gen(1, 2)), vec_of(&g, &[(&[1, 2], 1)]));
        assert_eq!(fk.extended_act(&w0, gen(1, 3)), id);
        assert_eq!(fk.extended_act(&s1s2, gen(2, 3)), vec_of(&g, &[(&[1], 1)]));
        assert!(fk.bruhat_act(&w0, gen(1, 3)).is_zero());
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert!(fk.bruhat_act(&id, gen(a, b)).is_zero());
            assert!(fk.extended_act(&id, gen(a, b)).is_zero());
        }
        assert_eq!(fk.extended_act(&w0, gen(3, 1)), vec_of(&g, &[(&[], -1)]));
        assert!(fk.generator(2, 4).is_err());
        assert!(fk.generator(2, 2).is_err());
    }

    #[test]
    fn dunkl_examples() {
        let g = WeylGroup::symmetric(3).unwrap();
        let fk = Fk::new(&g).unwrap();
        let s1s2 = GroupVector::basis(el(&g, &[1, 2]));
        let t1 = fk.dunkl_act(&s1s2, 1, Mode::Extended).unwrap();
        assert_eq!(t1, vec_of(&g, &[(&[2], 1)]));
        let mut both = t1;
        both.add_scaled(&fk.dunkl_act(&s1s2, 2, Mode::Extended).unwrap(), 1);
        assert_eq!(both, vec_of(&g, &[(&[2], 1), (&[1], 1)]));
        for i in 1..=3 {
            assert!(fk.dunkl_act(&GroupVector::basis(g.identity()), i, Mode::Extended).unwrap().is_zero());
        }
    }

    #[test]
    fn schubert_action_examples() {
        let g = WeylGroup::symmetric(3).unwrap();
        let fk = Fk::new(&g).unwrap();
        let s1s2 = el(&g, &[1, 2]);
        assert_eq!(fk.schubert_act(s1s2, g.simple(1), Mode::Extended), vec_of(&g, &[(&[2], 1)]));
        let r = fk.schubert_act(s1s2, g.simple(2), Mode::Extended);
        assert_eq!(r, vec_of(&g, &[(&[2], 1), (&[1], 1)]));
        assert_eq!(psi(&r), 2);
        assert_eq!(fk.schubert_act(s1s2, g.identity(), Mode::Bruhat), GroupVector::basis(s1s2));
        assert_eq!(fk.f_coeff(s1s2, g.simple(2), g.simple(1)), 1);
        assert_eq!(fk.f_coeff(s1s2, g.simple(1), g.simple(2)), 1);
        for w in g.elements() {
            assert_eq!(fk.f_coeff(w, g.identity(), w), 1);
        }
        assert_eq!(psi(&vec_of(&g, &[(&[2], 2), (&[1], 1)])), 3);
        assert_eq!(psi(&GroupVector::zero()), 0);
    }

    fn relation_sides(fk: &Fk, xi: &GroupVector, mode: Mode) -> Vec<(GroupVector, GroupVector)> {
        let n = fk.n();
        let act = |x: &GroupVector, word: &[(usize, usize)]| {
            word.iter()
                .fold(x.clone(), |acc, &(a, b)| fk.act(&acc, FkGenerator::new(a, b).unwrap(), mode))
        };
        let sum = |a: GroupVector, b: GroupVector| {
            let mut s = a;
            s.add_scaled(&b, 1);
            s
        };
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                out.push((act(xi, &[(i, j), (i, j)]), GroupVector::zero()));
                for k in (1..=n).filter(|&k| k != i && k != j) {
                    out.push((
                        act(xi, &[(i, j), (j, k)]),
                        sum(act(xi, &[(j, k), (i, k)]), act(xi, &[(i, k), (i, j)])),
                    ));
                    out.push((
                        act(xi, &[(j, k), (i, j)]),
                        sum(act(xi, &[(i, j), (i, k)]), act(xi, &[(i, k), (j, k)])),
                    ));
                    for l in (1..=n).filter(|&l| l != i && l != j && l != k) {
                        out.push((act(xi, &[(i, j), (k, l)]), act(xi, &[(k, l), (i, j)])));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn relations_act_as_zero_on_s4() {
        let g = WeylGroup::symmetric(4).unwrap();
        let fk = Fk::new(&g).unwrap();
        for mode in [Mode::Bruhat, Mode::Extended] {
            for w in g.elements() {
                for (lhs, rhs) in relation_sides(&fk, &GroupVector::basis(w), mode) {
                    assert_eq!(lhs, rhs, "{mode:?} at {}", g.name(w));
                }
            }
        }
    }

    #[test]
    fn dunkl_elements_commute() {
        let g = WeylGroup::symmetric(4).unwrap();
        let fk = Fk::new(&g).unwrap();
        for mode in [Mode::Bruhat, Mode::Extended] {
            for w in g.elements() {
                let x = GroupVector::basis(w);
                for i in 1..=4 {
                    for j in 1..=4 {
                        let a = fk.dunkl_act(&fk.dunkl_act(&x, i, mode).unwrap(), j, mode).unwrap();
                        let b = fk.dunkl_act(&fk.dunkl_act(&x, j, mode).unwrap(), i, mode).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn inversion_criterion_matches_lengths() {
        let g = WeylGroup::symmetric(4).unwrap();
        let fk = Fk::new(&g).unwrap();
        for w in g.elements() {
            let p = g.perm(w).unwrap();
            for k in 1..=4 {
                for l in k + 1..=4 {
                    let shorter = g.length(fk.times_transposition(w, k, l)) < g.length(w);
                    assert_eq!(p[k - 1] > p[l - 1], shorter);
                }
            }
        }
    }

    #[test]
    fn bruhat_mode_is_the_degree_part_of_extended() {
        let g = WeylGroup::symmetric(4).unwrap();
        let fk = Fk::new(&g).unwrap();
        for w in g.elements() {
            for v in g.elements() {
                let ext = fk.schubert_act(w, v, Mode::Extended);
                let bru = fk.schubert_act(w, v, Mode::Bruhat);
                let mut filtered = GroupVector::zero();
                for (u, c) in ext.terms() {
                    if g.length(u) + g.length(v) == g.length(w) {
                        filtered.add_term(u, c);
                    }
                }
                assert_eq!(bru, filtered);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn factor_order_does_not_matter(
            wi in 0usize..24,
            vi in 0usize..24,
            keys in proptest::collection::vec(0u32..1000, 12),
            extended in proptest::bool::ANY,
        ) {
            let g = WeylGroup::symmetric(4).unwrap();
            let fk = Fk::new(&g).unwrap();
            let mode = if extended { Mode::Extended } else { Mode::Bruhat };
            let (w, v) = (g.elements().nth(wi).unwrap(), g.elements().nth(vi).unwrap());
            let mut out = GroupVector::zero();
            for (m, c) in fk.schubert.get(v).terms() {
                let mut factors: Vec<usize> = m
                    .exps()
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &e)| std::iter::repeat_n(k + 1, e as usize))
                    .collect();
                let mut order: Vec<usize> = (0..factors.len()).collect();
                order.sort_by_key(|&p| keys[p]);
                factors = order.into_iter().map(|p| factors[p]).collect();
                let mut acc = GroupVector::basis(w);
                for i in factors {
                    acc = fk.dunkl_act(&acc, i, mode).unwrap();
                }
                out.add_scaled(&acc, c.to_integer().try_into().unwrap());
            }
            proptest::prop_assert_eq!(out, fk.schubert_act(w, v, mode));
        }
    }
}
