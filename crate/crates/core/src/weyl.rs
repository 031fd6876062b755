//! Finite Weyl groups: enumeration, words, Bruhat order and reflections.
//!
//! The whole group is enumerated once by breadth-first search over right
//! multiplication by simple reflections. Elements are then small indices
//! ([`WeylElem`]) into that table; canonical forms are the matrix of images
//! of the simple roots, plus the one-line permutation in type A.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Coroot, Root};
use crate::error::{Error, Result};

/// Default bound on the number of elements enumerated before giving up.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// Index of an element inside its [`WeylGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem(u32);

impl WeylElem {
    pub const IDENTITY: WeylElem = WeylElem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word in the simple reflections, letters `1..=r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = usize>) -> Word {
        Word(letters.into_iter().map(|l| l as u8).collect())
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter as u8);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The subword at the given (0-based, increasing) positions.
    pub fn subword(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p]).collect())
    }

    /// Parses `1,2,1` (commas optional between single digits: `121`).
    pub fn parse(text: &str) -> Result<Word> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Word::empty());
        }
        let parts: Vec<&str> = if t.contains(',') {
            t.split(',').map(str::trim).collect()
        } else {
            t.split_terminator("").filter(|s| !s.is_empty()).collect()
        };
        parts
            .into_iter()
            .map(|p| {
                p.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad word letter `{p}`")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// A positive root with its coroot and reflection.
#[derive(Clone, Debug)]
pub struct PositiveRoot {
    pub root: Root,
    pub coroot: Coroot,
    pub reflection: WeylElem,
}

pub struct WeylGroup {
    cartan: CartanData,
    rank: usize,
    images: Vec<Vec<i64>>,
    perms: Option<Vec<Vec<u8>>>,
    lengths: Vec<u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    words: Vec<Word>,
    index: HashMap<Vec<i64>, u32>,
    perm_index: HashMap<Vec<u8>, u32>,
    positive_roots: Vec<PositiveRoot>,
    reduced_words: Vec<OnceLock<Arc<Vec<Word>>>>,
    intervals: Vec<OnceLock<Vec<bool>>>,
    lowering: Vec<OnceLock<Vec<(usize, WeylElem)>>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup")
            .field("cartan", &self.cartan)
            .field("order", &self.len())
            .finish()
    }
}

impl WeylGroup {
    pub fn new(cartan: CartanData) -> Result<Self> {
        Self::with_cap(cartan, DEFAULT_ELEMENT_CAP)
    }

    /// The symmetric group S_n as the Weyl group of type A_{n-1}.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCartan("S_n needs n >= 2".into()));
        }
        Self::new(CartanData::type_a(n - 1))
    }

    pub fn with_cap(cartan: CartanData, cap: usize) -> Result<Self> {
        let r = cartan.rank();
        let type_a = cartan.is_type_a();
        let a = cartan.matrix().to_vec();

        let mut identity = vec![0i64; r * r];
        for j in 0..r {
            identity[j * r + j] = 1;
        }
        let mut images = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0u32)]);
        let mut perms = type_a.then(|| vec![(1..=r as u8 + 1).collect::<Vec<u8>>()]);
        let mut lengths = vec![0u32];
        let mut right: Vec<u32> = Vec::new();
        let mut words = vec![Word::empty()];

        // BFS: elements are discovered in nondecreasing length order.
        let mut head = 0;
        while head < images.len() {
            let w = images[head].clone();
            for i in 0..r {
                // (w s_i)(alpha_j) = w(alpha_j) - a[i][j] w(alpha_i); columns are stored row-major per j.
                let mut next = w.clone();
                for j in 0..r {
                    let aij = a[i][j];
                    if aij != 0 {
                        for k in 0..r {
                            next[j * r + k] -= aij * w[i * r + k];
                        }
                    }
                }
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if images.len() >= cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        let id = images.len() as u32;
                        index.insert(next.clone(), id);
                        images.push(next);
                        lengths.push(lengths[head] + 1);
                        let mut word = words[head].clone();
                        word.push(i + 1);
                        words.push(word);
                        if let Some(p) = perms.as_mut() {
                            let mut q = p[head].clone();
                            q.swap(i, i + 1);
                            p.push(q);
                        }
                        id
                    }
                };
                right.push(id);
            }
            head += 1;
        }
        let n = images.len();

        // Lexicographically smallest reduced word, built level by level.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| lengths[w]);
        for &w in &order {
            if lengths[w] == 0 {
                continue;
            }
            let best = (0..r)
                .filter(|&i| lengths[right[w * r + i] as usize] < lengths[w])
                .map(|i| {
                    let mut word = words[right[w * r + i] as usize].clone();
                    word.push(i + 1);
                    word
                })
                .min()
                .expect("non-identity element has a right descent");
            words[w] = best;
        }

        let mut group = WeylGroup {
            rank: r,
            images,
            perm_index: perms
                .as_ref()
                .map(|p| p.iter().enumerate().map(|(k, q)| (q.clone(), k as u32)).collect())
                .unwrap_or_default(),
            perms,
            lengths,
            right,
            left: Vec::new(),
            inverse: Vec::new(),
            words,
            index,
            positive_roots: Vec::new(),
            reduced_words: (0..n).map(|_| OnceLock::new()).collect(),
            intervals: (0..n).map(|_| OnceLock::new()).collect(),
            lowering: (0..n).map(|_| OnceLock::new()).collect(),
            cartan,
        };

        group.inverse = (0..n)
            .map(|w| {
                let word = &group.words[w];
                let mut x = 0u32;
                for l in word.0.iter().rev() {
                    x = group.right[x as usize * r + *l as usize - 1];
                }
                x
            })
            .collect();
        group.left = (0..n)
            .flat_map(|w| (0..r).map(move |i| (w, i)))
            .map(|(w, i)| {
                // s_i w = (w^{-1} s_i)^{-1}
                let winv = group.inverse[w] as usize;
                group.inverse[group.right[winv * r + i] as usize]
            })
            .collect();

        let mut roots: Vec<PositiveRoot> = Vec::new();
        let mut seen: HashMap<Root, ()> = HashMap::new();
        for u in 0..n {
            for i in 1..=r {
                let beta = Root(group.images[u][(i - 1) * r..i * r].to_vec());
                if !beta.is_positive() || seen.contains_key(&beta) {
                    continue;
                }
                seen.insert(beta.clone(), ());
                let uel = WeylElem(u as u32);
                let coroot = group.act_coroot(uel, &group.cartan.simple_coroot(i));
                let refl = group.mul(group.mul(uel, group.simple(i)), group.inverse(uel));
                roots.push(PositiveRoot {
                    root: beta,
                    coroot,
                    reflection: refl,
                });
            }
        }
        roots.sort_by(|x, y| {
            let hx: i64 = x.root.0.iter().sum();
            let hy: i64 = y.root.0.iter().sum();
            hx.cmp(&hy).then_with(|| y.root.cmp(&x.root))
        });
        group.positive_roots = roots;
        Ok(group)
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_type_a(&self) -> bool {
        self.perms.is_some()
    }

    /// All elements, in nondecreasing length order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = WeylElem> + Clone {
        (0..self.images.len() as u32).map(WeylElem)
    }

    pub fn identity(&self) -> WeylElem {
        WeylElem::IDENTITY
    }

    pub fn simple(&self, i: usize) -> WeylElem {
        WeylElem(self.right[i - 1])
    }

    pub fn length(&self, w: WeylElem) -> usize {
        self.lengths[w.index()] as usize
    }

    pub fn longest(&self) -> WeylElem {
        // The last element discovered by BFS has maximal length, and w_0 is unique.
        WeylElem(self.images.len() as u32 - 1)
    }

    /// `w s_i`.
    pub fn right_mul_simple(&self, w: WeylElem, i: usize) -> WeylElem {
        WeylElem(self.right[w.index() * self.rank + i - 1])
    }

    /// `s_i w`.
    pub fn left_mul_simple(&self, i: usize, w: WeylElem) -> WeylElem {
        WeylElem(self.left[w.index() * self.rank + i - 1])
    }

    pub fn mul(&self, u: WeylElem, v: WeylElem) -> WeylElem {
        self.words[v.index()]
            .letters()
            .fold(u, |acc, l| self.right_mul_simple(acc, l))
    }

    pub fn inverse(&self, w: WeylElem) -> WeylElem {
        WeylElem(self.inverse[w.index()])
    }

    /// `s_{i_1} ... s_{i_m}`.
    pub fn from_word(&self, word: &Word) -> Result<WeylElem> {
        let mut w = self.identity();
        for l in word.letters() {
            self.cartan.check_index(l)?;
            w = self.right_mul_simple(w, l);
        }
        Ok(w)
    }

    /// Whether the word is a reduced expression.
    pub fn is_reduced(&self, word: &Word) -> bool {
        let mut w = self.identity();
        for l in word.letters() {
            let next = self.right_mul_simple(w, l);
            if self.length(next) <= self.length(w) {
                return false;
            }
            w = next;
        }
        true
    }

    /// The lexicographically smallest reduced word.
    pub fn canonical_word(&self, w: WeylElem) -> &Word {
        &self.words[w.index()]
    }

    /// Name such as `s1s2s1`, or `id`.
    pub fn name(&self, w: WeylElem) -> String {
        let word = self.canonical_word(w);
        if word.is_empty() {
            return "id".to_string();
        }
        word.letters().map(|l| format!("s{l}")).collect()
    }

    /// One-line permutation `[w(1), ..., w(n)]`, type A only.
    pub fn perm(&self, w: WeylElem) -> Option<&[u8]> {
        self.perms.as_ref().map(|p| p[w.index()].as_slice())
    }

    pub fn from_perm(&self, perm: &[u8]) -> Result<WeylElem> {
        if self.perms.is_none() {
            return Err(Error::NotTypeA);
        }
        self.perm_index
            .get(perm)
            .map(|&k| WeylElem(k))
            .ok_or_else(|| Error::InvalidPermutation(format!("{perm:?}")))
    }

    /// Images of the simple roots, column `j` being `w(alpha_{j+1})`.
    pub fn root_images(&self, w: WeylElem) -> Vec<Vec<i64>> {
        self.images[w.index()]
            .chunks(self.rank)
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn from_root_images(&self, images: &[Vec<i64>]) -> Option<WeylElem> {
        let flat: Vec<i64> = images.iter().flatten().copied().collect();
        self.index.get(&flat).map(|&k| WeylElem(k))
    }

    pub fn act_root(&self, w: WeylElem, root: &Root) -> Root {
        let r = self.rank;
        let img = &self.images[w.index()];
        let mut out = vec![0i64; r];
        for (j, &c) in root.0.iter().enumerate() {
            if c != 0 {
                for k in 0..r {
                    out[k] += c * img[j * r + k];
                }
            }
        }
        Root(out)
    }

    pub fn act_coroot(&self, w: WeylElem, coroot: &Coroot) -> Coroot {
        self.words[w.index()]
            .0
            .iter()
            .rev()
            .fold(coroot.clone(), |acc, &l| self.cartan.reflect_coroot(l as usize, &acc))
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// All reduced words of `w`, memoized.
    pub fn reduced_words(&self, w: WeylElem) -> Arc<Vec<Word>> {
        self.reduced_words[w.index()]
            .get_or_init(|| {
                if self.length(w) == 0 {
                    return Arc::new(vec![Word::empty()]);
                }
                let mut out = Vec::new();
                for i in 1..=self.rank {
                    let v = self.right_mul_simple(w, i);
                    if self.length(v) < self.length(w) {
                        for word in self.reduced_words(v).iter() {
                            let mut x = word.clone();
                            x.push(i);
                            out.push(x);
                        }
                    }
                }
                out.sort();
                Arc::new(out)
            })
            .clone()
    }

    /// The Bruhat interval below `w` as a membership table.
    fn interval(&self, w: WeylElem) -> &[bool] {
        self.intervals[w.index()].get_or_init(|| {
            // Elements admitting a reduced subword of the canonical word of w.
            let mut member = vec![false; self.len()];
            member[0] = true;
            let mut reached = vec![self.identity()];
            for l in self.canonical_word(w).letters() {
                let mut fresh = Vec::new();
                for &x in &reached {
                    let y = self.right_mul_simple(x, l);
                    if self.length(y) > self.length(x) && !member[y.index()] {
                        member[y.index()] = true;
                        fresh.push(y);
                    }
                }
                reached.extend(fresh);
            }
            member
        })
    }

    /// `v <= w` in the Bruhat order, by the subword criterion.
    pub fn bruhat_leq(&self, v: WeylElem, w: WeylElem) -> bool {
        self.interval(w)[v.index()]
    }

    pub fn bruhat_interval(&self, w: WeylElem) -> Vec<WeylElem> {
        self.elements().filter(|&v| self.bruhat_leq(v, w)).collect()
    }

    /// Pairs `(beta, w s_beta)` over positive roots with `l(w s_beta) = l(w) - 1`.
    pub fn lowering_reflections(&self, w: WeylElem) -> Vec<(&PositiveRoot, WeylElem)> {
        self.lowering[w.index()]
            .get_or_init(|| {
                let lw = self.length(w);
                self.positive_roots
                    .iter()
                    .enumerate()
                    .filter_map(|(k, beta)| {
                        let ws = self.mul(w, beta.reflection);
                        (self.length(ws) + 1 == lw).then_some((k, ws))
                    })
                    .collect()
            })
            .iter()
            .map(|&(k, ws)| (&self.positive_roots[k], ws))
            .collect()
    }

    /// Elements of the standard parabolic subgroup generated by `s_j`, `j` in `subset`.
    pub fn parabolic_subgroup(&self, subset: &[usize]) -> Result<Vec<WeylElem>> {
        for &j in subset {
            self.cartan.check_index(j)?;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut out = vec![self.identity()];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for &j in subset {
                let y = self.right_mul_simple(x, j);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    out.push(y);
                }
            }
            head += 1;
        }
        out.sort();
        Ok(out)
    }

    /// The minimal-length representative of `w W_P`, by descending through right descents in `P`.
    pub fn min_coset_rep(&self, w: WeylElem, subset: &[usize]) -> Result<WeylElem> {
        for &j in subset {
            self.cartan.check_index(j)?;
        }
        let mut x = w;
        'descend: loop {
            for &j in subset {
                let y = self.right_mul_simple(x, j);
                if self.length(y) < self.length(x) {
                    x = y;
                    continue 'descend;
                }
            }
            return Ok(x);
        }
    }
}
