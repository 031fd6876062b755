//! Schubert polynomials by divided differences from the staircase monomial.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::{int, Monomial, Poly};
use crate::weyl::{WeylElem, WeylGroup};

/// A Schubert polynomial in `x1..x_{n-1}`.
pub type SchubertPoly = Poly;

/// `d_k f = (f - f(x_k <-> x_{k+1})) / (x_k - x_{k+1})` over `nvars` variables.
pub fn divided_difference_x(f: &Poly, k: usize) -> Result<Poly> {
    let n = f.nvars();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, rank: n.saturating_sub(1) });
    }
    let images: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let target = match j + 1 {
                j if j == k => k,
                j if j == k + 1 => k - 1,
                _ => j,
            };
            let mut e = vec![0; n];
            e[target] = 1;
            e
        })
        .collect();
    let mut divisor = vec![0; n];
    divisor[k - 1] = 1;
    divisor[k] = -1;
    f.divided_difference(&f.substitute_linear(&images), &divisor)
}

/// Memoized Schubert polynomials for every element of `S_n`.
pub struct Schubert<'g> {
    group: &'g WeylGroup,
    memo: Vec<OnceLock<SchubertPoly>>,
}

impl<'g> Schubert<'g> {
    pub fn new(group: &'g WeylGroup) -> Result<Self> {
        if !group.is_type_a() {
            return Err(Error::NotTypeA);
        }
        Ok(Schubert {
            group,
            memo: (0..group.len()).map(|_| OnceLock::new()).collect(),
        })
    }

    /// `n` for `S_n`.
    pub fn n(&self) -> usize {
        self.group.rank() + 1
    }

    // Works in n variables; x_n never survives, so it is dropped at the end.
    fn full(&self, w: WeylElem) -> Poly {
        let n = self.n();
        let g = self.group;
        if w == g.longest() {
            let exps: Vec<u16> = (0..n).map(|i| (n - 1 - i) as u16).collect();
            return Poly::from_terms(n, [(Monomial::from_exps(&exps), int(1))]);
        }
        let k = (1..n)
            .find(|&k| g.length(g.right_mul_simple(w, k)) > g.length(w))
            .expect("only the longest element has no ascent");
        divided_difference_x(&self.full(g.right_mul_simple(w, k)), k).expect("exact")
    }

    pub fn get(&self, w: WeylElem) -> &SchubertPoly {
        self.memo[w.index()].get_or_init(|| {
            let n = self.n();
            let full = self.full(w);
            let reduced = Poly::from_terms(
                n - 1,
                full.terms().map(|(m, c)| {
                    debug_assert_eq!(m.exps()[n - 1], 0);
                    (Monomial::from_exps(&m.exps()[..n - 1]), c.clone())
                }),
            );
            assert!(
                reduced.is_nonnegative() && reduced.is_integral(),
                "Schubert polynomial with a negative or fractional coefficient"
            );
            reduced
        })
    }

    pub fn of_perm(&self, perm: &[u8]) -> Result<&SchubertPoly> {
        Ok(self.get(self.group.from_perm(perm)?))
    }
}

/// `S_w` for a one-line permutation `w` of `{1..n}`.
pub fn schubert_poly(perm: &[u8]) -> Result<SchubertPoly> {
    let g = WeylGroup::symmetric(perm.len())?;
    let s = Schubert::new(&g)?;
    Ok(s.of_perm(perm)?.clone())
}
