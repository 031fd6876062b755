//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! This is the arithmetic kernel shared by root polynomials (variables
//! `a1..ar`, the simple roots) and Schubert polynomials (variables `x1..xn`).
//! Terms are kept in graded-lexicographic order so that printing and
//! serialization are reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial.
///
/// Ordered by total degree first, then lexicographically with earlier
/// variables ranked first (`a1^2 < a1*a2 < a2^2` among degree two).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn write(&self, f: &mut impl fmt::Write, prefix: &str) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "{prefix}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The `i`-th variable (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, Rational::one());
        p
    }

    /// The linear form `sum_i coeffs[i] * var_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut m = Monomial::one(nvars);
                m.0[i] = 1;
                p.add_term(m, int(c));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity does not match");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Accumulates `self += other * factor` without materializing the product.
    pub fn add_mul(&mut self, other: &Poly, factor: &Poly) {
        for (m1, c1) in &other.terms {
            for (m2, c2) in &factor.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Substitutes variable `j` by the linear form `images[j]`.
    pub fn substitute_linear(&self, images: &[Vec<i64>]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let n = self.nvars;
        // A permutation of variables only needs an exponent shuffle.
        let perm: Option<Vec<usize>> = images
            .iter()
            .map(|form| {
                let mut hit = None;
                for (k, &c) in form.iter().enumerate() {
                    match c {
                        0 => {}
                        1 if hit.is_none() => hit = Some(k),
                        _ => return None,
                    }
                }
                hit
            })
            .collect();
        if let Some(perm) = perm {
            let mut out = Poly::zero(n);
            for (m, c) in &self.terms {
                let mut e = Monomial::one(n);
                for (j, &k) in perm.iter().enumerate() {
                    e.0[k] += m.0[j];
                }
                out.add_term(e, c.clone());
            }
            return out;
        }

        let forms: Vec<Poly> = images.iter().map(|f| Poly::linear(f)).collect();
        let mut powers: Vec<Vec<Poly>> = forms.iter().map(|_| vec![Poly::one(n)]).collect();
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(n, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = &powers[j][powers[j].len() - 1] * &forms[j];
                    powers[j].push(next);
                }
                acc = &acc * &powers[j][e];
            }
            out += &acc;
        }
        out
    }

    /// Exact quotient by the linear form `sum_k divisor[k] * var_k`.
    ///
    /// Fails with [`Error::InexactDivision`] if a remainder is left; callers
    /// only divide when divisibility is guaranteed, so this signals a bug.
    pub fn div_linear(&self, divisor: &[i64]) -> Result<Poly> {
        assert_eq!(divisor.len(), self.nvars);
        let pivot = divisor
            .iter()
            .position(|&c| c != 0)
            .expect("division by the zero form");
        let single = divisor.iter().filter(|&&c| c != 0).count() == 1;
        if single {
            let c = int(divisor[pivot]);
            let mut out = Poly::zero(self.nvars);
            for (m, v) in &self.terms {
                if m.0[pivot] == 0 {
                    return Err(Error::InexactDivision);
                }
                let mut q = m.clone();
                q.0[pivot] -= 1;
                out.add_term(q, v / &c);
            }
            return Ok(out);
        }

        let lead = int(divisor[pivot]);
        let form = Poly::linear(divisor);
        let mut rest = self.clone();
        let mut quotient = Poly::zero(self.nvars);
        loop {
            // Eliminate the term with the largest exponent in the pivot variable.
            let top = rest
                .terms
                .iter()
                .max_by_key(|(m, _)| m.0[pivot])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = top else { break };
            if m.0[pivot] == 0 {
                return Err(Error::InexactDivision);
            }
            let mut q = m;
            q.0[pivot] -= 1;
            let qc = c / &lead;
            let step = Poly::from_terms(self.nvars, [(q.clone(), qc.clone())]);
            rest -= &(&step * &form);
            quotient.add_term(q, qc);
        }
        Ok(quotient)
    }

    /// `(self - reflected) / divisor`, the shared divided-difference kernel.
    pub fn divided_difference(&self, reflected: &Poly, divisor: &[i64]) -> Result<Poly> {
        (self - reflected).div_linear(divisor)
    }

    /// Text form such as `1 + 3*a1 + a1^2*a2`, variables named `{prefix}1..`.
    pub fn to_text(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            if is_const {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                m.write(&mut s, prefix).expect("writing to a String");
            }
        }
        s
    }

    /// JSON form: a list of `{"exp": [..], "num": .., "den": ..}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    json!({
                        "exp": m.0.as_slice(),
                        "num": bigint_json(c.numer()),
                        "den": bigint_json(c.denom()),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value, nvars: usize) -> Result<Poly> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a JSON array".into()))?;
        let mut p = Poly::zero(nvars);
        for t in arr {
            let exp: Vec<u16> = serde_json::from_value(t["exp"].clone())?;
            if exp.len() != nvars {
                return Err(Error::RankMismatch {
                    expected: nvars,
                    found: exp.len(),
                });
            }
            let num = bigint_from_json(&t["num"])?;
            let den = bigint_from_json(&t["den"])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            p.add_term(Monomial::from_exps(&exp), Rational::new(num, den));
        }
        Ok(p)
    }
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad integer {v}")))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("a"))
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        out.add_mul(self, rhs);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn text_form_is_graded_lex() {
        let p = &(&Poly::one(2) + &a(0).scale(&int(3))) + &(&(&a(0) * &a(0)) * &a(1));
        assert_eq!(p.to_text("a"), "1 + 3*a1 + a1^2*a2");
        let q = &(&a(1) * &a(1)) + &(&(&a(0) * &a(1)) - &(&a(0) * &a(0)));
        assert_eq!(q.to_text("a"), "-a1^2 + a1*a2 + a2^2");
        assert_eq!(Poly::zero(2).to_text("a"), "0");
        let half = Poly::constant(2, Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!((&half * &a(0)).to_text("x"), "1/2*x1");
    }

    #[test]
    fn exact_division_by_linear_forms() {
        let f = &(&a(0) + &a(1)) * &(&a(0) - &a(1));
        assert_eq!(f.div_linear(&[1, 1]).unwrap(), &a(0) - &a(1));
        assert_eq!(f.div_linear(&[1, -1]).unwrap(), &a(0) + &a(1));
        assert!(matches!(a(0).div_linear(&[0, 1]), Err(Error::InexactDivision)));
        assert!(matches!(
            Poly::one(2).div_linear(&[1, -1]),
            Err(Error::InexactDivision)
        ));
    }

    #[test]
    fn substitution_handles_permutations_and_general_forms() {
        let f = &a(0) * &a(1);
        assert_eq!(f.substitute_linear(&[vec![0, 1], vec![1, 0]]), f);
        // a1 -> -a1, a2 -> a1 + a2
        let g = f.substitute_linear(&[vec![-1, 0], vec![1, 1]]);
        assert_eq!(g.to_text("a"), "-a1^2 - a1*a2");
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let big = Rational::new(BigInt::from(10).pow(30), BigInt::from(7));
        let p = &Poly::constant(2, big) + &a(1);
        let back = Poly::from_json(&p.to_json(), 2).unwrap();
        assert_eq!(p, back);
    }
}
