//! Multivariate Laurent polynomials with dense exponent vectors.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

pub type Exponents = Vec<i32>;

/// Interned variable names. Exponent vectors index into this list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Registry {
    names: Vec<String>,
}

impl Registry {
    pub fn new(names: Vec<String>) -> Registry {
        Registry { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A Laurent polynomial `sum c_m x^m` over `nvars` variables.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<C> {
    nvars: usize,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(C::one(), nvars)
    }

    pub fn constant(c: C, nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exps: Exponents, c: C) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// The constant, if the polynomial is one.
    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Lex-largest term (variable 0 most significant).
    pub fn leading(&self) -> Option<(&Exponents, &C)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[i32], c: &C) -> Self {
        let mut out = BTreeMap::new();
        for (e, v) in &self.terms {
            let ne: Exponents = e.iter().zip(m).map(|(a, b)| a + b).collect();
            out.insert(ne, v.clone() * c.clone());
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Splits `self = x^m * p` where `p` is a polynomial divisible by no variable.
    pub fn split_monomial(&self) -> (Exponents, Self) {
        let m = self.min_exponents();
        let neg: Exponents = m.iter().map(|x| -x).collect();
        (m, self.mul_monomial(&neg, &C::one()))
    }

    /// Variables that occur with nonzero exponent in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        if e < 0 {
            if !self.is_monomial() {
                return None;
            }
            let (m, c) = self.terms.iter().next().unwrap();
            let inv = C::one() / c.clone();
            let ne: Exponents = m.iter().map(|x| -x).collect();
            return LaurentPoly::monomial(ne, inv).pow(-e);
        }
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Some(acc)
    }

    /// Exact quotient `self / d` if it is a Laurent polynomial.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (mn, n0) = self.split_monomial();
        let (md, d0) = d.split_monomial();
        let q = poly_div(&n0, &d0)?;
        let shift: Exponents = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        Some(q.mul_monomial(&shift, &C::one()))
    }

    /// Evaluates at `point`, mapping coefficients through `coeff`.
    /// Returns `None` when a variable with a negative exponent is zero.
    pub fn eval_with<S: Scalar>(&self, point: &[S], coeff: impl Fn(&C) -> S) -> Option<S> {
        assert_eq!(point.len(), self.nvars);
        let mut inv: Vec<Option<S>> = vec![None; self.nvars];
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = coeff(c);
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = t * spow(&point[i], x as u32);
                } else if x < 0 {
                    if inv[i].is_none() {
                        if point[i].is_zero() {
                            return None;
                        }
                        inv[i] = Some(S::one() / point[i].clone());
                    }
                    t = t * spow(inv[i].as_ref().unwrap(), (-x) as u32);
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    /// Renames variables: variable `i` becomes `map[i]` in a ring of `nvars` variables.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    ne[map[i]] += x;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Sum of `weights[i] * e_i` over each term; `Some` iff all terms agree.
    pub fn weighted_degree(&self, weights: &[Vec<i64>]) -> Option<Vec<i64>> {
        let dim = weights.first().map(|w| w.len()).unwrap_or(0);
        let mut out: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            let mut d = vec![0i64; dim];
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    for (a, w) in d.iter_mut().zip(&weights[i]) {
                        *a += x as i64 * w;
                    }
                }
            }
            match &out {
                None => out = Some(d),
                Some(o) if *o == d => {}
                Some(_) => return None,
            }
        }
        out
    }
}

impl<C: Scalar + PartialOrd> LaurentPoly<C> {
    /// Canonical text: terms by descending total degree, then lex, `^` for powers.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ts: Vec<(&Exponents, &C)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: i64 = a.0.iter().map(|&x| x as i64).sum();
            let db: i64 = b.0.iter().map(|&x| x as i64).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let mono = render_monomial(e, names);
            let neg = *c < C::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                let _ = write!(s, "{}", abs);
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{}*{}", abs, mono);
            }
        }
        s
    }
}

pub fn render_monomial(e: &[i32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        if x == 1 {
            parts.push(names[i].clone());
        } else if x != 0 {
            parts.push(format!("{}^{}", names[i], x));
        }
    }
    parts.join("*")
}

fn spow<S: Scalar>(b: &S, mut e: u32) -> S {
    let mut acc = S::one();
    let mut base = b.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Exact division of polynomials (nonnegative exponents) by lex leading terms.
fn poly_div<C: Scalar>(n: &LaurentPoly<C>, d: &LaurentPoly<C>) -> Option<LaurentPoly<C>> {
    let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut r = n.clone();
    let mut q = LaurentPoly::zero(n.nvars);
    while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let shift: Exponents = re.iter().zip(&de).map(|(a, b)| a - b).collect();
        if shift.iter().any(|&x| x < 0) {
            return None;
        }
        let c = rc / dc.clone();
        r = &r - &d.mul_monomial(&shift, &c);
        q.add_term(shift, c);
    }
    Some(q)
}

impl<C: Scalar> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};
    use crate::Laurent;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| ["x", "y", "z", "w"][i].to_string()).collect()
    }

    #[test]
    fn difference_of_squares() {
        let x = Laurent::var(0, 2);
        let y = Laurent::var(1, 2);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.render(&names(2)), "x^2 - y^2");
    }

    #[test]
    fn inverse_times_var() {
        let x = Laurent::var(0, 1);
        let xi = x.pow(-1).unwrap();
        assert!((&x * &xi).is_one());
    }

    #[test]
    fn exact_division() {
        let x = Laurent::var(0, 2);
        let y = Laurent::var(1, 2);
        let num = &(&x * &x) - &(&y * &y);
        let den = &x - &y;
        assert_eq!(num.div_exact(&den).unwrap(), &x + &y);
        assert!(x.div_exact(&(&x + &y)).is_none());
        let xinv = x.pow(-1).unwrap();
        let shifted = &num * &xinv;
        assert_eq!(shifted.div_exact(&den).unwrap(), &(&x + &y) * &xinv);
    }

    #[test]
    fn render_signs_and_coefficients() {
        let x = Laurent::var(0, 2);
        let y = Laurent::var(1, 2);
        let p = &(&x.scale(&int(3)) - &y.pow(-2).unwrap()) + &Laurent::constant(rational(-1, 2), 2);
        assert_eq!(p.render(&names(2)), "3*x - 1/2 - y^-2");
    }

    #[test]
    fn evaluation_and_rename() {
        let x = Laurent::var(0, 2);
        let y = Laurent::var(1, 2);
        let p = &(&x * &y) + &y.pow(-1).unwrap();
        let v = p.eval_with(&[int(2), int(4)], |c| c.clone()).unwrap();
        assert_eq!(v, rational(33, 4));
        assert!(p.eval_with(&[int(2), int(0)], |c| c.clone()).is_none());
        let q = p.rename(&[2, 0], 3);
        assert_eq!(q.support(), vec![0, 2]);
    }

    #[test]
    fn weighted_degree_detects_inhomogeneous() {
        let x = Laurent::var(0, 2);
        let y = Laurent::var(1, 2);
        let w = vec![vec![1, 0], vec![0, 1]];
        assert_eq!((&x * &y).weighted_degree(&w), Some(vec![1, 1]));
        assert_eq!((&x + &y).weighted_degree(&w), None);
    }

    use proptest::prelude::*;

    fn laurent() -> impl Strategy<Value = Laurent> {
        prop::collection::vec((prop::collection::vec(-2i32..3, 3), -4i64..5), 0..5)
            .prop_map(|ts| LaurentPoly::from_terms(3, ts.into_iter().map(|(e, c)| (e, int(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_undoes_multiplication(a in laurent(), b in laurent()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in 1i64..6, y in 1i64..6, z in -5i64..-1) {
            let pt = vec![rational(x, 1), rational(1, y), rational(z, 1)];
            let ev = |p: &Laurent| p.eval_with(&pt, |c| c.clone()).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
            prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        }
    }
}
