//! Quotients of Laurent polynomials.

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::scalar::Scalar;

/// `num / den` with `den != 0`.
///
/// Construction pulls monomial factors of the denominator into the numerator,
/// cancels the denominator entirely when it divides exactly, and makes the
/// denominator's leading coefficient one. Equality never relies on this
/// normalization: [`RationalFn::equals`] cross-multiplies.
#[derive(Clone, Debug)]
pub struct RationalFn<C> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Scalar> RationalFn<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RationalFn { num, den };
        f.normalize();
        Ok(f)
    }

    /// Skips normalization; the caller guarantees `den != 0`.
    pub fn from_parts(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RationalFn { num, den }
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        let n = p.nvars();
        RationalFn {
            num: p,
            den: LaurentPoly::one(n),
        }
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this equals, if the denominator cancels.
    pub fn as_laurent(&self) -> Option<LaurentPoly<C>> {
        self.num.div_exact(&self.den)
    }

    fn normalize(&mut self) {
        let nv = self.num.nvars();
        if self.num.is_zero() {
            self.den = LaurentPoly::one(nv);
            return;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = LaurentPoly::one(nv);
            return;
        }
        let (m, d0) = self.den.split_monomial();
        let neg: Vec<i32> = m.iter().map(|x| -x).collect();
        let lc = d0.leading().map(|(_, c)| c.clone()).unwrap();
        let inv = C::one() / lc;
        self.num = self.num.mul_monomial(&neg, &inv);
        self.den = d0.scale(&inv);
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFn {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalFn {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFn {
            num,
            den: &self.den * &o.den,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFn {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as i32;
        Ok(RationalFn {
            num: base.num.pow(k).unwrap(),
            den: base.den.pow(k).unwrap(),
        })
    }

    /// Full multiplicative cross-check `f.num * g.den == g.num * f.den`.
    pub fn equals(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn eval_with<S: Scalar>(&self, point: &[S], coeff: impl Fn(&C) -> S + Copy) -> Option<S> {
        let n = self.num.eval_with(point, coeff)?;
        let d = self.den.eval_with(point, coeff)?;
        if d.is_zero() {
            return None;
        }
        Some(n / d)
    }

    /// Rewrites each variable to a rational function in another ring.
    pub fn substitute(&self, images: &[RationalFn<C>]) -> Result<RationalFn<C>> {
        let n = substitute_poly(&self.num, images)?;
        let d = substitute_poly(&self.den, images)?;
        n.div(&d)
    }
}

/// Substitutes rational functions for the variables of a Laurent polynomial.
///
/// Negative exponents need a nonzero image numerator, checked symbolically.
pub fn substitute_poly<C: Scalar>(p: &LaurentPoly<C>, images: &[RationalFn<C>]) -> Result<RationalFn<C>> {
    assert_eq!(images.len(), p.nvars(), "assignment must cover every variable");
    let target = images.first().map(|f| f.nvars()).unwrap_or(0);
    let mins = p.min_exponents();
    let mut den = LaurentPoly::one(target);
    for (i, &m) in mins.iter().enumerate() {
        if m < 0 {
            if images[i].num.is_zero() {
                return Err(Error::DivisionByZero);
            }
            den = &den * &images[i].num.pow(-m).unwrap();
        }
    }
    // Every term gets multiplied through by prod num_i^{-min_i} and by the
    // image denominators raised to the largest exponent.
    let maxs: Vec<i32> = {
        let mut mx = vec![0i32; p.nvars()];
        for (e, _) in p.terms() {
            for (a, &x) in mx.iter_mut().zip(e) {
                *a = (*a).max(x);
            }
        }
        mx
    };
    for (i, &m) in maxs.iter().enumerate() {
        if m > 0 {
            den = &den * &images[i].den.pow(m).unwrap();
        }
    }
    let mut num = LaurentPoly::zero(target);
    for (e, c) in p.terms() {
        let mut t = LaurentPoly::constant(c.clone(), target);
        for (i, &x) in e.iter().enumerate() {
            let (top, bot) = (&images[i].num, &images[i].den);
            // x_i^x scaled by num_i^{-min} den_i^{max}
            let up = x - mins[i].min(0);
            let down = maxs[i] - x;
            if up > 0 {
                t = &t * &top.pow(up).unwrap();
            }
            if down > 0 {
                t = &t * &bot.pow(down).unwrap();
            }
        }
        num = &num + &t;
    }
    Ok(RationalFn::from_parts(num, den))
}
