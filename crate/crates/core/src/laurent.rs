//! Laurent polynomials in one variable with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Finitely supported map from exponent to coefficient; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(
    into = "BTreeMap<i64, C>",
    from = "BTreeMap<i64, C>",
    bound(serialize = "C: Serialize + Clone", deserialize = "C: Deserialize<'de> + Clone + Zero")
)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Clone + Zero> From<BTreeMap<i64, C>> for LaurentPoly<C> {
    fn from(terms: BTreeMap<i64, C>) -> Self {
        Self::from_terms(terms)
    }
}

impl<C> From<LaurentPoly<C>> for BTreeMap<i64, C> {
    fn from(p: LaurentPoly<C>) -> Self {
        p.terms
    }
}

impl<C> Default for LaurentPoly<C> {
    fn default() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
}

impl<C: Clone + Zero> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coefficient: C, exponent: i64) -> Self {
        let mut p = Self::default();
        p.add_term(exponent, coefficient);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: C) {
        let sum = match self.terms.remove(&exponent) {
            Some(old) => old + coefficient,
            None => coefficient,
        };
        if !sum.is_zero() {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn coefficient(&self, exponent: i64) -> C {
        self.terms.get(&exponent).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes `x -> x^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e * k, c.clone())))
    }

    /// Multiplies by `x^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + s, c.clone())).collect() }
    }
}

impl<C: Clone + Zero + One> LaurentPoly<C> {
    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn pow(&self, k: u32) -> Self
    where
        C: Mul<Output = C>,
    {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluates at `x`, where `x` must be invertible whenever negative
    /// exponents occur; `inverse` supplies `x^-1`.
    pub fn eval<T>(&self, x: T, inverse: T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T> + From<C>,
    {
        self.terms.iter().fold(T::zero(), |acc, (&e, c)| {
            let base = if e < 0 { inverse.clone() } else { x.clone() };
            let power = (0..e.unsigned_abs()).fold(T::one(), |p, _| p * base.clone());
            acc + T::from(c.clone()) * power
        })
    }
}

impl<C: Clone + Zero> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C: Clone + Zero + Mul<Output = C>> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = LaurentPoly::default();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Clone + Zero + Neg<Output = C>> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

/// Renders as `q^-1 + q`, lowest exponent first.
/// Renders a polynomial in a named variable; see [`LaurentPoly::display_in`].
pub struct DisplayIn<'a, C> {
    poly: &'a LaurentPoly<C>,
    var: &'a str,
}

impl<C> LaurentPoly<C> {
    pub fn display_in<'a>(&'a self, var: &'a str) -> DisplayIn<'a, C> {
        DisplayIn { poly: self, var }
    }
}

impl<C: fmt::Display> fmt::Display for DisplayIn<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var;
        if self.poly.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.poly.terms.iter().enumerate() {
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = coeff == "1";
            match *e {
                0 => f.write_str(&coeff)?,
                1 if unit => f.write_str(var)?,
                1 => write!(f, "{coeff}{var}")?,
                _ if unit => write!(f, "{var}^{e}")?,
                _ => write!(f, "{coeff}{var}^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("q").fmt(f)
    }
}
