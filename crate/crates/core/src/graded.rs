//! Graded free abelian groups, recorded by their rank in each degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly;

/// Scalar type usable as a rank.
pub trait Rank: Num + Clone + fmt::Debug {}

impl<T: Num + Clone + fmt::Debug> Rank for T {}

/// Finitely supported map from degree to positive rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawGraded<R>", bound(serialize = "R: Serialize", deserialize = "R: Deserialize<'de> + Rank"))]
pub struct GradedGroup<R> {
    ranks: BTreeMap<i64, R>,
}

#[derive(Deserialize)]
struct RawGraded<R> {
    ranks: BTreeMap<i64, R>,
}

impl<R: Rank> From<RawGraded<R>> for GradedGroup<R> {
    fn from(raw: RawGraded<R>) -> Self {
        GradedGroup::from_ranks(raw.ranks)
    }
}

impl<R> Default for GradedGroup<R> {
    fn default() -> Self {
        GradedGroup { ranks: BTreeMap::new() }
    }
}

impl<R: Rank> GradedGroup<R> {
    /// The zero group.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Z` in degree 0, the unit for the tensor product.
    pub fn unit() -> Self {
        Self::from_ranks([(0, R::one())])
    }

    /// `H*(S^2)`: rank one in degrees 0 and 2.
    pub fn sphere() -> Self {
        Self::from_ranks([(0, R::one()), (2, R::one())])
    }

    /// `H*(S^2){-1}`: rank one in degrees -1 and 1.
    pub fn circle() -> Self {
        Self::sphere().shift(-1)
    }

    pub fn from_ranks(ranks: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut g = Self::default();
        for (d, r) in ranks {
            g.add_rank(d, r);
        }
        g
    }

    fn add_rank(&mut self, degree: i64, rank: R) {
        let sum = match self.ranks.remove(&degree) {
            Some(old) => old + rank,
            None => rank,
        };
        if !sum.is_zero() {
            self.ranks.insert(degree, sum);
        }
    }

    pub fn rank(&self, degree: i64) -> R {
        self.ranks.get(&degree).cloned().unwrap_or_else(R::zero)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, R> {
        &self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total_rank(&self) -> R {
        self.ranks.values().fold(R::zero(), |acc, r| acc + r.clone())
    }

    /// Moves the rank in degree `d` to degree `d + s`.
    pub fn shift(&self, s: i64) -> Self {
        GradedGroup { ranks: self.ranks.iter().map(|(&d, r)| (d + s, r.clone())).collect() }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&a, ra) in &self.ranks {
            for (&b, rb) in &other.ranks {
                out.add_rank(a + b, ra.clone() * rb.clone());
            }
        }
        out
    }

    pub fn tensor_power(&self, k: usize) -> Self {
        (0..k).fold(Self::unit(), |acc, _| acc.tensor(self))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, r) in &other.ranks {
            out.add_rank(d, r.clone());
        }
        out
    }

    /// Degree negation.
    pub fn dual(&self) -> Self {
        GradedGroup { ranks: self.ranks.iter().map(|(&d, r)| (-d, r.clone())).collect() }
    }

    /// `sum_d rank(d) q^d`.
    pub fn poincare(&self) -> LaurentPoly<R> {
        LaurentPoly::from_terms(self.ranks.iter().map(|(&d, r)| (d, r.clone())))
    }

    /// `sum_d (-1)^d rank(d)`, in a signed scalar type `E`.
    pub fn euler<E>(&self) -> E
    where
        E: Num + Neg<Output = E> + From<R>,
    {
        self.ranks.iter().fold(E::zero(), |acc, (&d, r)| {
            let r = E::from(r.clone());
            if d.rem_euclid(2) == 0 {
                acc + r
            } else {
                acc - r
            }
        })
    }
}

impl<R: Rank> std::iter::Sum for GradedGroup<R> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, g| acc.direct_sum(&g))
    }
}

impl<R: Rank + fmt::Display> fmt::Display for GradedGroup<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return f.write_str("0");
        }
        for (k, (d, r)) in self.ranks.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if r.is_one() {
                write!(f, "Z[{d}]")?;
            } else {
                write!(f, "Z^{r}[{d}]")?;
            }
        }
        Ok(())
    }
}
