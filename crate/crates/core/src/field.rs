//! Coefficient fields and exact linear algebra.
//!
//! Everything that touches scalars (exterior coefficients, Koszul ranks,
//! dual pairings) is generic over [`Field`]. Two families are provided:
//! prime fields [`Fp`] with a compile-time modulus and the rationals
//! ([`num_rational::BigRational`]) for characteristic zero.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
{
    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// `(-1)^k`
    fn sign(k: u32) -> Self {
        if k.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

/// Residues modulo the prime `P`.
///
/// `P` must be prime and below `2^32` so products fit in `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // print the symmetric representative so signs read naturally
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Field for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P as i64);
        Fp(r as u64)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat
            Some(self.pow(P - 2))
        }
    }
}

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Rank of a dense matrix by Gaussian elimination. Rows are consumed.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        for v in &mut rows[rank][col..] {
            *v = v.clone() * inv.clone();
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                let d = factor.clone() * prow[c].clone();
                row[c] -= d;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;
    type F2 = Fp<2>;

    #[test]
    fn fp_arithmetic() {
        assert_eq!(F7::new(3) + F7::new(5), F7::new(1));
        assert_eq!(F7::new(3) - F7::new(5), F7::new(5));
        assert_eq!(-F7::new(0), F7::zero());
        assert_eq!(F7::new(3) * F7::new(5).inverse().unwrap() * F7::new(5), F7::new(3));
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert!(F7::zero().inverse().is_none());
        assert_eq!(F7::sign(3), F7::new(6));
        assert_eq!(format!("{}", F7::new(6)), "-1");
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] is singular only in characteristic 2
        let m = |v: [i64; 4]| vec![vec![v[0], v[1]], vec![v[2], v[3]]];
        let to = |m: Vec<Vec<i64>>| -> Vec<Vec<F2>> {
            m.into_iter().map(|r| r.into_iter().map(F2::from_i64).collect()).collect()
        };
        let toq = |m: Vec<Vec<i64>>| -> Vec<Vec<BigRational>> {
            m.into_iter().map(|r| r.into_iter().map(BigRational::from_i64).collect()).collect()
        };
        assert_eq!(rank(to(m([1, 1, 1, -1]))), 1);
        assert_eq!(rank(toq(m([1, 1, 1, -1]))), 2);
        assert_eq!(rank::<F7>(vec![]), 0);
        assert_eq!(rank(toq(m([0, 0, 0, 0]))), 0);
    }
}
