//! Exact numbers `a + b√d` with rational `a, b` and squarefree `d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Result};

type Q = Ratio<i64>;

/// `a + b√d`. Values with `b = 0` are plain rationals and mix with any `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    pub a: Q,
    pub b: Q,
    pub d: i64,
}

impl QuadNum {
    pub fn rational(a: Q) -> Self {
        Self {
            a,
            b: Q::zero(),
            d: 1,
        }
    }

    pub fn int(a: i64) -> Self {
        Self::rational(Q::from_integer(a))
    }

    /// `a + b√d`; `d` must be a squarefree integer greater than 1.
    pub fn new(a: Q, b: Q, d: i64) -> Result<Self> {
        if d < 2 || (2..=d).take_while(|p| p * p <= d).any(|p| d % (p * p) == 0) {
            return Err(invalid(format!("{d} is not a squarefree integer above 1")));
        }
        Ok(Self { a, b, d }.normalized())
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        Self::new(Q::zero(), Q::from_integer(1), d)
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden() -> Self {
        Self {
            a: Q::new(1, 2),
            b: Q::new(1, 2),
            d: 5,
        }
    }

    fn normalized(self) -> Self {
        if self.b.is_zero() {
            Self::rational(self.a)
        } else {
            self
        }
    }

    fn field(self, other: Self) -> i64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mixing different quadratic fields");
                self.d
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let (sa, sb) = (self.a.cmp(&Q::zero()), self.b.cmp(&Q::zero()));
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // opposite signs: compare a² with b²d
            (x, _) => {
                let lhs = self.a * self.a;
                let rhs = self.b * self.b * Q::from_integer(self.d);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
        f(self.a) + f(self.b) * (self.d as f64).sqrt()
    }
}

impl Add for QuadNum {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.field(o);
        Self {
            a: self.a + o.a,
            b: self.b + o.b,
            d,
        }
        .normalized()
    }
}

impl Neg for QuadNum {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Sub for QuadNum {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for QuadNum {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.field(o);
        let dq = Q::from_integer(d);
        Self {
            a: self.a * o.a + self.b * o.b * dq,
            b: self.a * o.b + self.b * o.a,
            d,
        }
        .normalized()
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((*self - *other).signum())
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = if self.b.abs() == Q::from_integer(1) {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", self.b.abs(), self.d)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{root}"),
            (true, true) => write!(f, "-{root}"),
            (false, neg) => write!(f, "{}{}{root}", self.a, if neg { "-" } else { "+" }),
        }
    }
}

impl serde::Serialize for QuadNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let r2 = QuadNum::sqrt(2).unwrap();
        assert_eq!(r2 * r2, QuadNum::int(2));
        let phi = QuadNum::golden();
        // φ² = φ + 1
        assert_eq!(phi * phi, phi + QuadNum::int(1));
        assert_eq!((QuadNum::int(3) - r2).to_string(), "3-√2");
    }

    #[test]
    fn signs() {
        let r3 = QuadNum::sqrt(3).unwrap();
        // 6 − 3√3 > 0, 5 − 3√3 < 0
        assert_eq!(
            (QuadNum::int(6) - QuadNum::int(3) * r3).signum(),
            Ordering::Greater
        );
        assert_eq!(
            (QuadNum::int(5) - QuadNum::int(3) * r3).signum(),
            Ordering::Less
        );
        assert_eq!((QuadNum::int(0) * r3).signum(), Ordering::Equal);
        assert!(QuadNum::new(Q::zero(), Q::from_integer(1), 4).is_err());
    }
}
