//! Hamilton quaternions `a + b𝕚 + c𝕛 + d𝕜` over an arbitrary commutative ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Quaternion<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Quaternion { a, b, c, d }
    }
}

impl<T: Clone + Neg<Output = T>> Quaternion<T> {
    pub fn conj(&self) -> Self {
        Quaternion::new(
            self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }
}

impl<T> Quaternion<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    /// `a² + b² + c² + d²`, so that `conj(q)·q` is this value times 1.
    pub fn norm_sqr(&self) -> T {
        self.a.clone() * self.a.clone()
            + self.b.clone() * self.b.clone()
            + self.c.clone() * self.c.clone()
            + self.d.clone() * self.d.clone()
    }
}

impl<T: Clone + Neg<Output = T>> Quaternion<T> {
    /// Splits `q = z₁ + z₂𝕛` with `z₁ = a + b i`, `z₂ = c + d i`.
    pub fn split(&self) -> (Complex<T>, Complex<T>) {
        (
            Complex::new(self.a.clone(), self.b.clone()),
            Complex::new(self.c.clone(), self.d.clone()),
        )
    }
}

impl<T: Clone> Quaternion<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Quaternion<U> {
        Quaternion::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

impl<T: Add<Output = T>> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<T: Sub<Output = T>> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<T: Neg<Output = T>> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T> Mul for Quaternion<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        Quaternion::new(
            a1.clone() * a2.clone()
                - b1.clone() * b2.clone()
                - c1.clone() * c2.clone()
                - d1.clone() * d2.clone(),
            a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone()
                - d1.clone() * c2.clone(),
            a1.clone() * c2.clone() - b1.clone() * d2.clone()
                + c1.clone() * a2.clone()
                + d1.clone() * b2.clone(),
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl<T> Zero for Quaternion<T>
where
    T: Clone + Zero + Add<Output = T>,
{
    fn zero() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl<T> One for Quaternion<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    fn one() -> Self {
        Quaternion::new(T::one(), T::zero(), T::zero(), T::zero())
    }
}

impl<T: fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<i64>;

    #[test]
    fn units_multiply_like_hamilton() {
        let one = Q::new(1, 0, 0, 0);
        let i = Q::new(0, 1, 0, 0);
        let j = Q::new(0, 0, 1, 0);
        let k = Q::new(0, 0, 0, 1);
        assert_eq!(i * i, -one);
        assert_eq!(j * j, -one);
        assert_eq!(k * k, -one);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
    }

    #[test]
    fn conj_times_self_is_norm() {
        let q = Q::new(1, -2, 3, 5);
        let p = q.conj() * q;
        assert_eq!(p, Q::new(q.norm_sqr(), 0, 0, 0));
        assert_eq!(q.norm_sqr(), 39);
    }
}
