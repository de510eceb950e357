//! The interface shared by every concrete (super)algebra, plus the
//! symmetrization functor and a small matrix algebra used as a reference.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{Grading, Parity};
use crate::scalar::Scalar;

/// A finite-dimensional-at-each-degree algebra over `Self::Scalar`, possibly
/// ℤ₂-graded.
///
/// Elements are plain values; the algebra value carries the structure
/// (structure constants, derivation, exterior rank, …).
pub trait Algebra: Send + Sync {
    type Scalar: Scalar;
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    /// Coordinate index of a basis vector, used for rank computations.
    type Key: Ord + Clone + fmt::Debug + Send + Sync;

    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Option<Self::Elem> {
        None
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn scale(&self, a: &Self::Elem, c: &Self::Scalar) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Whether the algebra carries a ℤ₂-grading relevant for super-identities.
    fn is_super(&self) -> bool {
        false
    }

    /// Even and odd components. Ungraded algebras return `(a, 0)`.
    fn split(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        (a.clone(), self.zero())
    }

    fn coords(&self, a: &Self::Elem) -> Vec<(Self::Key, Self::Scalar)>;

    fn render(&self, a: &Self::Elem) -> String;

    fn grading(&self, a: &Self::Elem) -> Grading {
        let (e, o) = self.split(a);
        match (self.is_zero(&e), self.is_zero(&o)) {
            (_, true) => Grading::Homogeneous(Parity::Even),
            (true, false) => Grading::Homogeneous(Parity::Odd),
            (false, false) => Grading::Mixed,
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &-Self::Scalar::one())
    }

    fn associator(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Result<Self::Elem> {
        let left = self.mul(&self.mul(a, b)?, c)?;
        let right = self.mul(a, &self.mul(b, c)?)?;
        Ok(self.sub(&left, &right))
    }

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.sub(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    /// `[a, b]_s = ab − (−1)^{|a||b|} ba`, extended bilinearly over the
    /// homogeneous components.
    fn supercommutator(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        let ab = self.mul(a, b)?;
        let mut ba = self.zero();
        for (x, px) in [(&a0, false), (&a1, true)] {
            for (y, py) in [(&b0, false), (&b1, true)] {
                if self.is_zero(x) || self.is_zero(y) {
                    continue;
                }
                let p = self.mul(y, x)?;
                ba = if px && py { self.add(&ba, &self.neg(&p)) } else { self.add(&ba, &p) };
            }
        }
        Ok(self.sub(&ab, &ba))
    }

    /// `acc += c·a`.
    fn add_scaled_into(&self, acc: &mut Self::Elem, c: &Self::Scalar, a: &Self::Elem) {
        *acc = self.add(acc, &self.scale(a, c));
    }

    fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// `½(ab + (−1)^{|a||b|} ba)` computed in `alg`.
pub fn symmetrized_product<A: Algebra + ?Sized>(alg: &A, a: &A::Elem, b: &A::Elem) -> Result<A::Elem> {
    let ab = alg.mul(a, b)?;
    let ba = if alg.is_super() {
        // (−1)^{|a||b|} only differs from +1 on odd × odd
        let (_, a1) = alg.split(a);
        let (_, b1) = alg.split(b);
        let odd = alg.mul(&b1, &a1)?;
        let all = alg.mul(b, a)?;
        alg.sub(&all, &alg.scale(&odd, &A::Scalar::from_int(2)))
    } else {
        alg.mul(b, a)?
    };
    Ok(alg.scale(&alg.add(&ab, &ba), &A::Scalar::half()))
}

/// `A^(+)`: the same space with `x•y = ½(xy + (−1)^{|x||y|} yx)`.
///
/// For an ungraded algebra this is the ordinary symmetrization `x⊙y`.
#[derive(Clone, Debug)]
pub struct Symmetrized<A>(pub A);

impl<A: Algebra> Algebra for Symmetrized<A> {
    type Scalar = A::Scalar;
    type Elem = A::Elem;
    type Key = A::Key;

    fn name(&self) -> String {
        format!("{}^(+)", self.0.name())
    }
    fn zero(&self) -> Self::Elem {
        self.0.zero()
    }
    fn one(&self) -> Option<Self::Elem> {
        self.0.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.add(a, b)
    }
    fn scale(&self, a: &Self::Elem, c: &Self::Scalar) -> Self::Elem {
        self.0.scale(a, c)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        symmetrized_product(&self.0, a, b)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn is_super(&self) -> bool {
        self.0.is_super()
    }
    fn split(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        self.0.split(a)
    }
    fn coords(&self, a: &Self::Elem) -> Vec<(Self::Key, Self::Scalar)> {
        self.0.coords(a)
    }
    fn render(&self, a: &Self::Elem) -> String {
        self.0.render(a)
    }
}

/// `n × n` matrices, stored row-major. Used as a reference associative
/// algebra in tests and examples.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra<C> {
    n: usize,
    _marker: std::marker::PhantomData<C>,
}

impl<C: Scalar> MatrixAlgebra<C> {
    pub fn new(n: usize) -> Self {
        Self { n, _marker: std::marker::PhantomData }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// The matrix unit `E_{ij}` (1-based, as usual).
    pub fn unit(&self, i: usize, j: usize) -> Result<Vec<C>> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::InvalidParameter(format!("matrix unit E{i}{j} outside {0}x{0}", self.n)));
        }
        let mut m = vec![C::zero(); self.n * self.n];
        m[(i - 1) * self.n + (j - 1)] = C::one();
        Ok(m)
    }

    pub fn identity(&self) -> Vec<C> {
        let mut m = vec![C::zero(); self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = C::one();
        }
        m
    }
}

impl<C: Scalar> Algebra for MatrixAlgebra<C> {
    type Scalar = C;
    type Elem = Vec<C>;
    type Key = usize;

    fn name(&self) -> String {
        format!("M{}", self.n)
    }
    fn zero(&self) -> Vec<C> {
        vec![C::zero(); self.n * self.n]
    }
    fn one(&self) -> Option<Vec<C>> {
        Some(self.identity())
    }
    fn add(&self, a: &Vec<C>, b: &Vec<C>) -> Vec<C> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }
    fn scale(&self, a: &Vec<C>, c: &C) -> Vec<C> {
        a.iter().map(|x| x.clone() * c.clone()).collect()
    }
    fn mul(&self, a: &Vec<C>, b: &Vec<C>) -> Result<Vec<C>> {
        let n = self.n;
        if a.len() != n * n || b.len() != n * n {
            return Err(Error::ContextMismatch(format!("expected {n}x{n} matrices")));
        }
        let mut out = self.zero();
        for i in 0..n {
            for k in 0..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j].clone() + a[i * n + k].clone() * b[k * n + j].clone();
                }
            }
        }
        Ok(out)
    }
    fn is_zero(&self, a: &Vec<C>) -> bool {
        a.iter().all(C::is_zero)
    }
    fn coords(&self, a: &Vec<C>) -> Vec<(usize, C)> {
        a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    }
    fn render(&self, a: &Vec<C>) -> String {
        let rows: Vec<String> = a
            .chunks(self.n)
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn symmetrized_matrix_units() {
        let m = MatrixAlgebra::<Rational>::new(2);
        let s = Symmetrized(m.clone());
        let e12 = m.unit(1, 2).unwrap();
        let e21 = m.unit(2, 1).unwrap();
        let p = s.mul(&e12, &e21).unwrap();
        assert_eq!(p, m.scale(&m.identity(), &rat(1, 2)));
    }

    #[test]
    fn symmetrizing_commutative_is_identity() {
        // diagonal matrices commute
        let m = MatrixAlgebra::<Rational>::new(2);
        let s = Symmetrized(m.clone());
        let d1 = vec![rat(2, 1), rat(0, 1), rat(0, 1), rat(3, 1)];
        let d2 = vec![rat(-1, 1), rat(0, 1), rat(0, 1), rat(5, 7)];
        assert_eq!(s.mul(&d1, &d2).unwrap(), m.mul(&d1, &d2).unwrap());
    }

    #[test]
    fn associative_matrices() {
        let m = MatrixAlgebra::<Rational>::new(2);
        let a = m.unit(1, 2).unwrap();
        let b = m.unit(2, 1).unwrap();
        let c = m.add(&a, &b);
        assert!(m.is_zero(&m.associator(&a, &b, &c).unwrap()));
        assert!(!m.is_zero(&m.commutator(&a, &b).unwrap()));
        assert_eq!(m.render(&m.identity()), "[1 0; 0 1]");
    }
}
