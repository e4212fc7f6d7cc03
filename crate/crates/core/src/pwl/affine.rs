use std::fmt;

use crate::rational::Rational;

/// `c0 + c1*x1 + ... + cn*xn` with exact coefficients.
///
/// Ordering is lexicographic on the coefficient vector; it only serves to
/// make collections of pieces canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    coeffs: Vec<Rational>,
}

impl Affine {
    /// Builds from `[c0, c1, ..., cn]`. Panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "an affine function needs a constant term");
        Affine { coeffs }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = c;
        Affine { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, Rational::zero())
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The projection onto `x_i`, with `i` counted from 1.
    pub fn projection(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "projection index {i} outside 1..={n}");
        let mut a = Self::zero(n);
        a.coeffs[i] = Rational::one();
        a
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Coefficient of `x_i`, `i` counted from 1.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn linear(&self) -> &[Rational] {
        &self.coeffs[1..]
    }

    pub fn is_constant(&self) -> bool {
        self.linear().iter().all(Rational::is_zero)
    }

    /// Panics when `x` has the wrong length.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim(), "point dimension");
        let mut acc = self.coeffs[0].clone();
        for (c, xi) in self.linear().iter().zip(x) {
            if !c.is_zero() {
                acc += &(c * xi);
            }
        }
        acc
    }

    pub fn add(&self, other: &Affine) -> Affine {
        assert_eq!(self.dim(), other.dim());
        Affine { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        assert_eq!(self.dim(), other.dim());
        Affine { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Affine {
        Affine { coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn shift(&self, c: &Rational) -> Affine {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn neg(&self) -> Affine {
        Affine { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Affine {
        self.neg().shift(&Rational::one())
    }

    /// Minimum over the box `[0, 1]^n`.
    pub fn box_min(&self) -> Rational {
        let mut acc = self.coeffs[0].clone();
        for c in self.linear().iter().filter(|c| c.is_negative()) {
            acc += c;
        }
        acc
    }

    /// Maximum over the box `[0, 1]^n`.
    pub fn box_max(&self) -> Rational {
        let mut acc = self.coeffs[0].clone();
        for c in self.linear().iter().filter(|c| c.is_positive()) {
            acc += c;
        }
        acc
    }

    /// `self <= other` at every point of the box, which for affine functions
    /// is the same as at every corner.
    pub fn le_on_box(&self, other: &Affine) -> bool {
        !self.sub(other).box_max().is_positive()
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.coeffs[0].is_zero() || self.is_constant() {
            write!(f, "{}", self.coeffs[0])?;
            wrote = true;
        }
        for (i, c) in self.linear().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (wrote, c.is_negative()) {
                (false, false) => {}
                (false, true) => f.write_str("-")?,
                (true, false) => f.write_str(" + ")?,
                (true, true) => f.write_str(" - ")?,
            }
            if mag.is_one() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{mag}*x{}", i + 1)?;
            }
            wrote = true;
        }
        Ok(())
    }
}

impl fmt::Debug for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
