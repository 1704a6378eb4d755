use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cvec::CVec;
use crate::error::{Error, Result};

/// Scalars a [`Jet2`] can carry: reals and complex numbers.
pub trait JetScalar:
    Copy
    + Zero
    + One
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
}

impl<T> JetScalar for T where
    T: Copy
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
        + Mul<f64, Output = T>
{
}

/// Second-order jet of a function of two real chart parameters.
///
/// Holds the value, both first partials and the three distinct second
/// partials. The mixed partial is stored once, so symmetry of the Hessian
/// holds structurally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T> {
    pub v: T,
    pub d1: T,
    pub d2: T,
    pub d11: T,
    pub d12: T,
    pub d22: T,
}

impl<T: JetScalar> Jet2<T> {
    pub fn constant(v: T) -> Self {
        Jet2 {
            v,
            d1: T::zero(),
            d2: T::zero(),
            d11: T::zero(),
            d12: T::zero(),
            d22: T::zero(),
        }
    }

    /// The first chart parameter as a jet.
    pub fn param1(v: T) -> Self {
        Jet2 {
            d1: T::one(),
            ..Self::constant(v)
        }
    }

    /// The second chart parameter as a jet.
    pub fn param2(v: T) -> Self {
        Jet2 {
            d2: T::one(),
            ..Self::constant(v)
        }
    }

    /// Chain rule for a scalar function with value `f0`, derivative `f1` and
    /// second derivative `f2` at `self.v`.
    pub fn compose(self, f0: T, f1: T, f2: T) -> Self {
        Jet2 {
            v: f0,
            d1: f1 * self.d1,
            d2: f1 * self.d2,
            d11: f2 * self.d1 * self.d1 + f1 * self.d11,
            d12: f2 * self.d1 * self.d2 + f1 * self.d12,
            d22: f2 * self.d2 * self.d2 + f1 * self.d22,
        }
    }

    /// Applies a linear map to every slot.
    pub fn map_linear<U: JetScalar>(self, f: impl Fn(T) -> U) -> Jet2<U> {
        Jet2 {
            v: f(self.v),
            d1: f(self.d1),
            d2: f(self.d2),
            d11: f(self.d11),
            d12: f(self.d12),
            d22: f(self.d22),
        }
    }

    pub fn scale(self, k: T) -> Self {
        self.map_linear(|x| x * k)
    }

    /// Reciprocal without a zero check; IEEE semantics apply.
    pub fn recip(self) -> Self {
        let r = T::one() / self.v;
        let r2 = r * r;
        self.compose(r, -r2, r2 * r * 2.0)
    }

    pub fn try_recip(self) -> Result<Self> {
        if self.v == T::zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(self.recip())
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.try_recip()?)
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::constant(T::one()),
            n if n < 0 => self.powi(-n).recip(),
            _ => {
                let mut acc = self;
                for _ in 1..n {
                    acc = acc * self;
                }
                acc
            }
        }
    }

    /// Value and first partials indexed by chart direction (0 or 1).
    pub fn first(&self, u: usize) -> T {
        match u {
            0 => self.d1,
            1 => self.d2,
            _ => panic!("chart direction out of range: {u}"),
        }
    }

    pub fn second(&self, u: usize, v: usize) -> T {
        match (u, v) {
            (0, 0) => self.d11,
            (0, 1) | (1, 0) => self.d12,
            (1, 1) => self.d22,
            _ => panic!("chart direction out of range: ({u}, {v})"),
        }
    }
}

impl Jet2<f64> {
    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.compose(e, e, e)
    }

    pub fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.compose(r, 0.5 / r, -0.25 / (r * self.v))
    }

    pub fn to_complex(self) -> Jet2<Complex64> {
        self.map_linear(|x| Complex64::new(x, 0.0))
    }

    /// e^{iθ} for a real angle jet θ.
    pub fn cis(self) -> Jet2<Complex64> {
        Jet2::from_re_im(self.cos(), self.sin())
    }
}

impl Jet2<Complex64> {
    pub fn from_re_im(re: Jet2<f64>, im: Jet2<f64>) -> Self {
        let c = |a: f64, b: f64| Complex64::new(a, b);
        Jet2 {
            v: c(re.v, im.v),
            d1: c(re.d1, im.d1),
            d2: c(re.d2, im.d2),
            d11: c(re.d11, im.d11),
            d12: c(re.d12, im.d12),
            d22: c(re.d22, im.d22),
        }
    }

    /// Componentwise conjugation; real-linear, so it commutes with the
    /// real chart derivatives.
    pub fn conj(self) -> Self {
        self.map_linear(|z| z.conj())
    }

    pub fn re(self) -> Jet2<f64> {
        self.map_linear(|z| z.re)
    }

    pub fn im(self) -> Jet2<f64> {
        self.map_linear(|z| z.im)
    }

    /// |z|² as a real jet.
    pub fn norm_sqr(self) -> Jet2<f64> {
        (self * self.conj()).re()
    }

    pub fn scale_real(self, k: Jet2<f64>) -> Self {
        self * k.to_complex()
    }
}

impl<T: JetScalar> Add for Jet2<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Jet2 {
            v: self.v + r.v,
            d1: self.d1 + r.d1,
            d2: self.d2 + r.d2,
            d11: self.d11 + r.d11,
            d12: self.d12 + r.d12,
            d22: self.d22 + r.d22,
        }
    }
}

impl<T: JetScalar> Sub for Jet2<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl<T: JetScalar> Neg for Jet2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_linear(|x| -x)
    }
}

impl<T: JetScalar> Mul for Jet2<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Jet2 {
            v: self.v * r.v,
            d1: self.d1 * r.v + self.v * r.d1,
            d2: self.d2 * r.v + self.v * r.d2,
            d11: self.d11 * r.v + self.d1 * r.d1 * 2.0 + self.v * r.d11,
            d12: self.d12 * r.v + self.d1 * r.d2 + self.d2 * r.d1 + self.v * r.d12,
            d22: self.d22 * r.v + self.d2 * r.d2 * 2.0 + self.v * r.d22,
        }
    }
}

impl<T: JetScalar> Div for Jet2<T> {
    type Output = Self;
    /// Unchecked; use [`Jet2::checked_div`] where the divisor may vanish.
    fn div(self, r: Self) -> Self {
        self * r.recip()
    }
}

impl<T: JetScalar> Mul<f64> for Jet2<T> {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.map_linear(|x| x * k)
    }
}

impl<T: JetScalar> Add<f64> for Jet2<T>
where
    T: From<f64>,
{
    type Output = Self;
    fn add(self, k: f64) -> Self {
        Jet2 {
            v: self.v + T::from(k),
            ..self
        }
    }
}

/// A vector-valued jet: an immersion into Cⁿ (viewed as R²ⁿ) with its first
/// and second chart partials at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientJet {
    pub value: CVec,
    pub d1: CVec,
    pub d2: CVec,
    pub d11: CVec,
    pub d12: CVec,
    pub d22: CVec,
}

impl AmbientJet {
    pub fn from_components(components: &[Jet2<Complex64>]) -> Self {
        let pick = |f: fn(&Jet2<Complex64>) -> Complex64| {
            CVec(components.iter().map(f).collect::<Vec<_>>())
        };
        AmbientJet {
            value: pick(|j| j.v),
            d1: pick(|j| j.d1),
            d2: pick(|j| j.d2),
            d11: pick(|j| j.d11),
            d12: pick(|j| j.d12),
            d22: pick(|j| j.d22),
        }
    }

    pub fn dim(&self) -> usize {
        self.value.len()
    }

    pub fn first(&self, u: usize) -> &CVec {
        match u {
            0 => &self.d1,
            1 => &self.d2,
            _ => panic!("chart direction out of range: {u}"),
        }
    }

    pub fn second(&self, u: usize, v: usize) -> &CVec {
        match (u, v) {
            (0, 0) => &self.d11,
            (0, 1) | (1, 0) => &self.d12,
            (1, 1) => &self.d22,
            _ => panic!("chart direction out of range: ({u}, {v})"),
        }
    }

    /// Multiplies the immersion by a real constant.
    pub fn scaled(&self, k: f64) -> Self {
        AmbientJet {
            value: self.value.scale(k),
            d1: self.d1.scale(k),
            d2: self.d2.scale(k),
            d11: self.d11.scale(k),
            d12: self.d12.scale(k),
            d22: self.d22.scale(k),
        }
    }

    pub fn is_finite(&self) -> bool {
        [&self.value, &self.d1, &self.d2, &self.d11, &self.d12, &self.d22]
            .iter()
            .all(|v| v.is_finite())
    }
}
