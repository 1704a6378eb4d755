use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Per-component signs of a Hermitian form on Cⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature(Vec<i8>);

impl Signature {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(
            signs.iter().all(|s| *s == 1 || *s == -1),
            "signature entries must be ±1"
        );
        Signature(signs)
    }

    /// (+,+) on C².
    pub fn flat_c2() -> Self {
        Signature(vec![1, 1])
    }

    /// (+,+,+): the form whose unit sphere is S⁵.
    pub fn sphere() -> Self {
        Signature(vec![1, 1, 1])
    }

    /// (+,+,−): the form whose pseudo-sphere of norm −1 is H⁵₁.
    pub fn anti_de_sitter() -> Self {
        Signature(vec![1, 1, -1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }
}

/// A point or tangent vector in Cⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct CVec(pub Vec<Complex64>);

/// Two complex components: points of C².
pub type ComplexPair = CVec;
/// Three complex components: lift coordinates in C³.
pub type ComplexTriple = CVec;

impl CVec {
    pub fn zeros(n: usize) -> Self {
        CVec(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn pair(a: Complex64, b: Complex64) -> ComplexPair {
        CVec(vec![a, b])
    }

    pub fn triple(a: Complex64, b: Complex64, c: Complex64) -> ComplexTriple {
        CVec(vec![a, b, c])
    }

    /// Pairs reals as (r1 + i r2, r3 + i r4, ...). Panics on odd length.
    pub fn from_reals(reals: &[f64]) -> Self {
        assert!(reals.len() % 2 == 0, "real vector must have even length");
        CVec(
            reals
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        )
    }

    pub fn to_reals(&self) -> Vec<f64> {
        self.0.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Euclidean norm of the real view, ignoring any signature.
    pub fn flat_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: f64) -> CVec {
        CVec(self.0.iter().map(|z| z * k).collect())
    }

    pub fn scale_complex(&self, k: Complex64) -> CVec {
        CVec(self.0.iter().map(|z| z * k).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for &CVec {
    type Output = CVec;
    fn add(self, rhs: &CVec) -> CVec {
        assert_eq!(self.len(), rhs.len());
        CVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CVec {
    type Output = CVec;
    fn sub(self, rhs: &CVec) -> CVec {
        assert_eq!(self.len(), rhs.len());
        CVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &CVec {
    type Output = CVec;
    fn neg(self) -> CVec {
        CVec(self.0.iter().map(|z| -z).collect())
    }
}

impl Mul<f64> for &CVec {
    type Output = CVec;
    fn mul(self, k: f64) -> CVec {
        self.scale(k)
    }
}

/// Σ ε_k a_k conj(b_k). Conjugation sits on the second slot.
pub fn herm_pair(a: &CVec, b: &CVec, sig: &Signature) -> Complex64 {
    assert_eq!(a.len(), sig.len(), "vector/signature dimension mismatch");
    assert_eq!(b.len(), sig.len(), "vector/signature dimension mismatch");
    a.0.iter()
        .zip(&b.0)
        .zip(sig.signs())
        .map(|((x, y), s)| x * y.conj() * f64::from(*s))
        .sum()
}

/// The real (pseudo-)Riemannian pairing, Re of [`herm_pair`].
pub fn real_pair(a: &CVec, b: &CVec, sig: &Signature) -> f64 {
    assert_eq!(a.len(), sig.len(), "vector/signature dimension mismatch");
    assert_eq!(b.len(), sig.len(), "vector/signature dimension mismatch");
    a.0.iter()
        .zip(&b.0)
        .zip(sig.signs())
        .map(|((x, y), s)| (x.re * y.re + x.im * y.im) * f64::from(*s))
        .sum()
}

/// The complex structure: multiply every component by i.
pub fn apply_j(a: &CVec) -> CVec {
    CVec(a.0.iter().map(|z| Complex64::new(-z.im, z.re)).collect())
}
