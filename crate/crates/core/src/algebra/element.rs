use std::fmt;
use std::sync::Arc;

use super::ring::MonomialQuotientRing;
use crate::error::{Error, Result};
use crate::linalg::field;

/// An element of a [`MonomialQuotientRing`], stored by its coefficients in
/// the standard-monomial basis.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<MonomialQuotientRing>,
    coeffs: Vec<u32>,
}

impl RingElement {
    pub fn from_coeffs(ring: Arc<MonomialQuotientRing>, mut coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != ring.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a ring of dimension {}",
                coeffs.len(),
                ring.dim()
            )));
        }
        let p = ring.p();
        coeffs.iter_mut().for_each(|c| *c %= p);
        Ok(RingElement { ring, coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(ring: Arc<MonomialQuotientRing>, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs.len(), ring.dim());
        RingElement { ring, coeffs }
    }

    pub fn ring(&self) -> &Arc<MonomialQuotientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Membership in the maximal ideal.
    pub fn in_maximal_ideal(&self) -> bool {
        self.coeffs[0] == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.in_maximal_ideal()
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        if MonomialQuotientRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        let p = self.ring.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| field::add(a, b, p))
            .collect();
        Ok(RingElement::from_coeffs_unchecked(self.ring.clone(), coeffs))
    }

    pub fn neg(&self) -> RingElement {
        let p = self.ring.p();
        let coeffs = self.coeffs.iter().map(|&a| field::neg(a, p)).collect();
        RingElement::from_coeffs_unchecked(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> RingElement {
        let p = self.ring.p();
        let coeffs = self.coeffs.iter().map(|&a| field::mul(a, c, p)).collect();
        RingElement::from_coeffs_unchecked(self.ring.clone(), coeffs)
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        let mut out = vec![0; self.ring.dim()];
        self.ring.mul_acc(&mut out, &self.coeffs, &other.coeffs);
        Ok(RingElement::from_coeffs_unchecked(self.ring.clone(), out))
    }

    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `a^p`, the image under the Frobenius endomorphism.
    pub fn frobenius(&self) -> RingElement {
        self.pow(self.ring.p() as u64)
    }

    /// `a^{p^e}`.
    pub fn frobenius_iter(&self, e: u32) -> RingElement {
        (0..e).fold(self.clone(), |a, _| a.frobenius())
    }

    /// Inverse of a unit: writing `u = c(1 - n)` with `n` nilpotent,
    /// `u^{-1} = c^{-1}(1 + n + n² + ...)`.
    pub fn inverse(&self) -> Option<RingElement> {
        if !self.is_unit() {
            return None;
        }
        let p = self.ring.p();
        let cinv = field::inv(self.constant_term(), p);
        let one = self.ring.one();
        let n = one.sub(&self.scale(cinv)).expect("same ring");
        let mut sum = one.clone();
        let mut power = n.clone();
        while !power.is_zero() {
            sum = sum.add(&power).expect("same ring");
            power = power.mul(&n).expect("same ring");
        }
        Some(sum.scale(cinv))
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        MonomialQuotientRing::same(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_coeffs(&self.coeffs))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_dual_numbers() {
        let r = MonomialQuotientRing::truncated(2, 2).unwrap();
        let x = r.var(0);
        assert!(x.mul(&x).unwrap().is_zero());
        let one = r.one();
        assert_eq!(one.mul(&x).unwrap(), x);
        let u = one.add(&x).unwrap();
        assert_eq!(u.mul(&u).unwrap(), one);
        assert_eq!(x.frobenius(), r.zero());
        assert_eq!(u.frobenius(), one);
        assert_eq!(u.inverse().unwrap(), u);
        assert!(x.inverse().is_none());
    }

    #[test]
    fn fermat_on_constants() {
        let r = MonomialQuotientRing::truncated(3, 3).unwrap();
        for c in 0..3 {
            let a = r.constant(c);
            assert_eq!(a.frobenius(), a);
        }
        let x = r.var(0);
        assert!(x.frobenius().is_zero());
        let u = r.constant(2).add(&x).unwrap();
        let inv = u.inverse().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), r.one());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = MonomialQuotientRing::truncated(2, 2).unwrap();
        let b = MonomialQuotientRing::truncated(2, 3).unwrap();
        assert!(matches!(a.one().mul(&b.one()), Err(Error::RingMismatch)));
        // structurally equal rings built separately are interchangeable
        let c = MonomialQuotientRing::truncated(2, 2).unwrap();
        assert!(a.var(0).mul(&c.var(0)).unwrap().is_zero());
    }
}
