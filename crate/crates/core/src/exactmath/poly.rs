//! Dense univariate polynomials over `F_p`, coefficients little-endian in degree.

use std::fmt;

/// A polynomial over `F_p`. The coefficient vector never has trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<u8>,
}

#[inline]
pub(crate) fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a % p != 0);
    // Fermat: a^(p-2)
    pow_mod(a, (p - 2) as u32, p)
}

#[inline]
pub(crate) fn pow_mod(a: u8, mut e: u32, p: u8) -> u8 {
    let p = p as u32;
    let mut base = a as u32 % p;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u8
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: u8, k: usize, p: u8) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<u8>, p: u8) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = Poly { coeffs };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, p: u8) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0) as u16;
            let b = other.coeffs.get(i).copied().unwrap_or(0) as u16;
            coeffs.push(((a + b) % p as u16) as u8);
        }
        let mut poly = Poly { coeffs };
        poly.trim();
        poly
    }

    pub fn neg(&self, p: u8) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect(),
        }
    }

    pub fn sub(&self, other: &Poly, p: u8) -> Poly {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u8, p: u8) -> Poly {
        let c = c % p;
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&a| ((a as u16 * c as u16) % p as u16) as u8).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, p: u8) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u32 * b as u32) % p as u32;
            }
        }
        let mut poly = Poly { coeffs: acc.into_iter().map(|c| c as u8).collect() };
        poly.trim();
        poly
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly, p: u8) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lead = inv_mod(divisor.leading(), p) as u32;
        let mut rem: Vec<u32> = self.coeffs.iter().map(|&c| c as u32).collect();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k] % p as u32;
            if c == 0 {
                continue;
            }
            let q = c * inv_lead % p as u32;
            quot[k - dd] = q as u8;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let sub = q * d as u32 % p as u32;
                rem[k - dd + i] = (rem[k - dd + i] + p as u32 - sub) % p as u32;
            }
        }
        let mut q = Poly { coeffs: quot };
        q.trim();
        let mut r = Poly { coeffs: rem.into_iter().map(|c| (c % p as u32) as u8).collect() };
        r.trim();
        (q, r)
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self, p: u8) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(inv_mod(self.leading(), p), p)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly, p: u8) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// Returns the polynomial `r` with `r^p = self` if every exponent with a
    /// nonzero coefficient is divisible by `p`. Over `F_p` each coefficient is
    /// its own `p`-th root.
    pub fn pth_root(&self, p: u8) -> Option<Poly> {
        let p_us = p as usize;
        let mut coeffs = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                if k % p_us != 0 {
                    return None;
                }
                let idx = k / p_us;
                if coeffs.len() <= idx {
                    coeffs.resize(idx + 1, 0);
                }
                coeffs[idx] = c;
            }
        }
        Some(Poly { coeffs })
    }

    pub fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{var}")?,
                (1, c) => write!(f, "{c}{var}")?,
                (k, 1) => write!(f, "{var}^{k}")?,
                (k, c) => write!(f, "{c}{var}^{k}")?,
            }
        }
        Ok(())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u8], p: u8) -> Poly {
        Poly::from_coeffs(c.to_vec(), p)
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = 5;
        let a = poly(&[1, 2, 3, 4, 1], p);
        let b = poly(&[2, 0, 1], p);
        let (q, r) = a.div_rem(&b, p);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b, p).add(&r, p), a);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let p = 3;
        // (t+1)(t+2) and (t+1)t
        let f = poly(&[1, 1], p);
        let a = f.mul(&poly(&[2, 1], p), p);
        let b = f.mul(&poly(&[0, 1], p), p);
        assert_eq!(a.gcd(&b, p), f);
    }

    #[test]
    fn pth_root_of_square() {
        let p = 2;
        let t = poly(&[0, 1], p);
        let t2 = t.mul(&t, p);
        assert_eq!(t2.pth_root(p), Some(t.clone()));
        assert_eq!(t.pth_root(p), None);
        // (t+1)^2 = t^2+1
        let s = poly(&[1, 1], p);
        assert_eq!(s.mul(&s, p).pth_root(p), Some(s));
    }
}
