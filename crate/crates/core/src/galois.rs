//! Arithmetic in GF(2^m) and polynomials over GF(2).
//!
//! Field elements are stored in polynomial basis as the low `m` bits of a
//! `u16`. Multiplication goes through log/antilog tables built from a fixed
//! primitive polynomial per extension degree.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 10;

/// Default primitive polynomials, bit `i` holding the coefficient of `x^i`.
///
/// These are the conventional defaults used by common coding toolboxes
/// (`x^3+x+1`, `x^4+x+1`, `x^5+x^2+1`, ...). The n = 15 affine permutation
/// table is only reproducible with `x^4+x+1` for m = 4.
const PRIMITIVE_POLYS: [u32; 9] = [
    0b111,          // m = 2: x^2 + x + 1
    0b1011,         // m = 3: x^3 + x + 1
    0b1_0011,       // m = 4: x^4 + x + 1
    0b10_0101,      // m = 5: x^5 + x^2 + 1
    0b100_0011,     // m = 6: x^6 + x + 1
    0b1000_1001,    // m = 7: x^7 + x^3 + 1
    0b1_0001_1101,  // m = 8: x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001, // m = 9: x^9 + x^4 + 1
    0b100_0000_1001, // m = 10: x^10 + x^3 + 1
];

/// The finite field GF(2^m) with a fixed primitive element α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    m: u32,
    primitive_poly: u32,
    // antilog[i] = α^i for i in 0..order; extended to 2*order for table-free reduction.
    antilog: Vec<u16>,
    // log[a] = i with α^i = a; log[0] is unused.
    log: Vec<u16>,
}

impl GaloisField {
    pub fn new(m: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::FieldDegree(m));
        }
        let primitive_poly = PRIMITIVE_POLYS[(m - MIN_DEGREE) as usize];
        let size = 1usize << m;
        let order = size - 1;
        let mut antilog = vec![0u16; 2 * order];
        let mut log = vec![0u16; size];
        let mut a: u32 = 1;
        for (i, slot) in antilog.iter_mut().take(order).enumerate() {
            *slot = a as u16;
            log[a as usize] = i as u16;
            a <<= 1;
            if a & (1 << m) != 0 {
                a ^= primitive_poly;
            }
        }
        debug_assert_eq!(a, 1, "primitive polynomial table entry is not primitive");
        for i in order..2 * order {
            antilog[i] = antilog[i - order];
        }
        Ok(Self {
            m,
            primitive_poly,
            antilog,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of elements, 2^m.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Multiplicative order of α, 2^m − 1. Equal to the cyclic code length.
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    pub fn primitive_poly(&self) -> BinaryPolynomial {
        BinaryPolynomial::from_mask(self.primitive_poly as u64)
    }

    /// α^e for any exponent (reduced modulo the group order).
    pub fn alpha_pow(&self, e: usize) -> u16 {
        self.antilog[e % self.order()]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u16) -> Option<usize> {
        if a == 0 || a as usize >= self.size() {
            None
        } else {
            Some(self.log[a as usize] as usize)
        }
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.antilog[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    /// Evaluates a binary polynomial at a field element (Horner).
    pub fn eval(&self, p: &BinaryPolynomial, x: u16) -> u16 {
        p.coeffs
            .iter()
            .rev()
            .fold(0u16, |acc, &c| self.mul(acc, x) ^ u16::from(c))
    }

    /// The cyclotomic coset {j, 2j, 4j, ...} mod 2^m − 1, in generation order.
    pub fn cyclotomic_coset(&self, j: usize) -> Vec<usize> {
        let order = self.order();
        let start = j % order;
        let mut coset = vec![start];
        let mut e = (2 * start) % order;
        while e != start {
            coset.push(e);
            e = (2 * e) % order;
        }
        coset
    }

    /// Minimal polynomial over GF(2) of α^j, for 1 ≤ j ≤ 2^m − 2.
    ///
    /// Computed as the product of (x − α^i) over the cyclotomic coset of j;
    /// every coefficient of that product lies in GF(2).
    pub fn minimal_polynomial(&self, j: usize) -> Result<BinaryPolynomial> {
        if j == 0 || j > self.order() - 1 {
            return Err(Error::MinimalPolyIndex {
                j,
                max: self.order() - 1,
            });
        }
        // Coefficients in GF(2^m), lowest degree first.
        let mut prod: Vec<u16> = vec![1];
        for i in self.cyclotomic_coset(j) {
            let root = self.alpha_pow(i);
            let mut next = vec![0u16; prod.len() + 1];
            for (d, &c) in prod.iter().enumerate() {
                next[d + 1] ^= c;
                next[d] ^= self.mul(c, root);
            }
            prod = next;
        }
        let coeffs = prod
            .into_iter()
            .map(|c| {
                debug_assert!(c <= 1, "minimal polynomial coefficient outside GF(2)");
                c as u8
            })
            .collect();
        Ok(BinaryPolynomial::from_coeffs(coeffs))
    }
}

/// A polynomial over GF(2), coefficients stored constant term first.
///
/// The zero polynomial has an empty coefficient vector; otherwise the last
/// stored coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    coeffs: Vec<u8>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// x^d.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        Self { coeffs }
    }

    /// From coefficients lowest degree first; any nonzero byte counts as 1.
    pub fn from_coeffs(coeffs: Vec<u8>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(|c| u8::from(c != 0)).collect(),
        };
        p.trim();
        p
    }

    /// From a bit mask (bit i = coefficient of x^i).
    pub fn from_mask(mask: u64) -> Self {
        Self::from_coeffs((0..64).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients lowest degree first.
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c == 1).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 1 {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    coeffs[i + j] ^= b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0u8; nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            if rem[shift + dd] == 1 {
                quot[shift] = 1;
                for (i, &c) in den.coeffs.iter().enumerate() {
                    rem[shift + i] ^= c;
                }
            }
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Polynomial division with quotient and remainder.
pub fn poly_divide(
    num: &BinaryPolynomial,
    den: &BinaryPolynomial,
) -> Result<(BinaryPolynomial, BinaryPolynomial)> {
    num.div_rem(den)
}

/// Least common multiple of a nonempty list of nonzero polynomials.
pub fn poly_lcm(ps: &[BinaryPolynomial]) -> Result<BinaryPolynomial> {
    let (first, rest) = ps.split_first().ok_or(Error::EmptyLcm)?;
    if ps.iter().any(BinaryPolynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    rest.iter().try_fold(first.clone(), |acc, p| {
        let g = acc.gcd(p);
        let (q, _) = acc.div_rem(&g)?;
        Ok(q.mul(p))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(mask: u64) -> BinaryPolynomial {
        BinaryPolynomial::from_mask(mask)
    }

    #[test]
    fn gf8_alpha_generates_all_nonzero() {
        let f = GaloisField::new(3).unwrap();
        let mut seen = [false; 8];
        for i in 0..7 {
            let a = f.alpha_pow(i);
            assert!(a != 0 && !seen[a as usize]);
            seen[a as usize] = true;
        }
        assert_eq!(f.alpha_pow(3), 0b011); // α^3 = α + 1
        assert_eq!(f.log(1), Some(0));
    }

    #[test]
    fn gf16_alpha_has_order_15() {
        let f = GaloisField::new(4).unwrap();
        let mut a = 1u16;
        for j in 1..15 {
            a = f.mul(a, 0b10);
            assert_ne!(a, 1, "α^{j} = 1");
        }
        assert_eq!(f.mul(a, 0b10), 1);
    }

    #[test]
    fn every_table_polynomial_is_primitive() {
        for m in MIN_DEGREE..=MAX_DEGREE {
            let f = GaloisField::new(m).unwrap();
            let mut seen = vec![false; f.size()];
            for i in 0..f.order() {
                let a = f.alpha_pow(i) as usize;
                assert!(!seen[a], "m={m}: repeated element");
                seen[a] = true;
            }
            for a in 1..f.size() as u16 {
                assert_eq!(f.alpha_pow(f.log(a).unwrap()), a);
            }
        }
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(GaloisField::new(1), Err(Error::FieldDegree(1))));
        assert!(matches!(GaloisField::new(11), Err(Error::FieldDegree(11))));
    }

    #[test]
    fn minimal_polynomials_gf8() {
        let f = GaloisField::new(3).unwrap();
        assert_eq!(f.minimal_polynomial(1).unwrap(), p(0b1011));
        assert_eq!(f.minimal_polynomial(3).unwrap(), p(0b1101));
        assert_eq!(f.cyclotomic_coset(3), vec![3, 6, 5]);
        assert!(f.minimal_polynomial(0).is_err());
        assert!(f.minimal_polynomial(7).is_err());
    }

    #[test]
    fn minimal_polynomial_vanishes_at_root() {
        for m in MIN_DEGREE..=MAX_DEGREE {
            let f = GaloisField::new(m).unwrap();
            for j in 1..f.order() {
                let mp = f.minimal_polynomial(j).unwrap();
                assert!(mp.degree().unwrap() >= 1);
                assert_eq!(f.eval(&mp, f.alpha_pow(j)), 0, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn x_pow_n_plus_one_factors_into_minimal_polys() {
        for m in MIN_DEGREE..=5 {
            let f = GaloisField::new(m).unwrap();
            let n = f.order();
            let mut distinct: Vec<BinaryPolynomial> = Vec::new();
            for j in 1..n {
                let mp = f.minimal_polynomial(j).unwrap();
                if !distinct.contains(&mp) {
                    distinct.push(mp);
                }
            }
            // x + 1 is the minimal polynomial of α^0.
            let prod = distinct.iter().fold(p(0b11), |acc, q| acc.mul(q));
            assert_eq!(prod, BinaryPolynomial::monomial(n).add(&BinaryPolynomial::one()));
        }
    }

    #[test]
    fn divide_hamming() {
        let num = BinaryPolynomial::monomial(7).add(&BinaryPolynomial::one());
        let (q, r) = poly_divide(&num, &p(0b1011)).unwrap();
        assert_eq!(q, p(0b10111));
        assert!(r.is_zero());
    }

    #[test]
    fn divide_trivial_cases() {
        let a = p(0b1101_0011);
        assert_eq!(poly_divide(&a, &a).unwrap(), (BinaryPolynomial::one(), BinaryPolynomial::zero()));
        assert_eq!(poly_divide(&a, &BinaryPolynomial::one()).unwrap(), (a.clone(), BinaryPolynomial::zero()));
        assert!(matches!(poly_divide(&a, &BinaryPolynomial::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn lcm_cases() {
        let a = p(0b1011);
        let b = p(0b1101);
        assert_eq!(poly_lcm(&[a.clone(), a.clone()]).unwrap(), a);
        assert_eq!(poly_lcm(&[a.clone(), BinaryPolynomial::one()]).unwrap(), a);
        let l = poly_lcm(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(l.degree(), Some(6));
        assert_eq!(a.gcd(&b), BinaryPolynomial::one());
        assert!(l.div_rem(&a).unwrap().1.is_zero());
        assert!(l.div_rem(&b).unwrap().1.is_zero());
        assert!(matches!(poly_lcm(&[]), Err(Error::EmptyLcm)));
        assert!(matches!(poly_lcm(&[a, BinaryPolynomial::zero()]), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn display() {
        assert_eq!(p(0b1011).to_string(), "x^3 + x + 1");
        assert_eq!(BinaryPolynomial::zero().to_string(), "0");
    }
}
