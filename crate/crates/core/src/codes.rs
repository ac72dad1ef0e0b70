//! BCH and punctured Reed–Muller codes of length 2^m − 1.
//!
//! Every code carries its generator and parity polynomials, the band
//! generator matrix, the standard (n−k)×n parity matrix and the n×n cyclic
//! parity matrix made of all n cyclic shifts of the first parity row.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::galois::{poly_lcm, BinaryPolynomial, GaloisField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    /// BCH code with designed distance 2δ + 1.
    Bch { delta: usize },
    /// Punctured Reed–Muller code of order r.
    Prm { r: usize },
}

/// Family + (n, k), the way codes are named on the command line: `BCH(63,45)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeId {
    pub family: Family,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Bch,
    Prm,
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::Bch => "BCH",
            Family::Prm => "PRM",
        };
        write!(f, "{fam}({},{})", self.n, self.k)
    }
}

impl FromStr for CodeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::CodeId(s.to_string());
        let t = s.trim();
        let open = t.find('(').ok_or_else(bad)?;
        let family = match t[..open].trim().to_ascii_uppercase().as_str() {
            "BCH" => Family::Bch,
            "PRM" => Family::Prm,
            _ => return Err(bad()),
        };
        let inner = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let (n, k) = inner.split_once(',').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        Ok(Self { family, n, k })
    }
}

/// A binary cyclic code of primitive length n = 2^m − 1.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    pub n: usize,
    pub k: usize,
    pub kind: CodeKind,
    pub field: GaloisField,
    /// Generator polynomial, degree n − k.
    pub g: BinaryPolynomial,
    /// Parity polynomial (x^n + 1) / g, degree k.
    pub h: BinaryPolynomial,
    pub generator: BitMatrix,
    pub parity_std: BitMatrix,
    pub parity_cyclic: BitMatrix,
}

impl CyclicCode {
    /// BCH code with generator lcm{M^(1), M^(3), ..., M^(2δ−1)}.
    pub fn bch(m: u32, delta: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::CodeParams(format!("BCH codes need m >= 3, got {m}")));
        }
        if delta == 0 {
            return Err(Error::CodeParams("BCH needs delta >= 1".into()));
        }
        let field = GaloisField::new(m)?;
        let n = field.order();
        if 2 * delta - 1 > n - 1 {
            return Err(Error::CodeParams(format!(
                "delta = {delta} too large for n = {n}"
            )));
        }
        let mins = (1..=delta)
            .map(|i| field.minimal_polynomial(2 * i - 1))
            .collect::<Result<Vec<_>>>()?;
        let g = poly_lcm(&mins)?;
        Self::from_generator(field, g, CodeKind::Bch { delta })
    }

    /// Punctured RM code of order r: generator is the lcm of M^(j) over all
    /// 1 ≤ j ≤ n − 1 whose binary weight lies in [1, m − r − 1].
    pub fn prm(m: u32, r: usize) -> Result<Self> {
        if r < 1 || r + 2 > m as usize {
            return Err(Error::CodeParams(format!(
                "PRM order r = {r} outside 1..={}",
                m.saturating_sub(2)
            )));
        }
        let field = GaloisField::new(m)?;
        let n = field.order();
        let max_w = m as usize - r - 1;
        let mins = (1..n)
            .filter(|&j| (1..=max_w).contains(&(j.count_ones() as usize)))
            .map(|j| field.minimal_polynomial(j))
            .collect::<Result<Vec<_>>>()?;
        let g = poly_lcm(&mins)?;
        Self::from_generator(field, g, CodeKind::Prm { r })
    }

    /// Looks up a code by family and (n, k), searching δ (BCH) or r (PRM)
    /// upward until the dimension matches.
    pub fn from_id(id: CodeId) -> Result<Self> {
        let m = (id.n + 1).trailing_zeros();
        if id.n + 1 != 1 << m || !(3..=10).contains(&m) {
            return Err(Error::CodeParams(format!(
                "{id}: n must be 2^m - 1 with 3 <= m <= 10"
            )));
        }
        let not_found = || Error::CodeParams(format!("no {id} code exists"));
        match id.family {
            Family::Bch => {
                for delta in 1.. {
                    let code = match Self::bch(m, delta) {
                        Ok(c) => c,
                        Err(_) => return Err(not_found()),
                    };
                    if code.k == id.k {
                        return Ok(code);
                    }
                    if code.k < id.k {
                        return Err(not_found());
                    }
                }
                unreachable!()
            }
            Family::Prm => (1..=m as usize - 2)
                .map(|r| Self::prm(m, r))
                .find(|c| c.as_ref().is_ok_and(|c| c.k == id.k))
                .unwrap_or_else(|| Err(not_found())),
        }
    }

    fn from_generator(field: GaloisField, g: BinaryPolynomial, kind: CodeKind) -> Result<Self> {
        let n = field.order();
        let deg = g.degree().expect("lcm of nonzero polys is nonzero");
        if deg >= n {
            return Err(Error::CodeParams(format!(
                "generator degree {deg} leaves no information bits at n = {n}"
            )));
        }
        let k = n - deg;
        let xn1 = BinaryPolynomial::monomial(n).add(&BinaryPolynomial::one());
        let (h, rem) = xn1.div_rem(&g)?;
        debug_assert!(rem.is_zero(), "g must divide x^n + 1");

        let mut generator = BitMatrix::zeros(k, n);
        for i in 0..k {
            for (d, &c) in g.coeffs().iter().enumerate() {
                generator.set(i, i + d, c);
            }
        }
        // First parity row: h_k, h_{k-1}, ..., h_0, 0, ..., 0.
        let first: Vec<u8> = (0..n)
            .map(|c| if c <= k { h.coeff(k - c) } else { 0 })
            .collect();
        let shifted = |s: usize| -> Vec<u8> { (0..n).map(|c| first[(c + n - s) % n]).collect() };
        let parity_std = BitMatrix::from_rows((0..n - k).map(shifted).collect());
        let parity_cyclic = BitMatrix::from_rows((0..n).map(shifted).collect());

        Ok(Self {
            n,
            k,
            kind,
            field,
            g,
            h,
            generator,
            parity_std,
            parity_cyclic,
        })
    }

    pub fn id(&self) -> CodeId {
        let family = match self.kind {
            CodeKind::Bch { .. } => Family::Bch,
            CodeKind::Prm { .. } => Family::Prm,
        };
        CodeId {
            family,
            n: self.n,
            k: self.k,
        }
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// True iff `H_std · bitsᵀ = 0`.
    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        bits.len() == self.n && self.parity_std.mul_vec(bits).iter().all(|&s| s == 0)
    }

    /// Encodes `k` message bits as `message · G`.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        assert_eq!(message.len(), self.k);
        let mut word = vec![0u8; self.n];
        for (row, &bit) in self.generator.iter_rows().zip(message) {
            if bit & 1 == 1 {
                for (w, &g) in word.iter_mut().zip(row) {
                    *w ^= g;
                }
            }
        }
        word
    }

    /// A uniformly random codeword.
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u8> {
        let message: Vec<u8> = (0..self.k).map(|_| rng.random::<u8>() & 1).collect();
        self.encode(&message)
    }

    /// `H_std` with `k` appended rows, each a random nonzero GF(2) combination
    /// of the rows of `H_std`.
    pub fn random_extended_matrix(&self, seed: u64) -> BitMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.parity_std.clone();
        let r = self.parity_std.rows();
        for _ in 0..self.k {
            loop {
                let mut row = vec![0u8; self.n];
                for i in 0..r {
                    if rng.random::<bool>() {
                        for (a, &b) in row.iter_mut().zip(self.parity_std.row(i)) {
                            *a ^= b;
                        }
                    }
                }
                if row.contains(&1) {
                    out.push_row(&row);
                    break;
                }
            }
        }
        out
    }
}

/// The ten codes of the benchmark table.
pub const BENCHMARK_CODES: [&str; 10] = [
    "BCH(63,24)",
    "BCH(63,36)",
    "BCH(63,45)",
    "BCH(127,36)",
    "BCH(127,64)",
    "BCH(127,99)",
    "PRM(63,22)",
    "PRM(63,42)",
    "PRM(127,64)",
    "PRM(127,99)",
];
