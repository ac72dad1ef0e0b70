//! Affine-permutation list decoding for BCH and punctured RM codes.
//!
//! Prepending the overall parity bit turns both families into codes of length
//! n + 1 = 2^m invariant under the affine group of GF(2^m). Coordinates
//! {0, ..., n} are identified with field elements by f(0) = 0, f(i) = α^(i−1);
//! the translations X ↦ X + f(j) give the n + 1 permutations σ_0, ..., σ_n.

use crate::codes::CyclicCode;
use crate::decoder::hard_decision;
use crate::error::{Error, Result};
use crate::galois::GaloisField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePermutationSet {
    m: u32,
    n: usize,
    /// perms[j][v] = σ_j(v).
    perms: Vec<Vec<usize>>,
}

impl AffinePermutationSet {
    pub fn new(field: &GaloisField) -> Self {
        let n = field.order();
        let f = |i: usize| if i == 0 { 0 } else { field.alpha_pow(i - 1) };
        let f_inv = |a: u16| field.log(a).map_or(0, |l| l + 1);
        let perms = (0..=n)
            .map(|j| (0..=n).map(|v| f_inv(f(v) ^ f(j))).collect())
            .collect();
        Self {
            m: field.m(),
            n,
            perms,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// σ_j as an image table over {0, ..., n}.
    pub fn perm(&self, j: usize) -> &[usize] {
        &self.perms[j]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// σ_j ∘ σ_k as an image table.
    pub fn compose(&self, j: usize, k: usize) -> Vec<usize> {
        self.perms[k].iter().map(|&v| self.perms[j][v]).collect()
    }
}

/// The extended word (C_0, C_1, ..., C_n) with C_0 the overall parity.
pub fn extend_with_parity(bits: &[u8]) -> Vec<u8> {
    let parity = bits.iter().fold(0u8, |a, &b| a ^ b);
    std::iter::once(parity).chain(bits.iter().copied()).collect()
}

/// True iff bits 1..=n form a codeword and bit 0 is their overall parity.
pub fn extended_is_codeword(code: &CyclicCode, ext: &[u8]) -> bool {
    ext.len() == code.n + 1
        && code.is_codeword(&ext[1..])
        && ext[0] == ext[1..].iter().fold(0u8, |a, &b| a ^ b)
}

/// What to do with a branch whose hard decision is not a codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FailedBranch {
    /// Replace it with the all-zero word and keep it in the ML comparison.
    #[default]
    ZeroFill,
    /// Leave it out of the ML comparison (the all-zero word is returned if
    /// every branch fails).
    Drop,
}

/// List decoding with σ_0, ..., σ_{ℓ−1}.
///
/// `decode` maps n input LLRs to n output LLRs. Among the candidates, the one
/// minimising Σ_v L_v Ĉ_v over the extended word wins; ties go to the lowest
/// branch index.
pub fn list_decode<F>(
    code: &CyclicCode,
    perms: &AffinePermutationSet,
    llr: &[f64],
    ell: usize,
    failed: FailedBranch,
    decode: F,
) -> Result<Vec<u8>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = code.n;
    if perms.n() != n {
        return Err(Error::Shape(format!(
            "permutation set is for n = {}, code has n = {n}",
            perms.n()
        )));
    }
    if !(1..=n + 1).contains(&ell) {
        return Err(Error::ListSize { ell, max: n + 1 });
    }
    if llr.len() != n {
        return Err(Error::Shape(format!("expected {n} LLRs, got {}", llr.len())));
    }
    let extended: Vec<f64> = std::iter::once(0.0).chain(llr.iter().copied()).collect();

    let mut best: Option<(f64, Vec<u8>)> = None;
    for i in 0..ell {
        let sigma = perms.perm(i);
        let permuted: Vec<f64> = sigma.iter().map(|&v| extended[v]).collect();
        let mut bits = hard_decision(&decode(&permuted[1..]));
        if !code.is_codeword(&bits) {
            match failed {
                FailedBranch::ZeroFill => bits.iter_mut().for_each(|b| *b = 0),
                FailedBranch::Drop => continue,
            }
        }
        let ext_bits = extend_with_parity(&bits);
        // σ is an involution, so σ^{-1} = σ; the inverse is still built
        // explicitly to follow the permutation definition.
        let mut candidate = vec![0u8; n + 1];
        for (v, &s) in sigma.iter().enumerate() {
            candidate[s] = ext_bits[v];
        }
        let metric: f64 = extended
            .iter()
            .zip(&candidate)
            .map(|(&l, &c)| l * f64::from(c))
            .sum();
        if best.as_ref().is_none_or(|(bm, _)| metric < *bm) {
            best = Some((metric, candidate));
        }
    }
    Ok(match best {
        Some((_, c)) => c[1..].to_vec(),
        None => vec![0; n],
    })
}
