use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::element::RingElement;
use crate::error::{Error, Result};
use crate::linalg::field;

/// Largest k-dimension accepted for a quotient ring; the multiplication table
/// is `D²` entries.
pub const MAX_RING_DIM: usize = 1024;

/// A finite-dimensional local F_p-algebra `F_p[x_1..x_n]/I` with `I` generated
/// by monomials.
///
/// The k-basis is the set of standard monomials (those divisible by no
/// generator) in graded lexicographic order with `x_1 > x_2 > ...`, so the
/// monomial `1` always sits at index 0.
pub struct MonomialQuotientRing {
    p: u32,
    n_vars: usize,
    gens: Vec<Vec<u32>>,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    /// `table[i * D + j]` is the index of `basis[i] * basis[j]`, or `usize::MAX`
    /// when the product lies in the ideal.
    table: Vec<usize>,
}

pub(crate) const ZERO_PRODUCT: usize = usize::MAX;

impl MonomialQuotientRing {
    pub fn new(p: u32, n_vars: usize, gens: Vec<Vec<u32>>) -> Result<Arc<Self>> {
        field::check_prime(p)?;
        for g in &gens {
            if g.len() != n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "generator {g:?} has {} exponents, ring has {n_vars} variables",
                    g.len()
                )));
            }
        }
        // Artinian: every variable needs a pure power among the generators.
        let mut bounds = Vec::with_capacity(n_vars);
        for var in 0..n_vars {
            let bound = gens
                .iter()
                .filter(|g| g.iter().enumerate().all(|(i, &e)| i == var || e == 0))
                .map(|g| g[var])
                .min();
            match bound {
                Some(b) => bounds.push(b),
                None => return Err(Error::NonArtinian { var: var + 1 }),
            }
        }
        if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return Err(Error::Precondition("the unit ideal presents the zero ring".into()));
        }
        let box_size = bounds
            .iter()
            .try_fold(1usize, |acc, &b| acc.checked_mul(b as usize))
            .filter(|&s| s <= 1 << 24)
            .ok_or(Error::RingTooLarge {
                dim: usize::MAX,
                cap: MAX_RING_DIM,
            })?;

        let mut basis = Vec::new();
        let mut exp = vec![0u32; n_vars];
        for _ in 0..box_size {
            if !gens.iter().any(|g| divides(g, &exp)) {
                basis.push(exp.clone());
                if basis.len() > MAX_RING_DIM {
                    return Err(Error::RingTooLarge {
                        dim: basis.len(),
                        cap: MAX_RING_DIM,
                    });
                }
            }
            // odometer step inside the box
            for i in (0..n_vars).rev() {
                exp[i] += 1;
                if exp[i] < bounds[i] {
                    break;
                }
                exp[i] = 0;
            }
        }
        basis.sort_by(|a, b| graded_lex(a, b));
        let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let d = basis.len();
        let mut table = vec![ZERO_PRODUCT; d * d];
        for i in 0..d {
            for j in 0..d {
                let prod: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                if let Some(&k) = index.get(&prod) {
                    table[i * d + j] = k;
                }
            }
        }
        Ok(Arc::new(MonomialQuotientRing {
            p,
            n_vars,
            gens,
            basis,
            index,
            table,
        }))
    }

    /// `F_2[x_1..x_d]/(x_1², ..., x_d²)`.
    pub fn carlsson(d: usize) -> Result<Arc<Self>> {
        let gens = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 2 } else { 0 }).collect())
            .collect();
        Self::new(2, d, gens)
    }

    /// `F_p[x]/(x^a)`.
    pub fn truncated(p: u32, a: u32) -> Result<Arc<Self>> {
        Self::new(p, 1, vec![vec![a]])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    /// `dim_k R`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn monomial_index(&self, exp: &[u32]) -> Option<usize> {
        self.index.get(exp).copied()
    }

    /// Index of the product of two basis monomials, `None` if it vanishes.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let t = self.table[i * self.basis.len() + j];
        (t != ZERO_PRODUCT).then_some(t)
    }

    /// Whether this is the ring `F_2[x_1..x_d]/(x_i²)` for `d = n_vars`.
    pub fn is_carlsson(&self) -> bool {
        self.p == 2 && self.dim() == 1 << self.n_vars && self.basis.iter().all(|m| m.iter().all(|&e| e <= 1))
    }

    /// `out += a * b` on coefficient slices.
    #[inline]
    pub fn mul_acc(&self, out: &mut [u32], a: &[u32], b: &[u32]) {
        let d = self.basis.len();
        let p = self.p as u64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.table[i * d..(i + 1) * d];
            for (&t, &bj) in row.iter().zip(b) {
                if bj != 0 && t != ZERO_PRODUCT {
                    out[t] = ((out[t] as u64 + ai as u64 * bj as u64) % p) as u32;
                }
            }
        }
    }

    pub fn zero(self: &Arc<Self>) -> RingElement {
        RingElement::from_coeffs_unchecked(self.clone(), vec![0; self.dim()])
    }

    pub fn one(self: &Arc<Self>) -> RingElement {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: i64) -> RingElement {
        let mut coeffs = vec![0; self.dim()];
        coeffs[0] = field::reduce_i64(c, self.p);
        RingElement::from_coeffs_unchecked(self.clone(), coeffs)
    }

    /// The monomial `x^exp`, zero if it lies in the ideal.
    pub fn monomial(self: &Arc<Self>, exp: &[u32]) -> RingElement {
        let mut coeffs = vec![0; self.dim()];
        if let Some(i) = self.monomial_index(exp) {
            coeffs[i] = 1;
        }
        RingElement::from_coeffs_unchecked(self.clone(), coeffs)
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(self: &Arc<Self>, i: usize) -> RingElement {
        let mut exp = vec![0; self.n_vars];
        exp[i] = 1;
        self.monomial(&exp)
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<u32>) -> Result<RingElement> {
        RingElement::from_coeffs(self.clone(), coeffs)
    }

    /// Parses a polynomial string such as `1+x1*x2^2`.
    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<RingElement> {
        super::text::parse_polynomial(self, s)
    }

    /// Canonical text of a coefficient vector.
    pub fn format_coeffs(&self, coeffs: &[u32]) -> String {
        super::text::format_polynomial(self, coeffs)
    }

    /// Ring description file contents.
    pub fn to_text(&self) -> String {
        super::text::ring_to_text(self)
    }

    pub fn from_text(s: &str) -> Result<Arc<Self>> {
        super::text::ring_from_text(s)
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl PartialEq for MonomialQuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n_vars == other.n_vars && self.basis == other.basis
    }
}

impl Eq for MonomialQuotientRing {}

impl fmt::Debug for MonomialQuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonomialQuotientRing(p={}, n_vars={}, gens={:?}, dim={})",
            self.p,
            self.n_vars,
            self.gens,
            self.dim()
        )
    }
}

pub(crate) fn divides(g: &[u32], m: &[u32]) -> bool {
    g.iter().zip(m).all(|(a, b)| a <= b)
}

/// Graded lex with `x_1 > x_2 > ...`: lower total degree first, then the
/// lexicographically larger exponent vector first.
pub(crate) fn graded_lex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}
