//! Quadratic functions over Z/2 and Z/4.
//!
//! A [`Z2QuadraticSpace`] is an alternating form on `Z_2^n` together with
//! the values of a quadratic refinement on the basis; vectors are `u64`
//! bitsets, so `n <= 64`. A [`QuadZ4`] is a refinement of an integral
//! antisymmetric form with values in `Z_4`, `q(a+b) = q(a) + q(b) + 2 a.b`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice;

pub const DEFAULT_MAX_GAUSS_DIM: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("quadratic space is degenerate")]
    Degenerate,
    #[error("Gauss sum over a block of dimension {dim} exceeds the bound {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("bad parameter for {family}: {reason}")]
    BadParameter { family: &'static str, reason: String },
    #[error("Gram matrix is not alternating at ({0}, {1})")]
    NotAlternating(usize, usize),
    #[error("dimension {0} exceeds 64")]
    TooManyDimensions(usize),
    #[error("vector is not in the radical or has nonzero value")]
    BadQuotient,
    #[error("q is not even on the given sublattice: {0}")]
    NotEven(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2QuadraticSpace {
    dim: usize,
    /// Row `i` is the bitset of `j` with `e_i . e_j = 1`.
    gram: Vec<u64>,
    /// `q(e_i)` in {0, 1}.
    q: Vec<u8>,
}

impl Z2QuadraticSpace {
    pub fn new(gram: Vec<u64>, q: Vec<u8>) -> Result<Self, QuadError> {
        let dim = gram.len();
        if dim > 64 {
            return Err(QuadError::TooManyDimensions(dim));
        }
        assert_eq!(q.len(), dim, "one value per basis vector");
        for i in 0..dim {
            if gram[i] >> i & 1 == 1 {
                return Err(QuadError::NotAlternating(i, i));
            }
            for j in 0..dim {
                if gram[i] >> j & 1 != gram[j] >> i & 1 {
                    return Err(QuadError::NotAlternating(i, j));
                }
            }
            if dim < 64 && gram[i] >> dim != 0 {
                return Err(QuadError::NotAlternating(i, dim));
            }
        }
        Ok(Z2QuadraticSpace {
            dim,
            gram,
            q: q.into_iter().map(|x| x & 1).collect(),
        })
    }

    /// Builds from a pairing predicate on basis indices (only `i < j` is asked).
    pub fn from_fn(dim: usize, q: Vec<u8>, pair: impl Fn(usize, usize) -> bool) -> Result<Self, QuadError> {
        let mut gram = vec![0u64; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                if pair(i, j) {
                    gram[i] |= 1 << j;
                    gram[j] |= 1 << i;
                }
            }
        }
        Self::new(gram, q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram_row(&self, i: usize) -> u64 {
        self.gram[i]
    }

    pub fn basis_value(&self, i: usize) -> u8 {
        self.q[i]
    }

    pub fn dot(&self, x: u64, y: u64) -> u8 {
        let mut s = 0;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            s ^= (self.gram[i] & y).count_ones() & 1;
            bits &= bits - 1;
        }
        s as u8
    }

    /// `q(x) = sum x_i q(e_i) + sum_{i<j} x_i x_j (e_i . e_j)`.
    pub fn eval(&self, x: u64) -> u8 {
        let mut s = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            s += self.q[i] as u32;
            // pairs (i, j) with j > i
            let higher = if i + 1 >= 64 { 0 } else { x & (!0u64 << (i + 1)) };
            s += (self.gram[i] & higher).count_ones();
            bits &= bits - 1;
        }
        (s & 1) as u8
    }

    pub fn radical_rank(&self) -> usize {
        self.dim - lattice::rank_mod2(&self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical_rank() == 0
    }

    pub fn direct_sum(&self, other: &Z2QuadraticSpace) -> Result<Z2QuadraticSpace, QuadError> {
        let d = self.dim;
        let mut gram = self.gram.clone();
        gram.extend(other.gram.iter().map(|&r| r << d));
        let mut q = self.q.clone();
        q.extend_from_slice(&other.q);
        Self::new(gram, q)
    }

    /// Quotient by a radical vector `v` with `q(v) = 0`, on the images of
    /// the basis vectors other than the lowest index in `v`.
    pub fn quotient(&self, v: u64) -> Result<Z2QuadraticSpace, QuadError> {
        if v == 0 || (0..self.dim).any(|i| self.dot(v, 1 << i) != 0) || self.eval(v) != 0 {
            return Err(QuadError::BadQuotient);
        }
        let pivot = v.trailing_zeros() as usize;
        let keep: Vec<usize> = (0..self.dim).filter(|&i| i != pivot).collect();
        let q = keep.iter().map(|&i| self.q[i]).collect();
        Self::from_fn(keep.len(), q, |a, b| self.dot(1 << keep[a], 1 << keep[b]) == 1)
    }

    /// Connected components of the pairing graph, as bitsets. The space is
    /// the orthogonal sum of the corresponding subspaces.
    pub fn orthogonal_blocks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut blocks = Vec::new();
        for i in 0..self.dim {
            if seen >> i & 1 == 1 {
                continue;
            }
            let mut block = 1u64 << i;
            let mut frontier = block;
            while frontier != 0 {
                let j = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.gram[j] & !block;
                block |= new;
                frontier |= new;
            }
            seen |= block;
            blocks.push(block);
        }
        blocks
    }

    /// Restriction to the coordinate subspace spanned by `mask`.
    pub fn restrict(&self, mask: u64) -> Z2QuadraticSpace {
        let idx: Vec<usize> = (0..self.dim).filter(|&i| mask >> i & 1 == 1).collect();
        let q = idx.iter().map(|&i| self.q[i]).collect();
        Self::from_fn(idx.len(), q, |a, b| self.gram[idx[a]] >> idx[b] & 1 == 1).expect("restriction of a valid space")
    }
}

/// Gauss sum `sum_x (-1)^{q(x)}` over one block by Gray-code enumeration.
fn gauss_block(s: &Z2QuadraticSpace) -> i128 {
    let n = s.dim;
    let mut x = 0u64;
    let mut val = 0u8;
    let mut sum: i128 = 1;
    for step in 1u64..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        // q(x + e_i) = q(x) + q(e_i) + e_i . x
        val ^= s.q[i] ^ ((s.gram[i] & x).count_ones() & 1) as u8;
        x ^= 1 << i;
        sum += if val == 0 { 1 } else { -1 };
    }
    sum
}

/// Gauss sum, factored over orthogonal blocks; each block must have
/// dimension at most `max_dim`.
pub fn gauss_sum(s: &Z2QuadraticSpace, max_dim: usize) -> Result<i128, QuadError> {
    let mut total: i128 = 1;
    for block in s.orthogonal_blocks() {
        let dim = block.count_ones() as usize;
        if dim > max_dim {
            return Err(QuadError::TooLarge { dim, max: max_dim });
        }
        total *= gauss_block(&s.restrict(block));
    }
    Ok(total)
}

/// Arf invariant from the sign of the Gauss sum, which must be
/// `+-2^{n/2}`.
pub fn arf_gauss(s: &Z2QuadraticSpace, max_dim: usize) -> Result<u8, QuadError> {
    let g = gauss_sum(s, max_dim)?;
    if s.dim % 2 == 1 || g.abs() != 1i128 << (s.dim / 2) {
        return Err(QuadError::Degenerate);
    }
    Ok(u8::from(g < 0))
}

/// Symplectic basis `(a_i, b_i)` of a nondegenerate space.
pub fn symplectic_basis(s: &Z2QuadraticSpace) -> Result<Vec<(u64, u64)>, QuadError> {
    let mut pool: Vec<u64> = (0..s.dim).map(|i| 1u64 << i).collect();
    let mut pairs = Vec::new();
    while let Some(a) = pool.pop() {
        let Some(k) = pool.iter().position(|&b| s.dot(a, b) == 1) else {
            return Err(QuadError::Degenerate);
        };
        let b = pool.swap_remove(k);
        for c in pool.iter_mut() {
            let ca = s.dot(*c, a);
            let cb = s.dot(*c, b);
            if cb == 1 {
                *c ^= a;
            }
            if ca == 1 {
                *c ^= b;
            }
        }
        pairs.push((a, b));
    }
    Ok(pairs)
}

/// `sum q(a_i) q(b_i)` over a symplectic basis.
pub fn arf_symplectic(s: &Z2QuadraticSpace) -> Result<u8, QuadError> {
    Ok(symplectic_basis(s)?
        .iter()
        .fold(0, |acc, &(a, b)| acc ^ (s.eval(a) & s.eval(b))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `n` vectors pairwise intersecting once, all with `q = 0`.
    V(usize),
    /// Quotient of `V(n)` (`n = 1 mod 4`) by the sum of all basis vectors.
    VBar(usize),
    /// `beta_1..beta_k, gamma_1..gamma_k` with `beta_i . gamma_j = 1` iff
    /// `i <= j`, distinct betas (gammas) pairing to 1, and `q = 1`.
    W(usize),
    /// `n` vectors with `alpha_i . alpha_j = 1` iff `i < j < i + n/2`, `q = 0`.
    Banded(usize),
}

pub fn family(kind: Family) -> Result<Z2QuadraticSpace, QuadError> {
    match kind {
        Family::V(n) => {
            if n == 0 {
                return Err(bad("V", "n must be positive"));
            }
            Z2QuadraticSpace::from_fn(n, vec![0; n], |_, _| true)
        }
        Family::VBar(n) => {
            if n % 4 != 1 {
                return Err(bad("VBar", format!("n = {n} is not 1 mod 4")));
            }
            let v = family(Family::V(n))?;
            v.quotient(if n == 64 { !0 } else { (1u64 << n) - 1 })
        }
        Family::W(k) => {
            if k % 3 == 2 {
                return Err(bad("W", format!("k = {k} is 2 mod 3")));
            }
            // beta_i = i, gamma_j = k + j
            Z2QuadraticSpace::from_fn(2 * k, vec![1; 2 * k], |a, b| {
                if b < k || a >= k {
                    true
                } else {
                    a <= b - k
                }
            })
        }
        Family::Banded(n) => {
            if n < 4 || n % 2 == 1 || n % 3 == 2 {
                return Err(bad("Banded", format!("n = {n} must be even, at least 4 and not 2 mod 3")));
            }
            Z2QuadraticSpace::from_fn(n, vec![0; n], |i, j| j < i + n / 2)
        }
    }
}

fn bad(family: &'static str, reason: impl Into<String>) -> QuadError {
    QuadError::BadParameter {
        family,
        reason: reason.into(),
    }
}

/// Hyperbolic plane with prescribed values on its two basis vectors.
pub fn hyperbolic(qa: u8, qb: u8) -> Z2QuadraticSpace {
    Z2QuadraticSpace::new(vec![0b10, 0b01], vec![qa, qb]).expect("valid plane")
}

/// Binomial coefficient `C(n, 2)`.
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// A `Z_4`-valued quadratic refinement of an integral antisymmetric form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadZ4 {
    gram: Vec<Vec<i64>>,
    q: Vec<u8>,
}

impl QuadZ4 {
    pub fn new(gram: Vec<Vec<i64>>, q: Vec<u8>) -> Result<Self, QuadError> {
        let n = gram.len();
        assert_eq!(q.len(), n);
        for i in 0..n {
            assert_eq!(gram[i].len(), n);
            for j in 0..n {
                if gram[i][j] != -gram[j][i] {
                    return Err(QuadError::NotAlternating(i, j));
                }
            }
        }
        Ok(QuadZ4 {
            gram,
            q: q.into_iter().map(|x| x & 3).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.q
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        lattice::bilinear(&self.gram, x, y)
    }

    /// `q(x) = sum x_i q_i + 2 sum_{i<j} x_i x_j G_ij  (mod 4)`.
    pub fn eval(&self, x: &[i64]) -> u8 {
        let mut s: i64 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            s += x[i] * self.q[i] as i64;
            for j in i + 1..x.len() {
                s += 2 * x[i] * x[j] * self.gram[i][j];
            }
        }
        s.rem_euclid(4) as u8
    }

    /// `x + (a.x) a`.
    pub fn transvect_vector(&self, a: &[i64], x: &[i64]) -> Vec<i64> {
        let c = self.pair(a, x);
        x.iter().zip(a).map(|(xi, ai)| xi + c * ai).collect()
    }

    /// `q o T_a`, given by `q(x) + (q(a) + 2)(a.x)` on each basis vector.
    pub fn transvection(&self, a: &[i64]) -> QuadZ4 {
        let qa = self.eval(a) as i64;
        let n = self.rank();
        let q = (0..n)
            .map(|i| {
                let ax = self.gram_row_dot(a, i);
                (self.q[i] as i64 + (qa + 2) * ax).rem_euclid(4) as u8
            })
            .collect();
        QuadZ4 {
            gram: self.gram.clone(),
            q,
        }
    }

    fn gram_row_dot(&self, a: &[i64], i: usize) -> i64 {
        a.iter().enumerate().map(|(k, &ak)| ak * self.gram[k][i]).sum()
    }

    /// Whether `q` is additive modulo 2, i.e. all values even.
    pub fn sigma(&self) -> u8 {
        u8::from(self.q.iter().any(|&v| v % 2 == 1))
    }

    /// Induced `Z_2` space on `Z^n / K` for a primitive sublattice `K`
    /// (given by spanning rows) on which `q` vanishes mod 4 and which pairs
    /// trivially with everything, using `q/2`.
    pub fn reduce_mod(&self, kernel: &[Vec<i64>]) -> Result<(Z2QuadraticSpace, Vec<Vec<i64>>), QuadError> {
        if self.sigma() != 0 {
            return Err(QuadError::NotEven("sigma"));
        }
        let n = self.rank();
        for k in kernel {
            if self.eval(k) != 0 {
                return Err(QuadError::NotEven("kernel"));
            }
            for i in 0..n {
                if self.gram_row_dot(k, i) != 0 {
                    return Err(QuadError::BadQuotient);
                }
            }
        }
        let red = lattice::reduce(kernel, n);
        if !red.is_primitive() {
            return Err(QuadError::BadQuotient);
        }
        let basis: Vec<Vec<i64>> = red.complement().to_vec();
        let qbar = basis.iter().map(|u| self.eval(u) / 2).collect();
        let space = Z2QuadraticSpace::from_fn(basis.len(), qbar, |i, j| {
            self.pair(&basis[i], &basis[j]).rem_euclid(2) == 1
        })?;
        Ok((space, basis))
    }

    /// Invariants preserved by the symplectic group fixing `kernel`: values
    /// on the kernel rows, `sigma`, and the Arf invariant when defined.
    pub fn invariants(&self, kernel: &[Vec<i64>]) -> Quad4Invariants {
        let kernel_values = kernel.iter().map(|k| self.eval(k)).collect();
        let arf = self
            .reduce_mod(kernel)
            .ok()
            .and_then(|(s, _)| arf_symplectic(&s).ok());
        Quad4Invariants {
            kernel_values,
            sigma: self.sigma(),
            arf,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad4Invariants {
    pub kernel_values: Vec<u8>,
    pub sigma: u8,
    pub arf: Option<u8>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_planes() {
        assert_eq!(arf_symplectic(&hyperbolic(0, 0)), Ok(0));
        assert_eq!(arf_symplectic(&hyperbolic(1, 1)), Ok(1));
        assert_eq!(arf_gauss(&hyperbolic(1, 0), 24), Ok(0));
        assert_eq!(arf_gauss(&hyperbolic(1, 1), 24), Ok(1));
    }

    #[test]
    fn v4_has_arf_one() {
        let v = family(Family::V(4)).unwrap();
        assert_eq!(v.gram_row(0), 0b1110);
        assert_eq!(arf_symplectic(&v), Ok(1));
        assert_eq!(arf_gauss(&v, 24), Ok(1));
    }

    #[test]
    fn w1_and_banded6() {
        assert_eq!(arf_gauss(&family(Family::W(1)).unwrap(), 24), Ok(1));
        assert_eq!(arf_gauss(&family(Family::Banded(6)).unwrap(), 24), Ok(1));
    }

    #[test]
    fn degenerate_refused() {
        let v3 = family(Family::V(3)).unwrap();
        assert_eq!(arf_gauss(&v3, 24), Err(QuadError::Degenerate));
        assert_eq!(arf_symplectic(&v3), Err(QuadError::Degenerate));
        assert!(family(Family::W(2)).is_err());
        assert!(family(Family::Banded(8)).is_err());
        assert!(family(Family::VBar(7)).is_err());
    }

    #[test]
    fn blocks_and_bound() {
        let s = family(Family::V(12))
            .unwrap()
            .direct_sum(&family(Family::V(12)).unwrap())
            .unwrap()
            .direct_sum(&hyperbolic(1, 1))
            .unwrap();
        assert_eq!(s.orthogonal_blocks().len(), 3);
        assert_eq!(arf_gauss(&s, 24), Ok(1));
        assert!(matches!(arf_gauss(&s, 8), Err(QuadError::TooLarge { dim: 12, max: 8 })));
    }

    #[test]
    fn transvection_by_minus_one_class() {
        // q(a) = 3 = -1: q o T_a = q + (a . x)
        let q = QuadZ4::new(vec![vec![0, 1], vec![-1, 0]], vec![3, 0]).unwrap();
        let t = q.transvection(&[1, 0]);
        assert_eq!(t.basis_values(), &[3, 1]);
        for x in -2..3 {
            for y in -2..3 {
                let v = [x, y];
                let lhs = q.eval(&q.transvect_vector(&[1, 0], &v));
                assert_eq!(lhs, t.eval(&v));
            }
        }
    }

    #[test]
    fn z4_eval_is_a_refinement() {
        let q = QuadZ4::new(vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -2, 0]], vec![1, 2, 3]).unwrap();
        let vs = [[1, 0, 0], [0, 1, 1], [2, -1, 3], [-1, -1, 0]];
        for a in &vs {
            for b in &vs {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let lhs = q.eval(&s) as i64;
                let rhs = q.eval(a) as i64 + q.eval(b) as i64 + 2 * q.pair(a, b);
                assert_eq!(lhs, rhs.rem_euclid(4));
            }
        }
    }
}
