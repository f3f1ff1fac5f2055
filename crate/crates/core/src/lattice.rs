//! Small exact integer linear algebra: diagonal (Smith-type) reduction with
//! a tracked unimodular basis change, determinants, and mod-2 rank.

/// Result of reducing the row span of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Nonzero diagonal entries `d_1, ..., d_r` (positive).
    pub diagonal: Vec<i64>,
    /// Unimodular `N x N` matrix `Q` such that the row span of the input
    /// equals the span of `d_i * Q[i]`. Rows `r..N` span a complement.
    pub basis: Vec<Vec<i64>>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Whether the quotient `Z^N / span` is free.
    pub fn is_primitive(&self) -> bool {
        self.diagonal.iter().all(|&d| d == 1)
    }

    /// Rows of `Q` projecting to a basis of the free part of the quotient.
    pub fn complement(&self) -> &[Vec<i64>] {
        &self.basis[self.rank()..]
    }
}

/// Diagonalizes `rows` (each of length `n`) by row and column operations,
/// tracking the inverse of the column operations.
pub fn reduce(rows: &[Vec<i64>], n: usize) -> Reduction {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut q: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.len().min(n) {
        let Some((pi, pj)) = min_entry(&m, t, n) else {
            break;
        };
        m.swap(t, pi);
        swap_cols(&mut m, &mut q, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m.len() {
                let c = m[i][t] / m[t][t];
                if c != 0 {
                    for j in t..n {
                        m[i][j] -= c * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let c = m[t][j] / m[t][t];
                if c != 0 {
                    // col_j -= c col_t  <=>  Q row_t += c Q row_j
                    for row in m.iter_mut() {
                        row[j] -= c * row[t];
                    }
                    for k in 0..n {
                        q[t][k] += c * q[j][k];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let (pi, pj) = min_entry(&m, t, n).expect("nonzero remains");
            m.swap(t, pi);
            swap_cols(&mut m, &mut q, t, pj);
        }
        if m[t][t] < 0 {
            for row in m.iter_mut() {
                row[t] = -row[t];
            }
            for x in q[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(m[t][t]);
        t += 1;
    }
    Reduction { diagonal, basis: q }
}

fn min_entry(m: &[Vec<i64>], t: usize, n: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().take(n).skip(t) {
            if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<i64>], q: &mut [Vec<i64>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        q.swap(a, b);
    }
}

/// Exact determinant (Bareiss fraction-free elimination).
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank over GF(2) of rows given as bitsets.
pub fn rank_mod2(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Bitset of an integer vector reduced mod 2 (at most 64 entries).
pub fn to_bits(v: &[i64]) -> u64 {
    v.iter()
        .enumerate()
        .fold(0, |acc, (i, &x)| if x.rem_euclid(2) == 1 { acc | 1 << i } else { acc })
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `x^T G y`.
pub fn bilinear(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi != 0 {
            s += xi * dot(&g[i], y);
        }
    }
    s
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
