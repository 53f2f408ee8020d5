//! Integer Smith normal form and finitely generated abelian groups.

use std::fmt;

/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `1 < d₁ | d₂ | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `0`, `Z`, `Z^2`, `Z/2`, `Z+Z/2+Z/4`, ...
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Nonzero diagonal of the Smith normal form of `rows` (each of length
/// `cols`), as positive integers in divisibility order.
pub fn invariant_factors(rows: &[Vec<i64>], cols: usize) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let m = a.len();
    let mut diag = Vec::new();
    for t in 0..m.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..m, t..cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                // a remainder smaller than the pivot is left in row or column t
                let (i, j) = min_abs_cross(&a, t, m, cols);
                a.swap(t, i);
                swap_cols(&mut a, t, j);
                continue;
            }
            let bad = (t + 1..m).find_map(|i| (t + 1..cols).find(|&j| a[i][j] % p != 0).map(|_| i));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
    }
    diag
}

fn swap_cols(a: &mut [Vec<i128>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

fn min_abs_entry(
    a: &[Vec<i128>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a[i][j].abs();
            if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smallest nonzero entry in row `t` or column `t` from the pivot on.
fn min_abs_cross(a: &[Vec<i128>], t: usize, m: usize, cols: usize) -> (usize, usize) {
    let col = (t..m).map(|i| (i, t));
    let row = (t..cols).map(|j| (t, j));
    col.chain(row)
        .filter(|&(i, j)| a[i][j] != 0)
        .min_by_key(|&(i, j)| a[i][j].abs())
        .expect("pivot is nonzero")
}

/// Cokernel of the integer relation matrix: the abelian group generated by
/// `cols` generators subject to the rows.
pub fn abelian_invariants(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
    let factors = invariant_factors(rows, cols);
    AbelianInvariants {
        free_rank: cols - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    /// Fraction-free Bareiss determinant.
    fn det(mut m: Vec<Vec<i128>>) -> i128 {
        let k = m.len();
        let mut sign = 1;
        let mut prev = 1;
        for t in 0..k {
            if m[t][t] == 0 {
                let Some(s) = (t + 1..k).find(|&i| m[i][t] != 0) else {
                    return 0;
                };
                m.swap(t, s);
                sign = -sign;
            }
            for i in t + 1..k {
                for j in t + 1..k {
                    m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) / prev;
                }
            }
            prev = m[t][t];
        }
        sign * m[k - 1][k - 1]
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combinations(n - 1, k);
        for mut c in combinations(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }

    /// Invariant factors from determinantal divisors: `d_k` is the gcd of
    /// all `k×k` minors and `s_k = d_k / d_{k-1}`.
    fn oracle(rows: &[Vec<i64>], cols: usize) -> Vec<u64> {
        let m = rows.len();
        let mut out = Vec::new();
        let mut prev = 1i128;
        for k in 1..=m.min(cols) {
            let mut d = 0i128;
            for rs in combinations(m, k) {
                for cs in combinations(cols, k) {
                    let minor = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| rows[r][c] as i128).collect())
                        .collect();
                    d = gcd(d, det(minor));
                }
            }
            if d == 0 {
                break;
            }
            out.push((d / prev) as u64);
            prev = d;
        }
        out
    }

    #[test]
    fn small_known_groups() {
        assert_eq!(abelian_invariants(&[vec![2]], 1).torsion, vec![2]);
        assert_eq!(abelian_invariants(&[vec![2]], 1).free_rank, 0);
        assert_eq!(abelian_invariants(&[], 2), AbelianInvariants::free(2));
        let g = abelian_invariants(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(g.torsion, vec![6]);
        let g = abelian_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(g.torsion, vec![2, 6, 12]);
        assert_eq!(g.to_string(), "Z/2+Z/6+Z/12");
        assert_eq!(AbelianInvariants::free(2).to_string(), "Z^2");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }

    #[test]
    fn matches_determinantal_divisors_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let m = rng.gen_range(1..=8);
            let n = rng.gen_range(1..=8);
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let got = invariant_factors(&rows, n);
            assert_eq!(got, oracle(&rows, n), "{rows:?}");
            for w in got.windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn low_rank_random_matrices() {
        // products of thin factors have nontrivial torsion and corank
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let (m, k, n) = (rng.gen_range(2..=6), rng.gen_range(1..=3), rng.gen_range(2..=6));
            let a: Vec<Vec<i64>> = (0..m).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|i| (0..n).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
                .collect();
            assert_eq!(invariant_factors(&rows, n), oracle(&rows, n));
        }
    }
}
