//! Dense Chevalley–Eilenberg Betti numbers.

use gerst_core::Scalar;

use super::{rank, zeros, Pivot};

/// Chevalley–Eilenberg complex of a complex Lie algebra viewed as a real one,
/// complexified: generators θ^1..θ^N, θ̄^1..θ̄^N with `dθ^k = −Σ_{i<j} c_ij^k θ^i∧θ^j`.
pub fn ce_betti(n: usize, table: &[(usize, usize, usize)]) -> Vec<usize> {
    let r = 2 * n;
    let mut gen_d: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); r];
    for &(i, j, k) in table {
        for shift in [0, n] {
            gen_d[k + shift].push(((1 << (i + shift)) | (1 << (j + shift)), -Scalar::one()));
        }
    }
    // wedge of a generator word with a basis word, with sign
    let wedge = |a: u32, b: u32| -> Option<(bool, u32)> {
        if a & b != 0 {
            return None;
        }
        let mut swaps = 0;
        for i in 0..r {
            if a & (1 << i) != 0 {
                swaps += (b & ((1 << i) - 1)).count_ones();
            }
        }
        Some((swaps % 2 == 1, a | b))
    };
    let words: Vec<u32> = (0..1u32 << r).collect();
    let d = |w: u32| -> Vec<(u32, Scalar)> {
        let mut out = Vec::new();
        for g in 0..r {
            if w & (1 << g) == 0 {
                continue;
            }
            // w = (sign) before ∧ θ^g ∧ after
            let before = w & ((1 << g) - 1);
            let after = w & !((1 << (g + 1)) - 1);
            let s = if (before.count_ones()) % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            for (dw, c) in &gen_d[g] {
                if let Some((neg1, x)) = wedge(before, *dw) {
                    if let Some((neg2, y)) = wedge(x, after) {
                        let sign = if neg1 ^ neg2 { -Scalar::one() } else { Scalar::one() };
                        out.push((y, &(&s * c) * &sign));
                    }
                }
            }
        }
        out
    };
    let by_deg: Vec<Vec<u32>> = (0..=r).map(|k| words.iter().copied().filter(|w| w.count_ones() as usize == k).collect()).collect();
    let ranks: Vec<usize> = (0..=r)
        .map(|k| {
            if k == r {
                return 0;
            }
            let rows = &by_deg[k + 1];
            let cols = &by_deg[k];
            let mut m = zeros(rows.len(), cols.len());
            for (j, &w) in cols.iter().enumerate() {
                for (t, c) in d(w) {
                    let i = rows.iter().position(|&x| x == t).unwrap();
                    m[i][j] += &c;
                }
            }
            rank(&m, cols.len(), Pivot::LowFirst)
        })
        .collect();
    (0..=r).map(|k| by_deg[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
