//! Brute-force staircase dimensions, kept apart from the library solver. It
//! rebuilds the complex differential from the real one and the coframe,
//! slices it by bidegree itself, and uses its own fraction-free rank.

use acs_cohomology::acs::AlmostComplexLie;
use acs_cohomology::{ExteriorAlgebra, Scalar};
use num_traits::Zero;

/// Rank by Bareiss elimination. Over a field the divisions are exact.
pub fn bareiss_rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Scalar::from_int(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = Scalar::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub struct Staircase {
    m: i64,
    alg: ExteriorAlgebra,
    /// `d` on complex `k`-monomials, dense.
    d: Vec<Vec<Vec<Scalar>>>,
}

impl Staircase {
    pub fn new(acl: &AlmostComplexLie) -> Self {
        let n = acl.spec.dim();
        let frame = &acl.quad.frame();
        let d = (0..n)
            .map(|k| {
                let real = &acl.d.ops[k].matrix;
                let to_c = frame.to_complex_matrix(k + 1);
                let to_r = frame.to_real_matrix(k);
                to_c.mul(real).unwrap().mul(&to_r).unwrap().row_vecs()
            })
            .collect();
        Staircase { m: (n / 2) as i64, alg: ExteriorAlgebra::new(n), d }
    }

    fn positions(&self, p: i64, q: i64) -> Vec<usize> {
        if p < 0 || q < 0 || p > self.m || q > self.m {
            return Vec::new();
        }
        let m = self.m as usize;
        self.alg
            .basis((p + q) as usize)
            .iter()
            .enumerate()
            .filter(|(_, mono)| mono.bidegree(m) == (p as usize, q as usize))
            .map(|(i, _)| i)
            .collect()
    }

    /// Component `i` of the staircase order (μ̄, ∂̄, ∂, μ) on `A^{p,q}`;
    /// rows index the target `(p+i−1, q+2−i)`.
    fn component(&self, i: i64, p: i64, q: i64) -> Vec<Vec<Scalar>> {
        let src = self.positions(p, q);
        let tgt = self.positions(p + i - 1, q + 2 - i);
        let k = (p + q) as usize;
        tgt.iter().map(|&r| src.iter().map(|&c| self.d[k][r][c].clone()).collect()).collect()
    }

    /// Dense block matrix; `blocks[row][col]` is `Some(i)` for component `i`.
    fn assemble(
        &self,
        rows: &[(i64, i64)],
        cols: &[(i64, i64)],
        block: impl Fn(usize, usize) -> Option<i64>,
    ) -> Vec<Vec<Scalar>> {
        let rdim: Vec<usize> = rows.iter().map(|&(p, q)| self.positions(p, q).len()).collect();
        let cdim: Vec<usize> = cols.iter().map(|&(p, q)| self.positions(p, q).len()).collect();
        let width: usize = cdim.iter().sum();
        let mut out = Vec::new();
        for (bi, &rd) in rdim.iter().enumerate() {
            let mut band = vec![vec![Scalar::zero(); width]; rd];
            let mut off = 0;
            for (bj, &cd) in cdim.iter().enumerate() {
                if let Some(i) = block(bi, bj) {
                    let (p, q) = cols[bj];
                    let comp = self.component(i, p, q);
                    for (r, row) in comp.iter().enumerate() {
                        for (c, v) in row.iter().enumerate() {
                            band[r][off + c] = v.clone();
                        }
                    }
                }
                off += cd;
            }
            out.extend(band);
        }
        out
    }

    fn drop_columns(a: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
        a.iter().map(|r| r[n..].to_vec()).collect()
    }

    /// `α⁰` admitting `α¹..α^r` with `Σ_i D_i α^{l−i} = 0` for `l = 0..r`.
    pub fn x_dim(&self, p: i64, q: i64, r: usize) -> usize {
        let r = r as i64;
        let cols: Vec<(i64, i64)> = (0..=r).map(|i| (p + i, q - i)).collect();
        let rows: Vec<(i64, i64)> = (0..=r).map(|l| (p + l - 1, q - l + 2)).collect();
        let a = self.assemble(&rows, &cols, |l, k| {
            let i = l as i64 - k as i64;
            (0..=3).contains(&i).then_some(i)
        });
        let n0 = self.positions(p, q).len();
        let full = bareiss_rank(a.clone());
        let tail = bareiss_rank(Self::drop_columns(&a, n0));
        n0 + tail - full
    }

    /// Images `Σ_i D_i y_{−i}` over `y` with `Σ_i D_i y_{−(l+i)} = 0`, `l = 1..r`.
    pub fn y_dim(&self, p: i64, q: i64, r: usize) -> usize {
        let r = r as i64;
        let cols: Vec<(i64, i64)> = (0..=r).map(|j| (p - j + 1, q + j - 2)).collect();
        let rows: Vec<(i64, i64)> = (1..=r).map(|l| (p - l, q + l)).collect();
        let constraints = self.assemble(&rows, &cols, |l, j| {
            let i = j as i64 - (l as i64 + 1);
            (0..=3).contains(&i).then_some(i)
        });
        let eta = self.assemble(&[(p, q)], &cols, |_, j| (j <= 3).then_some(j as i64));
        let c = bareiss_rank(constraints.clone());
        let mut stacked = constraints;
        stacked.extend(eta);
        bareiss_rank(stacked) - c
    }
}
