//! Pages `E_r^{p,q} = X_r^{p,q} / Y_r^{p,q}` of the spectral sequence,
//! with `X` and `Y` given by explicit staircase systems.
//!
//! `X_r^{p,q}`: leading terms `α⁰ ∈ A^{p,q}` of tuples `α^i ∈ A^{p+i,q−i}`,
//! `i = 0..=r`, with `Σ_i D_i α^{l−i} = 0` for `l = 0..=r`, where
//! `(D_0, D_1, D_2, D_3) = (μ̄, ∂̄, ∂, μ)`.
//!
//! `Y_r^{p,q}`: values `μ̄y₀ + ∂̄y₋₁ + ∂y₋₂ + μy₋₃` over tuples
//! `y₋ⱼ ∈ A^{p−j+1,q+j−2}`, `j = 0..=r`, with
//! `μ̄y₋ₗ + ∂̄y₋ₗ₋₁ + ∂y₋ₗ₋₂ + μy₋ₗ₋₃ = 0` for `l = 1..=r`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::acs::{Component, OperatorQuadruple};
use crate::error::{Error, Result};
use crate::exterior::{ExteriorAlgebra, FormVector};
use crate::linalg::{kernel_image, Matrix, Subspace};
use crate::parallel::Strategy;
use crate::scalar::Scalar;

/// Order in which the components act along the staircase.
pub const STAIRCASE: [Component; 4] = [Component::MuBar, Component::DelBar, Component::Del, Component::Mu];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WitnessKind {
    X,
    Y,
}

#[derive(Clone, Debug)]
pub struct WitnessSpace {
    pub p: i64,
    pub q: i64,
    pub r: usize,
    pub kind: WitnessKind,
    pub space: Subspace,
}

/// Block matrix over concatenated pieces: `rows[i]` and `cols[j]` are the
/// bidegrees of the row and column blocks.
struct BlockSystem<'a> {
    quad: &'a OperatorQuadruple,
    col_pieces: Vec<(i64, i64)>,
    col_offsets: Vec<usize>,
    row_pieces: Vec<(i64, i64)>,
    row_offsets: Vec<usize>,
    matrix: Matrix,
}

fn offsets(quad: &OperatorQuadruple, pieces: &[(i64, i64)]) -> Vec<usize> {
    let mut out = Vec::with_capacity(pieces.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &(p, q) in pieces {
        acc += quad.dim(p, q);
        out.push(acc);
    }
    out
}

impl<'a> BlockSystem<'a> {
    fn new(quad: &'a OperatorQuadruple, col_pieces: Vec<(i64, i64)>, row_pieces: Vec<(i64, i64)>) -> Self {
        let col_offsets = offsets(quad, &col_pieces);
        let row_offsets = offsets(quad, &row_pieces);
        let matrix = Matrix::zeros(*row_offsets.last().unwrap(), *col_offsets.last().unwrap());
        BlockSystem { quad, col_pieces, col_offsets, row_pieces, row_offsets, matrix }
    }

    /// Adds component `c` acting from column block `j` into row block `i`.
    fn place(&mut self, i: usize, j: usize, c: Component) {
        let (p, q) = self.col_pieces[j];
        let (a, b) = c.shift();
        debug_assert_eq!(self.row_pieces[i], (p + a, q + b));
        let block = self.quad.matrix(c, p, q);
        if block.rows() == 0 || block.cols() == 0 {
            return;
        }
        self.matrix.set_block(self.row_offsets[i], self.col_offsets[j], &block);
    }

    fn cols_of(&self, j: usize) -> std::ops::Range<usize> {
        self.col_offsets[j]..self.col_offsets[j + 1]
    }
}

fn project(v: &[Scalar], range: std::ops::Range<usize>) -> Vec<Scalar> {
    v[range].to_vec()
}

/// Solves the `X` staircase; returns the kernel of the block system together
/// with the system (for witness extraction).
fn x_system(quad: &OperatorQuadruple, p: i64, q: i64, r: usize) -> (Vec<Vec<Scalar>>, Vec<std::ops::Range<usize>>) {
    let r = r as i64;
    let cols: Vec<(i64, i64)> = (0..=r).map(|i| (p + i, q - i)).collect();
    let rows: Vec<(i64, i64)> = (0..=r).map(|l| (p + l - 1, q - l + 2)).collect();
    let mut sys = BlockSystem::new(quad, cols, rows);
    for l in 0..=r {
        for (i, &c) in STAIRCASE.iter().enumerate() {
            let idx = l - i as i64;
            if idx >= 0 {
                sys.place(l as usize, idx as usize, c);
            }
        }
    }
    let ranges = (0..=r as usize).map(|j| sys.cols_of(j)).collect();
    (sys.matrix.kernel_basis(), ranges)
}

pub fn x_space(quad: &OperatorQuadruple, p: i64, q: i64, r: usize) -> WitnessSpace {
    assert!(r >= 1, "pages start at r = 1");
    let (ker, ranges) = x_system(quad, p, q, r);
    let lead = ranges[0].clone();
    let space = Subspace::span(quad.dim(p, q), ker.iter().map(|v| project(v, lead.clone())).collect());
    WitnessSpace { p, q, r, kind: WitnessKind::X, space }
}

pub fn y_space(quad: &OperatorQuadruple, p: i64, q: i64, r: usize) -> WitnessSpace {
    assert!(r >= 1, "pages start at r = 1");
    let ri = r as i64;
    // Column block j holds y_{−j} ∈ A^{p−j+1, q+j−2}.
    let cols: Vec<(i64, i64)> = (0..=ri).map(|j| (p - j + 1, q + j - 2)).collect();
    // Row 0 is the output η ∈ A^{p,q}; row l ≥ 1 the constraint in A^{p−l,q+l}.
    let rows: Vec<(i64, i64)> = (0..=ri).map(|l| (p - l, q + l)).collect();
    let mut sys = BlockSystem::new(quad, cols, rows);
    for l in 0..=ri {
        for (i, &c) in STAIRCASE.iter().enumerate() {
            let j = l + i as i64;
            if j <= ri {
                sys.place(l as usize, j as usize, c);
            }
        }
    }
    let out_rows = sys.row_offsets[0]..sys.row_offsets[1];
    let n_out = out_rows.len();
    let total_cols = sys.matrix.cols();
    let constraint = sys.matrix.submatrix(sys.row_offsets[1]..sys.matrix.rows(), 0..total_cols);
    let output = sys.matrix.submatrix(out_rows, 0..total_cols);
    let free = Subspace::span(total_cols, constraint.kernel_basis());
    let space = free.image_under(&output);
    debug_assert_eq!(space.ambient(), n_out);
    WitnessSpace { p, q, r, kind: WitnessKind::Y, space }
}

/// One cell of a page.
#[derive(Clone, Debug)]
pub struct PageCell {
    pub dim: usize,
    pub x: Subspace,
    pub y: Subspace,
    pub representatives: Vec<FormVector>,
}

#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    pub m: usize,
    pub cells: BTreeMap<(i64, i64), PageCell>,
}

impl SpectralPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, |c| c.dim)
    }

    /// Rows from `q = m` down to `q = 0`, each listing `p = 0..=m`.
    pub fn rows_top_down(&self) -> Vec<Vec<usize>> {
        let m = self.m as i64;
        (0..=m).rev().map(|q| (0..=m).map(|p| self.dim(p, q)).collect()).collect()
    }

    /// `Σ_{p+q=k} dim E^{p,q}` for `k = 0..=2m`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; 2 * self.m + 1];
        for (&(p, q), c) in &self.cells {
            out[(p + q) as usize] += c.dim;
        }
        out
    }

    pub fn same_dims(&self, o: &SpectralPage) -> bool {
        self.rows_top_down() == o.rows_top_down()
    }
}

/// Memoized witness spaces for one quadruple.
pub struct SpectralSequence<'a> {
    quad: &'a OperatorQuadruple,
    strategy: Strategy,
    cache: Mutex<HashMap<(WitnessKind, i64, i64, usize), Subspace>>,
}

impl<'a> SpectralSequence<'a> {
    pub fn new(quad: &'a OperatorQuadruple) -> Self {
        SpectralSequence::with_strategy(quad, Strategy::default())
    }

    pub fn with_strategy(quad: &'a OperatorQuadruple, strategy: Strategy) -> Self {
        SpectralSequence { quad, strategy, cache: Mutex::new(HashMap::new()) }
    }

    pub fn quad(&self) -> &OperatorQuadruple {
        self.quad
    }

    fn cached(&self, kind: WitnessKind, p: i64, q: i64, r: usize) -> Subspace {
        let key = (kind, p, q, r);
        if let Some(s) = self.cache.lock().expect("cache poisoned").get(&key) {
            return s.clone();
        }
        let s = match kind {
            WitnessKind::X => x_space(self.quad, p, q, r).space,
            WitnessKind::Y => y_space(self.quad, p, q, r).space,
        };
        self.cache.lock().expect("cache poisoned").entry(key).or_insert(s).clone()
    }

    pub fn x(&self, p: i64, q: i64, r: usize) -> Subspace {
        self.cached(WitnessKind::X, p, q, r)
    }

    pub fn y(&self, p: i64, q: i64, r: usize) -> Subspace {
        self.cached(WitnessKind::Y, p, q, r)
    }

    pub fn cell(&self, p: i64, q: i64, r: usize) -> Result<PageCell> {
        let x = self.x(p, q, r);
        let y = self.y(p, q, r);
        if !x.contains(&y)? {
            return Err(Error::Containment(format!("Y_{r}^({p},{q}) is not inside X_{r}^({p},{q})")));
        }
        let reps = x.quotient_basis(&y)?;
        let bg = self.quad.bigrading();
        let representatives = reps.basis().iter().map(|v| bg.from_coords(p, q, v)).collect();
        Ok(PageCell { dim: reps.dim(), x, y, representatives })
    }

    pub fn page(&self, r: usize) -> Result<SpectralPage> {
        let grid = self.quad.grid();
        let cells = self.strategy.map(grid.clone(), |(p, q)| self.cell(p, q, r));
        let mut out = BTreeMap::new();
        for (pq, c) in grid.into_iter().zip(cells) {
            out.insert(pq, c?);
        }
        Ok(SpectralPage { r, m: self.quad.m(), cells: out })
    }

    /// Pages `1..=m+1`; the last one is `E_∞`.
    pub fn pages(&self) -> Result<Vec<SpectralPage>> {
        (1..=self.quad.m() + 1).map(|r| self.page(r)).collect()
    }

    pub fn e_infinity(&self) -> Result<Degeneration> {
        let pages = self.pages()?;
        let last = pages.last().expect("m >= 1").clone();
        let stage = pages.iter().position(|pg| pg.same_dims(&last)).expect("last page matches itself") + 1;
        let betti = complex_betti(self.quad);
        assert_eq!(last.totals(), betti, "E_∞ does not add up to the Betti numbers");
        Ok(Degeneration { stage, betti, pages })
    }

    /// `d₁[α] = [∂α − ∂̄φ]` for a witness `φ` with `∂̄α = μ̄φ`, in coordinates
    /// of `A^{p+1,q}`. `which` selects among kernel witnesses (test aid).
    pub fn d1_value(&self, p: i64, q: i64, alpha: &[Scalar], which: usize) -> Option<Vec<Scalar>> {
        let quad = self.quad;
        if !quad.matrix(Component::MuBar, p, q).apply(alpha).iter().all(num_traits::Zero::is_zero) {
            return None;
        }
        let dbar_alpha = quad.matrix(Component::DelBar, p, q).apply(alpha);
        let mubar = quad.matrix(Component::MuBar, p + 1, q - 1);
        let phi0 = if mubar.cols() == 0 {
            if dbar_alpha.iter().all(num_traits::Zero::is_zero) {
                Vec::new()
            } else {
                return None;
            }
        } else {
            mubar.solve(&dbar_alpha)?
        };
        // Add a kernel element of μ̄ to get a different witness.
        let ker = mubar.kernel_basis();
        let phi = if which == 0 || ker.is_empty() {
            phi0
        } else {
            let k = &ker[(which - 1) % ker.len()];
            phi0.iter().zip(k).map(|(a, b)| a + &(Scalar::from_int(which as i64) * b)).collect()
        };
        let del_alpha = quad.matrix(Component::Del, p, q).apply(alpha);
        let dbar_phi = if phi.is_empty() {
            vec![Scalar::from_int(0); del_alpha.len()]
        } else {
            quad.matrix(Component::DelBar, p + 1, q - 1).apply(&phi)
        };
        Some(del_alpha.iter().zip(&dbar_phi).map(|(a, b)| a - b).collect())
    }
}

/// Outcome of running the sequence to `E_∞ = E_{m+1}`.
#[derive(Clone, Debug)]
pub struct Degeneration {
    pub stage: usize,
    pub betti: Vec<usize>,
    pub pages: Vec<SpectralPage>,
}

impl Degeneration {
    pub fn infinity(&self) -> &SpectralPage {
        self.pages.last().expect("nonempty")
    }

    pub fn page(&self, r: usize) -> &SpectralPage {
        &self.pages[r.min(self.pages.len()) - 1]
    }
}

pub fn page(quad: &OperatorQuadruple, r: usize) -> Result<SpectralPage> {
    SpectralSequence::new(quad).page(r)
}

pub fn e_infinity(quad: &OperatorQuadruple) -> Result<Degeneration> {
    SpectralSequence::new(quad).e_infinity()
}

/// Betti numbers of the complexified complex, from `μ + ∂ + ∂̄ + μ̄`.
pub fn complex_betti(quad: &OperatorQuadruple) -> Vec<usize> {
    let n = 2 * quad.m();
    let alg = ExteriorAlgebra::new(n);
    let total = |k: usize| -> Matrix {
        let cols: Vec<Vec<Scalar>> = alg
            .basis(k)
            .iter()
            .map(|mono| alg.to_coords(&quad.d(&FormVector::monomial(n, *mono, Scalar::from_int(1)))))
            .collect();
        Matrix::from_columns(alg.dim(k + 1), &cols)
    };
    let ranks: Vec<usize> = (0..=n).map(|k| kernel_image(&total(k)).1.dim()).collect();
    (0..=n).map(|k| alg.dim(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FrolicherReport {
    pub betti: Vec<usize>,
    pub hodge_sums: Vec<usize>,
    /// `Σ h^{p,q} − b^k` per degree.
    pub slack: Vec<i64>,
    pub euler_from_betti: i64,
    pub euler_from_hodge: i64,
}

impl FrolicherReport {
    pub fn holds(&self) -> bool {
        self.slack.iter().all(|&s| s >= 0) && self.euler_from_betti == self.euler_from_hodge
    }
}

/// `b^k ≤ Σ_{p+q=k} h^{p,q}` and `χ = Σ (−1)^{p+q} h^{p,q}`.
pub fn frolicher_check(betti: &[usize], page1: &SpectralPage) -> FrolicherReport {
    let hodge_sums = page1.totals();
    let slack = betti.iter().zip(&hodge_sums).map(|(&b, &h)| h as i64 - b as i64).collect();
    let alt = |v: &[usize]| v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    FrolicherReport {
        betti: betti.to_vec(),
        euler_from_betti: alt(betti),
        euler_from_hodge: alt(&hodge_sums),
        hodge_sums,
        slack,
    }
}
