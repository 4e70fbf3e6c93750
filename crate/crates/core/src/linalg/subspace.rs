use num_traits::Zero;

use super::{bareiss, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Subspace of `ℚ(i)^ambient`, stored as the nonzero rows of a reduced
/// row-echelon matrix. The representation is canonical, so equal subspaces
/// compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); ambient];
                    v[i] = Scalar::from_int(1);
                    v
                })
                .collect(),
        )
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn check_ambient(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::Config(format!(
                "subspaces of different ambient dimension {} and {}",
                self.ambient, o.ambient
            )));
        }
        Ok(())
    }

    /// Exact membership test by reduction against the echelon basis.
    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &(&f * rj);
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, o: &Subspace) -> Result<bool> {
        self.check_ambient(o)?;
        Ok(o.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check_ambient(o)?;
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, v))
    }

    /// Exact intersection via the kernel of `[A | −B]`; checks
    /// `dim(a∩b) = dim a + dim b − dim(a+b)`.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check_ambient(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let (da, db) = (self.dim(), o.dim());
        let m = Matrix::from_fn(self.ambient, da + db, |i, j| {
            if j < da {
                self.basis[j][i].clone()
            } else {
                -&o.basis[j - da][i]
            }
        });
        let vecs = m
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (j, c) in k[..da].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(&self.basis[j]) {
                        *vi += &(c * bi);
                    }
                }
                v
            })
            .collect();
        let out = Subspace::span(self.ambient, vecs);
        let total = self.sum(o)?.dim();
        assert_eq!(out.dim() + total, da + db, "intersection dimension formula violated");
        Ok(out)
    }

    /// Representatives completing `by` to a basis of `self`. Fails with a
    /// containment error unless `by ⊆ self`.
    pub fn quotient_basis(&self, by: &Subspace) -> Result<Subspace> {
        self.check_ambient(by)?;
        if !self.contains(by)? {
            return Err(Error::Containment(format!(
                "quotient by a {}-dim subspace not contained in the {}-dim numerator",
                by.dim(),
                self.dim()
            )));
        }
        let mut acc = by.clone();
        let mut reps = Vec::new();
        for v in &self.basis {
            if !acc.contains_vector(v) {
                reps.push(v.clone());
                let mut vs = acc.basis.clone();
                vs.push(v.clone());
                acc = Subspace::span(self.ambient, vs);
            }
        }
        let out = Subspace::span(self.ambient, reps);
        debug_assert_eq!(out.dim(), self.dim() - by.dim());
        Ok(out)
    }

    /// Image of the subspace under `op` (`op.cols() == ambient`).
    pub fn image_under(&self, op: &Matrix) -> Subspace {
        assert_eq!(op.cols(), self.ambient, "operator source does not match ambient space");
        Subspace::span(op.rows(), self.basis.iter().map(|v| op.apply(v)).collect())
    }

    /// `{x ∈ self : op·x ∈ target}`.
    pub fn restrict_preimage(&self, op: &Matrix, target: &Subspace) -> Subspace {
        assert_eq!(op.rows(), target.ambient);
        if self.is_zero() {
            return self.clone();
        }
        // Coordinates c with op·(Bc) ∈ target: kill the target-complement part.
        let images: Vec<Vec<Scalar>> = self.basis.iter().map(|v| op.apply(v)).collect();
        let reduced: Vec<Vec<Scalar>> = images.iter().map(|w| target.reduce(w)).collect();
        let m = Matrix::from_columns(op.rows(), &reduced);
        let vecs = m.kernel_basis().into_iter().map(|c| combine(self.ambient, &self.basis, &c)).collect();
        Subspace::span(self.ambient, vecs)
    }

    /// Remainder of `v` after reduction against the echelon basis; zero iff
    /// `v` is in the subspace. Linear in `v`.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &(&f * rj);
                }
            }
        }
        w
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        // Echelon rows have unit pivots with zeros elsewhere in pivot columns.
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }
}

/// `Σ c_j · vectors_j`.
pub fn combine(len: usize, vectors: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

/// Kernel and image of a linear map, with rank–nullity asserted against an
/// independent fraction-free rank.
pub fn kernel_image(op: &Matrix) -> (Subspace, Subspace) {
    let ker = Subspace::span(op.cols(), op.kernel_basis());
    let im = Subspace::span(op.rows(), op.columns());
    assert_eq!(ker.dim() + im.dim(), op.cols(), "rank-nullity violated");
    debug_assert_eq!(im.dim(), bareiss::rank(op));
    (ker, im)
}
