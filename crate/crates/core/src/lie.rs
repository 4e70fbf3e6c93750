//! Lie algebras given by structure constants, the Chevalley–Eilenberg
//! differential and de Rham cohomology.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cohomology::CohomologyGroup;
use crate::error::{Error, Result};
use crate::exterior::{ExteriorAlgebra, FormVector, Monomial};
use crate::linalg::{LinearOperator, Matrix, Piece, Subspace};
use crate::parallel::Strategy;
use crate::scalar::Scalar;

/// Real Lie algebra of even dimension `n = 2m` with brackets
/// `[e_j, e_k] = Σ_l C^l_{jk} e_l`. Only `j < k` is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    pub name: String,
    n: usize,
    // consts[l][j][k] for j < k (0-based)
    consts: Vec<Vec<Vec<BigRational>>>,
}

impl LieAlgebraSpec {
    pub fn new(name: impl Into<String>, n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Config(format!("dimension must be even and positive, got {n}")));
        }
        if n > crate::exterior::MAX_GENERATORS {
            return Err(Error::Config(format!("dimension {n} exceeds the supported maximum")));
        }
        let zero = BigRational::zero();
        Ok(LieAlgebraSpec { name: name.into(), n, consts: vec![vec![vec![zero; n]; n]; n] })
    }

    pub fn abelian(name: impl Into<String>, n: usize) -> Result<Self> {
        LieAlgebraSpec::new(name, n)
    }

    /// Sets `C^l_{jk}` from 1-based indices; `j > k` stores `−c` at `(k, j)`.
    pub fn set_bracket(&mut self, j: usize, k: usize, l: usize, c: BigRational) -> Result<()> {
        let n = self.n;
        if !(1..=n).contains(&j) || !(1..=n).contains(&k) || !(1..=n).contains(&l) {
            return Err(Error::Config(format!("bracket index out of range 1..={n}")));
        }
        if j == k {
            return if c.is_zero() { Ok(()) } else { Err(Error::Validation(format!("[e_{j}, e_{j}] must vanish"))) };
        }
        let (a, b, v) = if j < k { (j, k, c) } else { (k, j, -c) };
        self.consts[l - 1][a - 1][b - 1] = v;
        Ok(())
    }

    /// Builder from `(j, k, l, num, den)` tuples, 1-based.
    pub fn from_brackets(name: &str, n: usize, brackets: &[(usize, usize, usize, i64, i64)]) -> Result<Self> {
        let mut s = LieAlgebraSpec::new(name, n)?;
        for &(j, k, l, num, den) in brackets {
            s.set_bracket(j, k, l, BigRational::new(num.into(), den.into()))?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n / 2
    }

    /// `C^l_{jk}` for 0-based indices, antisymmetric in `(j, k)`.
    pub fn constant(&self, l: usize, j: usize, k: usize) -> BigRational {
        use std::cmp::Ordering::*;
        match j.cmp(&k) {
            Less => self.consts[l][j][k].clone(),
            Greater => -self.consts[l][k][j].clone(),
            Equal => BigRational::zero(),
        }
    }

    /// Nonzero constants as `(j, k, l, c)`, 1-based, `j < k`.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, BigRational)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for k in j + 1..self.n {
                for l in 0..self.n {
                    let c = &self.consts[l][j][k];
                    if !c.is_zero() {
                        out.push((j + 1, k + 1, l + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// Bracket of two vectors given in generator coordinates.
    pub fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.n];
        for j in 0..self.n {
            if x[j].is_zero() {
                continue;
            }
            for k in 0..self.n {
                if y[k].is_zero() || j == k {
                    continue;
                }
                let xy = &x[j] * &y[k];
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.constant(l, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.n];
        v[i] = BigRational::one();
        v
    }

    /// `de^l = −Σ_{j<k} C^l_{jk} e^{jk}` as real forms.
    pub fn one_form_differentials(&self) -> Vec<FormVector> {
        (0..self.n)
            .map(|l| {
                let mut f = FormVector::zero(self.n, 2);
                for j in 0..self.n {
                    for k in j + 1..self.n {
                        let c = &self.consts[l][j][k];
                        if !c.is_zero() {
                            let mono = Monomial::generator(j).union(Monomial::generator(k));
                            f.add_term(mono, Scalar::real(-c.clone()));
                        }
                    }
                }
                f
            })
            .collect()
    }
}

/// Jacobi violations and the equivalent `d² = 0` check on 1-forms.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    /// `(i, j, k)` 1-based with the nonzero cyclic sum as rational strings.
    pub jacobi_violations: Vec<((usize, usize, usize), Vec<String>)>,
    pub d_squared_zero_on_one_forms: bool,
    pub messages: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.jacobi_violations.is_empty() && self.d_squared_zero_on_one_forms && self.messages.is_empty()
    }
}

pub fn validate_lie_algebra(spec: &LieAlgebraSpec) -> ValidationReport {
    let n = spec.dim();
    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (spec.unit(i), spec.unit(j), spec.unit(k));
                let t1 = spec.bracket(&spec.bracket(&ei, &ej), &ek);
                let t2 = spec.bracket(&spec.bracket(&ej, &ek), &ei);
                let t3 = spec.bracket(&spec.bracket(&ek, &ei), &ej);
                let sum: Vec<BigRational> = (0..n).map(|l| &t1[l] + &t2[l] + &t3[l]).collect();
                if sum.iter().any(|v| !v.is_zero()) {
                    report
                        .jacobi_violations
                        .push(((i + 1, j + 1, k + 1), sum.iter().map(crate::scalar::format_rational).collect()));
                }
            }
        }
    }
    let alg = ExteriorAlgebra::new(n);
    let d = derivation_matrices(&alg, &spec.one_form_differentials());
    report.d_squared_zero_on_one_forms = d[2].mul(&d[1]).map(|m| m.is_zero()).unwrap_or(false);
    report
}

/// Matrices `d_k : A^k → A^{k+1}` (`k = 0..=n`, the last one `0 × dim A^n`)
/// of the graded derivation extending the given generator images.
pub(crate) fn derivation_matrices(alg: &ExteriorAlgebra, images: &[FormVector]) -> Vec<Matrix> {
    derivation_matrices_with(alg, images, Strategy::Sequential)
}

pub(crate) fn derivation_matrices_with(
    alg: &ExteriorAlgebra,
    images: &[FormVector],
    strategy: Strategy,
) -> Vec<Matrix> {
    let n = alg.generators();
    strategy.map((0..=n).collect(), |k| {
        let cols: Vec<Vec<Scalar>> =
            alg.basis(k).iter().map(|mono| alg.to_coords(&apply_derivation(n, images, *mono))).collect();
        Matrix::from_columns(alg.dim(k + 1), &cols)
    })
}

/// `d(g_{i1} ∧ … ∧ g_{ik}) = Σ_j (−1)^j g_{i1} ∧ … ∧ dg_{ij} ∧ … ∧ g_{ik}`.
pub(crate) fn apply_derivation(n: usize, images: &[FormVector], mono: Monomial) -> FormVector {
    let idx = mono.indices();
    let mut out = FormVector::zero(n, mono.degree() + 1);
    for (pos, &g) in idx.iter().enumerate() {
        let dg = &images[g];
        if dg.is_zero() {
            continue;
        }
        let prefix = Monomial::from_indices(&idx[..pos]).expect("distinct").0;
        let suffix = Monomial::from_indices(&idx[pos + 1..]).expect("distinct").0;
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        let term = FormVector::monomial(n, prefix, Scalar::from_int(sign))
            .wedge(dg)
            .and_then(|t| t.wedge(&FormVector::monomial(n, suffix, Scalar::one())))
            .expect("same algebra");
        out = out.add(&term).expect("same degree");
    }
    out
}

/// Chevalley–Eilenberg differential, one operator per degree.
#[derive(Clone, Debug)]
pub struct CEDifferential {
    pub algebra: ExteriorAlgebra,
    pub ops: Vec<LinearOperator>,
}

impl CEDifferential {
    pub fn degree(&self, k: usize) -> &LinearOperator {
        &self.ops[k]
    }

    /// `d(form)`.
    pub fn apply(&self, form: &FormVector) -> FormVector {
        let k = form.degree();
        let out = self.ops[k].matrix.apply(&self.algebra.to_coords(form));
        self.algebra.from_coords(k + 1, &out)
    }
}

pub fn ce_differential(spec: &LieAlgebraSpec) -> Result<CEDifferential> {
    ce_differential_with(spec, Strategy::default())
}

pub fn ce_differential_with(spec: &LieAlgebraSpec, strategy: Strategy) -> Result<CEDifferential> {
    let report = validate_lie_algebra(spec);
    if !report.is_valid() {
        return Err(Error::Validation(format!(
            "{} is not a Lie algebra: Jacobi fails on {:?}",
            spec.name,
            report.jacobi_violations.iter().map(|v| v.0).collect::<Vec<_>>()
        )));
    }
    let alg = ExteriorAlgebra::new(spec.dim());
    let mats = derivation_matrices_with(&alg, &spec.one_form_differentials(), strategy);
    for k in 0..spec.dim() {
        assert!(mats[k + 1].mul(&mats[k])?.is_zero(), "d^2 != 0 in degree {k}");
    }
    assert!(mats[spec.dim()].rows() == 0);
    let ops = mats
        .into_iter()
        .enumerate()
        .map(|(k, m)| LinearOperator::new(Piece::Degree(k), Piece::Degree(k + 1), m))
        .collect();
    Ok(CEDifferential { algebra: alg, ops })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unimodularity {
    pub unimodular: bool,
    /// `Tr(ad_{e_j}) = Σ_k C^k_{jk}` as rational strings.
    pub traces: Vec<String>,
    pub d_vanishes_on_top_minus_one: bool,
}

pub fn unimodularity(spec: &LieAlgebraSpec) -> Result<Unimodularity> {
    let n = spec.dim();
    let traces: Vec<BigRational> =
        (0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + spec.constant(k, j, k))).collect();
    let unimodular = traces.iter().all(Zero::is_zero);
    let d = ce_differential(spec)?;
    let top_zero = d.degree(n - 1).is_zero();
    assert_eq!(unimodular, top_zero, "trace criterion disagrees with d on A^(2m-1)");
    Ok(Unimodularity {
        unimodular,
        traces: traces.iter().map(crate::scalar::format_rational).collect(),
        d_vanishes_on_top_minus_one: top_zero,
    })
}

#[derive(Clone, Debug)]
pub struct DeRham {
    pub groups: Vec<CohomologyGroup>,
}

impl DeRham {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti().iter().enumerate().map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum()
    }
}

pub fn de_rham(spec: &LieAlgebraSpec) -> Result<DeRham> {
    let d = ce_differential(spec)?;
    Ok(de_rham_from(&d))
}

pub(crate) fn de_rham_from(d: &CEDifferential) -> DeRham {
    let n = d.algebra.generators();
    let groups = (0..=n)
        .map(|k| {
            let cycles = d.ops[k].kernel_image().0;
            let bounds = if k == 0 { Subspace::zero(d.algebra.dim(0)) } else { d.ops[k - 1].kernel_image().1 };
            CohomologyGroup::from_quotient(Piece::Degree(k), cycles, bounds, |c| d.algebra.from_coords(k, c))
                .expect("boundaries are cycles")
        })
        .collect();
    DeRham { groups }
}
