//! Almost complex structures, the induced bigrading and the splitting
//! `d = μ + ∂ + ∂̄ + μ̄`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Bigrading, ExteriorAlgebra, FormVector, Monomial};
use crate::lie::{apply_derivation, ce_differential_with, CEDifferential, LieAlgebraSpec};
use crate::linalg::{LinearOperator, Matrix, Piece, Subspace};
use crate::parallel::Strategy;
use crate::scalar::Scalar;

/// `J` on the Lie algebra; column `j` is `J e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlmostComplexStructure {
    matrix: Matrix,
}

impl AlmostComplexStructure {
    /// Wraps a real square matrix. `J² = −Id` is checked by [`validate_acs`].
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || !matrix.rows().is_multiple_of(2) || matrix.rows() == 0 {
            return Err(Error::Config(format!("J must be square of even size, got {:?}", matrix.shape())));
        }
        if !matrix.is_real() {
            return Err(Error::Config("J must have real rational entries".into()));
        }
        Ok(AlmostComplexStructure { matrix })
    }

    /// `J e_a = e_b`, `J e_b = −e_a` for each 1-based pair.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matrix::zeros(n, n);
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::Config(format!("bad J pair ({a}, {b})")));
            }
            m[(b - 1, a - 1)] = Scalar::one();
            m[(a - 1, b - 1)] = Scalar::from_int(-1);
        }
        AlmostComplexStructure::new(m)
    }

    /// `J e_{2j−1} = e_{2j}`.
    pub fn standard(n: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..n / 2).map(|j| (2 * j + 1, 2 * j + 2)).collect();
        AlmostComplexStructure::from_pairs(n, &pairs)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `J` on a vector in generator coordinates.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let s: Vec<Scalar> = v.iter().cloned().map(Scalar::real).collect();
        self.matrix.apply(&s).into_iter().map(|x| x.re).collect()
    }

    /// `e^a ∘ J` as a real 1-form (row `a` of the matrix).
    fn pullback_one_forms(&self) -> Vec<FormVector> {
        let n = self.dim();
        (0..n)
            .map(|a| {
                let mut f = FormVector::zero(n, 1);
                for b in 0..n {
                    f.add_term(Monomial::generator(b), self.matrix[(a, b)].clone());
                }
                f
            })
            .collect()
    }

    /// Matrix of `α ↦ α(J·, …, J·)` on real `k`-forms.
    pub fn form_action(&self, k: usize) -> Matrix {
        let alg = ExteriorAlgebra::new(self.dim());
        substitution_matrix(&alg, &alg, &self.pullback_one_forms(), k)
    }
}

/// Checks of `J² = −Id` and, when a metric is given, `⟨Jx, Jy⟩ = ⟨x, y⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct AcsReport {
    pub dimension_matches: bool,
    pub squares_to_minus_identity: bool,
    pub metric_compatible: Option<bool>,
}

impl AcsReport {
    pub fn is_valid(&self) -> bool {
        self.dimension_matches && self.squares_to_minus_identity && self.metric_compatible != Some(false)
    }
}

pub fn validate_acs(spec: &LieAlgebraSpec, j: &AlmostComplexStructure, metric: Option<&Matrix>) -> AcsReport {
    let dimension_matches = j.dim() == spec.dim();
    let jm = j.matrix();
    let squares_to_minus_identity = jm.mul(jm).map(|sq| sq == Matrix::identity(j.dim()).neg()).unwrap_or(false);
    let metric_compatible = metric.map(|g| {
        g.shape() == jm.shape() && jm.transpose().mul(g).and_then(|x| x.mul(jm)).map(|x| &x == g).unwrap_or(false)
    });
    AcsReport { dimension_matches, squares_to_minus_identity, metric_compatible }
}

fn require_valid(spec: &LieAlgebraSpec, j: &AlmostComplexStructure) -> Result<()> {
    let r = validate_acs(spec, j, None);
    if !r.dimension_matches {
        return Err(Error::Config(format!(
            "J is {}x{} but the algebra has dimension {}",
            j.dim(),
            j.dim(),
            spec.dim()
        )));
    }
    if !r.squares_to_minus_identity {
        return Err(Error::Validation("J does not square to -Id".into()));
    }
    Ok(())
}

/// Image of a form under the algebra map sending generator `j` to `images[j]`.
pub(crate) fn substitute(target_generators: usize, images: &[FormVector], form: &FormVector) -> FormVector {
    let mut out = FormVector::zero(target_generators, form.degree());
    for (mono, c) in form.terms() {
        let mut acc = FormVector::constant(target_generators, c.clone());
        for i in mono.indices() {
            acc = acc.wedge(&images[i]).expect("same algebra");
        }
        out = out.add(&acc).expect("same degree");
    }
    out
}

fn substitution_matrix(src: &ExteriorAlgebra, tgt: &ExteriorAlgebra, images: &[FormVector], k: usize) -> Matrix {
    let cols: Vec<Vec<Scalar>> = src
        .basis(k)
        .iter()
        .map(|mono| {
            let f = FormVector::monomial(src.generators(), *mono, Scalar::one());
            tgt.to_coords(&substitute(tgt.generators(), images, &f))
        })
        .collect();
    Matrix::from_columns(tgt.dim(k), &cols)
}

/// Coframe `φ¹..φᵐ, φ̄¹..φ̄ᵐ` of the complexified dual, with the change of
/// basis to the real coframe `e¹..e^{2m}` in both directions.
#[derive(Clone, Debug)]
pub struct ComplexFrame {
    m: usize,
    /// Row `a` holds `Φ^a` in `e`-coordinates.
    forward: Matrix,
    /// Row `j` holds `e^j` in `Φ`-coordinates.
    inverse: Matrix,
}

impl ComplexFrame {
    fn from_forward(forward: Matrix) -> Result<Self> {
        let inverse = forward.inverse().ok_or_else(|| Error::Validation("complex coframe is not a basis".into()))?;
        let m = forward.rows() / 2;
        Ok(ComplexFrame { m, forward, inverse })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `P` with `Φ^a = Σ_j P[a][j] e^j`.
    pub fn forward(&self) -> &Matrix {
        &self.forward
    }

    /// `Q` with `e^j = Σ_a Q[j][a] Φ^a`.
    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// `φ^a` (0-based, `a < 2m` including conjugates) as a real-coframe form.
    pub fn phi(&self, a: usize) -> FormVector {
        let n = 2 * self.m;
        let mut f = FormVector::zero(n, 1);
        for j in 0..n {
            f.add_term(Monomial::generator(j), self.forward[(a, j)].clone());
        }
        f
    }

    fn phi_images(&self) -> Vec<FormVector> {
        (0..2 * self.m).map(|a| self.phi(a)).collect()
    }

    fn e_images(&self) -> Vec<FormVector> {
        let n = 2 * self.m;
        (0..n)
            .map(|j| {
                let mut f = FormVector::zero(n, 1);
                for a in 0..n {
                    f.add_term(Monomial::generator(a), self.inverse[(j, a)].clone());
                }
                f
            })
            .collect()
    }

    /// Rewrites a form in `e`-monomials as a form in `Φ`-monomials.
    pub fn to_complex(&self, form: &FormVector) -> FormVector {
        substitute(2 * self.m, &self.e_images(), form)
    }

    /// Rewrites a form in `Φ`-monomials as a form in `e`-monomials.
    pub fn to_real(&self, form: &FormVector) -> FormVector {
        substitute(2 * self.m, &self.phi_images(), form)
    }

    /// Columns: `Φ`-coordinates of the real `k`-monomials.
    pub fn to_complex_matrix(&self, k: usize) -> Matrix {
        let alg = ExteriorAlgebra::new(2 * self.m);
        substitution_matrix(&alg, &alg, &self.e_images(), k)
    }

    /// Columns: `e`-coordinates of the complex `k`-monomials.
    pub fn to_real_matrix(&self, k: usize) -> Matrix {
        let alg = ExteriorAlgebra::new(2 * self.m);
        substitution_matrix(&alg, &alg, &self.phi_images(), k)
    }

    /// Vector `Z_a` dual to `Φ^a` (column `a` of `P⁻¹`).
    pub fn dual_vector(&self, a: usize) -> Vec<Scalar> {
        (0..2 * self.m).map(|j| self.inverse[(j, a)].clone()).collect()
    }
}

/// Greedy `(1,0)`-coframe: for `j = 1, 2, …` take `e^j − i·(e^j ∘ J)` when it
/// is independent of those already chosen.
pub fn complex_frame(spec: &LieAlgebraSpec, j: &AlmostComplexStructure) -> Result<ComplexFrame> {
    require_valid(spec, j)?;
    let n = j.dim();
    let m = n / 2;
    let jm = j.matrix();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in 0..n {
        let cand: Vec<Scalar> = (0..n)
            .map(|b| {
                let e = if b == g { Scalar::one() } else { Scalar::zero() };
                e - &(Scalar::i() * &jm[(g, b)])
            })
            .collect();
        let mut trial = rows.clone();
        trial.push(cand.clone());
        if Matrix::from_rows(trial).rank() > rows.len() {
            rows.push(cand);
        }
        if rows.len() == m {
            break;
        }
    }
    assert_eq!(rows.len(), m, "J has a full (1,0)-eigenspace");
    let conj: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(Scalar::conj).collect()).collect();
    rows.extend(conj);
    let frame = ComplexFrame::from_forward(Matrix::from_rows(rows))?;
    // Each φ^a is a +i eigenvector of the transpose action.
    let jt = jm.transpose();
    for a in 0..m {
        let row = frame.forward.row(a).to_vec();
        let lhs = jt.apply(&row);
        let rhs: Vec<Scalar> = row.iter().map(|x| Scalar::i() * x).collect();
        assert_eq!(lhs, rhs, "frame element is not of type (1,0)");
    }
    Ok(frame)
}

/// The four components of `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Component {
    Mu,
    Del,
    DelBar,
    MuBar,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::Mu, Component::Del, Component::DelBar, Component::MuBar];

    /// Bidegree `(a, b)` of the component.
    pub fn shift(self) -> (i64, i64) {
        match self {
            Component::Mu => (2, -1),
            Component::Del => (1, 0),
            Component::DelBar => (0, 1),
            Component::MuBar => (-1, 2),
        }
    }

    pub fn conjugate(self) -> Component {
        match self {
            Component::Mu => Component::MuBar,
            Component::Del => Component::DelBar,
            Component::DelBar => Component::Del,
            Component::MuBar => Component::Mu,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Component::Mu => "μ",
            Component::Del => "∂",
            Component::DelBar => "∂̄",
            Component::MuBar => "μ̄",
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Component::Mu => "mu",
            Component::Del => "del",
            Component::DelBar => "delbar",
            Component::MuBar => "mubar",
        }
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `μ, ∂, ∂̄, μ̄` on every `A^{p,q}` in canonical `Φ`-monomial bases.
#[derive(Clone, Debug)]
pub struct OperatorQuadruple {
    m: usize,
    bigrading: Bigrading,
    frame: ComplexFrame,
    images: Vec<FormVector>,
    // ops[c][p][q]
    ops: Vec<Vec<Vec<LinearOperator>>>,
}

impl OperatorQuadruple {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bigrading(&self) -> &Bigrading {
        &self.bigrading
    }

    pub fn frame(&self) -> &ComplexFrame {
        &self.frame
    }

    /// `dΦ^a` for all `2m` frame elements.
    pub fn differential_images(&self) -> &[FormVector] {
        &self.images
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.bigrading.dim(p, q)
    }

    /// Component `c` on `A^{p,q}`; an empty operator outside the grid.
    pub fn op(&self, c: Component, p: i64, q: i64) -> LinearOperator {
        let (a, b) = c.shift();
        let (src, tgt) = (Piece::Bidegree(p, q), Piece::Bidegree(p + a, q + b));
        if self.dim(p, q) == 0 {
            return LinearOperator::zero(src, tgt, 0, self.dim(p + a, q + b));
        }
        self.ops[c.index()][p as usize][q as usize].clone()
    }

    pub fn matrix(&self, c: Component, p: i64, q: i64) -> Matrix {
        self.op(c, p, q).matrix
    }

    /// Applies a component to a form of pure bidegree.
    pub fn apply(&self, c: Component, form: &FormVector) -> Result<FormVector> {
        let Some((p, q)) = form.bidegree(self.m) else {
            return Ok(FormVector::zero(2 * self.m, form.degree() + 1));
        };
        let (p, q) = (p as i64, q as i64);
        let (a, b) = c.shift();
        let x = self.bigrading.to_coords(p, q, form)?;
        Ok(self.bigrading.from_coords(p + a, q + b, &self.matrix(c, p, q).apply(&x)))
    }

    /// Full `d` on a complex form.
    pub fn d(&self, form: &FormVector) -> FormVector {
        let n = 2 * self.m;
        let mut out = FormVector::zero(n, form.degree() + 1);
        for (mono, c) in form.terms() {
            out = out.add(&apply_derivation(n, &self.images, *mono).scale(c)).expect("same degree");
        }
        out
    }

    pub fn is_integrable(&self) -> bool {
        self.grid().into_iter().all(|(p, q)| self.op(Component::MuBar, p, q).is_zero())
    }

    /// All `(p, q)` with `0 ≤ p, q ≤ m`.
    pub fn grid(&self) -> Vec<(i64, i64)> {
        let m = self.m as i64;
        (0..=m).flat_map(|p| (0..=m).map(move |q| (p, q))).collect()
    }

    /// Copy with one component replaced by zero on every bidegree (test aid).
    pub fn with_component_zeroed(&self, c: Component) -> OperatorQuadruple {
        let mut out = self.clone();
        for row in &mut out.ops[c.index()] {
            for op in row {
                op.matrix = Matrix::zeros(op.matrix.rows(), op.matrix.cols());
            }
        }
        out
    }

    /// `μ̄` on `(p,q)` is the conjugate of `μ` on `(q,p)` under conjugate bases;
    /// likewise `∂̄` and `∂`.
    pub fn conjugation_symmetric(&self) -> bool {
        let n = 2 * self.m;
        self.grid().into_iter().all(|(p, q)| {
            self.bigrading.basis(p, q).iter().all(|mono| {
                let x = FormVector::monomial(n, *mono, Scalar::one());
                Component::ALL.iter().all(|&c| {
                    let lhs = self.apply(c, &x).expect("pure");
                    let rhs = self.apply(c.conjugate(), &x.conjugate()).expect("pure").conjugate();
                    lhs == rhs
                })
            })
        })
    }
}

pub fn decompose_d(spec: &LieAlgebraSpec, j: &AlmostComplexStructure) -> Result<OperatorQuadruple> {
    Ok(AlmostComplexLie::with_strategy(spec.clone(), j.clone(), Strategy::default())?.quad)
}

fn build_quadruple(d: &CEDifferential, frame: ComplexFrame, strategy: Strategy) -> OperatorQuadruple {
    let m = frame.m;
    let n = 2 * m;
    let one_forms: Vec<FormVector> = (0..n).map(|j| d.apply(&FormVector::generator(n, j))).collect();
    // dΦ^a = Σ_j P[a][j] de^j, rewritten in Φ-monomials.
    let images: Vec<FormVector> = (0..n)
        .map(|a| {
            let mut acc = FormVector::zero(n, 2);
            for (j, de) in one_forms.iter().enumerate() {
                let c = &frame.forward[(a, j)];
                if !c.is_zero() && !de.is_zero() {
                    acc = acc.add(&frame.to_complex(de).scale(c)).expect("2-forms");
                }
            }
            acc
        })
        .collect();
    let bigrading = Bigrading::new(m);
    let cells: Vec<(usize, usize)> = (0..=m).flat_map(|p| (0..=m).map(move |q| (p, q))).collect();
    let blocks = strategy.map(cells.clone(), |(p, q)| {
        let (pi, qi) = (p as i64, q as i64);
        let mut cols: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); 4];
        for mono in bigrading.basis(pi, qi) {
            let dx = apply_derivation(n, &images, *mono);
            let parts = dx.bigraded_parts(m);
            for c in Component::ALL {
                let (a, b) = c.shift();
                let (tp, tq) = (pi + a, qi + b);
                let col = match parts.get(&(tp.max(0) as usize, tq.max(0) as usize)) {
                    Some(f) if tp >= 0 && tq >= 0 => bigrading.to_coords(tp, tq, f).expect("pure part"),
                    _ => vec![Scalar::zero(); bigrading.dim(tp, tq)],
                };
                cols[c.index()].push(col);
            }
            let allowed: Vec<(usize, usize)> = Component::ALL
                .iter()
                .filter_map(|c| {
                    let (a, b) = c.shift();
                    let (tp, tq) = (pi + a, qi + b);
                    (tp >= 0 && tq >= 0).then_some((tp as usize, tq as usize))
                })
                .collect();
            assert!(parts.keys().all(|k| allowed.contains(k)), "d left the four admissible bidegrees");
        }
        Component::ALL
            .iter()
            .map(|&c| {
                let (a, b) = c.shift();
                let tgt_dim = bigrading.dim(pi + a, qi + b);
                LinearOperator::new(
                    Piece::Bidegree(pi, qi),
                    Piece::Bidegree(pi + a, qi + b),
                    Matrix::from_columns(tgt_dim, &cols[c.index()]),
                )
            })
            .collect::<Vec<_>>()
    });
    let mut ops: Vec<Vec<Vec<LinearOperator>>> = vec![vec![Vec::with_capacity(m + 1); m + 1]; 4];
    for ((p, _q), block) in cells.into_iter().zip(blocks) {
        for (ci, op) in block.into_iter().enumerate() {
            ops[ci][p].push(op);
        }
    }
    OperatorQuadruple { m, bigrading, frame, images, ops }
}

/// Lie algebra, almost complex structure, real differential and the
/// complex quadruple, built and cross-checked together.
#[derive(Clone, Debug)]
pub struct AlmostComplexLie {
    pub spec: LieAlgebraSpec,
    pub j: AlmostComplexStructure,
    pub d: CEDifferential,
    pub quad: OperatorQuadruple,
}

impl AlmostComplexLie {
    pub fn new(spec: LieAlgebraSpec, j: AlmostComplexStructure) -> Result<Self> {
        AlmostComplexLie::with_strategy(spec, j, Strategy::default())
    }

    pub fn with_strategy(spec: LieAlgebraSpec, j: AlmostComplexStructure, strategy: Strategy) -> Result<Self> {
        require_valid(&spec, &j)?;
        let d = ce_differential_with(&spec, strategy)?;
        let frame = complex_frame(&spec, &j)?;
        let quad = build_quadruple(&d, frame, strategy);
        let out = AlmostComplexLie { spec, j, d, quad };
        assert!(out.reassembly_holds(), "μ + ∂ + ∂̄ + μ̄ differs from d");
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    /// Regraded `μ + ∂ + ∂̄ + μ̄` equals the real differential transported to
    /// the complex frame, `T_{k+1} d_k T_k⁻¹`, in every degree.
    pub fn reassembly_holds(&self) -> bool {
        let n = self.spec.dim();
        let alg = ExteriorAlgebra::new(n);
        let frame = &self.quad.frame;
        (0..n).all(|k| {
            let t_k = frame.to_real_matrix(k);
            let t_k1 = frame.to_complex_matrix(k + 1);
            let transported = t_k1.mul(&self.d.ops[k].matrix).and_then(|x| x.mul(&t_k)).expect("shapes");
            let mut assembled = Matrix::zeros(alg.dim(k + 1), alg.dim(k));
            for (col, mono) in alg.basis(k).iter().enumerate() {
                let x = FormVector::monomial(n, *mono, Scalar::one());
                for c in Component::ALL {
                    let y = self.quad.apply(c, &x).expect("pure");
                    for (tm, v) in y.terms() {
                        assembled[(alg.position(*tm), col)] += v;
                    }
                }
            }
            assembled == transported
        })
    }

    /// `N(e_j, e_k) = [Je_j, Je_k] − [e_j, e_k] − J[Je_j, e_k] − J[e_j, Je_k]`
    /// on all generator pairs.
    pub fn nijenhuis_vanishes(&self) -> bool {
        let n = self.spec.dim();
        let unit = |i: usize| -> Vec<BigRational> {
            (0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }).collect()
        };
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (unit(a), unit(b));
                let (jx, jy) = (self.j.apply(&x), self.j.apply(&y));
                let t1 = self.spec.bracket(&jx, &jy);
                let t2 = self.spec.bracket(&x, &y);
                let t3 = self.j.apply(&self.spec.bracket(&jx, &y));
                let t4 = self.j.apply(&self.spec.bracket(&x, &jy));
                if (0..n).any(|l| !(&t1[l] - &t2[l] - &t3[l] - &t4[l]).is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// `μ̄ ≡ 0`, asserted to agree with the Nijenhuis criterion.
    pub fn is_integrable(&self) -> bool {
        let by_mu_bar = self.quad.is_integrable();
        assert_eq!(by_mu_bar, self.nijenhuis_vanishes(), "integrability criteria disagree");
        by_mu_bar
    }
}

pub fn is_integrable(spec: &LieAlgebraSpec, j: &AlmostComplexStructure) -> Result<bool> {
    Ok(AlmostComplexLie::new(spec.clone(), j.clone())?.is_integrable())
}

/// One of the seven identities obtained from `d² = 0` by bidegree.
pub struct Relation {
    pub name: &'static str,
    /// `(outer, inner)` pairs; the identity is `Σ outer ∘ inner = 0`.
    pub terms: &'static [(Component, Component)],
}

use Component::{Del, DelBar, Mu, MuBar};

pub const RELATIONS: [Relation; 7] = [
    Relation { name: "μ² = 0", terms: &[(Mu, Mu)] },
    Relation { name: "μ∂ + ∂μ = 0", terms: &[(Mu, Del), (Del, Mu)] },
    Relation { name: "μ∂̄ + ∂² + ∂̄μ = 0", terms: &[(Mu, DelBar), (Del, Del), (DelBar, Mu)] },
    Relation {
        name: "μμ̄ + ∂∂̄ + ∂̄∂ + μ̄μ = 0", terms: &[(Mu, MuBar), (Del, DelBar), (DelBar, Del), (MuBar, Mu)]
    },
    Relation { name: "μ̄∂ + ∂μ̄ + ∂̄² = 0", terms: &[(MuBar, Del), (Del, MuBar), (DelBar, DelBar)] },
    Relation { name: "μ̄∂̄ + ∂̄μ̄ = 0", terms: &[(MuBar, DelBar), (DelBar, MuBar)] },
    Relation { name: "μ̄² = 0", terms: &[(MuBar, MuBar)] },
];

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    /// `(relation, p, q)` where the identity fails on `A^{p,q}`.
    pub violations: Vec<(String, i64, i64)>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Σ outer ∘ inner` on `A^{p,q}`.
pub fn relation_matrix(quad: &OperatorQuadruple, rel: &Relation, p: i64, q: i64) -> Matrix {
    let mut acc: Option<Matrix> = None;
    for &(outer, inner) in rel.terms {
        let (a, b) = inner.shift();
        let prod = quad.matrix(outer, p + a, q + b).mul(&quad.matrix(inner, p, q)).expect("composable");
        acc = Some(match acc {
            None => prod,
            Some(x) => x.add(&prod).expect("same shape"),
        });
    }
    acc.expect("relations are nonempty")
}

pub fn verify_square_zero_relations(quad: &OperatorQuadruple) -> RelationReport {
    let mut report = RelationReport::default();
    for rel in &RELATIONS {
        for (p, q) in quad.grid() {
            report.checked += 1;
            if !relation_matrix(quad, rel, p, q).is_zero() {
                report.violations.push((rel.name.to_string(), p, q));
            }
        }
    }
    report
}

/// `½(1 ± J)` on real 2-forms.
#[derive(Clone, Debug)]
pub struct TwoFormSplit {
    pub action: Matrix,
    pub plus: Matrix,
    pub minus: Matrix,
    pub plus_space: Subspace,
    pub minus_space: Subspace,
}

pub fn two_form_split(spec: &LieAlgebraSpec, j: &AlmostComplexStructure) -> Result<TwoFormSplit> {
    let frame = complex_frame(spec, j)?;
    let n = j.dim();
    let m = n / 2;
    let action = j.form_action(2);
    let id = Matrix::identity(action.rows());
    let half = Scalar::ratio(1, 2);
    let plus = id.add(&action)?.scale(&half);
    let minus = id.sub(&action)?.scale(&half);
    assert!(action.mul(&action)? == id, "J acts as an involution on 2-forms");
    assert!(plus.mul(&plus)? == plus && minus.mul(&minus)? == minus);
    let plus_space = plus.kernel_image_image();
    let minus_space = minus.kernel_image_image();
    assert_eq!(plus_space.dim(), m * m);
    assert_eq!(minus_space.dim(), m * (m - 1));
    let alg = ExteriorAlgebra::new(n);
    let types = |s: &Subspace, ok: &dyn Fn((usize, usize)) -> bool| {
        s.basis().iter().all(|v| {
            let c = frame.to_complex(&alg.from_coords(2, v));
            let pure = c.terms().all(|(mono, _)| ok(mono.bidegree(m)));
            pure
        })
    };
    assert!(types(&plus_space, &|b| b == (1, 1)), "A+ is not of type (1,1)");
    assert!(types(&minus_space, &|b| b != (1, 1)), "A- meets type (1,1)");
    Ok(TwoFormSplit { action, plus, minus, plus_space, minus_space })
}

trait ImageSpace {
    fn kernel_image_image(&self) -> Subspace;
}

impl ImageSpace for Matrix {
    fn kernel_image_image(&self) -> Subspace {
        crate::linalg::kernel_image(self).1
    }
}

/// Deformation `J' = (Id + L) J (Id + L)⁻¹` with `ψ = ½(L − iJL)`.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub structure: AlmostComplexStructure,
    pub l: Matrix,
    pub psi: Matrix,
    /// `ψ^i_j = φ^i(ψ Z̄_j)` in the frame of the undeformed `J`.
    pub psi_components: Matrix,
}

pub fn deform(spec: &LieAlgebraSpec, j: &AlmostComplexStructure, l: &Matrix) -> Result<Deformation> {
    let jm = j.matrix();
    if l.shape() != jm.shape() || !l.is_real() {
        return Err(Error::Config("L must be a real matrix of the same size as J".into()));
    }
    if !l.mul(jm)?.add(&jm.mul(l)?)?.is_zero() {
        return Err(Error::Precondition("LJ + JL != 0".into()));
    }
    let n = j.dim();
    let s = Matrix::identity(n).add(l)?;
    let s_inv = s.inverse().ok_or_else(|| Error::DegenerateDeformation("Id + L is singular".into()))?;
    let jp = s.mul(jm)?.mul(&s_inv)?;
    assert!(jp.mul(&jp)? == Matrix::identity(n).neg(), "deformed J must square to -Id");
    let structure = AlmostComplexStructure::new(jp)?;
    let half = Scalar::ratio(1, 2);
    let psi = l.sub(&jm.mul(l)?.scale(&Scalar::i()))?.scale(&half);
    assert!(psi.add(&psi.conj())? == *l, "ψ + ψ̄ reproduces L");
    let frame = complex_frame(spec, j)?;
    let m = n / 2;
    for a in 0..m {
        assert!(psi.apply(&frame.dual_vector(a)).iter().all(Zero::is_zero), "ψ kills (1,0)-vectors");
    }
    let psi_components = Matrix::from_fn(m, m, |i, jj| {
        let v = psi.apply(&frame.dual_vector(m + jj));
        frame.forward.row(i).iter().zip(&v).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
    });
    Ok(Deformation { structure, l: l.clone(), psi, psi_components })
}

/// `L = [[A, B], [PBP, −PAP]]` with `P` the 2×2 swap, in generator order.
pub fn block_deformation(a: [[BigRational; 2]; 2], b: [[BigRational; 2]; 2]) -> Matrix {
    let r = |x: &BigRational| Scalar::real(x.clone());
    let swap = |i: usize| 1 - i;
    Matrix::from_fn(4, 4, |i, jj| match (i < 2, jj < 2) {
        (true, true) => r(&a[i][jj]),
        (true, false) => r(&b[i][jj - 2]),
        (false, false) => -r(&a[swap(i - 2)][swap(jj - 2)]),
        (false, true) => r(&b[swap(i - 2)][swap(jj)]),
    })
}
