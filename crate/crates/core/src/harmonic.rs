//! Metrics, the Hodge star, formal adjoints, Laplacians, μ̄-harmonic forms,
//! the operator `∂̄_μ̄` and Serre duality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::acs::{AlmostComplexLie, Component, OperatorQuadruple};
use crate::error::{Error, Result};
use crate::exterior::{ExteriorAlgebra, FormVector, Monomial};
use crate::linalg::{bareiss, Matrix, Piece, Subspace};
use crate::scalar::Scalar;
use crate::spectral::SpectralSequence;

/// Inner product on the Lie algebra, `g[i][j] = ⟨e_i, e_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSpec {
    g: Matrix,
}

impl MetricSpec {
    pub fn new(g: Matrix) -> Result<Self> {
        if g.rows() != g.cols() || !g.is_real() {
            return Err(Error::Validation("metric must be a real square matrix".into()));
        }
        if g.transpose() != g {
            return Err(Error::Validation("metric is not symmetric".into()));
        }
        let minors = bareiss::leading_minors(&g);
        if minors.iter().any(|d| !d.re.is_positive()) {
            return Err(Error::Validation("metric is not positive definite".into()));
        }
        Ok(MetricSpec { g })
    }

    pub fn identity(n: usize) -> Self {
        MetricSpec { g: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    /// `√det g`, required to be rational so that `Vol` is exact.
    pub fn volume_factor(&self) -> Result<BigRational> {
        let det = bareiss::determinant(&self.g).re;
        rational_sqrt(&det).ok_or_else(|| Error::Validation(format!("sqrt(det g) = sqrt({det}) is not rational")))
    }

    /// Gram matrix of the induced inner product on real `k`-forms in the
    /// canonical monomial basis: minors of `g⁻¹`.
    pub fn form_gram(&self, k: usize) -> Matrix {
        let n = self.g.rows();
        let ginv = self.g.inverse().expect("positive definite");
        let alg = ExteriorAlgebra::new(n);
        let basis = alg.basis(k);
        Matrix::from_fn(basis.len(), basis.len(), |a, b| {
            let (ia, ib) = (basis[a].indices(), basis[b].indices());
            let sub = Matrix::from_fn(k, k, |i, j| ginv[(ia[i], ib[j])].clone());
            bareiss::determinant(&sub)
        })
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let root = |x: &BigInt| {
        let s = x.sqrt();
        (&s * &s == *x).then_some(s)
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

/// `d` or one of its four components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    D,
    Part(Component),
}

impl Operator {
    pub fn conjugate(self) -> Operator {
        match self {
            Operator::D => Operator::D,
            Operator::Part(c) => Operator::Part(c.conjugate()),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Operator::D => "d",
            Operator::Part(c) => c.ascii(),
        }
    }

    pub fn parse(s: &str) -> Option<Operator> {
        Some(match s {
            "d" => Operator::D,
            "mu" => Operator::Part(Component::Mu),
            "del" => Operator::Part(Component::Del),
            "delbar" => Operator::Part(Component::DelBar),
            "mubar" => Operator::Part(Component::MuBar),
            _ => return None,
        })
    }
}

/// Metric data on complex forms of one almost complex Lie algebra.
pub struct Harmonic<'a> {
    quad: &'a OperatorQuadruple,
    alg: ExteriorAlgebra,
    /// Hermitian Gram `H_k[a][b] = ⟨Φ_a, Φ_b⟩` on complex `k`-forms.
    gram: Vec<Matrix>,
    gram_inv: Vec<Matrix>,
    /// Complex-linear `∗ : A^k → A^{n−k}` in `Φ`-monomials.
    star: Vec<Matrix>,
    /// Same on real `e`-monomials.
    real_star: Vec<Matrix>,
}

impl<'a> Harmonic<'a> {
    pub fn new(quad: &'a OperatorQuadruple, metric: &MetricSpec) -> Result<Self> {
        let n = 2 * quad.m();
        if metric.matrix().rows() != n {
            return Err(Error::Config(format!(
                "metric has size {} but the algebra has dimension {n}",
                metric.matrix().rows()
            )));
        }
        let vol = Scalar::real(metric.volume_factor()?);
        let alg = ExteriorAlgebra::new(n);
        let frame = quad.frame();
        let top = Monomial((1u32 << n) - 1);
        let mut gram = Vec::new();
        let mut real_star = Vec::new();
        let mut star = Vec::new();
        let real_gram: Vec<Matrix> = (0..=n).map(|k| metric.form_gram(k)).collect();
        for k in 0..=n {
            let t = frame.to_real_matrix(k);
            gram.push(t.transpose().mul(&real_gram[k])?.mul(&t.conj())?);
            // Wedge pairing W[I][J] with e^I ∧ e^J = W[I][J] Vol₀.
            let w = Matrix::from_fn(alg.dim(k), alg.dim(n - k), |a, b| {
                let (x, y) = (alg.basis(k)[a], alg.basis(n - k)[b]);
                match x.wedge_sign(y) {
                    Some(s) if x.union(y) == top => Scalar::from_int(s as i64),
                    _ => Scalar::zero(),
                }
            });
            let s = w.inverse().expect("wedge pairing is perfect").mul(&real_gram[k])?.scale(&vol);
            real_star.push(s);
        }
        for k in 0..=n {
            let s = frame.to_complex_matrix(n - k).mul(&real_star[k])?.mul(&frame.to_real_matrix(k))?;
            star.push(s);
        }
        let gram_inv = gram.iter().map(|h| h.inverse().expect("Gram is definite")).collect();
        let h = Harmonic { quad, alg, gram, gram_inv, star, real_star };
        h.check_star()?;
        Ok(h)
    }

    pub fn quad(&self) -> &OperatorQuadruple {
        self.quad
    }

    fn n(&self) -> usize {
        2 * self.quad.m()
    }

    /// `⟨u, v⟩ = uᵀ H v̄` on complex `k`-forms.
    pub fn inner(&self, k: usize, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let hv = self.gram[k].apply(&v.iter().map(Scalar::conj).collect::<Vec<_>>());
        u.iter().zip(&hv).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn gram(&self, k: usize) -> &Matrix {
        &self.gram[k]
    }

    /// `∗∗ = (−1)^k`, the defining relation on all basis pairs and the
    /// bidegree behaviour `(p,q) ↦ (m−q, m−p)`.
    fn check_star(&self) -> Result<()> {
        let n = self.n();
        let m = self.quad.m();
        let top = Monomial((1u32 << n) - 1);
        for k in 0..=n {
            let ss = self.star[n - k].mul(&self.star[k])?;
            let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            assert_eq!(ss, Matrix::identity(self.alg.dim(k)).scale(&sign), "∗∗ has the wrong sign in degree {k}");
            // φ ∧ ∗η̄ = ⟨φ, η⟩ Vol, in complex coordinates.
            let vol = self.quad.frame().to_complex(&FormVector::monomial(n, top, self.vol_factor()));
            let vol_c = vol.coefficient(top);
            for (a, x) in self.alg.basis(k).iter().enumerate() {
                let phi = FormVector::monomial(n, *x, Scalar::one());
                for (b, y) in self.alg.basis(k).iter().enumerate() {
                    let eta_bar = FormVector::monomial(n, *y, Scalar::one()).conjugate();
                    let star_eta_bar = self.apply_star(&eta_bar);
                    let lhs = phi.wedge(&star_eta_bar)?.coefficient(top);
                    let rhs = &self.gram[k][(a, b)] * &vol_c;
                    assert_eq!(lhs, rhs, "defining relation of ∗ fails on basis pair");
                }
                let (p, q) = x.bidegree(m);
                let img = self.apply_star(&phi);
                let pure = match img.bidegree(m) {
                    Some(b) => b == (m - q, m - p),
                    None => img.is_empty(),
                };
                if !pure {
                    return Err(Error::Validation(
                        "∗ does not map (p,q) to (m-q,m-p); the metric is not J-compatible".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn vol_factor(&self) -> Scalar {
        // Recover √det g from ∗1 on real forms.
        self.real_star[0][(0, 0)].clone()
    }

    pub fn apply_star(&self, form: &FormVector) -> FormVector {
        let k = form.degree();
        let v = self.star[k].apply(&self.alg.to_coords(form));
        self.alg.from_coords(self.n() - k, &v)
    }

    /// Real Hodge star on `e`-monomial coordinates.
    pub fn real_star(&self, k: usize) -> &Matrix {
        &self.real_star[k]
    }

    /// Operator on complex `k`-forms in the full degree basis.
    pub fn total(&self, op: Operator, k: usize) -> Matrix {
        let n = self.n();
        if k > n {
            return Matrix::zeros(0, 0);
        }
        let cols: Vec<Vec<Scalar>> = self
            .alg
            .basis(k)
            .iter()
            .map(|mono| {
                let x = FormVector::monomial(n, *mono, Scalar::one());
                let y = match op {
                    Operator::D => self.quad.d(&x),
                    Operator::Part(c) => self.quad.apply(c, &x).expect("pure"),
                };
                self.alg.to_coords(&y)
            })
            .collect();
        let rows = if k < n { self.alg.dim(k + 1) } else { 0 };
        Matrix::from_columns(rows, &cols)
    }

    /// `δ* = −∗δ̄∗ : A^k → A^{k−1}`.
    pub fn formal_adjoint(&self, op: Operator, k: usize) -> Matrix {
        let n = self.n();
        if k == 0 {
            return Matrix::zeros(0, self.alg.dim(0));
        }
        let inner = self.total(op.conjugate(), n - k);
        self.star[n - k + 1].mul(&inner).and_then(|x| x.mul(&self.star[k])).expect("shapes").neg()
    }

    /// Adjoint with respect to the Hermitian products: `conj(H_{k−1}⁻¹ δᵀ H_k)`.
    pub fn metric_adjoint(&self, op: Operator, k: usize) -> Matrix {
        if k == 0 {
            return Matrix::zeros(0, self.alg.dim(0));
        }
        let c = self.total(op, k - 1);
        self.gram_inv[k - 1].mul(&c.transpose()).and_then(|x| x.mul(&self.gram[k])).expect("shapes").conj()
    }

    /// Positions inside the degree-`(p+q)` basis of the `(p,q)` monomials.
    fn positions(&self, p: i64, q: i64) -> Vec<usize> {
        self.quad.bigrading().basis(p, q).iter().map(|mono| self.alg.position(*mono)).collect()
    }

    fn restrict(&self, m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])].clone())
    }

    /// `Δ_δ = δδ* + δ*δ` on complex `k`-forms, with the metric adjoint.
    pub fn laplacian(&self, op: Operator, k: usize) -> Matrix {
        let n = self.n();
        let dim = self.alg.dim(k);
        let mut out = Matrix::zeros(dim, dim);
        if k > 0 {
            let t = self.total(op, k - 1).mul(&self.metric_adjoint(op, k)).expect("shapes");
            out = out.add(&t).expect("square");
        }
        if k < n {
            let t = self.metric_adjoint(op, k + 1).mul(&self.total(op, k)).expect("shapes");
            out = out.add(&t).expect("square");
        }
        out
    }

    /// Kernel of `Δ_δ` on `A^{p,q}` (components) or `A^k` (for `d`).
    pub fn laplacian_harmonics(&self, op: Operator, piece: Piece) -> Result<HarmonicSpace> {
        let (k, idx) = match (op, piece) {
            (Operator::Part(_), Piece::Bidegree(p, q)) => ((p + q) as usize, self.positions(p, q)),
            (Operator::D, Piece::Degree(k)) => (k, (0..self.alg.dim(k)).collect()),
            _ => return Err(Error::Config(format!("{} is not homogeneous on {piece:?}", op.label()))),
        };
        if idx.is_empty() {
            return Ok(HarmonicSpace { piece, operator: op, space: Subspace::zero(0) });
        }
        let lap = self.laplacian(op, k);
        let all: Vec<usize> = (0..self.alg.dim(k)).collect();
        let block = self.restrict(&lap, &all, &idx);
        let rest: Vec<usize> = all.iter().copied().filter(|i| !idx.contains(i)).collect();
        assert!(self.restrict(&lap, &rest, &idx).is_zero(), "Laplacian leaves the piece");
        let local = self.restrict(&block, &idx, &(0..idx.len()).collect::<Vec<_>>());
        // Self-adjoint: Δᵀ H = H Δ̄ on the piece.
        let h = self.restrict(&self.gram[k], &idx, &idx);
        assert_eq!(local.transpose().mul(&h)?, h.mul(&local.conj())?, "Laplacian is not self-adjoint");
        let space = Subspace::span(idx.len(), local.kernel_basis());
        // Positive on the orthogonal complement of the kernel.
        for v in orthogonal_complement(&space, &h).basis() {
            let lv = local.apply(v);
            let val = hermitian(&h, &lv, v);
            assert!(val.is_real() && val.re.is_positive(), "Laplacian is not positive off its kernel");
        }
        Ok(HarmonicSpace { piece, operator: op, space })
    }

    /// Hermitian Gram on `A^{p,q}`.
    pub fn piece_gram(&self, p: i64, q: i64) -> Matrix {
        let idx = self.positions(p, q);
        if idx.is_empty() {
            return Matrix::zeros(0, 0);
        }
        self.restrict(&self.gram[(p + q) as usize], &idx, &idx)
    }

    /// `μ̄*` from `A^{p,q}` into `A^{p+1,q−2}` in bigraded coordinates.
    fn piece_adjoint(&self, c: Component, p: i64, q: i64, formal: bool) -> Matrix {
        let (a, b) = c.shift();
        let (tp, tq) = (p - a, q - b);
        let (src, tgt) = (self.positions(p, q), self.positions(tp, tq));
        if src.is_empty() || tgt.is_empty() {
            return Matrix::zeros(tgt.len(), src.len());
        }
        let k = (p + q) as usize;
        let full =
            if formal { self.formal_adjoint(Operator::Part(c), k) } else { self.metric_adjoint(Operator::Part(c), k) };
        self.restrict(&full, &tgt, &src)
    }

    /// `A^{p,q} = ℋ_μ̄ ⊕ μ̄(A^{p+1,q−2}) ⊕ μ̄*(A^{p−1,q+2})`, pairwise
    /// orthogonal; returns the harmonic part.
    pub fn mu_bar_decomposition(&self, p: i64, q: i64) -> Result<HodgeDecomposition> {
        let harmonic = self.laplacian_harmonics(Operator::Part(Component::MuBar), Piece::Bidegree(p, q))?.space;
        let exact = Subspace::span(self.quad.dim(p, q), self.quad.matrix(Component::MuBar, p + 1, q - 2).columns());
        let coexact =
            Subspace::span(self.quad.dim(p, q), self.piece_adjoint(Component::MuBar, p - 1, q + 2, false).columns());
        let h = self.piece_gram(p, q);
        let orthogonal =
            [(&harmonic, &exact), (&harmonic, &coexact), (&exact, &coexact)].iter().all(|(a, b)| orthogonal(&h, a, b));
        let spans = harmonic.dim() + exact.dim() + coexact.dim() == self.quad.dim(p, q)
            && harmonic.sum(&exact)?.sum(&coexact)?.dim() == self.quad.dim(p, q);
        Ok(HodgeDecomposition { harmonic, exact, coexact, orthogonal, spans })
    }

    /// Orthogonal projection onto a subspace, as coordinates in its basis.
    fn project(&self, h: &Matrix, s: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
        let b = s.basis();
        let gram = Matrix::from_fn(b.len(), b.len(), |i, j| hermitian(h, &b[j], &b[i]));
        let rhs: Vec<Scalar> = b.iter().map(|bi| hermitian(h, v, bi)).collect();
        gram.solve(&rhs).expect("Gram of a basis is invertible")
    }

    /// `∂̄_μ̄ = H_μ̄ ∘ ∂̄ : ℋ^{p,q} → ℋ^{p,q+1}` in harmonic-basis coordinates.
    pub fn del_bar_mu_bar_matrix(&self, p: i64, q: i64) -> Result<Matrix> {
        let src = self.mu_bar_decomposition(p, q)?.harmonic;
        let tgt = self.mu_bar_decomposition(p, q + 1)?.harmonic;
        let dbar = self.quad.matrix(Component::DelBar, p, q);
        let h = self.piece_gram(p, q + 1);
        let cols: Vec<Vec<Scalar>> = src
            .basis()
            .iter()
            .map(|v| if tgt.is_zero() { Vec::new() } else { self.project(&h, &tgt, &dbar.apply(v)) })
            .collect();
        Ok(Matrix::from_columns(tgt.dim(), &cols))
    }

    /// `∂̄_μ̄* = H_μ̄ ∘ ∂̄* : ℋ^{p,q} → ℋ^{p,q−1}` with the formal adjoint.
    pub fn del_bar_mu_bar_adjoint_matrix(&self, p: i64, q: i64) -> Result<Matrix> {
        let src = self.mu_bar_decomposition(p, q)?.harmonic;
        let tgt = self.mu_bar_decomposition(p, q - 1)?.harmonic;
        let adj = self.piece_adjoint(Component::DelBar, p, q, true);
        let h = self.piece_gram(p, q - 1);
        let cols: Vec<Vec<Scalar>> = src
            .basis()
            .iter()
            .map(|v| if tgt.is_zero() { Vec::new() } else { self.project(&h, &tgt, &adj.apply(v)) })
            .collect();
        Ok(Matrix::from_columns(tgt.dim(), &cols))
    }

    pub fn del_bar_mu_bar(&self, p: i64, q: i64) -> Result<DelBarMuBar> {
        let basis = self.mu_bar_decomposition(p, q)?.harmonic;
        let op = self.del_bar_mu_bar_matrix(p, q)?;
        let incoming = self.del_bar_mu_bar_matrix(p, q - 1)?;
        let next = self.del_bar_mu_bar_matrix(p, q + 1)?;
        let square_zero = op.rows() == 0 || next.rows() == 0 || next.mul(&op)?.is_zero();
        let squares_before = incoming.cols() == 0 || op.rows() == 0 || op.mul(&incoming)?.is_zero();
        let cohomology_dim = basis.dim() - op.rank() - incoming.rank();
        let adj = self.del_bar_mu_bar_adjoint_matrix(p, q)?;
        let adj_in = self.del_bar_mu_bar_adjoint_matrix(p, q + 1)?;
        // Δ = ∂̄_μ̄* ∂̄_μ̄ + ∂̄_μ̄ ∂̄_μ̄* on ℋ^{p,q}.
        let dim = basis.dim();
        let mut lap = Matrix::zeros(dim, dim);
        if op.rows() > 0 && adj_in.cols() > 0 {
            lap = lap.add(&adj_in.mul(&op)?)?;
        }
        if adj.rows() > 0 && incoming.cols() > 0 {
            lap = lap.add(&incoming.mul(&adj)?)?;
        }
        let harm_coords = lap.kernel_basis();
        let harmonic = Subspace::span(
            self.quad.dim(p, q),
            harm_coords.iter().map(|c| crate::linalg::combine(self.quad.dim(p, q), basis.basis(), c)).collect(),
        );
        // Three-way decomposition inside ℋ^{p,q}_μ̄.
        let lift = |coords: Vec<Vec<Scalar>>| {
            Subspace::span(
                self.quad.dim(p, q),
                coords.iter().map(|c| crate::linalg::combine(self.quad.dim(p, q), basis.basis(), c)).collect(),
            )
        };
        let image = lift(if incoming.cols() > 0 { incoming.columns() } else { Vec::new() });
        let coimage = lift(if adj_in.cols() > 0 && adj_in.rows() > 0 { adj_in.columns() } else { Vec::new() });
        let h = self.piece_gram(p, q);
        let decomposition_holds = orthogonal(&h, &harmonic, &image)
            && orthogonal(&h, &harmonic, &coimage)
            && orthogonal(&h, &image, &coimage)
            && harmonic.dim() + image.dim() + coimage.dim() == basis.dim();
        Ok(DelBarMuBar {
            p,
            q,
            mu_bar_harmonic: basis,
            matrix: op,
            square_zero: square_zero && squares_before,
            cohomology_dim,
            harmonic,
            decomposition_holds,
        })
    }
}

fn hermitian(h: &Matrix, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let hv = h.apply(&v.iter().map(Scalar::conj).collect::<Vec<_>>());
    u.iter().zip(&hv).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
}

fn orthogonal(h: &Matrix, a: &Subspace, b: &Subspace) -> bool {
    a.basis().iter().all(|u| b.basis().iter().all(|v| hermitian(h, u, v).is_zero()))
}

fn orthogonal_complement(s: &Subspace, h: &Matrix) -> Subspace {
    let n = s.ambient();
    if s.is_zero() {
        return Subspace::full(n);
    }
    // {x : ⟨x, b⟩ = 0 ∀ b} = ker of rows (H b̄)ᵀ.
    let rows: Vec<Vec<Scalar>> =
        s.basis().iter().map(|b| h.apply(&b.iter().map(Scalar::conj).collect::<Vec<_>>())).collect();
    Subspace::span(n, Matrix::from_rows(rows).kernel_basis())
}

#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    pub piece: Piece,
    pub operator: Operator,
    pub space: Subspace,
}

#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub harmonic: Subspace,
    pub exact: Subspace,
    pub coexact: Subspace,
    pub orthogonal: bool,
    pub spans: bool,
}

#[derive(Clone, Debug)]
pub struct DelBarMuBar {
    pub p: i64,
    pub q: i64,
    pub mu_bar_harmonic: Subspace,
    /// `∂̄_μ̄` in harmonic-basis coordinates.
    pub matrix: Matrix,
    pub square_zero: bool,
    pub cohomology_dim: usize,
    /// `ℋ^{p,q}_{∂̄_μ̄}` as a subspace of `A^{p,q}`.
    pub harmonic: Subspace,
    pub decomposition_holds: bool,
}

/// The three sufficient conditions for harmonic theory and Serre duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    /// `∂ ≡ 0` on `A^{m−1,m}`.
    pub del_vanishes: bool,
    /// `d ≡ 0` on `A^{2m−1}`.
    pub d_vanishes: bool,
    /// `b^{2m} = 1`.
    pub top_betti_one: bool,
}

impl SufficientConditions {
    pub fn agree(&self) -> bool {
        self.del_vanishes == self.d_vanishes && self.d_vanishes == self.top_betti_one
    }
}

pub fn sufficient_conditions(acl: &AlmostComplexLie) -> SufficientConditions {
    let n = acl.spec.dim();
    let m = (n / 2) as i64;
    let del_vanishes = acl.quad.op(Component::Del, m - 1, m).is_zero();
    let d_vanishes = acl.d.ops[n - 1].is_zero();
    let top = crate::lie::de_rham_from(&acl.d).betti()[n];
    SufficientConditions { del_vanishes, d_vanishes, top_betti_one: top == 1 }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointCheck {
    pub operator: Operator,
    /// Formal adjoint agrees with the metric adjoint in every degree.
    pub matches_metric_adjoint: bool,
    pub bidegree: Option<(i64, i64)>,
}

pub fn adjoint(h: &Harmonic<'_>, op: Operator) -> AdjointCheck {
    let n = h.n();
    let matches = (1..=n).all(|k| h.formal_adjoint(op, k) == h.metric_adjoint(op, k));
    let bidegree = match op {
        Operator::D => None,
        Operator::Part(c) => {
            let (a, b) = c.shift();
            Some((-a, -b))
        }
    };
    AdjointCheck { operator: op, matches_metric_adjoint: matches, bidegree }
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    pub unimodular: bool,
    /// `dims[r−1]` rows `q = m..0` for pages `r = 1..=m+1`.
    pub dims: Vec<Vec<Vec<usize>>>,
    /// Per page: `dim E^{p,q}_r = dim E^{m−p,m−q}_r` everywhere.
    pub symmetric: Vec<bool>,
    /// `ζ ↦ ∗ζ̄` maps `ℋ^{p,q}_{∂̄_μ̄}` bijectively onto `ℋ^{m−p,m−q}_{∂̄_μ̄}`.
    pub witness: bool,
}

impl SerreReport {
    pub fn holds(&self) -> bool {
        self.symmetric.iter().all(|&b| b) && self.witness
    }
}

pub fn serre_duality_check(acl: &AlmostComplexLie, metric: &MetricSpec) -> Result<SerreReport> {
    let quad = &acl.quad;
    let m = quad.m() as i64;
    let ss = SpectralSequence::new(quad);
    let pages = ss.pages()?;
    let dims: Vec<Vec<Vec<usize>>> = pages.iter().map(|pg| pg.rows_top_down()).collect();
    let symmetric =
        pages.iter().map(|pg| quad.grid().into_iter().all(|(p, q)| pg.dim(p, q) == pg.dim(m - p, m - q))).collect();
    let h = Harmonic::new(quad, metric)?;
    let bg = quad.bigrading();
    let mut witness = true;
    for (p, q) in quad.grid() {
        let src = h.del_bar_mu_bar(p, q)?.harmonic;
        let tgt = h.del_bar_mu_bar(m - p, m - q)?.harmonic;
        let images: Vec<Vec<Scalar>> = src
            .basis()
            .iter()
            .map(|v| {
                let zeta = bg.from_coords(p, q, v);
                let out = h.apply_star(&zeta.conjugate());
                bg.to_coords(m - p, m - q, &out).expect("∗ conj lands in (m-p,m-q)")
            })
            .collect();
        let img = Subspace::span(tgt.ambient(), images);
        witness &= img.dim() == src.dim() && tgt.contains(&img)? && img.dim() == tgt.dim();
    }
    Ok(SerreReport { unimodular: sufficient_conditions(acl).d_vanishes, dims, symmetric, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::AlmostComplexStructure;
    use crate::cohomology::{dolbeault, mu_bar_cohomology};
    use crate::lie::LieAlgebraSpec;

    fn sol3(pairs: &[(usize, usize)]) -> AlmostComplexLie {
        let s = LieAlgebraSpec::from_brackets("sol3", 4, &[(1, 2, 2, 1, 1), (1, 3, 3, -1, 1)]).unwrap();
        AlmostComplexLie::new(s, AlmostComplexStructure::from_pairs(4, pairs).unwrap()).unwrap()
    }

    fn abelian() -> AlmostComplexLie {
        AlmostComplexLie::new(LieAlgebraSpec::abelian("R4", 4).unwrap(), AlmostComplexStructure::standard(4).unwrap())
            .unwrap()
    }

    fn e(idx: &[usize]) -> FormVector {
        FormVector::basis_form(4, idx)
    }

    #[test]
    fn metric_validation() {
        assert!(MetricSpec::new(Matrix::from_ints(&[&[1, 2], &[2, 1]])).is_err());
        assert!(MetricSpec::new(Matrix::from_ints(&[&[2, 1], &[0, 2]])).is_err());
        let g = MetricSpec::new(Matrix::from_ints(&[&[2, 0], &[0, 8]])).unwrap();
        assert_eq!(g.volume_factor().unwrap(), BigRational::from_integer(4.into()));
        assert!(MetricSpec::new(Matrix::from_ints(&[&[2, 0], &[0, 1]])).unwrap().volume_factor().is_err());
    }

    #[test]
    fn real_star_on_monomials() {
        let ab = abelian();
        let h = Harmonic::new(&ab.quad, &MetricSpec::identity(4)).unwrap();
        let alg = ExteriorAlgebra::new(4);
        let star = |f: &FormVector| alg.from_coords(4 - f.degree(), &h.real_star(f.degree()).apply(&alg.to_coords(f)));
        assert_eq!(star(&FormVector::constant(4, Scalar::one())), e(&[1, 2, 3, 4]));
        assert_eq!(star(&e(&[1, 2])), e(&[3, 4]));
        assert_eq!(star(&e(&[1, 3])), e(&[2, 4]).scale(&Scalar::from_int(-1)));
        // Oracle: α ∧ ∗β = ⟨α,β⟩ e¹²³⁴ for orthonormal monomials.
        for a in alg.basis(2) {
            for b in alg.basis(2) {
                let fa = FormVector::monomial(4, *a, Scalar::one());
                let fb = FormVector::monomial(4, *b, Scalar::one());
                let c = fa.wedge(&star(&fb)).unwrap().coefficient(Monomial(0b1111));
                assert_eq!(c, if a == b { Scalar::one() } else { Scalar::zero() });
            }
        }
    }

    #[test]
    fn complex_star_of_phi_one_one_bar() {
        let a = sol3(&[(1, 2), (3, 4)]);
        let h = Harmonic::new(&a.quad, &MetricSpec::identity(4)).unwrap();
        let out = h.apply_star(&e(&[1, 3]));
        // Oracle: expand in real monomials and apply the real star.
        let frame = a.quad.frame();
        let alg = ExteriorAlgebra::new(4);
        let real = frame.to_real(&e(&[1, 3]));
        let starred = alg.from_coords(2, &h.real_star(2).apply(&alg.to_coords(&real)));
        assert_eq!(frame.to_complex(&starred), out);
        assert_eq!(out.bidegree(2), Some((1, 1)));
        assert_eq!(out.len(), 1);
        assert!(!out.coefficient(Monomial::from_indices(&[1, 3]).unwrap().0).is_zero());
    }

    #[test]
    fn adjoints() {
        let ab = abelian();
        let h = Harmonic::new(&ab.quad, &MetricSpec::identity(4)).unwrap();
        for k in 1..=4 {
            for c in Component::ALL {
                assert!(h.formal_adjoint(Operator::Part(c), k).is_zero());
            }
        }
        let a = sol3(&[(1, 2), (3, 4)]);
        let h = Harmonic::new(&a.quad, &MetricSpec::identity(4)).unwrap();
        for op in [
            Operator::D,
            Operator::Part(Component::Mu),
            Operator::Part(Component::Del),
            Operator::Part(Component::DelBar),
            Operator::Part(Component::MuBar),
        ] {
            assert!(adjoint(&h, op).matches_metric_adjoint, "{op:?}");
        }
        assert_eq!(adjoint(&h, Operator::Part(Component::MuBar)).bidegree, Some((1, -2)));
        // (∂̄)* on (1,1) against the conjugate transpose of ∂̄ on (1,0).
        let adj = h.piece_adjoint(Component::DelBar, 1, 1, true);
        let dbar = a.quad.matrix(Component::DelBar, 1, 0);
        assert_eq!(adj.rank(), dbar.rank());
        let g10 = h.piece_gram(1, 0);
        let g11 = h.piece_gram(1, 1);
        let want = g10.inverse().unwrap().mul(&dbar.transpose()).unwrap().mul(&g11).unwrap().conj();
        assert_eq!(adj, want);
    }

    #[test]
    fn non_unimodular_formal_adjoint_differs() {
        let aff = LieAlgebraSpec::from_brackets("aff", 4, &[(1, 2, 2, 1, 1)]).unwrap();
        let acl = AlmostComplexLie::new(aff, AlmostComplexStructure::standard(4).unwrap()).unwrap();
        let h = Harmonic::new(&acl.quad, &MetricSpec::identity(4)).unwrap();
        assert!(!adjoint(&h, Operator::D).matches_metric_adjoint);
        assert!(adjoint(&h, Operator::Part(Component::MuBar)).matches_metric_adjoint);
        let sc = sufficient_conditions(&acl);
        assert!(sc.agree() && !sc.d_vanishes);
    }

    #[test]
    fn mu_bar_harmonics_match_cohomology() {
        for acl in [sol3(&[(1, 2), (3, 4)]), sol3(&[(1, 4), (2, 3)]), abelian()] {
            let h = Harmonic::new(&acl.quad, &MetricSpec::identity(4)).unwrap();
            for (p, q) in acl.quad.grid() {
                let dec = h.mu_bar_decomposition(p, q).unwrap();
                assert!(dec.orthogonal && dec.spans);
                assert_eq!(dec.harmonic.dim(), mu_bar_cohomology(&acl.quad, p, q).unwrap().dim);
            }
        }
        let a = sol3(&[(1, 2), (3, 4)]);
        let h = Harmonic::new(&a.quad, &MetricSpec::identity(4)).unwrap();
        assert_eq!(h.mu_bar_decomposition(0, 2).unwrap().harmonic.dim(), 0);
        assert_eq!(h.mu_bar_decomposition(1, 1).unwrap().harmonic.dim(), 4);
    }

    #[test]
    fn del_bar_mu_bar_examples() {
        for (acl, want) in [(sol3(&[(1, 2), (3, 4)]), 2), (sol3(&[(1, 4), (2, 3)]), 4), (abelian(), 4)] {
            let h = Harmonic::new(&acl.quad, &MetricSpec::identity(4)).unwrap();
            let dm = h.del_bar_mu_bar(1, 1).unwrap();
            assert_eq!(dm.harmonic.dim(), want);
            for (p, q) in acl.quad.grid() {
                let dm = h.del_bar_mu_bar(p, q).unwrap();
                assert!(dm.square_zero && dm.decomposition_holds);
                assert_eq!(dm.cohomology_dim, dolbeault(&acl.quad, p, q).unwrap().dim);
                assert_eq!(dm.harmonic.dim(), dm.cohomology_dim);
            }
        }
        let ab = abelian();
        let h = Harmonic::new(&ab.quad, &MetricSpec::identity(4)).unwrap();
        assert!(h.del_bar_mu_bar_matrix(1, 0).unwrap().is_zero());
    }

    #[test]
    fn serre_on_sol3() {
        let r = serre_duality_check(&sol3(&[(1, 2), (3, 4)]), &MetricSpec::identity(4)).unwrap();
        assert!(r.unimodular && r.holds());
        assert_eq!(r.dims[0], vec![vec![0, 0, 1], vec![2, 2, 2], vec![1, 0, 0]]);
    }
}
