//! JSON input documents: real structure constants with an optional `J`, or
//! complex coframe equations `dφ^i`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::acs::{complex_frame, substitute, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{FormVector, Monomial};
use crate::harmonic::MetricSpec;
use crate::lie::{validate_lie_algebra, LieAlgebraSpec};
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Complex,
}

/// `[e_j, e_k] = Σ_l coeffs[l] e_l`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub pair: [usize; 2],
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermKind {
    #[serde(rename = "(2,0)")]
    Holomorphic,
    #[serde(rename = "(1,1)")]
    Mixed,
    #[serde(rename = "(0,2)")]
    Antiholomorphic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexCoeff {
    pub re: String,
    pub im: String,
}

/// One term of `dφ^i`: `φ^a∧φ^b`, `φ^a∧φ^{b̄}` or `φ^{ā}∧φ^{b̄}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub kind: TermKind,
    pub indices: [usize; 2],
    pub coeff: ComplexCoeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub mode: Mode,
    pub name: String,
    /// `2m` in real mode, `m` in complex mode.
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<Bracket>>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_phi: Option<Vec<Vec<Term>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
}

/// A validated document turned into engine inputs.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: LieAlgebraSpec,
    pub j: AlmostComplexStructure,
    pub metric: MetricSpec,
}

fn field_rational(s: &str, field: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn rational_matrix(rows: &[Vec<String>], n: usize, field: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation(format!("{field}: expected a {n}x{n} matrix")));
    }
    let mut m = Matrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m[(i, j)] = Scalar::real(field_rational(s, &format!("{field}[{i}][{j}]"))?);
        }
    }
    Ok(m)
}

/// Parses and validates a document. JSON and rational-string errors are
/// [`Error::Parse`]; mathematical problems are [`Error::Validation`].
pub fn parse_spec(bytes: &[u8]) -> Result<InputDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))?;
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.check_strings()?;
    doc.resolve()?;
    Ok(doc)
}

impl InputDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    fn check_strings(&self) -> Result<()> {
        for (b, br) in self.brackets.iter().flatten().enumerate() {
            for (l, c) in &br.coeffs {
                field_rational(c, &format!("brackets[{b}].coeffs.{l}"))?;
            }
        }
        for (name, mat) in [("J", &self.j), ("metric", &self.metric)] {
            for (i, row) in mat.iter().flatten().enumerate() {
                for (k, s) in row.iter().enumerate() {
                    field_rational(s, &format!("{name}[{i}][{k}]"))?;
                }
            }
        }
        for (i, terms) in self.d_phi.iter().flatten().enumerate() {
            for (t, term) in terms.iter().enumerate() {
                field_rational(&term.coeff.re, &format!("d_phi[{i}][{t}].coeff.re"))?;
                field_rational(&term.coeff.im, &format!("d_phi[{i}][{t}].coeff.im"))?;
            }
        }
        Ok(())
    }

    fn real_dim(&self) -> usize {
        match self.mode {
            Mode::Real => self.dimension,
            Mode::Complex => 2 * self.dimension,
        }
    }

    /// Builds the Lie algebra, `J` and metric, validating everything.
    pub fn resolve(&self) -> Result<Resolved> {
        let n = self.real_dim();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Validation(format!("real dimension must be even and positive, got {n}")));
        }
        let (spec, j) = match self.mode {
            Mode::Real => {
                if self.d_phi.is_some() {
                    return Err(Error::Validation("d_phi is only allowed in complex mode".into()));
                }
                let mut spec = LieAlgebraSpec::new(self.name.clone(), n)?;
                for (b, br) in self.brackets.iter().flatten().enumerate() {
                    for (l, c) in &br.coeffs {
                        let l: usize =
                            l.parse().map_err(|_| Error::Parse(format!("brackets[{b}].coeffs: bad index {l:?}")))?;
                        let c = field_rational(c, &format!("brackets[{b}].coeffs.{l}"))?;
                        spec.set_bracket(br.pair[0], br.pair[1], l, c)
                            .map_err(|e| Error::Validation(format!("brackets[{b}]: {e}")))?;
                    }
                }
                let j = match &self.j {
                    Some(rows) => AlmostComplexStructure::new(rational_matrix(rows, n, "J")?)?,
                    None => AlmostComplexStructure::standard(n)?,
                };
                (spec, j)
            }
            Mode::Complex => {
                if self.brackets.is_some() || self.j.is_some() {
                    return Err(Error::Validation("brackets and J are only allowed in real mode".into()));
                }
                complex_to_real(&self.name, self.dimension, self.d_phi.as_deref().unwrap_or(&[]))?
            }
        };
        let report = validate_lie_algebra(&spec);
        if !report.is_valid() {
            return Err(Error::Validation(format!("d^2 != 0 / Jacobi fails: {}", report.messages.join("; "))));
        }
        let frame = complex_frame(&spec, &j)?;
        let jm = j.matrix();
        let metric = match &self.metric {
            Some(rows) => MetricSpec::new(rational_matrix(rows, n, "metric")?)?,
            None if jm.transpose().mul(jm)? == Matrix::identity(n) => MetricSpec::identity(n),
            None => frame_metric(frame.forward(), n / 2)?,
        };
        if jm.transpose().mul(metric.matrix())?.mul(jm)? != *metric.matrix() {
            return Err(Error::Validation("metric is not J-compatible".into()));
        }
        Ok(Resolved { spec, j, metric })
    }
}

/// Metric making `Re φ^a, Im φ^a` orthonormal; `J`-compatible, and
/// `√det g = |det R|` is rational.
fn frame_metric(forward: &Matrix, m: usize) -> Result<MetricSpec> {
    let n = 2 * m;
    let r = Matrix::from_fn(n, n, |i, j| {
        let c = &forward[(i / 2, j)];
        Scalar::real(if i % 2 == 0 { c.re.clone() } else { c.im.clone() })
    });
    MetricSpec::new(r.transpose().mul(&r)?)
}

/// A metric file: a JSON square matrix of rational strings.
pub fn parse_metric(bytes: &[u8]) -> Result<MetricSpec> {
    let rows: Vec<Vec<String>> = serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("metric: {e}")))?;
    let n = rows.len();
    MetricSpec::new(rational_matrix(&rows, n, "metric")?)
}

/// `dφ^i` as forms on `φ¹..φᵐ, φ̄¹..φ̄ᵐ`.
pub fn complex_differentials(m: usize, d_phi: &[Vec<Term>]) -> Result<Vec<FormVector>> {
    if d_phi.len() > m {
        return Err(Error::Validation(format!("d_phi has {} entries but dimension is {m}", d_phi.len())));
    }
    let n = 2 * m;
    let mut out = vec![FormVector::zero(n, 2); m];
    for (i, terms) in d_phi.iter().enumerate() {
        for (t, term) in terms.iter().enumerate() {
            let [a, b] = term.indices;
            if !(1..=m).contains(&a) || !(1..=m).contains(&b) {
                return Err(Error::Validation(format!("d_phi[{i}][{t}]: index out of range 1..={m}")));
            }
            let (x, y) = match term.kind {
                TermKind::Holomorphic => (a - 1, b - 1),
                TermKind::Mixed => (a - 1, m + b - 1),
                TermKind::Antiholomorphic => (m + a - 1, m + b - 1),
            };
            let c =
                Scalar::new(field_rational(&term.coeff.re, "coeff.re")?, field_rational(&term.coeff.im, "coeff.im")?);
            let f = FormVector::generator(n, x).wedge(&FormVector::generator(n, y))?.scale(&c);
            if f.is_zero() && !c.is_zero() {
                return Err(Error::Validation(format!("d_phi[{i}][{t}]: repeated index")));
            }
            out[i] = out[i].add(&f)?;
        }
    }
    Ok(out)
}

/// `φ^j = e^{2j−1} + i e^{2j}`: real structure constants and the standard `J`.
fn complex_to_real(name: &str, m: usize, d_phi: &[Vec<Term>]) -> Result<(LieAlgebraSpec, AlmostComplexStructure)> {
    let n = 2 * m;
    let dphi = complex_differentials(m, d_phi)?;
    // Generator images φ^a, φ̄^a in e-coordinates.
    let images: Vec<FormVector> = (0..n)
        .map(|g| {
            let j = g % m;
            let sign = if g < m { 1 } else { -1 };
            let mut f = FormVector::zero(n, 1);
            f.add_term(Monomial::generator(2 * j), Scalar::one());
            f.add_term(Monomial::generator(2 * j + 1), Scalar::complex(0, sign));
            f
        })
        .collect();
    let half = Scalar::ratio(1, 2);
    let mut spec = LieAlgebraSpec::new(name, n)?;
    for (j, d) in dphi.iter().enumerate() {
        let real = substitute(n, &images, d);
        let conj = substitute(n, &images, &d.conjugate());
        // de^{2j−1} = Re dφ^j, de^{2j} = Im dφ^j.
        let re = real.add(&conj)?.scale(&half);
        let im = real.sub(&conj)?.scale(&(half.clone() * Scalar::complex(0, -1)));
        for (l, form) in [(2 * j, re), (2 * j + 1, im)] {
            for (mono, c) in form.terms() {
                if !c.is_real() {
                    return Err(Error::Validation("d_phi does not define a real Lie algebra".into()));
                }
                let idx = mono.indices();
                spec.set_bracket(idx[0] + 1, idx[1] + 1, l + 1, -c.re.clone())?;
            }
        }
    }
    let j = AlmostComplexStructure::standard(n)?;
    let frame = complex_frame(&spec, &j)?;
    for (a, img) in images.iter().enumerate().take(m) {
        assert_eq!(&frame.phi(a), img, "standard J must reproduce the input coframe");
    }
    Ok((spec, j))
}

fn rat_string(r: &BigRational) -> String {
    crate::scalar::format_rational(r)
}

/// Real-mode document for a spec and `J`.
pub fn real_document(name: &str, spec: &LieAlgebraSpec, j: &AlmostComplexStructure) -> InputDocument {
    let n = spec.dim();
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let coeffs: BTreeMap<String, String> = (0..n)
                .filter_map(|l| {
                    let c = spec.constant(l, a, b);
                    (!c.is_zero()).then(|| ((l + 1).to_string(), rat_string(&c)))
                })
                .collect();
            if !coeffs.is_empty() {
                brackets.push(Bracket { pair: [a + 1, b + 1], coeffs });
            }
        }
    }
    let jm = j.matrix();
    let rows = (0..n).map(|r| (0..n).map(|c| rat_string(&jm[(r, c)].re)).collect()).collect();
    InputDocument {
        mode: Mode::Real,
        name: name.into(),
        dimension: n,
        brackets: Some(brackets),
        j: Some(rows),
        d_phi: None,
        metric: None,
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| rat_string(&m[(r, c)].re)).collect()).collect()
}

pub fn term(kind: TermKind, a: usize, b: usize, re: &str, im: &str) -> Term {
    Term { kind, indices: [a, b], coeff: ComplexCoeff { re: re.into(), im: im.into() } }
}

impl Default for ComplexCoeff {
    fn default() -> Self {
        ComplexCoeff { re: "0".into(), im: "0".into() }
    }
}
