//! μ̄-, Dolbeault and J-invariant cohomology, and the inclusion condition
//! relating `H⁺` to Dolbeault classes.

use serde::Serialize;

use crate::acs::{two_form_split, AlmostComplexLie, Component, OperatorQuadruple};
use crate::error::Result;
use crate::exterior::{ExteriorAlgebra, FormVector};
use crate::linalg::{Matrix, Piece, Subspace};
use crate::scalar::Scalar;
use crate::spectral::SpectralSequence;

/// `numerator / denominator` with representatives completing the denominator.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub piece: Piece,
    pub dim: usize,
    pub numerator: Subspace,
    pub denominator: Subspace,
    pub representatives: Subspace,
    pub forms: Vec<FormVector>,
}

impl CohomologyGroup {
    pub fn from_quotient(
        piece: Piece,
        numerator: Subspace,
        denominator: Subspace,
        to_form: impl Fn(&[Scalar]) -> FormVector,
    ) -> Result<Self> {
        let representatives = numerator.quotient_basis(&denominator)?;
        let forms = representatives.basis().iter().map(|v| to_form(v)).collect();
        Ok(CohomologyGroup { piece, dim: representatives.dim(), numerator, denominator, representatives, forms })
    }
}

fn in_grid(quad: &OperatorQuadruple, p: i64, q: i64) -> bool {
    quad.dim(p, q) > 0
}

fn kernel(m: &Matrix) -> Subspace {
    Subspace::span(m.cols(), m.kernel_basis())
}

fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows(), m.columns())
}

/// `ker μ̄|_{A^{p,q}}` and `μ̄(A^{p+1,q−2})`.
fn mu_bar_cycles_boundaries(quad: &OperatorQuadruple, p: i64, q: i64) -> (Subspace, Subspace) {
    let z = kernel(&quad.matrix(Component::MuBar, p, q));
    let b = image(&quad.matrix(Component::MuBar, p + 1, q - 2));
    (z, b)
}

pub fn mu_bar_cohomology(quad: &OperatorQuadruple, p: i64, q: i64) -> Result<CohomologyGroup> {
    let piece = Piece::Bidegree(p, q);
    if !in_grid(quad, p, q) {
        return CohomologyGroup::from_quotient(piece, Subspace::zero(0), Subspace::zero(0), |_| {
            FormVector::zero(2 * quad.m(), 0)
        });
    }
    let (z, b) = mu_bar_cycles_boundaries(quad, p, q);
    CohomologyGroup::from_quotient(piece, z, b, |v| quad.bigrading().from_coords(p, q, v))
}

/// `H^q(H^{p,•}_μ̄, ∂̄)`: classes `z` with `μ̄z = 0` and `∂̄z ∈ im μ̄`, modulo
/// `∂̄(ker μ̄) + im μ̄`.
pub fn dolbeault(quad: &OperatorQuadruple, p: i64, q: i64) -> Result<CohomologyGroup> {
    let piece = Piece::Bidegree(p, q);
    if !in_grid(quad, p, q) {
        return mu_bar_cohomology(quad, p, q);
    }
    let (z, b) = mu_bar_cycles_boundaries(quad, p, q);
    let (z_up, b_up) = mu_bar_cycles_boundaries(quad, p, q + 1);
    let (z_down, b_down) = mu_bar_cycles_boundaries(quad, p, q - 1);
    let dbar = quad.matrix(Component::DelBar, p, q);
    let dbar_down = quad.matrix(Component::DelBar, p, q - 1);
    // ∂̄ descends to μ̄-cohomology and squares to zero there.
    if dbar.rows() > 0 {
        assert!(z_up.contains(&z.image_under(&dbar))?, "∂̄ does not preserve ker μ̄");
        assert!(b_up.contains(&b.image_under(&dbar))?, "∂̄ does not preserve im μ̄");
    }
    if dbar_down.cols() > 0 {
        assert!(b.contains(&b_down.image_under(&dbar_down))?);
        if dbar.rows() > 0 {
            let sq = z_down.image_under(&dbar_down).image_under(&dbar);
            assert!(b_up.contains(&sq)?, "induced ∂̄ does not square to zero");
        }
    }
    let numerator = if dbar.rows() == 0 { z } else { z.restrict_preimage(&dbar, &b_up) };
    let boundaries =
        if dbar_down.cols() == 0 { Subspace::zero(quad.dim(p, q)) } else { z_down.image_under(&dbar_down) };
    let denominator = boundaries.sum(&b)?;
    CohomologyGroup::from_quotient(piece, numerator, denominator, |v| quad.bigrading().from_coords(p, q, v))
}

/// Dolbeault numbers `h^{p,q}` as rows `q = m..0`, columns `p = 0..m`.
pub fn hodge_numbers(quad: &OperatorQuadruple) -> Result<Vec<Vec<usize>>> {
    let m = quad.m() as i64;
    (0..=m).rev().map(|q| (0..=m).map(|p| dolbeault(quad, p, q).map(|g| g.dim)).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct JInvariantReport {
    pub h_plus: usize,
    pub h_minus: usize,
    pub b2: usize,
    pub pure: bool,
    pub full: bool,
    /// Same dimensions via closed forms of type (1,1) and (2,0)+(0,2).
    pub complex_h_plus: usize,
    pub complex_h_minus: usize,
    #[serde(skip)]
    pub plus_representatives: Vec<FormVector>,
    #[serde(skip)]
    pub minus_representatives: Vec<FormVector>,
    #[serde(skip)]
    pub plus_space: Subspace,
    #[serde(skip)]
    pub minus_space: Subspace,
}

pub fn h_plus_minus(acl: &AlmostComplexLie) -> Result<JInvariantReport> {
    let n = acl.spec.dim();
    let alg = ExteriorAlgebra::new(n);
    let split = two_form_split(&acl.spec, &acl.j)?;
    let z2 = kernel(&acl.d.ops[2].matrix);
    let b2 = image(&acl.d.ops[1].matrix);
    let plus = split.plus_space.intersect(&z2)?.sum(&b2)?;
    let minus = split.minus_space.intersect(&z2)?.sum(&b2)?;
    let inter = plus.intersect(&minus)?;
    let total = plus.sum(&minus)?;
    let (hp, hm) = (plus.dim() - b2.dim(), minus.dim() - b2.dim());
    assert_eq!((inter.dim() - b2.dim()) + (total.dim() - b2.dim()), hp + hm, "dimension formula inside H²");
    let reps = |s: &Subspace| -> Result<Vec<FormVector>> {
        Ok(s.quotient_basis(&b2)?.basis().iter().map(|v| alg.from_coords(2, v)).collect())
    };

    // Complexified route through the bigrading.
    let quad = &acl.quad;
    let m = quad.m();
    let dc2 = total_d(quad, 2);
    let dc1 = total_d(quad, 1);
    let zc = kernel(&dc2);
    let bc = image(&dc1);
    let calg = ExteriorAlgebra::new(n);
    let typed = |keep: &dyn Fn((usize, usize)) -> bool| {
        let vecs = calg
            .basis(2)
            .iter()
            .filter(|mono| keep(mono.bidegree(m)))
            .map(|mono| {
                let mut v = vec![Scalar::from_int(0); calg.dim(2)];
                v[calg.position(*mono)] = Scalar::from_int(1);
                v
            })
            .collect();
        Subspace::span(calg.dim(2), vecs)
    };
    let a11 = typed(&|b| b == (1, 1));
    let a_other = typed(&|b| b != (1, 1));
    let cp = a11.intersect(&zc)?.sum(&bc)?.dim() - bc.dim();
    let cm = a_other.intersect(&zc)?.sum(&bc)?.dim() - bc.dim();
    assert_eq!((cp, cm), (hp, hm), "real and complex routes to H± disagree");

    Ok(JInvariantReport {
        h_plus: hp,
        h_minus: hm,
        b2: z2.dim() - b2.dim(),
        pure: inter == b2,
        full: total == z2,
        complex_h_plus: cp,
        complex_h_minus: cm,
        plus_representatives: reps(&plus)?,
        minus_representatives: reps(&minus)?,
        plus_space: plus,
        minus_space: minus,
    })
}

/// `μ + ∂ + ∂̄ + μ̄` on complex `k`-forms.
pub fn total_d(quad: &OperatorQuadruple, k: usize) -> Matrix {
    let n = 2 * quad.m();
    let alg = ExteriorAlgebra::new(n);
    let cols: Vec<Vec<Scalar>> = alg
        .basis(k)
        .iter()
        .map(|mono| alg.to_coords(&quad.d(&FormVector::monomial(n, *mono, Scalar::from_int(1)))))
        .collect();
    Matrix::from_columns(alg.dim(k + 1), &cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionReport {
    pub e01_page1: usize,
    pub e01_page2: usize,
    pub condition: bool,
    pub y11_page1: usize,
    pub y11_page2: usize,
    pub y_equal: bool,
    /// The two flags agree.
    pub equivalence_holds: bool,
    /// `Y^{1,1}_3 = Y^{1,1}_1`, so `E^{1,1}_3 → E^{1,1}_1` is well defined.
    pub map_well_defined: bool,
    /// `X^{1,1}_3 ∩ Y^{1,1}_1 ⊆ Y^{1,1}_3`.
    pub injective: bool,
    /// `dim (B² ∩ A^{1,1})`.
    pub exact_11_dim: usize,
    /// Every `d`-exact form of type (1,1) lies in `Y^{1,1}_1`.
    pub exact_forms_vanish_in_dolbeault: bool,
}

pub fn inclusion_condition(quad: &OperatorQuadruple) -> Result<InclusionReport> {
    inclusion_condition_with(&SpectralSequence::new(quad))
}

pub fn inclusion_condition_with(ss: &SpectralSequence<'_>) -> Result<InclusionReport> {
    let quad = ss.quad();
    let e1 = ss.cell(0, 1, 1)?.dim;
    let e2 = ss.cell(0, 1, 2)?.dim;
    let (y1, y2, y3) = (ss.y(1, 1, 1), ss.y(1, 1, 2), ss.y(1, 1, 3));
    let x3 = ss.x(1, 1, 3);
    let condition = e1 == e2;
    let y_equal = y1 == y2;
    let map_well_defined = y1.contains(&y3)?;
    let injective = y3.contains(&x3.intersect(&y1)?)?;
    let bc = image(&total_d(quad, 1));
    let calg = ExteriorAlgebra::new(2 * quad.m());
    let bg = quad.bigrading();
    let exact11: Vec<Vec<Scalar>> = {
        let a11 = Subspace::span(
            calg.dim(2),
            bg.basis(1, 1)
                .iter()
                .map(|mono| {
                    let mut v = vec![Scalar::from_int(0); calg.dim(2)];
                    v[calg.position(*mono)] = Scalar::from_int(1);
                    v
                })
                .collect(),
        );
        a11.intersect(&bc)?
            .basis()
            .iter()
            .map(|v| bg.to_coords(1, 1, &calg.from_coords(2, v)).expect("type (1,1)"))
            .collect()
    };
    let exact_forms_vanish_in_dolbeault = exact11.iter().all(|v| y1.contains_vector(v));
    Ok(InclusionReport {
        e01_page1: e1,
        e01_page2: e2,
        condition,
        y11_page1: y1.dim(),
        y11_page2: y2.dim(),
        y_equal,
        equivalence_holds: condition == y_equal,
        map_well_defined,
        injective,
        exact_11_dim: exact11.len(),
        exact_forms_vanish_in_dolbeault,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::AlmostComplexStructure;
    use crate::lie::LieAlgebraSpec;
    use crate::spectral::page;

    fn sol3(pairs: &[(usize, usize)]) -> AlmostComplexLie {
        let s = LieAlgebraSpec::from_brackets("sol3", 4, &[(1, 2, 2, 1, 1), (1, 3, 3, -1, 1)]).unwrap();
        AlmostComplexLie::new(s, AlmostComplexStructure::from_pairs(4, pairs).unwrap()).unwrap()
    }

    fn abelian() -> AlmostComplexLie {
        AlmostComplexLie::new(LieAlgebraSpec::abelian("R4", 4).unwrap(), AlmostComplexStructure::standard(4).unwrap())
            .unwrap()
    }

    fn phi(idx: &[usize]) -> FormVector {
        FormVector::basis_form(4, idx)
    }

    #[test]
    fn mu_bar_on_integrable_input_is_everything() {
        let ab = abelian();
        for (p, q) in ab.quad.grid() {
            assert_eq!(mu_bar_cohomology(&ab.quad, p, q).unwrap().dim, ab.quad.dim(p, q));
        }
        assert_eq!(mu_bar_cohomology(&ab.quad, 3, 0).unwrap().dim, 0);
        assert_eq!(mu_bar_cohomology(&ab.quad, -1, 0).unwrap().dim, 0);
    }

    #[test]
    fn mu_bar_structure_a() {
        let a = sol3(&[(1, 2), (3, 4)]);
        assert_eq!(mu_bar_cohomology(&a.quad, 1, 1).unwrap().dim, 4);
        // Oracle: rank computation on the two μ̄ matrices around (0,2).
        let out = a.quad.matrix(Component::MuBar, 0, 2);
        let inc = a.quad.matrix(Component::MuBar, 1, 0);
        let dim = a.quad.dim(0, 2) - out.rank() - inc.rank();
        assert_eq!(dim, 0);
        assert_eq!(mu_bar_cohomology(&a.quad, 0, 2).unwrap().dim, dim);
    }

    #[test]
    fn dolbeault_examples() {
        let a = sol3(&[(1, 2), (3, 4)]);
        let h = dolbeault(&a.quad, 1, 1).unwrap();
        assert_eq!(h.dim, 2);
        let printed = [phi(&[1, 4]), phi(&[3, 2])];
        let bg = a.quad.bigrading();
        let with_den = h.representatives.sum(&h.denominator).unwrap();
        let want = Subspace::span(4, printed.iter().map(|f| bg.to_coords(1, 1, f).unwrap()).collect())
            .sum(&h.denominator)
            .unwrap();
        assert_eq!(with_den, want);
        let c = sol3(&[(1, 4), (2, 3)]);
        assert_eq!(dolbeault(&c.quad, 1, 1).unwrap().dim, 4);
        assert_eq!(hodge_numbers(&abelian().quad).unwrap(), vec![vec![1, 2, 1], vec![2, 4, 2], vec![1, 2, 1]]);
    }

    #[test]
    fn dolbeault_matches_page_one() {
        for acl in [sol3(&[(1, 2), (3, 4)]), sol3(&[(1, 3), (2, 4)]), sol3(&[(1, 4), (2, 3)]), abelian()] {
            assert_eq!(hodge_numbers(&acl.quad).unwrap(), page(&acl.quad, 1).unwrap().rows_top_down());
        }
    }

    #[test]
    fn j_invariant_groups() {
        let a = h_plus_minus(&sol3(&[(1, 2), (3, 4)])).unwrap();
        assert_eq!((a.h_plus, a.h_minus), (1, 1));
        let alg = ExteriorAlgebra::new(4);
        let e = |i: &[usize]| FormVector::basis_form(4, i);
        let plus = e(&[1, 4]).sub(&e(&[2, 3])).unwrap();
        let minus = e(&[1, 4]).add(&e(&[2, 3])).unwrap();
        assert!(a.plus_space.contains_vector(&alg.to_coords(&plus)));
        assert!(a.minus_space.contains_vector(&alg.to_coords(&minus)));
        assert!(a.pure && a.full);
        let c = h_plus_minus(&sol3(&[(1, 4), (2, 3)])).unwrap();
        assert_eq!((c.h_plus, c.h_minus), (2, 0));
        assert!(c.pure && c.full);
        let ab = h_plus_minus(&abelian()).unwrap();
        assert_eq!((ab.h_plus, ab.h_minus, ab.pure, ab.full), (4, 2, true, true));
    }

    #[test]
    fn inclusion_on_sol3() {
        let a = inclusion_condition(&sol3(&[(1, 2), (3, 4)]).quad).unwrap();
        assert!(a.condition && a.y_equal && a.equivalence_holds && a.injective && a.map_well_defined);
        let c = inclusion_condition(&sol3(&[(1, 4), (2, 3)]).quad).unwrap();
        assert!(!c.condition && !c.y_equal && c.equivalence_holds);
        assert_eq!((c.e01_page1, c.e01_page2), (2, 1));
        // (A): B² ∩ A^{1,1} = ⟨e12⟩ dies in Dolbeault. (C): B² meets A^{1,1} trivially.
        assert_eq!((a.exact_11_dim, a.exact_forms_vanish_in_dolbeault), (1, true));
        assert_eq!((c.exact_11_dim, c.exact_forms_vanish_in_dolbeault), (0, true));
    }
}
