//! Built-in example documents with their expected invariants.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::acs::{block_deformation, deform, AlmostComplexLie, AlmostComplexStructure};
use crate::cohomology::{h_plus_minus, hodge_numbers, inclusion_condition_with};
use crate::document::{matrix_strings, real_document, term, InputDocument, Mode, TermKind};
use crate::error::{Error, Result};
use crate::lie::{de_rham_from, LieAlgebraSpec};
use crate::linalg::Matrix;
use crate::spectral::SpectralSequence;

/// Rows `q = m..0`, columns `p = 0..m`.
pub type Grid = Vec<Vec<usize>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub betti: Option<Vec<usize>>,
    /// `(r, grid)`.
    pub pages: Vec<(usize, Grid)>,
    pub degeneration_stage: Option<usize>,
    /// `(dim H⁺, dim H⁻)`.
    pub h_plus_minus: Option<(usize, usize)>,
    /// `(dim E^{0,1}_1, dim E^{0,1}_2)`.
    pub e01: Option<(usize, usize)>,
    pub inclusion_condition: Option<bool>,
    pub h11: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub key: &'static str,
    pub document: InputDocument,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<AlmostComplexLie> {
        let r = self.document.resolve()?;
        AlmostComplexLie::new(r.spec, r.j)
    }
}

fn r(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn sol3() -> LieAlgebraSpec {
    LieAlgebraSpec::from_brackets("sol3xR", 4, &[(1, 2, 2, 1, 1), (1, 3, 3, -1, 1)]).expect("valid")
}

/// `[e_1, e_j] = α_j e_j` for `j = 2, 3, 4`.
pub fn g_alpha(alpha: [i64; 3]) -> LieAlgebraSpec {
    let b: Vec<_> = (0..3).map(|i| (1, i + 2, i + 2, alpha[i], 1)).collect();
    LieAlgebraSpec::from_brackets("G(alpha)", 4, &b).expect("valid")
}

fn pairs(p: &[(usize, usize)]) -> AlmostComplexStructure {
    AlmostComplexStructure::from_pairs(4, p).expect("valid pairs")
}

pub const SOL3_A: [(usize, usize); 2] = [(1, 2), (3, 4)];
pub const SOL3_B: [(usize, usize); 2] = [(1, 3), (2, 4)];
pub const SOL3_C: [(usize, usize); 2] = [(1, 4), (2, 3)];

/// Class (i): `A₁₂ + A₂₁ = 0`, `B₁₁ = 0`. The sample also has `A₁₂ = 0`;
/// an antisymmetric `A` already degenerates at stage 1.
pub fn deformation_class_i() -> Matrix {
    let z = BigRational::zero;
    block_deformation([[r(1, 10), z()], [z(), z()]], [[z(), z()], [z(), z()]])
}

/// Class (ii): `B₁₁ ≠ 0`.
pub fn deformation_class_ii() -> Matrix {
    let z = BigRational::zero;
    block_deformation([[z(), z()], [z(), z()]], [[r(1, 10), z()], [z(), z()]])
}

/// Deformed `(C)` with the pulled-back metric `(I+L)^{−T}(I+L)^{−1}`.
fn deformed_document(key: &str, l: &Matrix) -> InputDocument {
    let spec = sol3();
    let def = deform(&spec, &pairs(&SOL3_C), l).expect("admissible sample");
    let s = Matrix::identity(4).add(l).expect("square").inverse().expect("invertible");
    let g = s.transpose().mul(&s).expect("square");
    let mut doc = real_document(key, &spec, &def.structure);
    doc.metric = Some(matrix_strings(&g));
    doc
}

/// `dφ¹ = 0`, `dφ² = φ^{11̄}`,
/// `dφ³ = (1−s)/2 φ^{12} + c φ^{12̄} + (1+s)/4 φ^{21̄}`.
pub fn cu_document(key: &str, s: BigRational, c: BigRational) -> InputDocument {
    let fmt = crate::scalar::format_rational;
    let two = r(2, 1);
    let four = r(4, 1);
    let mut d3 = Vec::new();
    let hol = (BigRational::one() - &s) / two;
    if !hol.is_zero() {
        d3.push(term(TermKind::Holomorphic, 1, 2, &fmt(&hol), "0"));
    }
    if !c.is_zero() {
        d3.push(term(TermKind::Mixed, 1, 2, &fmt(&c), "0"));
    }
    let mixed = (BigRational::one() + &s) / four;
    if !mixed.is_zero() {
        d3.push(term(TermKind::Mixed, 2, 1, &fmt(&mixed), "0"));
    }
    InputDocument {
        mode: Mode::Complex,
        name: key.into(),
        dimension: 3,
        brackets: None,
        j: None,
        d_phi: Some(vec![vec![], vec![term(TermKind::Mixed, 1, 1, "1", "0")], d3]),
        metric: None,
    }
}

fn grid(rows: [[usize; 3]; 3]) -> Grid {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Every built-in example.
pub fn corpus() -> Vec<CorpusEntry> {
    let sol3_a_e1 = grid([[0, 0, 1], [2, 2, 2], [1, 0, 0]]);
    let sol3_c_e1 = grid([[0, 1, 1], [2, 4, 2], [1, 1, 0]]);
    let sol3_c_e2 = grid([[0, 1, 1], [1, 2, 1], [1, 1, 0]]);
    let g_e1 = grid([[0, 0, 1], [2, 2, 2], [1, 0, 0]]);
    let g_e2 = grid([[0, 0, 1], [1, 0, 1], [1, 0, 0]]);
    let sol3_betti = Some(vec![1, 2, 2, 2, 1]);
    let g_betti = Some(vec![1, 1, 0, 1, 1]);
    let sol3_a = Expected {
        betti: sol3_betti.clone(),
        pages: vec![(1, sol3_a_e1.clone()), (2, sol3_a_e1.clone())],
        degeneration_stage: Some(1),
        h_plus_minus: Some((1, 1)),
        inclusion_condition: Some(true),
        h11: Some(2),
        ..Default::default()
    };
    let sol3_c = Expected {
        betti: sol3_betti.clone(),
        pages: vec![(1, sol3_c_e1.clone()), (2, sol3_c_e2.clone()), (3, sol3_c_e2.clone())],
        degeneration_stage: Some(2),
        h_plus_minus: Some((2, 0)),
        e01: Some((2, 1)),
        inclusion_condition: Some(false),
        h11: Some(4),
    };
    let g = Expected {
        betti: g_betti.clone(),
        pages: vec![(1, g_e1), (2, g_e2.clone()), (3, g_e2)],
        degeneration_stage: Some(2),
        ..Default::default()
    };
    let cu_s1 = Expected { e01: Some((3, 2)), inclusion_condition: Some(false), ..Default::default() };
    vec![
        CorpusEntry {
            key: "abelian-R4-stdJ",
            document: real_document(
                "abelian-R4-stdJ",
                &LieAlgebraSpec::abelian("R4", 4).expect("valid"),
                &AlmostComplexStructure::standard(4).expect("valid"),
            ),
            expected: Expected {
                betti: Some(vec![1, 4, 6, 4, 1]),
                pages: vec![(1, grid([[1, 2, 1], [2, 4, 2], [1, 2, 1]]))],
                degeneration_stage: Some(1),
                h_plus_minus: Some((4, 2)),
                e01: Some((2, 2)),
                inclusion_condition: Some(true),
                h11: Some(4),
            },
        },
        CorpusEntry {
            key: "sol3-A",
            document: real_document("sol3-A", &sol3(), &pairs(&SOL3_A)),
            expected: sol3_a.clone(),
        },
        CorpusEntry {
            key: "sol3-B",
            document: real_document("sol3-B", &sol3(), &pairs(&SOL3_B)),
            expected: Expected { h_plus_minus: None, ..sol3_a.clone() },
        },
        CorpusEntry {
            key: "sol3-C",
            document: real_document("sol3-C", &sol3(), &pairs(&SOL3_C)),
            expected: sol3_c.clone(),
        },
        CorpusEntry {
            key: "sol3-C-deform-i",
            document: deformed_document("sol3-C-deform-i", &deformation_class_i()),
            expected: Expected {
                betti: sol3_betti.clone(),
                pages: sol3_c.pages.clone(),
                degeneration_stage: Some(2),
                ..Default::default()
            },
        },
        CorpusEntry {
            key: "sol3-C-deform-ii",
            document: deformed_document("sol3-C-deform-ii", &deformation_class_ii()),
            expected: Expected {
                betti: sol3_betti,
                pages: vec![(1, sol3_a_e1)],
                degeneration_stage: Some(1),
                ..Default::default()
            },
        },
        CorpusEntry {
            key: "G-alpha-112-A",
            document: real_document("G-alpha-112-A", &g_alpha([1, 1, -2]), &pairs(&SOL3_A)),
            expected: g.clone(),
        },
        CorpusEntry {
            key: "G-alpha-112-B",
            document: real_document("G-alpha-112-B", &g_alpha([1, 1, -2]), &pairs(&SOL3_B)),
            expected: g,
        },
        CorpusEntry {
            key: "G-alpha-112-C",
            document: real_document("G-alpha-112-C", &g_alpha([1, 1, -2]), &pairs(&SOL3_C)),
            expected: Expected { betti: g_betti, ..Default::default() },
        },
        CorpusEntry {
            key: "cu-nilpotent-s0",
            document: cu_document("cu-nilpotent-s0", BigRational::zero(), r(2, 1)),
            expected: Expected { inclusion_condition: Some(true), ..Default::default() },
        },
        CorpusEntry {
            key: "cu-nilpotent-s1",
            document: cu_document("cu-nilpotent-s1", BigRational::one(), r(1, 1)),
            expected: cu_s1,
        },
    ]
}

/// Finds an entry; `G-alpha-112` names structure (A).
pub fn lookup(key: &str) -> Result<CorpusEntry> {
    let key = if key == "G-alpha-112" { "G-alpha-112-A" } else { key };
    corpus().into_iter().find(|e| e.key == key).ok_or_else(|| {
        let keys: Vec<&str> = corpus().iter().map(|e| e.key).collect();
        Error::Usage(format!("unknown corpus key {key:?}; known: {}", keys.join(", ")))
    })
}

/// One line of an end-to-end comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check<T: std::fmt::Debug + PartialEq>(out: &mut Vec<Check>, what: impl Into<String>, want: &T, got: &T) {
    out.push(Check { what: what.into(), expected: format!("{want:?}"), actual: format!("{got:?}"), pass: want == got });
}

/// Recomputes every invariant listed in the entry's expected block.
pub fn verify_entry(entry: &CorpusEntry) -> Result<Vec<Check>> {
    let acl = entry.build()?;
    let ex = &entry.expected;
    let mut out = Vec::new();
    if let Some(b) = &ex.betti {
        check(&mut out, "betti", b, &de_rham_from(&acl.d).betti());
    }
    let ss = SpectralSequence::new(&acl.quad);
    for (r, g) in &ex.pages {
        check(&mut out, format!("E_{r}"), g, &ss.page(*r)?.rows_top_down());
    }
    if let Some(s) = ex.degeneration_stage {
        check(&mut out, "degeneration stage", &s, &ss.e_infinity()?.stage);
    }
    if let Some(hpm) = ex.h_plus_minus {
        let j = h_plus_minus(&acl)?;
        check(&mut out, "(H+, H-)", &hpm, &(j.h_plus, j.h_minus));
    }
    if ex.e01.is_some() || ex.inclusion_condition.is_some() {
        let inc = inclusion_condition_with(&ss)?;
        if let Some(e) = ex.e01 {
            check(&mut out, "E^{0,1}_1, E^{0,1}_2", &e, &(inc.e01_page1, inc.e01_page2));
        }
        if let Some(c) = ex.inclusion_condition {
            check(&mut out, "E^{0,1}_1 = E^{0,1}_2", &c, &inc.condition);
        }
    }
    if let Some(h) = ex.h11 {
        let hn = hodge_numbers(&acl.quad)?;
        let m = acl.quad.m();
        check(&mut out, "h^{1,1}", &h, &hn[m - 1][1]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique_and_documents_parse() {
        let c = corpus();
        let mut keys: Vec<_> = c.iter().map(|e| e.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), c.len());
        for e in &c {
            let json = e.document.to_json();
            assert_eq!(crate::document::parse_spec(json.as_bytes()).unwrap(), e.document, "{}", e.key);
        }
        assert!(lookup("sol3-A").unwrap().expected.betti == Some(vec![1, 2, 2, 2, 1]));
        assert_eq!(lookup("nope").unwrap_err().exit_code(), 64);
    }

    #[test]
    fn cu_mixed_coefficient_does_not_change_dims() {
        for (s, want) in [(0, (2, 2)), (1, (3, 2))] {
            let mut seen = Vec::new();
            for c in [1, 2] {
                let res = cu_document("cu", r(s, 1), r(c, 1)).resolve().unwrap();
                let acl = AlmostComplexLie::new(res.spec, res.j).unwrap();
                let ss = SpectralSequence::new(&acl.quad);
                let inc = inclusion_condition_with(&ss).unwrap();
                assert_eq!((inc.e01_page1, inc.e01_page2), want);
                seen.push(ss.pages().unwrap().iter().map(|p| p.rows_top_down()).collect::<Vec<_>>());
            }
            assert_eq!(seen[0], seen[1]);
        }
    }

    #[test]
    fn every_entry_matches_its_expected_block() {
        for e in corpus() {
            for c in verify_entry(&e).unwrap() {
                assert!(c.pass, "{}: {} expected {} got {}", e.key, c.what, c.expected, c.actual);
            }
        }
    }
}
