use acs_cohomology::acs::{verify_square_zero_relations, AlmostComplexLie, AlmostComplexStructure};
use acs_cohomology::corpus::{g_alpha, sol3, SOL3_A};
use acs_cohomology::document::{parse_spec, real_document};
use acs_cohomology::spectral::SpectralSequence;
use acs_cohomology::{de_rham, FormVector, LieAlgebraSpec, Matrix, Monomial, Scalar};
use proptest::prelude::*;

const N: usize = 6;
const M: usize = 3;

fn form(degree: usize) -> impl Strategy<Value = FormVector> {
    let monos: Vec<Monomial> = (0u32..1 << N).filter(|b| b.count_ones() as usize == degree).map(Monomial).collect();
    let k = monos.len();
    prop::collection::vec((-3i64..=3, -3i64..=3), k).prop_map(move |cs| {
        let mut f = FormVector::zero(N, degree);
        for (mono, (re, im)) in monos.iter().zip(cs) {
            f.add_term(*mono, Scalar::complex(re, im));
        }
        f
    })
}

fn pure_form(p: usize, q: usize) -> impl Strategy<Value = FormVector> {
    let monos: Vec<Monomial> = (0u32..1 << N).map(Monomial).filter(|m| m.bidegree(M) == (p, q)).collect();
    prop::collection::vec((-3i64..=3, -3i64..=3), monos.len()).prop_map(move |cs| {
        let mut f = FormVector::zero(N, p + q);
        for (mono, (re, im)) in monos.iter().zip(cs) {
            f.add_term(*mono, Scalar::complex(re, im));
        }
        f
    })
}

/// `S J₀ S⁻¹` for an invertible integer `S`.
fn conjugated_j() -> impl Strategy<Value = AlmostComplexStructure> {
    prop::collection::vec(-2i64..=2, 16).prop_filter_map("singular S", |v| {
        let s = Matrix::from_fn(4, 4, |i, j| Scalar::from_int(v[4 * i + j]));
        let inv = s.inverse()?;
        let j0 = AlmostComplexStructure::from_pairs(4, &SOL3_A).unwrap();
        let j = s.mul(j0.matrix()).unwrap().mul(&inv).unwrap();
        Some(AlmostComplexStructure::new(j).unwrap())
    })
}

fn algebra() -> impl Strategy<Value = LieAlgebraSpec> {
    prop_oneof![Just(sol3()), Just(g_alpha([1, 1, -2])), Just(LieAlgebraSpec::abelian("abelian", 4).unwrap()),]
}

proptest! {
    #[test]
    fn wedge_is_associative(a in form(1), b in form(2), c in form(2)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(2), c in form(3)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap().scale(&Scalar::from_int(-1)));
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn conjugation_commutes_with_wedge(a in form(2), b in form(2)) {
        prop_assert_eq!(a.wedge(&b).unwrap().conjugate(), a.conjugate().wedge(&b.conjugate()).unwrap());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn conjugation_swaps_bidegree(f in pure_form(2, 1)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(f.bidegree(M), Some((2, 1)));
        prop_assert_eq!(f.conjugate().bidegree(M), Some((1, 2)));
    }

    #[test]
    fn document_round_trip(spec in algebra(), j in conjugated_j()) {
        let doc = real_document("random", &spec, &j);
        let back = parse_spec(doc.to_json().as_bytes()).unwrap();
        prop_assert_eq!(&back, &doc);
        let r = back.resolve().unwrap();
        prop_assert_eq!(r.j.matrix(), j.matrix());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_structures_are_consistent(spec in algebra(), j in conjugated_j()) {
        let betti = de_rham(&spec).unwrap().betti();
        let acl = AlmostComplexLie::new(spec, j).unwrap();
        prop_assert!(verify_square_zero_relations(&acl.quad).holds());
        prop_assert_eq!(acl.quad.is_integrable(), acl.nijenhuis_vanishes());
        let ss = SpectralSequence::new(&acl.quad);
        let deg = ss.e_infinity().unwrap();
        prop_assert_eq!(deg.infinity().totals(), betti);
        for page in ss.pages().unwrap() {
            for (p, q) in acl.quad.grid() {
                prop_assert_eq!(page.dim(p, q), page.dim(2 - p, 2 - q));
            }
        }
    }
}
