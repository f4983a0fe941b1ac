use fgcert::abelianize::exponent_vector;
use fgcert::gn::{self, build_gn_with, Convention};
use fgcert::stallings::{is_basis_of_ambient, SubgroupGraph};
use fgcert::{build_gn, Status, Word};

#[test]
fn relation_chain_holds_well_beyond_the_acceptance_range() {
    for n in 0..=10 {
        let g = build_gn(n);
        assert_eq!(g.alphabet.rank(), 3 * (n + 1));
        assert!(gn::verify_relation_chain(&g).passed(), "n={n}");
    }
}

#[test]
fn relation_chain_detects_a_corrupted_word() {
    let mut g = build_gn(3);
    g.c[2] = g.c[2].multiply(&g.a(0)).unwrap();
    let r = gn::verify_relation_chain(&g);
    assert_eq!(r.status, Status::Fail);
    assert!(!r.witnesses.is_empty());
}

#[test]
fn wrong_complement_breaks_the_free_factor_chain() {
    let g = build_gn(3);
    let r = gn::verify_free_factor_chain_with(&g, |k| g.n_basis(k)).unwrap();
    assert_eq!(r.status, Status::Fail);
    let r = gn::verify_free_factor_chain_with(&g, |k| {
        let mut c = gn::free_factor_complement(&g, k);
        c[0] = c[0].pow(2);
        c
    })
    .unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn d_n_abelianizes_to_a_signed_c_0() {
    for n in 1..=12 {
        let g = build_gn(n);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let c0 = exponent_vector(&g.c0());
        assert_eq!(exponent_vector(&g.d[n]), c0.scaled(&sign).unwrap(), "n={n}");
    }
}

#[test]
fn surface_basis_generates_the_whole_group() {
    for n in [2, 4, 6] {
        let g = build_gn(n);
        let rw = g.rewrite.as_ref().unwrap();
        assert!(rw.identity_residue.is_empty() && rw.dblprime_residue.is_empty());
        assert!(is_basis_of_ambient(&rw.new_basis).unwrap());
        let graph = SubgroupGraph::fold(&rw.new_basis).unwrap();
        assert_eq!(graph.vertex_count(), 1);
        assert!(gn::verify_surface_rewrite(&g).unwrap().passed());
    }
}

#[test]
fn only_the_recorded_convention_closes_the_surface_identity() {
    for n in [2, 4, 6] {
        let flipped = build_gn_with(n, Convention::LeftAction);
        assert!(gn::verify_relation_chain(&flipped).passed());
        assert!(!flipped.rewrite.as_ref().unwrap().identity_residue.is_empty());
        assert_eq!(gn::verify_surface_rewrite(&flipped).unwrap().status, Status::Fail);
    }
}

#[test]
fn every_valid_flag_index_certifies() {
    for n in [4, 6, 8] {
        let g = build_gn(n);
        for i in (1..).take_while(|i| 2 * i + 2 <= n) {
            let r = gn::explicit_flag_decomposition(&g, i).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(gn::explicit_flag_decomposition(&g, n).is_err());
        assert!(gn::explicit_flag_decomposition(&g, 0).is_err());
    }
}

#[test]
fn twist_family_grows_the_moved_element() {
    let inst = gn::amalgam_instance();
    let lengths: Vec<usize> = (0..5).map(|n| inst.family(n).unwrap().apply(&inst.element).unwrap().len()).collect();
    assert!(lengths.windows(2).all(|w| w[0] < w[1]), "{lengths:?}");
    let inverse = inst.family(-3).unwrap().compose(&inst.family(3).unwrap()).unwrap();
    assert!(inverse.is_identity());
}

#[test]
fn adjacent_surface_factors_are_not_separated() {
    let g = build_gn(2);
    let r = gn::cross_conjugacy_scan(&g.h_basis(0), &g.h_basis(1), 5).unwrap();
    assert_eq!(r.status, Status::Fail);
    let (x, y) = (
        Word::parse(&r.witnesses[0], &g.alphabet).unwrap(),
        Word::parse(&r.witnesses[1], &g.alphabet).unwrap(),
    );
    assert!(x.is_conjugate(&y).unwrap());
}
