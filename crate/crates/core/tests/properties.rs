use flopkit::blowup::{fractional_equivalent, villamayor_ideal};
use flopkit::catalogue::{build_spec, Catalogue};
use flopkit::flop::verify_flop;
use flopkit::graph::{contraction_set, enumerate_partial_resolutions, wunram_table};
use flopkit::*;
use proptest::prelude::*;

fn catalogue() -> Catalogue {
    Catalogue::builtin().unwrap()
}

#[test]
fn ranks_add_up_across_syzygy() {
    for e in catalogue().entries {
        let syz = e.mf.syzygy();
        assert_eq!(e.mf.rank() + syz.rank(), e.mf.size(), "{}", e.name());
        assert_eq!(syz.syzygy().phi(), e.mf.phi());
    }
}

#[test]
fn free_summand_is_not_minimal() {
    for e in catalogue().entries {
        let with_free = e.mf.direct_sum(&MatrixFactorisation::trivial(e.mf.f())).unwrap();
        assert!(!with_free.is_minimal(), "{}", e.name());
        assert!(e.mf.is_minimal());
    }
}

// Nodes with the same contraction set give the same module up to twist:
// on A_n these are M_j and M_n+1-j's syzygy.
#[test]
fn syzygy_blows_up_like_the_mirror_node() {
    let cat = catalogue();
    for n in 2..=4u32 {
        let es = cat.on(AdeLabel::A(n));
        for e in &es {
            let mirror = es[n as usize - e.node];
            let i = villamayor_ideal(&e.mf.syzygy(), &e.x).unwrap();
            let j = villamayor_ideal(&mirror.mf, &e.x).unwrap();
            let eq = fractional_equivalent(&i, &j, &e.x, 4).unwrap();
            assert!(eq.is_equivalent(), "A{n} node {}: {i} vs {j}: {eq:?}", e.node);
        }
    }
}

#[test]
fn involution_and_flop_of_flop() {
    let cat = catalogue();
    for spec in &cat.families {
        let d = build_spec(spec).unwrap();
        let twice = d
            .i_n
            .apply_involution(&d.z_var, &d.family)
            .unwrap()
            .apply_involution(&d.z_var, &d.family)
            .unwrap();
        assert_eq!(twice.gens(), d.i_n.gens(), "{}", spec.name);
        assert_eq!(d.nplus.syzygy().phi(), d.n.phi(), "{}", spec.name);
    }
}

#[test]
fn shipped_families() {
    let cat = catalogue();
    let report = |name: &str| verify_flop(&build_spec(cat.family(name).unwrap()).unwrap(), 1, 4).unwrap();

    for name in ["atiyah", "pagoda"] {
        let r = report(name);
        assert!(r.w.small && r.wplus.small && r.w.smooth && r.wplus.smooth, "{name}");
        assert!(r.swap_certified && r.base_change_ok, "{name}");
        assert_eq!(r.length, Some(1));
        assert_eq!(r.length_equals_rank, Some(true));
        assert_eq!(r.table_consistent, Some(true));
    }

    // one curve of the A2 resolution survives; W is small but singular
    let r = report("a2_partial");
    assert!(r.w.small && !r.w.smooth);
    assert!(r.swap_certified && r.base_change_ok);
    assert_eq!(r.length_equals_rank, Some(true));

    // a product: the exceptional locus is a surface
    let r = report("cylinder");
    assert!(!r.w.small);
    assert_eq!(r.w.exceptional_dimension, 2);
    assert!(r.base_change_ok);
}

#[test]
fn table_lengths_are_attained() {
    for l in 1..=6u32 {
        let g = DualGraph::ade(katz_morrison(l).unwrap());
        let z = fundamental_cycle(&g).unwrap();
        assert!(*z.0.iter().max().unwrap() >= l as u64);
        assert!(z.0.contains(&(l as u64)));
    }
}

fn ade_labels() -> Vec<AdeLabel> {
    let mut v: Vec<AdeLabel> = (1..=8).map(AdeLabel::A).collect();
    v.extend((4..=8).map(AdeLabel::D));
    v.extend((6..=8).map(AdeLabel::E));
    v
}

#[test]
fn single_kept_node_is_the_complement() {
    for label in ade_labels() {
        let g = DualGraph::ade(label);
        for j in 1..=g.len() {
            let c = contraction_set(&g, &ChernVector::delta(g.len(), j)).unwrap();
            let kept: Vec<usize> = (1..=g.len()).filter(|k| !c.contains(k)).collect();
            assert_eq!(kept, [j], "{label}");
        }
    }
}

#[test]
fn extreme_partial_resolutions() {
    for label in ade_labels() {
        let g = DualGraph::ade(label);
        let all = enumerate_partial_resolutions(&g).unwrap();
        assert_eq!(all.len(), 1 << g.len());
        let none = all.iter().find(|p| p.kept.is_empty()).unwrap();
        assert_eq!(none.residual, [label]);
        let full = all.iter().find(|p| p.kept.len() == g.len()).unwrap();
        assert!(full.residual.is_empty());
        // rank table has one entry per node
        assert_eq!(wunram_table(&g).unwrap().len(), g.len());
    }
}

fn small_poly() -> impl Strategy<Value = Poly> {
    let ring = Ring::new(["x", "y"]).unwrap();
    prop::collection::vec((0u16..3, 0u16..3, -3i64..=3), 1..4).prop_map(move |terms| {
        Poly::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(a, b, c)| (Monomial::from_exps(&[a, b]), Rational::from_integer(c.into()))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_lie_in_principal_ideals(p in small_poly(), q in small_poly()) {
        prop_assume!(!p.is_zero());
        let i = Ideal::new(p.ring(), vec![p.clone()]).unwrap();
        prop_assert!(i.contains(&(&p * &q)));
    }

    #[test]
    fn printed_polys_parse_back(p in small_poly()) {
        let back = p.ring().parse(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn normal_form_is_reduced(p in small_poly(), q in small_poly(), r in small_poly()) {
        let i = Ideal::new(p.ring(), vec![q, r]).unwrap();
        let nf = i.normal_form(&p);
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert!(i.contains(&(&p - &nf)));
    }
}
