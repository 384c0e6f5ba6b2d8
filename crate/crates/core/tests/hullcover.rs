mod common;

use proptest::prelude::*;
use xmgraph::hullcover::{
    cover_into_proj, decompose_projective, hull_into_inj, injective_hull, is_essential_epi,
    is_essential_mono, is_injective, is_projective, projective_cover, Essentiality,
    InjectiveCertificate,
};
use xmgraph::{coproduct, GraphMorphism, Sort, XMGraph};

use common::{inj_size, random_instance, source_component_count, standard, unrealized_maps};

#[test]
fn hull_of_initial_is_terminal() {
    for (_, ctx) in common::standard_contexts() {
        let h = injective_hull(&XMGraph::initial(&ctx)).unwrap();
        assert!(h.added_vertex);
        assert_eq!(h.hull.counts(), (1, 1));
    }
}

#[test]
fn terminal_is_injective_and_representables_are_projective() {
    for (name, ctx) in common::standard_contexts() {
        let t = XMGraph::terminal(&ctx);
        assert!(is_injective(&t).unwrap().holds(), "{name}");
        let v = XMGraph::representable(&ctx, Sort::Vertex);
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let (sum, _) = coproduct(&ctx, &[v.clone(), a.clone(), a.clone()]).unwrap();
        assert!(
            is_projective(&v) && is_projective(&a) && is_projective(&sum),
            "{name}"
        );
        let d = decompose_projective(&sum).unwrap();
        assert_eq!((d.isolated.len(), d.generators.len()), (1, 2));
        assert!(d.iso.kind().iso);
    }
}

#[test]
fn injectivity_certificates() {
    let ctx = standard("symmetric-2");
    assert_eq!(
        is_injective(&XMGraph::initial(&ctx)).unwrap(),
        InjectiveCertificate::NoVertex
    );
    let a = XMGraph::representable(&ctx, Sort::Arc);
    match is_injective(&a).unwrap() {
        InjectiveCertificate::Unrealized { map } => {
            assert!(a.arcs().all(|b| a.incidence(b) != map.as_slice()));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn identity_is_essential_both_ways() {
    let ctx = standard("quiver");
    let a = XMGraph::representable(&ctx, Sort::Arc);
    let id = GraphMorphism::identity(&a);
    assert_eq!(is_essential_mono(&id).unwrap(), Essentiality::Essential);
    assert_eq!(is_essential_epi(&id).unwrap(), Essentiality::Essential);
}

/// Over the idempotent monoid a one-vertex graph whose arc is fixed by `c`
/// is a retract of `A̲`, so its cover `A̲ ↠ G` is not essential: the
/// subgraph avoiding the non-fixed arc still maps onto `G`.
#[test]
fn idempotent_cover_of_fixed_loop_is_inessential() {
    let ctx = standard("idempotent-2");
    let g = XMGraph::new(&ctx, 1, &[vec![0, 0]], &[vec![0, 0]]).unwrap();
    let c = projective_cover(&g);
    assert_eq!(c.cover.counts(), (2, 2));
    assert!(!is_essential_epi(&c.projection).unwrap().holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hulls_are_injective_essential_extensions(ctx in 0usize..7, seed in any::<u64>()) {
        let g = random_instance(ctx, seed, 2, 4);
        prop_assume!(inj_size(&g).is_some_and(|n| n <= 50_000));
        let h = injective_hull(&g).unwrap();
        prop_assert!(h.hull.check_laws().is_ok());
        prop_assert!(h.embedding.check().is_ok());
        prop_assert!(h.embedding.kind().mono);
        prop_assert!(is_injective(&h.hull).unwrap().holds());
        prop_assert!(is_essential_mono(&h.embedding).unwrap().holds());
        if g.context().monoid().is_group() && !h.added_vertex {
            prop_assert_eq!(h.added_arcs.len(), unrealized_maps(&g, g.vertex_count()));
        }
        // Hulls are idempotent.
        let again = injective_hull(&h.hull).unwrap();
        prop_assert!(again.added_arcs.is_empty());
        if let Some(into) = hull_into_inj(&g, &h).unwrap() {
            prop_assert!(into.check().is_ok());
            prop_assert!(into.kind().mono);
        }
    }

    #[test]
    fn covers_are_projective_and_epi(ctx in 0usize..7, seed in any::<u64>()) {
        let g = random_instance(ctx, seed, 3, 6);
        let c = projective_cover(&g);
        prop_assert!(c.projection.check().is_ok());
        prop_assert!(c.projection.kind().epi);
        prop_assert!(is_projective(&c.cover));
        prop_assert_eq!(c.isolated.len(), g.isolated_vertices().len());
        prop_assert_eq!(c.generators.len(), source_component_count(&g));
        let into = cover_into_proj(&g, &c);
        prop_assert!(into.check().is_ok());
        prop_assert!(into.kind().mono);
    }

    /// Covers are essential away from the idempotent monoid; see
    /// `idempotent_cover_of_fixed_loop_is_inessential`.
    #[test]
    fn covers_are_essential_over_groups_and_trivial(ctx in 0usize..6, seed in any::<u64>()) {
        let g = random_instance(ctx, seed, 2, 4);
        let c = projective_cover(&g);
        prop_assert!(is_essential_epi(&c.projection).unwrap().holds());
    }

    #[test]
    fn projective_graphs_are_their_own_cover(ctx in 0usize..7, vs in 0usize..3, as_ in 0usize..3) {
        let ctxs = common::standard_contexts();
        let c = &ctxs[ctx].1;
        let parts: Vec<XMGraph> = std::iter::repeat_n(XMGraph::representable(c, Sort::Vertex), vs)
            .chain(std::iter::repeat_n(XMGraph::representable(c, Sort::Arc), as_))
            .collect();
        let (p, _) = coproduct(c, &parts).unwrap();
        prop_assert!(is_projective(&p));
        let cover = projective_cover(&p);
        prop_assert!(cover.projection.kind().iso);
    }
}
