use super::*;
use crate::hypergraph::Vertex;

#[test]
fn host_counts() {
    let c = HostModel::complete(6, 3).unwrap();
    assert_eq!(c.num_edges(), 20);
    assert_eq!(c.vertex_degree(), 10);
    let p = HostModel::partite(4, 3).unwrap();
    assert_eq!(p.total_vertices(), 12);
    assert_eq!(p.num_edges(), 64);
    assert_eq!(p.vertex_degree(), 16);
    assert!(HostModel::complete(2, 3).is_err());
    assert!(HostModel::partite(0, 2).is_err());
    assert_eq!("partite".parse::<HostKind>().unwrap(), HostKind::Partite);
    assert!("cube".parse::<HostKind>().is_err());
}

#[test]
fn presets() {
    assert_eq!(preset_k_complete(2), 64);
    assert_eq!(preset_k_complete(3), 5832);
    // 1/epsilon = 128 at r=2
    assert_eq!(preset_k_partite(2), 4 * 128 * 128);
    assert_eq!(HostModel::partite(3, 2).unwrap().preset_k(), 65536);
}

#[test]
fn derived_seeds_differ() {
    let s: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(42, i)).collect();
    assert_eq!(s.len(), 1000);
    assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
}

#[test]
fn kout_one_out_complete() {
    let host = HostModel::complete(10, 3).unwrap();
    let s = sample_kout(host, 1, 9).unwrap();
    let m = s.union.num_edges();
    assert!((4..=10).contains(&m), "m={m}");
    assert!(s.union.isolated_vertices().is_empty());
    for (v, chosen) in s.choices.iter().enumerate() {
        assert_eq!(chosen.len(), 1);
        assert!(chosen[0].contains(&(v as Vertex)));
    }
}

#[test]
fn kout_is_deterministic() {
    let host = HostModel::complete(12, 3).unwrap();
    assert_eq!(sample_kout(host, 3, 5).unwrap(), sample_kout(host, 3, 5).unwrap());
    assert_ne!(sample_kout(host, 3, 5).unwrap().union, sample_kout(host, 3, 6).unwrap().union);
}

#[test]
fn kout_partite_edges_cross_blocks() {
    let host = HostModel::partite(5, 3).unwrap();
    let s = sample_kout(host, 4, 1).unwrap();
    assert!(s.union.is_partite());
    for e in s.union.edges() {
        for (i, &v) in e.iter().enumerate() {
            assert_eq!(v as usize / 5, i);
        }
    }
    for (v, chosen) in s.choices.iter().enumerate() {
        assert_eq!(chosen.len(), 4);
        assert!(chosen.windows(2).all(|w| w[0] < w[1]));
        assert!(chosen.iter().all(|e| e.contains(&(v as Vertex))));
    }
}

#[test]
fn kout_whole_link_and_too_large_k() {
    let host = HostModel::complete(5, 2).unwrap();
    let s = sample_kout(host, 4, 3).unwrap();
    assert_eq!(s.union.num_edges(), 10);
    assert!(matches!(sample_kout(host, 5, 3), Err(Error::Input(_))));
}

#[test]
fn uniformity_small_cases() {
    let r = per_vertex_uniformity_check(HostModel::complete(5, 2).unwrap(), 1, 0, 8000, 1).unwrap();
    assert_eq!(r.categories.len(), 4);
    assert_eq!(r.counts.iter().sum::<u64>(), 8000);
    assert!(r.passes(5.0), "{r:?}");

    let r = per_vertex_uniformity_check(HostModel::complete(4, 3).unwrap(), 1, 0, 6000, 2).unwrap();
    assert_eq!(r.categories.len(), 3);
    assert!(r.passes(5.0));

    let r = per_vertex_uniformity_check(HostModel::complete(5, 2).unwrap(), 4, 0, 50, 3).unwrap();
    assert_eq!(r.counts, vec![50]);
    assert!(r.passes(5.0));

    // k-subsets of a larger link through the rejection path
    let r = per_vertex_uniformity_check(HostModel::complete(7, 2).unwrap(), 2, 3, 15000, 4).unwrap();
    assert_eq!(r.categories.len(), 15);
    assert!(r.passes(5.0), "{r:?}");
}

#[test]
fn uniformity_matches_sampler() {
    let host = HostModel::complete(6, 3).unwrap();
    let r = per_vertex_uniformity_check(host, 2, 1, 1, 77).unwrap();
    let s = sample_kout(host, 2, derive_seed(77, 0)).unwrap();
    let hit = r.counts.iter().position(|&c| c == 1).unwrap();
    assert_eq!(r.categories[hit], s.choices[1]);
}

#[test]
fn process_trivial_cases() {
    let t = run_process(3, 3, 0, StopRule::AtT).unwrap();
    assert_eq!(t.edges, vec![vec![0, 1, 2]]);
    assert_eq!(t.stopping_time, Some(1));
    for seed in 0..50 {
        let t = run_process(3, 2, seed, StopRule::AtT).unwrap();
        assert_eq!(t.stopping_time, Some(2));
    }
    assert!(run_process(2, 3, 0, StopRule::AtT).is_err());
    assert!(run_process(4, 2, 0, StopRule::AtStep(7)).is_err());
}

#[test]
fn process_invariants() {
    for seed in 0..20 {
        let trace = run_process(20, 3, seed, StopRule::AtT).unwrap();
        let t = trace.stopping_time.unwrap();
        assert_eq!(t, trace.len());
        assert!(t >= 7);
        let distinct: std::collections::HashSet<_> = trace.edges.iter().collect();
        assert_eq!(distinct.len(), t);
        assert!(trace.prefix(t).unwrap().isolated_vertices().is_empty());
        let before = trace.prefix(t - 1).unwrap().isolated_vertices();
        assert!(!before.is_empty());
        assert!(trace.edges[t - 1].iter().any(|&v| before.contains(v)));
        let marks = trace.marks.as_ref().unwrap();
        assert!(marks.windows(2).all(|w| w[0] < w[1]));
        assert!(marks.iter().all(|&m| m > 0.0 && m < 1.0));
    }
}

#[test]
fn process_runs_to_completion() {
    let trace = run_process(6, 2, 3, StopRule::AtStep(15)).unwrap();
    assert_eq!(trace.len(), 15);
    assert_eq!(trace.prefix(15).unwrap().num_edges(), 15);
    assert!(trace.stopping_time.is_some());
    let again = run_process(6, 2, 3, StopRule::AtStep(4)).unwrap();
    assert_eq!(again.edges[..], trace.edges[..4]);
}

#[test]
fn marks_look_like_order_statistics() {
    // the first mark of N uniforms has mean 1/(N+1)
    let n_edges = binomial(8, 2) as f64;
    let mean: f64 = (0..4000)
        .map(|s| run_process(8, 2, s, StopRule::AtStep(1)).unwrap().marks.unwrap()[0])
        .sum::<f64>()
        / 4000.0;
    assert!((mean - 1.0 / (n_edges + 1.0)).abs() < 0.005, "mean={mean}");
}

#[test]
fn trace_text_round_trip() {
    let trace = run_process(15, 3, 8, StopRule::AtT).unwrap();
    let back = ProcessTrace::from_text(&trace.to_text(), Some(&trace.metadata())).unwrap();
    assert_eq!(back, trace);
    let bare = ProcessTrace::from_text(&trace.to_text(), None).unwrap();
    assert_eq!(bare.stopping_time, trace.stopping_time);
    assert!(threshold_diagnostics(&bare, 0.1, 1.0).is_err());
}

#[test]
fn diagnostics_extremes() {
    let n = 30;
    let trace = run_process(n, 3, 4, StopRule::AtT).unwrap();
    let d = threshold_diagnostics(&trace, 0.1, 1e6).unwrap();
    assert!(d.sigma < 0.0 && d.beta > 1.0);
    assert_eq!(d.w_sigma.len(), n);
    assert_eq!(d.neighborhood.len(), n);
    assert!(d.in_window);
}

#[test]
fn diagnostics_need_marks_through_beta() {
    let n = 60;
    let g = default_slack(n);
    let (_, beta) = threshold_window(n, 3, g);
    let short = run_process(n, 3, 1, StopRule::AtStep(5)).unwrap();
    assert!(threshold_diagnostics(&short, 0.1, g).is_err());
    let trace = run_process(n, 3, 1, StopRule::ThroughMark(beta)).unwrap();
    let d = threshold_diagnostics(&trace, 0.1, g).unwrap();
    assert!(d.w_sigma.iter().all(|v| d.neighborhood.contains(v)));
    assert_eq!(d.lambda_stop, trace.marks.as_ref().unwrap()[trace.stopping_time.unwrap() - 1]);
    assert!(trace.marks.unwrap().iter().filter(|&&m| m <= beta).count() <= trace.edges.len());
}

#[test]
fn binomial_samples() {
    let host = HostModel::partite(3, 3).unwrap();
    assert_eq!(host_edges(host).unwrap().len(), 27);
    assert_eq!(sample_binomial(host, 1.0, 0).unwrap().num_edges(), 27);
    assert_eq!(sample_binomial(host, 0.0, 0).unwrap().num_edges(), 0);
    let c = HostModel::complete(12, 3).unwrap();
    let h = sample_binomial(c, 0.5, 3).unwrap();
    assert_eq!(h, sample_binomial(c, 0.5, 3).unwrap());
    assert!((60..=160).contains(&h.num_edges()));
    assert!(sample_binomial(c, 1.5, 3).is_err());
}
