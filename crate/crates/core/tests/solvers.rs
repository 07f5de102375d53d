mod common;

use std::collections::BTreeMap;

use common::*;
use mci_core::cga::{build_model, full_bipartition_oracle, FULL_BIPARTITION_LIMIT};
use mci_core::cuts::all_bipartition_cuts;
use mci_core::flow::{build_flow_model, disconnection_certificate, flow_constraint_count, flow_witness, FlowWitness};
use mci_core::{solve_flow_baseline, solve_mci, Hypergraph, SolutionGraph, Strategy};
use proptest::prelude::*;

/// Conservation, capacity and sign rows of hyperedge `s`, evaluated
/// directly from their definition.
fn flow_rows_hold(g: &SolutionGraph, s: &[usize], root: usize, flows: &[((usize, usize), i64)]) -> bool {
    let mut f: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &(arc, x) in flows {
        if !s.contains(&arc.0) || !s.contains(&arc.1) || x < 0 {
            return false;
        }
        *f.entry(arc).or_default() += x;
    }
    let get = |u: usize, v: usize| f.get(&(u, v)).copied().unwrap_or(0);
    for &v in s.iter().filter(|&&v| v != root) {
        let net: i64 = s.iter().map(|&w| get(w, v) - get(v, w)).sum();
        if net != -1 {
            return false;
        }
    }
    let edges = pairs_of(g);
    for &u in s {
        for &v in s.iter().filter(|&&v| v > u) {
            let x = i64::from(edges.contains(&(u, v)));
            if get(u, v) + get(v, u) > (s.len() as i64 - 1) * x {
                return false;
            }
        }
    }
    true
}

fn witness_case(g: &SolutionGraph, s: &[usize], root: usize) -> Result<(), TestCaseError> {
    let connected = induces_connected(g.n(), &pairs_of(g), s);
    match flow_witness(g, s, root).unwrap() {
        FlowWitness::Flow(flows) => {
            prop_assert!(connected);
            prop_assert!(flow_rows_hold(g, s, root, &flows));
        }
        FlowWitness::Disconnected => {
            prop_assert!(!connected);
            let c = disconnection_certificate(g, s, root).unwrap();
            prop_assert!(!c.is_empty() && !c.contains(&root));
            prop_assert!(c.iter().all(|v| s.contains(v)));
            for &u in &c {
                for &v in s.iter().filter(|v| !c.contains(v)) {
                    prop_assert!(!g.contains(mci_core::Edge::new(u, v)));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cga_matches_brute_force(h in arb_hypergraph(2..=7, 7, 5), k in 1u8..=6) {
        let run = solve_mci(&h, Strategy::from_number(k).unwrap(), None).unwrap();
        prop_assert!(run.solved);
        let g = run.graph.unwrap();
        prop_assert!(graph_feasible(&h, &pairs_of(&g)));
        prop_assert!(g.is_subgraph_of(&h.support_graph()));
        prop_assert_eq!(g.edge_count(), brute_force_minimum(&h));
        prop_assert!(run.stats.final_constraint_count >= h.m());
        prop_assert!(run.stats.iterations >= 1);
    }

    #[test]
    fn flow_baseline_matches_brute_force(h in arb_hypergraph(2..=7, 6, 5)) {
        let run = solve_flow_baseline(&h, None).unwrap();
        let g = run.graph.unwrap();
        prop_assert!(graph_feasible(&h, &pairs_of(&g)));
        prop_assert_eq!(g.edge_count(), brute_force_minimum(&h));
        prop_assert_eq!(run.stats.final_constraint_count, flow_constraint_count(&h));
    }

    #[test]
    fn full_bipartition_model_matches_brute_force(h in arb_hypergraph(2..=6, 5, 5)) {
        let g = full_bipartition_oracle(&h).unwrap();
        prop_assert!(graph_feasible(&h, &pairs_of(&g)));
        prop_assert_eq!(g.edge_count(), brute_force_minimum(&h));
    }

    #[test]
    fn full_bipartition_model_is_exact(h in arb_hypergraph(2..=5, 4, 5)) {
        let cuts = all_bipartition_cuts(&h, FULL_BIPARTITION_LIMIT).unwrap();
        let (model, vars, _) = build_model(&h, &cuts).unwrap();
        let pairs = support_pairs(&h);
        for mask in 0..1u64 << pairs.len() {
            let chosen = select(&pairs, mask);
            let mut a = vec![0i64; model.var_count()];
            for &(u, v) in &chosen {
                a[vars.var(mci_core::Edge::new(u, v)).unwrap().index()] = 1;
            }
            prop_assert_eq!(model.is_satisfied(&a), graph_feasible(&h, &chosen), "{:?}", chosen);
        }
    }

    #[test]
    fn flow_witness_iff_connected(g in arb_graph(8), s in proptest::sample::subsequence((1..=8).collect::<Vec<_>>(), 1..=7), pick in any::<proptest::sample::Index>()) {
        let root = s[pick.index(s.len())];
        witness_case(&g, &s, root)?;
    }
}

#[test]
fn flow_model_sizes() {
    let h = Hypergraph::new(4, vec![vec![1, 2, 3], vec![2, 3, 4], vec![1, 4]]).unwrap();
    let fm = build_flow_model(&h).unwrap();
    assert_eq!(fm.model.constraint_count(), flow_constraint_count(&h));
    assert_eq!(flow_constraint_count(&h), 3 + (2 + 2 + 1) + (3 + 3 + 1));
    assert_eq!(fm.binary_count(), support_pairs(&h).len());
    assert_eq!(fm.continuous_count(), 2 * (3 + 3 + 1));
}

#[test]
fn strategies_agree_on_larger_instances() {
    use mci_core::{generate_instance, Scenario};
    for t in 1..=5 {
        let sc = Scenario::new(10, 1, t, 4, 77).unwrap();
        for i in 0..sc.count {
            let h = generate_instance(&sc, i).unwrap();
            let costs: Vec<_> = Strategy::all().map(|s| solve_mci(&h, s, None).unwrap().cost().unwrap()).collect();
            assert!(costs.windows(2).all(|w| w[0] == w[1]), "type {t} #{i}: {costs:?}");
            let flow = solve_flow_baseline(&h, None).unwrap().cost().unwrap();
            assert_eq!(flow, costs[0]);
        }
    }
}
