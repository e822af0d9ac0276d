use acsbm::generators::{generate_ppm, generate_sbm, PpmSpec, SbmSpec};
use acsbm::io::{parse_edge_list, write_edge_list};
use proptest::prelude::*;

fn ppm(seed: u64, ratio: f64) -> PpmSpec {
    PpmSpec { n: 100, k: 4, avg_degree: 16.0, ratio, seed }
}

#[test]
fn ppm_mean_degree_is_calibrated() {
    for ratio in [0.05, 0.3, 0.65] {
        let total: f64 = (0..50)
            .map(|s| {
                let g = generate_ppm(&ppm(s, ratio)).unwrap().graph;
                2.0 * g.total_weight() as f64 / g.node_count() as f64
            })
            .sum();
        let avg = total / 50.0;
        assert!((avg - 16.0).abs() <= 0.05 * 16.0, "ratio {ratio}: mean degree {avg}");
    }
}

#[test]
fn ppm_blocks_are_balanced() {
    let planted = generate_ppm(&PpmSpec { n: 102, k: 4, avg_degree: 8.0, ratio: 0.2, seed: 3 }).unwrap();
    assert_eq!(planted.truth.sizes(), &[26, 26, 25, 25]);
    let (p_in, p_out) = (planted.omega.get(0, 0), planted.omega.get(0, 1));
    assert!((p_out / p_in - 0.2).abs() < 1e-12);
}

#[test]
fn sbm_edge_count_within_three_sigma() {
    for seed in 0..20 {
        let planted = generate_sbm(&SbmSpec::new(100, 4, seed)).unwrap();
        let z = planted.truth.assignment();
        let mut expected = 0.0;
        for i in 0..z.len() {
            for j in (i + 1)..z.len() {
                expected += planted.omega.get(z[i], z[j]);
            }
        }
        let got = planted.graph.total_weight() as f64;
        assert!((got - expected).abs() <= 3.0 * expected.sqrt(), "seed {seed}: {got} vs {expected}");
    }
}

#[test]
fn sbm_rates_respect_ranges() {
    for seed in 0..30 {
        let w = generate_sbm(&SbmSpec::new(20, 5, seed)).unwrap().omega;
        for r in 0..5 {
            for s in 0..5 {
                let v = w.get(r, s);
                if r == s {
                    assert!((0.45..=0.55).contains(&v));
                } else {
                    assert!((0.0..=0.4).contains(&v));
                }
            }
        }
    }
}

#[test]
fn planted_rates_are_recovered_from_counts() {
    let planted = generate_sbm(&SbmSpec::new(450, 3, 11)).unwrap();
    let z = planted.truth.assignment();
    let sizes = planted.truth.sizes();
    let mut m = [[0.0f64; 3]; 3];
    for &(u, v, w) in planted.graph.edges() {
        m[z[u]][z[v]] += w as f64;
        if z[u] != z[v] {
            m[z[v]][z[u]] += w as f64;
        }
    }
    for r in 0..3 {
        for s in 0..3 {
            let pairs = if r == s {
                (sizes[r] * (sizes[r] - 1)) as f64 / 2.0
            } else {
                (sizes[r] * sizes[s]) as f64
            };
            let est = m[r][s] / pairs;
            assert!((est - planted.omega.get(r, s)).abs() < 0.03, "({r},{s}) {est} vs {}", planted.omega.get(r, s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), ratio in 0.0f64..1.0) {
        let a = generate_ppm(&PpmSpec { n: 40, k: 4, avg_degree: 6.0, ratio, seed }).unwrap();
        let b = generate_ppm(&PpmSpec { n: 40, k: 4, avg_degree: 6.0, ratio, seed }).unwrap();
        prop_assert_eq!(a.graph.edges(), b.graph.edges());
        let c = generate_sbm(&SbmSpec::new(40, 3, seed)).unwrap();
        let d = generate_sbm(&SbmSpec::new(40, 3, seed)).unwrap();
        prop_assert_eq!(c.graph.edges(), d.graph.edges());
        prop_assert_eq!(c.truth, d.truth);
        prop_assert_eq!(c.omega, d.omega);
    }

    #[test]
    fn generated_graphs_survive_edge_list_round_trip(seed in any::<u64>()) {
        let g = generate_sbm(&SbmSpec::new(30, 3, seed)).unwrap().graph;
        prop_assert!(g.edges().iter().all(|&(u, v, _)| u != v));
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = parse_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(back.node_count(), g.node_count());
        prop_assert_eq!(back.edges(), g.edges());
    }
}
