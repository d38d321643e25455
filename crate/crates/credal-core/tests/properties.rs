//! Property tests for the marginal family: dilation, vertex structure,
//! interval monotonicity, and maximum entropy.

use credal_core::{CredalSet, FiniteDistribution, JointDistribution};
use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn arb_marginal(max_y: usize) -> impl Strategy<Value = FiniteDistribution> {
    prop::collection::vec(0.05..1.0f64, 2..=max_y).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        FiniteDistribution::new(raw.iter().map(|r| r / total).collect()).unwrap()
    })
}

proptest! {
    // Conditioning the marginal family on any observation loses all
    // information about Y: the interval is the whole unit interval.
    #[test]
    fn dilation_to_unit_interval(p_y in arb_marginal(4), x_size in 2usize..=4, y_event in 0usize..4) {
        let c = CredalSet::marginal_family(&p_y, x_size).unwrap();
        let event = [y_event % p_y.support_size()];
        for x in 0..x_size {
            let iv = c.conditional_bounds(&event, x).unwrap();
            prop_assert_eq!(iv.lower, 0.0);
            prop_assert_eq!(iv.upper, 1.0);
        }
        prop_assert!(c.dilation_report(&event).unwrap().dilates);
    }

    // Each vertex concentrates every Y-column on one observation.
    #[test]
    fn vertices_have_one_cell_per_outcome(p_y in arb_marginal(4), x_size in 2usize..=4) {
        let y_size = p_y.support_size();
        let c = CredalSet::marginal_family(&p_y, x_size).unwrap();
        prop_assert_eq!(c.vertices().len(), x_size.pow(y_size as u32));
        for v in c.vertices() {
            let nonzero = v.mass().iter().filter(|&&m| m > 0.0).count();
            prop_assert_eq!(nonzero, y_size);
            prop_assert!(v.y_marginal().approx_eq(&p_y, 1e-12));
        }
    }

    // Removing vertices can only shrink probability intervals.
    #[test]
    fn intervals_shrink_under_vertex_removal(
        p_y in arb_marginal(3),
        x_size in 2usize..=3,
        keep in prop::collection::vec(any::<bool>(), 27),
    ) {
        let c = CredalSet::marginal_family(&p_y, x_size).unwrap();
        let kept: Vec<JointDistribution> = c
            .vertices()
            .iter()
            .zip(keep.iter().cycle())
            .filter(|(_, &k)| k)
            .map(|(v, _)| v.clone())
            .collect();
        prop_assume!(!kept.is_empty());
        let sub = CredalSet::from_vertices(kept, "subset").unwrap();
        let event = [0usize];
        let full = c.event_bounds(&event).unwrap();
        let shrunk = sub.event_bounds(&event).unwrap();
        prop_assert!(shrunk.lower >= full.lower - 1e-12);
        prop_assert!(shrunk.upper <= full.upper + 1e-12);
        for x in 0..x_size {
            if let Ok(si) = sub.conditional_bounds(&event, x) {
                let fi = c.conditional_bounds(&event, x).unwrap();
                prop_assert!(si.lower >= fi.lower - 1e-12);
                prop_assert!(si.upper <= fi.upper + 1e-12);
                prop_assert!(si.lower <= si.upper);
            }
        }
    }
}

// The maxent joint beats random convex mixtures of vertices.
#[test]
fn maxent_beats_random_mixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9ad1);
    for &(p1, x_size) in &[(0.3, 2usize), (0.5, 3), (1.0 / 3.0, 4), (0.8, 2)] {
        let p_y = FiniteDistribution::bernoulli(p1).unwrap();
        let c = CredalSet::marginal_family(&p_y, x_size).unwrap();
        let target = c.max_entropy_joint().unwrap().entropy_bits();
        let nv = c.vertices().len();
        for _ in 0..1000 {
            let mut w: Vec<f64> = (0..nv).map(|_| rng.random::<f64>()).collect();
            let tot: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= tot);
            let mut mass = vec![0.0; x_size * 2];
            for (v, &wi) in c.vertices().iter().zip(&w) {
                for (cell, &m) in mass.iter_mut().zip(v.mass()) {
                    *cell += wi * m;
                }
            }
            let mix = JointDistribution::new(x_size, 2, mass).unwrap();
            assert!(
                mix.entropy_bits() <= target + 1e-9,
                "mixture entropy {} exceeds maxent {}",
                mix.entropy_bits(),
                target
            );
        }
    }
}
