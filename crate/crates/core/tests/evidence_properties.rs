use belief_ess::{FrameOfDiscernment, MassFunction, Subset};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

/// A frame of 1–4 elements and a normalized mass vector over its non-empty subsets.
fn frame_and_masses() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (1usize..=4).prop_flat_map(|n| {
        let subsets = (1usize << n) - 1;
        (
            Just(n),
            prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], subsets),
        )
    })
}

fn build(n: usize, raw: &[f64]) -> Option<MassFunction<f64>> {
    let total: f64 = raw.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let frame = FrameOfDiscernment::new((0..n).map(|i| format!("e{i}"))).unwrap();
    let assignments = raw
        .iter()
        .enumerate()
        .map(|(k, w)| (Subset::from_bits(k as u32 + 1), w / total));
    Some(MassFunction::new(frame, assignments).unwrap())
}

proptest! {
    #[test]
    fn plausibility_is_dual_of_belief((n, raw) in frame_and_masses()) {
        let Some(m) = build(n, &raw) else { return Ok(()) };
        for a in m.frame().power_set() {
            let complement = m.frame().complement(a).unwrap();
            let pl = m.plausibility(a).unwrap();
            let dual = 1.0 - m.belief(complement).unwrap();
            prop_assert!((pl - dual).abs() <= TOL, "A={a:?}: Pl={pl} 1-Bel(Ā)={dual}");
        }
    }

    #[test]
    fn belief_below_plausibility((n, raw) in frame_and_masses()) {
        let Some(m) = build(n, &raw) else { return Ok(()) };
        for a in m.frame().power_set() {
            prop_assert!(m.belief(a).unwrap() <= m.plausibility(a).unwrap() + TOL);
        }
    }

    #[test]
    fn belief_is_monotone((n, raw) in frame_and_masses()) {
        let Some(m) = build(n, &raw) else { return Ok(()) };
        let all: Vec<Subset> = m.frame().power_set().collect();
        for &a in &all {
            for &b in all.iter().filter(|b| a.is_subset_of(**b)) {
                prop_assert!(m.belief(a).unwrap() <= m.belief(b).unwrap() + TOL);
            }
        }
    }

    #[test]
    fn full_frame_is_certain((n, raw) in frame_and_masses()) {
        let Some(m) = build(n, &raw) else { return Ok(()) };
        let omega = m.frame().full();
        prop_assert_eq!(m.belief(omega).unwrap(), 1.0);
        prop_assert_eq!(m.plausibility(omega).unwrap(), 1.0);
        prop_assert_eq!(m.belief(Subset::EMPTY).unwrap(), 0.0);
        prop_assert_eq!(m.plausibility(Subset::EMPTY).unwrap(), 0.0);
    }
}

#[test]
fn belief_matches_subset_enumeration() {
    // Bel(A) recomputed by walking the whole power set.
    let frame = FrameOfDiscernment::new(["x", "y", "z"]).unwrap();
    let m = MassFunction::from_labels(
        frame.clone(),
        &[
            (&["x"], 0.1),
            (&["x", "y"], 0.2),
            (&["y", "z"], 0.3),
            (&["x", "y", "z"], 0.4),
        ],
    )
    .unwrap();
    for a in frame.power_set() {
        let expected: f64 = frame
            .power_set()
            .filter(|b| !b.is_empty() && b.is_subset_of(a))
            .map(|b| m.mass(b))
            .sum();
        assert!((m.belief(a).unwrap() - expected).abs() < TOL);
    }
    let xy = frame.subset(&["x", "y"]).unwrap();
    assert!((m.belief(xy).unwrap() - 0.3).abs() < TOL);
    assert!((m.plausibility(frame.subset(&["z"]).unwrap()).unwrap() - 0.7).abs() < TOL);
}
