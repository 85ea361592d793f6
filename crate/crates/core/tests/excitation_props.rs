use bosegas_core::exact_excitations::{BranchType, DressedSolver};
use bosegas_core::exact_ground::sound_velocity;

#[test]
fn common_phonon_slope_at_strong_coupling() {
    let g = 3.07725;
    let s = DressedSolver::new(g, 128).unwrap();
    let vs = sound_velocity(g).unwrap();
    let one = s.branch(BranchType::TypeI, 32).unwrap().phonon_slope().unwrap();
    let two = s.branch(BranchType::TypeII, 32).unwrap().phonon_slope().unwrap();
    assert!((one / two - 1.0).abs() < 0.02);
    assert!((one / vs - 1.0).abs() < 0.02 && (two / vs - 1.0).abs() < 0.02);
}

#[test]
fn doubled_resolution_changes_samples_below_tolerance() {
    let g = 0.787094;
    let coarse = DressedSolver::new(g, 128).unwrap();
    let fine = DressedSolver::new(g, 256).unwrap();
    for ty in [BranchType::TypeI, BranchType::TypeII] {
        let a = coarse.branch(ty, 16).unwrap();
        let b = fine.branch(ty, 32).unwrap();
        // Every coarse bare momentum (relative to K) reappears in the doubled set.
        for s in &a.points {
            let t = (s.q - a.k_cutoff) / a.k_cutoff;
            let twin = b
                .points
                .iter()
                .find(|r| ((r.q - b.k_cutoff) / b.k_cutoff - t).abs() < 1e-12)
                .expect("nested sample");
            assert!((s.p - twin.p).abs() < 1e-6, "{ty:?} q {}: p {} vs {}", s.q, s.p, twin.p);
            assert!((s.epsilon - twin.epsilon).abs() < 1e-6);
        }
    }
}

#[test]
fn energies_are_non_negative_and_p_monotone() {
    for &g in &[0.3, 5.0, 40.0] {
        let s = DressedSolver::new(g, 128).unwrap();
        for ty in [BranchType::TypeI, BranchType::TypeII] {
            let b = s.branch(ty, 24).unwrap();
            assert!(b.min_epsilon() > -1e-8, "gamma {g} {ty:?}");
            assert!(b.p_monotone_in_q());
            assert!(b.failures.is_empty());
        }
    }
}
