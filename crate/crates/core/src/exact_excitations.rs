//! Exact particle-like (type I) and hole-like (type II) excitation branches.
//!
//! For a bare momentum `q` the dressed shift function solves, on `[-K, K]`,
//!
//! ```text
//! 2π J(k) = 2c ∫ J(r) / (c² + (k - r)²) dr - π + 2 atan((q - k)/c)
//! ```
//!
//! giving `p = q + ∫J`, `ε₁ = -μ + q² + 2∫kJ` for `q > K`. The type II
//! function `G` has the opposite inhomogeneity with `p = -q + ∫G`,
//! `ε₂ = μ - q² + 2∫kG` for `|q| < K`. Everything is in units `ρ = 1`:
//! momenta in `ρ`, energies in `ρ²`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{bail_arg, Error, Result};
use crate::exact_ground::{lieb_kernel, ExactGround};
use crate::math::atan;
use crate::numerics::{gauss_legendre, LuFactor, NystromSystem, SolverReport};

/// Type I samples span `q ∈ (K, K + Q_SPAN_FACTOR·K]`.
pub const Q_SPAN_FACTOR: f64 = 3.0;
pub const DEFAULT_Q_POINTS: usize = 64;
/// Largest tolerated fraction of failed samples in a branch.
pub const MAX_FAILURE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchType {
    TypeI,
    TypeII,
}

impl BranchType {
    pub fn as_str(&self) -> &'static str {
        match self {
            BranchType::TypeI => "I",
            BranchType::TypeII => "II",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitationSample {
    pub q: f64,
    pub p: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DressedSolution {
    pub p: f64,
    pub epsilon: f64,
    /// `J(K x_i)` or `G(K x_i)` on the grid nodes.
    pub values: Vec<f64>,
    pub report: SolverReport,
}

/// Everything that does not depend on `q`: the ground state at `γ`, the
/// exact chemical potential and the factorized Nyström operator.
#[derive(Debug, Clone)]
pub struct DressedSolver {
    gamma: f64,
    lambda: f64,
    k_cutoff: f64,
    mu: f64,
    system: NystromSystem,
    lu: LuFactor,
}

impl DressedSolver {
    /// Prepares the operator at `gamma` with base resolution `n_nodes`
    /// (scaled up for weak coupling exactly as the ground-state solver does).
    pub fn new(gamma: f64, n_nodes: usize) -> Result<Self> {
        let ground = ExactGround::new(n_nodes)?;
        let n = ground.nodes_for(gamma);
        let sol = ground.solve(gamma)?;
        let mu = ground.chemical_potential(gamma)?;
        Self::from_parts(gamma, sol.lambda, mu, n)
    }

    /// Builds the operator from an already known `λ(γ)` and `μ/ρ²`.
    pub fn from_parts(gamma: f64, lambda: f64, mu: f64, n: usize) -> Result<Self> {
        if !(gamma > 0.0 && lambda > 0.0 && mu.is_finite()) {
            bail_arg!("need gamma > 0, lambda > 0 and finite mu");
        }
        let grid = gauss_legendre(n, -1.0, 1.0)?;
        let system = NystromSystem::from_fns(grid, lieb_kernel(lambda), |_| 0.0)?;
        let lu = system.factor()?;
        Ok(Self {
            gamma,
            lambda,
            k_cutoff: gamma / lambda,
            mu,
            system,
            lu,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `K/ρ`.
    pub fn k_cutoff(&self) -> f64 {
        self.k_cutoff
    }

    /// `μ/ρ²` fed into the excitation energies.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nodes(&self) -> usize {
        self.system.grid().len()
    }

    /// Scaled inhomogeneity `sign · (π - 2 atan((q - K x)/c)) / 2π`, with
    /// `sign = -1` for `J` and `+1` for `G`.
    fn inhomogeneity(&self, q: f64, sign: f64) -> Vec<f64> {
        let c = self.gamma;
        self.system
            .grid()
            .nodes()
            .iter()
            .map(|&x| sign * (PI - 2.0 * atan((q - self.k_cutoff * x) / c)) / (2.0 * PI))
            .collect()
    }

    fn dressed(&self, q: f64, sign: f64) -> Result<(Vec<f64>, f64, f64, SolverReport)> {
        let rhs = self.inhomogeneity(q, sign);
        let (values, report) = self.system.solve_with(&self.lu, &rhs)?;
        let grid = self.system.grid();
        let k = self.k_cutoff;
        let integral = k * grid.dot(&values);
        let first_moment = k * k * grid.iter().zip(&values).map(|((x, w), v)| w * x * v).sum::<f64>();
        Ok((values, integral, first_moment, report))
    }

    /// Particle branch at bare momentum `q > K`.
    pub fn solve_type1(&self, q: f64) -> Result<DressedSolution> {
        if !(q > self.k_cutoff) {
            return Err(Error::Domain(alloc::format!(
                "type I needs q > K = {}, got {q}",
                self.k_cutoff
            )));
        }
        let (values, integral, moment, report) = self.dressed(q, -1.0)?;
        Ok(DressedSolution {
            p: q + integral,
            epsilon: -self.mu + q * q + 2.0 * moment,
            values,
            report,
        })
    }

    /// Hole branch at bare momentum `|q| < K`.
    pub fn solve_type2(&self, q: f64) -> Result<DressedSolution> {
        if !(q.abs() < self.k_cutoff) {
            return Err(Error::Domain(alloc::format!(
                "type II needs |q| < K = {}, got {q}",
                self.k_cutoff
            )));
        }
        let (values, integral, moment, report) = self.dressed(q, 1.0)?;
        Ok(DressedSolution {
            p: -q + integral,
            epsilon: self.mu - q * q + 2.0 * moment,
            values,
            report,
        })
    }

    /// Unchecked dressed solve of either sign, for identities that need `J`
    /// and `G` at the same `q`.
    pub fn dressed_values(&self, branch: BranchType, q: f64) -> Result<Vec<f64>> {
        let sign = match branch {
            BranchType::TypeI => -1.0,
            BranchType::TypeII => 1.0,
        };
        Ok(self.dressed(q, sign)?.0)
    }

    pub fn solve(&self, branch: BranchType, q: f64) -> Result<DressedSolution> {
        match branch {
            BranchType::TypeI => self.solve_type1(q),
            BranchType::TypeII => self.solve_type2(q),
        }
    }

    /// Bare momenta sampled on a branch, nearest to `K` first. The spacing is
    /// quadratic in the index so the phonon end is resolved, and the set for
    /// `2 n_q` contains the set for `n_q`.
    pub fn q_values(&self, branch: BranchType, n_q: usize) -> Vec<f64> {
        let k = self.k_cutoff;
        (1..=n_q)
            .map(|i| {
                let t = i as f64 / n_q as f64;
                match branch {
                    BranchType::TypeI => k + Q_SPAN_FACTOR * k * t * t,
                    BranchType::TypeII => k - k * t * t,
                }
            })
            .collect()
    }

    /// Samples a whole branch sequentially.
    pub fn branch(&self, branch: BranchType, n_q: usize) -> Result<ExcitationBranch> {
        if n_q < 8 {
            bail_arg!("need at least 8 q samples, got {n_q}");
        }
        let qs = self.q_values(branch, n_q);
        let results = qs.iter().map(|&q| self.solve(branch, q).map(|s| (s.p, s.epsilon)));
        self.assemble(branch, &qs, results)
    }

    /// Collects per-`q` results (computed in any order, given in `qs` order)
    /// into a branch sorted by `p`.
    pub fn assemble<I>(&self, branch: BranchType, qs: &[f64], results: I) -> Result<ExcitationBranch>
    where
        I: IntoIterator<Item = Result<(f64, f64)>>,
    {
        let mut points = Vec::with_capacity(qs.len());
        let mut failures = Vec::new();
        for (&q, r) in qs.iter().zip(results) {
            match r {
                Ok((p, epsilon)) => points.push(ExcitationSample { q, p, epsilon }),
                Err(e) => failures.push((q, alloc::format!("{e}"))),
            }
        }
        if failures.len() as f64 > MAX_FAILURE_FRACTION * qs.len() as f64 {
            return Err(Error::NotConverged {
                what: "excitation branch",
                iterations: qs.len(),
                residual: failures.len() as f64 / qs.len() as f64,
            });
        }
        points.sort_by(|a, b| a.p.total_cmp(&b.p));
        Ok(ExcitationBranch {
            branch,
            gamma: self.gamma,
            points,
            k_cutoff: self.k_cutoff,
            mu_used: self.mu,
            failures,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationBranch {
    pub branch: BranchType,
    pub gamma: f64,
    /// Sorted by increasing `p`.
    pub points: Vec<ExcitationSample>,
    pub k_cutoff: f64,
    pub mu_used: f64,
    pub failures: Vec<(f64, String)>,
}

impl ExcitationBranch {
    /// The three samples closest to `q = K`.
    fn nearest_to_fermi_edge(&self) -> Result<[ExcitationSample; 3]> {
        let mut pts = self.points.clone();
        if pts.len() < 3 {
            return Err(Error::InvalidArgument(alloc::format!(
                "need 3 samples, have {}",
                pts.len()
            )));
        }
        pts.sort_by(|a, b| (a.q - self.k_cutoff).abs().total_cmp(&(b.q - self.k_cutoff).abs()));
        Ok([pts[0], pts[1], pts[2]])
    }

    /// `(p, ε)` linearly extrapolated in `q - K` to `q = K` from the three
    /// samples nearest the edge. Both should vanish.
    pub fn endpoint_extrapolation(&self) -> Result<(f64, f64)> {
        let pts = self.nearest_to_fermi_edge()?;
        let t: [f64; 3] = core::array::from_fn(|i| pts[i].q - self.k_cutoff);
        let p: [f64; 3] = core::array::from_fn(|i| pts[i].p);
        let e: [f64; 3] = core::array::from_fn(|i| pts[i].epsilon);
        Ok((line_intercept(&t, &p), line_intercept(&t, &e)))
    }

    /// Phonon slope `lim ε/p` from a least-squares fit `ε = v p + a p²`
    /// through the three samples nearest the edge.
    pub fn phonon_slope(&self) -> Result<f64> {
        let pts = self.nearest_to_fermi_edge()?;
        let (mut s2, mut s3, mut s4, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for s in &pts {
            let (p, e) = (s.p, s.epsilon);
            s2 += p * p;
            s3 += p * p * p;
            s4 += p * p * p * p;
            b1 += p * e;
            b2 += p * p * e;
        }
        let det = s2 * s4 - s3 * s3;
        if !(det.abs() > 0.0) {
            return Err(Error::NonFinite("phonon slope fit"));
        }
        Ok((b1 * s4 - b2 * s3) / det)
    }

    pub fn min_epsilon(&self) -> f64 {
        self.points.iter().map(|s| s.epsilon).fold(f64::INFINITY, f64::min)
    }

    pub fn max_epsilon(&self) -> f64 {
        self.points.iter().map(|s| s.epsilon).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether `p` is strictly monotone in `q` along the samples.
    pub fn p_monotone_in_q(&self) -> bool {
        let mut by_q = self.points.clone();
        by_q.sort_by(|a, b| a.q.total_cmp(&b.q));
        let up = by_q.windows(2).all(|w| w[1].p > w[0].p);
        let down = by_q.windows(2).all(|w| w[1].p < w[0].p);
        up || down
    }
}

fn line_intercept(t: &[f64; 3], y: &[f64; 3]) -> f64 {
    let n = 3.0;
    let st: f64 = t.iter().sum();
    let sy: f64 = y.iter().sum();
    let stt: f64 = t.iter().map(|v| v * v).sum();
    let sty: f64 = t.iter().zip(y).map(|(a, b)| a * b).sum();
    let slope = (n * sty - st * sy) / (n * stt - st * st);
    (sy - slope * st) / n
}

/// Type I sample at default ground resolution; returns `(p, ε₁, J)`.
pub fn solve_type1(gamma: f64, q: f64, n_nodes: usize) -> Result<(f64, f64, Vec<f64>)> {
    let s = DressedSolver::new(gamma, n_nodes)?.solve_type1(q)?;
    Ok((s.p, s.epsilon, s.values))
}

/// Type II sample; returns `(p, ε₂, G)`.
pub fn solve_type2(gamma: f64, q: f64, n_nodes: usize) -> Result<(f64, f64, Vec<f64>)> {
    let s = DressedSolver::new(gamma, n_nodes)?.solve_type2(q)?;
    Ok((s.p, s.epsilon, s.values))
}

pub fn branch(gamma: f64, branch_type: BranchType, n_q: usize, n_nodes: usize) -> Result<ExcitationBranch> {
    DressedSolver::new(gamma, n_nodes)?.branch(branch_type, n_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_ground::sound_velocity;

    #[test]
    fn tonks_particle_matches_free_shift() {
        let s = DressedSolver::new(1e4, 128).unwrap();
        let (k, c) = (s.k_cutoff(), s.gamma());
        let q = 1.7 * k;
        let sol = s.solve_type1(q).unwrap();
        let grid = gauss_legendre(128, -1.0, 1.0).unwrap();
        let mut p = q;
        let mut moment = 0.0;
        for ((x, w), v) in grid.iter().zip(&sol.values) {
            let j = -0.5 + (atan((q - k * x) / c)) / PI;
            assert!((v - j).abs() < 1e-3, "J({x}) = {v}, closed form {j}");
            p += k * w * j;
            moment += k * k * w * x * j;
        }
        let eps = -s.mu() + q * q + 2.0 * moment;
        assert!((sol.p / p - 1.0).abs() < 2e-3);
        assert!((sol.epsilon / eps - 1.0).abs() < 2e-3);
    }

    #[test]
    fn hole_function_is_negated_particle_function() {
        let s = DressedSolver::new(1.0, 64).unwrap();
        for q in [0.3, 1.1 * s.k_cutoff(), 5.0] {
            let j = s.dressed_values(BranchType::TypeI, q).unwrap();
            let g = s.dressed_values(BranchType::TypeII, q).unwrap();
            assert!(j.iter().zip(&g).all(|(a, b)| a == &-b));
        }
    }

    #[test]
    fn domains_are_enforced() {
        let s = DressedSolver::new(1.0, 64).unwrap();
        let k = s.k_cutoff();
        assert!(matches!(s.solve_type1(0.5 * k), Err(Error::Domain(_))));
        assert!(matches!(s.solve_type1(k), Err(Error::Domain(_))));
        assert!(matches!(s.solve_type2(k), Err(Error::Domain(_))));
        assert!(matches!(s.solve_type2(-1.5 * k), Err(Error::Domain(_))));
        assert!(s.branch(BranchType::TypeI, 4).is_err());
    }

    #[test]
    fn branches_vanish_at_the_edge_with_phonon_slope() {
        let s = DressedSolver::new(1.0, 128).unwrap();
        let vs = sound_velocity(1.0).unwrap();
        for ty in [BranchType::TypeI, BranchType::TypeII] {
            let b = s.branch(ty, 32).unwrap();
            assert!(b.failures.is_empty());
            assert!(b.p_monotone_in_q());
            assert!(b.min_epsilon() > -1e-8);
            let (p0, e0) = b.endpoint_extrapolation().unwrap();
            assert!(p0.abs() < 1e-3 && e0.abs() < 1e-3, "{ty:?}: ({p0}, {e0})");
            let v = b.phonon_slope().unwrap();
            assert!((v / vs - 1.0).abs() < 0.02, "{ty:?}: slope {v}, vs {vs}");
            assert!(b.points.windows(2).all(|w| w[0].p <= w[1].p));
        }
    }

    #[test]
    fn hole_branch_tops_out_at_half_umklapp() {
        let s = DressedSolver::new(2.0, 128).unwrap();
        let top = s.solve_type2(0.0).unwrap();
        assert!((top.p - PI).abs() < 1e-9);
        let b = s.branch(BranchType::TypeII, 16).unwrap();
        assert!((b.max_epsilon() - top.epsilon).abs() < 1e-12);
    }

    #[test]
    fn tonks_hole_branch_is_free_fermion_like() {
        let b = branch(1e4, BranchType::TypeII, 16, 128).unwrap();
        assert!((b.max_epsilon() / (PI * PI) - 1.0).abs() < 0.03);
    }

    #[test]
    fn node_doubling_is_stable() {
        let a = DressedSolver::new(0.787094, 128).unwrap();
        let b = DressedSolver::new(0.787094, 256).unwrap();
        let k = a.k_cutoff();
        for (ty, q) in [(BranchType::TypeI, 1.4 * k), (BranchType::TypeII, 0.5 * k)] {
            let x = a.solve(ty, q).unwrap();
            let y = b.solve(ty, q).unwrap();
            assert!((x.p - y.p).abs() < 1e-6 && (x.epsilon - y.epsilon).abs() < 1e-6);
        }
    }
}
