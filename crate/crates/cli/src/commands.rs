//! Table-producing commands. Rows are computed in parallel and collected in
//! grid order, so output is independent of scheduling.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bosegas_core::bogoliubov::{bogoliubov_dispersion, perturbative};
use bosegas_core::exact_excitations::{BranchType, DressedSolver, DEFAULT_Q_POINTS};
use bosegas_core::exact_ground::ExactGround;
use bosegas_core::gaussian::{gaussian_spectrum, gaussian_thermo, solve_condensed};
use bosegas_core::CouplingPoint;
use rayon::prelude::*;

use crate::config::{GammaSet, Method, RunConfig};
use crate::table::{emit, Cell, Table};

/// Coupling of the first excitation figure.
pub const FIG3_GAMMA: f64 = 0.787094;
/// Coupling of the second excitation figure.
pub const FIG4_GAMMA: f64 = 3.07725;

/// A table plus per-cell failure messages.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub table: Table,
    pub warnings: Vec<String>,
}

impl Output {
    /// Fails when no row produced a single number.
    pub fn ensure_some_success(&self) -> Result<()> {
        if self.table.rows.is_empty() || self.table.all_failed() {
            bail!("every point failed:\n  {}", self.warnings.join("\n  "));
        }
        Ok(())
    }
}

fn cell<E: std::fmt::Display>(r: Result<f64, E>, what: &str, gamma: f64, warnings: &mut Vec<String>) -> Cell {
    match r {
        Ok(x) if x.is_finite() => Cell::num(x),
        Ok(x) => {
            warnings.push(format!("{what} at gamma={gamma}: non-finite value {x}"));
            Cell::Num(None)
        }
        Err(e) => {
            warnings.push(format!("{what} at gamma={gamma}: {e}"));
            Cell::Num(None)
        }
    }
}

fn sweep<F>(columns: &[&str], grid: &[f64], row: F) -> Output
where
    F: Fn(f64, &mut Vec<String>) -> Vec<Cell> + Sync,
{
    let rows: Vec<(Vec<Cell>, Vec<String>)> = grid
        .par_iter()
        .map(|&g| {
            let mut w = Vec::new();
            let mut cells = vec![Cell::num(g)];
            cells.extend(row(g, &mut w));
            (cells, w)
        })
        .collect();
    let mut table = Table::new(columns.iter().copied());
    let mut warnings = Vec::new();
    for (cells, w) in rows {
        table.push(cells);
        warnings.extend(w);
    }
    Output { table, warnings }
}

fn point(cfg: &RunConfig, gamma: f64) -> Result<CouplingPoint, bosegas_core::Error> {
    CouplingPoint::from_gamma(cfg.rho, gamma, cfg.temperature)
}

/// `gamma, e_exact, e_gaussian, e_bogoliubov` (energies per particle over `ρ²`).
pub fn cmd_ground(cfg: &RunConfig) -> Result<Output> {
    let exact = ExactGround::new(cfg.nodes)?;
    let gcfg = cfg.gaussian();
    let mut cols = vec!["gamma"];
    for (m, name) in [(Method::Exact, "e_exact"), (Method::Gaussian, "e_gaussian"), (Method::Bogoliubov, "e_bogoliubov")] {
        if cfg.wants(m) {
            cols.push(name);
        }
    }
    Ok(sweep(&cols, &cfg.gamma.grid(), |g, w| {
        let mut row = Vec::new();
        if cfg.wants(Method::Exact) {
            row.push(cell(exact.energy(g), "exact energy", g, w));
        }
        if cfg.wants(Method::Gaussian) {
            let e = point(cfg, g).and_then(|p| solve_condensed(&p, &gcfg)).map(|s| s.e_dimensionless());
            row.push(cell(e, "gaussian energy", g, w));
        }
        if cfg.wants(Method::Bogoliubov) {
            row.push(cell(perturbative(g).map(|r| r.e), "bogoliubov energy", g, w));
        }
        row
    }))
}

/// `gamma, vs_exact, vs_gaussian, vs_bogo_compress, vs_bogo_spectrum` (units of `ρ`).
pub fn cmd_sound(cfg: &RunConfig) -> Result<Output> {
    let exact = ExactGround::new(cfg.nodes)?;
    let gcfg = cfg.gaussian();
    let mut cols = vec!["gamma"];
    if cfg.wants(Method::Exact) {
        cols.push("vs_exact");
    }
    if cfg.wants(Method::Gaussian) {
        cols.push("vs_gaussian");
    }
    if cfg.wants(Method::Bogoliubov) {
        cols.extend(["vs_bogo_compress", "vs_bogo_spectrum"]);
    }
    Ok(sweep(&cols, &cfg.gamma.grid(), |g, w| {
        let mut row = Vec::new();
        if cfg.wants(Method::Exact) {
            row.push(cell(exact.sound_velocity(g), "exact sound velocity", g, w));
        }
        if cfg.wants(Method::Gaussian) {
            let v = gaussian_thermo(g, cfg.rho, cfg.temperature, gcfg).map(|t| t.vs);
            row.push(cell(v, "gaussian sound velocity", g, w));
        }
        if cfg.wants(Method::Bogoliubov) {
            let r = perturbative(g);
            row.push(cell(r.as_ref().map(|r| r.vs_compressibility).map_err(|e| e.clone()), "bogoliubov sound velocity", g, w));
            row.push(cell(r.map(|r| r.vs_spectrum), "bogoliubov spectrum slope", g, w));
        }
        row
    }))
}

/// `gamma, A, B, C, condensate_density, mu, gap, e, residual` of the Gaussian solution.
pub fn cmd_gaussian_detail(cfg: &RunConfig) -> Result<Output> {
    let gcfg = cfg.gaussian();
    let cols = ["gamma", "A", "B", "C", "condensate_density", "mu", "gap", "e", "residual"];
    Ok(sweep(&cols, &cfg.gamma.grid(), |g, w| {
        match point(cfg, g).and_then(|p| solve_condensed(&p, &gcfg)) {
            Ok(s) => [s.a(), s.b(), s.c_kinetic(), s.condensate_density, s.mu, s.gap(), s.e_dimensionless(), s.residual]
                .into_iter()
                .map(Cell::num)
                .collect(),
            Err(e) => {
                w.push(format!("gaussian solve at gamma={g}: {e}"));
                vec![Cell::Num(None); cols.len() - 1]
            }
        }
    }))
}

/// Exact branches at one coupling with the approximate spectra at the same
/// physical momentum: `branch, q, p, epsilon_exact, epsilon_gaussian,
/// epsilon_bogoliubov`, in units `ρ = 1`. Rows are ordered by branch, then `p`.
pub fn cmd_excitations(cfg: &RunConfig, branches: &[BranchType], n_q: usize) -> Result<Output> {
    let GammaSet::Single(gamma) = cfg.gamma else {
        bail!("excitations needs a single --gamma");
    };
    let solver = DressedSolver::new(gamma, cfg.nodes).with_context(|| format!("preparing the exact operator at gamma={gamma}"))?;
    let scaled_t = cfg.temperature / (cfg.rho * cfg.rho);
    let gpoint = CouplingPoint::from_gamma(1.0, gamma, scaled_t)?;
    let gauss = solve_condensed(&gpoint, &cfg.gaussian());
    let mut warnings = Vec::new();
    if let Err(e) = &gauss {
        warnings.push(format!("gaussian solve at gamma={gamma}: {e}"));
    }
    let mut table = Table::new(["branch", "q", "p", "epsilon_exact", "epsilon_gaussian", "epsilon_bogoliubov"]);
    let mut sorted = branches.to_vec();
    sorted.sort();
    sorted.dedup();
    for ty in sorted {
        let qs = solver.q_values(ty, n_q);
        let results: Vec<_> = qs.par_iter().map(|&q| solver.solve(ty, q).map(|s| (s.p, s.epsilon))).collect();
        let branch = solver.assemble(ty, &qs, results)?;
        for (q, msg) in &branch.failures {
            warnings.push(format!("type {} at q={q}: {msg}", ty.as_str()));
        }
        for s in &branch.points {
            let eg = match &gauss {
                Ok(g) => gaussian_spectrum(&gpoint, g.a(), g.b(), &[s.p]).map(|v| v[0].energy),
                Err(e) => Err(e.clone()),
            };
            table.push(vec![
                Cell::Text(ty.as_str().to_string()),
                Cell::num(s.q),
                Cell::num(s.p),
                Cell::num(s.epsilon),
                Cell::from_result(eg),
                Cell::num(bogoliubov_dispersion(s.p, gamma, 1.0)),
            ]);
        }
    }
    Ok(Output { table, warnings })
}

/// Configuration used for figure data: unit density, zero temperature,
/// every method, with the caller's resolution settings.
pub fn figure_config(base: &RunConfig, gamma: GammaSet) -> RunConfig {
    RunConfig {
        rho: 1.0,
        temperature: 0.0,
        gamma,
        methods: RunConfig::default().methods,
        ..base.clone()
    }
}

pub fn figure_table(fig: u8, base: &RunConfig) -> Result<Output> {
    let both = [BranchType::TypeI, BranchType::TypeII];
    match fig {
        1 => cmd_ground(&figure_config(base, GammaSet::default_range())),
        2 => cmd_sound(&figure_config(base, GammaSet::default_range())),
        3 => cmd_excitations(&figure_config(base, GammaSet::Single(FIG3_GAMMA)), &both, DEFAULT_Q_POINTS),
        4 => cmd_excitations(&figure_config(base, GammaSet::Single(FIG4_GAMMA)), &both, DEFAULT_Q_POINTS),
        _ => bail!("unknown figure {fig}; expected 1-4"),
    }
}

pub fn figure_description(fig: u8) -> &'static str {
    match fig {
        1 => "figure 1: ground-state energy e = E/(N rho^2) vs gamma, 40 log-spaced points in [0.05, 20]",
        2 => "figure 2: sound velocity v_s/rho vs gamma, 40 log-spaced points in [0.05, 20]",
        3 => "figure 3: excitation spectra at gamma = 0.787094, momenta in rho, energies in rho^2",
        4 => "figure 4: excitation spectra at gamma = 3.07725, momenta in rho, energies in rho^2",
        _ => "",
    }
}

/// Writes `fig<N>.<ext>` for each requested figure into `outdir`.
pub fn cmd_figures(which: &[u8], outdir: &Path, base: &RunConfig, header: &[String]) -> Result<(Vec<PathBuf>, Vec<String>)> {
    std::fs::create_dir_all(outdir).with_context(|| format!("creating {}", outdir.display()))?;
    let mut figs = which.to_vec();
    figs.sort();
    figs.dedup();
    let mut written = Vec::new();
    let mut warnings = Vec::new();
    for fig in figs {
        let out = figure_table(fig, base)?;
        out.ensure_some_success().with_context(|| format!("figure {fig}"))?;
        let mut meta = header.to_vec();
        meta.push(figure_description(fig).to_string());
        meta.push(format!("rho=1 temperature=0 nodes={} gaussian-tol={:?}", base.nodes, base.tol));
        let text = emit(base.format, &meta, &out.table)?;
        let path = outdir.join(format!("fig{fig}.{}", base.format.extension()));
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        warnings.extend(out.warnings.into_iter().map(|w| format!("figure {fig}: {w}")));
        written.push(path);
    }
    Ok((written, warnings))
}
