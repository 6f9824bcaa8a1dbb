use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use susyrad::config::Config;
use susyrad::coulomb::{self, CoulombState};
use susyrad::geonium::{self, GeoniumLevel, Species, TrapConfig};
use susyrad::maps::{self, BrokenParameters, CoulombLabel, MapMode};
use susyrad::oscillator::{self, OscillatorState};
use susyrad::qdt::{self, AnharmonicModel, AnharmonicState, DefectModel, DefectState};
use susyrad::radial::{count_sign_changes, linear_grid, log_grid, RadialFunction};
use susyrad::susy::{apply_supercharge, relative_residual, RadialOperator};
use susyrad::{verify, Error};

use crate::output::{Cell, Report};
use crate::ranges::IntRange;
use crate::{
    Cli, Command, Family, MapArgs, Mode, PairFamily, Spacing, SpectrumArgs, SpeciesArg,
    SusyPairArgs, TrapAction, TrapArgs, WavefunctionArgs,
};

const RESIDUAL_TOL: f64 = 1e-8;
const SPECTRUM_TOL: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-12;

/// Runs one command; `Ok(false)` means it completed but reported a failure.
pub fn run(cli: &Cli) -> Result<bool> {
    let config = match &cli.config {
        Some(path) => Some(Config::load(path)?),
        None => None,
    };
    let mut ok = true;
    let report = match &cli.command {
        Command::Spectrum(a) => spectrum(a, config.as_ref())?,
        Command::Wavefunction(a) => wavefunction(a, config.as_ref())?,
        Command::SusyPair(a) => susy_pair(a)?,
        Command::Map(a) => map(a)?,
        Command::Trap(a) => trap(a, config.as_ref())?,
        Command::Verify => {
            let (report, passed) = verify_all();
            ok = passed;
            report
        }
    };
    report.write(cli.format, cli.out.as_deref())?;
    Ok(ok)
}

fn require_config(config: Option<&Config>, family: &str) -> Result<Config> {
    config
        .cloned()
        .ok_or_else(|| anyhow!("the {family} family needs --config or SUSYRAD_CONFIG"))
}

/// The message without the error-kind prefix, for per-row reasons.
fn reason(e: &Error) -> String {
    match e {
        Error::InvalidState(m) | Error::Domain(m) => m.clone(),
        other => other.to_string(),
    }
}

fn coulomb_numbers(q: &crate::QuantumNumbers) -> Result<(Vec<u32>, Vec<u32>)> {
    if q.big_n.is_some() || q.big_l.is_some() {
        bail!("Coulomb-side families take --n and --l, not --N and --L");
    }
    let n = q.n.clone().ok_or_else(|| anyhow!("--n is required"))?;
    Ok((n.0, q.l.clone().unwrap_or(IntRange(vec![0])).0))
}

fn oscillator_numbers(q: &crate::QuantumNumbers) -> Result<(Vec<u32>, Vec<u32>)> {
    if q.n.is_some() || q.l.is_some() {
        bail!("oscillator-side families take --N and --L, not --n and --l");
    }
    let n = q.big_n.clone().ok_or_else(|| anyhow!("--N is required"))?;
    Ok((n.0, q.big_l.clone().unwrap_or(IntRange(vec![0])).0))
}

fn spectrum(a: &SpectrumArgs, config: Option<&Config>) -> Result<Report> {
    let inputs = json!({ "family": format!("{:?}", a.family).to_lowercase(), "dim": a.dim });
    match a.family {
        Family::Coulomb | Family::Defect => {
            let (ns, ls) = coulomb_numbers(&a.numbers)?;
            let model = match a.family {
                Family::Defect => require_config(config, "defect")?.defect_model(a.dim)?,
                _ => DefectModel::new(a.dim)?,
            };
            let mut report = Report::new(
                "spectrum",
                with_numbers(inputs, "n", &ns, "l", &ls),
                &["n", "l", "n_star", "l_star", "energy", "status", "reason"],
            );
            for &n in &ns {
                for &l in &ls {
                    let row = model.modified_numbers(n, l).and_then(|starred| {
                        let e = match a.family {
                            Family::Coulomb => coulomb::coulomb_energy(a.dim, n)?,
                            _ => qdt::rydberg_energy(&model, n, l)?,
                        };
                        Ok((starred, e))
                    });
                    match row {
                        Ok(((n_star, l_star), e)) => report.push(vec![
                            n.into(),
                            l.into(),
                            n_star.into(),
                            l_star.into(),
                            e.into(),
                            "ok".into(),
                            Cell::Empty,
                        ]),
                        Err(e) => report.push(rejected_row(n, l, &e, 7)),
                    }
                }
            }
            Ok(report)
        }
        Family::Oscillator | Family::Anharmonic => {
            let (ns, ls) = oscillator_numbers(&a.numbers)?;
            let model = match a.family {
                Family::Anharmonic => require_config(config, "anharmonic")?.anharmonic_model(a.dim)?,
                _ => AnharmonicModel::new(a.dim)?,
            };
            let mut report = Report::new(
                "spectrum",
                with_numbers(inputs, "N", &ns, "L", &ls),
                &["N", "L", "N_star", "L_star", "energy", "status", "reason"],
            );
            for &n in &ns {
                for &l in &ls {
                    let checked = if l > n {
                        Err(Error::InvalidState(format!(
                            "angular quantum number must satisfy L <= N, got N = {n}, L = {l}"
                        )))
                    } else {
                        model.modified_numbers(n, l)
                    };
                    let energy = checked.and_then(|(n_star, l_star)| {
                        let e = match a.family {
                            Family::Oscillator => oscillator::oscillator_energy(a.dim, n)?,
                            _ => qdt::anharmonic_energy(&model, n, l)?,
                        };
                        Ok((n_star, l_star, e))
                    });
                    match energy {
                        Ok((n_star, l_star, e)) => report.push(vec![
                            n.into(),
                            l.into(),
                            n_star.into(),
                            l_star.into(),
                            e.into(),
                            "ok".into(),
                            Cell::Empty,
                        ]),
                        Err(e) => report.push(rejected_row(n, l, &e, 7)),
                    }
                }
            }
            Ok(report)
        }
        Family::Hydrogen => bail!("use --family coulomb --dim 3 for the hydrogen spectrum"),
    }
}

fn with_numbers(
    mut inputs: serde_json::Value,
    n_name: &str,
    ns: &[u32],
    l_name: &str,
    ls: &[u32],
) -> serde_json::Value {
    inputs[n_name] = json!(ns);
    inputs[l_name] = json!(ls);
    inputs
}

fn rejected_row(n: u32, l: u32, e: &Error, width: usize) -> Vec<Cell> {
    let mut row = vec![n.into(), l.into()];
    row.resize(width - 2, Cell::Empty);
    row.push("rejected".into());
    row.push(reason(e).into());
    row
}

fn single(range: &Option<IntRange>, flag: &str) -> Result<u32> {
    match range.as_ref().map(|r| r.0.as_slice()) {
        Some([v]) => Ok(*v),
        Some(_) => bail!("{flag} takes a single value here"),
        None => bail!("{flag} is required"),
    }
}

fn wavefunction(a: &WavefunctionArgs, config: Option<&Config>) -> Result<Report> {
    if a.points < 2 {
        bail!("--points must be at least 2");
    }
    let grid = match a.spacing {
        Spacing::Linear => linear_grid(a.grid.0, a.grid.1, a.points),
        Spacing::Log => log_grid(a.grid.0, a.grid.1, a.points),
    };
    let q = &a.numbers;
    let family = format!("{:?}", a.family).to_lowercase();
    if a.family.is_oscillator_like() {
        let (n, l) = (single(&q.big_n, "--N")?, single(&q.big_l, "--L")?);
        let inputs = json!({ "family": family, "dim": a.dim, "N": n, "L": l,
            "grid": [a.grid.0, a.grid.1], "points": a.points });
        let mut report = Report::new("wavefunction", inputs, &["Y", "amplitude"]);
        match a.family {
            Family::Oscillator => {
                let s = OscillatorState::new(a.dim, n, l).map_err(state_error)?;
                let scan = linear_grid(1e-4, (2.0 * s.energy()).sqrt() + 6.0, 20_000);
                let ev = s.operator_eigenvalue();
                fill_state(&mut report, &s, &s.radial_operator(), ev, &grid, &scan, s.laguerre_degree())?;
            }
            _ => {
                let model = require_config(config, "anharmonic")?.anharmonic_model(a.dim)?;
                let s = AnharmonicState::new(&model, n, l).map_err(state_error)?;
                let scan = linear_grid(1e-4, (2.0 * s.energy()).sqrt() + 6.0, 20_000);
                let ev = s.operator_eigenvalue();
                fill_state(&mut report, &s, &s.radial_operator(), ev, &grid, &scan, s.laguerre_degree())?;
            }
        }
        return Ok(report);
    }

    let (n, l) = (single(&q.n, "--n")?, single(&q.l, "--l")?);
    if q.big_n.is_some() || q.big_l.is_some() {
        bail!("Coulomb-side families take --n and --l, not --N and --L");
    }
    let dim = if a.family == Family::Hydrogen { 3 } else { a.dim };
    let inputs = json!({ "family": family, "dim": dim, "n": n, "l": l,
        "grid": [a.grid.0, a.grid.1], "points": a.points });
    let coordinate = if a.family == Family::Hydrogen { "r" } else { "y" };
    let mut report = Report::new("wavefunction", inputs, &[coordinate, "amplitude"]);
    match a.family {
        Family::Hydrogen => {
            let s = CoulombState::new(3, n, l).map_err(state_error)?;
            for &r in &grid {
                report.push(vec![r.into(), coulomb::eval_hydrogen_r(n, l, r)?.into()]);
            }
            // R(r) is r⁻¹ times the y = 2r solution
            let y_grid: Vec<f64> = grid.iter().map(|r| 2.0 * r).collect();
            let nu = n as f64;
            let scan = linear_grid(1e-4, 6.0 * nu * nu + 20.0, 20_000);
            add_state_diagnostics(
                &mut report,
                &s,
                &s.radial_operator(),
                s.operator_eigenvalue(),
                &y_grid,
                &scan,
                s.laguerre_degree(),
            )?;
        }
        Family::Coulomb => {
            let s = CoulombState::new(dim, n, l).map_err(state_error)?;
            let nu = n as f64 + s.gamma_shift();
            let scan = linear_grid(1e-4, 6.0 * nu * nu + 20.0, 20_000);
            let ev = s.operator_eigenvalue();
            fill_state(&mut report, &s, &s.radial_operator(), ev, &grid, &scan, s.laguerre_degree())?;
        }
        _ => {
            let model = require_config(config, "defect")?.defect_model(dim)?;
            let s = DefectState::new(&model, n, l).map_err(state_error)?;
            let nu = s.modified().0 + s.gamma_shift();
            let scan = linear_grid(1e-4, 6.0 * nu * nu + 20.0, 20_000);
            let ev = s.operator_eigenvalue();
            fill_state(&mut report, &s, &s.radial_operator(), ev, &grid, &scan, s.laguerre_degree())?;
        }
    }
    Ok(report)
}

fn state_error(e: Error) -> anyhow::Error {
    anyhow!("inadmissible state: {}", reason(&e))
}

fn fill_state<S: RadialFunction>(
    report: &mut Report,
    state: &S,
    op: &RadialOperator,
    eigenvalue: f64,
    grid: &[f64],
    scan: &[f64],
    degree: usize,
) -> Result<()> {
    for &x in grid {
        report.push(vec![x.into(), state.value(x).into()]);
    }
    add_state_diagnostics(report, state, op, eigenvalue, grid, scan, degree)
}

fn add_state_diagnostics<S: RadialFunction>(
    report: &mut Report,
    state: &S,
    op: &RadialOperator,
    eigenvalue: f64,
    grid: &[f64],
    scan: &[f64],
    degree: usize,
) -> Result<()> {
    let residual = relative_residual(op, state, grid, eigenvalue)?;
    report.diagnostic("residual", residual, RESIDUAL_TOL);
    let values: Vec<f64> = scan.iter().map(|&x| state.value(x)).collect();
    report.diagnostic("node_count", count_sign_changes(&values) as f64, 0.0);
    report.diagnostic("laguerre_degree", degree as f64, 0.0);
    Ok(())
}

fn susy_pair(a: &SusyPairArgs) -> Result<Report> {
    let (pair, family) = match a.family {
        PairFamily::Coulomb => (coulomb::susy_pair(a.dim, a.l)?, "coulomb"),
        PairFamily::Oscillator => (oscillator::susy_pair(a.dim, a.l)?, "oscillator"),
    };
    let inputs = json!({ "family": family, "dim": a.dim, "l": a.l, "count": a.count,
        "energy_zero_offset": pair.energy_zero_offset });

    if let Some(iv) = a.potentials {
        if a.points < 2 {
            bail!("--points must be at least 2");
        }
        let mut report = Report::new("susy-pair", inputs, &["x", "v_plus", "v_minus", "difference"]);
        for x in linear_grid(iv.0, iv.1, a.points) {
            report.push(vec![
                x.into(),
                pair.v_plus(x).into(),
                pair.v_minus(x).into(),
                pair.difference(x).into(),
            ]);
        }
        return Ok(report);
    }

    if a.count == 0 {
        bail!("--count must be positive");
    }
    let bosonic = pair.bosonic_spectrum(a.count)?;
    let fermionic = pair.fermionic_spectrum(a.count.saturating_sub(1).max(1))?;
    let mut report = Report::new(
        "susy-pair",
        inputs,
        &["k", "operator_eigenvalue", "bosonic", "fermionic"],
    );
    let mut degeneracy: f64 = 0.0;
    for (k, &b) in bosonic.iter().enumerate() {
        let f = if k == 0 { None } else { fermionic.get(k - 1).copied() };
        if let Some(f) = f {
            degeneracy = degeneracy.max((b - f).abs());
        }
        report.push(vec![
            Cell::Int(k as i64),
            (b - pair.energy_zero_offset).into(),
            b.into(),
            f.into(),
        ]);
    }
    report.diagnostic("bosonic_ground", bosonic[0].abs(), SPECTRUM_TOL);
    report.diagnostic("partner_degeneracy", degeneracy, SPECTRUM_TOL);

    let u = pair.superpotential;
    let annihilation = match a.family {
        PairFamily::Coulomb => {
            let s = CoulombState::new(a.dim, a.l + 1, a.l)?;
            let nu = (a.l + 1) as f64 + s.gamma_shift();
            ground_annihilation(&u, &s, &verify::coulomb_grid(nu))?
        }
        PairFamily::Oscillator => {
            let s = OscillatorState::new(a.dim, a.l, a.l)?;
            ground_annihilation(&u, &s, &verify::oscillator_grid())?
        }
    };
    report.diagnostic("ground_annihilation", annihilation, RESIDUAL_TOL);
    Ok(report)
}

fn ground_annihilation(
    u: &susyrad::susy::Superpotential,
    s: &impl RadialFunction,
    grid: &[f64],
) -> Result<f64> {
    let amp = grid.iter().map(|&x| s.value(x).abs()).fold(0.0, f64::max);
    let a = apply_supercharge(u, s, grid)?;
    Ok(a.iter().map(|v| v.abs()).fold(0.0, f64::max) / amp)
}

fn map(a: &MapArgs) -> Result<Report> {
    let lambdas = a.lambda.values(a.half_steps);
    if lambdas.is_empty() {
        bail!("empty λ range");
    }
    let deltas = a.delta.values(false);
    let big_deltas = a.big_delta.values(false);
    let modes: Vec<MapMode> = match a.mode {
        Mode::Exact => {
            let nonzero = deltas.iter().chain(&big_deltas).any(|v| *v != 0.0);
            if nonzero || a.i != 0 || a.big_i != 0 {
                bail!("--delta, --i, --Delta and --I only apply to --mode broken");
            }
            vec![MapMode::Exact]
        }
        Mode::Broken => deltas
            .iter()
            .flat_map(|&defect| {
                big_deltas.iter().map(move |&anharmonicity| {
                    MapMode::Broken(BrokenParameters {
                        defect,
                        coulomb_shift: a.i,
                        anharmonicity,
                        oscillator_shift: a.big_i,
                    })
                })
            })
            .collect(),
    };
    let source = CoulombLabel {
        dimension: a.d,
        n: a.n,
        l: a.l,
    };
    let inputs = json!({
        "d": a.d, "n": a.n, "l": a.l, "lambda": lambdas,
        "mode": format!("{:?}", a.mode).to_lowercase(),
        "delta": deltas, "i": a.i, "Delta": big_deltas, "I": a.big_i,
    });
    let mut report = Report::new(
        "map",
        inputs,
        &[
            "lambda", "delta", "i", "Delta", "I", "D", "N", "L", "status", "constancy_defect",
            "K", "excluded_points", "reason",
        ],
    );
    let grid = maps::default_grid();
    let mut worst: Option<f64> = None;
    for &lambda in &lambdas {
        for mode in &modes {
            let p = match mode {
                MapMode::Exact => BrokenParameters::default(),
                MapMode::Broken(p) => *p,
            };
            let mut row: Vec<Cell> = vec![
                lambda.into(),
                p.defect.into(),
                p.coulomb_shift.into(),
                p.anharmonicity.into(),
                Cell::Int(p.oscillator_shift as i64),
            ];
            match maps::solve_map_parameters(source, lambda, *mode) {
                Ok(spec) => {
                    row.extend([
                        spec.target.dimension.into(),
                        spec.target.n.into(),
                        spec.target.l.into(),
                    ]);
                    match maps::verify_map_identity(&spec, &grid) {
                        Ok(v) => {
                            worst = Some(worst.map_or(v.constancy_defect, |w| w.max(v.constancy_defect)));
                            row.extend([
                                if v.passed() { "ok" } else { "failed" }.into(),
                                v.constancy_defect.into(),
                                v.k.into(),
                                Cell::Int(v.excluded.len() as i64),
                                Cell::Empty,
                            ]);
                        }
                        Err(e) => row.extend([
                            "unverified".into(),
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Empty,
                            reason(&e).into(),
                        ]),
                    }
                }
                Err(r) => {
                    row.extend(std::iter::repeat_n(Cell::Empty, 3));
                    row.extend([
                        "rejected".into(),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        r.to_string().into(),
                    ]);
                }
            }
            report.push(row);
        }
    }
    if let Some(w) = worst {
        report.diagnostic("max_constancy_defect", w, maps::CONSTANCY_TOL);
    }
    Ok(report)
}

/// Trap parameters from flags, falling back to the `[trap]` section.
struct TrapInputs {
    b: Option<f64>,
    v: Option<f64>,
    d: Option<f64>,
    species: Option<Species>,
}

fn trap_inputs(a: &TrapArgs, config: Option<&Config>) -> Result<TrapInputs> {
    let record = config.and_then(|c| c.trap.as_ref());
    let species = match a.species {
        Some(SpeciesArg::Electron) => Some(Species::Electron),
        Some(SpeciesArg::Proton) => Some(Species::Proton),
        Some(SpeciesArg::Custom) => {
            let charge = a.charge.or(record.and_then(|r| r.charge));
            let mass = a.mass.or(record.and_then(|r| r.mass));
            match (charge, mass) {
                (Some(charge), Some(mass)) => Some(Species::Custom { charge, mass }),
                _ => bail!("--species custom needs --charge and --mass"),
            }
        }
        None => match record {
            Some(r) => Some(r.species()?),
            None => None,
        },
    };
    if a.species != Some(SpeciesArg::Custom) && (a.charge.is_some() || a.mass.is_some()) {
        bail!("--charge and --mass need --species custom");
    }
    Ok(TrapInputs {
        b: a.b.or(record.map(|r| r.magnetic_field)),
        v: a.v.or(record.and_then(|r| r.voltage)),
        d: a.d_trap.or(record.map(|r| r.trap_length)),
        species,
    })
}

impl TrapInputs {
    fn field(&self) -> Result<f64> {
        self.b.ok_or_else(|| anyhow!("magnetic field missing: pass --B or a [trap] section"))
    }

    fn length(&self) -> Result<f64> {
        self.d.ok_or_else(|| anyhow!("trap size missing: pass --d-trap or a [trap] section"))
    }

    fn species(&self) -> Result<Species> {
        self.species
            .ok_or_else(|| anyhow!("species missing: pass --species or a [trap] section"))
    }

    fn config(&self) -> Result<TrapConfig> {
        let v = self.v.ok_or_else(|| anyhow!("voltage missing: pass --V or a [trap] section"))?;
        Ok(TrapConfig::for_species(self.field()?, v, self.length()?, self.species()?)?)
    }

    fn json(&self) -> serde_json::Value {
        let species = self.species.map(|s| match s {
            Species::Electron => json!("electron"),
            Species::Proton => json!("proton"),
            Species::Custom { charge, mass } => json!({ "charge": charge, "mass": mass }),
        });
        json!({ "B_tesla": self.b, "V_volt": self.v, "d_meter": self.d, "species": species })
    }
}

fn trap(a: &TrapArgs, config: Option<&Config>) -> Result<Report> {
    let t = trap_inputs(a, config)?;
    let mut inputs = t.json();
    inputs["action"] = json!(format!("{:?}", a.action).to_lowercase());
    match a.action {
        TrapAction::Frequencies => {
            let f = geonium::trap_frequencies(&t.config()?).context("trap frequencies")?;
            let mut report = Report::new(
                "trap",
                inputs,
                &["omega_c", "omega_z", "f_c_hz", "f_z_hz", "ratio"],
            );
            report.push(vec![
                f.cyclotron.into(),
                f.axial.into(),
                f.cyclotron_hz().into(),
                f.axial_hz().into(),
                (f.cyclotron / f.axial).into(),
            ]);
            Ok(report)
        }
        TrapAction::OperatingPoint => {
            let (b, d, species) = (t.field()?, t.length()?, t.species()?);
            let v = geonium::susy_operating_point(b, d, species.charge(), species.mass())?;
            let f = geonium::trap_frequencies(&TrapConfig::for_species(b, v, d, species)?)?;
            let mut report = Report::new(
                "trap",
                inputs,
                &["B_tesla", "d_meter", "charge", "mass", "V_volt", "omega"],
            );
            report.push(vec![
                b.into(),
                d.into(),
                species.charge().into(),
                species.mass().into(),
                v.into(),
                f.cyclotron.into(),
            ]);
            report.diagnostic("frequency_ratio_error", (f.cyclotron / f.axial - 1.0).abs(), ROUND_TRIP_TOL);
            Ok(report)
        }
        TrapAction::Levels => levels(a, &t, config, inputs),
    }
}

fn levels(
    a: &TrapArgs,
    t: &TrapInputs,
    config: Option<&Config>,
    mut inputs: serde_json::Value,
) -> Result<Report> {
    let ns = &a.big_n.0;
    let max_n = ns.iter().copied().max().unwrap_or(0);
    let model = match (a.big_delta, config) {
        (Some(delta), _) => {
            let mut m = AnharmonicModel::new(2)?;
            for l in 0..=max_n {
                m = m.with_anharmonicity(l, delta, 0)?;
            }
            m
        }
        (None, Some(c)) => c.anharmonic_model(2)?,
        (None, None) => AnharmonicModel::new(2)?,
    };
    // SI energies only when a stable trap is fully specified
    let freqs = t.config().ok().and_then(|c| geonium::trap_frequencies(&c).ok());
    inputs["N"] = json!(ns);
    inputs["L"] = json!(a.big_l.as_ref().map(|r| r.0.clone()));
    inputs["Delta"] = json!(a.big_delta);
    let mut report = Report::new(
        "trap",
        inputs,
        &["N", "L", "Delta", "N_star", "energy_quanta", "energy_joule", "status", "reason"],
    );
    for &n in ns {
        let ls: Vec<u32> = match &a.big_l {
            Some(r) => r.0.clone(),
            None => (n % 2..=n).step_by(2).collect(),
        };
        for l in ls {
            let level = if l > n {
                Err(Error::InvalidState(format!(
                    "angular quantum number must satisfy L <= N, got N = {n}, L = {l}"
                )))
            } else {
                GeoniumLevel::from_model(&model, n, l)
            };
            match level {
                Ok(level) => report.push(vec![
                    n.into(),
                    l.into(),
                    level.anharmonicity.into(),
                    level.n_star.into(),
                    geonium::geonium_energy(&level).into(),
                    freqs.map(|f| level.energy_si(&f)).into(),
                    "ok".into(),
                    Cell::Empty,
                ]),
                Err(e) => report.push(rejected_row(n, l, &e, 8)),
            }
        }
    }
    Ok(report)
}

fn verify_all() -> (Report, bool) {
    let results = verify::run_all();
    let mut report = Report::new(
        "verify",
        json!({}),
        &[
            "criterion", "name", "status", "worst", "tolerance", "checks", "seconds",
            "time_limit", "failures",
        ],
    );
    for r in &results {
        report.push(vec![
            Cell::Int(r.id as i64),
            r.name.into(),
            if r.passed() { "PASS" } else { "FAIL" }.into(),
            if r.measured.is_finite() { Cell::Num(r.measured) } else { Cell::Empty },
            r.tolerance.into(),
            Cell::Int(r.checks as i64),
            r.elapsed.as_secs_f64().into(),
            (r.time_limit.as_secs() as f64).into(),
            if r.failures.is_empty() { Cell::Empty } else { r.failures.join("; ").into() },
        ]);
    }
    (report, results.iter().all(|r| r.passed()))
}
