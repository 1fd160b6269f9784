use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use spincurrent::cdt::{divergence_diagnostic, CurrentContext};
use spincurrent::cube::{write_cube, CubeBox};
use spincurrent::data::{atomic_number, element_symbol, isotope_label};
use spincurrent::field::ReducedSource;
use spincurrent::grid::GridOptions;
use spincurrent::ingest::{read_fchk, read_generalized_density};
use spincurrent::observables::{
    chemical_shift, combine_with_orbital, curie_magnetizability, hyperfine as hyperfine_tensor, resolve_g_factor,
    shielding_density, shielding_prefactor, spin_magnetizability, spin_shielding,
};
use spincurrent::thermo::{dissociation_degree, equilibrium_constant, mixture_chi};
use spincurrent::{Mode, PipelineOptions, Prepared, Quality, SpinStatistics, StatisticsMode, Unit};

use crate::config::{parse_assignments, FileConfig, Resolved};
use crate::report;
use crate::{Common, DiagnoseArgs, HyperfineArgs, MagnetizabilityArgs, MapArgs, ShieldingArgs, ThermoArgs};

const DEFAULT_TEMP: f64 = 298.15;

/// A loaded molecule with everything resolved from flags and config.
struct Session {
    prep: Prepared,
    stats: SpinStatistics,
    statistics: StatisticsMode,
    out: PathBuf,
    cfg: FileConfig,
    resolved: Resolved,
}

fn element(z: u32) -> &'static str {
    element_symbol(z).unwrap_or("?")
}

fn setup_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| anyhow!("setting up {n} threads: {e}"))?;
    }
    Ok(())
}

fn element_key(key: &str) -> Result<u32> {
    key.parse::<u32>()
        .ok()
        .or_else(|| atomic_number(key))
        .ok_or_else(|| anyhow!("unknown element `{key}`"))
}

fn open(command: &str, c: &Common) -> Result<Session> {
    let cfg = FileConfig::load(c.config.as_deref())?;
    let mut resolved = Resolved::new(command);
    let threads = c.threads.or(cfg.threads);
    setup_threads(threads)?;
    resolved.set("threads", threads);

    let input = c
        .input
        .clone()
        .or_else(|| cfg.input.clone())
        .ok_or_else(|| anyhow!("no input: pass --input or set `input` in the config"))?;
    let (system, mut density) = read_fchk(&input).with_context(|| format!("reading {}", input.display()))?;
    resolved.set("input", &input);
    resolved.set("input_sha256", report::file_hash(&input)?);
    if let Some(path) = c.density.clone().or_else(|| cfg.density.clone()) {
        density = read_generalized_density(&path, system.nbf()).with_context(|| format!("reading {}", path.display()))?;
        resolved.set("density", &path);
        resolved.set("density_sha256", report::file_hash(&path)?);
    }

    let mode: Mode = c.mode.clone().or_else(|| cfg.mode.clone()).unwrap_or_else(|| "sr".into()).parse()?;
    let quality: Quality = c.grid.clone().or_else(|| cfg.grid.clone()).unwrap_or_else(|| "default".into()).parse()?;
    let temp = c.temp.or(cfg.temp).unwrap_or(DEFAULT_TEMP);
    let spin = c.spin.or(cfg.spin).unwrap_or_else(|| system.spin());
    let stats = SpinStatistics::new(spin, temp)?;
    let statistics = match c.statistics.clone().or_else(|| cfg.statistics.clone()).as_deref() {
        None | Some("linear") => StatisticsMode::Linear,
        Some("exact") => StatisticsMode::Exact { field: c.field_strength.or(cfg.field_strength).unwrap_or(1.0) },
        Some(other) => bail!("unknown statistics `{other}` (linear, exact)"),
    };

    let mut radius_map = cfg.radius.clone();
    radius_map.extend(parse_assignments(&c.radius, "radius")?);
    let radii = radius_map
        .iter()
        .map(|(k, &v)| Ok((element_key(k)?, v)))
        .collect::<Result<HashMap<u32, f64>>>()?;
    let allow_radius_fallback = c.allow_radius_fallback || cfg.allow_radius_fallback.unwrap_or(false);
    let grid = GridOptions { quality, radii, allow_radius_fallback };

    resolved.set("mode", mode.to_string());
    resolved.set("grid", quality.to_string());
    resolved.set("temperature_K", temp);
    resolved.set("spin", spin);
    resolved.set(
        "statistics",
        match statistics {
            StatisticsMode::Linear => json!("linear"),
            StatisticsMode::Exact { field } => json!({ "exact_field_T": field }),
        },
    );
    resolved.set("radius", &radius_map);
    resolved.set("allow_radius_fallback", allow_radius_fallback);

    let prep = Prepared::new(system, &density, &PipelineOptions { mode, grid, erf_table: None })?;
    let out = c.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    Ok(Session { prep, stats, statistics, out, cfg, resolved })
}

fn summary(s: &Session) -> Value {
    let r = s.prep.reduced();
    json!({
        "atoms": s.prep.system.atoms.iter().map(|a| json!({
            "element": element(a.z),
            "mass_number": a.mass_number,
            "position_bohr": [a.position.x, a.position.y, a.position.z],
        })).collect::<Vec<_>>(),
        "grid_points": s.prep.grid.len(),
        "electrons": r.electrons,
        "effective_spin": r.s_eff,
        "spin_integrals": [r.integrals.x, r.integrals.y, r.integrals.z],
    })
}

fn select_nuclei(flag: &[usize], cfg: &Option<Vec<usize>>, n_atoms: usize) -> Result<Vec<usize>> {
    let chosen = if !flag.is_empty() {
        flag.to_vec()
    } else {
        cfg.clone().unwrap_or_else(|| (1..=n_atoms).collect())
    };
    chosen
        .into_iter()
        .map(|i| {
            if i == 0 || i > n_atoms {
                bail!("nucleus {i} out of range 1..={n_atoms}");
            }
            Ok(i - 1)
        })
        .collect()
}

fn parse_numbers(tokens: &[&str], path: &Path) -> Result<Vec<f64>> {
    tokens
        .iter()
        .map(|t| t.parse::<f64>().with_context(|| format!("{}: bad number `{t}`", path.display())))
        .collect()
}

fn tensor_from(values: &[f64], path: &Path) -> Result<Matrix3<f64>> {
    match values.len() {
        1 => Ok(Matrix3::from_diagonal_element(values[0])),
        9 => Ok(Matrix3::from_row_slice(values)),
        n => bail!("{}: expected 1 or 9 numbers per tensor, got {n}", path.display()),
    }
}

fn data_lines(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

/// `<nucleus> <1 or 9 numbers>` per line.
fn read_orbital_per_nucleus(path: &Path) -> Result<BTreeMap<usize, Matrix3<f64>>> {
    let mut out = BTreeMap::new();
    for line in data_lines(path)? {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let idx: usize = toks[0].parse().with_context(|| format!("{}: bad nucleus `{}`", path.display(), toks[0]))?;
        out.insert(idx, tensor_from(&parse_numbers(&toks[1..], path)?, path)?);
    }
    Ok(out)
}

fn read_orbital_single(path: &Path) -> Result<Matrix3<f64>> {
    let lines = data_lines(path)?;
    let toks: Vec<&str> = lines.iter().flat_map(|l| l.split_whitespace()).collect();
    tensor_from(&parse_numbers(&toks, path)?, path)
}

fn warn_soc_shielding() {
    log::warn!("including the spin-orbit current: its Biot-Savart integral diverges near the nucleus");
}

pub fn shielding(a: ShieldingArgs) -> Result<()> {
    let mut s = open("shielding", &a.common)?;
    let with_soc = a.with_soc_shielding || s.cfg.with_soc_shielding.unwrap_or(false);
    if with_soc {
        warn_soc_shielding();
    }
    let nuclei = select_nuclei(&a.nuclei, &s.cfg.nuclei, s.prep.system.atoms.len())?;
    let orbital_path = a.orbital.clone().or_else(|| s.cfg.orbital.clone());
    let orbital = orbital_path.as_deref().map(read_orbital_per_nucleus).transpose()?;
    let reference = a.reference.or(s.cfg.reference);
    s.resolved.set("nuclei", nuclei.iter().map(|i| i + 1).collect::<Vec<_>>());
    s.resolved.set("with_soc_shielding", with_soc);
    s.resolved.set("orbital", &orbital_path);
    s.resolved.set("reference_ppm", reference);

    let cg = s.prep.current_grid()?;
    println!(
        "spin shielding (ppm), mode {}, T = {} K, S = {}",
        s.prep.mode, s.stats.t, s.stats.s
    );
    println!("{:>10} {:>14} {:>14} {:>14} {:>14} {:>12}", "nucleus", "iso", "zee", "soc", "orbital", "shift");
    let mut rows = vec![];
    for &i in &nuclei {
        let atom = &s.prep.system.atoms[i];
        let mut t = spin_shielding(&cg, &atom.position, &s.stats, s.statistics, with_soc);
        t.nucleus = Some(i);
        if let Some(orb) = orbital.as_ref().and_then(|o| o.get(&(i + 1))) {
            t = combine_with_orbital(&t, orb, Unit::Ppm)?;
        }
        let shift = reference.map(|r| chemical_shift(r, t.iso()));
        let iso_of = |m: &Option<Matrix3<f64>>| m.map(|m| format!("{:14.4}", m.trace() / 3.0)).unwrap_or(format!("{:>14}", "-"));
        println!(
            "{:>10} {:14.4} {:14.4} {} {} {:>12}",
            format!("{}{}", element(atom.z), i + 1),
            t.iso(),
            t.zee.trace() / 3.0,
            iso_of(&t.soc),
            iso_of(&t.orbital),
            shift.map(|d| format!("{d:.4}")).unwrap_or("-".into())
        );
        rows.push(json!({
            "nucleus": i + 1,
            "element": element(atom.z),
            "isotope": isotope_label(atom.z, atom.mass_number),
            "shielding": report::tensor(&t),
            "shift_ppm": shift,
        }));
    }
    let results = json!({ "system": summary(&s), "nuclei": rows });
    let path = report::write(&s.out, &s.resolved, results)?;
    println!("results written to {}", path.display());
    Ok(())
}

pub fn hyperfine(a: HyperfineArgs) -> Result<()> {
    let mut s = open("hyperfine", &a.common)?;
    let with_soc = a.with_soc_shielding || s.cfg.with_soc_shielding.unwrap_or(false);
    if with_soc {
        warn_soc_shielding();
    }
    let nuclei = select_nuclei(&a.nuclei, &s.cfg.nuclei, s.prep.system.atoms.len())?;
    let mut gi = s.cfg.gi.clone();
    gi.extend(parse_assignments(&a.common.gi, "gi")?);
    let overrides: HashMap<String, f64> = gi.iter().map(|(k, &v)| (k.clone(), v)).collect();
    // resolve every g-factor before the expensive part
    let g: Vec<f64> = nuclei
        .iter()
        .map(|&i| {
            let atom = &s.prep.system.atoms[i];
            resolve_g_factor(atom.z, atom.mass_number, &overrides)
                .with_context(|| format!("nucleus {} ({})", i + 1, element(atom.z)))
        })
        .collect::<Result<_>>()?;
    s.resolved.set("nuclei", nuclei.iter().map(|i| i + 1).collect::<Vec<_>>());
    s.resolved.set("with_soc_shielding", with_soc);
    s.resolved.set("gi", &gi);

    let cg = s.prep.current_grid()?;
    println!("hyperfine coupling (MHz), mode {}", s.prep.mode);
    println!("{:>10} {:>10} {:>12} {:>14} {:>14} {:>14}", "nucleus", "isotope", "g_I", "A_iso", "zee", "soc");
    let mut rows = vec![];
    for (&i, &g_i) in nuclei.iter().zip(&g) {
        let atom = &s.prep.system.atoms[i];
        let mut t = hyperfine_tensor(&cg, &atom.position, g_i, with_soc);
        t.nucleus = Some(i);
        println!(
            "{:>10} {:>10} {:12.6} {:14.4} {:14.4} {:>14}",
            format!("{}{}", element(atom.z), i + 1),
            isotope_label(atom.z, atom.mass_number),
            g_i,
            t.iso(),
            t.zee.trace() / 3.0,
            t.soc.map(|m| format!("{:.4}", m.trace() / 3.0)).unwrap_or("-".into())
        );
        rows.push(json!({
            "nucleus": i + 1,
            "element": element(atom.z),
            "isotope": isotope_label(atom.z, atom.mass_number),
            "g_factor": g_i,
            "hyperfine": report::tensor(&t),
        }));
    }
    let results = json!({ "system": summary(&s), "nuclei": rows });
    let path = report::write(&s.out, &s.resolved, results)?;
    println!("results written to {}", path.display());
    Ok(())
}

pub fn magnetizability(a: MagnetizabilityArgs) -> Result<()> {
    let mut s = open("magnetizability", &a.common)?;
    let include_soc = !(a.no_soc || s.cfg.no_soc.unwrap_or(false));
    let orbital_path = a.orbital.clone().or_else(|| s.cfg.orbital.clone());
    s.resolved.set("include_soc", include_soc);
    s.resolved.set("orbital", &orbital_path);

    let cg = s.prep.current_grid()?;
    let mut t = spin_magnetizability(&cg, &s.stats, s.statistics, include_soc);
    if let Some(path) = &orbital_path {
        t = combine_with_orbital(&t, &read_orbital_single(path)?, Unit::PpmCm3PerMol)?;
    }
    let curie = curie_magnetizability(&s.stats);
    println!(
        "spin magnetizability (ppm cm^3/mol), mode {}, T = {} K, S = {}",
        s.prep.mode, s.stats.t, s.stats.s
    );
    println!("  iso total {:12.4}", t.iso());
    println!("  iso zee   {:12.4}", t.zee.trace() / 3.0);
    if let Some(soc) = t.soc {
        println!("  iso soc   {:12.4}", soc.trace() / 3.0);
    }
    if let Some(orb) = t.orbital {
        println!("  iso orb   {:12.4}", orb.trace() / 3.0);
    }
    println!("  Curie closed form {:12.4}", curie);
    report::print_tensor("total tensor", &t.total);
    let results = json!({ "system": summary(&s), "magnetizability": report::tensor(&t), "curie_closed_form": curie });
    let path = report::write(&s.out, &s.resolved, results)?;
    println!("results written to {}", path.display());
    Ok(())
}

fn default_box(prep: &Prepared, margin: f64) -> (Vector3<f64>, Vector3<f64>) {
    let pos = prep.system.positions();
    let lo = pos.iter().fold(Vector3::repeat(f64::INFINITY), |a, p| a.inf(p));
    let hi = pos.iter().fold(Vector3::repeat(f64::NEG_INFINITY), |a, p| a.sup(p));
    (lo.add_scalar(-margin), hi.add_scalar(margin))
}

fn axis_index(name: &str) -> Result<usize> {
    match name {
        "x" => Ok(0),
        "y" => Ok(1),
        "z" => Ok(2),
        _ => bail!("unknown axis `{name}` (x, y, z)"),
    }
}

fn save_cube(dir: &Path, name: &str, comments: [&str; 2], s: &Session, b: &CubeBox, values: &[f64]) -> Result<Value> {
    let path = dir.join(name);
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_cube(BufWriter::new(file), comments, &s.prep.system, b, values)?;
    let sum = values.iter().sum::<f64>() * b.voxel_volume();
    println!("  {name:40} voxel sum {sum:14.6e}");
    Ok(json!({ "file": name, "voxel_sum": sum }))
}

pub fn map(a: MapArgs) -> Result<()> {
    let mut s = open("map", &a.common)?;
    let field = a.field.clone().or_else(|| s.cfg.field.clone()).unwrap_or_else(|| "spin-density".into());
    let spacing = a.spacing.or(s.cfg.spacing).unwrap_or(0.2);
    if !a.bounds.is_empty() && a.bounds.len() != 6 {
        bail!("--box takes 6 numbers x0,y0,z0,x1,y1,z1, got {}", a.bounds.len());
    }
    let (lo, hi) = if a.bounds.len() == 6 {
        (Vector3::new(a.bounds[0], a.bounds[1], a.bounds[2]), Vector3::new(a.bounds[3], a.bounds[4], a.bounds[5]))
    } else if let Some(b) = s.cfg.bounds {
        (Vector3::new(b[0], b[1], b[2]), Vector3::new(b[3], b[4], b[5]))
    } else {
        default_box(&s.prep, 4.0)
    };
    let b = CubeBox::from_bounds(lo, hi, spacing)?;
    if !s.prep.system.atoms.iter().any(|at| b.contains(&at.position)) {
        log::warn!("the map box contains no nucleus");
    }
    s.resolved.set("field", &field);
    s.resolved.set("box", [lo.x, lo.y, lo.z, hi.x, hi.y, hi.z]);
    s.resolved.set("spacing", spacing);
    std::fs::create_dir_all(&s.out).with_context(|| format!("creating {}", s.out.display()))?;
    println!("{field} map: {} x {} x {} voxels, spacing {spacing} bohr", b.counts[0], b.counts[1], b.counts[2]);

    let mode = s.prep.mode;
    let mut files = vec![];
    match field.as_str() {
        "spin-density" => {
            let collinear = s.prep.source.field.is_collinear();
            for (k, comp) in ["x", "y", "z"].iter().enumerate() {
                if collinear && k < 2 {
                    continue;
                }
                let v = b.sample(|p| s.prep.source.spin_density_at(p)[k]);
                let title = format!("spincurrent spin density Q_{comp}");
                files.push(save_cube(&s.out, &format!("spin_density_{comp}.cube"), [&title, "units: hbar/bohr^3"], &s, &b, &v)?);
            }
        }
        "spin-current" => {
            let axis_name = a.axis.clone().or_else(|| s.cfg.axis.clone()).unwrap_or_else(|| "z".into());
            let beta = axis_index(&axis_name)?;
            s.resolved.set("axis", &axis_name);
            let ctx = s.prep.context();
            let samples: Vec<_> = (0..b.len())
                .into_par_iter()
                .map(|i| ctx.sample(&b.point(i)))
                .collect::<spincurrent::Result<_>>()?;
            for (term, pick) in [("zee", 0), ("soc", 1)] {
                for (k, comp) in ["x", "y", "z"].iter().enumerate() {
                    let v: Vec<f64> = samples
                        .iter()
                        .map(|smp| if pick == 0 { smp.zee[beta][k] } else { smp.soc[beta][k] })
                        .collect();
                    let title = format!("spincurrent spin current {term}, spin axis {axis_name}, component {comp}");
                    let units = format!("units: atomic units per unit spin; mode {mode}");
                    let name = format!("spin_current_S{axis_name}_{term}_{comp}.cube");
                    files.push(save_cube(&s.out, &name, [&title, &units], &s, &b, &v)?);
                }
            }
        }
        "shielding-density" => {
            let nuclei = select_nuclei(&a.nuclei, &s.cfg.nuclei, s.prep.system.atoms.len())?;
            let [i] = nuclei[..] else {
                bail!("a shielding-density map needs exactly one nucleus (--nuclei)");
            };
            let with_soc = a.with_soc_shielding || s.cfg.with_soc_shielding.unwrap_or(false);
            if with_soc {
                warn_soc_shielding();
            }
            s.resolved.set("nuclei", [i + 1]);
            s.resolved.set("with_soc_shielding", with_soc);
            let center = s.prep.system.atoms[i].position;
            let pref = shielding_prefactor(&s.stats, s.statistics);
            let ctx = s.prep.context();
            let v = (0..b.len())
                .into_par_iter()
                .map(|k| {
                    let p = b.point(k);
                    Ok(pref * shielding_density(&ctx.sample(&p)?, &p, &center, with_soc))
                })
                .collect::<spincurrent::Result<Vec<f64>>>()?;
            let title = format!("spincurrent isotropic spin shielding density, nucleus {}", i + 1);
            let units = format!("units: ppm/bohr^3; mode {mode}; T = {} K", s.stats.t);
            files.push(save_cube(&s.out, &format!("shielding_density_{}.cube", i + 1), [&title, &units], &s, &b, &v)?);
        }
        other => bail!("unknown map field `{other}` (spin-density, spin-current, shielding-density)"),
    }
    let results = json!({
        "system": summary(&s),
        "box": { "origin": [b.origin.x, b.origin.y, b.origin.z], "counts": b.counts, "spacing": b.spacing },
        "files": files,
    });
    let path = report::write(&s.out, &s.resolved, results)?;
    println!("results written to {}", path.display());
    Ok(())
}

pub fn diagnose(a: DiagnoseArgs) -> Result<()> {
    let mut s = open("diagnose", &a.common)?;
    let n_points = a.points.or(s.cfg.points).unwrap_or(50);
    let step = a.step.or(s.cfg.step).unwrap_or(1e-4);
    let seed = a.seed.or(s.cfg.seed).unwrap_or(1);
    s.resolved.set("points", n_points);
    s.resolved.set("step", step);
    s.resolved.set("seed", seed);

    let (lo, hi) = default_box(&s.prep, 2.0);
    let positions = s.prep.system.positions();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n_points);
    while points.len() < n_points {
        let p = Vector3::from_fn(|k, _| rng.gen_range(lo[k]..hi[k]));
        if positions.iter().all(|r| (p - r).norm() > 0.1) {
            points.push(p);
        }
    }

    let ctx = s.prep.context();
    let mut zee = [0.0f64; 3];
    let mut soc = [0.0f64; 3];
    for p in &points {
        let d = divergence_diagnostic(&ctx, p, step)?;
        for b in 0..3 {
            zee[b] = zee[b].max(d.zee[b]);
            soc[b] = soc[b].max(d.soc[b]);
        }
    }
    // informational: how far the chosen mode is from the non-relativistic field
    let nr = CurrentContext { zora: &s.prep.zora, source: &s.prep.source, mode: Mode::Nr };
    let (mut dz, mut nz, mut ds, mut ns) = (0.0, 0.0, 0.0, 0.0);
    for p in &points {
        let (x, y) = (ctx.sample(p)?, nr.sample(p)?);
        for b in 0..3 {
            dz += (x.zee[b] - y.zee[b]).norm_squared();
            nz += y.zee[b].norm_squared();
            ds += (x.soc[b] - y.soc[b]).norm_squared();
            ns += y.soc[b].norm_squared();
        }
    }
    let rms = |d: f64, n: f64| if n > 0.0 { (d / n).sqrt() } else { 0.0 };
    let (rms_zee, rms_soc) = (rms(dz, nz), rms(ds, ns));

    let flag = |v: f64| if v < 1e-6 { "" } else { "  above 1e-6" };
    println!("normalized divergence (1/bohr), mode {}, {} points, step {step} bohr", s.prep.mode, points.len());
    for (b, axis) in ["x", "y", "z"].iter().enumerate() {
        println!("  spin axis {axis}: zee {:10.3e}{}   soc {:10.3e}{}", zee[b], flag(zee[b]), soc[b], flag(soc[b]));
    }
    println!("relative RMS difference from the non-relativistic field: zee {rms_zee:.3e}, soc {rms_soc:.3e}");
    let results = json!({
        "system": summary(&s),
        "max_divergence": { "zee": zee, "soc": soc },
        "rms_difference_from_nr": { "zee": rms_zee, "soc": rms_soc },
    });
    let path = report::write(&s.out, &s.resolved, results)?;
    println!("results written to {}", path.display());
    Ok(())
}

pub fn thermo(a: ThermoArgs) -> Result<()> {
    let cfg = FileConfig::load(a.config.as_deref())?;
    let mut resolved = Resolved::new("thermo");
    let t = a.temp.or(cfg.temp).unwrap_or(DEFAULT_TEMP);
    let p = a.pressure.or(cfg.pressure).unwrap_or(1.0);
    let kp = match (a.kp.or(cfg.kp), a.delta_g.or(cfg.delta_g)) {
        (Some(kp), _) => {
            resolved.set("kp", kp);
            kp
        }
        (None, Some(dg)) => {
            resolved.set("delta_g_kJ_per_mol", dg);
            equilibrium_constant(dg * 1e3, t)?
        }
        (None, None) => bail!("pass --delta-g or --kp"),
    };
    resolved.set("temperature_K", t);
    resolved.set("pressure_atm", p);
    let alpha = dissociation_degree(kp, p)?;
    let chi = match (a.chi_monomer.or(cfg.chi_monomer), a.chi_dimer.or(cfg.chi_dimer)) {
        (Some(m), Some(d)) => {
            resolved.set("chi_monomer", m);
            resolved.set("chi_dimer", d);
            Some(mixture_chi(alpha, m, d)?)
        }
        (None, None) => None,
        _ => bail!("--chi-monomer and --chi-dimer go together"),
    };
    println!("K_p     {kp:.6}");
    println!("alpha   {alpha:.6}");
    if let Some(c) = chi {
        println!("chi_mix {c:.3} ppm cm^3/mol");
    }
    let out = a.out.or(cfg.out).unwrap_or_else(|| PathBuf::from("."));
    let path = report::write(&out, &resolved, json!({ "kp": kp, "alpha": alpha, "chi_mix": chi }))?;
    println!("results written to {}", path.display());
    Ok(())
}
