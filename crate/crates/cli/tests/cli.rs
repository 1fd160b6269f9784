use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincurrent")).args(args).output().expect("spawn spincurrent")
}

fn ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn results(dir: &Path, command: &str) -> Value {
    let text = std::fs::read_to_string(dir.join(format!("{command}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn magnetizability_matches_curie_value() {
    let dir = TempDir::new().unwrap();
    let input = fixture("model_triplet.fchk");
    ok(&["magnetizability", "--input", s(&input), "--temp", "295.75", "--out", s(dir.path())]);
    let doc = results(dir.path(), "magnetizability");
    let iso = doc["results"]["magnetizability"]["total"]["iso"].as_f64().unwrap();
    assert!((iso / 3390.3 - 1.0).abs() < 2e-3, "iso {iso}");
    assert_eq!(doc["results"]["magnetizability"]["unit"], "ppm cm^3/mol");
    assert_eq!(doc["settings"]["mode"], "sr");
    assert_eq!(doc["command"], "magnetizability");
    assert_eq!(doc["config_hash"].as_str().unwrap().len(), 64);
    for key in ["erf-fit", "mass-numbers", "nuclear-g", "radii"] {
        assert!(doc["data_versions"][key].is_u64(), "{key}");
    }
}

#[test]
fn shielding_halves_when_temperature_doubles() {
    let input = fixture("o2_triplet.fchk");
    let iso_at = |t: &str| {
        let dir = TempDir::new().unwrap();
        ok(&["shielding", "--input", s(&input), "--temp", t, "--nuclei", "1", "--out", s(dir.path())]);
        results(dir.path(), "shielding")["results"]["nuclei"][0]["shielding"]["total"]["iso"].as_f64().unwrap()
    };
    let ratio = iso_at("150") / iso_at("300");
    assert!((ratio - 2.0).abs() < 1e-9, "ratio {ratio}");
}

#[test]
fn missing_g_factor_is_a_single_line_error() {
    let dir = TempDir::new().unwrap();
    let out = run(&["hyperfine", "--input", s(&fixture("o2_triplet.fchk")), "--out", s(dir.path())]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 1, "{err}");
    assert!(lines[0].starts_with("error:") && lines[0].contains("16O"), "{err}");
    assert!(!dir.path().join("hyperfine.json").exists());
}

#[test]
fn g_override_by_symbol_and_sign() {
    let input = fixture("o2_triplet.fchk");
    let a_iso = |g: &str| {
        let dir = TempDir::new().unwrap();
        ok(&["hyperfine", "--input", s(&input), "--gi", g, "--nuclei", "2", "--out", s(dir.path())]);
        results(dir.path(), "hyperfine")["results"]["nuclei"][0]["hyperfine"]["total"]["iso"].as_f64().unwrap()
    };
    let (a, b) = (a_iso("O=-0.757516"), a_iso("16O=0.757516"));
    assert!(a != 0.0 && (a + b).abs() < 1e-9 * a.abs(), "{a} {b}");
}

#[test]
fn flags_override_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.toml");
    let input = fixture("model_triplet.fchk");
    std::fs::write(
        &cfg,
        format!("input = {:?}\ntemp = 100.0\nmode = \"nr\"\nout = {:?}\n", s(&input), s(dir.path())),
    )
    .unwrap();
    ok(&["magnetizability", "--config", s(&cfg), "--temp", "200"]);
    let doc = results(dir.path(), "magnetizability");
    assert_eq!(doc["settings"]["temperature_K"], 200.0);
    assert_eq!(doc["settings"]["mode"], "nr");
    assert_eq!(doc["results"]["magnetizability"]["temperature_K"], 200.0);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "temperature = 300.0\n").unwrap();
    let out = run(&["magnetizability", "--config", s(&cfg), "--input", s(&fixture("h_atom.fchk"))]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("temperature"));
}

#[test]
fn thermo_from_free_energy() {
    let dir = TempDir::new().unwrap();
    // ΔG = −RT ln K with K = 0.114 at 298.15 K, R = 8.31446 J/(mol K)
    let dg = -8.31446e-3 * 298.15 * 0.114f64.ln();
    let dg = format!("{dg}");
    ok(&["thermo", "--delta-g", &dg, "--chi-monomer", "1261", "--chi-dimer", "0", "--out", s(dir.path())]);
    let r = &results(dir.path(), "thermo")["results"];
    let kp = r["kp"].as_f64().unwrap();
    let alpha = r["alpha"].as_f64().unwrap();
    assert!((kp - 0.114).abs() < 1e-9, "{kp}");
    // α = sqrt(K / (K + 4P))
    assert!((alpha - (0.114f64 / 4.114).sqrt()).abs() < 1e-9, "{alpha}");
    let chi = r["chi_mix"].as_f64().unwrap();
    // per mole of monomer units, dimer diamagnetism ignored here
    assert!((chi - alpha * 1261.0).abs() < 1e-6, "{chi}");
}

#[test]
fn map_spin_density_integrates_to_spin() {
    let dir = TempDir::new().unwrap();
    ok(&[
        "map",
        "--input",
        s(&fixture("o2_triplet.fchk")),
        "--box=-6,-6,-7,6,6,7",
        "--spacing",
        "0.15",
        "--out",
        s(dir.path()),
    ]);
    let doc = results(dir.path(), "map");
    let files = doc["results"]["files"].as_array().unwrap();
    assert_eq!(files.len(), 1);
    assert_eq!(files[0]["file"], "spin_density_z.cube");
    // Q_z integrates to S = 1
    let sum = files[0]["voxel_sum"].as_f64().unwrap();
    assert!((sum - 1.0).abs() < 0.02, "{sum}");
    let cube = std::fs::read_to_string(dir.path().join("spin_density_z.cube")).unwrap();
    assert!(cube.lines().nth(2).unwrap().trim_start().starts_with('2'), "two atoms in the header");
}

#[test]
fn map_spin_current_writes_six_components() {
    let dir = TempDir::new().unwrap();
    ok(&[
        "map",
        "--input",
        s(&fixture("h_atom.fchk")),
        "--field",
        "spin-current",
        "--axis",
        "x",
        "--spacing",
        "0.5",
        "--out",
        s(dir.path()),
    ]);
    for term in ["zee", "soc"] {
        for c in ["x", "y", "z"] {
            assert!(dir.path().join(format!("spin_current_Sx_{term}_{c}.cube")).exists());
        }
    }
}

#[test]
fn diagnose_reports_every_axis() {
    let dir = TempDir::new().unwrap();
    let out = ok(&["diagnose", "--input", s(&fixture("h_atom.fchk")), "--points", "10", "--out", s(dir.path())]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.contains("spin axis")).count(), 3);
    let doc = results(dir.path(), "diagnose");
    for term in ["zee", "soc"] {
        let v = doc["results"]["max_divergence"][term].as_array().unwrap();
        assert_eq!(v.len(), 3);
        // a single centre carries no continuity defect
        assert!(v.iter().all(|x| x.as_f64().unwrap() < 1e-6), "{term} {v:?}");
    }
}

#[test]
fn bad_nucleus_index_fails() {
    let out = run(&["shielding", "--input", s(&fixture("h_atom.fchk")), "--nuclei", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn sr_soc_on_collinear_density_warns() {
    let dir = TempDir::new().unwrap();
    let input = fixture("h_atom.fchk");
    let out = ok(&["magnetizability", "--input", s(&input), "--mode", "sr+soc", "--out", s(dir.path())]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("WARN") && err.contains("collinear"), "{err}");
    assert_eq!(results(dir.path(), "magnetizability")["settings"]["mode"], "sr+soc");
}
