//! Acceptance criteria. Each test writes one `criterion N: PASS|FAIL` line
//! straight to stdout so the summary survives output capture.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::Command;

use crw_cli::format::g17;
use crw_cli::load_config;
use crw_core::{
    find_windows, identical_parallel_amplitudes, parallel_amplitudes, ring_amplitudes,
    serial_amplitudes, solve_network, sweep_k, CavitySite, ClusterSpec, Emitter, LatticeParams,
    ScatteringError, SweepSpec, Topology, DEFAULT_WINDOW_THRESHOLD,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, pass: bool, detail: &str) {
    let line = format!(
        "criterion {n:>2}: {} - {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass, "criterion {n} failed: {detail}");
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn config(name: &str) -> ClusterSpec {
    load_config(&repo_root().join("configs").join(format!("{name}.json"))).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares `text` with a recorded table, numerically at 1e-9 relative.
/// `CRW_BLESS=1` rewrites the file instead.
fn check_golden(name: &str, text: &str) -> Result<(), String> {
    let path = golden_path(name);
    if std::env::var_os("CRW_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        return Ok(());
    }
    let recorded =
        std::fs::read_to_string(&path).map_err(|e| format!("golden {name} unreadable: {e}"))?;
    let (a, b): (Vec<&str>, Vec<&str>) = (recorded.lines().collect(), text.lines().collect());
    if a.len() != b.len() {
        return Err(format!(
            "golden {name}: {} lines recorded, {} now",
            a.len(),
            b.len()
        ));
    }
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        let (xs, ys): (Vec<&str>, Vec<&str>) = (x.split(',').collect(), y.split(',').collect());
        let same = xs.len() == ys.len()
            && xs
                .iter()
                .zip(&ys)
                .all(|(p, q)| match (p.parse::<f64>(), q.parse::<f64>()) {
                    (Ok(p), Ok(q)) => (p - q).abs() <= 1e-9 * p.abs().max(q.abs()).max(1.0),
                    _ => p == q,
                });
        if !same {
            return Err(format!("golden {name} line {}: `{x}` vs `{y}`", i + 1));
        }
    }
    Ok(())
}

fn random_site(rng: &mut ChaCha8Rng) -> CavitySite {
    match rng.gen_range(0..4) {
        0 => CavitySite::bare(),
        1 => CavitySite::with_epsilon(rng.gen_range(-3.0..3.0)),
        2 => CavitySite::with_emitter(Emitter::new(
            rng.gen_range(0.0..10.0),
            rng.gen_range(0.0..2.0),
        )),
        _ => CavitySite {
            emitter: Some(Emitter::new(
                rng.gen_range(0.0..10.0),
                rng.gen_range(0.0..2.0),
            )),
            ..CavitySite::with_epsilon(rng.gen_range(-3.0..3.0))
        },
    }
}

fn random_channel(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<CavitySite> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| random_site(rng)).collect()
}

/// Mixed topologies: serial, general bundle, ring, identical copies.
fn random_cluster(rng: &mut ChaCha8Rng) -> ClusterSpec {
    let p = LatticeParams::unit(rng.gen_range(0.0..10.0));
    match rng.gen_range(0..4) {
        0 => ClusterSpec::serial(p, random_channel(rng, 12)),
        1 => {
            let m = rng.gen_range(1..=8);
            ClusterSpec::parallel(p, (0..m).map(|_| random_channel(rng, 12)).collect())
        }
        2 => {
            let m = rng.gen_range(1..=8);
            let ring = (0..m)
                .map(|_| {
                    let s = random_site(rng);
                    vec![CavitySite { epsilon: None, ..s }]
                })
                .collect();
            ClusterSpec::parallel(p, ring)
        }
        _ => ClusterSpec::identical_parallel(p, rng.gen_range(1..=8), random_channel(rng, 12)),
    }
}

fn pole_distance(cluster: &ClusterSpec, k: f64) -> f64 {
    let e = cluster.params.energy(k);
    cluster
        .channels()
        .iter()
        .flat_map(|c| c.iter())
        .filter_map(|s| s.emitter)
        .map(|em| (e - em.transition_frequency).abs())
        .fold(f64::INFINITY, f64::min)
}

/// A wavenumber in (0, π) away from every emitter resonance.
fn random_k(rng: &mut ChaCha8Rng, cluster: &ClusterSpec) -> f64 {
    loop {
        let k = rng.gen_range(0.01..PI - 0.01);
        if pole_distance(cluster, k) > 1e-6 {
            return k;
        }
    }
}

#[test]
fn criterion_01_flux_conservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut evaluated, mut degenerate, mut worst) = (0usize, 0usize, 0.0f64);
    for _ in 0..10_000 {
        let c = random_cluster(&mut rng);
        // a degenerate channel has no closed form at that k; draw another
        for _ in 0..16 {
            let k = random_k(&mut rng, &c);
            match c.closed_form(&c.mode(k).unwrap()) {
                Ok(res) => {
                    assert!(res.hermitian);
                    worst = worst.max(res.flux_defect());
                    evaluated += 1;
                    break;
                }
                Err(ScatteringError::DegenerateChannel { .. }) => degenerate += 1,
                Err(e) => panic!("{e} for {c:?} at k={k}"),
            }
        }
    }
    report(
        1,
        evaluated == 10_000 && worst < 1e-10,
        &format!("{evaluated} clusters, max |R+T-1| = {worst:.3e} ({degenerate} degenerate draws redrawn)"),
    );
}

#[test]
fn criterion_02_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut compared, mut dr, mut dt) = (0usize, 0.0f64, 0.0f64);
    let mut kinds = [0usize; 4];
    while compared < 1_000 {
        let c = random_cluster(&mut rng);
        let k = random_k(&mut rng, &c);
        let mode = c.mode(k).unwrap();
        let Ok(closed) = c.closed_form(&mode) else {
            continue;
        };
        let sol = solve_network(&c, &mode).unwrap();
        dr = dr.max((closed.r - sol.r).norm());
        dt = dt.max((closed.t_n - sol.t_n).norm());
        kinds[c.closed_form_kind() as usize] += 1;
        compared += 1;
    }
    report(
        2,
        dr < 1e-8 && dt < 1e-8,
        &format!(
            "{compared} clusters (serial/parallel/ring/copies = {kinds:?}), max |dr| = {dr:.3e}, max |dt| = {dt:.3e}"
        ),
    );
}

#[test]
fn criterion_03_reduction_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = [0.0f64; 4];
    let mut checked = [0usize; 4];
    let gap = |a: &crw_core::ScatteringResult, b: &crw_core::ScatteringResult| {
        (a.r - b.r).norm().max((a.t_n - b.t_n).norm())
    };
    for _ in 0..2_000 {
        let p = LatticeParams::unit(rng.gen_range(0.0..10.0));
        let ch = random_channel(&mut rng, 12);
        let probe = ClusterSpec::serial(p, ch.clone());
        let k = random_k(&mut rng, &probe);
        let mode = probe.mode(k).unwrap();
        let serial = serial_amplitudes(&ch, &mode).unwrap();

        if let Ok(bundle) = parallel_amplitudes(std::slice::from_ref(&ch), &mode) {
            worst[0] = worst[0].max(gap(&bundle, &serial));
            checked[0] += 1;
        }
        let one_copy = identical_parallel_amplitudes(1, &ch, &mode).unwrap();
        worst[1] = worst[1].max(gap(&one_copy, &serial));
        checked[1] += 1;

        let n0 = rng.gen_range(2..=8);
        if let Ok(bundle) = parallel_amplitudes(&vec![ch.clone(); n0], &mode) {
            let copies = identical_parallel_amplitudes(n0, &ch, &mode).unwrap();
            worst[2] = worst[2].max(gap(&bundle, &copies));
            checked[2] += 1;
        }

        let branches: Vec<Option<Emitter>> = (0..rng.gen_range(1..=8))
            .map(|_| random_site(&mut rng).emitter)
            .collect();
        let unit: Vec<Vec<CavitySite>> = branches
            .iter()
            .map(|e| vec![e.map_or_else(CavitySite::bare, CavitySite::with_emitter)])
            .collect();
        let ring_cluster = ClusterSpec::parallel(p, unit.clone());
        if pole_distance(&ring_cluster, k) > 1e-6 {
            if let (Ok(a), Ok(b)) = (
                parallel_amplitudes(&unit, &mode),
                ring_amplitudes(&branches, &mode),
            ) {
                worst[3] = worst[3].max(gap(&a, &b));
                checked[3] += 1;
            }
        }
    }
    report(
        3,
        worst.iter().all(|&w| w < 1e-12),
        &format!(
            "m=1 vs serial {:.1e} ({}), N0=1 vs serial {:.1e} ({}), N0 channels vs copies {:.1e} ({}), unit channels vs ring {:.1e} ({})",
            worst[0], checked[0], worst[1], checked[1], worst[2], checked[2], worst[3], checked[3]
        ),
    );
}

#[test]
fn criterion_04_lorentzian() {
    let p = LatticeParams::unit(3.0);
    let mut worst: f64 = 0.0;
    for gi in 0..10 {
        let g = 0.1 + 0.2 * gi as f64;
        for di in 0..10 {
            let detuning = -2.0 + 4.0 * (di as f64 + 0.5) / 10.0;
            for ki in 0..10 {
                let k = PI * (ki as f64 + 0.5) / 10.0;
                let site = CavitySite::with_emitter(Emitter::new(p.energy(k) - detuning, g));
                let c = ClusterSpec::serial(p, vec![site]);
                let res = c.closed_form(&c.mode(k).unwrap()).unwrap();
                let g4 = g.powi(4);
                let want = g4 / (g4 + 4.0 * detuning * detuning * k.sin().powi(2));
                worst = worst.max((res.reflectance - want).abs());
            }
        }
    }
    let spot = config("lorentzian");
    let mode = spot.mode(FRAC_PI_2).unwrap();
    let closed = spot.closed_form(&mode).unwrap().reflectance;
    let oracle = solve_network(&spot, &mode).unwrap().result().reflectance;
    report(
        4,
        worst < 1e-12 && (closed - 0.2).abs() < 1e-12 && (oracle - 0.2).abs() < 1e-12,
        &format!(
            "1000-point grid max |dR| = {worst:.3e}; spot R = {} (oracle {})",
            g17(closed),
            g17(oracle)
        ),
    );
}

#[test]
fn criterion_05_resonant_mirror() {
    let p = LatticeParams::unit(2.0 * PI);
    let mut worst: f64 = 0.0;
    for k in [0.3, 0.9, FRAC_PI_2, 2.0, 2.8] {
        let e = Emitter::new(p.energy(k), 1.0);
        let mut clusters: Vec<ClusterSpec> = [1, 2, 50]
            .iter()
            .map(|&n| ClusterSpec::serial(p, vec![CavitySite::with_emitter(e); n]))
            .collect();
        clusters.push(ClusterSpec::parallel(
            p,
            vec![vec![CavitySite::with_emitter(e)]; 2],
        ));
        clusters.push(ClusterSpec::parallel(
            p,
            vec![vec![CavitySite::with_emitter(e)]; 5],
        ));
        for c in &clusters {
            let res = c.closed_form(&c.mode(k).unwrap()).unwrap();
            worst = worst.max(1.0 - res.reflectance);
        }
    }
    // 512-point grid centred on π/2
    let h = PI / 513.0;
    let spec = SweepSpec::new(
        config("fig2a_resonant"),
        FRAC_PI_2 - 255.0 * h,
        FRAC_PI_2 + 256.0 * h,
        512,
    );
    let record = sweep_k(&spec).unwrap();
    let row = &record.rows[255];
    let exact = row.k == FRAC_PI_2 && row.reflectance == 1.0 && row.transmittance == 0.0;
    report(
        5,
        worst < 1e-10 && exact,
        &format!(
            "max 1-R = {worst:.3e} over serial N in {{1,2,50}} and rings; two resonant atoms at omega = 2pi give R(pi/2) = {}",
            g17(row.reflectance)
        ),
    );
}

#[test]
fn criterion_06_ring_saturation() {
    let branches = vec![None; 1_000_000];
    let mut worst: f64 = 0.0;
    for k in [0.5, 1.0, 2.0] {
        let mode = LatticeParams::unit(0.0);
        let res = ring_amplitudes(&branches, &crw_core::dispersion(k, mode).unwrap()).unwrap();
        worst = worst.max((res.reflectance - k.cos().powi(2)).abs());
    }
    report(
        6,
        worst < 1e-4,
        &format!("10^6 bare branches, max |R - cos^2 k| = {worst:.3e}"),
    );
}

fn fig5(copies: usize) -> ClusterSpec {
    match config("fig5_copies30").topology {
        Topology::IdenticalParallel { channel, .. } => {
            ClusterSpec::identical_parallel(LatticeParams::unit(5.0), copies, channel)
        }
        _ => unreachable!(),
    }
}

/// Uniform 512-point grid strictly inside the band.
fn grid_512(cluster: ClusterSpec) -> SweepSpec {
    SweepSpec::new(cluster, PI / 513.0, 512.0 * PI / 513.0, 512)
}

#[test]
fn criterion_07_total_mirror_trend() {
    let mut ok = true;
    let mut detail = String::new();

    // T(N₀)·N₀² at N₀ = 10³ and 10⁴
    let mut ratios = Vec::new();
    for k in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let t = |n: usize| {
            let c = fig5(n);
            c.closed_form(&c.mode(k).unwrap()).unwrap().transmittance
        };
        let ratio = (t(1_000) * 1e6) / (t(10_000) * 1e8);
        ok &= (0.5..=2.0).contains(&ratio);
        ratios.push(ratio);
    }
    let _ = write!(
        detail,
        "T*N0^2 ratio (10^3 vs 10^4) in [{:.4}, {:.4}]",
        ratios.iter().cloned().fold(f64::INFINITY, f64::min),
        ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    );

    let mut table = String::from("copies,points,fraction_R_above_0.99,oracle_fraction\n");
    let mut fractions = Vec::new();
    for n0 in [1usize, 5, 30] {
        let spec = grid_512(fig5(n0));
        let record = sweep_k(&spec).unwrap();
        let fraction = record.fraction_above(0.99);
        let oracle = if n0 <= 5 {
            let mut above = 0;
            for row in &record.rows {
                let c = &spec.cluster;
                let sol = solve_network(c, &c.mode(row.k).unwrap()).unwrap().result();
                ok &= (sol.reflectance - row.reflectance).abs() < 1e-8;
                above += usize::from(sol.reflectance > 0.99);
            }
            let f = above as f64 / record.rows.len() as f64;
            ok &= f == fraction;
            g17(f)
        } else {
            String::new()
        };
        let _ = writeln!(
            table,
            "{n0},{},{},{oracle}",
            record.rows.len(),
            g17(fraction)
        );
        fractions.push(fraction);
    }
    ok &= fractions.windows(2).all(|w| w[0] <= w[1]);
    let _ = write!(
        detail,
        "; fraction R>0.99 at N0=1,5,30: {:.4}, {:.4}, {:.4} (oracle-confirmed at 1, 5)",
        fractions[0], fractions[1], fractions[2]
    );
    if let Err(e) = check_golden("fig5_fractions.csv", &table) {
        ok = false;
        let _ = write!(detail, "; {e}");
    }
    report(7, ok, &detail);
}

fn two_atoms(omega0: f64) -> ClusterSpec {
    ClusterSpec::serial(
        LatticeParams::unit(2.0 * PI),
        vec![CavitySite::with_emitter(Emitter::new(omega0, 1.0)); 2],
    )
}

/// Grid used for window detection; stays off the band edges, where any
/// scatterer reflects totally.
fn window_grid(cluster: ClusterSpec) -> SweepSpec {
    SweepSpec::new(cluster, 0.01, PI - 0.01, 4096)
}

#[test]
fn criterion_08_window_tracking() {
    let mut ok = true;
    let mut tracked = 0;
    for omega0 in [2.0 * PI, 4.5, 5.0, 6.0, 7.0, 8.0] {
        let kstar = ((2.0 * PI - omega0) / 2.0).acos();
        let record = sweep_k(&window_grid(two_atoms(omega0))).unwrap();
        let windows = find_windows(&record, DEFAULT_WINDOW_THRESHOLD).unwrap();
        ok &= !windows.is_empty() && windows.iter().all(|w| w.contains(kstar));
        tracked += windows.len();
    }

    // out of band: record what is there and confirm it with the oracle
    let mut table = String::from("omega0_over_pi,atoms,windows,max_R_closed,max_R_oracle\n");
    let mut notes = Vec::new();
    for (label, omega0, atoms) in [
        ("1.1", 1.1 * PI, 2),
        ("2.9", 2.9 * PI, 2),
        ("0.1", 0.1 * PI, 50),
    ] {
        let c = ClusterSpec::serial(
            LatticeParams::unit(2.0 * PI),
            vec![CavitySite::with_emitter(Emitter::new(omega0, 1.0)); atoms],
        );
        let spec = window_grid(c);
        let record = sweep_k(&spec).unwrap();
        let windows = find_windows(&record, DEFAULT_WINDOW_THRESHOLD).unwrap();
        let max_closed = record.reflectances().into_iter().fold(0.0, f64::max);
        let mut max_oracle: f64 = 0.0;
        for row in &record.rows {
            let c = &spec.cluster;
            let sol = solve_network(c, &c.mode(row.k).unwrap()).unwrap().result();
            ok &= (sol.reflectance - row.reflectance).abs() < 1e-8;
            max_oracle = max_oracle.max(sol.reflectance);
        }
        ok &= windows.is_empty() == (max_oracle < DEFAULT_WINDOW_THRESHOLD);
        let _ = writeln!(
            table,
            "{label},{atoms},{},{},{}",
            windows.len(),
            g17(max_closed),
            g17(max_oracle)
        );
        notes.push(format!(
            "{label}pi/N={atoms}: {} windows, max R {max_oracle:.6}",
            windows.len()
        ));
    }
    let mut detail = format!(
        "in-band omega0 in {{2pi,4.5,5,6,7,8}}: {tracked} windows, all contain k*; out-of-band (oracle-confirmed): {}",
        notes.join("; ")
    );
    if let Err(e) = check_golden("fig2_out_of_band.csv", &table) {
        ok = false;
        let _ = write!(detail, "; {e}");
    }
    report(8, ok, &detail);
}

#[test]
fn criterion_09_pattern_asymmetry() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b) in [
        ("fig3_aba_in", "fig3_bab_in"),
        ("fig3_aba_out", "fig3_bab_out"),
    ] {
        let mut spectra = Vec::new();
        let mut dev: f64 = 0.0;
        for name in [a, b] {
            let spec = grid_512(config(name));
            let record = sweep_k(&spec).unwrap();
            for row in &record.rows {
                let c = &spec.cluster;
                let mode = c.mode(row.k).unwrap();
                let closed = c.closed_form(&mode).unwrap();
                let sol = solve_network(c, &mode).unwrap();
                dev = dev
                    .max((closed.r - sol.r).norm())
                    .max((closed.t_n - sol.t_n).norm());
            }
            spectra.push(record.reflectances());
        }
        let linf = spectra[0]
            .iter()
            .zip(&spectra[1])
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        ok &= linf > 1e-3 && dev < 1e-8;
        parts.push(format!(
            "{a} vs {b}: L_inf {linf:.4}, closed/oracle {dev:.1e}"
        ));
    }
    report(9, ok, &parts.join("; "));
}

fn crw(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_crw"))
        .args(args)
        .output()
        .expect("crw runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_10_determinism_and_interfaces() {
    let mut configs: Vec<PathBuf> = std::fs::read_dir(repo_root().join("configs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    configs.sort();
    let mut ok = !configs.is_empty();
    let mut failures = Vec::new();
    for path in &configs {
        let cfg = path.to_str().unwrap();
        let sweep = [
            "sweep", "--config", cfg, "--k-min", "0.05", "--k-max", "3.09", "--points", "257",
        ];
        let verify = [
            "verify",
            "--config",
            cfg,
            "--samples",
            "100",
            "--seed",
            "42",
        ];
        let (s1, out1) = crw(&sweep);
        let (s2, out2) = crw(&sweep);
        let (v1, rep1) = crw(&verify);
        let (v2, rep2) = crw(&verify);
        let good = s1 == 0 && s2 == 0 && out1 == out2 && v1 == 0 && v2 == 0 && rep1 == rep2;
        if !good {
            failures.push(path.file_name().unwrap().to_string_lossy().into_owned());
        }
        ok &= good;
    }
    report(
        10,
        ok,
        &format!(
            "{} golden configs: sweep and verify byte-identical across runs, verify exits 0{}",
            configs.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failing: {failures:?}")
            }
        ),
    );
}
