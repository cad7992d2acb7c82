//! Acceptance run: every criterion at its stated tolerance, one PASS/FAIL
//! line each. Sub-checks are indented under their criterion. Exits 1 if
//! any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::{gauss_legendre, haar2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepvol::integrate::{hall_check, km_ratio_check, run_many};
use sepvol::metrics::{bloch_radial_profile, mc};
use sepvol::numbertheory::{scan_largest, DEFAULT_BOUND};
use sepvol::qmc::{stream, StreamConfig};
use sepvol::states::{
    assemble, flag_from_cube, is_separable, kron2, min_pt_eigenvalue, partial_transpose, simplex_from_cube,
    DensityMatrix,
};
use sepvol::{Estimate, MetricKind, RunConfig, SequenceKind};

struct Criterion {
    lines: Vec<String>,
    ok: bool,
}

impl Criterion {
    fn new() -> Self {
        Criterion { lines: Vec::new(), ok: true }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        self.ok &= ok;
        self.lines.push(format!("    {} {}", if ok { "pass" } else { "fail" }, label.into()));
    }

    fn report(self, id: u8, title: &str, started: Instant) -> Outcome {
        let mut text = format!(
            "{} criterion {id}: {title} ({:.1}s)\n",
            if self.ok { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
        for l in &self.lines {
            text.push_str(l);
            text.push('\n');
        }
        Outcome { id, ok: self.ok, text }
    }
}

struct Outcome {
    id: u8,
    ok: bool,
    text: String,
}

fn find(est: &[Estimate], m: MetricKind) -> &Estimate {
    est.iter().find(|e| e.metric == m).expect("metric was run")
}

/// `|v - target| <= tol` and the target within three standard errors.
fn against(c: &mut Criterion, name: &str, v: f64, se: Option<f64>, target: f64, tol: f64) {
    let se = se.expect("several blocks");
    let dev = (v - target).abs();
    c.check(dev <= tol, format!("{name} = {v:.6} ± {se:.2e}; target {target} ± {tol:.4}"));
    c.check(dev <= 3.0 * se, format!("{name}: target within 3 standard errors ({:.1} se)", dev / se));
}

fn table_criteria(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let cfg = RunConfig::full(MetricKind::Bures, SequenceKind::ScrambledFaure, 4_000_000, 8, 2024);
    let est = run_many(&cfg, &MetricKind::ALL, |_| {}).expect("valid configuration");

    let mut c = Criterion::new();
    let b = find(&est, MetricKind::Bures);
    against(&mut c, "p_sep(bures)", b.p_sep, b.se_p, 0.0737, 0.002);
    c.check(b.v_total_tilde == PI.powi(8) / 1680.0, "v_total(bures) is the anchor exactly");
    results.push(c.report(1, "Bures separability probability, 4e6 scrambled-Faure points, 8 blocks", started));

    let started = Instant::now();
    let mut c = Criterion::new();
    let table = [
        (MetricKind::Km, 0.0351, 361.5, 0.02),
        (MetricKind::Wy, 0.0504, 446.6, 0.05),
        (MetricKind::Gks, 0.0611, 166.9, 0.05),
        (MetricKind::Ni, 0.0349, 3710.0, 0.10),
    ];
    for (m, p, v, vtol) in table {
        let e = find(&est, m);
        against(&mut c, &format!("p_sep({})", m.name()), e.p_sep, e.se_p, p, 0.05 * p);
        against(&mut c, &format!("v_total({})", m.name()), e.v_total_tilde, e.se_v_total, v, vtol * v);
    }
    for e in &est {
        c.lines.push(format!(
            "    info {}: v_total {:.6e}, v_sep {:.6e}, p_sep {:.6}, heavy tail {}",
            e.metric.name(),
            e.v_total_tilde,
            e.v_sep_tilde,
            e.p_sep,
            e.heavy_tail_flag
        ));
    }
    results.push(c.report(4, "table reproduction, same 4e6-point run as criterion 1", started));
}

fn hall(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let mut c = Criterion::new();
    for (n, points, tol) in [(2, 100_000, 0.005), (3, 1_000_000, 0.01), (4, 1_000_000, 0.02)] {
        let v = hall_check(n, points, SequenceKind::ScrambledFaure, 42).unwrap();
        c.check((v - 1.0).abs() <= tol, format!("N={n}, {points} points: {v:.6} (1 ± {tol})"));
    }
    results.push(c.report(2, "Hall normalization", started));
}

fn km_ratio(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let mut c = Criterion::new();
    for (n, points) in [(2, 100_000), (3, 1_000_000), (4, 1_000_000)] {
        let v = km_ratio_check(n, points, SequenceKind::ScrambledFaure, 42).unwrap();
        let target = 2f64.powi((n * (n - 1) / 2) as i32);
        let tol = if n == 2 { 0.005 } else { 0.01 * target };
        c.check((v - target).abs() <= tol, format!("N={n}: {v:.6} (target {target} ± {tol})"));
    }
    let anchor = 64.0 * PI.powi(8) / 1680.0;
    c.check((anchor - 4.0 * PI.powi(8) / 105.0).abs() < 1e-12, format!("64 · π⁸/1680 = {anchor:.3}"));
    results.push(c.report(3, "Kubo-Mori to Bures ratio", started));
}

fn bloch(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let mut c = Criterion::new();
    let forms: [(MetricKind, fn(f64) -> f64); 2] = [
        (MetricKind::Bures, |r| 2.0 * r * r / (1.0 - r * r).sqrt()),
        (MetricKind::Max, |r| 2.0 * r * r / (1.0 - r * r).powf(1.5)),
    ];
    for (m, form) in forms {
        let q: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).map(|r| bloch_radial_profile(m, r) / form(r)).collect();
        let spread = q.iter().map(|x| (x / q[0] - 1.0).abs()).fold(0.0, f64::max);
        c.check(spread <= 1e-10, format!("{}: ratio {:.12}, relative spread {spread:.1e}", m.name(), q[0]));
    }
    results.push(c.report(5, "N=2 radial profiles against closed forms", started));
}

/// `∫₀^{1-ε} profile(r) dr` with `r = 1 - e^{-s}`.
fn truncated_radial(m: MetricKind, eps: f64) -> f64 {
    let top = -eps.ln();
    let panels = 200;
    let h = top / panels as f64;
    (0..panels)
        .flat_map(|k| gauss_legendre(20, k as f64 * h, (k + 1) as f64 * h))
        .map(|(s, w)| {
            let one_minus_r = (-s).exp();
            w * bloch_radial_profile(m, 1.0 - one_minus_r) * one_minus_r
        })
        .sum()
}

fn divergence(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let mut c = Criterion::new();
    let (i4, i6) = (truncated_radial(MetricKind::Max, 1e-4), truncated_radial(MetricKind::Max, 1e-6));
    let ratio = i6 / i4;
    c.check((ratio / 10.0 - 1.0).abs() <= 0.05, format!("max: I(1e-6)/I(1e-4) = {ratio:.4} (10 ± 5%)"));
    let bures = truncated_radial(MetricKind::Bures, 1e-6) / truncated_radial(MetricKind::Bures, 1e-4);
    c.lines.push(format!("    info bures: I(1e-6)/I(1e-4) = {bures:.6} (bounded)"));

    let cfg = RunConfig::full(MetricKind::Average, SequenceKind::ScrambledFaure, 1_000_000, 8, 7);
    let est = run_many(&cfg, &[MetricKind::Average, MetricKind::Max], |_| {}).unwrap();
    let (avg, max) = (find(&est, MetricKind::Average), find(&est, MetricKind::Max));
    let share = |e: &Estimate| {
        let total = sepvol::integrate::merge(&e.blocks);
        total.max_single_weight / total.sum_w_metric
    };
    c.check(
        avg.heavy_tail_flag,
        format!("average, N=4, 1e6 points: heavy_tail_flag {} (largest point {:.2e} of total)", avg.heavy_tail_flag, share(avg)),
    );
    c.lines.push(format!(
        "    info max, N=4, 1e6 points: heavy_tail_flag {} (largest point {:.2e} of total)",
        max.heavy_tail_flag,
        share(max)
    ));
    results.push(c.report(6, "divergence of the max and average volumes", started));
}

fn properties(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let mut c = Criterion::new();

    let grid: Vec<f64> = (-20..=20).map(|k| 10f64.powf(k as f64 / 4.0)).collect();
    let (mut sym, mut norm, mut order) = (true, true, true);
    for m in MetricKind::ALL {
        for &x in &grid {
            norm &= (mc(m, x, x).unwrap() * x - 1.0).abs() <= 1e-12;
            for &y in &grid {
                let v = mc(m, x, y).unwrap();
                sym &= v == mc(m, y, x).unwrap();
                let (lo, hi) = (mc(MetricKind::Bures, x, y).unwrap(), mc(MetricKind::Max, x, y).unwrap());
                order &= v >= lo * (1.0 - 1e-15) && v <= hi * (1.0 + 1e-15);
            }
        }
    }
    c.check(sym, "c(x, y) == c(y, x) on a log grid, all metrics");
    c.check(norm, "c(x, x) == 1/x");
    c.check(order, "c_bures <= c <= c_max");

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut inv, mut lu, mut fixed) = (true, true, true);
    let mut cube = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.random::<f64>().clamp(1e-12, 1.0 - 1e-12)).collect() };
    let states: Vec<DensityMatrix> = (0..1000)
        .map(|_| assemble(&simplex_from_cube(&cube(3)).unwrap(), &flag_from_cube(&cube(12)).unwrap()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for rho in &states {
        inv &= partial_transpose(&partial_transpose(rho.entries())) == *rho.entries();
        let moved = rho.conjugate_by(&kron2(&haar2(&mut rng), &haar2(&mut rng)));
        lu &= is_separable(rho) == is_separable(&moved);
        fixed &= (min_pt_eigenvalue(rho) - min_pt_eigenvalue(&moved)).abs() < 1e-12;
    }
    c.check(inv, "partial transpose is an involution");
    c.check(lu && fixed, "separability and min PT eigenvalue are local-unitary invariant");

    let werner = (0..=1000)
        .map(|i| i as f64 / 1000.0)
        .map(|p| (min_pt_eigenvalue(&DensityMatrix::werner(p)) - (1.0 - 3.0 * p) / 4.0).abs())
        .fold(0.0, f64::max);
    c.check(werner <= 1e-10, format!("Werner min PT eigenvalue = (1-3p)/4, max error {werner:.1e}"));
    let third = 1.0 / 3.0;
    c.check(
        is_separable(&DensityMatrix::werner(third - 1e-10)) && !is_separable(&DensityMatrix::werner(third + 1e-10)),
        "Werner threshold at p = 1/3",
    );

    let (mut partition, mut determinism) = (true, true);
    for kind in SequenceKind::ALL {
        let whole: Vec<_> =
            stream(StreamConfig { kind, dim: 15, seed: 5, start_index: 1, count: 3000 }).unwrap().collect();
        let mut pieces = Vec::new();
        for (start, count) in [(1, 1000), (1001, 1500), (2501, 500)] {
            pieces.extend(stream(StreamConfig { kind, dim: 15, seed: 5, start_index: start, count }).unwrap());
        }
        partition &= whole == pieces;
        let again: Vec<_> =
            stream(StreamConfig { kind, dim: 15, seed: 5, start_index: 1, count: 3000 }).unwrap().collect();
        determinism &= whole == again;
    }
    c.check(partition, "stream blocks concatenate to the whole stream, bit for bit");
    c.check(determinism, "streams are deterministic in their configuration");

    let cfg = RunConfig::full(MetricKind::Km, SequenceKind::ScrambledHalton, 40_000, 4, 1);
    let strip = |mut e: Estimate| {
        e.wall_time = 0.0;
        e
    };
    c.check(
        strip(sepvol::run(&cfg).unwrap()) == strip(sepvol::run(&cfg).unwrap()),
        "identical configurations give identical estimates",
    );
    results.push(c.report(7, "property suites", started));
}

fn number_theory(results: &mut Vec<Outcome>) {
    let started = Instant::now();
    let mut c = Criterion::new();
    let list = scan_largest(DEFAULT_BOUND).unwrap();
    let tail = &list[list.len() - 2..];
    c.check(tail == [1680, 2310], format!("{} qualifying k up to {DEFAULT_BOUND}; largest two {tail:?}", list.len()));
    results.push(c.report(8, "σ₄(k) > φ(k)⁵ scan", started));
}

fn main() {
    let mut results = Vec::new();
    table_criteria(&mut results);
    hall(&mut results);
    km_ratio(&mut results);
    bloch(&mut results);
    divergence(&mut results);
    properties(&mut results);
    number_theory(&mut results);
    results.sort_by_key(|o| o.id);
    for o in &results {
        print!("{}", o.text);
    }
    let failed = results.iter().filter(|o| !o.ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
