//! One test per acceptance criterion. Every check prints a PASS or FAIL
//! line; a criterion passes only if all of its checks do.

// the expected values are the printed constants, kept as printed
#![allow(clippy::approx_constant)]

use std::f64::consts::{LN_2, PI};
use std::time::{Duration, Instant};

use renorm_entropy::convergence::{
    trace_binomial, trace_discrete_uniform, trace_poisson, ConvergenceTrace, DEFAULT_NS,
    DEFAULT_RATES,
};
use renorm_entropy::entropy::{
    binomial_h_asymptotic, differential_h, differential_h_quadrature, gamma_ratio, h_bar, h_hat,
    h_tilde, poisson_h_asymptotic, poisson_h_exact, shannon_h, H_tilde,
};
use renorm_entropy::figures::Figure;
use renorm_entropy::laws::{DiscreteLaw, Law};
use renorm_entropy::quantiles::{iqrr, quantile, rho_tilde, rho_tilde_discrete, rho_tilde_mixture};

struct Criterion {
    id: u8,
    failures: usize,
    started: Instant,
}

impl Criterion {
    fn new(id: u8) -> Self {
        Criterion {
            id,
            failures: 0,
            started: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl AsRef<str>) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("criterion {} {tag} {}", self.id, what.as_ref());
        if !ok {
            self.failures += 1;
        }
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let ok = (got - want).abs() <= tol;
        self.check(ok, format!("{what}: {got:.10} vs {want} (tol {tol:e})"));
    }

    fn finish(mut self, budget: Duration) {
        let elapsed = self.started.elapsed();
        self.check(
            elapsed < budget,
            format!("runtime {elapsed:?} < {budget:?}"),
        );
        let verdict = if self.failures == 0 { "PASS" } else { "FAIL" };
        println!("criterion {} overall {verdict}", self.id);
        assert_eq!(self.failures, 0, "criterion {} had failing checks", self.id);
    }
}

#[test]
fn criterion_1_constants() {
    let mut c = Criterion::new(1);
    let tol = 5e-5;
    let gauss = Law::gaussian(1.7).unwrap();
    let unif = Law::uniform(2.5).unwrap();
    let exp = Law::exponential(0.4).unwrap();
    let lap = Law::laplace(3.0).unwrap();
    let cauchy = Law::cauchy(1.2).unwrap();

    c.close("h_tilde gaussian", h_tilde(&gauss).unwrap(), 1.11959, tol);
    c.close("h_tilde uniform", h_tilde(&unif).unwrap(), 0.693147, tol);
    c.close("h_tilde exponential", h_tilde(&exp).unwrap(), 0.905952, tol);
    c.close("h_tilde laplace", h_tilde(&lap).unwrap(), 1.36651, tol);
    c.close("h_tilde cauchy", h_tilde(&cauchy).unwrap(), 1.83788, tol);

    let zero = h_hat(&gauss).unwrap();
    c.check(
        zero == 0.0,
        format!("h_hat gaussian is exactly zero: {zero:e}"),
    );
    c.close("h_hat uniform", h_hat(&unif).unwrap(), 0.1765, 5e-4);
    c.close("h_hat exponential", h_hat(&exp).unwrap(), 0.4189, 5e-4);
    c.close("h_hat laplace", h_hat(&lap).unwrap(), 0.0724, 5e-4);

    c.close("h_bar gaussian", h_bar(&gauss).unwrap(), 1.41894, tol);
    c.close("h_bar uniform", h_bar(&unif).unwrap(), 0.0, tol);
    c.close("h_bar exponential", h_bar(&exp).unwrap(), 1.0, tol);
    c.close("h_bar cauchy", h_bar(&cauchy).unwrap(), 2.53102, tol);
    c.finish(Duration::from_secs(1));
}

#[test]
fn criterion_2_asymptotics() {
    let mut c = Criterion::new(2);
    let bin = shannon_h(&Law::binomial(1000, 0.3).unwrap()).unwrap();
    c.close(
        "H[Bin(1000,0.3)] vs asymptotic",
        bin,
        binomial_h_asymptotic(1000, 0.3).unwrap(),
        1e-4,
    );
    c.close(
        "H[Poisson(100)] series vs asymptotic",
        poisson_h_exact(100.0).unwrap(),
        poisson_h_asymptotic(100.0).unwrap(),
        1e-6,
    );
    c.finish(Duration::from_secs(1));
}

#[test]
fn criterion_3_divergence() {
    let mut c = Criterion::new(3);
    let h = |n| shannon_h(&Law::binomial(n, 0.5).unwrap()).unwrap();
    c.close("H[Bin(1024)] - H[Bin(256)]", h(1024) - h(256), LN_2, 0.02);
    for n in [4u64, 64, 1024] {
        let got = shannon_h(&Law::discrete_uniform(n, 1.0).unwrap()).unwrap();
        c.check(
            got == (n as f64).ln(),
            format!("H[U_{n}] = ln {n} exactly: {got}"),
        );
    }
    c.finish(Duration::from_secs(1));
}

fn trace_checks(c: &mut Criterion, trace: &ConvergenceTrace) {
    for p in &trace.points {
        println!(
            "    {:>6} H={:.6} H_tilde={:.6} gap={:.6}",
            p.index, p.H, p.H_tilde, p.gap
        );
    }
    let last = trace.final_gap().unwrap();
    c.check(
        last < 0.01,
        format!("{}: final gap {last:.6} < 0.01", trace.label),
    );
    c.check(
        trace.gaps_nonincreasing(1e-12),
        format!("{}: gaps nonincreasing from the second point", trace.label),
    );
    let defect = trace.standardization_defect();
    c.check(
        defect <= 1e-10,
        format!(
            "{}: standardized vs plain H_tilde within 1e-10 ({defect:e})",
            trace.label
        ),
    );
}

#[test]
fn criterion_4_renormalized_convergence() {
    let mut c = Criterion::new(4);
    let bin = trace_binomial(0.5, &DEFAULT_NS).unwrap();
    let poi = trace_poisson(&DEFAULT_RATES).unwrap();
    let uni = trace_discrete_uniform(1.0, &DEFAULT_NS).unwrap();
    trace_checks(&mut c, &bin);
    trace_checks(&mut c, &poi);
    trace_checks(&mut c, &uni);
    c.finish(Duration::from_secs(10));
}

/// Catalog laws with a density, with parameters spread over their ranges.
fn continuous_catalog() -> Vec<Law> {
    vec![
        Law::gaussian(1.3).unwrap(),
        Law::uniform(2.0).unwrap(),
        Law::gamma(0.5, 1.0).unwrap(),
        Law::gamma(2.5, 0.7).unwrap(),
        Law::gamma(10.0, 2.0).unwrap(),
        Law::exponential(0.8).unwrap(),
        Law::laplace(1.5).unwrap(),
        Law::student(1.5, 1.0).unwrap(),
        Law::student(3.0, 2.0).unwrap(),
        Law::student(10.0, 0.5).unwrap(),
        Law::cauchy(0.6).unwrap(),
    ]
}

fn discrete_catalog() -> Vec<Law> {
    vec![
        Law::binomial(40, 0.3).unwrap(),
        Law::binomial(7, 0.5).unwrap(),
        Law::poisson(6.5).unwrap(),
        Law::discrete_uniform(12, 3.0).unwrap(),
    ]
}

const AFFINE_GRID: [(f64, f64); 9] = [
    (0.1, -5.0),
    (0.1, 0.0),
    (0.1, 2.0),
    (1.0, -5.0),
    (1.0, 0.0),
    (1.0, 2.0),
    (7.3, -5.0),
    (7.3, 0.0),
    (7.3, 2.0),
];

/// Explicit laws with masses in multiples of 1/256 and at most 12 atoms.
fn explicit_corpus() -> Vec<(Vec<f64>, Vec<u32>)> {
    let mut out = vec![
        (vec![0.0, 1.0], vec![128, 128]),
        (vec![0.0, 1.0, 5.0], vec![32, 192, 32]),
        (vec![-2.0, 0.5, 1.0, 4.0], vec![64, 64, 64, 64]),
        (vec![0.0, 1.0, 3.0, 6.0, 10.0], vec![1, 63, 128, 63, 1]),
        (vec![0.0, 0.25, 0.5], vec![200, 0, 56]),
    ];
    // deterministic spread of shapes: counts from a quadratic residue walk
    for atoms in 2..=12usize {
        for shift in 0..4u32 {
            let raw: Vec<u32> = (0..atoms as u32)
                .map(|k| 1 + (k * k * 7 + shift * 13 + k * 3) % 29)
                .collect();
            let total: u32 = raw.iter().sum();
            let mut counts: Vec<u32> = raw.iter().map(|r| r * 256 / total).collect();
            let rest = 256 - counts.iter().sum::<u32>();
            counts[(shift as usize) % atoms] += rest;
            let support = (0..atoms)
                .scan(0.0, |x, k| {
                    *x += 0.5 + ((k * 5 + shift as usize) % 7) as f64;
                    Some(*x)
                })
                .collect();
            out.push((support, counts));
        }
    }
    out
}

/// Smallest nonzero `ρ(p)` on `p = i/N`, `i = 1..=N/4`, in exact integer
/// arithmetic.
fn dense_grid_rho(support: &[f64], counts: &[u32]) -> Option<f64> {
    const N: u64 = 4_000_000;
    let cum: Vec<u64> = counts
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += u64::from(c);
            Some(*acc)
        })
        .collect();
    // Q(p) is the first atom with p <= C_k/256
    let first = |num: u64| cum.partition_point(|&ck| ck * N < num * 256);
    let mut best: Option<f64> = None;
    for i in 1..=N / 4 {
        let r = support[first(N - i)] - support[first(i)];
        if r > 0.0 && best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    best
}

#[test]
fn criterion_5_invariants() {
    let mut c = Criterion::new(5);

    let mut worst_tilde: f64 = 0.0;
    let mut worst_hat: f64 = 0.0;
    let mut worst_gamma: f64 = 0.0;
    let mut worst_shift: f64 = 0.0;
    for base in continuous_catalog().into_iter().chain(discrete_catalog()) {
        for (a, b) in AFFINE_GRID {
            let mapped = base.clone().affine(a, b).unwrap();
            if base.is_continuous() {
                worst_tilde =
                    worst_tilde.max((h_tilde(&mapped).unwrap() - h_tilde(&base).unwrap()).abs());
                let shift = differential_h(&mapped).unwrap() - differential_h(&base).unwrap();
                worst_shift = worst_shift.max((shift - a.ln()).abs());
                if let Ok(v) = h_hat(&base) {
                    worst_hat = worst_hat.max((h_hat(&mapped).unwrap() - v).abs());
                }
            } else {
                worst_tilde =
                    worst_tilde.max((H_tilde(&mapped).unwrap() - H_tilde(&base).unwrap()).abs());
            }
            if let Ok(g) = gamma_ratio(&base) {
                worst_gamma = worst_gamma.max((gamma_ratio(&mapped).unwrap() - g).abs());
            }
        }
    }
    c.check(
        worst_tilde <= 1e-10,
        format!("affine invariance of h_tilde/H_tilde: {worst_tilde:e}"),
    );
    c.check(
        worst_hat <= 1e-10,
        format!("affine invariance of h_hat: {worst_hat:e}"),
    );
    c.check(
        worst_gamma <= 1e-10,
        format!("affine invariance of gamma ratio: {worst_gamma:e}"),
    );
    c.check(
        worst_shift <= 1e-10,
        format!("h shifts by ln a: {worst_shift:e}"),
    );

    let mut hat_ok = true;
    let mut hat_min = f64::INFINITY;
    let finite_variance = [
        Law::gaussian(0.3).unwrap(),
        Law::gaussian(4.0).unwrap(),
        Law::uniform(1.0).unwrap(),
        Law::exponential(2.0).unwrap(),
        Law::laplace(1.0).unwrap(),
    ]
    .into_iter()
    .chain([0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0].map(|k| Law::gamma(k, 1.0).unwrap()))
    .chain([2.1, 2.5, 3.0, 5.0, 10.0, 50.0].map(|k| Law::student(k, 1.0).unwrap()));
    for law in finite_variance {
        let v = h_hat(&law).unwrap();
        let is_gauss = matches!(law, Law::Continuous(f) if f.name() == "gaussian");
        hat_ok &= if is_gauss { v == 0.0 } else { v > 0.0 };
        if !is_gauss {
            hat_min = hat_min.min(v);
        }
    }
    c.check(
        hat_ok,
        format!("h_hat >= 0, zero only for gaussian (smallest nonzero {hat_min:e})"),
    );

    let mut worst_quad: f64 = 0.0;
    for law in continuous_catalog() {
        let q = differential_h_quadrature(&law).unwrap().value;
        worst_quad = worst_quad.max((q - differential_h(&law).unwrap()).abs());
    }
    c.check(
        worst_quad <= 1e-8,
        format!("quadrature vs analytic h: {worst_quad:e}"),
    );

    let mut worst_trip: f64 = 0.0;
    let ps = [
        1e-10,
        1e-6,
        0.001,
        0.05,
        0.25,
        0.5,
        0.75,
        0.95,
        0.999,
        1.0 - 1e-6,
    ];
    for law in continuous_catalog() {
        for p in ps {
            let x = quantile(&law, p).unwrap();
            worst_trip = worst_trip.max((law.cdf(x) - p).abs());
        }
    }
    c.check(
        worst_trip <= 1e-10,
        format!("quantile round trip |F(Q(p)) - p|: {worst_trip:e}"),
    );

    let corpus = explicit_corpus();
    let mut mismatches = 0;
    for (support, counts) in &corpus {
        let masses = counts.iter().map(|&k| f64::from(k) / 256.0).collect();
        let law = DiscreteLaw::explicit(support.clone(), masses).unwrap();
        let got = rho_tilde_discrete(&law).ok();
        let want = dense_grid_rho(support, counts);
        if got != want {
            mismatches += 1;
            println!("    mismatch on {support:?} {counts:?}: {got:?} vs {want:?}");
        }
    }
    c.check(
        mismatches == 0,
        format!(
            "discrete rho_tilde equals the dense-grid oracle on {} laws",
            corpus.len()
        ),
    );
    c.finish(Duration::from_secs(60));
}

#[test]
fn criterion_6_mixture() {
    let mut c = Criterion::new(6);
    let law = Law::mixture(vec![
        (2.0 / 3.0, Law::degenerate(0.5).unwrap()),
        (1.0 / 3.0, Law::uniform(1.0).unwrap()),
    ])
    .unwrap();
    let r = iqrr(&law).unwrap();
    c.check(r == 0.0, format!("iqrr is exactly 0: {r}"));
    let Law::Mixture(m) = &law else {
        unreachable!()
    };
    let kappa = rho_tilde_mixture(m).unwrap();
    c.check(
        kappa == 1.0 / 6.0,
        format!("rho_tilde_mixture = 1/6: {kappa}"),
    );
    c.check(
        rho_tilde(&law).unwrap() == kappa,
        "rho_tilde dispatches to the mixture rule",
    );
    // the piecewise display: 3p below 1/6, 1/2 in between, 3p - 2 above 5/6
    for (p, want) in [(0.1, 3.0 * 0.1), (0.5, 0.5), (0.9, 3.0 * 0.9 - 2.0)] {
        let got = quantile(&law, p).unwrap();
        c.check(
            (got - want).abs() <= 1e-15,
            format!("Q({p}) = {got:.17} vs display {want:.17}"),
        );
    }
    c.finish(Duration::from_secs(1));
}

fn values(fig: Figure, from: f64, to: f64) -> Vec<(f64, Option<f64>)> {
    fig.curve(from, to, 200).unwrap()
}

fn defined(curve: &[(f64, Option<f64>)]) -> Vec<f64> {
    curve.iter().filter_map(|(_, v)| *v).collect()
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn criterion_7_figure_shapes() {
    let mut c = Criterion::new(7);
    let gauss = 1.11959;

    let f1 = defined(&values(Figure::GammaTilde, 0.1, 50.0));
    c.check(
        increasing(&f1),
        "fig 1: gamma h_tilde increasing on [0.1, 50]",
    );
    c.check(
        f1[0] < 0.0,
        format!("fig 1: negative for small shape ({:.4})", f1[0]),
    );
    c.check(
        f1.iter().all(|&v| v < gauss),
        "fig 1: stays below the gaussian value",
    );
    let f1_long = defined(&values(Figure::GammaTilde, 1.0, 200.0));
    c.check(
        increasing(&f1_long) && (gauss - f1_long[199]).abs() < 1e-2,
        format!(
            "fig 1: increasing on [1, 200] toward {gauss} (last {:.5})",
            f1_long[199]
        ),
    );

    let f2 = defined(&values(Figure::StudentTilde, 0.1, 50.0));
    c.check(decreasing(&f2), "fig 2: student h_tilde decreasing");
    c.check(
        f2.iter().all(|&v| v > gauss),
        "fig 2: above the gaussian value everywhere",
    );

    let f3 = defined(&values(Figure::GammaHat, 0.1, 50.0));
    c.check(f3.iter().all(|&v| v > 0.0), "fig 3: gamma h_hat positive");
    c.check(
        decreasing(&f3) && f3[199] < 0.01,
        format!("fig 3: decreasing toward 0 (last {:.5})", f3[199]),
    );

    let f4 = values(Figure::StudentHat, 0.5, 50.0);
    let undefined_ok = f4.iter().all(|(lam, v)| (*lam > 2.0) == v.is_some());
    c.check(undefined_ok, "fig 4: defined exactly where shape > 2");
    c.check(
        defined(&f4).iter().all(|&v| v >= 0.0),
        "fig 4: nonnegative where defined",
    );

    let f5 = defined(&values(Figure::GammaBar, 0.1, 50.0));
    c.check(increasing(&f5), "fig 5: gamma h_bar increasing");
    c.check(
        f5[0] < 0.0 && f5[199] > 0.0,
        "fig 5: crosses from negative to positive",
    );

    let f6 = defined(&values(Figure::StudentBar, 0.5, 50.0));
    c.check(decreasing(&f6), "fig 6: student h_bar decreasing");
    let at_one = Figure::StudentBar.value(1.0).unwrap().unwrap();
    c.close(
        "fig 6: value at shape 1 is ln(4 pi)",
        at_one,
        (4.0 * PI).ln(),
        1e-12,
    );
    c.finish(Duration::from_secs(30));
}
