//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, HashMap};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use flipcolor::config::{configuration, extremal_profile, AdjacentPair};
use flipcolor::coupling::{build_coupling, JointCoupling, Origin};
use flipcolor::dynamics::{ChainState, Dynamics};
use flipcolor::generators;
use flipcolor::graph::{greedy_coloring, is_proper, proper_colorings, Coloring, Graph, ListAssignment, Palette};
use flipcolor::kempe::component;
use flipcolor::lp::{check_feasible, check_trips, enumerate_extremal, gen_reduced, solve_exact, Provenance};
use flipcolor::markov::{transition_matrix, StateSpace, TransitionMatrix};
use flipcolor::metric::MetricSpace;
use flipcolor::params::FlipParams;
use flipcolor::rational::{int, rat, Rational};
use num_traits::Zero;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flipcolor"))
}

fn lp_solve_star() -> Verdict {
    let t = Instant::now();
    let sol = match solve_exact(&gen_reduced(true)) {
        Ok(s) => s,
        Err(e) => return verdict(false, e.to_string()),
    };
    let elapsed = t.elapsed();
    let feasible = check_feasible(&sol.params, &sol.kappa, &gen_reduced(true)).feasible();
    let expected = [rat(1, 1), rat(185, 616), rat(1, 6), rat(47, 462), rat(9, 154), rat(2, 77)];
    let same_p = (1..=7).all(|l| sol.params.get(l) == expected.get(l - 1).cloned().unwrap_or_else(Rational::zero));
    let out = bin().args(["lp", "solve", "P*_red"]).output().expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let cli_ok = out.status.success()
        && stdout.contains("kappa: 161/88")
        && stdout.contains("185/616, 1/6, 47/462, 9/154, 2/77");
    let pass = sol.kappa == rat(161, 88) && same_p && feasible &&sol.certified && cli_ok && within(elapsed, 1.0);
    verdict(
        pass,
        format!(
            "kappa={} p_matches={same_p} certified={} cli={cli_ok} {:.3}s",
            sol.kappa,
            sol.certified,
            elapsed.as_secs_f64()
        ),
    )
}

fn lp_solve_red() -> Verdict {
    let t = Instant::now();
    let program = gen_reduced(false);
    let sol = match solve_exact(&program) {
        Ok(s) => s,
        Err(e) => return verdict(false, e.to_string()),
    };
    let report = check_feasible(&FlipParams::vigoda(), &rat(11, 6), &program);
    let elapsed = t.elapsed();
    let tight: Vec<&Provenance> = report.tight().iter().map(|r| &r.provenance).collect();
    let rows_tight = tight.contains(&&Provenance::OneConfiguration { i: 1, j: 2 })
        && tight.contains(&&Provenance::TwoConfiguration { ell: 3 });
    // Independent evaluation of the two rows.
    let p = FlipParams::vigoda();
    let by_hand = p.get(1) - p.get(3) == rat(11, 6) - int(1) && int(4) * p.get(3) + p.get(7) == int(2) * rat(11, 6) - int(3);
    let pass = sol.kappa == rat(11, 6) && sol.certified && report.feasible() && rows_tight && by_hand && within(elapsed, 1.0);
    verdict(
        pass,
        format!(
            "kappa={} vigoda_feasible={} rows_tight={rows_tight} {:.3}s",
            sol.kappa,
            report.feasible(),
            elapsed.as_secs_f64()
        ),
    )
}

fn lp_extremal() -> Verdict {
    let t = Instant::now();
    let labels = |p: &FlipParams| -> Vec<String> {
        enumerate_extremal(p, &rat(11, 6), 8)
            .map(|v| v.iter().map(|c| c.label()).collect())
            .unwrap_or_default()
    };
    let vig = labels(&FlipParams::vigoda());
    let opt = labels(&FlipParams::optimal());
    let elapsed = t.elapsed();
    let want_vig = ["(2;1)", "(3;1)", "(4;1)", "(5;1)", "(2,2;1,1)", "(3,3;1,1)"];
    let want_opt = ["(2;1)", "(3,3;1,1)"];
    let pass = vig == want_vig && opt == want_opt && within(elapsed, 10.0);
    verdict(
        pass,
        format!("vigoda={} optimal={} {:.3}s", vig.join(" "), opt.join(" "), elapsed.as_secs_f64()),
    )
}

fn lp_trips() -> Verdict {
    let t = Instant::now();
    let v = check_trips(&FlipParams::vigoda(), &rat(11, 6));
    let o = check_trips(&FlipParams::optimal(), &rat(161, 88));
    let elapsed = t.elapsed();
    // Threshold 1/4 − (3/2)(11/6 − κ), evaluated separately.
    let thr = |k: Rational| rat(1, 4) - rat(3, 2) * (rat(11, 6) - k);
    let pass = v.passes()
        && o.passes()
        && v.threshold == rat(1, 4)
        && o.threshold == rat(43, 176)
        && thr(rat(161, 88)) == rat(43, 176)
        && within(elapsed, 1.0);
    verdict(
        pass,
        format!("vigoda={} optimal={} threshold={} {:.3}s", v.passes(), o.passes(), o.threshold, elapsed.as_secs_f64()),
    )
}

/// Common unit for flip laws: `1/(kn·D·420)`, where 420 clears every `ℓ ≤ 7`.
const SPLIT: i64 = 420;

/// One-step law of the flip chain from `sigma`, keyed by resulting coloring.
fn flip_law(g: &Graph, sigma: &Coloring, k: usize, p: &FlipParams, scale: i64) -> BTreeMap<Vec<usize>, i64> {
    let mut law = BTreeMap::new();
    let draw = scale * SPLIT;
    for u in 0..g.n() {
        for c in 0..k {
            let s = component(g, sigma, u, c);
            let ell = s.vertices.len();
            let accept = p.scaled(ell, scale) * SPLIT / ell as i64;
            let (a, b) = (sigma.get(u), c);
            let mut after = sigma.as_slice().to_vec();
            for &x in &s.vertices {
                after[x] = if sigma.get(x) == a { b } else { a };
            }
            *law.entry(after).or_insert(0) += accept;
            *law.entry(sigma.as_slice().to_vec()).or_insert(0) += draw - accept;
        }
    }
    law.retain(|_, m| *m != 0);
    law
}

fn coupled_law(cp: &JointCoupling, tau_side: bool) -> BTreeMap<Vec<usize>, i64> {
    let mut law = BTreeMap::new();
    for e in cp.entries() {
        let (a, b) = cp.outcome(e);
        let x = if tau_side { b } else { a };
        *law.entry(x.as_slice().to_vec()).or_insert(0) += e.mass * SPLIT;
    }
    law.retain(|_, m| *m != 0);
    law
}

/// `(a − a_max − 1)p_a + (b − b_max − 1)p_b + Σ (a_i q_i + b_i q'_i − min(q_i, q'_i))`.
fn configuration_bound(a: &[usize], b: &[usize], at: usize, bt: usize, p: &FlipParams) -> Rational {
    let r = a.len();
    let am = *a.iter().max().unwrap();
    let bm = *b.iter().max().unwrap();
    let ia = a.iter().position(|&x| x == am).unwrap();
    let ib = b.iter().position(|&x| x == bm).unwrap();
    let (pa, pb) = (p.get(at), p.get(bt));
    let mut total = int(at as i64 - am as i64 - 1) * &pa + int(bt as i64 - bm as i64 - 1) * &pb;
    for i in 0..r {
        let q = if i == ia { p.get(am) - &pa } else { p.get(a[i]) };
        let q2 = if i == ib { p.get(bm) - &pb } else { p.get(b[i]) };
        let m = q.clone().min(q2.clone());
        total += int(a[i] as i64) * q + int(b[i] as i64) * q2 - m;
    }
    total
}

#[derive(Default)]
struct ScanTotals {
    pairs: usize,
    marginal_failures: usize,
    color_checks: usize,
    color_failures: usize,
    improvement_failures: usize,
    min_slack: Option<Rational>,
    first_failure: Option<String>,
}

fn adjacent_proper_pairs(g: &Graph, k: usize) -> Vec<AdjacentPair> {
    let colorings = proper_colorings(g, &Palette::Uniform(k), usize::MAX).expect("no cap");
    let mut out = Vec::new();
    for s in &colorings {
        for v in 0..g.n() {
            for c in 0..k {
                if c != s.get(v) && g.neighbors(v).iter().all(|&w| s.get(w) != c) {
                    out.push(AdjacentPair::recolor(s, v, c).expect("differ at v"));
                }
            }
        }
    }
    out
}

/// Criteria 5–7 share one pass over every non-isomorphic graph with `n ≤ 5`,
/// `k ∈ {3, 4, 5}` and every adjacent proper pair.
fn coupling_scan() -> (ScanTotals, Duration) {
    let t = Instant::now();
    let p = FlipParams::optimal();
    let scale = p.denominator().unwrap();
    let eps = rat(1, 264);
    let mut totals = ScanTotals::default();
    for n in 1..=5 {
        for g in generators::all_graphs(n) {
            for k in 3..=5 {
                let delta = g.max_degree() as i64;
                for pair in adjacent_proper_pairs(&g, k) {
                    totals.pairs += 1;
                    let cp = build_coupling(&g, &pair, k, &p).expect("coupling builds");
                    let marg_ok = coupled_law(&cp, false) == flip_law(&g, pair.sigma(), k, &p, scale)
                        && coupled_law(&cp, true) == flip_law(&g, pair.tau(), k, &p, scale);
                    if !marg_ok {
                        totals.marginal_failures += 1;
                    }
                    let mut colors_ok = true;
                    for c in 0..k {
                        totals.color_checks += 1;
                        let Some(value) = cp.nabla_h_color(c) else {
                            colors_ok = false;
                            continue;
                        };
                        let conf = configuration(&g, &pair, c, None);
                        let r = conf.r();
                        let ok = if r == 0 {
                            value == int(-1)
                        } else if pair.is_special(c) {
                            value <= int(r as i64 - 1)
                        } else {
                            value <= configuration_bound(&conf.a, &conf.b, conf.a_total, conf.b_total, &p)
                        };
                        if !ok {
                            colors_ok = false;
                        }
                    }
                    if !colors_ok {
                        totals.color_failures += 1;
                    }
                    // ∇_H recomputed from the joint outcomes.
                    let nabla_h: Rational = cp
                        .entries()
                        .iter()
                        .filter(|e| e.origin != Origin::Idle)
                        .map(|e| {
                            let (a, b) = cp.outcome(e);
                            rat(e.mass, scale) * int(a.hamming(&b) as i64 - 1)
                        })
                        .sum();
                    let beta = extremal_profile(&g, &pair, &Palette::Uniform(k)).unwrap().beta();
                    let rhs = (rat(11, 6) - &eps * (int(1) - beta)) * int(delta) - int(k as i64);
                    let slack = rhs - &nabla_h;
                    if slack < Rational::zero() {
                        totals.improvement_failures += 1;
                    }
                    if totals.min_slack.as_ref().is_none_or(|m| slack < *m) {
                        totals.min_slack = Some(slack);
                    }
                    if (!marg_ok || !colors_ok) && totals.first_failure.is_none() {
                        totals.first_failure = Some(format!("n={n} k={k} {:?}->{:?}", pair.sigma().as_slice(), pair.tau().as_slice()));
                    }
                }
            }
        }
    }
    (totals, t.elapsed())
}

fn metric_properties() -> Verdict {
    let t = Instant::now();
    let gamma = rat(1, 10);
    let k = 3;
    let mut pairs = 0;
    let mut failures = 0;
    for g in generators::all_graphs(3) {
        let mut metric = MetricSpace::new(&g, Palette::Uniform(k), gamma.clone(), 1000).unwrap();
        let space = StateSpace::all(&g, &Palette::Uniform(k), 1000).unwrap();
        let states = space.states().to_vec();
        let m = states.len();
        // Floyd–Warshall over edge weights 1 − γ(1 − β).
        let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; m]; m];
        for i in 0..m {
            dist[i][i] = Some(Rational::zero());
            for j in 0..m {
                if states[i].hamming(&states[j]) == 1 {
                    let pair = AdjacentPair::new(states[i].clone(), states[j].clone()).unwrap();
                    let beta = extremal_profile(&g, &pair, &Palette::Uniform(k)).unwrap().beta();
                    dist[i][j] = Some(int(1) - &gamma * (int(1) - beta));
                }
            }
        }
        for via in 0..m {
            for i in 0..m {
                for j in 0..m {
                    if let (Some(a), Some(b)) = (&dist[i][via], &dist[via][j]) {
                        let cand = a + b;
                        if dist[i][j].as_ref().is_none_or(|d| cand < *d) {
                            dist[i][j] = Some(cand);
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                pairs += 1;
                let d = metric.distance(&states[i], &states[j]).unwrap();
                let dh = int(states[i].hamming(&states[j]) as i64);
                let db = metric.d_b(&states[i], &states[j]).unwrap();
                let mut ok = Some(&d) == dist[i][j].as_ref() && d <= dh && db >= Rational::zero();
                if states[i].hamming(&states[j]) == 1 {
                    let pair = AdjacentPair::new(states[i].clone(), states[j].clone()).unwrap();
                    let beta = extremal_profile(&g, &pair, &Palette::Uniform(k)).unwrap().beta();
                    ok &= db == &gamma * (int(1) - beta);
                }
                if !ok {
                    failures += 1;
                }
            }
        }
    }
    let elapsed = t.elapsed();
    verdict(
        failures == 0 && within(elapsed, 60.0),
        format!("state pairs={pairs} failures={failures} {:.3}s", elapsed.as_secs_f64()),
    )
}

fn doubly_stochastic_and_symmetric(m: &TransitionMatrix) -> bool {
    let size = m.len();
    let mut col = vec![Rational::zero(); size];
    for i in 0..size {
        let mut row = Rational::zero();
        for (j, v) in m.row(i) {
            row += v;
            col[*j] += v;
            if m.entry(*j, i) != *v {
                return false;
            }
        }
        if row != int(1) {
            return false;
        }
    }
    col.iter().all(|c| *c == int(1))
}

fn stationarity() -> Verdict {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for n in [5, 6] {
        let g = generators::cycle(n).unwrap();
        let d = Dynamics::flip(4, FlipParams::optimal());
        let m = transition_matrix(&g, &d, true, 1 << 20).unwrap();
        let ok = doubly_stochastic_and_symmetric(&m);
        pass &= ok;
        details.push(format!("C{n}: {} states {}", m.len(), if ok { "ok" } else { "bad" }));
    }
    let elapsed = t.elapsed();
    verdict(pass && within(elapsed, 60.0), format!("{} {:.3}s", details.join(", "), elapsed.as_secs_f64()))
}

fn mixing_time() -> Verdict {
    let t = Instant::now();
    let dir = std::env::temp_dir().join(format!("flipcolor-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("tv.csv");
    let out = bin()
        .args(["tvdist", "--graph", "cycle:6", "--k", "4", "--chain", "flip", "--preset", "optimal", "--tmax", "80", "--out"])
        .arg(&csv_path)
        .output()
        .expect("binary runs");
    let elapsed = t.elapsed();
    let stderr = String::from_utf8_lossy(&out.stderr);
    let t_mix: Option<usize> = stderr
        .lines()
        .find_map(|l| l.strip_prefix("t_mix(1/4) = "))
        .and_then(|v| v.trim().parse().ok());
    let csv = std::fs::read_to_string(&csv_path).unwrap_or_default();
    let tv: Vec<f64> = csv
        .lines()
        .skip(1)
        .filter_map(|l| l.rsplit(',').next()?.parse().ok())
        .collect();
    let _ = std::fs::remove_dir_all(&dir);
    // |Ω₀| for C₆ with 4 colors is 3⁶ + 3 = 732, so TV(0) = 731/732.
    let start_ok = tv.first().is_some_and(|&d| (d - 731.0 / 732.0).abs() < 1e-9);
    let monotone = tv.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    let first_below = tv.iter().position(|&d| d <= 0.25);
    let bound = 24.0 * 24f64.ln();
    let pass = out.status.success()
        && t_mix.is_some_and(|m| (m as f64) <= bound)
        && first_below == t_mix
        && start_ok
        && monotone
        && within(elapsed, 60.0);
    verdict(
        pass,
        format!(
            "t_mix(1/4)={} bound={bound:.2} tv0_ok={start_ok} monotone={monotone} {:.3}s",
            t_mix.map_or("none".into(), |m| m.to_string()),
            elapsed.as_secs_f64()
        ),
    )
}

fn counting() -> Verdict {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 3..=8usize {
        let g = generators::cycle(n).unwrap();
        for k in 3..=5i64 {
            let formula = (k - 1).pow(n as u32) + if n % 2 == 0 { k - 1 } else { -(k - 1) };
            // Plain odometer over all kⁿ assignments.
            let mut colors = vec![0usize; n];
            let mut count = 0i64;
            loop {
                if (0..n).all(|u| colors[u] != colors[(u + 1) % n]) {
                    count += 1;
                }
                let mut i = 0;
                while i < n && colors[i] + 1 == k as usize {
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                colors[i] += 1;
            }
            let library = StateSpace::proper(&g, &Palette::Uniform(k as usize), 1 << 20).unwrap().len() as i64;
            if count != formula || library != formula {
                bad.push(format!("C{n} k={k}: {count}/{library} vs {formula}"));
            }
        }
    }
    let elapsed = t.elapsed();
    verdict(
        bad.is_empty() && within(elapsed, 60.0),
        format!("18 cases, mismatches: {} {:.3}s", if bad.is_empty() { "none".into() } else { bad.join("; ") }, elapsed.as_secs_f64()),
    )
}

fn list_reduction() -> Verdict {
    let t = Instant::now();
    let g = generators::cycle(5).unwrap();
    let k = 4;
    let uniform = ListAssignment::uniform(5, k);
    let p = FlipParams::optimal();
    let mut equal = true;
    for restrict in [false, true] {
        let pairs = [
            (Dynamics::glauber(k), Dynamics::glauber_list(uniform.clone())),
            (Dynamics::flip(k, p.clone()), Dynamics::flip_list(uniform.clone(), p.clone())),
        ];
        for (plain, listed) in pairs {
            let a = transition_matrix(&g, &plain, restrict, 1 << 20).unwrap();
            let b = transition_matrix(&g, &listed, restrict, 1 << 20).unwrap();
            let mut ea: HashMap<(usize, usize), Rational> = HashMap::new();
            for i in 0..a.len() {
                for (j, v) in a.row(i) {
                    ea.insert((i, *j), v.clone());
                }
            }
            let mut count = 0;
            let same_states = a.space().states() == b.space().states();
            for i in 0..b.len() {
                for (j, v) in b.row(i) {
                    count += 1;
                    equal &= ea.get(&(i, *j)) == Some(v);
                }
            }
            equal &= same_states && count == ea.len();
        }
    }
    let lists = uniform.without(2, 1).unwrap();
    let d = Dynamics::flip_list(lists.clone(), p);
    let start = greedy_coloring(&g, &Palette::Lists(lists.clone()));
    let mut chain = ChainState::new(start, 2024);
    let mut escaped = !lists.is_list_coloring(&chain.current);
    let mut improper = !is_proper(&g, &chain.current).unwrap();
    for _ in 0..100_000 {
        chain.advance(&g, &d);
        escaped |= !lists.is_list_coloring(&chain.current);
        improper |= !is_proper(&g, &chain.current).unwrap();
    }
    let elapsed = t.elapsed();
    verdict(
        equal && !escaped && !improper && within(elapsed, 60.0),
        format!("matrices_equal={equal} left_lists={escaped} improper={improper} {:.3}s", elapsed.as_secs_f64()),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Verdict)> = vec![
        (1, "LP optimality of P*_red", lp_solve_star()),
        (2, "P_red optimum 11/6 with tight rows", lp_solve_red()),
        (3, "extremal configurations", lp_extremal()),
        (4, "trips side conditions", lp_trips()),
    ];
    let (scan, elapsed) = coupling_scan();
    let head = format!("{} pairs, {:.1}s", scan.pairs, elapsed.as_secs_f64());
    let first = scan.first_failure.clone().unwrap_or_default();
    results.push((
        5,
        "coupling marginals",
        verdict(
            scan.pairs > 0 && scan.marginal_failures == 0,
            format!("{head}, mismatches={} {first}", scan.marginal_failures),
        ),
    ));
    results.push((
        6,
        "per-color nabla_H bounds",
        verdict(
            scan.color_failures == 0,
            format!("{head}, {} color checks, failing pairs={}", scan.color_checks, scan.color_failures),
        ),
    ));
    results.push((
        7,
        "improvement inequality",
        verdict(
            scan.improvement_failures == 0,
            format!(
                "{head}, violations={} min slack={}",
                scan.improvement_failures,
                scan.min_slack.map_or("-".into(), |s| s.to_string())
            ),
        ),
    ));
    results.push((8, "metric properties", metric_properties()));
    results.push((9, "stationarity and symmetry", stationarity()));
    results.push((10, "mixing time on C6", mixing_time()));
    results.push((11, "proper coloring counts", counting()));
    results.push((12, "list reduction", list_reduction()));

    let mut failed = 0;
    for (id, name, v) in &results {
        println!("{} criterion {id:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
