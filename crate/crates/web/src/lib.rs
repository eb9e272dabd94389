//! WebAssembly bindings for the browser demo in `www/`.

use flipcolor::dynamics::{run_chain, ChainKind, Dynamics};
use flipcolor::graph::{greedy_coloring, Graph, Palette};
use flipcolor::lp::{check_feasible, enumerate_extremal, gen_reduced, solve_exact};
use flipcolor::markov::{tv_profile, StartSet};
use flipcolor::params::FlipParams;
use flipcolor::rational::{format_rational, rat};
use wasm_bindgen::prelude::*;

/// Largest state space the page will enumerate for a TV curve.
const BROWSER_STATE_CAP: usize = 20_000;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn preset(name: &str) -> Result<FlipParams, JsError> {
    match name {
        "optimal" => Ok(FlipParams::optimal()),
        "vigoda" => Ok(FlipParams::vigoda()),
        "singletons" => Ok(FlipParams::singletons()),
        other => Err(js_err(format!("unknown preset {other:?}"))),
    }
}

fn dynamics(chain: &str, k: usize, params: &str) -> Result<Dynamics, JsError> {
    match chain.parse::<ChainKind>().map_err(js_err)? {
        ChainKind::Glauber => Ok(Dynamics::glauber(k)),
        ChainKind::Flip => Ok(Dynamics::flip(k, preset(params)?)),
        other => Err(js_err(format!("{} needs list input, which the page does not offer", other.name()))),
    }
}

#[wasm_bindgen]
pub struct SampleResult {
    coloring: Vec<u32>,
    moves: u32,
    proper: bool,
    edges: Vec<u32>,
}

#[wasm_bindgen]
impl SampleResult {
    #[wasm_bindgen(getter)]
    pub fn coloring(&self) -> Vec<u32> {
        self.coloring.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn moves(&self) -> u32 {
        self.moves
    }

    #[wasm_bindgen(getter)]
    pub fn proper(&self) -> bool {
        self.proper
    }

    /// Flattened `u, v` pairs.
    #[wasm_bindgen(getter)]
    pub fn edges(&self) -> Vec<u32> {
        self.edges.clone()
    }
}

/// Runs a chain from the greedy coloring of the graph given as an edge list.
#[wasm_bindgen]
pub fn sample(graph: &str, k: usize, chain: &str, params: &str, steps: u32, seed: u32) -> Result<SampleResult, JsError> {
    let g = Graph::parse(graph).map_err(js_err)?;
    let d = dynamics(chain, k, params)?;
    let start = greedy_coloring(&g, &Palette::Uniform(k));
    let summary = run_chain(&g, &start, &d, u64::from(steps), u64::from(seed)).map_err(js_err)?;
    Ok(SampleResult {
        coloring: summary.final_state.as_slice().iter().map(|&c| c as u32).collect(),
        moves: summary.moves as u32,
        proper: summary.proper,
        edges: g.edges().flat_map(|(u, v)| [u as u32, v as u32]).collect(),
    })
}

/// Worst-case TV distance to uniform on proper colorings for `t = 0..=t_max`.
#[wasm_bindgen]
pub fn tv_curve(graph: &str, k: usize, chain: &str, params: &str, t_max: usize) -> Result<Vec<f64>, JsError> {
    let g = Graph::parse(graph).map_err(js_err)?;
    let d = dynamics(chain, k, params)?;
    let profile = tv_profile(&g, &d, t_max, StartSet::Proper, BROWSER_STATE_CAP).map_err(js_err)?;
    Ok(profile.tv)
}

/// Solves `P_red` or `P*_red` and lists the tight configurations of the optimum.
#[wasm_bindgen]
pub fn solve_program(starred: bool) -> Result<String, JsError> {
    let program = gen_reduced(starred);
    let sol = solve_exact(&program).map_err(js_err)?;
    let feasible = check_feasible(&sol.params, &sol.kappa, &program).feasible();
    let p: Vec<String> = sol.params.values().iter().map(format_rational).collect();
    let mut out = format!(
        "p = ({})\nkappa = {}\ncertificate verified: {}\nfeasible: {}\n",
        p.join(", "),
        format_rational(&sol.kappa),
        sol.certified,
        feasible
    );
    if let Ok(found) = enumerate_extremal(&sol.params, &rat(11, 6), 8) {
        let labels: Vec<String> = found.iter().map(|c| c.label()).collect();
        out.push_str(&format!("tight configurations at 11/6: {}\n", labels.join(" ")));
    }
    Ok(out)
}
