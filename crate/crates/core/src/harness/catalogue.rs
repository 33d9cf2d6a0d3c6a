//! Registry of named problems, grouped by domain.

use std::fmt::Write;

use crate::blackbox::{BooleanFamily, RegressionBenchmark};
use crate::error::{GpError, Result};

pub const DOMAINS: [&str; 3] = ["logic_synthesis", "symbolic_regression", "policy_search"];

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogueEntry {
    pub domain: &'static str,
    pub name: String,
    pub params: String,
}

fn boolean_params(family: BooleanFamily) -> &'static str {
    match family {
        BooleanFamily::Adder => "size: bits per operand (inputs 2*size+1, outputs size+1)",
        BooleanFamily::Multiplier => "size: bits per operand (inputs 2*size, outputs 2*size)",
        BooleanFamily::Parity => "size: input count (1 output, odd parity)",
        BooleanFamily::Comparator => "size: bits per operand (outputs lt, eq, gt)",
        BooleanFamily::Multiplexer => "size: address bits k (inputs k+2^k)",
        BooleanFamily::Majority => "size: odd input count",
    }
}

pub fn catalogue() -> Vec<CatalogueEntry> {
    let mut out = Vec::new();
    for f in BooleanFamily::ALL {
        out.push(CatalogueEntry {
            domain: DOMAINS[0],
            name: f.name().to_string(),
            params: format!("{}; metric hamming", boolean_params(f)),
        });
    }
    for b in RegressionBenchmark::all() {
        let (lo, hi) = b.default_range();
        out.push(CatalogueEntry {
            domain: DOMAINS[1],
            name: b.name(),
            params: format!(
                "{}; inputs {}; points (20), range ([{lo}, {hi}]), sample_seed (0), metric mse|mae, epsilon (1e-10)",
                b.formula(),
                b.n_inputs()
            ),
        });
    }
    out.push(CatalogueEntry {
        domain: DOMAINS[2],
        name: "cartpole".to_string(),
        params: "4 state inputs, 2 actions; episodes (5), gamma (1.0), max_steps (200), episode_seed (0), target_return (perfect balance)".to_string(),
    });
    out.push(CatalogueEntry {
        domain: DOMAINS[2],
        name: "gridworld:WxH:GX,GY".to_string(),
        params: "start (0,0), step reward -1, 4 actions; episodes (1), gamma (1.0), max_steps (2*W*H), target_return (shortest walk)".to_string(),
    });
    out
}

/// Names accepted as `problem.name` (gridworld in its templated form).
pub fn problem_names() -> Vec<String> {
    catalogue().into_iter().map(|e| e.name).collect()
}

/// Catalogue text, optionally restricted to one domain.
pub fn list_catalogue(domain: Option<&str>) -> Result<String> {
    if let Some(d) = domain {
        if !DOMAINS.contains(&d) {
            return Err(GpError::config(format!(
                "unknown domain `{d}`; valid domains: {}",
                DOMAINS.join(", ")
            )));
        }
    }
    let entries = catalogue();
    let mut text = String::new();
    for d in DOMAINS.iter().filter(|d| domain.is_none_or(|want| want == **d)) {
        writeln!(text, "{d}:").unwrap();
        for e in entries.iter().filter(|e| e.domain == *d) {
            writeln!(text, "  {:<22} {}", e.name, e.params).unwrap();
        }
    }
    Ok(text)
}
