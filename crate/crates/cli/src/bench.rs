use std::process::ExitCode;
use std::time::Instant;

use hecke_core::identities::{theorem_factors, theorem_rhs};
use hecke_core::{arith, enumerate_c, product_of, CyclotomicRing};
use serde_json::json;

use crate::{usage_error, OutputFormat};

#[derive(Debug, Clone)]
struct PhaseStats {
    median_ms: f64,
    min_ms: f64,
    max_ms: f64,
}

fn stats(mut samples: Vec<f64>) -> PhaseStats {
    samples.sort_by(f64::total_cmp);
    let k = samples.len();
    let median = if k % 2 == 1 {
        samples[k / 2]
    } else {
        (samples[k / 2 - 1] + samples[k / 2]) / 2.0
    };
    PhaseStats {
        median_ms: median,
        min_ms: samples[0],
        max_ms: samples[k - 1],
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

pub fn run(n: u64, trunc: usize, repeats: usize, format: OutputFormat) -> ExitCode {
    if n == 0 || trunc == 0 || repeats == 0 {
        return usage_error("--n, --trunc and --repeats must be positive");
    }
    let (cosets, ring, psi) = match (enumerate_c(n), CyclotomicRing::of(n), arith::psi(n)) {
        (Ok(c), Ok(r), Ok(p)) => (c, r, p),
        _ => return usage_error("invalid level"),
    };

    let mut factor_ms = Vec::with_capacity(repeats);
    let mut product_ms = Vec::with_capacity(repeats);
    let mut rhs_ms = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let (factors, t) = timed(|| theorem_factors(&cosets, n, trunc).expect("valid cosets"));
        factor_ms.push(t);
        let (_, t) = timed(|| product_of(&ring, trunc, &factors).expect("uniform factors"));
        product_ms.push(t);
        let (_, t) = timed(|| theorem_rhs(n, psi, trunc).expect("valid level"));
        rhs_ms.push(t);
    }
    let phases = [
        ("factors", stats(factor_ms)),
        ("product", stats(product_ms)),
        ("rhs_power", stats(rhs_ms)),
    ];

    match format {
        OutputFormat::Json => {
            let mut map = serde_json::Map::new();
            for (name, s) in &phases {
                map.insert(
                    (*name).to_owned(),
                    json!({ "median_ms": s.median_ms, "min_ms": s.min_ms, "max_ms": s.max_ms }),
                );
            }
            let doc = json!({ "N": n, "T": trunc, "repeats": repeats, "phases": map });
            println!("{}", serde_json::to_string_pretty(&doc).expect("bench serializes"));
        }
        OutputFormat::Plain => {
            println!("bench N={n} T={trunc} repeats={repeats}");
            for (name, s) in &phases {
                println!(
                    "  {name:<10} median {:>10.3} ms  min {:>10.3} ms  max {:>10.3} ms",
                    s.median_ms, s.min_ms, s.max_ms
                );
            }
        }
    }
    ExitCode::SUCCESS
}
