use std::process::ExitCode;

use hecke_core::{arith, enumerate_c, enumerate_c_prime, partition_numbers};
use serde_json::{json, Value};

use crate::{usage_error, OutputFormat, TableKind};

fn arith_rows(max: u64) -> hecke_core::Result<Vec<Value>> {
    (1..=max)
        .map(|n| {
            Ok(json!({
                "N": n,
                "phi": arith::euler_phi(n)?,
                "mu": arith::moebius(n)?,
                "sigma": arith::sigma(n)?,
                "psi": arith::psi(n)?,
                "t": arith::odd_prime_count(n)?,
            }))
        })
        .collect()
}

fn coset_rows(n: u64) -> hecke_core::Result<Vec<Value>> {
    let primitive = enumerate_c(n)?;
    Ok(enumerate_c_prime(n)?
        .into_iter()
        .map(|m| {
            let (f, r) = m.strip();
            json!({
                "a": m.a,
                "b": m.b,
                "d": m.d,
                "in_C": primitive.contains(&m),
                "strip_f": f,
                "strip_image": [r.a, r.b, r.d],
                "strip_level": r.level,
            })
        })
        .collect())
}

pub fn run(kind: TableKind, max: Option<u64>, n: Option<u64>, format: OutputFormat) -> ExitCode {
    let bound = match kind {
        TableKind::Cosets => n.or(max),
        _ => max.or(n),
    };
    let bound = match bound {
        Some(b) if b >= 1 => b,
        Some(b) => return usage_error(format!("bound must be positive, got {b}")),
        None => return usage_error("missing bound (--max, or --n for cosets)"),
    };

    match kind {
        TableKind::Arith => {
            let rows = match arith_rows(bound) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            match format {
                OutputFormat::Json => print_json("arith", bound, rows),
                OutputFormat::Plain => {
                    println!("{:>6} {:>6} {:>3} {:>8} {:>8} {:>3}", "N", "phi", "mu", "sigma", "psi", "t");
                    for r in rows {
                        let col = |k: &str| r[k].to_string();
                        println!(
                            "{:>6} {:>6} {:>3} {:>8} {:>8} {:>3}",
                            col("N"),
                            col("phi"),
                            col("mu"),
                            col("sigma"),
                            col("psi"),
                            col("t")
                        );
                    }
                }
            }
        }
        TableKind::Cosets => {
            let rows = match coset_rows(bound) {
                Ok(r) => r,
                Err(e) => return usage_error(e),
            };
            match format {
                OutputFormat::Json => print_json("cosets", bound, rows),
                OutputFormat::Plain => {
                    println!("C'_{bound} (* marks C_{bound}); strip: f, image, level");
                    for r in rows {
                        let img = &r["strip_image"];
                        println!(
                            "({},{},{}){}  f={} -> ({},{},{}) level {}",
                            r["a"],
                            r["b"],
                            r["d"],
                            if r["in_C"] == true { "*" } else { " " },
                            r["strip_f"],
                            img[0],
                            img[1],
                            img[2],
                            r["strip_level"]
                        );
                    }
                }
            }
        }
        TableKind::Partitions => {
            let p = partition_numbers(bound as usize);
            match format {
                OutputFormat::Json => {
                    let rows = p.iter().map(|v| Value::String(v.to_string())).collect();
                    print_json("partitions", bound, rows)
                }
                OutputFormat::Plain => {
                    let line: Vec<String> = p.iter().map(ToString::to_string).collect();
                    println!("{}", line.join(","));
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn print_json(kind: &str, bound: u64, rows: Vec<Value>) {
    let doc = json!({ "table": kind, "bound": bound, "rows": rows });
    println!("{}", serde_json::to_string_pretty(&doc).expect("table serializes"));
}
