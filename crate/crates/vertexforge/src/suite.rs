//! Fixture suite: `name = expression` lines where the name selects an
//! amplitude and the expression is compared by exact field equality,
//! so any algebraically equal factorization passes.
//!
//! Names are `W(p;p;p)` for the product-formula amplitude and
//! `Wt(p;p;p)` for the closed-form one, with semicolon-separated
//! partitions in CLI syntax.

use std::path::PathBuf;

use vertexforge_core::vertex::VertexCtx;
use vertexforge_core::{ExactScalar, PartitionTriple};

use crate::{compute, new_ctx, parse_partition, CResult, Failure};

fn parse_name(name: &str) -> Result<(bool, PartitionTriple), String> {
    let (tilde, rest) = if let Some(rest) = name.strip_prefix("Wt(") {
        (true, rest)
    } else if let Some(rest) = name.strip_prefix("W(") {
        (false, rest)
    } else {
        return Err(format!("unknown amplitude name {name:?}"));
    };
    let Some(inner) = rest.strip_suffix(')') else {
        return Err(format!("unterminated amplitude name {name:?}"));
    };
    let slots: Vec<&str> = inner.split(';').collect();
    if slots.len() != 3 {
        return Err(format!("expected three partitions in {name:?}"));
    }
    let mut parts = Vec::new();
    for slot in slots {
        match parse_partition(slot) {
            Ok(p) => parts.push(p),
            Err(Failure::Usage(msg)) | Err(Failure::Compute(msg)) => return Err(msg),
        }
    }
    let [a, b, c] = <[_; 3]>::try_from(parts).expect("three slots");
    Ok((tilde, PartitionTriple::new(a, b, c)))
}

fn evaluate(ctx: &mut VertexCtx, tilde: bool, mu: &PartitionTriple) -> ExactScalar {
    if tilde {
        ctx.w_tilde(mu)
    } else {
        ctx.w_three(mu)
    }
}

pub fn run(path: &PathBuf) -> CResult<u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| compute(format!("cannot read {}: {e}", path.display())))?;
    let mut ctx = new_ctx();
    let (mut passed, mut failed, mut errors) = (0u32, 0u32, 0u32);
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, expr)) = line.split_once('=') else {
            errors += 1;
            println!("ERROR line {lineno}: expected `name = expression`");
            continue;
        };
        let name = name.trim();
        let (tilde, mu) = match parse_name(name) {
            Ok(parsed) => parsed,
            Err(msg) => {
                errors += 1;
                println!("ERROR line {lineno}: {msg}");
                continue;
            }
        };
        let expected: ExactScalar = match expr.trim().parse() {
            Ok(value) => value,
            Err(e) => {
                errors += 1;
                println!("ERROR line {lineno}: {e}");
                continue;
            }
        };
        let got = evaluate(&mut ctx, tilde, &mu);
        if got == expected {
            passed += 1;
            println!("PASS {name}");
        } else {
            failed += 1;
            println!("FAIL {name}: expected {expected}, got {got}");
        }
    }
    println!("{passed} passed, {failed} failed, {errors} errors");
    Ok(if failed == 0 && errors == 0 { 0 } else { 1 })
}
