//! Solver-neutral exports of an assembled relaxation.
//!
//! Two formats are provided:
//!
//! * a JSON document carrying the full relaxation (measures, rows, blocks,
//!   objective) for archival and cross-checking, and
//! * the standard sparse SDPA input format (`.dat-s`) so the relaxation can
//!   be handed to any external semidefinite solver.
//!
//! Both are *byte-stable*: assembling the same problem at the same order
//! always produces identical bytes, and each export embeds a SHA-256
//! content hash computed over the body (excluding the hash line/field
//! itself) so downstream artifacts can be traced back to the exact
//! relaxation they were produced from.

use std::fmt::Write as _;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::relaxation::MomentRelaxation;

/// SHA-256 of `bytes` as a lowercase hex string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        write!(out, "{b:02x}").expect("writing to String cannot fail");
    }
    out
}

/// Serialize the relaxation as a JSON document with an embedded
/// `content_hash` over the rest of the document.
pub fn to_json(relax: &MomentRelaxation) -> String {
    let measures: Vec<Value> = relax
        .measures
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "vars": m.var_names,
                "order": m.order,
                "offset": m.offset,
                "num_moments": m.num_moments(),
            })
        })
        .collect();
    let rows: Vec<Value> = relax
        .rows
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "terms": r.terms.iter().map(|&(i, c)| json!([i, c])).collect::<Vec<_>>(),
                "rhs": r.rhs,
            })
        })
        .collect();
    let blocks: Vec<Value> = relax
        .blocks
        .iter()
        .map(|b| {
            json!({
                "name": b.name,
                "side": b.side,
                "entries": b
                    .entries
                    .iter()
                    .map(|((i, j), form)| {
                        json!([i, j, form.iter().map(|&(k, c)| json!([k, c])).collect::<Vec<_>>()])
                    })
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let body = json!({
        "format": "moment-relaxation",
        "format_version": 1,
        "order": relax.order,
        "num_moments": relax.num_moments,
        "objective_sense": "maximize",
        "objective": relax.objective.iter().map(|&(i, c)| json!([i, c])).collect::<Vec<_>>(),
        "measures": measures,
        "rows": rows,
        "blocks": blocks,
        "warnings": relax.warnings,
    });
    let body_str = serde_json::to_string(&body).expect("value serialization cannot fail");
    let hash = sha256_hex(body_str.as_bytes());
    let mut doc = body;
    doc.as_object_mut()
        .expect("body is an object")
        .insert("content_hash".into(), json!(format!("sha256:{hash}")));
    serde_json::to_string_pretty(&doc).expect("value serialization cannot fail")
}

/// Serialize the relaxation in sparse SDPA format (`.dat-s`).
///
/// SDPA solves `min c^T x  s.t.  X = sum_i x_i F_i - F_0  psd`, so the
/// moment vector becomes the SDPA variable vector with `c = -objective`
/// (SDPA minimizes; the relaxation maximizes). Each PSD block maps to one
/// SDPA block. Equality rows, which SDPA does not support natively, are
/// encoded as a trailing diagonal block with a pair of opposing one-by-one
/// inequalities `±(a . y - rhs) >= 0` per row.
///
/// The final line is a comment carrying a SHA-256 hash of all preceding
/// bytes.
pub fn to_sdpa(relax: &MomentRelaxation) -> String {
    let mut s = String::new();
    let push = |s: &mut String, line: &str| {
        s.push_str(line);
        s.push('\n');
    };
    push(&mut s, "* moment relaxation, sparse SDPA format");
    push(
        &mut s,
        "* variables are global moments; objective row is the negated \
         maximization objective",
    );
    push(
        &mut s,
        "* final diagonal block encodes equality rows as paired inequalities",
    );
    push(&mut s, &format!("{}", relax.num_moments));
    let nblocks = relax.blocks.len() + 1;
    push(&mut s, &format!("{nblocks}"));
    let mut sizes: Vec<String> = relax.blocks.iter().map(|b| b.side.to_string()).collect();
    sizes.push(format!("-{}", 2 * relax.rows.len()));
    push(&mut s, &sizes.join(" "));

    let mut c = vec![0.0f64; relax.num_moments];
    for &(i, v) in &relax.objective {
        c[i] = -v;
    }
    let c_line: Vec<String> = c.iter().map(|v| fmt_f64(*v)).collect();
    push(&mut s, &c_line.join(" "));

    // PSD blocks: entry (i, j) of block `blk` contributes F_k[i][j] = coeff
    // for every moment k in its linear form (1-based indices in the file).
    for (bi, b) in relax.blocks.iter().enumerate() {
        for ((i, j), form) in &b.entries {
            for &(k, v) in form {
                if v != 0.0 {
                    push(
                        &mut s,
                        &format!("{} {} {} {} {}", k + 1, bi + 1, i + 1, j + 1, fmt_f64(v)),
                    );
                }
            }
        }
    }
    // Equality rows in the diagonal block: slot 2r+1 holds a.y - rhs >= 0,
    // slot 2r+2 holds rhs - a.y >= 0.
    let diag = relax.blocks.len() + 1;
    for (r, row) in relax.rows.iter().enumerate() {
        let (pos, neg) = (2 * r + 1, 2 * r + 2);
        if row.rhs != 0.0 {
            push(
                &mut s,
                &format!("0 {diag} {pos} {pos} {}", fmt_f64(row.rhs)),
            );
            push(
                &mut s,
                &format!("0 {diag} {neg} {neg} {}", fmt_f64(-row.rhs)),
            );
        }
        for &(k, v) in &row.terms {
            if v != 0.0 {
                push(&mut s, &format!("{} {diag} {pos} {pos} {}", k + 1, fmt_f64(v)));
                push(
                    &mut s,
                    &format!("{} {diag} {neg} {neg} {}", k + 1, fmt_f64(-v)),
                );
            }
        }
    }
    let hash = sha256_hex(s.as_bytes());
    push(&mut s, &format!("*content-hash: sha256:{hash}"));
    s
}

/// Deterministic decimal formatting for solver files: full round-trip
/// precision, no locale dependence.
fn fmt_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{:.1}", v)
    } else {
        format!("{v:.17e}")
    }
}
