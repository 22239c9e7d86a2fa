//! One function per subcommand. Each returns the JSON `result` and a text
//! rendering; every index and permutation in them is 1-based.

use anyhow::{bail, Context as _, Result};
use serde_json::{json, Value};
use upq_core::arrangements::{
    appropriate_arrangement, enumerate_admissible_bounded, transposition_path,
};
use upq_core::criterion::{nonvanishing_bounded, nonvanishing_simplified};
use upq_core::packet::{
    arthur_vogan, compute_packet, multiplicity_report, PacketEntry, PacketOptions,
};
use upq_core::padic::{
    padic_nonvanishing, project_ef, require_padic_domain, sign_of, to_extended,
    ExtendedMultiSegment, PadicWitness,
};
use upq_core::segment::intersection_size;
use upq_core::tableau::{
    build_tableau, overlap, trapa_reduce, Antitableau, NuFillType, Reduction, Row, ZeroCause,
};
use upq_core::transition::phi;
use upq_core::{Error, Permutation, Verdict, Witness};

use crate::input::Context;
use crate::render;

pub struct Outcome {
    pub result: Value,
    pub text: String,
    /// A zero verdict from `check`.
    pub zero: bool,
}

fn perm(p: &Permutation) -> Vec<usize> {
    p.one_based()
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "condition": format!("{:?}", w.kind),
        "indices": w.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "sigma": perm(&w.sigma),
        "values": w.values,
        "lhs": w.lhs,
        "rhs": w.rhs,
        "text": w.to_string(),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "nonzero": v.nonzero,
        "witness": v.witness.as_ref().map(witness_json),
    })
}

fn rows_json(rows: &[Row]) -> Value {
    rows.iter()
        .map(|r| json!({"length": r.length, "sign": r.sign}))
        .collect()
}

fn antitableau_json(t: &Antitableau) -> Value {
    json!(t.rows)
}

fn cause_json(c: &ZeroCause) -> Value {
    match c {
        ZeroCause::OutsideBox { position, value, m } => {
            json!({"cause": "outside_box", "position": position + 1, "value": value, "m": m})
        }
        ZeroCause::Overlap {
            position,
            overlap,
            sing,
        } => {
            json!({"cause": "overlap", "positions": [position + 1, position + 2], "overlap": overlap, "sing": sing})
        }
    }
}

fn ems_json(e: &ExtendedMultiSegment) -> Value {
    json!({"l": e.l, "eta": e.eta, "sigma": perm(&e.sigma)})
}

fn padic_witness_json(w: &PadicWitness) -> Value {
    match w {
        PadicWitness::NegativeL { index, l, sigma } => {
            json!({"condition": "B", "index": index + 1, "l": l, "sigma": perm(sigma), "text": w.to_string()})
        }
        PadicWitness::Adjacent {
            indices,
            l,
            eta,
            sigma,
        } => json!({
            "condition": "C",
            "indices": [indices[0] + 1, indices[1] + 1],
            "l": l,
            "eta": eta,
            "sigma": perm(sigma),
            "text": w.to_string(),
        }),
    }
}

fn fill_json(f: &NuFillType) -> Value {
    json!({"segment": f.segment().to_string(), "values": f.values()})
}

pub fn check(ctx: &Context, engine: &str) -> Result<Outcome> {
    let p = ctx.require_p()?;
    let verdict = match engine {
        "full" => nonvanishing_bounded(&ctx.psi, p, ctx.max_r())?,
        "simplified" => nonvanishing_simplified(&ctx.psi, p)?,
        "tableau" => {
            let nonzero = trapa_reduce(&ctx.psi, p)?.is_nonzero();
            Verdict {
                nonzero,
                witness: None,
            }
        }
        other => bail!("unknown engine {other:?}: expected full, simplified or tableau"),
    };
    let mut result = verdict_json(&verdict);
    result["engine"] = json!(engine);
    if ctx.options.verify {
        let full = nonvanishing_bounded(&ctx.psi, p, ctx.max_r())?.nonzero;
        let simplified = nonvanishing_simplified(&ctx.psi, p)?.nonzero;
        let tableau = trapa_reduce(&ctx.psi, p)?.is_nonzero();
        if full != verdict.nonzero || simplified != verdict.nonzero || tableau != verdict.nonzero {
            return Err(Error::InvariantViolation(format!(
                "engines disagree: full {full}, simplified {simplified}, tableau {tableau}"
            ))
            .into());
        }
        result["verified"] = json!({"full": full, "simplified": simplified, "tableau": tableau});
    }
    let text = match &verdict.witness {
        _ if verdict.nonzero => "nonzero".to_string(),
        Some(w) => format!("zero\n{w}"),
        None => "zero".to_string(),
    };
    Ok(Outcome {
        result,
        text,
        zero: !verdict.nonzero,
    })
}

pub fn tableau(ctx: &Context) -> Result<Outcome> {
    let p = ctx.require_p()?;
    let psi = &ctx.psi;
    let tau = appropriate_arrangement(psi);
    let moved = phi(psi, p, &tau)?;
    let mut result = json!({
        "arrangement": perm(&tau),
        "p_at_arrangement": moved.entries,
    });
    let mut text = format!("appropriate arrangement {tau}, p = {:?}\n", moved.entries);
    if moved.in_box(psi) && p.in_box(psi) {
        let state = build_tableau(psi, &moved)?;
        let columns: Vec<Value> = state
            .columns
            .iter()
            .map(|c| {
                json!({
                    "segment": c.fill.segment().to_string(),
                    "type": c.skew.values(),
                    "plus": c.signed.plus,
                    "minus": c.signed.minus,
                    "fill": c.fill.values(),
                })
            })
            .collect();
        let pairs: Vec<Value> = (0..psi.r().saturating_sub(1))
            .map(|h| {
                let (x, y) = (state.columns[h].fill.segment(), state.columns[h + 1].fill.segment());
                json!({"positions": [h + 1, h + 2], "overlap": overlap(&state, h), "sing": intersection_size(&x, &y)})
            })
            .collect();
        result["columns"] = json!(columns);
        result["overlaps"] = json!(pairs);
        result["signed_rows"] = rows_json(&state.rows);
        text.push_str(&format!("signed rows: {}\n", render::rows(&state.rows)));
    }
    match trapa_reduce(psi, p)? {
        Reduction::Zero(cause) => {
            result["reduction"] = json!({"nonzero": false, "zero": cause_json(&cause)});
            text.push_str(&format!("zero: {}", render::cause(&cause)));
        }
        Reduction::NonZero {
            antitableau,
            columns,
            ..
        } => {
            result["reduction"] = json!({
                "nonzero": true,
                "antitableau": antitableau_json(&antitableau),
                "columns": columns.iter().map(fill_json).collect::<Vec<_>>(),
            });
            text.push_str(&render::grid(&antitableau));
        }
    }
    Ok(Outcome {
        result,
        text,
        zero: false,
    })
}

pub fn padic(ctx: &Context) -> Result<Outcome> {
    let p = ctx.require_p()?;
    let psi = &ctx.psi;
    require_padic_domain(psi)?;
    let ext = to_extended(psi, p)?;
    let in_box = ext.l.iter().all(|&l| l >= 0);
    let (sign, image) = if in_box {
        (Some(sign_of(psi, &ext)?), Some(project_ef(psi, &ext)?))
    } else {
        (None, None)
    };
    let verdict = padic_nonvanishing(psi, &ext)?;
    let result = json!({
        "extended": ems_json(&ext),
        "sign": sign,
        "image": image.as_ref().map(ems_json),
        "n_odd": psi.n() % 2 == 1,
        "nonzero": verdict.nonzero,
        "witness": verdict.witness.as_ref().map(padic_witness_json),
    });
    let mut text = format!("l = {:?}, η = {}\n", ext.l, render::signs(&ext.eta));
    if let (Some(s), Some(img)) = (sign, &image) {
        text.push_str(&format!(
            "sign {s}; p-adic image l = {:?}, η = {}\n",
            img.l,
            render::signs(&img.eta)
        ));
    }
    text.push_str(
        match &verdict.witness {
            None => "nonzero".to_string(),
            Some(w) => format!("zero\n{w}"),
        }
        .as_str(),
    );
    Ok(Outcome {
        result,
        text,
        zero: false,
    })
}

pub fn arrangements(ctx: &Context) -> Result<Outcome> {
    let psi = &ctx.psi;
    let all = enumerate_admissible_bounded(psi, ctx.max_r())?;
    let tau = appropriate_arrangement(psi);
    let listing: Vec<Value> = all
        .iter()
        .map(|s| {
            let labels = psi.range_classify(s).unwrap_or_default();
            json!({"sigma": perm(s), "ranges": labels})
        })
        .collect();
    let mut text = format!("{} admissible arrangements; appropriate {tau}\n", all.len());
    for s in &all {
        let labels: Vec<String> = psi
            .range_classify(s)?
            .iter()
            .map(|l| format!("{l:?}"))
            .collect();
        text.push_str(&format!("{s}  {}\n", labels.join(" ")));
    }
    Ok(Outcome {
        result: json!({"count": all.len(), "admissible": listing, "appropriate": perm(&tau)}),
        text: text.trim_end().to_string(),
        zero: false,
    })
}

pub fn transition(ctx: &Context, to: &[usize]) -> Result<Outcome> {
    let p = ctx.require_p()?;
    let tau = Permutation::from_one_based(to)?;
    let path = transposition_path(&ctx.psi, &p.sigma, &tau)?;
    let moved = phi(&ctx.psi, p, &tau)?;
    let result = json!({
        "from": perm(&p.sigma),
        "to": perm(&tau),
        "path": path.iter().map(|h| h + 1).collect::<Vec<_>>(),
        "p": moved.entries,
    });
    Ok(Outcome {
        result,
        text: format!(
            "{} at {} -> {:?} at {}",
            render::vector(&p.entries),
            p.sigma,
            moved.entries,
            tau
        ),
        zero: false,
    })
}

fn entry_json(e: &PacketEntry) -> Value {
    json!({
        "p": e.p.entries,
        "levi": e.levi,
        "lambda": e.lambda,
        "antitableau": antitableau_json(&e.antitableau),
        "signed_rows": rows_json(&e.rows),
        "padic_image": e.padic_image.as_ref().map(ems_json),
    })
}

fn packet_options(ctx: &Context) -> PacketOptions {
    PacketOptions {
        verify: ctx.options.verify,
        max_r: ctx.max_r(),
    }
}

pub fn packet(ctx: &Context) -> Result<Outcome> {
    let rank = ctx
        .p_rank
        .context("this command needs \"p_rank\" (or --rank)")?;
    let packet = compute_packet(&ctx.psi, rank, packet_options(ctx))?;
    let mult = multiplicity_report(&packet.entries);
    let collisions: Vec<[usize; 2]> = mult
        .collisions
        .iter()
        .map(|&(a, b)| [a + 1, b + 1])
        .collect();
    let result = json!({
        "p_rank": rank,
        "scanned": packet.scanned,
        "size": packet.entries.len(),
        "entries": packet.entries.iter().map(entry_json).collect::<Vec<_>>(),
        "multiplicity_free": mult.multiplicity_free,
        "collisions": collisions,
    });
    let mut text = format!(
        "rank {rank}: {} of {} parameters are nonzero\n",
        packet.entries.len(),
        packet.scanned
    );
    for e in &packet.entries {
        text.push_str(&format!(
            "\np = {}  rows {}\n",
            render::vector(&e.p.entries),
            render::rows(&e.rows)
        ));
        text.push_str(&render::grid(&e.antitableau));
        text.push('\n');
    }
    if !mult.multiplicity_free {
        text.push_str(&format!("\ncollisions: {collisions:?}\n"));
    }
    Ok(Outcome {
        result,
        text: text.trim_end().to_string(),
        zero: false,
    })
}

pub fn av(ctx: &Context) -> Result<Outcome> {
    let report = arthur_vogan(&ctx.psi, packet_options(ctx))?;
    let packets: Vec<Value> = report
        .packets
        .iter()
        .map(|p| {
            json!({
                "p_rank": p.p_rank,
                "scanned": p.scanned,
                "size": p.entries.len(),
                "multiplicity_free": multiplicity_report(&p.entries).multiplicity_free,
                "entries": p.entries.iter().map(entry_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let audit = report.fiber_audit.as_ref().map(|a| {
        json!({
            "n_odd": a.n_odd,
            "expected_fiber": a.expected_fiber,
            "images": a.images,
            "preimages": a.preimages,
            "ok": a.ok(),
            "bad_fibers": a.bad_fibers,
        })
    });
    let mut text = format!(
        "n = {}, {} nonzero parameters in total\n",
        report.n, report.total
    );
    for p in &report.packets {
        text.push_str(&format!(
            "rank {:>2}: {} of {}\n",
            p.p_rank,
            p.entries.len(),
            p.scanned
        ));
    }
    if let Some(a) = &report.fiber_audit {
        text.push_str(&format!(
            "p-adic images: {} images of {} parameters, expected fiber {}, {}\n",
            a.images,
            a.preimages,
            a.expected_fiber,
            if a.ok() { "consistent" } else { "INCONSISTENT" }
        ));
    }
    Ok(Outcome {
        result: json!({"n": report.n, "total": report.total, "packets": packets, "fiber_audit": audit}),
        text: text.trim_end().to_string(),
        zero: false,
    })
}
