//! JSON report documents. `serde_json` maps keep keys sorted, so equal
//! inputs give byte-identical output.

use serde_json::{json, Value};
use substral::algebraic::{FieldElement, PisotKind};
use substral::coincidence::{CertificationReport, CertifyConfig, OverlapClass, PairWitness, SpectrumVerdict};
use substral::substitution::{word_to_string, Periodicity, Substitution};

use crate::parse::{decimal_bound, rational_string};

pub const DECIMALS: usize = 20;

pub fn element(x: &FieldElement) -> Value {
    json!({
        "coords": x.coords().iter().map(rational_string).collect::<Vec<_>>(),
        "decimal": x.to_decimal(DECIMALS),
    })
}

pub fn substitution(s: &Substitution) -> Value {
    let d = s.size();
    Value::Array(
        s.images()
            .iter()
            .enumerate()
            .map(|(a, w)| json!(format!("{} -> {}", a + 1, word_to_string(w, d))))
            .collect(),
    )
}

fn class(c: &OverlapClass) -> Value {
    json!({
        "i": c.i + 1,
        "j": c.j + 1,
        "x": element(&c.x),
        "coincidence": c.is_coincidence(),
    })
}

fn verdict(v: &SpectrumVerdict) -> Value {
    match v {
        SpectrumVerdict::NotPdsEvidence { cycle, component } => json!({
            "label": v.label(),
            "cycle": cycle.iter().map(class).collect::<Vec<_>>(),
            "component": component.iter().map(class).collect::<Vec<_>>(),
        }),
        SpectrumVerdict::Inconclusive { reason } => json!({ "label": v.label(), "reason": reason }),
        _ => json!({ "label": v.label() }),
    }
}

fn pisot_kind(k: PisotKind) -> &'static str {
    match k {
        PisotKind::Pisot => "Pisot",
        PisotKind::NotPisot => "NotPisot",
        PisotKind::Borderline => "Borderline",
    }
}

fn periodicity(p: &Periodicity) -> Value {
    match p {
        Periodicity::PeriodicDetected { length } => json!({ "label": p.label(), "length": length }),
        _ => json!({ "label": p.label() }),
    }
}

fn pair(w: &PairWitness) -> Value {
    let r = &w.report;
    let intervals = |v: &[(FieldElement, FieldElement)]| {
        v.iter().map(|(a, b)| json!([element(a), element(b)])).collect::<Vec<_>>()
    };
    json!({
        "i": w.i + 1,
        "j": w.j + 1,
        "power": w.power,
        "interval": [element(&w.interval.0), element(&w.interval.1)],
        "samples": r.samples,
        "hits": r.hits,
        "covered": intervals(&r.covered),
        "uncovered": intervals(&r.uncovered),
        "covered_measure": element(&r.covered_measure),
        "coverage": element(&r.coverage),
    })
}

pub fn config(cfg: &CertifyConfig) -> Value {
    json!({
        "n_max": cfg.n_max,
        "samples": cfg.samples,
        "cap": cfg.cap,
        "window": cfg.window,
        "tolerance": rational_string(&cfg.tolerance),
        "periodicity_window": cfg.periodicity_window,
    })
}

pub fn version() -> Value {
    json!({ "name": "substral", "version": env!("CARGO_PKG_VERSION") })
}

/// Full report for `check`. `input` echoes the source and `provenance`
/// carries any generator comment found in it.
pub fn check_document(r: &CertificationReport, cfg: &CertifyConfig, input: Value, provenance: Value) -> Value {
    let h = &r.hypotheses;
    let hypotheses = json!({
        "primitive": h.primitive.is_some(),
        "primitive_power": h.primitive,
        "initial_injective": h.initial_injective,
        "final_letters": {
            "constant": h.final_letters.constant,
            "power": h.final_letters.power,
            "letter": h.final_letters.letter.map(|c| c + 1),
        },
        "pisot": h.pisot.map(pisot_kind),
        "non_periodic": h.non_periodic.as_ref().map(periodicity),
        "theorem_applies": h.theorem_applies,
    });
    let eigen = match &r.field {
        Some(f) => {
            let (lo, hi) = f.dyadic_interval(64);
            json!({
                "char_poly": r.char_poly.to_string(),
                "min_poly": f.min_poly().to_string(),
                "degree": f.degree(),
                "lambda": {
                    "interval": [rational_string(&lo), rational_string(&hi)],
                    "decimal": f.generator().to_decimal(DECIMALS),
                },
                "omega": r.omega.as_ref().map(|w| w.iter().map(element).collect::<Vec<_>>()),
            })
        }
        None => json!({ "char_poly": r.char_poly.to_string() }),
    };
    let pisot = r.pisot.as_ref().map(|p| {
        json!({
            "kind": pisot_kind(p.kind),
            "precision_bits": p.precision_bits,
            "conjugate_moduli": p
                .conjugate_moduli
                .iter()
                .map(|(lo, hi)| json!([decimal_bound(lo, 12, false), decimal_bound(hi, 12, true)]))
                .collect::<Vec<_>>(),
        })
    });
    let overlap = r.graph.as_ref().map(|g| {
        json!({
            "nodes": g.nodes.iter().map(class).collect::<Vec<_>>(),
            "edges": g.edges,
            "seeds": g.seeds,
            "cap": g.cap,
            "truncated": g.truncated,
            "return_vectors": r.return_vectors.iter().map(element).collect::<Vec<_>>(),
            "span_rank": r.span_rank,
        })
    });
    json!({
        "input": input,
        "provenance": provenance,
        "substitution": substitution(&r.substitution),
        "hypotheses": hypotheses,
        "eigen": eigen,
        "pisot": pisot,
        "seed": r.seed.map(|s| json!({ "k": s.k, "a": s.a + 1, "b": s.b + 1 })),
        "overlap": overlap,
        "overlap_verdict": verdict(&r.overlap_verdict),
        "prototile_pair": r.prototile_pair.as_ref().map(pair),
        "verdict": verdict(&r.verdict),
        "notes": r.notes,
        "config": config(cfg),
        "tool": version(),
    })
}
