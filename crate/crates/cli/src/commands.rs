//! Subcommands reading one matrix and reporting decompositions, bases, fibers and classifications.

use std::collections::BTreeSet;
use std::fmt::Write;

use bouquet_core::bases::LawrenceReport;
use bouquet_core::bouquets::{check_unimodular_correspondence_with_cap, UnimodularReport};
use bouquet_core::{
    check_bouquet_with_basis, compute_bouquets, subbouquet_decomposition, vectors_to_text,
    walk_from_vector, BouquetDecomposition, BouquetKind, Error, Hypergraph, IntMatrix,
    SignedVector, Toric, Verdict,
};
use serde_json::{json, Value};

use crate::{Context, Failure, Report};

fn one_based(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn kind_name(kind: BouquetKind) -> &'static str {
    match kind {
        BouquetKind::Free => "free",
        BouquetKind::Mixed => "mixed",
        BouquetKind::NonMixed => "non-mixed",
    }
}

pub fn decomposition_text(dec: &BouquetDecomposition) -> String {
    let mut out = format!("{} bouquets\n", dec.len());
    for (k, b) in dec.bouquets.iter().enumerate() {
        let _ = writeln!(
            out,
            "B{} {} columns {} c {} a {}",
            k + 1,
            kind_name(b.kind),
            one_based(&b.column_indices),
            b.c,
            SignedVector::new(b.a.clone())
        );
    }
    out.push_str("A_B\n");
    out.push_str(&dec.bouquet_matrix.to_text());
    out
}

pub fn bouquets(a: &IntMatrix) -> Result<Report, Failure> {
    let dec = compute_bouquets(a);
    Ok(Report::new(decomposition_text(&dec), json!(dec)))
}

/// A vector set in the "k n" format; JSON entries carry their indispensability when it is decided.
fn vector_set(toric: &Toric, elements: &[SignedVector]) -> Result<Report, Failure> {
    let n = toric.matrix().cols();
    let indispensable: Option<BTreeSet<&SignedVector>> = if toric.is_positively_graded() {
        Some(toric.indispensables()?.iter().collect())
    } else {
        None
    };
    let entries: Vec<Value> = elements
        .iter()
        .map(|u| json!({ "vector": u, "indispensable": indispensable.as_ref().map(|s| s.contains(u)) }))
        .collect();
    Ok(Report::new(
        vectors_to_text(n, elements),
        json!({ "n": n, "count": elements.len(), "elements": entries }),
    ))
}

pub fn graver(ctx: &Context, a: &IntMatrix) -> Result<Report, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    vector_set(&toric, toric.graver()?)
}

pub fn circuits(ctx: &Context, a: &IntMatrix) -> Result<Report, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    vector_set(&toric, &toric.circuits()?)
}

pub fn markov(ctx: &Context, a: &IntMatrix) -> Result<Report, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    vector_set(&toric, &toric.minimal_markov_basis()?.elements)
}

pub fn indispensable(ctx: &Context, a: &IntMatrix) -> Result<Report, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    if !toric.is_positively_graded() {
        return Err(Error::NotPositivelyGraded.into());
    }
    vector_set(&toric, toric.indispensables()?)
}

pub fn fiber(ctx: &Context, a: &IntMatrix, x: &SignedVector) -> Result<Report, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    let f = toric.fiber(x.coords(), None)?;
    let text = format!(
        "degree {}\ncomplete {}\n{}",
        f.degree,
        f.complete,
        vectors_to_text(a.cols(), &f.elements)
    );
    let mut report = Report::new(text, json!(f));
    if !f.complete {
        report.inconclusive = Some(format!(
            "fiber search hit the coordinate cap after {} points; raise --cap-fiber",
            f.elements.len()
        ));
    }
    Ok(report)
}

fn verdict_json(v: Verdict) -> Value {
    json!(v)
}

fn lawrence_text(out: &mut String, r: &LawrenceReport) {
    let _ = writeln!(out, "cond_a {}", r.cond_a);
    let _ = writeln!(out, "cond_b {}", r.cond_b);
    let _ = writeln!(out, "cond_c {}", r.cond_c);
    let _ = writeln!(out, "mixed bouquets S {{{}}}", one_based(&r.s));
    let _ = writeln!(out, "conclusive {}", r.conclusive);
    let _ = writeln!(out, "consistent {}", r.consistent);
    let _ = writeln!(out, "graver A_B {}", r.graver_ab_size);
    let _ = writeln!(out, "graver A {}", r.graver_a_size);
    let _ = writeln!(out, "indispensable A {}", r.indispensable_a_size);
    for w in &r.witnesses {
        let _ = writeln!(out, "witness {} = {} +sc {}", w.u, w.v, w.w);
    }
}

pub fn classify(ctx: &Context, a: &IntMatrix) -> Result<Report, Failure> {
    let toric = Toric::with_limits(a, ctx.limits.clone());
    let dec = compute_bouquets(a);
    let stable = !dec.has_mixed();
    let graded = toric.is_positively_graded();
    let generic = if graded {
        Some(toric.is_generic()?)
    } else {
        None
    };
    let unimodular: Result<UnimodularReport, Error> =
        check_unimodular_correspondence_with_cap(a, ctx.limits.minor_cap);
    let empty_lawrence = toric.s_lawrence(&[])?;
    let s_lawrence = match &ctx.set {
        Some(s) => {
            if let Some(&bad) = s.iter().find(|&&i| i >= a.cols()) {
                return Err(Failure::Error(format!(
                    "--set index {} outside 1..={}",
                    bad + 1,
                    a.cols()
                )));
            }
            Some((s.clone(), toric.s_lawrence(s)?))
        }
        None => None,
    };
    let lawrence = bouquet_core::bases::classify_lawrence_with(a, &ctx.limits)?;

    let mut text = String::new();
    let _ = writeln!(text, "stable {stable}");
    let _ = writeln!(text, "positively graded {graded}");
    let _ = writeln!(
        text,
        "generic {}",
        generic.map_or("n/a".to_string(), |g| g.to_string())
    );
    match &unimodular {
        Ok(u) => {
            let _ = writeln!(text, "unimodular {}", u.uni_a);
            let _ = writeln!(text, "unimodular A_B {}", u.uni_ab);
            let _ = writeln!(text, "unit c_B {}", u.all_c_unit);
        }
        Err(e) => {
            let _ = writeln!(text, "unimodular unknown ({e})");
        }
    }
    let _ = writeln!(text, "empty-set Lawrence {empty_lawrence}");
    if let Some((s, v)) = &s_lawrence {
        let _ = writeln!(text, "S-Lawrence {{{}}} {v}", one_based(s));
    }
    lawrence_text(&mut text, &lawrence);

    let json = json!({
        "stable": stable,
        "positively_graded": graded,
        "generic": generic,
        "unimodular": unimodular.as_ref().ok(),
        "empty_lawrence": verdict_json(empty_lawrence),
        "s_lawrence": s_lawrence.as_ref().map(|(s, v)| json!({
            "S": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "verdict": verdict_json(*v),
        })),
        "lawrence": lawrence,
        "decomposition": lawrence.decomposition,
    });
    let mut report = Report::new(text, json);
    let open: Vec<&str> = [
        ("empty-set Lawrence", empty_lawrence),
        (
            "S-Lawrence",
            s_lawrence.as_ref().map_or(Verdict::True, |(_, v)| *v),
        ),
        ("cond_a", lawrence.cond_a),
        ("cond_b", lawrence.cond_b),
        ("cond_c", lawrence.cond_c),
    ]
    .into_iter()
    .filter(|(_, v)| *v == Verdict::Inconclusive)
    .map(|(name, _)| name)
    .collect();
    if !open.is_empty() {
        report.inconclusive = Some(format!(
            "capped fiber searches left {} undecided",
            open.join(", ")
        ));
    }
    if !lawrence.consistent {
        report.failed = Some("the three Lawrence conditions disagree".into());
    }
    Ok(report)
}

pub fn lift(
    a: &IntMatrix,
    parts: Option<&[Vec<usize>]>,
    u: &SignedVector,
    forward: bool,
) -> Result<Report, Failure> {
    let dec = match parts {
        Some(p) => subbouquet_decomposition(a, p)?,
        None => compute_bouquets(a),
    };
    let v = if forward {
        dec.lift(u)?
    } else {
        dec.unlift(u)?
    };
    let text = v
        .coords()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
        + "\n";
    Ok(Report::new(text, json!({ "vector": v })))
}

pub fn incidence(h: &Hypergraph) -> Result<Report, Failure> {
    let m = h.incidence_matrix();
    Ok(Report::new(m.to_text(), json!({ "matrix": m })))
}

pub fn walk(h: &Hypergraph, u: &SignedVector) -> Result<Report, Failure> {
    let (walk, balanced) = walk_from_vector(h, u)?;
    let text = format!("{walk}balanced {balanced}\n");
    Ok(Report::new(
        text,
        json!({ "walk": walk, "balanced": balanced }),
    ))
}

pub fn basis(h: &Hypergraph, u: &[usize]) -> Result<Report, Failure> {
    let b = check_bouquet_with_basis(h, u).ok_or_else(|| {
        Failure::Error(format!(
            "vertices {{{}}} are not the basis of a bouquet",
            one_based(u)
        ))
    })?;
    let text = format!(
        "edges {}\nc {}\na {}\n",
        one_based(&b.edges),
        b.c,
        SignedVector::new(b.a.clone())
    );
    Ok(Report::new(text, json!(b)))
}
