//! Seeded random search for positively graded matrices without mixed bouquets whose Graver basis
//! equals their set of indispensable binomials. Candidates are reported, not certified.

use bouquet_core::exact::kernel_lattice_basis;
use bouquet_core::{compute_bouquets, Error, IntMatrix, Toric};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{Context, Failure, Report};

#[derive(Args)]
pub struct SearchArgs {
    /// Number of random matrices drawn.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 3)]
    rows: usize,
    #[arg(long, default_value_t = 6)]
    cols: usize,
    /// Entries are drawn from 0..=max-entry (or -max..=max with --signed).
    #[arg(long, default_value_t = 2)]
    max_entry: i64,
    #[arg(long)]
    signed: bool,
}

fn draw(rng: &mut ChaCha8Rng, args: &SearchArgs) -> IntMatrix {
    let low = if args.signed { -args.max_entry } else { 0 };
    let rows: Vec<Vec<i64>> = (0..args.rows)
        .map(|_| {
            (0..args.cols)
                .map(|_| rng.random_range(low..=args.max_entry))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).expect("rows have equal length")
}

pub fn run(ctx: &Context, args: &SearchArgs) -> Result<Report, Failure> {
    if args.rows == 0 || args.cols == 0 || args.max_entry < 1 {
        return Err(Failure::Error(
            "--rows, --cols and --max-entry must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let (mut examined, mut skipped) = (0usize, 0usize);
    let mut candidates = Vec::new();
    for trial in 1..=args.trials {
        let a = draw(&mut rng, args);
        if !a.zero_columns().is_empty()
            || kernel_lattice_basis(&a).dimension() == 0
            || compute_bouquets(&a).has_mixed()
        {
            continue;
        }
        let toric = Toric::with_limits(&a, ctx.limits.clone());
        if !toric.is_positively_graded() {
            continue;
        }
        examined += 1;
        let (graver, indispensable) = match (toric.graver(), toric.indispensables()) {
            (Ok(g), Ok(s)) => (g.len(), s.len()),
            (Err(Error::GraverCapExceeded(_)), _) | (_, Err(Error::GraverCapExceeded(_))) => {
                skipped += 1;
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e.into()),
        };
        if graver == indispensable {
            candidates.push((trial, a, graver));
        }
    }
    let mut text = format!(
        "seed {} trials {} examined {} skipped {} candidates {}\n",
        ctx.seed,
        args.trials,
        examined,
        skipped,
        candidates.len()
    );
    for (trial, a, graver) in &candidates {
        text.push_str(&format!(
            "trial {trial}, {graver} Graver elements\n{}",
            a.to_text()
        ));
    }
    let json = json!({
        "seed": ctx.seed,
        "trials": args.trials,
        "examined": examined,
        "skipped": skipped,
        "candidates": candidates
            .iter()
            .map(|(trial, a, graver)| json!({ "trial": trial, "matrix": a, "graver_size": graver }))
            .collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json))
}
