//! Enumeration of strictly dominant integral weights in an entry window.

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::diagrams::{build_diagram, classify, ClassificationFlags};
use crate::error::{Error, Result};
use crate::lattice::{Shape, ShiftedWeight};

/// Every strictly dominant λ^ρ for gl(m|n) with all entries in [lo, hi].
pub fn strictly_dominant_weights(shape: Shape, lo: i64, hi: i64) -> Result<Vec<ShiftedWeight>> {
    if lo > hi {
        return Err(Error::Inconsistent(format!("empty entry window [{lo}, {hi}]")));
    }
    let a_choices: Vec<Vec<i64>> = (lo..=hi).rev().combinations(shape.m).collect();
    let b_choices: Vec<Vec<i64>> = (lo..=hi).combinations(shape.n).collect();
    let mut out = Vec::with_capacity(a_choices.len() * b_choices.len());
    for a in &a_choices {
        for b in &b_choices {
            out.push(ShiftedWeight::from_ints(a, b)?);
        }
    }
    Ok(out)
}

pub fn classified(shape: Shape, lo: i64, hi: i64) -> Result<Vec<(ShiftedWeight, ClassificationFlags)>> {
    strictly_dominant_weights(shape, lo, hi)?
        .into_iter()
        .map(|w| {
            let flags = classify(&build_diagram(&w)?);
            Ok((w, flags))
        })
        .collect()
}

pub fn pdc_weights(shape: Shape, lo: i64, hi: i64) -> Result<Vec<ShiftedWeight>> {
    Ok(classified(shape, lo, hi)?.into_iter().filter(|(_, f)| f.pdc).map(|(w, _)| w).collect())
}

/// A reproducible sample of `count` PDC weights, atypical ones first.
pub fn sample_pdc_weights(shape: Shape, lo: i64, hi: i64, count: usize, seed: u64) -> Result<Vec<ShiftedWeight>> {
    let all = classified(shape, lo, hi)?;
    let mut atypical: Vec<ShiftedWeight> =
        all.iter().filter(|(_, f)| f.pdc && !f.typical).map(|(w, _)| w.clone()).collect();
    let mut typical: Vec<ShiftedWeight> = all.iter().filter(|(_, f)| f.typical).map(|(w, _)| w.clone()).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    atypical.shuffle(&mut rng);
    typical.shuffle(&mut rng);
    // keep a few typical weights in the mix
    let n_typ = (count / 10).min(typical.len());
    let mut out: Vec<ShiftedWeight> = atypical.into_iter().take(count - n_typ).collect();
    out.extend(typical.into_iter().take(count - out.len()));
    out.sort();
    Ok(out)
}
