//! Both sides of the character identity, the simple character itself and
//! the verification run comparing them.

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[cfg(feature = "unguarded")]
use crate::diagrams::raise_to_component_max;
use crate::diagrams::{build_diagram, classify, ClassificationFlags};
use crate::error::{Error, Result};
use crate::lattice::{cone_height, is_regular, rho, simple_roots, ShiftedWeight, WeylElement};
use crate::paths::{enumerate_p_lambda, enumerate_paths, trivial_path};
use crate::pdc::AtypicalFrame;
use crate::series::{
    coefficient_path_side, coefficient_pdc_side, f_w_clipped, weyl_denominator_inverse, CharacterSeries,
};

/// e^ρR · ch L(λ) = Σ_{μ∈P_λ} d_{λ,μ} (−1)^{l_{λ,μ}} F_W(e^{μ^ρ}), base λ^ρ.
///
/// Every W-image of a dominant μ^ρ lies at least as deep as μ^ρ itself, so
/// the μ beyond the cut cannot reach the window.
pub fn path_side(lambda_rho: &ShiftedWeight, max_height: u32) -> Result<CharacterSeries> {
    let mut sources = Vec::new();
    for mu in enumerate_p_lambda(lambda_rho, max_height)? {
        let d = enumerate_paths(&mu, lambda_rho)?.len() as i64;
        let l = trivial_path(&mu, lambda_rho)?.length();
        sources.push((mu, if l % 2 == 0 { d } else { -d }));
    }
    Ok(f_w_clipped(sources.iter().map(|(mu, c)| (mu, *c)), lambda_rho, max_height))
}

/// F_W(e^⇑ Π_{β∈S}(1 + e^{−β})^{−1}) without the prefactor, together with
/// |⇑ − λ^ρ|_S and t_λ.
///
/// The geometric factors are expanded by S-degree Σkᵢ ≤ cut + |⇑ − λ^ρ|_S.
/// The W_r-regrouping that turns the path sum into this one preserves the
/// S-degree, and a μ of height ≤ cut has μ̄ of S-degree ≤ cut below λ^ρ, so
/// the window is exact.
fn closed_form_numerator(
    lambda_rho: &ShiftedWeight,
    up: &ShiftedWeight,
    max_height: u32,
) -> Result<(CharacterSeries, i64, u64)> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    let u: i64 = frame.offsets(up, lambda_rho)?.iter().sum();
    let degree = max_height as i64 + u;
    let shape = lambda_rho.shape();
    let betas: Vec<ShiftedWeight> = frame.roots.iter().map(|b| b.to_weight(shape)).collect();

    let mut sources: Vec<(ShiftedWeight, i64)> = Vec::new();
    let mut ks = vec![0i64; frame.r()];
    fn expand(
        i: usize,
        left: i64,
        ks: &mut Vec<i64>,
        up: &ShiftedWeight,
        betas: &[ShiftedWeight],
        out: &mut Vec<(ShiftedWeight, i64)>,
    ) {
        if i == ks.len() {
            let mut nu = up.clone();
            for (k, b) in ks.iter().zip(betas) {
                nu = nu.checked_sub(&b.scale(*k)).expect("same shape");
            }
            let total: i64 = ks.iter().sum();
            out.push((nu, if total % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..=left {
            ks[i] = k;
            expand(i + 1, left - k, ks, up, betas, out);
        }
        ks[i] = 0;
    }
    expand(0, degree, &mut ks, up, &betas, &mut sources);
    let numerator = f_w_clipped(sources.iter().map(|(nu, c)| (nu, *c)), lambda_rho, max_height);
    Ok((numerator, u, frame.components.t_lambda))
}

/// ((−1)^{|⇑−λ^ρ|_S} / t_λ) · F_W(e^⇑ / Π_{β∈S}(1 + e^{−β})), base λ^ρ.
pub fn pdc_side(lambda_rho: &ShiftedWeight, max_height: u32) -> Result<CharacterSeries> {
    let up = AtypicalFrame::new(lambda_rho)?.uparrow()?;
    let (numerator, u, t) = closed_form_numerator(lambda_rho, &up, max_height)?;
    let sign = if u % 2 == 0 { 1 } else { -1 };
    let t = t as i64;
    let mut out = CharacterSeries::zero(lambda_rho.clone(), max_height);
    for (nu, &c) in numerator.terms() {
        if c % t != 0 {
            return Err(Error::NonIntegerCoefficient { weight: nu.to_string(), numerator: sign * c, denominator: t });
        }
        out.add_term(nu, sign * c / t);
    }
    Ok(out)
}

/// The one-term formula evaluated for any λ, with ⇑ taken as the
/// per-component maximum. Returns the series multiplied by t_λ, and t_λ, so
/// that non-integral results stay representable.
#[cfg(feature = "unguarded")]
pub fn pdc_side_unguarded(lambda_rho: &ShiftedWeight, max_height: u32) -> Result<(CharacterSeries, u64)> {
    let up = raise_to_component_max(lambda_rho)?;
    let (numerator, u, t) = closed_form_numerator(lambda_rho, &up, max_height)?;
    Ok((if u % 2 == 0 { numerator } else { numerator.scale(-1) }, t))
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleCharacter {
    #[serde(skip)]
    pub series: CharacterSeries,
    /// An empty height shell at or below the cut was found, so the support
    /// is finite and entirely inside the window.
    pub complete: bool,
    pub dim: Option<i64>,
}

impl SimpleCharacter {
    /// Compares coefficients at ν and s(ν) for every simple reflection s
    /// whenever both lie inside the window.
    pub fn is_w_invariant(&self) -> bool {
        let s = &self.series;
        WeylElement::simple_reflections(s.shape()).iter().all(|g| {
            s.terms().iter().all(|(nu, &c)| {
                let image = g.apply(nu).expect("same shape");
                match cone_height(s.base(), &image) {
                    Some(h) if h <= s.cut() => s.coefficient(&image) == c,
                    Some(_) => true,
                    None => false,
                }
            })
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.series.terms().values().all(|&c| c > 0)
    }
}

/// ch L(λ) = e^{−ρ}R^{−1} · (path side), base λ = λ^ρ − ρ.
///
/// The support of a finite-dimensional character is connected in height
/// from λ downwards, so one empty shell proves nothing lies beyond it.
pub fn simple_character(lambda_rho: &ShiftedWeight, max_height: u32) -> Result<SimpleCharacter> {
    character_from_numerator(lambda_rho, &path_side(lambda_rho, max_height)?)
}

/// Same as [`simple_character`], for a numerator computed some other way
/// (e.g. the closed formula). The numerator must have base λ^ρ.
pub fn character_from_numerator(lambda_rho: &ShiftedWeight, numerator: &CharacterSeries) -> Result<SimpleCharacter> {
    if numerator.base() != lambda_rho {
        return Err(Error::Inconsistent(format!("numerator has base {}, expected {lambda_rho}", numerator.base())));
    }
    let max_height = numerator.cut();
    let series = numerator.multiply(&weyl_denominator_inverse(lambda_rho.shape(), max_height))?;
    let mut occupied = vec![false; max_height as usize + 1];
    for nu in series.terms().keys() {
        occupied[cone_height(series.base(), nu).expect("term inside its cone") as usize] = true;
    }
    let complete = match occupied.iter().position(|o| !o) {
        Some(empty) => {
            if occupied[empty..].iter().any(|&o| o) {
                return Err(Error::Inconsistent(format!(
                    "character of {lambda_rho} has an empty height shell {empty} followed by further terms"
                )));
            }
            true
        }
        None => false,
    };
    let dim = complete.then(|| series.coefficient_sum());
    Ok(SimpleCharacter { series, complete, dim })
}

/// λ = λ^ρ − ρ.
pub fn highest_weight(lambda_rho: &ShiftedWeight) -> ShiftedWeight {
    lambda_rho.checked_sub(&rho(lambda_rho.shape())).expect("same shape")
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub weight: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub lambda: ShiftedWeight,
    pub flags: ClassificationFlags,
    pub max_height: u32,
    /// weights compared between the two truncated series
    pub compared: usize,
    /// random weights checked with the exact coefficient extractors
    pub extractor_checks: usize,
    pub mismatches: Vec<Mismatch>,
    pub r: usize,
    pub t_lambda: u64,
    pub uparrow: ShiftedWeight,
    /// |⇑ − λ^ρ|_S
    pub uparrow_offset: i64,
    pub uparrow_regular: bool,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn seed_for(lambda_rho: &ShiftedWeight, max_height: u32) -> u64 {
    lambda_rho
        .to_string()
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64 ^ max_height as u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Compares the path side and the closed formula term by term on the
/// window, then checks 20 random weights with the exact extractors.
pub fn verify_main_theorem(lambda_rho: &ShiftedWeight, max_height: u32) -> Result<VerificationReport> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    let up = frame.uparrow()?;
    let lhs = path_side(lambda_rho, max_height)?;
    let rhs = pdc_side(lambda_rho, max_height)?;
    let mut mismatches: Vec<Mismatch> = lhs
        .differences(&rhs)?
        .into_iter()
        .map(|(nu, l, r)| Mismatch { weight: nu.to_string(), lhs: l.to_string(), rhs: r.to_string() })
        .collect();
    let mut keys: Vec<&ShiftedWeight> = lhs.terms().keys().chain(rhs.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    let compared = keys.len();

    let shape = lambda_rho.shape();
    let simple = simple_roots(shape);
    let weyl = WeylElement::all(shape);
    let mut rng = StdRng::seed_from_u64(seed_for(lambda_rho, max_height));
    let checks = 20;
    for _ in 0..checks {
        let mut nu = lambda_rho.clone();
        let depth = rng.gen_range(0..=max_height);
        for _ in 0..depth {
            nu = nu.checked_sub(&simple[rng.gen_range(0..simple.len())])?;
        }
        let nu = weyl[rng.gen_range(0..weyl.len())].apply(&nu)?;
        let exact_l = Ratio::from_integer(coefficient_path_side(lambda_rho, &nu)?);
        let exact_r = coefficient_pdc_side(lambda_rho, &nu)?;
        let in_window = lhs.height_of(&nu).is_some();
        let series_ok = !in_window || Ratio::from_integer(lhs.coefficient(&nu)) == exact_l;
        if exact_l != exact_r || !series_ok {
            mismatches.push(Mismatch { weight: nu.to_string(), lhs: exact_l.to_string(), rhs: exact_r.to_string() });
        }
    }

    Ok(VerificationReport {
        lambda: lambda_rho.clone(),
        flags: classify(&build_diagram(lambda_rho)?),
        max_height,
        compared,
        extractor_checks: checks,
        mismatches,
        r: frame.r(),
        t_lambda: frame.components.t_lambda,
        uparrow_offset: frame.offsets(&up, lambda_rho)?.iter().sum(),
        uparrow_regular: is_regular(&up),
        uparrow: up,
    })
}
