//! Executable checks of the intermediate statements behind the closed
//! formula, each run over the weights μ ∈ P_λ up to a height.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{dominant_rearrangement, is_regular, preceq, ShiftedWeight};
use crate::paths::{enumerate_p_lambda, enumerate_paths, theta, trivial_path};
use crate::pdc::{
    c_count, c_lexi_sets, image_theta_bruteforce, mu_bar, multiset_identity_check, skip_word, AtypicalFrame, ImageBound,
};
use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    /// Θ(paths) equals both permutation-set descriptions.
    PdcImage,
    /// t_λ · d_{λ,μ} = c_{λ,μ̄}.
    UsePdc,
    /// |λ^ρ − μ̄|_S = l_{λ,μ} + l(w′).
    LexiSum,
    /// C̄^Lexi \ C^Lexi_reg is non-regular.
    AddBar,
    /// 𝔠 = 𝔡 as multisets.
    ActionByW,
    /// All path lengths share the parity of l_{λ,μ}.
    Parity,
}

impl Lemma {
    pub const ALL: [Lemma; 6] =
        [Lemma::PdcImage, Lemma::UsePdc, Lemma::LexiSum, Lemma::AddBar, Lemma::ActionByW, Lemma::Parity];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::PdcImage => "pdc-image",
            Lemma::UsePdc => "use-pdc",
            Lemma::LexiSum => "lexi-sum",
            Lemma::AddBar => "add-bar",
            Lemma::ActionByW => "action-by-w",
            Lemma::Parity => "parity",
        }
    }

    pub fn needs_pdc(self) -> bool {
        self != Lemma::Parity
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("unknown lemma {s:?}; expected one of {}", Lemma::ALL.map(|l| l.name()).join(", ")),
        })
    }
}

impl Serialize for Lemma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub weight: String,
    pub height: u32,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_lemma(lemma: Lemma, lambda_rho: &ShiftedWeight, max_height: u32) -> Result<LemmaReport> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    if lemma.needs_pdc() && !frame.pdc {
        return Err(Error::NotPdc(lambda_rho.to_string()));
    }
    let mut failures = Vec::new();
    let mut instances = 0;
    let p_lambda = enumerate_p_lambda(lambda_rho, max_height)?;

    match lemma {
        Lemma::PdcImage => {
            for mu in &p_lambda {
                instances += 1;
                let from_paths: BTreeSet<Perm> = enumerate_paths(mu, lambda_rho)?.iter().map(theta).collect();
                let up = image_theta_bruteforce(lambda_rho, mu, ImageBound::Uparrow)?;
                let plain = image_theta_bruteforce(lambda_rho, mu, ImageBound::Lambda)?;
                if from_paths != up || from_paths != plain {
                    failures.push(format!(
                        "μ^ρ = {mu}: paths give {}, ⇑-set has {}, λ-set has {}",
                        from_paths.len(),
                        up.len(),
                        plain.len()
                    ));
                }
            }
        }
        Lemma::UsePdc => {
            let t = frame.components.t_lambda as usize;
            for mu in &p_lambda {
                instances += 1;
                let d = enumerate_paths(mu, lambda_rho)?.len();
                let (c, _) = c_count(lambda_rho, &mu_bar(lambda_rho, mu)?)?;
                if t * d != c {
                    failures.push(format!("μ^ρ = {mu}: t·d = {t}·{d} but c = {c}"));
                }
            }
        }
        Lemma::LexiSum => {
            for mu in &p_lambda {
                instances += 1;
                let sw = skip_word(lambda_rho, mu)?;
                if !sw.holds() || sw.w_prime.apply(mu)? != sw.mu_bar {
                    failures.push(format!(
                        "μ^ρ = {mu}: |λ−μ̄|_S = {}, l = {}, l(w′) = {}, skipped = {}",
                        sw.s_norm,
                        sw.trivial_length,
                        sw.length(),
                        sw.skipped
                    ));
                }
            }
        }
        Lemma::AddBar => {
            let sets = c_lexi_sets(lambda_rho, max_height)?;
            let up = frame.uparrow()?;
            let below = |base: &ShiftedWeight, nu: &ShiftedWeight| {
                frame.offsets(base, nu).map(|k| k.iter().all(|&k| k >= 0)).unwrap_or(false)
            };
            for nu in &sets.bar {
                instances += 1;
                if is_regular(nu) && !below(lambda_rho, nu) {
                    failures.push(format!("{nu} is regular but lies outside λ^ρ − ℕS"));
                }
            }
            for nu in &sets.reg {
                instances += 1;
                if !below(&up, nu) {
                    failures.push(format!("{nu} lies in C_reg but not under ⇑"));
                }
                let (plus, _) = dominant_rearrangement(nu)?;
                if !preceq(&plus, lambda_rho)? || mu_bar(lambda_rho, &plus)? != *nu {
                    failures.push(format!("{nu} is not μ̄ of its dominant rearrangement {plus}"));
                }
            }
            for mu in &p_lambda {
                instances += 1;
                let bar = mu_bar(lambda_rho, mu)?;
                if !below(lambda_rho, &bar) || !is_regular(&bar) {
                    failures.push(format!("μ̄ = {bar} of {mu} fails the C_reg description"));
                }
            }
        }
        Lemma::ActionByW => {
            instances = 1;
            if !multiset_identity_check(lambda_rho, max_height)? {
                failures.push("multisets differ".into());
            }
        }
        Lemma::Parity => {
            for mu in &p_lambda {
                instances += 1;
                let paths = enumerate_paths(mu, lambda_rho)?;
                let l = trivial_path(mu, lambda_rho)?.length();
                let sigmas: BTreeSet<Perm> = paths.iter().map(theta).collect();
                if paths.iter().any(|p| p.length() % 2 != l % 2) {
                    failures.push(format!("μ^ρ = {mu}: a path length has the wrong parity"));
                }
                if paths.iter().any(|p| p.length() > l) {
                    failures.push(format!("μ^ρ = {mu}: a path is longer than the trivial one"));
                }
                if sigmas.len() != paths.len() {
                    failures.push(format!("μ^ρ = {mu}: two paths share a permutation"));
                }
            }
        }
    }
    Ok(LemmaReport { lemma, weight: lambda_rho.to_string(), height: max_height, instances, failures })
}
