//! Set constructions behind the closed character formula for piecewise
//! disconnected weights: the permutation group W_r of the atypical roots,
//! the lexicographic representatives μ̄, the counts c_{λ,ν} and the image
//! of paths in Sym(r).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagrams::{
    build_diagram, classify, components, raise_to_component_max, s_coefficients, ComponentDecomposition, Symbol,
};
use crate::error::{Error, Result};
use crate::lattice::{self, dominant_rearrangement, is_regular, preceq, HalfInt, OddRoot, ShiftedWeight, WeylElement};
use crate::paths::{trivial_path, LabeledDiagram};
use crate::perm::Perm;

/// λ^ρ together with its ordered atypical roots β₁, …, β_r (q₁ < … < q_r).
#[derive(Debug, Clone)]
pub struct AtypicalFrame {
    pub lambda_rho: ShiftedWeight,
    pub roots: Vec<OddRoot>,
    /// λ^ρ_{βᵢ}, increasing
    pub values: Vec<i64>,
    pub components: ComponentDecomposition,
    pub pdc: bool,
}

impl AtypicalFrame {
    pub fn new(lambda_rho: &ShiftedWeight) -> Result<Self> {
        let d = build_diagram(lambda_rho)?;
        Ok(AtypicalFrame {
            lambda_rho: lambda_rho.clone(),
            roots: lattice::atypical_roots(lambda_rho)?,
            values: lattice::atypical_values(lambda_rho)?,
            components: components(&d),
            pdc: classify(&d).pdc,
        })
    }

    pub fn r(&self) -> usize {
        self.roots.len()
    }

    /// ν_{βᵢ} = (ν, δ_{qᵢ}) for i = 1..r, as a 0-based vector.
    pub fn values_of(&self, nu: &ShiftedWeight) -> Vec<HalfInt> {
        self.roots.iter().map(|root| nu.b()[root.q]).collect()
    }

    /// `base` with the i-th atypical slot (both the ε and the δ coordinate)
    /// overwritten by `values[i]`.
    pub fn place(&self, base: &ShiftedWeight, values: &[i64]) -> ShiftedWeight {
        let mut a = base.a().to_vec();
        let mut b = base.b().to_vec();
        for (root, &v) in self.roots.iter().zip(values) {
            a[root.p] = HalfInt::from_int(v);
            b[root.q] = HalfInt::from_int(v);
        }
        base.with_entries(a, b)
    }

    /// The element of W_r moving the value in slot i to slot σ(i).
    pub fn element(&self, sigma: &Perm) -> WeylElement {
        let shape = self.lambda_rho.shape();
        let mut eps: Vec<usize> = (0..shape.m).collect();
        let mut delta: Vec<usize> = (0..shape.n).collect();
        for (i, root) in self.roots.iter().enumerate() {
            let target = &self.roots[sigma.apply(i)];
            eps[root.p] = target.p;
            delta[root.q] = target.q;
        }
        WeylElement::new(
            Perm::from_images(eps).expect("slot permutation"),
            Perm::from_images(delta).expect("slot permutation"),
        )
    }

    /// kᵢ with base − ν = Σ kᵢβᵢ, or NotInSpan.
    pub fn offsets(&self, base: &ShiftedWeight, nu: &ShiftedWeight) -> Result<Vec<i64>> {
        s_coefficients(&base.checked_sub(nu)?, &self.roots)
    }

    /// (λ^ρ)^⇑, refusing non-PDC weights.
    pub fn uparrow(&self) -> Result<ShiftedWeight> {
        if !self.pdc {
            return Err(Error::NotPdc(self.lambda_rho.to_string()));
        }
        raise_to_component_max(&self.lambda_rho)
    }

    fn up_values(&self, guarded: bool) -> Result<Vec<i64>> {
        let up = if guarded { self.uparrow()? } else { raise_to_component_max(&self.lambda_rho)? };
        Ok(self.values_of(&up).into_iter().map(|v| v.to_int().expect("integral")).collect())
    }
}

pub fn w_r_elements(frame: &AtypicalFrame) -> Vec<WeylElement> {
    Perm::all(frame.r()).iter().map(|s| frame.element(s)).collect()
}

/// The subgroup of W_r preserving every atypical component of λ.
pub fn w_r_t_elements(frame: &AtypicalFrame) -> Vec<WeylElement> {
    Perm::all(frame.r())
        .iter()
        .filter(|s| (0..frame.r()).all(|i| frame.components.related(i + 1, s.apply(i) + 1)))
        .map(|s| frame.element(s))
        .collect()
}

fn require_p_lambda(mu_rho: &ShiftedWeight, lambda_rho: &ShiftedWeight) -> Result<()> {
    if preceq(mu_rho, lambda_rho)? {
        Ok(())
    } else {
        Err(Error::NotInPLambda { mu: mu_rho.to_string(), lambda: lambda_rho.to_string() })
    }
}

/// The largest element of W·μ^ρ ∩ (λ^ρ − ℕS_λ): μ's atypical values placed
/// in increasing order along β₁, …, β_r.
pub fn mu_bar(lambda_rho: &ShiftedWeight, mu_rho: &ShiftedWeight) -> Result<ShiftedWeight> {
    require_p_lambda(mu_rho, lambda_rho)?;
    let frame = AtypicalFrame::new(lambda_rho)?;
    Ok(frame.place(lambda_rho, &lattice::atypical_values(mu_rho)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct SkipWord {
    pub w_prime: WeylElement,
    pub mu_bar: ShiftedWeight,
    /// l_{λ,μ}
    pub trivial_length: usize,
    /// ×'s and ∘'s jumped over along the trivial path
    pub skipped: usize,
    /// |λ^ρ − μ̄|_{S_λ}
    pub s_norm: i64,
}

impl SkipWord {
    pub fn length(&self) -> usize {
        self.w_prime.length()
    }

    pub fn holds(&self) -> bool {
        self.skipped == self.length() && self.s_norm == (self.trivial_length + self.length()) as i64
    }
}

/// w′ with w′(μ^ρ) = μ̄, together with the data of the length identity
/// |λ^ρ − μ̄|_S = l_{λ,μ} + l(w′).
pub fn skip_word(lambda_rho: &ShiftedWeight, mu_rho: &ShiftedWeight) -> Result<SkipWord> {
    let bar = mu_bar(lambda_rho, mu_rho)?;
    let frame = AtypicalFrame::new(lambda_rho)?;
    let (_, to_mu) = dominant_rearrangement(&bar)?;
    let w_prime = to_mu.inverse();
    debug_assert_eq!(w_prime.apply(mu_rho).as_ref(), Ok(&bar));

    let path = trivial_path(mu_rho, lambda_rho)?;
    let mut d = LabeledDiagram::from_weight(mu_rho)?;
    let mut skipped = 0;
    for label in (1..=frame.r()).rev() {
        for _ in 0..path.counts[label - 1] {
            let from = d.position_of(label)?;
            let to = d.move_target(label)?;
            skipped += (from + 1..to).filter(|&p| matches!(d.symbol_at(p), Symbol::Cross | Symbol::Circle)).count();
            d = crate::paths::apply_right_move(&d, label)?;
        }
    }
    let s_norm = frame.offsets(lambda_rho, &bar)?.iter().sum();
    Ok(SkipWord { w_prime, mu_bar: bar, trivial_length: path.length(), skipped, s_norm })
}

fn c_count_with(frame: &AtypicalFrame, up: &[i64], nu: &ShiftedWeight) -> Result<(usize, Vec<WeylElement>)> {
    frame.offsets(&frame.lambda_rho, nu)?;
    let vals: Vec<i64> = frame
        .values_of(nu)
        .into_iter()
        .map(|v| v.to_int().ok_or_else(|| Error::NotIntegral(nu.to_string())))
        .collect::<Result<_>>()?;
    let elements: Vec<WeylElement> = Perm::all(frame.r())
        .iter()
        .filter(|s| (0..frame.r()).all(|i| vals[i] <= up[s.apply(i)]))
        .map(|s| frame.element(s))
        .collect();
    Ok((elements.len(), elements))
}

/// c_{λ,ν} = |{w ∈ W_r : w(ν) ∈ (λ^ρ)^⇑ − ℕS_λ}| and the elements counted.
pub fn c_count(lambda_rho: &ShiftedWeight, nu: &ShiftedWeight) -> Result<(usize, Vec<WeylElement>)> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    let up = frame.up_values(true)?;
    c_count_with(&frame, &up, nu)
}

/// c_{λ,ν} with ⇑ taken literally as the per-component maximum even when λ
/// is not piecewise disconnected.
#[cfg(feature = "unguarded")]
pub fn c_count_unguarded(lambda_rho: &ShiftedWeight, nu: &ShiftedWeight) -> Result<(usize, Vec<WeylElement>)> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    let up = frame.up_values(false)?;
    c_count_with(&frame, &up, nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageBound {
    /// σ(μ^ρ) ⪯ λ^ρ
    Lambda,
    /// σ(μ^ρ) ⪯ (λ^ρ)^⇑; needs λ piecewise disconnected
    Uparrow,
}

/// Permutations σ with μ_k ≤ bound_{σ(k)} for all k and σ⁻¹(j) < σ⁻¹(k)
/// whenever j < k lie in one atypical component of λ.
pub fn image_theta_bruteforce(
    lambda_rho: &ShiftedWeight,
    mu_rho: &ShiftedWeight,
    bound: ImageBound,
) -> Result<BTreeSet<Perm>> {
    require_p_lambda(mu_rho, lambda_rho)?;
    let frame = AtypicalFrame::new(lambda_rho)?;
    let caps = match bound {
        ImageBound::Lambda => frame.values.clone(),
        ImageBound::Uparrow => frame.up_values(true)?,
    };
    let mu = lattice::atypical_values(mu_rho)?;
    let r = frame.r();
    Ok(Perm::all(r)
        .into_iter()
        .filter(|s| (0..r).all(|k| mu[k] <= caps[s.apply(k)]))
        .filter(|s| {
            let inv = s.inverse();
            (0..r).all(|j| (j + 1..r).all(|k| !frame.components.related(j + 1, k + 1) || inv.apply(j) < inv.apply(k)))
        })
        .collect())
}

/// Increasing tuples v₁ < … < v_r with vᵢ ≤ capsᵢ and Σ(capsᵢ − vᵢ) ≤ budget.
fn increasing_tuples(caps: &[i64], budget: i64) -> Vec<Vec<i64>> {
    fn go(k: usize, upper: i64, left: i64, caps: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            let mut t = cur.clone();
            t.reverse();
            out.push(t);
            return;
        }
        let mut v = caps[k - 1].min(upper);
        while caps[k - 1] - v <= left {
            cur.push(v);
            go(k - 1, v - 1, left - (caps[k - 1] - v), caps, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    go(caps.len(), i64::MAX, budget, caps, &mut Vec::new(), &mut out);
    out
}

/// Tuples with pairwise distinct entries, vᵢ ≤ capsᵢ and Σ(capsᵢ − vᵢ) ≤ budget.
fn distinct_tuples(caps: &[i64], budget: i64) -> Vec<Vec<i64>> {
    fn go(i: usize, left: i64, caps: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == caps.len() {
            out.push(cur.clone());
            return;
        }
        for drop in 0..=left {
            let v = caps[i] - drop;
            if !cur.contains(&v) {
                cur.push(v);
                go(i + 1, left - drop, caps, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, budget, caps, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CLexiSets {
    /// μ̄'s: regular ν ∈ λ^ρ − ℕS_λ with increasing atypical values
    pub reg: Vec<ShiftedWeight>,
    /// ν ∈ (λ^ρ)^⇑ − ℕS_λ with increasing atypical values; empty unless PDC
    pub bar: Vec<ShiftedWeight>,
}

/// Both lexicographic sets, each cut at S-degree ≤ max_degree from its own
/// base (λ^ρ for `reg`, (λ^ρ)^⇑ for `bar`).
pub fn c_lexi_sets(lambda_rho: &ShiftedWeight, max_degree: u32) -> Result<CLexiSets> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    let budget = max_degree as i64;
    let reg = increasing_tuples(&frame.values, budget)
        .iter()
        .map(|t| frame.place(lambda_rho, t))
        .filter(is_regular)
        .collect();
    let bar = if frame.pdc {
        let up = frame.uparrow()?;
        increasing_tuples(&frame.up_values(true)?, budget).iter().map(|t| frame.place(&up, t)).collect()
    } else {
        Vec::new()
    };
    Ok(CLexiSets { reg, bar })
}

/// Compares the multisets 𝔠 (W_r-images of C̄ landing under ⇑) and 𝔡 (points
/// under ⇑ with distinct atypical values) up to S-degree max_degree.
pub fn multiset_identity_check(lambda_rho: &ShiftedWeight, max_degree: u32) -> Result<bool> {
    let frame = AtypicalFrame::new(lambda_rho)?;
    let up_vals = frame.up_values(true)?;
    let budget = max_degree as i64;
    let perms = Perm::all(frame.r());

    let mut c: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for t in increasing_tuples(&up_vals, budget) {
        for s in &perms {
            let mut moved = vec![0; t.len()];
            for (i, &v) in t.iter().enumerate() {
                moved[s.apply(i)] = v;
            }
            if moved.iter().zip(&up_vals).all(|(v, u)| v <= u) {
                *c.entry(moved).or_insert(0) += 1;
            }
        }
    }
    let d: BTreeMap<Vec<i64>, usize> = distinct_tuples(&up_vals, budget).into_iter().map(|t| (t, 1)).collect();
    Ok(c == d)
}
