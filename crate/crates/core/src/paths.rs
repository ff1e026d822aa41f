//! Right moves on labelled weight diagrams, paths between diagrams and the
//! Kazhdan–Lusztig polynomials they add up to.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::diagrams::{build_diagram, greedy_caps, Symbol, WeightDiagram};
use crate::error::{Error, Result};
use crate::lattice::{self, preceq, root_lattice_height, ShiftedWeight};
use crate::perm::Perm;

/// A weight diagram whose ∨'s carry labels that travel with them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledDiagram {
    fixed: BTreeMap<i64, Symbol>,
    /// position of ∨ with label k at index k − 1
    vees: Vec<i64>,
}

impl LabeledDiagram {
    pub fn from_diagram(d: &WeightDiagram) -> Self {
        let placed = d.placed();
        let fixed = placed.iter().filter(|(_, s)| **s != Symbol::Vee).map(|(&p, &s)| (p, s)).collect();
        LabeledDiagram { fixed, vees: d.vee_positions() }
    }

    pub fn from_weight(mu_rho: &ShiftedWeight) -> Result<Self> {
        Ok(Self::from_diagram(&build_diagram(mu_rho)?))
    }

    pub fn atypicality(&self) -> usize {
        self.vees.len()
    }

    pub fn position_of(&self, label: usize) -> Result<i64> {
        if label == 0 || label > self.vees.len() {
            return Err(Error::NoSuchLabel(label));
        }
        Ok(self.vees[label - 1])
    }

    pub fn vee_positions(&self) -> &[i64] {
        &self.vees
    }

    pub fn symbol_at(&self, p: i64) -> Symbol {
        if self.vees.contains(&p) {
            Symbol::Vee
        } else {
            self.fixed.get(&p).copied().unwrap_or(Symbol::Wedge)
        }
    }

    /// Where R_label would send ∨_label.
    pub fn move_target(&self, label: usize) -> Result<i64> {
        let p = self.position_of(label)?;
        // a ∨'s cap only depends on the ∨'s at or right of it
        let right: Vec<i64> = self.vees.iter().copied().filter(|&v| v >= p).collect();
        let caps = greedy_caps(&right, |q| self.symbol_at(q) == Symbol::Wedge, None)?;
        Ok(caps.iter().find(|c| c.0 == p).expect("∨ is in its own cap list").1)
    }

    /// Forgets the labels.
    pub fn to_diagram(&self) -> WeightDiagram {
        let mut placed = self.fixed.clone();
        for &v in &self.vees {
            placed.insert(v, Symbol::Vee);
        }
        WeightDiagram::from_symbols(&placed).expect("labelled diagram keeps both blocks non-empty")
    }
}

pub fn apply_right_move(d: &LabeledDiagram, label: usize) -> Result<LabeledDiagram> {
    let target = d.move_target(label)?;
    let mut next = d.clone();
    next.vees[label - 1] = target;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    /// number of R_k factors at index k − 1
    pub counts: Vec<usize>,
    pub sigma: Perm,
    pub endpoint: LabeledDiagram,
}

impl Path {
    /// The labels i₁ ≤ … ≤ i_k of θ = R_{i₁}∘…∘R_{i_k}.
    pub fn moves(&self) -> Vec<usize> {
        self.counts.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k + 1, c)).collect()
    }

    pub fn length(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn word(&self) -> String {
        let parts: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| if c == 1 { format!("R{}", k + 1) } else { format!("R{}^{}", k + 1, c) })
            .collect();
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.word(), self.length(), self.sigma)
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Path", 5)?;
        st.serialize_field("word", &self.word())?;
        st.serialize_field("moves", &self.moves())?;
        st.serialize_field("length", &self.length())?;
        st.serialize_field("sigma", &self.sigma.to_string())?;
        st.serialize_field("sigma_images", &self.sigma.images().iter().map(|x| x + 1).collect::<Vec<_>>())?;
        st.end()
    }
}

pub fn theta(path: &Path) -> Perm {
    path.sigma.clone()
}

struct Search<'a> {
    targets: &'a [i64],
    max_target: i64,
    counts: Vec<usize>,
    claimed: Vec<bool>,
    sigma: Vec<usize>,
    out: Vec<Path>,
}

impl Search<'_> {
    fn run(&mut self, d: &LabeledDiagram, label: usize) -> Result<()> {
        if label == 0 {
            self.out.push(Path {
                counts: self.counts.clone(),
                sigma: Perm::from_images(self.sigma.clone()).expect("claimed slots are distinct"),
                endpoint: d.clone(),
            });
            return Ok(());
        }
        let mut cur = d.clone();
        let mut count = 0;
        loop {
            let p = cur.position_of(label)?;
            if p > self.max_target {
                return Ok(());
            }
            if let Some(slot) = self.targets.iter().position(|&t| t == p) {
                if !self.claimed[slot] {
                    self.claimed[slot] = true;
                    self.sigma[label - 1] = slot;
                    self.counts[label - 1] = count;
                    self.run(&cur, label - 1)?;
                    self.claimed[slot] = false;
                }
            }
            cur = apply_right_move(&cur, label)?;
            count += 1;
        }
    }
}

fn same_fixed_symbols(mu_rho: &ShiftedWeight, lambda_rho: &ShiftedWeight) -> Result<bool> {
    Ok(lattice::typical_values(mu_rho)? == lattice::typical_values(lambda_rho)?
        && lattice::atypicality(mu_rho)? == lattice::atypicality(lambda_rho)?)
}

/// All paths from D_μ to D_λ; empty when μ^ρ ⪯ λ^ρ fails.
pub fn enumerate_paths(mu_rho: &ShiftedWeight, lambda_rho: &ShiftedWeight) -> Result<Vec<Path>> {
    mu_rho.check_shape(lambda_rho)?;
    let start = LabeledDiagram::from_weight(mu_rho)?;
    let goal = LabeledDiagram::from_weight(lambda_rho)?;
    if !same_fixed_symbols(mu_rho, lambda_rho)? {
        return Ok(Vec::new());
    }
    let r = start.atypicality();
    let targets = goal.vee_positions();
    let mut search = Search {
        targets,
        max_target: targets.last().copied().unwrap_or(i64::MIN),
        counts: vec![0; r],
        claimed: vec![false; r],
        sigma: vec![0; r],
        out: Vec::new(),
    };
    search.run(&start, r)?;
    Ok(search.out)
}

/// The path sending the k-th ∨ of μ to the k-th ∨ of λ for every k.
pub fn trivial_path(mu_rho: &ShiftedWeight, lambda_rho: &ShiftedWeight) -> Result<Path> {
    if !preceq(mu_rho, lambda_rho)? {
        return Err(Error::NotComparable { mu: mu_rho.to_string(), lambda: lambda_rho.to_string() });
    }
    let mut d = LabeledDiagram::from_weight(mu_rho)?;
    let targets = LabeledDiagram::from_weight(lambda_rho)?.vees;
    let r = d.atypicality();
    let mut counts = vec![0; r];
    for label in (1..=r).rev() {
        while d.position_of(label)? < targets[label - 1] {
            d = apply_right_move(&d, label)?;
            counts[label - 1] += 1;
        }
        if d.position_of(label)? != targets[label - 1] {
            return Err(Error::Inconsistent(format!("∨{label} jumped past its target {}", targets[label - 1])));
        }
    }
    Ok(Path { counts, sigma: Perm::identity(r), endpoint: d })
}

/// l_{λ,μ}: the length of the trivial path.
pub fn l_lambda_mu(mu_rho: &ShiftedWeight, lambda_rho: &ShiftedWeight) -> Result<usize> {
    trivial_path(mu_rho, lambda_rho).map(|p| p.length())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KlPolynomial {
    pub coefficients: BTreeMap<usize, u64>,
}

impl KlPolynomial {
    pub fn from_paths(paths: &[Path]) -> Self {
        let mut coefficients = BTreeMap::new();
        for p in paths {
            *coefficients.entry(p.length()).or_insert(0) += 1;
        }
        KlPolynomial { coefficients }
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coefficients.iter().map(|(&e, &c)| c as i64 * q.pow(e as u32)).sum()
    }

    /// d_{λ,μ} = K(1).
    pub fn at_one(&self) -> u64 {
        self.coefficients.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .map(|(&e, &c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => "q".into(),
                    _ => format!("q^{e}"),
                };
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn kl_polynomial(lambda_rho: &ShiftedWeight, mu_rho: &ShiftedWeight) -> Result<KlPolynomial> {
    Ok(KlPolynomial::from_paths(&enumerate_paths(mu_rho, lambda_rho)?))
}

/// Dominant μ with μ^ρ ⪯ λ^ρ and height(λ^ρ − μ^ρ) ≤ max_height, in order of
/// increasing height.
///
/// Lowering the i-th atypical value by dᵢ costs at least Σdᵢ in height, so
/// the search over value tuples can stop at that budget.
pub fn enumerate_p_lambda(lambda_rho: &ShiftedWeight, max_height: u32) -> Result<Vec<ShiftedWeight>> {
    let atyp = lattice::atypical_values(lambda_rho)?;
    let (ta, tb) = lattice::typical_values(lambda_rho)?;
    let r = atyp.len();
    let budget = max_height as i64;

    fn choose(
        k: usize,
        upper: i64,
        left: i64,
        atyp: &[i64],
        forbidden: &dyn Fn(i64) -> bool,
        chosen: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if k == 0 {
            out.push(chosen.clone());
            return;
        }
        let top = atyp[k - 1].min(upper);
        let mut c = top;
        while atyp[k - 1] - c <= left {
            if !forbidden(c) {
                chosen.push(c);
                choose(k - 1, c - 1, left - (atyp[k - 1] - c), atyp, forbidden, chosen, out);
                chosen.pop();
            }
            c -= 1;
        }
    }

    let forbidden = |c: i64| ta.contains(&c) || tb.contains(&c);
    let mut tuples = Vec::new();
    choose(r, i64::MAX, budget, &atyp, &forbidden, &mut Vec::with_capacity(r), &mut tuples);

    let mut out = Vec::with_capacity(tuples.len());
    for cs in tuples {
        let mut a: Vec<i64> = ta.iter().copied().chain(cs.iter().copied()).collect();
        let mut b: Vec<i64> = tb.iter().copied().chain(cs.iter().copied()).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable();
        let mu = ShiftedWeight::from_ints(&a, &b)?;
        let h = root_lattice_height(&lambda_rho.checked_sub(&mu)?)?;
        if h <= budget {
            out.push((h, mu));
        }
    }
    out.sort_by_key(|(h, _)| *h);
    Ok(out.into_iter().map(|(_, mu)| mu).collect())
}
