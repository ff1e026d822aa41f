//! Weight diagrams, cap diagrams and the atypical-component decomposition.
//!
//! Position t of a diagram carries ∨ if t is both an ε-entry and a δ-entry
//! of λ^ρ, × if only an ε-entry, ∘ if only a δ-entry and ∧ otherwise.
//! A diagram stores a finite window; everything outside is ∧.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, is_strictly_dominant, OddRoot, Shape, ShiftedWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    Vee,
    Wedge,
    Cross,
    Circle,
}

impl Symbol {
    pub fn ascii(self) -> char {
        match self {
            Symbol::Vee => 'v',
            Symbol::Wedge => '^',
            Symbol::Cross => 'x',
            Symbol::Circle => 'o',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Vee => "vee",
            Symbol::Wedge => "wedge",
            Symbol::Cross => "cross",
            Symbol::Circle => "circle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDiagram {
    lo: i64,
    hi: i64,
    symbols: Vec<Symbol>,
    /// ∨ position → label (1-based, left to right).
    vee_labels: BTreeMap<i64, usize>,
}

impl WeightDiagram {
    /// Builds a diagram from explicitly placed non-∧ symbols. The window is
    /// chosen as for [`build_diagram`].
    pub fn from_symbols(placed: &BTreeMap<i64, Symbol>) -> Result<Self> {
        let marked: Vec<(i64, Symbol)> =
            placed.iter().filter(|(_, &s)| s != Symbol::Wedge).map(|(&p, &s)| (p, s)).collect();
        let count = |sym| marked.iter().filter(|(_, s)| *s == sym).count();
        let m = count(Symbol::Vee) + count(Symbol::Cross);
        let n = count(Symbol::Vee) + count(Symbol::Circle);
        if m == 0 || n == 0 {
            return Err(Error::MalformedDiagram(format!(
                "symbol counts give gl({m}|{n}); both blocks must be non-empty"
            )));
        }
        let min = marked.first().map(|x| x.0).unwrap_or(0);
        let max = marked.last().map(|x| x.0).unwrap_or(0);
        let lo = min - 1;
        let hi = max + (m + n) as i64 + 1;
        let mut symbols = vec![Symbol::Wedge; (hi - lo + 1) as usize];
        let mut vee_labels = BTreeMap::new();
        for &(p, s) in &marked {
            symbols[(p - lo) as usize] = s;
            if s == Symbol::Vee {
                let label = vee_labels.len() + 1;
                vee_labels.insert(p, label);
            }
        }
        Ok(WeightDiagram { lo, hi, symbols, vee_labels })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn symbol_at(&self, p: i64) -> Symbol {
        if p < self.lo || p > self.hi {
            Symbol::Wedge
        } else {
            self.symbols[(p - self.lo) as usize]
        }
    }

    /// Positions holding `sym` inside the window, ascending.
    pub fn positions_of(&self, sym: Symbol) -> Vec<i64> {
        (self.lo..=self.hi).filter(|&p| self.symbol_at(p) == sym).collect()
    }

    pub fn vee_positions(&self) -> Vec<i64> {
        self.vee_labels.keys().copied().collect()
    }

    pub fn vee_labels(&self) -> &BTreeMap<i64, usize> {
        &self.vee_labels
    }

    pub fn atypicality(&self) -> usize {
        self.vee_labels.len()
    }

    pub fn shape(&self) -> Shape {
        let vees = self.vee_labels.len();
        let m = vees + self.positions_of(Symbol::Cross).len();
        let n = vees + self.positions_of(Symbol::Circle).len();
        Shape { m, n }
    }

    /// Non-∧ symbols, keyed by position.
    pub fn placed(&self) -> BTreeMap<i64, Symbol> {
        (self.lo..=self.hi).map(|p| (p, self.symbol_at(p))).filter(|(_, s)| *s != Symbol::Wedge).collect()
    }

    /// Same diagram moved t steps to the right.
    pub fn translate(&self, t: i64) -> WeightDiagram {
        WeightDiagram {
            lo: self.lo + t,
            hi: self.hi + t,
            symbols: self.symbols.clone(),
            vee_labels: self.vee_labels.iter().map(|(&p, &l)| (p + t, l)).collect(),
        }
    }
}

fn require_diagram_weight(lambda_rho: &ShiftedWeight) -> Result<(Vec<i64>, Vec<i64>)> {
    let entries = lambda_rho.int_entries()?;
    if !is_strictly_dominant(lambda_rho) {
        return Err(Error::NotStrictlyDominant(lambda_rho.to_string()));
    }
    Ok(entries)
}

pub fn build_diagram(lambda_rho: &ShiftedWeight) -> Result<WeightDiagram> {
    let (a, b) = require_diagram_weight(lambda_rho)?;
    let mut placed = BTreeMap::new();
    for &x in &a {
        placed.insert(x, if b.contains(&x) { Symbol::Vee } else { Symbol::Cross });
    }
    for &y in &b {
        placed.entry(y).or_insert(Symbol::Circle);
    }
    WeightDiagram::from_symbols(&placed)
}

pub fn weight_from_diagram(d: &WeightDiagram) -> Result<ShiftedWeight> {
    let mut a: Vec<i64> = Vec::new();
    let mut b: Vec<i64> = Vec::new();
    for (p, s) in d.placed() {
        match s {
            Symbol::Vee => {
                a.push(p);
                b.push(p);
            }
            Symbol::Cross => a.push(p),
            Symbol::Circle => b.push(p),
            Symbol::Wedge => {}
        }
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::MalformedDiagram("diagram has no ε-entries or no δ-entries".into()));
    }
    a.reverse();
    ShiftedWeight::from_ints(&a, &b)
}

/// Right-to-left greedy matching of ∨'s to the first unmarked ∧ on their
/// right. Returns (∨, ∧) pairs in the order they were drawn.
pub(crate) fn greedy_caps(vees: &[i64], is_wedge: impl Fn(i64) -> bool, limit: Option<i64>) -> Result<Vec<(i64, i64)>> {
    let mut order = vees.to_vec();
    order.sort_unstable_by(|x, y| y.cmp(x));
    let mut marked: Vec<i64> = Vec::with_capacity(order.len());
    let mut caps = Vec::with_capacity(order.len());
    for &v in &order {
        let mut q = v + 1;
        while !is_wedge(q) || marked.contains(&q) {
            q += 1;
            if let Some(hi) = limit {
                if q > hi {
                    return Err(Error::WindowTooSmall { vee: v, hi });
                }
            }
        }
        marked.push(q);
        caps.push((v, q));
    }
    Ok(caps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapMatching {
    pub caps: Vec<(i64, i64)>,
}

impl CapMatching {
    pub fn partner_of(&self, vee: i64) -> Option<i64> {
        self.caps.iter().find(|c| c.0 == vee).map(|c| c.1)
    }

    fn below(inner: (i64, i64), outer: (i64, i64)) -> bool {
        outer.0 < inner.0 && inner.1 < outer.1
    }

    pub fn is_non_crossing(&self) -> bool {
        self.caps.iter().all(|&(a, b)| {
            self.caps.iter().all(|&(c, d)| {
                (a, b) == (c, d) || b < c || d < a || Self::below((a, b), (c, d)) || Self::below((c, d), (a, b))
            })
        })
    }

    /// Every pair of caps is nested: the cap diagram is a single rainbow.
    pub fn is_rainbow(&self) -> bool {
        self.caps
            .iter()
            .enumerate()
            .all(|(i, &x)| self.caps[i + 1..].iter().all(|&y| Self::below(x, y) || Self::below(y, x)))
    }

    /// No cap lies below another.
    pub fn is_flat(&self) -> bool {
        self.caps.iter().all(|&x| self.caps.iter().all(|&y| !Self::below(x, y)))
    }

    /// Any two caps below a common cap are nested with each other.
    pub fn siblings_nested(&self) -> bool {
        self.caps.iter().all(|&outer| {
            let inside: Vec<(i64, i64)> = self.caps.iter().copied().filter(|&c| Self::below(c, outer)).collect();
            inside
                .iter()
                .enumerate()
                .all(|(i, &x)| inside[i + 1..].iter().all(|&y| Self::below(x, y) || Self::below(y, x)))
        })
    }
}

pub fn cap_matching(d: &WeightDiagram) -> Result<CapMatching> {
    let caps = greedy_caps(&d.vee_positions(), |p| d.symbol_at(p) == Symbol::Wedge, Some(d.hi))?;
    Ok(CapMatching { caps })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub lo: i64,
    pub hi: i64,
    pub vees: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    pub t: Vec<usize>,
    pub s: Vec<usize>,
    pub t_lambda: u64,
    /// component index of each ∨ label (index label − 1)
    #[serde(skip)]
    component_of: Vec<usize>,
}

impl ComponentDecomposition {
    /// j ∼ k for 1-based ∨ labels.
    pub fn related(&self, j: usize, k: usize) -> bool {
        self.component_of[j - 1] == self.component_of[k - 1]
    }

    pub fn component_of_label(&self, label: usize) -> usize {
        self.component_of[label - 1]
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }
}

/// Maximal ∧-free stretches containing a ∨. A typical diagram has no
/// components and t_λ = 1.
pub fn components(d: &WeightDiagram) -> ComponentDecomposition {
    let mut comps: Vec<Component> = Vec::new();
    let mut run: Option<Component> = None;
    for p in d.lo..=d.hi + 1 {
        match d.symbol_at(p) {
            Symbol::Wedge => {
                if let Some(c) = run.take() {
                    if !c.vees.is_empty() {
                        comps.push(c);
                    }
                }
            }
            s => {
                let c = run.get_or_insert(Component { lo: p, hi: p, vees: Vec::new() });
                c.hi = p;
                if s == Symbol::Vee {
                    c.vees.push(p);
                }
            }
        }
    }
    let t: Vec<usize> = comps.iter().map(|c| c.vees.len()).collect();
    let s: Vec<usize> =
        comps.windows(2).map(|w| (w[0].hi + 1..w[1].lo).filter(|&p| d.symbol_at(p) == Symbol::Wedge).count()).collect();
    let t_lambda = t.iter().map(|&x| lattice::factorial(x) as u64).product();
    let component_of = comps.iter().enumerate().flat_map(|(i, c)| std::iter::repeat_n(i, c.vees.len())).collect();
    ComponentDecomposition { components: comps, t, s, t_lambda, component_of }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationFlags {
    pub typical: bool,
    pub totally_connected: bool,
    pub totally_disconnected: bool,
    pub pdc: bool,
}

impl fmt::Display for ClassificationFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |b: bool, name: &str| if b { name.to_string() } else { format!("not {name}") };
        write!(
            f,
            "{}, {}, {}{}",
            tag(self.pdc, "PDC"),
            tag(self.totally_connected, "TC"),
            tag(self.totally_disconnected, "TDC"),
            if self.typical { ", typical" } else { "" }
        )
    }
}

pub fn classify(d: &WeightDiagram) -> ClassificationFlags {
    let dec = components(d);
    ClassificationFlags {
        typical: d.atypicality() == 0,
        totally_connected: dec.count() <= 1,
        totally_disconnected: dec.t.iter().all(|&t| t == 1),
        pdc: dec.t.iter().zip(&dec.s).all(|(t, s)| t <= s),
    }
}

/// Replaces each atypical entry by the largest atypical value of its component,
/// without checking the PDC hypothesis.
pub(crate) fn raise_to_component_max(lambda_rho: &ShiftedWeight) -> Result<ShiftedWeight> {
    let d = build_diagram(lambda_rho)?;
    let dec = components(&d);
    let (mut a, mut b) = lambda_rho.int_entries()?;
    let top = |v: i64| -> i64 {
        dec.components.iter().find(|c| c.vees.contains(&v)).and_then(|c| c.vees.last().copied()).unwrap_or(v)
    };
    for root in lattice::atypical_roots(lambda_rho)? {
        let v = a[root.p];
        a[root.p] = top(v);
        b[root.q] = top(v);
    }
    ShiftedWeight::from_ints(&a, &b)
}

/// (λ^ρ)^⇑ for a PDC weight.
pub fn uparrow(lambda_rho: &ShiftedWeight) -> Result<ShiftedWeight> {
    let d = build_diagram(lambda_rho)?;
    if !classify(&d).pdc {
        return Err(Error::NotPdc(lambda_rho.to_string()));
    }
    raise_to_component_max(lambda_rho)
}

/// Coefficients kᵢ with ν = Σ kᵢβᵢ over the ordered roots `s`.
pub fn s_coefficients(nu_diff: &ShiftedWeight, s: &[OddRoot]) -> Result<Vec<i64>> {
    let not_in_span = || Error::NotInSpan(nu_diff.to_string());
    let (a, b) = nu_diff.int_entries().map_err(|_| not_in_span())?;
    let mut ks = Vec::with_capacity(s.len());
    let mut rest_a = a.clone();
    let mut rest_b = b.clone();
    for root in s {
        if a[root.p] != b[root.q] {
            return Err(not_in_span());
        }
        ks.push(a[root.p]);
        rest_a[root.p] = 0;
        rest_b[root.q] = 0;
    }
    if rest_a.iter().chain(&rest_b).any(|&x| x != 0) {
        return Err(not_in_span());
    }
    Ok(ks)
}

/// |ν|_S = Σ kᵢ.
pub fn s_norm(nu_diff: &ShiftedWeight, s: &[OddRoot]) -> Result<i64> {
    Ok(s_coefficients(nu_diff, s)?.iter().sum())
}

/// Two-line rendering (positions, symbols) plus cap arcs underneath.
pub fn render_ascii(d: &WeightDiagram) -> Result<String> {
    let caps = cap_matching(d)?;
    const W: usize = 4;
    let col = |p: i64| ((p - d.lo) as usize) * W + W / 2;
    let width = (d.hi - d.lo + 1) as usize * W;
    let mut out = String::new();
    for p in d.lo..=d.hi {
        write!(out, "{:^W$}", p).unwrap();
    }
    out.push('\n');
    for p in d.lo..=d.hi {
        write!(out, "{:^W$}", d.symbol_at(p).ascii()).unwrap();
    }
    out.push('\n');

    // depth 1 = innermost caps, drawn first
    let depth_of = |cap: (i64, i64)| -> usize {
        fn depth(cap: (i64, i64), all: &[(i64, i64)]) -> usize {
            1 + all.iter().filter(|&&c| cap.0 < c.0 && c.1 < cap.1).map(|&c| depth(c, all)).max().unwrap_or(0)
        }
        depth(cap, &caps.caps)
    };
    let max_depth = caps.caps.iter().map(|&c| depth_of(c)).max().unwrap_or(0);
    for level in 1..=max_depth {
        let mut line: Vec<char> = vec![' '; width];
        for &cap in &caps.caps {
            let (l, r) = (col(cap.0), col(cap.1));
            let dep = depth_of(cap);
            if dep == level {
                line[l] = '└';
                line[r] = '┘';
                for c in line.iter_mut().take(r).skip(l + 1) {
                    *c = '─';
                }
            } else if dep > level {
                line[l] = '│';
                line[r] = '│';
            }
        }
        out.push_str(line.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub weight: ShiftedWeight,
    pub window: [i64; 2],
    pub symbols: BTreeMap<i64, &'static str>,
    pub caps: Vec<[i64; 2]>,
    pub components: ComponentDecomposition,
    pub flags: ClassificationFlags,
}

pub fn diagram_report(lambda_rho: &ShiftedWeight) -> Result<DiagramReport> {
    let d = build_diagram(lambda_rho)?;
    let caps = cap_matching(&d)?;
    Ok(DiagramReport {
        weight: lambda_rho.clone(),
        window: [d.lo, d.hi],
        symbols: (d.lo..=d.hi).map(|p| (p, d.symbol_at(p).name())).collect(),
        caps: caps.caps.iter().map(|&(v, w)| [v, w]).collect(),
        components: components(&d),
        flags: classify(&d),
    })
}
