//! Weight lattice of gl(m|n) with the standard simple roots.
//!
//! A weight ν = Σ aᵢεᵢ − Σ bⱼδⱼ is stored through its entry vectors
//! `a` and `b`, so that `(ν, εᵢ) = aᵢ` and `(ν, δⱼ) = bⱼ` under the form
//! `(εᵢ, εⱼ) = δᵢⱼ = −(δᵢ, δⱼ)`. Entries are half-integers because ρ is
//! half-integral whenever m + n is even; everything that draws diagrams
//! insists on integral entries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A number in ½ℤ, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(x: i64) -> Self {
        HalfInt(2 * x)
    }

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn times(self, k: i64) -> Self {
        HalfInt(self.0 * k)
    }
}

impl From<i64> for HalfInt {
    fn from(x: i64) -> Self {
        HalfInt::from_int(x)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| format!("bad numerator {num:?}"))?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                d => Err(format!("denominator {d} is not 1 or 2")),
            }
        } else {
            s.parse::<i64>().map(HalfInt::from_int).map_err(|_| format!("bad integer {s:?}"))
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_int() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

/// The pair (m, n) of gl(m|n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidShape(m, n));
        }
        Ok(Shape { m, n })
    }

    /// Number of ε plus δ coordinates; the rank of the root lattice is one less.
    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    pub fn weyl_order(&self) -> usize {
        factorial(self.m) * factorial(self.n)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gl({}|{})", self.m, self.n)
    }
}

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// An integral-or-half-integral weight given by its entry vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedWeight {
    shape: Shape,
    a: Vec<HalfInt>,
    b: Vec<HalfInt>,
}

impl ShiftedWeight {
    pub fn new(a: Vec<HalfInt>, b: Vec<HalfInt>) -> Result<Self> {
        let shape = Shape::new(a.len(), b.len())?;
        Ok(ShiftedWeight { shape, a, b })
    }

    pub fn from_ints(a: &[i64], b: &[i64]) -> Result<Self> {
        Self::new(
            a.iter().copied().map(HalfInt::from_int).collect(),
            b.iter().copied().map(HalfInt::from_int).collect(),
        )
    }

    pub fn zero(shape: Shape) -> Self {
        ShiftedWeight { shape, a: vec![HalfInt::ZERO; shape.m], b: vec![HalfInt::ZERO; shape.n] }
    }

    /// εᵢ (0-based index).
    pub fn eps(shape: Shape, i: usize) -> Self {
        let mut w = Self::zero(shape);
        w.a[i] = HalfInt::from_int(1);
        w
    }

    /// δⱼ (0-based index). Its δ-entry is −1 because (δⱼ, δⱼ) = −1.
    pub fn delta(shape: Shape, j: usize) -> Self {
        let mut w = Self::zero(shape);
        w.b[j] = HalfInt::from_int(-1);
        w
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn a(&self) -> &[HalfInt] {
        &self.a
    }

    pub fn b(&self) -> &[HalfInt] {
        &self.b
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().chain(&self.b).all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == HalfInt::ZERO)
    }

    /// Integer entry vectors, or `NotIntegral`.
    pub fn int_entries(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        let a: Option<Vec<i64>> = self.a.iter().map(|x| x.to_int()).collect();
        let b: Option<Vec<i64>> = self.b.iter().map(|x| x.to_int()).collect();
        match (a, b) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::NotIntegral(self.to_string())),
        }
    }

    pub fn check_shape(&self, other: &ShiftedWeight) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(self.shape.m, self.shape.n, other.shape.m, other.shape.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ShiftedWeight) -> Result<ShiftedWeight> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |x, y| x + y))
    }

    pub fn checked_sub(&self, other: &ShiftedWeight) -> Result<ShiftedWeight> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |x, y| x - y))
    }

    fn zip_with(&self, other: &ShiftedWeight, f: impl Fn(HalfInt, HalfInt) -> HalfInt) -> Self {
        ShiftedWeight {
            shape: self.shape,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f(x, y)).collect(),
            b: self.b.iter().zip(&other.b).map(|(&x, &y)| f(x, y)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        ShiftedWeight {
            shape: self.shape,
            a: self.a.iter().map(|x| x.times(k)).collect(),
            b: self.b.iter().map(|x| x.times(k)).collect(),
        }
    }

    /// Adds `c` to every a- and b-entry, i.e. adds c(Σεᵢ − Σδⱼ), which is
    /// orthogonal to every root.
    pub fn shift_all(&self, c: HalfInt) -> Self {
        ShiftedWeight {
            shape: self.shape,
            a: self.a.iter().map(|&x| x + c).collect(),
            b: self.b.iter().map(|&x| x + c).collect(),
        }
    }

    /// Builds λ^ρ = λ + ρ from λ, refusing half-integral results.
    pub fn from_unshifted(lambda: &ShiftedWeight) -> Result<ShiftedWeight> {
        let shifted = lambda.checked_add(&rho(lambda.shape))?;
        if shifted.is_integral() {
            return Ok(shifted);
        }
        // Entries of λ+ρ are all integral or all half-integral when λ is integral.
        let suggestion = if shifted.a.iter().chain(&shifted.b).all(|x| !x.is_integer()) {
            "1/2".to_string()
        } else {
            "a suitable half-integer".to_string()
        };
        Err(Error::HalfIntegralShift { weight: shifted.to_string(), shift: suggestion })
    }

    /// Same weight with entry vectors replaced; used by the Weyl action.
    pub(crate) fn with_entries(&self, a: Vec<HalfInt>, b: Vec<HalfInt>) -> Self {
        debug_assert_eq!(a.len(), self.shape.m);
        debug_assert_eq!(b.len(), self.shape.n);
        ShiftedWeight { shape: self.shape, a, b }
    }
}

impl fmt::Display for ShiftedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.a.iter().join(","), self.b.iter().join(","))
    }
}

/// Parses the canonical `"a1,..,am|b1,..,bn"` encoding.
impl FromStr for ShiftedWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bar = s.find('|').ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "expected '|' separating ε-entries from δ-entries".into(),
        })?;
        let parse_block = |block: &str, offset: usize| -> Result<Vec<HalfInt>> {
            let mut out = Vec::new();
            let mut pos = offset;
            for piece in block.split(',') {
                let value = piece.parse::<HalfInt>().map_err(|msg| Error::Parse { pos, msg })?;
                out.push(value);
                pos += piece.len() + 1;
            }
            Ok(out)
        };
        let a = parse_block(&s[..bar], 0)?;
        let b = parse_block(&s[bar + 1..], bar + 1)?;
        ShiftedWeight::new(a, b)
    }
}

impl Serialize for ShiftedWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ShiftedWeight", 4)?;
        st.serialize_field("m", &self.shape.m)?;
        st.serialize_field("n", &self.shape.n)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.end()
    }
}

/// The bilinear form (ν, μ) = Σ aᵢa′ᵢ − Σ bⱼb′ⱼ.
pub fn pairing(nu: &ShiftedWeight, mu: &ShiftedWeight) -> Result<Ratio<i64>> {
    nu.check_shape(mu)?;
    let ea: i64 = nu.a.iter().zip(&mu.a).map(|(x, y)| x.twice() * y.twice()).sum();
    let eb: i64 = nu.b.iter().zip(&mu.b).map(|(x, y)| x.twice() * y.twice()).sum();
    Ok(Ratio::new(ea - eb, 4))
}

/// ρ = ½ Σ_{Δ₀⁺} α − ½ Σ_{Δ₁⁺} α for the standard positive system.
pub fn rho(shape: Shape) -> ShiftedWeight {
    let (m, n) = (shape.m as i64, shape.n as i64);
    let a = (1..=m).map(|i| HalfInt::from_twice(m + 1 - 2 * i - n)).collect();
    let b = (1..=n).map(|j| HalfInt::from_twice(-(n + 1 - 2 * j + m))).collect();
    ShiftedWeight { shape, a, b }
}

/// ε₁−ε₂, …, ε_m−δ₁, δ₁−δ₂, …, δ_{n−1}−δ_n.
pub fn simple_roots(shape: Shape) -> Vec<ShiftedWeight> {
    let mut out = Vec::with_capacity(shape.rank() - 1);
    for i in 0..shape.m - 1 {
        out.push(ShiftedWeight::eps(shape, i).checked_sub(&ShiftedWeight::eps(shape, i + 1)).unwrap());
    }
    out.push(OddRoot::positive(shape.m - 1, 0).to_weight(shape));
    for j in 0..shape.n - 1 {
        out.push(ShiftedWeight::delta(shape, j).checked_sub(&ShiftedWeight::delta(shape, j + 1)).unwrap());
    }
    out
}

pub fn positive_even_roots(shape: Shape) -> Vec<ShiftedWeight> {
    let mut out = Vec::new();
    for i in 0..shape.m {
        for j in i + 1..shape.m {
            out.push(ShiftedWeight::eps(shape, i).checked_sub(&ShiftedWeight::eps(shape, j)).unwrap());
        }
    }
    for k in 0..shape.n {
        for l in k + 1..shape.n {
            out.push(ShiftedWeight::delta(shape, k).checked_sub(&ShiftedWeight::delta(shape, l)).unwrap());
        }
    }
    out
}

pub fn positive_odd_roots(shape: Shape) -> Vec<OddRoot> {
    (0..shape.m).flat_map(|p| (0..shape.n).map(move |q| OddRoot::positive(p, q))).collect()
}

/// ±(ε_p − δ_q), 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OddRoot {
    pub p: usize,
    pub q: usize,
    pub positive: bool,
}

impl OddRoot {
    pub fn positive(p: usize, q: usize) -> Self {
        OddRoot { p, q, positive: true }
    }

    pub fn to_weight(&self, shape: Shape) -> ShiftedWeight {
        let mut w = ShiftedWeight::zero(shape);
        let s = if self.positive { 1 } else { -1 };
        w.a[self.p] = HalfInt::from_int(s);
        w.b[self.q] = HalfInt::from_int(s);
        w
    }

    /// Height of ε_p − δ_q in the simple-root basis (m − p + q with 1-based p, q).
    pub fn height(&self, shape: Shape) -> u32 {
        (shape.m - (self.p + 1) + (self.q + 1)) as u32
    }
}

impl fmt::Display for OddRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { "" } else { "-" };
        write!(f, "{sign}(ε{}-δ{})", self.p + 1, self.q + 1)
    }
}

pub fn is_strictly_dominant(nu: &ShiftedWeight) -> bool {
    nu.a.windows(2).all(|w| w[0] > w[1]) && nu.b.windows(2).all(|w| w[0] < w[1])
}

pub fn is_regular(nu: &ShiftedWeight) -> bool {
    nu.a.iter().all_unique() && nu.b.iter().all_unique()
}

/// An element of W = Sym(m) × Sym(n) acting on ε-indices and δ-indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub eps: Perm,
    pub delta: Perm,
}

impl WeylElement {
    pub fn identity(shape: Shape) -> Self {
        WeylElement { eps: Perm::identity(shape.m), delta: Perm::identity(shape.n) }
    }

    pub fn new(eps: Perm, delta: Perm) -> Self {
        WeylElement { eps, delta }
    }

    /// All m!·n! elements.
    pub fn all(shape: Shape) -> Vec<WeylElement> {
        let deltas = Perm::all(shape.n);
        Perm::all(shape.m)
            .into_iter()
            .flat_map(|e| deltas.iter().map(move |d| WeylElement::new(e.clone(), d.clone())))
            .collect()
    }

    /// The simple reflections s_{εᵢ−εᵢ₊₁} and s_{δⱼ−δⱼ₊₁}.
    pub fn simple_reflections(shape: Shape) -> Vec<WeylElement> {
        let mut out = Vec::new();
        for i in 0..shape.m.saturating_sub(1) {
            out.push(WeylElement::new(Perm::transposition(shape.m, i, i + 1), Perm::identity(shape.n)));
        }
        for j in 0..shape.n.saturating_sub(1) {
            out.push(WeylElement::new(Perm::identity(shape.m), Perm::transposition(shape.n, j, j + 1)));
        }
        out
    }

    pub fn length(&self) -> usize {
        self.eps.inversions() + self.delta.inversions()
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.eps.is_identity() && self.delta.is_identity()
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement::new(self.eps.compose(&other.eps), self.delta.compose(&other.delta))
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement::new(self.eps.inverse(), self.delta.inverse())
    }

    /// Moves the entry at index i to index w(i) on each side.
    pub fn apply(&self, nu: &ShiftedWeight) -> Result<ShiftedWeight> {
        if self.eps.len() != nu.shape.m || self.delta.len() != nu.shape.n {
            return Err(Error::ShapeMismatch(self.eps.len(), self.delta.len(), nu.shape.m, nu.shape.n));
        }
        Ok(self.apply_unchecked(nu))
    }

    pub(crate) fn apply_unchecked(&self, nu: &ShiftedWeight) -> ShiftedWeight {
        let mut a = vec![HalfInt::ZERO; nu.shape.m];
        let mut b = vec![HalfInt::ZERO; nu.shape.n];
        for (i, &x) in nu.a.iter().enumerate() {
            a[self.eps.apply(i)] = x;
        }
        for (j, &x) in nu.b.iter().enumerate() {
            b[self.delta.apply(j)] = x;
        }
        nu.with_entries(a, b)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε:{} δ:{}", self.eps, self.delta)
    }
}

#[derive(Serialize)]
struct WeylElementRepr {
    eps: String,
    delta: String,
    length: usize,
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeylElementRepr { eps: self.eps.to_string(), delta: self.delta.to_string(), length: self.length() }.serialize(s)
    }
}

pub fn weyl_apply(w: &WeylElement, nu: &ShiftedWeight) -> Result<ShiftedWeight> {
    w.apply(nu)
}

/// Returns (ν⁺, w) with w(ν) = ν⁺ strictly dominant.
pub fn dominant_rearrangement(nu: &ShiftedWeight) -> Result<(ShiftedWeight, WeylElement)> {
    if !is_regular(nu) {
        return Err(Error::NotRegular(nu.to_string()));
    }
    // rank of each entry in the target order
    let rank = |v: &[HalfInt], cmp: fn(&HalfInt, &HalfInt) -> Ordering| -> Perm {
        let mut order: Vec<usize> = (0..v.len()).collect();
        order.sort_by(|&i, &j| cmp(&v[i], &v[j]));
        let mut images = vec![0; v.len()];
        for (slot, &i) in order.iter().enumerate() {
            images[i] = slot;
        }
        Perm::from_images(images).expect("ranks form a permutation")
    };
    let w = WeylElement::new(rank(&nu.a, |x, y| y.cmp(x)), rank(&nu.b, |x, y| x.cmp(y)));
    let plus = w.apply_unchecked(nu);
    Ok((plus, w))
}

fn require_dominant_integral(nu: &ShiftedWeight) -> Result<(Vec<i64>, Vec<i64>)> {
    let entries = nu.int_entries()?;
    if !is_strictly_dominant(nu) {
        return Err(Error::NotStrictlyDominant(nu.to_string()));
    }
    Ok(entries)
}

/// The atypical roots ε_p − δ_q with a_p = b_q, ordered by q.
pub fn atypical_roots(nu: &ShiftedWeight) -> Result<Vec<OddRoot>> {
    let (a, b) = require_dominant_integral(nu)?;
    Ok(b.iter()
        .enumerate()
        .filter_map(|(q, bq)| a.iter().position(|ap| ap == bq).map(|p| OddRoot::positive(p, q)))
        .collect())
}

pub fn atypicality(nu: &ShiftedWeight) -> Result<usize> {
    atypical_roots(nu).map(|s| s.len())
}

pub fn is_typical(nu: &ShiftedWeight) -> Result<bool> {
    atypicality(nu).map(|r| r == 0)
}

/// The atypical values in increasing order (the i-th one belongs to βᵢ).
pub fn atypical_values(nu: &ShiftedWeight) -> Result<Vec<i64>> {
    let (_, b) = require_dominant_integral(nu)?;
    Ok(atypical_roots(nu)?.iter().map(|r| b[r.q]).collect())
}

/// Typical ε-values and δ-values (those not shared between a and b).
pub fn typical_values(nu: &ShiftedWeight) -> Result<(Vec<i64>, Vec<i64>)> {
    let (a, b) = require_dominant_integral(nu)?;
    let ta = a.iter().copied().filter(|x| !b.contains(x)).collect();
    let tb = b.iter().copied().filter(|x| !a.contains(x)).collect();
    Ok((ta, tb))
}

/// μ^ρ ⪯ λ^ρ: same typical entries, same atypicality, atypical values
/// dominated slot by slot.
pub fn preceq(mu_rho: &ShiftedWeight, lambda_rho: &ShiftedWeight) -> Result<bool> {
    mu_rho.check_shape(lambda_rho)?;
    if typical_values(mu_rho)? != typical_values(lambda_rho)? {
        return Ok(false);
    }
    let mv = atypical_values(mu_rho)?;
    let lv = atypical_values(lambda_rho)?;
    Ok(mv.len() == lv.len() && mv.iter().zip(&lv).all(|(x, y)| x <= y))
}

/// Coefficients of q in the simple-root basis.
pub fn simple_root_coefficients(q: &ShiftedWeight) -> Result<Vec<i64>> {
    let coords =
        q.a.iter()
            .copied()
            .chain(q.b.iter().map(|&x| -x))
            .map(|x| x.to_int())
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(|| Error::NotInRootLattice(q.to_string()))?;
    if coords.iter().sum::<i64>() != 0 {
        return Err(Error::NotInRootLattice(q.to_string()));
    }
    Ok(coords[..coords.len() - 1]
        .iter()
        .scan(0i64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect())
}

/// Sum of the simple-root coefficients of q.
pub fn root_lattice_height(q: &ShiftedWeight) -> Result<i64> {
    Ok(simple_root_coefficients(q)?.iter().sum())
}

/// `Some(height)` iff base − ν ∈ Q⁺.
pub fn cone_height(base: &ShiftedWeight, nu: &ShiftedWeight) -> Option<u32> {
    let diff = base.checked_sub(nu).ok()?;
    let coeffs = simple_root_coefficients(&diff).ok()?;
    if coeffs.iter().any(|&c| c < 0) {
        return None;
    }
    Some(coeffs.iter().sum::<i64>() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ShiftedWeight {
        s.parse().unwrap()
    }

    #[test]
    fn rho_values() {
        let r = rho(Shape::new(2, 1).unwrap());
        assert_eq!(r, w("0,-1|-1"));
        assert_eq!(rho(Shape::new(1, 1).unwrap()), w("-1/2|-1/2"));
        assert_eq!(rho(Shape::new(3, 3).unwrap()), w("-1/2,-3/2,-5/2|-5/2,-3/2,-1/2"));
    }

    #[test]
    fn rho_pairs_with_simple_roots() {
        for m in 1..=4 {
            for n in 1..=4 {
                let shape = Shape::new(m, n).unwrap();
                let r = rho(shape);
                for alpha in simple_roots(shape) {
                    let lhs = pairing(&r, &alpha).unwrap();
                    let rhs = pairing(&alpha, &alpha).unwrap() / 2;
                    assert_eq!(lhs, rhs, "{shape} {alpha}");
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let nu = w("10,9,8,5,4|1,4,6,8,10");
        let beta = OddRoot::positive(4, 1).to_weight(nu.shape());
        assert_eq!(pairing(&nu, &beta).unwrap(), Ratio::from_integer(0));
        let shape = Shape::new(2, 2).unwrap();
        let e1 = ShiftedWeight::eps(shape, 0);
        let e12 = e1.checked_sub(&ShiftedWeight::eps(shape, 1)).unwrap();
        assert_eq!(pairing(&e1, &e12).unwrap(), Ratio::from_integer(1));
        let d1 = ShiftedWeight::delta(shape, 0);
        assert_eq!(d1.b()[0], HalfInt::from_int(-1));
        assert_eq!(pairing(&d1, &d1).unwrap(), Ratio::from_integer(-1));
        assert!(pairing(&e1, &w("1|1")).is_err());
    }

    #[test]
    fn dominance_and_regularity() {
        assert!(is_strictly_dominant(&w("10,9,8,5,4|1,4,6,8,10")));
        assert!(!is_strictly_dominant(&w("1,1|0")));
        assert!(!is_strictly_dominant(&w("3,1|3,1")));
        assert!(is_regular(&w("3,1|3,1")));
        assert!(!is_regular(&w("2,2,0|1,2,3")));
    }

    #[test]
    fn rearrangement() {
        let (plus, g) = dominant_rearrangement(&w("1,3|3,1")).unwrap();
        assert_eq!(plus, w("3,1|1,3"));
        assert_eq!((g.length(), g.sign()), (2, 1));
        let (plus, g) = dominant_rearrangement(&w("4,2,1|2,1,4")).unwrap();
        assert_eq!(plus, w("4,2,1|1,2,4"));
        assert_eq!((g.length(), g.sign()), (1, -1));
        let (_, g) = dominant_rearrangement(&w("4,2,1|1,2,4")).unwrap();
        assert!(g.is_identity());
        assert!(matches!(dominant_rearrangement(&w("2,2|1")), Err(Error::NotRegular(_))));
    }

    #[test]
    fn atypical_root_examples() {
        let s = atypical_roots(&w("10,9,8,5,4|1,4,6,8,10")).unwrap();
        assert_eq!(s, vec![OddRoot::positive(4, 1), OddRoot::positive(2, 3), OddRoot::positive(0, 4)]);
        assert_eq!(atypical_values(&w("10,9,8,5,4|1,4,6,8,10")).unwrap(), vec![4, 8, 10]);
        let s = atypical_roots(&w("3,1|1,3")).unwrap();
        assert_eq!(s, vec![OddRoot::positive(1, 0), OddRoot::positive(0, 1)]);
        assert!(is_typical(&w("5,3|1,2")).unwrap());
        assert!(matches!(atypical_roots(&w("1,3|1,3")), Err(Error::NotStrictlyDominant(_))));
        assert!(matches!(atypical_roots(&w("3/2,1/2|1/2")), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn preceq_examples() {
        let lambda = w("10,9,8,5,4|1,4,6,8,10");
        let mu = w("9,8,7,5,2|1,2,6,7,8");
        assert!(preceq(&mu, &lambda).unwrap());
        assert!(preceq(&lambda, &lambda).unwrap());
        assert!(!preceq(&lambda, &mu).unwrap());
        // different typical entries
        assert!(!preceq(&w("8,7,6,2,1|2,5,7,8,9"), &lambda).unwrap());
        assert!(preceq(&w("3,1|1,2"), &lambda).is_err());
    }

    #[test]
    fn weyl_action() {
        let shape = Shape::new(2, 1).unwrap();
        let nu = w("3,1|0");
        assert_eq!(WeylElement::identity(shape).apply(&nu).unwrap(), nu);
        let s = WeylElement::simple_reflections(shape)[0].clone();
        assert_eq!(s.apply(&nu).unwrap(), w("1,3|0"));
    }

    #[test]
    fn heights() {
        let shape = Shape::new(3, 2).unwrap();
        assert_eq!(root_lattice_height(&OddRoot::positive(2, 0).to_weight(shape)).unwrap(), 1);
        for p in 0..3 {
            for q in 0..2 {
                let beta = OddRoot::positive(p, q);
                assert_eq!(root_lattice_height(&beta.to_weight(shape)).unwrap(), beta.height(shape) as i64);
                assert_eq!(beta.height(shape) as usize, 3 - (p + 1) + (q + 1));
            }
        }
        assert_eq!(root_lattice_height(&ShiftedWeight::zero(shape)).unwrap(), 0);
        assert!(root_lattice_height(&ShiftedWeight::eps(shape, 0)).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("bad".parse::<ShiftedWeight>(), Err(Error::Parse { .. })));
        assert!(matches!("1,x|2".parse::<ShiftedWeight>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("|2".parse::<ShiftedWeight>(), Err(Error::Parse { .. })));
        assert_eq!(w("1/2|-3/2").to_string(), "1/2|-3/2");
    }

    #[test]
    fn unshifted_constructor() {
        let eps1: ShiftedWeight = "1,0|0".parse().unwrap();
        assert_eq!(ShiftedWeight::from_unshifted(&eps1).unwrap(), w("1,-1|-1"));
        let eps1_33: ShiftedWeight = "1,0,0|0,0,0".parse().unwrap();
        match ShiftedWeight::from_unshifted(&eps1_33) {
            Err(Error::HalfIntegralShift { shift, .. }) => assert_eq!(shift, "1/2"),
            other => panic!("{other:?}"),
        }
    }
}
