//! The surface chart: named curves with their mod-2 classes, and the declared
//! actions of the reflection involutions and the non-twist generators.
//!
//! Figure content (where each curve sits, how each mirror acts) is not
//! recoverable from text, so a chart is design data. [`default_chart`]
//! builds one reconstruction; [`validate_chart`] checks any chart against
//! every stated action fact plus the structural invariants.

mod default;
mod validate;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector, IntersectionForm};
use crate::params::SurfaceParams;
use crate::perm::Permutation;

pub use default::default_chart;
pub use validate::{stated_actions, stated_transports, validate_chart, ConstraintResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("unknown curve name {0:?}")]
    UnknownCurveName(String),
    #[error("unknown involution name {0:?}")]
    UnknownInvolution(String),
    #[error("curve {0} is not part of this chart")]
    MissingCurve(CurveId),
    #[error("involution {0} is not declared by this chart")]
    MissingInvolution(InvolutionName),
    #[error("incomplete curve set: missing {0}")]
    IncompleteCurveSet(CurveId),
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("default chart construction failed: {0}")]
    Construction(&'static str),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveFamily {
    A,
    B,
    C,
    D,
    E,
    Alpha,
    Beta,
    Xi,
    M,
    X,
    N1,
}

impl CurveFamily {
    fn prefix(self) -> &'static str {
        match self {
            CurveFamily::A => "a",
            CurveFamily::B => "b",
            CurveFamily::C => "c",
            CurveFamily::D => "d",
            CurveFamily::E => "e",
            CurveFamily::Alpha => "alpha",
            CurveFamily::Beta => "beta",
            CurveFamily::Xi => "xi",
            CurveFamily::M => "m",
            CurveFamily::X => "x",
            CurveFamily::N1 => "n1",
        }
    }

    fn indexed(self) -> bool {
        !matches!(self, CurveFamily::Xi | CurveFamily::M | CurveFamily::X | CurveFamily::N1)
    }

    /// Families of the twist set `Λ`.
    pub fn in_lambda(self) -> bool {
        matches!(
            self,
            CurveFamily::A | CurveFamily::B | CurveFamily::C | CurveFamily::D | CurveFamily::E
        )
    }
}

/// A named curve, e.g. `a3`, `alpha2`, `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveId {
    pub family: CurveFamily,
    pub index: usize,
}

impl CurveId {
    pub const XI: CurveId = CurveId::single(CurveFamily::Xi);
    pub const M: CurveId = CurveId::single(CurveFamily::M);
    pub const X: CurveId = CurveId::single(CurveFamily::X);
    pub const N1: CurveId = CurveId::single(CurveFamily::N1);

    pub const fn new(family: CurveFamily, index: usize) -> Self {
        Self { family, index }
    }

    const fn single(family: CurveFamily) -> Self {
        Self { family, index: 0 }
    }

    pub fn a(i: usize) -> Self {
        Self::new(CurveFamily::A, i)
    }
    pub fn b(i: usize) -> Self {
        Self::new(CurveFamily::B, i)
    }
    pub fn c(i: usize) -> Self {
        Self::new(CurveFamily::C, i)
    }
    pub fn d(i: usize) -> Self {
        Self::new(CurveFamily::D, i)
    }
    pub fn e(i: usize) -> Self {
        Self::new(CurveFamily::E, i)
    }
    pub fn alpha(i: usize) -> Self {
        Self::new(CurveFamily::Alpha, i)
    }
    pub fn beta(i: usize) -> Self {
        Self::new(CurveFamily::Beta, i)
    }

    pub fn in_lambda(&self) -> bool {
        self.family.in_lambda()
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.indexed() {
            write!(f, "{}{}", self.family.prefix(), self.index)
        } else {
            f.write_str(self.family.prefix())
        }
    }
}

impl FromStr for CurveId {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ChartError::UnknownCurveName(s.to_string());
        match s {
            "xi" => return Ok(Self::XI),
            "m" => return Ok(Self::M),
            "x" => return Ok(Self::X),
            "n1" => return Ok(Self::N1),
            _ => {}
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (prefix, digits) = s.split_at(split);
        let family = match prefix {
            "a" => CurveFamily::A,
            "b" => CurveFamily::B,
            "c" => CurveFamily::C,
            "d" => CurveFamily::D,
            "e" => CurveFamily::E,
            "alpha" => CurveFamily::Alpha,
            "beta" => CurveFamily::Beta,
            _ => return Err(bad()),
        };
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Self::new(family, index))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

impl Sidedness {
    pub fn as_str(self) -> &'static str {
        match self {
            Sidedness::OneSided => "one-sided",
            Sidedness::TwoSided => "two-sided",
        }
    }
}

impl FromStr for Sidedness {
    type Err = ChartError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "one-sided" | "one" => Ok(Sidedness::OneSided),
            "two-sided" | "two" => Ok(Sidedness::TwoSided),
            other => Err(ChartError::UnknownCurveName(other.to_string())),
        }
    }
}

/// Involution symbols. `σ, τ, I, J, K, W` are declared by the chart;
/// `ρ₁…ρ₅` are products of an involution and a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionName {
    Sigma,
    Tau,
    I,
    J,
    K,
    W,
    Rho1,
    Rho2,
    Rho3,
    Rho4,
    Rho5,
}

impl InvolutionName {
    pub const ALL: [InvolutionName; 11] = [
        InvolutionName::Sigma,
        InvolutionName::Tau,
        InvolutionName::I,
        InvolutionName::J,
        InvolutionName::K,
        InvolutionName::W,
        InvolutionName::Rho1,
        InvolutionName::Rho2,
        InvolutionName::Rho3,
        InvolutionName::Rho4,
        InvolutionName::Rho5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InvolutionName::Sigma => "sigma",
            InvolutionName::Tau => "tau",
            InvolutionName::I => "I",
            InvolutionName::J => "J",
            InvolutionName::K => "K",
            InvolutionName::W => "W",
            InvolutionName::Rho1 => "rho1",
            InvolutionName::Rho2 => "rho2",
            InvolutionName::Rho3 => "rho3",
            InvolutionName::Rho4 => "rho4",
            InvolutionName::Rho5 => "rho5",
        }
    }

    pub fn is_derived(self) -> bool {
        matches!(
            self,
            InvolutionName::Rho1
                | InvolutionName::Rho2
                | InvolutionName::Rho3
                | InvolutionName::Rho4
                | InvolutionName::Rho5
        )
    }

    pub fn even_only(self) -> bool {
        matches!(self, InvolutionName::K | InvolutionName::Rho4 | InvolutionName::Rho5)
    }

    /// The generating involutions for the mode: 8 in odd genus, 11 in even.
    pub fn alphabet(params: &SurfaceParams) -> Vec<InvolutionName> {
        Self::ALL
            .iter()
            .copied()
            .filter(|s| params.is_even() || !s.even_only())
            .collect()
    }

    /// The chart-declared reflections for the mode.
    pub fn declared(params: &SurfaceParams) -> Vec<InvolutionName> {
        Self::alphabet(params).into_iter().filter(|s| !s.is_derived()).collect()
    }
}

impl fmt::Display for InvolutionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InvolutionName {
    type Err = ChartError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ChartError::UnknownInvolution(s.to_string()))
    }
}

/// Orientation sign of a conjugation: `f t_c f⁻¹ = t_{f(c)}^ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveImage {
    Curve(CurveId),
    Class(Gf2Vector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionEntry {
    pub curve: CurveId,
    pub image: CurveImage,
    pub eps: Sign,
}

impl ActionEntry {
    pub fn to_curve(curve: CurveId, image: CurveId, eps: Sign) -> Self {
        Self {
            curve,
            image: CurveImage::Curve(image),
            eps,
        }
    }

    pub fn image_curve(&self) -> Option<CurveId> {
        match self.image {
            CurveImage::Curve(c) => Some(c),
            CurveImage::Class(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionData {
    pub matrix: Gf2Matrix,
    pub perm: Permutation,
    pub table: Vec<ActionEntry>,
}

impl InvolutionData {
    pub fn entry(&self, curve: CurveId) -> Option<&ActionEntry> {
        self.table.iter().find(|e| e.curve == curve)
    }
}

/// Products of two reflections used to move curves along a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransportOp {
    /// `τσ`: shifts the `a`, `b`, `c` and `α` families up by one.
    TauSigma,
    /// `στ`: shifts the `β` family down by one (even genus).
    SigmaTau,
    /// `JI`: shifts the `e` family up by one.
    JI,
}

impl TransportOp {
    pub const ALL: [TransportOp; 3] = [TransportOp::TauSigma, TransportOp::SigmaTau, TransportOp::JI];

    /// The product as two letters, left factor first.
    pub fn letters(self) -> [InvolutionName; 2] {
        match self {
            TransportOp::TauSigma => [InvolutionName::Tau, InvolutionName::Sigma],
            TransportOp::SigmaTau => [InvolutionName::Sigma, InvolutionName::Tau],
            TransportOp::JI => [InvolutionName::J, InvolutionName::I],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TransportOp::TauSigma => "tau*sigma",
            TransportOp::SigmaTau => "sigma*tau",
            TransportOp::JI => "J*I",
        }
    }
}

impl FromStr for TransportOp {
    type Err = ChartError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ChartError::UnknownInvolution(s.to_string()))
    }
}

impl fmt::Display for TransportOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRecord {
    pub class: Gf2Vector,
    pub sided: Sidedness,
}

/// Homology images of the crosscap slide `y` and the puncture slides.
/// All of them fix every puncture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontwistData {
    pub y: Gf2Matrix,
    pub v: Vec<Gf2Matrix>,
    pub w: Vec<Gf2Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveChart {
    pub params: SurfaceParams,
    pub form: IntersectionForm,
    pub curves: BTreeMap<CurveId, CurveRecord>,
    pub involutions: BTreeMap<InvolutionName, InvolutionData>,
    pub transports: BTreeMap<TransportOp, Vec<ActionEntry>>,
    pub nontwist: NontwistData,
    /// The curve `n₁` is bound to; its twist must be certified before the `e` family.
    pub n1_binding: CurveId,
}

impl CurveChart {
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn class(&self, c: CurveId) -> Result<&Gf2Vector, ChartError> {
        self.curves.get(&c).map(|r| &r.class).ok_or(ChartError::MissingCurve(c))
    }

    pub fn involution(&self, name: InvolutionName) -> Result<&InvolutionData, ChartError> {
        self.involutions.get(&name).ok_or(ChartError::MissingInvolution(name))
    }

    pub fn image_class(&self, image: &CurveImage) -> Result<Gf2Vector, ChartError> {
        match image {
            CurveImage::Curve(c) => Ok(self.class(*c)?.clone()),
            CurveImage::Class(v) => Ok(v.clone()),
        }
    }

    pub fn transport_entry(&self, op: TransportOp, curve: CurveId) -> Option<&ActionEntry> {
        self.transports.get(&op)?.iter().find(|e| e.curve == curve)
    }

    /// Class of the boundary loop around puncture `i` (1-based);
    /// `δ_n = δ₁ + … + δ_{n-1}`.
    pub fn delta(&self, i: usize) -> Gf2Vector {
        delta_class(&self.params, i)
    }

    /// 64-bit FNV-1a digest of the chart contents, used as a cache key.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_usize(self.params.g);
        h.write_usize(self.params.n);
        for row in self.form.gram().rows() {
            h.write_str(&row.to_bits());
        }
        for (id, rec) in &self.curves {
            h.write_str(&id.to_string());
            h.write_str(&rec.class.to_bits());
            h.write_str(rec.sided.as_str());
        }
        for (name, data) in &self.involutions {
            h.write_str(name.as_str());
            for row in data.matrix.rows() {
                h.write_str(&row.to_bits());
            }
            h.write_str(&data.perm.to_cycle_string());
            hash_entries(&mut h, &data.table);
        }
        for (op, entries) in &self.transports {
            h.write_str(op.as_str());
            hash_entries(&mut h, entries);
        }
        for m in core::iter::once(&self.nontwist.y)
            .chain(&self.nontwist.v)
            .chain(&self.nontwist.w)
        {
            for row in m.rows() {
                h.write_str(&row.to_bits());
            }
        }
        h.write_str(&self.n1_binding.to_string());
        h.finish()
    }
}

fn hash_entries(h: &mut Fnv, entries: &[ActionEntry]) {
    for e in entries {
        h.write_str(&e.curve.to_string());
        match &e.image {
            CurveImage::Curve(c) => h.write_str(&c.to_string()),
            CurveImage::Class(v) => h.write_str(&v.to_bits()),
        }
        h.write_usize(e.eps.as_i8() as usize);
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 ^= u64::from(*b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
    fn write_str(&mut self, s: &str) {
        self.write(s.as_bytes());
        self.write(&[0xff]);
    }
    fn write_usize(&mut self, v: usize) {
        self.write(&(v as u64).to_le_bytes());
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

pub(crate) fn delta_class(params: &SurfaceParams, i: usize) -> Gf2Vector {
    let dim = params.homology_dim();
    let n = params.n;
    assert!(i >= 1 && i <= n.max(1), "puncture {i} out of range");
    if i < n {
        Gf2Vector::unit(dim, params.g + i - 1)
    } else {
        Gf2Vector::from_indices(dim, params.g..dim)
    }
}

/// The curves a chart for `params` must contain: `Λ`, the `α` (and in even
/// genus `β`) loops, and `ξ`, `m`, `x`, `n₁`.
pub fn required_curves(params: &SurfaceParams) -> Vec<CurveId> {
    let mut out = Vec::new();
    out.extend((1..=params.r).map(CurveId::a));
    out.extend((1..=params.b_max()).map(CurveId::b));
    out.extend((1..=params.c_max()).map(CurveId::c));
    out.extend((1..=params.r).map(CurveId::d));
    out.extend((1..params.n).map(CurveId::e));
    out.extend((1..=params.n).map(CurveId::alpha));
    if params.is_even() {
        out.extend((1..=params.n).map(CurveId::beta));
    }
    out.extend([CurveId::XI, CurveId::M, CurveId::X, CurveId::N1]);
    out
}

/// The curves of `Λ` for `params`.
pub fn lambda_curves(params: &SurfaceParams) -> Vec<CurveId> {
    required_curves(params).into_iter().filter(CurveId::in_lambda).collect()
}

/// The reduced twist set `Λ′`.
pub fn reduced_lambda(params: &SurfaceParams) -> Vec<CurveId> {
    let mut out = Vec::new();
    out.extend((1..=params.r).map(CurveId::a));
    out.extend([CurveId::b(1), CurveId::b(2)]);
    if params.is_even() {
        out.push(CurveId::b(params.r + 1));
    }
    out.extend((1..=params.c_max()).map(CurveId::c));
    out.extend([CurveId::d(1), CurveId::d(2)]);
    out.extend((1..params.n).map(CurveId::e));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_names_round_trip() {
        for name in ["a3", "b12", "alpha2", "beta7", "xi", "m", "x", "n1", "e1", "d2"] {
            let id: CurveId = name.parse().unwrap();
            assert_eq!(id.to_string(), name);
        }
        assert!("q3".parse::<CurveId>().is_err());
        assert!("a0".parse::<CurveId>().is_err());
        assert!("alpha".parse::<CurveId>().is_err());
    }

    #[test]
    fn involution_names_round_trip() {
        for n in InvolutionName::ALL {
            assert_eq!(n.as_str().parse::<InvolutionName>().unwrap(), n);
        }
    }

    #[test]
    fn lambda_size_odd() {
        let p = SurfaceParams::new(13, 5).unwrap();
        assert_eq!(lambda_curves(&p).len(), 27);
        assert_eq!(reduced_lambda(&p).len(), p.reduced_twist_count());
    }

    #[test]
    fn alphabet_sizes() {
        let odd = SurfaceParams::new(13, 5).unwrap();
        let even = SurfaceParams::new(16, 4).unwrap();
        assert_eq!(InvolutionName::alphabet(&odd).len(), 8);
        assert_eq!(InvolutionName::alphabet(&even).len(), 11);
        assert_eq!(InvolutionName::declared(&odd).len(), 5);
        assert_eq!(InvolutionName::declared(&even).len(), 6);
    }

    #[test]
    fn delta_n_is_sum_of_others() {
        let p = SurfaceParams::new(13, 5).unwrap();
        let mut sum = Gf2Vector::zeros(p.homology_dim());
        for i in 1..5 {
            sum.add_assign(&delta_class(&p, i)).unwrap();
        }
        assert_eq!(delta_class(&p, 5), sum);
        let p1 = SurfaceParams::new(13, 1).unwrap();
        assert!(delta_class(&p1, 1).is_zero());
    }
}
