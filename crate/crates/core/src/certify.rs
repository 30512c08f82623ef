//! Certificates: each required generator written as a word in involutions.
//!
//! Rules (trace ids):
//!
//! | id  | step |
//! |-----|------|
//! | R1  | `t_{a₁} = τ ρ₁` |
//! | R2  | `t_{a_i} = (τσ) t_{a_{i-1}} (τσ)⁻¹` |
//! | R3  | `t_{c_{k+1}} = I t_{a_{k+3}}⁻¹ I` |
//! | R4  | `c` transport up by `τσ`, down by `στ` |
//! | R5  | `t_{b_k} = I t_{c_k}⁻¹ I` |
//! | R6  | `b` transport in both directions |
//! | R7  | `t_{d_j} = I t_{b_j}⁻¹ I`, `j = 1, 2` |
//! | R8  | `t_{e₁} = J t_{n₁}⁻¹ J`, then transport by `JI` |
//! | R9  | `v₁ = τ ρ₂` (odd) or `K ρ₂` (even), transport by `τσ` |
//! | R10 | `w_n = σ v₁ σ`, transport by `στ` |
//! | R11 | `y = W ρ₃` |
//! | R12 | `t_{b_{r+1}} = J ρ₄`, `t_{c_r} = J ρ₅` |
//!
//! Exponents come from the chart's ε-signs: `t_{f(c)} = f t_c^ε f⁻¹`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::chart::{reduced_lambda, ActionEntry, ChartError, CurveChart, CurveFamily, CurveId, InvolutionName, TransportOp};
use crate::params::SurfaceParams;
use crate::word::{conjugate, GeneratorSymbol, Letter, MappingWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("not a required generator: {0}")]
    NotRequired(GeneratorSymbol),
    #[error("chart is missing data for {0}")]
    MissingData(String),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::R4,
        Rule::R5,
        Rule::R6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
        Rule::R11,
        Rule::R12,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R9 => "R9",
            Rule::R10 => "R10",
            Rule::R11 => "R11",
            Rule::R12 => "R12",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = CertifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .iter()
            .copied()
            .find(|r| r.id() == s)
            .ok_or_else(|| CertifyError::MissingData(format!("unknown rule id {s:?}")))
    }
}

/// One application of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    /// The generator this step produces.
    pub target: GeneratorSymbol,
    /// The step's right-hand side in symbols, e.g. `tau sigma t[a1] sigma tau`
    /// for `t[a2]`.
    pub rhs: MappingWord,
    /// Human-readable substitution, e.g. `t[a2] = (tau sigma) t[a1] (sigma tau)`.
    pub substitution: String,
    /// Set on steps whose schedule is carried over from the other parity.
    pub reconstructed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: GeneratorSymbol,
    pub word: MappingWord,
    pub trace: Vec<TraceStep>,
}

impl Certificate {
    pub fn rule_ids(&self) -> Vec<&'static str> {
        self.trace.iter().map(|s| s.rule.id()).collect()
    }
}

/// The generators a full certificate set must cover, in canonical order:
/// `Λ′` twists, `v₁…v_n`, `w₁…w_n` (even genus), `y`.
pub fn required_targets(params: &SurfaceParams) -> Vec<GeneratorSymbol> {
    let mut out: Vec<GeneratorSymbol> = reduced_lambda(params).into_iter().map(GeneratorSymbol::Twist).collect();
    out.extend((1..=params.n).map(GeneratorSymbol::SlideV));
    if params.is_even() {
        out.extend((1..=params.n).map(GeneratorSymbol::SlideW));
    }
    out.push(GeneratorSymbol::CrosscapSlide);
    out
}

/// Involution symbols used by a certificate set.
pub fn alphabet_census(certs: &[Certificate]) -> BTreeSet<InvolutionName> {
    certs.iter().flat_map(|c| c.word.involution_names()).collect()
}

/// Symbols a full certificate set uses for `params`. This is the whole
/// alphabet except when there are too few punctures for a rule to fire:
/// with `n = 0` no slide is needed (so `ρ₂`, and `K` in even genus, drop
/// out), and with `n ≤ 1` in odd genus there is no `e` curve for `J`.
pub fn expected_census(params: &SurfaceParams) -> BTreeSet<InvolutionName> {
    InvolutionName::alphabet(params)
        .into_iter()
        .filter(|s| match s {
            InvolutionName::Rho2 => params.n >= 1,
            InvolutionName::K => params.n >= 1,
            InvolutionName::J => params.is_even() || params.n >= 2,
            _ => true,
        })
        .collect()
}

/// Builds certificates against one chart, memoizing intermediate steps.
pub struct Certifier<'a> {
    chart: &'a CurveChart,
    memo: BTreeMap<GeneratorSymbol, Certificate>,
}

fn letters(names: &[InvolutionName]) -> MappingWord {
    MappingWord::involutions(names)
}

impl<'a> Certifier<'a> {
    pub fn new(chart: &'a CurveChart) -> Self {
        Self {
            chart,
            memo: BTreeMap::new(),
        }
    }

    /// Certificate for a required generator.
    pub fn certify(&mut self, target: GeneratorSymbol) -> Result<Certificate, CertifyError> {
        if !required_targets(&self.chart.params).contains(&target) {
            return Err(CertifyError::NotRequired(target));
        }
        self.build(target)
    }

    pub fn certify_all(&mut self) -> Result<Vec<Certificate>, CertifyError> {
        required_targets(&self.chart.params).into_iter().map(|t| self.certify(t)).collect()
    }

    fn build(&mut self, target: GeneratorSymbol) -> Result<Certificate, CertifyError> {
        if let Some(c) = self.memo.get(&target) {
            return Ok(c.clone());
        }
        let cert = match target {
            GeneratorSymbol::Twist(c) => self.twist(c)?,
            GeneratorSymbol::SlideV(i) => self.slide_v(i)?,
            GeneratorSymbol::SlideW(j) => self.slide_w(j)?,
            GeneratorSymbol::CrosscapSlide => seed(target, &[InvolutionName::W, InvolutionName::Rho3], Rule::R11),
            GeneratorSymbol::Involution(_) => return Err(CertifyError::NotRequired(target)),
        };
        self.memo.insert(target, cert.clone());
        Ok(cert)
    }

    fn table_entry(&self, f: InvolutionName, curve: CurveId) -> Result<&'a ActionEntry, CertifyError> {
        self.chart
            .involution(f)?
            .entry(curve)
            .ok_or_else(|| CertifyError::MissingData(format!("{f}({curve})")))
    }

    fn transport(&self, op: TransportOp, curve: CurveId) -> Result<&'a ActionEntry, CertifyError> {
        self.chart
            .transport_entry(op, curve)
            .ok_or_else(|| CertifyError::MissingData(format!("{op}({curve})")))
    }

    fn expect_image(entry: &ActionEntry, want: CurveId, label: &str) -> Result<(), CertifyError> {
        if entry.image_curve() == Some(want) {
            Ok(())
        } else {
            Err(CertifyError::MissingData(format!("{label}: {} does not map to {want}", entry.curve)))
        }
    }

    /// `target = f · src^ε · f⁻¹` with `ε` read from `entry`.
    fn conj_step(
        &mut self,
        target: GeneratorSymbol,
        f: &[InvolutionName],
        src: GeneratorSymbol,
        minus: bool,
        rule: Rule,
        reconstructed: bool,
    ) -> Result<Certificate, CertifyError> {
        let inner = self.build(src)?;
        let fw = letters(f);
        let body = if minus { inner.word.inverse() } else { inner.word.clone() };
        let word = conjugate(&fw, &body);
        let exp = if minus { "^-1" } else { "" };
        let mut trace = inner.trace;
        let src_letter = if minus { Letter::inv(src) } else { Letter::new(src) };
        let mut rhs = fw.clone();
        rhs.push(src_letter);
        let rhs = rhs.concat(&fw.inverse());
        trace.push(TraceStep {
            rule,
            target,
            rhs,
            substitution: format!("{target} = ({fw}) {src}{exp} ({})", fw.inverse()),
            reconstructed,
        });
        Ok(Certificate { target, word, trace })
    }

    fn twist(&mut self, c: CurveId) -> Result<Certificate, CertifyError> {
        use InvolutionName::*;
        let p = self.chart.params;
        let (r, k) = (p.r, p.k);
        let target = GeneratorSymbol::Twist(c);
        let tw = GeneratorSymbol::Twist;
        let i = c.index;
        let up = [Tau, Sigma];
        let down = [Sigma, Tau];
        match c.family {
            CurveFamily::A if i == 1 => Ok(seed(target, &[Tau, Rho1], Rule::R1)),
            CurveFamily::A if i <= r => {
                let e = self.transport(TransportOp::TauSigma, CurveId::a(i - 1))?;
                Self::expect_image(e, c, "a transport")?;
                self.conj_step(target, &up, tw(CurveId::a(i - 1)), e.eps.is_minus(), Rule::R2, false)
            }
            CurveFamily::C if p.is_even() && i == r => Ok(seed(target, &[J, Rho5], Rule::R12)),
            CurveFamily::C if i == k + 1 => {
                let e = self.table_entry(I, CurveId::a(k + 3))?;
                Self::expect_image(e, c, "I")?;
                self.conj_step(target, &[I], tw(CurveId::a(k + 3)), e.eps.is_minus(), Rule::R3, false)
            }
            CurveFamily::C if i > k + 1 && i <= p.c_max() => {
                let e = self.transport(TransportOp::TauSigma, CurveId::c(i - 1))?;
                Self::expect_image(e, c, "c transport")?;
                self.conj_step(target, &up, tw(CurveId::c(i - 1)), e.eps.is_minus(), Rule::R4, false)
            }
            CurveFamily::C if (1..=k).contains(&i) => {
                let e = self.transport(TransportOp::TauSigma, c)?;
                Self::expect_image(e, CurveId::c(i + 1), "c transport")?;
                self.conj_step(target, &down, tw(CurveId::c(i + 1)), e.eps.is_minus(), Rule::R4, false)
            }
            CurveFamily::B if p.is_even() && i == r + 1 => Ok(seed(target, &[J, Rho4], Rule::R12)),
            CurveFamily::B if i == k => {
                let e = self.table_entry(I, CurveId::c(k))?;
                Self::expect_image(e, c, "I")?;
                self.conj_step(target, &[I], tw(CurveId::c(k)), e.eps.is_minus(), Rule::R5, false)
            }
            CurveFamily::B if (1..k).contains(&i) => {
                let e = self.transport(TransportOp::TauSigma, c)?;
                Self::expect_image(e, CurveId::b(i + 1), "b transport")?;
                self.conj_step(target, &down, tw(CurveId::b(i + 1)), e.eps.is_minus(), Rule::R6, false)
            }
            CurveFamily::B if i > k && i <= r => {
                let e = self.transport(TransportOp::TauSigma, CurveId::b(i - 1))?;
                Self::expect_image(e, c, "b transport")?;
                self.conj_step(target, &up, tw(CurveId::b(i - 1)), e.eps.is_minus(), Rule::R6, false)
            }
            CurveFamily::D if i == 1 || i == 2 => {
                let e = self.table_entry(I, CurveId::b(i))?;
                Self::expect_image(e, c, "I")?;
                self.conj_step(target, &[I], tw(CurveId::b(i)), e.eps.is_minus(), Rule::R7, false)
            }
            CurveFamily::E if i == 1 && p.n >= 2 => {
                let e = self.table_entry(J, CurveId::N1)?;
                Self::expect_image(e, c, "J")?;
                let bound = self.chart.n1_binding;
                if self.chart.class(bound)? != self.chart.class(CurveId::N1)? || !bound.in_lambda() {
                    return Err(CertifyError::MissingData("n1 binding".into()));
                }
                self.conj_step(target, &[J], tw(bound), e.eps.is_minus(), Rule::R8, p.is_even())
            }
            CurveFamily::E if i >= 2 && i < p.n => {
                let e = self.transport(TransportOp::JI, CurveId::e(i - 1))?;
                Self::expect_image(e, c, "e transport")?;
                self.conj_step(target, &[J, I], tw(CurveId::e(i - 1)), e.eps.is_minus(), Rule::R8, p.is_even())
            }
            _ => Err(CertifyError::NotRequired(target)),
        }
    }

    /// Checks that the product `f` sends puncture `from` to `to`.
    fn moves_puncture(&self, f: &[InvolutionName], from: usize, to: usize) -> Result<(), CertifyError> {
        let mut point = from;
        for name in f.iter().rev() {
            point = self.chart.involution(*name)?.perm.apply(point);
        }
        if point == to {
            Ok(())
        } else {
            Err(CertifyError::MissingData(format!("puncture action sending {from} to {to}")))
        }
    }

    fn slide_v(&mut self, i: usize) -> Result<Certificate, CertifyError> {
        use InvolutionName::*;
        let p = self.chart.params;
        let target = GeneratorSymbol::SlideV(i);
        if i == 0 || i > p.n {
            return Err(CertifyError::NotRequired(target));
        }
        if i == 1 {
            let f = if p.is_even() { K } else { Tau };
            return Ok(seed(target, &[f, Rho2], Rule::R9));
        }
        let e = self.transport(TransportOp::TauSigma, CurveId::alpha(i - 1))?;
        Self::expect_image(e, CurveId::alpha(i), "alpha transport")?;
        self.moves_puncture(&[Tau, Sigma], i - 1, i)?;
        self.conj_step(target, &[Tau, Sigma], GeneratorSymbol::SlideV(i - 1), e.eps.is_minus(), Rule::R9, false)
    }

    fn slide_w(&mut self, j: usize) -> Result<Certificate, CertifyError> {
        use InvolutionName::*;
        let p = self.chart.params;
        let n = p.n;
        let target = GeneratorSymbol::SlideW(j);
        if !p.is_even() || j == 0 || j > n {
            return Err(CertifyError::NotRequired(target));
        }
        if j == n {
            let e = self.table_entry(Sigma, CurveId::alpha(1))?;
            Self::expect_image(e, CurveId::beta(n), "sigma")?;
            self.moves_puncture(&[Sigma], 1, n)?;
            return self.conj_step(target, &[Sigma], GeneratorSymbol::SlideV(1), e.eps.is_minus(), Rule::R10, false);
        }
        let e = self.transport(TransportOp::SigmaTau, CurveId::beta(j + 1))?;
        Self::expect_image(e, CurveId::beta(j), "beta transport")?;
        self.moves_puncture(&[Sigma, Tau], j + 1, j)?;
        self.conj_step(target, &[Sigma, Tau], GeneratorSymbol::SlideW(j + 1), e.eps.is_minus(), Rule::R10, false)
    }
}

fn seed(target: GeneratorSymbol, word: &[InvolutionName], rule: Rule) -> Certificate {
    let word = letters(word);
    Certificate {
        target,
        trace: alloc::vec![TraceStep {
            rule,
            target,
            rhs: word.clone(),
            substitution: format!("{target} = {word}"),
            reconstructed: false,
        }],
        word,
    }
}

/// Certificate for one required generator.
pub fn certify(target: GeneratorSymbol, chart: &CurveChart) -> Result<Certificate, CertifyError> {
    Certifier::new(chart).certify(target)
}

/// Certificates for every required generator, in [`required_targets`] order.
pub fn certify_all(chart: &CurveChart) -> Result<Vec<Certificate>, CertifyError> {
    Certifier::new(chart).certify_all()
}
