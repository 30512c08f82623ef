//! Evaluation of words in the mod-2 homology and puncture representations.

use alloc::collections::BTreeMap;
use alloc::vec;

use thiserror::Error;

use crate::chart::{ChartError, CurveChart, CurveId, InvolutionName};
use crate::gf2::{Gf2Error, Gf2Matrix};
use crate::params::SurfaceParams;
use crate::perm::{PermError, Permutation};
use crate::word::{GeneratorSymbol, Letter, MappingWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("symbol {0} cannot be evaluated on this chart")]
    Unresolved(GeneratorSymbol),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Image of a mapping class in both representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepImage {
    pub homology: Gf2Matrix,
    pub punctures: Permutation,
}

impl RepImage {
    pub fn identity(params: &SurfaceParams) -> Self {
        Self {
            homology: Gf2Matrix::identity(params.homology_dim()),
            punctures: Permutation::identity(params.n),
        }
    }

    /// `self · other` (`other` applied first).
    pub fn compose(&self, other: &Self) -> Result<Self, RepError> {
        Ok(Self {
            homology: self.homology.compose(&other.homology)?,
            punctures: self.punctures.compose(&other.punctures)?,
        })
    }

    pub fn inverse(&self) -> Result<Self, RepError> {
        Ok(Self {
            homology: self.homology.inverse()?,
            punctures: self.punctures.inverse(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.homology.is_identity() && self.punctures.is_identity()
    }

    pub fn preserves_form(&self, chart: &CurveChart) -> bool {
        chart.form.preserves(&self.homology).unwrap_or(false)
    }

    /// `δ_i ↦ δ_{π(i)}` for every puncture.
    pub fn delta_consistent(&self, chart: &CurveChart) -> bool {
        (1..=chart.params.n).all(|i| self.homology.mul_vec(&chart.delta(i)).ok() == Some(chart.delta(self.punctures.apply(i))))
    }
}

/// Definitions of the derived involutions as words in chart generators.
/// `None` when the needed generator does not exist for `params`.
pub fn derived_definition(name: InvolutionName, params: &SurfaceParams) -> Option<MappingWord> {
    use GeneratorSymbol::*;
    use InvolutionName::*;
    let word = |f: InvolutionName, g: GeneratorSymbol| MappingWord::from_letters(vec![Letter::involution(f), Letter::new(g)]);
    match name {
        Rho1 => Some(word(Tau, Twist(CurveId::a(1)))),
        Rho2 if params.n == 0 => None,
        Rho2 if params.is_even() => Some(word(K, SlideV(1))),
        Rho2 => Some(word(Tau, SlideV(1))),
        Rho3 => Some(word(W, CrosscapSlide)),
        Rho4 if params.is_even() => Some(word(J, Twist(CurveId::b(params.r + 1)))),
        Rho5 if params.is_even() => Some(word(J, Twist(CurveId::c(params.r)))),
        _ => None,
    }
}

/// Per-chart evaluator. Involution images are computed once.
#[derive(Debug, Clone)]
pub struct Evaluator<'a> {
    chart: &'a CurveChart,
    involutions: BTreeMap<InvolutionName, RepImage>,
}

impl<'a> Evaluator<'a> {
    pub fn new(chart: &'a CurveChart) -> Self {
        let mut this = Self {
            chart,
            involutions: BTreeMap::new(),
        };
        for name in InvolutionName::alphabet(&chart.params) {
            if let Ok(img) = this.symbol(GeneratorSymbol::Involution(name)) {
                this.involutions.insert(name, img);
            }
        }
        this
    }

    pub fn chart(&self) -> &'a CurveChart {
        self.chart
    }

    /// Image of a single positive symbol.
    pub fn symbol(&self, sym: GeneratorSymbol) -> Result<RepImage, RepError> {
        let chart = self.chart;
        let p = &chart.params;
        if !sym.valid_for(p) {
            return Err(RepError::Unresolved(sym));
        }
        let pure = |homology: Gf2Matrix| RepImage {
            homology,
            punctures: Permutation::identity(p.n),
        };
        match sym {
            GeneratorSymbol::Twist(c) => Ok(pure(chart.form.transvection(chart.class(c)?)?)),
            GeneratorSymbol::CrosscapSlide => Ok(pure(chart.nontwist.y.clone())),
            GeneratorSymbol::SlideV(i) => chart.nontwist.v.get(i - 1).cloned().map(pure).ok_or(RepError::Unresolved(sym)),
            GeneratorSymbol::SlideW(i) => chart.nontwist.w.get(i - 1).cloned().map(pure).ok_or(RepError::Unresolved(sym)),
            GeneratorSymbol::Involution(name) => {
                if let Some(img) = self.involutions.get(&name) {
                    return Ok(img.clone());
                }
                if name.is_derived() {
                    let def = derived_definition(name, p).ok_or(RepError::Unresolved(sym))?;
                    self.word(&def)
                } else {
                    let data = chart.involution(name)?;
                    Ok(RepImage {
                        homology: data.matrix.clone(),
                        punctures: data.perm.clone(),
                    })
                }
            }
        }
    }

    pub fn letter(&self, l: &Letter) -> Result<RepImage, RepError> {
        let img = self.symbol(l.symbol)?;
        if l.inverse {
            img.inverse()
        } else {
            Ok(img)
        }
    }

    /// Multiplicative evaluation; the empty word maps to the identity.
    pub fn word(&self, w: &MappingWord) -> Result<RepImage, RepError> {
        let mut acc = RepImage::identity(&self.chart.params);
        for l in w.letters() {
            acc = acc.compose(&self.letter(l)?)?;
        }
        Ok(acc)
    }
}

/// Anything that can evaluate words on a fixed chart. The std crate wraps
/// [`Evaluator`] with a memo table behind this trait.
pub trait WordEval {
    fn chart(&self) -> &CurveChart;
    fn eval(&self, w: &MappingWord) -> Result<RepImage, RepError>;

    fn check_identity(&self, lhs: &MappingWord, rhs: &MappingWord) -> Result<IdentityVerdict, RepError> {
        let a = self.eval(lhs)?;
        let b = self.eval(rhs)?;
        Ok(IdentityVerdict {
            homology: a.homology == b.homology,
            punctures: a.punctures == b.punctures,
        })
    }
}

impl WordEval for Evaluator<'_> {
    fn chart(&self) -> &CurveChart {
        self.chart
    }

    fn eval(&self, w: &MappingWord) -> Result<RepImage, RepError> {
        self.word(w)
    }
}

/// Outcome of comparing two words, one flag per representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub homology: bool,
    pub punctures: bool,
}

impl IdentityVerdict {
    pub fn both(&self) -> bool {
        self.homology && self.punctures
    }
}

pub fn eval(chart: &CurveChart, w: &MappingWord) -> Result<RepImage, RepError> {
    Evaluator::new(chart).word(w)
}

pub fn check_identity(chart: &CurveChart, lhs: &MappingWord, rhs: &MappingWord) -> Result<IdentityVerdict, RepError> {
    WordEval::check_identity(&Evaluator::new(chart), lhs, rhs)
}
