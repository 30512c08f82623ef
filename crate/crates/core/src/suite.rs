//! The verification suite: a plan of independent checks, a runner for one
//! check, and report assembly.
//!
//! [`plan`] is pure, and [`run_check`] only needs a [`WordEval`], so the
//! std crate can run the plan on a worker pool with a shared memo table.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::certify::{alphabet_census, expected_census, Certificate, Certifier, TraceStep};
use crate::chart::{validate_chart, CurveChart, CurveFamily, CurveId, CurveImage, InvolutionName, TransportOp};
use crate::params::SurfaceParams;
use crate::perm::{factorial, lemma_generators, schreier_sims, Permutation};
use crate::rep::{derived_definition, Evaluator, WordEval};
use crate::word::{GeneratorSymbol, Letter, MappingWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    Homology,
    Punctures,
    Both,
    /// Checks that only read chart data or group orders.
    Data,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Homology => "homology",
            Representation::Punctures => "punctures",
            Representation::Both => "both",
            Representation::Data => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(&'static str),
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> String {
        match self {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "fail".into(),
            Verdict::Skipped(why) => format!("skipped ({why})"),
        }
    }

    pub fn is_fail(&self) -> bool {
        *self == Verdict::Fail
    }
}

/// What a planned check computes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckKind {
    /// Outcome known at planning time (chart validation lines, build errors).
    Fixed(bool),
    /// Not applicable for these parameters.
    Skip(&'static str),
    /// `lhs = rhs` in the listed representation(s).
    Identity { lhs: MappingWord, rhs: MappingWord },
    /// The image preserves the form and maps `δ_i` to `δ_{π(i)}`.
    Structural { word: MappingWord },
    /// The image permutes no puncture.
    Pure { word: MappingWord },
    /// The puncture image equals a permutation built independently.
    PunctureImage { word: MappingWord, expected: Permutation },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSpec {
    pub id: String,
    pub description: String,
    /// Short tag naming the fact a check echoes, or `plumbing`.
    pub anchor: &'static str,
    pub representation: Representation,
    pub definitional: bool,
    pub kind: CheckKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub anchor: &'static str,
    pub representation: Representation,
    pub verdict: Verdict,
    pub definitional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub symbols: BTreeSet<InvolutionName>,
    pub expected: BTreeSet<InvolutionName>,
    /// Size of the generating set for the mode (8 or 11).
    pub mode_count: usize,
}

impl CensusReport {
    pub fn holds(&self) -> bool {
        self.symbols == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiReport {
    /// Puncture images of `σ`, `τ`, `W`.
    pub images: Vec<(InvolutionName, Permutation)>,
    pub order: Option<u128>,
    pub expected_order: Option<u128>,
    /// `None` when `n ≤ 1`, where there is nothing to generate.
    pub surjective: Option<bool>,
}

impl PiReport {
    pub fn holds(&self) -> bool {
        self.surjective.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: SurfaceParams,
    pub checks: Vec<Check>,
    pub census: CensusReport,
    pub pi: PiReport,
    pub overall: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict.is_fail())
    }

    pub fn substantive_failures(&self) -> usize {
        self.failures().filter(|c| !c.definitional).count()
    }

    /// `(passed, total)` over non-skipped checks with the given flag.
    pub fn counts(&self, definitional: bool) -> (usize, usize) {
        let run = self
            .checks
            .iter()
            .filter(|c| c.definitional == definitional && !matches!(c.verdict, Verdict::Skipped(_)));
        run.fold((0, 0), |(p, t), c| (p + usize::from(c.verdict == Verdict::Pass), t + 1))
    }
}

fn symbol_word(sym: GeneratorSymbol, inverse: bool) -> MappingWord {
    let l = if inverse { Letter::inv(sym) } else { Letter::new(sym) };
    MappingWord::from_letters(vec![l])
}

/// Conjugate of a single symbol by a product of involutions.
fn conj_symbols(f: &[InvolutionName], sym: GeneratorSymbol) -> MappingWord {
    let fw = MappingWord::involutions(f);
    let mut w = fw.clone();
    w.push(Letter::new(sym));
    w.concat(&fw.inverse())
}

/// The generator attached to a curve, when conjugation laws for that curve
/// are testable: twists for two-sided curves, slides for `α`/`β`, and `y`
/// for `m`.
fn curve_generator(chart: &CurveChart, c: CurveId) -> Option<GeneratorSymbol> {
    match c.family {
        CurveFamily::Alpha => Some(GeneratorSymbol::SlideV(c.index)),
        CurveFamily::Beta => Some(GeneratorSymbol::SlideW(c.index)),
        CurveFamily::M => Some(GeneratorSymbol::CrosscapSlide),
        _ => {
            let rec = chart.curves.get(&c)?;
            (rec.sided == crate::chart::Sidedness::TwoSided).then_some(GeneratorSymbol::Twist(c))
        }
    }
}

/// The full check inventory for `chart`. `certs` is the certificate set
/// (or the error that stopped it).
pub fn plan(chart: &CurveChart, certs: &Result<Vec<Certificate>, String>) -> Vec<CheckSpec> {
    let p = chart.params;
    let mut out = Vec::new();
    let both = if p.n == 0 { Representation::Homology } else { Representation::Both };
    let mut spec = |id: String, description: String, anchor, representation, definitional, kind| {
        out.push(CheckSpec {
            id,
            description,
            anchor,
            representation,
            definitional,
            kind,
        })
    };

    for c in validate_chart(chart) {
        spec(
            format!("chart/{}", c.id),
            c.description,
            "plumbing",
            Representation::Data,
            false,
            CheckKind::Fixed(c.passed),
        );
    }

    for name in InvolutionName::alphabet(&p) {
        let s = GeneratorSymbol::Involution(name);
        if name.is_derived() && derived_definition(name, &p).is_none() {
            for what in ["involution", "structural"] {
                spec(
                    format!("{what}/{name}"),
                    format!("{name} needs a generator that does not exist for n = {}", p.n),
                    "involution",
                    Representation::Data,
                    false,
                    CheckKind::Skip("n=0"),
                );
            }
            continue;
        }
        spec(
            format!("involution/{name}"),
            format!("{name}^2 = 1"),
            "involution",
            both,
            !name.is_derived(),
            CheckKind::Identity {
                lhs: MappingWord::involutions(&[name, name]),
                rhs: MappingWord::empty(),
            },
        );
        spec(
            format!("structural/{name}"),
            format!("{name} preserves the form and is delta-consistent"),
            "structural",
            Representation::Homology,
            false,
            CheckKind::Structural {
                word: MappingWord::single(s),
            },
        );
    }

    // Conjugation law for each table entry: f g_c f⁻¹ = g_{f(c)}^ε.
    for (name, data) in &chart.involutions {
        if !InvolutionName::declared(&p).contains(name) {
            continue;
        }
        for e in &data.table {
            let CurveImage::Curve(image) = e.image else { continue };
            let (Some(src), Some(dst)) = (curve_generator(chart, e.curve), curve_generator(chart, image)) else {
                continue;
            };
            let definitional = matches!(name, InvolutionName::I | InvolutionName::J);
            spec(
                format!("conj/{name}/{}", e.curve),
                format!("{name} {src} {name} = {dst}^{}", e.eps.as_i8()),
                "conjugation law",
                both,
                definitional,
                CheckKind::Identity {
                    lhs: conj_symbols(&[*name], src),
                    rhs: symbol_word(dst, e.eps.is_minus()),
                },
            );
        }
    }
    for (op, entries) in &chart.transports {
        let f = op.letters();
        for e in entries {
            let CurveImage::Curve(image) = e.image else { continue };
            let (Some(src), Some(dst)) = (curve_generator(chart, e.curve), curve_generator(chart, image)) else {
                continue;
            };
            spec(
                format!("transport/{op}/{}", e.curve),
                format!("({op}) {src} ({op})^-1 = {dst}^{}", e.eps.as_i8()),
                "conjugation law",
                both,
                *op == TransportOp::JI,
                CheckKind::Identity {
                    lhs: conj_symbols(&f, src),
                    rhs: symbol_word(dst, e.eps.is_minus()),
                },
            );
        }
    }

    spec(
        "relation/y-square".into(),
        "y^2 = t[xi]".into(),
        "relation",
        Representation::Homology,
        true,
        CheckKind::Identity {
            lhs: MappingWord::parse("y y").expect("literal word"),
            rhs: MappingWord::single(GeneratorSymbol::Twist(CurveId::XI)),
        },
    );

    match certs {
        Err(msg) => spec(
            "cert/build".into(),
            format!("certificate construction failed: {msg}"),
            "certificate",
            Representation::Data,
            false,
            CheckKind::Fixed(false),
        ),
        Ok(certs) => {
            let mut steps: BTreeMap<GeneratorSymbol, &TraceStep> = BTreeMap::new();
            for c in certs {
                for s in &c.trace {
                    steps.entry(s.target).or_insert(s);
                }
            }
            for (target, s) in steps {
                let definitional = matches!(s.rule.id(), "R8") || matches!(target, GeneratorSymbol::Twist(c) if c.family == CurveFamily::D);
                let flag = if s.reconstructed { " [reconstructed]" } else { "" };
                spec(
                    format!("step/{}/{target}", s.rule),
                    format!("{}{flag}", s.substitution),
                    "recursion step",
                    both,
                    definitional,
                    CheckKind::Identity {
                        lhs: MappingWord::single(target),
                        rhs: s.rhs.clone(),
                    },
                );
            }
            for c in certs {
                let t = c.target;
                spec(
                    format!("cert/{t}"),
                    format!("{t} = {}", c.word),
                    "certificate",
                    both,
                    false,
                    CheckKind::Identity {
                        lhs: c.word.clone(),
                        rhs: MappingWord::single(t),
                    },
                );
                spec(
                    format!("structural/cert/{t}"),
                    format!("image of the {t} certificate preserves the form and is delta-consistent"),
                    "structural",
                    Representation::Homology,
                    false,
                    CheckKind::Structural { word: c.word.clone() },
                );
                spec(
                    format!("exact/{t}"),
                    format!("certificate of {t} fixes every puncture"),
                    "exactness",
                    Representation::Punctures,
                    false,
                    CheckKind::Pure { word: c.word.clone() },
                );
            }
        }
    }

    if p.n >= 1 {
        if let Ok(formulas) = lemma_generators(p.n, p.parity) {
            let names = [InvolutionName::Sigma, InvolutionName::Tau, InvolutionName::W];
            for (name, expected) in names.into_iter().zip(formulas) {
                spec(
                    format!("pi/{name}"),
                    format!("puncture image of {name} is {expected}"),
                    "puncture image",
                    Representation::Punctures,
                    false,
                    CheckKind::PunctureImage {
                        word: MappingWord::involutions(&[name]),
                        expected,
                    },
                );
            }
        }
    }
    out
}

/// Runs one planned check.
pub fn run_check<E: WordEval + ?Sized>(ev: &E, spec: &CheckSpec) -> Check {
    let chart = ev.chart();
    let skip_punctures = chart.params.n == 0 && spec.representation == Representation::Punctures;
    let verdict = if skip_punctures {
        Verdict::Skipped("n=0")
    } else {
        match &spec.kind {
            CheckKind::Fixed(ok) => Verdict::of(*ok),
            CheckKind::Skip(why) => Verdict::Skipped(why),
            CheckKind::Identity { lhs, rhs } => match ev.check_identity(lhs, rhs) {
                Ok(v) => Verdict::of(match spec.representation {
                    Representation::Homology => v.homology,
                    Representation::Punctures => v.punctures,
                    _ => v.both(),
                }),
                Err(_) => Verdict::Fail,
            },
            CheckKind::Structural { word } => {
                Verdict::of(ev.eval(word).is_ok_and(|img| img.preserves_form(chart) && img.delta_consistent(chart)))
            }
            CheckKind::Pure { word } => Verdict::of(ev.eval(word).is_ok_and(|img| img.punctures.is_identity())),
            CheckKind::PunctureImage { word, expected } => {
                Verdict::of(ev.eval(word).is_ok_and(|img| img.punctures == *expected))
            }
        }
    };
    Check {
        id: spec.id.clone(),
        description: spec.description.clone(),
        anchor: spec.anchor,
        representation: spec.representation,
        verdict,
        definitional: spec.definitional,
    }
}

/// Census of a certificate set against the expectation for `params`.
pub fn census(params: &SurfaceParams, certs: &[Certificate]) -> CensusReport {
    CensusReport {
        symbols: alphabet_census(certs),
        expected: expected_census(params),
        mode_count: params.involution_count(),
    }
}

/// Puncture images of `σ, τ, W` and whether they generate `Sym_n`.
pub fn pi_report<E: WordEval + ?Sized>(ev: &E) -> PiReport {
    let n = ev.chart().params.n;
    let images: Vec<(InvolutionName, Permutation)> = [InvolutionName::Sigma, InvolutionName::Tau, InvolutionName::W]
        .into_iter()
        .filter_map(|name| Some((name, ev.eval(&MappingWord::involutions(&[name])).ok()?.punctures)))
        .collect();
    if n <= 1 {
        return PiReport {
            images,
            order: Some(1),
            expected_order: Some(1),
            surjective: None,
        };
    }
    let gens: Vec<Permutation> = images.iter().map(|(_, p)| p.clone()).collect();
    let order = schreier_sims(n, &gens).ok().and_then(|b| b.order());
    let expected_order = factorial(n);
    PiReport {
        surjective: Some(images.len() == 3 && order.is_some() && order == expected_order),
        images,
        order,
        expected_order,
    }
}

/// Sorts checks by id and computes the overall verdict.
pub fn assemble(params: SurfaceParams, mut checks: Vec<Check>, census: CensusReport, pi: PiReport) -> VerificationReport {
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let overall = !checks.iter().any(|c| c.verdict.is_fail()) && census.holds() && pi.holds();
    VerificationReport {
        params,
        checks,
        census,
        pi,
        overall,
    }
}

/// Certificates for the chart, with the error rendered as text.
pub fn certificates(chart: &CurveChart) -> Result<Vec<Certificate>, String> {
    Certifier::new(chart).certify_all().map_err(|e| e.to_string())
}

/// Runs every check sequentially.
pub fn run_suite(chart: &CurveChart) -> VerificationReport {
    let certs = certificates(chart);
    let ev = Evaluator::new(chart);
    let checks = plan(chart, &certs).iter().map(|s| run_check(&ev, s)).collect();
    let census = census(&chart.params, certs.as_deref().unwrap_or(&[]));
    assemble(chart.params, checks, census, pi_report(&ev))
}

/// One row of the `Sym_n` sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymnRow {
    pub n: usize,
    pub parity: crate::params::Parity,
    /// Group generated by the lemma's three permutations is all of `Sym_n`.
    pub lemma_generated: bool,
    /// Same, for the puncture images of `σ, τ, W` from a default chart;
    /// `None` when no chart exists for this `n` (e.g. `n` was not
    /// constructible for the reference genus).
    pub chart_generated: Option<bool>,
}

/// Reference genus used for the chart variant of the sweep.
pub fn sweep_genus(parity: crate::params::Parity) -> usize {
    match parity {
        crate::params::Parity::Odd => 13,
        crate::params::Parity::Even => 16,
    }
}

/// For each `n ≤ max_n` and each parity compatible with `n`, whether the
/// three lemma permutations generate `Sym_n`, and whether the chart's
/// `σ, τ, W` do.
pub fn symn_sweep(max_n: usize) -> Vec<SymnRow> {
    use crate::params::Parity;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let parity = Parity::of(n);
        let lemma_generated = crate::perm::symn_generated(n, parity).unwrap_or(false);
        let chart_generated = SurfaceParams::new(sweep_genus(parity), n)
            .ok()
            .and_then(|p| crate::chart::default_chart(&p).ok())
            .map(|chart| pi_report(&Evaluator::new(&chart)).holds());
        rows.push(SymnRow {
            n,
            parity,
            lemma_generated,
            chart_generated,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{default_chart, Sign};

    fn chart(g: usize, n: usize) -> CurveChart {
        default_chart(&SurfaceParams::new(g, n).unwrap()).unwrap()
    }

    #[test]
    fn default_configurations_pass() {
        for (g, n) in [(13, 5), (13, 7), (15, 5), (16, 4), (16, 6)] {
            let report = run_suite(&chart(g, n));
            let failed: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
            assert!(report.overall, "({g},{n}) failures: {failed:?}");
            assert_eq!(report.census.symbols.len(), report.census.mode_count);
        }
    }

    #[test]
    fn check_ids_are_unique() {
        let report = run_suite(&chart(16, 6));
        let ids: BTreeSet<_> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), report.checks.len());
    }

    #[test]
    fn zero_punctures_skip_puncture_checks() {
        let report = run_suite(&chart(13, 0));
        let failed: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
        assert!(report.overall, "{failed:?}");
        assert!(report.checks.iter().any(|c| c.verdict == Verdict::Skipped("n=0")));
        assert_eq!(report.pi.surjective, None);
    }

    #[test]
    fn corrupted_sign_fails_the_suite() {
        let mut ch = chart(13, 5);
        let i = ch.involutions.get_mut(&InvolutionName::I).unwrap();
        i.table[0].eps = Sign::Plus;
        let report = run_suite(&ch);
        assert!(!report.overall);
        assert!(report.failures().count() >= 1);
    }

    #[test]
    fn sweep_matches_lemma() {
        let rows = symn_sweep(9);
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.lemma_generated));
        assert!(rows.iter().all(|r| r.chart_generated == Some(true)));
    }
}
