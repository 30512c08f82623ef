//! Structural and action checks for a chart.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{ActionEntry, CurveChart, CurveId, InvolutionName, Sidedness, Sign, TransportOp};
use crate::gf2::{Gf2Matrix, Gf2Vector, IntersectionForm};
use crate::params::SurfaceParams;

/// One pass/fail line of [`validate_chart`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintResult {
    pub id: String,
    pub description: String,
    pub passed: bool,
}

/// The conjugation facts the certificate schedule relies on, per involution.
pub fn stated_actions(p: &SurfaceParams) -> Vec<(InvolutionName, ActionEntry)> {
    use InvolutionName::*;
    let (r, k, n) = (p.r, p.k, p.n);
    let minus = Sign::Minus;
    let mut out = Vec::new();
    let mut add = |f, c, img, eps| out.push((f, ActionEntry::to_curve(c, img, eps)));

    add(Tau, CurveId::a(1), CurveId::a(1), minus);
    if n >= 1 {
        add(Tau, CurveId::alpha(1), CurveId::alpha(1), minus);
    }
    for (c, img) in [
        (CurveId::a(k + 3), CurveId::c(k + 1)),
        (CurveId::c(k + 1), CurveId::a(k + 3)),
        (CurveId::c(k), CurveId::b(k)),
        (CurveId::b(k), CurveId::c(k)),
        (CurveId::b(1), CurveId::d(1)),
        (CurveId::b(2), CurveId::d(2)),
        (CurveId::X, CurveId::X),
    ] {
        add(I, c, img, minus);
    }
    if n >= 2 {
        add(J, CurveId::N1, CurveId::e(1), minus);
    }
    add(W, CurveId::M, CurveId::M, minus);
    if p.is_even() {
        add(J, CurveId::b(r + 1), CurveId::b(r + 1), minus);
        add(J, CurveId::c(r), CurveId::c(r), minus);
        if n >= 1 {
            add(K, CurveId::alpha(1), CurveId::alpha(1), minus);
            add(Sigma, CurveId::alpha(1), CurveId::beta(n), Sign::Plus);
        }
    }
    out
}

/// Family shifts by products of two involutions.
pub fn stated_transports(p: &SurfaceParams) -> Vec<(TransportOp, ActionEntry)> {
    let (r, n) = (p.r, p.n);
    let plus = Sign::Plus;
    let mut out = Vec::new();
    let mut add = |op, c, img| out.push((op, ActionEntry::to_curve(c, img, plus)));
    for i in 1..r {
        add(TransportOp::TauSigma, CurveId::a(i), CurveId::a(i + 1));
    }
    for i in 1..p.b_max() {
        add(TransportOp::TauSigma, CurveId::b(i), CurveId::b(i + 1));
    }
    for i in 1..p.c_max() {
        add(TransportOp::TauSigma, CurveId::c(i), CurveId::c(i + 1));
    }
    for i in 1..n {
        add(TransportOp::TauSigma, CurveId::alpha(i), CurveId::alpha(i + 1));
    }
    if p.is_even() {
        for j in (2..=n).rev() {
            add(TransportOp::SigmaTau, CurveId::beta(j), CurveId::beta(j - 1));
        }
    }
    for i in 1..n.saturating_sub(1) {
        add(TransportOp::JI, CurveId::e(i), CurveId::e(i + 1));
    }
    out
}

struct Sink(Vec<ConstraintResult>);

impl Sink {
    fn push(&mut self, id: String, description: String, passed: bool) {
        self.0.push(ConstraintResult {
            id,
            description,
            passed,
        });
    }
}

fn apply(m: &Gf2Matrix, v: &Gf2Vector) -> Option<Gf2Vector> {
    m.mul_vec(v).ok()
}

/// Checks `chart` against its own parameters. Dimension problems show up
/// as failed lines, never as panics.
pub fn validate_chart(chart: &CurveChart) -> Vec<ConstraintResult> {
    let p = &chart.params;
    let dim = p.homology_dim();
    let mut out = Sink(Vec::new());

    out.push(
        "form/dimension".into(),
        format!("form has dimension g+n-1 = {dim}"),
        chart.form.dim() == dim && chart.form.crosscaps() == p.g,
    );
    out.push("form/symmetric".into(), "intersection form is symmetric".into(), chart.form.is_symmetric());
    out.push(
        "form/blocks".into(),
        "form is the identity on crosscaps and zero on puncture loops".into(),
        chart.form == IntersectionForm::standard(p.g, p.n),
    );
    if chart.form.dim() != dim {
        return out.0;
    }

    for id in super::required_curves(p) {
        let Some(rec) = chart.curves.get(&id) else {
            out.push(format!("curve/{id}/present"), format!("curve {id} is charted"), false);
            continue;
        };
        if rec.class.dim() != dim {
            out.push(format!("curve/{id}/dimension"), format!("class of {id} has dimension {dim}"), false);
            continue;
        }
        let one_sided = chart.form.pairing(&rec.class, &rec.class).unwrap_or(false);
        out.push(
            format!("curve/{id}/sidedness"),
            format!("{id} is declared {} and its self-pairing agrees", rec.sided.as_str()),
            one_sided == (rec.sided == Sidedness::OneSided),
        );
    }

    for name in InvolutionName::declared(p) {
        let Some(data) = chart.involutions.get(&name) else {
            out.push(format!("inv/{name}/present"), format!("{name} is declared"), false);
            continue;
        };
        let m = &data.matrix;
        if m.dim() != dim || data.perm.degree() != p.n {
            out.push(
                format!("inv/{name}/dimension"),
                format!("{name} acts on dimension {dim} and degree {}", p.n),
                false,
            );
            continue;
        }
        let square = m.compose(m).map(|s| s.is_identity()).unwrap_or(false);
        out.push(format!("inv/{name}/square"), format!("{name} squares to the identity"), square);
        out.push(
            format!("inv/{name}/invertible"),
            format!("{name} is invertible"),
            m.inverse().is_ok(),
        );
        out.push(
            format!("inv/{name}/form"),
            format!("{name} preserves the intersection form"),
            chart.form.preserves(m).unwrap_or(false),
        );
        let perm_square = data.perm.compose(&data.perm).map(|s| s.is_identity()).unwrap_or(false);
        out.push(
            format!("inv/{name}/perm-square"),
            format!("puncture action of {name} is an involution"),
            perm_square,
        );
        let deltas = (1..=p.n).all(|i| apply(m, &chart.delta(i)) == Some(chart.delta(data.perm.apply(i))));
        out.push(
            format!("inv/{name}/delta"),
            format!("{name} sends each puncture loop to the loop of its image puncture"),
            deltas,
        );
    }

    for (name, stated) in stated_actions(p) {
        let label = format!("{name}({}) = {}", stated.curve, stated.image_curve().expect("stated images are curves"));
        let id = format!("table/{name}/{}", stated.curve);
        let Some(data) = chart.involutions.get(&name) else {
            out.push(id, label, false);
            continue;
        };
        let declared = data.entry(stated.curve);
        let matches_fact = declared.is_some_and(|e| e.image == stated.image && e.eps == stated.eps);
        out.push(format!("{id}/declared"), format!("table records {label} with sign {}", stated.eps.as_i8()), matches_fact);
        let realized = declared.and_then(|e| {
            let from = chart.class(e.curve).ok()?;
            let to = chart.image_class(&e.image).ok()?;
            Some(apply(&data.matrix, from)? == to)
        });
        out.push(format!("{id}/homology"), format!("matrix of {name} realizes {label}"), realized == Some(true));
    }

    for (op, stated) in stated_transports(p) {
        let [f, g] = op.letters();
        let label = format!("{op}({}) = {}", stated.curve, stated.image_curve().expect("stated images are curves"));
        let id = format!("transport/{op}/{}", stated.curve);
        let declared = chart.transport_entry(op, stated.curve);
        let matches_fact = declared.is_some_and(|e| e.image == stated.image && e.eps == stated.eps);
        out.push(format!("{id}/declared"), format!("transport table records {label}"), matches_fact);
        let realized = (|| {
            let e = declared?;
            let mf = &chart.involutions.get(&f)?.matrix;
            let mg = &chart.involutions.get(&g)?.matrix;
            let from = chart.class(e.curve).ok()?;
            let to = chart.image_class(&e.image).ok()?;
            Some(apply(mf, &apply(mg, from)?)? == to)
        })();
        out.push(format!("{id}/homology"), format!("product {op} realizes {label}"), realized == Some(true));
    }

    let nt = &chart.nontwist;
    let w_expected = if p.is_even() { p.n } else { 0 };
    out.push(
        "nontwist/count".into(),
        format!("{} puncture slides v and {w_expected} slides w", p.n),
        nt.v.len() == p.n && nt.w.len() == w_expected,
    );
    let slides = core::iter::once(("y".into(), &nt.y))
        .chain(nt.v.iter().enumerate().map(|(i, m)| (format!("v{}", i + 1), m)))
        .chain(nt.w.iter().enumerate().map(|(i, m)| (format!("w{}", i + 1), m)));
    for (label, m) in slides {
        let ok_dim = m.dim() == dim;
        out.push(
            format!("nontwist/{label}/form"),
            format!("{label} preserves the intersection form"),
            ok_dim && chart.form.preserves(m).unwrap_or(false),
        );
        let fixes = ok_dim && (1..=p.n).all(|i| apply(m, &chart.delta(i)) == Some(chart.delta(i)));
        out.push(format!("nontwist/{label}/delta"), format!("{label} fixes every puncture loop"), fixes);
    }
    let y_square = (|| {
        let xi = chart.curves.get(&CurveId::XI)?;
        let t_xi = chart.form.transvection(&xi.class).ok()?;
        Some(nt.y.compose(&nt.y).ok()? == t_xi)
    })();
    out.push("nontwist/y-square".into(), "y squared equals the twist about xi".into(), y_square == Some(true));

    let binding = chart.class(CurveId::N1).ok().zip(chart.class(chart.n1_binding).ok());
    out.push(
        "binding/n1".into(),
        format!("n1 has the class of {}", chart.n1_binding),
        chart.n1_binding.in_lambda() && binding.is_some_and(|(a, b)| a == b),
    );

    let k = p.k;
    let cut = (|| {
        let mut sum = chart.class(CurveId::a(k + 3)).ok()?.clone();
        for c in [CurveId::b(k), CurveId::c(k), CurveId::c(k + 1)] {
            sum.add_assign(chart.class(c).ok()?).ok()?;
        }
        Some(&sum == chart.class(CurveId::X).ok()?)
    })();
    out.push(
        "relation/x".into(),
        format!("x bounds with a{}, b{k}, c{k}, c{}", k + 3, k + 1),
        cut == Some(true),
    );

    out.0
}
