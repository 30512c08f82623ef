//! The shipped chart reconstruction.
//!
//! Crosscaps `μ₁…μ_g` sit on a cycle (indices mod `g`). The mirrors of
//! `σ` and `τ` are the reflections `j ↦ 3-j` and `j ↦ 4-j`, so `τσ` is the
//! rotation `j ↦ j+1` and every family below is a translate of its first
//! member:
//!
//! * `a_i = μ_i + μ_{i+2}`, `b_i = μ_i + μ_{i+6}`, `c_i = μ_i + μ_{i+4}`,
//! * `α_i = μ_{i+1}` and, in even genus, `β_j = μ_{j+1-n}`.
//!
//! `I` is a product of four commuting transvections, one per stated curve
//! swap; the two for `b₁ ↦ d₁`, `b₂ ↦ d₂` are solved for by linear algebra
//! so that they commute with everything else `I` must do. `J` shares the
//! `b₁ ↔ d₁` transvection and adds a shear onto `δ₁`, which is what lets
//! `T = JI` walk `e_i = d₁ + δ₁ + … + δ_i` along the punctures.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    delta_class, stated_actions, stated_transports, validate_chart, ActionEntry, ChartError, CurveChart, CurveId, CurveRecord, InvolutionData,
    InvolutionName, NontwistData, Sidedness, TransportOp,
};
use crate::gf2::{solve_linear, Gf2Matrix, Gf2Vector, IntersectionForm};
use crate::params::SurfaceParams;
use crate::perm::Permutation;

struct Builder<'a> {
    p: &'a SurfaceParams,
    dim: usize,
    form: IntersectionForm,
}

impl Builder<'_> {
    fn mu(&self, j: isize) -> usize {
        (j - 1).rem_euclid(self.p.g as isize) as usize
    }

    fn crosscaps(&self, js: &[isize]) -> Gf2Vector {
        Gf2Vector::from_indices(self.dim, js.iter().map(|&j| self.mu(j)))
    }

    fn a(&self, i: usize) -> Gf2Vector {
        let i = i as isize;
        self.crosscaps(&[i, i + 2])
    }

    fn b(&self, i: usize) -> Gf2Vector {
        let i = i as isize;
        self.crosscaps(&[i, i + 6])
    }

    fn c(&self, i: usize) -> Gf2Vector {
        let i = i as isize;
        self.crosscaps(&[i, i + 4])
    }

    fn d_tail(&self, i: usize) -> Gf2Vector {
        let i = i as isize;
        self.crosscaps(&[i, i + 8])
    }

    fn alpha(&self, i: usize) -> Gf2Vector {
        self.crosscaps(&[i as isize + 1])
    }

    fn beta(&self, j: usize) -> Gf2Vector {
        self.crosscaps(&[j as isize + 1 - self.p.n as isize])
    }

    fn delta(&self, i: usize) -> Gf2Vector {
        delta_class(self.p, i)
    }

    /// The map sending `μ_j ↦ μ_{crosscap(j)}` and `δ_i ↦ δ_{punctures(i)}`.
    fn block(&self, crosscap: impl Fn(isize) -> isize, punctures: &Permutation) -> Result<Gf2Matrix, ChartError> {
        let mut columns = Vec::with_capacity(self.dim);
        for j in 1..=self.p.g as isize {
            columns.push(self.crosscaps(&[crosscap(j)]));
        }
        for i in 1..self.p.n {
            columns.push(self.delta(punctures.apply(i)));
        }
        Ok(Gf2Matrix::from_columns(&columns)?)
    }

    /// Solves for a crosscap-supported two-sided `v` with prescribed pairings.
    fn solve(&self, pairings: &[(&Gf2Vector, bool)]) -> Result<Gf2Vector, ChartError> {
        let mut eqs: Vec<(Gf2Vector, bool)> = Vec::new();
        eqs.push((Gf2Vector::from_indices(self.dim, 0..self.p.g), false));
        for i in self.p.g..self.dim {
            eqs.push((Gf2Vector::unit(self.dim, i), false));
        }
        for (x, rhs) in pairings {
            eqs.push((self.form.functional(x)?, *rhs));
        }
        solve_linear(self.dim, &eqs)?.ok_or(ChartError::Construction("no transvection vector satisfies the pairing constraints"))
    }
}

fn perm(n: usize, f: impl Fn(usize) -> usize) -> Result<Permutation, ChartError> {
    Permutation::from_fn(n, f).map_err(|_| ChartError::Construction("puncture map is not a bijection"))
}

/// Builds the default chart for `p` and checks it with [`validate_chart`].
pub fn default_chart(p: &SurfaceParams) -> Result<CurveChart, ChartError> {
    let chart = build(p)?;
    if validate_chart(&chart).iter().all(|c| c.passed) {
        Ok(chart)
    } else {
        Err(ChartError::Construction("default chart failed validation"))
    }
}

pub(crate) fn build(p: &SurfaceParams) -> Result<CurveChart, ChartError> {
    let b = Builder {
        p,
        dim: p.homology_dim(),
        form: IntersectionForm::standard(p.g, p.n),
    };
    let (r, k, n) = (p.r, p.k, p.n);

    let mut curves: BTreeMap<CurveId, CurveRecord> = BTreeMap::new();
    let mut put = |id: CurveId, class: Gf2Vector, sided: Sidedness| {
        curves.insert(id, CurveRecord { class, sided });
    };
    let two = Sidedness::TwoSided;
    let one = Sidedness::OneSided;

    for i in 1..=r {
        put(CurveId::a(i), b.a(i), two);
    }
    for i in 1..=p.b_max() {
        put(CurveId::b(i), b.b(i), two);
    }
    for i in 1..=p.c_max() {
        put(CurveId::c(i), b.c(i), two);
    }

    // Puncture actions.
    let reversal = perm(n, |i| n + 1 - i)?;
    let fix_first = perm(n, |i| if i == 1 { 1 } else { n + 2 - i })?;
    let fix_ends = perm(n, |i| if i == 1 || i == n { i } else { n + 1 - i })?;

    // I swaps a_{k+3} <-> c_{k+1} and c_k <-> b_k along v1, v2 and moves b1,
    // b2 with two further transvections orthogonal to everything near the
    // cut. J reuses u = b1 + I(b1), so u must also miss the curves J fixes.
    let dot = |x: &Gf2Vector, y: &Gf2Vector| b.form.pairing(x, y);
    let swap_ac = b.a(k + 3).add(&b.c(k + 1))?;
    let swap_cb = b.c(k).add(&b.b(k))?;
    let mut fixed_by_j: Vec<Gf2Vector> = Vec::new();
    if p.is_even() {
        fixed_by_j.push(b.b(r + 1));
        fixed_by_j.push(b.c(r));
    }
    let near_cut = [b.a(k + 3), b.c(k + 1), b.c(k), b.b(k)];
    let b1 = b.b(1);
    let b2 = b.b(2);
    // w: the part of I(b1) - b1 already forced by v1, v2.
    let mut w = Gf2Vector::zeros(b.dim);
    for v in [&swap_ac, &swap_cb] {
        if dot(&b1, v)? {
            w.add_assign(v)?;
        }
    }
    let carry = dot(&b1, &swap_ac)? ^ dot(&b1, &swap_cb)?;

    let mut eqs: Vec<(&Gf2Vector, bool)> = near_cut.iter().map(|x| (x, false)).collect();
    eqs.push((&b1, true));
    eqs.push((&b2, false));
    for y in &fixed_by_j {
        eqs.push((y, dot(&w, y)?));
    }
    let extra1 = b.solve(&eqs)?;

    let mut eqs: Vec<(&Gf2Vector, bool)> = near_cut.iter().map(|x| (x, false)).collect();
    eqs.push((&b1, carry));
    eqs.push((&b2, true));
    eqs.push((&extra1, false));
    eqs.extend(fixed_by_j.iter().map(|y| (y, false)));
    let extra2 = b.solve(&eqs)?;

    let mut i_matrix = b.block(|j| j, &reversal)?;
    for v in [&swap_ac, &swap_cb, &extra1, &extra2] {
        i_matrix = b.form.transvection(v)?.compose(&i_matrix)?;
    }
    let d1 = i_matrix.mul_vec(&b1)?;
    let d2 = i_matrix.mul_vec(&b2)?;
    let j_axis = b1.add(&d1)?;
    put(CurveId::d(1), d1.clone(), two);
    put(CurveId::d(2), d2, two);
    for i in 3..=r {
        put(CurveId::d(i), b.d_tail(i), two);
    }

    let mut running = d1.clone();
    for i in 1..n {
        running.add_assign(&Gf2Vector::unit(b.dim, p.g + i - 1))?;
        put(CurveId::e(i), running.clone(), two);
    }
    for i in 1..=n {
        put(CurveId::alpha(i), b.alpha(i), one);
    }
    if p.is_even() {
        for j in 1..=n {
            put(CurveId::beta(j), b.beta(j), one);
        }
    }
    put(CurveId::XI, Gf2Vector::zeros(b.dim), two);
    put(CurveId::M, b.crosscaps(&[p.g as isize]), one);
    let mut cut = b.a(k + 3);
    for extra in [b.b(k), b.c(k), b.c(k + 1)] {
        cut.add_assign(&extra)?;
    }
    put(CurveId::X, cut, two);
    let n1_binding = CurveId::b(1);
    put(CurveId::N1, b1.clone(), two);

    let mut involutions = BTreeMap::new();

    let sigma = b.block(|j| 3 - j, &reversal)?;
    involutions.insert(
        InvolutionName::Sigma,
        InvolutionData {
            matrix: sigma,
            perm: reversal.clone(),
            table: Vec::new(),
        },
    );

    let tau = b.block(|j| 4 - j, &fix_first)?;
    involutions.insert(
        InvolutionName::Tau,
        InvolutionData {
            matrix: tau,
            perm: fix_first.clone(),
            table: Vec::new(),
        },
    );

    involutions.insert(
        InvolutionName::I,
        InvolutionData {
            matrix: i_matrix,
            perm: reversal.clone(),
            table: Vec::new(),
        },
    );

    // J: transvection b1 <-> d1, then a shear x ↦ x + ⟨x,z⟩δ₁ with z fixed
    // by that transvection and ⟨b1, z⟩ = 1.
    let mut z_eqs: Vec<(Gf2Vector, bool)> = vec![
        (b.form.functional(&b1)?, true),
        (b.form.functional(&j_axis)?, false),
    ];
    for x in &fixed_by_j {
        z_eqs.push((b.form.functional(x)?, false));
    }
    for i in p.g..b.dim {
        z_eqs.push((Gf2Vector::unit(b.dim, i), false));
    }
    let z = solve_linear(b.dim, &z_eqs)?.ok_or(ChartError::Construction("no shear direction for J"))?;
    let mut j_matrix = b.form.transvection(&j_axis)?.compose(&b.block(|j| j, &fix_first)?)?;
    if n >= 2 {
        j_matrix = b.form.shear(&z, &b.delta(1))?.compose(&j_matrix)?;
    }
    involutions.insert(
        InvolutionName::J,
        InvolutionData {
            matrix: j_matrix,
            perm: fix_first.clone(),
            table: Vec::new(),
        },
    );

    let g = p.g as isize;
    let w_matrix = b
        .form
        .transvection(&b.crosscaps(&[g - 2, g - 1]))?
        .compose(&b.block(|j| j, &fix_ends)?)?;
    involutions.insert(
        InvolutionName::W,
        InvolutionData {
            matrix: w_matrix,
            perm: fix_ends,
            table: Vec::new(),
        },
    );

    if p.is_even() {
        let identity = Permutation::identity(n);
        let k_matrix = b
            .form
            .transvection(&b.crosscaps(&[g - 4, g - 3]))?
            .compose(&b.block(|j| j, &identity)?)?;
        involutions.insert(
            InvolutionName::K,
            InvolutionData {
                matrix: k_matrix,
                perm: identity,
                table: Vec::new(),
            },
        );
    }

    for (name, entry) in stated_actions(p) {
        if let Some(data) = involutions.get_mut(&name) {
            data.table.push(entry);
        }
    }
    let mut transports: BTreeMap<TransportOp, Vec<ActionEntry>> = BTreeMap::new();
    for (op, entry) in stated_transports(p) {
        transports.entry(op).or_default().push(entry);
    }

    // Puncture slides: x ↦ x + ⟨x, α_i⟩ δ_i. The crosscap slide acts
    // trivially on mod-2 homology.
    let v = (1..=n)
        .map(|i| b.form.shear(&b.alpha(i), &b.delta(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let w = if p.is_even() {
        (1..=n)
            .map(|j| b.form.shear(&b.beta(j), &b.delta(j)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let nontwist = NontwistData {
        y: Gf2Matrix::identity(b.dim),
        v,
        w,
    };

    Ok(CurveChart {
        params: *p,
        form: b.form,
        curves,
        involutions,
        transports,
        nontwist,
        n1_binding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::reduced_lambda;
    use alloc::collections::BTreeSet;

    #[test]
    fn reduced_twist_classes_are_distinct_and_nonzero() {
        for (g, n) in [(13, 5), (13, 7), (15, 5), (16, 4), (16, 6), (17, 3), (20, 2), (25, 9)] {
            let p = SurfaceParams::new(g, n).unwrap();
            let chart = default_chart(&p).unwrap();
            let classes: Vec<_> = reduced_lambda(&p).into_iter().map(|c| chart.class(c).unwrap().to_bits()).collect();
            let unique: BTreeSet<_> = classes.iter().cloned().collect();
            assert_eq!(unique.len(), classes.len(), "({g},{n})");
            assert!(reduced_lambda(&p).iter().all(|c| !chart.class(*c).unwrap().is_zero()));
        }
    }

    #[test]
    fn tau_sigma_is_the_rotation() {
        let p = SurfaceParams::new(13, 5).unwrap();
        let chart = default_chart(&p).unwrap();
        let ts = chart.involutions[&InvolutionName::Tau]
            .matrix
            .compose(&chart.involutions[&InvolutionName::Sigma].matrix)
            .unwrap();
        for j in 0..13 {
            assert_eq!(ts.mul_vec(&Gf2Vector::unit(17, j)).unwrap(), Gf2Vector::unit(17, (j + 1) % 13));
        }
    }
}
