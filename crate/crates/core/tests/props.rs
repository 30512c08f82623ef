use mcgcert_core::chart::{default_chart, CurveChart, InvolutionName};
use mcgcert_core::gf2::{solve_linear, Gf2Matrix, Gf2Vector, IntersectionForm};
use mcgcert_core::params::SurfaceParams;
use mcgcert_core::perm::Permutation;
use mcgcert_core::rep::Evaluator;
use mcgcert_core::word::{conjugate, free_reduce, GeneratorSymbol, Letter, MappingWord};
use proptest::prelude::*;
use std::sync::OnceLock;

fn chart() -> &'static CurveChart {
    static CHART: OnceLock<CurveChart> = OnceLock::new();
    CHART.get_or_init(|| default_chart(&SurfaceParams::new(16, 4).unwrap()).unwrap())
}

fn vector(dim: usize) -> impl Strategy<Value = Gf2Vector> {
    proptest::collection::vec(any::<bool>(), dim).prop_map(move |bits| {
        Gf2Vector::from_indices(dim, bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    })
}

fn symbol() -> impl Strategy<Value = GeneratorSymbol> {
    let p = chart().params;
    let curves: Vec<_> = chart()
        .curves
        .iter()
        .filter(|(_, r)| r.sided == mcgcert_core::chart::Sidedness::TwoSided)
        .map(|(c, _)| GeneratorSymbol::Twist(*c))
        .collect();
    let mut all = curves;
    all.push(GeneratorSymbol::CrosscapSlide);
    all.extend((1..=p.n).map(GeneratorSymbol::SlideV));
    all.extend((1..=p.n).map(GeneratorSymbol::SlideW));
    all.extend(InvolutionName::alphabet(&p).into_iter().map(GeneratorSymbol::Involution));
    proptest::sample::select(all)
}

fn word(max: usize) -> impl Strategy<Value = MappingWord> {
    proptest::collection::vec((symbol(), any::<bool>()), 0..max).prop_map(|ls| {
        MappingWord::from_letters(ls.into_iter().map(|(s, inv)| Letter { symbol: s, inverse: inv }).collect())
    })
}

fn involution_word(max: usize) -> impl Strategy<Value = MappingWord> {
    let names = InvolutionName::alphabet(&chart().params);
    proptest::collection::vec(proptest::sample::select(names), 0..max).prop_map(|ns| MappingWord::involutions(&ns))
}

proptest! {
    #[test]
    fn dot_is_bilinear(a in vector(70), b in vector(70), c in vector(70)) {
        let lhs = a.add(&b).unwrap().dot(&c).unwrap();
        prop_assert_eq!(lhs, a.dot(&c).unwrap() ^ b.dot(&c).unwrap());
    }

    #[test]
    fn transvections_preserve_the_form(c in vector(19)) {
        let form = IntersectionForm::standard(16, 4);
        match form.transvection(&c) {
            Ok(t) => {
                prop_assert!(form.preserves(&t).unwrap());
                prop_assert!(t.compose(&t).unwrap().is_identity());
            }
            Err(_) => prop_assert!(form.pairing(&c, &c).unwrap()),
        }
    }

    #[test]
    fn inverse_of_product_of_transvections(cs in proptest::collection::vec(vector(13), 1..6)) {
        let form = IntersectionForm::standard(13, 1);
        let mut m = Gf2Matrix::identity(13);
        for c in cs.iter().filter(|c| !form.pairing(c, c).unwrap()) {
            m = m.compose(&form.transvection(c).unwrap()).unwrap();
        }
        prop_assert!(m.compose(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn solutions_satisfy_equations(eqs in proptest::collection::vec((vector(12), any::<bool>()), 0..10)) {
        if let Some(x) = solve_linear(12, &eqs).unwrap() {
            for (a, rhs) in &eqs {
                prop_assert_eq!(a.dot(&x).unwrap(), *rhs);
            }
        }
    }

    #[test]
    fn bits_round_trip(v in vector(37)) {
        prop_assert_eq!(Gf2Vector::parse_bits(&v.to_bits()).unwrap(), v);
    }

    #[test]
    fn cycle_notation_round_trips(images in Just((1..=9).collect::<Vec<usize>>()).prop_shuffle()) {
        let p = Permutation::from_images(&images).unwrap();
        let q = Permutation::parse_cycles(&p.to_cycle_string(), 9).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn free_reduce_is_idempotent_and_shortens(w in word(12)) {
        let r = free_reduce(&w);
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(free_reduce(&r), r.clone());
        let ev = Evaluator::new(chart());
        prop_assert_eq!(ev.word(&r).unwrap(), ev.word(&w).unwrap());
    }

    #[test]
    fn words_parse_back(w in word(10)) {
        prop_assert_eq!(MappingWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn eval_is_multiplicative(u in word(8), v in word(8)) {
        let ev = Evaluator::new(chart());
        let uv = ev.word(&u.concat(&v)).unwrap();
        prop_assert_eq!(uv, ev.word(&u).unwrap().compose(&ev.word(&v).unwrap()).unwrap());
    }

    #[test]
    fn eval_respects_inverses(w in word(10)) {
        let ev = Evaluator::new(chart());
        prop_assert_eq!(ev.word(&w.inverse()).unwrap(), ev.word(&w).unwrap().inverse().unwrap());
        prop_assert!(ev.word(&w.concat(&w.inverse())).unwrap().is_identity());
    }

    #[test]
    fn images_preserve_form_and_deltas(w in word(12)) {
        let ev = Evaluator::new(chart());
        let img = ev.word(&w).unwrap();
        prop_assert!(img.preserves_form(chart()));
        prop_assert!(img.delta_consistent(chart()));
    }

    #[test]
    fn double_conjugation_by_an_involution_is_trivial(f in involution_word(4), w in word(6)) {
        let ev = Evaluator::new(chart());
        let fw = ev.word(&f).unwrap();
        if fw.compose(&fw).unwrap().is_identity() {
            let twice = conjugate(&f, &conjugate(&f, &w));
            prop_assert_eq!(ev.word(&twice).unwrap(), ev.word(&w).unwrap());
        }
    }
}
