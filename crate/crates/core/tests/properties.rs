use proptest::prelude::*;

use hgf_core::algebra::matrix::ExactMatrix;
use hgf_core::algebra::poly::{Monomial, MultiPoly, Vars};
use hgf_core::algebra::ratfunc::RatFunc;
use hgf_core::algebra::rational::{int, rat, ExactScalar};
use hgf_core::algebra::series::{series_log, TruncSeries};
use hgf_core::charvar::{charvar_trivial, degenerate_point, outer, symbol_residual, SymbolPoint};
use hgf_core::form::DifferentialForm;
use hgf_core::partition::{sample_stratum_point, Partition, StratumMatrix};
use hgf_core::report::{h1_report, sample_report};
use hgf_core::schur::{schur_by_tableaux, schur_routes_agree, YoungShape};
use hgf_core::theta::{CharacterParams, Mode};

fn poly(vars: &Vars, coeffs: &[(Vec<u32>, i64)]) -> MultiPoly {
    MultiPoly::from_terms(vars, coeffs.iter().map(|(e, c)| (Monomial(e.iter().copied().collect()), int(*c))))
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..5), 0..4)
}

fn one_form(vars: &Vars, c: &[Vec<(Vec<u32>, i64)>]) -> DifferentialForm {
    DifferentialForm::one_form(vars, c.iter().map(|p| RatFunc::from_poly(poly(vars, p))).collect())
}

fn one_form_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
    prop::collection::vec(poly_strategy(n), n)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn lambda_strategy() -> impl Strategy<Value = Partition> {
    prop::sample::select(vec![
        vec![1, 1, 1],
        vec![2, 1],
        vec![3],
        vec![1, 1, 1, 1],
        vec![2, 1, 1],
        vec![2, 2],
        vec![3, 1],
        vec![4],
        vec![2, 1, 1, 1],
    ])
    .prop_map(|p| Partition::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetrize_idempotent_and_invariant(n in 1usize..4, a in one_form_strategy(3), b in one_form_strategy(3)) {
        let vars = Vars::indexed("x", n);
        let cut = |c: Vec<Vec<(Vec<u32>, i64)>>| -> Vec<Vec<(Vec<u32>, i64)>> {
            c.into_iter().take(n).map(|p| p.into_iter().map(|(e, k)| (e[..n].to_vec(), k)).collect()).collect()
        };
        let (a, b) = (cut(a), cut(b));
        for f in [one_form(&vars, &a), one_form(&vars, &a).wedge(&one_form(&vars, &b))] {
            let s = f.symmetrize();
            prop_assert_eq!(s.symmetrize(), s.clone());
            for p in permutations(n) {
                prop_assert_eq!(s.permute(&p), s.clone());
            }
        }
    }

    #[test]
    fn wedge_alternating_and_bilinear(a in one_form_strategy(3), b in one_form_strategy(3), c in one_form_strategy(3), k in -3i64..4) {
        let v = Vars::indexed("x", 3);
        let (a, b, c) = (one_form(&v, &a), one_form(&v, &b), one_form(&v, &c));
        prop_assert!(a.wedge(&a).is_zero());
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        let lhs = a.scale(&int(k)).add(&c).wedge(&b);
        let rhs = a.wedge(&b).scale(&int(k)).add(&c.wedge(&b));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn schur_symmetric_and_routes_agree(rows in prop::collection::vec(0usize..4, 0..4), r in 1usize..4) {
        let mut rows = rows;
        rows.sort_unstable_by(|x, y| y.cmp(x));
        let mu = YoungShape::new(rows).unwrap();
        let x = Vars::indexed("x", 3);
        let s = schur_by_tableaux(&mu, &x);
        for p in permutations(3) {
            prop_assert_eq!(s.permute_vars(&p), s.clone());
        }
        if mu.len() <= r {
            prop_assert!(schur_routes_agree(&mu, r));
        }
    }

    #[test]
    fn series_log_turns_products_into_sums(
        s in prop::collection::vec(-5i64..6, 1..6),
        t in prop::collection::vec(-5i64..6, 1..6),
        s0 in 1i64..5,
        t0 in -4i64..0,
    ) {
        let n = s.len().min(t.len());
        let mk = |c0: i64, rest: &[i64]| {
            let mut v = vec![int(c0)];
            v.extend(rest[..n - 1].iter().map(|&c| rat(c, 3)));
            TruncSeries::new(v)
        };
        let (s, t) = (mk(s0, &s[1..]), mk(t0, &t[1..]));
        let (ls, lt, lst) = (series_log(&s).unwrap(), series_log(&t).unwrap(), series_log(&s.mul(&t)).unwrap());
        prop_assert_eq!(&lst.log_slot, &(&ls.log_slot * &lt.log_slot));
        for i in 0..n - 1 {
            prop_assert_eq!(&lst.theta[i], &(&ls.theta[i] + &lt.theta[i]));
        }
    }

    #[test]
    fn report_json_is_deterministic(lambda in lambda_strategy(), seed in 0u64..1000) {
        let z = sample_stratum_point(&lambda, 1, seed, 5).unwrap();
        let p = CharacterParams::sample(&lambda, 1, Mode::Cohomology, seed).unwrap();
        let a = h1_report(&z, &p, 2).unwrap().to_pretty();
        let b = h1_report(&z.clone(), &p.clone(), 2).unwrap().to_pretty();
        prop_assert_eq!(a, b);
        prop_assert_eq!(sample_report(&z, seed, 5).to_pretty(), sample_report(&z, seed, 5).to_pretty());
    }

    #[test]
    fn json_round_trips(lambda in lambda_strategy(), r in 1usize..3, seed in 0u64..1000, integral in any::<bool>()) {
        prop_assume!(r + 1 < lambda.total());
        let z = sample_stratum_point(&lambda, r, seed, 7).unwrap();
        prop_assert_eq!(StratumMatrix::from_json(&z.to_json()).unwrap(), z);
        let mode = if integral { Mode::Integral } else { Mode::Cohomology };
        let p = CharacterParams::sample(&lambda, r, mode, seed).unwrap();
        prop_assert_eq!(CharacterParams::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn degenerate_witnesses_are_sound(lambda in lambda_strategy(), r in 1usize..3, seed in 0u64..1000) {
        prop_assume!(r + 1 < lambda.total());
        let z = degenerate_point(&lambda, r, seed, 5).unwrap();
        let v = charvar_trivial(&z);
        prop_assert!(!v.trivial);
        let w = v.witness.expect("nontrivial verdicts carry a witness");
        prop_assert!(!w.xi.is_zero());
        prop_assert!(symbol_residual(&w).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rank_one_symbols_off_zero_section_are_violated(
        lambda in lambda_strategy(),
        r in 1usize..3,
        seed in 0u64..10_000,
        a in prop::collection::vec(-2i64..3, 3),
        b in prop::collection::vec(-2i64..3, 5),
    ) {
        prop_assume!(r + 1 < lambda.total());
        let z = sample_stratum_point(&lambda, r, seed, 5).unwrap();
        prop_assert!(charvar_trivial(&z).trivial);
        let a: Vec<ExactScalar> = a[..=r].iter().map(|&x| int(x)).collect();
        let b: Vec<ExactScalar> = b[..lambda.total()].iter().map(|&x| int(x)).collect();
        let xi = outer(&a, &b);
        let residual = symbol_residual(&SymbolPoint { z, xi: xi.clone() });
        prop_assert_eq!(residual.is_empty(), xi.is_zero());
    }
}

#[test]
fn zero_symbol_has_empty_residual() {
    let z = sample_stratum_point(&Partition::new(vec![2, 1, 1]).unwrap(), 1, 3, 5).unwrap();
    let xi = ExactMatrix::zeros(2, 4);
    assert!(symbol_residual(&SymbolPoint { z, xi }).is_empty());
}
