mod common;

use lindisc_core::reduction::{decompose_norm, pi2_soundness_check};
use lindisc_core::solver::box_upper_bound;
use lindisc_core::{
    adversary_point, build_np_matrix, build_pi2_matrix, certify_upper, completeness_witness, eval_nae,
    extract_assignment, grid_oracle, lindisc_at, lindisc_global, lipschitz_constant, parse_formula, round_gadget,
    solve_forall_exists, solve_nae, Assignment, BlockView, Certificate, Clause, ForallExists, Literal, NaeFormula,
    QuantifiedNaeFormula, RMatrix, RVector, Rational, Sign,
};
use proptest::prelude::*;

use common::{assemble_np, assemble_pi2, naive_lindisc_at};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=30).prop_map(|(p, q)| Rational::frac(p, q))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=24).prop_flat_map(|q| (0..=q).prop_map(move |p| Rational::frac(p, q)))
}

fn unit_vector(dim: usize) -> impl Strategy<Value = RVector> {
    prop::collection::vec(unit_rational(), dim).prop_map(RVector::new)
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::sample::select(vec!["-1", "0", "1", "1/3", "-2/3", "1/2"]), r * c)
            .prop_map(move |cells| RMatrix::from_fn(r, c, |i, j| cells[i * c + j].parse().unwrap()))
    })
}

fn formula(max_n: usize, max_m: usize) -> impl Strategy<Value = NaeFormula> {
    (1..=max_n).prop_flat_map(move |n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(var, negated)| Literal { var, negated });
        prop::collection::vec([lit.clone(), lit.clone(), lit].prop_map(Clause), 0..=max_m)
            .prop_map(move |cs| NaeFormula::new(n, cs).unwrap())
    })
}

fn quantified(max_n: usize, max_m: usize) -> impl Strategy<Value = QuantifiedNaeFormula> {
    formula(max_n, max_m).prop_flat_map(|f| {
        let n = f.num_vars();
        (0..=n.min(2)).prop_map(move |np| QuantifiedNaeFormula::new(np, f.clone()).unwrap())
    })
}

/// A formula together with an assignment that NAE-satisfies it.
fn satisfiable(max_n: usize, max_m: usize) -> impl Strategy<Value = (NaeFormula, Assignment)> {
    formula(max_n, max_m).prop_filter_map("unsatisfiable", |f| solve_nae(&f).unwrap().map(|psi| (f, psi)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rational_add_then_sub_is_identity(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn rational_is_canonical(p in -50i64..50, q in 1i64..50, k in 1i64..20) {
        let x = Rational::new(p * k, q * k).unwrap();
        prop_assert_eq!(&x, &Rational::frac(p, q));
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn inf_norm_is_symmetric(v in prop::collection::vec(rational(), 1..8)) {
        let v = RVector::new(v);
        let neg = v.scale(&Rational::int(-1));
        prop_assert_eq!(v.inf_norm().unwrap(), neg.inf_norm().unwrap());
        prop_assert_eq!(v.inf_norm().unwrap().is_zero(), v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn mat_vec_distributes(a in matrix(5, 5), seed in any::<u64>()) {
        let c = a.cols();
        let pick = |s: u64| RVector::new((0..c).map(|j| Rational::frac(((s >> (j * 3)) & 7) as i64 - 3, 4)).collect());
        let (v, w) = (pick(seed), pick(seed.rotate_left(29)));
        let lhs = a.mat_vec_mul(&v.checked_add(&w).unwrap()).unwrap();
        let rhs = a.mat_vec_mul(&v).unwrap().checked_add(&a.mat_vec_mul(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nae_is_complement_invariant(f in formula(5, 6), code in any::<u64>()) {
        let psi = Assignment::from_code(code & ((1 << f.num_vars()) - 1), f.num_vars());
        prop_assert_eq!(eval_nae(&f, &psi).unwrap(), eval_nae(&f, &psi.complement()).unwrap());
    }

    #[test]
    fn dimacs_round_trips(qf in quantified(5, 6)) {
        prop_assert_eq!(parse_formula(&qf.to_dimacs()).unwrap(), qf);
    }

    #[test]
    fn solve_nae_agrees_with_enumeration(f in formula(5, 6)) {
        let n = f.num_vars();
        let first = (0..1u64 << n).map(|c| Assignment::from_code(c, n)).find(|p| eval_nae(&f, p).unwrap());
        prop_assert_eq!(solve_nae(&f).unwrap(), first);
    }

    #[test]
    fn forall_exists_verdicts_are_checkable(qf in quantified(4, 5)) {
        let (na, ne) = (qf.n_universal(), qf.num_vars() - qf.n_universal());
        let completes = |a: &Assignment| {
            (0..1u64 << ne).any(|c| eval_nae(qf.formula(), &a.concat(&Assignment::from_code(c, ne))).unwrap())
        };
        match solve_forall_exists(&qf).unwrap() {
            ForallExists::Yes { table } => {
                prop_assert_eq!(table.len(), 1 << na);
                for code in 0..1u64 << na {
                    let a = Assignment::from_code(code, na);
                    let e = ForallExists::Yes { table: table.clone() }.witness_for(&a).cloned().unwrap();
                    prop_assert!(eval_nae(qf.formula(), &a.concat(&e)).unwrap());
                }
            }
            ForallExists::No { counterexample } => prop_assert!(!completes(&counterexample)),
        }
    }

    #[test]
    fn gadget_sign_flip_is_complement(u in [unit_rational(), unit_rational(), unit_rational()]) {
        let one = Rational::one();
        let flipped = u.clone().map(|x| &one - &x);
        let minus = round_gadget(&u, Sign::Minus).unwrap();
        let plus = round_gadget(&flipped, Sign::Plus).unwrap();
        prop_assert_eq!(minus.z, plus.z.map(|b| 1 - b));
        prop_assert_eq!(&minus.sum_dev, &-plus.sum_dev.clone());
        prop_assert!(minus.satisfies_bounds() && plus.satisfies_bounds());
    }

    #[test]
    fn matrices_match_block_assembly(qf in quantified(4, 4)) {
        prop_assert_eq!(build_np_matrix(qf.formula()).matrix, assemble_np(qf.formula()));
        prop_assert_eq!(build_pi2_matrix(&qf).matrix, assemble_pi2(qf.formula(), qf.n_universal()));
    }

    #[test]
    fn decomposition_matches_direct_norm(qf in quantified(4, 4), seed in any::<u64>()) {
        let inst = build_pi2_matrix(&qf);
        let cols = inst.cols();
        let w = RVector::new((0..cols).map(|j| Rational::frac(((seed >> (j % 16 * 4)) & 15) as i64, 15)).collect());
        let x = RVector::from_bits(&(0..cols).map(|j| ((seed.rotate_left(17) >> j) & 1) as u8).collect::<Vec<_>>());
        let d = decompose_norm(
            &inst,
            &BlockView::from_flat(&w, inst.n, inst.n_prime).unwrap(),
            &BlockView::from_flat(&x, inst.n, inst.n_prime).unwrap(),
        ).unwrap();
        prop_assert_eq!(d.max_term(), d.direct);
    }

    #[test]
    fn witness_respects_every_bound((f, psi) in satisfiable(4, 4), seed in any::<u64>()) {
        let inst = build_np_matrix(&f);
        let n = f.num_vars();
        let w = RVector::new((0..3 * n).map(|j| Rational::frac(((seed >> (j * 5 % 60)) & 31) as i64, 31)).collect());
        let w = BlockView::from_flat(&w, n, 0).unwrap();
        let wit = completeness_witness(&f, &psi, &w).unwrap();
        prop_assert!(wit.achieved_norm <= Rational::frac(4, 3));
        for (i, g) in wit.per_coordinate.iter().enumerate() {
            let b = 1 - 2 * psi.value(i + 1) as i64;
            prop_assert!(!(Rational::int(b) * &g.sum_dev).is_negative());
            prop_assert!(g.sum_dev.abs() <= Rational::int(2));
        }
        let d = decompose_norm(&inst, &w, &wit.x).unwrap();
        if let Some(c) = d.clause_term {
            // (1/3)|B row| ≤ 4/3, i.e. each clause row of B(w^sum − x^sum) is at most 4.
            prop_assert!(c <= Rational::frac(4, 3));
        }
    }

    #[test]
    fn half_point_separates_yes_from_no(f in formula(3, 4)) {
        let inst = build_np_matrix(&f);
        let half = RVector::filled(inst.cols(), Rational::half());
        let res = lindisc_at(&inst.matrix, &half).unwrap();
        let x = BlockView::from_flat(&RVector::from_bits(&res.argmin), f.num_vars(), 0).unwrap();
        if res.value < Rational::frac(3, 2) {
            prop_assert_eq!(&res.value, &Rational::half());
            prop_assert!(x.w1 == x.w2 && x.w2 == x.w3);
            prop_assert!(eval_nae(&f, &extract_assignment(&x).unwrap()).unwrap());
        } else {
            prop_assert!(solve_nae(&f).unwrap().is_none());
        }
    }

    #[test]
    fn adversary_rounding_recovers_a_completion(qf in quantified(3, 3), code in any::<u64>()) {
        let na = qf.n_universal();
        let psi_a = Assignment::from_code(code & ((1 << na) - 1), na);
        let inst = build_pi2_matrix(&qf);
        let w = adversary_point(&qf, &psi_a).unwrap();
        let res = lindisc_at(&inst.matrix, &w.to_flat()).unwrap();
        let x = BlockView::from_flat(&RVector::from_bits(&res.argmin), inst.n, na).unwrap();
        if res.value < Rational::frac(3, 2) {
            let psi_e = pi2_soundness_check(&qf, &x, &psi_a).unwrap();
            prop_assert!(eval_nae(qf.formula(), &psi_a.concat(&psi_e)).unwrap());
        } else {
            let ne = qf.num_vars() - na;
            prop_assert!((0..1u64 << ne)
                .all(|c| !eval_nae(qf.formula(), &psi_a.concat(&Assignment::from_code(c, ne))).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_minimum_is_below_any_rounding(a in matrix(6, 8), seed in any::<u64>()) {
        let w = RVector::new((0..a.cols()).map(|j| Rational::frac(((seed >> (j * 7 % 56)) & 127) as i64, 127)).collect());
        let best = lindisc_at(&a, &w).unwrap().value;
        let mut state = seed | 1;
        for _ in 0..100 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let x = RVector::from_bits(&(0..a.cols()).map(|j| ((state >> j) & 1) as u8).collect::<Vec<_>>());
            let norm = a.mat_vec_mul(&w.checked_sub(&x).unwrap()).unwrap().inf_norm().unwrap();
            prop_assert!(best <= norm);
        }
    }

    #[test]
    fn pruned_search_matches_enumeration(a in matrix(8, 10), w in unit_vector(10)) {
        let w = RVector::new(w.entries()[..a.cols()].to_vec());
        let fast = lindisc_at(&a, &w).unwrap();
        let (value, argmin) = naive_lindisc_at(&a, &w);
        prop_assert_eq!(fast.value, value);
        prop_assert_eq!(fast.argmin, argmin);
    }

    #[test]
    fn scaling_scales_the_minimum(a in matrix(5, 6), w in unit_vector(6), c in rational()) {
        prop_assume!(!c.is_zero());
        let w = RVector::new(w.entries()[..a.cols()].to_vec());
        let base = lindisc_at(&a, &w).unwrap();
        let scaled = lindisc_at(&a.scale(&c), &w).unwrap();
        prop_assert_eq!(scaled.value, c.abs() * &base.value);
        prop_assert_eq!(scaled.argmin, base.argmin);
    }

    #[test]
    fn box_bound_dominates_corners_and_center(a in matrix(4, 3), lo in unit_vector(3), hi in unit_vector(3)) {
        let (lo, hi): (Vec<_>, Vec<_>) = lo.iter().zip(hi.iter())
            .take(a.cols())
            .map(|(p, q)| if p <= q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) })
            .unzip();
        let (lo, hi) = (RVector::new(lo), RVector::new(hi));
        let bound = box_upper_bound(&a, &lo, &hi, &Default::default()).unwrap().value;
        let center = lo.checked_add(&hi).unwrap().scale(&Rational::half());
        prop_assert!(lindisc_at(&a, &center).unwrap().value <= bound);
        for code in 0..1u32 << a.cols() {
            let corner = RVector::new((0..a.cols()).map(|j| if (code >> j) & 1 == 1 { hi[j].clone() } else { lo[j].clone() }).collect());
            prop_assert!(lindisc_at(&a, &corner).unwrap().value <= bound);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn grid_refinement_never_decreases(a in matrix(3, 2), r in 1u32..=4) {
        prop_assert!(grid_oracle(&a, r).unwrap() <= grid_oracle(&a, 2 * r).unwrap());
    }

    #[test]
    fn grid_stays_below_certificate(a in matrix(3, 2)) {
        let eps = Rational::frac(1, 10);
        let cert = lindisc_global(&a, &eps).unwrap();
        prop_assert!(cert.complete);
        prop_assert!(cert.gap() <= eps);
        prop_assert_eq!(lindisc_at(&a, &cert.witness_w).unwrap().value, cert.lo.clone());
        for r in 1..=6 {
            prop_assert!(grid_oracle(&a, r).unwrap() <= &cert.hi + &eps);
        }
        let parsed = Certificate::parse_line(&cert.to_string()).unwrap();
        prop_assert_eq!((parsed.lo, parsed.hi, parsed.witness_w), (cert.lo, cert.hi, cert.witness_w));
    }

    #[test]
    fn half_the_lipschitz_constant_always_certifies(a in matrix(3, 3)) {
        let half_l = lipschitz_constant(&a) * Rational::half();
        prop_assert!(certify_upper(&a, &half_l, &Rational::frac(1, 10)).unwrap().holds());
    }
}
