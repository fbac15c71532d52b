use std::sync::OnceLock;

use proptest::prelude::*;
use semiswitch::codes;
use semiswitch::digits::{self, DigitVector};
use semiswitch::hws;
use semiswitch::linpoly::LinearizedPoly;
use semiswitch::presemifield::{build_switch, find_zero_divisor, SwitchSpec};
use semiswitch::{FieldCtx, FieldElem};

fn f81() -> &'static FieldCtx {
    static CTX: OnceLock<FieldCtx> = OnceLock::new();
    CTX.get_or_init(|| FieldCtx::new(3, 1, 4, None).unwrap())
}

fn f64q4() -> &'static FieldCtx {
    static CTX: OnceLock<FieldCtx> = OnceLock::new();
    CTX.get_or_init(|| FieldCtx::new(2, 2, 3, None).unwrap())
}

fn f9() -> &'static FieldCtx {
    static CTX: OnceLock<FieldCtx> = OnceLock::new();
    CTX.get_or_init(|| FieldCtx::new(3, 1, 2, None).unwrap())
}

fn elem(ctx: &'static FieldCtx) -> impl Strategy<Value = FieldElem> {
    (0..ctx.order() as usize).prop_map(move |o| ctx.from_ordinal(o))
}

fn poly(ctx: &'static FieldCtx) -> impl Strategy<Value = LinearizedPoly> {
    prop::collection::vec(elem(ctx), ctx.n() as usize).prop_map(move |c| LinearizedPoly::new(ctx, c).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in elem(f81()), b in elem(f81()), c in elem(f81())) {
        let k = f81();
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), FieldElem::ZERO);
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElem::ONE);
        }
    }

    #[test]
    fn trace_is_q_linear_into_subfield(a in elem(f64q4()), b in elem(f64q4()), s in 0usize..4) {
        let k = f64q4();
        let c = k.subfield()[s];
        let t = k.rel_trace(k.add(k.mul(c, a), b));
        prop_assert_eq!(t, k.add(k.mul(c, k.rel_trace(a)), k.rel_trace(b)));
        prop_assert!(k.subfield_digit(t).is_some());
    }

    #[test]
    fn linearized_polys_are_q_linear(l in poly(f64q4()), x in elem(f64q4()), y in elem(f64q4()), s in 0usize..4) {
        let k = f64q4();
        let c = k.subfield()[s];
        let lhs = l.eval(k, k.add(k.mul(c, x), y));
        prop_assert_eq!(lhs, k.add(k.mul(c, l.eval(k, x)), l.eval(k, y)));
    }

    #[test]
    fn predicate_iff_no_zero_divisor(l in poly(f9())) {
        let k = f9();
        let op = build_switch(k, &SwitchSpec::from_linearized(k, &l)).unwrap();
        prop_assert_eq!(l.is_switching(k), find_zero_divisor(&op).is_none());
    }

    #[test]
    fn scaling_by_nonzero_subfield_element_preserves_predicate(l in poly(f81()), s in 1usize..3) {
        let k = f81();
        let c = k.subfield()[s];
        prop_assert_eq!(l.is_switching(k), l.scaled(k, c).is_switching(k));
    }

    #[test]
    fn codeword_shift_closure(l in poly(f81())) {
        let k = f81();
        let w = codes::delsarte_codeword(k, l.coeffs()).unwrap();
        let g = k.generator();
        let shifted: Vec<FieldElem> = l.coeffs().iter().enumerate()
            .map(|(i, &a)| k.mul(a, k.pow(g, k.q().pow(i as u32) as u128 - 1)))
            .collect();
        let mut rotated = w.values.clone();
        rotated.rotate_left(1);
        prop_assert_eq!(codes::delsarte_codeword(k, &shifted).unwrap().values, rotated);
        prop_assert_eq!(w.is_full_weight(), l.is_switching(k));
    }

    #[test]
    fn hws_report_is_consistent(l in poly(f81())) {
        let k = f81();
        prop_assume!(!l.higher_support().is_empty());
        let r = hws::verdicts(k, &l).unwrap();
        prop_assert!(r.is_consistent());
        prop_assert!(r.within_serre_band());
        if l.is_switching(k) {
            prop_assert!(!r.triggered());
            prop_assert!(r.meets_threshold());
            prop_assert_eq!(r.n_chi, if r.trace_a0_zero { k.q() + 1 } else { 1 });
        }
    }

    #[test]
    fn lead_coprime_to_p(j in 1u64..728) {
        let v = hws::lead(j, 3, 6);
        prop_assert!(v % 3 != 0);
        prop_assert!(v <= j);
    }

    #[test]
    fn res_is_canonical(j in -10_000i128..10_000, q in 2u64..6, n in 1u32..4) {
        let r = hws::res(j, q, n) as i128;
        let m = (q as i128).pow(n) - 1;
        prop_assert!((0..m).contains(&r));
        prop_assert_eq!((j - r).rem_euclid(m), 0);
    }

    #[test]
    fn thresholds_at_least_two(q in 2u64..9, n in 2u32..6) {
        let (a, b) = hws::corollary_thresholds(q, n);
        prop_assert!(a >= 2 && b >= 2 && a >= b);
    }

    #[test]
    fn digit_vectors_round_trip(v in 0u64..625) {
        prop_assert_eq!(DigitVector::from_value(5, 4, v).unwrap().value(), v);
    }

    #[test]
    fn oplus_matches_reduced_sum(a in 0u64..=40, b in 0u64..=40) {
        let top = digits::omega0_top(3, 4);
        let s = digits::oplus(a, b, 3, 4).unwrap();
        prop_assert!(s <= top);
        prop_assert_eq!(s % top, (a + b) % top);
    }

    #[test]
    fn asc_des_partitions_descents(d in prop::collection::vec(0u64..5, 1..9)) {
        let r = digits::asc_des(&d);
        prop_assert_eq!(r.asc.len(), r.count);
        prop_assert_eq!(r.des.len(), r.count);
    }

    #[test]
    fn cosets_partition(e in 0u64..80) {
        let c = codes::coset(3, 80, e).unwrap();
        prop_assert!(c.members.contains(&e));
        prop_assert_eq!(4 % c.members.len(), 0);
        for &m in &c.members {
            prop_assert_eq!(codes::coset(3, 80, m).unwrap().members, c.members.clone());
        }
    }
}
