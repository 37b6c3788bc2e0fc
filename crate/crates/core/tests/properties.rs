use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use bpa_core::asymptotics::{chebyshev_t_f64, gross_series_r};
use bpa_core::bijection::sweep::fully_labeled;
use bpa_core::bijection::{f_forward, f_inverse, g_forward, g_inverse};
use bpa_core::enumerate::enumerate_bpa;
use bpa_core::exact::{self, BigNat};
use bpa_core::{BarredPA, CyclePermutation, Interval, LabeledBpa, PreferentialArrangement};

fn count(m: usize, l: usize) -> usize {
    exact::r_via_recurrence(m, l).unwrap().to_usize().unwrap()
}

/// A uniformly chosen barred arrangement with `m <= 3` bars on `l <= 5` elements.
fn barred() -> impl Strategy<Value = BarredPA> {
    (0usize..=3, 0usize..=5)
        .prop_flat_map(|(m, l)| (Just(m), Just(l), 0..count(m, l)))
        .prop_map(|(m, l, i)| enumerate_bpa(m, l).nth(i).unwrap())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..1_000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(x in barred()) {
        let text = x.render();
        prop_assert_eq!(BarredPA::parse(&text, x.len(), x.bars()).unwrap(), x.clone());
        if let Some(compact) = x.render_compact() {
            prop_assert_eq!(BarredPA::parse(&compact, x.len(), x.bars()).unwrap(), x.clone());
        }
        let whole = PreferentialArrangement::new(x.sections().iter().flat_map(|s| s.blocks().to_vec()).collect(), x.len());
        prop_assert!(whole.is_ok());
    }

    #[test]
    fn special_iff_no_empty_section(x in barred()) {
        prop_assert_eq!(x.is_special(), x.empty_sections() == 0);
        prop_assert_eq!(x.sections().len(), x.bars() + 1);
    }

    #[test]
    fn r_routes_agree(m in 0usize..10, l in 0usize..25) {
        let r = exact::r_via_recurrence(m, l).unwrap();
        prop_assert_eq!(exact::r_via_stirling_first(m, l).unwrap(), r.clone());
        prop_assert_eq!(exact::r_via_blocks(m, l), r.clone());
        prop_assert_eq!(exact::r_from_s(m, l), r);
    }

    #[test]
    fn recurrence_step(m in 1usize..10, l in 0usize..20) {
        let lhs = exact::r_via_blocks(m, l) * (2 * m);
        let rhs = exact::r_via_blocks(m - 1, l + 1) + exact::r_via_blocks(m - 1, l) * m;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_routes_agree(m in 0usize..7, l in 0usize..16) {
        let s = exact::s_via_blocks(m, l);
        prop_assert_eq!(exact::s_via_inclusion_exclusion(m, l).unwrap(), s.clone());
        prop_assert_eq!(exact::s_via_first_blocks(m, l).unwrap(), s.clone());
        if l < m + 1 {
            prop_assert_eq!(s, BigNat::from(0u32));
        }
    }

    #[test]
    fn f_round_trip(x in barred().prop_filter("needs a bar", |x| x.bars() > 0), bar in 0usize..3, bit in 0u8..=1) {
        let bar = bar % x.bars();
        let labeled = LabeledBpa::with_single_binary(x.clone(), bar, bit).unwrap();
        let y = f_forward(&labeled).unwrap();
        prop_assert_eq!(f_inverse(&y, x.bars(), x.len()).unwrap(), labeled);
    }

    #[test]
    fn g_round_trip(m in 0usize..=3, l in 0usize..=3, pick in any::<prop::sample::Index>()) {
        let all: Vec<_> = fully_labeled(m, l).collect();
        let x = pick.get(&all);
        let (cycles, pa) = g_forward(x).unwrap();
        prop_assert_eq!(cycles.cycle_count(), pa.len() - l + 1);
        prop_assert_eq!(&g_inverse(&cycles, &pa).unwrap(), x);
        let reparsed = CyclePermutation::parse(&cycles.to_string(), cycles.n()).unwrap();
        prop_assert_eq!(reparsed, cycles);
        prop_assert_eq!(&LabeledBpa::parse(&x.render(), l, m).unwrap(), x);
    }

    #[test]
    fn interval_ops_enclose(a in rational(), b in rational(), prec in 8u32..80) {
        let ia = Interval::from_rational(&a, prec);
        let ib = Interval::from_rational(&b, prec);
        prop_assert!(ia.contains(&a));
        prop_assert!(ia.add(&ib).contains(&(&a + &b)));
        prop_assert!(ia.sub(&ib).contains(&(&a - &b)));
        prop_assert!(ia.mul(&ib).contains(&(&a * &b)));
        if !ib.contains_zero() {
            prop_assert!(ia.div(&ib).unwrap().contains(&(&a / &b)));
        }
        let sq = &a * &a;
        prop_assert!(Interval::from_rational(&sq, prec).sqrt().unwrap().contains(&a.abs()));
    }

    #[test]
    fn chebyshev_matches_cosine(n in 0usize..60, theta in 0.0f64..std::f64::consts::PI) {
        let got = chebyshev_t_f64(n, theta.cos()).unwrap();
        prop_assert!((got - (n as f64 * theta).cos()).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gross_series_encloses_exact(l in 0usize..40) {
        let v = gross_series_r(l, 1e-3, 192).unwrap();
        prop_assert!(v.contains_integer(&BigInt::from(exact::ordered_bell(l))));
    }
}
