use fibcontract::contraction::{closed_mu_alpha, invert_t_to_s, SummatoryTable};
use fibcontract::fib::{fib, fib_mod, rank};
use fibcontract::numtheory::{dirichlet_convolve, factor_small, factorize, ArithFn};
use fibcontract::Context;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

/// An arithmetic function given by a table on `1..=len`, zero beyond it.
fn table_fn(values: Vec<i64>) -> ArithFn {
    ArithFn::new("table", move |n| {
        let i = n.to_u64().map(|v| v as usize).unwrap_or(usize::MAX);
        BigInt::from(values.get(i.wrapping_sub(1)).copied().unwrap_or(0))
    })
}

proptest! {
    #[test]
    fn convolution_is_commutative(f in prop::collection::vec(-5i64..=5, 64), g in prop::collection::vec(-5i64..=5, 64), n in 1u64..=64) {
        let (f, g) = (table_fn(f), table_fn(g));
        let n = factor_small(n);
        prop_assert_eq!(dirichlet_convolve(&f, &g, &n), dirichlet_convolve(&g, &f, &n));
    }

    #[test]
    fn convolution_is_associative(
        f in prop::collection::vec(-3i64..=3, 36),
        g in prop::collection::vec(-3i64..=3, 36),
        h in prop::collection::vec(-3i64..=3, 36),
        n in 1u64..=36,
    ) {
        let (f, g, h) = (table_fn(f), table_fn(g), table_fn(h));
        let gh = {
            let (g, h) = (g.clone(), h.clone());
            ArithFn::new("g*h", move |m| dirichlet_convolve(&g, &h, m))
        };
        let fg = {
            let (f, g) = (f.clone(), g.clone());
            ArithFn::new("f*g", move |m| dirichlet_convolve(&f, &g, m))
        };
        let n = factor_small(n);
        prop_assert_eq!(dirichlet_convolve(&f, &gh, &n), dirichlet_convolve(&fg, &h, &n));
    }

    #[test]
    fn fib_mod_agrees_with_reduction(n in 0u64..2_000, m in 1u64..u64::MAX) {
        prop_assert_eq!(BigUint::from(fib_mod(n, m)), fib(n) % m);
    }

    #[test]
    fn strong_divisibility(m in 1u64..400, n in 1u64..400) {
        prop_assert_eq!(fib(m).gcd(&fib(n)), fib(m.gcd(&n)));
    }

    #[test]
    fn duality(n in 1u64..3_000, m in 1u64..500) {
        let a = rank(n).unwrap();
        prop_assert_eq!(fib_mod(m, n) == 0, m % a == 0);
    }

    #[test]
    fn factorizations_reconstruct(v in 1u64..u64::MAX) {
        let f = factorize(&BigUint::from(v)).unwrap();
        prop_assert_eq!(f.value(), &BigUint::from(v));
        let product: BigUint = f.factors().iter().map(|(p, e)| p.pow(*e)).product();
        prop_assert_eq!(product, BigUint::from(v));
        for (p, _) in f.factors() {
            prop_assert!(fibcontract::numtheory::is_prime(p));
        }
    }

    #[test]
    fn mu_alpha_is_multiplicative(m in 1u64..5_000, n in 1u64..5_000) {
        prop_assume!(m.gcd(&n) == 1);
        prop_assert_eq!(closed_mu_alpha(m * n), closed_mu_alpha(m) * closed_mu_alpha(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn inversion_round_trip_for_table_functions(values in prop::collection::vec(-4i64..=4, 1..200)) {
        let ctx = Context::new();
        let f = table_fn(values);
        let t = SummatoryTable::tabulate_t(&ctx, &f, 24).unwrap();
        let s = SummatoryTable::tabulate_s(&ctx, &f, 24).unwrap();
        for x in 1..=24u64 {
            prop_assert_eq!(invert_t_to_s(&t, x as f64).unwrap(), s.at(x as f64).unwrap());
        }
    }
}
