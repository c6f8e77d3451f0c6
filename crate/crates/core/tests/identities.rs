use fibcontract::contraction::{alpha_contract, alpha_contract_iter, closed_mu_alpha3, ClosedForm};
use fibcontract::fib::{entry_exponent, fib, rank, rank_prime_power};
use fibcontract::numtheory::ArithFn;
use fibcontract::verify::{
    check_corollary_completely_mult, check_phi_identity, check_theorem1, phi_recursive_fib, Quantity,
};
use fibcontract::{Context, Mangoldt};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A small-integer function of `n mod 211`, drawn from `rng`.
fn random_fn(rng: &mut ChaCha8Rng, name: &str) -> ArithFn {
    let table: Vec<i64> = (0..211).map(|_| rng.gen_range(-3..=3)).collect();
    ArithFn::from_value_fn(name, move |n: &BigUint| {
        BigInt::from(table[(n % 211u32).to_usize().expect("small")])
    })
}

#[test]
fn definitions() {
    assert_eq!(rank(2).unwrap(), 3);
    assert_eq!(rank(10).unwrap(), 15);
    assert_eq!(fib(12), BigUint::from(144u32));
    assert_eq!(entry_exponent(2).unwrap(), 1);
    assert_eq!(rank_prime_power(2, 5).unwrap(), 24);
    assert_eq!(rank_prime_power(5, 3).unwrap(), 125);
}

#[test]
fn theorem1_for_the_named_functions() {
    let ctx = Context::new();
    let one = ArithFn::one();
    for f in [ArithFn::mobius(), ArithFn::euler_phi(), ArithFn::liouville()] {
        assert!(check_theorem1(&ctx, &f, &one, 25.0).unwrap().passed, "{}", f.name());
    }
    let r = check_theorem1(&ctx, &Mangoldt, &one, 25.0).unwrap();
    assert!(r.passed);
    assert_eq!(r.residual, Quantity::exact(0));
}

#[test]
fn theorem1_for_random_pairs() {
    let ctx = Context::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..20 {
        let f = random_fn(&mut rng, &format!("f{i}"));
        let g = random_fn(&mut rng, &format!("g{i}"));
        let r = check_theorem1(&ctx, &f, &g, 25.0).unwrap();
        assert!(r.passed, "pair {i}: {:?}", r.failures().next());
    }
}

#[test]
fn corollary_at_twelve_for_lambda() {
    let ctx = Context::new();
    let r = check_corollary_completely_mult(&ctx, &ArithFn::liouville(), &ArithFn::one(), 12).unwrap();
    assert!(r.passed);
    let last = r.details.last().unwrap();
    assert_eq!(last.values, vec![Quantity::exact(1), Quantity::exact(1)]);
}

#[test]
fn phi_representation() {
    let ctx = Context::new();
    assert!(check_phi_identity(&ctx, 30.0).unwrap().passed);
    let generated = phi_recursive_fib(&ctx, 25).unwrap();
    let expected: Vec<BigUint> = (1..=27).map(fib).collect();
    assert_eq!(generated, expected);
}

#[test]
fn mu_contractions_stabilise_at_depth_three() {
    let ctx = Context::new();
    let mu = ArithFn::mobius();
    for n in 1..=40 {
        let d3 = alpha_contract_iter(&ctx, &mu, 3, n).unwrap();
        assert_eq!(d3, BigInt::from(closed_mu_alpha3(n)));
        assert_eq!(alpha_contract_iter(&ctx, &mu, 4, n).unwrap(), d3, "n={n}");
    }
    // The Δ₂₃ kernel element, by the definition rather than the closed form.
    let delta = ClosedForm::Delta23.arith_fn();
    for n in 1..=40 {
        assert_eq!(alpha_contract(&ctx, &delta, n).unwrap(), BigInt::from(0));
    }
}
