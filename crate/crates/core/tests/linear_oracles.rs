//! Ho-Kalman round trips against exact rank oracles, and the bridge between
//! the linear and Nerode engines over GF(2).

use nerode_core::linear::{ho_kalman, mcmillan_degree, rank_factor, block_hankel};
use nerode_core::nerode::{minimize, Mode};
use nerode_core::system::System;
use nerode_core::testkit::{self, oracle};

#[test]
fn round_trip_random_rational_systems() {
    let mut r = testkit::rng(31);
    let mut done = 0;
    while done < 60 {
        let n = (done % 4) + 1;
        let sys = testkit::random_rational_system(&mut r, n);
        let markov = sys.markov_parameters(2 * n + 6);
        let real = match ho_kalman(&markov, n + 1, n + 1, 1, 1) {
            Ok(real) => real,
            // a random system can fail rank saturation only through
            // insufficient data, which 2n+6 parameters rule out for order n
            Err(e) => panic!("unexpected failure: {e}"),
        };
        assert_eq!(
            real.markov_parameters(2 * n + 2),
            markov[..2 * n + 2].to_vec(),
            "Markov parameters must match exactly"
        );
        // recovered dimension equals the reachable-and-observable rank
        let d = oracle::rational_minimal_rank(&sys);
        assert_eq!(real.state_dim(), d);
        assert!(real.state_dim() <= n);
        done += 1;
    }
}

#[test]
fn factorization_is_exact() {
    let mut r = testkit::rng(32);
    for _ in 0..40 {
        let n = 3;
        let sys = testkit::random_rational_system(&mut r, n);
        let markov = sys.markov_parameters(2 * n + 4);
        let h = block_hankel(&markov, n, n).unwrap();
        let (o, rr, rank) = rank_factor(&h.assembled);
        assert_eq!(o.cols(), rank);
        assert_eq!(rr.rows(), rank);
        assert_eq!(o.mul(&rr).unwrap(), h.assembled);
    }
}

#[test]
fn mcmillan_degree_matches_oracle() {
    let mut r = testkit::rng(33);
    for _ in 0..40 {
        let n = 2;
        let sys = testkit::random_rational_system(&mut r, n);
        let markov = sys.markov_parameters(2 * n + 6);
        let deg = mcmillan_degree(&markov, n + 1, n + 1).unwrap();
        assert_eq!(deg, oracle::rational_minimal_rank(&sys));
    }
}

#[test]
fn gf2_bridge_nerode_quotient_has_2_to_the_d_states() {
    let mut r = testkit::rng(34);
    let mut done = 0;
    while done < 25 {
        let n = done % 5; // dimensions 0..=4
        let sys = testkit::random_mod2_system(&mut r, n);
        let d = oracle::modp_minimal_exponent(&sys);
        let real = minimize(&System::LinearModP(sys), Mode::RestReachable).unwrap();
        assert_eq!(real.machine().state_count(), 1usize << d);
        done += 1;
    }
}

#[test]
fn unobservable_mode_collapses() {
    // p = 2, n = 2, second state never observed: quotient has 2 states,
    // matching the rank of the observability-restricted reachable subspace
    let sys = nerode_core::system::LinearModP::new(
        vec![vec![1, 0], vec![0, 1]],
        vec![1, 1],
        vec![1, 0],
        0,
        2,
    )
    .unwrap();
    let d = oracle::modp_minimal_exponent(&sys);
    assert_eq!(d, 1);
    let real = minimize(&System::LinearModP(sys), Mode::RestReachable).unwrap();
    assert_eq!(real.machine().state_count(), 2);
}
