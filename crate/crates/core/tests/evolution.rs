use crossgp::blackbox::{gen_boolean, gen_regression, BlackBoxProblem, BooleanFamily, Metric, RegressionBenchmark, Sampling};
use crossgp::cgp::{CgpConfig, CgpModel};
use crossgp::tgp::TreeConfig;
use crossgp::{evolve, is_ideal, Domain, FunctionSet, GpError, Hyperparameters, Problem, Scheme, TreeModel};

fn parity3() -> BlackBoxProblem<f64> {
    BlackBoxProblem::logic(gen_boolean(BooleanFamily::Parity, 3).unwrap())
}

fn koza1() -> BlackBoxProblem<f64> {
    let d = gen_regression(RegressionBenchmark::Koza1, &Sampling::default()).unwrap();
    BlackBoxProblem::regression(d, Metric::Mse).unwrap()
}

fn cgp(n_in: usize, n_out: usize) -> CgpModel {
    let fset = FunctionSet::boolean_default();
    let cfg = CgpConfig::new(n_in, n_out, &fset);
    CgpModel::new(fset, cfg).unwrap()
}

fn tree(n_in: usize, domain: Domain) -> TreeModel {
    TreeModel::new(FunctionSet::default_for(domain), TreeConfig::new(n_in, 1, domain)).unwrap()
}

#[test]
fn single_evaluation_budget() {
    let hp = Hyperparameters {
        population_size: 1,
        max_evaluations: 1,
        tournament_size: 1,
        ..Default::default()
    };
    let p = koza1();
    for scheme in [Scheme::Generational, Scheme::OnePlusLambda] {
        let out = evolve(&tree(1, Domain::Real), &p, &hp, scheme).unwrap();
        assert_eq!(out.evaluations_used, 1);
        assert_eq!(out.best.fitness.unwrap().evaluations_used, 1);
        assert_eq!(out.trajectory.len(), 1);
    }
}

#[test]
fn fixed_seed_is_reproducible() {
    let hp = Hyperparameters {
        seed: 42,
        max_evaluations: 5000,
        population_size: 50,
        ..Default::default()
    };
    let p = koza1();
    let m = tree(1, Domain::Real);
    let a = evolve(&m, &p, &hp, Scheme::Generational).unwrap();
    let b = evolve(&m, &p, &hp, Scheme::Generational).unwrap();
    assert_eq!(a.best.genome, b.best.genome);
    assert_eq!(a.trajectory, b.trajectory);
    assert_eq!(a.evaluations_used, b.evaluations_used);
}

#[test]
fn domain_mismatch_before_evaluation() {
    let err = evolve(&cgp(1, 1), &koza1(), &Hyperparameters::default(), Scheme::OnePlusLambda).unwrap_err();
    assert!(matches!(err, GpError::DomainMismatch { .. }), "{err}");
    let err = evolve(&tree(3, Domain::Real), &parity3(), &Hyperparameters::default(), Scheme::Generational).unwrap_err();
    assert!(matches!(err, GpError::DomainMismatch { .. }));
}

#[test]
fn shape_mismatch_rejected() {
    let err = evolve(&cgp(4, 1), &parity3(), &Hyperparameters::default(), Scheme::OnePlusLambda).unwrap_err();
    assert!(matches!(err, GpError::Config(_)));
}

#[test]
fn budget_overshoot_bounded() {
    let p = parity3();
    for seed in 0..10 {
        for (pop, budget) in [(7, 50), (10, 101), (33, 1000)] {
            let hp = Hyperparameters {
                seed,
                population_size: pop,
                max_evaluations: budget,
                ..Default::default()
            };
            let out = evolve(&tree(3, Domain::Boolean), &p, &hp, Scheme::Generational).unwrap();
            assert!(out.evaluations_used <= budget + pop as u64);
            let hp = Hyperparameters { lambda: 6, mutation_rate: 0.02, ..hp };
            let out = evolve(&cgp(3, 1), &p, &hp, Scheme::OnePlusLambda).unwrap();
            assert!(out.evaluations_used <= budget + 6);
        }
    }
}

#[test]
fn success_implies_ideal_cost() {
    let p = parity3();
    for seed in 0..5 {
        let hp = Hyperparameters {
            seed,
            max_evaluations: 50_000,
            mutation_rate: 0.05,
            ..Default::default()
        };
        let out = evolve(&cgp(3, 1), &p, &hp, Scheme::OnePlusLambda).unwrap();
        if out.success {
            assert!(is_ideal(out.best.fitness.as_ref().unwrap(), &p));
            assert!(out.best_cost() <= p.ideal_threshold().unwrap());
            assert_eq!(out.evaluations_to_success, Some(out.best.fitness.unwrap().evaluations_used));
            assert!(out.evaluations_used >= out.evaluations_to_success.unwrap());
        } else {
            assert_eq!(out.evaluations_to_success, None);
        }
    }
}

#[test]
fn mu_plus_lambda_keeps_mu_parents() {
    let p = parity3();
    let hp = Hyperparameters {
        mu: 3,
        lambda: 5,
        max_evaluations: 2000,
        mutation_rate: 0.05,
        ..Default::default()
    };
    let out = evolve(&cgp(3, 1), &p, &hp, Scheme::OnePlusLambda).unwrap();
    assert!(out.trajectory.windows(2).all(|w| w[1].1 <= w[0].1));
}
