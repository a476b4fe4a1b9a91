mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypermono::classify::{nonresonant, reducibility, regular_holonomic};
use hypermono::exact::{dot_rat_int, smith_normal_form, Int, IntMatrix};
use hypermono::gammaseries::{eigenvalue_oracle, exponent_vector, omega_reps, very_generic};
use hypermono::geometry::{
    gamma_a, sign_criterion, normalized_volume, refines, t_zero, t_zero_direct, Configuration,
};
use hypermono::monodromy::{char_poly_local, rho_from_simplex, roots_multiset, sigma_set};
use hypermono::Parameter;

use common::{build_instance, random_unimodular, transform, Instance};

fn instance(seed: u64) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_instance(&mut rng, seed)
}

fn all(cfg: &Configuration) -> Vec<usize> {
    (0..cfg.len()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn triangulations_cover_the_volume(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let vol = normalized_volume(&inst.cfg, &all(&inst.cfg));
        for t in inst.triangulations.iter().chain(&inst.gamma_triangulations) {
            let total: Int = t
                .maximal_cells()
                .iter()
                .map(|c| inst.cfg.submatrix(&c.indices).det().unwrap().abs())
                .sum();
            prop_assert_eq!(&total, &vol);
        }
    }

    #[test]
    fn t_zero_agrees_with_direct_construction(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let cfg = inst.unwrap().cfg;
        for col in (0..cfg.len()).filter(|&j| cfg.is_vertex(j)) {
            prop_assert_eq!(t_zero(&cfg, col).unwrap().cell_sets(), t_zero_direct(&cfg, col).unwrap().cell_sets());
        }
    }

    #[test]
    fn sign_criterion_matches_refinement(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        for t in inst.triangulations.iter().chain(&inst.gamma_triangulations) {
            prop_assert_eq!(
                sign_criterion(&inst.cfg, t, inst.col).unwrap(),
                refines(&inst.cfg, t, &inst.t0)
            );
        }
    }

    #[test]
    fn refinement_is_reflexive_and_transitive(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let gamma = gamma_a(&inst.cfg).unwrap();
        prop_assert!(refines(&inst.cfg, &gamma, &gamma));
        prop_assert!(refines(&inst.cfg, &inst.t0, &inst.t0));
        prop_assert!(refines(&inst.cfg, &inst.t0, &gamma));
        for t in &inst.triangulations {
            prop_assert!(refines(&inst.cfg, t, t));
            prop_assert!(refines(&inst.cfg, t, &inst.t0));
            prop_assert!(refines(&inst.cfg, t, &gamma));
        }
    }

    #[test]
    fn volume_is_unimodular_and_permutation_invariant(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
        let u = random_unimodular(&mut rng, inst.cfg.dim());
        let (moved, _) = transform(&inst.cfg, &u, &inst.beta);
        for cell in inst.t0.maximal_cells() {
            let mut tau = cell.indices.clone();
            let v = normalized_volume(&inst.cfg, &tau);
            prop_assert_eq!(&normalized_volume(&moved, &tau), &v);
            tau.shuffle(&mut rng);
            prop_assert_eq!(&normalized_volume(&inst.cfg, &tau), &v);
        }
    }

    #[test]
    fn monodromy_bookkeeping(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let p = char_poly_local(&inst.cfg, &inst.beta, inst.col).unwrap();
        prop_assert_eq!(Int::from(p.degree()), normalized_volume(&inst.cfg, &all(&inst.cfg)));
        let roots = roots_multiset(&p).unwrap();
        for facet in sigma_set(&inst.cfg, &inst.t0, inst.col).unwrap() {
            prop_assert_eq!(facet.volume % facet.height, 0);
            for t in &inst.triangulations {
                for c in t.maximal_cells() {
                    if c.indices.contains(&inst.col) && c.indices.iter().all(|j| facet.tau.contains(j)) {
                        prop_assert_eq!(&rho_from_simplex(&inst.cfg, &c.indices, inst.col).unwrap(), &facet.rho);
                    }
                }
            }
        }
        for t in &inst.triangulations {
            prop_assert_eq!(&eigenvalue_oracle(&inst.cfg, &inst.beta, inst.col, t).unwrap(), &roots);
        }
    }

    #[test]
    fn char_poly_is_unimodular_equivariant(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let u = random_unimodular(&mut rng, inst.cfg.dim());
        let (moved, moved_beta) = transform(&inst.cfg, &u, &inst.beta);
        let a = char_poly_local(&inst.cfg, &inst.beta, inst.col).unwrap();
        let b = char_poly_local(&moved, &moved_beta, inst.col).unwrap();
        prop_assert_eq!(roots_multiset(&a).unwrap(), roots_multiset(&b).unwrap());
        prop_assert_eq!(a.unit_exponent, b.unit_exponent);
        let heights = |p: &hypermono::monodromy::CharPoly| {
            let mut h: Vec<(u64, u64)> = p.factors.iter().map(|f| (f.height, f.mult)).collect();
            h.sort();
            h
        };
        prop_assert_eq!(heights(&a), heights(&b));
    }

    #[test]
    fn coset_representatives_and_exponents(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let vol = normalized_volume(&inst.cfg, &all(&inst.cfg));
        let beta = inst.beta.as_rational().unwrap();
        for t in &inst.triangulations {
            let mut count = Int::zero();
            for c in t.maximal_cells() {
                let omega = omega_reps(&inst.cfg, &c.indices).unwrap();
                let a_sigma = inst.cfg.submatrix(&c.indices);
                prop_assert_eq!(Int::from(omega.reps.len()), a_sigma.det().unwrap().abs());
                count += Int::from(omega.reps.len());
                let snf = smith_normal_form(&a_sigma);
                let mut labels: Vec<Vec<Int>> = omega
                    .reps
                    .iter()
                    .map(|k| {
                        let mut s = vec![Int::zero(); inst.cfg.dim()];
                        for (&j, &kj) in omega.complement.iter().zip(k) {
                            for (x, a) in s.iter_mut().zip(inst.cfg.column(j)) {
                                *x += a * Int::from(kj);
                            }
                        }
                        snf.class_label(&s)
                    })
                    .collect();
                labels.sort();
                labels.dedup();
                prop_assert_eq!(labels.len(), omega.reps.len());
                for k in &omega.reps {
                    let spec = exponent_vector(&inst.cfg, &c.indices, k, &inst.beta).unwrap();
                    let v = spec.v.as_rational().unwrap();
                    for (&j, &kj) in omega.complement.iter().zip(k) {
                        prop_assert_eq!(&v[j], &hypermono::exact::rat(kj as i64, 1));
                    }
                    for (i, b) in beta.iter().enumerate() {
                        let row = inst.cfg.matrix().row(i);
                        prop_assert_eq!(&dot_rat_int(v, row), b);
                    }
                }
            }
            prop_assert_eq!(&count, &vol);
        }
    }

    #[test]
    fn very_generic_factors_are_nontrivial(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        prop_assert!(very_generic(&inst.cfg, &inst.triangulations[0], &inst.beta).unwrap());
        let p = char_poly_local(&inst.cfg, &inst.beta, inst.col).unwrap();
        let beta = inst.beta.as_rational().unwrap();
        for f in p.factors.iter().filter(|f| f.height == 1) {
            let pairing = dot_rat_int(beta, &f.ell);
            prop_assert!(!pairing.is_integer(), "factor {:?} pairs integrally", f);
        }
    }

    #[test]
    fn verdict_is_invariant(seed in any::<u64>()) {
        let inst = instance(seed);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
        let key = |cfg: &Configuration, beta: &Parameter| {
            let v = reducibility(cfg, beta).unwrap();
            (v.reducible, v.condition_i, v.condition_ii, v.condition_iii)
        };
        let base = key(&inst.cfg, &inst.beta);
        let u = random_unimodular(&mut rng, inst.cfg.dim());
        let (moved, moved_beta) = transform(&inst.cfg, &u, &inst.beta);
        prop_assert_eq!(key(&moved, &moved_beta), base);

        let mut order: Vec<usize> = all(&inst.cfg);
        order.shuffle(&mut rng);
        let columns: Vec<Vec<Int>> = order.iter().map(|&j| inst.cfg.column(j).to_vec()).collect();
        let permuted = Configuration::new(IntMatrix::from_columns(inst.cfg.dim(), &columns)).unwrap();
        prop_assert_eq!(key(&permuted, &inst.beta), base);

        let v = reducibility(&inst.cfg, &inst.beta).unwrap();
        let vol = normalized_volume(&inst.cfg, &all(&inst.cfg));
        let dims: u64 = v.invariant_dims.iter().map(|(_, d)| d).sum();
        prop_assert!(Int::from(dims) <= vol);

        let gamma = gamma_a(&inst.cfg).unwrap();
        let single = gamma.maximal_cells().len() == 1 && gamma.maximal_cells()[0].indices.len() == inst.cfg.len();
        if regular_holonomic(&inst.cfg) && nonresonant(&inst.cfg, &inst.beta).is_nonresonant() && single {
            prop_assert!(!v.reducible);
        }
    }
}
