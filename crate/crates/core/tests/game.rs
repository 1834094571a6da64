mod common;

use kunz_core::game::{
    certify_face, is_certified, play, solve, strategy_med, strategy_symmetric, SolveResult,
    WilfMove,
};
use kunz_core::kunz::KunzCone;
use kunz_core::lattice::{enumerate_orbits, GroupChoice, LatticeOptions, Prepared};
use kunz_core::poset::{KunzPoset, TightPoset};
use kunz_core::semigroup::NumericalSemigroup;
use kunz_core::verifier::{assess, build_region, test_region, RegionOutcome};
use proptest::prelude::*;

fn poset_of(gens: &[u64]) -> KunzPoset {
    NumericalSemigroup::from_generators(gens).unwrap().apery_poset()
}

/// Plays legal moves picked by `choices` until they run out or nothing is legal.
fn random_line(poset: &KunzPoset, f: u32, choices: &[usize]) -> Vec<WilfMove> {
    let all: Vec<WilfMove> = poset
        .relations()
        .into_iter()
        .map(|(i, k)| WilfMove { i, k })
        .collect();
    let mut line = Vec::new();
    for &c in choices {
        let legal: Vec<WilfMove> = all
            .iter()
            .copied()
            .filter(|mv| {
                let mut next = line.clone();
                next.push(*mv);
                play(poset, f, &next).is_ok()
            })
            .collect();
        if legal.is_empty() {
            break;
        }
        line.push(legal[c % legal.len()]);
    }
    line
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// The running score equals the bookkeeping of the soundness argument,
    /// recomputed from the raw sequence.
    #[test]
    fn score_decomposes(
        which in 0usize..4,
        f_pick in 0usize..4,
        choices in prop::collection::vec(0usize..1000, 0..30),
    ) {
        let gens: [&[u64]; 4] = [&[6, 9, 20], &[5, 6, 13], &[7, 8, 9, 10], &[8, 11, 13, 14, 15]];
        let poset = poset_of(gens[which]);
        let m = poset.m();
        let e = poset.embedding_dimension();
        let f = poset.maximal()[f_pick % poset.maximal().len()];
        let line = random_line(&poset, f, &choices);
        let r = play(&poset, f, &line).unwrap();

        let s1: i64 = (f + 1..m).map(|i| r.state.coeffs[i as usize - 1] as i64).sum();
        let s2 = line.iter().filter(|mv| mv.k < mv.i).count() as i64;
        let s3 = line.len().saturating_sub((m - e) as usize) as i64;
        let (m, e, f) = (m as i64, e as i64, f as i64);
        prop_assert_eq!(r.state.score, s1 - (e - 1) * (m - 1 - f) + s2 + 2 * s3);

        let total: i64 = r.state.coeffs.iter().map(|&a| a as i64).sum();
        prop_assert_eq!(total, e * (m - 1) - line.len() as i64);
        prop_assert!((line.len() as i64) < e * (m - 1));
    }
}

#[test]
fn certificates_replay_to_their_score() {
    for gens in [&[6u64, 9, 20][..], &[5, 6, 13], &[7, 8, 9, 10], &[3, 5, 7]] {
        let p = poset_of(gens);
        for (f, result) in certify_face(&p, 1_000_000) {
            if let SolveResult::Win { certificate } = result {
                let r = certificate.check(&p).unwrap();
                assert!(r.win);
                assert_eq!(r.state.score, certificate.score);
                assert_eq!(certificate.f, f);
            }
        }
    }
}

#[test]
fn antichains_win_without_moving() {
    for m in 3..=9 {
        let p = KunzPoset::antichain(m);
        for f in 1..m {
            assert_eq!(strategy_med(&p, f).unwrap(), vec![]);
            let r = play(&p, f, &[]).unwrap();
            assert!(r.win);
            assert_eq!(r.state.score, (m - 1 - f) as i64);
        }
        assert!(is_certified(&certify_face(&p, 1000)));
    }
}

#[test]
fn symmetric_and_maximal_embedding_dimension_semigroups_win() {
    let (mut symmetric, mut med) = (0, 0);
    for o in common::semigroup_stream(18) {
        let m = o.multiplicity();
        if !(3..=10).contains(&m) {
            continue;
        }
        let s = NumericalSemigroup::from_generators(&o.minimal_generators()).unwrap();
        let p = s.apery_poset();
        let f = (s.frobenius() as u64 % m) as u32;
        if s.type_() == 1 {
            let line = strategy_symmetric(&p, f).unwrap();
            assert!(play(&p, f, &line).unwrap().win, "{s}");
            symmetric += 1;
        }
        if s.embedding_dimension() == m {
            for &g in p.maximal() {
                let line = strategy_med(&p, g).unwrap();
                assert!(play(&p, g, &line).unwrap().win, "{s}");
            }
            med += 1;
        }
    }
    assert!(symmetric > 100 && med > 100, "{symmetric} {med}");
}

/// Faces won for every maximal element have only infeasible regions. The
/// converse is not claimed.
#[test]
fn certified_faces_have_infeasible_regions() {
    for m in 3..=8 {
        let cone = KunzCone::new(m).unwrap();
        let prepared = Prepared::kunz(&cone, GroupChoice::Units).unwrap();
        let lattice = enumerate_orbits(&prepared, &LatticeOptions::default()).unwrap();
        let mut certified = 0;
        for rec in &lattice.orbits {
            let a = assess(&cone, &rec.hset);
            let TightPoset::Poset(p) = &a.poset else { continue };
            let results = certify_face(p, 200_000);
            if !is_certified(&results) {
                continue;
            }
            certified += 1;
            for &f in p.maximal() {
                let region = build_region(&cone, &a, f).unwrap();
                assert_eq!(test_region(&region, 100_000), RegionOutcome::Infeasible);
            }
        }
        assert!(certified > 0, "m = {m}");
    }
}

#[test]
fn solver_finds_the_symmetric_win() {
    let p = poset_of(&[6, 9, 20]);
    assert!(solve(&p, 1, 1_000_000).unwrap().is_win());
}
