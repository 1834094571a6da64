mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{semigroup_stream, Gaps};
use kunz_core::kunz::KunzCone;
use kunz_core::poset::{occurrence_invariants, KunzPoset, TightPoset};
use kunz_core::semigroup::{enumerate_by_genus, NumericalSemigroup};

const GENUS: u64 = 18;

fn gap_mask(s: &NumericalSemigroup) -> u64 {
    s.gaps().iter().fold(0, |acc, &g| acc | 1 << g)
}

#[test]
fn oracle_stream_matches_subset_count() {
    let stream = semigroup_stream(10);
    for g in 0..=10u32 {
        let n = stream.iter().filter(|s| s.genus() == g as u64).count() as u64;
        assert_eq!(n, common::count_genus_by_subsets(g), "genus {g}");
    }
}

#[test]
fn sixty_seven_semigroups_of_genus_eight() {
    assert_eq!(common::count_genus_by_subsets(8), 67);
    assert_eq!(enumerate_by_genus(8).filter(|s| s.genus() == 8).count(), 67);
}

#[test]
fn library_enumeration_matches_oracle() {
    let oracle: BTreeSet<Gaps> = semigroup_stream(GENUS).into_iter().collect();
    let mut lib = BTreeSet::new();
    for s in enumerate_by_genus(GENUS as u32) {
        assert!(lib.insert(Gaps(gap_mask(&s))), "{s} listed twice");
    }
    assert_eq!(lib, oracle);
    let mut per_genus = BTreeMap::new();
    for s in &oracle {
        *per_genus.entry(s.genus()).or_insert(0u64) += 1;
    }
    let counts: Vec<u64> = per_genus.into_values().collect();
    assert_eq!(
        counts,
        [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, 1001, 1693, 2857, 4806, 8045, 13467]
    );
}

/// Every invariant, the poset read off the tight facets, and both
/// inequalities, checked against the gap-set oracle.
#[test]
fn invariants_on_every_semigroup_up_to_genus_eighteen() {
    let mut cones: BTreeMap<u64, KunzCone> = BTreeMap::new();
    for o in semigroup_stream(GENUS) {
        let s = NumericalSemigroup::from_generators(&o.minimal_generators()).unwrap();
        let m = o.multiplicity();
        assert_eq!(gap_mask(&s), o.0);
        assert_eq!(s.multiplicity(), m);
        assert_eq!(s.frobenius(), o.frobenius());
        assert_eq!(s.conductor(), o.conductor());
        assert_eq!(s.genus(), o.genus());
        assert_eq!(s.sporadic_count(), o.sporadic());
        assert_eq!(s.atoms(), o.minimal_generators());
        assert_eq!(s.pseudo_frobenius(), o.pseudo_frobenius());
        let (e, t, c, n) = (
            o.minimal_generators().len() as u64,
            o.pseudo_frobenius().len() as u64,
            o.conductor(),
            o.sporadic(),
        );
        assert_eq!((s.embedding_dimension(), s.type_()), (e, t));

        // c <= (t + 1) n and c <= e n
        assert!(c <= (t + 1) * n, "{s}");
        assert!(c <= e * n, "{s}");
        assert_eq!(s.wilf_slack(), (e * n) as i64 - c as i64);

        if m < 2 {
            continue;
        }
        let x = s.kunz_coordinates();
        assert_eq!(x, o.kunz());
        assert_eq!(x.iter().sum::<i64>() as u64, o.genus());
        let frob = (1..m as i64)
            .map(|i| m as i64 * x[i as usize - 1] + i - m as i64)
            .max()
            .unwrap();
        assert_eq!(frob, o.frobenius());
        assert_eq!(NumericalSemigroup::from_kunz(m as u32, &x).unwrap(), s);
        assert_eq!(s.apery_set(m).unwrap(), o.apery());

        let poset = s.apery_poset();
        let relations: BTreeSet<(u32, u32)> = poset.relations().into_iter().collect();
        assert_eq!(relations, o.apery_relations(), "{s}");
        assert_eq!((poset.embedding_dimension() as u64, poset.type_() as u64), (e, t));
        assert!(poset.check_kunz_axiom());

        if m < 3 {
            continue;
        }
        let cone = cones
            .entry(m)
            .or_insert_with(|| KunzCone::new(m as u32).unwrap());
        let tight = cone.tight_pairs(&cone.tight_facets(&x).unwrap());
        match KunzPoset::from_tight_set(m as u32, &tight).unwrap() {
            TightPoset::Poset(p) => assert_eq!(p, poset, "{s}"),
            TightPoset::PreorderFailure(_) => panic!("{s} lies on a face with a cycle"),
        }
        let (oe, ot) = occurrence_invariants(m as u32, &tight);
        assert_eq!((oe as u64, ot as u64), (e, t), "{s}");
    }
}
