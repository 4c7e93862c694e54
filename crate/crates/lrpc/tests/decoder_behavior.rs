//! Cross-checks of the decoding pipeline against independent brute-force
//! oracles on parameters small enough to enumerate.

use lrpc::code::{gen_code, gen_error, recover_coordinates, syndrome, CoordinateRecovery};
use lrpc::decoders::{multiplicity, multiplicity_candidates};
use lrpc::{Field, FieldElement, Rng, Subspace};
use std::collections::HashMap;

fn plant(
    field: &Field,
    r: usize,
    d: usize,
    c: usize,
    rng: &mut Rng,
) -> (Subspace, Subspace, Subspace) {
    loop {
        let a = Subspace::random(field, d, rng).unwrap();
        let e = Subspace::random(field, r, rng).unwrap();
        let product = a.product(field, &e).unwrap();
        if product.dim() == r * d {
            let s = product.random_subspace_of(r * d - c, rng).unwrap();
            return (a, e, s);
        }
    }
}

/// The closed-form multiplicity must equal the count of scaled spaces
/// containing each element, across the whole union.
#[test]
fn multiplicity_equals_bruteforce_count_on_small_instances() {
    let field = Field::new(2, 10).unwrap();
    for seed in 0..20 {
        let mut rng = Rng::for_trial(0xACE, seed);
        let (a, _e, s) = plant(&field, 3, 3, 1, &mut rng);
        let mut counts: HashMap<FieldElement, u64> = HashMap::new();
        for idx in 1..(1u128 << 3) {
            let alpha = a.element_at(idx);
            let scaled = s.scale(&field, &field.inv(&alpha).unwrap()).unwrap();
            for x in scaled.elements().unwrap() {
                *counts.entry(x).or_insert(0) += 1;
            }
        }
        for (x, count) in counts {
            assert_eq!(
                multiplicity(&field, &x, &s, &a).unwrap(),
                count,
                "seed {seed}, element {x}"
            );
        }
    }
}

/// Every candidate outside the error support still clears the generic
/// floor q^max(1, rd-c+d-m) - 1; every support element clears q^{d-c} - 1.
#[test]
fn multiplicity_floors_hold_across_regimes() {
    for (m, r, d, c) in [(12usize, 3usize, 4usize, 1usize), (16, 3, 4, 1)] {
        let field = Field::new(2, m).unwrap();
        let generic_floor_dim = 1.max((r * d) as i64 - c as i64 + d as i64 - m as i64) as u32;
        let generic_floor = (1u64 << generic_floor_dim) - 1;
        let support_floor = (1u64 << (d - c)) - 1;
        for seed in 0..10 {
            let mut rng = Rng::for_trial(0xF100D, seed);
            let (a, e, s) = plant(&field, r, d, c, &mut rng);
            let mut union: std::collections::BTreeSet<FieldElement> = Default::default();
            for idx in 1..(1u128 << d) {
                let alpha = a.element_at(idx);
                union.extend(
                    s.scale(&field, &field.inv(&alpha).unwrap())
                        .unwrap()
                        .elements()
                        .unwrap(),
                );
            }
            for x in &union {
                let mult = multiplicity(&field, x, &s, &a).unwrap();
                assert!(
                    mult >= generic_floor,
                    "m={m} seed {seed}: union element below the generic floor"
                );
                if e.contains(x) {
                    assert!(
                        mult >= support_floor,
                        "m={m} seed {seed}: support element below q^(d-c) - 1"
                    );
                }
            }
            // Support containment in the thresholded set follows.
            let cands = multiplicity_candidates(&field, &s, &a, c, 1 << 24).unwrap();
            for b in e.elements().unwrap() {
                assert!(cands.elements.binary_search(&b).is_ok());
            }
        }
    }
}

/// Exhaustive oracle for the coordinate solve: enumerate every coordinate
/// matrix in F_q^{r x n} and compare the solution set with the solver's
/// verdict, for the true support and for wrong supports.
#[test]
fn coordinate_solver_agrees_with_exhaustive_search() {
    let field = Field::new(2, 8).unwrap();
    let (n, k, r, d) = (4usize, 2usize, 2usize, 2usize);
    for seed in 0..15 {
        let mut rng = Rng::for_trial(0x50D4, seed);
        let code = gen_code(&field, n, k, d, &mut rng).unwrap();
        let planted = gen_error(&field, n, r, &mut rng).unwrap();
        let syn = syndrome(&field, &code, planted.vector()).unwrap();

        for candidate_support in [
            planted.support().clone(),
            Subspace::random(&field, r, &mut rng).unwrap(),
        ] {
            let basis = candidate_support.basis_elements();
            // Enumerate all q^{rn} coordinate matrices.
            let mut solutions = Vec::new();
            for assignment in 0..(1u32 << (r * n)) {
                let mut vector = Vec::with_capacity(n);
                for j in 0..n {
                    let mut acc = field.zero();
                    for (l, b) in basis.iter().enumerate() {
                        if assignment >> (j * r + l) & 1 == 1 {
                            acc = field.add(&acc, b).unwrap();
                        }
                    }
                    vector.push(acc);
                }
                if syndrome(&field, &code, &vector).unwrap().vector() == syn.vector() {
                    solutions.push(vector);
                }
            }

            let verdict = recover_coordinates(&field, &code, &syn, &candidate_support).unwrap();
            match verdict {
                CoordinateRecovery::Unique(rec) => {
                    assert_eq!(
                        solutions.len(),
                        1,
                        "seed {seed}: oracle disagrees on uniqueness"
                    );
                    assert_eq!(rec.vector(), solutions[0].as_slice());
                }
                CoordinateRecovery::NoSolution => {
                    assert!(solutions.is_empty(), "seed {seed}: oracle found solutions");
                }
                CoordinateRecovery::Ambiguous { freedom } => {
                    assert_eq!(
                        solutions.len() as u128,
                        1u128 << freedom,
                        "seed {seed}: solution count mismatch"
                    );
                }
            }
        }
    }
}

/// Round-trip at moderate parameters: recover the coordinates from the
/// true support and compare with the planted vector.
#[test]
fn coordinate_round_trip_with_true_support() {
    let field = Field::new(2, 18).unwrap();
    for seed in 0..10 {
        let mut rng = Rng::for_trial(0x0DD, seed);
        let code = gen_code(&field, 9, 1, 3, &mut rng).unwrap();
        let planted = gen_error(&field, 9, 2, &mut rng).unwrap();
        let syn = syndrome(&field, &code, planted.vector()).unwrap();
        match recover_coordinates(&field, &code, &syn, planted.support()).unwrap() {
            CoordinateRecovery::Unique(rec) => assert_eq!(rec.vector(), planted.vector()),
            CoordinateRecovery::Ambiguous { .. } => {}
            CoordinateRecovery::NoSolution => panic!("seed {seed}: planted instance unsolvable"),
        }
    }
}
