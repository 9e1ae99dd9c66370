use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scinf::geometry::{FreeAbelian, GroupOracle, Raag};
use scinf::vankampen::{build_diagram, embed, BuildOptions, ConjugateProduct, Factor};
use scinf::words::{Letter, Word};

// Stack-free reducer: delete the first cancelling pair until none remain.
fn naive_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
    while let Some(i) = v.windows(2).position(|p| p[0].cancels(p[1])) {
        v.drain(i..i + 2);
    }
    v
}

fn random_product(o: &dyn GroupOracle, rng: &mut ChaCha8Rng) -> ConjugateProduct {
    let p = o.presentation();
    let letters = p.letters();
    let n = rng.gen_range(1..=6);
    ConjugateProduct::new(
        (0..n)
            .map(|_| {
                let len = rng.gen_range(0..=4);
                Factor {
                    conj: Word::raw((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()),
                    relator: rng.gen_range(0..p.relators().len()),
                    exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
                }
            })
            .collect(),
    )
}

fn run(o: &dyn GroupOracle, seed: u64, trials: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let prod = random_product(o, &mut rng);
        let p = o.presentation();
        let d = build_diagram(p, &prod, BuildOptions { audit: true })
            .unwrap_or_else(|e| panic!("trial {t}: {e}"));
        assert_eq!(
            d.boundary_word().letters(),
            naive_reduce(prod.word(p).letters().to_vec()).as_slice(),
            "trial {t}"
        );
        assert_eq!(d.euler_characteristic(), 2);
        embed(o, &d, &Word::empty()).unwrap_or_else(|e| panic!("trial {t}: {e}"));
    }
}

#[test]
fn random_products_z3() {
    run(&FreeAbelian::standard(3), 1, 300);
}

#[test]
fn random_products_f2z3() {
    run(&Raag::f2_z3(), 2, 200);
}
