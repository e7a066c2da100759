//! Seeded random instances generated by partial injections.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::parse::{SemigroupSpec, SpecBody};
use crate::error::Error;
use crate::semigroup::InverseSemigroup;

pub const CLOSURE_CAP: usize = 300;
pub const MAX_IDEMPOTENTS: usize = 40;

pub struct CorpusInstance {
    pub index: usize,
    pub spec: SemigroupSpec,
    pub semigroup: InverseSemigroup,
}

fn random_injection(rng: &mut ChaCha8Rng, degree: usize) -> Vec<Option<usize>> {
    loop {
        let mut targets: Vec<usize> = (0..degree).collect();
        targets.shuffle(rng);
        let images: Vec<Option<usize>> =
            targets.into_iter().map(|y| rng.random_bool(0.7).then_some(y)).collect();
        if images.iter().any(Option::is_some) {
            return images;
        }
    }
}

/// `count` instances: degree in `{2, 3, 4}` and one to three nonempty random
/// partial injections each. Draws whose closure exceeds [`CLOSURE_CAP`]
/// elements or [`MAX_IDEMPOTENTS`] idempotents are discarded and redrawn.
pub fn generate_corpus(seed: u64, count: usize) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let degree = rng.random_range(2..=4);
        let gens = rng.random_range(1..=3);
        let spec = SemigroupSpec {
            name: format!("corpus_{seed}_{}", out.len()),
            body: SpecBody::Generators {
                degree,
                gens: (0..gens).map(|g| (format!("g{g}"), random_injection(&mut rng, degree))).collect(),
            },
        };
        match spec.build_capped(Some(CLOSURE_CAP)) {
            Ok(semigroup) if semigroup.idempotents().len() <= MAX_IDEMPOTENTS => {
                out.push(CorpusInstance { index: out.len(), spec, semigroup });
            }
            Ok(_) | Err(Error::ClosureTooLarge { .. }) => {}
            Err(e) => panic!("random partial injections are valid generators: {e}"),
        }
    }
    out
}
