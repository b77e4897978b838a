//! Oracles for closed faces: random reduced words and face functions read
//! off weight increments.

use super::weyl;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trailcone::cartan::{CartanData, WordJ};
use trailcone::trails::{face_weights, LinearFunctionBJ};

pub fn random_reduced_word(gcm: &[Vec<i64>], rng: &mut ChaCha8Rng, max_len: usize) -> Vec<usize> {
    let target = rng.gen_range(1..=max_len);
    let mut word = Vec::new();
    let mut stalled = 0;
    while word.len() < target && stalled < 50 {
        word.push(rng.gen_range(0..gcm.len()));
        if weyl::is_reduced(gcm, &word) {
            stalled = 0;
        } else {
            word.pop();
            stalled += 1;
        }
    }
    word
}

/// The function of a closed face read off its weight increments `δ_j`:
/// coefficient `α^∨_{i_j}(δ_j + δ_{j+1}) / 2` at position `j`.
pub fn face_from_weights(cartan: &CartanData, word: &WordJ, s: usize, k: usize) -> LinearFunctionBJ {
    let deltas = face_weights(cartan, word, s, k).unwrap();
    let mut f = LinearFunctionBJ::zero();
    for j in 1..=word.len() {
        let i = word.letter(j);
        let twice = deltas[j - 1].pairing(i) + deltas[j].pairing(i);
        assert_eq!(twice % 2, 0);
        f.set(j, twice / 2);
    }
    f
}
