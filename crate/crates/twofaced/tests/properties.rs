//! Property-based invariants of the transform layer and the channels.

use proptest::collection::vec;
use proptest::prelude::*;
use std::collections::HashSet;

use twofaced::{descramble, scramble, transmit_bsc, transmit_ec, Bit, BitWord, Domain, Substream};

fn bitword(bits: &[bool]) -> BitWord {
    bits.iter().map(|&b| Bit::from(b)).collect()
}

proptest! {
    #[test]
    fn scramble_roundtrips(
        x in vec(any::<bool>(), 1..300),
        w in vec(any::<bool>(), 1..17),
    ) {
        let x = bitword(&x);
        let w = bitword(&w);
        prop_assert_eq!(descramble(&scramble(&x, &w), &w), x);
    }

    #[test]
    fn scramble_preserves_length(
        x in vec(any::<bool>(), 0..300),
        w in vec(any::<bool>(), 1..17),
    ) {
        let x = bitword(&x);
        let w = bitword(&w);
        prop_assert_eq!(scramble(&x, &w).len(), x.len());
    }

    #[test]
    fn descramble_locality(
        v in vec(any::<bool>(), 2..200),
        w in vec(any::<bool>(), 1..9),
        flip in any::<prop::sample::Index>(),
    ) {
        let v = bitword(&v);
        let w = bitword(&w);
        let l = w.len();
        let i = flip.index(v.len());
        let mut corrupted = v.clone();
        corrupted.flip(i);
        let a = descramble(&v, &w);
        let b = descramble(&corrupted, &w);
        for j in 0..v.len() {
            if j < i || j > i + l {
                prop_assert_eq!(a.get(j), b.get(j), "leak at {} (flip {})", j, i);
            }
        }
    }

    #[test]
    fn channels_preserve_length(
        v in vec(any::<bool>(), 1..200),
        seed in any::<u64>(),
    ) {
        let v = bitword(&v);
        let s = Substream::derived(seed, Domain::Channel, 0);
        prop_assert_eq!(transmit_ec(&v, 0.3, &s).len(), v.len());
        prop_assert_eq!(transmit_bsc(&v, 0.3, &s).len(), v.len());
    }

    #[test]
    fn bit_text_roundtrips(x in vec(any::<bool>(), 0..200)) {
        let x = bitword(&x);
        let parsed: BitWord = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }
}

#[test]
fn scramble_is_injective_exhaustively() {
    for l in 1..=3usize {
        for wi in 0..(1u64 << l) {
            let w = BitWord::from_index(wi, l);
            for n in 1..=10usize {
                let mut images = HashSet::new();
                for xi in 0..(1u64 << n) {
                    let v = scramble(&BitWord::from_index(xi, n), &w);
                    assert!(images.insert(v.to_index()), "collision at l={l} w={w} n={n}");
                }
            }
        }
    }
}
