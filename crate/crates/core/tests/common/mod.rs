#![allow(dead_code)]

use std::sync::Arc;

use dkh::complex::random_complex;
use dkh::{ChainComplex, MonomialQuotientRing};

pub fn corpus_rings() -> Vec<Arc<MonomialQuotientRing>> {
    vec![
        MonomialQuotientRing::truncated(2, 2).unwrap(),
        MonomialQuotientRing::carlsson(2).unwrap(),
        MonomialQuotientRing::truncated(3, 3).unwrap(),
    ]
}

/// Rank profiles with top degree at most 2 and ranks in `1..=3`.
pub fn profiles() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 1..=3 {
        let mut cur = vec![1; len];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            while i < len && cur[i] == 3 {
                cur[i] = 1;
                i += 1;
            }
            if i == len {
                break;
            }
            cur[i] += 1;
        }
    }
    out
}

/// Seeded corpus: every profile over every corpus ring, minimal and not.
pub fn corpus() -> Vec<ChainComplex> {
    let mut out = Vec::new();
    for (ri, ring) in corpus_rings().iter().enumerate() {
        for (pi, ranks) in profiles().iter().enumerate() {
            for minimal in [true, false] {
                let seed = (ri * 1000 + pi * 2 + minimal as usize) as u64;
                out.push(random_complex(ring, ranks, seed, minimal).unwrap());
            }
        }
    }
    out
}
