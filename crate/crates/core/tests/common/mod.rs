#![allow(dead_code)]

use bfh_core::coeff::{Chain, ChainMap, ComplexBuilder, FreeComplex, Ring, UPoly};
use proptest::prelude::*;

/// A complex over F2[U] built as a direct sum of known pieces and then
/// scrambled by graded changes of basis, so its homology is known.
#[derive(Clone, Debug)]
pub struct Model {
    pub grs: Vec<i64>,
    /// `d[i][j]`: `e_j` appears in the boundary of `e_i`.
    pub d: Vec<Vec<bool>>,
    /// `(grading, order)` of each summand of the homology.
    pub summands: Vec<(i64, Option<u32>)>,
}

impl Model {
    pub fn exp(&self, i: usize, j: usize) -> u32 {
        let diff = self.grs[j] - self.grs[i] + 1;
        assert!(diff >= 0 && diff % 2 == 0, "entry {i} -> {j} is not homogeneous");
        (diff / 2) as u32
    }

    pub fn complex(&self) -> FreeComplex {
        let mut b = ComplexBuilder::new(Ring::FU);
        for (i, g) in self.grs.iter().enumerate() {
            b.generator(&format!("g{i}"), *g, None).unwrap();
        }
        for i in 0..self.grs.len() {
            for j in 0..self.grs.len() {
                if self.d[i][j] {
                    b.arrow_idx(i, j, self.exp(i, j), 0).unwrap();
                }
            }
        }
        b.build()
    }

    /// `e_c' = e_c + U^l e_t`, when the gradings allow it.
    pub fn slide(&mut self, c: usize, t: usize) {
        let diff = self.grs[t] - self.grs[c];
        if c == t || diff < 0 || diff % 2 != 0 {
            return;
        }
        let n = self.grs.len();
        let row_t = self.d[t].clone();
        for (x, y) in self.d[c].iter_mut().zip(row_t) {
            *x ^= y;
        }
        for i in 0..n {
            if self.d[i][c] {
                self.d[i][t] ^= true;
            }
        }
    }
}

/// Pieces: `(kind, grading, k)` with kind 0 a tower, 1 a pair `a -> U^k b`.
pub fn model_strategy(max_pieces: usize) -> impl Strategy<Value = Model> {
    let piece = (0u8..2, -3i64..4, 0u32..4);
    (
        prop::collection::vec(piece, 1..=max_pieces),
        prop::collection::vec((0usize..64, 0usize..64), 0..24),
    )
        .prop_map(|(pieces, slides)| {
            let mut grs = Vec::new();
            let mut arrows = Vec::new();
            let mut summands = Vec::new();
            for (kind, g, k) in pieces {
                if kind == 0 {
                    grs.push(g);
                    summands.push((g, None));
                } else {
                    let b = grs.len();
                    grs.push(g);
                    grs.push(g - 2 * k as i64 + 1);
                    arrows.push((b + 1, b));
                    if k > 0 {
                        summands.push((g, Some(k)));
                    }
                }
            }
            let n = grs.len();
            let mut d = vec![vec![false; n]; n];
            for (f, t) in arrows {
                d[f][t] = true;
            }
            let mut m = Model { grs, d, summands };
            for (c, t) in slides {
                m.slide(c % n, t % n);
            }
            m.summands.sort();
            m
        })
}

/// A map raising grading by one, with entries chosen by `bits`.
pub fn random_homotopy(c: &FreeComplex, bits: &[bool]) -> ChainMap {
    let n = c.len();
    let mut k = 0;
    let images = (0..n)
        .map(|i| {
            let mut ch = Chain::zero();
            for j in 0..n {
                let diff = c.grading(j) - (c.grading(i) + 1);
                if diff <= 0 && diff % 2 == 0 {
                    if bits[k % bits.len()] {
                        ch.add_term(j, &UPoly::monomial((-diff / 2) as u32));
                    }
                    k += 1;
                }
            }
            ch
        })
        .collect();
    ChainMap::from_images(images)
}

/// `f + dh + hd`.
pub fn perturb(c: &FreeComplex, f: &ChainMap, h: &ChainMap) -> ChainMap {
    let images = (0..c.len())
        .map(|i| {
            let x = Chain::generator(i);
            let mut out = f.apply(&x);
            out.add_chain(&c.boundary(&h.apply(&x)).unwrap());
            out.add_chain(&h.apply(&c.boundary(&x).unwrap()));
            out
        })
        .collect();
    ChainMap::from_images(images)
}

/// Rank over F2 of a dense matrix, by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H(C (x) F2[U]/U^k)` from the entry list alone.
pub fn brute_dim_mod(c: &FreeComplex, k: usize) -> usize {
    let n = c.len();
    let dim = n * k;
    let mut rows = vec![vec![false; dim]; dim];
    for e in c.entries() {
        for i in 0..k {
            let p = i + e.coeff.u_exp as usize;
            if p < k {
                rows[i * n + e.from][p * n + e.to] ^= true;
            }
        }
    }
    dim - 2 * dense_rank(rows)
}
