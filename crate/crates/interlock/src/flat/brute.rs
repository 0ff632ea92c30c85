//! Reference enumerator for flat structures: grows structures tile by
//! tile (every connected n-tile structure contains a connected (n-1)-tile
//! substructure, so level-by-level attachment with canonical-form
//! deduplication visits each translation class exactly once).
//!
//! This is the correctness oracle for the transfer-matrix engine, so the
//! construction stays explicit. Canonical forms pack into a `u128` for
//! every desk-scale (w, n); a byte-vector fallback covers the rest.

use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hasher};

use num_bigint::BigUint;
use thiserror::Error;

use super::structure::{FlatStructure, Tile};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruteError {
    #[error("bad parameters: w={w}, n={n} (both must be >= 1)")]
    BadParams { w: u32, n: u32 },
    #[error("resource cap exceeded: {visited} structures visited (cap {cap}), completed n={completed}")]
    ResourceCap { visited: u64, cap: u64, completed: u32 },
}

/// Enumeration budget. The default cap matches desk scale; callers running
/// the large oracle grids raise it explicitly.
#[derive(Debug, Clone, Copy)]
pub struct BruteLimits {
    pub max_structures: u64,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits { max_structures: 100_000_000 }
    }
}

#[derive(Clone, Copy)]
struct Packing {
    row_bits: u32,
    left_bits: u32,
    left_offset: i32,
    tile_bits: u32,
}

impl Packing {
    fn for_problem(w: u32, n: u32) -> Self {
        let span = (n.max(1) - 1) * (w - 1); // max |left| in canonical form
        let row_bits = bits_for(n as u64);
        let left_bits = bits_for(2 * span as u64 + 1);
        Packing {
            row_bits,
            left_bits,
            left_offset: span as i32,
            tile_bits: row_bits + left_bits,
        }
    }

    fn fits_u128(&self, n: u32) -> bool {
        (self.tile_bits as u64) * n as u64 <= 128
    }

    #[inline]
    fn pack(&self, tiles: &[Tile]) -> u128 {
        let mut key = 0u128;
        for &t in tiles {
            key = (key << self.tile_bits)
                | ((t.row as u128) << self.left_bits)
                | (t.left + self.left_offset) as u128;
        }
        key
    }

    fn unpack(&self, mut key: u128, n: usize, out: &mut Vec<Tile>) {
        out.clear();
        let left_mask = (1u128 << self.left_bits) - 1;
        let row_mask = (1u128 << self.row_bits) - 1;
        for _ in 0..n {
            let left = (key & left_mask) as i32 - self.left_offset;
            let row = ((key >> self.left_bits) & row_mask) as u32;
            out.push(Tile { row, left });
            key >>= self.tile_bits;
        }
        out.reverse();
    }
}

fn bits_for(v: u64) -> u32 {
    64 - v.max(1).leading_zeros()
}

/// Multiply-xor mixer for packed keys; hashing dominates the oracle's
/// runtime, so the default SipHash is replaced by something cheap.
#[derive(Default)]
pub struct MixHasher(u64);

impl Hasher for MixHasher {
    #[inline]
    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            self.write_u64(u64::from_le_bytes(buf));
        }
    }

    #[inline]
    fn write_u64(&mut self, v: u64) {
        let mut x = self.0 ^ v.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        x ^= x >> 29;
        x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        self.0 = x ^ (x >> 32);
    }

    #[inline]
    fn write_u128(&mut self, v: u128) {
        self.write_u64(v as u64);
        self.write_u64((v >> 64) as u64);
    }

    #[inline]
    fn finish(&self) -> u64 {
        self.0
    }
}

pub(crate) type FastSet<T> = HashSet<T, BuildHasherDefault<MixHasher>>;

enum LevelSet {
    Packed(FastSet<u128>),
    Bytes(HashSet<Box<[u8]>>),
}

impl LevelSet {
    fn new(packed: bool) -> Self {
        if packed {
            LevelSet::Packed(FastSet::default())
        } else {
            LevelSet::Bytes(HashSet::new())
        }
    }

    fn len(&self) -> usize {
        match self {
            LevelSet::Packed(s) => s.len(),
            LevelSet::Bytes(s) => s.len(),
        }
    }
}

fn encode_bytes(tiles: &[Tile]) -> Box<[u8]> {
    let mut out = Vec::with_capacity(tiles.len() * 6);
    for t in tiles {
        out.extend_from_slice(&(t.row as u16).to_le_bytes());
        out.extend_from_slice(&t.left.to_le_bytes());
    }
    out.into_boxed_slice()
}

fn decode_bytes(bytes: &[u8]) -> Vec<Tile> {
    bytes
        .chunks_exact(6)
        .map(|c| Tile {
            row: u16::from_le_bytes([c[0], c[1]]) as u32,
            left: i32::from_le_bytes([c[2], c[3], c[4], c[5]]),
        })
        .collect()
}

/// Attach one tile to `parent` in every legal way, accumulating the
/// canonical children. Duplicate candidates are resolved by the set.
fn expand(w: u32, parent: &[Tile], scratch: &mut Vec<Tile>, next: &mut LevelSet, packing: &Packing) {
    let w = w as i32;
    for anchor in parent {
        for dr in [-1i32, 1] {
            let row = anchor.row as i32 + dr;
            for dl in -(w - 1)..w {
                let left = anchor.left + dl;
                if parent.iter().any(|t| t.row as i32 == row && (t.left - left).abs() < w) {
                    continue;
                }
                scratch.clear();
                if row < 0 {
                    scratch.push(Tile { row: 0, left });
                    scratch.extend(parent.iter().map(|t| Tile { row: t.row + 1, left: t.left }));
                } else {
                    scratch.extend_from_slice(parent);
                    scratch.push(Tile { row: row as u32, left });
                }
                scratch.sort_unstable();
                let min_left0 = scratch[0].left;
                if min_left0 != 0 {
                    for t in scratch.iter_mut() {
                        t.left -= min_left0;
                    }
                }
                match next {
                    LevelSet::Packed(s) => {
                        s.insert(packing.pack(scratch));
                    }
                    LevelSet::Bytes(s) => {
                        s.insert(encode_bytes(scratch));
                    }
                }
            }
        }
    }
}

struct GrowthResult {
    sizes: Vec<u64>,
    last: LevelSet,
}

fn run_growth(w: u32, n: u32, limits: &BruteLimits) -> Result<GrowthResult, BruteError> {
    let packing = Packing::for_problem(w, n);
    let packed = packing.fits_u128(n);
    let mut level = LevelSet::new(packed);
    let single = [Tile { row: 0, left: 0 }];
    match &mut level {
        LevelSet::Packed(s) => {
            s.insert(packing.pack(&single));
        }
        LevelSet::Bytes(s) => {
            s.insert(encode_bytes(&single));
        }
    }
    let mut sizes = vec![1u64];
    let mut visited = 1u64;
    let mut scratch = Vec::with_capacity(n as usize);
    let mut decode = Vec::with_capacity(n as usize);
    for size in 1..n {
        let mut next = LevelSet::new(packed);
        match &level {
            LevelSet::Packed(s) => {
                for &key in s.iter() {
                    packing.unpack(key, size as usize, &mut decode);
                    expand(w, &decode, &mut scratch, &mut next, &packing);
                }
            }
            LevelSet::Bytes(s) => {
                for key in s.iter() {
                    let tiles = decode_bytes(key);
                    expand(w, &tiles, &mut scratch, &mut next, &packing);
                }
            }
        }
        visited += next.len() as u64;
        if visited > limits.max_structures {
            return Err(BruteError::ResourceCap {
                visited,
                cap: limits.max_structures,
                completed: size,
            });
        }
        sizes.push(next.len() as u64);
        level = next; // previous level dropped here
    }
    Ok(GrowthResult { sizes, last: level })
}

/// Count flat structures of exactly `n` tiles of width `w`, up to
/// horizontal translation, by explicit construction.
pub fn count_flat(w: u32, n: u32, limits: &BruteLimits) -> Result<BigUint, BruteError> {
    Ok(count_flat_series(w, n, limits)?.pop().expect("n >= 1"))
}

/// The whole series a_1..a_n from one growth run.
pub fn count_flat_series(w: u32, n: u32, limits: &BruteLimits) -> Result<Vec<BigUint>, BruteError> {
    if w < 1 || n < 1 {
        return Err(BruteError::BadParams { w, n });
    }
    if w == 1 {
        return Ok(vec![BigUint::from(1u32); n as usize]);
    }
    let res = run_growth(w, n, limits)?;
    Ok(res.sizes.iter().map(|&s| BigUint::from(s)).collect())
}

/// Materialize every structure of exactly `n` tiles, sorted
/// lexicographically by tile sequence.
pub fn enumerate_flat(
    w: u32,
    n: u32,
    limits: &BruteLimits,
) -> Result<Vec<FlatStructure>, BruteError> {
    if w < 1 || n < 1 {
        return Err(BruteError::BadParams { w, n });
    }
    if w == 1 {
        let tiles = (0..n).map(|r| (r as i64, 0i64)).collect();
        return Ok(vec![FlatStructure::new(1, tiles).expect("stack is valid")]);
    }
    let res = run_growth(w, n, limits)?;
    let packing = Packing::for_problem(w, n);
    let mut out: Vec<FlatStructure> = Vec::with_capacity(res.last.len());
    match &res.last {
        LevelSet::Packed(s) => {
            let mut decode = Vec::new();
            for &key in s.iter() {
                packing.unpack(key, n as usize, &mut decode);
                out.push(FlatStructure::from_canonical_unchecked(w, decode.clone()));
            }
        }
        LevelSet::Bytes(s) => {
            for key in s.iter() {
                out.push(FlatStructure::from_canonical_unchecked(w, decode_bytes(key)));
            }
        }
    }
    out.sort_unstable_by(|a, b| a.tiles().cmp(b.tiles()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_counts() {
        let lim = BruteLimits::default();
        assert_eq!(count_flat(2, 3, &lim).unwrap(), BigUint::from(11u32));
        assert_eq!(count_flat(3, 3, &lim).unwrap(), BigUint::from(31u32));
        assert_eq!(count_flat(1, 4, &lim).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn known_larger_counts() {
        let lim = BruteLimits::default();
        assert_eq!(count_flat(2, 5, &lim).unwrap(), BigUint::from(186u32));
        assert_eq!(count_flat(10, 4, &lim).unwrap(), BigUint::from(11704u32));
        assert_eq!(count_flat(4, 6, &lim).unwrap(), BigUint::from(61271u32));
    }

    #[test]
    fn degenerate_widths() {
        let lim = BruteLimits::default();
        assert_eq!(count_flat_series(1, 5, &lim).unwrap(), vec![BigUint::from(1u32); 5]);
        assert_eq!(count_flat(7, 1, &lim).unwrap(), BigUint::from(1u32));
        assert_eq!(count_flat(7, 2, &lim).unwrap(), BigUint::from(13u32)); // 2w-1
    }

    #[test]
    fn cap_is_reported_not_silent() {
        // cap 10 admits levels 1 (1) and 2 (3); level 3 (11) crosses it
        let lim = BruteLimits { max_structures: 10 };
        let err = count_flat(2, 5, &lim).unwrap_err();
        assert!(matches!(err, BruteError::ResourceCap { completed: 2, cap: 10, .. }));
    }

    #[test]
    fn enumeration_is_sorted_valid_and_deduplicated() {
        let lim = BruteLimits::default();
        let all = enumerate_flat(2, 4, &lim).unwrap();
        assert_eq!(all.len(), 44);
        for s in &all {
            assert_eq!(s.validate(), Ok(()));
        }
        for pair in all.windows(2) {
            assert!(pair[0].tiles() < pair[1].tiles());
        }
    }

    #[test]
    fn pyramids_among_w2_n3() {
        let lim = BruteLimits::default();
        let all = enumerate_flat(2, 3, &lim).unwrap();
        let pyramids = all.iter().filter(|s| s.is_pyramid()).count();
        assert_eq!(pyramids, 10); // C(5, 2)
    }
}
