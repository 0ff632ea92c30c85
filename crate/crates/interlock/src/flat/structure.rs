//! Explicit flat structures: placements of w x 1 tiles on integer grid rows.
//!
//! Tiles interlock only through vertical overlap: tiles in adjacent rows
//! that share at least one cell of horizontal extent are connected;
//! same-row contact is not a connection. Structures are canonicalized by
//! translation so rows start at 0 and the leftmost bottom-row tile sits
//! at left = 0 (the offset convention used throughout).

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("structure has no tiles")]
    Empty,
    #[error("rows are not contiguous from 0 (row {row} unoccupied)")]
    RowGap { row: u32 },
    #[error("tiles overlap in row {row}")]
    Overlap { row: u32 },
    #[error("structure is not connected")]
    Disconnected,
    #[error("not in canonical translation (leftmost bottom tile at {left}, expected 0)")]
    NotCanonical { left: i32 },
    #[error("malformed structure line: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub row: u32,
    pub left: i32,
}

/// An explicit flat structure of `w x 1` tiles, tiles sorted by (row, left).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatStructure {
    w: u32,
    tiles: Vec<Tile>,
}

impl FlatStructure {
    /// Build a structure from arbitrary tile placements, canonicalizing
    /// the translation. Fails if tiles overlap or the result is not
    /// connected.
    pub fn new(w: u32, tiles: Vec<(i64, i64)>) -> Result<Self, StructureError> {
        if tiles.is_empty() {
            return Err(StructureError::Empty);
        }
        let min_row = tiles.iter().map(|t| t.0).min().unwrap();
        let mut tiles: Vec<Tile> = tiles
            .into_iter()
            .map(|(r, l)| Tile { row: (r - min_row) as u32, left: l as i32 })
            .collect();
        tiles.sort_unstable();
        let min_left0 = tiles.iter().filter(|t| t.row == 0).map(|t| t.left).min().unwrap();
        for t in &mut tiles {
            t.left -= min_left0;
        }
        let s = FlatStructure { w, tiles };
        s.validate()?;
        Ok(s)
    }

    /// Wrap tiles that are already canonical and valid (used by the
    /// enumerator's decoder); validates in debug builds.
    pub(crate) fn from_canonical_unchecked(w: u32, tiles: Vec<Tile>) -> Self {
        let s = FlatStructure { w, tiles };
        debug_assert_eq!(s.validate(), Ok(()));
        s
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn n(&self) -> usize {
        self.tiles.len()
    }

    /// Tiles in (row, left) order.
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn height(&self) -> u32 {
        self.tiles.iter().map(|t| t.row).max().map_or(0, |r| r + 1)
    }

    /// Check every structural invariant: contiguous rows from 0, no
    /// same-row overlap, interlock connectivity, canonical translation,
    /// sorted tile order.
    pub fn validate(&self) -> Result<(), StructureError> {
        if self.tiles.is_empty() {
            return Err(StructureError::Empty);
        }
        let mut sorted = self.tiles.clone();
        sorted.sort_unstable();
        if sorted != self.tiles {
            return Err(StructureError::Parse("tiles out of order".into()));
        }
        let height = self.height();
        for row in 0..height {
            if !self.tiles.iter().any(|t| t.row == row) {
                return Err(StructureError::RowGap { row });
            }
        }
        let w = self.w as i32;
        for (i, a) in self.tiles.iter().enumerate() {
            for b in &self.tiles[i + 1..] {
                if a.row == b.row && (a.left - b.left).abs() < w {
                    return Err(StructureError::Overlap { row: a.row });
                }
            }
        }
        let min_left0 = self.tiles.iter().filter(|t| t.row == 0).map(|t| t.left).min().unwrap();
        if min_left0 != 0 {
            return Err(StructureError::NotCanonical { left: min_left0 });
        }
        if !self.is_connected() {
            return Err(StructureError::Disconnected);
        }
        Ok(())
    }

    fn overlaps(&self, a: &Tile, b: &Tile) -> bool {
        a.row.abs_diff(b.row) == 1 && (a.left - b.left).abs() < self.w as i32
    }

    fn is_connected(&self) -> bool {
        let n = self.tiles.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.overlaps(&self.tiles[i], &self.tiles[j]) {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// Horizontal offsets b_i in bottom-left-to-top-right order; b_0 = 0
    /// by the canonical translation.
    pub fn offsets(&self) -> Vec<i64> {
        self.tiles.iter().map(|t| t.left as i64).collect()
    }

    /// A pyramid has exactly one bottom-row tile and every higher tile
    /// rests on (overlaps) some tile one row below.
    pub fn is_pyramid(&self) -> bool {
        if self.tiles.iter().filter(|t| t.row == 0).count() != 1 {
            return false;
        }
        self.tiles.iter().all(|t| {
            t.row == 0
                || self
                    .tiles
                    .iter()
                    .any(|b| b.row + 1 == t.row && (b.left - t.left).abs() < self.w as i32)
        })
    }

    /// Line format: `w=<w> tiles=(r,l);(r,l);...`
    pub fn to_line(&self) -> String {
        let mut out = format!("w={} tiles=", self.w);
        for (i, t) in self.tiles.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            write!(out, "({},{})", t.row, t.left).unwrap();
        }
        out
    }

    pub fn from_line(line: &str) -> Result<Self, StructureError> {
        let line = line.trim();
        let rest = line
            .strip_prefix("w=")
            .ok_or_else(|| StructureError::Parse("missing 'w=' prefix".into()))?;
        let (w_str, tiles_part) = rest
            .split_once(" tiles=")
            .ok_or_else(|| StructureError::Parse("missing ' tiles=' separator".into()))?;
        let w: u32 = w_str
            .parse()
            .map_err(|_| StructureError::Parse(format!("bad width {w_str:?}")))?;
        let mut tiles = Vec::new();
        for part in tiles_part.split(';') {
            let body = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| StructureError::Parse(format!("bad tile {part:?}")))?;
            let (r, l) = body
                .split_once(',')
                .ok_or_else(|| StructureError::Parse(format!("bad tile {part:?}")))?;
            let row: i64 =
                r.parse().map_err(|_| StructureError::Parse(format!("bad row {r:?}")))?;
            let left: i64 =
                l.parse().map_err(|_| StructureError::Parse(format!("bad left {l:?}")))?;
            tiles.push((row, left));
        }
        Self::new(w, tiles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_offset_examples() {
        // n=4, w=3 with offsets (0, -1, 2, 4)
        let s = FlatStructure::new(3, vec![(0, 1), (1, 0), (1, 3), (2, 5)]).unwrap();
        assert_eq!(s.offsets(), vec![0, -1, 2, 4]);
        assert!(s.is_pyramid());
        // n=4, w=4 with offsets (0, -2, 2, 5)
        let s = FlatStructure::new(4, vec![(0, 2), (1, 0), (1, 4), (2, 7)]).unwrap();
        assert_eq!(s.offsets(), vec![0, -2, 2, 5]);
        assert!(s.is_pyramid());
    }

    #[test]
    fn single_tile() {
        let s = FlatStructure::new(5, vec![(7, -3)]).unwrap();
        assert_eq!(s.offsets(), vec![0]);
        assert!(s.is_pyramid());
        assert_eq!(s.height(), 1);
    }

    #[test]
    fn side_by_side_on_one_base_is_pyramid() {
        // w=2: base at (0,0); two tiles above at lefts -1 and +1
        let s = FlatStructure::new(2, vec![(0, 0), (1, -1), (1, 1)]).unwrap();
        assert!(s.is_pyramid());
        // two bottom tiles is not a pyramid
        let s = FlatStructure::new(2, vec![(0, 0), (0, 2), (1, 1)]).unwrap();
        assert!(!s.is_pyramid());
    }

    #[test]
    fn end_to_end_tiles_do_not_connect() {
        // same-row contact only: not a structure
        assert_eq!(
            FlatStructure::new(2, vec![(0, 0), (0, 2)]),
            Err(StructureError::Disconnected)
        );
    }

    #[test]
    fn overlap_rejected() {
        assert_eq!(
            FlatStructure::new(3, vec![(0, 0), (0, 2), (1, 1)]),
            Err(StructureError::Overlap { row: 0 })
        );
    }

    #[test]
    fn canonicalization_shifts_to_bottom_left_tile() {
        let s = FlatStructure::new(2, vec![(5, 10), (6, 9)]).unwrap();
        assert_eq!(s.tiles(), &[Tile { row: 0, left: 0 }, Tile { row: 1, left: -1 }]);
    }

    #[test]
    fn line_format_round_trip() {
        let s = FlatStructure::new(3, vec![(0, 1), (1, 0), (1, 3), (2, 5)]).unwrap();
        let line = s.to_line();
        assert_eq!(line, "w=3 tiles=(0,0);(1,-1);(1,2);(2,4)");
        assert_eq!(FlatStructure::from_line(&line).unwrap(), s);
    }
}
