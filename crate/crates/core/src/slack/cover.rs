use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::slack::matrix::{BitGrid, SupportMatrix};

/// Caps for the exact cover search: it enumerates all maximal rectangles by
/// closing row subsets, so both the 1-entry count and the number of
/// occupied rows must stay tiny. Covers `n` up to 4 with room to spare.
pub const MAX_COVER_ONES: u64 = 200;
pub const MAX_COVER_ROWS: usize = 20;

/// A combinatorial rectangle given by row and column indices into a matrix.
/// Rows and columns are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Small fixed-universe bitset over the 1-entries of the grid.
#[derive(Clone, PartialEq, Eq, Hash)]
struct CellSet {
    words: Vec<u64>,
}

impl CellSet {
    fn empty(universe: usize) -> Self {
        CellSet {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn union_count(&self, other: &CellSet) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    fn or_assign(&mut self, other: &CellSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn first_missing(&self, universe: usize) -> Option<usize> {
        (0..universe).find(|&i| !self.contains(i))
    }
}

/// All maximal 1-rectangles of the grid. Every row subset is closed to a
/// concept pair (rows sharing a column set, the exact columns they share);
/// distinct column sets give distinct maximal rectangles.
fn maximal_rectangles(grid: &BitGrid, occupied: &[usize]) -> Vec<CoverRectangle> {
    let col_words = grid.cols().div_ceil(64);
    let row_mask: Vec<Vec<u64>> = occupied
        .iter()
        .map(|&r| {
            let mut mask = vec![0u64; col_words];
            for c in 0..grid.cols() {
                if grid.get(r, c) {
                    mask[c / 64] |= 1 << (c % 64);
                }
            }
            mask
        })
        .collect();

    let superset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & y == *y);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for bits in 1u32..(1 << occupied.len()) {
        let mut cols = vec![u64::MAX; col_words];
        for (i, mask) in row_mask.iter().enumerate() {
            if bits >> i & 1 == 1 {
                for (c, m) in cols.iter_mut().zip(mask) {
                    *c &= m;
                }
            }
        }
        if cols.iter().all(|&w| w == 0) {
            continue;
        }
        // Close: take every row containing these columns, then re-intersect.
        let closure: Vec<usize> = (0..occupied.len())
            .filter(|&i| superset(&row_mask[i], &cols))
            .collect();
        let mut closed_cols = vec![u64::MAX; col_words];
        for &i in &closure {
            for (c, m) in closed_cols.iter_mut().zip(&row_mask[i]) {
                *c &= m;
            }
        }
        if !seen.insert(closed_cols.clone()) {
            continue;
        }
        let rows: Vec<usize> = (0..occupied.len())
            .filter(|&i| superset(&row_mask[i], &closed_cols))
            .map(|i| occupied[i])
            .collect();
        let cols: Vec<usize> = (0..grid.cols())
            .filter(|&c| closed_cols[c / 64] >> (c % 64) & 1 == 1)
            .collect();
        out.push(CoverRectangle { rows, cols });
    }
    out
}

/// The minimum number of 1-monochromatic rectangles covering every 1-entry,
/// found by exact set cover (branch and bound) over all maximal rectangles.
/// Returns the size and one optimal cover. Only feasible for tiny matrices;
/// see [`MAX_COVER_ONES`] and [`MAX_COVER_ROWS`].
pub fn exact_min_cover_grid(grid: &BitGrid) -> Result<(usize, Vec<CoverRectangle>)> {
    let ones: Vec<(usize, usize)> = grid.iter_ones().collect();
    if ones.is_empty() {
        return Ok((0, Vec::new()));
    }
    if ones.len() as u64 > MAX_COVER_ONES {
        return Err(Error::CapExceeded {
            what: "exact_min_cover 1-entries",
            actual: ones.len() as u64,
            limit: MAX_COVER_ONES,
        });
    }
    let occupied: Vec<usize> = (0..grid.rows())
        .filter(|&r| grid.row_count_ones(r) > 0)
        .collect();
    if occupied.len() > MAX_COVER_ROWS {
        return Err(Error::CapExceeded {
            what: "exact_min_cover occupied rows",
            actual: occupied.len() as u64,
            limit: MAX_COVER_ROWS as u64,
        });
    }

    let rects = maximal_rectangles(grid, &occupied);
    let universe = ones.len();
    let cell_index: std::collections::HashMap<(usize, usize), usize> = ones
        .iter()
        .enumerate()
        .map(|(i, &cell)| (cell, i))
        .collect();
    let rect_cells: Vec<CellSet> = rects
        .iter()
        .map(|rect| {
            let mut cs = CellSet::empty(universe);
            for &r in &rect.rows {
                for &c in &rect.cols {
                    cs.insert(cell_index[&(r, c)]);
                }
            }
            cs
        })
        .collect();

    // Greedy first for an upper bound.
    let greedy = greedy_over_cells(universe, &rect_cells).expect("maximal rectangles cover");
    let mut best: Vec<usize> = greedy;
    let mut chosen: Vec<usize> = Vec::new();
    let covered = CellSet::empty(universe);
    let max_rect = rect_cells.iter().map(|c| c.count()).max().unwrap_or(1).max(1);
    search(
        universe,
        &rect_cells,
        &covered,
        &mut chosen,
        &mut best,
        max_rect,
    );
    best.sort_unstable();
    Ok((best.len(), best.iter().map(|&i| rects[i].clone()).collect()))
}

fn greedy_over_cells(universe: usize, rect_cells: &[CellSet]) -> Option<Vec<usize>> {
    let mut covered = CellSet::empty(universe);
    let mut picked = Vec::new();
    while (covered.count() as usize) < universe {
        let mut best_gain = 0;
        let mut best_i = None;
        for (i, cells) in rect_cells.iter().enumerate() {
            let gain = covered.union_count(cells) - covered.count();
            if gain > best_gain {
                best_gain = gain;
                best_i = Some(i);
            }
        }
        let i = best_i?;
        covered.or_assign(&rect_cells[i]);
        picked.push(i);
    }
    Some(picked)
}

fn search(
    universe: usize,
    rect_cells: &[CellSet],
    covered: &CellSet,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
    max_rect: u32,
) {
    let uncovered = universe as u32 - covered.count();
    if uncovered == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let lower_bound = chosen.len() + uncovered.div_ceil(max_rect) as usize;
    if lower_bound >= best.len() {
        return;
    }
    // Branch on the uncovered cell with the fewest covering rectangles.
    let pivot = (0..universe)
        .filter(|&i| !covered.contains(i))
        .min_by_key(|&i| rect_cells.iter().filter(|cs| cs.contains(i)).count())
        .expect("an uncovered cell exists");
    let mut options: Vec<usize> = (0..rect_cells.len())
        .filter(|&i| rect_cells[i].contains(pivot))
        .collect();
    options.sort_by_key(|&i| std::cmp::Reverse(covered.union_count(&rect_cells[i])));
    for i in options {
        let mut next = covered.clone();
        next.or_assign(&rect_cells[i]);
        chosen.push(i);
        search(universe, rect_cells, &next, chosen, best, max_rect);
        chosen.pop();
    }
}

/// [`exact_min_cover_grid`] applied to a support matrix.
pub fn exact_min_rectangle_cover(m: &SupportMatrix) -> Result<(usize, Vec<CoverRectangle>)> {
    exact_min_cover_grid(m.support())
}

/// Greedy maximum-new-coverage subcover of the 1-entries from a fixed pool
/// of rectangles; ties go to the earliest rectangle. The pool must be
/// 1-monochromatic and must jointly cover every 1-entry.
pub fn greedy_rectangle_cover(m: &SupportMatrix, rects: &[CoverRectangle]) -> Result<usize> {
    let grid = m.support();
    let ones: Vec<(usize, usize)> = grid.iter_ones().collect();
    if ones.is_empty() {
        return Ok(0);
    }
    let universe = ones.len();
    let cell_index: std::collections::HashMap<(usize, usize), usize> = ones
        .iter()
        .enumerate()
        .map(|(i, &cell)| (cell, i))
        .collect();
    let mut rect_cells = Vec::with_capacity(rects.len());
    for rect in rects {
        let mut cs = CellSet::empty(universe);
        for &r in &rect.rows {
            for &c in &rect.cols {
                match cell_index.get(&(r, c)) {
                    Some(&i) => cs.insert(i),
                    None => return Err(Error::RectangleOnZero { row: r, col: c }),
                }
            }
        }
        rect_cells.push(cs);
    }

    let mut covered = CellSet::empty(universe);
    let mut picked = 0usize;
    while (covered.count() as usize) < universe {
        let mut best_gain = 0;
        let mut best_i = None;
        for (i, cells) in rect_cells.iter().enumerate() {
            let gain = covered.union_count(cells) - covered.count();
            if gain > best_gain {
                best_gain = gain;
                best_i = Some(i);
            }
        }
        match best_i {
            Some(i) => {
                covered.or_assign(&rect_cells[i]);
                picked += 1;
            }
            None => {
                let missing = covered.first_missing(universe).expect("a cell is uncovered");
                let (row, col) = ones[missing];
                return Err(Error::Uncovered { row, col });
            }
        }
    }
    Ok(picked)
}
