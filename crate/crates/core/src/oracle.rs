//! Brute-force enumeration of every perfect code for small parameters.
//!
//! This is an exact-cover search over the torus: walk the cells in
//! lexicographic order, and for the first uncovered cell branch over every
//! ball that could cover it. Each solution is a tiling by cubes of side
//! 2e+1, i.e. a perfect code. Intended as the ground-truth oracle that the
//! structural results are checked against, so it favors obviousness over
//! speed.

use std::collections::BTreeSet;

use crate::code::{Code, Params, Word};
use crate::error::{Error, Result};

struct Census {
    q: i64,
    cells: usize,
    offsets: Vec<Vec<i64>>, // {-e..e}^n, lexicographic
    coords: Vec<Vec<i64>>,  // decoded cell coordinates
    covered: Vec<bool>,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
}

impl Census {
    fn index(&self, coords: &[i64]) -> usize {
        let mut idx = 0usize;
        for &c in coords {
            idx = idx * self.q as usize + c.rem_euclid(self.q) as usize;
        }
        idx
    }

    fn ball(&self, center: usize) -> Vec<usize> {
        let c = &self.coords[center];
        self.offsets
            .iter()
            .map(|off| {
                let shifted: Vec<i64> = c.iter().zip(off).map(|(&a, &b)| a + b).collect();
                self.index(&shifted)
            })
            .collect()
    }

    fn search(&mut self, from: usize) {
        let Some(first) = (from..self.cells).find(|&i| !self.covered[i]) else {
            self.solutions.push(self.chosen.clone());
            return;
        };
        // every ball covering `first` has its center at first - offset
        let candidates: Vec<usize> = {
            let c = &self.coords[first];
            self.offsets
                .iter()
                .map(|off| {
                    let center: Vec<i64> = c.iter().zip(off).map(|(&a, &b)| a - b).collect();
                    self.index(&center)
                })
                .collect()
        };
        for center in candidates {
            let cells = self.ball(center);
            if cells.iter().any(|&i| self.covered[i]) {
                continue;
            }
            for &i in &cells {
                self.covered[i] = true;
            }
            self.chosen.push(center);
            self.search(first + 1);
            self.chosen.pop();
            for &i in &cells {
                self.covered[i] = false;
            }
        }
    }
}

/// All perfect codes with the given parameters, in ascending word-set
/// order. Refuses when q^n exceeds `max_cells`.
pub fn oracle_all_perfect(p: &Params, max_cells: u128) -> Result<Vec<Code>> {
    p.t()?;
    let cells = p.cells()?;
    if cells > max_cells {
        return Err(Error::BudgetExceeded(format!(
            "census over q^n = {cells} cells, budget is {max_cells}"
        )));
    }
    let cells = cells as usize;
    let mut offsets = Vec::new();
    let mut cur = vec![-p.e; p.n];
    loop {
        offsets.push(cur.clone());
        let mut k = p.n;
        let mut done = true;
        while k > 0 {
            k -= 1;
            cur[k] += 1;
            if cur[k] <= p.e {
                done = false;
                break;
            }
            cur[k] = -p.e;
        }
        if done {
            break;
        }
    }
    let mut coords = Vec::with_capacity(cells);
    let mut c = vec![0i64; p.n];
    for _ in 0..cells {
        coords.push(c.clone());
        let mut k = p.n;
        while k > 0 {
            k -= 1;
            c[k] += 1;
            if c[k] < p.q {
                break;
            }
            c[k] = 0;
        }
    }
    let mut census = Census {
        q: p.q,
        cells,
        offsets,
        coords,
        covered: vec![false; cells],
        chosen: Vec::new(),
        solutions: Vec::new(),
    };
    census.search(0);
    let mut out = Vec::with_capacity(census.solutions.len());
    for sol in &census.solutions {
        let mut set = BTreeSet::new();
        for &center in sol {
            set.insert(Word::reduced(&census.coords[center], p.q));
        }
        out.push(Code::from_set(p.q, p.n, set)?);
    }
    out.sort_unstable();
    out.dedup();
    if out.len() != census.solutions.len() {
        return Err(Error::Internal("census found a tiling twice".into()));
    }
    Ok(out)
}
