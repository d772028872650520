//! Words, codes, and lattice codes on the torus Z_q^n, with the maximum
//! metric and the exact perfection test.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::checked_pow;
use crate::error::{Error, Result};
use crate::matrix::{hnf, q_inverse, snf, solve_left_upper, IntMatrix};

/// Parameter triple (n, e, q): dimension, radius, alphabet size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: usize,
    pub e: i64,
    pub q: i64,
}

impl Params {
    pub fn new(n: usize, e: i64, q: i64) -> Result<Params> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension n must be at least 1".into()));
        }
        if e < 0 {
            return Err(Error::InvalidParams("radius e must be nonnegative".into()));
        }
        if q < 1 {
            return Err(Error::InvalidParams("alphabet size q must be positive".into()));
        }
        let side = (2i64)
            .checked_mul(e)
            .and_then(|v| v.checked_add(1))
            .ok_or_else(|| Error::Overflow("2e+1 exceeds i64".into()))?;
        if side > q {
            return Err(Error::InvalidParams(format!(
                "ball diameter 2e+1 = {side} exceeds the torus size q = {q}"
            )));
        }
        Ok(Params { n, e, q })
    }

    /// Cube side 2e+1.
    pub fn side(&self) -> i64 {
        2 * self.e + 1
    }

    /// t = q / (2e+1); errors when q is not a multiple of the cube side.
    pub fn t(&self) -> Result<i64> {
        let side = self.side();
        if self.q % side != 0 {
            return Err(Error::InvalidParams(format!(
                "q = {} is not a multiple of 2e+1 = {side}: no perfect code exists",
                self.q
            )));
        }
        Ok(self.q / side)
    }

    /// Number of torus cells q^n.
    pub fn cells(&self) -> Result<u128> {
        checked_pow(self.q as u128, self.n as u32, "q^n")
    }

    /// Cardinality t^n of any perfect code with these parameters.
    pub fn code_cardinality(&self) -> Result<u128> {
        checked_pow(self.t()? as u128, self.n as u32, "t^n")
    }
}

/// Distance of residue `x` to 0 on the circle Z_q.
pub fn circ_abs(x: i64, q: i64) -> i64 {
    debug_assert!(q >= 1);
    let r = x.rem_euclid(q);
    r.min(q - r)
}

fn circ_abs_wide(x: i128, q: i64) -> i64 {
    let r = x.rem_euclid(q as i128) as i64;
    r.min(q - r)
}

/// Maximum metric on Z_q^n: the largest circular coordinate difference.
pub fn chebyshev_distance(x: &[i64], y: &[i64], q: i64) -> Result<i64> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "distance between words of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    if q < 1 {
        return Err(Error::InvalidParams("alphabet size q must be positive".into()));
    }
    Ok(x.iter()
        .zip(y)
        .map(|(&a, &b)| circ_abs_wide(a as i128 - b as i128, q))
        .max()
        .unwrap())
}

/// Distance of a word to the all-zero word.
pub fn word_norm(x: &[i64], q: i64) -> i64 {
    x.iter().map(|&a| circ_abs(a, q)).max().unwrap_or(0)
}

/// A point of Z_q^n. Constructors reduce coordinates into [0, q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i64>);

impl Word {
    pub fn reduced(coords: &[i64], q: i64) -> Word {
        Word(coords.iter().map(|&c| c.rem_euclid(q)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Isomorphism type of a finite abelian group as an invariant-factor chain
/// (trivial factors dropped, each entry dividing the next).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianType {
    chain: Vec<i64>,
}

impl AbelianType {
    pub fn trivial() -> AbelianType {
        AbelianType { chain: Vec::new() }
    }

    /// Canonical type of the product of cyclic groups Z_f for the given
    /// factors (order does not matter).
    pub fn from_factors(factors: &[i64]) -> Result<AbelianType> {
        if factors.iter().any(|&f| f < 1) {
            return Err(Error::InvalidParams("group factors must be positive".into()));
        }
        let mut v: Vec<i64> = factors.to_vec();
        loop {
            let mut changed = false;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if v[i] == 0 || v[j] % v[i] == 0 {
                        continue;
                    }
                    let g = num_integer::gcd(v[i], v[j]);
                    let l = (v[i] as i128 / g as i128) * v[j] as i128;
                    let l = i64::try_from(l)
                        .map_err(|_| Error::Overflow("group exponent exceeds i64".into()))?;
                    v[i] = g;
                    v[j] = l;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        v.sort_unstable();
        v.retain(|&f| f > 1);
        Ok(AbelianType { chain: v })
    }

    /// Invariant factors, ascending, each dividing the next; empty = trivial.
    pub fn chain(&self) -> &[i64] {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.iter().map(|&d| d as u128).product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.chain.len() <= 1
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "Z1");
        }
        for (i, d) in self.chain.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

impl Serialize for AbelianType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcome of the perfection test, with the quantities that decide it.
///
/// `e` is the packing radius (defined when the code has at least two words,
/// or one word on an odd torus). For an imperfect code, `failure` names the
/// violated condition; the full-scan variant also provides an `uncovered`
/// witness cell.
#[derive(Debug, Clone, Serialize)]
pub struct Perfection {
    pub perfect: bool,
    pub e: Option<i64>,
    pub cardinality: u64,
    pub min_distance: Option<i64>,
    pub uncovered: Option<Word>,
    pub failure: Option<String>,
}

/// Visit all of Z_q^n in lexicographic order.
pub(crate) fn visit_cells(q: i64, n: usize, f: &mut impl FnMut(&[i64])) {
    let mut cur = vec![0i64; n];
    loop {
        f(&cur);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < q {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// A code given by its words: a finite nonempty subset of Z_q^n.
///
/// Words are stored reduced and sorted, so equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code {
    q: i64,
    n: usize,
    words: Vec<Word>,
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            q: i64,
            n: usize,
            words: &'a [Word],
        }
        Repr { q: self.q, n: self.n, words: &self.words }.serialize(s)
    }
}

impl Code {
    pub fn new(q: i64, words: &[Vec<i64>]) -> Result<Code> {
        if q < 1 {
            return Err(Error::InvalidParams("alphabet size q must be positive".into()));
        }
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        let n = words[0].len();
        if n == 0 {
            return Err(Error::DimensionMismatch("words must have at least one coordinate".into()));
        }
        if words.iter().any(|w| w.len() != n) {
            return Err(Error::DimensionMismatch("words of mixed lengths".into()));
        }
        let mut reduced: Vec<Word> = words.iter().map(|w| Word::reduced(w, q)).collect();
        reduced.sort_unstable();
        for pair in reduced.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateWord(pair[0].coords().to_vec()));
            }
        }
        Ok(Code { q, n, words: reduced })
    }

    pub(crate) fn from_set(q: i64, n: usize, set: BTreeSet<Word>) -> Result<Code> {
        if set.is_empty() {
            return Err(Error::EmptyCode);
        }
        debug_assert!(set.iter().all(|w| w.dim() == n));
        Ok(Code {
            q,
            n,
            words: set.into_iter().collect(),
        })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Words in ascending lexicographic order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Smallest pairwise distance; needs at least two words.
    pub fn minimum_distance(&self) -> Result<i64> {
        if self.words.len() < 2 {
            return Err(Error::InvalidParams(
                "minimum distance needs at least two words".into(),
            ));
        }
        let mut best = i64::MAX;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let d = chebyshev_distance(a.coords(), b.coords(), self.q)?;
                best = best.min(d);
            }
        }
        Ok(best)
    }

    /// Largest radius with pairwise-disjoint balls: floor((dist-1)/2).
    pub fn packing_radius(&self) -> Result<i64> {
        Ok((self.minimum_distance()? - 1) / 2)
    }

    /// Largest distance from any cell to the code. Full q^n scan.
    pub fn covering_radius(&self) -> Result<i64> {
        self.cells_checked()?;
        let mut worst = 0i64;
        let mut err = None;
        visit_cells(self.q, self.n, &mut |cell| {
            if err.is_some() {
                return;
            }
            match self.distance_to_code(cell) {
                Ok(d) => worst = worst.max(d),
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(worst),
        }
    }

    fn distance_to_code(&self, cell: &[i64]) -> Result<i64> {
        let mut best = i64::MAX;
        for w in &self.words {
            best = best.min(chebyshev_distance(cell, w.coords(), self.q)?);
        }
        Ok(best)
    }

    fn cells_checked(&self) -> Result<u128> {
        let cells = checked_pow(self.q as u128, self.n as u32, "q^n")?;
        if cells > usize::MAX as u128 {
            return Err(Error::Overflow("q^n exceeds the address space".into()));
        }
        Ok(cells)
    }

    /// Exact perfection decision without scanning the torus.
    ///
    /// The packing radius e makes all balls disjoint, so the balls tile
    /// if and only if #C * (2e+1)^n = q^n; this decides perfection in
    /// O(#C^2) time. Single-word codes tile exactly when q is odd.
    pub fn is_perfect(&self) -> Result<Perfection> {
        let card = self.words.len() as u64;
        if self.words.len() == 1 {
            return Ok(if self.q % 2 == 1 {
                Perfection {
                    perfect: true,
                    e: Some((self.q - 1) / 2),
                    cardinality: card,
                    min_distance: None,
                    uncovered: None,
                    failure: None,
                }
            } else {
                Perfection {
                    perfect: false,
                    e: None,
                    cardinality: card,
                    min_distance: None,
                    uncovered: None,
                    failure: Some("a single ball cannot tile an even-sided torus".into()),
                }
            });
        }
        let dist = self.minimum_distance()?;
        let e = (dist - 1) / 2;
        let side = 2 * e + 1;
        let lhs = (card as u128)
            .checked_mul(checked_pow(side as u128, self.n as u32, "(2e+1)^n")?)
            .ok_or_else(|| Error::Overflow("#C * (2e+1)^n exceeds u128".into()))?;
        let rhs = checked_pow(self.q as u128, self.n as u32, "q^n")?;
        let perfect = lhs == rhs;
        Ok(Perfection {
            perfect,
            e: Some(e),
            cardinality: card,
            min_distance: Some(dist),
            uncovered: None,
            failure: if perfect {
                None
            } else {
                Some(format!(
                    "sphere-packing count: #C * (2e+1)^n = {lhs} but q^n = {rhs}"
                ))
            },
        })
    }

    /// Perfection by full covering scan; agrees with `is_perfect` and
    /// additionally produces an uncovered witness cell when imperfect.
    pub fn is_perfect_full(&self) -> Result<Perfection> {
        let mut report = self.is_perfect()?;
        self.cells_checked()?;
        let e = match report.e {
            Some(e) => e,
            None => {
                // single word, even q: the antipodal cell is a witness
                let shifted: Vec<i64> = self.words[0]
                    .coords()
                    .iter()
                    .map(|&c| c + self.q / 2)
                    .collect();
                report.uncovered = Some(Word::reduced(&shifted, self.q));
                return Ok(report);
            }
        };
        let mut uncovered: Option<Word> = None;
        let mut err = None;
        visit_cells(self.q, self.n, &mut |cell| {
            if uncovered.is_some() || err.is_some() {
                return;
            }
            match self.distance_to_code(cell) {
                Ok(d) => {
                    if d > e {
                        uncovered = Some(Word::reduced(cell, self.q));
                    }
                }
                Err(er) => err = Some(er),
            }
        });
        if let Some(er) = err {
            return Err(er);
        }
        match (&uncovered, report.perfect) {
            (Some(_), true) | (None, false) => {
                return Err(Error::Internal(
                    "sphere-count and covering-scan perfection tests disagree".into(),
                ))
            }
            _ => {}
        }
        report.uncovered = uncovered;
        Ok(report)
    }

    /// Decode: the unique codeword within the packing radius of `x`.
    pub fn error_correcting(&self, x: &[i64]) -> Result<Word> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "received word has length {}, code has dimension {}",
                x.len(),
                self.n
            )));
        }
        let e = self.packing_radius()?;
        let mut best: Option<(i64, &Word)> = None;
        for w in &self.words {
            let d = chebyshev_distance(x, w.coords(), self.q)?;
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, w));
            }
        }
        let (d, w) = best.unwrap();
        if d <= e {
            Ok(w.clone())
        } else {
            Err(Error::Undecodable(format!(
                "nearest codeword is at distance {d}, beyond the packing radius {e}"
            )))
        }
    }

    /// Axes i (1-based) on which the code is invariant under the shift by
    /// (2e+1) * unit_i.
    pub fn types(&self, e: i64) -> Result<BTreeSet<usize>> {
        if e < 0 {
            return Err(Error::InvalidParams("radius e must be nonnegative".into()));
        }
        let side = 2 * e + 1;
        let mut out = BTreeSet::new();
        for i in 0..self.n {
            let invariant = self.words.iter().all(|w| {
                let mut c = w.coords().to_vec();
                c[i] += side;
                self.contains(&Word::reduced(&c, self.q))
            });
            if invariant {
                out.insert(i + 1);
            }
        }
        Ok(out)
    }

    /// A code is standard when it has at least one type axis.
    pub fn is_standard(&self, e: i64) -> Result<bool> {
        Ok(!self.types(e)?.is_empty())
    }

    /// Largest type axis; errors on non-standard codes.
    pub fn tau(&self, e: i64) -> Result<usize> {
        self.types(e)?.into_iter().next_back().ok_or(Error::NotStandard)
    }

    /// Whether the word set is a subgroup of Z_q^n.
    ///
    /// Cheap test: the words always lie inside the lattice they generate,
    /// so the set is a subgroup exactly when that lattice has the same
    /// cardinality.
    pub fn is_linear_set(&self) -> bool {
        let rows: Vec<Vec<i64>> = self.words.iter().map(|w| w.coords().to_vec()).collect();
        let Ok(lat) = LinearCode::from_generators(self.q, &rows) else {
            return false;
        };
        match lat.cardinality() {
            Ok(card) => card == self.words.len() as u128,
            Err(_) => false,
        }
    }
}

/// A linear code: the image in Z_q^n of an integer lattice containing qZ^n,
/// held as the canonical Hermite-form basis of that lattice.
///
/// Two values compare equal exactly when they are the same code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearCode {
    q: i64,
    gen: IntMatrix,
}

impl Serialize for LinearCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            q: i64,
            gen: &'a IntMatrix,
        }
        Repr { q: self.q, gen: &self.gen }.serialize(s)
    }
}

impl LinearCode {
    /// Wrap a square generator matrix whose rows span a lattice containing
    /// qZ^n (equivalently, q * M^-1 is integral). The basis is
    /// canonicalized, so any basis of the same lattice yields an equal value.
    pub fn new(q: i64, gen: IntMatrix) -> Result<LinearCode> {
        if !gen.is_square() {
            return Err(Error::DimensionMismatch("generator matrix must be square".into()));
        }
        q_inverse(&gen, q)?; // validates q >= 1, nonsingularity, integrality
        let canon = hnf(&gen).h;
        Ok(LinearCode { q, gen: canon })
    }

    /// Span of arbitrarily many generator rows together with qZ^n.
    pub fn from_generators(q: i64, rows: &[Vec<i64>]) -> Result<LinearCode> {
        let m = IntMatrix::from_rows(rows)?;
        LinearCode::from_generator_matrix(q, &m)
    }

    pub fn from_generator_matrix(q: i64, m: &IntMatrix) -> Result<LinearCode> {
        if q < 1 {
            return Err(Error::InvalidParams("alphabet size q must be positive".into()));
        }
        let n = m.cols();
        let qi = IntMatrix::identity(n).scaled(&BigInt::from(q));
        let stacked = IntMatrix::vstack(&[m, &qi])?;
        let h = hnf(&stacked).h;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            rows.push(h.row(i).to_vec());
        }
        let gen = IntMatrix::from_bigint_rows(rows)?;
        debug_assert!(gen.is_upper_triangular());
        debug_assert!((0..n).all(|i| !gen[(i, i)].is_zero()));
        Ok(LinearCode { q, gen })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical upper-triangular basis of the underlying lattice.
    pub fn gen(&self) -> &IntMatrix {
        &self.gen
    }

    /// Lattice determinant (positive: the basis is in Hermite form).
    pub fn lattice_det(&self) -> BigInt {
        self.gen.diagonal().iter().product()
    }

    /// Number of codewords q^n / det.
    pub fn cardinality(&self) -> Result<u128> {
        let cells = checked_pow(self.q as u128, self.dim() as u32, "q^n")?;
        let det = u128::try_from(&self.lattice_det())
            .map_err(|_| Error::Overflow("lattice determinant exceeds u128".into()))?;
        debug_assert_eq!(cells % det, 0);
        Ok(cells / det)
    }

    /// q * M^-1: a relation matrix presenting the code as an abelian group.
    pub fn relation_matrix(&self) -> Result<IntMatrix> {
        q_inverse(&self.gen, self.q)
    }

    /// Isomorphism type of the code as a group (Smith form of the
    /// relation matrix).
    pub fn group_structure(&self) -> Result<AbelianType> {
        let rel = self.relation_matrix()?;
        let chain = snf(&rel).d.diagonal();
        let mut factors = Vec::with_capacity(chain.len());
        for v in chain {
            factors.push(
                i64::try_from(&v).map_err(|_| Error::Overflow("invariant factor exceeds i64".into()))?,
            );
        }
        AbelianType::from_factors(&factors)
    }

    /// Lattice membership of a word (any integer lift).
    pub fn contains(&self, w: &[i64]) -> Result<bool> {
        if w.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "word has length {}, code has dimension {}",
                w.len(),
                self.dim()
            )));
        }
        let v: Vec<BigInt> = w.iter().map(|&c| BigInt::from(c)).collect();
        Ok(solve_left_upper(&self.gen, &v).is_some())
    }

    /// Whether the code is invariant under the shift by (2e+1) * unit_axis
    /// (axis is 1-based).
    pub fn is_type(&self, axis: usize, e: i64) -> Result<bool> {
        if axis == 0 || axis > self.dim() {
            return Err(Error::InvalidParams(format!(
                "axis {axis} out of range 1..={}",
                self.dim()
            )));
        }
        if e < 0 {
            return Err(Error::InvalidParams("radius e must be nonnegative".into()));
        }
        let mut w = vec![0i64; self.dim()];
        w[axis - 1] = 2 * e + 1;
        self.contains(&w)
    }

    pub fn types(&self, e: i64) -> Result<BTreeSet<usize>> {
        (1..=self.dim())
            .filter_map(|axis| match self.is_type(axis, e) {
                Ok(true) => Some(Ok(axis)),
                Ok(false) => None,
                Err(err) => Some(Err(err)),
            })
            .collect()
    }

    pub fn tau(&self, e: i64) -> Result<usize> {
        self.types(e)?.into_iter().next_back().ok_or(Error::NotStandard)
    }

    /// Visit every codeword once, reduced into [0, q).
    ///
    /// Words are the combinations sum_i c_i * row_i with
    /// 0 <= c_i < q / diag_i; cost is O(#C * n) additions.
    pub fn visit_words(&self, f: &mut impl FnMut(&[i64])) -> Result<()> {
        let n = self.dim();
        let rows = self.gen.to_i64_rows().map_err(|_| {
            Error::Overflow("generator entries exceed i64; expansion not supported".into())
        })?;
        let mut counts = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let d = row[i];
            debug_assert!(d > 0 && self.q % d == 0);
            counts.push(self.q / d);
        }
        let mut acc = vec![0i64; n];
        let mut reduced = vec![0i64; n];
        visit_combinations(&rows, &counts, 0, &mut acc, &mut reduced, self.q, f);
        Ok(())
    }

    /// Materialize the words; refuses when the code has more than
    /// `max_words` of them.
    pub fn expand(&self, max_words: u128) -> Result<Code> {
        let card = self.cardinality()?;
        if card > max_words {
            return Err(Error::BudgetExceeded(format!(
                "code has {card} words, budget is {max_words}"
            )));
        }
        let mut set = BTreeSet::new();
        self.visit_words(&mut |w| {
            set.insert(Word::reduced(w, self.q));
        })?;
        if set.len() as u128 != card {
            return Err(Error::Internal("expansion produced a wrong word count".into()));
        }
        Code::from_set(self.q, self.dim(), set)
    }

    /// Minimum distance = minimum nonzero norm (the code is a group).
    pub fn minimum_distance(&self) -> Result<i64> {
        if self.cardinality()? < 2 {
            return Err(Error::InvalidParams(
                "minimum distance needs at least two words".into(),
            ));
        }
        let mut best = i64::MAX;
        self.visit_words(&mut |w| {
            if w.iter().any(|&c| c != 0) {
                best = best.min(word_norm(w, self.q));
            }
        })?;
        Ok(best)
    }

    /// Exact perfection decision via minimum norm and the sphere count.
    pub fn is_perfect(&self) -> Result<Perfection> {
        let card = self.cardinality()?;
        let card_u64 =
            u64::try_from(card).map_err(|_| Error::Overflow("cardinality exceeds u64".into()))?;
        if card == 1 {
            return Ok(if self.q % 2 == 1 {
                Perfection {
                    perfect: true,
                    e: Some((self.q - 1) / 2),
                    cardinality: 1,
                    min_distance: None,
                    uncovered: None,
                    failure: None,
                }
            } else {
                Perfection {
                    perfect: false,
                    e: None,
                    cardinality: 1,
                    min_distance: None,
                    uncovered: None,
                    failure: Some("a single ball cannot tile an even-sided torus".into()),
                }
            });
        }
        let dist = self.minimum_distance()?;
        let e = (dist - 1) / 2;
        let side = 2 * e + 1;
        let lhs = card
            .checked_mul(checked_pow(side as u128, self.dim() as u32, "(2e+1)^n")?)
            .ok_or_else(|| Error::Overflow("#C * (2e+1)^n exceeds u128".into()))?;
        let rhs = checked_pow(self.q as u128, self.dim() as u32, "q^n")?;
        let perfect = lhs == rhs;
        Ok(Perfection {
            perfect,
            e: Some(e),
            cardinality: card_u64,
            min_distance: Some(dist),
            uncovered: None,
            failure: if perfect {
                None
            } else {
                Some(format!(
                    "sphere-packing count: #C * (2e+1)^n = {lhs} but q^n = {rhs}"
                ))
            },
        })
    }

    /// Coordinate projection deleting the given 1-based axis.
    ///
    /// For a code of type `axis` this is its section at that axis.
    pub fn delete_axis(&self, axis: usize) -> Result<LinearCode> {
        if axis == 0 || axis > self.dim() {
            return Err(Error::InvalidParams(format!(
                "axis {axis} out of range 1..={}",
                self.dim()
            )));
        }
        let m = self.gen.delete_col(axis - 1)?;
        LinearCode::from_generator_matrix(self.q, &m)
    }
}

fn visit_combinations(
    rows: &[Vec<i64>],
    counts: &[i64],
    level: usize,
    acc: &mut Vec<i64>,
    reduced: &mut Vec<i64>,
    q: i64,
    f: &mut impl FnMut(&[i64]),
) {
    if level == rows.len() {
        for (r, &a) in reduced.iter_mut().zip(acc.iter()) {
            *r = a.rem_euclid(q);
        }
        f(reduced);
        return;
    }
    for step in 0..counts[level] {
        visit_combinations(rows, counts, level + 1, acc, reduced, q, f);
        if step + 1 < counts[level] {
            for (a, &g) in acc.iter_mut().zip(rows[level].iter()) {
                *a += g;
            }
        }
    }
    // undo this level's additions
    let total = counts[level] - 1;
    for (a, &g) in acc.iter_mut().zip(rows[level].iter()) {
        *a -= g * total;
    }
}
