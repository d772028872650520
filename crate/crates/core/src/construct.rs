//! Constructions of perfect codes: cartesian lattices, the two-dimensional
//! horizontal/vertical families, the linear 2D family with its alternative
//! generator, cartesian products, one-dimension-up extensions (linear and
//! height-function), cyclic families, and cartesian sections.
//!
//! Every constructor re-verifies its postcondition on the result whenever
//! that is affordable, returning `Error::Internal` on violation; those
//! checks are theorems about the constructions, not input validation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{checked_pow, mod_inverse};
use crate::code::{circ_abs, Code, LinearCode, Params, Perfection, Word};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Cap on materialized word lists inside constructors.
const WORD_BUDGET: u128 = 1_000_000;
/// Cap on quadratic verification passes (pairwise distances, dual-path
/// section comparison).
const PAIR_ASSERT_BUDGET: usize = 4096;

/// A cartesian section: the code induced on the subtorus where the deleted
/// axes are near zero, with coordinates compressed to the kept axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub code: Code,
    /// Original 1-based axes surviving the projection, ascending.
    pub kept_axes: Vec<usize>,
}

fn perfect_or_err(c: &Code) -> Result<(i64, Perfection)> {
    let perf = c.is_perfect()?;
    if !perf.perfect {
        return Err(Error::NotPerfect(
            perf.failure.unwrap_or_else(|| "code is not perfect".into()),
        ));
    }
    let e = perf
        .e
        .ok_or_else(|| Error::Internal("perfect code without a radius".into()))?;
    Ok((e, perf))
}

fn side_and_t(e: i64, q: i64) -> Result<(i64, i64)> {
    let p = Params::new(1, e, q)?;
    Ok((p.side(), p.t()?))
}

/// The code generated by (2e+1)·identity: the product of n copies of
/// (2e+1)·Z_q.
pub fn cartesian_code(p: &Params) -> Result<LinearCode> {
    p.t()?;
    let gen = IntMatrix::identity(p.n).scaled(&BigInt::from(p.side()));
    LinearCode::new(p.q, gen)
}

fn two_dim_family(a: i64, h: &[i64], p: &Params, horizontal: bool) -> Result<Code> {
    if p.n != 2 {
        return Err(Error::InvalidParams(format!(
            "horizontal/vertical constructions are two-dimensional, got n = {}",
            p.n
        )));
    }
    let t = p.t()?;
    if h.len() as i64 != t {
        return Err(Error::InvalidParams(format!(
            "height function has {} values, needs t = {t}",
            h.len()
        )));
    }
    let m = p.side();
    let a = a.rem_euclid(p.q);
    let mut words = Vec::with_capacity((t * t) as usize);
    for (k, &hk) in h.iter().enumerate() {
        let hk = hk.rem_euclid(p.q);
        let row = a + m * k as i64;
        for s in 0..t {
            let free = hk + m * s;
            words.push(if horizontal { vec![free, row] } else { vec![row, free] });
        }
    }
    let code = Code::new(p.q, &words)?;
    if code.words().len() as i64 != t * t {
        return Err(Error::Internal("construction produced colliding words".into()));
    }
    debug_assert!(code.is_perfect().unwrap().perfect);
    Ok(code)
}

/// The perfect code {(h(k) + (2e+1)s, a + (2e+1)k) : k, s ∈ Z_t}; invariant
/// under the shift (2e+1, 0), so of type 1.
pub fn horizontal_code(a: i64, h: &[i64], p: &Params) -> Result<Code> {
    two_dim_family(a, h, p, true)
}

/// The reflection of `horizontal_code`: words (a + (2e+1)k, h(k) + (2e+1)s),
/// of type 2.
pub fn vertical_code(a: i64, h: &[i64], p: &Params) -> Result<Code> {
    two_dim_family(a, h, p, false)
}

fn lc_params(e: i64, q: i64) -> Result<(i64, i64, i64, i64)> {
    let (m, t) = side_and_t(e, q)?;
    if t < 2 {
        return Err(Error::InvalidParams(
            "the linear two-dimensional family needs t = q/(2e+1) > 1".into(),
        ));
    }
    let d1 = m.gcd(&t);
    Ok((m, t, d1, m / d1))
}

/// The linear perfect code of Z_q² generated by (2e+1, k·h₁) and
/// (0, 2e+1), where h₁ = (2e+1)/gcd(2e+1, t).
///
/// The parameter only matters mod d₁ = gcd(2e+1, t); the d₁ distinct values
/// exhaust the linear type-2 perfect codes of Z_q².
pub fn lc_code(e: i64, q: i64, k: i64) -> Result<LinearCode> {
    let (m, _, d1, h1) = lc_params(e, q)?;
    let k0 = k.rem_euclid(d1);
    let gen = IntMatrix::from_rows(&[vec![m, k0 * h1], vec![0, m]])?;
    let code = LinearCode::new(q, gen)?;
    debug_assert!(code.is_type(2, e).unwrap());
    Ok(code)
}

/// The lower-triangular generator [[ (2e+1)h₂, 0 ], [ (2e+1)k′, h₁d₂ ]]
/// for the same code as `lc_code(e, q, k)`, where d₂ = gcd(d₁, k),
/// h₂ = d₁/d₂ and k′ inverts k/d₂ mod h₂. Equality of the two spans is
/// re-verified before returning.
pub fn lc_alternative_generator(e: i64, q: i64, k: i64) -> Result<IntMatrix> {
    let (m, _, d1, h1) = lc_params(e, q)?;
    let k0 = k.rem_euclid(d1);
    let d2 = d1.gcd(&k0);
    let h2 = d1 / d2;
    let k1 = k0 / d2;
    let kp = mod_inverse(k1, h2)
        .ok_or_else(|| Error::Internal("k/d2 must be invertible mod d1/d2".into()))?;
    let n = IntMatrix::from_rows(&[vec![m * h2, 0], vec![m * kp, h1 * d2]])?;
    if LinearCode::new(q, n.clone())? != lc_code(e, q, k)? {
        return Err(Error::Internal(
            "alternative generator spans a different code".into(),
        ));
    }
    Ok(n)
}

/// Concatenation product: all words (c₁, c₂). Perfect (n₁+n₂, e, q) when
/// both operands are perfect with the same e and q.
pub fn cartesian_product(c1: &Code, c2: &Code) -> Result<Code> {
    if c1.q() != c2.q() {
        return Err(Error::InvalidParams(format!(
            "product operands live on different tori: q = {} and {}",
            c1.q(),
            c2.q()
        )));
    }
    let (e1, _) = perfect_or_err(c1)?;
    let (e2, _) = perfect_or_err(c2)?;
    if e1 != e2 {
        return Err(Error::InvalidParams(format!(
            "product operands have different radii: e = {e1} and {e2}"
        )));
    }
    let count = c1.words().len() as u128 * c2.words().len() as u128;
    if count > WORD_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "product would have {count} words, budget is {WORD_BUDGET}"
        )));
    }
    let mut words = Vec::with_capacity(count as usize);
    for w1 in c1.words() {
        for w2 in c2.words() {
            let mut w = Vec::with_capacity(w1.dim() + w2.dim());
            w.extend_from_slice(w1.coords());
            w.extend_from_slice(w2.coords());
            words.push(w);
        }
    }
    let code = Code::new(c1.q(), &words)?;
    if code.words().len() <= PAIR_ASSERT_BUDGET {
        let perf = code.is_perfect()?;
        if !perf.perfect || perf.e != Some(e1) {
            return Err(Error::Internal("product of perfect codes is not perfect".into()));
        }
    }
    Ok(code)
}

/// Product of two linear codes over the same torus: the block-diagonal
/// generator. Linearity is preserved regardless of perfection.
pub fn cartesian_product_linear(l1: &LinearCode, l2: &LinearCode) -> Result<LinearCode> {
    if l1.q() != l2.q() {
        return Err(Error::InvalidParams(format!(
            "product operands live on different tori: q = {} and {}",
            l1.q(),
            l2.q()
        )));
    }
    let (n1, n2) = (l1.dim(), l2.dim());
    let mut gen = IntMatrix::zero(n1 + n2, n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            gen.set(i, j, l1.gen()[(i, j)].clone());
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            gen.set(n1 + i, n1 + j, l2.gen()[(i, j)].clone());
        }
    }
    LinearCode::new(l1.q(), gen)
}

/// The subgroup {x ∈ Z_q^n : t·x ∈ C}, found by scanning the torus.
/// Always contains C. Refuses when q^n exceeds `max_cells`.
pub fn t_inverse(l: &LinearCode, t: i64, max_cells: u128) -> Result<Code> {
    if t < 1 {
        return Err(Error::InvalidParams("multiplier t must be positive".into()));
    }
    let q = l.q();
    let n = l.dim();
    let cells = checked_pow(q as u128, n as u32, "q^n")?;
    if cells > max_cells {
        return Err(Error::BudgetExceeded(format!(
            "scan over q^n = {cells} cells, budget is {max_cells}"
        )));
    }
    let mut set = BTreeSet::new();
    let mut cur = vec![0i64; n];
    let mut scaled = vec![0i64; n];
    loop {
        for (s, &c) in scaled.iter_mut().zip(&cur) {
            *s = t * c;
        }
        if l.contains(&scaled)? {
            set.insert(Word::reduced(&cur, q));
        }
        let mut k = n;
        loop {
            if k == 0 {
                let out = Code::from_set(q, n, set)?;
                debug_assert!(out.is_linear_set());
                return Ok(out);
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

/// One-dimension-up linear extension C × {0} + (x, 2e+1)·Z of a perfect
/// linear code C, for any x with t·x ∈ C. The result is a perfect
/// (n+1, e, q) code containing C × {0} as its last-coordinate-zero slice.
pub fn linear_construction(p: &Params, l: &LinearCode, x: &[i64]) -> Result<LinearCode> {
    if l.dim() != p.n || l.q() != p.q {
        return Err(Error::DimensionMismatch(format!(
            "code is {}-dimensional over Z_{}, parameters say ({}, {})",
            l.dim(),
            l.q(),
            p.n,
            p.q
        )));
    }
    if x.len() != p.n {
        return Err(Error::DimensionMismatch(format!(
            "extension word has length {}, code has dimension {}",
            x.len(),
            p.n
        )));
    }
    let t = p.t()?;
    let m = p.side();
    if l.cardinality()? != p.code_cardinality()? {
        return Err(Error::NotPerfect(format!(
            "input code has {} words, a perfect ({}, {}, {}) code has {}",
            l.cardinality()?,
            p.n,
            p.e,
            p.q,
            p.code_cardinality()?
        )));
    }
    if l.cardinality()? <= WORD_BUDGET {
        let perf = l.is_perfect()?;
        if !perf.perfect || perf.e != Some(p.e) {
            return Err(Error::NotPerfect(
                perf.failure.unwrap_or_else(|| "input code is not perfect".into()),
            ));
        }
    }
    let scaled: Vec<i64> = x
        .iter()
        .map(|&c| {
            t.checked_mul(c)
                .ok_or_else(|| Error::Overflow("t * x exceeds i64".into()))
        })
        .collect::<Result<_>>()?;
    if !l.contains(&scaled)? {
        return Err(Error::InvalidParams(
            "extension word is invalid: t * x is not a codeword".into(),
        ));
    }
    let base = l.gen().to_i64_rows().map_err(|_| {
        Error::Overflow("generator entries exceed i64; extension not supported".into())
    })?;
    let mut rows = Vec::with_capacity(p.n + 1);
    for g in base {
        let mut row = g;
        row.push(0);
        rows.push(row);
    }
    let mut last: Vec<i64> = x.to_vec();
    last.push(m);
    rows.push(last);
    let lt = LinearCode::from_generators(p.q, &rows)?;

    // t^{n+1} words, C × {0} inside, and last coordinates exactly (2e+1)Z_q:
    // together these force the zero-slice to equal C.
    let expected = checked_pow(t as u128, p.n as u32 + 1, "t^(n+1)")?;
    if lt.cardinality()? != expected {
        return Err(Error::Internal("extension has the wrong cardinality".into()));
    }
    for row in l.gen().to_i64_rows().unwrap() {
        let mut embedded = row;
        embedded.push(0);
        if !lt.contains(&embedded)? {
            return Err(Error::Internal("extension lost a base codeword".into()));
        }
    }
    let mut col_gcd = BigInt::from(0);
    for i in 0..=p.n {
        col_gcd = col_gcd.gcd(&lt.gen()[(i, p.n)]);
    }
    if col_gcd != BigInt::from(m) {
        return Err(Error::Internal("extension has a wrong last-coordinate span".into()));
    }
    if expected <= WORD_BUDGET {
        let perf = lt.is_perfect()?;
        if !perf.perfect || perf.e != Some(p.e) {
            return Err(Error::Internal("extension is not perfect".into()));
        }
    }
    Ok(lt)
}

/// The cyclic perfect (n, e, q) code generated by
/// ((2e+1)/t^{n−1}, …, (2e+1)/t, 2e+1). Exists exactly when t^{n−1}
/// divides 2e+1.
pub fn cyclic_family(p: &Params) -> Result<LinearCode> {
    let t = p.t()?;
    let m = p.side();
    let mut t_pow = 1i64;
    for _ in 1..p.n {
        t_pow = t_pow
            .checked_mul(t)
            .filter(|&v| v <= m)
            .ok_or_else(|| divisibility_err(p, t))?;
    }
    if m % t_pow != 0 {
        return Err(divisibility_err(p, t));
    }
    let mut row = Vec::with_capacity(p.n);
    let mut entry = m / t_pow;
    for _ in 0..p.n {
        row.push(entry);
        entry *= t;
    }
    let code = LinearCode::from_generators(p.q, &[row])?;
    let structure = code.group_structure()?;
    if !structure.is_cyclic() || structure.order() != p.code_cardinality()? {
        return Err(Error::Internal("cyclic generator has a wrong group structure".into()));
    }
    if code.cardinality()? <= WORD_BUDGET {
        let perf = code.is_perfect()?;
        if !perf.perfect || perf.e != Some(p.e) {
            return Err(Error::Internal("cyclic generator spans an imperfect code".into()));
        }
    }
    Ok(code)
}

fn divisibility_err(p: &Params, t: i64) -> Error {
    Error::InvalidParams(format!(
        "no cyclic perfect code: t^(n-1) = {t}^{} does not divide 2e+1 = {}",
        p.n - 1,
        p.side()
    ))
}

/// One-dimension-up extension by a height function: the words
/// (c, h(c) + (2e+1)k) over all codewords c and k ∈ Z_t. The result is
/// perfect, has t^{n+1} words, and is invariant under the last-axis shift
/// regardless of h, so it is standard of type n+1.
///
/// `h` assigns a height to each word of `c`, in the order of `c.words()`.
pub fn nonlinear_construction(c: &Code, h: &[i64]) -> Result<Code> {
    let (e, perf) = perfect_or_err(c)?;
    let (m, t) = side_and_t(e, c.q())?;
    if h.len() != c.words().len() {
        return Err(Error::InvalidParams(format!(
            "height function has {} values, code has {} words",
            h.len(),
            c.words().len()
        )));
    }
    let expected = (perf.cardinality as u128)
        .checked_mul(t as u128)
        .ok_or_else(|| Error::Overflow("t^(n+1) exceeds u128".into()))?;
    if expected > WORD_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "extension would have {expected} words, budget is {WORD_BUDGET}"
        )));
    }
    let mut words = Vec::with_capacity(expected as usize);
    for (w, &hv) in c.words().iter().zip(h) {
        let hv = hv.rem_euclid(c.q());
        for k in 0..t {
            let mut next = Vec::with_capacity(w.dim() + 1);
            next.extend_from_slice(w.coords());
            next.push(hv + m * k);
            words.push(next);
        }
    }
    let out = Code::new(c.q(), &words)?;
    if out.words().len() as u128 != expected {
        return Err(Error::Internal("extension produced colliding words".into()));
    }
    if !out.types(e)?.contains(&out.dim()) {
        return Err(Error::Internal("extension is not invariant under the new axis".into()));
    }
    if out.words().len() <= PAIR_ASSERT_BUDGET {
        let operf = out.is_perfect()?;
        if !operf.perfect || operf.e != Some(e) {
            return Err(Error::Internal("height extension is not perfect".into()));
        }
    }
    Ok(out)
}

/// The cartesian section at the given 1-based axes: codewords within
/// distance e of the subtorus where those coordinates vanish, projected
/// onto the remaining axes. The projection is injective and the image is
/// a perfect code of the same radius, both re-verified.
///
/// For a linear code invariant along every sectioned axis the section
/// equals the plain coordinate projection; when affordable this equality
/// is checked too.
pub fn section(c: &Code, axes: &BTreeSet<usize>) -> Result<Section> {
    let (e, _) = perfect_or_err(c)?;
    let n = c.dim();
    validate_axes(axes, n)?;
    let (_, t) = side_and_t(e, c.q())?;
    let kept: Vec<usize> = (1..=n).filter(|i| !axes.contains(i)).collect();
    let filtered: Vec<&Word> = c
        .words()
        .iter()
        .filter(|w| axes.iter().all(|&i| circ_abs(w.coords()[i - 1], c.q()) <= e))
        .collect();
    let expected = checked_pow(t as u128, kept.len() as u32, "t^(n-#I)")?;
    if filtered.len() as u128 != expected {
        return Err(Error::Internal(format!(
            "section caught {} words, expected {expected}",
            filtered.len()
        )));
    }
    let mut set = BTreeSet::new();
    for w in &filtered {
        let proj: Vec<i64> = kept.iter().map(|&i| w.coords()[i - 1]).collect();
        set.insert(Word::reduced(&proj, c.q()));
    }
    if set.len() != filtered.len() {
        return Err(Error::Internal("section projection is not injective".into()));
    }
    let code = Code::from_set(c.q(), kept.len(), set)?;
    let perf = code.is_perfect()?;
    if !perf.perfect || perf.e != Some(e) {
        return Err(Error::Internal("section is not perfect".into()));
    }
    if c.words().len() <= PAIR_ASSERT_BUDGET
        && c.is_linear_set()
        && axes.iter().all(|&i| c.types(e).map(|ty| ty.contains(&i)).unwrap_or(false))
    {
        let mut full = BTreeSet::new();
        for w in c.words() {
            let proj: Vec<i64> = kept.iter().map(|&i| w.coords()[i - 1]).collect();
            full.insert(Word::reduced(&proj, c.q()));
        }
        if full.len() != code.words().len()
            || !full.iter().zip(code.words()).all(|(a, b)| a == b)
        {
            return Err(Error::Internal(
                "section of an invariant linear code differs from its projection".into(),
            ));
        }
    }
    Ok(Section { code, kept_axes: kept })
}

/// Lattice-level section of a linear code: delete the sectioned columns.
/// Requires the code to be perfect and invariant along every sectioned
/// axis (the projection equals the section exactly then). Returns the
/// section and the kept 1-based axes.
pub fn section_linear(
    l: &LinearCode,
    e: i64,
    axes: &BTreeSet<usize>,
) -> Result<(LinearCode, Vec<usize>)> {
    let n = l.dim();
    validate_axes(axes, n)?;
    let (_, t) = side_and_t(e, l.q())?;
    if l.cardinality()? > WORD_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "cannot verify perfection of a code with {} words",
            l.cardinality()?
        )));
    }
    let perf = l.is_perfect()?;
    if !perf.perfect || perf.e != Some(e) {
        return Err(Error::NotPerfect(
            perf.failure.unwrap_or_else(|| "input code is not perfect".into()),
        ));
    }
    for &i in axes {
        if !l.is_type(i, e)? {
            return Err(Error::InvalidParams(format!(
                "linear sections need invariance along every sectioned axis; axis {i} fails"
            )));
        }
    }
    let mut cur = l.clone();
    for &i in axes.iter().rev() {
        cur = cur.delete_axis(i)?;
    }
    let kept: Vec<usize> = (1..=n).filter(|i| !axes.contains(i)).collect();
    let expected = checked_pow(t as u128, kept.len() as u32, "t^(n-#I)")?;
    if cur.cardinality()? != expected {
        return Err(Error::Internal("linear section has the wrong cardinality".into()));
    }
    let perf = cur.is_perfect()?;
    if !perf.perfect || perf.e != Some(e) {
        return Err(Error::Internal("linear section is not perfect".into()));
    }
    Ok((cur, kept))
}

fn validate_axes(axes: &BTreeSet<usize>, n: usize) -> Result<()> {
    if axes.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::InvalidParams(format!(
            "section axes must lie in 1..={n}"
        )));
    }
    if axes.len() >= n {
        return Err(Error::InvalidParams(
            "section must keep at least one axis".into(),
        ));
    }
    Ok(())
}
