//! Structure theory of linear perfect codes: associated permutations and
//! the ordering isometry, perfect generator matrices with certificates,
//! the two-dimensional and maximal-regime parametrizations, admissible
//! group structures, closed-form class counts, and existence predicates.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{checked_pow, divisors, factorize, is_prime, partitions_with_parts_at_most, sigma0};
use crate::code::{AbelianType, LinearCode, Params};
use crate::construct::{lc_code, section_linear};
use crate::error::{Error, Result};
use crate::isometry::{apply_isometry_linear, Isometry};
use crate::matrix::{
    bidiagonal_reduction, hnf, invariant_chain, reduce_upper, solve_left_upper, IntMatrix,
};

/// Cap on code expansions used for verification.
const WORD_BUDGET: u128 = 1_000_000;
/// Cap on total expanded words across a whole enumeration.
const ENUMERATION_VERIFY_BUDGET: u128 = 10_000_000;

/// The axis-removal order of a perfect linear code, together with the
/// intermediate sections (each paired with its surviving original axes).
#[derive(Debug, Clone, Serialize)]
pub struct PermutationRecord {
    /// Original 1-based axes: entry i is the invariant axis removed at
    /// step i. A code is ordered when this reads (n, n-1, ..., 1).
    pub perm: Vec<usize>,
    pub sections: Vec<(LinearCode, Vec<usize>)>,
}

fn check_perfect_linear(p: &Params, l: &LinearCode) -> Result<()> {
    if l.dim() != p.n || l.q() != p.q {
        return Err(Error::DimensionMismatch(format!(
            "code is {}-dimensional over Z_{}, parameters say ({}, {})",
            l.dim(),
            l.q(),
            p.n,
            p.q
        )));
    }
    let card = l.cardinality()?;
    if card != p.code_cardinality()? {
        return Err(Error::NotPerfect(format!(
            "code has {card} words, a perfect ({}, {}, {}) code has {}",
            p.n,
            p.e,
            p.q,
            p.code_cardinality()?
        )));
    }
    if card <= WORD_BUDGET {
        let perf = l.is_perfect()?;
        if !perf.perfect || perf.e != Some(p.e) {
            return Err(Error::NotPerfect(
                perf.failure.unwrap_or_else(|| "code is not perfect".into()),
            ));
        }
    }
    Ok(())
}

/// The permutation associated with a perfect linear code: repeatedly take
/// the largest invariant axis and pass to the section there. Every step is
/// guaranteed an invariant axis; its absence is reported as an internal
/// inconsistency.
pub fn associated_permutation(p: &Params, l: &LinearCode) -> Result<PermutationRecord> {
    check_perfect_linear(p, l)?;
    let mut perm = Vec::with_capacity(p.n);
    let mut sections = Vec::new();
    let mut cur = l.clone();
    // original axis labels of cur's coordinates
    let mut kept: Vec<usize> = (1..=p.n).collect();
    loop {
        let types = cur.types(p.e)?;
        let Some(&tau_local) = types.iter().next_back() else {
            return Err(Error::Internal(
                "a perfect linear code must be invariant along some axis".into(),
            ));
        };
        perm.push(kept[tau_local - 1]);
        if cur.dim() == 1 {
            break;
        }
        let (next, _) = section_linear(&cur, p.e, &BTreeSet::from([tau_local]))?;
        kept.remove(tau_local - 1);
        cur = next;
        sections.push((cur.clone(), kept.clone()));
    }
    Ok(PermutationRecord { perm, sections })
}

/// The coordinate permutation θ sending the i-th removed axis to position
/// n+1-i, so that θ(C) is ordered. Verified by re-deriving the permutation
/// of the moved code.
pub fn ordering_permutation(p: &Params, l: &LinearCode) -> Result<Isometry> {
    let rec = associated_permutation(p, l)?;
    let n = p.n;
    let mut perm = vec![0usize; n];
    for (i, &axis) in rec.perm.iter().enumerate() {
        perm[axis - 1] = n - i;
    }
    let theta = Isometry::new(&perm, &vec![false; n])?;
    let moved = apply_isometry_linear(&theta, l)?;
    let expect: Vec<usize> = (1..=n).rev().collect();
    if associated_permutation(p, &moved)?.perm != expect {
        return Err(Error::Internal("ordering isometry failed to order the code".into()));
    }
    Ok(theta)
}

/// Verdict on a candidate generator matrix, with a multiplier certificate
/// (A, B) satisfying A·M = q·B when it is one: A upper triangular with
/// diagonal t, B unitriangular.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixPerfection {
    pub perfect: bool,
    pub certificate: Option<(IntMatrix, IntMatrix)>,
    /// First violated condition, when not perfect.
    pub failing: Option<String>,
}

fn not_perfect(msg: String) -> MatrixPerfection {
    MatrixPerfection { perfect: false, certificate: None, failing: Some(msg) }
}

/// Decide whether M generates a perfect code from shape alone: M must be
/// upper triangular with diagonal 2e+1, and t times each row must lie in
/// the span mod q of the rows below it. Membership is decided exactly by
/// a triangular solve over the Hermite basis of that span, which also
/// yields the certificate.
pub fn is_perfect_matrix(m: &IntMatrix, e: i64, q: i64) -> Result<MatrixPerfection> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("perfection test needs a square matrix".into()));
    }
    let n = m.rows();
    let p = Params::new(n, e, q)?;
    let t = p.t()?;
    let side = BigInt::from(p.side());
    if !m.is_upper_triangular() {
        return Ok(not_perfect("matrix is not upper triangular".into()));
    }
    if m.diagonal().iter().any(|d| *d != side) {
        return Ok(not_perfect(format!("diagonal is not constant 2e+1 = {}", p.side())));
    }
    let tb = BigInt::from(t);
    let qb = BigInt::from(q);
    let mut a = IntMatrix::zero(n, n);
    let mut b = IntMatrix::zero(n, n);
    for i in (0..n).rev() {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n - 1 - i + n);
        for j in i + 1..n {
            rows.push(m.row(j).to_vec());
        }
        for k in 0..n {
            let mut r = vec![BigInt::from(0); n];
            r[k] = qb.clone();
            rows.push(r);
        }
        let stacked = IntMatrix::from_bigint_rows(rows)?;
        let res = hnf(&stacked);
        let basis =
            IntMatrix::from_bigint_rows((0..n).map(|r| res.h.row(r).to_vec()).collect())?;
        let target: Vec<BigInt> = m.row(i).iter().map(|v| v * &tb).collect();
        let Some(w) = solve_left_upper(&basis, &target) else {
            return Ok(not_perfect(format!(
                "t times row {} is outside the span mod q of the rows below it",
                i + 1
            )));
        };
        let mut padded = vec![BigInt::from(0); stacked.rows()];
        padded[..n].clone_from_slice(&w);
        let coeffs = IntMatrix::from_bigint_rows(vec![padded])?.mul(&res.u)?;
        a.set(i, i, tb.clone());
        for j in i + 1..n {
            a.set(i, j, -coeffs[(0, j - i - 1)].clone());
        }
        for k in 0..n {
            b.set(i, k, coeffs[(0, n - 1 - i + k)].clone());
        }
    }
    if a.mul(m)? != b.scaled(&qb) {
        return Err(Error::Internal("certificate identity A*M = q*B failed".into()));
    }
    debug_assert!(b.diagonal().iter().all(|d| *d == BigInt::from(1)));
    Ok(MatrixPerfection { perfect: true, certificate: Some((a, b)), failing: None })
}

/// The reduced perfect generator matrix of an ordered perfect linear code:
/// the Hermite basis with every off-diagonal entry brought into [-e, e].
/// Re-verified to span the same code and pass the perfection test.
pub fn perfect_generator_matrix(p: &Params, l: &LinearCode) -> Result<IntMatrix> {
    check_perfect_linear(p, l)?;
    let side = BigInt::from(p.side());
    if l.gen().diagonal().iter().any(|d| *d != side) {
        return Err(Error::NotOrdered(
            "basis diagonal is not constant 2e+1; apply the ordering permutation first".into(),
        ));
    }
    let mut m = l.gen().clone();
    reduce_upper(&mut m, &side, p.e);
    let eb = BigInt::from(p.e);
    for i in 0..p.n {
        for j in i + 1..p.n {
            if m[(i, j)].clone().abs() > eb {
                return Err(Error::Internal("reduction left an oversized entry".into()));
            }
        }
    }
    if LinearCode::new(p.q, m.clone())? != *l {
        return Err(Error::Internal("reduction changed the spanned code".into()));
    }
    let mp = is_perfect_matrix(&m, p.e, p.q)?;
    if !mp.perfect {
        return Err(Error::Internal(
            "ordered perfect code yielded a non-perfect generator matrix".into(),
        ));
    }
    Ok(m)
}

/// Whether (n, e, q) is maximal: (2e+1)^(n-1) divides t. In that regime
/// every reduced triangular matrix with diagonal 2e+1 generates a perfect
/// code and the code count attains its upper bound.
pub fn is_maximal(p: &Params) -> Result<bool> {
    let t = p.t()?;
    Ok(match checked_pow(p.side() as u128, (p.n - 1) as u32, "(2e+1)^(n-1)") {
        Ok(v) => (t as u128) % v == 0,
        Err(_) => false,
    })
}

/// One Γ-equivalence class of generator matrices: all members share the
/// invariant chain, the canonical reduced representative, and the group
/// structure dual to the chain.
#[derive(Debug, Clone, Serialize)]
pub struct GammaClass {
    pub chain: Vec<i64>,
    pub canonical: IntMatrix,
    pub structure: AbelianType,
    pub members: Vec<LinearCode>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderedMaximalReport {
    pub params: Params,
    pub total: u64,
    /// Whether every member's minimum distance was re-checked by expansion.
    pub verified: bool,
    pub classes: Vec<GammaClass>,
}

/// Enumerate every ordered perfect code of a maximal parameter set by
/// walking all (2e+1)^(n(n-1)/2) reduced matrices, grouped into
/// isomorphism classes by the invariant chain of the matrix.
///
/// Along the way this re-proves, instance by instance: each matrix passes
/// the perfection test, the spans are pairwise distinct, and each group
/// structure equals the chain (q/d_n, ..., q/d_1).
pub fn enumerate_ordered_maximal(p: &Params, max_matrices: u128) -> Result<OrderedMaximalReport> {
    if !is_maximal(p)? {
        return Err(Error::InvalidParams(format!(
            "({}, {}, {}) is not maximal: (2e+1)^(n-1) does not divide t",
            p.n, p.e, p.q
        )));
    }
    let slots = p.n * (p.n - 1) / 2;
    let total = checked_pow(p.side() as u128, slots as u32, "(2e+1)^(n(n-1)/2)")?;
    if total > max_matrices {
        return Err(Error::BudgetExceeded(format!(
            "enumeration over {total} matrices, budget is {max_matrices}"
        )));
    }
    let verify = total
        .checked_mul(p.code_cardinality()?)
        .is_some_and(|v| v <= ENUMERATION_VERIFY_BUDGET);
    let mut offs = vec![-p.e; slots];
    let mut seen: BTreeSet<LinearCode> = BTreeSet::new();
    let mut groups: BTreeMap<Vec<i64>, Vec<(IntMatrix, LinearCode)>> = BTreeMap::new();
    loop {
        let mut m = IntMatrix::diag_i64(&vec![p.side(); p.n]);
        let mut slot = 0;
        for i in 0..p.n {
            for j in i + 1..p.n {
                m.set(i, j, BigInt::from(offs[slot]));
                slot += 1;
            }
        }
        let mp = is_perfect_matrix(&m, p.e, p.q)?;
        if !mp.perfect {
            return Err(Error::Internal(
                "a reduced matrix failed the perfection test in the maximal regime".into(),
            ));
        }
        let code = LinearCode::new(p.q, m.clone())?;
        if verify {
            let perf = code.is_perfect()?;
            if !perf.perfect || perf.e != Some(p.e) {
                return Err(Error::Internal("an enumerated code is not perfect".into()));
            }
        }
        if !seen.insert(code.clone()) {
            return Err(Error::Internal("two reduced matrices span the same code".into()));
        }
        let mut chain = Vec::with_capacity(p.n);
        for d in invariant_chain(&m) {
            chain.push(
                i64::try_from(&d)
                    .map_err(|_| Error::Overflow("invariant factor exceeds i64".into()))?,
            );
        }
        groups.entry(chain).or_default().push((m, code));

        let mut k = slots;
        let mut done = true;
        while k > 0 {
            k -= 1;
            offs[k] += 1;
            if offs[k] <= p.e {
                done = false;
                break;
            }
            offs[k] = -p.e;
        }
        if done {
            break;
        }
    }
    if seen.len() as u128 != total {
        return Err(Error::Internal("enumeration lost codes".into()));
    }
    let mut classes = Vec::new();
    for (chain, mut members) in groups {
        let canonical = bidiagonal_reduction(&members[0].0, p.e)?;
        let dual: Vec<i64> = chain.iter().map(|d| p.q / d).collect();
        let structure = AbelianType::from_factors(&dual)?;
        for (_, code) in &members {
            if code.group_structure()? != structure {
                return Err(Error::Internal(
                    "group structure does not match the dual of the invariant chain".into(),
                ));
            }
        }
        members.sort_by(|a, b| a.1.cmp(&b.1));
        classes.push(GammaClass {
            chain,
            canonical,
            structure,
            members: members.into_iter().map(|(_, c)| c).collect(),
        });
    }
    Ok(OrderedMaximalReport { params: *p, total: total as u64, verified: verify, classes })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoDimCode {
    pub k: i64,
    pub code: LinearCode,
    pub structure: AbelianType,
}

/// An isomorphism class of the 2D family, keyed by gcd(k, d1).
#[derive(Debug, Clone, Serialize)]
pub struct IsomorphismClass2D {
    pub key: i64,
    pub structure: AbelianType,
    pub members: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoDimReport {
    pub e: i64,
    pub q: i64,
    pub d1: i64,
    pub codes: Vec<TwoDimCode>,
    /// Parameter pairs {k, -k mod d1}: the isometry classes.
    pub isometry_classes: Vec<BTreeSet<i64>>,
    pub isomorphism_classes: Vec<IsomorphismClass2D>,
}

/// The complete parametrization of linear type-2 perfect codes of Z_q²:
/// exactly d1 = gcd(2e+1, t) codes, one per parameter k mod d1, with
/// isometry classes {k, -k} and isomorphism classes keyed by gcd(k, d1).
pub fn enumerate_2d(e: i64, q: i64) -> Result<TwoDimReport> {
    let p = Params::new(2, e, q)?;
    let t = p.t()?;
    if t < 2 {
        return Err(Error::InvalidParams(
            "the linear two-dimensional family needs t = q/(2e+1) > 1".into(),
        ));
    }
    let d1 = p.side().gcd(&t);
    debug_assert!(d1 % 2 == 1);
    let mut codes = Vec::with_capacity(d1 as usize);
    let mut distinct = BTreeSet::new();
    for k in 0..d1 {
        let code = lc_code(e, q, k)?;
        distinct.insert(code.clone());
        codes.push(TwoDimCode { k, code, structure: structure_2d(e, q, k)? });
    }
    if distinct.len() as i64 != d1 {
        return Err(Error::Internal("the 2D parametrization is not injective".into()));
    }
    let mut isometry_classes = Vec::new();
    let mut used = vec![false; d1 as usize];
    for k in 0..d1 {
        if used[k as usize] {
            continue;
        }
        let mate = (d1 - k) % d1;
        used[k as usize] = true;
        used[mate as usize] = true;
        isometry_classes.push(BTreeSet::from([k, mate]));
    }
    if isometry_classes.len() as i64 != (d1 + 1) / 2 {
        return Err(Error::Internal("isometry class count is off".into()));
    }
    let mut by_key: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for k in 0..d1 {
        by_key.entry(d1.gcd(&k)).or_default().push(k);
    }
    if by_key.len() as u64 != sigma0(d1) {
        return Err(Error::Internal("isomorphism class count is off".into()));
    }
    let mut isomorphism_classes = Vec::new();
    for (key, members) in by_key {
        let structure = structure_2d(e, q, members[0])?;
        for &k in &members[1..] {
            if structure_2d(e, q, k)? != structure {
                return Err(Error::Internal(
                    "codes with equal gcd key have different structures".into(),
                ));
            }
        }
        isomorphism_classes.push(IsomorphismClass2D { key, structure, members });
    }
    Ok(TwoDimReport { e, q, d1, codes, isometry_classes, isomorphism_classes })
}

/// Group structure of the 2D family member: Z_{t/h2} × Z_{t·h2} with
/// h2 = d1/gcd(d1, k). Cross-checked against the Smith form of the code.
pub fn structure_2d(e: i64, q: i64, k: i64) -> Result<AbelianType> {
    let p = Params::new(2, e, q)?;
    let t = p.t()?;
    if t < 2 {
        return Err(Error::InvalidParams(
            "the linear two-dimensional family needs t = q/(2e+1) > 1".into(),
        ));
    }
    let d1 = p.side().gcd(&t);
    let k0 = k.rem_euclid(d1);
    let h2 = d1 / d1.gcd(&k0);
    let predicted = AbelianType::from_factors(&[t / h2, t * h2])?;
    let actual = lc_code(e, q, k)?.group_structure()?;
    if predicted != actual {
        return Err(Error::Internal(format!(
            "predicted structure {predicted} but the code is {actual}"
        )));
    }
    Ok(predicted)
}

/// The group structures realizable by perfect (n, e, q) codes.
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibleReport {
    pub structures: BTreeSet<AbelianType>,
    /// True when the parameter set falls in a fully characterized regime
    /// (n ≤ 2, maximal, or cyclic); otherwise `structures` is only a
    /// certified-constructible lower bound.
    pub complete: bool,
}

fn divisor_chains(
    cands: &[i64],
    prev: i64,
    remaining: usize,
    target: u128,
    cur: &mut Vec<i64>,
    out: &mut BTreeSet<AbelianType>,
) -> Result<()> {
    if remaining == 0 {
        if target == 1 {
            out.insert(AbelianType::from_factors(cur)?);
        }
        return Ok(());
    }
    for &d in cands {
        if d % prev != 0 || target % d as u128 != 0 {
            continue;
        }
        match checked_pow(d as u128, remaining as u32, "divisor chain bound") {
            Ok(v) if v <= target => {}
            _ => continue,
        }
        cur.push(d);
        divisor_chains(cands, d, remaining - 1, target / d as u128, cur, out)?;
        cur.pop();
    }
    Ok(())
}

/// Exact in three regimes: n ≤ 2 (divisor formula), maximal (chains with
/// product t^n whose top divides q), and cyclic pairs (every chain with
/// product t^n). Elsewhere the result is the set realized by cartesian
/// products of lines and 2D family members, flagged incomplete.
pub fn admissible_structures(p: &Params) -> Result<AdmissibleReport> {
    let t = p.t()?;
    if p.n == 1 {
        let mut structures = BTreeSet::new();
        structures.insert(AbelianType::from_factors(&[t])?);
        return Ok(AdmissibleReport { structures, complete: true });
    }
    let d1 = p.side().gcd(&t);
    if p.n == 2 {
        let mut structures = BTreeSet::new();
        for d in divisors(d1) {
            structures.insert(AbelianType::from_factors(&[t / d, t * d])?);
        }
        return Ok(AdmissibleReport { structures, complete: true });
    }
    let target = checked_pow(t as u128, p.n as u32, "t^n")?;
    if is_maximal(p)? {
        let mut structures = BTreeSet::new();
        divisor_chains(&divisors(p.q), 1, p.n, target, &mut Vec::new(), &mut structures)?;
        return Ok(AdmissibleReport { structures, complete: true });
    }
    let cyclic_pair = match checked_pow(t as u128, (p.n - 1) as u32, "t^(n-1)") {
        Ok(v) => (p.side() as u128) % v == 0,
        Err(_) => false,
    };
    if cyclic_pair {
        let tn = i64::try_from(target)
            .map_err(|_| Error::Overflow("t^n exceeds i64; cannot enumerate chains".into()))?;
        let mut structures = BTreeSet::new();
        divisor_chains(&divisors(tn), 1, p.n, target, &mut Vec::new(), &mut structures)?;
        return Ok(AdmissibleReport { structures, complete: true });
    }
    // products of single axes (factor t) and 2D family members (t/d, t*d)
    let mut by_axes: Vec<BTreeSet<Vec<i64>>> = vec![BTreeSet::new(); p.n + 1];
    by_axes[0].insert(Vec::new());
    for used in 0..p.n {
        let prefixes = by_axes[used].clone();
        for pre in prefixes {
            let mut one = pre.clone();
            one.push(t);
            by_axes[used + 1].insert(one);
            if used + 2 <= p.n {
                for d in divisors(d1) {
                    let mut two = pre.clone();
                    two.push(t / d);
                    two.push(t * d);
                    two.sort_unstable();
                    by_axes[used + 2].insert(two);
                }
            }
        }
    }
    let mut structures = BTreeSet::new();
    for factors in &by_axes[p.n] {
        structures.insert(AbelianType::from_factors(factors)?);
    }
    Ok(AdmissibleReport { structures, complete: false })
}

/// Number of isomorphism classes in the maximal regime: the product over
/// primes p dividing 2e+1 of the count of partitions of n·v_p(2e+1) into
/// parts of size at most n. Depends only on n and e.
pub fn count_isomorphism_classes_maximal(n: usize, e: i64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParams("dimension n must be at least 1".into()));
    }
    if e < 0 {
        return Err(Error::InvalidParams("radius e must be nonnegative".into()));
    }
    let mut acc: u128 = 1;
    for (_, nu) in factorize(2 * e + 1) {
        let part = partitions_with_parts_at_most(n as u64 * nu as u64, n as u64);
        acc = acc
            .checked_mul(part)
            .ok_or_else(|| Error::Overflow("class count exceeds u128".into()))?;
    }
    Ok(acc)
}

/// Exact number of ALL perfect codes of Z_q² with radius e, linear or not:
/// (2e+1)²·(2(2e+1)^(t-1) - 1).
pub fn count_all_2d(e: i64, q: i64) -> Result<BigUint> {
    let p = Params::new(2, e, q)?;
    let t = p.t()?;
    let m = BigUint::from(p.side() as u64);
    let exp = u32::try_from(t - 1).map_err(|_| Error::Overflow("t does not fit u32".into()))?;
    Ok(&m * &m * (BigUint::from(2u32) * m.pow(exp) - BigUint::from(1u32)))
}

/// What the alphabet size q alone decides about perfect codes.
#[derive(Debug, Clone, Serialize)]
pub struct ExistenceReport {
    pub q: i64,
    /// Some nontrivial perfect q-ary code exists (equivalently, q is
    /// neither a power of two nor a prime).
    pub nontrivial: bool,
    /// A linear non-cartesian perfect code of Z_q² exists (some odd prime
    /// p has p² | q).
    pub noncartesian_2d: bool,
    /// A cyclic perfect code of Z_q² exists (some odd prime p has p² | q
    /// with q/p² odd).
    pub cyclic_2d: bool,
}

pub fn existence(q: i64) -> Result<ExistenceReport> {
    if q < 1 {
        return Err(Error::InvalidParams("alphabet size q must be positive".into()));
    }
    let facs = factorize(q);
    let direct = divisors(q).iter().any(|&m| m % 2 == 1 && m > 1 && q / m > 1);
    let characterized = !facs.iter().all(|&(p, _)| p == 2) && !is_prime(q);
    if direct != characterized {
        return Err(Error::Internal("existence characterizations disagree".into()));
    }
    let noncartesian_2d = facs.iter().any(|&(p, nu)| p % 2 == 1 && nu >= 2);
    let cyclic_2d = facs
        .iter()
        .any(|&(p, nu)| p % 2 == 1 && nu >= 2 && (q / (p * p)) % 2 == 1);
    Ok(ExistenceReport { q, nontrivial: direct, noncartesian_2d, cyclic_2d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cartesian_code;

    fn params(n: usize, e: i64, q: i64) -> Params {
        Params::new(n, e, q).unwrap()
    }

    #[test]
    fn cartesian_codes_are_ordered() {
        let p = params(3, 1, 27);
        let c = cartesian_code(&p).unwrap();
        let rec = associated_permutation(&p, &c).unwrap();
        assert_eq!(rec.perm, vec![3, 2, 1]);
        assert_eq!(rec.sections.len(), 2);
        let theta = ordering_permutation(&p, &c).unwrap();
        assert_eq!(theta, Isometry::identity(3));
    }

    #[test]
    fn skew_plane_permutation_and_ordering() {
        let p = params(2, 1, 9);
        let skew = LinearCode::from_generators(9, &[vec![2, 3]]).unwrap();
        assert_eq!(associated_permutation(&p, &skew).unwrap().perm, vec![1, 2]);
        let theta = ordering_permutation(&p, &skew).unwrap();
        assert_eq!(theta.permutation(), vec![2, 1]);
        let moved = apply_isometry_linear(&theta, &skew).unwrap();
        assert_eq!(moved, LinearCode::from_generators(9, &[vec![3, 2], vec![0, 3]]).unwrap());
        // already ordered: identity
        assert_eq!(ordering_permutation(&p, &moved).unwrap(), Isometry::identity(2));
    }

    #[test]
    fn permutation_rejects_imperfect_codes() {
        let p = params(2, 1, 9);
        let thin = LinearCode::from_generators(9, &[vec![1, 1]]).unwrap();
        // nine words as required, but the diagonal has minimum distance 1
        assert!(matches!(
            associated_permutation(&p, &thin),
            Err(Error::NotPerfect(_))
        ));
    }

    #[test]
    fn matrix_perfection_examples() {
        let m = IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]).unwrap();
        let good = is_perfect_matrix(&m, 1, 9).unwrap();
        assert!(good.perfect);
        let (a, b) = good.certificate.unwrap();
        assert_eq!(a.mul(&m).unwrap(), b.scaled(&BigInt::from(9)));
        assert_eq!(a.diagonal(), vec![BigInt::from(3), BigInt::from(3)]);

        let bad = is_perfect_matrix(&m, 1, 15).unwrap();
        assert!(!bad.perfect);
        assert!(bad.failing.unwrap().contains("row 1"));

        let cart = IntMatrix::diag_i64(&[5, 5, 5]);
        assert!(is_perfect_matrix(&cart, 2, 10).unwrap().perfect);

        let lower = IntMatrix::from_rows(&[vec![3, 0], vec![1, 3]]).unwrap();
        assert!(!is_perfect_matrix(&lower, 1, 9).unwrap().perfect);

        let wrong_diag = IntMatrix::from_rows(&[vec![3, 0], vec![0, 9]]).unwrap();
        assert!(!is_perfect_matrix(&wrong_diag, 1, 9).unwrap().perfect);

        assert!(is_perfect_matrix(&m, 1, 7).is_err()); // 3 does not divide 7
    }

    #[test]
    fn reduced_generator_matrices() {
        let p = params(2, 1, 9);
        let ordered = LinearCode::from_generators(9, &[vec![3, 2], vec![0, 3]]).unwrap();
        let m = perfect_generator_matrix(&p, &ordered).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![3, -1], vec![0, 3]]).unwrap());

        let cart = cartesian_code(&p).unwrap();
        assert_eq!(perfect_generator_matrix(&p, &cart).unwrap(), IntMatrix::diag_i64(&[3, 3]));

        let wide = params(2, 1, 18);
        let lc = lc_code(1, 18, 1).unwrap();
        assert_eq!(
            perfect_generator_matrix(&wide, &lc).unwrap(),
            IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]).unwrap()
        );

        let unordered = LinearCode::from_generators(9, &[vec![2, 3]]).unwrap();
        assert!(matches!(
            perfect_generator_matrix(&p, &unordered),
            Err(Error::NotOrdered(_))
        ));
    }

    #[test]
    fn maximality_is_a_divisibility_test() {
        assert!(is_maximal(&params(2, 1, 9)).unwrap());
        assert!(!is_maximal(&params(3, 1, 9)).unwrap());
        assert!(is_maximal(&params(3, 1, 27)).unwrap());
        assert!(!is_maximal(&params(2, 1, 6)).unwrap());
        assert!(is_maximal(&params(1, 1, 6)).unwrap());
    }

    #[test]
    fn maximal_enumeration_in_the_plane() {
        let p = params(2, 1, 9);
        let report = enumerate_ordered_maximal(&p, 1000).unwrap();
        assert_eq!(report.total, 3);
        assert!(report.verified);
        assert_eq!(report.classes.len(), 2);
        assert_eq!(report.classes[0].chain, vec![1, 9]);
        assert_eq!(report.classes[0].members.len(), 2);
        assert_eq!(report.classes[0].structure.chain(), &[9]);
        assert_eq!(
            report.classes[0].canonical,
            IntMatrix::from_rows(&[vec![3, 1], vec![0, 3]]).unwrap()
        );
        assert_eq!(report.classes[1].chain, vec![3, 3]);
        assert_eq!(report.classes[1].members.len(), 1);
        assert_eq!(report.classes[1].structure.chain(), &[3, 3]);

        assert!(matches!(
            enumerate_ordered_maximal(&params(2, 1, 6), 1000),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            enumerate_ordered_maximal(&params(3, 1, 27), 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn two_dim_report_for_nine() {
        let report = enumerate_2d(1, 9).unwrap();
        assert_eq!(report.d1, 3);
        assert_eq!(report.codes.len(), 3);
        assert_eq!(report.isometry_classes, vec![BTreeSet::from([0]), BTreeSet::from([1, 2])]);
        assert_eq!(report.isomorphism_classes.len(), 2);
        assert_eq!(report.isomorphism_classes[0].key, 1);
        assert_eq!(report.isomorphism_classes[0].members, vec![1, 2]);
        assert_eq!(report.isomorphism_classes[0].structure.chain(), &[9]);
        assert_eq!(report.isomorphism_classes[1].key, 3);
        assert_eq!(report.isomorphism_classes[1].members, vec![0]);
        assert_eq!(report.isomorphism_classes[1].structure.chain(), &[3, 3]);
    }

    #[test]
    fn two_dim_report_for_six_is_cartesian_only() {
        let report = enumerate_2d(1, 6).unwrap();
        assert_eq!(report.d1, 1);
        assert_eq!(report.codes.len(), 1);
        assert_eq!(report.codes[0].code, cartesian_code(&params(2, 1, 6)).unwrap());
        assert_eq!(report.isometry_classes.len(), 1);
        assert_eq!(report.isomorphism_classes.len(), 1);
    }

    #[test]
    fn structures_of_the_2d_family() {
        assert_eq!(structure_2d(1, 18, 1).unwrap().chain(), &[2, 18]);
        assert_eq!(structure_2d(1, 9, 0).unwrap().chain(), &[3, 3]);
        assert_eq!(structure_2d(1, 9, 2).unwrap().chain(), &[9]);
    }

    #[test]
    fn admissible_sets_in_characterized_regimes() {
        let two = admissible_structures(&params(2, 1, 9)).unwrap();
        assert!(two.complete);
        let want: BTreeSet<AbelianType> = [
            AbelianType::from_factors(&[3, 3]).unwrap(),
            AbelianType::from_factors(&[9]).unwrap(),
        ]
        .into();
        assert_eq!(two.structures, want);

        let wide = admissible_structures(&params(2, 1, 18)).unwrap();
        let want: BTreeSet<AbelianType> = [
            AbelianType::from_factors(&[6, 6]).unwrap(),
            AbelianType::from_factors(&[2, 18]).unwrap(),
        ]
        .into();
        assert_eq!(wide.structures, want);

        let maximal = admissible_structures(&params(3, 1, 27)).unwrap();
        assert!(maximal.complete);
        let want: BTreeSet<AbelianType> = [
            AbelianType::from_factors(&[9, 9, 9]).unwrap(),
            AbelianType::from_factors(&[3, 9, 27]).unwrap(),
            AbelianType::from_factors(&[1, 27, 27]).unwrap(),
        ]
        .into();
        assert_eq!(maximal.structures, want);

        let cyclic = admissible_structures(&params(3, 4, 27)).unwrap();
        assert!(cyclic.complete);
        assert_eq!(cyclic.structures.len(), 3); // (1,1,27), (1,3,9), (3,3,3)
    }

    #[test]
    fn admissible_fallback_is_a_flagged_lower_bound() {
        let report = admissible_structures(&params(3, 1, 9)).unwrap();
        assert!(!report.complete);
        let want: BTreeSet<AbelianType> = [
            AbelianType::from_factors(&[3, 3, 3]).unwrap(),
            AbelianType::from_factors(&[3, 9]).unwrap(),
        ]
        .into();
        assert_eq!(report.structures, want);
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(count_isomorphism_classes_maximal(2, 4).unwrap(), 3); // σ₀(9)
        assert_eq!(count_isomorphism_classes_maximal(3, 7).unwrap(), 9); // 3^ω(15)
        assert_eq!(count_isomorphism_classes_maximal(3, 1).unwrap(), 3);

        assert_eq!(count_all_2d(1, 6).unwrap(), BigUint::from(45u32));
        assert_eq!(count_all_2d(1, 9).unwrap(), BigUint::from(153u32));
        assert_eq!(count_all_2d(0, 5).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn existence_predicates() {
        let r = existence(16).unwrap();
        assert!(!r.nontrivial && !r.noncartesian_2d && !r.cyclic_2d);
        let r = existence(18).unwrap();
        assert!(r.nontrivial && r.noncartesian_2d && !r.cyclic_2d);
        let r = existence(9).unwrap();
        assert!(r.nontrivial && r.noncartesian_2d && r.cyclic_2d);
        let r = existence(7).unwrap();
        assert!(!r.nontrivial);
        let r = existence(15).unwrap();
        assert!(r.nontrivial && !r.noncartesian_2d);
    }
}
