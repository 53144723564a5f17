//! Characteristic polynomials and principal-minor machinery.
//!
//! The workhorse is the Berkowitz algorithm: division-free, so it runs
//! unchanged over the integers and over quadratic field elements, and every
//! intermediate stays exact. Coefficients come out monic in degree-
//! descending order for `det(xI - A)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{pow2, rat, Int, Rational};
use crate::decompose::{integerized_la, DecomposedPair};
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Scalar};

/// A monic characteristic polynomial with exact rational coefficients,
/// stored degree-descending: `coeffs[k]` is the coefficient of `x^(N-k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<Rational>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree-descending coefficient slice (index 0 is the leading 1).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^power`.
    pub fn coeff_of_power(&self, power: usize) -> Rational {
        let d = self.degree();
        if power > d {
            Rational::zero()
        } else {
            self.coeffs[d - power].clone()
        }
    }

    /// k-th elementary symmetric function of the eigenvalues:
    /// `e_k = (-1)^k * coeffs[k]`. `e_0 = 1`, `e_N = det`.
    pub fn e_k(&self, k: usize) -> Rational {
        if k > self.degree() {
            return Rational::zero();
        }
        let c = self.coeffs[k].clone();
        if k.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.first().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Polynomial product (used to check charpoly factorizations).
    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly { coeffs: out }
    }

    /// All coefficients as integers, if they are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<Int>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect()
    }

    /// JSON document with exact coefficient strings, degree-descending:
    /// `{"degree": N, "coefficients": ["1", ...]}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct PolyDoc {
            degree: usize,
            coefficients: Vec<String>,
        }
        let doc = PolyDoc {
            degree: self.degree(),
            coefficients: self.coeffs.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("polynomial document serializes")
    }
}

/// Coefficients of `det(xI - A)`, degree-descending, by the Berkowitz
/// algorithm. Division-free: valid over any commutative ring scalar.
pub fn berkowitz<T: Scalar>(a: &ExactMatrix<T>) -> Result<Vec<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(vec![T::one()]);
    }
    let mut coeffs = vec![T::one(), T::zero() - a.get(0, 0).clone()];
    for m in 1..n {
        // q[0] = 1, q[1] = -A[m][m], q[j] = -(R * A_m^(j-2) * S)
        let mut q = Vec::with_capacity(m + 2);
        q.push(T::one());
        q.push(T::zero() - a.get(m, m).clone());
        let mut p: Vec<T> = (0..m).map(|i| a.get(i, m).clone()).collect(); // S
        for step in 0..m {
            let mut dot = T::zero();
            for (k, pk) in p.iter().enumerate() {
                let r = a.get(m, k);
                if !r.is_zero() && !pk.is_zero() {
                    dot = dot + r.clone() * pk.clone();
                }
            }
            q.push(T::zero() - dot);
            if step + 1 < m {
                // p <- A_m * p
                let mut next = vec![T::zero(); m];
                for (i, slot) in next.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (k, pk) in p.iter().enumerate() {
                        let v = a.get(i, k);
                        if !v.is_zero() && !pk.is_zero() {
                            acc = acc + v.clone() * pk.clone();
                        }
                    }
                    *slot = acc;
                }
                p = next;
            }
        }
        // Toeplitz step: new[i] = sum_{k+j=i} q[k] * old[j], truncated to
        // the m+2 coefficients of the enlarged block's polynomial.
        let mut next = vec![T::zero(); m + 2];
        for (k, qk) in q.iter().enumerate() {
            if qk.is_zero() {
                continue;
            }
            for (j, c) in coeffs.iter().enumerate() {
                let i = k + j;
                if i >= next.len() {
                    break;
                }
                if !c.is_zero() {
                    next[i] = next[i].clone() + qk.clone() * c.clone();
                }
            }
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// Characteristic polynomial of an integer matrix.
pub fn charpoly_int(a: &ExactMatrix<Int>) -> Result<CharPoly> {
    let coeffs = berkowitz(a)?;
    Ok(CharPoly::from_coeffs(coeffs.into_iter().map(Rational::from).collect()))
}

/// Sum of all `k x k` principal minors (brute force over subsets; cost grows
/// as `C(N, k)`, intended for validation at small sizes).
#[derive(Clone, Debug, PartialEq)]
pub struct MinorSum {
    pub k: usize,
    pub value: Rational,
}

pub fn principal_minor_sum(a: &ExactMatrix<Int>, k: usize) -> Result<MinorSum> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if k > n {
        return Err(Error::IndexRange(format!("minor order {k} exceeds size {n}")));
    }
    let mut total = Int::zero();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        total += a.submatrix(&subset, &subset).det_bareiss()?;
        // next k-combination of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(MinorSum { k, value: Rational::from(total) });
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Determinant of a symmetric tridiagonal matrix given its diagonal and
/// off-diagonal, by the three-term recurrence
/// `d_k = diag[k] * d_{k-1} - off[k-1]^2 * d_{k-2}`.
pub fn det_tridiagonal(diag: &[Rational], off: &[Rational]) -> Result<Rational> {
    if diag.is_empty() {
        return Ok(Rational::one());
    }
    if off.len() + 1 != diag.len() {
        return Err(Error::DimensionMismatch(format!(
            "tridiagonal with {} diagonal and {} off-diagonal entries",
            diag.len(),
            off.len()
        )));
    }
    let mut prev = Rational::one();
    let mut cur = diag[0].clone();
    for k in 1..diag.len() {
        let next = &diag[k] * &cur - &off[k - 1] * &off[k - 1] * &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Characteristic polynomial `det(xI - T)` of a symmetric tridiagonal
/// matrix, by the three-term polynomial recurrence
/// `p_k = (x - diag[k-1]) p_{k-1} - off[k-2]^2 p_{k-2}`.
/// Quadratic in the size, so large-order audits stay cheap.
pub fn charpoly_tridiagonal(diag: &[Rational], off: &[Rational]) -> Result<CharPoly> {
    if diag.is_empty() {
        if !off.is_empty() {
            return Err(Error::DimensionMismatch("off-diagonal entries without a diagonal".into()));
        }
        return Ok(CharPoly::from_coeffs(vec![Rational::one()]));
    }
    if off.len() + 1 != diag.len() {
        return Err(Error::DimensionMismatch(format!(
            "tridiagonal with {} diagonal and {} off-diagonal entries",
            diag.len(),
            off.len()
        )));
    }
    let mut prev: Vec<Rational> = vec![Rational::one()];
    let mut cur: Vec<Rational> = vec![Rational::one(), -diag[0].clone()];
    for k in 2..=diag.len() {
        let d = &diag[k - 1];
        let w = &off[k - 2] * &off[k - 2];
        let mut next = vec![Rational::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] = &next[i] + c;
            next[i + 1] = &next[i + 1] - &(d * c);
        }
        for (i, c) in prev.iter().enumerate() {
            next[i + 2] = &next[i + 2] - &(&w * c);
        }
        prev = cur;
        cur = next;
    }
    Ok(CharPoly::from_coeffs(cur))
}

/// Sum of all `(N-1) x (N-1)` principal minors of a symmetric tridiagonal
/// matrix — its second-from-constant characteristic coefficient `e_{N-1}`.
/// Deleting row/column `i` splits the band, so each minor is a product of a
/// prefix and a suffix determinant; both families come from three-term
/// recurrences, keeping the whole sum linear in the size.
pub fn tridiagonal_minor_sum(diag: &[Rational], off: &[Rational]) -> Result<Rational> {
    if diag.is_empty() {
        return Ok(Rational::zero());
    }
    if off.len() + 1 != diag.len() {
        return Err(Error::DimensionMismatch(format!(
            "tridiagonal with {} diagonal and {} off-diagonal entries",
            diag.len(),
            off.len()
        )));
    }
    let nn = diag.len();
    let mut prefix = Vec::with_capacity(nn + 1);
    prefix.push(Rational::one());
    prefix.push(diag[0].clone());
    for k in 2..=nn {
        let v = &diag[k - 1] * &prefix[k - 1] - &off[k - 2] * &off[k - 2] * &prefix[k - 2];
        prefix.push(v);
    }
    let mut suffix = vec![Rational::zero(); nn + 1];
    suffix[nn] = Rational::one();
    suffix[nn - 1] = diag[nn - 1].clone();
    for k in (0..nn.saturating_sub(1)).rev() {
        suffix[k] = &diag[k] * &suffix[k + 1] - &off[k] * &off[k] * &suffix[k + 2];
    }
    let mut total = Rational::zero();
    for i in 0..nn {
        total += &prefix[i] * &suffix[i + 1];
    }
    Ok(total)
}

/// Split a symmetric tridiagonal integer matrix into its diagonal and
/// off-diagonal bands, rejecting any entry outside them.
pub fn tridiagonal_parts(a: &ExactMatrix<Int>) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 1 && !a.get(i, j).is_zero() {
                return Err(Error::DimensionMismatch(format!(
                    "nonzero entry at ({i}, {j}) outside the tridiagonal band"
                )));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        if a.get(i, i + 1) != a.get(i + 1, i) {
            return Err(Error::DimensionMismatch(format!("asymmetric band at ({i}, {})", i + 1)));
        }
    }
    let diag = (0..n).map(|i| Rational::from(a.get(i, i).clone())).collect();
    let off = (0..n.saturating_sub(1)).map(|i| Rational::from(a.get(i, i + 1).clone())).collect();
    Ok((diag, off))
}

/// Leading principal minors `det(A[0..k, 0..k])` for `k = 1..=N`.
/// The last entry is `det(A)`.
pub fn leading_principal_minors(a: &ExactMatrix<Int>) -> Result<Vec<Rational>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let keep: Vec<usize> = (0..k).collect();
        out.push(Rational::from(a.submatrix(&keep, &keep).det_bareiss()?));
    }
    Ok(out)
}

/// `e_k` of the bar-coupled block, read off the characteristic polynomial of
/// its integerization (same spectrum). The result is asserted integral.
pub fn coefficient_a(pair: &DecomposedPair, k: usize) -> Result<Rational> {
    let m = integerized_la(pair);
    let cp = charpoly_int(&m)?;
    if k > cp.degree() {
        return Err(Error::IndexRange(format!(
            "coefficient index {k} exceeds degree {}",
            cp.degree()
        )));
    }
    let v = cp.e_k(k);
    if !v.is_integer() {
        return Err(Error::IrrationalResidue(format!("coefficient e_{k} is not an integer: {v}")));
    }
    Ok(v)
}

/// Published closed formulas for the principal minors of the bar-coupled
/// block with one index (`t = None`) or two indices (`t = Some(..)`)
/// deleted. Indices are 1-based positions in the block: `1..=n` are bar
/// rows, `n+1..=5n+1` are path rows.
///
/// The published case analysis does not cover the pair `(n+1, 5n+1)`; that
/// input returns [`Error::FormulaGap`]. These formulas are reproduced
/// verbatim for auditing; [`minor_case_audit`] compares each one against the
/// exact minor and reports where the published values deviate.
pub fn minor_case_formulas(n: usize, s: usize, t: Option<usize>) -> Result<Rational> {
    let top = 5 * n + 1;
    if s < 1 || s > top {
        return Err(Error::IndexRange(format!("s = {s} outside 1..={top}")));
    }
    let Some(t) = t else {
        // single deletion
        return Ok(if s <= n { pow2(n as i64 - 1) } else { pow2(n as i64) });
    };
    if t <= s || t > top {
        return Err(Error::IndexRange(format!("need s < t <= {top}, got ({s}, {t})")));
    }
    let (nn, ss, tt) = (n as i64, s as i64, t as i64);
    if t <= n {
        // both bars
        return Ok(rat(4 * (tt - ss) + 2) * pow2(nn - 2));
    }
    if s > n {
        // both path positions
        let gap = s == n + 1 && t == 5 * n + 1;
        if gap {
            return Err(Error::FormulaGap { s, t });
        }
        if s == n + 1 {
            return Ok(rat(tt - 1 - nn) * pow2(nn - 2));
        }
        if t == 5 * n + 1 {
            return Ok(rat(5 * nn - ss + 1) * pow2(nn));
        }
        return Ok(rat(tt - ss) * pow2(nn));
    }
    // mixed bar + path
    Ok(rat((tt - 4 * ss + 1 - nn).abs() + 1) * pow2(nn - 1))
}

/// One deviation found by [`minor_case_audit`]: `formula = None` marks an
/// uncovered input.
#[derive(Clone, Debug)]
pub struct MinorDeviation {
    pub s: usize,
    pub t: Option<usize>,
    pub formula: Option<Rational>,
    pub exact: Rational,
}

/// Aggregate result of auditing the published minor formulas against exact
/// deleted-minor determinants.
#[derive(Clone, Debug)]
pub struct MinorCaseAudit {
    pub n: usize,
    /// Whether every pair was checked (small n) or a deterministic sample.
    pub full: bool,
    pub checked: usize,
    pub deviations: Vec<MinorDeviation>,
    /// Exact sums (all single minors, all pair minors) and the matching
    /// coefficients of the block's characteristic polynomial; only present
    /// on a full audit.
    pub totals: Option<MinorTotals>,
}

#[derive(Clone, Debug)]
pub struct MinorTotals {
    pub singles_sum: Rational,
    pub pairs_sum: Rational,
    pub e_5n: Rational,
    pub e_5n_minus_1: Rational,
}

impl MinorCaseAudit {
    pub fn formulas_all_match(&self) -> bool {
        self.deviations.iter().all(|d| d.formula.is_none())
    }

    pub fn uncovered_inputs(&self) -> Vec<(usize, usize)> {
        self.deviations
            .iter()
            .filter(|d| d.formula.is_none())
            .filter_map(|d| d.t.map(|t| (d.s, t)))
            .collect()
    }
}

/// Compare the published minor formulas with exact minors of the
/// integerized bar-coupled block. All `5n+1` single deletions are always
/// checked; pairs are checked exhaustively when `full` is true, otherwise on
/// a deterministic sample (every `stride`-th pair in lexicographic order).
pub fn minor_case_audit(pair: &DecomposedPair, full: bool) -> Result<MinorCaseAudit> {
    let n = pair.n;
    let m = integerized_la(pair);
    let top = 5 * n + 1;
    let mut deviations = Vec::new();
    let mut checked = 0usize;

    let mut singles_sum = Rational::zero();
    for s in 1..=top {
        let exact = Rational::from(m.delete_rows_cols(&[s - 1]).det_bareiss()?);
        singles_sum += &exact;
        checked += 1;
        match minor_case_formulas(n, s, None) {
            Ok(f) if f == exact => {}
            Ok(f) => {
                deviations.push(MinorDeviation { s, t: None, formula: Some(f), exact });
            }
            Err(Error::FormulaGap { .. }) => {
                deviations.push(MinorDeviation { s, t: None, formula: None, exact });
            }
            Err(e) => return Err(e),
        }
    }

    let mut pairs_sum = Rational::zero();
    let all_pairs: Vec<(usize, usize)> =
        (1..=top).flat_map(|s| (s + 1..=top).map(move |t| (s, t))).collect();
    let stride = if full { 1 } else { (all_pairs.len() / 96).max(1) };
    for (idx, &(s, t)) in all_pairs.iter().enumerate() {
        let covered = idx % stride == 0 || (s == n + 1 && t == 5 * n + 1);
        if !covered {
            continue;
        }
        let exact = Rational::from(m.delete_rows_cols(&[s - 1, t - 1]).det_bareiss()?);
        if full {
            pairs_sum += &exact;
        }
        checked += 1;
        match minor_case_formulas(n, s, Some(t)) {
            Ok(f) if f == exact => {}
            Ok(f) => {
                deviations.push(MinorDeviation { s, t: Some(t), formula: Some(f), exact });
            }
            Err(Error::FormulaGap { .. }) => {
                deviations.push(MinorDeviation { s, t: Some(t), formula: None, exact });
            }
            Err(e) => return Err(e),
        }
    }

    let totals = if full {
        let cp = charpoly_int(&m)?;
        Some(MinorTotals {
            singles_sum,
            pairs_sum,
            e_5n: cp.e_k(5 * n),
            e_5n_minus_1: cp.e_k(5 * n - 1),
        })
    } else {
        None
    };

    Ok(MinorCaseAudit { n, full, checked, deviations, totals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio, Quad2};
    use crate::decompose::{decompose, symmetric_block_model};
    use crate::graph::build_chain;
    use proptest::prelude::*;

    fn im(rows: Vec<Vec<i64>>) -> ExactMatrix<Int> {
        ExactMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
            .unwrap()
    }

    #[test]
    fn berkowitz_known_small_cases() {
        let id4 = charpoly_int(&ExactMatrix::<Int>::identity(4)).unwrap();
        assert_eq!(id4.coeffs().to_vec(), vec![rat(1), rat(-4), rat(6), rat(-4), rat(1)]);
        let a = charpoly_int(&im(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        assert_eq!(a.coeffs().to_vec(), vec![rat(1), rat(-4), rat(3)]);
        assert!(a.is_monic());
        assert_eq!(a.e_k(0), rat(1));
        assert_eq!(a.e_k(1), rat(4));
        assert_eq!(a.e_k(2), rat(3));
    }

    #[test]
    fn berkowitz_over_a_quadratic_field() {
        let r = Quad2::sqrt_d();
        let z = Quad2::zero();
        let o = Quad2::one();
        let a = ExactMatrix::from_rows(vec![
            vec![z.clone(), r.clone(), z.clone()],
            vec![r.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), o.clone()],
        ])
        .unwrap();
        // (x^2 - 2)(x - 1) = x^3 - x^2 - 2x + 2
        let c = berkowitz(&a).unwrap();
        let want: Vec<Quad2> = [1, -1, -2, 2].iter().map(|&v| Quad2::from_ints(v, 0)).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn charpoly_matches_brute_minor_sums_fixed() {
        let a = im(vec![
            vec![3, -1, 0, 2, 1, 0, 0],
            vec![-1, 2, -1, 0, 0, 1, 0],
            vec![0, -1, 4, -1, 0, 0, 2],
            vec![2, 0, -1, 3, -1, 0, 0],
            vec![1, 0, 0, -1, 2, -1, 0],
            vec![0, 1, 0, 0, -1, 5, -1],
            vec![0, 0, 2, 0, 0, -1, 1],
        ]);
        let cp = charpoly_int(&a).unwrap();
        for k in 0..=7 {
            assert_eq!(cp.e_k(k), principal_minor_sum(&a, k).unwrap().value, "k = {k}");
        }
    }

    #[test]
    fn tridiagonal_recurrence_cases() {
        let d: Vec<Rational> = [3, 2, 3, 2, 3].iter().map(|&v| rat(v)).collect();
        let off = vec![rat(-1); 4];
        assert_eq!(det_tridiagonal(&d, &off).unwrap(), rat(45));
        assert_eq!(det_tridiagonal(&d[..1], &[]).unwrap(), rat(3));
        assert_eq!(det_tridiagonal(&d[..4], &off[..3]).unwrap(), rat(19));
        assert_eq!(det_tridiagonal(&[], &[]).unwrap(), rat(1));
    }

    #[test]
    fn tridiagonal_charpoly_matches_berkowitz() {
        for n in 1..=3 {
            let m = symmetric_block_model(n);
            let (diag, off) = tridiagonal_parts(&m).unwrap();
            let fast = charpoly_tridiagonal(&diag, &off).unwrap();
            assert_eq!(fast, charpoly_int(&m).unwrap(), "model n = {n}");
            // determinant falls out as e_N
            assert_eq!(fast.e_k(4 * n + 1), det_tridiagonal(&diag, &off).unwrap());
        }
        // the decomposed block is tridiagonal too
        let pair = decompose(&build_chain(2).unwrap()).unwrap();
        let (diag, off) = tridiagonal_parts(&pair.l_s).unwrap();
        assert_eq!(charpoly_tridiagonal(&diag, &off).unwrap(), charpoly_int(&pair.l_s).unwrap());
        // degenerate sizes
        assert_eq!(charpoly_tridiagonal(&[], &[]).unwrap(), CharPoly::from_coeffs(vec![rat(1)]));
        assert_eq!(
            charpoly_tridiagonal(&[rat(3)], &[]).unwrap(),
            CharPoly::from_coeffs(vec![rat(1), rat(-3)])
        );
        assert!(charpoly_tridiagonal(&[rat(1)], &[rat(1)]).is_err());
    }

    #[test]
    fn tridiagonal_minor_sum_matches_the_polynomial() {
        for n in 1..=3 {
            let m = symmetric_block_model(n);
            let (diag, off) = tridiagonal_parts(&m).unwrap();
            let fast = tridiagonal_minor_sum(&diag, &off).unwrap();
            let poly = charpoly_tridiagonal(&diag, &off).unwrap();
            assert_eq!(fast, poly.e_k(4 * n), "model n = {n}");
        }
        assert_eq!(
            tridiagonal_minor_sum(
                &[rat(3), rat(2), rat(3), rat(2), rat(3)],
                &[rat(-1), rat(-1), rat(-1), rat(-1)],
            )
            .unwrap(),
            rat(135)
        );
        let pair = decompose(&build_chain(2).unwrap()).unwrap();
        let (diag, off) = tridiagonal_parts(&pair.l_s).unwrap();
        assert_eq!(
            tridiagonal_minor_sum(&diag, &off).unwrap(),
            charpoly_tridiagonal(&diag, &off).unwrap().e_k(8)
        );
        // degenerate sizes
        assert_eq!(tridiagonal_minor_sum(&[], &[]).unwrap(), rat(0));
        assert_eq!(tridiagonal_minor_sum(&[rat(7)], &[]).unwrap(), rat(1));
    }

    #[test]
    fn band_extraction_rejects_non_tridiagonal_input() {
        let dense = im(vec![vec![1, 0, 5], vec![0, 1, 0], vec![5, 0, 1]]);
        assert!(tridiagonal_parts(&dense).is_err());
        let skew = im(vec![vec![1, 2], vec![3, 1]]);
        assert!(tridiagonal_parts(&skew).is_err());
        let ok = im(vec![vec![2, -1], vec![-1, 2]]);
        let (diag, off) = tridiagonal_parts(&ok).unwrap();
        assert_eq!(diag, vec![rat(2), rat(2)]);
        assert_eq!(off, vec![rat(-1)]);
    }

    #[test]
    fn leading_minors_of_the_alternating_model() {
        let m = symmetric_block_model(1);
        let minors = leading_principal_minors(&m).unwrap();
        assert_eq!(minors, vec![rat(3), rat(5), rat(12), rat(19), rat(45)]);
        // last entry is the determinant
        assert_eq!(minors.last().unwrap(), &Rational::from(m.det_bareiss().unwrap()));
    }

    #[test]
    fn block_coefficients_at_n1() {
        let pair = decompose(&build_chain(1).unwrap()).unwrap();
        assert_eq!(coefficient_a(&pair, 5).unwrap(), rat(11));
        assert_eq!(coefficient_a(&pair, 6).unwrap(), rat(0));
        assert_eq!(coefficient_a(&pair, 0).unwrap(), rat(1));
        assert!(coefficient_a(&pair, 7).is_err());
    }

    #[test]
    fn integerization_preserves_the_charpoly_exactly() {
        for n in 1..=3 {
            let pair = decompose(&build_chain(n).unwrap()).unwrap();
            let quad = berkowitz(&pair.l_a).unwrap();
            let as_rational: Vec<Rational> =
                quad.iter().map(|c| c.expect_rational().unwrap()).collect();
            let int_cp = charpoly_int(&integerized_la(&pair)).unwrap();
            assert_eq!(as_rational, int_cp.coeffs().to_vec());
        }
    }

    #[test]
    fn laplacian_charpoly_factors_through_the_blocks() {
        for n in 1..=3 {
            let chain = build_chain(n).unwrap();
            let pair = decompose(&chain).unwrap();
            let full = charpoly_int(&chain.laplacian()).unwrap();
            let a = charpoly_int(&integerized_la(&pair)).unwrap();
            let s = charpoly_int(&pair.l_s).unwrap();
            assert_eq!(full, a.mul(&s), "n = {n}");
        }
    }

    #[test]
    fn minor_formula_worked_examples() {
        // n = 1 single deletions
        assert_eq!(minor_case_formulas(1, 1, None).unwrap(), rat(1));
        assert_eq!(minor_case_formulas(1, 2, None).unwrap(), rat(2));
        // n = 2, both bars
        assert_eq!(minor_case_formulas(2, 1, Some(2)).unwrap(), rat(6));
        // mixed pair at n = 1: |t - 4s + 1 - n| + 1 over 2^(n-1)
        assert_eq!(minor_case_formulas(1, 1, Some(4)).unwrap(), rat(1));
        assert_eq!(minor_case_formulas(1, 1, Some(6)).unwrap(), rat(3));
        // the uncovered pair
        assert!(matches!(
            minor_case_formulas(1, 2, Some(6)),
            Err(Error::FormulaGap { s: 2, t: 6 })
        ));
        assert!(matches!(
            minor_case_formulas(3, 4, Some(16)),
            Err(Error::FormulaGap { s: 4, t: 16 })
        ));
        // bad indices
        assert!(minor_case_formulas(1, 0, None).is_err());
        assert!(minor_case_formulas(1, 3, Some(2)).is_err());
        assert!(minor_case_formulas(1, 3, Some(7)).is_err());
    }

    #[test]
    fn minor_audit_localizes_published_deviations() {
        let pair = decompose(&build_chain(2).unwrap()).unwrap();
        let audit = minor_case_audit(&pair, true).unwrap();
        assert!(audit.full);
        // single-deletion formulas hold
        assert!(audit.deviations.iter().all(|d| d.t.is_some()));
        // exactly one uncovered input: (n+1, 5n+1) = (3, 11)
        assert_eq!(audit.uncovered_inputs(), vec![(3, 11)]);
        // every covered deviation sits in the s = n+1 branch and the exact
        // minor is 4x the published value
        for d in &audit.deviations {
            let Some(f) = &d.formula else { continue };
            assert_eq!(d.s, 3, "unexpected deviation at ({}, {:?})", d.s, d.t);
            assert_eq!(&d.exact, &(f * rat(4)));
        }
        // totals tie out against the characteristic polynomial
        let totals = audit.totals.unwrap();
        assert_eq!(totals.singles_sum, totals.e_5n);
        assert_eq!(totals.pairs_sum, totals.e_5n_minus_1);
        assert_eq!(totals.e_5n_minus_1, rat(618));
    }

    #[test]
    fn poly_json_export() {
        let cp = charpoly_int(&im(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&cp.to_json()).unwrap();
        assert_eq!(doc["degree"], 2);
        assert_eq!(doc["coefficients"][0], "1");
        assert_eq!(doc["coefficients"][1], "-4");
        assert_eq!(doc["coefficients"][2], "3");
    }

    #[test]
    fn charpoly_coefficients_are_integers_for_integer_input() {
        let pair = decompose(&build_chain(2).unwrap()).unwrap();
        let cp = charpoly_int(&integerized_la(&pair)).unwrap();
        assert!(cp.integer_coeffs().is_some());
        let frac = CharPoly::from_coeffs(vec![rat(1), ratio(1, 2)]);
        assert!(frac.integer_coeffs().is_none());
    }

    fn arb_small_matrix() -> impl Strategy<Value = ExactMatrix<Int>> {
        (2usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-4i64..=4, n * n)
                .prop_map(move |v| ExactMatrix::from_fn(n, n, |i, j| int(v[i * n + j])))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn berkowitz_agrees_with_brute_minor_sums(a in arb_small_matrix()) {
            let cp = charpoly_int(&a).unwrap();
            let n = a.rows();
            prop_assert_eq!(cp.degree(), n);
            prop_assert!(cp.is_monic());
            for k in 0..=n {
                prop_assert_eq!(cp.e_k(k), principal_minor_sum(&a, k).unwrap().value);
            }
        }

        #[test]
        fn determinant_is_the_constant_coefficient(a in arb_small_matrix()) {
            let cp = charpoly_int(&a).unwrap();
            let n = a.rows();
            let det = Rational::from(a.det_bareiss().unwrap());
            // det(xI - A) at x = 0 is (-1)^n det(A)
            let c = cp.constant_term();
            prop_assert_eq!(if n % 2 == 0 { c } else { -c }, det);
        }
    }
}
