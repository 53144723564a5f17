//! Verification reports and published-table reproduction.
//!
//! A [`VerificationReport`] compares every closed form against an
//! independent computation and records, per audit, whether the two agree.
//! Known-bad published statements are marked `erratum`; their mismatches
//! are expected and do not fail the run. The exit-code rule is therefore:
//! success iff every entry that is neither skipped nor erratum-flagged
//! matched exactly.

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{decimal_string, rat, rational_to_f64, Int, Quad2, Rational};
use crate::charpoly::{
    charpoly_int, det_tridiagonal, minor_case_audit, tridiagonal_minor_sum, tridiagonal_parts,
    CharPoly,
};
use crate::decompose::{
    decompose_with_limit, integerized_la, ls_model_matches_block, DecomposedPair,
    DEFAULT_EXACT_VERIFY_LIMIT,
};
use crate::error::{Error, Result};
use crate::formulas::{closed_form_value, lemma31_kf, lemma34_tau, Quantity};
use crate::graph::{build_chain, HeptagonalChain};
use crate::matrix::ExactMatrix;
use crate::oracle::{
    kirchhoff_spectral, max_pairwise_gap, numeric_spectrum, numeric_spectrum_f64, resistance_table,
    sorted_union, spanning_trees_enumerate, spanning_trees_matrix_tree, ResistanceTable,
    ENUMERATION_EDGE_LIMIT,
};

/// Default ceiling for the expensive exact audits (`--max-exact-n`).
pub const DEFAULT_MAX_EXACT_N: usize = 30;

/// Above this order no dense matrices are materialized at all; only the
/// band-recurrence and closed-form audits run.
const STRUCTURAL_LIMIT: usize = 150;

/// Ceiling for dense floating-point eigensolves inside `verify`.
const FLOAT_SPECTRUM_LIMIT: usize = 60;

/// Without `--deep`, cubic-cost exact oracles (resistances, cofactor
/// determinants) stop here.
const NONDEEP_HEAVY_LIMIT: usize = 20;

/// Without `--deep`, quartic-cost exact audits (full characteristic
/// polynomials of the bar-coupled block) stop here.
const NONDEEP_CHARPOLY_LIMIT: usize = 6;

const MINOR_FULL_LIMIT: usize = 4;
const MINOR_FULL_DEEP_LIMIT: usize = 10;
const MINOR_SAMPLED_LIMIT: usize = 8;

/// Kirchhoff-index column as printed, `n = 1..=50`. The `n = 48` cell is
/// reproduced verbatim, including its garbled second decimal point.
pub const PUBLISHED_KIRCHHOFF_TABLE: [&str; 50] = [
    "79.25",
    "404.17",
    "1138.09",
    "2442.97",
    "4480.81",
    "7413.61",
    "11403.37",
    "16612.10",
    "23201.79",
    "31334.44",
    "41172.05",
    "52876.62",
    "66610.15",
    "82534.64",
    "100812.10",
    "121604.52",
    "145073.90",
    "171382.24",
    "200691.54",
    "233163.80",
    "268961.03",
    "308245.21",
    "351178.36",
    "397922.47",
    "448639.54",
    "503491.58",
    "562640.57",
    "626248.53",
    "694477.44",
    "767489.32",
    "845446.16",
    "928509.96",
    "1016842.73",
    "1110606.45",
    "1209979.64",
    "1315074.79",
    "1426103.39",
    "1543210.96",
    "1666559.50",
    "1796310.99",
    "1932627.45",
    "2075670.87",
    "2225603.25",
    "2382586.59",
    "2546782.89",
    "2718354.15",
    "2897462.38",
    "3084269..56",
    "3278937.71",
    "3481628.82",
];

/// Rows of the published Kirchhoff table whose printed cells do not equal
/// the generating closed form evaluated exactly (transcription slips,
/// including the garbled `n = 48` cell).
pub const KIRCHHOFF_TABLE_DISCREPANT_ROWS: [usize; 4] = [35, 37, 38, 48];

/// Spanning-tree column as printed, `n = 1..=12`. From `n = 5` on the
/// printed values are rounded to six significant figures.
pub const PUBLISHED_COMPLEXITY_TABLE: [&str; 12] = [
    "45",
    "1254",
    "34932",
    "973080",
    "27106500",
    "755090000",
    "21034100000",
    "585934000000",
    "16322000000000",
    "454673000000000",
    "12665600000000000",
    "352817000000000000",
];

/// One audit line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    /// Stable audit name; the ten closed-form operation names each appear
    /// exactly once per report.
    pub quantity: String,
    pub closed_form_value: String,
    pub oracle_value: String,
    #[serde(rename = "match")]
    pub matched: bool,
    pub relative_deviation: Option<f64>,
    /// Audits a published statement known to be wrong; a mismatch here is
    /// expected and does not fail verification.
    pub erratum: bool,
    /// Not run because of the resource guard; not counted either way.
    pub skipped: bool,
    pub note: String,
}

impl ReportEntry {
    fn exact(
        quantity: &str,
        closed: &Rational,
        oracle: &Rational,
        erratum: bool,
        note: &str,
    ) -> Self {
        ReportEntry {
            quantity: quantity.into(),
            closed_form_value: closed.to_string(),
            oracle_value: oracle.to_string(),
            matched: closed == oracle,
            relative_deviation: relative_deviation(closed, oracle),
            erratum,
            skipped: false,
            note: note.into(),
        }
    }

    fn skip(quantity: &str, closed: String, why: &str) -> Self {
        ReportEntry {
            quantity: quantity.into(),
            closed_form_value: closed,
            oracle_value: "skipped".into(),
            matched: true,
            relative_deviation: None,
            erratum: false,
            skipped: true,
            note: why.into(),
        }
    }
}

fn relative_deviation(closed: &Rational, oracle: &Rational) -> Option<f64> {
    if closed == oracle {
        return Some(0.0);
    }
    let o = rational_to_f64(oracle);
    if o == 0.0 {
        return None;
    }
    Some(((rational_to_f64(closed) - o) / o).abs())
}

fn string_deviation(a: &str, b: &str) -> Option<f64> {
    if a == b {
        return Some(0.0);
    }
    let (x, y) = (a.parse::<f64>().ok()?, b.parse::<f64>().ok()?);
    if y == 0.0 {
        return None;
    }
    Some(((x - y) / y).abs())
}

/// Round a nonnegative integer to `figs` significant decimal figures
/// (half away from zero), the convention the published spanning-tree
/// column uses from `n = 5` on.
pub fn round_significant(v: &Int, figs: usize) -> Int {
    let s = v.to_string();
    debug_assert!(!s.starts_with('-'));
    if s.len() <= figs {
        return v.clone();
    }
    let mut head: Int = s[..figs].parse().expect("decimal digits");
    if s.as_bytes()[figs] >= b'5' {
        head += 1;
    }
    head * Int::from(10).pow((s.len() - figs) as u32)
}

/// Options for [`verify`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Run the expensive exact audits up to `max_exact_n` instead of the
    /// cheap defaults.
    pub deep: bool,
    /// Ceiling for the expensive exact audits.
    pub max_exact_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { deep: false, max_exact_n: DEFAULT_MAX_EXACT_N }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub deep: bool,
    pub max_exact_n: usize,
    pub entries: Vec<ReportEntry>,
    /// True iff every entry that is neither skipped nor erratum-flagged
    /// matched.
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Fixed-width text rendering. Markers: `ok` matched, `err*` expected
    /// mismatch at a known erratum, `ok*` matched at an erratum site,
    /// `FAIL` unexpected mismatch, `skip` guarded out.
    pub fn human_summary(&self) -> String {
        fn clip(s: &str, max: usize) -> String {
            if s.len() <= max {
                s.to_string()
            } else {
                format!("{}...", &s[..max])
            }
        }
        let mut out = format!(
            "verification report for n = {} (deep: {}, exact guard: {})\n\n",
            self.n,
            if self.deep { "yes" } else { "no" },
            self.max_exact_n
        );
        for e in &self.entries {
            let marker = match (e.skipped, e.erratum, e.matched) {
                (true, _, _) => "skip",
                (false, true, false) => "err*",
                (false, true, true) => "ok* ",
                (false, false, true) => " ok ",
                (false, false, false) => "FAIL",
            };
            out.push_str(&format!(
                "  [{marker}] {:<36} closed {} | oracle {}\n",
                e.quantity,
                clip(&e.closed_form_value, 40),
                clip(&e.oracle_value, 40)
            ));
            if !e.note.is_empty() {
                out.push_str(&format!("         {}\n", e.note));
            }
        }
        let errata = self.entries.iter().filter(|e| !e.skipped && e.erratum && !e.matched).count();
        let skipped = self.entries.iter().filter(|e| e.skipped).count();
        let failed = self.entries.iter().filter(|e| !e.skipped && !e.erratum && !e.matched).count();
        out.push_str(&format!(
            "\nresult: {} — {} audit(s), {} expected erratum mismatch(es), {} skipped, {} unexpected failure(s)\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.entries.len(),
            errata,
            skipped,
            failed
        ));
        out
    }
}

/// Everything `verify` computes at most once, shared across entries.
struct AuditContext {
    n: usize,
    pair: Option<DecomposedPair>,
    /// Characteristic polynomial of the integerized bar-coupled block.
    cp_a: Option<CharPoly>,
    table: Option<ResistanceTable>,
    tau: Option<Int>,
    /// Bands of the printed (alternating) block.
    model_diag: Vec<Rational>,
    model_off: Vec<Rational>,
}

fn model_bands(n: usize) -> (Vec<Rational>, Vec<Rational>) {
    let p = 4 * n + 1;
    let diag = (0..p).map(|i| if i % 2 == 0 { rat(3) } else { rat(2) }).collect();
    let off = vec![rat(-1); p - 1];
    (diag, off)
}

fn quad_matrix_to_f64(m: &ExactMatrix<Quad2>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_f64())
}

/// Exact `e_{5n}` of the bar-coupled block without a full characteristic
/// polynomial: the Laplacian spectrum factors through the two blocks, so
/// the tree-count cofactor identity gives
/// `(9n+2) * tau = e_{5n}(L_A) * det(L_S)`.
fn a5n_from_factorization(n: usize, tau: &Int, pair: &DecomposedPair) -> Result<Rational> {
    let (diag, off) = tridiagonal_parts(&pair.l_s)?;
    let det_s = det_tridiagonal(&diag, &off)?;
    if det_s.is_zero() {
        return Err(Error::Singular);
    }
    Ok(rat(9 * n as i64 + 2) * Rational::from(tau.clone()) / det_s)
}

fn guard_note(what: &str, deep_helps: bool) -> String {
    if deep_helps {
        format!("skipped (size): {what}; raise with --deep / --max-exact-n")
    } else {
        format!("skipped (size): {what}")
    }
}

/// Run every audit for the chain of order `n` and assemble the report.
pub fn verify(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let structural_ok = n <= STRUCTURAL_LIMIT;
    let heavy_limit =
        if opts.deep { opts.max_exact_n } else { opts.max_exact_n.min(NONDEEP_HEAVY_LIMIT) };
    let heavy_ok = structural_ok && n <= heavy_limit;
    let charpoly_limit =
        if opts.deep { opts.max_exact_n } else { opts.max_exact_n.min(NONDEEP_CHARPOLY_LIMIT) };
    let charpoly_ok = structural_ok && n <= charpoly_limit;
    let float_ok = structural_ok && n <= FLOAT_SPECTRUM_LIMIT;

    let chain = if structural_ok { Some(build_chain(n)?) } else { None };
    let pair = match &chain {
        Some(c) => {
            let limit = if opts.deep {
                opts.max_exact_n.max(DEFAULT_EXACT_VERIFY_LIMIT)
            } else {
                DEFAULT_EXACT_VERIFY_LIMIT
            };
            Some(decompose_with_limit(c, limit)?)
        }
        None => None,
    };
    let cp_a = match &pair {
        Some(p) if charpoly_ok => Some(charpoly_int(&integerized_la(p))?),
        _ => None,
    };
    let table = match &chain {
        Some(c) if heavy_ok => Some(resistance_table(c)?),
        _ => None,
    };
    let tau = match &chain {
        Some(c) if heavy_ok => Some(spanning_trees_matrix_tree(c)?),
        _ => None,
    };
    let (model_diag, model_off) = model_bands(n);
    let ctx = AuditContext { n, pair, cp_a, table, tau, model_diag, model_off };

    let mut entries = Vec::new();
    entries.push(decomposition_entry(&ctx));
    for q in Quantity::ALL {
        entries.push(quantity_entry(q, &ctx)?);
    }
    entries.push(block_determinant_entry(&ctx)?);
    entries.push(integrality_entry(&ctx));
    entries.push(minor_case_entry(&ctx, opts)?);
    entries.push(spectrum_union_entry(&ctx, chain.as_ref(), float_ok)?);
    entries.push(cross_oracle_entry(&ctx, chain.as_ref(), float_ok)?);
    entries.push(foster_entry(&ctx, chain.as_ref()));
    entries.push(enumeration_entry(&ctx, chain.as_ref())?);
    if n <= PUBLISHED_KIRCHHOFF_TABLE.len() {
        entries.push(kirchhoff_row_entry(n));
        entries.push(kirchhoff_row_vs_oracle_entry(&ctx));
    }
    if n <= PUBLISHED_COMPLEXITY_TABLE.len() {
        entries.push(complexity_row_entry(n)?);
        entries.push(complexity_row_vs_oracle_entry(&ctx));
    }

    let passed = entries.iter().all(|e| e.skipped || e.erratum || e.matched);
    Ok(VerificationReport { n, deep: opts.deep, max_exact_n: opts.max_exact_n, entries, passed })
}

fn decomposition_entry(ctx: &AuditContext) -> ReportEntry {
    match &ctx.pair {
        Some(pair) => ReportEntry {
            quantity: "decomposition_identity".into(),
            closed_form_value: "T L T' = diag(L_A, L_S)".into(),
            oracle_value: if pair.verified_exactly {
                "holds (every entry checked)".into()
            } else {
                "holds (deterministic sample)".into()
            },
            matched: true,
            relative_deviation: Some(0.0),
            erratum: false,
            skipped: false,
            note: String::new(),
        },
        None => ReportEntry::skip(
            "decomposition_identity",
            "T L T' = diag(L_A, L_S)".into(),
            &guard_note("dense matrices are not materialized at this order", false),
        ),
    }
}

fn quantity_entry(q: Quantity, ctx: &AuditContext) -> Result<ReportEntry> {
    let n = ctx.n;
    let label = q.label();
    let closed = closed_form_value(q, n)?.value;
    let closed_str = closed.to_string();
    match q {
        Quantity::A5n => {
            let oracle = if let Some(cp) = &ctx.cp_a {
                cp.e_k(5 * n)
            } else if let (Some(tau), Some(pair)) = (&ctx.tau, &ctx.pair) {
                a5n_from_factorization(n, tau, pair)?
            } else {
                return Ok(ReportEntry::skip(
                    label,
                    closed_str,
                    &guard_note("needs an exact coefficient of the bar-coupled block", true),
                ));
            };
            let note = if ctx.cp_a.is_some() {
                "coefficient read off the exact characteristic polynomial"
            } else {
                "coefficient recovered from the tree-count factorization identity"
            };
            Ok(ReportEntry::exact(label, &closed, &oracle, false, note))
        }
        Quantity::A5nMinus1 => match &ctx.cp_a {
            Some(cp) => Ok(ReportEntry::exact(
                label,
                &closed,
                &cp.e_k(5 * n - 1),
                true,
                "published closed form is off; the exact coefficient is an integer while the formula gives a quarter-integer at n = 1",
            )),
            None => Ok(ReportEntry::skip(
                label,
                closed_str,
                &guard_note("needs an exact coefficient of the bar-coupled block", true),
            )),
        },
        Quantity::SumInvAlpha => match &ctx.cp_a {
            Some(cp) => {
                let e5n = cp.e_k(5 * n);
                let oracle = cp.e_k(5 * n - 1) / e5n;
                Ok(ReportEntry::exact(
                    label,
                    &closed,
                    &oracle,
                    true,
                    "reciprocal eigenvalue sum of the bar-coupled block; inherits the coefficient erratum",
                ))
            }
            None => Ok(ReportEntry::skip(
                label,
                closed_str,
                &guard_note("needs exact coefficients of the bar-coupled block", true),
            )),
        },
        Quantity::MSequence => {
            let oracle = det_tridiagonal(&ctx.model_diag[..4 * n], &ctx.model_off[..4 * n - 1])?;
            Ok(ReportEntry::exact(
                label,
                &closed,
                &oracle,
                false,
                "m_{4n}: closed form vs the order-4n leading principal minor of the printed block",
            ))
        }
        Quantity::DetLs => {
            let oracle = det_tridiagonal(&ctx.model_diag, &ctx.model_off)?;
            Ok(ReportEntry::exact(
                label,
                &closed,
                &oracle,
                false,
                "determinant of the printed alternating block; the decomposed block differs (see decomposed_block_determinant)",
            ))
        }
        Quantity::B4n => {
            let oracle = tridiagonal_minor_sum(&ctx.model_diag, &ctx.model_off)?;
            Ok(ReportEntry::exact(
                label,
                &closed,
                &oracle,
                false,
                "e_{4n} of the printed alternating block",
            ))
        }
        Quantity::SumInvBeta => {
            let det = det_tridiagonal(&ctx.model_diag, &ctx.model_off)?;
            let oracle = tridiagonal_minor_sum(&ctx.model_diag, &ctx.model_off)? / det;
            Ok(ReportEntry::exact(
                label,
                &closed,
                &oracle,
                false,
                "reciprocal eigenvalue sum of the printed alternating block",
            ))
        }
        Quantity::KfLemma31 => match &ctx.table {
            Some(t) => Ok(ReportEntry::exact(
                label,
                &closed,
                &t.kirchhoff_index(),
                true,
                "published Kirchhoff closed form vs the exact resistance oracle; the closed form inherits the coefficient erratum",
            )),
            None => Ok(ReportEntry::skip(
                label,
                closed_str,
                &guard_note("needs the exact resistance oracle", true),
            )),
        },
        Quantity::KfLemma33 => match &ctx.table {
            Some(t) => Ok(ReportEntry::exact(
                label,
                &closed,
                &t.kirchhoff_index(),
                true,
                "prefactor misprint: (20n+2) where the derivation needs (9n+2)",
            )),
            None => Ok(ReportEntry::skip(
                label,
                closed_str,
                &guard_note("needs the exact resistance oracle", true),
            )),
        },
        Quantity::TauLemma34 => match &ctx.tau {
            Some(tau) => Ok(ReportEntry::exact(
                label,
                &closed,
                &Rational::from(tau.clone()),
                true,
                "derived from the printed block, so it matches the graph's spanning-tree count only at n = 1",
            )),
            None => Ok(ReportEntry::skip(
                label,
                closed_str,
                &guard_note("needs the exact matrix-tree oracle", true),
            )),
        },
    }
}

fn block_determinant_entry(ctx: &AuditContext) -> Result<ReportEntry> {
    let label = "decomposed_block_determinant";
    let closed = closed_form_value(Quantity::DetLs, ctx.n)?.value;
    match &ctx.pair {
        Some(pair) => {
            let (diag, off) = tridiagonal_parts(&pair.l_s)?;
            let oracle = det_tridiagonal(&diag, &off)?;
            let first_divergence = (0..diag.len()).find(|&i| diag[i] != ctx.model_diag[i]);
            let note = match first_divergence {
                Some(i) => format!(
                    "printed diagonal alternates 3,2 but the block from the graph has {} at index {i}; every closed form built on the printed block drifts from the graph for n >= 2",
                    diag[i]
                ),
                None if ls_model_matches_block(pair) => {
                    "printed block and decomposed block coincide at this order".into()
                }
                None => "diagonals agree but the blocks differ off the diagonal".into(),
            };
            Ok(ReportEntry::exact(label, &closed, &oracle, true, &note))
        }
        None => Ok(ReportEntry::skip(
            label,
            closed.to_string(),
            &guard_note("dense matrices are not materialized at this order", false),
        )),
    }
}

fn integrality_entry(ctx: &AuditContext) -> ReportEntry {
    let label = "la_coefficient_integrality";
    match &ctx.cp_a {
        Some(cp) => {
            let ok = cp.integer_coeffs().is_some();
            ReportEntry {
                quantity: label.into(),
                closed_form_value: "all characteristic coefficients integral".into(),
                oracle_value: if ok { "integral".into() } else { "non-integral".into() },
                matched: ok,
                relative_deviation: Some(if ok { 0.0 } else { 1.0 }),
                erratum: false,
                skipped: false,
                note: "integrality is what rules out the printed quarter-integer coefficient"
                    .into(),
            }
        }
        None => ReportEntry::skip(
            label,
            "all characteristic coefficients integral".into(),
            &guard_note("needs the exact characteristic polynomial", true),
        ),
    }
}

fn minor_case_entry(ctx: &AuditContext, opts: &VerifyOptions) -> Result<ReportEntry> {
    let label = "minor_case_formulas";
    let n = ctx.n;
    let full = n <= MINOR_FULL_LIMIT || (opts.deep && n <= MINOR_FULL_DEEP_LIMIT);
    let run = full || n <= MINOR_SAMPLED_LIMIT;
    let pair = match (&ctx.pair, run) {
        (Some(p), true) => p,
        _ => {
            return Ok(ReportEntry::skip(
                label,
                "piecewise single/pair deletion formulas".into(),
                &guard_note("exact minor audit is quintic in n", true),
            ))
        }
    };
    let audit = minor_case_audit(pair, full)?;
    let covered_deviations = audit.deviations.iter().filter(|d| d.formula.is_some()).count();
    let uncovered = audit.uncovered_inputs();
    let matched = audit.formulas_all_match();
    let note = format!(
        "{} check(s){}; every covered deviation sits in the s = n+1 top-deletion branch at a quarter of the exact minor, and the deletion pair (n+1, 5n+1) is covered by no printed branch",
        audit.checked,
        if audit.full { "" } else { " (deterministic sample)" },
    );
    Ok(ReportEntry {
        quantity: label.into(),
        closed_form_value: "piecewise single/pair deletion formulas".into(),
        oracle_value: format!(
            "{covered_deviations} covered deviation(s), {} uncovered pair(s)",
            uncovered.len()
        ),
        matched,
        relative_deviation: None,
        erratum: true,
        skipped: false,
        note,
    })
}

fn spectrum_union_entry(
    ctx: &AuditContext,
    chain: Option<&HeptagonalChain>,
    float_ok: bool,
) -> Result<ReportEntry> {
    let label = "spectrum_union";
    let (chain, pair) = match (chain, &ctx.pair, float_ok) {
        (Some(c), Some(p), true) => (c, p),
        _ => {
            return Ok(ReportEntry::skip(
                label,
                "spec(L) = spec(L_A) union spec(L_S)".into(),
                &guard_note("dense eigensolves are capped", false),
            ))
        }
    };
    let full = numeric_spectrum(&chain.laplacian())?;
    let a = numeric_spectrum_f64(&quad_matrix_to_f64(&pair.l_a))?;
    let s = numeric_spectrum(&pair.l_s)?;
    let union = sorted_union(&a.eigenvalues, &s.eigenvalues);
    let gap = max_pairwise_gap(&full.eigenvalues, &union)?;
    Ok(ReportEntry {
        quantity: label.into(),
        closed_form_value: "max |delta lambda| < 1e-8".into(),
        oracle_value: format!("{gap:.3e}"),
        matched: gap < 1e-8,
        relative_deviation: Some(gap),
        erratum: false,
        skipped: false,
        note: "eigenvalue multiset of L vs the union over the two blocks".into(),
    })
}

fn cross_oracle_entry(
    ctx: &AuditContext,
    chain: Option<&HeptagonalChain>,
    float_ok: bool,
) -> Result<ReportEntry> {
    let label = "kirchhoff_cross_oracle";
    let (chain, table) = match (chain, &ctx.table, float_ok) {
        (Some(c), Some(t), true) => (c, t),
        _ => {
            return Ok(ReportEntry::skip(
                label,
                "exact resistance Kf vs spectral Kf".into(),
                &guard_note("needs both exact and spectral oracles", true),
            ))
        }
    };
    let exact = table.kirchhoff_index();
    let spectral = kirchhoff_spectral(chain)?;
    let ef = rational_to_f64(&exact);
    let rel = ((spectral - ef) / ef).abs();
    Ok(ReportEntry {
        quantity: label.into(),
        closed_form_value: decimal_string(&exact, 6),
        oracle_value: format!("{spectral:.6}"),
        matched: rel < 1e-9,
        relative_deviation: Some(rel),
        erratum: false,
        skipped: false,
        note: "two independent oracles for the same quantity".into(),
    })
}

fn foster_entry(ctx: &AuditContext, chain: Option<&HeptagonalChain>) -> ReportEntry {
    let label = "foster_edge_sum";
    let expected = rat(9 * ctx.n as i64 + 1);
    match (chain, &ctx.table) {
        (Some(c), Some(t)) => ReportEntry::exact(
            label,
            &expected,
            &t.sum_over_edges(c.edges()),
            false,
            "edge resistances must sum to |V| - 1 = 9n+1",
        ),
        _ => ReportEntry::skip(
            label,
            expected.to_string(),
            &guard_note("needs the exact resistance oracle", true),
        ),
    }
}

fn enumeration_entry(ctx: &AuditContext, chain: Option<&HeptagonalChain>) -> Result<ReportEntry> {
    let label = "tau_enumeration";
    let chain = match chain {
        Some(c) => c,
        None => {
            return Ok(ReportEntry::skip(
                label,
                "brute-force spanning-tree count".into(),
                &guard_note("dense matrices are not materialized at this order", false),
            ))
        }
    };
    if chain.edge_count() > ENUMERATION_EDGE_LIMIT {
        return Ok(ReportEntry::skip(
            label,
            "brute-force spanning-tree count".into(),
            &format!(
                "skipped (size): enumeration is capped at {ENUMERATION_EDGE_LIMIT} edges and this chain has {}",
                chain.edge_count()
            ),
        ));
    }
    let tau = match &ctx.tau {
        Some(t) => t.clone(),
        None => {
            return Ok(ReportEntry::skip(
                label,
                "brute-force spanning-tree count".into(),
                &guard_note("needs the exact matrix-tree oracle", true),
            ))
        }
    };
    let enumerated = spanning_trees_enumerate(chain)?;
    Ok(ReportEntry::exact(
        label,
        &Rational::from(tau),
        &Rational::from(enumerated),
        false,
        "matrix-tree cofactor vs explicit enumeration of spanning edge sets",
    ))
}

fn kirchhoff_row_entry(n: usize) -> ReportEntry {
    let label = "published_kirchhoff_row";
    let printed = PUBLISHED_KIRCHHOFF_TABLE[n - 1];
    let formula = decimal_string(&lemma31_kf(n), 2);
    let erratum = KIRCHHOFF_TABLE_DISCREPANT_ROWS.contains(&n);
    let note = if erratum {
        format!("known transcription slip in the printed table at n = {n}")
    } else {
        "printed cell vs its generating closed form, both to two decimals".into()
    };
    ReportEntry {
        quantity: label.into(),
        closed_form_value: printed.into(),
        oracle_value: formula.clone(),
        matched: printed == formula,
        relative_deviation: string_deviation(printed, &formula),
        erratum,
        skipped: false,
        note,
    }
}

fn kirchhoff_row_vs_oracle_entry(ctx: &AuditContext) -> ReportEntry {
    let label = "published_kirchhoff_vs_oracle";
    let printed = PUBLISHED_KIRCHHOFF_TABLE[ctx.n - 1];
    match &ctx.table {
        Some(t) => {
            let exact = decimal_string(&t.kirchhoff_index(), 2);
            ReportEntry {
                quantity: label.into(),
                closed_form_value: printed.into(),
                oracle_value: exact.clone(),
                matched: printed == exact,
                relative_deviation: string_deviation(printed, &exact),
                erratum: true,
                skipped: false,
                note: "printed cell vs the exact resistance oracle; the table inherits the coefficient erratum".into(),
            }
        }
        None => ReportEntry::skip(
            label,
            printed.into(),
            &guard_note("needs the exact resistance oracle", true),
        ),
    }
}

fn complexity_row_entry(n: usize) -> Result<ReportEntry> {
    let label = "published_complexity_row";
    let printed = PUBLISHED_COMPLEXITY_TABLE[n - 1];
    let exact = lemma34_tau(n)?;
    let rounded = round_significant(&exact, 6);
    let note = if rounded == exact {
        "printed cell equals the closed form exactly".into()
    } else {
        format!("printed cell rounds the closed form {exact} to six significant figures")
    };
    Ok(ReportEntry {
        quantity: label.into(),
        closed_form_value: printed.into(),
        oracle_value: exact.to_string(),
        matched: printed == rounded.to_string(),
        relative_deviation: string_deviation(printed, &exact.to_string()),
        erratum: false,
        skipped: false,
        note,
    })
}

fn complexity_row_vs_oracle_entry(ctx: &AuditContext) -> ReportEntry {
    let label = "published_complexity_vs_matrix_tree";
    let printed = PUBLISHED_COMPLEXITY_TABLE[ctx.n - 1];
    match &ctx.tau {
        Some(tau) => ReportEntry {
            quantity: label.into(),
            closed_form_value: printed.into(),
            oracle_value: tau.to_string(),
            matched: printed == round_significant(tau, 6).to_string(),
            relative_deviation: string_deviation(printed, &tau.to_string()),
            erratum: true,
            skipped: false,
            note: "printed cell vs the graph's true spanning-tree count; diverges for n >= 2"
                .into(),
        },
        None => ReportEntry::skip(
            label,
            printed.into(),
            &guard_note("needs the exact matrix-tree oracle", true),
        ),
    }
}

/// Which published table a `table` command reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Kirchhoff,
    Complexity,
}

impl std::str::FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kirchhoff" => Ok(TableKind::Kirchhoff),
            "complexity" => Ok(TableKind::Complexity),
            other => Err(Error::UnsupportedMethod(format!(
                "unknown table kind '{other}' (expected kirchhoff or complexity)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Md,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "md" => Ok(TableFormat::Md),
            other => Err(Error::UnsupportedMethod(format!(
                "unknown table format '{other}' (expected csv, json, or md)"
            ))),
        }
    }
}

/// One row of a reproduced table. Only the columns of the requested kind
/// are populated; oracle cells read `"skipped (size)"` above the exact
/// cutoff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub kf_closed: Option<String>,
    pub kf_oracle: Option<String>,
    pub tau_closed: Option<String>,
    pub tau_oracle: Option<String>,
}

const SKIPPED_CELL: &str = "skipped (size)";

/// Compute rows `from..=to` of the requested table. Closed-form columns
/// are evaluated for every row; oracle columns only up to `oracle_cutoff`.
pub fn table_rows(
    kind: TableKind,
    from: usize,
    to: usize,
    oracle_cutoff: usize,
) -> Result<Vec<TableRow>> {
    if from == 0 || from > to {
        return Err(Error::InvalidRange(format!("invalid table range {from}..{to}")));
    }
    let mut rows = Vec::with_capacity(to - from + 1);
    for n in from..=to {
        let row = match kind {
            TableKind::Kirchhoff => {
                let closed = decimal_string(&lemma31_kf(n), 2);
                let oracle = if n <= oracle_cutoff {
                    let chain = build_chain(n)?;
                    decimal_string(&resistance_table(&chain)?.kirchhoff_index(), 2)
                } else {
                    SKIPPED_CELL.into()
                };
                TableRow {
                    n,
                    kf_closed: Some(closed),
                    kf_oracle: Some(oracle),
                    tau_closed: None,
                    tau_oracle: None,
                }
            }
            TableKind::Complexity => {
                let closed = lemma34_tau(n)?.to_string();
                let oracle = if n <= oracle_cutoff {
                    spanning_trees_matrix_tree(&build_chain(n)?)?.to_string()
                } else {
                    SKIPPED_CELL.into()
                };
                TableRow {
                    n,
                    kf_closed: None,
                    kf_oracle: None,
                    tau_closed: Some(closed),
                    tau_oracle: Some(oracle),
                }
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn kind_columns(kind: TableKind) -> [&'static str; 3] {
    match kind {
        TableKind::Kirchhoff => ["n", "kf_closed", "kf_oracle"],
        TableKind::Complexity => ["n", "tau_closed", "tau_oracle"],
    }
}

fn row_cells(kind: TableKind, row: &TableRow) -> [String; 3] {
    let blank = String::new;
    match kind {
        TableKind::Kirchhoff => [
            row.n.to_string(),
            row.kf_closed.clone().unwrap_or_else(blank),
            row.kf_oracle.clone().unwrap_or_else(blank),
        ],
        TableKind::Complexity => [
            row.n.to_string(),
            row.tau_closed.clone().unwrap_or_else(blank),
            row.tau_oracle.clone().unwrap_or_else(blank),
        ],
    }
}

/// Render rows in the requested format. CSV and Markdown show the three
/// columns of the table kind; JSON carries the full row structs.
pub fn render_table(kind: TableKind, rows: &[TableRow], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => {
            let mut out = kind_columns(kind).join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&row_cells(kind, row).join(","));
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        TableFormat::Md => {
            let cols = kind_columns(kind);
            let mut out = format!("| {} |\n", cols.join(" | "));
            out.push_str(&format!("|{}\n", " --- |".repeat(cols.len())));
            for row in rows {
                out.push_str(&format!("| {} |\n", row_cells(kind, row).join(" | ")));
            }
            out
        }
    }
}
