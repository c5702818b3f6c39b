//! Named verification batches. Each check compares an independent
//! computation with a closed form or a printed table over a range, and
//! stops at the first counterexample.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{binomial, factorial, val2, val_p, BivariatePoly, Dyadic, Valuation};
use crate::enumeration::{
    class_of_graph, class_size_formula, fiber_size_2, graph_of_class, group_by_class, weight_of_graph,
    weight_of_permutation, Caps, Enumerator,
};
use crate::golden::{self, GoldenCell, ValuationColumn};
use crate::periodicity;
use crate::sequences::Sequences;
use crate::valuations::{self, ValuationRow};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    ClassSizes,
    TauValuationBound,
    FiberSizes,
    GraphBijection,
    WeightIdentity,
    GraphSumCount,
    Ord2Involutions,
    GraphSumPoly,
    GraphPolyRecurrence,
    BinomialValuationBound,
    Ord2Signed,
    Ord2Parity,
    OddProductCongruence,
    BetaShift,
    TModPeriod,
    BetaModPeriod,
    TableG,
    TableGSigned,
    TableOrd2,
}

impl Check {
    pub const ALL: [Check; 19] = [
        Check::ClassSizes,
        Check::TauValuationBound,
        Check::FiberSizes,
        Check::GraphBijection,
        Check::WeightIdentity,
        Check::GraphSumCount,
        Check::Ord2Involutions,
        Check::GraphSumPoly,
        Check::GraphPolyRecurrence,
        Check::BinomialValuationBound,
        Check::Ord2Signed,
        Check::Ord2Parity,
        Check::OddProductCongruence,
        Check::BetaShift,
        Check::TModPeriod,
        Check::BetaModPeriod,
        Check::TableG,
        Check::TableGSigned,
        Check::TableOrd2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ClassSizes => "class-sizes",
            Check::TauValuationBound => "tau-valuation-bound",
            Check::FiberSizes => "fiber-sizes",
            Check::GraphBijection => "graph-bijection",
            Check::WeightIdentity => "weight-identity",
            Check::GraphSumCount => "graph-sum-count",
            Check::Ord2Involutions => "ord2-involutions",
            Check::GraphSumPoly => "graph-sum-poly",
            Check::GraphPolyRecurrence => "graph-poly-recurrence",
            Check::BinomialValuationBound => "binomial-valuation-bound",
            Check::Ord2Signed => "ord2-signed",
            Check::Ord2Parity => "ord2-parity",
            Check::OddProductCongruence => "odd-product-congruence",
            Check::BetaShift => "beta-shift",
            Check::TModPeriod => "t-mod-period",
            Check::BetaModPeriod => "beta-mod-period",
            Check::TableG => "table-g",
            Check::TableGSigned => "table-g-signed",
            Check::TableOrd2 => "table-ord2",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Check::ClassSizes => "enumerated p-th roots grouped by refined class match the class-size formula",
            Check::TauValuationBound => "val_p(tau_p(n)) >= floor(n/p) - floor(n/p^2)",
            Check::FiberSizes => "fibers over the graph class have size 2^(floor(n/2)-s) and sum to t_n",
            Check::GraphBijection => "involution classes and constrained graphs correspond one to one",
            Check::WeightIdentity => "weights summed over a fiber equal fiber size times the graph weight",
            Check::GraphSumCount => "t_n equals its sum over graphs without doubled edges",
            Check::Ord2Involutions => "ord_2(t_n) closed form and the odd part from the graph sum",
            Check::GraphSumPoly => "t_n(x,y) equals its graph sum; coefficients are n!/(2^i i! (n-2i)!)",
            Check::GraphPolyRecurrence => "g_n(x,y) from the recurrence equals the brute-force weight sum",
            Check::BinomialValuationBound => "ord_2(2^i C(k,i)) >= ord_2(k) + i - ord_2(i) and its corollaries",
            Check::Ord2Signed => "ord_2(t_n(1,-1)) closed form, infinite at n = 2",
            Check::Ord2Parity => "ord_2 of even and odd involution counts where a closed form exists",
            Check::OddProductCongruence => "(1;2)_{2^(s-1)} = 1 mod 2^s for s >= 3",
            Check::BetaShift => "beta_(n + 2^(s+1)) = beta_n mod 2^s",
            Check::TModPeriod => "t_n mod m: pure period m for odd m, preperiod 4k-2 and period l for m = 2^k l",
            Check::BetaModPeriod => "beta_n mod 2^s has pure smallest period 2^(s+1), with the non-period witness",
            Check::TableG => "g_n(1,1) against the printed table",
            Check::TableGSigned => "g_n(1,-1) against the printed table",
            Check::TableOrd2 => "computed 2-adic valuations against the printed valuation table",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown check {s:?}")))
    }
}

/// Range parameters. `None` picks the per-check default.
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckParams {
    pub p: Option<u32>,
    pub n_max: Option<u64>,
    pub caps: Caps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} cases)", self.check, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

struct Tally {
    check: Check,
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new(check: Check) -> Self {
        Tally { check, cases: 0, failure: None }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Record one case; the message is only built on failure.
    fn case(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if self.failed() {
            return;
        }
        self.cases += 1;
        if !ok {
            self.failure = Some(msg());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome { check: self.check, passed: self.failure.is_none(), cases: self.cases, counterexample: self.failure }
    }
}

/// Run one check with a fresh sequence cache.
pub fn run(check: Check, params: &CheckParams) -> Result<CheckOutcome> {
    run_with(&mut Sequences::new(), check, params)
}

/// Run one check. Resource errors from the enumerators are passed through
/// so callers can report the run as inconclusive.
pub fn run_with(seq: &mut Sequences, check: Check, params: &CheckParams) -> Result<CheckOutcome> {
    let mut tally = Tally::new(check);
    let enumerator = Enumerator::new(params.caps);
    let n_max = |default: u64| params.n_max.unwrap_or(default);
    match check {
        Check::ClassSizes => {
            let plan: Vec<(u32, u64)> = match params.p {
                Some(p) => vec![(p, n_max(8))],
                None => vec![(2, n_max(10)), (3, n_max(9)), (5, n_max(7))],
            };
            for (p, top) in plan {
                for n in 0..=top as u32 {
                    class_sizes(&mut tally, seq, &enumerator, p, n)?;
                }
            }
        }
        Check::TauValuationBound => {
            let primes = params.p.map(|p| vec![p as u64]).unwrap_or_else(|| vec![2, 3, 5, 7]);
            for p in primes {
                let tau = seq.tau_prefix(n_max(500) as usize, p)?.to_vec();
                for (n, v) in tau.iter().enumerate() {
                    let bound = valuations::tau_valuation_lower_bound(n as u64, p);
                    let got = val_p(v, p)?;
                    tally.case(got >= Valuation::Finite(bound), || {
                        format!("p = {p}, n = {n}: val_p = {got} < {bound}")
                    });
                }
            }
        }
        Check::FiberSizes => {
            let t = seq.t_prefix(n_max(12) as usize).to_vec();
            for n in 0..=n_max(12) as u32 {
                let total: BigInt = enumerator
                    .graphs(n)?
                    .iter()
                    .map(|g| fiber_size_2(g, n))
                    .sum::<Result<BigInt>>()?;
                let expected = &t[n as usize];
                tally.case(&total == expected, || format!("n = {n}: fibers sum to {total}, t_n = {expected}"));
            }
            // Direct fiber counts from enumerated involutions, where affordable.
            for n in 0..=n_max(12).min(10) as u32 {
                let groups = group_by_class(&enumerator.pth_roots(n, 2)?, 2)?;
                for (class, members) in &groups {
                    let g = graph_of_class(class, 2, n)?;
                    let predicted = fiber_size_2(&g, n)?;
                    let seen = BigInt::from(members.len());
                    tally.case(predicted == seen, || format!("n = {n}, graph {g}: {seen} involutions, formula {predicted}"));
                }
            }
        }
        Check::GraphBijection => {
            for n in 0..=n_max(10) as u32 {
                let graphs = enumerator.graphs(n)?;
                let classes = group_by_class(&enumerator.pth_roots(n, 2)?, 2)?;
                tally.case(graphs.len() == classes.len(), || {
                    format!("n = {n}: {} graphs but {} classes", graphs.len(), classes.len())
                });
                for g in &graphs {
                    let class = class_of_graph(g, n)?;
                    let back = graph_of_class(&class, 2, n)?;
                    tally.case(&back == g && classes.contains_key(&class), || {
                        format!("n = {n}: graph {g} maps to class {class}, which is not realised or maps back to {back}")
                    });
                }
            }
        }
        Check::WeightIdentity => {
            for n in 0..=n_max(10) as u32 {
                for (class, members) in group_by_class(&enumerator.pth_roots(n, 2)?, 2)? {
                    let g = graph_of_class(&class, 2, n)?;
                    let mut lhs = BivariatePoly::zero();
                    for pi in &members {
                        lhs = &lhs + &weight_of_permutation(pi)?;
                    }
                    let rhs = weight_of_graph(&g, n)?.scale_int(&fiber_size_2(&g, n)?);
                    tally.case(lhs == rhs, || format!("n = {n}, graph {g}: fiber weight {lhs}, expected {rhs}"));
                }
            }
        }
        Check::GraphSumCount => {
            let top = n_max(400) as usize;
            let t = seq.t_prefix(top).to_vec();
            for (n, expected) in t.iter().enumerate() {
                let got = seq.t_from_graph_sum(n);
                tally.case(&got == expected, || format!("n = {n}: graph sum {got}, t_n = {expected}"));
            }
        }
        Check::Ord2Involutions => {
            let top = n_max(2000) as usize;
            let t = seq.t_prefix(top).to_vec();
            for (n, v) in t.iter().enumerate() {
                let closed = Valuation::Finite(valuations::ord2_t_closed(n as u64));
                let got = val2(v);
                tally.case(got == closed, || format!("n = {n}: ord_2(t_n) = {got}, closed form {closed}"));
            }
            let beta = seq.beta_prefix(top.min(400)).to_vec();
            for (n, b) in beta.iter().enumerate() {
                let got = seq.beta_from_graph_sum(n);
                tally.case(&got == b, || format!("n = {n}: graph-sum odd part {got}, odd part of t_n {b}"));
            }
        }
        Check::GraphSumPoly => {
            let top = n_max(80) as usize;
            let polys = seq.t_poly_prefix(top).to_vec();
            for (n, poly) in polys.iter().enumerate() {
                let via_graphs = seq.t_poly_from_graph_sum(n);
                tally.case(&via_graphs == poly, || format!("n = {n}: graph sum {via_graphs}, t_n(x,y) = {poly}"));
                let n = n as u64;
                let mut direct = BivariatePoly::zero();
                for i in 0..=n / 2 {
                    let c = factorial(n) / ((factorial(i) << i) * factorial(n - 2 * i));
                    direct.add_term((n - 2 * i) as u32, i as u32, Dyadic::from(c));
                }
                tally.case(&direct == poly, || format!("n = {n}: coefficients {poly}, expected {direct}"));
            }
        }
        Check::GraphPolyRecurrence => {
            for n in 0..=n_max(13) as u32 {
                let brute = enumerator.g_poly(n)?;
                let rec = seq.g_poly(n as i64);
                tally.case(brute == rec, || format!("n = {n}: recurrence {rec}, brute force {brute}"));
            }
        }
        Check::BinomialValuationBound => {
            let top = n_max(200);
            for k in 1..=top {
                for i in 1..=k {
                    tally.case(valuations::binomial_valuation_bound_holds(k, i), || {
                        format!("k = {k}, i = {i}: ord_2(2^i C(k,i)) = {}", val2(&(binomial(k, i) << i)))
                    });
                }
            }
        }
        Check::Ord2Signed | Check::Ord2Parity => {
            let k_max = n_max(500);
            for row in valuations::valuation_table_with(seq, k_max) {
                let reports = if check == Check::Ord2Signed { vec![&row.signed] } else { vec![&row.even, &row.odd] };
                for r in reports.into_iter().filter(|r| r.predicted.is_some()) {
                    tally.case(r.matches, || {
                        format!("n = {}, {}: computed {}, predicted {}", r.n, r.kind, r.computed, r.predicted.unwrap())
                    });
                }
            }
        }
        Check::OddProductCongruence => {
            for s in 3..=n_max(16) as u32 {
                tally.case(periodicity::oddfac_congruence(s)?, || format!("s = {s}: congruence fails"));
            }
        }
        Check::BetaShift => {
            for s in 3..=n_max(8) as u32 {
                let ok = periodicity::beta_shift_congruence(s, 1 << (s + 2))?;
                tally.case(ok, || format!("s = {s}: shift by 2^(s+1) changes beta mod 2^s"));
            }
        }
        Check::TModPeriod => {
            for m in 1..=n_max(99) {
                let window = periodicity::default_window(m);
                let report = periodicity::detect_t_period(m, window)?;
                let (pre, per) = periodicity::expected_t_period(m);
                tally.case(report.preperiod == pre && report.period == per, || {
                    format!(
                        "m = {m}: detected preperiod {}, period {}; expected {pre}, {per}",
                        report.preperiod, report.period
                    )
                });
            }
        }
        Check::BetaModPeriod => {
            for s in 3..=n_max(6) as u32 {
                let report = periodicity::beta_period_with(seq, s)?;
                let expected = 1u64 << (s + 1);
                tally.case(report.preperiod == 0 && report.period == expected, || {
                    format!("s = {s}: detected preperiod {}, period {}; expected 0, {expected}", report.preperiod, report.period)
                });
                tally.case(periodicity::beta_non_period_witness(seq, s), || {
                    format!("s = {s}: beta_(2^s+2) = beta_2 mod 2^s")
                });
            }
        }
        Check::TableG => golden_cells(&mut tally, &golden::printed_g_values(), &seq.g_int_prefix(21)),
        Check::TableGSigned => golden_cells(&mut tally, &golden::printed_g_signed_values(), &seq.g_alt_prefix(21)),
        Check::TableOrd2 => {
            for row in valuations::valuation_table_with(seq, n_max(500)) {
                compare_valuation_row(&mut tally, &row);
            }
        }
    }
    Ok(tally.finish())
}

fn class_sizes(tally: &mut Tally, seq: &mut Sequences, e: &Enumerator, p: u32, n: u32) -> Result<()> {
    let roots = e.pth_roots(n, p)?;
    let mut total = BigInt::from(0);
    for (class, members) in group_by_class(&roots, p)? {
        let formula = class_size_formula(&class, p, n)?;
        let seen = BigInt::from(members.len());
        tally.case(formula == seen, || format!("p = {p}, n = {n}, class {class}: {seen} members, formula {formula}"));
        total += formula;
    }
    let tau = seq.tau(n as usize, p as u64)?;
    tally.case(total == tau, || format!("p = {p}, n = {n}: class sizes sum to {total}, tau_p(n) = {tau}"));
    Ok(())
}

fn golden_cells(tally: &mut Tally, cells: &[GoldenCell], computed: &[BigInt]) {
    for cell in cells {
        let got = &computed[cell.n as usize];
        tally.case(*got == BigInt::from(cell.value), || format!("{cell}: computed {got}"));
    }
}

fn compare_valuation_row(tally: &mut Tally, row: &ValuationRow) {
    for (column, report) in ValuationColumn::ALL.into_iter().zip(row.reports()) {
        let printed = golden::printed_valuation_value(row.n, column);
        let text = golden::printed_valuation_cell(row.r, column);
        match printed {
            Some(v) => tally.case(report.computed == v && report.predicted == Some(v), || {
                format!(
                    "row 4k+{}, column {} (cell \"{text}\") at n = {}: computed {}, cell gives {v}",
                    row.r,
                    column.header(),
                    row.n,
                    report.computed
                )
            }),
            None => tally.case(report.predicted.is_none(), || {
                format!("row 4k+{}, column {}: printed unknown but a prediction exists", row.r, column.header())
            }),
        }
    }
}
