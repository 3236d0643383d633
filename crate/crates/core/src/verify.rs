//! Verification suites comparing the engines with each other and with the
//! closed forms. Every check records a status and machine-readable evidence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::closed_forms::{
    diagonal_weight, factorization_profile, fit_polynomial, ClosedFormFamily, CoordinateMap,
    FormulaVariant,
};
use crate::engine::{
    extract_multiplicities, iterate_single_step, single_step_decompose, tensor_power_weights,
    tensor_with_vector, MultiplicityTower,
};
use crate::error::{Error, Result};
use crate::fan::{
    ambient_singular_power, annihilation_check, fan_closed_form, fan_diff, fan_power_direct,
    fan_recursion_solve, singular_diff, singular_power_direct, vector_singular_closed,
    SingularPowerElement,
};
use crate::formal::{singular_element, weight_multiplicities};
use crate::io::diff_docs;
use crate::lattice::{dim_irrep, Fundamental, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    DocumentedDiscrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub evidence: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    OracleAgreement,
    DimensionIdentity,
    Tables,
    ClosedForms,
    FanSingular,
    Conjectures,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 6] = [
        Suite::OracleAgreement,
        Suite::DimensionIdentity,
        Suite::Tables,
        Suite::ClosedForms,
        Suite::FanSingular,
        Suite::Conjectures,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::OracleAgreement => "oracle-agreement",
            Suite::DimensionIdentity => "dimension-identity",
            Suite::Tables => "paper-tables",
            Suite::ClosedForms => "closed-forms",
            Suite::FanSingular => "fan-singular",
            Suite::Conjectures => "conjectures",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.id() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown suite",
            })
    }
}

/// Shared recurrence towers so suites do not rebuild them.
struct Context {
    p_max: u32,
    vector: MultiplicityTower,
    spinor: MultiplicityTower,
}

impl Context {
    fn tower(&mut self, module: Fundamental) -> &mut MultiplicityTower {
        match module {
            Fundamental::Vector => &mut self.vector,
            Fundamental::Spinor => &mut self.spinor,
        }
    }
}

/// Runs `body`; an error becomes a failed check carrying the message.
fn check(name: impl Into<String>, body: impl FnOnce() -> Result<(CheckStatus, Value)>) -> Check {
    let name = name.into();
    match body() {
        Ok((status, evidence)) => Check {
            name,
            status,
            evidence,
        },
        Err(e) => Check {
            name,
            status: CheckStatus::Fail,
            evidence: json!({ "error": e.to_string() }),
        },
    }
}

fn pass_if(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn documented_if(differs: bool) -> CheckStatus {
    if differs {
        CheckStatus::DocumentedDiscrepancy
    } else {
        CheckStatus::Pass
    }
}

/// At most this many mismatch records are embedded in evidence.
const EVIDENCE_LIMIT: usize = 12;

fn capped(items: Vec<Value>) -> Value {
    let total = items.len();
    json!({
        "count": total,
        "examples": items.into_iter().take(EVIDENCE_LIMIT).collect::<Vec<_>>(),
    })
}

pub fn run(suite: Suite, p_max: u32) -> Result<VerificationReport> {
    if p_max < 1 {
        return Err(Error::OutOfRange("pmax must be at least 1".into()));
    }
    let mut ctx = Context {
        p_max,
        vector: MultiplicityTower::new(Fundamental::Vector),
        spinor: MultiplicityTower::new(Fundamental::Spinor),
    };
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for part in parts {
        let found = match part {
            Suite::OracleAgreement => oracle_agreement(&mut ctx),
            Suite::DimensionIdentity => dimension_identity(&mut ctx),
            Suite::Tables => tables(&mut ctx),
            Suite::ClosedForms => closed_forms(&mut ctx),
            Suite::FanSingular => fan_singular(&mut ctx),
            Suite::Conjectures => conjectures(&mut ctx),
            Suite::All => unreachable!("expanded above"),
        };
        checks.extend(found.into_iter().map(|mut c| {
            c.name = format!("{}/{}", part.id(), c.name);
            c
        }));
    }
    Ok(VerificationReport {
        suite: suite.id().to_string(),
        checks,
    })
}

fn oracle_agreement(ctx: &mut Context) -> Vec<Check> {
    let mut out = Vec::new();
    for module in Fundamental::ALL {
        for p in 0..=ctx.p_max {
            let recurrence = ctx.tower(module).level(p).decomposition();
            out.push(check(format!("{module}/p{p}"), || {
                let oracle = extract_multiplicities(&tensor_power_weights(module, p), module, p)?;
                let single = iterate_single_step(module, p)?;
                let fan =
                    fan_recursion_solve(module, p, Some(&crate::formal::Window::centered(0)))?
                        .function
                        .decomposition();
                let agree = [&recurrence, &single, &fan].iter().all(|d| **d == oracle);
                Ok((
                    pass_if(agree),
                    json!({
                        "irreducibles": oracle.len(),
                        "recurrence_agrees": recurrence == oracle,
                        "single_step_agrees": single == oracle,
                        "fan_solver_agrees": fan == oracle,
                    }),
                ))
            }));
        }
    }
    out.push(check("character-identity", || {
        let psi0 = singular_element(Weight::ZERO)?;
        let mut checked = 0;
        let mut bad = Vec::new();
        for d1 in 0..=10 {
            for d2 in (0..=d1).rev().step_by(2) {
                let lam = Weight::doubled(d1, d2)?;
                if weight_multiplicities(lam)?.convolve(&psi0) != singular_element(lam)? {
                    bad.push(json!(lam.to_string()));
                }
                checked += 1;
            }
        }
        Ok((
            pass_if(bad.is_empty()),
            json!({ "weights": checked, "mismatches": bad }),
        ))
    }));
    out
}

fn dimension_identity(ctx: &mut Context) -> Vec<Check> {
    let mut out = Vec::new();
    for module in Fundamental::ALL {
        let mut rows = Vec::new();
        let mut ok = true;
        for p in 0..=ctx.p_max {
            let d = ctx.tower(module).level(p).decomposition();
            let sum = d.dimension_sum();
            let expected = d.expected_dimension();
            ok &= sum == expected && d.support_in_coset();
            rows.push(json!({ "p": p, "sum": sum.to_string(), "expected": expected.to_string() }));
        }
        out.push(Check {
            name: module.to_string(),
            status: pass_if(ok),
            evidence: json!({ "powers": rows }),
        });
    }
    out
}

/// Compares a family with the engine for every `p` in `powers`.
fn family_mismatches(
    tower: &mut MultiplicityTower,
    family: ClosedFormFamily,
    powers: impl Iterator<Item = u32>,
    variant: FormulaVariant,
    map: CoordinateMap,
) -> Result<Vec<Value>> {
    let mut bad = Vec::new();
    for p in powers.filter(|p| family.in_domain(*p)) {
        let formula = match family.evaluate(p, variant) {
            Ok(v) => Some(v),
            Err(Error::NonIntegral { .. }) => None,
            Err(e) => return Err(e),
        };
        let engine = family.engine_value(tower, p, map);
        if formula.as_ref() != Some(&engine) {
            bad.push(json!({
                "family": family.id(),
                "p": p,
                "weight": family.weight(p, map).map(|w| w.to_string()),
                "formula": formula.map_or_else(|| "non-integer".to_string(), |v| v.to_string()),
                "engine": engine.to_string(),
            }));
        }
    }
    Ok(bad)
}

fn tables(ctx: &mut Context) -> Vec<Check> {
    let p_max = ctx.p_max;
    let mut out = Vec::new();
    let mut literal = Vec::new();
    for family in ClosedFormFamily::spinor_table() {
        let tower = ctx.tower(Fundamental::Spinor);
        out.push(check(family.id(), || {
            let bad = family_mismatches(
                tower,
                family,
                2..=p_max,
                FormulaVariant::Validated,
                CoordinateMap::Validated,
            )?;
            Ok((
                pass_if(bad.is_empty()),
                json!({ "powers": [2, p_max], "mismatches": bad }),
            ))
        }));
        if let Ok(bad) = family_mismatches(
            ctx.tower(Fundamental::Spinor),
            family,
            2..=p_max,
            FormulaVariant::Validated,
            CoordinateMap::Literal,
        ) {
            literal.extend(bad);
        }
    }
    out.push(Check {
        name: "spinor-table/printed-weight-map".into(),
        status: documented_if(!literal.is_empty()),
        evidence: json!({
            "printed_map": "p*omega2 - a*alpha2 - (b-1)*alpha1",
            "validated_map": "p*omega2 - a*alpha2 - (b-1)*e1",
            "mismatches": capped(literal),
        }),
    });

    let mut nonzero = 0;
    for family in ClosedFormFamily::vector_table() {
        if family
            .evaluate(7, FormulaVariant::Validated)
            .is_ok_and(|v| !v.is_zero())
        {
            nonzero += 1;
        }
        let tower = ctx.tower(Fundamental::Vector);
        out.push(check(family.id(), || {
            let bad = family_mismatches(
                tower,
                family,
                1..=p_max,
                FormulaVariant::Validated,
                CoordinateMap::Validated,
            )?;
            Ok((
                pass_if(bad.is_empty()),
                json!({ "powers": [1, p_max], "mismatches": bad }),
            ))
        }));
    }
    out.push(Check {
        name: "vector-table/entry-count".into(),
        status: CheckStatus::Pass,
        evidence: json!({ "entries": 16, "nonzero_polynomials": nonzero, "zeros": 16 - nonzero }),
    });
    out
}

fn closed_forms(ctx: &mut Context) -> Vec<Check> {
    let p_max = ctx.p_max;
    let mut out = Vec::new();
    let diagonal = |s: u32| {
        (1..=p_max)
            .flat_map(move |p| (0..=p).map(move |t| (ClosedFormFamily::Diagonal { s, t }, p)))
    };
    for s in 1..=6u32 {
        let tower = ctx.tower(Fundamental::Vector);
        out.push(check(format!("diagonal-s{s}"), || {
            let mut bad = Vec::new();
            let mut zeros = 0;
            let mut points = 0;
            for (family, p) in diagonal(s) {
                let mism = family_mismatches(
                    tower,
                    family,
                    std::iter::once(p),
                    FormulaVariant::Validated,
                    CoordinateMap::Validated,
                )?;
                if family.evaluate(p, FormulaVariant::Validated)?.is_zero() {
                    zeros += 1;
                }
                points += 1;
                bad.extend(mism);
            }
            Ok((
                pass_if(bad.is_empty()),
                json!({ "points": points, "zero_values": zeros, "mismatches": bad }),
            ))
        }));
    }

    let tower = ctx.tower(Fundamental::Vector);
    out.push(check("diagonal-s5/printed", || {
        let mut bad = Vec::new();
        for (family, p) in diagonal(5) {
            bad.extend(family_mismatches(
                tower,
                family,
                std::iter::once(p),
                FormulaVariant::Literal,
                CoordinateMap::Validated,
            )?);
        }
        Ok((
            documented_if(!bad.is_empty()),
            json!({
                "validated_quadratic": "(t^2+11t+6)p^2 - (2t^3+17t^2+53t+18)p + (t^4+6t^3+29t^2+60t+12)",
                "printed_quadratic": "(t^2+11t+6)p^2 - (2t+4)(t+1)(t+2)p + (t^4+4t^3+8t^2+8t+6)",
                "mismatches": capped(bad),
            }),
        ))
    }));

    let tower = ctx.tower(Fundamental::Vector);
    out.push(check("diagonal/printed-weight-map", || {
        let mut bad = Vec::new();
        for s in 1..=3 {
            for (family, p) in diagonal(s) {
                bad.extend(family_mismatches(
                    tower,
                    family,
                    std::iter::once(p),
                    FormulaVariant::Validated,
                    CoordinateMap::Literal,
                )?);
            }
        }
        Ok((
            documented_if(!bad.is_empty()),
            json!({
                "printed_map": "p*omega2 - t*alpha1 - (s-1)*e1",
                "validated_map": "p*omega1 - t*alpha1 - (s-1)*e1",
                "mismatches": capped(bad),
            }),
        ))
    }));

    let (vector, spinor) = (&mut ctx.vector, &mut ctx.spinor);
    out.push(check("diagonal-s1/spinor-upper-line", || {
        let mut bad = Vec::new();
        for p in 1..=p_max {
            for t in 0..=p {
                let formula = ClosedFormFamily::Diagonal { s: 1, t }
                    .evaluate(p, FormulaVariant::Validated)?;
                let (pi, ti) = (p as i64, t as i64);
                let sp = spinor.value(p, Weight::doubled(pi, pi - 2 * ti)?);
                let vec = vector.value(p, diagonal_weight(1, t, p, CoordinateMap::Validated));
                if formula != sp || formula != vec {
                    bad.push(json!({ "p": p, "t": t }));
                }
            }
        }
        Ok((pass_if(bad.is_empty()), json!({ "mismatches": bad })))
    }));

    for s in 1..=6u32 {
        let tower = ctx.tower(Fundamental::Vector);
        let mut rows = Vec::new();
        let mut exceptions = Vec::new();
        let mut ok = true;
        for t in 0..=5u32 {
            match factorization_profile(tower, s, t) {
                Ok(prof) => {
                    let integer_roots = prof.roots.iter().all(|(r, _)| r.is_integer());
                    let vanishes = prof.poly.is_zero();
                    let row = json!({
                        "t": t,
                        "vanishes": vanishes,
                        "polynomial": prof.poly.to_string(),
                        "splits": prof.splits,
                        "residual": prof.residual.as_ref().map(|q| q.to_string()),
                        "residual_irreducible": prof.residual_irreducible,
                    });
                    if vanishes {
                        ok &= prof.residual.is_none();
                    } else if s <= 3 {
                        ok &= prof.splits && integer_roots;
                    } else if prof.residual_irreducible == Some(true) {
                        ok &= !prof.splits;
                    } else {
                        exceptions.push(row.clone());
                    }
                    rows.push(row);
                }
                Err(e) => {
                    ok = false;
                    rows.push(json!({ "t": t, "error": e.to_string() }));
                }
            }
        }
        out.push(Check {
            name: format!("factorization-s{s}"),
            status: pass_if(ok),
            evidence: json!({ "profiles": rows }),
        });
        if !exceptions.is_empty() {
            out.push(Check {
                name: format!("factorization-s{s}/reducible-residual"),
                status: CheckStatus::DocumentedDiscrepancy,
                evidence: json!({ "cases": exceptions }),
            });
        }
    }
    out
}

fn fan_singular(ctx: &mut Context) -> Vec<Check> {
    let p_top = ctx.p_max.min(8);
    let mut out = Vec::new();

    out.push(check("fan-formula", || {
        let mut bad = Vec::new();
        for p in 2..=p_top.max(2) {
            let diff = fan_diff(p, FormulaVariant::Validated)?;
            let zero_point = fan_closed_form(p, 0, 0, FormulaVariant::Validated);
            if !diff.is_empty() || zero_point != BigInt::from(-1) {
                bad.push(json!({ "p": p, "diff": diff_docs(&diff) }));
            }
        }
        Ok((
            pass_if(bad.is_empty()),
            json!({ "powers": [2, p_top.max(2)], "mismatches": bad }),
        ))
    }));
    out.push(check("fan-formula/printed", || {
        let mut rows = Vec::new();
        let mut differs = false;
        for p in 2..=p_top.max(2) {
            let diff = fan_diff(p, FormulaVariant::Literal)?;
            differs |= !diff.is_empty();
            rows.push(json!({
                "p": p,
                "count": diff.len(),
                "examples": diff_docs(&diff[..diff.len().min(EVIDENCE_LIMIT)]),
            }));
        }
        Ok((
            documented_if(differs),
            json!({ "guard": "0 < i <= j", "diffs": rows }),
        ))
    }));

    for module in Fundamental::ALL {
        out.push(check(format!("{module}-singular-formula"), || {
            let mut bad = Vec::new();
            for p in 1..=p_top {
                let diff = singular_diff(module, p, FormulaVariant::Validated);
                if !diff.is_empty() {
                    bad.push(json!({ "p": p, "diff": diff_docs(&diff[..diff.len().min(EVIDENCE_LIMIT)]) }));
                }
            }
            Ok((pass_if(bad.is_empty()), json!({ "powers": [1, p_top], "mismatches": bad })))
        }));
        out.push(check(format!("{module}-singular-formula/printed"), || {
            let mut rows = Vec::new();
            let mut differs = false;
            for p in 1..=p_top {
                let diff = singular_diff(module, p, FormulaVariant::Literal);
                differs |= !diff.is_empty();
                rows.push(json!({
                    "p": p,
                    "count": diff.len(),
                    "examples": diff_docs(&diff[..diff.len().min(EVIDENCE_LIMIT)]),
                }));
            }
            Ok((documented_if(differs), json!({ "diffs": rows })))
        }));
    }

    for module in Fundamental::ALL {
        out.push(check(format!("annihilation/{module}"), || {
            let mut rows = Vec::new();
            let mut ok = true;
            for p in 2..=p_top.max(2) {
                let r = annihilation_check(module, p)?;
                ok &= r.residual.is_empty() && r.homogeneous_zeros_outside_psi;
                rows.push(json!({
                    "p": p,
                    "points": r.checked_points,
                    "residual_terms": r.residual.len(),
                }));
            }
            Ok((
                pass_if(ok),
                json!({ "identity": "sum_gamma s(gamma) M(mu+gamma) + psi(mu) = 0", "powers": rows }),
            ))
        }));
    }
    out.push(check("annihilation/homogeneous-reading", || {
        let mut rows = Vec::new();
        for module in Fundamental::ALL {
            for p in 2..=p_top.max(2) {
                let psi = ambient_singular_power(module, p);
                rows.push(json!({
                    "module": module.name(),
                    "p": p,
                    "nonzero_points": psi.len(),
                    "top_value": psi.coeff(module.top_weight(p)).to_string(),
                }));
            }
        }
        Ok((
            CheckStatus::DocumentedDiscrepancy,
            json!({
                "statement": "sum_gamma s(gamma) M(mu+gamma) = 0 at every point",
                "holds_off": "support of (Psi^omega)^p",
                "nonzero_sums": rows,
            }),
        ))
    }));

    out.push(check("pascal-consistency", || {
        let psi0 = singular_element(Weight::ZERO)?;
        let mut ok = true;
        for p in 2..p_top.max(2) {
            ok &= fan_power_direct(p + 1)?.terms() == &fan_power_direct(p)?.terms().convolve(&psi0);
        }
        Ok((pass_if(ok), json!({ "powers": [2, p_top.max(2)] })))
    }));

    let p_max = ctx.p_max;
    for module in Fundamental::ALL {
        let tower = ctx.tower(module);
        out.push(check(format!("singular-power/{module}"), || {
            let psi0 = singular_element(Weight::ZERO)?;
            let mut bad = Vec::new();
            for p in 1..=p_top {
                let direct = singular_power_direct(module, p)?;
                let d = tower.level(p).decomposition();
                let by_weights = tensor_power_weights(module, p).convolve(&psi0);
                let ok = direct.terms() == &by_weights
                    && direct == SingularPowerElement::from_decomposition(&d)
                    && direct.dominant_part().into_terms() == *d.multiplicities();
                if !ok {
                    bad.push(json!(p));
                }
            }
            Ok((pass_if(bad.is_empty()), json!({ "failing_powers": bad })))
        }));
    }

    let tower = ctx.tower(Fundamental::Vector);
    out.push(check("worked-example", || {
        let top = p_max.max(30);
        let mut bad = Vec::new();
        for p in 2..=top {
            let pi = p as i64;
            let at = Weight::int(pi - 2, 1);
            let m = tower.value(p, at);
            let psi = ambient_singular_power(Fundamental::Vector, p).coeff(at);
            let closed = vector_singular_closed(p, at, FormulaVariant::Validated);
            let want_m = BigInt::from((pi - 1) * (pi - 2) / 2);
            let want_psi = BigInt::from(pi * (pi - 1));
            if m != want_m || psi != want_psi || closed != want_psi {
                bad.push(json!({ "p": p, "m": m.to_string(), "psi": psi.to_string() }));
            }
        }
        let mut audits = Vec::new();
        for p in 4..=p_max.clamp(4, 10) {
            let pi = p as i64;
            let at = Weight::int(pi - 2, 1);
            let window = crate::formal::Window { lo: (at.d1(), at.d2()), hi: (at.d1(), at.d2()) };
            let sol = fan_recursion_solve(Fundamental::Vector, p, Some(&window))?;
            let step = sol.audit_at(at).ok_or_else(|| Error::Malformed("missing audit".into()))?;
            let line = |k: i64| step.lines.get(&k).cloned().unwrap_or_default();
            let expected0 = BigInt::from((pi - 1) * pi * (pi - 3) / 2);
            let expected1 = BigInt::from(-(pi - 1) * (pi - 1) * (pi - 2));
            if line(0) != expected0 || line(1) != expected1 || step.singular != BigInt::from(pi * (pi - 1)) {
                bad.push(json!({ "p": p, "audit": "line mismatch" }));
            }
            audits.push(json!({
                "p": p,
                "singular": step.singular.to_string(),
                "lines": step.lines.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
                "value": step.value.to_string(),
            }));
        }
        Ok((pass_if(bad.is_empty()), json!({ "powers": [2, top], "audits": audits, "mismatches": bad })))
    }));
    out
}

fn conjectures(ctx: &mut Context) -> Vec<Check> {
    let p_max = ctx.p_max;
    let mut out = Vec::new();

    out.push(check("vector-step/multiplicity-free", || {
        let mut bad = Vec::new();
        let mut checked = 0;
        for d1 in 0..=16 {
            for d2 in (0..=d1).rev().step_by(2) {
                let mu = Weight::doubled(d1, d2)?;
                let step = single_step_decompose(mu, Fundamental::Vector)?;
                let listed = tensor_with_vector(mu)?;
                let dims: BigInt = listed
                    .iter()
                    .map(|w| dim_irrep(*w).expect("dominant"))
                    .sum();
                let ok = step.values().all(|m| m.is_one())
                    && step.keys().copied().collect::<Vec<_>>() == listed
                    && dims == dim_irrep(mu)? * 5;
                if !ok {
                    bad.push(json!(mu.to_string()));
                }
                checked += 1;
            }
        }
        Ok((
            pass_if(bad.is_empty()),
            json!({ "weights": checked, "mismatches": bad }),
        ))
    }));
    out.push(check("vector-step/boundary-cases", || {
        let cases = ["1/2,1/2", "3/2,1/2", "7/2,1/2"];
        let mut rows = Vec::new();
        for c in cases {
            let mu: Weight = c.parse()?;
            let terms: Vec<String> = tensor_with_vector(mu)?.iter().map(|w| w.to_string()).collect();
            rows.push(json!({ "mu": c, "summands": terms }));
        }
        Ok((
            CheckStatus::DocumentedDiscrepancy,
            json!({
                "note": "mu = omega2 drops the non-dominant (mu1, mu2-1); mu2 = 1/2 < mu1 has 4 summands",
                "cases": rows,
            }),
        ))
    }));

    let fit_families: Vec<(ClosedFormFamily, usize)> = ClosedFormFamily::spinor_table()
        .into_iter()
        .chain(ClosedFormFamily::vector_table())
        .map(|f| (f, 4))
        .chain((1..=6).flat_map(|s| {
            (0..=2).map(move |t| (ClosedFormFamily::Diagonal { s, t }, (s + t) as usize - 1))
        }))
        .collect();
    for (family, bound) in fit_families {
        let tower = ctx.tower(family.module());
        out.push(check(format!("polynomiality/{}", family.id()), || {
            let start = 2u32;
            let end = p_max.max(start + bound as u32 + 2);
            let offset = |p: u32| family.weight(p, CoordinateMap::Validated);
            if offset(start).is_none() {
                return Ok((
                    CheckStatus::Pass,
                    json!({ "note": "weight off the lattice for every p" }),
                ));
            }
            let fit = fit_polynomial(
                tower,
                |p| offset(p).expect("on lattice"),
                bound,
                start..=end,
            )?;
            let predictions: Vec<Value> = fit
                .predictions
                .iter()
                .map(|(p, v, _)| json!({ "p": p, "value": v.to_string() }))
                .collect();
            Ok((
                CheckStatus::Pass,
                json!({
                    "window": [start, end],
                    "polynomial": fit.poly.to_string(),
                    "degree": fit.poly.degree(),
                    "predictions": predictions,
                }),
            ))
        }));
    }

    let (vector, spinor) = (&mut ctx.vector, &mut ctx.spinor);
    out.push(check("upper-lines-coincide", || {
        let mut bad = Vec::new();
        for p in 0..=p_max {
            for t in 0..=p as i64 {
                let pi = p as i64;
                let v = vector.value(p, Weight::int(pi - t, t));
                let s = spinor.value(p, Weight::doubled(pi, pi - 2 * t)?);
                if v != s {
                    bad.push(json!({ "p": p, "t": t }));
                }
            }
        }
        Ok((pass_if(bad.is_empty()), json!({ "mismatches": bad })))
    }));

    let tower = ctx.tower(Fundamental::Vector);
    out.push(check("vanishing-below-top", || {
        let top = p_max.max(30);
        let bad: Vec<u32> = (1..=top)
            .filter(|p| !tower.value(*p, Weight::int(*p as i64 - 1, 0)).is_zero())
            .collect();
        Ok((
            pass_if(bad.is_empty()),
            json!({ "powers": [1, top], "nonzero_at": bad }),
        ))
    }));
    out
}
