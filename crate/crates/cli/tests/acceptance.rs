//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use b2tensor::closed_forms::{diagonal_formula, diagonal_weight, fit_polynomial};
use b2tensor::engine::{
    extract_multiplicities, iterate_single_step, single_step_decompose, tensor_power_weights,
    tensor_with_vector,
};
use b2tensor::fan::{
    ambient_singular_power, annihilation_check, fan_diff, fan_recursion_solve, singular_diff,
};
use b2tensor::formal::{singular_element, weight_multiplicities};
use b2tensor::lattice::{dim_irrep, OMEGA1, RHO};
use b2tensor::{
    ClosedFormFamily, CoordinateMap, FormulaVariant, Fundamental, HalfInt, LatticeSeries,
    MultiplicityTower, Weight, WeylElement,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dominant_weights(max_d1: i64) -> impl Iterator<Item = Weight> {
    (0..=max_d1).flat_map(|d1| {
        (0..=d1)
            .rev()
            .step_by(2)
            .map(move |d2| Weight::doubled(d1, d2).unwrap())
    })
}

fn oracle_agreement() -> Outcome {
    let mut count = 0;
    for module in Fundamental::ALL {
        let mut tower = MultiplicityTower::new(module);
        for p in 0..=10 {
            let oracle = extract_multiplicities(&tensor_power_weights(module, p), module, p)
                .map_err(|e| e.to_string())?;
            let recurrence = tower.level(p).decomposition();
            let single = iterate_single_step(module, p).map_err(|e| e.to_string())?;
            let fan = fan_recursion_solve(module, p, None)
                .map_err(|e| e.to_string())?
                .function
                .decomposition();
            ensure(recurrence == oracle, || {
                format!("{module} p={p}: recurrence")
            })?;
            ensure(single == oracle, || format!("{module} p={p}: single-step"))?;
            ensure(fan == oracle, || format!("{module} p={p}: fan solver"))?;
            count += 1;
        }
    }
    Ok(format!("{count} decompositions, four methods"))
}

fn dimension_identity() -> Outcome {
    for module in Fundamental::ALL {
        let mut tower = MultiplicityTower::new(module);
        for p in 0..=14 {
            let sum = tower.level(p).decomposition().dimension_sum();
            let want = BigInt::from(module.dim()).pow(p);
            ensure(sum == want, || format!("{module} p={p}: {sum} != {want}"))?;
        }
    }
    Ok("p <= 14".into())
}

fn worked_example() -> Outcome {
    let mut tower = MultiplicityTower::new(Fundamental::Vector);
    for p in 2..=30u32 {
        let pi = p as i64;
        let at = Weight::int(pi - 2, 1);
        let m = tower.value(p, at);
        ensure(m == BigInt::from((pi - 1) * (pi - 2) / 2), || {
            format!("p={p}: m={m}")
        })?;
        let psi = ambient_singular_power(Fundamental::Vector, p).coeff(at);
        ensure(psi == BigInt::from(pi * (pi - 1)), || {
            format!("p={p}: singular={psi}")
        })?;
    }
    Ok("2 <= p <= 30".into())
}

fn vector_table() -> Outcome {
    let mut tower = MultiplicityTower::new(Fundamental::Vector);
    let cells = ClosedFormFamily::vector_table();
    let nonzero = cells
        .iter()
        .filter(|c| !c.evaluate(10, FormulaVariant::Validated).unwrap().is_zero())
        .count();
    // 1 + 1 + 3 + 4 nonzero cells in rows p..p-3
    ensure(nonzero == 9, || format!("{nonzero} nonzero cells"))?;
    for cell in &cells {
        for p in [2, 3].into_iter().chain(6..=14) {
            let formula = cell
                .evaluate(p, FormulaVariant::Validated)
                .map_err(|e| e.to_string())?;
            let engine = cell.engine_value(&mut tower, p, CoordinateMap::Validated);
            ensure(formula == engine, || {
                format!("{} p={p}: {formula} != {engine}", cell.id())
            })?;
        }
    }
    ensure(tower.value(2, Weight::ZERO).is_one(), || {
        "m_(0,0)^(2) != 1".into()
    })?;
    ensure(tower.value(3, Weight::ZERO).is_zero(), || {
        "m_(0,0)^(3) != 0".into()
    })?;
    Ok(format!(
        "{} cells: {nonzero} nonzero, {} zero",
        cells.len(),
        cells.len() - nonzero
    ))
}

fn spinor_table() -> Outcome {
    let mut tower = MultiplicityTower::new(Fundamental::Spinor);
    let cells = ClosedFormFamily::spinor_table();
    for cell in &cells {
        for p in 2..=14 {
            let formula = cell
                .evaluate(p, FormulaVariant::Validated)
                .map_err(|e| e.to_string())?;
            let engine = cell.engine_value(&mut tower, p, CoordinateMap::Validated);
            ensure(formula == engine, || {
                format!("{} p={p}: {formula} != {engine}", cell.id())
            })?;
        }
    }
    let corner = ClosedFormFamily::SpinorTable {
        a: HalfInt::from_int(2),
        b: 2,
    };
    let v = corner.engine_value(&mut tower, 2, CoordinateMap::Validated);
    ensure(v == BigInt::from(-1), || format!("(a=2,b=2,p=2) gives {v}"))?;
    Ok(format!("{} cells, 2 <= p <= 14", cells.len()))
}

fn diagonals() -> Outcome {
    let mut vector = MultiplicityTower::new(Fundamental::Vector);
    let mut spinor = MultiplicityTower::new(Fundamental::Spinor);
    let mut points = 0;
    for s in 1..=6 {
        for p in 1..=14u32 {
            for t in 0..=p {
                let formula = diagonal_formula(s, t, p, FormulaVariant::Validated)
                    .map_err(|e| e.to_string())?;
                let engine = vector.value(p, diagonal_weight(s, t, p, CoordinateMap::Validated));
                ensure(formula == engine, || {
                    format!("s={s} t={t} p={p}: {formula} != {engine}")
                })?;
                if s == 1 {
                    let pi = p as i64;
                    let upper = Weight::doubled(pi, pi - 2 * t as i64).unwrap();
                    let sp = spinor.value(p, upper);
                    ensure(sp == engine, || {
                        format!("spinor line t={t} p={p}: {sp} != {engine}")
                    })?;
                }
                points += 1;
            }
        }
    }
    Ok(format!("{points} points, s = 1..6"))
}

/// Multiplicity of `lam` in a Weyl-invariant weight diagram.
fn alternating_sum(diagram: &LatticeSeries, lam: Weight) -> BigInt {
    WeylElement::all()
        .iter()
        .map(|w| diagram.coeff(w.apply(lam + RHO) - RHO) * w.det())
        .sum()
}

fn vector_step() -> Outcome {
    let vector = weight_multiplicities(OMEGA1).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for mu in dominant_weights(16) {
        let step = single_step_decompose(mu, Fundamental::Vector).map_err(|e| e.to_string())?;
        let listed = tensor_with_vector(mu).map_err(|e| e.to_string())?;
        ensure(step.values().all(|m| m.is_one()), || {
            format!("{mu}: not multiplicity free")
        })?;
        ensure(step.keys().copied().eq(listed.iter().copied()), || {
            format!("{mu}: case formula")
        })?;
        let product = weight_multiplicities(mu)
            .map_err(|e| e.to_string())?
            .convolve(&vector);
        for lam in dominant_weights(mu.d1() + 2) {
            let m = alternating_sum(&product, lam);
            let want = BigInt::from(u8::from(listed.contains(&lam)));
            ensure(m == want, || format!("{mu} ⊗ vector at {lam}: {m}"))?;
        }
        let dims: BigInt = listed.iter().map(|w| dim_irrep(*w).unwrap()).sum();
        ensure(dims == dim_irrep(mu).unwrap() * 5, || {
            format!("{mu}: dimension")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} dominant weights with mu1 <= 8"))
}

fn fan_property() -> Outcome {
    let mut points = 0;
    for module in Fundamental::ALL {
        for p in 2..=8 {
            let r = annihilation_check(module, p).map_err(|e| e.to_string())?;
            ensure(r.residual.is_empty(), || {
                format!("{module} p={p}: residual")
            })?;
            ensure(r.homogeneous_zeros_outside_psi, || {
                format!("{module} p={p}: homogeneous")
            })?;
            points += r.checked_points;
        }
    }
    Ok(format!("{points} points"))
}

fn fan_singular_forms() -> Outcome {
    let mut printed = 0;
    for p in 2..=8 {
        let diff = fan_diff(p, FormulaVariant::Validated).map_err(|e| e.to_string())?;
        ensure(diff.is_empty(), || {
            format!("fan p={p}: {} differences", diff.len())
        })?;
        printed += fan_diff(p, FormulaVariant::Literal)
            .map_err(|e| e.to_string())?
            .len();
    }
    for module in Fundamental::ALL {
        for p in 1..=8 {
            let diff = singular_diff(module, p, FormulaVariant::Validated);
            ensure(diff.is_empty(), || {
                format!("{module} p={p}: {} differences", diff.len())
            })?;
            printed += singular_diff(module, p, FormulaVariant::Literal).len();
        }
    }
    Ok(format!("p <= 8; printed forms differ at {printed} points"))
}

fn character_identity() -> Outcome {
    let psi0 = singular_element(Weight::ZERO).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for lam in dominant_weights(10) {
        let lhs = weight_multiplicities(lam)
            .map_err(|e| e.to_string())?
            .convolve(&psi0);
        let rhs = singular_element(lam).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("{lam}"))?;
        checked += 1;
    }
    Ok(format!("{checked} weights with v1 <= 5"))
}

fn polynomiality() -> Outcome {
    let mut families: Vec<(ClosedFormFamily, usize, u32)> = ClosedFormFamily::spinor_table()
        .into_iter()
        .chain(ClosedFormFamily::vector_table())
        .map(|f| (f, 4, 6))
        .collect();
    for s in 1..=6 {
        for t in 0..=2 {
            families.push((ClosedFormFamily::Diagonal { s, t }, (s + t) as usize - 1, 2));
        }
    }
    let mut fitted = 0;
    for (family, bound, start) in families {
        let mut tower = MultiplicityTower::new(family.module());
        let Some(_) = family.weight(start, CoordinateMap::Validated) else {
            continue;
        };
        let fit = fit_polynomial(
            &mut tower,
            |p| family.weight(p, CoordinateMap::Validated).unwrap(),
            bound,
            start..=14,
        )
        .map_err(|e| format!("{}: {e}", family.id()))?;
        ensure(fit.predictions.len() == 3, || {
            format!("{}: predictions", family.id())
        })?;
        fitted += 1;
    }
    Ok(format!("{fitted} offsets, 3 predictions each"))
}

fn vanishing_below_top() -> Outcome {
    let mut tower = MultiplicityTower::new(Fundamental::Vector);
    for p in 1..=30u32 {
        let m = tower.value(p, Weight::int(p as i64 - 1, 0));
        ensure(m.is_zero(), || format!("p={p}: {m}"))?;
    }
    Ok("p <= 30".into())
}

fn cli_end_to_end() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_b2tensor"))
            .args(["verify", "--suite", "all", "--pmax", "10"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    ensure(first.status.code() == Some(0), || {
        format!("exit {:?}", first.status.code())
    })?;
    let report: serde_json::Value =
        serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    let checks = report["checks"].as_array().ok_or("no checks array")?;
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| c["status"] == "fail")
        .filter_map(|c| c["name"].as_str())
        .collect();
    ensure(failing.is_empty(), || format!("failing: {failing:?}"))?;
    let second = run()?;
    ensure(second.stdout == first.stdout, || "reruns differ".into())?;
    Ok(format!("{} checks, byte-identical rerun", checks.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("oracle agreement", oracle_agreement),
        ("dimension identity", dimension_identity),
        ("worked example", worked_example),
        ("vector table", vector_table),
        ("spinor table", spinor_table),
        ("diagonal families", diagonals),
        ("tensoring with the vector module", vector_step),
        ("fan annihilation", fan_property),
        ("fan and singular closed forms", fan_singular_forms),
        ("character identity", character_identity),
        ("polynomiality in p", polynomiality),
        ("vanishing at (p-1)omega1", vanishing_below_top),
        ("cli end to end", cli_end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2}: {name} ({detail}) [{secs:.1}s]",
                i + 1
            ),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {reason} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
