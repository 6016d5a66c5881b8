//! One check per acceptance criterion; each prints a PASS or FAIL line with
//! its runtime, and the test fails if any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use knotdimer_core::alexander::{
    alexander_det, alexander_det_with, alexander_dimer, build_alexander_graph, kauffman_state_sum, kauffman_weighting,
};
use knotdimer_core::dimer::{
    enumerate_matchings, kasteleyn_weighting_by_component, partition_function, verify_kasteleyn, PlaneBipartiteGraph,
};
use knotdimer_core::knot::{builtin_knot, builtin_names};
use knotdimer_core::twisted::{
    builtin_coloring_rep, find_coloring, gadget_drawing, twisted_alexander_matrix, trivial_rep, twisted_det,
    twisted_dimer, twisted_dimer_run, verify_representation,
};
use knotdimer_core::{KnotDiagram, LPMatrix, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn trefoil_delta() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &[1, -1, 1])
}

fn trefoil_twisted() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &[-1, 1, 1, -2, 1, 1, -1]).normalize_unit()
}

fn criterion_1() -> Check {
    let d = builtin_knot("trefoil").map_err(err)?;
    let want = trefoil_delta();
    let det = alexander_det(&d).map_err(err)?;
    let dimer = alexander_dimer(&d).map_err(err)?;
    let states = kauffman_state_sum(&d).map_err(err)?;
    for (route, got) in [("det", &det), ("dimer", &dimer), ("state sum", &states)] {
        ensure(got.equal_up_to_unit(&want), || format!("{route} gave {got}"))?;
    }
    Ok(format!("all three routes give {det}"))
}

fn criterion_2() -> Check {
    let d = builtin_knot("trefoil").map_err(err)?;
    let ag = build_alexander_graph(&d, None).map_err(err)?;
    let n = enumerate_matchings(&ag.graph).len();
    ensure(n == 3, || format!("{n} perfect matchings"))?;
    Ok("3 perfect matchings".into())
}

fn criterion_3() -> Check {
    let d = builtin_knot("trefoil").map_err(err)?;
    let rho = builtin_coloring_rep(&d, 3, &[0, 1, 2]).map_err(err)?;
    let det = twisted_det(&d, &rho).map_err(err)?;
    ensure(det == trefoil_twisted(), || format!("twisted_det gave {det}"))?;
    let run = twisted_dimer_run(&d, &rho, None).map_err(err)?;
    ensure(run.value.equal_up_to_unit(&det), || format!("twisted_dimer gave {}", run.value))?;
    // unnormalized values: the two routes may differ by a sign
    let raw_det = twisted_alexander_matrix(&d, &rho, None).map_err(err)?.det().map_err(err)?;
    let raw_z = partition_function(&run.signed);
    let sign = if raw_z == raw_det {
        "+1"
    } else if raw_z == -&raw_det {
        "-1"
    } else {
        return Err(format!("raw Z {raw_z} is not a signed copy of raw det {raw_det}"));
    };
    // the same weights drawn with crossings exercise tripling and butterflies
    let m = run.drawn.weight_matrix();
    let (plane, stats) = gadget_drawing(&m).planarize().map_err(err)?;
    ensure(stats.butterflies > 0, || "two-line drawing has no crossings".into())?;
    let z = signed_z(&plane)?;
    ensure(z.equal_up_to_unit(&det), || format!("two-line drawing gave {z}"))?;
    Ok(format!(
        "det = dimer = {det}; raw Z / raw det = {sign}; two-line drawing: {} triplings, {} butterflies",
        stats.triplings, stats.butterflies
    ))
}

fn criterion_4() -> Check {
    let names = builtin_names();
    for name in &names {
        let d = builtin_knot(name).map_err(err)?;
        let rho = trivial_rep(&d);
        let (td, ad) = (twisted_det(&d, &rho).map_err(err)?, alexander_det(&d).map_err(err)?);
        ensure(td == ad, || format!("{name}: twisted_det {td} vs alexander_det {ad}"))?;
        let (tz, az) = (twisted_dimer(&d, &rho).map_err(err)?, alexander_dimer(&d).map_err(err)?);
        ensure(tz == az, || format!("{name}: twisted_dimer {tz} vs alexander_dimer {az}"))?;
    }
    Ok(format!("{} knots", names.len()))
}

fn signed_z(g: &PlaneBipartiteGraph) -> Result<LaurentPoly, String> {
    let w = kasteleyn_weighting_by_component(g).map_err(err)?;
    Ok(partition_function(&g.signed(&w)).normalize_unit())
}

fn kasteleyn_holds(label: &str, g: &PlaneBipartiteGraph) -> Result<(), String> {
    let m = g.weight_matrix();
    let w = kasteleyn_weighting_by_component(g).map_err(err)?;
    ensure(verify_kasteleyn(g, &w), || format!("{label}: face condition fails"))?;
    let k = g.signed(&w).weight_matrix();
    let det_m = m.det().map_err(err)?;
    let perm_k = k.perm().map_err(err)?;
    ensure(perm_k.equal_up_to_sign(&det_m), || format!("{label}: Perm(K) = {perm_k}, Det(M) = {det_m}"))?;
    let z = partition_function(&g.signed(&w));
    ensure(z.equal_up_to_sign(&det_m), || format!("{label}: Z = {z}, Det(M) = {det_m}"))?;
    ensure(z == perm_k, || format!("{label}: Z = {z}, Perm(K) = {perm_k}"))?;
    Ok(())
}

fn coloring(name: &str, p: u64) -> Result<(KnotDiagram, knotdimer_core::twisted::Representation), String> {
    let d = builtin_knot(name).map_err(err)?;
    let colors = find_coloring(&d, p).ok_or_else(|| format!("{name} has no {p}-coloring"))?;
    let rho = builtin_coloring_rep(&d, p, &colors).map_err(err)?;
    Ok((d, rho))
}

fn criterion_5() -> Check {
    let mut graphs = 0;
    for name in builtin_names() {
        let d = builtin_knot(&name).map_err(err)?;
        if d.is_unknot() {
            continue;
        }
        let ag = build_alexander_graph(&d, None).map_err(err)?;
        kasteleyn_holds(&format!("{name} Alexander graph"), &ag.graph)?;
        let local = kauffman_weighting(&d, &ag).map_err(err)?;
        let z = partition_function(&ag.graph.signed(&local));
        let det_m = ag.graph.weight_matrix().det().map_err(err)?;
        ensure(z.equal_up_to_sign(&det_m), || format!("{name}: crossing signs give Z = {z}"))?;
        let run = twisted_dimer_run(&d, &trivial_rep(&d), None).map_err(err)?;
        kasteleyn_holds(&format!("{name} trivial twisted graph"), &run.plane)?;
        graphs += 2;
    }
    for (name, p) in [("trefoil", 3), ("figure8", 5), ("6_1", 3), ("7_4", 3)] {
        let (d, rho) = coloring(name, p)?;
        let run = twisted_dimer_run(&d, &rho, None).map_err(err)?;
        kasteleyn_holds(&format!("{name} {p}-coloring twisted graph"), &run.plane)?;
        graphs += 1;
        if name == "trefoil" {
            // the crossing-heavy drawing used in criterion 3
            let (plane, _) = gadget_drawing(&run.drawn.weight_matrix()).planarize().map_err(err)?;
            kasteleyn_holds("trefoil 3-coloring two-line drawing", &plane)?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> LPMatrix {
    let n = rng.gen_range(2..=6);
    LPMatrix::from_fn(n, n, |_, _| LaurentPoly::constant(rng.gen_range(-5..=5)))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7269);
    for trial in 0..100 {
        let m = random_matrix(&mut rng);
        let mut g = gadget_drawing(&m);
        if g.edges().is_empty() {
            continue;
        }
        let e = rng.gen_range(0..g.edges().len());
        let k = g.edge_junctions(e).len();
        let cut1 = rng.gen_range(0..=k);
        let cut2 = rng.gen_range(cut1..=k);
        let before = g.weight_matrix().det().map_err(err)?;
        g.triple_edge(e, cut1, cut2).map_err(err)?;
        g.check_map().map_err(err)?;
        let after = g.weight_matrix().det().map_err(err)?;
        ensure(after == -&before, || format!("tripling trial {trial}: {before} -> {after}"))?;
    }
    let mut butterflies = 0;
    while butterflies < 100 {
        let m = random_matrix(&mut rng);
        let mut g = gadget_drawing(&m);
        g.split_multiple_crossings().map_err(err)?;
        let junctions = g.junction_nodes();
        if junctions.is_empty() {
            continue;
        }
        let x = junctions[rng.gen_range(0..junctions.len())];
        let before = g.weight_matrix().det().map_err(err)?;
        g.insert_butterfly(x).map_err(err)?;
        g.check_map().map_err(err)?;
        let after = g.weight_matrix().det().map_err(err)?;
        ensure(after.equal_up_to_sign(&before), || format!("butterfly trial {butterflies}: {before} -> {after}"))?;
        butterflies += 1;
    }
    // every planarize run checks each rewrite
    let mut rewrites = 0;
    for _ in 0..20 {
        let m = random_matrix(&mut rng);
        let (_, stats) = gadget_drawing(&m).planarize().map_err(err)?;
        ensure(stats.det_checks == stats.triplings + stats.butterflies, || format!("{stats:?}"))?;
        rewrites += stats.det_checks;
    }
    Ok(format!("100 triplings, 100 butterflies, {rewrites} checked rewrites in 20 planarize runs"))
}

fn criterion_7() -> Check {
    let mut count = 0;
    for name in builtin_names() {
        let d = builtin_knot(&name).map_err(err)?;
        let det = alexander_det(&d).map_err(err)?;
        let dimer = alexander_dimer(&d).map_err(err)?;
        ensure(dimer == det, || format!("{name}: dimer {dimer} vs det {det}"))?;
        ensure(det.invert_variable().normalize_unit() == det, || format!("{name}: {det} is not symmetric"))?;
        if !d.is_unknot() {
            for f in d.faces_adjacent_to_unbounded() {
                let v = alexander_det_with(&d, Some(f)).map_err(err)?;
                ensure(v == det, || format!("{name}: deleting face {f} gives {v}"))?;
            }
        }
        count += 1;
    }
    for (name, want) in [("trefoil", 3u32), ("figure8", 5)] {
        let v = alexander_det(&builtin_knot(name).map_err(err)?).map_err(err)?.eval_unit_point(true);
        ensure(v.magnitude() == &want.into(), || format!("{name}: |Delta(-1)| = {v}"))?;
    }
    let mut alternating = 0;
    for line in include_str!("data/alexander_reference.txt").lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 || parts[1] != "Y" {
            continue;
        }
        let delta = alexander_det(&builtin_knot(parts[0]).map_err(err)?).map_err(err)?;
        for (k, c) in delta.coeffs().iter().enumerate() {
            let positive = *c > 0.into();
            ensure(positive == (k % 2 == 0) && *c != 0.into(), || format!("{}: {delta}", parts[0]))?;
        }
        alternating += 1;
    }
    Ok(format!("{count} knots, {alternating} alternating"))
}

fn criterion_8() -> Check {
    let (d, rho) = coloring("figure8", 5)?;
    ensure(verify_representation(&d, &rho), || "representation fails a relation".into())?;
    let det = twisted_det(&d, &rho).map_err(err)?;
    let dimer = twisted_dimer(&d, &rho).map_err(err)?;
    ensure(!det.is_zero() && dimer == det, || format!("dimer {dimer} vs det {det}"))?;
    Ok(format!("{det}"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, Option<Duration>, fn() -> Check); 8] = [
        (1, "trefoil Alexander polynomial by three routes", Some(Duration::from_millis(100)), criterion_1),
        (2, "trefoil Alexander graph has three dimer coverings", None, criterion_2),
        (3, "twisted trefoil with the 3-coloring representation", Some(Duration::from_secs(1)), criterion_3),
        (4, "trivial representation degenerates to the untwisted routes", Some(Duration::from_secs(30)), criterion_4),
        (5, "Kasteleyn identities on every pipeline graph", None, criterion_5),
        (6, "rewrite soundness", None, criterion_6),
        (7, "oracle equivalence over the corpus", Some(Duration::from_secs(60)), criterion_7),
        (8, "figure-eight twisted check with a 5-coloring", Some(Duration::from_secs(10)), criterion_8),
    ];
    let mut failed = Vec::new();
    for (id, title, budget, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {id}: {title} ({detail}) [{elapsed:.2?}]"),
            Err(why) => {
                println!("FAIL {id}: {title}: {why} [{elapsed:.2?}]");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
