//! `verify --corpus`: every route and invariant over the knot table.

use std::io::Write;

use anyhow::{ensure, Context, Result};
use knotdimer_core::alexander::{
    alexander_det, alexander_det_with, alexander_dimer, build_alexander_graph, kauffman_state_sum,
};
use knotdimer_core::dimer::{kasteleyn_weighting, partition_function, verify_kasteleyn};
use knotdimer_core::twisted::{
    builtin_coloring_rep, find_coloring, trivial_rep, twisted_det, twisted_det_with, twisted_dimer_run,
    verify_representation,
};
use knotdimer_core::{KnotDiagram, LaurentPoly};

use crate::config::Format;

/// Coloring moduli tried for every knot.
const MODULI: [u64; 3] = [3, 5, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub knot: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

struct Checker<'a> {
    knot: &'a str,
    results: Vec<CheckResult>,
}

impl Checker<'_> {
    fn run(&mut self, check: &str, f: impl FnOnce() -> Result<String>) {
        let (status, detail) = match f() {
            Ok(detail) => (Status::Pass, detail),
            Err(e) => (Status::Fail, format!("{e:#}")),
        };
        self.results.push(CheckResult { knot: self.knot.to_string(), check: check.to_string(), status, detail });
    }

    fn skip(&mut self, check: &str, detail: String) {
        self.results.push(CheckResult {
            knot: self.knot.to_string(),
            check: check.to_string(),
            status: Status::Skip,
            detail,
        });
    }
}

fn same(a: &LaurentPoly, b: &LaurentPoly, what: &str) -> Result<()> {
    ensure!(a.equal_up_to_unit(b), "{what}: {a} against {b}");
    Ok(())
}

/// All checks for one knot, in a fixed order.
pub fn check_knot(name: &str, d: &KnotDiagram, max_dimer_size: usize) -> Vec<CheckResult> {
    let mut c = Checker { knot: name, results: Vec::new() };
    let delta = match alexander_det(d) {
        Ok(p) => p,
        Err(e) => {
            c.run("alexander-det", || Err(e.into()));
            return c.results;
        }
    };
    c.run("alexander-routes", || {
        same(&delta, &alexander_dimer(d)?, "dimer")?;
        same(&delta, &kauffman_state_sum(d)?, "state sum")?;
        Ok(delta.to_string())
    });
    c.run("alexander-at-one", || {
        let v = delta.eval_unit_point(false).to_string();
        ensure!(v == "1" || v == "-1", "value {v} at t = 1");
        Ok(String::new())
    });
    c.run("alexander-symmetric", || same(&delta, &delta.invert_variable(), "t -> 1/t").map(|_| String::new()));
    c.run("deleted-face-independence", || {
        let faces = d.faces_adjacent_to_unbounded();
        for &f in &faces {
            same(&delta, &alexander_det_with(d, Some(f))?, &format!("face {f}"))?;
        }
        Ok(format!("{} faces", faces.len()))
    });
    c.run("unbounded-face-independence", || {
        for f in 0..d.face_count() {
            let moved = d.with_unbounded_face(f)?;
            same(&delta, &alexander_det(&moved)?, &format!("unbounded {f} det"))?;
            same(&delta, &alexander_dimer(&moved)?, &format!("unbounded {f} dimer"))?;
        }
        Ok(format!("{} faces", d.face_count()))
    });
    c.run("reversal", || same(&delta, &alexander_det(&d.reversed())?, "reversed").map(|_| String::new()));
    c.run("kasteleyn-weighting", || {
        if d.is_unknot() {
            return Ok(String::new());
        }
        let g = build_alexander_graph(d, None)?.graph;
        let w = kasteleyn_weighting(&g)?;
        ensure!(verify_kasteleyn(&g, &w), "face condition fails");
        same(&delta, &partition_function(&g.signed(&w)), "generic signs")?;
        Ok(String::new())
    });
    c.run("twisted-trivial", || {
        let rho = trivial_rep(d);
        same(&delta, &twisted_det(d, &rho)?, "det")?;
        same(&delta, &twisted_dimer_run(d, &rho, None)?.value, "dimer")?;
        Ok(String::new())
    });
    for p in MODULI {
        let Some(colors) = find_coloring(d, p) else { continue };
        let label = format!("twisted-coloring-{p}");
        let rho = match builtin_coloring_rep(d, p, &colors) {
            Ok(rho) => rho,
            Err(e) => {
                c.run(&label, || Err(e.into()));
                continue;
            }
        };
        let mut tw = None;
        c.run(&format!("{label}-det"), || {
            ensure!(verify_representation(d, &rho), "relations fail");
            let det = twisted_det(d, &rho)?;
            ensure!(!det.is_zero(), "determinant vanishes");
            ensure!(det.div_exact(&delta).is_some(), "{delta} does not divide {det}");
            for f in d.faces_adjacent_to_unbounded() {
                same(&det, &twisted_det_with(d, &rho, Some(f))?, &format!("face {f}"))?;
            }
            let s = det.to_string();
            tw = Some(det);
            Ok(s)
        });
        let size = d.crossing_count() * p as usize;
        match tw {
            Some(det) if size <= max_dimer_size => c.run(&format!("{label}-dimer"), || {
                let run = twisted_dimer_run(d, &rho, None).context("dimer route")?;
                ensure!(run.stats.det_checks == run.stats.triplings + run.stats.butterflies, "unchecked rewrite");
                same(&det, &run.value, "dimer")?;
                Ok(format!("{} triplings, {} butterflies", run.stats.triplings, run.stats.butterflies))
            }),
            Some(_) => c.skip(&format!("{label}-dimer"), format!("size {size} above {max_dimer_size}")),
            None => {}
        }
    }
    c.results
}

/// Writes one line per check and a summary; exit status 0 iff nothing failed.
pub fn report(out: &mut dyn Write, results: &[CheckResult], format: Format) -> std::io::Result<u8> {
    let count = |s| results.iter().filter(|r| r.status == s).count();
    for r in results {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        match format {
            Format::Text if r.detail.is_empty() => writeln!(out, "{status} {} {}", r.knot, r.check)?,
            Format::Text => writeln!(out, "{status} {} {} ({})", r.knot, r.check, r.detail)?,
            Format::Record => {
                writeln!(out, "knot={}\tcheck={}\tstatus={status}\tdetail={}", r.knot, r.check, r.detail)?
            }
        }
    }
    let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::Skip));
    if format == Format::Text {
        writeln!(out, "{pass} passed, {fail} failed, {skip} skipped")?;
    }
    Ok(if fail == 0 { 0 } else { 1 })
}
