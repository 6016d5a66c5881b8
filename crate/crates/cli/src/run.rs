//! The `alexander` and `twisted` commands.

use std::io::Write;

use knotdimer_core::alexander::{alexander_det_with, alexander_dimer_with, kauffman_states};
use knotdimer_core::twisted::{twisted_det_with, twisted_dimer_with, Representation};
use knotdimer_core::LaurentPoly;

use crate::config::{Format, KnotInput, Method};
use crate::error::CliError;

/// One computed polynomial, already unit-normalized.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub method: &'static str,
    pub polynomial: LaurentPoly,
}

fn methods(method: Method, with_statesum: bool) -> Vec<Method> {
    match method {
        Method::All if with_statesum => vec![Method::Det, Method::Dimer, Method::Statesum],
        Method::All => vec![Method::Det, Method::Dimer],
        m => vec![m],
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Det => "det",
        Method::Dimer => "dimer",
        Method::Statesum => "statesum",
        Method::All => "all",
    }
}

pub fn alexander(knot: &KnotInput, method: Method) -> Result<Vec<Outcome>, CliError> {
    let (d, face) = (&knot.diagram, knot.face);
    methods(method, true)
        .into_iter()
        .map(|m| {
            let polynomial = match m {
                Method::Det => alexander_det_with(d, face)?,
                Method::Dimer => alexander_dimer_with(d, face)?,
                _ => kauffman_states(d, face)?.0.normalize_unit(),
            };
            Ok(Outcome { method: method_name(m), polynomial })
        })
        .collect()
}

pub fn twisted(knot: &KnotInput, rep: &Representation, method: Method) -> Result<Vec<Outcome>, CliError> {
    let (d, face) = (&knot.diagram, knot.face);
    methods(method, false)
        .into_iter()
        .map(|m| {
            let polynomial = match m {
                Method::Det => twisted_det_with(d, rep, face)?,
                _ => twisted_dimer_with(d, rep, face)?,
            };
            Ok(Outcome { method: method_name(m), polynomial })
        })
        .collect()
}

pub fn all_agree(outcomes: &[Outcome]) -> bool {
    outcomes.windows(2).all(|w| w[0].polynomial.equal_up_to_unit(&w[1].polynomial))
}

/// Writes the outcomes and returns the exit status: 1 if the routes disagree.
pub fn report(out: &mut dyn Write, knot: &str, outcomes: &[Outcome], format: Format) -> std::io::Result<u8> {
    let agree = all_agree(outcomes);
    match format {
        Format::Record => {
            for o in outcomes {
                writeln!(out, "knot={knot}\tmethod={}\tpolynomial={}\tagree={agree}", o.method, o.polynomial)?;
            }
        }
        Format::Text if outcomes.len() == 1 => writeln!(out, "{}", outcomes[0].polynomial)?,
        Format::Text => {
            for o in outcomes {
                writeln!(out, "{}: {}", o.method, o.polynomial)?;
            }
            writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" })?;
        }
    }
    Ok(if agree { 0 } else { 1 })
}
