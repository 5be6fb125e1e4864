use std::sync::mpsc;
use std::time::Instant;

use serde_json::{json, Value};

use mdg_core::autsearch::automorphism_group;

use crate::construct::{aut_formula, big, certified_chain, Construction, MAX_GRAPH_N};
use crate::error::{MdgError, Result};
use crate::report::{Claim, Report, Status};
use crate::settings::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Gamma,
    Sigma,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::Gamma => "gamma",
            Target::Sigma => "sigma",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutOptions {
    pub n: usize,
    pub target: Target,
    pub full_search: bool,
    /// Allows a full search at `n = 3`.
    pub long_run: bool,
}

/// Compares the known automorphism group, and optionally a full search,
/// with `|I(n)| · |GL(n,2)|² · 2`.
pub fn aut(opts: &AutOptions, settings: &Settings) -> Result<Report> {
    let n = opts.n;
    if n < 2 {
        return Err(MdgError::Unsupported(format!("aut needs n >= 2, got {n}")));
    }
    let t = opts.target.name();
    let formula = aut_formula(n).ok_or_else(|| MdgError::Unsupported(format!("the automorphism order overflows at n = {n}")))?;
    let expected = big(formula);
    let mut r = Report::new(format!(
        "aut -n {n} --target {t}{}",
        if opts.full_search { " --full-search" } else { "" }
    ));
    r.push(Claim::compare("aut.formula", "|I(n)| |GL(n,2)|^2 2", big(formula), expected.clone(), 0));

    if n > MAX_GRAPH_N {
        r.push(Claim::with_status("aut.known-order", "order of the known automorphism group", Status::PaperAsserted, Value::Null, expected.clone(), 0));
        r.push(Claim::with_status("aut.full-order", "order of the full automorphism group", Status::PaperAsserted, Value::Null, expected, 0));
        r.note("aut.known-order", format!("graphs are only built for n <= {MAX_GRAPH_N}"));
        return Ok(r);
    }

    let budget = settings.budget();
    let start = Instant::now();
    let c = Construction::new(n, &budget)?;
    let (graph, known) = match opts.target {
        Target::Gamma => (c.gamma.clone(), c.gamma_generators()),
        Target::Sigma => (c.sigma.graph.clone(), c.sigma_generators()?),
    };
    r.push(Claim::check("aut.known-order", "order of the known automorphism group", expected.clone(), || {
        certified_chain(&graph, &known, &budget).map(|b| big(b.order()))
    }));
    r.claims.last_mut().expect("just pushed").runtime_ms = start.elapsed().as_millis() as u64;

    let id = "aut.full-order";
    let anchor = "order of the full automorphism group";
    if !opts.full_search {
        r.push(Claim::with_status(id, anchor, Status::PaperAsserted, Value::Null, expected, 0));
        r.note(id, "no search requested; pass --full-search to certify");
        return Ok(r);
    }
    if n == 3 && !opts.long_run {
        r.push(Claim::with_status(id, anchor, Status::Skipped, Value::Null, expected, 0));
        r.note(id, "a full search at n = 3 needs --long-run");
        return Ok(r);
    }

    // The search starts from the right regular action only, so everything
    // beyond it has to be found.
    let seed = match opts.target {
        Target::Gamma => c.right.clone(),
        Target::Sigma => c.h_on_sigma()?,
    };
    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    std::thread::spawn(move || {
        let _ = tx.send(automorphism_group(&graph, Some(&seed), &budget));
    });
    let outcome = rx.recv_timeout(settings.time_limit);
    let ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(Ok(a)) if a.complete => {
            r.push(Claim::compare(id, anchor, big(a.order), expected, ms));
            r.note(id, format!("{} search nodes, {} generators found beyond the seed", a.nodes, a.new_generators));
        }
        Ok(Ok(a)) => {
            r.push(Claim::with_status(id, anchor, Status::Skipped, json!({"lower_bound": big(a.order)}), expected, ms));
            r.note(id, format!("node budget of {} exhausted", settings.max_nodes));
        }
        Ok(Err(e)) => {
            r.push(Claim::with_status(id, anchor, Status::Fail, json!(format!("error: {e}")), expected, ms));
        }
        Err(_) => {
            r.push(Claim::with_status(id, anchor, Status::Skipped, Value::Null, expected, ms));
            r.note(id, format!("time limit of {} s reached", settings.time_limit.as_secs()));
        }
    }
    Ok(r)
}
