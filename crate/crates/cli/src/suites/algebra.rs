//! Claims settled by representation theory and localization, independent of the form.

use coble_core::rep::{verify_resolution_suite, Check};
use coble_core::schubert::enumerative_suite;

use super::Options;
use crate::certificate::Certificate;

/// Which claim each named check belongs to, by name prefix.
const COHOMOLOGY: [(&str, &str); 10] = [
    ("I_D(2) factor", "cohomology.ideal"),
    ("h0(I_D(2))", "cohomology.ideal"),
    ("M(2) factor", "cohomology.m-module"),
    ("Betti table of M", "cohomology.m-module"),
    ("M is supported", "cohomology.m-module"),
    ("bold subcomplex", "cohomology.pfaffian"),
    ("Pfaffian ideal Hilbert series", "cohomology.pfaffian"),
    ("χ(N_{D/G})", "cohomology.normal-bundle"),
    ("Koszul cohomology table", "cohomology.normal-bundle"),
    ("H^q(", "cohomology.normal-bundle"),
];

const ENUMERATIVE: [(&str, &str); 7] = [
    ("rank of the ruling bundle", "enumerative.ranks"),
    ("rank of the Hecke bundle", "enumerative.ranks"),
    ("ruling family degree", "enumerative.ruling-degree"),
    ("ruling planes through", "enumerative.ruling-degree"),
    ("degree of G(2,8)", "enumerative.grassmannian-degree"),
    ("Hecke family", "enumerative.hecke"),
    ("K3 slice", "enumerative.k3-slice"),
];

/// Distributes `checks` over the claims of `ids` according to `routes`. A check with no route
/// is a programming error and fails the first claim.
fn distribute(opts: &Options, ids: &[&str], routes: &[(&str, &str)], checks: Vec<Check>) -> Vec<Certificate> {
    let mut certs: Vec<Certificate> = ids.iter().map(|id| Certificate::new(id, opts.params_exact())).collect();
    for c in checks {
        match routes.iter().find(|(prefix, _)| c.name.starts_with(prefix)) {
            Some((_, id)) => {
                let k = ids.iter().position(|x| x == id).expect("routes name listed claims");
                certs[k].checks.push(c);
            }
            None => {
                certs[0].check(format!("unrouted check {}", c.name), false, c.detail);
            }
        }
    }
    certs
}

pub(super) fn run_cohomology(opts: &Options) -> Vec<Certificate> {
    let ids = super::claim_ids("cohomology");
    match verify_resolution_suite() {
        Ok(checks) => distribute(opts, &ids, &COHOMOLOGY, checks).into_iter().map(Certificate::finish).collect(),
        Err(e) => super::unavailable(opts, &ids, "Q", &e.to_string()),
    }
}

pub(super) fn run_enumerative(opts: &Options) -> Vec<Certificate> {
    let ids = super::claim_ids("enumerative");
    let (checks, integrals) = match enumerative_suite(opts.seed) {
        Ok(x) => x,
        Err(e) => return super::unavailable(opts, &ids, "Q", &e.to_string()),
    };
    let mut certs = distribute(opts, &ids, &ENUMERATIVE, checks);
    let k = ids.iter().position(|x| *x == "enumerative.ruling-degree").expect("registered");
    if let Some(ruling) = integrals.first() {
        certs[k].check(
            "two independent torus specializations agree",
            ruling.specializations.len() >= 2 && ruling.specializations[0] != ruling.specializations[1],
            format!("{} specializations", ruling.specializations.len()),
        );
    }
    for (cert, id) in certs.iter_mut().zip(&ids) {
        let relevant = match *id {
            "enumerative.ruling-degree" => &integrals[..1],
            "enumerative.grassmannian-degree" => &integrals[1..2],
            "enumerative.hecke" => &integrals[2..4],
            "enumerative.k3-slice" => &integrals[4..],
            _ => &[],
        };
        cert.witnesses = relevant.iter().map(|i| serde_json::to_value(i).expect("integrals serialize")).collect();
    }
    certs.into_iter().map(Certificate::finish).collect()
}
