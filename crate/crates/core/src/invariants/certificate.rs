use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    boundary_open_book, open_book_h1, total_space_euler, total_space_homology, unit_cotangent_h1, FinAbGroup,
    InvariantError,
};
use crate::fibration::{simultaneous_surgery, Construction, LefschetzFibration};
use crate::surface::surface_invariants;

pub const CERTIFICATE_SCHEMA: &str = "lf-forge/certificate/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSummary {
    pub chi: i64,
    pub b: usize,
    pub h: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: Value, got: Value) -> Self {
        let pass = expected == got;
        Check {
            name: name.to_string(),
            expected,
            got,
            pass,
        }
    }
}

/// Everything computed about one fibration, with named pass/fail checks
/// against the closed-form expectations for its construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub genus: Option<u32>,
    pub construction: Construction,
    pub fiber: FiberSummary,
    pub cycles: Vec<String>,
    pub chi_total: i64,
    #[serde(rename = "H1")]
    pub h1: FinAbGroup,
    #[serde(rename = "H2")]
    pub h2: FinAbGroup,
    #[serde(rename = "boundary_H1")]
    pub boundary_h1: FinAbGroup,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn group(g: &FinAbGroup) -> Value {
    json!(g.to_string())
}

/// Surgery of the first two families compared with the third family:
/// `(components, homology conserved, third family reproduced)`.
fn surgery_checks(lf: &LefschetzFibration) -> Result<(usize, bool, bool), String> {
    let [first, second, third] = lf.families().ok_or("fibration has no family structure")?;
    let surface = lf.surface();
    let cycles = lf.cycles();
    let out =
        simultaneous_surgery(&surface, &cycles[first.clone()], &cycles[second.clone()]).map_err(|e| e.to_string())?;
    let sum = |cs: &[crate::surface::CurveOnSurface]| {
        cs.iter().try_fold(surface.basis().zero(), |acc, c| {
            surface.curve_class(c).map(|x| &acc + &x)
        })
    };
    let before = sum(&cycles[first.start..second.end]).map_err(|e| e.to_string())?;
    let after = sum(&out).map_err(|e| e.to_string())?;
    let graph = surface.graph();
    let reproduced = out.len() == third.len()
        && cycles[third]
            .iter()
            .all(|c| out.iter().any(|o| o.same_unoriented_cycle(graph, c.walk())));
    Ok((out.len(), before == after, reproduced))
}

/// Compute all invariants of `lf` and compare them with the expected values
/// for its construction and genus.
pub fn certify(lf: &LefschetzFibration) -> Result<Certificate, InvariantError> {
    let inv = surface_invariants(lf.fiber());
    let chi_total = total_space_euler(lf);
    let (h1, h2) = total_space_homology(lf)?;
    let boundary_h1 = open_book_h1(&boundary_open_book(lf))?;
    let mut checks = Vec::new();
    match (lf.construction(), lf.genus()) {
        (Construction::Johns | Construction::Ishikawa, Some(g)) => {
            let (g64, n) = (g as i64, 2 * g as usize + 2);
            let (first, second, third) = match lf.construction() {
                Construction::Johns => ("a", "b", "c"),
                _ => ("alpha", "beta", "gamma"),
            };
            let order: Vec<String> = (1..=2)
                .map(|i| format!("{first}{i}"))
                .chain((1..=n).map(|j| format!("{second}{j}")))
                .chain((1..=2).map(|k| format!("{third}{k}")))
                .collect();
            checks.push(Check::new("fiber_orientable", json!(true), json!(inv.orientable)));
            checks.push(Check::new("fiber_genus", json!(1), json!(inv.genus)));
            checks.push(Check::new("fiber_boundary", json!(4 * g64 + 4), json!(inv.boundary)));
            checks.push(Check::new("fiber_chi", json!(-4 * g64 - 4), json!(inv.chi)));
            checks.push(Check::new("cycle_count", json!(2 * g64 + 6), json!(lf.cycles().len())));
            checks.push(Check::new("cycle_order", json!(order), json!(lf.order())));
            match surgery_checks(lf) {
                Ok((k, conserved, reproduced)) => {
                    checks.push(Check::new("surgery_components", json!(2), json!(k)));
                    checks.push(Check::new("surgery_conserves_homology", json!(true), json!(conserved)));
                    checks.push(Check::new(
                        "surgery_reproduces_third_family",
                        json!(true),
                        json!(reproduced),
                    ));
                }
                Err(e) => checks.push(Check::new("surgery", json!("ok"), json!(e))),
            }
            checks.push(Check::new("chi_total", json!(2 - 2 * g64), json!(chi_total)));
            checks.push(Check::new("H1", group(&FinAbGroup::free(2 * g as usize)), group(&h1)));
            checks.push(Check::new("H2", group(&FinAbGroup::free(1)), group(&h2)));
            checks.push(Check::new(
                "boundary_H1",
                group(&unit_cotangent_h1(g)),
                group(&boundary_h1),
            ));
        }
        (Construction::Sphere, _) => {
            checks.push(Check::new("fiber_genus", json!(0), json!(inv.genus)));
            checks.push(Check::new("fiber_boundary", json!(2), json!(inv.boundary)));
            checks.push(Check::new("cycle_count", json!(2), json!(lf.cycles().len())));
            checks.push(Check::new("chi_total", json!(2), json!(chi_total)));
            checks.push(Check::new("H1", group(&FinAbGroup::trivial()), group(&h1)));
            checks.push(Check::new("H2", group(&FinAbGroup::free(1)), group(&h2)));
            checks.push(Check::new(
                "boundary_H1",
                group(&unit_cotangent_h1(0)),
                group(&boundary_h1),
            ));
        }
        _ => {}
    }
    Ok(Certificate {
        schema: CERTIFICATE_SCHEMA.to_string(),
        genus: lf.genus(),
        construction: lf.construction(),
        fiber: FiberSummary {
            chi: inv.chi,
            b: inv.boundary,
            h: inv.genus,
        },
        cycles: lf.order(),
        chi_total,
        h1,
        h2,
        boundary_h1,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{ishikawa_fibration, johns_fibration, sphere_planar_fibration};

    #[test]
    fn small_certificates_pass() {
        for lf in [
            johns_fibration(0).unwrap(),
            johns_fibration(2).unwrap(),
            ishikawa_fibration(1).unwrap(),
            sphere_planar_fibration(),
        ] {
            let cert = certify(&lf).unwrap();
            assert!(cert.all_pass(), "{:?}", cert.failures());
        }
    }

    #[test]
    fn mislabeled_genus_fails() {
        let lf = johns_fibration(1).unwrap();
        let relabeled =
            LefschetzFibration::new(Construction::Johns, Some(2), lf.fiber().clone(), lf.cycles().to_vec()).unwrap();
        let cert = certify(&relabeled).unwrap();
        assert!(!cert.all_pass());
        assert!(cert.failures().iter().any(|c| c.name == "fiber_boundary"));
    }
}
