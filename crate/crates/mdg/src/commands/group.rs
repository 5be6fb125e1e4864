use serde_json::{json, Value};

use mdg_core::group::{center, derived_subgroup, is_mixed_dihedral, verify_presentation, DihedralProduct, FiniteGroup, IGroup};
use mdg_core::Budget;

use super::timed;
use crate::error::{MdgError, Result};
use crate::report::{Claim, Report, Status};

/// Largest `n` for `verify group`: `I(4)` has 2^24 elements to enumerate.
pub const MAX_GROUP_N: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    I(usize),
    /// `D_{2m₁} × … × D_{2m_k}` with `X`, `Y` generated by one reflection per factor.
    Dihedral(Vec<u64>),
}

pub fn verify_group(spec: &GroupSpec) -> Result<Report> {
    match spec {
        GroupSpec::I(n) => verify_i(*n),
        GroupSpec::Dihedral(ms) => verify_dihedral(ms),
    }
}

fn fail(id: &str, anchor: &str, e: impl std::fmt::Display, expected: Value) -> Claim {
    Claim::with_status(id, anchor, Status::Fail, json!(format!("error: {e}")), expected, 0)
}

fn verify_i(n: usize) -> Result<Report> {
    if !(2..=MAX_GROUP_N).contains(&n) {
        return Err(MdgError::Unsupported(format!("verify group needs 2 <= n <= {MAX_GROUP_N}, got {n}")));
    }
    let b = Budget::default();
    let h = IGroup::new(n)?;
    let order = 1u64 << (n * n + 2 * n);
    let mut r = Report::new(format!("verify group -n {n}"));

    r.push(Claim::check("group.order", "order of I(n)", json!(order), || {
        Ok::<_, MdgError>(h.order())
    }));
    r.push(Claim::check(
        "group.presentation",
        "defining relations and normal forms",
        json!({"holds": true, "normal_forms": order, "generated": order}),
        || {
            verify_presentation(n, &b).map(|p| {
                json!({"holds": p.holds(), "normal_forms": p.normal_form_count, "generated": p.generated_order})
            })
        },
    ));

    let tensors = 1u64 << (n * n);
    r.claims.extend(timed(|| {
        let (d, z) = match (derived_subgroup(&h, &b), center(&h, &b)) {
            (Ok(d), Ok(z)) => (d, z),
            (Err(e), _) | (_, Err(e)) => {
                return vec![fail("group.derived-order", "derived subgroup", e, json!(tensors))];
            }
        };
        let pure = h.tensor_subgroup();
        vec![
            Claim::compare("group.derived-order", "derived subgroup", json!(d.order()), json!(tensors), 0),
            Claim::compare("group.center-order", "center", json!(z.order()), json!(tensors), 0),
            Claim::compare("group.derived-is-center", "derived subgroup and center", json!(d.elements == z.elements), json!(true), 0),
            Claim::compare("group.derived-is-tensors", "derived subgroup and pure tensors", json!(d.elements == pure), json!(true), 0),
        ]
    }));

    r.claims.extend(timed(|| match is_mixed_dihedral(&h, &b) {
        Ok(m) => vec![
            Claim::compare("group.abelianization", "abelianization", json!(m.abelianization_structure), json!(vec![2; 2 * n]), 0),
            Claim::compare("group.mixed-dihedral", "mixed dihedral test", json!(m.is_mixed_dihedral), json!(true), 0),
        ],
        Err(e) => vec![fail("group.mixed-dihedral", "mixed dihedral test", e, json!(true))],
    }));
    Ok(r)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `D_{2m}` has center of order 2 for even `m ≥ 4` and 1 for odd `m ≥ 3`;
/// `D_2` and `D_4` are abelian.
fn dihedral_center(m: u64) -> u64 {
    match m {
        1 => 2,
        2 => 4,
        m if m % 2 == 0 => 2,
        _ => 1,
    }
}

fn verify_dihedral(ms: &[u64]) -> Result<Report> {
    let b = Budget::default();
    let d = DihedralProduct::new(ms)?;
    let list: Vec<String> = ms.iter().map(u64::to_string).collect();
    let mut r = Report::new(format!("verify group --dihedral {}", list.join(",")));

    let order: u64 = ms.iter().map(|m| 2 * m).product();
    let derived: u64 = ms.iter().map(|&m| m / gcd(m, 2)).product();
    let centre: u64 = ms.iter().map(|&m| dihedral_center(m)).product();
    let mut structure: Vec<u64> = ms.iter().flat_map(|&m| if m % 2 == 0 { vec![2, 2] } else { vec![2] }).collect();
    structure.sort_unstable();
    let mixed = ms.iter().all(|m| m % 2 == 0);

    r.push(Claim::check("group.order", "order of the product", json!(order), || Ok::<_, MdgError>(d.order())));
    r.push(Claim::check("group.derived-order", "derived subgroup", json!(derived), || {
        derived_subgroup(&d, &b).map(|s| s.order())
    }));
    r.push(Claim::check("group.center-order", "center", json!(centre), || center(&d, &b).map(|s| s.order())));
    let start = std::time::Instant::now();
    match is_mixed_dihedral(&d, &b) {
        Ok(m) => {
            let ms = start.elapsed().as_millis() as u64;
            r.push(Claim::compare("group.abelianization", "abelianization", json!(m.abelianization_structure), json!(structure), ms));
            r.push(Claim::compare("group.mixed-dihedral", "mixed dihedral test", json!(m.is_mixed_dihedral), json!(mixed), ms));
            if let Some(reason) = m.failure_reason() {
                r.note("group.mixed-dihedral", format!("first failed condition: {reason}"));
            }
        }
        Err(e) => r.push(fail("group.mixed-dihedral", "mixed dihedral test", e, json!(mixed))),
    }
    Ok(r)
}
