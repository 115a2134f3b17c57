//! Named inputs shipped with the binary.

use fmb_core::algebra::catalog::{augment_at_unit, truncated_free, truncated_polynomial};
use fmb_core::exactmath::Field;
use fmb_core::json::{augmented_to_json, group_to_json, lie_to_json};
use fmb_core::pgroup::{catalog, group_algebra};
use fmb_core::rlie::catalog::{h_s, heisenberg, l_alpha, l_d8, make_family, nilcyclic};
use fmb_core::rlie::RestrictedLiePresentation;
use fmb_core::uenv::pbw_algebra;
use fmb_core::Result;
use serde_json::Value;

pub const LIE_NAMES: [&str; 9] = ["c1", "c2", "h1", "h2", "H3", "LD8", "L111", "Lt", "H3+c1"];

pub fn lie(name: &str) -> Result<Option<RestrictedLiePresentation>> {
    let f2 = Field::prime(2)?;
    Ok(Some(match name {
        "c1" => nilcyclic(f2, 1),
        "c2" => nilcyclic(f2, 2),
        "h1" => h_s(1),
        "h2" => h_s(2),
        "H3" => heisenberg(3)?,
        "LD8" => l_d8(),
        "L111" => make_family(1, 1, 1, 2)?,
        "Lt" => l_alpha(2)?,
        "H3+c1" => {
            let c = nilcyclic(Field::prime(3)?, 1).with_labels(vec!["w".into()])?;
            heisenberg(3)?.direct_sum(&c)?
        }
        _ => return Ok(None),
    }))
}

/// Algebra names: `x^N` over `F_2` (`x4`, ...), `free2-N` (words of length at
/// most `N` in `x, y` over `F_2`), `u:<lie>` and `FG:<group>`.
pub fn algebra(name: &str) -> Result<Option<Value>> {
    let f2 = Field::prime(2)?;
    if let Some(l) = name.strip_prefix("u:") {
        return match lie(l)? {
            Some(l) => Ok(Some(augmented_to_json(pbw_algebra(&l)?.algebra()))),
            None => Ok(None),
        };
    }
    if let Some(g) = name.strip_prefix("FG:") {
        return match catalog::by_name(g) {
            Some(g) => Ok(Some(augmented_to_json(&group_algebra(&g, Field::prime(g.p() as u32)?)?))),
            None => Ok(None),
        };
    }
    if let Some(n) = name.strip_prefix("free2-").and_then(|n| n.parse::<usize>().ok()) {
        return Ok(Some(augmented_to_json(&truncated_free(f2, &["x", "y"], n))));
    }
    if let Some(n) = name.strip_prefix('x').and_then(|n| n.parse::<usize>().ok()) {
        if n > 0 {
            return Ok(Some(augmented_to_json(&augment_at_unit(truncated_polynomial(f2, n))?)));
        }
    }
    Ok(None)
}

pub fn lie_json(name: &str) -> Result<Option<Value>> {
    Ok(lie(name)?.map(|l| lie_to_json(&l)))
}

pub fn group_json(name: &str) -> Option<Value> {
    catalog::by_name(name).map(|g| group_to_json(&g))
}
