//! Bundled restricted Lie algebras.

use crate::error::{Error, Result};
use crate::exactmath::Field;

use super::presentation::RestrictedLiePresentation;

/// Label of `x^{[p]^a}`.
pub fn power_label(base: &str, p: u8, a: u32) -> String {
    match a {
        0 => base.to_string(),
        _ => format!("{base}^[{}]", (p as u64).pow(a)),
    }
}

fn nilcyclic_labelled(field: Field, s: usize, base: &str) -> RestrictedLiePresentation {
    let labels = (0..s).map(|a| power_label(base, field.p(), a as u32)).collect();
    let pmap = (0..s).map(|a| if a + 1 < s { vec![(a + 1, field.one())] } else { Vec::new() }).collect();
    RestrictedLiePresentation::abelian(field, labels, pmap).expect("well-formed")
}

/// The nilcyclic algebra `c_(s)` with basis `x, x^[p], ..., x^{[p]^{s-1}}`.
pub fn nilcyclic(field: Field, s: usize) -> RestrictedLiePresentation {
    nilcyclic_labelled(field, s, "x")
}

/// The abelian algebra `F^n` with zero p-map.
pub fn abelian_zero(field: Field, labels: &[&str]) -> RestrictedLiePresentation {
    RestrictedLiePresentation::abelian(
        field,
        labels.iter().map(|s| s.to_string()).collect(),
        vec![Vec::new(); labels.len()],
    )
    .expect("well-formed")
}

/// `H3` over `F_p`: `[x,y] = z`, zero p-map. Restricted for `p >= 3`.
pub fn heisenberg(p: u32) -> Result<RestrictedLiePresentation> {
    let f = Field::prime(p)?;
    RestrictedLiePresentation::from_entries(f, labels(&["x", "y", "z"]), [(0, 1, 2, f.one())], [])
}

/// The Jennings algebra of the dihedral group of order 8: `[x,y] = z`, `x^[2] = z`.
pub fn l_d8() -> RestrictedLiePresentation {
    let f = Field::prime(2).expect("prime");
    RestrictedLiePresentation::from_entries(f, labels(&["x", "y", "z"]), [(0, 1, 2, f.one())], [(0, 2, f.one())])
        .expect("well-formed")
}

/// Abelian `L_t = Fx + Fy + Fz` over `F_p(t)` with `x^[p] = t z`, `y^[p] = z`, `z^[p] = 0`.
pub fn l_alpha(p: u32) -> Result<RestrictedLiePresentation> {
    let f = Field::rational_function(p)?;
    let t = f.t().expect("rational function field");
    RestrictedLiePresentation::abelian(f, labels(&["x", "y", "z"]), vec![vec![(2, t)], vec![(2, f.one())], vec![]])
}

fn h_s_labelled(s: usize, names: [&str; 3]) -> RestrictedLiePresentation {
    let f = Field::prime(2).expect("prime");
    let mut labels = Vec::with_capacity(3 * s);
    for a in 0..s {
        for name in names {
            labels.push(power_label(name, 2, a as u32));
        }
    }
    let pmap: Vec<_> = (0..3 * s.saturating_sub(1)).map(|i| (i, i + 3, f.one())).collect();
    RestrictedLiePresentation::from_entries(f, labels, [(0, 1, 2, f.one())], pmap).expect("well-formed")
}

/// `h_(s)` over `F_2` with basis `x^{[2]^a}, y^{[2]^a}, z^{[2]^a}` for `a = 0..s`
/// (grouped by `a`), `[x,y] = z` and all other basis brackets zero.
pub fn h_s(s: usize) -> RestrictedLiePresentation {
    h_s_labelled(s, ["x", "y", "z"])
}

/// `L(m,n;s)`: `m` copies of `c_(s)` followed by `n` copies of `h_(s)`.
pub fn make_family(m: usize, n: usize, s: usize, p: u32) -> Result<RestrictedLiePresentation> {
    if n > 0 && p != 2 {
        return Err(Error::WrongCharacteristic { expected: 2, found: p as u8 });
    }
    if s == 0 {
        return Err(Error::InvalidInput("s must be positive".into()));
    }
    let f = Field::prime(p)?;
    let c_name = |k: usize| match (m, n) {
        (1, 0) => "x".to_string(),
        (1, _) => "w".to_string(),
        _ => format!("w{}", k + 1),
    };
    let mut parts = Vec::new();
    for k in 0..m {
        parts.push(nilcyclic_labelled(f, s, &c_name(k)));
    }
    for k in 0..n {
        let names: Vec<String> = if n == 1 {
            vec!["x".into(), "y".into(), "z".into()]
        } else {
            ["x", "y", "z"].iter().map(|b| format!("{b}{}", k + 1)).collect()
        };
        parts.push(h_s_labelled(s, [&names[0], &names[1], &names[2]]));
    }
    let mut acc = RestrictedLiePresentation::abelian(f, Vec::new(), Vec::new())?;
    for part in parts {
        acc = acc.direct_sum(&part)?;
    }
    Ok(acc)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_dimensions() {
        assert_eq!(make_family(1, 0, 2, 2).unwrap().dim(), 2);
        assert_eq!(make_family(0, 1, 1, 2).unwrap().dim(), 3);
        assert_eq!(make_family(1, 1, 1, 2).unwrap().dim(), 4);
        assert_eq!(make_family(2, 2, 2, 2).unwrap().dim(), 16);
        assert!(make_family(0, 1, 1, 3).is_err());
        assert_eq!(make_family(2, 0, 1, 3).unwrap().dim(), 2);
    }

    #[test]
    fn family_members_are_valid() {
        for (m, n, s) in [(1, 0, 2), (0, 1, 1), (1, 1, 1), (0, 1, 2), (0, 2, 1)] {
            assert!(make_family(m, n, s, 2).unwrap().validate().is_valid(), "{m} {n} {s}");
        }
    }

    #[test]
    fn h2_labels() {
        assert_eq!(h_s(2).labels(), &["x", "y", "z", "x^[2]", "y^[2]", "z^[2]"]);
    }
}
