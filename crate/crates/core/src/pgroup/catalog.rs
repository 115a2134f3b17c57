//! Bundled p-groups.

use crate::error::{Error, Result};

use super::table::GroupTable;

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// `C_n` for `n` a power of `p`, generated by `a`.
pub fn cyclic(p: u8, n: usize) -> Result<GroupTable> {
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let labels = (0..n).map(|i| if i == 0 { "1".into() } else { power_label("a", i) }).collect();
    GroupTable::new(p, table, Some(labels))
}

/// `⟨a, b | a^m = 1, b^n = a^k, b a b^{-1} = a^r⟩` on the elements `a^i b^j`
/// (index `i + m j`).
pub fn metacyclic(p: u8, m: usize, n: usize, r: usize, k: usize) -> Result<GroupTable> {
    let rpow: Vec<usize> = (0..n).scan(1usize, |acc, _| {
        let cur = *acc;
        *acc = *acc * r % m;
        Some(cur)
    }).collect();
    if rpow[n - 1] * r % m != 1 % m || k * r % m != k % m {
        return Err(Error::InvalidGroup("inconsistent metacyclic parameters".into()));
    }
    let size = m * n;
    let mut table = vec![vec![0; size]; size];
    for j in 0..n {
        for i in 0..m {
            for l in 0..n {
                for i2 in 0..m {
                    // b^j a^{i2} = a^{i2 r^j} b^j
                    let mut a = i + i2 * rpow[j];
                    let mut b = j + l;
                    if b >= n {
                        b -= n;
                        a += k;
                    }
                    table[i + m * j][i2 + m * l] = (a % m) + m * b;
                }
            }
        }
    }
    let labels = (0..size)
        .map(|x| {
            let s = format!("{}{}", power_label("a", x % m), power_label("b", x / m));
            if s.is_empty() { "1".into() } else { s }
        })
        .collect();
    GroupTable::new(p, table, Some(labels))
}

/// The group of upper unitriangular 3x3 matrices over `F_p`, as triples
/// `(a,b,c)` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`; index `a + p b + p^2 c`.
pub fn unitriangular(p: u8) -> Result<GroupTable> {
    let q = p as usize;
    let idx = |a: usize, b: usize, c: usize| a % q + q * (b % q) + q * q * (c % q);
    let n = q * q * q;
    let mut table = vec![vec![0; n]; n];
    for x in 0..n {
        let (a, b, c) = (x % q, x / q % q, x / (q * q));
        for y in 0..n {
            let (a2, b2, c2) = (y % q, y / q % q, y / (q * q));
            table[x][y] = idx(a + a2, b + b2, c + c2 + a * b2);
        }
    }
    let labels = (0..n)
        .map(|x| {
            let s = format!("{}{}{}", power_label("x", x % q), power_label("y", x / q % q), power_label("z", x / (q * q)));
            if s.is_empty() { "1".into() } else { s }
        })
        .collect();
    GroupTable::new(p, table, Some(labels))
}

pub fn c2() -> GroupTable {
    cyclic(2, 2).expect("valid")
}

pub fn c4() -> GroupTable {
    cyclic(2, 4).expect("valid")
}

pub fn d8() -> GroupTable {
    metacyclic(2, 4, 2, 3, 0).expect("valid")
}

pub fn q8() -> GroupTable {
    metacyclic(2, 4, 2, 3, 2).expect("valid")
}

pub fn m16() -> GroupTable {
    metacyclic(2, 8, 2, 5, 0).expect("valid")
}

/// Extraspecial of order 27 and exponent 3.
pub fn extraspecial_27_exp3() -> GroupTable {
    unitriangular(3).expect("valid")
}

/// Extraspecial of order 27 and exponent 9.
pub fn extraspecial_27_exp9() -> GroupTable {
    metacyclic(3, 9, 3, 4, 0).expect("valid")
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 7] = ["C2", "C4", "D8", "Q8", "M16", "3^1+2_+", "3^1+2_-"];

pub fn by_name(name: &str) -> Option<GroupTable> {
    Some(match name {
        "C2" => c2(),
        "C4" => c4(),
        "D8" => d8(),
        "Q8" => q8(),
        "M16" => m16(),
        "3^1+2_+" | "E27" => extraspecial_27_exp3(),
        "3^1+2_-" => extraspecial_27_exp9(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exponent(g: &GroupTable) -> usize {
        let mut e = 1;
        while (0..g.order()).any(|x| g.pow(x, e as u64) != g.identity()) {
            e += 1;
        }
        e
    }

    #[test]
    fn orders_and_exponents() {
        for (g, order, exp, abelian) in [
            (c2(), 2, 2, true),
            (c4(), 4, 4, true),
            (d8(), 8, 4, false),
            (q8(), 8, 4, false),
            (m16(), 16, 8, false),
            (extraspecial_27_exp3(), 27, 3, false),
            (extraspecial_27_exp9(), 27, 9, false),
        ] {
            assert_eq!(g.order(), order);
            assert_eq!(exponent(&g), exp);
            assert_eq!(g.is_abelian(), abelian);
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = q8();
        let involutions = (0..8).filter(|&x| x != q.identity() && q.pow(x, 2) == q.identity()).count();
        assert_eq!(involutions, 1);
        let d = d8();
        assert_eq!((0..8).filter(|&x| x != d.identity() && d.pow(x, 2) == d.identity()).count(), 5);
    }

    #[test]
    fn bad_parameters() {
        assert!(metacyclic(2, 4, 2, 2, 0).is_err());
    }
}
