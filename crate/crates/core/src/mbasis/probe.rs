use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{add, format_combination, Vector};
use crate::rlie::{nilpotency_class, DimensionChain, RestrictedLiePresentation};
use crate::uenv::{build_uenv_adapted, EnvelopingAlgebra};

/// One of the implications checked on three lifted generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// `None` for unconditional statements.
    pub hypothesis: Option<bool>,
    pub conclusion: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorVerdict {
    pub pair: (usize, usize),
    pub in_d3: bool,
    pub central_mod_omega3: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    /// `c_i c_j c_k` plus the commutator corrections, reduced modulo `ω^4`, in monomial labels.
    pub classes: Vec<String>,
    pub span_dim: usize,
    /// The six ordered products of the lifts, reduced modulo `ω^4`.
    pub ordered_products: Vec<String>,
    pub ordered_span_dim: usize,
    /// Pairs of ordered products that agree modulo `ω^4`.
    pub coincidences: Vec<(usize, usize)>,
    /// Upper bound on the span dimension: the classes lie in an affine space of dimension 3.
    pub bound: usize,
    /// Six distinct members of depth 3 in an f.m.b. would be independent modulo
    /// `ω^4`; with span at most `bound < 6` two of the products must coincide.
    pub collision_forced: bool,
    pub facts: Vec<FactCheck>,
    pub commutators: Vec<CommutatorVerdict>,
}

/// Evaluates the degree-3 products of three lifted generators of `u(L)` modulo `ω^4`.
///
/// `reps` are given in the basis of `l`; they must be independent modulo `D_2`
/// and `l` must have nilpotency class 2.
pub fn obstruction_probe(l: &RestrictedLiePresentation, reps: &[Vector; 3]) -> Result<ProbeReport> {
    let (chain, u) = build_uenv_adapted(l)?;
    obstruction_probe_with(l, &chain, &u, reps)
}

pub fn obstruction_probe_with(
    l: &RestrictedLiePresentation,
    chain: &DimensionChain,
    u: &EnvelopingAlgebra,
    reps: &[Vector; 3],
) -> Result<ProbeReport> {
    match nilpotency_class(l) {
        Some(2) => {}
        other => return Err(Error::InvalidLie(format!("nilpotency class must be 2, found {other:?}"))),
    }
    for r in reps {
        if r.len() != l.dim() {
            return Err(Error::DimensionMismatch { expected: l.dim(), found: r.len() });
        }
    }
    let d2 = chain.d(2);
    let mut span = d2.clone();
    for r in reps {
        if !span.insert(r.clone()) {
            return Err(Error::InvalidInput("representatives are dependent modulo D_2".into()));
        }
    }
    let d3 = chain.d(3);
    let alg = u.algebra().algebra();
    let omega3 = u.algebra().filtration().power(3);
    let omega4 = u.algebra().filtration().power(4);
    let lift = |v: &Vector| -> Result<Vector> { Ok(u.embed(&u.from_input(v)?)) };
    let c: Vec<Vector> = reps.iter().map(lift).collect::<Result<_>>()?;
    let br = |a: usize, b: usize| l.bracket(&reps[a], &reps[b]);
    let (i, j, k) = (0, 1, 2);
    let m = |x: &Vector, y: &Vector| alg.mul(x, y);
    let cijk = m(&m(&c[i], &c[j]), &c[k]);
    let t_i_jk = m(&c[i], &lift(&br(j, k))?);
    let t_j_ik = m(&c[j], &lift(&br(i, k))?);
    let t_k_ij = m(&c[k], &lift(&br(i, j))?);
    let in4 = |v: &Vector| omega4.contains(v);

    let classes = vec![
        cijk.clone(),
        add(&cijk, &t_i_jk),
        add(&cijk, &t_k_ij),
        add(&add(&cijk, &t_k_ij), &t_j_ik),
        add(&add(&cijk, &t_i_jk), &t_j_ik),
        add(&add(&add(&cijk, &t_i_jk), &t_j_ik), &t_k_ij),
    ];
    let orders = [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]];
    let ordered: Vec<Vector> = orders.iter().map(|o| m(&m(&c[o[0]], &c[o[1]]), &c[o[2]])).collect();

    let span_mod = |vs: &[Vector]| {
        let mut s = omega4.clone();
        vs.iter().filter(|v| s.insert((*v).clone())).count()
    };
    let span_dim = span_mod(&classes);
    let ordered_span_dim = span_mod(&ordered);
    let mut coincidences = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if in4(&crate::exactmath::sub(&ordered[a], &ordered[b])) {
                coincidences.push((a, b));
            }
        }
    }
    let labels = u.algebra().labels();
    let show = |v: &Vector| format_combination(&omega4.reduce(v), labels);

    let in_d3 = |a: usize, b: usize| d3.contains(&br(a, b));
    let fa_h = in4(&t_i_jk);
    let fb_h = in4(&t_j_ik);
    let fc = !in4(&add(&t_k_ij, &t_j_ik));
    let fd = !in4(&add(&t_k_ij, &t_i_jk));
    let fe = !in4(&add(&add(&t_i_jk, &t_j_ik), &t_k_ij));
    let facts = vec![
        FactCheck {
            name: "a",
            statement: "c_i[c_j,c_k] in ω^4 implies [c_j,c_k] in D_3",
            hypothesis: Some(fa_h),
            conclusion: in_d3(j, k),
            consistent: !fa_h || in_d3(j, k),
        },
        FactCheck {
            name: "b",
            statement: "c_j[c_i,c_k] in ω^4 implies [c_i,c_k] in D_3",
            hypothesis: Some(fb_h),
            conclusion: in_d3(i, k),
            consistent: !fb_h || in_d3(i, k),
        },
        FactCheck {
            name: "c",
            statement: "c_k[c_i,c_j] + c_j[c_i,c_k] not in ω^4",
            hypothesis: None,
            conclusion: fc,
            consistent: fc,
        },
        FactCheck {
            name: "d",
            statement: "c_k[c_i,c_j] + c_i[c_j,c_k] not in ω^4",
            hypothesis: None,
            conclusion: fd,
            consistent: fd,
        },
        FactCheck {
            name: "e",
            statement: "c_i[c_j,c_k] + c_j[c_i,c_k] + c_k[c_i,c_j] not in ω^4",
            hypothesis: None,
            conclusion: fe,
            consistent: fe,
        },
    ];
    let commutators = [(i, j), (i, k), (j, k)]
        .iter()
        .map(|&(a, b)| {
            let comm = crate::exactmath::sub(&m(&c[a], &c[b]), &m(&c[b], &c[a]));
            CommutatorVerdict { pair: (a, b), in_d3: in_d3(a, b), central_mod_omega3: omega3.contains(&comm) }
        })
        .collect();
    let bound = 4;
    Ok(ProbeReport {
        classes: classes.iter().map(show).collect(),
        span_dim,
        ordered_products: ordered.iter().map(show).collect(),
        ordered_span_dim,
        coincidences,
        bound,
        collision_forced: span_dim.max(ordered_span_dim) < 6,
        facts,
        commutators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{unit_vector, Field};
    use crate::rlie::catalog::{h_s, heisenberg, nilcyclic};

    fn h3_plus_c1() -> RestrictedLiePresentation {
        let f3 = Field::prime(3).unwrap();
        let c = nilcyclic(f3, 1).with_labels(vec!["w".into()]).unwrap();
        heisenberg(3).unwrap().direct_sum(&c).unwrap()
    }

    #[test]
    fn heisenberg_plus_cyclic_over_f3() {
        let l = h3_plus_c1();
        let f3 = l.field();
        let e = |i| unit_vector(f3, 4, i);
        let r = obstruction_probe(&l, &[e(0), e(1), e(3)]).unwrap();
        assert_eq!(r.span_dim, 2);
        assert_eq!(r.ordered_span_dim, 2);
        assert!(r.collision_forced);
        assert_eq!(r.facts[0].hypothesis, Some(true));
        assert_eq!(r.facts[1].hypothesis, Some(true));
        assert!(r.facts[0].consistent && r.facts[1].consistent);
        assert!(!r.commutators[0].in_d3);
        assert!(r.commutators[1].in_d3 && r.commutators[2].in_d3);
    }

    #[test]
    fn dependent_reps_are_rejected() {
        let l = h3_plus_c1();
        let f3 = l.field();
        let e = |i| unit_vector(f3, 4, i);
        assert!(obstruction_probe(&l, &[e(0), e(1), add(&e(0), &e(1))]).is_err());
        // z lies in D_2
        assert!(obstruction_probe(&l, &[e(0), e(1), e(2)]).is_err());
    }

    #[test]
    fn class_must_be_two() {
        let f3 = Field::prime(3).unwrap();
        let l = nilcyclic(f3, 3);
        let e = |i| unit_vector(f3, 3, i);
        assert!(obstruction_probe(&l, &[e(0), e(1), e(2)]).is_err());
    }

    #[test]
    fn h1_plus_c1_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let c = nilcyclic(f2, 1).with_labels(vec!["w".into()]).unwrap();
        let l = h_s(1).direct_sum(&c).unwrap();
        let e = |i| unit_vector(f2, 4, i);
        let r = obstruction_probe(&l, &[e(0), e(1), e(3)]).unwrap();
        assert_eq!(r.span_dim, 2);
        assert!(r.facts.iter().take(2).all(|f| f.consistent));
    }
}
