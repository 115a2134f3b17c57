use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldValue};
use crate::rlie::RestrictedLiePresentation;

use super::series::dimension_subgroups;
use super::table::{GroupTable, Subgroup};

/// One layer `D_i/D_{i+1}` with a chosen basis.
#[derive(Clone, Debug)]
pub struct Layer {
    pub index: usize,
    /// Group elements whose cosets form a basis of the layer.
    pub transversal: Vec<usize>,
    /// Coset key (least element of `g D_{i+1}`) to exponent vector.
    coords: HashMap<usize, Vec<u8>>,
}

#[derive(Clone, Debug)]
pub struct JenningsData {
    /// `D_1 = G ⊇ D_2 ⊇ ... ⊇ 1`.
    pub chain: Vec<Subgroup>,
    pub layers: Vec<Layer>,
    /// Group element and layer of each Lie basis vector.
    pub basis_elements: Vec<usize>,
    pub basis_layers: Vec<usize>,
    pub lie: RestrictedLiePresentation,
}

impl JenningsData {
    fn d(&self, i: usize) -> &[usize] {
        self.chain.get(i - 1).unwrap_or_else(|| self.chain.last().expect("nonempty"))
    }

    /// Coordinates in layer `i` of `g ∈ D_i` (zero if `g ∈ D_{i+1}`).
    pub fn layer_coordinates(&self, g: &GroupTable, x: usize, i: usize) -> Result<Vec<u8>> {
        if !GroupTable::contains(self.d(i), x) {
            return Err(Error::Verification(format!("{} is not in D_{i}", g.labels()[x])));
        }
        let Some(layer) = self.layers.get(i - 1) else {
            return Ok(Vec::new());
        };
        let key = coset_key(g, x, self.d(i + 1));
        layer.coords.get(&key).cloned().ok_or_else(|| Error::Verification("coset outside the layer".into()))
    }
}

fn coset_key(g: &GroupTable, x: usize, sub: &[usize]) -> usize {
    sub.iter().map(|&d| g.mul(x, d)).min().expect("nonempty subgroup")
}

/// The restricted Lie algebra of `G` over `F_p` from its dimension subgroups,
/// using a greedy transversal of each layer.
pub fn jennings_lie(g: &GroupTable) -> Result<JenningsData> {
    let chain = dimension_subgroups(g);
    let mut transversals = Vec::new();
    for i in 1..chain.len() {
        let below = &chain[i];
        let mut span = below.clone();
        let mut t = Vec::new();
        for &x in &chain[i - 1] {
            if !GroupTable::contains(&span, x) {
                t.push(x);
                span = g.join(&span, &[x]);
            }
        }
        transversals.push(t);
    }
    jennings_lie_with_transversals(g, transversals)
}

/// As [`jennings_lie`] with given layer transversals.
///
/// Checks that each layer is elementary abelian, that the transversals are
/// bases, and that bracket and p-map do not depend on coset representatives.
pub fn jennings_lie_with_transversals(g: &GroupTable, transversals: Vec<Vec<usize>>) -> Result<JenningsData> {
    let chain = dimension_subgroups(g);
    let c = chain.len() - 1;
    if transversals.len() != c {
        return Err(Error::DimensionMismatch { expected: c, found: transversals.len() });
    }
    let p = g.p();
    let d = |i: usize| -> &Subgroup { chain.get(i - 1).unwrap_or_else(|| chain.last().expect("nonempty")) };
    let mut layers = Vec::new();
    for (k, t) in transversals.into_iter().enumerate() {
        let i = k + 1;
        let (top, below) = (d(i), d(i + 1));
        for &x in top {
            if !GroupTable::contains(below, g.pow(x, p as u64)) {
                return Err(Error::InvalidGroup(format!("layer {i} is not elementary")));
            }
            for &y in top {
                if !GroupTable::contains(below, g.comm(x, y)) {
                    return Err(Error::InvalidGroup(format!("layer {i} is not abelian")));
                }
            }
        }
        let mut coords = HashMap::new();
        let dim = t.len();
        let total = (p as usize).pow(dim as u32);
        for code in 0..total {
            let mut exps = vec![0u8; dim];
            let mut rest = code;
            let mut x = g.identity();
            for (e, &gen) in exps.iter_mut().zip(&t) {
                *e = (rest % p as usize) as u8;
                rest /= p as usize;
                x = g.mul(x, g.pow(gen, *e as u64));
            }
            if !GroupTable::contains(top, x) || coords.insert(coset_key(g, x, below), exps).is_some() {
                return Err(Error::InvalidInput(format!("transversal of layer {i} is not a basis")));
            }
        }
        if total * below.len() != top.len() {
            return Err(Error::InvalidInput(format!("transversal of layer {i} does not span")));
        }
        layers.push(Layer { index: i, transversal: t, coords });
    }
    let basis_elements: Vec<usize> = layers.iter().flat_map(|l| l.transversal.clone()).collect();
    let basis_layers: Vec<usize> = layers.iter().flat_map(|l| vec![l.index; l.transversal.len()]).collect();
    let offsets: Vec<usize> = layers
        .iter()
        .scan(0, |acc, l| {
            let o = *acc;
            *acc += l.transversal.len();
            Some(o)
        })
        .collect();
    let field = Field::prime(p as u32)?;
    let mut data = JenningsData {
        chain: chain.clone(),
        layers,
        basis_elements: basis_elements.clone(),
        basis_layers: basis_layers.clone(),
        lie: RestrictedLiePresentation::abelian(field, Vec::new(), Vec::new())?,
    };
    // class of x ∈ D_m in layer m, as sparse entries of the Lie basis
    let class = |data: &JenningsData, x: usize, m: usize| -> Result<Vec<(usize, FieldValue)>> {
        if m > c {
            return if x == g.identity() {
                Ok(Vec::new())
            } else {
                Err(Error::Verification("element outside the last dimension subgroup".into()))
            };
        }
        let e = data.layer_coordinates(g, x, m)?;
        Ok(e.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (offsets[m - 1] + k, field.from_int(v as i64)))
            .collect())
    };
    let n = basis_elements.len();
    let mut bracket = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (i, j) = (basis_layers[a], basis_layers[b]);
            let x = g.comm(basis_elements[a], basis_elements[b]);
            let entry = class(&data, x, i + j)?;
            // independence of the representatives
            for &u in d(i + 1) {
                for &v in d(j + 1) {
                    let y = g.comm(g.mul(basis_elements[a], u), g.mul(basis_elements[b], v));
                    if class(&data, y, i + j)? != entry {
                        return Err(Error::Verification("bracket depends on coset representatives".into()));
                    }
                }
            }
            for (k, val) in entry {
                bracket.push((a, b, k, val));
            }
        }
    }
    let mut pmap = Vec::new();
    for a in 0..n {
        let i = basis_layers[a];
        let x = g.pow(basis_elements[a], p as u64);
        let entry = class(&data, x, p as usize * i)?;
        for &u in d(i + 1) {
            let y = g.pow(g.mul(basis_elements[a], u), p as u64);
            if class(&data, y, p as usize * i)? != entry {
                return Err(Error::Verification("p-map depends on coset representatives".into()));
            }
        }
        for (k, val) in entry {
            pmap.push((a, k, val));
        }
    }
    let labels = basis_elements.iter().map(|&x| g.labels()[x].clone()).collect();
    let lie = RestrictedLiePresentation::from_entries(field, labels, bracket, pmap)?;
    lie.ensure_valid()?;
    data.lie = lie;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::unit_vector;
    use crate::pgroup::catalog::*;
    use crate::rlie::nilpotency_class;

    #[test]
    fn dihedral() {
        let g = d8();
        let j = jennings_lie(&g).unwrap();
        let l = &j.lie;
        assert_eq!(l.labels(), &["a", "b", "a^2"]);
        let f2 = l.field();
        let e = |i| unit_vector(f2, 3, i);
        assert_eq!(l.bracket(&e(0), &e(1)), e(2));
        assert_eq!(crate::algebra::sparse_to_dense(f2, 3, l.basis_pmap(0)), e(2));
        assert!(l.basis_pmap(1).is_empty() && l.basis_pmap(2).is_empty());
    }

    #[test]
    fn extraspecial_is_heisenberg() {
        let j = jennings_lie(&extraspecial_27_exp3()).unwrap();
        assert_eq!(j.basis_layers, vec![1, 1, 2]);
        assert!(j.lie.pmap_entries().next().is_none());
        assert_eq!(nilpotency_class(&j.lie), Some(2));
    }

    #[test]
    fn cyclic_four_is_nilcyclic() {
        let j = jennings_lie(&c4()).unwrap();
        assert_eq!(j.basis_layers, vec![1, 2]);
        let f2 = j.lie.field();
        assert_eq!(crate::algebra::sparse_to_dense(f2, 2, j.lie.basis_pmap(0)), unit_vector(f2, 2, 1));
    }

    #[test]
    fn dimension_count() {
        for g in [c2(), c4(), d8(), q8(), m16(), extraspecial_27_exp3(), extraspecial_27_exp9()] {
            let j = jennings_lie(&g).unwrap();
            assert_eq!((g.p() as usize).pow(j.lie.dim() as u32), g.order());
        }
    }

    #[test]
    fn other_transversals_give_the_same_constants() {
        for g in [d8(), q8(), m16(), extraspecial_27_exp9()] {
            let j = jennings_lie(&g).unwrap();
            // shift every representative by the last nontrivial element of the next subgroup
            let shifted: Vec<Vec<usize>> = j
                .layers
                .iter()
                .map(|l| {
                    let below = j.chain.get(l.index).cloned().unwrap_or_else(|| g.trivial());
                    let s = *below.last().unwrap();
                    l.transversal.iter().map(|&x| g.mul(x, s)).collect()
                })
                .collect();
            let k = jennings_lie_with_transversals(&g, shifted).unwrap();
            assert_eq!(k.lie.with_labels(j.lie.labels().to_vec()).unwrap(), j.lie);
        }
    }
}
