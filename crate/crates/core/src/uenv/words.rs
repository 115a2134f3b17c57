use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{tensor_algebra, AugmentedAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{format_combination, is_zero, Matrix, Subspace, Vector};
use crate::mbasis::{verify_fmb, BasisCandidate, FmbCertificate};
use crate::rlie::catalog::{h_s, make_family, nilcyclic};

use super::env::pbw_algebra;

/// Images of words in the generators, one per distinct nonzero image.
#[derive(Clone, Debug)]
pub struct WordBasis {
    pub candidate: BasisCandidate,
    /// The shortest (then lexicographically least) word for each member.
    pub words: Vec<Vec<usize>>,
}

impl WordBasis {
    pub fn word_labels(&self, names: &[&str]) -> Vec<String> {
        self.words.iter().map(|w| crate::algebra::catalog::word_label(names, w)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordFailure {
    /// The image of `word` is a combination of earlier images without being equal to one.
    Dependent { word: Vec<usize>, depends_on: Vec<Vec<usize>> },
    /// The distinct images do not span the algebra.
    Insufficient { found: usize, expected: usize },
}

impl std::fmt::Display for WordFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WordFailure::Dependent { word, depends_on } => {
                write!(f, "image of word {word:?} depends on the images of {depends_on:?}")
            }
            WordFailure::Insufficient { found, expected } => write!(f, "{found} word images, dimension {expected}"),
        }
    }
}

/// Enumerates words in `generators` breadth-first and keeps one word per
/// distinct nonzero image.
///
/// A word whose image repeats an earlier image is not extended further, since
/// its extensions repeat the extensions of the earlier word. Words longer than
/// the nilpotency index of the radical vanish, so the enumeration terminates.
pub fn word_image_basis(u: &AugmentedAlgebra, generators: &[Vector]) -> Result<Result<WordBasis, WordFailure>> {
    let alg = u.algebra();
    let n = alg.dim();
    for g in generators {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
    }
    let mut images = vec![alg.unit().clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<Vector, usize> = HashMap::from([(alg.unit().clone(), 0)]);
    let mut span = Subspace::from_vectors(alg.field(), n, images.iter().cloned());
    let mut frontier = vec![0usize];
    let limit = u.filtration().nilpotency_index().max(1);
    for _ in 0..limit {
        let mut next = Vec::new();
        for &m in &frontier {
            for (g, gen) in generators.iter().enumerate() {
                let v = alg.mul(&images[m], gen);
                if is_zero(&v) || seen.contains_key(&v) {
                    continue;
                }
                let mut word = words[m].clone();
                word.push(g);
                if !span.insert(v.clone()) {
                    return Ok(Err(WordFailure::Dependent { depends_on: dependency(&images, &words, &v)?, word }));
                }
                seen.insert(v.clone(), images.len());
                next.push(images.len());
                images.push(v);
                words.push(word);
            }
        }
        frontier = next;
    }
    if images.len() != n {
        return Ok(Err(WordFailure::Insufficient { found: images.len(), expected: n }));
    }
    Ok(Ok(WordBasis { candidate: BasisCandidate::new(images), words }))
}

fn dependency(images: &[Vector], words: &[Vec<usize>], v: &Vector) -> Result<Vec<Vec<usize>>> {
    let field = v[0].field();
    let mut rows = images.to_vec();
    rows.push(v.clone());
    let kernel = Matrix::from_rows(field, v.len(), rows)?.kernel();
    let rel = kernel
        .basis()
        .iter()
        .find(|c| !c[images.len()].is_zero())
        .ok_or_else(|| Error::Verification("dependent vector without relation".into()))?;
    Ok((0..images.len()).filter(|&i| !rel[i].is_zero()).map(|i| words[i].clone()).collect())
}

/// A certified f.m.b. of `u(L(m,n;s))` with a label per member.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyFmb {
    #[serde(skip)]
    pub certificate: FmbCertificate,
    pub words: Vec<String>,
    /// Each member written in PBW monomials.
    pub normal_forms: Vec<String>,
    pub layer_counts: Vec<usize>,
}

/// Tensor product of word-image bases of the summands of `L(m,n;s)` over `F_2`,
/// verified as an f.m.b. of `u(L(m,n;s))`.
pub fn family_fmb(m: usize, n: usize, s: usize) -> Result<FamilyFmb> {
    let l = make_family(m, n, s, 2)?;
    let f2 = l.field();
    let mut factors: Vec<(AugmentedAlgebra, WordBasis, Vec<String>)> = Vec::new();
    let c = pbw_algebra(&nilcyclic(f2, s))?;
    let h = pbw_algebra(&h_s(s))?;
    let c_words = word_image_basis(c.algebra(), &[c.letter(0)])?
        .map_err(|e| Error::Verification(format!("nilcyclic words: {e}")))?;
    let h_words = word_image_basis(h.algebra(), &[h.letter(0), h.letter(1)])?
        .map_err(|e| Error::Verification(format!("h_s words: {e}")))?;
    let copy_names = |k: usize, base: &str, count: usize, single: &str| -> String {
        if count == 1 {
            single.to_string()
        } else {
            format!("{base}{}", k + 1)
        }
    };
    for k in 0..m {
        let name = if m == 1 && n == 0 { "x".to_string() } else { copy_names(k, "w", m, "w") };
        let labels = c_words.word_labels(&[&name]);
        factors.push((c.algebra().clone(), c_words.clone(), labels));
    }
    for k in 0..n {
        let (x, y) = (copy_names(k, "x", n, "x"), copy_names(k, "y", n, "y"));
        let labels = h_words.word_labels(&[&x, &y]);
        factors.push((h.algebra().clone(), h_words.clone(), labels));
    }
    let mut algebra: Option<AugmentedAlgebra> = None;
    let mut members: Vec<Vector> = vec![vec![f2.one()]];
    let mut words: Vec<String> = vec![String::new()];
    for (alg, basis, labels) in &factors {
        algebra = Some(match algebra {
            None => alg.clone(),
            Some(acc) => tensor_algebra(&acc, alg)?,
        });
        let mut next_members = Vec::new();
        let mut next_words = Vec::new();
        for (left, lw) in members.iter().zip(&words) {
            for (right, rw) in basis.candidate.vectors.iter().zip(labels) {
                next_members.push(kron(left, right));
                next_words.push(join_words(lw, rw));
            }
        }
        members = next_members;
        words = next_words;
    }
    let u = pbw_algebra(&l)?;
    if let Some(t) = &algebra {
        if t.algebra().entries().ne(u.algebra().algebra().entries()) {
            return Err(Error::Verification("tensor layout differs from the PBW layout".into()));
        }
    }
    let words = words.into_iter().map(|w| if w.is_empty() { "1".into() } else { w }).collect();
    let certificate = verify_fmb(u.algebra(), &BasisCandidate::with_unit(members))?
        .map_err(|e| Error::Verification(format!("tensor basis: {e}")))?;
    let labels = u.algebra().labels();
    let normal_forms = certificate.candidate.vectors.iter().map(|v| format_combination(v, labels)).collect();
    let layer_counts = certificate.layer_counts.clone();
    Ok(FamilyFmb { certificate, words, normal_forms, layer_counts })
}

fn kron(a: &[crate::exactmath::FieldValue], b: &[crate::exactmath::FieldValue]) -> Vector {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn join_words(a: &str, b: &str) -> String {
    match (a.is_empty() || a == "1", b == "1") {
        (true, _) => b.to_string(),
        (false, true) => a.to_string(),
        (false, false) => format!("{a}⊗{b}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::mbasis::{reverify, verify_multiplicative};
    use crate::rlie::catalog::heisenberg;

    #[test]
    fn h1_word_basis() {
        let u = pbw_algebra(&h_s(1)).unwrap();
        let b = word_image_basis(u.algebra(), &[u.letter(0), u.letter(1)]).unwrap().unwrap();
        assert_eq!(b.word_labels(&["x", "y"]), ["1", "x", "y", "xy", "yx", "xyx", "yxy", "xyxy"]);
        let labels = u.algebra().labels();
        let forms: Vec<String> = b.candidate.vectors.iter().map(|v| format_combination(v, labels)).collect();
        assert_eq!(forms[5], "xz");
        assert_eq!(forms[6], "yz");
        assert_eq!(forms[7], "xyz");
        let a = u.algebra().algebra();
        let (x, y) = (u.letter(0), u.letter(1));
        let xy = a.mul(&x, &y);
        let yx = a.mul(&y, &x);
        assert_eq!(a.mul(&xy, &xy), a.mul(&yx, &yx));
        assert!(verify_multiplicative(a, &b.candidate).unwrap().is_ok());
        let cert = verify_fmb(u.algebra(), &b.candidate).unwrap().unwrap();
        assert_eq!(cert.layer_counts, vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn nilcyclic_words_are_powers() {
        let f2 = Field::prime(2).unwrap();
        let u = pbw_algebra(&nilcyclic(f2, 2)).unwrap();
        let b = word_image_basis(u.algebra(), &[u.letter(0)]).unwrap().unwrap();
        assert_eq!(b.word_labels(&["x"]), ["1", "x", "x^2", "x^3"]);
    }

    #[test]
    fn heisenberg_over_f3_has_no_word_basis() {
        let u = pbw_algebra(&heisenberg(3).unwrap()).unwrap();
        let out = word_image_basis(u.algebra(), &[u.letter(0), u.letter(1)]).unwrap();
        let Err(WordFailure::Dependent { word, .. }) = out else { panic!("{out:?}") };
        assert_eq!(word.len(), 3);
    }

    #[test]
    fn family_certificates() {
        for ((m, n, s), dim) in [((0, 1, 1), 8), ((1, 0, 2), 4), ((1, 1, 1), 16), ((0, 1, 2), 64)] {
            let f = family_fmb(m, n, s).unwrap();
            assert_eq!(f.certificate.candidate.len(), dim);
            let u = pbw_algebra(&make_family(m, n, s, 2).unwrap()).unwrap();
            assert!(reverify(u.algebra(), &f.certificate).is_ok());
        }
        let c = family_fmb(1, 0, 2).unwrap();
        assert_eq!(c.words, ["1", "x", "x^2", "x^3"]);
    }

    #[test]
    fn family_needs_characteristic_two() {
        assert!(family_fmb(0, 1, 1).is_ok());
        assert!(make_family(0, 1, 1, 3).is_err());
    }
}
