//! Small algebras used throughout: truncated polynomial rings and monomial algebras.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, Field};

use super::augmented::AugmentedAlgebra;
use super::presentation::AlgebraPresentation;

/// `F[x]/(x^n)` in the basis `1, x, ..., x^{n-1}`.
pub fn truncated_polynomial(field: Field, n: usize) -> AlgebraPresentation {
    let labels = (0..n).map(|i| word_label(&["x"], &vec![0; i])).collect();
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i + j < n)
        .map(|(i, j)| (i, j, i + j, field.one()));
    AlgebraPresentation::from_entries(field, labels, entries, unit_vector(field, n, 0))
        .expect("well-formed table")
}

/// Augments an algebra whose basis element 0 is the unit and whose other
/// basis elements span the augmentation ideal.
pub fn augment_at_unit(a: AlgebraPresentation) -> Result<AugmentedAlgebra> {
    let eps = unit_vector(a.field(), a.dim(), 0);
    AugmentedAlgebra::new(a, eps)
}

/// Label of a word: runs of a letter are written as powers, the empty word is `1`.
pub fn word_label(letters: &[&str], word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        out.push_str(letters[word[i]]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

/// The monomial algebra spanned by a factor-closed set of words: the product of
/// two words is their concatenation if it belongs to the set and zero otherwise.
///
/// Words are ordered by length, then lexicographically; the empty word is index 0.
pub fn monomial_algebra(field: Field, letters: &[&str], words: &BTreeSet<Vec<usize>>) -> Result<AugmentedAlgebra> {
    let mut ordered: Vec<Vec<usize>> = words.iter().cloned().collect();
    ordered.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    if ordered.first().map(Vec::is_empty) != Some(true) {
        return Err(Error::InvalidAlgebra("word set must contain the empty word".into()));
    }
    for w in &ordered {
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                if !words.contains(&w[i..j].to_vec()) {
                    return Err(Error::InvalidAlgebra("word set is not closed under subwords".into()));
                }
            }
        }
        if w.iter().any(|&l| l >= letters.len()) {
            return Err(Error::InvalidAlgebra("unknown letter".into()));
        }
    }
    let index: HashMap<&Vec<usize>, usize> = ordered.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut entries = Vec::new();
    for (i, a) in ordered.iter().enumerate() {
        for (j, b) in ordered.iter().enumerate() {
            let mut ab = a.clone();
            ab.extend(b);
            if let Some(&k) = index.get(&ab) {
                entries.push((i, j, k, field.one()));
            }
        }
    }
    let labels = ordered.iter().map(|w| word_label(letters, w)).collect();
    let n = ordered.len();
    let a = AlgebraPresentation::from_entries(field, labels, entries, unit_vector(field, n, 0))?;
    augment_at_unit(a)
}

/// `F<letters>` modulo all words longer than `max_len`.
pub fn truncated_free(field: Field, letters: &[&str], max_len: usize) -> AugmentedAlgebra {
    let mut words = BTreeSet::new();
    let mut frontier = vec![Vec::new()];
    words.insert(Vec::new());
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..letters.len() {
                let mut v = w.clone();
                v.push(l);
                words.insert(v.clone());
                next.push(v);
            }
        }
        frontier = next;
    }
    monomial_algebra(field, letters, &words).expect("truncated free algebra is a monomial algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_free_labels() {
        let f2 = Field::prime(2).unwrap();
        let t = truncated_free(f2, &["x", "y"], 2);
        assert_eq!(t.labels(), &["1", "x", "y", "x^2", "xy", "yx", "y^2"]);
        assert!(t.algebra().validate().is_valid());
    }

    #[test]
    fn monomial_algebra_rejects_non_factor_closed() {
        let f2 = Field::prime(2).unwrap();
        let words: BTreeSet<Vec<usize>> = [vec![], vec![0, 1]].into_iter().collect();
        assert!(monomial_algebra(f2, &["x", "y"], &words).is_err());
    }
}
