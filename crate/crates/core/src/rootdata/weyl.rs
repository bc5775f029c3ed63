use std::collections::{HashMap, VecDeque};

use super::{LatticeVector, RootDatum};
use crate::error::{Error, Result};

/// One Weyl group element: a reduced word and the image of `2 rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Simple reflections, applied first letter first.
    pub word: Vec<usize>,
    /// `w(2 rho)`; determines `w` since `2 rho` is regular.
    pub image: Vec<i64>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// The Weyl group materialized as the orbit of `2 rho`, in breadth-first
/// (length) order.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylGroup {
    /// Generate the group generated by the simple reflections listed in
    /// `generators` (positions into the simple roots). Pass all positions
    /// for the full group.
    pub fn generate(datum: &RootDatum, generators: &[usize], cap: usize) -> Result<WeylGroup> {
        let start = datum.two_rho().to_vec();
        let mut elements = vec![WeylElement {
            word: Vec::new(),
            image: start.clone(),
        }];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &g in generators {
                let img = datum
                    .simple_reflection(g, &LatticeVector::weight(&elements[i].image))
                    .to_ints()
                    .expect("2 rho orbit stays integral");
                if index.contains_key(&img) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::resource(format!("Weyl group of {}", datum.label()), cap));
                }
                let mut word = elements[i].word.clone();
                word.push(g);
                index.insert(img.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement { word, image: img });
            }
        }
        Ok(WeylGroup { elements, index })
    }

    pub fn full(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
        let gens: Vec<usize> = (0..datum.simple_indices().len()).collect();
        Self::generate(datum, &gens, cap)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter()
    }

    /// Element with the given image of `2 rho`, if it belongs to this group.
    pub fn find(&self, image: &[i64]) -> Option<&WeylElement> {
        self.index.get(image).map(|&i| &self.elements[i])
    }

    pub fn apply(&self, datum: &RootDatum, w: &WeylElement, v: &LatticeVector) -> LatticeVector {
        datum.apply_word(&w.word, v)
    }
}

/// Number of positive roots sent to negative roots, read off `w(2 rho)`.
#[cfg(test)]
pub(crate) fn length_from_image(datum: &RootDatum, image: &[i64]) -> usize {
    use num_traits::Signed;
    let v = LatticeVector::weight(image);
    datum
        .positive_indices()
        .iter()
        .filter(|&&i| datum.pairing(i, &v).is_negative())
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, Family};

    #[test]
    fn orders_match_classification() {
        for (f, r) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::A, 4),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 3),
            (Family::D, 4),
            (Family::G2, 2),
            (Family::Sl2, 1),
        ] {
            let d = build_root_datum(f, r).unwrap();
            let w = WeylGroup::full(&d, 100_000).unwrap();
            assert_eq!(w.order() as u64, d.classical_weyl_order(), "{}", d.label());
        }
    }

    #[test]
    fn bfs_depth_is_length() {
        let d = build_root_datum(Family::B, 3).unwrap();
        let w = WeylGroup::full(&d, 100_000).unwrap();
        for e in w.iter() {
            assert_eq!(e.length(), length_from_image(&d, &e.image));
            assert_eq!(
                d.apply_word(&e.word, &d.two_rho_vector()),
                LatticeVector::weight(&e.image)
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = build_root_datum(Family::A, 4).unwrap();
        assert!(matches!(WeylGroup::full(&d, 50), Err(Error::Resource { .. })));
    }
}
