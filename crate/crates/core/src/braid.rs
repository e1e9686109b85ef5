//! Braid words on N strands, free reduction, the canonical homomorphism onto
//! the symmetric group, and the pure-braid generators in Artin normal form.
//!
//! Words are kept freely reduced at all times: construction and composition
//! cancel adjacent b_i b_i⁻¹ pairs, so downstream representation cost stays
//! linear in the reduced length. Strand and generator indices are one-based.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One letter b_i^s: the generator index i (1 ≤ i ≤ N−1) and the exponent
/// sign s ∈ {+1, −1}. Serializes as `[i, s]`.
pub type Letter = (usize, i8);

/// A freely reduced word in the braid generators of B_N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WireWord", into = "WireWord")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct WireWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl TryFrom<WireWord> for BraidWord {
    type Error = Error;
    fn try_from(w: WireWord) -> Result<Self> {
        BraidWord::new(w.strands, w.letters)
    }
}

impl From<BraidWord> for WireWord {
    fn from(w: BraidWord) -> Self {
        WireWord {
            strands: w.strands,
            letters: w.letters,
        }
    }
}

impl BraidWord {
    /// Builds a word from letters, validating indices and freely reducing.
    pub fn new(strands: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        let mut reduced: Vec<Letter> = Vec::new();
        for (index, sign) in letters {
            if index == 0 || index >= strands {
                return Err(Error::GeneratorIndex { index, strands });
            }
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidSign(sign));
            }
            match reduced.last() {
                Some(&(top, top_sign)) if top == index && top_sign == -sign => {
                    reduced.pop();
                }
                _ => reduced.push((index, sign)),
            }
        }
        Ok(Self {
            strands,
            letters: reduced,
        })
    }

    /// The empty word in B_N.
    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, [])
    }

    /// The single generator b_i.
    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        Self::new(strands, [(i, 1)])
    }

    /// The inverse generator b_i⁻¹.
    pub fn generator_inverse(strands: usize, i: usize) -> Result<Self> {
        Self::new(strands, [(i, -1)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation followed by free reduction.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Self::new(
            self.strands,
            self.letters.iter().chain(&other.letters).copied(),
        )
    }

    /// Reversed sequence with flipped exponents; `compose(w, w.inverse())`
    /// reduces to the empty word.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    /// Image under the canonical homomorphism φ: B_N → S_N sending b_i to the
    /// transposition (i, i+1). Exponent signs are irrelevant since
    /// transpositions are involutions.
    pub fn to_permutation(&self) -> Permutation {
        let mut acc = Permutation::identity(self.strands);
        for &(i, _) in &self.letters {
            let t = Permutation::adjacent_transposition(self.strands, i)
                .expect("letter index validated at construction");
            acc = acc.compose(&t).expect("sizes match");
        }
        acc
    }
}

/// The pure-braid generator
/// x_{i,j} = b_j b_{j−1} … b_{i+1} b_i² b_{i+1}⁻¹ … b_{j−1}⁻¹ b_j⁻¹,
/// freely reduced (for i = j this collapses to b_i²). Its image under φ is
/// the identity permutation.
pub fn pure_braid_generator(i: usize, j: usize, strands: usize) -> Result<BraidWord> {
    if i == 0 || j < i || j + 1 > strands {
        return Err(Error::PureGeneratorRange { i, j, strands });
    }
    let mut letters: Vec<Letter> = Vec::with_capacity(2 * (j - i) + 2);
    for k in (i + 1..=j).rev() {
        letters.push((k, 1));
    }
    letters.push((i, 1));
    letters.push((i, 1));
    for k in i + 1..=j {
        letters.push((k, -1));
    }
    BraidWord::new(strands, letters)
}

/// All x_{i,j} with 1 ≤ i ≤ j ≤ N−1 in lexicographic (i, j) order; there are
/// N(N−1)/2 of them and they generate the pure braid group.
pub fn pure_generators(strands: usize) -> Result<Vec<BraidWord>> {
    if strands < 2 {
        return Err(Error::TooFewStrands { strands, min: 2 });
    }
    let mut out = Vec::with_capacity(strands * (strands - 1) / 2);
    for i in 1..strands {
        for j in i..strands {
            out.push(pure_braid_generator(i, j, strands)?);
        }
    }
    Ok(out)
}

/// A permutation of {1..N}, stored as one-based images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    // images[k] = σ(k+1), values in 1..=N
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The transposition (i, i+1), one-based.
    pub fn adjacent_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorIndex {
                index: i,
                strands: n,
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Self { images })
    }

    /// Validates that `images` is a bijection of {1..N}.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// σ(k), one-based.
    pub fn image_of(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Function composition (self ∘ other)(k) = self(other(k)): `other` acts
    /// first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::StrandMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Self {
            images: (1..=self.size())
                .map(|k| self.image_of(other.image_of(k)))
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0usize; self.size()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Self { images }
    }

    /// Writes σ as a product of adjacent transpositions s_{p}: the returned
    /// list [p₁, p₂, …, p_k] satisfies σ = s_{p₁} ∘ s_{p₂} ∘ … ∘ s_{p_k}
    /// under [`Permutation::compose`] (rightmost factor acts first).
    ///
    /// The factorization bubble-sorts the one-line form; swapping one-line
    /// positions (p, p+1) multiplies by s_p on the right, so the recorded
    /// swap positions are emitted in reverse.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut line = self.images.clone();
        let n = line.len();
        let mut swaps = Vec::new();
        loop {
            let mut swapped = false;
            for p in 0..n.saturating_sub(1) {
                if line[p] > line[p + 1] {
                    line.swap(p, p + 1);
                    swaps.push(p + 1); // one-based position
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// A second, independently derived factorization (selection sort: move 1
    /// to the front, then 2, …). Used to cross-check that representations
    /// built from factorizations are well defined.
    pub fn adjacent_factorization_alt(&self) -> Vec<usize> {
        let mut line = self.images.clone();
        let n = line.len();
        let mut swaps = Vec::new();
        for target in 1..=n {
            let pos = line.iter().position(|&v| v == target).unwrap();
            for p in (target - 1..pos).rev() {
                line.swap(p, p + 1);
                swaps.push(p + 1);
            }
        }
        swaps.reverse();
        swaps
    }

    /// All permutations of {1..N} in lexicographic one-line order.
    pub fn enumerate_all(n: usize) -> Vec<Permutation> {
        let mut line: Vec<usize> = (1..=n).collect();
        let mut out = vec![Self {
            images: line.clone(),
        }];
        // next_permutation on the one-line form
        while let Some(pivot) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| line[i] < line[i + 1])
        {
            let successor = (pivot + 1..n)
                .rev()
                .find(|&j| line[j] > line[pivot])
                .unwrap();
            line.swap(pivot, successor);
            line[pivot + 1..].reverse();
            out.push(Self {
                images: line.clone(),
            });
        }
        out
    }
}
