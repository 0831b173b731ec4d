//! The `(2,k)` Hecke triangle group as a pair of rotations, cyclic words in
//! its generators, and the elliptic/parabolic/hyperbolic trichotomy.
//!
//! A word `(a₁,…,a_m)` stands for the product `U·V^{a₁}·U·V^{a₂}⋯U·V^{a_m}`.
//! Letter `a` is also the index of the template ear `E_a`, so the same value
//! names a conjugacy class in the group and a periodic orbit on the template.

use std::f64::consts::PI;
use std::fmt;

use crate::hyperbolic::{rotation_about, MobiusTransform, UpperHalfPoint};
use crate::necklace;
use crate::tolerance::PARABOLIC_BAND;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HeckeError {
    #[error("k must be an odd integer >= 3, got {0}")]
    InvalidOrder(u32),
    #[error("cone-point distance must be positive and finite, got {0}")]
    InvalidDistance(f64),
    #[error("word is empty")]
    EmptyWord,
    #[error("letter {letter} is outside 1..={max}")]
    LetterOutOfRange { letter: u32, max: u32 },
    #[error("word was built for k = {word_k}, group has k = {group_k}")]
    OrderMismatch { word_k: u32, group_k: u32 },
}

fn check_order(k: u32) -> Result<(), HeckeError> {
    if k < 3 || k % 2 == 0 {
        return Err(HeckeError::InvalidOrder(k));
    }
    Ok(())
}

/// Cone-point distance at which `U·V` is parabolic: `arccosh(1/sin(π/k))`.
///
/// With `U` the half turn about `i` and `V` the `2π/k` rotation about `i·e^d`,
/// `trace(U·V) = −2·sin(π/k)·cosh(d)`, which has modulus 2 exactly here.
pub fn lattice_distance(k: u32) -> Result<f64, HeckeError> {
    check_order(k)?;
    Ok((1.0 / (PI / k as f64).sin()).acosh())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeckeGroup {
    k: u32,
    distance: f64,
    u: MobiusTransform,
    v: MobiusTransform,
    v_powers: Vec<MobiusTransform>,
}

impl HeckeGroup {
    /// `U` = half turn about `i`, `V` = rotation by `2π/k` about `i·e^d`.
    pub fn new(k: u32, distance: f64) -> Result<Self, HeckeError> {
        check_order(k)?;
        if !(distance > 0.0) || !distance.is_finite() {
            return Err(HeckeError::InvalidDistance(distance));
        }
        let u = rotation_about(&UpperHalfPoint::I, PI);
        let centre = UpperHalfPoint::new(0.0, distance.exp()).expect("e^d > 0");
        let v = rotation_about(&centre, 2.0 * PI / k as f64);
        // U·V^a for a = 0..k−1, reused by every word product.
        let v_powers = (0..k as i64).map(|a| u * v.pow(a)).collect();
        Ok(Self {
            k,
            distance,
            u,
            v,
            v_powers,
        })
    }

    /// The group at its lattice distance.
    pub fn lattice(k: u32) -> Result<Self, HeckeError> {
        Self::new(k, lattice_distance(k)?)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn u(&self) -> MobiusTransform {
        self.u
    }

    pub fn v(&self) -> MobiusTransform {
        self.v
    }

    pub fn word_to_matrix(&self, word: &GroupWord) -> Result<MobiusTransform, HeckeError> {
        if word.k != self.k {
            return Err(HeckeError::OrderMismatch {
                word_k: word.k,
                group_k: self.k,
            });
        }
        Ok(self.letters_to_matrix(&word.letters))
    }

    fn letters_to_matrix(&self, letters: &[u32]) -> MobiusTransform {
        letters
            .iter()
            .fold(MobiusTransform::IDENTITY, |acc, &a| acc * self.v_powers[a as usize])
    }

    /// Every cyclic word of length `1..=max_len`, ordered by (length, lex),
    /// paired with the class of its matrix.
    pub fn enumerate_orbit_words(&self, max_len: usize, tol: f64) -> Vec<(GroupWord, IsometryClass)> {
        (1..=max_len)
            .flat_map(|m| necklace::necklaces(self.k - 1, m))
            .map(|letters| {
                let class = classify(&self.letters_to_matrix(&letters), tol);
                (GroupWord { k: self.k, letters }, class)
            })
            .collect()
    }
}

/// A cyclic word over `{1,…,k−1}`, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    k: u32,
    letters: Vec<u32>,
}

impl GroupWord {
    pub fn new(k: u32, letters: &[u32]) -> Result<Self, HeckeError> {
        check_order(k)?;
        if letters.is_empty() {
            return Err(HeckeError::EmptyWord);
        }
        if let Some(&letter) = letters.iter().find(|&&a| a == 0 || a >= k) {
            return Err(HeckeError::LetterOutOfRange { letter, max: k - 1 });
        }
        Ok(Self {
            k,
            letters: necklace::canonical_rotation(letters),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_primitive(&self) -> bool {
        necklace::primitive_period(&self.letters) == self.letters.len()
    }

    /// The primitive word `r` with `self = r^j`, and `j`.
    pub fn primitive_root(&self) -> (GroupWord, usize) {
        let p = necklace::primitive_period(&self.letters);
        let root = GroupWord {
            k: self.k,
            letters: self.letters[..p].to_vec(),
        };
        (root, self.letters.len() / p)
    }

    /// The word repeated `times` times.
    pub fn power(&self, times: usize) -> GroupWord {
        GroupWord {
            k: self.k,
            letters: self.letters.repeat(times.max(1)),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl IsometryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IsometryKind::Elliptic => "elliptic",
            IsometryKind::Parabolic => "parabolic",
            IsometryKind::Hyperbolic => "hyperbolic",
        }
    }
}

impl fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub trace: f64,
    /// Translation length `2·arccosh(|tr|/2)`, hyperbolic elements only.
    pub length: Option<f64>,
}

impl IsometryClass {
    pub fn is_hyperbolic(&self) -> bool {
        self.kind == IsometryKind::Hyperbolic
    }
}

/// `|tr|` within `tol` of 2 is parabolic; the identity lands there too.
pub fn classify(m: &MobiusTransform, tol: f64) -> IsometryClass {
    let trace = m.trace();
    let t = trace.abs();
    let (kind, length) = if t > 2.0 + tol {
        (IsometryKind::Hyperbolic, Some(2.0 * (t / 2.0).acosh()))
    } else if t < 2.0 - tol {
        (IsometryKind::Elliptic, None)
    } else {
        (IsometryKind::Parabolic, None)
    };
    IsometryClass {
        kind,
        trace,
        length,
    }
}

pub fn classify_default(m: &MobiusTransform) -> IsometryClass {
    classify(m, PARABOLIC_BAND)
}
