use std::fmt;

use super::StrandDiagram;

/// Artin generator `σ_gen^sign`, `gen` 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub generator: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<BraidLetter>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("generator {generator} is out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("letter sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("cannot parse braid letter {0:?}")]
    Parse(String),
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        for l in &letters {
            if l.sign != 1 && l.sign != -1 {
                return Err(BraidError::BadSign(l.sign));
            }
            if l.generator == 0 || l.generator >= strand_count {
                return Err(BraidError::GeneratorOutOfRange {
                    generator: l.generator,
                    strands: strand_count,
                });
            }
        }
        Ok(Self {
            strand_count,
            letters,
        })
    }

    /// From signed generators: `3` is `σ₃`, `-3` is `σ₃⁻¹`.
    pub fn from_signed(strand_count: usize, gens: &[i64]) -> Result<Self, BraidError> {
        let letters = gens
            .iter()
            .map(|&g| BraidLetter {
                generator: g.unsigned_abs() as usize,
                sign: if g < 0 { -1 } else { 1 },
            })
            .collect();
        Self::new(strand_count, letters)
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign > 0)
    }

    pub fn signed(&self) -> Vec<i64> {
        self.letters
            .iter()
            .map(|l| l.generator as i64 * l.sign as i64)
            .collect()
    }

    /// Permutation of positions: `perm[p]` is where the strand starting at `p` ends.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strand_count).collect();
        for l in &self.letters {
            at.swap(l.generator - 1, l.generator);
        }
        let mut perm = vec![0; self.strand_count];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1 ({} strands)", self.strand_count);
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.sign > 0 {
                    format!("s{}", l.generator)
                } else {
                    format!("S{}", l.generator)
                }
            })
            .collect();
        write!(f, "{} ({} strands)", parts.join(" "), self.strand_count)
    }
}

/// Reads the crossings bottom to top as Artin generators on all period points.
pub fn braid_from_diagram(d: &StrandDiagram) -> BraidWord {
    let letters = d
        .crossings()
        .iter()
        .map(|c| BraidLetter {
            generator: c.position + 1,
            sign: c.sign,
        })
        .collect();
    BraidWord {
        strand_count: d.strand_count(),
        letters,
    }
}
