//! Embedded templates for the `(2,k)` geodesic flows.
//!
//! A [`TemplateModel`] carries the ears of the unmerged template: each ear
//! `E_i` leaves a sub-interval of the central branch line and returns over
//! its target interval, with a half-twist count, a layer rank at the merge
//! (rank 0 is in front) and its winding around the missing fiber ξ. Twist
//! regions add full twists to contiguous bands of ears. For `k ≥ 5` the model
//! also records the merged three-branch-line form: ear `E_i` runs out to a
//! side branch line, passes `long_ear_passes` times through that line's long
//! ear and returns through the short ear.
//!
//! Figure-borne data (twists, layers, interior ξ-weights) ships as defaults
//! that a TDL file can override; see [`hecke_template`].

mod braid;
mod strands;

pub use braid::{braid_from_diagram, BraidError, BraidLetter, BraidWord};
pub use strands::{linking_number, orbit_strands, Crossing, OrbitInfo, Strand, StrandDiagram};

use std::fmt;

use crate::hecke::GroupWord;
use crate::seifert::{lens_from_embedding, normalize_lens};
use crate::tdl::{
    BranchDecl, BranchRole, EarDecl, IntervalDecl, LongEarDecl, TdlError, TemplateDescription,
    TwistDecl, VERSION,
};

pub const CENTRAL_BRANCH: &str = "C";
pub const LEFT_BRANCH: &str = "SL";
pub const RIGHT_BRANCH: &str = "SR";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TemplateError {
    #[error("k must be an odd integer >= 3, got {0}")]
    InvalidOrder(u32),
    #[error("invalid template description: {0}")]
    Description(#[from] TdlError),
    #[error("description is for k = {found}, expected k = {expected}")]
    OrderMismatch { expected: u32, found: u32 },
    #[error("template has no ear E{0}")]
    UnknownEar(u32),
    #[error("ear E{0} does not start and end on the central branch line")]
    OffCentralEar(u32),
    #[error("word {word} was built for k = {word_k}, template has k = {template_k}")]
    WordOrderMismatch {
        word: String,
        word_k: u32,
        template_k: u32,
    },
    #[error("orbit {0} appears twice (as cyclic words, up to powers)")]
    DuplicateOrbit(String),
    #[error("no orbits given")]
    NoOrbits,
    #[error("word {word} is not realizable: ear E{from} does not return over the source of E{to}")]
    NotRealizable { word: String, from: u32, to: u32 },
    #[error("{passes} consecutive passes through the long ear on {branch} exceed the maximum {max}")]
    TooManyLongEarPasses { branch: String, passes: u32, max: u32 },
    #[error("template has no {0} branch line with a long ear")]
    NoSideBranch(Side),
    #[error("excursion ({side}, {passes}) is realizable on the merged template but is not an ear of the geodesic template")]
    NotAnEar { side: Side, passes: u32 },
    #[error("orbit index {0} is not in the diagram")]
    UnknownOrbit(usize),
    #[error("linking number of an orbit with itself is not defined")]
    SelfLinking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn branch(&self) -> &'static str {
        match self {
            Side::Left => LEFT_BRANCH,
            Side::Right => RIGHT_BRANCH,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A closed sub-interval `[lo, hi]` of a branch line.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub branch: String,
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    fn overlaps(&self, other: &Interval) -> bool {
        self.branch == other.branch && self.lo.max(other.lo) < self.hi.min(other.hi)
    }

    fn is_full(&self) -> bool {
        self.lo == 0.0 && self.hi == 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ear {
    pub index: u32,
    pub source: Interval,
    pub target: Interval,
    pub orientation_preserving: bool,
    pub half_twists: i32,
    pub long_ear_passes: u32,
    pub via: Option<String>,
    pub xi_weight: i64,
    pub layer: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistRegion {
    pub first: u32,
    pub last: u32,
    pub full_twists: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LongEar {
    pub branch: String,
    pub max_passes: u32,
    pub cover: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchLine {
    pub id: String,
    pub role: BranchRole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemplateModel {
    description: TemplateDescription,
    branch_lines: Vec<BranchLine>,
    ears: Vec<Ear>,
    twists: Vec<TwistRegion>,
    long_ears: Vec<LongEar>,
}

/// Long-ear passes of `E_i`: `i − 1` for `i ≤ (k−1)/2`, `k − i − 1` after.
pub fn long_ear_passes(k: u32, i: u32) -> u32 {
    if i <= (k - 1) / 2 {
        i - 1
    } else {
        k - i - 1
    }
}

fn full_interval(branch: &str) -> IntervalDecl {
    IntervalDecl {
        branch: branch.to_string(),
        lo: 0.0,
        hi: 1.0,
    }
}

fn source_slot(i: u32, ears: u32) -> IntervalDecl {
    IntervalDecl {
        branch: CENTRAL_BRANCH.to_string(),
        lo: (i - 1) as f64 / ears as f64,
        hi: i as f64 / ears as f64,
    }
}

/// Lorenz template: ears L = E₁ and R = E₂, no twists, L in front.
pub fn lorenz_description() -> TemplateDescription {
    TemplateDescription {
        version: VERSION,
        comments: vec![],
        name: "lorenz".into(),
        k: 3,
        lens: normalize_lens(1, 0).expect("S3"),
        branch_lines: vec![BranchDecl {
            id: CENTRAL_BRANCH.into(),
            role: BranchRole::Central,
        }],
        ears: (1..=2)
            .map(|i| EarDecl {
                index: i,
                source: source_slot(i, 2),
                target: full_interval(CENTRAL_BRANCH),
                orientation_preserving: true,
                half_twists: 0,
                long_ear_passes: 0,
                xi_weight: 1,
                layer: i - 1,
                via: None,
            })
            .collect(),
        twists: vec![],
        long_ears: vec![],
    }
}

/// Default description of the `(2,k)` template at Euler number zero.
///
/// Hard constraints: `k − 1` ears each covering the central line, long-ear
/// pass counts from [`long_ear_passes`], a long ear per side line allowing
/// `(k−1)/2` consecutive passes, ξ-weight 1 on the cusp ears `E₁` and
/// `E_{k−1}`, which span an untwisted Lorenz subtemplate.
///
/// Defaults for what only the figures carry: no half twists, `E₁` in front
/// down to `E_{k−1}` at the back, ξ-weight `i` on interior ears, and one
/// positive full twist on each of the bands `E₁..E_{k−2}` and `E₂..E_{k−1}`.
pub fn hecke_description(k: u32) -> Result<TemplateDescription, TemplateError> {
    if k < 3 || k % 2 == 0 {
        return Err(TemplateError::InvalidOrder(k));
    }
    if k == 3 {
        let mut d = lorenz_description();
        d.name = "hecke-3".into();
        return Ok(d);
    }
    let ears_n = k - 1;
    let half = (k - 1) / 2;
    let ears = (1..=ears_n)
        .map(|i| EarDecl {
            index: i,
            source: source_slot(i, ears_n),
            target: full_interval(CENTRAL_BRANCH),
            orientation_preserving: true,
            half_twists: 0,
            long_ear_passes: long_ear_passes(k, i),
            xi_weight: if i == 1 || i == ears_n { 1 } else { i as i64 },
            layer: i - 1,
            via: Some(if i <= half { LEFT_BRANCH } else { RIGHT_BRANCH }.to_string()),
        })
        .collect();
    let cover = half as f64 / (half + 1) as f64;
    Ok(TemplateDescription {
        version: VERSION,
        comments: vec![],
        name: format!("hecke-{k}"),
        k,
        lens: lens_from_embedding(2, k as i64, 1),
        branch_lines: [
            (CENTRAL_BRANCH, BranchRole::Central),
            (LEFT_BRANCH, BranchRole::Side),
            (RIGHT_BRANCH, BranchRole::Side),
        ]
        .into_iter()
        .map(|(id, role)| BranchDecl { id: id.into(), role })
        .collect(),
        ears,
        twists: vec![
            TwistDecl {
                first: 1,
                last: k - 2,
                full_twists: 1,
            },
            TwistDecl {
                first: 2,
                last: k - 1,
                full_twists: 1,
            },
        ],
        long_ears: [LEFT_BRANCH, RIGHT_BRANCH]
            .into_iter()
            .map(|b| LongEarDecl {
                branch: b.into(),
                max_passes: half,
                cover,
            })
            .collect(),
    })
}

pub fn lorenz_template() -> TemplateModel {
    TemplateModel::from_description(&lorenz_description()).expect("built-in description is valid")
}

/// The `(2,k)` template, from `description` when given, else the defaults.
pub fn hecke_template(
    k: u32,
    description: Option<&TemplateDescription>,
) -> Result<TemplateModel, TemplateError> {
    match description {
        Some(d) => {
            if d.k != k {
                return Err(TemplateError::OrderMismatch {
                    expected: k,
                    found: d.k,
                });
            }
            TemplateModel::from_description(d)
        }
        None => TemplateModel::from_description(&hecke_description(k)?),
    }
}

fn interval(d: &IntervalDecl) -> Interval {
    Interval {
        branch: d.branch.clone(),
        lo: d.lo,
        hi: d.hi,
    }
}

impl TemplateModel {
    pub fn from_description(d: &TemplateDescription) -> Result<Self, TemplateError> {
        d.validate()?;
        let central = d
            .branch_lines
            .iter()
            .find(|b| b.role == BranchRole::Central)
            .map(|b| b.id.as_str());
        if let Some(e) = d
            .ears
            .iter()
            .find(|e| Some(e.source.branch.as_str()) != central || Some(e.target.branch.as_str()) != central)
        {
            return Err(TemplateError::OffCentralEar(e.index));
        }
        let mut description = d.clone();
        description.canonicalize();
        let d = &description;
        let ears = d
            .ears
            .iter()
            .map(|e| Ear {
                index: e.index,
                source: interval(&e.source),
                target: interval(&e.target),
                orientation_preserving: e.orientation_preserving,
                half_twists: e.half_twists,
                long_ear_passes: e.long_ear_passes,
                via: e.via.clone(),
                xi_weight: e.xi_weight,
                layer: e.layer,
            })
            .collect();
        Ok(Self {
            branch_lines: d
                .branch_lines
                .iter()
                .map(|b| BranchLine {
                    id: b.id.clone(),
                    role: b.role,
                })
                .collect(),
            ears,
            twists: d
                .twists
                .iter()
                .map(|t| TwistRegion {
                    first: t.first,
                    last: t.last,
                    full_twists: t.full_twists,
                })
                .collect(),
            long_ears: d
                .long_ears
                .iter()
                .map(|l| LongEar {
                    branch: l.branch.clone(),
                    max_passes: l.max_passes,
                    cover: l.cover,
                })
                .collect(),
            description,
        })
    }

    pub fn description(&self) -> &TemplateDescription {
        &self.description
    }

    pub fn name(&self) -> &str {
        &self.description.name
    }

    pub fn k(&self) -> u32 {
        self.description.k
    }

    pub fn branch_lines(&self) -> &[BranchLine] {
        &self.branch_lines
    }

    pub fn ears(&self) -> &[Ear] {
        &self.ears
    }

    pub fn twists(&self) -> &[TwistRegion] {
        &self.twists
    }

    pub fn long_ears(&self) -> &[LongEar] {
        &self.long_ears
    }

    pub fn ear(&self, index: u32) -> Option<&Ear> {
        self.ears.iter().find(|e| e.index == index)
    }

    pub fn central_branch(&self) -> &str {
        self.branch_lines
            .iter()
            .find(|b| b.role == BranchRole::Central)
            .map(|b| b.id.as_str())
            .expect("validated descriptions have one central branch line")
    }

    /// The ear data with everything except names and merged-form bookkeeping:
    /// sources, targets, twists, layers, ξ-weights and twist regions.
    pub fn unmerged_data(&self) -> (Vec<(u32, Interval, Interval, i32, u32, i64)>, Vec<TwistRegion>) {
        let ears = self
            .ears
            .iter()
            .map(|e| (e.index, e.source.clone(), e.target.clone(), e.half_twists, e.layer, e.xi_weight))
            .collect();
        (ears, self.twists.clone())
    }

    /// Linking number of the orbit `w` with the missing fiber ξ: the sum of
    /// the ξ-weights of the ears it passes through.
    pub fn linking_with_xi(&self, w: &GroupWord) -> Result<i64, TemplateError> {
        w.letters()
            .iter()
            .map(|&a| {
                self.ear(a)
                    .map(|e| e.xi_weight)
                    .ok_or(TemplateError::UnknownEar(a))
            })
            .sum()
    }

    /// Checks that every letter is an ear and that each ear returns over the
    /// source of the next letter.
    pub fn check_realizable(&self, w: &GroupWord) -> Result<(), TemplateError> {
        let letters = w.letters();
        for &a in letters {
            let ear = self.ear(a).ok_or(TemplateError::UnknownEar(a))?;
            if let Some(side) = &ear.via {
                if let Some(long) = self.long_ears.iter().find(|l| &l.branch == side) {
                    if ear.long_ear_passes > long.max_passes {
                        return Err(TemplateError::TooManyLongEarPasses {
                            branch: side.clone(),
                            passes: ear.long_ear_passes,
                            max: long.max_passes,
                        });
                    }
                }
            }
        }
        for j in 0..letters.len() {
            let from = letters[j];
            let to = letters[(j + 1) % letters.len()];
            let a = self.ear(from).ok_or(TemplateError::UnknownEar(from))?;
            let b = self.ear(to).ok_or(TemplateError::UnknownEar(to))?;
            if !a.target.overlaps(&b.source) {
                return Err(TemplateError::NotRealizable {
                    word: w.to_string(),
                    from,
                    to,
                });
            }
        }
        Ok(())
    }

    /// Ear reached by an excursion from the central branch line to `side`
    /// followed by `passes` consecutive passes through that side's long ear.
    pub fn ear_for_excursion(&self, side: Side, passes: u32) -> Result<u32, TemplateError> {
        let branch = side.branch();
        let long = self
            .long_ears
            .iter()
            .find(|l| l.branch == branch)
            .ok_or(TemplateError::NoSideBranch(side))?;
        if passes > long.max_passes {
            return Err(TemplateError::TooManyLongEarPasses {
                branch: branch.to_string(),
                passes,
                max: long.max_passes,
            });
        }
        self.ears
            .iter()
            .find(|e| e.via.as_deref() == Some(branch) && e.long_ear_passes == passes)
            .map(|e| e.index)
            .ok_or(TemplateError::NotAnEar { side, passes })
    }

    /// Finds two untwisted ears, each returning over the whole central line,
    /// whose cores are unknotted and unlinked: a copy of the Lorenz template.
    /// Prefers the pair of ears furthest apart.
    pub fn contains_lorenz_subtemplate(&self) -> Option<(u32, u32)> {
        let k = self.k();
        let candidates: Vec<&Ear> = self
            .ears
            .iter()
            .filter(|e| {
                e.half_twists == 0
                    && e.target.is_full()
                    && e.source.branch == self.central_branch()
                    && e.target.branch == self.central_branch()
            })
            .collect();
        let mut pairs: Vec<(u32, u32)> = candidates
            .iter()
            .flat_map(|a| candidates.iter().map(move |b| (a.index, b.index)))
            .filter(|(a, b)| a < b)
            .collect();
        pairs.sort_by_key(|&(a, b)| (std::cmp::Reverse(b - a), a));
        pairs.into_iter().find(|&(a, b)| {
            let words = [
                GroupWord::new(k, &[a]).expect("ear index is a valid letter"),
                GroupWord::new(k, &[b]).expect("ear index is a valid letter"),
            ];
            let Ok(diagram) = orbit_strands(self, &words) else {
                return false;
            };
            let unknotted = (0..2).all(|o| diagram.self_crossings(o) == 0);
            unknotted && linking_number(&diagram, 0, 1) == Ok(0)
        })
    }
}
