//! Period points, their routing through the ears, and the resulting diagram.
//!
//! All period points sit on the central branch line, ordered by the one-sided
//! shift order of their itineraries. Strands run upward from the branch line
//! back to it in three stages: half twists inside each ear, full twists on
//! twist regions, then the merge, where strands from different ears pass in
//! front of or behind each other according to the ears' layer ranks. The
//! closure joins the top of each position to the bottom of the same position.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::hecke::GroupWord;

use super::{TemplateError, TemplateModel};

/// A transverse double point between two adjacent positions.
///
/// `position` is the left position (0-based) just below the crossing. The
/// strand on the left moves right. `sign` is `+1` when that strand passes
/// in front, which with upward orientation is a right-handed crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub level: usize,
    pub position: usize,
    pub over: usize,
    pub under: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Strand {
    pub id: usize,
    pub orbit: usize,
    /// First letter of the itinerary from this period point.
    pub ear: u32,
    /// Position on the branch line at each level, bottom to top.
    pub positions: Vec<usize>,
}

impl Strand {
    pub fn start(&self) -> usize {
        self.positions[0]
    }

    pub fn end(&self) -> usize {
        *self.positions.last().expect("strands have at least one level")
    }

    /// Piecewise-linear path in the projection plane, `(x, y)` with `y` the level.
    pub fn path(&self) -> Vec<(f64, f64)> {
        self.positions
            .iter()
            .enumerate()
            .map(|(y, &x)| (x as f64, y as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitInfo {
    /// Primitive root of the input word.
    pub word: GroupWord,
    /// How many times the input word traverses the orbit.
    pub multiplicity: usize,
    /// Strand ids, one per period point, in itinerary order.
    pub strands: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrandDiagram {
    strands: Vec<Strand>,
    crossings: Vec<Crossing>,
    orbits: Vec<OrbitInfo>,
    ear_counts: BTreeMap<u32, usize>,
    levels: usize,
}

impl StrandDiagram {
    /// Strand ids coincide with start positions.
    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn orbits(&self) -> &[OrbitInfo] {
        &self.orbits
    }

    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Number of period points whose itinerary starts in each ear.
    pub fn ear_counts(&self) -> &BTreeMap<u32, usize> {
        &self.ear_counts
    }

    /// Strand id starting at each position where a given strand ends.
    pub fn closure_successor(&self, strand: usize) -> usize {
        self.strands[strand].end()
    }

    pub fn self_crossings(&self, orbit: usize) -> usize {
        self.crossings
            .iter()
            .filter(|c| self.strands[c.over].orbit == orbit && self.strands[c.under].orbit == orbit)
            .count()
    }
}

/// Half the signed count of crossings between orbits `a` and `b`.
pub fn linking_number(d: &StrandDiagram, a: usize, b: usize) -> Result<i64, TemplateError> {
    let n = d.orbits.len();
    if a >= n {
        return Err(TemplateError::UnknownOrbit(a));
    }
    if b >= n {
        return Err(TemplateError::UnknownOrbit(b));
    }
    if a == b {
        return Err(TemplateError::SelfLinking);
    }
    let sum: i64 = d
        .crossings
        .iter()
        .filter(|c| {
            let (x, y) = (d.strands[c.over].orbit, d.strands[c.under].orbit);
            (x == a && y == b) || (x == b && y == a)
        })
        .map(|c| c.sign as i64)
        .sum();
    debug_assert!(sum % 2 == 0, "closed components cross an even number of times");
    Ok(sum / 2)
}

struct PeriodPoint {
    orbit: usize,
    rotation: usize,
}

struct Order<'a> {
    rank: BTreeMap<u32, usize>,
    reverses: BTreeMap<u32, bool>,
    words: &'a [Vec<u32>],
}

impl Order<'_> {
    fn letter(&self, p: &PeriodPoint, j: usize) -> u32 {
        let w = &self.words[p.orbit];
        w[(p.rotation + j) % w.len()]
    }

    /// One-sided shift order: compare at the first differing letter, reversed
    /// when an odd number of orientation-reversing ears precede it.
    fn compare(&self, p: &PeriodPoint, q: &PeriodPoint) -> Ordering {
        let horizon = self.words[p.orbit].len() + self.words[q.orbit].len();
        let mut flipped = false;
        for j in 0..horizon {
            let (a, b) = (self.letter(p, j), self.letter(q, j));
            if a != b {
                let o = self.rank[&a].cmp(&self.rank[&b]);
                return if flipped { o.reverse() } else { o };
            }
            flipped ^= self.reverses[&a];
        }
        Ordering::Equal
    }
}

struct Builder {
    /// `cur[p]` is the strand id at position `p`.
    cur: Vec<usize>,
    history: Vec<Vec<usize>>,
    crossings: Vec<Crossing>,
}

impl Builder {
    fn new(n: usize) -> Self {
        let cur: Vec<usize> = (0..n).collect();
        Self {
            history: vec![cur.clone()],
            cur,
            crossings: vec![],
        }
    }

    fn swap(&mut self, p: usize, sign: i8) {
        let (left, right) = (self.cur[p], self.cur[p + 1]);
        let (over, under) = if sign > 0 { (left, right) } else { (right, left) };
        self.crossings.push(Crossing {
            level: self.history.len() - 1,
            position: p,
            over,
            under,
            sign,
        });
        self.cur.swap(p, p + 1);
        self.history.push(self.cur.clone());
    }

    /// Half twist on positions `lo..hi`: every pair crosses once.
    fn half_twist(&mut self, lo: usize, hi: usize, sign: i8) {
        for top in (lo + 1..hi).rev() {
            for p in lo..top {
                self.swap(p, sign);
            }
        }
    }
}

/// Builds the strand diagram of `words` on `t`.
///
/// Each word stands for the periodic orbit of its primitive root; words with
/// the same root are rejected as duplicates.
pub fn orbit_strands(t: &TemplateModel, words: &[GroupWord]) -> Result<StrandDiagram, TemplateError> {
    if words.is_empty() {
        return Err(TemplateError::NoOrbits);
    }
    let mut roots: Vec<(GroupWord, usize)> = Vec::with_capacity(words.len());
    for w in words {
        if w.k() != t.k() {
            return Err(TemplateError::WordOrderMismatch {
                word: w.to_string(),
                word_k: w.k(),
                template_k: t.k(),
            });
        }
        t.check_realizable(w)?;
        let (root, mult) = w.primitive_root();
        if roots.iter().any(|(r, _)| *r == root) {
            return Err(TemplateError::DuplicateOrbit(root.to_string()));
        }
        roots.push((root, mult));
    }

    let mut by_source: Vec<_> = t.ears().iter().collect();
    by_source.sort_by(|a, b| a.source.lo.total_cmp(&b.source.lo).then(a.index.cmp(&b.index)));
    let order = Order {
        rank: by_source.iter().enumerate().map(|(r, e)| (e.index, r)).collect(),
        reverses: t.ears().iter().map(|e| (e.index, !e.orientation_preserving)).collect(),
        words: &roots.iter().map(|(r, _)| r.letters().to_vec()).collect::<Vec<_>>(),
    };

    let mut points: Vec<PeriodPoint> = roots
        .iter()
        .enumerate()
        .flat_map(|(orbit, (r, _))| (0..r.len()).map(move |rotation| PeriodPoint { orbit, rotation }))
        .collect();
    points.sort_by(|p, q| order.compare(p, q));
    let n = points.len();
    let mut position_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (pos, p) in points.iter().enumerate() {
        position_of.insert((p.orbit, p.rotation), pos);
    }
    let ear_of: Vec<u32> = points.iter().map(|p| order.letter(p, 0)).collect();
    let target: Vec<usize> = points
        .iter()
        .map(|p| {
            let m = order.words[p.orbit].len();
            position_of[&(p.orbit, (p.rotation + 1) % m)]
        })
        .collect();

    let block = |ears: &dyn Fn(u32) -> bool| -> Option<(usize, usize)> {
        let lo = ear_of.iter().position(|&e| ears(e))?;
        let hi = ear_of.iter().rposition(|&e| ears(e))? + 1;
        Some((lo, hi))
    };

    let mut b = Builder::new(n);
    for ear in &by_source {
        if let Some((lo, hi)) = block(&|e| e == ear.index) {
            let sign = if ear.half_twists > 0 { 1 } else { -1 };
            for _ in 0..ear.half_twists.unsigned_abs() {
                b.half_twist(lo, hi, sign);
            }
        }
    }
    for region in t.twists() {
        if let Some((lo, hi)) = block(&|e| (region.first..=region.last).contains(&e)) {
            let sign = if region.full_twists > 0 { 1 } else { -1 };
            for _ in 0..2 * region.full_twists.unsigned_abs() {
                b.half_twist(lo, hi, sign);
            }
        }
    }

    let layer: BTreeMap<u32, u32> = t.ears().iter().map(|e| (e.index, e.layer)).collect();
    loop {
        let mut swapped = false;
        for p in 0..n.saturating_sub(1) {
            let (l, r) = (b.cur[p], b.cur[p + 1]);
            if target[l] > target[r] {
                let sign = if layer[&ear_of[l]] < layer[&ear_of[r]] { 1 } else { -1 };
                b.swap(p, sign);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    let levels = b.history.len();
    let mut strands: Vec<Strand> = (0..n)
        .map(|id| Strand {
            id,
            orbit: points[id].orbit,
            ear: ear_of[id],
            positions: Vec::with_capacity(levels),
        })
        .collect();
    for row in &b.history {
        for (pos, &id) in row.iter().enumerate() {
            strands[id].positions.push(pos);
        }
    }
    debug_assert!(strands.iter().all(|s| s.end() == target[s.id]));

    let mut ear_counts: BTreeMap<u32, usize> = t.ears().iter().map(|e| (e.index, 0)).collect();
    for &e in &ear_of {
        *ear_counts.entry(e).or_default() += 1;
    }
    let orbits = roots
        .into_iter()
        .enumerate()
        .map(|(o, (word, multiplicity))| OrbitInfo {
            strands: (0..word.len()).map(|r| position_of[&(o, r)]).collect(),
            word,
            multiplicity,
        })
        .collect();
    Ok(StrandDiagram {
        strands,
        crossings: b.crossings,
        orbits,
        ear_counts,
        levels,
    })
}
