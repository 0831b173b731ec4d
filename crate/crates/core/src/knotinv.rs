//! Invariants of braid closures, and an independent diagram oracle.
//!
//! The braid side works on [`BraidWord`] alone: permutation cycles, writhe,
//! the genus of a positive braid knot and linking from crossing counts. The
//! oracle side ignores the braid and the recorded crossing signs. It walks
//! the strands of a [`StrandDiagram`] to get Gauss codes, reads signs from
//! the geometry, smooths crossings to count Seifert circles and simplifies
//! by Reidemeister I and II moves.

use std::collections::{BTreeMap, HashSet};

use crate::template::{BraidWord, StrandDiagram};

pub const ORACLE_CROSSING_CAP: usize = 40;
pub const EXHAUSTIVE_SEARCH_CAP: usize = 8;
const SEARCH_STATE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("braid has a negative letter at position {0}")]
    NotPositive(usize),
    #[error("closure has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("diagram has {found} crossings, oracle cap is {cap}")]
    TooLarge { found: usize, cap: usize },
}

/// Position-to-component labels: components are numbered by their smallest
/// start position.
pub fn closure_labels(b: &BraidWord) -> Vec<usize> {
    let perm = b.permutation();
    let mut label = vec![usize::MAX; perm.len()];
    let mut next = 0;
    for start in 0..perm.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut p = start;
        while label[p] == usize::MAX {
            label[p] = next;
            p = perm[p];
        }
        next += 1;
    }
    label
}

pub fn closure_components(b: &BraidWord) -> usize {
    closure_labels(b).into_iter().max().map_or(0, |m| m + 1)
}

pub fn writhe(b: &BraidWord) -> i64 {
    b.letters().iter().map(|l| l.sign as i64).sum()
}

/// `g = (c − n + 1)/2` for a positive braid whose closure is a knot.
pub fn positive_braid_genus(b: &BraidWord) -> Result<u64, KnotError> {
    if let Some(i) = b.letters().iter().position(|l| l.sign < 0) {
        return Err(KnotError::NotPositive(i));
    }
    let comps = closure_components(b);
    if comps != 1 {
        return Err(KnotError::NotAKnot(comps));
    }
    Ok(((b.len() + 1 - b.strand_count()) / 2) as u64)
}

/// Pairwise linking of closure components from signed crossing counts.
pub fn braid_linking_matrix(b: &BraidWord) -> Vec<Vec<i64>> {
    let label = closure_labels(b);
    let n = closure_components(b);
    let mut m = vec![vec![0i64; n]; n];
    let mut at: Vec<usize> = (0..b.strand_count()).collect();
    for l in b.letters() {
        let (x, y) = (label[at[l.generator - 1]], label[at[l.generator]]);
        if x != y {
            m[x][y] += l.sign as i64;
            m[y][x] += l.sign as i64;
        }
        at.swap(l.generator - 1, l.generator);
    }
    for row in &mut m {
        for v in row.iter_mut() {
            *v /= 2;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSummary {
    pub components: usize,
    pub writhe: i64,
    pub positive: bool,
    /// Defined only for positive braids closing to a knot.
    pub genus: Option<u64>,
    pub crossing_count: usize,
}

pub fn summarize(b: &BraidWord) -> LinkSummary {
    LinkSummary {
        components: closure_components(b),
        writhe: writhe(b),
        positive: b.is_positive(),
        genus: positive_braid_genus(b).ok(),
        crossing_count: b.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Visit {
    crossing: usize,
    over: bool,
}

/// Oriented Gauss code of a link diagram on the sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDiagram {
    components: Vec<Vec<Visit>>,
    signs: BTreeMap<usize, i8>,
    /// Smallest strand id on each component, for labelling.
    labels: Vec<usize>,
}

impl GaussDiagram {
    /// Walks the strands of `d` upward and through the closure.
    pub fn from_strands(d: &StrandDiagram) -> Self {
        let strands = d.strands();
        let mut by_strand: Vec<Vec<(usize, usize)>> = vec![vec![]; strands.len()];
        let mut signs = BTreeMap::new();
        for (i, c) in d.crossings().iter().enumerate() {
            by_strand[c.over].push((c.level, i));
            by_strand[c.under].push((c.level, i));
            let left = if strands[c.over].positions[c.level] < strands[c.under].positions[c.level] {
                c.over
            } else {
                c.under
            };
            // left strand heads up-right, right strand up-left
            let (over_dir, under_dir) = if left == c.over {
                ((1i64, 1i64), (-1i64, 1i64))
            } else {
                ((-1, 1), (1, 1))
            };
            let cross = over_dir.0 * under_dir.1 - over_dir.1 * under_dir.0;
            signs.insert(i, cross.signum() as i8);
        }
        for v in &mut by_strand {
            v.sort();
        }
        let mut seen = vec![false; strands.len()];
        let mut components = vec![];
        let mut labels = vec![];
        for start in 0..strands.len() {
            if seen[start] {
                continue;
            }
            let mut code = vec![];
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                code.extend(by_strand[s].iter().map(|&(_, i)| Visit {
                    crossing: i,
                    over: d.crossings()[i].over == s,
                }));
                s = d.closure_successor(s);
            }
            components.push(code);
            labels.push(start);
        }
        Self {
            components,
            signs,
            labels,
        }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn writhe(&self) -> i64 {
        self.signs.values().map(|&s| s as i64).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.signs.values().all(|&s| s > 0)
    }

    fn component_of(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for v in comp {
                m.entry(v.crossing).or_default().push(ci);
            }
        }
        m
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components.len();
        let mut m = vec![vec![0i64; n]; n];
        for (x, comps) in self.component_of() {
            let (a, b) = (comps[0], comps[1]);
            if a != b {
                m[a][b] += self.signs[&x] as i64;
                m[b][a] += self.signs[&x] as i64;
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                *v /= 2;
            }
        }
        m
    }

    /// Circles of the oriented smoothing: arriving at a crossing along one
    /// strand, leave along the other.
    pub fn seifert_circles(&self) -> usize {
        let mut visits: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (j, v) in comp.iter().enumerate() {
                visits.entry(v.crossing).or_default().push((ci, j));
            }
        }
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut circles = self.components.iter().filter(|c| c.is_empty()).count();
        for (ci, comp) in self.components.iter().enumerate() {
            for j in 0..comp.len() {
                if used.contains(&(ci, j)) {
                    continue;
                }
                circles += 1;
                // edge (c, j) leaves visit j of component c
                let mut e = (ci, j);
                while used.insert(e) {
                    let len = self.components[e.0].len();
                    let arrive = (e.0, (e.1 + 1) % len);
                    let x = self.components[arrive.0][arrive.1].crossing;
                    let pair = &visits[&x];
                    e = if pair[0] == arrive { pair[1] } else { pair[0] };
                }
            }
        }
        circles
    }

    /// Genus of the surface from Seifert's algorithm on this diagram.
    pub fn seifert_genus(&self) -> Result<u64, KnotError> {
        if self.components.len() != 1 {
            return Err(KnotError::NotAKnot(self.components.len()));
        }
        Ok(((self.crossing_count() + 1 - self.seifert_circles()) / 2) as u64)
    }

    fn remove(&self, crossings: &[usize]) -> Self {
        let mut next = self.clone();
        for comp in &mut next.components {
            comp.retain(|v| !crossings.contains(&v.crossing));
        }
        for x in crossings {
            next.signs.remove(x);
        }
        next
    }

    /// Whether `x` and `y` stay connected once the edges in `cut` are removed.
    fn connected_without(&self, x: usize, y: usize, cut: &[(usize, usize)]) -> bool {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for j in 0..comp.len() {
                if cut.contains(&(ci, j)) {
                    continue;
                }
                let (a, b) = (comp[j].crossing, comp[(j + 1) % comp.len()].crossing);
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }
        let mut stack = vec![x];
        let mut seen = HashSet::from([x]);
        while let Some(u) = stack.pop() {
            if u == y {
                return true;
            }
            for &v in adj.get(&u).into_iter().flatten() {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Diagrams one Reidemeister I or II removal away.
    fn reductions(&self) -> Vec<GaussDiagram> {
        let mut out = vec![];
        let mut adjacent: Vec<((usize, usize), Visit, Visit)> = vec![];
        for (ci, comp) in self.components.iter().enumerate() {
            let n = comp.len();
            for j in 0..n {
                let (a, b) = (comp[j], comp[(j + 1) % n]);
                if n >= 2 && a.crossing == b.crossing && (n > 2 || j == 0) {
                    out.push(self.remove(&[a.crossing]));
                } else if a.crossing != b.crossing {
                    adjacent.push(((ci, j), a, b));
                }
            }
        }
        for (i, &(e1, a1, b1)) in adjacent.iter().enumerate() {
            for &(e2, a2, b2) in &adjacent[i + 1..] {
                let same = (a1.crossing, b1.crossing) == (a2.crossing, b2.crossing);
                let flipped = (a1.crossing, b1.crossing) == (b2.crossing, a2.crossing);
                if !(same || flipped) {
                    continue;
                }
                // one arc over at both crossings, the other under at both
                if a1.over != b1.over || a1.over == a2.over {
                    continue;
                }
                let (x, y) = (a1.crossing, b1.crossing);
                // the rest of the diagram must meet the bigon from one side
                if self.connected_without(x, y, &[e1, e2]) {
                    out.push(self.remove(&[x, y]));
                }
            }
        }
        out
    }

    fn key(&self) -> Vec<Vec<Visit>> {
        self.components
            .iter()
            .map(|c| {
                let r = crate::necklace::least_rotation(c);
                c[r..].iter().chain(&c[..r]).copied().collect()
            })
            .collect()
    }

    fn greedy_reduce(&self) -> GaussDiagram {
        let mut d = self.clone();
        while let Some(next) = d.reductions().into_iter().next() {
            d = next;
        }
        d
    }

    /// Fewest crossings reachable by Reidemeister I/II removals, searching
    /// every removal order.
    fn exhaustive_reduce(&self) -> GaussDiagram {
        let mut best = self.clone();
        let mut seen = HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(d) = stack.pop() {
            if !seen.insert(d.key()) || seen.len() > SEARCH_STATE_LIMIT {
                continue;
            }
            if d.crossing_count() < best.crossing_count() {
                best = d.clone();
                if best.crossing_count() == 0 {
                    break;
                }
            }
            stack.extend(d.reductions());
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSummary {
    pub components: usize,
    /// Smallest strand id on each component; rows of `linking` follow this order.
    pub labels: Vec<usize>,
    pub linking: Vec<Vec<i64>>,
    pub writhe: i64,
    pub positive: bool,
    pub crossing_count: usize,
    pub reduced_crossing_count: usize,
    /// `Some(true)` when the search reaches a crossingless diagram,
    /// `Some(false)` when a positive diagram has Seifert genus above zero.
    pub unknot: Option<bool>,
    /// Seifert-algorithm genus, for knots with a positive diagram.
    pub genus: Option<u64>,
}

/// Independent summary of the closure of `d`.
pub fn diagram_reduce_oracle(d: &StrandDiagram) -> Result<OracleSummary, KnotError> {
    let found = d.crossings().len();
    if found > ORACLE_CROSSING_CAP {
        return Err(KnotError::TooLarge {
            found,
            cap: ORACLE_CROSSING_CAP,
        });
    }
    let g = GaussDiagram::from_strands(d);
    let knot = g.component_count() == 1;
    let reduced = if knot && g.crossing_count() <= EXHAUSTIVE_SEARCH_CAP {
        g.exhaustive_reduce()
    } else {
        g.greedy_reduce()
    };
    let genus = (knot && g.is_positive()).then(|| g.seifert_genus().expect("one component"));
    let unknot = if !knot {
        None
    } else if reduced.crossing_count() == 0 {
        Some(true)
    } else if genus.is_some_and(|g| g > 0) {
        Some(false)
    } else {
        None
    };
    Ok(OracleSummary {
        components: g.component_count(),
        labels: g.labels().to_vec(),
        linking: g.linking_matrix(),
        writhe: g.writhe(),
        positive: g.is_positive(),
        crossing_count: g.crossing_count(),
        reduced_crossing_count: reduced.crossing_count(),
        unknot,
        genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::GroupWord;
    use crate::template::{braid_from_diagram, lorenz_template, orbit_strands};

    fn braid(n: usize, gens: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, gens).unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(closure_components(&braid(4, &[])), 4);
        assert_eq!(closure_components(&braid(2, &[1])), 1);
        assert_eq!(closure_components(&braid(2, &[1, 1, 1])), 1);
        assert_eq!(closure_components(&braid(2, &[1, 1])), 2);
        assert_eq!(closure_components(&braid(3, &[1, 2, 1, 2])), 1);
    }

    #[test]
    fn writhes() {
        assert_eq!(writhe(&braid(2, &[])), 0);
        assert_eq!(writhe(&braid(2, &[1, 1, 1])), 3);
        assert_eq!(writhe(&braid(2, &[1, -1])), 0);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(positive_braid_genus(&braid(2, &[1])), Ok(0));
        assert_eq!(positive_braid_genus(&braid(2, &[1, 1, 1])), Ok(1));
        assert_eq!(positive_braid_genus(&braid(3, &[1, 2, 1, 2])), Ok(1));
        assert_eq!(positive_braid_genus(&braid(2, &[1, -1, 1])), Err(KnotError::NotPositive(1)));
        assert_eq!(positive_braid_genus(&braid(2, &[1, 1])), Err(KnotError::NotAKnot(2)));
        assert_eq!(
            positive_braid_genus(&braid(3, &[1, 2, 1, 2, 1, 2])),
            Err(KnotError::NotAKnot(3))
        );
    }

    #[test]
    fn braid_linking() {
        assert_eq!(braid_linking_matrix(&braid(2, &[1, 1])), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(braid_linking_matrix(&braid(2, &[1, -1])), vec![vec![0, 0], vec![0, 0]]);
    }

    fn diagram(words: &[&[u32]]) -> StrandDiagram {
        let ws: Vec<GroupWord> = words.iter().map(|w| GroupWord::new(3, w).unwrap()).collect();
        orbit_strands(&lorenz_template(), &ws).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let s = diagram_reduce_oracle(&diagram(&[&[1]])).unwrap();
        assert_eq!((s.components, s.unknot, s.genus), (1, Some(true), Some(0)));
        let s = diagram_reduce_oracle(&diagram(&[&[1, 2]])).unwrap();
        assert_eq!((s.components, s.crossing_count, s.unknot), (1, 1, Some(true)));
        let s = diagram_reduce_oracle(&diagram(&[&[1], &[2]])).unwrap();
        assert_eq!(s.components, 2);
        assert_eq!(s.linking, vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn oracle_sees_lorenz_trefoil() {
        // LLRLR is the trefoil on the Lorenz template
        let d = diagram(&[&[1, 1, 2, 1, 2]]);
        let s = diagram_reduce_oracle(&d).unwrap();
        assert_eq!(s.genus, Some(1));
        assert_eq!(s.unknot, Some(false));
        assert_eq!(positive_braid_genus(&braid_from_diagram(&d)), Ok(1));
    }

    #[test]
    fn seifert_circles_of_closed_braids() {
        for (n, gens) in [(2usize, vec![1i64]), (2, vec![1, 1, 1]), (3, vec![1, 2, 1, 2])] {
            let b = braid(n, &gens);
            let g = gauss_of_braid(&b);
            assert_eq!(g.seifert_circles(), n);
            assert_eq!(g.seifert_genus().ok(), positive_braid_genus(&b).ok());
        }
    }

    /// Gauss code of a closed braid, built directly for tests.
    fn gauss_of_braid(b: &BraidWord) -> GaussDiagram {
        let n = b.strand_count();
        let mut at: Vec<usize> = (0..n).collect();
        let mut by_strand: Vec<Vec<Visit>> = vec![vec![]; n];
        let mut signs = BTreeMap::new();
        for (i, l) in b.letters().iter().enumerate() {
            let (left, right) = (at[l.generator - 1], at[l.generator]);
            by_strand[left].push(Visit { crossing: i, over: l.sign > 0 });
            by_strand[right].push(Visit { crossing: i, over: l.sign < 0 });
            signs.insert(i, l.sign);
            at.swap(l.generator - 1, l.generator);
        }
        let perm = b.permutation();
        let mut seen = vec![false; n];
        let mut components = vec![];
        let mut labels = vec![];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut code = vec![];
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                code.extend(by_strand[p].iter().copied());
                p = perm[p];
            }
            components.push(code);
            labels.push(s);
        }
        GaussDiagram { components, signs, labels }
    }

    #[test]
    fn reidemeister_two_removes_inverse_pair() {
        let g = gauss_of_braid(&braid(2, &[1, -1]));
        let r = g.exhaustive_reduce();
        assert_eq!(r.crossing_count(), 0);
        let g = gauss_of_braid(&braid(2, &[1, 1, -1]));
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.exhaustive_reduce().crossing_count(), 0);
    }

    #[test]
    fn trefoil_does_not_reduce() {
        let g = gauss_of_braid(&braid(2, &[1, 1, 1]));
        assert_eq!(g.exhaustive_reduce().crossing_count(), 3);
    }

    #[test]
    fn oracle_cap() {
        let words: Vec<&[u32]> = vec![&[1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 1, 2, 1, 2, 1, 2]];
        let d = diagram(&words);
        if d.crossings().len() > ORACLE_CROSSING_CAP {
            assert!(matches!(diagram_reduce_oracle(&d), Err(KnotError::TooLarge { .. })));
        }
    }
}
