#![allow(dead_code)]

use heckeflow::seifert::normalize_lens;
use heckeflow::tdl::{
    BranchDecl, BranchRole, EarDecl, IntervalDecl, LongEarDecl, TemplateDescription, TwistDecl,
};
use rand::seq::SliceRandom;
use rand::Rng;

fn ident<R: Rng>(rng: &mut R, extra: &[char]) -> String {
    let first = (b'a' + rng.gen_range(0..26)) as char;
    let mut s = String::from(first);
    let pool: Vec<char> = ('a'..='z').chain('A'..='Z').chain('0'..='9').chain(extra.iter().copied()).collect();
    for _ in 0..rng.gen_range(0..8) {
        s.push(*pool.choose(rng).unwrap());
    }
    s
}

fn unit<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..3) {
        0 => rng.gen_range(0..=8) as f64 / 8.0,
        1 => rng.gen::<f64>(),
        _ => rng.gen_range(1..7) as f64 / 7.0,
    }
}

fn interval<R: Rng>(rng: &mut R, branch: &str) -> IntervalDecl {
    let (a, b) = loop {
        let (a, b) = (unit(rng), unit(rng));
        if a != b {
            break (a.min(b), a.max(b));
        }
    };
    IntervalDecl {
        branch: branch.to_string(),
        lo: a,
        hi: b,
    }
}

/// A random description that passes validation.
pub fn random_description<R: Rng>(rng: &mut R) -> TemplateDescription {
    let k = 2 * rng.gen_range(1..=6) + 1;
    let mut branch_ids = vec![ident(rng, &['_'])];
    for _ in 0..rng.gen_range(0..3) {
        let id = ident(rng, &['_']);
        if !branch_ids.contains(&id) {
            branch_ids.push(id);
        }
    }
    let central = branch_ids[0].clone();
    let sides: Vec<String> = branch_ids[1..].to_vec();
    let mut branch_lines: Vec<BranchDecl> = branch_ids
        .iter()
        .enumerate()
        .map(|(i, id)| BranchDecl {
            id: id.clone(),
            role: if i == 0 { BranchRole::Central } else { BranchRole::Side },
        })
        .collect();
    branch_lines.shuffle(rng);

    let mut long_ears: Vec<LongEarDecl> = vec![];
    for b in &sides {
        if rng.gen_bool(0.7) {
            let cover = match rng.gen_range(0..3) {
                0 => 1.0,
                1 => rng.gen_range(1..6) as f64 / 6.0,
                _ => rng.gen_range(1e-6..1.0),
            };
            long_ears.push(LongEarDecl {
                branch: b.clone(),
                max_passes: rng.gen_range(0..5),
                cover,
            });
        }
    }

    let mut indices: Vec<u32> = (1..k).collect();
    indices.shuffle(rng);
    indices.truncate(rng.gen_range(1..k) as usize);
    let all: Vec<&String> = branch_ids.iter().collect();
    let mut ears: Vec<EarDecl> = indices
        .iter()
        .map(|&index| {
            let half_twists = rng.gen_range(-3..=3);
            let source_branch = if rng.gen_bool(0.8) { central.clone() } else { all.choose(rng).unwrap().to_string() };
            let source = interval(rng, &source_branch);
            let target_branch = if rng.gen_bool(0.8) { central.clone() } else { all.choose(rng).unwrap().to_string() };
            let target = interval(rng, &target_branch);
            let via = if !sides.is_empty() && rng.gen_bool(0.5) {
                Some(sides.choose(rng).unwrap().clone())
            } else {
                None
            };
            let long_ear_passes = match &via {
                Some(side) => match long_ears.iter().find(|l| &l.branch == side) {
                    Some(l) => rng.gen_range(0..=l.max_passes),
                    None => 0,
                },
                None => 0,
            };
            EarDecl {
                index,
                source,
                target,
                orientation_preserving: half_twists % 2 == 0,
                half_twists,
                long_ear_passes,
                xi_weight: rng.gen_range(-20..=20),
                layer: 0,
                via,
            }
        })
        .collect();
    for b in &branch_ids {
        let mut members: Vec<usize> = (0..ears.len()).filter(|&i| &ears[i].target.branch == b).collect();
        members.shuffle(rng);
        for (rank, i) in members.into_iter().enumerate() {
            ears[i].layer = rank as u32;
        }
    }

    let mut declared: Vec<u32> = indices.clone();
    declared.sort();
    let mut twists = vec![];
    for _ in 0..rng.gen_range(0..3) {
        let first = *declared.choose(rng).unwrap();
        let mut last = first;
        while declared.contains(&(last + 1)) && rng.gen_bool(0.7) {
            last += 1;
        }
        if last > first && !twists.iter().any(|t: &TwistDecl| (t.first, t.last) == (first, last)) {
            twists.push(TwistDecl {
                first,
                last,
                full_twists: rng.gen_range(-3..=3),
            });
        }
    }

    let comments = (0..rng.gen_range(0..3))
        .map(|_| {
            let words: Vec<String> = (0..rng.gen_range(0..4)).map(|_| ident(rng, &['#', '(', ')', ','])).collect();
            words.join(" ")
        })
        .collect();

    let lens = loop {
        let p = rng.gen_range(-12..=12i64);
        let q = rng.gen_range(-12..=12i64);
        if let Ok(l) = normalize_lens(p, q) {
            break l;
        }
    };

    let mut d = TemplateDescription {
        version: 1,
        comments,
        name: ident(rng, &['_', '-', '.']),
        k,
        lens,
        branch_lines,
        ears,
        twists,
        long_ears,
    };
    d.canonicalize();
    d
}

/// A random edit of TDL text: deletions, duplications, token swaps and junk.
pub fn mutate<R: Rng>(text: &str, rng: &mut R) -> String {
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    if lines.is_empty() {
        return "\u{0}".into();
    }
    let junk = ["x", "-1", "1e999", "NaN", "0.5.5", "∞", "", "#", "+", "99999999999999999999", "ear", "C"];
    let i = rng.gen_range(0..lines.len());
    match rng.gen_range(0..9) {
        0 => {
            lines.remove(i);
        }
        1 => {
            let l = lines[i].clone();
            lines.insert(i, l);
        }
        2 => {
            let mut toks: Vec<String> = lines[i].split(' ').map(String::from).collect();
            let j = rng.gen_range(0..toks.len());
            toks[j] = junk.choose(rng).unwrap().to_string();
            lines[i] = toks.join(" ");
        }
        3 => {
            let mut toks: Vec<String> = lines[i].split(' ').map(String::from).collect();
            let j = rng.gen_range(0..toks.len());
            toks.remove(j);
            lines[i] = toks.join(" ");
        }
        4 => {
            let mut toks: Vec<String> = lines[i].split(' ').map(String::from).collect();
            let (a, b) = (rng.gen_range(0..toks.len()), rng.gen_range(0..toks.len()));
            toks.swap(a, b);
            lines[i] = toks.join(" ");
        }
        5 => {
            let mut chars: Vec<char> = lines[i].chars().collect();
            if !chars.is_empty() {
                let j = rng.gen_range(0..chars.len());
                chars[j] = *['0', '9', '-', '.', ' ', 'Z', '\t', '\r'].choose(rng).unwrap();
            }
            lines[i] = chars.into_iter().collect();
        }
        6 => {
            let j = rng.gen_range(0..lines.len());
            lines.swap(i, j);
        }
        7 => {
            lines[i].push_str(&format!(" {}", junk.choose(rng).unwrap()));
        }
        _ => {
            let cut = rng.gen_range(0..=lines[i].len());
            let cut = (0..=cut).rev().find(|&c| lines[i].is_char_boundary(c)).unwrap_or(0);
            lines[i].truncate(cut);
        }
    }
    lines.join("\n")
}
