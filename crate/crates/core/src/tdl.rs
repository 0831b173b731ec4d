//! Template Description Language: a line-oriented record of template data
//! (branch lines, ears, twist regions, long-ear coverage).
//!
//! ```text
//! tdl 1
//! # free-form comment
//! name hecke-5
//! k 5
//! lens L(3,1)
//! branch C central
//! branch SL side
//! ear 1 source C 0 0.25 target C 0 1 orient + twists 0 passes 0 xi 1 layer 0 via SL
//! twist 1 3 1
//! long SL max 2 cover 0.6666666666666666
//! ```
//!
//! The grammar is in `docs/tdl.md`. [`serialize`] emits the canonical form:
//! declarations sorted (branch lines by id, ears by index, twist regions by
//! range, long ears by branch), fixed field order, LF line endings.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::seifert::{normalize_lens, LensSpace};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct TdlError {
    pub location: Option<Location>,
    pub message: String,
}

impl fmt::Display for TdlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Some(loc) => write!(f, "line {}, column {}: {}", loc.line, loc.column, self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchRole {
    Central,
    Side,
}

impl BranchRole {
    fn as_str(&self) -> &'static str {
        match self {
            BranchRole::Central => "central",
            BranchRole::Side => "side",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchDecl {
    pub id: String,
    pub role: BranchRole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalDecl {
    pub branch: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EarDecl {
    pub index: u32,
    pub source: IntervalDecl,
    pub target: IntervalDecl,
    pub orientation_preserving: bool,
    pub half_twists: i32,
    pub long_ear_passes: u32,
    pub xi_weight: i64,
    pub layer: u32,
    /// Side branch line visited by the composite path in the merged template.
    pub via: Option<String>,
}

/// `full_twists` full twists of the band formed by ears `first..=last`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistDecl {
    pub first: u32,
    pub last: u32,
    pub full_twists: i32,
}

/// Long ear on a side branch line: it returns onto the fraction `cover` of
/// the line, so an orbit can pass through it at most `max_passes` times in a row.
#[derive(Debug, Clone, PartialEq)]
pub struct LongEarDecl {
    pub branch: String,
    pub max_passes: u32,
    pub cover: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemplateDescription {
    pub version: u32,
    pub comments: Vec<String>,
    pub name: String,
    pub k: u32,
    pub lens: LensSpace,
    pub branch_lines: Vec<BranchDecl>,
    pub ears: Vec<EarDecl>,
    pub twists: Vec<TwistDecl>,
    pub long_ears: Vec<LongEarDecl>,
}

impl TemplateDescription {
    /// Checks every invariant the parser enforces; errors carry no location.
    pub fn validate(&self) -> Result<(), TdlError> {
        validate(self, &|_| None)
    }

    /// Sorts declarations into canonical order.
    pub fn canonicalize(&mut self) {
        self.branch_lines.sort_by(|a, b| a.id.cmp(&b.id));
        self.ears.sort_by_key(|e| e.index);
        self.twists.sort_by_key(|t| (t.first, t.last));
        self.long_ears.sort_by(|a, b| a.branch.cmp(&b.branch));
    }
}

// ---------------------------------------------------------------------------
// serialization

fn fmt_decimal(x: f64) -> String {
    // `Display` for f64 is the shortest round-tripping decimal, never exponent form.
    let s = format!("{x}");
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

fn fmt_lens(l: &LensSpace) -> String {
    l.to_string()
}

pub fn serialize(d: &TemplateDescription) -> String {
    let mut d = d.clone();
    d.canonicalize();
    let mut out = String::new();
    let _ = writeln!(out, "tdl {}", d.version);
    for c in &d.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    let _ = writeln!(out, "name {}", d.name);
    let _ = writeln!(out, "k {}", d.k);
    let _ = writeln!(out, "lens {}", fmt_lens(&d.lens));
    for b in &d.branch_lines {
        let _ = writeln!(out, "branch {} {}", b.id, b.role.as_str());
    }
    for e in &d.ears {
        let _ = writeln!(
            out,
            "ear {} source {} {} {} target {} {} {} orient {} twists {} passes {} xi {} layer {} via {}",
            e.index,
            e.source.branch,
            fmt_decimal(e.source.lo),
            fmt_decimal(e.source.hi),
            e.target.branch,
            fmt_decimal(e.target.lo),
            fmt_decimal(e.target.hi),
            if e.orientation_preserving { "+" } else { "-" },
            e.half_twists,
            e.long_ear_passes,
            e.xi_weight,
            e.layer,
            e.via.as_deref().unwrap_or("-"),
        );
    }
    for t in &d.twists {
        let _ = writeln!(out, "twist {} {} {}", t.first, t.last, t.full_twists);
    }
    for l in &d.long_ears {
        let _ = writeln!(
            out,
            "long {} max {} cover {}",
            l.branch,
            l.max_passes,
            fmt_decimal(l.cover)
        );
    }
    out
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    loc: Location,
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    text: &line[b..byte],
                    loc: Location { line: line_no, column: c + 1 },
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            loc: Location { line: line_no, column: c + 1 },
        });
    }
    tokens
}

fn err_at(loc: Location, message: impl Into<String>) -> TdlError {
    TdlError {
        location: Some(loc),
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

fn is_branch_id(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_literal(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    !int.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
}

struct Cursor<'a, 't> {
    tokens: &'t [Token<'a>],
    pos: usize,
    line_end: Location,
}

impl<'a, 't> Cursor<'a, 't> {
    fn next(&mut self, what: &str) -> Result<Token<'a>, TdlError> {
        let t = self
            .tokens
            .get(self.pos)
            .copied()
            .ok_or_else(|| err_at(self.line_end, format!("expected {what}, found end of line")))?;
        self.pos += 1;
        Ok(t)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<(T, Location), TdlError> {
        let t = self.next(what)?;
        if !is_integer_literal(t.text) {
            return Err(err_at(t.loc, format!("expected integer {what}, found `{}`", t.text)));
        }
        t.text
            .parse::<T>()
            .map(|v| (v, t.loc))
            .map_err(|_| err_at(t.loc, format!("{what} `{}` is out of range", t.text)))
    }

    fn decimal(&mut self, what: &str) -> Result<(f64, Location), TdlError> {
        let t = self.next(what)?;
        if !is_decimal_literal(t.text) {
            return Err(err_at(t.loc, format!("expected decimal {what}, found `{}`", t.text)));
        }
        let v: f64 = t
            .text
            .parse()
            .map_err(|_| err_at(t.loc, format!("bad decimal `{}`", t.text)))?;
        if !v.is_finite() {
            return Err(err_at(t.loc, format!("{what} `{}` is out of range", t.text)));
        }
        Ok((if v == 0.0 { 0.0 } else { v }, t.loc))
    }

    fn branch_id(&mut self, what: &str) -> Result<(String, Location), TdlError> {
        let t = self.next(what)?;
        if !is_branch_id(t.text) {
            return Err(err_at(t.loc, format!("`{}` is not a valid branch line id", t.text)));
        }
        Ok((t.text.to_string(), t.loc))
    }
}

/// Where a field of a declaration sits in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Site {
    Header(&'static str),
    Branch(usize),
    Ear(usize, &'static str),
    Twist(usize, &'static str),
    Long(usize, &'static str),
    Comment(usize),
}

const EAR_FIELDS: [&str; 9] = [
    "source", "target", "orient", "twists", "passes", "xi", "layer", "via", "index",
];

pub fn parse(text: &str) -> Result<TemplateDescription, TdlError> {
    let mut sites: HashMap<Site, Location> = HashMap::new();
    let mut version: Option<u32> = None;
    let mut name: Option<String> = None;
    let mut k: Option<u32> = None;
    let mut lens: Option<LensSpace> = None;
    let mut comments = Vec::new();
    let mut branch_lines = Vec::new();
    let mut ears = Vec::new();
    let mut twists = Vec::new();
    let mut long_ears = Vec::new();
    let mut last_loc = Location { line: 1, column: 1 };

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix('#') {
            sites.insert(Site::Comment(comments.len()), Location { line: line_no, column: 1 });
            comments.push(rest.trim().to_string());
            continue;
        }
        // trailing comments are discarded
        let content = match line.find(" #").or_else(|| line.find("\t#")) {
            Some(p) => &line[..p],
            None => line,
        };
        let tokens = tokenize(content, line_no);
        if tokens.is_empty() {
            continue;
        }
        let line_end = Location {
            line: line_no,
            column: content.chars().count() + 1,
        };
        last_loc = line_end;
        let mut cur = Cursor {
            tokens: &tokens,
            pos: 0,
            line_end,
        };
        let kw = cur.next("keyword")?;
        let header_once = |slot_set: bool, field: &str| -> Result<(), TdlError> {
            if slot_set {
                Err(err_at(kw.loc, format!("duplicate `{field}` declaration")))
            } else {
                Ok(())
            }
        };
        match kw.text {
            "tdl" => {
                header_once(version.is_some(), "tdl")?;
                let (v, loc) = cur.int::<u32>("version")?;
                sites.insert(Site::Header("tdl"), loc);
                version = Some(v);
            }
            "name" => {
                header_once(name.is_some(), "name")?;
                let t = cur.next("template name")?;
                if !is_ident(t.text) {
                    return Err(err_at(t.loc, format!("`{}` is not a valid name", t.text)));
                }
                sites.insert(Site::Header("name"), t.loc);
                name = Some(t.text.to_string());
            }
            "k" => {
                header_once(k.is_some(), "k")?;
                let (v, loc) = cur.int::<u32>("k")?;
                sites.insert(Site::Header("k"), loc);
                k = Some(v);
            }
            "lens" => {
                header_once(lens.is_some(), "lens")?;
                let t = cur.next("lens space label")?;
                lens = Some(parse_lens(t.text).ok_or_else(|| {
                    err_at(t.loc, format!("`{}` is not a lens space label", t.text))
                })?);
                sites.insert(Site::Header("lens"), t.loc);
            }
            "branch" => {
                let (id, loc) = cur.branch_id("branch line id")?;
                let role_tok = cur.next("branch role")?;
                let role = match role_tok.text {
                    "central" => BranchRole::Central,
                    "side" => BranchRole::Side,
                    other => {
                        return Err(err_at(
                            role_tok.loc,
                            format!("unknown branch role `{other}` (expected central or side)"),
                        ))
                    }
                };
                sites.insert(Site::Branch(branch_lines.len()), loc);
                branch_lines.push(BranchDecl { id, role });
            }
            "ear" => {
                let i = ears.len();
                let ear = parse_ear(&mut cur, i, &mut sites)?;
                ears.push(ear);
            }
            "twist" => {
                let i = twists.len();
                let (first, l1) = cur.int::<u32>("first ear")?;
                let (last, l2) = cur.int::<u32>("last ear")?;
                let (full_twists, l3) = cur.int::<i32>("full twist count")?;
                sites.insert(Site::Twist(i, "first"), l1);
                sites.insert(Site::Twist(i, "last"), l2);
                sites.insert(Site::Twist(i, "count"), l3);
                twists.push(TwistDecl {
                    first,
                    last,
                    full_twists,
                });
            }
            "long" => {
                let i = long_ears.len();
                let (branch, l1) = cur.branch_id("branch line id")?;
                let mut max_passes = None;
                let mut cover = None;
                while !cur.at_end() {
                    let key = cur.next("field")?;
                    match key.text {
                        "max" if max_passes.is_none() => {
                            let (v, l) = cur.int::<u32>("max passes")?;
                            sites.insert(Site::Long(i, "max"), l);
                            max_passes = Some(v);
                        }
                        "cover" if cover.is_none() => {
                            let (v, l) = cur.decimal("cover fraction")?;
                            sites.insert(Site::Long(i, "cover"), l);
                            cover = Some(v);
                        }
                        "max" | "cover" => {
                            return Err(err_at(key.loc, format!("duplicate field `{}`", key.text)))
                        }
                        other => return Err(err_at(key.loc, format!("unknown keyword `{other}`"))),
                    }
                }
                sites.insert(Site::Long(i, "branch"), l1);
                long_ears.push(LongEarDecl {
                    branch,
                    max_passes: max_passes
                        .ok_or_else(|| err_at(line_end, "long ear is missing `max`"))?,
                    cover: cover.ok_or_else(|| err_at(line_end, "long ear is missing `cover`"))?,
                });
            }
            other => return Err(err_at(kw.loc, format!("unknown keyword `{other}`"))),
        }
        if let Some(extra) = tokens.get(cur.pos) {
            return Err(err_at(extra.loc, format!("unexpected token `{}`", extra.text)));
        }
    }

    let missing = |what: &str| err_at(last_loc, format!("missing `{what}` declaration"));
    let desc = TemplateDescription {
        version: version.ok_or_else(|| missing("tdl"))?,
        comments,
        name: name.ok_or_else(|| missing("name"))?,
        k: k.ok_or_else(|| missing("k"))?,
        lens: lens.ok_or_else(|| missing("lens"))?,
        branch_lines,
        ears,
        twists,
        long_ears,
    };
    validate(&desc, &|site| sites.get(&site).copied())?;
    let mut desc = desc;
    desc.canonicalize();
    Ok(desc)
}

fn parse_lens(label: &str) -> Option<LensSpace> {
    match label {
        "S3" => normalize_lens(1, 0).ok(),
        "S2xS1" => normalize_lens(0, 1).ok(),
        _ => {
            let inner = label.strip_prefix("L(")?.strip_suffix(')')?;
            let (p, q) = inner.split_once(',')?;
            if !is_integer_literal(p) || !is_integer_literal(q) {
                return None;
            }
            normalize_lens(p.parse().ok()?, q.parse().ok()?).ok()
        }
    }
}

fn parse_ear(
    cur: &mut Cursor<'_, '_>,
    i: usize,
    sites: &mut HashMap<Site, Location>,
) -> Result<EarDecl, TdlError> {
    let (index, loc) = cur.int::<u32>("ear index")?;
    sites.insert(Site::Ear(i, "index"), loc);
    let mut source = None;
    let mut target = None;
    let mut orient = None;
    let mut twists = None;
    let mut passes = None;
    let mut xi = None;
    let mut layer = None;
    let mut via: Option<Option<String>> = None;
    let mut seen = BTreeSet::new();

    while !cur.at_end() {
        let key = cur.next("field")?;
        let field = EAR_FIELDS
            .iter()
            .find(|f| **f == key.text && **f != "index")
            .copied()
            .ok_or_else(|| err_at(key.loc, format!("unknown keyword `{}`", key.text)))?;
        if !seen.insert(field) {
            return Err(err_at(key.loc, format!("duplicate field `{field}`")));
        }
        match field {
            "source" | "target" => {
                let (branch, bl) = cur.branch_id("branch line id")?;
                let (lo, _) = cur.decimal("interval start")?;
                let (hi, _) = cur.decimal("interval end")?;
                sites.insert(Site::Ear(i, field), bl);
                let iv = IntervalDecl { branch, lo, hi };
                if field == "source" {
                    source = Some(iv);
                } else {
                    target = Some(iv);
                }
            }
            "orient" => {
                let t = cur.next("orientation")?;
                sites.insert(Site::Ear(i, "orient"), t.loc);
                orient = Some(match t.text {
                    "+" => true,
                    "-" => false,
                    other => {
                        return Err(err_at(t.loc, format!("orientation must be + or -, found `{other}`")))
                    }
                });
            }
            "twists" => {
                let (v, l) = cur.int::<i32>("half twists")?;
                sites.insert(Site::Ear(i, "twists"), l);
                twists = Some(v);
            }
            "passes" => {
                let (v, l) = cur.int::<u32>("long ear passes")?;
                sites.insert(Site::Ear(i, "passes"), l);
                passes = Some(v);
            }
            "xi" => {
                let (v, l) = cur.int::<i64>("xi weight")?;
                sites.insert(Site::Ear(i, "xi"), l);
                xi = Some(v);
            }
            "layer" => {
                let (v, l) = cur.int::<u32>("layer rank")?;
                sites.insert(Site::Ear(i, "layer"), l);
                layer = Some(v);
            }
            "via" => {
                let t = cur.next("side branch line id or -")?;
                sites.insert(Site::Ear(i, "via"), t.loc);
                via = Some(match t.text {
                    "-" => None,
                    id if is_branch_id(id) => Some(id.to_string()),
                    other => return Err(err_at(t.loc, format!("`{other}` is not a valid branch line id"))),
                });
            }
            _ => unreachable!(),
        }
    }
    let need = |f: &str| err_at(cur.line_end, format!("ear {index} is missing `{f}`"));
    Ok(EarDecl {
        index,
        source: source.ok_or_else(|| need("source"))?,
        target: target.ok_or_else(|| need("target"))?,
        orientation_preserving: orient.ok_or_else(|| need("orient"))?,
        half_twists: twists.ok_or_else(|| need("twists"))?,
        long_ear_passes: passes.ok_or_else(|| need("passes"))?,
        xi_weight: xi.ok_or_else(|| need("xi"))?,
        layer: layer.ok_or_else(|| need("layer"))?,
        via: via.ok_or_else(|| need("via"))?,
    })
}

// ---------------------------------------------------------------------------
// validation

fn validate(d: &TemplateDescription, at: &dyn Fn(Site) -> Option<Location>) -> Result<(), TdlError> {
    let fail = |site: Site, message: String| TdlError {
        location: at(site),
        message,
    };

    if d.version != VERSION {
        return Err(fail(Site::Header("tdl"), format!("unsupported version {}", d.version)));
    }
    for (i, c) in d.comments.iter().enumerate() {
        if c.contains(['\n', '\r']) || c.trim() != c {
            return Err(fail(Site::Comment(i), "comment is not a single trimmed line".into()));
        }
    }
    if !is_ident(&d.name) {
        return Err(fail(Site::Header("name"), format!("`{}` is not a valid name", d.name)));
    }
    if d.k < 3 || d.k % 2 == 0 {
        return Err(fail(Site::Header("k"), format!("k must be odd and >= 3, got {}", d.k)));
    }

    let mut roles: BTreeMap<&str, BranchRole> = BTreeMap::new();
    for (i, b) in d.branch_lines.iter().enumerate() {
        if !is_branch_id(&b.id) {
            return Err(fail(Site::Branch(i), format!("`{}` is not a valid branch line id", b.id)));
        }
        if roles.insert(&b.id, b.role).is_some() {
            return Err(fail(Site::Branch(i), format!("branch line `{}` declared twice", b.id)));
        }
    }
    let centrals = roles.values().filter(|r| **r == BranchRole::Central).count();
    if centrals != 1 {
        return Err(fail(
            Site::Header("k"),
            format!("exactly one central branch line is required, found {centrals}"),
        ));
    }

    let long_max: BTreeMap<&str, u32> = {
        let mut m = BTreeMap::new();
        for (i, l) in d.long_ears.iter().enumerate() {
            match roles.get(l.branch.as_str()) {
                None => {
                    return Err(fail(
                        Site::Long(i, "branch"),
                        format!("long ear on undeclared branch line `{}`", l.branch),
                    ))
                }
                Some(BranchRole::Central) => {
                    return Err(fail(
                        Site::Long(i, "branch"),
                        format!("long ear must sit on a side branch line, `{}` is central", l.branch),
                    ))
                }
                Some(BranchRole::Side) => {}
            }
            if !(l.cover > 0.0 && l.cover <= 1.0) {
                return Err(fail(Site::Long(i, "cover"), format!("cover {} is outside (0,1]", l.cover)));
            }
            if m.insert(l.branch.as_str(), l.max_passes).is_some() {
                return Err(fail(
                    Site::Long(i, "branch"),
                    format!("second long ear on branch line `{}`", l.branch),
                ));
            }
        }
        m
    };

    let mut indices = BTreeSet::new();
    let mut layers: BTreeMap<&str, Vec<(u32, usize)>> = BTreeMap::new();
    for (i, e) in d.ears.iter().enumerate() {
        if e.index == 0 || e.index >= d.k {
            return Err(fail(
                Site::Ear(i, "index"),
                format!("ear index {} is outside 1..={}", e.index, d.k - 1),
            ));
        }
        if !indices.insert(e.index) {
            return Err(fail(Site::Ear(i, "index"), format!("ear {} declared twice", e.index)));
        }
        for (field, iv) in [("source", &e.source), ("target", &e.target)] {
            if !roles.contains_key(iv.branch.as_str()) {
                return Err(fail(
                    Site::Ear(i, field),
                    format!("ear {} references undeclared branch line `{}`", e.index, iv.branch),
                ));
            }
            if !(0.0 <= iv.lo && iv.lo < iv.hi && iv.hi <= 1.0) {
                return Err(fail(
                    Site::Ear(i, field),
                    format!("{field} interval [{}, {}] is not inside [0,1]", iv.lo, iv.hi),
                ));
            }
        }
        if e.orientation_preserving != (e.half_twists % 2 == 0) {
            return Err(fail(
                Site::Ear(i, "orient"),
                format!(
                    "ear {}: orientation flag disagrees with {} half twists",
                    e.index, e.half_twists
                ),
            ));
        }
        match &e.via {
            Some(side) => match roles.get(side.as_str()) {
                Some(BranchRole::Side) => {
                    if let Some(&max) = long_max.get(side.as_str()) {
                        if e.long_ear_passes > max {
                            return Err(fail(
                                Site::Ear(i, "passes"),
                                format!(
                                    "ear {} needs {} long-ear passes, `{side}` allows {max}",
                                    e.index, e.long_ear_passes
                                ),
                            ));
                        }
                    } else if e.long_ear_passes > 0 {
                        return Err(fail(
                            Site::Ear(i, "passes"),
                            format!("ear {} passes through `{side}`, which has no long ear", e.index),
                        ));
                    }
                }
                Some(BranchRole::Central) => {
                    return Err(fail(
                        Site::Ear(i, "via"),
                        format!("`{side}` is the central branch line, not a side line"),
                    ))
                }
                None => {
                    return Err(fail(
                        Site::Ear(i, "via"),
                        format!("ear {} references undeclared branch line `{side}`", e.index),
                    ))
                }
            },
            None if e.long_ear_passes > 0 => {
                return Err(fail(
                    Site::Ear(i, "passes"),
                    format!("ear {} has long-ear passes but no side branch line", e.index),
                ))
            }
            None => {}
        }
        layers.entry(e.target.branch.as_str()).or_default().push((e.layer, i));
    }
    for group in layers.values_mut() {
        group.sort();
        for (rank, &(layer, i)) in group.iter().enumerate() {
            if layer as usize != rank {
                let message = if rank > 0 && group[rank - 1].0 == layer {
                    format!("duplicate layer rank {layer} on branch line `{}`", d.ears[i].target.branch)
                } else {
                    format!(
                        "layer ranks on branch line `{}` must be 0..{}",
                        d.ears[i].target.branch,
                        group.len()
                    )
                };
                return Err(fail(Site::Ear(i, "layer"), message));
            }
        }
    }

    let mut ranges = BTreeSet::new();
    for (i, t) in d.twists.iter().enumerate() {
        if t.first >= t.last {
            return Err(fail(
                Site::Twist(i, "last"),
                format!("twist region {}..{} must span at least two ears", t.first, t.last),
            ));
        }
        if let Some(missing) = (t.first..=t.last).find(|j| !indices.contains(j)) {
            let field = if missing == t.first { "first" } else { "last" };
            return Err(fail(
                Site::Twist(i, field),
                format!("twist region references undeclared ear {missing}"),
            ));
        }
        if !ranges.insert((t.first, t.last)) {
            return Err(fail(
                Site::Twist(i, "first"),
                format!("twist region {}..{} declared twice", t.first, t.last),
            ));
        }
    }
    Ok(())
}
