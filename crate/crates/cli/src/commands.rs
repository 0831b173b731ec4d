use std::path::Path;

use heckeflow::hecke::{lattice_distance, GroupWord, HeckeGroup};
use heckeflow::knotinv::{diagram_reduce_oracle, summarize};
use heckeflow::seifert::normalize_lens;
use heckeflow::tdl::{parse, serialize, TemplateDescription};
use heckeflow::template::{
    braid_from_diagram, hecke_description, hecke_template, linking_number, orbit_strands,
    TemplateModel,
};
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig, TemplateSource};
use crate::words::{parse_word, template_failure};
use crate::{svg, Failure};

/// Inclusive integer range `a..b` (or `a..=b`), or a single integer.
pub fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::validation(format!("bad range `{s}`, expected `c` or `a..b`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let c = s.trim().parse().map_err(|_| bad())?;
            (c, c)
        }
    };
    if lo > hi {
        return Err(Failure::validation(format!("empty range `{s}`")));
    }
    if hi as i128 - lo as i128 >= 100_000 {
        return Err(Failure::validation(format!("range `{s}` has more than 100000 values")));
    }
    Ok((lo, hi))
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = fmt_row(header.to_vec());
    for r in rows {
        out.push_str(&fmt_row(r.iter().map(String::as_str).collect()));
    }
    out
}

fn jsonl<T: Serialize>(records: &[T]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

fn format_or_reject(cfg: &RunConfig, what: &str) -> Result<OutputFormat, Failure> {
    match cfg.output {
        OutputFormat::Svg => Err(Failure::validation(format!(
            "svg output is only available from the svg command, not {what}"
        ))),
        f => Ok(f),
    }
}

#[derive(Serialize)]
struct LensRow {
    n: i64,
    k: i64,
    c: i64,
    b: i64,
    p: i64,
    q: i64,
    lens: String,
    s3: bool,
}

pub fn lens(n: i64, k: i64, c_range: &str, format: OutputFormat) -> Result<String, Failure> {
    if n < 2 || k < 2 {
        return Err(Failure::validation(format!("cone orders must be >= 2, got n={n} k={k}")));
    }
    if format == OutputFormat::Svg {
        return Err(Failure::validation("svg output is only available from the svg command, not lens"));
    }
    let (lo, hi) = parse_range(c_range)?;
    let mut rows = Vec::new();
    for c in lo..=hi {
        let overflow = || Failure::computation(format!("integer overflow at n={n} k={k} c={c}"));
        let nc = n.checked_mul(c).ok_or_else(overflow)?;
        let p = nc
            .checked_mul(k)
            .and_then(|nkc| n.checked_add(k)?.checked_sub(nkc))
            .filter(|&p| p != i64::MIN)
            .ok_or_else(overflow)?;
        let q = 1i64.checked_sub(nc).filter(|&q| q != i64::MIN).ok_or_else(overflow)?;
        let l = normalize_lens(p, q).map_err(|e| Failure::computation(e.to_string()))?;
        rows.push(LensRow {
            n,
            k,
            c,
            b: c - 1,
            p: l.p(),
            q: l.q(),
            lens: l.to_string(),
            s3: l.is_s3(),
        });
    }
    Ok(match format {
        OutputFormat::Table => table(
            &["c", "b", "p", "q", "lens", "s3"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.c.to_string(),
                        r.b.to_string(),
                        r.p.to_string(),
                        r.q.to_string(),
                        r.lens.clone(),
                        r.s3.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        _ => jsonl(&rows),
    })
}

fn read_description(path: &Path) -> Result<TemplateDescription, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e.location {
        Some(l) => Failure::validation(format!("{}:{}:{}: {}", path.display(), l.line, l.column, e.message)),
        None => Failure::validation(format!("{}: {}", path.display(), e.message)),
    })
}

pub fn load_template(cfg: &RunConfig) -> Result<TemplateModel, Failure> {
    match &cfg.template {
        TemplateSource::Builtin => hecke_template(cfg.k, None).map_err(template_failure),
        TemplateSource::Tdl(path) => {
            let d = read_description(path)?;
            let k = if cfg.k_explicit { cfg.k } else { d.k };
            hecke_template(k, Some(&d))
                .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
        }
    }
}

fn group(cfg: &RunConfig, k: u32) -> Result<HeckeGroup, Failure> {
    let d0 = lattice_distance(k).map_err(|e| Failure::validation(e.to_string()))?;
    HeckeGroup::new(k, d0 + cfg.d_offset).map_err(|e| Failure::validation(e.to_string()))
}

#[derive(Serialize)]
struct OrbitRecord {
    word: String,
    trace: f64,
    class: &'static str,
    length: Option<f64>,
    lk_xi: Option<i64>,
}

/// Primitive words up to the configured length, in (length, lex) order.
pub fn orbits(cfg: &RunConfig, geodesics_only: bool) -> Result<String, Failure> {
    let format = format_or_reject(cfg, "orbits")?;
    let t = load_template(cfg)?;
    let g = group(cfg, t.k())?;
    let records: Vec<OrbitRecord> = g
        .enumerate_orbit_words(cfg.max_word_len, cfg.tolerance)
        .into_iter()
        .filter(|(w, c)| w.is_primitive() && (!geodesics_only || c.is_hyperbolic()))
        .map(|(w, c)| OrbitRecord {
            word: w.to_string(),
            trace: c.trace,
            class: c.kind.as_str(),
            length: c.length,
            lk_xi: t.linking_with_xi(&w).ok(),
        })
        .collect();
    Ok(match format {
        OutputFormat::Table => {
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            table(
                &["word", "trace", "class", "length", "lk_xi"],
                &records
                    .iter()
                    .map(|r| {
                        vec![
                            r.word.clone(),
                            format!("{:.9}", r.trace),
                            r.class.to_string(),
                            opt(r.length.map(|l| format!("{l:.9}"))),
                            opt(r.lk_xi.map(|l| l.to_string())),
                        ]
                    })
                    .collect::<Vec<_>>(),
            )
        }
        _ => jsonl(&records),
    })
}

/// Parses the words and, unless `template_only`, rejects those that are not
/// closed geodesics.
fn checked_words(
    cfg: &RunConfig,
    t: &TemplateModel,
    texts: &[String],
    template_only: bool,
) -> Result<Vec<GroupWord>, Failure> {
    if texts.is_empty() {
        return Err(Failure::validation("no orbits given"));
    }
    let g = group(cfg, t.k())?;
    let mut words = Vec::with_capacity(texts.len());
    for text in texts {
        let w = parse_word(text, t)?;
        if !template_only {
            let m = g.word_to_matrix(&w).map_err(|e| Failure::validation(e.to_string()))?;
            let c = heckeflow::hecke::classify(&m, cfg.tolerance);
            if !c.is_hyperbolic() {
                return Err(Failure::validation(format!(
                    "{w} is {} (|trace| = {:.12}), not a closed geodesic; use --template-only for template orbits",
                    c.kind,
                    c.trace.abs()
                )));
            }
        }
        t.check_realizable(&w).map_err(template_failure)?;
        words.push(w);
    }
    Ok(words)
}

#[derive(Serialize)]
struct OracleRecord {
    crossings: usize,
    reduced_crossings: usize,
    unknot: Option<bool>,
    genus: Option<u64>,
}

#[derive(Serialize)]
struct InvariantRecord {
    word: String,
    multiplicity: usize,
    braid: Vec<i64>,
    strands: usize,
    components: usize,
    writhe: i64,
    positive: bool,
    genus: Option<u64>,
    lk_xi: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleRecord>,
}

#[derive(Serialize)]
struct LinkingRecord {
    words: Vec<String>,
    linking: Vec<Vec<i64>>,
}

pub fn invariants(
    cfg: &RunConfig,
    texts: &[String],
    template_only: bool,
    oracle: bool,
) -> Result<String, Failure> {
    let format = format_or_reject(cfg, "invariants")?;
    let t = load_template(cfg)?;
    let words = checked_words(cfg, &t, texts, template_only)?;
    let mut records = Vec::new();
    for w in &words {
        let d = orbit_strands(&t, std::slice::from_ref(w)).map_err(template_failure)?;
        let b = braid_from_diagram(&d);
        let s = summarize(&b);
        let oracle = if oracle {
            let o = diagram_reduce_oracle(&d).map_err(|e| Failure::computation(format!("{w}: {e}")))?;
            Some(OracleRecord {
                crossings: o.crossing_count,
                reduced_crossings: o.reduced_crossing_count,
                unknot: o.unknot,
                genus: o.genus,
            })
        } else {
            None
        };
        records.push(InvariantRecord {
            word: w.to_string(),
            multiplicity: d.orbits()[0].multiplicity,
            braid: b.signed(),
            strands: b.strand_count(),
            components: s.components,
            writhe: s.writhe,
            positive: s.positive,
            genus: s.genus,
            lk_xi: t.linking_with_xi(w).map_err(template_failure)?,
            oracle,
        });
    }
    let link = if words.len() > 1 {
        let d = orbit_strands(&t, &words).map_err(template_failure)?;
        let n = words.len();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let lk = linking_number(&d, i, j).map_err(template_failure)?;
                m[i][j] = lk;
                m[j][i] = lk;
            }
        }
        Some(LinkingRecord {
            words: words.iter().map(|w| w.to_string()).collect(),
            linking: m,
        })
    } else {
        None
    };
    Ok(match format {
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.word.clone(),
                        r.braid.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" "),
                        r.strands.to_string(),
                        r.components.to_string(),
                        r.writhe.to_string(),
                        r.positive.to_string(),
                        r.genus.map_or("-".into(), |g| g.to_string()),
                        r.lk_xi.to_string(),
                    ]
                })
                .collect();
            let mut out = table(
                &["word", "braid", "strands", "components", "writhe", "positive", "genus", "lk_xi"],
                &rows,
            );
            if let Some(l) = &link {
                out.push('\n');
                let mut header = vec![""];
                header.extend(l.words.iter().map(String::as_str));
                let rows: Vec<Vec<String>> = l
                    .words
                    .iter()
                    .zip(&l.linking)
                    .map(|(w, row)| std::iter::once(w.clone()).chain(row.iter().map(|x| x.to_string())).collect())
                    .collect();
                out.push_str(&table(&header, &rows));
            }
            out
        }
        _ => {
            let mut out = jsonl(&records);
            if let Some(l) = &link {
                out.push_str(&jsonl(std::slice::from_ref(l)));
            }
            out
        }
    })
}

pub fn svg(cfg: &RunConfig, texts: &[String], template_only: bool) -> Result<String, Failure> {
    if texts.is_empty() {
        return Err(Failure::validation("no orbits"));
    }
    let t = load_template(cfg)?;
    let words = checked_words(cfg, &t, texts, template_only)?;
    let d = orbit_strands(&t, &words).map_err(template_failure)?;
    Ok(svg::render(&d))
}

pub fn template_dump(cfg: &RunConfig) -> Result<String, Failure> {
    let d = match &cfg.template {
        TemplateSource::Builtin => hecke_description(cfg.k).map_err(template_failure)?,
        TemplateSource::Tdl(_) => load_template(cfg)?.description().clone(),
    };
    Ok(serialize(&d))
}

pub fn template_validate(path: &Path) -> Result<String, Failure> {
    let d = read_description(path)?;
    let t = hecke_template(d.k, Some(&d))
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    Ok(format!(
        "ok: {} (k = {}, {} ears, lens {})\n",
        t.name(),
        t.k(),
        t.ears().len(),
        d.lens
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..3").unwrap(), (-2, 3));
        assert_eq!(parse_range("1..=1").unwrap(), (1, 1));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a").is_err());
    }

    #[test]
    fn tables_align() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
