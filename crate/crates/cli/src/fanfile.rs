//! Text format for fan descriptions and the bundled example corpus.
//!
//! A fan file is UTF-8 text with `key: value` lines and bracketed integer
//! lists. All indices are 1-based. `#` starts a comment. Example:
//!
//! ```text
//! name: a1
//! points: [1 0 1] [0 1 1] [0 0 1] [0 2 1]
//! rays: [1 3 4]
//! cones: [1 3 4]
//! pbasis: [0 1 0 0]            # optional parameter-basis hint rows
//! brane: [3 4] 0               # edge, framing, optional `cone <index>`
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use octc_core::fan::ExtendedStackyFan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraneSpec {
    /// 0-based edge endpoints.
    pub edge: (usize, usize),
    pub framing: i64,
    /// 0-based primary-cone index, required for inner branes.
    pub cone: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct FanFile {
    pub name: String,
    pub fan: ExtendedStackyFan,
    /// Optional parameter-basis hint rows of length R.
    pub pbasis: Option<Vec<Vec<i64>>>,
    pub branes: Vec<BraneSpec>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse a run of bracketed integer lists: `[1 0 1] [0 1 1]`. Commas are
/// treated as whitespace. Returns the lists and any trailing bare tokens.
fn bracket_lists(text: &str) -> Result<(Vec<Vec<i64>>, Vec<String>), String> {
    let cleaned = text.replace(',', " ");
    let mut lists = vec![];
    let mut tail = vec![];
    let mut current: Option<Vec<i64>> = None;
    for raw in cleaned.split_whitespace() {
        let mut tok = raw;
        while let Some(rest) = tok.strip_prefix('[') {
            if current.is_some() {
                return Err("nested '[' in integer list".into());
            }
            current = Some(vec![]);
            tok = rest;
        }
        let mut closes = 0;
        while let Some(rest) = tok.strip_suffix(']') {
            closes += 1;
            tok = rest;
        }
        if !tok.is_empty() {
            match &mut current {
                Some(list) => list.push(
                    tok.parse::<i64>().map_err(|_| format!("bad integer '{}'", tok))?,
                ),
                None => tail.push(tok.to_string()),
            }
        }
        for _ in 0..closes {
            match current.take() {
                Some(list) => lists.push(list),
                None => return Err("unmatched ']' in integer list".into()),
            }
        }
    }
    if current.is_some() {
        return Err("unterminated '[' in integer list".into());
    }
    Ok((lists, tail))
}

fn one_based(v: i64, r: usize, what: &str) -> Result<usize, String> {
    if v < 1 || v as usize > r {
        return Err(format!("{} index {} out of range 1..{}", what, v, r));
    }
    Ok(v as usize - 1)
}

pub fn parse(text: &str) -> Result<FanFile, String> {
    let mut name = None;
    let mut points: Vec<[i64; 3]> = vec![];
    let mut rays: Vec<i64> = vec![];
    let mut cones: Vec<Vec<i64>> = vec![];
    let mut pbasis: Vec<Vec<i64>> = vec![];
    let mut branes_raw: Vec<(Vec<i64>, Vec<String>)> = vec![];
    for (lno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(format!("line {}: expected 'key: value'", lno + 1));
        };
        let err = |m: String| format!("line {}: {}", lno + 1, m);
        match key.trim() {
            "name" => name = Some(rest.trim().to_string()),
            "points" => {
                let (lists, tail) = bracket_lists(rest).map_err(err)?;
                if !tail.is_empty() {
                    return Err(err(format!("stray token '{}'", tail[0])));
                }
                for l in lists {
                    let [a, b, c] = l[..] else {
                        return Err(err("each point needs three coordinates".into()));
                    };
                    points.push([a, b, c]);
                }
            }
            "rays" => {
                let (lists, _) = bracket_lists(rest).map_err(err)?;
                for l in lists {
                    rays.extend(l);
                }
            }
            "cones" => {
                let (lists, tail) = bracket_lists(rest).map_err(err)?;
                if !tail.is_empty() {
                    return Err(err(format!("stray token '{}'", tail[0])));
                }
                cones.extend(lists);
            }
            "pbasis" => {
                let (lists, _) = bracket_lists(rest).map_err(err)?;
                pbasis.extend(lists);
            }
            "brane" => {
                let (lists, tail) = bracket_lists(rest).map_err(err)?;
                if lists.len() != 1 || lists[0].len() != 2 {
                    return Err(err("brane needs one [i j] edge list".into()));
                }
                branes_raw.push((lists[0].clone(), tail));
            }
            other => return Err(format!("line {}: unknown key '{}'", lno + 1, other)),
        }
    }
    let name = name.ok_or_else(|| "missing 'name:' field".to_string())?;
    if points.is_empty() {
        return Err("missing 'points:' field".into());
    }
    let r = points.len();
    let mut ray_set = BTreeSet::new();
    for v in rays {
        ray_set.insert(one_based(v, r, "ray")?);
    }
    if ray_set.is_empty() {
        return Err("missing 'rays:' field".into());
    }
    let mut cone_triples = vec![];
    for c in cones {
        let [a, b, cc] = c[..] else {
            return Err("each cone needs three vertex indices".into());
        };
        cone_triples.push([
            one_based(a, r, "cone vertex")?,
            one_based(b, r, "cone vertex")?,
            one_based(cc, r, "cone vertex")?,
        ]);
    }
    if cone_triples.is_empty() {
        return Err("missing 'cones:' field".into());
    }
    for row in &pbasis {
        if row.len() != r {
            return Err(format!("pbasis hint rows must have length {}", r));
        }
    }
    let mut branes = vec![];
    for (edge, tail) in branes_raw {
        let e = (one_based(edge[0], r, "edge")?, one_based(edge[1], r, "edge")?);
        let mut framing = None;
        let mut cone = None;
        let mut it = tail.iter();
        while let Some(tok) = it.next() {
            if tok == "cone" {
                let Some(v) = it.next() else {
                    return Err("brane 'cone' needs an index".into());
                };
                let v: i64 =
                    v.parse().map_err(|_| format!("bad cone index '{}'", v))?;
                cone = Some(one_based(v, usize::MAX, "cone")?);
            } else if framing.is_none() {
                framing = Some(
                    tok.parse::<i64>().map_err(|_| format!("bad framing '{}'", tok))?,
                );
            } else {
                return Err(format!("stray brane token '{}'", tok));
            }
        }
        branes.push(BraneSpec { edge: e, framing: framing.unwrap_or(0), cone });
    }
    let fan = ExtendedStackyFan::new(points, ray_set, cone_triples);
    Ok(FanFile { name, fan, pbasis: if pbasis.is_empty() { None } else { Some(pbasis) }, branes })
}

/// Render a fan (plus optional branes) back into the file format.
pub fn render(name: &str, fan: &ExtendedStackyFan, branes: &[BraneSpec]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", name);
    let pts: Vec<String> = fan
        .points
        .iter()
        .map(|p| format!("[{} {} {}]", p[0], p[1], p[2]))
        .collect();
    let _ = writeln!(out, "points: {}", pts.join(" "));
    let rays: Vec<String> = fan.rays.iter().map(|i| (i + 1).to_string()).collect();
    let _ = writeln!(out, "rays: [{}]", rays.join(" "));
    let cones: Vec<String> = fan
        .cones
        .iter()
        .map(|c| format!("[{} {} {}]", c[0] + 1, c[1] + 1, c[2] + 1))
        .collect();
    let _ = writeln!(out, "cones: {}", cones.join(" "));
    for b in branes {
        let mut line = format!("brane: [{} {}] {}", b.edge.0 + 1, b.edge.1 + 1, b.framing);
        if let Some(c) = b.cone {
            let _ = write!(line, " cone {}", c + 1);
        }
        let _ = writeln!(out, "{}", line);
    }
    out
}

/// The bundled corpus, in the documented file format.
pub const CORPUS: &[(&str, &str)] = &[
    ("c3", include_str!("../fixtures/c3.fan")),
    ("a1", include_str!("../fixtures/a1.fan")),
    ("kp1o", include_str!("../fixtures/kp1o.fan")),
    ("a1p", include_str!("../fixtures/a1p.fan")),
    ("a1pres", include_str!("../fixtures/a1pres.fan")),
    ("a2", include_str!("../fixtures/a2.fan")),
    ("a2res", include_str!("../fixtures/a2res.fan")),
    ("c3z3", include_str!("../fixtures/c3z3.fan")),
    ("kp2", include_str!("../fixtures/kp2.fan")),
    ("flop_plus", include_str!("../fixtures/flop_plus.fan")),
    ("flop_minus", include_str!("../fixtures/flop_minus.fan")),
    ("case1_plus", include_str!("../fixtures/case1_plus.fan")),
    ("case1_minus", include_str!("../fixtures/case1_minus.fan")),
];

pub fn corpus_text(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
