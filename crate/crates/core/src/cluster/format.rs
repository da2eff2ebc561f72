//! Line-based text format for configurations.
//!
//! ```text
//! field: t^2+1
//! point q1 origin=(0:0:1)
//! point q2 parent=q1 chart=1 c=a
//! point q3 parent=q2 chart=2
//! dicritical q3
//! proximate q3 q1
//! ```
//!
//! Blank lines and text after `#` are ignored. The `field:` line is optional
//! (default Q) and must precede any element. `dicritical` may appear several
//! times; together the lines list exactly the dicritical points.

use super::{ClusterError, Configuration, InfinitelyNearPoint, Location};
use crate::numfield::Field;
use crate::parse::{parse_element, parse_minpoly};

fn err(line: usize, msg: impl Into<String>) -> ClusterError {
    ClusterError::Parse { line, msg: msg.into() }
}

/// Parses a configuration. When `field` is given, a `field:` line in the text
/// must agree with it.
pub fn parse_configuration(text: &str, field: Option<&Field>) -> Result<Configuration, ClusterError> {
    let mut k = field.cloned();
    let mut points: Vec<InfinitelyNearPoint> = Vec::new();
    let mut dicritical: Vec<(usize, String)> = Vec::new();
    let mut assertions: Vec<(usize, String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field:") {
            let mp = parse_minpoly(rest.trim()).map_err(|e| err(line_no, e.to_string()))?;
            let declared = Field::new(mp);
            match &k {
                Some(f) if f != &declared => {
                    return Err(err(line_no, "field declaration disagrees with the field in use"));
                }
                _ => k = Some(declared),
            }
            continue;
        }
        let field = k.get_or_insert_with(Field::rationals).clone();
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "point" => {
                let id = words
                    .next()
                    .ok_or_else(|| err(line_no, "missing point id"))?
                    .to_string();
                let mut origin = None;
                let mut parent = None;
                let mut chart = None;
                let mut c = None;
                for w in words {
                    let (key, val) = w
                        .split_once('=')
                        .ok_or_else(|| err(line_no, format!("expected key=value, got '{w}'")))?;
                    match key {
                        "origin" => {
                            let inner = val
                                .strip_prefix('(')
                                .and_then(|v| v.strip_suffix(')'))
                                .ok_or_else(|| err(line_no, "origin must be (x:y:z)"))?;
                            let parts: Vec<&str> = inner.split(':').collect();
                            if parts.len() != 3 {
                                return Err(err(line_no, "origin must have three coordinates"));
                            }
                            let mut coords = Vec::new();
                            for p in parts {
                                coords.push(parse_element(p, &field).map_err(|e| err(line_no, e.to_string()))?);
                            }
                            origin = Some([coords[0].clone(), coords[1].clone(), coords[2].clone()]);
                        }
                        "parent" => {
                            let idx = points
                                .iter()
                                .position(|p| p.id == val)
                                .ok_or_else(|| err(line_no, format!("unknown parent '{val}'")))?;
                            parent = Some(idx);
                        }
                        "chart" => {
                            chart = Some(match val {
                                "1" => 1,
                                "2" => 2,
                                _ => return Err(err(line_no, "chart must be 1 or 2")),
                            })
                        }
                        "c" => c = Some(parse_element(val, &field).map_err(|e| err(line_no, e.to_string()))?),
                        _ => return Err(err(line_no, format!("unknown key '{key}'"))),
                    }
                }
                let location = match (origin, parent, chart) {
                    (Some(o), None, None) if c.is_none() => Location::Root(o),
                    (None, Some(_), Some(1)) => Location::Chart1(c.unwrap_or_else(|| field.zero())),
                    (None, Some(_), Some(2)) => {
                        if c.as_ref().is_some_and(|c| !c.is_zero()) {
                            return Err(err(line_no, "chart 2 points carry no coordinate"));
                        }
                        Location::Chart2
                    }
                    _ => return Err(err(line_no, "a point needs either origin= or parent= with chart=")),
                };
                points.push(InfinitelyNearPoint {
                    id,
                    parent,
                    location,
                    dicritical: false,
                });
            }
            "dicritical" => dicritical.extend(words.map(|w| (line_no, w.to_string()))),
            "proximate" => {
                let a = words.next().ok_or_else(|| err(line_no, "proximate needs two ids"))?;
                let b = words.next().ok_or_else(|| err(line_no, "proximate needs two ids"))?;
                if words.next().is_some() {
                    return Err(err(line_no, "proximate takes exactly two ids"));
                }
                assertions.push((line_no, a.to_string(), b.to_string()));
            }
            other => return Err(err(line_no, format!("unknown directive '{other}'"))),
        }
    }
    for (line_no, id) in dicritical {
        let p = points
            .iter_mut()
            .find(|p| p.id == id)
            .ok_or_else(|| err(line_no, format!("unknown point '{id}'")))?;
        p.dicritical = true;
    }
    let config = Configuration::new(k.unwrap_or_else(Field::rationals), points)?;
    for (_, a, b) in assertions {
        let ia = config
            .index_of(&a)
            .ok_or_else(|| ClusterError::UnknownPoint(a.clone()))?;
        let ib = config
            .index_of(&b)
            .ok_or_else(|| ClusterError::UnknownPoint(b.clone()))?;
        if !config.is_proximate(ia, ib) {
            return Err(ClusterError::ProximityMismatch(format!("{a} {b}")));
        }
    }
    Ok(config)
}

/// Writes a configuration, including every non-parent proximity as an
/// assertion so that a reload cross-checks the tree.
pub fn write_configuration(config: &Configuration) -> String {
    let mut out = String::new();
    if !config.field().is_rationals() {
        out.push_str(&format!("field: {}\n", config.field().minimal_polynomial()));
    }
    for p in config.points() {
        match &p.location {
            Location::Root([x, y, z]) => out.push_str(&format!("point {} origin=({x}:{y}:{z})\n", p.id)),
            Location::Chart1(c) => out.push_str(&format!(
                "point {} parent={} chart=1 c={c}\n",
                p.id,
                config.point(p.parent.unwrap()).id
            )),
            Location::Chart2 => out.push_str(&format!(
                "point {} parent={} chart=2\n",
                p.id,
                config.point(p.parent.unwrap()).id
            )),
        }
    }
    let dic: Vec<&str> = config
        .dicritical()
        .iter()
        .map(|&i| config.point(i).id.as_str())
        .collect();
    out.push_str(&format!("dicritical {}\n", dic.join(" ")));
    for i in 0..config.len() {
        for &q in config.proximate_to(i) {
            if Some(q) != config.point(i).parent {
                out.push_str(&format!("proximate {} {}\n", config.point(i).id, config.point(q).id));
            }
        }
    }
    out
}
