//! Text format for verification suites. One entry per line:
//!
//! ```text
//! # comment
//! default
//! module ideal = "x1*x2, x3" i = 2 window = -8:4 box = 9 m = 3
//! pattern m = 2 window = -6:3 nonzero = -6,-5 zero = 0,1 complete_above
//! ```
//!
//! `default` splices in the built-in suite. `box` and `m` are optional on
//! `module` lines; `pattern` lines declare degree statuses by hand, with
//! undeclared degrees treated as boundary (uncertified).

use gradedlc_core::cech::{BoxBounds, MonomialIdeal};
use gradedlc_core::checks::{DegreePattern, DegreeStatus, SuiteConfig, SuiteEntry};

pub fn parse_suite(text: &str) -> Result<SuiteConfig, String> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| format!("suite config line {}: {}", idx + 1, msg);
        if line == "default" {
            entries.extend(SuiteConfig::default_suite().entries);
            continue;
        }
        let (kind, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| at(format!("`{line}` is not `default`, `module ...`, or `pattern ...`")))?;
        let fields = Fields::parse(rest).map_err(&at)?;
        let entry = match kind {
            "module" => module_entry(fields).map_err(&at)?,
            "pattern" => pattern_entry(fields).map_err(&at)?,
            other => return Err(at(format!("unknown entry kind `{other}`"))),
        };
        entries.push(entry);
    }
    Ok(SuiteConfig { entries })
}

pub fn window_spec(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| format!("window `{text}` is not of the form LO:HI"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("window {lo}:{hi} is empty"));
    }
    Ok((lo, hi))
}

fn module_entry(mut fields: Fields) -> Result<SuiteEntry, String> {
    let ideal_text = fields.take("ideal")?.ok_or("module entries need `ideal = \"...\"`")?;
    let index: usize = fields.take_parsed("i")?.ok_or("module entries need `i = N`")?;
    let window = fields.take("window")?.ok_or("module entries need `window = LO:HI`")?;
    let (lo, hi) = window_spec(&window)?;
    let m_override: Option<usize> = fields.take_parsed("m")?;
    let box_radius: Option<i64> = fields.take_parsed("box")?;
    fields.finish()?;
    let ideal = MonomialIdeal::parse(&ideal_text, m_override).map_err(|e| e.to_string())?;
    let bounds = match box_radius {
        Some(b) => Some(BoxBounds::uniform(ideal.m(), b).map_err(|e| e.to_string())?),
        None => None,
    };
    Ok(SuiteEntry::Module { ideal, index, lo, hi, bounds })
}

fn pattern_entry(mut fields: Fields) -> Result<SuiteEntry, String> {
    let m: usize = fields.take_parsed("m")?.ok_or("pattern entries need `m = N`")?;
    if m == 0 {
        return Err("pattern entries need m >= 1".into());
    }
    let window = fields.take("window")?.ok_or("pattern entries need `window = LO:HI`")?;
    let (lo, hi) = window_spec(&window)?;
    let nonzero = fields.take_degree_list("nonzero")?;
    let zero = fields.take_degree_list("zero")?;
    let complete_below = fields.take_flag("complete_below")?;
    let complete_above = fields.take_flag("complete_above")?;
    fields.finish()?;

    let mut statuses = vec![DegreeStatus::Boundary; (hi - lo + 1) as usize];
    let slot = |n: i64| -> Result<usize, String> {
        if n < lo || n > hi {
            return Err(format!("degree {n} lies outside window {lo}:{hi}"));
        }
        Ok((n - lo) as usize)
    };
    for n in nonzero {
        // Declared, not computed: no multidegree witness to record.
        statuses[slot(n)?] = DegreeStatus::Nonzero { witness: Vec::new(), dim: 1 };
    }
    for n in zero {
        let k = slot(n)?;
        if matches!(statuses[k], DegreeStatus::Nonzero { .. }) {
            return Err(format!("degree {n} declared both nonzero and zero"));
        }
        statuses[k] = DegreeStatus::Zero;
    }
    let mut pattern = DegreePattern::new(lo, statuses);
    pattern.complete_below = complete_below;
    pattern.complete_above = complete_above;
    Ok(SuiteEntry::Pattern { m, pattern })
}

/// `key = value` pairs plus bare flags, with values either quoted or a
/// single whitespace-free token.
struct Fields {
    pairs: Vec<(String, Option<String>)>,
}

impl Fields {
    fn parse(text: &str) -> Result<Fields, String> {
        let mut pairs = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(k, c)) = chars.peek() {
                if c.is_whitespace() || c == '=' {
                    break;
                }
                end = k + c.len_utf8();
                chars.next();
            }
            let key = text[start..end].to_string();
            if key.is_empty() {
                return Err(format!("unexpected `{c}`"));
            }
            while matches!(chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
                chars.next();
            }
            if !matches!(chars.peek(), Some(&(_, '='))) {
                pairs.push((key, None));
                continue;
            }
            chars.next();
            while matches!(chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
                chars.next();
            }
            let value = match chars.peek() {
                Some(&(vstart, '"')) => {
                    chars.next();
                    let mut vend = None;
                    for (k, c) in chars.by_ref() {
                        if c == '"' {
                            vend = Some(k);
                            break;
                        }
                    }
                    let vend = vend.ok_or_else(|| format!("unterminated quote after `{key} =`"))?;
                    text[vstart + 1..vend].to_string()
                }
                Some(&(vstart, _)) => {
                    let mut vend = vstart;
                    while let Some(&(k, c)) = chars.peek() {
                        if c.is_whitespace() {
                            break;
                        }
                        vend = k + c.len_utf8();
                        chars.next();
                    }
                    text[vstart..vend].to_string()
                }
                None => return Err(format!("missing value after `{key} =`")),
            };
            pairs.push((key, Some(value)));
        }
        Ok(Fields { pairs })
    }

    fn take(&mut self, key: &str) -> Result<Option<String>, String> {
        let mut found = None;
        let mut keep = Vec::new();
        for (k, v) in self.pairs.drain(..) {
            if k == key {
                if found.is_some() {
                    return Err(format!("`{key}` given twice"));
                }
                match v {
                    Some(v) => found = Some(v),
                    None => return Err(format!("`{key}` needs a value")),
                }
            } else {
                keep.push((k, v));
            }
        }
        self.pairs = keep;
        Ok(found)
    }

    fn take_parsed<T: core::str::FromStr>(&mut self, key: &str) -> Result<Option<T>, String> {
        match self.take(key)? {
            Some(v) => v
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| format!("cannot parse `{key} = {v}`")),
            None => Ok(None),
        }
    }

    fn take_degree_list(&mut self, key: &str) -> Result<Vec<i64>, String> {
        match self.take(key)? {
            Some(v) => v
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| format!("bad degree `{t}` in `{key}`")))
                .collect(),
            None => Ok(Vec::new()),
        }
    }

    fn take_flag(&mut self, key: &str) -> Result<bool, String> {
        let mut found = false;
        let mut keep = Vec::new();
        for (k, v) in self.pairs.drain(..) {
            if k == key {
                if v.is_some() {
                    return Err(format!("`{key}` is a flag and takes no value"));
                }
                found = true;
            } else {
                keep.push((k, v));
            }
        }
        self.pairs = keep;
        Ok(found)
    }

    fn finish(self) -> Result<(), String> {
        match self.pairs.first() {
            Some((k, _)) => Err(format!("unknown field `{k}`")),
            None => Ok(()),
        }
    }
}
