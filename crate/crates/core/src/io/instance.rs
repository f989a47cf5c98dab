use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{disks_identical, Disk, Vec3};

/// Provenance of an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub generator: String,
    #[serde(default = "empty_object")]
    pub params: Value,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

impl Default for InstanceMeta {
    fn default() -> Self {
        InstanceMeta {
            generator: "manual".into(),
            params: empty_object(),
            seed: None,
        }
    }
}

/// A set of distinct unit disks.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub disks: Vec<Disk>,
    pub meta: InstanceMeta,
}

impl Instance {
    /// Validates pairwise distinctness.
    pub fn new(disks: Vec<Disk>, meta: InstanceMeta) -> Result<Self> {
        check_distinct(&disks)?;
        Ok(Instance { disks, meta })
    }

    /// Sort disks lexicographically by canonical normal.
    pub fn canonicalize(&mut self) {
        self.disks.sort_by(|a, b| cmp_normals(a.normal(), b.normal()));
    }
}

fn cmp_normals(a: Vec3, b: Vec3) -> std::cmp::Ordering {
    a.x.total_cmp(&b.x)
        .then(a.y.total_cmp(&b.y))
        .then(a.z.total_cmp(&b.z))
}

fn check_distinct(disks: &[Disk]) -> Result<()> {
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if disks_identical(&disks[i], &disks[j]) {
                return Err(Error::DuplicateDisk { first: i, second: j });
            }
        }
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    disks: Vec<Value>,
    #[serde(default)]
    meta: Option<InstanceMeta>,
}

/// Parse and validate an instance document. Disks keep document order.
pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_slice(bytes).map_err(|e| classify_json_error(bytes, &e))?;
    let mut disks = Vec::with_capacity(raw.disks.len());
    for (i, entry) in raw.disks.iter().enumerate() {
        let coords = entry
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Malformed(format!("disk {i} is not a 3-vector")))?;
        let mut v = [0.0; 3];
        for (slot, c) in v.iter_mut().zip(coords) {
            *slot = c
                .as_f64()
                .ok_or_else(|| Error::Malformed(format!("disk {i} has a non-numeric coordinate")))?;
        }
        let v = Vec3::from(v);
        if !v.is_finite() {
            return Err(Error::NonFinite(i));
        }
        if v.norm_squared() == 0.0 {
            return Err(Error::ZeroVector(i));
        }
        disks.push(Disk::new(v)?);
    }
    Instance::new(disks, raw.meta.unwrap_or_default())
}

/// JSON has no literal for non-finite numbers; a parse failure at such a
/// token (or at an overflowing number) is reported as non-finite input.
fn classify_json_error(bytes: &[u8], e: &serde_json::Error) -> Error {
    let text = String::from_utf8_lossy(bytes);
    if let Some(pos) = error_offset(&text, e.line(), e.column()) {
        let token: String = text[pos..]
            .chars()
            .take_while(|c| c.is_alphanumeric() || matches!(c, '.' | '+' | '-'))
            .collect();
        // An overflowing number is reported at its last character.
        let numeric = |c: char| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-');
        let back = text[..pos].rfind(|c: char| !numeric(c)).map_or(0, |k| k + 1);
        let end = text[pos..].find(|c: char| !numeric(c)).map_or(text.len(), |k| pos + k);
        let number = &text[back..end];
        let overflow = number.parse::<f64>().is_ok_and(|x| x.is_infinite());
        let keyword = ["NaN", "Infinity", "-Infinity", "inf", "-inf", "nan"]
            .iter()
            .any(|k| token.eq_ignore_ascii_case(k));
        if keyword || overflow {
            let start = if overflow { back } else { pos };
            return Error::NonFinite(entry_index(&text, start));
        }
    }
    Error::Malformed(e.to_string())
}

/// Byte offset of a 1-based (line, column) pair, pointing at the offending
/// character.
fn error_offset(text: &str, line: usize, column: usize) -> Option<usize> {
    if line == 0 {
        return None;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    let pos = start + column.saturating_sub(1);
    (pos <= text.len()).then_some(pos)
}

/// Index of the disk entry containing byte `pos`: the number of entries
/// closed before it within the `disks` array.
fn entry_index(text: &str, pos: usize) -> usize {
    let Some(key) = text.find("\"disks\"") else { return 0 };
    let Some(open) = text[key..].find('[').map(|k| key + k) else { return 0 };
    if pos <= open {
        return 0;
    }
    text[open + 1..pos].matches(']').count()
}

fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite number")
}

/// Canonical document: disks sorted, one per line, shortest round-trip
/// decimals, compact metadata with sorted keys.
pub fn write_instance(instance: &Instance) -> Vec<u8> {
    let mut disks = instance.disks.clone();
    disks.sort_by(|a, b| cmp_normals(a.normal(), b.normal()));
    let mut out = String::from("{\n  \"disks\": [");
    for (k, d) in disks.iter().enumerate() {
        let n = d.normal();
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        out.push_str(&format!("    [{}, {}, {}]", number(n.x), number(n.y), number(n.z)));
    }
    out.push_str(if disks.is_empty() { "],\n" } else { "\n  ],\n" });
    let meta = serde_json::to_string(&instance.meta).expect("metadata serializes");
    out.push_str(&format!("  \"meta\": {meta}\n}}\n"));
    out.into_bytes()
}
