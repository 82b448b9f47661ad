//! Serialized tables and the on-disk cache.
//!
//! A JSON-lines table starts with one header record and continues with one
//! record per nonzero constant:
//!
//! ```text
//! {"record":"header","type":"B4","assoc":[2,4],"notation":"word","convention":"ordered","engine_version":"0.1.0"}
//! {"u":"s2","v":"s2","w":"s1 s2","c":1,"bk":1,"star0":1}
//! ```
//!
//! The CSV form carries the same header as a `#`-prefixed JSON line followed
//! by the columns `u,v,w,c,bk,star0`.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::deform::{Convention, Deformation, DeformedEntry};
use crate::error::{Error, Result};
use crate::notation::{format_element, parse_element, Notation, WindowConvention};
use crate::rootsys::{CartanType, SimpleSet};
use crate::schubert::{Entry, FlagVariety, StructureConstantTable};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Bumped whenever the cache layout or the engine output changes.
pub const CACHE_FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHeader {
    pub record: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub assoc: Vec<usize>,
    pub notation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    pub convention: Convention,
    pub engine_version: String,
}

impl TableHeader {
    pub fn new(d: &Deformation, notation: Notation, convention: Convention) -> Self {
        let ct = d.variety().cartan_type();
        TableHeader {
            record: "header".into(),
            cartan_type: ct.to_string(),
            assoc: d.quotient().assoc().one_based(),
            notation: notation.to_string(),
            window: (notation == Notation::Window)
                .then(|| WindowConvention::DEFAULT.describe(ct.family()).to_string()),
            convention,
            engine_version: ENGINE_VERSION.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub u: String,
    pub v: String,
    pub w: String,
    pub c: u64,
    pub bk: u64,
    pub star0: u64,
}

/// Entries in output order: sorted by `(u, v, w)` index, over ordered or
/// unordered pairs.
pub fn entries_for(d: &Deformation, convention: Convention) -> Vec<DeformedEntry> {
    let mut out = d.deformed_entries();
    if convention == Convention::Ordered {
        let swapped: Vec<DeformedEntry> = out
            .iter()
            .filter(|e| e.u != e.v)
            .map(|e| DeformedEntry {
                u: e.v,
                v: e.u,
                ..*e
            })
            .collect();
        out.extend(swapped);
    }
    out.sort();
    out
}

pub fn table_records(
    d: &Deformation,
    notation: Notation,
    convention: Convention,
) -> Result<Vec<TableRecord>> {
    let q = d.quotient();
    let rs = q.root_system();
    let names: Vec<String> = q
        .elements()
        .iter()
        .map(|w| format_element(rs, w, notation))
        .collect::<Result<_>>()?;
    Ok(entries_for(d, convention)
        .into_iter()
        .map(|e| TableRecord {
            u: names[e.u as usize].clone(),
            v: names[e.v as usize].clone(),
            w: names[e.w as usize].clone(),
            c: e.c,
            bk: e.bk,
            star0: e.star0,
        })
        .collect())
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Io(e.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_jsonl<W: Write + ?Sized>(
    out: &mut W,
    header: &TableHeader,
    records: &[TableRecord],
) -> Result<()> {
    serde_json::to_writer(&mut *out, header).map_err(json_err)?;
    writeln!(out)?;
    for r in records {
        serde_json::to_writer(&mut *out, r).map_err(json_err)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_csv<W: Write + ?Sized>(
    out: &mut W,
    header: &TableHeader,
    records: &[TableRecord],
) -> Result<()> {
    write!(out, "# ")?;
    serde_json::to_writer(&mut *out, header).map_err(json_err)?;
    writeln!(out)?;
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<(TableHeader, Vec<TableRecord>)> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Io("empty table".into()))??;
    let header: TableHeader = serde_json::from_str(&first).map_err(json_err)?;
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            records.push(serde_json::from_str(&line).map_err(json_err)?);
        }
    }
    Ok((header, records))
}

pub fn read_csv<R: BufRead>(mut input: R) -> Result<(TableHeader, Vec<TableRecord>)> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let json = first
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| Error::Io("missing CSV header line".into()))?;
    let header: TableHeader = serde_json::from_str(json.trim()).map_err(json_err)?;
    let mut r = csv::Reader::from_reader(input);
    let records = r
        .deserialize()
        .collect::<std::result::Result<Vec<TableRecord>, _>>()
        .map_err(csv_err)?;
    Ok((header, records))
}

/// Parse records back to quotient indices of `d`.
pub fn resolve_records(d: &Deformation, records: &[TableRecord]) -> Result<Vec<DeformedEntry>> {
    let q = d.quotient();
    let rs = q.root_system();
    let idx = |s: &str| -> Result<u32> { Ok(q.require_index(&parse_element(rs, s)?)? as u32) };
    records
        .iter()
        .map(|r| {
            Ok(DeformedEntry {
                u: idx(&r.u)?,
                v: idx(&r.v)?,
                w: idx(&r.w)?,
                c: r.c,
                bk: r.bk,
                star0: r.star0,
            })
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    engine_version: String,
    #[serde(rename = "type")]
    cartan_type: CartanType,
    levi: Vec<usize>,
    ambient: Vec<usize>,
    size: usize,
    entries: Vec<(u32, u32, u32, u64)>,
}

/// Directory of cached cup tables, one file per flag variety.
#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        TableCache {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    pub fn path_for(&self, fv: &FlagVariety) -> PathBuf {
        let q = fv.quotient();
        let set = |s: SimpleSet| {
            s.one_based()
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("_")
        };
        self.dir.join(format!(
            "{}-assoc{}-amb{}.json",
            fv.cartan_type(),
            set(q.assoc()),
            set(q.ambient())
        ))
    }

    fn load(
        &self,
        fv: &FlagVariety,
        path: &Path,
    ) -> std::result::Result<StructureConstantTable, String> {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let q = fv.quotient();
        if file.format != CACHE_FORMAT || file.engine_version != ENGINE_VERSION {
            return Err(format!(
                "stale cache (format {}, engine {})",
                file.format, file.engine_version
            ));
        }
        if file.cartan_type != fv.cartan_type()
            || file.levi != q.levi().one_based()
            || file.ambient != q.ambient().one_based()
            || file.size != q.len()
        {
            return Err("cache describes a different flag variety".into());
        }
        let entries = file
            .entries
            .into_iter()
            .map(|(u, v, w, c)| Entry { u, v, w, c })
            .collect();
        StructureConstantTable::from_entries(q.clone(), entries).map_err(|e| e.to_string())
    }

    /// Cached table, rebuilding (and rewriting) missing or stale files.
    pub fn load_or_build(
        &self,
        fv: &FlagVariety,
        mut log: impl FnMut(&str),
    ) -> Result<Arc<StructureConstantTable>> {
        let path = self.path_for(fv);
        if path.exists() {
            match self.load(fv, &path) {
                Ok(t) => {
                    log(&format!("loaded cached table {}", path.display()));
                    return Ok(Arc::new(t));
                }
                Err(why) => log(&format!("rebuilding {}: {why}", path.display())),
            }
        }
        let table = fv.full_table()?;
        let q = fv.quotient();
        let file = CacheFile {
            format: CACHE_FORMAT,
            engine_version: ENGINE_VERSION.into(),
            cartan_type: fv.cartan_type(),
            levi: q.levi().one_based(),
            ambient: q.ambient().one_based(),
            size: q.len(),
            entries: table
                .entries()
                .iter()
                .map(|e| (e.u, e.v, e.w, e.c))
                .collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&file).map_err(json_err)?)?;
        fs::rename(&tmp, &path)?;
        log(&format!("wrote cache {}", path.display()));
        Ok(Arc::new(table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deform(t: &str, a: &str) -> Deformation {
        Deformation::new(FlagVariety::parse(t, a).unwrap()).unwrap()
    }

    #[test]
    fn jsonl_round_trip() {
        let d = deform("B3", "1,3");
        for notation in [Notation::Word, Notation::Window] {
            for conv in [Convention::Ordered, Convention::Unordered] {
                let header = TableHeader::new(&d, notation, conv);
                let recs = table_records(&d, notation, conv).unwrap();
                let mut buf = Vec::new();
                write_jsonl(&mut buf, &header, &recs).unwrap();
                let (h, r) = read_jsonl(&buf[..]).unwrap();
                assert_eq!(h, header);
                assert_eq!(r, recs);
                assert_eq!(resolve_records(&d, &r).unwrap(), entries_for(&d, conv));
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let d = deform("A3", "2");
        let header = TableHeader::new(&d, Notation::Word, Convention::Ordered);
        let recs = table_records(&d, Notation::Word, Convention::Ordered).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &header, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().nth(1).unwrap() == "u,v,w,c,bk,star0");
        let (h, r) = read_csv(&buf[..]).unwrap();
        assert_eq!(h, header);
        assert_eq!(r, recs);
    }

    #[test]
    fn header_shape() {
        let d = deform("B4", "2,4");
        let h = TableHeader::new(&d, Notation::Word, Convention::Ordered);
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["type"], "B4");
        assert_eq!(v["assoc"], serde_json::json!([2, 4]));
        assert_eq!(v["convention"], "ordered");
        assert!(v.get("window").is_none());
    }

    #[test]
    fn cache_reuse_and_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let fv = FlagVariety::parse("B3", "2").unwrap();
        let mut log = Vec::new();
        let a = cache
            .load_or_build(&fv, |m| log.push(m.to_string()))
            .unwrap();
        let b = cache
            .load_or_build(&fv, |m| log.push(m.to_string()))
            .unwrap();
        assert_eq!(a.entries(), b.entries());
        assert!(log[0].starts_with("wrote"));
        assert!(log[1].starts_with("loaded"));

        let path = cache.path_for(&fv);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("\"format\":1", "\"format\":0")).unwrap();
        log.clear();
        let c = cache
            .load_or_build(&fv, |m| log.push(m.to_string()))
            .unwrap();
        assert_eq!(a.entries(), c.entries());
        assert!(log[0].starts_with("rebuilding"));
    }
}
