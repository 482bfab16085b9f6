//! On-disk cache of computed resolutions.
//!
//! One file per group, holding a small versioned header followed by the raw
//! bit-packed differential images. Round-trips are bit-exact. Entries are
//! keyed by (group key, element-order version, algorithm version, format
//! version); any mismatch or parse failure makes the loader report a miss so
//! the caller recomputes. Writers take a lock file per entry and publish via
//! an atomic rename, so concurrent readers only ever see complete files.

use holocoh::gf2::BitVec;
use holocoh::groups::Group;
use holocoh::resolution::{Limits, ModuleMap, Resolution};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

const MAGIC: &[u8; 6] = b"HCRES\0";
pub const FORMAT_VERSION: u32 = 1;
/// Bumped if the fixed element enumeration ever changes.
pub const ELEMENT_ORDER_VERSION: u32 = 1;
/// Bumped if the resolution algorithm's deterministic choices ever change.
pub const ALGORITHM_VERSION: u32 = 1;

pub fn entry_path(dir: &Path, group: &Group) -> PathBuf {
    let sanitized: String = group
        .spec()
        .key()
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect();
    dir.join(format!("{sanitized}.res"))
}

fn lock_path(entry: &Path) -> PathBuf {
    entry.with_extension("res.lock")
}

/// Exclusive writer lock for one cache entry; removed on drop.
struct EntryLock {
    path: PathBuf,
}

impl EntryLock {
    fn acquire(entry: &Path) -> Option<EntryLock> {
        let path = lock_path(entry);
        match fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&path)
        {
            Ok(_) => Some(EntryLock { path }),
            Err(_) => None,
        }
    }
}

impl Drop for EntryLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn push_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

struct Reader<'a> {
    data: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn bytes(&mut self, n: usize) -> Option<&'a [u8]> {
        let slice = self.data.get(self.at..self.at + n)?;
        self.at += n;
        Some(slice)
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.bytes(4)?.try_into().ok()?))
    }

    fn u64(&mut self) -> Option<u64> {
        Some(u64::from_le_bytes(self.bytes(8)?.try_into().ok()?))
    }
}

fn encode(res: &Resolution) -> Vec<u8> {
    let group = res.group();
    let key = group.spec().key();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    push_u32(&mut out, FORMAT_VERSION);
    push_u32(&mut out, ELEMENT_ORDER_VERSION);
    push_u32(&mut out, ALGORITHM_VERSION);
    push_u32(&mut out, key.len() as u32);
    out.extend_from_slice(key.as_bytes());
    push_u64(&mut out, group.order() as u64);
    push_u32(&mut out, res.max_degree() as u32);
    for n in 0..=res.max_degree() {
        push_u32(&mut out, res.rank(n) as u32);
    }
    for n in 1..=res.max_degree() {
        for image in &res.differential(n).images {
            for &w in image.words() {
                push_u64(&mut out, w);
            }
        }
    }
    out
}

fn decode(data: &[u8], group: &Arc<Group>, limits: Limits) -> Option<Resolution> {
    let mut r = Reader { data, at: 0 };
    if r.bytes(MAGIC.len())? != MAGIC {
        return None;
    }
    if r.u32()? != FORMAT_VERSION
        || r.u32()? != ELEMENT_ORDER_VERSION
        || r.u32()? != ALGORITHM_VERSION
    {
        return None;
    }
    let key_len = r.u32()? as usize;
    let key = std::str::from_utf8(r.bytes(key_len)?).ok()?;
    if key != group.spec().key() {
        return None;
    }
    let order = r.u64()? as usize;
    if order != group.order() {
        return None;
    }
    let max_degree = r.u32()? as usize;
    if max_degree > limits.max_degree {
        return None;
    }
    let mut ranks = Vec::with_capacity(max_degree + 1);
    for _ in 0..=max_degree {
        ranks.push(r.u32()? as usize);
    }
    if ranks.first() != Some(&1) {
        return None;
    }
    let mut diffs = Vec::with_capacity(max_degree);
    for n in 1..=max_degree {
        let tgt_rank = ranks[n - 1];
        let src_rank = ranks[n];
        let bits = tgt_rank * order;
        let words = bits.div_ceil(64);
        let mut images = Vec::with_capacity(src_rank);
        for _ in 0..src_rank {
            let mut ws = Vec::with_capacity(words);
            for _ in 0..words {
                ws.push(r.u64()?);
            }
            images.push(BitVec::from_words(bits, ws));
        }
        diffs.push(ModuleMap {
            src_rank,
            tgt_rank,
            images,
        });
    }
    if r.at != data.len() {
        return None;
    }
    Resolution::from_differentials(group, diffs, limits).ok()
}

/// Persists a resolution. Returns the entry path, or `None` when another
/// writer holds the entry lock (the cache is left untouched).
pub fn store(dir: &Path, res: &Resolution) -> io::Result<Option<PathBuf>> {
    fs::create_dir_all(dir)?;
    let entry = entry_path(dir, res.group());
    let Some(_lock) = EntryLock::acquire(&entry) else {
        return Ok(None);
    };
    let tmp = entry.with_extension("res.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(res))?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &entry)?;
    Ok(Some(entry))
}

/// Loads the cached resolution for `group`, if present, readable, and keyed
/// identically. Any corruption or version mismatch is a miss.
pub fn load(dir: &Path, group: &Arc<Group>, limits: Limits) -> Option<Resolution> {
    let entry = entry_path(dir, group);
    let mut data = Vec::new();
    fs::File::open(&entry).ok()?.read_to_end(&mut data).ok()?;
    decode(&data, group, limits)
}

#[derive(Debug)]
pub struct EntryInfo {
    pub file: PathBuf,
    pub key: String,
    pub max_degree: usize,
    pub ranks: Vec<usize>,
}

/// Header summaries of all parseable entries in the cache directory.
pub fn list(dir: &Path) -> Vec<EntryInfo> {
    let mut out = Vec::new();
    let Ok(entries) = fs::read_dir(dir) else {
        return out;
    };
    let mut files: Vec<PathBuf> = entries
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "res"))
        .collect();
    files.sort();
    for file in files {
        let Ok(data) = fs::read(&file) else { continue };
        let mut r = Reader { data: &data, at: 0 };
        let header = (|| {
            if r.bytes(MAGIC.len())? != MAGIC {
                return None;
            }
            let _versions = (r.u32()?, r.u32()?, r.u32()?);
            let key_len = r.u32()? as usize;
            let key = std::str::from_utf8(r.bytes(key_len)?).ok()?.to_string();
            let _order = r.u64()?;
            let max_degree = r.u32()? as usize;
            let mut ranks = Vec::with_capacity(max_degree + 1);
            for _ in 0..=max_degree {
                ranks.push(r.u32()? as usize);
            }
            Some((key, max_degree, ranks))
        })();
        if let Some((key, max_degree, ranks)) = header {
            out.push(EntryInfo {
                file,
                key,
                max_degree,
                ranks,
            });
        }
    }
    out
}

/// Removes all cache entries; returns how many files were deleted.
pub fn clear(dir: &Path) -> io::Result<usize> {
    let mut n = 0;
    if let Ok(entries) = fs::read_dir(dir) {
        for e in entries.flatten() {
            let p = e.path();
            if p.extension()
                .is_some_and(|x| x == "res" || x == "lock" || x == "tmp")
            {
                fs::remove_file(&p)?;
                n += 1;
            }
        }
    }
    Ok(n)
}
