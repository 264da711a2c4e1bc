//! Binary cache files for enumerated groups.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic      8 bytes  "BVGROUP1"
//! level      u32
//! order      u64
//! ngens      u32
//! per generator: label length u16, label bytes, 3·level u16 codes
//! body       order × (3·level u16 codes), sorted by canonical encoding
//! ```
//!
//! Sorting makes the file independent of enumeration order. A loaded group
//! keeps the sorted order for its indices.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::band::{read_blocks, write_blocks, GroupElement};
use crate::error::{Error, Result};
use crate::groups::{generator_fingerprint, EnumeratedGroup, Generator};

const MAGIC: &[u8; 8] = b"BVGROUP1";

pub fn write_group(group: &EnumeratedGroup, mut w: impl Write) -> Result<()> {
    let k = group.level();
    let mut head = Vec::new();
    head.extend_from_slice(MAGIC);
    head.extend_from_slice(&(k as u32).to_le_bytes());
    head.extend_from_slice(&(group.order() as u64).to_le_bytes());
    head.extend_from_slice(&(group.generators().len() as u32).to_le_bytes());
    for g in group.generators() {
        head.extend_from_slice(&(g.label.len() as u16).to_le_bytes());
        head.extend_from_slice(g.label.as_bytes());
        write_blocks(g.element.diags(), &mut head);
    }
    w.write_all(&head)?;
    let mut body = Vec::with_capacity(6 * k);
    for e in group.sorted_elements() {
        body.clear();
        write_blocks(e, &mut body);
        w.write_all(&body)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_group(mut r: impl Read) -> Result<EnumeratedGroup> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let k = read_u32(&mut r)? as usize;
    let order = read_u64(&mut r)? as usize;
    let ngens = read_u32(&mut r)? as usize;
    if k == 0 {
        return Err(Error::ZeroLevel);
    }
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        let mut len = [0u8; 2];
        r.read_exact(&mut len)?;
        let mut label = vec![0u8; u16::from_le_bytes(len) as usize];
        r.read_exact(&mut label)?;
        let label = String::from_utf8(label).map_err(|_| Error::Cache("label is not UTF-8".into()))?;
        let mut codes = vec![0u8; 6 * k];
        r.read_exact(&mut codes)?;
        gens.push(Generator::new(label, GroupElement::from_diags(read_blocks(&codes)?)?));
    }
    let mut body = Vec::new();
    r.read_to_end(&mut body)?;
    if body.len() != order * 6 * k {
        return Err(Error::Cache(format!(
            "body holds {} bytes, expected {}",
            body.len(),
            order * 6 * k
        )));
    }
    let diags = read_blocks(&body)?;
    let group = EnumeratedGroup::from_elements(k, gens, diags.chunks_exact(k))?;
    if !group.contains(&GroupElement::identity(k)?)
        || group.generators().iter().any(|g| !group.contains(&g.element))
    {
        return Err(Error::Cache("identity or a generator is missing".into()));
    }
    Ok(group)
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

/// Cache path for a group with the given name, level and generators.
pub fn cache_path(dir: &Path, name: &str, level: usize, generators: &[Generator]) -> PathBuf {
    dir.join(format!(
        "{name}_k{level}_{}.bvg",
        generator_fingerprint(level, generators)
    ))
}

pub fn save(group: &EnumeratedGroup, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("bvg.tmp");
    write_group(group, BufWriter::new(fs::File::create(&tmp)?))?;
    fs::rename(tmp, path)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<EnumeratedGroup> {
    read_group(BufReader::new(fs::File::open(path)?))
}

/// Loads the cached group if present, otherwise builds and stores it.
pub fn load_or_build(
    dir: &Path,
    name: &str,
    level: usize,
    generators: &[Generator],
    build: impl FnOnce() -> Result<EnumeratedGroup>,
) -> Result<EnumeratedGroup> {
    let path = cache_path(dir, name, level, generators);
    if path.exists() {
        let g = load(&path)?;
        if g.generators() == generators {
            return Ok(g);
        }
    }
    let g = build()?;
    save(&g, &path)?;
    Ok(g)
}
