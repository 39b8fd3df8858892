//! On-disk cache for enumerated subgroups: a text header followed by the
//! sorted canonical encodings. Writes are byte-identical across runs for
//! the same ambient, generators and result.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::rings::FiniteRing;

use super::{ClosureStats, Encoder, Gen, Provenance, Subgroup};

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    Malformed(String),
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache io error: {e}"),
            CacheError::Malformed(m) => write!(f, "malformed cache file: {m}"),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

/// Deterministic fingerprint of a generator family.
pub fn generator_fingerprint(encoder: &Encoder, gens: &[Gen]) -> String {
    let mut encs: Vec<Vec<u8>> = gens.iter().map(|g| encoder.encode(&g.mat)).collect();
    encs.sort();
    let mut hasher = Sha256::new();
    for e in &encs {
        hasher.update(e);
    }
    hex_digest(&hasher.finalize())
}

fn hex_digest(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write_subgroup(path: &Path, ambient: &str, sub: &Subgroup) -> Result<(), CacheError> {
    let mut file = std::fs::File::create(path)?;
    let sorted = sub.sorted_encodings();
    let fingerprint = generator_fingerprint(&sub.encoder, &sub.seeds);
    writeln!(file, "chevlab-subgroup v1")?;
    writeln!(file, "ambient: {ambient}")?;
    writeln!(file, "label: {}", sub.label)?;
    writeln!(file, "generators: {fingerprint}")?;
    writeln!(file, "complete: {}", sub.complete)?;
    writeln!(file, "count: {}", sorted.len())?;
    writeln!(file, "element-bytes: {}", sub.encoder.element_len())?;
    writeln!(file, "---")?;
    for enc in &sorted {
        file.write_all(enc)?;
    }
    Ok(())
}

pub fn read_subgroup(
    path: &Path,
    ring: &FiniteRing,
    dim: usize,
) -> Result<Subgroup, CacheError> {
    let file = std::fs::File::open(path)?;
    let mut reader = BufReader::new(file);
    let mut header = HashMap::new();
    let mut line = String::new();
    reader.read_line(&mut line)?;
    if line.trim() != "chevlab-subgroup v1" {
        return Err(CacheError::Malformed("missing magic line".into()));
    }
    loop {
        line.clear();
        reader.read_line(&mut line)?;
        let t = line.trim_end();
        if t == "---" {
            break;
        }
        let (k, v) = t
            .split_once(": ")
            .ok_or_else(|| CacheError::Malformed(format!("bad header line {t:?}")))?;
        header.insert(k.to_string(), v.to_string());
    }
    let count: usize = header
        .get("count")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| CacheError::Malformed("missing count".into()))?;
    let element_bytes: usize = header
        .get("element-bytes")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| CacheError::Malformed("missing element-bytes".into()))?;
    let complete = header.get("complete").map(|v| v == "true").unwrap_or(false);
    let label = header.get("label").cloned().unwrap_or_default();

    let encoder = Encoder::new(ring, dim);
    if encoder.element_len() != element_bytes {
        return Err(CacheError::Malformed(format!(
            "element size mismatch: file has {element_bytes}, ambient needs {}",
            encoder.element_len()
        )));
    }
    let mut body = Vec::new();
    reader.read_to_end(&mut body)?;
    if body.len() != count * element_bytes {
        return Err(CacheError::Malformed(format!(
            "body length {} does not match count {count} x {element_bytes}",
            body.len()
        )));
    }
    let mut index = HashMap::with_capacity(count);
    let mut order = Vec::with_capacity(count);
    let mut provenance = Vec::with_capacity(count);
    for chunk in body.chunks(element_bytes) {
        let idx = order.len() as u32;
        index.insert(chunk.to_vec(), idx);
        order.push(chunk.to_vec());
        provenance.push(Provenance::Identity);
    }
    Ok(Subgroup {
        label,
        encoder,
        ring: ring.clone(),
        index,
        order,
        provenance,
        seeds: Vec::new(),
        conjugators: Vec::new(),
        complete,
        stats: ClosureStats::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{elementary_subgroup, Subgroup};
    use crate::chevrep::ChevRep;
    use crate::rings::{FiniteRing, Ideal};
    use crate::rootsys::SystemLabel;
    use std::sync::Arc;

    fn enumerate() -> (ChevRep, Arc<FiniteRing>, Subgroup) {
        let rep = ChevRep::new(SystemLabel::A(2)).unwrap();
        let ring = Arc::new(FiniteRing::zmod(4));
        let two = Ideal::from_generators(ring.clone(), &[ring.from_int(2)]).unwrap();
        let sub =
            elementary_subgroup(&rep, &ring, &two, Some(&two), 1 << 16, "e2").unwrap();
        (rep, ring, sub)
    }

    #[test]
    fn cache_round_trip_is_byte_identical() {
        let (rep, ring, sub) = enumerate();
        let dir = std::env::temp_dir().join("chevlab-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let p1 = dir.join("one.sub");
        let p2 = dir.join("two.sub");
        super::write_subgroup(&p1, "A2 over Z/4", &sub).unwrap();
        super::write_subgroup(&p2, "A2 over Z/4", &sub).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);

        let loaded = super::read_subgroup(&p1, &ring, rep.dim()).unwrap();
        assert_eq!(loaded.len(), sub.len());
        assert!(loaded.complete);
        assert!(loaded.same_elements(&sub));
        // Re-writing the loaded subgroup reproduces the body bytes.
        let p3 = dir.join("three.sub");
        super::write_subgroup(&p3, "A2 over Z/4", &loaded).unwrap();
        let b3 = std::fs::read(&p3).unwrap();
        // Headers differ only by the generator fingerprint (the loaded copy
        // has no generators), so compare the sorted element bodies.
        let body = |b: &[u8]| {
            let pos = b.windows(4).position(|w| w == b"---\n").unwrap() + 4;
            b[pos..].to_vec()
        };
        assert_eq!(body(&b1), body(&b3));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn malformed_cache_is_rejected() {
        let (rep, ring, _) = enumerate();
        let dir = std::env::temp_dir().join("chevlab-cache-test-bad");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("bad.sub");
        std::fs::write(&p, b"not a cache file").unwrap();
        assert!(super::read_subgroup(&p, &ring, rep.dim()).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }
}
