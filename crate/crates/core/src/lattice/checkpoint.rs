//! Binary snapshot of an orbit enumeration between rounds.
//!
//! Layout, all integers little-endian:
//!
//! | field          | type     |
//! |----------------|----------|
//! | magic          | `KZFLAT01` (8 bytes) |
//! | version        | u16 (currently 1) |
//! | dimension      | u16 |
//! | facet count    | u32 |
//! | group id       | u32 (0 trivial, 1 units) |
//! | round          | u32 |
//! | flags          | u32 (bit 0: cosimplicial restriction) |
//! | done count     | u64 |
//! | pending count  | u64 |
//!
//! followed by `done count + pending count` records, finished orbits first:
//! codimension (u16), facet set as `ceil(facets / 8)` packed bytes with bit
//! `k` in bit `k % 8` of byte `k / 8`, and orbit size (u32).

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::FaceRecord;
use crate::bitset::BitSet;

pub const MAGIC: &[u8; 8] = b"KZFLAT01";
pub const VERSION: u16 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("checkpoint I/O: {0}")]
    Io(#[from] io::Error),
    #[error("not a checkpoint file")]
    BadMagic,
    #[error("unsupported checkpoint version {0}")]
    UnsupportedVersion(u16),
    #[error("corrupt checkpoint: {0}")]
    Corrupt(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub dim: usize,
    pub facet_count: usize,
    pub group_id: u32,
    pub round: u32,
    pub restricted: bool,
    pub done: Vec<FaceRecord>,
    pub pending: Vec<FaceRecord>,
}

pub fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), CheckpointError> {
    // write next to the target and rename, so a crash never leaves a torn file
    let tmp = path.with_extension("partial");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        encode(&mut w, cp)?;
        w.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_checkpoint(path: &Path) -> Result<Checkpoint, CheckpointError> {
    decode(&mut BufReader::new(File::open(path)?))
}

pub fn encode<W: Write>(w: &mut W, cp: &Checkpoint) -> Result<(), CheckpointError> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    let dim = u16::try_from(cp.dim).map_err(|_| CheckpointError::Corrupt("dimension"))?;
    let facets = u32::try_from(cp.facet_count).map_err(|_| CheckpointError::Corrupt("facets"))?;
    w.write_all(&dim.to_le_bytes())?;
    w.write_all(&facets.to_le_bytes())?;
    w.write_all(&cp.group_id.to_le_bytes())?;
    w.write_all(&cp.round.to_le_bytes())?;
    w.write_all(&u32::from(cp.restricted).to_le_bytes())?;
    w.write_all(&(cp.done.len() as u64).to_le_bytes())?;
    w.write_all(&(cp.pending.len() as u64).to_le_bytes())?;
    for r in cp.done.iter().chain(&cp.pending) {
        if r.hset.capacity() != cp.facet_count {
            return Err(CheckpointError::Corrupt("facet set of the wrong size"));
        }
        w.write_all(&r.codim.to_le_bytes())?;
        w.write_all(&r.hset.to_le_bytes())?;
        w.write_all(&r.orbit_size.to_le_bytes())?;
    }
    Ok(())
}

pub fn decode<R: Read>(r: &mut R) -> Result<Checkpoint, CheckpointError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(CheckpointError::BadMagic);
    }
    let version = read_u16(r)?;
    if version != VERSION {
        return Err(CheckpointError::UnsupportedVersion(version));
    }
    let dim = read_u16(r)? as usize;
    let facet_count = read_u32(r)? as usize;
    let group_id = read_u32(r)?;
    let round = read_u32(r)?;
    let flags = read_u32(r)?;
    if flags & !1 != 0 {
        return Err(CheckpointError::Corrupt("unknown flags"));
    }
    let done_count = read_u64(r)?;
    let pending_count = read_u64(r)?;
    let nbytes = facet_count.div_ceil(8);
    let mut read_records = |count: u64, round_of: u32| -> Result<Vec<FaceRecord>, CheckpointError> {
        let mut out = Vec::new();
        for _ in 0..count {
            let codim = read_u16(r)?;
            let mut bytes = vec![0u8; nbytes];
            r.read_exact(&mut bytes)?;
            let hset = BitSet::from_le_bytes(facet_count, &bytes)
                .ok_or(CheckpointError::Corrupt("padding bits set"))?;
            let orbit_size = read_u32(r)?;
            if codim as usize > dim {
                return Err(CheckpointError::Corrupt("codimension exceeds dimension"));
            }
            out.push(FaceRecord {
                cosimplicial: hset.count() == codim as usize,
                hset,
                codim,
                orbit_size,
                round: round_of,
            });
        }
        Ok(out)
    };
    // rounds of finished orbits are not stored
    let done = read_records(done_count, 0)?;
    let pending = read_records(pending_count, round)?;
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(CheckpointError::Corrupt("trailing bytes"));
    }
    Ok(Checkpoint {
        dim,
        facet_count,
        group_id,
        round,
        restricted: flags & 1 == 1,
        done,
        pending,
    })
}

fn read_u16<R: Read>(r: &mut R) -> io::Result<u16> {
    let mut b = [0u8; 2];
    r.read_exact(&mut b)?;
    Ok(u16::from_le_bytes(b))
}

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}
