//! Versioned, checksummed on-disk lexicon. Layout in `docs/lexicon-binary.md`.

use std::fs;
use std::io::{Cursor, Read};
use std::path::Path;

use byteorder::{LittleEndian as LE, ReadBytesExt, WriteBytesExt};

use super::dafsa::Dafsa;
use super::{Analysis, CompoundPattern, Lexicon, LexiconError, Offsets, RoleSet};

pub const MAGIC: &[u8; 4] = b"LXCN";
pub const FORMAT_VERSION: u16 = 1;
const HEADER_LEN: usize = 8;

fn corrupt(msg: impl Into<String>) -> LexiconError {
    LexiconError::CorruptFile(msg.into())
}

fn put_u32s(out: &mut Vec<u8>, v: &[u32]) {
    out.write_u32::<LE>(v.len() as u32).unwrap();
    for &x in v {
        out.write_u32::<LE>(x).unwrap();
    }
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    out.write_u32::<LE>(s.len() as u32).unwrap();
    out.extend_from_slice(s.as_bytes());
}

fn put_dafsa(out: &mut Vec<u8>, d: &Dafsa) {
    out.write_u32::<LE>(d.key_count).unwrap();
    let finals: Vec<u8> = d.finals.iter().map(|&f| u8::from(f)).collect();
    out.write_u32::<LE>(finals.len() as u32).unwrap();
    out.extend_from_slice(&finals);
    put_u32s(out, &d.first);
    let labels: Vec<u32> = d.labels.iter().map(|&c| c as u32).collect();
    put_u32s(out, &labels);
    put_u32s(out, &d.targets);
}

fn put_offsets(out: &mut Vec<u8>, o: &Offsets) {
    put_u32s(out, &o.starts);
    put_u32s(out, &o.values);
}

pub(crate) fn to_bytes(lex: &Lexicon) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.write_u16::<LE>(FORMAT_VERSION).unwrap();
    out.write_u16::<LE>(0).unwrap();
    out.write_u64::<LE>(lex.stats.entry_count).unwrap();

    put_dafsa(&mut out, &lex.forms);
    put_offsets(&mut out, &lex.form_analyses);
    put_dafsa(&mut out, &lex.folded);
    put_offsets(&mut out, &lex.folded_forms);

    out.write_u32::<LE>(lex.analyses.len() as u32).unwrap();
    for a in &lex.analyses {
        put_str(&mut out, &a.lemma);
        put_str(&mut out, &a.gram_code);
        out.write_u16::<LE>(a.sem_traits.len() as u16).unwrap();
        for s in &a.sem_traits {
            put_str(&mut out, s);
        }
        match &a.flex_code {
            Some(f) => {
                out.write_u8(1).unwrap();
                put_str(&mut out, f);
            }
            None => out.write_u8(0).unwrap(),
        }
        out.write_u8(a.roles.0).unwrap();
    }

    out.write_u32::<LE>(lex.compounds.len() as u32).unwrap();
    for c in &lex.compounds {
        out.write_u32::<LE>(c.form.0).unwrap();
        out.write_u32::<LE>(c.ordinal).unwrap();
    }

    let crc = crc32fast::hash(&out);
    out.write_u32::<LE>(crc).unwrap();
    out
}

struct Reader<'a> {
    cur: Cursor<&'a [u8]>,
}

impl Reader<'_> {
    fn u8(&mut self) -> Result<u8, LexiconError> {
        self.cur.read_u8().map_err(|_| corrupt("unexpected end of data"))
    }

    fn u16(&mut self) -> Result<u16, LexiconError> {
        self.cur.read_u16::<LE>().map_err(|_| corrupt("unexpected end of data"))
    }

    fn u32(&mut self) -> Result<u32, LexiconError> {
        self.cur.read_u32::<LE>().map_err(|_| corrupt("unexpected end of data"))
    }

    fn u64(&mut self) -> Result<u64, LexiconError> {
        self.cur.read_u64::<LE>().map_err(|_| corrupt("unexpected end of data"))
    }

    fn remaining(&self) -> usize {
        self.cur.get_ref().len() - self.cur.position() as usize
    }

    fn bytes(&mut self, n: usize) -> Result<Vec<u8>, LexiconError> {
        if n > self.remaining() {
            return Err(corrupt("length field exceeds file size"));
        }
        let mut buf = vec![0; n];
        self.cur
            .read_exact(&mut buf)
            .map_err(|_| corrupt("unexpected end of data"))?;
        Ok(buf)
    }

    fn u32s(&mut self) -> Result<Vec<u32>, LexiconError> {
        let n = self.u32()? as usize;
        if n.saturating_mul(4) > self.remaining() {
            return Err(corrupt("length field exceeds file size"));
        }
        (0..n).map(|_| self.u32()).collect()
    }

    fn string(&mut self) -> Result<String, LexiconError> {
        let n = self.u32()? as usize;
        String::from_utf8(self.bytes(n)?).map_err(|_| corrupt("string is not UTF-8"))
    }

    fn dafsa(&mut self) -> Result<Dafsa, LexiconError> {
        let key_count = self.u32()?;
        let n = self.u32()? as usize;
        let finals: Vec<bool> = self.bytes(n)?.into_iter().map(|b| b != 0).collect();
        let first = self.u32s()?;
        let labels = self
            .u32s()?
            .into_iter()
            .map(|c| char::from_u32(c).ok_or_else(|| corrupt("invalid transition label")))
            .collect::<Result<Vec<char>, _>>()?;
        let targets = self.u32s()?;

        if n == 0 || first.len() != n + 1 || labels.len() != targets.len() {
            return Err(corrupt("inconsistent automaton sizes"));
        }
        if first[0] != 0 || first[n] as usize != labels.len() || first.windows(2).any(|w| w[0] > w[1]) {
            return Err(corrupt("bad transition offsets"));
        }
        if targets.iter().any(|&t| t as usize >= n) {
            return Err(corrupt("transition target out of range"));
        }
        let mut d = Dafsa {
            first,
            finals,
            labels,
            targets,
            skips: Vec::new(),
            key_count,
        };
        if !d.is_acyclic() || !d.is_deterministic() {
            return Err(corrupt("automaton is not a DAFSA"));
        }
        d.rebuild_skips();
        Ok(d)
    }

    fn offsets(&mut self, items: u32, value_bound: usize) -> Result<Offsets, LexiconError> {
        let starts = self.u32s()?;
        let values = self.u32s()?;
        if starts.len() != items as usize + 1
            || starts[0] != 0
            || *starts.last().unwrap() as usize != values.len()
            || starts.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v as usize >= value_bound)
        {
            return Err(corrupt("bad payload table"));
        }
        Ok(Offsets { starts, values })
    }
}

pub(crate) fn from_bytes(bytes: &[u8]) -> Result<Lexicon, LexiconError> {
    if bytes.len() < HEADER_LEN + 4 {
        return Err(corrupt("file too short"));
    }
    if &bytes[..4] != MAGIC {
        return Err(corrupt("not a lexicon file"));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(LexiconError::FormatVersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let (body, tail) = bytes.split_at(bytes.len() - 4);
    let stored = u32::from_le_bytes(tail.try_into().unwrap());
    if crc32fast::hash(body) != stored {
        return Err(corrupt("checksum mismatch"));
    }

    let mut r = Reader { cur: Cursor::new(body) };
    r.cur.set_position(HEADER_LEN as u64);
    let entry_count = r.u64()?;

    let forms = r.dafsa()?;
    // analysis ids are validated after the analysis table is read
    let form_analyses = r.offsets(forms.key_count, usize::MAX)?;
    let folded = r.dafsa()?;
    let folded_forms = r.offsets(folded.key_count, forms.key_count as usize)?;

    let n_analyses = r.u32()? as usize;
    let mut analyses = Vec::with_capacity(n_analyses.min(r.remaining()));
    for _ in 0..n_analyses {
        let lemma = r.string()?;
        let gram_code = r.string()?;
        let n_sem = r.u16()?;
        let sem_traits = (0..n_sem).map(|_| r.string()).collect::<Result<Vec<_>, _>>()?;
        let flex_code = match r.u8()? {
            0 => None,
            1 => Some(r.string()?),
            _ => return Err(corrupt("bad flex flag")),
        };
        let roles = RoleSet(r.u8()?);
        analyses.push(Analysis {
            lemma,
            gram_code,
            sem_traits,
            flex_code,
            roles,
        });
    }
    if form_analyses.values.iter().any(|&a| a as usize >= analyses.len()) {
        return Err(corrupt("analysis id out of range"));
    }

    let n_compounds = r.u32()? as usize;
    let mut stored_compounds = Vec::with_capacity(n_compounds.min(r.remaining()));
    for _ in 0..n_compounds {
        let form = r.u32()?;
        let ordinal = r.u32()?;
        if form >= forms.key_count {
            return Err(corrupt("compound form out of range"));
        }
        stored_compounds.push((form, ordinal));
    }
    if r.remaining() != 0 {
        return Err(corrupt("trailing data"));
    }
    let compounds: Vec<CompoundPattern> =
        Lexicon::compounds_from(&forms, &stored_compounds).ok_or_else(|| corrupt("compound form missing"))?;

    Ok(Lexicon::from_parts(
        forms,
        form_analyses,
        folded,
        folded_forms,
        analyses,
        compounds,
        entry_count,
    ))
}

impl Lexicon {
    pub fn to_bytes(&self) -> Vec<u8> {
        to_bytes(self)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Lexicon, LexiconError> {
        from_bytes(bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), LexiconError> {
        let path = path.as_ref();
        fs::write(path, self.to_bytes()).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Lexicon, LexiconError> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        from_bytes(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaf::{DictFile, RoleTag};
    use crate::lexicon::{compile, CaseFoldPolicy};

    fn sample() -> Lexicon {
        let text = "atrás,.ADV\ncorria,correr.V:I1s\ncorria,correr.V:I3s\nde,.PREP\npor exemplo,.ADV\nSilva,.N+NPR\n";
        compile(&[DictFile::parse_str(text, RoleTag::General).unwrap()]).unwrap()
    }

    #[test]
    fn round_trip() {
        let lex = sample();
        let back = from_bytes(&to_bytes(&lex)).unwrap();
        assert_eq!(back, lex);
        assert_eq!(back.lookup("Corria", CaseFoldPolicy::UnitexLike).len(), 2);
        assert_eq!(back.stats(), lex.stats());
    }

    #[test]
    fn deterministic_bytes() {
        assert_eq!(to_bytes(&sample()), to_bytes(&sample()));
    }

    #[test]
    fn truncated_is_corrupt() {
        let bytes = to_bytes(&sample());
        for cut in [0, 5, 11, bytes.len() / 2, bytes.len() - 1] {
            assert!(
                matches!(from_bytes(&bytes[..cut]), Err(LexiconError::CorruptFile(_))),
                "cut at {cut}"
            );
        }
    }

    #[test]
    fn flipped_byte_is_corrupt() {
        let mut bytes = to_bytes(&sample());
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0x40;
        assert!(matches!(from_bytes(&bytes), Err(LexiconError::CorruptFile(_))));
    }

    #[test]
    fn bumped_version_is_rejected() {
        let mut bytes = to_bytes(&sample());
        bytes[4] = bytes[4].wrapping_add(1);
        assert!(matches!(
            from_bytes(&bytes),
            Err(LexiconError::FormatVersionMismatch { found: 2, expected: 1 })
        ));
    }
}
