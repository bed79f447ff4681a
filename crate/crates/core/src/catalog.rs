//! Persisted catalogs of canonical chirotopes.
//!
//! ```text
//! n=<n> k=<k> count=<count> checksum=sha256:<hex>
//! <sign string>[ U | R x1 y1 … xn yn]
//! …
//! ```
//!
//! The checksum covers every byte after the header line. Records without a
//! suffix are untagged; a tagged catalog gives every record a suffix.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::chirotope::{parse_nk, Chirotope, SignArray};
use crate::error::{input, Error, Result};
use crate::pointgeom::PointConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tag {
    Unknown,
    /// Realized by the stored points.
    Realizable(PointConfig),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub chirotope: Chirotope,
    pub tag: Tag,
}

/// A deduplicated list of canonical chirotopes sharing `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    n: usize,
    k: usize,
    records: Vec<Record>,
    index: HashMap<SignArray, usize>,
    /// Write per-record tag suffixes.
    pub tagged: bool,
}

impl Catalog {
    pub fn new(n: usize, k: usize) -> Catalog {
        Catalog {
            n,
            k,
            records: Vec::new(),
            index: HashMap::new(),
            tagged: false,
        }
    }

    pub fn from_chirotopes(n: usize, k: usize, chirotopes: impl IntoIterator<Item = Chirotope>) -> Result<Catalog> {
        let mut catalog = Catalog::new(n, k);
        for c in chirotopes {
            catalog.push(c, Tag::Unknown)?;
        }
        Ok(catalog)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// Appends a record; duplicates and non-canonical inputs are rejected.
    pub fn push(&mut self, chirotope: Chirotope, tag: Tag) -> Result<()> {
        if (chirotope.n(), chirotope.k()) != (self.n, self.k) {
            return input(format!(
                "record has (n, k) = ({}, {}), catalog has ({}, {})",
                chirotope.n(),
                chirotope.k(),
                self.n,
                self.k
            ));
        }
        if !chirotope.is_canonical() {
            return input(format!("record {} is not canonical", chirotope.to_sign_string()));
        }
        if self.index.contains_key(chirotope.signs()) {
            return input(format!("duplicate record {}", chirotope.to_sign_string()));
        }
        self.index.insert(chirotope.signs().clone(), self.records.len());
        self.records.push(Record { chirotope, tag });
        Ok(())
    }

    /// Position of a canonical chirotope.
    pub fn find(&self, c: &Chirotope) -> Option<usize> {
        if (c.n(), c.k()) != (self.n, self.k) {
            return None;
        }
        self.index.get(c.signs()).copied()
    }

    pub fn contains(&self, c: &Chirotope) -> bool {
        self.find(c).is_some()
    }

    pub fn tag(&self, i: usize) -> &Tag {
        &self.records[i].tag
    }

    pub(crate) fn set_tag(&mut self, i: usize, tag: Tag) {
        self.records[i].tag = tag;
    }

    fn body(&self) -> String {
        let mut body = String::new();
        for r in &self.records {
            body.push_str(&r.chirotope.to_sign_string());
            if self.tagged {
                match &r.tag {
                    Tag::Unknown => body.push_str(" U"),
                    Tag::Realizable(p) => {
                        body.push_str(" R ");
                        body.push_str(&p.to_inline());
                    }
                }
            }
            body.push('\n');
        }
        body
    }

    pub fn to_text(&self) -> String {
        let body = self.body();
        format!(
            "n={} k={} count={} checksum=sha256:{}\n{}",
            self.n,
            self.k,
            self.records.len(),
            sha256_hex(&body),
            body
        )
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let (header, body) = text.split_once('\n').ok_or(Error::Parse {
            line: 1,
            message: "missing header line".into(),
        })?;
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let (n, k) = parse_nk(header).map_err(|m| parse_err(1, m))?;
        let mut count = None;
        let mut checksum = None;
        for token in header.split_whitespace() {
            if let Some(v) = token.strip_prefix("count=") {
                count = Some(
                    v.parse::<usize>()
                        .map_err(|e| parse_err(1, format!("bad count: {e}")))?,
                );
            } else if let Some(v) = token.strip_prefix("checksum=sha256:") {
                checksum = Some(v.to_string());
            }
        }
        let count = count.ok_or_else(|| parse_err(1, "missing count".into()))?;
        let expected = checksum.ok_or_else(|| parse_err(1, "missing checksum".into()))?;
        let actual = sha256_hex(body);
        if expected != actual {
            return Err(Error::Checksum { expected, actual });
        }

        let mut catalog = Catalog::new(n, k);
        for (i, line) in body.lines().enumerate() {
            let lineno = i + 2;
            let mut fields = line.split_whitespace();
            let Some(signs) = fields.next() else {
                return Err(parse_err(lineno, "empty record".into()));
            };
            let chirotope = Chirotope::from_sign_string(n, k, signs).map_err(|e| parse_err(lineno, e.to_string()))?;
            let tag = match fields.next() {
                None => Tag::Unknown,
                Some("U") => {
                    catalog.tagged = true;
                    Tag::Unknown
                }
                Some("R") => {
                    catalog.tagged = true;
                    let coords: Vec<&str> = fields.by_ref().collect();
                    let p = PointConfig::from_inline(&coords).map_err(|m| parse_err(lineno, m))?;
                    if p.len() != n {
                        return Err(parse_err(
                            lineno,
                            format!("witness has {} points, expected {n}", p.len()),
                        ));
                    }
                    Tag::Realizable(p)
                }
                Some(other) => return Err(parse_err(lineno, format!("unknown tag {other:?}"))),
            };
            if fields.next().is_some() {
                return Err(parse_err(lineno, "trailing fields".into()));
            }
            catalog
                .push(chirotope, tag)
                .map_err(|e| parse_err(lineno, e.to_string()))?;
        }
        if catalog.len() != count {
            return Err(parse_err(
                1,
                format!("header count {count} but {} records", catalog.len()),
            ));
        }
        Ok(catalog)
    }
}

fn sha256_hex(body: &str) -> String {
    let digest = Sha256::digest(body.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes the chirotopes as an untagged catalog.
pub fn catalog_write(
    n: usize,
    k: usize,
    chirotopes: impl IntoIterator<Item = Chirotope>,
    path: &Path,
) -> Result<Catalog> {
    let catalog = Catalog::from_chirotopes(n, k, chirotopes)?;
    write_catalog(&catalog, path)?;
    Ok(catalog)
}

pub fn write_catalog(catalog: &Catalog, path: &Path) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(catalog.to_text().as_bytes())?;
    Ok(())
}

pub fn catalog_read(path: &Path) -> Result<Catalog> {
    Catalog::parse(&fs::read_to_string(path)?)
}
