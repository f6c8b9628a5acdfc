//! Result tables: the JSON report schema, computing reports, and checking
//! stored tables against fresh computation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::counts::CurveCounts;
use crate::error::{Error, Result};
use crate::genus1::keys_for;
use crate::geometry::{gw_selection_rule, insertions_of_weight, InsertionIndex};
use crate::kernel::rational::{format_rational, parse_rational, Rational};
use crate::session::Session;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusTag {
    Zero,
    One,
    Counts,
}

impl fmt::Display for GenusTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusTag::Zero => "0",
            GenusTag::One => "1",
            GenusTag::Counts => "counts",
        })
    }
}

impl FromStr for GenusTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "0" => Ok(GenusTag::Zero),
            "1" => Ok(GenusTag::One),
            "counts" => Ok(GenusTag::Counts),
            other => Err(format!("genus must be 0, 1 or counts, got {other:?}")),
        }
    }
}

impl Serialize for GenusTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GenusTag::Zero => s.serialize_u64(0),
            GenusTag::One => s.serialize_u64(1),
            GenusTag::Counts => s.serialize_str("counts"),
        }
    }
}

impl<'de> Deserialize<'de> for GenusTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(0) => Ok(GenusTag::Zero),
            Raw::Int(1) => Ok(GenusTag::One),
            Raw::Int(n) => Err(serde::de::Error::custom(format!("unsupported genus {n}"))),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// A Gromov-Witten invariant.
    Gw,
    /// A virtual structure constant.
    Vsc,
    /// Rational curve count.
    N,
    /// Elliptic curve count.
    M,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gw => "gw",
            Kind::Vsc => "vsc",
            Kind::N => "n",
            Kind::M => "m",
        })
    }
}

fn ser_insertions<S: Serializer>(
    ins: &InsertionIndex,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let pairs = ins.pairs();
    let mut map = s.serialize_map(Some(pairs.len()))?;
    for (p, c) in pairs {
        map.serialize_entry(&p.to_string(), &c)?;
    }
    map.end()
}

fn de_insertions<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<InsertionIndex, D::Error> {
    let raw = BTreeMap::<String, u32>::deserialize(d)?;
    let mut ins = InsertionIndex::empty();
    for (k, c) in raw {
        let p: u32 = k
            .parse()
            .map_err(|_| serde::de::Error::custom(format!("bad insertion class {k:?}")))?;
        ins.add(p, c);
    }
    Ok(ins)
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub d: u32,
    #[serde(
        serialize_with = "ser_insertions",
        deserialize_with = "de_insertions",
        default
    )]
    pub insertions: InsertionIndex,
    pub kind: Kind,
    pub value: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub slow: bool,
}

impl Row {
    pub fn new(d: u32, insertions: InsertionIndex, kind: Kind, value: &Rational) -> Self {
        Row {
            d,
            insertions,
            kind,
            value: format_rational(value),
            slow: false,
        }
    }

    pub fn parsed_value(&self) -> Result<Rational> {
        parse_rational(&self.value)
            .ok_or_else(|| Error::Fixture(format!("value {:?} is not a rational", self.value)))
    }
}

/// A result table. Stored tables carry a `source` label; computed ones don't.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub space: String,
    pub genus: GenusTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub results: Vec<Row>,
}

impl Report {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
    }
}

/// Every `*.json` table under `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, Report)>> {
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| Report::load(&p).map(|r| (p, r)))
        .collect()
}

/// Evaluates cells for one session, sharing curve counts across rows.
pub struct Evaluator<'a> {
    session: &'a Session,
    counts: Option<CurveCounts>,
}

impl<'a> Evaluator<'a> {
    pub fn new(session: &'a Session) -> Self {
        Evaluator {
            session,
            counts: None,
        }
    }

    fn counts(&mut self, d: u32) -> Result<&CurveCounts> {
        let stale = self
            .counts
            .as_ref()
            .is_none_or(|c| c.max_degree() < d as usize);
        if stale {
            self.counts = Some(self.session.curve_counts(d)?);
        }
        Ok(self.counts.as_ref().expect("just filled"))
    }

    pub fn cell(
        &mut self,
        genus: GenusTag,
        d: u32,
        ins: &InsertionIndex,
        kind: Kind,
    ) -> Result<Rational> {
        let s = self.session;
        match (genus, kind) {
            (GenusTag::Zero, Kind::Gw) => s.genus0_gw_insertions(ins, d),
            (GenusTag::One, Kind::Gw) => s.genus1_gw(ins, d),
            (GenusTag::One, Kind::Vsc) => s.evsc(&crate::genus1::EvscKey::new(d, ins.clone())),
            (GenusTag::Counts, Kind::N) => Ok(self.counts(d)?.n[d as usize - 1].clone()),
            (GenusTag::Counts, Kind::M) => Ok(self.counts(d)?.m[d as usize - 1].clone()),
            (g, k) => Err(Error::Fixture(format!(
                "kind {k} is not available for genus {g}"
            ))),
        }
    }
}

/// All admissible cells of the requested genus up to `max_d`, in a fixed order.
pub fn compute_report(session: &Session, genus: GenusTag, max_d: u32) -> Result<Report> {
    let space = session.space();
    let mut ev = Evaluator::new(session);
    let mut results = Vec::new();
    for d in 1..=max_d {
        match genus {
            GenusTag::Zero => {
                let target = space.fano_index() * d as i64 + space.dim() as i64 - 3;
                for ins in insertions_of_weight(space.dim(), target) {
                    debug_assert!(gw_selection_rule(space, d, &ins));
                    let v = ev.cell(genus, d, &ins, Kind::Gw)?;
                    results.push(Row::new(d, ins, Kind::Gw, &v));
                }
            }
            GenusTag::One => {
                for key in keys_for(space, d) {
                    for kind in [Kind::Gw, Kind::Vsc] {
                        let v = ev.cell(genus, d, &key.ins, kind)?;
                        results.push(Row::new(d, key.ins.clone(), kind, &v));
                    }
                }
            }
            GenusTag::Counts => {
                for kind in [Kind::N, Kind::M] {
                    let v = ev.cell(genus, d, &InsertionIndex::empty(), kind)?;
                    results.push(Row::new(d, InsertionIndex::empty(), kind, &v));
                }
            }
        }
    }
    Ok(Report {
        space: space.to_string(),
        genus,
        source: None,
        results,
    })
}

#[derive(Clone, Debug)]
pub struct Check {
    pub row: Row,
    pub expected: Rational,
    pub computed: Rational,
}

impl Check {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

/// Recomputes every row of `table` with `d ≤ max_d`. Slow rows are skipped
/// unless `include_slow` is set.
pub fn verify_table(
    session: &Session,
    table: &Report,
    max_d: u32,
    include_slow: bool,
) -> Result<Vec<Check>> {
    let mut ev = Evaluator::new(session);
    let mut out = Vec::new();
    for row in &table.results {
        if row.d > max_d || (row.slow && !include_slow) {
            continue;
        }
        let expected = row.parsed_value()?;
        let computed = ev.cell(table.genus, row.d, &row.insertions, row.kind)?;
        out.push(Check {
            row: row.clone(),
            expected,
            computed,
        });
    }
    Ok(out)
}
