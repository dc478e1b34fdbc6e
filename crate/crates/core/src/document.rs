//! JSON document format for d-frames.
//!
//! ```json
//! {
//!   "name": "3.3",
//!   "minus": {"elements": ["0", "c", "1"], "covers": [["0", "c"], ["c", "1"]]},
//!   "plus":  {"elements": ["0", "c", "1"], "leq": [["0", "c"], ["c", "1"]]},
//!   "con": [["0", "1"], ["1", "0"]],
//!   "tot": [["1", "0"], ["0", "1"]]
//! }
//! ```
//!
//! `con` pairs are `[plus_id, minus_id]`, `tot` pairs `[minus_id, plus_id]`.
//! By default they are generators and get closed under the lattice axioms
//! of a d-frame; in strict mode they are taken literally.

use serde::{Deserialize, Serialize};

use crate::dframe::{close_con, close_tot, DFrame, DFrameCandidate};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::lattice::Lattice;
use crate::set::PairSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DFrameDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub minus: FrameBlock,
    pub plus: FrameBlock,
    #[serde(default)]
    pub con: Vec<(String, String)>,
    #[serde(default)]
    pub tot: Vec<(String, String)>,
}

impl FrameBlock {
    fn to_frame(&self) -> Result<Frame> {
        let lattice = match (&self.leq, &self.covers) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "give either `leq` or `covers`, not both".into(),
                ))
            }
            (Some(pairs), None) => Lattice::from_leq(self.elements.clone(), pairs)?,
            (None, Some(pairs)) => Lattice::from_covers(self.elements.clone(), pairs)?,
            (None, None) => Lattice::from_leq::<&str>(self.elements.clone(), &[])?,
        };
        let frame = Frame::new(lattice)?;
        Ok(match &self.name {
            Some(n) => frame.named(n.clone()),
            None => frame,
        })
    }

    fn from_frame(frame: &Frame) -> Self {
        let ids = frame.ids();
        FrameBlock {
            name: Some(frame.name()),
            elements: ids.to_vec(),
            leq: None,
            covers: Some(
                frame
                    .covers()
                    .into_iter()
                    .map(|(x, y)| (ids[x].clone(), ids[y].clone()))
                    .collect(),
            ),
        }
    }
}

impl DFrameDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("{e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Full relations of `d`, so that strict loading reproduces it.
    pub fn from_dframe(d: &DFrame) -> Self {
        let (m, p) = (d.minus(), d.plus());
        DFrameDocument {
            name: Some(d.name()),
            minus: FrameBlock::from_frame(m),
            plus: FrameBlock::from_frame(p),
            con: d
                .con()
                .iter()
                .map(|(phi, a)| (p.id(phi).to_string(), m.id(a).to_string()))
                .collect(),
            tot: d
                .tot()
                .iter()
                .map(|(a, phi)| (m.id(a).to_string(), p.id(phi).to_string()))
                .collect(),
        }
    }

    /// Resolves ids and builds the component frames; relations are not
    /// validated.
    pub fn to_candidate(&self) -> Result<DFrameCandidate> {
        let minus = self.minus.to_frame().map_err(|e| e.at("minus"))?;
        let plus = self.plus.to_frame().map_err(|e| e.at("plus"))?;
        let resolve = |f: &Frame, id: &str, path: String| {
            f.index_of(id)
                .ok_or_else(|| Error::UnknownElement(id.to_string()).at(path))
        };
        let con = self
            .con
            .iter()
            .enumerate()
            .map(|(i, (phi, a))| {
                Ok((
                    resolve(&plus, phi, format!("con[{i}][0]"))?,
                    resolve(&minus, a, format!("con[{i}][1]"))?,
                ))
            })
            .collect::<Result<_>>()?;
        let tot = self
            .tot
            .iter()
            .enumerate()
            .map(|(i, (a, phi))| {
                Ok((
                    resolve(&minus, a, format!("tot[{i}][0]"))?,
                    resolve(&plus, phi, format!("tot[{i}][1]"))?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(DFrameCandidate {
            minus,
            plus,
            con,
            tot,
        })
    }

    /// The relations to validate: literal in strict mode, else the closure
    /// of the generators.
    pub fn relations(&self, strict: bool) -> Result<(DFrameCandidate, PairSet, PairSet)> {
        let c = self.to_candidate()?;
        let con = PairSet::from_pairs(c.plus.len(), c.minus.len(), c.con.iter().copied());
        let tot = PairSet::from_pairs(c.minus.len(), c.plus.len(), c.tot.iter().copied());
        if strict {
            return Ok((c, con, tot));
        }
        let con = close_con(&c.minus, &c.plus, con);
        let tot = close_tot(&c.minus, &c.plus, tot);
        Ok((c, con, tot))
    }

    pub fn load(&self, strict: bool) -> Result<DFrame> {
        let (c, con, tot) = self.relations(strict)?;
        let d = DFrame::new(c.minus, c.plus, con, tot)?;
        Ok(match &self.name {
            Some(n) => d.named(n.clone()),
            None => d,
        })
    }
}
