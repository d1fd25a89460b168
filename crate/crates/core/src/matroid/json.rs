use serde::{Deserialize, Serialize};

use super::RepresentedMatroid;
use crate::error::{Error, Result};
use crate::gf::{Mat, MatJson};

/// Matrix JSON plus `"kind": "represented-matroid"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub kind: String,
    #[serde(flatten)]
    pub matrix: MatJson,
}

pub const MATROID_KIND: &str = "represented-matroid";

impl From<&RepresentedMatroid> for MatroidJson {
    fn from(m: &RepresentedMatroid) -> Self {
        MatroidJson { kind: MATROID_KIND.into(), matrix: MatJson::from(m.rep()) }
    }
}

impl TryFrom<MatroidJson> for RepresentedMatroid {
    type Error = Error;

    fn try_from(j: MatroidJson) -> Result<Self> {
        if j.kind != MATROID_KIND {
            return Err(Error::Malformed(format!("unexpected kind {:?}", j.kind)));
        }
        Ok(RepresentedMatroid::new(Mat::try_from(j.matrix)?))
    }
}

impl Serialize for RepresentedMatroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatroidJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepresentedMatroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatroidJson::deserialize(d)?;
        RepresentedMatroid::try_from(j).map_err(serde::de::Error::custom)
    }
}
