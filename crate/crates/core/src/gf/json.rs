use serde::{Deserialize, Serialize};

use super::{Mat, PrimeField};
use crate::error::{Error, Result};

/// Wire form of a matrix: `{"p", "rows", "cols", "entries"}` with row-major integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson {
    pub p: u32,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl From<&Mat> for MatJson {
    fn from(m: &Mat) -> Self {
        MatJson {
            p: m.field().p() as u32,
            rows: m.row_labels().to_vec(),
            cols: m.col_labels().to_vec(),
            entries: (0..m.nrows()).map(|i| m.row(i).iter().map(|&v| v as i64).collect()).collect(),
        }
    }
}

impl TryFrom<MatJson> for Mat {
    type Error = Error;

    fn try_from(j: MatJson) -> Result<Mat> {
        let f = PrimeField::new(j.p)?;
        for row in &j.entries {
            for &v in row {
                f.element(v)?;
            }
        }
        Mat::from_rows(f, j.rows, j.cols, &j.entries)
    }
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatJson::deserialize(d)?;
        Mat::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = PrimeField::new(3).unwrap();
        let m = Mat::from_ints(f, &[vec![1, 0, 2], vec![0, 1, 2]]);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"p\":3,"));
        let back: Mat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let s = r#"{"p":3,"rows":["a"],"cols":["x"],"entries":[[3]]}"#;
        assert!(serde_json::from_str::<Mat>(s).is_err());
    }
}
