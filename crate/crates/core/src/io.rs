//! JSON files for points and invariant vectors.
//!
//! Complex numbers are `[re, im]`; matrices are arrays of rows.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{QuiverError, Result};
use crate::invariants::{Family, InvariantIndex, InvariantVector};
use crate::point::{CMat, QuiverPoint, QuiverSetting};
use crate::scalar::Real;

pub const FORMAT_VERSION: u32 = 1;

type Pair = [f64; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    format_version: u32,
    m: usize,
    lambda: Vec<Pair>,
    alpha: Vec<i64>,
    #[serde(rename = "X")]
    x: Vec<Vec<Vec<Pair>>>,
    #[serde(rename = "Y")]
    y: Vec<Vec<Vec<Pair>>>,
    v: Vec<Pair>,
    w: Vec<Pair>,
}

fn pair<R: Real>(z: Complex<R>) -> Pair {
    [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
}

fn unpair<R: Real>(p: Pair) -> Complex<R> {
    Complex::new(R::lit(p[0]), R::lit(p[1]))
}

fn rows<R: Real>(mat: &CMat<R>) -> Vec<Vec<Pair>> {
    mat.row_iter().map(|r| r.iter().map(|&z| pair(z)).collect()).collect()
}

fn matrix<R: Real>(what: &str, data: &[Vec<Pair>], shape: (usize, usize)) -> Result<CMat<R>> {
    if data.len() != shape.0 {
        return Err(QuiverError::Format(format!("{what} has {} rows, expected {}", data.len(), shape.0)));
    }
    if let Some((r, row)) = data.iter().enumerate().find(|(_, row)| row.len() != shape.1) {
        return Err(QuiverError::Format(format!("{what} row {r} has {} entries, expected {}", row.len(), shape.1)));
    }
    Ok(CMat::from_fn(shape.0, shape.1, |r, c| unpair(data[r][c])))
}

pub fn point_to_json<R: Real>(p: &QuiverPoint<R>) -> Result<String> {
    let file = PointFile {
        format_version: FORMAT_VERSION,
        m: p.m(),
        lambda: (0..p.m()).map(|t| pair(p.setting.lambda(t))).collect(),
        alpha: p.setting.alpha().to_vec(),
        x: p.x.iter().map(rows).collect(),
        y: p.y.iter().map(rows).collect(),
        v: p.v.iter().map(|&z| pair(z)).collect(),
        w: p.w.iter().map(|&z| pair(z)).collect(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| QuiverError::Format(e.to_string()))
}

pub fn point_from_json<R: Real>(text: &str) -> Result<QuiverPoint<R>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| QuiverError::Format(e.to_string()))?;
    match value.get("format_version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == u64::from(FORMAT_VERSION) => {}
        Some(v) => return Err(QuiverError::Format(format!("unsupported format_version {v}"))),
        None => return Err(QuiverError::Format("missing format_version".into())),
    }
    let file: PointFile = serde_json::from_value(value).map_err(|e| QuiverError::Format(e.to_string()))?;
    let m = file.m;
    if m == 0 || file.lambda.len() != m || file.alpha.len() != m {
        return Err(QuiverError::Format(format!(
            "m = {m} but lambda has {} and alpha has {} entries",
            file.lambda.len(),
            file.alpha.len()
        )));
    }
    if file.x.len() != m || file.y.len() != m {
        return Err(QuiverError::Format(format!("expected {m} X and Y matrices")));
    }
    if file.alpha.iter().any(|&a| a < 0) {
        return Err(QuiverError::Format("negative dimension".into()));
    }
    let setting = QuiverSetting::<R>::new(file.lambda.iter().map(|&p| unpair(p)).collect(), &file.alpha)?;
    let d = |i: usize| setting.dim(i);
    let x = (0..m).map(|i| matrix(&format!("X{i}"), &file.x[i], (d(i), d(i + 1)))).collect::<Result<Vec<_>>>()?;
    let y = (0..m).map(|i| matrix(&format!("Y{i}"), &file.y[i], (d(i + 1), d(i)))).collect::<Result<Vec<_>>>()?;
    if file.v.len() != d(0) || file.w.len() != d(0) {
        return Err(QuiverError::Format(format!("v and w must have {} entries", d(0))));
    }
    let v = CMat::from_fn(d(0), 1, |r, _| unpair(file.v[r]));
    let w = CMat::from_fn(1, d(0), |_, c| unpair(file.w[c]));
    QuiverPoint::new(setting, x, y, v, w)
}

pub fn write_point<R: Real>(path: &Path, p: &QuiverPoint<R>) -> Result<()> {
    std::fs::write(path, point_to_json(p)?).map_err(|e| QuiverError::Format(format!("{}: {e}", path.display())))
}

pub fn read_point<R: Real>(path: &Path) -> Result<QuiverPoint<R>> {
    let text = std::fs::read_to_string(path).map_err(|e| QuiverError::Format(format!("{}: {e}", path.display())))?;
    point_from_json(&text)
}

pub fn invariant_key(family: Family, idx: InvariantIndex) -> String {
    format!("{family}:{}:{}:{}", idx.i, idx.j, idx.k)
}

pub fn parse_invariant_key(key: &str) -> Result<(Family, InvariantIndex)> {
    let bad = || QuiverError::Format(format!("bad invariant key {key:?}"));
    let parts: Vec<&str> = key.split(':').collect();
    let [fam, i, j, k] = parts.as_slice() else { return Err(bad()) };
    let family = match *fam {
        "G" => Family::G,
        "H" => Family::H,
        _ => return Err(bad()),
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    Ok((family, InvariantIndex::new(num(i)?, num(j)?, num(k)?)))
}

pub fn invariants_to_json<R: Real>(iv: &InvariantVector<R>) -> Result<String> {
    let map: BTreeMap<String, Pair> =
        iv.entries.iter().map(|(&(f, idx), &z)| (invariant_key(f, idx), pair(z))).collect();
    serde_json::to_string_pretty(&map).map_err(|e| QuiverError::Format(e.to_string()))
}

/// Entries of a serialized invariant vector; the setting is not stored.
pub fn invariants_from_json(text: &str) -> Result<BTreeMap<(Family, InvariantIndex), Complex<f64>>> {
    let map: BTreeMap<String, Pair> = serde_json::from_str(text).map_err(|e| QuiverError::Format(e.to_string()))?;
    map.into_iter().map(|(k, v)| Ok((parse_invariant_key(&k)?, Complex::new(v[0], v[1])))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_vector;
    use crate::point::base_point_n1;

    fn sample() -> QuiverPoint<f64> {
        let lam = vec![Complex::new(0.5, 0.25), Complex::new(1.0, -0.5), Complex::new(0.75, 0.0)];
        base_point_n1(&QuiverSetting::new(lam, &[1, 1, 1]).unwrap()).unwrap()
    }

    #[test]
    fn point_round_trip() {
        let p = sample();
        let text = point_to_json(&p).unwrap();
        assert!(text.contains("\"format_version\": 1"));
        let q: QuiverPoint<f64> = point_from_json(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_bad_version_and_shapes() {
        let text = point_to_json(&sample()).unwrap();
        let v2 = text.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(point_from_json::<f64>(&v2).unwrap_err().to_string().contains("format_version"));
        let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
        value["alpha"] = serde_json::json!([2, 1, 1]);
        assert!(point_from_json::<f64>(&value.to_string()).is_err());
        let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
        value["v"] = serde_json::json!([]);
        assert!(point_from_json::<f64>(&value.to_string()).is_err());
    }

    #[test]
    fn invariant_round_trip() {
        let iv = invariant_vector(&sample());
        let text = invariants_to_json(&iv).unwrap();
        assert!(text.contains("\"G:0:0:0\""));
        let back = invariants_from_json(&text).unwrap();
        assert_eq!(back.len(), iv.len());
        for (key, z) in &iv.entries {
            assert_eq!(back[key], *z);
        }
        assert!(parse_invariant_key("K:0:0:0").is_err());
        assert!(parse_invariant_key("G:0:0").is_err());
    }
}
