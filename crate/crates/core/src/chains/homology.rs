use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Known polar homology dimensions of a catalog space. Degrees whose
/// dimension is not known are absent; the Euler characteristic is known
/// only when every degree is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyReport {
    pub space: String,
    pub dim: usize,
    pub dims: BTreeMap<usize, u64>,
}

impl HomologyReport {
    pub fn euler(&self) -> Option<i64> {
        if (0..=self.dim).any(|k| !self.dims.contains_key(&k)) {
            return None;
        }
        Some(self.dims.iter().map(|(k, d)| if k % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum())
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = (0..=self.dim)
            .map(|k| match self.dims.get(&k) {
                Some(d) => format!("HP{k}={d}"),
                None => format!("HP{k}=?"),
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `HP₀ = 1` for a connected space; the top degree is the number of
/// independent global holomorphic top forms; a curve of genus g has
/// `HP₁ = g`.
pub fn hp_report(space: &str) -> Result<HomologyReport> {
    let genus = space.strip_prefix("curve(").and_then(|r| r.strip_suffix(')')).map(|g| g.trim().parse::<u64>());
    let (dim, top) = match (space, genus) {
        (_, Some(Ok(g))) => (1, g),
        (_, Some(Err(_))) => return Err(Error::UnknownSpace(space.into())),
        ("P1", _) => (1, 0),
        ("P2", _) | ("P1xP1", _) => (2, 0),
        ("P3", _) | ("P1xP1xP1", _) => (3, 0),
        _ => return Err(Error::UnknownSpace(space.into())),
    };
    let mut dims = BTreeMap::new();
    dims.insert(0, 1);
    dims.insert(dim, top);
    Ok(HomologyReport { space: space.into(), dim, dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves() {
        let p1 = hp_report("P1").unwrap();
        assert_eq!((p1.dims[&0], p1.dims[&1], p1.euler()), (1, 0, Some(1)));
        let c = hp_report("curve(2)").unwrap();
        assert_eq!((c.dims[&1], c.euler()), (2, Some(-1)));
        assert_eq!(hp_report("P2").unwrap().euler(), None);
        assert!(hp_report("K3").is_err());
    }
}
