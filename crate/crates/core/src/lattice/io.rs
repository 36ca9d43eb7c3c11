//! Lattice JSON files and `builtin:<name>` targets.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{builtin, Lattice};
use crate::error::{Error, Result};
use crate::matrix::{self, Rational};

/// On-disk form: entries of `basis` are numerators over `denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub name: String,
    pub denominator: i64,
    pub basis: Vec<Vec<i64>>,
    pub metric_scale: [i64; 2],
}

fn format_version() -> u32 {
    1
}

impl LatticeFile {
    pub fn to_lattice(&self) -> Result<Lattice> {
        if self.format != 1 {
            return Err(Error::Parse(format!("unsupported format {}", self.format)));
        }
        if self.denominator <= 0 {
            return Err(Error::InvalidLattice("denominator must be positive".into()));
        }
        let [num, den] = self.metric_scale;
        if den == 0 {
            return Err(Error::InvalidLattice("zero metric-scale denominator".into()));
        }
        let d = BigInt::from(self.denominator);
        let basis = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| Rational::new(x.into(), d.clone())).collect())
            .collect();
        Lattice::new(self.name.clone(), basis, Rational::new(num.into(), den.into()))
    }

    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        let den = matrix::lcm_denominators(l.basis().iter().flatten());
        let dq = Rational::from_integer(den.clone());
        let to_i64 = |x: &BigInt| i64::try_from(x).map_err(|_| Error::Precondition("entry exceeds i64".into()));
        let basis = l
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| to_i64(&(x * &dq).to_integer())).collect())
            .collect::<Result<_>>()?;
        let s = l.metric_scale();
        Ok(LatticeFile {
            format: 1,
            name: l.name().to_string(),
            denominator: to_i64(&den)?,
            basis,
            metric_scale: [to_i64(s.numer())?, to_i64(s.denom())?],
        })
    }
}

impl Lattice {
    pub fn from_json_str(s: &str) -> Result<Lattice> {
        serde_json::from_str::<LatticeFile>(s)?.to_lattice()
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&LatticeFile::from_lattice(self)?)?)
    }

    /// Resolve a `builtin:<name>` target or read a lattice JSON file.
    pub fn load(target: &str) -> Result<Lattice> {
        match target.strip_prefix("builtin:") {
            Some(name) => builtin(name),
            None => Lattice::from_json_str(&std::fs::read_to_string(Path::new(target))?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_builtins() {
        for name in ["sqrt2E8", "A3", "E7", "BW16"] {
            let l = builtin(name).unwrap();
            let back = Lattice::from_json_str(&l.to_json_string().unwrap()).unwrap();
            assert!(back.same_lattice(&l), "{name}");
            assert_eq!(back.gram(), l.gram());
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Lattice::from_json_str("{").is_err());
        let dep = r#"{"name":"x","denominator":1,"basis":[[1,0],[2,0]],"metric_scale":[1,1]}"#;
        assert!(Lattice::from_json_str(dep).is_err());
        let neg = r#"{"name":"x","denominator":1,"basis":[[1]],"metric_scale":[-1,1]}"#;
        assert!(Lattice::from_json_str(neg).is_err());
        let extra = r#"{"name":"x","denominator":1,"basis":[[1]],"metric_scale":[1,1],"zzz":0}"#;
        assert!(Lattice::from_json_str(extra).is_err());
        let ok = r#"{"name":"x","denominator":2,"basis":[[2]],"metric_scale":[4,1]}"#;
        assert_eq!(Lattice::from_json_str(ok).unwrap().gram()[0][0], crate::matrix::rat(4));
    }

    #[test]
    fn load_targets() {
        assert_eq!(Lattice::load("builtin:E8").unwrap().rank(), 8);
        assert!(matches!(Lattice::load("builtin:nope"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(Lattice::load("/nonexistent/file.json"), Err(Error::Io(_))));
    }
}
