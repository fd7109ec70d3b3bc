//! The JSON instance document and the small argument grammars used by the CLI.
//!
//! ```
//! use flagvol::instance::{hirzebruch_document, parse_instance};
//!
//! let doc = hirzebruch_document(1, 1, 2).unwrap();
//! let text = doc.to_json();
//! assert_eq!(text, r#"{"rays":[[1,0],[0,1],[-1,1],[0,-1]],"divisor":[0,1,2,0]}"#);
//! assert_eq!(parse_instance(&text).unwrap(), doc);
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::divisor::TorusDivisor;
use crate::error::{Error, Result};
use crate::fan::{
    hirzebruch_fan, standard_decomposition, validate_fan, DecompositionVariant, Fan2D, OrbitDecomposition,
};
use crate::lattice::LatticeVector;
use crate::valuation::TFlag;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub rays: Vec<[i64; 2]>,
    pub divisor: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<TFlag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition_variant: Option<String>,
}

/// A document after validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub fan: Fan2D,
    pub divisor: TorusDivisor,
    pub flag: Option<TFlag>,
    pub variant: Option<DecompositionVariant>,
}

impl Instance {
    pub fn decomposition(&self, fallback: DecompositionVariant) -> Result<OrbitDecomposition> {
        standard_decomposition(&self.fan, self.variant.unwrap_or(fallback))
    }

    pub fn to_document(&self) -> Result<InstanceDocument> {
        let small = |n: &BigInt| {
            n.to_i64()
                .ok_or_else(|| Error::Parse(format!("{n} does not fit in 64 bits")))
        };
        Ok(InstanceDocument {
            rays: self
                .fan
                .rays()
                .iter()
                .map(|r| Ok([small(&r.x)?, small(&r.y)?]))
                .collect::<Result<_>>()?,
            divisor: self.divisor.coeffs().iter().map(small).collect::<Result<_>>()?,
            flag: self.flag,
            decomposition_variant: self.variant.map(|v| v.to_string()),
        })
    }
}

impl InstanceDocument {
    /// Compact serialization; field order is `rays, divisor, flag, decomposition_variant`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn resolve(&self) -> Result<Instance> {
        let rays = self.rays.iter().map(|&[x, y]| LatticeVector::new(x, y)).collect();
        let fan = validate_fan(rays)?;
        let divisor = TorusDivisor::new(&fan, self.divisor.iter().map(|&d| d.into()).collect())?;
        if let Some(flag) = self.flag {
            flag.check(&fan)?;
        }
        let variant = self
            .decomposition_variant
            .as_deref()
            .map(str::parse::<DecompositionVariant>)
            .transpose()?;
        if let Some(v) = variant {
            standard_decomposition(&fan, v)?;
        }
        Ok(Instance {
            fan,
            divisor,
            flag: self.flag,
            variant,
        })
    }
}

/// Parses the document; errors carry serde's line and column.
pub fn parse_instance(text: &str) -> Result<InstanceDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn load_instance(text: &str) -> Result<Instance> {
    parse_instance(text)?.resolve()
}

/// `D = a·D₁ + b·D₂` on the Hirzebruch fan with parameter `l`.
pub fn hirzebruch_document(l: i64, a: i64, b: i64) -> Result<InstanceDocument> {
    let fan = hirzebruch_fan(&BigInt::from(l))?;
    let divisor = TorusDivisor::from_i64(&fan, &[0, a, b, 0])?;
    Instance {
        fan,
        divisor,
        flag: None,
        variant: None,
    }
    .to_document()
}

/// `"i,j"` → `(i, j)`.
pub fn parse_flag_arg(s: &str) -> Result<TFlag> {
    let (ray, cone) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected RAY,CONE, got {s:?}")))?;
    let index = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad index {t:?} in {s:?}: {e}")))
    };
    Ok(TFlag {
        ray: index(ray)?,
        cone: index(cone)?,
    })
}

/// `"A..B"` (inclusive) or a single integer; empty ranges are rejected.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad bound {t:?} in {s:?}: {e}")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (int(a)?, int(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = int(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}
