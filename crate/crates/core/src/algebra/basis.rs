//! Labeled bases of the valuation spaces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// μ_k of Val^{O(m)}; ambient is m.
    #[serde(rename = "O-Mu")]
    OMu,
    /// μ_{k,q} of Val^{U(n)}.
    #[serde(rename = "U-Mu")]
    UMu,
    /// Tasaki τ_{k,q} of Val^{U(n)}.
    #[serde(rename = "U-Tau")]
    UTau,
    /// Lefschetz π_{k,r} of Val^{U(n)}.
    #[serde(rename = "U-Pi")]
    UPi,
    /// σ_{k,r} := ω_{2n−k}/(k−2r)! π_{k,r} of Val^{U(n)}.
    #[serde(rename = "U-Sigma")]
    USigma,
    #[serde(rename = "C-MuLam")]
    CMuLam,
    #[serde(rename = "C-TauLam")]
    CTauLam,
    #[serde(rename = "C-PiLam")]
    CPiLam,
    #[serde(rename = "C-SigmaLam")]
    CSigmaLam,
    /// σ^λ_i on a real space form of dimension d (ambient).
    #[serde(rename = "R-Sigma")]
    RSigma,
    #[serde(rename = "R-Tau")]
    RTau,
    /// The hyperplane spanned by σ^λ_0, …, σ^λ_{d−1}.
    #[serde(rename = "R-Hyper")]
    RHyper,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::OMu,
        Family::UMu,
        Family::UTau,
        Family::UPi,
        Family::USigma,
        Family::CMuLam,
        Family::CTauLam,
        Family::CPiLam,
        Family::CSigmaLam,
        Family::RSigma,
        Family::RTau,
        Family::RHyper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::OMu => "O-Mu",
            Family::UMu => "U-Mu",
            Family::UTau => "U-Tau",
            Family::UPi => "U-Pi",
            Family::USigma => "U-Sigma",
            Family::CMuLam => "C-MuLam",
            Family::CTauLam => "C-TauLam",
            Family::CPiLam => "C-PiLam",
            Family::CSigmaLam => "C-SigmaLam",
            Family::RSigma => "R-Sigma",
            Family::RTau => "R-Tau",
            Family::RHyper => "R-Hyper",
        }
    }

    /// Single-index families.
    pub fn is_single(self) -> bool {
        matches!(
            self,
            Family::OMu | Family::RSigma | Family::RTau | Family::RHyper
        )
    }

    pub fn is_curved(self) -> bool {
        matches!(
            self,
            Family::CMuLam
                | Family::CTauLam
                | Family::CPiLam
                | Family::CSigmaLam
                | Family::RSigma
                | Family::RTau
                | Family::RHyper
        )
    }

    /// Families indexed like μ_{k,q}, as opposed to π_{k,r}.
    fn is_mu_like(self) -> bool {
        matches!(
            self,
            Family::UMu | Family::UTau | Family::CMuLam | Family::CTauLam
        )
    }

    /// The flat family a curved one is modeled on, and conversely.
    pub fn flat_twin(self) -> Option<Family> {
        match self {
            Family::CMuLam => Some(Family::UMu),
            Family::CTauLam => Some(Family::UTau),
            Family::CPiLam => Some(Family::UPi),
            Family::CSigmaLam => Some(Family::USigma),
            _ => None,
        }
    }

    pub fn curved_twin(self) -> Option<Family> {
        match self {
            Family::UMu => Some(Family::CMuLam),
            Family::UTau => Some(Family::CTauLam),
            Family::UPi => Some(Family::CPiLam),
            Family::USigma => Some(Family::CSigmaLam),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis family {s:?}")))
    }
}

/// Basis element index: `i` or `(k, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Single(u32),
    Pair(u32, u32),
}

impl Label {
    /// The degree k (or i).
    pub fn degree(&self) -> u32 {
        match *self {
            Label::Single(i) => i,
            Label::Pair(k, _) => k,
        }
    }

    pub fn second(&self) -> Option<u32> {
        match *self {
            Label::Single(_) => None,
            Label::Pair(_, q) => Some(q),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        match *self {
            Label::Single(i) => vec![i],
            Label::Pair(k, q) => vec![k, q],
        }
    }

    pub fn from_slice(v: &[u32]) -> Result<Self> {
        match v {
            [i] => Ok(Label::Single(*i)),
            [k, q] => Ok(Label::Pair(*k, *q)),
            _ => Err(Error::Parse(format!("bad label {v:?}"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Single(i) => write!(f, "{i}"),
            Label::Pair(k, q) => write!(f, "{k},{q}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Label::from_slice(&v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Basis {
    pub family: Family,
    pub ambient: u32,
}

impl Basis {
    pub fn new(family: Family, ambient: u32) -> Self {
        Basis { family, ambient }
    }

    /// True iff `l` names an element of this basis.
    pub fn contains(&self, l: &Label) -> bool {
        let a = self.ambient;
        match (self.family, *l) {
            (Family::OMu, Label::Single(k)) => k <= a,
            (Family::RSigma | Family::RTau, Label::Single(i)) => i <= a,
            (Family::RHyper, Label::Single(i)) => i < a,
            (f, Label::Pair(k, q)) if f.is_mu_like() => {
                k <= 2 * a && q <= k / 2 && q + a >= k
            }
            (
                Family::UPi | Family::USigma | Family::CPiLam | Family::CSigmaLam,
                Label::Pair(k, r),
            ) => 2 * r <= a && 2 * r <= k && k + 2 * r <= 2 * a,
            _ => false,
        }
    }

    pub fn check(&self, l: &Label) -> Result<()> {
        if self.contains(l) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "{} is not a label of {}",
                l, self
            )))
        }
    }

    /// Labels in increasing order.
    pub fn labels(&self) -> Vec<Label> {
        let a = self.ambient;
        if self.family.is_single() {
            let top = if self.family == Family::RHyper { a } else { a + 1 };
            return (0..top).map(Label::Single).collect();
        }
        let mut out = Vec::new();
        for k in 0..=2 * a {
            for q in 0..=k / 2 {
                let l = Label::Pair(k, q);
                if self.contains(&l) {
                    out.push(l);
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.labels().len()
    }

    /// Same ambient, another family.
    pub fn with_family(&self, family: Family) -> Basis {
        Basis::new(family, self.ambient)
    }

    /// Top degree of the grading: m, d, d − 1, or 2n.
    pub fn top_degree(&self) -> u32 {
        match self.family {
            Family::OMu | Family::RSigma | Family::RTau => self.ambient,
            Family::RHyper => self.ambient.saturating_sub(1),
            _ => 2 * self.ambient,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.ambient)
    }
}
