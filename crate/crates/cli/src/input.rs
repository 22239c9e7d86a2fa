//! The input document and its normalized form.

use anyhow::{bail, Context as _, Result};
use serde::{Deserialize, Serialize};
use upq_core::arrangements::is_admissible;
use upq_core::{GoodParityParameter, HalfInt, ParamVector, Permutation, Segment, DEFAULT_MAX_R};

#[derive(Debug, Deserialize)]
pub struct Component {
    pub a: i64,
    pub m: i64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub b: HalfInt,
    pub e: HalfInt,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Options {
    pub strict_parity: bool,
    pub verify: bool,
    pub max_r: Option<usize>,
}

/// Fields other than these (such as `command` and `result` in a previous
/// output) are ignored, so any output can be fed back in.
#[derive(Debug, Deserialize)]
pub struct InputDocument {
    pub components: Option<Vec<Component>>,
    pub segments: Option<Vec<SegmentDoc>>,
    pub p: Option<Vec<i64>>,
    /// 1-based images of the arrangement `p` is given on.
    pub sigma: Option<Vec<usize>>,
    pub p_rank: Option<i64>,
    #[serde(default)]
    pub options: Options,
}

/// Command-line overrides of the document.
#[derive(Debug, Default)]
pub struct Overrides {
    pub strict_parity: bool,
    pub verify: bool,
    pub max_r: Option<usize>,
    pub sigma: Option<Vec<usize>>,
    pub p_rank: Option<i64>,
}

/// The echo written back at the top of every output.
#[derive(Debug, Serialize)]
pub struct Echo {
    pub segments: Vec<SegmentDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_rank: Option<i64>,
    pub options: Options,
}

pub struct Context {
    pub psi: GoodParityParameter,
    pub p: Option<ParamVector>,
    pub p_rank: Option<i64>,
    pub options: Options,
    pub echo: Echo,
}

impl Context {
    pub fn max_r(&self) -> usize {
        self.options.max_r.unwrap_or(DEFAULT_MAX_R)
    }

    pub fn require_p(&self) -> Result<&ParamVector> {
        self.p
            .as_ref()
            .context("this command needs a parameter vector \"p\"")
    }
}

pub fn parse(text: &str, over: Overrides) -> Result<Context> {
    let doc: InputDocument = serde_json::from_str(text).context("malformed input JSON")?;
    let segments: Vec<Segment> = match (doc.components, doc.segments) {
        (Some(_), Some(_)) => bail!("give either \"components\" or \"segments\", not both"),
        (None, None) => bail!("the input needs \"components\" or \"segments\""),
        (Some(cs), None) => cs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Segment::from_component(c.a, c.m).with_context(|| format!("component {}", i + 1))
            })
            .collect::<Result<_>>()?,
        (None, Some(ss)) => ss
            .iter()
            .enumerate()
            .map(|(i, s)| Segment::new(s.b, s.e).with_context(|| format!("segment {}", i + 1)))
            .collect::<Result<_>>()?,
    };
    let options = Options {
        strict_parity: doc.options.strict_parity || over.strict_parity,
        verify: doc.options.verify || over.verify,
        max_r: over.max_r.or(doc.options.max_r),
    };
    let psi = GoodParityParameter::new(segments.clone(), options.strict_parity)?;
    let sigma_images = over.sigma.or(doc.sigma);
    let sigma = match &sigma_images {
        Some(images) => Permutation::from_one_based(images)?,
        None => Permutation::identity(psi.r()),
    };
    if sigma.len() != psi.r() {
        bail!(
            "sigma has {} entries but there are {} segments",
            sigma.len(),
            psi.r()
        );
    }
    let p = match &doc.p {
        Some(entries) => {
            if entries.len() != psi.r() {
                bail!(
                    "p has {} entries but there are {} segments",
                    entries.len(),
                    psi.r()
                );
            }
            if !is_admissible(&psi, &sigma)? {
                return Err(upq_core::Error::InadmissiblePermutation(sigma.to_string()).into());
            }
            Some(ParamVector::new(entries.clone(), sigma.clone())?)
        }
        None => None,
    };
    let p_rank = over.p_rank.or(doc.p_rank);
    let echo = Echo {
        segments: segments
            .iter()
            .map(|s| SegmentDoc { b: s.b, e: s.e })
            .collect(),
        p: doc.p,
        sigma: sigma_images,
        p_rank,
        options,
    };
    Ok(Context {
        psi,
        p,
        p_rank,
        options,
        echo,
    })
}
