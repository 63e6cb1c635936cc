//! Generators for the point families studied here.
//!
//! Every generator is index-addressed: element `n` (1-based) is a pure
//! function of the sequence spec and `n`, so prefixes of long runs equal short runs
//! and generation can be split across threads freely.

use std::fmt;
use std::path::PathBuf;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{frac, TorusPointSet};
use crate::numtheory::AlphaVector;
use crate::rng::RandomSource;

/// Declarative description of a point sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSpec {
    /// `frac(n alpha)`.
    Kronecker { alpha: AlphaVector },
    /// `frac(core_n + epsilon U_n)` with `U_n` uniform on `[0,1)^d`.
    ///
    /// The core is usually a Kronecker sequence; van der Corput and Halton
    /// cores are also accepted.
    Perturbed {
        core: Box<SequenceSpec>,
        epsilon: f64,
        seed: u64,
    },
    VanDerCorput { base: u64 },
    Halton { bases: Vec<u64> },
    IidUniform { dim: usize, seed: u64 },
    FilePoints { path: PathBuf },
}

impl SequenceSpec {
    pub fn kronecker(alpha: &str) -> Result<Self> {
        Ok(SequenceSpec::Kronecker {
            alpha: AlphaVector::parse(alpha)?,
        })
    }

    pub fn perturbed_kronecker(alpha: &str, epsilon: f64, seed: u64) -> Result<Self> {
        SequenceSpec::perturbed(SequenceSpec::kronecker(alpha)?, epsilon, seed)
    }

    pub fn perturbed(core: SequenceSpec, epsilon: f64, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::usage("eps", "perturbation size must be positive and finite"));
        }
        match core {
            SequenceSpec::Kronecker { .. } | SequenceSpec::VanDerCorput { .. } | SequenceSpec::Halton { .. } => {}
            _ => return Err(Error::usage("spec", "only kronecker, vdc and halton cores can be perturbed")),
        }
        Ok(SequenceSpec::Perturbed {
            core: Box::new(core),
            epsilon,
            seed,
        })
    }

    pub fn van_der_corput(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::usage("spec", "van der Corput base must be at least 2"));
        }
        Ok(SequenceSpec::VanDerCorput { base })
    }

    pub fn halton(bases: &[u64]) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::usage("spec", "halton needs at least one base"));
        }
        if let Some(b) = bases.iter().find(|&&b| b < 2) {
            return Err(Error::usage("spec", format!("halton base {b} is below 2")));
        }
        for (i, a) in bases.iter().enumerate() {
            for b in &bases[i + 1..] {
                if a.gcd(b) != 1 {
                    return Err(Error::usage("spec", format!("halton bases {a} and {b} are not coprime")));
                }
            }
        }
        Ok(SequenceSpec::Halton {
            bases: bases.to_vec(),
        })
    }

    pub fn iid(dim: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("spec", "dimension must be at least 1"));
        }
        Ok(SequenceSpec::IidUniform { dim, seed })
    }

    /// Parses `kronecker:golden`, `perturbed:golden:eps=0.1:seed=42`,
    /// `perturbed:vdc:2:eps=0.2:seed=1`, `vdc:2`, `halton:2,3`,
    /// `iid:d=2:seed=7` or `file:<path>`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::usage("spec", format!("{msg}: {text:?}"));
        let (kind, rest) = text.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        match kind {
            "kronecker" => SequenceSpec::kronecker(rest),
            "vdc" => SequenceSpec::van_der_corput(rest.parse().map_err(|_| bad("bad base"))?),
            "halton" => {
                let bases = rest
                    .split(',')
                    .map(|b| b.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("bad halton bases"))?;
                SequenceSpec::halton(&bases)
            }
            "iid" => {
                let mut dim = None;
                let mut seed = None;
                for field in rest.split(':') {
                    match field.split_once('=') {
                        Some(("d", v)) => dim = Some(v.parse().map_err(|_| bad("bad d"))?),
                        Some(("seed", v)) => seed = Some(v.parse().map_err(|_| bad("bad seed"))?),
                        _ => return Err(bad("unknown iid field")),
                    }
                }
                SequenceSpec::iid(dim.ok_or_else(|| bad("missing d="))?, seed.ok_or_else(|| bad("missing seed="))?)
            }
            "file" if !rest.is_empty() => Ok(SequenceSpec::FilePoints { path: rest.into() }),
            "perturbed" => {
                let mut core_fields = Vec::new();
                let mut eps = None;
                let mut seed = None;
                for field in rest.split(':') {
                    if let Some(v) = field.strip_prefix("eps=") {
                        eps = Some(v.parse::<f64>().map_err(|_| bad("bad eps"))?);
                    } else if let Some(v) = field.strip_prefix("seed=") {
                        seed = Some(v.parse::<u64>().map_err(|_| bad("bad seed"))?);
                    } else {
                        core_fields.push(field);
                    }
                }
                let core_text = core_fields.join(":");
                let core = match core_fields.first() {
                    Some(&"vdc") | Some(&"halton") | Some(&"kronecker") => SequenceSpec::parse(&core_text)?,
                    Some(_) => SequenceSpec::kronecker(&core_text)?,
                    None => return Err(bad("missing core")),
                };
                SequenceSpec::perturbed(core, eps.ok_or_else(|| bad("missing eps="))?, seed.ok_or_else(|| bad("missing seed="))?)
            }
            _ => Err(bad("unknown sequence kind")),
        }
    }

    /// Dimension, or `None` for file-backed specs (known only after reading).
    pub fn dim(&self) -> Option<usize> {
        match self {
            SequenceSpec::Kronecker { alpha } => Some(alpha.dim()),
            SequenceSpec::Perturbed { core, .. } => core.dim(),
            SequenceSpec::VanDerCorput { .. } => Some(1),
            SequenceSpec::Halton { bases } => Some(bases.len()),
            SequenceSpec::IidUniform { dim, .. } => Some(*dim),
            SequenceSpec::FilePoints { .. } => None,
        }
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, SequenceSpec::Perturbed { .. } | SequenceSpec::IidUniform { .. })
    }

    /// The same spec with its seed replaced; deterministic specs are returned unchanged.
    pub fn with_seed(&self, seed: u64) -> SequenceSpec {
        match self {
            SequenceSpec::Perturbed { core, epsilon, .. } => SequenceSpec::Perturbed {
                core: core.clone(),
                epsilon: *epsilon,
                seed,
            },
            SequenceSpec::IidUniform { dim, .. } => SequenceSpec::IidUniform { dim: *dim, seed },
            other => other.clone(),
        }
    }

    /// Writes element `n` (1-based) into `out`. File specs are not addressable.
    fn fill(&self, n: u64, out: &mut [f64]) {
        match self {
            SequenceSpec::Kronecker { alpha } => {
                for (o, c) in out.iter_mut().zip(&alpha.components) {
                    *o = c.frac_multiple(n as i64);
                }
            }
            SequenceSpec::Perturbed { core, epsilon, seed } => {
                core.fill(n, out);
                let src = RandomSource::new(*seed);
                for (i, o) in out.iter_mut().enumerate() {
                    *o = frac(*o + epsilon * src.uniform_value(n, i as u64));
                }
            }
            SequenceSpec::VanDerCorput { base } => out[0] = radical_inverse(n, *base),
            SequenceSpec::Halton { bases } => {
                for (o, &b) in out.iter_mut().zip(bases) {
                    *o = radical_inverse(n, b);
                }
            }
            SequenceSpec::IidUniform { seed, .. } => {
                let src = RandomSource::new(*seed);
                for (i, o) in out.iter_mut().enumerate() {
                    *o = src.uniform_value(n, i as u64);
                }
            }
            SequenceSpec::FilePoints { .. } => unreachable!("file points are read, not computed"),
        }
    }

    /// Elements at the given 1-based indices, in the order given.
    pub fn generate_indices(&self, indices: &[u64]) -> Result<TorusPointSet> {
        let Some(dim) = self.dim() else {
            return Err(Error::usage("spec", "file-backed specs are not index addressable"));
        };
        if indices.contains(&0) {
            return Err(Error::usage("n", "indices are 1-based"));
        }
        let mut coords = vec![0.0; indices.len() * dim];
        for (chunk, &n) in coords.chunks_exact_mut(dim).zip(indices) {
            self.fill(n, chunk);
        }
        Ok(TorusPointSet::from_flat_unchecked(dim, coords))
    }
}

const GENERATE_CHUNK: usize = 4096;

/// The first `n` elements of the sequence.
pub fn generate(spec: &SequenceSpec, n: usize) -> Result<TorusPointSet> {
    if n == 0 {
        return Err(Error::usage("n", "N must be at least 1"));
    }
    if let SequenceSpec::FilePoints { path } = spec {
        let all = TorusPointSet::read_csv(path)?;
        if all.len() < n {
            return Err(Error::Format {
                path: path.clone(),
                message: format!("file holds {} points, {n} requested", all.len()),
            });
        }
        return all.prefix(n);
    }
    let dim = spec.dim().expect("addressable spec has a dimension");
    let mut coords = vec![0.0; n * dim];
    coords
        .par_chunks_mut(GENERATE_CHUNK * dim)
        .enumerate()
        .for_each(|(chunk_idx, block)| {
            let first = (chunk_idx * GENERATE_CHUNK) as u64 + 1;
            for (k, point) in block.chunks_exact_mut(dim).enumerate() {
                spec.fill(first + k as u64, point);
            }
        });
    Ok(TorusPointSet::from_flat_unchecked(dim, coords))
}

/// First `m` points of an existing set.
pub fn prefix(points: &TorusPointSet, m: usize) -> Result<TorusPointSet> {
    points.prefix(m)
}

/// Digit reversal of `n` in `base`, computed as an exact ratio of integers.
pub fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let b = u128::from(base);
    let mut num: u128 = 0;
    let mut den: u128 = 1;
    while n > 0 {
        num = num * b + u128::from(n % base);
        den *= b;
        n /= base;
    }
    num as f64 / den as f64
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Kronecker { alpha } => write!(f, "kronecker:{}", alpha.name),
            SequenceSpec::Perturbed { core, epsilon, seed } => {
                let core_text = match core.as_ref() {
                    SequenceSpec::Kronecker { alpha } => alpha.name.clone(),
                    other => other.to_string(),
                };
                write!(f, "perturbed:{core_text}:eps={epsilon}:seed={seed}")
            }
            SequenceSpec::VanDerCorput { base } => write!(f, "vdc:{base}"),
            SequenceSpec::Halton { bases } => {
                let list: Vec<String> = bases.iter().map(u64::to_string).collect();
                write!(f, "halton:{}", list.join(","))
            }
            SequenceSpec::IidUniform { dim, seed } => write!(f, "iid:d={dim}:seed={seed}"),
            SequenceSpec::FilePoints { path } => write!(f, "file:{}", path.display()),
        }
    }
}
